//! Finite-dimensional matrix models of a system and the verification suite
//! for the representation-level identities.
//!
//! The orbit representation acts on the truncated extension space: one basis
//! vector per strand plus one unrolled copy of each backward cycle.  The
//! coefficient algebra acts diagonally through the `x_0` coordinate and the
//! shift `U` drops the first coordinate, with a unimodular weight `z` on each
//! cycle's wrap-around edge.  Everything checked here is an exact operator
//! identity, so defects are pure floating-point roundoff; operator norms are
//! largest singular values computed by SVD (relative error well below the
//! 1e-12 entry tolerance used by the exact-pattern checks).
//!
//! Truncation: when the extension space is infinite the basis is cut at the
//! depth frontier, where prepending would leave the basis.  Checks affected
//! by the frontier are compressed to the unaffected subspace by default and
//! the touched generators are reported.

use crate::dynsys::SystemWithHull;
use crate::error::{Error, Result};
use crate::extension::{build_strands, default_depth, infinite_strands, PeriodicStrand, Strand};
use crate::point_set::PointSet;
use nalgebra::{Complex, DMatrix};

pub type C64 = Complex<f64>;
pub type DenseMatrix = DMatrix<C64>;

/// One basis vector of the truncated extension space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasisLabel {
    Strand(Strand),
    /// The periodic point starting at `word[phase]` of the canonical
    /// backward cycle word.
    CyclePoint {
        word: Vec<usize>,
        phase: usize,
    },
}

impl BasisLabel {
    /// The `x_0` coordinate.
    pub fn first(&self) -> usize {
        match self {
            BasisLabel::Strand(s) => s.first(),
            BasisLabel::CyclePoint { word, phase } => word[*phase],
        }
    }

    /// The `x_k` coordinate, when the point has one.
    pub fn coord(&self, k: usize) -> Option<usize> {
        match self {
            BasisLabel::Strand(s) => s.coords.get(k).copied(),
            BasisLabel::CyclePoint { word, phase } => Some(word[(phase + k) % word.len()]),
        }
    }

    /// Strand length; `None` for periodic points.
    pub fn length(&self) -> Option<usize> {
        match self {
            BasisLabel::Strand(s) => Some(s.length()),
            BasisLabel::CyclePoint { .. } => None,
        }
    }
}

/// A concrete matrix model `(π, U)`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub basis: Vec<BasisLabel>,
    pub shift: DenseMatrix,
    pub dim: usize,
    pub depth: usize,
    pub z: C64,
}

impl Representation {
    /// Diagonal action of the indicator of `x`.
    pub fn pi_point(&self, x: usize) -> DenseMatrix {
        self.diagonal(|label| label.first() == x)
    }

    /// Diagonal action of the indicator of a point set.
    pub fn pi_set(&self, s: PointSet) -> DenseMatrix {
        self.diagonal(|label| s.contains(label.first()))
    }

    fn diagonal(&self, pred: impl Fn(&BasisLabel) -> bool) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim, self.dim);
        for (i, label) in self.basis.iter().enumerate() {
            if pred(label) {
                m[(i, i)] = C64::new(1.0, 0.0);
            }
        }
        m
    }

    /// 0/1 pattern of a point set pulled back through the `x_0` coordinate.
    fn pattern(&self, s: PointSet) -> Vec<bool> {
        self.basis.iter().map(|l| s.contains(l.first())).collect()
    }

    fn check_compatible(&self, sys: &SystemWithHull) -> Result<()> {
        if self.dim != self.basis.len()
            || self.shift.nrows() != self.dim
            || self.shift.ncols() != self.dim
        {
            return Err(Error::DimensionMismatch {
                expected: self.basis.len(),
                got: self.shift.nrows(),
            });
        }
        if self.basis.iter().any(|l| l.first() >= sys.size()) {
            return Err(Error::DimensionMismatch {
                expected: sys.size(),
                got: self.dim,
            });
        }
        Ok(())
    }

    /// Basis indices whose `k`-step prepend exists but falls outside the
    /// truncation depth.
    fn frontier(&self, sys: &SystemWithHull, k: usize) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, label)| match label.length() {
                Some(len) => len + k > self.depth && sys.iterated_domain(k).contains(label.first()),
                None => false,
            })
            .map(|(i, _)| i)
            .collect()
    }
}

/// Largest singular value.
pub fn operator_norm(m: &DenseMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0, |acc, &s| acc.max(s))
}

/// Largest entry magnitude.
pub fn max_abs_entry(m: &DenseMatrix) -> f64 {
    m.iter().fold(0.0, |acc, c| acc.max(c.norm()))
}

/// `‖m‖ < tol`, using the entrywise bounds
/// `max|m_ij| ≤ ‖m‖ ≤ dim·max|m_ij|` to skip the SVD whenever they decide.
fn norm_below(m: &DenseMatrix, tol: f64) -> bool {
    let mx = max_abs_entry(m);
    if mx >= tol {
        return false;
    }
    if mx * (m.nrows().max(m.ncols()) as f64) < tol {
        return true;
    }
    operator_norm(m) < tol
}

/// The operator norm, skipping the SVD for exactly-zero defects (the typical
/// case: the identities verified here hold entrywise in exact arithmetic,
/// and at weight 1 the float computation reproduces them exactly).
fn norm_or_zero(m: &DenseMatrix) -> f64 {
    if max_abs_entry(m) == 0.0 {
        0.0
    } else {
        operator_norm(m)
    }
}

/// `m · diag(pattern)` in `O(dim²)`: keep the columns the pattern selects.
fn keep_cols(m: &DenseMatrix, pattern: &[bool]) -> DenseMatrix {
    let mut out = m.clone();
    for (j, &keep) in pattern.iter().enumerate() {
        if !keep {
            for i in 0..out.nrows() {
                out[(i, j)] = C64::new(0.0, 0.0);
            }
        }
    }
    out
}

/// `diag(pattern) · m` in `O(dim²)`: keep the rows the pattern selects.
fn keep_rows(pattern: &[bool], m: &DenseMatrix) -> DenseMatrix {
    let mut out = m.clone();
    for (i, &keep) in pattern.iter().enumerate() {
        if !keep {
            for j in 0..out.ncols() {
                out[(i, j)] = C64::new(0.0, 0.0);
            }
        }
    }
    out
}

fn zero_rows_cols(m: &DenseMatrix, masked: &[usize]) -> DenseMatrix {
    let mut out = m.clone();
    for &i in masked {
        for j in 0..out.ncols() {
            out[(i, j)] = C64::new(0.0, 0.0);
        }
        for j in 0..out.nrows() {
            out[(j, i)] = C64::new(0.0, 0.0);
        }
    }
    out
}

/// Build the orbit representation at the given truncation depth and cycle
/// weight `z` (which must be unimodular).  The basis lists all strands of
/// length at most `depth`, then one block of rotation points per backward
/// cycle; `U` moves each basis vector to the one obtained by dropping its
/// first coordinate, weighting each cycle's wrap-around edge by `z`.
pub fn orbit_representation(sys: &SystemWithHull, depth: usize, z: C64) -> Result<Representation> {
    sys.require_valid()?;
    let strands = build_strands(sys, depth)?;
    let (_, periodic) = infinite_strands(sys, depth)?;
    let mut words: Vec<Vec<usize>> = periodic
        .iter()
        .filter(|p| p.preperiod.is_empty())
        .map(|p| p.cycle.clone())
        .collect();
    words.sort();

    let mut basis: Vec<BasisLabel> = strands.iter().cloned().map(BasisLabel::Strand).collect();
    for word in &words {
        for phase in 0..word.len() {
            basis.push(BasisLabel::CyclePoint {
                word: word.clone(),
                phase,
            });
        }
    }

    let dim = basis.len();
    let mut shift = DenseMatrix::zeros(dim, dim);
    let index_of_strand = |coords: &[usize]| {
        basis.iter().position(|l| match l {
            BasisLabel::Strand(s) => s.coords == coords,
            _ => false,
        })
    };
    for (col, label) in basis.iter().enumerate() {
        match label {
            BasisLabel::Strand(s) => {
                if s.coords.len() >= 2 {
                    let row = index_of_strand(&s.coords[1..])
                        .ok_or_else(|| Error::Internal("missing dropped strand".into()))?;
                    shift[(row, col)] = C64::new(1.0, 0.0);
                }
            }
            BasisLabel::CyclePoint { word, phase } => {
                let next = (phase + 1) % word.len();
                let row = basis
                    .iter()
                    .position(|l| matches!(l, BasisLabel::CyclePoint { word: w, phase: p } if w == word && *p == next))
                    .ok_or_else(|| Error::Internal("missing cycle point".into()))?;
                shift[(row, col)] = if *phase == word.len() - 1 {
                    z
                } else {
                    C64::new(1.0, 0.0)
                };
            }
        }
    }

    Ok(Representation {
        basis,
        shift,
        dim,
        depth,
        z,
    })
}

/// Orbit representation at the default depth with weight 1.
pub fn default_representation(sys: &SystemWithHull) -> Result<Representation> {
    orbit_representation(sys, default_depth(sys.size()), C64::new(1.0, 0.0))
}

/// Defect measurements for the covariance relations.
#[derive(Clone, Debug)]
pub struct CovarianceReport {
    /// `max_x ‖Uπ(e_x)U* − π(α(e_x))‖`.
    pub max_covariance_defect: f64,
    /// Power-partial-isometry defect: idempotency of `U^{*k}Uᵏ` and
    /// `UᵏU^{*k}` plus their commutators with the diagonal algebra.
    pub ppi_defect: f64,
    /// `‖UᵏU^{*k} − π(1_{Δ_k})‖` per `k = 1…depth`: the iterated-range
    /// projections must realize the iterated-domain indicators.
    pub domain_projection_defects: Vec<f64>,
    /// Points whose indicator satisfies `U*U π(e_x) = π(e_x)`.
    pub covariance_set: PointSet,
    /// Generators whose covariance check touches the truncation frontier
    /// (excluded from the defects when the mask is on).
    pub masked_generators: PointSet,
    pub tol: f64,
}

impl CovarianceReport {
    pub fn passes(&self) -> bool {
        self.max_covariance_defect < self.tol
            && self.ppi_defect < self.tol
            && self.domain_projection_defects.iter().all(|&d| d < self.tol)
    }
}

/// Verify the covariance relations with the frontier mask on.
pub fn verify_covariance(
    rep: &Representation,
    sys: &SystemWithHull,
    tol: f64,
) -> Result<CovarianceReport> {
    verify_covariance_with(rep, sys, tol, true)
}

/// As `verify_covariance`, optionally keeping frontier-affected rows and
/// columns in the defect computation.
pub fn verify_covariance_with(
    rep: &Representation,
    sys: &SystemWithHull,
    tol: f64,
    mask_frontier: bool,
) -> Result<CovarianceReport> {
    rep.check_compatible(sys)?;
    let n = sys.size();
    let u = &rep.shift;
    let u_adj = u.adjoint();

    let frontier1 = rep.frontier(sys, 1);
    let masked_generators: PointSet = frontier1
        .iter()
        .filter_map(|&i| sys.map.apply(rep.basis[i].first()))
        .collect();

    let mut max_covariance_defect: f64 = 0.0;
    for x in 0..n {
        let lhs = keep_cols(u, &rep.pattern(PointSet::singleton(x))) * &u_adj;
        let rhs = rep.pi_set(sys.map.preimage_of(PointSet::singleton(x)));
        let mut diff = lhs - rhs;
        if mask_frontier {
            diff = zero_rows_cols(&diff, &frontier1);
        }
        max_covariance_defect = max_covariance_defect.max(norm_or_zero(&diff));
    }

    let kmax = rep.depth.min(rep.dim.max(1));
    let mut ppi_defect: f64 = 0.0;
    let mut domain_projection_defects = Vec::with_capacity(rep.depth);
    let mut u_pow = DenseMatrix::identity(rep.dim, rep.dim);
    for k in 1..=rep.depth {
        u_pow = u * &u_pow;
        let u_pow_adj = u_pow.adjoint();
        let co_isometry = &u_pow * &u_pow_adj; // UᵏU^{*k}
        let isometry = &u_pow_adj * &u_pow; // U^{*k}Uᵏ
        if k <= kmax {
            ppi_defect = ppi_defect
                .max(norm_or_zero(&(&isometry * &isometry - &isometry)))
                .max(norm_or_zero(&(&co_isometry * &co_isometry - &co_isometry)));
            for x in 0..n {
                let pattern = rep.pattern(PointSet::singleton(x));
                let commutator = keep_cols(&isometry, &pattern) - keep_rows(&pattern, &isometry);
                ppi_defect = ppi_defect.max(norm_or_zero(&commutator));
            }
        }
        let mut diff = &co_isometry - rep.pi_set(sys.iterated_domain(k));
        if mask_frontier {
            diff = zero_rows_cols(&diff, &rep.frontier(sys, k));
        }
        domain_projection_defects.push(norm_or_zero(&diff));
    }

    let covariance_set = covariance_set(rep, sys, tol)?;

    Ok(CovarianceReport {
        max_covariance_defect,
        ppi_defect,
        domain_projection_defects,
        covariance_set,
        masked_generators,
        tol,
    })
}

/// `{ x : ‖U*U π(e_x) − π(e_x)‖ < tol }`.  For the orbit representation at
/// full depth this is the hull complement: exactly the relative ideal the
/// representation was built for.
pub fn covariance_set(rep: &Representation, sys: &SystemWithHull, tol: f64) -> Result<PointSet> {
    rep.check_compatible(sys)?;
    let range_proj = rep.shift.adjoint() * &rep.shift;
    Ok((0..sys.size())
        .filter(|&x| {
            let pattern = rep.pattern(PointSet::singleton(x));
            let diff = keep_cols(&range_proj, &pattern) - rep.pi_point(x);
            norm_below(&diff, tol)
        })
        .collect())
}

/// The extension's coefficient algebra realized on the same space: one
/// matrix per cylinder generator `(k, x)`, the functions `[x̃_k = x]`.
#[derive(Clone, Debug)]
pub struct ExtendedRepresentation {
    /// `generators[k][x]` is `U^{*k} π(e_x) Uᵏ`.
    pub generators: Vec<Vec<DenseMatrix>>,
    /// Largest distance of a generator from its cylinder indicator pattern.
    pub max_cylinder_defect: f64,
    /// Largest defect of the shifted covariance relations for the extension.
    pub max_covariance_defect: f64,
}

/// Push a covariant representation of the base system up to its extension:
/// `π̃` sends the `k`-th transfer image of `e_x` to `U^{*k} π(e_x) Uᵏ`.
/// Fails when two generators carrying the same function on the truncated
/// space receive visibly different matrices.
pub fn extend_representation(
    rep: &Representation,
    sys: &SystemWithHull,
    tol: f64,
) -> Result<ExtendedRepresentation> {
    rep.check_compatible(sys)?;
    let n = sys.size();
    let u = &rep.shift;
    let u_adj = u.adjoint();

    let mut generators: Vec<Vec<DenseMatrix>> = Vec::with_capacity(rep.depth + 1);
    let mut supports: Vec<Vec<Vec<bool>>> = Vec::with_capacity(rep.depth + 1);
    let mut u_pow = DenseMatrix::identity(rep.dim, rep.dim);
    let mut u_pow_adj = u_pow.clone();
    let mut max_cylinder_defect: f64 = 0.0;
    for k in 0..=rep.depth {
        if k > 0 {
            u_pow = u * &u_pow;
            u_pow_adj = &u_pow_adj * &u_adj;
        }
        let mut row = Vec::with_capacity(n);
        let mut row_support = Vec::with_capacity(n);
        for x in 0..n {
            let m = &u_pow_adj * rep.pi_point(x) * &u_pow;
            let support: Vec<bool> = rep.basis.iter().map(|l| l.coord(k) == Some(x)).collect();
            let mut pattern = DenseMatrix::zeros(rep.dim, rep.dim);
            for (i, &s) in support.iter().enumerate() {
                if s {
                    pattern[(i, i)] = C64::new(1.0, 0.0);
                }
            }
            max_cylinder_defect = max_cylinder_defect.max(max_abs_entry(&(&m - pattern)));
            row.push(m);
            row_support.push(support);
        }
        generators.push(row);
        supports.push(row_support);
    }

    // well-definedness: same function on the truncated space, same matrix
    let mut flat: Vec<((usize, usize), &Vec<bool>)> = Vec::new();
    for (k, row) in supports.iter().enumerate() {
        for (x, support) in row.iter().enumerate() {
            flat.push(((k, x), support));
        }
    }
    for (i, (ka, sa)) in flat.iter().enumerate() {
        for (kb, sb) in flat.iter().skip(i + 1) {
            if sa == sb {
                let defect = max_abs_entry(&(&generators[ka.0][ka.1] - &generators[kb.0][kb.1]));
                if defect >= tol {
                    return Err(Error::IllDefinedExtension {
                        first: *ka,
                        second: *kb,
                        defect,
                    });
                }
            }
        }
    }

    // covariance for the extension: conjugating by U shifts cylinders down
    let frontier1 = rep.frontier(sys, 1);
    let domain_diag = rep.pi_set(sys.map.domain());
    let mut max_covariance_defect: f64 = 0.0;
    for k in 0..=rep.depth {
        for x in 0..n {
            let lhs = u * &generators[k][x] * &u_adj;
            let rhs = if k == 0 {
                let mut sum = DenseMatrix::zeros(rep.dim, rep.dim);
                for parent in sys.map.preimage_of(PointSet::singleton(x)).iter() {
                    sum += &generators[0][parent];
                }
                sum
            } else {
                &domain_diag * &generators[k - 1][x]
            };
            let diff = zero_rows_cols(&(lhs - rhs), &frontier1);
            max_covariance_defect = max_covariance_defect.max(operator_norm(&diff));
        }
    }

    Ok(ExtendedRepresentation {
        generators,
        max_cylinder_defect,
        max_covariance_defect,
    })
}

/// Verify closure of the iterated-transfer span under multiplication:
/// for `k ≥ l` the product `U^{*k}π(e_x)Uᵏ · U^{*l}π(e_y)Uˡ` collapses to
/// `U^{*k}π(e_x·1_{Δ_k}·α^{k-l}(e_y))Uᵏ`, which is `U^{*k}π(e_x)Uᵏ` when
/// `x ∈ Δ_k` and `φ^{k-l}(x) = y`, and zero otherwise.
pub fn product_formula_check(rep: &Representation, sys: &SystemWithHull, tol: f64) -> Result<bool> {
    rep.check_compatible(sys)?;
    let n = sys.size();
    let u = &rep.shift;
    let u_adj = u.adjoint();

    let mut transfer: Vec<Vec<DenseMatrix>> = Vec::with_capacity(rep.depth + 1);
    let mut u_pow = DenseMatrix::identity(rep.dim, rep.dim);
    let mut u_pow_adj = u_pow.clone();
    for k in 0..=rep.depth {
        if k > 0 {
            u_pow = u * &u_pow;
            u_pow_adj = &u_pow_adj * &u_adj;
        }
        transfer.push(
            (0..n)
                .map(|x| &u_pow_adj * rep.pi_point(x) * &u_pow)
                .collect(),
        );
    }

    let zero = DenseMatrix::zeros(rep.dim, rep.dim);
    for l in 0..=rep.depth {
        for k in l..=rep.depth {
            for x in 0..n {
                let collapses =
                    sys.iterated_domain(k).contains(x) && sys.map.apply_iter(x, k - l).is_some();
                for y in 0..n {
                    let lhs = &transfer[k][x] * &transfer[l][y];
                    let rhs = if collapses && sys.map.apply_iter(x, k - l) == Some(y) {
                        &transfer[k][x]
                    } else {
                        &zero
                    };
                    if !norm_below(&(lhs - rhs), tol) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Dimension of the algebra generated by `{U^{*a} π(e_x) U^b}`: span the
/// family, then grow by products until stable.  For a simple system at full
/// depth this reaches the full matrix algebra.
pub fn generated_algebra_dimension(rep: &Representation, sys: &SystemWithHull) -> Result<usize> {
    rep.check_compatible(sys)?;
    if rep.dim == 0 {
        return Ok(0);
    }
    let n = sys.size();
    let u = &rep.shift;
    let bound = rep.dim.min(rep.depth.max(1));

    let mut u_powers = vec![DenseMatrix::identity(rep.dim, rep.dim)];
    for _ in 0..bound {
        u_powers.push(u * u_powers.last().expect("nonempty"));
    }

    let mut family = Vec::new();
    for a in 0..=bound {
        for b in 0..=bound {
            for x in 0..n {
                family.push(u_powers[a].adjoint() * rep.pi_point(x) * &u_powers[b]);
            }
        }
    }

    let mut span = MatrixSpan::new(rep.dim);
    for m in &family {
        span.add(m);
    }
    loop {
        let before = span.len();
        let basis = span.basis_matrices();
        for a in &basis {
            for b in &basis {
                span.add(&(a * b));
            }
        }
        if span.len() == before {
            return Ok(span.len());
        }
    }
}

/// Orthonormal span of vectorized matrices, with a fixed deflation
/// tolerance.
struct MatrixSpan {
    dim: usize,
    basis: Vec<DenseMatrix>,
}

impl MatrixSpan {
    fn new(dim: usize) -> Self {
        MatrixSpan {
            dim,
            basis: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.basis.len()
    }

    fn basis_matrices(&self) -> Vec<DenseMatrix> {
        self.basis.clone()
    }

    fn add(&mut self, m: &DenseMatrix) {
        if self.basis.len() == self.dim * self.dim {
            return; // already the full matrix space
        }
        let mut residual = m.clone();
        for b in &self.basis {
            let overlap: C64 = b
                .iter()
                .zip(residual.iter())
                .map(|(p, q)| p.conj() * q)
                .sum();
            residual -=
                DenseMatrix::from_iterator(self.dim, self.dim, b.iter().map(|p| p * overlap));
        }
        let norm = residual.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-7 {
            residual /= C64::new(norm, 0.0);
            self.basis.push(residual);
        }
    }
}

/// Averaging over the grading unitaries `W_z = diag(z^{strand length})` for
/// `z` ranging over the `(dim+1)`-th roots of unity annihilates every word
/// of unbalanced degree exactly (degree offsets cannot exceed `dim`).
/// Checks `E(U^{*a}π(e_x)U^b) ≈ 0` for `a ≠ b` and `= itself` for `a = b`.
/// Refuses when a cycle is present: the wrap-around edge carries no
/// consistent grade.
pub fn gauge_expectation_check(
    rep: &Representation,
    sys: &SystemWithHull,
    tol: f64,
) -> Result<bool> {
    rep.check_compatible(sys)?;
    if let Some(cycle) = sys.map.cycles().into_iter().next() {
        return Err(Error::PeriodicOrbitPresent { cycle });
    }
    let n = sys.size();
    let roots = rep.dim + 1;
    let grading: Vec<DenseMatrix> = (0..roots)
        .map(|j| {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / roots as f64;
            let z = C64::new(angle.cos(), angle.sin());
            let mut w = DenseMatrix::zeros(rep.dim, rep.dim);
            for (i, label) in rep.basis.iter().enumerate() {
                let len = label.length().expect("no cycles present") as i32;
                w[(i, i)] = z.powi(len);
            }
            w
        })
        .collect();
    let expectation = |m: &DenseMatrix| -> DenseMatrix {
        let mut sum = DenseMatrix::zeros(rep.dim, rep.dim);
        for w in &grading {
            sum += w * m * w.adjoint();
        }
        sum / C64::new(roots as f64, 0.0)
    };

    let u = &rep.shift;
    let bound = rep.dim.min(rep.depth.max(1));
    let mut u_powers = vec![DenseMatrix::identity(rep.dim, rep.dim)];
    for _ in 0..bound {
        u_powers.push(u * u_powers.last().expect("nonempty"));
    }
    for a in 0..=bound {
        for b in 0..=bound {
            for x in 0..n {
                let word = u_powers[a].adjoint() * rep.pi_point(x) * &u_powers[b];
                let averaged = expectation(&word);
                let diff = if a == b { averaged - word } else { averaged };
                if !norm_below(&diff, tol) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The matrices witnessing a non-gauge-invariant kernel at a periodic orbit.
#[derive(Clone, Debug)]
pub struct KernelWitness {
    /// `π(b)` for `b` the indicator of the cycle's strand set.
    pub indicator: DenseMatrix,
    /// `π(b)·Uⁿ` for `n` the cycle length.
    pub shifted: DenseMatrix,
    /// `‖π(b) − π(b)Uⁿ‖`: zero exhibits `b − buⁿ` in the kernel.
    pub defect: f64,
    /// `‖π(b)‖`: the gauge expectation of the abstract element is `b` itself,
    /// so a unit norm here certifies the element is nonzero upstairs.
    pub indicator_norm: f64,
}

/// Build the kernel witness for an isolated cycle in the weight-1 orbit
/// representation.  Refuses non-isolated cycles: only isolation makes the
/// cycle's strand set open, which is what puts `b − buⁿ` in the kernel.
pub fn kernel_witness_for_periodic(
    sys: &SystemWithHull,
    cycle: &PeriodicStrand,
) -> Result<KernelWitness> {
    sys.require_valid()?;
    let word = &cycle.cycle;
    if !cycle.preperiod.is_empty() || !cycle.is_valid_for(sys) {
        return Err(Error::MalformedExtensionPoint {
            reason: format!("{cycle} is not a pure backward cycle of this system"),
        });
    }
    for &v in word {
        if sys.hull.contains(v) {
            return Err(Error::CycleNotIsolated {
                cycle: word.clone(),
                reason: format!("vertex {v} lies in the hull"),
            });
        }
        let pre = sys.map.preimage_of(PointSet::singleton(v));
        if pre.len() != 1 {
            return Err(Error::CycleNotIsolated {
                cycle: word.clone(),
                reason: format!("vertex {v} has {} domain preimages", pre.len()),
            });
        }
    }

    let rep = default_representation(sys)?;
    let indicator =
        rep.diagonal(|label| matches!(label, BasisLabel::CyclePoint { word: w, .. } if w == word));
    let mut u_pow = DenseMatrix::identity(rep.dim, rep.dim);
    for _ in 0..word.len() {
        u_pow = &rep.shift * u_pow;
    }
    let shifted = &indicator * u_pow;
    let defect = operator_norm(&(&indicator - &shifted));
    let indicator_norm = operator_norm(&indicator);
    Ok(KernelWitness {
        indicator,
        shifted,
        defect,
        indicator_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynsys::PartialMap;

    const TOL: f64 = 1e-9;

    fn one() -> C64 {
        C64::new(1.0, 0.0)
    }

    fn chain() -> SystemWithHull {
        let map = PartialMap::new(3, &[(1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(&[2]))
    }

    fn loop_sys() -> SystemWithHull {
        let map = PartialMap::new(3, &[(0, 0), (1, 0), (2, 1)]).unwrap();
        SystemWithHull::new(map, PointSet::from_indices(&[2]))
    }

    fn three_cycle() -> SystemWithHull {
        let map = PartialMap::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        SystemWithHull::new(map, PointSet::EMPTY)
    }

    fn empty_domain() -> SystemWithHull {
        SystemWithHull::new(PartialMap::empty(3), PointSet::full(3))
    }

    #[test]
    fn chain_shift_matrix() {
        let rep = orbit_representation(&chain(), 6, one()).unwrap();
        assert_eq!(rep.dim, 3);
        // basis order: (2), (1,2), (0,1,2); U drops the first coordinate
        let expected = DenseMatrix::from_row_slice(
            3,
            3,
            &[
                C64::new(0.0, 0.0),
                one(),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                one(),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        assert_eq!(rep.shift, expected);
    }

    #[test]
    fn three_cycle_shift_is_permutation() {
        let rep = orbit_representation(&three_cycle(), 6, one()).unwrap();
        assert_eq!(rep.dim, 3);
        let u = &rep.shift;
        // a unitary: U*U = I
        let id = DenseMatrix::identity(3, 3);
        assert!(max_abs_entry(&(u.adjoint() * u - id)) < 1e-14);
        // U³ = I at z = 1
        let u3 = u * u * u;
        assert!(max_abs_entry(&(u3 - DenseMatrix::identity(3, 3))) < 1e-14);
    }

    #[test]
    fn empty_domain_rep_is_diagonal() {
        let rep = orbit_representation(&empty_domain(), 4, one()).unwrap();
        assert_eq!(rep.dim, 3);
        assert!(max_abs_entry(&rep.shift) < 1e-15);
        let sum = rep.pi_point(0) + rep.pi_point(1) + rep.pi_point(2);
        assert!(max_abs_entry(&(sum - DenseMatrix::identity(3, 3))) < 1e-15);
    }

    #[test]
    fn indicators_resolve_the_identity() {
        for sys in [chain(), loop_sys(), three_cycle(), empty_domain()] {
            let rep = default_representation(&sys).unwrap();
            let mut sum = DenseMatrix::zeros(rep.dim, rep.dim);
            for x in 0..sys.size() {
                let p = rep.pi_point(x);
                // mutually orthogonal projections
                for y in 0..x {
                    assert!(max_abs_entry(&(&p * rep.pi_point(y))) < 1e-15);
                }
                sum += p;
            }
            assert!(max_abs_entry(&(sum - DenseMatrix::identity(rep.dim, rep.dim))) < 1e-15);
        }
    }

    #[test]
    fn covariance_chain_and_cycle() {
        let chain_rep = default_representation(&chain()).unwrap();
        let report = verify_covariance(&chain_rep, &chain(), TOL).unwrap();
        assert!(report.passes());
        assert!(report.max_covariance_defect < 1e-12);
        assert!(report.masked_generators.is_empty());

        // any unimodular weight works on the cycle
        let z = C64::new((0.7f64).cos(), (0.7f64).sin());
        let cyc_rep = orbit_representation(&three_cycle(), 6, z).unwrap();
        let report = verify_covariance(&cyc_rep, &three_cycle(), TOL).unwrap();
        assert!(report.passes());
        assert!(report.max_covariance_defect < 1e-12);
    }

    #[test]
    fn corrupted_shift_fails_loudly() {
        let mut rep = default_representation(&chain()).unwrap();
        rep.shift[(0, 0)] = one(); // an edge the strand space does not have
        let report = verify_covariance(&rep, &chain(), TOL).unwrap();
        assert!(report.max_covariance_defect >= 1.0);
        assert!(!report.passes());
    }

    #[test]
    fn domain_projections_match_exactly() {
        for sys in [chain(), loop_sys(), three_cycle(), empty_domain()] {
            let rep = default_representation(&sys).unwrap();
            let u = &rep.shift;
            let mut u_pow = DenseMatrix::identity(rep.dim, rep.dim);
            for k in 1..=rep.depth {
                u_pow = u * &u_pow;
                let range = &u_pow * u_pow.adjoint();
                let pattern = rep.pi_set(sys.iterated_domain(k));
                let masked = rep.frontier(&sys, k);
                let diff = zero_rows_cols(&(range - pattern), &masked);
                assert!(max_abs_entry(&diff) < 1e-12, "system {sys:?} k={k}");
            }
        }
    }

    #[test]
    fn frontier_mask_isolates_truncation_error() {
        // a shallow truncation of the loop's infinite strand space breaks
        // covariance exactly on the frontier; the mask removes it
        let sys = loop_sys();
        let rep = orbit_representation(&sys, 3, one()).unwrap();
        let masked = verify_covariance_with(&rep, &sys, TOL, true).unwrap();
        assert!(masked.passes());
        assert_eq!(masked.masked_generators, PointSet::from_indices(&[0]));
        let unmasked = verify_covariance_with(&rep, &sys, TOL, false).unwrap();
        assert!(unmasked.max_covariance_defect >= 0.5, "{unmasked:?}");
    }

    #[test]
    fn covariance_set_examples() {
        let chain_rep = default_representation(&chain()).unwrap();
        assert_eq!(
            covariance_set(&chain_rep, &chain(), TOL).unwrap(),
            PointSet::from_indices(&[0, 1])
        );
        let cyc_rep = default_representation(&three_cycle()).unwrap();
        assert_eq!(
            covariance_set(&cyc_rep, &three_cycle(), TOL).unwrap(),
            PointSet::full(3)
        );
        let zero_rep = default_representation(&empty_domain()).unwrap();
        assert_eq!(
            covariance_set(&zero_rep, &empty_domain(), TOL).unwrap(),
            PointSet::EMPTY
        );
    }

    #[test]
    fn extend_chain_rep_gives_cylinder_diagonals() {
        let sys = chain();
        let rep = default_representation(&sys).unwrap();
        let ext = extend_representation(&rep, &sys, TOL).unwrap();
        assert!(ext.max_cylinder_defect < 1e-12);
        assert!(ext.max_covariance_defect < 1e-12);
    }

    #[test]
    fn extend_loop_rep_transfer_rank() {
        let sys = loop_sys();
        let rep = default_representation(&sys).unwrap();
        let ext = extend_representation(&rep, &sys, TOL).unwrap();
        // π̃ of the first transfer image of e_0 is diagonal of rank depth-1:
        // the strands with second coordinate 0 plus the periodic point
        let m = &ext.generators[1][0];
        let rank = (0..rep.dim).filter(|&i| m[(i, i)].norm() > 0.5).count();
        assert_eq!(rank, rep.depth - 1);
    }

    #[test]
    fn extend_zero_map_is_identity_on_generators() {
        let sys = empty_domain();
        let rep = default_representation(&sys).unwrap();
        let ext = extend_representation(&rep, &sys, TOL).unwrap();
        for x in 0..3 {
            assert!(max_abs_entry(&(&ext.generators[0][x] - rep.pi_point(x))) < 1e-15);
            // all higher cylinders vanish
            assert!(max_abs_entry(&ext.generators[1][x]) < 1e-15);
        }
    }

    #[test]
    fn extend_rejects_corrupted_rep() {
        let sys = chain();
        let mut rep = default_representation(&sys).unwrap();
        rep.shift[(0, 2)] = one();
        assert!(matches!(
            extend_representation(&rep, &sys, 1e-6),
            Err(Error::IllDefinedExtension { .. })
        ));
    }

    #[test]
    fn product_formula_fixtures() {
        for sys in [chain(), loop_sys(), three_cycle(), empty_domain()] {
            let rep = default_representation(&sys).unwrap();
            assert!(product_formula_check(&rep, &sys, TOL).unwrap());
        }
    }

    #[test]
    fn generated_dimension_examples() {
        let chain_rep = default_representation(&chain()).unwrap();
        assert_eq!(
            generated_algebra_dimension(&chain_rep, &chain()).unwrap(),
            9
        );

        let cyc_rep = default_representation(&three_cycle()).unwrap();
        assert_eq!(
            generated_algebra_dimension(&cyc_rep, &three_cycle()).unwrap(),
            9
        );

        let zero_rep = default_representation(&empty_domain()).unwrap();
        assert_eq!(
            generated_algebra_dimension(&zero_rep, &empty_domain()).unwrap(),
            3
        );
    }

    #[test]
    fn gauge_expectation_chain() {
        let sys = chain();
        let rep = default_representation(&sys).unwrap();
        assert!(gauge_expectation_check(&rep, &sys, 1e-12).unwrap());
        // and the refusal path
        let cyc = three_cycle();
        let cyc_rep = default_representation(&cyc).unwrap();
        assert!(matches!(
            gauge_expectation_check(&cyc_rep, &cyc, TOL),
            Err(Error::PeriodicOrbitPresent { .. })
        ));
    }

    #[test]
    fn empty_system_goes_through_the_whole_suite() {
        let sys = SystemWithHull::new(PartialMap::empty(0), PointSet::EMPTY);
        let rep = default_representation(&sys).unwrap();
        assert_eq!(rep.dim, 0);
        assert!(verify_covariance(&rep, &sys, TOL).unwrap().passes());
        assert!(product_formula_check(&rep, &sys, TOL).unwrap());
        assert!(gauge_expectation_check(&rep, &sys, TOL).unwrap());
        assert_eq!(generated_algebra_dimension(&rep, &sys).unwrap(), 0);
    }

    #[test]
    fn kernel_witness_three_cycle() {
        let sys = three_cycle();
        let cycle = PeriodicStrand::new(vec![], vec![0, 2, 1]);
        let witness = kernel_witness_for_periodic(&sys, &cycle).unwrap();
        assert!(witness.defect < 1e-12);
        assert!((witness.indicator_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_witness_fixed_point() {
        // 1 → 0 → 0 with minimal hull {1}: the fixed point 0 has preimages
        // {0, 1}, not isolated; a lone fixed point is
        let lone = SystemWithHull::new(PartialMap::new(1, &[(0, 0)]).unwrap(), PointSet::EMPTY);
        let cycle = PeriodicStrand::new(vec![], vec![0]);
        let witness = kernel_witness_for_periodic(&lone, &cycle).unwrap();
        assert!(witness.defect < 1e-12);

        let sys = loop_sys();
        assert!(matches!(
            kernel_witness_for_periodic(&sys, &cycle),
            Err(Error::CycleNotIsolated { .. })
        ));
    }
}
