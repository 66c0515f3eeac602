//! Subcommand implementations.
//!
//! Every command reads one system document, computes deterministically and
//! writes to stdout.  Exit discipline: 0 for a completed computation, 1 for
//! bad input (parse failures, hull violations, unusable flags), 2 when an
//! internal verification invariant fails — which no input should trigger.

use crate::output::{
    json_string, label_list, label_set, matrix_grid, matrix_json, periodic_text, strand_text,
    SystemJson,
};
use crate::parse::{parse_document, parse_system, ParsedSystem};
use clap::ValueEnum;
use cpdyn_core::extension::{build_strands, default_depth, infinite_strands, thread_check};
use cpdyn_core::freeness::{
    classify_simplicity, dichotomy_report, freeness_report, isolated_periodic_strands,
    DichotomyBranch, NonSimplicityWitness, SimplicityVerdict,
};
use cpdyn_core::lattice::{
    enumerate_pairs, export_hasse, hull_invariant_sets, quotient_system, reduce_system,
    IdealLattice, QuotientSystem,
};
use cpdyn_core::matrep::{
    gauge_expectation_check, generated_algebra_dimension, kernel_witness_for_periodic,
    orbit_representation, product_formula_check, verify_covariance, C64,
};
use cpdyn_core::{Error as CoreError, PointSet};
use serde::Serialize;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum CommandKind {
    Validate,
    Extension,
    Lattice,
    InvariantSets,
    Freeness,
    Simplicity,
    Dichotomy,
    Reduce,
    Quotient,
    Represent,
    Witness,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub depth: Option<usize>,
    pub tol: f64,
    pub z: C64,
    pub output: OutputFormat,
    pub pair: Option<usize>,
    pub period: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            depth: None,
            tol: 1e-9,
            z: C64::new(1.0, 0.0),
            output: OutputFormat::Text,
            pair: None,
            period: None,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Exit code 1.
    Input(String),
    /// Exit code 2.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

fn core_err(e: CoreError) -> CliError {
    match e {
        CoreError::Internal(m) => CliError::Internal(m),
        other => CliError::Input(other.to_string()),
    }
}

fn defect(v: f64) -> String {
    format!("{v:.3e}")
}

/// Run one command against a document.
pub fn execute(command: CommandKind, config: &RunConfig, text: &str) -> Result<String, CliError> {
    if config.tol <= 0.0 {
        return Err(CliError::Input("tolerance must be positive".into()));
    }
    if (config.z.norm() - 1.0).abs() > 1e-9 {
        return Err(CliError::Input(format!(
            "z must be unimodular, |z| = {}",
            config.z.norm()
        )));
    }
    if config.output == OutputFormat::Dot && command != CommandKind::Lattice {
        return Err(CliError::Input(
            "dot output is only available for the lattice command".into(),
        ));
    }

    // `reduce` repairs invalid hulls, every other command requires validity
    let parsed = if command == CommandKind::Reduce {
        parse_document(text)
    } else {
        parse_system(text)
    }
    .map_err(|e| CliError::Input(e.to_string()))?;

    let depth = config.depth.unwrap_or(default_depth(parsed.system.size()));
    if config.depth == Some(0) {
        return Err(CliError::Input("depth must be at least 1".into()));
    }

    match command {
        CommandKind::Validate => cmd_validate(&parsed, config),
        CommandKind::Extension => cmd_extension(&parsed, config, depth),
        CommandKind::Lattice => cmd_lattice(&parsed, config),
        CommandKind::InvariantSets => cmd_invariant_sets(&parsed, config),
        CommandKind::Freeness => cmd_freeness(&parsed, config),
        CommandKind::Simplicity => cmd_simplicity(&parsed, config),
        CommandKind::Dichotomy => cmd_dichotomy(&parsed, config),
        CommandKind::Reduce => cmd_reduce(&parsed, config),
        CommandKind::Quotient => cmd_quotient(&parsed, config),
        CommandKind::Represent => cmd_represent(&parsed, config, depth),
        CommandKind::Witness => cmd_witness(&parsed, config),
    }
}

// ---------------------------------------------------------------------- //

#[derive(Serialize)]
struct ValidateJson {
    system: SystemJson,
    valid: bool,
    warnings: Vec<String>,
}

fn cmd_validate(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    match config.output {
        OutputFormat::Json => Ok(json_string(&ValidateJson {
            system: SystemJson::from_parsed(parsed),
            valid: true,
            warnings: parsed.warnings.clone(),
        })),
        _ => {
            let mut out = SystemJson::from_parsed(parsed).to_document();
            out.push_str("# valid\n");
            for w in &parsed.warnings {
                out.push_str(&format!("# warning: {w}\n"));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct PeriodicJson {
    preperiod: Vec<String>,
    cycle: Vec<String>,
}

#[derive(Serialize)]
struct ExtensionJson {
    system: SystemJson,
    depth: usize,
    strands: Vec<Vec<String>>,
    periodic: Vec<PeriodicJson>,
    infinite_core: Vec<String>,
    thread_check: bool,
}

fn cmd_extension(
    parsed: &ParsedSystem,
    config: &RunConfig,
    depth: usize,
) -> Result<String, CliError> {
    let sys = &parsed.system;
    let strands = build_strands(sys, depth).map_err(core_err)?;
    let (core, periodic) = infinite_strands(sys, depth).map_err(core_err)?;
    let coherent = thread_check(sys, depth).map_err(core_err)?;
    if !coherent {
        return Err(CliError::Internal(
            "inverse-limit threads disagree with the strand enumeration".into(),
        ));
    }
    match config.output {
        OutputFormat::Json => Ok(json_string(&ExtensionJson {
            system: SystemJson::from_parsed(parsed),
            depth,
            strands: strands
                .iter()
                .map(|s| s.coords.iter().map(|&i| parsed.labels[i].clone()).collect())
                .collect(),
            periodic: periodic
                .iter()
                .map(|p| PeriodicJson {
                    preperiod: p
                        .preperiod
                        .iter()
                        .map(|&i| parsed.labels[i].clone())
                        .collect(),
                    cycle: p.cycle.iter().map(|&i| parsed.labels[i].clone()).collect(),
                })
                .collect(),
            infinite_core: label_list(core, &parsed.labels),
            thread_check: coherent,
        })),
        _ => {
            let mut out = format!(
                "# extension at depth {depth}: {} strands, {} periodic strands\n",
                strands.len(),
                periodic.len()
            );
            for s in &strands {
                out.push_str(&format!("strand {}\n", strand_text(s, &parsed.labels)));
            }
            for p in &periodic {
                out.push_str(&format!("periodic {}\n", periodic_text(p, &parsed.labels)));
            }
            out.push_str(&format!(
                "infinite core: {}\n",
                label_set(core, &parsed.labels)
            ));
            out.push_str("thread check: ok\n");
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct PairJson {
    v: Vec<String>,
    vprime: Vec<String>,
}

#[derive(Serialize)]
struct LatticeJson {
    system: SystemJson,
    count: usize,
    pairs: Vec<PairJson>,
    hasse: Vec<[usize; 2]>,
}

fn lattice_of(parsed: &ParsedSystem) -> Result<IdealLattice, CliError> {
    enumerate_pairs(&parsed.system).map_err(core_err)
}

fn cmd_lattice(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let lattice = lattice_of(parsed)?;
    match config.output {
        OutputFormat::Dot => Ok(export_hasse(&lattice, &parsed.labels)),
        OutputFormat::Json => Ok(json_string(&LatticeJson {
            system: SystemJson::from_parsed(parsed),
            count: lattice.len(),
            pairs: lattice
                .elements
                .iter()
                .map(|p| PairJson {
                    v: label_list(p.v, &parsed.labels),
                    vprime: label_list(p.vprime, &parsed.labels),
                })
                .collect(),
            hasse: lattice.hasse_edges.iter().map(|&(l, u)| [l, u]).collect(),
        })),
        OutputFormat::Text => {
            let mut out = format!("# {} gauge-invariant ideal pairs\n", lattice.len());
            for (i, p) in lattice.elements.iter().enumerate() {
                out.push_str(&format!(
                    "pair {i}: {} | {}\n",
                    label_set(p.v, &parsed.labels),
                    label_set(p.vprime, &parsed.labels)
                ));
            }
            for &(l, u) in &lattice.hasse_edges {
                out.push_str(&format!("hasse: {l} < {u}\n"));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct InvariantSetsJson {
    system: SystemJson,
    sets: Vec<Vec<String>>,
}

fn cmd_invariant_sets(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let sets = hull_invariant_sets(&parsed.system).map_err(core_err)?;
    match config.output {
        OutputFormat::Json => Ok(json_string(&InvariantSetsJson {
            system: SystemJson::from_parsed(parsed),
            sets: sets
                .iter()
                .map(|&s| label_list(s, &parsed.labels))
                .collect(),
        })),
        _ => {
            let mut out = format!("# {} hull-invariant sets\n", sets.len());
            for s in &sets {
                out.push_str(&format!("{}\n", label_set(*s, &parsed.labels)));
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct FreenessJson {
    system: SystemJson,
    f_sets: serde_json::Map<String, serde_json::Value>,
    topologically_free_outside_hull: bool,
    periodic_points_exist: bool,
    all_ideals_gauge_invariant: bool,
}

fn cmd_freeness(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let report = freeness_report(&parsed.system).map_err(core_err)?;
    match config.output {
        OutputFormat::Json => {
            let mut f_sets = serde_json::Map::new();
            for (i, s) in report.f_sets.iter().enumerate() {
                f_sets.insert(
                    (i + 1).to_string(),
                    serde_json::to_value(label_list(*s, &parsed.labels)).expect("strings"),
                );
            }
            Ok(json_string(&FreenessJson {
                system: SystemJson::from_parsed(parsed),
                f_sets,
                topologically_free_outside_hull: report.topologically_free_outside_hull,
                periodic_points_exist: report.periodic_points_exist,
                all_ideals_gauge_invariant: report.all_ideals_gauge_invariant,
            }))
        }
        _ => {
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            let mut out = String::new();
            for (i, s) in report.f_sets.iter().enumerate() {
                out.push_str(&format!(
                    "F_{} = {}\n",
                    i + 1,
                    label_set(*s, &parsed.labels)
                ));
            }
            out.push_str(&format!(
                "topologically free outside hull: {}\n",
                yes_no(report.topologically_free_outside_hull)
            ));
            out.push_str(&format!(
                "periodic points exist: {}\n",
                yes_no(report.periodic_points_exist)
            ));
            out.push_str(&format!(
                "all ideals gauge-invariant: {}\n",
                yes_no(report.all_ideals_gauge_invariant)
            ));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum WitnessJson {
    NontrivialPair {
        v: Vec<String>,
        vprime: Vec<String>,
    },
    PeriodicOrbit {
        orbit: Vec<String>,
    },
    HullNotMinimal {
        hull: Vec<String>,
        minimal: Vec<String>,
    },
    EmptySpace,
}

#[derive(Serialize)]
struct SimplicityJson {
    system: SystemJson,
    simple: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
}

fn witness_text(w: &NonSimplicityWitness, parsed: &ParsedSystem) -> String {
    match w {
        NonSimplicityWitness::NontrivialPair(p) => format!(
            "nontrivial ideal pair {} | {}",
            parsed.label_set(p.v),
            parsed.label_set(p.vprime)
        ),
        NonSimplicityWitness::PeriodicOrbit(orbit) => {
            let names: Vec<&str> = orbit.iter().map(|&i| parsed.labels[i].as_str()).collect();
            format!("periodic orbit [{}]", names.join(","))
        }
        NonSimplicityWitness::HullNotMinimal { hull, minimal } => format!(
            "hull {} strictly exceeds minimal hull {}",
            parsed.label_set(*hull),
            parsed.label_set(*minimal)
        ),
        NonSimplicityWitness::EmptySpace => "empty point space".to_string(),
    }
}

fn cmd_simplicity(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let verdict = classify_simplicity(&parsed.system).map_err(core_err)?;
    match config.output {
        OutputFormat::Json => {
            let (simple, matrix_dimension, witness) = match &verdict {
                SimplicityVerdict::Simple { matrix_dimension } => {
                    (true, Some(*matrix_dimension), None)
                }
                SimplicityVerdict::NotSimple { witness } => (
                    false,
                    None,
                    Some(match witness {
                        NonSimplicityWitness::NontrivialPair(p) => WitnessJson::NontrivialPair {
                            v: label_list(p.v, &parsed.labels),
                            vprime: label_list(p.vprime, &parsed.labels),
                        },
                        NonSimplicityWitness::PeriodicOrbit(orbit) => WitnessJson::PeriodicOrbit {
                            orbit: orbit.iter().map(|&i| parsed.labels[i].clone()).collect(),
                        },
                        NonSimplicityWitness::HullNotMinimal { hull, minimal } => {
                            WitnessJson::HullNotMinimal {
                                hull: label_list(*hull, &parsed.labels),
                                minimal: label_list(*minimal, &parsed.labels),
                            }
                        }
                        NonSimplicityWitness::EmptySpace => WitnessJson::EmptySpace,
                    }),
                ),
            };
            Ok(json_string(&SimplicityJson {
                system: SystemJson::from_parsed(parsed),
                simple,
                matrix_dimension,
                witness,
            }))
        }
        _ => {
            let mut out = match &verdict {
                SimplicityVerdict::Simple { matrix_dimension } => {
                    format!("SIMPLE: C*(A,α) ≅ M_{matrix_dimension}\n")
                }
                SimplicityVerdict::NotSimple { witness } => {
                    format!("NOT SIMPLE: {}\n", witness_text(witness, parsed))
                }
            };
            out.push_str(
                "# note: on a finite space the only simple case is a single non-periodic\n\
                 # orbit with minimal hull; the minimal-surjection case needs a non-discrete\n\
                 # space and cannot occur here.\n",
            );
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct DichotomyJson {
    system: SystemJson,
    quasinilpotent: bool,
    monomorphism: bool,
    branch: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    consistent_with_simplicity: Option<bool>,
}

fn branch_name(branch: DichotomyBranch) -> &'static str {
    match branch {
        DichotomyBranch::Quasinilpotent => "quasinilpotent",
        DichotomyBranch::Monomorphism => "monomorphism",
        DichotomyBranch::Neither => "neither",
        DichotomyBranch::BothVacuously => "both-vacuously",
    }
}

fn cmd_dichotomy(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let report = dichotomy_report(&parsed.system);
    match config.output {
        OutputFormat::Json => Ok(json_string(&DichotomyJson {
            system: SystemJson::from_parsed(parsed),
            quasinilpotent: report.quasinilpotent,
            monomorphism: report.monomorphism,
            branch: branch_name(report.branch).to_string(),
            consistent_with_simplicity: report.consistent_with_simplicity,
        })),
        _ => {
            let yes_no = |b: bool| if b { "yes" } else { "no" };
            let mut out = format!(
                "quasinilpotent: {}\nmonomorphism: {}\nbranch: {}\n",
                yes_no(report.quasinilpotent),
                yes_no(report.monomorphism),
                branch_name(report.branch)
            );
            if let Some(consistent) = report.consistent_with_simplicity {
                out.push_str(&format!(
                    "simple implies exactly one branch: {}\n",
                    if consistent { "consistent" } else { "VIOLATED" }
                ));
                if !consistent {
                    return Err(CliError::Internal("simple system off the dichotomy".into()));
                }
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct ReduceJson {
    system: SystemJson,
    reduced: SystemJson,
    kept: Vec<String>,
}

fn restriction_json(q: &QuotientSystem, parent_labels: &[String]) -> SystemJson {
    let labels: Vec<String> = q
        .embedding
        .iter()
        .map(|&old| parent_labels[old].clone())
        .collect();
    SystemJson::from_system(&q.system, &labels)
}

fn cmd_reduce(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let reduced = reduce_system(&parsed.system.map, parsed.system.hull);
    let kept: PointSet = reduced.embedding.iter().copied().collect();
    let reduced_json = restriction_json(&reduced, &parsed.labels);
    match config.output {
        OutputFormat::Json => Ok(json_string(&ReduceJson {
            system: SystemJson::from_parsed(parsed),
            reduced: reduced_json,
            kept: label_list(kept, &parsed.labels),
        })),
        _ => {
            let mut out = reduced_json.to_document();
            out.push_str(&format!(
                "# reduced from {} to {} points; kept {}\n",
                parsed.system.size(),
                reduced.system.size(),
                label_set(kept, &parsed.labels)
            ));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct QuotientJson {
    system: SystemJson,
    pair: PairJson,
    quotient: SystemJson,
}

fn cmd_quotient(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let Some(index) = config.pair else {
        return Err(CliError::Input(
            "the quotient command needs --pair INDEX".into(),
        ));
    };
    let lattice = lattice_of(parsed)?;
    let Some(pair) = lattice.elements.get(index) else {
        return Err(CliError::Input(format!(
            "pair index {index} out of range: the lattice has {} elements",
            lattice.len()
        )));
    };
    let quotient = quotient_system(&parsed.system, pair).map_err(core_err)?;
    let quotient_json = restriction_json(&quotient, &parsed.labels);
    match config.output {
        OutputFormat::Json => Ok(json_string(&QuotientJson {
            system: SystemJson::from_parsed(parsed),
            pair: PairJson {
                v: label_list(pair.v, &parsed.labels),
                vprime: label_list(pair.vprime, &parsed.labels),
            },
            quotient: quotient_json,
        })),
        _ => {
            let mut out = quotient_json.to_document();
            out.push_str(&format!(
                "# quotient by pair {index}: {} | {}\n",
                label_set(pair.v, &parsed.labels),
                label_set(pair.vprime, &parsed.labels)
            ));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct RepresentJson {
    system: SystemJson,
    dim: usize,
    depth: usize,
    z: [f64; 2],
    max_covariance_defect: f64,
    ppi_defect: f64,
    domain_projection_defects: Vec<f64>,
    covariance_set: Vec<String>,
    masked_generators: Vec<String>,
    product_formula: bool,
    gauge_expectation: String,
    generated_dimension: usize,
}

fn cmd_represent(
    parsed: &ParsedSystem,
    config: &RunConfig,
    depth: usize,
) -> Result<String, CliError> {
    let sys = &parsed.system;
    let rep = orbit_representation(sys, depth, config.z).map_err(core_err)?;
    let report = verify_covariance(&rep, sys, config.tol).map_err(core_err)?;
    if !report.passes() {
        return Err(CliError::Internal(format!(
            "covariance verification failed: covariance defect {}, ppi defect {}",
            defect(report.max_covariance_defect),
            defect(report.ppi_defect)
        )));
    }
    if !product_formula_check(&rep, sys, config.tol).map_err(core_err)? {
        return Err(CliError::Internal("product formula check failed".into()));
    }
    let gauge = match gauge_expectation_check(&rep, sys, config.tol) {
        Ok(true) => "ok".to_string(),
        Ok(false) => return Err(CliError::Internal("gauge expectation check failed".into())),
        Err(CoreError::PeriodicOrbitPresent { .. }) => "skipped-periodic".to_string(),
        Err(e) => return Err(core_err(e)),
    };
    let generated = generated_algebra_dimension(&rep, sys).map_err(core_err)?;
    if let SimplicityVerdict::Simple { matrix_dimension } =
        classify_simplicity(sys).map_err(core_err)?
    {
        if generated != matrix_dimension * matrix_dimension {
            return Err(CliError::Internal(format!(
                "simple system generated dimension {generated} ≠ {}",
                matrix_dimension * matrix_dimension
            )));
        }
    }

    match config.output {
        OutputFormat::Json => Ok(json_string(&RepresentJson {
            system: SystemJson::from_parsed(parsed),
            dim: rep.dim,
            depth,
            z: [config.z.re, config.z.im],
            max_covariance_defect: report.max_covariance_defect,
            ppi_defect: report.ppi_defect,
            domain_projection_defects: report.domain_projection_defects.clone(),
            covariance_set: label_list(report.covariance_set, &parsed.labels),
            masked_generators: label_list(report.masked_generators, &parsed.labels),
            product_formula: true,
            gauge_expectation: gauge,
            generated_dimension: generated,
        })),
        _ => {
            let max_domain = report
                .domain_projection_defects
                .iter()
                .fold(0.0f64, |a, &b| a.max(b));
            let mut out = format!(
                "# representation: dim {}, depth {depth}, z = {:+.3}{:+.3}i\n",
                rep.dim, config.z.re, config.z.im
            );
            out.push_str(&format!(
                "covariance defect: {}\n",
                defect(report.max_covariance_defect)
            ));
            out.push_str(&format!("ppi defect: {}\n", defect(report.ppi_defect)));
            out.push_str(&format!(
                "max domain projection defect: {}\n",
                defect(max_domain)
            ));
            out.push_str(&format!(
                "covariance set: {}\n",
                label_set(report.covariance_set, &parsed.labels)
            ));
            out.push_str(&format!(
                "masked generators: {}\n",
                label_set(report.masked_generators, &parsed.labels)
            ));
            out.push_str("product formula: ok\n");
            out.push_str(&format!("gauge expectation: {gauge}\n"));
            out.push_str(&format!("generated algebra dimension: {generated}\n"));
            out.push_str(&format!("# all checks passed at tol {:.0e}\n", config.tol));
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct KernelWitnessJson {
    system: SystemJson,
    cycle: Vec<String>,
    period: usize,
    defect: f64,
    indicator_norm: f64,
    indicator: Vec<Vec<[f64; 2]>>,
    shifted: Vec<Vec<[f64; 2]>>,
}

fn cmd_witness(parsed: &ParsedSystem, config: &RunConfig) -> Result<String, CliError> {
    let Some(period) = config.period else {
        return Err(CliError::Input(
            "the witness command needs --period K".into(),
        ));
    };
    if period == 0 {
        return Err(CliError::Input("period must be at least 1".into()));
    }
    let candidates = isolated_periodic_strands(&parsed.system, period);
    let Some(strand) = candidates.first() else {
        return Err(CliError::Input(format!(
            "no isolated cycle of period dividing {period}"
        )));
    };
    let witness = kernel_witness_for_periodic(&parsed.system, strand).map_err(core_err)?;
    let cycle_labels: Vec<String> = strand
        .cycle
        .iter()
        .map(|&i| parsed.labels[i].clone())
        .collect();
    match config.output {
        OutputFormat::Json => Ok(json_string(&KernelWitnessJson {
            system: SystemJson::from_parsed(parsed),
            cycle: cycle_labels,
            period: strand.period(),
            defect: witness.defect,
            indicator_norm: witness.indicator_norm,
            indicator: matrix_json(&witness.indicator),
            shifted: matrix_json(&witness.shifted),
        })),
        _ => {
            let mut out = format!(
                "# kernel witness for cycle ({}), period {}\n",
                cycle_labels.join(","),
                strand.period()
            );
            out.push_str(&format!(
                "defect ||b - b·u^{}|| = {}\n",
                strand.period(),
                defect(witness.defect)
            ));
            out.push_str(&format!(
                "indicator norm = {}\n",
                defect(witness.indicator_norm)
            ));
            out.push_str("pi(b) =\n");
            out.push_str(&matrix_grid(&witness.indicator));
            out.push_str(&format!("pi(b)·u^{} =\n", strand.period()));
            out.push_str(&matrix_grid(&witness.shifted));
            Ok(out)
        }
    }
}
