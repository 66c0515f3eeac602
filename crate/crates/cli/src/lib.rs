//! Library backing the `cpdyn` binary; the command implementations live
//! here so the test suite can exercise them without spawning processes.

pub mod commands;
pub mod output;
pub mod parse;

pub use commands::{execute, CliError, CommandKind, OutputFormat, RunConfig};

/// Parse a `--z RE,IM` argument (a bare `RE` means imaginary part zero).
pub fn parse_z(text: &str) -> Result<cpdyn_core::matrep::C64, String> {
    let (re, im) = match text.split_once(',') {
        Some((re, im)) => (re.trim(), im.trim()),
        None => (text.trim(), "0"),
    };
    let re: f64 = re
        .parse()
        .map_err(|_| format!("bad real part in --z: {re:?}"))?;
    let im: f64 = im
        .parse()
        .map_err(|_| format!("bad imaginary part in --z: {im:?}"))?;
    Ok(cpdyn_core::matrep::C64::new(re, im))
}
