//! File formats, reports and commands on top of `lgcurve-core`.

pub mod commands;
pub mod error;
pub mod input;
pub mod report;

pub use commands::{
    cmd_hh, cmd_jacobi, cmd_koszul, cmd_mf, cmd_orbifold, ExtChoice, HhVariant, MfAction, Outcome,
};
pub use error::{exit, CliError, CliResult};
pub use input::{parse_field, Loaded, LoadedMf, MfFile, ModelFile};
pub use report::{Report, Table};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "LGCURVE_THREADS";

/// Sizes the global thread pool from [`THREADS_ENV`]; unset or `0` keeps the default.
pub fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::parse(format!("{THREADS_ENV}=`{v}` is not a thread count")))?;
    if n > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

/// Reads and builds a model file.
pub fn load_model(path: &std::path::Path, field: Option<lgcurve_core::Field>) -> CliResult<Loaded> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::other(format!("{}: {e}", path.display())))?;
    ModelFile::from_toml(&text)
        .and_then(|f| f.load(field))
        .map_err(|e| CliError {
            code: e.code,
            message: format!("{}: {}", path.display(), e.message),
        })
}

/// Reads a factorization file over the ring of `model`.
pub fn load_mf(path: &std::path::Path, model: &Loaded) -> CliResult<LoadedMf> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::other(format!("{}: {e}", path.display())))?;
    MfFile::from_toml(&text)
        .and_then(|f| f.load(model.model.ring()))
        .map_err(|e| CliError {
            code: e.code,
            message: format!("{}: {}", path.display(), e.message),
        })
}
