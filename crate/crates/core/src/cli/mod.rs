//! Command-line front end: config resolution, dispatch and export.

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use clap::Parser;
use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

pub use args::{Cli, Command};
pub use commands::Job;
pub use config::{Format, RunConfig};
pub use output::Table;

use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_CONFIG
    }
}

/// Reads the config file (if any), applies flag overrides and validates.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            RunConfig::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(o) = &cli.out {
        cfg.out = Some(o.clone());
    }
    if let Some(n) = cli.threads {
        cfg.threads = Some(n);
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn write_table(table: &Table, cfg: &RunConfig) -> std::io::Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(cfg.format, &mut w)?;
            w.flush()
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            table.write(cfg.format, &mut w)?;
            w.flush()
        }
    }
}

/// Runs one command end to end and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let cfg = match resolve_config(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("config error: {msg}");
            return EXIT_CONFIG;
        }
    };
    if let Some(n) = cfg.threads {
        // Fails only if a pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let job = Job::new(cli.command, cfg);
    let (table, code) = match job.run() {
        Ok(t) => {
            let code = if t.failed || t.has_numerical_failure() { EXIT_NUMERICAL } else { EXIT_OK };
            (t, code)
        }
        Err(e) => {
            eprintln!("{}: {e}", job.command.name());
            let mut t = job.table(Vec::new());
            t.fail(None, &e);
            (t, exit_code(&e))
        }
    };
    if let Err(e) = write_table(&table, &job.cfg) {
        eprintln!("cannot write output: {e}");
        return EXIT_CONFIG;
    }
    code
}

/// Parses `args` (program name first) and runs; what the binary does.
pub fn run_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}
