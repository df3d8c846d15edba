use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use golden_birkhoff::corefuncs::PolePolicy;

pub const CACHE_ENV: &str = "GOLDBIRK_CACHE_DIR";

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// `None` lets each suite pick its own working precision.
    pub precision_bits: Option<u64>,
    pub pole_epsilon: f64,
    pub output: Option<PathBuf>,
    pub digits: usize,
    pub seed: u64,
    pub verbose: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(b) = self.precision_bits {
            if b < 53 {
                bail!("--precision-bits must be at least 53, got {b}");
            }
        }
        // 17 significant digits already pin down a double
        if self.digits > 17 && self.precision_bits.unwrap_or(53) <= 53 {
            bail!("--digits {} exceeds what double precision supports (17)", self.digits);
        }
        Ok(())
    }

    pub fn policy(&self) -> Result<PolePolicy> {
        Ok(PolePolicy::new(self.pole_epsilon)?)
    }

    /// Bits for suites that need more than a double mantissa.
    pub fn high_precision(&self, need: u64) -> Result<u64> {
        match self.precision_bits {
            None => Ok(need),
            Some(b) if b >= need => Ok(b),
            Some(b) => bail!("this suite needs --precision-bits >= {need}, got {b}"),
        }
    }

    /// Writes `text` to the output path, or to stdout.
    pub fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(p) => write_file(p, text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    out.write_all(b"\n")?;
                }
                Ok(())
            }
        }
    }

    pub fn note(&self, msg: &str) {
        if self.verbose {
            eprintln!("{msg}");
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("cache"))
}
