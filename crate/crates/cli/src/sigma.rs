use std::fs;
use std::path::PathBuf;

use anyhow::Result;
use golden_birkhoff::tau_sigma::{sigma_taylor, SigmaTable};
use golden_birkhoff::SCHEMA_VERSION;

use crate::config::{cache_dir, write_file, RunConfig};

pub const DEFAULT_ORDER: usize = 8;

pub fn default_levels() -> Vec<u32> {
    (20..=34).step_by(2).collect()
}

pub fn cache_path(order: usize, levels: &[u32]) -> PathBuf {
    let lv: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
    // the table is computed in doubles whatever the run precision
    cache_dir().join(format!("sigma-v{SCHEMA_VERSION}-o{order}-l{}-auto-p53.json", lv.join("_")))
}

/// Loads the table for `(order, levels)` from the cache, recomputing it when
/// the file is missing, unreadable or written by another version.
pub fn load_or_build(order: usize, levels: &[u32], use_cache: bool, cfg: &RunConfig) -> Result<SigmaTable> {
    let path = cache_path(order, levels);
    if use_cache {
        if let Ok(text) = fs::read_to_string(&path) {
            match serde_json::from_str::<SigmaTable>(&text) {
                Ok(t) if t.schema_version == SCHEMA_VERSION && t.order == order && t.levels == levels => {
                    cfg.note(&format!("sigma table read from {}", path.display()));
                    return Ok(t);
                }
                _ => eprintln!("notice: cached sigma table {} is stale, recomputing", path.display()),
            }
        }
    }
    let table = sigma_taylor(order, levels)?;
    if use_cache {
        write_file(&path, &serde_json::to_string_pretty(&table.to_json())?)?;
        cfg.note(&format!("sigma table written to {}", path.display()));
    }
    Ok(table)
}
