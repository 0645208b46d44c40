//! Optional `key = value` configuration.
//!
//! Looked up from `--config`, then `$FLOERDIM_CONFIG`, then `./floerdim.conf`.
//! Recognised keys: `output` (`human` or `json`), `pmax`, `corpus`.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

pub const FILE_NAME: &str = "floerdim.conf";
pub const ENV_VAR: &str = "FLOERDIM_CONFIG";

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub json: bool,
    pub pmax: Option<i64>,
    pub corpus: Option<PathBuf>,
}

pub fn parse(text: &str) -> Result<Config> {
    let mut cfg = Config::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) =
            line.split_once('=').with_context(|| format!("config line {}: expected key = value", n + 1))?;
        let value = value.trim();
        match key.trim() {
            "output" => {
                cfg.json = match value {
                    "json" => true,
                    "human" => false,
                    other => bail!("config line {}: unknown output mode {other:?}", n + 1),
                }
            }
            "pmax" => cfg.pmax = Some(value.parse().with_context(|| format!("config line {}: bad pmax", n + 1))?),
            "corpus" => cfg.corpus = Some(PathBuf::from(value)),
            other => bail!("config line {}: unknown key {other:?}", n + 1),
        }
    }
    Ok(cfg)
}

/// Loads the first config found; an explicitly named file must exist.
pub fn load(flag: Option<&Path>) -> Result<Config> {
    let explicit = flag.map(Path::to_path_buf).or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from));
    let path = match explicit {
        Some(p) => p,
        None => {
            let local = PathBuf::from(FILE_NAME);
            if !local.is_file() {
                return Ok(Config::default());
            }
            local
        }
    };
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
    parse(&text).with_context(|| format!("in {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys() {
        let c = parse("# defaults\noutput = json\npmax=7\ncorpus = data/all.txt\n").unwrap();
        assert_eq!(c, Config { json: true, pmax: Some(7), corpus: Some("data/all.txt".into()) });
        assert!(parse("colour = red").is_err());
        assert!(parse("output").is_err());
        assert_eq!(parse("").unwrap(), Config::default());
    }
}
