//! Corpus runner: one diagram or one `floerdim` command per line.
//!
//! A bare `W(...)`/`K(...)` line passes when its certificate checks and has
//! bound `p`; a command line passes when it exits with status 0. Blank lines
//! and `#` comments are skipped. Lines run in parallel, rows keep file order.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::Parser;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use floerdim::bypass::certify;
use floerdim::diagram::OneOneParams;

use crate::config::Config;
use crate::{exit_code, run, Cli, Command, Report, EXIT_INVARIANT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub line: usize,
    pub input: String,
    pub ok: bool,
    pub detail: String,
}

/// Splits on whitespace, keeping double-quoted runs together.
pub fn tokenize(line: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut pending = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                pending = true;
            }
            c if c.is_whitespace() && !quoted => {
                if pending {
                    out.push(std::mem::take(&mut cur));
                    pending = false;
                }
            }
            c => {
                cur.push(c);
                pending = true;
            }
        }
    }
    if quoted {
        bail!("unbalanced quote");
    }
    if pending {
        out.push(cur);
    }
    Ok(out)
}

fn is_diagram(line: &str) -> bool {
    let t = line.trim_matches('"');
    matches!(t.chars().next(), Some('W' | 'K')) && t.contains('(')
}

fn first_line(text: &str) -> String {
    text.lines().next().unwrap_or("").trim().to_string()
}

fn run_line(text: &str, cfg: &Config) -> Result<(bool, String)> {
    if is_diagram(text) {
        let w: OneOneParams = text.trim_matches('"').parse()?;
        let tree = certify(w)?;
        let ok = tree.check() && tree.bound == w.p;
        return Ok((ok, format!("bound {}", tree.bound)));
    }
    let args = tokenize(text)?;
    let cli = Cli::try_parse_from(std::iter::once("floerdim".to_string()).chain(args))
        .map_err(|e| anyhow::anyhow!(first_line(&e.to_string())))?;
    if matches!(cli.command, Command::Batch { .. }) {
        bail!("nested batch runs are not allowed");
    }
    let report: Report = run(&cli, cfg)?;
    Ok((report.code == 0, first_line(&report.human)))
}

pub fn rows(text: &str, cfg: &Config) -> Vec<Row> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    lines
        .par_iter()
        .map(|&(line, input)| {
            let (ok, detail) = match run_line(input, cfg) {
                Ok(r) => r,
                Err(e) => (false, format!("line {line}: {e:#} (exit {})", exit_code(&e))),
            };
            Row { line, input: input.to_string(), ok, detail }
        })
        .collect()
}

pub fn run_corpus(path: &Path, cfg: &Config) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading corpus {}", path.display()))?;
    let start = std::time::Instant::now();
    let rows = rows(&text, cfg);
    let failed = rows.iter().filter(|r| !r.ok).count();
    eprintln!("batch: {} rows in {:.3}s", rows.len(), start.elapsed().as_secs_f64());
    let mut human = String::from("line\tstatus\tinput\tdetail\n");
    for r in &rows {
        human.push_str(&format!("{}\t{}\t{}\t{}\n", r.line, if r.ok { "pass" } else { "FAIL" }, r.input, r.detail));
    }
    human.push_str(&format!("{} passed, {failed} failed\n", rows.len() - failed));
    let json = json!({ "rows": rows, "passed": rows.len() - failed, "failed": failed });
    let mut report = Report { human, json, raw: None, code: 0 };
    if failed > 0 {
        report.code = EXIT_INVARIANT;
    }
    Ok(report)
}
