//! `grpart verify`: re-verify a saved partition, or run the acceptance suite.

use std::path::PathBuf;

use clap::Args;
use grpart::partition::{Partition, SCHEMA_VERSION};
use grpart::suite::{run_criterion, suite_json, SuiteConfig, CRITERIA};
use grpart::{Error, Result, Status};
use serde_json::{json, Value};

use crate::config::{descriptor_json, RunArgs};
use crate::Report;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// A partition written by `grpart partition`.
    #[arg(long)]
    pub partition: Option<PathBuf>,
    /// Criterion ids to run, comma separated; all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<usize>,
}

pub fn run(a: &VerifyArgs) -> Result<Report> {
    // a group file given to verify must load, even though the suite fixes its own groups
    let group = a.run.group.as_ref().map(|_| a.run.load_group()).transpose()?;
    if let Some(path) = &a.partition {
        return reverify(path);
    }
    let mut cfg = SuiteConfig { seed: a.run.seed, ..SuiteConfig::default() };
    if let Some(cap) = a.run.element_cap {
        if cap == 0 {
            return Err(Error::Config("element cap must be positive".into()));
        }
        cfg.element_cap = cap;
    }
    let ids: Vec<usize> = if a.criteria.is_empty() { (1..=CRITERIA.len()).collect() } else { a.criteria.clone() };
    let results = ids.iter().map(|&id| run_criterion(id, &cfg)).collect::<Result<Vec<_>>>()?;
    for r in &results {
        eprintln!("{}", r.line());
    }
    let mut json = suite_json(&cfg, &results);
    if let Some(g) = &group {
        json["group"] = descriptor_json(g);
    }
    let status = results.iter().fold(Status::Holds, |s, r| s.and(r.status));
    Ok(Report { json, exit: status.exit_code() as u8 })
}

/// Loads a partition, checks that its cells still tile the window, and runs
/// every certificate again. The exit code reflects the fresh verdicts, and a
/// verdict that differs from the recorded one counts as a failure.
fn reverify(path: &PathBuf) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let (g, p) = Partition::from_json(&v)?;
    let fresh = p.reverify(&g)?;
    let mut status = Status::Holds;
    let mut mismatches = 0;
    let cells: Vec<Value> = p
        .cells
        .iter()
        .zip(&fresh)
        .map(|(c, verdicts)| {
            let checks: Vec<Value> = c
                .certificates
                .iter()
                .zip(verdicts)
                .map(|(cert, now)| {
                    status = status.and(now.status);
                    let same = cert.verdict.status == now.status;
                    if !same {
                        mismatches += 1;
                    }
                    json!({
                        "recorded": cert.verdict.status.as_str(),
                        "fresh": now.to_json(&g),
                        "agrees": same,
                    })
                })
                .collect();
            json!({"label": c.label.to_text(), "certificates": checks})
        })
        .collect();
    if mismatches > 0 {
        status = status.and(Status::Fails);
    }
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "method": p.method,
        "seed": p.seed,
        "status": status.as_str(),
        "mismatches": mismatches,
        "cells": cells,
    });
    Ok(Report { json, exit: status.exit_code() as u8 })
}
