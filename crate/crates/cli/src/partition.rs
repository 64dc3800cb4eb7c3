//! `grpart partition`: build a partition by one of the constructions and
//! attach a certificate to every cell.

use std::collections::HashSet;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use grpart::classify::default_head;
use grpart::constructions::{
    free_3large_partition, free_4large_partition, free_bipartition, m_thin_partition, thick_partition, MThinOutcome,
    Pairing,
};
use grpart::filtration::{chi_partition, scattered_partition, small_partition, Filtration, Scheme};
use grpart::graph::{is_displaced, large_partition, non_thick_partition, parse_map, three_sets_partition, three_sets_partition_3};
use grpart::partition::{Partition, SCHEMA_VERSION};
use grpart::{parse_set, Error, Group, GroupKind, Result, Status};
use serde_json::{json, Value};

use crate::config::{parse_elements, standard_radii, RunArgs};
use crate::Report;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    GrasshopperLarge,
    FiltrationSmall,
    ChiCov,
    Scattered,
    Thick,
    ThreeSets,
    #[value(name = "free-3large")]
    Free3large,
    #[value(name = "free-4large")]
    Free4large,
    FreeBipartition,
    MThin,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Number of cells for `grasshopper-large`, `thick` and `m-thin`; 3 or 4
    /// classes for `three-sets`.
    #[arg(long)]
    pub cells: Option<usize>,
    /// Filtration scheme: `standard-direct-sum` or `product-K-H`.
    #[arg(long, default_value = "standard-direct-sum")]
    pub scheme: String,
    /// A map file of `x f(x)` lines for `three-sets`.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// The displacing element for `three-sets` on a group.
    #[arg(long)]
    pub element: Option<String>,
    /// The set to split for `m-thin`.
    #[arg(long)]
    pub set: Option<String>,
    /// The thinness radius for `m-thin`; the standard radii when omitted.
    #[arg(long = "F")]
    pub f: Option<String>,
    /// Certificates use the standard radii `1..=T`.
    #[arg(long)]
    pub test_radius: Option<u32>,
    /// Translate bound for `filtration-small`.
    #[arg(long, default_value_t = 3)]
    pub k: usize,
    /// Pattern length for `scattered`.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Letters of `A_1` for `free-bipartition`, comma separated; the first
    /// half of the alphabet when omitted.
    #[arg(long)]
    pub letters: Option<String>,
}

pub fn run(a: &PartitionArgs) -> Result<Report> {
    if a.method == Method::ThreeSets && a.map.is_some() {
        return three_sets_map(a);
    }
    let g = a.run.load_group()?;
    let default_margin = |r: u32| match a.method {
        Method::Thick | Method::ThreeSets | Method::ChiCov => 0,
        _ => r / 4,
    };
    let spec = a.run.window(&g, default_margin)?;
    let cells = a.cells.unwrap_or(match a.method {
        Method::Thick | Method::ThreeSets => 3,
        _ => 2,
    });
    let mut p = match a.method {
        Method::GrasshopperLarge => large_partition(&g, cells, &spec)?,
        Method::FiltrationSmall => {
            let f = Filtration::new(&g, Scheme::parse(&a.scheme)?)?;
            let radii: Vec<u32> = (1..=a.test_radius.unwrap_or(6)).collect();
            small_partition(&f, &spec, &radii, a.k)?
        }
        Method::ChiCov => chi_partition(&Filtration::new(&g, Scheme::parse(&a.scheme)?)?, &spec)?,
        Method::Scattered => scattered_partition(&Filtration::new(&g, Scheme::parse(&a.scheme)?)?, &spec, a.depth)?,
        Method::Thick => thick_partition(&g, cells, &spec, a.test_radius.unwrap_or(2))?,
        Method::ThreeSets => {
            let t = a.element.as_deref().ok_or_else(|| Error::Config("`three-sets` needs --map or --element".into()))?;
            non_thick_partition(&g, &g.parse_element(t)?, &spec)?
        }
        Method::Free3large => free_3large_partition(&g, &spec)?,
        Method::Free4large => free_4large_partition(&g, &Pairing::consecutive(free_rank(&g)?)?, &spec)?,
        Method::FreeBipartition => {
            let rank = free_rank(&g)?;
            let a1: Vec<u32> = match a.letters.as_deref() {
                Some(t) => parse_letters(&g, t)?,
                None => (0..rank.div_ceil(2)).collect(),
            };
            free_bipartition(&g, &a1, &spec, a.test_radius.unwrap_or(2))?
        }
        Method::MThin => {
            let text = a.set.as_deref().ok_or_else(|| Error::Config("`m-thin` needs --set".into()))?;
            let set = parse_set(&g, text)?;
            let family = match a.f.as_deref() {
                Some(t) => vec![parse_elements(&g, t)?],
                None => standard_radii(&g, a.test_radius.unwrap_or(2))?,
            };
            let w = spec.build(&g)?;
            let head: Vec<_> = default_head(&g, &w).into_iter().collect();
            match m_thin_partition(&g, &set, cells, &family, &spec, &head)? {
                MThinOutcome::Partition(p) => p,
                other => return Ok(m_thin_failure(&g, a, other)),
            }
        }
    };
    p.seed = a.run.seed;
    Ok(report(&g, &p))
}

fn report(g: &Group, p: &Partition) -> Report {
    let status = p.status();
    Report { json: p.to_json(g), exit: status.exit_code() as u8 }
}

fn free_rank(g: &Group) -> Result<u32> {
    match g.kind() {
        GroupKind::Free { rank: Some(r) } => Ok(*r),
        _ => Err(Error::Descriptor("this method needs a free group of finite rank".into())),
    }
}

/// Letters given as one-letter words, e.g. `a,c`.
fn parse_letters(g: &Group, text: &str) -> Result<Vec<u32>> {
    parse_elements(g, text)?
        .iter()
        .map(|x| match x.as_word() {
            Some(&[l]) if l > 0 => Ok(l as u32 - 1),
            _ => Err(Error::Config(format!("`{}` is not a letter", g.format_element(x)))),
        })
        .collect()
}

fn m_thin_failure(g: &Group, a: &PartitionArgs, out: MThinOutcome) -> Report {
    let (status, detail) = match out {
        MThinOutcome::NotMThin(v) => (v.status, json!({"reason": "not m-thin", "verdict": v.to_json(g)})),
        MThinOutcome::Infeasible { core } => {
            (Status::Fails, json!({"reason": "no coloring exists", "core": g.format_set(&core)}))
        }
        MThinOutcome::GreedyFailed { point } => (
            Status::Inconclusive,
            json!({"reason": "greedy coloring failed", "point": g.format_element(&point)}),
        ),
        MThinOutcome::Partition(_) => unreachable!("handled by the caller"),
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "method": "m-thin",
        "seed": a.run.seed,
        "status": status.as_str(),
        "failure": detail,
    });
    Report { json, exit: status.exit_code() as u8 }
}

/// The three-sets classes of a map read from a file, each checked for
/// `f(X) ∩ X = ∅`, with `X_0` the fixed points.
fn three_sets_map(a: &PartitionArgs) -> Result<Report> {
    let path = a.map.as_ref().expect("checked by the caller");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let (fg, names) = parse_map(&text)?;
    let classes: Vec<Vec<usize>> = match a.cells {
        None | Some(4) => three_sets_partition(&fg).to_vec(),
        Some(3) => three_sets_partition_3(&fg)?.to_vec(),
        Some(c) => return Err(Error::Config(format!("`three-sets` builds 3 or 4 classes, not {c}"))),
    };
    let fixed: HashSet<usize> = fg.fixed_points().into_iter().collect();
    let mut status = Status::Holds;
    let cells: Vec<Value> = classes
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let ok = if i == 0 {
                class.iter().copied().collect::<HashSet<_>>() == fixed
            } else {
                is_displaced(&fg, class)
            };
            if !ok {
                status = Status::Fails;
            }
            json!({
                "label": i.to_string(),
                "size": class.len(),
                "elements": class.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
                "check": if i == 0 { "fixed points" } else { "f(X) misses X" },
                "status": if ok { "holds" } else { "fails" },
            })
        })
        .collect();
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "method": "three-sets",
        "seed": a.run.seed,
        "points": fg.order(),
        "status": status.as_str(),
        "cells": cells,
    });
    Ok(Report { json, exit: status.exit_code() as u8 })
}
