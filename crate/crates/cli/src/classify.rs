//! `grpart classify`: one property of one subset, decided on a window.

use clap::{Args, ValueEnum};
use grpart::classify::{
    check_large, check_n_thin, check_scattered, check_small, check_sparse, check_thick, combinatorial_derivation,
    default_head, find_large_witness, find_prethick, IdealSpec, Sidedness, DEFAULT_NODE_BUDGET,
};
use grpart::partition::SCHEMA_VERSION;
use grpart::{parse_set, Element, Error, Group, Result, Side, Status, Verdict, Window, Witness};
use serde_json::json;

use crate::config::{descriptor_json, parse_elements, standard_radii, RunArgs};
use crate::Report;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Large,
    KLarge,
    Thick,
    Prethick,
    Small,
    Thin,
    NThin,
    Sparse,
    Scattered,
    Derivation,
}

impl Property {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Set expression, e.g. `evens`, `lambda=a`, `explicit[1,2]`.
    #[arg(long)]
    pub set: String,
    #[arg(long, value_enum)]
    pub prop: Property,
    /// A finite set of elements, comma separated: the radius for `large`,
    /// the radius for `thin` and `n-thin`, the sample for `sparse`.
    #[arg(long = "F")]
    pub f: Option<String>,
    /// Translate count for `k-large`, translate bound for `prethick` and `small`.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// The `n` of `n-thin`.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Thickness, smallness and thinness use the standard radii `1..=T`.
    #[arg(long, default_value_t = 2)]
    pub test_radius: u32,
    /// Pattern length for `scattered`, intersection size for `sparse`.
    #[arg(long, default_value_t = 3)]
    pub depth: usize,
    /// Window threshold for `sparse` and `derivation`; `⌈√|W|⌉` when omitted.
    #[arg(long)]
    pub threshold: Option<usize>,
    #[arg(long, value_enum, default_value_t = SideArg::Left)]
    pub side: SideArg,
}

fn one_side(s: SideArg) -> Result<Side> {
    match s {
        SideArg::Left => Ok(Side::Left),
        SideArg::Right => Ok(Side::Right),
        SideArg::Both => Err(Error::Config("this property takes --side left or --side right".into())),
    }
}

fn sidedness(s: SideArg) -> Sidedness {
    match s {
        SideArg::Left => Sidedness::Left,
        SideArg::Right => Sidedness::Right,
        SideArg::Both => Sidedness::Both,
    }
}

pub fn run(a: &ClassifyArgs) -> Result<Report> {
    let g = a.run.load_group()?;
    let set = parse_set(&g, &a.set)?;
    let spec = a.run.window(&g, |r| r / 4)?;
    let w = spec.build(&g)?;
    let f = a.f.as_deref().map(|t| parse_elements(&g, t)).transpose()?;
    let f_text = f.as_ref().map(|f| g.format_set(f));
    let mut extra = json!({});
    let verdict = match a.prop {
        Property::Large => {
            let f = f.ok_or_else(|| Error::Config("`large` needs --F".into()))?;
            check_large(&g, &set, &f, &w, one_side(a.side)?)
        }
        Property::KLarge => find_large_witness(&g, &set, a.k, &w, one_side(a.side)?),
        Property::Thick => check_thick(&g, &set, &standard_radii(&g, a.test_radius)?, &w, sidedness(a.side)),
        Property::Prethick => {
            let radii = standard_radii(&g, a.test_radius)?;
            let pool = pool_of(&g, &radii);
            match find_prethick(&g, &set, a.k, &pool, &radii, &w, one_side(a.side)?) {
                Some((f, _)) => Verdict::holds(Some(Witness::Set(f)), "a union of translates is thick on the window"),
                None => Verdict::fails(None, format!("no union of at most {} translates is thick", a.k)),
            }
        }
        Property::Small => {
            let radii = standard_radii(&g, a.test_radius)?;
            check_small(&g, &set, &radii, a.k, None, &w, one_side(a.side)?)
        }
        Property::Thin | Property::NThin => {
            let family = match f {
                Some(f) => vec![f],
                None => standard_radii(&g, a.test_radius)?,
            };
            let n = if a.prop == Property::Thin { 1 } else { a.n };
            check_n_thin(&g, &set, &family, n, &w, &default_head(&g, &w))
        }
        Property::Sparse => {
            let sample = match f {
                Some(f) => f,
                None => g.radius_set(a.test_radius)?,
            };
            let t = threshold(a, &w);
            check_sparse(&g, &set, &sample, a.depth, t, &w)
        }
        Property::Scattered => check_scattered(&g, &set, a.depth, &w, DEFAULT_NODE_BUDGET)?,
        Property::Derivation => {
            let ideal = a.threshold.map_or(IdealSpec::FiniteSets, IdealSpec::WindowThreshold);
            let d = combinatorial_derivation(&g, &set, ideal, &w);
            extra = json!({"threshold": ideal.threshold(&w), "derivation": g.format_set(&d)});
            Verdict::holds(Some(Witness::Set(d.clone())), format!("{} window points", d.len()))
        }
    };
    let json = json!({
        "schema_version": SCHEMA_VERSION,
        "seed": a.run.seed,
        "command": "classify",
        "group": descriptor_json(&g),
        "set": a.set,
        "property": a.prop.name(),
        "window": {"size": w.len(), "core": w.core_len(), "radius": w.radius(), "margin": w.margin()},
        "parameters": {
            "F": f_text,
            "k": a.k,
            "n": a.n,
            "test_radius": a.test_radius,
            "depth": a.depth,
            "side": format!("{:?}", a.side).to_lowercase(),
        },
        "extra": extra,
        "verdict": verdict.to_json(&g),
    });
    Ok(Report { json, exit: exit_code(verdict.status) })
}

fn threshold(a: &ClassifyArgs, w: &Window) -> usize {
    a.threshold.unwrap_or_else(|| IdealSpec::FiniteSets.threshold(w))
}

/// `e` followed by the distinct elements of the radii.
fn pool_of(g: &Group, radii: &[Vec<Element>]) -> Vec<Element> {
    let mut seen = std::collections::HashSet::new();
    std::iter::once(g.identity()).chain(radii.iter().flatten().cloned()).filter(|x| seen.insert(x.clone())).collect()
}

fn exit_code(s: Status) -> u8 {
    s.exit_code() as u8
}
