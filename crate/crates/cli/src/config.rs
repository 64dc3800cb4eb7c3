//! Flags shared by every subcommand, and the window they describe.

use std::path::PathBuf;

use clap::Args;
use grpart::partition::WindowSpec;
use grpart::{Element, Error, Group, Result};

/// Default window size: the largest ball with at most this many elements.
pub const AUTO_WINDOW: usize = 20_000;
/// Largest radius the automatic window will consider.
pub const AUTO_RADIUS: u32 = 10_000;
/// Default number of enumerated elements for groups without finite generators.
pub const DEFAULT_SIZE: usize = 1024;

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Group descriptor JSON; the integers when omitted.
    #[arg(long)]
    pub group: Option<PathBuf>,
    /// Window radius (ball windows).
    #[arg(long)]
    pub radius: Option<u32>,
    /// Window margin; the core is the ball of radius `radius - margin`.
    #[arg(long)]
    pub margin: Option<u32>,
    /// Window size for groups enumerated without a finite generating set.
    #[arg(long)]
    pub size: Option<usize>,
    /// Core size for enumerated windows; half the window when omitted.
    #[arg(long)]
    pub core: Option<usize>,
    /// Largest number of elements any enumeration may produce.
    #[arg(long)]
    pub element_cap: Option<usize>,
    /// Recorded in the output; every search is deterministic given it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    pub fn load_group(&self) -> Result<Group> {
        let g = match &self.group {
            Some(path) => Group::load(path)?,
            None => Group::integers(),
        };
        match self.element_cap {
            Some(0) => Err(Error::Config("element cap must be positive".into())),
            Some(cap) => Ok(g.with_budget(cap)),
            None => Ok(g),
        }
    }

    /// The window for `g`: a ball when the generating set is finite, the
    /// whole group when it is finite and no radius is given, and the first
    /// `size` enumerated elements otherwise. `margin` is used when no
    /// margin flag is given.
    pub fn window(&self, g: &Group, margin: impl Fn(u32) -> u32) -> Result<WindowSpec> {
        if g.is_finite() && self.radius.is_none() {
            return Ok(WindowSpec::Whole);
        }
        if g.has_finite_generators() {
            let radius = match self.radius {
                Some(0) => return Err(Error::Config("radius must be positive".into())),
                Some(r) => r,
                None => auto_radius(g),
            };
            let margin = self.margin.unwrap_or_else(|| margin(radius));
            if margin >= radius {
                return Err(Error::Config(format!("margin {margin} must be smaller than the radius {radius}")));
            }
            return Ok(WindowSpec::Ball { radius, margin });
        }
        if g.nth_element(0).is_none() {
            return Err(Error::Descriptor("this group has neither finite generators nor an enumeration".into()));
        }
        let n = self.size.unwrap_or(DEFAULT_SIZE);
        let core = self.core.unwrap_or(n / 2);
        if n == 0 || core == 0 || core > n {
            return Err(Error::Config(format!("need 0 < core <= size, got core {core} and size {n}")));
        }
        Ok(WindowSpec::FirstN { n, core })
    }
}

pub fn descriptor_json(g: &Group) -> serde_json::Value {
    serde_json::to_value(g.descriptor()).expect("descriptor serializes")
}

/// Largest radius whose ball has at most [`AUTO_WINDOW`] elements.
fn auto_radius(g: &Group) -> u32 {
    let probe = g.clone().with_budget(AUTO_WINDOW);
    let fits = |r: u32| probe.enumerate_ball(r).is_ok_and(|b| b.len() <= AUTO_WINDOW);
    let (mut lo, mut hi) = (1u32, AUTO_RADIUS);
    if fits(hi) {
        return hi;
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Splits a comma separated list, ignoring commas inside `(...)` and `<...>`.
pub fn split_list(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '<' => depth += 1,
            ')' | '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = text[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

pub fn parse_elements(g: &Group, text: &str) -> Result<Vec<Element>> {
    split_list(text).into_iter().map(|t| g.parse_element(t)).collect()
}

/// The standard radii of sizes `1..=t`.
pub fn standard_radii(g: &Group, t: u32) -> Result<Vec<Vec<Element>>> {
    (1..=t).map(|r| g.radius_set(r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_respects_tuples() {
        assert_eq!(split_list("(1,0),(0,1)"), vec!["(1,0)", "(0,1)"]);
        assert_eq!(split_list("<0|1>, e"), vec!["<0|1>", "e"]);
        assert!(split_list("").is_empty());
    }

    #[test]
    fn auto_radius_on_z() {
        // |ball(r)| = 2r + 1 in Z
        assert_eq!(auto_radius(&Group::integers()), 9_999);
    }
}
