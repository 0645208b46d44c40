//! Grading windows of the `Γ̂_n` sutures, the `q` essential gradings, and the
//! dimension model of large surgeries split over `Z_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::GradedDims;

/// Nonvanishing range `[i_min, i_max]` for suture parameter `y` and genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingWindow {
    pub y: i64,
    pub g: i64,
    /// `0` for the surface itself (`y` odd), `-1` for its negative stabilization.
    pub tau: i64,
    pub i_max: i64,
    pub i_min: i64,
}

impl GradingWindow {
    pub fn width(&self) -> i64 {
        self.i_max - self.i_min + 1
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.i_min..=self.i_max).contains(&i)
    }
}

fn ceil_half(n: i64) -> i64 {
    n.div_euclid(2) + n.rem_euclid(2)
}

pub fn window(y: i64, g: i64) -> Result<GradingWindow> {
    if y < 0 || g < 0 {
        return Err(Error::Domain(format!("window needs y, g >= 0, got y = {y}, g = {g}")));
    }
    Ok(GradingWindow {
        y,
        g,
        tau: if y % 2 == 1 { 0 } else { -1 },
        i_max: ceil_half(y - 1) + g,
        i_min: ceil_half(1 - y) - g,
    })
}

/// One summand of the essential block: index `i` sits in grading `î_max - 2g - i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialGrading {
    pub index: i64,
    pub grading: i64,
}

/// The `q` gradings `î_max - 2g - (q-1) ..= î_max - 2g`, listed by index `0..q`.
pub fn decomposition_windows(q: i64, g: i64, w: &GradingWindow) -> Result<Vec<EssentialGrading>> {
    if q < 1 {
        return Err(Error::Domain(format!("q = {q} must be positive")));
    }
    if w.y < q + 2 * g {
        return Err(Error::Domain(format!("need y >= q + 2g = {}, got y = {}", q + 2 * g, w.y)));
    }
    let out: Vec<_> = (0..q).map(|i| EssentialGrading { index: i, grading: w.i_max - 2 * g - i }).collect();
    debug_assert!(out.iter().all(|e| w.i_min + 2 * g <= e.grading && e.grading <= w.i_max - 2 * g));
    Ok(out)
}

/// Pairs `(i, j)` with `i - j = q` inside `[i_min + 2g, i_max - 2g]`; their summands are isomorphic.
pub fn q_cyclic_pairs(q: i64, g: i64, w: &GradingWindow) -> Result<Vec<(i64, i64)>> {
    decomposition_windows(q, g, w)?;
    let (lo, hi) = (w.i_min + 2 * g, w.i_max - 2 * g);
    Ok((lo + q..=hi).map(|i| (i, i - q)).collect())
}

/// A dimension that is either known or a named unknown.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dim {
    Known(u64),
    Unknown(String),
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Known(d) => write!(f, "{d}"),
            Dim::Unknown(s) => f.write_str(s),
        }
    }
}

impl std::str::FromStr for Dim {
    type Err = Error;
    fn from_str(s: &str) -> Result<Dim> {
        let s = s.trim();
        if let Ok(d) = s.parse() {
            return Ok(Dim::Known(d));
        }
        if !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') && !s.starts_with('-') {
            Ok(Dim::Unknown(s.to_string()))
        } else {
            Err(Error::Parse(format!("bad dimension {s:?}")))
        }
    }
}

/// Summands `I♯(Ŷ_n, i)` for `i` in `Z_n` after large `n` surgery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryModel {
    pub n: i64,
    pub g: i64,
    pub d: u64,
    pub summands: Vec<Dim>,
    /// The knot whose surgeries define the splitting; models of different knots are never combined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot: Option<String>,
}

impl SurgeryModel {
    pub fn for_knot(mut self, knot: impl Into<String>) -> SurgeryModel {
        self.knot = Some(knot.into());
        self
    }

    /// Sum of the known summands and the list of unknown ones.
    pub fn total(&self) -> (u64, Vec<String>) {
        let mut known = 0;
        let mut unknown = Vec::new();
        for s in &self.summands {
            match s {
                Dim::Known(d) => known += d,
                Dim::Unknown(u) => unknown.push(u.clone()),
            }
        }
        (known, unknown)
    }

    /// Graded dimensions, when every summand is known.
    pub fn dims(&self) -> Option<GradedDims> {
        let mut out = GradedDims::default();
        for (i, s) in self.summands.iter().enumerate() {
            match s {
                Dim::Known(d) => out.add(i as i64, *d),
                Dim::Unknown(_) => return None,
            }
        }
        Some(out)
    }
}

/// `d` on `[0, n-2g-1] ∪ {n-1}` and `middle` on `[n-2g, n-2]`; for `g = 0` every summand is `d`.
pub fn surgery_model(d: u64, g: i64, middle: &[Dim], n: i64) -> Result<SurgeryModel> {
    if g < 0 || d < 1 {
        return Err(Error::Domain(format!("need d >= 1 and g >= 0, got d = {d}, g = {g}")));
    }
    if n < 2 * g + 1 {
        return Err(Error::Domain(format!("n = {n} is outside the model range n >= 2g + 1 = {}", 2 * g + 1)));
    }
    let expected = (2 * g - 1).max(0) as usize;
    if middle.len() != expected {
        return Err(Error::Domain(format!("genus {g} needs {expected} middle summands, got {}", middle.len())));
    }
    let mut summands = vec![Dim::Known(d); n as usize];
    for (k, m) in middle.iter().enumerate() {
        summands[(n - 2 * g) as usize + k] = m.clone();
    }
    Ok(SurgeryModel { n, g, d, summands, knot: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub ok: bool,
    pub sum: u64,
    pub total: u64,
    pub difference: i64,
}

/// Whether the `Z_q` summands add up to `total`.
pub fn partition_check(summands: &GradedDims, total: u64) -> PartitionReport {
    let sum: u64 = summands.gradings.values().sum();
    PartitionReport { ok: sum == total, sum, total, difference: sum as i64 - total as i64 }
}
