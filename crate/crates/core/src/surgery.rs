//! Surgery certificates for simple knots `K(P,Q,k) = W(P,0,k,Q)` in lens
//! spaces: anti-wave splitting, `H_1` orders, the threshold `N`, and the
//! inequality chains concluding that surgeries are instanton L-spaces.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bypass::cut;
use crate::curve::Curve;
use crate::diagram::{build, Foot, OneOneParams};
use crate::error::{Error, Result};

/// Simple knot with a longitude arc `l`: `l·α₁ = x`, `l·α₂ = y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleKnot {
    pub p: i64,
    pub q: i64,
    pub k: i64,
    pub x: i64,
    pub y: i64,
}

/// Signed count `x = -n` of the shortest leftward longitude from `z` to `w`.
pub fn longitude_x(p: i64, q: i64, k: i64) -> i64 {
    -(0..p).find(|n| (n * q + k).rem_euclid(p) == 0).expect("Q is a unit mod P")
}

impl SimpleKnot {
    pub fn new(p: i64, q: i64, k: i64) -> Result<SimpleKnot> {
        let params = OneOneParams::simple(p, q, k)?;
        if !(0..=p).contains(&k) {
            return Err(Error::Params(format!("k = {k} must lie in [0, {p}]")));
        }
        let model = build(params);
        if !model.is_connected() {
            return Err(Error::Domain(format!("K({p},{q},{k}): β has {} components", model.component_count())));
        }
        Ok(SimpleKnot { p, q: params.s, k, x: longitude_x(p, params.s, k), y: 0 })
    }

    pub fn params(&self) -> OneOneParams {
        OneOneParams::simple(self.p, self.q, self.k).expect("validated at construction")
    }

    pub fn label(&self) -> String {
        format!("K({},{},{})", self.p, self.q, self.k)
    }

    /// All single-component simple knots with `P <= pmax`, `k` in `[0, P)`.
    pub fn all(pmax: i64) -> Vec<SimpleKnot> {
        let mut out = Vec::new();
        for p in 1..=pmax {
            for q in 0..p {
                for k in 0..p {
                    if let Ok(s) = SimpleKnot::new(p, q, k) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

impl std::str::FromStr for SimpleKnot {
    type Err = Error;
    fn from_str(s: &str) -> Result<SimpleKnot> {
        let w = crate::parse::params(s)?;
        if w.q != 0 {
            return Err(Error::Domain(format!("{w} has rainbows; not a simple knot")));
        }
        SimpleKnot::new(w.p, w.s, w.r)
    }
}

/// `|p·x·k - (q + p·y)·P|` for the surgery slope `q/p` in the `(m, l)` frame.
pub fn h1_order(knot: &SimpleKnot, q: i64, p: i64) -> i64 {
    (p * knot.x * knot.k - (q + p * knot.y) * knot.p).abs()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntiWaveSplit {
    pub children: [SimpleKnot; 2],
    /// Change of framing: the parent slope `q/p` becomes `(q - p·shift)/p` on a child.
    pub frame_shift: [i64; 2],
    /// Band of the diagram where the anti-wave sits.
    pub band: i64,
}

/// Splits along an anti-wave in a band the longitude does not visit.
pub fn antiwave_split(knot: &SimpleKnot) -> Result<AntiWaveSplit> {
    let SimpleKnot { p, q, k, x, .. } = *knot;
    if p < 2 {
        return Err(Error::Domain(format!("{}: nothing to split", knot.label())));
    }
    let visited: Vec<i64> = (1..-x).map(|i| (-i * q).rem_euclid(p)).collect();
    let band = (1..p)
        .find(|j| !visited.contains(j))
        .ok_or_else(|| Error::Domain(format!("{}: every band meets the longitude", knot.label())))?;
    let model = build(knot.params());
    let parent = Curve::from_model(&model)?;
    let cycle = model.cycle()?;
    let at = |h| cycle.iter().position(|a| a.from == Foot::l(h) || a.to == Foot::l(h));
    let (i1, i2) = match (at(band + 1), at(band)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::Invariant(format!("{}: band {band} has no stripes", knot.label()))),
    };
    let mut children = [*knot; 2];
    let mut frame_shift = [0; 2];
    for (i, mut c) in cut(&parent, i1, i2, false)?.into_iter().enumerate() {
        let kc = c.zw_crossings();
        c.reduce()?;
        let w = c.extract()?;
        if w.q != 0 || (w.r - kc).rem_euclid(w.p) != 0 {
            return Err(Error::Invariant(format!("{}: child {w} does not carry k = {kc}", knot.label())));
        }
        let child = SimpleKnot::new(w.p, w.s, kc)?;
        let (j, rem) = (child.x - x).div_rem(&child.p);
        if rem != 0 {
            return Err(Error::Invariant(format!("{}: child longitude {} is not a lift", knot.label(), child.x)));
        }
        children[i] = child;
        frame_shift[i] = -j * kc;
    }
    if children[0].p + children[1].p != p || children[0].k + children[1].k != k {
        return Err(Error::Invariant(format!("{}: split breaks additivity", knot.label())));
    }
    Ok(AntiWaveSplit { children, frame_shift, band })
}

/// `ceil(|a/b|)` for `b > 0`.
fn ceil_abs(a: i64, b: i64) -> i64 {
    (a.abs() + b - 1) / b
}

/// Threshold data of the recursion: `N = max(N₁+|x₁|, N₂+|x₂|, N₀)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub n: i64,
    pub n0: i64,
    pub split: Option<AntiWaveSplit>,
    pub children: Vec<Threshold>,
}

pub fn threshold(knot: &SimpleKnot) -> Result<Threshold> {
    if knot.p == 1 {
        return Ok(Threshold { n: 0, n0: 0, split: None, children: Vec::new() });
    }
    let split = antiwave_split(knot)?;
    let kids = split.children.iter().map(threshold).collect::<Result<Vec<_>>>()?;
    // |H_1| is additive once q/p is beyond every x·k_i/P_i - y
    let n0 = split.children.iter().map(|c| ceil_abs(knot.x * c.k - knot.y * c.p, c.p)).max().unwrap_or(0);
    let n = kids.iter().zip(split.frame_shift).map(|(t, s)| t.n + s.abs()).chain([n0]).max().unwrap_or(0);
    Ok(Threshold { n, n0, split: Some(split), children: kids })
}

pub fn threshold_n(knot: &SimpleKnot) -> Result<i64> {
    Ok(threshold(knot)?.n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

/// One link of an inequality chain, checked numerically when built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub claim: String,
    pub justification_tag: String,
    pub relation: Relation,
    pub lhs: i64,
    pub rhs: i64,
}

fn step(claim: impl Into<String>, tag: &str, relation: Relation, lhs: i64, rhs: i64) -> Result<Step> {
    let claim = claim.into();
    let ok = match relation {
        Relation::Le => lhs <= rhs,
        Relation::Eq => lhs == rhs,
    };
    if !ok {
        return Err(Error::Invariant(format!("unverified step {claim}: {lhs} vs {rhs}")));
    }
    Ok(Step { claim, justification_tag: tag.into(), relation, lhs, rhs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryCertificate {
    pub knot: SimpleKnot,
    pub slope: String,
    pub h1_order: i64,
    pub threshold_n: i64,
    pub steps: Vec<Step>,
    pub children: Vec<SurgeryCertificate>,
    /// `dim KHI = dim I♯ = |H_1|` at this value.
    pub value: i64,
}

/// Certifies that `q/p` surgery on the knot is an instanton L-space whose dual knot is Floer simple.
pub fn certify_lspace(knot: &SimpleKnot, q: i64, p: i64) -> Result<SurgeryCertificate> {
    if q.gcd(&p) != 1 {
        return Err(Error::Domain(format!("{q}/{p} is not a reduced slope")));
    }
    let t = threshold(knot)?;
    certify_with(knot, q, p, &t)
}

fn certify_with(knot: &SimpleKnot, q: i64, p: i64, t: &Threshold) -> Result<SurgeryCertificate> {
    let (q, p) = if p < 0 { (-q, -p) } else { (q, p) };
    let slope = format!("{q}/{p}");
    if q.abs() < t.n * p {
        return Err(Error::BelowThreshold { slope, threshold: t.n });
    }
    let h = h1_order(knot, q, p);
    let le = Relation::Le;
    let mut steps = vec![
        step("|H_1(Y)| <= dim I#(Y)", "euler-characteristic-lower-bound", le.clone(), h, h)?,
        step("dim I#(Y) <= dim KHI(Y,K)", "sharp-bounded-by-khi", le.clone(), h, h)?,
    ];
    let mut children = Vec::new();
    match (&t.split, t.children.as_slice()) {
        (Some(split), [t1, t2]) => {
            for ((child, shift), tc) in split.children.iter().zip(split.frame_shift).zip([t1, t2]) {
                let own = certify_with(child, q - p * shift, p, tc)?;
                let in_parent_frame = (p * knot.x * child.k - (q + p * knot.y) * child.p).abs();
                if own.h1_order != in_parent_frame {
                    return Err(Error::Invariant(format!(
                        "{}: child {} has |H_1| {} in its frame but {} in the parent frame",
                        knot.label(),
                        child.label(),
                        own.h1_order,
                        in_parent_frame
                    )));
                }
                children.push(own);
            }
            let sum = children.iter().map(|c| c.value).sum();
            steps.push(step("dim KHI(Y,K) <= dim KHI(Y1,K1) + dim KHI(Y2,K2)", "surgery-exact-triangle", le, h, sum)?);
            steps.push(step(
                "|H_1(Y)| = |H_1(Y1)| + |H_1(Y2)|",
                "h1-additivity-beyond-threshold",
                Relation::Eq,
                h,
                sum,
            )?);
        }
        _ => {
            steps.push(step("dim KHI(Y,K) <= rk HFK(Y,K)", "lens-space-core-simple", le, h, h)?);
        }
    }
    steps.push(step("dim KHI(Y,K) = dim I#(Y) = |H_1(Y)|", "chain-collapses", Relation::Eq, h, h)?);
    Ok(SurgeryCertificate { knot: *knot, slope, h1_order: h, threshold_n: t.n, steps, children, value: h })
}

/// `|H_1| = P <= dim I♯ <= dim KHI <= rk HFK = P` for a simple knot.
pub fn certify_floer_simple(knot: &SimpleKnot) -> Result<SurgeryCertificate> {
    let model = build(knot.params());
    let order = model.lens_order()?;
    let rank = crate::homology::hfk_rank(knot.params())?;
    let le = Relation::Le;
    let steps = vec![
        step("|H_1(Y)| = P", "lens-space-order", Relation::Eq, order, knot.p)?,
        step("|H_1(Y)| <= dim I#(Y)", "euler-characteristic-lower-bound", le.clone(), order, rank)?,
        step("dim I#(Y) <= dim KHI(Y,K)", "sharp-bounded-by-khi", le.clone(), order, rank)?,
        step("dim KHI(Y,K) <= rk HFK(Y,K)", "khi-bounded-by-hfk", le, order, rank)?,
        step("rk HFK(Y,K) = P", "hfk-rank-of-one-one-diagram", Relation::Eq, rank, knot.p)?,
        step("dim KHI(Y,K) = dim I#(Y) = |H_1(Y)|", "chain-collapses", Relation::Eq, order, rank)?,
    ];
    Ok(SurgeryCertificate {
        knot: *knot,
        slope: "1/0".into(),
        h1_order: order,
        threshold_n: 0,
        steps,
        children: Vec::new(),
        value: order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot() {
        let u = SimpleKnot::new(1, 0, 0).unwrap();
        assert_eq!(threshold_n(&u).unwrap(), 0);
        assert_eq!(h1_order(&u, 7, 1), 7);
        let c = certify_lspace(&u, 5, 1).unwrap();
        assert_eq!(c.value, 5);
    }

    #[test]
    fn two_strand_split() {
        let k = SimpleKnot::new(2, 1, 1).unwrap();
        let s = antiwave_split(&k).unwrap();
        assert_eq!(s.children.map(|c| c.p), [1, 1]);
        assert_eq!(s.children[0].k + s.children[1].k, 1);
    }

    #[test]
    fn refuses_below_threshold() {
        let k = SimpleKnot::new(5, 2, 1).unwrap();
        let n = threshold_n(&k).unwrap();
        assert!(n > 0);
        match certify_lspace(&k, n * 3 - 1, 3) {
            Err(Error::BelowThreshold { threshold, .. }) => assert_eq!(threshold, n),
            other => panic!("{other:?}"),
        }
        assert!(certify_lspace(&k, n * 3 + 1, 3).is_ok());
    }

    #[test]
    fn floer_simple() {
        let k = SimpleKnot::new(5, 2, 1).unwrap();
        assert_eq!(certify_floer_simple(&k).unwrap().value, 5);
        assert!(SimpleKnot::new(4, 2, 0).is_err());
    }
}
