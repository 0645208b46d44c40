//! Doubly-pointed genus-one diagrams `W(p,q,r,s)` and their strand model.
//!
//! Numbering: the fundamental square has two vertical edges `L` and `R`, both
//! copies of `α`, with endpoint heights `1..=p` counted from the top. Strands:
//!
//! * z-rainbows `L(i) – L(2q+1-i)` for `i = 1..q`, nested around `z` at height `q + ½`;
//! * middle stripes `L(2q+j) – R(j)` for `j = 1..r`;
//! * lower stripes `L(2q+r+j) – R(2q+r+j)`;
//! * w-rainbows `R(r+i) – R(r+2q+1-i)`, nested around `w` at height `r + q + ½`.
//!
//! The gluing identifies `R(j)` with `L(j+s mod p)`, so the `α`-point with
//! `L`-height `k` has `R`-height `(k-s-1 mod p) + 1`. With no rainbows `z`
//! sits below every foot, at height `p + ½`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `p` accepted, so that every diagram fits comfortably in memory.
pub const MAX_P: i64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OneOneParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl OneOneParams {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        if !(1..=MAX_P).contains(&p) {
            return Err(Error::Params(format!("p = {p} must lie in [1, {MAX_P}]")));
        }
        if q < 0 || r < 0 {
            return Err(Error::Params(format!("q = {q} and r = {r} must be non-negative")));
        }
        if q > p || r > p || 2 * q + r > p {
            return Err(Error::Params(format!("2q + r = {} exceeds p = {p}", 2 * q as i128 + r as i128)));
        }
        Ok(OneOneParams { p, q, r, s: s.rem_euclid(p) })
    }

    /// Simple knot `K(p,q,k) = W(p,0,k,q)`.
    pub fn simple(p: i64, q: i64, k: i64) -> Result<Self> {
        Self::new(p, 0, k, q)
    }

    pub fn mirror(self) -> Self {
        let m = Self::new(self.p, self.q, self.p - 2 * self.q - self.r, self.p - self.s + 2 * self.q)
            .expect("mirror preserves the parameter constraints");
        debug_assert!(2 * m.q + m.r <= m.p && (0..m.p).contains(&m.s));
        m
    }

    /// All valid parameter tuples with `p <= pmax`, in lexicographic order.
    pub fn all(pmax: i64) -> impl Iterator<Item = OneOneParams> {
        (1..=pmax).flat_map(|p| {
            (0..=p / 2)
                .flat_map(move |q| (0..=p - 2 * q).flat_map(move |r| (0..p).map(move |s| OneOneParams { p, q, r, s })))
        })
    }
}

impl fmt::Display for OneOneParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{},{},{})", self.p, self.q, self.r, self.s)
    }
}

impl std::str::FromStr for OneOneParams {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::params(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Foot {
    pub side: Side,
    pub pos: i64,
}

impl Foot {
    pub fn l(pos: i64) -> Foot {
        Foot { side: Side::L, pos }
    }
    pub fn r(pos: i64) -> Foot {
        Foot { side: Side::R, pos }
    }
}

impl fmt::Display for Foot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.side, self.pos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrandKind {
    ZRainbow,
    WRainbow,
    Middle,
    Lower,
}

/// A strand oriented from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub from: Foot,
    pub to: Foot,
    pub kind: StrandKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandModel {
    pub params: OneOneParams,
    /// Unoriented strands in construction order.
    pub strands: Vec<Arc>,
    /// Oriented cycles; the first one starts at the innermost z-rainbow
    /// (or at `L(1)` when there are no rainbows).
    pub components: Vec<Vec<Arc>>,
}

/// Signed homology class of `β`: `a` against `α`, `b` against the seam.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClass {
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SutureTriple {
    pub gamma1_alpha1: i64,
    pub gamma1_alpha2: i64,
    pub gamma2_alpha1: i64,
    pub gamma2_alpha2: i64,
    pub gamma3_alpha1: i64,
    pub gamma3_alpha2: i64,
    pub a0_alpha1: i64,
    pub a0_alpha2: i64,
    pub genus: i64,
}

impl SutureTriple {
    /// Sum over `α_i` of `|α_i ∩ γ|`.
    pub fn alpha_total(&self) -> i64 {
        self.gamma1_alpha1
            + self.gamma1_alpha2
            + self.gamma2_alpha1
            + self.gamma2_alpha2
            + self.gamma3_alpha1
            + self.gamma3_alpha2
    }
}

pub fn strands(w: OneOneParams) -> Vec<Arc> {
    let OneOneParams { p, q, r, .. } = w;
    let mut out = Vec::with_capacity(p as usize);
    let arc = |from, to, kind| Arc { from, to, kind };
    for i in 1..=q {
        out.push(arc(Foot::l(i), Foot::l(2 * q + 1 - i), StrandKind::ZRainbow));
    }
    for j in 1..=r {
        out.push(arc(Foot::l(2 * q + j), Foot::r(j), StrandKind::Middle));
    }
    for j in 1..=p - 2 * q - r {
        out.push(arc(Foot::l(2 * q + r + j), Foot::r(r + 2 * q + j), StrandKind::Lower));
    }
    for i in 1..=q {
        out.push(arc(Foot::r(r + i), Foot::r(r + 2 * q + 1 - i), StrandKind::WRainbow));
    }
    out
}

impl StrandModel {
    pub fn p(&self) -> i64 {
        self.params.p
    }

    /// The foot on the other side of `α` at the same point.
    pub fn glue(&self, f: Foot) -> Foot {
        let OneOneParams { p, s, .. } = self.params;
        match f.side {
            Side::L => Foot::r((f.pos - s - 1).rem_euclid(p) + 1),
            Side::R => Foot::l((f.pos + s - 1).rem_euclid(p) + 1),
        }
    }

    /// `α`-point index (its `L`-height) of a foot.
    pub fn point(&self, f: Foot) -> i64 {
        match f.side {
            Side::L => f.pos,
            Side::R => self.glue(f).pos,
        }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Oriented traversal of the single component.
    pub fn cycle(&self) -> Result<&[Arc]> {
        match self.components.as_slice() {
            [c] => Ok(c),
            cs => Err(Error::Domain(format!("{}: β has {} components", self.params, cs.len()))),
        }
    }

    pub fn homology_class(&self) -> Result<HomologyClass> {
        let s = self.params.s;
        let mut h = HomologyClass { a: 0, b: 0 };
        for arc in self.cycle()? {
            h.a += crossing_sign(arc);
            if arc.from.side == Side::L && arc.from.pos <= s {
                h.b -= 1;
            }
            if arc.to.side == Side::L && arc.to.pos <= s {
                h.b += 1;
            }
        }
        Ok(h)
    }

    /// Single component with a nontrivial class in `H_1(T²)`.
    pub fn is_knot(&self) -> bool {
        matches!(self.homology_class(), Ok(h) if h != HomologyClass { a: 0, b: 0 })
    }

    /// `|α·β|`, the order of `H_1` of the ambient lens space (0 when infinite).
    pub fn lens_order(&self) -> Result<i64> {
        Ok(self.homology_class()?.a.abs())
    }

    /// Counts of `α_1, α_2` against the three sutures.
    pub fn suture_triple(&self) -> SutureTriple {
        let count = |k: StrandKind| self.strands.iter().filter(|a| a.kind == k).count() as i64;
        let crossings: i64 = self.components.iter().map(|c| c.len() as i64).sum();
        let rainbows = count(StrandKind::ZRainbow) + count(StrandKind::WRainbow);
        // the z–w arc leaves the z-nest and either passes above the w-nest,
        // crossing the middle stripes, or below it, crossing the lower ones
        let gamma1_alpha2 = rainbows + count(StrandKind::Middle).min(count(StrandKind::Lower));
        let (a0_alpha1, a0_alpha2) = (0, 0);
        let (gamma2_alpha1, gamma2_alpha2) = (0, 1);
        SutureTriple {
            gamma1_alpha1: crossings,
            gamma1_alpha2,
            gamma2_alpha1,
            gamma2_alpha2,
            gamma3_alpha1: crossings + gamma2_alpha1 + 2 * a0_alpha1,
            gamma3_alpha2: gamma1_alpha2 + gamma2_alpha2 + 2 * a0_alpha2,
            a0_alpha1,
            a0_alpha2,
            genus: 2,
        }
    }

    /// Stable JSON encoding (fields in declaration order).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    /// Decodes a model and checks it against a fresh build of its parameters.
    pub fn from_json(s: &str) -> Result<StrandModel> {
        let model: StrandModel = serde_json::from_str(s).map_err(|e| Error::Parse(format!("model: {e}")))?;
        let OneOneParams { p, q, r, s } = model.params;
        if OneOneParams::new(p, q, r, s)? != model.params || model.strands.len() as i64 != p {
            return Err(Error::Invariant(format!("model does not match {}", model.params)));
        }
        model.validate()?;
        Ok(model)
    }

    /// Rebuilds from the stored parameters and checks bit-identity.
    pub fn validate(&self) -> Result<()> {
        if build(self.params) == *self {
            Ok(())
        } else {
            Err(Error::Invariant(format!("model does not match {}", self.params)))
        }
    }
}

/// Sign of the `α`-crossing at the end of an arc.
pub fn crossing_sign(arc: &Arc) -> i64 {
    match arc.to.side {
        Side::R => 1,
        Side::L => -1,
    }
}

pub fn build(params: OneOneParams) -> StrandModel {
    let strands = strands(params);
    let p = params.p;
    let mut model = StrandModel { params, strands, components: Vec::new() };
    let idx = |f: Foot| (f.pos - 1 + if f.side == Side::R { p } else { 0 }) as usize;
    let mut partner = vec![(Foot::l(0), StrandKind::Lower); 2 * p as usize];
    for a in &model.strands {
        partner[idx(a.from)] = (a.to, a.kind);
        partner[idx(a.to)] = (a.from, a.kind);
    }
    let mut seen = vec![false; 2 * p as usize];
    let first = Foot::l(params.q.max(1));
    let starts = std::iter::once(first).chain(model.strands.iter().map(|a| a.from));
    let mut components = Vec::new();
    for start in starts {
        if seen[idx(start)] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        loop {
            let (y, kind) = partner[idx(x)];
            seen[idx(x)] = true;
            seen[idx(y)] = true;
            cycle.push(Arc { from: x, to: y, kind });
            x = model.glue(y);
            if x == start {
                break;
            }
        }
        components.push(cycle);
    }
    model.components = components;
    model
}

/// Number of `α`-points met by each component, for bookkeeping checks.
pub fn points_per_component(model: &StrandModel) -> Vec<usize> {
    model.components.iter().map(|c| c.iter().map(|a| model.point(a.to)).collect::<BTreeSet<_>>().len()).collect()
}
