//! Alexander polynomials of torus knots, graded dimension tables, and knot
//! Floer ranks and gradings read off (1,1) diagrams.

use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagram::{build, crossing_sign, Arc, OneOneParams, Side, StrandKind, StrandModel};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Finitely supported map from gradings to dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims {
    pub gradings: BTreeMap<i64, u64>,
    pub total: u64,
}

impl GradedDims {
    pub fn from_counts(counts: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut g = GradedDims::default();
        for (i, d) in counts {
            g.add(i, d);
        }
        g
    }

    pub fn add(&mut self, grading: i64, dim: u64) {
        if dim == 0 {
            return;
        }
        *self.gradings.entry(grading).or_insert(0) += dim;
        self.total += dim;
    }

    pub fn get(&self, grading: i64) -> u64 {
        self.gradings.get(&grading).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.gradings.iter().all(|(&i, &d)| self.get(-i) == d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusKnotParams {
    pub a: i64,
    pub b: i64,
}

impl TorusKnotParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b < 1 {
            return Err(Error::Domain(format!("T({a},{b}): parameters must be positive")));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::Domain(format!("T({a},{b}): parameters are not coprime")));
        }
        Ok(TorusKnotParams { a, b })
    }
}

pub fn torus_genus(k: TorusKnotParams) -> i64 {
    (k.a - 1) * (k.b - 1) / 2
}

/// `t^{-g} (t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`, divided exactly.
pub fn torus_alexander(k: TorusKnotParams) -> Result<LaurentPoly> {
    let m = |e| &LaurentPoly::monomial(e, 1) - &LaurentPoly::one();
    let num = &m(k.a * k.b) * &m(1);
    let den = &m(k.a) * &m(k.b);
    Ok(num.div_exact(&den)?.shift(-torus_genus(k)))
}

pub fn khi_torus_dims(k: TorusKnotParams) -> Result<GradedDims> {
    let d = torus_alexander(k)?;
    Ok(GradedDims::from_counts(d.terms().map(|(e, c)| (e, c.unsigned_abs()))))
}

/// Rank of knot Floer homology: one generator per `α ∩ β` point.
pub fn hfk_rank(params: OneOneParams) -> Result<i64> {
    let model = build(params);
    if !model.is_knot() {
        return Err(Error::Domain(format!("{params} does not describe a knot")));
    }
    let generators: i64 = model.cycle()?.len() as i64;
    debug_assert_eq!(generators, params.p);
    Ok(generators)
}

/// Grading data of each generator, indexed along the oriented traversal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub point: i64,
    pub sign: i64,
    /// Grading class (residue of the dual-curve count); gradings compare only within a class.
    pub class: i64,
    pub grading: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderTable {
    pub params: OneOneParams,
    pub generators: Vec<Generator>,
    /// `true` unless the ambient manifold is `S³` and gradings are absolute.
    pub relative: bool,
    /// Dimensions per grading, one table per class.
    pub classes: BTreeMap<i64, GradedDims>,
    /// Signed graded Euler characteristic, normalized to value `+1` at `t = 1` (S³ only).
    pub euler: Option<LaurentPoly>,
}

impl AlexanderTable {
    /// The single absolute table in the `S³` case.
    pub fn absolute(&self) -> Option<&GradedDims> {
        if self.relative {
            None
        } else {
            self.classes.values().next()
        }
    }
}

fn t_sign(arc: &Arc) -> i64 {
    match arc.kind {
        StrandKind::ZRainbow | StrandKind::WRainbow => {
            if arc.to.pos > arc.from.pos {
                -1
            } else {
                1
            }
        }
        StrandKind::Middle => {
            if arc.from.side == Side::L {
                1
            } else {
                -1
            }
        }
        StrandKind::Lower => 0,
    }
}

fn dual_sign(arc: &Arc) -> i64 {
    let mut a = 0;
    if arc.from.side == Side::L {
        a -= 1;
    }
    if arc.to.side == Side::L {
        a += 1;
    }
    a
}

/// Alexander gradings from basepoint-crossing counts along `β`.
///
/// Walking `β` from the innermost z-rainbow, each arc adds its crossings
/// with the `z–w` arc (`t`) and with a parallel copy of `α` (`d`). Two
/// generators differ in grading by the `t`-count of a connecting path that
/// closes up in the complement of the other curve; such a path is a partial
/// walk plus `l` full turns, where `l` cancels the accumulated `d`-count.
pub fn alexander_gradings(model: &StrandModel) -> Result<AlexanderTable> {
    let cycle = model.cycle()?;
    let lens = model.lens_order()?;
    let tb: i64 = cycle.iter().map(t_sign).sum();
    let db: i64 = cycle.iter().map(dual_sign).sum();
    let (mut ct, mut cd) = (0, 0);
    let mut generators = Vec::with_capacity(cycle.len());
    for arc in cycle {
        ct += t_sign(arc);
        cd += dual_sign(arc);
        let (class, grading) = if db == 0 {
            (cd, ct)
        } else {
            let class = cd.rem_euclid(db.abs());
            (class, ct - (cd - class) / db * tb)
        };
        generators.push(Generator { point: model.point(arc.to), sign: crossing_sign(arc), class, grading });
    }
    let relative = lens != 1;
    if !relative {
        let (lo, hi) =
            generators.iter().fold((i64::MAX, i64::MIN), |(lo, hi), g| (lo.min(g.grading), hi.max(g.grading)));
        if (lo + hi) % 2 != 0 {
            return Err(Error::Invariant(format!("{}: gradings are not symmetric", model.params)));
        }
        for g in &mut generators {
            g.grading -= (lo + hi) / 2;
        }
    }
    let mut classes: BTreeMap<i64, GradedDims> = BTreeMap::new();
    for g in &generators {
        classes.entry(g.class).or_default().add(g.grading, 1);
    }
    let euler = (!relative).then(|| {
        let chi = LaurentPoly::from_terms(generators.iter().map(|g| (g.grading, g.sign)));
        if chi.eval_one() < 0 {
            -&chi
        } else {
            chi
        }
    });
    Ok(AlexanderTable { params: model.params, generators, relative, classes, euler })
}

/// All `S³` knot diagrams with `p <= pmax` whose Euler characteristic is `±target`.
pub fn find_realization(target: &LaurentPoly, pmax: i64) -> Result<Vec<OneOneParams>> {
    if !target.is_symmetric() || target.eval_one().abs() != 1 {
        return Err(Error::Domain(format!("{target} is not symmetric with value ±1 at t = 1")));
    }
    let neg = -target;
    let candidates: Vec<_> = OneOneParams::all(pmax).collect();
    let mut hits: Vec<_> = candidates
        .par_iter()
        .filter(|w| {
            let m = build(**w);
            m.is_connected() && matches!(m.lens_order(), Ok(1)) && {
                let euler = alexander_gradings(&m).ok().and_then(|t| t.euler);
                euler.is_some_and(|e| e == *target || e == neg)
            }
        })
        .copied()
        .collect();
    hits.sort();
    Ok(hits)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloerSimpleReport {
    pub params: OneOneParams,
    pub hfk_rank: i64,
    pub lens_order: i64,
    pub simple: bool,
}

pub fn floer_simple_check(model: &StrandModel) -> Result<FloerSimpleReport> {
    let lens_order = model.lens_order()?;
    if lens_order == 0 {
        return Err(Error::Domain(format!("{}: ambient manifold has infinite H_1", model.params)));
    }
    let hfk_rank = hfk_rank(model.params)?;
    Ok(FloerSimpleReport { params: model.params, hfk_rank, lens_order, simple: hfk_rank == lens_order })
}
