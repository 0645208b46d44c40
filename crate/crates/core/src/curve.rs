//! Closed curves on the square model with sparse `α`-points, used for
//! cut-and-paste: bigon reduction and recovery of `W(p,q,r,s)`.
//!
//! Heights are kept from the parent diagram, so children of a split live in
//! the same coordinates. Basepoint heights are stored doubled (odd values)
//! so they never coincide with a foot.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::diagram::{build, crossing_sign, Arc, Foot, OneOneParams, Side, StrandKind, StrandModel};
use crate::error::{Error, Result};

/// A curve whose feet carry `α`-point ids in `pos`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    /// Point id to `(L-height, R-height)`.
    pub points: BTreeMap<i64, (i64, i64)>,
    /// Oriented arcs in traversal order; `to` of one arc and `from` of the next share a point.
    pub arcs: Vec<(Foot, Foot)>,
    pub z2: i64,
    pub w2: i64,
}

impl Curve {
    /// The oriented single component of a model; point ids are `L`-heights.
    pub fn from_model(model: &StrandModel) -> Result<Curve> {
        let OneOneParams { p, q, r, .. } = model.params;
        let points = (1..=p).map(|k| (k, (k, model.glue(Foot::l(k)).pos))).collect();
        let id = |f: Foot| Foot { side: f.side, pos: model.point(f) };
        let arcs = model.cycle()?.iter().map(|a| (id(a.from), id(a.to))).collect();
        let z2 = if q > 0 { 2 * q + 1 } else { 2 * p + 1 };
        Ok(Curve { points, arcs, z2, w2: 2 * (r + q) + 1 })
    }

    pub fn p(&self) -> i64 {
        self.points.len() as i64
    }

    pub fn height(&self, f: Foot) -> i64 {
        let (l, r) = self.points[&f.pos];
        match f.side {
            Side::L => l,
            Side::R => r,
        }
    }

    fn base2(&self, side: Side) -> i64 {
        match side {
            Side::L => self.z2,
            Side::R => self.w2,
        }
    }

    /// Removes innermost bigons with `α` until none is left, at most `p²` passes.
    pub fn reduce(&mut self) -> Result<usize> {
        let budget = (self.p() * self.p()).max(1) as usize;
        let mut removed = 0;
        for _ in 0..budget {
            let Some(k) = self.find_bigon() else {
                return Ok(removed);
            };
            let n = self.arcs.len();
            if n < 3 {
                return Err(Error::Invariant(format!("reduction collapses the curve: {self:?}")));
            }
            let (prev, next) = ((k + n - 1) % n, (k + 1) % n);
            let (a, b) = self.arcs[k];
            let merged = (self.arcs[prev].0, self.arcs[next].1);
            self.points.remove(&a.pos);
            self.points.remove(&b.pos);
            let mut arcs = Vec::with_capacity(n - 2);
            for i in 0..n {
                if i == prev {
                    arcs.push(merged);
                } else if i != k && i != next {
                    arcs.push(self.arcs[i]);
                }
            }
            self.arcs = arcs;
            removed += 2;
        }
        match self.find_bigon() {
            None => Ok(removed),
            Some(_) => Err(Error::Invariant(format!("curve not reduced after {budget} passes: {self:?}"))),
        }
    }

    fn find_bigon(&self) -> Option<usize> {
        self.arcs.iter().position(|&(a, b)| {
            if a.side != b.side {
                return false;
            }
            let (lo, hi) = {
                let (x, y) = (self.height(a), self.height(b));
                (x.min(y), x.max(y))
            };
            let base = self.base2(a.side);
            let encloses_base = 2 * lo < base && base < 2 * hi;
            let inner = self.points.keys().any(|&k| {
                let h = self.height(Foot { side: a.side, pos: k });
                lo < h && h < hi
            });
            !encloses_base && !inner
        })
    }

    /// Algebraic intersections with `α` and with the seam of a shift-`s` gluing.
    pub fn homology(&self, s: i64) -> (i64, i64) {
        let mut a = 0;
        let mut b = 0;
        for &(from, to) in &self.arcs {
            a += crossing_sign(&Arc { from, to, kind: StrandKind::Lower });
            if from.side == Side::L && self.height(from) <= s {
                b -= 1;
            }
            if to.side == Side::L && self.height(to) <= s {
                b += 1;
            }
        }
        (a, b)
    }

    /// Signed crossings with the chord from `z` to `w`.
    pub fn zw_crossings(&self) -> i64 {
        let side = |f: Foot| match f.side {
            Side::L => 2 * self.height(f) > self.z2,
            Side::R => 2 * self.height(f) < self.w2,
        };
        self.arcs.iter().map(|&(a, b)| side(b) as i64 - side(a) as i64).sum()
    }

    /// Reads off `W(p,q,r,s)` and checks it by rebuilding.
    pub fn extract(&self) -> Result<OneOneParams> {
        let fail = |m: &str| Error::Invariant(format!("extraction failed ({m}): {self:?}"));
        let p = self.p();
        let n = p as usize;
        let mut lh: Vec<i64> = self.points.keys().copied().collect();
        let mut rh = lh.clone();
        lh.sort_by_key(|&k| self.points[&k].0);
        rh.sort_by_key(|&k| self.points[&k].1);
        let same = |s: Side| self.arcs.iter().filter(move |(a, b)| a.side == s && b.side == s);
        let q = same(Side::L).count();
        if q != same(Side::R).count() {
            return Err(fail("rainbow counts differ"));
        }
        for side in [Side::L, Side::R] {
            for &(a, b) in same(side) {
                let (x, y) = (2 * self.height(a), 2 * self.height(b));
                let base = self.base2(side);
                if !(x.min(y) < base && base < x.max(y)) {
                    return Err(fail("rainbow misses its basepoint"));
                }
            }
        }
        let above = |order: &[i64], side: Side| {
            order.iter().filter(|&&k| 2 * self.height(Foot { side, pos: k }) < self.base2(side)).count()
        };
        let lstart = (above(&lh, Side::L) + n - q) % n;
        let lpos: BTreeMap<i64, i64> = (0..n).map(|i| (lh[(lstart + i) % n], i as i64 + 1)).collect();
        let stripes: BTreeMap<i64, i64> = self
            .arcs
            .iter()
            .filter(|(a, b)| a.side != b.side)
            .map(|&(a, b)| if a.side == Side::L { (a.pos, b.pos) } else { (b.pos, a.pos) })
            .collect();
        let stripe_r: BTreeSet<i64> = stripes.values().copied().collect();
        let m = n - 2 * q;
        let wgap = |hp: i64, hk: i64| {
            let w = self.w2;
            (2 * hp < w && w < 2 * hk) || (hk < hp && (w > 2 * hp || w < 2 * hk))
        };
        let (r, rstart) = if m == 0 {
            (0, (above(&rh, Side::R) + n - q) % n)
        } else {
            let first =
                lpos.iter().find(|(_, &v)| v == 2 * q as i64 + 1).map(|(&k, _)| k).ok_or_else(|| fail("no stripe"))?;
            let foot = *stripes.get(&first).ok_or_else(|| fail("stripe foot"))?;
            let j = rh.iter().position(|&k| k == foot).ok_or_else(|| fail("stripe foot"))?;
            let mut r = 0;
            while r < m {
                let k = rh[(j + r) % n];
                if !stripe_r.contains(&k) {
                    break;
                }
                if r > 0 && wgap(self.points[&rh[(j + r - 1) % n]].1, self.points[&k].1) {
                    break;
                }
                r += 1;
            }
            (r, if r > 0 { j } else { (above(&rh, Side::R) + n - q) % n })
        };
        let rpos: BTreeMap<i64, i64> = (0..n).map(|i| (rh[(rstart + i) % n], i as i64 + 1)).collect();
        let shifts: BTreeSet<i64> = self.points.keys().map(|k| (lpos[k] - rpos[k]).rem_euclid(p)).collect();
        let s = match shifts.iter().collect::<Vec<_>>()[..] {
            [&s] => s,
            _ => return Err(fail("inconsistent shift")),
        };
        let w = OneOneParams::new(p, q as i64, r as i64, s)?;
        let relabel = |f: Foot| match f.side {
            Side::L => Foot::l(lpos[&f.pos]),
            Side::R => Foot::r(rpos[&f.pos]),
        };
        let unordered = |a: Foot, b: Foot| if a <= b { (a, b) } else { (b, a) };
        let mine: BTreeSet<_> = self.arcs.iter().map(|&(a, b)| unordered(relabel(a), relabel(b))).collect();
        let model = build(w);
        let reference: BTreeSet<_> = model.strands.iter().map(|a| unordered(a.from, a.to)).collect();
        if mine != reference || !model.is_connected() {
            return Err(fail("rebuild mismatch"));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_round_trip() {
        for w in OneOneParams::all(7) {
            let m = build(w);
            if !m.is_connected() {
                continue;
            }
            let c = Curve::from_model(&m).unwrap();
            let back = c.extract().unwrap();
            assert_eq!((back.p, back.q), (w.p, w.q));
            // with no middle or no lower stripes the R-numbering can start at
            // either end of the stripe block
            if w.r != 0 && w.r != w.p - 2 * w.q {
                assert_eq!(back, w, "{w}");
            }
        }
    }

    #[test]
    fn bigon_removed() {
        // L(1) -> L(2) with nothing between and z elsewhere is a bigon
        let mut c = Curve {
            points: [(1, (1, 2)), (2, (2, 3)), (3, (3, 1))].into_iter().collect(),
            arcs: vec![(Foot::l(1), Foot::l(2)), (Foot::r(2), Foot::l(3)), (Foot::r(3), Foot::r(1))],
            z2: 7,
            w2: 7,
        };
        assert_eq!(c.reduce().unwrap(), 2);
        assert_eq!(c.p(), 1);
    }
}
