//! Recursive bypass splitting of (1,1)-sutured handlebodies and the
//! certificate trees bounding their sutured instanton homology by `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::Curve;
use crate::diagram::{build, Foot, OneOneParams, Side, StrandModel, SutureTriple};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseKind {
    Parallel,
    Opposite,
}

/// An oriented strand of `β`, by its position along the traversal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandRef {
    pub index: usize,
    pub from: Foot,
    pub to: Foot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArcType {
    AntiWave,
    Wave,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SutureStrand {
    /// `δ₁` on `γ₁`.
    Delta1,
    /// The strand of `γ₃` parallel to `γ₁` next to the site.
    Gamma3,
    /// `δ₂` on `γ₁`.
    Delta2,
}

/// The bypass arc, listed by the three suture strands it crosses in order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BypassArc {
    pub kind: ArcType,
    pub crosses: [SutureStrand; 3],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BypassSite {
    pub delta1: StrandRef,
    pub delta2: StrandRef,
    pub case_kind: CaseKind,
    pub arc: BypassArc,
}

fn strand_at(cycle: &[crate::diagram::Arc], foot: Foot) -> Result<StrandRef> {
    cycle
        .iter()
        .position(|a| a.from == foot || a.to == foot)
        .map(|index| StrandRef { index, from: cycle[index].from, to: cycle[index].to })
        .ok_or_else(|| Error::Invariant(format!("no strand ends at {foot}")))
}

/// Finds `δ₁` (innermost z-rainbow, or the stripe nearest `z`) and its left neighbour `δ₂`.
///
/// Returns `None` for `p = 1`, the product base case.
pub fn locate_site(model: &StrandModel) -> Result<Option<BypassSite>> {
    let OneOneParams { p, q, .. } = model.params;
    let cycle = model.cycle()?;
    if p == 1 {
        return Ok(None);
    }
    let (delta1, delta2, parallel) = if q >= 1 {
        let d1 = strand_at(cycle, Foot::l(q))?;
        let d2 = if q >= 2 {
            strand_at(cycle, Foot::l(q - 1))?
        } else if p > 2 {
            strand_at(cycle, Foot::l(3))?
        } else {
            let index = cycle
                .iter()
                .position(|a| a.from.side == Side::R && a.to.side == Side::R)
                .ok_or_else(|| Error::Invariant(format!("{}: no w-rainbow", model.params)))?;
            StrandRef { index, from: cycle[index].from, to: cycle[index].to }
        };
        let parallel = if q >= 2 || p == 2 { d2.to.pos > d2.from.pos } else { d2.to.side == Side::L };
        (d1, d2, parallel)
    } else {
        (strand_at(cycle, Foot::l(p))?, strand_at(cycle, Foot::l(p - 1))?, true)
    };
    let (case_kind, kind, crosses) = if parallel {
        (CaseKind::Parallel, ArcType::AntiWave, [SutureStrand::Delta1, SutureStrand::Gamma3, SutureStrand::Delta2])
    } else {
        (CaseKind::Opposite, ArcType::Wave, [SutureStrand::Delta1, SutureStrand::Delta2, SutureStrand::Gamma3])
    };
    Ok(Some(BypassSite { delta1, delta2, case_kind, arc: BypassArc { kind, crosses } }))
}

/// Cuts `γ₁` at the two strands and reglues crosswise.
///
/// Each piece keeps the run of arcs strictly between the cut strands and
/// closes up with the first half of one cut strand joined to the second half
/// of the other. In the opposite case `z` is pushed across the `δ₁` foot of
/// the joining arc.
pub fn cut(parent: &Curve, i1: usize, i2: usize, opposite: bool) -> Result<[Curve; 2]> {
    let n = parent.arcs.len();
    let piece = |ia: usize, ib: usize| -> Result<Curve> {
        let mut arcs = Vec::new();
        let mut j = (ia + 1) % n;
        while j != ib {
            arcs.push(parent.arcs[j]);
            j = (j + 1) % n;
        }
        let join = (parent.arcs[ib].0, parent.arcs[ia].1);
        arcs.push(join);
        let points = arcs.iter().flat_map(|(a, b)| [a.pos, b.pos]).map(|k| (k, parent.points[&k])).collect();
        let mut child = Curve { points, arcs, z2: parent.z2, w2: parent.w2 };
        if opposite {
            let f = if ia == i1 { join.1 } else { join.0 };
            if f.side != Side::L {
                return Err(Error::Invariant(format!("δ₁ foot {f} is not on the z side")));
            }
            let h = 2 * parent.height(f);
            child.z2 = if parent.z2 < h { h + 1 } else { h - 1 };
        }
        Ok(child)
    };
    Ok([piece(i1, i2)?, piece(i2, i1)?])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitOutcome {
    pub children: [OneOneParams; 2],
    /// Points removed by bigon reduction in each child.
    pub reduced: [usize; 2],
    /// Curves in the parent's coordinates, before reduction.
    pub curves: [Curve; 2],
}

pub fn split(model: &StrandModel, site: &BypassSite) -> Result<SplitOutcome> {
    let parent = Curve::from_model(model)?;
    let opposite = site.case_kind == CaseKind::Opposite;
    let curves = cut(&parent, site.delta1.index, site.delta2.index, opposite)?;
    let mut reduced = [0; 2];
    let mut children = [model.params; 2];
    for (i, c) in curves.iter().enumerate() {
        let mut c = c.clone();
        reduced[i] = c.reduce()?;
        children[i] = c.extract()?;
    }
    if children[0].p + children[1].p != model.params.p {
        return Err(Error::Invariant(format!(
            "{}: children {} and {} break p-additivity",
            model.params, children[0], children[1]
        )));
    }
    Ok(SplitOutcome { children, reduced, curves })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    BaseCaseProduct,
    AntiWaveSplit,
    WaveSplit,
}

/// `2^(n-g)`, or zero when `n < g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPowerBound {
    pub n: i64,
    pub g: i64,
}

impl TwoPowerBound {
    /// The bound, or `None` when it exceeds `u128`.
    pub fn value(&self) -> Option<u128> {
        match self.n - self.g {
            e if e < 0 => Some(0),
            e if e < 128 => Some(1u128 << e),
            _ => None,
        }
    }
}

impl fmt::Display for TwoPowerBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "2^{}", self.n - self.g),
        }
    }
}

pub fn two_power_bound(triple: &SutureTriple) -> TwoPowerBound {
    let total = triple.alpha_total();
    debug_assert!(total % 2 == 0);
    TwoPowerBound { n: total / 2, g: triple.genus }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateTree {
    #[serde(with = "params_text")]
    pub params: OneOneParams,
    pub rule: Rule,
    pub case_kind: Option<CaseKind>,
    pub triple: SutureTriple,
    pub two_power: TwoPowerBound,
    pub children: Vec<CertificateTree>,
    pub leaf_count: i64,
    pub bound: i64,
}

impl CertificateTree {
    pub fn nodes(&self) -> Vec<&CertificateTree> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Leaves have `p = 1`, internal nodes split `p` additively, counts add up.
    pub fn check(&self) -> bool {
        self.nodes().iter().all(|n| match n.children.as_slice() {
            [] => n.params.p == 1 && n.leaf_count == 1,
            [a, b] => n.params.p == a.params.p + b.params.p && n.leaf_count == a.leaf_count + b.leaf_count,
            _ => false,
        }) && self.bound == self.leaf_count
    }

    /// The smaller of the tree bound and the counting bound.
    pub fn best_bound(&self) -> u128 {
        let tree = self.bound as u128;
        self.two_power.value().map_or(tree, |v| v.min(tree))
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

mod params_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::diagram::OneOneParams;

    pub fn serialize<S: Serializer>(p: &OneOneParams, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(p)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<OneOneParams, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Certificate tree for `dim SHI(-H,-γ) <= p`.
pub fn certify(params: OneOneParams) -> Result<CertificateTree> {
    let model = build(params);
    if !model.is_connected() {
        return Err(Error::Domain(format!("{params}: β has {} components", model.component_count())));
    }
    let triple = model.suture_triple();
    let two_power = two_power_bound(&triple);
    let Some(site) = locate_site(&model)? else {
        return Ok(CertificateTree {
            params,
            rule: Rule::BaseCaseProduct,
            case_kind: None,
            triple,
            two_power,
            children: Vec::new(),
            leaf_count: 1,
            bound: 1,
        });
    };
    let outcome = split(&model, &site)?;
    let [a, b] = outcome.children;
    let (left, right) = rayon::join(|| certify(a), || certify(b));
    let children = vec![left?, right?];
    let leaf_count = children.iter().map(|c| c.leaf_count).sum();
    let rule = match site.case_kind {
        CaseKind::Parallel => Rule::AntiWaveSplit,
        CaseKind::Opposite => Rule::WaveSplit,
    };
    Ok(CertificateTree {
        params,
        rule,
        case_kind: Some(site.case_kind),
        triple,
        two_power,
        children,
        leaf_count,
        bound: leaf_count,
    })
}

/// Homology shadow of the two descriptions of an anti-wave split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCheck {
    /// Classes `(α, seam, z–w)` of `γ₁`, `γ₁′`, `γ₁″` in `H_1(T² ∖ {z,w})`.
    pub gamma: [i64; 3],
    pub gamma_prime: [i64; 3],
    pub gamma_second: [i64; 3],
    /// `[γ₁] = [γ₁′] + [γ₁″]`.
    pub additive: bool,
    /// Twisting `γ₁` along one piece gives the class of the other, in `H_1(T²)`.
    pub twist_agrees: bool,
}

/// Compares the cut-and-paste children with the Dehn-twist description.
pub fn twist_check(params: OneOneParams) -> Result<Option<TwistCheck>> {
    let model = build(params);
    let Some(site) = locate_site(&model)? else {
        return Ok(None);
    };
    if site.case_kind != CaseKind::Parallel {
        return Ok(None);
    }
    let parent = Curve::from_model(&model)?;
    let [c1, c2] = cut(&parent, site.delta1.index, site.delta2.index, false)?;
    let class = |c: &Curve| {
        let (a, b) = c.homology(params.s);
        [a, b, c.zw_crossings()]
    };
    let (g, g1, g2) = (class(&parent), class(&c1), class(&c2));
    let additive = (0..3).all(|i| g[i] == g1[i] + g2[i]);
    let det = |u: [i64; 3], v: [i64; 3]| u[0] * v[1] - u[1] * v[0];
    let twist = |by: [i64; 3], target: [i64; 3]| {
        let k = det(g, by);
        [1, -1].iter().any(|e| (0..2).all(|i| g[i] + e * k * by[i] == target[i]))
    };
    let twist_agrees = twist(g2, g1) && twist(g1, g2);
    Ok(Some(TwistCheck { gamma: g, gamma_prime: g1, gamma_second: g2, additive, twist_agrees }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: i64, q: i64, r: i64, s: i64) -> OneOneParams {
        OneOneParams::new(p, q, r, s).unwrap()
    }

    #[test]
    fn worked_sites() {
        let site = locate_site(&build(w(6, 2, 1, 3))).unwrap().unwrap();
        assert_eq!(site.case_kind, CaseKind::Parallel);
        assert_eq!((site.delta2.from, site.delta2.to), (Foot::l(1), Foot::l(4)));
        let site = locate_site(&build(w(10, 3, 1, 5))).unwrap().unwrap();
        assert_eq!(site.case_kind, CaseKind::Opposite);
        assert_eq!((site.delta2.from, site.delta2.to), (Foot::l(5), Foot::l(2)));
        assert!(locate_site(&build(w(1, 0, 0, 0))).unwrap().is_none());
    }

    #[test]
    fn worked_splits() {
        let m = build(w(10, 3, 1, 5));
        let out = split(&m, &locate_site(&m).unwrap().unwrap()).unwrap();
        assert_eq!(out.children, [w(4, 1, 2, 0), w(6, 2, 1, 3)]);
        let m = build(w(6, 2, 1, 3));
        let out = split(&m, &locate_site(&m).unwrap().unwrap()).unwrap();
        assert_eq!(out.children, [w(3, 1, 1, 1), w(3, 1, 1, 1)]);
    }

    #[test]
    fn base_case() {
        let t = certify(w(1, 0, 0, 0)).unwrap();
        assert_eq!(t.rule, Rule::BaseCaseProduct);
        assert_eq!(t.bound, 1);
        assert_eq!(t.two_power.value(), Some(1));
    }

    #[test]
    fn two_power_edges() {
        let triple = |a1: i64, a2: i64| SutureTriple {
            gamma1_alpha1: a1,
            gamma1_alpha2: a2,
            gamma2_alpha1: 0,
            gamma2_alpha2: 0,
            gamma3_alpha1: 0,
            gamma3_alpha2: 0,
            a0_alpha1: 0,
            a0_alpha2: 0,
            genus: 2,
        };
        assert_eq!(two_power_bound(&triple(2, 2)).value(), Some(1));
        assert_eq!(two_power_bound(&triple(1, 1)).value(), Some(0));
        assert_eq!(two_power_bound(&triple(300, 0)).value(), None);
    }
}
