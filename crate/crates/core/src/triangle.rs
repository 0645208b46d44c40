//! Dimension bookkeeping for exact triangles.
//!
//! A fact is a three-periodic exact sequence `X0 -> X1 -> X2 -> X0` whose
//! terms are graded profiles. Row `r` of a graded triangle pairs grading
//! `start_k + step_k * r` of each term; gradings outside an object's support
//! are zero. Per row:
//!
//! * a zero map `X_k -> X_{k+1}` splices: `dim X_{k+2} = dim X_k + dim X_{k+1}`;
//! * an isomorphism `X_k -> X_{k+1}` gives `dim X_k = dim X_{k+1}` and `X_{k+2} = 0`;
//! * a zero term makes both maps touching it zero;
//! * each dimension is at most the sum of the other two, and the sum is even.
//!
//! Ungraded triangles (no `rows`) apply the same rules to total dimensions.
//! The linear rules are solved exactly; the inequalities are checked on
//! whatever the equations determine.
//!
//! Facts are read from JSON:
//!
//! ```json
//! {
//!   "objects": [{"name": "A", "min": 0, "max": 2}, {"name": "B", "min": 0, "max": 2},
//!               {"name": "C", "min": 0, "max": 0}],
//!   "known": [{"object": "A", "grading": 1, "value": 2}],
//!   "triangles": [
//!     {"label": "t", "rows": 3,
//!      "slots": [{"object": "A", "start": 2, "step": -1}, {"object": "B", "start": 2, "step": -1},
//!                {"object": "C", "start": 2, "step": -1}],
//!      "maps": [{"map": 0, "rows": [0, 1], "kind": "iso"}]}
//!   ],
//!   "goals": [{"label": "A = B", "lhs": [{"object": "A"}], "rhs": [{"object": "B"}]}]
//! }
//! ```
//!
//! `start` defaults to the object's top grading and `step` to `-1`. A goal
//! term sums the gradings `from..=to` (default: all) times `coeff` (default 1).

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ledger::{window, GradingWindow};

type Q = Ratio<i64>;

/// Largest number of dimension variables a facts file may declare.
pub const MAX_VARIABLES: usize = 4096;
/// Largest number of graded rows per triangle.
pub const MAX_ROWS: usize = 4096;
/// Bound on known values and goal coefficients.
pub const MAX_MAGNITUDE: i64 = 1 << 40;

fn overflow() -> Error {
    Error::Domain("arithmetic overflow in the linear system".into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectSpec {
    pub name: String,
    pub min: i64,
    pub max: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slot {
    pub object: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<i64>,
    #[serde(default = "minus_one")]
    pub step: i64,
}

fn minus_one() -> i64 {
    -1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Zero,
    Iso,
    Unknown,
}

/// Annotation of map `X_map -> X_{map+1}` on rows `rows[0]..=rows[1]` (default: all).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFact {
    pub map: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<[usize; 2]>,
    pub kind: MapKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleFact {
    #[serde(default)]
    pub label: String,
    pub slots: [Slot; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<usize>,
    #[serde(default)]
    pub maps: Vec<MapFact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Known {
    pub object: String,
    #[serde(default)]
    pub grading: i64,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub object: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<i64>,
    #[serde(default = "one")]
    pub coeff: i64,
}

fn one() -> i64 {
    1
}

impl Term {
    pub fn block(object: &str, from: i64, to: i64) -> Term {
        Term { object: object.into(), from: Some(from), to: Some(to), coeff: 1 }
    }

    pub fn whole(object: &str) -> Term {
        Term { object: object.into(), from: None, to: None, coeff: 1 }
    }
}

/// The claim `Σ lhs = Σ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Goal {
    #[serde(default)]
    pub label: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facts {
    pub objects: Vec<ObjectSpec>,
    #[serde(default)]
    pub known: Vec<Known>,
    pub triangles: Vec<TriangleFact>,
    #[serde(default)]
    pub goals: Vec<Goal>,
}

impl Facts {
    pub fn from_json(s: &str) -> Result<Facts> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("facts: {e}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoalStatus {
    Derived,
    Refuted,
    Underdetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalResult {
    pub label: String,
    pub status: GoalStatus,
    /// Common value of both sides, when the facts pin it down.
    pub value: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contradiction {
    pub source: String,
    pub grading: Option<i64>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Value {
    pub object: String,
    pub grading: i64,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub contradiction: Option<Contradiction>,
    pub goals: Vec<GoalResult>,
    pub determined: Vec<Value>,
}

/// Integer affine form `Σ c_v·v + constant`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Form {
    coeffs: BTreeMap<usize, i64>,
    constant: i64,
}

impl Form {
    fn var(v: usize) -> Form {
        Form { coeffs: [(v, 1)].into(), constant: 0 }
    }

    fn constant(c: i64) -> Form {
        Form { coeffs: BTreeMap::new(), constant: c }
    }

    /// `self + scale·other`.
    fn add(&self, other: &Form, scale: i64) -> Result<Form> {
        let term = |c: i64, acc: i64| c.checked_mul(scale).and_then(|m| acc.checked_add(m)).ok_or_else(overflow);
        let mut out = self.clone();
        for (&v, &c) in &other.coeffs {
            let e = out.coeffs.entry(v).or_insert(0);
            *e = term(c, *e)?;
            if *e == 0 {
                out.coeffs.remove(&v);
            }
        }
        out.constant = term(other.constant, out.constant)?;
        Ok(out)
    }

    fn eval(&self, x: &[i64]) -> i128 {
        self.constant as i128 + self.coeffs.iter().map(|(&v, &c)| c as i128 * x[v] as i128).sum::<i128>()
    }
}

#[derive(Clone, Debug)]
struct Equation {
    form: Form,
    source: String,
    grading: Option<i64>,
}

#[derive(Clone, Debug)]
struct Unit {
    entries: [Form; 3],
    source: String,
    grading: Option<i64>,
}

/// Facts compiled to variables, equations and per-row triples.
#[derive(Clone, Debug)]
pub struct System {
    vars: Vec<(String, i64)>,
    equations: Vec<Equation>,
    units: Vec<Unit>,
    goals: Vec<(String, Form)>,
}

impl System {
    pub fn compile(facts: &Facts) -> Result<System> {
        let mut index: BTreeMap<(&str, i64), usize> = BTreeMap::new();
        let mut support: BTreeMap<&str, (i64, i64)> = BTreeMap::new();
        let mut vars = Vec::new();
        for o in &facts.objects {
            if o.min > o.max {
                return Err(Error::Domain(format!("object {} has empty support", o.name)));
            }
            if support.insert(&o.name, (o.min, o.max)).is_some() {
                return Err(Error::Domain(format!("object {} declared twice", o.name)));
            }
            if o.max as i128 - o.min as i128 + 1 + vars.len() as i128 > MAX_VARIABLES as i128 {
                return Err(Error::Domain(format!("more than {MAX_VARIABLES} dimension variables")));
            }
            for i in o.min..=o.max {
                index.insert((&o.name, i), vars.len());
                vars.push((o.name.clone(), i));
            }
        }
        let sup =
            |name: &str| support.get(name).copied().ok_or_else(|| Error::Domain(format!("unknown object {name}")));
        let at = |name: &str, i: i64| index.get(&(name, i)).map(|&v| Form::var(v)).unwrap_or_default();
        let range = |name: &str, from: Option<i64>, to: Option<i64>| -> Result<Form> {
            let (lo, hi) = sup(name)?;
            let mut f = Form::default();
            for i in from.unwrap_or(lo).max(lo)..=to.unwrap_or(hi).min(hi) {
                f = f.add(&at(name, i), 1)?;
            }
            Ok(f)
        };

        let mut equations = Vec::new();
        let mut units = Vec::new();
        for k in &facts.known {
            sup(&k.object)?;
            if k.value > MAX_MAGNITUDE as u64 {
                return Err(Error::Domain(format!("known value {} exceeds {MAX_MAGNITUDE}", k.value)));
            }
            let form = at(&k.object, k.grading).add(&Form::constant(k.value as i64), -1)?;
            if form.coeffs.is_empty() && form.constant != 0 {
                return Err(Error::Domain(format!("{} has no grading {}", k.object, k.grading)));
            }
            equations.push(Equation { form, source: format!("known {}", k.object), grading: Some(k.grading) });
        }
        for (t, tri) in facts.triangles.iter().enumerate() {
            let label = if tri.label.is_empty() { format!("triangle {t}") } else { tri.label.clone() };
            for m in &tri.maps {
                if m.map > 2 {
                    return Err(Error::Domain(format!("{label}: map index {} out of range", m.map)));
                }
            }
            let rows: Vec<Option<usize>> = match tri.rows {
                Some(n) if n > MAX_ROWS => return Err(Error::Domain(format!("{label}: more than {MAX_ROWS} rows"))),
                Some(n) => (0..n).map(Some).collect(),
                None => vec![None],
            };
            for row in rows {
                let mut entries: [Form; 3] = Default::default();
                let mut grading = None;
                for (k, slot) in tri.slots.iter().enumerate() {
                    let (_, hi) = sup(&slot.object)?;
                    entries[k] = match row {
                        Some(r) => {
                            let i =
                                i64::try_from(slot.start.unwrap_or(hi) as i128 + slot.step as i128 * r as i128).ok();
                            if k == 0 {
                                grading = i;
                            }
                            i.map(|i| at(&slot.object, i)).unwrap_or_default()
                        }
                        None => range(&slot.object, None, None)?,
                    };
                }
                let mut kinds = [MapKind::Unknown; 3];
                for m in &tri.maps {
                    let covered = match (row, m.rows) {
                        (Some(r), Some([a, b])) => a <= r && r <= b,
                        _ => true,
                    };
                    if covered {
                        kinds[m.map] = m.kind;
                    }
                }
                for (k, entry) in entries.iter().enumerate() {
                    if *entry == Form::default() {
                        for m in [k, (k + 2) % 3] {
                            if kinds[m] == MapKind::Unknown {
                                kinds[m] = MapKind::Zero;
                            }
                        }
                    }
                }
                let src = match row {
                    Some(r) => format!("{label} row {r}"),
                    None => label.clone(),
                };
                let mut push = |form: Form| {
                    if !form.coeffs.is_empty() || form.constant != 0 {
                        equations.push(Equation { form, source: src.clone(), grading });
                    }
                };
                for k in 0..3 {
                    let (a, b, c) = (&entries[k], &entries[(k + 1) % 3], &entries[(k + 2) % 3]);
                    match kinds[k] {
                        MapKind::Zero => push(c.add(a, -1)?.add(b, -1)?),
                        MapKind::Iso => {
                            push(a.add(b, -1)?);
                            push(c.clone());
                        }
                        MapKind::Unknown => {}
                    }
                }
                units.push(Unit { entries, source: src, grading });
            }
        }
        let mut goals = Vec::new();
        for (i, g) in facts.goals.iter().enumerate() {
            let mut f = Form::default();
            for (terms, sign) in [(&g.lhs, 1), (&g.rhs, -1)] {
                for t in terms {
                    if t.coeff.unsigned_abs() > MAX_MAGNITUDE as u64 {
                        return Err(Error::Domain(format!("coefficient {} exceeds {MAX_MAGNITUDE}", t.coeff)));
                    }
                    f = f.add(&range(&t.object, t.from, t.to)?, sign * t.coeff)?;
                }
            }
            let label = if g.label.is_empty() { format!("goal {i}") } else { g.label.clone() };
            goals.push((label, f));
        }
        Ok(System { vars, equations, units, goals })
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }
}

/// Reduced row echelon basis of affine equations `form = 0`.
struct Basis {
    n: usize,
    rows: Vec<(usize, Vec<Q>)>,
}

impl Basis {
    fn dense(&self, f: &Form) -> Vec<Q> {
        let mut v = vec![Q::from_integer(0); self.n + 1];
        for (&i, &c) in &f.coeffs {
            v[i] = Q::from_integer(c);
        }
        v[self.n] = Q::from_integer(f.constant);
        v
    }

    fn reduce(&self, mut v: Vec<Q>) -> Result<Vec<Q>> {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != Q::from_integer(0) {
                eliminate(&mut v, c, row)?;
            }
        }
        Ok(v)
    }

    /// Adds an equation; `Ok(Some(c))` reports an inconsistent `0 = c`.
    fn insert(&mut self, f: &Form) -> Result<Option<Q>> {
        let v = self.reduce(self.dense(f))?;
        let Some(p) = v[..self.n].iter().position(|x| *x != Q::from_integer(0)) else {
            return Ok((v[self.n] != Q::from_integer(0)).then_some(v[self.n]));
        };
        let lead = v[p];
        let v: Vec<Q> = v.into_iter().map(|x| x.checked_div(&lead).ok_or_else(overflow)).collect::<Result<_>>()?;
        for (_, row) in &mut self.rows {
            let c = row[p];
            if c != Q::from_integer(0) {
                eliminate(row, c, &v)?;
            }
        }
        self.rows.push((p, v));
        Ok(None)
    }

    /// The value of `f` when the equations force it.
    fn value(&self, f: &Form) -> Result<Option<Q>> {
        let v = self.reduce(self.dense(f))?;
        Ok(v[..self.n].iter().all(|x| *x == Q::from_integer(0)).then(|| v[self.n]))
    }
}

/// `v -= c·row`, entrywise.
fn eliminate(v: &mut [Q], c: Q, row: &[Q]) -> Result<()> {
    for (x, r) in v.iter_mut().zip(row) {
        *x = c.checked_mul(r).and_then(|m| x.checked_sub(&m)).ok_or_else(overflow)?;
    }
    Ok(())
}

fn integral(q: Q) -> Option<i64> {
    q.is_integer().then(|| q.to_integer())
}

pub fn triangle_solve(facts: &Facts) -> Result<SolveReport> {
    let sys = System::compile(facts)?;
    let n = sys.vars.len();
    let mut basis = Basis { n, rows: Vec::new() };
    let mut contradiction = None;
    for eq in &sys.equations {
        if let Some(c) = basis.insert(&eq.form)? {
            contradiction = Some(Contradiction {
                source: eq.source.clone(),
                grading: eq.grading,
                message: format!("linear facts are inconsistent (0 = {c})"),
            });
            break;
        }
    }
    let mut determined = Vec::new();
    if contradiction.is_none() {
        for (v, (object, grading)) in sys.vars.iter().enumerate() {
            if let Some(x) = basis.value(&Form::var(v))? {
                match integral(x) {
                    Some(x) if x >= 0 => determined.push(Value { object: object.clone(), grading: *grading, value: x }),
                    _ => {
                        contradiction = Some(Contradiction {
                            source: format!("object {object}"),
                            grading: Some(*grading),
                            message: format!("forced dimension {x} is not a non-negative integer"),
                        });
                        break;
                    }
                }
            }
        }
    }
    if contradiction.is_none() {
        for u in &sys.units {
            let vals: Option<Vec<Q>> = u.entries.iter().map(|e| basis.value(e)).collect::<Result<_>>()?;
            let Some(vals) = vals else { continue };
            let sum = vals.iter().try_fold(Q::from_integer(0), |a, b| a.checked_add(b)).ok_or_else(overflow)?;
            let twice = |x: &Q| x.checked_add(x).ok_or_else(overflow);
            let message = if vals.iter().map(twice).collect::<Result<Vec<_>>>()?.iter().any(|&x| x > sum) {
                Some(format!("{vals:?}: a dimension exceeds the sum of the other two"))
            } else if integral(sum).is_some_and(|s| s % 2 != 0) {
                Some(format!("{vals:?}: odd total"))
            } else {
                None
            };
            if let Some(message) = message {
                contradiction = Some(Contradiction { source: u.source.clone(), grading: u.grading, message });
                break;
            }
        }
    }
    let goals = sys
        .goals
        .iter()
        .zip(&facts.goals)
        .map(|((label, f), g)| {
            if contradiction.is_some() {
                return Ok(GoalResult { label: label.clone(), status: GoalStatus::Underdetermined, value: None });
            }
            let status = match basis.value(f)? {
                Some(c) if c == Q::from_integer(0) => GoalStatus::Derived,
                Some(_) => GoalStatus::Refuted,
                None => GoalStatus::Underdetermined,
            };
            let lhs =
                Facts { goals: vec![Goal { label: String::new(), lhs: g.lhs.clone(), rhs: vec![] }], ..facts.clone() };
            let value = match System::compile(&lhs) {
                Ok(s) => basis.value(&s.goals[0].1)?.and_then(integral).filter(|_| status == GoalStatus::Derived),
                Err(_) => None,
            };
            Ok(GoalResult { label: label.clone(), status, value })
        })
        .collect::<Result<_>>()?;
    Ok(SolveReport { contradiction, goals, determined })
}

/// Exhaustive enumeration of all assignments with every dimension in `0..=bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub solutions: u64,
    /// Per goal: true iff it holds in every solution.
    pub goal_holds: Vec<bool>,
    /// Per goal: true iff it holds in some solution.
    pub goal_met: Vec<bool>,
}

pub fn brute_force(facts: &Facts, bound: i64) -> Result<Enumeration> {
    let sys = System::compile(facts)?;
    let n = sys.vars.len();
    if n > 24 {
        return Err(Error::Domain(format!("{n} variables is too many to enumerate")));
    }
    // variables are visited so that constraints close as early as possible;
    // each check runs once the last of its variables is assigned
    let scopes: Vec<Vec<usize>> = sys
        .equations
        .iter()
        .map(|e| e.form.coeffs.keys().copied().collect())
        .chain(sys.units.iter().map(|u| u.entries.iter().flat_map(|e| e.coeffs.keys().copied()).collect()))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let score =
            |v: usize| scopes.iter().filter(|s| s.contains(&v) && s.iter().all(|&w| w == v || placed[w])).count();
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (score(v), std::cmp::Reverse(v)))
            .expect("unplaced variable");
        placed[v] = true;
        order.push(v);
    }
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i + 1;
    }
    let slot = |f: &Form| f.coeffs.keys().map(|&v| rank[v]).max().unwrap_or(0);
    let mut eqs: Vec<Vec<&Form>> = vec![Vec::new(); n + 1];
    let mut triples: Vec<Vec<&[Form; 3]>> = vec![Vec::new(); n + 1];
    for e in &sys.equations {
        eqs[slot(&e.form)].push(&e.form);
    }
    for u in &sys.units {
        triples[u.entries.iter().map(slot).max().unwrap_or(0)].push(&u.entries);
    }
    let ok_at = |k: usize, x: &[i64]| {
        eqs[k].iter().all(|f| f.eval(x) == 0)
            && triples[k].iter().all(|t| {
                let v = [t[0].eval(x), t[1].eval(x), t[2].eval(x)];
                let s = v[0] + v[1] + v[2];
                s % 2 == 0 && v.iter().all(|&a| 2 * a <= s)
            })
    };
    let mut out =
        Enumeration { solutions: 0, goal_holds: vec![true; sys.goals.len()], goal_met: vec![false; sys.goals.len()] };
    let mut x = vec![0i64; n];
    if !ok_at(0, &x) {
        return Ok(out);
    }
    #[allow(clippy::too_many_arguments)]
    fn walk(
        k: usize,
        order: &[usize],
        x: &mut Vec<i64>,
        bound: i64,
        ok_at: &dyn Fn(usize, &[i64]) -> bool,
        goals: &[(String, Form)],
        out: &mut Enumeration,
    ) {
        if k == order.len() {
            out.solutions += 1;
            for (k, (_, g)) in goals.iter().enumerate() {
                let ok = g.eval(x) == 0;
                out.goal_holds[k] &= ok;
                out.goal_met[k] |= ok;
            }
            return;
        }
        let var = order[k];
        for v in 0..=bound {
            x[var] = v;
            if ok_at(k + 1, x) {
                walk(k + 1, order, x, bound, ok_at, goals, out);
            }
        }
        x[var] = 0;
    }
    walk(0, &order, &mut x, bound, &ok_at, &sys.goals, &mut out);
    Ok(out)
}

/// Which essential block the encoding targets: the top one, or the bottom one read in reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Plus,
    Minus,
}

/// The two graded bypass triangles relating `Γ̂_μ`, `Γ̂_n`, `Γ̂_{n+1}` and the
/// surgery triangle with `G_n = 0`, for suture parameters `q_μ = q`,
/// `q_n = qn`, `q_{n+1} = qn + q` and genus `g`.
///
/// Goals: the essential block of `Γ̂_n` has the dimension of `δ`, plus the
/// block identities read off the first triangle.
pub fn dimension_lemma(q: i64, g: i64, qn: i64, direction: Direction) -> Result<Facts> {
    if q < 1 || g < 0 {
        return Err(Error::Domain(format!("need q >= 1 and g >= 0, got q = {q}, g = {g}")));
    }
    if qn < q + 2 * g {
        return Err(Error::Domain(format!("need q_n >= q + 2g = {}, got {qn}", q + 2 * g)));
    }
    let (wm, wn, w1) = (window(q, g)?, window(qn, g)?, window(qn + q, g)?);
    let width = (qn + 2 * g) as usize;
    let (qq, gg) = (q as usize, 2 * g as usize);
    let rows = width + qq;
    // reading direction: rows run down from the top grading, or up from the bottom
    let step = match direction {
        Direction::Plus => -1,
        Direction::Minus => 1,
    };
    let top = |w: &GradingWindow| if step < 0 { w.i_max } else { w.i_min };
    let obj = |name: &str, w: &GradingWindow| ObjectSpec { name: name.into(), min: w.i_min, max: w.i_max };
    let slot = |name: &str, start: i64| Slot { object: name.into(), start: Some(start), step };
    let pos = |w: &GradingWindow, k: i64| top(w) + step * k;
    let block = |name: &str, w: &GradingWindow, from: usize, len: usize| {
        let (a, b) = (pos(w, from as i64), pos(w, (from + len) as i64 - 1));
        (len > 0).then(|| Term::block(name, a.min(b), a.max(b))).into_iter().collect::<Vec<_>>()
    };
    let (tm, tn, t1) = ("mu", "n", "n+1");
    let sign = match direction {
        Direction::Plus => "+",
        Direction::Minus => "-",
    };
    let triangles = vec![
        TriangleFact {
            label: format!("bypass {sign}, far end aligned"),
            slots: [slot(tm, pos(&wm, 0)), slot(tn, pos(&wn, -(q))), slot(t1, pos(&w1, 0))],
            rows: Some(rows),
            maps: vec![MapFact { map: 1, rows: Some([qq + gg, rows - 1]), kind: MapKind::Iso }],
        },
        TriangleFact {
            label: format!("bypass {sign}, near end aligned"),
            slots: [slot(tm, pos(&wm, -((width - gg) as i64))), slot(tn, pos(&wn, 0)), slot(t1, pos(&w1, 0))],
            rows: Some(rows),
            maps: vec![MapFact { map: 1, rows: Some([0, width - gg - 1]), kind: MapKind::Iso }],
        },
        TriangleFact {
            label: "surgery, G_n = 0".into(),
            slots: [
                Slot { object: tn.into(), start: None, step },
                Slot { object: t1.into(), start: None, step },
                Slot { object: "delta".into(), start: None, step },
            ],
            rows: None,
            maps: vec![MapFact { map: 2, rows: None, kind: MapKind::Zero }],
        },
    ];
    let mid = width - qq - 2 * gg;
    let goals = vec![
        Goal { label: format!("I{sign} = delta"), lhs: block(tn, &wn, gg, qq), rhs: vec![Term::whole("delta")] },
        Goal { label: "X1 = G".into(), lhs: block(t1, &w1, 0, qq), rhs: block(tm, &wm, 0, qq) },
        Goal { label: "X3 = E".into(), lhs: block(t1, &w1, qq + gg, mid), rhs: block(tn, &wn, gg, mid) },
        Goal { label: "X4 = F".into(), lhs: block(t1, &w1, qq + gg + mid, qq), rhs: block(tn, &wn, gg + mid, qq) },
        Goal {
            label: "X5 = D".into(),
            lhs: block(t1, &w1, 2 * qq + gg + mid, gg),
            rhs: block(tn, &wn, width - gg, gg),
        },
    ];
    let objects = vec![obj(tm, &wm), obj(tn, &wn), obj(t1, &w1), ObjectSpec { name: "delta".into(), min: 0, max: 0 }];
    Ok(Facts { objects, known: Vec::new(), triangles, goals })
}
