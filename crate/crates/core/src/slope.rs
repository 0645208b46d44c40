//! Curves on the boundary torus: slopes, negative continued fractions,
//! bypass slope triples and the surgery-frame suture family.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Primitive class `x·λ + y·μ`, stored in canonical sign form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    pub x: i64,
    pub y: i64,
}

impl Slope {
    /// Builds the canonical representative of `±(x, y)`.
    pub fn new(x: i64, y: i64) -> Result<Slope> {
        if x == 0 && y == 0 {
            return Err(Error::Domain("the zero class is not a slope".into()));
        }
        if x == i64::MIN || y == i64::MIN {
            return Err(Error::Domain(format!("({x},{y}) is out of range")));
        }
        if x.gcd(&y) != 1 {
            return Err(Error::Domain(format!("({x},{y}) is not primitive")));
        }
        Ok(Self::canonical(x, y))
    }

    fn canonical(x: i64, y: i64) -> Slope {
        if y < 0 || (y == 0 && x < 0) {
            Slope { x: -x, y: -y }
        } else {
            Slope { x, y }
        }
    }

    pub fn det(self, other: Slope) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// The rational `y/x` written as in the surgery literature.
    pub fn ratio_text(self) -> String {
        format!("{}/{}", self.y, self.x)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.y, self.x)
    }
}

/// Parses `y/x` (or a bare integer `y`, meaning `y/1`).
impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let (y, x) = crate::parse::ratio(s)?;
        Slope::new(x, y)
    }
}

/// Negative continued fraction `a0 - 1/(a1 - 1/(... - 1/an))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    /// Value of the expansion; the empty expansion is `1/0`, returned as `None`.
    pub fn value(&self) -> Option<Ratio<i64>> {
        eval_terms(&self.terms)
    }
}

fn eval_terms(terms: &[i64]) -> Option<Ratio<i64>> {
    let (last, rest) = terms.split_last()?;
    let mut v = Ratio::from_integer(*last);
    for a in rest.iter().rev() {
        v = Ratio::from_integer(*a) - v.recip();
    }
    Some(v)
}

/// Expands a rational `< -1` with all terms `<= -2`.
pub fn continued_fraction(value: Ratio<i64>) -> Result<ContinuedFraction> {
    if value >= Ratio::from_integer(-1) {
        return Err(Error::Domain(format!("{value} is not below -1")));
    }
    let mut terms = Vec::new();
    let mut v = value;
    loop {
        let a = v.floor();
        terms.push(a.to_integer());
        if a == v {
            break;
        }
        v = (a - v).recip();
    }
    Ok(ContinuedFraction { terms })
}

fn slope_of(v: Option<Ratio<i64>>) -> Slope {
    match v {
        None => Slope { x: 0, y: 1 },
        Some(r) => Slope::canonical(*r.denom(), *r.numer()),
    }
}

/// Children for `y > -x > 0`, where `y/x < -1`.
fn children_negative(s3: Slope) -> (Slope, Slope) {
    let cf = continued_fraction(Ratio::new(s3.y, s3.x)).expect("slope below -1");
    let n = cf.terms.len() - 1;
    let s1 = slope_of(eval_terms(&cf.terms[..n]));
    let s2 = match cf.terms.iter().rposition(|&a| a != -2) {
        Some(k) => {
            let mut t = cf.terms[..=k].to_vec();
            t[k] += 1;
            slope_of(eval_terms(&t))
        }
        // every term is -2: the mediant partner is -1
        None => Slope { x: -1, y: 1 },
    };
    debug_assert_eq!((s1.x + s2.x, s1.y + s2.y), (s3.x, s3.y));
    (s1, s2)
}

/// The two slopes completing the bypass triangle of `s3`.
pub fn bypass_children(s3: Slope) -> (Slope, Slope) {
    let Slope { x, y } = s3;
    let e = |x, y| Slope { x, y };
    match (x, y) {
        (0, 1) => (e(1, 0), e(-1, 1)),
        (1, 0) => (e(-1, 1), e(1, 0)),
        (-1, 1) | (1, 1) => (e(0, 1), e(1, 0)),
        _ => {
            // unimodular change of coordinates into the `y > -x > 0` sector and back
            let (fwd, back) = if y > -x && -x > 0 {
                ([[1, 0], [0, 1]], [[1, 0], [0, 1]])
            } else if -x > y {
                ([[0, -1], [-1, 0]], [[0, -1], [-1, 0]])
            } else if y > x {
                ([[-1, 0], [0, 1]], [[-1, 0], [0, 1]])
            } else {
                ([[0, -1], [1, 0]], [[0, 1], [-1, 0]])
            };
            let (a, b) = children_negative(apply(fwd, s3));
            (apply(back, a), apply(back, b))
        }
    }
}

fn apply(m: [[i64; 2]; 2], s: Slope) -> Slope {
    Slope::canonical(m[0][0] * s.x + m[0][1] * s.y, m[1][0] * s.x + m[1][1] * s.y)
}

/// True iff the three classes bound a lattice triangle of area 1/2.
pub fn lattice_triangle_ok(s1: Slope, s2: Slope, s3: Slope) -> bool {
    [s1.det(s2), s2.det(s3), s1.det(s3)].iter().all(|d| d.abs() == 1)
}

/// `x1 + x2 = ±x3` and `y1 + y2 = y3`, where a class with `y = 0` may enter with either sign.
pub fn additive(s1: Slope, s2: Slope, s3: Slope) -> bool {
    let signs = |s: Slope| if s.y == 0 { vec![1, -1] } else { vec![1] };
    s1.y + s2.y == s3.y
        && signs(s1).iter().any(|e1| signs(s2).iter().any(|e2| (e1 * s1.x + e2 * s2.x).abs() == s3.x.abs()))
}

/// Basis `μ̂ = qμ + pλ`, `λ̂ = q0·μ + p0·λ` for a surgery slope `q/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryFrame {
    pub q: i64,
    pub p: i64,
    pub q0: i64,
    pub p0: i64,
    /// Set when the strict inequalities had no solution and the bounds were relaxed.
    pub relaxed: bool,
}

impl SurgeryFrame {
    pub fn mu_hat(&self) -> Slope {
        Slope::canonical(self.p, self.q)
    }

    pub fn lambda_hat(&self) -> Slope {
        Slope::canonical(self.p0, self.q0)
    }

    /// Frame of `-n` surgery written with `μ̂ = λ - nμ` and `λ̂ = -μ`.
    pub fn negative_integral(n: i64) -> SurgeryFrame {
        SurgeryFrame { q: -n, p: 1, q0: -1, p0: 0, relaxed: false }
    }
}

/// Candidates `(q0, p0)` with `p0·q - p·q0 = 1` inside the stated ranges.
pub fn frame_candidates(q: i64, p: i64, strict: bool) -> Vec<(i64, i64)> {
    let inside = |v: i64, bound: i64| if strict { v.abs() < bound.abs() } else { v.abs() <= bound.abs() };
    let mut out = Vec::new();
    for p0 in -p.abs()..=p.abs() {
        if !inside(p0, p) || p0 * p > 0 {
            continue;
        }
        for q0 in -q.abs()..=q.abs() {
            if inside(q0, q) && q0 * q <= 0 && p0 * q - p * q0 == 1 {
                out.push((q0, p0));
            }
        }
    }
    out
}

pub fn surgery_frame(q: i64, p: i64) -> Result<SurgeryFrame> {
    if q.gcd(&p) != 1 {
        return Err(Error::Domain(format!("{q}/{p} is not a reduced slope")));
    }
    if q < 0 || (q == 0 && p != 1) {
        return Err(Error::Domain(format!("{q}/{p}: expected q > 0 or (q,p) = (0,1)")));
    }
    let frame = |q0, p0, relaxed| SurgeryFrame { q, p, q0, p0, relaxed };
    if p == 0 {
        return Ok(frame(0, 1, false));
    }
    if q == 0 || p == 1 {
        return Ok(frame(-1, 0, false));
    }
    let strict = frame_candidates(q, p, true);
    if let [(q0, p0)] = strict[..] {
        return Ok(frame(q0, p0, false));
    }
    match frame_candidates(q, p, false)[..] {
        [(q0, p0)] => Ok(frame(q0, p0, true)),
        ref c => Err(Error::Invariant(format!("{q}/{p}: {} frame candidates", c.len()))),
    }
}

/// `Γ̂_n = γ_{λ̂ - nμ̂}` with the non-negative μ-coefficient `q_n`.
pub fn gamma_hat(frame: &SurgeryFrame, n: i64) -> (Slope, i64) {
    let x = frame.p0 - n * frame.p;
    let y = frame.q0 - n * frame.q;
    (Slope::canonical(x, y), y.abs())
}
