//! Text grammars: `W(p,q,r,s)`, `K(p,q,k)`, rationals `a/b` and Laurent
//! polynomials such as `t^-1 - 1 + t`.

use crate::diagram::OneOneParams;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn int(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|_| err(format!("not an integer: {s:?}")))
}

fn squeeze(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// `a/b` or `a`; returns `(a, b)`.
pub fn ratio(s: &str) -> Result<(i64, i64)> {
    let t = squeeze(s);
    let (a, b) = match t.split_once('/') {
        Some((a, b)) => (int(a)?, int(b)?),
        None => (int(&t)?, 1),
    };
    if a == 0 && b == 0 {
        return Err(err("0/0 is not a ratio"));
    }
    Ok((a, b))
}

/// `W(p,q,r,s)` or `K(p,q,k)`, whitespace-insensitive.
pub fn params(s: &str) -> Result<OneOneParams> {
    let t = squeeze(s);
    let head = t.chars().next().ok_or_else(|| err("empty diagram"))?;
    let body = t[head.len_utf8()..]
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| err(format!("expected {head}(...) in {s:?}")))?;
    let v = body.split(',').map(int).collect::<Result<Vec<_>>>()?;
    match (head, v.as_slice()) {
        ('W' | 'w', &[p, q, r, s]) => OneOneParams::new(p, q, r, s),
        ('K' | 'k', &[p, q, k]) => OneOneParams::simple(p, q, k),
        ('W' | 'w', _) => Err(err("W takes four arguments")),
        ('K' | 'k', _) => Err(err("K takes three arguments")),
        _ => Err(err(format!("unknown diagram kind {head:?}"))),
    }
}

/// Laurent polynomial in `t`: sums of terms `c`, `c*t^e`, `ct^e`, `-t`, `t^{-2}`.
pub fn laurent(s: &str) -> Result<LaurentPoly> {
    let t = squeeze(s);
    if t.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = t.as_bytes();
    for i in 1..bytes.len() {
        let prev = bytes[i - 1];
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(prev, b'^' | b'{' | b'(') {
            terms.push(&t[start..i]);
            start = i;
        }
    }
    terms.push(&t[start..]);
    let mut poly = LaurentPoly::zero();
    for term in terms {
        let (sign, body) = match term.as_bytes().first() {
            Some(b'+') => (1, &term[1..]),
            Some(b'-') => (-1, &term[1..]),
            _ => (1, term),
        };
        if body.is_empty() {
            return Err(err(format!("dangling sign in {s:?}")));
        }
        let (coef, exp) = match body.find('t') {
            None => (int(body)?, 0),
            Some(i) => {
                let c = body[..i].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { int(c)? };
                let rest = &body[i + 1..];
                let e = match rest.strip_prefix('^') {
                    None if rest.is_empty() => 1,
                    None => return Err(err(format!("unexpected {rest:?} after t"))),
                    Some(e) => {
                        let e = e
                            .strip_prefix('{')
                            .and_then(|e| e.strip_suffix('}'))
                            .or_else(|| e.strip_prefix('(').and_then(|e| e.strip_suffix(')')))
                            .unwrap_or(e);
                        int(e)?
                    }
                };
                (c, e)
            }
        };
        let c = coef.checked_mul(sign).ok_or_else(|| err("coefficient overflow"))?;
        poly.add_term(exp, c);
    }
    Ok(poly)
}
