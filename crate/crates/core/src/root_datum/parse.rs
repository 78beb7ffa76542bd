//! Group descriptors:
//!
//! ```text
//! group  := factor ("*" factor)*
//! factor := SCTYPE | "GL" INT | "T" INT | "Gext(" SCTYPE [";m=" INTVEC] ")"
//! INTVEC := INT ("," INT)* | ["-"] "e" INT
//! ```

use crate::error::{Error, Result};

use super::{CartanType, RootDatum};

pub(super) fn parse_group(grp: &str) -> Result<RootDatum> {
    let compact: String = grp.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty group descriptor".into()));
    }
    let factors = split_factors(&compact)?
        .into_iter()
        .map(parse_factor)
        .collect::<Result<Vec<_>>>()?;
    let mut d = RootDatum::product(&factors)?;
    if factors.len() > 1 {
        d.label = compact;
    }
    Ok(d)
}

/// Split on `*` outside parentheses.
fn split_factors(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
    }
    out.push(&s[start..]);
    if out.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse(format!("empty factor in {s:?}")));
    }
    Ok(out)
}

fn parse_count(s: &str, what: &str) -> Result<usize> {
    let k: usize = s.parse().map_err(|_| Error::Parse(format!("bad {what} rank {s:?}")))?;
    if k == 0 {
        return Err(Error::Parse(format!("{what} rank must be positive")));
    }
    if k > super::MAX_RANK + 1 {
        return Err(Error::RankBound(format!("{what}{k}")));
    }
    Ok(k)
}

fn parse_factor(f: &str) -> Result<RootDatum> {
    if let Some(inner) = f.strip_prefix("Gext(") {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {f:?}")))?;
        return match inner.split_once(';') {
            None => Ok(RootDatum::extension_preset(inner.parse()?)),
            Some((ty, m)) => {
                let t: CartanType = ty.parse()?;
                let m = m
                    .strip_prefix("m=")
                    .ok_or_else(|| Error::Parse(format!("expected 'm=' in {f:?}")))?;
                RootDatum::extension(t, &parse_intvec(m, t.rank)?)
            }
        };
    }
    if let Some(k) = f.strip_prefix("GL") {
        return RootDatum::gl(parse_count(k, "GL")?);
    }
    if let Some(k) = f.strip_prefix('T') {
        return Ok(RootDatum::torus(parse_count(k, "T")?));
    }
    Ok(RootDatum::simple(f.parse()?))
}

fn parse_intvec(s: &str, len: usize) -> Result<Vec<i64>> {
    let s = s.trim_start_matches('[').trim_end_matches(']');
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) if r.starts_with('e') => (-1, r),
        _ => (1, s),
    };
    if let Some(k) = rest.strip_prefix('e') {
        let k: usize = k.parse().map_err(|_| Error::Parse(format!("bad unit vector {s:?}")))?;
        if k == 0 || k > len {
            return Err(Error::Parse(format!("unit vector index {k} out of range 1..={len}")));
        }
        let mut v = vec![0; len];
        v[k - 1] = sign;
        return Ok(v);
    }
    let v = s
        .split(',')
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != len {
        return Err(Error::Dimension { expected: len, got: v.len() });
    }
    Ok(v)
}
