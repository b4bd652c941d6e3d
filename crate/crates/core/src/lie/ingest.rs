//! Plain-text bracket tables.
//!
//! ```text
//! # the Heisenberg algebra plus a line
//! name rh3
//! dim 4
//! [1,2] = 1*3
//! [4,1] = 1/2*1, -1*e2
//! ```
//!
//! Indices are 1-based. Each right-hand side is a comma-separated list of
//! `coeff*k` terms (the `coeff*` part and an `e` prefix are optional). Pairs
//! not listed bracket to zero.

use super::{LieAlgebra, Params};
use crate::error::{Error, ParseError, Result};
use crate::linalg::Scalar;

pub fn parse_bracket_table(text: &str) -> Result<LieAlgebra> {
    let mut dim: Option<usize> = None;
    let mut name = String::from("input");
    let mut rows: Vec<(usize, usize, Vec<(usize, Scalar)>, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("dim") {
            let d: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::new(format!("bad dimension `{}`", rest.trim())).at_line(lineno))?;
            if d == 0 {
                return Err(ParseError::new("dimension must be positive").at_line(lineno).into());
            }
            if dim.replace(d).is_some() {
                return Err(ParseError::new("dimension given twice").at_line(lineno).into());
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("name") {
            name = rest.trim().to_string();
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| ParseError::new(format!("expected `[i,j] = ...`, got `{line}`")).at_line(lineno))?;
        let (i, j) = parse_pair(lhs.trim()).map_err(|m| ParseError::new(m).at_line(lineno))?;
        let terms = parse_terms(rhs.trim()).map_err(|m| ParseError::new(m).at_line(lineno))?;
        rows.push((i, j, terms, lineno));
    }

    let dim = dim.ok_or_else(|| ParseError::new("missing `dim` line"))?;
    let mut zero_based = Vec::with_capacity(rows.len());
    for (i, j, terms, lineno) in rows {
        let check = |k: usize| {
            if k == 0 || k > dim {
                Err(Error::from(ParseError::new(format!("index {k} outside 1..={dim}")).at_line(lineno)))
            } else {
                Ok(k - 1)
            }
        };
        let (i0, j0) = (check(i)?, check(j)?);
        let mut t = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            t.push((check(k)?, c));
        }
        if zero_based.iter().any(|(a, b, _): &(usize, usize, _)| (*a, *b) == (i0, j0) || (*a, *b) == (j0, i0)) {
            return Err(ParseError::new(format!("bracket [{i},{j}] given twice")).at_line(lineno).into());
        }
        if i0 == j0 {
            return Err(ParseError::new(format!("bracket [{i},{i}] of a vector with itself")).at_line(lineno).into());
        }
        zero_based.push((i0, j0, t));
    }
    let g = LieAlgebra::from_brackets(dim, name, Params::new(), &zero_based)?;
    g.ensure_lie()?;
    Ok(g)
}

fn parse_index(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let s = s.strip_prefix('e').unwrap_or(s);
    s.parse().map_err(|_| format!("bad basis index `{s}`"))
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("expected `[i,j]`, got `{s}`"))?;
    let (a, b) = inner.split_once(',').ok_or_else(|| format!("expected `[i,j]`, got `{s}`"))?;
    Ok((parse_index(a)?, parse_index(b)?))
}

fn parse_terms(s: &str) -> Result<Vec<(usize, Scalar)>, String> {
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in s.split(',').map(str::trim) {
        if term.is_empty() {
            return Err("empty term".to_string());
        }
        let (coeff, index) = match term.rsplit_once('*') {
            Some((c, k)) => (c.trim().parse::<Scalar>().map_err(|e| e.to_string())?, parse_index(k)?),
            None => match term.strip_prefix('-') {
                Some(k) => (Scalar::from(-1), parse_index(k)?),
                None => (Scalar::one(), parse_index(term)?),
            },
        };
        out.push((index, coeff));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog_build, CaseId};

    #[test]
    fn heisenberg_round_trip() {
        let g = parse_bracket_table("dim 4\n[1,2] = 1*3\n").unwrap();
        let h = catalog_build(CaseId::Rh3, &Params::new()).unwrap();
        assert_eq!(g.nonzero_constants(), h.nonzero_constants());
    }

    #[test]
    fn reversed_pairs_and_comments() {
        let g = parse_bracket_table("# d4\ndim 4\n[1,2]=e3\n[4,1] = 1\n[4,2] = -2 # minus\n").unwrap();
        let h = catalog_build(CaseId::D4, &Params::new()).unwrap();
        assert_eq!(g.nonzero_constants(), h.nonzero_constants());
    }

    #[test]
    fn rejects_duplicates_and_bad_indices() {
        let e = parse_bracket_table("dim 3\n[1,2] = 3\n[2,1] = 3\n").unwrap_err();
        assert!(e.to_string().contains("twice"), "{e}");
        assert!(parse_bracket_table("dim 3\n[1,4] = 3\n").is_err());
        assert!(parse_bracket_table("[1,2] = 3\n").is_err());
    }

    #[test]
    fn rejects_non_lie() {
        // cyclic sum on (e1,e2,e3) is -e1
        let r = parse_bracket_table("dim 3\n[1,2] = 2\n[2,3] = 1\n");
        assert!(matches!(r, Err(Error::JacobiFailure { .. })), "{r:?}");
    }
}
