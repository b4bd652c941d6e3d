//! Form literals such as `1*e12 + -3/2*e134` (that is `e^1∧e^2 − 3/2 e^1∧e^3∧e^4`).
//!
//! Each index is a single digit; `e(1,10,11)` spells larger indices.
//! Unsorted indices are allowed and pick up the permutation sign.

use super::KForm;
use crate::error::{ParseError, Result};
use crate::linalg::Scalar;

pub fn parse_form(text: &str, dim: usize) -> Result<KForm> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(ParseError::new("empty form literal").into());
    }
    if s == ['0'] {
        return Err(ParseError::new("the literal `0` has no degree; use parse_form_of_degree").into());
    }
    parse_terms(&s, dim, None)
}

/// Like [`parse_form`], but `0` is accepted and the degree is checked.
pub fn parse_form_of_degree(text: &str, dim: usize, degree: usize) -> Result<KForm> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s == ['0'] {
        return Ok(KForm::zero(dim, degree));
    }
    parse_terms(&s, dim, Some(degree))
}

fn err(msg: impl Into<String>) -> crate::Error {
    ParseError::new(msg).into()
}

fn parse_terms(s: &[char], dim: usize, degree: Option<usize>) -> Result<KForm> {
    let mut pos = 0;
    let mut form: Option<KForm> = degree.map(|d| KForm::zero(dim, d));
    let mut first = true;
    while pos < s.len() {
        let mut negative = false;
        let mut saw_sign = false;
        while pos < s.len() && (s[pos] == '+' || s[pos] == '-') {
            negative ^= s[pos] == '-';
            saw_sign = true;
            pos += 1;
        }
        if !first && !saw_sign {
            return Err(err(format!("expected `+` or `-` at position {pos}")));
        }
        first = false;

        let mut coeff = Scalar::one();
        if pos < s.len() && s[pos] != 'e' {
            let start = pos;
            while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == '/') {
                pos += 1;
            }
            let lit: String = s[start..pos].iter().collect();
            coeff = lit.parse().map_err(|_| err(format!("bad coefficient `{lit}`")))?;
            if pos >= s.len() || s[pos] != '*' {
                return Err(err(format!("expected `*` after coefficient `{lit}`")));
            }
            pos += 1;
        }
        if pos >= s.len() || s[pos] != 'e' {
            return Err(err(format!("expected a basis monomial like `e12` at position {pos}")));
        }
        pos += 1;
        let mut idx = Vec::new();
        if pos < s.len() && s[pos] == '(' {
            let close = s[pos..]
                .iter()
                .position(|&c| c == ')')
                .map(|p| p + pos)
                .ok_or_else(|| err("unclosed `(` in monomial"))?;
            let inner: String = s[pos + 1..close].iter().collect();
            for part in inner.split(',') {
                idx.push(part.parse::<usize>().map_err(|_| err(format!("bad index `{part}`")))?);
            }
            pos = close + 1;
        } else {
            while pos < s.len() && s[pos].is_ascii_digit() {
                idx.push(s[pos].to_digit(10).unwrap() as usize);
                pos += 1;
            }
        }
        if idx.is_empty() {
            return Err(err("monomial `e` without indices"));
        }
        if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i > dim) {
            return Err(err(format!("index {bad} outside 1..={dim}")));
        }
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        let f = form.get_or_insert_with(|| KForm::zero(dim, zero_based.len()));
        if f.degree() != zero_based.len() {
            return Err(err(format!("mixed degrees: e{} in a {}-form", idx.iter().map(|i| i.to_string()).collect::<String>(), f.degree())));
        }
        f.add_term(&zero_based, if negative { -coeff } else { coeff });
    }
    form.ok_or_else(|| err("empty form literal"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn spec_literal() {
        let w = parse_form("1*e12 + -3/2*e134", 4).unwrap_err();
        assert!(w.to_string().contains("mixed"));
        let a = parse_form("1*e12 + -3/2*e34", 4).unwrap();
        assert_eq!(a.coeff(&[0, 1]), Scalar::one());
        assert_eq!(a.coeff(&[2, 3]), q(-3, 2));
        let b = parse_form("-3/2*e134", 4).unwrap();
        assert_eq!(b.degree(), 3);
        assert_eq!(b.coeff(&[0, 2, 3]), q(-3, 2));
    }

    #[test]
    fn signs_and_unsorted() {
        let a = parse_form("e21 - e34", 4).unwrap();
        assert_eq!(a.coeff(&[0, 1]), q(-1, 1));
        assert_eq!(a.coeff(&[2, 3]), q(-1, 1));
        assert!(parse_form("e11", 4).unwrap().is_zero());
        assert_eq!(parse_form("e(1,10)", 10).unwrap().coeff(&[0, 9]), Scalar::one());
    }

    #[test]
    fn errors() {
        assert!(parse_form("", 4).is_err());
        assert!(parse_form("e15", 4).is_err());
        assert!(parse_form("2e12", 4).is_err());
        assert!(parse_form("e12 e34", 4).is_err());
        assert!(parse_form_of_degree("0", 4, 2).unwrap().is_zero());
        assert!(parse_form_of_degree("e1", 4, 2).is_err());
    }
}
