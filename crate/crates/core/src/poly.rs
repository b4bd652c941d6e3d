//! Sparse multivariate polynomials over an exact field, with named variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::linalg::{Field, GaussianScalar, Scalar};

/// Sorted `(variable, exponent)` pairs; the empty monomial is `1`.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<String, u32> = a.iter().cloned().collect();
    for (v, e) in b {
        *m.entry(v.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![(name.to_string(), 1)], F::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        let zero = match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                v.is_zero()
            }
            None => {
                self.terms.insert(m.clone(), c);
                false
            }
        };
        if zero {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    /// The value when no variable occurs.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum()).max().unwrap_or(0)
    }

    /// Degree in the variables accepted by `pred`.
    pub fn degree_in(&self, pred: impl Fn(&str) -> bool) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().filter(|(v, _)| pred(v)).map(|(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(F::one()), |acc, _| acc.mul(self))
    }

    /// Substitutes the given values; other variables stay symbolic.
    pub fn substitute(&self, values: &BTreeMap<String, F>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = Vec::new();
            for (v, e) in m {
                match values.get(v) {
                    Some(x) => {
                        for _ in 0..*e {
                            coeff = coeff * x.clone();
                        }
                    }
                    None => rest.push((v.clone(), *e)),
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Splits `p = Σ_v v · p_v + p_0` over the variables accepted by `pred`,
    /// requiring `p` to be of degree at most one in them.
    pub fn linear_split(&self, pred: impl Fn(&str) -> bool) -> Option<(BTreeMap<String, Self>, Self)> {
        let mut parts: BTreeMap<String, Self> = BTreeMap::new();
        let mut rest = Self::zero();
        for (m, c) in &self.terms {
            let hits: Vec<&(String, u32)> = m.iter().filter(|(v, _)| pred(v)).collect();
            match hits.as_slice() {
                [] => rest.add_term(m.clone(), c.clone()),
                [(v, 1)] => {
                    let others: Monomial = m.iter().filter(|(w, _)| w != v).cloned().collect();
                    parts.entry(v.clone()).or_insert_with(Self::zero).add_term(others, c.clone());
                }
                _ => return None,
            }
        }
        parts.retain(|_, p| !p.is_zero());
        Some((parts, rest))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `Some(c)` with `self = c · other` for a nonzero constant `c`.
    pub fn ratio_to(&self, other: &Self) -> Option<F> {
        let (m, c) = other.terms.iter().next()?;
        let s = self.terms.get(m)?;
        let r = s.clone() / c.clone();
        if self.sub(&other.scale(&r)).is_zero() && !r.is_zero() {
            Some(r)
        } else {
            None
        }
    }
}

impl Poly<GaussianScalar> {
    /// The real polynomial, if every coefficient is real.
    pub fn to_real(&self) -> Option<Poly<Scalar>> {
        if self.terms.values().all(GaussianScalar::is_real) {
            Some(self.map(|c| c.re.clone()))
        } else {
            None
        }
    }
}

impl Poly<Scalar> {
    pub fn to_gaussian(&self) -> Poly<GaussianScalar> {
        self.map(|c| GaussianScalar::real(c.clone()))
    }
}

fn mono_string(m: &Monomial) -> String {
    m.iter()
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest degree first, then by monomial
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(m.iter().map(|(_, e)| *e).sum::<u32>()));
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let sep = match (n, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.abs();
            match (m.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{sep}{mag}")?,
                (false, true) => write!(f, "{sep}{}", mono_string(m))?,
                (false, false) => write!(f, "{sep}{mag}*{}", mono_string(m))?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly<GaussianScalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_real() {
            return r.fmt(f);
        }
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| if m.is_empty() { format!("({c})") } else { format!("({c})*{}", mono_string(m)) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for Poly<F>
where
    Poly<F>: fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn v(s: &str) -> Poly<Scalar> {
        Poly::var(s)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = v("a14").mul(&v("a23")).sub(&v("a13").mul(&v("a24")));
        assert_eq!(p.to_string(), "-a13*a24 + a14*a23");
        assert_eq!(p.total_degree(), 2);
        let sq = v("x").add(&Poly::constant(q(1, 1))).pow(2);
        assert_eq!(sq.to_string(), "x^2 + 2*x + 1");
        assert!(v("x").sub(&v("x")).is_zero());
    }

    #[test]
    fn substitution_and_split() {
        let p = v("c").mul(&v("e2")).add(&v("e4"));
        let s = p.substitute(&BTreeMap::from([("c".to_string(), q(3, 2))]));
        let (parts, rest) = s.linear_split(|n| n.starts_with('e')).unwrap();
        assert!(rest.is_zero());
        assert_eq!(parts["e2"].as_constant(), Some(q(3, 2)));
        assert!(v("e2").mul(&v("e3")).linear_split(|n| n.starts_with('e')).is_none());
    }

    #[test]
    fn ratio() {
        let a = v("x").mul(&v("y"));
        assert_eq!(a.scale(&q(-2, 1)).ratio_to(&a), Some(q(-2, 1)));
        assert_eq!(a.add(&v("x")).ratio_to(&a), None);
    }
}
