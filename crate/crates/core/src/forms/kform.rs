use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// A left-invariant k-form `Σ a_I e^I` over strictly increasing 0-based
/// index tuples `I`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Scalar>,
}

/// All strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn basis_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sorts `idx` in place; returns the permutation sign, or `None` when an
/// index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Self { dim, degree, coeffs: BTreeMap::new() }
    }

    /// `e^{i_1} ∧ … ∧ e^{i_k}` for any (possibly unsorted) index list.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut f = Self::zero(dim, indices.len());
        f.add_term(indices, Scalar::one());
        f
    }

    /// Builds a form from coordinates in the lexicographic basis.
    pub fn from_coords(dim: usize, degree: usize, coords: &[Scalar]) -> Self {
        let tuples = basis_tuples(dim, degree);
        assert_eq!(coords.len(), tuples.len(), "coordinate vector has wrong length");
        let coeffs = tuples
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t, c.clone()))
            .collect();
        Self { dim, degree, coeffs }
    }

    pub fn coords(&self) -> Vec<Scalar> {
        basis_tuples(self.dim, self.degree).iter().map(|t| self.coeff(t)).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    /// Coefficient of `e^{indices}`, with the sign of the sorting permutation.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => Scalar::zero(),
            Some(sign) => self.coeffs.get(&idx).map_or_else(Scalar::zero, |c| c * &Scalar::from(sign)),
        }
    }

    /// Adds `c · e^{indices}`; unsorted indices contribute with their sign
    /// and repeated indices contribute nothing.
    pub fn add_term(&mut self, indices: &[usize], c: Scalar) {
        assert_eq!(indices.len(), self.degree, "term degree differs from form degree");
        assert!(indices.iter().all(|&i| i < self.dim), "basis index out of range");
        if c.is_zero() {
            return;
        }
        let mut idx = indices.to_vec();
        let Some(sign) = sort_with_sign(&mut idx) else { return };
        let delta = if sign < 0 { -c } else { c };
        let entry = self.coeffs.entry(idx.clone()).or_insert_with(Scalar::zero);
        *entry += delta;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "forms live on different dimensions");
        assert_eq!(self.degree, other.degree, "forms have different degrees");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        let coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        Self { dim: self.dim, degree: self.degree, coeffs }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "forms live on different dimensions");
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        if out.degree > self.dim {
            return out;
        }
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(&idx, x * y);
            }
        }
        out
    }

    /// `ω(X_1, …, X_k) = Σ_I a_I det[X_j(i)]_{i ∈ I}`.
    pub fn evaluate(&self, vectors: &[Vec<Scalar>]) -> Result<Scalar> {
        if vectors.len() != self.degree {
            return Err(Error::DimensionMismatch { expected: self.degree, got: vectors.len() });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        let mut total = Scalar::zero();
        for (idx, c) in &self.coeffs {
            let m = Matrix::from_fn(self.degree, self.degree, |r, s| vectors[s][idx[r]].clone());
            total += c * &m.det();
        }
        Ok(total)
    }

    /// Pullback `(M^*ω)(X_1, …) = ω(M X_1, …)`.
    pub fn pullback(&self, m: &Matrix<Scalar>) -> Self {
        assert!(m.rows() == self.dim && m.cols() == self.dim, "pullback by a non-square or wrong-size map");
        let images: Vec<Vec<Scalar>> = (0..self.dim).map(|j| m.column(j)).collect();
        let coords: Vec<Scalar> = basis_tuples(self.dim, self.degree)
            .iter()
            .map(|t| {
                let vs: Vec<Vec<Scalar>> = t.iter().map(|&j| images[j].clone()).collect();
                self.evaluate(&vs).expect("arity checked")
            })
            .collect();
        Self::from_coords(self.dim, self.degree, &coords)
    }

    /// The antisymmetric Gram matrix `ω(e_i, e_j)` of a 2-form.
    pub fn gram(&self) -> Matrix<Scalar> {
        assert_eq!(self.degree, 2, "gram is defined for 2-forms");
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (idx, c) in &self.coeffs {
            m.set(idx[0], idx[1], c.clone());
            m.set(idx[1], idx[0], -c.clone());
        }
        m
    }

    /// Coefficient of the top form `e^1 ∧ … ∧ e^n`.
    pub fn top_coefficient(&self) -> Scalar {
        assert_eq!(self.degree, self.dim, "not a top-degree form");
        self.coeff(&(0..self.dim).collect::<Vec<_>>())
    }
}

/// Renders `e^{1}∧e^{3}` as `e13`, or `e(1,10)` once an index exceeds 9.
pub fn basis_label(idx: &[usize], dim: usize) -> String {
    if idx.is_empty() {
        return "1".to_string();
    }
    if dim <= 9 {
        format!("e{}", idx.iter().map(|i| (i + 1).to_string()).collect::<String>())
    } else {
        format!("e({})", idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (idx, c)) in self.coeffs.iter().enumerate() {
            let label = basis_label(idx, self.dim);
            let mag = c.abs();
            let sep = match (n, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            if mag.is_one() {
                write!(f, "{sep}{label}")?;
            } else {
                write!(f, "{sep}{mag}*{label}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{}>({})", self.degree, self)
    }
}

impl serde::Serialize for KForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
