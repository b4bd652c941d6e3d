use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{span_basis, Field, Matrix, Scalar};

/// Parameter assignment, e.g. `lambda = 1/2`.
pub type Params = BTreeMap<String, Scalar>;

/// A real Lie algebra given by structure constants on a fixed basis
/// `e_1..e_n`: `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
///
/// Indices are 0-based in the API and 1-based in every rendered string.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    name: String,
    params: Params,
    /// `c[(i * dim + j) * dim + k] = c^k_{ij}`.
    c: Vec<Scalar>,
    /// Nonzero `(i, j, k, c^k_{ij})` with `i < j`.
    nonzero: Vec<(usize, usize, usize, Scalar)>,
}

/// A nonzero cyclic Jacobi sum `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiDefect {
    pub indices: (usize, usize, usize),
    pub defect: Vec<Scalar>,
}

impl fmt::Display for JacobiDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, l) = self.indices;
        write!(f, "({},{},{}) -> {}", i + 1, j + 1, l + 1, format_vector(&self.defect))
    }
}

impl LieAlgebra {
    /// Builds an algebra from brackets `[e_i, e_j] = Σ coeff·e_k` listed for
    /// some ordered pairs; antisymmetric completion is automatic and
    /// unspecified brackets are zero.
    ///
    /// Repeating a pair (in either order) or bracketing `e_i` with itself is
    /// an error.
    pub fn from_brackets(
        dim: usize,
        name: impl Into<String>,
        params: Params,
        brackets: &[(usize, usize, Vec<(usize, Scalar)>)],
    ) -> Result<Self> {
        let mut c = vec![Scalar::zero(); dim * dim * dim];
        let mut seen = std::collections::BTreeSet::new();
        for (i, j, terms) in brackets {
            let (i, j) = (*i, *j);
            if i >= dim || j >= dim {
                return Err(Error::Invalid(format!("bracket index out of range in [{},{}]", i + 1, j + 1)));
            }
            if i == j {
                return Err(Error::Invalid(format!("[e{0},e{0}] is zero by antisymmetry", i + 1)));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Invalid(format!("duplicate bracket [{},{}]", i + 1, j + 1)));
            }
            for (k, coeff) in terms {
                if *k >= dim {
                    return Err(Error::Invalid(format!("basis index e{} out of range", k + 1)));
                }
                let at = (i * dim + j) * dim + k;
                c[at] = &c[at] + coeff;
                let back = (j * dim + i) * dim + k;
                c[back] = -c[at].clone();
            }
        }
        Ok(Self::from_constants(dim, name, params, c))
    }

    /// Raw constants `c[(i*dim + j)*dim + k]`; antisymmetry is not enforced
    /// here (see [`LieAlgebra::antisymmetry_defects`]).
    pub fn from_constants(dim: usize, name: impl Into<String>, params: Params, c: Vec<Scalar>) -> Self {
        assert_eq!(c.len(), dim * dim * dim);
        let mut nonzero = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in 0..dim {
                    let v = &c[(i * dim + j) * dim + k];
                    if !v.is_zero() {
                        nonzero.push((i, j, k, v.clone()));
                    }
                }
            }
        }
        Self { dim, name: name.into(), params, c, nonzero }
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_constants(dim, format!("a{dim}"), Params::new(), vec![Scalar::zero(); dim * dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `c^k_{ij}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero constants with `i < j`.
    pub fn nonzero_constants(&self) -> &[(usize, usize, usize, Scalar)] {
        &self.nonzero
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        (0..self.dim).map(|k| self.structure_constant(i, j, k).clone()).collect()
    }

    /// Bracket of two real vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(x.len())?;
        self.check_len(y.len())?;
        Ok(self.bracket_in(x, y))
    }

    /// Bracket over any extension field (used for 𝔤^ℂ). Panics on length mismatch.
    pub fn bracket_in<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        assert!(x.len() == self.dim && y.len() == self.dim, "vector length must equal algebra dimension");
        let mut out = vec![F::zero(); self.dim];
        for (i, j, k, c) in &self.nonzero {
            let (i, j) = (*i, *j);
            // x_i y_j - x_j y_i
            let mut w = F::zero();
            if !x[i].is_zero() && !y[j].is_zero() {
                w = x[i].clone() * y[j].clone();
            }
            if !x[j].is_zero() && !y[i].is_zero() {
                w = w - x[j].clone() * y[i].clone();
            }
            if !w.is_zero() {
                out[*k] = out[*k].clone() + F::from_scalar(c) * w;
            }
        }
        out
    }

    fn check_len(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got });
        }
        Ok(())
    }

    /// Pairs `(i, j, k)` where `c^k_{ij} ≠ -c^k_{ji}` or `c^k_{ii} ≠ 0`.
    pub fn antisymmetry_defects(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let a = self.structure_constant(i, j, k);
                    let b = self.structure_constant(j, i, k);
                    if !(a + b).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }

    /// Every nonvanishing cyclic Jacobi sum over `i < j < l`.
    pub fn jacobi_defect(&self) -> Vec<JacobiDefect> {
        let n = self.dim;
        let e = |i: usize| -> Vec<Scalar> { (0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect() };
        let full_bracket = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
            // Uses all constants, not only the i<j half, so that raw
            // non-antisymmetric input is still evaluated literally.
            let mut out = vec![Scalar::zero(); n];
            for a in 0..n {
                if x[a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if y[b].is_zero() {
                        continue;
                    }
                    let xy = &x[a] * &y[b];
                    for (k, slot) in out.iter_mut().enumerate() {
                        let c = self.structure_constant(a, b, k);
                        if !c.is_zero() {
                            *slot += &(c * &xy);
                        }
                    }
                }
            }
            out
        };
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let (ei, ej, el) = (e(i), e(j), e(l));
                    let t1 = full_bracket(&full_bracket(&ei, &ej), &el);
                    let t2 = full_bracket(&full_bracket(&ej, &el), &ei);
                    let t3 = full_bracket(&full_bracket(&el, &ei), &ej);
                    let sum: Vec<Scalar> = (0..n).map(|k| &t1[k] + &t2[k] + &t3[k]).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        out.push(JacobiDefect { indices: (i, j, l), defect: sum });
                    }
                }
            }
        }
        out
    }

    /// Fails with [`Error::JacobiFailure`] unless the constants define a Lie algebra.
    pub fn ensure_lie(&self) -> Result<()> {
        let anti = self.antisymmetry_defects();
        if let Some((i, j, k)) = anti.first() {
            return Err(Error::JacobiFailure {
                name: self.name.clone(),
                detail: format!("not antisymmetric at c^{}_{{{}{}}}", k + 1, i + 1, j + 1),
            });
        }
        let defects = self.jacobi_defect();
        if defects.is_empty() {
            Ok(())
        } else {
            let detail = defects.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; ");
            Err(Error::JacobiFailure { name: self.name.clone(), detail })
        }
    }

    /// Reduced echelon basis of 𝔤' = span{[e_i, e_j]}.
    pub fn derived_subalgebra(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim;
        let brackets: Vec<Vec<Scalar>> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.basis_bracket(i, j)).collect();
        span_basis(n, &brackets)
    }

    /// Matrix of `Y ↦ [X, Y]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix<Scalar>> {
        self.check_len(x.len())?;
        Ok(self.ad_in(x))
    }

    pub fn ad_in<F: Field>(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for col in 0..n {
            let e: Vec<F> = (0..n).map(|k| if k == col { F::one() } else { F::zero() }).collect();
            let v = self.bracket_in(x, &e);
            for (row, val) in v.into_iter().enumerate() {
                m.set(row, col, val);
            }
        }
        m
    }

    /// Whether the linear map `x` (columns = images of `e_j`) preserves brackets.
    pub fn is_automorphism(&self, x: &Matrix<Scalar>) -> bool {
        let n = self.dim;
        if x.rows() != n || x.cols() != n || x.det().is_zero() {
            return false;
        }
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let lhs = x.mul_vec(&self.basis_bracket(i, j));
                let rhs = self.bracket_in(&x.column(i), &x.column(j));
                lhs == rhs
            })
        })
    }

    /// Lists the bracket relations as `[e1,e2] = e3`-style strings, `i < j`.
    pub fn relations(&self) -> Vec<String> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.basis_bracket(i, j);
                if v.iter().any(|x| !x.is_zero()) {
                    out.push(format!("[e{},e{}] = {}", i + 1, j + 1, format_vector(&v)));
                }
            }
        }
        out
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.relations().join(", "))
    }
}

/// Renders a coordinate vector as `e1 - 1/2*e3`; zero renders as `0`.
pub fn format_vector<F: Field>(v: &[F]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let compound = s[1..].contains(['+', '-']);
        let (neg, body) = if !compound && s.starts_with('-') { (true, &s[1..]) } else { (false, s.as_str()) };
        let term = if body == "1" {
            format!("e{}", k + 1)
        } else if compound {
            format!("({body})*e{}", k + 1)
        } else {
            format!("{body}*e{}", k + 1)
        };
        match (out.is_empty(), neg) {
            (true, true) => out.push_str(&format!("-{term}")),
            (true, false) => out.push_str(&term),
            (false, true) => out.push_str(&format!(" - {term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Unit vector `e_i` of length `n`.
pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    (0..n).map(|k| if k == i { F::one() } else { F::zero() }).collect()
}
