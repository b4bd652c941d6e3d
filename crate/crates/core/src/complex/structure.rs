use std::fmt;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::expr::{parse_expr, to_vector, Env};
use crate::lie::{format_vector, unit, LieAlgebra};
use crate::linalg::{Field, GaussianScalar, Matrix, Scalar};

/// A real endomorphism with `J² = −Id`; column `j` is `J e_j`.
#[derive(Clone, PartialEq)]
pub struct AlmostComplexStructure {
    j: Matrix<Scalar>,
}

impl AlmostComplexStructure {
    pub fn new(j: Matrix<Scalar>) -> Result<Self> {
        let n = j.rows();
        if !j.is_square() || n % 2 != 0 {
            return Err(Error::NotAlmostComplex);
        }
        let minus = Matrix::<Scalar>::identity(n).scale(&-Scalar::one());
        if j.mul(&j) != minus {
            return Err(Error::NotAlmostComplex);
        }
        Ok(Self { j })
    }

    /// From images `J e_a = v_a` on half a basis; `J v_a = −e_a` fixes the rest.
    pub fn from_images(n: usize, images: &[(usize, Vec<Scalar>)]) -> Result<Self> {
        if images.len() * 2 != n {
            return Err(Error::Invalid(format!("need {} images to fix J in dimension {n}", n / 2)));
        }
        let mut src = Vec::new();
        let mut dst = Vec::new();
        for (a, v) in images {
            if *a >= n || v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len().max(*a + 1) });
            }
            src.push(unit::<Scalar>(n, *a));
            dst.push(v.clone());
        }
        for (a, v) in images {
            src.push(v.clone());
            dst.push(unit::<Scalar>(n, *a).iter().map(|x| -x.clone()).collect());
        }
        let s = Matrix::from_columns(n, &src);
        let inv = s.inverse().ok_or_else(|| Error::Invalid("the given images do not complete a basis".into()))?;
        Self::new(Matrix::from_columns(n, &dst).mul(&inv))
    }

    /// Parses `e1->e2, e3->e4` (an optional `J:` prefix is allowed).
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let body = text.trim();
        let body = body.strip_prefix("J:").unwrap_or(body);
        let mut images = Vec::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part
                .split_once("->")
                .ok_or_else(|| ParseError::new(format!("expected `ea->v` in `{part}`")))?;
            let src = parse_vector(lhs, n)?;
            let nonzero: Vec<usize> = (0..n).filter(|&k| !src[k].is_zero()).collect();
            if nonzero.len() != 1 || !src[nonzero[0]].is_one() {
                return Err(ParseError::new(format!("left side of `{part}` must be a basis vector")).into());
            }
            images.push((nonzero[0], parse_vector(rhs, n)?));
        }
        Self::from_images(n, &images)
    }

    /// Row-major list of `n²` entries.
    pub fn from_list(entries: &[Scalar]) -> Result<Self> {
        let n = (entries.len() as f64).sqrt() as usize;
        if n * n != entries.len() {
            return Err(Error::Invalid(format!("{} entries do not form a square matrix", entries.len())));
        }
        Self::new(Matrix::from_fn(n, n, |r, c| entries[r * n + c].clone()))
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.j
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.j.mul_vec(x)
    }

    pub fn apply_in<F: Field>(&self, x: &[F]) -> Vec<F> {
        let n = self.dim();
        (0..n)
            .map(|r| (0..n).fold(F::zero(), |acc, c| acc + F::from_scalar(self.j.get(r, c)) * x[c].clone()))
            .collect()
    }

    /// `J e_i` for every basis vector, as `e1->v1, …`.
    pub fn images(&self) -> String {
        (0..self.dim()).map(|i| format!("e{}->{}", i + 1, format_vector(&self.j.column(i)))).collect::<Vec<_>>().join(", ")
    }

    /// Shortest `ea->v` description: images of a basis half chosen greedily.
    pub fn short_images(&self) -> String {
        let n = self.dim();
        let mut chosen: Vec<usize> = Vec::new();
        let mut span: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..n {
            let mut trial = span.clone();
            trial.push(unit(n, i));
            trial.push(self.j.column(i));
            if crate::linalg::span_basis(n, &trial).len() == trial.len() {
                chosen.push(i);
                span = trial;
            }
        }
        chosen.iter().map(|&i| format!("e{}->{}", i + 1, format_vector(&self.j.column(i)))).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Debug for AlmostComplexStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J({})", self.images())
    }
}

impl fmt::Display for AlmostComplexStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_images())
    }
}

impl Serialize for AlmostComplexStructure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.short_images())
    }
}

fn parse_vector(text: &str, n: usize) -> Result<Vec<Scalar>> {
    let p = parse_expr(text)?.eval(&Env::new())?;
    to_vector(&p, n)?
        .into_iter()
        .map(|c| match c.as_constant() {
            Some(z) if z.is_real() => Ok(z.re),
            _ => Err(ParseError::new(format!("`{text}` is not a real vector")).into()),
        })
        .collect()
}

fn check_dims(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<()> {
    if g.dim() != j.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: j.dim() });
    }
    Ok(())
}

/// `N_J(X,Y) = [JX,JY] − [X,Y] − J[JX,Y] − J[X,JY]`.
pub fn nijenhuis(g: &LieAlgebra, j: &AlmostComplexStructure, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
    check_dims(g, j)?;
    let (jx, jy) = (j.apply(x), j.apply(y));
    let a = g.bracket(&jx, &jy)?;
    let b = g.bracket(x, y)?;
    let c = j.apply(&g.bracket(&jx, y)?);
    let d = j.apply(&g.bracket(x, &jy)?);
    Ok((0..g.dim()).map(|k| &a[k] - &b[k] - &c[k] - &d[k]).collect())
}

/// First basis pair `(i, j)` with `N_J(e_i, e_j) ≠ 0`.
pub fn nijenhuis_defect(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<Option<(usize, usize, Vec<Scalar>)>> {
    let n = g.dim();
    for a in 0..n {
        for b in a + 1..n {
            let v = nijenhuis(g, j, &unit(n, a), &unit(n, b))?;
            if v.iter().any(|x| !x.is_zero()) {
                return Ok(Some((a, b, v)));
            }
        }
    }
    Ok(None)
}

pub fn is_integrable(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<bool> {
    Ok(nijenhuis_defect(g, j)?.is_none())
}

/// `[JX, JY] = [X, Y]` on basis pairs.
pub fn is_abelian_structure(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<bool> {
    check_dims(g, j)?;
    let n = g.dim();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = g.bracket(&j.matrix().column(a), &j.matrix().column(b))?;
            if lhs != g.basis_bracket(a, b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `J ∘ ad(e_i) = ad(J e_i)` for every basis vector.
pub fn is_biinvariant(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<bool> {
    check_dims(g, j)?;
    let n = g.dim();
    for i in 0..n {
        let lhs = j.matrix().mul(&g.ad(&unit(n, i))?);
        let rhs = g.ad(&j.matrix().column(i))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complexified J as a matrix over ℚ(i).
pub(crate) fn complexify(j: &AlmostComplexStructure) -> Matrix<GaussianScalar> {
    j.matrix().map(|x| GaussianScalar::real(x.clone()))
}
