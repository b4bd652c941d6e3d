//! Closed and exact 2-forms, the Pfaffian, and symplectic existence.

use std::fmt;

use serde::Serialize;

use crate::cohomology::CochainComplex;
use crate::error::{Error, Result};
use crate::forms::{basis_label, basis_tuples, KForm};
use crate::lie::LieAlgebra;
use crate::linalg::{same_span, span_basis, Scalar};
use crate::poly::Poly;

/// `Pf(ω) = a12·a34 − a13·a24 + a14·a23`, so that `ω∧ω = 2·Pf·e1234`.
pub fn pfaffian(w: &KForm) -> Result<Scalar> {
    if w.dim() != 4 || w.degree() != 2 {
        return Err(Error::Invalid(format!("Pfaffian needs a 2-form in dimension 4, got degree {} in dimension {}", w.degree(), w.dim())));
    }
    let a = |i: usize, j: usize| w.coeff(&[i, j]);
    Ok(a(0, 1) * a(2, 3) - a(0, 2) * a(1, 3) + a(0, 3) * a(1, 2))
}

/// Nondegeneracy through the Gram matrix, independent of [`pfaffian`].
pub fn is_nondegenerate(w: &KForm) -> bool {
    !w.gram().det().is_zero()
}

/// A linear family `Σ t_k B_k` of 2-forms in reduced echelon form, with the
/// Pfaffian expanded in the coordinates `t_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormFamily {
    dim: usize,
    basis: Vec<KForm>,
    names: Vec<String>,
    pfaffian: Poly<Scalar>,
}

impl TwoFormFamily {
    /// Echelon-normalises the span of `forms`; coordinates are named after
    /// each basis form's leading term (`a13` for `e13 − e24`).
    pub fn from_forms(dim: usize, forms: &[KForm]) -> Self {
        let len = basis_tuples(dim, 2).len();
        let coords: Vec<Vec<Scalar>> = forms.iter().map(KForm::coords).collect();
        let echelon = span_basis(len, &coords);
        let tuples = basis_tuples(dim, 2);
        let basis: Vec<KForm> = echelon.iter().map(|v| KForm::from_coords(dim, 2, v)).collect();
        let names: Vec<String> = echelon
            .iter()
            .map(|v| {
                let p = v.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
                basis_label(&tuples[p], dim).replacen('e', "a", 1)
            })
            .collect();
        let pfaffian = if dim == 4 { pfaffian_poly(&basis, &names) } else { Poly::zero() };
        Self { dim, basis, names, pfaffian }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[KForm] {
        &self.basis
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Pf of the general member as a quadratic in the family coordinates.
    pub fn pfaffian(&self) -> &Poly<Scalar> {
        &self.pfaffian
    }

    pub fn assemble(&self, t: &[Scalar]) -> KForm {
        self.basis.iter().zip(t).fold(KForm::zero(self.dim_ambient(), 2), |acc, (b, c)| acc.add(&b.scale(c)))
    }

    fn dim_ambient(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, w: &KForm) -> bool {
        let len = basis_tuples(self.dim, 2).len();
        let coords: Vec<Vec<Scalar>> = self.basis.iter().map(KForm::coords).collect();
        crate::linalg::in_span(len, &coords, &w.coords())
    }

    /// Subspace equality with the span of `forms`.
    pub fn same_span_as(&self, forms: &[KForm]) -> bool {
        let len = basis_tuples(self.dim, 2).len();
        let a: Vec<Vec<Scalar>> = self.basis.iter().map(KForm::coords).collect();
        let b: Vec<Vec<Scalar>> = forms.iter().map(KForm::coords).collect();
        same_span(len, &a, &b)
    }

    /// `a12*e12 + a13*(e13 - e24)`.
    pub fn general_form(&self) -> String {
        if self.basis.is_empty() {
            return "0".to_string();
        }
        self.names
            .iter()
            .zip(&self.basis)
            .map(|(n, b)| if b.terms().count() == 1 && b.terms().next().unwrap().1.is_one() { format!("{n}*{b}") } else { format!("{n}*({b})") })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Deterministic nondegenerate member: a basis form, else a sum of two
    /// basis forms. `None` exactly when the Pfaffian quadratic vanishes.
    pub fn witness(&self) -> Option<KForm> {
        if self.pfaffian.is_zero() {
            return None;
        }
        for b in &self.basis {
            if !pfaffian(b).expect("dimension 4").is_zero() {
                return Some(b.clone());
            }
        }
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let w = self.basis[i].add(&self.basis[j]);
                if !pfaffian(&w).expect("dimension 4").is_zero() {
                    return Some(w);
                }
            }
        }
        unreachable!("a quadratic vanishing on all basis vectors and pairwise sums is zero")
    }
}

impl Serialize for TwoFormFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TwoFormFamily", 3)?;
        st.serialize_field("dim", &self.basis.len())?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("pfaffian", &self.pfaffian.to_string())?;
        st.end()
    }
}

fn pfaffian_poly(basis: &[KForm], names: &[String]) -> Poly<Scalar> {
    let a = |i: usize, j: usize| -> Poly<Scalar> {
        basis.iter().zip(names).fold(Poly::zero(), |acc, (b, n)| acc.add(&Poly::var(n).scale(&b.coeff(&[i, j]))))
    };
    a(0, 1).mul(&a(2, 3)).sub(&a(0, 2).mul(&a(1, 3))).add(&a(0, 3).mul(&a(1, 2)))
}

/// Symbolic Pfaffian of a 2-form whose coordinates are polynomials.
pub fn pfaffian_of_coords<F: crate::linalg::Field>(coords: &[Poly<F>]) -> Poly<F> {
    // lexicographic order: 12 13 14 23 24 34
    coords[0].mul(&coords[5]).sub(&coords[1].mul(&coords[4])).add(&coords[2].mul(&coords[3]))
}

/// Existence decision with its certificate.
#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub family: TwoFormFamily,
    pub exists: bool,
    /// Closed (or exact) form with `Pf ≠ 0` when `exists`.
    pub witness: Option<KForm>,
    /// When not `exists`: every coefficient of the Pfaffian quadratic is zero.
    pub zero_quadratic: bool,
}

impl Decision {
    fn of(family: TwoFormFamily) -> Self {
        let witness = family.witness();
        let zero_quadratic = family.pfaffian().is_zero();
        Self { exists: witness.is_some(), witness, zero_quadratic, family }
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "YES (witness {w})"),
            None => write!(f, "NO (Pfaffian quadratic is identically zero)"),
        }
    }
}

fn require_dim4(g: &LieAlgebra) -> Result<()> {
    if g.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: g.dim() });
    }
    Ok(())
}

/// `ker(d: Λ² → Λ³)`.
pub fn closed_two_forms(g: &LieAlgebra) -> Result<TwoFormFamily> {
    let cx = CochainComplex::of(g)?;
    Ok(closed_in(&cx))
}

/// The same kernel computed from the pointwise differential.
pub fn closed_two_forms_pointwise(g: &LieAlgebra) -> Result<TwoFormFamily> {
    let cx = CochainComplex::pointwise(g)?;
    Ok(closed_in(&cx))
}

fn closed_in(cx: &CochainComplex) -> TwoFormFamily {
    let forms: Vec<KForm> = cx.cocycles(2).iter().map(|v| KForm::from_coords(cx.dim(), 2, v)).collect();
    TwoFormFamily::from_forms(cx.dim(), &forms)
}

/// `im(d: Λ¹ → Λ²)`.
pub fn exact_two_forms(g: &LieAlgebra) -> Result<TwoFormFamily> {
    let cx = CochainComplex::of(g)?;
    let forms: Vec<KForm> = cx.coboundaries(2).iter().map(|v| KForm::from_coords(g.dim(), 2, v)).collect();
    Ok(TwoFormFamily::from_forms(g.dim(), &forms))
}

pub fn symplectic_exists(g: &LieAlgebra) -> Result<Decision> {
    require_dim4(g)?;
    Ok(Decision::of(closed_two_forms(g)?))
}

pub fn exact_symplectic_family(g: &LieAlgebra) -> Result<Decision> {
    require_dim4(g)?;
    Ok(Decision::of(exact_two_forms(g)?))
}
