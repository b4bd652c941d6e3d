//! Compatible pairs `(J, ω)`, Kähler existence and the induced metric.

use serde::Serialize;

use crate::cohomology::CochainComplex;
use crate::complex::{is_integrable, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::forms::{basis_tuples, KForm};
use crate::lie::LieAlgebra;
use crate::linalg::{Inertia, Matrix, Scalar};
use crate::symplectic::TwoFormFamily;

/// `ω(J·, J·)`.
pub fn j_pullback(w: &KForm, j: &AlmostComplexStructure) -> KForm {
    w.pullback(j.matrix())
}

pub fn is_compatible(w: &KForm, j: &AlmostComplexStructure) -> bool {
    j_pullback(w, j) == *w
}

/// Matrix of `ω ↦ ω(J·,J·) − ω` on `Λ²`.
fn compatibility_matrix(j: &AlmostComplexStructure) -> Matrix<Scalar> {
    let n = j.dim();
    let tuples = basis_tuples(n, 2);
    let cols: Vec<Vec<Scalar>> = tuples
        .iter()
        .map(|t| {
            let b = KForm::basis(n, t);
            j_pullback(&b, j).sub(&b).coords()
        })
        .collect();
    Matrix::from_columns(tuples.len(), &cols)
}

/// Closed 2-forms with `ω(J·,J·) = ω`, from the stacked linear system.
pub fn compatible_family(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<TwoFormFamily> {
    check(g, j)?;
    let cx = CochainComplex::of(g)?;
    let stacked = cx.d(2).vstack(&compatibility_matrix(j));
    let forms: Vec<KForm> = stacked.nullspace().iter().map(|v| KForm::from_coords(g.dim(), 2, v)).collect();
    Ok(TwoFormFamily::from_forms(g.dim(), &forms))
}

/// The same family as the intersection of the `J*`-fixed forms with the
/// pointwise-computed closed forms.
pub fn compatible_family_by_intersection(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<TwoFormFamily> {
    check(g, j)?;
    let cx = CochainComplex::pointwise(g)?;
    let len = basis_tuples(g.dim(), 2).len();
    let closed = cx.cocycles(2);
    let fixed = compatibility_matrix(j).nullspace();
    // Σ x_i c_i = Σ y_k f_k
    let mut cols = closed.clone();
    cols.extend(fixed.iter().map(|v| v.iter().map(|x| -x.clone()).collect::<Vec<_>>()));
    let system = Matrix::from_columns(len, &cols);
    let forms: Vec<KForm> = system
        .nullspace()
        .iter()
        .map(|x| {
            let mut acc = vec![Scalar::zero(); len];
            for (c, v) in x.iter().zip(&closed) {
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += c * b;
                }
            }
            KForm::from_coords(g.dim(), 2, &acc)
        })
        .collect();
    Ok(TwoFormFamily::from_forms(g.dim(), &forms))
}

fn check(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<()> {
    if g.dim() != j.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), got: j.dim() });
    }
    Ok(())
}

/// `φ(X, Y) = ω(X, JY)` and its signature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PseudoMetric {
    #[serde(skip)]
    pub phi: Matrix<Scalar>,
    pub signature: Inertia,
}

impl PseudoMetric {
    /// `φ(JX, JY) = φ(X, Y)`.
    pub fn is_j_invariant(&self, j: &AlmostComplexStructure) -> bool {
        j.matrix().transpose().mul(&self.phi).mul(j.matrix()) == self.phi
    }
}

pub fn metric_from(w: &KForm, j: &AlmostComplexStructure) -> Result<PseudoMetric> {
    if w.dim() != j.dim() || w.degree() != 2 {
        return Err(Error::Invalid("metric needs a 2-form of matching dimension".into()));
    }
    let phi = w.gram().mul(j.matrix());
    if !phi.is_symmetric() {
        return Err(Error::NotCompatible);
    }
    let signature = phi.inertia();
    Ok(PseudoMetric { phi, signature })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KahlerStatus {
    Kahler,
    /// Nondegenerate compatible closed form, but J is not integrable.
    AlmostKahler,
    /// The Pfaffian vanishes identically on the compatible family.
    NoCompatible,
}

#[derive(Clone, Debug, Serialize)]
pub struct KahlerReport {
    pub j: AlmostComplexStructure,
    pub integrable: bool,
    pub family: TwoFormFamily,
    pub status: KahlerStatus,
    pub witness: Option<KForm>,
    pub metric: Option<PseudoMetric>,
}

pub fn kahler_exists(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<KahlerReport> {
    let integrable = is_integrable(g, j)?;
    let family = compatible_family(g, j)?;
    let witness = family.witness();
    let status = match (&witness, integrable) {
        (None, _) => KahlerStatus::NoCompatible,
        (Some(_), true) => KahlerStatus::Kahler,
        (Some(_), false) => KahlerStatus::AlmostKahler,
    };
    let metric = witness.as_ref().map(|w| metric_from(w, j)).transpose()?;
    Ok(KahlerReport { j: j.clone(), integrable, family, status, witness, metric })
}

/// Result of transporting a compatible form along an intertwining automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transport {
    /// `(x⁻¹)*ω` is closed and compatible with `J₂`.
    pub transported: bool,
    /// `ω` itself is compatible with `J₂`.
    pub same_form: bool,
}

/// For `x ∈ Aut(𝔤)` with `x J₁ = J₂ x` and `ω` compatible with `J₁`.
pub fn compatibility_transport_check(
    g: &LieAlgebra,
    j1: &AlmostComplexStructure,
    j2: &AlmostComplexStructure,
    x: &Matrix<Scalar>,
    w: &KForm,
) -> Result<Transport> {
    if !g.is_automorphism(x) {
        return Err(Error::NotIntertwining("x is not a Lie algebra automorphism".into()));
    }
    if x.mul(j1.matrix()) != j2.matrix().mul(x) {
        return Err(Error::NotIntertwining("x J1 != J2 x".into()));
    }
    if !is_compatible(w, j1) {
        return Err(Error::NotCompatible);
    }
    let inv = x.inverse().expect("automorphisms are invertible");
    let moved = w.pullback(&inv);
    let cx = CochainComplex::of(g)?;
    Ok(Transport { transported: is_compatible(&moved, j2) && cx.is_closed(&moved) == cx.is_closed(w), same_form: is_compatible(w, j2) })
}

/// First diagonal automorphism `diag(d1..d4)`, entries from `values`, other than the identity.
pub fn diagonal_automorphism(g: &LieAlgebra, values: &[Scalar]) -> Option<Matrix<Scalar>> {
    let n = g.dim();
    let mut idx = vec![0usize; n];
    loop {
        let d: Vec<Scalar> = idx.iter().map(|&k| values[k].clone()).collect();
        let x = Matrix::from_fn(n, n, |r, c| if r == c { d[r].clone() } else { Scalar::zero() });
        if x != Matrix::identity(n) && g.is_automorphism(&x) {
            return Some(x);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < values.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `J_{μ,ν}` on 𝔯'₂: `Je1 = (μ/ν)e1 + ((μ²+ν²)/ν)e2`, `Je3 = e4`.
pub fn aff_c_j(mu: &Scalar, nu: &Scalar) -> Result<AlmostComplexStructure> {
    if nu.is_zero() {
        return Err(Error::Invalid("nu must be nonzero".into()));
    }
    let je1 = vec![mu / nu, &(mu * mu + nu * nu) / nu, Scalar::zero(), Scalar::zero()];
    let je3 = vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()];
    AlmostComplexStructure::from_images(4, &[(0, je1), (2, je3)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{j_from_subalgebra, ComplexSubalgebra};
    use crate::forms::parse_form;
    use crate::lie::{catalog_build, CaseId, Params};
    use crate::linalg::{q, Field, GaussianScalar};

    fn alg(case: CaseId, params: &[(&str, Scalar)]) -> LieAlgebra {
        let p: Params = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        catalog_build(case, &p).unwrap()
    }

    fn j(s: &str) -> AlmostComplexStructure {
        AlmostComplexStructure::parse(s, 4).unwrap()
    }

    fn f(s: &str) -> KForm {
        parse_form(s, 4).unwrap()
    }

    #[test]
    fn aff_c_j1_forces_a12_zero() {
        let g = alg(CaseId::R2p, &[]);
        let fam = compatible_family(&g, &j("e1->e3, e2->e4")).unwrap();
        assert!(fam.same_span_as(&[f("e13 - e24"), f("e14 + e23")]));
        assert_eq!(fam, compatible_family_by_intersection(&g, &j("e1->e3, e2->e4")).unwrap());
        let r = kahler_exists(&g, &j("e1->-e2, e3->e4")).unwrap();
        assert_eq!(r.status, KahlerStatus::Kahler);
        assert_eq!(r.family.dim(), 3);
    }

    #[test]
    fn abelian_and_heisenberg() {
        let a = alg(CaseId::A4, &[]);
        let fam = compatible_family(&a, &j("e1->e2, e3->e4")).unwrap();
        assert_eq!(fam.dim(), 4);
        assert!(fam.contains(&f("e12")) && fam.contains(&f("e34")) && fam.contains(&f("e13 + e24")));
        let h = alg(CaseId::Rh3, &[]);
        let r = kahler_exists(&h, &j("e1->e2, e3->e4")).unwrap();
        assert_eq!(r.status, KahlerStatus::Kahler);
        assert!(r.family.same_span_as(&[f("e12"), f("e13 + e24"), f("e14 - e23")]));
        assert_eq!(r.family.pfaffian().to_string(), "-a13^2 - a14^2");
    }

    #[test]
    fn d4_half() {
        let g = alg(CaseId::D4Lambda, &[("lambda", q(1, 2))]);
        let fam = compatible_family(&g, &j("e4->e3, e1->e2")).unwrap();
        assert!(fam.same_span_as(&[f("e12 - e34")]));
    }

    #[test]
    fn metrics() {
        let s = j("e1->e2, e3->e4");
        let m = metric_from(&f("e12 + e34"), &s).unwrap();
        assert_eq!(m.phi, Matrix::identity(4));
        assert_eq!((m.signature.positive, m.signature.negative), (4, 0));
        assert!(m.is_j_invariant(&s));
        let m = metric_from(&f("-e12 - e34"), &s).unwrap();
        assert_eq!((m.signature.positive, m.signature.negative), (0, 4));
        assert!(matches!(metric_from(&f("e13"), &s), Err(Error::NotCompatible)));
    }

    #[test]
    fn transport() {
        let g = alg(CaseId::R2p, &[]);
        let j1 = j("e1->e3, e2->e4");
        let w = f("e13 - e24");
        let id = Matrix::identity(4);
        assert_eq!(compatibility_transport_check(&g, &j1, &j1, &id, &w).unwrap(), Transport { transported: true, same_form: true });
        let x = diagonal_automorphism(&g, &[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(x, Matrix::from_fn(4, 4, |r, c| if r != c { q(0, 1) } else if r < 2 { q(1, 1) } else { q(2, 1) }));
        let j2 = AlmostComplexStructure::new(x.mul(j1.matrix()).mul(&x.inverse().unwrap())).unwrap();
        assert!(compatibility_transport_check(&g, &j1, &j2, &x, &w).unwrap().transported);
        assert!(compatibility_transport_check(&g, &j1, &j1, &x, &w).is_err());
    }

    #[test]
    fn aff_c_family_matches_eigenvectors() {
        for (mu, nu) in [(q(0, 1), q(-1, 1)), (q(1, 2), q(2, 1)), (q(-3, 1), q(1, 3))] {
            let direct = aff_c_j(&mu, &nu).unwrap();
            let b1 = GaussianScalar::new(mu.clone(), nu.clone());
            let gz = GaussianScalar::zero;
            let sub = ComplexSubalgebra::new(vec![GaussianScalar::one(), b1, gz(), gz()], vec![gz(), gz(), GaussianScalar::one(), GaussianScalar::i()]);
            assert_eq!(j_from_subalgebra(&sub).unwrap(), direct);
        }
        assert_eq!(aff_c_j(&q(0, 1), &q(-1, 1)).unwrap(), j("e1->-e2, e3->e4"));
    }
}
