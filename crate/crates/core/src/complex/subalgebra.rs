use serde::Serialize;

use super::structure::{complexify, AlmostComplexStructure};
use crate::error::{Error, Result};
use crate::lie::{format_vector, LieAlgebra};
use crate::linalg::{span_basis, Field, GaussianScalar, Matrix, Scalar};

type G = GaussianScalar;

/// Two vectors `U, V` of 𝔤^ℂ spanning a candidate complex subalgebra.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexSubalgebra {
    #[serde(serialize_with = "ser_vec")]
    pub u: Vec<G>,
    #[serde(serialize_with = "ser_vec")]
    pub v: Vec<G>,
    /// `β` when `[U, V] = βV`.
    #[serde(serialize_with = "ser_opt")]
    pub beta: Option<G>,
}

fn ser_vec<S: serde::Serializer>(v: &[G], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_vector(v))
}

fn ser_opt<S: serde::Serializer>(v: &Option<G>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_string()),
        None => s.serialize_none(),
    }
}

impl ComplexSubalgebra {
    pub fn new(u: Vec<G>, v: Vec<G>) -> Self {
        Self { u, v, beta: None }
    }

    pub fn describe(&self) -> String {
        format!("<{}, {}>", format_vector(&self.u), format_vector(&self.v))
    }

    /// Reduced echelon basis of the span, used as a canonical key.
    pub fn span(&self) -> Vec<Vec<G>> {
        span_basis(self.u.len(), &[self.u.clone(), self.v.clone()])
    }
}

pub fn conj(v: &[G]) -> Vec<G> {
    v.iter().map(G::conj).collect()
}

/// Result of the closure test `[U, V] ∈ span{U, V}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Closure {
    pub closed: bool,
    /// `span{U, V}` has dimension < 2.
    pub degenerate: bool,
    #[serde(serialize_with = "ser_vec")]
    pub bracket: Vec<G>,
    /// `(a, b)` with `[U, V] = aU + bV`.
    #[serde(skip)]
    pub coefficients: Option<(G, G)>,
}

impl Closure {
    /// `β` if `[U, V] = βV`.
    pub fn beta(&self) -> Option<G> {
        match &self.coefficients {
            Some((a, b)) if a.is_zero() => Some(b.clone()),
            _ => None,
        }
    }
}

pub fn is_subalgebra(g: &LieAlgebra, u: &[G], v: &[G]) -> Closure {
    let n = g.dim();
    let w = g.bracket_in(u, v);
    let basis = span_basis(n, &[u.to_vec(), v.to_vec()]);
    let degenerate = basis.len() < 2;
    let m = Matrix::from_columns(n, &[u.to_vec(), v.to_vec()]);
    let coefficients = if degenerate {
        None
    } else {
        m.solve(&w).map(|x| (x[0].clone(), x[1].clone()))
    };
    let closed = if degenerate {
        // a line is always closed; the zero-dimensional span trivially so
        basis.is_empty() || crate::linalg::in_span(n, &basis, &w)
    } else {
        coefficients.is_some()
    };
    Closure { closed, degenerate, bracket: w, coefficients }
}

/// `det[U, V, σU, σV] ≠ 0` over ℚ(i).
pub fn is_direct_sum(u: &[G], v: &[G]) -> bool {
    if u.len() != 4 {
        return false;
    }
    !Matrix::from_columns(4, &[u.to_vec(), v.to_vec(), conj(u), conj(v)]).det().is_zero()
}

/// Same condition via real parts: `Re U, Im U, Re V, Im V` are a basis of 𝔤.
pub fn is_direct_sum_real(u: &[G], v: &[G]) -> bool {
    let n = u.len();
    let part = |x: &[G], im: bool| -> Vec<Scalar> { x.iter().map(|z| if im { z.im.clone() } else { z.re.clone() }).collect() };
    let cols = [part(u, false), part(u, true), part(v, false), part(v, true)];
    n == 4 && span_basis(n, &cols).len() == 4
}

/// The J with `JX = −iX` on `q` and `JσX = iσX`.
pub fn j_from_subalgebra(q: &ComplexSubalgebra) -> Result<AlmostComplexStructure> {
    let n = q.u.len();
    let p = Matrix::from_columns(n, &[q.u.clone(), q.v.clone(), conj(&q.u), conj(&q.v)]);
    let inv = p.inverse().ok_or(Error::NotDirectSum)?;
    let minus_i = -G::i();
    let d = Matrix::from_fn(n, n, |r, c| if r != c { G::zero() } else if r < 2 { minus_i.clone() } else { G::i() });
    let jc = p.mul(&d).mul(&inv);
    let mut real = Matrix::<Scalar>::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let z = jc.get(r, c);
            debug_assert!(z.is_real(), "σ-invariant construction yields a real matrix");
            real.set(r, c, z.re.clone());
        }
    }
    AlmostComplexStructure::new(real)
}

/// Basis of the `−i`-eigenspace of J in 𝔤^ℂ.
pub fn eigenspace(j: &AlmostComplexStructure) -> ComplexSubalgebra {
    let n = j.dim();
    let shifted = complexify(j).add(&Matrix::identity(n).scale(&G::i()));
    let mut ns = shifted.nullspace();
    assert_eq!(ns.len(), n / 2, "J² = −Id splits 𝔤^ℂ evenly");
    let v = ns.pop().expect("nonempty");
    let u = ns.pop().expect("nonempty");
    ComplexSubalgebra::new(u, v)
}

/// The complex subalgebra of an integrable J; fails with the non-closing bracket.
pub fn subalgebra_from_j(g: &LieAlgebra, j: &AlmostComplexStructure) -> Result<ComplexSubalgebra> {
    let mut q = eigenspace(j);
    let c = is_subalgebra(g, &q.u, &q.v);
    if !c.closed {
        return Err(Error::NotIntegrable(format!(
            "[{}, {}] = {} leaves the eigenspace",
            format_vector(&q.u),
            format_vector(&q.v),
            format_vector(&c.bracket)
        )));
    }
    q.beta = c.beta();
    Ok(q)
}

/// Integrability decided by closure of the eigenspace, independently of N_J.
pub fn is_integrable_by_eigenspace(g: &LieAlgebra, j: &AlmostComplexStructure) -> bool {
    let q = eigenspace(j);
    is_subalgebra(g, &q.u, &q.v).closed
}

/// `q` is abelian: `[U, V] = 0`.
pub fn is_abelian_subalgebra(g: &LieAlgebra, q: &ComplexSubalgebra) -> bool {
    g.bracket_in(&q.u, &q.v).iter().all(Field::is_zero)
}

/// `[q, σq] = 0`, the eigenspace form of `J ∘ ad_X = ad_{JX}`.
pub fn commutes_with_conjugate(g: &LieAlgebra, q: &ComplexSubalgebra) -> bool {
    let (su, sv) = (conj(&q.u), conj(&q.v));
    [(&q.u, &su), (&q.u, &sv), (&q.v, &su), (&q.v, &sv)]
        .iter()
        .all(|(a, b)| g.bracket_in(a, b).iter().all(Field::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::structure::{is_integrable, nijenhuis_defect};
    use crate::linalg::q;
    use crate::lie::{catalog_build, CaseId, Params};

    fn alg(case: CaseId) -> LieAlgebra {
        catalog_build(case, &Params::new()).unwrap()
    }

    fn gv(re: &[i64], im: &[i64]) -> Vec<G> {
        re.iter().zip(im).map(|(&a, &b)| G::new(q(a, 1), q(b, 1))).collect()
    }

    fn same_eigenspace(a: &ComplexSubalgebra, b: &ComplexSubalgebra) -> bool {
        a.span() == b.span()
    }

    #[test]
    fn heisenberg_standard_q() {
        let g = alg(CaseId::Rh3);
        let (u, v) = (gv(&[1, 0, 0, 0], &[0, 1, 0, 0]), gv(&[0, 0, 1, 0], &[0, 0, 0, 1]));
        let c = is_subalgebra(&g, &u, &v);
        assert!(c.closed && !c.degenerate);
        assert!(c.bracket.iter().all(Field::is_zero));
        assert!(is_direct_sum(&u, &v) && is_direct_sum_real(&u, &v));
        let sub = ComplexSubalgebra::new(u.clone(), v.clone());
        let j = j_from_subalgebra(&sub).unwrap();
        assert_eq!(j.images(), "e1->e2, e2->-e1, e3->e4, e4->-e3");
        assert!(is_integrable(&g, &j).unwrap());
        let back = subalgebra_from_j(&g, &j).unwrap();
        assert!(same_eigenspace(&back, &sub));
        assert_eq!(j_from_subalgebra(&back).unwrap(), j);
        let scaled = ComplexSubalgebra::new(u.iter().map(|x| x.clone() * G::new(q(2, 1), q(-3, 1))).collect(), v);
        assert_eq!(j_from_subalgebra(&scaled).unwrap(), j);
    }

    #[test]
    fn r41_q() {
        let sub = ComplexSubalgebra::new(gv(&[0, 0, 0, 1], &[0, 0, 1, 0]), gv(&[1, 0, 0, 0], &[0, 1, 0, 0]));
        let j = j_from_subalgebra(&sub).unwrap();
        assert_eq!(j.matrix().column(3), vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)]);
        assert_eq!(j.matrix().column(0), vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn degenerate_and_failures() {
        let g = alg(CaseId::R2p);
        let u = gv(&[1, 0, 0, 0], &[0, 0, 1, 0]);
        let c = is_subalgebra(&g, &u, &[G::zero(), G::zero(), G::zero(), G::zero()]);
        assert!(c.closed && c.degenerate);
        assert!(is_subalgebra(&g, &u, &gv(&[0, 1, 0, 0], &[0, 0, 0, 1])).closed);
        let real = ComplexSubalgebra::new(gv(&[1, 0, 0, 0], &[0; 4]), gv(&[0, 1, 0, 0], &[0; 4]));
        assert!(matches!(j_from_subalgebra(&real), Err(Error::NotDirectSum)));
        let h = alg(CaseId::Rh3);
        let bad = AlmostComplexStructure::parse("e1->e3, e2->e4", 4).unwrap();
        assert!(matches!(subalgebra_from_j(&h, &bad), Err(Error::NotIntegrable(_))));
        assert!(nijenhuis_defect(&h, &bad).unwrap().is_some());
        assert!(!is_integrable_by_eigenspace(&h, &bad));
    }
}
