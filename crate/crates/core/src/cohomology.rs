//! Chevalley–Eilenberg cohomology of the invariant-form complex.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{basis_tuples, ce_differential, ce_differential_pointwise, differential_matrix_with, KForm};
use crate::lie::LieAlgebra;
use crate::linalg::{rank_fraction_free, span_basis, Matrix, Scalar};

/// The matrices of `d: Λ^k → Λ^{k+1}` for `k = 0..=n`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dim: usize,
    d: Vec<Matrix<Scalar>>,
}

/// Outcome of an exactness test on a closed form.
#[derive(Clone, Debug, PartialEq)]
pub enum Exactness {
    Exact { primitive: KForm },
    /// Coordinates of the class in the basis of [`CochainComplex::representatives`].
    NotExact { class: Vec<Scalar> },
}

impl CochainComplex {
    /// Builds the complex from the structure-constant differential.
    pub fn of(g: &LieAlgebra) -> Result<Self> {
        g.ensure_lie()?;
        Ok(Self::build(g, ce_differential))
    }

    /// Builds the complex from the pointwise evaluation of the differential.
    pub fn pointwise(g: &LieAlgebra) -> Result<Self> {
        g.ensure_lie()?;
        Ok(Self::build(g, ce_differential_pointwise))
    }

    fn build(g: &LieAlgebra, differential: fn(&LieAlgebra, &KForm) -> KForm) -> Self {
        let d = (0..=g.dim()).map(|k| differential_matrix_with(g, k, differential)).collect();
        Self { dim: g.dim(), d }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Matrix of `d` on `Λ^k`, of shape `C(n,k+1) × C(n,k)`.
    pub fn d(&self, k: usize) -> &Matrix<Scalar> {
        &self.d[k]
    }

    fn rank_before(&self, k: usize, rank: fn(&Matrix<Scalar>) -> usize) -> usize {
        if k == 0 {
            0
        } else {
            rank(&self.d[k - 1])
        }
    }

    fn betti_with(&self, k: usize, rank: fn(&Matrix<Scalar>) -> usize) -> usize {
        let m = &self.d[k];
        m.cols() - rank(m) - self.rank_before(k, rank)
    }

    /// `dim ker d|Λ^k − rank d|Λ^{k−1}`.
    pub fn betti(&self, k: usize) -> usize {
        self.betti_with(k, Matrix::rank)
    }

    /// Betti number from fraction-free integer ranks.
    pub fn betti_fraction_free(&self, k: usize) -> usize {
        self.betti_with(k, rank_fraction_free)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.betti(k)).collect()
    }

    pub fn is_complex(&self) -> bool {
        (1..=self.dim).all(|k| self.d[k].mul(&self.d[k - 1]).is_zero())
    }

    /// Basis of closed k-forms, as coordinate vectors.
    pub fn cocycles(&self, k: usize) -> Vec<Vec<Scalar>> {
        self.d[k].nullspace()
    }

    /// Reduced echelon basis of exact k-forms, as coordinate vectors.
    pub fn coboundaries(&self, k: usize) -> Vec<Vec<Scalar>> {
        if k == 0 {
            return Vec::new();
        }
        let m = &self.d[k - 1];
        let cols: Vec<Vec<Scalar>> = (0..m.cols()).map(|c| m.column(c)).collect();
        span_basis(m.rows(), &cols)
    }

    fn reduce_mod_exact(&self, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for b in self.coboundaries(k) {
            let p = b.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(&b) {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    fn representative_vectors(&self, k: usize) -> Vec<Vec<Scalar>> {
        let len = basis_tuples(self.dim, k).len();
        let reduced: Vec<Vec<Scalar>> = self.cocycles(k).iter().map(|z| self.reduce_mod_exact(k, z)).collect();
        span_basis(len, &reduced)
    }

    /// Canonical class representatives: the reduced echelon basis of closed
    /// forms after reduction modulo the echelon basis of exact forms.
    pub fn representatives(&self, k: usize) -> Vec<KForm> {
        self.representative_vectors(k).iter().map(|v| KForm::from_coords(self.dim, k, v)).collect()
    }

    pub fn is_closed(&self, w: &KForm) -> bool {
        self.d[w.degree()].mul_vec(&w.coords()).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `[w]` in the basis of [`Self::representatives`].
    pub fn class_coordinates(&self, w: &KForm) -> Result<Vec<Scalar>> {
        self.check(w)?;
        let k = w.degree();
        let reps = self.representative_vectors(k);
        let reduced = self.reduce_mod_exact(k, &w.coords());
        let coords: Vec<Scalar> = reps
            .iter()
            .map(|r| {
                let p = r.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
                reduced[p].clone()
            })
            .collect();
        debug_assert!({
            let mut acc = vec![Scalar::zero(); reduced.len()];
            for (c, r) in coords.iter().zip(&reps) {
                for (a, x) in acc.iter_mut().zip(r) {
                    *a += c * x;
                }
            }
            acc == reduced
        });
        Ok(coords)
    }

    fn check(&self, w: &KForm) -> Result<()> {
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.dim() });
        }
        if !self.is_closed(w) {
            return Err(Error::NotClosed);
        }
        Ok(())
    }

    /// A primitive of `w` when it is exact, otherwise its class coordinates.
    pub fn is_exact(&self, w: &KForm) -> Result<Exactness> {
        self.check(w)?;
        let k = w.degree();
        if w.is_zero() {
            return Ok(Exactness::Exact { primitive: KForm::zero(self.dim, k.saturating_sub(1)) });
        }
        if k > 0 {
            if let Some(x) = self.d[k - 1].solve(&w.coords()) {
                return Ok(Exactness::Exact { primitive: KForm::from_coords(self.dim, k - 1, &x) });
            }
        }
        Ok(Exactness::NotExact { class: self.class_coordinates(w)? })
    }

    /// Whether the given closed k-forms are linearly independent modulo exact
    /// forms.
    pub fn independent_mod_exact(&self, forms: &[KForm]) -> bool {
        let Some(k) = forms.first().map(KForm::degree) else { return true };
        let len = basis_tuples(self.dim, k).len();
        let b = self.coboundaries(k);
        let mut all = b.clone();
        all.extend(forms.iter().map(KForm::coords));
        span_basis(len, &all).len() == b.len() + forms.len()
    }
}

/// Betti numbers and canonical representatives per degree.
#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub algebra: String,
    pub betti: Vec<usize>,
    pub representatives: Vec<Vec<KForm>>,
}

impl CohomologyReport {
    /// `[e14][e23]`, or `0` for a vanishing group.
    pub fn class_labels(&self, k: usize) -> String {
        class_labels(&self.representatives[k])
    }
}

pub fn class_labels(forms: &[KForm]) -> String {
    if forms.is_empty() {
        return "0".to_string();
    }
    forms.iter().map(|f| format!("[{f}]")).collect()
}

pub fn cohomology(g: &LieAlgebra) -> Result<CohomologyReport> {
    let cx = CochainComplex::of(g)?;
    Ok(CohomologyReport {
        algebra: g.name().to_string(),
        betti: cx.betti_numbers(),
        representatives: (0..=g.dim()).map(|k| cx.representatives(k)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::parse_form;
    use crate::lie::{catalog_build, grid_instances, CaseId, Params};

    fn build(case: CaseId) -> LieAlgebra {
        catalog_build(case, &Params::new()).unwrap()
    }

    fn f(s: &str) -> KForm {
        parse_form(s, 4).unwrap()
    }

    #[test]
    fn abelian_betti() {
        let r = cohomology(&build(CaseId::A4)).unwrap();
        assert_eq!(r.betti, vec![1, 4, 6, 4, 1]);
        let cx = CochainComplex::of(&build(CaseId::A4)).unwrap();
        assert!((0..=4).all(|k| cx.d(k).is_zero()));
    }

    #[test]
    fn heisenberg_line() {
        let r = cohomology(&build(CaseId::Rh3)).unwrap();
        assert_eq!(r.betti, vec![1, 3, 4, 3, 1]);
        assert_eq!(r.class_labels(1), "[e1][e2][e4]");
    }

    #[test]
    fn aff_c() {
        let g = build(CaseId::R2p);
        let cx = CochainComplex::of(&g).unwrap();
        assert_eq!(cx.d(2).rank(), 3);
        assert_eq!(cx.betti_numbers(), vec![1, 2, 1, 0, 0]);
        assert_eq!(class_labels(&cx.representatives(2)), "[e12]");
        assert_eq!(cx.is_exact(&f("e13 - e24")).unwrap(), Exactness::Exact { primitive: f("-e3") });
        assert_eq!(cx.is_exact(&f("e12")).unwrap(), Exactness::NotExact { class: vec![Scalar::one()] });
        assert!(matches!(cx.is_exact(&f("e34")), Err(Error::NotClosed)));
        assert_eq!(
            cx.is_exact(&KForm::zero(4, 2)).unwrap(),
            Exactness::Exact { primitive: KForm::zero(4, 1) }
        );
    }

    #[test]
    fn invariants_over_grid() {
        for inst in grid_instances() {
            let g = &inst.algebra;
            let cx = CochainComplex::of(g).unwrap();
            let b = cx.betti_numbers();
            assert_eq!(b[0], 1);
            let euler: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
            assert_eq!(euler, 0, "{}", inst.name());
            assert_eq!(b[1], 4 - g.derived_subalgebra().len(), "{}", inst.name());
            let px = CochainComplex::pointwise(g).unwrap();
            for k in 0..=4 {
                assert_eq!(cx.d(k), px.d(k));
                assert_eq!(cx.betti_fraction_free(k), b[k]);
                let reps = cx.representatives(k);
                assert_eq!(reps.len(), b[k]);
                assert!(reps.iter().all(|r| cx.is_closed(r)));
                assert!(cx.independent_mod_exact(&reps));
            }
            // unimodular algebras satisfy Poincaré duality
            let trace_free = (0..4).all(|i| (0..4).map(|j| g.structure_constant(i, j, j).clone()).sum::<Scalar>().is_zero());
            assert_eq!(b[4] == 1, trace_free, "{}", inst.name());
            if trace_free {
                assert!((0..=4).all(|k| b[k] == b[4 - k]), "{}", inst.name());
            }
        }
    }
}
