//! General forms `⟨U(t), V(t)⟩` of complex subalgebras, affine in free
//! Gaussian-rational coefficients `t`, with an open condition on `t`.

use std::collections::BTreeSet;

use serde::Serialize;

use super::subalgebra::{is_direct_sum, is_subalgebra};
use crate::error::{Error, Result};
use crate::expr::{to_vector, Cond, Env, Expr, GPoly};
use crate::lie::LieAlgebra;
use crate::linalg::{span_basis, Field, GaussianScalar, Matrix, Scalar};

type G = GaussianScalar;

/// A template with parameters and the sign `ε` already substituted.
#[derive(Clone, Debug)]
pub struct TemplateInstance {
    pub label: String,
    u: Vec<GPoly>,
    v: Vec<GPoly>,
    constraint: Cond,
    /// Parameters and `eps`, merged into every assignment.
    base: Env,
    free: Vec<String>,
}

/// Outcome of checking one coefficient assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralFormVerdict {
    pub constraint: bool,
    pub closed: bool,
    pub direct_sum: bool,
}

impl GeneralFormVerdict {
    pub fn pass(&self) -> bool {
        self.constraint && self.closed && self.direct_sum
    }
}

impl TemplateInstance {
    pub fn new(label: impl Into<String>, u: &Expr, v: &Expr, constraint: Cond, base: Env, dim: usize) -> Result<Self> {
        let u = to_vector(&u.eval(&base)?, dim)?;
        let v = to_vector(&v.eval(&base)?, dim)?;
        let mut free = BTreeSet::new();
        for p in u.iter().chain(&v) {
            if p.total_degree() > 1 {
                return Err(Error::Invalid(format!("template coefficient {p} is not affine")));
            }
            free.extend(p.variables());
        }
        Ok(Self { label: label.into(), u, v, constraint, base, free: free.into_iter().collect() })
    }

    pub fn free_variables(&self) -> &[String] {
        &self.free
    }

    fn full_env(&self, assign: &Env) -> Env {
        let mut env = self.base.clone();
        env.extend(assign.iter().map(|(k, v)| (k.clone(), v.clone())));
        env
    }

    /// `(U, V)` at an assignment of every free variable.
    pub fn evaluate(&self, assign: &Env) -> Result<(Vec<G>, Vec<G>)> {
        let eval = |w: &[GPoly]| -> Result<Vec<G>> {
            w.iter()
                .map(|p| {
                    p.substitute(assign)
                        .as_constant()
                        .ok_or_else(|| Error::Invalid(format!("unassigned coefficients in {p}")))
                })
                .collect()
        };
        Ok((eval(&self.u)?, eval(&self.v)?))
    }

    pub fn constraint_holds(&self, assign: &Env) -> Result<bool> {
        self.constraint.eval(&self.full_env(assign))
    }

    pub fn verify(&self, g: &LieAlgebra, assign: &Env) -> Result<GeneralFormVerdict> {
        let (u, v) = self.evaluate(assign)?;
        Ok(GeneralFormVerdict {
            constraint: self.constraint_holds(assign)?,
            closed: is_subalgebra(g, &u, &v).closed,
            direct_sum: is_direct_sum(&u, &v),
        })
    }

    /// Coordinates `(p, q)` with `U_p = 1, V_p = 0, U_q = 0, V_q = 1`
    /// identically, which normalise any member span.
    fn pivots(&self) -> Option<(usize, usize)> {
        let one = GPoly::constant(G::one());
        let n = self.u.len();
        let p = (0..n).find(|&k| self.u[k] == one && self.v[k].is_zero())?;
        let q = (0..n).find(|&k| k != p && self.v[k] == one && self.u[k].is_zero())?;
        Some((p, q))
    }

    /// An assignment satisfying the constraint whose span is `span{a, b}`.
    pub fn find_member(&self, a: &[G], b: &[G]) -> Result<Option<Env>> {
        let n = self.u.len();
        let (p, q) = self.pivots().ok_or_else(|| Error::Invalid(format!("template {} has no pivot coordinates", self.label)))?;
        let s = span_basis(n, &[a.to_vec(), b.to_vec()]);
        if s.len() != 2 {
            return Ok(None);
        }
        let minor = Matrix::from_rows(vec![vec![s[0][p].clone(), s[1][p].clone()], vec![s[0][q].clone(), s[1][q].clone()]]);
        let Some(inv) = minor.inverse() else { return Ok(None) };
        let comb = |x: &G, y: &G| -> Vec<G> { (0..n).map(|k| x.clone() * s[0][k].clone() + y.clone() * s[1][k].clone()).collect() };
        let target_u = comb(inv.get(0, 0), inv.get(1, 0));
        let target_v = comb(inv.get(0, 1), inv.get(1, 1));

        // affine system: coefficient rows over the free variables
        let m = self.free.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (polys, target) in [(&self.u, &target_u), (&self.v, &target_v)] {
            for k in 0..n {
                let (parts, rest) = polys[k].linear_split(|x| self.free.iter().any(|f| f == x)).expect("affine");
                let c = rest.as_constant().expect("constant part");
                let mut row = vec![G::zero(); m];
                for (name, coeff) in parts {
                    let idx = self.free.iter().position(|f| *f == name).expect("free");
                    row[idx] = coeff.as_constant().expect("affine coefficients are constants");
                }
                rows.push(row);
                rhs.push(target[k].clone() - c);
            }
        }
        let assign_of = |x: &[G]| -> Env { self.free.iter().cloned().zip(x.iter().cloned()).collect() };
        if m == 0 {
            let ok = rhs.iter().all(|r| r.is_zero());
            return Ok(if ok && self.constraint_holds(&Env::new())? { Some(Env::new()) } else { None });
        }
        let mat = Matrix::from_rows(rows);
        let Some(x0) = mat.solve(&rhs) else { return Ok(None) };
        if self.constraint_holds(&assign_of(&x0))? {
            return Ok(Some(assign_of(&x0)));
        }
        // the particular solution may sit on the excluded locus; try a few kernel shifts
        let steps = [G::one(), G::i(), G::new(Scalar::one(), Scalar::one()), -G::one()];
        for kv in mat.nullspace() {
            for t in &steps {
                let x: Vec<G> = x0.iter().zip(&kv).map(|(a, b)| a.clone() + t.clone() * b.clone()).collect();
                if self.constraint_holds(&assign_of(&x))? {
                    return Ok(Some(assign_of(&x)));
                }
            }
        }
        Ok(None)
    }

    /// Deterministic sample assignments, generic in every free variable.
    pub fn sample_points(&self, count: usize) -> Vec<Env> {
        let pool = generic_pool();
        let m = self.free.len();
        (0..count)
            .map(|k| self.free.iter().enumerate().map(|(j, name)| (name.clone(), pool[(k * (m + 1) + 3 * j) % pool.len()].clone())).collect())
            .collect()
    }
}

/// Gaussian rationals with nonzero, pairwise distinct real and imaginary parts.
pub fn generic_pool() -> Vec<G> {
    let g = |a: i64, b: i64, c: i64, d: i64| G::new(crate::linalg::q(a, b), crate::linalg::q(c, d));
    vec![
        g(1, 1, 2, 1),
        g(-1, 1, 1, 1),
        g(2, 1, -1, 1),
        g(1, 2, 3, 2),
        g(-3, 1, 1, 3),
        g(3, 1, 5, 2),
        g(-1, 2, -2, 1),
        g(5, 3, -1, 4),
        g(-2, 1, 3, 1),
        g(1, 3, -5, 3),
        g(4, 1, 1, 2),
        g(-5, 2, -3, 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{env_from_params, parse_cond, parse_expr};
    use crate::lie::{catalog_build, CaseId, Params};
    use crate::linalg::q;

    fn inst(case: CaseId, params: &Params, u: &str, v: &str, cond: &str, eps: Option<i64>) -> (LieAlgebra, TemplateInstance) {
        let g = catalog_build(case, params).unwrap();
        let mut env = env_from_params(params);
        if let Some(e) = eps {
            env.insert("eps".into(), G::real(Scalar::from(e)));
        }
        let t = TemplateInstance::new("t", &parse_expr(u).unwrap(), &parse_expr(v).unwrap(), parse_cond(cond).unwrap(), env, 4).unwrap();
        (g, t)
    }

    fn assign(pairs: &[(&str, G)]) -> Env {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn heisenberg_template() {
        let (g, t) = inst(CaseId::Rh3, &Params::new(), "e1 + b1*e2 + d1*e4", "e3 + d2*e4", "im(b1)*im(d2) != 0", None);
        assert_eq!(t.free_variables(), ["b1", "d1", "d2"]);
        let at = assign(&[("b1", G::i()), ("d1", G::zero()), ("d2", G::i())]);
        assert!(t.verify(&g, &at).unwrap().pass());
        let real = assign(&[("b1", G::one()), ("d1", G::zero()), ("d2", G::i())]);
        let v = t.verify(&g, &real).unwrap();
        assert!(!v.constraint && !v.direct_sum && v.closed);
        for p in t.sample_points(5) {
            assert!(t.verify(&g, &p).unwrap().pass());
        }
        // ⟨e1 + ie2, e3 + ie4⟩ written in another basis of the same span
        let a: Vec<G> = vec![G::one(), G::i(), G::one(), G::i()];
        let b: Vec<G> = vec![G::zero(), G::zero(), G::new(q(2, 1), q(0, 1)), G::new(q(0, 1), q(2, 1))];
        let found = t.find_member(&a, &b).unwrap().unwrap();
        assert_eq!(found["b1"], G::i());
        assert_eq!(found["d2"], G::i());
        assert!(t.find_member(&[G::one(), G::zero(), G::zero(), G::zero()], &b).unwrap().is_none());
    }

    #[test]
    fn d42_template() {
        let params = Params::from([("lambda".to_string(), q(2, 1))]);
        let (g, t) = inst(CaseId::D4Lambda, &params, "e4 - lambda*c2*e1 + c1*e3", "e2 + c2*e3", "im(c2) != 0", None);
        let at = assign(&[("c1", G::zero()), ("c2", G::i())]);
        assert!(t.verify(&g, &at).unwrap().pass());
    }

    #[test]
    fn eps_substitution() {
        let (g, t) = inst(CaseId::R2p, &Params::new(), "e1 + eps*i*e2 + d1*e4", "e3 - eps*i*e4", "", Some(-1));
        assert_eq!(t.free_variables(), ["d1"]);
        let (u, v) = t.evaluate(&assign(&[("d1", G::zero())])).unwrap();
        assert_eq!(u[1], -G::i());
        assert_eq!(v[3], G::i());
        assert!(t.verify(&g, &assign(&[("d1", G::one())])).unwrap().pass());
    }
}
