//! Exhaustive search of the `[U, V] = βV` ansatz over a finite coefficient grid.

use std::collections::BTreeSet;

use super::subalgebra::{is_direct_sum, ComplexSubalgebra};
use crate::lie::LieAlgebra;
use crate::linalg::{q, Field, GaussianScalar};

type G = GaussianScalar;

pub const DEFAULT_CAP: usize = 1_000_000;

/// `{0, ±1, ±i, ±(1+i)/2}`.
pub fn default_grid() -> Vec<G> {
    let h = G::new(q(1, 2), q(1, 2));
    vec![G::zero(), G::one(), -G::one(), G::i(), -G::i(), h.clone(), -h]
}

/// `{0, ±1, ±i}`.
pub fn small_grid() -> Vec<G> {
    vec![G::zero(), G::one(), -G::one(), G::i(), -G::i()]
}

pub fn grid_by_name(name: &str) -> Option<Vec<G>> {
    match name {
        "default" => Some(default_grid()),
        "small" => Some(small_grid()),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Distinct spans passing closure and the direct-sum test, in enumeration order.
    pub hits: Vec<ComplexSubalgebra>,
    pub examined: usize,
    pub truncated: bool,
}

fn span_key(q: &ComplexSubalgebra) -> String {
    q.span().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect::<Vec<_>>().join(";")
}

/// `U = e_p + Σ a_k e_k`, `V = Σ b_k e_k` (`k ≠ p`), with the first nonzero
/// coefficient of V equal to one. Pivots run `e4, e1, e2, e3`.
pub fn grid_search_subalgebras(g: &LieAlgebra, grid: &[G], cap: usize) -> SearchResult {
    let n = g.dim();
    assert_eq!(n, 4, "the ansatz is four-dimensional");
    let mut seen = BTreeSet::new();
    let mut hits = Vec::new();
    let mut examined = 0usize;
    for p in [3usize, 0, 1, 2] {
        let others: Vec<usize> = (0..n).filter(|&k| k != p).collect();
        let us = tuples(grid, 3);
        // V: leading coefficient one at position l, zeros before it
        let mut vs: Vec<Vec<G>> = Vec::new();
        for l in 0..3 {
            for tail in tuples(grid, 2 - l) {
                let mut c = vec![G::zero(); l];
                c.push(G::one());
                c.extend(tail);
                vs.push(c);
            }
        }
        for a in &us {
            let mut u = vec![G::zero(); n];
            u[p] = G::one();
            for (k, x) in others.iter().zip(a) {
                u[*k] = x.clone();
            }
            for b in &vs {
                if examined >= cap {
                    return SearchResult { hits, examined, truncated: true };
                }
                examined += 1;
                let mut v = vec![G::zero(); n];
                for (k, x) in others.iter().zip(b) {
                    v[*k] = x.clone();
                }
                if !closes(g, &u, &v, p, &others, b) || !is_direct_sum(&u, &v) {
                    continue;
                }
                let mut cand = ComplexSubalgebra::new(u.clone(), v.clone());
                if seen.insert(span_key(&cand)) {
                    let w = g.bracket_in(&u, &v);
                    if w[p].is_zero() {
                        let lead = lead_of(b, &others);
                        cand.beta = Some(w[lead].clone());
                    }
                    hits.push(cand);
                }
            }
        }
    }
    SearchResult { hits, examined, truncated: false }
}

fn lead_of(b: &[G], others: &[usize]) -> usize {
    let l = b.iter().position(|x| !x.is_zero()).expect("normalised V is nonzero");
    others[l]
}

/// `[U,V] = aU + bV` using `U_p = 1, V_p = 0` and the unit leading entry of V.
fn closes(g: &LieAlgebra, u: &[G], v: &[G], p: usize, others: &[usize], b: &[G]) -> bool {
    let w = g.bracket_in(u, v);
    let a = w[p].clone();
    let r: Vec<G> = w.iter().zip(u).map(|(x, y)| x.clone() - a.clone() * y.clone()).collect();
    let l = lead_of(b, others);
    let c = r[l].clone();
    r.iter().zip(v).all(|(x, y)| (x.clone() - c.clone() * y.clone()).is_zero())
}

fn tuples(grid: &[G], len: usize) -> Vec<Vec<G>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<G>| {
                grid.iter().map(move |x| {
                    let mut t = t.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Count of ansatz instances a full enumeration examines.
pub fn instance_count(grid_len: usize) -> usize {
    let g = grid_len;
    4 * g.pow(3) * (g * g + g + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::subalgebra::is_subalgebra;
    use crate::lie::{catalog_build, CaseId, Params};

    fn alg(case: CaseId) -> LieAlgebra {
        catalog_build(case, &Params::new()).unwrap()
    }

    #[test]
    fn filiform_has_none() {
        let r = grid_search_subalgebras(&alg(CaseId::N4), &small_grid(), DEFAULT_CAP);
        assert!(r.hits.is_empty());
        assert_eq!(r.examined, instance_count(5));
        assert!(!r.truncated);
    }

    #[test]
    fn heisenberg_hits_are_subalgebras() {
        let g = alg(CaseId::Rh3);
        let r = grid_search_subalgebras(&g, &small_grid(), DEFAULT_CAP);
        assert!(!r.hits.is_empty());
        for h in &r.hits {
            assert!(is_subalgebra(&g, &h.u, &h.v).closed);
            assert!(is_direct_sum(&h.u, &h.v));
        }
    }

    #[test]
    fn abelian_every_direct_sum_is_a_hit() {
        let g = alg(CaseId::A4);
        let grid = vec![G::zero(), G::i()];
        let r = grid_search_subalgebras(&g, &grid, DEFAULT_CAP);
        let keys: BTreeSet<String> = r.hits.iter().map(span_key).collect();
        // closure is automatic in 𝔞₄, so any direct-sum span found elsewhere is found here
        for case in [CaseId::Rh3, CaseId::R2p, CaseId::D4] {
            for h in grid_search_subalgebras(&alg(case), &grid, DEFAULT_CAP).hits {
                assert!(keys.contains(&span_key(&h)));
            }
        }
        assert!(!r.hits.is_empty());
    }

    #[test]
    fn cap_truncates() {
        let r = grid_search_subalgebras(&alg(CaseId::Rh3), &small_grid(), 100);
        assert!(r.truncated);
        assert_eq!(r.examined, 100);
    }
}
