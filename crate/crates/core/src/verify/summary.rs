//! Cross-table summary: status counts, cross-classification, the abelian and
//! bi-invariant lists, the `J_{μ,ν}` scan on 𝔯'₂ and coverage gaps.

use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::ComplexFindings;
use super::forms::SymplecticFinding;
use super::kahler::KahlerFinding;
use super::{Status, VerificationRecord};
use crate::complex::AlmostComplexStructure;
use crate::error::Result;
use crate::forms::parse_form;
use crate::kahler::{aff_c_j, compatibility_transport_check, compatible_family, compatible_family_by_intersection, Transport};
use crate::lie::{catalog_build, catalog_build_unchecked, CaseId, Instance, LieAlgebra, Params};
use crate::linalg::{q, Matrix, Scalar};
use crate::symplectic::closed_two_forms;

#[derive(Clone, Debug, Serialize)]
pub struct CrossClass {
    pub symplectic_not_complex: Vec<String>,
    pub complex_not_symplectic: Vec<String>,
    /// Complex and symplectic, but every tested integrable J has an identically
    /// degenerate compatible family.
    pub complex_symplectic_not_kahler: Vec<(String, usize)>,
    pub kahler: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialStructures {
    pub abelian_found: Vec<String>,
    pub abelian_expected: Vec<String>,
    pub abelian_match: bool,
    pub biinvariant_found: Vec<String>,
    pub biinvariant_expected: Vec<String>,
    pub biinvariant_match: bool,
    /// `[e4,e1] = e1` with all else zero is isomorphic to `rr3_lambda(lambda=0)`.
    pub r400_isomorphic_to_rr30: bool,
    pub ambiguity: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineScan {
    pub points: usize,
    pub solvable: Vec<(String, String)>,
    pub routes_agree: bool,
    pub matches: bool,
    /// For `J1`, closedness allows `e12` but compatibility removes it.
    pub j1_drops_a12: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransportCheck {
    pub automorphism: String,
    pub result: Transport,
}

#[derive(Clone, Debug, Serialize)]
pub struct Gap {
    pub instance: String,
    pub has_row: bool,
    pub grid_hits: usize,
    pub uncovered: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub counts: BTreeMap<String, BTreeMap<Status, usize>>,
    pub cross: CrossClass,
    pub special: SpecialStructures,
    pub affine: AffineScan,
    pub transport: TransportCheck,
    /// Instances with no complex-subalgebra row, with their grid-search hit counts.
    pub omitted: Vec<(String, usize)>,
    pub gaps: Vec<Gap>,
    pub kahler_rows: Vec<KahlerAssignment>,
}

/// Instances a Kähler table row was matched to by recomputation.
#[derive(Clone, Debug, Serialize)]
pub struct KahlerAssignment {
    pub row: usize,
    pub label: String,
    pub instances: Vec<String>,
}

/// `φ[x, y] = [φx, φy]` on basis pairs, `φ` invertible.
pub fn is_isomorphism(g: &LieAlgebra, h: &LieAlgebra, phi: &Matrix<Scalar>) -> bool {
    let n = g.dim();
    if phi.inverse().is_none() || h.dim() != n {
        return false;
    }
    (0..n).all(|a| {
        (0..n).all(|b| {
            let lhs = phi.mul_vec(&g.basis_bracket(a, b));
            let rhs = h.bracket(&phi.column(a), &phi.column(b)).expect("matching dimension");
            lhs == rhs
        })
    })
}

fn r400_check() -> Result<bool> {
    let p = Params::from([("alpha".to_string(), q(0, 1)), ("beta".to_string(), q(0, 1))]);
    let g = catalog_build_unchecked(CaseId::R4AlphaBeta, &p)?;
    let h = catalog_build(CaseId::R3Lambda, &Params::from([("lambda".to_string(), q(0, 1))]))?;
    // e4 -> e1, e1 -> e2, e2 -> e3, e3 -> e4
    let images = [1usize, 2, 3, 0];
    let phi = Matrix::from_fn(4, 4, |r, c| if images[c] == r { Scalar::one() } else { Scalar::zero() });
    Ok(is_isomorphism(&g, &h, &phi))
}

fn affine_scan() -> Result<AffineScan> {
    let g = catalog_build(CaseId::R2p, &Params::new())?;
    let mus = [q(-2, 1), q(-1, 1), q(-1, 2), q(0, 1), q(1, 2), q(1, 1), q(2, 1)];
    let nus = [q(-2, 1), q(-1, 1), q(-1, 2), q(1, 2), q(1, 1), q(2, 1)];
    let mut solvable = Vec::new();
    let mut routes_agree = true;
    let mut points = 0;
    for mu in &mus {
        for nu in &nus {
            let j = aff_c_j(mu, nu)?;
            let a = compatible_family(&g, &j)?.witness().is_some();
            let b = compatible_family_by_intersection(&g, &j)?.witness().is_some();
            routes_agree &= a == b;
            points += 1;
            if a {
                solvable.push((mu.to_string(), nu.to_string()));
            }
        }
    }
    let matches = solvable == [("0".to_string(), "-1".to_string())];
    let j1 = AlmostComplexStructure::parse("e1->e3, e2->e4", 4)?;
    let e12 = parse_form("e12", 4)?;
    let j1_drops_a12 = closed_two_forms(&g)?.contains(&e12) && !compatible_family(&g, &j1)?.contains(&e12);
    Ok(AffineScan { points, solvable, routes_agree, matches, j1_drops_a12 })
}

fn transport() -> Result<TransportCheck> {
    let g = catalog_build(CaseId::R2p, &Params::new())?;
    let d = [q(1, 1), q(1, 1), q(2, 1), q(2, 1)];
    let x = Matrix::from_fn(4, 4, |r, c| if r == c { d[r].clone() } else { Scalar::zero() });
    let j1 = AlmostComplexStructure::parse("e1->e3, e2->e4", 4)?;
    let j2 = AlmostComplexStructure::new(x.mul(j1.matrix()).mul(&x.inverse().expect("diagonal, nonzero")))?;
    let w = compatible_family(&g, &j1)?.witness().expect("r'2 carries a Kähler pair for J1");
    Ok(TransportCheck { automorphism: "diag(1,1,2,2)".into(), result: compatibility_transport_check(&g, &j1, &j2, &x, &w)? })
}

pub(crate) fn build(
    instances: &[Instance],
    findings: &[(ComplexFindings, SymplecticFinding)],
    kahler: &[KahlerFinding],
    by_table: &BTreeMap<&str, Vec<VerificationRecord>>,
    rows_5_1: &[String],
) -> Result<Summary> {
    let mut counts: BTreeMap<String, BTreeMap<Status, usize>> = BTreeMap::new();
    for (t, recs) in by_table {
        let c = counts.entry(t.to_string()).or_default();
        for r in recs {
            *c.entry(r.status).or_default() += 1;
        }
    }
    let mut cross = CrossClass { symplectic_not_complex: vec![], complex_not_symplectic: vec![], complex_symplectic_not_kahler: vec![], kahler: vec![] };
    for k in kahler {
        match (k.complex, k.symplectic, k.kahler) {
            (false, true, _) => cross.symplectic_not_complex.push(k.instance.clone()),
            (true, false, _) => cross.complex_not_symplectic.push(k.instance.clone()),
            (true, true, false) => cross.complex_symplectic_not_kahler.push((k.instance.clone(), k.tested)),
            (true, true, true) => cross.kahler.push(k.instance.clone()),
            _ => {}
        }
    }

    let mut abelian_found = Vec::new();
    let mut biinvariant_found = Vec::new();
    let mut omitted = Vec::new();
    let mut gaps = Vec::new();
    for (inst, (cf, _)) in instances.iter().zip(findings) {
        if cf.abelian.is_some() {
            abelian_found.push(inst.name());
        }
        if cf.biinvariant.is_some() {
            biinvariant_found.push(inst.name());
        }
        if inst.case != CaseId::A4 && !cf.has_row {
            omitted.push((inst.name(), cf.grid_hits));
        }
        if (!cf.has_row && cf.grid_hits > 0) || !cf.uncovered.is_empty() {
            gaps.push(Gap { instance: inst.name(), has_row: cf.has_row, grid_hits: cf.grid_hits, uncovered: cf.uncovered.len() });
        }
    }
    let name = |c: CaseId, p: &str| -> Result<String> {
        Ok(crate::lie::instance_name(c, &if p.is_empty() { Params::new() } else { crate::lie::parse_params(p)? }))
    };
    let abelian_expected = vec![
        name(CaseId::A4, "")?,
        name(CaseId::R3Lambda, "lambda=0")?,
        name(CaseId::Rh3, "")?,
        name(CaseId::R2r2, "")?,
        name(CaseId::R2p, "")?,
        name(CaseId::D4Lambda, "lambda=1")?,
    ];
    let biinvariant_expected = vec![name(CaseId::A4, "")?, name(CaseId::R2p, "")?];
    let sorted = |v: &[String]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    let special = SpecialStructures {
        abelian_match: sorted(&abelian_found) == sorted(&abelian_expected),
        biinvariant_match: sorted(&biinvariant_found) == sorted(&biinvariant_expected),
        abelian_found,
        abelian_expected,
        biinvariant_found,
        biinvariant_expected,
        r400_isomorphic_to_rr30: r400_check()?,
        ambiguity: "the listed r_{4,0,0} lies outside the r4_alpha_beta range (alpha, beta != 0); read literally, \
                    [e4,e1] = e1 is isomorphic to rr3_lambda(lambda=0), which is where the search finds the abelian J"
            .into(),
    };

    let mut assigned: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for k in kahler {
        for r in &k.rows {
            assigned.entry(*r).or_default().push(k.instance.clone());
        }
    }
    let kahler_rows = rows_5_1.iter().enumerate().map(|(row, label)| KahlerAssignment { row, label: label.clone(), instances: assigned.remove(&row).unwrap_or_default() }).collect();
    Ok(Summary { counts, cross, special, affine: affine_scan()?, transport: transport()?, omitted, gaps, kahler_rows })
}
