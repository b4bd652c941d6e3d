//! The sixteen families of four-dimensional solvable real Lie algebras.
//!
//! Canonical ids are ASCII: `p` stands for a prime (`r3p_gamma` is 𝔯'_{3,γ}),
//! and the three-dimensional families `r3`, `r3_lambda`, `r3p_gamma` are
//! always the trivial extensions by a central `e4` (written 𝔯𝔯₃, 𝔯𝔯_{3,λ},
//! 𝔯𝔯'_{3,γ} in the later tables, occasionally misprinted as 𝔯𝔱).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{LieAlgebra, Params};
use crate::error::{Error, Result};
use crate::linalg::{q, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum CaseId {
    A4,
    Rh3,
    R3,
    R3Lambda,
    R3pGamma,
    R2r2,
    R2p,
    N4,
    R4,
    R4Mu,
    R4AlphaBeta,
    R4pGammaDelta,
    D4,
    D4Lambda,
    D4pDelta,
    H4,
}

impl From<CaseId> for &'static str {
    fn from(c: CaseId) -> Self {
        c.as_str()
    }
}

/// Alternative spellings accepted on input, mapped to canonical ids.
pub const LABEL_ALIASES: &[(&str, CaseId)] = &[
    ("rr3", CaseId::R3),
    ("rr3_lambda", CaseId::R3Lambda),
    ("rt3_lambda", CaseId::R3Lambda),
    ("rr3p_gamma", CaseId::R3pGamma),
    ("rt3p_gamma", CaseId::R3pGamma),
    ("aff_r_x_aff_r", CaseId::R2r2),
    ("aff_c", CaseId::R2p),
];

impl CaseId {
    pub const ALL: [CaseId; 16] = [
        CaseId::A4,
        CaseId::Rh3,
        CaseId::R3,
        CaseId::R3Lambda,
        CaseId::R3pGamma,
        CaseId::R2r2,
        CaseId::R2p,
        CaseId::N4,
        CaseId::R4,
        CaseId::R4Mu,
        CaseId::R4AlphaBeta,
        CaseId::R4pGammaDelta,
        CaseId::D4,
        CaseId::D4Lambda,
        CaseId::D4pDelta,
        CaseId::H4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::A4 => "a4",
            CaseId::Rh3 => "rh3",
            CaseId::R3 => "r3",
            CaseId::R3Lambda => "r3_lambda",
            CaseId::R3pGamma => "r3p_gamma",
            CaseId::R2r2 => "r2r2",
            CaseId::R2p => "r2p",
            CaseId::N4 => "n4",
            CaseId::R4 => "r4",
            CaseId::R4Mu => "r4_mu",
            CaseId::R4AlphaBeta => "r4_alpha_beta",
            CaseId::R4pGammaDelta => "r4p_gamma_delta",
            CaseId::D4 => "d4",
            CaseId::D4Lambda => "d4_lambda",
            CaseId::D4pDelta => "d4p_delta",
            CaseId::H4 => "h4",
        }
    }

    /// Printed family name.
    pub fn label(self) -> &'static str {
        match self {
            CaseId::A4 => "𝔞₄",
            CaseId::Rh3 => "𝔯𝔥₃",
            CaseId::R3 => "𝔯𝔯₃",
            CaseId::R3Lambda => "𝔯𝔯_{3,λ}",
            CaseId::R3pGamma => "𝔯𝔯'_{3,γ}",
            CaseId::R2r2 => "𝔯₂𝔯₂",
            CaseId::R2p => "𝔯'₂",
            CaseId::N4 => "𝔫₄",
            CaseId::R4 => "𝔯₄",
            CaseId::R4Mu => "𝔯_{4,μ}",
            CaseId::R4AlphaBeta => "𝔯_{4,α,β}",
            CaseId::R4pGammaDelta => "𝔯'_{4,γ,δ}",
            CaseId::D4 => "𝔡₄",
            CaseId::D4Lambda => "𝔡_{4,λ}",
            CaseId::D4pDelta => "𝔡'_{4,δ}",
            CaseId::H4 => "𝔥₄",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            CaseId::R3Lambda | CaseId::D4Lambda => &["lambda"],
            CaseId::R3pGamma => &["gamma"],
            CaseId::R4Mu => &["mu"],
            CaseId::R4AlphaBeta => &["alpha", "beta"],
            CaseId::R4pGammaDelta => &["gamma", "delta"],
            CaseId::D4pDelta => &["delta"],
            _ => &[],
        }
    }

    /// Human-readable parameter range.
    pub fn range_description(self) -> &'static str {
        match self {
            CaseId::R3Lambda => "-1 <= lambda <= 1",
            CaseId::R3pGamma => "gamma >= 0",
            CaseId::R4Mu => "mu real",
            CaseId::R4AlphaBeta => "alpha*beta != 0, -1 <= alpha <= beta <= 1",
            CaseId::R4pGammaDelta => "gamma real, delta > 0",
            CaseId::D4Lambda => "lambda >= 1/2",
            CaseId::D4pDelta => "delta >= 0",
            _ => "-",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        CaseId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .or_else(|| LABEL_ALIASES.iter().find(|(a, _)| *a == s).map(|(_, c)| *c))
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

fn param(case: CaseId, params: &Params, name: &str) -> Result<Scalar> {
    params
        .get(name)
        .cloned()
        .ok_or_else(|| Error::MissingParameter { case: case.to_string(), param: name.to_string() })
}

/// Validates the parameter constraints of the family.
pub fn check_range(case: CaseId, params: &Params) -> Result<()> {
    let expected = case.param_names();
    if let Some(extra) = params.keys().find(|k| !expected.contains(&k.as_str())) {
        return Err(Error::ParameterOutOfRange {
            case: case.to_string(),
            reason: format!("unexpected parameter `{extra}`"),
        });
    }
    let fail = |reason: &str| Err(Error::ParameterOutOfRange { case: case.to_string(), reason: reason.to_string() });
    let one = Scalar::one();
    match case {
        CaseId::R3Lambda => {
            let l = param(case, params, "lambda")?;
            if l < -one.clone() || l > one {
                return fail("lambda must lie in [-1, 1]");
            }
        }
        CaseId::R3pGamma => {
            if param(case, params, "gamma")?.is_negative() {
                return fail("gamma must be >= 0");
            }
        }
        CaseId::R4Mu => {
            param(case, params, "mu")?;
        }
        CaseId::R4AlphaBeta => {
            let a = param(case, params, "alpha")?;
            let b = param(case, params, "beta")?;
            if a.is_zero() || b.is_zero() {
                return fail("alpha*beta must be nonzero");
            }
            if a < -one.clone() || a > b || b > one {
                return fail("need -1 <= alpha <= beta <= 1");
            }
        }
        CaseId::R4pGammaDelta => {
            param(case, params, "gamma")?;
            if !param(case, params, "delta")?.is_positive() {
                return fail("delta must be > 0");
            }
        }
        CaseId::D4Lambda => {
            if param(case, params, "lambda")? < q(1, 2) {
                return fail("lambda must be >= 1/2");
            }
        }
        CaseId::D4pDelta => {
            if param(case, params, "delta")?.is_negative() {
                return fail("delta must be >= 0");
            }
        }
        _ => {}
    }
    Ok(())
}

/// Instantiates a family member, enforcing its parameter range.
pub fn catalog_build(case: CaseId, params: &Params) -> Result<LieAlgebra> {
    check_range(case, params)?;
    catalog_build_unchecked(case, params)
}

/// Instantiates the bracket pattern of a family at any parameter values,
/// including ones outside the classified range.
pub fn catalog_build_unchecked(case: CaseId, params: &Params) -> Result<LieAlgebra> {
    let p = |name: &str| param(case, params, name);
    let s = Scalar::from_integer;
    // 1-based (i, j, [(k, coeff)]) as printed.
    let rows: Vec<(usize, usize, Vec<(usize, Scalar)>)> = match case {
        CaseId::A4 => vec![],
        CaseId::Rh3 => vec![(1, 2, vec![(3, s(1))])],
        CaseId::R3 => vec![(1, 2, vec![(2, s(1))]), (1, 3, vec![(2, s(1)), (3, s(1))])],
        CaseId::R3Lambda => {
            let l = p("lambda")?;
            vec![(1, 2, vec![(2, s(1))]), (1, 3, vec![(3, l)])]
        }
        CaseId::R3pGamma => {
            let g = p("gamma")?;
            vec![(1, 2, vec![(2, g.clone()), (3, s(-1))]), (1, 3, vec![(2, s(1)), (3, g)])]
        }
        CaseId::R2r2 => vec![(1, 2, vec![(2, s(1))]), (3, 4, vec![(4, s(1))])],
        CaseId::R2p => vec![
            (1, 3, vec![(3, s(1))]),
            (1, 4, vec![(4, s(1))]),
            (2, 3, vec![(4, s(1))]),
            (2, 4, vec![(3, s(-1))]),
        ],
        CaseId::N4 => vec![(4, 1, vec![(2, s(1))]), (4, 2, vec![(3, s(1))])],
        CaseId::R4 => vec![
            (4, 1, vec![(1, s(1))]),
            (4, 2, vec![(1, s(1)), (2, s(1))]),
            (4, 3, vec![(2, s(1)), (3, s(1))]),
        ],
        CaseId::R4Mu => {
            let m = p("mu")?;
            vec![(4, 1, vec![(1, s(1))]), (4, 2, vec![(2, m.clone())]), (4, 3, vec![(2, s(1)), (3, m)])]
        }
        CaseId::R4AlphaBeta => {
            let (a, b) = (p("alpha")?, p("beta")?);
            vec![(4, 1, vec![(1, s(1))]), (4, 2, vec![(2, a)]), (4, 3, vec![(3, b)])]
        }
        CaseId::R4pGammaDelta => {
            let (g, d) = (p("gamma")?, p("delta")?);
            vec![
                (4, 1, vec![(1, s(1))]),
                (4, 2, vec![(2, g.clone()), (3, -d.clone())]),
                (4, 3, vec![(2, d), (3, g)]),
            ]
        }
        CaseId::D4 => vec![(1, 2, vec![(3, s(1))]), (4, 1, vec![(1, s(1))]), (4, 2, vec![(2, s(-1))])],
        CaseId::D4Lambda => {
            let l = p("lambda")?;
            vec![
                (1, 2, vec![(3, s(1))]),
                (4, 3, vec![(3, s(1))]),
                (4, 1, vec![(1, l.clone())]),
                (4, 2, vec![(2, s(1) - l)]),
            ]
        }
        CaseId::D4pDelta => {
            let d = p("delta")?;
            let half = &d / &s(2);
            vec![
                (1, 2, vec![(3, s(1))]),
                (4, 1, vec![(1, half.clone()), (2, s(-1))]),
                (4, 3, vec![(3, d)]),
                (4, 2, vec![(1, s(1)), (2, half)]),
            ]
        }
        CaseId::H4 => vec![
            (1, 2, vec![(3, s(1))]),
            (4, 3, vec![(3, s(1))]),
            (4, 1, vec![(1, q(1, 2))]),
            (4, 2, vec![(1, s(1)), (2, q(1, 2))]),
        ],
    };
    let zero_based: Vec<_> = rows
        .into_iter()
        .map(|(i, j, terms)| (i - 1, j - 1, terms.into_iter().map(|(k, c)| (k - 1, c)).collect()))
        .collect();
    let name = instance_name(case, params);
    LieAlgebra::from_brackets(4, name, params.clone(), &zero_based)
}

/// `d4_lambda(lambda=2)`, or just `h4` for parameter-free families.
pub fn instance_name(case: CaseId, params: &Params) -> String {
    if params.is_empty() {
        case.to_string()
    } else {
        format!("{case}({})", format_params(params))
    }
}

/// `alpha=-1,beta=1/2`, in the family's parameter order.
pub fn format_params(params: &Params) -> String {
    const ORDER: [&str; 6] = ["lambda", "gamma", "mu", "alpha", "beta", "delta"];
    let mut keys: Vec<&String> = params.keys().collect();
    keys.sort_by_key(|k| ORDER.iter().position(|o| o == k).unwrap_or(ORDER.len()));
    keys.iter().map(|k| format!("{k}={}", params[*k])).collect::<Vec<_>>().join(",")
}

/// Parses `k=v,k=v` with rational values.
pub fn parse_params(s: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("expected key=value, got `{part}`")))?;
        let v: Scalar = v.trim().parse()?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(Error::Invalid(format!("parameter `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}

fn one_param(name: &str, values: &[Scalar]) -> Vec<Params> {
    values.iter().map(|v| Params::from([(name.to_string(), v.clone())])).collect()
}

fn two_params(a: &str, b: &str, values: &[(Scalar, Scalar)]) -> Vec<Params> {
    values
        .iter()
        .map(|(x, y)| Params::from([(a.to_string(), x.clone()), (b.to_string(), y.clone())]))
        .collect()
}

/// Verification grid: every special value a later table branches on, plus
/// two generic rational values per parameter.
pub fn default_grid(case: CaseId) -> Vec<Params> {
    let s = Scalar::from_integer;
    match case {
        CaseId::R3Lambda => one_param("lambda", &[s(-1), s(0), s(1), q(3, 5), q(-2, 7)]),
        CaseId::R3pGamma => one_param("gamma", &[s(0), q(3, 5), s(2)]),
        CaseId::R4Mu => one_param("mu", &[s(-1), q(-1, 2), s(0), s(1), q(3, 5), q(-7, 3)]),
        CaseId::R4AlphaBeta => two_params(
            "alpha",
            "beta",
            &[
                (s(-1), s(-1)),
                (s(-1), s(1)),
                (s(-1), q(1, 2)),
                (s(-1), q(-1, 2)),
                (q(-2, 3), q(2, 3)),
                (q(-1, 3), q(2, 3)),
                (q(-2, 3), q(-1, 3)),
                (q(1, 2), q(1, 2)),
                (q(-1, 2), q(-1, 2)),
                (s(1), s(1)),
                (q(1, 3), s(1)),
                (q(-3, 5), s(1)),
                (q(1, 3), q(3, 5)),
                (q(-3, 5), q(1, 4)),
            ],
        ),
        CaseId::R4pGammaDelta => two_params(
            "gamma",
            "delta",
            &[(s(0), s(1)), (s(0), s(2)), (q(-1, 2), s(1)), (q(3, 5), s(1)), (q(-7, 4), q(2, 3))],
        ),
        CaseId::D4Lambda => one_param("lambda", &[q(1, 2), q(3, 5), s(1), s(2), q(7, 3)]),
        CaseId::D4pDelta => one_param("delta", &[s(0), s(1), q(3, 5), s(2)]),
        _ => vec![Params::new()],
    }
}

/// One catalog instance of the verification grid.
#[derive(Clone, Debug)]
pub struct Instance {
    pub case: CaseId,
    pub params: Params,
    pub algebra: LieAlgebra,
}

impl Instance {
    pub fn name(&self) -> String {
        instance_name(self.case, &self.params)
    }
}

/// Every family over its default grid, in catalog order.
pub fn grid_instances() -> Vec<Instance> {
    CaseId::ALL
        .iter()
        .flat_map(|&case| {
            default_grid(case).into_iter().map(move |params| {
                let algebra = catalog_build(case, &params).expect("default grid lies in range");
                Instance { case, params, algebra }
            })
        })
        .collect()
}
