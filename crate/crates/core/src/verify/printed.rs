//! Printed two-form families: `Σ a_k ω_k` with named coefficients.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{env_from_params, parse_expr, to_form};
use crate::forms::KForm;
use crate::lie::Params;
use crate::linalg::Scalar;
use crate::poly::Poly;
use crate::symplectic::pfaffian_of_coords;

#[derive(Clone, Debug, Serialize)]
pub struct PrintedFamily {
    pub names: Vec<String>,
    /// The form multiplying each coefficient name.
    pub forms: Vec<KForm>,
    #[serde(serialize_with = "ser_poly")]
    pub pfaffian: Poly<Scalar>,
    #[serde(serialize_with = "ser_poly")]
    pub condition: Poly<Scalar>,
    /// Condition variables that do not occur in the form.
    pub absent: Vec<String>,
    /// Names whose forms are linearly dependent on the others.
    pub redundant: bool,
}

fn ser_poly<S: serde::Serializer>(p: &Poly<Scalar>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn real_poly(text: &str, params: &Params) -> Result<Poly<Scalar>> {
    let p = parse_expr(text)?.eval(&env_from_params(params))?;
    p.to_real().ok_or_else(|| Error::Invalid(format!("`{text}` has non-real coefficients")))
}

pub fn printed_family(omega: &str, condition: &str, params: &Params) -> Result<PrintedFamily> {
    let p = parse_expr(omega)?.eval(&env_from_params(params))?;
    let coords: Vec<Poly<Scalar>> = to_form(&p, 4, 2)?
        .iter()
        .map(|c| c.to_real().ok_or_else(|| Error::Invalid(format!("`{omega}` has non-real coefficients"))))
        .collect::<Result<_>>()?;
    let names: Vec<String> = coords.iter().flat_map(|c| c.variables()).collect::<BTreeSet<_>>().into_iter().collect();
    let mut forms = Vec::new();
    for name in &names {
        let mut v = Vec::new();
        for c in &coords {
            let not_linear = || Error::Invalid(format!("`{omega}` is not linear in {name}"));
            let (parts, _) = c.linear_split(|x| x == name).ok_or_else(not_linear)?;
            v.push(match parts.get(name) {
                Some(k) => k.as_constant().ok_or_else(not_linear)?,
                None => Scalar::zero(),
            });
        }
        forms.push(KForm::from_coords(4, 2, &v));
    }
    let span = crate::linalg::span_basis(coords.len(), &forms.iter().map(KForm::coords).collect::<Vec<_>>());
    let condition = real_poly(condition, params)?;
    let absent = condition.variables().into_iter().filter(|v| !names.contains(v)).collect();
    Ok(PrintedFamily { pfaffian: pfaffian_of_coords(&coords), redundant: span.len() < names.len(), names, forms, condition, absent })
}

/// `Pf = c·p^k` or `p = c·Pf^k` for `k ∈ {1, 2}` and a nonzero constant `c`.
pub fn condition_matches(pf: &Poly<Scalar>, p: &Poly<Scalar>) -> bool {
    if pf.is_zero() || p.is_zero() {
        return pf.is_zero() && p.is_zero();
    }
    [1u32, 2].iter().any(|&k| pf.ratio_to(&p.pow(k)).is_some() || p.ratio_to(&pf.pow(k)).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn r2p_family() {
        let f = printed_family("a12*e12 + a13m24*(e13 - e24) + a14p23*(e14 + e23)", "a14p23^2 + a13m24^2", &Params::new()).unwrap();
        assert_eq!(f.names, ["a12", "a13m24", "a14p23"]);
        assert!(condition_matches(&f.pfaffian, &f.condition));
        assert!(f.absent.is_empty() && !f.redundant);
    }

    #[test]
    fn duplicated_slot_and_absent_name() {
        let f = printed_family("a14*e14 + a23*e23 + a24*e14 + a34*e34", "a14*a23", &Params::new()).unwrap();
        assert!(f.redundant);
        let f = printed_family("a12*e12 + a14*e13 + a24*e24 + a34*e34", "a14*a23", &Params::new()).unwrap();
        assert_eq!(f.absent, ["a23"]);
        assert!(!condition_matches(&f.pfaffian, &f.condition));
    }

    #[test]
    fn parameters_substitute() {
        let p = Params::from([("delta".to_string(), q(2, 1))]);
        let f = printed_family("am12pd34*(-e12 + delta*e34) + a14*e14 + a24*e24", "am12pd34", &p).unwrap();
        assert_eq!(f.forms[2].coeff(&[2, 3]), q(2, 1));
        // Pf = -2·am12pd34², a square of the condition
        assert!(condition_matches(&f.pfaffian, &f.condition));
        assert!(!condition_matches(&f.pfaffian, &Poly::var("a14")));
    }
}
