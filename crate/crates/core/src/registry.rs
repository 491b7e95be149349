//! The ODE registry: every nonlinear equation the analysis and numeric
//! layers operate on, addressable by a stable key.

use crate::analysis::func_u;
use crate::error::{Error, Result};
use crate::exotic::func_w;
use crate::jets::{DiffPoly, Func};
use crate::mpoly::MPoly;
use crate::{exotic, golden_exotic};

/// Broad class of an equation, used to pick defaults (e.g. whether `hbar`
/// appears as a parameter).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OdeClass {
    /// A nonlinear W-equation from the quantum reduction chain.
    Quantum,
    /// A classical (`hbar -> 0`) first integral.
    Classical,
    /// A Painleve transcendent or the Weierstrass elliptic equation.
    Transcendent,
}

/// A registered ordinary differential equation, written as a differential
/// polynomial that must vanish.
#[derive(Debug, Clone)]
pub struct OdeSpec {
    pub key: &'static str,
    pub class: OdeClass,
    /// The dependent function (always a function of y).
    pub func: Func,
    pub equation: DiffPoly,
    /// Free parameter names appearing in the equation, in a stable order.
    pub params: Vec<String>,
}

/// The parameter symbols of an equation: every polynomial variable except
/// the independent variable `y` and the formal `hbar`.
pub fn parameters(equation: &DiffPoly) -> Vec<String> {
    let mut names = std::collections::BTreeSet::new();
    for coeff in equation.terms.values() {
        for mono in coeff.terms.keys() {
            for (s, _) in &mono.0 {
                let n = s.name();
                if n != "y" && n != "hbar" {
                    names.insert(n.to_string());
                }
            }
        }
    }
    names.into_iter().collect()
}

/// All registry keys, in a stable order.
pub const KEYS: &[&str] = &[
    "VbII4", "VbII3", "VbI", "W103", "W013", "K1202", "IIb2", "chazyI", "SDIb", "clas1", "clas2",
    "painleve1", "painleve2", "painleve3", "painleve4", "painleve5", "weierstrass",
];

fn w() -> DiffPoly {
    DiffPoly::func(&func_w())
}
fn wj(k: u32) -> DiffPoly {
    DiffPoly::jet1(&func_w(), k)
}
fn yv() -> MPoly {
    MPoly::var("y")
}
fn c(n: i64) -> MPoly {
    MPoly::int(n)
}
fn a(s: &str) -> MPoly {
    MPoly::var(s)
}

/// `W'' - 6 W^2 - y`.
fn painleve1() -> DiffPoly {
    wj(2) - w().pow(2).scale(&c(6)) - DiffPoly::from_mpoly(yv())
}

/// `W'' - 2 W^3 - y W - alpha`.
fn painleve2() -> DiffPoly {
    wj(2) - w().pow(3).scale(&c(2)) - w().scale(&yv()) - DiffPoly::from_mpoly(a("alpha"))
}

/// The third Painleve equation cleared of denominators:
/// `y W W'' - y W'^2 + W W' - alpha W^3 - beta W - gamma y W^4 - delta y`.
fn painleve3() -> DiffPoly {
    (w() * wj(2)).scale(&yv()) - wj(1).pow(2).scale(&yv()) + w() * wj(1)
        - w().pow(3).scale(&a("alpha"))
        - w().scale(&a("beta"))
        - w().pow(4).scale(&(a("gamma") * yv()))
        - DiffPoly::from_mpoly(a("delta") * yv())
}

/// The fourth Painleve equation cleared of denominators:
/// `2 W W'' - W'^2 - 3 W^4 - 8 y W^3 - 4 (y^2 - alpha) W^2 - 2 beta`.
fn painleve4() -> DiffPoly {
    (w() * wj(2)).scale(&c(2)) - wj(1).pow(2) - w().pow(4).scale(&c(3))
        - w().pow(3).scale(&(c(8) * yv()))
        - w().pow(2).scale(&(c(4) * yv().pow(2) - c(4) * a("alpha")))
        - DiffPoly::from_mpoly(c(2) * a("beta"))
}

/// The fifth Painleve equation cleared of denominators:
/// `2 y^2 W (W-1) W'' - y^2 (3W-1) W'^2 + 2 y W (W-1) W'
///  - 2 (W-1)^3 (alpha W^2 + beta) - 2 gamma y W^2 (W-1)
///  - 2 delta y^2 W^2 (W+1)`.
fn painleve5() -> DiffPoly {
    let wm1 = w() - DiffPoly::one();
    (w() * wm1.clone() * wj(2)).scale(&(c(2) * yv().pow(2)))
        - (wj(1).pow(2) * (w().scale(&c(3)) - DiffPoly::one())).scale(&yv().pow(2))
        + (w() * wm1.clone() * wj(1)).scale(&(c(2) * yv()))
        - (wm1.clone().pow(3) * (w().pow(2).scale(&a("alpha")) + DiffPoly::from_mpoly(a("beta"))))
            .scale(&c(2))
        - (w().pow(2) * wm1).scale(&(c(2) * a("gamma") * yv()))
        - (w().pow(2) * (w() + DiffPoly::one())).scale(&(c(2) * a("delta") * yv().pow(2)))
}

/// `W'^2 - 4 W^3 + e2 W + e3` (the Weierstrass equation; the invariants are
/// carried as the parameters `e2`, `e3`).
fn weierstrass() -> DiffPoly {
    wj(1).pow(2) - w().pow(3).scale(&c(4)) + w().scale(&a("e2")) + DiffPoly::from_mpoly(a("e3"))
}

/// Look up a registered equation.
pub fn ode(key: &str) -> Result<OdeSpec> {
    let (class, func, equation): (OdeClass, Func, DiffPoly) = match key {
        "VbII4" | "VbII3" | "VbI" | "W103" | "W013" | "K1202" | "IIb2" => {
            (OdeClass::Quantum, func_w(), exotic::w_equation(key)?)
        }
        "chazyI" | "SDIb" => (
            OdeClass::Quantum,
            func_u(),
            golden_exotic::w_equation(key).unwrap(),
        ),
        "clas1" | "clas2" => (
            OdeClass::Classical,
            func_w(),
            golden_exotic::w_equation(key).unwrap(),
        ),
        "painleve1" => (OdeClass::Transcendent, func_w(), painleve1()),
        "painleve2" => (OdeClass::Transcendent, func_w(), painleve2()),
        "painleve3" => (OdeClass::Transcendent, func_w(), painleve3()),
        "painleve4" => (OdeClass::Transcendent, func_w(), painleve4()),
        "painleve5" => (OdeClass::Transcendent, func_w(), painleve5()),
        "weierstrass" => (OdeClass::Transcendent, func_w(), weierstrass()),
        other => return Err(Error::UnknownKey(format!("ODE registry key {other}"))),
    };
    let params = parameters(&equation);
    Ok(OdeSpec {
        key: KEYS.iter().find(|k| **k == key).unwrap(),
        class,
        func,
        equation,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_keys_resolve() {
        for key in KEYS {
            let spec = ode(key).unwrap();
            assert!(!spec.equation.terms.is_empty(), "{key}");
        }
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(ode("nope").is_err());
    }
}
