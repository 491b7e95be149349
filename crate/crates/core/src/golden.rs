//! Reference transcriptions of the determining system for a fourth-order
//! integral, used as golden test data for the derivation in
//! [`crate::determining`].
//!
//! Everything in this module is a hand transcription of the classical
//! reference forms of these equations; nothing here is derived. The derived
//! objects are compared against these transcriptions up to an overall
//! rational factor. Two typographical slips in the printed source of the
//! mixed separable condition are corrected here and are asserted as such by
//! the test suite: the coefficient of `V2'` reads `-60 A301 - 240 x A400`
//! (not `-2140 x A400`), and the `y A211` term in the `V2'''` coefficient
//! enters with a single `+` sign. A third slip occurs in the printed
//! cross-compatibility condition: the `V1'''` coefficient must carry a
//! `+5 f4_x` term (the mirror of the `-5 f2_y` present in the `V2'''`
//! coefficient), and the `V2'` coefficient reads `84 A301 + 360 x A400`
//! (the printed `84 A310 + 360 y A400` breaks the x-y mirror symmetry);
//! without these the condition is inconsistent with the two first-order
//! determining equations it is eliminated from.

use crate::determining::{func_g1, func_g2, func_g3, func_l, func_v, func_v1, func_v2};
use crate::error::Result;
use crate::jets::DiffPoly;
use crate::mpoly::MPoly;
use crate::sym::{sym_x, sym_y};

fn a(name: &str) -> MPoly {
    MPoly::var(name)
}
fn x() -> MPoly {
    MPoly::var("x")
}
fn y() -> MPoly {
    MPoly::var("y")
}
fn c(n: i64) -> MPoly {
    MPoly::rational(n, 1)
}

/// The five leading polynomials `f1..f5`.
pub fn f_polynomials() -> [MPoly; 5] {
    let (x, y) = (x(), y());
    let f1 = a("A400") * y.pow(4) - a("A310") * y.pow(3) + a("A220") * y.pow(2)
        - a("A130") * y.clone()
        + a("A040");
    let f2 = c(-4) * a("A400") * x.clone() * y.pow(3) - a("A301") * y.pow(3)
        + c(3) * a("A310") * x.clone() * y.pow(2)
        + a("A211") * y.pow(2)
        - c(2) * a("A220") * x.clone() * y.clone()
        - a("A121") * y.clone()
        + a("A130") * x.clone()
        + a("A031");
    let f3 = c(6) * a("A400") * x.pow(2) * y.pow(2) + c(3) * a("A301") * x.clone() * y.pow(2)
        - c(3) * a("A310") * x.pow(2) * y.clone()
        + a("A202") * y.pow(2)
        - c(2) * a("A211") * x.clone() * y.clone()
        + a("A220") * x.pow(2)
        - a("A112") * y.clone()
        + a("A121") * x.clone()
        + a("A022");
    let f4 = c(-4) * a("A400") * y.clone() * x.pow(3) + a("A310") * x.pow(3)
        - c(3) * a("A301") * x.pow(2) * y.clone()
        + a("A211") * x.pow(2)
        - c(2) * a("A202") * x.clone() * y.clone()
        + a("A112") * x.clone()
        - a("A103") * y.clone()
        + a("A013");
    let f5 = a("A400") * x.pow(4)
        + a("A301") * x.pow(3)
        + a("A202") * x.pow(2)
        + a("A103") * x
        + a("A004");
    [f1, f2, f3, f4, f5]
}

fn vj(dx: u32, dy: u32) -> DiffPoly {
    DiffPoly::jet(&func_v(), dx, dy)
}

/// The four third-order determining equations, written as
/// `lhs - rhs` with the g-jets on the left.
pub fn eq_third_order() -> [DiffPoly; 4] {
    let [f1, f2, f3, f4, f5] = f_polynomials();
    let (vx, vy) = (vj(1, 0), vj(0, 1));
    let g1 = func_g1();
    let g2 = func_g2();
    let g3 = func_g3();
    [
        DiffPoly::jet(&g1, 1, 0) - vx.scale(&(c(4) * f1.clone())) - vy.scale(&f2),
        DiffPoly::jet(&g2, 1, 0) + DiffPoly::jet(&g1, 0, 1)
            - vx.scale(&(c(3) * f2.clone()))
            - vy.scale(&(c(2) * f3.clone())),
        DiffPoly::jet(&g3, 1, 0) + DiffPoly::jet(&g2, 0, 1)
            - vx.scale(&(c(2) * f3))
            - vy.scale(&(c(3) * f4.clone())),
        DiffPoly::jet(&g3, 0, 1) - vx.scale(&f4) - vy.scale(&(c(4) * f5)),
    ]
}

/// The two first-order determining equations, written as `l_x - rhs` and
/// `l_y - rhs`.
pub fn eq_first_order() -> [DiffPoly; 2] {
    let [f1, f2, _f3, f4, f5] = f_polynomials();
    let (sx, sy) = (sym_x(), sym_y());
    let h2_4 = MPoly::var_pow("hbar", 2) * MPoly::rational(1, 4);
    let g1 = DiffPoly::func(&func_g1());
    let g2 = DiffPoly::func(&func_g2());
    let g3 = DiffPoly::func(&func_g3());
    let (vx, vy) = (vj(1, 0), vj(0, 1));

    let f2p4 = f2.clone() + f4.clone();
    let f1m5 = f1.clone() - f5.clone();
    let cx = c(2)
        * (c(6) * a("A400") * x().pow(2)
            + c(62) * a("A400") * y().pow(2)
            + c(3) * a("A301") * x()
            - c(29) * a("A310") * y()
            + c(9) * a("A220")
            + c(3) * a("A202"));
    let cxy = c(2)
        * (c(56) * a("A400") * x() * y() - c(13) * a("A310") * x() + c(13) * a("A301") * y()
            - c(3) * a("A211"));
    let quantum_x = vj(2, 1).scale(&f2p4) - vj(1, 2).scale(&(c(4) * f1m5.clone()))
        - vj(0, 3).scale(&f2p4)
        + vj(2, 0).scale(&(c(3) * f2.diff(&sy) - f5.diff(&sx)))
        - vj(1, 1).scale(&(c(13) * f1.diff(&sy) + f4.diff(&sx)))
        - vj(0, 2).scale(&(c(4) * (f2.diff(&sy) - f5.diff(&sx))))
        - vx.clone().scale(&cx)
        + vy.clone().scale(&cxy);
    let eq_a = DiffPoly::jet(&func_l(), 1, 0)
        - (g1.clone() * vx.clone()).scale(&c(2))
        - g2.clone() * vy.clone()
        - quantum_x.scale(&h2_4);

    let cy = c(2)
        * (c(62) * a("A400") * x().pow(2)
            + c(6) * a("A400") * y().pow(2)
            + c(29) * a("A301") * x()
            - c(3) * a("A310") * y()
            + c(9) * a("A202")
            + c(3) * a("A220"));
    let quantum_y = -vj(3, 0).scale(&f2p4)
        + vj(2, 1).scale(&(c(4) * f1m5))
        + vj(1, 2).scale(&f2p4)
        + vj(2, 0).scale(&(c(4) * (f1.diff(&sy) - f4.diff(&sx))))
        - vj(1, 1).scale(&(f2.diff(&sy) + c(13) * f5.diff(&sx)))
        - vj(0, 2).scale(&(f1.diff(&sy) - c(3) * f4.diff(&sx)))
        + vx.clone().scale(&cxy)
        - vy.clone().scale(&cy);
    let eq_b = DiffPoly::jet(&func_l(), 0, 1)
        - g2 * vx
        - (g3 * vy).scale(&c(2))
        - quantum_y.scale(&h2_4);

    [eq_a, eq_b]
}

/// The fourth-order linear compatibility PDE for `V(x, y)` alone.
pub fn eq_compat() -> Result<DiffPoly> {
    let [f1, f2, f3, f4, f5] = f_polynomials();
    let (sx, sy) = (sym_x(), sym_y());
    let (vx, vy) = (vj(1, 0), vj(0, 1));
    let t1 = vx.clone().scale(&(c(4) * f1)) + vy.clone().scale(&f2.clone());
    let t2 = vx.clone().scale(&(c(3) * f2)) + vy.clone().scale(&(c(2) * f3.clone()));
    let t3 = vx.clone().scale(&(c(2) * f3)) + vy.clone().scale(&(c(3) * f4.clone()));
    let t4 = vx.scale(&f4) + vy.scale(&(c(4) * f5));
    let d3 = |e: &DiffPoly, a: u32, b: u32| -> Result<DiffPoly> {
        let mut r = e.clone();
        for _ in 0..a {
            r = r.dtotal(&sx)?;
        }
        for _ in 0..b {
            r = r.dtotal(&sy)?;
        }
        Ok(r)
    };
    Ok(d3(&t1, 0, 3)? - d3(&t2, 1, 2)? + d3(&t3, 2, 1)? - d3(&t4, 3, 0)?)
}

fn v1j(k: u32) -> DiffPoly {
    DiffPoly::jet1(&func_v1(), k)
}
fn v2j(k: u32) -> DiffPoly {
    DiffPoly::jet1(&func_v2(), k)
}

/// The mixed linear condition for the separable potential (with the two
/// typographical corrections described in the module docs).
pub fn eq_mixed() -> DiffPoly {
    v1j(1).scale(&(c(-60) * a("A310") + c(240) * y() * a("A400")))
        + v1j(2).scale(
            &(c(-20) * a("A211") + c(60) * y() * a("A301") - c(60) * x() * a("A310")
                + c(240) * x() * y() * a("A400")),
        )
        + v1j(3).scale(
            &(c(-5) * a("A112") + c(10) * y() * a("A202") - c(10) * x() * a("A211")
                + c(30) * x() * y() * a("A301")
                - c(15) * x().pow(2) * a("A310")
                + c(60) * x().pow(2) * y() * a("A400")),
        )
        + v1j(4).scale(
            &(-a("A013") + y() * a("A103") - x() * a("A112")
                + c(2) * x() * y() * a("A202")
                - x().pow(2) * a("A211")
                + c(3) * x().pow(2) * y() * a("A301")
                - x().pow(3) * a("A310")
                + c(4) * x().pow(3) * y() * a("A400")),
        )
        + v2j(1).scale(&(c(-60) * a("A301") - c(240) * x() * a("A400")))
        + v2j(2).scale(
            &(c(20) * a("A211") - c(60) * y() * a("A301") + c(60) * x() * a("A310")
                - c(240) * x() * y() * a("A400")),
        )
        + v2j(3).scale(
            &(c(-5) * a("A121") + c(10) * y() * a("A211")
                - c(10) * x() * a("A220")
                - c(15) * y().pow(2) * a("A301")
                + c(30) * x() * y() * a("A310")
                - c(60) * x() * y().pow(2) * a("A400")),
        )
        + v2j(4).scale(
            &(a("A031") - y() * a("A121")
                + x() * a("A130")
                + y().pow(2) * a("A211")
                - c(2) * x() * y() * a("A220")
                - y().pow(3) * a("A301")
                + c(3) * x() * y().pow(2) * a("A310")
                - c(4) * x() * y().pow(3) * a("A400")),
        )
}

/// The mixed separable condition transcribed at face value from the printed
/// source, with no corrections applied: the `V2'` coefficient carries the
/// printed `-2140 x A400`. The doubled `+` sign in front of the `10 y A211`
/// term of the `V2'''` coefficient has no numeric content at face value and
/// is reported separately by [`mixed_separable_discrepancies`].
pub fn eq_mixed_verbatim() -> DiffPoly {
    let corrected_v2p = v2j(1).scale(&(c(-60) * a("A301") - c(240) * x() * a("A400")));
    let verbatim_v2p = v2j(1).scale(&(c(-60) * a("A301") - c(2140) * x() * a("A400")));
    eq_mixed() - corrected_v2p + verbatim_v2p
}

/// A localized difference between a verbatim transcription of a printed
/// equation and its corrected form.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Discrepancy {
    /// Where in the equation the difference sits.
    pub location: String,
    /// The coefficient as printed.
    pub verbatim: String,
    /// The coefficient as corrected (and as re-derived).
    pub corrected: String,
}

/// Compare the verbatim transcription of the mixed separable condition with
/// the corrected form and report every differing jet coefficient, plus the
/// purely notational doubled-sign slip that has no numeric content.
pub fn mixed_separable_discrepancies() -> Vec<Discrepancy> {
    let verbatim = eq_mixed_verbatim();
    let corrected = eq_mixed();
    let diff = verbatim.clone() - corrected.clone();
    let mut out = Vec::new();
    for (jm, _) in &diff.terms {
        let vc = verbatim.coeff_jets(jm);
        let cc = corrected.coeff_jets(jm);
        let loc = jm
            .0
            .iter()
            .map(|(jv, pow)| {
                let primes = "'".repeat((jv.dx + jv.dy) as usize);
                if *pow > 1 {
                    format!("{}{}^{}", jv.func.name, primes, pow)
                } else {
                    format!("{}{}", jv.func.name, primes)
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        out.push(Discrepancy {
            location: format!("coefficient of {loc}"),
            verbatim: format!("{vc}"),
            corrected: format!("{cc}"),
        });
    }
    out.push(Discrepancy {
        location: "coefficient of V2''', term 10 y A211".into(),
        verbatim: "printed with a doubled sign: \"++10 y A211\"".into(),
        corrected: "+10 y A211".into(),
    });
    out
}

/// The two linear ODEs for `V1(x)`.
pub fn eq_v1_odes() -> [DiffPoly; 2] {
    let ea = v1j(3).scale(&(c(210) * a("A310")))
        + v1j(4).scale(&(c(42) * (a("A211") + c(3) * a("A310") * x())))
        + v1j(5).scale(&(c(7) * (a("A112") + c(2) * a("A211") * x() + c(3) * a("A310") * x().pow(2))))
        + v1j(6).scale(
            &(a("A013") + a("A112") * x() + a("A211") * x().pow(2) + a("A310") * x().pow(3)),
        );
    let eb = v1j(3).scale(&(c(840) * a("A400")))
        + v1j(4).scale(&(c(126) * a("A301") + c(504) * a("A400") * x()))
        + v1j(5).scale(
            &(c(14) * (a("A202") + c(3) * a("A301") * x() + c(6) * a("A400") * x().pow(2))),
        )
        + v1j(6).scale(
            &(a("A103")
                + c(2) * a("A202") * x()
                + c(3) * a("A301") * x().pow(2)
                + c(4) * a("A400") * x().pow(3)),
        );
    [ea, eb]
}

/// The two linear ODEs for `V2(y)`.
pub fn eq_v2_odes() -> [DiffPoly; 2] {
    let ea = v2j(3).scale(&(c(210) * a("A301")))
        - v2j(4).scale(&(c(42) * (a("A211") - c(3) * a("A301") * y())))
        + v2j(5).scale(&(c(7) * (a("A121") - c(2) * a("A211") * y() + c(3) * a("A301") * y().pow(2))))
        - v2j(6).scale(
            &(a("A031") - a("A121") * y() + a("A211") * y().pow(2) - a("A301") * y().pow(3)),
        );
    let eb = v2j(3).scale(&(c(840) * a("A400")))
        - v2j(4).scale(&(c(126) * a("A310") - c(504) * a("A400") * y()))
        + v2j(5).scale(
            &(c(14) * (a("A220") - c(3) * a("A310") * y() + c(6) * a("A400") * y().pow(2))),
        )
        - v2j(6).scale(
            &(a("A130") - c(2) * a("A220") * y() + c(3) * a("A310") * y().pow(2)
                - c(4) * a("A400") * y().pow(3)),
        );
    [ea, eb]
}

/// The `l_xy = l_yx` cross-compatibility condition for the separable
/// potential (still nonlinear: it involves `g1, g2, g3`).
pub fn eq_cross_l() -> DiffPoly {
    let [f1, f2, _f3, f4, f5] = f_polynomials();
    let (sx, sy) = (sym_x(), sym_y());
    let h2_4 = MPoly::var_pow("hbar", 2) * MPoly::rational(1, 4);
    let g1 = func_g1();
    let g2 = func_g2();
    let g3 = func_g3();
    let g2f = DiffPoly::func(&g2);
    let f2p4 = f2.clone() + f4.clone();
    let mix = c(6) * a("A211") - c(26) * a("A301") * y() + c(26) * a("A310") * x()
        - c(112) * a("A400") * x() * y();
    let quantum = (v1j(4) - v2j(4)).scale(&f2p4)
        + v1j(3).scale(&(f2.diff(&sx) - c(4) * f1.diff(&sy) + c(5) * f4.diff(&sx)))
        + v2j(3).scale(&(c(4) * f5.diff(&sx) - c(5) * f2.diff(&sy) - f4.diff(&sy)))
        + v1j(2).scale(
            &(c(3) * f2.diff(&sy).diff(&sy) + c(4) * f4.diff(&sx).diff(&sx) + mix.clone()),
        )
        - v2j(2).scale(&(c(4) * f2.diff(&sy).diff(&sy) + c(3) * f4.diff(&sx).diff(&sx) + mix))
        + v1j(1).scale(&(c(84) * a("A310") - c(360) * a("A400") * y()))
        + v2j(1).scale(&(c(84) * a("A301") + c(360) * a("A400") * x()));
    -g2f.clone() * v1j(2)
        + g2f * v2j(2)
        + (DiffPoly::jet(&g1, 0, 1).scale(&c(2)) - DiffPoly::jet(&g2, 1, 0)) * v1j(1)
        + (DiffPoly::jet(&g2, 0, 1) - DiffPoly::jet(&g3, 1, 0).scale(&c(2))) * v2j(1)
        + quantum.scale(&h2_4)
}

/// Names and builders for every golden equation, in canonical order.
pub fn all() -> Result<Vec<(&'static str, DiffPoly)>> {
    let [e4a, e4b, e4c, e4d] = eq_third_order();
    let [e5a, e5b] = eq_first_order();
    let [f1, f2, f3, f4, f5] = f_polynomials();
    let [e13a, e13b] = eq_v1_odes();
    let [e14a, e14b] = eq_v2_odes();
    Ok(vec![
        ("det_3rd_a", e4a),
        ("det_3rd_b", e4b),
        ("det_3rd_c", e4c),
        ("det_3rd_d", e4d),
        ("det_1st_a", e5a),
        ("det_1st_b", e5b),
        ("f1", DiffPoly::from_mpoly(f1)),
        ("f2", DiffPoly::from_mpoly(f2)),
        ("f3", DiffPoly::from_mpoly(f3)),
        ("f4", DiffPoly::from_mpoly(f4)),
        ("f5", DiffPoly::from_mpoly(f5)),
        ("compat_pde", eq_compat()?),
        ("mixed_separable", eq_mixed()),
        ("mixed_separable_verbatim", eq_mixed_verbatim()),
        ("v1_ode_a", e13a),
        ("v1_ode_b", e13b),
        ("v2_ode_a", e14a),
        ("v2_ode_b", e14b),
        ("cross_l", eq_cross_l()),
    ])
}

/// Directory holding the canonical golden s-expressions.
pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../golden/v1")
        .to_path_buf()
}

/// Load one golden equation from disk.
pub fn load(name: &str) -> Result<DiffPoly> {
    let path = golden_dir().join(format!("{name}.sexp"));
    let text = std::fs::read_to_string(&path)?;
    crate::sexpr::from_sexpr(text.trim())
}
