//! Linear differential operators with differential-polynomial coefficients.
//!
//! An operator is a finite sum `sum c_{ab}(x, y, jets) * dx^a dy^b` in
//! normal-ordered form (all derivatives pushed to the right). Composition
//! follows from the Leibniz rule; the commutator of the Hamiltonian with the
//! general fourth-order integral is computed here and consumed by the
//! derivation layer.

use crate::jets::{DiffPoly, Func};
use crate::mpoly::MPoly;
use crate::sym::{sym_hbar, sym_x, sym_y, Sym};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Normal-ordered differential operator: `(a, b) -> coefficient of dx^a dy^b`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOperator {
    pub terms: BTreeMap<(u32, u32), DiffPoly>,
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

impl DiffOperator {
    pub fn zero() -> Self {
        DiffOperator {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_expr(c: DiffPoly) -> Self {
        let mut op = DiffOperator::zero();
        op.add_term(0, 0, c);
        op
    }

    pub fn one() -> Self {
        DiffOperator::from_expr(DiffPoly::one())
    }

    /// `c * dx^a dy^b`.
    pub fn mono(a: u32, b: u32, c: DiffPoly) -> Self {
        let mut op = DiffOperator::zero();
        op.add_term(a, b, c);
        op
    }

    /// The momentum `p1 = -i hbar dx`.
    pub fn p1() -> Self {
        DiffOperator::mono(1, 0, DiffPoly::from_mpoly(-(MPoly::i() * MPoly::var(sym_hbar()))))
    }

    /// The momentum `p2 = -i hbar dy`.
    pub fn p2() -> Self {
        DiffOperator::mono(0, 1, DiffPoly::from_mpoly(-(MPoly::i() * MPoly::var(sym_hbar()))))
    }

    /// Angular momentum `L3 = x p2 - y p1`.
    pub fn l3() -> Self {
        DiffOperator::mono(
            0,
            1,
            DiffPoly::var("x").scale(&-(MPoly::i() * MPoly::var(sym_hbar()))),
        ) + DiffOperator::mono(
            1,
            0,
            DiffPoly::var("y").scale(&(MPoly::i() * MPoly::var(sym_hbar()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: DiffPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(a, b)) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&(a, b));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((a, b), c);
            }
        }
    }

    pub fn coeff(&self, a: u32, b: u32) -> DiffPoly {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(DiffPoly::zero)
    }

    /// Maximum total derivative order present.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|(a, b)| a + b).max().unwrap_or(0)
    }

    /// Coefficients of the stratum of total order `n`, keyed by `(a, b)`.
    pub fn stratum(&self, n: u32) -> Vec<((u32, u32), DiffPoly)> {
        self.terms
            .iter()
            .filter(|((a, b), _)| a + b == n)
            .map(|(k, v)| (*k, v.clone()))
            .collect()
    }

    pub fn scale(&self, c: &MPoly) -> DiffOperator {
        DiffOperator {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.scale(c)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> DiffOperator {
        let mut acc = DiffOperator::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Normal-ordered composition via the Leibniz rule:
    /// `dx^a dy^b (B ...) = sum C(a,i) C(b,j) (d^i_x d^j_y B) dx^(a-i) dy^(b-j) ...`
    pub fn compose(&self, rhs: &DiffOperator) -> DiffOperator {
        let x = sym_x();
        let y = sym_y();
        let mut out = DiffOperator::zero();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &rhs.terms {
                // derivatives of cb up to (a, b)
                let mut dyk = cb.clone();
                for j in 0..=b {
                    let mut dxi = dyk.clone();
                    for i in 0..=a {
                        let factor = binomial(a, i) * binomial(b, j);
                        let coeff = ca.clone() * dxi.clone();
                        out.add_term(
                            a - i + c,
                            b - j + d,
                            coeff.scale(&MPoly::int(factor)),
                        );
                        if i < a {
                            dxi = dxi.dtotal(&x).expect("jet depth exceeded in composition");
                        }
                    }
                    if j < b {
                        dyk = dyk.dtotal(&y).expect("jet depth exceeded in composition");
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs) - rhs.compose(self)
    }

    pub fn anticommutator(&self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs) + rhs.compose(self)
    }

    /// Substitute an abstract function by an expression in every coefficient.
    pub fn subst_func(&self, f: &Func, replacement: &DiffPoly) -> crate::error::Result<DiffOperator> {
        let mut out = DiffOperator::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, c.subst_func(f, replacement)?);
        }
        Ok(out)
    }
}

impl Add for DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: DiffOperator) -> DiffOperator {
        let mut out = self;
        for ((a, b), c) in rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Sub for DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: DiffOperator) -> DiffOperator {
        self + rhs.neg()
    }
}

impl Neg for DiffOperator {
    type Output = DiffOperator;
    fn neg(self) -> DiffOperator {
        DiffOperator {
            terms: self.terms.into_iter().map(|(k, v)| (k, v.neg())).collect(),
        }
    }
}

impl<'a, 'b> Mul<&'b DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs)
    }
}

impl Mul for DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: DiffOperator) -> DiffOperator {
        self.compose(&rhs)
    }
}

impl fmt::Display for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, b), c) in self.terms.iter().rev() {
            if !first {
                writeln!(f, " +")?;
            }
            first = false;
            write!(f, "[{}] dx^{} dy^{}", c, a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `H = (p1^2 + p2^2)/2 + V` for a potential expression in x, y and jets of
/// coordinate functions (no derivative part).
pub fn build_hamiltonian(v: &DiffPoly) -> DiffOperator {
    let h2 = MPoly::var_pow(sym_hbar(), 2);
    // p^2/2 = -(hbar^2/2) d^2
    let mut h = DiffOperator::mono(
        2,
        0,
        DiffPoly::from_mpoly(h2.clone()).scale(&MPoly::rational(-1, 2)),
    );
    h.add_term(
        0,
        2,
        DiffPoly::from_mpoly(h2).scale(&MPoly::rational(-1, 2)),
    );
    h.add_term(0, 0, v.clone());
    h
}

/// The one-dimensional Hamiltonians `H1 = p1^2/2 + V1(x)`, `H2 = p2^2/2 + V2(y)`.
pub fn build_h1(v1: &DiffPoly) -> DiffOperator {
    let h2 = MPoly::var_pow(sym_hbar(), 2);
    let mut h = DiffOperator::mono(
        2,
        0,
        DiffPoly::from_mpoly(h2).scale(&MPoly::rational(-1, 2)),
    );
    h.add_term(0, 0, v1.clone());
    h
}

pub fn build_h2(v2: &DiffPoly) -> DiffOperator {
    let h2 = MPoly::var_pow(sym_hbar(), 2);
    let mut h = DiffOperator::mono(
        0,
        2,
        DiffPoly::from_mpoly(h2).scale(&MPoly::rational(-1, 2)),
    );
    h.add_term(0, 0, v2.clone());
    h
}

/// The 15 fourth-order leading coefficients `A_jkl` with `j + k + l = 4`,
/// in a fixed order.
pub const A_NAMES: [&str; 15] = [
    "A400", "A310", "A301", "A220", "A211", "A202", "A130", "A121", "A112", "A103", "A040",
    "A031", "A022", "A013", "A004",
];

fn a_jkl(name: &str) -> (u32, u32, u32) {
    let b: Vec<u32> = name[1..]
        .chars()
        .map(|c| c.to_digit(10).unwrap())
        .collect();
    (b[0], b[1], b[2])
}

/// Which leading coefficients are free. Gauge fixing (the freedom to add
/// `a1 H1^2 + a2 H2^2 + a3 H1 H2`) sets `A004 = A040 = A022 = 0`.
#[derive(Clone, Debug)]
pub struct IntegralCoefficients {
    /// `A_jkl` name -> value; names absent are taken as the free symbol.
    pub fixed: BTreeMap<Sym, MPoly>,
    pub gauge_fixed: bool,
}

impl IntegralCoefficients {
    /// All 15 coefficients symbolic.
    pub fn generic() -> Self {
        IntegralCoefficients {
            fixed: BTreeMap::new(),
            gauge_fixed: false,
        }
    }

    /// Gauge-fixed: `A004 = A040 = A022 = 0`, the rest symbolic.
    pub fn gauge_fixed() -> Self {
        let mut fixed = BTreeMap::new();
        for n in ["A004", "A040", "A022"] {
            fixed.insert(Sym::new(n), MPoly::zero());
        }
        IntegralCoefficients {
            fixed,
            gauge_fixed: true,
        }
    }

    /// Only the named coefficients nonzero, with the given polynomial values.
    pub fn only(values: &[(&str, MPoly)]) -> Self {
        let mut fixed = BTreeMap::new();
        for n in A_NAMES {
            fixed.insert(Sym::new(n), MPoly::zero());
        }
        for (n, v) in values {
            fixed.insert(Sym::new(n), v.clone());
        }
        IntegralCoefficients {
            fixed,
            gauge_fixed: true,
        }
    }

    pub fn value(&self, name: &str) -> MPoly {
        let s = Sym::new(name);
        self.fixed
            .get(&s)
            .cloned()
            .unwrap_or_else(|| MPoly::var(s))
    }
}

/// `Y = sum A_jkl/2 {L3^j, p1^k p2^l} + ({g1,p1^2}+{g2,p1 p2}+{g3,p2^2})/2 + l`.
///
/// `gl` supplies the lower-order functions `(g1, g2, g3, l)` as expressions
/// (typically jets of abstract functions of x and y).
pub fn build_integral_y(
    a: &IntegralCoefficients,
    g1: &DiffPoly,
    g2: &DiffPoly,
    g3: &DiffPoly,
    l: &DiffPoly,
) -> DiffOperator {
    let p1 = DiffOperator::p1();
    let p2 = DiffOperator::p2();
    let l3 = DiffOperator::l3();
    let mut y = DiffOperator::zero();
    for name in A_NAMES {
        let coeff = a.value(name);
        if coeff.is_zero() {
            continue;
        }
        let (j, k, lp) = a_jkl(name);
        let momenta = p1.pow(k) * p2.pow(lp);
        let anti = l3.pow(j).anticommutator(&momenta);
        y = y + anti.scale(&(coeff * MPoly::rational(1, 2)));
    }
    let half = MPoly::rational(1, 2);
    y = y + DiffOperator::from_expr(g1.clone())
        .anticommutator(&p1.pow(2))
        .scale(&half);
    y = y + DiffOperator::from_expr(g2.clone())
        .anticommutator(&(p1.clone() * p2.clone()))
        .scale(&half);
    y = y + DiffOperator::from_expr(g3.clone())
        .anticommutator(&p2.pow(2))
        .scale(&half);
    y + DiffOperator::from_expr(l.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::Func;

    #[test]
    fn h_commutes_with_itself() {
        let v = DiffPoly::func(&Func::of_xy("V"));
        let h = build_hamiltonian(&v);
        assert!(h.commutator(&h).is_zero());
    }

    #[test]
    fn heisenberg_relation() {
        // [H, p1^2] with V = x gives 2 i hbar^3? no: [V, p1^2] ... check
        // [H, p1^2] = [x, p1^2] = 2 i hbar p1 = 2 hbar^2 dx
        let h = build_hamiltonian(&DiffPoly::var("x"));
        let p1sq = DiffOperator::p1().pow(2);
        let c = h.commutator(&p1sq);
        // 2 i hbar * p1 = 2 i hbar * (-i hbar dx) = 2 hbar^2 dx
        let expect = DiffOperator::mono(
            1,
            0,
            DiffPoly::from_mpoly(MPoly::int(2) * MPoly::var_pow("hbar", 2)),
        );
        assert_eq!(c, expect);
    }

    #[test]
    fn l3_is_antisymmetric_combination() {
        // L3 applied as operator: x p2 - y p1
        let l3 = DiffOperator::l3();
        let manual = DiffOperator::from_expr(DiffPoly::var("x")) * DiffOperator::p2()
            - DiffOperator::from_expr(DiffPoly::var("y")) * DiffOperator::p1();
        assert_eq!(l3, manual);
    }

    #[test]
    fn commutator_antisymmetry_and_jacobi() {
        let v1 = DiffPoly::func(&Func::of_x("V1"));
        let a = build_hamiltonian(&v1);
        let b = DiffOperator::l3();
        let c = DiffOperator::p1() * DiffOperator::p2();
        assert_eq!(a.commutator(&b), b.commutator(&a).neg());
        let jacobi = a.commutator(&b.commutator(&c))
            + b.commutator(&c.commutator(&a))
            + c.commutator(&a.commutator(&b));
        assert!(jacobi.is_zero());
    }

    #[test]
    fn y_identity_case() {
        let a = IntegralCoefficients::only(&[]);
        let z = DiffPoly::zero();
        let y = build_integral_y(&a, &z, &z, &z, &DiffPoly::one());
        assert_eq!(y, DiffOperator::one());
    }

    #[test]
    fn y_leading_a013() {
        // only A013: the integral is A013 {1, p1 p2^3}/2 = A013 p1 p2^3,
        // i.e. the displayed leading form 2 A013 p1 p2^3 counts each
        // anticommutator twice
        let a = IntegralCoefficients::only(&[("A013", MPoly::var("A013"))]);
        let z = DiffPoly::zero();
        let y = build_integral_y(&a, &z, &z, &z, &z);
        let expect =
            (DiffOperator::p1() * DiffOperator::p2().pow(3)).scale(&MPoly::var("A013"));
        assert_eq!(y, expect);
        // the coefficient of dx dy^3 is hbar^4 A013 (= hbar^4 f4 for this A)
        assert_eq!(
            y.coeff(1, 3),
            DiffPoly::from_mpoly(MPoly::var_pow("hbar", 4) * MPoly::var("A013"))
        );
    }
}
