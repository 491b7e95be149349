//! Rational functions `p/q` over the Laurent-polynomial ring.
//!
//! Used by the singularity-test recursion, where expansion coefficients are
//! rational in the leading data and in `hbar`. A full multivariate gcd is
//! never needed: cancellation happens through exact division attempts plus
//! monomial/rational content stripping, which keeps the expressions that
//! actually arise here small.

use crate::mpoly::{MPoly, Monomial};
use crate::scalar::ExactScalar;
use num::rational::BigRational;
use num::traits::One;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct Rat {
    pub num: MPoly,
    pub den: MPoly,
}

fn content_monomial(p: &MPoly) -> Monomial {
    let mut vars = p.variables();
    vars.sort();
    let mut m = Monomial::one();
    for v in &vars {
        let e = p
            .terms
            .keys()
            .map(|mono| mono.exponent(v))
            .min()
            .unwrap_or(0);
        if e != 0 {
            m = m.mul(&Monomial::var_pow(v.clone(), e));
        }
    }
    m
}

fn strip_monomial(p: &MPoly, m: &Monomial) -> MPoly {
    let inv = Monomial(m.0.iter().map(|(s, e)| (s.clone(), -e)).collect());
    let mut out = MPoly::zero();
    for (mono, c) in &p.terms {
        out.add_term(mono.mul(&inv), c.clone());
    }
    out
}

impl Rat {
    pub fn zero() -> Self {
        Rat {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Rat::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        Rat {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = Rat { num, den };
        r.reduce();
        r
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Polynomial view, if the denominator divides out completely.
    pub fn as_poly(&self) -> Option<MPoly> {
        if self.den.as_constant().is_some() {
            let c = self.den.as_constant().unwrap();
            Some(self.num.scale(&c.inv()))
        } else {
            self.num.div_exact(&self.den)
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MPoly::one();
            return;
        }
        // full cancellation when the denominator divides the numerator
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = MPoly::one();
        }
        // monomial content (Laurent exponents shift freely)
        let cm = content_monomial(&self.num);
        let dm = content_monomial(&self.den);
        // cancel the shared part
        let mut shared = Vec::new();
        for (s, e) in &cm.0 {
            let ed = dm.exponent(s);
            let both = (*e).min(ed);
            if both != 0 {
                shared.push((s.clone(), both));
            }
        }
        // also cancel opposite-sign content (negative exponents) by shifting
        for (s, e) in &dm.0 {
            if cm.exponent(s) == 0 && *e < 0 {
                shared.push((s.clone(), *e));
            }
        }
        for (s, e) in &cm.0 {
            if dm.exponent(s) == 0 && *e < 0 {
                shared.push((s.clone(), *e));
            }
        }
        shared.sort_by(|a, b| a.0.cmp(&b.0));
        shared.dedup_by(|a, b| a.0 == b.0);
        let shared = Monomial(shared.into_iter().filter(|(_, e)| *e != 0).collect());
        if !shared.0.is_empty() {
            self.num = strip_monomial(&self.num, &shared);
            self.den = strip_monomial(&self.den, &shared);
        }
        // rational content: make the denominator's leading coefficient one
        if let Some((_, lead)) = self.den.terms.iter().next_back() {
            let inv = lead.clone().inv();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        // numerator/denominator rational contents
        if let (Some(cn), Some(cd)) = (self.num.rational_content(), self.den.rational_content()) {
            if !cd.is_one() {
                let s = ExactScalar::new(cd.recip(), BigRational::from_integer(0.into()));
                self.num = self.num.scale(&s);
                self.den = self.den.scale(&s);
                let _ = cn;
            }
        }
    }

    pub fn inv(&self) -> Rat {
        assert!(!self.is_zero(), "inverting zero");
        Rat::new(self.den.clone(), self.num.clone())
    }

    pub fn eval_f64(&self, bind: &dyn Fn(&crate::sym::Sym) -> f64) -> f64 {
        self.num.eval_f64(bind) / self.den.eval_f64(bind)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        if self.den == rhs.den {
            return Rat::new(self.num + rhs.num, self.den);
        }
        Rat::new(
            &self.num * &rhs.den + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        self + rhs.neg()
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::zero();
        }
        // cross-cancel before multiplying to limit swell
        let (mut an, mut bd) = (self.num, rhs.den);
        if let Some(q) = an.div_exact(&bd) {
            an = q;
            bd = MPoly::one();
        }
        let (mut bn, mut ad) = (rhs.num, self.den);
        if let Some(q) = bn.div_exact(&ad) {
            bn = q;
            ad = MPoly::one();
        }
        Rat::new(&an * &bn, &ad * &bd)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self * rhs.inv()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let x = MPoly::var("x");
        let y = MPoly::var("y");
        let r = Rat::new((x.clone() + &y).pow(2), x.clone() + &y);
        assert_eq!(r, Rat::from_poly(x.clone() + &y));
    }

    #[test]
    fn field_ops() {
        let x = MPoly::var("x");
        let a = Rat::new(MPoly::one(), x.clone());
        let b = Rat::new(MPoly::one(), x.clone().pow(2));
        let s = a.clone() + b.clone();
        // 1/x + 1/x^2 = (x + 1)/x^2
        assert_eq!(s, Rat::new(x.clone() + MPoly::one(), x.clone().pow(2)));
        let p = a.clone() * a.clone().inv();
        assert_eq!(p, Rat::one());
        assert!((a.clone() - a).is_zero());
    }
}
