//! Exact sparse polynomials in `x`, `y` and `s` over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponents of `x`, `y` and `s`.
pub type Exponents = (u32, u32, u32);

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Exponents, BigRational>,
}

/// Values to substitute; `None` leaves the variable symbolic.
#[derive(Debug, Clone, Default)]
pub struct Substitution {
    pub x: Option<BigRational>,
    pub y: Option<BigRational>,
    pub s: Option<BigRational>,
}

impl Substitution {
    pub fn x(value: i64) -> Self {
        Substitution {
            x: Some(BigRational::from_integer(value.into())),
            ..Default::default()
        }
    }

    pub fn y(value: i64) -> Self {
        Substitution {
            y: Some(BigRational::from_integer(value.into())),
            ..Default::default()
        }
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(value: BigRational) -> Self {
        Polynomial::monomial(value, (0, 0, 0))
    }

    pub fn integer(value: i64) -> Self {
        Polynomial::constant(BigRational::from_integer(value.into()))
    }

    pub fn monomial(coefficient: BigRational, exponents: Exponents) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponents, coefficient);
        }
        Polynomial { terms }
    }

    pub fn x() -> Self {
        Polynomial::monomial(BigRational::one(), (1, 0, 0))
    }

    pub fn y() -> Self {
        Polynomial::monomial(BigRational::one(), (0, 1, 0))
    }

    pub fn s() -> Self {
        Polynomial::monomial(BigRational::one(), (0, 0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: Exponents) -> BigRational {
        self.terms.get(&exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut result = Polynomial::one();
        for _ in 0..exponent {
            result = &result * self;
        }
        result
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    /// Substitutes the given values, leaving the other variables symbolic.
    pub fn eval(&self, at: &Substitution) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&(dx, dy, ds), c) in &self.terms {
            let mut coefficient = c.clone();
            let mut exponents = (dx, dy, ds);
            if let Some(v) = &at.x {
                coefficient *= num_traits::pow(v.clone(), dx as usize);
                exponents.0 = 0;
            }
            if let Some(v) = &at.y {
                coefficient *= num_traits::pow(v.clone(), dy as usize);
                exponents.1 = 0;
            }
            if let Some(v) = &at.s {
                coefficient *= num_traits::pow(v.clone(), ds as usize);
                exponents.2 = 0;
            }
            out.add_term(exponents, coefficient);
        }
        out
    }

    /// Swaps the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(dx, dy, ds), c)| ((dy, dx, ds), c.clone()))
                .collect(),
        }
    }

    fn add_term(&mut self, exponents: Exponents, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponents).or_insert_with(BigRational::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.terms.remove(&exponents);
        }
    }
}

impl From<BigInt> for Polynomial {
    fn from(value: BigInt) -> Self {
        Polynomial::constant(BigRational::from_integer(value))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&(ax, ay, as_), ca) in &self.terms {
            for (&(bx, by, bs), cb) in &rhs.terms {
                out.add_term((ax + bx, ay + by, as_ + bs), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident::$method:ident),*) => {$(
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Terms by descending `(deg_x, deg_y, deg_s)`, variables written `s`, `x`, `y`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(dx, dy, ds), c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (name, degree) in [("s", ds), ("x", dx), ("y", dy)] {
                match degree {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    d => factors.push(format!("{name}^{d}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", magnitude, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int(v: i64) -> Polynomial {
        Polynomial::integer(v)
    }

    #[test]
    fn evaluation_examples() {
        let x = Polynomial::x();
        let y = Polynomial::y();
        assert!(x.pow(4).eval(&Substitution::x(0)).is_zero());
        let p = &x.pow(3) * &y;
        assert!(p.eval(&Substitution::y(0)).is_zero());
        assert_eq!(p.eval(&Substitution::x(1)), y);
        let q = (&x - &int(1)).pow(2);
        assert_eq!(q.eval(&Substitution::x(3)), int(4));
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        let p = &Polynomial::y() + &int(2);
        assert_eq!(p.eval(&Substitution::x(0)), p);
    }

    #[test]
    fn rendering() {
        let s = Polynomial::s();
        let x = Polynomial::x();
        assert_eq!((&s.pow(4) * &x.pow(4)).to_string(), "s^4*x^4");
        assert_eq!((&x.pow(3) * &Polynomial::y()).to_string(), "x^3*y");
        assert_eq!((&x - &int(1)).to_string(), "x - 1");
        assert_eq!((-&x).to_string(), "-x");
        let half = Polynomial::constant(BigRational::new(1.into(), 2.into()));
        assert_eq!((&half * &x).to_string(), "1/2*x");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..6), 0..5).prop_map(|terms| {
            terms.into_iter().fold(Polynomial::zero(), |acc, (e, c)| {
                &acc + &Polynomial::monomial(BigRational::from_integer(c.into()), e)
            })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), v in -3i64..4) {
            let at = Substitution::x(v);
            prop_assert_eq!((&a * &b).eval(&at), &a.eval(&at) * &b.eval(&at));
            prop_assert_eq!((&a + &b).eval(&at), &a.eval(&at) + &b.eval(&at));
        }
    }
}
