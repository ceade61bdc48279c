//! Rational functions in one variable over an exact field.
//!
//! Used to take limits of expressions that are regular at a point but
//! whose displayed factors have cancelling poles there.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// `num / den` with a monic denominator free of powers of `t`.
#[derive(Clone)]
pub struct RatFunc<T: Field> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Field> RatFunc<T> {
    pub fn constant(c: T) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::constant(T::one()) }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        RatFunc { num: Poly::t(), den: Poly::constant(T::one()) }
    }

    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Pole("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    /// Moves powers of `t` into the numerator and makes the denominator
    /// monic. Common factors are left alone: a Euclidean gcd over a number
    /// field is far costlier than the extra degree, and the only
    /// cancellation that matters happens in `limit_at_one`.
    fn reduced(num: Poly<T>, den: Poly<T>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: Poly::constant(T::one()) };
        }
        let shift = den.low_exponent();
        let lead = den.coeff(den.degree().expect("nonzero"));
        let li = Poly::constant(lead.inv().expect("nonzero leading coefficient"));
        RatFunc { num: (num * li.clone()).shift(-shift), den: (den * li).shift(-shift) }
    }

    /// The same function with common factors removed.
    pub fn lowest_terms(&self) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        let g = self.num.gcd(&self.den);
        Self::reduced(
            self.num.div_exact_poly(&g).expect("gcd divides"),
            self.den.div_exact_poly(&g).expect("gcd divides"),
        )
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    /// The value at `t = 1`, cancelling common factors `t − 1` first; an
    /// error when `t = 1` is still a pole.
    pub fn limit_at_one(&self) -> Result<T> {
        let t_minus_1 = Poly::t() - Poly::constant(T::one());
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        while !num.is_zero() && den.eval_at_one().is_zero() {
            if !num.eval_at_one().is_zero() {
                return Err(Error::Pole("rational function has a pole at t = 1".into()));
            }
            num = num.div_exact_poly(&t_minus_1).expect("t = 1 is a root");
            den = den.div_exact_poly(&t_minus_1).expect("t = 1 is a root");
        }
        if num.is_zero() {
            return Ok(T::zero());
        }
        Ok(num.eval_at_one() * den.eval_at_one().inv().expect("checked nonzero"))
    }
}

impl<T: Field> PartialEq for RatFunc<T> {
    fn eq(&self, other: &Self) -> bool {
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl<T: Field> fmt::Debug for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) / ({:?})", self.num, self.den)
    }
}

impl<T: Field> Add for RatFunc<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::reduced(self.num + rhs.num, self.den);
        }
        Self::reduced(self.num * rhs.den.clone() + rhs.num * self.den.clone(), self.den * rhs.den)
    }
}

impl<T: Field> Sub for RatFunc<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Field> Mul for RatFunc<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::reduced(self.num * rhs.num, self.den * rhs.den)
    }
}

impl<T: Field> Neg for RatFunc<T> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<T: Field> Ring for RatFunc<T> {
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        Self::constant(T::zero())
    }
    fn one() -> Self {
        Self::constant(T::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(T::from_i64(v))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }
}

impl<T: Field> Field for RatFunc<T> {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::reduced(self.den.clone(), self.num.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn c(v: i64) -> RatFunc<Rational> {
        RatFunc::constant(Rational::from(v))
    }

    #[test]
    fn cancels_common_factors() {
        let t = RatFunc::<Rational>::t();
        // (t² − 1) / (t − 1) = t + 1
        let f = (t.clone() * t.clone() - c(1)) * (t.clone() - c(1)).inv().unwrap();
        assert_eq!(f, t.clone() + c(1));
        assert_eq!(f.limit_at_one().unwrap(), Rational::from(2));
        assert_eq!(f.lowest_terms().denominator(), &Poly::constant(Rational::from(1)));
    }

    #[test]
    fn pole_at_one() {
        let t = RatFunc::<Rational>::t();
        let f = (t - c(1)).inv().unwrap();
        assert!(f.limit_at_one().is_err());
    }

    #[test]
    fn laurent_powers_are_units() {
        let t = RatFunc::<Rational>::t();
        let f = t.inv().unwrap() - t.clone();
        let g = f.clone() * f.inv().unwrap();
        assert_eq!(g, c(1));
        assert_eq!(f.limit_at_one().unwrap(), Rational::from(0));
    }
}
