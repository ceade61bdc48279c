//! Dense univariate (Laurent) polynomials over an exact ring.
//!
//! A polynomial is `t^low · (c₀ + c₁ t + …)`. The representation is
//! canonical: the zero polynomial has no coefficients and `low = 0`,
//! otherwise both the first and the last stored coefficient are nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    low: i64,
    coeffs: Vec<T>,
}

/// Polynomials with rational coefficients, the type used for generating functions.
pub type IntPolynomial = Poly<Rational>;

impl<T: Ring> Poly<T> {
    pub fn zero() -> Self {
        Poly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c · t^exp`; `exp` may be negative.
    pub fn monomial(c: T, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// Builds `Σ coeffs[i] t^(low+i)`.
    pub fn from_coeffs(low: i64, coeffs: Vec<T>) -> Self {
        let mut p = Poly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_exponent(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Coefficient of `t^exp`.
    pub fn coeff(&self, exp: i64) -> T {
        let idx = exp - self.low;
        if idx < 0 {
            return T::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Ordinary polynomial (no negative exponents).
    pub fn is_polynomial(&self) -> bool {
        self.low >= 0
    }

    /// Coefficient vector from degree 0 up; fails on negative exponents.
    pub fn dense_coeffs(&self) -> Option<Vec<T>> {
        if self.low < 0 {
            return None;
        }
        let mut out = vec![T::zero(); self.low as usize];
        out.extend(self.coeffs.iter().cloned());
        Some(out)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Poly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Value at `t = 1`, i.e. the sum of the coefficients.
    pub fn eval_at_one(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// Substitution `t → t^k` for `k ≥ 1`.
    pub fn compose_power(&self, k: i64) -> Self {
        assert!(k >= 1, "compose_power needs a positive exponent");
        let mut out = Poly::zero();
        for (e, c) in self.terms() {
            out = out + Poly::monomial(c.clone(), e * k);
        }
        out
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let coeffs = (low..=high)
            .map(|e| self.coeff(e) + rhs.coeff(e))
            .collect();
        Poly::from_coeffs(low, coeffs)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let slot = std::mem::replace(&mut out[i + j], T::zero());
                out[i + j] = slot + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(self.low + rhs.low, out)
    }

    /// Exact quotient `self / den` in the Laurent ring, `None` on a nonzero remainder.
    pub fn div_exact_poly(&self, den: &Self) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        // both are normalized, so the t-adic parts are split off already
        let n = &self.coeffs;
        let d = &den.coeffs;
        if n.len() < d.len() {
            return None;
        }
        let qlen = n.len() - d.len() + 1;
        let mut rem: Vec<T> = n.clone();
        let mut q = vec![T::zero(); qlen];
        let lead = d.last().unwrap();
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.div_exact(lead)?;
            for (j, dj) in d.iter().enumerate() {
                if dj.is_zero() {
                    continue;
                }
                let slot = std::mem::replace(&mut rem[k + j], T::zero());
                rem[k + j] = slot - c.clone() * dj.clone();
            }
            q[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(self.low - den.low, q))
    }

    /// Applies a ring map to the coefficients.
    pub fn map_coeffs<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.low, self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Poly<T> {
    /// Value at `t`; negative exponents need `t` invertible.
    pub fn eval(&self, t: &T) -> Option<T> {
        if self.is_zero() {
            return Some(T::zero());
        }
        // Horner on the stored block, then the t^low factor
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t.clone() + c.clone();
        }
        Some(acc * t.powi(self.low)?)
    }
}

impl<T: Field> Poly<T> {
    /// Monic greatest common divisor, with powers of `t` treated as units.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            let r = rem_dense(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        match a.last() {
            None => Poly::zero(),
            Some(lead) => {
                let li = lead.inv().expect("nonzero leading coefficient");
                Poly::from_coeffs(0, a.iter().map(|c| c.clone() * li.clone()).collect())
            }
        }
    }
}

/// Remainder of dense coefficient vectors over a field, trimmed.
fn rem_dense<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    let mut r = a.to_vec();
    let lead = b.last().and_then(|c| c.inv()).expect("normalized divisor");
    while r.len() >= b.len() {
        let c = r.last().unwrap().clone() * lead.clone();
        let k = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            let slot = std::mem::replace(&mut r[k + j], T::zero());
            r[k + j] = slot - c.clone() * bj.clone();
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    while r.first().is_some_and(|c| c.is_zero()) {
        r.remove(0);
    }
    r
}

/// Exact polynomial division; a nonzero remainder means the caller's
/// formula or convention is wrong.
pub fn poly_exact_div<T: Ring>(num: &Poly<T>, den: &Poly<T>) -> Result<Poly<T>> {
    if den.is_zero() {
        return Err(Error::InvalidInput("division by the zero polynomial".into()));
    }
    num.div_exact_poly(den)
        .ok_or_else(|| Error::NotDivisible("polynomial division left a nonzero remainder".into()))
}

impl<T: Ring> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        self.add_ref(&rhs)
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        self.add_ref(&-rhs)
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        self.mul_ref(&rhs)
    }
}

impl<'a, T: Ring> Mul<&'a Poly<T>> for &'a Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &'a Poly<T>) -> Poly<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            low: self.low,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Ring> Ring for Poly<T> {
    const IS_FIELD: bool = false;

    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(T::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(T::from_i64(v))
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_exact_poly(d)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    /// `6 + 24x + 12x^2` style, in increasing degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = body == "1";
            match e {
                0 => write!(f, "{body}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{body}x")?,
                _ if unit => write!(f, "x^{e}")?,
                _ => write!(f, "{body}x^{e}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poly")
            .field("low", &self.low)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(low: i64, cs: &[i64]) -> IntPolynomial {
        Poly::from_coeffs(low, cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn exact_division_examples() {
        // (t² − 1)/(t − 1) = t + 1
        assert_eq!(poly_exact_div(&p(0, &[-1, 0, 1]), &p(0, &[-1, 1])).unwrap(), p(0, &[1, 1]));
        // (t³ − 1)/(t − 1) = t² + t + 1
        assert_eq!(
            poly_exact_div(&p(0, &[-1, 0, 0, 1]), &p(0, &[-1, 1])).unwrap(),
            p(0, &[1, 1, 1])
        );
    }

    #[test]
    fn division_reports_remainder() {
        let err = poly_exact_div(&p(0, &[1, 0, 1]), &p(0, &[-1, 1])).unwrap_err();
        assert!(matches!(err, Error::NotDivisible(_)));
        assert!(poly_exact_div(&p(0, &[1]), &IntPolynomial::zero()).is_err());
    }

    #[test]
    fn laurent_offsets_cancel() {
        // (t − t⁻¹) / (1 − t⁻²) = t
        let num = p(-1, &[-1, 0, 1]);
        let den = p(-2, &[-1, 0, 1]);
        assert_eq!(poly_exact_div(&num, &den).unwrap(), p(1, &[1]));
    }

    #[test]
    fn normalization_strips_zeros() {
        let q = p(-3, &[0, 0, 5, 0]);
        assert_eq!(q.low_exponent(), -1);
        assert_eq!(q.degree(), Some(-1));
        assert!(p(4, &[0, 0]).is_zero());
        assert_eq!(p(4, &[0]).low_exponent(), 0);
    }

    #[test]
    fn evaluation_and_limit() {
        let q = p(-1, &[1, 2, 3]); // t⁻¹ + 2 + 3t
        assert_eq!(q.eval(&Rational::from(2)).unwrap(), Rational::new(17, 2));
        assert_eq!(q.eval_at_one(), Rational::from(6));
        assert!(q.eval(&Rational::from(0)).is_none());
    }

    #[test]
    fn display_matches_generating_function_style() {
        assert_eq!(p(0, &[6, 24, 12]).to_string(), "6 + 24x + 12x^2");
        assert_eq!(p(0, &[6, 1]).to_string(), "6 + x");
        assert_eq!(p(0, &[0, -1, 0, 2]).to_string(), "-x + 2x^3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn integer_coefficients_divide_over_z() {
        use num_bigint::BigInt;
        let t = Poly::<BigInt>::t();
        let one = Poly::<BigInt>::one();
        let num = (t.clone() - one.clone()) * (t.clone() * t.clone() + one.clone() + one.clone());
        let q = poly_exact_div(&num, &(t.clone() - one.clone())).unwrap();
        assert_eq!(q, t.clone() * t + one.clone() + one);
    }
}
