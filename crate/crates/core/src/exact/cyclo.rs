//! The cyclotomic field Q(ζ₂₄).
//!
//! Elements are residues of rational polynomials in ζ modulo
//! Φ₂₄(ζ) = ζ⁸ − ζ⁴ + 1, stored as the eight coefficients of 1, ζ, …, ζ⁷.
//! Every root of unity of order dividing 24 lives here, which covers
//! ζ₄, ζ₆, ζ₈ and ζ₁₂ (and √−1 = ζ₄).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

const DEG: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo24 {
    coeffs: [Rational; DEG],
}

impl Cyclo24 {
    pub fn from_coeffs(coeffs: [Rational; DEG]) -> Self {
        Cyclo24 { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational; DEG] {
        &self.coeffs
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c: [Rational; DEG] = Default::default();
        c[0] = r;
        Cyclo24 { coeffs: c }
    }

    /// ζ₂₄ raised to `m` (any integer).
    pub fn zeta_pow(m: i64) -> Self {
        let m = m.rem_euclid(24) as usize;
        // ζ¹² = −1
        let (m, sign) = if m >= 12 { (m - 12, -1) } else { (m, 1) };
        let mut c: [Rational; DEG] = Default::default();
        if m < DEG {
            c[m] = Rational::from(sign);
        } else {
            // ζ^m = ζ^(m−4) − ζ^(m−8) for 8 ≤ m < 12
            c[m - 4] = Rational::from(sign);
            c[m - 8] = Rational::from(-sign);
        }
        Cyclo24 { coeffs: c }
    }

    /// The rational value, if this element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The eight coefficients in `"p/q"` form.
    pub fn to_wire(&self) -> [String; DEG] {
        std::array::from_fn(|i| self.coeffs[i].to_wire())
    }

    pub fn from_wire(parts: &[String]) -> Result<Self> {
        if parts.len() != DEG {
            return Err(Error::Parse(format!(
                "Q(ζ24) element needs {DEG} coefficients, got {}",
                parts.len()
            )));
        }
        let mut c: [Rational; DEG] = Default::default();
        for (slot, s) in c.iter_mut().zip(parts) {
            *slot = s.parse()?;
        }
        Ok(Cyclo24 { coeffs: c })
    }

    fn mul_ref(&self, rhs: &Cyclo24) -> Cyclo24 {
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        let mut prod: Vec<Rational> = vec![Rational::zero(); 2 * DEG - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        reduce(prod)
    }

    pub fn scale(&self, r: &Rational) -> Cyclo24 {
        Cyclo24 {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] * r),
        }
    }

    /// Inverse by solving `self · b = 1` in the power basis.
    fn inverse(&self) -> Option<Cyclo24> {
        if let Some(r) = self.to_rational() {
            return r.recip().map(Cyclo24::from_rational);
        }
        if self.is_zero() {
            return None;
        }
        // column j of the multiplication matrix is self · ζ^j
        let mut cols: Vec<Cyclo24> = Vec::with_capacity(DEG);
        let mut cur = self.clone();
        for _ in 0..DEG {
            cols.push(cur.clone());
            cur = cur.mul_ref(&Cyclo24::zeta_pow(1));
        }
        let mut aug: Vec<Vec<Rational>> = (0..DEG)
            .map(|row| {
                let mut r: Vec<Rational> = cols.iter().map(|c| c.coeffs[row].clone()).collect();
                r.push(if row == 0 { Rational::one() } else { Rational::zero() });
                r
            })
            .collect();
        for col in 0..DEG {
            let piv = (col..DEG).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip()?;
            for k in col..=DEG {
                aug[col][k] = &aug[col][k] * &inv;
            }
            for r in 0..DEG {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for k in col..=DEG {
                        let t = &f * &aug[col][k];
                        aug[r][k] -= &t;
                    }
                }
            }
        }
        Some(Cyclo24 {
            coeffs: std::array::from_fn(|i| aug[i][DEG].clone()),
        })
    }
}

fn reduce(mut prod: Vec<Rational>) -> Cyclo24 {
    // ζ^k = ζ^(k−4) − ζ^(k−8)
    for k in (DEG..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        prod[k - 4] += &c;
        prod[k - 8] -= &c;
    }
    prod.truncate(DEG);
    let mut it = prod.into_iter();
    Cyclo24 {
        coeffs: std::array::from_fn(|_| it.next().unwrap_or_default()),
    }
}

/// `ζ_k = ζ₂₄^(24/k)` for `k` dividing 24.
pub fn cyclo_root(k: u32) -> Result<Cyclo24> {
    if k == 0 || 24 % k != 0 {
        return Err(Error::InvalidInput(format!(
            "root order {k} does not divide 24"
        )));
    }
    Ok(Cyclo24::zeta_pow(i64::from(24 / k)))
}

impl Default for Cyclo24 {
    fn default() -> Self {
        Cyclo24::zero()
    }
}

impl From<Rational> for Cyclo24 {
    fn from(r: Rational) -> Self {
        Cyclo24::from_rational(r)
    }
}

impl From<i64> for Cyclo24 {
    fn from(v: i64) -> Self {
        Cyclo24::from_rational(Rational::from(v))
    }
}

impl Add for Cyclo24 {
    type Output = Cyclo24;
    fn add(mut self, rhs: Cyclo24) -> Cyclo24 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
        self
    }
}

impl Sub for Cyclo24 {
    type Output = Cyclo24;
    fn sub(mut self, rhs: Cyclo24) -> Cyclo24 {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
        self
    }
}

impl Mul for Cyclo24 {
    type Output = Cyclo24;
    fn mul(self, rhs: Cyclo24) -> Cyclo24 {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a Cyclo24> for &'a Cyclo24 {
    type Output = Cyclo24;
    fn mul(self, rhs: &'a Cyclo24) -> Cyclo24 {
        self.mul_ref(rhs)
    }
}

impl Neg for Cyclo24 {
    type Output = Cyclo24;
    fn neg(self) -> Cyclo24 {
        Cyclo24 {
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

impl Ring for Cyclo24 {
    const IS_FIELD: bool = true;

    fn zero() -> Self {
        Cyclo24 {
            coeffs: Default::default(),
        }
    }
    fn one() -> Self {
        Cyclo24::from_rational(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn from_i64(v: i64) -> Self {
        Cyclo24::from(v)
    }
    fn div_exact(&self, d: &Self) -> Option<Self> {
        d.inverse().map(|inv| self.mul_ref(&inv))
    }
}

impl Field for Cyclo24 {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

impl fmt::Display for Cyclo24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})ζ")?,
                _ => write!(f, "({c})ζ^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclo24 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cyclo24 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_wire().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclo24 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        Cyclo24::from_wire(&parts).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn root(k: u32) -> Cyclo24 {
        cyclo_root(k).unwrap()
    }

    #[test]
    fn roots_have_exact_order() {
        for k in [1u32, 2, 3, 4, 6, 8, 12, 24] {
            let z = root(k);
            assert!(z.pow(u64::from(k)).is_one(), "ζ_{k}^{k} != 1");
            for j in 1..k {
                assert!(!z.pow(u64::from(j)).is_one(), "ζ_{k}^{j} == 1");
            }
        }
    }

    #[test]
    fn rejects_non_divisors() {
        for k in [0u32, 5, 7, 9, 16, 48] {
            assert!(cyclo_root(k).is_err());
        }
    }

    #[test]
    fn fourth_root_squares_to_minus_one() {
        let i = root(4);
        assert_eq!(i.coeffs()[6], Rational::one());
        assert_eq!(i.pow(2), Cyclo24::from(-1));
    }

    #[test]
    fn sixth_root_minimal_polynomial() {
        let z = root(6);
        assert_eq!(z, Cyclo24::zeta_pow(4));
        let v = z.pow(2) - z.clone() + Cyclo24::one();
        assert!(v.is_zero());
    }

    #[test]
    fn cyclotomic_polynomial_vanishes_at_zeta() {
        let z = root(24);
        let v = z.pow(8) - z.pow(4) + Cyclo24::one();
        assert!(v.is_zero());
        assert!(z.pow(24).is_one());
    }

    #[test]
    fn root_tower_relations() {
        assert_eq!(root(8).pow(2), root(4));
        assert_eq!(root(12).pow(3), root(4));
        assert_eq!(root(6), root(12).pow(2));
    }

    #[test]
    fn rational_round_trip() {
        let r = Rational::new(-7, 3);
        let c = Cyclo24::from(r.clone());
        assert_eq!(c.to_rational(), Some(r));
        assert_eq!(root(4).to_rational(), None);
    }

    #[test]
    fn inverse_of_algebraic_element() {
        let a = root(24) + Cyclo24::from(2) * root(8) - Cyclo24::from(Rational::new(1, 3));
        let inv = a.inv().unwrap();
        assert!((a * inv).is_one());
        assert!(Cyclo24::zero().inv().is_none());
    }

    #[test]
    fn serde_uses_eight_strings() {
        let z = root(4);
        let js = serde_json::to_string(&z).unwrap();
        assert_eq!(
            js,
            r#"["0/1","0/1","0/1","0/1","0/1","0/1","1/1","0/1"]"#
        );
        let back: Cyclo24 = serde_json::from_str(&js).unwrap();
        assert_eq!(back, z);
    }
}
