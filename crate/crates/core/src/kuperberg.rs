//! Determinant and Pfaffian partition functions of the square-ice models
//! attached to ASM classes, their character-side evaluations at the
//! roots of unity ζ₄, ζ₆, ζ₈, ζ₁₂, and the resulting x-enumeration values.
//!
//! The partition-function side is computed over [`Cyclo24`]. The character
//! side is a rational function of the spectral parameters and is computed
//! over [`Rational`]. Factors that would be 0/0 at the all-ones point go
//! through the character side, where characters become Weyl dimensions.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::asm::ClassTag;
use crate::chars::{char_bialternant, char_bialternant_sqrt, delta2, delta_sq2, weyl_dim, GroupSpec, Weight};
use crate::error::{Error, Result};
use crate::exact::{cyclo_root, generic_position, Cyclo24, Field, RatFunc, Rational, Sampler};
use crate::linalg::{det, hafnian, perm, pfaffian, Matrix};

/// `σ(t) = t − 1/t`.
pub fn sigma<T: Field>(t: &T) -> Result<T> {
    let inv = t.inv().ok_or_else(|| Error::Pole("σ(t) at t = 0".into()))?;
    Ok(t.clone() - inv)
}

fn inv<T: Field>(v: T, what: impl FnOnce() -> String) -> Result<T> {
    v.inv().ok_or_else(|| Error::Pole(format!("{} vanishes", what())))
}

fn ratio<T: Field>(p: &T, q: &T) -> Result<T> {
    Ok(p.clone() * inv(q.clone(), || "spectral parameter".into())?)
}

fn powi<T: Field>(v: &T, e: i64) -> Result<T> {
    v.powi(e).ok_or_else(|| Error::Pole("negative power of zero".into()))
}

// ---------------------------------------------------------------------------
// cases and roots

/// The partition functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// `A(n; x, y; a)`
    A,
    /// `A_HT^(2)(2n; x, y; a)`
    Ht2,
    /// `A_V(2n+1; x, y; a)`
    V,
    /// `A_UU^(2)(4n; x, y; a, b, c)`
    Uu2,
    /// `A_VH^(2)(4n+1; x, y; a)`
    Vh2_4n1,
    /// `A_VH^(2)(4n+3; x, y; a)`
    Vh2_4n3,
    /// `A_VHP^(2)(4n+2; x, y; a)`
    Vhp2,
    /// `A_QT^(1)(4n; x; a)`
    Qt1,
    /// `A_QT^(2)(4n; x; a)`
    Qt2,
    /// `A_OD(2n; x; a)`
    Od,
    /// `A_OO^(2)(4n; x; a, b, c)`
    Oo2,
    /// `A_UO^(1)(8n; x; a)`
    Uo1,
    /// `A_UO^(2)(8n; x; a, c)`
    Uo2,
    /// `A_VO^(2)(8n+1; x; a)`
    Vo2_8n1,
    /// `A_VO^(2)(8n+3; x; a)`
    Vo2_8n3,
}

impl Case {
    pub const ALL: [Case; 15] = [
        Case::A,
        Case::Ht2,
        Case::V,
        Case::Uu2,
        Case::Vh2_4n1,
        Case::Vh2_4n3,
        Case::Vhp2,
        Case::Qt1,
        Case::Qt2,
        Case::Od,
        Case::Oo2,
        Case::Uo1,
        Case::Uo2,
        Case::Vo2_8n1,
        Case::Vo2_8n3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Case::A => "A",
            Case::Ht2 => "HT2",
            Case::V => "V",
            Case::Uu2 => "UU2",
            Case::Vh2_4n1 => "VH2_4n1",
            Case::Vh2_4n3 => "VH2_4n3",
            Case::Vhp2 => "VHP2",
            Case::Qt1 => "QT1",
            Case::Qt2 => "QT2",
            Case::Od => "OD",
            Case::Oo2 => "OO2",
            Case::Uo1 => "UO1",
            Case::Uo2 => "UO2",
            Case::Vo2_8n1 => "VO2_8n1",
            Case::Vo2_8n3 => "VO2_8n3",
        }
    }

    /// Pfaffian cases take `2n` spectral parameters `x`; determinant cases
    /// take `n` each of `x` and `y`.
    pub fn is_pfaffian(self) -> bool {
        matches!(
            self,
            Case::Qt1 | Case::Qt2 | Case::Od | Case::Oo2 | Case::Uo1 | Case::Uo2 | Case::Vo2_8n1 | Case::Vo2_8n3
        )
    }

    /// Roots at which a character-side formula is known.
    pub fn roots(self) -> &'static [Root] {
        use Root::*;
        match self {
            Case::A | Case::V => &[Z4, Z6, Z8, Z12],
            Case::Ht2 | Case::Uu2 | Case::Vh2_4n1 | Case::Vh2_4n3 | Case::Vhp2 | Case::Qt1 | Case::Qt2 => {
                &[Z4, Z6, Z8]
            }
            Case::Od | Case::Uo1 | Case::Uo2 | Case::Vo2_8n1 | Case::Vo2_8n3 => &[Z4, Z6],
            Case::Oo2 => &[Z4],
        }
    }

    /// Whether the formula at `root` is stated on the diagonal `y = x`.
    pub fn diagonal_only(self, root: Root) -> bool {
        !self.is_pfaffian() && (root == Root::Z12 || (root == Root::Z8 && self != Case::A && self != Case::V))
    }

    /// Number of spectral parameters in `x` (and in `y` for determinant cases).
    pub fn arity(self, n: usize) -> usize {
        if self.is_pfaffian() {
            2 * n
        } else {
            n
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Case::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<_> = Case::ALL.iter().map(|c| c.name()).collect();
                Error::Parse(format!("unknown case {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

impl Serialize for Case {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Case {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The roots of unity `a` with `x = a² + 2 + a⁻²` ∈ {0, 1, 2, 3}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Root {
    #[serde(rename = "zeta4")]
    Z4,
    #[serde(rename = "zeta6")]
    Z6,
    #[serde(rename = "zeta8")]
    Z8,
    #[serde(rename = "zeta12")]
    Z12,
}

impl Root {
    pub const ALL: [Root; 4] = [Root::Z4, Root::Z6, Root::Z8, Root::Z12];

    pub fn order(self) -> u32 {
        match self {
            Root::Z4 => 4,
            Root::Z6 => 6,
            Root::Z8 => 8,
            Root::Z12 => 12,
        }
    }

    /// The value of `x = a² + 2 + a⁻²`.
    pub fn xval(self) -> u32 {
        match self {
            Root::Z4 => 0,
            Root::Z6 => 1,
            Root::Z8 => 2,
            Root::Z12 => 3,
        }
    }

    pub fn from_xval(x: u32) -> Result<Root> {
        Root::ALL
            .into_iter()
            .find(|r| r.xval() == x)
            .ok_or_else(|| Error::InvalidInput(format!("x = {x} has no root of unity in the table (use 0, 1, 2 or 3)")))
    }

    pub fn value(self) -> Cyclo24 {
        cyclo_root(self.order()).expect("divides 24")
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ{}", self.order())
    }
}

/// Maps subscript digits to ASCII, so `ζ₁₂` reads as `ζ12`.
pub(crate) fn ascii_digits(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '₀'..='₉' => char::from(b'0' + (c as u32 - '₀' as u32) as u8),
            _ => c,
        })
        .collect()
}

impl FromStr for Root {
    type Err = Error;

    /// Accepts `12`, `z12`, `zeta12`, `ζ12` and `ζ₁₂`.
    fn from_str(s: &str) -> Result<Self> {
        let t = ascii_digits(s.trim()).to_lowercase();
        let digits = t.trim_start_matches("zeta").trim_start_matches('ζ').trim_start_matches('z');
        digits
            .parse::<u32>()
            .ok()
            .and_then(|k| Root::ALL.into_iter().find(|r| r.order() == k))
            .ok_or_else(|| Error::Parse(format!("unknown root {s:?}; expected ζ4, ζ6, ζ8 or ζ12")))
    }
}

// ---------------------------------------------------------------------------
// kernels and prefactors

/// The matrices whose determinants or Pfaffians enter the partition functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelKind {
    M,
    MHt,
    MU,
    MUu,
    /// `M_QT^(k)`
    MQt(i64),
    MOd,
    MOo,
    MUo1,
    MUo2,
}

/// Scalar parameters `a, b, c`; `b` and `c` default to `a` when absent.
#[derive(Clone, Debug)]
pub struct Params<T> {
    pub a: T,
    pub b: Option<T>,
    pub c: Option<T>,
}

impl<T: Clone> Params<T> {
    pub fn new(a: T) -> Self {
        Params { a, b: None, c: None }
    }

    pub fn with_bc(a: T, b: T, c: T) -> Self {
        Params { a, b: Some(b), c: Some(c) }
    }

    fn b(&self) -> T {
        self.b.clone().unwrap_or_else(|| self.a.clone())
    }

    fn c(&self) -> T {
        self.c.clone().unwrap_or_else(|| self.a.clone())
    }
}

fn need_y<T>(kind: impl fmt::Debug, y: Option<&[T]>, n: usize) -> Result<&[T]> {
    let y = y.ok_or_else(|| Error::InvalidInput(format!("{kind:?} needs a y vector")))?;
    if y.len() != n {
        return Err(Error::Shape(format!("{kind:?}: x has {n} entries but y has {}", y.len())));
    }
    Ok(y)
}

/// Entry-by-entry construction of a kernel matrix. Determinant kinds are
/// `n × n` in `x` and `y`; Pfaffian kinds are skew-symmetric on `x` alone.
pub fn kernel_matrix<T: Field>(kind: KernelKind, x: &[T], y: Option<&[T]>, p: &Params<T>) -> Result<Matrix<T>> {
    let n = x.len();
    let a = &p.a;
    let pole = |i: usize, j: usize, f: &'static str| move || format!("{kind:?} entry ({}, {}): {f}", i + 1, j + 1);
    match kind {
        KernelKind::M | KernelKind::MHt | KernelKind::MU | KernelKind::MUu => {
            let y = need_y(kind, y, n)?;
            let (b, c) = (p.b(), p.c());
            Matrix::try_from_fn(n, n, |i, j| {
                let (xi, yj) = (&x[i], &y[j]);
                let x_y = ratio(xi, yj)?;
                let y_x = ratio(yj, xi)?;
                let xy = xi.clone() * yj.clone();
                let inv_xy = inv(xy.clone(), pole(i, j, "x_i y_j"))?;
                Ok(match kind {
                    KernelKind::M => inv(
                        sigma(&(a.clone() * x_y))? * sigma(&(a.clone() * y_x))?,
                        pole(i, j, "σ(a x_i/y_j) σ(a y_j/x_i)"),
                    )?,
                    KernelKind::MHt => {
                        inv(sigma(&(a.clone() * x_y))?, pole(i, j, "σ(a x_i/y_j)"))?
                            + inv(sigma(&(a.clone() * y_x))?, pole(i, j, "σ(a y_j/x_i)"))?
                    }
                    KernelKind::MU => {
                        inv(
                            sigma(&(a.clone() * x_y))? * sigma(&(a.clone() * y_x))?,
                            pole(i, j, "σ(a x_i/y_j) σ(a y_j/x_i)"),
                        )? - inv(
                            sigma(&(a.clone() * xy))? * sigma(&(a.clone() * inv_xy))?,
                            pole(i, j, "σ(a x_i y_j) σ(a/x_i y_j)"),
                        )?
                    }
                    _ => {
                        let inv_x = inv(xi.clone(), pole(i, j, "x_i"))?;
                        let inv_y = inv(yj.clone(), pole(i, j, "y_j"))?;
                        let sb_over = sigma(&(b.clone() * inv_y))?;
                        let sb_times = sigma(&(b.clone() * yj.clone()))?;
                        let sc_times = sigma(&(c.clone() * xi.clone()))?;
                        let sc_over = sigma(&(c.clone() * inv_x))?;
                        sb_over.clone() * sc_times.clone()
                            * inv(sigma(&(a.clone() * x_y))?, pole(i, j, "σ(a x_i/y_j)"))?
                            - sb_over * sc_over.clone()
                                * inv(sigma(&(a.clone() * inv_xy))?, pole(i, j, "σ(a/x_i y_j)"))?
                            - sb_times.clone() * sc_times
                                * inv(sigma(&(a.clone() * xy))?, pole(i, j, "σ(a x_i y_j)"))?
                            + sb_times * sc_over * inv(sigma(&(a.clone() * y_x))?, pole(i, j, "σ(a y_j/x_i)"))?
                    }
                })
            })
        }
        KernelKind::MQt(_) | KernelKind::MOd | KernelKind::MOo | KernelKind::MUo1 | KernelKind::MUo2 => {
            if y.is_some() {
                return Err(Error::InvalidInput(format!("{kind:?} takes no y vector")));
            }
            let (b, c) = (p.b(), p.c());
            let mut m = Matrix::from_fn(n, n, |_, _| T::zero());
            for i in 0..n {
                for j in i + 1..n {
                    let v = skew_entry(kind, &x[i], &x[j], a, &b, &c).map_err(|e| match e {
                        Error::Pole(f) => Error::Pole(format!("{kind:?} entry ({}, {}): {f}", i + 1, j + 1)),
                        other => other,
                    })?;
                    m.set(j, i, -v.clone());
                    m.set(i, j, v);
                }
            }
            Ok(m)
        }
    }
}

fn skew_entry<T: Field>(kind: KernelKind, xi: &T, xj: &T, a: &T, b: &T, c: &T) -> Result<T> {
    let xj_xi = ratio(xj, xi)?;
    let xi_xj = ratio(xi, xj)?;
    let prod = xi.clone() * xj.clone();
    let inv_prod = inv(prod.clone(), || "x_i x_j".into())?;
    let s = |t: T| sigma(&t);
    let si = |t: T, what: &str| -> Result<T> {
        let what = what.to_string();
        inv(sigma(&t)?, move || what)
    };
    Ok(match kind {
        KernelKind::MQt(k) => {
            s(powi(&xj_xi, k)?)? * si(a.clone() * xj_xi.clone(), "σ(a x_j/x_i)")? * si(a.clone() * xi_xj, "σ(a x_i/x_j)")?
        }
        KernelKind::MOd => {
            s(xj_xi)? * si(a.clone() * prod, "σ(a x_i x_j)")? * si(a.clone() * inv_prod, "σ(a/x_i x_j)")?
        }
        KernelKind::MOo => {
            s(xj_xi)?
                * (c.clone() * c.clone() * si(a.clone() * prod, "σ(a x_i x_j)")?
                    + b.clone() * b.clone() * si(a.clone() * inv_prod, "σ(a/x_i x_j)")?)
        }
        KernelKind::MUo1 => {
            s(xj_xi.clone())?
                * s(prod.clone())?
                * (si(a.clone() * prod, "σ(a x_i x_j)")? * si(a.clone() * inv_prod, "σ(a/x_i x_j)")?
                    - si(a.clone() * xj_xi, "σ(a x_j/x_i)")? * si(a.clone() * xi_xj, "σ(a x_i/x_j)")?)
        }
        KernelKind::MUo2 => {
            let (ci, cj) = (c.clone() * xi.clone(), c.clone() * xj.clone());
            let ci_over = c.clone() * inv(xi.clone(), || "x_i".into())?;
            let cj_over = c.clone() * inv(xj.clone(), || "x_j".into())?;
            s(xj_xi.clone())?
                * s(prod.clone())?
                * (s(ci.clone())? * s(cj.clone())? * si(a.clone() * prod, "σ(a x_i x_j)")?
                    - s(ci)? * s(cj_over.clone())? * si(a.clone() * xi_xj, "σ(a x_i/x_j)")?
                    - s(ci_over.clone())? * s(cj)? * si(a.clone() * xj_xi, "σ(a x_j/x_i)")?
                    + s(ci_over)? * s(cj_over)? * si(a.clone() * inv_prod, "σ(a/x_i x_j)")?)
        }
        _ => unreachable!("determinant kernels are built in kernel_matrix"),
    })
}

/// The products in front of the determinants and Pfaffians.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrefactorKind {
    F,
    FV,
    FQt,
    FOd,
    FUo,
}

pub fn prefactor<T: Field>(kind: PrefactorKind, x: &[T], y: Option<&[T]>, a: &T) -> Result<T> {
    let n = x.len();
    let mut num = T::one();
    let mut den = T::one();
    match kind {
        PrefactorKind::F | PrefactorKind::FV => {
            let y = need_y(kind, y, n)?;
            for xi in x {
                for yj in y {
                    num = num * sigma(&(a.clone() * ratio(xi, yj)?))? * sigma(&(a.clone() * ratio(yj, xi)?))?;
                    if kind == PrefactorKind::FV {
                        let xy = xi.clone() * yj.clone();
                        num = num * sigma(&(a.clone() * xy.clone()))? * sigma(&ratio(a, &xy)?)?;
                    }
                }
            }
            for i in 0..n {
                for j in i + 1..n {
                    den = den * sigma(&ratio(&x[j], &x[i])?)? * sigma(&ratio(&y[i], &y[j])?)?;
                }
                if kind == PrefactorKind::FV {
                    for j in i..n {
                        let xx = x[i].clone() * x[j].clone();
                        den = den * sigma(&ratio(&T::one(), &xx)?)? * sigma(&(y[i].clone() * y[j].clone()))?;
                    }
                }
            }
        }
        PrefactorKind::FQt | PrefactorKind::FOd | PrefactorKind::FUo => {
            if y.is_some() {
                return Err(Error::InvalidInput(format!("{kind:?} takes no y vector")));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let (xj_xi, xi_xj) = (ratio(&x[j], &x[i])?, ratio(&x[i], &x[j])?);
                    let prod = x[i].clone() * x[j].clone();
                    let by_ratio = || -> Result<T> {
                        Ok(sigma(&(a.clone() * xj_xi.clone()))? * sigma(&(a.clone() * xi_xj.clone()))?)
                    };
                    let by_prod =
                        || -> Result<T> { Ok(sigma(&(a.clone() * prod.clone()))? * sigma(&ratio(a, &prod)?)?) };
                    num = num
                        * match kind {
                            PrefactorKind::FQt => by_ratio()?,
                            PrefactorKind::FOd => by_prod()?,
                            _ => by_ratio()? * by_prod()?,
                        };
                    den = den * sigma(&xj_xi)?;
                }
                if kind == PrefactorKind::FUo {
                    for j in i..n {
                        den = den * sigma(&(x[i].clone() * x[j].clone()))?;
                    }
                }
            }
        }
    }
    Ok(num * inv(den, || format!("{kind:?} denominator (repeated or unit spectral parameters)"))?)
}

// ---------------------------------------------------------------------------
// partition functions

fn sigma_pow<T: Field>(t: &T, e: i64) -> Result<T> {
    powi(&sigma(t)?, e)
}

fn singular(case: Case, e: Error) -> Error {
    match e {
        Error::Pole(what) => Error::Singular(format!(
            "{case} is not regular at this point ({what}); evaluate through character_side instead"
        )),
        other => other,
    }
}

/// The partition function of `case` with size parameter `n`, as displayed
/// (σ-power prefactor × F × det/Pf). `x` has `n` entries for determinant
/// cases (plus `y` with `n` entries) and `2n` for Pfaffian cases.
pub fn partition_function<T: Field>(case: Case, x: &[T], y: Option<&[T]>, p: &Params<T>) -> Result<T> {
    let m = x.len();
    if case.is_pfaffian() && !m.is_multiple_of(2) {
        return Err(Error::Shape(format!("{case} needs an even number of spectral parameters, got {m}")));
    }
    let n = case.arity(1).max(1);
    let n = (m / n) as i64;
    let a = &p.a;
    let inv_a = inv(a.clone(), || "a".into())?;
    let compute = || -> Result<T> {
        let sq = a.clone() * a.clone();
        Ok(match case {
            Case::A => {
                sigma_pow(a, -n * n + n)?
                    * prefactor(PrefactorKind::F, x, y, a)?
                    * det(&kernel_matrix(KernelKind::M, x, y, p)?)?
            }
            Case::Ht2 => {
                sigma_pow(a, -n * n)?
                    * prefactor(PrefactorKind::F, x, y, a)?
                    * det(&kernel_matrix(KernelKind::MHt, x, y, p)?)?
            }
            Case::V => {
                sigma_pow(a, -2 * n * n + 2 * n)?
                    * prefactor(PrefactorKind::FV, x, y, a)?
                    * det(&kernel_matrix(KernelKind::MU, x, y, p)?)?
            }
            Case::Uu2 => {
                sigma_pow(a, -2 * n * n - n)?
                    * sigma_pow(&ratio(&p.b(), a)?, -n)?
                    * sigma_pow(&ratio(&p.c(), a)?, -n)?
                    * sigma_pow(&sq, 2 * n)?
                    * prefactor(PrefactorKind::FV, x, y, a)?
                    * det(&kernel_matrix(KernelKind::MUu, x, y, p)?)?
            }
            Case::Vh2_4n1 | Case::Vh2_4n3 | Case::Vhp2 => {
                let (b, c) = match case {
                    Case::Vh2_4n1 => (a.clone(), a.clone()),
                    Case::Vh2_4n3 => (inv_a.clone(), inv_a.clone()),
                    _ => (a.clone(), inv_a.clone()),
                };
                let sign = if case == Case::Vhp2 && n % 2 == 1 { -T::one() } else { T::one() };
                sign * sigma_pow(a, -2 * n * n - n)?
                    * prefactor(PrefactorKind::FV, x, y, a)?
                    * det(&kernel_matrix(KernelKind::MUu, x, y, &Params::with_bc(a.clone(), b, c))?)?
            }
            Case::Qt1 | Case::Qt2 => {
                let k = if case == Case::Qt1 { 1 } else { 2 };
                sigma_pow(a, -2 * n * n + 2 * n)?
                    * prefactor(PrefactorKind::FQt, x, None, a)?
                    * pfaffian(&kernel_matrix(KernelKind::MQt(k), x, None, p)?)?
            }
            Case::Od => {
                sigma_pow(a, -2 * n * n + 2 * n)?
                    * prefactor(PrefactorKind::FOd, x, None, a)?
                    * pfaffian(&kernel_matrix(KernelKind::MOd, x, None, p)?)?
            }
            Case::Oo2 => {
                powi(&p.c(), -2 * n)?
                    * sigma_pow(a, -2 * n * n + n)?
                    * prefactor(PrefactorKind::FOd, x, None, a)?
                    * pfaffian(&kernel_matrix(KernelKind::MOo, x, None, p)?)?
            }
            Case::Uo1 => {
                sigma_pow(a, -4 * n * n + 4 * n)?
                    * prefactor(PrefactorKind::FUo, x, None, a)?
                    * pfaffian(&kernel_matrix(KernelKind::MUo1, x, None, p)?)?
            }
            Case::Uo2 => {
                sigma_pow(a, -4 * n * n + n)?
                    * sigma_pow(&ratio(&p.c(), a)?, -2 * n)?
                    * sigma_pow(&sq, 2 * n)?
                    * prefactor(PrefactorKind::FUo, x, None, a)?
                    * pfaffian(&kernel_matrix(KernelKind::MUo2, x, None, p)?)?
            }
            Case::Vo2_8n1 | Case::Vo2_8n3 => {
                let c = if case == Case::Vo2_8n1 { a.clone() } else { inv_a.clone() };
                sigma_pow(a, -4 * n * n + n)?
                    * prefactor(PrefactorKind::FUo, x, None, a)?
                    * pfaffian(&kernel_matrix(KernelKind::MUo2, x, None, &Params::with_bc(a.clone(), a.clone(), c))?)?
            }
        })
    };
    compute().map_err(|e| singular(case, e))
}

/// The parameters `(a, b, c)` under which the character-side formulas
/// hold: `b = c = √−1` for UU2, `c = √−1` for UO2, and `b = c` free for OO2.
/// Rows whose displayed prefactor has a pole at the stated parameters,
/// cancelled by a zero of the determinant or Pfaffian (`σ(b/a)` or
/// `σ(c/a)` at `a = b = c = ζ4`).
pub fn has_removable_pole(case: Case, root: Root) -> bool {
    matches!((case, root), (Case::Uu2 | Case::Uo2, Root::Z4))
}

/// The partition function at a theorem row's parameters. Rows with a
/// removable pole are evaluated as the limit along `a → a·t`, `t → 1`,
/// computed exactly in the field of rational functions in `t`.
pub fn partition_function_at(
    case: Case,
    root: Root,
    x: &[Cyclo24],
    y: Option<&[Cyclo24]>,
    p: &Params<Cyclo24>,
) -> Result<Cyclo24> {
    if !has_removable_pole(case, root) {
        return partition_function(case, x, y, p);
    }
    let lift = |v: &Cyclo24| RatFunc::constant(v.clone());
    let params = Params {
        a: lift(&p.a) * RatFunc::t(),
        b: p.b.as_ref().map(lift),
        c: p.c.as_ref().map(lift),
    };
    let xs: Vec<RatFunc<Cyclo24>> = x.iter().map(lift).collect();
    let ys: Option<Vec<RatFunc<Cyclo24>>> = y.map(|v| v.iter().map(lift).collect());
    partition_function(case, &xs, ys.as_deref(), &params)?.limit_at_one()
}

pub fn theorem_params(case: Case, root: Root, b: Option<Rational>) -> Params<Cyclo24> {
    let a = root.value();
    let i = Root::Z4.value();
    match case {
        Case::Uu2 => Params::with_bc(a, i.clone(), i),
        Case::Uo2 => Params { a, b: None, c: Some(i) },
        Case::Oo2 => {
            let b = Cyclo24::from(b.unwrap_or_else(|| Rational::from(1)));
            Params::with_bc(a, b.clone(), b)
        }
        _ => Params::new(a),
    }
}

// ---------------------------------------------------------------------------
// character side

/// How characters are evaluated: at actual points through the bialternant,
/// or at the all-ones point through Weyl's dimension formula.
#[derive(Clone, Copy)]
enum CharMode {
    Point,
    Dimension,
}

/// Character-side context for one evaluation.
struct Side<'a> {
    mode: CharMode,
    x: &'a [Rational],
    y: &'a [Rational],
    /// Every (group, weight) the formula touches, after fitting to rank.
    seen: RefCell<Vec<(GroupSpec, Weight)>>,
}

impl Side<'_> {
    /// `χ_g(λ)` at the coordinates `b_i^power`; `None` bases are literal 1s
    /// and are taken as limits. Even powers go through square-root
    /// coordinates, so half-integer weights stay exact.
    fn chr(&self, g: GroupSpec, w: Weight, bases: Vec<Option<Rational>>, power: i64) -> Result<Rational> {
        let w = w.fit_to_rank(g.rank)?;
        self.seen.borrow_mut().push((g, w.clone()));
        match self.mode {
            CharMode::Dimension => weyl_dim(&g, &w),
            CharMode::Point => {
                let limits: Vec<usize> = (0..bases.len()).filter(|&i| bases[i].is_none()).collect();
                let lift = |e: i64| -> Result<Vec<Rational>> {
                    bases
                        .iter()
                        .map(|b| match b {
                            Some(v) => powi(v, e),
                            None => Ok(Rational::from(1)),
                        })
                        .collect()
                };
                if power % 2 == 0 {
                    char_bialternant_sqrt(&g, &w, &lift(power / 2)?, &limits)
                } else {
                    char_bialternant(&g, &w, &lift(power)?, &limits)
                }
            }
        }
    }

    /// The bases `x_i^e`.
    fn xs(&self, e: i64) -> Result<Vec<Option<Rational>>> {
        self.x.iter().map(|v| powi(v, e).map(Some)).collect()
    }

    /// The bases `x_i`, then `y_j`.
    fn xys(&self) -> Result<Vec<Option<Rational>>> {
        self.x.iter().chain(self.y).map(|v| Ok(Some(v.clone()))).collect()
    }
}

fn pw(base: i64, e: i64) -> Rational {
    powi(&Rational::from(base), e).expect("nonzero base")
}

fn sq(v: &Rational) -> Rational {
    v * v
}

fn prod(vals: impl IntoIterator<Item = Rational>) -> Rational {
    vals.into_iter().fold(Rational::from(1), |acc, v| acc * v)
}

/// `∏_i v_i^e` over a vector.
fn mono(v: &[Rational], e: i64) -> Result<Rational> {
    v.iter().try_fold(Rational::from(1), |acc, x| Ok(acc * powi(x, e)?))
}

fn pairs_lt(v: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Rational {
    let mut acc = Rational::from(1);
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            acc = acc * f(&v[i], &v[j]);
        }
    }
    acc
}

fn all_pairs(x: &[Rational], y: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Rational {
    prod(x.iter().flat_map(|a| y.iter().map(|b| f(a, b)).collect::<Vec<_>>()))
}

fn plus_sq(a: &Rational, b: &Rational) -> Rational {
    sq(a) + sq(b)
}

fn one_plus_sq(a: &Rational, b: &Rational) -> Rational {
    Rational::from(1) + sq(a) * sq(b)
}

/// `∏(x_i² + y_j²)(1 + x_i² y_j²) · perm(1/((x_i² + y_j²)(1 + x_i² y_j²)))`
/// and the single-factor version, with the matching Hafnian forms.
fn perm_of(x: &[Rational], y: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Rational> {
    let m = Matrix::try_from_fn(x.len(), y.len(), |i, j| {
        f(&x[i], &y[j]).recip().ok_or_else(|| Error::Pole("permanent entry".into()))
    })?;
    perm(&m)
}

fn hf_of(x: &[Rational], f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Rational> {
    let m = Matrix::try_from_fn(x.len(), x.len(), |i, j| {
        if i == j {
            return Ok(Rational::from(0));
        }
        f(&x[i], &x[j]).recip().ok_or_else(|| Error::Pole("Hafnian entry".into()))
    })?;
    hafnian(&m)
}

fn d(r2: i64, s2: i64) -> Weight {
    delta2(r2, s2)
}

fn d2(r2: i64, s2: i64) -> Weight {
    delta_sq2(r2, s2)
}

fn char_side_impl(case: Case, root: Root, side: &Side) -> Result<Rational> {
    use Root::*;
    let (x, y) = (side.x, side.y);
    let n = x.len() as i64;
    let nu = x.len();
    let r = |v: Rational| -> Result<Rational> { Ok(v) };
    let inv_sum = |v: &[Rational], k: i64| -> Result<Rational> {
        // ∏ (v_i^k + v_i^{-k})
        prod(v.iter().map(|t| powi(t, k).unwrap() + powi(t, -k).unwrap()))
            .recip()
            .ok_or_else(|| Error::Pole("x^k + x^-k".into()))
    };
    match (case, root) {
        (Case::A, Z4) => r(pw(2, -n * n + n)
            * mono(x, 1 - n)?
            * mono(y, 1 - n)?
            * all_pairs(x, y, plus_sq)
            * perm_of(x, y, plus_sq)?),
        (Case::A, Z6) => r(pw(3, -n * (n - 1) / 2)
            * mono(x, 1 - n)?
            * mono(y, 1 - n)?
            * side.chr(GroupSpec::gl(2 * nu), d(2 * n - 2, 2 * n - 2), side.xys()?, 2)?),
        (Case::A, Z8) => r(pw(2, -n * (n - 1) / 2)
            * mono(x, 1 - n)?
            * mono(y, 1 - n)?
            * pairs_lt(x, plus_sq)
            * pairs_lt(y, plus_sq)),
        (Case::A, Z12) => {
            let (p, q) = (n / 2, (n - 1) / 2);
            r(mono(x, -2 * n + 2)?
                * side.chr(GroupSpec::gl(nu), d(2 * p, 2 * p - 2), side.xs(1)?, 4)?
                * side.chr(GroupSpec::gl(nu), d(2 * q, 2 * q), side.xs(1)?, 4)?)
        }
        (Case::Ht2, Z4) => r(pw(2, -n * n + n) * mono(x, -n)? * mono(y, -n)? * all_pairs(x, y, plus_sq)),
        (Case::Ht2, Z6) => r(pw(3, -n * (n - 1) / 2)
            * mono(x, -n)?
            * mono(y, -n)?
            * side.chr(GroupSpec::gl(2 * nu), d(2 * n, 2 * n - 2), side.xys()?, 2)?),
        (Case::Ht2, Z8) => r(pw(2, -n * (n - 1) / 2 + n)
            * mono(x, -2 * n)?
            * side.chr(GroupSpec::gl(nu), d2(2 * n, 2 * n - 4), side.xs(1)?, 2)?
            * side.chr(GroupSpec::gl(nu), d2(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?),
        (Case::V, Z4) => {
            let f = |a: &Rational, b: &Rational| plus_sq(a, b) * one_plus_sq(a, b);
            r(pw(2, -2 * n * n + 2 * n) * mono(x, -2 * n + 2)? * mono(y, -2 * n + 2)? * all_pairs(x, y, f) * perm_of(x, y, f)?)
        }
        (Case::V, Z6) => r(pw(3, -n * (n - 1)) * side.chr(GroupSpec::sp(2 * nu), d(2 * n - 2, 2 * n - 2), side.xys()?, 2)?),
        (Case::V, Z8) => {
            let f = |a: &Rational, b: &Rational| plus_sq(a, b) * one_plus_sq(a, b);
            r(pw(2, -n * (n - 1)) * mono(x, -2 * n + 2)? * mono(y, -2 * n + 2)? * pairs_lt(x, f) * pairs_lt(y, f))
        }
        (Case::V, Z12) => r(inv_sum(x, 2)?
            * side.chr(GroupSpec::pin_odd(nu), d(n, n - 2), side.xs(1)?, 4)?
            * side.chr(GroupSpec::pin_odd(nu), d(n - 1, n - 1), side.xs(1)?, 4)?),
        (Case::Vh2_4n1 | Case::Vh2_4n3 | Case::Uu2 | Case::Vhp2, Z4) => {
            let e = if case == Case::Uu2 { -2 * n * n + 2 * n } else { -2 * n * n };
            let f = |a: &Rational, b: &Rational| plus_sq(a, b) * one_plus_sq(a, b);
            r(pw(2, e) * mono(x, -2 * n)? * mono(y, -2 * n)? * all_pairs(x, y, f))
        }
        (Case::Vh2_4n1, Z6) => r(pw(3, -n * n)
            * inv_sum(x, 1)?
            * inv_sum(y, 1)?
            * side.chr(GroupSpec::pin_even(2 * nu), d(2 * n + 1, 2 * n - 1), side.xys()?, 2)?),
        (Case::Vh2_4n1, Z8) => r(pw(2, -n * (n - 1))
            * sq(&inv_sum(x, 1)?)
            * side.chr(GroupSpec::pin_even(nu), d2(2 * n + 1, 2 * n - 3), side.xs(1)?, 2)?
            * side.chr(GroupSpec::pin_even(nu), d2(2 * n - 1, 2 * n - 1), side.xs(1)?, 2)?),
        (Case::Vh2_4n3, Z6) => {
            let mut c = side.xys()?;
            c.push(None);
            r(pw(3, -n * n) * side.chr(GroupSpec::sp(2 * nu + 1), d(2 * n, 2 * n - 2), c, 2)?)
        }
        (Case::Vh2_4n3, Z8) => r(pw(2, -n * n + n)
            * side.chr(GroupSpec::pin_odd(nu), d2(2 * n, 2 * n - 4), side.xs(1)?, 2)?
            * side.chr(GroupSpec::pin_odd(nu), d2(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?),
        (Case::Uu2, Z6) => {
            r(pw(3, -n * n + n) * side.chr(GroupSpec::pin_odd(2 * nu), d(2 * n, 2 * n - 2), side.xys()?, 2)?)
        }
        (Case::Uu2, Z8) => r(pw(2, -n * n + 2 * n)
            * side.chr(GroupSpec::pin_odd(nu), d2(2 * n, 2 * n - 4), side.xs(1)?, 2)?
            * side.chr(GroupSpec::pin_odd(nu), d2(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?),
        (Case::Vhp2, Z6) => r(pw(3, -n * n)
            * prod(y.iter().map(|t| sq(t) + Rational::from(1) + sq(t).recip().unwrap()))
            * side.chr(GroupSpec::sp(2 * nu), d(2 * n - 2, 2 * n - 2), side.xys()?, 2)?),
        (Case::Vhp2, Z8) => {
            let mut c = side.xs(1)?;
            c.extend(side.xs(-1)?);
            r(pw(2, -n * n + n) * side.chr(GroupSpec::gl(2 * nu), d2(4 * n - 4, 4 * n - 4), c, 2)?)
        }
        // Pfaffian cases: x has 2n entries
        _ => {
            let n = n / 2;
            let half = nu / 2;
            match (case, root) {
                (Case::Qt1, Z4) => r(pw(2, -2 * n * n + 2 * n)
                    * mono(x, -2 * n + 2)?
                    * pairs_lt(x, plus_sq)
                    * hf_of(x, plus_sq)?),
                (Case::Qt1, Z6) => {
                    let g = side.chr(GroupSpec::gl(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?;
                    r(pw(3, -n * n + n) * mono(x, -2 * n + 2)? * sq(&g))
                }
                (Case::Qt1, Z8) => r(pw(2, -n * n + n)
                    * mono(x, -2 * n + 2)?
                    * side.chr(GroupSpec::gl(2 * half), d2(4 * n - 4, 4 * n - 4), side.xs(1)?, 2)?),
                (Case::Qt2, Z4) => r(pw(2, -2 * n * n + 2 * n) * mono(x, -2 * n + 1)? * pairs_lt(x, plus_sq)),
                (Case::Qt2, Z6) => r(pw(3, -n * n + n)
                    * mono(x, -2 * n + 1)?
                    * side.chr(GroupSpec::gl(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?
                    * side.chr(GroupSpec::gl(2 * half), d(2 * n, 2 * n - 2), side.xs(1)?, 2)?),
                (Case::Qt2, Z8) => r(pw(2, -n * n + n) * mono(x, -2 * n + 1)? * pairs_lt(x, plus_sq)),
                (Case::Od, Z4) => r(pw(2, -2 * n * n + 2 * n)
                    * mono(x, -2 * n + 2)?
                    * pairs_lt(x, one_plus_sq)
                    * hf_of(x, one_plus_sq)?),
                (Case::Od, Z6) => {
                    r(pw(3, -n * n + n) * side.chr(GroupSpec::sp(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?)
                }
                (Case::Oo2, Z4) => r(pw(2, -2 * n * n + 2 * n) * mono(x, -2 * n + 1)? * pairs_lt(x, one_plus_sq)),
                (Case::Uo1, Z4) => {
                    let f = |a: &Rational, b: &Rational| plus_sq(a, b) * one_plus_sq(a, b);
                    r(pw(2, -4 * n * n + 4 * n) * mono(x, -4 * n + 4)? * pairs_lt(x, f) * hf_of(x, f)?)
                }
                (Case::Uo1, Z6) => {
                    let s = side.chr(GroupSpec::sp(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?;
                    r(pw(3, -2 * n * n + 2 * n) * sq(&s))
                }
                (Case::Uo2, Z4) => {
                    let f = |a: &Rational, b: &Rational| plus_sq(a, b) * one_plus_sq(a, b);
                    r(pw(2, -4 * n * n + 4 * n) * mono(x, -4 * n + 2)? * pairs_lt(x, f))
                }
                (Case::Uo2, Z6) => r(pw(3, -2 * n * n + 2 * n)
                    * side.chr(GroupSpec::sp(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?
                    * side.chr(GroupSpec::pin_odd(2 * half), d(2 * n, 2 * n - 2), side.xs(1)?, 2)?),
                (Case::Vo2_8n1 | Case::Vo2_8n3, Z4) => {
                    let f = |a: &Rational, b: &Rational| plus_sq(a, b) * one_plus_sq(a, b);
                    r(pw(2, -4 * n * n + 2 * n) * mono(x, -4 * n + 2)? * pairs_lt(x, f))
                }
                (Case::Vo2_8n1, Z6) => r(pw(3, -n * (2 * n - 1))
                    * inv_sum(x, 1)?
                    * side.chr(GroupSpec::sp(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?
                    * side.chr(GroupSpec::pin_even(2 * half), d(2 * n + 1, 2 * n - 1), side.xs(1)?, 2)?),
                (Case::Vo2_8n3, Z6) => {
                    let mut c = side.xs(1)?;
                    c.push(None);
                    r(pw(3, -2 * n * n + n)
                        * side.chr(GroupSpec::sp(2 * half), d(2 * n - 2, 2 * n - 2), side.xs(1)?, 2)?
                        * side.chr(GroupSpec::sp(2 * half + 1), d(2 * n, 2 * n - 2), c, 2)?)
                }
                _ => Err(Error::Unsupported(format!("no character-side formula for {case} at {root}"))),
            }
        }
    }
}

fn check_side_shape(case: Case, root: Root, x: &[Rational], y: Option<&[Rational]>) -> Result<()> {
    if !case.roots().contains(&root) {
        return Err(Error::Unsupported(format!("no character-side formula for {case} at {root}")));
    }
    if case.is_pfaffian() {
        if !x.len().is_multiple_of(2) {
            return Err(Error::Shape(format!("{case} needs an even number of spectral parameters")));
        }
        if y.is_some() {
            return Err(Error::InvalidInput(format!("{case} takes no y vector")));
        }
    } else {
        let y = need_y(case, y, x.len())?;
        if case.diagonal_only(root) && y != x {
            return Err(Error::InvalidInput(format!("the {case} formula at {root} is stated for y = x")));
        }
    }
    Ok(())
}

/// The right-hand side of the character formula for `case` at `root`.
pub fn character_side(case: Case, root: Root, x: &[Rational], y: Option<&[Rational]>) -> Result<Rational> {
    check_side_shape(case, root, x, y)?;
    let side = Side { mode: CharMode::Point, x, y: y.unwrap_or(&[]), seen: RefCell::default() };
    char_side_impl(case, root, &side)
}

/// The character side at `x = y = (1, …, 1)`, with characters replaced by
/// dimensions. `n` is the size parameter of the case.
pub fn character_side_at_ones(case: Case, root: Root, n: usize) -> Result<Rational> {
    if n == 0 {
        // empty determinant or Pfaffian
        return Ok(Rational::from(1));
    }
    let ones = vec![Rational::from(1); case.arity(n)];
    let y = if case.is_pfaffian() { None } else { Some(ones.as_slice()) };
    check_side_shape(case, root, &ones, y)?;
    let side = Side { mode: CharMode::Dimension, x: &ones, y: y.unwrap_or(&[]), seen: RefCell::default() };
    char_side_impl(case, root, &side)
}

/// The (group, weight) pairs whose characters make up the character side
/// of `case` at `root` and size `n`, in order of use.
pub fn character_weights(case: Case, root: Root, n: usize) -> Result<Vec<(GroupSpec, Weight)>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let ones = vec![Rational::from(1); case.arity(n)];
    let y = if case.is_pfaffian() { None } else { Some(ones.as_slice()) };
    check_side_shape(case, root, &ones, y)?;
    let side = Side { mode: CharMode::Dimension, x: &ones, y: y.unwrap_or(&[]), seen: RefCell::default() };
    char_side_impl(case, root, &side)?;
    Ok(side.seen.into_inner())
}

// ---------------------------------------------------------------------------
// x-enumeration through the all-ones specialization

/// The partition-function factors (case, size parameter) and the integer
/// prefactor giving the x-enumeration of `class` at `order`.
pub fn enumeration_factors(class: ClassTag, order: usize) -> Result<(Rational, Vec<(Case, usize)>)> {
    class.check_order(order)?;
    let one = Rational::from(1);
    let m = order;
    let out = match class {
        ClassTag::Asm => (one, vec![(Case::A, m)]),
        ClassTag::Hts if m.is_multiple_of(2) => (one, vec![(Case::A, m / 2), (Case::Ht2, m / 2)]),
        ClassTag::Vs if m % 2 == 1 => (one, vec![(Case::V, m / 2)]),
        ClassTag::Vhs if m % 4 == 1 => (one, vec![(Case::V, m / 4), (Case::Vh2_4n1, m / 4)]),
        ClassTag::Vhs if m % 4 == 3 => (one, vec![(Case::V, m / 4), (Case::Vh2_4n3, m / 4)]),
        ClassTag::Uasm => (pw(2, (m / 2) as i64), vec![(Case::V, m / 2)]),
        ClassTag::Uuasm => (one, vec![(Case::V, m / 4), (Case::Uu2, m / 4)]),
        ClassTag::Vhpasm => (one, vec![(Case::V, m / 4), (Case::Vhp2, m / 4)]),
        ClassTag::Qts if m.is_multiple_of(4) => (one, vec![(Case::Qt1, m / 4), (Case::Qt2, m / 4)]),
        ClassTag::Os if m.is_multiple_of(2) => (one, vec![(Case::Od, m / 2)]),
        ClassTag::Oos if m.is_multiple_of(4) => (one, vec![(Case::Od, m / 4), (Case::Oo2, m / 4)]),
        ClassTag::Uosasm => (one, vec![(Case::Uo1, m / 8), (Case::Uo2, m / 8)]),
        ClassTag::Vos if m % 8 == 1 => (one, vec![(Case::Uo1, m / 8), (Case::Vo2_8n1, m / 8)]),
        ClassTag::Vos if m % 8 == 3 => (one, vec![(Case::Uo1, m / 8), (Case::Vo2_8n3, m / 8)]),
        _ => {
            return Err(Error::Unsupported(format!(
                "{class} of order {order} has no partition-function factorization"
            )))
        }
    };
    Ok(out)
}

/// The predicted value `A^class_order(x)` for `x ∈ {0, 1, 2, 3}`, from the
/// factorization into partition functions, each evaluated at the all-ones
/// point through its character side.
pub fn specialized_enumeration(class: ClassTag, xval: u32, order: usize) -> Result<Rational> {
    let root = Root::from_xval(xval)?;
    let (mut value, factors) = enumeration_factors(class, order)?;
    for (case, n) in factors {
        if !case.roots().contains(&root) {
            return Err(Error::Unsupported(format!(
                "{class} at x = {xval}: the {case} factor has no formula at {root}"
            )));
        }
        value = value * character_side_at_ones(case, root, n)?;
    }
    Ok(value)
}

// ---------------------------------------------------------------------------
// verification

/// One comparison of the two sides at a random point.
#[derive(Clone, Debug, Serialize)]
pub struct PartitionTrial {
    pub case: Case,
    pub root: Root,
    pub n: usize,
    pub seed: u64,
    pub x: Vec<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Rational>,
    pub partition_function: Cyclo24,
    pub character_side: Cyclo24,
    pub equal: bool,
}

/// Samples a regular rational point and compares `partition_function`
/// with `character_side` for one row of the character formulas.
pub fn verify_row(case: Case, root: Root, n: usize, seed: u64) -> Result<PartitionTrial> {
    if !case.roots().contains(&root) {
        return Err(Error::Unsupported(format!("no character-side formula for {case} at {root}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("size parameter must be at least 1".into()));
    }
    let mut sampler = Sampler::new(seed ^ ((case as u64) << 32) ^ ((root.order() as u64) << 40));
    let m = case.arity(n);
    let with_y = !case.is_pfaffian() && !case.diagonal_only(root);
    let pts = sampler.points(if with_y { 2 * m } else { m }, &generic_position)?;
    let x = pts[..m].to_vec();
    let y = if case.is_pfaffian() {
        None
    } else if with_y {
        Some(pts[m..].to_vec())
    } else {
        Some(x.clone())
    };
    let b = (case == Case::Oo2).then(|| sampler.rational());
    let params = theorem_params(case, root, b.clone());
    let xc: Vec<Cyclo24> = x.iter().cloned().map(Cyclo24::from).collect();
    let yc: Option<Vec<Cyclo24>> = y.as_ref().map(|v| v.iter().cloned().map(Cyclo24::from).collect());
    let lhs = partition_function_at(case, root, &xc, yc.as_deref(), &params)?;
    let rhs = Cyclo24::from(character_side(case, root, &x, y.as_deref())?);
    Ok(PartitionTrial {
        case,
        root,
        n,
        seed,
        x,
        y,
        b,
        equal: lhs == rhs,
        partition_function: lhs,
        character_side: rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&q(2, 1)).unwrap(), q(3, 2));
        assert_eq!(sigma(&q(1, 1)).unwrap(), q(0, 1));
        let i = Root::Z4.value();
        assert_eq!(sigma(&i).unwrap(), i.clone() + i);
        assert!(sigma(&q(0, 1)).is_err());
    }

    #[test]
    fn single_entry_kernels() {
        let (x, y, a) = (q(2, 3), q(5, 7), q(11, 13));
        let m = kernel_matrix(KernelKind::M, std::slice::from_ref(&x), Some(std::slice::from_ref(&y)), &Params::new(a.clone())).unwrap();
        let f = prefactor(PrefactorKind::F, std::slice::from_ref(&x), Some(std::slice::from_ref(&y)), &a).unwrap();
        assert_eq!(m.get(0, 0).clone() * f, q(1, 1));
        let pf = partition_function(Case::A, &[x], Some(&[y]), &Params::new(a)).unwrap();
        assert_eq!(pf, q(1, 1));
    }

    #[test]
    fn qt_kernel_is_skew() {
        let x = [q(2, 3), q(5, 7), q(3, 11), q(-4, 9)];
        for kind in [KernelKind::MQt(1), KernelKind::MQt(2), KernelKind::MOd, KernelKind::MUo1] {
            let m = kernel_matrix(kind, &x, None, &Params::new(q(17, 19))).unwrap();
            assert!(m.is_skew_symmetric());
        }
        let m = kernel_matrix(KernelKind::MQt(1), &x[..2], None, &Params::new(q(17, 19))).unwrap();
        let a = q(17, 19);
        let want = sigma(&(&x[1] / &x[0])).unwrap()
            / (sigma(&(&a * &x[1] / &x[0])).unwrap() * sigma(&(&a * &x[0] / &x[1])).unwrap());
        assert_eq!(m.get(0, 1).clone(), want);
    }

    #[test]
    fn poles_are_reported() {
        let err = partition_function(Case::A, &[q(1, 1), q(1, 1)], Some(&[q(1, 1), q(1, 1)]), &Params::new(q(2, 1)))
            .unwrap_err();
        assert!(matches!(err, Error::Singular(_)), "{err:?}");
    }

    #[test]
    fn asm_partition_function_is_symmetric() {
        let a = Root::Z6.value();
        let x: Vec<Cyclo24> = [q(2, 3), q(5, 7), q(-3, 4)].into_iter().map(Cyclo24::from).collect();
        let y: Vec<Cyclo24> = [q(7, 5), q(1, 9), q(8, 3)].into_iter().map(Cyclo24::from).collect();
        let p = Params::new(a);
        let base = partition_function(Case::A, &x, Some(&y), &p).unwrap();
        let xs = vec![x[2].clone(), x[0].clone(), x[1].clone()];
        let ys = vec![y[1].clone(), y[2].clone(), y[0].clone()];
        assert_eq!(partition_function(Case::A, &xs, Some(&ys), &p).unwrap(), base);
    }

    #[test]
    fn specialized_asm_values() {
        assert_eq!(specialized_enumeration(ClassTag::Asm, 1, 3).unwrap(), q(7, 1));
        for n in 1..=5usize {
            let fact: i64 = (1..=n as i64).product();
            assert_eq!(specialized_enumeration(ClassTag::Asm, 0, n).unwrap(), q(fact, 1));
            assert_eq!(specialized_enumeration(ClassTag::Asm, 2, n).unwrap(), pw(2, (n * (n - 1) / 2) as i64));
        }
        assert!(specialized_enumeration(ClassTag::Vhs, 3, 5).is_err());
    }

    #[test]
    fn every_row_holds_at_size_one() {
        for case in Case::ALL {
            for &root in case.roots() {
                let t = verify_row(case, root, 1, 3).unwrap();
                assert!(t.equal, "{case} at {root}");
            }
        }
    }

    #[test]
    fn removable_pole_is_a_limit() {
        let x = [Cyclo24::from(q(2, 3))];
        let y = [Cyclo24::from(q(-5, 4))];
        let p = theorem_params(Case::Uu2, Root::Z4, None);
        assert!(partition_function(Case::Uu2, &x, Some(&y), &p).is_err());
        let got = partition_function_at(Case::Uu2, Root::Z4, &x, Some(&y), &p).unwrap();
        let want = character_side(Case::Uu2, Root::Z4, &[q(2, 3)], Some(&[q(-5, 4)])).unwrap();
        assert_eq!(got, Cyclo24::from(want));
    }

    #[test]
    fn empty_factors_count_one() {
        // VHS and VOS of order 1: every factor has size zero
        for x in [0, 1, 2] {
            assert_eq!(specialized_enumeration(ClassTag::Vhs, x, 1).unwrap(), q(1, 1));
        }
        assert_eq!(specialized_enumeration(ClassTag::Vos, 1, 1).unwrap(), q(1, 1));
    }
}
