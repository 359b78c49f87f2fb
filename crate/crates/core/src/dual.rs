//! Dual numbers `a + bε` with `ε² = 0`.
//!
//! [`DualInt`] is the ring of dual integers (the "Clifford integers") used by
//! every tree generator in this crate. [`DualRat`] has the same shape over
//! exact rationals and only backs the analysis helpers.
//!
//! ```
//! use conway_shadows::dual::DualInt;
//!
//! let x = DualInt::from_i64(3, -2);
//! let y = DualInt::from_i64(1, 2);
//! assert_eq!(&x * &y, DualInt::from_i64(3, 4));
//! ```

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dual number over the coefficient ring `T`.
///
/// `re` is the value and `sh` the shadow (the coefficient of ε).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Dual<T> {
    pub re: T,
    pub sh: T,
}

pub type DualInt = Dual<BigInt>;
pub type DualRat = Dual<BigRational>;

impl<T> Dual<T> {
    pub const fn new(re: T, sh: T) -> Self {
        Dual { re, sh }
    }

    pub fn value(&self) -> &T {
        &self.re
    }

    pub fn shadow(&self) -> &T {
        &self.sh
    }
}

impl<T: Zero> Dual<T> {
    /// Embeds a plain value with zero shadow.
    pub fn real(re: T) -> Self {
        Dual { re, sh: T::zero() }
    }

    /// The infinitesimal ε itself.
    pub fn epsilon() -> Self
    where
        T: One,
    {
        Dual {
            re: T::zero(),
            sh: T::one(),
        }
    }
}

impl DualInt {
    pub fn from_i64(re: i64, sh: i64) -> Self {
        Dual::new(BigInt::from(re), BigInt::from(sh))
    }

    /// Units of the dual integers are exactly `±1 + bε`.
    pub fn is_unit(&self) -> bool {
        self.re.abs().is_one()
    }

    /// `(s + bε)⁻¹ = s − bε` for `s = ±1`.
    pub fn inverse(&self) -> Result<DualInt> {
        if !self.is_unit() {
            return Err(Error::NotAUnit(self.to_string()));
        }
        Ok(Dual::new(self.re.clone(), -&self.sh))
    }

    /// The ring morphism ε ↦ 0.
    pub fn project(&self) -> BigInt {
        self.re.clone()
    }

    pub fn to_rational(&self) -> DualRat {
        Dual::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.sh.clone()),
        )
    }
}

impl DualRat {
    /// Extends `f` to dual numbers: `f(a + bε) = f(a) + b·f′(a)·ε`.
    ///
    /// The caller supplies `value = f(a)` and `derivative = f′(a)` for the real
    /// part `a` of `x`.
    pub fn analytic_lift(value: BigRational, derivative: BigRational, x: &DualRat) -> DualRat {
        Dual::new(value, &x.sh * derivative)
    }
}

impl<T: Zero + Clone + Add<Output = T>> Zero for Dual<T>
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    fn zero() -> Self {
        Dual::new(T::zero(), T::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.sh.is_zero()
    }
}

impl<T> One for Dual<T>
where
    T: Zero + One + Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    fn one() -> Self {
        Dual::new(T::one(), T::zero())
    }
}

impl<'a, T> Add<&'a Dual<T>> for &'a Dual<T>
where
    &'a T: Add<&'a T, Output = T>,
{
    type Output = Dual<T>;

    fn add(self, rhs: &'a Dual<T>) -> Dual<T> {
        Dual::new(&self.re + &rhs.re, &self.sh + &rhs.sh)
    }
}

impl<'a, T> Sub<&'a Dual<T>> for &'a Dual<T>
where
    &'a T: Sub<&'a T, Output = T>,
{
    type Output = Dual<T>;

    fn sub(self, rhs: &'a Dual<T>) -> Dual<T> {
        Dual::new(&self.re - &rhs.re, &self.sh - &rhs.sh)
    }
}

impl<'a, T> Mul<&'a Dual<T>> for &'a Dual<T>
where
    T: Add<Output = T>,
    &'a T: Mul<&'a T, Output = T>,
{
    type Output = Dual<T>;

    // ε² = 0: the bε·dε term never exists.
    fn mul(self, rhs: &'a Dual<T>) -> Dual<T> {
        Dual::new(
            &self.re * &rhs.re,
            &self.re * &rhs.sh + &self.sh * &rhs.re,
        )
    }
}

impl<'a, T> Neg for &'a Dual<T>
where
    &'a T: Neg<Output = T>,
{
    type Output = Dual<T>;

    fn neg(self) -> Dual<T> {
        Dual::new(-&self.re, -&self.sh)
    }
}

impl<T> Add for Dual<T>
where
    for<'a> &'a T: Add<&'a T, Output = T>,
{
    type Output = Dual<T>;

    fn add(self, rhs: Dual<T>) -> Dual<T> {
        &self + &rhs
    }
}

impl<T> Sub for Dual<T>
where
    for<'a> &'a T: Sub<&'a T, Output = T>,
{
    type Output = Dual<T>;

    fn sub(self, rhs: Dual<T>) -> Dual<T> {
        &self - &rhs
    }
}

impl<T> Mul for Dual<T>
where
    T: Add<Output = T>,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    type Output = Dual<T>;

    fn mul(self, rhs: Dual<T>) -> Dual<T> {
        &self * &rhs
    }
}

impl<T> Neg for Dual<T>
where
    for<'a> &'a T: Neg<Output = T>,
{
    type Output = Dual<T>;

    fn neg(self) -> Dual<T> {
        -&self
    }
}

impl<T: fmt::Display + Signed> fmt::Display for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sh.is_negative() {
            write!(f, "{}-{}ε", self.re, self.sh.abs())
        } else {
            write!(f, "{}+{}ε", self.re, self.sh)
        }
    }
}

/// Parses `a+bε`, `a-bε`, `a`, or `bε` (an `e` may stand in for `ε`).
impl FromStr for DualInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a dual integer: {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('ε', "e");
        let Some(body) = t.strip_suffix('e') else {
            return t.parse::<BigInt>().map(Dual::real).map_err(|_| bad());
        };
        // split at the last sign that is not in leading position
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re, sh) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let sh = match sh {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re = re.parse::<BigInt>().map_err(|_| bad())?;
        let sh = sh.trim_start_matches('+').parse::<BigInt>().map_err(|_| bad())?;
        Ok(Dual::new(re, sh))
    }
}

// Components travel as decimal strings so 64-bit JSON readers never truncate.
impl Serialize for DualInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DualInt", 2)?;
        st.serialize_field("re", &self.re.to_string())?;
        st.serialize_field("sh", &self.sh.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DualInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            re: String,
            sh: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let re = raw.re.parse().map_err(de::Error::custom)?;
        let sh = raw.sh.parse().map_err(de::Error::custom)?;
        Ok(Dual::new(re, sh))
    }
}
