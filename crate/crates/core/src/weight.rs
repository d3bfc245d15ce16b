//! Exact arithmetic in the field Q(√17).
//!
//! Every processing time, load and ratio in this crate is a [`Weight`],
//! a number of the form `a + b·√17` with rational `a`, `b`. Comparisons
//! are decided exactly (no floating point), which is what lets the
//! adversary constructions compare against irrational thresholds such as
//! `(9+√17)/8` without any tolerance management.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The radicand of the quadratic extension. `√17` shows up in the
/// deterministic lower bound `(9+√17)/8` for two machines and two scenarios.
pub const RADICAND: u32 = 17;

/// Exact element of Q(√17): value `a + b·√17`.
///
/// `BigRational` keeps both coordinates reduced with positive denominators,
/// so structural equality coincides with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    a: BigRational,
    b: BigRational,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WeightError {
    #[error("division by zero weight")]
    DivisionByZero,
    #[error("malformed rational literal: {0:?}")]
    BadLiteral(String),
}

impl Weight {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Weight { a, b }
    }

    pub fn zero() -> Self {
        Weight { a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one() -> Self {
        Weight { a: BigRational::one(), b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Weight { a: BigRational::from_integer(BigInt::from(n)), b: BigRational::zero() }
    }

    /// `num/den` as a rational weight (no √17 part).
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Weight {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    /// `√17` itself.
    pub fn sqrt17() -> Self {
        Weight { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// True when the √17 coordinate vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b·√17` computed without floating point.
    ///
    /// When `a` and `b` disagree in sign the comparison reduces to
    /// `a² <=> 17·b²`; equality there is impossible for nonzero rationals
    /// since √17 is irrational.
    pub fn sign(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (sa, _) => {
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * BigRational::from_integer(BigInt::from(RADICAND));
                match lhs.cmp(&rhs) {
                    Ordering::Equal => {
                        unreachable!("a² = 17·b² with nonzero rationals would make √17 rational")
                    }
                    // |a| dominates: sign of a; otherwise sign of b (= -sign of a).
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn checked_div(&self, rhs: &Weight) -> Result<Weight, WeightError> {
        if rhs.is_zero() {
            return Err(WeightError::DivisionByZero);
        }
        // 1/(c + d√17) = (c - d√17) / (c² - 17d²)
        let seventeen = BigRational::from_integer(BigInt::from(RADICAND));
        let norm = &rhs.a * &rhs.a - &rhs.b * &rhs.b * &seventeen;
        debug_assert!(!norm.is_zero());
        let inv = Weight { a: &rhs.a / &norm, b: -(&rhs.b / &norm) };
        Ok(self.clone() * inv)
    }

    pub fn min(self, other: Weight) -> Weight {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Weight) -> Weight {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Decimal rendering to `digits` significant-ish fractional digits.
    /// Display-only; all comparisons in the crate are exact.
    pub fn decimal(&self, digits: usize) -> String {
        let guard = digits + 12;
        let pow = BigInt::from(10u32).pow(guard as u32);
        // a + b√17 scaled by 10^guard, rounding √17 via an integer sqrt.
        let a_scaled = (&self.a * BigRational::from_integer(pow.clone())).to_integer();
        let b_num = (&self.b * BigRational::from_integer(pow.clone())).to_integer();
        let root = sqrt_floor(&(BigInt::from(RADICAND) * &pow * &pow));
        let b_scaled = approx_mul_div(&b_num, &root, &pow);
        let total = a_scaled + b_scaled;
        render_scaled_decimal(&total, guard, digits)
    }

    /// Approximate `f64` value. Display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (RADICAND as f64).sqrt()
    }

    /// Parse `"3"`, `"3/4"`, or `"3/4+1/8r17"` (also `-` joins allowed).
    pub fn parse(text: &str) -> Result<Weight, WeightError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(idx) = t.find("r17") {
            // split "<a><sign><b>r17" or "<b>r17"
            let before = &t[..idx];
            let (a_part, b_part) = match before.rfind(['+', '-']) {
                Some(0) | None => ("", before),
                Some(p) => {
                    let (a, rest) = before.split_at(p);
                    (a, rest)
                }
            };
            let b_lit = if b_part.is_empty() || b_part == "+" {
                BigRational::one()
            } else if b_part == "-" {
                -BigRational::one()
            } else {
                parse_rational(b_part)?
            };
            let a_lit = if a_part.is_empty() { BigRational::zero() } else { parse_rational(a_part)? };
            Ok(Weight::new(a_lit, b_lit))
        } else {
            Ok(Weight::new(parse_rational(&t)?, BigRational::zero()))
        }
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Floor of the square root of a nonnegative integer.
fn sqrt_floor(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    BigInt::from_biguint(Sign::Plus, n.magnitude().sqrt())
}

/// `x * y / d` with truncation toward zero, in integers.
fn approx_mul_div(x: &BigInt, y: &BigInt, d: &BigInt) -> BigInt {
    (x * y).div_floor(d)
}

fn render_scaled_decimal(total: &BigInt, scale: usize, digits: usize) -> String {
    let neg = total.is_negative();
    let mut s = total.magnitude().to_string();
    if s.len() <= scale {
        s = format!("{}{}", "0".repeat(scale - s.len() + 1), s);
    }
    let point = s.len() - scale;
    let (int_part, frac_part) = s.split_at(point);
    let frac = &frac_part[..digits.min(frac_part.len())];
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int_part);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational, WeightError> {
    let bad = || WeightError::BadLiteral(text.to_string());
    match text.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| bad())?;
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(text).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", format_rational(&self.a))
        } else if self.a.is_zero() {
            write!(f, "{}r17", format_rational(&self.b))
        } else if self.b.is_positive() {
            write!(f, "{}+{}r17", format_rational(&self.a), format_rational(&self.b))
        } else {
            write!(f, "{}{}r17", format_rational(&self.a), format_rational(&self.b))
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({})", self)
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self.clone() - other.clone()).sign()
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<'a> Add<&'a Weight> for Weight {
    type Output = Weight;
    fn add(self, rhs: &'a Weight) -> Weight {
        Weight { a: self.a + &rhs.a, b: self.b + &rhs.b }
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<'a> Sub<&'a Weight> for Weight {
    type Output = Weight;
    fn sub(self, rhs: &'a Weight) -> Weight {
        Weight { a: self.a - &rhs.a, b: self.b - &rhs.b }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { a: -self.a, b: -self.b }
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        let seventeen = BigRational::from_integer(BigInt::from(RADICAND));
        Weight {
            a: &self.a * &rhs.a + &self.b * &rhs.b * &seventeen,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl<'a> Mul<&'a Weight> for Weight {
    type Output = Weight;
    fn mul(self, rhs: &'a Weight) -> Weight {
        self * rhs.clone()
    }
}

impl Div for Weight {
    type Output = Weight;
    fn div(self, rhs: Weight) -> Weight {
        self.checked_div(&rhs).expect("division by zero weight")
    }
}

/// Serialized form: `{"a": "num/den", "b": "num/den"}`, with the shorthand
/// string `"3"` (or `"3/4"`) meaning `a = 3, b = 0`.
impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        if self.b.is_zero() {
            ser.serialize_str(&format_rational(&self.a))
        } else {
            use serde::ser::SerializeStruct;
            let mut st = ser.serialize_struct("Weight", 2)?;
            st.serialize_field("a", &format_rational(&self.a))?;
            st.serialize_field("b", &format_rational(&self.b))?;
            st.end()
        }
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Parts {
                a: RawRational,
                #[serde(default)]
                b: Option<RawRational>,
            },
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum RawRational {
            Text(String),
            Int(i64),
        }
        fn conv<E: DeError>(r: RawRational) -> Result<BigRational, E> {
            match r {
                RawRational::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
                RawRational::Text(s) => parse_rational(&s).map_err(E::custom),
            }
        }
        match Raw::deserialize(de)? {
            Raw::Text(s) => Weight::parse(&s).map_err(D::Error::custom),
            Raw::Int(n) => Ok(Weight::from_int(n)),
            Raw::Parts { a, b } => {
                let a = conv(a)?;
                let b = match b {
                    Some(b) => conv(b)?,
                    None => BigRational::zero(),
                };
                Ok(Weight::new(a, b))
            }
        }
    }
}

/// Sum of a slice of weights.
pub fn weight_sum<'a, I: IntoIterator<Item = &'a Weight>>(items: I) -> Weight {
    let mut acc = Weight::zero();
    for w in items {
        acc += w;
    }
    acc
}
