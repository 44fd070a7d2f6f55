//! Scalar carriers: exact rationals and `f64`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::StructureConstants;
use crate::error::{Error, Result};

/// Exact rational carrier.
pub type Rational = BigRational;

/// Commutative ring operations needed to multiply algebra elements.
///
/// Implemented by both scalar carriers and by [`crate::poly::Poly`], which
/// lets the same multiplication table expand symbolic products.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// `Σ ± a_i b_j e_{ij}` for a signed multiplication table.
    fn table_product(table: &StructureConstants, a: &[Self], b: &[Self]) -> Vec<Self> {
        let mut out = vec![Self::zero(); a.len()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let p = table.product(i, j);
                let term = x.clone() * y.clone();
                let slot = std::mem::replace(&mut out[p.index], Self::zero());
                out[p.index] = if p.sign > 0 { slot + term } else { slot - term };
            }
        }
        out
    }

    /// `Σ a_i b_i`.
    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter().zip(b).fold(Self::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
    }
}

impl Ring for f64 {}
impl Ring for crate::poly::Poly {}

// Rational bilinear forms clear denominators first so the inner loop runs in
// integer arithmetic, with one reduction per output. Small operands stay in
// machine integers; anything larger falls back to BigInt.
impl Ring for Rational {
    fn table_product(table: &StructureConstants, a: &[Self], b: &[Self]) -> Vec<Self> {
        let slot = |i, j| {
            let p = table.product(i, j);
            Some((p.sign > 0, p.index))
        };
        bilinear(a, b, a.len(), slot)
    }

    fn dot(a: &[Self], b: &[Self]) -> Self {
        let diag = |i, j| (i == j).then_some((true, 0));
        bilinear(a, b, 1, diag).pop().unwrap_or_else(Rational::zero)
    }
}

type Slot = Option<(bool, usize)>;

fn bilinear(a: &[Rational], b: &[Rational], n: usize, slot: impl Fn(usize, usize) -> Slot) -> Vec<Rational> {
    if let (Some((na, da)), Some((nb, db))) = (small_common(a), small_common(b)) {
        if let Some(out) = bilinear_small(&na, &nb, n, &slot) {
            let d = da as i128 * db as i128;
            return out.into_iter().map(|x| reduce_small(x, d)).collect();
        }
    }
    let (na, da) = big_common(a);
    let (nb, db) = big_common(b);
    let mut out = vec![BigInt::zero(); n];
    for (i, x) in na.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in nb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            match slot(i, j) {
                Some((true, k)) => out[k] += x * y,
                Some((false, k)) => out[k] -= x * y,
                None => {}
            }
        }
    }
    let d = da * db;
    out.into_iter().map(|x| Rational::new(x, d.clone())).collect()
}

// Operands stay below 2^62 so single products fit i128; sums are checked.
const SMALL: i64 = 1 << 62;

fn bilinear_small(a: &[i64], b: &[i64], n: usize, slot: &impl Fn(usize, usize) -> Slot) -> Option<Vec<i128>> {
    let mut out = vec![0i128; n];
    for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
            let t = x as i128 * y as i128;
            match slot(i, j) {
                Some((true, k)) => out[k] = out[k].checked_add(t)?,
                Some((false, k)) => out[k] = out[k].checked_sub(t)?,
                None => {}
            }
        }
    }
    Some(out)
}

fn reduce_small(n: i128, d: i128) -> Rational {
    use num_integer::Integer;
    let g = n.gcd(&d).max(1);
    Rational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

fn small_common(v: &[Rational]) -> Option<(Vec<i64>, i64)> {
    use num_integer::Integer;
    let mut d = 1i64;
    for x in v {
        let q = x.denom().to_i64()?;
        d = (d / d.gcd(&q)).checked_mul(q).filter(|d| *d < SMALL)?;
    }
    let nums = v
        .iter()
        .map(|x| x.numer().to_i64()?.checked_mul(d / x.denom().to_i64()?).filter(|n| n.abs() < SMALL))
        .collect::<Option<Vec<_>>>()?;
    Some((nums, d))
}

fn big_common(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let d = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = v.iter().map(|x| x.numer() * (&d / x.denom())).collect();
    (nums, d)
}

pub trait Scalar: Ring + Div<Output = Self> + PartialOrd + Send + Sync + 'static {
    /// `true` for carriers where arithmetic is exact.
    const EXACT: bool;

    /// Converts a float; exact for rational carriers. Panics on non-finite input.
    fn from_f64(x: f64) -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Exact value; `None` for non-finite floats.
    fn to_rational(&self) -> Option<Rational>;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    /// `None` when the carrier cannot represent the value exactly.
    fn sin(&self) -> Option<Self>;
    fn cos(&self) -> Option<Self>;
    fn exp(&self) -> Option<Self>;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p) / Self::from_i64(q)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<Rational> {
        BigRational::from_float(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sin(&self) -> Option<Self> {
        Some(f64::sin(*self))
    }
    fn cos(&self) -> Option<Self> {
        Some(f64::cos(*self))
    }
    fn exp(&self) -> Option<Self> {
        Some(f64::exp(*self))
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(*self)
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Invalid(format!("not a number: {n}"))),
            serde_json::Value::String(s) => Ok(Scalar::to_f64(&parse_rational(s)?)),
            other => Err(Error::Invalid(format!("expected a number, got {other}"))),
        }
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sin(&self) -> Option<Self> {
        self.is_zero().then(Self::zero)
    }
    fn cos(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }
    fn exp(&self) -> Option<Self> {
        self.is_zero().then(Self::one)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_i64(i))
                } else {
                    let f = n
                        .as_f64()
                        .ok_or_else(|| Error::Invalid(format!("not a number: {n}")))?;
                    Ok(<Self as Scalar>::from_f64(f))
                }
            }
            serde_json::Value::String(s) => parse_rational(s),
            other => Err(Error::Invalid(format!("expected a number, got {other}"))),
        }
    }
}

/// Carrier change: rounds into floats, exact between exact carriers.
pub fn convert<S: Scalar, T: Scalar>(x: &S) -> T {
    if T::EXACT {
        x.to_rational().map_or_else(|| T::from_f64(f64::NAN), |r| T::from_rational(&r))
    } else {
        T::from_f64(x.to_f64())
    }
}

/// Parses `"p"`, `"p/q"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(BigRational::new(p, q));
    }
    if let Ok(i) = BigInt::from_str(s) {
        return Ok(BigRational::from_integer(i));
    }
    let f: f64 = s.parse().map_err(|_| bad())?;
    if !f.is_finite() {
        return Err(bad());
    }
    Ok(<Rational as Scalar>::from_f64(f))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn rational_json_round_trip() {
        let r = rat(-5, 3);
        let v = r.to_json();
        assert_eq!(v, serde_json::json!("-5/3"));
        assert_eq!(Rational::from_json(&v).unwrap(), r);
        assert_eq!(Rational::from_json(&serde_json::json!(4)).unwrap(), rat(4, 1));
    }

    #[test]
    fn exact_transcendentals_only_at_zero() {
        assert_eq!(Scalar::exp(&rat(0, 1)), Some(rat(1, 1)));
        assert_eq!(Scalar::sin(&rat(1, 2)), None);
    }
}
