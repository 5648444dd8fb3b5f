//! Exact rational scalars and coordinate vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Dense coordinate vector over the rationals.
pub type Vector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Formats as `"p/q"`, omitting `q` when it is 1.
pub fn to_string(q: &Rational) -> String {
    q.to_string()
}

pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Format(format!("invalid rational {s:?}"));
    // the wire format never signs the denominator
    if let Some((_, den)) = t.split_once('/') {
        if den.starts_with('-') || den.starts_with('+') {
            return Err(bad());
        }
    }
    t.parse::<Rational>().map_err(|_| bad())
}

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

/// Standard basis vector `e_i` (0-based index).
pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| k * x).collect()
}

/// Exact square root of a nonnegative rational, when it exists.
pub fn sqrt_exact(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn vector_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_string).collect()
}

pub fn vector_from_strings(v: &[String]) -> Result<Vector> {
    v.iter().map(|s| parse(s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_form() {
        assert_eq!(to_string(&frac(6, -4)), "-3/2");
        assert_eq!(to_string(&int(7)), "7");
        assert_eq!(parse(" -3/2 ").unwrap(), frac(-3, 2));
        assert_eq!(parse("4/2").unwrap(), int(2));
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn always_reduced() {
        let q = frac(10, -25);
        assert_eq!(q.numer(), &BigInt::from(-2));
        assert_eq!(q.denom(), &BigInt::from(5));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(sqrt_exact(&frac(9, 25)), Some(frac(3, 5)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&int(-4)), None);
        assert_eq!(sqrt_exact(&int(0)), Some(int(0)));
    }
}
