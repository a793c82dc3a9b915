use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar. Always normalized (lowest terms, positive denominator).
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Scalar {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Scalar::from_integer(acc)
}

/// Size measure used for pivot selection: |numerator · denominator|.
pub(crate) fn height(x: &Scalar) -> BigInt {
    (x.numer() * x.denom()).abs()
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::input(format!("not a rational number: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in {text:?}")));
            }
            Ok(Scalar::new(n, d))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}
