//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// `(-1)^e` as a scalar.
pub fn sign(e: i64) -> Q {
    if e.rem_euclid(2) == 0 {
        one()
    } else {
        -one()
    }
}

/// Serializes as `"num/den"`.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"a/b"` or a bare integer.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

/// Exact rational square root, if one exists.
pub fn sqrt_q(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for x in [qf(3, 4), qf(-7, 2), q(0), q(5)] {
            assert_eq!(parse_q(&format_q(&x)), Some(x));
        }
        assert_eq!(parse_q("6"), Some(q(6)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn roots() {
        assert_eq!(sqrt_q(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(sqrt_q(&q(2)), None);
        assert_eq!(sqrt_q(&q(-1)), None);
    }
}
