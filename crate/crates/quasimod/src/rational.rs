//! Exact rational scalars.
//!
//! `BigRational` already maintains the invariants we need (lowest terms,
//! positive denominator); this module adds the constructors and the
//! `"num/den"` text form used by the CLI.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Exact integer power, negative exponents allowed (base must be nonzero then).
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    if exp >= 0 {
        num_traits::pow::Pow::pow(base.clone(), exp as u64)
    } else {
        num_traits::pow::Pow::pow(base.clone().recip(), (-exp) as u64)
    }
}

/// n! as a BigInt.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Renders `p/q` as `"p"` when q = 1 and `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`format_rat`].
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
    }
}

/// Signed rendering with explicit leading sign, for polynomial pretty-printing.
pub fn format_rat_signed(r: &Rat) -> (bool, String) {
    (r.is_negative(), format_rat(&r.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse_round_trip() {
        for (n, d) in [(0, 1), (5, 1), (-7, 3), (22, 8), (-1, 24)] {
            let r = ratio(n, d);
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
        assert_eq!(format_rat(&ratio(22, 8)), "11/4");
        assert_eq!(format_rat(&rat(-3)), "-3");
    }

    #[test]
    fn pow_handles_negative_exponents() {
        assert_eq!(rat_pow(&rat(2), -2), ratio(1, 4));
        assert_eq!(rat_pow(&ratio(-3, 2), 3), ratio(-27, 8));
        assert_eq!(rat_pow(&rat(5), 0), rat(1));
    }

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
