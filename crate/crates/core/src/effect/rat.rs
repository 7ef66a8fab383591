//! Exact rationals.
//!
//! [`Rat`] is `num_rational::BigRational`; this module adds the parsing,
//! formatting and grid helpers the rest of the crate shares.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `a/b`, `a` or a finite decimal such as `0.25`.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let t = text.trim();
    let bad = || Error::Syntax {
        line: 1,
        column: 1,
        message: format!("`{t}` is not a rational"),
    };
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rat::new(digits, scale));
    }
    t.parse::<Rat>().map_err(|_| bad())
}

/// Always `num/den`, also for integers (`1/1`).
pub fn fraction_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn in_unit_interval(r: &Rat) -> bool {
    !r.is_negative() && *r <= Rat::one()
}

pub fn check_unit(r: &Rat) -> Result<()> {
    if in_unit_interval(r) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval(r.to_string()))
    }
}

/// Every rational in `[0,1]` whose reduced denominator is at most `max_den`,
/// in increasing order.
pub fn unit_grid(max_den: u32) -> Vec<Rat> {
    let mut out: Vec<Rat> = (1..=i64::from(max_den.max(1)))
        .flat_map(|d| (0..=d).map(move |n| rat(n, d)))
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn one_minus(r: &Rat) -> Rat {
    Rat::one() - r
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_rat("2/6").unwrap(), rat(1, 3));
        assert_eq!(parse_rat(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(fraction_string(&rat(2, 4)), "1/2");
        assert_eq!(fraction_string(&int(1)), "1/1");
    }

    #[test]
    fn grid_sizes() {
        // 1 + Σ_{d<=n} φ(d): 2, 3, 5, 7, 11, 13
        let sizes: Vec<usize> = (1..=6).map(|n| unit_grid(n).len()).collect();
        assert_eq!(sizes, vec![2, 3, 5, 7, 11, 13]);
    }
}
