//! Dyadic interval arithmetic with outward rounding.
//!
//! Used as a fast filter when deciding the sign of a constructible real: a
//! refinable enclosure proves "nonzero" quickly, while the exact tower
//! arithmetic in the parent module settles the remaining cases. All rounding
//! here is outward, so an interval is always a true enclosure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Sign;

/// A dyadic number `mantissa * 2^exponent`.
#[derive(Clone, Debug)]
pub(crate) struct Dyadic {
    pub mantissa: BigInt,
    pub exponent: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    fn shifted(&self, down_to: i64) -> BigInt {
        debug_assert!(down_to <= self.exponent);
        &self.mantissa << (self.exponent - down_to) as usize
    }

    fn cmp(&self, other: &Dyadic) -> std::cmp::Ordering {
        let e = self.exponent.min(other.exponent);
        self.shifted(e).cmp(&other.shifted(e))
    }

    fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    /// Largest dyadic with at most `prec` mantissa bits that is <= self.
    fn round_down(&self, prec: u64) -> Dyadic {
        let bits = self.mantissa.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = (bits - prec) as usize;
        let divisor = BigInt::one() << shift;
        Dyadic {
            mantissa: self.mantissa.div_floor(&divisor),
            exponent: self.exponent + shift as i64,
        }
    }

    /// Smallest dyadic with at most `prec` mantissa bits that is >= self.
    fn round_up(&self, prec: u64) -> Dyadic {
        let bits = self.mantissa.bits();
        if bits <= prec {
            return self.clone();
        }
        let shift = (bits - prec) as usize;
        let divisor = BigInt::one() << shift;
        Dyadic {
            mantissa: self.mantissa.div_ceil(&divisor),
            exponent: self.exponent + shift as i64,
        }
    }

    fn add(&self, other: &Dyadic) -> Dyadic {
        let e = self.exponent.min(other.exponent);
        Dyadic {
            mantissa: self.shifted(e) + other.shifted(e),
            exponent: e,
        }
    }

    fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            mantissa: &self.mantissa * &other.mantissa,
            exponent: self.exponent + other.exponent,
        }
    }

    /// Floor of the value as a BigInt.
    pub fn floor(&self) -> BigInt {
        if self.exponent >= 0 {
            &self.mantissa << self.exponent as usize
        } else {
            let divisor = BigInt::one() << (-self.exponent) as usize;
            self.mantissa.div_floor(&divisor)
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from(&self.mantissa << self.exponent as usize)
        } else {
            BigRational::new(
                self.mantissa.clone(),
                BigInt::one() << (-self.exponent) as usize,
            )
        }
    }
}

/// Directed conversion of a rational: result <= value when `up` is false.
fn dyadic_from_rational(value: &BigRational, prec: u64, up: bool) -> Dyadic {
    let numer = value.numer();
    let denom = value.denom(); // always positive
    if numer.is_zero() {
        return Dyadic::zero();
    }
    let e = numer.bits() as i64 - denom.bits() as i64 - prec as i64;
    // mantissa = round(numer / (denom * 2^e))
    let (scaled_numer, scaled_denom) = if e <= 0 {
        (numer << (-e) as usize, denom.clone())
    } else {
        (numer.clone(), denom << e as usize)
    };
    let (q, r) = scaled_numer.div_mod_floor(&scaled_denom);
    let mantissa = if up && !r.is_zero() { q + 1 } else { q };
    Dyadic {
        mantissa,
        exponent: e,
    }
}

/// Floor of the square root of a nonnegative dyadic, with ~prec result bits.
fn dyadic_sqrt_down(x: &Dyadic, prec: u64) -> Dyadic {
    debug_assert!(!x.is_negative());
    if x.mantissa.is_zero() {
        return Dyadic::zero();
    }
    let target = 2 * prec + 2;
    let bits = x.mantissa.bits();
    let mut shift = target.saturating_sub(bits) as i64;
    if (x.exponent - shift) % 2 != 0 {
        shift += 1;
    }
    let m = &x.mantissa << shift as usize;
    let e = x.exponent - shift;
    let root = m.sqrt();
    Dyadic {
        mantissa: root,
        exponent: e / 2,
    }
}

fn dyadic_sqrt_up(x: &Dyadic, prec: u64) -> Dyadic {
    let down = dyadic_sqrt_down(x, prec);
    // (root+1)^2 > m, so root+1 at the same exponent is an upper bound.
    Dyadic {
        mantissa: down.mantissa + 1,
        exponent: down.exponent,
    }
}

/// A closed interval with dyadic endpoints; `lo <= hi` always.
#[derive(Clone, Debug)]
pub(crate) struct Interval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl Interval {
    pub fn from_rational(value: &BigRational, prec: u64) -> Interval {
        Interval {
            lo: dyadic_from_rational(value, prec, false),
            hi: dyadic_from_rational(value, prec, true),
        }
    }

    pub fn zero() -> Interval {
        Interval {
            lo: Dyadic::zero(),
            hi: Dyadic::zero(),
        }
    }

    pub fn add(&self, other: &Interval, prec: u64) -> Interval {
        Interval {
            lo: self.lo.add(&other.lo).round_down(prec),
            hi: self.hi.add(&other.hi).round_up(prec),
        }
    }

    pub fn mul(&self, other: &Interval, prec: u64) -> Interval {
        let candidates = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c.cmp(&lo) == std::cmp::Ordering::Less {
                lo = c.clone();
            }
            if c.cmp(&hi) == std::cmp::Ordering::Greater {
                hi = c.clone();
            }
        }
        Interval {
            lo: lo.round_down(prec),
            hi: hi.round_up(prec),
        }
    }

    /// Square root of an enclosure of a nonnegative value. A slightly
    /// negative lower endpoint (rounding slack) is clamped to zero.
    pub fn sqrt(&self, prec: u64) -> Interval {
        let lo = if self.lo.is_negative() {
            Dyadic::zero()
        } else {
            dyadic_sqrt_down(&self.lo, prec)
        };
        debug_assert!(!self.hi.is_negative());
        Interval {
            lo,
            hi: dyadic_sqrt_up(&self.hi, prec),
        }
    }

    /// The sign, when the interval excludes zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    pub fn midpoint(&self) -> BigRational {
        (self.lo.to_rational() + self.hi.to_rational())
            / BigRational::from(BigInt::from(2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_enclosure_brackets_value() {
        let v = ratio(1, 3);
        let iv = Interval::from_rational(&v, 32);
        assert!(iv.lo.to_rational() <= v);
        assert!(iv.hi.to_rational() >= v);
        assert_eq!(iv.sign(), Some(Sign::Positive));
    }

    #[test]
    fn sqrt_two_enclosure() {
        let iv = Interval::from_rational(&ratio(2, 1), 64).sqrt(64);
        let lo = iv.lo.to_rational();
        let hi = iv.hi.to_rational();
        assert!(&lo * &lo <= ratio(2, 1));
        assert!(&hi * &hi >= ratio(2, 1));
        // enclosure is tight enough to separate sqrt(2) from 1.414
        assert!(lo > ratio(1414, 1000));
        assert!(hi < ratio(1415, 1000));
    }

    #[test]
    fn mixed_sign_product() {
        let a = Interval::from_rational(&ratio(-1, 2), 32);
        let b = Interval::from_rational(&ratio(3, 1), 32);
        let p = a.mul(&b, 32);
        assert_eq!(p.sign(), Some(Sign::Negative));
    }

    #[test]
    fn floor_of_negative_dyadic() {
        let d = Dyadic {
            mantissa: BigInt::from(-5),
            exponent: -1,
        };
        assert_eq!(d.floor(), BigInt::from(-3));
    }
}
