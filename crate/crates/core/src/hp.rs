//! Binary fixed-point reals backed by big integers.
//!
//! Values are `mantissa / 2^PRECISION_BITS`. Precision is far above the 50
//! significant digits used in reports, so `ln`/`exp` chains on exact
//! integers stay accurate to the printed digits.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const PRECISION_BITS: u64 = 384;

/// Significant digits used by [`HpReal::to_decimal`] callers in reports.
pub const REPORT_DIGITS: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HpReal {
    mantissa: BigInt,
}

fn one_mantissa() -> BigInt {
    BigInt::one() << PRECISION_BITS
}

impl HpReal {
    pub fn zero() -> Self {
        HpReal { mantissa: BigInt::zero() }
    }

    pub fn one() -> Self {
        HpReal { mantissa: one_mantissa() }
    }

    pub fn from_int(n: &BigInt) -> Self {
        HpReal { mantissa: n << PRECISION_BITS }
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Self::from_int(&BigInt::from(n.clone()))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_int(&BigInt::from(n))
    }

    /// `num / den`, truncated toward zero.
    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero(), "division by zero");
        HpReal { mantissa: (num << PRECISION_BITS) / den }
    }

    /// Parses a plain decimal literal such as `2.95576` or `-0.5`.
    pub fn from_decimal_str(text: &str) -> Option<Self> {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = [int_part, frac_part].concat();
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let v = Self::from_ratio(&num, &den);
        Some(if neg { -v } else { v })
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn abs(&self) -> Self {
        HpReal { mantissa: self.mantissa.abs() }
    }

    pub fn ln2() -> Self {
        // ln 2 = 2 atanh(1/3)
        let third = Self::from_ratio(&BigInt::one(), &BigInt::from(3));
        atanh_series(&third).mul_int(2)
    }

    fn mul_int(&self, k: i64) -> Self {
        HpReal { mantissa: &self.mantissa * k }
    }

    fn shift(&self, bits: i64) -> Self {
        let mantissa = match bits.cmp(&0) {
            Ordering::Greater => &self.mantissa << bits as u64,
            Ordering::Less => &self.mantissa >> (-bits) as u64,
            Ordering::Equal => self.mantissa.clone(),
        };
        HpReal { mantissa }
    }

    /// Natural logarithm; `None` unless the argument is positive.
    pub fn ln(&self) -> Option<Self> {
        if self.mantissa.sign() != Sign::Plus {
            return None;
        }
        // x = 2^e * y with y in [1, 2)
        let e = self.mantissa.bits() as i64 - 1 - PRECISION_BITS as i64;
        let y = self.shift(-e);
        let one = Self::one();
        let z = &(&y - &one) / &(&y + &one);
        Some(&atanh_series(&z).mul_int(2) + &Self::ln2().mul_int(e))
    }

    pub fn ln_biguint(n: &BigUint) -> Option<Self> {
        Self::from_biguint(n).ln()
    }

    pub fn exp(&self) -> Self {
        let ln2 = Self::ln2();
        // reduce to |r| <= ln2 / 2
        let q = (&self.mantissa + (&ln2.mantissa >> 1u32)).div_floor(&ln2.mantissa);
        let n = q.to_i64().expect("exponent out of range");
        let r = self - &ln2.mul_int(n);
        let mut sum = Self::one();
        let mut term = Self::one();
        let mut k = 1i64;
        loop {
            term = &(&term * &r) / &Self::from_i64(k);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        sum.shift(n)
    }

    pub fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        Some(HpReal { mantissa: (&self.mantissa << PRECISION_BITS).sqrt() })
    }

    pub fn powf(&self, exponent: &HpReal) -> Option<Self> {
        Some((&self.ln()? * exponent).exp())
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let drop = (bits - 62).max(0);
        let top = (&self.mantissa >> drop as u64).to_i64().unwrap_or(0) as f64;
        libm::scalbn(top, (drop - PRECISION_BITS as i64) as i32)
    }

    /// Decimal text with `significant` significant digits, rounded to
    /// nearest.
    pub fn to_decimal(&self, significant: usize) -> String {
        let significant = significant.max(1);
        if self.mantissa.is_zero() {
            return String::from("0");
        }
        let neg = self.is_negative();
        let m = self.mantissa.abs();
        let int_part = &m >> PRECISION_BITS;
        // decimal exponent of the leading digit
        let lead: i64 = if !int_part.is_zero() {
            int_part.to_string().len() as i64 - 1
        } else {
            let mut probe = m.clone();
            let mut e = 0i64;
            let one = one_mantissa();
            while probe < one && e < 2000 {
                probe *= 10u32;
                e -= 1;
            }
            e
        };
        let frac_digits = significant as i64 - 1 - lead;
        let scaled = if frac_digits >= 0 {
            &m * BigInt::from(10u32).pow(frac_digits as u32)
        } else {
            &m / BigInt::from(10u32).pow((-frac_digits) as u32)
        };
        let half = BigInt::one() << (PRECISION_BITS - 1);
        let rounded: BigInt = (scaled + half) >> PRECISION_BITS;
        let mut digits = rounded.to_string();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        if frac_digits <= 0 {
            out.push_str(&digits);
            for _ in 0..(-frac_digits) {
                out.push('0');
            }
            return out;
        }
        let fd = frac_digits as usize;
        if digits.len() <= fd {
            let pad = fd + 1 - digits.len();
            let mut padded = String::new();
            for _ in 0..pad {
                padded.push('0');
            }
            padded.push_str(&digits);
            digits = padded;
        }
        let split = digits.len() - fd;
        out.push_str(&digits[..split]);
        out.push('.');
        out.push_str(&digits[split..]);
        out
    }
}

fn atanh_series(z: &HpReal) -> HpReal {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = HpReal::zero();
    let mut k = 0i64;
    while !power.is_zero() {
        sum = &sum + &HpReal { mantissa: &power.mantissa / (2 * k + 1) };
        power = &power * &z2;
        k += 1;
    }
    sum
}

impl Add for &HpReal {
    type Output = HpReal;
    fn add(self, rhs: &HpReal) -> HpReal {
        HpReal { mantissa: &self.mantissa + &rhs.mantissa }
    }
}

impl Sub for &HpReal {
    type Output = HpReal;
    fn sub(self, rhs: &HpReal) -> HpReal {
        HpReal { mantissa: &self.mantissa - &rhs.mantissa }
    }
}

impl Mul for &HpReal {
    type Output = HpReal;
    fn mul(self, rhs: &HpReal) -> HpReal {
        HpReal { mantissa: (&self.mantissa * &rhs.mantissa) >> PRECISION_BITS }
    }
}

impl Div for &HpReal {
    type Output = HpReal;
    fn div(self, rhs: &HpReal) -> HpReal {
        assert!(!rhs.is_zero(), "division by zero");
        HpReal { mantissa: (&self.mantissa << PRECISION_BITS) / &rhs.mantissa }
    }
}

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal { mantissa: -self.mantissa }
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(REPORT_DIGITS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn ln2_digits() {
        assert_eq!(
            HpReal::ln2().to_decimal(50),
            "0.69314718055994530941723212145817656807550013436026"
        );
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = HpReal::from_decimal_str("2.95576").unwrap();
        let back = x.ln().unwrap().exp();
        assert_eq!(back.to_decimal(40), x.to_decimal(40));
        assert!(close(x.ln().unwrap().to_f64(), 2.95576f64.ln(), 1e-15));
        assert_eq!(HpReal::one().exp().to_decimal(30), "2.71828182845904523536028747135");
    }

    #[test]
    fn ln_of_large_integer() {
        let big = BigUint::from(10u32).pow(300);
        let v = HpReal::ln_biguint(&big).unwrap();
        assert!(close(v.to_f64(), 300.0 * 10f64.ln(), 1e-9));
    }

    #[test]
    fn decimal_formatting() {
        assert_eq!(HpReal::from_i64(5).to_decimal(3), "5.00");
        assert_eq!(HpReal::from_decimal_str("0.0012345").unwrap().to_decimal(3), "0.00123");
        assert_eq!(HpReal::from_i64(123456).to_decimal(3), "123000");
        assert_eq!(HpReal::from_decimal_str("-1.5").unwrap().to_decimal(2), "-1.5");
        assert_eq!(HpReal::from_i64(2).sqrt().unwrap().to_decimal(20), "1.4142135623730950488");
        assert!(HpReal::from_decimal_str("abc").is_none());
    }

    #[test]
    fn negative_exp() {
        let v = HpReal::from_i64(-3).exp().to_f64();
        assert!(close(v, (-3f64).exp(), 1e-15));
    }
}
