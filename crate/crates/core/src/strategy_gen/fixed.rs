use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A number in `[0, 1)` with 64 fractional binary digits: value = raw / 2^64.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed64(u64);

pub(crate) const HALF: u64 = 1 << 63;

impl Fixed64 {
    pub const ZERO: Fixed64 = Fixed64(0);
    pub const HALF: Fixed64 = Fixed64(HALF);
    /// Largest representable value, `1 - 2^-64`.
    pub const MAX: Fixed64 = Fixed64(u64::MAX);

    pub const fn from_raw(raw: u64) -> Self {
        Self(raw)
    }

    pub const fn raw(self) -> u64 {
        self.0
    }

    /// Truncates the binary expansion of `x` to 64 fractional digits.
    /// `1.0` saturates to [`Fixed64::MAX`].
    pub fn from_real(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("{x} is outside [0, 1]")));
        }
        // Exact: x * 2^64 only shifts the exponent; `as` truncates and saturates.
        Ok(Self((x * 18_446_744_073_709_551_616.0) as u64))
    }

    /// The first 64 bits of `bytes` (big-endian, zero padded) as a fraction.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let mut buf = [0u8; 8];
        let n = bytes.len().min(8);
        buf[..n].copy_from_slice(&bytes[..n]);
        Self(u64::from_be_bytes(buf))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 18_446_744_073_709_551_616.0
    }

    pub fn to_hex(self) -> String {
        format!("{:016x}", self.0)
    }

    /// Parses up to 16 hex digits as the raw encoding. Longer strings are
    /// treated as a byte string and reduced with [`Fixed64::from_bytes`]; the
    /// two readings agree at exactly 16 digits.
    pub fn from_hex(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix("0x")
            .or_else(|| s.strip_prefix("0X"))
            .unwrap_or(s);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(Error::Parse(format!("invalid hex value {s:?}")));
        }
        if digits.len() <= 16 {
            return u64::from_str_radix(digits, 16)
                .map(Self)
                .map_err(|e| Error::Parse(e.to_string()));
        }
        if !digits.len().is_multiple_of(2) {
            return Err(Error::Parse(format!("odd-length hex byte string {s:?}")));
        }
        let bytes: Vec<u8> = (0..16)
            .step_by(2)
            .map(|i| u8::from_str_radix(&digits[i..i + 2], 16).expect("validated hex"))
            .collect();
        Ok(Self::from_bytes(&bytes))
    }
}

/// Decimal reals (anything containing a `.`) or hex.
impl FromStr for Fixed64 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('.') {
            let x: f64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("invalid decimal value {s:?}")))?;
            Self::from_real(x)
        } else {
            Self::from_hex(s)
        }
    }
}

impl BitXor for Fixed64 {
    type Output = Self;

    fn bitxor(self, rhs: Self) -> Self {
        Self(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for Fixed64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed64(0x{:016x} ~ {})", self.0, self.to_f64())
    }
}

impl fmt::Display for Fixed64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for Fixed64 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

/// `num / den` rounded to nearest, ties to even.
pub(crate) fn div_round_even(num: u128, den: u128) -> u128 {
    let q = num / den;
    let r = num % den;
    let twice = 2 * r;
    if twice > den || (twice == den && q & 1 == 1) {
        q + 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn real_conversion() {
        assert_eq!(Fixed64::from_real(0.5).unwrap().raw(), HALF);
        assert_eq!(Fixed64::from_real(0.25).unwrap().raw(), 1 << 62);
        assert_eq!(Fixed64::from_real(0.0).unwrap(), Fixed64::ZERO);
        assert_eq!(Fixed64::from_real(1.0).unwrap(), Fixed64::MAX);
        assert!(Fixed64::from_real(1.5).is_err());
        assert!(Fixed64::from_real(-0.1).is_err());
        assert!(Fixed64::from_real(f64::NAN).is_err());
    }

    #[test]
    fn truncation_toward_zero() {
        // 0.1 in binary64 is slightly above 1/10; truncation keeps the leading 64 bits.
        let f = Fixed64::from_real(0.1).unwrap();
        assert_eq!(f.raw(), 0x1999_9999_9999_9a00);
    }

    #[test]
    fn parsing() {
        assert_eq!("0x8000000000000000".parse::<Fixed64>().unwrap(), Fixed64::HALF);
        assert_eq!("0.5".parse::<Fixed64>().unwrap(), Fixed64::HALF);
        assert_eq!("ff".parse::<Fixed64>().unwrap().raw(), 0xff);
        // 9 bytes: only the first eight are used.
        assert_eq!(
            "0102030405060708ff".parse::<Fixed64>().unwrap().raw(),
            0x0102_0304_0506_0708
        );
        assert!("xyz".parse::<Fixed64>().is_err());
        assert!("".parse::<Fixed64>().is_err());
        assert!("2.5".parse::<Fixed64>().is_err());
    }

    #[test]
    fn bytes_are_padded() {
        assert_eq!(Fixed64::from_bytes(b"\x80").raw(), HALF);
        assert_eq!(Fixed64::from_bytes(&[]).raw(), 0);
    }

    #[test]
    fn rounding_ties_to_even() {
        assert_eq!(div_round_even(5, 2), 2);
        assert_eq!(div_round_even(7, 2), 4);
        assert_eq!(div_round_even(10, 4), 2);
        assert_eq!(div_round_even(11, 4), 3);
    }

    proptest! {
        #[test]
        fn raw_and_hex_round_trip(raw in any::<u64>()) {
            let f = Fixed64::from_raw(raw);
            prop_assert_eq!(Fixed64::from_hex(&f.to_hex()).unwrap(), f);
            prop_assert_eq!(Fixed64::from_raw(f.raw()), f);
        }
    }
}
