use serde::Serialize;

use crate::error::{Error, Result};

use super::fixed::{div_round_even, HALF};
use super::Fixed64;

/// Control parameter `p` of the piecewise linear chaotic map, `0 < p < 1/2`.
///
/// Both a real value and its truncated [`Fixed64`] form are kept; key
/// generation only ever uses the fixed-point one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlcmParams {
    p: f64,
    #[serde(rename = "p_hex")]
    p_fixed: Fixed64,
}

impl PlcmParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 0.5) {
            return Err(Error::Domain(format!("control parameter {p} is outside (0, 1/2)")));
        }
        let p_fixed = Fixed64::from_real(p)?;
        if p_fixed.raw() == 0 {
            return Err(Error::Domain(format!("control parameter {p} underflows 64 bits")));
        }
        Ok(Self { p, p_fixed })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p_fixed(&self) -> Fixed64 {
        self.p_fixed
    }

    /// The map on reals.
    ///
    /// Branches are `[0, p)`, `[p, 1/2)` and the mirror `F(1 - x)` above
    /// `1/2`. The mirror fixes `1/2`, so `F(1/2)` takes the value `1` of the
    /// middle branch's closed right end; `F(1) = F(0) = 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("{x} is outside [0, 1]")));
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        let p = self.p;
        if x < p {
            x / p
        } else if x < 0.5 {
            (x - p) / (0.5 - p)
        } else if x == 0.5 {
            1.0
        } else {
            self.eval_unchecked(1.0 - x)
        }
    }

    /// The map on 64-bit fixed point, each division rounded to nearest even.
    /// `F(1/2)` saturates to [`Fixed64::MAX`].
    pub fn eval_fixed(&self, x: Fixed64) -> Fixed64 {
        let p = self.p_fixed.raw();
        let mut x = x.raw();
        if x == HALF {
            return Fixed64::MAX;
        }
        if x > HALF {
            // 1 - x, exact since x > 1/2.
            x = x.wrapping_neg();
        }
        let y = if x < p {
            div_round_even((x as u128) << 64, p as u128)
        } else {
            div_round_even(((x - p) as u128) << 64, (HALF - p) as u128)
        };
        Fixed64::from_raw(y.min(u64::MAX as u128) as u64)
    }
}
