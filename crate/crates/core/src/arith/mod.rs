//! Numeric substrate: dyadic floats with directed rounding, intervals over
//! them, and certified elementary functions.

mod elementary;
mod float;
mod interval;

pub use elementary::{approx_log2_int, iv_exp, iv_log, iv_log_abs, ln2};
pub use float::{decimal_string, BigFloat, Round};
pub use interval::{parse_decimal, rational_to_decimal, Interval};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Default ceiling for adaptive precision.
pub const DEFAULT_PRECISION_CEILING: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Abs,
    Pow,
}

/// Apply `op` to `x` and `y`. `Abs` ignores `y`. `Pow` requires `y` to be an
/// integer point, or `x > 0` for a general exponent.
pub fn iv_arith(op: Op, x: &Interval, y: &Interval) -> Result<Interval> {
    match op {
        Op::Add => Ok(x.add(y)),
        Op::Sub => Ok(x.sub(y)),
        Op::Mul => Ok(x.mul(y)),
        Op::Div => x.div(y),
        Op::Abs => Ok(x.abs()),
        Op::Pow => {
            if y.is_point() && y.lo().exponent() >= 0 {
                let e = y.lo().floor();
                let e: i64 = i64::try_from(e).map_err(|_| Error::PrecisionExhausted(x.precision()))?;
                x.powi(e)
            } else {
                iv_exp(&iv_log(x)?.mul(y))
            }
        }
    }
}

pub fn unique_integer_in(x: &Interval) -> Result<BigInt> {
    x.unique_integer()
}

pub fn safe_bound(x: &Interval, dir: Round) -> BigRational {
    x.safe_bound(dir)
}

/// Run `f` at `start` bits, doubling on precision-related failures until
/// `ceiling` is passed.
pub fn with_escalation<T>(
    start: u32,
    ceiling: u32,
    mut f: impl FnMut(u32) -> Result<T>,
) -> Result<T> {
    let mut prec = start.max(16);
    loop {
        match f(prec) {
            Err(e) if e.wants_more_precision() => {
                if prec >= ceiling {
                    return Err(Error::PrecisionExhausted(ceiling));
                }
                log::debug!("raising precision {} -> {}", prec, prec * 2);
                prec = (prec * 2).min(ceiling);
            }
            r => return r,
        }
    }
}
