use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::Interval;
use crate::bounds::CaseSelector;
use crate::error::{Error, Result};
use crate::lll::{ReductionConfig, ReductionTrace};

use super::Certificate;

/// Serialize through `serde_json::Value` so that object keys come out sorted.
pub(crate) fn canonical_json<T: Serialize>(v: &T) -> Result<String> {
    let value = serde_json::to_value(v)?;
    let mut s = serde_json::to_string_pretty(&value)?;
    s.push('\n');
    Ok(s)
}

pub(crate) fn write_json<T: Serialize>(path: &Path, v: &T) -> Result<()> {
    let s = canonical_json(v)?;
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, s).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Write `cert` as canonical JSON. Identical certificates give identical bytes.
pub fn emit_certificate(cert: &Certificate, path: &Path) -> Result<()> {
    let s = canonical_json(cert)?;
    std::fs::write(path, s).map_err(|e| Error::io(path, e))
}

pub fn read_certificate_value(path: &Path) -> Result<serde_json::Value> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&s)?)
}

/// A stored reduction trace, valid only for the inputs it was computed from.
#[derive(Serialize, Deserialize)]
pub struct ReductionCheckpoint {
    key: String,
    trace: ReductionTrace,
}

impl ReductionCheckpoint {
    pub(crate) fn key(
        sel: CaseSelector,
        transposed: bool,
        k1: &Interval,
        k2: &Interval,
        k3: &BigInt,
        cfg: &ReductionConfig,
    ) -> String {
        let (k1l, k1h) = k1.to_decimal(30);
        let (k2l, k2h) = k2.to_decimal(30);
        format!(
            "n={} j={} col={} K1=[{},{}] K2=[{},{}] K3={} sigma1={:?} attempts={} polish={} chunk={}",
            sel.n,
            sel.j,
            transposed,
            k1l,
            k1h,
            k2l,
            k2h,
            k3,
            cfg.sigma1.as_ref().map(|s| s.to_string()),
            cfg.max_attempts,
            cfg.polish,
            cfg.chunk_bits
        )
    }

    pub(crate) fn load(path: &Path, key: &str) -> Option<ReductionTrace> {
        let s = std::fs::read_to_string(path).ok()?;
        let c: ReductionCheckpoint = serde_json::from_str(&s).ok()?;
        (c.key == key).then_some(c.trace)
    }

    pub(crate) fn store(path: &Path, key: &str, trace: &ReductionTrace) -> Result<()> {
        write_json(
            path,
            &ReductionCheckpoint {
                key: key.to_string(),
                trace: trace.clone(),
            },
        )
    }
}
