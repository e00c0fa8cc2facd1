use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polynomial::is_prime_u64;

/// `{x^q mod p}` as a membership table indexed by residue.
pub fn qth_power_residues(p: u64, q: u64) -> Result<Vec<bool>> {
    if !is_prime_u64(p) || p % q != 1 || p >= 1 << 31 {
        return Err(Error::BadPrime(p));
    }
    let mut set = vec![false; p as usize];
    for x in 0..p {
        set[pow_mod(x, q, p) as usize] = true;
    }
    Ok(set)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Primes `≡ 1 (mod q)` with their `q`-th power residue tables.
#[derive(Clone, Debug, Serialize)]
pub struct SievePanel {
    pub q: u64,
    pub primes: Vec<u64>,
    #[serde(skip)]
    pub residue_sets: Vec<Vec<bool>>,
}

impl SievePanel {
    /// The `count` smallest primes `≡ 1 (mod q)` above `2q`.
    pub fn new(q: u64, count: usize) -> Result<Self> {
        let primes: Vec<u64> = (2 * q + 1..)
            .filter(|&p| p % q == 1 && is_prime_u64(p))
            .take(count)
            .collect();
        Self::from_primes(q, primes)
    }

    pub fn from_primes(q: u64, primes: Vec<u64>) -> Result<Self> {
        let residue_sets = primes
            .iter()
            .map(|&p| qth_power_residues(p, q))
            .collect::<Result<_>>()?;
        Ok(SievePanel {
            q,
            primes,
            residue_sets,
        })
    }

    fn admits(&self, residues: &[u64]) -> bool {
        residues
            .iter()
            .zip(&self.residue_sets)
            .all(|(&r, set)| set[r as usize])
    }
}

/// `(F_k mod p, F_{k+1} mod p)` by fast doubling.
pub fn fib_pair_mod(k: u64, p: u64) -> (u64, u64) {
    if k == 0 {
        return (0, 1 % p);
    }
    let (a, b) = fib_pair_mod(k / 2, p);
    let c = a * ((2 * b + p - a) % p) % p;
    let d = (a * a + b * b) % p;
    if k % 2 == 0 {
        (c, d)
    } else {
        (d, (c + d) % p)
    }
}

/// `(F_k, F_{k+1})` exactly.
pub fn fib_pair(k: u64) -> (BigInt, BigInt) {
    if k == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(k / 2);
    let c = &a * (&b * 2u32 - &a);
    let d = &a * &a + &b * &b;
    if k % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

pub fn fibonacci(k: u64) -> BigInt {
    fib_pair(k).0
}

/// Which indices to scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanMode {
    /// Odd `j` from 3, stepping with `F_{j+2} = 3 F_j − F_{j−2}`.
    Odd,
    /// Every `j` from 1.
    All,
}

const CHUNK: u64 = 1 << 14;

/// Indices `j ≤ m_max` for which `F_j mod p` is a `q`-th power residue for
/// every panel prime.
pub fn fib_mod_scan(m_max: u64, panel: &SievePanel, mode: ScanMode) -> Vec<u64> {
    let (first, stride) = match mode {
        ScanMode::Odd => (3u64, 2u64),
        ScanMode::All => (1, 1),
    };
    if m_max < first {
        return Vec::new();
    }
    let count = (m_max - first) / stride + 1;
    let chunks: Vec<u64> = (0..count.div_ceil(CHUNK)).collect();
    let mut out: Vec<u64> = chunks
        .par_iter()
        .flat_map_iter(|&c| {
            let start = first + c * CHUNK * stride;
            let end = (start + CHUNK * stride).min(m_max + 1);
            scan_chunk(panel, start, end, stride)
        })
        .collect();
    out.sort_unstable();
    out
}

fn scan_chunk(panel: &SievePanel, start: u64, end: u64, stride: u64) -> Vec<u64> {
    let mut prev = Vec::with_capacity(panel.primes.len());
    let mut cur = Vec::with_capacity(panel.primes.len());
    for &p in &panel.primes {
        let (a, b) = if stride == 2 {
            // F_{start−2}, F_start
            let (x, _) = fib_pair_mod(start - 2, p);
            (x, fib_pair_mod(start, p).0)
        } else {
            let (x, y) = fib_pair_mod(start - 1, p);
            (x, y)
        };
        prev.push(a);
        cur.push(b);
    }
    let mut out = Vec::new();
    let mut j = start;
    while j < end {
        if panel.admits(&cur) {
            out.push(j);
        }
        for (i, &p) in panel.primes.iter().enumerate() {
            let next = if stride == 2 {
                (3 * cur[i] + p - prev[i]) % p
            } else {
                (cur[i] + prev[i]) % p
            };
            prev[i] = cur[i];
            cur[i] = next;
        }
        j += stride;
    }
    out
}

/// Whether `F_j` is a perfect `q`-th power.
pub fn exact_power_check(j: u64, q: u32) -> bool {
    let f = fibonacci(j);
    let r = f.nth_root(q);
    num_traits::pow(r, q as usize) == f
}

/// One sieve survivor and the outcome of its exact check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Survivor {
    pub index: u64,
    pub is_power: bool,
}

pub fn check_survivors(survivors: &[u64], q: u32) -> Vec<Survivor> {
    survivors
        .par_iter()
        .map(|&j| Survivor {
            index: j,
            is_power: exact_power_check(j, q),
        })
        .collect()
}
