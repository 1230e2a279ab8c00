//! Validated `(p, q)` parameters of a torus knot or link `t(p, q)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest accepted `p` or `q`.
pub const MAX_PARAM: u64 = 1_000_000;

/// Normalized torus-link parameters, `1 <= p <= q`.
///
/// `t(p, q)` and `t(q, p)` are isotopic, so construction swaps the pair when
/// needed and remembers that it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TorusLinkParams {
    p: u64,
    q: u64,
    gcd: u64,
    lcm: u64,
    components: u64,
    normalized_swap: bool,
}

impl TorusLinkParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        let p = check("p", p)?;
        let q = check("q", q)?;
        let (lo, hi, swapped) = if p <= q { (p, q, false) } else { (q, p, true) };
        let gcd = lo.gcd(&hi);
        Ok(TorusLinkParams {
            p: lo,
            q: hi,
            gcd,
            lcm: lo / gcd * hi,
            components: gcd,
            normalized_swap: swapped,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// Number of link components; equals `gcd(p, q)`.
    pub fn components(&self) -> u64 {
        self.components
    }

    /// Whether the input arrived as `(q, p)` and was swapped.
    pub fn normalized_swap(&self) -> bool {
        self.normalized_swap
    }

    pub fn is_knot(&self) -> bool {
        self.gcd == 1
    }

    /// `t(1, q)` is an unknot: the singular set is degenerate.
    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// Same parameters with the swap flag cleared.
    pub fn unflagged(&self) -> Self {
        TorusLinkParams {
            normalized_swap: false,
            ..*self
        }
    }
}

fn check(name: &'static str, v: i64) -> Result<u64> {
    if v < 1 {
        return Err(Error::InvalidParameter { name, value: v });
    }
    if v as u64 > MAX_PARAM {
        return Err(Error::ParameterTooLarge {
            name,
            value: v,
            max: MAX_PARAM,
        });
    }
    Ok(v as u64)
}
