//! The step map `N_p(m) = m ⊕_p pm`, its inverse, and the sets it induces.
//!
//! In base `p` the digits of `N_p(m)` are `e_i = (m_i + m_{i-1}) mod p`, so
//! the map is injective and its image is the set `E_p` of integers whose
//! alternating digit sum vanishes mod `p`. For `p = 2` that image is the set
//! of evil numbers, and the odious numbers head the chains of iterates.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::basep::{alt_digit_sum, digits_of, nim_add, val_digits, Prime};
use crate::error::{Error, Result};
use crate::report::Report;

fn step_digits(m: &[u32], p: Prime) -> Vec<u32> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut e = Vec::with_capacity(m.len() + 1);
    let mut prev = 0;
    for &d in m {
        e.push((d + prev) % p.get());
        prev = d;
    }
    e.push(prev);
    e
}

/// `N_p(m)`.
pub fn step(m: &BigUint, p: Prime) -> BigUint {
    val_digits(&step_digits(&digits_of(m, p), p), p)
}

/// `N_p(m)` for machine integers; panics if the result overflows `u64`.
pub fn step_u64(m: u64, p: Prime) -> u64 {
    let pv = p.as_u64();
    let (mut rest, mut prev, mut place, mut out) = (m, 0u64, 1u64, 0u64);
    while rest > 0 || prev > 0 {
        let d = rest % pv;
        out += (d + prev) % pv * place;
        prev = d;
        rest /= pv;
        if rest > 0 || prev > 0 {
            place = place.checked_mul(pv).expect("N_p(m) overflows u64");
        }
    }
    out
}

/// The unique `m` with `N_p(m) = e`, if any.
///
/// Membership is decided by the alternating digit sum; the digits are then
/// recovered by the sweep `m_0 = e_0`, `m_i = (e_i - m_{i-1}) mod p`.
pub fn step_inverse(e: &BigUint, p: Prime) -> Option<BigUint> {
    if alt_digit_sum(e, p) != 0 {
        return None;
    }
    let ed = digits_of(e, p);
    let mut m = Vec::with_capacity(ed.len());
    let mut prev = 0u32;
    for &d in &ed {
        let mi = (d + p.get() - prev) % p.get();
        m.push(mi);
        prev = mi;
    }
    // the top sweep digit is the alternating sum itself
    debug_assert_eq!(m.last().copied().unwrap_or(0), 0);
    m.pop();
    Some(val_digits(&m, p))
}

pub fn step_inverse_u64(e: u64, p: Prime) -> Option<u64> {
    step_inverse(&BigUint::from(e), p).map(|m| m.to_u64().expect("m < e"))
}

pub fn is_evil(n: &BigUint) -> bool {
    n.count_ones().is_multiple_of(2)
}

pub fn is_odious(n: &BigUint) -> bool {
    !is_evil(n)
}

pub fn is_evil_u64(n: u64) -> bool {
    n.count_ones().is_multiple_of(2)
}

/// Membership in `E_p = {N_p(m) | m ≥ 0}`.
pub fn in_image_set(n: &BigUint, p: Prime) -> bool {
    alt_digit_sum(n, p) == 0
}

/// The `m`-th evil number, counting from `e(0) = 0`: append the parity bit.
pub fn evil_nth(m: &BigUint) -> BigUint {
    (m << 1u32) + u32::from(is_odious(m))
}

/// The `m`-th element of `E_p`: append the digit that cancels the
/// alternating sum.
pub fn image_nth(m: &BigUint, p: Prime) -> BigUint {
    m * p.get() + alt_digit_sum(m, p)
}

/// `α_p(m) = m ⊕_p ⌊m/p⌋`; for `p = 2` the binary reflected Gray code.
pub fn gray(m: &BigUint, p: Prime) -> BigUint {
    nim_add(m, &(m / p.get()), p)
}

pub fn gray_u64(m: u64, p: Prime) -> u64 {
    if p.get() == 2 {
        return m ^ (m >> 1);
    }
    gray(&BigUint::from(m), p).to_u64().expect("α_p(m) < p·m")
}

/// `(E_p(α_p(m)), N_p(m))`; the two components always agree.
pub fn gray_link(m: &BigUint, p: Prime) -> (BigUint, BigUint) {
    (image_nth(&gray(m, p), p), step(m, p))
}

/// Iterates `N(root), N²(root), …` of one chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRecord {
    pub root: BigUint,
    pub iterates: Vec<BigUint>,
}

/// `sub(i, 1..=m)`: the first `m` iterates of `N_p` from `i`.
pub fn sub_chain(i: &BigUint, m: usize, p: Prime) -> Result<ChainRecord> {
    if i.is_zero() {
        return Err(Error::Domain("chains start at i >= 1".into()));
    }
    let mut iterates = Vec::with_capacity(m);
    let mut x = i.clone();
    for _ in 0..m {
        x = step(&x, p);
        iterates.push(x.clone());
    }
    Ok(ChainRecord {
        root: i.clone(),
        iterates,
    })
}

/// Walks an evil `e` back through `N⁻¹` to the odious head of its chain.
/// Returns `(root, depth)` with `N^depth(root) = e`.
pub fn odious_root(e: &BigUint) -> Result<(BigUint, u32)> {
    if e.is_zero() || is_odious(e) {
        return Err(Error::Domain(format!("{e} is not a positive evil number")));
    }
    let mut x = e.clone();
    let mut depth = 0;
    while !x.is_zero() && is_evil(&x) {
        x = step_inverse(&x, Prime::TWO).expect("evil numbers lie in the image of N");
        depth += 1;
    }
    Ok((x, depth))
}

/// Result of [`partition_check`]: the sweep report and every chain, with
/// iterates truncated to the limit.
#[derive(Debug, Clone)]
pub struct PartitionReport {
    pub report: Report,
    pub chains: Vec<ChainRecord>,
}

/// Checks, for `p = 2` on `[1, limit]`, that the image of `N` is exactly the
/// evil numbers and that the chains headed by odious numbers cover each of
/// them exactly once.
pub fn partition_check(limit: u64) -> PartitionReport {
    let mut report = Report::new(format!("odious chain partition up to {limit}"));
    let p = Prime::TWO;

    let mut image = vec![false; limit as usize + 1];
    // N(m) > m for m ≥ 1, so m ≤ limit suffices
    for m in 1..=limit {
        let e = step_u64(m, p);
        if e <= limit {
            image[e as usize] = true;
        }
    }
    for n in 1..=limit {
        report.check(image[n as usize] == is_evil_u64(n), || {
            format!(
                "{n}: in image = {}, evil = {}",
                image[n as usize],
                is_evil_u64(n)
            )
        });
    }

    let mut chains = Vec::new();
    let mut owner: HashMap<u64, Vec<u64>> = HashMap::new();
    for root in (1..=limit).filter(|&r| !is_evil_u64(r)) {
        let mut iterates = Vec::new();
        let mut x = step_u64(root, p);
        while x <= limit {
            owner.entry(x).or_default().push(root);
            iterates.push(BigUint::from(x));
            x = step_u64(x, p);
        }
        chains.push(ChainRecord {
            root: BigUint::from(root),
            iterates,
        });
    }
    for n in (1..=limit).filter(|&n| is_evil_u64(n)) {
        let heads = owner.get(&n).map(Vec::as_slice).unwrap_or(&[]);
        report.check(heads.len() == 1, || format!("{n} lies in chains {heads:?}"));
        if let Ok((root, _)) = odious_root(&BigUint::from(n)) {
            report.check(heads == [root.to_u64().unwrap_or(0)], || {
                format!("odious_root({n}) = {root}, chains {heads:?}")
            });
        }
    }
    PartitionReport { report, chains }
}
