//! Base-`p` digit arithmetic.
//!
//! Digits are stored least-significant first everywhere inside the crate;
//! only display and file output use most-significant-first order.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime modulus, validated by trial division on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u32);

impl Prime {
    pub const TWO: Prime = Prime(2);
    pub const THREE: Prime = Prime(3);
    pub const FIVE: Prime = Prime(5);
    pub const SEVEN: Prime = Prime(7);

    pub fn new(value: u64) -> Result<Self> {
        if value < 2 || value > u64::from(u32::MAX) {
            return Err(Error::NotPrime(value));
        }
        let mut d = 2u64;
        while d * d <= value {
            if value.is_multiple_of(d) {
                return Err(Error::NotPrime(value));
            }
            d += 1;
        }
        Ok(Prime(value as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_u64(self) -> u64 {
        u64::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Prime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: u64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("not an integer: {s:?}")))?;
        Prime::new(v)
    }
}

/// A finite word over `{0, …, p-1}`, least-significant digit first.
///
/// The canonical representation of an integer has no most-significant zero;
/// the integer 0 is the empty word. Words built with
/// [`DigitWord::from_digits`] may carry leading zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    digits: Vec<u32>,
    base: Prime,
}

impl DigitWord {
    /// Builds a word from least-significant-first digits.
    pub fn from_digits(digits: Vec<u32>, base: Prime) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(Error::DigitOutOfRange {
                digit: bad,
                base: base.get(),
            });
        }
        Ok(DigitWord { digits, base })
    }

    /// Parses a most-significant-first string such as `"43"` (digits `0-9a-z`).
    pub fn parse_msd(s: &str, base: Prime) -> Result<Self> {
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars().rev() {
            let d = c
                .to_digit(36)
                .ok_or_else(|| Error::Domain(format!("invalid digit character {c:?}")))?;
            digits.push(d);
        }
        DigitWord::from_digits(digits, base)
    }

    pub fn empty(base: Prime) -> Self {
        DigitWord {
            digits: Vec::new(),
            base,
        }
    }

    /// Digits, least-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u32> {
        self.digits
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.digits.last().is_none_or(|&d| d != 0)
    }

    /// Strips most-significant zeros.
    pub fn canonical(&self) -> DigitWord {
        let mut digits = self.digits.clone();
        while digits.last() == Some(&0) {
            digits.pop();
        }
        DigitWord {
            digits,
            base: self.base,
        }
    }

    /// Most-significant-first rendering. Bases above 36 use dot-separated
    /// decimal digits.
    pub fn to_msd_string(&self) -> String {
        if self.base.get() <= 36 {
            self.digits
                .iter()
                .rev()
                .map(|&d| char::from_digit(d, 36).expect("digit below 36"))
                .collect()
        } else {
            self.digits
                .iter()
                .rev()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(".")
        }
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_msd_string())
    }
}

/// Base-`p` digits of `n`, least-significant first; empty for `n = 0`.
pub fn digits_of(n: &BigUint, p: Prime) -> Vec<u32> {
    if n.is_zero() {
        return Vec::new();
    }
    if p.get() <= 256 {
        return n.to_radix_le(p.get()).into_iter().map(u32::from).collect();
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let base = BigUint::from(p.get());
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&base);
        out.push(r.to_u32().expect("remainder below p"));
        rest = q;
    }
    out
}

/// Base-`p` digits of a machine integer, least-significant first.
pub fn digits_of_u64(mut n: u64, p: Prime) -> Vec<u32> {
    let base = p.as_u64();
    let mut out = Vec::new();
    while n > 0 {
        out.push((n % base) as u32);
        n /= base;
    }
    out
}

/// `∑ digits[i]·p^i` for least-significant-first digits (leading zeros allowed).
pub fn val_digits(digits: &[u32], p: Prime) -> BigUint {
    if p.get() <= 256 {
        let bytes: Vec<u8> = digits.iter().map(|&d| d as u8).collect();
        return BigUint::from_radix_le(&bytes, p.get()).unwrap_or_default();
    }
    let base = BigUint::from(p.get());
    digits
        .iter()
        .rev()
        .fold(BigUint::zero(), |acc, &d| acc * &base + d)
}

/// The canonical base-`p` representation of `n`.
pub fn rep(n: &BigUint, p: Prime) -> DigitWord {
    DigitWord {
        digits: digits_of(n, p),
        base: p,
    }
}

/// The `p`-evaluation of a word; leading zeros are ignored.
pub fn val(w: &DigitWord) -> BigUint {
    val_digits(&w.digits, w.base)
}

/// Digit-wise addition mod `p` without carry.
pub fn nim_add(m: &BigUint, n: &BigUint, p: Prime) -> BigUint {
    let a = digits_of(m, p);
    let b = digits_of(n, p);
    let len = a.len().max(b.len());
    let pv = p.get();
    let sum: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + y) % pv
        })
        .collect();
    val_digits(&sum, p)
}

pub fn digit_sum(n: &BigUint, p: Prime) -> u64 {
    digits_of(n, p).iter().map(|&d| u64::from(d)).sum()
}

/// `(e_0 - e_1 + e_2 - …) mod p`, with `e_0` the least-significant digit.
pub fn alt_digit_sum(n: &BigUint, p: Prime) -> u32 {
    let pv = p.as_u64();
    let mut acc = 0u64;
    for (i, &d) in digits_of(n, p).iter().enumerate() {
        let d = u64::from(d);
        acc = if i % 2 == 0 {
            (acc + d) % pv
        } else {
            (acc + pv - d) % pv
        };
    }
    acc as u32
}

/// Multiplicative inverse of `x` modulo `p`, or `None` when `x ≡ 0`.
pub fn inverse_mod(x: u32, p: Prime) -> Option<u32> {
    let pv = i64::from(p.get());
    let x = i64::from(x) % pv;
    if x == 0 {
        return None;
    }
    let g = x.extended_gcd(&pv);
    debug_assert_eq!(g.gcd, 1);
    Some(g.x.rem_euclid(pv) as u32)
}

/// `binom(a, b) mod p` for `a < p` (no factor of `p` can appear).
pub fn small_binom_mod(a: u32, b: u32, p: Prime) -> u32 {
    if b > a {
        return 0;
    }
    debug_assert!(a < p.get());
    let pv = p.as_u64();
    let b = b.min(a - b);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..u64::from(b) {
        num = num * ((u64::from(a) - i) % pv) % pv;
        den = den * ((i + 1) % pv) % pv;
    }
    let inv = inverse_mod(den as u32, p).expect("factorials below p are units");
    (num * u64::from(inv) % pv) as u32
}

/// The digit permutation `μ_{a,b}: x ↦ binom(a,b)·x mod p`.
///
/// The value table is stored explicitly so that a corrupted table can be
/// injected for negative-control runs of the check suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuMap {
    a: u32,
    b: u32,
    base: Prime,
    table: Vec<u32>,
}

impl MuMap {
    pub fn new(a: u32, b: u32, p: Prime) -> Result<Self> {
        if a >= p.get() {
            return Err(Error::DigitOutOfRange {
                digit: a,
                base: p.get(),
            });
        }
        let c = small_binom_mod(a, b, p);
        if c == 0 {
            return Err(Error::NonInvertibleMultiplier { a, b, p: p.get() });
        }
        let pv = p.as_u64();
        let table = (0..p.get())
            .map(|x| (u64::from(x) * u64::from(c) % pv) as u32)
            .collect();
        Ok(MuMap {
            a,
            b,
            base: p,
            table,
        })
    }

    /// Wraps an explicit value table. Only the shape is validated.
    pub fn from_table(a: u32, b: u32, p: Prime, table: Vec<u32>) -> Result<Self> {
        if table.len() != p.get() as usize {
            return Err(Error::Domain(format!(
                "table has {} entries, expected {}",
                table.len(),
                p
            )));
        }
        if let Some(&bad) = table.iter().find(|&&d| d >= p.get()) {
            return Err(Error::DigitOutOfRange {
                digit: bad,
                base: p.get(),
            });
        }
        Ok(MuMap {
            a,
            b,
            base: p,
            table,
        })
    }

    pub fn indices(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    /// Image of 1, i.e. `binom(a,b) mod p` for an uncorrupted table.
    pub fn multiplier(&self) -> u32 {
        self.table[1 % self.table.len()]
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply_digit(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn apply_digits(&self, digits: &[u32]) -> Vec<u32> {
        digits.iter().map(|&d| self.apply_digit(d)).collect()
    }

    pub fn apply(&self, w: &DigitWord) -> Result<DigitWord> {
        if w.base != self.base {
            return Err(Error::Domain(format!(
                "word in base {} given to a base-{} permutation",
                w.base, self.base
            )));
        }
        Ok(DigitWord {
            digits: self.apply_digits(&w.digits),
            base: self.base,
        })
    }

    /// Bijective, and `0` is the only digit sent to `0`.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.table.len()];
        for &v in &self.table {
            if std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        self.table[0] == 0
    }

    pub fn inverse(&self) -> Result<MuMap> {
        if !self.is_permutation() {
            return Err(Error::Domain(format!(
                "μ table for ({},{}) is not a permutation",
                self.a, self.b
            )));
        }
        let mut table = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u32;
        }
        Ok(MuMap {
            a: self.a,
            b: self.b,
            base: self.base,
            table,
        })
    }
}

/// Letter-wise multiplication of `w` by `binom(a,b) mod p`.
pub fn mu_apply(a: u32, b: u32, w: &DigitWord) -> Result<DigitWord> {
    MuMap::new(a, b, w.base)?.apply(w)
}

/// Letter-wise multiplication of `w` by the inverse of `binom(a,b) mod p`.
pub fn mu_inverse(a: u32, b: u32, w: &DigitWord) -> Result<DigitWord> {
    let p = w.base;
    let c = MuMap::new(a, b, p)?.multiplier();
    let inv = inverse_mod(c, p).expect("multiplier is a unit");
    let pv = p.as_u64();
    Ok(DigitWord {
        digits: w
            .digits
            .iter()
            .map(|&d| (u64::from(d) * u64::from(inv) % pv) as u32)
            .collect(),
        base: p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
        assert_eq!(Prime::new(0), Err(Error::NotPrime(0)));
        assert_eq!("7".parse::<Prime>().unwrap(), Prime::SEVEN);
    }

    #[test]
    fn rep_examples() {
        assert_eq!(rep(&big(23), p(5)).to_string(), "43");
        assert!(rep(&big(0), p(2)).is_empty());
        assert_eq!(rep(&big(4), p(2)).to_string(), "100");
        assert!(rep(&big(4), p(2)).is_canonical());
    }

    #[test]
    fn val_examples() {
        assert_eq!(val(&DigitWord::parse_msd("43", p(5)).unwrap()), big(23));
        assert_eq!(val(&DigitWord::parse_msd("0100", p(2)).unwrap()), big(4));
        assert_eq!(val(&DigitWord::empty(p(3))), big(0));
    }

    #[test]
    fn val_rejects_out_of_range_digit() {
        assert_eq!(
            DigitWord::parse_msd("27", p(5)),
            Err(Error::DigitOutOfRange { digit: 7, base: 5 })
        );
        assert!(DigitWord::from_digits(vec![0, 2], p(2)).is_err());
    }

    #[test]
    fn large_base_round_trip() {
        let q = p(257);
        let n = big(257 * 257 * 3 + 256);
        let w = rep(&n, q);
        assert_eq!(w.digits(), &[256, 0, 3]);
        assert_eq!(val(&w), n);
        assert_eq!(w.to_string(), "3.0.256");
    }

    #[test]
    fn nim_add_examples() {
        assert_eq!(nim_add(&big(5), &big(12), p(2)), big(9));
        assert_eq!(nim_add(&big(23), &big(13), p(3)), big(6));
        assert_eq!(nim_add(&big(41), &big(0), p(7)), big(41));
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum(&big(7), p(2)), 3);
        assert_eq!(digit_sum(&big(0), p(3)), 0);
        assert_eq!(digit_sum(&big(43), p(2)), 4);
        assert_eq!(alt_digit_sum(&big(11), p(3)), 0);
        assert_eq!(alt_digit_sum(&big(0), p(5)), 0);
        assert_eq!(alt_digit_sum(&big(43), p(2)), 0);
        // 9 = 100_3
        assert_eq!(alt_digit_sum(&big(9), p(3)), 1);
    }

    #[test]
    fn alt_digit_sum_matches_direct_loop() {
        for q in [2u64, 3, 5, 7] {
            for n in 0..2000u64 {
                let mut acc: i64 = 0;
                let mut x = n;
                let mut sign = 1;
                while x > 0 {
                    acc += sign * (x % q) as i64;
                    sign = -sign;
                    x /= q;
                }
                let expect = acc.rem_euclid(q as i64) as u32;
                assert_eq!(alt_digit_sum(&big(n), p(q)), expect, "n={n} p={q}");
            }
        }
    }

    #[test]
    fn mu_examples() {
        let w = DigitWord::parse_msd("1331", p(5)).unwrap();
        assert_eq!(mu_apply(4, 3, &w).unwrap().to_string(), "4224");
        assert_eq!(mu_apply(3, 0, &w).unwrap(), w);
        assert_eq!(mu_apply(3, 3, &w).unwrap(), w);
        let zero = DigitWord::parse_msd("0", p(5)).unwrap();
        assert_eq!(mu_apply(3, 2, &zero).unwrap().to_string(), "0");

        let two = DigitWord::parse_msd("2", p(5)).unwrap();
        assert_eq!(mu_inverse(4, 3, &two).unwrap().to_string(), "3");
        assert_eq!(mu_inverse(1, 0, &w).unwrap(), w);
        let back = mu_inverse(3, 2, &mu_apply(3, 2, &w).unwrap()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn mu_inverse_table_z5() {
        // exhaustive inverse table of Z_5
        let mut inv = [0u32; 5];
        for x in 1..5u32 {
            for y in 1..5u32 {
                if x * y % 5 == 1 {
                    inv[x as usize] = y;
                }
            }
        }
        for x in 1..5u32 {
            assert_eq!(inverse_mod(x, p(5)), Some(inv[x as usize]));
        }
        assert_eq!(inverse_mod(0, p(5)), None);
    }

    #[test]
    fn mu_errors() {
        assert_eq!(
            MuMap::new(2, 1, p(2)).unwrap_err(),
            Error::DigitOutOfRange { digit: 2, base: 2 }
        );
        let w = DigitWord::parse_msd("12", p(3)).unwrap();
        assert!(mu_apply(2, 1, &w).is_ok());
        assert_eq!(
            mu_apply(1, 2, &w).unwrap_err(),
            Error::NonInvertibleMultiplier { a: 1, b: 2, p: 3 }
        );
    }

    #[test]
    fn small_binom_matches_exact() {
        for q in [2u64, 3, 5, 7, 11, 13] {
            let q = p(q);
            for a in 0..q.get() {
                let mut exact = 1u64;
                for b in 0..=a {
                    if b > 0 {
                        exact = exact * u64::from(a - b + 1) / u64::from(b);
                    }
                    assert_eq!(u64::from(small_binom_mod(a, b, q)), exact % q.as_u64());
                }
            }
        }
    }

    #[test]
    fn mu_tables_are_permutations() {
        for q in [2u64, 3, 5, 7, 11] {
            let q = p(q);
            for a in 0..q.get() {
                for b in 0..=a {
                    let m = MuMap::new(a, b, q).unwrap();
                    assert!(m.is_permutation(), "a={a} b={b} p={q}");
                    assert_eq!(m.inverse().unwrap().inverse().unwrap(), m);
                }
            }
        }
        let broken = MuMap::from_table(4, 1, p(5), vec![0, 4, 4, 2, 1]).unwrap();
        assert!(!broken.is_permutation());
        assert!(broken.inverse().is_err());
    }

    proptest! {
        #[test]
        fn rep_val_round_trip(n in 0u64..1_000_000, qi in 0usize..4) {
            let q = [2u64, 3, 5, 7][qi];
            let w = rep(&big(n), p(q));
            prop_assert!(w.is_canonical());
            prop_assert_eq!(val(&w), big(n));
        }

        #[test]
        fn nim_add_commutative_associative(m in 0u64..10_000, n in 0u64..10_000, k in 0u64..10_000, qi in 0usize..4) {
            let q = p([2u64, 3, 5, 7][qi]);
            let (m, n, k) = (big(m), big(n), big(k));
            prop_assert_eq!(nim_add(&m, &n, q), nim_add(&n, &m, q));
            prop_assert_eq!(
                nim_add(&nim_add(&m, &n, q), &k, q),
                nim_add(&m, &nim_add(&n, &k, q), q)
            );
        }

        #[test]
        fn binary_nim_add_halving(m in 0u64..10_000, n in 0u64..10_000, r in 0u64..2, s in 0u64..2) {
            let lhs = nim_add(&big(2 * m + r), &big(2 * n + s), Prime::TWO);
            let rhs = big(2) * nim_add(&big(m), &big(n), Prime::TWO) + big((r + s) % 2);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn binary_alt_sum_is_parity(n in 0u64..100_000) {
            let n = big(n);
            prop_assert_eq!(u64::from(alt_digit_sum(&n, Prime::TWO)), digit_sum(&n, Prime::TWO) % 2);
        }

        #[test]
        fn mu_preserves_zeros_and_length(
            qi in 0usize..4,
            a_seed in 0u32..1000,
            b_seed in 0u32..1000,
            raw in proptest::collection::vec(0u32..1000, 0..=12),
        ) {
            let q = p([2u64, 3, 5, 7][qi]);
            let a = a_seed % q.get();
            let b = b_seed % (a + 1);
            let w = DigitWord::from_digits(raw.iter().map(|d| d % q.get()).collect(), q).unwrap();
            let out = mu_apply(a, b, &w).unwrap();
            prop_assert_eq!(out.len(), w.len());
            for (x, y) in w.digits().iter().zip(out.digits()) {
                prop_assert_eq!(*x == 0, *y == 0);
            }
            prop_assert_eq!(mu_inverse(a, b, &out).unwrap(), w);
        }
    }
}
