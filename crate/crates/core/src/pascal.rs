//! Binomial coefficients mod `p` and the integers `t_{p,n}` whose base-`p`
//! digits are the rows of Pascal's triangle mod `p`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use crate::basep::{
    self, digits_of, digits_of_u64, small_binom_mod, val_digits, DigitWord, MuMap, Prime,
};
use crate::error::{Error, Result};
use crate::report::Report;

/// `binom(n, k) mod p` by Lucas' theorem; `0` when `k > n`.
pub fn binom_mod(n: &BigUint, k: &BigUint, p: Prime) -> u32 {
    if k > n {
        return 0;
    }
    let nd = digits_of(n, p);
    let kd = digits_of(k, p);
    lucas_product(&nd, &kd, p)
}

/// Machine-integer fast path of [`binom_mod`].
pub fn binom_mod_u64(n: u64, k: u64, p: Prime) -> u32 {
    if k > n {
        return 0;
    }
    let pv = p.as_u64();
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (a, b) = ((n % pv) as u32, (k % pv) as u32);
        if b > a {
            return 0;
        }
        acc = acc * u64::from(small_binom_mod(a, b, p)) % pv;
        n /= pv;
        k /= pv;
    }
    acc as u32
}

fn lucas_product(nd: &[u32], kd: &[u32], p: Prime) -> u32 {
    let pv = p.as_u64();
    let mut acc = 1u64;
    for (i, &a) in nd.iter().enumerate() {
        let b = kd.get(i).copied().unwrap_or(0);
        if b > a {
            return 0;
        }
        acc = acc * u64::from(small_binom_mod(a, b, p)) % pv;
    }
    acc as u32
}

/// The word `P_n`: entry `i` holds `binom(n, i) mod p`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueRow {
    n: u64,
    base: Prime,
    coeffs: Vec<u32>,
}

impl ResidueRow {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// The row as a digit word; entry `i` is the coefficient of `p^i`.
    pub fn to_word(&self) -> DigitWord {
        DigitWord::from_digits(self.coeffs.clone(), self.base).expect("residues below p")
    }

    /// The row padded with trailing zeros up to `len` entries (the word `Q_n`).
    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.coeffs.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        v
    }

    /// `t_{p,n}`, the `p`-evaluation of the row.
    pub fn value(&self) -> BigUint {
        val_digits(&self.coeffs, self.base)
    }

    pub fn is_palindrome(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

impl fmt::Display for ResidueRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.base.get() <= 10 {
            for d in &self.coeffs {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Row `n` of Pascal's triangle mod `p`, one Lucas product per entry.
///
/// The digits of the column index are advanced incrementally, so each entry
/// costs `O(log_p n)`.
pub fn row(n: u64, p: Prime) -> ResidueRow {
    let nd = digits_of_u64(n, p);
    let mut id = vec![0u32; nd.len()];
    let mut coeffs = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        if i > 0 {
            // increment the base-p counter
            for d in id.iter_mut() {
                *d += 1;
                if *d == p.get() {
                    *d = 0;
                } else {
                    break;
                }
            }
        }
        coeffs.push(lucas_product(&nd, &id, p));
    }
    ResidueRow { n, base: p, coeffs }
}

/// Successive rows `0, 1, 2, …` built by the additive rule
/// `binom(n+1, i) = binom(n, i) + binom(n, i-1)` mod `p`.
#[derive(Debug, Clone)]
pub struct PascalRows {
    base: Prime,
    next: Vec<u32>,
    n: u64,
}

pub fn rows(p: Prime) -> PascalRows {
    PascalRows {
        base: p,
        next: vec![1],
        n: 0,
    }
}

impl Iterator for PascalRows {
    type Item = ResidueRow;

    fn next(&mut self) -> Option<ResidueRow> {
        let pv = self.base.get();
        let mut following = Vec::with_capacity(self.next.len() + 1);
        following.push(1);
        for w in self.next.windows(2) {
            following.push((w[0] + w[1]) % pv);
        }
        following.push(1);
        let current = std::mem::replace(&mut self.next, following);
        let out = ResidueRow {
            n: self.n,
            base: self.base,
            coeffs: current,
        };
        self.n += 1;
        Some(out)
    }
}

/// `t_{p,n} = ∑ [binom(n,i) mod p] p^i`.
pub fn t(n: u64, p: Prime) -> BigUint {
    row(n, p).value()
}

/// `t_{p,0}, …, t_{p,count-1}`.
pub fn t_sequence(p: Prime, count: usize) -> Vec<BigUint> {
    rows(p).take(count).map(|r| r.value()).collect()
}

/// Memoised evaluation of `t_{p,n}` by recursion on the leading base-`p`
/// digit: with `n = n_k p^k + s`,
/// `t_{p,n} = ∑_{m=0}^{n_k} p^{m p^k} val_p(μ_{n_k,m}(rep_p(t_{p,s})))`.
#[derive(Debug, Clone)]
pub struct TCache {
    base: Prime,
    memo: HashMap<u64, BigUint>,
}

impl TCache {
    pub fn new(p: Prime) -> Self {
        TCache {
            base: p,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, n: u64) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if let Some(v) = self.memo.get(&n) {
            return v.clone();
        }
        let p = self.base;
        let (lead, pk, s) = leading_split(n, p);
        let ts = self.get(s);
        let word = basep::rep(&ts, p);
        let radix = BigUint::from(p.get());
        let mut total = BigUint::zero();
        for m in 0..=lead {
            let img = basep::mu_apply(lead, m, &word).expect("binom(n_k, m) is a unit for n_k < p");
            let shift = Pow::pow(&radix, u64::from(m) * pk);
            total += basep::val(&img) * shift;
        }
        self.memo.insert(n, total.clone());
        total
    }
}

/// `(n_k, p^k, s)` with `n = n_k p^k + s`, `0 < n_k < p`, `s < p^k`.
fn leading_split(n: u64, p: Prime) -> (u32, u64, u64) {
    debug_assert!(n > 0);
    let digits = digits_of_u64(n, p);
    let k = digits.len() - 1;
    let lead = digits[k];
    let pk = p.as_u64().pow(k as u32);
    (lead, pk, n - u64::from(lead) * pk)
}

pub fn t_recursive(n: u64, p: Prime) -> BigUint {
    TCache::new(p).get(n)
}

/// Builds `P_n` as `μ_{n_k,0}(P_s) 0^{p^k-s-1} μ_{n_k,1}(P_s) … μ_{n_k,n_k}(P_s)`.
pub fn row_concat(n: u64, p: Prime) -> Result<ResidueRow> {
    row_concat_with(n, p, |a, b| MuMap::new(a, b, p))
}

/// [`row_concat`] with a caller-supplied source of digit permutations.
pub fn row_concat_with<F>(n: u64, p: Prime, mu: F) -> Result<ResidueRow>
where
    F: Fn(u32, u32) -> Result<MuMap>,
{
    if n == 0 {
        return Err(Error::Domain("row_concat needs n >= 1".into()));
    }
    let coeffs = concat_coeffs(n, p, &mu)?;
    Ok(ResidueRow { n, base: p, coeffs })
}

fn concat_coeffs<F>(n: u64, p: Prime, mu: &F) -> Result<Vec<u32>>
where
    F: Fn(u32, u32) -> Result<MuMap>,
{
    if n == 0 {
        return Ok(vec![1]);
    }
    let (lead, pk, s) = leading_split(n, p);
    let inner = concat_coeffs(s, p, mu)?;
    let gap = (pk - s - 1) as usize;
    let mut out = Vec::with_capacity(n as usize + 1);
    for m in 0..=lead {
        out.extend(mu(lead, m)?.apply_digits(&inner));
        if m < lead {
            out.extend(std::iter::repeat_n(0, gap));
        }
    }
    Ok(out)
}

/// The Fermat number `F_j = 2^{2^j} + 1`.
pub fn fermat_number(j: u32) -> BigUint {
    (BigUint::one() << (1usize << j)) + 1u32
}

/// Product of the Fermat numbers `F_j` over the set bits `j` of `n`.
pub fn fermat_product(n: u64) -> BigUint {
    (0..64)
        .filter(|j| n >> j & 1 == 1)
        .map(fermat_number)
        .product()
}

/// `t'_{p,n} = ∑ sgn[binom(n,i) mod p] 2^i`.
pub fn t_prime(n: u64, p: Prime) -> BigUint {
    let bits: Vec<u32> = row(n, p)
        .coeffs
        .iter()
        .map(|&c| u32::from(c != 0))
        .collect();
    val_digits(&bits, Prime::TWO)
}

/// `t'_{p,n}` through the product form `t'_{p,s} ∑_{m=0}^{n_k} 2^{m p^k}`.
pub fn t_prime_recursive(n: u64, p: Prime) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let (lead, pk, s) = leading_split(n, p);
    let factor: BigUint = (0..=u64::from(lead))
        .map(|m| BigUint::one() << (m * pk) as usize)
        .sum();
    t_prime_recursive(s, p) * factor
}

/// Checks the growth bounds used to show `(t_{p,n})` is not `p`-regular:
/// `t_{p,n+2p} ≥ (p+1)² t_{p,n}` whenever `n + 2p ≤ n_max`, and
/// `t_{p,n} ≥ (p+1)^{⌊n/p⌋}` for every `n ≤ n_max`.
pub fn growth_witness(p: Prime, n_max: u64) -> Result<Report> {
    let two_p = 2 * p.as_u64();
    if n_max < two_p {
        return Err(Error::Domain(format!(
            "growth witness needs n_max >= 2p = {two_p}"
        )));
    }
    let ts = t_sequence(p, n_max as usize + 1);
    let p1 = BigUint::from(p.get() + 1);
    let p1_sq = &p1 * &p1;
    let mut report = Report::new(format!("growth witness p={p} n_max={n_max}"));
    for n in 0..=n_max {
        let tn = &ts[n as usize];
        if n + two_p <= n_max {
            let later = &ts[(n + two_p) as usize];
            report.check(later >= &(&p1_sq * tn), || {
                format!("t_{{{p},{}}} < (p+1)^2 t_{{{p},{n}}}", n + two_p)
            });
        }
        let bound = Pow::pow(&p1, n / p.as_u64());
        report.check(tn >= &bound, || format!("t_{{{p},{n}}} < (p+1)^floor(n/p)"));
    }
    Ok(report)
}
