//! Summatory functions of the evil numbers and of `N(m) = m ⊕ 2m`.
//!
//! `S_e(M) = ∑_{i=1}^M e(i)` has a closed form. `S_N(M) = ∑_{i=1}^M N(i)`
//! is reduced to `S_e` plus a sum of Gray codes, which itself satisfies a
//! halving recursion because `α(2q) + α(2q+1) = 4α(q) + 1`.

use std::fmt::Write as _;

use crate::basep::Prime;
use crate::error::{Error, Result};
use crate::nim::{gray_u64, is_evil_u64, step_u64};
use crate::report::Report;

fn evil_u64(i: u64) -> u64 {
    2 * i + u64::from(!is_evil_u64(i))
}

/// Closed form of `S_e(M)`:
/// `M(M+1) + ⌊M/2⌋ - r(r+1)/2 + s(r+1) + 2·max(0, r-s)` with `r = M mod 2`
/// and `s` the parity of the binary digit sum of `⌊M/2⌋`.
pub fn evil_sum_closed(m: u64) -> u128 {
    let big_m = i128::from(m);
    let r = i128::from(m % 2);
    let s = i128::from((m / 2).count_ones() % 2);
    let value =
        big_m * (big_m + 1) + big_m / 2 - r * (r + 1) / 2 + s * (r + 1) + 2 * (r - s).max(0);
    value as u128
}

/// `∑_{i=1}^M e(i)` term by term.
pub fn evil_sum_brute(m: u64) -> u128 {
    (1..=m).map(|i| u128::from(evil_u64(i))).sum()
}

/// `∑_{i=1}^M N_p(i)` term by term.
pub fn step_sum_brute(m: u64, p: Prime) -> u128 {
    (1..=m).map(|i| u128::from(step_u64(i, p))).sum()
}

/// `∑_{j=2^k}^{2^k+ℓ} α(j)` for the binary Gray code `α`.
///
/// Consecutive pairs `(2q, 2q+1)` are folded into `4α(q) + 1`, which halves
/// the interval; an unpaired last term is added directly. The recursion
/// bottoms out at `k = 1` (and `k = 0`, the single term `α(1)`).
pub fn gray_range_sum(k: u32, ell: u64) -> Result<u128> {
    if k >= 63 || ell >= 1u64 << k {
        return Err(Error::Domain(format!(
            "need 0 <= ell < 2^k, got k={k} ell={ell}"
        )));
    }
    let lo = 1u64 << k;
    if k <= 1 {
        return Ok((lo..=lo + ell)
            .map(|j| u128::from(gray_u64(j, Prime::TWO)))
            .sum());
    }
    let mut total = 0u128;
    if ell >= 1 {
        // pairs (2q, 2q+1) for q = 2^{k-1} ..= 2^{k-1} + ⌊(ℓ-1)/2⌋
        let half = (ell - 1) / 2;
        total += 4 * gray_range_sum(k - 1, half)? + u128::from(half) + 1;
    }
    if ell.is_multiple_of(2) {
        total += u128::from(gray_u64(lo + ell, Prime::TWO));
    }
    Ok(total)
}

/// `S_N(M)` from `S_e(M)`, a Gray-code range sum and an exact residual:
/// `S_e(M) + 2∑_{j=2^k}^M α(j) - (M - 2^k + 1)(2^k + M) + R`, where
/// `2^k ≤ M < 2^{k+1}`. `R = 0` for odd `M`; for even `M` it is the
/// unpaired term `N(M) - e(M) - 2(α(M) - M)`.
pub fn step_sum_via_gray(m: u64) -> Result<u128> {
    if m == 0 {
        return Ok(0);
    }
    let k = 63 - m.leading_zeros();
    let lo = 1u64 << k;
    let se = evil_sum_closed(m) as i128;
    let gray = gray_range_sum(k, m - lo)? as i128;
    let (mi, loi) = (i128::from(m), i128::from(lo));
    let residual = if m % 2 == 1 {
        0
    } else {
        i128::from(step_u64(m, Prime::TWO))
            - i128::from(evil_u64(m))
            - 2 * (i128::from(gray_u64(m, Prime::TWO)) - mi)
    };
    let value = se + 2 * gray - (mi - loi + 1) * (loi + mi) + residual;
    Ok(value as u128)
}

/// The difference `S_N - S_e` across `[2^k, 2^{k+1})`.
#[derive(Debug, Clone)]
pub struct DyadicIntervalReport {
    pub k: u32,
    pub max_difference: i128,
    pub argmax: u64,
    /// `(M, S_N(M) - S_e(M), -2M² + 6·2^k·M - 4·4^k)`
    pub parabola_samples: Vec<(u64, i128, i128)>,
    pub report: Report,
}

impl DyadicIntervalReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("M,diff,parabola\n");
        for (m, d, q) in &self.parabola_samples {
            let _ = writeln!(out, "{m},{d},{q}");
        }
        out
    }
}

pub fn parabola(k: u32, m: u64) -> i128 {
    let (m, pk) = (i128::from(m), 1i128 << k);
    -2 * m * m + 6 * pk * m - 4 * pk * pk
}

/// Largest `k` accepted by [`dyadic_report`]; the sweep visits `2^{k+1}` terms.
pub const DYADIC_MAX_K: u32 = 30;

/// Sweeps `S_N - S_e` over the interval and checks that it vanishes at both
/// ends, peaks exactly at `2^k + 2^{k-1} - 1`, and that the peak equals
/// `S_e(2^{k+1}-1) - 2S_e(2^k+2^{k-1}-1) + S_e(2^k-1)`. Every `M` is sampled
/// for `k ≤ 14`; above that the samples are strided to about `2^14` rows.
pub fn dyadic_report(k: u32) -> Result<DyadicIntervalReport> {
    if !(2..=DYADIC_MAX_K).contains(&k) {
        return Err(Error::Domain(format!(
            "dyadic report needs 2 <= k <= {DYADIC_MAX_K}"
        )));
    }
    let lo = 1u64 << k;
    let hi = lo << 1;
    let centre = lo + lo / 2 - 1;
    let stride = if k <= 14 { 1 } else { 1u64 << (k - 14) };
    let mut report = Report::new(format!("dyadic interval k={k}"));
    let mut diff = 0i128;
    let mut best: Option<(i128, u64)> = None;
    let mut ties = 0u64;
    let mut samples = Vec::new();
    for m in 1..hi {
        diff += i128::from(step_u64(m, Prime::TWO)) - i128::from(evil_u64(m));
        if m == lo - 1 {
            report.check(diff == 0, || format!("S_N - S_e = {diff} at 2^k - 1"));
        }
        if m < lo {
            continue;
        }
        match best {
            Some((b, _)) if diff < b => {}
            Some((b, _)) if diff == b => ties += 1,
            _ => {
                best = Some((diff, m));
                ties = 0;
            }
        }
        if (m - lo).is_multiple_of(stride) || m == centre || m == hi - 1 {
            samples.push((m, diff, parabola(k, m)));
        }
    }
    report.check(diff == 0, || format!("S_N - S_e = {diff} at 2^(k+1) - 1"));
    let (max_difference, argmax) = best.expect("interval is non-empty");
    report.check(argmax == centre && ties == 0, || {
        format!("maximum at {argmax} with {ties} ties, expected {centre}")
    });
    let closed = evil_sum_closed(hi - 1) as i128 - 2 * evil_sum_closed(centre) as i128
        + evil_sum_closed(lo - 1) as i128;
    report.check(max_difference == closed, || {
        format!("maximum {max_difference} differs from closed value {closed}")
    });
    Ok(DyadicIntervalReport {
        k,
        max_difference,
        argmax,
        parabola_samples: samples,
        report,
    })
}

/// For every `1 ≤ j ≤ limit`: `N(j) - e(j) - 2(α(j) - j) ∈ {-1, 0, 1}`, the
/// two terms at `2j, 2j+1` cancel, and `N(2j) - 2α(2j) = 0`,
/// `N(2j+1) - 2α(2j+1) = 1`.
pub fn lemma_tec_check(limit: u64) -> Result<Report> {
    if limit < 2 {
        return Err(Error::Domain("lemma check needs limit >= 2".into()));
    }
    let two = Prime::TWO;
    let term = |j: u64| {
        i128::from(step_u64(j, two))
            - i128::from(evil_u64(j))
            - 2 * (i128::from(gray_u64(j, two)) - i128::from(j))
    };
    let mut report = Report::new(format!("paired residual lemma up to {limit}"));
    for j in 1..=limit {
        let t = term(j);
        report.check((-1..=1).contains(&t), || format!("term at {j} is {t}"));
        let pair = term(2 * j) + term(2 * j + 1);
        report.check(pair == 0, || format!("pair at {j} sums to {pair}"));
        let even = i128::from(step_u64(2 * j, two)) - 2 * i128::from(gray_u64(2 * j, two));
        let odd = i128::from(step_u64(2 * j + 1, two)) - 2 * i128::from(gray_u64(2 * j + 1, two));
        report.check(even == 0 && odd == 1, || {
            format!("N - 2α at {j}: {even}, {odd}")
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evil_sum_examples() {
        assert_eq!(evil_sum_closed(0), 0);
        assert_eq!(evil_sum_closed(1), 3);
        assert_eq!(evil_sum_closed(3), 14);
        assert_eq!(evil_sum_closed(7), 60);
    }

    #[test]
    fn evil_sum_closed_matches_brute() {
        let mut running = 0u128;
        for m in 0..=100_000u64 {
            if m > 0 {
                running += u128::from(evil_u64(m));
            }
            assert_eq!(evil_sum_closed(m), running, "M={m}");
        }
        assert_eq!(evil_sum_brute(1000), evil_sum_closed(1000));
    }

    #[test]
    fn step_sum_examples() {
        assert_eq!(step_sum_brute(3, Prime::TWO), 14);
        assert_eq!(step_sum_brute(5, Prime::TWO), 41);
        assert_eq!(step_sum_brute(0, Prime::THREE), 0);
        assert_eq!(step_sum_via_gray(5).unwrap(), 41);
        assert_eq!(step_sum_via_gray(1).unwrap(), 3);
    }

    #[test]
    fn gray_range_examples() {
        assert_eq!(gray_range_sum(1, 1).unwrap(), 5);
        assert_eq!(gray_range_sum(2, 3).unwrap(), 22);
        for k in 0..10 {
            assert_eq!(
                gray_range_sum(k, 0).unwrap(),
                u128::from(gray_u64(1 << k, Prime::TWO))
            );
        }
        assert!(gray_range_sum(3, 8).is_err());
    }

    #[test]
    fn gray_range_matches_direct_sum() {
        for k in 1..=14u32 {
            let lo = 1u64 << k;
            let mut running = 0u128;
            for ell in 0..lo {
                running += u128::from(gray_u64(lo + ell, Prime::TWO));
                assert_eq!(gray_range_sum(k, ell).unwrap(), running, "k={k} ell={ell}");
            }
        }
    }

    #[test]
    fn step_sum_via_gray_matches_brute() {
        let mut running = 0u128;
        for m in 1..=100_000u64 {
            running += u128::from(step_u64(m, Prime::TWO));
            assert_eq!(step_sum_via_gray(m).unwrap(), running, "M={m}");
        }
    }

    #[test]
    fn dyadic_endpoints_agree() {
        for k in 1..=16u32 {
            let m = (1u64 << k) - 1;
            assert_eq!(step_sum_via_gray(m).unwrap(), evil_sum_closed(m));
        }
    }

    #[test]
    fn dyadic_reports() {
        let r = dyadic_report(2).unwrap();
        assert_eq!((r.max_difference, r.argmax), (8, 5));
        assert!(r.report.passed(), "{}", r.report);
        for k in 2..=14 {
            let r = dyadic_report(k).unwrap();
            assert!(r.report.passed(), "{}", r.report);
            assert_eq!(r.parabola_samples.len(), 1 << k);
            assert_eq!(r.parabola_samples[0].2, 0);
        }
        let r = dyadic_report(16).unwrap();
        assert!(r.report.passed());
        assert!(r.parabola_samples.len() <= (1 << 14) + 2);
        assert!(dyadic_report(1).is_err());
        assert_eq!(parabola(3, 16), 0);
        assert_eq!(parabola(3, 12), 32);
    }

    #[test]
    fn csv_layout() {
        let csv = dyadic_report(2).unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("M,diff,parabola"));
        assert_eq!(lines.next(), Some("4,3,0"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn lemma() {
        assert!(lemma_tec_check(10_000).unwrap().passed());
        assert!(lemma_tec_check(1).is_err());
    }
}
