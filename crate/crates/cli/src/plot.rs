//! CSV series for plotting. Each function returns the whole file, header
//! first.

use std::fmt::Write as _;

use pascalmod::nim::{gray_u64, is_evil_u64, step_u64};
use pascalmod::summatory::dyadic_report;
use pascalmod::Prime;

use crate::error::{CliError, CliResult};

/// Longest range any series will sweep.
pub const MAX_SPAN: u64 = 1 << 24;

fn check_range(start: u64, end: u64) -> CliResult<()> {
    if start >= end {
        return Err(CliError::Usage(format!("empty range [{start}, {end})")));
    }
    if end - start > MAX_SPAN {
        return Err(CliError::Usage(format!("range longer than {MAX_SPAN}")));
    }
    Ok(())
}

/// `n, α_p(n), α_p(n) - n` for `start ≤ n < end`.
pub fn alpha_diff(start: u64, end: u64, p: Prime) -> CliResult<String> {
    check_range(start, end)?;
    let mut out = String::from("n,alpha,diff\n");
    for n in start..end {
        let a = gray_u64(n, p);
        let _ = writeln!(out, "{n},{a},{}", i128::from(a) - i128::from(n));
    }
    Ok(out)
}

/// `m, N_p(m)` for `start ≤ m < end`.
pub fn nim_scatter(start: u64, end: u64, p: Prime) -> CliResult<String> {
    check_range(start, end)?;
    let mut out = String::from("m,N\n");
    for m in start..end {
        let _ = writeln!(out, "{m},{}", step_u64(m, p));
    }
    Ok(out)
}

/// `M, S_N(M), S_e(M), S_N(M) - S_e(M)` for `start ≤ M < end`, both sums
/// accumulated term by term from `M = 1`.
pub fn sn_se(start: u64, end: u64) -> CliResult<String> {
    check_range(start, end)?;
    if end > MAX_SPAN {
        return Err(CliError::Usage(format!("sn-se needs end <= {MAX_SPAN}")));
    }
    let mut out = String::from("M,S_N,S_e,diff\n");
    let (mut sn, mut se) = (0u128, 0u128);
    for m in 0..end {
        if m > 0 {
            sn += u128::from(step_u64(m, Prime::TWO));
            se += u128::from(2 * m + u64::from(!is_evil_u64(m)));
        }
        if m >= start {
            let _ = writeln!(out, "{m},{sn},{se},{}", sn as i128 - se as i128);
        }
    }
    Ok(out)
}

/// `S_N - S_e` across `[2^k, 2^{k+1}]` next to `-2M² + 6·2^k·M - 4·4^k`.
pub fn parabola(k: u32) -> CliResult<String> {
    Ok(dyadic_report(k)?.to_csv())
}
