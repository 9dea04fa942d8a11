//! Trinomial coefficients mod `p` (Pascal's pyramid) and the cube
//! substitution that generates them.
//!
//! The plane `x + y + z = n` is cut into lines `z = n - k`; line `k` read
//! as base-`p` digits (index `x`) gives the integer `t_{p,n,k}`.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::basep::{
    digits_of_u64, inverse_mod, nim_add, small_binom_mod, val_digits, MuMap, Prime,
};
use crate::error::{Error, Result};
use crate::pascal::binom_mod_u64;
use crate::report::Report;

/// `binom(x+y+z; x, y, z) mod p`, as `binom(n, z) · binom(n - z, x)`.
pub fn trinomial(x: u64, y: u64, z: u64, p: Prime) -> u32 {
    let n = x + y + z;
    let a = binom_mod_u64(n, z, p);
    if a == 0 {
        return 0;
    }
    (u64::from(a) * u64::from(binom_mod_u64(n - z, x, p)) % p.as_u64()) as u32
}

/// [`trinomial`] with an explicit level `n`, which must equal `x + y + z`.
pub fn trinomial_mod(n: u64, x: u64, y: u64, z: u64, p: Prime) -> Result<u32> {
    if x.checked_add(y).and_then(|s| s.checked_add(z)) != Some(n) {
        return Err(Error::Domain(format!("{x} + {y} + {z} != {n}")));
    }
    Ok(trinomial(x, y, z, p))
}

/// The plane `x + y + z = n`; `lines[k][i]` is `binom(n; i, k-i, n-k) mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidPlane {
    pub n: u64,
    pub p: Prime,
    pub lines: Vec<Vec<u32>>,
}

impl PyramidPlane {
    pub fn line_value(&self, k: usize) -> BigUint {
        val_digits(&self.lines[k], self.p)
    }

    pub fn line_values(&self) -> Vec<BigUint> {
        (0..self.lines.len()).map(|k| self.line_value(k)).collect()
    }

    pub fn cell_count(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// Residue at `(x, y, n - x - y)`.
    pub fn get(&self, x: u64, y: u64) -> Option<u32> {
        let k = x.checked_add(y).filter(|&k| k <= self.n)?;
        self.lines[k as usize].get(x as usize).copied()
    }
}

pub fn plane(n: u64, p: Prime) -> PyramidPlane {
    let lines = (0..=n)
        .map(|k| (0..=k).map(|i| trinomial(i, k - i, n - k, p)).collect())
        .collect();
    PyramidPlane { n, p, lines }
}

/// `t_{p,n,k} = ∑_i [binom(n; i, k-i, n-k) mod p] p^i`.
pub fn t_pyramid(n: u64, k: u64, p: Prime) -> Result<BigUint> {
    if k > n {
        return Err(Error::Domain(format!("line {k} of plane {n}")));
    }
    let digits: Vec<u32> = (0..=k).map(|i| trinomial(i, k - i, n - k, p)).collect();
    Ok(val_digits(&digits, p))
}

/// `binom(n; i,j,k) ≡ binom(n-1; i-1,j,k) + binom(n-1; i,j-1,k) + binom(n-1; i,j,k-1)`
/// over every cell with `1 ≤ n ≤ limit`.
pub fn pascal_rule_3d_check(limit: u64, p: Prime) -> Report {
    let mut report = Report::new(format!("three-term rule up to level {limit}, p={p}"));
    let t = |x: Option<u64>, y: Option<u64>, z: Option<u64>| match (x, y, z) {
        (Some(x), Some(y), Some(z)) => trinomial(x, y, z, p),
        _ => 0,
    };
    for n in 1..=limit {
        for x in 0..=n {
            for y in 0..=n - x {
                let z = n - x - y;
                let lhs = trinomial(x, y, z, p);
                let rhs = (t(x.checked_sub(1), Some(y), Some(z))
                    + t(Some(x), y.checked_sub(1), Some(z))
                    + t(Some(x), Some(y), z.checked_sub(1)))
                    % p.get();
                report.check(lhs == rhs, || format!("({n}; {x},{y},{z}): {lhs} vs {rhs}"));
            }
        }
    }
    report
}

/// `t_{2,i,j} = t_{2,i-1,j} ⊕ t_{2,i-1,j-1} ⊕ 2 t_{2,i-1,j-1}` for
/// `0 ≤ j ≤ i ≤ limit`, `i ≥ 1`, with out-of-range terms `0`.
pub fn nim_recurrence_2d_check(limit: u64) -> Report {
    let two = Prime::TWO;
    let mut report = Report::new(format!("binary plane recurrence up to {limit}"));
    let mut prev = plane(0, two).line_values();
    for i in 1..=limit {
        let cur = plane(i, two).line_values();
        let zero = BigUint::default();
        for j in 0..=i as usize {
            let above = prev.get(j).unwrap_or(&zero);
            let diag = if j == 0 { &zero } else { &prev[j - 1] };
            let rhs = nim_add(&nim_add(above, diag, two), &(diag << 1u32), two);
            report.check(cur[j] == rhs, || {
                format!("t_{{2,{i},{j}}} = {} vs {rhs}", cur[j])
            });
        }
        prev = cur;
    }
    report
}

/// Direction of a translation inside a plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationAxis {
    /// `(x, y, z) ↦ (x - x_k p^k, y + x_k p^k, z)`, multiplier `binom(ε_k(i-z), x_k)`.
    XToY,
    /// `(x, y, z) ↦ (x, y - y_k p^k, z + y_k p^k)`, multiplier `binom(ε_k(i-x), y_k)`.
    YToZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationCase {
    /// The multiplier is a unit; `inverse` is its inverse mod `p`.
    Identity { multiplier: u32, inverse: u32 },
    /// The multiplier vanishes and the source cell is `0`.
    White,
}

/// Outcome at one source cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationCell {
    pub axis: TranslationAxis,
    pub source: (u64, u64, u64),
    pub target: (u64, u64, u64),
    pub case: TranslationCase,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct TranslationReport {
    pub report: Report,
    pub cells: Vec<TranslationCell>,
}

impl TranslationReport {
    pub fn cell(&self, axis: TranslationAxis, x: u64, y: u64) -> Option<&TranslationCell> {
        self.cells
            .iter()
            .find(|c| c.axis == axis && c.source.0 == x && c.source.1 == y)
    }
}

fn digit_at(n: u64, k: u32, p: Prime) -> u32 {
    digits_of_u64(n, p).get(k as usize).copied().unwrap_or(0)
}

/// Checks, on plane `i`, both translations at digit position `k` for every
/// cell whose moved coordinate is below `p^{k+1}`. Where the multiplier
/// `binom(a, b)` is nonzero, `μ_{a,b}^{-1}` of the source residue must equal
/// the residue at the translated cell; where it vanishes, the source
/// residue must be `0`. Each cell records which case applied.
pub fn translation_identity_check(i: u64, k: u32, p: Prime) -> Result<TranslationReport> {
    let pk = p
        .as_u64()
        .checked_pow(k)
        .filter(|&pk| pk <= i)
        .ok_or_else(|| Error::Domain(format!("plane {i} is below p^{k}")))?;
    let bound = pk * p.as_u64();
    let mut report = Report::new(format!("translations on plane {i}, digit {k}, p={p}"));
    let mut cells = Vec::new();
    for x in 0..=i {
        for y in 0..=i - x {
            let z = i - x - y;
            let value = trinomial(x, y, z, p);
            for axis in [TranslationAxis::XToY, TranslationAxis::YToZ] {
                let (moved, rest) = match axis {
                    TranslationAxis::XToY => (x, i - z),
                    TranslationAxis::YToZ => (y, i - x),
                };
                if moved >= bound {
                    continue;
                }
                let b = (moved / pk) as u32;
                let a = digit_at(rest, k, p);
                let target = match axis {
                    TranslationAxis::XToY => (x - u64::from(b) * pk, y + u64::from(b) * pk, z),
                    TranslationAxis::YToZ => (x, y - u64::from(b) * pk, z + u64::from(b) * pk),
                };
                let multiplier = small_binom_mod(a, b, p);
                let (case, holds) = if multiplier != 0 {
                    let inv = MuMap::new(a, b, p)?.inverse()?;
                    let moved_value = trinomial(target.0, target.1, target.2, p);
                    let inverse = inverse_mod(multiplier, p).expect("nonzero residue");
                    (
                        TranslationCase::Identity {
                            multiplier,
                            inverse,
                        },
                        inv.apply_digit(value) == moved_value,
                    )
                } else {
                    (TranslationCase::White, value == 0)
                };
                report.check(holds, || {
                    format!("{axis:?} at ({x},{y},{z}) -> {target:?}, case {case:?}")
                });
                cells.push(TranslationCell {
                    axis,
                    source: (x, y, z),
                    target,
                    case,
                    holds,
                });
            }
        }
    }
    Ok(TranslationReport { report, cells })
}

/// `binom(p(x+y+z)+a+b+c; px+a, py+b, pz+c) mod p` by the block rule: `0`
/// when `a + b + c ≥ p`, else `binom(a+b+c, a) binom(b+c, b) binom(x+y+z; x, y, z)`.
pub fn block_relation(x: u64, y: u64, z: u64, a: u32, b: u32, c: u32, p: Prime) -> Result<u32> {
    let pv = p.get();
    if a >= pv || b >= pv || c >= pv {
        return Err(Error::DigitOutOfRange {
            digit: a.max(b).max(c),
            base: pv,
        });
    }
    Ok(sigma_factor(a, b, c, p) * trinomial(x, y, z, p) % pv)
}

/// `binom(a+b+c, a) binom(b+c, b) mod p`, or `0` when `a + b + c ≥ p`.
fn sigma_factor(a: u32, b: u32, c: u32, p: Prime) -> u32 {
    if a + b + c >= p.get() {
        return 0;
    }
    small_binom_mod(a + b + c, a, p) * small_binom_mod(b + c, b, p) % p.get()
}

/// The substitution `q ↦ σ(q)`, each symbol becoming a `p × p × p` block
/// with `σ(q)_{a,b,c} = q · binom(a+b+c, a) binom(b+c, b) mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sigma {
    p: Prime,
}

pub fn sigma(p: Prime) -> Sigma {
    Sigma { p }
}

impl Sigma {
    pub fn base(&self) -> Prime {
        self.p
    }

    pub fn entry(&self, q: u32, a: u32, b: u32, c: u32) -> u32 {
        q * sigma_factor(a, b, c, self.p) % self.p.get()
    }

    /// The block for `q`, flat index `a + p·b + p²·c`.
    pub fn image(&self, q: u32) -> Vec<u32> {
        let pv = self.p.get();
        let mut out = Vec::with_capacity((pv * pv * pv) as usize);
        for c in 0..pv {
            for b in 0..pv {
                for a in 0..pv {
                    out.push(self.entry(q, a, b, c));
                }
            }
        }
        out
    }
}

/// Largest number of cells [`iterate_sigma`] will allocate.
pub const CUBE_CELL_LIMIT: u128 = 1 << 27;

/// `σ^k(1)`: a cube of side `p^k`, flat index `x + side·y + side²·z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PyramidCube {
    pub p: Prime,
    pub k: u32,
    pub side: usize,
    pub cells: Vec<u16>,
}

impl PyramidCube {
    pub fn get(&self, x: usize, y: usize, z: usize) -> u16 {
        self.cells[x + self.side * (y + self.side * z)]
    }

    /// The `side × side` slice at height `z`, rows indexed by `y`.
    pub fn slice_z(&self, z: usize) -> Vec<Vec<u16>> {
        let s = self.side;
        (0..s)
            .map(|y| self.cells[s * (y + s * z)..s * (y + s * z) + s].to_vec())
            .collect()
    }

    /// The plane `x + y + z = n`, read off the diagonal slice of the cube.
    pub fn plane(&self, n: usize) -> Option<PyramidPlane> {
        if n >= self.side {
            return None;
        }
        let lines = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| u32::from(self.get(i, k - i, n - k)))
                    .collect()
            })
            .collect();
        Some(PyramidPlane {
            n: n as u64,
            p: self.p,
            lines,
        })
    }

    /// Whether this cube sits at the origin corner of `larger`.
    pub fn is_origin_prefix_of(&self, larger: &PyramidCube) -> bool {
        let s = self.side;
        larger.side >= s
            && (0..s)
                .all(|z| (0..s).all(|y| (0..s).all(|x| self.get(x, y, z) == larger.get(x, y, z))))
    }

    /// Compares every cell with the direct trinomial residue.
    pub fn check_direct(&self) -> Report {
        let mut report = Report::new(format!(
            "σ^{}(1) against direct residues, p={}",
            self.k, self.p
        ));
        let s = self.side;
        let failures: Vec<(usize, usize, usize, u16, u32)> = (0..s)
            .into_par_iter()
            .flat_map_iter(|z| {
                let mut bad = Vec::new();
                for y in 0..s {
                    for x in 0..s {
                        let direct = trinomial(x as u64, y as u64, z as u64, self.p);
                        let got = self.get(x, y, z);
                        if u32::from(got) != direct {
                            bad.push((x, y, z, got, direct));
                        }
                    }
                }
                bad.into_iter()
            })
            .collect();
        report.checked = self.cells.len() as u64;
        for (x, y, z, got, direct) in failures {
            report.failure_count += 1;
            if report.failures.len() < 8 {
                report
                    .failures
                    .push(format!("({x},{y},{z}): {got} vs {direct}"));
            }
        }
        report
    }
}

/// `σ^k(1)`, built level by level; each level fills its z-slabs in parallel.
pub fn iterate_sigma(p: Prime, k: u32) -> Result<PyramidCube> {
    let cells = u128::from(p.get()).checked_pow(3 * k).unwrap_or(u128::MAX);
    if cells > CUBE_CELL_LIMIT {
        return Err(Error::CubeTooLarge {
            cells,
            limit: CUBE_CELL_LIMIT,
        });
    }
    if p.get() > u32::from(u16::MAX) {
        return Err(Error::Domain(format!(
            "cube residues for p = {p} do not fit in 16 bits"
        )));
    }
    let sig = sigma(p);
    let pv = p.get() as usize;
    let images: Vec<Vec<u16>> = (0..p.get())
        .map(|q| sig.image(q).into_iter().map(|v| v as u16).collect())
        .collect();
    let mut cube = PyramidCube {
        p,
        k: 0,
        side: 1,
        cells: vec![1],
    };
    for level in 1..=k {
        let old = &cube;
        let side = old.side * pv;
        let mut cells = vec![0u16; side * side * side];
        cells
            .par_chunks_mut(side * side)
            .enumerate()
            .for_each(|(z, slab)| {
                let (oz, c) = (z / pv, z % pv);
                for y in 0..side {
                    let (oy, b) = (y / pv, y % pv);
                    for x in 0..side {
                        let (ox, a) = (x / pv, x % pv);
                        let q = old.get(ox, oy, oz);
                        slab[x + side * y] = images[q as usize][a + pv * (b + pv * c)];
                    }
                }
            });
        cube = PyramidCube {
            p,
            k: level,
            side,
            cells,
        };
    }
    Ok(cube)
}

/// The digit form of the carry lemma: for `0 ≤ x ≤ y < p` with `x + y ≥ p`,
/// the low digit `(x + y) mod p` of the sum is smaller than `x`, so
/// `binom((x+y) mod p, x) ≡ 0`.
pub fn carry_lemma_holds(p: Prime) -> bool {
    let pv = p.get();
    (0..pv).all(|y| (0..=y).filter(|x| x + y >= pv).all(|x| x > (x + y) % pv))
}

/// Pairs `(x, y)` in the same range for which `x > ⌊(x+y)/p⌋` fails.
pub fn carry_floor_counterexamples(p: Prime) -> Vec<(u32, u32)> {
    let pv = p.get();
    (0..pv)
        .flat_map(|y| (0..=y).map(move |x| (x, y)))
        .filter(|&(x, y)| x + y >= pv && x <= (x + y) / pv)
        .collect()
}
