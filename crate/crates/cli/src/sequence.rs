//! Named integer sequences and their term generators.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

use pascalmod::{nim, pascal, poly, pyramid, Prime};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqName {
    /// `t_{p,n}`
    T,
    /// `t'_{p,n}`
    TPrime,
    /// `N_p(m)`
    N,
    /// `α_p(m)`
    Alpha,
    Evil,
    /// `E_p` in increasing order
    Ep,
    /// Iterates `N_p^j(i)` for `j ≥ 1`
    Sub,
    /// `f_{2,n}`, products of distinct Fermat numbers
    FermatProduct,
    /// The Fermat numbers `F_j`
    Fermat,
    /// `P_n(x)` with `P_n` the row polynomial mod `p`
    PolyEval,
    /// `t_{p,n,k}` read row by row, `0 ≤ k ≤ n`
    TPyramid,
}

impl SeqName {
    pub const ALL: [SeqName; 11] = [
        SeqName::T,
        SeqName::TPrime,
        SeqName::N,
        SeqName::Alpha,
        SeqName::Evil,
        SeqName::Ep,
        SeqName::Sub,
        SeqName::FermatProduct,
        SeqName::Fermat,
        SeqName::PolyEval,
        SeqName::TPyramid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SeqName::T => "t",
            SeqName::TPrime => "tprime",
            SeqName::N => "N",
            SeqName::Alpha => "alpha",
            SeqName::Evil => "evil",
            SeqName::Ep => "Ep",
            SeqName::Sub => "sub",
            SeqName::FermatProduct => "fermat-product",
            SeqName::Fermat => "fermat",
            SeqName::PolyEval => "poly-eval",
            SeqName::TPyramid => "t-pyramid",
        }
    }

    /// Index of the first term.
    pub fn default_offset(self) -> i64 {
        match self {
            SeqName::Sub => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for SeqName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeqName {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        SeqName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = SeqName::ALL.iter().map(|n| n.as_str()).collect();
                CliError::Usage(format!(
                    "unknown sequence {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDescriptor {
    pub name: SeqName,
    pub p: Prime,
    /// Chain root for `sub`.
    pub root: u64,
    /// Evaluation point for `poly-eval`; `None` means `p`.
    pub x: Option<i64>,
    pub offset: i64,
}

impl SequenceDescriptor {
    pub fn new(name: SeqName, p: Prime) -> Self {
        SequenceDescriptor {
            name,
            p,
            root: 1,
            x: None,
            offset: name.default_offset(),
        }
    }

    pub fn with_root(mut self, root: u64) -> Self {
        self.root = root;
        self
    }

    pub fn with_x(mut self, x: i64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_offset(mut self, offset: i64) -> Self {
        self.offset = offset;
        self
    }
}

/// The first `count` terms of `desc`.
pub fn emit_sequence(desc: &SequenceDescriptor, count: usize) -> CliResult<Vec<BigInt>> {
    if count == 0 {
        return Err(CliError::Usage("count must be at least 1".into()));
    }
    let p = desc.p;
    let nat = |v: BigUint| BigInt::from(v);
    let idx = 0..count as u64;
    let out = match desc.name {
        SeqName::T => idx.map(|n| nat(pascal::t(n, p))).collect(),
        SeqName::TPrime => idx.map(|n| nat(pascal::t_prime(n, p))).collect(),
        SeqName::N => idx.map(|m| nat(nim::step(&BigUint::from(m), p))).collect(),
        SeqName::Alpha => idx.map(|m| nat(nim::gray(&BigUint::from(m), p))).collect(),
        SeqName::Evil => idx.map(|m| nat(nim::evil_nth(&BigUint::from(m)))).collect(),
        SeqName::Ep => idx
            .map(|m| nat(nim::image_nth(&BigUint::from(m), p)))
            .collect(),
        SeqName::Sub => {
            let chain = nim::sub_chain(&BigUint::from(desc.root), count, p)?;
            chain.iterates.into_iter().map(nat).collect()
        }
        SeqName::FermatProduct => idx.map(|n| nat(pascal::fermat_product(n))).collect(),
        SeqName::Fermat => {
            if count > 32 {
                return Err(CliError::Usage("fermat is limited to 32 terms".into()));
            }
            (0..count as u32)
                .map(|j| nat(pascal::fermat_number(j)))
                .collect()
        }
        SeqName::PolyEval => {
            let x = BigInt::from(desc.x.unwrap_or(i64::from(p.get())));
            idx.map(|n| poly::eval_at(&poly::p_poly(n, p), &x))
                .collect()
        }
        SeqName::TPyramid => {
            let mut out = Vec::with_capacity(count);
            'planes: for n in 0.. {
                for k in 0..=n {
                    if out.len() == count {
                        break 'planes;
                    }
                    out.push(nat(pyramid::t_pyramid(n, k, p)?));
                }
            }
            out
        }
    };
    Ok(out)
}

/// The sequence each cross-referenced OEIS entry should match.
pub fn oeis_binding(id: &str) -> Option<SequenceDescriptor> {
    let d = match id {
        "A001317" => SequenceDescriptor::new(SeqName::T, Prime::TWO),
        "A001969" => SequenceDescriptor::new(SeqName::Evil, Prime::TWO),
        "A003188" => SequenceDescriptor::new(SeqName::Alpha, Prime::TWO),
        "A019434" => SequenceDescriptor::new(SeqName::Fermat, Prime::TWO).with_offset(1),
        "A048724" => SequenceDescriptor::new(SeqName::N, Prime::TWO),
        "A071770" => SequenceDescriptor::new(SeqName::Alpha, Prime::THREE),
        "A173019" => SequenceDescriptor::new(SeqName::T, Prime::THREE),
        "A242399" => SequenceDescriptor::new(SeqName::N, Prime::THREE),
        _ => return None,
    };
    Some(d)
}

/// Upper bound on the terms of an entry that the binding can reproduce.
/// Only the five known Fermat primes are listed under A019434.
pub fn oeis_term_cap(id: &str) -> Option<usize> {
    (id == "A019434").then_some(5)
}

pub const CITED_IDS: [&str; 8] = [
    "A001317", "A001969", "A003188", "A019434", "A048724", "A071770", "A173019", "A242399",
];
