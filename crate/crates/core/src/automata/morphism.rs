//! `p`-uniform morphisms and their fixed points.

use super::{Dfa, Direction};
use crate::basep::Prime;
use crate::error::{Error, Result};

/// A morphism sending each symbol `j < p` to a word of length `p`, together
/// with a coding of symbols to `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMorphism {
    base: Prime,
    images: Vec<Vec<u32>>,
    coding: Vec<u32>,
}

impl UniformMorphism {
    pub fn new(base: Prime, images: Vec<Vec<u32>>, coding: Vec<u32>) -> Result<Self> {
        let p = base.get() as usize;
        if images.len() != coding.len() || images.is_empty() {
            return Err(Error::Automaton("one image and one code per symbol".into()));
        }
        let symbols = images.len() as u32;
        for img in &images {
            if img.len() != p || img.iter().any(|&s| s >= symbols) {
                return Err(Error::Automaton(format!("bad image {img:?}")));
            }
        }
        if images[0][0] != 0 {
            return Err(Error::Automaton("image of 0 must begin with 0".into()));
        }
        if coding.iter().any(|&c| c > 1) {
            return Err(Error::Automaton("coding values must be 0 or 1".into()));
        }
        Ok(UniformMorphism {
            base,
            images,
            coding,
        })
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    pub fn image(&self, symbol: u32) -> &[u32] {
        &self.images[symbol as usize]
    }

    pub fn coding(&self) -> &[u32] {
        &self.coding
    }

    pub fn apply(&self, word: &[u32]) -> Vec<u32> {
        word.iter()
            .flat_map(|&s| self.image(s).iter().copied())
            .collect()
    }

    /// First `len` symbols of the fixed point starting with `0`.
    pub fn fixed_point_prefix(&self, len: usize) -> Vec<u32> {
        let mut word = vec![0];
        while word.len() < len {
            word = self.apply(&word);
        }
        word.truncate(len);
        word
    }

    /// The coding applied to [`Self::fixed_point_prefix`].
    pub fn coded_prefix(&self, len: usize) -> Vec<u32> {
        self.fixed_point_prefix(len)
            .into_iter()
            .map(|s| self.coding[s as usize])
            .collect()
    }

    /// The MSD-first automaton reading `rep_p(n)` whose state after the
    /// whole word is symbol `n` of the fixed point.
    pub fn to_dfa(&self) -> Dfa {
        let accepting: Vec<usize> = (0..self.coding.len())
            .filter(|&s| self.coding[s] == 1)
            .collect();
        Dfa::from_fn(
            self.base,
            1,
            Direction::MsdFirst,
            self.images.len(),
            0,
            &accepting,
            |s, l| Some(self.images[s][l[0] as usize] as usize),
        )
        .expect("images stay within the symbol set")
    }

    pub fn words(&self) -> Vec<String> {
        self.images
            .iter()
            .map(|img| img.iter().map(u32::to_string).collect())
            .collect()
    }
}

/// `φ(j) = (p-j)(p-j-1)⋯` read mod `p`, i.e. letter `d` of `φ(j)` is
/// `(p - j - d) mod p`, with coding `τ(0) = 1` and `τ(j) = 0` otherwise. Its
/// coded fixed point is the characteristic sequence of `E_p`.
pub fn cobham_morphism(p: Prime) -> UniformMorphism {
    let pv = p.get();
    let images = (0..pv)
        .map(|j| (0..pv).map(|d| (2 * pv - j - d) % pv).collect())
        .collect();
    let coding = (0..pv).map(|j| u32::from(j == 0)).collect();
    UniformMorphism::new(p, images, coding).expect("well-formed morphism")
}

/// Reads a morphism off a complete unary MSD-first machine whose initial
/// state loops on `0`: symbol `s` maps to the row of successors of `s`, and
/// the coding marks accepting states.
pub fn morphism_from_dfa(d: &Dfa) -> Result<UniformMorphism> {
    if d.arity() != 1 || d.direction() != Direction::MsdFirst {
        return Err(Error::Automaton("need a unary MSD-first machine".into()));
    }
    let d = d.minimize();
    let n = d.state_count();
    let mut images = Vec::with_capacity(n);
    for s in 0..n {
        let row: Option<Vec<u32>> = (0..d.symbol_count())
            .map(|sym| d.next(s, sym).map(|t| t as u32))
            .collect();
        images.push(row.ok_or_else(|| Error::Automaton("machine is not complete".into()))?);
    }
    let coding = (0..n).map(|s| u32::from(d.is_accepting(s))).collect();
    UniformMorphism::new(d.base(), images, coding)
}
