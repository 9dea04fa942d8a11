//! Linear representations with exact rational entries.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::basep::{digits_of, Prime};
use crate::error::{Error, Result};

/// `f(m) = λ · μ(m_0) μ(m_1) ⋯ μ(m_k) · ν`, digits taken least significant
/// first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRep {
    base: Prime,
    lambda: Vec<BigRational>,
    mats: Vec<Vec<Vec<BigRational>>>,
    nu: Vec<BigRational>,
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn row(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| q(x, 1)).collect()
}

impl LinearRep {
    pub fn new(
        base: Prime,
        lambda: Vec<BigRational>,
        mats: Vec<Vec<Vec<BigRational>>>,
        nu: Vec<BigRational>,
    ) -> Result<Self> {
        let dim = lambda.len();
        if dim == 0 || nu.len() != dim {
            return Err(Error::Automaton(
                "λ and ν must share a positive dimension".into(),
            ));
        }
        if mats.len() != base.get() as usize {
            return Err(Error::Automaton(format!(
                "need one matrix per digit, got {}",
                mats.len()
            )));
        }
        if mats
            .iter()
            .any(|m| m.len() != dim || m.iter().any(|r| r.len() != dim))
        {
            return Err(Error::Automaton(format!("matrices must be {dim}×{dim}")));
        }
        Ok(LinearRep {
            base,
            lambda,
            mats,
            nu,
        })
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[BigRational] {
        &self.lambda
    }

    pub fn matrix(&self, digit: u32) -> &[Vec<BigRational>] {
        &self.mats[digit as usize]
    }

    pub fn nu(&self) -> &[BigRational] {
        &self.nu
    }

    /// The exact value on a digit string given least significant first.
    pub fn eval_digits(&self, lsd_digits: &[u32]) -> BigRational {
        let dim = self.dim();
        let mut v = self.lambda.clone();
        for &d in lsd_digits {
            let m = &self.mats[d as usize];
            v = (0..dim)
                .map(|j| (0..dim).fold(BigRational::zero(), |acc, i| acc + &v[i] * &m[i][j]))
                .collect();
        }
        v.iter()
            .zip(&self.nu)
            .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// `f(m)`; fails if the exact value is not an integer.
    pub fn eval(&self, m: &BigUint) -> Result<BigInt> {
        let value = self.eval_digits(&digits_of(m, self.base));
        if value.is_integer() {
            Ok(value.to_integer())
        } else {
            Err(Error::NonIntegral(format!("value {value} at m = {m}")))
        }
    }

    /// `f(m)` with integer arithmetic only: each matrix is cleared of
    /// denominators by its own scale factor, and the product of the factors
    /// used is divided out at the end.
    pub fn eval_scaled(&self, m: &BigUint) -> Result<BigInt> {
        let dim = self.dim();
        let lcm_of = |xs: &mut dyn Iterator<Item = &BigRational>| {
            xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
        };
        let scale_vec = |v: &[BigRational], s: &BigInt| -> Vec<BigInt> {
            v.iter()
                .map(|x| (x * BigRational::from(s.clone())).to_integer())
                .collect()
        };
        let mut denom = BigInt::one();
        let l_scale = lcm_of(&mut self.lambda.iter());
        let n_scale = lcm_of(&mut self.nu.iter());
        denom *= &l_scale * &n_scale;
        let mut v = scale_vec(&self.lambda, &l_scale);
        let scaled: Vec<(BigInt, Vec<Vec<BigInt>>)> = self
            .mats
            .iter()
            .map(|mat| {
                let s = lcm_of(&mut mat.iter().flatten());
                let ints = mat.iter().map(|r| scale_vec(r, &s)).collect();
                (s, ints)
            })
            .collect();
        for d in digits_of(m, self.base) {
            let (s, mat) = &scaled[d as usize];
            denom *= s;
            v = (0..dim)
                .map(|j| (0..dim).fold(BigInt::zero(), |acc, i| acc + &v[i] * &mat[i][j]))
                .collect();
        }
        let nu = scale_vec(&self.nu, &n_scale);
        let num = v
            .iter()
            .zip(&nu)
            .fold(BigInt::zero(), |acc, (a, b)| acc + a * b);
        let (quot, rem) = num.div_rem(&denom);
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NonIntegral(format!("{num} / {denom} at m = {m}")))
        }
    }
}

/// A three-dimensional representation of `N(m) = m ⊕ 2m` in base 2.
pub fn linear_rep_n() -> LinearRep {
    let lambda = row(&[1, 0, 0]);
    let nu = row(&[0, 3, 3]);
    let mu0 = vec![row(&[2, 0, 0]), row(&[0, 0, 1]), row(&[4, 0, 1])];
    let mu1 = vec![
        row(&[0, 1, 0]),
        vec![q(4, 3), q(2, 1), q(-1, 3)],
        row(&[-4, 4, 1]),
    ];
    LinearRep::new(Prime::TWO, lambda, vec![mu0, mu1], nu).expect("consistent dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nim;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn anchors() {
        let r = linear_rep_n();
        assert_eq!(r.eval(&big(4)).unwrap(), BigInt::from(12));
        assert_eq!(r.eval_digits(&[0, 0, 1]), q(12, 1));
        assert_eq!(r.eval(&big(0)).unwrap(), BigInt::zero());
        assert_eq!(r.eval(&big(17)).unwrap(), BigInt::from(51));
    }

    #[test]
    fn agrees_with_step_map() {
        let r = linear_rep_n();
        for m in 0..10_000u64 {
            let expect = BigInt::from(nim::step_u64(m, Prime::TWO));
            assert_eq!(r.eval(&big(m)).unwrap(), expect);
            assert_eq!(r.eval_scaled(&big(m)).unwrap(), expect);
        }
    }

    #[test]
    fn intermediate_values_can_be_fractional() {
        let r = linear_rep_n();
        let mut v = r.lambda().to_vec();
        let m1 = r.matrix(1);
        v = (0..3)
            .map(|j| (0..3).fold(BigRational::zero(), |acc, i| acc + &v[i] * &m1[i][j]))
            .collect();
        v = (0..3)
            .map(|j| (0..3).fold(BigRational::zero(), |acc, i| acc + &v[i] * &m1[i][j]))
            .collect();
        assert!(v.iter().any(|x| !x.is_integer()));
    }

    #[test]
    fn corrupted_representation_is_caught() {
        let r = linear_rep_n();
        let mut mats = vec![r.matrix(0).to_vec(), r.matrix(1).to_vec()];
        mats[1][1][2] = q(1, 3);
        let bad = LinearRep::new(Prime::TWO, r.lambda().to_vec(), mats, r.nu().to_vec()).unwrap();
        let failures = (0..64u64).filter(|&m| bad.eval(&big(m)).is_err()).count();
        assert!(failures > 0);
        assert!((0..64u64).any(|m| bad.eval_scaled(&big(m)).is_err()));
    }

    #[test]
    fn shape_validation() {
        let r = linear_rep_n();
        assert!(LinearRep::new(Prime::TWO, vec![], vec![], vec![]).is_err());
        assert!(LinearRep::new(
            Prime::THREE,
            r.lambda().to_vec(),
            vec![r.matrix(0).to_vec()],
            r.nu().to_vec()
        )
        .is_err());
    }
}
