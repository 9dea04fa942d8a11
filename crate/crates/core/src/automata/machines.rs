//! The concrete machines: the pair acceptor for `(m, N_p(m))`, affine
//! relations, the Nim-sum triple relation and the alternating-sum acceptor.

use num_bigint::BigUint;

use super::{Dfa, Direction, TupleWord};
use crate::basep::{digits_of, Prime};

/// MSD-first encoding of a tuple of integers: each representation is
/// left-padded with zeros to the longest length. All zeros give the empty word.
pub fn pad_tuple(values: &[&BigUint], p: Prime) -> TupleWord {
    let reps: Vec<Vec<u32>> = values.iter().map(|v| digits_of(v, p)).collect();
    let len = reps.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .rev()
        .map(|i| {
            reps.iter()
                .map(|r| r.get(i).copied().unwrap_or(0))
                .collect()
        })
        .collect()
}

pub fn pad_pair(m: &BigUint, n: &BigUint, p: Prime) -> TupleWord {
    pad_tuple(&[m, n], p)
}

/// Single-component word for `n` in the given reading direction.
pub fn unary_word(n: &BigUint, p: Prime, direction: Direction) -> TupleWord {
    let mut w: TupleWord = digits_of(n, p).into_iter().map(|d| vec![d]).collect();
    if direction == Direction::MsdFirst {
        w.reverse();
    }
    w
}

/// Acceptor of `pad(m, N_p(m))`, read MSD-first.
///
/// With `e_i = m_i + m_{i-1}`, the state holds the `m`-digit the next letter
/// must carry: a letter `(a, b)` is allowed from state `s` only if `a = s`,
/// and it leads to `b - a mod p`, which is the digit expected below it.
/// Initial and accepting state `0`. For `p = 2` this is the two-state
/// machine `0 -0/0-> 0`, `0 -0/1-> 1`, `1 -1/0-> 1`, `1 -1/1-> 0`.
pub fn pair_dfa_n(p: Prime) -> Dfa {
    let pv = p.get();
    Dfa::from_fn(p, 2, Direction::MsdFirst, pv as usize, 0, &[0], |s, l| {
        (l[0] == s as u32).then(|| ((l[1] + pv - l[0]) % pv) as usize)
    })
    .expect("well-formed pair machine")
}

/// Carry automaton for `{(m, a·m + b)}`, read LSD-first.
///
/// The state is the pending carry `c`, starting at `b`; a letter `(x, y)` is
/// allowed when `y = (a·x + c) mod p` and leads to carry `⌊(a·x + c)/p⌋`.
/// Carries never exceed `max(a, b)`.
pub fn affine_dfa(a: u32, b: u32, p: Prime) -> Dfa {
    let pv = u64::from(p.get());
    let states = a.max(b) as usize + 1;
    Dfa::from_fn(
        p,
        2,
        Direction::LsdFirst,
        states,
        b as usize,
        &[0],
        |c, l| {
            let total = u64::from(a) * u64::from(l[0]) + c as u64;
            (u64::from(l[1]) == total % pv).then_some((total / pv) as usize)
        },
    )
    .expect("well-formed affine machine")
}

/// One state, looping on letters `(a, b, a + b mod p)`.
pub fn nim_triple_dfa(p: Prime) -> Dfa {
    let pv = p.get();
    Dfa::from_fn(p, 3, Direction::MsdFirst, 1, 0, &[0], |_, l| {
        (l[2] == (l[0] + l[1]) % pv).then_some(0)
    })
    .expect("well-formed triple machine")
}

/// `2p` states `(i, +)` (index `i`) and `(i, -)` (index `p + i`); reading `d`
/// goes `(i, +) → (i + d, -)` and `(i, -) → (i - d, +)`. Accepts the MSD-first
/// representations whose alternating digit sum is `0 mod p`.
pub fn altsum_dfa(p: Prime) -> Dfa {
    let pv = p.get() as usize;
    Dfa::from_fn(p, 1, Direction::MsdFirst, 2 * pv, 0, &[0, pv], |s, l| {
        let d = l[0] as usize;
        Some(if s < pv {
            pv + (s + d) % pv
        } else {
            (s - pv + pv - d) % pv
        })
    })
    .expect("well-formed alternating-sum machine")
}
