//! Joins of synchronized relations followed by existential projection.

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::{determinize, symbol_count, Dfa, Direction};
use crate::error::{Error, Result};

/// Runs several machines in lockstep over a shared tuple of `vars` tracks;
/// machine `i` reads the tracks listed in `tapes[i].1`. The result reads the
/// tracks in `keep` and accepts a word when some assignment of the other
/// tracks is accepted by every machine.
///
/// Hidden tracks may be longer than the kept ones, so the projection is
/// closed under zero padding: leading zero letters for MSD-first machines,
/// trailing ones for LSD-first machines.
pub fn join(tapes: &[(&Dfa, &[usize])], vars: usize, keep: &[usize]) -> Result<Dfa> {
    let (first, _) = tapes
        .first()
        .ok_or_else(|| Error::Automaton("join needs at least one machine".into()))?;
    let (base, direction) = (first.base(), first.direction());
    for (d, tracks) in tapes {
        if d.base() != base || d.direction() != direction {
            return Err(Error::Automaton(
                "joined machines differ in base or direction".into(),
            ));
        }
        if tracks.len() != d.arity() || tracks.iter().any(|&t| t >= vars) {
            return Err(Error::Automaton(format!(
                "machine of arity {} given tracks {tracks:?} of {vars}",
                d.arity()
            )));
        }
    }
    if keep.is_empty() || keep.iter().any(|&t| t >= vars) {
        return Err(Error::Automaton(format!("kept tracks {keep:?} of {vars}")));
    }
    let hidden: Vec<usize> = (0..vars).filter(|t| !keep.contains(t)).collect();
    let p = base.get() as usize;
    let hidden_count = p.pow(hidden.len() as u32);
    let out_symbols = symbol_count(base, keep.len())?;

    // letter on every track from a kept symbol and a hidden assignment
    let letter = |kept_sym: usize, hidden_sym: usize| -> Vec<u32> {
        let mut full = vec![0u32; vars];
        let mut k = kept_sym;
        for &t in keep.iter().rev() {
            full[t] = (k % p) as u32;
            k /= p;
        }
        let mut h = hidden_sym;
        for &t in hidden.iter().rev() {
            full[t] = (h % p) as u32;
            h /= p;
        }
        full
    };
    let move_all = |state: &[usize], full: &[u32]| -> Option<Vec<usize>> {
        tapes
            .iter()
            .zip(state)
            .map(|((d, tracks), &s)| {
                let l: Vec<u32> = tracks.iter().map(|&t| full[t]).collect();
                d.step(s, &l)
            })
            .collect()
    };
    let succ = |set: &BTreeSet<Vec<usize>>, sym: usize| -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for h in 0..hidden_count {
            let full = letter(sym, h);
            for s in set {
                if let Some(t) = move_all(s, &full) {
                    out.insert(t);
                }
            }
        }
        out
    };
    let zero_closure = |seed: BTreeSet<Vec<usize>>| -> BTreeSet<Vec<usize>> {
        let mut seen = seed.clone();
        let mut queue: VecDeque<Vec<usize>> = seed.into_iter().collect();
        while let Some(s) = queue.pop_front() {
            for h in 0..hidden_count {
                if let Some(t) = move_all(&s, &letter(0, h)) {
                    if seen.insert(t.clone()) {
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    };
    let accepting = |s: &Vec<usize>| tapes.iter().zip(s).all(|((d, _), &q)| d.is_accepting(q));

    let start: BTreeSet<Vec<usize>> =
        BTreeSet::from([tapes.iter().map(|(d, _)| d.initial()).collect()]);
    let dfa = match direction {
        Direction::MsdFirst => determinize(
            base,
            keep.len(),
            direction,
            zero_closure(start),
            succ,
            |set| set.iter().any(accepting),
        ),
        Direction::LsdFirst => determinize(base, keep.len(), direction, start, succ, |set| {
            zero_closure(set.clone()).iter().any(accepting)
        }),
    };
    debug_assert_eq!(dfa.symbol_count(), out_symbols);
    Ok(dfa.minimize())
}

/// Whether a binary relation machine relates each `x` to at most one `y`.
///
/// Searches the self-product for a word pair `(x, y₁)`, `(x, y₂)` both
/// accepted with `y₁ ≠ y₂`; the search is exhaustive over the finite product.
pub fn is_functional(r: &Dfa) -> bool {
    if r.arity() != 2 {
        return false;
    }
    let p = r.base().get();
    let start = (r.initial(), r.initial(), false);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b, differ)) = queue.pop_front() {
        if differ && r.is_accepting(a) && r.is_accepting(b) {
            return false;
        }
        for x in 0..p {
            for y1 in 0..p {
                let Some(a2) = r.step(a, &[x, y1]) else {
                    continue;
                };
                for y2 in 0..p {
                    let Some(b2) = r.step(b, &[x, y2]) else {
                        continue;
                    };
                    let next = (a2, b2, differ || y1 != y2);
                    if seen.insert(next) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    true
}

fn align(d: &Dfa, direction: Direction) -> Dfa {
    if d.direction() == direction {
        d.clone()
    } else {
        d.reversed().minimize()
    }
}

fn require_functional(r: &Dfa) -> Result<()> {
    if is_functional(r) {
        Ok(())
    } else {
        Err(Error::Automaton(
            "composition needs the graph of a function".into(),
        ))
    }
}

/// `{(x, z) | ∃y. (x, y) ∈ r1 ∧ (y, z) ∈ r2}`, read in `r2`'s direction.
pub fn compose_synchronized(r1: &Dfa, r2: &Dfa) -> Result<Dfa> {
    if r1.arity() != 2 || r2.arity() != 2 {
        return Err(Error::Automaton(
            "composition needs two binary relations".into(),
        ));
    }
    if r1.base() != r2.base() {
        return Err(Error::Automaton("composition needs a common base".into()));
    }
    require_functional(r1)?;
    require_functional(r2)?;
    let r1 = align(r1, r2.direction());
    join(&[(&r1, &[0, 1]), (r2, &[1, 2])], 3, &[0, 2])
}

/// `{(x, z) | ∃y. (x, y) ∈ graph ∧ (x, y, z) ∈ triple}`, read in the
/// triple's direction. With the graph of `x ↦ p·x` and the Nim-sum triple
/// this is the relation `z = N_p(x)`.
pub fn compose_with_triple(graph: &Dfa, triple: &Dfa) -> Result<Dfa> {
    if graph.arity() != 2 || triple.arity() != 3 {
        return Err(Error::Automaton(
            "expected a binary and a ternary relation".into(),
        ));
    }
    if graph.base() != triple.base() {
        return Err(Error::Automaton("composition needs a common base".into()));
    }
    require_functional(graph)?;
    let graph = align(graph, triple.direction());
    join(&[(&graph, &[0, 1]), (triple, &[0, 1, 2])], 3, &[0, 2])
}
