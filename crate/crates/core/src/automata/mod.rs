//! Finite automata over tuples of base-`p` digits.
//!
//! A [`Dfa`] reads words whose letters are `d`-tuples of digits, in a fixed
//! direction (most or least significant digit first). Transitions may be
//! missing; a missing transition goes to an implicit rejecting sink that is
//! not counted among the states.

mod compose;
mod linear;
mod machines;
mod morphism;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::basep::Prime;
use crate::error::{Error, Result};

pub use compose::{compose_synchronized, compose_with_triple, is_functional, join};
pub use linear::{linear_rep_n, LinearRep};
pub use machines::{
    affine_dfa, altsum_dfa, nim_triple_dfa, pad_pair, pad_tuple, pair_dfa_n, unary_word,
};
pub use morphism::{cobham_morphism, morphism_from_dfa, UniformMorphism};

/// Order in which a machine consumes digit positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    MsdFirst,
    LsdFirst,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::MsdFirst => Direction::LsdFirst,
            Direction::LsdFirst => Direction::MsdFirst,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Direction::MsdFirst => "msd-first",
            Direction::LsdFirst => "lsd-first",
        }
    }
}

/// A word of digit tuples; every letter has the machine's arity.
pub type TupleWord = Vec<Vec<u32>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    base: Prime,
    arity: usize,
    direction: Direction,
    initial: usize,
    accepting: Vec<bool>,
    /// `delta[state * symbols + symbol]`
    delta: Vec<Option<usize>>,
}

impl Dfa {
    pub fn new(
        base: Prime,
        arity: usize,
        direction: Direction,
        initial: usize,
        accepting: Vec<bool>,
        delta: Vec<Option<usize>>,
    ) -> Result<Dfa> {
        let states = accepting.len();
        let symbols = symbol_count(base, arity)?;
        if states == 0 || initial >= states {
            return Err(Error::Automaton(format!(
                "initial state {initial} of {states}"
            )));
        }
        if delta.len() != states * symbols {
            return Err(Error::Automaton(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                states * symbols
            )));
        }
        if let Some(bad) = delta.iter().flatten().find(|&&t| t >= states) {
            return Err(Error::Automaton(format!(
                "transition to missing state {bad}"
            )));
        }
        Ok(Dfa {
            base,
            arity,
            direction,
            initial,
            accepting,
            delta,
        })
    }

    /// Builds a machine from a transition function on digit tuples.
    pub fn from_fn<F>(
        base: Prime,
        arity: usize,
        direction: Direction,
        states: usize,
        initial: usize,
        accepting: &[usize],
        f: F,
    ) -> Result<Dfa>
    where
        F: Fn(usize, &[u32]) -> Option<usize>,
    {
        let symbols = symbol_count(base, arity)?;
        let mut acc = vec![false; states];
        for &s in accepting {
            *acc.get_mut(s)
                .ok_or_else(|| Error::Automaton(format!("accepting state {s} of {states}")))? =
                true;
        }
        let mut delta = Vec::with_capacity(states * symbols);
        for s in 0..states {
            for sym in 0..symbols {
                delta.push(f(s, &decode(sym, base, arity)));
            }
        }
        Dfa::new(base, arity, direction, initial, acc, delta)
    }

    /// The machine accepting no word.
    pub fn empty(base: Prime, arity: usize, direction: Direction) -> Dfa {
        let symbols = symbol_count(base, arity).expect("alphabet size");
        Dfa {
            base,
            arity,
            direction,
            initial: 0,
            accepting: vec![false],
            delta: vec![None; symbols],
        }
    }

    pub fn base(&self) -> Prime {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.state_count())
            .filter(|&s| self.accepting[s])
            .collect()
    }

    pub fn symbol_count(&self) -> usize {
        self.delta.len() / self.state_count()
    }

    /// Index of a letter; the first component is the most significant.
    pub fn encode_symbol(&self, letter: &[u32]) -> Result<usize> {
        if letter.len() != self.arity {
            return Err(Error::Automaton(format!(
                "letter of arity {} for a machine of arity {}",
                letter.len(),
                self.arity
            )));
        }
        let p = self.base.get();
        letter.iter().try_fold(0usize, |acc, &d| {
            if d >= p {
                Err(Error::DigitOutOfRange { digit: d, base: p })
            } else {
                Ok(acc * p as usize + d as usize)
            }
        })
    }

    pub fn decode_symbol(&self, sym: usize) -> Vec<u32> {
        decode(sym, self.base, self.arity)
    }

    pub fn next(&self, state: usize, sym: usize) -> Option<usize> {
        self.delta[state * self.symbol_count() + sym]
    }

    pub fn step(&self, state: usize, letter: &[u32]) -> Option<usize> {
        self.encode_symbol(letter)
            .ok()
            .and_then(|sym| self.next(state, sym))
    }

    /// Final state after reading `word`, or `None` if the run falls into the sink.
    pub fn run(&self, word: &[Vec<u32>]) -> Option<usize> {
        word.iter()
            .try_fold(self.initial, |s, letter| self.step(s, letter))
    }

    /// States visited, starting with the initial one; stops at the sink.
    pub fn trace(&self, word: &[Vec<u32>]) -> Vec<usize> {
        let mut out = vec![self.initial];
        let mut s = self.initial;
        for letter in word {
            match self.step(s, letter) {
                Some(t) => {
                    out.push(t);
                    s = t;
                }
                None => break,
            }
        }
        out
    }

    pub fn accepts(&self, word: &[Vec<u32>]) -> bool {
        self.run(word).is_some_and(|s| self.accepting[s])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(s) = queue.pop_front() {
            for sym in 0..self.symbol_count() {
                if let Some(t) = self.next(s, sym) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for s in 0..n {
            for sym in 0..self.symbol_count() {
                if let Some(t) = self.next(s, sym) {
                    rev[t].push(s);
                }
            }
        }
        let mut live = self.accepting.clone();
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| live[s]).collect();
        while let Some(t) = queue.pop_front() {
            for &s in &rev[t] {
                if !live[s] {
                    live[s] = true;
                    queue.push_back(s);
                }
            }
        }
        live
    }

    /// Drops unreachable states and states from which no accepting state is
    /// reachable; transitions into dropped states go to the sink.
    pub fn trim(&self) -> Dfa {
        let reach = self.reachable();
        let live = self.coreachable();
        if !live[self.initial] {
            return Dfa::empty(self.base, self.arity, self.direction);
        }
        let keep: Vec<usize> = (0..self.state_count())
            .filter(|&s| reach[s] && live[s])
            .collect();
        let mut index = vec![None; self.state_count()];
        for (i, &s) in keep.iter().enumerate() {
            index[s] = Some(i);
        }
        let mut delta = Vec::with_capacity(keep.len() * self.symbol_count());
        for &s in &keep {
            for sym in 0..self.symbol_count() {
                delta.push(self.next(s, sym).and_then(|t| index[t]));
            }
        }
        Dfa {
            base: self.base,
            arity: self.arity,
            direction: self.direction,
            initial: index[self.initial].expect("initial kept"),
            accepting: keep.iter().map(|&s| self.accepting[s]).collect(),
            delta,
        }
    }

    /// Minimal machine for the same language, by Moore partition refinement
    /// on the trimmed machine. States are renumbered in breadth-first order
    /// from the initial state, so equal languages give identical machines.
    pub fn minimize(&self) -> Dfa {
        let trimmed = self.trim();
        let n = trimmed.state_count();
        let symbols = trimmed.symbol_count();
        let mut class: Vec<usize> = trimmed.accepting.iter().map(|&a| usize::from(a)).collect();
        let mut classes = 0;
        loop {
            let mut ids: HashMap<(usize, Vec<Option<usize>>), usize> = HashMap::new();
            let mut next_class = vec![0; n];
            for s in 0..n {
                let sig: Vec<Option<usize>> = (0..symbols)
                    .map(|sym| trimmed.next(s, sym).map(|t| class[t]))
                    .collect();
                let fresh = ids.len();
                next_class[s] = *ids.entry((class[s], sig)).or_insert(fresh);
            }
            let count = ids.len();
            class = next_class;
            if count == classes {
                break;
            }
            classes = count;
        }
        let mut rep = vec![usize::MAX; classes];
        for s in (0..n).rev() {
            rep[class[s]] = s;
        }
        let quotient = Dfa {
            base: trimmed.base,
            arity: trimmed.arity,
            direction: trimmed.direction,
            initial: class[trimmed.initial],
            accepting: rep.iter().map(|&s| trimmed.accepting[s]).collect(),
            delta: rep
                .iter()
                .flat_map(|&s| (0..symbols).map(move |sym| (s, sym)))
                .map(|(s, sym)| trimmed.next(s, sym).map(|t| class[t]))
                .collect(),
        };
        quotient.renumber_bfs()
    }

    fn renumber_bfs(&self) -> Dfa {
        let n = self.state_count();
        let mut order = Vec::with_capacity(n);
        let mut index = vec![None; n];
        index[self.initial] = Some(0);
        order.push(self.initial);
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            head += 1;
            for sym in 0..self.symbol_count() {
                if let Some(t) = self.next(s, sym) {
                    if index[t].is_none() {
                        index[t] = Some(order.len());
                        order.push(t);
                    }
                }
            }
        }
        Dfa {
            base: self.base,
            arity: self.arity,
            direction: self.direction,
            initial: 0,
            accepting: order.iter().map(|&s| self.accepting[s]).collect(),
            delta: order
                .iter()
                .flat_map(|&s| (0..self.symbol_count()).map(move |sym| (s, sym)))
                .map(|(s, sym)| self.next(s, sym).and_then(|t| index[t]))
                .collect(),
        }
    }

    /// True when every state is reachable and co-reachable and no two states
    /// are Nerode-equivalent, checked by the pairwise table-filling method.
    pub fn is_minimal(&self) -> bool {
        let n = self.state_count();
        let reach = self.reachable();
        let live = self.coreachable();
        let empty_language = !live[self.initial];
        if empty_language {
            return n == 1 && self.delta.iter().all(Option::is_none);
        }
        if reach.iter().chain(&live).any(|&b| !b) {
            return false;
        }
        // index n stands for the sink
        let mut dist = vec![vec![false; n + 1]; n + 1];
        for i in 0..=n {
            for j in 0..=n {
                let ai = i < n && self.accepting[i];
                let aj = j < n && self.accepting[j];
                dist[i][j] = ai != aj;
            }
        }
        let target = |s: usize, sym: usize| {
            if s == n {
                n
            } else {
                self.next(s, sym).unwrap_or(n)
            }
        };
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..=n {
                for j in (i + 1)..=n {
                    if dist[i][j] {
                        continue;
                    }
                    if (0..self.symbol_count()).any(|sym| {
                        let (a, b) = (target(i, sym), target(j, sym));
                        dist[a][b]
                    }) {
                        dist[i][j] = true;
                        dist[j][i] = true;
                        changed = true;
                    }
                }
            }
        }
        (0..=n).all(|i| ((i + 1)..=n).all(|j| dist[i][j]))
    }

    fn compatible(&self, other: &Dfa) -> bool {
        self.base == other.base && self.arity == other.arity && self.direction == other.direction
    }

    /// Language equality, by a breadth-first search of the product machine.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        if !self.compatible(other) {
            return false;
        }
        let acc = |d: &Dfa, s: Option<usize>| s.is_some_and(|s| d.accepting[s]);
        let start = (Some(self.initial), Some(other.initial));
        let mut seen = std::collections::HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some((a, b)) = queue.pop_front() {
            if acc(self, a) != acc(other, b) {
                return false;
            }
            for sym in 0..self.symbol_count() {
                let pair = (
                    a.and_then(|s| self.next(s, sym)),
                    b.and_then(|s| other.next(s, sym)),
                );
                if pair != (None, None) && seen.insert(pair) {
                    queue.push_back(pair);
                }
            }
        }
        true
    }

    /// Whether some bijection of states carries one machine onto the other.
    /// Both machines must have every state reachable.
    pub fn isomorphic(&self, other: &Dfa) -> bool {
        if !self.compatible(other) || self.state_count() != other.state_count() {
            return false;
        }
        let n = self.state_count();
        let mut map = vec![None; n];
        let mut used = vec![false; n];
        map[self.initial] = Some(other.initial);
        used[other.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        let mut visited = 1;
        while let Some(s) = queue.pop_front() {
            let t = map[s].expect("mapped before queued");
            if self.accepting[s] != other.accepting[t] {
                return false;
            }
            for sym in 0..self.symbol_count() {
                match (self.next(s, sym), other.next(t, sym)) {
                    (None, None) => {}
                    (Some(a), Some(b)) => match map[a] {
                        Some(m) if m == b => {}
                        Some(_) => return false,
                        None => {
                            if used[b] {
                                return false;
                            }
                            map[a] = Some(b);
                            used[b] = true;
                            visited += 1;
                            queue.push_back(a);
                        }
                    },
                    _ => return false,
                }
            }
        }
        visited == n
    }

    /// Machine for the reversed language, read in the opposite direction.
    pub fn reversed(&self) -> Dfa {
        let n = self.state_count();
        let symbols = self.symbol_count();
        let mut rev: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); symbols]; n];
        for s in 0..n {
            for sym in 0..symbols {
                if let Some(t) = self.next(s, sym) {
                    rev[t][sym].push(s);
                }
            }
        }
        let start: BTreeSet<usize> = (0..n).filter(|&s| self.accepting[s]).collect();
        let init = self.initial;
        determinize(
            self.base,
            self.arity,
            self.direction.flipped(),
            start,
            |set, sym| {
                set.iter()
                    .flat_map(|&t| rev[t][sym].iter().copied())
                    .collect()
            },
            |set| set.contains(&init),
        )
    }

    /// Graphviz rendering: one line per transition, labels `a/b/…`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph dfa {{");
        let _ = writeln!(
            out,
            "  // base {} arity {} reading {}",
            self.base,
            self.arity,
            self.direction.label()
        );
        let _ = writeln!(out, "  rankdir=LR;");
        let _ = writeln!(out, "  start [shape=point];");
        for s in 0..self.state_count() {
            let shape = if self.accepting[s] {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "  q{s} [shape={shape}, label=\"{s}\"];");
        }
        let _ = writeln!(out, "  start -> q{};", self.initial);
        for s in 0..self.state_count() {
            for sym in 0..self.symbol_count() {
                if let Some(t) = self.next(s, sym) {
                    let label: Vec<String> =
                        self.decode_symbol(sym).iter().map(u32::to_string).collect();
                    let _ = writeln!(out, "  q{s} -> q{t} [label=\"{}\"];", label.join("/"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn symbol_count(base: Prime, arity: usize) -> Result<usize> {
    if arity == 0 {
        return Err(Error::Automaton("arity must be positive".into()));
    }
    (base.get() as usize)
        .checked_pow(arity as u32)
        .filter(|&c| c <= 1 << 20)
        .ok_or_else(|| Error::Automaton(format!("alphabet of {base}^{arity} letters is too large")))
}

fn decode(mut sym: usize, base: Prime, arity: usize) -> Vec<u32> {
    let p = base.get() as usize;
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = (sym % p) as u32;
        sym /= p;
    }
    out
}

/// Subset construction; the empty set becomes the sink.
fn determinize<T, S, A>(
    base: Prime,
    arity: usize,
    direction: Direction,
    start: BTreeSet<T>,
    succ: S,
    accept: A,
) -> Dfa
where
    T: Ord + Clone + std::hash::Hash,
    S: Fn(&BTreeSet<T>, usize) -> BTreeSet<T>,
    A: Fn(&BTreeSet<T>) -> bool,
{
    let symbols = symbol_count(base, arity).expect("alphabet size");
    if start.is_empty() {
        return Dfa::empty(base, arity, direction);
    }
    let mut index: HashMap<BTreeSet<T>, usize> = HashMap::new();
    let mut sets = vec![start.clone()];
    index.insert(start, 0);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < sets.len() {
        let current = sets[head].clone();
        head += 1;
        for sym in 0..symbols {
            let next = succ(&current, sym);
            if next.is_empty() {
                delta.push(None);
                continue;
            }
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    index.insert(next.clone(), id);
                    sets.push(next);
                    id
                }
            };
            delta.push(Some(id));
        }
    }
    let accepting = sets.iter().map(&accept).collect();
    Dfa {
        base,
        arity,
        direction,
        initial: 0,
        accepting,
        delta,
    }
}
