//! Deterministic automata over paired (n-bit, k-bit) digits.
//!
//! A `PairAutomaton` reads one digit of `n` and one digit of `k` per step,
//! least significant digits first, and tracks the carries of the two linear
//! forms `a1*n + a2*k` and `a3*n + a4*k`. Each step emits one output bit per
//! form; the run dies as soon as the binomial `binom(form1, form2)` or
//! `binom(n, k)` is certified even by the bit-subset criterion. Acceptance is
//! decided after a flush that drains the remaining carry bits on (0,0) input.

use std::collections::HashMap;

use crate::compiler::SumSpec;

/// State of a pair automaton: the two outstanding carries plus liveness.
/// `alive = false` identifies the dead state regardless of the carries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AutomatonState {
    pub carry1: i64,
    pub carry2: i64,
    pub alive: bool,
}

impl AutomatonState {
    fn dead() -> Self {
        AutomatonState {
            carry1: 0,
            carry2: 0,
            alive: false,
        }
    }
}

/// Deterministic multi-track automaton over paired bits with carry states and
/// a single absorbing dead state. Input is read LSD-first.
#[derive(Clone, Debug)]
pub struct PairAutomaton {
    spec: SumSpec,
    states: Vec<AutomatonState>,
    /// transitions[state][(n_bit << 1) | k_bit]
    transitions: Vec<[usize; 4]>,
    initial: usize,
    dead: usize,
    carry_bound: i64,
}

fn step_carry(a_n: i64, a_k: i64, carry: i64, n_bit: u8, k_bit: u8) -> (u8, i64) {
    let t = a_n * i64::from(n_bit) + a_k * i64::from(k_bit) + carry;
    (t.rem_euclid(2) as u8, t.div_euclid(2))
}

impl PairAutomaton {
    /// Compile the carry automaton for a sum specification.
    ///
    /// A step computes one output bit of each linear form and dies when the
    /// bottom form emits a 1 where the top form emits a 0, or when the k-track
    /// bit is 1 where the n-track bit is 0. States are discovered by
    /// breadth-first search; the reachable carries stay within
    /// `[-carry_bound, carry_bound]`.
    pub fn compile(spec: &SumSpec) -> Self {
        let bound = spec.carry_bound();
        let initial_state = AutomatonState {
            carry1: 0,
            carry2: 0,
            alive: true,
        };
        let mut states = vec![initial_state, AutomatonState::dead()];
        let mut index: HashMap<AutomatonState, usize> = HashMap::new();
        index.insert(initial_state, 0);
        index.insert(AutomatonState::dead(), 1);
        let mut transitions: Vec<[usize; 4]> = Vec::new();

        let mut next = 0usize;
        while next < states.len() {
            let s = states[next];
            let mut row = [1usize; 4]; // everything from the dead state stays dead
            if s.alive {
                for (sym, row_slot) in row.iter_mut().enumerate() {
                    let n_bit = (sym >> 1) as u8;
                    let k_bit = (sym & 1) as u8;
                    let t = step_state(spec, &s, n_bit, k_bit);
                    debug_assert!(
                        t.carry1.abs() <= bound && t.carry2.abs() <= bound,
                        "carry escaped its bound"
                    );
                    let idx = *index.entry(t).or_insert_with(|| {
                        states.push(t);
                        states.len() - 1
                    });
                    *row_slot = idx;
                }
            }
            transitions.push(row);
            next += 1;
        }

        PairAutomaton {
            spec: *spec,
            states,
            transitions,
            initial: 0,
            dead: 1,
            carry_bound: bound,
        }
    }

    /// The two-state automaton deciding the parity of `binom(n, k)`: the live
    /// state survives until a (n-bit, k-bit) = (0, 1) pair is read, after
    /// which the run is dead for good. Carries never appear because the forms
    /// are `n` and `k` themselves.
    pub fn lucas() -> Self {
        PairAutomaton::compile(&SumSpec::new(1, 0, 0, 1).expect("valid spec"))
    }

    pub fn spec(&self) -> &SumSpec {
        &self.spec
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn dead(&self) -> usize {
        self.dead
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, idx: usize) -> &AutomatonState {
        &self.states[idx]
    }

    pub fn carry_bound(&self) -> i64 {
        self.carry_bound
    }

    /// Indices of the live states, in discovery order.
    pub fn live_states(&self) -> Vec<usize> {
        (0..self.states.len()).filter(|&i| self.states[i].alive).collect()
    }

    /// One transition: current state index, one n-bit and one k-bit.
    pub fn step(&self, state: usize, n_bit: u8, k_bit: u8) -> usize {
        self.transitions[state][usize::from(n_bit) << 1 | usize::from(k_bit)]
    }

    /// Run from the initial state over explicit digit pairs (n-bit, k-bit),
    /// in the automaton's LSD-first reading order, returning the final state.
    pub fn run(&self, pairs: &[(u8, u8)]) -> usize {
        pairs
            .iter()
            .fold(self.initial, |s, &(n_bit, k_bit)| self.step(s, n_bit, k_bit))
    }

    /// Drain the remaining carries on (0,0) input and decide acceptance:
    /// true iff the run never dies and both carries reach 0. A form with a
    /// negative outstanding value settles at carry -1, keeps emitting 1-bits,
    /// and is rejected.
    pub fn flush_accepts(&self, state: usize) -> bool {
        let mut s = state;
        loop {
            let st = &self.states[s];
            if !st.alive {
                return false;
            }
            if st.carry1 == 0 && st.carry2 == 0 {
                return true;
            }
            let next = self.step(s, 0, 0);
            if next == s {
                // Fixed point with a nonzero carry: a negative form value.
                return false;
            }
            s = next;
        }
    }

    /// Decide the full predicate for concrete `(n, k)`: reads
    /// `max(|[n]_2|, |[k]_2|)` digit pairs LSD-first, then flushes. Equals
    /// `binom_parity_signed(a1*n + a2*k, a3*n + a4*k) * binom_parity(n, k)`.
    pub fn accepts(&self, n: u64, k: u64) -> bool {
        let len = 64 - n.max(k).leading_zeros();
        let mut s = self.initial;
        for i in 0..len {
            s = self.step(s, (n >> i & 1) as u8, (k >> i & 1) as u8);
            if s == self.dead {
                return false;
            }
        }
        self.flush_accepts(s)
    }
}

/// Free-function alias for [`PairAutomaton::lucas`].
pub fn lucas_automaton() -> PairAutomaton {
    PairAutomaton::lucas()
}

fn step_state(spec: &SumSpec, s: &AutomatonState, n_bit: u8, k_bit: u8) -> AutomatonState {
    debug_assert!(s.alive);
    let (bit1, carry1) = step_carry(spec.a1, spec.a2, s.carry1, n_bit, k_bit);
    let (bit2, carry2) = step_carry(spec.a3, spec.a4, s.carry2, n_bit, k_bit);
    if (bit2 == 1 && bit1 == 0) || (k_bit == 1 && n_bit == 0) {
        return AutomatonState::dead();
    }
    AutomatonState {
        carry1,
        carry2,
        alive: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitnum::{binom_parity, binom_parity_signed};

    fn parity_product(spec: &SumSpec, n: u64, k: u64) -> bool {
        let top = i128::from(spec.a1) * i128::from(n) + i128::from(spec.a2) * i128::from(k);
        let bottom = i128::from(spec.a3) * i128::from(n) + i128::from(spec.a4) * i128::from(k);
        binom_parity_signed(top, bottom) & binom_parity(n, k) == 1
    }

    #[test]
    fn lucas_automaton_examples() {
        let a = PairAutomaton::lucas();
        assert_eq!(a.num_states(), 2);
        // (n=5, k=4): pairs (1,1),(0,0),(1,0); positionwise, so either reading
        // order gives the same verdict.
        let s = a.run(&[(1, 1), (0, 0), (1, 0)]);
        assert!(a.state(s).alive);
        // (n=4, k=2) contains the fatal (0,1) pair.
        let s = a.run(&[(0, 1), (0, 0), (1, 0)]);
        assert!(!a.state(s).alive);
        // Empty input: binom(0,0) = 1.
        assert!(a.flush_accepts(a.run(&[])));
    }

    #[test]
    fn dead_state_is_absorbing() {
        let spec = SumSpec::new(1, -1, 0, 2).unwrap();
        let a = PairAutomaton::compile(&spec);
        for sym in 0..4 {
            assert_eq!(a.step(a.dead(), sym >> 1, sym & 1), a.dead());
        }
    }

    #[test]
    fn flush_examples() {
        let spec = SumSpec::new(1, -1, 0, 2).unwrap();
        let a = PairAutomaton::compile(&spec);
        assert!(a.flush_accepts(a.initial()));
        // Theorem-10 shape: n = k = 1 leaves a positive carry on the top form
        // that must flush to acceptance.
        let spec10 = SumSpec::new(1, 1, 1, -1).unwrap();
        let a10 = PairAutomaton::compile(&spec10);
        assert!(a10.accepts(1, 1));
    }

    #[test]
    fn negative_carry_rejects() {
        // 2k - n: for n=2, k=0 the form value is negative; its carry bottoms
        // out at -1 and the flush must reject.
        let spec = SumSpec::new(-1, 2, 0, 1).unwrap();
        let a = PairAutomaton::compile(&spec);
        assert!(!a.accepts(2, 0));
        assert!(a.accepts(2, 2)); // 2k - n = 2, binom(2,2) odd
    }

    #[test]
    fn acceptance_examples() {
        let spec = SumSpec::new(1, -1, 0, 2).unwrap();
        let a = PairAutomaton::compile(&spec);
        assert!(a.accepts(7, 2)); // binom(5,4) odd
        assert!(!a.accepts(7, 4)); // binom(3,8) = 0
        let id = SumSpec::new(0, 1, 0, 1).unwrap();
        let aid = PairAutomaton::compile(&id);
        assert!(aid.accepts(3, 3));
    }

    #[test]
    fn acceptance_matches_parity_product_small() {
        for spec in [
            SumSpec::new(1, -1, 0, 2).unwrap(),
            SumSpec::new(1, 1, 1, -1).unwrap(),
            SumSpec::new(-1, 7, 1, 1).unwrap(),
            SumSpec::new(0, 6, 1, 3).unwrap(),
        ] {
            let a = PairAutomaton::compile(&spec);
            for n in 0..64u64 {
                for k in 0..=n {
                    assert_eq!(a.accepts(n, k), parity_product(&spec, n, k), "{spec} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn state_count_within_bound() {
        for spec in [
            SumSpec::new(1, -1, 0, 2).unwrap(),
            SumSpec::new(1, 2, 2, -1).unwrap(),
            SumSpec::new(-2, 8, 1, 1).unwrap(),
        ] {
            let a = PairAutomaton::compile(&spec);
            let b = a.carry_bound();
            let limit = ((2 * b + 1) * (2 * b + 1) + 1) as usize;
            assert!(a.num_states() <= limit, "{spec}: {} states, limit {limit}", a.num_states());
        }
    }

    #[test]
    fn padding_stability() {
        let spec = SumSpec::new(1, 2, 2, -1).unwrap();
        let a = PairAutomaton::compile(&spec);
        for n in 0..32u64 {
            for k in 0..32u64 {
                let len = 64 - n.max(k).leading_zeros();
                let mut pairs: Vec<(u8, u8)> = (0..len)
                    .map(|i| ((n >> i & 1) as u8, (k >> i & 1) as u8))
                    .collect();
                let base = a.flush_accepts(a.run(&pairs));
                for _ in 0..3 {
                    pairs.push((0, 0));
                    assert_eq!(a.flush_accepts(a.run(&pairs)), base, "n={n} k={k}");
                }
            }
        }
    }
}
