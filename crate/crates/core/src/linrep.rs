//! Linear representations `(v, gamma(0), gamma(1), w)` over exact rationals:
//! evaluation, reversal, extraction from counting automata, exact
//! minimization, and exact equivalence.
//!
//! A representation denotes the sequence `a(n) = v * gamma([n]_2) * w`, where
//! `gamma` extends multiplicatively over digit words. The reading order says
//! whether the digits of `[n]_2` are fed most or least significant first; the
//! two views are exchanged by [`LinearRepresentation::reverse`].

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::PairAutomaton;
use crate::mat::{col_mul, dot, rat, row_mul, Mat, RowBasis};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReadingOrder {
    Msd,
    Lsd,
}

impl ReadingOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            ReadingOrder::Msd => "msd",
            ReadingOrder::Lsd => "lsd",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinRepError {
    #[error("dimension mismatch: v is {v}, gamma0 is {g0_rows}x{g0_cols}, gamma1 is {g1_rows}x{g1_cols}, w is {w}")]
    DimensionMismatch {
        v: usize,
        g0_rows: usize,
        g0_cols: usize,
        g1_rows: usize,
        g1_cols: usize,
        w: usize,
    },
    #[error("reading order mismatch: {0} vs {1}")]
    OrderMismatch(&'static str, &'static str),
}

/// A rank-`d` linear representation. The rank 0 degenerate case (the zero
/// sequence) is allowed and arises as the minimization of any representation
/// of the zero sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearRepresentation {
    order: ReadingOrder,
    v: Vec<BigRational>,
    gamma0: Mat,
    gamma1: Mat,
    w: Vec<BigRational>,
}

impl LinearRepresentation {
    pub fn new(
        order: ReadingOrder,
        v: Vec<BigRational>,
        gamma0: Mat,
        gamma1: Mat,
        w: Vec<BigRational>,
    ) -> Result<Self, LinRepError> {
        let d = v.len();
        let square = |m: &Mat| m.rows() == d && m.cols() == d;
        if !square(&gamma0) || !square(&gamma1) || w.len() != d {
            return Err(LinRepError::DimensionMismatch {
                v: d,
                g0_rows: gamma0.rows(),
                g0_cols: gamma0.cols(),
                g1_rows: gamma1.rows(),
                g1_cols: gamma1.cols(),
                w: w.len(),
            });
        }
        Ok(LinearRepresentation {
            order,
            v,
            gamma0,
            gamma1,
            w,
        })
    }

    /// Integer-literal constructor for fixtures and tests.
    pub fn from_i64(order: ReadingOrder, v: &[i64], gamma0: &[&[i64]], gamma1: &[&[i64]], w: &[i64]) -> Self {
        LinearRepresentation::new(
            order,
            v.iter().map(|&x| rat(x)).collect(),
            Mat::from_i64(gamma0),
            Mat::from_i64(gamma1),
            w.iter().map(|&x| rat(x)).collect(),
        )
        .expect("consistent literal dimensions")
    }

    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn order(&self) -> ReadingOrder {
        self.order
    }

    pub fn v(&self) -> &[BigRational] {
        &self.v
    }

    pub fn w(&self) -> &[BigRational] {
        &self.w
    }

    pub fn gamma0(&self) -> &Mat {
        &self.gamma0
    }

    pub fn gamma1(&self) -> &Mat {
        &self.gamma1
    }

    pub fn gamma(&self, digit: u8) -> &Mat {
        if digit == 0 {
            &self.gamma0
        } else {
            &self.gamma1
        }
    }

    /// True when every entry of `v`, both matrices, and `w` is an integer.
    pub fn is_integer(&self) -> bool {
        self.v.iter().all(BigRational::is_integer)
            && self.w.iter().all(BigRational::is_integer)
            && self.gamma0.is_integer()
            && self.gamma1.is_integer()
    }

    /// Value of the formal series on an explicit digit word, read in the
    /// representation's own order. The empty word gives `v * w`.
    pub fn evaluate_word(&self, digits: &[u8]) -> BigRational {
        let mut row = self.v.clone();
        for &d in digits {
            row = row_mul(&row, self.gamma(d));
        }
        dot(&row, &self.w)
    }

    /// `a(n)`, evaluated over the canonical numeral of `n` (no leading
    /// zeros; `n = 0` is the empty word).
    pub fn evaluate(&self, n: u64) -> BigRational {
        let word = crate::bitnum::to_bits(n);
        match self.order {
            ReadingOrder::Msd => self.evaluate_word(word.digits()),
            ReadingOrder::Lsd => {
                let mut digits = word.digits().to_vec();
                digits.reverse();
                self.evaluate_word(&digits)
            }
        }
    }

    /// `a(0), a(1), ..., a(count-1)` computed with shared digit prefixes:
    /// each value costs one vector-matrix product instead of one per digit.
    pub fn evaluate_prefix(&self, count: u64) -> Vec<BigRational> {
        let count = count as usize;
        match self.order {
            ReadingOrder::Msd => {
                // Partial products v * gamma([n]_2): the canonical numeral of
                // n is the numeral of n >> 1 followed by the last digit.
                let mut partial: Vec<Vec<BigRational>> = Vec::with_capacity(count);
                let mut out = Vec::with_capacity(count);
                for n in 0..count {
                    let row = if n == 0 {
                        self.v.clone()
                    } else {
                        row_mul(&partial[n >> 1], self.gamma((n & 1) as u8))
                    };
                    out.push(dot(&row, &self.w));
                    partial.push(row);
                }
                out
            }
            ReadingOrder::Lsd => {
                // Same trick from the other side: gamma(suffix) * w.
                let mut partial: Vec<Vec<BigRational>> = Vec::with_capacity(count);
                let mut out = Vec::with_capacity(count);
                for n in 0..count {
                    let col = if n == 0 {
                        self.w.clone()
                    } else {
                        col_mul(self.gamma((n & 1) as u8), &partial[n >> 1])
                    };
                    out.push(dot(&self.v, &col));
                    partial.push(col);
                }
                out
            }
        }
    }

    /// Swap the reading order: `(v, g0, g1, w) -> (w^T, g0^T, g1^T, v^T)`.
    /// Evaluation at every `n` is preserved.
    pub fn reverse(&self) -> LinearRepresentation {
        LinearRepresentation {
            order: match self.order {
                ReadingOrder::Msd => ReadingOrder::Lsd,
                ReadingOrder::Lsd => ReadingOrder::Msd,
            },
            v: self.w.clone(),
            gamma0: self.gamma0.transpose(),
            gamma1: self.gamma1.transpose(),
            w: self.v.clone(),
        }
    }

    /// Counting representation of a pair automaton, LSD order: entry
    /// `gamma(b)[s, s']` counts the k-bit choices that move live state `s` to
    /// live state `s'` while `n` contributes bit `b`; `v` is the initial-state
    /// indicator and `w` flags states whose flush accepts. Evaluating at `n`
    /// counts the accepted `k`. The dead state is omitted: its row and column
    /// would contribute nothing.
    pub fn counting(a: &PairAutomaton) -> LinearRepresentation {
        let live = a.live_states();
        let mut dense = vec![usize::MAX; a.num_states()];
        for (pos, &s) in live.iter().enumerate() {
            dense[s] = pos;
        }
        let d = live.len();
        let mut gamma0 = Mat::zeros(d, d);
        let mut gamma1 = Mat::zeros(d, d);
        for (pos, &s) in live.iter().enumerate() {
            for n_bit in 0..2u8 {
                for k_bit in 0..2u8 {
                    let t = a.step(s, n_bit, k_bit);
                    if dense[t] == usize::MAX {
                        continue;
                    }
                    let m = if n_bit == 0 { &mut gamma0 } else { &mut gamma1 };
                    let cur = m.get(pos, dense[t]) + BigRational::one();
                    m.set(pos, dense[t], cur);
                }
            }
        }
        let mut v = vec![BigRational::zero(); d];
        v[dense[a.initial()]] = BigRational::one();
        let w = live
            .iter()
            .map(|&s| if a.flush_accepts(s) { BigRational::one() } else { BigRational::zero() })
            .collect();
        LinearRepresentation {
            order: ReadingOrder::Lsd,
            v,
            gamma0,
            gamma1,
            w,
        }
    }

    /// Equivalent representation of minimal rank, computed with exact
    /// rational arithmetic: first restrict to the row space spanned by
    /// `{v * gamma(x)}`, then to the column space spanned by `{gamma(x) * w}`.
    pub fn minimize(&self) -> LinearRepresentation {
        self.left_reduce().reverse_in_place_reduce()
    }

    fn reverse_in_place_reduce(&self) -> LinearRepresentation {
        // Right reduction = transpose, left-reduce, transpose back. The
        // reading order is untouched; only the basis changes.
        let t = LinearRepresentation {
            order: self.order,
            v: self.w.clone(),
            gamma0: self.gamma0.transpose(),
            gamma1: self.gamma1.transpose(),
            w: self.v.clone(),
        };
        let r = t.left_reduce();
        LinearRepresentation {
            order: self.order,
            v: r.w,
            gamma0: r.gamma0.transpose(),
            gamma1: r.gamma1.transpose(),
            w: r.v,
        }
    }

    /// Restrict to the forward-reachable row space. The new rank is the
    /// dimension of `span{v * gamma(x) : x in {0,1}*}`.
    fn left_reduce(&self) -> LinearRepresentation {
        let d = self.rank();
        let mut basis = RowBasis::new(d);
        basis.insert(self.v.clone());
        let mut i = 0;
        while i < basis.len() {
            for digit in 0..2u8 {
                let image = row_mul(&basis.rows()[i].to_vec(), self.gamma(digit));
                basis.insert(image);
            }
            i += 1;
        }
        let p = basis.len();
        let gamma = |m: &Mat| {
            let rows = (0..p)
                .map(|i| {
                    let image = row_mul(&basis.rows()[i], m);
                    basis
                        .coordinates(&image)
                        .expect("closure is invariant under gamma")
                })
                .collect();
            Mat::from_rows(rows)
        };
        let gamma0 = gamma(&self.gamma0);
        let gamma1 = gamma(&self.gamma1);
        let v = basis
            .coordinates(&self.v)
            .expect("v generates the closure");
        let w = basis.rows().iter().map(|r| dot(r, &self.w)).collect();
        LinearRepresentation {
            order: self.order,
            v,
            gamma0,
            gamma1,
            w,
        }
    }

    /// Exact equivalence of the formal series: true iff the two
    /// representations agree on every digit word (leading zeros included).
    /// Decided by checking all words of length `< rank(self) + rank(other)`,
    /// which is sufficient for series of these ranks. Exponential in the
    /// combined rank, so intended for small (e.g. minimized) representations.
    ///
    /// Both representations must use the same reading order.
    pub fn equivalent(&self, other: &LinearRepresentation) -> bool {
        assert_eq!(
            self.order, other.order,
            "equivalence requires matching reading orders"
        );
        let depth = self.rank() + other.rank();
        if depth == 0 {
            return true;
        }
        self.equivalent_dfs(other, &self.v, &other.v, depth - 1)
    }

    fn equivalent_dfs(
        &self,
        other: &LinearRepresentation,
        u1: &[BigRational],
        u2: &[BigRational],
        remaining: usize,
    ) -> bool {
        if dot(u1, &self.w) != dot(u2, &other.w) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        (0..2u8).all(|digit| {
            let n1 = row_mul(u1, self.gamma(digit));
            let n2 = row_mul(u2, other.gamma(digit));
            self.equivalent_dfs(other, &n1, &n2, remaining - 1)
        })
    }

    /// Block-diagonal combination evaluating to
    /// `c1 * self(n) + c2 * other(n)`. The rank is the sum of the ranks.
    pub fn linear_combination(
        c1: &BigRational,
        r1: &LinearRepresentation,
        c2: &BigRational,
        r2: &LinearRepresentation,
    ) -> Result<LinearRepresentation, LinRepError> {
        if r1.order != r2.order {
            return Err(LinRepError::OrderMismatch(r1.order.as_str(), r2.order.as_str()));
        }
        let d1 = r1.rank();
        let d = d1 + r2.rank();
        let mut gamma0 = Mat::zeros(d, d);
        let mut gamma1 = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let (g0, g1) = if i < d1 && j < d1 {
                    (r1.gamma0.get(i, j).clone(), r1.gamma1.get(i, j).clone())
                } else if i >= d1 && j >= d1 {
                    (r2.gamma0.get(i - d1, j - d1).clone(), r2.gamma1.get(i - d1, j - d1).clone())
                } else {
                    continue;
                };
                gamma0.set(i, j, g0);
                gamma1.set(i, j, g1);
            }
        }
        // Fold the scalars into v so w stays a plain concatenation.
        let v = r1
            .v
            .iter()
            .map(|x| x * c1)
            .chain(r2.v.iter().map(|x| x * c2))
            .collect();
        let w = r1.w.iter().chain(&r2.w).cloned().collect();
        LinearRepresentation::new(r1.order, v, gamma0, gamma1, w)
    }
}
