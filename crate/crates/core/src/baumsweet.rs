//! The generalized Baum-Sweet family `T_m`: the indicator that every maximal
//! run of 1's in `[n]_2` has length divisible by `m`, realized three ways --
//! as a binomial sum, as a run predicate, and as the run length transform of
//! the period-`m` sequence 1, 0, ..., 0. The classical Baum-Sweet sequence
//! (runs of 0's, even length) is included for cross-reference.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::bitnum::{binom_parity, runs_of_ones, to_bits};
use crate::compiler::SumSpec;
use crate::rlt::LinearRecurrence;

/// Parameter of the family; only `m >= 2` is meaningful.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BsSpec {
    m: u32,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BsError {
    #[error("the family is defined for m >= 2, got {0}")]
    MTooSmall(u32),
    #[error("m = {0} exceeds the supported width")]
    MTooLarge(u32),
}

impl BsSpec {
    pub fn new(m: u32) -> Result<Self, BsError> {
        if m < 2 {
            return Err(BsError::MTooSmall(m));
        }
        // 2^m * k must fit the 128-bit arithmetic below for 64-bit k.
        if m > 60 {
            return Err(BsError::MTooLarge(m));
        }
        Ok(BsSpec { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The same sequence through the generic compiler: the summand is
    /// `binom(2^m k, n + k) binom(n, k)`, i.e. the quadruple `(0, 2^m, 1, 1)`.
    pub fn sum_spec(&self) -> SumSpec {
        SumSpec::new(0, 1 << self.m, 1, 1).expect("side condition holds for all m")
    }
}

/// `T_m(n)` by direct summation: the number of `k <= n` with
/// `binom(2^m k, n + k) binom(n, k)` odd.
pub fn tm_sum(spec: &BsSpec, n: u64) -> u64 {
    let m = spec.m;
    let n_wide = u128::from(n);
    let mut total = 0u64;
    for k in 0..=n {
        let k_wide = u128::from(k);
        let top = k_wide << m;
        let bottom = n_wide + k_wide;
        let odd = u8::from(bottom & !top == 0) & binom_parity(n, k);
        total += u64::from(odd);
    }
    total
}

/// `T_m(n)` by the run predicate: 1 iff every maximal run of 1's in `[n]_2`
/// has length divisible by `m`.
pub fn tm_predicate(spec: &BsSpec, n: u64) -> u8 {
    u8::from(runs_of_ones(n).lengths().iter().all(|&l| l % spec.m == 0))
}

/// When `T_m(n) = 1`, the unique `k` whose summand is odd: each run `1^l` of
/// `[n]_2` is replaced by `(0^{m-1} 1)^{l/m}` and the 0-blocks are kept.
/// `None` when `T_m(n) = 0`.
pub fn tm_witness(spec: &BsSpec, n: u64) -> Option<u64> {
    if tm_predicate(spec, n) == 0 {
        return None;
    }
    let m = spec.m;
    let mut k = 0u64;
    let mut run_pos = 0u32;
    for &digit in to_bits(n).digits() {
        k <<= 1;
        if digit == 1 {
            // Within a run of 1's the witness places a 1 at every m-th slot,
            // spelling out one (0^{m-1} 1) block per m digits of the run.
            run_pos += 1;
            if run_pos.is_multiple_of(m) {
                k |= 1;
            }
        } else {
            run_pos = 0;
        }
    }
    Some(k)
}

/// The recurrence whose run length transform is `T_m`: order `m - 1`,
/// `S(n) = S(n - m)`, initial values 1, 0, ..., 0.
pub fn tm_run_length_form(spec: &BsSpec) -> LinearRecurrence {
    let m = spec.m as usize;
    let mut coeffs = vec![BigInt::ZERO; m];
    coeffs[m - 1] = BigInt::one();
    let mut initials = vec![BigInt::ZERO; m];
    initials[0] = BigInt::one();
    LinearRecurrence::new(coeffs, initials).expect("S(0) = 1 by construction")
}

/// The classical Baum-Sweet bit: 1 iff every maximal run of 0's in `[n]_2`
/// has even length. (`n = 0` has no runs at all and gives 1.)
pub fn baum_sweet(n: u64) -> u8 {
    let digits = to_bits(n);
    let mut zero_run = 0u32;
    for &d in digits.digits() {
        if d == 0 {
            zero_run += 1;
        } else {
            if !zero_run.is_multiple_of(2) {
                return 0;
            }
            zero_run = 0;
        }
    }
    u8::from(zero_run.is_multiple_of(2))
}
