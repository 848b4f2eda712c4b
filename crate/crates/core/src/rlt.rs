//! Run length transforms of linear recurrences.
//!
//! `T(n)` is the product of `S(len)` over the lengths of the maximal runs of
//! 1's in `[n]_2` (empty product 1). For a recurrence with `S(0) = 1` the
//! transform has a companion-shaped linear representation
//! ([`LinearRecurrence::normal_form`]); conversely, [`identify_rlt`] decides
//! whether a given representation is such a transform and recovers the
//! recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bitnum::runs_of_ones;
use crate::linrep::{LinearRepresentation, ReadingOrder};
use crate::mat::Mat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("first term must be 1, got {0}")]
    FirstTermNotOne(BigInt),
    #[error("need as many initial values as coefficients: {coeffs} coefficients, {initials} initial values")]
    LengthMismatch { coeffs: usize, initials: usize },
    #[error("a recurrence needs at least one coefficient")]
    Empty,
}

/// A linear recurrence `S(n+1) = d_0 S(n) + d_1 S(n-1) + ... + d_r S(n-r)`
/// with initial values `S(0) = 1, S(1) = c_1, ..., S(r) = c_r`.
///
/// The first term is pinned to 1: the run length transform of the sequence
/// has `T(0) = 1` (empty product) and probing `T` at `2^l - 1` recovers
/// `S(l)`, which forces `S(0) = 1` for round trips.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearRecurrence {
    /// `d_0, ..., d_r`
    coeffs: Vec<BigInt>,
    /// `S(0) = 1, c_1, ..., c_r`
    initials: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn new(coeffs: Vec<BigInt>, initials: Vec<BigInt>) -> Result<Self, RecurrenceError> {
        if coeffs.is_empty() {
            return Err(RecurrenceError::Empty);
        }
        if coeffs.len() != initials.len() {
            return Err(RecurrenceError::LengthMismatch {
                coeffs: coeffs.len(),
                initials: initials.len(),
            });
        }
        if !initials[0].is_one() {
            return Err(RecurrenceError::FirstTermNotOne(initials[0].clone()));
        }
        Ok(LinearRecurrence { coeffs, initials })
    }

    pub fn from_i64(coeffs: &[i64], initials: &[i64]) -> Result<Self, RecurrenceError> {
        LinearRecurrence::new(
            coeffs.iter().map(|&x| BigInt::from(x)).collect(),
            initials.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    /// Order `r`; the recurrence reaches back `r + 1` terms.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `d_0, ..., d_r`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `S(0), ..., S(r)`.
    pub fn initials(&self) -> &[BigInt] {
        &self.initials
    }

    /// `S(0), ..., S(count - 1)`.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        let mut s = self.initials.clone();
        s.truncate(count);
        while s.len() < count {
            let n = s.len() - 1; // computing S(n+1)
            let next = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, d)| d * &s[n - i])
                .sum();
            s.push(next);
        }
        s
    }

    /// The run length transform at `n`: product of `S(len)` over the maximal
    /// runs of 1's in `[n]_2`, with the empty product equal to 1.
    pub fn run_length_transform(&self, n: u64) -> BigInt {
        let runs = runs_of_ones(n);
        let max = runs.lengths().iter().copied().max().unwrap_or(0) as usize;
        let s = self.terms(max + 1);
        runs.lengths().iter().map(|&l| &s[l as usize]).product()
    }

    /// The companion-form representation of the run length transform, MSD
    /// order, rank `r + 1`:
    ///
    /// * `v = (1, 0, ..., 0)`,
    /// * `w = (1, c_1, ..., c_r)^T`,
    /// * `gamma(0)` has first column `w` and zeros elsewhere,
    /// * `gamma(1)` is the companion matrix with bottom row `(d_r, ..., d_0)`.
    pub fn normal_form(&self) -> LinearRepresentation {
        let d = self.coeffs.len();
        let to_rat = |x: &BigInt| BigRational::from_integer(x.clone());
        let mut v = vec![BigRational::zero(); d];
        v[0] = BigRational::one();
        let w: Vec<BigRational> = self.initials.iter().map(to_rat).collect();
        let mut gamma0 = Mat::zeros(d, d);
        for (i, wi) in w.iter().enumerate() {
            gamma0.set(i, 0, wi.clone());
        }
        let mut gamma1 = Mat::zeros(d, d);
        for i in 0..d - 1 {
            gamma1.set(i, i + 1, BigRational::one());
        }
        for (j, dj) in self.coeffs.iter().enumerate() {
            gamma1.set(d - 1, d - 1 - j, to_rat(dj));
        }
        LinearRepresentation::new(ReadingOrder::Msd, v, gamma0, gamma1, w)
            .expect("companion dimensions are consistent")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BmError {
    #[error("no linear recurrence of order <= {max_order} fits {terms} terms (complexity ran past half the prefix)")]
    InsufficientTerms { terms: usize, max_order: usize },
}

/// Berlekamp-Massey over the rationals: the coefficients `(q_1, ..., q_L)` of
/// the shortest recurrence `s(n) = q_1 s(n-1) + ... + q_L s(n-L)` that holds
/// for `n = L, ..., terms.len() - 1`. Exact arithmetic throughout.
///
/// The result is only trustworthy when `2L <= terms.len()`; beyond that the
/// prefix cannot pin the recurrence down and an error is returned.
pub fn berlekamp_massey(terms: &[BigRational]) -> Result<Vec<BigRational>, BmError> {
    // Connection polynomial c(x) = 1 + c_1 x + ... + c_L x^L with
    // sum_j c_j * s(n-j) = 0 for all applicable n.
    let mut c = vec![BigRational::one()];
    let mut b = vec![BigRational::one()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut last_delta = BigRational::one();
    for i in 0..terms.len() {
        let mut delta = terms[i].clone();
        for j in 1..c.len().min(i + 1) {
            delta += &c[j] * &terms[i - j];
        }
        if delta.is_zero() {
            m += 1;
        } else if 2 * l <= i {
            let snapshot = c.clone();
            let factor = &delta / &last_delta;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] -= &factor * bj;
            }
            l = i + 1 - l;
            b = snapshot;
            last_delta = delta;
            m = 1;
        } else {
            let factor = &delta / &last_delta;
            if c.len() < b.len() + m {
                c.resize(b.len() + m, BigRational::zero());
            }
            for (j, bj) in b.iter().enumerate() {
                c[j + m] -= &factor * bj;
            }
            m += 1;
        }
    }
    if 2 * l > terms.len() {
        return Err(BmError::InsufficientTerms {
            terms: terms.len(),
            max_order: terms.len() / 2,
        });
    }
    // The connection vector may be shorter than l + 1 when its tail is zero.
    Ok((1..=l)
        .map(|j| c.get(j).map_or_else(BigRational::zero, |x| -x.clone()))
        .collect())
}

/// Why a representation failed to be identified as a run length transform.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RltFailure {
    #[error("T(0) = {0}, but a run length transform has T(0) = 1")]
    FirstTermNotOne(BigRational),
    #[error("single-run probe values admit no linear recurrence: {0}")]
    NoRecurrence(BmError),
    #[error("recovered recurrence is not integral (coefficient or initial value {0})")]
    NonInteger(BigRational),
    #[error("candidate recurrence {candidate:?} does not reproduce the representation")]
    NotEquivalent { candidate: LinearRecurrence },
}

/// Decide whether `r` (MSD order) is the run length transform of a linear
/// recurrence, and recover the recurrence if so.
///
/// Probes the single-run inputs `2^l - 1` (whose run list is `{l}`, so the
/// probe value is `S(l)`), runs Berlekamp-Massey on the probes, rebuilds the
/// companion normal form, and accepts only if it is exactly equivalent to
/// `r`. The equivalence is decided against the minimized form of `r`, which
/// represents the same series.
pub fn identify_rlt(r: &LinearRepresentation) -> Result<LinearRecurrence, RltFailure> {
    assert_eq!(r.order(), ReadingOrder::Msd, "identification expects MSD order");
    let min = r.minimize();
    let d = min.rank();
    let probes: Vec<BigRational> = (0..=2 * d + 3)
        .map(|l| min.evaluate_word(&vec![1u8; l]))
        .collect();
    if !probes[0].is_one() {
        return Err(RltFailure::FirstTermNotOne(probes[0].clone()));
    }
    let taps = berlekamp_massey(&probes).map_err(RltFailure::NoRecurrence)?;
    let order = taps.len().max(1); // the constant-one sequence still gets order 1
    let as_int = |x: &BigRational| -> Result<BigInt, RltFailure> {
        if x.is_integer() {
            Ok(x.to_integer())
        } else {
            Err(RltFailure::NonInteger(x.clone()))
        }
    };
    // Definition-style layout: S(n+1) = d_0 S(n) + ... + d_r S(n-r) with
    // r = order - 1, so d_j = taps[j] padded with zeros up to the order.
    let mut coeffs = Vec::with_capacity(order);
    for j in 0..order {
        coeffs.push(match taps.get(j) {
            Some(t) => as_int(t)?,
            None => BigInt::zero(),
        });
    }
    let mut initials = Vec::with_capacity(order);
    for p in probes.iter().take(order) {
        initials.push(as_int(p)?);
    }
    let candidate =
        LinearRecurrence::new(coeffs, initials).expect("probe 0 is 1 by the check above");
    let nf = candidate.normal_form();
    if nf.equivalent(&min) {
        Ok(candidate)
    } else {
        Err(RltFailure::NotEquivalent { candidate })
    }
}

/// Formatting helper: `S(n) = 2S(n-1) - S(n-2)` style rendering of the rule.
pub fn recurrence_display(rec: &LinearRecurrence) -> String {
    let mut rhs = String::new();
    for (i, d) in rec.coeffs().iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let term = format!("S(n-{})", i + 1);
        if rhs.is_empty() {
            if d.is_one() {
                rhs = term;
            } else if *d == BigInt::from(-1) {
                rhs = format!("-{term}");
            } else {
                rhs = format!("{d}{term}");
            }
        } else if d.is_positive() {
            if d.is_one() {
                rhs.push_str(&format!(" + {term}"));
            } else {
                rhs.push_str(&format!(" + {d}{term}"));
            }
        } else {
            let abs = -d;
            if abs.is_one() {
                rhs.push_str(&format!(" - {term}"));
            } else {
                rhs.push_str(&format!(" - {abs}{term}"));
            }
        }
    }
    if rhs.is_empty() {
        rhs = "0".to_string();
    }
    format!("S(n) = {rhs}")
}
