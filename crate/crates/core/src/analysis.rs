//! Block sums and averages of a represented sequence.
//!
//! For an MSD representation with the padding property `v * gamma(0) = v`,
//! the sum of the first `2^r` values is `g(r) = v * M^r * w` with
//! `M = gamma(0) + gamma(1)`, and the average over `2^r <= n < 2^{r+1}` is
//! `mu(r) = (g(r+1) - g(r)) / 2^r`. Everything is exact except the final
//! comparison against irrational closed forms, which is done in doubles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::linrep::{LinearRepresentation, ReadingOrder};
use crate::mat::{dot, row_mul, solve_combination, Mat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("block analysis expects an MSD-order representation")]
    NotMsd,
    #[error("block sum g({r}) = {value} is not an integer; the representation is not integer-valued")]
    NonIntegerBlockSum { r: u32, value: BigRational },
    #[error("minimal polynomial has a non-integer coefficient {0}; the representation is not integer-valued")]
    NonIntegerPolynomial(BigRational),
    #[error("closed-form fit system is singular (are the roots distinct and nonzero?)")]
    SingularFit,
}

/// Exact block data at one scale: `g_r` sums the first `2^r` terms and `mu_r`
/// averages the terms in `[2^r, 2^{r+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStats {
    pub r: u32,
    pub g_r: BigInt,
    pub mu_r: BigRational,
}

fn power_row(rep: &LinearRepresentation, r: u32) -> Result<Vec<BigRational>, AnalysisError> {
    if rep.order() != ReadingOrder::Msd {
        return Err(AnalysisError::NotMsd);
    }
    let m = rep.gamma0().add(rep.gamma1());
    let mut row = rep.v().to_vec();
    for _ in 0..r {
        row = row_mul(&row, &m);
    }
    Ok(row)
}

fn g_exact(rep: &LinearRepresentation, r: u32) -> Result<BigRational, AnalysisError> {
    Ok(dot(&power_row(rep, r)?, rep.w()))
}

/// `g(r) = v * (gamma(0) + gamma(1))^r * w`, the exact sum of the first `2^r`
/// terms of an integer-valued representation.
pub fn block_sum(rep: &LinearRepresentation, r: u32) -> Result<BigInt, AnalysisError> {
    let value = g_exact(rep, r)?;
    if !value.is_integer() {
        return Err(AnalysisError::NonIntegerBlockSum { r, value });
    }
    Ok(value.to_integer())
}

/// `mu(r) = (g(r+1) - g(r)) / 2^r`, exact.
pub fn block_average(rep: &LinearRepresentation, r: u32) -> Result<BigRational, AnalysisError> {
    // One extra multiplication instead of recomputing the power from scratch.
    let row = power_row(rep, r)?;
    let g_r = dot(&row, rep.w());
    let m = rep.gamma0().add(rep.gamma1());
    let g_next = dot(&row_mul(&row, &m), rep.w());
    let denom = BigRational::from_integer(BigInt::from(2).pow(r));
    Ok((g_next - g_r) / denom)
}

pub fn block_stats(rep: &LinearRepresentation, r: u32) -> Result<BlockStats, AnalysisError> {
    Ok(BlockStats {
        r,
        g_r: block_sum(rep, r)?,
        mu_r: block_average(rep, r)?,
    })
}

/// A monic polynomial with integer coefficients, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Coefficients, constant term first; the leading coefficient is 1.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluate at a square matrix; used to check annihilation.
    pub fn eval_matrix(&self, m: &Mat) -> Mat {
        let d = m.rows();
        let mut acc = Mat::zeros(d, d);
        let mut power = Mat::identity(d);
        for c in &self.coeffs {
            if !c.is_zero() {
                acc = acc.add(&power.scale(&BigRational::from_integer(c.clone())));
            }
            power = power.mul(m);
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (pow, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && pow == 0) {
                continue;
            }
            let var = match pow {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{pow}"),
            };
            let abs = c.abs();
            let coeff = if abs.is_one() && pow > 0 { String::new() } else { abs.to_string() };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{coeff}{var}")?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {coeff}{var}")?;
            } else {
                write!(f, " + {coeff}{var}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Monic minimal polynomial of `M = gamma(0) + gamma(1)` over the rationals.
/// For integer-valued representations the coefficients are integers.
pub fn minimal_polynomial(rep: &LinearRepresentation) -> Result<IntPolynomial, AnalysisError> {
    if rep.order() != ReadingOrder::Msd {
        return Err(AnalysisError::NotMsd);
    }
    let m = rep.gamma0().add(rep.gamma1());
    let d = m.rows();
    if d == 0 {
        // Zero-dimensional matrix: everything annihilates it; take x.
        return Ok(IntPolynomial {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        });
    }
    let mut powers: Vec<Mat> = vec![Mat::identity(d)];
    loop {
        let next = powers.last().expect("nonempty").mul(&m);
        let columns: Vec<Vec<BigRational>> = powers.iter().map(Mat::vectorize).collect();
        if let Some(combo) = solve_combination(&columns, &next.vectorize()) {
            // x^m = sum c_i x^i, so p(x) = x^m - sum c_i x^i.
            let mut coeffs: Vec<BigInt> = Vec::with_capacity(powers.len() + 1);
            for c in &combo {
                if !c.is_integer() {
                    return Err(AnalysisError::NonIntegerPolynomial(c.clone()));
                }
                coeffs.push(-c.to_integer());
            }
            coeffs.push(BigInt::one());
            return Ok(IntPolynomial { coeffs });
        }
        powers.push(next);
        assert!(powers.len() <= d + 1, "minimal polynomial search exceeded the dimension");
    }
}

/// Result of fitting an exponential polynomial `g(r) ~ sum c_i root_i^r` to
/// the exact block sums and comparing the induced averages.
#[derive(Clone, Debug)]
pub struct ClosedFormReport {
    pub roots: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub r_max: u32,
    pub tol: f64,
    pub max_rel_err: f64,
    pub passed: bool,
}

/// Fit coefficients for the given roots from `g(0), ..., g(deg-1)` (solving
/// the small linear system in doubles), then check that the implied averages
/// match the exact `mu(r)` for `r <= r_max` within relative tolerance `tol`.
///
/// `r_max` is capped at 30 to stay within double-precision headroom for the
/// growth of the dominant root.
pub fn verify_closed_form(
    rep: &LinearRepresentation,
    roots: &[f64],
    r_max: u32,
    tol: f64,
) -> Result<ClosedFormReport, AnalysisError> {
    let deg = roots.len();
    let r_max = r_max.min(30);
    let rhs: Vec<f64> = (0..deg as u32)
        .map(|r| {
            g_exact(rep, r).map(|g| g.to_f64().expect("block sums at small r fit in a double"))
        })
        .collect::<Result<_, _>>()?;
    // Vandermonde system: sum_i c_i root_i^r = g(r), r = 0..deg-1.
    let mut rows: Vec<Vec<f64>> = (0..deg)
        .map(|r| roots.iter().map(|x| x.powi(r as i32)).collect())
        .collect();
    let mut b = rhs.clone();
    let coefficients = solve_f64(&mut rows, &mut b).ok_or(AnalysisError::SingularFit)?;

    let g_hat = |r: u32| -> f64 {
        roots
            .iter()
            .zip(&coefficients)
            .map(|(root, c)| c * root.powi(r as i32))
            .sum()
    };
    let mut max_rel_err = 0.0f64;
    for r in 0..=r_max {
        let exact = block_average(rep, r)?
            .to_f64()
            .expect("averages at capped r fit in a double");
        let fitted = (g_hat(r + 1) - g_hat(r)) / 2f64.powi(r as i32);
        let denom = exact.abs().max(f64::MIN_POSITIVE);
        max_rel_err = max_rel_err.max((fitted - exact).abs() / denom);
    }
    Ok(ClosedFormReport {
        roots: roots.to_vec(),
        coefficients,
        r_max,
        tol,
        max_rel_err,
        passed: max_rel_err <= tol,
    })
}

fn solve_f64(rows: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = rows.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            rows[i][col].abs().total_cmp(&rows[j][col].abs())
        })?;
        if rows[pivot][col].abs() < 1e-12 {
            return None;
        }
        rows.swap(col, pivot);
        b.swap(col, pivot);
        for i in 0..n {
            if i != col {
                let f = rows[i][col] / rows[col][col];
                if f != 0.0 {
                    let (pivot_row, b_col) = (rows[col].clone(), b[col]);
                    for (x, p) in rows[i][col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= f * p;
                    }
                    b[i] -= f * b_col;
                }
            }
        }
    }
    Some((0..n).map(|i| b[i] / rows[i][i]).collect())
}

/// A published average-value row: eigenvalue data for the fit plus the
/// literal closed form for `mu(r)`.
pub struct KnownAverageForm {
    pub fixture: &'static str,
    pub roots: &'static [f64],
    pub mu: fn(u32) -> f64,
}

const SQRT2: f64 = std::f64::consts::SQRT_2;

fn mu_thm6(r: u32) -> f64 {
    ((1.0 + SQRT2).powi(r as i32 + 1) + (1.0 - SQRT2).powi(r as i32 + 1)) / 2f64.powi(r as i32 + 1)
}

fn mu_thm7(r: u32) -> f64 {
    let s3 = 3f64.sqrt();
    ((2.0 + s3) * (1.0 + s3).powi(r as i32) + (2.0 - s3) * (1.0 - s3).powi(r as i32))
        / 2f64.powi(r as i32 + 1)
}

fn mu_thm8(r: u32) -> f64 {
    let s5 = 5f64.sqrt();
    ((1.0 + s5).powi(2) * (3.0 + s5).powi(r as i32)
        - (1.0 - s5).powi(2) * (3.0 - s5).powi(r as i32))
        / (2f64.powi(2 * r as i32 + 2) * s5)
}

fn mu_thm9(r: u32) -> f64 {
    SQRT2 * ((1.0 + SQRT2).powi(r as i32 + 1) - (1.0 - SQRT2).powi(r as i32 + 1))
        / 2f64.powi(r as i32 + 1)
}

fn mu_thm10(r: u32) -> f64 {
    let s5 = 5f64.sqrt();
    ((1.0 + s5) * (3.0 + s5).powi(r as i32 + 1) - (1.0 - s5) * (3.0 - s5).powi(r as i32 + 1))
        / (2f64.powi(2 * r as i32 + 2) * s5)
}

// Eigenvalues of gamma(0) + gamma(1) for the order-2 instances:
// 1 +- sqrt(2) (x^2 - 2x - 1) and (3 +- sqrt(5)) / 2 (x^2 - 3x + 1).
const ROOTS_1_SQRT2: &[f64] = &[2.414213562373095, -0.41421356237309515];
const ROOTS_3_SQRT5_HALF: &[f64] = &[2.618033988749895, 0.3819660112501051];
const ROOTS_1_SQRT3: &[f64] = &[2.732050807568877, -0.7320508075688772];

/// The five published average-value rows, keyed by fixture name.
pub fn known_average_forms() -> &'static [KnownAverageForm] {
    const FORMS: &[KnownAverageForm] = &[
        KnownAverageForm {
            fixture: "thm6",
            roots: ROOTS_1_SQRT2,
            mu: mu_thm6,
        },
        KnownAverageForm {
            fixture: "thm7",
            roots: ROOTS_1_SQRT3,
            mu: mu_thm7,
        },
        KnownAverageForm {
            fixture: "thm8",
            roots: ROOTS_3_SQRT5_HALF,
            mu: mu_thm8,
        },
        KnownAverageForm {
            fixture: "thm9",
            roots: ROOTS_1_SQRT2,
            mu: mu_thm9,
        },
        KnownAverageForm {
            fixture: "thm10",
            roots: ROOTS_3_SQRT5_HALF,
            mu: mu_thm10,
        },
    ];
    FORMS
}

pub fn known_average_form(fixture: &str) -> Option<&'static KnownAverageForm> {
    known_average_forms().iter().find(|f| f.fixture == fixture)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitnum::sum_oracle;
    use crate::compiler::{compile, fixture};
    use crate::linrep::LinearRepresentation;
    use crate::mat::rat;

    fn thm6_rep() -> LinearRepresentation {
        fixture("thm6").unwrap().paper_rep
    }

    #[test]
    fn block_sum_examples() {
        let rep = thm6_rep();
        assert_eq!(block_sum(&rep, 0).unwrap(), BigInt::from(1));
        assert_eq!(block_sum(&rep, 1).unwrap(), BigInt::from(2));
        assert_eq!(block_sum(&rep, 2).unwrap(), BigInt::from(5));
        // Frozen from the brute-force comb oracle.
        let expected = [1i64, 2, 5, 12, 29, 70, 169, 408];
        for (r, want) in expected.iter().enumerate() {
            assert_eq!(block_sum(&rep, r as u32).unwrap(), BigInt::from(*want));
        }
    }

    #[test]
    fn block_average_examples() {
        let rep = thm6_rep();
        assert_eq!(block_average(&rep, 0).unwrap(), rat(1));
        assert_eq!(
            block_average(&rep, 1).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
        let rep9 = fixture("thm9").unwrap().paper_rep;
        assert_eq!(block_average(&rep9, 0).unwrap(), rat(2));
    }

    #[test]
    fn block_sum_matches_partial_sums() {
        let f = fixture("thm15").unwrap();
        let rep = compile(&f.spec, true);
        let mut total = 0u64;
        let mut next_r = 0u32;
        for n in 0..1024u64 {
            if n == 1 << next_r {
                assert_eq!(block_sum(&rep, next_r).unwrap(), BigInt::from(total));
                next_r += 1;
            }
            total += sum_oracle(&f.spec, n);
        }
    }

    #[test]
    fn telescoping() {
        let rep = thm6_rep();
        let mut acc = BigInt::zero();
        for r in 0..10u32 {
            let g = block_sum(&rep, r).unwrap();
            let g_next = block_sum(&rep, r + 1).unwrap();
            acc += &g_next - &g;
            assert_eq!(acc, g_next - block_sum(&rep, 0).unwrap());
        }
    }

    #[test]
    fn averages_are_basis_independent() {
        let f = fixture("thm10").unwrap();
        let raw = compile(&f.spec, false);
        let min = compile(&f.spec, true);
        for r in 0..10u32 {
            assert_eq!(block_average(&raw, r).unwrap(), block_average(&min, r).unwrap());
        }
    }

    #[test]
    fn minimal_polynomial_examples() {
        let p = minimal_polynomial(&thm6_rep()).unwrap();
        assert_eq!(p.to_string(), "x^2 - 2x - 1");
        assert_eq!(
            p.coeffs(),
            &[BigInt::from(-1), BigInt::from(-2), BigInt::from(1)]
        );

        // Rank-1 zero representation: M = 0, minimal polynomial x.
        let zero = LinearRepresentation::from_i64(ReadingOrder::Msd, &[0], &[&[0]], &[&[0]], &[1]);
        assert_eq!(minimal_polynomial(&zero).unwrap().to_string(), "x");

        // Thm 9 divides x^2 - 2x - 1 (here: equals it).
        let p9 = minimal_polynomial(&fixture("thm9").unwrap().paper_rep).unwrap();
        assert_eq!(p9.to_string(), "x^2 - 2x - 1");
    }

    #[test]
    fn minimal_polynomial_annihilates() {
        for name in ["thm6", "thm14", "rlt5"] {
            let rep = fixture(name).unwrap().paper_rep;
            let p = minimal_polynomial(&rep).unwrap();
            let m = rep.gamma0().add(rep.gamma1());
            assert!(p.eval_matrix(&m).is_zero(), "{name}");
        }
    }

    #[test]
    fn closed_forms_pass() {
        for form in known_average_forms() {
            let rep = fixture(form.fixture).unwrap().paper_rep;
            let report = verify_closed_form(&rep, form.roots, 20, 1e-9).unwrap();
            assert!(report.passed, "{}: max rel err {}", form.fixture, report.max_rel_err);
            // The literal table expression agrees with the fitted form.
            for r in 0..=20u32 {
                let exact = block_average(&rep, r).unwrap().to_f64().unwrap();
                let table = (form.mu)(r);
                assert!(
                    (table - exact).abs() <= 1e-9 * exact.abs(),
                    "{} r={r}: {table} vs {exact}",
                    form.fixture
                );
            }
        }
    }

    #[test]
    fn singular_fit_is_reported() {
        let rep = thm6_rep();
        let err = verify_closed_form(&rep, &[2.0, 2.0], 5, 1e-9).unwrap_err();
        assert_eq!(err, AnalysisError::SingularFit);
    }

    #[test]
    fn constant_sequence_average() {
        let one = LinearRepresentation::from_i64(ReadingOrder::Msd, &[1], &[&[1]], &[&[1]], &[1]);
        for r in 0..8 {
            assert_eq!(block_average(&one, r).unwrap(), rat(1));
        }
    }
}
