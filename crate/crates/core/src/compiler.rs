//! End-to-end pipeline: a sum specification becomes a pair automaton, its
//! counting representation (LSD), the reversal to MSD, and optionally the
//! minimized form. The fixture registry carries the fourteen worked instances
//! with their published recurrences, matrices, and minimal ranks.

use std::fmt;

use thiserror::Error;

use crate::automaton::PairAutomaton;
use crate::bitnum::sum_oracle;
use crate::linrep::{LinearRepresentation, ReadingOrder};
use crate::rlt::{identify_rlt, LinearRecurrence};

/// The coefficient quadruple of the summand
/// `binom(a1*n + a2*k, a3*n + a4*k) * binom(n, k) (mod 2)`.
///
/// Valid specifications satisfy `a1 + a2 >= 0` and `a3 + a4 >= 0`, so both
/// linear forms are nonnegative on the diagonal `k = n`; the constructor is
/// the single gate enforcing this.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SumSpec {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("invalid spec ({a1},{a2},{a3},{a4}): requires a1+a2 >= 0 and a3+a4 >= 0")]
    SideCondition { a1: i64, a2: i64, a3: i64, a4: i64 },
}

impl SumSpec {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64) -> Result<Self, SpecError> {
        if a1.checked_add(a2).is_none_or(|s| s < 0) || a3.checked_add(a4).is_none_or(|s| s < 0) {
            return Err(SpecError::SideCondition { a1, a2, a3, a4 });
        }
        Ok(SumSpec { a1, a2, a3, a4 })
    }

    /// Carry headroom for the compiled automaton.
    pub fn carry_bound(&self) -> i64 {
        (self.a1.abs() + self.a2.abs()).max(self.a3.abs() + self.a4.abs()) + 1
    }

    pub fn as_array(&self) -> [i64; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }
}

impl fmt::Display for SumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.a1, self.a2, self.a3, self.a4)
    }
}

/// Compile a specification to an MSD-order linear representation whose value
/// at `n` is the sum `T(n)`. With `minimize` set, the result has minimal rank.
pub fn compile(spec: &SumSpec, minimize: bool) -> LinearRepresentation {
    let automaton = PairAutomaton::compile(spec);
    let counting = LinearRepresentation::counting(&automaton);
    let rep = if minimize { counting.minimize() } else { counting };
    rep.reverse()
}

/// One worked instance: the spec, the published recurrence whose run length
/// transform the sum is, the published matrices, and the minimal rank.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub spec: SumSpec,
    pub recurrence: LinearRecurrence,
    pub expected_rank: usize,
    /// The displayed `(v, gamma0, gamma1, w)`, transcribed literally (MSD).
    pub paper_rep: LinearRepresentation,
    /// OEIS id of the recurrence sequence, when one is cited. Inert metadata;
    /// nothing is ever fetched.
    pub oeis: Option<&'static str>,
    /// Human name of the recurrence sequence.
    pub sequence: &'static str,
}

struct FixtureData {
    name: &'static str,
    spec: [i64; 4],
    coeffs: &'static [i64],
    initials: &'static [i64],
    rank: usize,
    v: &'static [i64],
    gamma0: &'static [&'static [i64]],
    gamma1: &'static [&'static [i64]],
    w: &'static [i64],
    oeis: Option<&'static str>,
    sequence: &'static str,
}

const FIXTURES: &[FixtureData] = &[
    FixtureData {
        name: "thm6",
        spec: [1, -1, 0, 2],
        coeffs: &[1, 1],
        initials: &[1, 1],
        rank: 2,
        v: &[1, 0],
        gamma0: &[&[1, 0], &[1, 0]],
        gamma1: &[&[0, 1], &[1, 1]],
        w: &[1, 1],
        oeis: Some("A000045"),
        sequence: "Fibonacci numbers",
    },
    FixtureData {
        name: "thm7",
        spec: [0, 3, 0, 1],
        coeffs: &[1, 1],
        initials: &[1, 2],
        rank: 2,
        v: &[1, 0],
        gamma0: &[&[1, 0], &[2, 0]],
        gamma1: &[&[0, 1], &[1, 1]],
        w: &[1, 2],
        oeis: None,
        sequence: "truncated Fibonacci numbers",
    },
    FixtureData {
        name: "thm8",
        spec: [1, 0, 0, 2],
        coeffs: &[2, 0],
        initials: &[1, 1],
        rank: 2,
        v: &[1, 0],
        gamma0: &[&[1, 0], &[1, 0]],
        gamma1: &[&[0, 1], &[0, 2]],
        w: &[1, 1],
        oeis: Some("A000079"),
        sequence: "1 followed by the positive powers of 2",
    },
    FixtureData {
        name: "thm9",
        spec: [1, 2, 0, 2],
        coeffs: &[1, 0],
        initials: &[1, 2],
        rank: 2,
        v: &[1, 0],
        gamma0: &[&[1, 0], &[2, 0]],
        gamma1: &[&[0, 1], &[0, 1]],
        w: &[1, 2],
        oeis: Some("A040000"),
        sequence: "2's prepended with a 1",
    },
    FixtureData {
        name: "thm10",
        spec: [1, 1, 1, -1],
        coeffs: &[2, -1],
        initials: &[1, 2],
        rank: 2,
        v: &[1, 0],
        gamma0: &[&[1, 0], &[2, 0]],
        gamma1: &[&[0, 1], &[-1, 2]],
        w: &[1, 2],
        oeis: Some("A000027"),
        sequence: "positive integers",
    },
    FixtureData {
        name: "thm14",
        spec: [1, -1, 0, 6],
        coeffs: &[1, 0, 1],
        initials: &[1, 1, 1],
        rank: 3,
        v: &[1, 0, 0],
        gamma0: &[&[1, 0, 0], &[1, 0, 0], &[1, 0, 0]],
        gamma1: &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 1]],
        w: &[1, 1, 1],
        oeis: Some("A000930"),
        sequence: "Narayana's cows sequence",
    },
    FixtureData {
        name: "thm15",
        spec: [1, 3, 0, 6],
        coeffs: &[1, 1, -1],
        initials: &[1, 1, 2],
        rank: 3,
        v: &[1, 0, 0],
        gamma0: &[&[1, 0, 0], &[1, 0, 0], &[2, 0, 0]],
        gamma1: &[&[0, 1, 0], &[0, 0, 1], &[-1, 1, 1]],
        w: &[1, 1, 2],
        oeis: Some("A008619"),
        sequence: "doubled positive integers",
    },
    FixtureData {
        name: "thm17",
        spec: [1, 2, 2, -1],
        coeffs: &[1, 1, 0, 0],
        initials: &[1, 1, 2, 1],
        rank: 4,
        v: &[1, 0, 0, 0],
        gamma0: &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[2, 0, 0, 0], &[1, 0, 0, 0]],
        gamma1: &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[0, 0, 1, 1]],
        w: &[1, 1, 2, 1],
        oeis: Some("A329723"),
        sequence: "Lucas numbers prepended with 1, 1",
    },
    FixtureData {
        name: "rlt1",
        spec: [1, 5, 2, 2],
        coeffs: &[1, 1, -1, 1],
        initials: &[1, 1, 1, 1],
        rank: 4,
        v: &[1, 0, 0, 0],
        gamma0: &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0]],
        gamma1: &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, -1, 1, 1]],
        w: &[1, 1, 1, 1],
        oeis: None,
        sequence: "1,1,1,1,2,3,5,7,11,16,25,...",
    },
    FixtureData {
        name: "rlt2",
        spec: [1, 5, 0, 2],
        coeffs: &[1, 1, -1, 1],
        initials: &[1, 2, 2, 3],
        rank: 4,
        v: &[1, 0, 0, 0],
        gamma0: &[&[1, 0, 0, 0], &[2, 0, 0, 0], &[2, 0, 0, 0], &[3, 0, 0, 0]],
        gamma1: &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, -1, 1, 1]],
        w: &[1, 2, 2, 3],
        oeis: None,
        sequence: "1,2,2,3,4,7,10,16,...",
    },
    FixtureData {
        name: "rlt3",
        spec: [-1, 7, 1, 1],
        coeffs: &[0, 1, 1],
        initials: &[1, 1, 1],
        rank: 3,
        v: &[1, 0, 0],
        gamma0: &[&[1, 0, 0], &[1, 0, 0], &[1, 0, 0]],
        gamma1: &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]],
        w: &[1, 1, 1],
        oeis: Some("A000931"),
        sequence: "Padovan numbers, offset 5",
    },
    FixtureData {
        name: "rlt4",
        spec: [1, 7, 3, 1],
        coeffs: &[0, 1, 1],
        initials: &[1, 0, 1],
        rank: 3,
        v: &[1, 0, 0],
        gamma0: &[&[1, 0, 0], &[0, 0, 0], &[1, 0, 0]],
        gamma1: &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0]],
        w: &[1, 0, 1],
        oeis: Some("A000931"),
        sequence: "Padovan numbers, offset 3",
    },
    FixtureData {
        name: "rlt5",
        spec: [0, 6, 1, 3],
        coeffs: &[0, 2, 0, -1],
        initials: &[1, 1, 1, 2],
        rank: 4,
        v: &[1, 0, 0, 0],
        gamma0: &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0], &[2, 0, 0, 0]],
        gamma1: &[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[-1, 0, 2, 0]],
        w: &[1, 1, 1, 2],
        oeis: None,
        sequence: "1 alternating with the natural numbers",
    },
    FixtureData {
        name: "rlt6",
        spec: [-2, 8, 1, 1],
        coeffs: &[0, 0, 1],
        initials: &[1, 1, 0],
        rank: 3,
        v: &[1, 0, 0],
        gamma0: &[&[1, 0, 0], &[1, 0, 0], &[0, 0, 0]],
        gamma1: &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]],
        w: &[1, 1, 0],
        oeis: None,
        sequence: "period 1,1,0",
    },
];

/// The fourteen registered instances, in publication order.
pub fn fixtures() -> Vec<Fixture> {
    FIXTURES.iter().map(build_fixture).collect()
}

/// Look a fixture up by name (`thm6` ... `thm17`, `rlt1` ... `rlt6`).
pub fn fixture(name: &str) -> Option<Fixture> {
    FIXTURES.iter().find(|f| f.name == name).map(build_fixture)
}

fn build_fixture(data: &FixtureData) -> Fixture {
    let [a1, a2, a3, a4] = data.spec;
    Fixture {
        name: data.name,
        spec: SumSpec::new(a1, a2, a3, a4).expect("registered specs satisfy the side condition"),
        recurrence: LinearRecurrence::from_i64(data.coeffs, data.initials)
            .expect("registered recurrences start at 1"),
        expected_rank: data.rank,
        paper_rep: LinearRepresentation::from_i64(
            ReadingOrder::Msd,
            data.v,
            data.gamma0,
            data.gamma1,
            data.w,
        ),
        oeis: data.oeis,
        sequence: data.sequence,
    }
}

/// Outcome of one verification check.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// Per-fixture verification report; failures are recorded, not raised.
#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            write!(
                f,
                "[{}] {}: {}",
                if check.passed { "pass" } else { "FAIL" },
                self.name,
                check.label
            )?;
            if check.detail.is_empty() {
                writeln!(f)?;
            } else {
                writeln!(f, " ({})", check.detail)?;
            }
        }
        Ok(())
    }
}

/// Run the full battery on one fixture: the oracle / transform / compiled
/// triple-equality sweep for `n < bound`, the minimal-rank assertion,
/// equivalence with the published matrices, recurrence identification, and
/// the normal-form reproduction of the published matrices.
pub fn verify_fixture(fixture: &Fixture, bound: u64) -> FixtureReport {
    let mut checks = Vec::new();
    let mut check = |label: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            label: label.to_string(),
            passed,
            detail,
        });
    };

    let raw = compile(&fixture.spec, false);
    let minimized = raw.minimize();

    let compiled_values = raw.evaluate_prefix(bound);
    let mut mismatch = None;
    for n in 0..bound {
        let oracle = sum_oracle(&fixture.spec, n);
        let transform = fixture.recurrence.run_length_transform(n);
        let compiled = &compiled_values[n as usize];
        if transform != oracle.into() || !compiled.is_integer() || compiled.to_integer() != transform
        {
            mismatch = Some(n);
            break;
        }
    }
    check(
        "triple equality (oracle = transform = compiled)",
        mismatch.is_none(),
        match mismatch {
            None => format!("n < {bound}"),
            Some(n) => format!("first mismatch at n = {n}"),
        },
    );

    check(
        "minimized rank",
        minimized.rank() == fixture.expected_rank,
        format!("rank {} (expected {})", minimized.rank(), fixture.expected_rank),
    );

    let equivalent = minimized.equivalent(&fixture.paper_rep);
    check("equivalent to published matrices", equivalent, String::new());

    match identify_rlt(&minimized) {
        Ok(recovered) => {
            check(
                "identified recurrence",
                recovered == fixture.recurrence,
                crate::rlt::recurrence_display(&recovered),
            );
            check(
                "normal form reproduces published matrices entrywise",
                recovered.normal_form() == fixture.paper_rep,
                String::new(),
            );
        }
        Err(failure) => {
            check("identified recurrence", false, failure.to_string());
        }
    }

    FixtureReport {
        name: fixture.name.to_string(),
        checks,
    }
}
