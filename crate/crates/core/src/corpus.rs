//! Built-in worked examples, kept as a regression corpus.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::cover::{CoverError, MonodromyPair};
use crate::perm::{Permutation, PermError};
use crate::report::VerifyReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("the third family needs n >= 2, got {0}")]
    FamilyIndexTooSmall(usize),
    #[error("unknown example {0:?}; expected 1, 2, 2-as-printed, 3@<n> or all")]
    UnknownExample(String),
}

/// Which built-in example to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleId {
    One,
    Two,
    TwoAsPrinted,
    Three(usize),
}

impl FromStr for ExampleId {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "1" => Ok(Self::One),
            "2" => Ok(Self::Two),
            "2-as-printed" => Ok(Self::TwoAsPrinted),
            other => {
                let n = other
                    .strip_prefix("3@")
                    .and_then(|n| n.parse::<usize>().ok())
                    .ok_or_else(|| CorpusError::UnknownExample(other.to_string()))?;
                if n < 2 {
                    return Err(CorpusError::FamilyIndexTooSmall(n));
                }
                Ok(Self::Three(n))
            }
        }
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => f.write_str("1"),
            Self::Two => f.write_str("2"),
            Self::TwoAsPrinted => f.write_str("2-as-printed"),
            Self::Three(n) => write!(f, "3@{n}"),
        }
    }
}

/// Every built-in example, with the third family at `n = 2..=5`.
pub fn all_examples() -> Vec<ExampleId> {
    let mut ids = vec![ExampleId::One, ExampleId::Two, ExampleId::TwoAsPrinted];
    ids.extend((2..=5).map(ExampleId::Three));
    ids
}

/// Expected values; `None` means "not asserted".
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Expected {
    pub commutator: Option<String>,
    pub group_order: Option<BigUint>,
    pub transitive: Option<bool>,
    pub primitive: Option<bool>,
    pub curve_genus: Option<u64>,
    pub fibre_genus: Option<u64>,
    pub chi: Option<u64>,
    pub k_squared: Option<u64>,
    pub c2: Option<u64>,
    pub nodes: Option<u64>,
    pub delta_gamma: Option<u64>,
    pub valid: Option<bool>,
    /// The printed data is not a permutation; parsing must fail.
    pub parse_error: bool,
}

#[derive(Debug, Clone)]
pub struct ExampleRecord {
    pub id: ExampleId,
    pub name: String,
    pub degree: usize,
    pub alpha: String,
    pub beta: String,
    pub expected: Expected,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct ExampleCheck {
    pub report: Option<VerifyReport>,
    pub parse_error: Option<String>,
    pub mismatches: Vec<String>,
}

impl ExampleCheck {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl ExampleRecord {
    pub fn build(id: ExampleId) -> Result<Self, CorpusError> {
        Ok(match id {
            ExampleId::One => example_one(),
            ExampleId::Two => example_two(),
            ExampleId::TwoAsPrinted => example_two_as_printed(),
            ExampleId::Three(n) => example_three(n)?,
        })
    }

    pub fn pair(&self) -> Result<MonodromyPair, CoverError> {
        MonodromyPair::parse(&self.alpha, &self.beta, self.degree)
    }

    /// Runs the full verification and compares with the expected values.
    pub fn check(&self) -> ExampleCheck {
        let pair = match self.pair() {
            Ok(p) => p,
            Err(e) => {
                let mismatches = if self.expected.parse_error {
                    Vec::new()
                } else {
                    vec![format!("unexpected parse failure: {e}")]
                };
                return ExampleCheck {
                    report: None,
                    parse_error: Some(e.to_string()),
                    mismatches,
                };
            }
        };
        let report = VerifyReport::build(&pair, true);
        let mut mismatches = Vec::new();
        if self.expected.parse_error {
            mismatches.push("expected the printed data to be rejected, but it parsed".into());
        }
        let r = &report.record;
        let e = &self.expected;
        let mut cmp = |field: &str, want: Option<String>, got: String| {
            if let Some(want) = want {
                if want != got {
                    mismatches.push(format!("{field}: expected {want}, got {got}"));
                }
            }
        };
        let s = |v: Option<u64>| v.map_or_else(|| "null".into(), |x| x.to_string());
        cmp("commutator", e.commutator.clone(), r.commutator.clone());
        cmp("group_order", e.group_order.as_ref().map(|g| g.to_string()), r.group_order.to_string());
        cmp("transitive", e.transitive.map(|b| b.to_string()), r.transitive.to_string());
        cmp("primitive", e.primitive.map(|b| b.to_string()), r.primitive.to_string());
        cmp("curve_genus", e.curve_genus.map(|x| x.to_string()), r.curve_genus.to_string());
        cmp("fibre_genus", e.fibre_genus.map(|x| x.to_string()), s(r.fibre_genus));
        cmp("chi", e.chi.map(|x| x.to_string()), s(r.chi));
        cmp("k_squared", e.k_squared.map(|x| x.to_string()), s(r.k_squared));
        cmp("c2", e.c2.map(|x| x.to_string()), s(r.c2));
        cmp("nodes", e.nodes.map(|x| x.to_string()), s(r.nodes));
        cmp("delta_gamma", e.delta_gamma.map(|x| x.to_string()), s(r.delta_gamma));
        cmp("valid", e.valid.map(|b| b.to_string()), r.valid.to_string());
        ExampleCheck {
            report: Some(report),
            parse_error: None,
            mismatches,
        }
    }
}

fn example_one() -> ExampleRecord {
    ExampleRecord {
        id: ExampleId::One,
        name: "example-1".into(),
        degree: 4,
        alpha: "(1 2 3)".into(),
        beta: "(2 3 4)".into(),
        expected: Expected {
            commutator: Some("(1 4)(2 3)".into()),
            group_order: Some(BigUint::from(12u32)),
            transitive: Some(true),
            primitive: Some(true),
            curve_genus: Some(2),
            fibre_genus: Some(9),
            chi: Some(1),
            k_squared: Some(8),
            c2: Some(4),
            nodes: Some(4),
            delta_gamma: Some(2),
            valid: Some(true),
            parse_error: false,
        },
        notes: vec!["G is the alternating group A4".into()],
    }
}

fn example_two() -> ExampleRecord {
    ExampleRecord {
        id: ExampleId::Two,
        name: "example-2".into(),
        degree: 8,
        alpha: "(1 2 3 4 5 6 7)".into(),
        beta: "(8 3 4 1 5 6)".into(),
        expected: Expected {
            commutator: Some("(1 5)(2 6)(3 4)(7 8)".into()),
            group_order: Some(BigUint::from(336u32)),
            transitive: Some(true),
            primitive: Some(true),
            curve_genus: Some(3),
            fibre_genus: Some(33),
            chi: Some(4),
            k_squared: Some(32),
            c2: Some(16),
            nodes: Some(16),
            delta_gamma: Some(4),
            valid: Some(true),
            parse_error: false,
        },
        notes: vec![
            "alpha corrected from the printed (1, 2, 3, 3, 5, 6, 7), which repeats 3; \
             the 7-cycle (1 2 3 4 5 6 7) reproduces the stated commutator"
                .into(),
            "the identification G = PGL(2, 7) is not checked; only |G| = 336, \
             transitivity and primitivity are"
                .into(),
        ],
    }
}

fn example_two_as_printed() -> ExampleRecord {
    ExampleRecord {
        id: ExampleId::TwoAsPrinted,
        name: "example-2-as-printed".into(),
        degree: 8,
        alpha: "(1, 2, 3, 3, 5, 6, 7)".into(),
        beta: "(8, 3, 4, 1, 5, 6)".into(),
        expected: Expected {
            parse_error: true,
            ..Expected::default()
        },
        notes: vec!["literal text: 3 is repeated, so alpha is not a permutation".into()],
    }
}

/// `α = (1 2)(3 4)⋯(2n−1 2n)`.
pub fn family_alpha(n: usize) -> Permutation {
    let d = 4 * n + 1;
    let cycles: Vec<Vec<usize>> = (1..=n).map(|i| vec![2 * i - 1, 2 * i]).collect();
    Permutation::from_cycles(d, &cycles).expect("valid cycles")
}

/// `γ = (1 2n+1)`.
pub fn family_gamma(n: usize) -> Permutation {
    Permutation::from_cycles(4 * n + 1, &[vec![1, 2 * n + 1]]).expect("valid cycle")
}

/// `δ = (2, 2n+2, 3, 2n+3, …, 2n, 4n, 4n+1)`: the points `2..=2n`
/// interleaved with `2n+2..=4n`, closed by `4n+1`.
pub fn family_delta(n: usize) -> Permutation {
    let mut cycle = Vec::with_capacity(4 * n - 1);
    for i in 2..=2 * n {
        cycle.push(i);
        cycle.push(2 * n + i);
    }
    cycle.push(4 * n + 1);
    Permutation::from_cycles(4 * n + 1, &[cycle]).expect("valid cycle")
}

/// `β = γδ`.
pub fn family_beta(n: usize) -> Permutation {
    family_gamma(n).compose(&family_delta(n)).expect("same degree")
}

fn example_three(n: usize) -> Result<ExampleRecord, CorpusError> {
    if n < 2 {
        return Err(CorpusError::FamilyIndexTooSmall(n));
    }
    let d = 4 * n + 1;
    let n64 = n as u64;
    let commutator: String = (1..=2 * n).map(|i| format!("({} {})", 2 * i - 1, 2 * i)).collect();
    Ok(ExampleRecord {
        id: ExampleId::Three(n),
        name: format!("example-3-n{n}"),
        degree: d,
        alpha: family_alpha(n).to_string(),
        beta: family_beta(n).to_string(),
        expected: Expected {
            commutator: Some(commutator),
            group_order: None,
            transitive: Some(true),
            primitive: Some(true),
            curve_genus: Some(n64 + 1),
            fibre_genus: Some(2 * n64 * d as u64 + 1),
            chi: Some(n64 * n64),
            k_squared: Some(8 * n64 * n64),
            c2: Some(4 * n64 * n64),
            nodes: Some(4 * n64 * n64),
            delta_gamma: Some(2 * n64),
            valid: Some(true),
            parse_error: false,
        },
        notes: vec![format!(
            "beta's long cycle read as 2, {}, 3, {}, ..., {}, {}, {}",
            2 * n + 2,
            2 * n + 3,
            2 * n,
            4 * n,
            4 * n + 1
        )],
    })
}

/// Checks the family identities `β = γδ = δγ` and `β^(4n−1) = γ`.
pub fn family_identities_hold(n: usize) -> Result<bool, PermError> {
    let (g, dl, b) = (family_gamma(n), family_delta(n), family_beta(n));
    Ok(g.compose(&dl)? == b && dl.compose(&g)? == b && b.pow(4 * n as u64 - 1) == g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!("1".parse::<ExampleId>(), Ok(ExampleId::One));
        assert_eq!("2-as-printed".parse::<ExampleId>(), Ok(ExampleId::TwoAsPrinted));
        assert_eq!("3@4".parse::<ExampleId>(), Ok(ExampleId::Three(4)));
        assert_eq!("3@1".parse::<ExampleId>(), Err(CorpusError::FamilyIndexTooSmall(1)));
        assert!(matches!("4".parse::<ExampleId>(), Err(CorpusError::UnknownExample(_))));
        for id in all_examples() {
            assert_eq!(id.to_string().parse::<ExampleId>(), Ok(id));
        }
    }

    #[test]
    fn family_n2_matches_hand_evaluation() {
        assert_eq!(family_alpha(2).to_string(), "(1 2)(3 4)");
        assert_eq!(family_beta(2).to_string(), "(1 5)(2 6 3 7 4 8 9)");
    }

    #[test]
    fn whole_corpus_matches() {
        for id in all_examples() {
            let rec = ExampleRecord::build(id).unwrap();
            let check = rec.check();
            assert!(check.matches(), "{id}: {:?}", check.mismatches);
        }
    }

    #[test]
    fn as_printed_is_rejected() {
        let check = ExampleRecord::build(ExampleId::TwoAsPrinted).unwrap().check();
        assert!(check.report.is_none());
        assert!(check.parse_error.unwrap().contains("point 3 appears twice"));
    }
}
