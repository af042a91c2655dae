//! Inequalities satisfied by a semistable fibration over an elliptic curve
//! with exactly one singular fibre.
//!
//! All comparisons are done in exact integer arithmetic: fractional bounds
//! are cleared of denominators before comparing.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Pass,
    Fail,
    /// The clause only applies to stable fibrations.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    /// Roman clause label, `i` through `vi`, or `g>=4` for the closing clause.
    pub clause: &'static str,
    pub statement: String,
    pub status: BoundStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub fibre_genus: i64,
    pub chi: i64,
    pub k_squared: i64,
    pub c2: i64,
    pub stable: bool,
    pub entries: Vec<BoundEntry>,
    pub notes: Vec<String>,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status != BoundStatus::Fail)
    }

    pub fn entry(&self, clause: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.clause == clause)
    }
}

fn status(holds: bool) -> BoundStatus {
    if holds {
        BoundStatus::Pass
    } else {
        BoundStatus::Fail
    }
}

/// Evaluates every clause for fibre genus `g` and surface invariants
/// `χ`, `K²`, `c₂`. Stable-only clauses are marked not applicable when
/// `stable` is false.
pub fn bounds_report(g: i64, chi: i64, k_squared: i64, c2: i64, stable: bool) -> BoundsReport {
    let stable_only = |holds: bool| {
        if stable {
            status(holds)
        } else {
            BoundStatus::NotApplicable
        }
    };
    let mut entries = vec![
        BoundEntry {
            clause: "i",
            statement: format!("K^2 < 2g-2: {k_squared} < {}", 2 * g - 2),
            status: status(k_squared < 2 * g - 2),
        },
        BoundEntry {
            // χ < g/2  <=>  2χ < g
            clause: "ii",
            statement: format!("chi < g/2: {chi} < {}/2", g),
            status: status(2 * chi < g),
        },
        BoundEntry {
            clause: "iii",
            statement: format!("c2 < 4g+2: {c2} < {}", 4 * g + 2),
            status: status(c2 < 4 * g + 2),
        },
        BoundEntry {
            clause: "iv",
            statement: format!("stable => c2 <= 3g-3: {c2} <= {}", 3 * g - 3),
            status: stable_only(c2 <= 3 * g - 3),
        },
    ];

    let extremal = stable && c2 == 3 * g - 3;
    entries.push(BoundEntry {
        clause: "v",
        statement: "stable and c2 = 3g-3 => q = 1 and the fibration is the Albanese map".into(),
        // a geometric conclusion; only its hypothesis can be checked here
        status: BoundStatus::NotApplicable,
    });

    // 2 < 12χ/5 < g-1  <=>  10 < 12χ < 5(g-1)
    entries.push(BoundEntry {
        clause: "vi",
        statement: format!("stable => 2 < 12chi/5 < g-1: 10 < {} < {}", 12 * chi, 5 * (g - 1)),
        status: stable_only(10 < 12 * chi && 12 * chi < 5 * (g - 1)),
    });
    entries.push(BoundEntry {
        clause: "g>=4",
        statement: format!("stable => g >= 4: {g} >= 4"),
        status: stable_only(g >= 4),
    });

    let mut notes = Vec::new();
    if extremal {
        notes.push(format!(
            "c2 = 3g-3 = {c2} with a stable fibration: then q = 1 and the fibration is the \
             Albanese map (not checked; no Albanese computation is performed)"
        ));
    }
    if stable && g == 4 {
        let mut note = "g = 4 with a stable fibration and one singular fibre forces chi = 1 and \
                        4 <= K^2 <= 5 (informational)"
            .to_string();
        if !(4..=5).contains(&k_squared) || chi != 1 {
            note.push_str(&format!("; the input has chi = {chi}, K^2 = {k_squared}"));
        }
        notes.push(note);
    }
    if 12 * chi != k_squared + c2 {
        notes.push(format!(
            "Noether's formula 12chi = K^2 + c2 fails for the input: {} != {}",
            12 * chi,
            k_squared + c2
        ));
    }

    BoundsReport {
        fibre_genus: g,
        chi,
        k_squared,
        c2,
        stable,
        entries,
        notes,
    }
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundStatus::Pass => "pass",
            BoundStatus::Fail => "FAIL",
            BoundStatus::NotApplicable => "n/a",
        })
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "bounds for g={} chi={} K^2={} c2={} ({})",
            self.fibre_genus,
            self.chi,
            self.k_squared,
            self.c2,
            if self.stable { "stable" } else { "semistable" }
        )?;
        for e in &self.entries {
            writeln!(f, "  [{:>4}] ({}) {}", e.status, e.clause, e.statement)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
