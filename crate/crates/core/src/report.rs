//! Certificate JSON lines and verification reports.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{bounds_report, BoundsReport};
use crate::cover::{analyze, CoverError, CoverInvariants, MonodromyPair};
use crate::search::{canonical_form, validate_certificate, Certificate, DedupMode};

/// One certificate as a flat JSON object. Field names are part of the file
/// format. Fields that do not apply to an invalid pair are `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub degree: usize,
    pub alpha: String,
    pub beta: String,
    pub commutator: String,
    pub curve_genus: u64,
    pub fibre_genus: Option<u64>,
    pub chi: Option<u64>,
    pub k_squared: Option<u64>,
    pub c2: Option<u64>,
    pub nodes: Option<u64>,
    pub delta_gamma: Option<u64>,
    #[serde(serialize_with = "ser_biguint", deserialize_with = "de_biguint")]
    pub group_order: BigUint,
    pub transitive: bool,
    pub primitive: bool,
    pub reduced: bool,
    pub valid: bool,
}

// Group orders overflow every fixed-width integer once d > 34, so they are
// written as arbitrary-precision JSON numbers.
fn ser_biguint<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    let num = serde_json::Number::from_str(&n.to_str_radix(10)).map_err(serde::ser::Error::custom)?;
    num.serialize(s)
}

fn de_biguint<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let num = serde_json::Number::deserialize(d)?;
    BigUint::from_str(&num.to_string()).map_err(serde::de::Error::custom)
}

impl CertificateRecord {
    pub fn new(pair: &MonodromyPair, inv: &CoverInvariants) -> Self {
        Self {
            degree: inv.degree,
            alpha: pair.alpha.to_string(),
            beta: pair.beta.to_string(),
            commutator: inv.commutator.to_string(),
            curve_genus: inv.curve_genus,
            fibre_genus: inv.fibre_genus,
            chi: inv.chi,
            k_squared: inv.k_squared,
            c2: inv.c2,
            nodes: inv.nodes,
            delta_gamma: inv.delta_gamma,
            group_order: inv.group_order.clone(),
            transitive: inv.transitive,
            primitive: inv.primitive,
            reduced: inv.reduced_ramification,
            valid: inv.valid,
        }
    }

    pub fn from_certificate(c: &Certificate) -> Self {
        Self::new(&c.pair, &c.invariants)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }

    /// Rebuilds the pair and checks every stored field against a fresh
    /// analysis. Returns the certificate when it checks out.
    pub fn revalidate(&self) -> Result<Option<Certificate>, CoverError> {
        let pair = MonodromyPair::parse(&self.alpha, &self.beta, self.degree)?;
        let invariants = analyze(&pair);
        if CertificateRecord::new(&pair, &invariants) != *self {
            return Ok(None);
        }
        let cert = Certificate {
            canonical_form: canonical_form(&pair, DedupMode::Off).expect("off mode never fails"),
            pair,
            invariants,
        };
        Ok(validate_certificate(&cert).then_some(cert))
    }
}

/// Full analysis of one pair: certificate fields plus the bounds report.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    #[serde(flatten)]
    pub record: CertificateRecord,
    pub ramification_profile: Vec<usize>,
    pub block_system: Option<Vec<Vec<usize>>>,
    pub bounds: Option<BoundsReport>,
    pub notes: Vec<String>,
}

impl VerifyReport {
    /// `stable` is forwarded to the bounds report, which is only produced
    /// when the fibration invariants exist (`g_C ≥ 2`).
    pub fn build(pair: &MonodromyPair, stable: bool) -> Self {
        let inv = analyze(pair);
        let bounds = match (inv.fibre_genus, inv.chi, inv.k_squared, inv.c2) {
            (Some(g), Some(chi), Some(k2), Some(c2)) => Some(bounds_report(
                g as i64, chi as i64, k2 as i64, c2 as i64, stable,
            )),
            _ => None,
        };
        let mut notes = Vec::new();
        if !inv.transitive {
            notes.push("group is not transitive: the cover is disconnected".into());
        } else if !inv.primitive {
            notes.push("group is imprimitive: the cover factors through an intermediate cover".into());
        }
        if inv.profile.lengths.is_empty() {
            notes.push("commutator is trivial: the cover is unramified".into());
        } else if !inv.reduced_ramification {
            notes.push(format!(
                "commutator has a cycle of length > 2 (profile {:?}): ramification is not simple",
                inv.profile.lengths
            ));
        }
        Self {
            record: CertificateRecord::new(pair, &inv),
            ramification_profile: inv.profile.lengths.clone(),
            block_system: pair.group().find_block_system().map(|b| b.blocks),
            bounds,
            notes,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.record.valid
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.record;
        writeln!(f, "degree        {}", r.degree)?;
        writeln!(f, "alpha         {}", r.alpha)?;
        writeln!(f, "beta          {}", r.beta)?;
        writeln!(f, "[alpha,beta]  {}", r.commutator)?;
        writeln!(f, "|G|           {}", r.group_order)?;
        writeln!(f, "transitive    {}", r.transitive)?;
        writeln!(f, "primitive     {}", r.primitive)?;
        if let Some(blocks) = &self.block_system {
            writeln!(f, "blocks        {blocks:?}")?;
        }
        writeln!(f, "reduced       {}", r.reduced)?;
        writeln!(f, "g(C)          {}", r.curve_genus)?;
        writeln!(f, "g(F)          {}", opt(r.fibre_genus))?;
        writeln!(f, "chi           {}", opt(r.chi))?;
        writeln!(f, "K^2           {}", opt(r.k_squared))?;
        writeln!(f, "c2            {}", opt(r.c2))?;
        writeln!(f, "nodes         {}", opt(r.nodes))?;
        writeln!(f, "Delta.Gamma   {}", opt(r.delta_gamma))?;
        writeln!(f, "valid         {}", r.valid)?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        if let Some(b) = &self.bounds {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}
