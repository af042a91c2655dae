//! From a monodromy pair `(α, β)` to the invariants of the cover `f: C -> E`
//! branched over one point and of the difference fibration `C × C -> E`.

use num_bigint::BigUint;
use thiserror::Error;

use crate::group::GeneratedGroup;
use crate::perm::{parse_cycles, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("ramification sum {0} is odd; the profile cannot come from a commutator")]
    OddRamification(usize),
    #[error("curve genus {0} < 2: the construction needs a non-étale cover")]
    GenusTooSmall(u64),
    #[error("degree {0} < 2")]
    DegreeTooSmall(usize),
    #[error("node count g - g(N) + c - 1 = {0} is negative")]
    NegativeNodeCount(i64),
    #[error("invalid Beauville input: {0}")]
    InvalidBeauvilleInput(&'static str),
}

/// Images of the two free generators of `π₁(E − {O})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonodromyPair {
    pub alpha: Permutation,
    pub beta: Permutation,
}

impl MonodromyPair {
    pub fn new(alpha: Permutation, beta: Permutation) -> Result<Self, CoverError> {
        if alpha.degree() != beta.degree() {
            return Err(PermError::DegreeMismatch {
                left: alpha.degree(),
                right: beta.degree(),
            }
            .into());
        }
        Ok(Self { alpha, beta })
    }

    pub fn parse(alpha: &str, beta: &str, degree: usize) -> Result<Self, CoverError> {
        Self::new(parse_cycles(alpha, degree)?, parse_cycles(beta, degree)?)
    }

    pub fn degree(&self) -> usize {
        self.alpha.degree()
    }

    pub fn commutator(&self) -> Permutation {
        Permutation::commutator(&self.alpha, &self.beta).expect("degrees checked at construction")
    }

    pub fn group(&self) -> GeneratedGroup {
        GeneratedGroup::new(vec![self.alpha.clone(), self.beta.clone()])
            .expect("degrees checked at construction")
    }

    /// `(σασ⁻¹, σβσ⁻¹)`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Result<Self, CoverError> {
        Ok(Self {
            alpha: self.alpha.conjugate_by(sigma)?,
            beta: self.beta.conjugate_by(sigma)?,
        })
    }
}

/// Nontrivial cycle lengths of the commutator, sorted descending. Each
/// cycle is one ramification point over the branch point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationProfile {
    pub degree: usize,
    pub lengths: Vec<usize>,
}

impl RamificationProfile {
    pub fn new(degree: usize, mut lengths: Vec<usize>) -> Self {
        debug_assert!(lengths.iter().all(|&l| l >= 2));
        debug_assert!(lengths.iter().sum::<usize>() <= degree);
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Self { degree, lengths }
    }

    pub fn of_permutation(p: &Permutation) -> Self {
        let lengths = p.cycle_type().into_iter().filter(|&l| l >= 2).collect();
        Self::new(p.degree(), lengths)
    }

    /// `Σ (ℓᵢ − 1)`, the degree of the ramification divisor.
    pub fn ramification_sum(&self) -> usize {
        self.lengths.iter().map(|l| l - 1).sum()
    }

    pub fn ramification_points(&self) -> usize {
        self.lengths.len()
    }

    /// Simple ramification: nonempty, and every cycle is a transposition.
    pub fn is_reduced(&self) -> bool {
        !self.lengths.is_empty() && self.lengths.iter().all(|&l| l == 2)
    }

    /// Riemann-Hurwitz over a genus-one base: `2g_C − 2 = Σ (ℓᵢ − 1)`.
    pub fn curve_genus(&self) -> Result<u64, CoverError> {
        let r = self.ramification_sum();
        if r % 2 != 0 {
            return Err(CoverError::OddRamification(r));
        }
        Ok(1 + (r / 2) as u64)
    }
}

pub fn ramification_profile(m: &MonodromyPair) -> RamificationProfile {
    RamificationProfile::of_permutation(&m.commutator())
}

/// Genus of the general fibre of `C × C -> E`, `(a, b) ↦ f(a) − f(b)`:
/// `2(g_C − 1)d + 1`.
pub fn fibre_genus(curve_genus: u64, degree: usize) -> Result<u64, CoverError> {
    if curve_genus < 2 {
        return Err(CoverError::GenusTooSmall(curve_genus));
    }
    if degree < 2 {
        return Err(CoverError::DegreeTooSmall(degree));
    }
    Ok(2 * (curve_genus - 1) * degree as u64 + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceInvariants {
    pub chi: u64,
    pub k_squared: u64,
    pub c2: u64,
}

/// `χ`, `K²` and `c₂` of `C × C`.
pub fn surface_invariants(curve_genus: u64) -> Result<SurfaceInvariants, CoverError> {
    if curve_genus < 2 {
        return Err(CoverError::GenusTooSmall(curve_genus));
    }
    let h = (curve_genus - 1) * (curve_genus - 1);
    Ok(SurfaceInvariants {
        chi: h,
        k_squared: 8 * h,
        c2: 4 * h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingularFibre {
    /// Nodes of `F₀`: one for each pair of ramification points.
    pub nodes: u64,
    /// Intersection number of the diagonal with the residual part `Γ`.
    pub delta_gamma: u64,
}

/// Singular fibre over the branch point, assuming simple ramification.
pub fn singular_fibre_stats(curve_genus: u64) -> Result<SingularFibre, CoverError> {
    if curve_genus < 2 {
        return Err(CoverError::GenusTooSmall(curve_genus));
    }
    let r = 2 * curve_genus - 2;
    Ok(SingularFibre {
        nodes: r * r,
        delta_gamma: r,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeauvilleInput {
    pub fibre_genus: i64,
    pub normalization_genus: i64,
    pub component_count: i64,
}

/// Double points of a reducible semistable fibre: `g − g(N) + c − 1`.
pub fn beauville_node_count(b: &BeauvilleInput) -> Result<i64, CoverError> {
    if b.fibre_genus < 0 || b.normalization_genus < 0 {
        return Err(CoverError::InvalidBeauvilleInput("genera must be non-negative"));
    }
    if b.component_count < 1 {
        return Err(CoverError::InvalidBeauvilleInput("at least one component"));
    }
    let n = b.fibre_genus - b.normalization_genus + b.component_count - 1;
    if n < 0 {
        return Err(CoverError::NegativeNodeCount(n));
    }
    Ok(n)
}

/// Everything derived from one monodromy pair. Fields that need `g_C ≥ 2`
/// (or simple ramification, for the singular fibre) are `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInvariants {
    pub degree: usize,
    pub commutator: Permutation,
    pub profile: RamificationProfile,
    pub curve_genus: u64,
    pub fibre_genus: Option<u64>,
    pub chi: Option<u64>,
    pub k_squared: Option<u64>,
    pub c2: Option<u64>,
    pub nodes: Option<u64>,
    pub delta_gamma: Option<u64>,
    pub ramification_points: u64,
    pub group_order: BigUint,
    pub transitive: bool,
    pub primitive: bool,
    pub reduced_ramification: bool,
    pub valid: bool,
}

pub fn analyze(m: &MonodromyPair) -> CoverInvariants {
    let commutator = m.commutator();
    let profile = RamificationProfile::of_permutation(&commutator);
    let curve_genus = profile
        .curve_genus()
        .expect("commutators are even permutations");
    let group = m.group();
    let transitive = group.is_transitive();
    let primitive = transitive && group.is_primitive();
    let reduced = profile.is_reduced();
    let surface = surface_invariants(curve_genus).ok();
    let fibre = if reduced {
        singular_fibre_stats(curve_genus).ok()
    } else {
        None
    };
    CoverInvariants {
        degree: m.degree(),
        fibre_genus: fibre_genus(curve_genus, m.degree()).ok(),
        chi: surface.map(|s| s.chi),
        k_squared: surface.map(|s| s.k_squared),
        c2: surface.map(|s| s.c2),
        nodes: fibre.map(|f| f.nodes),
        delta_gamma: fibre.map(|f| f.delta_gamma),
        ramification_points: profile.ramification_points() as u64,
        group_order: group.group_order(),
        transitive,
        primitive,
        reduced_ramification: reduced,
        valid: transitive && primitive && reduced && curve_genus >= 2,
        curve_genus,
        commutator,
        profile,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: &str, b: &str, d: usize) -> MonodromyPair {
        MonodromyPair::parse(a, b, d).unwrap()
    }

    #[test]
    fn profiles() {
        assert_eq!(ramification_profile(&pair("(1 2 3)", "(2 3 4)", 4)).lengths, vec![2, 2]);
        assert!(ramification_profile(&pair("(1 2 3)", "(1 2 3)", 4)).lengths.is_empty());
        assert_eq!(
            ramification_profile(&pair("(1 2 3 4 5 6 7)", "(8 3 4 1 5 6)", 8)).lengths,
            vec![2, 2, 2, 2]
        );
    }

    #[test]
    fn reducedness() {
        assert!(RamificationProfile::new(4, vec![2, 2]).is_reduced());
        assert!(!RamificationProfile::new(3, vec![3]).is_reduced());
        assert!(!RamificationProfile::new(3, vec![]).is_reduced());
    }

    #[test]
    fn genus_from_profile() {
        assert_eq!(RamificationProfile::new(4, vec![2, 2]).curve_genus(), Ok(2));
        assert_eq!(RamificationProfile::new(4, vec![]).curve_genus(), Ok(1));
        assert_eq!(RamificationProfile::new(8, vec![2, 2, 2, 2]).curve_genus(), Ok(3));
        assert_eq!(RamificationProfile::new(5, vec![3, 2]).curve_genus(), Err(CoverError::OddRamification(3)));
    }

    #[test]
    fn fibre_genus_values() {
        assert_eq!(fibre_genus(2, 4), Ok(9));
        assert_eq!(fibre_genus(3, 8), Ok(33));
        for n in 2..8u64 {
            let d = 4 * n + 1;
            assert_eq!(fibre_genus(n + 1, d as usize), Ok(2 * n * d + 1));
        }
        assert_eq!(fibre_genus(1, 4), Err(CoverError::GenusTooSmall(1)));
        assert_eq!(fibre_genus(2, 1), Err(CoverError::DegreeTooSmall(1)));
    }

    #[test]
    fn surface_and_fibre() {
        let s = surface_invariants(2).unwrap();
        assert_eq!((s.chi, s.k_squared, s.c2), (1, 8, 4));
        let s = surface_invariants(3).unwrap();
        assert_eq!((s.chi, s.k_squared, s.c2), (4, 32, 16));
        assert!(surface_invariants(1).is_err());
        assert_eq!(singular_fibre_stats(2), Ok(SingularFibre { nodes: 4, delta_gamma: 2 }));
        assert_eq!(singular_fibre_stats(3), Ok(SingularFibre { nodes: 16, delta_gamma: 4 }));
        for g in 2..40 {
            let s = surface_invariants(g).unwrap();
            assert_eq!(12 * s.chi, s.k_squared + s.c2);
            assert_eq!(singular_fibre_stats(g).unwrap().nodes, s.c2);
        }
    }

    #[test]
    fn beauville() {
        let b = |g, n, c| BeauvilleInput {
            fibre_genus: g,
            normalization_genus: n,
            component_count: c,
        };
        assert_eq!(beauville_node_count(&b(3, 1, 3)), Ok(4));
        assert_eq!(beauville_node_count(&b(2, 2, 1)), Ok(0));
        assert_eq!(beauville_node_count(&b(2, 5, 1)), Err(CoverError::NegativeNodeCount(-3)));
        assert!(beauville_node_count(&b(2, 0, 0)).is_err());
        // g(N) = g - n + c - 1
        for c in 1..6 {
            assert_eq!(beauville_node_count(&b(9, 9 - 4 + c - 1, c)), Ok(4));
        }
    }

    #[test]
    fn analyze_example_one() {
        let inv = analyze(&pair("(1 2 3)", "(2 3 4)", 4));
        assert!(inv.valid);
        assert_eq!(inv.commutator.to_string(), "(1 4)(2 3)");
        assert_eq!(inv.curve_genus, 2);
        assert_eq!(inv.fibre_genus, Some(9));
        assert_eq!((inv.chi, inv.k_squared, inv.c2), (Some(1), Some(8), Some(4)));
        assert_eq!((inv.nodes, inv.delta_gamma), (Some(4), Some(2)));
        assert_eq!(inv.group_order, BigUint::from(12u32));
        assert_eq!(inv.ramification_points, 2);
    }

    #[test]
    fn analyze_trivial_pair() {
        let inv = analyze(&pair("(1 2)", "(1 2)", 2));
        assert!(!inv.valid);
        assert!(inv.transitive && inv.primitive);
        assert!(!inv.reduced_ramification);
        assert_eq!(inv.curve_genus, 1);
        assert_eq!(inv.fibre_genus, None);
        assert_eq!(inv.nodes, None);
    }

    #[test]
    fn analyze_example_three_n2() {
        let inv = analyze(&pair("(1 2)(3 4)", "(1 5)(2 6 3 7 4 8 9)", 9));
        assert!(inv.valid);
        assert_eq!(inv.curve_genus, 3);
        assert_eq!(inv.fibre_genus, Some(37));
    }

    #[test]
    fn non_reduced_profile_keeps_surface_data() {
        // commutator is a 3-cycle: genus 2 but not simple ramification
        let m = pair("(1 2)", "(2 3)", 3);
        let inv = analyze(&m);
        assert_eq!(inv.profile.lengths, vec![3]);
        assert_eq!(inv.curve_genus, 2);
        assert!(inv.chi.is_some() && inv.nodes.is_none());
        assert!(!inv.valid);
    }
}
