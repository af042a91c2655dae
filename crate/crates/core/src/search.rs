//! Exhaustive search for monodromy pairs whose commutator is a product of
//! disjoint transpositions and whose group is primitive.
//!
//! `α` runs over one representative per conjugacy class of `S_d` (one per
//! partition of `d`), `β` over all of `S_d`. Work is cut into chunks by
//! `(α class, first two images of β)`; chunks are independent and their
//! results are merged and, when asked, sorted by canonical form.

use std::collections::{BTreeMap, HashSet};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::{analyze, CoverInvariants, MonodromyPair};
use crate::group::BlockSystem;
use crate::perm::{write_cycle_text, Permutation};

/// Largest degree searched without an `α` cycle-type filter.
pub const DEFAULT_DEGREE_CEILING: usize = 9;
/// Largest degree for which full `S_d` canonicalization is allowed.
pub const FULL_DEDUP_MAX_DEGREE: usize = 8;
/// Hard limit from the byte-sized point tables used by the search core.
pub const MAX_SEARCH_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("number of transpositions must be even and at least 2, got {0}")]
    OddOrSmallTarget(usize),
    #[error("{k} disjoint transpositions need {needed} points but the degree is {degree}")]
    TooManyTranspositions { k: usize, needed: usize, degree: usize },
    #[error("empty transposition range {min}..={max}")]
    EmptyRange { min: usize, max: usize },
    #[error("degree {degree} exceeds {ceiling}; supply an alpha cycle-type filter")]
    NeedsAlphaFilter { degree: usize, ceiling: usize },
    #[error("degree {0} is above the search limit")]
    DegreeTooLarge(usize),
    #[error("alpha cycle type {0:?} is not a partition of the degree")]
    BadAlphaFilter(Vec<usize>),
    #[error("full deduplication is limited to degree <= {FULL_DEDUP_MAX_DEGREE}, got {0}")]
    FullDedupDegree(usize),
    #[error("worker count must be positive")]
    ZeroWorkers,
    #[error("could not start worker pool: {0}")]
    Pool(String),
    #[error("invalid search config: {0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DedupMode {
    Off,
    #[default]
    Centralizer,
    Full,
}

/// Number of disjoint transpositions required in the commutator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranspositionTarget {
    Exact(usize),
    /// Every even count in `min..=max`.
    Range { min: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub degree: usize,
    pub target: TranspositionTarget,
    pub alpha_cycle_type: Option<Vec<usize>>,
    pub max_results: Option<usize>,
    pub dedup: DedupMode,
    pub worker_count: usize,
    pub deterministic_order: bool,
    /// Also collect pairs that fail only primitivity.
    pub near_misses: bool,
}

impl SearchConfig {
    pub fn new(degree: usize, k: usize) -> Self {
        Self {
            degree,
            target: TranspositionTarget::Exact(k),
            alpha_cycle_type: None,
            max_results: None,
            dedup: DedupMode::default(),
            worker_count: 1,
            deterministic_order: true,
            near_misses: false,
        }
    }

    /// Even transposition counts the commutator may have. Errors if the
    /// configuration cannot produce any certificate.
    pub fn allowed_transpositions(&self) -> Result<Vec<usize>, SearchError> {
        let d = self.degree;
        let allowed = match self.target {
            TranspositionTarget::Exact(k) => {
                if k < 2 || k % 2 != 0 {
                    return Err(SearchError::OddOrSmallTarget(k));
                }
                if 2 * k > d {
                    return Err(SearchError::TooManyTranspositions { k, needed: 2 * k, degree: d });
                }
                vec![k]
            }
            TranspositionTarget::Range { min, max } => {
                let ks: Vec<usize> = (min.max(2)..=max).filter(|k| k % 2 == 0 && 2 * k <= d).collect();
                if ks.is_empty() {
                    return Err(SearchError::EmptyRange { min, max });
                }
                ks
            }
        };
        Ok(allowed)
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if self.worker_count == 0 {
            return Err(SearchError::ZeroWorkers);
        }
        if self.degree > MAX_SEARCH_DEGREE {
            return Err(SearchError::DegreeTooLarge(self.degree));
        }
        self.allowed_transpositions()?;
        if let Some(ct) = &self.alpha_cycle_type {
            if ct.iter().sum::<usize>() != self.degree || ct.contains(&0) {
                return Err(SearchError::BadAlphaFilter(ct.clone()));
            }
        } else if self.degree > DEFAULT_DEGREE_CEILING {
            return Err(SearchError::NeedsAlphaFilter {
                degree: self.degree,
                ceiling: DEFAULT_DEGREE_CEILING,
            });
        }
        if self.dedup == DedupMode::Full && self.degree > FULL_DEDUP_MAX_DEGREE {
            return Err(SearchError::FullDedupDegree(self.degree));
        }
        Ok(())
    }
}

/// A valid monodromy pair with its analysis and canonical text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub pair: MonodromyPair,
    pub invariants: CoverInvariants,
    pub canonical_form: String,
}

impl Certificate {
    /// Analyzes `pair`; `None` unless all validity predicates hold.
    pub fn issue(pair: MonodromyPair, mode: DedupMode) -> Option<Self> {
        let invariants = analyze(&pair);
        if !invariants.valid {
            return None;
        }
        let canonical_form = canonical_form(&pair, mode).ok()?;
        Some(Self {
            pair,
            invariants,
            canonical_form,
        })
    }
}

/// True iff re-analyzing the pair reproduces the stored invariants exactly
/// and the pair is transitive, primitive, simply ramified with `g_C ≥ 2`.
pub fn validate_certificate(c: &Certificate) -> bool {
    let fresh = analyze(&c.pair);
    fresh == c.invariants
        && fresh.transitive
        && fresh.primitive
        && fresh.reduced_ramification
        && fresh.curve_genus >= 2
        && fresh.valid
}

/// A pair that passes everything except primitivity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearMiss {
    pub pair: MonodromyPair,
    pub invariants: CoverInvariants,
    pub canonical_form: String,
    pub blocks: BlockSystem,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub pairs_scanned: u64,
    pub pruned_by_commutator: u64,
    pub intransitive: u64,
    pub imprimitive: u64,
    pub classes_found: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.pairs_scanned += other.pairs_scanned;
        self.pruned_by_commutator += other.pruned_by_commutator;
        self.intransitive += other.intransitive;
        self.imprimitive += other.imprimitive;
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub certificates: Vec<Certificate>,
    pub near_misses: Vec<NearMiss>,
    pub stats: SearchStats,
}

/// All partitions of `d` in reverse lexicographic order, parts descending.
pub fn cycle_types_of_degree(d: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max_part)).rev() {
            prefix.push(part);
            rec(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// The permutation with the given cycle type whose cycles occupy
/// consecutive points, longest first: `[3, 2]` gives `(1 2 3)(4 5)`.
pub fn class_representative(cycle_type: &[usize]) -> Permutation {
    let degree: usize = cycle_type.iter().sum();
    let mut sorted = cycle_type.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut images: Vec<u8> = (0..degree as u8).collect();
    let mut start = 0;
    for &len in &sorted {
        for i in 0..len {
            images[start + i] = (start + (i + 1) % len) as u8;
        }
        start += len;
    }
    Permutation::from_zero_based(&images)
}

/// Every permutation commuting with `p`.
///
/// Built directly from the cycle structure: cycles of equal length may be
/// permuted among themselves and each may be rotated.
pub fn centralizer_elements(p: &Permutation) -> Vec<Permutation> {
    let dec = p.cycle_decomposition();
    let mut cycles: Vec<Vec<usize>> = dec.cycles.clone();
    cycles.extend(dec.fixed_points.iter().map(|&x| vec![x]));
    let mut groups: BTreeMap<usize, Vec<Vec<u8>>> = BTreeMap::new();
    for c in cycles {
        groups
            .entry(c.len())
            .or_default()
            .push(c.iter().map(|&x| (x - 1) as u8).collect());
    }
    let d = p.degree();
    let mut partial: Vec<Vec<u8>> = vec![(0..d as u8).collect()];
    for (len, cs) in &groups {
        let m = cs.len();
        let mut next = Vec::new();
        for arrangement in permutations_of(m) {
            let mut rotations = vec![0usize; m];
            loop {
                for base in &partial {
                    let mut img = base.clone();
                    for (j, cycle) in cs.iter().enumerate() {
                        let target = &cs[arrangement[j]];
                        for t in 0..*len {
                            img[cycle[t] as usize] = target[(t + rotations[j]) % len];
                        }
                    }
                    next.push(img);
                }
                // odometer over rotations
                let mut pos = 0;
                while pos < m {
                    rotations[pos] += 1;
                    if rotations[pos] < *len {
                        break;
                    }
                    rotations[pos] = 0;
                    pos += 1;
                }
                if pos == m {
                    break;
                }
            }
        }
        partial = next;
    }
    partial.iter().map(|img| Permutation::from_zero_based(img)).collect()
}

fn permutations_of(m: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// Advances `v` to the next permutation in lexicographic order; returns
/// false (leaving `v` sorted ascending) after the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn all_permutations(d: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..d as u8).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

fn format_pair(alpha: &str, beta: &str) -> String {
    format!("{alpha} | {beta}")
}

/// `σ p σ⁻¹` on 0-based tables, written into `out`.
fn conjugate_into(p: &[u8], sigma: &[u8], out: &mut [u8]) {
    for (x, &px) in p.iter().enumerate() {
        out[sigma[x] as usize] = sigma[px as usize];
    }
}

/// Canonical text `"α | β"` of a pair under the chosen equivalence.
///
/// * `Off`: the pair's own text.
/// * `Centralizer`: `α` kept, `β` replaced by the least formatted conjugate
///   under the centralizer of `α`.
/// * `Full`: least formatted `(α, β)` under simultaneous conjugation by all
///   of `S_d`; only for `d ≤ 8`.
pub fn canonical_form(pair: &MonodromyPair, mode: DedupMode) -> Result<String, SearchError> {
    Ok(canonical_pair(pair, mode)?.1)
}

/// The canonical representative pair together with its text.
pub fn canonical_pair(
    pair: &MonodromyPair,
    mode: DedupMode,
) -> Result<(MonodromyPair, String), SearchError> {
    let alpha_text = pair.alpha.to_string();
    match mode {
        DedupMode::Off => Ok((pair.clone(), format_pair(&alpha_text, &pair.beta.to_string()))),
        DedupMode::Centralizer => {
            let conjugators: Vec<Vec<u8>> = centralizer_elements(&pair.alpha)
                .iter()
                .map(Permutation::to_zero_based)
                .collect();
            let beta = min_conjugate(&pair.beta.to_zero_based(), &conjugators);
            let beta_perm = Permutation::from_zero_based(&beta);
            let text = format_pair(&alpha_text, &beta_perm.to_string());
            Ok((MonodromyPair::new(pair.alpha.clone(), beta_perm).expect("same degree"), text))
        }
        DedupMode::Full => {
            let d = pair.degree();
            if d > FULL_DEDUP_MAX_DEGREE {
                return Err(SearchError::FullDedupDegree(d));
            }
            let (alpha_min, conjugators) = minimizing_conjugators(&pair.alpha.to_zero_based());
            let beta = min_conjugate(&pair.beta.to_zero_based(), &conjugators);
            let alpha_perm = Permutation::from_zero_based(&alpha_min);
            let beta_perm = Permutation::from_zero_based(&beta);
            let text = format_pair(&alpha_perm.to_string(), &beta_perm.to_string());
            Ok((MonodromyPair::new(alpha_perm, beta_perm).expect("same degree"), text))
        }
    }
}

/// Scans all of `S_d` for the least formatted conjugate of `alpha` and
/// returns it with every `σ` achieving it.
fn minimizing_conjugators(alpha: &[u8]) -> (Vec<u8>, Vec<Vec<u8>>) {
    let d = alpha.len();
    let mut best_text: Option<Vec<u8>> = None;
    let mut best_perm = alpha.to_vec();
    let mut sigmas = Vec::new();
    let mut conj = vec![0u8; d];
    let mut text = Vec::new();
    for sigma in all_permutations(d) {
        conjugate_into(alpha, &sigma, &mut conj);
        write_cycle_text(&conj, &mut text);
        match best_text.as_ref().map(|b| text.as_slice().cmp(b)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => sigmas.push(sigma),
            _ => {
                best_text = Some(text.clone());
                best_perm.copy_from_slice(&conj);
                sigmas.clear();
                sigmas.push(sigma);
            }
        }
    }
    (best_perm, sigmas)
}

/// Least formatted `σ β σ⁻¹` over the given (nonempty) set of `σ`.
fn min_conjugate(beta: &[u8], conjugators: &[Vec<u8>]) -> Vec<u8> {
    let d = beta.len();
    let mut best = beta.to_vec();
    let mut best_text: Vec<u8> = Vec::new();
    let mut conj = vec![0u8; d];
    let mut text = Vec::new();
    for sigma in conjugators {
        conjugate_into(beta, sigma, &mut conj);
        write_cycle_text(&conj, &mut text);
        if best_text.is_empty() || text < best_text {
            std::mem::swap(&mut text, &mut best_text);
            best.copy_from_slice(&conj);
        }
    }
    best
}

/// True iff no conjugator yields a formatted form strictly below `beta`'s.
fn is_min_conjugate(beta: &[u8], conjugators: &[Vec<u8>], scratch: &mut Scratch) -> bool {
    write_cycle_text(beta, &mut scratch.text_a);
    for sigma in conjugators {
        conjugate_into(beta, sigma, &mut scratch.conj);
        write_cycle_text(&scratch.conj, &mut scratch.text_b);
        if scratch.text_b < scratch.text_a {
            return false;
        }
    }
    true
}

struct Scratch {
    conj: Vec<u8>,
    text_a: Vec<u8>,
    text_b: Vec<u8>,
}

/// Per-α-class data shared by all chunks of that class.
struct AlphaClass {
    alpha: Vec<u8>,
    alpha_inv: Vec<u8>,
    /// Conjugators used for deduplication (centralizer, or the `S_d` coset
    /// that minimizes `α` in full mode).
    conjugators: Vec<Vec<u8>>,
    /// In full mode, the least conjugate of `alpha`.
    alpha_min: Vec<u8>,
}

struct Chunk {
    class: usize,
    prefix: [u8; 2],
}

#[derive(Default)]
struct ChunkResult {
    found: Vec<(String, MonodromyPair)>,
    near: Vec<(String, MonodromyPair)>,
    stats: SearchStats,
}

fn inverse_table(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x as usize] = i as u8;
    }
    inv
}

/// Commutator check on raw tables: true iff `[α, β]` moves exactly `2k`
/// points for an allowed `k` and squares to the identity.
#[inline]
fn commutator_passes(
    alpha: &[u8],
    alpha_inv: &[u8],
    beta: &[u8],
    beta_inv: &[u8],
    comm: &mut [u8],
    allowed_moved: &[bool],
) -> bool {
    let mut moved = 0;
    for x in 0..alpha.len() {
        let y = alpha[beta[alpha_inv[beta_inv[x] as usize] as usize] as usize];
        comm[x] = y;
        if y as usize != x {
            moved += 1;
        }
    }
    if !allowed_moved[moved] {
        return false;
    }
    (0..comm.len()).all(|x| comm[comm[x] as usize] as usize == x)
}

fn transitive_raw(alpha: &[u8], beta: &[u8]) -> bool {
    let d = alpha.len();
    let mut seen = [false; MAX_SEARCH_DEGREE];
    let mut stack = [0u8; MAX_SEARCH_DEGREE];
    let mut top = 1;
    seen[0] = true;
    let mut count = 1;
    // The group is finite, so closure under the generators alone suffices.
    while top > 0 {
        top -= 1;
        let x = stack[top] as usize;
        for y in [alpha[x], beta[x]] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack[top] = y;
                top += 1;
                count += 1;
            }
        }
    }
    count == d
}

fn run_chunk(
    cfg: &SearchConfig,
    class: &AlphaClass,
    prefix: [u8; 2],
    allowed_moved: &[bool],
) -> ChunkResult {
    let d = cfg.degree;
    let mut out = ChunkResult::default();
    let mut beta: Vec<u8> = Vec::with_capacity(d);
    beta.extend_from_slice(&prefix);
    beta.extend((0..d as u8).filter(|x| !prefix.contains(x)));
    let mut beta_inv = vec![0u8; d];
    let mut comm = vec![0u8; d];
    let mut scratch = Scratch {
        conj: vec![0u8; d],
        text_a: Vec::new(),
        text_b: Vec::new(),
    };
    loop {
        out.stats.pairs_scanned += 1;
        for (i, &x) in beta.iter().enumerate() {
            beta_inv[x as usize] = i as u8;
        }
        if !commutator_passes(&class.alpha, &class.alpha_inv, &beta, &beta_inv, &mut comm, allowed_moved) {
            out.stats.pruned_by_commutator += 1;
        } else if !transitive_raw(&class.alpha, &beta) {
            out.stats.intransitive += 1;
        } else {
            let pair = MonodromyPair::new(
                Permutation::from_zero_based(&class.alpha),
                Permutation::from_zero_based(&beta),
            )
            .expect("same degree");
            let primitive = pair.group().is_primitive();
            if !primitive {
                out.stats.imprimitive += 1;
            }
            if primitive || cfg.near_misses {
                if let Some(entry) = dedup_entry(cfg.dedup, class, &beta, &pair, &mut scratch) {
                    if primitive {
                        out.found.push(entry);
                    } else {
                        out.near.push(entry);
                    }
                }
            }
        }
        if !next_permutation(&mut beta[2..]) {
            break;
        }
    }
    out
}

/// Canonical text and representative for one surviving pair, or `None` if
/// the pair is a non-canonical duplicate that another chunk will report.
fn dedup_entry(
    mode: DedupMode,
    class: &AlphaClass,
    beta: &[u8],
    pair: &MonodromyPair,
    scratch: &mut Scratch,
) -> Option<(String, MonodromyPair)> {
    match mode {
        DedupMode::Off => {
            Some((format_pair(&pair.alpha.to_string(), &pair.beta.to_string()), pair.clone()))
        }
        DedupMode::Centralizer => {
            // Each centralizer orbit is reported once, by its least member.
            if !is_min_conjugate(beta, &class.conjugators, scratch) {
                return None;
            }
            Some((format_pair(&pair.alpha.to_string(), &pair.beta.to_string()), pair.clone()))
        }
        DedupMode::Full => {
            let beta_min = min_conjugate(beta, &class.conjugators);
            let alpha = Permutation::from_zero_based(&class.alpha_min);
            let beta = Permutation::from_zero_based(&beta_min);
            let text = format_pair(&alpha.to_string(), &beta.to_string());
            Some((text, MonodromyPair::new(alpha, beta).expect("same degree")))
        }
    }
}

fn build_classes(cfg: &SearchConfig) -> Vec<AlphaClass> {
    let types = match &cfg.alpha_cycle_type {
        Some(ct) => {
            let mut ct = ct.clone();
            ct.sort_unstable_by(|a, b| b.cmp(a));
            vec![ct]
        }
        // The identity commutes with everything, so its class never yields
        // a ramified pair.
        None => cycle_types_of_degree(cfg.degree)
            .into_iter()
            .filter(|t| t[0] > 1)
            .collect(),
    };
    types
        .iter()
        .map(|t| {
            let rep = class_representative(t).to_zero_based();
            let (conjugators, alpha_min) = match cfg.dedup {
                DedupMode::Off => (Vec::new(), rep.clone()),
                DedupMode::Centralizer => (
                    centralizer_elements(&Permutation::from_zero_based(&rep))
                        .iter()
                        .map(Permutation::to_zero_based)
                        .collect(),
                    rep.clone(),
                ),
                DedupMode::Full => {
                    let (alpha_min, sigmas) = minimizing_conjugators(&rep);
                    (sigmas, alpha_min)
                }
            };
            AlphaClass {
                alpha_inv: inverse_table(&rep),
                alpha: rep,
                conjugators,
                alpha_min,
            }
        })
        .collect()
}

/// Runs the search. With `deterministic_order` the certificates come back
/// sorted by canonical form, independent of `worker_count`; otherwise in
/// completion order.
pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    cfg.validate()?;
    let start = Instant::now();
    let d = cfg.degree;
    let mut allowed_moved = vec![false; d + 1];
    for k in cfg.allowed_transpositions()? {
        allowed_moved[2 * k] = true;
    }
    let classes = build_classes(cfg);
    let chunks: Vec<Chunk> = (0..classes.len())
        .flat_map(|class| {
            (0..d as u8).flat_map(move |a| {
                (0..d as u8)
                    .filter(move |&b| b != a)
                    .map(move |b| Chunk { class, prefix: [a, b] })
            })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.worker_count)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;

    let process = |chunk: &Chunk| run_chunk(cfg, &classes[chunk.class], chunk.prefix, &allowed_moved);

    let results: Vec<ChunkResult> = if cfg.deterministic_order {
        pool.install(|| chunks.par_iter().map(process).collect())
    } else {
        let (tx, rx) = mpsc::channel();
        pool.install(|| {
            chunks.par_iter().for_each_with(tx, |tx, chunk| {
                let _ = tx.send(process(chunk));
            })
        });
        rx.into_iter().collect()
    };

    let mut stats = SearchStats::default();
    let mut found = Vec::new();
    let mut near = Vec::new();
    for r in results {
        stats.absorb(&r.stats);
        found.extend(r.found);
        near.extend(r.near);
    }
    let found = merge(found, cfg.deterministic_order);
    let near = merge(near, cfg.deterministic_order);

    let mut certificates: Vec<Certificate> = found
        .into_iter()
        .map(|(canonical_form, pair)| {
            let invariants = analyze(&pair);
            debug_assert!(invariants.valid);
            Certificate {
                pair,
                invariants,
                canonical_form,
            }
        })
        .collect();
    stats.classes_found = certificates.len() as u64;
    if let Some(cap) = cfg.max_results {
        certificates.truncate(cap);
    }
    let near_misses = near
        .into_iter()
        .map(|(canonical_form, pair)| {
            let blocks = pair.group().find_block_system().expect("imprimitive and transitive");
            NearMiss {
                invariants: analyze(&pair),
                pair,
                canonical_form,
                blocks,
            }
        })
        .collect();
    stats.elapsed = start.elapsed();
    Ok(SearchOutcome {
        certificates,
        near_misses,
        stats,
    })
}

/// Drops duplicate canonical forms, keeping the first occurrence; sorts
/// when `sorted` is set.
fn merge(entries: Vec<(String, MonodromyPair)>, sorted: bool) -> Vec<(String, MonodromyPair)> {
    if sorted {
        let map: BTreeMap<String, MonodromyPair> = entries.into_iter().rev().collect();
        map.into_iter().collect()
    } else {
        let mut seen = HashSet::new();
        entries.into_iter().filter(|(k, _)| seen.insert(k.clone())).collect()
    }
}
