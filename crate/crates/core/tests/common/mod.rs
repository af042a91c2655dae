//! Brute-force oracles for the integration tests.
//!
//! Everything here works on plain 0-based `Vec<usize>` image tables and
//! shares no code with the library's permutation, group or search paths.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

pub type Table = Vec<usize>;

/// `p ∘ q`: apply `q` first.
pub fn comp(p: &[usize], q: &[usize]) -> Table {
    q.iter().map(|&x| p[x]).collect()
}

pub fn inv(p: &[usize]) -> Table {
    let mut r = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        r[x] = i;
    }
    r
}

pub fn commutator(a: &[usize], b: &[usize]) -> Table {
    comp(&comp(&comp(a, b), &inv(a)), &inv(b))
}

/// Canonical 1-based cycle text, written independently of the library.
pub fn fmt(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// All of `S_d` by recursive insertion (order irrelevant).
pub fn symmetric_group(d: usize) -> Vec<Table> {
    fn rec(d: usize, used: &mut Vec<bool>, cur: &mut Table, out: &mut Vec<Table>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for v in 0..d {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(d, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(d, &mut vec![false; d], &mut Vec::new(), &mut out);
    out
}

pub fn is_transitive(gens: &[Table], d: usize) -> bool {
    let mut seen = vec![false; d];
    seen[0] = true;
    let mut stack = vec![0];
    let invs: Vec<Table> = gens.iter().map(|g| inv(g)).collect();
    while let Some(x) = stack.pop() {
        for g in gens.iter().chain(&invs) {
            if !seen[g[x]] {
                seen[g[x]] = true;
                stack.push(g[x]);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// All partitions of `0..d` into blocks of size `b`.
pub fn equal_partitions(d: usize, b: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(rest: Vec<usize>, b: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = rest[0];
        let others = &rest[1..];
        for combo in combinations(others, b - 1) {
            let mut block = vec![first];
            block.extend(&combo);
            let remaining: Vec<usize> = others.iter().copied().filter(|x| !combo.contains(x)).collect();
            acc.push(block);
            rec(remaining, b, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec((0..d).collect(), b, &mut Vec::new(), &mut out);
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = combinations(&items[1..], k - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, items[0]);
            c
        })
        .collect();
    with.extend(combinations(&items[1..], k));
    with
}

/// Primitivity by testing every nontrivial equal-size partition for
/// invariance under the generators.
pub fn is_primitive_brute(gens: &[Table], d: usize) -> bool {
    if d == 1 {
        return true;
    }
    if !is_transitive(gens, d) {
        return false;
    }
    for b in 2..d {
        if d % b != 0 {
            continue;
        }
        for part in equal_partitions(d, b) {
            let blocks: HashSet<BTreeSet<usize>> =
                part.iter().map(|blk| blk.iter().copied().collect()).collect();
            let invariant = gens.iter().all(|g| {
                blocks
                    .iter()
                    .all(|blk| blocks.contains(&blk.iter().map(|&x| g[x]).collect::<BTreeSet<_>>()))
            });
            if invariant {
                return false;
            }
        }
    }
    true
}

/// Closure size by breadth-first search, `None` beyond `cap`.
pub fn closure_size(gens: &[Table], d: usize, cap: usize) -> Option<usize> {
    let id: Table = (0..d).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = comp(g, x);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return None;
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    Some(seen.len())
}

/// Commutator is exactly `k` disjoint transpositions.
pub fn commutator_is_k_transpositions(a: &[usize], b: &[usize], k: usize) -> bool {
    let c = commutator(a, b);
    let moved: Vec<usize> = (0..c.len()).filter(|&x| c[x] != x).collect();
    moved.len() == 2 * k && moved.iter().all(|&x| c[c[x]] == x)
}

/// Least `(fmt σασ⁻¹, fmt σβσ⁻¹)` over all `σ ∈ S_d`, as `"α | β"`.
pub fn full_canonical(a: &[usize], b: &[usize], sd: &[Table]) -> String {
    let mut best: Option<(String, String)> = None;
    for s in sd {
        let si = inv(s);
        let key = (fmt(&comp(&comp(s, a), &si)), fmt(&comp(&comp(s, b), &si)));
        if best.as_ref().map_or(true, |cur| key < *cur) {
            best = Some(key);
        }
    }
    let (x, y) = best.unwrap();
    format!("{x} | {y}")
}

/// Exhaustive scan of `S_d × S_d`: returns the number of ordered pairs
/// passing all predicates and the set of simultaneous-conjugacy classes.
pub fn exhaustive_classes(d: usize, k: usize) -> (usize, BTreeSet<String>) {
    let sd = symmetric_group(d);
    let mut hits = 0;
    let mut classes = BTreeSet::new();
    for a in &sd {
        for b in &sd {
            if !commutator_is_k_transpositions(a, b, k) {
                continue;
            }
            let gens = [a.clone(), b.clone()];
            if !is_primitive_brute(&gens, d) {
                continue;
            }
            hits += 1;
            classes.insert(full_canonical(a, b, &sd));
        }
    }
    (hits, classes)
}

pub fn random_perm<R: Rng>(rng: &mut R, d: usize) -> Table {
    let mut v: Table = (0..d).collect();
    v.shuffle(rng);
    v
}

/// A random element preserving the blocks `{0..b}, {b..2b}, …`, conjugated
/// by `relabel`.
pub fn random_block_preserving<R: Rng>(rng: &mut R, d: usize, b: usize, relabel: &[usize]) -> Table {
    let m = d / b;
    let outer = random_perm(rng, m);
    let mut p = vec![0; d];
    for blk in 0..m {
        let inner = random_perm(rng, b);
        for i in 0..b {
            p[blk * b + i] = outer[blk] * b + inner[i];
        }
    }
    comp(&comp(relabel, &p), &inv(relabel))
}

/// A random element fixing the set `0..split` setwise, conjugated by `relabel`.
pub fn random_intransitive<R: Rng>(rng: &mut R, d: usize, split: usize, relabel: &[usize]) -> Table {
    let left = random_perm(rng, split);
    let right = random_perm(rng, d - split);
    let p: Table = left.into_iter().chain(right.into_iter().map(|x| x + split)).collect();
    comp(&comp(relabel, &p), &inv(relabel))
}

/// A mixed stream of generator pairs: uniform, block-preserving and
/// intransitive, so both verdicts are well represented.
pub fn random_generator_pair<R: Rng>(rng: &mut R, d: usize) -> (Table, Table) {
    let relabel = random_perm(rng, d);
    let divisors: Vec<usize> = (2..d).filter(|b| d % b == 0).collect();
    match rng.gen_range(0..4) {
        0 | 1 => (random_perm(rng, d), random_perm(rng, d)),
        2 if !divisors.is_empty() => {
            let b = *divisors.choose(rng).unwrap();
            (
                random_block_preserving(rng, d, b, &relabel),
                random_block_preserving(rng, d, b, &relabel),
            )
        }
        _ => {
            let split = rng.gen_range(1..d);
            (
                random_intransitive(rng, d, split, &relabel),
                random_intransitive(rng, d, split, &relabel),
            )
        }
    }
}

pub fn to_library(p: &[usize]) -> monocover::Permutation {
    let images: Vec<usize> = p.iter().map(|x| x + 1).collect();
    monocover::Permutation::from_images(&images).unwrap()
}
