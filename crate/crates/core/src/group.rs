//! The permutation group generated by a finite set of permutations: orbits,
//! block systems, primitivity and order.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;
use thiserror::Error;

use crate::perm::Permutation;

/// Hard cap used by [`GeneratedGroup::enumerate_elements`] callers that have
/// no better bound.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("a group needs at least one generator")]
    NoGenerators,
    #[error("generators have different degrees ({0} and {1})")]
    MixedDegrees(usize, usize),
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("the two points must be distinct")]
    IdenticalPoints,
    #[error("group has more than {cap} elements")]
    CapExceeded { cap: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
}

/// A nontrivial `G`-invariant partition of the points into equal blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }
}

impl GeneratedGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, GroupError> {
        let degree = generators.first().ok_or(GroupError::NoGenerators)?.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::MixedDegrees(degree, g.degree()));
        }
        Ok(Self { degree, generators })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn check_point(&self, point: usize) -> Result<(), GroupError> {
        if point == 0 || point > self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Closure of `{point}` under the generators and their inverses.
    pub fn orbit(&self, point: usize) -> Result<BTreeSet<usize>, GroupError> {
        self.check_point(point)?;
        let inverses: Vec<_> = self.generators.iter().map(Permutation::inverse).collect();
        let mut seen = BTreeSet::from([point]);
        let mut stack = vec![point];
        while let Some(x) = stack.pop() {
            for g in self.generators.iter().chain(&inverses) {
                let y = g.apply(x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        Ok(seen)
    }

    /// All orbits, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.degree + 1];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if assigned[p] {
                continue;
            }
            let orbit = self.orbit(p).expect("point in range");
            for &q in &orbit {
                assigned[q] = true;
            }
            out.push(orbit.into_iter().collect());
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Smallest block of a `G`-invariant block system that contains both
    /// points. Returns every point when only the trivial block qualifies.
    pub fn minimal_block_containing(
        &self,
        a: usize,
        b: usize,
    ) -> Result<BTreeSet<usize>, GroupError> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(GroupError::IdenticalPoints);
        }
        if !self.is_transitive() {
            return Err(GroupError::NotTransitive);
        }
        let classes = self.collapse(a - 1, b - 1);
        let root = classes.find_const(a - 1);
        Ok((0..self.degree)
            .filter(|&x| classes.find_const(x) == root)
            .map(|x| x + 1)
            .collect())
    }

    /// Finest invariant partition in which `a` and `b` (0-based) share a
    /// class. For a transitive group its classes are the blocks of a system.
    fn collapse(&self, a: usize, b: usize) -> UnionFind {
        let tables: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|g| g.image_table().into_iter().map(|x| x - 1).collect())
            .collect();
        let mut uf = UnionFind::new(self.degree);
        uf.union(a, b);
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((x, y)) = queue.pop_front() {
            for t in &tables {
                let (gx, gy) = (t[x], t[y]);
                if uf.union(gx, gy) {
                    queue.push_back((gx, gy));
                }
            }
        }
        uf
    }

    /// A nontrivial block system, or `None` if the group is primitive or
    /// intransitive.
    pub fn find_block_system(&self) -> Option<BlockSystem> {
        if self.degree < 2 || !self.is_transitive() {
            return None;
        }
        for y in 1..self.degree {
            let uf = self.collapse(0, y);
            let size = (0..self.degree).filter(|&x| uf.find_const(x) == uf.find_const(0)).count();
            if size < self.degree {
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                let mut index_of_root = vec![usize::MAX; self.degree];
                for x in 0..self.degree {
                    let r = uf.find_const(x);
                    if index_of_root[r] == usize::MAX {
                        index_of_root[r] = blocks.len();
                        blocks.push(Vec::new());
                    }
                    blocks[index_of_root[r]].push(x + 1);
                }
                return Some(BlockSystem { blocks });
            }
        }
        None
    }

    /// Transitive with no nontrivial block system. Degree 1 counts as
    /// primitive; intransitive groups are not.
    pub fn is_primitive(&self) -> bool {
        if self.degree == 1 {
            return true;
        }
        if !self.is_transitive() {
            return false;
        }
        if is_prime(self.degree) {
            return true;
        }
        self.find_block_system().is_none()
    }

    /// Deterministic Schreier-Sims stabilizer chain.
    pub fn stabilizer_chain(&self) -> StabilizerChain {
        StabilizerChain::new(self.degree, &self.generators)
    }

    pub fn group_order(&self) -> BigUint {
        self.stabilizer_chain().order()
    }

    /// Every element of the group, by breadth-first closure. Fails once more
    /// than `cap` elements have been found.
    pub fn enumerate_elements(&self, cap: usize) -> Result<HashSet<Permutation>, GroupError> {
        let id = Permutation::identity(self.degree);
        let mut elements = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &self.generators {
                    let y = g.compose_unchecked(x);
                    if !elements.contains(&y) {
                        if elements.len() >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        elements.insert(y.clone());
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(elements)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns true if the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

struct Level {
    base: usize,
    generators: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`, when `x` is in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Self {
            base,
            generators: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.generators {
                let y = g.apply(x + 1) - 1;
                if self.transversal[y].is_none() {
                    let rep = g.compose_unchecked(self.transversal[x].as_ref().unwrap());
                    self.transversal[y] = Some(rep);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set, built deterministically: each new level
/// takes the smallest point moved by the element that opens it.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Permutation]) -> Self {
        let mut chain = Self {
            degree,
            levels: Vec::new(),
        };
        for g in generators {
            if !g.is_identity() {
                chain.add_generator(0, g.clone());
            }
        }
        chain
    }

    fn add_generator(&mut self, level: usize, g: Permutation) {
        debug_assert!(!g.is_identity());
        if level == self.levels.len() {
            let base = (0..self.degree)
                .find(|&x| g.apply(x + 1) != x + 1)
                .expect("non-identity element moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        {
            let lvl = &mut self.levels[level];
            lvl.generators.push(g);
            lvl.extend_orbit();
        }
        // Every Schreier generator of this level must sift through the levels
        // below; residues become new strong generators one level down.
        let mut i = 0;
        while i < self.levels[level].orbit.len() {
            let x = self.levels[level].orbit[i];
            let mut j = 0;
            while j < self.levels[level].generators.len() {
                let lvl = &self.levels[level];
                let s = &lvl.generators[j];
                let u_x = lvl.transversal[x].as_ref().unwrap();
                let sx = s.apply(x + 1) - 1;
                let u_sx = lvl.transversal[sx].as_ref().unwrap();
                let schreier = u_sx.inverse().compose_unchecked(s).compose_unchecked(u_x);
                if !schreier.is_identity() {
                    let residue = self.sift(schreier, level + 1);
                    if !residue.is_identity() {
                        self.add_generator(level + 1, residue);
                    }
                }
                j += 1;
            }
            i += 1;
        }
    }

    /// Strips `g` through levels `from..`; identity iff `g` lies in the
    /// subgroup those levels describe.
    fn sift(&self, mut g: Permutation, from: usize) -> Permutation {
        for lvl in &self.levels[from.min(self.levels.len())..] {
            let x = g.apply(lvl.base + 1) - 1;
            match &lvl.transversal[x] {
                Some(u) => g = u.inverse().compose_unchecked(&g),
                None => return g,
            }
        }
        g
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).is_identity()
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }
}
