//! Permutations of `{1, ..., d}` stored as image tables.
//!
//! Points are 1-based everywhere in the public API. Composition is right to
//! left: `p.compose(&q)` is the map `x -> p(q(x))`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("malformed cycle text at byte {position}: {reason}")]
    Malformed { position: usize, reason: String },
    #[error("point {point} appears twice in one cycle")]
    RepeatedPoint { point: usize },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("image table is not a bijection of 1..={degree}")]
    NotBijection { degree: usize },
}

/// A bijection of `{1, ..., d}`.
///
/// Internally the table is 0-based; that never leaks through the API.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree >= 1, "degree must be at least 1");
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 1-based image table: entry `i - 1` is the
    /// image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        let mut table = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(PermError::PointOutOfRange { point: img, degree });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(PermError::NotBijection { degree });
            }
            table.push((img - 1) as u32);
        }
        Ok(Self { images: table })
    }

    /// 0-based constructor for the search core; the caller guarantees bijectivity.
    pub(crate) fn from_zero_based(images: &[u8]) -> Self {
        debug_assert!(is_bijection(images));
        Self {
            images: images.iter().map(|&x| x as u32).collect(),
        }
    }

    pub(crate) fn to_zero_based(&self) -> Vec<u8> {
        self.images.iter().map(|&x| x as u8).collect()
    }

    /// Builds a permutation from explicit cycles, multiplied right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut acc = Self::identity(degree);
        for cycle in cycles {
            let factor = Self::single_cycle(degree, cycle)?;
            acc = acc.compose_unchecked(&factor);
        }
        Ok(acc)
    }

    fn single_cycle(degree: usize, cycle: &[usize]) -> Result<Self, PermError> {
        let mut seen = vec![false; degree];
        for &p in cycle {
            if p == 0 || p > degree {
                return Err(PermError::PointOutOfRange { point: p, degree });
            }
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(PermError::RepeatedPoint { point: p });
            }
        }
        let mut perm = Self::identity(degree);
        for (i, &p) in cycle.iter().enumerate() {
            let next = cycle[(i + 1) % cycle.len()];
            perm.images[p - 1] = (next - 1) as u32;
        }
        Ok(perm)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    ///
    /// Panics if `point` is outside `1..=degree`.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// The 1-based image table.
    pub fn image_table(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`, the map `x -> self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        check_degrees(self, other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Self { images: inv }
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`, evaluated right to left.
    pub fn commutator(a: &Self, b: &Self) -> Result<Self, PermError> {
        check_degrees(a, b)?;
        Ok(a.compose_unchecked(b)
            .compose_unchecked(&a.inverse())
            .compose_unchecked(&b.inverse()))
    }

    /// `σ self σ⁻¹`.
    pub fn conjugate_by(&self, sigma: &Self) -> Result<Self, PermError> {
        check_degrees(self, sigma)?;
        Ok(sigma.compose_unchecked(self).compose_unchecked(&sigma.inverse()))
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut result = Self::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        result
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut cycles = Vec::new();
        let mut fixed_points = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            if self.images[start] as usize == start {
                fixed_points.push(start + 1);
                continue;
            }
            // Scanning starts in increasing order, so each cycle begins at its
            // smallest element and cycles come out sorted.
            let mut cycle = vec![start + 1];
            let mut x = self.images[start] as usize;
            while x != start {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition {
            degree: d,
            cycles,
            fixed_points,
        }
    }

    /// All cycle lengths, fixed points included as 1s, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let dec = self.cycle_decomposition();
        let mut lengths: Vec<usize> = dec.cycles.iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat(1).take(dec.fixed_points.len()));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn is_even(&self) -> bool {
        let dec = self.cycle_decomposition();
        dec.cycles.iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Order of the permutation (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycle_decomposition()
            .cycles
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<(), PermError> {
    if a.degree() != b.degree() {
        return Err(PermError::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(())
}

pub(crate) fn is_bijection(images: &[u8]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&x| (x as usize) < seen.len() && !std::mem::replace(&mut seen[x as usize], true))
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycle_decomposition().fmt(f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Canonical disjoint-cycle form: every cycle starts at its smallest point and
/// cycles are ordered by that point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    pub cycles: Vec<Vec<usize>>,
    pub fixed_points: Vec<usize>,
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Writes the canonical cycle text of a 0-based image table into `out`.
///
/// Produces exactly the bytes of the `Display` impl; used on the search hot
/// path to avoid allocating a `Permutation` per comparison.
pub(crate) fn write_cycle_text(images: &[u8], out: &mut Vec<u8>) {
    out.clear();
    let d = images.len();
    let mut seen = [false; 256];
    for start in 0..d {
        if seen[start] || images[start] as usize == start {
            continue;
        }
        out.push(b'(');
        push_point(out, start + 1);
        seen[start] = true;
        let mut x = images[start] as usize;
        while x != start {
            seen[x] = true;
            out.push(b' ');
            push_point(out, x + 1);
            x = images[x] as usize;
        }
        out.push(b')');
    }
    if out.is_empty() {
        out.extend_from_slice(b"()");
    }
}

fn push_point(out: &mut Vec<u8>, p: usize) {
    if p >= 100 {
        out.push(b'0' + (p / 100) as u8);
    }
    if p >= 10 {
        out.push(b'0' + (p / 10 % 10) as u8);
    }
    out.push(b'0' + (p % 10) as u8);
}

/// Parses cycle notation such as `(1 2 3)(4 5)`, `(1, 2, 3)`, `()` or `id`.
///
/// The listed cycles are multiplied right to left; points not mentioned are
/// fixed.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    if degree == 0 {
        return Err(PermError::ZeroDegree);
    }
    let trimmed = text.trim();
    if trimmed == "id" {
        return Ok(Permutation::identity(degree));
    }
    let cycles = parse_cycle_list(text)?;
    if cycles.is_empty() {
        return Err(PermError::Malformed {
            position: 0,
            reason: "expected at least one parenthesized cycle".into(),
        });
    }
    Permutation::from_cycles(degree, &cycles)
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>, PermError> {
    let bytes = text.as_bytes();
    let mut cycles = Vec::new();
    let mut pos = 0;
    let malformed = |position: usize, reason: &str| PermError::Malformed {
        position,
        reason: reason.to_string(),
    };
    while pos < bytes.len() {
        match bytes[pos] {
            b if b.is_ascii_whitespace() => pos += 1,
            b'(' => {
                pos += 1;
                let mut cycle = Vec::new();
                // true when the previous token was a point and no separator followed yet
                let mut need_sep = false;
                let mut comma_pending = false;
                loop {
                    let Some(&b) = bytes.get(pos) else {
                        return Err(malformed(pos, "unterminated cycle"));
                    };
                    match b {
                        b')' => {
                            if comma_pending {
                                return Err(malformed(pos, "trailing comma"));
                            }
                            pos += 1;
                            break;
                        }
                        b',' => {
                            if cycle.is_empty() || comma_pending {
                                return Err(malformed(pos, "empty element"));
                            }
                            comma_pending = true;
                            need_sep = false;
                            pos += 1;
                        }
                        b if b.is_ascii_whitespace() => {
                            need_sep = false;
                            pos += 1;
                        }
                        b'0'..=b'9' => {
                            if need_sep {
                                return Err(malformed(pos, "missing separator"));
                            }
                            let start = pos;
                            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                                pos += 1;
                            }
                            let point: usize = text[start..pos]
                                .parse()
                                .map_err(|_| malformed(start, "point too large"))?;
                            cycle.push(point);
                            need_sep = true;
                            comma_pending = false;
                        }
                        _ => return Err(malformed(pos, "unexpected character")),
                    }
                }
                cycles.push(cycle);
            }
            _ => return Err(malformed(pos, "expected '('")),
        }
    }
    Ok(cycles)
}
