//! Perfect matchings, Brauer diagrams and the rotation-stable sets built from them.
//!
//! Points are labelled from 1. A diagram in `D(r, s)` stores its top points as
//! `1..=r` (left to right) and its bottom points as `r+1..=r+s`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("odd number of points: {0}")]
    OddPointCount(usize),
    #[error("point {0} is out of range 1..={1}")]
    PointOutOfRange(usize, usize),
    #[error("point {0} occurs more than once")]
    RepeatedPoint(usize),
    #[error("point {0} is not matched")]
    UnmatchedPoint(usize),
    #[error("pair ({0},{0}) joins a point to itself")]
    Loop(usize),
    #[error("diagram has {points} points but shape {top}|{bottom}")]
    ShapeMismatch {
        points: usize,
        top: usize,
        bottom: usize,
    },
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("set is not closed under the action: {0} maps outside")]
    NotClosed(String),
    #[error("block size must be positive")]
    ZeroBlockSize,
}

/// A fixed-point-free involution on `{1, …, 2m}`, stored as sorted pairs `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PerfectMatching {
    pairs: Vec<(usize, usize)>,
}

impl PerfectMatching {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DiagramError> {
        let mut pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        let points = 2 * pairs.len();
        let mut seen = vec![false; points + 1];
        for &(a, b) in &pairs {
            if a == b {
                return Err(DiagramError::Loop(a));
            }
            for p in [a, b] {
                if p == 0 || p > points {
                    return Err(DiagramError::PointOutOfRange(p, points));
                }
                if seen[p] {
                    return Err(DiagramError::RepeatedPoint(p));
                }
                seen[p] = true;
            }
        }
        pairs.sort_unstable();
        Ok(Self { pairs })
    }

    /// Builds a matching from a partner table indexed by `point - 1`.
    pub(crate) fn from_partners(partner: &[usize]) -> Self {
        let pairs = partner
            .iter()
            .enumerate()
            .filter(|&(i, &p)| i < p)
            .map(|(i, &p)| (i + 1, p + 1))
            .collect();
        Self { pairs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn strands(&self) -> usize {
        self.pairs.len()
    }

    pub fn points(&self) -> usize {
        2 * self.pairs.len()
    }

    /// Zero-based partner table: `partners()[p - 1] + 1` is the partner of point `p`.
    pub fn partners(&self) -> Vec<usize> {
        let mut partner = vec![0; self.points()];
        for &(a, b) in &self.pairs {
            partner[a - 1] = b - 1;
            partner[b - 1] = a - 1;
        }
        partner
    }

    pub fn partner(&self, p: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == p {
                Some(b)
            } else if b == p {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Relabels every point through `f`; `f` must be a permutation of the points.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut pairs: Vec<_> = self
            .pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (f(a), f(b));
                if x < y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        pairs.sort_unstable();
        Self { pairs }
    }

    /// Number of unordered strand pairs `(a₁,b₁), (a₂,b₂)` with `a₁ < a₂ < b₁ < b₂`.
    pub fn crossing_pairs(&self) -> usize {
        let mut count = 0;
        for (i, &(a1, b1)) in self.pairs.iter().enumerate() {
            for &(a2, b2) in &self.pairs[i + 1..] {
                if strands_cross((a1, b1), (a2, b2)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Size of the largest set of pairwise crossing strands.
    pub fn max_mutual_crossing(&self) -> usize {
        if self.pairs.is_empty() {
            return 0;
        }
        let mut best = 1;
        let mut chosen = Vec::new();
        self.crossing_search(0, &mut chosen, &mut |c| {
            best = best.max(c.len());
            false
        });
        best
    }

    /// The lexicographically smallest set of `size` mutually crossing strands, if any.
    pub fn find_mutual_crossing(&self, size: usize) -> Option<Vec<(usize, usize)>> {
        if size == 0 {
            return Some(Vec::new());
        }
        let mut found = None;
        let mut chosen = Vec::new();
        self.crossing_search(0, &mut chosen, &mut |c| {
            if c.len() == size {
                found = Some(c.to_vec());
                true
            } else {
                false
            }
        });
        found
    }

    // Depth-first search over chains a₁<…<a_j<b₁<…<b_j, visiting in lexicographic order.
    // `visit` returns true to stop the search.
    fn crossing_search(
        &self,
        start: usize,
        chosen: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
    ) -> bool {
        for j in start..self.pairs.len() {
            let (a, b) = self.pairs[j];
            if let (Some(&(_, first_b)), Some(&(_, last_b))) = (chosen.first(), chosen.last()) {
                if a > first_b || b < last_b {
                    continue;
                }
            }
            chosen.push((a, b));
            if visit(chosen) || self.crossing_search(j + 1, chosen, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Advances every label by `step` modulo the number of points.
    pub fn rotate_by(&self, step: usize) -> Self {
        let n = self.points();
        if n == 0 {
            return self.clone();
        }
        self.relabel(|p| (p - 1 + step) % n + 1)
    }

    /// The rotation `i ↦ i (mod 2r) + 1`.
    pub fn rotate(&self) -> Self {
        self.rotate_by(1)
    }
}

pub fn strands_cross((a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> bool {
    (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("()");
        }
        for (a, b) in &self.pairs {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl FromStr for PerfectMatching {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || DiagramError::Parse(s.to_string());
        if compact == "()" {
            return Ok(Self::empty());
        }
        if compact.is_empty() {
            return Err(err());
        }
        let mut pairs = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(err)?;
            let close = body.find(')').ok_or_else(err)?;
            let (a, b) = body[..close].split_once(',').ok_or_else(err)?;
            pairs.push((
                a.parse().map_err(|_| err())?,
                b.parse().map_err(|_| err())?,
            ));
            rest = &body[close + 1..];
        }
        Self::new(pairs)
    }
}

/// An element of `D(r, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    top: usize,
    bottom: usize,
    matching: PerfectMatching,
}

impl Diagram {
    pub fn new(top: usize, bottom: usize, matching: PerfectMatching) -> Result<Self, DiagramError> {
        if matching.points() != top + bottom {
            return Err(DiagramError::ShapeMismatch {
                points: matching.points(),
                top,
                bottom,
            });
        }
        Ok(Self {
            top,
            bottom,
            matching,
        })
    }

    /// A diagram in `D(0, 2m)`.
    pub fn boundary(matching: PerfectMatching) -> Self {
        Self {
            top: 0,
            bottom: matching.points(),
            matching,
        }
    }

    pub(crate) fn from_partners(top: usize, bottom: usize, partner: &[usize]) -> Self {
        Self {
            top,
            bottom,
            matching: PerfectMatching::from_partners(partner),
        }
    }

    pub fn identity(m: usize) -> Self {
        let matching = PerfectMatching {
            pairs: (1..=m).map(|i| (i, m + i)).collect(),
        };
        Self {
            top: m,
            bottom: m,
            matching,
        }
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.top, self.bottom)
    }

    pub fn matching(&self) -> &PerfectMatching {
        &self.matching
    }

    pub fn is_top(&self, p: usize) -> bool {
        p <= self.top
    }

    /// Number of strands joining a top point to a bottom point.
    pub fn propagating_number(&self) -> usize {
        self.matching
            .pairs
            .iter()
            .filter(|&&(a, b)| (a <= self.top) != (b <= self.top))
            .count()
    }

    /// `Hom(r, s) → Hom(0, r + s)`: top point `i` goes to `r + 1 - i`, bottom point `r + j` stays.
    pub fn bend(&self) -> Diagram {
        let r = self.top;
        Diagram::boundary(self.matching.relabel(|p| if p <= r { r + 1 - p } else { p }))
    }

    /// Inverse of [`Diagram::bend`] for a diagram of `D(0, r + s)`.
    pub fn unbend(&self, top: usize) -> Result<Diagram, DiagramError> {
        if self.top != 0 || top > self.bottom {
            return Err(DiagramError::ShapeMismatch {
                points: self.matching.points(),
                top,
                bottom: self.bottom.saturating_sub(top),
            });
        }
        let matching = self
            .matching
            .relabel(|p| if p <= top { top + 1 - p } else { p });
        Diagram::new(top, self.bottom - top, matching)
    }

    /// Upside-down reflection `D(r, s) → D(s, r)`.
    pub fn flip(&self) -> Diagram {
        let (r, s) = (self.top, self.bottom);
        let matching = self
            .matching
            .relabel(|p| if p <= r { s + p } else { p - r });
        Diagram {
            top: s,
            bottom: r,
            matching,
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.top == 0 {
            write!(f, "{}", self.matching)
        } else {
            write!(f, "{}|{}:{}", self.top, self.bottom, self.matching)
        }
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((shape, body)) => {
                let (r, t) = shape
                    .trim()
                    .split_once('|')
                    .ok_or_else(|| DiagramError::Parse(s.to_string()))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| DiagramError::Parse(s.to_string()))
                };
                let matching: PerfectMatching = body.parse()?;
                Diagram::new(parse(r)?, parse(t)?, matching)
            }
            None => Ok(Diagram::boundary(s.parse()?)),
        }
    }
}

/// All perfect matchings of `{1, …, points}`: the smallest free point is paired with each
/// remaining candidate in increasing order.
pub fn enumerate_matchings(points: usize) -> Result<Vec<PerfectMatching>, DiagramError> {
    if points % 2 == 1 {
        return Err(DiagramError::OddPointCount(points));
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; points];
    fill_matchings(&mut partner, &mut out);
    Ok(out)
}

fn fill_matchings(partner: &mut [usize], out: &mut Vec<PerfectMatching>) {
    let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
        out.push(PerfectMatching::from_partners(partner));
        return;
    };
    for j in first + 1..partner.len() {
        if partner[j] == usize::MAX {
            partner[first] = j;
            partner[j] = first;
            fill_matchings(partner, out);
            partner[first] = usize::MAX;
            partner[j] = usize::MAX;
        }
    }
}

/// All diagrams of `D(r, s)` in enumeration order.
pub fn enumerate_diagrams(top: usize, bottom: usize) -> Vec<Diagram> {
    enumerate_matchings(top + bottom)
        .map(|ms| {
            ms.into_iter()
                .map(|matching| Diagram {
                    top,
                    bottom,
                    matching,
                })
                .collect()
        })
        .unwrap_or_default()
}

/// `X(r, n)`: the `(n+1)`-noncrossing perfect matchings of `{1, …, 2r}`.
pub fn enumerate_x(r: usize, n: usize) -> Vec<PerfectMatching> {
    enumerate_matchings(2 * r)
        .expect("even point count")
        .into_iter()
        .filter(|m| m.max_mutual_crossing() <= n)
        .collect()
}

/// A matching of `{1, …, kr}` cut into `r` consecutive blocks of size `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockedMatching {
    base: PerfectMatching,
    blocks: usize,
    block_size: usize,
}

impl BlockedMatching {
    pub fn new(base: PerfectMatching, blocks: usize, block_size: usize) -> Result<Self, DiagramError> {
        if block_size == 0 {
            return Err(DiagramError::ZeroBlockSize);
        }
        if base.points() != blocks * block_size {
            return Err(DiagramError::ShapeMismatch {
                points: base.points(),
                top: blocks,
                bottom: block_size,
            });
        }
        Ok(Self {
            base,
            blocks,
            block_size,
        })
    }

    pub fn base(&self) -> &PerfectMatching {
        &self.base
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    fn block_of(&self, p: usize) -> usize {
        (p - 1) / self.block_size
    }

    /// No pair inside a block, and any two crossing pairs touch four distinct blocks.
    pub fn satisfies_block_rules(&self) -> bool {
        let pairs = self.base.pairs();
        if pairs.iter().any(|&(a, b)| self.block_of(a) == self.block_of(b)) {
            return false;
        }
        for (i, &s) in pairs.iter().enumerate() {
            for &t in &pairs[i + 1..] {
                if strands_cross(s, t) {
                    let blocks: BTreeSet<usize> =
                        [s.0, s.1, t.0, t.1].iter().map(|&p| self.block_of(p)).collect();
                    if blocks.len() < 4 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rotation by one block: `i ↦ i + k − 1 (mod kr) + 1`.
    pub fn rotate(&self) -> Self {
        Self {
            base: self.base.rotate_by(self.block_size),
            blocks: self.blocks,
            block_size: self.block_size,
        }
    }
}

impl fmt::Display for BlockedMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.base.fmt(f)
    }
}

/// `X(r, n, k)`.
pub fn enumerate_x_blocked(r: usize, n: usize, k: usize) -> Result<Vec<BlockedMatching>, DiagramError> {
    if k == 0 {
        return Err(DiagramError::ZeroBlockSize);
    }
    let points = r * k;
    if points % 2 == 1 {
        return Ok(Vec::new());
    }
    Ok(enumerate_matchings(points)?
        .into_iter()
        .filter(|m| m.max_mutual_crossing() <= n)
        .map(|m| BlockedMatching {
            base: m,
            blocks: r,
            block_size: k,
        })
        .filter(BlockedMatching::satisfies_block_rules)
        .collect())
}

/// Orbit sizes of the cyclic action generated by `act`, largest first.
pub fn orbits<T, F>(set: &[T], act: F) -> Result<Vec<usize>, DiagramError>
where
    T: Ord + Clone + fmt::Display,
    F: Fn(&T) -> T,
{
    let members: BTreeSet<&T> = set.iter().collect();
    let mut seen: BTreeSet<T> = BTreeSet::new();
    let mut sizes = Vec::new();
    for x in set {
        if seen.contains(x) {
            continue;
        }
        let mut size = 0;
        let mut y = x.clone();
        loop {
            if !members.contains(&y) {
                return Err(DiagramError::NotClosed(y.to_string()));
            }
            seen.insert(y.clone());
            size += 1;
            y = act(&y);
            if &y == x {
                break;
            }
            if seen.contains(&y) {
                return Err(DiagramError::NotClosed(y.to_string()));
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

/// Set partitions of `{1, …, r}` into at most `max_blocks` blocks, as restricted growth strings.
pub fn enumerate_set_partitions(r: usize, max_blocks: usize) -> Vec<Vec<usize>> {
    fn go(word: &mut Vec<usize>, r: usize, max_blocks: usize, used: usize, out: &mut Vec<Vec<usize>>) {
        if word.len() == r {
            out.push(word.clone());
            return;
        }
        for b in 0..=used.min(max_blocks.saturating_sub(1)) {
            word.push(b);
            go(word, r, max_blocks, used.max(b + 1), out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        out.push(Vec::new());
    } else if max_blocks > 0 {
        go(&mut Vec::with_capacity(r), r, max_blocks, 0, &mut out);
    }
    out
}

pub fn count_set_partitions(r: usize, max_blocks: usize) -> usize {
    enumerate_set_partitions(r, max_blocks).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(s: &str) -> PerfectMatching {
        s.parse().unwrap()
    }

    fn double_factorial(m: usize) -> usize {
        (1..=m).rev().step_by(2).product()
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(pm("(1,2)(3,4)").crossing_pairs(), 0);
        assert_eq!(pm("(1,3)(2,4)").crossing_pairs(), 1);
        for m in 1..=6 {
            let full = PerfectMatching::new((1..=m).map(|i| (i, i + m))).unwrap();
            assert_eq!(full.crossing_pairs(), m * (m - 1) / 2);
            assert_eq!(full.max_mutual_crossing(), m);
        }
        assert_eq!(pm("(1,2)(3,4)").max_mutual_crossing(), 1);
        assert_eq!(pm("(1,3)(2,4)").max_mutual_crossing(), 2);
        assert_eq!(pm("(1,4)(2,5)(3,6)").max_mutual_crossing(), 3);
        assert_eq!(PerfectMatching::empty().max_mutual_crossing(), 0);
    }

    #[test]
    fn mutual_crossing_matches_subset_search() {
        // brute force over all strand subsets
        for m in enumerate_matchings(10).unwrap() {
            let pairs = m.pairs();
            let mut best = 0;
            for mask in 1u32..(1 << pairs.len()) {
                let sub: Vec<_> = (0..pairs.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| pairs[i])
                    .collect();
                let all = sub
                    .iter()
                    .enumerate()
                    .all(|(i, &s)| sub[i + 1..].iter().all(|&t| strands_cross(s, t)));
                if all {
                    best = best.max(sub.len());
                }
            }
            assert_eq!(m.max_mutual_crossing(), best, "{m}");
        }
    }

    #[test]
    fn find_crossing_is_lexicographic() {
        let m = pm("(1,5)(2,6)(3,7)(4,8)");
        assert_eq!(m.find_mutual_crossing(2), Some(vec![(1, 5), (2, 6)]));
        assert_eq!(pm("(1,2)(3,4)").find_mutual_crossing(2), None);
    }

    #[test]
    fn matching_counts_are_double_factorials() {
        assert_eq!(enumerate_matchings(2).unwrap().len(), 1);
        assert_eq!(enumerate_matchings(4).unwrap().len(), 3);
        assert_eq!(enumerate_matchings(8).unwrap().len(), 105);
        assert_eq!(enumerate_matchings(0).unwrap(), vec![PerfectMatching::empty()]);
        for m in 1..=6 {
            assert_eq!(enumerate_matchings(2 * m).unwrap().len(), double_factorial(2 * m - 1));
        }
        assert_eq!(enumerate_matchings(3), Err(DiagramError::OddPointCount(3)));
        let four = enumerate_matchings(4).unwrap();
        assert_eq!(four[0], pm("(1,2)(3,4)"));
        assert_eq!(four[1], pm("(1,3)(2,4)"));
        assert_eq!(four[2], pm("(1,4)(2,3)"));
    }

    #[test]
    fn x_sets() {
        assert_eq!(enumerate_x(2, 1), vec![pm("(1,2)(3,4)"), pm("(1,4)(2,3)")]);
        assert_eq!(enumerate_x(3, 1).len(), 5);
        assert_eq!(enumerate_x(2, 2).len(), 3);
        for r in 0..=5 {
            assert_eq!(enumerate_x(r, r).len(), enumerate_matchings(2 * r).unwrap().len());
        }
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(pm("(1,2)(3,4)").rotate(), pm("(1,4)(2,3)"));
        assert_eq!(pm("(1,3)(2,4)").rotate(), pm("(1,3)(2,4)"));
        for m in enumerate_matchings(8).unwrap() {
            let mut x = m.clone();
            for _ in 0..8 {
                x = x.rotate();
            }
            assert_eq!(x, m);
        }
    }

    #[test]
    fn blocked_examples() {
        assert_eq!(enumerate_x_blocked(4, 2, 2).unwrap().len(), 6);
        let one = enumerate_x_blocked(2, 5, 2).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].base(), &pm("(1,4)(2,3)"));
        // k = 1 on four points is X(2, 1)
        let k1: Vec<_> = enumerate_x_blocked(4, 1, 1)
            .unwrap()
            .into_iter()
            .map(|b| b.base().clone())
            .collect();
        assert_eq!(k1, enumerate_x(2, 1));
        assert!(enumerate_x_blocked(3, 2, 1).unwrap().is_empty());
        assert_eq!(enumerate_x_blocked(1, 1, 0), Err(DiagramError::ZeroBlockSize));
    }

    #[test]
    fn orbit_examples() {
        let x21 = enumerate_x(2, 1);
        assert_eq!(orbits(&x21, PerfectMatching::rotate).unwrap(), vec![2]);
        let x22 = enumerate_x(2, 2);
        assert_eq!(orbits(&x22, PerfectMatching::rotate).unwrap(), vec![2, 1]);
        assert_eq!(orbits(&[pm("(1,3)(2,4)")], PerfectMatching::rotate).unwrap(), vec![1]);
        let err = orbits(&[pm("(1,2)(3,4)")], PerfectMatching::rotate).unwrap_err();
        assert_eq!(err, DiagramError::NotClosed("(1,4)(2,3)".into()));
    }

    #[test]
    fn propagating_numbers() {
        for m in 0..5 {
            assert_eq!(Diagram::identity(m).propagating_number(), m);
        }
        for d in enumerate_diagrams(0, 6) {
            assert_eq!(d.propagating_number(), 0);
        }
    }

    #[test]
    fn bend_round_trip() {
        let id1 = Diagram::identity(1);
        assert_eq!(id1.bend(), Diagram::boundary(pm("(1,2)")));
        for total in [0, 2, 4, 6, 8, 10] {
            for r in 0..=total {
                let all = enumerate_diagrams(r, total - r);
                let bent: BTreeSet<_> = all.iter().map(Diagram::bend).collect();
                assert_eq!(bent.len(), all.len());
                for d in &all {
                    assert_eq!(&d.bend().unbend(r).unwrap(), d);
                }
            }
        }
        // u_1 in D(2,2): (1,2)(3,4) bends to two arcs (1,2)(3,4)
        let u1: Diagram = "2|2:(1,2)(3,4)".parse().unwrap();
        let b = u1.bend();
        assert_eq!(b.matching(), &pm("(1,2)(3,4)"));
        assert_eq!(b.propagating_number(), 0);
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(count_set_partitions(4, 2), 8);
        assert_eq!(count_set_partitions(3, 3), 5);
        assert_eq!(count_set_partitions(3, 7), 5);
        assert_eq!(count_set_partitions(0, 1), 1);
        assert_eq!(count_set_partitions(5, 5), 52);
    }

    #[test]
    fn text_format() {
        let m = pm(" ( 2 , 4 ) (1,3) ");
        assert_eq!(m.to_string(), "(1,3)(2,4)");
        let d: Diagram = "2|2:(1,4)(2,3)".parse().unwrap();
        assert_eq!(d.to_string(), "2|2:(1,4)(2,3)");
        assert_eq!("(1,1)".parse::<PerfectMatching>(), Err(DiagramError::Loop(1)));
        assert!("(1,2)(2,3)".parse::<PerfectMatching>().is_err());
        assert!("3|2:(1,2)(3,4)".parse::<Diagram>().is_err());
    }
}
