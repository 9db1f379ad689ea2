//! Partitions, standard Young tableaux with major index, and symplectic oscillating tableaux.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::QPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("cannot parse partition {0:?}")]
    ParsePartition(String),
    #[error("cannot parse oscillating tableau {0:?}")]
    ParseOscillating(String),
    #[error("oscillating tableau length must be even, got {0}")]
    OddLength(usize),
    #[error("filling is not a standard tableau of shape {0}")]
    NotStandard(Partition),
}

/// A weakly decreasing sequence of positive integers.
///
/// Ordered by size first and then lexicographically by parts, so `1,1,1 < 2,1 < 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-based), or 0 past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition {
            parts: (0..first)
                .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Multiplies every part by `m`.
    pub fn scaled(&self, m: usize) -> Partition {
        Partition {
            parts: self.parts.iter().map(|p| p * m).collect(),
        }
    }

    /// Merges the parts of both partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        Partition::new(self.parts.iter().chain(&other.parts).copied())
    }

    /// Multiplicity of each part value, as `(value, count)` in decreasing value order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((v, c)) if *v == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Hook length of the cell in row `i`, column `j` (0-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.parts[i] - j - 1;
        let leg = self.parts[i + 1..].iter().take_while(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Rows to which a cell can be added.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .collect()
    }

    /// Rows from which a cell can be removed.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .collect()
    }

    pub fn with_cell_added(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Partition { parts }
    }

    pub fn with_cell_removed(&self, row: usize) -> Partition {
        let mut parts = self.parts.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Partition { parts }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = TableauError;

    /// Accepts `4,2,2`, `(4,2,2)` or `[4,2,2]`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TableauError::ParsePartition(s.to_string());
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .or_else(|| inner.strip_prefix('[').and_then(|t| t.strip_suffix(']')))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Vec<usize> = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<_, _>>()?;
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(err());
        }
        Ok(Partition { parts })
    }
}

/// All partitions of `m`, in increasing order.
pub fn partitions_of(m: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in 1..=rest.min(max) {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A filling of a shape by `1..=|shape|`, increasing along rows and down columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let shape = Partition::new(rows.iter().map(Vec::len));
        let valid_shape = rows.iter().map(Vec::len).eq(shape.parts().iter().copied());
        let mut seen: Vec<usize> = rows.iter().flatten().copied().collect();
        seen.sort_unstable();
        let bijective = seen.iter().copied().eq(1..=shape.size());
        let rows_increase = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        let cols_increase = rows
            .windows(2)
            .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above < below));
        if !(valid_shape && bijective && rows_increase && cols_increase) {
            return Err(TableauError::NotStandard(shape));
        }
        Ok(Self { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    fn row_of(&self) -> Vec<usize> {
        let mut row = vec![0; self.shape.size() + 1];
        for (i, r) in self.rows.iter().enumerate() {
            for &x in r {
                row[x] = i;
            }
        }
        row
    }

    /// Entries `i` such that `i + 1` sits in a strictly lower row.
    pub fn descents(&self) -> Vec<usize> {
        let row = self.row_of();
        (1..self.shape.size()).filter(|&i| row[i + 1] > row[i]).collect()
    }

    pub fn maj(&self) -> usize {
        self.descents().iter().sum()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Every standard tableau of the given shape. Entries are placed in increasing order,
/// trying rows from the top, so the first tableau fills row by row.
pub fn enumerate_syt(shape: &Partition) -> Vec<StandardTableau> {
    fn go(shape: &Partition, rows: &mut Vec<Vec<usize>>, next: usize, out: &mut Vec<StandardTableau>) {
        if next > shape.size() {
            out.push(StandardTableau {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            if len < shape.part(i) && (i == 0 || rows[i - 1].len() > len) {
                rows[i].push(next);
                go(shape, rows, next + 1, out);
                rows[i].pop();
            }
        }
    }
    let mut out = Vec::new();
    go(shape, &mut vec![Vec::new(); shape.len()], 1, &mut out);
    out
}

/// Number of standard tableaux, counted without enumerating them.
pub fn count_syt(shape: &Partition) -> u128 {
    // walk the tableau backwards: remove the largest entry from each corner
    fn go(shape: &Partition, memo: &mut std::collections::HashMap<Partition, u128>) -> u128 {
        if shape.is_empty() {
            return 1;
        }
        if let Some(&v) = memo.get(shape) {
            return v;
        }
        let v = shape
            .removable_rows()
            .into_iter()
            .map(|i| go(&shape.with_cell_removed(i), memo))
            .sum();
        memo.insert(shape.clone(), v);
        v
    }
    go(shape, &mut Default::default())
}

/// `Σ_T q^{maj(T)}` over standard tableaux of the shape.
///
/// Built up one entry at a time: `m − 1` is a descent exactly when `m` sits in a lower
/// row than `m − 1`, so it is enough to remember the row of the largest entry.
pub fn fake_degree_schur(shape: &Partition) -> QPolynomial {
    type Memo = std::collections::HashMap<(Partition, usize), QPolynomial>;
    // tableaux of `shape` whose largest entry is at the end of row `row`
    fn go(shape: &Partition, row: usize, memo: &mut Memo) -> QPolynomial {
        let m = shape.size();
        if m == 1 {
            return QPolynomial::one();
        }
        let key = (shape.clone(), row);
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let smaller = shape.with_cell_removed(row);
        let mut total = QPolynomial::zero();
        for prev in smaller.removable_rows() {
            let below = go(&smaller, prev, memo);
            let shift = if row > prev { m - 1 } else { 0 };
            total = total.add(&below.mul(&QPolynomial::monomial(1, shift)));
        }
        memo.insert(key, total.clone());
        total
    }
    if shape.is_empty() {
        return QPolynomial::one();
    }
    let mut memo = Memo::new();
    shape
        .removable_rows()
        .into_iter()
        .fold(QPolynomial::zero(), |acc, row| acc.add(&go(shape, row, &mut memo)))
}

/// Fake degrees for many shapes at once, in input order.
pub fn fake_degrees_schur(shapes: &[Partition]) -> Vec<QPolynomial> {
    shapes.par_iter().map(fake_degree_schur).collect()
}

/// A walk `∅ = μ⁰, μ¹, …, μ^m = ∅` adding or removing one cell per step.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OscillatingTableau {
    steps: Vec<Partition>,
}

impl OscillatingTableau {
    pub fn new(steps: Vec<Partition>) -> Option<Self> {
        let t = Self { steps };
        t.is_valid().then_some(t)
    }

    pub fn steps(&self) -> &[Partition] {
        &self.steps
    }

    /// Number of moves.
    pub fn length(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    /// The most rows used by any shape.
    pub fn max_rows(&self) -> usize {
        self.steps.iter().map(Partition::len).max().unwrap_or(0)
    }

    fn is_valid(&self) -> bool {
        let ends_empty = self.steps.first().is_some_and(Partition::is_empty)
            && self.steps.last().is_some_and(Partition::is_empty);
        ends_empty
            && self.steps.windows(2).all(|w| {
                let (a, b) = (&w[0], &w[1]);
                let differ_by_one = a.size().abs_diff(b.size()) == 1;
                let (small, big) = if a.size() < b.size() { (a, b) } else { (b, a) };
                differ_by_one
                    && (0..big.len()).all(|i| small.part(i) <= big.part(i))
            })
    }
}

impl fmt::Display for OscillatingTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let steps: Vec<String> = self.steps.iter().map(|p| format!("[{p}]")).collect();
        write!(f, "{}", steps.join(";"))
    }
}

impl FromStr for OscillatingTableau {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || TableauError::ParseOscillating(s.to_string());
        let steps = s
            .split(';')
            .map(|t| {
                let t = t.trim();
                if !(t.starts_with('[') && t.ends_with(']')) {
                    return Err(err());
                }
                t.parse::<Partition>().map_err(|_| err())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(steps).ok_or_else(err)
    }
}

/// All oscillating tableaux of the given length whose shapes have at most `n` rows.
pub fn enumerate_oscillating(length: usize, n: usize) -> Result<Vec<OscillatingTableau>, TableauError> {
    if length % 2 == 1 {
        return Err(TableauError::OddLength(length));
    }
    fn go(length: usize, n: usize, path: &mut Vec<Partition>, out: &mut Vec<OscillatingTableau>) {
        let current = path.last().expect("nonempty").clone();
        let remaining = length + 1 - path.len();
        if remaining == 0 {
            if current.is_empty() {
                out.push(OscillatingTableau { steps: path.clone() });
            }
            return;
        }
        if current.size() > remaining {
            return;
        }
        for i in current.removable_rows() {
            path.push(current.with_cell_removed(i));
            go(length, n, path, out);
            path.pop();
        }
        if current.size() < remaining {
            for i in current.addable_rows().into_iter().filter(|&i| i < n) {
                path.push(current.with_cell_added(i));
                go(length, n, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(length, n, &mut vec![Partition::empty()], &mut out);
    Ok(out)
}

/// Counts oscillating tableaux by dynamic programming over shapes.
pub fn count_oscillating(length: usize, n: usize) -> u128 {
    if length % 2 == 1 {
        return 0;
    }
    let mut layer: std::collections::BTreeMap<Partition, u128> = [(Partition::empty(), 1)].into();
    for step in 0..length {
        let remaining = length - step - 1;
        let mut next = std::collections::BTreeMap::new();
        for (shape, count) in layer {
            let moves = shape
                .removable_rows()
                .into_iter()
                .map(|i| shape.with_cell_removed(i))
                .chain(
                    shape
                        .addable_rows()
                        .into_iter()
                        .filter(|&i| i < n)
                        .map(|i| shape.with_cell_added(i)),
                );
            for m in moves.filter(|m| m.size() <= remaining) {
                *next.entry(m).or_insert(0) += count;
            }
        }
        layer = next;
    }
    layer.get(&Partition::empty()).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        assert_eq!(p("4,2,2").to_string(), "4,2,2");
        assert_eq!(p("(3,1)"), Partition::new([1, 3]));
        assert_eq!(p(""), Partition::empty());
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert_eq!(p("4,2,2").conjugate(), p("3,3,1,1"));
        assert_eq!(p("3,1").hook(0, 0), 4);
        assert!(p("1,1,1") < p("2,1") && p("2,1") < p("3") && p("3") < p("1,1,1,1"));
        let counts: Vec<usize> = (0..=10).map(|m| partitions_of(m).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        for m in 0..=10 {
            for lam in partitions_of(m) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn syt_examples() {
        assert_eq!(enumerate_syt(&p("2,2")).len(), 2);
        assert_eq!(enumerate_syt(&p("2,1")).len(), 2);
        assert_eq!(enumerate_syt(&p("5")).len(), 1);
        let two_two = enumerate_syt(&p("2,2"));
        assert_eq!(two_two[0].rows(), &[vec![1, 2], vec![3, 4]]);
        assert_eq!(two_two[0].maj(), 2);
        assert_eq!(two_two[1].rows(), &[vec![1, 3], vec![2, 4]]);
        assert_eq!(two_two[1].maj(), 4);
        assert_eq!(enumerate_syt(&p("4"))[0].maj(), 0);
        assert!(StandardTableau::new(vec![vec![1, 3], vec![2, 4]]).is_ok());
        assert!(StandardTableau::new(vec![vec![1, 2], vec![4, 3]]).is_err());
        assert!(StandardTableau::new(vec![vec![2, 3], vec![1, 4]]).is_err());
    }

    #[test]
    fn syt_counts_agree_with_hook_formula() {
        for m in 0..=9 {
            for lam in partitions_of(m) {
                let hooks: u128 = (0..lam.len())
                    .flat_map(|i| (0..lam.part(i)).map(move |j| (i, j)))
                    .map(|(i, j)| lam.hook(i, j) as u128)
                    .product();
                let factorial: u128 = (1..=m as u128).product();
                assert_eq!(count_syt(&lam), factorial / hooks);
                assert_eq!(enumerate_syt(&lam).len() as u128, factorial / hooks);
            }
        }
    }

    #[test]
    fn fake_degree_examples() {
        assert_eq!(fake_degree_schur(&p("2,2")).to_string(), "q^2 + q^4");
        assert_eq!(fake_degree_schur(&p("4")), QPolynomial::one());
        assert_eq!(fake_degree_schur(&p("1,1,1")), QPolynomial::monomial(1, 3));
        for m in 0..=8 {
            for lam in partitions_of(m) {
                let mut coeffs = vec![0i64; m * m + 1];
                for t in enumerate_syt(&lam) {
                    coeffs[t.maj()] += 1;
                }
                assert_eq!(fake_degree_schur(&lam), QPolynomial::new(coeffs), "shape {lam}");
            }
        }
    }

    #[test]
    fn oscillating_examples() {
        let four_one = enumerate_oscillating(4, 1).unwrap();
        assert_eq!(four_one.len(), 2);
        let middles: Vec<String> = four_one.iter().map(|t| t.steps()[2].to_string()).collect();
        assert_eq!(middles, ["", "2"]);
        assert_eq!(enumerate_oscillating(4, 2).unwrap().len(), 3);
        assert_eq!(enumerate_oscillating(4, 5).unwrap().len(), 3);
        assert!(enumerate_oscillating(3, 1).is_err());
        assert_eq!(enumerate_oscillating(0, 1).unwrap().len(), 1);
        let t = &four_one[1];
        assert_eq!(t.to_string(), "[];[1];[2];[1];[]");
        assert_eq!(&t.to_string().parse::<OscillatingTableau>().unwrap(), t);
        assert!("[];[2];[]".parse::<OscillatingTableau>().is_err());
    }

    #[test]
    fn oscillating_counts() {
        for r in 0..=5 {
            for n in 1..=3 {
                let enumerated = enumerate_oscillating(2 * r, n).unwrap();
                assert_eq!(enumerated.len() as u128, count_oscillating(2 * r, n));
                assert!(enumerated.iter().all(|t| t.max_rows() <= n && t.length() == 2 * r));
            }
            let all: u128 = (1..2 * r as u128).step_by(2).product();
            assert_eq!(count_oscillating(2 * r, r.max(1)), all);
        }
    }
}
