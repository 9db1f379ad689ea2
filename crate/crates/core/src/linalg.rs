//! Exact rank of sparse rational row vectors by fraction-free elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

type Row<K> = BTreeMap<K, BigInt>;

/// Clears denominators and divides out the content, leaving a primitive integer row
/// with a positive leading entry.
fn primitive_row<K: Ord + Clone>(row: &BTreeMap<K, Rational>) -> Row<K> {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: Row<K> = row
        .iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, q)| (k.clone(), q.numer() * (&lcm / q.denom())))
        .collect();
    normalize(&mut out);
    out
}

fn normalize<K: Ord>(row: &mut Row<K>) {
    row.retain(|_, v| !v.is_zero());
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return;
    }
    let negate = row.values().next().is_some_and(|v| v.is_negative());
    for v in row.values_mut() {
        *v /= &g;
        if negate {
            *v = -&*v;
        }
    }
}

/// Integer row echelon form built incrementally; rows are kept primitive.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    pivots: BTreeMap<K, Row<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self {
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row; returns true if it was independent of the rows seen so far.
    pub fn insert(&mut self, row: &BTreeMap<K, Rational>) -> bool {
        let mut row = primitive_row(row);
        while let Some((lead, a)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) {
            let Some(pivot) = self.pivots.get(&lead) else {
                self.pivots.insert(lead, row);
                return true;
            };
            // row ← p·row − a·pivot cancels the leading entry without fractions
            let p = pivot[&lead].clone();
            for v in row.values_mut() {
                *v *= &p;
            }
            for (k, v) in pivot {
                let entry = row.entry(k.clone()).or_insert_with(BigInt::zero);
                *entry -= &a * v;
            }
            normalize(&mut row);
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank<K: Ord + Clone>(rows: &[BTreeMap<K, Rational>]) -> usize {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}
