//! Morphisms of the Brauer category as exact linear combinations of diagrams.
//!
//! Composition `x·y` stacks `x` on top of `y` and multiplies by `δ` once per
//! closed loop. The loop value is an explicit argument so the same code runs
//! over `ℚ[δ]` and over a rational specialization.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagrams::{enumerate_diagrams, Diagram, DiagramError, PerfectMatching};
use crate::registry::{Registry, Strategy};
use crate::scalar::{int, parse_rational, DeltaPoly, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("shape mismatch: {left:?} cannot be combined with {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("trace needs a square shape, got {0:?}")]
    NotSquare((usize, usize)),
    #[error("generator index {index} out of range 1..={max} for {strands} strands")]
    IndexOutOfRange {
        index: usize,
        max: usize,
        strands: usize,
    },
    #[error("R_i({k}) has a pole at delta = {delta}")]
    Pole { k: i64, delta: Rational },
    #[error("R_i(k) needs k >= 0, got {0}")]
    NegativeParameter(i64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("cannot parse morphism: {0}")]
    Parse(String),
}

/// Glues `x ∈ D(r,s)` on top of `y ∈ D(s,t)`. Returns the number of closed loops and `x∘y`.
pub fn compose_diagrams(x: &Diagram, y: &Diagram) -> Result<(usize, Diagram), BrauerError> {
    if x.bottom() != y.top() {
        return Err(BrauerError::ShapeMismatch {
            left: x.shape(),
            right: y.shape(),
        });
    }
    let (r, s, t) = (x.top(), x.bottom(), y.bottom());
    // nodes: x top 0..r, shared middle r..r+s, y bottom r+s..r+s+t
    let total = r + s + t;
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for &(a, b) in x.matching().pairs() {
        union(a - 1, b - 1);
    }
    for &(a, b) in y.matching().pairs() {
        union(r + a - 1, r + b - 1);
    }
    let mut parent_copy = parent.clone();
    let externals: Vec<usize> = (0..r).chain(r + s..total).collect();
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (pos, &node) in externals.iter().enumerate() {
        by_root
            .entry(find(&mut parent_copy, node))
            .or_default()
            .push(pos);
    }
    let mut partner = vec![0; r + t];
    for ends in by_root.values() {
        debug_assert_eq!(ends.len(), 2);
        partner[ends[0]] = ends[1];
        partner[ends[1]] = ends[0];
    }
    let mut loop_roots: Vec<usize> = (r..r + s)
        .map(|m| find(&mut parent_copy, m))
        .filter(|root| !by_root.contains_key(root))
        .collect();
    loop_roots.sort_unstable();
    loop_roots.dedup();
    Ok((loop_roots.len(), Diagram::from_partners(r, t, &partner)))
}

/// Side-by-side placement; `y`'s points are shifted past `x`'s on both edges.
pub fn tensor_diagrams(x: &Diagram, y: &Diagram) -> Diagram {
    let (r1, s1) = x.shape();
    let (r2, s2) = y.shape();
    let map_x = |p: usize| if p <= r1 { p } else { p + r2 };
    let map_y = |p: usize| if p <= r2 { r1 + p } else { r1 + s1 + p };
    let pairs = x
        .matching()
        .pairs()
        .iter()
        .map(|&(a, b)| (map_x(a), map_x(b)))
        .chain(y.matching().pairs().iter().map(|&(a, b)| (map_y(a), map_y(b))));
    let matching = PerfectMatching::new(pairs).expect("disjoint relabelling");
    Diagram::new(r1 + r2, s1 + s2, matching).expect("shape adds")
}

/// `u_i ∈ D(m,m)`: pairs `(i,i+1)`, `(i',(i+1)')` and verticals elsewhere.
pub fn generator_u(i: usize, m: usize) -> Result<Diagram, BrauerError> {
    check_index(i, m)?;
    let pairs = (1..=m)
        .filter(|&a| a != i && a != i + 1)
        .map(|a| (a, m + a))
        .chain([(i, i + 1), (m + i, m + i + 1)]);
    Ok(Diagram::new(m, m, PerfectMatching::new(pairs)?)?)
}

/// `s_i ∈ D(m,m)`: pairs `(i,(i+1)')`, `(i',i+1)` and verticals elsewhere.
pub fn generator_s(i: usize, m: usize) -> Result<Diagram, BrauerError> {
    check_index(i, m)?;
    let pairs = (1..=m)
        .filter(|&a| a != i && a != i + 1)
        .map(|a| (a, m + a))
        .chain([(i, m + i + 1), (m + i, i + 1)]);
    Ok(Diagram::new(m, m, PerfectMatching::new(pairs)?)?)
}

fn check_index(i: usize, m: usize) -> Result<(), BrauerError> {
    if i == 0 || i + 1 > m {
        return Err(BrauerError::IndexOutOfRange {
            index: i,
            max: m.saturating_sub(1),
            strands: m,
        });
    }
    Ok(())
}

/// A finite linear combination of diagrams of one shape.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism<C> {
    top: usize,
    bottom: usize,
    terms: BTreeMap<Diagram, C>,
}

pub type RationalMorphism = Morphism<Rational>;

impl<C: Scalar> Morphism<C> {
    pub fn zero(top: usize, bottom: usize) -> Self {
        Self {
            top,
            bottom,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Self::from_term(C::one(), d)
    }

    pub fn from_term(c: C, d: Diagram) -> Self {
        let mut m = Self::zero(d.top(), d.bottom());
        m.add_term(d, c);
        m
    }

    pub fn identity(m: usize) -> Self {
        Self::from_diagram(Diagram::identity(m))
    }

    /// Sum of the given diagrams (all of shape `top|bottom`) with coefficient one.
    pub fn sum_of(top: usize, bottom: usize, diagrams: impl IntoIterator<Item = Diagram>) -> Self {
        let mut m = Self::zero(top, bottom);
        for d in diagrams {
            m.add_term(d, C::one());
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.top, self.bottom)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &Diagram) -> C {
        self.terms.get(d).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c·d`; panics if `d` has the wrong shape.
    pub fn add_term(&mut self, d: Diagram, c: C) {
        assert_eq!(d.shape(), self.shape(), "term shape");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, BrauerError> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BrauerError> {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.top, self.bottom);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), c.clone() * x.clone());
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), BrauerError> {
        if self.shape() != other.shape() {
            return Err(BrauerError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// `self · other`: `self` on top, one factor of `delta` per closed loop.
    pub fn compose(&self, other: &Self, delta: &C) -> Result<Self, BrauerError> {
        if self.bottom != other.top {
            return Err(BrauerError::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zero(self.top, other.bottom);
        let mut powers: Vec<C> = vec![C::one()];
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (loops, d) = compose_diagrams(x, y)?;
                while powers.len() <= loops {
                    let next = powers.last().unwrap().clone() * delta.clone();
                    powers.push(next);
                }
                out.add_term(d, a.clone() * b.clone() * powers[loops].clone());
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.top + other.top, self.bottom + other.bottom);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                out.add_term(tensor_diagrams(x, y), a.clone() * b.clone());
            }
        }
        out
    }

    /// Closure scalar `η_{2m} · (α ⊗ id_m) · η*_{2m}` with `η_{2m}` the `m` nested arcs.
    pub fn trace(&self, delta: &C) -> Result<C, BrauerError> {
        if self.top != self.bottom {
            return Err(BrauerError::NotSquare(self.shape()));
        }
        let m = self.top;
        let eta = nested_arcs(m);
        let cap = Morphism::from_diagram(eta.flip());
        let cup = Morphism::from_diagram(eta);
        let closed = cup
            .compose(&self.tensor(&Morphism::identity(m)), delta)?
            .compose(&cap, delta)?;
        Ok(closed
            .terms
            .into_values()
            .next()
            .unwrap_or_else(C::zero))
    }

    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Morphism<D> {
        let mut out = Morphism::zero(self.top, self.bottom);
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c));
        }
        out
    }

    /// Relabels every term through `f` (a bijection of diagrams into shape `top|bottom`).
    pub fn map_diagrams(&self, top: usize, bottom: usize, f: impl Fn(&Diagram) -> Diagram) -> Self {
        let mut out = Self::zero(top, bottom);
        for (d, c) in &self.terms {
            out.add_term(f(d), c.clone());
        }
        out
    }

    /// Linear extension of [`Diagram::bend`].
    pub fn bend(&self) -> Self {
        self.map_diagrams(0, self.top + self.bottom, Diagram::bend)
    }

    /// Inverse of [`Morphism::bend`].
    pub fn unbend(&self, top: usize) -> Result<Self, BrauerError> {
        if self.top != 0 || top > self.bottom {
            return Err(BrauerError::ShapeMismatch {
                left: self.shape(),
                right: (top, self.bottom.saturating_sub(top)),
            });
        }
        let mut out = Self::zero(top, self.bottom - top);
        for (d, c) in &self.terms {
            out.add_term(d.unbend(top)?, c.clone());
        }
        Ok(out)
    }
}

impl Morphism<DeltaPoly> {
    /// The ring map `δ ↦ at` applied to every coefficient.
    pub fn specialize(&self, at: &Rational) -> RationalMorphism {
        self.map_coefficients(|c| c.specialize(at))
    }
}

/// `η_{2m} ∈ D(0, 2m)`: pairs `(i, 2m + 1 − i)`.
pub fn nested_arcs(m: usize) -> Diagram {
    let matching = PerfectMatching::new((1..=m).map(|i| (i, 2 * m + 1 - i))).expect("valid");
    Diagram::boundary(matching)
}

impl<C: Scalar> fmt::Display for Morphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = c.display_term();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{magnitude}*{d}")?;
        }
        Ok(())
    }
}

impl FromStr for RationalMorphism {
    type Err = BrauerError;

    /// Parses `c1*(pairs) + c2*r|s:(pairs) - …`; a missing coefficient means 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        if text == "0" {
            return Ok(Self::zero(0, 0));
        }
        let mut terms = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let bytes: Vec<char> = text.chars().collect();
        let mut cur = String::new();
        let mut sign = 1;
        for (i, &ch) in bytes.iter().enumerate() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        terms.push((sign, cur.clone()));
                    } else if i != start {
                        return Err(BrauerError::Parse(s.to_string()));
                    }
                    cur.clear();
                    sign = if ch == '-' { -1 } else { 1 };
                    start = i + 1;
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        if cur.trim().is_empty() {
            return Err(BrauerError::Parse(s.to_string()));
        }
        terms.push((sign, cur));
        let mut out: Option<Self> = None;
        for (sign, term) in terms {
            let (coef, diagram) = match term.split_once('*') {
                Some((c, d)) => (
                    parse_rational(c).ok_or_else(|| BrauerError::Parse(term.clone()))?,
                    d,
                ),
                None => (Rational::one(), term.as_str()),
            };
            let d: Diagram = diagram.trim().parse()?;
            let m = out.get_or_insert_with(|| Self::zero(d.top(), d.bottom()));
            if m.shape() != d.shape() {
                return Err(BrauerError::ShapeMismatch {
                    left: m.shape(),
                    right: d.shape(),
                });
            }
            m.add_term(d, coef * Rational::from_integer(BigInt::from(sign)));
        }
        Ok(out.expect("at least one term"))
    }
}

/// `R_i(k) = 1/(k+1) · (1 + k s_i − 2k/(δ+2k−2) u_i)` in `D(m,m)` at a rational `δ`.
pub fn r_element(i: usize, k: i64, m: usize, delta: &Rational) -> Result<RationalMorphism, BrauerError> {
    if k < 0 {
        return Err(BrauerError::NegativeParameter(k));
    }
    let s = generator_s(i, m)?;
    let u = generator_u(i, m)?;
    let mut out = RationalMorphism::identity(m);
    if k == 0 {
        return Ok(out);
    }
    let denom = delta + int(2 * k - 2);
    if denom.is_zero() {
        return Err(BrauerError::Pole {
            k,
            delta: delta.clone(),
        });
    }
    out.add_term(s, int(k));
    out.add_term(u, -int(2 * k) / denom);
    Ok(out.scale(&Rational::new(BigInt::one(), BigInt::from(k + 1))))
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `E(n+1) = 1/(n+1)! · Σ_{x ∈ D(n+1,n+1)} x`.
pub fn e_sum<C: Scalar>(n: usize) -> Morphism<C> {
    let m = n + 1;
    let scale = C::from_rational(&Rational::new(BigInt::one(), factorial(m)));
    Morphism::sum_of(m, m, enumerate_diagrams(m, m)).scale(&scale)
}

/// A construction of the idempotent `E(n+1) ∈ D_{n+1}` at a rational loop value.
pub trait IdempotentConstruction: Strategy {
    fn build(&self, n: usize, delta: &Rational) -> Result<RationalMorphism, BrauerError>;
}

pub struct SumConstruction;
pub struct RecursiveConstruction;
pub struct LeftChainConstruction;
pub struct RightChainConstruction;

impl Strategy for SumConstruction {
    fn name(&self) -> &'static str {
        "sum"
    }
    fn summary(&self) -> &'static str {
        "normalized sum of all diagrams in D(n+1,n+1)"
    }
}

impl IdempotentConstruction for SumConstruction {
    fn build(&self, n: usize, _delta: &Rational) -> Result<RationalMorphism, BrauerError> {
        Ok(e_sum(n))
    }
}

impl Strategy for RecursiveConstruction {
    fn name(&self) -> &'static str {
        "recursive"
    }
    fn summary(&self) -> &'static str {
        "E(m+1) = E(m) R_m(m) E(m), E(1) = 1"
    }
}

impl IdempotentConstruction for RecursiveConstruction {
    fn build(&self, n: usize, delta: &Rational) -> Result<RationalMorphism, BrauerError> {
        let mut e = RationalMorphism::identity(1);
        for m in 1..=n {
            let lifted = e.tensor(&RationalMorphism::identity(1));
            let r = r_element(m, m as i64, m + 1, delta)?;
            e = lifted.compose(&r, delta)?.compose(&lifted, delta)?;
        }
        Ok(e)
    }
}

impl Strategy for LeftChainConstruction {
    fn name(&self) -> &'static str {
        "left-chain"
    }
    fn summary(&self) -> &'static str {
        "E(m+1) = E(m) R_m(m) R_{m-1}(m-1) ... R_1(1)"
    }
}

impl IdempotentConstruction for LeftChainConstruction {
    fn build(&self, n: usize, delta: &Rational) -> Result<RationalMorphism, BrauerError> {
        let mut e = RationalMorphism::identity(1);
        for m in 1..=n {
            let mut acc = e.tensor(&RationalMorphism::identity(1));
            for j in (1..=m).rev() {
                acc = acc.compose(&r_element(j, j as i64, m + 1, delta)?, delta)?;
            }
            e = acc;
        }
        Ok(e)
    }
}

impl Strategy for RightChainConstruction {
    fn name(&self) -> &'static str {
        "right-chain"
    }
    fn summary(&self) -> &'static str {
        "E(m+1) = R_1(1) R_2(2) ... R_m(m) E(m)"
    }
}

impl IdempotentConstruction for RightChainConstruction {
    fn build(&self, n: usize, delta: &Rational) -> Result<RationalMorphism, BrauerError> {
        let mut e = RationalMorphism::identity(1);
        for m in 1..=n {
            let mut acc = RationalMorphism::identity(m + 1);
            for j in 1..=m {
                acc = acc.compose(&r_element(j, j as i64, m + 1, delta)?, delta)?;
            }
            e = acc.compose(&e.tensor(&RationalMorphism::identity(1)), delta)?;
        }
        Ok(e)
    }
}

pub fn idempotent_constructions() -> Registry<dyn IdempotentConstruction> {
    Registry::<dyn IdempotentConstruction>::new("idempotent construction")
        .with(Box::new(SumConstruction))
        .with(Box::new(RecursiveConstruction))
        .with(Box::new(LeftChainConstruction))
        .with(Box::new(RightChainConstruction))
}

/// `E_rec(n)`: the recursive construction.
pub fn e_rec(n: usize, delta: &Rational) -> Result<RationalMorphism, BrauerError> {
    RecursiveConstruction.build(n, delta)
}

/// The loop value `−2n`.
pub fn symplectic_delta(n: usize) -> Rational {
    int(-2 * n as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Copy)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqChReport {
    pub checked: usize,
    /// First diagram `x` (in enumeration order) with `x·E ≠ ρ(x)E` or `E·x ≠ ρ(x)E`.
    pub witness: Option<(Diagram, Side)>,
}

impl EqChReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `x·E = ρ(x)·E = E·x` for every `x ∈ D(m,m)`, where `ρ(x) = 1` iff `x` is a permutation.
pub fn check_eq_ch(e: &RationalMorphism, delta: &Rational) -> Result<EqChReport, BrauerError> {
    if e.top() != e.bottom() {
        return Err(BrauerError::NotSquare(e.shape()));
    }
    let m = e.top();
    let diagrams = enumerate_diagrams(m, m);
    let zero = RationalMorphism::zero(m, m);
    let results: Vec<Result<Option<Side>, BrauerError>> = diagrams
        .par_iter()
        .map(|x| {
            let xm = RationalMorphism::from_diagram(x.clone());
            let expected = if x.propagating_number() == m { e } else { &zero };
            if &xm.compose(e, delta)? != expected {
                return Ok(Some(Side::Left));
            }
            if &e.compose(&xm, delta)? != expected {
                return Ok(Some(Side::Right));
            }
            Ok(None)
        })
        .collect();
    let mut witness = None;
    for (x, res) in diagrams.iter().zip(results) {
        if let Some(side) = res? {
            witness = Some((x.clone(), side));
            break;
        }
    }
    Ok(EqChReport {
        checked: diagrams.len(),
        witness,
    })
}

/// Trace of `E(n+1)` (sum construction) at loop value `delta`.
pub fn trace_of_e<C: Scalar>(n: usize, delta: &C) -> Result<C, BrauerError> {
    e_sum::<C>(n).trace(delta)
}
