//! The evaluation functor from the Brauer category at `δ = −2n` into invariant tensors
//! of the defining representation of `Sp(2n)`.
//!
//! `V` has basis `e_1..e_n, f_1..f_n` (indices `0..2n`) with `⟨e_i, f_j⟩ = δ_ij`,
//! `⟨f_i, e_j⟩ = −δ_ij`. A diagram in `D(r, s)` becomes a linear map `V^⊗r → V^⊗s`,
//! stored sparsely as a map from `(input indices, output indices)` to its matrix entry.
//! Diagrams are sliced into layers of crossings, caps and cups on adjacent wires.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::brauer::{BrauerError, Morphism, RationalMorphism};
use crate::diagrams::Diagram;
use crate::linalg;
use crate::registry::{Registry, Strategy};
use crate::scalar::{int, DeltaPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("cannot compose a map with {outputs} output(s) into one with {inputs} input(s)")]
    ShapeMismatch { outputs: usize, inputs: usize },
    #[error("tensors live over different spaces (n = {0} and n = {1})")]
    SpaceMismatch(usize, usize),
    #[error("coefficient {0} still depends on δ; specialize it before evaluating")]
    Unspecialized(String),
    #[error("matrix must be {expected}×{expected}")]
    MatrixShape { expected: usize },
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

/// The defining representation of `Sp(2n)` with its standard symplectic basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymplecticSpace {
    n: usize,
}

impl SymplecticSpace {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// `⟨b_a, b_b⟩` for basis indices `a, b`.
    pub fn form(&self, a: u8, b: u8) -> i64 {
        let (a, b) = (a as usize, b as usize);
        if a < self.n && b == a + self.n {
            1
        } else if a >= self.n && b + self.n == a {
            -1
        } else {
            0
        }
    }

    /// The dual basis vector of `b_a` with respect to the form, as `(sign, index)`:
    /// `⟨dual(b_a), b_b⟩ = δ_ab`.
    pub fn dual(&self, a: u8) -> (i64, u8) {
        let n = self.n as u8;
        if a < n {
            (-1, a + n)
        } else {
            (1, a - n)
        }
    }

    pub fn basis_name(&self, a: u8) -> String {
        let a = a as usize;
        if a < self.n {
            format!("e{}", a + 1)
        } else {
            format!("f{}", a - self.n + 1)
        }
    }
}

/// A sparse exact linear map `V^⊗inputs → V^⊗outputs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    space: SymplecticSpace,
    inputs: usize,
    outputs: usize,
    entries: BTreeMap<Vec<u8>, Rational>,
}

impl Tensor {
    pub fn zero(space: SymplecticSpace, inputs: usize, outputs: usize) -> Self {
        Self {
            space,
            inputs,
            outputs,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: SymplecticSpace, wires: usize) -> Self {
        let mut t = Self::zero(space, wires, wires);
        for word in words(space.dim(), wires) {
            let mut key = word.clone();
            key.extend_from_slice(&word);
            t.entries.insert(key, Rational::one());
        }
        t
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u8>, Rational> {
        &self.entries
    }

    /// The entry for input word `input` and output word `output`.
    pub fn get(&self, input: &[u8], output: &[u8]) -> Rational {
        let key: Vec<u8> = input.iter().chain(output).copied().collect();
        self.entries.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_entry(entries: &mut BTreeMap<Vec<u8>, Rational>, key: Vec<u8>, value: Rational) {
        if value.is_zero() {
            return;
        }
        match entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += value;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            Self::add_entry(&mut out.entries, k.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Tensor {
        let mut out = Self::zero(self.space, self.inputs, self.outputs);
        if !c.is_zero() {
            out.entries = self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    fn check_same(&self, other: &Tensor) -> Result<(), TensorError> {
        if self.space != other.space {
            return Err(TensorError::SpaceMismatch(self.space.n, other.space.n));
        }
        if (self.inputs, self.outputs) != (other.inputs, other.outputs) {
            return Err(TensorError::ShapeMismatch {
                outputs: other.outputs,
                inputs: self.inputs,
            });
        }
        Ok(())
    }

    /// Applies `self` first and then `next`; matches diagram composition `x·y = ev(x).then(ev(y))`.
    pub fn then(&self, next: &Tensor) -> Result<Tensor, TensorError> {
        if self.space != next.space {
            return Err(TensorError::SpaceMismatch(self.space.n, next.space.n));
        }
        if self.outputs != next.inputs {
            return Err(TensorError::ShapeMismatch {
                outputs: self.outputs,
                inputs: next.inputs,
            });
        }
        let mut by_input: BTreeMap<&[u8], Vec<(&[u8], &Rational)>> = BTreeMap::new();
        for (k, v) in &next.entries {
            let (i, o) = k.split_at(next.inputs);
            by_input.entry(i).or_default().push((o, v));
        }
        let mut out = Self::zero(self.space, self.inputs, next.outputs);
        for (k, v) in &self.entries {
            let (i, mid) = k.split_at(self.inputs);
            if let Some(cont) = by_input.get(mid) {
                for (o, w) in cont {
                    let key: Vec<u8> = i.iter().chain(o.iter()).copied().collect();
                    Self::add_entry(&mut out.entries, key, v * *w);
                }
            }
        }
        Ok(out)
    }

    /// Side-by-side product, `self` on the left wires.
    pub fn tensor(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        if self.space != other.space {
            return Err(TensorError::SpaceMismatch(self.space.n, other.space.n));
        }
        let mut out = Self::zero(self.space, self.inputs + other.inputs, self.outputs + other.outputs);
        for (k, v) in &self.entries {
            let (i, o) = k.split_at(self.inputs);
            for (k2, w) in &other.entries {
                let (i2, o2) = k2.split_at(other.inputs);
                let key: Vec<u8> = [i, i2, o, o2].concat();
                out.entries.insert(key, v * w);
            }
        }
        Ok(out)
    }

    /// Applies one layer to the output wires.
    pub fn apply(&self, layer: Layer) -> Tensor {
        let space = self.space;
        let base = self.inputs;
        match layer {
            Layer::Cross(at) => {
                let mut out = Self::zero(space, self.inputs, self.outputs);
                for (k, v) in &self.entries {
                    let mut key = k.clone();
                    key.swap(base + at, base + at + 1);
                    out.entries.insert(key, -v);
                }
                out
            }
            Layer::Cap(at) => {
                let mut out = Self::zero(space, self.inputs, self.outputs - 2);
                for (k, v) in &self.entries {
                    let form = space.form(k[base + at], k[base + at + 1]);
                    if form != 0 {
                        let mut key = k.clone();
                        key.drain(base + at..base + at + 2);
                        Self::add_entry(&mut out.entries, key, v * int(form));
                    }
                }
                out
            }
            Layer::Cup(at) => {
                let mut out = Self::zero(space, self.inputs, self.outputs + 2);
                let cup = cup_terms(space);
                for (k, v) in &self.entries {
                    for &(a, b, c) in &cup {
                        let mut key = k.clone();
                        key.splice(base + at..base + at, [a, b]);
                        Self::add_entry(&mut out.entries, key, v * int(c));
                    }
                }
                out
            }
        }
    }

    /// `g^{⊗outputs} ∘ self` for a matrix `g` with `g(b_j) = Σ_i g[i][j] b_i`.
    pub fn act_on_outputs(&self, g: &[Vec<Rational>]) -> Result<Tensor, TensorError> {
        self.check_matrix(g)?;
        let mut t = self.clone();
        for slot in self.inputs..self.inputs + self.outputs {
            t = t.apply_slot(slot, |i, j| g[i][j].clone());
        }
        Ok(t)
    }

    /// `self ∘ g^{⊗inputs}`.
    pub fn act_on_inputs(&self, g: &[Vec<Rational>]) -> Result<Tensor, TensorError> {
        self.check_matrix(g)?;
        let mut t = self.clone();
        for slot in 0..self.inputs {
            t = t.apply_slot(slot, |i, j| g[j][i].clone());
        }
        Ok(t)
    }

    fn check_matrix(&self, g: &[Vec<Rational>]) -> Result<(), TensorError> {
        let d = self.space.dim();
        if g.len() != d || g.iter().any(|row| row.len() != d) {
            return Err(TensorError::MatrixShape { expected: d });
        }
        Ok(())
    }

    fn apply_slot(&self, slot: usize, m: impl Fn(usize, usize) -> Rational) -> Tensor {
        let mut out = Self::zero(self.space, self.inputs, self.outputs);
        for (k, v) in &self.entries {
            let j = k[slot] as usize;
            for i in 0..self.space.dim() {
                let c = m(i, j);
                if !c.is_zero() {
                    let mut key = k.clone();
                    key[slot] = i as u8;
                    Self::add_entry(&mut out.entries, key, v * c);
                }
            }
        }
        out
    }

    /// One line per nonzero entry: `e1 f2 -> f1 e2 : -1`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            let (i, o) = k.split_at(self.inputs);
            let names = |w: &[u8]| {
                w.iter().map(|&a| self.space.basis_name(a)).collect::<Vec<_>>().join(" ")
            };
            s.push_str(&format!("{} -> {} : {}\n", names(i), names(o), v));
        }
        s
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tensor n={} {}->{} nnz={}",
            self.space.n,
            self.inputs,
            self.outputs,
            self.entries.len()
        )
    }
}

fn words(base: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..base as u8).map(move |a| {
                    let mut w = w.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

/// `Σ_a b_a ⊗ dual(b_a)` as `(first, second, coefficient)`.
fn cup_terms(space: SymplecticSpace) -> Vec<(u8, u8, i64)> {
    (0..space.dim() as u8)
        .map(|a| {
            let (sign, b) = space.dual(a);
            (a, b, sign)
        })
        .collect()
}

/// The building blocks of the slicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layer {
    /// Swap of wires `at` and `at+1`, acting by `u ⊗ v ↦ −v ⊗ u`.
    Cross(usize),
    /// Pairing of wires `at` and `at+1`.
    Cap(usize),
    /// New wires at positions `at`, `at+1` carrying the invariant `Σ_a b_a ⊗ dual(b_a)`.
    Cup(usize),
}

impl Layer {
    /// The layer as a map on exactly the wires it touches.
    pub fn generator(self, space: SymplecticSpace) -> Tensor {
        match self {
            Layer::Cross(_) => Tensor::identity(space, 2).apply(Layer::Cross(0)),
            Layer::Cap(_) => Tensor::identity(space, 2).apply(Layer::Cap(0)),
            Layer::Cup(_) => Tensor::identity(space, 0).apply(Layer::Cup(0)),
        }
    }

    pub fn shift(self) -> (usize, isize) {
        match self {
            Layer::Cross(at) => (at, 0),
            Layer::Cap(at) => (at, -2),
            Layer::Cup(at) => (at, 2),
        }
    }
}

/// The evaluation of the crossing generator on two wires.
pub fn crossing(space: SymplecticSpace) -> Tensor {
    Layer::Cross(0).generator(space)
}

/// The pairing `V ⊗ V → k`.
pub fn cap(space: SymplecticSpace) -> Tensor {
    Layer::Cap(0).generator(space)
}

/// The invariant vector `k → V ⊗ V`.
pub fn cup(space: SymplecticSpace) -> Tensor {
    Layer::Cup(0).generator(space)
}

/// A way of cutting a diagram into layers.
pub trait Slicing: Strategy {
    fn layers(&self, d: &Diagram) -> Vec<Layer>;
}

/// Route top wires so that capped pairs are adjacent, cap them, then open cups for the
/// bottom arcs and route everything into bottom order.
pub struct CapsFirst;

/// Open cups for the bottom arcs first, route all wires at once, then cap.
pub struct CupsFirst;

impl Strategy for CapsFirst {
    fn name(&self) -> &'static str {
        "caps-first"
    }

    fn summary(&self) -> &'static str {
        "cap top arcs before opening bottom arcs; width stays at most max(r, s)"
    }
}

impl Strategy for CupsFirst {
    fn name(&self) -> &'static str {
        "cups-first"
    }

    fn summary(&self) -> &'static str {
        "open every bottom arc first, then route and cap"
    }
}

/// Bubble-sorts `wires` by `rank`, emitting one crossing per adjacent swap.
fn route(wires: &mut [usize], rank: impl Fn(usize) -> usize, layers: &mut Vec<Layer>) {
    let len = wires.len();
    for pass in 0..len {
        let mut swapped = false;
        for i in 0..len.saturating_sub(pass + 1) {
            if rank(wires[i]) > rank(wires[i + 1]) {
                wires.swap(i, i + 1);
                layers.push(Layer::Cross(i));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
}

/// Top-top arcs (sorted), and for each bottom point its partner.
fn arc_data(d: &Diagram) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let r = d.top();
    let mut top_arcs = Vec::new();
    let mut bottom_arcs = Vec::new();
    for &(a, b) in d.matching().pairs() {
        if b <= r {
            top_arcs.push((a, b));
        } else if a > r {
            bottom_arcs.push((a, b));
        }
    }
    (top_arcs, bottom_arcs)
}

impl Slicing for CapsFirst {
    fn layers(&self, d: &Diagram) -> Vec<Layer> {
        let r = d.top();
        let (top_arcs, bottom_arcs) = arc_data(d);
        let mut layers = Vec::new();
        // wires are labelled by points: top points, then bottom points for cups
        let mut rank = vec![0usize; d.top() + d.bottom() + 1];
        let mut next = 0;
        for &(a, b) in &top_arcs {
            rank[a] = next;
            rank[b] = next + 1;
            next += 2;
        }
        for p in 1..=r {
            let q = d.matching().partner(p).expect("perfect");
            if q > r {
                rank[p] = next + q;
            }
        }
        let mut wires: Vec<usize> = (1..=r).collect();
        route(&mut wires, |w| rank[w], &mut layers);
        for _ in &top_arcs {
            layers.push(Layer::Cap(0));
        }
        // relabel surviving wires by their bottom endpoint
        let mut wires: Vec<usize> = wires[2 * top_arcs.len()..]
            .iter()
            .map(|&p| d.matching().partner(p).expect("perfect"))
            .collect();
        for &(a, b) in &bottom_arcs {
            layers.push(Layer::Cup(wires.len()));
            wires.push(a);
            wires.push(b);
        }
        route(&mut wires, |w| w, &mut layers);
        layers
    }
}

impl Slicing for CupsFirst {
    fn layers(&self, d: &Diagram) -> Vec<Layer> {
        let r = d.top();
        let points = d.top() + d.bottom();
        let (top_arcs, bottom_arcs) = arc_data(d);
        let mut layers = Vec::new();
        let mut wires: Vec<usize> = (1..=r).collect();
        for &(a, b) in &bottom_arcs {
            layers.push(Layer::Cup(wires.len()));
            wires.push(a);
            wires.push(b);
        }
        // top points rank by their cap slot or by the bottom point they reach
        let mut rank = vec![0usize; points + 1];
        let mut next = 0;
        for &(a, b) in &top_arcs {
            rank[a] = next;
            rank[b] = next + 1;
            next += 2;
        }
        for p in 1..=points {
            let q = d.matching().partner(p).expect("perfect");
            if p <= r && q > r {
                rank[p] = next + q;
            } else if p > r && q > r {
                rank[p] = next + p;
            }
        }
        route(&mut wires, |w| rank[w], &mut layers);
        for _ in &top_arcs {
            layers.push(Layer::Cap(0));
        }
        layers
    }
}

pub fn slicings() -> Registry<dyn Slicing> {
    Registry::<dyn Slicing>::new("slicing")
        .with(Box::new(CapsFirst))
        .with(Box::new(CupsFirst))
}

/// The largest number of wires alive at any point of the slicing.
pub fn slicing_width(d: &Diagram, layers: &[Layer]) -> usize {
    let mut width = d.top() as isize;
    let mut max = width;
    for layer in layers {
        width += layer.shift().1;
        max = max.max(width);
    }
    max as usize
}

pub fn ev_diagram(d: &Diagram, n: usize, slicing: &dyn Slicing) -> Tensor {
    let space = SymplecticSpace::new(n);
    slicing
        .layers(d)
        .into_iter()
        .fold(Tensor::identity(space, d.top()), |t, layer| t.apply(layer))
}

pub fn ev_morphism(m: &RationalMorphism, n: usize, slicing: &dyn Slicing) -> Tensor {
    let space = SymplecticSpace::new(n);
    let mut out = Tensor::zero(space, m.top(), m.bottom());
    for (d, c) in m.terms() {
        let t = ev_diagram(d, n, slicing).scale(c);
        out = out.add(&t).expect("same shape");
    }
    out
}

/// Evaluates a morphism with polynomial coefficients, which must all be constant.
pub fn ev_formal_morphism(
    m: &Morphism<DeltaPoly>,
    n: usize,
    slicing: &dyn Slicing,
) -> Result<Tensor, TensorError> {
    if let Some((_, c)) = m.terms().find(|(_, c)| c.degree().is_some_and(|deg| deg > 0)) {
        return Err(TensorError::Unspecialized(c.to_string()));
    }
    let at_zero = m.map_coefficients(|c| c.specialize(&Rational::zero()));
    Ok(ev_morphism(&at_zero, n, slicing))
}

/// Dimension of the span of the given tensors.
pub fn rank_of_span(tensors: &[Tensor]) -> Result<usize, TensorError> {
    if let Some(first) = tensors.first() {
        for t in tensors {
            first.check_same(t)?;
        }
    }
    let rows: Vec<_> = tensors.iter().map(|t| t.entries.clone()).collect();
    Ok(linalg::rank(&rows))
}

/// Form-preserving matrices used as equivariance witnesses: the swap `e_i ↦ f_i, f_i ↦ −e_i`,
/// a torus element, a transvection `f_i ↦ f_i + e_i` and, for `n ≥ 2`, a permutation of indices.
pub fn symplectic_samples(n: usize) -> Vec<Vec<Vec<Rational>>> {
    let d = 2 * n;
    let zero = || vec![vec![Rational::zero(); d]; d];
    let mut out = Vec::new();
    let mut swap = zero();
    let mut torus = zero();
    let mut shear = zero();
    for i in 0..n {
        // columns are images of basis vectors
        swap[i + n][i] = int(1);
        swap[i][i + n] = int(-1);
        torus[i][i] = int(i as i64 + 2);
        torus[i + n][i + n] = Rational::new(1.into(), (i as i64 + 2).into());
        shear[i][i] = int(1);
        shear[i + n][i + n] = int(1);
        shear[i][i + n] = int(1);
    }
    out.extend([swap, torus, shear]);
    if n >= 2 {
        let mut perm = zero();
        for i in 0..n {
            let j = (i + 1) % n;
            perm[j][i] = int(1);
            perm[j + n][i + n] = int(1);
        }
        out.push(perm);
    }
    out
}

/// Whether `g` preserves the symplectic form.
pub fn preserves_form(space: SymplecticSpace, g: &[Vec<Rational>]) -> bool {
    let d = space.dim();
    (0..d).all(|a| {
        (0..d).all(|b| {
            let mut total = Rational::zero();
            for i in 0..d {
                for j in 0..d {
                    let f = space.form(i as u8, j as u8);
                    if f != 0 {
                        total += &g[i][a] * &g[j][b] * int(f);
                    }
                }
            }
            total == int(space.form(a as u8, b as u8))
        })
    })
}
