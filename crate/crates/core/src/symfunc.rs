//! Exact symmetric functions in the power-sum basis.
//!
//! Schur, complete and elementary functions are converted into power sums on entry; scalar
//! products use `⟨p_λ, p_μ⟩ = z_λ [λ = μ]`. Two-alphabet expressions `h_r(X·Z)` are expanded
//! as `Σ_{ν ⊢ r} z_ν⁻¹ p_ν(X) Π_i p_{ν_i}[Z](Y)` and then paired in `Y`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::registry::{Registry, Strategy};
use crate::scalar::{int, parse_rational, QPolynomial, Rational};
use crate::tableaux::{fake_degree_schur, partitions_of, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymFuncError {
    #[error("partitions {0} and {1} have different sizes")]
    SizeMismatch(Partition, Partition),
    #[error("expected a homogeneous function, found degrees {0:?}")]
    Inhomogeneous(Vec<usize>),
    #[error("degrees {0} and {1} differ")]
    DegreeMismatch(usize, usize),
    #[error("coefficient {0} does not fit in a machine integer")]
    Overflow(String),
    #[error("cannot parse symmetric function at {position}: {message}")]
    Parse { position: usize, message: String },
}

/// A symmetric function as a finite combination of power sums `p_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymFuncP {
    terms: BTreeMap<Partition, Rational>,
}

impl SymFuncP {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::p(Partition::empty())
    }

    pub fn p(lam: Partition) -> Self {
        Self::from_term(lam, Rational::one())
    }

    pub fn from_term(lam: Partition, c: Rational) -> Self {
        let mut f = Self::zero();
        f.add_term(lam, c);
        f
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lam: &Partition) -> Rational {
        self.terms.get(lam).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, lam: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(lam) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product keeping only terms of degree at most `max_degree`.
    pub fn mul_truncated(&self, other: &Self, max_degree: usize) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.size() + b.size() <= max_degree {
                    out.add_term(a.union(b), x * y);
                }
            }
        }
        out
    }

    /// Distinct degrees of the nonzero terms, increasing.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(Partition::size).collect();
        d.dedup();
        d
    }

    /// The degree of a homogeneous function; zero has no degree.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, SymFuncError> {
        match self.degrees().as_slice() {
            [] => Ok(None),
            [d] => Ok(Some(*d)),
            ds => Err(SymFuncError::Inhomogeneous(ds.to_vec())),
        }
    }

    pub fn component(&self, degree: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.size() == degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn truncate(&self, max_degree: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.size() <= max_degree)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// `p_m[f]`: every power sum `p_j` becomes `p_{mj}`.
    pub fn power_plethysm(&self, m: usize) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.scaled(m), v.clone())).collect(),
        }
    }

    /// The Hall scalar product.
    pub fn inner(&self, other: &Self) -> Rational {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(k, v)| big.terms.get(k).map(|w| v * w * z(k)))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Degree of the representation: `Σ_d d! · [p_{1^d}]`.
    pub fn dimension(&self) -> Rational {
        self.terms
            .iter()
            .filter(|(k, _)| k.parts().iter().all(|&p| p == 1))
            .map(|(k, v)| v * Rational::from(factorial(k.size())))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for SymFuncP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                _ => write!(f, " {sign} ")?,
            }
            let abs = c.abs();
            let basis = format!("p[{lam}]");
            if abs.is_one() {
                write!(f, "{basis}")?;
            } else {
                write!(f, "{abs}*{basis}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SymFuncP {
    type Err = SymFuncError;

    /// Sums of terms `c*X[parts]` with `X` one of `p`, `s`, `h`, `e`; `c*` is optional and a
    /// bare rational is a constant.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let mut out = SymFuncP::zero();
        let err = |position: usize, message: &str| SymFuncError::Parse {
            position: position + 1,
            message: message.to_string(),
        };
        let skip = |pos: &mut usize| {
            while *pos < chars.len() && chars[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip(&mut pos);
            if pos >= chars.len() {
                if first {
                    return Err(err(pos, "empty expression"));
                }
                break;
            }
            let mut sign = Rational::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(err(pos, "expected + or -"));
            }
            first = false;
            let start = pos;
            while pos < chars.len() && (chars[pos].is_ascii_digit() || chars[pos] == '/') {
                pos += 1;
            }
            let mut coeff = Rational::one();
            if pos > start {
                let text: String = chars[start..pos].iter().collect();
                coeff = parse_rational(&text).ok_or_else(|| err(start, "bad coefficient"))?;
                skip(&mut pos);
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                    skip(&mut pos);
                } else {
                    out = out.add(&SymFuncP::one().scale(&(sign * coeff)));
                    continue;
                }
            }
            let basis = *chars.get(pos).ok_or_else(|| err(pos, "expected basis name"))?;
            if !matches!(basis, 'p' | 's' | 'h' | 'e') {
                return Err(err(pos, "expected one of p, s, h, e"));
            }
            pos += 1;
            if chars.get(pos) != Some(&'[') {
                return Err(err(pos, "expected ["));
            }
            let open = pos;
            let close = chars[open..]
                .iter()
                .position(|&c| c == ']')
                .map(|i| open + i)
                .ok_or_else(|| err(open, "unclosed ["))?;
            let text: String = chars[open..=close].iter().collect();
            let lam: Partition = text.parse().map_err(|_| err(open, "bad partition"))?;
            pos = close + 1;
            let term = match basis {
                'p' => SymFuncP::p(lam),
                's' => schur_to_p(&lam),
                'h' => product_of(&lam, h_to_p),
                _ => product_of(&lam, e_to_p),
            };
            out = out.add(&term.scale(&(sign * coeff)));
        }
        Ok(out)
    }
}

fn product_of(lam: &Partition, f: fn(usize) -> SymFuncP) -> SymFuncP {
    lam.parts().iter().fold(SymFuncP::one(), |acc, &k| acc.mul(&f(k)))
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |a, b| a * b)
}

/// `z_λ = Π_i i^{m_i} m_i!`, the size of the centralizer of a permutation of cycle type `λ`.
pub fn z(lam: &Partition) -> Rational {
    let mut out = BigInt::one();
    for (value, count) in lam.multiplicities() {
        out *= BigInt::from(value).pow(count as u32) * factorial(count);
    }
    Rational::from(out)
}

/// Sign of a permutation of cycle type `λ`.
pub fn sign(lam: &Partition) -> i64 {
    if (lam.size() - lam.len()) % 2 == 0 {
        1
    } else {
        -1
    }
}

type CharacterCache = RwLock<HashMap<(Partition, Partition), i64>>;

fn character_cache() -> &'static CharacterCache {
    static CACHE: OnceLock<CharacterCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule, removing rim hooks via beta-numbers.
pub fn mn_character(lam: &Partition, mu: &Partition) -> Result<i64, SymFuncError> {
    if lam.size() != mu.size() {
        return Err(SymFuncError::SizeMismatch(lam.clone(), mu.clone()));
    }
    Ok(mn(lam, mu))
}

fn mn(lam: &Partition, mu: &Partition) -> i64 {
    if mu.is_empty() {
        return i64::from(lam.is_empty());
    }
    let key = (lam.clone(), mu.clone());
    if let Some(&v) = character_cache().read().expect("cache lock").get(&key) {
        return v;
    }
    let hook = mu.part(0);
    let rest = Partition::new(mu.parts()[1..].iter().copied());
    let len = lam.len();
    let beta: Vec<usize> = (0..len).map(|i| lam.part(i) + len - 1 - i).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < hook || beta.contains(&(b - hook)) {
            continue;
        }
        let nb = b - hook;
        let between = beta.iter().filter(|&&x| nb < x && x < b).count();
        let mut next = beta.clone();
        next[i] = nb;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape = Partition::new((0..len).map(|j| next[j] - (len - 1 - j)));
        let value = mn(&shape, &rest);
        total += if between % 2 == 0 { value } else { -value };
    }
    character_cache().write().expect("cache lock").insert(key, total);
    total
}

/// `s_λ = Σ_μ z_μ⁻¹ χ^λ(μ) p_μ`.
pub fn schur_to_p(lam: &Partition) -> SymFuncP {
    let mut out = SymFuncP::zero();
    for mu in partitions_of(lam.size()) {
        let chi = mn(lam, &mu);
        if chi != 0 {
            let c = int(chi) / z(&mu);
            out.add_term(mu, c);
        }
    }
    out
}

/// `h_k = Σ_{μ ⊢ k} z_μ⁻¹ p_μ`.
pub fn h_to_p(k: usize) -> SymFuncP {
    let mut out = SymFuncP::zero();
    for mu in partitions_of(k) {
        let c = z(&mu).recip();
        out.add_term(mu, c);
    }
    out
}

/// `e_k = Σ_{μ ⊢ k} ε_μ z_μ⁻¹ p_μ`.
pub fn e_to_p(k: usize) -> SymFuncP {
    let mut out = SymFuncP::zero();
    for mu in partitions_of(k) {
        let c = int(sign(&mu)) / z(&mu);
        out.add_term(mu, c);
    }
    out
}

/// `⟨f, s_λ⟩` for homogeneous `f`.
pub fn p_to_schur_coeff(f: &SymFuncP, lam: &Partition) -> Result<Rational, SymFuncError> {
    match f.homogeneous_degree()? {
        None => return Ok(Rational::zero()),
        Some(d) if d != lam.size() => return Err(SymFuncError::DegreeMismatch(d, lam.size())),
        _ => {}
    }
    Ok(f.terms()
        .map(|(mu, c)| c * int(mn(lam, mu)))
        .fold(Rational::zero(), |a, b| a + b))
}

/// Nonzero Schur coefficients of a homogeneous function.
pub fn schur_expansion(f: &SymFuncP) -> Result<BTreeMap<Partition, Rational>, SymFuncError> {
    let Some(d) = f.homogeneous_degree()? else {
        return Ok(BTreeMap::new());
    };
    let mut out = BTreeMap::new();
    for lam in partitions_of(d) {
        let c = p_to_schur_coeff(f, &lam)?;
        if !c.is_zero() {
            out.insert(lam, c);
        }
    }
    Ok(out)
}

/// Schur functions as text, `s[2,2] + 2*s[4]`.
pub fn format_schur(expansion: &BTreeMap<Partition, Rational>) -> String {
    if expansion.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (lam, c)) in expansion.iter().enumerate() {
        if i > 0 {
            s.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            s.push('-');
        }
        let abs = c.abs();
        if !abs.is_one() {
            s.push_str(&format!("{abs}*"));
        }
        s.push_str(&format!("s[{lam}]"));
    }
    s
}

/// `p_λ ∗ p_μ = [λ = μ] z_λ p_λ`.
pub fn kronecker(f: &SymFuncP, g: &SymFuncP) -> Result<SymFuncP, SymFuncError> {
    if let (Some(a), Some(b)) = (f.homogeneous_degree()?, g.homogeneous_degree()?) {
        if a != b {
            return Err(SymFuncError::DegreeMismatch(a, b));
        }
    }
    let mut out = SymFuncP::zero();
    for (lam, c) in f.terms() {
        let d = g.coefficient(lam);
        if !d.is_zero() {
            out.add_term(lam.clone(), c * d * z(lam));
        }
    }
    Ok(out)
}

/// `h_j[g] = Σ_{ν ⊢ j} z_ν⁻¹ Π_i p_{ν_i}[g]`, dropping terms above `max_degree`.
pub fn h_plethysm(j: usize, g: &SymFuncP, max_degree: usize) -> SymFuncP {
    let mut out = SymFuncP::zero();
    for nu in partitions_of(j) {
        let product = nu
            .parts()
            .iter()
            .fold(SymFuncP::one(), |acc, &m| acc.mul_truncated(&g.power_plethysm(m), max_degree));
        out = out.add(&product.scale(&z(&nu).recip()));
    }
    out
}

/// `⟨h_r(X·Z), G⟩_Y = Σ_{ν ⊢ r} z_ν⁻¹ p_ν(X) ⟨Π_i p_{ν_i}[Z], G⟩`.
pub fn cauchy_pairing(r: usize, alphabet: &SymFuncP, g: &SymFuncP) -> SymFuncP {
    let max_degree = g.degrees().last().copied().unwrap_or(0);
    let mut out = SymFuncP::zero();
    for nu in partitions_of(r) {
        let product = nu.parts().iter().fold(SymFuncP::one(), |acc, &m| {
            acc.mul_truncated(&alphabet.power_plethysm(m), max_degree)
        });
        let c = product.inner(g) / z(&nu);
        out.add_term(nu, c);
    }
    out
}

/// `Σ s_μ` over partitions `μ` of each size in `sizes` with all parts even and `μ₁ ≤ max_first`.
pub fn even_part_schur_sum(sizes: impl IntoIterator<Item = usize>, max_first: usize) -> SymFuncP {
    let mut out = SymFuncP::zero();
    for size in sizes {
        for mu in partitions_of(size) {
            if mu.parts().iter().all(|p| p % 2 == 0) && mu.part(0) <= max_first {
                out = out.add(&schur_to_p(&mu));
            }
        }
    }
    out
}

/// Character of `S_{2r}` on invariants in `V^{⊗2r}` for `Sp(2n)`:
/// `Σ s_{λᵗ}` over `λ ⊢ 2r` with even columns and at most `2n` rows.
pub fn invariant_character_matchings(r: usize, n: usize) -> SymFuncP {
    even_part_schur_sum([2 * r], 2 * n)
}

/// Character of `S_r` on invariants in the `r`-th tensor power of the `k`-th symmetric power.
pub fn invariant_character_sym_power(r: usize, k: usize, n: usize) -> SymFuncP {
    let g = even_part_schur_sum([k * r], 2 * n);
    cauchy_pairing(r, &e_to_p(k), &g)
}

fn h_or_zero(k: isize) -> SymFuncP {
    if k < 0 {
        SymFuncP::zero()
    } else {
        h_to_p(k as usize)
    }
}

/// `h_k − h_{k−2}`, with `h_{−1} = 0`.
pub fn fundamental_alphabet(k: usize) -> SymFuncP {
    h_or_zero(k as isize).sub(&h_or_zero(k as isize - 2))
}

/// Character of `S_r` on invariants in the `r`-th tensor power of the `k`-th fundamental
/// representation.
pub fn invariant_character_fundamental(r: usize, k: usize, n: usize) -> SymFuncP {
    let g = even_part_schur_sum(0..=k * r, 2 * n);
    cauchy_pairing(r, &fundamental_alphabet(k), &g)
}

/// `H[h_2] = Σ_j h_j[h_2]`, up to degree `max_degree`.
fn h_of_h2(max_degree: usize) -> SymFuncP {
    let h2 = h_to_p(2);
    (0..=max_degree / 2).fold(SymFuncP::zero(), |acc, j| acc.add(&h_plethysm(j, &h2, max_degree)))
}

/// The symmetric-power character once `n` exceeds `kr`: `⟨h_r(X·e_k), H[h_2]⟩`.
pub fn sym_power_stable_character(r: usize, k: usize) -> SymFuncP {
    cauchy_pairing(r, &e_to_p(k), &h_of_h2(k * r))
}

/// Character of the species of `k`-regular multigraphs without loops on `r` vertices:
/// `⟨h_r(X·(h_k − h_{k−2})), H[h_2]⟩`.
pub fn regular_graph_character(r: usize, k: usize) -> SymFuncP {
    cauchy_pairing(r, &fundamental_alphabet(k), &h_of_h2(k * r))
}

/// `1 + h_1 + ⋯ + h_d`.
fn h_series(max_degree: usize) -> SymFuncP {
    (0..=max_degree).fold(SymFuncP::zero(), |acc, j| acc.add(&h_to_p(j)))
}

/// Degree `r` part of `h_n[H]`: set partitions of `r` points into at most `n` blocks.
pub fn set_partition_character(r: usize, n: usize) -> SymFuncP {
    h_plethysm(n, &h_series(r), r).component(r)
}

/// `⟨h_r(X·h_k), h_n[H]⟩`: multiset partitions into at most `n` blocks of `r` labels
/// repeated `k` times.
pub fn multiset_partition_character(r: usize, n: usize, k: usize) -> SymFuncP {
    let g = h_plethysm(n, &h_series(k * r), k * r);
    cauchy_pairing(r, &h_to_p(k), &g)
}

/// `Σ s_λ ∗ s_λ` over `λ ⊢ r` with at most `n` rows (all of them when `n` is `None`).
pub fn adjoint_character(r: usize, n: Option<usize>) -> SymFuncP {
    let mut out = SymFuncP::zero();
    for lam in partitions_of(r) {
        if n.is_some_and(|n| lam.len() > n) {
            continue;
        }
        let s = schur_to_p(&lam);
        out = out.add(&kronecker(&s, &s).expect("same degree"));
    }
    out
}

/// `Σ_{λ ⊢ r} p_λ`.
pub fn power_sum_total(r: usize) -> SymFuncP {
    partitions_of(r).into_iter().fold(SymFuncP::zero(), |acc, lam| acc.add(&SymFuncP::p(lam)))
}

/// Compares `h_r[h_2]` with the sum of `s_λ` over `λ ⊢ 2r` with even rows.
pub fn littlewood_check(r: usize) -> bool {
    let lhs = h_plethysm(r, &h_to_p(2), 2 * r);
    let rhs = even_part_schur_sum([2 * r], 2 * r);
    lhs == rhs
}

type FakeDegreeCache = RwLock<HashMap<Partition, QPolynomial>>;

fn cached_fake_degree_schur(lam: &Partition) -> QPolynomial {
    static CACHE: OnceLock<FakeDegreeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cache lock").get(lam) {
        return p.clone();
    }
    let p = fake_degree_schur(lam);
    cache.write().expect("cache lock").insert(lam.clone(), p.clone());
    p
}

/// `fd(f) = Σ_λ ⟨f, s_λ⟩ fd(s_λ)`, kept as an integer polynomial over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FakeDegree {
    pub numerator: QPolynomial,
    pub denominator: i64,
    /// Schur coefficients that are not integers.
    pub non_integral: Vec<(Partition, Rational)>,
    /// Schur coefficients that are negative.
    pub negative: Vec<(Partition, Rational)>,
}

impl FakeDegree {
    /// The polynomial when every Schur coefficient was an integer.
    pub fn polynomial(&self) -> Option<&QPolynomial> {
        (self.denominator == 1).then_some(&self.numerator)
    }
}

impl fmt::Display for FakeDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/{}", self.numerator, self.denominator)
        }
    }
}

pub fn fake_degree(f: &SymFuncP) -> Result<FakeDegree, SymFuncError> {
    let expansion = schur_expansion(f)?;
    let denominator = expansion
        .values()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let to_i64 = |x: &BigInt| x.to_i64().ok_or_else(|| SymFuncError::Overflow(x.to_string()));
    let mut numerator = QPolynomial::zero();
    for (lam, c) in &expansion {
        let scaled = c.numer() * (&denominator / c.denom());
        numerator = numerator.add(&cached_fake_degree_schur(lam).scale(to_i64(&scaled)?));
    }
    let non_integral = expansion
        .iter()
        .filter(|(_, c)| !c.is_integer())
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect();
    let negative = expansion
        .iter()
        .filter(|(_, c)| c.is_negative())
        .map(|(l, c)| (l.clone(), c.clone()))
        .collect();
    Ok(FakeDegree {
        numerator,
        denominator: to_i64(&denominator)?,
        non_integral,
        negative,
    })
}

/// Parameters shared by the character formulas; each formula reads the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterParams {
    pub r: usize,
    pub n: usize,
    pub k: usize,
}

/// A named Frobenius character formula.
pub trait CharacterFormula: Strategy {
    fn character(&self, params: CharacterParams) -> SymFuncP;
}

macro_rules! formula {
    ($ty:ident, $name:literal, $summary:literal, |$p:ident| $body:expr) => {
        pub struct $ty;

        impl Strategy for $ty {
            fn name(&self) -> &'static str {
                $name
            }

            fn summary(&self) -> &'static str {
                $summary
            }
        }

        impl CharacterFormula for $ty {
            fn character(&self, $p: CharacterParams) -> SymFuncP {
                $body
            }
        }
    };
}

formula!(MatchingsFormula, "matchings", "invariants in V^(2r) for Sp(2n)", |p| {
    invariant_character_matchings(p.r, p.n)
});
formula!(SymPowerFormula, "sym-power", "invariants in r copies of Sym^k V", |p| {
    invariant_character_sym_power(p.r, p.k, p.n)
});
formula!(FundamentalFormula, "fundamental", "invariants in r copies of the k-th fundamental representation", |p| {
    invariant_character_fundamental(p.r, p.k, p.n)
});
formula!(SymPowerStableFormula, "sym-power-stable", "sym-power character for n > kr", |p| {
    sym_power_stable_character(p.r, p.k)
});
formula!(RegularGraphFormula, "regular-graphs", "k-regular loopless multigraphs on r vertices", |p| {
    regular_graph_character(p.r, p.k)
});
formula!(SetPartitionFormula, "set-partitions", "set partitions of r points into at most n blocks", |p| {
    set_partition_character(p.r, p.n)
});
formula!(MultisetPartitionFormula, "multiset-partitions", "multiset partitions of r labels repeated k times into at most n blocks", |p| {
    multiset_partition_character(p.r, p.n, p.k)
});
formula!(AdjointFormula, "adjoint", "sum of s_l * s_l over l of r with at most n rows", |p| {
    adjoint_character(p.r, Some(p.n))
});

pub fn character_formulas() -> Registry<dyn CharacterFormula> {
    Registry::<dyn CharacterFormula>::new("character formula")
        .with(Box::new(MatchingsFormula))
        .with(Box::new(SymPowerFormula))
        .with(Box::new(FundamentalFormula))
        .with(Box::new(SymPowerStableFormula))
        .with(Box::new(RegularGraphFormula))
        .with(Box::new(SetPartitionFormula))
        .with(Box::new(MultisetPartitionFormula))
        .with(Box::new(AdjointFormula))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn f(s: &str) -> SymFuncP {
        s.parse().unwrap()
    }

    #[test]
    fn character_values() {
        for m in 1..=8 {
            let all = partitions_of(m);
            for mu in &all {
                assert_eq!(mn_character(&Partition::new([m]), mu).unwrap(), 1);
                let column = Partition::new(vec![1; m]);
                assert_eq!(mn_character(&column, mu).unwrap(), sign(mu));
                let sum: i64 = all.iter().map(|lam| mn(lam, mu).pow(2)).sum();
                assert_eq!(int(sum), z(mu));
            }
        }
        assert_eq!(mn_character(&p("2,1"), &p("3")).unwrap(), -1);
        assert_eq!(mn_character(&p("2,2"), &p("2,2")).unwrap(), 2);
        assert!(mn_character(&p("2"), &p("1")).is_err());
    }

    #[test]
    fn conversions() {
        assert_eq!(schur_to_p(&p("1")), f("p[1]"));
        assert_eq!(schur_to_p(&p("2")), f("1/2*p[1,1] + 1/2*p[2]"));
        assert_eq!(f("s[2]"), f("h[2]"));
        assert_eq!(f("s[1,1]"), f("e[2]"));
        for m in 0..=7 {
            let all = partitions_of(m);
            for a in &all {
                let sa = schur_to_p(a);
                for b in &all {
                    let expected = if a == b { Rational::one() } else { Rational::zero() };
                    assert_eq!(sa.inner(&schur_to_p(b)), expected);
                }
                let back = schur_expansion(&sa).unwrap();
                assert_eq!(back, [(a.clone(), Rational::one())].into());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = f("13/72*p[1,1,1,1,1,1] - 1/6*p[3,2,1] + p[6]");
        assert_eq!(g.to_string(), "13/72*p[1,1,1,1,1,1] - 1/6*p[3,2,1] + p[6]");
        assert_eq!(f(&g.to_string()), g);
        assert_eq!(f("2"), SymFuncP::one().scale(&int(2)));
        assert_eq!(f("-p[]"), SymFuncP::one().scale(&int(-1)));
        assert!(matches!("p[1] p[2]".parse::<SymFuncP>(), Err(SymFuncError::Parse { position: 6, .. })));
        assert!("q[1]".parse::<SymFuncP>().is_err());
        assert_eq!(SymFuncP::zero().to_string(), "0");
    }

    #[test]
    fn matchings_character_examples() {
        assert_eq!(invariant_character_matchings(2, 2), f("s[2,2] + s[4]"));
        assert_eq!(invariant_character_matchings(2, 1), f("s[2,2]"));
        assert_eq!(fake_degree(&invariant_character_matchings(2, 1)).unwrap().to_string(), "q^2 + q^4");
        assert_eq!(fake_degree(&invariant_character_matchings(2, 2)).unwrap().to_string(), "1 + q^2 + q^4");
        for r in 1..=4 {
            for n in 1..=3 {
                assert_eq!(
                    invariant_character_sym_power(2 * r, 1, n),
                    invariant_character_matchings(r, n)
                );
            }
        }
    }

    #[test]
    fn sym_power_and_regular_graph_characters() {
        let sym = f("13/72*p[1,1,1,1,1,1] + 12/72*p[2,1,1,1,1] + 63/72*p[2,2,1,1] + 54/72*p[2,2,2] \
             + 4/72*p[3,1,1,1] - 12/72*p[3,2,1] + 28/72*p[3,3] + 18/72*p[4,1,1] + 36/72*p[6]");
        let graphs = f("13/72*p[1,1,1,1,1,1] + 24/72*p[2,1,1,1,1] + 63/72*p[2,2,1,1] + 54/72*p[2,2,2] \
             + 4/72*p[3,1,1,1] + 12/72*p[3,2,1] + 28/72*p[3,3] + 18/72*p[4,1,1] + 36/72*p[4,2] + 36/72*p[6]");
        assert_eq!(sym_power_stable_character(6, 2), sym);
        assert_eq!(invariant_character_sym_power(6, 2, 6), sym);
        assert_eq!(regular_graph_character(6, 2), graphs);
        assert_eq!(sym.dimension(), int(130));
        assert_eq!(graphs.dimension(), int(130));
        for chi in [&sym, &graphs] {
            assert!(schur_expansion(chi).unwrap().values().all(|c| c.is_integer() && !c.is_negative()));
        }
        // stable in n once 2n ≥ kr
        for (r, k) in [(2, 2), (3, 2), (4, 2), (2, 3), (2, 4)] {
            let n = (k * r + 1) / 2;
            assert_eq!(invariant_character_sym_power(r, k, n), sym_power_stable_character(r, k));
        }
    }

    #[test]
    fn fundamental_counterexample() {
        let chi = invariant_character_fundamental(2, 3, 1);
        assert_eq!(chi, f("s[1,1]"));
        assert_eq!(fake_degree(&chi).unwrap().to_string(), "q");
        for r in 1..=3 {
            for n in 1..=2 {
                assert_eq!(
                    invariant_character_fundamental(2 * r, 1, n),
                    invariant_character_matchings(r, n)
                );
            }
        }
    }

    #[test]
    fn littlewood_and_kronecker() {
        assert_eq!(h_plethysm(1, &h_to_p(2), 2), f("s[2]"));
        assert_eq!(h_plethysm(2, &h_to_p(2), 4), f("s[4] + s[2,2]"));
        for r in 0..=5 {
            assert!(littlewood_check(r), "r={r}");
        }
        for r in 1..=6 {
            assert_eq!(adjoint_character(r, None), power_sum_total(r));
            assert_eq!(adjoint_character(r, Some(r)), power_sum_total(r));
            for lam in partitions_of(r) {
                let s = schur_to_p(&lam);
                assert_eq!(kronecker(&s, &h_to_p(r)).unwrap(), s);
            }
        }
        assert!(matches!(kronecker(&f("p[1]"), &f("p[2]")), Err(SymFuncError::DegreeMismatch(1, 2))));
    }

    #[test]
    fn set_partition_dimensions() {
        assert_eq!(set_partition_character(4, 2).dimension(), int(8));
        assert_eq!(set_partition_character(3, 3).dimension(), int(5));
        for r in 1..=5 {
            for n in 1..=4 {
                assert_eq!(
                    multiset_partition_character(r, n, 1),
                    set_partition_character(r, n),
                    "r={r} n={n}"
                );
            }
        }
    }

    #[test]
    fn fake_degree_reports_non_integral() {
        let half = f("1/2*s[2] + s[1,1]");
        let fd = fake_degree(&half).unwrap();
        assert_eq!(fd.denominator, 2);
        assert_eq!(fd.numerator.to_string(), "1 + 2*q");
        assert_eq!(fd.non_integral, vec![(p("2"), rat(1, 2))]);
        assert!(fd.polynomial().is_none());
        assert!(matches!(fake_degree(&f("p[1] + p[2]")), Err(SymFuncError::Inhomogeneous(_))));
        assert_eq!(fake_degree(&SymFuncP::zero()).unwrap().numerator, QPolynomial::zero());
    }

    #[test]
    fn registry_names() {
        let reg = character_formulas();
        assert_eq!(reg.len(), 8);
        let chi = reg.get("matchings").unwrap().character(CharacterParams { r: 2, n: 1, k: 1 });
        assert_eq!(chi, f("s[2,2]"));
    }
}
