//! Exact cyclic sieving checks.
//!
//! `(X, ρ, P)` with `ρ^N = 1` exhibits cyclic sieving when `P(ζ^d)` counts the fixed points
//! of `ρ^d` for every `d`. This holds exactly when `P ≡ Σ_O Σ_j q^{jN/|O|} (mod q^N − 1)`;
//! per exponent, `P(ζ^d) = c` holds exactly when `Φ_{N/gcd(d,N)}` divides `P − c`.

use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::diagrams::{enumerate_x, enumerate_x_blocked, orbits, DiagramError};
use crate::registry::{Registry, Strategy};
use crate::scalar::QPolynomial;
use crate::symfunc::{
    fake_degree, invariant_character_fundamental, invariant_character_matchings,
    invariant_character_sym_power, SymFuncError, SymFuncP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CspError {
    #[error("rotation order must be positive")]
    ZeroOrder,
    #[error("rotation does not have order dividing {order}: {witness}")]
    NotCyclic { order: usize, witness: String },
    #[error("polynomial {0} has a negative coefficient")]
    NegativeCoefficient(QPolynomial),
    #[error("fake degree {0} is not an integer polynomial")]
    NonIntegral(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    SymFunc(#[from] SymFuncError),
}

/// Number of `x` with `act^d(x) = x`, by applying `act` directly.
pub fn fixed_points<T: PartialEq>(set: &[T], act: impl Fn(&T) -> T, d: usize) -> usize {
    set.iter()
        .filter(|x| {
            let mut y = act(x);
            for _ in 1..d {
                y = act(&y);
            }
            d == 0 || &y == *x
        })
        .count()
}

/// A finite set with a cyclic action, summarised by its orbit sizes and fixed-point
/// counts, together with a candidate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspInstance {
    pub label: String,
    pub order: usize,
    pub polynomial: QPolynomial,
    pub orbit_sizes: Vec<usize>,
    /// `fixed[d]` for `0 ≤ d < order`.
    pub fixed: Vec<usize>,
}

impl CspInstance {
    pub fn from_action<T>(
        label: impl Into<String>,
        set: &[T],
        act: impl Fn(&T) -> T + Sync,
        order: usize,
        polynomial: QPolynomial,
    ) -> Result<Self, CspError>
    where
        T: Ord + Clone + fmt::Display + Sync,
    {
        if order == 0 {
            return Err(CspError::ZeroOrder);
        }
        let orbit_sizes = orbits(set, &act)?;
        if let Some(&size) = orbit_sizes.iter().find(|&&s| order % s != 0) {
            return Err(CspError::NotCyclic {
                order,
                witness: format!("orbit of size {size}"),
            });
        }
        let fixed = (0..order)
            .into_par_iter()
            .map(|d| fixed_points(set, &act, d))
            .collect();
        Ok(Self {
            label: label.into(),
            order,
            polynomial,
            orbit_sizes,
            fixed,
        })
    }
}

/// `Σ_O (1 + q^{N/|O|} + ⋯ + q^{(|O|−1)N/|O|})`.
pub fn orbit_polynomial(orbit_sizes: &[usize], order: usize) -> QPolynomial {
    let mut coeffs = vec![0i64; order];
    for &size in orbit_sizes {
        for j in 0..size {
            coeffs[j * order / size] += 1;
        }
    }
    QPolynomial::new(coeffs)
}

/// `P mod Φ_{N/gcd(d,N)}`: a constant `c` exactly when `P(ζ^d) = c`.
pub fn value_at_root(p: &QPolynomial, order: usize, d: usize) -> QPolynomial {
    let m = order / d.gcd(&order);
    p.div_rem_monic(&QPolynomial::cyclotomic(m)).1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorCheck {
    pub d: usize,
    /// Fixed points counted on the set, or implied by the orbit structure solved from `P`.
    pub fixed: Option<usize>,
    /// `P mod Φ_{N/gcd(d,N)}`.
    pub value: QPolynomial,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CspCertificate {
    pub label: String,
    pub order: usize,
    pub polynomial: QPolynomial,
    pub reduced: QPolynomial,
    pub orbit_sizes: Vec<usize>,
    pub orbit_polynomial: QPolynomial,
    pub checks: Vec<DivisorCheck>,
    pub passed: bool,
    pub first_failure: Option<usize>,
    /// Whether the orbit structure comes from an actual set rather than from `P`.
    pub from_set: bool,
    pub note: Option<String>,
}

fn check_coefficients(p: &QPolynomial) -> Result<(), CspError> {
    if p.coeffs().iter().any(|&c| c < 0) {
        return Err(CspError::NegativeCoefficient(p.clone()));
    }
    Ok(())
}

pub fn verify_csp(inst: &CspInstance) -> Result<CspCertificate, CspError> {
    if inst.order == 0 {
        return Err(CspError::ZeroOrder);
    }
    check_coefficients(&inst.polynomial)?;
    let order = inst.order;
    let reduced = inst.polynomial.reduce_mod_cycle(order);
    let orbit_poly = orbit_polynomial(&inst.orbit_sizes, order);
    let checks: Vec<DivisorCheck> = (0..order)
        .map(|d| {
            let fixed = inst.fixed[d];
            let value = value_at_root(&inst.polynomial, order, d);
            let ok = value == QPolynomial::monomial(fixed as i64, 0);
            DivisorCheck {
                d,
                fixed: Some(fixed),
                value,
                ok,
            }
        })
        .collect();
    let first_failure = checks.iter().find(|c| !c.ok).map(|c| c.d);
    let passed = reduced == orbit_poly;
    let note = (passed != first_failure.is_none())
        .then(|| "congruence and root-of-unity checks disagree".to_string());
    Ok(CspCertificate {
        label: inst.label.clone(),
        order,
        polynomial: inst.polynomial.clone(),
        reduced,
        orbit_sizes: inst.orbit_sizes.clone(),
        orbit_polynomial: orbit_poly,
        checks,
        passed: passed && note.is_none(),
        first_failure,
        from_set: true,
        note,
    })
}

fn mobius(mut m: usize) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Decides whether `P` is a cyclic sieving polynomial for *some* set with an action of
/// order `N`: every `P(ζ^d)` must be a non-negative integer, and the orbit counts solved
/// from them by Möbius inversion must be non-negative integers.
pub fn verify_polynomial_only(
    label: impl Into<String>,
    polynomial: &QPolynomial,
    order: usize,
) -> Result<CspCertificate, CspError> {
    if order == 0 {
        return Err(CspError::ZeroOrder);
    }
    check_coefficients(polynomial)?;
    let mut checks = Vec::new();
    let mut implied = vec![None; order];
    for d in 0..order {
        let value = value_at_root(polynomial, order, d);
        let constant = match value.degree() {
            None => Some(0),
            Some(0) if value.coeff(0) >= 0 => Some(value.coeff(0) as usize),
            _ => None,
        };
        implied[d] = constant;
        checks.push(DivisorCheck {
            d,
            fixed: constant,
            value,
            ok: constant.is_some(),
        });
    }
    let first_failure = checks.iter().find(|c| !c.ok).map(|c| c.d);
    let reduced = polynomial.reduce_mod_cycle(order);
    let mut orbit_sizes = Vec::new();
    let mut note = None;
    if first_failure.is_none() {
        // fixed points of ρ^t for t | N, indexed by t (t = N is the identity)
        let fix = |t: usize| implied[t % order].expect("checked") as i64;
        'sizes: for s in (1..=order).rev().filter(|s| order % s == 0) {
            let total: i64 = (1..=s)
                .filter(|t| s % t == 0)
                .map(|t| mobius(s / t) * fix(t))
                .sum();
            if total < 0 || total % s as i64 != 0 {
                note = Some(format!("orbits of size {s} would number {total}/{s}"));
                orbit_sizes.clear();
                break 'sizes;
            }
            orbit_sizes.extend(std::iter::repeat_n(s, (total / s as i64) as usize));
        }
    }
    let orbit_poly = orbit_polynomial(&orbit_sizes, order);
    let passed = first_failure.is_none() && note.is_none() && orbit_poly == reduced;
    Ok(CspCertificate {
        label: label.into(),
        order,
        polynomial: polynomial.clone(),
        reduced,
        orbit_sizes,
        orbit_polynomial: orbit_poly,
        checks,
        passed,
        first_failure,
        from_set: false,
        note,
    })
}

impl CspCertificate {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_text(&self) -> String {
        let n = self.order;
        let mut s = format!("csp {}\n", self.label);
        s.push_str(&format!("  rotation order N = {n}\n"));
        s.push_str(&format!("  P(q) = {}\n", self.polynomial));
        s.push_str(&format!("  P(q) mod q^{n}-1 = {}\n", self.reduced));
        let source = if self.from_set { "orbit sizes" } else { "orbit sizes implied by P" };
        s.push_str(&format!("  {source}: {}\n", join(&self.orbit_sizes)));
        s.push_str(&format!("  orbit polynomial = {}\n", self.orbit_polynomial));
        let header = if self.from_set { "fixed" } else { "implied" };
        s.push_str(&format!("  d\t{header}\tP(zeta^d)\tok\n"));
        for c in &self.checks {
            let fixed = c.fixed.map_or("-".to_string(), |f| f.to_string());
            let mark = if c.ok { "yes" } else { "no" };
            s.push_str(&format!("  {}\t{}\t{}\t{}\n", c.d, fixed, c.value, mark));
        }
        if let Some(note) = &self.note {
            s.push_str(&format!("  note: {note}\n"));
        }
        match self.first_failure {
            Some(d) => s.push_str(&format!("{} (first failing d = {d})\n", self.status())),
            None => s.push_str(&format!("{}\n", self.status())),
        }
        s
    }

    pub fn tsv_header() -> &'static str {
        "label\tN\torbit_sizes\tP\tP_mod\torbit_polynomial\tfixed\tstatus\tfirst_failure\n"
    }

    pub fn to_tsv_row(&self) -> String {
        let fixed: Vec<String> = self
            .checks
            .iter()
            .map(|c| c.fixed.map_or("-".to_string(), |f| f.to_string()))
            .collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            self.label,
            self.order,
            join(&self.orbit_sizes),
            self.polynomial,
            self.reduced,
            self.orbit_polynomial,
            fixed.join(","),
            self.status(),
            self.first_failure.map_or("-".to_string(), |d| d.to_string()),
        )
    }
}

fn join(xs: &[usize]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn polynomial_of(chi: &SymFuncP) -> Result<QPolynomial, CspError> {
    let fd = fake_degree(chi)?;
    fd.polynomial()
        .cloned()
        .ok_or_else(|| CspError::NonIntegral(fd.to_string()))
}

/// A family of cyclic sieving instances parameterised by `(r, n, k)`.
pub trait CspFamily: Strategy {
    fn certify(&self, r: usize, n: usize, k: usize) -> Result<CspCertificate, CspError>;
}

/// `(n+1)`-noncrossing matchings of `2r` points under rotation by one.
pub struct MatchingsFamily;

/// Blocked matchings `X(r, n, k)` on `kr` points under rotation by `k`.
pub struct BlockedFamily;

/// Tensor powers of the `k`-th fundamental representation; no set is available, so the
/// polynomial is tested against every possible cyclic action.
pub struct FundamentalFamily;

impl Strategy for MatchingsFamily {
    fn name(&self) -> &'static str {
        "matchings"
    }

    fn summary(&self) -> &'static str {
        "X(r,n), rotation of 2r points, P = fd of the invariant character"
    }
}

impl Strategy for BlockedFamily {
    fn name(&self) -> &'static str {
        "blocked"
    }

    fn summary(&self) -> &'static str {
        "X(r,n,k), rotation by k of kr points, P = fd of the symmetric-power character"
    }
}

impl Strategy for FundamentalFamily {
    fn name(&self) -> &'static str {
        "fundamental"
    }

    fn summary(&self) -> &'static str {
        "fd of the fundamental-representation character against any action of order r"
    }
}

impl CspFamily for MatchingsFamily {
    fn certify(&self, r: usize, n: usize, _k: usize) -> Result<CspCertificate, CspError> {
        let set = enumerate_x(r, n);
        let p = polynomial_of(&invariant_character_matchings(r, n))?;
        let inst = CspInstance::from_action(format!("X({r},{n})"), &set, |m| m.rotate(), 2 * r, p)?;
        verify_csp(&inst)
    }
}

impl CspFamily for BlockedFamily {
    fn certify(&self, r: usize, n: usize, k: usize) -> Result<CspCertificate, CspError> {
        let set = enumerate_x_blocked(r, n, k)?;
        let p = polynomial_of(&invariant_character_sym_power(r, k, n))?;
        let inst = CspInstance::from_action(format!("X({r},{n},{k})"), &set, |m| m.rotate(), r, p)?;
        verify_csp(&inst)
    }
}

impl CspFamily for FundamentalFamily {
    fn certify(&self, r: usize, n: usize, k: usize) -> Result<CspCertificate, CspError> {
        let p = polynomial_of(&invariant_character_fundamental(r, k, n))?;
        verify_polynomial_only(format!("fundamental(r={r},n={n},k={k})"), &p, r)
    }
}

pub fn csp_families() -> Registry<dyn CspFamily> {
    Registry::<dyn CspFamily>::new("csp family")
        .with(Box::new(MatchingsFamily))
        .with(Box::new(BlockedFamily))
        .with(Box::new(FundamentalFamily))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::PerfectMatching;

    fn q(s: &str) -> QPolynomial {
        s.parse().unwrap()
    }

    fn x21() -> Vec<PerfectMatching> {
        enumerate_x(2, 1)
    }

    #[test]
    fn fixed_point_examples() {
        let set = x21();
        assert_eq!(fixed_points(&set, |m| m.rotate(), 0), 2);
        assert_eq!(fixed_points(&set, |m| m.rotate(), 1), 0);
        assert_eq!(fixed_points(&set, |m| m.rotate(), 2), 2);
    }

    #[test]
    fn worked_instances() {
        let inst = CspInstance::from_action("X(2,1)", &x21(), |m| m.rotate(), 4, q("q^2 + q^4")).unwrap();
        let cert = verify_csp(&inst).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.reduced, q("1 + q^2"));
        assert_eq!(cert.orbit_polynomial, q("1 + q^2"));
        let all = enumerate_x(2, 2);
        let inst = CspInstance::from_action("X(2,2)", &all, |m| m.rotate(), 4, q("1 + q^2 + q^4")).unwrap();
        let cert = verify_csp(&inst).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.reduced, q("2 + q^2"));
        assert_eq!(cert.orbit_sizes, vec![2, 1]);
        let wrong = CspInstance::from_action("X(2,1)", &x21(), |m| m.rotate(), 4, q("q + q^3")).unwrap();
        let cert = verify_csp(&wrong).unwrap();
        assert!(!cert.passed);
        assert_eq!(cert.first_failure, Some(2));
        assert!(cert.to_text().ends_with("FAIL (first failing d = 2)\n"));
    }

    #[test]
    fn malformed_and_non_cyclic() {
        let inst = CspInstance::from_action("X(2,1)", &x21(), |m| m.rotate(), 4, q("-1 + q")).unwrap();
        assert!(matches!(verify_csp(&inst), Err(CspError::NegativeCoefficient(_))));
        assert!(matches!(
            CspInstance::from_action("X(2,1)", &x21(), |m| m.rotate(), 3, q("1")),
            Err(CspError::NotCyclic { .. })
        ));
    }

    #[test]
    fn families_pass_at_small_sizes() {
        for r in 1..=4 {
            for n in 1..=r {
                let cert = MatchingsFamily.certify(r, n, 1).unwrap();
                assert!(cert.passed, "{}", cert.to_text());
            }
        }
        let cert = BlockedFamily.certify(4, 2, 2).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.orbit_sizes.iter().sum::<usize>(), 6);
        assert_eq!(cert.orbit_sizes, vec![2, 2, 1, 1]);
    }

    #[test]
    fn fundamental_polynomial_is_not_sieving() {
        let cert = FundamentalFamily.certify(2, 1, 3).unwrap();
        assert_eq!(cert.polynomial, q("q"));
        assert!(!cert.passed);
        assert_eq!(cert.first_failure, Some(1));
        assert_eq!(cert.checks[1].value, q("-1"));
    }

    #[test]
    fn polynomial_only_recovers_orbits() {
        let cert = verify_polynomial_only("P", &q("1 + q^2 + q^4"), 4).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.orbit_sizes, vec![2, 1]);
        // values are non-negative integers but no orbit structure fits
        let cert = verify_polynomial_only("P", &q("1 + q + q^2 + q^3 + q^4 + q^5"), 2).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.orbit_sizes, vec![2, 2, 2]);
        let cert = verify_polynomial_only("P", &q("1 + q^2"), 4).unwrap();
        assert!(cert.passed);
        let cert = verify_polynomial_only("P", &q("1 + 2*q^2"), 4).unwrap();
        assert!(!cert.passed);
        assert!(cert.note.is_some() || cert.first_failure.is_some());
    }

    #[test]
    fn tsv_rows_have_all_columns() {
        let cert = MatchingsFamily.certify(2, 1, 1).unwrap();
        let header_cols = CspCertificate::tsv_header().trim_end().split('\t').count();
        assert_eq!(cert.to_tsv_row().trim_end().split('\t').count(), header_cols);
        assert!(cert.to_tsv_row().starts_with("X(2,1)\t4\t2\tq^2 + q^4\t1 + q^2\t"));
    }
}
