//! Diagrammatic Pfaffians and the rewrite system onto `(n+1)`-noncrossing diagrams.
//!
//! A generator fixes a set `S` of `2(n+1)` points and a matching `f` of the rest;
//! its Pfaffian is the sum of `s ∪ f` over all matchings `s` of `S`. Read as a rule,
//! the fully crossing matching of `S` is replaced by minus the other terms. Every
//! replacement strictly lowers the number of crossing strand pairs, which is checked
//! on each step.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::brauer::{BrauerError, Morphism};
use crate::diagrams::{enumerate_matchings, Diagram, DiagramError, PerfectMatching};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PfaffianError {
    #[error("subset has {got} points, expected {expected}")]
    SubsetSize { got: usize, expected: usize },
    #[error("matching f must cover exactly the complement of S")]
    ComplementMismatch,
    #[error("strands {0:?} are not a mutually crossing set of strands of the diagram")]
    NotAViolation(Vec<(usize, usize)>),
    #[error("rewriting {from} produced {to}, whose crossing count {after} is not below {before}")]
    CrossingNotDecreasing {
        from: String,
        to: String,
        before: usize,
        after: usize,
    },
    #[error("normal form exceeded its fuel of {fuel} steps")]
    OutOfFuel { fuel: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Brauer(#[from] BrauerError),
}

/// A Pfaffian generator `Pf(f)` of order `2(n+1)` inside `D(top, bottom)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfGenerator {
    n: usize,
    top: usize,
    bottom: usize,
    subset: Vec<usize>,
    rest: Vec<(usize, usize)>,
}

impl PfGenerator {
    pub fn new(
        n: usize,
        top: usize,
        bottom: usize,
        subset: impl IntoIterator<Item = usize>,
        rest: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PfaffianError> {
        let subset: BTreeSet<usize> = subset.into_iter().collect();
        let points = top + bottom;
        if subset.len() != 2 * (n + 1) {
            return Err(PfaffianError::SubsetSize {
                got: subset.len(),
                expected: 2 * (n + 1),
            });
        }
        if let Some(&p) = subset.iter().find(|&&p| p == 0 || p > points) {
            return Err(DiagramError::PointOutOfRange(p, points).into());
        }
        let mut rest: Vec<(usize, usize)> = rest
            .into_iter()
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        rest.sort_unstable();
        let covered: BTreeSet<usize> = rest.iter().flat_map(|&(a, b)| [a, b]).collect();
        let complement: BTreeSet<usize> = (1..=points).filter(|p| !subset.contains(p)).collect();
        if covered != complement || covered.len() != 2 * rest.len() {
            return Err(PfaffianError::ComplementMismatch);
        }
        Ok(Self {
            n,
            top,
            bottom,
            subset: subset.into_iter().collect(),
            rest,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.top, self.bottom)
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn rest(&self) -> &[(usize, usize)] {
        &self.rest
    }

    /// The diagrams `s ∪ f`, one per matching `s` of `S`.
    pub fn terms(&self) -> Vec<Diagram> {
        let inner = enumerate_matchings(self.subset.len()).expect("even subset");
        inner
            .iter()
            .map(|s| {
                let pairs = s
                    .pairs()
                    .iter()
                    .map(|&(a, b)| (self.subset[a - 1], self.subset[b - 1]))
                    .chain(self.rest.iter().copied());
                let m = PerfectMatching::new(pairs).expect("disjoint union");
                Diagram::new(self.top, self.bottom, m).expect("shape")
            })
            .collect()
    }

    /// `Pf(f) = Σ_s (s ∪ f)` with all coefficients one.
    pub fn pfaffian<C: Scalar>(&self) -> Morphism<C> {
        Morphism::sum_of(self.top, self.bottom, self.terms())
    }
}

/// Every Pfaffian generator of order `2(n+1)` in `D(top, bottom)`.
pub fn all_generators(n: usize, top: usize, bottom: usize) -> Vec<PfGenerator> {
    let points = top + bottom;
    let size = 2 * (n + 1);
    if size > points || points % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for subset in subsets(points, size) {
        let complement: Vec<usize> = (1..=points).filter(|p| !subset.contains(p)).collect();
        for f in enumerate_matchings(complement.len()).expect("even complement") {
            let rest = f
                .pairs()
                .iter()
                .map(|&(a, b)| (complement[a - 1], complement[b - 1]));
            out.push(PfGenerator::new(n, top, bottom, subset.iter().copied(), rest).expect("valid"));
        }
    }
    out
}

fn subsets(points: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, points: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for p in start..=points {
            cur.push(p);
            go(p + 1, points, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, points, size, &mut Vec::new(), &mut out);
    out
}

/// The lexicographically smallest set of `n+1` mutually crossing strands of `d`, if any.
pub fn find_violation(d: &Diagram, n: usize) -> Option<Vec<(usize, usize)>> {
    d.matching().find_mutual_crossing(n + 1)
}

/// Replaces `d` by minus the other terms of the Pfaffian whose fully crossing term is `d`.
pub fn rewrite_step<C: Scalar>(
    d: &Diagram,
    violation: &[(usize, usize)],
) -> Result<Morphism<C>, PfaffianError> {
    let pairs = d.matching().pairs();
    let mutually_crossing = violation.iter().enumerate().all(|(i, &s)| {
        violation[i + 1..]
            .iter()
            .all(|&t| crate::diagrams::strands_cross(s, t))
    });
    if violation.len() < 2
        || !mutually_crossing
        || !violation.iter().all(|s| pairs.contains(s))
    {
        return Err(PfaffianError::NotAViolation(violation.to_vec()));
    }
    let n = violation.len() - 1;
    let subset = violation.iter().flat_map(|&(a, b)| [a, b]);
    let rest = pairs.iter().copied().filter(|s| !violation.contains(s));
    let generator = PfGenerator::new(n, d.top(), d.bottom(), subset, rest)?;
    let before = d.matching().crossing_pairs();
    let mut out = Morphism::zero(d.top(), d.bottom());
    for term in generator.terms() {
        if &term == d {
            continue;
        }
        let after = term.matching().crossing_pairs();
        if after >= before {
            return Err(PfaffianError::CrossingNotDecreasing {
                from: d.to_string(),
                to: term.to_string(),
                before,
                after,
            });
        }
        out.add_term(term, -C::one());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRecord {
    pub diagram: Diagram,
    pub violation: Vec<(usize, usize)>,
    pub crossings: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalForm<C> {
    pub result: Morphism<C>,
    pub steps: Vec<RewriteRecord>,
    pub fuel: usize,
}

/// Reduces `m` modulo the Pfaffian ideal of order `2(n+1)` to a combination of
/// `(n+1)`-noncrossing diagrams. Morphisms in `Hom(r,s)` are bent to `Hom(0,r+s)`,
/// reduced and unbent.
///
/// Each step rewrites the violating diagram with the most crossing pairs (ties broken
/// by diagram order). New terms always have fewer crossings, so each diagram is
/// rewritten at most once.
pub fn normal_form<C: Scalar>(m: &Morphism<C>, n: usize) -> Result<NormalForm<C>, PfaffianError> {
    let top = m.top();
    let mut current = m.bend();
    let points = current.bottom();
    let total_crossings: usize = current
        .terms()
        .map(|(d, _)| d.matching().crossing_pairs())
        .sum();
    let diagram_count = (1..points).step_by(2).product::<usize>().max(1);
    let fuel = total_crossings * diagram_count;
    let mut steps = Vec::new();
    loop {
        let next = current
            .terms()
            .filter_map(|(d, c)| {
                find_violation(d, n).map(|v| (d.matching().crossing_pairs(), d.clone(), c.clone(), v))
            })
            .min_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let Some((crossings, d, c, violation)) = next else {
            break;
        };
        if steps.len() >= fuel {
            return Err(PfaffianError::OutOfFuel { fuel });
        }
        let replacement: Morphism<C> = rewrite_step(&d, &violation)?;
        current = current
            .sub(&Morphism::from_term(c.clone(), d.clone()))?
            .add(&replacement.scale(&c))?;
        steps.push(RewriteRecord {
            diagram: d,
            violation,
            crossings,
        });
    }
    Ok(NormalForm {
        result: current.unbend(top)?,
        steps,
        fuel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::{enumerate_diagrams, enumerate_x};
    use crate::scalar::{int, Rational};

    type M = Morphism<Rational>;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn pfaffian_term_counts() {
        let g = PfGenerator::new(1, 0, 4, [1, 2, 3, 4], []).unwrap();
        let pf: M = g.pfaffian();
        assert_eq!(pf, M::sum_of(0, 4, enumerate_diagrams(0, 4)));
        let g2 = PfGenerator::new(2, 0, 6, 1..=6, []).unwrap();
        assert_eq!(g2.pfaffian::<Rational>().len(), 15);
        for g in all_generators(1, 3, 3) {
            assert_eq!(g.pfaffian::<Rational>().len(), 3);
        }
        assert_eq!(all_generators(1, 0, 8).len(), 70 * 3);
        assert_eq!(all_generators(2, 0, 8).len(), 28);
        assert!(all_generators(2, 0, 4).is_empty());
    }

    #[test]
    fn generator_validation() {
        assert_eq!(
            PfGenerator::new(1, 0, 4, [1, 2, 3], []),
            Err(PfaffianError::SubsetSize { got: 3, expected: 4 })
        );
        assert_eq!(
            PfGenerator::new(1, 0, 6, [1, 2, 3, 4], [(5, 5)]),
            Err(PfaffianError::ComplementMismatch)
        );
        assert!(PfGenerator::new(1, 0, 6, [1, 2, 3, 4], [(5, 6)]).is_ok());
    }

    #[test]
    fn violations() {
        assert_eq!(find_violation(&d("(1,2)(3,4)"), 1), None);
        assert_eq!(find_violation(&d("(1,3)(2,4)"), 1), Some(vec![(1, 3), (2, 4)]));
        assert_eq!(
            find_violation(&d("(1,4)(2,5)(3,6)"), 2),
            Some(vec![(1, 4), (2, 5), (3, 6)])
        );
        assert_eq!(find_violation(&d("(1,4)(2,5)(3,6)"), 3), None);
    }

    #[test]
    fn single_rewrite() {
        let out: M = rewrite_step(&d("(1,3)(2,4)"), &[(1, 3), (2, 4)]).unwrap();
        let expected: M = "-1*(1,2)(3,4) - 1*(1,4)(2,3)".parse().unwrap();
        assert_eq!(out, expected);
        assert!(matches!(
            rewrite_step::<Rational>(&d("(1,2)(3,4)"), &[(1, 2), (3, 4)]),
            Err(PfaffianError::NotAViolation(_))
        ));
        let big = d("(1,4)(2,5)(3,6)");
        let out: M = rewrite_step(&big, &[(1, 4), (2, 5), (3, 6)]).unwrap();
        assert_eq!(out.len(), 14);
    }

    #[test]
    fn crossings_drop_with_outside_strands() {
        // every violation in every diagram on up to 10 points
        for points in [4, 6, 8, 10] {
            for diagram in enumerate_diagrams(0, points) {
                for n in 1..points / 2 {
                    if let Some(v) = find_violation(&diagram, n) {
                        rewrite_step::<Rational>(&diagram, &v).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let nc = M::from_diagram(d("(1,4)(2,3)"));
        assert_eq!(normal_form(&nc, 1).unwrap().result, nc);
        let x = M::from_diagram(d("(1,3)(2,4)"));
        let nf = normal_form(&x, 1).unwrap();
        assert_eq!(nf.result, "-1*(1,2)(3,4) - 1*(1,4)(2,3)".parse().unwrap());
        assert_eq!(nf.steps.len(), 1);
        let noncrossing: BTreeSet<Diagram> = enumerate_x(3, 1).into_iter().map(Diagram::boundary).collect();
        assert_eq!(noncrossing.len(), 5);
        for diagram in enumerate_diagrams(0, 6) {
            let nf = normal_form(&M::from_diagram(diagram), 1).unwrap();
            assert!(nf.result.terms().all(|(t, _)| noncrossing.contains(t)));
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear() {
        let all = enumerate_diagrams(0, 8);
        for n in 1..=2 {
            let a = M::from_diagram(all[7].clone()).scale(&int(3));
            let b = M::from_diagram(all[50].clone()).scale(&int(-2));
            let nf_a = normal_form(&a, n).unwrap().result;
            let nf_b = normal_form(&b, n).unwrap().result;
            let nf_sum = normal_form(&a.add(&b).unwrap(), n).unwrap().result;
            assert_eq!(nf_sum, nf_a.add(&nf_b).unwrap());
            let again = normal_form(&nf_sum, n).unwrap();
            assert!(again.steps.is_empty());
            assert_eq!(again.result, nf_sum);
        }
    }

    #[test]
    fn bent_morphisms_round_trip() {
        // the crossing s_1 bends to a crossing matching; at n = 1 it reduces to −id − u_1
        let s1 = M::from_diagram(crate::brauer::generator_s(1, 2).unwrap());
        let nf = normal_form(&s1, 1).unwrap();
        let expected = M::identity(2)
            .add(&M::from_diagram(crate::brauer::generator_u(1, 2).unwrap()))
            .unwrap()
            .scale(&int(-1));
        assert_eq!(nf.result, expected);
        let id = M::identity(2);
        let nf = normal_form(&id, 1).unwrap();
        assert!(nf.steps.is_empty());
        assert_eq!(nf.result, id);
    }
}
