use std::collections::BTreeSet;

use pfcat::brauer::{compose_diagrams, symplectic_delta};
use pfcat::diagrams::{enumerate_diagrams, enumerate_x, enumerate_x_blocked};
use pfcat::pfaffian::normal_form;
use pfcat::scalar::{int, QPolynomial, Rational};
use pfcat::symfunc::{fake_degree, mn_character, schur_expansion, schur_to_p, z};
use pfcat::tableaux::{count_syt, enumerate_oscillating, fake_degree_schur, partitions_of};
use pfcat::{Diagram, OscillatingTableau, Partition, PerfectMatching, RationalMorphism, SymFuncP};
use proptest::prelude::*;

fn diagram(top: usize, bottom: usize, pick: usize) -> Diagram {
    let all = enumerate_diagrams(top, bottom);
    all[pick % all.len()].clone()
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..6, 0..5).prop_map(Partition::new)
}

/// Shapes `(a, b, c, d)` whose consecutive diagrams fit on at most six points.
fn chain_shapes() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0usize..4, 0usize..4, 0usize..4, 0usize..4).prop_filter("even", |&(a, b, c, d)| {
        (a + b) % 2 == 0 && (b + c) % 2 == 0 && (c + d) % 2 == 0
    })
}

fn morphism(top: usize, bottom: usize) -> impl Strategy<Value = RationalMorphism> {
    prop::collection::vec((any::<usize>(), -3i64..4), 0..6).prop_map(move |terms| {
        let mut m = RationalMorphism::zero(top, bottom);
        for (pick, c) in terms {
            m.add_term(diagram(top, bottom, pick), int(c));
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_permutes_noncrossing_matchings(r in 1usize..6, n in 1usize..4) {
        let set: BTreeSet<PerfectMatching> = enumerate_x(r, n).into_iter().collect();
        let rotated: BTreeSet<PerfectMatching> = set.iter().map(|m| m.rotate()).collect();
        prop_assert_eq!(&rotated, &set);
    }

    #[test]
    fn block_rotation_permutes_blocked_matchings(r in 1usize..5, n in 1usize..4, k in 1usize..4) {
        let set = enumerate_x_blocked(r, n, k).unwrap();
        let before: BTreeSet<_> = set.iter().map(|b| b.base().clone()).collect();
        let after: BTreeSet<_> = set.iter().map(|b| b.rotate().base().clone()).collect();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn composition_is_associative((a, b, c, d) in chain_shapes(), i in any::<usize>(), j in any::<usize>(), k in any::<usize>()) {
        let (x, y, w) = (diagram(a, b, i), diagram(b, c, j), diagram(c, d, k));
        let (l1, xy) = compose_diagrams(&x, &y).unwrap();
        let (l2, left) = compose_diagrams(&xy, &w).unwrap();
        let (l3, yw) = compose_diagrams(&y, &w).unwrap();
        let (l4, right) = compose_diagrams(&x, &yw).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn bending_round_trips(top in 0usize..4, bottom in 0usize..4, pick in any::<usize>()) {
        prop_assume!((top + bottom) % 2 == 0);
        let d = diagram(top, bottom, pick);
        prop_assert_eq!(d.bend().unbend(top).unwrap(), d.clone());
        prop_assert_eq!(d.flip().flip(), d);
    }

    #[test]
    fn normal_form_is_linear_and_idempotent(a in morphism(2, 4), b in morphism(2, 4), n in 1usize..3) {
        let nf = |m: &RationalMorphism| normal_form(m, n).unwrap().result;
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(nf(&sum), nf(&a).add(&nf(&b)).unwrap());
        let once = nf(&a);
        prop_assert_eq!(nf(&once), once.clone());
        for (d, _) in once.terms() {
            prop_assert!(d.bend().matching().find_mutual_crossing(n + 1).is_none());
        }
    }

    #[test]
    fn composition_distributes_over_sums(a in morphism(2, 2), b in morphism(2, 2), c in morphism(2, 2)) {
        let delta = symplectic_delta(1);
        let lhs = a.compose(&b.add(&c).unwrap(), &delta).unwrap();
        let rhs = a.compose(&b, &delta).unwrap().add(&a.compose(&c, &delta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_is_an_involution(lam in partition()) {
        prop_assert_eq!(lam.conjugate().conjugate(), lam.clone());
        prop_assert_eq!(lam.conjugate().size(), lam.size());
    }

    #[test]
    fn fake_degree_of_conjugate_is_reversed(lam in partition()) {
        // f^{λ'}(q) = q^{C(m,2)} f^λ(1/q)
        let m = lam.size();
        let f = fake_degree_schur(&lam);
        let g = fake_degree_schur(&lam.conjugate());
        let top = m * m.saturating_sub(1) / 2;
        let reversed = QPolynomial::new((0..=top).map(|e| f.coeff(top - e)).collect());
        prop_assert_eq!(g, reversed);
        prop_assert_eq!(f.eval_at_one() as u128, count_syt(&lam));
    }

    #[test]
    fn fake_degree_is_linear(a in 0i64..4, b in 0i64..4, size in 1usize..7, i in any::<usize>(), j in any::<usize>()) {
        let shapes = partitions_of(size);
        let (x, y) = (&shapes[i % shapes.len()], &shapes[j % shapes.len()]);
        let combo = schur_to_p(x).scale(&int(a)).add(&schur_to_p(y).scale(&int(b)));
        let expected = fake_degree_schur(x).scale(a).add(&fake_degree_schur(y).scale(b));
        let fd = fake_degree(&combo).unwrap();
        prop_assert_eq!(fd.polynomial().cloned(), Some(expected));
    }

    #[test]
    fn schur_expansion_inverts_schur_to_p(lam in partition()) {
        let expansion = schur_expansion(&schur_to_p(&lam)).unwrap();
        prop_assert_eq!(expansion, [(lam, int(1))].into_iter().collect());
    }

    #[test]
    fn text_formats_round_trip(lam in partition(), top in 0usize..4, pick in any::<usize>(), coeffs in prop::collection::vec(-3i64..4, 0..6)) {
        prop_assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam.clone());
        let d = diagram(top, 4 - top, pick);
        prop_assert_eq!(d.to_string().parse::<Diagram>().unwrap(), d.clone());
        prop_assert_eq!(d.matching().to_string().parse::<PerfectMatching>().unwrap(), d.matching().clone());
        let q = QPolynomial::new(coeffs);
        prop_assert_eq!(q.to_string().parse::<QPolynomial>().unwrap(), q.clone());
        let f = schur_to_p(&lam).scale(&Rational::new(2.into(), 3.into()));
        prop_assert_eq!(f.to_string().parse::<SymFuncP>().unwrap(), f);
        let m = RationalMorphism::from_term(Rational::new((-5).into(), 2.into()), d);
        prop_assert_eq!(m.to_string().parse::<RationalMorphism>().unwrap(), m);
    }
}

#[test]
fn oscillating_tableaux_round_trip() {
    for t in enumerate_oscillating(6, 2).unwrap() {
        assert_eq!(t.to_string().parse::<OscillatingTableau>().unwrap(), t);
    }
}

#[test]
fn character_columns_are_orthogonal() {
    for m in 1..=7 {
        let shapes = partitions_of(m);
        for mu in &shapes {
            for nu in &shapes {
                let sum: i64 = shapes
                    .iter()
                    .map(|lam| mn_character(lam, mu).unwrap() * mn_character(lam, nu).unwrap())
                    .sum();
                let expected = if mu == nu { z(mu) } else { int(0) };
                assert_eq!(int(sum), expected, "columns {mu} and {nu}");
            }
        }
    }
}
