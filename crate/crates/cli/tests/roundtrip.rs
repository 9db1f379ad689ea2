use pfcat::brauer::symplectic_delta;
use pfcat::{Diagram, PerfectMatching, Rational};
use pfcat_cli::expr::{evaluate, parse_expr, Context, Expr, Node, Pos};
use proptest::prelude::*;

const ORIGIN: Pos = Pos { line: 1, column: 1 };

fn node(expr: Expr) -> Node {
    Node { expr, pos: ORIGIN }
}

fn strip(n: &Node) -> Node {
    let b = |x: &Node| Box::new(strip(x));
    node(match &n.expr {
        Expr::Neg(a) => Expr::Neg(b(a)),
        Expr::Add(x, y) => Expr::Add(b(x), b(y)),
        Expr::Sub(x, y) => Expr::Sub(b(x), b(y)),
        Expr::Compose(x, y) => Expr::Compose(b(x), b(y)),
        Expr::Tensor(x, y) => Expr::Tensor(b(x), b(y)),
        leaf => leaf.clone(),
    })
}

fn leaf() -> impl Strategy<Value = Node> {
    prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(p, q)| node(Expr::Number(Rational::new(p.into(), q.into())))),
        (1usize..4).prop_map(|i| node(Expr::U(i))),
        (1usize..4).prop_map(|i| node(Expr::S(i))),
        (0usize..3).prop_map(|m| node(Expr::Id(m))),
        (1usize..3, 0i64..4).prop_map(|(i, k)| node(Expr::R(i, k))),
        (1usize..3).prop_map(|m| node(Expr::E(m))),
        (0usize..3, prop::sample::select(vec![
            "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"
        ])).prop_map(|(top, m)| {
            let m: PerfectMatching = m.parse().unwrap();
            node(Expr::Diagram(Diagram::new(top, 4 - top, m).unwrap()))
        }),
    ]
}

fn tree() -> impl Strategy<Value = Node> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| node(Expr::Neg(Box::new(a)))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| node(Expr::Add(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| node(Expr::Sub(Box::new(a), Box::new(b)))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| node(Expr::Compose(Box::new(a), Box::new(b)))),
            (inner.clone(), inner).prop_map(|(a, b)| node(Expr::Tensor(Box::new(a), Box::new(b)))),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_recovers_the_tree(ast in tree()) {
        let text = ast.to_string();
        let parsed = parse_expr(&text).unwrap();
        prop_assert_eq!(strip(&parsed), ast);
        prop_assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn canonical_text_evaluates_like_the_original(ast in tree()) {
        let ctx = Context::new(2, symplectic_delta(2));
        let direct = evaluate(&ast, &ctx);
        let reparsed = evaluate(&parse_expr(&ast.to_string()).unwrap(), &ctx);
        prop_assert_eq!(direct.is_ok(), reparsed.is_ok());
        if let (Ok(a), Ok(b)) = (direct, reparsed) {
            prop_assert_eq!(a, b);
        }
    }
}
