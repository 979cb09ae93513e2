use proptest::prelude::*;

use super::*;

fn p(src: &str, k: usize) -> Expr {
    parse(src, k, TRIPLE_VARS).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn psi(src: &str, k: usize) -> Expr {
    parse(src, k, PSI_VARS).unwrap_or_else(|e| panic!("{src}: {e}"))
}

fn num(src: &str) -> f64 {
    parse(src, 1, TRIPLE_VARS)
        .unwrap()
        .eval(&Bindings::default())
        .unwrap()
}

#[test]
fn parses_into_expected_tree() {
    let e = psi("s[0]*ln(s[0])", 1);
    let s0 = Node::Var(VarName::S, 0);
    assert_eq!(
        *e.root(),
        Node::binary(BinOp::Mul, s0.clone(), Node::call(Func::Ln, s0))
    );
}

#[test]
fn precedence() {
    assert_eq!(num("2+3*4^2"), 50.0);
    assert_eq!(num("-2^2"), -4.0);
    assert_eq!(num("2^3^2"), 512.0);
    assert_eq!(num("2^-1"), 0.5);
    assert_eq!(num("8/4/2"), 1.0);
    assert_eq!(num("10-4-3"), 3.0);
    assert_eq!(num("(2+3)*4"), 20.0);
    assert_eq!(num("--3"), 3.0);
    assert_eq!(num("1.5e1 + 2E-1"), 15.2);
}

#[test]
fn out_of_range_index_is_a_dimension_error() {
    let err = parse("x[0]^2 + y[1]", 1, TRIPLE_VARS).unwrap_err();
    assert_eq!(
        err.kind,
        ParseErrorKind::IndexOutOfRange {
            var: "y".into(),
            index: 1,
            k: 1
        }
    );
    assert_eq!((err.line, err.column), (1, 12));
}

#[test]
fn context_restricts_variables() {
    let err = parse("x[0] + s[0]", 1, PSI_VARS).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::DisallowedVariable("x".into()));
    let err = parse("s[0]", 1, TRIPLE_VARS).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::DisallowedVariable("s".into()));
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse("1 +\n  foo(2)", 1, TRIPLE_VARS).unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("foo".into()));
    assert_eq!((err.line, err.column), (2, 3));

    assert_eq!(parse("  ", 1, TRIPLE_VARS).unwrap_err().kind, ParseErrorKind::Empty);
    assert!(matches!(
        parse("(1 + 2", 1, TRIPLE_VARS).unwrap_err().kind,
        ParseErrorKind::Unexpected { .. }
    ));
    assert!(matches!(
        parse("1 2", 1, TRIPLE_VARS).unwrap_err().kind,
        ParseErrorKind::Unexpected { .. }
    ));
    assert!(matches!(
        parse("x[1.5]", 3, TRIPLE_VARS).unwrap_err().kind,
        ParseErrorKind::Unexpected { .. }
    ));
    assert_eq!(
        parse("1 # 2", 1, TRIPLE_VARS).unwrap_err().kind,
        ParseErrorKind::UnexpectedChar('#')
    );
    assert!(matches!(
        parse("1e999", 1, TRIPLE_VARS).unwrap_err().kind,
        ParseErrorKind::InvalidNumber(_)
    ));
    let deep = format!("{}1{}", "(".repeat(500), ")".repeat(500));
    assert_eq!(parse(&deep, 1, TRIPLE_VARS).unwrap_err().kind, ParseErrorKind::TooDeep);
}

#[test]
fn evaluation_examples() {
    let e = std::f64::consts::E;
    let v = p("x[0]*ln(x[0])", 1).eval(&Bindings::triple(&[e], &[1.0], &[1.0])).unwrap();
    assert!((v - e).abs() <= 1e-15);
    assert_eq!(psi("ln(s[0])", 1).eval(&Bindings::psi(&[1.0])).unwrap(), 0.0);
    let v = psi("-s[0]*ln(s[0]) - s[1]*ln(s[1])", 2)
        .eval(&Bindings::psi(&[1.0, e]))
        .unwrap();
    assert!((v + e).abs() <= 1e-15);
}

#[test]
fn domain_errors_name_the_subexpression() {
    let err = psi("1/ (s[0]-1)", 1).eval(&Bindings::psi(&[1.0])).unwrap_err();
    assert_eq!(err.kind, EvalErrorKind::DivisionByZero);
    assert_eq!(err.subexpr, "1.0/(s[0] - 1.0)");

    let err = psi("2 + ln(s[0] - 1)", 1).eval(&Bindings::psi(&[1.0])).unwrap_err();
    assert_eq!(err.kind, EvalErrorKind::LogNonPositive(0.0));
    assert_eq!(err.subexpr, "ln(s[0] - 1.0)");

    let b = Bindings::default();
    assert!(matches!(
        p("0^-1", 1).eval(&b).unwrap_err().kind,
        EvalErrorKind::ZeroToNegative(_)
    ));
    assert!(matches!(
        p("(-2)^0.5", 1).eval(&b).unwrap_err().kind,
        EvalErrorKind::NegativeBase { .. }
    ));
    assert_eq!(p("(-2)^3", 1).eval(&b).unwrap(), -8.0);
    assert_eq!(p("exp(1000)", 1).eval(&b).unwrap_err().kind, EvalErrorKind::NonFinite);
    assert_eq!(
        p("x[0]", 1).eval(&b).unwrap_err().kind,
        EvalErrorKind::Unbound(VarName::X)
    );
}

#[test]
fn printing_is_minimal_and_reparses() {
    for (src, printed) in [
        ("-(2*x[0])", "-(2.0*x[0])"),
        ("(-2)^2", "(-2.0)^2.0"),
        ("(2^3)^2", "(2.0^3.0)^2.0"),
        ("2^3^2", "2.0^3.0^2.0"),
    ] {
        let e = p(src, 1);
        assert_eq!(e.to_string(), printed);
        assert_eq!(p(&e.to_string(), 1), e);
    }
    let e = p("1 - (2 - 3) - -x[0]*-(y[0] + z[0])", 1);
    assert_eq!(p(&e.to_string(), 1), e);
}

#[test]
fn from_node_validates() {
    let n = Node::Var(VarName::X, 3);
    assert!(Expr::from_node(n.clone(), 2, TRIPLE_VARS).is_err());
    assert!(Expr::from_node(n.clone(), 4, PSI_VARS).is_err());
    assert!(Expr::from_node(n, 4, TRIPLE_VARS).is_ok());
}

fn arb_node(k: usize) -> impl Strategy<Value = Node> {
    let leaf = prop_oneof![
        (0.0f64..1e6).prop_map(Node::Num),
        (0u32..100).prop_map(|n| Node::Num(n as f64)),
        prop_oneof![Just(Constant::E), Just(Constant::Pi)].prop_map(Node::Const),
        (
            prop_oneof![Just(VarName::X), Just(VarName::Y), Just(VarName::Z)],
            0..k
        )
            .prop_map(|(v, i)| Node::Var(v, i)),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Node::neg),
            (0usize..5, inner.clone()).prop_map(|(i, a)| Node::call(Func::ALL[i], a)),
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Mul),
                    Just(BinOp::Div),
                    Just(BinOp::Pow)
                ],
                inner.clone(),
                inner
            )
                .prop_map(|(op, l, r)| Node::binary(op, l, r)),
        ]
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(node in arb_node(3)) {
        let e = Expr::from_node(node, 3, TRIPLE_VARS).unwrap();
        let printed = e.to_string();
        let back = parse(&printed, 3, TRIPLE_VARS).unwrap();
        prop_assert_eq!(&back, &e, "printed as {}", printed);
    }

    #[test]
    fn evaluation_is_deterministic(node in arb_node(2), x in proptest::collection::vec(0.01f64..10.0, 2)) {
        let e = Expr::from_node(node, 2, TRIPLE_VARS).unwrap();
        let b = Bindings::triple(&x, &x, &x);
        let first = e.eval(&b).map(f64::to_bits);
        let second = e.eval(&b).map(f64::to_bits);
        prop_assert_eq!(first, second);
    }
}
