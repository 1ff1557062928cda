//! CLI acceptance: every worked-example value is reproducible through a
//! documented one-line invocation with bit-exact output, and printing a
//! parsed query reparses to the identical tree.

use std::process::Command;

use proptest::prelude::*;

use finprob_cli::ast::{Action, Arg, Component, Expr, Point, Pred, PredKind, Query};
use finprob_cli::eval::{evaluate, Options};
use finprob_cli::parse::parse;

/// The documented one-liners and their exact outputs. These are the same
/// invocations listed in the README.
const WORKED_ONE_LINERS: &[(&str, &str)] = &[
    ("hypergeometric(5, 2, 3) | pmf(1)", "3/5"),
    ("discrete_uniform(4) | pmf(0)", "1/4"),
    ("discrete_uniform_z(0, 6) | mean", "5/2"),
    ("discrete_uniform_z(0, 6) | var", "35/12"),
    ("discrete_uniform_z(0, 6) | cond(le 2) at 2", "1"),
    ("discrete_uniform_z(0, 6) | cond(le 2) at -10", "1"),
    ("discrete_uniform_z(0, 6) | cond(le 2) at 10", "4"),
    ("uniform_props([1/2, 1/3, 1/4]) >>= bernoulli | prob(eq success)", "13/36"),
    (
        "uniform_props([1/2, 1/3, 1/4]) >>= bernoulli_joint | cond(snd eq success, fst) at (1/2, success)",
        "61/156",
    ),
    (
        "uniform_props([1/2, 1/3, 1/4]) >>= bernoulli_joint | cond(snd eq success, fst) at (1/2, failure)",
        "95/276",
    ),
    ("multinomial(4, [1/3, 1/3, 1/3]) | pmf((1, 2, 1))", "4/27"),
    ("multinomial(4, [1/3, 1/3, 1/3]) | pmf((0, 2, 1))", "0"),
    ("multinomial(4, [1/3, 1/3, 1/3]) | pmf((2, 2, 1))", "0"),
    ("binomial(3, 1/3) | pmf(1)", "4/9"),
    ("negative_binomial(100, 3, 1/4) | pmf(1)", "9/256"),
    ("geometric(1/4) | pmf(4)", "27/256"),
    ("geometric(1/4) | prob(le 4)", "175/256"),
    ("empirical([1/4, 11/8, -3/8, -90/17, 0]) | mean", "-55/68"),
    ("empirical([1/4, 11/8, -3/8, -90/17, 0]) | var", "248313/46240"),
    ("empirical([1/4, 11/8, -3/8, -90/17, 0]) | cond(le 0) at 0", "-257/136"),
    ("empirical([1/4, 11/8, -3/8, -90/17, 0]) | cond(le 0) at 1", "13/16"),
    (
        "empirical2([10, 201/25, 8, 139/20, 13, 379/50, 9, 881/100, 11, 833/100, 14, 249/25, 6, 181/25, 4, 213/50, 12, 271/25, 7, 241/50, 5, 142/25]) | mean(x)",
        "9",
    ),
    (
        "empirical2([10, 201/25, 8, 139/20, 13, 379/50, 9, 881/100, 11, 833/100, 14, 249/25, 6, 181/25, 4, 213/50, 12, 271/25, 7, 241/50, 5, 142/25]) | mean(y)",
        "8251/1100",
    ),
    (
        "empirical2([10, 201/25, 8, 139/20, 13, 379/50, 9, 881/100, 11, 833/100, 14, 249/25, 6, 181/25, 4, 213/50, 12, 271/25, 7, 241/50, 5, 142/25]) | cov(x, y)",
        "5501/1100",
    ),
];

fn run_binary(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_finprob"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap().trim_end().to_string(),
        String::from_utf8(out.stderr).unwrap().trim_end().to_string(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn criterion_20_worked_values_through_the_binary() {
    for (query, expected) in WORKED_ONE_LINERS {
        // through the process
        let (stdout, stderr, code) = run_binary(&[query]);
        assert_eq!(code, 0, "query {query} failed: {stderr}");
        assert_eq!(&stdout, expected, "query {query}");
        // bit-exact against the in-process library path
        let parsed = parse(query).unwrap();
        let value = evaluate(&parsed, &Options::default()).unwrap();
        assert_eq!(&value.render_text(), expected, "library path for {query}");
    }
    println!("criterion 20: pass ({} documented one-liners, bit-exact)", WORKED_ONE_LINERS.len());
}

#[test]
fn exit_codes_and_streams() {
    let (_, stderr, code) = run_binary(&["binomial(3,"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("parse error at 1:"), "stderr: {stderr}");

    let (_, stderr, code) = run_binary(&["nosuch(1)"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("unknown name"), "stderr: {stderr}");

    let (_, stderr, code) = run_binary(&["binary_urn(0, 0)"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("empty urn"), "stderr: {stderr}");
}

#[test]
fn json_output_shape() {
    let (stdout, _, code) = run_binary(&["--json", "binomial(3, 1/3) | pmf(1)"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, r#"{"value":"4/9"}"#);

    let (stdout, _, code) = run_binary(&["--json", "bernoulli(1/3)"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        r#"{"space":{"sum":["unit","unit"]},"support":[{"w":"1/3","point":{"tag":["L","unit"]}},{"w":"2/3","point":{"tag":["R","unit"]}}]}"#
    );
}

#[test]
fn fuel_flag_reshapes_approximations() {
    let (stdout, _, code) = run_binary(&["--fuel", "3", "geometric(1/2) | pmf(4)"]);
    assert_eq!(code, 0);
    // with fuel 3 the leftover mass resolves through the tail onto point 4
    assert_eq!(stdout, "1/8");
    let (stdout, _, _) = run_binary(&["geometric(1/2) | pmf(4)"]);
    assert_eq!(stdout, "1/16");
}

#[test]
fn stdin_and_selfcheck() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_finprob"))
        .arg("-")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"binomial(3, 1/3) | pmf(1)\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), "4/9");

    let (stdout, _, code) = run_binary(&["--selfcheck", "--seed", "11"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("self-check ok"), "stdout: {stdout}");
}

// ---- parse/print round trip ------------------------------------------

fn arb_rational() -> impl Strategy<Value = finprob::Rational> {
    (-99i64..=99, 1i64..=40).prop_map(|(n, d)| finprob::Rational::new(n, d).unwrap())
}

/// Identifier that is not a keyword of the expression grammar.
fn arb_name() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,8}".prop_filter("reserved", |s| s != "mix")
}

fn arb_point() -> impl Strategy<Value = Point> {
    let leaf = prop_oneof![
        arb_rational().prop_map(Point::Number),
        Just(Point::Success),
        Just(Point::Failure),
    ];
    leaf.prop_recursive(2, 8, 3, |inner| {
        proptest::collection::vec(inner, 1..3).prop_map(Point::Tuple)
    })
}

fn arb_pred() -> impl Strategy<Value = Pred> {
    let component = prop_oneof![Just(None), Just(Some(Component::Fst)), Just(Some(Component::Snd))];
    let kind = prop_oneof![
        arb_point().prop_map(PredKind::Eq),
        arb_rational().prop_map(PredKind::Le),
        arb_rational().prop_map(PredKind::Ge),
    ];
    (component, kind).prop_map(|(component, kind)| Pred { component, kind })
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let call_leaf = (arb_name(), proptest::collection::vec(arb_rational().prop_map(Arg::Number), 0..3))
        .prop_map(|(name, args)| Expr::Call { name, args });
    call_leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            (inner.clone(), arb_name()).prop_map(|(e, name)| Expr::Pushforward {
                inner: Box::new(e),
                name
            }),
            (inner.clone(), arb_name()).prop_map(|(e, name)| Expr::Bind { inner: Box::new(e), name }),
            (
                arb_name(),
                proptest::collection::vec(
                    prop_oneof![
                        arb_rational().prop_map(Arg::Number),
                        proptest::collection::vec(arb_rational(), 1..4).prop_map(Arg::List),
                        inner.clone().prop_map(Arg::Expr),
                    ],
                    0..3,
                )
            )
                .prop_map(|(name, args)| Expr::Call { name, args }),
            (
                proptest::collection::vec(inner, 1..3),
                proptest::collection::vec(arb_rational(), 1..3)
            )
                .prop_map(|(branches, weights)| Expr::Mix { branches, weights }),
        ]
    })
}

fn arb_action() -> impl Strategy<Value = Action> {
    prop_oneof![
        Just(Action::Support),
        arb_point().prop_map(Action::Pmf),
        arb_pred().prop_map(Action::Prob),
        proptest::option::of(arb_name()).prop_map(Action::Mean),
        proptest::option::of(arb_name()).prop_map(Action::Var),
        (arb_name(), arb_name()).prop_map(|(a, b)| Action::Cov(a, b)),
        (arb_pred(), proptest::option::of(arb_name()), arb_point())
            .prop_map(|(pred, rv, at)| Action::Cond { pred, rv, at }),
    ]
}

proptest! {
    /// Pretty-printing a query and reparsing it yields the identical tree.
    #[test]
    fn print_parse_round_trip(expr in arb_expr(), action in arb_action()) {
        let tree = Query { expr, action };
        let printed = tree.to_string();
        let reparsed = parse(&printed).unwrap_or_else(|e| panic!("{printed:?}: {e}"));
        prop_assert_eq!(tree, reparsed);
    }
}
