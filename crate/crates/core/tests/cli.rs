use std::fs;
use std::path::Path;

use oostream::harness::{FailureRecord, PermKind, PermutationSpec};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("oostream").chain(args.iter().copied());
    let code = oostream::cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn value<'a>(output: &'a str, key: &str) -> Option<&'a str> {
    output.lines().find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const Z2: &str = "elements: e g\nidentity: e\ne g\ng e\n";

#[test]
fn classify_examples() {
    let (code, out) = run(&["classify", "--regex", "(aa)*", "--alphabet", "a", "--as", "monoid"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "regime"), Some("Constant (Com)"));

    let (code, out) = run(&["classify", "--regex", "a*bba*", "--alphabet", "ab", "--as", "semigroup"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "regime"), Some("AtLeastLogarithmic, LICOM2 violated: s=a x=b y=b"));
    assert_eq!((value(&out, "lhs"), value(&out, "rhs")), (Some("0"), Some("bb")));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z2.sg");
    fs::write(&file, Z2).unwrap();
    let (code, out) = run(&["classify", "--semigroup-file", path(&file)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "regime"), Some("Constant (Com)"));
    assert_eq!(value(&out, "elements"), Some("e g"));

    let (code, out) = run(&["classify", "--regex", "ab", "--alphabet", "ab"]);
    assert_eq!(code, 0);
    assert!(value(&out, "regime").unwrap().starts_with("Logarithmic (FlCom), COM violated"));
}

#[test]
fn load_errors_exit_2() {
    assert_eq!(run(&["classify", "--regex", "(", "--alphabet", "ab"]).0, 2);
    assert_eq!(run(&["classify", "--semigroup-file", "/nonexistent/z.sg"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.sg");
    fs::write(&file, "elements: x y\nx x\n").unwrap();
    assert_eq!(run(&["classify", "--semigroup-file", path(&file)]).0, 2);
    assert_eq!(run(&["classify"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn eval_on_a_generated_trace() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.txt");
    let (code, text) = run(&["trace", "--regex", "a*b*a*", "--word", "abba", "--order", "random", "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("n=4\n"));
    fs::write(&trace, &text).unwrap();

    let (code, out) = run(&["eval", "--regex", "a*b*a*", "--evaluator", "aba", "--trace", path(&trace)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "answer"), Some("accept"));
    let bits: u64 = value(&out, "max_state_bits").unwrap().parse().unwrap();
    assert!(bits > 0);

    let (code, out) = run(&["eval", "--regex", "a*b*a*", "--evaluator", "reference", "--trace", path(&trace)]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "answer"), Some("accept"));

    let (_, out) = run(&["eval", "--regex", "a*b*a*", "--trace", path(&trace)]);
    assert_eq!(value(&out, "evaluator"), Some("aba"));
}

#[test]
fn eval_errors() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.txt");
    fs::write(&trace, "n=3\n1 a\n2 b\n3 a\n").unwrap();
    let args = ["eval", "--regex", "a*b*a*", "--alphabet", "abc", "--evaluator", "aba", "--trace", path(&trace)];
    assert_eq!(run(&args).0, 4);

    fs::write(&trace, "n=3\n1 a\n1 b\n3 a\n").unwrap();
    assert_eq!(run(&["eval", "--regex", "a*b*a*", "--trace", path(&trace)]).0, 2);
    fs::write(&trace, "n=2\n1 a\n2 z\n").unwrap();
    assert_eq!(run(&["eval", "--regex", "a*b*a*", "--trace", path(&trace)]).0, 2);
    fs::write(&trace, "1 a\n").unwrap();
    assert_eq!(run(&["eval", "--regex", "a*b*a*", "--trace", path(&trace)]).0, 2);
}

#[test]
fn auto_dispatch() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.txt");
    fs::write(&trace, "n=3\n3 b\n1 a\n2 a\n").unwrap();
    for (regex, kind) in [("b*(ab*ab*)*", "commutative"), ("ab", "flcom"), ("a*bba*", "bitpacked"), ("(ab)*", "abstar")] {
        let (code, out) = run(&["eval", "--regex", regex, "--trace", path(&trace)]);
        assert_eq!(code, 0, "{regex}");
        assert_eq!(value(&out, "evaluator"), Some(kind), "{regex}");
    }
    let (_, out) = run(&["eval", "--regex", "a(a|b)*b", "--as", "semigroup", "--trace", path(&trace)]);
    assert_eq!(value(&out, "evaluator"), Some("li"));
    assert_eq!(value(&out, "answer"), Some("accept"));
}

#[test]
fn measure_ababab_is_sqrt() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    let args = [
        "measure", "--regex", "a*b*a*b*a*b*", "--alphabet", "ab", "--evaluator", "ababab", "--n", "16:16384:x2",
        "--csv", path(&csv),
    ];
    let (code, out) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "model"), Some("sqrt"));
    let table = fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("n,max_state_bits,model,fit_error\n"));
    assert_eq!(table.lines().count(), 12);
    assert!(value(&out, "note").unwrap().contains("consistent with"));
}

#[test]
fn measure_is_replayable() {
    let args = ["measure", "--regex", "ab", "--evaluator", "fl", "--n", "16,64,256", "--seed", "9"];
    assert_eq!(run(&args), run(&args));
    assert_eq!(run(&["measure", "--regex", "ab", "--n", "64,16"]).0, 2);
}

#[test]
fn fool_examples() {
    let (code, out) = run(&["fool", "--construction", "sigma-aa", "--n", "4", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "words"), Some("16"));
    assert_eq!(value(&out, "verify"), Some("pass"));

    let (code, out) = run(&["fool", "--construction", "aba", "--n", "3", "--dump"]);
    assert_eq!(code, 0);
    assert!(out.contains("# word 0\nn=6\n"));
    assert_eq!(run(&["fool", "--construction", "nope", "--n", "3"]).0, 2);
}

#[test]
fn oracle_examples() {
    let args = ["oracle", "lower-bound", "--regex", ".*aa.*", "--alphabet", "ab", "--n", "6", "--domain", "fooling:sigma-aa:2"];
    let (code, out) = run(&args);
    assert_eq!(code, 0);
    let bits: u64 = value(&out, "bits").unwrap().parse().unwrap();
    assert!(bits >= 2);
    assert_eq!(value(&out, "bound"), Some(format!("≥ {bits} bits").as_str()));

    let (code, out) = run(&["oracle", "lower-bound", "--domain", "fooling:aba:4"]);
    assert_eq!(code, 0);
    assert!(value(&out, "bits").unwrap().parse::<u64>().unwrap() >= 2);

    let (code, _) = run(&["oracle", "lower-bound", "--regex", "a*", "--n", "40", "--domain", "1"]);
    assert_eq!(code, 3);

    let (code, out) = run(&["oracle", "sum-of-squares", "--max", "10"]);
    assert_eq!((code, value(&out, "sum-of-squares")), (0, Some("pass")));

    let (code, out) = run(&["oracle", "fl-preservation", "--regex", "ab", "--k", "5", "--max-len", "6"]);
    assert_eq!((code, value(&out, "fl-preservation")), (0, Some("pass")));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("z2.sg");
    fs::write(&file, Z2).unwrap();
    let (code, out) = run(&["oracle", "fl-preservation", "--semigroup-file", path(&file), "--k", "2"]);
    assert_eq!((code, value(&out, "fl-preservation")), (1, Some("fail")));

    let (code, out) = run(&["oracle", "pumping", "--regex", "a(a|b)*b"]);
    assert_eq!((code, value(&out, "pumping")), (0, Some("pass")));
}

#[test]
fn campaign_and_replay() {
    let (code, out) = run(&["campaign", "--regex", "a*b*a*", "--evaluator", "aba", "--n", "8,16", "--words", "50"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "campaign"), Some("pass"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("replay.json");
    let record = FailureRecord {
        subject: "a*b*a* over ab".into(),
        seed: 0,
        word: vec![0, 1, 0, 1],
        permutation: PermutationSpec::new(PermKind::Reverse, 4),
        expected: "reject".into(),
        got: "accept".into(),
    };
    fs::write(&file, record.to_json()).unwrap();
    let (code, out) = run(&["replay", "--regex", "a*b*a*", "--evaluator", "aba", "--file", path(&file)]);
    assert_eq!((code, value(&out, "reproduced")), (0, Some("no")));

    fs::write(&file, "{").unwrap();
    assert_eq!(run(&["replay", "--regex", "a*b*a*", "--file", path(&file)]).0, 2);
}
