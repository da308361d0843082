//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use oostream::algebra::{
    check_equation, classify_monoid, classify_semigroup, transformation_catalog, CatalogConfig,
    Equation, FiniteSemigroup, Regime,
};
use oostream::eval::{EvaluatorKind, Plan, Subject};
use oostream::fooling::{standard_instance, verify_fooling_set, Construction, DEFAULT_PAIR_CAP};
use oostream::harness::{differential_campaign, growth_profile, CampaignConfig, Model, ProfileConfig};
use oostream::langkit::{language, syntactic_monoid, syntactic_semigroup};
use oostream::oracles::{
    check_fl_preservation, check_pumping_claim, check_sum_of_squares_lemma, one_way_lower_bound,
    OracleCaps, OracleError,
};
use oostream::special::{carry_left_endpoint, scan_left_endpoint};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lang(regex: &str, alphabet: &str) -> Subject {
    Subject::automaton(language(regex, alphabet).expect("regex"))
}

fn monoid(regex: &str, alphabet: &str) -> FiniteSemigroup {
    syntactic_monoid(&language(regex, alphabet).unwrap()).unwrap().algebra
}

fn semigroup(regex: &str, alphabet: &str) -> FiniteSemigroup {
    syntactic_semigroup(&language(regex, alphabet).unwrap()).unwrap().algebra
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(took)
    } else {
        Err(format!("{what} took {took:.2?}, limit {limit:?}"))
    }
}

fn classification_table() -> Outcome {
    let start = Instant::now();
    let monoids = [
        ("(aa)*", "a", Regime::Constant),
        ("ab", "ab", Regime::Logarithmic),
        ("a*bba*", "ab", Regime::Linear),
    ];
    for (regex, alphabet, want) in monoids {
        let got = classify_monoid(&monoid(regex, alphabet)).map_err(|e| e.to_string())?.regime;
        if got != want {
            return Err(format!("M({regex}): {got}, expected {want}"));
        }
    }
    let semigroups = [
        ("a(a|b)*b", "ab", Regime::Constant),
        ("a*bc*", "abc", Regime::AtLeastLogarithmic),
        ("a*bba*", "ab", Regime::AtLeastLogarithmic),
        ("a*ba+ca*", "abc", Regime::AtLeastLogarithmic),
        ("(ab)*", "ab", Regime::AtLeastLogarithmic),
    ];
    for (regex, alphabet, want) in semigroups {
        let got = classify_semigroup(&semigroup(regex, alphabet)).map_err(|e| e.to_string())?.regime;
        if got != want {
            return Err(format!("S({regex}): {got}, expected {want}"));
        }
    }
    let took = within(start, Duration::from_secs(1), "classification")?;
    Ok(format!("8 subjects in {took:.2?}"))
}

fn witness_values() -> Outcome {
    let cases = [
        (monoid("a*bba*", "ab"), Equation::FlCom, "bb", "0"),
        (semigroup("a*bc*", "abc"), Equation::LiCom1, "0", "b"),
        (semigroup("a*bba*", "ab"), Equation::LiCom2, "0", "bb"),
        (semigroup("a*ba+ca*", "abc"), Equation::LocalCom, "bac", "0"),
    ];
    let mut shown = Vec::new();
    for (s, eq, lhs, rhs) in cases {
        let w = check_equation(&s, eq)
            .map_err(|e| e.to_string())?
            .into_witness()
            .ok_or(format!("{eq} unexpectedly holds"))?;
        let got = (s.name(w.lhs_value), s.name(w.rhs_value));
        if got != (lhs, rhs) || !w.verify(&s) {
            return Err(format!("{eq}: {} vs {}, expected {lhs} vs {rhs}", got.0, got.1));
        }
        shown.push(format!("{eq} {lhs}/{rhs}"));
    }
    Ok(shown.join(", "))
}

fn differential_subjects() -> Vec<(EvaluatorKind, &'static str, Subject)> {
    use EvaluatorKind as K;
    let z3 = || Subject::algebra(FiniteSemigroup::cyclic_group(3));
    let m_ab = || Subject::algebra(monoid("ab", "ab"));
    let s_first_last = || Subject::algebra(semigroup("a(a|b)*b", "ab"));
    let product = || {
        Subject::algebra(FiniteSemigroup::cyclic_group(2).direct_product(&monoid("ab", "ab")))
    };
    vec![
        (K::Reference, "a*bba*", lang("a*bba*", "ab")),
        (K::Commutative, "(aa)*", lang("(aa)*", "a")),
        (K::Commutative, "((a|b)(a|b))*", lang("((a|b)(a|b))*", "ab")),
        (K::Commutative, "Z3", z3()),
        (K::Fl, "M(ab)", m_ab()),
        (K::Fl, "ab", lang("ab", "ab")),
        (K::FlCom, "M(ab)", m_ab()),
        (K::FlCom, "Z2 x M(ab)", product()),
        (K::FlCom, "(aa)*", lang("(aa)*", "a")),
        (K::Li, "a(a|b)*b", lang("a(a|b)*b", "ab")),
        (K::Li, "S(a(a|b)*b)", s_first_last()),
        (K::LiCom, "a(a|b)*b", lang("a(a|b)*b", "ab")),
        (K::LiCom, "S(a(a|b)*b)", s_first_last()),
        (K::LiCom, "Z3", z3()),
        (K::Abstar, "(ab)*", lang("(ab)*", "ab")),
        (K::FirstLast, "a(a|b)*b", lang("a(a|b)*b", "ab")),
        (K::Aba, "a*b*a*", lang("a*b*a*", "ab")),
        (K::Ababa, "a*b*a*b*a*", lang("a*b*a*b*a*", "ab")),
        (K::Ababab, "a*b*a*b*a*b*", lang("a*b*a*b*a*b*", "ab")),
        (K::Interval, "a*bba*", lang("a*bba*", "ab")),
        (K::Interval, "(a|b)*aa(a|b)*", lang("(a|b)*aa(a|b)*", "ab")),
        (K::Interval, "S(a*bc*)", Subject::algebra(semigroup("a*bc*", "abc"))),
        (K::Bitpacked, "a*bba*", lang("a*bba*", "ab")),
        (K::Bitpacked, "(ab)*", lang("(ab)*", "ab")),
        (K::Bitpacked, "M(ab)", m_ab()),
        (K::Bitpacked, "S(a*bc*)", Subject::algebra(semigroup("a*bc*", "abc"))),
    ]
}

fn differential_correctness() -> Outcome {
    let start = Instant::now();
    let cfg = CampaignConfig::default();
    let mut runs = 0;
    let subjects = differential_subjects();
    for (kind, label, subject) in &subjects {
        let plan = Plan::new(*kind, subject).map_err(|e| format!("{kind} on {label}: {e}"))?;
        let report = differential_campaign(&|n| plan.start(n), subject, label, &cfg);
        if let Some(f) = report.failure {
            return Err(format!("{kind} on {label}: {f:?}"));
        }
        runs += report.runs;
    }
    let kinds: std::collections::HashSet<_> = subjects.iter().map(|s| s.0).collect();
    if kinds.len() != EvaluatorKind::ALL.len() {
        return Err("not every evaluator kind was exercised".into());
    }
    let took = within(start, Duration::from_secs(600), "campaigns")?;
    Ok(format!("{} campaigns, {runs} streams, {took:.1?}", subjects.len()))
}

fn growth_reproduction() -> Outcome {
    use EvaluatorKind as K;
    let start = Instant::now();
    let cases: [(K, &str, &str, &[Model]); 14] = [
        (K::Commutative, "((a|b)(a|b))*", "ab", &[Model::Constant]),
        (K::Li, "a(a|b)*b", "ab", &[Model::Constant]),
        (K::LiCom, "a(a|b)*b", "ab", &[Model::Constant]),
        (K::Abstar, "(ab)*", "ab", &[Model::Constant]),
        (K::FirstLast, "a(a|b)*b", "ab", &[Model::Constant]),
        (K::Fl, "ab", "ab", &[Model::Logarithmic]),
        (K::FlCom, "ab", "ab", &[Model::Logarithmic]),
        (K::Aba, "a*b*a*", "ab", &[Model::Logarithmic]),
        (K::Ababa, "a*b*a*b*a*", "ab", &[Model::Logarithmic]),
        (K::Ababab, "a*b*a*b*a*b*", "ab", &[Model::Sqrt]),
        (K::Reference, "a*bba*", "ab", &[Model::Linear, Model::Linearithmic]),
        (K::Interval, "a*bba*", "ab", &[Model::Linear, Model::Linearithmic]),
        (K::Bitpacked, "a*bba*", "ab", &[Model::Linear]),
        (K::Bitpacked, "(a|b)*aa(a|b)*", "ab", &[Model::Linear]),
    ];
    let mut summary = Vec::new();
    let mut interval_bits = None;
    for (kind, regex, alphabet, accepted) in cases {
        let subject = lang(regex, alphabet);
        let plan = Plan::new(kind, &subject).map_err(|e| format!("{kind}: {e}"))?;
        let cfg = ProfileConfig::new(subject.alphabet_size());
        let profile = growth_profile(&|n| plan.start(n), &cfg).map_err(|e| format!("{kind}: {e}"))?;
        let model = profile.model();
        if !accepted.contains(&model) || profile.fit_error() >= 0.10 {
            return Err(format!(
                "{kind} on {regex}: {model} (residual {:.3}), samples {:?}",
                profile.fit_error(),
                profile.samples
            ));
        }
        if kind == K::Interval {
            interval_bits = Some(profile.clone());
        }
        if kind == K::Bitpacked && regex == "a*bba*" {
            let interval = interval_bits.as_ref().ok_or("interval profile missing")?;
            let tail: Vec<f64> = profile.samples[profile.samples.len() - 3..]
                .iter()
                .map(|&(n, bits)| bits as f64 / interval.max_bits(n).unwrap() as f64)
                .collect();
            if !(tail[0] > tail[1] && tail[1] > tail[2]) {
                return Err(format!("bitpacked/interval ratios {tail:?} not decreasing"));
            }
            summary.push(format!("ratio {:.3}>{:.3}>{:.3}", tail[0], tail[1], tail[2]));
        }
        if kind == K::Bitpacked {
            summary.push(format!("{kind}[{regex}]={model}"));
        } else {
            summary.push(format!("{kind}={model}"));
        }
    }
    let took = within(start, Duration::from_secs(900), "profiles")?;
    Ok(format!("{} in {took:.1?}", summary.join(" ")))
}

fn fooling_suite() -> Outcome {
    let start = Instant::now();
    let mut verified = 0;
    let mut oracle_checks = 0;
    for c in Construction::ALL {
        let range: Vec<usize> = match c {
            Construction::SigmaAa | Construction::AbSemigroup | Construction::Monlin => (1..=8).collect(),
            Construction::Noncomm => (1..=64).collect(),
            Construction::Aba => (2..=64).collect(),
            Construction::Stswap | Construction::Xysep => (3..=64).collect(),
        };
        let mut checked_here = 0;
        for n in range {
            let f = standard_instance(c, n).map_err(|e| format!("{c} n={n}: {e}"))?;
            let report = verify_fooling_set(&f, &f.subject, DEFAULT_PAIR_CAP, 0)
                .map_err(|e| format!("{c} n={n}: {e}"))?;
            if !report.passed() || !report.exhaustive {
                return Err(format!("{c} n={n}: {report:?}"));
            }
            verified += 1;
            match one_way_lower_bound(&f.subject, f.length, &f.domain, OracleCaps::default()) {
                Ok(bound) if bound.bits >= f.bound_bits() => checked_here += 1,
                Ok(bound) => {
                    return Err(format!("{c} n={n}: oracle {} bits < {}", bound.bits, f.bound_bits()))
                }
                Err(OracleError::CapExceeded { .. }) => {}
                Err(e) => return Err(format!("{c} n={n}: {e}")),
            }
        }
        if checked_here == 0 {
            return Err(format!("{c}: no size fits the oracle caps"));
        }
        oracle_checks += checked_here;
    }
    let took = within(start, Duration::from_secs(600), "fooling suite")?;
    Ok(format!("{verified} sets verified, {oracle_checks} oracle bounds, {took:.1?}"))
}

fn oracle_lemmas() -> Outcome {
    let start = Instant::now();
    if let Some(c) = check_sum_of_squares_lemma(14).map_err(|e| e.to_string())? {
        return Err(format!("sum of squares: {c:?}"));
    }
    within(start, Duration::from_secs(60), "sum of squares")?;
    let fl_start = Instant::now();
    if let Some(w) = check_fl_preservation(&monoid("ab", "ab"), 5, 8) {
        return Err(format!("FL preservation: {w:?}"));
    }
    within(fl_start, Duration::from_secs(300), "FL preservation")?;
    let small: Vec<FiniteSemigroup> = transformation_catalog(&CatalogConfig::default())
        .into_iter()
        .filter(|s| s.size() <= 5)
        .collect();
    if small.is_empty() {
        return Err("no catalog semigroup of size <= 5".into());
    }
    for s in &small {
        let r = check_pumping_claim(s, 1 << 20, 0);
        if !r.passed() || !r.exhaustive {
            return Err(format!("pumping on {:?}: {r:?}", s.names()));
        }
    }
    Ok(format!("pumping on {} catalog semigroups, {:.1?}", small.len(), start.elapsed()))
}

fn equation_theory() -> Outcome {
    let start = Instant::now();
    let catalog = transformation_catalog(&CatalogConfig::default());
    if catalog.len() < 200 {
        return Err(format!("catalog has only {} members", catalog.len()));
    }
    let holds = |s: &FiniteSemigroup, eq| check_equation(s, eq).map(|c| c.passed());
    let mut licom = 0;
    for s in &catalog {
        let h = |eq| holds(s, eq).map_err(|e| e.to_string());
        let parts = h(Equation::LiCom1)? && h(Equation::LiCom2)? && h(Equation::LocalCom)?;
        if h(Equation::LiCom)? != parts {
            return Err(format!("LICOM split disagrees on {:?}", s.names()));
        }
        licom += parts as usize;
        for (small, big) in [
            (Equation::Com, Equation::FlCom),
            (Equation::Fl, Equation::FlCom),
            (Equation::Li, Equation::LiCom),
        ] {
            if h(small)? && !h(big)? {
                return Err(format!("{small} without {big} on {:?}", s.names()));
            }
        }
    }
    let took = within(start, Duration::from_secs(300), "equation checks")?;
    Ok(format!("{} semigroups, {licom} in LICOM, {took:.1?}", catalog.len()))
}

fn carry_endpoints() -> Outcome {
    let start = Instant::now();
    let mut cases = 0u64;
    for b in 1..=12u32 {
        for v in 0..1u64 << b {
            for p in 1..=b {
                let (fast, slow) = (carry_left_endpoint(v, b, p), scan_left_endpoint(v, b, p));
                if fast != slow {
                    return Err(format!("b={b} v={v:#b} p={p}: {fast} vs {slow}"));
                }
                cases += 1;
            }
        }
    }
    let took = within(start, Duration::from_secs(60), "carry suite")?;
    Ok(format!("{cases} states in {took:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("classification table", classification_table),
        ("witness values", witness_values),
        ("differential correctness", differential_correctness),
        ("space-growth reproduction", growth_reproduction),
        ("fooling-set suite", fooling_suite),
        ("oracle lemma checks", oracle_lemmas),
        ("equation-theory cross-checks", equation_theory),
        ("bit-packed micro layer", carry_endpoints),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
