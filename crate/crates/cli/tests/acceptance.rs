//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Criteria 1-6 run over the rationals; criterion 8 reruns them
//! over GF(32003) and compares the outcomes.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::path::PathBuf;
use std::time::Instant;

use leavitt_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRIME: u64 = 32003;

/// Outcome of one criterion: pass flag and a one-line summary that is
/// compared across fields.
struct Outcome {
    pass: bool,
    summary: String,
}

fn outcome(pass: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        summary: summary.into(),
    }
}

fn quiver_file(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "quivers",
        &format!("{name}.quiver"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn load(name: &str) -> Quiver {
    parse_quiver(&std::fs::read_to_string(quiver_file(name)).unwrap()).unwrap()
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["leavitt".to_owned()];
    argv.extend(args.iter().map(|a| a.to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = leavitt_cli::run(argv, &mut out, &mut err);
    let mut text = String::from_utf8(out).unwrap();
    text.push_str(&String::from_utf8(err).unwrap());
    (code, text)
}

fn identity_suite(field: Field) -> Outcome {
    let names = ["point", "loop", "rose2", "rose3", "a2", "a3", "parallel"];
    let config = VerifyConfig::default();
    let mut parts = Vec::new();
    let mut pass = true;
    for name in names {
        let alg = LeavittAlgebra::new(load(name), field);
        let reports = verify_identities(&alg, &config).unwrap();
        let ok = reports.len() == 7 && reports.iter().all(ChainMapReport::holds);
        pass &= ok;
        let cases: usize = reports.iter().map(|r| r.cases).sum();
        parts.push(format!("{name}:{}({cases})", if ok { "7/7" } else { "FAIL" }));
    }
    outcome(
        pass,
        format!("seven identities, {} samples each: {}", config.samples, parts.join(" ")),
    )
}

fn finite_exactness(field: Field) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        let alg = LeavittAlgebra::new(families::linear(n), field);
        let r = verify_exactness_finite(&alg).unwrap();
        let ok = r.dim_algebra == n * n && r.partial_injective() && r.middle_exact() && r.euler() == 0;
        let a2_ok = n != 2 || ((r.dim_p, r.dim_pairs, r.dim_algebra) == (4, 8, 4) && r.rank_partial == 4);
        pass &= ok && a2_ok;
        parts.push(format!(
            "A{n}: dims {}/{}/{} rank∂ {} euler {}",
            r.dim_p,
            r.dim_pairs,
            r.dim_algebra,
            r.rank_partial,
            r.euler()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn path_algebra(field: Field) -> Outcome {
    let r = verify_path_algebra_exactness(&families::linear(2), field).unwrap();
    // glued pairs over S: kQ e1 ⊗ e1 kQ = {e1⊗e1, a⊗e1}, kQ e2 ⊗ e2 kQ = {e2⊗e2, e2⊗a}; one triple e2⊗a⊗e1
    let dims_ok = (r.dim_triples, r.dim_pairs, r.dim_algebra) == (1, 4, 3);
    outcome(
        r.is_exact() && dims_ok,
        format!(
            "A2 path algebra 0→{}→{}→{}→0, rank δ {}, rank m {}, exact {} (dimensions count pairs glued over S)",
            r.dim_triples,
            r.dim_pairs,
            r.dim_algebra,
            r.rank_delta,
            r.rank_mult,
            r.is_exact()
        ),
    )
}

fn random_word<R: Rng>(q: &Quiver, rng: &mut R, max_len: usize) -> Word {
    let letters = q.double_quiver();
    let mut w = Word::vertex(VertexId(rng.random_range(0..q.vertex_count() as u32)));
    for _ in 0..rng.random_range(0..=max_len) {
        let options: Vec<Letter> = letters
            .iter()
            .copied()
            .filter(|&l| q.letter_source(l) == w.target())
            .collect();
        if options.is_empty() {
            break;
        }
        w = Word::letter(q, options[rng.random_range(0..options.len())])
            .compose(&w)
            .unwrap();
    }
    w
}

fn rewriting(field: Field) -> Outcome {
    let mut pass = true;
    let loop_alg = LeavittAlgebra::new(families::loop_quiver(), field);
    let loop_ok = (0..=8).all(|n| loop_alg.basis_up_to(n).len() == 2 * n + 1);
    pass &= loop_ok;

    let q = families::rose(2);
    let alg = LeavittAlgebra::new(q.clone(), field);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut agree = 0;
    for _ in 0..10_000 {
        let terms: Vec<(Word, Scalar)> = (0..3)
            .map(|_| (random_word(&q, &mut rng, 5), field.from_i64(rng.random_range(-3..=3))))
            .collect();
        let x = Element::from_terms(terms);
        if oracle::randomized_normal_form(&q, &x, &mut rng) == alg.normal_form(&x).unwrap() {
            agree += 1;
        }
    }
    pass &= agree == 10_000;

    let mut relations_zero = true;
    let mut irreducible = true;
    for name in ["point", "loop", "rose2", "rose3", "a2", "a3", "parallel"] {
        let alg = LeavittAlgebra::new(load(name), field);
        relations_zero &= alg
            .relations()
            .iter()
            .all(|r| alg.normal_form(&r.element).unwrap().is_zero());
        irreducible &= alg.basis_up_to(5).iter().all(|w| {
            let x = Element::word(field, w.clone());
            alg.normal_form(&x).unwrap() == x
        });
    }
    pass &= relations_zero && irreducible;
    outcome(
        pass,
        format!(
            "loop 2N+1 for N≤8: {loop_ok}; rose2 random-order agreement {agree}/10000; relations → 0: {relations_zero}; basis irreducible: {irreducible}"
        ),
    )
}

fn cohomology(field: Field) -> Outcome {
    let a2 = LeavittAlgebra::new(load("a2"), field);
    let c = center(&a2, Bound::Full).unwrap();
    let a2_center = c.dim() == 1 && print_element(a2.quiver(), &c.basis[0]) == "e(v1) + e(v2)";
    let lp = LeavittAlgebra::new(load("loop"), field);
    let loop_ok = (0..=6).all(|n| center(&lp, Bound::MaxLen(n)).unwrap().dim() == 2 * n + 1);
    let h2 = hh1(&a2).unwrap().hh1();
    let h3 = hh1(&LeavittAlgebra::new(load("a3"), field)).unwrap().hh1();
    let two = center(&LeavittAlgebra::new(load("two_a2"), field), Bound::Full)
        .unwrap()
        .dim();
    outcome(
        a2_center && loop_ok && h2 == 0 && h3 == 0 && two == 2,
        format!(
            "center(A2) = span{{e1+e2}}: {a2_center}; center(loop, N) = 2N+1 for N≤6: {loop_ok}; hh1(A2) = {h2}, hh1(A3) = {h3}; center(two A2) dim {two}"
        ),
    )
}

fn truncated(field: Field) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["loop", "rose2"] {
        let r = verify_exactness_truncated(&LeavittAlgebra::new(load(name), field), 4, 2).unwrap();
        pass &= r.unsolved == 0 && r.kernel_dim > 0;
        parts.push(format!(
            "{name}: ker m {} solved {} unsolved {}",
            r.kernel_dim, r.solved, r.unsolved
        ));
    }
    outcome(pass, format!("N=4 slack=2; {}", parts.join("; ")))
}

fn mutations() -> Outcome {
    let rose2 = quiver_file("rose2");
    let (c1, out1) = cli(&["verify", &rose2, "--samples", "100", "--mutate", "flip-partial-sign"]);
    let flip_ok = c1 == 1 && out1.contains("FAIL  partial_d_is_delta") && out1.contains("witness: input a:");
    let (c2, out2) = cli(&["verify", &rose2, "--samples", "100", "--mutate", "drop-ck2-arrow"]);
    let drop_ok = c2 == 1 && out2.contains("FAIL  d_kills_relations") && out2.contains("witness: relation CK2(v)");
    let (c3, _) = cli(&["verify", &rose2, "--samples", "100"]);
    outcome(
        flip_ok && drop_ok && c3 == 0,
        format!("flipped ∂ sign caught with witness: {flip_ok}; dropped CK2 arrow caught with witness: {drop_ok}; unmutated exit {c3}"),
    )
}

fn random_normal_element<R: Rng>(alg: &LeavittAlgebra, basis: &[Word], rng: &mut R) -> Element {
    let field = alg.field();
    let terms: Vec<(Word, Scalar)> = (0..rng.random_range(0..=4))
        .map(|_| {
            let w = basis[rng.random_range(0..basis.len())].clone();
            let num = field.from_i64(rng.random_range(-20..=20));
            let den = field.from_i64(rng.random_range(1..=9)).inv().unwrap();
            (w, &num * &den)
        })
        .collect();
    Element::from_terms(terms)
}

fn io_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut round_trips = 0;
    let mut total = 0;
    for field in [Field::Rational, Field::prime(PRIME).unwrap()] {
        for name in ["rose2", "a3", "parallel"] {
            let alg = LeavittAlgebra::new(load(name), field);
            let basis = alg.basis_up_to(4);
            let n = if field == Field::Rational { 2500 } else { 834 };
            for _ in 0..n {
                let x = random_normal_element(&alg, &basis, &mut rng);
                let text = print_element(alg.quiver(), &x);
                let back = parse_expr(&text, alg.quiver(), field).unwrap();
                total += 1;
                if back == x && print_element(alg.quiver(), &back) == text {
                    round_trips += 1;
                }
            }
        }
    }
    let mut quiver_ok = true;
    for name in [
        "point", "loop", "rose2", "rose3", "a2", "a3", "a4", "parallel", "two_a2",
    ] {
        let q = load(name);
        let printed = print_quiver(&q);
        quiver_ok &= print_quiver(&parse_quiver(&printed).unwrap()) == printed;
    }
    let golden = |name: &str| {
        let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
        std::fs::read_to_string(p).unwrap()
    };
    let verify_args = ["--format", "machine", "verify", &quiver_file("rose2")];
    let exact_args = ["--format", "machine", "exactness", &quiver_file("a2"), "--full"];
    let v1 = cli(&verify_args);
    let v2 = cli(&verify_args);
    let e1 = cli(&exact_args);
    let golden_ok =
        v1 == v2 && v1 == (0, golden("verify_rose2.machine")) && e1 == (0, golden("exactness_a2_full.machine"));
    outcome(
        round_trips == total && total >= 10_000 && quiver_ok && golden_ok,
        format!("element round-trips {round_trips}/{total}; quiver files round-trip: {quiver_ok}; golden machine outputs byte-stable: {golden_ok}"),
    )
}

fn main() {
    let start = Instant::now();
    let q = Field::Rational;
    let gf = Field::prime(PRIME).unwrap();
    type Check = fn(Field) -> Outcome;
    let field_criteria: [(&str, Check); 6] = [
        ("identity suite", identity_suite),
        ("finite-dimensional exactness", finite_exactness),
        ("path-algebra resolution", path_algebra),
        ("basis and rewriting oracle", rewriting),
        ("cohomology oracles", cohomology),
        ("truncated exactness evidence", truncated),
    ];
    let mut all = true;
    let mut over_q = Vec::new();
    for (i, (name, check)) in field_criteria.iter().enumerate() {
        let o = check(q);
        all &= o.pass;
        println!(
            "{} criterion {}: {name} [Q]: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.summary
        );
        over_q.push(o);
    }
    let o = mutations();
    all &= o.pass;
    println!(
        "{} criterion 7: mutation sensitivity: {}",
        if o.pass { "PASS" } else { "FAIL" },
        o.summary
    );

    let mut same = true;
    let mut gf_pass = true;
    let mut diffs = Vec::new();
    for (i, ((_, check), oq)) in field_criteria.iter().zip(&over_q).enumerate() {
        let o = check(gf);
        gf_pass &= o.pass;
        if o.summary != oq.summary || o.pass != oq.pass {
            same = false;
            diffs.push(format!("criterion {}: GF gave `{}`", i + 1, o.summary));
        }
    }
    let pass8 = gf_pass && same && over_q.iter().all(|o| o.pass);
    all &= pass8;
    println!(
        "{} criterion 8: cross-field consistency: criteria 1-6 over GF({PRIME}) pass: {gf_pass}, identical outcomes to Q: {same}{}",
        if pass8 { "PASS" } else { "FAIL" },
        if diffs.is_empty() { String::new() } else { format!(" ({})", diffs.join("; ")) }
    );
    let o = io_contract();
    all &= o.pass;
    println!(
        "{} criterion 9: I/O contract: {}",
        if o.pass { "PASS" } else { "FAIL" },
        o.summary
    );
    let elapsed = start.elapsed();
    println!("acceptance finished in {:.1}s", elapsed.as_secs_f64());
    if !all {
        std::process::exit(1);
    }
}
