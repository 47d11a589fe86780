//! Acceptance checks, one per numbered criterion. Each test writes a single
//! `criterion N: PASS|FAIL ...` line straight to stdout (bypassing the test
//! harness capture) so the summary survives in the test log.
//!
//! A criterion that cannot pass because the embedded source data is wrong
//! prints FAIL and asserts that the set of discrepancies is exactly the known
//! one; any new discrepancy, or a known one disappearing, fails the test.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use uzeta::characters::{euler_character_uj, hilbert_series_h, HilbertCase};
use uzeta::orbits::{
    brute_force_collapse, collapse, is_forbidden_pair, natural_dimension, normality_check, partitions,
    sigma_partition, Epsilon, NormalityVerdict, Partition,
};
use uzeta::rootsys::{l_conditions, CartanType, RootSystem, Series, Weight, WeylElement};
use uzeta::steinberg::{
    brute_force_steinberg, constrained_search, triple_root_check, SteinbergHit, TripleRoot, DEFAULT_SEARCH_BUDGET,
};
use uzeta::subsystems::{
    cartan_type_of, classical_phi0_prediction, conjugate_to_parabolic, is_parabolic_by_span, natural_conjugation,
    phi0, phi_lambda, ConjugationResult, DEFAULT_BUDGET,
};
use uzeta::supports::{
    borel_de_siebenthal_maximals, classify_bad_l, closed_subsystem_candidates, constrictor_checks,
    realizable_as_phi_lambda, Realizability, DEFAULT_ORBIT_BUDGET,
};
use uzeta::tables;
use uzeta::verify::{verify_tables, Scope, Table};

fn report(n: u32, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "criterion {n:>2}: {verdict} {detail}");
}

fn build(series: Series, n: usize) -> RootSystem {
    RootSystem::build(series, n).unwrap()
}

fn ty(s: &str) -> CartanType {
    s.parse().unwrap()
}

fn unit(n: usize, i: usize) -> Weight {
    (0..n).map(|k| i64::from(k + 1 == i)).collect()
}

fn hit_set(hits: &[SteinbergHit]) -> BTreeSet<(Weight, usize)> {
    hits.iter().map(|h| (h.nu.clone(), h.degree)).collect()
}

/// `(w, J)` from the conjugation table (0-based `J`).
fn table_w(r: &RootSystem, series: Series, rank: usize, l: i64) -> (WeylElement, Vec<usize>) {
    let row = tables::appendix().conj_row(series, rank, l).unwrap();
    let w = r.word_to_element(row.word.as_ref().unwrap()).unwrap();
    (w, row.j.iter().map(|i| i - 1).collect())
}

/// Rows whose printed word is longer than the element it spells.
const NON_REDUCED_ROWS: [&str; 15] = [
    "F4 l=5", "F4 l=7", "E6 l=5", "E6 l=7", "E7 l=5", "E7 l=9", "E8 l=7", "E8 l=9", "E8 l=11", "E8 l=13", "E8 l=15",
    "E8 l=17", "E8 l=19", "E8 l=21", "E8 l=23",
];

#[test]
fn criterion_01_conjugation_table() {
    let start = Instant::now();
    let rep = verify_tables(&Scope { tables: vec![Table::Conjugation], only: None }).unwrap();
    let elapsed = start.elapsed();
    let failures: BTreeSet<(String, String)> = rep.failures().into_iter().collect();
    let known: BTreeSet<(String, String)> =
        NON_REDUCED_ROWS.iter().map(|row| (row.to_string(), "reduced".to_string())).collect();
    report(
        1,
        failures.is_empty() && elapsed < Duration::from_secs(30),
        &format!(
            "{} checks pass, {} fail, {} skipped in {:.1?}; failing: {} printed words not reduced \
             (conjugation, type, dim and orbit dim hold on every row)",
            rep.counts.pass,
            rep.counts.fail,
            rep.counts.skipped,
            elapsed,
            failures.len()
        ),
    );
    assert_eq!(failures, known);
    assert!(elapsed < Duration::from_secs(30));
}

#[test]
fn criterion_02_weight_and_bound_tables() {
    let start = Instant::now();
    let rep = verify_tables(&Scope { tables: vec![Table::Weights, Table::Bounds], only: None }).unwrap();
    let elapsed = start.elapsed();
    let failures: BTreeSet<(String, String)> = rep.failures().into_iter().collect();
    let known: BTreeSet<(String, String)> = [
        ("E7 l=15", "neg_w0j"),
        ("E7 l=11", "lambda_printed"),
        ("E7 l=15", "alpha6.value"),
        ("E7 l=9", "alpha1.lo"),
        ("E8 l=21", "alpha7.hi"),
        ("E8 l=13", "alpha4.hi"),
        ("E8 l=13", "alpha7.hi"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    let listed: Vec<String> = failures.iter().map(|(r, c)| format!("{r} {c}")).collect();
    report(
        2,
        failures.is_empty() && elapsed < Duration::from_secs(30),
        &format!(
            "{} checks pass, {} fail in {:.1?}; table entries disagreeing with recomputation: {}",
            rep.counts.pass,
            rep.counts.fail,
            elapsed,
            listed.join(", ")
        ),
    );
    assert_eq!(failures, known);
    assert!(elapsed < Duration::from_secs(30));
}

#[test]
fn criterion_03_classical_phi0() {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for series in [Series::A, Series::B, Series::C, Series::D] {
        let lo = if series == Series::D { 4 } else { 2 };
        for n in lo..=10 {
            let r = build(series, n);
            let h = r.coxeter_number();
            for l in (3..=2 * h + 1).step_by(2) {
                if !l_conditions(series, n, l).strong {
                    continue;
                }
                cases += 1;
                let s = phi0(&r, l);
                let got = (cartan_type_of(&r, &s).unwrap(), r.num_roots() - s.len());
                let want = classical_phi0_prediction(series, n, l).unwrap();
                if got != want {
                    bad.push(format!("{}{n} l={l}: {} dim {} vs {} dim {}", series.letter(), got.0, got.1, want.0, want.1));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(3, bad.is_empty() && elapsed < Duration::from_secs(60), &format!("{cases} cases in {elapsed:.1?}"));
    assert!(bad.is_empty(), "{bad:?}");
    assert!(cases >= 200);
    assert!(elapsed < Duration::from_secs(60));
}

/// A Steinberg instance: root system, `w`, `J` and the hit set the theory
/// predicts.
struct Instance {
    name: String,
    r: RootSystem,
    l: i64,
    w: WeylElement,
    j: Vec<usize>,
    expected: BTreeSet<(Weight, usize)>,
}

fn exceptional_instance(series: Series, rank: usize, l: i64) -> Instance {
    let r = build(series, rank);
    let (w, j) = table_w(&r, series, rank, l);
    let expected = BTreeSet::from([(vec![0; rank], w.length(&r))]);
    Instance { name: format!("{}{rank} l={l}", series.letter()), r, l, w, j, expected }
}

fn type_a_instance(n: usize, l: i64) -> Instance {
    let r = build(Series::A, n);
    let c = natural_conjugation(&r, l).unwrap();
    let len = c.w.length(&r);
    let lu = l as usize;
    let expected = if (n + 1).is_multiple_of(lu) {
        let m1 = (n + 1) / lu;
        (0..lu).map(|t| (if t == 0 { vec![0; n] } else { unit(n, t * m1) }, len + m1 * t * (lu - t))).collect()
    } else {
        BTreeSet::from([(vec![0; n], len)])
    };
    Instance { name: format!("A{n} l={l}"), r, l, w: c.w, j: c.j, expected }
}

fn brute_instances() -> Vec<Instance> {
    let mut v = vec![exceptional_instance(Series::G, 2, 5)];
    v.extend([5, 7, 9, 11].map(|l| exceptional_instance(Series::F, 4, l)));
    v.extend([(2, 3), (4, 3), (5, 3)].map(|(n, l)| type_a_instance(n, l)));
    v
}

#[test]
fn criterion_04_steinberg_brute_force() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for inst in brute_instances() {
        let hits = brute_force_steinberg(&inst.r, &inst.j, &inst.w, inst.l, 24).unwrap();
        let got = hit_set(&hits);
        let zero = vec![0; inst.r.rank()];
        let nu0_ok = got.iter().filter(|(nu, _)| *nu == zero).map(|(_, d)| *d).eq([inst.w.length(&inst.r)]);
        if got != inst.expected || !nu0_ok {
            bad.push(format!("{}: {got:?} expected {:?}", inst.name, inst.expected));
        }
    }
    let elapsed = start.elapsed();
    report(
        4,
        bad.is_empty() && elapsed < Duration::from_secs(120),
        &format!("G2 l=5, F4 l=5,7,9,11, A2/A4/A5 l=3 in {elapsed:.1?}"),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(elapsed < Duration::from_secs(120));
}

#[test]
fn criterion_05_constrained_search() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let e6 = build(Series::E, 6);
    for l in [5, 7, 9, 11] {
        let (w, j) = table_w(&e6, Series::E, 6, l);
        let got = hit_set(&constrained_search(&e6, &j, &w, l, DEFAULT_SEARCH_BUDGET).unwrap());
        let len = w.length(&e6);
        let mut expected = BTreeSet::from([(vec![0; 6], len)]);
        if l == 9 {
            expected.insert((unit(6, 1), 20));
            expected.insert((unit(6, 6), 20));
        }
        if got != expected {
            bad.push(format!("E6 l={l}: {got:?}"));
        }
    }
    for inst in brute_instances() {
        let constrained = constrained_search(&inst.r, &inst.j, &inst.w, inst.l, DEFAULT_SEARCH_BUDGET).unwrap();
        let brute = brute_force_steinberg(&inst.r, &inst.j, &inst.w, inst.l, 24).unwrap();
        if hit_set(&constrained) != hit_set(&brute) || hit_set(&constrained) != inst.expected {
            bad.push(format!("{}: constrained {:?} brute {:?}", inst.name, hit_set(&constrained), hit_set(&brute)));
        }
    }
    let elapsed = start.elapsed();
    report(
        5,
        bad.is_empty() && elapsed < Duration::from_secs(600),
        &format!("E6 l=9 gives (0,8), (w1,20), (w6,20); E6 l=5,7,11 and F4 give nu=0 only; agrees with brute force; {elapsed:.1?}"),
    );
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_06_collapse_oracle() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=18 {
        for eta in partitions(n) {
            for eps in [Epsilon::Plus, Epsilon::Minus] {
                if eps == Epsilon::Minus && n % 2 == 1 {
                    continue;
                }
                checked += 1;
                if collapse(&eta, eps).unwrap() != brute_force_collapse(&eta, eps).unwrap() {
                    bad.push(format!("{eta} {eps:?}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        6,
        bad.is_empty() && elapsed < Duration::from_secs(60),
        &format!("{checked} (partition, epsilon) pairs, N <= 18, in {elapsed:.1?}"),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(elapsed < Duration::from_secs(60));
}

#[test]
fn criterion_07_normality() {
    let mut cases = 0;
    let mut bad = Vec::new();
    for series in [Series::B, Series::C, Series::D] {
        let lo = if series == Series::D { 4 } else { 2 };
        for n in lo..=10 {
            let big_n = natural_dimension(series, n).unwrap();
            for l in (3..=big_n + 2).step_by(2) {
                if !l_conditions(series, n, i64::from(l)).basic {
                    continue;
                }
                cases += 1;
                let sigma = sigma_partition(series, big_n, l).unwrap();
                let verdict = normality_check(&sigma, Epsilon::of_series(series).unwrap());
                if verdict != NormalityVerdict::Normal {
                    bad.push(format!("{}{n} l={l}: {sigma} {verdict:?}", series.letter()));
                }
            }
        }
    }
    let sigma = Partition::new(vec![2, 2]);
    let eta = Partition::new(vec![1, 1, 1, 1]);
    let forbidden = is_forbidden_pair(&eta, &sigma, Epsilon::Plus);
    let flagged = matches!(normality_check(&sigma, Epsilon::Plus), NormalityVerdict::BadPair { eta: e, .. } if e == eta);
    report(
        7,
        bad.is_empty() && forbidden && flagged,
        &format!("{cases} sigma partitions normal; ((2,2),(1,1,1,1)) reported as bad pair: {}", forbidden && flagged),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(forbidden && flagged);
}

fn subsets(n: usize, max_size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= max_size)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn criterion_08_euler_identity() {
    let start = Instant::now();
    let mut cases = Vec::new();
    cases.extend(subsets(2, 2).into_iter().map(|j| (Series::A, 2, j)));
    cases.extend(subsets(2, 2).into_iter().map(|j| (Series::B, 2, j)));
    cases.extend(subsets(3, 2).into_iter().map(|j| (Series::A, 3, j)));
    cases.push((Series::F, 4, vec![2]));
    let mut bad = Vec::new();
    for (series, n, j) in &cases {
        let r = build(*series, *n);
        let check = euler_character_uj(&r, j, 2_000_000).unwrap();
        if !check.matches {
            bad.push(format!("{}{n} J={j:?}", series.letter()));
        }
    }
    let elapsed = start.elapsed();
    report(
        8,
        bad.is_empty() && elapsed < Duration::from_secs(120),
        &format!("{} (type, J) pairs match coefficientwise in {elapsed:.1?}", cases.len()),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(elapsed < Duration::from_secs(120));
}

#[test]
fn criterion_09_hilbert_series() {
    let mut bad = Vec::new();
    let a1 = build(Series::A, 1);
    for l in [3, 5, 7] {
        let h = hilbert_series_h(&a1, l, 20).unwrap();
        for r in 0..=20 {
            if *h.even(r) != (2 * r as i64 + 1).into() {
                bad.push(format!("A1 l={l} H^{}", 2 * r));
            }
        }
        if h.dims.iter().skip(1).step_by(2).any(|d| *d != 0.into()) {
            bad.push(format!("A1 l={l} odd degree"));
        }
    }
    let a2 = build(Series::A, 2);
    let h = hilbert_series_h(&a2, 3, 4).unwrap();
    let twisted: BTreeSet<(usize, Weight)> =
        h.twists.iter().filter(|t| t.weight.iter().any(|&x| x != 0)).map(|t| (t.shift, t.weight.clone())).collect();
    let expected_twists = BTreeSet::from([(1, vec![1, 0]), (1, vec![0, 1])]);
    if h.case != (HilbertCase::TypeADivisible { m: 0 }) || twisted != expected_twists {
        bad.push(format!("A2 l=3 twists {:?}", h.twists));
    }
    // Untwisted: 1, 8 (the coadjoint module); the twists add 3 + 3 in degree 2.
    if *h.even(0) != 1.into() || *h.even(1) != 14.into() {
        bad.push(format!("A2 l=3 dims {:?}", h.dims));
    }
    report(
        9,
        bad.is_empty(),
        "A1 l=3,5,7: H^2r = 2r+1 for r <= 20, odd degrees 0; A2 l=3: twists by w1, w2 enter in degree 2 (1, 14, ...)",
    );
    assert!(bad.is_empty(), "{bad:?}");
}

fn all_types_rank_le_8() -> Vec<(Series, usize)> {
    let mut v = Vec::new();
    v.extend((1..=8).map(|n| (Series::A, n)));
    v.extend((2..=8).map(|n| (Series::B, n)));
    v.extend((2..=8).map(|n| (Series::C, n)));
    v.extend((4..=8).map(|n| (Series::D, n)));
    v.extend([(Series::E, 6), (Series::E, 7), (Series::E, 8), (Series::F, 4), (Series::G, 2)]);
    v
}

#[test]
fn criterion_10_triple_root_condition() {
    let mut cases = 0;
    let mut bad = Vec::new();
    for (series, n) in all_types_rank_le_8() {
        let r = build(series, n);
        let h = r.coxeter_number();
        // l sigma = gamma_1 + gamma_2 + gamma_3 forces l <= 3 (h - 1) by heights.
        for l in (3..=3 * h).step_by(2) {
            if !l_conditions(series, n, l).strong {
                continue;
            }
            cases += 1;
            // J = empty frees every positive root, so this covers every J.
            if let TripleRoot::Witness { sigma, gammas } = triple_root_check(&r, &[], l) {
                bad.push(format!("{}{n} l={l}: sigma {sigma} gammas {gammas:?}", series.letter()));
            }
        }
    }
    let b2 = build(Series::B, 2);
    let root = |c: [i64; 2]| b2.index_of(&c).unwrap();
    let mut want = [root([1, 0]), root([1, 1]), root([1, 2])];
    want.sort();
    let witness_ok = match triple_root_check(&b2, &[], 3) {
        TripleRoot::Witness { sigma, mut gammas } => {
            gammas.sort();
            sigma == root([1, 1]) && gammas == want
        }
        TripleRoot::Clean => false,
    };
    report(
        10,
        bad.is_empty() && witness_ok,
        &format!(
            "clean in {cases} (type, l) cases of rank <= 8; B2 l=3 witness a1 + (a1+a2) + (a1+2a2) = 3(a1+a2): {witness_ok}"
        ),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(witness_ok);
}

/// The bad-l discrepancies that stem from the source data rather than the
/// computation.
const KNOWN_BAD_L_DISCREPANCIES: [&str; 2] = [
    "E6 literal witness (8,8,8,16,8,8) gives A2xA2xA1, which is parabolic",
    "E6 A2xA2xA2 tabulated orbit A2+A1 (dim 46) is below the lower bound 54",
];

#[test]
fn criterion_11_bad_l_pipeline() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut discrepancies = BTreeSet::new();

    let maximal_lists = [
        (Series::F, 4, vec!["C3xA1", "B4", "A2xA2"]),
        (Series::E, 6, vec!["D5", "A5xA1", "A2xA2xA2"]),
        (Series::E, 7, vec!["E6", "D6xA1", "A7", "A5xA2"]),
        (Series::E, 8, vec!["D8", "E7xA1", "A8", "E6xA2", "A4xA4"]),
    ];
    for (series, n, list) in maximal_lists {
        let r = build(series, n);
        let got: BTreeSet<String> = borel_de_siebenthal_maximals(&r).iter().map(|m| m.cartan_type.to_string()).collect();
        let want: BTreeSet<String> = list.iter().map(|s| ty(s).to_string()).collect();
        if got != want {
            bad.push(format!("{}{n} maximals {got:?}", series.letter()));
        }
    }

    // Every non-parabolic closed subsystem of the listed types is forced to
    // pick up another root. F4's cases are named by coroot type.
    let eliminated = [
        (Series::E, 6, false, vec!["A5xA1", "A3xA1xA1", "A1^4"]),
        (Series::F, 4, true, vec!["C3xA1", "C2xA1", "A1^3", "A1xA1", "B4", "A3"]),
    ];
    for (series, n, by_dual, names) in eliminated {
        let r = build(series, n);
        let candidates = closed_subsystem_candidates(&r, 1_000_000).unwrap();
        for name in names {
            let want = ty(name);
            let matching: Vec<_> = candidates
                .iter()
                .filter(|c| if by_dual { c.dual_type == want } else { c.cartan_type == want })
                .filter(|c| !is_parabolic_by_span(&r, &c.roots))
                .collect();
            if matching.is_empty() {
                bad.push(format!("{}{n}: no non-parabolic {name}", series.letter()));
            }
            for l in [3, 9] {
                for c in &matching {
                    let v = realizable_as_phi_lambda(&r, &c.basis, l).unwrap();
                    if !matches!(v, Realizability::Forced { .. }) {
                        bad.push(format!("{}{n} {name} l={l}: {v:?}", series.letter()));
                    }
                }
            }
        }
    }

    let e6 = build(Series::E, 6);
    let a2_cubed = ty("A2^3");
    let witness_found = closed_subsystem_candidates(&e6, 1_000_000)
        .unwrap()
        .iter()
        .filter(|c| c.cartan_type == a2_cubed && !is_parabolic_by_span(&e6, &c.roots))
        .any(|c| matches!(realizable_as_phi_lambda(&e6, &c.basis, 9), Ok(Realizability::Witness { .. })));
    if !witness_found {
        bad.push("E6 A2^3 l=9: no witness".into());
    }
    for (lambda, literal) in [([8, 8, 8, 16, 8, 8], true), ([8, 8, 8, 2, 8, 8], false)] {
        let s = phi_lambda(&e6, &lambda, 9);
        let t = cartan_type_of(&e6, &s).unwrap();
        let non_parabolic = matches!(conjugate_to_parabolic(&e6, &s, DEFAULT_BUDGET), Ok(ConjugationResult::NotConjugate { .. }));
        let realizes = t == a2_cubed && non_parabolic;
        match (realizes, literal) {
            (true, _) => {}
            (false, true) => {
                discrepancies.insert(format!("E6 literal witness (8,8,8,16,8,8) gives {t}, which is parabolic"));
            }
            (false, false) => bad.push(format!("E6 weight {lambda:?} gives {t}")),
        }
    }

    let expected_entries = [
        (Series::E, 6, vec![("A2^3", "A2+A1")]),
        (Series::F, 4, vec![("A2xA2", "A1+Ã2")]),
    ];
    for (series, n, entries) in expected_entries {
        let r = build(series, n);
        let c = classify_bad_l(&r, 9, DEFAULT_ORBIT_BUDGET, false).unwrap();
        let got: Vec<(CartanType, String)> = c
            .entries
            .iter()
            .map(|e| {
                let label = e.tabulated.as_ref().map(|t| format!("{:?}", t.orbit.label)).unwrap_or_default();
                (e.phi_lambda_type.clone(), label)
            })
            .collect();
        let want: Vec<(CartanType, String)> =
            entries.iter().map(|(t, o)| (ty(t), format!("{:?}", uzeta::orbits::OrbitLabel::BalaCarter(o.to_string())))).collect();
        if got != want || !c.undetermined.is_empty() {
            bad.push(format!("{}{n} l=9 entries {got:?}", series.letter()));
        }
        for e in &c.entries {
            let Some(tab) = &e.tabulated else { continue };
            if !tab.consistent_with_lower_bound {
                discrepancies.insert(format!(
                    "{}{n} {} tabulated orbit {} (dim {}) is below the lower bound {}",
                    series.letter(),
                    e.phi_lambda_type,
                    tab_label(&tab.orbit.label),
                    tab.orbit.dim,
                    tab.lower_bound
                ));
            }
        }
    }

    let elapsed = start.elapsed();
    let known: BTreeSet<String> = KNOWN_BAD_L_DISCREPANCIES.iter().map(|s| s.to_string()).collect();
    let listed: Vec<&str> = discrepancies.iter().map(String::as_str).collect();
    report(
        11,
        bad.is_empty() && discrepancies.is_empty() && elapsed < Duration::from_secs(600),
        &format!(
            "maximal subsystems, forced eliminations and E6/F4 classification reproduced in {elapsed:.1?}; \
             source discrepancies: {}",
            listed.join("; ")
        ),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(discrepancies, known);
    assert!(elapsed < Duration::from_secs(600));
}

fn tab_label(label: &uzeta::orbits::OrbitLabel) -> String {
    match label {
        uzeta::orbits::OrbitLabel::BalaCarter(s) => s.clone(),
        other => format!("{other:?}"),
    }
}

/// E7 and E8 at l = 9 and l = 15. Run with `cargo test --release -- --ignored`.
#[test]
#[ignore]
fn criterion_11_long_run() {
    let mut bad = Vec::new();
    let mut discrepancies = BTreeSet::new();
    let cases = [
        (Series::E, 7, 9, vec!["A5xA2", "A2^3"]),
        (Series::E, 8, 15, vec!["E6xA2", "A8", "A4xA4", "A5xA2", "A2^3xA1", "A2^3", "A2^4"]),
    ];
    for (series, n, l, types) in cases {
        let r = build(series, n);
        let c = classify_bad_l(&r, l, 20_000_000, true).unwrap();
        let got: BTreeSet<String> = c.entries.iter().map(|e| e.phi_lambda_type.to_string()).collect();
        let want: BTreeSet<String> = types.iter().map(|t| ty(t).to_string()).collect();
        for t in want.symmetric_difference(&got) {
            discrepancies.insert(format!("{}{n} {t}: tabulated {}, computed {}", series.letter(), want.contains(t), got.contains(t)));
        }
        if !c.undetermined.is_empty() {
            bad.push(format!("{}{n} l={l} undetermined candidates", series.letter()));
        }
        for e in &c.entries {
            if e.tabulated.as_ref().is_some_and(|t| !t.consistent_with_lower_bound) {
                bad.push(format!("{}{n} {} below lower bound", series.letter(), e.phi_lambda_type));
            }
        }
        for k in constrictor_checks(&r, &c, 50_000_000).unwrap() {
            if k.holds != Some(true) {
                discrepancies.insert(format!("{}{n} {} constrictor {} > {}: {:?}", series.letter(), k.phi_lambda_type, k.levi, k.threshold, k.min.value()));
            }
        }
    }
    let known = BTreeSet::from([
        "E8 A2xA2xA2xA2: tabulated true, computed false".to_string(),
        "E8 A5xA2 constrictor E6 > 6: Some(6)".to_string(),
    ]);
    report(
        11,
        bad.is_empty() && discrepancies.is_empty(),
        &format!("(long run) E7 l=9 and E8 l=15 classifications; discrepancies: {discrepancies:?}"),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(discrepancies, known);
}
