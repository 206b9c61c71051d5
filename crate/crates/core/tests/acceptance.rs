//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criterion 8 includes the Hirzebruch surface F_0 = P1 x P1, whose root set
//! has a fourth element (0, -1) beyond the closed formula. That sub-check is
//! reported as a failure. Any other failure makes the target fail.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use addact_core::artin::{orbit_count_projective, Algebra, OrbitCount};
use addact_core::catalog::{
    coherence_polytopes, counts_by_dimension, del_pezzo6_fan, hyp_no30, named_fixture, table1, table1_entry, wide_fan,
    Fixture,
};
use addact_core::exact::{q, QMatrix, Rational};
use addact_core::ht::{
    fixed_locus, generating_subspace, ideal_from_pair, ideal_from_v, is_cyclic_module, projective_action,
    representation, v_from_ideal, GaPair, GeneratingSubspace,
};
use addact_core::hyper::{
    chart_equations, chart_names, equation, equation_names, equation_text, form_kernel, gorenstein_certificate,
    quadratic_rank, quadric_pair, HPair,
};
use addact_core::poly::{groebner, parse_poly, MonomialOrder, MultiPoly, VarNames, DEFAULT_DEGREE_CAP};
use addact_core::polytope::{inscribed_in_rectangle, normal_fan};
use addact_core::toric::{
    brackets_vanish, complete_collections, demazure_roots, root_lnd, has_additive_action, hirzebruch_fan, lnds_commute, lnds_commute_by_bracket,
    product_of_lines_fan, projective_space_fan, surface_action_count, uniqueness_check, weighted_projective_fan, Fan,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Wall-clock limit for recomputing the 42 table rows.
const TABLE_TIME_LIMIT: Duration = Duration::from_secs(10);
/// Random translation-invariant subspaces for the duality roundtrip.
const RANDOM_SUBSPACES: usize = 100;
/// Bounds on those subspaces.
const SUBSPACE_MAX_VARS: usize = 3;
const SUBSPACE_MAX_DIM: usize = 6;
/// Random H-pairs for the kernel/certificate agreement.
const RANDOM_HPAIRS: usize = 50;
/// Half-width of the integer box scanned for roots.
const ROOT_BOX: i64 = 10;
/// Degree bound for the explicit bracket computation.
const BRACKET_DEGREE: u32 = 4;
const SEED: u64 = 0x5eed_acce;

struct Outcome {
    pass: bool,
    detail: String,
    /// Failing sub-checks, used to recognise the documented exception.
    failures: Vec<String>,
}

impl Outcome {
    fn from_failures(ok_detail: impl Into<String>, failures: Vec<String>) -> Self {
        let pass = failures.is_empty();
        let detail = if pass { ok_detail.into() } else { failures.join("; ") };
        Outcome { pass, detail, failures }
    }
}

fn poly(s: &str, names: &VarNames) -> MultiPoly {
    parse_poly(s, names).expect("test polynomial")
}

/// A fan fixture, or the normal fan of a polytope fixture.
fn fan(name: &str) -> Fan {
    match named_fixture(name).expect("fixture") {
        Fixture::Fan(f) => f,
        Fixture::Polytope(p) => normal_fan(&p),
        _ => panic!("{name} is not a fan"),
    }
}

fn c1_table() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for e in table1() {
        let inv = e.algebra().and_then(|a| a.invariants());
        match inv {
            Ok(inv) if inv.dim == e.dim && inv.hilbert_samuel == e.hilbert_samuel && inv.is_gorenstein == e.gorenstein => {
            }
            Ok(inv) => failures.push(format!("row {}: got {:?}", e.id, inv)),
            Err(err) => failures.push(format!("row {}: {err}", e.id)),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > TABLE_TIME_LIMIT {
        failures.push(format!("took {elapsed:?}"));
    }
    if counts_by_dimension() != [1, 1, 2, 4, 9, 25] {
        failures.push("rows per dimension".into());
    }
    Outcome::from_failures(format!("42/42 rows in {:.2?}", elapsed), failures)
}

fn c2_truncated_cubic() -> Outcome {
    let mut failures = Vec::new();
    let pair = GaPair::maximal(Algebra::truncated_polynomial(3)).expect("pair");
    let s = VarNames::indexed("S", 1, 2);
    let x = VarNames::indexed("x", 1, 2);
    let a = VarNames::indexed("a", 1, 2);
    let az = a.chain(&VarNames::indexed("z", 0, 3));

    let ideal = ideal_from_pair(&pair).expect("ideal");
    let expected = groebner(2, &[poly("S1^2 - S2", &s), poly("S1*S2", &s)], MonomialOrder::GrLex, DEFAULT_DEGREE_CAP)
        .expect("groebner");
    if ideal != expected || ideal.to_text(&s) != ["S1^2 - S2", "S1*S2", "S2^2"] {
        failures.push(format!("ideal {:?}", ideal.to_text(&s)));
    }

    let v = generating_subspace(&pair);
    let reference_v = GeneratingSubspace::span(2, &[poly("1", &x), poly("x1", &x), poly("x2 + 1/2 * x1^2", &x)]);
    if v != reference_v || v.to_text(&x) != ["1", "x1", "1/2 * x1^2 + x2"] {
        failures.push(format!("subspace {:?}", v.to_text(&x)));
    }

    let rho = representation(&pair);
    if *rho.get(2, 0) != poly("a2 + 1/2 * a1^2", &a) || rho.to_text(&a)[2][0] != "1/2 * a1^2 + a2" {
        failures.push(format!("representation {:?}", rho.to_text(&a)));
    }

    let action = projective_action(&pair).expect("action");
    let reference = ["z0", "z1 + a1*z0", "z2 + a1*z1 + (a2 + 1/2 * a1^2)*z0"];
    let golden = ["z0", "a1*z0 + z1", "1/2 * a1^2*z0 + a1*z1 + a2*z0 + z2"];
    for (k, f) in action.iter().enumerate() {
        if *f != poly(reference[k], &az) || f.to_text(MonomialOrder::GrLex, &az) != golden[k] {
            failures.push(format!("action coordinate {k}: {}", f.to_text(MonomialOrder::GrLex, &az)));
        }
    }
    Outcome::from_failures("ideal, subspace, representation and action match", failures)
}

fn random_closure(rng: &mut ChaCha8Rng) -> Option<GeneratingSubspace> {
    let n = rng.gen_range(1..=SUBSPACE_MAX_VARS);
    let mut f = MultiPoly::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        f.add_term(e, q(rng.gen_range(-3..=3)));
    }
    let v = GeneratingSubspace::derivative_closure(n, &f.truncate(3));
    (v.dim() > 0 && v.dim() <= SUBSPACE_MAX_DIM && v.is_generating()).then_some(v)
}

fn c3_duality() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs: Vec<(String, GaPair)> = table1()
        .iter()
        .map(|e| (format!("row {}", e.id), GaPair::maximal(e.algebra().expect("row")).expect("pair")))
        .collect();
    for name in ["twisted-cubic-pair", "KS:5"] {
        if let Fixture::Pair(p) = named_fixture(name).expect("fixture") {
            pairs.push((name.into(), p));
        }
    }
    pairs.push(("hyp-no30".into(), hyp_no30().expect("fixture").pair().clone()));
    for k in 1..=4 {
        pairs.push((format!("quadric:{k}"), quadric_pair(k).expect("fixture").pair().clone()));
    }
    for (name, p) in &pairs {
        let check = || -> addact_core::Result<bool> {
            let i = ideal_from_pair(p)?;
            let v = v_from_ideal(&i)?;
            Ok(ideal_from_v(&v)? == i && v_from_ideal(&ideal_from_v(&v)?)? == v && v == generating_subspace(p))
        };
        if !matches!(check(), Ok(true)) {
            failures.push(name.clone());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut tested = 0;
    while tested < RANDOM_SUBSPACES {
        let Some(v) = random_closure(&mut rng) else { continue };
        tested += 1;
        let ok = ideal_from_v(&v)
            .and_then(|i| Ok(v_from_ideal(&i)? == v && ideal_from_v(&v_from_ideal(&i)?)? == i))
            .unwrap_or(false);
        if !ok {
            failures.push(format!("random subspace {:?}", v.to_text(&VarNames::indexed("x", 1, v.nvars()))));
        }
    }
    Outcome::from_failures(format!("{} fixtures and {RANDOM_SUBSPACES} random subspaces", pairs.len()), failures)
}

fn c4_gorenstein_triple() -> Outcome {
    let mut failures = Vec::new();
    for e in table1() {
        let a = e.algebra().expect("row");
        let gorenstein = a.is_gorenstein().expect("local");
        let cyclic = is_cyclic_module(&generating_subspace(&GaPair::maximal(a.clone()).expect("pair")));
        let unique_fixed_point = fixed_locus(&a).expect("socle").dim() == 1;
        if cyclic.as_ref().ok() != Some(&gorenstein) || unique_fixed_point != gorenstein || gorenstein != e.gorenstein {
            failures.push(format!("row {}: G {gorenstein} cyclic {cyclic:?} fixed {unique_fixed_point}", e.id));
        }
    }
    Outcome::from_failures("42/42 rows agree", failures)
}

fn c5_orbits() -> Outcome {
    let mut failures = Vec::new();
    for n in 0..=6u64 {
        let got = orbit_count_projective(&Algebra::truncated_polynomial(n as usize + 1)).expect("orbits");
        if got != OrbitCount::Finite(n + 1) {
            failures.push(format!("K[S]/(S^{}): {got:?}", n + 1));
        }
        let got = orbit_count_projective(&Algebra::product_of_fields(n as usize + 1)).expect("orbits");
        if got != OrbitCount::Finite((1 << (n + 1)) - 1) {
            failures.push(format!("K^{}: {got:?}", n + 1));
        }
    }
    let row4 = table1_entry(4).and_then(|e| e.algebra()).expect("row 4");
    let got = orbit_count_projective(&row4).expect("orbits");
    if got != OrbitCount::Infinite {
        failures.push(format!("row 4: {got:?}"));
    }
    Outcome::from_failures("truncated, split and row 4", failures)
}

fn c6_hypersurfaces() -> Outcome {
    let mut failures = Vec::new();
    let h = hyp_no30().expect("fixture");
    let names = equation_names(h.pair().n());
    let reference = poly("z0^2*z5 - z0*z3*z4 - z0*z1*z2 + 1/3 * z3^3", &names);
    if h.degree() != 3 || equation(&h) != reference || equation_text(&h) != "z0^2*z5 - z0*z1*z2 - z0*z3*z4 + 1/3 * z3^3" {
        failures.push(format!("row 30: degree {} equation {}", h.degree(), equation_text(&h)));
    }
    let Fixture::Pair(cubic) = named_fixture("twisted-cubic-pair").expect("fixture") else { unreachable!() };
    let z = chart_names(4);
    let got: BTreeSet<String> =
        chart_equations(&cubic).expect("chart").iter().map(|f| f.to_text(MonomialOrder::GrLex, &z)).collect();
    let reference: BTreeSet<String> = ["z2 - 1/2 * z1^2", "z3 - z1*z2 + 1/3 * z1^3"]
        .iter()
        .map(|s| poly(s, &z).to_text(MonomialOrder::GrLex, &z))
        .collect();
    let golden: BTreeSet<String> = ["-1/2 * z1^2 + z2", "1/3 * z1^3 - z1*z2 + z3"].iter().map(|s| s.to_string()).collect();
    if got != reference || got != golden {
        failures.push(format!("twisted cubic: {got:?}"));
    }
    Outcome::from_failures("row 30 cubic and twisted cubic charts", failures)
}

/// Rank of the Hessian of a quadratic form.
fn hessian_rank(f: &MultiPoly) -> usize {
    let n = f.nvars();
    let rows: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| f.derivative(i).derivative(j).constant_term()).collect()).collect();
    QMatrix::from_rows(&rows, n).rank()
}

fn hyperplane_pair(a: &Algebra, rng: &mut ChaCha8Rng) -> Option<HPair> {
    let m = a.maximal_ideal().ok()?;
    let k = m.dim();
    let c: Vec<Rational> = (0..k).map(|_| q(rng.gen_range(-3..=3))).collect();
    if k == 0 || c.iter().all(Zero::is_zero) {
        return None;
    }
    let u: Vec<Vec<Rational>> = QMatrix::from_rows(&[c], k)
        .kernel()
        .iter()
        .map(|coords| {
            let mut v = vec![Rational::zero(); a.dim()];
            for (x, b) in coords.iter().zip(m.basis()) {
                for (o, y) in v.iter_mut().zip(b) {
                    *o += x * y;
                }
            }
            v
        })
        .collect();
    HPair::new(GaPair::new(a.clone(), u).ok()?, None).ok()
}

fn c7_quadrics() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=4 {
        let eq = equation(&quadric_pair(n).expect("quadric"));
        let (r, h) = (quadratic_rank(&eq), hessian_rank(&eq));
        if r.as_ref().ok() != Some(&(n + 2)) || h != n + 2 {
            failures.push(format!("A_{n}: rank {r:?}, hessian {h}"));
        }
    }
    let corank_one = [
        ("b", 2, vec!["S1^3", "S1*S2", "S2^2"], vec!["S1", "S2"]),
        ("c", 1, vec!["S1^4"], vec!["S1", "S1^3"]),
    ];
    for (item, nvars, rels, u) in corank_one {
        let names = VarNames::indexed("S", 1, nvars);
        let rels: Vec<MultiPoly> = rels.iter().map(|s| poly(s, &names)).collect();
        let u: Vec<MultiPoly> = u.iter().map(|s| poly(s, &names)).collect();
        let a = Algebra::from_presentation(nvars, &rels).expect("algebra");
        let h = HPair::new(GaPair::from_polys(a, &u).expect("pair"), None).expect("H-pair");
        let n = h.pair().n();
        let eq = equation(&h);
        let (r, hr) = (quadratic_rank(&eq), hessian_rank(&eq));
        if r.as_ref().ok() != Some(&(n + 1)) || hr != n + 1 {
            failures.push(format!("item ({item}): rank {r:?}, hessian {hr}"));
        }
    }
    let algebras: Vec<Algebra> = table1().iter().map(|e| e.algebra().expect("row")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut tested, mut nondegenerate) = (0, 0);
    while tested < RANDOM_HPAIRS {
        let a = &algebras[rng.gen_range(0..algebras.len())];
        let Some(h) = hyperplane_pair(a, &mut rng) else { continue };
        tested += 1;
        let kernel_zero = form_kernel(&h).dim() == 0;
        nondegenerate += usize::from(kernel_zero);
        if gorenstein_certificate(&h).ok() != Some(kernel_zero) {
            failures.push(format!("random pair {tested} disagrees"));
        }
    }
    if nondegenerate == 0 || nondegenerate == RANDOM_HPAIRS {
        failures.push(format!("random pairs are one-sided ({nondegenerate} non-degenerate)"));
    }
    Outcome::from_failures(
        format!("ranks n+2 and n+1; {RANDOM_HPAIRS} random pairs agree ({nondegenerate} non-degenerate)"),
        failures,
    )
}

fn pairing(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Roots found by scanning the integer box `[-ROOT_BOX, ROOT_BOX]^n`.
fn brute_force_roots(f: &Fan) -> BTreeSet<(usize, Vec<i64>)> {
    let n = f.rank();
    let mut out = BTreeSet::new();
    let mut e = vec![-ROOT_BOX; n];
    loop {
        for (i, p) in f.rays().iter().enumerate() {
            let others_ok = f.rays().iter().enumerate().all(|(j, r)| j == i || pairing(r, &e) >= 0);
            if pairing(p, &e) == -1 && others_ok {
                out.insert((i, e.clone()));
            }
        }
        let Some(k) = (0..n).find(|&k| e[k] < ROOT_BOX) else { break };
        e[k] += 1;
        for x in e.iter_mut().take(k) {
            *x = -ROOT_BOX;
        }
    }
    out
}

/// Complete collections counted from the brute-force roots: `n` rays with
/// one root each, pairing to minus the identity.
fn brute_force_collections(f: &Fan, roots: &BTreeSet<(usize, Vec<i64>)>) -> usize {
    let n = f.rank();
    let by_ray: Vec<Vec<&Vec<i64>>> =
        (0..f.rays().len()).map(|i| roots.iter().filter(|(r, _)| *r == i).map(|(_, e)| e).collect()).collect();
    let mut count = 0;
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let mut choice = vec![0usize; n];
        'tuples: loop {
            if subset.iter().enumerate().all(|(j, &rj)| {
                choice[j] < by_ray[rj].len()
                    && subset.iter().enumerate().all(|(k, &rk)| {
                        pairing(&f.rays()[rk], by_ray[rj][choice[j]]) == if j == k { -1 } else { 0 }
                    })
            }) {
                count += 1;
            }
            for j in 0..n {
                choice[j] += 1;
                if choice[j] < by_ray[subset[j]].len().max(1) {
                    continue 'tuples;
                }
                choice[j] = 0;
            }
            break;
        }
        let m = f.rays().len();
        let Some(pos) = (0..n).rev().find(|&p| subset[p] < m - n + p) else { break };
        subset[pos] += 1;
        for p in pos + 1..n {
            subset[p] = subset[p - 1] + 1;
        }
    }
    count
}

fn c8_roots() -> Outcome {
    let mut failures = Vec::new();
    let as_set = |f: &Fan| -> BTreeSet<(usize, Vec<i64>)> {
        demazure_roots(f).expect("roots").into_iter().map(|r| (r.ray, r.e)).collect()
    };
    for d in 0..=5i64 {
        let f = hirzebruch_fan(d);
        let scanned = brute_force_roots(&f);
        let mut formula: BTreeSet<Vec<i64>> = [vec![1, 0], vec![-1, 0]].into_iter().collect();
        formula.extend((0..=d).map(|k| vec![k, 1]));
        let got: BTreeSet<Vec<i64>> = as_set(&f).into_iter().map(|(_, e)| e).collect();
        if as_set(&f) != scanned {
            failures.push(format!("F_{d}: scan disagrees"));
        }
        if got != formula {
            let extra: Vec<&Vec<i64>> = got.difference(&formula).collect();
            failures.push(format!("F_{d}: roots beyond the formula {extra:?}"));
        }
    }
    let p2 = projective_space_fan(2);
    if as_set(&p2).len() != 6 || brute_force_roots(&p2).len() != 6 {
        failures.push("P2 root count".into());
    }
    let mut cases: Vec<(String, Fan, usize)> =
        (1..=4).map(|n| (format!("P{n}"), projective_space_fan(n), n + 1)).collect();
    cases.extend((1..=5).map(|d| (format!("F_{d}"), hirzebruch_fan(d), 2)));
    cases.push(("dP6".into(), del_pezzo6_fan(), 0));
    cases.push(("P(2,3,5)".into(), weighted_projective_fan(&[2, 3, 5]).expect("fan"), 0));
    for (name, f, expected) in &cases {
        let scanned = brute_force_roots(f);
        let got = complete_collections(f).expect("collections").len();
        let oracle = brute_force_collections(f, &scanned);
        if as_set(f) != scanned || got != *expected || oracle != *expected {
            failures.push(format!("{name}: {got} collections, oracle {oracle}, expected {expected}"));
        }
    }
    Outcome::from_failures("Hirzebruch roots, P2 roots and collection counts", failures)
}

fn c9_surfaces() -> Outcome {
    let mut failures = Vec::new();
    for (name, f, expected) in [("F1", hirzebruch_fan(1), 2), ("P2", projective_space_fan(2), 2), ("wide", wide_fan(), 1)] {
        let got = surface_action_count(&f).ok();
        if got != Some(expected) {
            failures.push(format!("{name}: {got:?}"));
        }
    }
    for (name, f, expected) in [
        ("P2", projective_space_fan(2), false),
        ("P1xP1", product_of_lines_fan(2), true),
        ("F1", hirzebruch_fan(1), false),
        ("F2", hirzebruch_fan(2), false),
    ] {
        if uniqueness_check(&f).ok() != Some(expected) {
            failures.push(format!("uniqueness on {name}"));
        }
    }
    let mut surfaces: Vec<(String, Fan)> =
        vec![("P2".into(), projective_space_fan(2)), ("P1xP1".into(), product_of_lines_fan(2)), ("wide".into(), wide_fan())];
    surfaces.extend((0..=5).map(|d| (format!("F{d}"), hirzebruch_fan(d))));
    surfaces.extend(["square", "triangle", "trapezoid:1", "trapezoid:2", "simplex:2"].iter().map(|n| (n.to_string(), fan(n))));
    surfaces.push(("wps:1,1,2".into(), fan("wps:1,1,2")));
    for (name, f) in &surfaces {
        if !has_additive_action(f).expect("complete") {
            continue;
        }
        let count = surface_action_count(f).expect("count");
        if (count == 1) != uniqueness_check(f).expect("unique") {
            failures.push(format!("{name}: count {count} vs uniqueness"));
        }
    }
    Outcome::from_failures("counts 2, 2, 1; uniqueness exactly on P1xP1", failures)
}

fn c10_coherence() -> Outcome {
    let mut failures = Vec::new();
    let mut negatives = Vec::new();
    for (name, p) in coherence_polytopes() {
        let inscribed = inscribed_in_rectangle(&p).is_some();
        let action = has_additive_action(&normal_fan(&p)).expect("complete");
        if inscribed != action {
            failures.push(name.to_string());
        }
        if !inscribed {
            negatives.push(name);
        }
    }
    if negatives != ["hexagon"] {
        failures.push(format!("negative witnesses {negatives:?}"));
    }
    Outcome::from_failures("10/10 polytopes agree, hexagon negative", failures)
}

fn c11_commutation() -> Outcome {
    let mut failures = Vec::new();
    let mut fans: Vec<(String, Fan)> = ["P2", "P1xP1", "P1^n:3", "dP6", "wide-fan", "wps:1,1,2", "wps:1,2,3", "wps:2,3,5"]
        .iter()
        .map(|n| (n.to_string(), fan(n)))
        .collect();
    fans.extend((1..=4).map(|n| (format!("Pn:{n}"), projective_space_fan(n))));
    fans.extend((0..=5).map(|d| (format!("Fd:{d}"), hirzebruch_fan(d))));
    fans.extend(coherence_polytopes().into_iter().map(|(n, p)| (n.to_string(), normal_fan(&p))));
    let mut pairs = 0;
    for (name, f) in &fans {
        let roots = demazure_roots(f).expect("roots");
        for r1 in &roots {
            for r2 in &roots {
                pairs += 1;
                let (d1, d2) = (root_lnd(f, r1).expect("lnd"), root_lnd(f, r2).expect("lnd"));
                let bracket = brackets_vanish(&[d1.clone()], &[d2], d1.nvars(), BRACKET_DEGREE);
                if bracket != lnds_commute(f, r1, r2) || lnds_commute_by_bracket(f, r1, r2).ok() != Some(bracket) {
                    failures.push(format!("{name}: {r1:?} {r2:?}"));
                }
            }
        }
    }
    Outcome::from_failures(format!("{pairs} root pairs on {} fans up to degree {BRACKET_DEGREE}", fans.len()), failures)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("table of local algebras", c1_table),
        ("truncated cubic golden triple", c2_truncated_cubic),
        ("duality roundtrips", c3_duality),
        ("Gorenstein, cyclic and fixed point agree", c4_gorenstein_triple),
        ("orbit counts", c5_orbits),
        ("hypersurface pipeline", c6_hypersurfaces),
        ("quadric ranks and certificate", c7_quadrics),
        ("toric roots and collections", c8_roots),
        ("surface counts and uniqueness", c9_surfaces),
        ("polytope and fan coherence", c10_coherence),
        ("commutation cross-check", c11_commutation),
    ];
    let mut unexpected = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("C{id:<2} {status}  {title}: {} [{:.2?}]", outcome.detail, start.elapsed());
        let known = id == 8 && outcome.failures.iter().all(|f| f.starts_with("F_0: roots beyond the formula"));
        if !outcome.pass && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
