//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every check is exact. Randomized checks run a fixed-seed proptest runner so
//! the output is reproducible.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lgcurve::{cmd_orbifold, load_model};
use lgcurve_core::hkr::{hkr_split_chain, koszul_cohomology_dims, wedge_dw, Direction};
use lgcurve_core::hoch::{
    b_plus, cochain_vanishing_homotopy, compact_type_check, hh_bm_graded, hh_ordinary,
    mixed_complex_check, vanishing_homotopy, BorelMooreOptions, Chain, ChainWindow, FiniteAlgebra,
    Grading, OrdinaryOptions, PolyCarrier,
};
use lgcurve_core::jacobi::{canonical_module, jacobi_data, milnor_number, LGModel, Milnor};
use lgcurve_core::linalg::SparseVec;
use lgcurve_core::matfact::{
    graded_audit, graded_mf_to_twist, hat_degree, koszul_factorization, maurer_cartan_check,
    twist_to_graded_mf, verify_mf, Summand, TwistObject,
};
use lgcurve_core::orbifold::{
    cross_product, orbifold_hh_bm, psi_chain_check, FiniteAction, GroupAction,
};
use lgcurve_core::poly::{
    buchberger, parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial,
};
use lgcurve_core::{Field, Scalar};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use serde_json::json;

const LIMIT_QUARTIC: Duration = Duration::from_secs(5);
const LIMIT_ORBIFOLD: Duration = Duration::from_secs(10);
const LIMIT_VANISHING: Duration = Duration::from_secs(30);
const LIMIT_BOREL_MOORE_EACH: Duration = Duration::from_secs(60);
/// Loose bound for criteria without a stated runtime.
const LIMIT_DEFAULT: Duration = Duration::from_secs(300);

const MAX_WINDOW_VANISHING: usize = 10;
const MAX_WINDOW_HOMOTOPY: usize = 6;
const MAX_WINDOW_PSI: usize = 4;
const MAX_HKR_K: usize = 4;
const TWIST_CASES: u32 = 100;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn model(vars: &[&str], w: &str) -> LGModel {
    let r = PolyRing::standard(vars, Field::Rationals);
    LGModel::new(parse_polynomial(w, &r).unwrap()).unwrap()
}

fn fermat(d: u32, n: usize) -> LGModel {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let text = names
        .iter()
        .map(|v| format!("{v}^{d}"))
        .collect::<Vec<_>>()
        .join(" + ");
    model(&vars, &text)
}

fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_prop<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

fn c01_fermat_quartic() -> Check {
    let data = jacobi_data(&fermat(4, 4)).map_err(|e| e.to_string())?;
    ensure(data.milnor == Milnor::Finite(81), || {
        format!("μ = {:?}", data.milnor)
    })?;
    let dims = data.dims.ok_or("no graded dimensions")?;
    let got = [dims.get(0), dims.get(4), dims.get(8)];
    ensure(got == [1, 19, 1], || format!("dims at 0/4/8 = {got:?}"))
}

fn c02_orbifold_quartic() -> Check {
    let l = load_model(&data("fermat_quartic.toml"), None).map_err(|e| e.message)?;
    let out = cmd_orbifold(&l).map_err(|e| e.message)?;
    let s = &out.report.summary;
    ensure(s["class_vector"] == json!([1, 22, 1]), || {
        format!("class_vector = {}", s["class_vector"])
    })?;
    ensure(s["twisted_classes"] == json!(3), || {
        format!("twisted_classes = {}", s["twisted_classes"])
    })?;
    ensure(out.code == 0, || format!("exit code {}", out.code))
}

fn c03_twisted_count() -> Check {
    for d in 3..=5u32 {
        let action = GroupAction::cyclic(d as u64, vec![1; d as usize]).unwrap();
        let rep = orbifold_hh_bm(&fermat(d, d as usize), &action).map_err(|e| e.to_string())?;
        ensure(rep.twisted_classes == d as usize - 1, || {
            format!("d = {d}: {} twisted classes", rep.twisted_classes)
        })?;
    }
    Ok(())
}

fn truncated(power: u32, w: u32) -> FiniteAlgebra {
    let r = PolyRing::standard(&["x"], Field::Rationals);
    let gb = buchberger(
        &[Polynomial::var(&r, 0).pow(power)],
        MonomialOrder::default(),
    )
    .unwrap();
    FiniteAlgebra::from_quotient(&gb, &Polynomial::var(&r, 0).pow(w)).unwrap()
}

fn c04_vanishing() -> Check {
    let opts = OrdinaryOptions {
        min_window: 2,
        max_window: MAX_WINDOW_VANISHING,
    };
    for (m, w) in [(2, 1), (3, 2)] {
        let rep = hh_ordinary(&truncated(m, w), opts).map_err(|e| e.to_string())?;
        ensure(rep.parity_totals() == [0, 0], || {
            format!("k[x]/(x^{m}), W = x^{w}: {:?}", rep.parity_totals())
        })?;
        for e in &rep.entries {
            ensure(
                e.stabilized_at.is_some_and(|s| s <= MAX_WINDOW_VANISHING),
                || {
                    format!(
                        "k[x]/(x^{m}): entry {:?} not stable within {MAX_WINDOW_VANISHING}",
                        e.degree
                    )
                },
            )?;
        }
    }
    Ok(())
}

fn pure(w: &[i64]) -> FiniteAlgebra {
    let names = (0..w.len()).map(|i| format!("e{i}")).collect();
    let w = SparseVec::from_pairs(w.iter().enumerate().map(|(i, &c)| (i, Scalar::integer(c))));
    FiniteAlgebra::pure_curvature(Field::Rationals, names, w).unwrap()
}

fn c05_homotopy() -> Check {
    let strategy = (1usize..4).prop_flat_map(|n| {
        (
            prop::collection::vec(-3i64..4, n),
            prop::collection::vec(-3i64..4, n),
        )
    });
    run_prop(32, strategy, |(w, l)| {
        let lw: i64 = w.iter().zip(&l).map(|(a, b)| a * b).sum();
        if lw == 0 {
            return Ok(());
        }
        let alg = pure(&w);
        let functional =
            SparseVec::from_pairs(l.iter().enumerate().map(|(i, &c)| (i, Scalar::integer(c))));
        let window = if w.len() > 2 { 4 } else { MAX_WINDOW_HOMOTOPY };
        let h = vanishing_homotopy(&alg, &functional, window).map_err(|e| fail(e.to_string()))?;
        prop_assert!(h.verify().unwrap(), "chain homotopy, W = {:?}", w);
        let ch = cochain_vanishing_homotopy(&alg, &functional, window)
            .map_err(|e| fail(e.to_string()))?;
        prop_assert!(ch.verify().unwrap(), "cochain homotopy, W = {:?}", w);
        Ok(())
    })
}

const GOLDEN_MODELS: [&str; 8] = [
    "fermat_cubic.toml",
    "x2.toml",
    "x3.toml",
    "x5.toml",
    "x2y.toml",
    "dual_numbers.toml",
    "truncated_cubic.toml",
    "fermat_quartic.toml",
];

fn c06_mixed_complex() -> Check {
    for name in GOLDEN_MODELS {
        let l = load_model(&data(name), None).map_err(|e| e.message)?;
        for normalized in [false, true] {
            let ok = if l.relations.is_empty() {
                let alg = PolyCarrier::new(&l.model);
                // small internal degrees keep the quartic windows cheap
                let max_t = if l.model.nvars() > 3 { 2 } else { 3 };
                let mut ok = true;
                for e in 0..=3 {
                    let w = ChainWindow::at_degree(&alg, max_t, normalized, Some(e))
                        .map_err(|e| e.to_string())?;
                    ok &= mixed_complex_check(&alg, &w).map_err(|e| e.to_string())?;
                }
                ok
            } else {
                let gb = buchberger(&l.relations, MonomialOrder::default())
                    .map_err(|e| e.to_string())?;
                let alg = FiniteAlgebra::from_quotient(&gb, l.model.potential())
                    .map_err(|e| e.to_string())?;
                let w =
                    ChainWindow::at_degree(&alg, 4, normalized, None).map_err(|e| e.to_string())?;
                mixed_complex_check(&alg, &w).map_err(|e| e.to_string())?
            };
            ensure(ok, || format!("{name} (normalized = {normalized})"))?;
        }
    }
    Ok(())
}

const HKR_POTENTIALS: [&str; 4] = ["x^3 + y^3", "x^2*y + y^3", "x^2 + y^2", "x^4 + x*y^3 + y^4"];

fn c07_hkr() -> Check {
    let head = (0u32..3, 0u32..3);
    let slot = (0u32..3, 0u32..3).prop_filter("normalized", |&(a, b)| a + b > 0);
    let chain = (0..=MAX_HKR_K).prop_flat_map(move |k| {
        let tensor =
            (head.clone(), prop::collection::vec(slot.clone(), k)).prop_map(|(h, rest)| {
                let mut v = vec![h];
                v.extend(rest);
                v
            });
        prop::collection::vec((tensor, -3i64..4), 1..4)
    });
    run_prop(64, (chain, 0..HKR_POTENTIALS.len()), |(terms, w)| {
        let m = model(&["x", "y"], HKR_POTENTIALS[w]);
        let mut c: Chain<Monomial> = Chain::new();
        for (t, v) in &terms {
            let key: Vec<Monomial> = t.iter().map(|&(a, b)| Monomial(vec![a, b])).collect();
            add(&mut c, key, &Scalar::integer(*v));
        }
        let alg = PolyCarrier::new(&m);
        let mut plus = Chain::new();
        for (t, v) in &c {
            for (u, x) in b_plus(&alg, t, true) {
                add(&mut plus, u, &(&x * v));
            }
        }
        let lhs = hkr_split_chain(m.ring(), &plus).map_err(|e| fail(e.to_string()))?;
        let rhs = wedge_dw(
            &m,
            &hkr_split_chain(m.ring(), &c).map_err(|e| fail(e.to_string()))?,
        );
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

fn add(c: &mut Chain<Monomial>, key: Vec<Monomial>, v: &Scalar) {
    let slot = c.entry(key.clone()).or_insert_with(Scalar::zero);
    *slot += v;
    if slot.is_zero() {
        c.remove(&key);
    }
}

fn c08_koszul() -> Check {
    for (vars, w) in [
        (&["x"][..], "x^3"),
        (&["x", "y"][..], "x^2 + y^2"),
        (&["x", "y", "z"][..], "x^3 + y^3 + z^3"),
    ] {
        let m = model(vars, w);
        let mu = milnor_number(&m)
            .map_err(|e| e.to_string())?
            .finite()
            .ok_or("infinite μ")?;
        let row = koszul_cohomology_dims(&m, Direction::Wedge, None).map_err(|e| e.to_string())?;
        let totals = row.totals();
        ensure(row.is_concentrated(), || format!("{w}: {totals:?}"))?;
        ensure(totals[..totals.len() - 1].iter().all(|&t| t == 0), || {
            format!("{w}: {totals:?}")
        })?;
        ensure(totals.last() == Some(&mu), || {
            format!("{w}: last spot {totals:?}, μ = {mu}")
        })?;
    }
    Ok(())
}

fn c09_borel_moore() -> Check {
    for (vars, w) in [
        (&["x"][..], "x^2"),
        (&["x"][..], "x^3"),
        (&["x", "y"][..], "x^2 + y^2"),
    ] {
        let start = Instant::now();
        let m = model(vars, w);
        let canon = canonical_module(&m).map_err(|e| e.to_string())?;
        let rep = hh_bm_graded(&m, &BorelMooreOptions::default()).map_err(|e| e.to_string())?;
        let mut parities = [0, 0];
        parities[canon.parity as usize] = canon.total;
        ensure(
            rep.total() == canon.total && rep.parity_totals() == parities,
            || {
                format!(
                    "{w}: {:?} vs canonical {} in parity {}",
                    rep.parity_totals(),
                    canon.total,
                    canon.parity
                )
            },
        )?;
        let elapsed = start.elapsed();
        ensure(elapsed < LIMIT_BOREL_MOORE_EACH, || {
            format!("{w}: {elapsed:?}")
        })?;
    }
    Ok(())
}

/// Independent twist of a summand.
fn twist(d: i64, s: Summand) -> i64 {
    let half = if s.k % 2 == 0 { s.k / 2 } else { (s.k + 1) / 2 };
    half * d + s.a
}

/// `W = Σ x_i^d` plus an optional cross term, with Koszul pieces splitting it.
fn random_object(
    d: u32,
    n: usize,
    splits: &[u32],
    twists: &[i64],
    cross: i64,
) -> (LGModel, TwistObject) {
    let names: Vec<&str> = ["x", "y", "z"][..n].to_vec();
    let ring: Arc<PolyRing> = PolyRing::standard(&names, Field::Rationals);
    let var = |i: usize| Polynomial::var(&ring, i);
    let mut pieces = Vec::new();
    let mut w = Polynomial::zero(&ring);
    for (i, &split) in splits.iter().enumerate().take(n) {
        let a = split % (d - 1) + 1;
        let mut q = var(i).pow(d - a);
        if i == 0 && n > 1 && cross != 0 && a == 1 {
            q = q.add(&var(1).pow(d - 1).scaled(&Scalar::integer(cross)));
        }
        w = w.add(&var(i).pow(a).mul(&q));
        pieces.push((var(i).pow(a), q));
    }
    let model = LGModel::new(w).unwrap();
    let mf = koszul_factorization(&pieces, &twists[..n], d as i64).unwrap();
    (model, graded_mf_to_twist(&mf, d as i64).unwrap())
}

fn c10_twist_audit() -> Check {
    let strategy = (
        2u32..5,
        1usize..4,
        prop::array::uniform3(0u32..4),
        prop::array::uniform3(-4i64..5),
        -2i64..3,
    );
    run_prop(TWIST_CASES, strategy, |(d, n, splits, twists, cross)| {
        let (model, obj) = random_object(d, n, &splits, &twists, cross);
        let d = d as i64;
        prop_assert!(maurer_cartan_check(&obj, &model).unwrap());
        let mf = twist_to_graded_mf(&obj, &model).unwrap();
        prop_assert!(verify_mf(&mf, &model).unwrap());
        for r in 0..obj.summands.len() {
            for c in 0..obj.summands.len() {
                let f = obj.delta.get(r, c);
                if f.is_zero() {
                    continue;
                }
                let (src, dst) = (obj.summands[c], obj.summands[r]);
                let adjusted = f.homogeneous_degree().unwrap() - twist(d, dst) + twist(d, src);
                prop_assert_eq!(adjusted, if src.k.rem_euclid(2) == 0 { 0 } else { d });
            }
        }
        for &src in &obj.summands {
            for &dst in &obj.summands {
                for deg in 0..=3 * d {
                    if hat_degree(d, deg, src, dst).is_ok() {
                        prop_assert_eq!((deg - twist(d, dst) + twist(d, src)).rem_euclid(d), 0);
                    }
                }
            }
        }
        prop_assert!(graded_audit(&obj, &model, 3 * d).unwrap().passes());
        Ok(())
    })
}

/// `k[x, y]/(x^a, y^b)` with a diagonal cyclic action and an invariant potential.
fn cross_model(
    a: u32,
    b: u32,
    weights: [i64; 2],
    order: u64,
    field: Field,
    coeffs: &[i64],
) -> Option<FiniteAction> {
    let r = PolyRing::standard(&["x", "y"], field);
    let gens = [Polynomial::var(&r, 0).pow(a), Polynomial::var(&r, 1).pow(b)];
    let gb = buchberger(&gens, MonomialOrder::default()).unwrap();
    let action = GroupAction::cyclic(order, weights.to_vec()).unwrap();
    let mut w = Polynomial::zero(&r);
    let mut it = coeffs.iter();
    for i in 0..a {
        for j in 0..b {
            let m = Monomial(vec![i, j]);
            if (i, j) != (0, 0) && action.monomial_character(&m) == [0] {
                w.add_term(m, &Scalar::integer(*it.next().unwrap_or(&0)));
            }
        }
    }
    FiniteAction::diagonal(&gb, &w, &action).ok()
}

fn c11_psi() -> Check {
    let strategy = (
        (2u32..4, 1u32..3),
        prop::array::uniform2(0i64..2),
        prop::collection::vec(-2i64..3, 4),
        1..=MAX_WINDOW_PSI,
        any::<bool>(),
    );
    run_prop(16, strategy, |((a, b), weights, coeffs, window, prime)| {
        let (field, order) = if prime {
            (Field::prime(7).unwrap(), 3)
        } else {
            (Field::Rationals, 2)
        };
        if let Some(act) = cross_model(a, b, weights, order, field, &coeffs) {
            let cp = cross_product(&act).unwrap();
            // the bar window grows like dim^t; keep large algebras at small t
            let window = if cp.algebra.dim() > 6 {
                window.min(2)
            } else {
                window
            };
            prop_assert!(psi_chain_check(&cp, window).unwrap(), "window {}", window);
        }
        Ok(())
    })
}

fn c12_compact_type() -> Check {
    let e = SparseVec::unit;
    let k = FiniteAlgebra::new(
        Field::Rationals,
        vec!["1".into()],
        vec![vec![e(0)]],
        Some(0),
        SparseVec::new(),
    )
    .and_then(|a| a.with_grading(Grading::Integer, vec![0]));
    let dual = FiniteAlgebra::new(
        Field::Rationals,
        vec!["1".into(), "e".into()],
        vec![vec![e(0), e(1)], vec![e(1), SparseVec::new()]],
        Some(0),
        SparseVec::new(),
    )
    .and_then(|a| a.with_grading(Grading::Integer, vec![0, -1]));
    let cubic = FiniteAlgebra::new(
        Field::Rationals,
        vec!["1".into(), "e".into(), "e2".into()],
        vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), SparseVec::new()],
            vec![e(2), SparseVec::new(), SparseVec::new()],
        ],
        Some(0),
        SparseVec::new(),
    )
    .and_then(|a| a.with_grading(Grading::Integer, vec![0, -2, -4]));
    for (name, alg) in [("k", k), ("k[e]/(e^2)", dual), ("k[e]/(e^3)", cubic)] {
        let alg = alg.map_err(|e| e.to_string())?;
        let rep = compact_type_check(&alg, -2..=1, 8).map_err(|e| e.to_string())?;
        ensure(rep.passes(), || format!("{name}: {rep:?}"))?;
        ensure(rep.dims.iter().all(|&(_, a, b)| a == b), || {
            format!("{name}: {:?}", rep.dims)
        })?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "fermat quartic jacobi 1/19/1, mu 81",
            c01_fermat_quartic,
            LIMIT_QUARTIC,
        ),
        (
            "orbifold quartic (1, 22, 1), 3 twisted",
            c02_orbifold_quartic,
            LIMIT_ORBIFOLD,
        ),
        (
            "twisted classes d - 1 for d = 3, 4, 5",
            c03_twisted_count,
            LIMIT_DEFAULT,
        ),
        (
            "curved truncated algebras vanish",
            c04_vanishing,
            LIMIT_VANISHING,
        ),
        ("chain and cochain homotopies", c05_homotopy, LIMIT_DEFAULT),
        (
            "mixed complex identities on golden models",
            c06_mixed_complex,
            LIMIT_DEFAULT,
        ),
        ("HKR split intertwines b+ and dW", c07_hkr, LIMIT_DEFAULT),
        ("Koszul concentration at mu", c08_koszul, LIMIT_DEFAULT),
        (
            "Borel-Moore matches canonical module",
            c09_borel_moore,
            3 * LIMIT_BOREL_MOORE_EACH,
        ),
        (
            "graded twist degree audit, 100 objects",
            c10_twist_audit,
            LIMIT_DEFAULT,
        ),
        ("psi commutes with b+", c11_psi, LIMIT_DEFAULT),
        ("compact type HH = HH_c", c12_compact_type, LIMIT_DEFAULT),
    ];
    let mut failures = Vec::new();
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|_| {
            ensure(elapsed < *limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            })
        });
        match &result {
            Ok(()) => println!("AC{:02} PASS {name} ({:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                println!(
                    "AC{:02} FAIL {name} ({:.2}s): {msg}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
                failures.push(i + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
