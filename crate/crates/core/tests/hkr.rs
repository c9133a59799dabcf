//! HKR splitting, Koszul complexes and the Borel-Moore comparison.

use std::sync::Arc;

use lgcurve_core::hkr::{
    contract_dw, e2_page, hkr_split, hkr_split_chain, koszul_cohomology_dims, wedge_dw, Direction,
    Form, Polyvector,
};
use lgcurve_core::hoch::{b_plus, hh_bm_graded, BorelMooreOptions, Chain};
use lgcurve_core::jacobi::{canonical_module, milnor_number, LGModel};
use lgcurve_core::poly::{parse_polynomial, Monomial, PolyRing, Polynomial};
use lgcurve_core::{Field, Scalar};
use proptest::prelude::*;

fn model(vars: &[&str], w: &str) -> LGModel {
    let r = PolyRing::standard(vars, Field::Rationals);
    LGModel::new(parse_polynomial(w, &r).unwrap()).unwrap()
}

const POTENTIALS: [&str; 4] = ["x^3 + y^3", "x^2*y + y^3", "x^2 + y^2", "x^4 + x*y^3 + y^4"];

/// A chain of normalized tensors `a_0|…|a_k` in two variables.
fn chain(k: usize) -> impl Strategy<Value = Vec<(Vec<(u32, u32)>, i64)>> {
    let head = (0u32..3, 0u32..3);
    let slot = (0u32..3, 0u32..3).prop_filter("normalized", |&(a, b)| a + b > 0);
    let tensor = (head, prop::collection::vec(slot, k)).prop_map(|(h, rest)| {
        let mut v = vec![h];
        v.extend(rest);
        v
    });
    prop::collection::vec((tensor, -3i64..4), 1..4)
}

fn to_chain(terms: &[(Vec<(u32, u32)>, i64)]) -> Chain<Monomial> {
    let mut out = Chain::new();
    for (t, c) in terms {
        let key: Vec<Monomial> = t.iter().map(|&(a, b)| Monomial(vec![a, b])).collect();
        let slot = out.entry(key.clone()).or_insert_with(Scalar::zero);
        *slot += &Scalar::integer(*c);
        if slot.is_zero() {
            out.remove(&key);
        }
    }
    out
}

fn random_poly(ring: &Arc<PolyRing>, terms: &[((u32, u32, u32), i64)]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        terms
            .iter()
            .map(|&((a, b, c), v)| (Monomial(vec![a, b, c]), Scalar::integer(v))),
    )
}

fn poly_terms() -> impl Strategy<Value = Vec<((u32, u32, u32), i64)>> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn split_intertwines(terms in (0usize..5).prop_flat_map(chain), w in 0usize..POTENTIALS.len()) {
        let m = model(&["x", "y"], POTENTIALS[w]);
        let c = to_chain(&terms);
        let alg = lgcurve_core::hoch::PolyCarrier::new(&m);
        let mut plus = Chain::new();
        for (t, v) in &c {
            for (u, x) in b_plus(&alg, t, true) {
                let slot = plus.entry(u.clone()).or_insert_with(Scalar::zero);
                *slot += &(&x * v);
                if slot.is_zero() {
                    plus.remove(&u);
                }
            }
        }
        let lhs = hkr_split_chain(m.ring(), &plus).unwrap();
        let rhs = wedge_dw(&m, &hkr_split_chain(m.ring(), &c).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_differentials_square_to_zero(
        p in poly_terms(),
        idx in prop::collection::vec(0usize..3, 0..3),
        w in 0usize..POTENTIALS.len(),
    ) {
        let m = model(&["x", "y", "z"], &POTENTIALS[w].replace('y', "z"));
        let f = random_poly(m.ring(), &p);
        let form = Form::from_poly(&f, &idx);
        prop_assert!(wedge_dw(&m, &wedge_dw(&m, &form)).is_zero());
        let vector = Polyvector::from_poly(&f, &idx);
        prop_assert!(contract_dw(&m, &contract_dw(&m, &vector)).is_zero());
    }
}

#[test]
fn split_of_single_tensors() {
    let r = PolyRing::standard(&["x", "y"], Field::Rationals);
    let x = Monomial(vec![1, 0]);
    let y = Monomial(vec![0, 1]);
    let one = Monomial(vec![0, 0]);
    // e_1(1|x) = dx, e_2(1|x|y) = (1/2) dx∧dy
    assert_eq!(
        hkr_split(&r, &[one.clone(), x.clone()]).unwrap(),
        Form::from_poly(&Polynomial::one(&r), &[0])
    );
    let half = Form::from_poly(&Polynomial::one(&r), &[0, 1]).scaled(&Scalar::ratio(1, 2));
    assert_eq!(
        hkr_split(&r, &[one.clone(), x.clone(), y.clone()]).unwrap(),
        half
    );
    assert!(hkr_split(&r, &[one, x.clone(), x]).unwrap().is_zero());
}

#[test]
fn koszul_concentration() {
    for (vars, w) in [
        (&["x"][..], "x^3"),
        (&["x", "y"][..], "x^2 + y^2"),
        (&["x", "y", "z"][..], "x^3 + y^3 + z^3"),
    ] {
        let m = model(vars, w);
        let mu = milnor_number(&m).unwrap().finite().unwrap();
        let row = koszul_cohomology_dims(&m, Direction::Wedge, None).unwrap();
        assert!(row.is_concentrated(), "{w}");
        assert_eq!(*row.totals().last().unwrap(), mu, "{w}");
        let row = koszul_cohomology_dims(&m, Direction::Contract, None).unwrap();
        assert!(row.is_concentrated(), "{w}");
        assert_eq!(row.totals()[0], mu, "{w}");
    }
}

#[test]
fn e2_period_sums_to_milnor() {
    for (vars, w) in [
        (&["x"][..], "x^3"),
        (&["x", "y"][..], "x^2 + y^2"),
        (&["x", "y"][..], "x^3 + y^3"),
    ] {
        let m = model(vars, w);
        let n = vars.len();
        let mu = milnor_number(&m).unwrap().finite().unwrap();
        let page = e2_page(&m, 3, None).unwrap();
        for i in 1..=3 {
            let sum: usize = (0..=n)
                .map(|p| page.get(i, i + p).and_then(|e| e.finite()).unwrap())
                .sum();
            assert_eq!(sum, mu, "{w}, column {i}");
        }
    }
}

#[test]
fn borel_moore_matches_canonical() {
    for (vars, w) in [
        (&["x"][..], "x^2"),
        (&["x"][..], "x^3"),
        (&["x", "y"][..], "x^2 + y^2"),
    ] {
        let m = model(vars, w);
        let canon = canonical_module(&m).unwrap();
        let rep = hh_bm_graded(&m, &BorelMooreOptions::default()).unwrap();
        assert_eq!(rep.total(), canon.total, "{w}");
        let mut parities = [0, 0];
        parities[canon.parity as usize] = canon.total;
        assert_eq!(rep.parity_totals(), parities, "{w}");
        let dims = canon.dims.unwrap();
        for e in &rep.entries {
            let want = if e.parity == canon.parity {
                dims.get(e.degree.unwrap())
            } else {
                0
            };
            assert_eq!(e.dim, want, "{w} at {:?}", e.degree);
        }
    }
}
