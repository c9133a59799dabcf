//! Curved Hochschild chains and cochains on small finite algebras.

use lgcurve_core::hoch::{
    boundary_minus_matrices, boundary_plus_matrices, cochain_square_check,
    cochain_vanishing_homotopy, compact_type_check, hh_ordinary, mixed_complex_check,
    vanishing_homotopy, ChainWindow, FiniteAlgebra, Grading, OrdinaryOptions,
};
use lgcurve_core::linalg::{homology_dim, Matrix, SparseVec};
use lgcurve_core::poly::{buchberger, Monomial, MonomialOrder, PolyRing, Polynomial};
use lgcurve_core::{Field, Scalar};
use proptest::prelude::*;

fn truncated(power: u32, w: &[(u32, i64)]) -> FiniteAlgebra {
    let r = PolyRing::standard(&["x"], Field::Rationals);
    let gb = buchberger(
        &[Polynomial::var(&r, 0).pow(power)],
        MonomialOrder::default(),
    )
    .unwrap();
    let w = Polynomial::from_terms(
        &r,
        w.iter()
            .map(|&(e, c)| (Monomial(vec![e]), Scalar::integer(c))),
    );
    FiniteAlgebra::from_quotient(&gb, &w).unwrap()
}

/// `k[x, y]/(x^a, y^b)` with curvature given by exponent pairs.
fn box_algebra(a: u32, b: u32, w: &[((u32, u32), i64)]) -> FiniteAlgebra {
    let r = PolyRing::standard(&["x", "y"], Field::Rationals);
    let gens = [Polynomial::var(&r, 0).pow(a), Polynomial::var(&r, 1).pow(b)];
    let gb = buchberger(&gens, MonomialOrder::default()).unwrap();
    let w = Polynomial::from_terms(
        &r,
        w.iter()
            .map(|&((i, j), c)| (Monomial(vec![i, j]), Scalar::integer(c))),
    );
    FiniteAlgebra::from_quotient(&gb, &w).unwrap()
}

fn pure(dim: usize, w: &[i64]) -> FiniteAlgebra {
    let names = (0..dim).map(|i| format!("e{i}")).collect();
    let w = SparseVec::from_pairs(w.iter().enumerate().map(|(i, &c)| (i, Scalar::integer(c))));
    FiniteAlgebra::pure_curvature(Field::Rationals, names, w).unwrap()
}

#[test]
fn classical_truncated_polynomials() {
    // HH_0 = m and HH_t = m - 1 for t > 0 in characteristic zero
    for m in 2..=4u32 {
        let rep = hh_ordinary(
            &truncated(m, &[]),
            OrdinaryOptions {
                min_window: 2,
                max_window: 4,
            },
        )
        .unwrap();
        assert_eq!(rep.get(0, Some(0)), Some(m as usize));
        for t in 1..4i64 {
            assert_eq!(
                rep.get((t % 2) as u8, Some(t)),
                Some(m as usize - 1),
                "m = {m}, t = {t}"
            );
        }
    }
}

#[test]
fn curved_truncated_polynomials_vanish() {
    for (m, w) in [(2, 1), (3, 2), (4, 3), (4, 2)] {
        let rep = hh_ordinary(&truncated(m, &[(w, 1)]), OrdinaryOptions::default()).unwrap();
        assert_eq!(rep.parity_totals(), [0, 0], "k[x]/(x^{m}), W = x^{w}");
    }
}

#[test]
fn normalized_agrees_with_full() {
    for m in 2..=3u32 {
        let alg = truncated(m, &[]);
        let mut dims = Vec::new();
        for normalized in [false, true] {
            let w = ChainWindow::at_degree(&alg, 4, normalized, None).unwrap();
            let b = boundary_minus_matrices(&alg, &w).unwrap();
            let h: Vec<usize> = (1..4)
                .map(|t| homology_dim(&b[t], &b[t - 1]).unwrap())
                .collect();
            dims.push(h);
        }
        assert_eq!(dims[0], dims[1]);
    }
}

#[test]
fn plus_complex_is_acyclic_on_pure_curvature() {
    let alg = pure(2, &[1, 1]);
    let w = ChainWindow::at_degree(&alg, 5, false, None).unwrap();
    let b = boundary_plus_matrices(&alg, &w).unwrap();
    for t in 1..4 {
        assert_eq!(homology_dim(&b[t - 1], &b[t]).unwrap(), 0);
    }
    assert_eq!(
        homology_dim(&Matrix::zero(w.bases[0].len(), 0), &b[0]).unwrap(),
        0
    );
}

#[test]
fn compact_type_examples() {
    // k, graded dual numbers, k[e]/(e^3) with |e| = -2
    let k = FiniteAlgebra::new(
        Field::Rationals,
        vec!["1".into()],
        vec![vec![SparseVec::unit(0)]],
        Some(0),
        SparseVec::new(),
    )
    .unwrap()
    .with_grading(Grading::Integer, vec![0])
    .unwrap();
    let e = SparseVec::unit;
    let dual = FiniteAlgebra::new(
        Field::Rationals,
        vec!["1".into(), "e".into()],
        vec![vec![e(0), e(1)], vec![e(1), SparseVec::new()]],
        Some(0),
        SparseVec::new(),
    )
    .unwrap()
    .with_grading(Grading::Integer, vec![0, -1])
    .unwrap();
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
    .unwrap()
    .with_grading(Grading::Integer, vec![0, -2, -4])
    .unwrap();
    for alg in [k, dual, cubic] {
        let rep = compact_type_check(&alg, -2..=1, 8).unwrap();
        assert!(rep.passes(), "{rep:?}");
        assert!(rep.dims.iter().all(|&(_, a, b)| a == b));
    }
}

fn curvature() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
    prop::collection::vec(((0u32..3, 0u32..3), -2i64..3), 0..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn mixed_complex_identities(a in 1u32..3, b in 1u32..3, w in curvature()) {
        let alg = box_algebra(a + 1, b, &w);
        for normalized in [false, true] {
            let win = ChainWindow::at_degree(&alg, 3, normalized, None).unwrap();
            prop_assert!(mixed_complex_check(&alg, &win).unwrap());
        }
        prop_assert!(cochain_square_check(&alg, 2, false));
    }

    #[test]
    fn chain_homotopy(w in prop::collection::vec(-3i64..4, 1..4), l in prop::collection::vec(-3i64..4, 1..4)) {
        let alg = pure(w.len(), &w);
        let functional = SparseVec::from_pairs(l.iter().take(w.len()).enumerate().map(|(i, &c)| (i, Scalar::integer(c))));
        let lw: i64 = w.iter().zip(&l).map(|(a, b)| a * b).sum();
        let max_t = if w.len() > 2 { 4 } else { 6 };
        match vanishing_homotopy(&alg, &functional, max_t) {
            Ok(h) => {
                prop_assert!(lw != 0);
                prop_assert!(h.verify().unwrap());
            }
            Err(_) => prop_assert_eq!(lw, 0),
        }
        if lw != 0 {
            let ch = cochain_vanishing_homotopy(&alg, &functional, max_t.min(4)).unwrap();
            prop_assert!(ch.verify().unwrap());
        }
    }
}
