use alloc::format;
use alloc::vec::Vec;

use super::algebra::{add_term, sign, Carrier, Chain, FiniteAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{matrix_of, Basis, Matrix, SparseVec};
use crate::scalar::Scalar;

/// `m_2`-part of the Hochschild boundary.
///
/// `b_-(a_0|…|a_n) = Σ_{i<n} (-1)^i a_0|…|a_i a_{i+1}|…|a_n
///                  + (-1)^{n + |a_n|(|a_0|+…+|a_{n-1}|)} a_n a_0|a_1|…|a_{n-1}`.
pub fn b_minus<C: Carrier>(alg: &C, a: &[C::Key], normalized: bool) -> Chain<C::Key> {
    let mut out = Chain::new();
    let n = a.len().saturating_sub(1);
    if n == 0 {
        return out;
    }
    for i in 0..n {
        let s = sign(i % 2 == 1);
        for (k, c) in alg.mul(&a[i], &a[i + 1]) {
            if normalized && i > 0 && alg.is_unit(&k) {
                continue;
            }
            let mut t = Vec::with_capacity(n);
            t.extend_from_slice(&a[..i]);
            t.push(k);
            t.extend_from_slice(&a[i + 2..]);
            add_term(&mut out, t, &s * &c);
        }
    }
    let moved = alg.parity(&a[n]) & alg.tensor_parity(&a[..n]);
    let s = sign((n as u8 + moved) % 2 == 1);
    for (k, c) in alg.mul(&a[n], &a[0]) {
        let mut t = Vec::with_capacity(n);
        t.push(k);
        t.extend_from_slice(&a[1..n]);
        add_term(&mut out, t, &s * &c);
    }
    out
}

/// `m_0`-part: `b_+(a_0|…|a_n) = Σ_{i=0}^{n} (-1)^i a_0|…|a_i|W|a_{i+1}|…|a_n`.
pub fn b_plus<C: Carrier>(alg: &C, a: &[C::Key], normalized: bool) -> Chain<C::Key> {
    let mut out = Chain::new();
    for i in 0..a.len() {
        let s = sign(i % 2 == 1);
        for (w, c) in alg.curvature() {
            if normalized && alg.is_unit(w) {
                continue;
            }
            let mut t = Vec::with_capacity(a.len() + 1);
            t.extend_from_slice(&a[..=i]);
            t.push(w.clone());
            t.extend_from_slice(&a[i + 1..]);
            add_term(&mut out, t, &s * c);
        }
    }
    out
}

/// Full boundary `b = b_- + b_+`.
pub fn boundary<C: Carrier>(alg: &C, a: &[C::Key], normalized: bool) -> Chain<C::Key> {
    let mut out = b_minus(alg, a, normalized);
    for (t, c) in b_plus(alg, a, normalized) {
        add_term(&mut out, t, c);
    }
    out
}

/// Applies a map given on basis tensors to a chain.
pub fn apply<K: Clone + Ord>(chain: &Chain<K>, mut op: impl FnMut(&[K]) -> Chain<K>) -> Chain<K> {
    let mut out = Chain::new();
    for (t, c) in chain {
        for (u, d) in op(t) {
            add_term(&mut out, u, c * &d);
        }
    }
    out
}

/// Whether normalized chains are a faithful model for this carrier.
///
/// Normalization drops the unit part of every inserted `W`, so it is only
/// used when `W` has none.
pub fn prefers_normalized<C: Carrier>(alg: &C) -> bool {
    !alg.curvature_has_unit_part()
}

/// Truncated chain spaces `C_t` for `t ∈ 0..=N`, each at a chosen internal degree.
#[derive(Clone, Debug)]
pub struct ChainWindow<K: Ord + Clone> {
    pub normalized: bool,
    /// Internal degree of the piece kept at each tensor degree (`None` = all).
    pub degrees: Vec<Option<i64>>,
    pub bases: Vec<Basis<Tensor<K>>>,
}

impl<K: Ord + Clone> ChainWindow<K> {
    /// Builds `C_t` for `t ≤ max_t`, keeping the internal degree `degree_of(t)`.
    pub fn build<C: Carrier<Key = K>>(
        alg: &C,
        max_t: usize,
        normalized: bool,
        degree_of: impl Fn(usize) -> Option<i64>,
    ) -> Result<Self> {
        let mut degrees = Vec::new();
        let mut bases = Vec::new();
        for t in 0..=max_t {
            let e = degree_of(t);
            bases.push(Basis::new(alg.tensors(t, e, normalized)?));
            degrees.push(e);
        }
        Ok(ChainWindow {
            normalized,
            degrees,
            bases,
        })
    }

    /// Same internal degree at every tensor degree; closed under `b_-`.
    pub fn at_degree<C: Carrier<Key = K>>(
        alg: &C,
        max_t: usize,
        normalized: bool,
        degree: Option<i64>,
    ) -> Result<Self> {
        Self::build(alg, max_t, normalized, |_| degree)
    }

    /// Internal degree `e0 + d t` at tensor degree `t`; closed under `b_+`.
    pub fn along_curvature<C: Carrier<Key = K>>(
        alg: &C,
        max_t: usize,
        normalized: bool,
        e0: i64,
    ) -> Result<Self> {
        let d = alg.curvature_degree().ok_or(Error::NonHomogeneous)?;
        Self::build(alg, max_t, normalized, |t| Some(e0 + d * t as i64))
    }

    pub fn max_t(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Basis::len).collect()
    }
}

fn strict<K: core::fmt::Debug>(u: &Tensor<K>) -> Result<()> {
    Err(Error::ShapeMismatch(format!(
        "{u:?} lies outside the window"
    )))
}

/// Matrices of `b_-: C_t → C_{t-1}` for `t = 1..=N` (entry `t-1`).
pub fn boundary_minus_matrices<C: Carrier>(
    alg: &C,
    w: &ChainWindow<C::Key>,
) -> Result<Vec<Matrix>> {
    (1..=w.max_t())
        .map(|t| {
            matrix_of(
                &w.bases[t],
                &w.bases[t - 1],
                |a| b_minus(alg, a, w.normalized),
                strict,
            )
        })
        .collect()
}

/// Matrices of `b_+: C_t → C_{t+1}` for `t = 0..N` (entry `t`).
pub fn boundary_plus_matrices<C: Carrier>(alg: &C, w: &ChainWindow<C::Key>) -> Result<Vec<Matrix>> {
    (0..w.max_t())
        .map(|t| {
            matrix_of(
                &w.bases[t],
                &w.bases[t + 1],
                |a| b_plus(alg, a, w.normalized),
                strict,
            )
        })
        .collect()
}

/// Checks `b_+² = 0`, `b_-² = 0` and `b_+b_- + b_-b_+ = 0` on every basis tensor of the window.
///
/// The identities are checked on chains, so no term can escape the window.
pub fn mixed_complex_check<C: Carrier>(alg: &C, w: &ChainWindow<C::Key>) -> Result<bool> {
    let normalized = w.normalized;
    mixed_complex_check_with(alg, w, |a| b_plus(alg, a, normalized))
}

/// [`mixed_complex_check`] with a caller-supplied `b_+`.
pub fn mixed_complex_check_with<C: Carrier>(
    alg: &C,
    w: &ChainWindow<C::Key>,
    mut plus: impl FnMut(&[C::Key]) -> Chain<C::Key>,
) -> Result<bool> {
    if w.max_t() < 2 {
        return Err(Error::WindowTooSmall(
            "mixed complex check needs tensor degrees 0..=2".into(),
        ));
    }
    let normalized = w.normalized;
    let minus = |a: &[C::Key]| b_minus(alg, a, normalized);
    for basis in &w.bases {
        for a in basis.items() {
            let pa = plus(a);
            let ma = minus(a);
            if !apply(&pa, &mut plus).is_empty() || !apply(&ma, minus).is_empty() {
                return Ok(false);
            }
            let mut anti = apply(&ma, &mut plus);
            for (t, c) in apply(&pa, minus) {
                add_term(&mut anti, t, c);
            }
            if !anti.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Contracting homotopy for an algebra whose only operation is `m_0`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    /// `h[k]: C_k → C_{k-1}` for `k = 0..=N` (`h[0]` is the zero map to nothing).
    pub h: Vec<Matrix>,
    /// `b_+: C_k → C_{k+1}` for `k = 0..N`.
    pub b: Vec<Matrix>,
    pub bases: Vec<Basis<Tensor<usize>>>,
}

impl ChainHomotopy {
    /// `h_{k+1} b_k + b_{k-1} h_k = id` on `C_k` for `k < N`.
    pub fn verify(&self) -> Result<bool> {
        let n = self.bases.len() - 1;
        for k in 0..n {
            let mut lhs = self.h[k + 1].mul(&self.b[k])?;
            if k > 0 {
                lhs = lhs.add(&self.b[k - 1].mul(&self.h[k])?)?;
            }
            if lhs != Matrix::identity(self.bases[k].len()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn pure_curvature_functional(
    alg: &FiniteAlgebra,
    functional: &SparseVec,
) -> Result<SparseVec> {
    if !alg.is_product_zero() {
        return Err(Error::InvalidAlgebra("the homotopy needs m_2 = 0".into()));
    }
    let lw = functional.iter().fold(Scalar::zero(), |acc, (i, v)| {
        acc + &(v * &alg.curvature_vec().get(*i).cloned().unwrap_or_default())
    });
    let inv = lw.inv().ok_or(Error::BadFunctional)?;
    let mut l = functional.clone();
    l.scale(&inv);
    Ok(l)
}

/// `h_k(a_0|…|a_k) = (-1)^{k+1} L(a_k) a_0|…|a_{k-1}` with `L` rescaled so `L(W) = 1`.
pub fn vanishing_homotopy(
    alg: &FiniteAlgebra,
    functional: &SparseVec,
    max_t: usize,
) -> Result<ChainHomotopy> {
    let l = pure_curvature_functional(alg, functional)?;
    let window = ChainWindow::at_degree(alg, max_t + 1, false, None)?;
    let bases = window.bases[..=max_t].to_vec();
    let mut h = Vec::new();
    h.push(Matrix::zero(0, bases[0].len()));
    for k in 1..=max_t {
        let hk = matrix_of(
            &bases[k],
            &bases[k - 1],
            |a| {
                let mut out = Chain::new();
                if let Some(v) = l.get(a[k]) {
                    add_term(&mut out, a[..k].to_vec(), &sign(k % 2 == 0) * v);
                }
                out
            },
            strict,
        )?;
        h.push(hk);
    }
    let b = (0..max_t)
        .map(|k| {
            matrix_of(
                &window.bases[k],
                &window.bases[k + 1],
                |a| b_plus(alg, a, false),
                strict,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChainHomotopy { h, b, bases })
}
