use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::algebra::{sign, Carrier, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{matrix_of, Basis, Matrix, SparseVec};
use crate::scalar::Scalar;

/// Basis cochain sending `e_{inputs}` to `e_output` and other basis tensors to 0.
pub type CochainLabel = (Vec<usize>, usize);

/// Finite linear combination of basis cochains.
pub type Cochain = BTreeMap<CochainLabel, Scalar>;

fn add(out: &mut Cochain, label: CochainLabel, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let slot = out.entry(label.clone()).or_default();
    *slot += &c;
    if slot.is_zero() {
        out.remove(&label);
    }
}

impl FiniteAlgebra {
    /// Map degree `|out| - Σ|in|` of a basis cochain.
    pub fn map_degree(&self, (ins, out): &CochainLabel) -> i64 {
        self.degree(out) - self.tensor_degree(ins)
    }

    /// Cochain degree `i + j - 1` for arity `i` and map degree `j`.
    pub fn cochain_degree(&self, label: &CochainLabel) -> i64 {
        label.0.len() as i64 + self.map_degree(label) - 1
    }

    fn cochain_parity(&self, (ins, out): &CochainLabel) -> u8 {
        self.parity(out) ^ self.tensor_parity(ins)
    }

    /// Basis cochains of the given arity, optionally at one cochain degree.
    pub fn cochain_basis(
        &self,
        arity: usize,
        normalized: bool,
        degree: Option<i64>,
    ) -> Vec<CochainLabel> {
        let slots = self.slot_labels(normalized);
        let mut inputs: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        for _ in 0..arity {
            inputs = inputs
                .into_iter()
                .flat_map(|t| {
                    slots.iter().map(move |&s| {
                        let mut u = t.clone();
                        u.push(s);
                        u
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for ins in inputs {
            for o in 0..self.dim() {
                let label = (ins.clone(), o);
                if degree.is_none_or(|k| self.cochain_degree(&label) == k) {
                    out.push(label);
                }
            }
        }
        out
    }

    /// Pairs `(x, y, c)` of slot labels with `c` the coefficient of `e_z` in `x y`.
    fn factorizations(&self, normalized: bool) -> Vec<Vec<(usize, usize, Scalar)>> {
        let slots = self.slot_labels(normalized);
        let mut f = alloc::vec![Vec::new(); self.dim()];
        for &x in &slots {
            for &y in &slots {
                for (z, c) in self.mul(&x, &y) {
                    f[z].push((x, y, c));
                }
            }
        }
        f
    }

    /// `m_2`-part of the Hochschild differential on a basis cochain `φ` of arity `i`:
    ///
    /// `(δφ)(a_1,…,a_{i+1}) = (-1)^{|a_1||φ|} a_1 φ(a_2,…) + Σ_j (-1)^j φ(…, a_j a_{j+1}, …)
    ///  + (-1)^{i+1} φ(a_1,…,a_i) a_{i+1}`.
    pub fn delta_two(&self, phi: &CochainLabel, normalized: bool) -> Cochain {
        self.delta_two_with(phi, normalized, &self.factorizations(normalized))
    }

    fn delta_two_with(
        &self,
        phi: &CochainLabel,
        normalized: bool,
        fact: &[Vec<(usize, usize, Scalar)>],
    ) -> Cochain {
        let (ins, out) = phi;
        let i = ins.len();
        let p_phi = self.cochain_parity(phi);
        let mut res = Cochain::new();
        for a in self.slot_labels(normalized) {
            let s = sign(self.parity(&a) & p_phi == 1);
            let mut new_ins = Vec::with_capacity(i + 1);
            new_ins.push(a);
            new_ins.extend_from_slice(ins);
            for (k, c) in self.mul(&a, out) {
                add(&mut res, (new_ins.clone(), k), &s * &c);
            }
            let s = sign((i + 1) % 2 == 1);
            let mut new_ins = ins.clone();
            new_ins.push(a);
            for (k, c) in self.mul(out, &a) {
                add(&mut res, (new_ins.clone(), k), &s * &c);
            }
        }
        for j in 1..=i {
            let s = sign(j % 2 == 1);
            for (x, y, c) in &fact[ins[j - 1]] {
                let mut new_ins = Vec::with_capacity(i + 1);
                new_ins.extend_from_slice(&ins[..j - 1]);
                new_ins.push(*x);
                new_ins.push(*y);
                new_ins.extend_from_slice(&ins[j..]);
                add(&mut res, (new_ins, *out), &s * c);
            }
        }
        res
    }

    /// `m_0`-part: `(δ_0 φ)(a_1,…,a_{i-1}) = Σ_{j=0}^{i-1} (-1)^j φ(a_1,…,a_j, W, a_{j+1},…)`.
    ///
    /// On normalized cochains the unit part of `W` contributes nothing.
    pub fn delta_zero(&self, phi: &CochainLabel) -> Cochain {
        let (ins, out) = phi;
        let w = self.curvature_vec();
        let mut res = Cochain::new();
        for j in 0..ins.len() {
            if let Some(c) = w.get(ins[j]) {
                let mut new_ins = ins.clone();
                new_ins.remove(j);
                add(&mut res, (new_ins, *out), &sign(j % 2 == 1) * c);
            }
        }
        res
    }

    /// Full differential `δ = δ_2 + δ_0` on a basis cochain.
    pub fn cochain_diff(&self, phi: &CochainLabel, normalized: bool) -> Cochain {
        let mut res = self.delta_two(phi, normalized);
        for (l, c) in self.delta_zero(phi) {
            add(&mut res, l, c);
        }
        res
    }

    /// Extends a map on basis cochains linearly.
    pub fn apply_cochain(
        &self,
        phi: &Cochain,
        mut op: impl FnMut(&CochainLabel) -> Cochain,
    ) -> Cochain {
        let mut res = Cochain::new();
        for (l, c) in phi {
            for (m, d) in op(l) {
                add(&mut res, m, c * &d);
            }
        }
        res
    }
}

/// Cochain spaces `Hom(A^{⊗i}, A)` for arities `0..=N`.
#[derive(Clone, Debug)]
pub struct CochainWindow {
    pub normalized: bool,
    pub bases: Vec<Basis<CochainLabel>>,
}

impl CochainWindow {
    pub fn build(
        alg: &FiniteAlgebra,
        max_arity: usize,
        normalized: bool,
        degree_of: impl Fn(usize) -> Option<i64>,
    ) -> Self {
        let bases = (0..=max_arity)
            .map(|i| Basis::new(alg.cochain_basis(i, normalized, degree_of(i))))
            .collect();
        CochainWindow { normalized, bases }
    }

    pub fn max_arity(&self) -> usize {
        self.bases.len() - 1
    }
}

/// Matrices of the cochain differential on a window.
#[derive(Clone, Debug)]
pub struct CochainDiff {
    /// `δ_2: C^i → C^{i+1}` for `i < N`.
    pub up: Vec<Matrix>,
    /// `δ_0: C^i → C^{i-1}` for `1 ≤ i ≤ N` (entry `i-1`).
    pub down: Vec<Matrix>,
}

/// Matrices of `δ` on a window over all cochain degrees.
pub fn cochain_diff_matrices(alg: &FiniteAlgebra, w: &CochainWindow) -> Result<CochainDiff> {
    let fact = alg.factorizations(w.normalized);
    let strict = |_: &CochainLabel| Err(Error::ShapeMismatch("cochain outside the window".into()));
    let up = (0..w.max_arity())
        .map(|i| {
            matrix_of(
                &w.bases[i],
                &w.bases[i + 1],
                |l| alg.delta_two_with(l, w.normalized, &fact),
                strict,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let down = (1..=w.max_arity())
        .map(|i| matrix_of(&w.bases[i], &w.bases[i - 1], |l| alg.delta_zero(l), strict))
        .collect::<Result<Vec<_>>>()?;
    Ok(CochainDiff { up, down })
}

/// `δ∘δ = 0` on every basis cochain of arity `≤ N`.
pub fn cochain_square_check(alg: &FiniteAlgebra, max_arity: usize, normalized: bool) -> bool {
    let fact = alg.factorizations(normalized);
    let d = |l: &CochainLabel| {
        let mut res = alg.delta_two_with(l, normalized, &fact);
        for (m, c) in alg.delta_zero(l) {
            add(&mut res, m, c);
        }
        res
    };
    (0..=max_arity).all(|i| {
        alg.cochain_basis(i, normalized, None).iter().all(|l| {
            let once = d(l);
            alg.apply_cochain(&once, d).is_empty()
        })
    })
}

/// Cochain-side contracting homotopy `(hφ)(a_1,…) = L(a_1) φ(a_2,…)` for
/// pure-curvature algebras.
#[derive(Clone, Debug)]
pub struct CochainHomotopy {
    /// `h: C^i → C^{i+1}` for `i < N`.
    pub h: Vec<Matrix>,
    /// `δ: C^i → C^{i-1}` for `1 ≤ i ≤ N` (entry `i-1`).
    pub d: Vec<Matrix>,
    pub bases: Vec<Basis<CochainLabel>>,
}

impl CochainHomotopy {
    /// `δ h + h δ = id` on `C^i` for `i < N`.
    pub fn verify(&self) -> Result<bool> {
        let n = self.bases.len() - 1;
        for i in 0..n {
            let mut lhs = self.d[i].mul(&self.h[i])?;
            if i > 0 {
                lhs = lhs.add(&self.h[i - 1].mul(&self.d[i - 1])?)?;
            }
            if lhs != Matrix::identity(self.bases[i].len()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn cochain_vanishing_homotopy(
    alg: &FiniteAlgebra,
    functional: &SparseVec,
    max_arity: usize,
) -> Result<CochainHomotopy> {
    let l = super::chains::pure_curvature_functional(alg, functional)?;
    let w = CochainWindow::build(alg, max_arity, false, |_| None);
    let strict = |_: &CochainLabel| Err(Error::ShapeMismatch("cochain outside the window".into()));
    let h = (0..max_arity)
        .map(|i| {
            matrix_of(
                &w.bases[i],
                &w.bases[i + 1],
                |(ins, out)| {
                    let mut res = Cochain::new();
                    for (a, c) in l.iter() {
                        let mut new_ins = Vec::with_capacity(ins.len() + 1);
                        new_ins.push(*a);
                        new_ins.extend_from_slice(ins);
                        add(&mut res, (new_ins, *out), c.clone());
                    }
                    res
                },
                strict,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let d = cochain_diff_matrices(alg, &w)?.down;
    Ok(CochainHomotopy {
        h,
        d,
        bases: w.bases,
    })
}
