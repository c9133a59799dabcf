use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use super::algebra::{Carrier, FiniteAlgebra, PolyCarrier, Tensor};
use super::chains::{b_minus, b_plus, boundary, prefers_normalized};
use super::cochains::CochainLabel;
use crate::error::{Error, Result};
use crate::jacobi::LGModel;
use crate::linalg::{matrix_of, rank, Basis, Matrix};

/// Which Hochschild invariant a report describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variant {
    /// Direct-sum chains.
    Ordinary,
    /// Direct-product chains.
    BorelMoore,
    /// Direct-sum cochains.
    CompactCohomology,
    /// Direct-product cochains.
    OrdinaryCohomology,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Ordinary => "ordinary",
            Variant::BorelMoore => "borel_moore",
            Variant::CompactCohomology => "compact_cohomology",
            Variant::OrdinaryCohomology => "ordinary_cohomology",
        }
    }
}

/// One dimension with the window sizes it was computed on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyEntry {
    pub parity: u8,
    /// Internal degree (or tensor degree for flat ordinary homology).
    pub degree: Option<i64>,
    pub dim: usize,
    /// `(window, dim)` for every window tried.
    pub history: Vec<(usize, usize)>,
    /// First window of the final run of agreeing values.
    pub stabilized_at: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub variant: Variant,
    pub entries: Vec<HomologyEntry>,
}

impl HomologyReport {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.dim).sum()
    }

    /// Total dimension in each parity.
    pub fn parity_totals(&self) -> [usize; 2] {
        let mut t = [0, 0];
        for e in &self.entries {
            t[e.parity as usize & 1] += e.dim;
        }
        t
    }

    pub fn get(&self, parity: u8, degree: Option<i64>) -> Option<usize> {
        self.entries
            .iter()
            .find(|e| e.parity == parity && e.degree == degree)
            .map(|e| e.dim)
    }

    /// Nonzero entries as `(degree, parity, dim)`.
    pub fn support(&self) -> Vec<(Option<i64>, u8, usize)> {
        self.entries
            .iter()
            .filter(|e| e.dim > 0)
            .map(|e| (e.degree, e.parity, e.dim))
            .collect()
    }
}

/// Tensors of one tensor degree.
type Piece = (usize, Vec<Tensor<usize>>);

/// How many consecutive agreeing windows count as stable.
pub const AGREEMENTS: usize = 3;

fn stable_since(history: &[(usize, usize)]) -> Option<usize> {
    if history.len() < AGREEMENTS {
        return None;
    }
    let tail = &history[history.len() - AGREEMENTS..];
    tail.iter().all(|h| h.1 == tail[0].1).then(|| tail[0].0)
}

/// Direct sum of chain pieces together with the tensor degrees it spans.
struct TotalSpace<K: Ord + Clone> {
    basis: Basis<Tensor<K>>,
    ts: BTreeSet<usize>,
}

impl<K: Ord + Clone> TotalSpace<K> {
    fn new(pieces: Vec<(usize, Vec<Tensor<K>>)>) -> Self {
        let ts = pieces.iter().map(|p| p.0).collect();
        TotalSpace {
            basis: Basis::new(pieces.into_iter().flat_map(|p| p.1)),
            ts,
        }
    }
}

/// Matrix of `op` from `from` to `to`; terms in tensor degrees outside `to` are truncated.
fn total_matrix<K: Ord + Clone + core::fmt::Debug>(
    from: &TotalSpace<K>,
    to: &TotalSpace<K>,
    op: impl FnMut(&Tensor<K>) -> BTreeMap<Tensor<K>, crate::scalar::Scalar>,
) -> Result<Matrix> {
    matrix_of(&from.basis, &to.basis, op, |u| {
        if to.ts.contains(&(u.len() - 1)) {
            Err(Error::ShapeMismatch(format!(
                "{u:?} missing from its graded piece"
            )))
        } else {
            Ok(())
        }
    })
}

/// `dim mid - rank(d_out) - rank(d_in)`.
fn middle_homology(d_in: &Matrix, d_out: &Matrix, mid: usize) -> usize {
    mid - rank(d_out) - rank(d_in)
}

/// Options for [`hh_ordinary`].
#[derive(Clone, Copy, Debug)]
pub struct OrdinaryOptions {
    pub min_window: usize,
    pub max_window: usize,
}

impl Default for OrdinaryOptions {
    fn default() -> Self {
        OrdinaryOptions {
            min_window: 2,
            max_window: 10,
        }
    }
}

/// Parity class of a tensor in the 2-periodic total complex.
fn tensor_class<C: Carrier>(alg: &C, a: &[C::Key]) -> u8 {
    (((a.len() - 1) as u8) + alg.tensor_parity(a)) % 2
}

/// Label preserved up to a fixed step by both `b_-` and `b_+`: `2w - d t`.
///
/// Each application of `b` raises it by `d`.
fn drift_label<C: Carrier>(alg: &C, a: &[C::Key], d: Option<i64>) -> i64 {
    match d {
        Some(d) => 2 * alg.tensor_degree(a) - d * (a.len() as i64 - 1),
        None => 0,
    }
}

/// Ordinary Hochschild homology of a finite-dimensional curved algebra via
/// the direct-sum total complex, on growing tensor windows.
///
/// For window `N` the cycles are chains of tensor degree `≤ N` killed by the
/// full differential and the boundaries come from tensor degree `≤ N-1`.
/// With `W = 0` the complex splits by tensor degree and the report lists
/// `HH_t` for `t < N`.
pub fn hh_ordinary(alg: &FiniteAlgebra, opts: OrdinaryOptions) -> Result<HomologyReport> {
    if alg.is_flat() {
        return hh_flat(alg, opts.max_window);
    }
    let normalized = prefers_normalized(alg) && alg.unit().is_some();
    let d = alg.curvature_degree();
    let mut histories: [Vec<(usize, usize)>; 2] = [Vec::new(), Vec::new()];
    for n in opts.min_window..=opts.max_window {
        // bucket tensors of degree ≤ N+1 by (class, label)
        let mut buckets: BTreeMap<(u8, i64), Vec<Piece>> = BTreeMap::new();
        for t in 0..=n + 1 {
            let mut by: BTreeMap<(u8, i64), Vec<Tensor<usize>>> = BTreeMap::new();
            for a in alg.tensors(t, None, normalized)? {
                by.entry((tensor_class(alg, &a), drift_label(alg, &a, d)))
                    .or_default()
                    .push(a);
            }
            for (k, v) in by {
                buckets.entry(k).or_default().push((t, v));
            }
        }
        let step = d.unwrap_or(0);
        let space = |q: u8, l: i64, max_t: usize| -> TotalSpace<usize> {
            let pieces = buckets
                .get(&(q, l))
                .map(|v| v.iter().filter(|p| p.0 <= max_t).cloned().collect())
                .unwrap_or_default();
            let mut s = TotalSpace::new(pieces);
            s.ts = (0..=max_t).collect();
            s
        };
        let mut dims = [0usize; 2];
        let keys: Vec<(u8, i64)> = buckets.keys().copied().collect();
        for (q, l) in keys {
            let mid = space(q, l, n);
            if mid.basis.is_empty() {
                continue;
            }
            let target = space(q ^ 1, l + step, n + 1);
            let source = if n == 0 {
                TotalSpace::new(Vec::new())
            } else {
                space(q ^ 1, l - step, n - 1)
            };
            let d_out = total_matrix(&mid, &target, |a| boundary(alg, a, normalized))?;
            let d_in = total_matrix(&source, &mid, |a| boundary(alg, a, normalized))?;
            dims[q as usize] += middle_homology(&d_in, &d_out, mid.basis.len());
        }
        for q in 0..2 {
            histories[q].push((n, dims[q]));
        }
        if histories.iter().all(|h| stable_since(h).is_some()) {
            break;
        }
    }
    let mut entries = Vec::new();
    for (q, h) in histories.into_iter().enumerate() {
        let stabilized_at = stable_since(&h);
        if stabilized_at.is_none() {
            return Err(Error::NoStabilization(format!(
                "parity {q} dims {:?} up to window {}",
                h.iter().map(|x| x.1).collect::<Vec<_>>(),
                opts.max_window
            )));
        }
        entries.push(HomologyEntry {
            parity: q as u8,
            degree: None,
            dim: h.last().map_or(0, |x| x.1),
            history: h,
            stabilized_at,
        });
    }
    Ok(HomologyReport {
        variant: Variant::Ordinary,
        entries,
    })
}

fn hh_flat(alg: &FiniteAlgebra, max_window: usize) -> Result<HomologyReport> {
    let normalized = alg.unit().is_some();
    // b_- preserves the internal parity s; the total parity is t + s
    let mut spaces: Vec<[Basis<Tensor<usize>>; 2]> = Vec::new();
    for t in 0..=max_window {
        let mut split: [Vec<Tensor<usize>>; 2] = [Vec::new(), Vec::new()];
        for a in alg.tensors(t, None, normalized)? {
            split[alg.tensor_parity(&a) as usize].push(a);
        }
        let [even, odd] = split;
        spaces.push([Basis::new(even), Basis::new(odd)]);
    }
    let strict = |_: &Tensor<usize>| Err(Error::ShapeMismatch("b_- left the window".into()));
    let mut entries = Vec::new();
    for t in 0..max_window {
        for s in 0..2 {
            let mid = &spaces[t][s];
            let d_out = if t == 0 {
                Matrix::zero(0, mid.len())
            } else {
                matrix_of(
                    mid,
                    &spaces[t - 1][s],
                    |a| b_minus(alg, a, normalized),
                    strict,
                )?
            };
            let d_in = matrix_of(
                &spaces[t + 1][s],
                mid,
                |a| b_minus(alg, a, normalized),
                strict,
            )?;
            let dim = middle_homology(&d_in, &d_out, mid.len());
            if s == 1 && mid.is_empty() {
                continue;
            }
            entries.push(HomologyEntry {
                parity: ((t + s) % 2) as u8,
                degree: Some(t as i64),
                dim,
                history: alloc::vec![(max_window, dim)],
                stabilized_at: Some(t + 1),
            });
        }
    }
    Ok(HomologyReport {
        variant: Variant::Ordinary,
        entries,
    })
}

/// Options for [`hh_bm_graded`].
#[derive(Clone, Debug)]
pub struct BorelMooreOptions {
    /// Form-weight labels to compute; empty means `0..=Σ(d - w_i)`.
    pub degrees: Vec<i64>,
    pub max_shift: usize,
}

impl Default for BorelMooreOptions {
    fn default() -> Self {
        BorelMooreOptions {
            degrees: Vec::new(),
            max_shift: 6,
        }
    }
}

/// `tot(BC⁺)_m` at internal degree `e`: columns `i = 0..=⌊m/2⌋` holding
/// normalized `C_{m-2i}` of weight `e - d i`.
fn bc_plus_total(
    alg: &PolyCarrier,
    m: i64,
    e: i64,
    d: i64,
) -> Result<TotalSpace<crate::poly::Monomial>> {
    let mut pieces = Vec::new();
    if m < 0 {
        return Ok(TotalSpace::new(pieces));
    }
    for i in 0..=m / 2 {
        let t = (m - 2 * i) as usize;
        let w = e - d * i;
        let tensors = if w < 0 {
            Vec::new()
        } else {
            alg.tensors(t, Some(w), true)?
        };
        pieces.push((t, tensors));
    }
    Ok(TotalSpace::new(pieces))
}

/// `dim H_m(tot(BC⁺))` at internal degree `e`.
pub fn bc_plus_homology(model: &LGModel, m: i64, e: i64) -> Result<usize> {
    let d = model.require_degree()?;
    let alg = PolyCarrier::new(model);
    let mid = bc_plus_total(&alg, m, e, d)?;
    let target = bc_plus_total(&alg, m - 1, e, d)?;
    let source = bc_plus_total(&alg, m + 1, e, d)?;
    let op = |a: &Tensor<crate::poly::Monomial>| boundary(&alg, a, true);
    let d_out = total_matrix(&mid, &target, op)?;
    let d_in = total_matrix(&source, &mid, op)?;
    Ok(middle_homology(&d_in, &d_out, mid.basis.len()))
}

/// Total degree and internal degree in `tot(BC⁺)` probing parity `p`,
/// form weight `eps` and shift `r`.
pub fn bm_coordinates(n: usize, d: i64, parity: u8, eps: i64, r: usize) -> (i64, i64) {
    let n = n as i64;
    let m = n + i64::from((parity as i64 - n).rem_euclid(2) != 0) + 2 * r as i64;
    let e = eps + d * (m - n).div_euclid(2);
    (m, e)
}

/// Borel-Moore Hochschild homology of `(k[x], W)` per form weight and parity.
///
/// The product total complex is the limit of `tot(BC⁺)[2r]`; each graded
/// piece is computed on normalized chains for `r = 0, 1, …` until
/// [`AGREEMENTS`] consecutive shifts agree. The label of a class is the
/// weight of the differential form it corresponds to, so `ω(W)` classes
/// appear at the degrees reported by [`crate::jacobi::canonical_module`].
pub fn hh_bm_graded(model: &LGModel, opts: &BorelMooreOptions) -> Result<HomologyReport> {
    let d = model.require_degree()?;
    let degrees: Vec<i64> = if opts.degrees.is_empty() {
        let top: i64 = model.ring().weights().iter().map(|&w| d - w as i64).sum();
        (0..=top).collect()
    } else {
        opts.degrees.clone()
    };
    let mut entries = Vec::new();
    for &eps in &degrees {
        for parity in 0..2u8 {
            entries.push(bm_entry(model, d, parity, eps, opts.max_shift)?);
        }
    }
    Ok(HomologyReport {
        variant: Variant::BorelMoore,
        entries,
    })
}

/// One `(form weight, parity)` entry of [`hh_bm_graded`].
pub fn bm_entry(
    model: &LGModel,
    d: i64,
    parity: u8,
    eps: i64,
    max_shift: usize,
) -> Result<HomologyEntry> {
    let mut history = Vec::new();
    for r in 0..max_shift.max(AGREEMENTS) {
        let (m, e) = bm_coordinates(model.nvars(), d, parity, eps, r);
        history.push((r, bc_plus_homology(model, m, e)?));
        if let Some(s) = stable_since(&history) {
            return Ok(HomologyEntry {
                parity,
                degree: Some(eps),
                dim: history.last().unwrap().1,
                history,
                stabilized_at: Some(s),
            });
        }
    }
    Err(Error::NoStabilization(format!(
        "weight {eps}, parity {parity}: dims {:?}",
        history.iter().map(|h| h.1).collect::<Vec<_>>()
    )))
}

/// Grid `BC_{i,j} = C_{j-i}` over `0 ≤ i ≤ I`, `i ≤ j ≤ i + T`, at a fixed
/// internal label, with `b_+` horizontal and `b_-` vertical.
#[derive(Clone, Debug)]
pub struct BicomplexWindow<K: Ord + Clone> {
    pub columns: usize,
    pub height: usize,
    /// Piece at `(i, j)`: weight `e - d i` in tensor degree `j - i`.
    pub cells: BTreeMap<(usize, usize), Basis<Tensor<K>>>,
    pub normalized: bool,
}

impl<K: Ord + Clone + core::fmt::Debug> BicomplexWindow<K> {
    pub fn build<C: Carrier<Key = K>>(
        alg: &C,
        e: Option<i64>,
        columns: usize,
        height: usize,
    ) -> Result<Self> {
        let normalized = prefers_normalized(alg);
        let d = alg.curvature_degree().unwrap_or(0);
        let mut cells = BTreeMap::new();
        for i in 0..=columns {
            for t in 0..=height {
                let w = e.map(|e| e - d * i as i64);
                cells.insert((i, i + t), Basis::new(alg.tensors(t, w, normalized)?));
            }
        }
        Ok(BicomplexWindow {
            columns,
            height,
            cells,
            normalized,
        })
    }

    /// `b_+ : (i, j) → (i-1, j)` if both cells are in the window.
    pub fn horizontal<C: Carrier<Key = K>>(
        &self,
        alg: &C,
        i: usize,
        j: usize,
    ) -> Option<Result<Matrix>> {
        let from = self.cells.get(&(i, j))?;
        let to = self.cells.get(&(i.checked_sub(1)?, j))?;
        let strict = |_: &Tensor<K>| Err(Error::ShapeMismatch("b_+ left its cell".into()));
        Some(matrix_of(
            from,
            to,
            |a| b_plus(alg, a, self.normalized),
            strict,
        ))
    }

    /// `b_- : (i, j) → (i, j-1)` if both cells are in the window.
    pub fn vertical<C: Carrier<Key = K>>(
        &self,
        alg: &C,
        i: usize,
        j: usize,
    ) -> Option<Result<Matrix>> {
        let from = self.cells.get(&(i, j))?;
        let to = self.cells.get(&(i, j.checked_sub(1)?))?;
        let strict = |_: &Tensor<K>| Err(Error::ShapeMismatch("b_- left its cell".into()));
        Some(matrix_of(
            from,
            to,
            |a| b_minus(alg, a, self.normalized),
            strict,
        ))
    }

    /// `h² = 0`, `v² = 0` and `hv + vh = 0` wherever all maps stay in the window.
    pub fn check<C: Carrier<Key = K>>(&self, alg: &C) -> Result<bool> {
        for &(i, j) in self.cells.keys() {
            if i >= 2 {
                if let (Some(a), Some(b)) =
                    (self.horizontal(alg, i, j), self.horizontal(alg, i - 1, j))
                {
                    if !b?.mul(&a?)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            if j >= 2 {
                if let (Some(a), Some(b)) = (self.vertical(alg, i, j), self.vertical(alg, i, j - 1))
                {
                    if !b?.mul(&a?)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            if i >= 1 && j >= 1 {
                let hv = self.vertical(alg, i, j).zip(self.horizontal(alg, i, j - 1));
                let vh = self.horizontal(alg, i, j).zip(self.vertical(alg, i - 1, j));
                if let (Some((v1, h1)), Some((h2, v2))) = (hv, vh) {
                    let sum = h1?.mul(&v1?)?.add(&v2?.mul(&h2?)?)?;
                    if !sum.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Dimension of the `b_-`-homology at `(i, j)` (the `E¹` term).
    pub fn vertical_homology<C: Carrier<Key = K>>(
        &self,
        alg: &C,
        i: usize,
        j: usize,
    ) -> Option<Result<usize>> {
        let mid = self.cells.get(&(i, j))?;
        self.cells.get(&(i, j + 1))?;
        let out = match self.vertical(alg, i, j) {
            Some(m) => m,
            None => Ok(Matrix::zero(0, mid.len())),
        };
        let inn = self.vertical(alg, i, j + 1)?;
        Some(out.and_then(|o| inn.map(|n| middle_homology(&n, &o, mid.len()))))
    }
}

/// Outcome of [`compact_type_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactTypeReport {
    pub min_degree: i64,
    pub window: usize,
    /// `(k, HH^k, HH^k_c)` with `HH` from truncated products and `HH_c` from sums.
    pub dims: Vec<(i64, usize, usize)>,
    /// Cochain components violating `i ≤ k + 1 - M`, as `(k, i)`.
    pub bound_violations: Vec<(i64, usize)>,
}

impl CompactTypeReport {
    pub fn passes(&self) -> bool {
        self.bound_violations.is_empty() && self.dims.iter().all(|&(_, a, b)| a == b)
    }

    pub fn report(&self, variant: Variant) -> HomologyReport {
        let entries = self
            .dims
            .iter()
            .map(|&(k, prod, sum)| {
                let dim = if variant == Variant::CompactCohomology {
                    sum
                } else {
                    prod
                };
                HomologyEntry {
                    parity: k.rem_euclid(2) as u8,
                    degree: Some(k),
                    dim,
                    history: alloc::vec![(self.window, dim)],
                    stabilized_at: Some(self.window),
                }
            })
            .collect();
        HomologyReport { variant, entries }
    }
}

/// Compares Hochschild cohomology computed from direct-product and
/// direct-sum cochains of a flat `ℤ`-graded algebra in non-positive degrees,
/// per cochain degree `k = i + j - 1` (arity `i`, map degree `j`).
///
/// Cochains of arity `≤ N` are used; `N` must exceed `k + 1 - M` for every
/// requested `k` so that no component is cut off.
pub fn compact_type_check(
    alg: &FiniteAlgebra,
    degrees: core::ops::RangeInclusive<i64>,
    max_arity: usize,
) -> Result<CompactTypeReport> {
    if alg.max_degree() > 0 {
        return Err(Error::PositiveDegreeCarrier);
    }
    if !alg.is_flat() {
        return Err(Error::InvalidAlgebra(
            "a carrier in non-positive degrees admits no curvature of degree 2".into(),
        ));
    }
    let m = alg.min_degree();
    let needed = degrees.end() + 2 - m;
    if (max_arity as i64) < needed {
        return Err(Error::WindowTooSmall(format!(
            "arity window {max_arity} below {needed}"
        )));
    }
    let normalized = alg.unit().is_some();
    let piece = |i: usize, k: i64| alg.cochain_basis(i, normalized, Some(k));
    let space = |k: i64, max_i: usize| -> Basis<CochainLabel> {
        Basis::new((0..=max_i).flat_map(|i| piece(i, k)))
    };
    let mut bound_violations = Vec::new();
    let mut dims = Vec::new();
    for k in degrees {
        for i in 0..=max_arity {
            if (i as i64) > k + 1 - m && !piece(i, k).is_empty() {
                bound_violations.push((k, i));
            }
        }
        let mid = space(k, max_arity);
        let d = |l: &CochainLabel| alg.cochain_diff(l, normalized);
        let drop = |_: &CochainLabel| Ok(());
        let strict =
            |_: &CochainLabel| Err(Error::ShapeMismatch("cochain outside the window".into()));
        // direct sum: full δ out of arity ≤ N, boundaries from arity ≤ N-1
        let sum_out = matrix_of(&mid, &space(k + 1, max_arity + 1), d, strict)?;
        let below = match max_arity.checked_sub(1) {
            Some(n) => space(k - 1, n),
            None => Basis::new(Vec::new()),
        };
        let sum_in = matrix_of(&below, &mid, d, strict)?;
        // product: quotient by arity > N
        let prod_out = matrix_of(&mid, &space(k + 1, max_arity), d, drop)?;
        let prod_in = matrix_of(&space(k - 1, max_arity), &mid, d, drop)?;
        dims.push((
            k,
            middle_homology(&prod_in, &prod_out, mid.len()),
            middle_homology(&sum_in, &sum_out, mid.len()),
        ));
    }
    Ok(CompactTypeReport {
        min_degree: m,
        window: max_arity,
        dims,
        bound_violations,
    })
}
