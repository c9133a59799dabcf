//! Differential forms, polyvector fields, the HKR splitting map and the
//! Koszul complexes `(Ω^•, dW∧)` and `(Λ^• Der, ⌟dW)`.
//!
//! Sign conventions: `dx_I` and `∂_I` are ordered by variable index.
//! `dW ∧ (a dx_I) = Σ_i ∂_iW·a dx_i ∧ dx_I`, and contraction removes a
//! vector from the left: `ι_{dW}(∂_{i_1} ∧ … ∧ ∂_{i_p}) = Σ_r (-1)^{r-1} ∂_{i_r}W ∂_{I∖i_r}`,
//! so `ι_{d(xy)}(∂_x ∧ ∂_y) = y ∂_y − x ∂_x`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::hoch::{b_minus, Chain, ChainWindow, PolyCarrier};
use crate::jacobi::{has_isolated_critical_points, LGModel};
use crate::linalg::{matrix_of, rank, Basis, Matrix};
use crate::poly::{monomials_of_degree, DimensionSeries, Monomial, PolyRing, Polynomial};
use crate::scalar::Scalar;

/// `(coefficient monomial, strictly increasing index set)`.
pub type WedgeLabel = (Monomial, Vec<usize>);

/// Inserts `i` into the sorted set `set`; returns the sign of moving it past
/// the smaller indices, or `None` if `i` is already present.
fn insert_index(set: &[usize], i: usize) -> Option<(bool, Vec<usize>)> {
    let pos = match set.binary_search(&i) {
        Ok(_) => return None,
        Err(p) => p,
    };
    let mut out = set.to_vec();
    out.insert(pos, i);
    Some((pos % 2 == 1, out))
}

macro_rules! wedge_type {
    ($name:ident, $symbol:literal, $op:tt) => {
        #[derive(Clone, Debug, PartialEq, Eq)]
        pub struct $name {
            ring: Arc<PolyRing>,
            terms: BTreeMap<WedgeLabel, Scalar>,
        }

        impl $name {
            pub fn zero(ring: &Arc<PolyRing>) -> Self {
                Self {
                    ring: ring.clone(),
                    terms: BTreeMap::new(),
                }
            }

            /// `p · d_I` with `indices` in any order (sorted with sign).
            pub fn from_poly(p: &Polynomial, indices: &[usize]) -> Self {
                let mut set: Vec<usize> = Vec::new();
                let mut negative = false;
                for &i in indices {
                    match insert_index(&set, i) {
                        None => return Self::zero(p.ring()),
                        Some((s, next)) => {
                            // `i` arrives on the right, so it passes the larger indices
                            negative ^= s ^ (set.len() % 2 == 1);
                            set = next;
                        }
                    }
                }
                let mut out = Self::zero(p.ring());
                let c = if negative { Scalar::integer(-1) } else { Scalar::one() };
                for (m, v) in p.terms() {
                    out.add_term((m.clone(), set.clone()), &(v * &c));
                }
                out
            }

            pub fn ring(&self) -> &Arc<PolyRing> {
                &self.ring
            }

            pub fn terms(&self) -> impl Iterator<Item = (&WedgeLabel, &Scalar)> {
                self.terms.iter()
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn add_term(&mut self, label: WedgeLabel, c: &Scalar) {
                if c.is_zero() {
                    return;
                }
                let slot = self.terms.entry(label.clone()).or_default();
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&label);
                }
            }

            pub fn add(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (l, c) in &other.terms {
                    out.add_term(l.clone(), c);
                }
                out
            }

            pub fn scaled(&self, c: &Scalar) -> Self {
                let mut out = Self::zero(&self.ring);
                for (l, v) in &self.terms {
                    out.add_term(l.clone(), &(v * c));
                }
                out
            }

            /// Wedge degree if all terms agree.
            pub fn degree(&self) -> Option<usize> {
                let mut it = self.terms.keys().map(|l| l.1.len());
                let first = it.next()?;
                it.all(|p| p == first).then_some(first)
            }

            /// Internal weight of a basis element.
            pub fn label_weight(ring: &PolyRing, (m, set): &WedgeLabel) -> i64 {
                let w: i64 = set.iter().map(|&i| ring.weights()[i] as i64).sum();
                ring.monomial_degree(m) $op w
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.terms.is_empty() {
                    return f.write_str("0");
                }
                // group by index set, coefficient polynomial first
                let mut groups: BTreeMap<&Vec<usize>, Polynomial> = BTreeMap::new();
                for ((m, set), c) in &self.terms {
                    groups
                        .entry(set)
                        .or_insert_with(|| Polynomial::zero(&self.ring))
                        .add_term(m.clone(), c);
                }
                let mut first = true;
                for (set, p) in groups {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    let symbol: String = set
                        .iter()
                        .map(|&i| alloc::format!("{}{}", $symbol, self.ring.vars()[i]))
                        .collect::<Vec<_>>()
                        .join("∧");
                    if set.is_empty() {
                        write!(f, "{p}")?;
                    } else if p.num_terms() == 1 && p.is_constant() && p.coefficient(&Monomial::one(self.ring.nvars())).is_one() {
                        f.write_str(&symbol)?;
                    } else {
                        write!(f, "({p}) {symbol}")?;
                    }
                }
                Ok(())
            }
        }
    };
}

wedge_type!(Form, "d", +);
wedge_type!(Polyvector, "∂", -);

/// Basis of `Ω^p` in one weight, where `dx_i` has weight `w_i`.
pub fn forms_basis(ring: &PolyRing, p: usize, weight: i64) -> Vec<WedgeLabel> {
    wedge_basis(ring, p, |w_i| weight - w_i)
}

/// Basis of `Λ^p Der` in one weight, where `∂_i` has weight `-w_i`.
pub fn polyvector_basis(ring: &PolyRing, p: usize, weight: i64) -> Vec<WedgeLabel> {
    wedge_basis(ring, p, |w_i| weight + w_i)
}

fn wedge_basis(ring: &PolyRing, p: usize, coeff_degree: impl Fn(i64) -> i64) -> Vec<WedgeLabel> {
    let mut out = Vec::new();
    for set in subsets(ring.nvars(), p) {
        let w_i: i64 = set.iter().map(|&i| ring.weights()[i] as i64).sum();
        for m in monomials_of_degree(ring.weights(), coeff_degree(w_i)) {
            out.push((m, set.clone()));
        }
    }
    out
}

/// Strictly increasing `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    go(0, n, p, &mut cur, &mut out);
    out
}

/// `dW ∧ α` on a basis element.
fn wedge_dw_label(grad: &[Polynomial], (m, set): &WedgeLabel) -> BTreeMap<WedgeLabel, Scalar> {
    let mut out: BTreeMap<WedgeLabel, Scalar> = BTreeMap::new();
    for (i, g) in grad.iter().enumerate() {
        let Some((neg, next)) = insert_index(set, i) else {
            continue;
        };
        for (n, c) in g.terms() {
            let key = (n.mul(m), next.clone());
            let v = if neg { -c } else { c.clone() };
            let slot = out.entry(key.clone()).or_default();
            *slot += &v;
            if slot.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

/// `ι_{dW}` on a basis polyvector.
fn contract_dw_label(grad: &[Polynomial], (m, set): &WedgeLabel) -> BTreeMap<WedgeLabel, Scalar> {
    let mut out: BTreeMap<WedgeLabel, Scalar> = BTreeMap::new();
    for (r, &i) in set.iter().enumerate() {
        let mut rest = set.clone();
        rest.remove(r);
        for (n, c) in grad[i].terms() {
            let key = (n.mul(m), rest.clone());
            let v = if r % 2 == 1 { -c } else { c.clone() };
            let slot = out.entry(key.clone()).or_default();
            *slot += &v;
            if slot.is_zero() {
                out.remove(&key);
            }
        }
    }
    out
}

/// `α ↦ dW ∧ α`.
pub fn wedge_dw(model: &LGModel, form: &Form) -> Form {
    let grad = model.gradient();
    let mut out = Form::zero(form.ring());
    for (l, c) in form.terms() {
        for (k, v) in wedge_dw_label(&grad, l) {
            out.add_term(k, &(c * &v));
        }
    }
    out
}

/// `ξ ↦ ι_{dW} ξ`.
pub fn contract_dw(model: &LGModel, vector: &Polyvector) -> Polyvector {
    let grad = model.gradient();
    let mut out = Polyvector::zero(vector.ring());
    for (l, c) in vector.terms() {
        for (k, v) in contract_dw_label(&grad, l) {
            out.add_term(k, &(c * &v));
        }
    }
    out
}

/// `d` of a monomial as a one-form.
pub fn differential(ring: &Arc<PolyRing>, m: &Monomial) -> Form {
    let p = Polynomial::term(ring, m.clone(), Scalar::one());
    let mut out = Form::zero(ring);
    for i in 0..ring.nvars() {
        out = out.add(&Form::from_poly(&p.derivative(i), &[i]));
    }
    out
}

/// `α ∧ β`.
pub fn wedge(a: &Form, b: &Form) -> Form {
    let mut out = Form::zero(a.ring());
    for ((m, s), c) in a.terms() {
        for ((n, t), d) in b.terms() {
            let mut set = s.clone();
            let mut negative = false;
            let mut ok = true;
            for &j in t {
                match insert_index(&set, j) {
                    None => {
                        ok = false;
                        break;
                    }
                    Some((_, next)) => {
                        // number of entries of `set` larger than j
                        let larger = set.iter().filter(|&&x| x > j).count();
                        negative ^= larger % 2 == 1;
                        set = next;
                    }
                }
            }
            if ok {
                let v = c * d;
                out.add_term((m.mul(n), set), &if negative { -v } else { v });
            }
        }
    }
    out
}

/// HKR splitting `e_k(a_0|…|a_k) = (1/k!) a_0 da_1 ∧ … ∧ da_k`.
pub fn hkr_split(ring: &Arc<PolyRing>, tensor: &[Monomial]) -> Result<Form> {
    let Some(k) = tensor.len().checked_sub(1) else {
        return Ok(Form::zero(ring));
    };
    let field = ring.field();
    let p = field.characteristic();
    if p != 0 && p as usize <= k {
        return Err(Error::CharacteristicTooSmall {
            characteristic: p,
            k,
        });
    }
    let mut acc = Form::from_poly(
        &Polynomial::term(ring, tensor[0].clone(), Scalar::one()),
        &[],
    );
    for a in &tensor[1..] {
        acc = wedge(&acc, &differential(ring, a));
    }
    let fact = (1..=k as i64).fold(Scalar::one(), |f, i| &f * &Scalar::integer(i));
    Ok(acc.scaled(&field.embed(&fact.inv().expect("k! is a unit"))?))
}

/// [`hkr_split`] extended linearly over a chain of one tensor degree.
pub fn hkr_split_chain(ring: &Arc<PolyRing>, chain: &Chain<Monomial>) -> Result<Form> {
    let mut out = Form::zero(ring);
    for (t, c) in chain {
        out = out.add(&hkr_split(ring, t)?.scaled(c));
    }
    Ok(out)
}

/// Direction of a Koszul complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `Ω^0 → Ω^1 → … → Ω^n`, spot `p` = form degree.
    Wedge,
    /// `Λ^n → … → Λ^0`, spot `p` = polyvector degree.
    Contract,
}

/// Graded cohomology of one Koszul complex, spot by spot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulRow {
    pub direction: Direction,
    /// `spots[p]` = cohomology at spot `p`, by weight.
    pub spots: Vec<DimensionSeries>,
    /// Largest weight inspected.
    pub degree_bound: i64,
    pub isolated: bool,
}

impl KoszulRow {
    pub fn totals(&self) -> Vec<usize> {
        self.spots.iter().map(DimensionSeries::total).collect()
    }

    /// Cohomology vanishes away from the spot where the Jacobi data lives.
    pub fn is_concentrated(&self) -> bool {
        let keep = match self.direction {
            Direction::Wedge => self.spots.len() - 1,
            Direction::Contract => 0,
        };
        self.spots
            .iter()
            .enumerate()
            .all(|(p, s)| p == keep || s.total() == 0)
    }
}

fn koszul_basis(ring: &PolyRing, dir: Direction, p: usize, weight: i64) -> Basis<WedgeLabel> {
    Basis::new(match dir {
        Direction::Wedge => forms_basis(ring, p, weight),
        Direction::Contract => polyvector_basis(ring, p, weight),
    })
}

/// Matrix of the Koszul differential leaving spot `p` at weight `e`.
fn koszul_matrix(
    model: &LGModel,
    grad: &[Polynomial],
    dir: Direction,
    p: usize,
    e: i64,
) -> Result<Matrix> {
    let ring = model.ring();
    let d = model.require_degree()?;
    let n = ring.nvars();
    let from = koszul_basis(ring, dir, p, e);
    let strict = |_: &WedgeLabel| {
        Err(Error::ShapeMismatch(
            "Koszul target outside its weight".into(),
        ))
    };
    match dir {
        Direction::Wedge if p < n => matrix_of(
            &from,
            &koszul_basis(ring, dir, p + 1, e + d),
            |l| wedge_dw_label(grad, l),
            strict,
        ),
        Direction::Contract if p > 0 => matrix_of(
            &from,
            &koszul_basis(ring, dir, p - 1, e + d),
            |l| contract_dw_label(grad, l),
            strict,
        ),
        _ => Ok(Matrix::zero(0, from.len())),
    }
}

/// Cohomology of the Koszul complex per spot, for weights in
/// `[lowest, degree_bound]`.
///
/// Non-isolated models still get dimensions (truncated at the bound) with
/// `isolated = false`.
pub fn koszul_cohomology_dims(
    model: &LGModel,
    dir: Direction,
    degree_bound: Option<i64>,
) -> Result<KoszulRow> {
    let d = model.require_degree()?;
    let ring = model.ring();
    let n = ring.nvars();
    let wsum: i64 = ring.weights().iter().map(|&w| w as i64).sum();
    let bound = degree_bound.unwrap_or(n as i64 * d);
    let lowest = match dir {
        Direction::Wedge => 0,
        Direction::Contract => -wsum,
    };
    let grad = model.gradient();
    let mut spots = Vec::new();
    for p in 0..=n {
        let mut dims = BTreeMap::new();
        for e in lowest..=bound {
            let size = koszul_basis(ring, dir, p, e).len();
            if size == 0 {
                continue;
            }
            let out = koszul_matrix(model, &grad, dir, p, e)?;
            let inn = match dir {
                Direction::Wedge if p > 0 => Some(koszul_matrix(model, &grad, dir, p - 1, e - d)?),
                Direction::Contract if p < n => {
                    Some(koszul_matrix(model, &grad, dir, p + 1, e - d)?)
                }
                _ => None,
            };
            let h = size - rank(&out) - inn.as_ref().map_or(0, rank);
            if h > 0 {
                dims.insert(e, h);
            }
        }
        spots.push(DimensionSeries { dims });
    }
    Ok(KoszulRow {
        direction: dir,
        spots,
        degree_bound: bound,
        isolated: has_isolated_critical_points(model)?,
    })
}

/// One entry of a spectral page.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PageEntry {
    Finite(usize),
    /// Infinite-dimensional; dimensions listed up to `degree_cap`.
    Truncated {
        dims: DimensionSeries,
        degree_cap: i64,
    },
}

impl PageEntry {
    pub fn finite(&self) -> Option<usize> {
        match self {
            PageEntry::Finite(n) => Some(*n),
            PageEntry::Truncated { .. } => None,
        }
    }
}

/// Page of the column spectral sequence of `BC⁺` over a window of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub page: u8,
    pub nvars: usize,
    pub columns: usize,
    pub entries: BTreeMap<(usize, usize), PageEntry>,
}

impl SpectralPage {
    pub fn get(&self, i: usize, j: usize) -> Option<&PageEntry> {
        self.entries.get(&(i, j))
    }

    /// Positions with nonzero finite entries off column 0.
    pub fn interior_support(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|(&(i, _), e)| i > 0 && e.finite() != Some(0))
            .map(|(&k, _)| k)
            .collect()
    }
}

/// `E²` of `BC⁺` for isolated homogeneous `W`.
///
/// `E¹_{ij} = Ω^{j-i}` (HKR) with `d¹ = dW∧` from column `i` to `i-1`.
/// Column 0 receives but does not emit `d¹`, so `E²_{0j} = Ω^j / dW∧Ω^{j-1}`,
/// infinite for `j < n` and listed up to `degree_cap`.
pub fn e2_page(model: &LGModel, columns: usize, degree_cap: Option<i64>) -> Result<SpectralPage> {
    let d = model.require_degree()?;
    if !has_isolated_critical_points(model)? {
        return Err(Error::NonIsolated);
    }
    let n = model.nvars();
    let cap = degree_cap.unwrap_or(n as i64 * d);
    let row = koszul_cohomology_dims(model, Direction::Wedge, Some(cap))?;
    let ring = model.ring();
    let grad = model.gradient();
    let mut entries = BTreeMap::new();
    for i in 0..=columns {
        for p in 0..=n {
            let entry = if i == 0 {
                if p == n {
                    PageEntry::Finite(row.spots[n].total())
                } else {
                    let mut dims = BTreeMap::new();
                    for e in 0..=cap {
                        let size = forms_basis(ring, p, e).len();
                        let inn = if p > 0 {
                            rank(&koszul_matrix(
                                model,
                                &grad,
                                Direction::Wedge,
                                p - 1,
                                e - d,
                            )?)
                        } else {
                            0
                        };
                        if size > inn {
                            dims.insert(e, size - inn);
                        }
                    }
                    PageEntry::Truncated {
                        dims: DimensionSeries { dims },
                        degree_cap: cap,
                    }
                }
            } else {
                PageEntry::Finite(row.spots[p].total())
            };
            entries.insert((i, i + p), entry);
        }
    }
    Ok(SpectralPage {
        page: 2,
        nvars: n,
        columns,
        entries,
    })
}

/// Compares `b_-`-homology of normalized chains at tensor degree `k` with
/// `Ω^k`, weight by weight up to `degree_bound`.
pub fn hkr_comparison(model: &LGModel, k: usize, degree_bound: i64) -> Result<bool> {
    if degree_bound < 0 {
        return Err(Error::WindowTooSmall(
            "degree bound must be non-negative".into(),
        ));
    }
    let alg = PolyCarrier::new(model);
    let ring = model.ring();
    for e in 0..=degree_bound {
        let w = ChainWindow::at_degree(&alg, k + 1, true, Some(e))?;
        let strict = |_: &Vec<Monomial>| Err(Error::ShapeMismatch("b_- left the weight".into()));
        let out = if k == 0 {
            Matrix::zero(0, w.bases[0].len())
        } else {
            matrix_of(
                &w.bases[k],
                &w.bases[k - 1],
                |a| b_minus(&alg, a, true),
                strict,
            )?
        };
        let inn = matrix_of(
            &w.bases[k + 1],
            &w.bases[k],
            |a| b_minus(&alg, a, true),
            strict,
        )?;
        let h = w.bases[k].len() - rank(&out) - rank(&inn);
        if h != forms_basis(ring, k, e).len() {
            return Ok(false);
        }
    }
    Ok(true)
}
