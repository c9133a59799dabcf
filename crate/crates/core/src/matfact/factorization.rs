//! Matrix factorizations, their Hom complexes and Ext dimensions.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jacobi::LGModel;
use crate::linalg::{matrix_of, rank, Basis};
use crate::poly::{monomials_of_degree, Monomial, PolyRing, Polynomial};
use crate::scalar::Scalar;

use super::upoly::{smith_form, UMatrix, UPoly};

/// Dense matrix of polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        Self {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        Self::scalar(&Polynomial::one(ring), n)
    }

    /// `p · id_n`.
    pub fn scalar(p: &Polynomial, n: usize) -> Self {
        let mut m = Self::zero(p.ring(), n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        let mut m = Self::zero(ring, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, p) in row.into_iter().enumerate() {
                if !Arc::ptr_eq(p.ring(), ring) && p.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(alloc::format!(
                "cannot compose {}x{} with {}x{}",
                self.rows,
                self.cols,
                rhs.rows,
                rhs.cols
            )));
        }
        let mut out = Self::zero(&self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::ShapeMismatch(
                "cannot add matrices of different shapes".into(),
            ));
        }
        let mut out = self.clone();
        for (e, f) in out.entries.iter_mut().zip(&rhs.entries) {
            *e = e.add(f);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Scalar) -> PolyMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.scaled(c);
        }
        out
    }

    pub fn neg(&self) -> PolyMatrix {
        self.scaled(&Scalar::integer(-1))
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let mut out = Self::zero(&self.ring, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul(rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(
        a: &PolyMatrix,
        b: &PolyMatrix,
        c: &PolyMatrix,
        d: &PolyMatrix,
    ) -> Result<PolyMatrix> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::ShapeMismatch("incompatible blocks".into()));
        }
        let mut out = Self::zero(&a.ring, a.rows + c.rows, a.cols + b.cols);
        for (m, r0, c0) in [
            (a, 0, 0),
            (b, 0, a.cols),
            (c, a.rows, 0),
            (d, a.rows, a.cols),
        ] {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }
}

/// `(E_0 ⊕ E_1, P)` with `P_0: E_0 → E_1`, `P_1: E_1 → E_0`.
///
/// Optional shifts are the twists `a` of summands `B(a)`, whose generator
/// sits in degree `-a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFactorization {
    pub p0: PolyMatrix,
    pub p1: PolyMatrix,
    pub shifts: Option<(Vec<i64>, Vec<i64>)>,
}

impl MatrixFactorization {
    /// Checks shapes: `P_0` is `rank1 × rank0` and `P_1` is `rank0 × rank1`.
    pub fn new(p0: PolyMatrix, p1: PolyMatrix) -> Result<Self> {
        if p0.rows != p1.cols || p0.cols != p1.rows {
            return Err(Error::ShapeMismatch(alloc::format!(
                "P0 is {}x{} but P1 is {}x{}",
                p0.rows,
                p0.cols,
                p1.rows,
                p1.cols
            )));
        }
        if p0.ring != p1.ring {
            return Err(Error::RingMismatch);
        }
        Ok(Self {
            p0,
            p1,
            shifts: None,
        })
    }

    pub fn with_shifts(mut self, even: Vec<i64>, odd: Vec<i64>) -> Result<Self> {
        if even.len() != self.rank0() || odd.len() != self.rank1() {
            return Err(Error::ShapeMismatch("one shift per summand".into()));
        }
        self.shifts = Some((even, odd));
        Ok(self)
    }

    pub fn rank0(&self) -> usize {
        self.p0.cols
    }

    pub fn rank1(&self) -> usize {
        self.p0.rows
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.p0.ring
    }

    /// `(p, q)` of rank one.
    pub fn rank_one(p: &Polynomial, q: &Polynomial) -> Self {
        let ring = p.ring();
        let a = PolyMatrix::scalar(p, 1);
        let b = PolyMatrix::from_rows(ring, vec![vec![q.clone()]]).expect("1x1");
        Self::new(a, b).expect("1x1 shapes")
    }

    /// Direct sum, shifts kept when both sides carry them.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let ring = self.ring();
        let z = |r, c| PolyMatrix::zero(ring, r, c);
        let p0 = PolyMatrix::block(
            &self.p0,
            &z(self.rank1(), other.rank0()),
            &z(other.rank1(), self.rank0()),
            &other.p0,
        )?;
        let p1 = PolyMatrix::block(
            &self.p1,
            &z(self.rank0(), other.rank1()),
            &z(other.rank0(), self.rank1()),
            &other.p1,
        )?;
        let mut out = Self::new(p0, p1)?;
        if let (Some((a0, a1)), Some((b0, b1))) = (&self.shifts, &other.shifts) {
            out.shifts = Some(([a0.as_slice(), b0].concat(), [a1.as_slice(), b1].concat()));
        }
        Ok(out)
    }

    /// Tensor product with Koszul signs. Shifts add when both sides carry
    /// them, except that `E_1 ⊗ F_1` drops by `d` to land in `E_0`.
    pub fn tensor(&self, other: &Self, d: i64) -> Result<Self> {
        let ring = self.ring();
        let (a0, a1) = (self.rank0(), self.rank1());
        let (b0, b1) = (other.rank0(), other.rank1());
        let id = |n| PolyMatrix::identity(ring, n);
        // E0 = A0⊗B0 ⊕ A1⊗B1,  E1 = A1⊗B0 ⊕ A0⊗B1
        let p0 = PolyMatrix::block(
            &self.p0.kron(&id(b0)),
            &id(a1).kron(&other.p1).neg(),
            &id(a0).kron(&other.p0),
            &self.p1.kron(&id(b1)),
        )?;
        let p1 = PolyMatrix::block(
            &self.p1.kron(&id(b0)),
            &id(a0).kron(&other.p1),
            &id(a1).kron(&other.p0).neg(),
            &self.p0.kron(&id(b1)),
        )?;
        let mut out = Self::new(p0, p1)?;
        if let (Some((s0, s1)), Some((t0, t1))) = (&self.shifts, &other.shifts) {
            let sums = |x: &[i64], y: &[i64]| {
                x.iter()
                    .flat_map(|a| y.iter().map(move |b| a + b))
                    .collect::<Vec<_>>()
            };
            let top: Vec<i64> = sums(s1, t1).into_iter().map(|c| c - d).collect();
            out.shifts = Some((
                [sums(s0, t0), top].concat(),
                [sums(s1, t0), sums(s0, t1)].concat(),
            ));
        }
        Ok(out)
    }

    /// Shifts when present, otherwise inferred from homogeneous entries so
    /// that `P_0` has degree 0 and `P_1` degree `d`.
    pub fn grading(&self, d: i64) -> Result<(Vec<i64>, Vec<i64>)> {
        if let Some(s) = &self.shifts {
            return Ok(s.clone());
        }
        let (r0, r1) = (self.rank0(), self.rank1());
        let mut a0: Vec<Option<i64>> = vec![None; r0];
        let mut a1: Vec<Option<i64>> = vec![None; r1];
        let entry_degree = |p: &Polynomial| p.homogeneous_degree().ok_or(Error::NonHomogeneous);
        let conflict = || Error::MethodUnsupported("entries admit no consistent grading".into());
        for start in 0..r0 + r1 {
            let placed = if start < r0 {
                a0[start].is_some()
            } else {
                a1[start - r0].is_some()
            };
            if placed {
                continue;
            }
            if start < r0 {
                a0[start] = Some(0);
            } else {
                a1[start - r0] = Some(0);
            }
            let mut queue = VecDeque::from([start]);
            while let Some(node) = queue.pop_front() {
                if node < r0 {
                    let i = node;
                    let ai = a0[i].expect("placed");
                    for j in 0..r1 {
                        // P0: deg f - a1_j + a0_i = 0;  P1: deg f - a0_i + a1_j = d
                        for (f, want) in [(self.p0.get(j, i), 0), (self.p1.get(i, j), d)] {
                            if f.is_zero() {
                                continue;
                            }
                            let aj = if want == 0 {
                                ai + entry_degree(f)?
                            } else {
                                ai + d - entry_degree(f)?
                            };
                            match a1[j] {
                                None => {
                                    a1[j] = Some(aj);
                                    queue.push_back(r0 + j);
                                }
                                Some(x) if x != aj => return Err(conflict()),
                                _ => {}
                            }
                        }
                    }
                } else {
                    let j = node - r0;
                    let aj = a1[j].expect("placed");
                    for i in 0..r0 {
                        for (f, want) in [(self.p0.get(j, i), 0), (self.p1.get(i, j), d)] {
                            if f.is_zero() {
                                continue;
                            }
                            let ai = if want == 0 {
                                aj - entry_degree(f)?
                            } else {
                                aj + entry_degree(f)? - d
                            };
                            match a0[i] {
                                None => {
                                    a0[i] = Some(ai);
                                    queue.push_back(i);
                                }
                                Some(x) if x != ai => return Err(conflict()),
                                _ => {}
                            }
                        }
                    }
                }
            }
        }
        Ok((
            a0.into_iter().flatten().collect(),
            a1.into_iter().flatten().collect(),
        ))
    }
}

/// `P_1 P_0 = W·id` and `P_0 P_1 = W·id` exactly.
pub fn verify_mf(mf: &MatrixFactorization, model: &LGModel) -> Result<bool> {
    if mf.ring() != model.ring() {
        return Err(Error::RingMismatch);
    }
    let w = model.potential();
    Ok(mf.p1.mul(&mf.p0)? == PolyMatrix::scalar(w, mf.rank0())
        && mf.p0.mul(&mf.p1)? == PolyMatrix::scalar(w, mf.rank1()))
}

/// Entry degrees of a graded factorization: `P_0` of twist-adjusted degree 0
/// and `P_1` of degree `d`.
pub fn verify_graded_degrees(mf: &MatrixFactorization, d: i64) -> bool {
    let Some((a0, a1)) = &mf.shifts else {
        return false;
    };
    let ok = |f: &Polynomial, src: i64, tgt: i64, want: i64| {
        f.is_zero()
            || f.homogeneous_degree()
                .is_some_and(|e| e - tgt + src == want)
    };
    (0..mf.rank0()).all(|i| {
        (0..mf.rank1())
            .all(|j| ok(mf.p0.get(j, i), a0[i], a1[j], 0) && ok(mf.p1.get(i, j), a1[j], a0[i], d))
    })
}

/// An element of `Hom(E, F)`: even blocks `(E_0→F_0, E_1→F_1)` or odd
/// blocks `(E_0→F_1, E_1→F_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub odd: bool,
    pub blocks: [PolyMatrix; 2],
}

impl HomElement {
    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(PolyMatrix::is_zero)
    }
}

/// `Hom(E, F)` with `d(φ) = P_F ∘ φ − (−1)^{|φ|} φ ∘ Q_E`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub src: MatrixFactorization,
    pub dst: MatrixFactorization,
}

impl HomComplex {
    pub fn new(src: &MatrixFactorization, dst: &MatrixFactorization) -> Result<Self> {
        if src.ring() != dst.ring() {
            return Err(Error::ModelMismatch);
        }
        Ok(Self {
            src: src.clone(),
            dst: dst.clone(),
        })
    }

    /// Shapes `(rows, cols)` of the two blocks in the given parity.
    pub fn block_shapes(&self, odd: bool) -> [(usize, usize); 2] {
        let (e0, e1) = (self.src.rank0(), self.src.rank1());
        let (f0, f1) = (self.dst.rank0(), self.dst.rank1());
        if odd {
            [(f1, e0), (f0, e1)]
        } else {
            [(f0, e0), (f1, e1)]
        }
    }

    pub fn zero(&self, odd: bool) -> HomElement {
        let ring = self.src.ring();
        let [(a, b), (c, e)] = self.block_shapes(odd);
        HomElement {
            odd,
            blocks: [PolyMatrix::zero(ring, a, b), PolyMatrix::zero(ring, c, e)],
        }
    }

    pub fn identity(&self) -> HomElement {
        let ring = self.src.ring();
        HomElement {
            odd: false,
            blocks: [
                PolyMatrix::identity(ring, self.src.rank0()),
                PolyMatrix::identity(ring, self.src.rank1()),
            ],
        }
    }

    pub fn differential(&self, phi: &HomElement) -> Result<HomElement> {
        let (q, p) = (&self.src, &self.dst);
        let [f0, f1] = &phi.blocks;
        let blocks = if phi.odd {
            // E0→F0: P1 ψ0 + ψ1 Q0;  E1→F1: P0 ψ1 + ψ0 Q1
            [
                p.p1.mul(f0)?.add(&f1.mul(&q.p0)?)?,
                p.p0.mul(f1)?.add(&f0.mul(&q.p1)?)?,
            ]
        } else {
            // E0→F1: P0 φ0 − φ1 Q0;  E1→F0: P1 φ1 − φ0 Q1
            [
                p.p0.mul(f0)?.add(&f1.mul(&q.p0)?.neg())?,
                p.p1.mul(f1)?.add(&f0.mul(&q.p1)?.neg())?,
            ]
        };
        Ok(HomElement {
            odd: !phi.odd,
            blocks,
        })
    }

    /// `d(d(φ)) = 0`.
    pub fn square_check(&self, phi: &HomElement) -> Result<bool> {
        Ok(self.differential(&self.differential(phi)?)?.is_zero())
    }
}

/// Ext computation route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtMethod {
    /// Smith form over `k[x]`.
    Smith,
    /// Graded pieces up to a degree bound.
    Truncate,
}

/// Dimensions of even and odd cohomology of `Hom(E, F)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtDims {
    pub even: usize,
    pub odd: usize,
}

pub fn ext_dims(
    src: &MatrixFactorization,
    dst: &MatrixFactorization,
    model: &LGModel,
    method: ExtMethod,
    bound: Option<i64>,
) -> Result<ExtDims> {
    let hom = HomComplex::new(src, dst)?;
    if src.ring() != model.ring() {
        return Err(Error::ModelMismatch);
    }
    match method {
        ExtMethod::Smith => ext_smith(&hom),
        ExtMethod::Truncate => ext_truncated(&hom, model, bound),
    }
}

/// Entry positions `(block, row, col)` of one parity.
fn positions(hom: &HomComplex, odd: bool) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for (b, &(r, c)) in hom.block_shapes(odd).iter().enumerate() {
        for i in 0..r {
            for j in 0..c {
                out.push((b, i, j));
            }
        }
    }
    out
}

fn unit_element(
    hom: &HomComplex,
    odd: bool,
    (b, i, j): (usize, usize, usize),
    p: Polynomial,
) -> HomElement {
    let mut e = hom.zero(odd);
    e.blocks[b].set(i, j, p);
    e
}

/// Matrix over `k[x]` of `d` leaving the given parity.
fn smith_matrix(hom: &HomComplex, odd: bool) -> Result<UMatrix> {
    let ring = hom.src.ring();
    let from = positions(hom, odd);
    let to = positions(hom, !odd);
    let mut m = UMatrix::zero(ring.field(), to.len(), from.len());
    for (c, &pos) in from.iter().enumerate() {
        let image = hom.differential(&unit_element(hom, odd, pos, Polynomial::one(ring)))?;
        for (r, &(b, i, j)) in to.iter().enumerate() {
            m.entries[r][c] = UPoly::from_polynomial(image.blocks[b].get(i, j))?;
        }
    }
    Ok(m)
}

fn ext_smith(hom: &HomComplex) -> Result<ExtDims> {
    if hom.src.ring().nvars() != 1 {
        return Err(Error::MethodUnsupported(
            "the Smith method needs a one-variable ring".into(),
        ));
    }
    let d_even = smith_form(&smith_matrix(hom, false)?);
    let d_odd = smith_form(&smith_matrix(hom, true)?);
    // H = ker / im is torsion exactly when rank(out) + rank(in) = rank of the module
    let torsion = |size: usize, out: &[UPoly], inn: &[UPoly]| -> Result<usize> {
        if out.len() + inn.len() != size {
            return Err(Error::MethodUnsupported(
                "cohomology has a free part".into(),
            ));
        }
        Ok(inn.iter().map(|f| f.degree().unwrap_or(0)).sum())
    };
    Ok(ExtDims {
        even: torsion(positions(hom, false).len(), &d_even, &d_odd)?,
        odd: torsion(positions(hom, true).len(), &d_odd, &d_even)?,
    })
}

/// Basis label `(block, row, col, monomial)`.
type HomLabel = (usize, usize, usize, Monomial);

/// Even piece `e`: blocks of adjusted degree `e`. Odd piece `e`: `E_0→F_1`
/// at `e`, `E_1→F_0` at `e + d`. Then `d` maps even `e` to odd `e` and odd
/// `e` to even `e + d`.
fn graded_labels(
    hom: &HomComplex,
    grading: &[(Vec<i64>, Vec<i64>); 2],
    d: i64,
    odd: bool,
    e: i64,
) -> Basis<HomLabel> {
    let ring = hom.src.ring();
    let [(s0, s1), (t0, t1)] = grading;
    let (src, tgt, extra): ([&Vec<i64>; 2], [&Vec<i64>; 2], [i64; 2]) = if odd {
        ([s0, s1], [t1, t0], [0, d])
    } else {
        ([s0, s1], [t0, t1], [0, 0])
    };
    let mut out = Vec::new();
    for b in 0..2 {
        for (i, &ti) in tgt[b].iter().enumerate() {
            for (j, &sj) in src[b].iter().enumerate() {
                for m in monomials_of_degree(ring.weights(), e + extra[b] + ti - sj) {
                    out.push((b, i, j, m));
                }
            }
        }
    }
    Basis::new(out)
}

fn graded_matrix(
    hom: &HomComplex,
    grading: &[(Vec<i64>, Vec<i64>); 2],
    d: i64,
    odd: bool,
    e: i64,
) -> Result<crate::linalg::Matrix> {
    let ring = hom.src.ring();
    let from = graded_labels(hom, grading, d, odd, e);
    let to = graded_labels(hom, grading, d, !odd, if odd { e + d } else { e });
    matrix_of(
        &from,
        &to,
        |(b, i, j, m)| {
            let image = hom
                .differential(&unit_element(
                    hom,
                    odd,
                    (*b, *i, *j),
                    Polynomial::term(ring, m.clone(), Scalar::one()),
                ))
                .expect("shapes agree");
            let mut out = BTreeMap::new();
            for (bb, block) in image.blocks.iter().enumerate() {
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        for (n, v) in block.get(r, c).terms() {
                            out.insert((bb, r, c, n.clone()), v.clone());
                        }
                    }
                }
            }
            out
        },
        |_| Err(Error::NonHomogeneous),
    )
}

fn ext_truncated(hom: &HomComplex, model: &LGModel, bound: Option<i64>) -> Result<ExtDims> {
    let d = model.require_degree()?;
    if d <= 0 {
        return Err(Error::MethodUnsupported(
            "truncation needs positive degree".into(),
        ));
    }
    let grading = [hom.src.grading(d)?, hom.dst.grading(d)?];
    let [(s0, s1), (t0, t1)] = &grading;
    let gaps = s0
        .iter()
        .chain(s1)
        .flat_map(|s| t0.iter().chain(t1).map(move |t| s - t))
        .collect::<Vec<_>>();
    let lo = gaps.iter().min().copied().unwrap_or(0) - d;
    let hi =
        bound.unwrap_or(gaps.iter().max().copied().unwrap_or(0) + (model.nvars() as i64 + 2) * d);
    let mut dims = [0usize; 2];
    let mut last_nonzero = lo;
    for e in lo..=hi {
        for odd in [false, true] {
            let size = graded_labels(hom, &grading, d, odd, e).len();
            if size == 0 {
                continue;
            }
            let out = rank(&graded_matrix(hom, &grading, d, odd, e)?);
            let inn = if odd {
                rank(&graded_matrix(hom, &grading, d, false, e)?)
            } else {
                rank(&graded_matrix(hom, &grading, d, true, e - d)?)
            };
            let h = size - out - inn;
            if h > 0 {
                dims[odd as usize] += h;
                last_nonzero = e;
            }
        }
    }
    if last_nonzero > hi - d {
        return Err(Error::NoStabilization(alloc::format!(
            "Ext still nonzero at degree {last_nonzero} with bound {hi}"
        )));
    }
    Ok(ExtDims {
        even: dims[0],
        odd: dims[1],
    })
}

/// Degree-zero homogeneous maps `E → F(kd)` for `k` in range, as
/// `(even, odd)` counts.
pub fn graded_hom_dims(
    src: &MatrixFactorization,
    dst: &MatrixFactorization,
    d: i64,
    ks: core::ops::RangeInclusive<i64>,
) -> Result<BTreeMap<i64, (usize, usize)>> {
    HomComplex::new(src, dst)?;
    let grading = [src.grading(d)?, dst.grading(d)?];
    let [(s0, s1), (t0, t1)] = &grading;
    let weights = src.ring().weights();
    let count = |src: &[i64], tgt: &[i64], k: i64| -> usize {
        tgt.iter()
            .flat_map(|&t| {
                src.iter()
                    .map(move |&s| monomials_of_degree(weights, t + k * d - s).len())
            })
            .sum()
    };
    Ok(ks
        .map(|k| {
            (
                k,
                (
                    count(s0, t0, k) + count(s1, t1, k),
                    count(s0, t1, k) + count(s1, t0, k),
                ),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::scalar::Field;

    fn model(vars: &[&str], w: &str) -> LGModel {
        LGModel::new(parse_polynomial(w, &PolyRing::standard(vars, Field::Rationals)).unwrap())
            .unwrap()
    }

    fn mf(m: &LGModel, p: &str, q: &str) -> MatrixFactorization {
        let r = m.ring();
        MatrixFactorization::rank_one(
            &parse_polynomial(p, r).unwrap(),
            &parse_polynomial(q, r).unwrap(),
        )
    }

    #[test]
    fn verify_examples() {
        let m = model(&["x"], "x^2");
        assert!(verify_mf(&mf(&m, "x", "x"), &m).unwrap());
        assert!(!verify_mf(&mf(&m, "x", "x+1"), &m).unwrap());
        let m2 = model(&["x", "y"], "x*y");
        assert!(verify_mf(&mf(&m2, "x", "y"), &m2).unwrap());
        let r = m.ring();
        let bad = MatrixFactorization::new(PolyMatrix::zero(r, 2, 1), PolyMatrix::zero(r, 2, 1));
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn hom_differential() {
        let m = model(&["x"], "x^3");
        let e = mf(&m, "x", "x^2");
        let hom = HomComplex::new(&e, &e).unwrap();
        assert!(hom.differential(&hom.identity()).unwrap().is_zero());
        let r = m.ring();
        let mut phi = hom.zero(false);
        phi.blocks[0].set(0, 0, parse_polynomial("x+2", r).unwrap());
        phi.blocks[1].set(0, 0, parse_polynomial("1 - x^2", r).unwrap());
        let dphi = hom.differential(&phi).unwrap();
        // P φ − φ Q on E0→E1
        assert_eq!(
            dphi.blocks[0].get(0, 0),
            &parse_polynomial("x*(x+2) - (1-x^2)*x", r).unwrap()
        );
        assert!(hom.square_check(&phi).unwrap());
        assert!(hom.square_check(&dphi).unwrap());
    }

    #[test]
    fn ext_examples() {
        let m = model(&["x"], "x^2");
        let e = mf(&m, "x", "x");
        for method in [ExtMethod::Smith, ExtMethod::Truncate] {
            assert_eq!(
                ext_dims(&e, &e, &m, method, None).unwrap(),
                ExtDims { even: 1, odd: 1 }
            );
        }
        let t = mf(&m, "1", "x^2");
        assert_eq!(
            ext_dims(&e, &t, &m, ExtMethod::Smith, None).unwrap(),
            ExtDims { even: 0, odd: 0 }
        );
        let m5 = model(&["x"], "x^5");
        let f = mf(&m5, "x^2", "x^3");
        for method in [ExtMethod::Smith, ExtMethod::Truncate] {
            assert_eq!(
                ext_dims(&f, &f, &m5, method, None).unwrap(),
                ExtDims { even: 2, odd: 2 }
            );
        }
        let m2 = model(&["x", "y"], "x*y");
        let g = mf(&m2, "x", "y");
        assert!(matches!(
            ext_dims(&g, &g, &m2, ExtMethod::Smith, None),
            Err(Error::MethodUnsupported(_))
        ));
        assert_eq!(
            ext_dims(&g, &g, &m2, ExtMethod::Truncate, None).unwrap(),
            ExtDims { even: 1, odd: 0 }
        );
    }

    #[test]
    fn stable_equivalence() {
        let m = model(&["x"], "x^4");
        let e = mf(&m, "x", "x^3");
        let f = mf(&m, "x^2", "x^2");
        let triv = mf(&m, "1", "x^4");
        let base = ext_dims(&e, &f, &m, ExtMethod::Smith, None).unwrap();
        assert_eq!(
            ext_dims(
                &e.direct_sum(&triv).unwrap(),
                &f,
                &m,
                ExtMethod::Smith,
                None
            )
            .unwrap(),
            base
        );
        assert_eq!(
            ext_dims(
                &e,
                &f.direct_sum(&triv).unwrap(),
                &m,
                ExtMethod::Smith,
                None
            )
            .unwrap(),
            base
        );
    }

    #[test]
    fn graded_degrees() {
        let m = model(&["x"], "x^2");
        let e = mf(&m, "x", "x").with_shifts(vec![0], vec![1]).unwrap();
        assert!(verify_graded_degrees(&e, 2));
        let swapped = mf(&m, "x", "x").with_shifts(vec![1], vec![0]).unwrap();
        assert!(!verify_graded_degrees(&swapped, 2));
        let constant = mf(&m, "x^2", "1").with_shifts(vec![0], vec![1]).unwrap();
        assert!(!verify_graded_degrees(&constant, 2));
        assert_eq!(mf(&m, "x", "x").grading(2).unwrap(), (vec![0], vec![1]));
    }

    #[test]
    fn graded_hom_counts() {
        let m = model(&["x", "y"], "x^2 + y^2");
        let r = m.ring();
        let e = MatrixFactorization::rank_one(&Polynomial::one(r), m.potential())
            .with_shifts(vec![0], vec![0])
            .unwrap();
        let dims = graded_hom_dims(&e, &e, 2, -1..=2).unwrap();
        assert_eq!(dims[&-1], (0, 0));
        assert_eq!(dims[&0].0, 2);
        assert_eq!(dims[&1].0, 2 * 3);
        assert_eq!(dims[&2].0, 2 * 5);
    }
}
