use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::error::{Error, Result};
use crate::jacobi::LGModel;
use crate::linalg::SparseVec;
use crate::poly::{monomials_of_degree, GroebnerBasis, Monomial, Polynomial};
use crate::scalar::{Field, Scalar};

/// `a_0 | a_1 | … | a_t` as a list of basis labels; its tensor degree is `len - 1`.
pub type Tensor<K> = Vec<K>;

/// Finite linear combination of basis tensors.
pub type Chain<K> = BTreeMap<Tensor<K>, Scalar>;

pub(crate) fn add_term<K: Ord>(chain: &mut Chain<K>, t: Tensor<K>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match chain.get_mut(&t) {
        Some(v) => {
            *v += &c;
            if v.is_zero() {
                chain.remove(&t);
            }
        }
        None => {
            chain.insert(t, c);
        }
    }
}

pub(crate) fn sign(negative: bool) -> Scalar {
    if negative {
        Scalar::integer(-1)
    } else {
        Scalar::one()
    }
}

/// Underlying graded vector space and operations `m_0`, `m_2` of a curved algebra.
///
/// Basis labels are `Key`s. `degree` is an auxiliary grading preserved by
/// the product (weights for polynomial carriers); `parity` drives Koszul signs.
pub trait Carrier {
    type Key: Clone + Ord + Debug;

    fn field(&self) -> Field;
    fn is_unit(&self, a: &Self::Key) -> bool;
    fn mul(&self, a: &Self::Key, b: &Self::Key) -> Vec<(Self::Key, Scalar)>;
    /// `W = m_0(1)` expanded in the basis.
    fn curvature(&self) -> &[(Self::Key, Scalar)];
    fn degree(&self, a: &Self::Key) -> i64;
    fn parity(&self, a: &Self::Key) -> u8;
    /// Degree of `W` if it is homogeneous and nonzero.
    fn curvature_degree(&self) -> Option<i64>;
    /// Basis tensors of tensor degree `t`, restricted to total degree `degree`.
    ///
    /// Normalized tensors have no unit in slots `1..=t`.
    fn tensors(
        &self,
        t: usize,
        degree: Option<i64>,
        normalized: bool,
    ) -> Result<Vec<Tensor<Self::Key>>>;

    fn tensor_degree(&self, a: &[Self::Key]) -> i64 {
        a.iter().map(|k| self.degree(k)).sum()
    }

    fn tensor_parity(&self, a: &[Self::Key]) -> u8 {
        a.iter().fold(0, |p, k| p ^ (self.parity(k) & 1))
    }

    fn is_flat(&self) -> bool {
        self.curvature().is_empty()
    }

    /// Whether `W` has a component along the unit.
    fn curvature_has_unit_part(&self) -> bool {
        self.curvature().iter().any(|(k, _)| self.is_unit(k))
    }
}

/// Grading on a finite-dimensional carrier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    /// Everything in degree 0.
    None,
    /// `ℤ`-grading; parity is the degree mod 2.
    Integer,
    /// Auxiliary weights (for instance polynomial weights) with all elements even.
    Weight,
    /// `ℤ/2`-grading.
    Parity,
}

/// Finite-dimensional curved algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    field: Field,
    names: Vec<String>,
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Option<usize>,
    curvature: Vec<(usize, Scalar)>,
    grading: Grading,
    degrees: Vec<i64>,
    parities: Vec<u8>,
}

impl FiniteAlgebra {
    /// `table[i][j]` is the product `e_i e_j`. Checks associativity, the unit
    /// and centrality of the curvature.
    pub fn new(
        field: Field,
        names: Vec<String>,
        table: Vec<Vec<SparseVec>>,
        unit: Option<usize>,
        curvature: SparseVec,
    ) -> Result<Self> {
        let n = names.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidAlgebra(format!(
                "multiplication table must be {n}x{n}"
            )));
        }
        let conv = |v: &SparseVec| -> Result<Vec<(usize, Scalar)>> {
            let v = v.to_field(field)?;
            if v.iter().any(|(i, _)| *i >= n) {
                return Err(Error::InvalidAlgebra(
                    "structure constant index out of range".to_string(),
                ));
            }
            Ok(v.iter().cloned().collect())
        };
        let table = table
            .iter()
            .map(|row| row.iter().map(conv).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let curvature = conv(&curvature)?;
        if let Some(u) = unit {
            if u >= n {
                return Err(Error::InvalidAlgebra("unit index out of range".to_string()));
            }
        }
        let alg = FiniteAlgebra {
            field,
            names,
            table,
            unit,
            curvature,
            grading: Grading::None,
            degrees: alloc::vec![0; n],
            parities: alloc::vec![0; n],
        };
        alg.validate()?;
        Ok(alg)
    }

    /// A vector space with zero product and curvature `w`, no unit.
    pub fn pure_curvature(field: Field, names: Vec<String>, w: SparseVec) -> Result<Self> {
        let n = names.len();
        let table = alloc::vec![alloc::vec![SparseVec::new(); n]; n];
        Self::new(field, names, table, None, w)
    }

    /// `k[x_1..x_n]/I` on its standard monomials, with curvature the normal form of `w`.
    ///
    /// If `I` is weighted homogeneous the weights become the auxiliary grading.
    pub fn from_quotient(gb: &GroebnerBasis, w: &Polynomial) -> Result<Self> {
        let ring = gb.ring();
        if w.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let mut basis = gb.standard_monomials(None)?;
        basis.sort_by(|a, b| ring.cmp_monomials(a, b));
        if basis.is_empty() {
            return Err(Error::InvalidAlgebra(
                "quotient by the unit ideal".to_string(),
            ));
        }
        let index: BTreeMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let coords = |p: &Polynomial| -> SparseVec {
            let nf = gb.normal_form(p);
            SparseVec::from_pairs(nf.terms().map(|(m, c)| (index[m], c.clone())))
        };
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| coords(&Polynomial::term(ring, a.mul(b), Scalar::one())))
                    .collect()
            })
            .collect();
        let names = basis.iter().map(|m| ring.format_monomial(m)).collect();
        let alg = Self::new(ring.field(), names, table, Some(0), coords(w))?;
        let degrees: Vec<i64> = basis.iter().map(|m| ring.monomial_degree(m)).collect();
        match alg.clone().with_grading(Grading::Weight, degrees) {
            Ok(g) => Ok(g),
            Err(_) => Ok(alg),
        }
    }

    /// Attaches a grading; checks that the product and curvature respect it.
    ///
    /// For [`Grading::Parity`] the values are parities; for
    /// [`Grading::Integer`] they are degrees and parity is their residue.
    pub fn with_grading(mut self, grading: Grading, values: Vec<i64>) -> Result<Self> {
        if values.len() != self.dim() {
            return Err(Error::InvalidAlgebra(
                "one degree per basis element".to_string(),
            ));
        }
        self.grading = grading;
        match grading {
            Grading::None => {
                self.degrees = alloc::vec![0; self.dim()];
                self.parities = alloc::vec![0; self.dim()];
            }
            Grading::Integer => {
                self.parities = values.iter().map(|d| d.rem_euclid(2) as u8).collect();
                self.degrees = values;
            }
            Grading::Weight => {
                self.degrees = values;
                self.parities = alloc::vec![0; self.dim()];
            }
            Grading::Parity => {
                self.parities = values.iter().map(|d| d.rem_euclid(2) as u8).collect();
                self.degrees = alloc::vec![0; self.dim()];
            }
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, _) in &self.table[i][j] {
                    if self.degrees[*k] != self.degrees[i] + self.degrees[j]
                        || self.parities[*k] != self.parities[i] ^ self.parities[j]
                    {
                        return Err(Error::InvalidAlgebra(format!(
                            "product {}*{} is not homogeneous",
                            self.names[i], self.names[j]
                        )));
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            if self.degrees[u] != 0 || self.parities[u] != 0 {
                return Err(Error::InvalidAlgebra("unit must have degree 0".to_string()));
            }
        }
        if self.curvature.iter().any(|(k, _)| self.parities[*k] != 0) {
            return Err(Error::InvalidAlgebra("curvature must be even".to_string()));
        }
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul_vec(&self.mul_basis(a, b), &SparseVec::unit(c));
                    let right = self.mul_vec(&SparseVec::unit(a), &self.mul_basis(b, c));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "not associative on ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            for a in 0..n {
                let e = SparseVec::unit(a);
                if self.mul_basis(u, a) != e || self.mul_basis(a, u) != e {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} is not a unit",
                        self.names[u]
                    )));
                }
            }
        }
        let w = self.curvature_vec();
        for a in 0..n {
            let e = SparseVec::unit(a);
            if self.mul_vec(&w, &e) != self.mul_vec(&e, &w) {
                return Err(Error::CurvatureNotCentral);
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn curvature_vec(&self) -> SparseVec {
        SparseVec::from_pairs(self.curvature.iter().cloned())
    }

    /// Same algebra with another curvature (must stay central and even).
    pub fn with_curvature(&self, w: SparseVec) -> Result<Self> {
        let mut alg = self.clone();
        alg.curvature = w.to_field(self.field)?.iter().cloned().collect();
        alg.validate()?;
        if alg.curvature.iter().any(|(k, _)| alg.parities[*k] != 0) {
            return Err(Error::InvalidAlgebra("curvature must be even".to_string()));
        }
        Ok(alg)
    }

    pub fn is_product_zero(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(Vec::is_empty))
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> SparseVec {
        SparseVec::from_pairs(self.table[a][b].iter().cloned())
    }

    pub fn mul_vec(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                for (k, c) in &self.table[*i][*j] {
                    pairs.push((*k, &(a * b) * c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn min_degree(&self) -> i64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Labels allowed in slots `1..` of a normalized tensor.
    pub(crate) fn slot_labels(&self, normalized: bool) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| !(normalized && Some(i) == self.unit))
            .collect()
    }
}

impl Carrier for FiniteAlgebra {
    type Key = usize;

    fn field(&self) -> Field {
        self.field
    }

    fn is_unit(&self, a: &usize) -> bool {
        Some(*a) == self.unit
    }

    fn mul(&self, a: &usize, b: &usize) -> Vec<(usize, Scalar)> {
        self.table[*a][*b].clone()
    }

    fn curvature(&self) -> &[(usize, Scalar)] {
        &self.curvature
    }

    fn degree(&self, a: &usize) -> i64 {
        self.degrees[*a]
    }

    fn parity(&self, a: &usize) -> u8 {
        self.parities[*a]
    }

    fn curvature_degree(&self) -> Option<i64> {
        let mut it = self.curvature.iter().map(|(k, _)| self.degrees[*k]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn tensors(
        &self,
        t: usize,
        degree: Option<i64>,
        normalized: bool,
    ) -> Result<Vec<Tensor<usize>>> {
        let slots = self.slot_labels(normalized);
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(t + 1);
        for a0 in 0..self.dim() {
            cur.clear();
            cur.push(a0);
            self.extend(&slots, t, &mut cur, &mut out);
        }
        if let Some(e) = degree {
            out.retain(|a| self.tensor_degree(a) == e);
        }
        Ok(out)
    }
}

impl FiniteAlgebra {
    fn extend(
        &self,
        slots: &[usize],
        t: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Tensor<usize>>,
    ) {
        if cur.len() == t + 1 {
            out.push(cur.clone());
            return;
        }
        for &s in slots {
            cur.push(s);
            self.extend(slots, t, cur, out);
            cur.pop();
        }
    }
}

/// Polynomial ring of an LG model as a curved algebra with `m_0 = W`.
#[derive(Clone, Debug)]
pub struct PolyCarrier {
    model: LGModel,
    curvature: Vec<(Monomial, Scalar)>,
}

impl PolyCarrier {
    pub fn new(model: &LGModel) -> Self {
        let curvature = model
            .potential()
            .terms()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        PolyCarrier {
            model: model.clone(),
            curvature,
        }
    }

    pub fn model(&self) -> &LGModel {
        &self.model
    }

    fn fill(
        &self,
        slots_left: usize,
        degree_left: i64,
        min_slot: i64,
        cache: &mut BTreeMap<i64, Vec<Monomial>>,
        cur: &mut Vec<Monomial>,
        out: &mut Vec<Tensor<Monomial>>,
    ) {
        if slots_left == 0 {
            if degree_left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // every remaining slot needs at least `min_slot`
        let reserve = min_slot * (slots_left as i64 - 1);
        let mut d = min_slot;
        while d + reserve <= degree_left {
            let weights = self.model.ring().weights();
            let monos = cache
                .entry(d)
                .or_insert_with(|| monomials_of_degree(weights, d))
                .clone();
            for m in monos {
                cur.push(m);
                self.fill(slots_left - 1, degree_left - d, min_slot, cache, cur, out);
                cur.pop();
            }
            d += 1;
        }
    }
}

impl Carrier for PolyCarrier {
    type Key = Monomial;

    fn field(&self) -> Field {
        self.model.field()
    }

    fn is_unit(&self, a: &Monomial) -> bool {
        a.is_one()
    }

    fn mul(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, Scalar)> {
        alloc::vec![(a.mul(b), Scalar::one())]
    }

    fn curvature(&self) -> &[(Monomial, Scalar)] {
        &self.curvature
    }

    fn degree(&self, a: &Monomial) -> i64 {
        self.model.ring().monomial_degree(a)
    }

    fn parity(&self, _: &Monomial) -> u8 {
        0
    }

    fn curvature_degree(&self) -> Option<i64> {
        self.model.degree()
    }

    fn tensors(
        &self,
        t: usize,
        degree: Option<i64>,
        normalized: bool,
    ) -> Result<Vec<Tensor<Monomial>>> {
        let e = degree.ok_or(Error::InfiniteCarrier)?;
        let mut out = Vec::new();
        if e < 0 {
            return Ok(out);
        }
        let mut cache = BTreeMap::new();
        let mut cur = Vec::with_capacity(t + 1);
        let min_slot = if normalized { 1 } else { 0 };
        if !normalized && t > 0 {
            // Unnormalized slots may have degree 0, so the count is still finite
            // but we enumerate a_0 together with the slots.
            self.fill(t + 1, e, 0, &mut cache, &mut cur, &mut out);
            return Ok(out);
        }
        for d0 in 0..=e {
            let weights = self.model.ring().weights();
            let monos = cache
                .entry(d0)
                .or_insert_with(|| monomials_of_degree(weights, d0))
                .clone();
            for a0 in monos {
                cur.clear();
                cur.push(a0);
                self.fill(t, e - d0, min_slot, &mut cache, &mut cur, &mut out);
            }
        }
        Ok(out)
    }
}
