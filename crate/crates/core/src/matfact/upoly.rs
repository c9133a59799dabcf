//! Univariate polynomials over a field and the Smith form of polynomial
//! matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{Field, Scalar};

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UPoly {
    pub fn zero(field: Field) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_coeffs(field, vec![field.one()])
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<Scalar>) -> Self {
        let mut p = Self { field, coeffs };
        p.trim();
        p
    }

    /// Converts a polynomial in a one-variable ring.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.ring().nvars() != 1 {
            return Err(Error::MethodUnsupported(
                "Smith form needs a one-variable ring".into(),
            ));
        }
        let field = p.ring().field();
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            let e = m.exponents()[0] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, field.zero());
            }
            coeffs[e] = field.embed(c)?;
        }
        Ok(Self::from_coeffs(field, coeffs))
    }

    pub fn to_polynomial(&self, ring: &alloc::sync::Arc<crate::poly::PolyRing>) -> Polynomial {
        Polynomial::from_terms(
            ring,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial(vec![e as u32]), c.clone())),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(self.field, coeffs)
    }

    /// Euclidean division `(q, r)` with `self = q·divisor + r`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead_inv = divisor
            .leading()
            .and_then(Scalar::inv)
            .expect("division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut r = self.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let c = r.leading().expect("nonzero") * &lead_inv;
            let shift = rd - dd;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r.coeffs[i + shift] = &r.coeffs[i + shift] - &(&c * b);
            }
            q[shift] = c;
            r.trim();
        }
        (Self::from_coeffs(self.field, q), r)
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(Scalar::inv) {
            None => self.clone(),
            Some(inv) => {
                Self::from_coeffs(self.field, self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }
}

/// Dense matrix over `k[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<UPoly>>,
}

impl UMatrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![vec![UPoly::zero(field); cols]; rows],
        }
    }
}

/// Invariant factors `d_1 | d_2 | … | d_r` (monic, nonzero) of a matrix
/// over `k[x]`; `r` is its rank.
pub fn smith_form(m: &UMatrix) -> Vec<UPoly> {
    let mut a = m.entries.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least degree in the remaining block
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, e) in row.iter().enumerate().skip(t) {
                if let Some(dg) = e.degree() {
                    if best.is_none_or(|b| dg < b.2) {
                        best = Some((i, j, dg));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let (q, r) = a[i][t].div_rem(&a[t][t]);
            for j in t..cols {
                let sub = q.mul(&a[t][j]);
                a[i][j] = a[i][j].sub(&sub);
            }
            clean &= r.is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let (q, r) = a[t][j].div_rem(&a[t][t]);
            for row in a.iter_mut().skip(t) {
                let sub = q.mul(&row[t]);
                row[j] = row[j].sub(&sub);
            }
            clean &= r.is_zero();
        }
        if clean {
            diag.push(a[t][t].monic());
            t += 1;
        }
    }
    // enforce divisibility: (a, b) -> (gcd, lcm)
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !diag[i].divides(&diag[j]) {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].mul(&diag[j]).div_rem(&g).0.monic();
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_coeffs(
            Field::Rationals,
            c.iter().map(|&v| Scalar::integer(v)).collect(),
        )
    }

    #[test]
    fn euclid() {
        let (q, r) = p(&[-1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!((q, r), (p(&[-1, 1]), p(&[])));
        assert_eq!(p(&[0, 0, 1]).gcd(&p(&[0, 3])), p(&[0, 1]));
    }

    #[test]
    fn smith_examples() {
        let mut m = UMatrix::zero(Field::Rationals, 2, 2);
        m.entries[0][0] = p(&[0, 0, 1]);
        m.entries[1][1] = p(&[0, 1]);
        let d = smith_form(&m);
        assert_eq!(d, vec![p(&[0, 1]), p(&[0, 0, 1])]);
        m.entries[0][1] = p(&[1]);
        assert_eq!(smith_form(&m), vec![p(&[1]), p(&[0, 0, 0, 1])]);
        assert!(smith_form(&UMatrix::zero(Field::Rationals, 2, 3)).is_empty());
    }
}
