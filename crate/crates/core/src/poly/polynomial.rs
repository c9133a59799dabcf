use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::monomial::{cmp_wdegrevlex, Monomial};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Polynomial ring over a field with positively weighted variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    weights: Vec<u32>,
    field: Field,
}

impl PolyRing {
    pub fn new(vars: Vec<String>, weights: Vec<u32>, field: Field) -> Result<Arc<Self>> {
        if vars.len() != weights.len() {
            return Err(Error::InvalidAlgebra("one weight per variable".to_string()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidAlgebra(
                "variable weights must be positive".to_string(),
            ));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidAlgebra(alloc::format!(
                    "duplicate variable `{v}`"
                )));
            }
        }
        Ok(Arc::new(Self {
            vars,
            weights,
            field,
        }))
    }

    /// Unit-weight ring on the given names.
    pub fn standard(vars: &[&str], field: Field) -> Arc<Self> {
        Self::new(
            vars.iter().map(|s| s.to_string()).collect(),
            alloc::vec![1; vars.len()],
            field,
        )
        .expect("valid standard ring")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Weighted degree-reverse-lexicographic order on this ring.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_wdegrevlex(a, b, &self.weights)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> i64 {
        m.weighted_degree(&self.weights)
    }

    /// Subring on the listed variables (in the given order), same weights.
    pub fn subring(&self, keep: &[usize]) -> Arc<Self> {
        Arc::new(Self {
            vars: keep.iter().map(|&i| self.vars[i].clone()).collect(),
            weights: keep.iter().map(|&i| self.weights[i]).collect(),
            field: self.field,
        })
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.vars[i].clone()),
                _ => parts.push(alloc::format!("{}^{}", self.vars[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), i), Scalar::one())
    }

    pub fn term(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length");
        let c = ring
            .field()
            .embed(&c)
            .expect("coefficient not representable in ring field");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let c = self
            .ring
            .field()
            .embed(c)
            .expect("coefficient not representable in ring field");
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Leading monomial and coefficient in the ring's term order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| self.ring.cmp_monomials(a.0, b.0))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading().map(|(m, _)| m)
    }

    /// Terms in decreasing term order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.cmp_monomials(b.0, a.0));
        v
    }

    /// Common weighted degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|m| self.ring.monomial_degree(m));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|m| self.ring.monomial_degree(m))
            .max()
    }

    pub fn scaled(&self, c: &Scalar) -> Polynomial {
        let mut p = Self::zero(&self.ring);
        for (m, v) in &self.terms {
            p.add_term(m.clone(), &(v * c));
        }
        p
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let mut p = Self::zero(&self.ring);
        if c.is_zero() {
            return p;
        }
        for (n, v) in &self.terms {
            p.terms.insert(n.mul(m), v * c);
        }
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c);
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), &-c);
        }
        p
    }

    pub fn neg(&self) -> Polynomial {
        self.scaled(&Scalar::integer(-1))
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.ring, other.ring);
        let mut p = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                p.add_term(m.mul(n), &(c * d));
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut p = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n.0[i] -= 1;
            p.add_term(n, &(c * &Scalar::integer(e as i64)));
        }
        p
    }

    /// Sets the variables outside `keep` to zero and moves into the subring on `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Polynomial {
        let sub = self.ring.subring(keep);
        let mut p = Self::zero(&sub);
        for (m, c) in &self.terms {
            let e = m.exponents();
            let dropped = (0..e.len()).any(|i| e[i] > 0 && !keep.contains(&i));
            if !dropped {
                p.add_term(Monomial(keep.iter().map(|&i| e[i]).collect()), c);
            }
        }
        p
    }

    /// Same polynomial in another ring with the same variable count.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() {
            return Err(Error::RingMismatch);
        }
        let mut p = Self::zero(ring);
        for (m, c) in &self.terms {
            p.add_term(m.clone(), &ring.field().embed(c)?);
        }
        Ok(p)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.inv().expect("nonzero");
                self.scaled(&inv)
            }
            None => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn arithmetic_and_display() {
        let r = PolyRing::standard(&["x", "y"], Field::Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let p = x.mul(&y).scaled(&Scalar::integer(2)).sub(&x.pow(2));
        assert_eq!(alloc::format!("{p}"), "-x^2 + 2*x*y");
        assert_eq!(p.derivative(0).to_string(), "-2*x + 2*y");
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(p.leading_monomial(), Some(&Monomial(vec![2, 0])));
    }

    #[test]
    fn restriction_drops_terms() {
        let r = PolyRing::standard(&["x", "y"], Field::Rationals);
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let w = x.pow(4).add(&y.pow(4)).add(&x.mul(&y));
        let res = w.restrict(&[1]);
        assert_eq!(res.to_string(), "y^4");
        assert_eq!(res.ring().vars(), &["y".to_string()]);
    }
}
