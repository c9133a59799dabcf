use alloc::collections::{BTreeMap, VecDeque};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::monomial::monomials_of_degree;
use super::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Term order tag. Only weighted degree-reverse-lexicographic is implemented.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    WeightedDegRevLex,
}

/// A reduced Gröbner basis: monic generators, no leading monomial dividing another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
}

/// Graded dimensions of a quotient ring, keyed by weighted degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DimensionSeries {
    pub dims: BTreeMap<i64, usize>,
}

impl DimensionSeries {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn get(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn shifted(&self, by: i64) -> DimensionSeries {
        DimensionSeries {
            dims: self.dims.iter().map(|(d, n)| (d + by, *n)).collect(),
        }
    }

    pub fn from_degrees(degrees: impl IntoIterator<Item = i64>) -> Self {
        let mut dims = BTreeMap::new();
        for d in degrees {
            *dims.entry(d).or_insert(0) += 1;
        }
        DimensionSeries { dims }
    }
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators
            .iter()
            .filter_map(Polynomial::leading_monomial)
            .collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(Polynomial::is_constant)
    }

    /// Zero-dimensional iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        self.power_bounds().is_some()
    }

    fn power_bounds(&self) -> Option<Vec<u32>> {
        let n = self.ring.nvars();
        if self.is_unit_ideal() {
            return Some(alloc::vec![0; n]);
        }
        let mut bounds: Vec<Option<u32>> = alloc::vec![None; n];
        for m in self.leading_monomials() {
            if let Some((i, e)) = m.pure_power() {
                bounds[i] = Some(bounds[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        bounds.into_iter().collect()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().iter().any(|lm| lm.divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Standard monomials, sorted by weighted degree then term order.
    pub fn standard_monomials(&self, degree_cap: Option<i64>) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        match degree_cap {
            Some(cap) => {
                for d in 0..=cap {
                    for m in monomials_of_degree(self.ring.weights(), d) {
                        if self.is_standard(&m) {
                            out.push(m);
                        }
                    }
                }
            }
            None => {
                let bounds = self.power_bounds().ok_or(Error::NotZeroDimensional)?;
                if bounds.contains(&0) {
                    return Ok(out);
                }
                let mut cur = alloc::vec![0u32; bounds.len()];
                loop {
                    let m = Monomial(cur.clone());
                    if self.is_standard(&m) {
                        out.push(m);
                    }
                    // odometer over the exponent box
                    let mut i = 0;
                    loop {
                        if i == cur.len() {
                            self.sort_monomials(&mut out);
                            return Ok(out);
                        }
                        cur[i] += 1;
                        if cur[i] < bounds[i] {
                            break;
                        }
                        cur[i] = 0;
                        i += 1;
                    }
                }
            }
        }
        self.sort_monomials(&mut out);
        Ok(out)
    }

    fn sort_monomials(&self, v: &mut [Monomial]) {
        v.sort_by(|a, b| self.ring.cmp_monomials(a, b));
    }

    /// Dimensions of the quotient per weighted degree.
    pub fn graded_quotient_dims(&self) -> Result<DimensionSeries> {
        let basis = self.standard_monomials(None)?;
        Ok(DimensionSeries::from_degrees(
            basis.iter().map(|m| self.ring.monomial_degree(m)),
        ))
    }
}

/// Fully reduces `f` modulo the leading terms of `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    reduce(f, &gb.generators)
}

fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let leads: Vec<(Monomial, Scalar)> = divisors
        .iter()
        .filter_map(|g| g.leading().map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let mut rest = f.clone();
    let mut rem = Polynomial::zero(&ring);
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(k, (lm, lc))| lm.quotient_of(&m).map(|q| (k, q, lc)));
        match hit {
            Some((k, q, lc)) => {
                let factor = &c * &lc.inv().expect("nonzero lead");
                rest = rest.sub(&divisors[k].mul_term(&q, &factor));
            }
            None => {
                rem.add_term(m.clone(), &c);
                rest.add_term(m, &-c);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l).expect("divides lcm");
    let b = gm.quotient_of(&l).expect("divides lcm");
    f.mul_term(&a, &fc.inv().expect("nonzero"))
        .sub(&g.mul_term(&b, &gc.inv().expect("nonzero")))
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis> {
    let ring = gens
        .first()
        .ok_or(Error::InvalidAlgebra("empty generator list".into()))?
        .ring()
        .clone();
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let mut basis: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let (li, lj) = (
            basis[i].leading_monomial().expect("nonzero"),
            basis[j].leading_monomial().expect("nonzero"),
        );
        // Buchberger's first criterion
        if li.is_coprime(lj) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            for i in 0..k {
                pairs.push_back((i, k));
            }
        }
    }
    Ok(GroebnerBasis {
        generators: reduce_basis(basis),
        ring,
        order,
    })
}

/// Minimalizes, inter-reduces and sorts (descending leading monomial).
fn reduce_basis(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    if basis.is_empty() {
        return basis;
    }
    let ring = basis[0].ring().clone();
    basis.sort_by(|a, b| {
        ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap().clone();
        if minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(&lm))
        {
            continue;
        }
        minimal.retain(|h| !lm.divides(h.leading_monomial().unwrap()));
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        let lead = minimal[k]
            .leading()
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let tail = minimal[k].sub(&Polynomial::term(&ring, lead.0.clone(), lead.1.clone()));
        let g = Polynomial::term(&ring, lead.0, lead.1).add(&reduce(&tail, &others));
        reduced.push(g.monic());
    }
    reduced.sort_by(|a, b| {
        ring.cmp_monomials(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    reduced
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::scalar::Field;
    use alloc::string::ToString;
    use alloc::vec;

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::standard(vars, Field::Rationals)
    }

    fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| parse_polynomial(t, r).unwrap()).collect()
    }

    fn gb(r: &Arc<PolyRing>, s: &[&str]) -> GroebnerBasis {
        buchberger(&polys(r, s), MonomialOrder::default()).unwrap()
    }

    fn texts(g: &GroebnerBasis) -> Vec<alloc::string::String> {
        g.generators().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn buchberger_examples() {
        let r = ring(&["x", "y"]);
        assert_eq!(texts(&gb(&r, &["x^2", "x*y"])), vec!["x^2", "x*y"]);
        assert_eq!(texts(&gb(&r, &["x - y", "y"])), vec!["x", "y"]);
        let rx = ring(&["x"]);
        assert_eq!(texts(&gb(&rx, &["x^3"])), vec!["x^3"]);
    }

    #[test]
    fn buchberger_nontrivial() {
        // the S-pair of x^2 + y and x*y - 1 adds y^2 + x; the quotient has basis 1, y, x
        let r = ring(&["x", "y"]);
        let g = gb(&r, &["x^2 + y", "x*y - 1"]);
        assert_eq!(texts(&g), vec!["x^2 + y", "x*y - 1", "y^2 + x"]);
        assert_eq!(g.standard_monomials(None).unwrap().len(), 3);
    }

    #[test]
    fn normal_form_examples() {
        let rx = ring(&["x"]);
        let g = gb(&rx, &["x^3"]);
        assert!(g
            .normal_form(&parse_polynomial("x^3", &rx).unwrap())
            .is_zero());
        let g2 = gb(&rx, &["x^2"]);
        assert_eq!(
            g2.normal_form(&parse_polynomial("x^2 + x", &rx).unwrap())
                .to_string(),
            "x"
        );
        let r = ring(&["x", "y"]);
        let g3 = gb(&r, &["x^2", "x*y"]);
        assert!(g3
            .normal_form(&parse_polynomial("y*x^2", &r).unwrap())
            .is_zero());
    }

    #[test]
    fn standard_monomial_examples() {
        let rx = ring(&["x"]);
        assert_eq!(gb(&rx, &["x^3"]).standard_monomials(None).unwrap().len(), 3);
        let r = ring(&["x", "y"]);
        let box_ = gb(&r, &["x^2", "y^2"]).standard_monomials(None).unwrap();
        let names: Vec<_> = box_.iter().map(|m| r.format_monomial(m)).collect();
        assert_eq!(names, vec!["1", "y", "x", "x*y"]);
        assert_eq!(
            gb(&r, &["x^2", "x*y"]).standard_monomials(None),
            Err(Error::NotZeroDimensional)
        );
        assert_eq!(
            gb(&r, &["x^2", "x*y"])
                .standard_monomials(Some(3))
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn graded_dims() {
        let r = ring(&["x", "y", "z"]);
        let g = gb(&r, &["x^2", "y^2", "z^2"]);
        let s = g.graded_quotient_dims().unwrap();
        assert_eq!(
            s.dims.values().copied().collect::<Vec<_>>(),
            vec![1, 3, 3, 1]
        );
        let rx = ring(&["x"]);
        assert_eq!(
            gb(&rx, &["x"]).graded_quotient_dims().unwrap().dims,
            BTreeMap::from([(0, 1)])
        );
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x", "y"]);
        let g = gb(&r, &["x", "x + 1"]);
        assert!(g.is_unit_ideal());
        assert_eq!(texts(&g), vec!["1"]);
        assert!(g.standard_monomials(None).unwrap().is_empty());
    }
}
