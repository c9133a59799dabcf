//! Cross products `B ♯ G` of finite-dimensional algebras and the map `Ψ`
//! from their Hochschild chains to twisted sector chains.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hoch::{b_minus, b_plus, Carrier, Chain, FiniteAlgebra};
use crate::linalg::SparseVec;
use crate::poly::{GroebnerBasis, Polynomial};
use crate::scalar::Scalar;

use super::action::{GroupAction, GroupElement};

/// Finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |m: &str| Error::InvalidAction(m.into());
        if n == 0
            || table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(bad("multiplication table must be n x n"));
        }
        if (0..n).any(|g| table[0][g] != g || table[g][0] != g) {
            return Err(bad("element 0 must be the identity"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(bad("multiplication is not associative"));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == 0)
                    .ok_or_else(|| bad("missing inverse"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            names,
            table,
            inverse,
        })
    }

    pub fn from_abelian(action: &GroupAction) -> Result<(Self, Vec<GroupElement>)> {
        let elems = action.elements();
        let index: BTreeMap<&GroupElement, usize> =
            elems.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let table = elems
            .iter()
            .map(|g| elems.iter().map(|h| index[&action.compose(g, h)]).collect())
            .collect();
        let names = elems.iter().map(|g| alloc::format!("{g}")).collect();
        Ok((Self::new(names, table)?, elems))
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn conjugate(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(h, g), self.inverse[h])
    }
}

/// A group acting on a finite-dimensional curved algebra by automorphisms.
/// `images[g][i]` is `g(e_i)`.
#[derive(Clone, Debug)]
pub struct FiniteAction {
    pub base: FiniteAlgebra,
    pub group: FiniteGroup,
    pub images: Vec<Vec<SparseVec>>,
}

impl FiniteAction {
    /// Checks that each `g` is a multiplicative, unital representation fixing `W`.
    pub fn new(
        base: FiniteAlgebra,
        group: FiniteGroup,
        images: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let n = base.dim();
        if images.len() != group.order() || images.iter().any(|im| im.len() != n) {
            return Err(Error::InvalidAction(
                "one image per group element and basis vector".into(),
            ));
        }
        if (0..n).any(|i| base.parity(&i) != 0) {
            return Err(Error::InvalidAction("base algebra must be even".into()));
        }
        let act = Self {
            base,
            group,
            images,
        };
        let g_vec = |g: usize, v: &SparseVec| act.apply(g, v);
        for g in 0..act.group.order() {
            for i in 0..n {
                for j in 0..n {
                    let lhs = g_vec(g, &act.base.mul_basis(i, j));
                    let rhs = act.base.mul_vec(&act.images[g][i], &act.images[g][j]);
                    if lhs != rhs {
                        return Err(Error::InvalidAction(alloc::format!(
                            "element {} is not multiplicative",
                            act.group.names[g]
                        )));
                    }
                }
            }
            for h in 0..act.group.order() {
                for i in 0..n {
                    let twice = g_vec(g, &act.images[h][i]);
                    if twice != act.images[act.group.mul(g, h)][i] {
                        return Err(Error::InvalidAction(
                            "images do not compose like the group".into(),
                        ));
                    }
                }
            }
            if g_vec(g, &act.base.curvature_vec()) != act.base.curvature_vec() {
                return Err(Error::NotInvariant);
            }
        }
        Ok(act)
    }

    /// Diagonal action on `k[x]/I` through characters, using a primitive
    /// root of unity of the group exponent.
    pub fn diagonal(gb: &GroebnerBasis, w: &Polynomial, action: &GroupAction) -> Result<Self> {
        if !action.is_invariant(w) {
            return Err(Error::NotInvariant);
        }
        let base = FiniteAlgebra::from_quotient(gb, w)?;
        let field = gb.ring().field();
        let l = action.exponent();
        let zeta = field
            .root_of_unity(l)
            .ok_or(Error::NoRootOfUnity(field, l))?;
        let mut basis = gb.standard_monomials(None)?;
        basis.sort_by(|a, b| gb.ring().cmp_monomials(a, b));
        let (group, elems) = FiniteGroup::from_abelian(action)?;
        let images = elems
            .iter()
            .map(|g| {
                basis
                    .iter()
                    .enumerate()
                    .map(|(i, m)| {
                        SparseVec::from_pairs([(
                            i,
                            zeta.pow(action.phase(g, &action.monomial_character(m))),
                        )])
                    })
                    .collect()
            })
            .collect();
        Self::new(base, group, images)
    }

    pub fn apply(&self, g: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, c) in v.iter() {
            out.axpy(c, &self.images[g][*i]);
        }
        out
    }
}

/// `B ♯ G` with basis `e_i ♯ g` at index `g·dim + i` and curvature `W ♯ 1`.
#[derive(Clone, Debug)]
pub struct CrossProduct {
    pub algebra: FiniteAlgebra,
    pub action: FiniteAction,
}

impl CrossProduct {
    pub fn split(&self, index: usize) -> (usize, usize) {
        let n = self.action.base.dim();
        (index % n, index / n)
    }

    pub fn index(&self, i: usize, g: usize) -> usize {
        g * self.action.base.dim() + i
    }
}

/// `(a ♯ g)(b ♯ h) = a·g(b) ♯ gh`.
pub fn cross_product(action: &FiniteAction) -> Result<CrossProduct> {
    let base = &action.base;
    let n = base.dim();
    let order = action.group.order();
    let dim = n * order;
    let mut names = Vec::with_capacity(dim);
    for g in 0..order {
        for i in 0..n {
            names.push(alloc::format!(
                "{}#{}",
                base.names()[i],
                action.group.names[g]
            ));
        }
    }
    let mut table = vec![vec![SparseVec::new(); dim]; dim];
    for g in 0..order {
        for i in 0..n {
            for h in 0..order {
                for j in 0..n {
                    let prod = base.mul_vec(&SparseVec::unit(i), &action.images[g][j]);
                    let gh = action.group.mul(g, h);
                    table[g * n + i][h * n + j] =
                        SparseVec::from_pairs(prod.iter().map(|(k, c)| (gh * n + k, c.clone())));
                }
            }
        }
    }
    let unit = base.unit();
    let curvature = base.curvature_vec();
    let algebra =
        FiniteAlgebra::new(base.field(), names, table, unit, curvature).map_err(|e| match e {
            Error::CurvatureNotCentral => Error::NotInvariant,
            other => other,
        })?;
    Ok(CrossProduct {
        algebra,
        action: action.clone(),
    })
}

/// Chains of the base algebra, one per sector.
pub type SectorChains = BTreeMap<usize, Chain<usize>>;

fn add_sector(out: &mut SectorChains, g: usize, t: Vec<usize>, c: &Scalar) {
    let chain = out.entry(g).or_default();
    let slot = chain.entry(t.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        chain.remove(&t);
    }
    if chain.is_empty() {
        out.remove(&g);
    }
}

fn add_chain_term(chain: &mut Chain<usize>, t: Vec<usize>, c: &Scalar) {
    let slot = chain.entry(t.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        chain.remove(&t);
    }
}

/// Expands a tensor of linear combinations.
fn expand(slots: &[SparseVec]) -> Vec<(Vec<usize>, Scalar)> {
    let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for v in slots {
        let mut next = Vec::new();
        for (t, c) in &acc {
            for (i, d) in v.iter() {
                let mut u = t.clone();
                u.push(*i);
                next.push((u, c * d));
            }
        }
        acc = next;
    }
    acc
}

/// `Ψ(a_0♯g_0|…|a_n♯g_n) = (a_0 | g_0(a_1) | g_0g_1(a_2) | …)` in the sector
/// `g_0⋯g_n`.
pub fn psi_map(cp: &CrossProduct, tensor: &[usize]) -> SectorChains {
    let act = &cp.action;
    let mut prefix = 0;
    let mut slots = Vec::with_capacity(tensor.len());
    for &x in tensor {
        let (a, g) = cp.split(x);
        slots.push(act.apply(prefix, &SparseVec::unit(a)));
        prefix = act.group.mul(prefix, g);
    }
    let mut out = SectorChains::new();
    for (t, c) in expand(&slots) {
        add_sector(&mut out, prefix, t, &c);
    }
    out
}

fn psi_chain(
    cp: &CrossProduct,
    chain: &Chain<usize>,
    psi: &impl Fn(&CrossProduct, &[usize]) -> SectorChains,
) -> SectorChains {
    let mut out = SectorChains::new();
    for (t, c) in chain {
        for (g, part) in psi(cp, t) {
            for (u, d) in part {
                add_sector(&mut out, g, u, &(c * &d));
            }
        }
    }
    out
}

/// `b_-` on sector `g`: the wrap-around term is `g⁻¹(x_n)·x_0`.
pub fn twisted_b_minus(act: &FiniteAction, g: usize, x: &[usize]) -> Chain<usize> {
    let base = &act.base;
    let n = x.len().saturating_sub(1);
    if n == 0 {
        return Chain::new();
    }
    // untwisted inner terms, then replace the wrap-around
    let mut out = b_minus(base, x, false);
    let sign = if n % 2 == 1 {
        Scalar::integer(-1)
    } else {
        Scalar::one()
    };
    for (k, c) in base.mul(&x[n], &x[0]) {
        let mut t = vec![k];
        t.extend_from_slice(&x[1..n]);
        add_chain_term(&mut out, t, &-(&sign * &c));
    }
    let moved = act.apply(act.group.inverse[g], &SparseVec::unit(x[n]));
    let prod = base.mul_vec(&moved, &SparseVec::unit(x[0]));
    for (k, c) in prod.iter() {
        let mut t = vec![*k];
        t.extend_from_slice(&x[1..n]);
        add_chain_term(&mut out, t, &(&sign * c));
    }
    out
}

/// `Σ_h h·c` with `h·(x_0|…)_g = (h x_0|…)_{hgh⁻¹}`.
fn average(act: &FiniteAction, chains: &SectorChains) -> SectorChains {
    let mut out = SectorChains::new();
    for h in 0..act.group.order() {
        for (&g, chain) in chains {
            let target = act.group.conjugate(h, g);
            for (t, c) in chain {
                let slots: Vec<SparseVec> = t.iter().map(|&i| act.images[h][i].clone()).collect();
                for (u, d) in expand(&slots) {
                    add_sector(&mut out, target, u, &(c * &d));
                }
            }
        }
    }
    out
}

/// `Ψ∘b_+ = b_+∘Ψ` exactly and `Ψ∘b_- = b_-∘Ψ` after averaging over `G`,
/// on all basis tensors of tensor degree `≤ window`.
pub fn psi_chain_check(cp: &CrossProduct, window: usize) -> Result<bool> {
    psi_chain_check_with(cp, window, psi_map)
}

pub fn psi_chain_check_with(
    cp: &CrossProduct,
    window: usize,
    psi: impl Fn(&CrossProduct, &[usize]) -> SectorChains,
) -> Result<bool> {
    if window < 1 {
        return Err(Error::WindowTooSmall(
            "Ψ check needs tensor degree 1".into(),
        ));
    }
    let act = &cp.action;
    for t in 0..=window {
        for tensor in cp.algebra.tensors(t, None, false)? {
            let image = psi(cp, &tensor);
            let lhs_plus = psi_chain(cp, &b_plus(&cp.algebra, &tensor, false), &psi);
            let mut rhs_plus = SectorChains::new();
            let mut rhs_minus = SectorChains::new();
            for (&g, chain) in &image {
                for (u, c) in chain {
                    for (v, d) in b_plus(&act.base, u, false) {
                        add_sector(&mut rhs_plus, g, v, &(c * &d));
                    }
                    for (v, d) in twisted_b_minus(act, g, u) {
                        add_sector(&mut rhs_minus, g, v, &(c * &d));
                    }
                }
            }
            if lhs_plus != rhs_plus {
                return Ok(false);
            }
            let lhs_minus = psi_chain(cp, &b_minus(&cp.algebra, &tensor, false), &psi);
            if average(act, &lhs_minus) != average(act, &rhs_minus) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{buchberger, parse_polynomial, MonomialOrder, PolyRing};
    use crate::scalar::Field;

    fn setup(rel: &str, w: &str, action: GroupAction, field: Field) -> FiniteAction {
        let r = PolyRing::standard(&["x"], field);
        let gb = buchberger(
            &[parse_polynomial(rel, &r).unwrap()],
            MonomialOrder::default(),
        )
        .unwrap();
        FiniteAction::diagonal(&gb, &parse_polynomial(w, &r).unwrap(), &action).unwrap()
    }

    fn z2() -> GroupAction {
        GroupAction::cyclic(2, vec![1]).unwrap()
    }

    #[test]
    fn cross_rule() {
        let act = setup("x^2", "0", z2(), Field::Rationals);
        let cp = cross_product(&act).unwrap();
        // basis: 1#0, x#0, 1#1, x#1
        let x_z = cp.index(1, 1);
        assert!(cp.algebra.mul_basis(x_z, x_z).is_zero());
        let one_z = cp.index(0, 1);
        let x_e = cp.index(1, 0);
        assert_eq!(
            cp.algebra.mul_basis(one_z, x_e),
            SparseVec::from_pairs([(x_z, Scalar::integer(-1))])
        );
        let trivial = setup("x^2", "0", GroupAction::trivial(1), Field::Rationals);
        assert_eq!(cross_product(&trivial).unwrap().algebra.dim(), 2);
    }

    #[test]
    fn not_invariant() {
        let r = PolyRing::standard(&["x"], Field::Rationals);
        let gb = buchberger(
            &[parse_polynomial("x^3", &r).unwrap()],
            MonomialOrder::default(),
        )
        .unwrap();
        let w = parse_polynomial("x", &r).unwrap();
        assert!(matches!(
            FiniteAction::diagonal(&gb, &w, &z2()),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn psi_examples() {
        let act = setup("x^2", "0", z2(), Field::Rationals);
        let cp = cross_product(&act).unwrap();
        let out = psi_map(&cp, &[cp.index(1, 1), cp.index(1, 0)]);
        let mut want = SectorChains::new();
        add_sector(&mut want, 1, vec![1, 1], &Scalar::integer(-1));
        assert_eq!(out, want);
        let single = psi_map(&cp, &[cp.index(1, 1)]);
        assert_eq!(single[&1].get(&vec![1]), Some(&Scalar::one()));
        let ident = psi_map(&cp, &[cp.index(1, 0), cp.index(0, 0)]);
        assert_eq!(ident.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn psi_commutes() {
        let act = setup("x^3", "x^2", z2(), Field::Rationals);
        let cp = cross_product(&act).unwrap();
        assert!(psi_chain_check(&cp, 3).unwrap());
        let corrupt = |cp: &CrossProduct, t: &[usize]| {
            let mut out = psi_map(cp, t);
            if t.len() == 2 {
                for chain in out.values_mut() {
                    for c in chain.values_mut() {
                        *c = -&*c;
                    }
                }
            }
            out
        };
        assert!(!psi_chain_check_with(&cp, 3, corrupt).unwrap());
        let triv = setup("x^3", "x^2", GroupAction::trivial(1), Field::Rationals);
        assert!(psi_chain_check(&cross_product(&triv).unwrap(), 3).unwrap());
        assert!(matches!(
            psi_chain_check(&cp, 0),
            Err(Error::WindowTooSmall(_))
        ));
    }

    #[test]
    fn psi_over_prime_field() {
        let z3 = GroupAction::cyclic(3, vec![1]).unwrap();
        let act = setup("x^4", "x^3", z3, Field::prime(7).unwrap());
        let cp = cross_product(&act).unwrap();
        assert!(psi_chain_check(&cp, 2).unwrap());
    }
}
