//! Diagonal abelian group actions, sectors and the localization formula.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::jacobi::{jacobi_data, LGModel};
use crate::poly::{DimensionSeries, Monomial, Polynomial};
use crate::scalar::Field;

/// Element of `ℤ/d_1 × … × ℤ/d_r`, one residue per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|x| alloc::format!("{x}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Diagonal action: the generator of factor `j` sends `x_i` to
/// `ζ_{d_j}^{weights[i][j]} x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    orders: Vec<u64>,
    weights: Vec<Vec<i64>>,
}

impl GroupAction {
    pub fn cyclic(d: u64, weights: Vec<i64>) -> Result<Self> {
        Self::abelian(vec![d], weights.into_iter().map(|w| vec![w]).collect())
    }

    /// `weights[i][j]` is the character exponent of variable `i` for factor `j`.
    pub fn abelian(orders: Vec<u64>, weights: Vec<Vec<i64>>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidAction("group orders must be positive".into()));
        }
        if weights.iter().any(|w| w.len() != orders.len()) {
            return Err(Error::InvalidAction(
                "one weight per variable and factor".into(),
            ));
        }
        let weights = weights
            .into_iter()
            .map(|w| {
                w.iter()
                    .zip(&orders)
                    .map(|(&x, &d)| x.rem_euclid(d as i64))
                    .collect()
            })
            .collect();
        Ok(Self { orders, weights })
    }

    pub fn trivial(nvars: usize) -> Self {
        Self {
            orders: Vec::new(),
            weights: vec![Vec::new(); nvars],
        }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |l, &d| l.lcm(&d))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// All elements, lexicographic in the factor residues.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (j, &d) in self.orders.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..d).map(move |x| {
                        let mut h = g.clone();
                        h.0[j] = x;
                        h
                    })
                })
                .collect();
        }
        out
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        )
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        )
    }

    /// Character exponents of a monomial, one residue per factor.
    pub fn monomial_character(&self, m: &Monomial) -> Vec<i64> {
        (0..self.orders.len())
            .map(|j| {
                let s: i64 = m
                    .exponents()
                    .iter()
                    .zip(&self.weights)
                    .map(|(&e, w)| e as i64 * w[j])
                    .sum();
                s.rem_euclid(self.orders[j] as i64)
            })
            .collect()
    }

    /// Phase of `g` on a character, as an exponent of `ζ_L` with `L` the group exponent.
    pub fn phase(&self, g: &GroupElement, character: &[i64]) -> u64 {
        let l = self.exponent() as i64;
        let s: i64 = (0..self.orders.len())
            .map(|j| g.0[j] as i64 * character[j] * (l / self.orders[j] as i64))
            .sum();
        s.rem_euclid(l) as u64
    }

    pub fn is_invariant(&self, p: &Polynomial) -> bool {
        p.terms()
            .all(|(m, _)| self.monomial_character(m).iter().all(|&c| c == 0))
    }

    /// Group order must be a unit in the field.
    pub fn check_characteristic(&self, field: Field) -> Result<()> {
        let p = field.characteristic();
        if p != 0 && self.order().is_multiple_of(p) {
            return Err(Error::BadCharacteristic(p));
        }
        Ok(())
    }

    fn variable_character(&self, i: usize) -> Vec<i64> {
        self.weights[i].clone()
    }
}

/// Variables fixed by `g`.
pub fn fixed_locus(action: &GroupAction, g: &GroupElement) -> Vec<usize> {
    (0..action.nvars())
        .filter(|&i| action.phase(g, &action.variable_character(i)) == 0)
        .collect()
}

/// `W` with the variables outside `keep` set to zero, on the subring.
pub fn restrict_potential(model: &LGModel, keep: &[usize]) -> Result<LGModel> {
    LGModel::new(model.potential().restrict(keep))
}

/// Fixed locus of one group element with the restricted potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub element: GroupElement,
    pub fixed_vars: Vec<usize>,
    pub restricted: LGModel,
}

impl Sector {
    pub fn new(model: &LGModel, action: &GroupAction, g: &GroupElement) -> Result<Self> {
        let fixed_vars = fixed_locus(action, g);
        let restricted = restrict_potential(model, &fixed_vars)
            .map_err(|_| Error::NonIsolatedSector(alloc::format!("{g}")))?;
        Ok(Self {
            element: g.clone(),
            fixed_vars,
            restricted,
        })
    }

    pub fn dimension(&self) -> usize {
        self.fixed_vars.len()
    }

    pub fn is_point(&self) -> bool {
        self.fixed_vars.is_empty()
    }
}

/// Basis class `m · dx_F` of `ω(W|_{Y^g})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorClass {
    /// Monomial in the fixed variables.
    pub monomial: Monomial,
    /// Degree in `ω`: weight of `m` plus the fixed weights.
    pub degree: i64,
    /// Character exponents, one per factor.
    pub character: Vec<i64>,
}

impl SectorClass {
    pub fn is_invariant(&self) -> bool {
        self.character.iter().all(|&c| c == 0)
    }
}

/// Borel-Moore classes of one sector with their characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorHomology {
    pub parity: u8,
    pub classes: Vec<SectorClass>,
}

/// `ω(W|_{Y^g})` with characters; a point sector gives one class of trivial
/// character.
pub fn sector_hh_bm(sector: &Sector, action: &GroupAction) -> Result<SectorHomology> {
    let parity = (sector.dimension() % 2) as u8;
    if sector.is_point() {
        return Ok(SectorHomology {
            parity,
            classes: vec![SectorClass {
                monomial: Monomial(Vec::new()),
                degree: 0,
                character: vec![0; action.orders().len()],
            }],
        });
    }
    let name = || Error::NonIsolatedSector(alloc::format!("{}", sector.element));
    if sector.restricted.potential().is_zero() {
        return Err(name());
    }
    let data = jacobi_data(&sector.restricted).map_err(|_| name())?;
    let basis = data.basis.ok_or_else(name)?;
    let ring = sector.restricted.ring();
    let lift = |m: &Monomial| {
        let mut e = vec![0; action.nvars()];
        for (k, &i) in sector.fixed_vars.iter().enumerate() {
            e[i] = m.exponents()[k];
        }
        Monomial(e)
    };
    let volume = Monomial(
        (0..action.nvars())
            .map(|i| sector.fixed_vars.contains(&i) as u32)
            .collect(),
    );
    let classes = basis
        .iter()
        .map(|m| SectorClass {
            monomial: m.clone(),
            degree: ring.monomial_degree(m) + sector.restricted.volume_degree(),
            character: action.monomial_character(&lift(m).mul(&volume)),
        })
        .collect();
    Ok(SectorHomology { parity, classes })
}

/// Dimension of the coinvariants, computed as the invariant classes.
pub fn coinvariant_dims(
    classes: &[SectorClass],
    action: &GroupAction,
    field: Field,
) -> Result<DimensionSeries> {
    action.check_characteristic(field)?;
    Ok(DimensionSeries::from_degrees(
        classes
            .iter()
            .filter(|c| c.is_invariant())
            .map(|c| c.degree),
    ))
}

/// Class index `n_g − 2ε/d`.
pub type ClassIndex = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorReport {
    pub element: GroupElement,
    pub fixed_vars: Vec<String>,
    pub restricted: String,
    pub homology: SectorHomology,
    /// Class counts per character.
    pub characters: BTreeMap<Vec<i64>, usize>,
    pub invariant: DimensionSeries,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldReport {
    pub group_order: u64,
    pub sectors: Vec<SectorReport>,
    /// Invariant classes by class index; identity-sector classes at
    /// `n − 2ε/d`, twisted-sector classes at 0.
    pub class_totals: Option<BTreeMap<ClassIndex, usize>>,
    /// `[even, odd]`
    pub parity_totals: [usize; 2],
    pub twisted_classes: usize,
}

impl OrbifoldReport {
    pub fn total(&self) -> usize {
        self.parity_totals.iter().sum()
    }

    /// Class totals listed from the highest index down.
    pub fn class_vector(&self) -> Option<Vec<usize>> {
        self.class_totals
            .as_ref()
            .map(|t| t.values().rev().copied().collect())
    }
}

/// `(⊕_g HH^BM(Y^g, W|_{Y^g}))_G`.
pub fn orbifold_hh_bm(model: &LGModel, action: &GroupAction) -> Result<OrbifoldReport> {
    if action.nvars() != model.nvars() {
        return Err(Error::InvalidAction("one weight per variable".into()));
    }
    if !action.is_invariant(model.potential()) {
        return Err(Error::NotInvariant);
    }
    action.check_characteristic(model.field())?;
    let d = model.degree().filter(|&d| d > 0);
    let ring = model.ring();
    let mut sectors = Vec::new();
    let mut class_totals: BTreeMap<ClassIndex, usize> = BTreeMap::new();
    let mut parity_totals = [0usize; 2];
    let mut twisted_classes = 0;
    for g in action.elements() {
        let sector = Sector::new(model, action, &g)?;
        let homology = sector_hh_bm(&sector, action)?;
        let invariant = coinvariant_dims(&homology.classes, action, model.field())?;
        let mut characters = BTreeMap::new();
        for c in &homology.classes {
            *characters.entry(c.character.clone()).or_insert(0) += 1;
        }
        let n = invariant.total();
        parity_totals[homology.parity as usize] += n;
        if let Some(d) = d {
            for (&eps, &count) in &invariant.dims {
                let k = if g.is_identity() {
                    Ratio::from_integer(sector.dimension() as i64) - Ratio::new(2 * eps, d)
                } else {
                    Ratio::from_integer(0)
                };
                *class_totals.entry(k).or_insert(0) += count;
            }
        }
        if !g.is_identity() {
            twisted_classes += n;
        }
        sectors.push(SectorReport {
            fixed_vars: sector
                .fixed_vars
                .iter()
                .map(|&i| ring.vars()[i].clone())
                .collect(),
            restricted: alloc::format!("{}", sector.restricted.potential()),
            element: g,
            homology,
            characters,
            invariant,
        });
    }
    Ok(OrbifoldReport {
        group_order: action.order(),
        sectors,
        class_totals: d.map(|_| class_totals),
        parity_totals,
        twisted_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, PolyRing};
    use alloc::string::ToString;

    fn model(vars: &[&str], w: &str) -> LGModel {
        LGModel::new(parse_polynomial(w, &PolyRing::standard(vars, Field::Rationals)).unwrap())
            .unwrap()
    }

    fn quartic() -> (LGModel, GroupAction) {
        (
            model(&["x", "y", "z", "w"], "x^4 + y^4 + z^4 + w^4"),
            GroupAction::cyclic(4, vec![1, 1, 1, 1]).unwrap(),
        )
    }

    #[test]
    fn fixed_loci() {
        let (_, g4) = quartic();
        assert_eq!(fixed_locus(&g4, &g4.identity()), vec![0, 1, 2, 3]);
        assert!(fixed_locus(&g4, &GroupElement(vec![1])).is_empty());
        assert_eq!(
            fixed_locus(&g4, &GroupElement(vec![2])),
            Vec::<usize>::new()
        );
        let z2 = GroupAction::cyclic(2, vec![1, 0]).unwrap();
        assert_eq!(fixed_locus(&z2, &GroupElement(vec![1])), vec![1]);
    }

    #[test]
    fn restriction() {
        let m = model(&["x", "y"], "x^4 + y^4");
        let r = restrict_potential(&m, &[1]).unwrap();
        assert_eq!(r.potential().to_string(), "y^4");
        assert_eq!(restrict_potential(&m, &[0, 1]).unwrap(), m);
        let (q, _) = quartic();
        assert!(restrict_potential(&q, &[]).unwrap().potential().is_zero());
    }

    #[test]
    fn sector_classes() {
        let (q, g4) = quartic();
        let id = sector_hh_bm(&Sector::new(&q, &g4, &g4.identity()).unwrap(), &g4).unwrap();
        assert_eq!(id.classes.len(), 81);
        for c in &id.classes {
            let m = c.monomial.total_degree() as i64;
            assert_eq!(c.character, vec![(m + 4) % 4]);
        }
        let tw = sector_hh_bm(&Sector::new(&q, &g4, &GroupElement(vec![1])).unwrap(), &g4).unwrap();
        assert_eq!(tw.classes.len(), 1);
        assert!(tw.classes[0].is_invariant());
        let m = model(&["x", "y"], "x^4 + y^4");
        let z2 = GroupAction::cyclic(2, vec![1, 0]).unwrap();
        let s = sector_hh_bm(&Sector::new(&m, &z2, &GroupElement(vec![1])).unwrap(), &z2).unwrap();
        assert_eq!(s.classes.len(), 3);
        assert!(s.classes.iter().all(SectorClass::is_invariant));
    }

    #[test]
    fn coinvariants() {
        let (q, g4) = quartic();
        let id = sector_hh_bm(&Sector::new(&q, &g4, &g4.identity()).unwrap(), &g4).unwrap();
        let inv = coinvariant_dims(&id.classes, &g4, Field::Rationals).unwrap();
        assert_eq!((inv.get(4), inv.get(8), inv.get(12)), (1, 19, 1));
        assert_eq!(
            coinvariant_dims(&id.classes, &g4, Field::prime(2).unwrap()),
            Err(Error::BadCharacteristic(2))
        );
        let odd = SectorClass {
            monomial: Monomial(vec![1]),
            degree: 1,
            character: vec![1],
        };
        assert_eq!(
            coinvariant_dims(&[odd], &g4, Field::Rationals)
                .unwrap()
                .total(),
            0
        );
    }

    #[test]
    fn quartic_report() {
        let (q, g4) = quartic();
        let r = orbifold_hh_bm(&q, &g4).unwrap();
        assert_eq!(r.class_vector(), Some(vec![1, 22, 1]));
        assert_eq!(r.twisted_classes, 3);
        assert_eq!(
            r.total(),
            r.sectors.iter().map(|s| s.invariant.total()).sum::<usize>()
        );
    }

    #[test]
    fn cubic_and_trivial() {
        let c = model(&["x", "y", "z"], "x^3 + y^3 + z^3");
        let r = orbifold_hh_bm(&c, &GroupAction::cyclic(3, vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(r.parity_totals, [2, 2]);
        let x2 = model(&["x"], "x^2");
        let t = orbifold_hh_bm(&x2, &GroupAction::trivial(1)).unwrap();
        assert_eq!((t.total(), t.parity_totals), (1, [0, 1]));
        assert_eq!(
            orbifold_hh_bm(&x2, &GroupAction::cyclic(3, vec![1]).unwrap()),
            Err(Error::NotInvariant)
        );
    }

    #[test]
    fn non_isolated_sector() {
        let m = model(&["x", "y"], "x^2*y^2");
        let z2 = GroupAction::cyclic(2, vec![1, 1]).unwrap();
        assert!(matches!(
            orbifold_hh_bm(&m, &z2),
            Err(Error::NonIsolatedSector(_))
        ));
    }
}
