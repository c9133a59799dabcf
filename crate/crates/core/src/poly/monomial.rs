use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector, one entry per ring variable.
///
/// The derived `Ord` is plain lexicographic on exponents and only used for
/// storage; term orders are supplied by [`super::PolyRing::cmp_monomials`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(alloc::vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = alloc::vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `x_i^e` with `e > 0`, returns `(i, e)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }
}

/// Weighted degree-reverse-lexicographic comparison.
pub fn cmp_wdegrevlex(a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
    match a.weighted_degree(weights).cmp(&b.weighted_degree(weights)) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// All monomials of weighted degree exactly `degree`, in lexicographic order.
pub fn monomials_of_degree(weights: &[u32], degree: i64) -> Vec<Monomial> {
    let mut out = Vec::new();
    if degree < 0 {
        return out;
    }
    let mut cur = alloc::vec![0u32; weights.len()];
    fill(weights, 0, degree, &mut cur, &mut out);
    out
}

fn fill(weights: &[u32], i: usize, rest: i64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i == weights.len() {
        if rest == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let w = weights[i] as i64;
    let mut e = 0;
    while e * w <= rest {
        cur[i] = e as u32;
        fill(weights, i + 1, rest - e * w, cur, out);
        e += 1;
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let w = [1, 1, 1];
        let xy = Monomial(vec![1, 1, 0]);
        let xz = Monomial(vec![1, 0, 1]);
        let y2 = Monomial(vec![0, 2, 0]);
        assert_eq!(cmp_wdegrevlex(&xy, &xz, &w), Ordering::Greater);
        assert_eq!(cmp_wdegrevlex(&y2, &xz, &w), Ordering::Greater);
        assert_eq!(
            cmp_wdegrevlex(&Monomial(vec![2, 0, 0]), &xy, &w),
            Ordering::Greater
        );
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert!(monomials_of_degree(&[2], 3).is_empty());
    }
}
