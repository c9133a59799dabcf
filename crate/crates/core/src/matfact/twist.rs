//! Twisted objects over `B_W ♯ ℤ/d` with the hat grading, and their
//! translation to graded matrix factorizations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jacobi::LGModel;
use crate::poly::Polynomial;

use super::factorization::{verify_graded_degrees, verify_mf, MatrixFactorization, PolyMatrix};

/// A summand `(a/d)[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub a: i64,
    pub k: i64,
}

/// Hat degree of `f ∈ Hom((i/d)[k], (j/d)[l])` of ordinary degree `f_degree`:
/// `2(|f| − j + i)/d − (l − k)`.
pub fn hat_degree(d: i64, f_degree: i64, src: Summand, dst: Summand) -> Result<i64> {
    let gap = f_degree - dst.a + src.a;
    if d <= 0 || gap.rem_euclid(d) != 0 {
        return Err(Error::DegreeConstraintViolated {
            degree: f_degree,
            modulus: d,
        });
    }
    Ok(2 * gap / d - (dst.k - src.k))
}

/// Twist `c` of the summand `B(c)` that `(a/d)[k]` becomes: `kd/2 + a` for
/// even `k`, `(k+1)d/2 + a` for odd `k`.
pub fn summand_twist(d: i64, s: Summand) -> i64 {
    if s.k.rem_euclid(2) == 0 {
        s.k.div_euclid(2) * d + s.a
    } else {
        (s.k + 1).div_euclid(2) * d + s.a
    }
}

/// Summand with residue in `0..d` whose twist is `twist` on the given side.
pub fn summand_for_twist(d: i64, twist: i64, odd: bool) -> Summand {
    let q = twist.div_euclid(d);
    Summand {
        a: twist.rem_euclid(d),
        k: if odd { 2 * q - 1 } else { 2 * q },
    }
}

/// `(⊕ (a_i/d)[k_i], δ)`; `delta[r][c]` is the component from summand `c`
/// to summand `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistObject {
    pub d: i64,
    pub summands: Vec<Summand>,
    pub delta: PolyMatrix,
}

impl TwistObject {
    /// Checks that every nonzero entry of `δ` is homogeneous of hat degree 1.
    pub fn new(d: i64, summands: Vec<Summand>, delta: PolyMatrix) -> Result<Self> {
        let n = summands.len();
        if delta.rows() != n || delta.cols() != n {
            return Err(Error::ShapeMismatch(alloc::format!("δ must be {n}x{n}")));
        }
        for r in 0..n {
            for c in 0..n {
                let f = delta.get(r, c);
                if f.is_zero() {
                    continue;
                }
                let deg = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
                let h = hat_degree(d, deg, summands[c], summands[r])?;
                if h != 1 {
                    return Err(Error::ParityViolation(alloc::format!(
                        "δ entry {r},{c} has hat degree {h}, expected 1"
                    )));
                }
            }
        }
        Ok(Self { d, summands, delta })
    }
}

/// `W·id + δ∘δ = 0`.
pub fn maurer_cartan_check(obj: &TwistObject, model: &LGModel) -> Result<bool> {
    let n = obj.summands.len();
    let sq = obj.delta.mul(&obj.delta)?;
    Ok(sq.add(&PolyMatrix::scalar(model.potential(), n))?.is_zero())
}

/// Even-`k` summands go to `E_0`, odd-`k` summands to `E_1`.
/// `P_0 = δ|_{E_0→E_1}` and `P_1 = −δ|_{E_1→E_0}`, turning
/// `δ² = −W` into `P² = W`.
pub fn twist_to_graded_mf(obj: &TwistObject, model: &LGModel) -> Result<MatrixFactorization> {
    let ring = model.ring();
    let even: Vec<usize> = (0..obj.summands.len())
        .filter(|&i| obj.summands[i].k.rem_euclid(2) == 0)
        .collect();
    let odd: Vec<usize> = (0..obj.summands.len())
        .filter(|&i| obj.summands[i].k.rem_euclid(2) == 1)
        .collect();
    for side in [&even, &odd] {
        for &r in side {
            for &c in side {
                if !obj.delta.get(r, c).is_zero() {
                    return Err(Error::ParityViolation(alloc::format!(
                        "δ maps summand {c} to {r} of equal parity"
                    )));
                }
            }
        }
    }
    if !maurer_cartan_check(obj, model)? {
        return Err(
            if (even.is_empty() || odd.is_empty()) && !model.potential().is_zero() {
                Error::ParityViolation("all summands have the same parity but W ≠ 0".into())
            } else {
                Error::MaurerCartanFails
            },
        );
    }
    let mut p0 = PolyMatrix::zero(ring, odd.len(), even.len());
    let mut p1 = PolyMatrix::zero(ring, even.len(), odd.len());
    for (i, &e) in even.iter().enumerate() {
        for (j, &o) in odd.iter().enumerate() {
            p0.set(j, i, obj.delta.get(o, e).clone());
            p1.set(i, j, obj.delta.get(e, o).neg());
        }
    }
    let twists = |idx: &[usize]| {
        idx.iter()
            .map(|&i| summand_twist(obj.d, obj.summands[i]))
            .collect()
    };
    MatrixFactorization::new(p0, p1)?.with_shifts(twists(&even), twists(&odd))
}

/// Inverse of [`twist_to_graded_mf`] on objects with residues in `0..d`.
pub fn graded_mf_to_twist(mf: &MatrixFactorization, d: i64) -> Result<TwistObject> {
    let (s0, s1) = mf.grading(d)?;
    let ring = mf.ring();
    let (r0, r1) = (mf.rank0(), mf.rank1());
    let summands: Vec<Summand> = s0
        .iter()
        .map(|&t| summand_for_twist(d, t, false))
        .chain(s1.iter().map(|&t| summand_for_twist(d, t, true)))
        .collect();
    let mut delta = PolyMatrix::zero(ring, r0 + r1, r0 + r1);
    for i in 0..r0 {
        for j in 0..r1 {
            delta.set(r0 + j, i, mf.p0.get(j, i).clone());
            delta.set(i, r0 + j, mf.p1.get(i, j).neg());
        }
    }
    TwistObject::new(d, summands, delta)
}

/// Ordinary degree of `x` as a map `B(src twist) → B(dst twist)`, checked
/// against the parity-dependent multiple of `d` fixed by the hat degree.
pub fn morphism_degree_identity(d: i64, f_degree: i64, src: Summand, dst: Summand) -> Result<bool> {
    let hat = hat_degree(d, f_degree, src, dst)?;
    let adjusted = f_degree - summand_twist(d, dst) + summand_twist(d, src);
    let expected = match (src.k.rem_euclid(2), dst.k.rem_euclid(2)) {
        (0, 1) => (hat - 1) / 2 * d,
        (1, 0) => (hat + 1) / 2 * d,
        _ => hat / 2 * d,
    };
    let halves_integral = match (src.k.rem_euclid(2), dst.k.rem_euclid(2)) {
        (0, 1) | (1, 0) => hat.rem_euclid(2) == 1,
        _ => hat.rem_euclid(2) == 0,
    };
    Ok(halves_integral && adjusted == expected && adjusted.rem_euclid(d) == 0)
}

/// Outcome of a graded audit of one twisted object.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedAudit {
    pub entries_checked: usize,
    pub entry_failures: usize,
    pub morphisms_checked: usize,
    pub morphism_failures: usize,
    pub graded_degrees_ok: bool,
    pub factorization_ok: bool,
}

impl GradedAudit {
    pub fn passes(&self) -> bool {
        self.entry_failures == 0
            && self.morphism_failures == 0
            && self.graded_degrees_ok
            && self.factorization_ok
    }
}

/// Translates `obj`, checks every `P` entry has degree 0 (`E_0 → E_1`) or
/// `d` (`E_1 → E_0`), and checks the morphism degree identities for all
/// summand pairs and ordinary degrees `0..=max_degree`.
pub fn graded_audit(obj: &TwistObject, model: &LGModel, max_degree: i64) -> Result<GradedAudit> {
    let d = obj.d;
    let mf = twist_to_graded_mf(obj, model)?;
    let mut audit = GradedAudit {
        graded_degrees_ok: verify_graded_degrees(&mf, d),
        factorization_ok: verify_mf(&mf, model)?,
        ..Default::default()
    };
    let n = obj.summands.len();
    for r in 0..n {
        for c in 0..n {
            let f = obj.delta.get(r, c);
            if f.is_zero() {
                continue;
            }
            audit.entries_checked += 1;
            let (src, dst) = (obj.summands[c], obj.summands[r]);
            let adjusted = f.homogeneous_degree().unwrap_or(i64::MIN) - summand_twist(d, dst)
                + summand_twist(d, src);
            let want = if src.k.rem_euclid(2) == 0 { 0 } else { d };
            if adjusted != want {
                audit.entry_failures += 1;
            }
        }
    }
    for &src in &obj.summands {
        for &dst in &obj.summands {
            for deg in 0..=max_degree {
                if (deg - dst.a + src.a).rem_euclid(d) != 0 {
                    continue;
                }
                audit.morphisms_checked += 1;
                if !morphism_degree_identity(d, deg, src, dst)? {
                    audit.morphism_failures += 1;
                }
            }
        }
    }
    Ok(audit)
}

/// Koszul factorization `⊗ (p_i, q_i)` with `p_i q_i` summing to `W`, graded
/// so the first summand of each factor sits at twist `base_twists[i]`.
pub fn koszul_factorization(
    pieces: &[(Polynomial, Polynomial)],
    base_twists: &[i64],
    d: i64,
) -> Result<MatrixFactorization> {
    let mut out: Option<MatrixFactorization> = None;
    for ((p, q), &t) in pieces.iter().zip(base_twists) {
        let deg = p.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
        let piece = MatrixFactorization::rank_one(p, q).with_shifts(vec![t], vec![t + deg])?;
        if !verify_graded_degrees(&piece, d) {
            return Err(Error::NonHomogeneous);
        }
        out = Some(match out {
            None => piece,
            Some(acc) => acc.tensor(&piece, d)?,
        });
    }
    out.ok_or_else(|| Error::ShapeMismatch("no factors".into()))
}
