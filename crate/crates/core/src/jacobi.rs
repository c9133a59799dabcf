//! Landau-Ginzburg models `(B, W)` and their Jacobi-ring invariants.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::{
    buchberger, DimensionSeries, GroebnerBasis, Monomial, MonomialOrder, PolyRing, Polynomial,
};
use crate::scalar::Field;

/// A polynomial ring with weighted variables and a potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LGModel {
    potential: Polynomial,
}

impl LGModel {
    /// Rejects nonzero constant potentials; zero-variable rings (points) may carry `W = 0`.
    pub fn new(potential: Polynomial) -> Result<Self> {
        let n = potential.ring().nvars();
        if n > 0 && potential.is_constant() {
            return Err(Error::ZeroPotentialGradient);
        }
        Ok(Self { potential })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.potential.ring()
    }

    pub fn potential(&self) -> &Polynomial {
        &self.potential
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    pub fn field(&self) -> Field {
        self.ring().field()
    }

    /// Weighted degree `d` of `W` when homogeneous.
    pub fn degree(&self) -> Option<i64> {
        self.potential.homogeneous_degree()
    }

    pub fn require_degree(&self) -> Result<i64> {
        self.degree().ok_or(Error::NonHomogeneous)
    }

    /// Sum of the variable weights: the degree of `dx_1 ∧ … ∧ dx_n`.
    pub fn volume_degree(&self) -> i64 {
        self.ring().weights().iter().map(|&w| w as i64).sum()
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| self.potential.derivative(i))
            .collect()
    }
}

/// Milnor number: finite, or infinite for non-isolated critical loci.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Milnor {
    Finite(usize),
    Infinite,
}

impl Milnor {
    pub fn finite(self) -> Option<usize> {
        match self {
            Milnor::Finite(n) => Some(n),
            Milnor::Infinite => None,
        }
    }
}

impl core::fmt::Display for Milnor {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Milnor::Finite(n) => write!(f, "{n}"),
            Milnor::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiData {
    pub ideal: GroebnerBasis,
    pub milnor: Milnor,
    /// Graded dimensions; present when `W` is homogeneous and the locus isolated.
    pub dims: Option<DimensionSeries>,
    /// Standard-monomial basis of the Jacobi ring when finite.
    pub basis: Option<Vec<Monomial>>,
}

/// `ω(W)` through its Jacobi dimensions shifted by the volume-form degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalData {
    pub dims: Option<DimensionSeries>,
    pub total: usize,
    pub shift: i64,
    /// `n mod 2`
    pub parity: u8,
}

/// Reduced Gröbner basis of the partial derivatives of `W`.
pub fn jacobi_ideal(model: &LGModel) -> Result<GroebnerBasis> {
    let grad = model.gradient();
    if grad.iter().all(Polynomial::is_zero) {
        return Err(Error::ZeroPotentialGradient);
    }
    buchberger(&grad, MonomialOrder::default())
}

pub fn milnor_number(model: &LGModel) -> Result<Milnor> {
    Ok(jacobi_data(model)?.milnor)
}

pub fn has_isolated_critical_points(model: &LGModel) -> Result<bool> {
    Ok(jacobi_ideal(model)?.is_zero_dimensional())
}

pub fn jacobi_data(model: &LGModel) -> Result<JacobiData> {
    let ideal = jacobi_ideal(model)?;
    if !ideal.is_zero_dimensional() {
        return Ok(JacobiData {
            ideal,
            milnor: Milnor::Infinite,
            dims: None,
            basis: None,
        });
    }
    let basis = ideal.standard_monomials(None)?;
    let dims = model.degree().map(|_| {
        DimensionSeries::from_degrees(basis.iter().map(|m| model.ring().monomial_degree(m)))
    });
    Ok(JacobiData {
        milnor: Milnor::Finite(basis.len()),
        ideal,
        dims,
        basis: Some(basis),
    })
}

/// Graded dimensions of `ω(W)`, the cokernel of `dW ∧ -` on top forms.
pub fn canonical_module(model: &LGModel) -> Result<CanonicalData> {
    let data = jacobi_data(model)?;
    let total = data.milnor.finite().ok_or(Error::NonIsolated)?;
    let shift = model.volume_degree();
    Ok(CanonicalData {
        dims: data.dims.map(|d| d.shifted(shift)),
        total,
        shift,
        parity: (model.nvars() % 2) as u8,
    })
}
