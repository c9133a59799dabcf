//! Model and factorization files.
//!
//! A model file is TOML:
//!
//! ```toml
//! [field]                 # optional, rationals by default
//! kind = "prime"          # "rationals" | "prime"
//! characteristic = 7
//!
//! [ring]
//! variables = ["x", "y"]
//! weights = [1, 1]        # optional, all 1 by default
//!
//! [model]
//! potential = "x^3 + y^3"
//! relations = ["x^2"]     # optional; makes the model the finite algebra k[x]/(relations)
//!
//! [group]                 # optional diagonal abelian action
//! order = 3               # cyclic: one weight per variable
//! weights = [1, 1]
//! # orders = [2, 2]       # product of cyclic groups: weights[var][factor]
//! # weights = [[1, 0], [0, 1]]
//!
//! [truncation]            # optional
//! window = 10             # largest tensor window (ordinary homology)
//! min_window = 2
//! shifts = 6              # Borel-Moore r-shifts
//! degrees = [0, 1, 2]     # Borel-Moore form weights
//! degree_cap = 12         # Koszul and audit degree bound
//! columns = 3             # spectral page columns
//! ext_bound = 20          # truncated Ext degree bound
//! ```
//!
//! A factorization file lists `[[factorization]]` tables with `p0`, `p1`
//! (rows of polynomial strings), an optional `name` and optional
//! `shifts = { even = [...], odd = [...] }`, and an optional `[twist]` table
//! with `d`, `summands = [[a, k], ...]` and `delta` rows.

use std::collections::BTreeMap;
use std::sync::Arc;

use lgcurve_core::jacobi::LGModel;
use lgcurve_core::matfact::{MatrixFactorization, PolyMatrix, Summand, TwistObject};
use lgcurve_core::orbifold::GroupAction;
use lgcurve_core::poly::{parse_polynomial, PolyRing, Polynomial};
use lgcurve_core::Field;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub field: Option<FieldSpec>,
    pub ring: RingSpec,
    pub model: ModelSpec,
    pub group: Option<GroupSpec>,
    #[serde(default)]
    pub truncation: Truncation,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Rationals,
    Prime,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub characteristic: Option<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<String>,
    pub weights: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub potential: String,
    pub relations: Option<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupWeights {
    Cyclic(Vec<i64>),
    Abelian(Vec<Vec<i64>>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: Option<u64>,
    pub orders: Option<Vec<u64>>,
    pub weights: GroupWeights,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub window: Option<usize>,
    pub min_window: Option<usize>,
    pub shifts: Option<usize>,
    pub degrees: Option<Vec<i64>>,
    pub degree_cap: Option<i64>,
    pub columns: Option<usize>,
    pub ext_bound: Option<i64>,
}

/// A parsed model file.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub model: LGModel,
    /// Relations of a finite model; empty for polynomial models.
    pub relations: Vec<Polynomial>,
    pub group: Option<GroupAction>,
    pub truncation: Truncation,
}

/// Parses `rationals` or `prime:P`.
pub fn parse_field(text: &str) -> CliResult<Field> {
    match text.trim() {
        "rationals" | "QQ" => Ok(Field::Rationals),
        other => {
            let p = other
                .strip_prefix("prime:")
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| {
                    CliError::parse(format!(
                        "field `{other}`: expected `rationals` or `prime:P`"
                    ))
                })?;
            Ok(Field::prime(p)?)
        }
    }
}

fn field_of(spec: &Option<FieldSpec>) -> CliResult<Field> {
    match spec {
        None => Ok(Field::Rationals),
        Some(FieldSpec {
            kind: FieldKind::Rationals,
            characteristic: None | Some(0),
        }) => Ok(Field::Rationals),
        Some(FieldSpec {
            kind: FieldKind::Rationals,
            ..
        }) => Err(CliError::parse("rationals take no characteristic")),
        Some(FieldSpec {
            kind: FieldKind::Prime,
            characteristic,
        }) => {
            let p = characteristic
                .ok_or_else(|| CliError::parse("prime field needs `characteristic`"))?;
            Ok(Field::prime(p)?)
        }
    }
}

fn parse_in(text: &str, ring: &Arc<PolyRing>, what: &str) -> CliResult<Polynomial> {
    parse_polynomial(text, ring).map_err(|e| CliError::parse(format!("{what} `{text}`: {e}")))
}

impl ModelFile {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::parse(e.to_string()))
    }

    /// Builds the model, with `field` overriding the file's field.
    pub fn load(&self, field: Option<Field>) -> CliResult<Loaded> {
        let field = match field {
            Some(f) => f,
            None => field_of(&self.field)?,
        };
        let n = self.ring.variables.len();
        let weights = self.ring.weights.clone().unwrap_or_else(|| vec![1; n]);
        if weights.len() != n {
            return Err(CliError::parse("one weight per variable"));
        }
        let ring = PolyRing::new(self.ring.variables.clone(), weights, field)
            .map_err(|e| CliError::parse(e.to_string()))?;
        let potential = parse_in(&self.model.potential, &ring, "potential")?;
        let model = LGModel::new(potential).map_err(|e| CliError::parse(e.to_string()))?;
        let relations = self
            .model
            .relations
            .iter()
            .flatten()
            .map(|r| parse_in(r, &ring, "relation"))
            .collect::<CliResult<Vec<_>>>()?;
        let group = self.group.as_ref().map(|g| g.action(n)).transpose()?;
        Ok(Loaded {
            model,
            relations,
            group,
            truncation: self.truncation.clone(),
        })
    }
}

impl GroupSpec {
    fn action(&self, nvars: usize) -> CliResult<GroupAction> {
        let action = match (&self.order, &self.orders, &self.weights) {
            (Some(d), None, GroupWeights::Cyclic(w)) => GroupAction::cyclic(*d, w.clone()),
            (None, Some(ds), GroupWeights::Abelian(w)) => GroupAction::abelian(ds.clone(), w.clone()),
            (None, None, _) => return Err(CliError::parse("group needs `order` or `orders`")),
            _ => {
                return Err(CliError::parse(
                    "group: use `order` with a flat weight list or `orders` with one weight list per variable",
                ))
            }
        }
        .map_err(|e| CliError::parse(e.to_string()))?;
        if action.nvars() != nvars {
            return Err(CliError::parse("group: one weight entry per variable"));
        }
        Ok(action)
    }
}

impl Loaded {
    pub fn field(&self) -> Field {
        self.model.field()
    }

    /// Inputs echoed into every report.
    pub fn echo(&self) -> BTreeMap<String, Value> {
        let ring = self.model.ring();
        let mut out = BTreeMap::new();
        out.insert("field".into(), json!(self.field().to_string()));
        out.insert("variables".into(), json!(ring.vars()));
        out.insert("weights".into(), json!(ring.weights()));
        out.insert(
            "potential".into(),
            json!(self.model.potential().to_string()),
        );
        if !self.relations.is_empty() {
            let rel: Vec<String> = self.relations.iter().map(ToString::to_string).collect();
            out.insert("relations".into(), json!(rel));
        }
        if let Some(g) = &self.group {
            out.insert(
                "group".into(),
                json!({ "orders": g.orders(), "weights": g.weights() }),
            );
        }
        out
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MfFile {
    #[serde(default)]
    pub factorization: Vec<FactorizationSpec>,
    pub twist: Option<TwistSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorizationSpec {
    pub name: Option<String>,
    pub p0: Vec<Vec<String>>,
    pub p1: Vec<Vec<String>>,
    pub shifts: Option<ShiftSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSpec {
    pub even: Vec<i64>,
    pub odd: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistSpec {
    pub d: i64,
    pub summands: Vec<[i64; 2]>,
    pub delta: Vec<Vec<String>>,
}

/// Named factorizations and an optional twisted object.
#[derive(Clone, Debug)]
pub struct LoadedMf {
    pub factorizations: Vec<(String, MatrixFactorization)>,
    pub twist: Option<TwistObject>,
}

fn matrix(rows: &[Vec<String>], ring: &Arc<PolyRing>, what: &str) -> CliResult<PolyMatrix> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| parse_in(t, ring, what))
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, rows).map_err(|e| CliError::parse(format!("{what}: {e}")))
}

impl MfFile {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::parse(e.to_string()))
    }

    pub fn load(&self, ring: &Arc<PolyRing>) -> CliResult<LoadedMf> {
        let mut factorizations = Vec::new();
        for (i, f) in self.factorization.iter().enumerate() {
            let name = f.name.clone().unwrap_or_else(|| format!("F{i}"));
            let p0 = matrix(&f.p0, ring, &format!("{name}.p0"))?;
            let p1 = matrix(&f.p1, ring, &format!("{name}.p1"))?;
            let mut mf = MatrixFactorization::new(p0, p1)
                .map_err(|e| CliError::parse(format!("{name}: {e}")))?;
            if let Some(s) = &f.shifts {
                mf = mf
                    .with_shifts(s.even.clone(), s.odd.clone())
                    .map_err(|e| CliError::parse(format!("{name}: {e}")))?;
            }
            factorizations.push((name, mf));
        }
        let twist = match &self.twist {
            None => None,
            Some(t) => {
                let summands = t.summands.iter().map(|&[a, k]| Summand { a, k }).collect();
                let delta = matrix(&t.delta, ring, "twist.delta")?;
                Some(
                    TwistObject::new(t.d, summands, delta)
                        .map_err(|e| CliError::parse(format!("twist: {e}")))?,
                )
            }
        };
        Ok(LoadedMf {
            factorizations,
            twist,
        })
    }
}
