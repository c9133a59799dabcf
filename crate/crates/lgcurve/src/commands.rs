//! Command implementations producing [`Report`]s.

use lgcurve_core::hkr::{e2_page, koszul_cohomology_dims, Direction, KoszulRow, PageEntry};
use lgcurve_core::hoch::{bm_entry, hh_ordinary, FiniteAlgebra, HomologyEntry, OrdinaryOptions};
use lgcurve_core::jacobi::{canonical_module, jacobi_data, Milnor};
use lgcurve_core::matfact::{
    ext_dims, graded_audit, graded_mf_to_twist, verify_graded_degrees, verify_mf, ExtMethod,
    GradedAudit, TwistObject,
};
use lgcurve_core::orbifold::orbifold_hh_bm;
use lgcurve_core::poly::{buchberger, DimensionSeries, MonomialOrder};
use lgcurve_core::Error;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{exit, CliError, CliResult};
use crate::input::{Loaded, LoadedMf};
use crate::report::{Report, Table};

/// A report and the exit code it should end the process with.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub code: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, code: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HhVariant {
    Ordinary,
    BorelMoore,
    CompactCohomology,
}

impl HhVariant {
    pub fn name(self) -> &'static str {
        match self {
            HhVariant::Ordinary => "ordinary",
            HhVariant::BorelMoore => "bm",
            HhVariant::CompactCohomology => "compact-cohomology",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtChoice {
    /// Smith form for one variable, truncation otherwise.
    Auto,
    Smith,
    Truncate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MfAction {
    Verify,
    Ext {
        from: Option<String>,
        to: Option<String>,
        method: ExtChoice,
    },
    GradedAudit,
}

fn series_rows(table: &mut Table, s: &DimensionSeries) {
    for (e, n) in &s.dims {
        table.push(vec![json!(e), json!(n)]);
    }
}

fn series_pairs(s: &DimensionSeries) -> Value {
    json!(s
        .dims
        .iter()
        .map(|(e, n)| [*e as i128, *n as i128])
        .collect::<Vec<_>>())
}

pub fn cmd_jacobi(l: &Loaded, require_isolated: bool) -> CliResult<Outcome> {
    let data = jacobi_data(&l.model)?;
    if data.milnor == Milnor::Infinite && require_isolated {
        return Err(Error::NonIsolated.into());
    }
    let mut r = Report::new("jacobi", l.echo());
    r.option("require_isolated", require_isolated);
    r.set(
        "milnor",
        match data.milnor {
            Milnor::Finite(n) => json!(n),
            Milnor::Infinite => json!("infinite"),
        },
    );
    r.set("isolated", data.milnor != Milnor::Infinite);
    r.set("degree", l.model.degree());
    r.set("omega_shift", l.model.volume_degree());
    if let Some(dims) = &data.dims {
        let mut t = Table::new("jacobi_dims", &["degree", "dim"]);
        series_rows(&mut t, dims);
        r.tables.push(t);
        let mut t = Table::new("omega_dims", &["degree", "dim"]);
        series_rows(&mut t, &dims.shifted(l.model.volume_degree()));
        r.tables.push(t);
    }
    if let Some(basis) = &data.basis {
        let ring = l.model.ring();
        let mut t = Table::new("jacobi_basis", &["degree", "monomial"]);
        for m in basis {
            t.push(vec![
                json!(ring.monomial_degree(m)),
                json!(ring.format_monomial(m)),
            ]);
        }
        r.tables.push(t);
    }
    Ok(r.into())
}

fn homology_table(entries: &[HomologyEntry]) -> Table {
    let mut t = Table::new(
        "homology",
        &["degree", "parity", "dim", "stabilized_at", "history"],
    );
    for e in entries {
        let history: Vec<usize> = e.history.iter().map(|h| h.1).collect();
        t.push(vec![
            json!(e.degree),
            json!(e.parity),
            json!(e.dim),
            json!(e.stabilized_at),
            json!(history),
        ]);
    }
    t
}

fn set_totals(r: &mut Report, entries: &[HomologyEntry]) {
    let mut par = [0usize; 2];
    for e in entries {
        par[e.parity as usize] += e.dim;
    }
    r.set("total", par[0] + par[1]);
    r.set("even", par[0]);
    r.set("odd", par[1]);
}

fn polynomial_only(l: &Loaded, what: &str) -> CliResult<()> {
    if l.relations.is_empty() {
        Ok(())
    } else {
        Err(CliError::parse(format!(
            "{what} needs a polynomial model (remove `relations`)"
        )))
    }
}

pub fn cmd_hh(l: &Loaded, variant: HhVariant, window: Option<usize>) -> CliResult<Outcome> {
    let mut r = Report::new("hh", l.echo());
    r.option("variant", variant.name());
    match variant {
        HhVariant::Ordinary => {
            if l.relations.is_empty() {
                return Err(CliError::parse(
                    "ordinary homology needs a finite model (add `relations`)",
                ));
            }
            let gb = buchberger(&l.relations, MonomialOrder::default())?;
            if !gb.is_zero_dimensional() {
                return Err(CliError::parse(
                    "relations must define a finite-dimensional algebra",
                ));
            }
            let alg = FiniteAlgebra::from_quotient(&gb, l.model.potential())?;
            let opts = OrdinaryOptions {
                min_window: l.truncation.min_window.unwrap_or(2),
                max_window: window.or(l.truncation.window).unwrap_or(10),
            };
            r.option("min_window", opts.min_window);
            r.option("max_window", opts.max_window);
            let rep = hh_ordinary(&alg, opts)?;
            r.set("algebra_dim", alg.dim());
            set_totals(&mut r, &rep.entries);
            r.tables.push(homology_table(&rep.entries));
        }
        HhVariant::BorelMoore => {
            polynomial_only(l, "Borel-Moore homology")?;
            let canon = canonical_module(&l.model)?;
            let d = l.model.require_degree()?;
            let degrees: Vec<i64> = match &l.truncation.degrees {
                Some(v) => v.clone(),
                None => {
                    (0..=l.model.ring().weights().iter().map(|&w| d - w as i64).sum()).collect()
                }
            };
            let shifts = l.truncation.shifts.unwrap_or(6);
            r.option("degrees", degrees.clone());
            r.option("shifts", shifts);
            let jobs: Vec<(i64, u8)> = degrees.iter().flat_map(|&e| [(e, 0u8), (e, 1u8)]).collect();
            let entries = jobs
                .par_iter()
                .map(|&(e, p)| bm_entry(&l.model, d, p, e, shifts))
                .collect::<Result<Vec<_>, _>>()?;
            set_totals(&mut r, &entries);
            r.set("omega_total", canon.total);
            r.set("omega_parity", canon.parity);
            r.tables.push(homology_table(&entries));
        }
        HhVariant::CompactCohomology => {
            polynomial_only(l, "compactly supported cohomology")?;
            let row =
                koszul_cohomology_dims(&l.model, Direction::Contract, l.truncation.degree_cap)?;
            if !row.isolated {
                return Err(Error::NonIsolated.into());
            }
            if !row.is_concentrated() {
                return Err(Error::NoStabilization(format!(
                    "polyvector Koszul complex not concentrated up to weight {}",
                    row.degree_bound
                ))
                .into());
            }
            r.option("degree_bound", row.degree_bound);
            let classes = &row.spots[0];
            r.set("total", classes.total());
            r.set("even", classes.total());
            r.set("odd", 0);
            let mut t = Table::new("homology", &["degree", "parity", "dim"]);
            for (e, n) in &classes.dims {
                t.push(vec![json!(e), json!(0), json!(n)]);
            }
            r.tables.push(t);
        }
    }
    Ok(r.into())
}

fn koszul_table(rows: &[&KoszulRow]) -> Table {
    let mut t = Table::new("koszul", &["direction", "spot", "total", "dims"]);
    for row in rows {
        let name = match row.direction {
            Direction::Wedge => "wedge",
            Direction::Contract => "contract",
        };
        for (p, s) in row.spots.iter().enumerate() {
            t.push(vec![
                json!(name),
                json!(p),
                json!(s.total()),
                series_pairs(s),
            ]);
        }
    }
    t
}

pub fn cmd_koszul(l: &Loaded, require_isolated: bool) -> CliResult<Outcome> {
    polynomial_only(l, "the Koszul complexes")?;
    let cap = l.truncation.degree_cap;
    let wedge = koszul_cohomology_dims(&l.model, Direction::Wedge, cap)?;
    if !wedge.isolated && require_isolated {
        return Err(Error::NonIsolated.into());
    }
    let contract = koszul_cohomology_dims(&l.model, Direction::Contract, cap)?;
    let mut r = Report::new("koszul", l.echo());
    r.option("degree_bound", wedge.degree_bound);
    r.option("require_isolated", require_isolated);
    r.set("isolated", wedge.isolated);
    r.set("wedge_concentrated", wedge.is_concentrated());
    r.set("contract_concentrated", contract.is_concentrated());
    r.set("top_spot", wedge.spots.last().map_or(0, |s| s.total()));
    r.tables.push(koszul_table(&[&wedge, &contract]));
    if wedge.isolated {
        let columns = l.truncation.columns.unwrap_or(3);
        r.option("columns", columns);
        let page = e2_page(&l.model, columns, cap)?;
        let mut t = Table::new("e2", &["column", "row", "dim", "truncated_dims"]);
        for (&(i, j), e) in &page.entries {
            match e {
                PageEntry::Finite(n) => t.push(vec![json!(i), json!(j), json!(n), Value::Null]),
                PageEntry::Truncated { dims, .. } => t.push(vec![
                    json!(i),
                    json!(j),
                    json!("infinite"),
                    series_pairs(dims),
                ]),
            }
        }
        r.tables.push(t);
    }
    Ok(r.into())
}

fn mf_echo(l: &Loaded, mf: &LoadedMf) -> std::collections::BTreeMap<String, Value> {
    let mut echo = l.echo();
    let names: Vec<&str> = mf.factorizations.iter().map(|(n, _)| n.as_str()).collect();
    echo.insert("factorizations".into(), json!(names));
    echo.insert("twist".into(), json!(mf.twist.is_some()));
    echo
}

fn audit_row(t: &mut Table, name: &str, a: &GradedAudit) {
    t.push(vec![
        json!(name),
        json!(a.entries_checked),
        json!(a.entry_failures),
        json!(a.morphisms_checked),
        json!(a.morphism_failures),
        json!(a.graded_degrees_ok),
        json!(a.factorization_ok),
        json!(a.passes()),
    ]);
}

pub fn cmd_mf(l: &Loaded, mf: &LoadedMf, action: &MfAction) -> CliResult<Outcome> {
    let mut r = Report::new("mf", mf_echo(l, mf));
    let mut code = 0;
    match action {
        MfAction::Verify => {
            r.option("action", "verify");
            let mut t = Table::new(
                "verify",
                &["name", "rank0", "rank1", "factorization_ok", "graded_ok"],
            );
            let mut all = true;
            for (name, f) in &mf.factorizations {
                let ok = verify_mf(f, &l.model)?;
                let graded = match (&f.shifts, l.model.degree()) {
                    (Some(_), Some(d)) => json!(verify_graded_degrees(f, d)),
                    _ => Value::Null,
                };
                all &= ok && graded != json!(false);
                t.push(vec![
                    json!(name),
                    json!(f.rank0()),
                    json!(f.rank1()),
                    json!(ok),
                    graded,
                ]);
            }
            r.set("all_ok", all);
            r.tables.push(t);
            if !all {
                code = exit::MF_VERIFY;
            }
        }
        MfAction::Ext { from, to, method } => {
            r.option("action", "ext");
            let method = match method {
                ExtChoice::Smith => ExtMethod::Smith,
                ExtChoice::Truncate => ExtMethod::Truncate,
                ExtChoice::Auto if l.model.nvars() == 1 => ExtMethod::Smith,
                ExtChoice::Auto => ExtMethod::Truncate,
            };
            r.option(
                "method",
                if method == ExtMethod::Smith {
                    "smith"
                } else {
                    "truncate"
                },
            );
            r.option("ext_bound", l.truncation.ext_bound);
            let find = |name: &str| {
                mf.factorizations
                    .iter()
                    .position(|(n, _)| n == name)
                    .ok_or_else(|| CliError::parse(format!("no factorization named `{name}`")))
            };
            let all: Vec<usize> = (0..mf.factorizations.len()).collect();
            let sources = match from {
                Some(n) => vec![find(n)?],
                None => all.clone(),
            };
            let targets = match to {
                Some(n) => vec![find(n)?],
                None => all,
            };
            for &i in sources.iter().chain(&targets) {
                let (name, f) = &mf.factorizations[i];
                if !verify_mf(f, &l.model)? {
                    return Err(CliError {
                        code: exit::MF_VERIFY,
                        message: format!("{name} is not a factorization of the potential"),
                    });
                }
            }
            let pairs: Vec<(usize, usize)> = sources
                .iter()
                .flat_map(|&i| targets.iter().map(move |&j| (i, j)))
                .collect();
            let dims = pairs
                .par_iter()
                .map(|&(i, j)| {
                    ext_dims(
                        &mf.factorizations[i].1,
                        &mf.factorizations[j].1,
                        &l.model,
                        method,
                        l.truncation.ext_bound,
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut t = Table::new("ext", &["source", "target", "even", "odd"]);
            for (&(i, j), e) in pairs.iter().zip(&dims) {
                t.push(vec![
                    json!(mf.factorizations[i].0),
                    json!(mf.factorizations[j].0),
                    json!(e.even),
                    json!(e.odd),
                ]);
            }
            r.tables.push(t);
        }
        MfAction::GradedAudit => {
            r.option("action", "graded-audit");
            let d = l.model.require_degree()?;
            let max_degree = l.truncation.degree_cap.unwrap_or(3 * d);
            r.option("max_degree", max_degree);
            let mut objects: Vec<(String, TwistObject)> = Vec::new();
            if let Some(t) = &mf.twist {
                objects.push(("twist".into(), t.clone()));
            }
            for (name, f) in &mf.factorizations {
                objects.push((name.clone(), graded_mf_to_twist(f, d)?));
            }
            let mut t = Table::new(
                "audit",
                &[
                    "name",
                    "entries",
                    "entry_failures",
                    "morphisms",
                    "morphism_failures",
                    "graded_degrees_ok",
                    "factorization_ok",
                    "passes",
                ],
            );
            let mut all = true;
            for (name, obj) in &objects {
                let a = graded_audit(obj, &l.model, max_degree)?;
                all &= a.passes();
                audit_row(&mut t, name, &a);
            }
            r.set("all_pass", all);
            r.tables.push(t);
            if !all {
                code = exit::MF_VERIFY;
            }
        }
    }
    Ok(Outcome { report: r, code })
}

pub fn cmd_orbifold(l: &Loaded) -> CliResult<Outcome> {
    polynomial_only(l, "the orbifold computation")?;
    let action = l
        .group
        .as_ref()
        .ok_or_else(|| CliError::parse("model file has no [group] block"))?;
    let rep = orbifold_hh_bm(&l.model, action)?;
    let mut r = Report::new("orbifold", l.echo());
    r.set("group_order", rep.group_order);
    r.set("total", rep.total());
    r.set("even", rep.parity_totals[0]);
    r.set("odd", rep.parity_totals[1]);
    r.set("twisted_classes", rep.twisted_classes);
    r.set("class_vector", rep.class_vector());
    let mut t = Table::new(
        "sectors",
        &[
            "element",
            "fixed",
            "restricted",
            "parity",
            "classes",
            "invariant",
        ],
    );
    for s in &rep.sectors {
        t.push(vec![
            json!(s.element.to_string()),
            json!(s.fixed_vars),
            json!(s.restricted),
            json!(s.homology.parity),
            json!(s.homology.classes.len()),
            json!(s.invariant.total()),
        ]);
    }
    r.tables.push(t);
    if let Some(totals) = &rep.class_totals {
        let mut t = Table::new("classes", &["index", "dim"]);
        for (k, n) in totals.iter().rev() {
            t.push(vec![json!(k.to_string()), json!(n)]);
        }
        r.tables.push(t);
    }
    Ok(r.into())
}
