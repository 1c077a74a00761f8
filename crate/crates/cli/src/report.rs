//! Builds the output documents from core computations.

use std::collections::BTreeMap;

use confalg_core::algebra::{AxiomReport, ConformalAlgebra, Element};
use confalg_core::annihilation::{compare_closed_form, filtration_check, basis_up_to, Annihilation};
use confalg_core::lie::{derived_series, is_nilpotent, is_solvable};
use confalg_core::module::{
    family_verdict, irreducibility_verdict, rank1_classify, submodule_scan, Rank1Action,
};
use confalg_core::rational::int;
use confalg_core::{Error as CoreError, Rational, VarId};

use crate::doc::*;
use crate::error::CliError;

pub const ANN_MAX_LABEL: i64 = 6;
pub const ANN_TABLE_LABEL: i64 = 1;
pub const DEFAULT_DEGREE: u32 = 4;
pub const DEFAULT_DMAX: u32 = 3;

fn check_doc(alg: &ConformalAlgebra, report: &AxiomReport) -> CheckDoc {
    CheckDoc {
        passed: report.passed(),
        checked: report.entries.len(),
        failures: report
            .failures()
            .map(|r| ResidualDoc {
                gens: r.gens.iter().map(|&g| alg.generators()[g].name.clone()).collect(),
                residual: alg.show(&r.residual),
            })
            .collect(),
    }
}

pub fn axiom_doc(alg: &ConformalAlgebra) -> AxiomDoc {
    AxiomDoc { skew: check_doc(alg, &alg.check_skew()), jacobi: check_doc(alg, &alg.check_jacobi()) }
}

fn axioms_pass(doc: &AxiomDoc) -> bool {
    doc.skew.passed && doc.jacobi.passed
}

/// Symbolic check on `alg` (with `bindings` applied), then one check per grid point.
pub fn verify(
    alg: &ConformalAlgebra,
    bindings: &BTreeMap<VarId, Rational>,
    grid: &[BTreeMap<VarId, Rational>],
) -> Result<VerifyDoc, CliError> {
    let base = alg.specialize(bindings)?;
    let symbolic = axiom_doc(&base);
    let mut points = Vec::new();
    for point in grid {
        let spec = base.specialize(point)?;
        points.push(GridPointDoc { bindings: bindings_doc(point), axioms: axiom_doc(&spec) });
    }
    let passed = axioms_pass(&symbolic) && points.iter().all(|p| axioms_pass(&p.axioms));
    Ok(VerifyDoc { algebra: base.name.clone(), symbolic, grid: points, passed })
}

pub fn product_table(alg: &ConformalAlgebra) -> Result<Vec<ProductDoc>, CliError> {
    let names: Vec<&str> = alg.generators().iter().map(|g| g.name.as_str()).collect();
    let mut out = Vec::new();
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let (x, y) = (Element::generator(i), Element::generator(j));
            let order = alg.locality_order(&x, &y)?;
            for k in 0..order {
                let value = alg.jth_product(&x, &y, k)?;
                if !value.is_zero() {
                    out.push(ProductDoc { left: names[i].into(), right: names[j].into(), j: k, value: alg.show(&value) });
                }
            }
        }
    }
    Ok(out)
}

/// Closed-form comparison and filtration check up to `max_label`, plus the
/// bracket and `∂` tables on labels `≤ 1`.
pub fn annihilation(alg: &ConformalAlgebra, max_label: &Rational) -> Result<AnnDoc, CliError> {
    let ann = Annihilation::new(alg);
    let small = basis_up_to(alg, &int(ANN_TABLE_LABEL));
    let mut table = Vec::new();
    for (i, &x) in small.iter().enumerate() {
        for &y in &small[i + 1..] {
            let value = ann.bracket_basis(x, y);
            if !value.is_zero() {
                table.push(RelationDoc { left: x.show(alg), right: y.show(alg), value: value.show(alg) });
            }
        }
    }
    let partial = small
        .iter()
        .map(|&x| RelationDoc { left: "d".into(), right: x.show(alg), value: ann.partial(x).show(alg) })
        .collect();
    let closed_form = match compare_closed_form(alg, max_label) {
        Ok(r) => Some(CheckDoc {
            passed: r.passed(),
            checked: r.pairs,
            failures: r
                .mismatches
                .iter()
                .map(|m| ResidualDoc {
                    gens: vec![m.left.show(alg), m.right.show(alg)],
                    residual: format!("computed {}, expected {}", m.computed.show(alg), m.expected.show(alg)),
                })
                .collect(),
        }),
        Err(CoreError::Unsupported(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let m_max = if *max_label < int(0) { 0 } else { max_label.floor().to_integer().try_into().unwrap_or(0) };
    let filtration = match filtration_check(alg, m_max) {
        Ok(r) => Some(CheckDoc {
            passed: r.passed(),
            checked: r.pairs_checked,
            failures: r.violations.iter().map(|v| ResidualDoc { gens: Vec::new(), residual: format!("{:?}", v) }).collect(),
        }),
        Err(CoreError::Definition(_)) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(AnnDoc { max_label: confalg_core::rational::to_pq(max_label), table, partial, closed_form, filtration })
}

pub fn quotient(alg: &ConformalAlgebra, level: u64, bindings: &BTreeMap<VarId, Rational>) -> Result<QuotientDoc, CliError> {
    let lie = confalg_core::annihilation::truncated_quotient(alg, level, bindings)?;
    let s = is_solvable(&lie);
    Ok(QuotientDoc {
        level,
        lie: FiniteLieDoc::from_lie(&lie),
        derived_series: derived_series(&lie),
        solvable: s.solvable,
        derived_length: s.derived_length,
        nilpotent: is_nilpotent(&lie),
    })
}

pub fn classify(
    alg: &ConformalAlgebra,
    bindings: &BTreeMap<VarId, Rational>,
    degree: u32,
    dmax: u32,
) -> Result<ClassifyDoc, CliError> {
    let bound = alg.specialize(bindings)?;
    let families = rank1_classify(alg, bindings, degree)?;
    let mut docs = Vec::new();
    for fam in &families {
        let verdict = family_verdict(fam, dmax)?;
        docs.push(FamilyDoc {
            action: Rank1ActionDoc::from_action(&fam.action, bindings),
            free: fam.params.iter().map(|v| v.name()).collect(),
            verdict: VerdictDoc::from_family(&verdict),
        });
    }
    Ok(ClassifyDoc {
        algebra: bound.name.clone(),
        generators: bound.generators().iter().map(|g| g.name.clone()).collect(),
        params: bindings_doc(bindings),
        degree,
        dmax,
        families: docs,
    })
}

pub fn submodules(act: &Rank1Action, bindings: &BTreeMap<VarId, Rational>, dmax: u32) -> Result<SubmodulesDoc, CliError> {
    let report = act.check();
    if !report.passed() {
        return Err(CliError::Math(format!("`{}` is not a module: the axioms fail", act.show())));
    }
    let witnesses = submodule_scan(act, dmax)?;
    let verdict = irreducibility_verdict(act, dmax)?;
    Ok(SubmodulesDoc {
        generators: act.algebra().generators().iter().map(|g| g.name.clone()).collect(),
        action: Rank1ActionDoc::from_action(act, bindings),
        dmax,
        witnesses: witnesses.iter().map(|w| WitnessDoc::from_witness(w, bindings)).collect(),
        verdict: VerdictDoc::from_verdict(&verdict, dmax),
    })
}

/// Everything at once. Sections needing bound parameters are skipped with a
/// note when some stay symbolic.
pub fn dossier(
    alg: &ConformalAlgebra,
    bindings: &BTreeMap<VarId, Rational>,
    truncate: u64,
    degree: u32,
    dmax: u32,
) -> Result<Dossier, CliError> {
    let bound = alg.specialize(bindings)?;
    let mut notes = Vec::new();
    let unbound: Vec<String> = bound.params().iter().map(|v| v.name()).collect();
    let (quotient_doc, modules) = if unbound.is_empty() {
        let q = quotient(alg, truncate, bindings)?;
        let m = if bound.virasoro().is_some() {
            Some(classify(alg, bindings, degree, dmax)?)
        } else {
            notes.push("rank-one modules skipped: no distinguished Virasoro generator".to_string());
            None
        };
        (Some(q), m)
    } else {
        notes.push(format!(
            "truncated quotient and rank-one modules skipped: unbound parameters {}",
            unbound.join(", ")
        ));
        (None, None)
    };
    let annihilation = annihilation(&bound, &int(ANN_MAX_LABEL))?;
    if annihilation.closed_form.is_none() {
        notes.push("no registered closed form for the annihilation bracket".to_string());
    }
    if annihilation.filtration.is_none() {
        notes.push("filtration check skipped: non-integral filtration degrees".to_string());
    }
    Ok(Dossier {
        algebra: AlgebraDoc::from_algebra(&bound, bindings),
        axioms: axiom_doc(&bound),
        products: product_table(&bound)?,
        annihilation,
        quotient: quotient_doc,
        modules,
        notes,
    })
}
