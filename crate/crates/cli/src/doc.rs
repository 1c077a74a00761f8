//! Serializable documents for every command's output. Rationals are written
//! as exact `"p/q"` strings and polynomials in the text grammar, so every
//! document parses back to an equal value.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use confalg_core::algebra::ConformalAlgebra;
use confalg_core::lie::{BasisLabel, FiniteLie};
use confalg_core::module::{Certificate, FamilyVerdict, Rank1Action, SubmoduleWitness, Verdict};
use confalg_core::rational::{parse_rational, to_pq};
use confalg_core::{Poly, Rational, VarId};

use crate::error::CliError;

pub fn bindings_doc(bindings: &BTreeMap<VarId, Rational>) -> BTreeMap<String, String> {
    bindings.iter().map(|(v, r)| (v.name(), to_pq(r))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisDoc {
    pub gen: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub k: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteLieDoc {
    pub basis: Vec<BasisDoc>,
    pub brackets: Vec<StructureDoc>,
}

impl FiniteLieDoc {
    pub fn from_lie(lie: &FiniteLie) -> Self {
        FiniteLieDoc {
            basis: lie.basis().iter().map(|b| BasisDoc { gen: b.gen.clone(), label: to_pq(&b.label) }).collect(),
            brackets: lie
                .brackets()
                .map(|((i, j), terms)| StructureDoc {
                    i,
                    j,
                    terms: terms.iter().map(|(k, c)| TermDoc { k: *k, coeff: to_pq(c) }).collect(),
                })
                .collect(),
        }
    }

    pub fn to_lie(&self) -> Result<FiniteLie, CliError> {
        let basis = self
            .basis
            .iter()
            .map(|b| Ok(BasisLabel { gen: b.gen.clone(), label: parse_rational(&b.label)? }))
            .collect::<Result<Vec<_>, CliError>>()?;
        let mut brackets = BTreeMap::new();
        for s in &self.brackets {
            let terms = s
                .terms
                .iter()
                .map(|t| Ok((t.k, parse_rational(&t.coeff)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            brackets.insert((s.i, s.j), terms);
        }
        Ok(FiniteLie::new(basis, brackets)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rank1ActionDoc {
    pub algebra: String,
    pub params: BTreeMap<String, String>,
    pub actions: BTreeMap<String, String>,
}

impl Rank1ActionDoc {
    pub fn from_action(act: &Rank1Action, bindings: &BTreeMap<VarId, Rational>) -> Self {
        Rank1ActionDoc {
            algebra: act.algebra().name.clone(),
            params: bindings_doc(bindings),
            actions: act
                .algebra()
                .generators()
                .iter()
                .zip(act.actions())
                .map(|(g, p)| (g.name.clone(), p.to_string()))
                .collect(),
        }
    }

    /// Rebuilds the action over `alg`, which must already carry the bindings.
    pub fn to_action(&self, alg: &ConformalAlgebra) -> Result<Rank1Action, CliError> {
        for name in self.actions.keys() {
            alg.index_of(name)?;
        }
        let mut actions = Vec::new();
        for g in alg.generators() {
            let text = self
                .actions
                .get(&g.name)
                .ok_or_else(|| CliError::Input(format!("no action given for generator {}", g.name)))?;
            actions.push(text.parse::<Poly>()?);
        }
        Ok(Rank1Action::new(alg, actions)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    /// `reducible`, `irreducible`, or `conditional` for symbolic families.
    pub status: String,
    /// `bounded` or `unconditional`; absent when reducible.
    pub certificate: Option<String>,
    pub dmax: u32,
    pub witness: Option<String>,
    pub reducible_when: Vec<BTreeMap<String, String>>,
    pub summary: String,
}

impl VerdictDoc {
    pub fn from_verdict(v: &Verdict, dmax: u32) -> Self {
        match v {
            Verdict::Reducible(w) => VerdictDoc {
                status: "reducible".into(),
                certificate: None,
                dmax,
                witness: Some(w.p.to_string()),
                reducible_when: vec![BTreeMap::new()],
                summary: format!("reducible (submodule generator of degree {})", w.p.degree_in(confalg_core::D)),
            },
            Verdict::Irreducible(c) => VerdictDoc {
                status: "irreducible".into(),
                certificate: Some(c.kind().into()),
                dmax,
                witness: None,
                reducible_when: Vec::new(),
                summary: match c {
                    Certificate::Unconditional => "irreducible (constant action)".into(),
                    Certificate::Bounded(d) => format!("irreducible (submodule degree <= {})", d),
                },
            },
        }
    }

    pub fn from_family(v: &FamilyVerdict) -> Self {
        let status = if v.always_reducible() {
            "reducible"
        } else if v.reducible_when.is_empty() {
            "irreducible"
        } else {
            "conditional"
        };
        VerdictDoc {
            status: status.into(),
            certificate: (!v.always_reducible()).then(|| v.certificate.kind().into()),
            dmax: v.dmax,
            witness: None,
            reducible_when: v
                .reducible_when
                .iter()
                .map(|case| case.iter().map(|(k, e)| (k.name(), e.to_string())).collect())
                .collect(),
            summary: v.describe(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub action: Rank1ActionDoc,
    pub free: Vec<String>,
    pub verdict: VerdictDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub algebra: String,
    pub generators: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub degree: u32,
    pub dmax: u32,
    pub families: Vec<FamilyDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub p: String,
    pub induced: Rank1ActionDoc,
}

impl WitnessDoc {
    pub fn from_witness(w: &SubmoduleWitness, bindings: &BTreeMap<VarId, Rational>) -> Self {
        WitnessDoc { p: w.p.to_string(), induced: Rank1ActionDoc::from_action(&w.induced, bindings) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmodulesDoc {
    pub generators: Vec<String>,
    pub action: Rank1ActionDoc,
    pub dmax: u32,
    pub witnesses: Vec<WitnessDoc>,
    pub verdict: VerdictDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualDoc {
    pub gens: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<ResidualDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomDoc {
    pub skew: CheckDoc,
    pub jacobi: CheckDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub algebra: String,
    pub symbolic: AxiomDoc,
    pub grid: Vec<GridPointDoc>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPointDoc {
    pub bindings: BTreeMap<String, String>,
    pub axioms: AxiomDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub offset: String,
    pub shift: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub name: String,
    pub params: Vec<String>,
    pub bindings: BTreeMap<String, String>,
    pub generators: Vec<GeneratorDoc>,
    pub brackets: Vec<RelationDoc>,
}

impl AlgebraDoc {
    pub fn from_algebra(alg: &ConformalAlgebra, bindings: &BTreeMap<VarId, Rational>) -> Self {
        let names: Vec<String> = alg.generators().iter().map(|g| g.name.clone()).collect();
        let mut brackets = Vec::new();
        for i in 0..alg.rank() {
            for j in i..alg.rank() {
                brackets.push(RelationDoc {
                    left: names[i].clone(),
                    right: names[j].clone(),
                    value: alg.show(alg.entry(i, j)),
                });
            }
        }
        AlgebraDoc {
            name: alg.name.clone(),
            params: alg.params().iter().map(|v| v.name()).collect(),
            bindings: bindings_doc(bindings),
            generators: alg
                .generators()
                .iter()
                .map(|g| GeneratorDoc { name: g.name.clone(), offset: to_pq(&g.label_offset), shift: to_pq(&g.filtration_shift) })
                .collect(),
            brackets,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDoc {
    pub left: String,
    pub right: String,
    pub j: u32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnDoc {
    pub max_label: String,
    /// Nonzero brackets `[x, y]` of basis elements with labels `≤ 1`.
    pub table: Vec<RelationDoc>,
    pub partial: Vec<RelationDoc>,
    pub closed_form: Option<CheckDoc>,
    pub filtration: Option<CheckDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientDoc {
    pub level: u64,
    pub lie: FiniteLieDoc,
    pub derived_series: Vec<usize>,
    pub solvable: bool,
    pub derived_length: Option<usize>,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dossier {
    pub algebra: AlgebraDoc,
    pub axioms: AxiomDoc,
    pub products: Vec<ProductDoc>,
    pub annihilation: AnnDoc,
    pub quotient: Option<QuotientDoc>,
    pub modules: Option<ClassifyDoc>,
    pub notes: Vec<String>,
}
