//! Conformal modules over free `C[∂]`-modules, rank-one classification, and
//! principal-submodule detection.
//!
//! A rank-one module `C[∂]v` is given by `g λ v = f_g(∂, λ) v`. A monic `p(∂)`
//! generates a submodule `C[∂]p(∂)v` exactly when `p(∂)` divides
//! `f_g(∂, λ) p(∂+λ)` for every generator `g`; torsion and invariant-vector
//! arguments for free rank-one modules reduce to this test, so the scanner is
//! the only submodule tool here.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;


use crate::algebra::ConformalAlgebra;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;
use crate::solve::{solve_system, SolutionFamily};
use crate::var::{VarId, D, LAMBDA, MU, NU};

fn check_action_vars(p: &Poly) -> Result<()> {
    if p.contains_var(MU) || p.contains_var(NU) {
        return Err(Error::Definition(format!("action {} may only use d, x and parameters", p)));
    }
    Ok(())
}

/// `C[∂]^rank` with `g λ v_i = Σ_k actions[g][i][k](∂, λ) v_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleDef {
    algebra: ConformalAlgebra,
    rank: usize,
    actions: Vec<Vec<Vec<Poly>>>,
}

impl ModuleDef {
    pub fn new(alg: &ConformalAlgebra, rank: usize, actions: Vec<Vec<Vec<Poly>>>) -> Result<ModuleDef> {
        if rank == 0 {
            return Err(Error::Definition("module rank must be positive".to_string()));
        }
        if actions.len() != alg.rank() || actions.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
            return Err(Error::Definition(format!(
                "need a {}x{} action matrix for each of the {} generators",
                rank,
                rank,
                alg.rank()
            )));
        }
        for p in actions.iter().flatten().flatten() {
            check_action_vars(p)?;
        }
        Ok(ModuleDef { algebra: alg.clone(), rank, actions })
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleResidual {
    pub left: usize,
    pub right: usize,
    pub basis: usize,
    /// Coefficients of `v_0, …, v_{rank-1}`.
    pub residual: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleReport {
    pub entries: Vec<ModuleResidual>,
}

impl ModuleReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.residual.iter().all(Poly::is_zero))
    }

    pub fn failures(&self) -> impl Iterator<Item = &ModuleResidual> {
        self.entries.iter().filter(|e| e.residual.iter().any(|p| !p.is_zero()))
    }
}

/// `a λ (b μ v_i) - b μ (a λ v_i) - [a λ b]_{λ+μ} v_i` for all generator pairs and basis vectors.
pub fn check_module(m: &ModuleDef) -> ModuleReport {
    let n = m.algebra.rank();
    let r = m.rank;
    let d = Poly::var(D);
    let lambda = Poly::var(LAMBDA);
    let mu = Poly::var(MU);
    let d_lambda = &d + &lambda;
    let d_mu = &d + &mu;
    let sum = &lambda + &mu;
    let neg_sum = -&sum;
    // A(∂+μ, λ), B(∂, μ), B(∂+λ, μ), H(∂, λ+μ)
    let shifted_mu: Vec<Vec<Vec<Poly>>> = m.actions.iter().map(|g| g.iter().map(|row| row.iter().map(|p| p.substitute(D, &d_mu)).collect()).collect()).collect();
    let in_mu: Vec<Vec<Vec<Poly>>> = m.actions.iter().map(|g| g.iter().map(|row| row.iter().map(|p| p.substitute(LAMBDA, &mu)).collect()).collect()).collect();
    let in_mu_shifted: Vec<Vec<Vec<Poly>>> = in_mu.iter().map(|g| g.iter().map(|row| row.iter().map(|p| p.substitute(D, &d_lambda)).collect()).collect()).collect();
    let in_sum: Vec<Vec<Vec<Poly>>> = m.actions.iter().map(|g| g.iter().map(|row| row.iter().map(|p| p.substitute(LAMBDA, &sum)).collect()).collect()).collect();
    let mut entries = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let bracket: Vec<(usize, Poly)> = m.algebra.entry(a, b).iter().map(|(h, u)| (h, u.substitute(D, &neg_sum))).collect();
            for i in 0..r {
                let mut residual = alloc::vec![Poly::zero(); r];
                for k in 0..r {
                    for l in 0..r {
                        residual[l] += &(&in_mu_shifted[b][i][k] * &m.actions[a][k][l]);
                        residual[l] -= &(&shifted_mu[a][i][k] * &in_mu[b][k][l]);
                    }
                }
                for (h, u) in &bracket {
                    for l in 0..r {
                        residual[l] -= &(u * &in_sum[*h][i][l]);
                    }
                }
                entries.push(ModuleResidual { left: a, right: b, basis: i, residual });
            }
        }
    }
    ModuleReport { entries }
}

/// `g λ v = actions[g](∂, λ) v` on `C[∂]v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Action {
    algebra: ConformalAlgebra,
    actions: Vec<Poly>,
}

impl Rank1Action {
    pub fn new(alg: &ConformalAlgebra, actions: Vec<Poly>) -> Result<Rank1Action> {
        if actions.len() != alg.rank() {
            return Err(Error::Definition(format!(
                "{} has {} generators but {} actions were given",
                alg.name,
                alg.rank(),
                actions.len()
            )));
        }
        for p in &actions {
            check_action_vars(p)?;
        }
        Ok(Rank1Action { algebra: alg.clone(), actions })
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.algebra
    }

    pub fn action(&self, g: usize) -> &Poly {
        &self.actions[g]
    }

    pub fn actions(&self) -> &[Poly] {
        &self.actions
    }

    pub fn is_trivial(&self) -> bool {
        self.actions.iter().all(Poly::is_zero)
    }

    pub fn to_module(&self) -> ModuleDef {
        ModuleDef {
            algebra: self.algebra.clone(),
            rank: 1,
            actions: self.actions.iter().map(|p| alloc::vec![alloc::vec![p.clone()]]).collect(),
        }
    }

    /// Parameters of the action that are not parameters of the algebra.
    pub fn family_params(&self) -> Vec<VarId> {
        let own: BTreeSet<VarId> = self.algebra.params().iter().copied().collect();
        let mut out: BTreeSet<VarId> = BTreeSet::new();
        for p in &self.actions {
            out.extend(p.vars().into_iter().filter(|v| !v.is_formal() && !own.contains(v)));
        }
        out.into_iter().collect()
    }

    pub fn substitute_all(&self, values: &BTreeMap<VarId, Poly>) -> Rank1Action {
        Rank1Action {
            algebra: self.algebra.clone(),
            actions: self.actions.iter().map(|p| p.substitute_all(values)).collect(),
        }
    }

    pub fn specialize(&self, values: &BTreeMap<VarId, Rational>) -> Rank1Action {
        let values = values.iter().map(|(v, r)| (*v, Poly::constant(r.clone()))).collect();
        self.substitute_all(&values)
    }

    pub fn check(&self) -> ModuleReport {
        check_module(&self.to_module())
    }

    pub fn show(&self) -> String {
        let parts: Vec<String> = self
            .algebra
            .generators()
            .iter()
            .zip(&self.actions)
            .map(|(g, p)| format!("{}: {}", g.name, p))
            .collect();
        parts.join(", ")
    }
}

/// Coefficients in `∂, λ, μ` of the rank-one module residual for the pair `(a, b)`.
fn rank1_equations(alg: &ConformalAlgebra, actions: &[Poly], pairs: &[(usize, usize)]) -> Vec<Poly> {
    let m = ModuleDef { algebra: alg.clone(), rank: 1, actions: actions.iter().map(|p| alloc::vec![alloc::vec![p.clone()]]).collect() };
    let report = check_module(&m);
    let mut out = Vec::new();
    for e in report.entries {
        if pairs.contains(&(e.left, e.right)) {
            out.extend(e.residual[0].coefficients_in(&[D, LAMBDA, MU]).into_values());
        }
    }
    out
}

fn require_bound(alg: &ConformalAlgebra, bindings: &BTreeMap<VarId, Rational>) -> Result<ConformalAlgebra> {
    let alg = alg.specialize(bindings)?;
    if let Some(v) = alg.params().first() {
        return Err(Error::Binding(format!("parameter `{}` of {} must be bound", v, alg.name)));
    }
    Ok(alg)
}

/// Generic `Σ_{i,j ≤ deg} c_ij ∂^i λ^j` with fresh unknowns named `{prefix}:i:j`.
fn generic_action(prefix: &str, deg: u32) -> (Poly, Vec<VarId>) {
    let mut poly = Poly::zero();
    let mut unknowns = Vec::new();
    // highest total degree first so elimination clears the top terms early
    let mut exps: Vec<(u32, u32)> = (0..=deg).flat_map(|i| (0..=deg).map(move |j| (i, j))).collect();
    exps.sort_by_key(|&(i, j)| (core::cmp::Reverse(i + j), core::cmp::Reverse(i)));
    for (i, j) in exps {
        let c = VarId::named(&format!("{}:{}:{}", prefix, i, j));
        unknowns.push(c);
        poly += &Poly::term(Rational::from_integer(1.into()), Monomial::from_pairs([(c, 1), (D, i), (LAMBDA, j)]));
    }
    (poly, unknowns)
}

fn family_name(k: usize) -> String {
    const NAMES: [&str; 8] = ["gamma", "delta", "epsilon", "zeta", "eta", "theta", "kappa", "rho"];
    NAMES.get(k).map(|s| s.to_string()).unwrap_or_else(|| format!("t{}", k))
}

/// A symbolic family of rank-one actions; `params` are its free parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Rank1Family {
    pub action: Rank1Action,
    pub params: Vec<VarId>,
}

/// All rank-one actions with `∂`- and `λ`-degrees at most `degree`, up to the
/// Virasoro normal form of the distinguished generator.
///
/// The distinguished generator acts by `0` or `∂ + αλ + β`. For every other
/// generator the axiom against the distinguished one is solved first, then
/// the combined candidates are cut down by the remaining pairs.
pub fn rank1_classify(alg: &ConformalAlgebra, bindings: &BTreeMap<VarId, Rational>, degree: u32) -> Result<Vec<Rank1Family>> {
    let l = alg
        .virasoro()
        .ok_or_else(|| Error::Unsupported(format!("{} has no distinguished Virasoro generator", alg.name)))?;
    let alg = require_bound(alg, bindings)?;
    let alpha = VarId::named("alpha");
    let beta = VarId::named("beta");
    let others: Vec<usize> = (0..alg.rank()).filter(|&g| g != l).collect();
    let mut generic = BTreeMap::new();
    for &g in &others {
        generic.insert(g, generic_action(&format!("coef:{}", alg.generators()[g].name), degree));
    }
    let normal_forms = [
        (Poly::zero(), Vec::new()),
        (Poly::var(D) + Poly::var(alpha) * Poly::var(LAMBDA) + Poly::var(beta), alloc::vec![alpha, beta]),
    ];
    let mut out: Vec<(SolutionFamily, Rank1Action)> = Vec::new();
    for (f_l, vir_params) in normal_forms {
        let mut all_unknowns: Vec<VarId> = others.iter().flat_map(|g| generic[g].1.clone()).collect();
        all_unknowns.extend(vir_params.iter().copied());
        let base: Vec<Poly> = (0..alg.rank())
            .map(|g| if g == l { f_l.clone() } else { Poly::zero() })
            .collect();

        // Stage 1: each generator against the distinguished one.
        let mut per_gen: Vec<Vec<SolutionFamily>> = Vec::new();
        for &g in &others {
            let mut actions = base.clone();
            actions[g] = generic[&g].0.clone();
            let eqs = rank1_equations(&alg, &actions, &[(l, g)]);
            let mut unknowns = generic[&g].1.clone();
            unknowns.extend(vir_params.iter().copied());
            per_gen.push(solve_system(&eqs, &unknowns)?.families);
        }

        // Stage 2: combine and impose the remaining pairs.
        let mut actions = base.clone();
        for &g in &others {
            actions[g] = generic[&g].0.clone();
        }
        let pairs: Vec<(usize, usize)> = others
            .iter()
            .flat_map(|&a| others.iter().filter(move |&&b| b >= a).map(move |&b| (a, b)))
            .collect();
        let cross = rank1_equations(&alg, &actions, &pairs);
        let mut combos: Vec<Vec<&SolutionFamily>> = alloc::vec![Vec::new()];
        for fams in &per_gen {
            combos = combos
                .into_iter()
                .flat_map(|prefix| {
                    fams.iter().map(move |f| {
                        let mut next = prefix.clone();
                        next.push(f);
                        next
                    })
                })
                .collect();
        }
        let mut found: Vec<SolutionFamily> = Vec::new();
        for combo in combos {
            let mut eqs = cross.clone();
            for fam in combo {
                for (v, e) in &fam.assigned {
                    eqs.push(Poly::var(*v) - e);
                }
            }
            found.extend(solve_system(&eqs, &all_unknowns)?.families);
        }
        for fam in found {
            let mut acts: Vec<Poly> = actions.iter().map(|p| fam.apply(p)).collect();
            let mut rename = BTreeMap::new();
            let mut k = 0;
            for v in &all_unknowns {
                if fam.free.contains(v) && !vir_params.contains(v) {
                    rename.insert(*v, Poly::var(VarId::named(&family_name(k))));
                    k += 1;
                }
            }
            acts = acts.iter().map(|p| p.substitute_all(&rename)).collect();
            out.push((fam, Rank1Action::new(&alg, acts)?));
        }
    }
    // Drop families contained in others (the unknown sets agree per normal form;
    // families from different normal forms differ in the ∂-coefficient of L).
    let mut kept: Vec<Rank1Family> = Vec::new();
    for (i, (fam, act)) in out.iter().enumerate() {
        let redundant = out.iter().enumerate().any(|(j, (other, other_act))| {
            j != i
                && other_act.action(l).coeff_of(D, 1) == act.action(l).coeff_of(D, 1)
                && other.contains(fam)
                && (!fam.contains(other) || j < i)
        });
        if redundant {
            continue;
        }
        if !act.check().passed() {
            return Err(Error::Definition(format!("classified action {} fails the module axioms", act.show())));
        }
        let params = act.family_params();
        kept.push(Rank1Family { action: act.clone(), params });
    }
    Ok(kept)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VirCompletenessReport {
    pub degree: u32,
    /// Solutions `f`, with free coefficients renamed to `alpha`, `beta`, ….
    pub families: Vec<Poly>,
    pub passed: bool,
}

/// Solves the rank-one Virasoro module equation over all `f` with `∂`- and
/// `λ`-degrees at most `degree` and checks that only `0` and `∂+αλ+β` remain.
pub fn vir_completeness(degree: u32) -> Result<VirCompletenessReport> {
    if degree == 0 || degree > 3 {
        return Err(Error::Unsupported(format!("Virasoro completeness is supported for degrees 1 to 3, not {}", degree)));
    }
    let vir = crate::presets::instantiate(crate::presets::PresetId::Vir, &[])?;
    let (f, unknowns) = generic_action("coef:L", degree);
    let eqs = rank1_equations(&vir, core::slice::from_ref(&f), &[(0, 0)]);
    let set = solve_system(&eqs, &unknowns)?;
    let names = ["alpha", "beta"];
    let mut families = Vec::new();
    for fam in &set.families {
        let mut rename = BTreeMap::new();
        for (k, v) in fam.free.iter().enumerate() {
            let name = names.get(k).map(|s| s.to_string()).unwrap_or_else(|| family_name(k - names.len()));
            rename.insert(*v, Poly::var(VarId::named(&name)));
        }
        families.push(fam.apply(&f).substitute_all(&rename));
    }
    families.sort();
    let expected: BTreeSet<Poly> = ["0", "d + alpha*x + beta"].iter().map(|s| s.parse().expect("valid")).collect();
    let got: BTreeSet<Poly> = families.iter().cloned().collect();
    Ok(VirCompletenessReport { degree, passed: families.len() == 2 && got == expected, families })
}

/// `p(∂)` generating the submodule `C[∂] p(∂) v`, with the action on `p(∂) v`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmoduleWitness {
    pub p: Poly,
    pub induced: Rank1Action,
}

fn witness_unknowns(k: u32) -> (Poly, Vec<VarId>) {
    let mut p = Poly::var(D).pow(k);
    let mut unknowns = Vec::new();
    for i in (0..k).rev() {
        let v = VarId::named(&format!("p{}", i));
        unknowns.push(v);
        p += &(Poly::var(v) * Poly::var(D).pow(i));
    }
    (p, unknowns)
}

/// Remainders of `f_g(∂, λ) p(∂+λ)` modulo `p(∂)`, split into coefficients.
fn divisibility_equations(act: &Rank1Action, p: &Poly) -> Result<Vec<Poly>> {
    let shifted = p.substitute(D, &(Poly::var(D) + Poly::var(LAMBDA)));
    let mut eqs = Vec::new();
    for f in act.actions() {
        let (_, r) = (f * &shifted).monic_div_rem(p, D)?;
        eqs.extend(r.coefficients_in(&[D, LAMBDA]).into_values());
    }
    Ok(eqs)
}

fn has_constant_action(act: &Rank1Action) -> bool {
    act.actions().iter().any(|p| p.is_constant() && !p.is_zero())
}

/// Solution families of the degree-`k` divisibility system; `extra` unknowns
/// (family parameters) are eliminated after the coefficients of `p`.
fn scan_degree(act: &Rank1Action, k: u32, extra: &[VarId]) -> Result<(Poly, Vec<VarId>, Vec<SolutionFamily>)> {
    let (p, mut unknowns) = witness_unknowns(k);
    let coeffs = unknowns.clone();
    unknowns.extend_from_slice(extra);
    let eqs = divisibility_equations(act, &p)?;
    let set = solve_system(&eqs, &unknowns).map_err(|e| match e {
        Error::UnsupportedSystem { equation } => Error::UnsupportedSystem { equation: format!("{} (submodule degree {})", equation, k) },
        other => other,
    })?;
    Ok((p, coeffs, set.families))
}

/// All monic `p` of degree `1..=dmax` generating a submodule. Free
/// coefficients of `p` stay symbolic as `p0`, `p1`, ….
pub fn submodule_scan(act: &Rank1Action, dmax: u32) -> Result<Vec<SubmoduleWitness>> {
    if let Some(v) = act.family_params().first() {
        return Err(Error::Binding(format!("parameter `{}` must be bound before scanning", v)));
    }
    if has_constant_action(act) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for k in 1..=dmax {
        let (p, _, families) = scan_degree(act, k, &[])?;
        for fam in families {
            let p = fam.apply(&p);
            let induced = induced_action(act, &p)?;
            out.push(SubmoduleWitness { p, induced });
        }
    }
    Ok(out)
}

/// The action on `w = p(∂) v`: `g λ w = q_g(∂, λ) w` with `f_g(∂,λ) p(∂+λ) = q_g(∂,λ) p(∂)`.
pub fn induced_action(act: &Rank1Action, p: &Poly) -> Result<Rank1Action> {
    let shifted = p.substitute(D, &(Poly::var(D) + Poly::var(LAMBDA)));
    let mut out = Vec::new();
    for (g, f) in act.actions().iter().enumerate() {
        let (q, r) = (f * &shifted).monic_div_rem(p, D)?;
        if !r.is_zero() {
            return Err(Error::Divisibility(format!(
                "{} does not divide the action of {} (remainder {})",
                p,
                act.algebra().generators()[g].name,
                r
            )));
        }
        out.push(q);
    }
    let induced = Rank1Action::new(act.algebra(), out)?;
    if !induced.check().passed() {
        return Err(Error::Divisibility(format!("induced action {} fails the module axioms", induced.show())));
    }
    Ok(induced)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// No submodule generator of degree `≤ dmax`.
    Bounded(u32),
    /// Some generator acts by a nonzero constant.
    Unconditional,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Bounded(_) => "bounded",
            Certificate::Unconditional => "unconditional",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Reducible(SubmoduleWitness),
    Irreducible(Certificate),
}

pub fn irreducibility_verdict(act: &Rank1Action, dmax: u32) -> Result<Verdict> {
    if has_constant_action(act) {
        return Ok(Verdict::Irreducible(Certificate::Unconditional));
    }
    match submodule_scan(act, dmax)?.into_iter().next() {
        Some(w) => Ok(Verdict::Reducible(w)),
        None => Ok(Verdict::Irreducible(Certificate::Bounded(dmax))),
    }
}

/// Where in parameter space a family has a principal submodule of degree `≤ dmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyVerdict {
    pub dmax: u32,
    /// Each entry is a conjunction `v = value` under which a submodule exists;
    /// an empty conjunction means the family is reducible everywhere.
    pub reducible_when: Vec<BTreeMap<VarId, Poly>>,
    pub certificate: Certificate,
}

impl FamilyVerdict {
    pub fn always_reducible(&self) -> bool {
        self.reducible_when.iter().any(BTreeMap::is_empty)
    }

    pub fn describe(&self) -> String {
        if self.always_reducible() {
            return "reducible".to_string();
        }
        let suffix = match self.certificate {
            Certificate::Bounded(d) => format!(" (submodule degree <= {})", d),
            Certificate::Unconditional => String::new(),
        };
        if self.reducible_when.is_empty() {
            return format!("irreducible{}", suffix);
        }
        let clauses: Vec<String> = self
            .reducible_when
            .iter()
            .map(|case| case.iter().map(|(v, e)| format!("{} != {}", v, e)).collect::<Vec<_>>().join(" or "))
            .collect();
        format!("irreducible iff {}{}", clauses.join(" and "), suffix)
    }
}

/// Irreducibility of a symbolic family: family parameters are solved for
/// together with the coefficients of `p`.
pub fn family_verdict(family: &Rank1Family, dmax: u32) -> Result<FamilyVerdict> {
    if has_constant_action(&family.action) {
        return Ok(FamilyVerdict { dmax, reducible_when: Vec::new(), certificate: Certificate::Unconditional });
    }
    let mut cases: Vec<BTreeMap<VarId, Poly>> = Vec::new();
    for k in 1..=dmax {
        let (_, coeffs, families) = scan_degree(&family.action, k, &family.params)?;
        for fam in families {
            let case: BTreeMap<VarId, Poly> = family
                .params
                .iter()
                .filter_map(|v| fam.assigned.get(v).map(|e| (*v, e.clone())))
                .filter(|(_, e)| coeffs.iter().all(|c| !e.contains_var(*c)))
                .collect();
            if !cases.contains(&case) {
                cases.push(case);
            }
        }
    }
    Ok(FamilyVerdict { dmax, reducible_when: cases, certificate: Certificate::Bounded(dmax) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{instantiate, named_module, ModuleName, PresetId};
    use crate::rational::int;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn bind(pairs: &[(&str, i64)]) -> BTreeMap<VarId, Rational> {
        pairs.iter().map(|(k, v)| (VarId::named(k), int(*v))).collect()
    }

    #[test]
    fn module_axioms() {
        let vir = instantiate(PresetId::Vir, &[]).unwrap();
        let m = Rank1Action::new(&vir, alloc::vec![p("d + alpha*x + beta")]).unwrap();
        assert!(m.check().passed());
        let w = instantiate(PresetId::W, &[("a", int(2)), ("b", int(0))]).unwrap();
        let m = Rank1Action::new(&w, alloc::vec![p("d + alpha*x + beta"), p("gamma")]).unwrap();
        let report = m.check();
        let lw = report.entries.iter().find(|e| e.left == 0 && e.right == 1).unwrap();
        assert_eq!(lw.residual[0], p("-x*gamma"));
        let zero = Rank1Action::new(&w, alloc::vec![Poly::zero(), Poly::zero()]).unwrap();
        assert!(zero.check().passed());
    }

    #[test]
    fn rank_two_module() {
        // Vir acting diagonally on two copies of M_{1,0}
        let vir = instantiate(PresetId::Vir, &[]).unwrap();
        let f = p("d + x");
        let m = ModuleDef::new(&vir, 2, alloc::vec![alloc::vec![alloc::vec![f.clone(), Poly::zero()], alloc::vec![Poly::zero(), f]]]).unwrap();
        assert!(check_module(&m).passed());
        let bad = ModuleDef::new(&vir, 2, alloc::vec![alloc::vec![alloc::vec![p("d"), p("d^2")], alloc::vec![Poly::zero(), p("d")]]]).unwrap();
        assert!(!check_module(&bad).passed());
    }

    #[test]
    fn vir_submodules() {
        let m02 = named_module(ModuleName::AlphaBeta, PresetId::Vir, &[], &[("alpha", int(0)), ("beta", int(2))]).unwrap();
        let found = submodule_scan(&m02, 3).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].p, p("d + 2"));
        assert_eq!(found[0].induced.action(0), &p("d + x + 2"));
        let m10 = named_module(ModuleName::AlphaBeta, PresetId::Vir, &[], &[("alpha", int(1)), ("beta", int(0))]).unwrap();
        assert!(submodule_scan(&m10, 3).unwrap().is_empty());
        assert_eq!(induced_action(&m10, &Poly::one()).unwrap(), m10);
        assert!(matches!(induced_action(&m10, &p("d + 1")), Err(Error::Divisibility(_))));
    }

    #[test]
    fn verdicts() {
        let m = named_module(ModuleName::AlphaBeta, PresetId::Vir, &[], &[("alpha", int(0)), ("beta", int(5))]).unwrap();
        match irreducibility_verdict(&m, 3).unwrap() {
            Verdict::Reducible(w) => assert_eq!(w.p, p("d + 5")),
            other => panic!("{:?}", other),
        }
        let w10 = [("a", int(1)), ("b", int(0))];
        let g = named_module(ModuleName::AlphaBetaGamma, PresetId::W, &w10, &[("alpha", int(0)), ("beta", int(0)), ("gamma", int(2))]).unwrap();
        assert_eq!(irreducibility_verdict(&g, 3).unwrap(), Verdict::Irreducible(Certificate::Unconditional));
        let m = named_module(ModuleName::AlphaBeta, PresetId::W, &w10, &[("alpha", int(3)), ("beta", int(0))]).unwrap();
        assert_eq!(irreducibility_verdict(&m, 3).unwrap(), Verdict::Irreducible(Certificate::Bounded(3)));
    }

    #[test]
    fn vir_completeness_low_degree() {
        let r = vir_completeness(1).unwrap();
        assert!(r.passed, "{:?}", r.families);
        assert!(vir_completeness(4).is_err());
    }

    #[test]
    fn classify_w_generic() {
        let w = instantiate(PresetId::W, &[]).unwrap();
        let fams = rank1_classify(&w, &bind(&[("a", 2), ("b", 5)]), 2).unwrap();
        let shown: Vec<String> = fams.iter().map(|f| f.action.show()).collect();
        assert_eq!(shown, ["L: 0, W: 0", "L: x*alpha + d + beta, W: 0"]);
    }

    #[test]
    fn classify_w_10() {
        let w = instantiate(PresetId::W, &[]).unwrap();
        let fams = rank1_classify(&w, &bind(&[("a", 1), ("b", 0)]), 2).unwrap();
        let shown: Vec<String> = fams.iter().map(|f| f.action.show()).collect();
        assert_eq!(shown, ["L: 0, W: 0", "L: x*alpha + d + beta, W: gamma"]);
        let v = family_verdict(&fams[1], 3).unwrap();
        assert_eq!(v.describe(), "irreducible iff alpha != 0 or gamma != 0 (submodule degree <= 3)");
        assert!(family_verdict(&fams[0], 2).unwrap().always_reducible());
    }
}
