//! Lie conformal algebras given by generators and a λ-bracket table.
//!
//! Coefficients live in the commutative ring `Q[∂, λ, params]`. A table entry
//! `[g_λ h] = Σ q_k(∂, λ) k` stores `q_k` with ∂ placed to the left of the
//! generator, so the skew-symmetry substitution `λ ↦ -λ-∂` and the Jacobi
//! shift `∂ ↦ ∂+λ` are plain polynomial substitutions.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::parse::parse_poly_with;
use crate::poly::Poly;
use crate::presets::ClosedForm;
use crate::rational::{factorial, Rational};
use crate::var::{VarId, D, LAMBDA, MU};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// `σ`: internal coefficient index minus the displayed label.
    pub label_offset: Rational,
    /// `τ`: displayed label minus filtration degree.
    pub filtration_shift: Rational,
}

impl Generator {
    pub fn new(name: &str) -> Self {
        Generator {
            name: name.to_string(),
            label_offset: Rational::zero(),
            filtration_shift: Rational::zero(),
        }
    }

    pub fn with_offset(mut self, offset: Rational) -> Self {
        self.label_offset = offset;
        self
    }

    pub fn with_shift(mut self, shift: Rational) -> Self {
        self.filtration_shift = shift;
        self
    }
}

/// A finite sum `Σ q_g · g` over generator indices with polynomial coefficients.
///
/// Used both for elements of the algebra (coefficients in ∂ and parameters)
/// and for λ-bracket values (coefficients also in λ).
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    terms: BTreeMap<usize, Poly>,
}

pub type CElement = Element;
pub type LambdaElement = Element;

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn single(gen: usize, coeff: Poly) -> Self {
        let mut e = Element::zero();
        e.add_term(gen, coeff);
        e
    }

    pub fn generator(gen: usize) -> Self {
        Element::single(gen, Poly::one())
    }

    pub fn add_term(&mut self, gen: usize, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(gen).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&gen);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, factor: &Poly) {
        for (&g, q) in &other.terms {
            self.add_term(g, q * factor);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, gen: usize) -> Poly {
        self.terms.get(&gen).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.terms.iter().map(|(&g, q)| (g, q))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        let mut out = Element::zero();
        for (&g, q) in &self.terms {
            out.add_term(g, f(q));
        }
        out
    }

    pub fn substitute(&self, v: VarId, r: &Poly) -> Element {
        self.map(|q| q.substitute(v, r))
    }

    pub fn scale(&self, factor: &Poly) -> Element {
        self.map(|q| q * factor)
    }

    pub fn neg(&self) -> Element {
        self.map(|q| -q)
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &Poly::int(-1));
        out
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.terms.values().flat_map(|q| q.vars()).collect()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.values().map(|q| q.degree_in(v)).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalAlgebra {
    pub name: String,
    generators: Vec<Generator>,
    params: Vec<VarId>,
    /// `table[i][j] = [g_i λ g_j]`.
    table: Vec<Vec<Element>>,
    virasoro: Option<usize>,
    closed_form: Option<ClosedForm>,
}

/// Collects generators, parameters and bracket entries; entries for `i > j`
/// may be omitted and are completed by skew-symmetry, entries missing in both
/// orders are zero.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    name: String,
    generators: Vec<Generator>,
    params: Vec<VarId>,
    entries: BTreeMap<(usize, usize), Element>,
    virasoro: Option<usize>,
    closed_form: Option<ClosedForm>,
}

impl AlgebraBuilder {
    pub fn new(name: &str) -> Self {
        AlgebraBuilder {
            name: name.to_string(),
            generators: Vec::new(),
            params: Vec::new(),
            entries: BTreeMap::new(),
            virasoro: None,
            closed_form: None,
        }
    }

    pub fn param(&mut self, name: &str) -> Result<VarId> {
        let v = VarId::param(name)?;
        if self.generators.iter().any(|g| g.name == name) {
            return Err(Error::Definition(format!("`{}` is already a generator", name)));
        }
        if !self.params.contains(&v) {
            self.params.push(v);
        }
        Ok(v)
    }

    pub fn generator(&mut self, gen: Generator) -> Result<usize> {
        if self.generators.iter().any(|g| g.name == gen.name) {
            return Err(Error::Definition(format!("duplicate generator `{}`", gen.name)));
        }
        if self.params.iter().any(|p| p.name() == gen.name) || matches!(gen.name.as_str(), "d" | "x" | "y" | "z") {
            return Err(Error::Definition(format!("generator name `{}` is reserved", gen.name)));
        }
        let two = num_bigint::BigInt::from(2);
        if *gen.label_offset.denom() > two || *gen.filtration_shift.denom() > two {
            return Err(Error::Definition(format!("offsets of `{}` must have denominator at most 2", gen.name)));
        }
        self.generators.push(gen);
        Ok(self.generators.len() - 1)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Definition(format!("undeclared generator `{}`", name)))
    }

    pub fn bracket(&mut self, left: &str, right: &str, value: Element) -> Result<()> {
        let (i, j) = (self.index_of(left)?, self.index_of(right)?);
        if let Some(g) = value.max_generator() {
            if g >= self.generators.len() {
                return Err(Error::Definition(format!("unknown generator index {}", g)));
            }
        }
        self.entries.insert((i, j), value);
        Ok(())
    }

    /// `[left, right] = text` where `text` uses the polynomial grammar followed
    /// by generator names, e.g. `(d + a*x + b) W`.
    pub fn bracket_str(&mut self, left: &str, right: &str, text: &str) -> Result<()> {
        let names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let value = parse_element(text, &names, &self.params)?;
        self.bracket(left, right, value)
    }

    pub fn virasoro(&mut self, name: &str) -> Result<()> {
        self.virasoro = Some(self.index_of(name)?);
        Ok(())
    }

    pub fn closed_form(&mut self, cf: ClosedForm) {
        self.closed_form = Some(cf);
    }

    pub fn build(self) -> Result<ConformalAlgebra> {
        let n = self.generators.len();
        let allowed: BTreeSet<VarId> = [D, LAMBDA].into_iter().chain(self.params.iter().copied()).collect();
        for ((i, j), e) in &self.entries {
            if let Some(v) = e.vars().into_iter().find(|v| !allowed.contains(v)) {
                return Err(Error::Definition(format!(
                    "[{},{}] mentions `{}`, which is neither d, x nor a declared parameter",
                    self.generators[*i].name, self.generators[*j].name, v
                )));
            }
        }
        let skew = -Poly::var(LAMBDA) - Poly::var(D);
        let mut table = alloc::vec![alloc::vec![Element::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = match (self.entries.get(&(i, j)), self.entries.get(&(j, i))) {
                    (Some(e), _) => e.clone(),
                    (None, Some(e)) => e.substitute(LAMBDA, &skew).neg(),
                    (None, None) => Element::zero(),
                };
            }
        }
        Ok(ConformalAlgebra {
            name: self.name,
            generators: self.generators,
            params: self.params,
            table,
            virasoro: self.virasoro,
            closed_form: self.closed_form,
        })
    }
}

/// Parses `Σ (poly) Gen` with generator names resolved against `generators`
/// and other identifiers restricted to `params`.
pub fn parse_element(text: &str, generators: &[String], params: &[VarId]) -> Result<Element> {
    let marker = |i: usize| VarId::named(&format!("#gen{}", i));
    let resolve = |name: &str| -> core::result::Result<VarId, String> {
        if let Some(i) = generators.iter().position(|g| g == name) {
            return Ok(marker(i));
        }
        match VarId::lookup(name) {
            Some(v) if params.contains(&v) => Ok(v),
            _ => Err(format!("undeclared identifier `{}`", name)),
        }
    };
    let poly = parse_poly_with(text, &resolve)?;
    let markers: Vec<VarId> = (0..generators.len()).map(marker).collect();
    let mut out = Element::zero();
    for (m, c) in poly.terms() {
        let hits: Vec<(usize, u32)> = markers
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| match m.exponent(v) {
                0 => None,
                e => Some((i, e)),
            })
            .collect();
        match hits.as_slice() {
            [(g, 1)] => out.add_term(*g, Poly::term(c.clone(), m.without(markers[*g]))),
            _ => {
                return Err(Error::Parse {
                    column: 0,
                    message: format!("`{}` is not linear in the generators", text),
                })
            }
        }
    }
    Ok(out)
}

/// Residual of one axiom instance; `gens` names the generator pair or triple.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub gens: Vec<usize>,
    pub residual: Element,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub entries: Vec<Residual>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|r| r.residual.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Residual> {
        self.entries.iter().filter(|r| !r.residual.is_zero())
    }
}

impl ConformalAlgebra {
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn params(&self) -> &[VarId] {
        &self.params
    }

    pub fn virasoro(&self) -> Option<usize> {
        self.virasoro
    }

    pub fn closed_form(&self) -> Option<&ClosedForm> {
        self.closed_form.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::Definition(format!("`{}` is not a generator of {}", name, self.name)))
    }

    /// `[g_i λ g_j]` as stored.
    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.table[i][j]
    }

    /// `[g_i var g_j]`: the table entry with λ renamed.
    pub fn entry_in(&self, i: usize, j: usize, var: VarId) -> Element {
        if var == LAMBDA {
            self.table[i][j].clone()
        } else {
            self.table[i][j].substitute(LAMBDA, &Poly::var(var))
        }
    }

    /// Replaces single table entries; no skew completion is applied.
    pub fn with_entry(&self, i: usize, j: usize, value: Element) -> ConformalAlgebra {
        let mut out = self.clone();
        out.table[i][j] = value;
        out.closed_form = None;
        out
    }

    /// Binds parameters to rationals. Bound parameters disappear from `params`.
    pub fn specialize(&self, bindings: &BTreeMap<VarId, Rational>) -> Result<ConformalAlgebra> {
        for v in bindings.keys() {
            if !self.params.contains(v) {
                return Err(Error::Binding(format!("`{}` is not a parameter of {}", v, self.name)));
            }
        }
        let values: BTreeMap<VarId, Poly> = bindings.iter().map(|(v, r)| (*v, Poly::constant(r.clone()))).collect();
        let mut out = self.clone();
        for row in out.table.iter_mut() {
            for e in row.iter_mut() {
                *e = e.map(|q| q.substitute_all(&values));
            }
        }
        out.params.retain(|v| !bindings.contains_key(v));
        out.closed_form = self.closed_form.as_ref().map(|cf| cf.specialize(&values));
        Ok(out)
    }

    fn check_element(&self, x: &Element) -> Result<()> {
        if let Some(g) = x.max_generator() {
            if g >= self.generators.len() {
                return Err(Error::Definition(format!("generator index {} is foreign to {}", g, self.name)));
            }
        }
        if x.vars().iter().any(|v| v.is_formal() && *v != D) {
            return Err(Error::Definition("algebra elements may only involve ∂ and parameters".to_string()));
        }
        Ok(())
    }

    /// `[x λ y]` by sesquilinear extension:
    /// `[p(∂)g λ q(∂)h] = p(-λ) q(∂+λ) [g λ h]`.
    pub fn bracket(&self, x: &CElement, y: &CElement) -> Result<LambdaElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let neg_lambda = -Poly::var(LAMBDA);
        let shift = Poly::var(D) + Poly::var(LAMBDA);
        let mut out = Element::zero();
        for (g, p) in x.iter() {
            let left = p.substitute(D, &neg_lambda);
            for (h, q) in y.iter() {
                let factor = &left * &q.substitute(D, &shift);
                out.add_scaled(&self.table[g][h], &factor);
            }
        }
        Ok(out)
    }

    /// `a_(j) b = j! · [λ^j] [a λ b]`.
    pub fn jth_product(&self, x: &CElement, y: &CElement, j: u32) -> Result<CElement> {
        let br = self.bracket(x, y)?;
        let scale = Poly::constant(factorial(j as u64));
        Ok(br.map(|q| &q.coeff_of(LAMBDA, j) * &scale))
    }

    /// Least `N` with `a_(j) b = 0` for all `j ≥ N`.
    pub fn locality_order(&self, x: &CElement, y: &CElement) -> Result<u32> {
        let br = self.bracket(x, y)?;
        Ok(if br.is_zero() { 0 } else { br.degree_in(LAMBDA) + 1 })
    }

    /// `[a λ b] + [b_{-λ-∂} a]` for every ordered generator pair.
    pub fn check_skew(&self) -> AxiomReport {
        let skew = -Poly::var(LAMBDA) - Poly::var(D);
        let n = self.rank();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut residual = self.table[i][j].clone();
                residual.add_scaled(&self.table[j][i].substitute(LAMBDA, &skew), &Poly::one());
                entries.push(Residual { gens: alloc::vec![i, j], residual });
            }
        }
        AxiomReport { entries }
    }

    /// `[a λ [b μ c]] - [[a λ b]_{λ+μ} c] - [b μ [a λ c]]` for every ordered triple.
    pub fn check_jacobi(&self) -> AxiomReport {
        let n = self.rank();
        let lambda = Poly::var(LAMBDA);
        let mu = Poly::var(MU);
        let d = Poly::var(D);
        let d_plus_lambda = &d + &lambda;
        let d_plus_mu = &d + &mu;
        let lambda_plus_mu = &lambda + &mu;
        let neg_lambda_mu = -&lambda_plus_mu;
        let in_mu: Vec<Vec<Element>> = (0..n).map(|i| (0..n).map(|j| self.entry_in(i, j, MU)).collect()).collect();
        let in_sum: Vec<Vec<Element>> = (0..n)
            .map(|i| (0..n).map(|j| self.table[i][j].substitute(LAMBDA, &lambda_plus_mu)).collect())
            .collect();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut residual = Element::zero();
                    // [a λ [b μ c]]
                    for (h, q) in in_mu[b][c].iter() {
                        residual.add_scaled(&self.table[a][h], &q.substitute(D, &d_plus_lambda));
                    }
                    // [[a λ b]_{λ+μ} c]
                    for (h, u) in self.table[a][b].iter() {
                        let factor = -u.substitute(D, &neg_lambda_mu);
                        residual.add_scaled(&in_sum[h][c], &factor);
                    }
                    // [b μ [a λ c]]
                    for (h, s) in self.table[a][c].iter() {
                        let factor = -s.substitute(D, &d_plus_mu);
                        residual.add_scaled(&in_mu[b][h], &factor);
                    }
                    entries.push(Residual { gens: alloc::vec![a, b, c], residual });
                }
            }
        }
        AxiomReport { entries }
    }

    /// Renders an element as `(poly) G + ...`, parseable by [`parse_element`].
    pub fn show(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = x
            .iter()
            .map(|(g, q)| {
                let name = &self.generators[g].name;
                if *q == Poly::one() {
                    name.clone()
                } else {
                    format!("({}) {}", q, name)
                }
            })
            .collect();
        parts.join(" + ")
    }
}
