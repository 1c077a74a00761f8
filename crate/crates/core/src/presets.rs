//! The Virasoro, W(a,b), TSV(a,b) and TSV(c) conformal algebras, their
//! closed-form annihilation brackets, and the named rank-one modules.
//!
//! TSV(3/2, 0) is the Schrödinger–Virasoro conformal algebra and TSV(0, 0) its
//! twisted variant; both are plain instances of [`PresetId::Tsv`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{AlgebraBuilder, ConformalAlgebra, Generator};
use crate::annihilation::{AnnBasis, AnnElement};
use crate::error::{Error, Result};
use crate::module::Rank1Action;
use crate::poly::Poly;
use crate::rational::{frac, int, Rational};
use crate::var::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PresetId {
    Vir,
    W,
    /// `W(b)`, expanded to `W(1-b, 0)`.
    WAlias,
    Tsv,
    TsvC,
}

impl PresetId {
    pub const ALL: [PresetId; 5] = [PresetId::Vir, PresetId::W, PresetId::WAlias, PresetId::Tsv, PresetId::TsvC];

    pub fn name(self) -> &'static str {
        match self {
            PresetId::Vir => "vir",
            PresetId::W => "w",
            PresetId::WAlias => "wb",
            PresetId::Tsv => "tsv",
            PresetId::TsvC => "tsvc",
        }
    }

    pub fn from_name(name: &str) -> Result<PresetId> {
        PresetId::ALL
            .into_iter()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::Definition(format!("unknown preset `{}` (expected vir, w, wb, tsv or tsvc)", name)))
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            PresetId::Vir => &[],
            PresetId::W | PresetId::Tsv => &["a", "b"],
            PresetId::WAlias => &["b"],
            PresetId::TsvC => &["c"],
        }
    }
}

/// Closed-form annihilation brackets, stated on displayed labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosedForm {
    Vir,
    W { a: Poly, b: Poly },
    TsvAB { a: Poly, b: Poly },
    TsvC { c: Poly },
}

impl ClosedForm {
    pub fn specialize(&self, values: &BTreeMap<VarId, Poly>) -> ClosedForm {
        let s = |p: &Poly| p.substitute_all(values);
        match self {
            ClosedForm::Vir => ClosedForm::Vir,
            ClosedForm::W { a, b } => ClosedForm::W { a: s(a), b: s(b) },
            ClosedForm::TsvAB { a, b } => ClosedForm::TsvAB { a: s(a), b: s(b) },
            ClosedForm::TsvC { c } => ClosedForm::TsvC { c: s(c) },
        }
    }

    /// `[g_m, h_n]` from the closed formulas. Terms at labels outside the
    /// basis (such as `W_{-1}`) are omitted.
    pub fn bracket(&self, alg: &ConformalAlgebra, g: usize, m: &Rational, h: usize, n: &Rational) -> AnnElement {
        if g > h {
            return self.bracket(alg, h, n, g, m).neg();
        }
        let mut out = AnnElement::zero();
        let mut push = |gen: usize, label: Rational, coeff: Poly| {
            if let Ok(basis) = AnnBasis::from_label(alg, gen, &label) {
                out.add_term(basis, coeff);
            }
        };
        let q = |r: Rational| Poly::constant(r);
        let one = int(1);
        let half = frac(1, 2);
        let sum = m + n;
        match (self, g, h) {
            (_, 0, 0) => push(0, sum, q(m - n)),
            (ClosedForm::W { a, b }, 0, 1) => {
                push(1, sum.clone(), &(a - &Poly::one()) * &q(m + &one) - q(n.clone()));
                push(1, sum + &one, b.clone());
            }
            (ClosedForm::TsvAB { a, b }, 0, 1) => {
                push(1, sum.clone(), &(a - &Poly::one()) * &q(m + &one) - q(n + &half));
                push(1, sum + &one, b.clone());
            }
            (ClosedForm::TsvAB { a, b }, 0, 2) => {
                push(2, sum.clone(), &(&a.scale(&int(2)) - &Poly::int(3)) * &q(m + &one) - q(n.clone()));
                push(2, sum + &one, b.scale(&int(2)));
            }
            (ClosedForm::TsvAB { .. }, 1, 1) => push(2, sum, q(m - n)),
            (ClosedForm::TsvC { c }, 0, 1) => {
                push(1, sum.clone(), q(m * &half - n));
                push(1, sum + &one, c.clone());
            }
            (ClosedForm::TsvC { c }, 0, 2) => {
                push(2, sum.clone(), q(-(m + &one) - n));
                push(2, sum + &one, c.scale(&int(2)));
            }
            (ClosedForm::TsvC { c }, 1, 1) => {
                push(2, &sum - &one, q((m - n) * &sum));
                push(2, sum, c.scale(&(int(2) * (n - m))));
            }
            _ => {}
        }
        out
    }
}

fn lookup_binding(bindings: &[(&str, Rational)], allowed: &[&str], preset: PresetId) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for (name, value) in bindings {
        if !allowed.contains(name) {
            return Err(Error::Binding(format!("`{}` is not a parameter of preset {}", name, preset.name())));
        }
        out.insert(String::from(*name), value.clone());
    }
    Ok(out)
}

/// Builds a preset. Unbound parameters stay symbolic.
pub fn instantiate(id: PresetId, bindings: &[(&str, Rational)]) -> Result<ConformalAlgebra> {
    let bound = lookup_binding(bindings, id.param_names(), id)?;
    let l = Generator::new("L").with_offset(int(1));
    let alg = match id {
        PresetId::Vir => {
            let mut b = AlgebraBuilder::new("Vir");
            b.generator(l)?;
            b.bracket_str("L", "L", "(d + 2*x) L")?;
            b.virasoro("L")?;
            b.closed_form(ClosedForm::Vir);
            b.build()?
        }
        PresetId::W | PresetId::WAlias => {
            let (name, pa, pb) = if id == PresetId::W {
                let a = VarId::named("a");
                let b = VarId::named("b");
                ("W(a,b)", Poly::var(a), Poly::var(b))
            } else {
                let b = VarId::named("b");
                ("W(b)", Poly::one() - Poly::var(b), Poly::zero())
            };
            let mut b = AlgebraBuilder::new(name);
            for p in id.param_names() {
                b.param(p)?;
            }
            b.generator(l)?;
            b.generator(Generator::new("W"))?;
            b.bracket_str("L", "L", "(d + 2*x) L")?;
            b.bracket_str("L", "W", &format!("(d + ({})*x + ({})) W", pa, pb))?;
            b.bracket_str("W", "W", "0")?;
            b.virasoro("L")?;
            b.closed_form(ClosedForm::W { a: pa, b: pb });
            b.build()?
        }
        PresetId::Tsv => {
            let mut b = AlgebraBuilder::new("TSV(a,b)");
            let pa = Poly::var(b.param("a")?);
            let pb = Poly::var(b.param("b")?);
            b.generator(l)?;
            b.generator(Generator::new("Y").with_offset(frac(1, 2)).with_shift(frac(1, 2)))?;
            b.generator(Generator::new("M"))?;
            b.bracket_str("L", "L", "(d + 2*x) L")?;
            b.bracket_str("L", "Y", "(d + a*x + b) Y")?;
            b.bracket_str("L", "M", "(d + 2*(a - 1)*x + 2*b) M")?;
            b.bracket_str("Y", "Y", "(d + 2*x) M")?;
            b.bracket_str("Y", "M", "0")?;
            b.bracket_str("M", "M", "0")?;
            b.virasoro("L")?;
            b.closed_form(ClosedForm::TsvAB { a: pa, b: pb });
            b.build()?
        }
        PresetId::TsvC => {
            let mut b = AlgebraBuilder::new("TSV(c)");
            let pc = Poly::var(b.param("c")?);
            b.generator(l)?;
            b.generator(Generator::new("Y").with_offset(frac(1, 2)).with_shift(frac(1, 2)))?;
            b.generator(Generator::new("M"))?;
            b.bracket_str("L", "L", "(d + 2*x) L")?;
            b.bracket_str("L", "Y", "(d + 3/2*x + c) Y")?;
            b.bracket_str("L", "M", "(d + 2*c) M")?;
            b.bracket_str("Y", "Y", "(d + 2*x)*(-d - 2*c) M")?;
            b.bracket_str("Y", "M", "0")?;
            b.bracket_str("M", "M", "0")?;
            b.virasoro("L")?;
            b.closed_form(ClosedForm::TsvC { c: pc });
            b.build()?
        }
    };
    if bound.is_empty() {
        return Ok(alg);
    }
    let values = bound.iter().map(|(k, v)| (VarId::named(k), v.clone())).collect();
    alg.specialize(&values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleName {
    /// `L λ v = (∂+αλ+β)v`, every other generator acting by zero.
    AlphaBeta,
    /// As above with the second generator acting by the constant γ.
    AlphaBetaGamma,
}

/// `M_{α,β}` or `M_{α,β,γ}` over a preset. Family parameters not listed in
/// `family` stay symbolic as `alpha`, `beta`, `gamma`.
pub fn named_module(
    name: ModuleName,
    over: PresetId,
    algebra_bindings: &[(&str, Rational)],
    family: &[(&str, Rational)],
) -> Result<Rank1Action> {
    let alg = instantiate(over, algebra_bindings)?;
    let mut fam = BTreeMap::new();
    for (k, v) in family {
        let allowed: &[&str] = match name {
            ModuleName::AlphaBeta => &["alpha", "beta"],
            ModuleName::AlphaBetaGamma => &["alpha", "beta", "gamma"],
        };
        if !allowed.contains(k) {
            return Err(Error::Binding(format!("`{}` is not a parameter of this module family", k)));
        }
        fam.insert(*k, Poly::constant(v.clone()));
    }
    let sym = |k: &str| fam.get(k).cloned().unwrap_or_else(|| Poly::var(VarId::named(k)));
    let l_action = Poly::var(crate::var::D) + &sym("alpha") * &Poly::var(crate::var::LAMBDA) + sym("beta");
    let mut actions: Vec<Poly> = alloc::vec![Poly::zero(); alg.rank()];
    actions[0] = l_action;
    if name == ModuleName::AlphaBetaGamma {
        let ok = match (&alg.closed_form(), over) {
            (Some(ClosedForm::W { a, b }), PresetId::W | PresetId::WAlias) | (Some(ClosedForm::TsvAB { a, b }), PresetId::Tsv) => {
                *a == Poly::one() && b.is_zero()
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Precondition(format!(
                "M_(alpha,beta,gamma) requires W(1,0) or TSV(1,0), not {}",
                alg.name
            )));
        }
        actions[1] = sym("gamma");
    }
    Rank1Action::new(&alg, actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Element;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn vir_shape() {
        let vir = instantiate(PresetId::Vir, &[]).unwrap();
        assert_eq!(vir.rank(), 1);
        assert_eq!(vir.entry(0, 0), &Element::single(0, p("d + 2*x")));
    }

    #[test]
    fn w_alias_expands() {
        let alias = instantiate(PresetId::WAlias, &[("b", frac(1, 2))]).unwrap();
        let direct = instantiate(PresetId::W, &[("a", frac(1, 2)), ("b", int(0))]).unwrap();
        assert_eq!(alias.entry(0, 1), direct.entry(0, 1));
        assert_eq!(alias.entry(1, 0), direct.entry(1, 0));
        assert!(alias.params().is_empty());
    }

    #[test]
    fn tsvc_at_zero() {
        let t = instantiate(PresetId::TsvC, &[("c", int(0))]).unwrap();
        assert_eq!(t.entry(0, 2), &Element::single(2, p("d")));
        assert_eq!(t.entry(1, 1), &Element::single(2, p("-(d + 2*x)*d")));
    }

    #[test]
    fn undeclared_binding_is_rejected() {
        assert!(matches!(instantiate(PresetId::Vir, &[("a", int(1))]), Err(Error::Binding(_))));
        assert!(PresetId::from_name("sl2").is_err());
    }

    #[test]
    fn named_modules() {
        let m = named_module(ModuleName::AlphaBeta, PresetId::Vir, &[], &[("alpha", int(1)), ("beta", int(0))]).unwrap();
        assert_eq!(m.action(0), &p("d + x"));
        let g = named_module(
            ModuleName::AlphaBetaGamma,
            PresetId::W,
            &[("a", int(1)), ("b", int(0))],
            &[("alpha", int(0)), ("beta", int(0)), ("gamma", int(1))],
        )
        .unwrap();
        assert_eq!(g.action(0), &p("d"));
        assert_eq!(g.action(1), &p("1"));
        let bad = named_module(ModuleName::AlphaBetaGamma, PresetId::W, &[("a", int(2)), ("b", int(0))], &[]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }
}
