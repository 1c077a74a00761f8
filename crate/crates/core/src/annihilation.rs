//! Annihilation algebras: the Lie algebra spanned by `a_(n)`, `n ≥ 0`, with
//! `[a_(m), b_(n)] = Σ_j C(m,j) (a_(j) b)_(m+n-j)` and `(∂a)_(n) = -n a_(n-1)`,
//! extended by the outer derivation `∂ a_(n) = -n a_(n-1)`.
//!
//! Bases are stored by internal index `n`; the displayed label is
//! `n - label_offset` and the filtration degree is `label - filtration_shift`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Signed;

use crate::algebra::{ConformalAlgebra, Element};
use crate::error::{Error, Result};
use crate::lie::{BasisLabel, FiniteLie};
use crate::poly::Poly;
use crate::rational::{binomial, falling_factorial, int, to_index, Rational};
use crate::var::{VarId, D};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnBasis {
    pub gen: usize,
    pub index: u64,
}

impl AnnBasis {
    pub fn from_label(alg: &ConformalAlgebra, gen: usize, label: &Rational) -> Result<AnnBasis> {
        let g = alg
            .generators()
            .get(gen)
            .ok_or_else(|| Error::Index(format!("no generator with index {}", gen)))?;
        let n = label + &g.label_offset;
        to_index(&n)
            .map(|index| AnnBasis { gen, index })
            .ok_or_else(|| Error::Index(format!("{}_{{{}}} is not a basis element", g.name, show_label(label))))
    }

    pub fn label(&self, alg: &ConformalAlgebra) -> Rational {
        int(self.index as i64) - &alg.generators()[self.gen].label_offset
    }

    pub fn degree(&self, alg: &ConformalAlgebra) -> Rational {
        self.label(alg) - &alg.generators()[self.gen].filtration_shift
    }

    pub fn show(&self, alg: &ConformalAlgebra) -> String {
        format!("{}_{{{}}}", alg.generators()[self.gen].name, show_label(&self.label(alg)))
    }
}

fn show_label(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Finite sum of annihilation basis elements with coefficients in the parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnnElement {
    terms: BTreeMap<AnnBasis, Poly>,
}

impl AnnElement {
    pub fn zero() -> Self {
        AnnElement::default()
    }

    pub fn add_term(&mut self, basis: AnnBasis, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(basis).or_default();
        *slot += &coeff;
        if slot.is_zero() {
            self.terms.remove(&basis);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, basis: AnnBasis) -> Poly {
        self.terms.get(&basis).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (AnnBasis, &Poly)> {
        self.terms.iter().map(|(b, q)| (*b, q))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> AnnElement {
        let mut out = AnnElement::zero();
        for (b, q) in &self.terms {
            out.add_term(*b, f(q));
        }
        out
    }

    pub fn neg(&self) -> AnnElement {
        self.map(|q| -q)
    }

    pub fn show(&self, alg: &ConformalAlgebra) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(b, q)| if *q == Poly::one() { b.show(alg) } else { format!("({}) {}", q, b.show(alg)) })
            .collect();
        parts.join(" + ")
    }
}

/// `(Σ_k p_k(∂) k)_(idx)` rewritten with `(∂^i g)_(n) = (-1)^i n(n-1)…(n-i+1) g_(n-i)`.
pub fn expand_coefficient(elem: &Element, idx: u64) -> AnnElement {
    let mut out = AnnElement::zero();
    for (k, p) in elem.iter() {
        for i in 0..=p.degree_in(D) {
            if u64::from(i) > idx {
                break;
            }
            let c = p.coeff_of(D, i);
            if c.is_zero() {
                continue;
            }
            let mut factor = falling_factorial(idx, u64::from(i));
            if i % 2 == 1 {
                factor = -factor;
            }
            out.add_term(AnnBasis { gen: k, index: idx - u64::from(i) }, c.scale(&factor));
        }
    }
    out
}

/// Bracket engine caching the j-th products of generator pairs.
#[derive(Debug, Clone)]
pub struct Annihilation<'a> {
    alg: &'a ConformalAlgebra,
    /// `products[g][h][j] = g_(j) h`.
    products: Vec<Vec<Vec<Element>>>,
}

impl<'a> Annihilation<'a> {
    pub fn new(alg: &'a ConformalAlgebra) -> Self {
        let n = alg.rank();
        let products = (0..n)
            .map(|g| {
                (0..n)
                    .map(|h| {
                        let (x, y) = (Element::generator(g), Element::generator(h));
                        let order = alg.locality_order(&x, &y).expect("generators belong to the algebra");
                        (0..order).map(|j| alg.jth_product(&x, &y, j).expect("generators belong to the algebra")).collect()
                    })
                    .collect()
            })
            .collect();
        Annihilation { alg, products }
    }

    pub fn algebra(&self) -> &'a ConformalAlgebra {
        self.alg
    }

    pub fn bracket_basis(&self, x: AnnBasis, y: AnnBasis) -> AnnElement {
        let mut out = AnnElement::zero();
        let prods = &self.products[x.gen][y.gen];
        for (j, prod) in prods.iter().enumerate() {
            let j = j as u64;
            if j > x.index {
                break;
            }
            let c = binomial(x.index, j);
            let piece = expand_coefficient(prod, x.index + y.index - j);
            for (b, q) in piece.iter() {
                out.add_term(b, q.scale(&c));
            }
        }
        out
    }

    pub fn bracket(&self, x: &AnnElement, y: &AnnElement) -> AnnElement {
        let mut out = AnnElement::zero();
        for (bx, qx) in x.iter() {
            for (by, qy) in y.iter() {
                let factor = qx * qy;
                for (b, q) in self.bracket_basis(bx, by).iter() {
                    out.add_term(b, q * &factor);
                }
            }
        }
        out
    }

    /// `[∂, g_(n)] = -n g_(n-1)`.
    pub fn partial(&self, x: AnnBasis) -> AnnElement {
        partial_basis(x)
    }
}

fn partial_basis(x: AnnBasis) -> AnnElement {
    let mut out = AnnElement::zero();
    if x.index > 0 {
        out.add_term(AnnBasis { gen: x.gen, index: x.index - 1 }, Poly::int(-(x.index as i64)));
    }
    out
}

/// `[g_m, h_n]` on displayed labels.
pub fn ann_bracket(alg: &ConformalAlgebra, g: usize, m: &Rational, h: usize, n: &Rational) -> Result<AnnElement> {
    let x = AnnBasis::from_label(alg, g, m)?;
    let y = AnnBasis::from_label(alg, h, n)?;
    Ok(Annihilation::new(alg).bracket_basis(x, y))
}

/// Image of `g_label` under the outer derivation ∂.
pub fn partial_action(alg: &ConformalAlgebra, g: usize, label: &Rational) -> Result<AnnElement> {
    Ok(partial_basis(AnnBasis::from_label(alg, g, label)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub left: AnnBasis,
    pub right: AnnBasis,
    pub computed: AnnElement,
    pub expected: AnnElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormReport {
    pub pairs: usize,
    pub mismatches: Vec<Mismatch>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Every basis element of every generator with label `≤ max_label`.
pub fn basis_up_to(alg: &ConformalAlgebra, max_label: &Rational) -> Vec<AnnBasis> {
    let mut out = Vec::new();
    for (gen, g) in alg.generators().iter().enumerate() {
        let top = max_label + &g.label_offset;
        if top.is_negative() {
            continue;
        }
        for index in 0..=top.floor().to_integer().try_into().unwrap_or(0u64) {
            out.push(AnnBasis { gen, index });
        }
    }
    out
}

/// Compares the computed bracket with the registered closed form on all
/// ordered basis pairs with labels `≤ max_label`.
pub fn compare_closed_form(alg: &ConformalAlgebra, max_label: &Rational) -> Result<ClosedFormReport> {
    let cf = alg
        .closed_form()
        .ok_or_else(|| Error::Unsupported(format!("{} has no registered closed form", alg.name)))?;
    let ann = Annihilation::new(alg);
    let basis = basis_up_to(alg, max_label);
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for &x in &basis {
        for &y in &basis {
            pairs += 1;
            let computed = ann.bracket_basis(x, y);
            let expected = cf.bracket(alg, x.gen, &x.label(alg), y.gen, &y.label(alg));
            if computed != expected {
                mismatches.push(Mismatch { left: x, right: y, computed, expected });
            }
        }
    }
    Ok(ClosedFormReport { pairs, mismatches })
}

#[derive(Debug, Clone, PartialEq)]
pub enum FiltrationViolation {
    /// `[x, y]` has a term below degree `deg x + deg y`.
    Bracket { left: AnnBasis, right: AnnBasis, term: AnnBasis },
    /// `∂x` has a term below degree `deg x - 1`.
    Partial { source: AnnBasis, term: AnnBasis },
    /// The degree `n-1` element is not hit by ∂ from degree `n`.
    NotSurjective { target: AnnBasis },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiltrationReport {
    pub max_degree: u64,
    pub pairs_checked: usize,
    pub violations: Vec<FiltrationViolation>,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn require_integral_degrees(alg: &ConformalAlgebra) -> Result<()> {
    for g in alg.generators() {
        if !(&g.label_offset + &g.filtration_shift).is_integer() {
            return Err(Error::Definition(format!("generator {} has non-integral filtration degrees", g.name)));
        }
    }
    Ok(())
}

/// The basis element of `gen` in filtration degree `deg`, if it exists.
fn basis_at_degree(alg: &ConformalAlgebra, gen: usize, deg: i64) -> Option<AnnBasis> {
    let g = &alg.generators()[gen];
    let index = int(deg) + &g.filtration_shift + &g.label_offset;
    to_index(&index).map(|index| AnnBasis { gen, index })
}

/// Checks `[F_m, F_n] ⊆ F_{m+n}` and `[∂, F_n] = F_{n-1}` for degrees up to `m_max`.
pub fn filtration_check(alg: &ConformalAlgebra, m_max: u64) -> Result<FiltrationReport> {
    require_integral_degrees(alg)?;
    let ann = Annihilation::new(alg);
    let mut layer = Vec::new();
    for deg in 0..=m_max as i64 {
        for gen in 0..alg.rank() {
            if let Some(b) = basis_at_degree(alg, gen, deg) {
                layer.push((deg, b));
            }
        }
    }
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for (i, &(dx, x)) in layer.iter().enumerate() {
        for &(dy, y) in &layer[i..] {
            pairs_checked += 1;
            let floor = int(dx + dy);
            for (t, _) in ann.bracket_basis(x, y).iter() {
                if t.degree(alg) < floor {
                    violations.push(FiltrationViolation::Bracket { left: x, right: y, term: t });
                }
            }
        }
        let image = ann.partial(x);
        for (t, _) in image.iter() {
            if t.degree(alg) < int(dx - 1) {
                violations.push(FiltrationViolation::Partial { source: x, term: t });
            }
        }
        if let Some(target) = basis_at_degree(alg, x.gen, dx - 1) {
            if image.coeff(target).is_zero() {
                violations.push(FiltrationViolation::NotSurjective { target });
            }
        }
    }
    Ok(FiltrationReport { max_degree: m_max, pairs_checked, violations })
}

/// `L_0 / L_N` for fully bound parameters, ordered by (degree, generator).
pub fn truncated_quotient(alg: &ConformalAlgebra, n: u64, bindings: &BTreeMap<VarId, Rational>) -> Result<FiniteLie> {
    if n == 0 {
        return Err(Error::Precondition("the truncation level must be positive".to_string()));
    }
    let alg = alg.specialize(bindings)?;
    if let Some(v) = alg.params().first() {
        return Err(Error::Binding(format!("parameter `{}` of {} is unbound", v, alg.name)));
    }
    require_integral_degrees(&alg)?;
    let mut basis = Vec::new();
    for deg in 0..n as i64 {
        for gen in 0..alg.rank() {
            if let Some(b) = basis_at_degree(&alg, gen, deg) {
                basis.push(b);
            }
        }
    }
    let position: BTreeMap<AnnBasis, usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let top = int(n as i64);
    let ann = Annihilation::new(&alg);
    let mut brackets = BTreeMap::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let mut terms = Vec::new();
            for (t, q) in ann.bracket_basis(basis[i], basis[j]).iter() {
                let deg = t.degree(&alg);
                if deg >= top {
                    continue;
                }
                let k = *position.get(&t).ok_or_else(|| {
                    Error::Definition(format!("{} leaves the filtration", t.show(&alg)))
                })?;
                let c = q.constant_value().expect("parameters are bound");
                terms.push((k, c));
            }
            if !terms.is_empty() {
                brackets.insert((i, j), terms);
            }
        }
    }
    let labels = basis
        .iter()
        .map(|b| BasisLabel { gen: alg.generators()[b.gen].name.clone(), label: b.label(&alg) })
        .collect();
    FiniteLie::new(labels, brackets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{instantiate, PresetId};
    use crate::rational::frac;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn w_lm_wn() {
        let w = instantiate(PresetId::W, &[]).unwrap();
        let got = ann_bracket(&w, 0, &int(1), 1, &int(2)).unwrap();
        let mut expect = AnnElement::zero();
        expect.add_term(AnnBasis::from_label(&w, 1, &int(3)).unwrap(), p("2*a - 4"));
        expect.add_term(AnnBasis::from_label(&w, 1, &int(4)).unwrap(), p("b"));
        assert_eq!(got, expect);
    }

    #[test]
    fn tsv_yy() {
        let t = instantiate(PresetId::Tsv, &[]).unwrap();
        let got = ann_bracket(&t, 1, &frac(1, 2), 1, &frac(3, 2)).unwrap();
        let mut expect = AnnElement::zero();
        expect.add_term(AnnBasis::from_label(&t, 2, &int(2)).unwrap(), p("-1"));
        assert_eq!(got, expect);

        let c = instantiate(PresetId::TsvC, &[]).unwrap();
        let got = ann_bracket(&c, 1, &frac(1, 2), 1, &frac(3, 2)).unwrap();
        let mut expect = AnnElement::zero();
        expect.add_term(AnnBasis::from_label(&c, 2, &int(1)).unwrap(), p("-2"));
        expect.add_term(AnnBasis::from_label(&c, 2, &int(2)).unwrap(), p("2*c"));
        assert_eq!(got, expect);
    }

    #[test]
    fn invalid_labels() {
        let t = instantiate(PresetId::Tsv, &[]).unwrap();
        assert!(matches!(ann_bracket(&t, 1, &frac(-3, 2), 1, &frac(1, 2)), Err(Error::Index(_))));
        assert!(AnnBasis::from_label(&t, 0, &int(-2)).is_err());
        assert!(AnnBasis::from_label(&t, 1, &int(0)).is_err());
        assert!(AnnBasis::from_label(&t, 1, &frac(-1, 2)).is_ok());
    }

    #[test]
    fn partial_actions() {
        let t = instantiate(PresetId::Tsv, &[]).unwrap();
        let got = partial_action(&t, 0, &int(0)).unwrap();
        assert_eq!(got.show(&t), "(-1) L_{-1}");
        assert!(partial_action(&t, 2, &int(0)).unwrap().is_zero());
        let got = partial_action(&t, 1, &frac(1, 2)).unwrap();
        assert_eq!(got.show(&t), "(-1) Y_{-1/2}");
    }

    #[test]
    fn closed_forms_match() {
        for id in [PresetId::Vir, PresetId::W, PresetId::WAlias, PresetId::Tsv, PresetId::TsvC] {
            let alg = instantiate(id, &[]).unwrap();
            let report = compare_closed_form(&alg, &int(6)).unwrap();
            assert!(report.passed(), "{:?}: {:?}", id, report.mismatches.first());
        }
    }

    #[test]
    fn filtrations_hold() {
        for id in [PresetId::W, PresetId::Tsv, PresetId::TsvC] {
            let alg = instantiate(id, &[]).unwrap();
            let report = filtration_check(&alg, 6).unwrap();
            assert!(report.passed(), "{:?}: {:?}", id, report.violations);
        }
    }

    #[test]
    fn truncations() {
        let w = instantiate(PresetId::W, &[]).unwrap();
        let bind = |pairs: &[(&str, Rational)]| -> BTreeMap<VarId, Rational> {
            pairs.iter().map(|(k, v)| (VarId::named(k), v.clone())).collect()
        };
        let q = truncated_quotient(&w, 1, &bind(&[("a", int(2)), ("b", int(1))])).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.structure(0, 1), alloc::vec![(1, int(1))]);
        let q = truncated_quotient(&w, 1, &bind(&[("a", int(1)), ("b", int(1))])).unwrap();
        assert!(q.structure(0, 1).is_empty());
        assert!(matches!(truncated_quotient(&w, 1, &bind(&[("a", int(1))])), Err(Error::Binding(_))));

        let t = instantiate(PresetId::Tsv, &[]).unwrap();
        let q = truncated_quotient(&t, 1, &bind(&[("a", int(0)), ("b", int(0))])).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.structure(0, 1), alloc::vec![(1, int(-2))]);
        assert_eq!(q.structure(0, 2), alloc::vec![(2, int(-3))]);
        assert!(q.structure(1, 1).is_empty());
    }
}
