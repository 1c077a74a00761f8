//! Exact solver for small polynomial systems.
//!
//! Elimination order is the caller's unknown order: earlier unknowns are
//! solved for first, later ones are kept free where possible. The strategy is
//! deliberately narrow:
//!
//! 1. solve a linear equation for its earliest unknown;
//! 2. find the rational roots of a univariate equation and branch on them;
//! 3. split `v^k * e = 0` into `v = 0` and `e = 0`;
//! 4. solve `c*v + rest = 0` (constant `c`, `rest` free of `v`) for `v`.
//!
//! Anything else is reported as an unsupported system. Branch results are
//! pruned so that no returned family is contained in another.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::rational::Rational;
use crate::var::VarId;

/// One irreducible-by-construction piece of a solution set: the `free`
/// unknowns range over all values, every other unknown is a polynomial in them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFamily {
    pub free: Vec<VarId>,
    pub assigned: BTreeMap<VarId, Poly>,
}

impl SolutionFamily {
    pub fn value(&self, v: VarId) -> Poly {
        self.assigned.get(&v).cloned().unwrap_or_else(|| Poly::var(v))
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute_all(&self.assigned)
    }

    /// `other ⊆ self`, decided exactly: every point of `other` satisfies the
    /// graph equations `u = e(free)` that define `self`.
    pub fn contains(&self, other: &SolutionFamily) -> bool {
        let image: BTreeMap<VarId, Poly> = self.free.iter().map(|&w| (w, other.value(w))).collect();
        self.assigned
            .iter()
            .all(|(&v, expr)| other.value(v) == expr.substitute_all(&image))
    }

    /// Specializes the free unknowns.
    pub fn point(&self, values: &BTreeMap<VarId, Poly>) -> BTreeMap<VarId, Poly> {
        let mut out: BTreeMap<VarId, Poly> = self
            .assigned
            .iter()
            .map(|(&v, e)| (v, e.substitute_all(values)))
            .collect();
        for &w in &self.free {
            out.insert(w, values.get(&w).cloned().unwrap_or_else(|| Poly::var(w)));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    pub unknowns: Vec<VarId>,
    pub families: Vec<SolutionFamily>,
}

impl SolutionSet {
    pub fn is_inconsistent(&self) -> bool {
        self.families.is_empty()
    }

    /// True when every family annihilates every equation identically.
    pub fn satisfies(&self, eqs: &[Poly]) -> bool {
        self.families
            .iter()
            .all(|fam| eqs.iter().all(|e| fam.apply(e).is_zero()))
    }
}

#[derive(Clone)]
struct Branch {
    eqs: Vec<Poly>,
    assigned: BTreeMap<VarId, Poly>,
}

struct Ctx<'a> {
    order: &'a BTreeMap<VarId, usize>,
    unknowns: &'a [VarId],
    out: Vec<SolutionFamily>,
}

impl Branch {
    fn assign(&mut self, v: VarId, value: Poly) {
        for e in self.eqs.iter_mut() {
            if e.contains_var(v) {
                *e = e.substitute(v, &value);
            }
        }
        for e in self.assigned.values_mut() {
            if e.contains_var(v) {
                *e = e.substitute(v, &value);
            }
        }
        self.assigned.insert(v, value);
    }

    /// Drops zero equations, rescales, dedupes. `false` if a nonzero constant appears.
    fn normalize(&mut self) -> bool {
        let mut set = BTreeSet::new();
        for e in self.eqs.drain(..) {
            if e.is_zero() {
                continue;
            }
            if e.is_constant() {
                return false;
            }
            set.insert(e.monic());
        }
        self.eqs = set.into_iter().collect();
        self.eqs.sort_by_key(|e| (e.total_degree(), e.num_terms()));
        true
    }
}

/// `v` occurs only in a single `c*v` term with constant `c`.
fn clean_pivot(eq: &Poly, v: VarId) -> Option<Rational> {
    let mut found = None;
    for (m, c) in eq.terms() {
        let e = m.exponent(v);
        if e == 0 {
            continue;
        }
        if e == 1 && m.degree() == 1 && found.is_none() {
            found = Some(c.clone());
        } else {
            return None;
        }
    }
    found
}

fn solve_pivot(eq: &Poly, v: VarId, c: &Rational) -> Poly {
    let rest = eq - &Poly::term(c.clone(), Monomial::var(v));
    rest.scale(&(-c.recip()))
}

fn divisors(n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Rational roots of a univariate polynomial in `v`; `Err` when some root is irrational.
fn rational_roots(eq: &Poly, v: VarId) -> Result<Vec<Rational>> {
    let unsupported = || Error::UnsupportedSystem { equation: format!("{}", eq) };
    let deg = eq.degree_in(v);
    let mut coeffs: Vec<Rational> = (0..=deg)
        .map(|k| eq.coeff_of(v, k).constant_value().expect("univariate"))
        .collect();
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if !roots.contains(&Rational::zero()) {
            roots.push(Rational::zero());
        }
    }
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
    let a0 = ints[0].abs().to_u128().ok_or_else(unsupported)?;
    let an = lead.abs().to_u128().ok_or_else(unsupported)?;
    if a0 > 1_000_000_000_000 || an > 1_000_000_000_000 {
        return Err(unsupported());
    }
    let mut remaining = coeffs;
    if remaining.len() > 1 {
        for p in divisors(a0) {
            for q in divisors(an) {
                for sign in [1i64, -1] {
                    let r = Rational::new(BigInt::from(p) * BigInt::from(sign), BigInt::from(q));
                    while remaining.len() > 1 && horner(&remaining, &r).is_zero() {
                        remaining = deflate(&remaining, &r);
                        if !roots.contains(&r) {
                            roots.push(r.clone());
                        }
                    }
                }
            }
        }
    }
    if remaining.len() > 1 {
        return Err(unsupported());
    }
    roots.sort();
    Ok(roots)
}

fn horner(coeffs: &[Rational], r: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * r + c)
}

/// Divides by `(v - r)`; coefficients are stored lowest degree first.
fn deflate(coeffs: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = coeffs.len() - 1;
    let mut out = alloc::vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for k in (1..=n).rev() {
        carry = &coeffs[k] + carry * r;
        out[k - 1] = carry.clone();
    }
    out
}

fn run(mut br: Branch, ctx: &mut Ctx<'_>) -> Result<()> {
    loop {
        if !br.normalize() {
            return Ok(());
        }
        if br.eqs.is_empty() {
            let free = ctx
                .unknowns
                .iter()
                .copied()
                .filter(|u| !br.assigned.contains_key(u))
                .collect();
            ctx.out.push(SolutionFamily { free, assigned: br.assigned });
            return Ok(());
        }

        // 1. Linear equations, earliest unknown first.
        let linear = br
            .eqs
            .iter()
            .enumerate()
            .filter(|(_, e)| e.total_degree() == 1)
            .flat_map(|(i, e)| e.vars().into_iter().map(move |v| (i, v)))
            .min_by_key(|&(i, v)| (ctx.order[&v], i));
        if let Some((i, v)) = linear {
            let c = clean_pivot(&br.eqs[i], v).expect("linear equation");
            let value = solve_pivot(&br.eqs[i], v, &c);
            br.assign(v, value);
            continue;
        }

        // 2. Univariate equations.
        if let Some(eq) = br.eqs.iter().find(|e| e.vars().len() == 1).cloned() {
            let v = *eq.vars().iter().next().expect("one variable");
            for r in rational_roots(&eq, v)? {
                let mut next = br.clone();
                next.assign(v, Poly::constant(r));
                run(next, ctx)?;
            }
            return Ok(());
        }

        // 3. A variable dividing every term.
        let factor = br.eqs.iter().enumerate().find_map(|(i, e)| {
            let mut common: Option<BTreeMap<VarId, u32>> = None;
            for (m, _) in e.terms() {
                let here: BTreeMap<VarId, u32> = m.iter().collect();
                common = Some(match common {
                    None => here,
                    Some(prev) => prev
                        .into_iter()
                        .filter_map(|(v, k)| here.get(&v).map(|&k2| (v, k.min(k2))))
                        .collect(),
                });
            }
            common
                .unwrap_or_default()
                .into_iter()
                .min_by_key(|(v, _)| ctx.order[v])
                .map(|(v, k)| (i, v, k))
        });
        if let Some((i, v, k)) = factor {
            let mut zero = br.clone();
            zero.assign(v, Poly::zero());
            run(zero, ctx)?;
            let mut rest = br;
            let (q, r) = rest.eqs[i].monic_div_rem(&Poly::term(Rational::one(), Monomial::power(v, k)), v)?;
            debug_assert!(r.is_zero());
            rest.eqs[i] = q;
            return run(rest, ctx);
        }

        // 4. Clean pivot with a nonlinear remainder.
        let pivot = br
            .eqs
            .iter()
            .enumerate()
            .flat_map(|(i, e)| e.vars().into_iter().map(move |v| (i, v)))
            .filter_map(|(i, v)| clean_pivot(&br.eqs[i], v).map(|c| (i, v, c)))
            .min_by_key(|(i, v, _)| (ctx.order[v], *i));
        if let Some((i, v, c)) = pivot {
            let value = solve_pivot(&br.eqs[i], v, &c);
            br.assign(v, value);
            continue;
        }

        return Err(Error::UnsupportedSystem {
            equation: format!("{} = 0", br.eqs[0]),
        });
    }
}

fn prune(families: Vec<SolutionFamily>) -> Vec<SolutionFamily> {
    let mut kept: Vec<SolutionFamily> = Vec::new();
    for (i, fam) in families.iter().enumerate() {
        let redundant = families.iter().enumerate().any(|(j, other)| {
            j != i && other.contains(fam) && (!fam.contains(other) || j < i)
        });
        if !redundant {
            kept.push(fam.clone());
        }
    }
    kept
}

/// Solves `eqs = 0` over `unknowns` (listed in elimination priority).
pub fn solve_system(eqs: &[Poly], unknowns: &[VarId]) -> Result<SolutionSet> {
    let order: BTreeMap<VarId, usize> = unknowns.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for eq in eqs {
        if let Some(v) = eq.vars().into_iter().find(|v| !order.contains_key(v)) {
            return Err(Error::Precondition(format!(
                "equation {} mentions `{}`, which is not an unknown",
                eq, v
            )));
        }
    }
    let mut ctx = Ctx { order: &order, unknowns, out: Vec::new() };
    run(Branch { eqs: eqs.to_vec(), assigned: BTreeMap::new() }, &mut ctx)?;
    Ok(SolutionSet { unknowns: unknowns.to_vec(), families: prune(ctx.out) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    fn vars(names: &[&str]) -> Vec<VarId> {
        names.iter().map(|n| VarId::named(n)).collect()
    }

    #[test]
    fn single_linear_equation() {
        let u = vars(&["sx"]);
        let sol = solve_system(&[p("sx - 3")], &u).unwrap();
        assert_eq!(sol.families.len(), 1);
        assert_eq!(sol.families[0].value(u[0]), Poly::int(3));
        assert!(sol.families[0].free.is_empty());
    }

    #[test]
    fn product_branches() {
        let u = vars(&["sx", "sy"]);
        let eqs = [p("sx*sy"), p("sx + sy - 1")];
        let sol = solve_system(&eqs, &u).unwrap();
        let points: BTreeSet<(Poly, Poly)> = sol
            .families
            .iter()
            .map(|f| (f.value(u[0]), f.value(u[1])))
            .collect();
        let expect: BTreeSet<(Poly, Poly)> = [(Poly::zero(), Poly::one()), (Poly::one(), Poly::zero())].into_iter().collect();
        assert_eq!(points, expect);
        assert!(sol.satisfies(&eqs));
    }

    #[test]
    fn inconsistent_system() {
        let u = vars(&["sx"]);
        let sol = solve_system(&[p("sx - 1"), p("sx - 2")], &u).unwrap();
        assert!(sol.is_inconsistent());
    }

    #[test]
    fn free_unknowns_survive() {
        let u = vars(&["sx", "sy", "sz"]);
        let sol = solve_system(&[p("sx - sy - 2*sz")], &u).unwrap();
        assert_eq!(sol.families.len(), 1);
        assert_eq!(sol.families[0].free, vars(&["sy", "sz"]));
    }

    #[test]
    fn univariate_roots() {
        let u = vars(&["sx"]);
        let sol = solve_system(&[p("2*sx^3 - 3*sx^2 + sx")], &u).unwrap();
        let roots: Vec<Poly> = sol.families.iter().map(|f| f.value(u[0])).collect();
        assert_eq!(roots, [p("0"), p("1/2"), p("1")]);
        let err = solve_system(&[p("sx^2 - 2")], &u).unwrap_err();
        assert!(matches!(err, Error::UnsupportedSystem { .. }));
    }

    #[test]
    fn redundant_branches_are_pruned() {
        let u = vars(&["sx", "sy"]);
        // sx*sy = 0 and sx*(sy-1) = 0 ⇒ sx = 0 (sy free).
        let sol = solve_system(&[p("sx*sy"), p("sx*sy - sx")], &u).unwrap();
        assert_eq!(sol.families.len(), 1);
        assert_eq!(sol.families[0].value(u[0]), Poly::zero());
        assert_eq!(sol.families[0].free, vars(&["sy"]));
    }

    #[test]
    fn rejects_foreign_variables() {
        let u = vars(&["sx"]);
        assert!(matches!(solve_system(&[p("sx - d")], &u), Err(Error::Precondition(_))));
    }

    #[test]
    fn family_containment() {
        let (x, y) = (VarId::named("sx"), VarId::named("sy"));
        let line = SolutionFamily { free: alloc::vec![y], assigned: [(x, Poly::zero())].into_iter().collect() };
        let point = SolutionFamily {
            free: Vec::new(),
            assigned: [(x, Poly::zero()), (y, Poly::int(4))].into_iter().collect(),
        };
        assert!(line.contains(&point));
        assert!(!point.contains(&line));
    }
}
