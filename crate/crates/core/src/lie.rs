//! Finite-dimensional Lie algebras with exact rational structure constants.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Span;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisLabel {
    pub gen: String,
    pub label: Rational,
}

/// Structure constants `[e_i, e_j] = Σ c_k e_k` stored for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLie {
    basis: Vec<BasisLabel>,
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl FiniteLie {
    /// Validates indices, drops zero coefficients and checks the Jacobi identity.
    pub fn new(basis: Vec<BasisLabel>, brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>) -> Result<FiniteLie> {
        let n = basis.len();
        let mut clean = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= j || j >= n {
                return Err(Error::Definition(format!("bracket entry ({}, {}) must satisfy i < j < {}", i, j, n)));
            }
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in terms {
                if k >= n {
                    return Err(Error::Definition(format!("bracket ({}, {}) refers to basis index {}", i, j, k)));
                }
                *merged.entry(k).or_insert_with(Rational::zero) += c;
            }
            let terms: Vec<(usize, Rational)> = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !terms.is_empty() {
                clean.insert((i, j), terms);
            }
        }
        let lie = FiniteLie { basis, brackets: clean };
        if let Some((i, j, k)) = lie.jacobi_failures().into_iter().next() {
            return Err(Error::Jacobi(format!(
                "Jacobi identity fails on ({}, {}, {})",
                lie.show_basis(i),
                lie.show_basis(j),
                lie.show_basis(k)
            )));
        }
        Ok(lie)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn show_basis(&self, i: usize) -> String {
        let b = &self.basis[i];
        if b.label.is_integer() {
            format!("{}_{}", b.gen, b.label.numer())
        } else {
            format!("{}_{}/{}", b.gen, b.label.numer(), b.label.denom())
        }
    }

    /// Nonzero entries `(i, j) ↦ [e_i, e_j]`, `i < j`.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &[(usize, Rational)])> {
        self.brackets.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    /// `[e_i, e_j]` as a sparse list, for any `i`, `j`.
    pub fn structure(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        use core::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, c)| (*k, -c.clone())).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = alloc::vec![Rational::zero(); self.dim()];
        for ((i, j), terms) in &self.brackets {
            let c = &u[*i] * &v[*j] - &u[*j] * &v[*i];
            if c.is_zero() {
                continue;
            }
            for (k, s) in terms {
                out[*k] += &c * s;
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = alloc::vec![Rational::zero(); self.dim()];
        v[i] = Rational::from_integer(1.into());
        v
    }

    /// Basis triples `i < j < k` whose Jacobi sum is nonzero.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let n = self.dim();
        let e: Vec<Vec<Rational>> = (0..n).map(|i| self.unit(i)).collect();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let t1 = self.bracket(&e[i], &self.bracket(&e[j], &e[k]));
                    let t2 = self.bracket(&e[j], &self.bracket(&e[k], &e[i]));
                    let t3 = self.bracket(&e[k], &self.bracket(&e[i], &e[j]));
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

fn bracket_span(lie: &FiniteLie, left: &[Vec<Rational>], right: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut span = Span::new();
    for u in left {
        for v in right {
            span.insert(&lie.bracket(u, v));
        }
    }
    span.basis()
}

/// Dimensions of `G, [G,G], …`, ending at 0 or at the first repeated dimension.
pub fn derived_series(lie: &FiniteLie) -> Vec<usize> {
    let mut current: Vec<Vec<Rational>> = (0..lie.dim()).map(|i| lie.unit(i)).collect();
    let mut dims = alloc::vec![current.len()];
    while !current.is_empty() {
        let next = bracket_span(lie, &current, &current);
        let stalled = next.len() == current.len();
        dims.push(next.len());
        if stalled {
            break;
        }
        current = next;
    }
    dims
}

/// Dimensions of `G, [G,G], [G,[G,G]], …` with the same stopping rule.
pub fn lower_central_series(lie: &FiniteLie) -> Vec<usize> {
    let all: Vec<Vec<Rational>> = (0..lie.dim()).map(|i| lie.unit(i)).collect();
    let mut current = all.clone();
    let mut dims = alloc::vec![current.len()];
    while !current.is_empty() {
        let next = bracket_span(lie, &all, &current);
        let stalled = next.len() == current.len();
        dims.push(next.len());
        if stalled {
            break;
        }
        current = next;
    }
    dims
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Solvability {
    pub solvable: bool,
    /// Number of derived steps needed to reach 0.
    pub derived_length: Option<usize>,
}

pub fn is_solvable(lie: &FiniteLie) -> Solvability {
    let series = derived_series(lie);
    let solvable = series.last() == Some(&0);
    Solvability { solvable, derived_length: solvable.then(|| series.len() - 1) }
}

pub fn is_nilpotent(lie: &FiniteLie) -> bool {
    lower_central_series(lie).last() == Some(&0)
}
