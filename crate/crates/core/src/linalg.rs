//! Exact spans of rational vectors via fraction-free elimination.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// Row-echelon basis of a subspace of `Q^n`, kept as primitive integer rows
/// sorted by pivot column.
#[derive(Debug, Clone, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<BigInt>)>,
}

fn to_integer_row(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g > BigInt::from(1) {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    /// Adds a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = to_integer_row(v);
        for (pivot, row) in &self.rows {
            if w[*pivot].is_zero() {
                continue;
            }
            let (a, b) = (row[*pivot].clone(), w[*pivot].clone());
            for (x, y) in w.iter_mut().zip(row) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(&mut w);
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                make_primitive(&mut w);
                let at = self.rows.partition_point(|(p, _)| *p < pivot);
                self.rows.insert(at, (pivot, w));
                true
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|(_, row)| row.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn rank_of_dependent_vectors() {
        let mut s = Span::new();
        assert!(s.insert(&[int(1), int(2), int(3)]));
        assert!(s.insert(&[int(0), frac(1, 2), int(1)]));
        assert!(!s.insert(&[int(2), int(5), int(8)]));
        assert!(!s.insert(&[int(0), int(0), int(0)]));
        assert!(s.insert(&[int(0), int(0), int(7)]));
        assert_eq!(s.dim(), 3);
    }
}
