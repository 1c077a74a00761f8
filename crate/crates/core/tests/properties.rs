use std::collections::BTreeMap;

use confalg_core::algebra::Element;
use confalg_core::annihilation::{ann_bracket, basis_up_to};
use confalg_core::presets::{instantiate, PresetId};
use confalg_core::rational::{frac, int};
use confalg_core::{solve_system, Monomial, Poly, Rational, VarId, D, LAMBDA};
use proptest::prelude::*;

fn vars() -> Vec<VarId> {
    vec![D, LAMBDA, VarId::named("a"), VarId::named("b")]
}

fn poly_strategy(max_deg: u32) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=max_deg, 4), -9i64..=9, 1i64..=4);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let vs = vars();
        Poly::from_terms(terms.into_iter().filter_map(|(exps, n, d)| {
            if exps.iter().sum::<u32>() > max_deg {
                return None;
            }
            let mono = Monomial::from_pairs(vs.iter().copied().zip(exps));
            Some((mono, frac(n, d)))
        }))
    })
}

/// Polynomials in ∂ and λ only.
fn dl_poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg).prop_map(|p| {
        let zero = Poly::zero();
        p.substitute(VarId::named("a"), &zero).substitute(VarId::named("b"), &Poly::one())
    })
}

/// Polynomials in ∂ and parameters, i.e. coefficients of algebra elements.
fn c_poly(max_deg: u32) -> impl Strategy<Value = Poly> {
    poly_strategy(max_deg).prop_map(|p| p.substitute(LAMBDA, &Poly::int(2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_laws(p in poly_strategy(4), q in poly_strategy(4), r in poly_strategy(4)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&(&p - &p), &Poly::zero());
        prop_assert_eq!(&p * &Poly::one(), p.clone());
    }

    #[test]
    fn canonical_form_is_idempotent(p in poly_strategy(4)) {
        let rebuilt = Poly::from_terms(p.terms().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(&rebuilt, &p);
        prop_assert!(p.terms().all(|(_, c)| *c != int(0)));
        let reparsed: Poly = p.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn division_identity(p in poly_strategy(4), tail in poly_strategy(2), k in 1u32..=3) {
        // monic in ∂ of degree k: ∂^k plus lower terms free of ∂
        let lower = tail.substitute(D, &Poly::int(1));
        let divisor = Poly::var(D).pow(k) + lower;
        let (q, r) = p.monic_div_rem(&divisor, D).unwrap();
        prop_assert_eq!(&(&q * &divisor) + &r, p);
        prop_assert!(r.is_zero() || r.degree_in(D) < k);
    }

    #[test]
    fn coefficient_reassembly(p in poly_strategy(4)) {
        let mut sum = Poly::zero();
        for k in 0..=p.degree_in(LAMBDA) {
            sum += &(&p.coeff_of(LAMBDA, k) * &Poly::var(LAMBDA).pow(k));
        }
        prop_assert_eq!(sum, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn skew_substitution_is_an_involution(p in dl_poly(4)) {
        let skew = -Poly::var(LAMBDA) - Poly::var(D);
        prop_assert_eq!(p.substitute(LAMBDA, &skew).substitute(LAMBDA, &skew), p);
    }

    #[test]
    fn solver_solutions_satisfy_equations(
        coeffs in prop::collection::vec(-3i64..=3, 6),
        roots in prop::collection::vec(-3i64..=3, 2),
    ) {
        let (x, y, z) = (VarId::named("sx"), VarId::named("sy"), VarId::named("sz"));
        let (px, py, pz) = (Poly::var(x), Poly::var(y), Poly::var(z));
        let lin = &(&px.scale(&int(coeffs[0])) + &py.scale(&int(coeffs[1]))) + &pz.scale(&int(coeffs[2]));
        let eqs = vec![
            &lin - &Poly::int(coeffs[3]),
            &(&px - &Poly::int(roots[0])) * &(&py - &Poly::int(roots[1])),
            &pz * &(&px + &Poly::int(coeffs[4])),
        ];
        let set = solve_system(&eqs, &[x, y, z]).unwrap();
        prop_assert!(set.satisfies(&eqs));
    }

    #[test]
    fn sesquilinearity(
        preset in 0usize..4,
        xs in prop::collection::vec(c_poly(3), 3),
        ys in prop::collection::vec(c_poly(3), 3),
    ) {
        let id = [PresetId::Vir, PresetId::W, PresetId::Tsv, PresetId::TsvC][preset];
        let alg = instantiate(id, &[]).unwrap();
        let mut x = Element::zero();
        let mut y = Element::zero();
        for g in 0..alg.rank() {
            x.add_term(g, xs[g].clone());
            y.add_term(g, ys[g].clone());
        }
        let base = alg.bracket(&x, &y).unwrap();
        let dx = x.scale(&Poly::var(D));
        let dy = y.scale(&Poly::var(D));
        prop_assert_eq!(alg.bracket(&dx, &y).unwrap(), base.scale(&-Poly::var(LAMBDA)));
        prop_assert_eq!(alg.bracket(&x, &dy).unwrap(), base.scale(&(Poly::var(D) + Poly::var(LAMBDA))));

        // j-th products reassemble the bracket
        let mut sum = Element::zero();
        let order = alg.locality_order(&x, &y).unwrap();
        for j in 0..order {
            let factor = Poly::var(LAMBDA).pow(j).scale(&confalg_core::rational::factorial(j as u64).recip());
            sum.add_scaled(&alg.jth_product(&x, &y, j).unwrap(), &factor);
        }
        prop_assert_eq!(sum, base);
    }
}

#[test]
fn axioms_survive_specialization() {
    let grid = [int(0), frac(1, 2), int(1), frac(-3, 2), int(4)];
    for id in [PresetId::W, PresetId::WAlias, PresetId::Tsv, PresetId::TsvC] {
        let alg = instantiate(id, &[]).unwrap();
        for i in 0..grid.len() {
            let names = id.param_names();
            let bindings: Vec<(&str, Rational)> =
                names.iter().enumerate().map(|(k, n)| (*n, grid[(i + k) % grid.len()].clone())).collect();
            let special = instantiate(id, &bindings).unwrap();
            assert!(special.check_skew().passed() && special.check_jacobi().passed(), "{:?} {:?}", id, bindings);
            assert!(alg.params().len() >= special.params().len());
        }
    }
}

#[test]
fn jacobi_on_skew_completed_table() {
    // giving only the upper triangle yields the same table and residuals
    use confalg_core::algebra::{AlgebraBuilder, Generator};
    let full = instantiate(PresetId::Tsv, &[]).unwrap();
    let mut b = AlgebraBuilder::new("upper");
    b.param("a").unwrap();
    b.param("b").unwrap();
    for g in full.generators() {
        b.generator(Generator::new(&g.name).with_offset(g.label_offset.clone()).with_shift(g.filtration_shift.clone()))
            .unwrap();
    }
    for i in 0..full.rank() {
        for j in i..full.rank() {
            let (gi, gj) = (&full.generators()[i].name, &full.generators()[j].name);
            b.bracket(gi, gj, full.entry(i, j).clone()).unwrap();
        }
    }
    let upper = b.build().unwrap();
    for i in 0..full.rank() {
        for j in 0..full.rank() {
            assert_eq!(upper.entry(i, j), full.entry(i, j));
        }
    }
    assert_eq!(upper.check_jacobi(), full.check_jacobi());
}

#[test]
fn annihilation_antisymmetry() {
    for id in [PresetId::Vir, PresetId::W, PresetId::Tsv, PresetId::TsvC] {
        let alg = instantiate(id, &[]).unwrap();
        let basis = basis_up_to(&alg, &int(6));
        let mut checked = 0;
        for x in &basis {
            for y in &basis {
                let (lx, ly) = (x.label(&alg), y.label(&alg));
                let xy = ann_bracket(&alg, x.gen, &lx, y.gen, &ly).unwrap();
                let yx = ann_bracket(&alg, y.gen, &ly, x.gen, &lx).unwrap();
                assert_eq!(xy, yx.neg());
                checked += 1;
            }
        }
        assert!(checked >= 50, "{:?}: {}", id, checked);
    }
}

#[test]
fn skew_completion_is_consistent_with_given_entries() {
    let w = instantiate(PresetId::W, &[]).unwrap();
    let bindings: BTreeMap<VarId, Rational> = [(VarId::named("a"), int(3))].into_iter().collect();
    let special = w.specialize(&bindings).unwrap();
    assert_eq!(special.params(), &[VarId::named("b")]);
    assert!(special.check_skew().passed());
}
