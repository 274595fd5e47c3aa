//! Randomized engine properties, shared by the property suite and the
//! acceptance run. Each check returns the shrunk counterexample on failure.

#![allow(dead_code)]

use foliation_core::groebner::{buchberger, ideal_basis, syzygies, ModuleOrder, ModuleVector};
use foliation_core::linalg::{kernel_basis, rank, MatrixK};
use foliation_core::poly::{parse_poly, Monomial, MonomialOrder, OneForm, Polynomial, Weights};
use foliation_core::scalar::{Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 128;

pub fn qq() -> Field {
    Field::rationals()
}

fn ints(cs: &[i64]) -> Vec<BigRational> {
    cs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
}

pub fn gaussian() -> Field {
    Field::extension(ints(&[1, 0, 1]), "z").unwrap()
}

pub fn cube_root_two() -> Field {
    Field::extension(ints(&[-2, 0, 0, 1]), "z").unwrap()
}

fn rat(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

/// Sparse polynomial over `field` with small rational coefficients.
pub fn poly_in(field: Field, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-6i64..=6, 1i64..=3, 0..=max_exp, 0..=max_exp, -2i64..=2), 1..=max_terms).prop_map(
        move |terms| {
            let mut p = Polynomial::zero(&field);
            for (n, d, i, j, zc) in terms {
                let mut c = rat(n, d);
                if !field.is_rationals() && zc != 0 {
                    c = &c + &(&field.generator().unwrap() * &Scalar::from_int(zc));
                }
                p.add_term(Monomial::new(i, j), c);
            }
            p
        },
    )
}

pub fn poly() -> impl Strategy<Value = Polynomial> {
    poly_in(qq(), 3, 4)
}

pub fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

pub fn form() -> impl Strategy<Value = OneForm> {
    (poly(), poly()).prop_map(|(p, q)| OneForm::new(p, q))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn finish<T: std::fmt::Debug>(r: Result<(), proptest::test_runner::TestError<T>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn nf_idempotence(cases: u32) -> Result<(), String> {
    let strat = (prop::collection::vec(nonzero_poly(), 1..=3), poly());
    finish(runner(cases).run(&strat, |(gens, p)| {
        let gb = ideal_basis(&gens, MonomialOrder::default(), false).unwrap();
        let r = gb.reduce_poly(&p);
        prop_assert_eq!(gb.reduce_poly(&r), r.clone());
        // p − NF(p) lies in the ideal
        prop_assert!(gb.contains(&ModuleVector::scalar(&p - &r)).unwrap());
        Ok(())
    }))
}

pub fn s_vectors_reduce(cases: u32) -> Result<(), String> {
    let ideal = prop::collection::vec(nonzero_poly(), 1..=3);
    let module = prop::collection::vec((poly(), poly()), 1..=3);
    finish(runner(cases).run(&(ideal, module), |(polys, pairs)| {
        let gb = ideal_basis(&polys, MonomialOrder::new(Weights::new(2, 1).unwrap()), false).unwrap();
        prop_assert!(gb.satisfies_buchberger_criterion());
        prop_assert!(gb.is_reduced());
        let vecs: Vec<ModuleVector> = pairs
            .into_iter()
            .map(|(a, b)| ModuleVector::new(vec![a, b]))
            .filter(|v| !v.is_zero())
            .collect();
        if !vecs.is_empty() {
            let gb = buchberger(&vecs, ModuleOrder::default(), false).unwrap();
            prop_assert!(gb.satisfies_buchberger_criterion());
            for v in &vecs {
                prop_assert!(gb.contains(v).unwrap());
            }
        }
        Ok(())
    }))
}

pub fn syzygy_soundness(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&prop::collection::vec(nonzero_poly(), 2..=3), |gens| {
        let vecs: Vec<ModuleVector> = gens.iter().cloned().map(ModuleVector::scalar).collect();
        let syz = syzygies(&vecs, MonomialOrder::default()).unwrap();
        for s in &syz {
            let total = s
                .components
                .iter()
                .zip(&gens)
                .fold(Polynomial::zero(&qq()), |acc, (a, g)| &acc + &(a * g));
            prop_assert!(total.is_zero(), "Σ a_i g_i = {}", total);
        }
        // the Koszul syzygy g₁e₀ − g₀e₁ is generated
        let koszul = ModuleVector::new(
            (0..gens.len())
                .map(|i| match i {
                    0 => gens[1].clone(),
                    1 => -&gens[0],
                    _ => Polynomial::zero(&qq()),
                })
                .collect(),
        );
        let gb = buchberger(&syz, ModuleOrder::default(), false).unwrap();
        prop_assert!(gb.contains(&koszul).unwrap());
        Ok(())
    }))
}

pub fn certificates_recombine(cases: u32) -> Result<(), String> {
    let strat = (prop::collection::vec((poly(), poly()), 1..=3), prop::collection::vec(poly_in(qq(), 2, 2), 3));
    finish(runner(cases).run(&strat, |(pairs, coeffs)| {
        let gens: Vec<ModuleVector> = pairs
            .into_iter()
            .map(|(a, b)| ModuleVector::new(vec![a, b]))
            .filter(|v| !v.is_zero())
            .collect();
        if gens.is_empty() {
            return Ok(());
        }
        let target = ModuleVector::combine(&coeffs, &gens, 2, &qq());
        let gb = buchberger(&gens, ModuleOrder::default(), true).unwrap();
        let cert = gb.certificate(&target).unwrap();
        prop_assert!(cert.is_some());
        let back = ModuleVector::combine(&cert.unwrap(), &gens, 2, &qq());
        prop_assert_eq!(back, target);
        Ok(())
    }))
}

pub fn leibniz(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(poly(), poly()), |(p, q)| {
        let lhs = OneForm::exterior_derivative(&(&p * &q));
        let rhs = &OneForm::exterior_derivative(&q).mul_poly(&p) + &OneForm::exterior_derivative(&p).mul_poly(&q);
        prop_assert_eq!(lhs, rhs);
        // d∘d = 0
        prop_assert!(OneForm::exterior_derivative(&p).d().is_zero());
        Ok(())
    }))
}

pub fn wedge_alternation(cases: u32) -> Result<(), String> {
    finish(runner(cases).run(&(form(), form(), poly()), |(a, b, g)| {
        prop_assert!(a.wedge(&a).is_zero());
        prop_assert_eq!(a.wedge(&b).coeff, -&b.wedge(&a).coeff);
        prop_assert_eq!(a.mul_poly(&g).wedge(&b).coeff, &a.wedge(&b).coeff * &g);
        Ok(())
    }))
}

pub fn rank_nullity(cases: u32) -> Result<(), String> {
    let strat = (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r));
    finish(runner(cases).run(&strat, |rows| {
        let cols = rows[0].len();
        let m = MatrixK::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect()).unwrap();
        let kernel = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        Ok(())
    }))
}

fn element(field: Field) -> impl Strategy<Value = Scalar> {
    let deg = field.degree();
    prop::collection::vec((-5i64..=5, 1i64..=4), deg).prop_map(move |cs| {
        let coeffs = cs
            .into_iter()
            .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        Scalar::from_coeffs(coeffs, &field)
    })
}

pub fn field_axioms(cases: u32) -> Result<(), String> {
    for field in [gaussian(), cube_root_two()] {
        let e = || element(field.clone());
        finish(runner(cases).run(&(e(), e(), e()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
            Ok(())
        }))?;
    }
    Ok(())
}

pub fn parse_print_round_trip(cases: u32) -> Result<(), String> {
    for field in [qq(), gaussian()] {
        let f2 = field.clone();
        finish(runner(cases).run(&poly_in(field.clone(), 4, 5), move |p| {
            let text = p.to_string();
            let back = parse_poly(&text, &f2).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, p);
            Ok(())
        }))?;
    }
    Ok(())
}

pub type Property = fn(u32) -> Result<(), String>;

/// Every property, by name.
pub fn all() -> Vec<(&'static str, Property)> {
    vec![
        ("normal form idempotence", nf_idempotence as Property),
        ("S-vectors reduce to zero", s_vectors_reduce),
        ("syzygy soundness", syzygy_soundness),
        ("membership certificates recombine", certificates_recombine),
        ("d(pq) = p dq + q dp", leibniz),
        ("wedge alternation", wedge_alternation),
        ("rank-nullity", rank_nullity),
        ("field axioms", field_axioms),
        ("parse/print round trip", parse_print_round_trip),
    ]
}
