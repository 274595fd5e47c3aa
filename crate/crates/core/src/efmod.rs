//! The module `E_f` of polynomial 1-forms `ω` with `df∧ω ∈ f·Ω²`.
//!
//! A form `P dx + Q dy` is tangent to `f = 0` iff `f_x·Q − f_y·P` is a
//! multiple of `f`, so `E_f` is the projection of `Syz(−f_y, f_x, f)` onto
//! its first two coordinates. Every generating set built here is compared
//! against that syzygy set by explicit membership certificates.

use std::fmt;

use crate::groebner::{self, buchberger, GroebnerError, ModuleOrder, ModuleVector};
use crate::milnor::{self, MilnorAlgebra, MilnorError, MultOperator};
use crate::poly::{MonomialOrder, OneForm, Polynomial, Weights};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EfError {
    #[error("form is not tangent to the curve: {0}")]
    NotTangent(String),
    #[error("0 is a critical value; the curve is not smooth")]
    NotSmooth,
    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,
    #[error("f·Θ is not in the Jacobian ideal")]
    NotInJacobian,
    #[error("polynomial is constant")]
    Constant,
    #[error("empty generating set")]
    EmptyInput,
    #[error(transparent)]
    Milnor(#[from] MilnorError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    TrivialSmooth,
    FourGenerator,
    SyzygyRaw,
    Minimal,
    Custom,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::TrivialSmooth => "trivial_smooth",
            GeneratorKind::FourGenerator => "four_generator",
            GeneratorKind::SyzygyRaw => "syzygy_raw",
            GeneratorKind::Minimal => "minimal",
            GeneratorKind::Custom => "custom",
        })
    }
}

#[derive(Debug, Clone)]
pub struct EfGenerators {
    pub kind: GeneratorKind,
    pub forms: Vec<OneForm>,
    /// Optional per-form cofactor data, e.g. the `f`-cofactor of a syzygy.
    pub certificates: Option<Vec<Vec<Polynomial>>>,
}

impl EfGenerators {
    pub fn new(kind: GeneratorKind, forms: Vec<OneForm>) -> Self {
        EfGenerators {
            kind,
            forms,
            certificates: None,
        }
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

pub(crate) fn to_vector(w: &OneForm) -> ModuleVector {
    ModuleVector::new(vec![w.p.clone(), w.q.clone()])
}

pub(crate) fn from_vector(v: &ModuleVector) -> OneForm {
    OneForm::new(v.components[0].clone(), v.components[1].clone())
}

fn form_order() -> ModuleOrder {
    ModuleOrder::term_over_position(MonomialOrder::default())
}

/// `α` with `df∧ω = f·α`, when `ω` is tangent.
pub fn tangency_quotient(w: &OneForm, f: &Polynomial) -> Option<Polynomial> {
    let wedge = &(&f.diff_x() * &w.q) - &(&f.diff_y() * &w.p);
    wedge.divide_exact(f)
}

pub fn is_tangent(w: &OneForm, f: &Polynomial) -> bool {
    tangency_quotient(w, f).is_some()
}

fn check_nonconstant(f: &Polynomial) -> Result<(), EfError> {
    if f.is_constant() {
        return Err(EfError::Constant);
    }
    Ok(())
}

/// Generators of `E_f` from `Syz(−f_y, f_x, f)`. The third syzygy
/// coordinate `c` (with `df∧ω = −c·f`) is kept as the certificate.
pub fn ef_from_syzygies(f: &Polynomial) -> Result<EfGenerators, EfError> {
    check_nonconstant(f)?;
    let gens: Vec<ModuleVector> = [-f.diff_y(), f.diff_x(), f.clone()]
        .into_iter()
        .map(ModuleVector::scalar)
        .collect();
    let syz = groebner::syzygies(&gens, MonomialOrder::default())?;
    let mut forms = Vec::new();
    let mut certs = Vec::new();
    for s in syz {
        let w = OneForm::new(s.components[0].clone(), s.components[1].clone());
        if w.is_zero() || forms.contains(&w) {
            continue;
        }
        debug_assert!(is_tangent(&w, f));
        forms.push(w);
        certs.push(vec![s.components[2].clone()]);
    }
    Ok(EfGenerators {
        kind: GeneratorKind::SyzygyRaw,
        forms,
        certificates: Some(certs),
    })
}

/// `ω_f = −B dx + A dy` where `f·θ = A·f_x + B·f_y`, so that
/// `df∧ω_f = f·θ dx∧dy`.
pub fn omega_f(f: &Polynomial, ma: &MilnorAlgebra, theta: &Polynomial) -> Result<OneForm, EfError> {
    let jac = groebner::ideal_basis(&[f.diff_x(), f.diff_y()], MonomialOrder::new(ma.weights), true)?;
    let target = ModuleVector::scalar(f * theta);
    let cert = jac.certificate(&target)?.ok_or(EfError::NotInJacobian)?;
    let (a, b) = (&cert[0], &cert[1]);
    let w = OneForm::new(-b, a.clone());
    debug_assert_eq!(OneForm::exterior_derivative(f).wedge(&w).coeff, f * theta);
    Ok(w)
}


/// `[f dx, f dy, df, ω_f]`.
pub fn four_generator_set(f: &Polynomial, omega: &OneForm) -> EfGenerators {
    EfGenerators::new(
        GeneratorKind::FourGenerator,
        vec![
            OneForm::dx(f.clone()),
            OneForm::dy(f.clone()),
            OneForm::exterior_derivative(f),
            omega.clone(),
        ],
    )
}

/// `[f dx, f dy, df]`.
pub fn trivial_forms(f: &Polynomial) -> Vec<OneForm> {
    vec![
        OneForm::dx(f.clone()),
        OneForm::dy(f.clone()),
        OneForm::exterior_derivative(f),
    ]
}

/// Outcome of comparing two generating sets.
#[derive(Debug, Clone)]
pub enum GenerationVerdict {
    /// `certificates[k]` writes reference form `k` in the candidate forms.
    Generates { certificates: Vec<Vec<Polynomial>> },
    /// The first reference form outside the candidate module.
    Fails { witness_index: usize, witness: OneForm },
}

impl GenerationVerdict {
    pub fn generates(&self) -> bool {
        matches!(self, GenerationVerdict::Generates { .. })
    }
}

/// Whether every form of `reference` is a K[x,y]-combination of `candidate`.
pub fn verify_generation(candidate: &[OneForm], reference: &[OneForm]) -> Result<GenerationVerdict, EfError> {
    if candidate.is_empty() {
        return match reference.iter().position(|w| !w.is_zero()) {
            None => Ok(GenerationVerdict::Generates {
                certificates: vec![Vec::new(); reference.len()],
            }),
            Some(i) => Ok(GenerationVerdict::Fails {
                witness_index: i,
                witness: reference[i].clone(),
            }),
        };
    }
    let gens: Vec<ModuleVector> = candidate.iter().map(to_vector).collect();
    let gb = buchberger(&gens, form_order(), true)?;
    let mut certificates = Vec::with_capacity(reference.len());
    for (i, w) in reference.iter().enumerate() {
        match gb.certificate(&to_vector(w))? {
            Some(c) => certificates.push(c),
            None => {
                return Ok(GenerationVerdict::Fails {
                    witness_index: i,
                    witness: w.clone(),
                })
            }
        }
    }
    Ok(GenerationVerdict::Generates { certificates })
}

/// Whether two sets generate the same module.
pub fn same_module(a: &[OneForm], b: &[OneForm]) -> Result<bool, EfError> {
    Ok(verify_generation(a, b)?.generates() && verify_generation(b, a)?.generates())
}

/// `(max total degree, canonical text)`; the pruning order.
fn prune_key(w: &OneForm) -> (u32, String) {
    (w.max_total_degree().unwrap_or(0), w.to_string())
}

/// Key of the leading term of `w` under the term-over-position order.
fn leading_key(w: &OneForm) -> u128 {
    let order = form_order();
    w.components()
        .iter()
        .enumerate()
        .flat_map(|(pos, c)| c.terms().map(move |(m, _)| order.key(pos, m)))
        .max()
        .unwrap_or(0)
}

/// A generating subset from which no form can be dropped.
///
/// The input is first replaced by the reduced Gröbner basis of the module it
/// generates, then forms are removed greedily starting from the one with the
/// largest `(degree, text)` key, keeping a form only if the others do not
/// generate it. The survivors are listed by increasing leading term.
pub fn minimal_generators(gens: &EfGenerators) -> Result<EfGenerators, EfError> {
    let nonzero: Vec<ModuleVector> = gens.forms.iter().filter(|w| !w.is_zero()).map(to_vector).collect();
    if nonzero.is_empty() {
        return Err(EfError::EmptyInput);
    }
    let gb = buchberger(&nonzero, form_order(), false)?;
    let mut forms: Vec<OneForm> = gb.generators().iter().map(from_vector).collect();
    forms.sort_by_key(prune_key);
    let mut k = forms.len();
    while k > 0 {
        k -= 1;
        if forms.len() == 1 {
            break;
        }
        let rest: Vec<OneForm> = forms
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, w)| w.clone())
            .collect();
        let rest_vecs: Vec<ModuleVector> = rest.iter().map(to_vector).collect();
        let gb = buchberger(&rest_vecs, form_order(), false)?;
        if gb.contains(&to_vector(&forms[k]))? {
            forms = rest;
        }
    }
    forms.sort_by_cached_key(|w| (leading_key(w), w.to_string()));
    Ok(EfGenerators::new(GeneratorKind::Minimal, forms))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaitoVerdict {
    pub free: bool,
    pub pair: (OneForm, OneForm),
    /// `c` with `ω₀∧ω_∞ = c·f dx∧dy`, when it exists and is nonzero.
    pub constant: Option<Scalar>,
}

/// Saito's criterion: the pair spans a free module iff `ω₀∧ω_∞ = c·f` for a
/// nonzero constant `c`.
pub fn saito_check(w0: &OneForm, winf: &OneForm, f: &Polynomial) -> Result<SaitoVerdict, EfError> {
    for (name, w) in [("first", w0), ("second", winf)] {
        if !is_tangent(w, f) {
            return Err(EfError::NotTangent(format!("{name} form {w}")));
        }
    }
    let wedge = w0.wedge(winf).coeff;
    let constant = wedge
        .divide_exact(f)
        .and_then(|q| q.constant_value())
        .filter(|c| !c.is_zero());
    Ok(SaitoVerdict {
        free: constant.is_some(),
        pair: (w0.clone(), winf.clone()),
        constant,
    })
}

/// `[f dx, f dy, df]` for a curve without singular points.
pub fn smooth_shortcut(f: &Polynomial, op: &MultOperator) -> Result<EfGenerators, EfError> {
    check_nonconstant(f)?;
    if milnor::exponent(op.minimal_polynomial()) > 0 {
        return Err(EfError::NotSmooth);
    }
    Ok(EfGenerators::new(GeneratorKind::TrivialSmooth, trivial_forms(f)))
}

/// `(dg, η)` with `η = (α₁ x dy − α₂ y dx)/d`, so that `dg∧η = g dx∧dy`.
pub fn quasihomog_pair(g: &Polynomial, w: Weights) -> Result<(OneForm, OneForm), EfError> {
    let d = g.homogeneous_degree(w).ok_or(EfError::NotHomogeneous)?;
    if d == 0 {
        return Err(EfError::NotHomogeneous);
    }
    let field = g.field();
    let inv_d = Scalar::from_frac(1, i64::from(d));
    let eta = OneForm::new(
        (-&Polynomial::y(field)).scale(&(&Scalar::from_int(i64::from(w.y)) * &inv_d)),
        Polynomial::x(field).scale(&(&Scalar::from_int(i64::from(w.x)) * &inv_d)),
    );
    Ok((OneForm::exterior_derivative(g), eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::{build_af, milnor_algebra, theta_f};
    use crate::poly::parse_poly;
    use crate::scalar::Field;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &Field::rationals()).unwrap()
    }

    #[test]
    fn quasihomogeneous_pairs() {
        for (g, w) in [("x^3+y^3", (1, 1)), ("x^2+y^3", (3, 2)), ("x*y", (1, 1))] {
            let g = p(g);
            let w = Weights::new(w.0, w.1).unwrap();
            let (dg, eta) = quasihomog_pair(&g, w).unwrap();
            assert_eq!(dg.wedge(&eta).coeff, g);
        }
        let (_, eta) = quasihomog_pair(&p("x^3+y^3"), Weights::default()).unwrap();
        assert_eq!(eta, OneForm::new(p("-1/3*y"), p("1/3*x")));
        let (_, eta) = quasihomog_pair(&p("x^2+y^3"), Weights::new(3, 2).unwrap()).unwrap();
        assert_eq!(eta, OneForm::new(p("-1/3*y"), p("1/2*x")));
        assert_eq!(quasihomog_pair(&p("x^2+y"), Weights::default()), Err(EfError::NotHomogeneous));
    }

    #[test]
    fn saito_examples() {
        let f = p("x*y-1");
        let v = saito_check(&OneForm::new(p("y^2"), p("1")), &OneForm::dx(f.clone()), &f).unwrap();
        assert!(v.free);
        assert_eq!(v.constant, Some(Scalar::from_int(-1)));
        let df = OneForm::exterior_derivative(&f);
        assert!(!saito_check(&df, &df, &f).unwrap().free);
        assert!(matches!(
            saito_check(&OneForm::dx(p("1")), &df, &f),
            Err(EfError::NotTangent(_))
        ));
    }

    #[test]
    fn hyperbola_syzygies_generate_the_known_pair() {
        let f = p("x*y-1");
        let raw = ef_from_syzygies(&f).unwrap();
        for w in &raw.forms {
            assert!(is_tangent(w, &f));
        }
        let pair = vec![OneForm::new(p("y^2"), p("1")), OneForm::dx(f.clone())];
        assert!(same_module(&raw.forms, &pair).unwrap());
        let min = minimal_generators(&raw).unwrap();
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn smooth_hyperbola() {
        let f = p("x*y-1");
        let ma = milnor_algebra(&f, Weights::default()).unwrap();
        let op = build_af(&ma);
        let triv = smooth_shortcut(&f, &op).unwrap();
        let raw = ef_from_syzygies(&f).unwrap();
        assert!(verify_generation(&triv.forms, &raw.forms).unwrap().generates());
        assert_eq!(minimal_generators(&triv).unwrap().len(), 2);

        let g = p("x^3+y^3");
        let ma = milnor_algebra(&g, Weights::default()).unwrap();
        assert!(matches!(smooth_shortcut(&g, &build_af(&ma)), Err(EfError::NotSmooth)));
    }

    #[test]
    fn euler_form_from_theta() {
        let f = p("x^3+y^3");
        let ma = milnor_algebra(&f, Weights::default()).unwrap();
        let op = build_af(&ma);
        let theta = theta_f(&ma, &op).unwrap();
        let w = omega_f(&f, &ma, &theta).unwrap();
        assert_eq!(OneForm::exterior_derivative(&f).wedge(&w).coeff, &f * &theta);
        let four = four_generator_set(&f, &w);
        let raw = ef_from_syzygies(&f).unwrap();
        assert!(verify_generation(&four.forms, &raw.forms).unwrap().generates());
    }

    #[test]
    fn verify_generation_reports_witness() {
        let f = p("x*y-1");
        let raw = ef_from_syzygies(&f).unwrap();
        let only_fdx = vec![OneForm::dx(f.clone())];
        match verify_generation(&only_fdx, &raw.forms).unwrap() {
            GenerationVerdict::Fails { witness, .. } => assert!(is_tangent(&witness, &f)),
            GenerationVerdict::Generates { .. } => panic!("f dx alone cannot generate"),
        }
    }
}
