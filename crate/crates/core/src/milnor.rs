//! The Milnor vector space `V_f = K[x,y]/⟨f_x, f_y⟩` and the multiplication
//! operator `A_f: [P] ↦ [f·P]` on it.
//!
//! `V_f` is represented by the standard monomials of a Gröbner basis of the
//! Jacobian ideal under the weighted-degree order. Everything downstream
//! (minimal polynomial, Jordan profiles, `Θ_f`) works on exact matrices in
//! that basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use crate::groebner::{ideal_basis, GroebnerBasis, GroebnerError};
use crate::linalg::{self, MatrixK, UniPoly};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Weights};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MilnorError {
    #[error("polynomial is zero")]
    ZeroInput,
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial is not tame: {0}")]
    NotTame(String),
    #[error("Milnor vector space is infinite-dimensional")]
    InfiniteDimensional,
    #[error("0 is not a critical value; the curve is smooth")]
    SmoothCurve,
    #[error("polynomial is not in the kernel of A_f")]
    NotInKernel,
    #[error("factor does not divide the minimal polynomial")]
    FactorNotDividing,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tameness {
    /// `g` is the top weighted-homogeneous part, `mu_g = dim V_g`.
    Tame { g: Polynomial, mu_g: usize },
    NotTame { g: Polynomial, reason: String },
}

impl Tameness {
    pub fn is_tame(&self) -> bool {
        matches!(self, Tameness::Tame { .. })
    }
}

/// Exponents `(a, b)` such that `x^a` and `y^b` are leading terms, when both exist.
fn pure_power_bounds(gb: &GroebnerBasis) -> Option<(u32, u32)> {
    let lts = gb.leading_terms();
    let a = lts.iter().filter(|(_, m)| m.y == 0).map(|(_, m)| m.x).min()?;
    let b = lts.iter().filter(|(_, m)| m.x == 0).map(|(_, m)| m.y).min()?;
    Some((a, b))
}

/// Monomials not divisible by any leading term, ascending in `order`.
fn standard_monomials(gb: &GroebnerBasis, order: &MonomialOrder) -> Option<Vec<Monomial>> {
    let (a, b) = pure_power_bounds(gb)?;
    let lts: Vec<Monomial> = gb.leading_terms().into_iter().map(|(_, m)| m).collect();
    let mut out: Vec<Monomial> = (0..a)
        .flat_map(|i| (0..b).map(move |j| Monomial::new(i, j)))
        .filter(|m| !lts.iter().any(|l| l.divides(*m)))
        .collect();
    out.sort_by(|u, v| order.cmp(*u, *v));
    Some(out)
}

fn jacobian_basis(f: &Polynomial, w: Weights) -> Result<GroebnerBasis, GroebnerError> {
    ideal_basis(&[f.diff_x(), f.diff_y()], MonomialOrder::new(w), false)
}

fn check_nonconstant(f: &Polynomial) -> Result<(), MilnorError> {
    if f.is_zero() {
        return Err(MilnorError::ZeroInput);
    }
    if f.is_constant() {
        return Err(MilnorError::Constant);
    }
    Ok(())
}

/// `f` is tame when its top weighted-homogeneous part has a finite-dimensional
/// Milnor vector space.
pub fn check_tame(f: &Polynomial, w: Weights) -> Result<Tameness, MilnorError> {
    check_nonconstant(f)?;
    let g = f.leading_form(w).map_err(|_| MilnorError::ZeroInput)?;
    let gb = jacobian_basis(&g, w)?;
    match standard_monomials(&gb, &MonomialOrder::new(w)) {
        Some(basis) => Ok(Tameness::Tame { g, mu_g: basis.len() }),
        None => Ok(Tameness::NotTame {
            reason: format!("V_g is infinite-dimensional for g = {g}"),
            g,
        }),
    }
}

/// Degree bound on a monomial basis of a tame `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    /// `2d − 2α₁ − 2α₂`.
    pub bound: i64,
    pub max_degree: Option<u32>,
    /// Basis monomials of weighted degree exactly `bound`.
    pub top_count: usize,
}

impl DegreeCheck {
    /// Every monomial within the bound and exactly one on it.
    pub fn holds(&self) -> bool {
        self.max_degree.is_none_or(|m| i64::from(m) <= self.bound) && self.top_count == 1
    }
}

#[derive(Debug, Clone)]
pub struct MilnorAlgebra {
    pub f: Polynomial,
    pub weights: Weights,
    /// Weighted degree of `f`.
    pub d: u32,
    pub gb: GroebnerBasis,
    /// Standard monomials, ascending in the weighted order.
    pub basis: Vec<Monomial>,
    pub mu: usize,
    pub tameness: Tameness,
    index: HashMap<Monomial, usize>,
}

/// Milnor algebra of a tame `f`. The standard-monomial basis of `jacob(f)`
/// is checked to have the dimension of `V_g`.
pub fn milnor_algebra(f: &Polynomial, w: Weights) -> Result<MilnorAlgebra, MilnorError> {
    let tameness = check_tame(f, w)?;
    if let Tameness::NotTame { reason, .. } = &tameness {
        return Err(MilnorError::NotTame(reason.clone()));
    }
    build(f, w, tameness)
}

/// Milnor algebra of any `f` whose Jacobian ideal has finite codimension,
/// tame or not. Degree statements only apply in the tame case.
pub fn milnor_algebra_finite(f: &Polynomial, w: Weights) -> Result<MilnorAlgebra, MilnorError> {
    let tameness = check_tame(f, w)?;
    build(f, w, tameness)
}

fn build(f: &Polynomial, w: Weights, tameness: Tameness) -> Result<MilnorAlgebra, MilnorError> {
    let order = MonomialOrder::new(w);
    let gb = jacobian_basis(f, w)?;
    let basis = if gb.contains_unit() {
        Vec::new()
    } else {
        standard_monomials(&gb, &order).ok_or(MilnorError::InfiniteDimensional)?
    };
    let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let ma = MilnorAlgebra {
        f: f.clone(),
        weights: w,
        d: f.weighted_degree(w).expect("nonzero"),
        mu: basis.len(),
        gb,
        basis,
        tameness,
        index,
    };
    Ok(ma)
}

impl MilnorAlgebra {
    pub fn is_tame(&self) -> bool {
        self.tameness.is_tame()
    }

    /// `dim V_g` when `f` is tame.
    pub fn mu_g(&self) -> Option<usize> {
        match &self.tameness {
            Tameness::Tame { mu_g, .. } => Some(*mu_g),
            Tameness::NotTame { .. } => None,
        }
    }

    pub fn degree_bound(&self) -> i64 {
        2 * i64::from(self.d) - 2 * i64::from(self.weights.sum())
    }

    pub fn degree_check(&self) -> DegreeCheck {
        let bound = self.degree_bound();
        DegreeCheck {
            bound,
            max_degree: self.basis.iter().map(|m| m.weighted_degree(self.weights)).max(),
            top_count: self
                .basis
                .iter()
                .filter(|m| i64::from(m.weighted_degree(self.weights)) == bound)
                .count(),
        }
    }

    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        self.gb.reduce_poly(p)
    }

    /// Coordinates of the class of `p` in the monomial basis.
    pub fn coords(&self, p: &Polynomial) -> Vec<Scalar> {
        let r = self.reduce(p);
        let mut v = vec![Scalar::zero(); self.mu];
        for (m, c) in r.terms() {
            let i = self.index[&m];
            v[i] = c.clone();
        }
        v
    }

    /// Polynomial with the given coordinates.
    pub fn from_coords(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.basis.iter().zip(v).map(|(m, c)| (*m, c.clone())),
            self.f.field(),
        )
    }

    /// Matrix of multiplication by `g` on `V_f`.
    pub fn multiplication_matrix(&self, g: &Polynomial) -> MatrixK {
        let cols: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|m| self.coords(&g.mul_term(*m, &Scalar::one())))
            .collect();
        MatrixK::from_columns(self.mu, &cols).expect("square by construction")
    }
}

/// `A_f` in the monomial basis; column `i` holds the coordinates of `f·basis_i`.
#[derive(Debug, Clone)]
pub struct MultOperator {
    pub matrix: MatrixK,
    minpoly: OnceLock<UniPoly>,
}

impl MultOperator {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn minimal_polynomial(&self) -> &UniPoly {
        self.minpoly
            .get_or_init(|| linalg::minimal_polynomial(&self.matrix).expect("square matrix"))
    }
}

pub fn build_af(ma: &MilnorAlgebra) -> MultOperator {
    MultOperator {
        matrix: ma.multiplication_matrix(&ma.f),
        minpoly: OnceLock::new(),
    }
}

pub fn min_poly_af(op: &MultOperator) -> UniPoly {
    op.minimal_polynomial().clone()
}

/// Squarefree factor of the minimal polynomial; its zeros are critical values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalFactor {
    pub factor: UniPoly,
    pub multiplicity: usize,
    /// Explicit root when the factor is linear.
    pub root: Option<Scalar>,
}

pub fn critical_value_factors(p: &UniPoly) -> Vec<CriticalFactor> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out: Vec<CriticalFactor> = linalg::squarefree_decompose(p)
        .expect("nonzero")
        .into_iter()
        .flat_map(|(h, m)| {
            // split off t so that the critical value 0 is always explicit
            let z = h.zero_root_multiplicity();
            let mut parts = Vec::new();
            if z > 0 {
                parts.push((UniPoly::t(), m));
                let rest = h.div_exact(&UniPoly::t());
                if rest.degree().unwrap_or(0) > 0 {
                    parts.push((rest, m));
                }
            } else {
                parts.push((h, m));
            }
            parts
        })
        .map(|(factor, multiplicity)| CriticalFactor {
            root: factor.linear_root(),
            factor,
            multiplicity,
        })
        .collect();
    out.sort_by_key(|c| (c.factor.zero_root_multiplicity() == 0, c.factor.degree()));
    out
}

/// Multiplicity `m` of the root 0 in `p(t) = t^m·Q(t)`.
pub fn exponent(p: &UniPoly) -> usize {
    p.zero_root_multiplicity()
}

/// Jordan block sizes of `A_f` over the roots of a squarefree factor `h`,
/// aggregated over those roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanProfile {
    pub eigen_factor: UniPoly,
    /// block size ↦ number of blocks
    pub blocks: BTreeMap<usize, usize>,
}

impl JordanProfile {
    pub fn block_count(&self) -> usize {
        self.blocks.values().sum()
    }

    pub fn max_block(&self) -> usize {
        self.blocks.keys().copied().max().unwrap_or(0)
    }

    /// Total dimension of the generalized eigenspaces.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|(s, c)| s * c).sum()
    }

    pub fn all_same_size(&self) -> bool {
        self.blocks.len() <= 1
    }

    pub fn count_of(&self, size: usize) -> usize {
        self.blocks.get(&size).copied().unwrap_or(0)
    }

    /// Blocks at 0 of a plane curve have size 1 or 2 and are never all of
    /// size 2; returns a description of any violation.
    pub fn size_bound_violation(&self) -> Option<String> {
        if self.max_block() >= 3 {
            return Some(format!("block of size {} at {}", self.max_block(), self.eigen_factor));
        }
        if !self.blocks.is_empty() && self.blocks.keys().all(|&s| s == 2) {
            return Some(format!("only blocks of size 2 at {}", self.eigen_factor));
        }
        None
    }
}

pub fn jordan_profile(op: &MultOperator, h: &UniPoly) -> Result<JordanProfile, MilnorError> {
    let hm = linalg::eval_matrix_poly(h, &op.matrix).expect("square matrix");
    let n = op.dim();
    let mut ranks = vec![n];
    let mut power = hm.clone();
    loop {
        let r = linalg::rank(&power);
        let last = *ranks.last().unwrap();
        if r == last {
            break;
        }
        ranks.push(r);
        power = power.mul(&hm).expect("square matrix");
    }
    if ranks.len() == 1 {
        return Err(MilnorError::FactorNotDividing);
    }
    // at_least[k-1] = number of blocks of size ≥ k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut blocks = BTreeMap::new();
    for (k, &ge) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        if ge > next {
            blocks.insert(k + 1, ge - next);
        }
    }
    Ok(JordanProfile {
        eigen_factor: h.clone(),
        blocks,
    })
}

/// Representative of `q(f)` in `V_f`, where `p(t) = t·q(t)`, obtained as
/// `q(A_f)` applied to the class of 1.
pub fn theta_f(ma: &MilnorAlgebra, op: &MultOperator) -> Result<Polynomial, MilnorError> {
    let p = op.minimal_polynomial();
    if exponent(p) == 0 {
        return Err(MilnorError::SmoothCurve);
    }
    let q = p.div_exact(&UniPoly::t());
    let one = ma.coords(&Polynomial::one(ma.f.field()));
    let v = linalg::apply_matrix_poly(&q, &op.matrix, &one).expect("square matrix");
    Ok(ma.from_coords(&v))
}

/// Whether `θ·V_f = ker(A_f)`.
pub fn check_kernel_condition(ma: &MilnorAlgebra, op: &MultOperator, theta: &Polynomial) -> Result<bool, MilnorError> {
    let coords = ma.coords(theta);
    if !op.matrix.mul_vec(&coords).expect("dimensions").iter().all(Scalar::is_zero) {
        return Err(MilnorError::NotInKernel);
    }
    let image = ma.multiplication_matrix(theta);
    let kernel_dim = op.dim() - linalg::rank(&op.matrix);
    // θ·V_f ⊂ ker(A_f) because f·θ ≡ 0, so comparing dimensions suffices
    debug_assert!(op.matrix.mul(&image).expect("dimensions").is_zero());
    Ok(linalg::rank(&image) == kernel_dim)
}
