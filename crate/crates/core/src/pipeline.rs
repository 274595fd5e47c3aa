//! End-to-end analysis of one curve: tameness, `V_f`, `A_f` and its
//! spectrum, the generator sets of `E_f`, and the Saito verdict.

use std::time::{Duration, Instant};

use crate::efmod::{self, EfGenerators, GenerationVerdict, SaitoVerdict};
use crate::linalg::{self, UniPoly};
use crate::milnor::{self, CriticalFactor, DegreeCheck, JordanProfile, MilnorError, Tameness};
use crate::poly::{OneForm, Polynomial, Weights};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("not tame: {0}")]
    NotTame(String),
    #[error("{stage}: {message}")]
    Stage { stage: &'static str, message: String },
    #[error("invariant violated in {stage}: {message}")]
    Invariant { stage: &'static str, message: String },
}

impl AnalysisError {
    /// Process exit code: 2 for non-tame input, 3 for invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            AnalysisError::NotTame(_) => 2,
            AnalysisError::Stage { .. } => 1,
            AnalysisError::Invariant { .. } => 3,
        }
    }
}

fn stage<E: std::fmt::Display>(stage: &'static str) -> impl Fn(E) -> AnalysisError {
    move |e| AnalysisError::Stage {
        stage,
        message: e.to_string(),
    }
}

fn ensure(cond: bool, stage: &'static str, message: impl FnOnce() -> String) -> Result<(), AnalysisError> {
    if cond {
        Ok(())
    } else {
        Err(AnalysisError::Invariant {
            stage,
            message: message(),
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalyzeOptions {
    pub weights: Weights,
    /// Continue past a failed tameness check whenever `V_f` is still
    /// finite-dimensional.
    pub allow_non_tame: bool,
}

#[derive(Debug, Clone)]
pub struct SpectrumSummary {
    pub mu: usize,
    pub degree_check: Option<DegreeCheck>,
    pub minimal_polynomial: UniPoly,
    pub factors: Vec<CriticalFactor>,
    pub exponent: usize,
    /// One profile per entry of `factors`.
    pub profiles: Vec<JordanProfile>,
    pub theta: Option<Polynomial>,
    pub kernel_condition: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct GeneratorSummary {
    pub trivial: Option<EfGenerators>,
    pub four: Option<EfGenerators>,
    pub omega_f: Option<OneForm>,
    /// Whether the trivial (smooth case) or four-generator set generates `E_f`.
    pub candidate_generates: Option<bool>,
    /// A syzygy generator outside the candidate module, when generation fails.
    pub witness: Option<OneForm>,
    pub syzygy: EfGenerators,
    pub minimal: EfGenerators,
    /// `(dg, η)` when `f` is weighted-homogeneous.
    pub quasi_homogeneous: Option<(OneForm, OneForm)>,
    pub saito: Option<SaitoVerdict>,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub f: Polynomial,
    pub weights: Weights,
    pub tameness: Tameness,
    /// `None` when `V_f` is infinite-dimensional.
    pub spectrum: Option<SpectrumSummary>,
    pub generators: GeneratorSummary,
    pub timings: Vec<(&'static str, Duration)>,
}

struct Clock {
    last: Instant,
    timings: Vec<(&'static str, Duration)>,
}

impl Clock {
    fn lap(&mut self, name: &'static str) {
        let now = Instant::now();
        self.timings.push((name, now - self.last));
        self.last = now;
    }
}

pub fn analyze(f: &Polynomial, opts: AnalyzeOptions) -> Result<Analysis, AnalysisError> {
    let w = opts.weights;
    let mut clock = Clock {
        last: Instant::now(),
        timings: Vec::new(),
    };

    let tameness = milnor::check_tame(f, w).map_err(stage("check_tame"))?;
    if let Tameness::NotTame { reason, .. } = &tameness {
        if !opts.allow_non_tame {
            return Err(AnalysisError::NotTame(reason.clone()));
        }
    }
    clock.lap("check_tame");

    let ma = match milnor::milnor_algebra_finite(f, w) {
        Ok(ma) => Some(ma),
        Err(MilnorError::InfiniteDimensional) => None,
        Err(e) => return Err(stage("milnor_algebra")(e)),
    };
    clock.lap("milnor_algebra");

    let mut spectrum = None;
    let mut trivial = None;
    let mut four = None;
    let mut omega = None;
    if let Some(ma) = &ma {
        let op = milnor::build_af(ma);
        clock.lap("build_af");
        let p = milnor::min_poly_af(&op);
        ensure(
            linalg::eval_matrix_poly(&p, &op.matrix).map(|m| m.is_zero()).unwrap_or(false),
            "min_poly",
            || format!("{p} does not annihilate A_f"),
        )?;
        let factors = milnor::critical_value_factors(&p);
        let mut profiles = Vec::with_capacity(factors.len());
        for cf in &factors {
            profiles.push(milnor::jordan_profile(&op, &cf.factor).map_err(stage("jordan_profile"))?);
        }
        let e = milnor::exponent(&p);
        clock.lap("min_poly");

        let mut theta = None;
        let mut kernel_condition = None;
        if e == 0 {
            trivial = Some(efmod::smooth_shortcut(f, &op).map_err(stage("smooth_shortcut"))?);
        } else {
            let th = milnor::theta_f(ma, &op).map_err(stage("theta_f"))?;
            kernel_condition = Some(milnor::check_kernel_condition(ma, &op, &th).map_err(stage("kernel_condition"))?);
            let wf = efmod::omega_f(f, ma, &th).map_err(stage("omega_f"))?;
            let wedge = OneForm::exterior_derivative(f).wedge(&wf).coeff;
            ensure(wedge == f * &th, "omega_f", || "df∧ω_f ≠ f·Θ_f".to_string())?;
            four = Some(efmod::four_generator_set(f, &wf));
            omega = Some(wf);
            theta = Some(th);
        }
        clock.lap("theta_f");
        spectrum = Some(SpectrumSummary {
            mu: ma.mu,
            degree_check: ma.is_tame().then(|| ma.degree_check()),
            minimal_polynomial: p,
            factors,
            exponent: e,
            profiles,
            theta,
            kernel_condition,
        });
    }

    let syzygy = efmod::ef_from_syzygies(f).map_err(stage("ef_from_syzygies"))?;
    for w in &syzygy.forms {
        ensure(efmod::is_tangent(w, f), "ef_from_syzygies", || format!("{w} is not tangent"))?;
    }
    clock.lap("ef_from_syzygies");

    let candidate = trivial.as_ref().or(four.as_ref());
    let mut candidate_generates = None;
    let mut witness = None;
    if let Some(c) = candidate {
        for w in &c.forms {
            ensure(efmod::is_tangent(w, f), "verify_generation", || format!("{w} is not tangent"))?;
        }
        match efmod::verify_generation(&c.forms, &syzygy.forms).map_err(stage("verify_generation"))? {
            GenerationVerdict::Generates { .. } => candidate_generates = Some(true),
            GenerationVerdict::Fails { witness: w, .. } => {
                candidate_generates = Some(false);
                witness = Some(w);
            }
        }
        // smooth curves are always generated by the trivial forms
        if trivial.is_some() {
            ensure(candidate_generates == Some(true), "verify_generation", || {
                "trivial forms do not generate E_f of a smooth curve".to_string()
            })?;
        }
    }
    clock.lap("verify_generation");

    let minimal = efmod::minimal_generators(&syzygy).map_err(stage("minimal_generators"))?;
    ensure(
        efmod::same_module(&minimal.forms, &syzygy.forms).map_err(stage("minimal_generators"))?,
        "minimal_generators",
        || "minimal generators span a different module".to_string(),
    )?;
    clock.lap("minimal_generators");

    let quasi_homogeneous = match efmod::quasihomog_pair(f, w) {
        Ok(pair) => {
            let ok = efmod::same_module(&[pair.0.clone(), pair.1.clone()], &syzygy.forms)
                .map_err(stage("quasihomog_pair"))?;
            ensure(ok, "quasihomog_pair", || "(dg, η) does not generate E_f".to_string())?;
            Some(pair)
        }
        Err(_) => None,
    };
    let saito_pair = match (&quasi_homogeneous, minimal.forms.as_slice()) {
        (Some((a, b)), _) => Some((a, b)),
        (None, [a, b]) => Some((a, b)),
        _ => None,
    };
    let saito = match saito_pair {
        Some((a, b)) => {
            let v = efmod::saito_check(a, b, f).map_err(stage("saito_check"))?;
            ensure(v.free, "saito_check", || format!("two generators but ω₀∧ω_∞ ∉ K*·f for {a}, {b}"))?;
            Some(v)
        }
        None => None,
    };
    clock.lap("saito_check");

    Ok(Analysis {
        f: f.clone(),
        weights: w,
        tameness,
        spectrum,
        generators: GeneratorSummary {
            trivial,
            four,
            omega_f: omega,
            candidate_generates,
            witness,
            syzygy,
            minimal,
            quasi_homogeneous,
            saito,
        },
        timings: clock.timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::{Field, Scalar};

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &Field::rationals()).unwrap()
    }

    #[test]
    fn acampo_report() {
        let a = analyze(&p("x^5+y^5-x^2*y^2"), AnalyzeOptions::default()).unwrap();
        let s = a.spectrum.unwrap();
        assert_eq!(s.mu, 16);
        assert_eq!(s.minimal_polynomial.to_string(), "t^3+16/3125*t^2");
        assert_eq!(s.exponent, 2);
        assert_eq!(a.generators.candidate_generates, Some(false));
        assert_eq!(a.generators.minimal.len(), 3);
        assert!(a.generators.saito.is_none());
    }

    #[test]
    fn hyperbola_report() {
        let a = analyze(&p("x*y-1"), AnalyzeOptions::default()).unwrap();
        assert!(a.generators.trivial.is_some());
        assert_eq!(a.generators.minimal.len(), 2);
        assert_eq!(a.generators.saito.unwrap().constant, Some(Scalar::from_int(-1)));
    }

    #[test]
    fn quasi_homogeneous_report() {
        let a = analyze(&p("x^3+y^3"), AnalyzeOptions::default()).unwrap();
        assert!(a.generators.quasi_homogeneous.is_some());
        assert_eq!(a.generators.saito.unwrap().constant, Some(Scalar::one()));
    }

    #[test]
    fn non_tame_policy() {
        let f = p("(x^3-1)*(y^3-1)*(x^3-y^3)");
        let err = analyze(&f, AnalyzeOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let opts = AnalyzeOptions {
            allow_non_tame: true,
            ..Default::default()
        };
        let a = analyze(&f, opts).unwrap();
        assert_eq!(a.generators.candidate_generates, Some(true));
        // f = x³ − x has f_y = 0, so V_f is infinite-dimensional
        let a = analyze(&p("x^3-x"), opts).unwrap();
        assert!(a.spectrum.is_none());
        assert_eq!(a.generators.minimal.len(), 2);
    }
}
