//! Regression fixtures: the curves of the "Curves and foliations" table and
//! the worked examples, each with the facts it is expected to satisfy.

use std::time::{Duration, Instant};

use crate::efmod;
use crate::linalg::{self, MatrixK, UniPoly};
use crate::pipeline::{self, Analysis, AnalyzeOptions};
use crate::poly::{parse_poly, parse_univariate, Monomial, OneForm, Polynomial, Weights};
use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct FixtureReport {
    pub name: &'static str,
    pub facts: Vec<Fact>,
    /// Whether the trivial or four-generator candidate failed to generate.
    pub generation_failed: Option<bool>,
    pub elapsed: Duration,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(|f| f.pass)
    }
}

pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub f: &'static str,
    /// Minimal polynomial in `z` of the coefficient field generator.
    pub minpoly: Option<&'static str>,
    pub weights: (u32, u32),
    /// The candidate set `[f dx, f dy, df, ω_f]` is expected not to generate.
    pub expects_generation_failure: bool,
    checks: fn(&mut Ctx),
}

impl Fixture {
    pub fn field(&self) -> Field {
        match self.minpoly {
            None => Field::rationals(),
            Some(m) => Field::extension(parse_univariate(m, "z").expect("fixture minpoly"), "z").expect("fixture field"),
        }
    }

    pub fn polynomial(&self) -> Polynomial {
        parse_poly(self.f, &self.field()).expect("fixture polynomial")
    }

    pub fn weights(&self) -> Weights {
        Weights::new(self.weights.0, self.weights.1).expect("fixture weights")
    }
}

pub struct Ctx {
    pub field: Field,
    pub f: Polynomial,
    pub analysis: Analysis,
    facts: Vec<Fact>,
}

impl Ctx {
    fn p(&self, s: &str) -> Polynomial {
        parse_poly(s, &self.field).expect("fixture expression")
    }

    fn form(&self, p: &str, q: &str) -> OneForm {
        OneForm::new(self.p(p), self.p(q))
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.facts.push(Fact {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn check_tangent(&mut self, label: &str, forms: &[&OneForm]) {
        let f = self.f.clone();
        let bad: Vec<String> = forms
            .iter()
            .filter(|w| !efmod::is_tangent(w, &f))
            .map(|w| w.to_string())
            .collect();
        self.check(format!("{label} tangent"), bad.is_empty(), bad.join("; "));
    }

    /// `ω₀∧ω_∞ = c·f` for the given constant.
    fn check_wedge(&mut self, label: &str, w0: &OneForm, winf: &OneForm, c: Scalar) {
        let wedge = w0.wedge(winf).coeff;
        let expected = self.f.scale(&c);
        let detail = format!("wedge = {wedge}");
        self.check(format!("{label} wedge = ({c})·f"), wedge == expected, detail);
    }

    fn check_same_module(&mut self, label: &str, forms: &[OneForm]) {
        let minimal = self.analysis.generators.minimal.forms.clone();
        let same = efmod::same_module(forms, &minimal).unwrap_or(false);
        self.check(format!("{label} spans E_f"), same, "");
    }

    fn check_minimal_count(&mut self, n: usize) {
        let got = self.analysis.generators.minimal.len();
        self.check(format!("minimal generator count = {n}"), got == n, format!("got {got}"));
    }

    fn check_zero_blocks_trivial(&mut self) {
        let profile = self
            .analysis
            .spectrum
            .as_ref()
            .and_then(|s| s.profiles.iter().find(|p| p.eigen_factor == UniPoly::t()));
        let (pass, detail) = match profile {
            Some(p) => (p.max_block() == 1, format!("{:?}", p.blocks)),
            None => (false, "no profile at 0".to_string()),
        };
        self.check("Jordan blocks at 0 all of size 1", pass, detail);
    }
}

/// `(deg a₁, deg a₂, deg a₃)` and `(deg b₁, deg b₂, deg b₃)` of the graph
/// pair `(y a₁ + a₂) dx + a₃ dy`, `(y b₁ + b₂) dx + b₃ dy`; −1 means zero.
pub fn graph_degree_pattern(d: u32) -> ([i64; 3], [i64; 3]) {
    let d = i64::from(d);
    if d % 2 == 0 {
        ([d / 2 - 2, d / 2, d / 2 - 1], [d / 2 - 1, d / 2, d / 2])
    } else {
        ([(d - 3) / 2, (d - 1) / 2, (d - 1) / 2], [(d - 5) / 2, (d + 1) / 2, (d - 3) / 2])
    }
}

fn degree(p: &Polynomial) -> i64 {
    p.total_degree().map_or(-1, i64::from)
}

fn univariate(coeffs: &[Scalar], field: &Field) -> Polynomial {
    Polynomial::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (Monomial::new(u32::try_from(i).expect("small degree"), 0), c.clone())),
        field,
    )
}

/// A tangent form `(y a₁ + a₂) dx + a₃ dy` to `y − g(x)` whose components
/// have exactly the given degrees. Tangency forces `a₂ = −(g a₁ + g' a₃)`,
/// so the candidates form the kernel of the map sending `(a₁, a₃)` to the
/// coefficients of `g a₁ + g' a₃` above degree `deg a₂`.
fn graph_form(g: &Polynomial, degs: [i64; 3]) -> Option<OneForm> {
    let field = g.field().clone();
    let [d1, d2, d3] = degs;
    let n1 = usize::try_from(d1 + 1).unwrap_or(0);
    let n3 = usize::try_from(d3 + 1).unwrap_or(0);
    let dg = g.diff_x();
    let top = (degree(g) + d1).max(degree(&dg) + d3);
    let unknown = |i: usize| -> Polynomial {
        if i < n1 {
            Polynomial::monomial(Monomial::new(i as u32, 0), Scalar::one(), &field).checked_mul(g).expect("same field")
        } else {
            Polynomial::monomial(Monomial::new((i - n1) as u32, 0), Scalar::one(), &field)
                .checked_mul(&dg)
                .expect("same field")
        }
    };
    let images: Vec<Polynomial> = (0..n1 + n3).map(unknown).collect();
    let rows: Vec<Vec<Scalar>> = ((d2 + 1).max(0)..=top)
        .map(|k| images.iter().map(|h| h.coeff(Monomial::new(k as u32, 0))).collect())
        .collect();
    let kernel = if rows.is_empty() {
        (0..n1 + n3)
            .map(|i| (0..n1 + n3).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect()
    } else {
        linalg::kernel_basis(&MatrixK::from_rows(rows).ok()?)
    };
    // a generic member of the kernel has the maximal degrees
    for trial in 1..=8i64 {
        let mut v = vec![Scalar::zero(); n1 + n3];
        for (j, k) in kernel.iter().enumerate() {
            let lambda = Scalar::from_int(trial.pow(u32::try_from(j).expect("small")));
            for (vi, ki) in v.iter_mut().zip(k) {
                *vi = &*vi + &(&lambda * ki);
            }
        }
        let a1 = univariate(&v[..n1], &field);
        let a3 = univariate(&v[n1..], &field);
        let a2 = -&(&(g * &a1) + &(&dg * &a3));
        if degree(&a1) == d1 && degree(&a2) == d2 && degree(&a3) == d3 {
            let y = Polynomial::y(&field);
            return Some(OneForm::new(&(&y * &a1) + &a2, a3));
        }
    }
    None
}

/// The graph pair `(ω₀, ω_∞)` for `y − g(x)` with the degree pattern of
/// [`graph_degree_pattern`], if it exists.
pub fn graph_pair(g: &Polynomial) -> Option<(OneForm, OneForm)> {
    let d = g.total_degree()?;
    let (a, b) = graph_degree_pattern(d);
    Some((graph_form(g, a)?, graph_form(g, b)?))
}

fn checks_circle(c: &mut Ctx) {
    c.check("smooth path", c.analysis.generators.trivial.is_some(), "");
    c.check_minimal_count(2);
    let saito = c.analysis.generators.saito.clone();
    c.check(
        "Saito constant of minimal pair nonzero",
        saito.as_ref().is_some_and(|s| s.free),
        format!("{:?}", saito.map(|s| s.constant.map(|k| k.to_string()))),
    );
    let w0 = c.form("y^2", "1");
    let winf = c.form("x*y-1", "0");
    c.check_tangent("(y²dx+dy, f dx)", &[&w0, &winf]);
    c.check_wedge("(y²dx+dy, f dx)", &w0, &winf, Scalar::from_int(-1));
    c.check_same_module("(y²dx+dy, f dx)", &[w0.clone(), winf.clone()]);
    let df = OneForm::exterior_derivative(&c.f);
    let printed = &w0.mul_poly(&c.p("x")) + &winf.mul_poly(&c.p("y"));
    c.check("df = x·ω₀ + y·ω_∞ is false as printed", df != printed, format!("x·ω₀ + y·ω_∞ = {printed}"));
    let rhs = &w0.mul_poly(&c.p("x")) - &winf.mul_poly(&c.p("y"));
    c.check("df = x·ω₀ − y·ω_∞", df == rhs, "");
    let fdy = OneForm::dy(c.f.clone());
    let rhs = &w0.mul_poly(&c.f) - &winf.mul_poly(&c.p("y^2"));
    c.check("f dy = f·ω₀ − y²·ω_∞", fdy == rhs, "");
}

fn checks_circle_qi(c: &mut Ctx) {
    c.check("smooth path", c.analysis.generators.trivial.is_some(), "");
    let z = c.p("z");
    let v1 = c.form("x^2-y^2+1", "2*x*y");
    let w1 = c.form("-2*x*y", "x^2-y^2-1");
    let v2 = c.form("x^2+y^2-1", "0");
    let w2 = c.form("0", "x^2+y^2-1");
    let m0 = &v1 + &w1.mul_poly(&z);
    let m1 = &v2 + &w2.mul_poly(&z);
    c.check_tangent("v1+z·w1, v2+z·w2", &[&m0, &m1]);
    c.check_same_module("v1+z·w1, v2+z·w2", &[m0.clone(), m1.clone()]);
    let verdict = efmod::saito_check(&m0, &m1, &c.f);
    c.check(
        "Saito constant nonzero",
        verdict.as_ref().is_ok_and(|v| v.free),
        format!("{:?}", verdict.map(|v| v.constant.map(|k| k.to_string()))),
    );
}

fn checks_quasi_homogeneous(c: &mut Ctx) {
    let pair = c.analysis.generators.quasi_homogeneous.clone();
    c.check("weighted-homogeneous detected", pair.is_some(), "");
    if let Some((dg, eta)) = pair {
        c.check("dg∧η = g", dg.wedge(&eta).coeff == c.f, "");
        let raw = c.analysis.generators.syzygy.forms.clone();
        let gen = efmod::verify_generation(&[dg, eta], &raw).is_ok_and(|v| v.generates());
        c.check("(dg, η) generates the syzygy set", gen, "");
    }
    c.check_zero_blocks_trivial();
}

fn checks_acampo(c: &mut Ctx) {
    let s = c.analysis.spectrum.clone().expect("finite V_f");
    c.check("μ = 16", s.mu == 16, format!("μ = {}", s.mu));
    let expected = UniPoly::new(vec![Scalar::zero(), Scalar::zero(), Scalar::from_frac(16, 3125), Scalar::one()]);
    c.check(
        "minimal polynomial t²(t+16/3125)",
        s.minimal_polynomial == expected,
        s.minimal_polynomial.to_string(),
    );
    c.check("exponent = 2", s.exponent == 2, format!("{}", s.exponent));
    let at = |h: &UniPoly| s.profiles.iter().find(|p| &p.eigen_factor == h).map(|p| p.blocks.clone());
    let zero = at(&UniPoly::t());
    c.check(
        "Jordan profile at 0 = {2×1, 1×9}",
        zero.as_ref().is_some_and(|b| b.len() == 2 && b.get(&2) == Some(&1) && b.get(&1) == Some(&9)),
        format!("{zero:?}"),
    );
    let other = at(&UniPoly::linear(Scalar::from_frac(-16, 3125)));
    c.check(
        "Jordan profile at −16/3125 = {1×5}",
        other.as_ref().is_some_and(|b| b.len() == 1 && b.get(&1) == Some(&5)),
        format!("{other:?}"),
    );
    c.check("kernel condition fails", s.kernel_condition == Some(false), format!("{:?}", s.kernel_condition));

    // derlog columns (P, Q) become the forms P dy − Q dx
    let derlog = [
        ("-25*x^2*y^2+6*x*y", "-25*x*y^3+5*x^3+4*y^2"),
        ("-25*x^3*y+5*y^3+4*x^2", "-25*x^2*y^2+6*x*y"),
        ("-5*x^4+3*x*y^2", "-5*x^3*y+2*y^3"),
    ]
    .map(|(a, b)| OneForm::from_vector_field(c.p(a), c.p(b)));
    let refs: Vec<&OneForm> = derlog.iter().collect();
    c.check_tangent("derlog forms", &refs);
    c.check_same_module("derlog forms", &derlog);
    let omega = c.analysis.generators.omega_f.clone().expect("ω_f");
    let theta = s.theta.clone().expect("Θ_f");
    let wedge = OneForm::exterior_derivative(&c.f).wedge(&omega).coeff;
    c.check("df∧ω_f = f·Θ_f", wedge == &c.f * &theta, "");
    // the non-monic q(t) = t(3125t+16) scales ω_f by 3125
    let scaled = omega.scale(&Scalar::from_int(3125));
    let rhs = derlog[0].mul_poly(&c.p("-4/25*x^2*y"));
    c.check("3125·ω_f = −(4/25)x²y·ω₁", scaled == rhs, format!("ω_f = {omega}"));
    let four = c.analysis.generators.four.clone().expect("four-generator set");
    let inside = efmod::verify_generation(&four.forms, &derlog[..1]).map(|v| v.generates());
    c.check("ω₁ ∉ ⟨f dx, f dy, df, ω_f⟩", inside == Ok(false), format!("{inside:?}"));
    c.check("minimal generator count = 3", c.analysis.generators.minimal.len() == 3, "");
}

fn checks_lins_neto(c: &mut Ctx) {
    c.check_zero_blocks_trivial();
    let w0 = c.form("-x^2*(y^3-1)", "y^2*(x^3-1)");
    let winf = c.form("-y^4+y", "x^4-x");
    c.check_tangent("(ω₀, ω_∞)", &[&w0, &winf]);
    c.check_wedge("(ω₀, ω_∞)", &w0, &winf, Scalar::from_int(-1));
    c.check_same_module("(ω₀, ω_∞)", &[w0, winf]);
    c.check_minimal_count(2);
}

fn checks_table_pair(c: &mut Ctx, p0: &str, q0: &str, pinf: &str, qinf: &str, constant: Scalar) -> (OneForm, OneForm) {
    let w0 = c.form(p0, q0);
    let winf = c.form(pinf, qinf);
    c.check_tangent("(ω₀, ω_∞)", &[&w0, &winf]);
    c.check_wedge("(ω₀, ω_∞)", &w0, &winf, constant);
    c.check_same_module("(ω₀, ω_∞)", &[w0.clone(), winf.clone()]);
    (w0, winf)
}

fn checks_lissajous(c: &mut Ctx) {
    checks_table_pair(
        c,
        "-16*x*y^2+8*x*y+8*x",
        "12*x^2*y-6*x^2-6*y+3",
        "-16*x^2*y+8*y^2+4*y-4",
        "12*x^3-6*x*y-9*x",
        Scalar::from_int(12),
    );
}

fn checks_deltoid(c: &mut Ctx) {
    checks_table_pair(
        c,
        "x^2-3*y^2+6*x+9",
        "4*x*y-6*y",
        "-4*x*y+6*y",
        "3*x^2-y^2+6*x-9",
        Scalar::from_int(3),
    );
}

fn checks_rose(c: &mut Ctx) {
    let (w0, winf) = checks_table_pair(
        c,
        "8*x^3-x*y^2",
        "11*x^2*y+2*y^3-y",
        "5*x^2*y-4*y^3+2*y",
        "x^3+10*x*y^2-x",
        Scalar::from_int(-2),
    );
    let n = c.p("(x^2+y^2-1/3)^3");
    let d = c.p("36*x^2+9*y^2-4");
    let dn = OneForm::exterior_derivative(&n);
    let dd = OneForm::exterior_derivative(&d);
    let integral = &dn.mul_poly(&d) - &dd.mul_poly(&n);
    c.check("(D dN − N dD)∧ω₀ = 0", integral.wedge(&w0).is_zero(), "");
    let (sx, sy) = (c.p("x^2"), c.p("y^2"));
    let c0 = c.form("8*x-y", "11*x+2*y-1");
    let cinf = c.form("5*x*y-4*y^2+2*y", "x^2+10*x*y-x");
    c.check("π*ω̌₀ = 2ω₀", c0.pullback(&sx, &sy) == w0.scale(&Scalar::from_int(2)), "");
    c.check(
        "π*ω̌_∞ = 2xy·ω_∞",
        cinf.pullback(&sx, &sy) == winf.mul_poly(&c.p("2*x*y")),
        "",
    );
}

fn checks_graph(c: &mut Ctx) {
    c.check_minimal_count(2);
    let g = &Polynomial::y(&c.field) - &c.f;
    let d = g.total_degree().unwrap_or(0);
    let pair = graph_pair(&g);
    c.check(
        format!("pair with degree pattern {:?}", graph_degree_pattern(d)),
        pair.is_some(),
        "",
    );
    if let Some((w0, winf)) = pair {
        c.check_tangent("graph pair", &[&w0, &winf]);
        c.check_same_module("graph pair", &[w0.clone(), winf.clone()]);
        let wedge = w0.wedge(&winf).coeff;
        let ratio = wedge.divide_exact(&c.f).and_then(|q| q.constant_value());
        c.check(
            "graph pair wedge = c·f, c ≠ 0",
            ratio.as_ref().is_some_and(|k| !k.is_zero()),
            format!("c = {:?}", ratio.map(|k| k.to_string())),
        );
    }
}

fn checks_riccati(c: &mut Ctx) {
    let w0 = OneForm::dx(c.p("1"));
    let winf = OneForm::dy(c.f.clone());
    c.check_tangent("(dx, f dy)", &[&w0, &winf]);
    c.check_wedge("(dx, f dy)", &w0, &winf, Scalar::one());
    c.check_same_module("(dx, f dy)", &[w0.clone(), winf.clone()]);
    let riccati = c.form("y^2+x", "x^3-x");
    let member = efmod::verify_generation(&[w0, winf], std::slice::from_ref(&riccati)).is_ok_and(|v| v.generates());
    c.check("(y²+x)dx + f dy ∈ ⟨dx, f dy⟩", member, "");
}

pub fn fixtures() -> Vec<Fixture> {
    let fx = |name, description, f, weights, checks| Fixture {
        name,
        description,
        f,
        minpoly: None,
        weights,
        expects_generation_failure: false,
        checks,
    };
    vec![
        fx("circle", "hyperbola xy−1", "x*y-1", (1, 1), checks_circle as fn(&mut Ctx)),
        Fixture {
            minpoly: Some("z^2+1"),
            ..fx("circle_qi", "unit circle over Q(i)", "x^2+y^2-1", (1, 1), checks_circle_qi)
        },
        fx("qh_x3y3", "x³+y³", "x^3+y^3", (1, 1), checks_quasi_homogeneous),
        fx("qh_x4y4", "x⁴+y⁴", "x^4+y^4", (1, 1), checks_quasi_homogeneous),
        fx("qh_cusp", "x²+y³, weights (3,2)", "x^2+y^3", (3, 2), checks_quasi_homogeneous),
        fx("qh_xy", "xy", "x*y", (1, 1), checks_quasi_homogeneous),
        Fixture {
            expects_generation_failure: true,
            ..fx("acampo", "A'Campo curve", "x^5+y^5-x^2*y^2", (1, 1), checks_acampo)
        },
        fx(
            "lins_neto",
            "Lins Neto arrangement, a = 3",
            "(x^3-1)*(y^3-1)*(x^3-y^3)",
            (1, 1),
            checks_lins_neto,
        ),
        fx(
            "lissajous",
            "Lissajous curve, a = −1",
            "2*(2*x^2-1)^2+(2*y+1)^2*(y-1)",
            (1, 1),
            checks_lissajous,
        ),
        fx(
            "deltoid",
            "deltoid, a = 1",
            "(x^2+y^2)^2+8*x*(x^2-3*y^2)+18*(x^2+y^2)-27",
            (1, 1),
            checks_deltoid,
        ),
        fx(
            "rose",
            "rose, k = 1/2",
            "4*x^4+8*x^2*y^2+4*y^4-4*x^6-12*x^4*y^2-12*x^2*y^4-4*y^6-y^2",
            (1, 1),
            checks_rose,
        ),
        fx("graph4", "graph of a quartic", "y-(3*x^4-2*x^3+5*x^2-x+7)", (1, 4), checks_graph),
        fx("graph5", "graph of a quintic", "y-(2*x^5+4*x^4-3*x^3+x^2+6*x-5)", (1, 5), checks_graph),
        fx("riccati", "three vertical lines x(x−1)(x+1)", "x^3-x", (1, 1), checks_riccati),
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

/// Runs the pipeline on a fixture and checks its facts, plus the Jordan
/// block bound shared by every fixture with finite `V_f`.
pub fn run_fixture(fx: &Fixture) -> FixtureReport {
    let start = Instant::now();
    let f = fx.polynomial();
    let opts = AnalyzeOptions {
        weights: fx.weights(),
        allow_non_tame: true,
    };
    let analysis = match pipeline::analyze(&f, opts) {
        Ok(a) => a,
        Err(e) => {
            return FixtureReport {
                name: fx.name,
                facts: vec![Fact {
                    name: "pipeline completes".to_string(),
                    pass: false,
                    detail: e.to_string(),
                }],
                generation_failed: None,
                elapsed: start.elapsed(),
            }
        }
    };
    let generation_failed = analysis.generators.candidate_generates.map(|g| !g);
    let mut ctx = Ctx {
        field: fx.field(),
        f,
        analysis,
        facts: Vec::new(),
    };
    ctx.check("pipeline completes", true, "");
    if let Some(s) = ctx.analysis.spectrum.clone() {
        let bad: Vec<String> = s.profiles.iter().filter_map(|p| p.size_bound_violation()).collect();
        ctx.check("Jordan blocks of size 1 or 2, not all 2", bad.is_empty(), bad.join("; "));
    }
    let expected = fx.expects_generation_failure;
    ctx.check(
        if expected {
            "candidate set fails to generate"
        } else {
            "candidate set generates (when defined)"
        },
        generation_failed.unwrap_or(false) == expected,
        format!("{generation_failed:?}"),
    );
    (fx.checks)(&mut ctx);
    FixtureReport {
        name: fx.name,
        facts: ctx.facts,
        generation_failed,
        elapsed: start.elapsed(),
    }
}
