//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Derived values are recomputed here with a naive dense polynomial and
//! matrix oracle that shares no arithmetic with the library.

mod support;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use foliation_core::corpus::{self, graph_degree_pattern};
use foliation_core::efmod::{self, GenerationVerdict};
use foliation_core::linalg::{MatrixK, UniPoly};
use foliation_core::milnor::{self, MultOperator};
use foliation_core::pipeline::{self, Analysis, AnalyzeOptions};
use foliation_core::poly::{parse_poly, parse_univariate, OneForm, Polynomial, Weights};
use foliation_core::scalar::{Field, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

// ---------------------------------------------------------------- oracle

/// Dense-map polynomial over ℚ with schoolbook arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Naive(BTreeMap<(u32, u32), BigRational>);

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Naive {
    fn term(c: BigRational, i: u32, j: u32) -> Naive {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((i, j), c);
        }
        Naive(m)
    }

    fn int(c: i64) -> Naive {
        Naive::term(q(c, 1), 0, 0)
    }

    fn x() -> Naive {
        Naive::term(q(1, 1), 1, 0)
    }

    fn y() -> Naive {
        Naive::term(q(1, 1), 0, 1)
    }

    fn pow(&self, e: u32) -> Naive {
        (0..e).fold(Naive::int(1), |acc, _| &acc * self)
    }

    fn from_poly(p: &Polynomial) -> Naive {
        let mut m = BTreeMap::new();
        for (mon, c) in p.terms() {
            m.insert((mon.x, mon.y), c.as_rational().expect("rational coefficients").clone());
        }
        Naive(m)
    }

    fn scale(&self, c: &BigRational) -> Naive {
        &Naive::term(c.clone(), 0, 0) * self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `c` with `self = c·other`, if any.
    fn ratio(&self, other: &Naive) -> Option<BigRational> {
        let (k, v) = other.0.iter().next()?;
        let c = self.0.get(k).cloned().unwrap_or_else(BigRational::zero) / v;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl Add for &Naive {
    type Output = Naive;
    fn add(self, o: &Naive) -> Naive {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(BigRational::zero);
            *e += v;
            if e.is_zero() {
                m.remove(k);
            }
        }
        Naive(m)
    }
}

impl Neg for &Naive {
    type Output = Naive;
    fn neg(self) -> Naive {
        Naive(self.0.iter().map(|(k, v)| (*k, -v)).collect())
    }
}

impl Sub for &Naive {
    type Output = Naive;
    fn sub(self, o: &Naive) -> Naive {
        self + &-o
    }
}

impl Mul for &Naive {
    type Output = Naive;
    fn mul(self, o: &Naive) -> Naive {
        let mut acc = Naive::default();
        for ((a, b), u) in &self.0 {
            for ((c, d), v) in &o.0 {
                acc = &acc + &Naive::term(u * v, a + c, b + d);
            }
        }
        acc
    }
}

/// `(p dx + q dy) ∧ (r dx + s dy) = ps − qr`.
fn naive_wedge(a: &OneForm, b: &OneForm) -> Naive {
    let [p, qq, r, s] = [&a.p, &a.q, &b.p, &b.q].map(Naive::from_poly);
    &(&p * &s) - &(&qq * &r)
}

type NaiveMatrix = Vec<Vec<BigRational>>;

fn naive_matrix(m: &MatrixK) -> NaiveMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).as_rational().unwrap().clone()).collect())
        .collect()
}

fn naive_mul(a: &NaiveMatrix, b: &NaiveMatrix) -> NaiveMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

fn naive_shift(a: &NaiveMatrix, c: &BigRational) -> NaiveMatrix {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] += c;
    }
    out
}

/// Plain Gaussian elimination over ℚ.
fn naive_rank(a: &NaiveMatrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &m[r][c];
                let pivot = m[r].clone();
                for (dst, src) in m[i].iter_mut().zip(&pivot).skip(c) {
                    *dst -= &factor * src;
                }
            }
        }
        r += 1;
    }
    r
}

fn naive_is_zero(a: &NaiveMatrix) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

/// Jordan block sizes of `a − λ` at eigenvalue `λ` from the rank sequence
/// of its powers.
fn naive_blocks(a: &NaiveMatrix, lambda: &BigRational) -> BTreeMap<usize, usize> {
    let b = naive_shift(a, &-lambda);
    let n = a.len();
    let mut ranks = vec![n];
    let mut power = b.clone();
    loop {
        let r = naive_rank(&power);
        if r == *ranks.last().unwrap() {
            break;
        }
        ranks.push(r);
        power = naive_mul(&power, &b);
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out = BTreeMap::new();
    for k in 0..at_least.len() {
        let exactly = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        if exactly > 0 {
            out.insert(k + 1, exactly);
        }
    }
    out
}

// --------------------------------------------------------------- harness

struct Checker {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    fn check(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn p(s: &str) -> Polynomial {
    parse_poly(s, &Field::rationals()).unwrap()
}

fn form(a: &str, b: &str) -> OneForm {
    OneForm::new(p(a), p(b))
}

fn non_tame() -> AnalyzeOptions {
    AnalyzeOptions {
        allow_non_tame: true,
        ..Default::default()
    }
}

fn generates(candidate: &[OneForm], reference: &[OneForm]) -> bool {
    efmod::verify_generation(candidate, reference).is_ok_and(|v| v.generates())
}

fn blocks_at(op: &MultOperator, h: &UniPoly) -> BTreeMap<usize, usize> {
    milnor::jordan_profile(op, h).map(|p| p.blocks).unwrap_or_default()
}

fn wedge_constant(c: &mut Checker, label: &str, w0: &OneForm, winf: &OneForm, f: &Polynomial, frozen: i64) {
    let fx = Naive::from_poly(f);
    c.check(&format!("{label}: ω₀ tangent"), efmod::is_tangent(w0, f));
    c.check(&format!("{label}: ω_∞ tangent"), efmod::is_tangent(winf, f));
    let ratio = naive_wedge(w0, winf).ratio(&fx);
    c.check(&format!("{label}: wedge is a constant multiple of f"), ratio.is_some());
    if let Some(k) = ratio {
        c.check(&format!("{label}: constant nonzero"), !k.is_zero());
        c.check(&format!("{label}: constant = {frozen}"), k == q(frozen, 1));
        c.check(
            &format!("{label}: library wedge agrees"),
            w0.wedge(winf).coeff == f.scale(&Scalar::from_int(frozen)),
        );
        c.note(format!("{label} c = {k}"));
    }
}

// -------------------------------------------------------------- criteria

fn criterion_1(c: &mut Checker) {
    let f = p("x^5+y^5-x^2*y^2");
    let ma = milnor::milnor_algebra(&f, Weights::default()).unwrap();
    // top part x⁵+y⁵ has an isolated singularity, so μ = (d−1)²
    c.check("μ = 16", ma.mu == 16);
    let d = f.total_degree().unwrap_or(0) as usize;
    c.check("oracle: μ = (d−1)²", ma.mu == (d - 1) * (d - 1));
    let op = milnor::build_af(&ma);
    let pm = milnor::min_poly_af(&op);
    let expected = UniPoly::new(vec![Scalar::zero(), Scalar::zero(), Scalar::from_frac(16, 3125), Scalar::one()]);
    c.check("minimal polynomial = t²(t+16/3125)", pm == expected);
    let a = naive_matrix(&op.matrix);
    let shifted = naive_shift(&a, &q(16, 3125));
    let a2 = naive_mul(&a, &a);
    c.check("oracle: t²(t+16/3125) annihilates A_f", naive_is_zero(&naive_mul(&a2, &shifted)));
    c.check("oracle: t(t+16/3125) does not", !naive_is_zero(&naive_mul(&a, &shifted)));
    c.check("oracle: t² does not", !naive_is_zero(&a2));
    c.check("exponent = 2", milnor::exponent(&pm) == 2);
    let at_zero = blocks_at(&op, &UniPoly::t());
    c.check("profile at 0 = {2×1, 1×9}", at_zero == BTreeMap::from([(1, 9), (2, 1)]));
    c.check("oracle profile at 0 agrees", naive_blocks(&a, &BigRational::zero()) == at_zero);
    let h = UniPoly::linear(Scalar::from_frac(-16, 3125));
    let at_other = blocks_at(&op, &h);
    c.check("profile at t+16/3125 = {1×5}", at_other == BTreeMap::from([(1, 5)]));
    c.check("oracle profile at −16/3125 agrees", naive_blocks(&a, &q(-16, 3125)) == at_other);
    let theta = milnor::theta_f(&ma, &op).unwrap();
    c.check("kernel condition = false", !milnor::check_kernel_condition(&ma, &op, &theta).unwrap());
    let omega = efmod::omega_f(&f, &ma, &theta).unwrap();
    let df = OneForm::exterior_derivative(&f);
    let lhs = naive_wedge(&df, &omega);
    c.check("oracle: df∧ω_f = f·Θ_f", lhs == &Naive::from_poly(&f) * &Naive::from_poly(&theta));
    let four = efmod::four_generator_set(&f, &omega);
    let syz = efmod::ef_from_syzygies(&f).unwrap();
    let verdict = efmod::verify_generation(&four.forms, &syz.forms).unwrap();
    c.check("a syzygy generator lies outside ⟨f dx, f dy, df, ω_f⟩", !verdict.generates());
    if let GenerationVerdict::Fails { witness, .. } = verdict {
        c.check("witness is tangent", efmod::is_tangent(&witness, &f));
        c.note(format!("witness {witness}"));
    }
    let omega1 = OneForm::from_vector_field(p("-25*x^2*y^2+6*x*y"), p("-25*x*y^3+5*x^3+4*y^2"));
    c.check("ω₁ ∉ ⟨f dx, f dy, df, ω_f⟩", !generates(&four.forms, &[omega1]));
}

fn criterion_2(c: &mut Checker) {
    let f = p("x*y-1");
    let a = pipeline::analyze(&f, AnalyzeOptions::default()).unwrap();
    c.check("smooth path taken", a.generators.trivial.is_some() && a.spectrum.as_ref().unwrap().exponent == 0);
    let pi = a.generators.minimal.forms.clone();
    c.check("minimal generator count = 2", pi.len() == 2);
    let v = efmod::saito_check(&pi[0], &pi[1], &f).unwrap();
    c.check("recovered pair passes Saito with nonzero constant", v.free);
    let w0 = form("y^2", "1");
    let winf = form("x*y-1", "0");
    c.check("{y²dx+dy, f dx} ⊂ ⟨π⟩", generates(&pi, &[w0.clone(), winf.clone()]));
    c.check("π ⊂ ⟨y²dx+dy, f dx⟩", generates(&[w0.clone(), winf.clone()], &pi));
    let [nx, ny, nf] = [Naive::x(), Naive::y(), Naive::from_poly(&f)];
    let (n0p, n0q) = (Naive::from_poly(&w0.p), Naive::from_poly(&w0.q));
    let (nip, niq) = (Naive::from_poly(&winf.p), Naive::from_poly(&winf.q));
    let (dfp, dfq) = (ny.clone(), nx.clone());
    let printed = (&(&nx * &n0p) + &(&ny * &nip), &(&nx * &n0q) + &(&ny * &niq));
    c.check("df = x·ω₀ + y·ω_∞ (as printed)", printed == (dfp.clone(), dfq.clone()));
    let corrected = (&(&nx * &n0p) - &(&ny * &nip), &(&nx * &n0q) - &(&ny * &niq));
    if corrected == (dfp, dfq) {
        c.note("df = x·ω₀ − y·ω_∞ holds; the printed sign is a typo");
    }
    let y2 = &ny * &ny;
    let rhs = (&(&nf * &n0p) - &(&y2 * &nip), &(&nf * &n0q) - &(&y2 * &niq));
    c.check("f dy = f·ω₀ − y²·ω_∞", rhs == (Naive::default(), nf.clone()));
}

fn criterion_3(c: &mut Checker) {
    let field = Field::extension(parse_univariate("z^2+1", "z").unwrap(), "z").unwrap();
    let pz = |s: &str| parse_poly(s, &field).unwrap();
    let f = pz("x^2+y^2-1");
    let a = pipeline::analyze(&f, AnalyzeOptions::default()).unwrap();
    let z = pz("z");
    let v1 = OneForm::new(pz("x^2-y^2+1"), pz("2*x*y"));
    let w1 = OneForm::new(pz("-2*x*y"), pz("x^2-y^2-1"));
    let v2 = OneForm::dx(f.clone());
    let w2 = OneForm::dy(f.clone());
    let m = vec![&v1 + &w1.mul_poly(&z), &v2 + &w2.mul_poly(&z)];
    c.check("transformed pair tangent", m.iter().all(|w| efmod::is_tangent(w, &f)));
    let minimal = &a.generators.minimal.forms;
    c.check("transformed pair ⊂ ⟨minimal⟩", generates(minimal, &m));
    c.check("minimal ⊂ ⟨transformed pair⟩", generates(&m, minimal));
    let v = efmod::saito_check(&m[0], &m[1], &f).unwrap();
    c.check("Saito constant nonzero", v.free);
    if let Some(k) = v.constant {
        c.note(format!("c = {k}, minimal count {}", minimal.len()));
    }
}

fn criterion_4(c: &mut Checker) {
    for (g, w) in [("x^3+y^3", (1, 1)), ("x^4+y^4", (1, 1)), ("x^2+y^3", (3, 2)), ("x*y", (1, 1))] {
        let gp = p(g);
        let weights = Weights::new(w.0, w.1).unwrap();
        let (dg, eta) = efmod::quasihomog_pair(&gp, weights).unwrap();
        c.check(&format!("{g}: dg∧η = g"), naive_wedge(&dg, &eta) == Naive::from_poly(&gp));
        let syz = efmod::ef_from_syzygies(&gp).unwrap();
        c.check(&format!("{g}: {{dg, η}} generates syzygy_raw"), generates(&[dg, eta], &syz.forms));
        let ma = milnor::milnor_algebra(&gp, weights).unwrap();
        let op = milnor::build_af(&ma);
        let at_zero = blocks_at(&op, &UniPoly::t());
        c.check(&format!("{g}: blocks at 0 all of size 1"), !at_zero.is_empty() && at_zero.keys().all(|&s| s == 1));
        c.check(
            &format!("{g}: oracle blocks agree"),
            naive_blocks(&naive_matrix(&op.matrix), &BigRational::zero()) == at_zero,
        );
    }
}

fn criterion_5(c: &mut Checker) {
    let f = p("(x^3-1)*(y^3-1)*(x^3-y^3)");
    let ma = milnor::milnor_algebra_finite(&f, Weights::default()).unwrap();
    let op = milnor::build_af(&ma);
    let at_zero = blocks_at(&op, &UniPoly::t());
    c.check("blocks at 0 all of size 1", !at_zero.is_empty() && at_zero.keys().all(|&s| s == 1));
    let w0 = form("-x^2*(y^3-1)", "y^2*(x^3-1)");
    let winf = form("-y^4+y", "x^4-x");
    c.check("pair tangent", efmod::is_tangent(&w0, &f) && efmod::is_tangent(&winf, &f));
    // oracle: (x³−1)(y³−1)(y³−x³) expanded by hand equals −f
    let (x3, y3) = (Naive::x().pow(3), Naive::y().pow(3));
    let one = Naive::int(1);
    let expansion = &(&(&x3 - &one) * &(&y3 - &one)) * &(&y3 - &x3);
    c.check("expansion oracle: (x³−1)(y³−1)(y³−x³) = −f", expansion == -&Naive::from_poly(&f));
    let wedge = naive_wedge(&w0, &winf);
    c.check("ω₀∧ω_∞ = −f", wedge == expansion);
    let a = pipeline::analyze(&f, non_tame()).unwrap();
    c.check("minimal generator count = 2", a.generators.minimal.len() == 2);
    c.check("four-generator set generates", a.generators.candidate_generates == Some(true));
}

fn criterion_6(c: &mut Checker) {
    let lissajous = p("2*(2*x^2-1)^2+(2*y+1)^2*(y-1)");
    // a = −1 in 2(2x²−a²)² − a(2y−a)²(y+a)
    let a = -1i64;
    let nx = Naive::x();
    let ny = Naive::y();
    let two_x2 = &Naive::int(2) * &nx.pow(2);
    let oracle_f = &(&Naive::int(2) * &(&two_x2 - &Naive::int(a * a)).pow(2))
        - &(&Naive::int(a) * &(&(&(&Naive::int(2) * &ny) - &Naive::int(a)).pow(2) * &(&ny + &Naive::int(a))));
    c.check("Lissajous polynomial matches a = −1", oracle_f == Naive::from_poly(&lissajous));
    let w0 = form("-16*x*y^2+8*x*y+8*x", "12*x^2*y-6*x^2-6*y+3");
    let winf = form("-16*x^2*y+8*y^2+4*y-4", "12*x^3-6*x*y-9*x");
    wedge_constant(c, "Lissajous", &w0, &winf, &lissajous, 12);

    let deltoid = p("(x^2+y^2)^2+8*x*(x^2-3*y^2)+18*(x^2+y^2)-27");
    let w0 = form("x^2-3*y^2+6*x+9", "4*x*y-6*y");
    let winf = form("-4*x*y+6*y", "3*x^2-y^2+6*x-9");
    wedge_constant(c, "deltoid", &w0, &winf, &deltoid, 3);
}

fn criterion_7(c: &mut Checker) {
    let f = p("4*x^4+8*x^2*y^2+4*y^4-4*x^6-12*x^4*y^2-12*x^2*y^4-4*y^6-y^2");
    let w0 = form("8*x^3-x*y^2", "11*x^2*y+2*y^3-y");
    let winf = form("5*x^2*y-4*y^3+2*y", "x^3+10*x*y^2-x");
    wedge_constant(c, "rose", &w0, &winf, &f, -2);
    let n = p("(x^2+y^2-1/3)^3");
    let d = p("36*x^2+9*y^2-4");
    let integral = &OneForm::exterior_derivative(&n).mul_poly(&d) - &OneForm::exterior_derivative(&d).mul_poly(&n);
    c.check("(D dN − N dD)∧ω₀ = 0", naive_wedge(&integral, &w0).is_zero());
    let (sx, sy) = (p("x^2"), p("y^2"));
    let c0 = form("8*x-y", "11*x+2*y-1");
    let cinf = form("5*x*y-4*y^2+2*y", "x^2+10*x*y-x");
    c.check("π*ω̌₀ = 2ω₀", c0.pullback(&sx, &sy) == w0.scale(&Scalar::from_int(2)));
    c.check("π*ω̌_∞ = 2xy·ω_∞", cinf.pullback(&sx, &sy) == winf.mul_poly(&p("2*x*y")));
}

fn degree_in_x(p: &Polynomial) -> i64 {
    p.degree_x().map_or(-1, i64::from)
}

fn criterion_8(c: &mut Checker) {
    for (g, d) in [("3*x^4-2*x^3+5*x^2-x+7", 4u32), ("2*x^5+4*x^4-3*x^3+x^2+6*x-5", 5)] {
        let gp = p(g);
        let f = &p("y") - &gp;
        let a = pipeline::analyze(&f, AnalyzeOptions {
            weights: Weights::new(1, d).unwrap(),
            allow_non_tame: false,
        })
        .unwrap();
        c.check(&format!("d={d}: minimal generator count = 2"), a.generators.minimal.len() == 2);
        let Some((w0, winf)) = corpus::graph_pair(&gp) else {
            c.check(&format!("d={d}: pair with the degree pattern exists"), false);
            continue;
        };
        // structural degrees, read off independently of the construction
        let shape = |w: &OneForm| -> Option<[i64; 3]> {
            let affine = w.p.degree_y().unwrap_or(0) <= 1 && w.q.degree_y().unwrap_or(0) == 0;
            affine.then(|| [degree_in_x(&w.p.coeff_in_y(1)), degree_in_x(&w.p.coeff_in_y(0)), degree_in_x(&w.q)])
        };
        let (pa, pb) = graph_degree_pattern(d);
        c.check(&format!("d={d}: ω₀ degrees {pa:?}"), shape(&w0) == Some(pa));
        c.check(&format!("d={d}: ω_∞ degrees {pb:?}"), shape(&winf) == Some(pb));
        c.check(
            &format!("d={d}: pair spans E_f"),
            efmod::same_module(&[w0.clone(), winf.clone()], &a.generators.minimal.forms).unwrap(),
        );
        let ratio = naive_wedge(&w0, &winf).ratio(&Naive::from_poly(&f));
        c.check(&format!("d={d}: wedge = c·(y − f(x)), c ≠ 0"), ratio.as_ref().is_some_and(|k| !k.is_zero()));
    }
}

fn criterion_9(c: &mut Checker) {
    let f = p("x*(x-1)*(x+1)");
    let w0 = OneForm::dx(p("1"));
    let winf = OneForm::dy(f.clone());
    c.check("pair tangent", efmod::is_tangent(&w0, &f) && efmod::is_tangent(&winf, &f));
    c.check("wedge = f", naive_wedge(&w0, &winf) == Naive::from_poly(&f));
    let a: Analysis = pipeline::analyze(&f, non_tame()).unwrap();
    c.check("pair spans E_f", efmod::same_module(&[w0.clone(), winf.clone()], &a.generators.syzygy.forms).unwrap());
    let riccati = OneForm::new(p("y^2+x"), f.clone());
    c.check("Riccati form tangent", efmod::is_tangent(&riccati, &f));
    c.check("Riccati form ∈ ⟨dx, f dy⟩", generates(&[w0, winf], &[riccati]));
}

fn criterion_10(c: &mut Checker) {
    for (name, prop) in support::all() {
        let start = Instant::now();
        if let Err(e) = prop(support::CASES) {
            c.check(&format!("{name}: {e}"), false);
        }
        c.note(format!("{name} {} ms", start.elapsed().as_millis()));
    }
}

fn criterion_11(c: &mut Checker) {
    for fx in corpus::fixtures() {
        let Ok(ma) = milnor::milnor_algebra_finite(&fx.polynomial(), fx.weights()) else { continue };
        let op = milnor::build_af(&ma);
        for cf in milnor::critical_value_factors(op.minimal_polynomial()) {
            let profile = milnor::jordan_profile(&op, &cf.factor).unwrap();
            if cf.factor == UniPoly::t() {
                c.check(&format!("{}: no block of size ≥ 3 at 0", fx.name), profile.max_block() <= 2);
            }
            let only_two = !profile.blocks.is_empty() && profile.blocks.keys().all(|&s| s == 2);
            c.check(&format!("{}: profile at {} not solely size 2", fx.name, cf.factor), !only_two);
        }
    }
}

/// Criteria that cannot pass as written; the reason is recorded in the
/// decisions ledger. They still print FAIL.
const KNOWN_FAILURES: &[(u32, &str)] = &[(2, "the printed identity df = x·ω₀ + y·ω_∞ has a sign error")];

type Criterion = (u32, &'static str, u64, fn(&mut Checker));

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        (1, "A'Campo", 10, criterion_1),
        (2, "circle xy−1", 1, criterion_2),
        (3, "circle over Q(i)", 2, criterion_3),
        (4, "quasi-homogeneous suite", 5, criterion_4),
        (5, "Lins Neto a=3", 30, criterion_5),
        (6, "Lissajous and deltoid", 10, criterion_6),
        (7, "rose k=1/2", 10, criterion_7),
        (8, "graphs d=4,5", 10, criterion_8),
        (9, "Riccati", 2, criterion_9),
        (10, "engine properties", 30, criterion_10),
        (11, "Jordan block bound over the corpus", 60, criterion_11),
    ];
    let mut unexpected = Vec::new();
    let total = Instant::now();
    for (n, title, limit, run) in criteria {
        let mut c = Checker {
            failures: Vec::new(),
            notes: Vec::new(),
        };
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&mut c)));
        let elapsed = start.elapsed();
        if result.is_err() {
            c.failures.push("panicked".to_string());
        }
        if elapsed > Duration::from_secs(limit) {
            c.failures.push(format!("runtime {} ms over {limit} s", elapsed.as_millis()));
        }
        let pass = c.failures.is_empty();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n:>2} [{title}]: {} ({} ms)",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_millis()
        );
        for f in &c.failures {
            println!("    failed: {f}");
        }
        for note in &c.notes {
            println!("    note: {note}");
        }
        match (pass, known) {
            (false, Some((_, why))) => println!("    known failure: {why}"),
            (false, None) => unexpected.push(n),
            (true, Some(_)) => println!("    listed as a known failure but passed"),
            (true, None) => {}
        }
    }
    println!("acceptance finished in {} ms", total.elapsed().as_millis());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
