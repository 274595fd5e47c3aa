//! Exact scalars over ℚ or over a simple extension ℚ[z]/(m(z)).
//!
//! A [`Scalar`] whose value lies in ℚ is always stored as a plain rational,
//! whatever field it was produced in. Algebraic elements carry their
//! [`Field`] so that mixing elements of two different extensions is caught.
//! This keeps zero (and every rational) with a single representation.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinpoly(String),
    #[error("generator needs a numeric embedding")]
    MissingEmbedding,
}

/// The base field: ℚ, or ℚ[z]/(m(z)) for a monic squarefree `m` of degree ≥ 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    /// Ascending coefficients of the monic minimal polynomial, if any.
    minpoly: Option<Vec<BigRational>>,
    generator: String,
}

/// Shared handle to a [`FieldSpec`].
#[derive(Debug, Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Default for Field {
    fn default() -> Self {
        Field::rationals()
    }
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldSpec {
            minpoly: None,
            generator: "z".to_string(),
        }))
    }

    /// Builds ℚ[z]/(m) from the ascending coefficients of `m`.
    ///
    /// `m` must be monic, of degree at least 2 and squarefree. Irreducibility
    /// is not checked; a reducible `m` shows up later as a
    /// [`ScalarError::DivisionByZero`] on some nonzero element.
    pub fn extension(minpoly: Vec<BigRational>, generator: &str) -> Result<Self, ScalarError> {
        let m = upoly::trim(minpoly);
        if m.len() < 3 {
            return Err(ScalarError::InvalidMinpoly("degree must be at least 2".into()));
        }
        if !m.last().unwrap().is_one() {
            return Err(ScalarError::InvalidMinpoly("not monic".into()));
        }
        let g = upoly::gcd(&m, &upoly::derivative(&m));
        if g.len() > 1 {
            return Err(ScalarError::InvalidMinpoly("not squarefree".into()));
        }
        if generator == "x" || generator == "y" || generator.is_empty() {
            return Err(ScalarError::InvalidMinpoly(format!(
                "generator name {generator:?} is reserved"
            )));
        }
        Ok(Field(Arc::new(FieldSpec {
            minpoly: Some(m),
            generator: generator.to_string(),
        })))
    }

    pub fn is_rationals(&self) -> bool {
        self.0.minpoly.is_none()
    }

    /// Degree of the extension over ℚ.
    pub fn degree(&self) -> usize {
        self.0.minpoly.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn minpoly(&self) -> Option<&[BigRational]> {
        self.0.minpoly.as_deref()
    }

    pub fn generator_name(&self) -> &str {
        &self.0.generator
    }

    /// The class of the generator `z`. Errors over ℚ.
    pub fn generator(&self) -> Result<Scalar, ScalarError> {
        if self.is_rationals() {
            return Err(ScalarError::InvalidMinpoly("ℚ has no generator".into()));
        }
        let mut c = vec![BigRational::zero(); self.degree()];
        c[1] = BigRational::one();
        Ok(Scalar::algebraic(c, self.clone()))
    }

    /// Smallest field containing both, where ℚ embeds in everything.
    pub fn join(&self, other: &Field) -> Result<Field, ScalarError> {
        if self.is_rationals() {
            Ok(other.clone())
        } else if other.is_rationals() || self == other {
            Ok(self.clone())
        } else {
            Err(ScalarError::FieldMismatch)
        }
    }

    pub fn describe(&self) -> String {
        match &self.0.minpoly {
            None => "QQ".to_string(),
            Some(m) => format!(
                "QQ[{g}]/({})",
                upoly::format(m, &self.0.generator),
                g = self.0.generator
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    /// Length equals the field degree; some coefficient above the constant
    /// one is nonzero.
    Algebraic(Vec<BigRational>, Field),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rational(BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rational(BigRational::one()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar(Repr::Rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Repr::Rational(BigRational::from_integer(BigInt::from(n))))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar(Repr::Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Element of `field` with the given ascending coefficients in the
    /// generator. Coefficients beyond the field degree are reduced.
    pub fn from_coeffs(coeffs: Vec<BigRational>, field: &Field) -> Self {
        match field.minpoly() {
            None => {
                let r = coeffs.into_iter().next().unwrap_or_else(BigRational::zero);
                Scalar::from_rational(r)
            }
            Some(m) => {
                let reduced = upoly::rem_monic(coeffs, m);
                let mut c = reduced;
                c.resize(field.degree(), BigRational::zero());
                Scalar::algebraic(c, field.clone())
            }
        }
    }

    fn algebraic(coeffs: Vec<BigRational>, field: Field) -> Self {
        if coeffs.iter().skip(1).all(Zero::is_zero) {
            let c0 = coeffs.into_iter().next().unwrap_or_else(BigRational::zero);
            Scalar(Repr::Rational(c0))
        } else {
            Scalar(Repr::Algebraic(coeffs, field))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Algebraic(..) => None,
        }
    }

    /// The extension this element genuinely lives in, `None` when rational.
    pub fn field(&self) -> Option<&Field> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Algebraic(_, f) => Some(f),
        }
    }

    /// Coefficients in the power basis of `field` (length = field degree).
    pub fn coeffs(&self, field: &Field) -> Vec<BigRational> {
        let mut c = match &self.0 {
            Repr::Rational(r) => vec![r.clone()],
            Repr::Algebraic(c, _) => c.clone(),
        };
        c.resize(field.degree(), BigRational::zero());
        c
    }

    /// Number of terms when printed as a polynomial in the generator.
    pub fn term_count(&self) -> usize {
        match &self.0 {
            Repr::Rational(r) => usize::from(!r.is_zero()),
            Repr::Algebraic(c, _) => c.iter().filter(|v| !v.is_zero()).count(),
        }
    }

    /// True when the printed form starts with a minus sign and has one term.
    pub fn is_negative_monomial(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_negative(),
            Repr::Algebraic(c, _) => {
                let nz: Vec<_> = c.iter().filter(|v| !v.is_zero()).collect();
                nz.len() == 1 && nz[0].is_negative()
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar::from_rational(a + b),
            (Repr::Rational(a), Repr::Algebraic(c, f)) | (Repr::Algebraic(c, f), Repr::Rational(a)) => {
                let mut c = c.clone();
                c[0] += a;
                Scalar::algebraic(c, f.clone())
            }
            (Repr::Algebraic(a, fa), Repr::Algebraic(b, fb)) => {
                if fa != fb {
                    return Err(ScalarError::FieldMismatch);
                }
                let c = a.iter().zip(b).map(|(u, v)| u + v).collect();
                Scalar::algebraic(c, fa.clone())
            }
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar::from_rational(a * b),
            (Repr::Rational(a), Repr::Algebraic(c, f)) | (Repr::Algebraic(c, f), Repr::Rational(a)) => {
                if a.is_zero() {
                    return Ok(Scalar::zero());
                }
                Scalar::algebraic(c.iter().map(|v| v * a).collect(), f.clone())
            }
            (Repr::Algebraic(a, fa), Repr::Algebraic(b, fb)) => {
                if fa != fb {
                    return Err(ScalarError::FieldMismatch);
                }
                let prod = upoly::mul(a, b);
                let m = fa.minpoly().expect("algebraic element over an extension");
                let mut c = upoly::rem_monic(prod, m);
                c.resize(fa.degree(), BigRational::zero());
                Scalar::algebraic(c, fa.clone())
            }
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the minimal polynomial.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_zero() {
                    Err(ScalarError::DivisionByZero)
                } else {
                    Ok(Scalar::from_rational(r.recip()))
                }
            }
            Repr::Algebraic(c, f) => {
                let m = f.minpoly().expect("algebraic element over an extension");
                let (g, s) = upoly::half_xgcd(c, m);
                // g = s·c mod m; invertible iff g is a nonzero constant
                if g.len() != 1 {
                    return Err(ScalarError::DivisionByZero);
                }
                let ginv = g[0].recip();
                let s: Vec<_> = s.into_iter().map(|v| v * &ginv).collect();
                Ok(Scalar::from_coeffs(s, f))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value; extension elements need the generator's value.
    pub fn to_f64(&self, embedding: Option<f64>) -> Result<f64, ScalarError> {
        match &self.0 {
            Repr::Rational(r) => Ok(rational_to_f64(r)),
            Repr::Algebraic(c, _) => {
                let z = embedding.ok_or(ScalarError::MissingEmbedding)?;
                Ok(c.iter().rev().fold(0.0, |acc, v| acc * z + rational_to_f64(v)))
            }
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

/// Arithmetic selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar::from_rational(-r),
            Repr::Algebraic(c, f) => Scalar(Repr::Algebraic(c.iter().map(|v| -v).collect(), f.clone())),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator forms panic on mixed extensions; polynomial constructors join
// fields up front so this never fires on well-formed inputs.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => f.write_str(&format_rational(r)),
            Repr::Algebraic(c, field) => f.write_str(&upoly::format(c, field.generator_name())),
        }
    }
}

/// Dense univariate helpers over ℚ (ascending coefficients) used for the
/// extension arithmetic.
pub(crate) mod upoly {
    use super::format_rational;
    use num_rational::BigRational;
    use num_traits::{One, Signed, Zero};

    pub fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, u) in a.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (j, v) in b.iter().enumerate() {
                out[i + j] += u * v;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, v) in a.iter().enumerate() {
            out[i] += v;
        }
        for (i, v) in b.iter().enumerate() {
            out[i] -= v;
        }
        trim(out)
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(a: Vec<BigRational>, m: &[BigRational]) -> Vec<BigRational> {
        let n = m.len() - 1;
        let mut a = trim(a);
        while a.len() > n {
            let k = a.len() - 1;
            let c = a[k].clone();
            if !c.is_zero() {
                for (i, mi) in m.iter().enumerate() {
                    a[k - n + i] -= &c * mi;
                }
            }
            a.pop();
            a = trim(a);
        }
        a
    }

    /// Quotient and remainder by an arbitrary nonzero divisor.
    pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let b = trim(b.to_vec());
        let lc = b.last().expect("nonzero divisor").clone();
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() + 1 - b.len()];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / &lc;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn derivative(a: &[BigRational]) -> Vec<BigRational> {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, v)| v * BigRational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn monic(a: Vec<BigRational>) -> Vec<BigRational> {
        match a.last() {
            None => a,
            Some(lc) => {
                let inv = lc.recip();
                a.into_iter().map(|v| v * &inv).collect()
            }
        }
    }

    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    /// Returns `(g, s)` with `g ≡ s·a (mod m)` and `g = gcd(a, m)` up to a unit.
    pub fn half_xgcd(a: &[BigRational], m: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(m.to_vec()));
        let (mut s0, mut s1) = (vec![BigRational::one()], Vec::new());
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }

    /// Descending-power text such as `3/2*z+1`.
    pub fn format(c: &[BigRational], var: &str) -> String {
        let mut out = String::new();
        for (k, v) in c.iter().enumerate().rev() {
            if v.is_zero() {
                continue;
            }
            let neg = v.is_negative();
            let abs = v.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mon = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if mon.is_empty() {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mon);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mon);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn gaussian() -> Field {
        Field::extension(vec![q(1, 1), q(0, 1), q(1, 1)], "z").unwrap()
    }

    fn golden() -> Field {
        Field::extension(vec![q(-1, 1), q(-1, 1), q(1, 1)], "z").unwrap()
    }

    #[test]
    fn rational_sum() {
        let s = scalar_arith(&Scalar::from_frac(1, 2), &Scalar::from_frac(1, 3), ArithOp::Add).unwrap();
        assert_eq!(s, Scalar::from_frac(5, 6));
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn gaussian_square() {
        let z = gaussian().generator().unwrap();
        assert_eq!(&z * &z, Scalar::from_int(-1));
        assert_eq!(z.inverse().unwrap(), -&z);
    }

    #[test]
    fn golden_ratio() {
        let f = golden();
        let z = f.generator().unwrap();
        let zz = &z * &z;
        assert_eq!(zz, &z + &Scalar::one());
        assert_eq!(zz.to_string(), "z+1");
        assert_eq!(z.inverse().unwrap(), &z - &Scalar::one());
    }

    #[test]
    fn inverse_of_rational() {
        assert_eq!(Scalar::from_frac(2, 3).inverse().unwrap(), Scalar::from_frac(3, 2));
    }

    #[test]
    fn errors() {
        assert_eq!(Scalar::zero().inverse(), Err(ScalarError::DivisionByZero));
        let a = gaussian().generator().unwrap();
        let b = golden().generator().unwrap();
        assert_eq!(a.checked_mul(&b), Err(ScalarError::FieldMismatch));
        assert_eq!(
            scalar_arith(&Scalar::one(), &Scalar::zero(), ArithOp::Div),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn minpoly_validation() {
        assert!(Field::extension(vec![q(1, 1), q(1, 1)], "z").is_err());
        assert!(Field::extension(vec![q(1, 1), q(0, 1), q(2, 1)], "z").is_err());
        // (z+1)^2
        assert!(Field::extension(vec![q(1, 1), q(2, 1), q(1, 1)], "z").is_err());
        assert!(Field::extension(vec![q(1, 1), q(0, 1), q(1, 1)], "x").is_err());
    }

    #[test]
    fn reducible_minpoly_surfaces_as_division_by_zero() {
        // z^2 - 1 = (z-1)(z+1) is squarefree but reducible
        let f = Field::extension(vec![q(-1, 1), q(0, 1), q(1, 1)], "z").unwrap();
        let z = f.generator().unwrap();
        let zero_divisor = &z - &Scalar::one();
        assert_eq!(zero_divisor.inverse(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn canonical_zero() {
        let z = gaussian().generator().unwrap();
        let d = &z - &z;
        assert!(d.is_zero());
        assert_eq!(d, Scalar::zero());
    }

    #[test]
    fn display_forms() {
        let f = gaussian();
        let s = Scalar::from_coeffs(vec![q(1, 1), q(3, 2)], &f);
        assert_eq!(s.to_string(), "3/2*z+1");
        assert_eq!((-f.generator().unwrap()).to_string(), "-z");
        assert_eq!(Scalar::from_frac(-4, 6).to_string(), "-2/3");
    }

    #[test]
    fn embedding() {
        let f = gaussian();
        let s = Scalar::from_coeffs(vec![q(1, 1), q(3, 2)], &f);
        assert_eq!(s.to_f64(Some(2.0)).unwrap(), 4.0);
        assert_eq!(s.to_f64(None), Err(ScalarError::MissingEmbedding));
    }
}
