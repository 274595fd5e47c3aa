use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::Polynomial;
use crate::scalar::{Field, Scalar};

/// `p dx + q dy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneForm {
    pub p: Polynomial,
    pub q: Polynomial,
}

/// `coeff dx∧dy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoForm {
    pub coeff: Polynomial,
}

impl OneForm {
    pub fn new(p: Polynomial, q: Polynomial) -> Self {
        let field = p.field().join(q.field()).expect("form components over different fields");
        OneForm {
            p: p.with_field(&field).expect("joined field"),
            q: q.with_field(&field).expect("joined field"),
        }
    }

    pub fn zero(field: &Field) -> Self {
        OneForm::new(Polynomial::zero(field), Polynomial::zero(field))
    }

    /// `p dx`.
    pub fn dx(p: Polynomial) -> Self {
        let z = Polynomial::zero(p.field());
        OneForm::new(p, z)
    }

    /// `q dy`.
    pub fn dy(q: Polynomial) -> Self {
        let z = Polynomial::zero(q.field());
        OneForm::new(z, q)
    }

    /// The 1-form dual to the vector field `a ∂x + b ∂y`, namely `a dy − b dx`.
    pub fn from_vector_field(a: Polynomial, b: Polynomial) -> Self {
        OneForm::new(-b, a)
    }

    pub fn field(&self) -> &Field {
        self.p.field()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> OneForm {
        OneForm::new(self.p.scale(c), self.q.scale(c))
    }

    pub fn mul_poly(&self, g: &Polynomial) -> OneForm {
        OneForm::new(&self.p * g, &self.q * g)
    }

    /// `self ∧ other`; the coefficient is `p·other.q − q·other.p`.
    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        TwoForm {
            coeff: &(&self.p * &other.q) - &(&self.q * &other.p),
        }
    }

    /// Pullback under `(x, y) ↦ (sx, sy)`.
    pub fn pullback(&self, sx: &Polynomial, sy: &Polynomial) -> OneForm {
        let p = self.p.compose(sx, sy);
        let q = self.q.compose(sx, sy);
        OneForm::new(
            &(&p * &sx.diff_x()) + &(&q * &sy.diff_x()),
            &(&p * &sx.diff_y()) + &(&q * &sy.diff_y()),
        )
    }

    /// Exterior derivative `(∂q/∂x − ∂p/∂y) dx∧dy`.
    pub fn d(&self) -> TwoForm {
        TwoForm {
            coeff: &self.q.diff_x() - &self.p.diff_y(),
        }
    }

    /// Largest total degree among the two components (`None` for zero).
    pub fn max_total_degree(&self) -> Option<u32> {
        self.p.total_degree().max(self.q.total_degree())
    }

    pub fn components(&self) -> [&Polynomial; 2] {
        [&self.p, &self.q]
    }
}

/// `df = f_x dx + f_y dy`.
pub fn exterior_derivative(f: &Polynomial) -> OneForm {
    OneForm::new(f.diff_x(), f.diff_y())
}

impl OneForm {
    pub fn exterior_derivative(f: &Polynomial) -> OneForm {
        exterior_derivative(f)
    }
}

impl TwoForm {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl Add<&OneForm> for &OneForm {
    type Output = OneForm;
    fn add(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl Sub<&OneForm> for &OneForm {
    type Output = OneForm;
    fn sub(self, rhs: &OneForm) -> OneForm {
        OneForm::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl Neg for &OneForm {
    type Output = OneForm;
    fn neg(self) -> OneForm {
        OneForm::new(-&self.p, -&self.q)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dx + ({})*dy", self.p, self.q)
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})*dx^dy", self.coeff)
    }
}
