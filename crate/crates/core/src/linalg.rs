//! Exact dense linear algebra over K and univariate polynomials over K.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch")]
    DimensionMismatch,
    #[error("operation needs a nonzero polynomial")]
    ZeroInput,
}

/// Dense row-major matrix of scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixK {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl MatrixK {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixK {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixK::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok(MatrixK {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut m = MatrixK::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinalgError::DimensionMismatch);
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &MatrixK) -> Result<MatrixK, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = MatrixK::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch);
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(Scalar::zero(), |acc, j| {
                    let a = self.get(i, j);
                    if a.is_zero() || v[j].is_zero() {
                        acc
                    } else {
                        &acc + &(a * &v[j])
                    }
                })
            })
            .collect())
    }

    fn add_scaled_identity(&mut self, c: &Scalar) {
        for i in 0..self.rows.min(self.cols) {
            let idx = i * self.cols + i;
            self.data[idx] = &self.data[idx] + c;
        }
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &MatrixK) -> Result<MatrixK, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch);
        }
        let mut out = MatrixK::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Scalar]>::to_vec).collect()
    }
}

/// Clears denominators of a row of rationals; rows with algebraic entries
/// are left alone.
fn integralize(row: &mut [Scalar]) {
    let mut l = BigInt::one();
    for v in row.iter() {
        match v.as_rational() {
            Some(r) => l = l.lcm(r.denom()),
            None => return,
        }
    }
    if !l.is_one() {
        let s = Scalar::from_rational(BigRational::from_integer(l));
        for v in row.iter_mut() {
            *v = &*v * &s;
        }
    }
}

/// Rank via fraction-free (Bareiss) elimination.
pub fn rank(m: &MatrixK) -> usize {
    let mut a = m.row_vecs();
    for row in a.iter_mut() {
        integralize(row);
    }
    let (rows, cols) = (m.rows, m.cols);
    let mut r = 0;
    let mut prev = Scalar::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let prev_inv = prev.inverse().expect("nonzero previous pivot");
        for i in r + 1..rows {
            let factor = a[i][c].clone();
            for j in c + 1..cols {
                let v = &(&a[i][j] * &a[r][c]) - &(&factor * &a[r][j]);
                a[i][j] = &v * &prev_inv;
            }
            a[i][c] = Scalar::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form; returns the pivot columns.
fn rref(a: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inverse().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let factor = a[i][c].clone();
            let pivot = a[r].clone();
            for (dst, src) in a[i].iter_mut().zip(&pivot).skip(c) {
                if !src.is_zero() {
                    *dst = &*dst - &(&factor * src);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the null space `{v : M·v = 0}`.
pub fn kernel_basis(m: &MatrixK) -> Vec<Vec<Scalar>> {
    let mut a = m.row_vecs();
    let pivots = rref(&mut a, m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); m.cols];
            v[fc] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r][fc];
            }
            v
        })
        .collect()
}

/// `h(M)` by Horner's rule.
pub fn eval_matrix_poly(h: &UniPoly, m: &MatrixK) -> Result<MatrixK, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows;
    let mut acc = MatrixK::zeros(n, n);
    for c in h.coeffs.iter().rev() {
        acc = acc.mul(m)?;
        acc.add_scaled_identity(c);
    }
    Ok(acc)
}

/// Applies `h(M)` to a vector without forming the matrix.
pub fn apply_matrix_poly(h: &UniPoly, m: &MatrixK, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let mut acc = vec![Scalar::zero(); v.len()];
    for c in h.coeffs.iter().rev() {
        acc = m.mul_vec(&acc)?;
        for (a, b) in acc.iter_mut().zip(v) {
            *a = &*a + &(c * b);
        }
    }
    Ok(acc)
}

/// Monic minimal polynomial: the first linear dependence among
/// `I, M, M², …` found by incremental elimination.
pub fn minimal_polynomial(m: &MatrixK) -> Result<UniPoly, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare);
    }
    let n = m.rows;
    // stored rows: (pivot index, reduced vector, combination of powers)
    let mut basis: Vec<(usize, Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    let mut power = MatrixK::identity(n);
    for k in 0..=n * n {
        let mut v = power.data.clone();
        let mut comb = vec![Scalar::zero(); k + 1];
        comb[k] = Scalar::one();
        for (piv, row, rc) in &basis {
            if v[*piv].is_zero() {
                continue;
            }
            let factor = &v[*piv] * &row[*piv].inverse().expect("nonzero pivot");
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&factor * b);
                }
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                *a = &*a - &(&factor * b);
            }
        }
        match v.iter().position(|s| !s.is_zero()) {
            None => return Ok(UniPoly::new(comb)),
            Some(piv) => basis.push((piv, v, comb)),
        }
        power = power.mul(m)?;
    }
    unreachable!("Cayley–Hamilton bounds the degree by n")
}

/// Univariate polynomial over K in `t`, ascending coefficients, no trailing zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::new(vec![Scalar::one()])
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        UniPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `t − root`.
    pub fn linear(root: Scalar) -> Self {
        UniPoly::new(vec![-root, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| &(&acc * t) + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero);
                    &a + &b
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), LinalgError> {
        let dl = d.leading_coeff().ok_or(LinalgError::ZeroInput)?;
        let inv = dl.inverse().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let dn = d.coeffs.len();
        if r.len() < dn {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut q = vec![Scalar::zero(); r.len() + 1 - dn];
        for k in (0..q.len()).rev() {
            let c = &r[k + dn - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * di);
            }
            q[k] = c;
        }
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    /// Exact quotient; panics when `d` does not divide.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading_coeff() {
            None => UniPoly::zero(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero")),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of `t` as a factor.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// The root of a degree-one polynomial.
    pub fn linear_root(&self) -> Option<Scalar> {
        (self.degree() == Some(1)).then(|| {
            let m = self.monic();
            -&m.coeffs[0]
        })
    }

    pub fn format_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mon = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let first = out.is_empty();
            if let Some(r) = c.as_rational() {
                let abs = r.abs();
                if r.is_negative() {
                    out.push('-');
                } else if !first {
                    out.push('+');
                }
                if mon.is_empty() {
                    out.push_str(&Scalar::from_rational(abs).to_string());
                } else {
                    if !abs.is_one() {
                        out.push_str(&Scalar::from_rational(abs).to_string());
                        out.push('*');
                    }
                    out.push_str(&mon);
                }
            } else {
                if !first {
                    out.push('+');
                }
                out.push('(');
                out.push_str(&c.to_string());
                out.push(')');
                if !mon.is_empty() {
                    out.push('*');
                    out.push_str(&mon);
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_in("t"))
    }
}

/// Yun's squarefree decomposition: monic pairwise coprime squarefree factors
/// with multiplicities whose product is `p` up to a unit.
pub fn squarefree_decompose(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>, LinalgError> {
    if p.is_zero() {
        return Err(LinalgError::ZeroInput);
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0);
    let mut c = dp.div_exact(&a0);
    let mut d = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        d = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}
