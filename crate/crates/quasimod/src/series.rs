//! Truncated formal power series in q with exact rational coefficients.
//!
//! A `QSeries` stores coefficients for q^0 .. q^order inclusive. Arithmetic on
//! two series truncates to the shorter order, so pipeline stages with
//! different order budgets compose without errors.

use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rat>,
}

impl QSeries {
    /// Series from explicit coefficients (q^0 first). Must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a QSeries has at least the q^0 coefficient");
        QSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rat::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rat::one(), order)
    }

    pub fn constant(c: Rat, order: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); order + 1];
        coeffs[0] = c;
        QSeries { coeffs }
    }

    /// c * q^n, truncated at `order`.
    pub fn monomial(c: Rat, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// Truncation order (inclusive).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of q^n; zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Overwrite the coefficient of q^n (n must be within the order).
    pub fn set_coeff(&mut self, n: usize, c: Rat) {
        self.coeffs[n] = c;
    }

    /// Restrict (or zero-extend) to the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rat::zero());
        QSeries { coeffs }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn scale_assign(&mut self, c: &Rat) {
        for x in &mut self.coeffs {
            *x = &*x * c;
        }
    }

    /// q d/dq: the coefficient of q^n is multiplied by n.
    pub fn dq(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c * rat(n as i64))
            .collect();
        QSeries { coeffs }
    }

    /// Exact division; the divisor needs a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.coeffs[0].is_zero() {
            return Err(Error::DivisionByNonUnit);
        }
        let order = self.order().min(rhs.order());
        let inv0 = rhs.coeffs[0].clone().recip();
        let mut out = vec![Rat::zero(); order + 1];
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &rhs.coeffs[k] * &out[n - k];
            }
            out[n] = acc * &inv0;
        }
        Ok(QSeries { coeffs: out })
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = QSeries::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// In-place multiplication by q^w (coefficients shift up, overflow drops).
    pub fn shift_assign(&mut self, w: usize) {
        if w == 0 {
            return;
        }
        let n = self.coeffs.len();
        for i in (0..n).rev() {
            self.coeffs[i] = if i >= w { self.coeffs[i - w].clone() } else { Rat::zero() };
        }
    }

    /// In-place multiplication by 1/(1-q^w), w >= 1.
    pub fn mul_geom_assign(&mut self, w: usize) {
        assert!(w >= 1);
        for i in w..self.coeffs.len() {
            let prev = self.coeffs[i - w].clone();
            self.coeffs[i] += prev;
        }
    }

    /// First index at which two series differ (comparing through the shorter order).
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        let order = self.order().min(other.order());
        self.coeffs.truncate(order + 1);
        for n in 0..=order {
            self.coeffs[n] += &other.coeffs[n];
        }
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect();
        QSeries { coeffs }
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect();
        QSeries { coeffs }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    /// Cauchy product truncated to the shorter order.
    fn mul(self, rhs: &QSeries) -> QSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries[")?;
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", crate::rational::format_rat(c))?;
        }
        write!(f, "] + O(q^{})", self.order() + 1)
    }
}

/// Sum over d of p(d) q^d: the generating series of partition numbers.
pub fn partition_gf(order: usize) -> QSeries {
    // expand prod 1/(1-q^k)
    let mut s = QSeries::one(order);
    for k in 1..=order {
        s.mul_geom_assign(k);
    }
    s
}

/// prod_{n>=1} (1 - q^n), expanded term by term.
pub fn euler_product(order: usize) -> QSeries {
    let mut s = QSeries::one(order);
    for n in 1..=order {
        // multiply by (1 - q^n) in place
        for i in (n..=order).rev() {
            let lower = s.coeffs[i - n].clone();
            s.coeffs[i] -= lower;
        }
    }
    s
}
