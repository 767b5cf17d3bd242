//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// An element of `Z[t, t^-1]`, stored sparsely as exponent -> coefficient.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality. Serializes as `{"exp": coef, ...}` with string
/// keys.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<i32, i64>", into = "BTreeMap<i32, i64>")]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i32, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("zero coefficient stored at exponent {0}")]
pub struct ZeroCoefficient(pub i32);

impl TryFrom<BTreeMap<i32, i64>> for LaurentPolynomial {
    type Error = ZeroCoefficient;

    fn try_from(coeffs: BTreeMap<i32, i64>) -> Result<Self, Self::Error> {
        if let Some((&e, _)) = coeffs.iter().find(|(_, &c)| c == 0) {
            return Err(ZeroCoefficient(e));
        }
        Ok(Self { coeffs })
    }
}

impl From<LaurentPolynomial> for BTreeMap<i32, i64> {
    fn from(p: LaurentPolynomial) -> Self {
        p.coeffs
    }
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coef * t^exp`.
    pub fn monomial(coef: i64, exp: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if coef != 0 {
            coeffs.insert(exp, coef);
        }
        Self { coeffs }
    }

    /// The variable `t` raised to `exp`.
    pub fn t_pow(exp: i32) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients of `c0 + c1 t + c2 t^2 + ...`.
    pub fn from_ascending(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(e, &c)| (e as i32, c)))
    }

    fn add_term(&mut self, exp: i32, coef: i64) {
        if coef == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coef;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Coefficient of the highest power of `t`.
    pub fn leading_coeff(&self) -> Option<i64> {
        self.coeffs.values().next_back().copied()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// `p(t^-1)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn eval_at_minus_one(&self) -> i64 {
        self.terms()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms().map(|(e, c)| c as f64 * t.powi(e)).sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn coefficient_mass(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).sum()
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder (or the divisor is zero).
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let (dmin, dmax) = (divisor.min_exp()?, divisor.max_exp()?);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlead = divisor.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; the quotient's exponents are bounded
        // below by min(self) - dmin, which terminates the loop.
        let floor = self.min_exp()? - dmin;
        while let Some(rmax) = rem.max_exp() {
            let shift = rmax - dmax;
            if shift < floor {
                return None;
            }
            let rlead = rem.coeff(rmax);
            if rlead % dlead != 0 {
                return None;
            }
            let q = rlead / dlead;
            quot.add_term(shift, q);
            for (e, c) in divisor.terms() {
                rem.add_term(e + shift, -q * c);
            }
            if rem.min_exp().is_some_and(|m| m < dmin + floor) {
                return None;
            }
        }
        Some(quot)
    }

    /// True when `p = u t^k p(t^-1)` for some unit `u` and integer `k`.
    pub fn is_palindromic_up_to_units(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return false;
        };
        let refl = self.reflect().shift(lo + hi);
        refl == *self || refl == -self.clone()
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: Self) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: Self) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: Self) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(mut self) -> LaurentPolynomial {
        for c in self.coeffs.values_mut() {
            *c = -*c;
        }
        self
    }
}

/// Human form, highest power first: `-t + 3 - t^-1`.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let mag = c.unsigned_abs();
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if e == 0 || mag != 1 {
                write!(f, "{mag}")?;
            }
            f.write_str(&var)?;
        }
        Ok(())
    }
}
