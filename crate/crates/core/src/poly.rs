//! Univariate polynomials and rational functions in `x` over GF(3^k).

use std::fmt;

use thiserror::Error;

use crate::field::{monomial_string, FieldElement, FieldParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("operands belong to different fields")]
    MixedFields,
}

/// Polynomial with coefficients lowest degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldParams,
    coeffs: Vec<u32>,
}

impl Polynomial {
    pub(crate) fn from_raw(field: &FieldParams, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn new(field: &FieldParams, coeffs: &[FieldElement]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|c| c.raw()).collect())
    }

    /// Coefficients given as integers mod 3, lowest degree first.
    pub fn from_ints(field: &FieldParams, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.from_int(c).raw()).collect())
    }

    pub fn zero(field: &FieldParams) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &FieldParams) -> Self {
        Self::from_raw(field, vec![1])
    }

    pub fn constant(c: &FieldElement) -> Self {
        Self::from_raw(c.field(), vec![c.raw()])
    }

    /// `c * x^n`.
    pub fn monomial(c: &FieldElement, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c.raw();
        Self::from_raw(c.field(), coeffs)
    }

    /// The variable `x`.
    pub fn x(field: &FieldParams) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub(crate) fn raw_coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeffs(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|&r| self.field.wrap(r)).collect()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.wrap(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn leading(&self) -> FieldElement {
        self.field.wrap(self.coeffs.last().copied().unwrap_or(0))
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                f.add_raw(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    other.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Ok(Self::from_raw(f, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.field));
        }
        let f = &self.field;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add_raw(out[i + j], f.mul_raw(a, b));
            }
        }
        Ok(Self::from_raw(f, out))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul_raw(a, c.raw())).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0u32; n];
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_raw(&self.field, coeffs)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), PolyError> {
        self.check(divisor)?;
        let f = &self.field;
        let Some(dd) = divisor.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let lead_inv = f.inv_raw(divisor.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = f.mul_raw(rem[i + dd], lead_inv);
            quot[i] = c;
            if c != 0 {
                for (j, &d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = f.sub_raw(rem[i + j], f.mul_raw(c, d));
                }
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(f, quot), Self::from_raw(f, rem)))
    }

    /// Scaled to leading coefficient 1; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Ok(inv) => self.scale(&inv),
            Err(_) => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| match i % 3 {
                0 => 0,
                1 => c,
                _ => f.neg_raw(c),
            })
            .collect();
        Self::from_raw(f, coeffs)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let f = &self.field;
        let mut acc = 0u32;
        for &c in self.coeffs.iter().rev() {
            acc = f.add_raw(f.mul_raw(acc, x.raw()), c);
        }
        f.wrap(acc)
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeffs = field.raw_coeffs(c);
            let term = if field.raw_weight(c) == 1 && coeffs[0] != 0 {
                // plain integer coefficient
                monomial_string(coeffs[0], i, "x")
            } else if i == 0 {
                field.fmt_raw(c)
            } else {
                let var = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                if field.raw_weight(c) == 1 {
                    format!("{}*{var}", field.fmt_raw(c))
                } else {
                    format!("({})*{var}", field.fmt_raw(c))
                }
            };
            terms.push(term);
        }
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Monic gcd. `gcd(a, 0) = monic(a)`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    Ok(poly_extended_euclid(a, b)?.0)
}

/// `(g, s, t)` with `g` monic and `g = s*a + t*b`.
pub fn poly_extended_euclid(
    a: &Polynomial,
    b: &Polynomial,
) -> Result<(Polynomial, Polynomial, Polynomial), PolyError> {
    a.check(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    let f = a.field();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(f), Polynomial::zero(f));
    let (mut t0, mut t1) = (Polynomial::zero(f), Polynomial::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1)?;
        let s = s0.try_sub(&q.try_mul(&s1)?)?;
        let t = t0.try_sub(&q.try_mul(&t1)?)?;
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.leading().inv().expect("r0 is nonzero");
    Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
}

/// `num/den` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        num.check(&den)?;
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        let g = poly_gcd(&num, &den)?;
        let (num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead_inv = den.leading().inv().expect("nonzero denominator");
        Ok(Self {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.field());
        Self { num: p, den }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn field(&self) -> &FieldParams {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        let num = self
            .num
            .try_mul(&other.den)?
            .try_add(&other.num.try_mul(&self.den)?)?;
        Self::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        Self::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Self::new(self.num.try_mul(&other.den)?, self.den.try_mul(&other.num)?)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::from_poly(Polynomial::zero(self.field()));
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `self^e` for `e >= 0`.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::from_poly(Polynomial::one(self.field()));
        for _ in 0..e {
            acc = acc.try_mul(self).expect("same field");
        }
        acc
    }

    /// Formal derivative `(n'd - nd')/d^2`, reduced.
    pub fn derivative(&self) -> Self {
        let num = self
            .num
            .derivative()
            .try_mul(&self.den)
            .and_then(|a| a.try_sub(&self.num.try_mul(&self.den.derivative())?))
            .expect("same field");
        Self::new(num, self.den.try_mul(&self.den).expect("same field")).expect("nonzero")
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else if self.num.term_count() <= 1 && self.num.raw_coeffs().iter().all(|&c| {
            c == 0 || self.num.field.raw_weight(c) == 1
        }) {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
