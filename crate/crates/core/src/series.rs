//! Truncated Laurent series over GF(3^k).
//!
//! A series is known modulo `X^prec` (absolute precision) or exactly, when it
//! is a Laurent polynomial. Every operation derives the precision of its
//! result from the precisions and valuations of its inputs; coefficients at
//! or beyond that precision are never stored or reported.

use std::fmt;

use thiserror::Error;

use crate::exec::Exec;
use crate::field::{FieldElement, FieldParams};
use crate::poly::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by a series that is zero to its precision")]
    ZeroDivisor,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inverting an exact non-monomial series needs a target precision")]
    UnboundedPrecision,
}

/// Work threshold (coefficient products) above which `mul` fans out.
const PAR_MUL_THRESHOLD: usize = 1 << 16;

#[derive(Clone)]
pub struct LaurentSeries {
    field: FieldParams,
    // exponent of coeffs[0]; for the zero series equal to prec (or 0 if exact)
    val: i64,
    coeffs: Vec<u32>,
    // None means exact
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentSeries {
    pub(crate) fn from_raw(
        field: &FieldParams,
        mut val: i64,
        mut coeffs: Vec<u32>,
        prec: Option<i64>,
    ) -> Self {
        let lead = coeffs.iter().position(|&c| c != 0).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        val += lead as i64;
        match prec {
            Some(p) => {
                if coeffs.is_empty() || val >= p {
                    coeffs.clear();
                    val = p;
                } else {
                    coeffs.resize((p - val) as usize, 0);
                }
            }
            None => {
                while coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                if coeffs.is_empty() {
                    val = 0;
                }
            }
        }
        Self {
            field: field.clone(),
            val,
            coeffs,
            prec,
        }
    }

    /// `Σ coeffs[i] X^(val+i)` known modulo `X^prec`.
    pub fn new(field: &FieldParams, val: i64, coeffs: &[FieldElement], prec: i64) -> Self {
        Self::from_raw(field, val, coeffs.iter().map(|c| c.raw()).collect(), Some(prec))
    }

    /// The Laurent polynomial `Σ coeffs[i] X^(val+i)`, known exactly.
    pub fn exact(field: &FieldParams, val: i64, coeffs: &[FieldElement]) -> Self {
        Self::from_raw(field, val, coeffs.iter().map(|c| c.raw()).collect(), None)
    }

    /// Exact series from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(field: &FieldParams, terms: &[(i64, FieldElement)]) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::exact_zero(field);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![0u32; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = field.add_raw(*slot, c.raw());
        }
        Self::from_raw(field, lo, coeffs, None)
    }

    /// Zero known modulo `X^prec`.
    pub fn zero(field: &FieldParams, prec: i64) -> Self {
        Self::from_raw(field, prec, Vec::new(), Some(prec))
    }

    pub fn exact_zero(field: &FieldParams) -> Self {
        Self::from_raw(field, 0, Vec::new(), None)
    }

    pub fn one(field: &FieldParams) -> Self {
        Self::from_raw(field, 0, vec![1], None)
    }

    /// `c * X^n`, exact.
    pub fn monomial(c: &FieldElement, n: i64) -> Self {
        Self::from_raw(c.field(), n, vec![c.raw()], None)
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        Self::from_raw(p.field(), 0, p.raw_coeffs().to_vec(), None)
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Exactly zero, as opposed to zero modulo some power of `X`.
    pub fn is_exact_zero(&self) -> bool {
        self.is_zero() && self.is_exact()
    }

    /// Absolute precision; `None` for exact series.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    /// Exponent of the leading nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Lower bound on the valuation that also covers the zero series.
    fn val_floor(&self) -> i64 {
        if self.is_zero() {
            self.prec.unwrap_or(i64::MAX / 4)
        } else {
            self.val
        }
    }

    /// True when every known or implied coefficient below `n` vanishes.
    pub fn valuation_at_least(&self, n: i64) -> bool {
        self.val_floor() >= n
    }

    /// One past the last stored exponent (equals `prec` for inexact series).
    fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }

    pub(crate) fn coeff_raw(&self, n: i64) -> Option<u32> {
        if let Some(p) = self.prec {
            if n >= p {
                return None;
            }
        }
        if self.is_zero() || n < self.val || n >= self.end() {
            return Some(0);
        }
        Some(self.coeffs[(n - self.val) as usize])
    }

    /// Coefficient of `X^n`, or `None` when `n` is beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<FieldElement> {
        self.coeff_raw(n).map(|r| self.field.wrap(r))
    }

    /// Coefficient of `X^n` with unknown coefficients reported as zero.
    pub fn coeff_or_zero(&self, n: i64) -> FieldElement {
        self.field.wrap(self.coeff_raw(n).unwrap_or(0))
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> Vec<(i64, FieldElement)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.val + i as i64, self.field.wrap(c)))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(SeriesError::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let prec = min_prec(self.prec, other.prec);
        let parts: Vec<&Self> = [self, other].into_iter().filter(|s| !s.is_zero()).collect();
        let Some(lo) = parts.iter().map(|s| s.val).min() else {
            return Ok(Self::from_raw(&self.field, 0, Vec::new(), prec));
        };
        let hi = match prec {
            Some(p) => p,
            None => parts.iter().map(|s| s.end()).max().unwrap_or(lo),
        };
        if hi <= lo {
            return Ok(Self::from_raw(&self.field, lo, Vec::new(), prec));
        }
        let mut coeffs = vec![0u32; (hi - lo) as usize];
        for s in parts {
            let start = (s.val - lo) as usize;
            for (i, &c) in s.coeffs.iter().enumerate() {
                if start + i >= coeffs.len() {
                    break;
                }
                coeffs[start + i] = self.field.add_raw(coeffs[start + i], c);
            }
        }
        Ok(Self::from_raw(&self.field, lo, coeffs, prec))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul_with(other, Exec::default())
    }

    /// Product with an explicit execution policy. Parallel execution splits
    /// the output coefficients across threads; the result is identical.
    pub fn try_mul_with(&self, other: &Self, exec: Exec) -> Result<Self, SeriesError> {
        self.check(other)?;
        let f = &self.field;
        // prec(ab) = min(prec a + val b, prec b + val a)
        let prec = min_prec(
            self.prec.map(|p| p + other.val_floor()),
            other.prec.map(|p| p + self.val_floor()),
        );
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::exact_zero(f));
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::from_raw(f, 0, Vec::new(), prec));
        }
        let val = self.val + other.val;
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let len = match prec {
            Some(p) => ((p - val).max(0) as usize).min(full),
            None => full,
        };
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeff = |i: usize| -> u32 {
            let j0 = i.saturating_sub(b.len() - 1);
            let j1 = i.min(a.len() - 1);
            let mut acc = 0u32;
            for j in j0..=j1 {
                let (x, y) = (a[j], b[i - j]);
                if x != 0 && y != 0 {
                    acc = f.add_raw(acc, f.mul_raw(x, y));
                }
            }
            acc
        };
        let work = len.saturating_mul(a.len().min(b.len()));
        let exec = if work >= PAR_MUL_THRESHOLD { exec } else { Exec::Sequential };
        let coeffs = exec.map_range(0..len, coeff);
        Ok(Self::from_raw(f, val, coeffs, prec))
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self {
            field: f.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|&c| f.neg_raw(c)).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = &self.field;
        Self::from_raw(
            f,
            self.val,
            self.coeffs.iter().map(|&a| f.mul_raw(a, c.raw())).collect(),
            self.prec,
        )
    }

    /// Multiply by `X^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self {
            field: self.field.clone(),
            val: self.val + n,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + n),
        }
    }

    /// Forget everything from `X^prec` on.
    pub fn truncate(&self, prec: i64) -> Self {
        let p = min_prec(self.prec, Some(prec));
        Self::from_raw(&self.field, self.val, self.coeffs.clone(), p)
    }

    /// Multiplicative inverse at the natural precision `prec - 2*val`.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        match self.prec {
            Some(p) => Ok(self.inv_unit_part(p - self.val)),
            None if self.coeffs.len() == 1 => {
                let f = &self.field;
                let c = f.inv_raw(self.coeffs[0]).expect("nonzero");
                Ok(Self::from_raw(f, -self.val, vec![c], None))
            }
            None => Err(SeriesError::UnboundedPrecision),
        }
    }

    /// Inverse known at least to `X^prec` (or its natural precision, if lower).
    pub fn inv_to(&self, prec: i64) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(self.inv()?.truncate(prec));
        }
        // relative precision needed: prec - (-val)
        let rel = prec + self.val;
        let rel = match self.prec {
            Some(p) => rel.min(p - self.val),
            None => rel,
        };
        Ok(self.inv_unit_part(rel))
    }

    /// Inverse using `rel` leading coefficients of `self`.
    fn inv_unit_part(&self, rel: i64) -> Self {
        let f = &self.field;
        let n = rel.max(0) as usize;
        let u = &self.coeffs;
        let u0_inv = f.inv_raw(u[0]).expect("leading coefficient is nonzero");
        let neg_u0_inv = f.neg_raw(u0_inv);
        let mut out = vec![0u32; n];
        if n > 0 {
            out[0] = u0_inv;
        }
        for k in 1..n {
            let mut acc = 0u32;
            for i in 1..=k.min(u.len() - 1) {
                let (x, y) = (u[i], out[k - i]);
                if x != 0 && y != 0 {
                    acc = f.add_raw(acc, f.mul_raw(x, y));
                }
            }
            out[k] = f.mul_raw(acc, neg_u0_inv);
        }
        Self::from_raw(f, -self.val, out, Some(rel - self.val))
    }

    /// `self / divisor` at the natural precision.
    pub fn try_div(&self, divisor: &Self) -> Result<Self, SeriesError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        if divisor.is_exact() && divisor.coeffs.len() > 1 {
            let Some(pa) = self.prec else {
                return Err(SeriesError::UnboundedPrecision);
            };
            let target = pa - divisor.val;
            return self.try_div_to(divisor, target);
        }
        self.try_mul(&divisor.inv()?)
    }

    /// `self / divisor`, known at least to `X^prec` when the inputs allow it.
    pub fn try_div_to(&self, divisor: &Self, prec: i64) -> Result<Self, SeriesError> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(SeriesError::ZeroDivisor);
        }
        if self.is_zero() {
            let p = min_prec(self.prec.map(|p| p - divisor.val), Some(prec));
            return Ok(Self::from_raw(&self.field, 0, Vec::new(), p));
        }
        let inv = divisor.inv_to(prec - self.val)?;
        Ok(self.try_mul(&inv)?.truncate(prec))
    }

    /// `Σ frob(a_n) X^(3n)`. In characteristic 3 cubing is additive, so an
    /// input known modulo `X^p` gives a cube known modulo `X^(3p)`.
    pub fn cube(&self) -> Self {
        let f = &self.field;
        let prec = self.prec.map(|p| 3 * p);
        if self.is_zero() {
            return Self::from_raw(f, 0, Vec::new(), prec);
        }
        let mut coeffs = vec![0u32; 3 * self.coeffs.len() - 2];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[3 * i] = f.cube_raw(c);
        }
        Self::from_raw(f, 3 * self.val, coeffs, prec)
    }

    /// Formal derivative; precision drops by one.
    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let prec = self.prec.map(|p| p - 1);
        if self.is_zero() {
            return Self::from_raw(f, 0, Vec::new(), prec);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| match (self.val + i as i64).rem_euclid(3) {
                0 => 0,
                1 => c,
                _ => f.neg_raw(c),
            })
            .collect();
        Self::from_raw(f, self.val - 1, coeffs, prec)
    }

    /// Same known coefficients on the common precision range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }

    /// Coefficients with exponent `≡ residue (mod 3)`; precision unchanged.
    fn residue_part(&self, residue: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if (self.val + i as i64).rem_euclid(3) == residue {
                    c
                } else {
                    0
                }
            })
            .collect();
        Self::from_raw(&self.field, self.val, coeffs, self.prec)
    }

    /// Split into homogeneous parts by exponent residue mod 3.
    pub fn split(&self) -> TriSplit {
        TriSplit {
            alpha: self.residue_part(1),
            beta: self.residue_part(2),
            gamma: self.residue_part(0),
        }
    }

    /// The same splitting computed through derivatives:
    /// `α = XS' - X²S''`, `β = -X²S''`, `γ = S - XS' - X²S''`.
    pub fn split_by_formula(&self) -> TriSplit {
        let d1 = self.derivative();
        let x_d1 = d1.shift(1);
        let x2_d2 = d1.derivative().shift(2);
        let alpha = x_d1.try_sub(&x2_d2).expect("same field");
        let beta = x2_d2.neg();
        let gamma = self
            .try_sub(&x_d1)
            .and_then(|s| s.try_sub(&x2_d2))
            .expect("same field");
        TriSplit { alpha, beta, gamma }
    }

    /// Which of V0 (`S' = 0`), V1 (`XS' = S`), V-1 (`XS' = -S`) contains the
    /// series, checked to its precision. The zero series reports `V0`.
    pub fn homogeneity_class(&self) -> Homogeneity {
        let xd = self.derivative().shift(1);
        if self.derivative().is_zero() {
            Homogeneity::V0
        } else if xd.agrees_with(self) {
            Homogeneity::V1
        } else if xd.agrees_with(&self.neg()) {
            Homogeneity::Vm1
        } else {
            Homogeneity::Mixed
        }
    }

    /// Membership test in a homogeneous subspace (zero lies in all of them).
    pub fn lies_in(&self, class: Homogeneity) -> bool {
        self.is_zero() || self.homogeneity_class() == class
    }
}

/// Laurent expansion of `num/den` at `X = 0`, known modulo `X^prec`.
pub fn expand_rational(
    num: &Polynomial,
    den: &Polynomial,
    prec: i64,
) -> Result<LaurentSeries, SeriesError> {
    if num.field() != den.field() {
        return Err(SeriesError::MixedFields);
    }
    if den.is_zero() {
        return Err(SeriesError::ZeroDenominator);
    }
    let n = LaurentSeries::from_poly(num);
    let d = LaurentSeries::from_poly(den);
    if num.is_zero() {
        return Ok(LaurentSeries::zero(num.field(), prec));
    }
    let q = n.try_div_to(&d, prec)?;
    Ok(q.truncate(prec))
}

/// Subspaces of `K((X))` cut out by exponent residue mod 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    V0,
    V1,
    Vm1,
    Mixed,
}

/// `S = alpha + beta + gamma` with exponents `≡ 1, 2, 0 (mod 3)`.
#[derive(Debug, Clone)]
pub struct TriSplit {
    pub alpha: LaurentSeries,
    pub beta: LaurentSeries,
    pub gamma: LaurentSeries,
}

impl TriSplit {
    pub fn recombine(&self) -> LaurentSeries {
        self.alpha
            .try_add(&self.beta)
            .and_then(|s| s.try_add(&self.gamma))
            .expect("parts share a field")
    }

    /// Part-by-part agreement to the common precision.
    pub fn agrees_with(&self, other: &TriSplit) -> bool {
        self.alpha.agrees_with(&other.alpha)
            && self.beta.agrees_with(&other.beta)
            && self.gamma.agrees_with(&other.gamma)
    }
}

impl PartialEq for LaurentSeries {
    /// Structural equality: same field, precision and coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.prec == other.prec
            && self.coeffs == other.coeffs
            && (self.is_zero() || self.val == other.val)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .iter()
            .map(|(e, c)| {
                let coeff = if c.field().raw_weight(c.raw()) > 1 {
                    format!("({c})")
                } else {
                    c.to_string()
                };
                match e {
                    0 => coeff,
                    1 => format!("{coeff}*X"),
                    e => format!("{coeff}*X^{e}"),
                }
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        match self.prec {
            Some(p) => write!(f, "{body} + O(X^{p})"),
            None => f.write_str(&body),
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

macro_rules! series_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl std::ops::$trait<&LaurentSeries> for &LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl std::ops::$trait<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

series_binop!(Add, add, try_add);
series_binop!(Sub, sub, try_sub);
series_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldParams {
        FieldParams::prime()
    }

    fn ints(f: &FieldParams, val: i64, cs: &[i64], prec: Option<i64>) -> LaurentSeries {
        let cs: Vec<_> = cs.iter().map(|&c| f.from_int(c)).collect();
        match prec {
            Some(p) => LaurentSeries::new(f, val, &cs, p),
            None => LaurentSeries::exact(f, val, &cs),
        }
    }

    #[test]
    fn product_with_truncation() {
        let f = f3();
        let a = ints(&f, 0, &[1, 1], Some(10));
        let b = ints(&f, 0, &[1, -1], Some(10));
        let p = &a * &b;
        assert_eq!(p, ints(&f, 0, &[1, 0, 2], Some(10)));
    }

    #[test]
    fn shift_and_precision_bookkeeping() {
        let f = f3();
        let s = ints(&f, 0, &[1, 1], None).shift(-1);
        assert_eq!(s, ints(&f, -1, &[1, 1], None));
        let a = ints(&f, -1, &[1], Some(5));
        let b = ints(&f, 1, &[1], Some(7));
        let p = &a * &b;
        assert_eq!(p.prec(), Some(6)); // min(5 + 1, 7 - 1)
        assert_eq!(p.coeff(0), Some(f.one()));
        assert_eq!(p.coeff(6), None);
    }

    #[test]
    fn inverse_examples() {
        let f = f3();
        let geo = ints(&f, 0, &[1, -1], Some(12)).inv().unwrap();
        assert_eq!(geo, ints(&f, 0, &[1; 12], Some(12)));

        // 1/(X^3 + 2) = 2 + 2X^3 + 2X^6 + ... : geometric in -X^3/2 = X^3
        let d = ints(&f, 0, &[2, 0, 0, 1], None);
        let inv = d.inv_to(12).unwrap();
        assert_eq!(inv.prec(), Some(12));
        assert!((&inv * &d).agrees_with(&LaurentSeries::one(&f)));
        for e in [0, 3, 6, 9] {
            assert_eq!(inv.coeff(e), Some(f.from_int(2)));
        }

        let q = ints(&f, 2, &[1], None)
            .try_div(&ints(&f, 3, &[1], None))
            .unwrap();
        assert_eq!(q, ints(&f, -1, &[1], None));
        assert_eq!(
            ints(&f, 0, &[1], None).try_div(&LaurentSeries::zero(&f, 5)),
            Err(SeriesError::ZeroDivisor)
        );
        assert_eq!(d.inv(), Err(SeriesError::UnboundedPrecision));
    }

    #[test]
    fn cube_examples() {
        let f = f3();
        assert_eq!(
            ints(&f, 0, &[1, 1], None).cube(),
            ints(&f, 0, &[1, 0, 0, 1], None)
        );
        assert_eq!(ints(&f, -1, &[1], None).cube(), ints(&f, -3, &[1], None));
        // X^-1 + O(1): cube is X^-3 + O(1)
        let c = ints(&f, -1, &[1], Some(0)).cube();
        assert_eq!(c.prec(), Some(0));
    }

    #[test]
    fn derivative_examples() {
        let f = f3();
        assert!(ints(&f, 3, &[1], None).derivative().is_exact_zero());
        assert_eq!(
            ints(&f, -1, &[1], None).derivative(),
            ints(&f, -2, &[2], None)
        );
        assert_eq!(
            ints(&f, 1, &[1, 1, 1], None).derivative(),
            ints(&f, 0, &[1, 2], None)
        );
        assert_eq!(ints(&f, 0, &[1, 1], Some(6)).derivative().prec(), Some(5));
    }

    #[test]
    fn split_examples() {
        let f = f3();
        let s = ints(&f, -1, &[2, 1, 1, 1], None);
        let parts = s.split();
        assert_eq!(parts.alpha, ints(&f, 1, &[1], None));
        assert_eq!(parts.beta, ints(&f, -1, &[2, 0, 0, 1], None));
        assert_eq!(parts.gamma, ints(&f, 0, &[1], None));
        assert!(parts.agrees_with(&s.split_by_formula()));

        let z = LaurentSeries::exact_zero(&f).split();
        assert!(z.alpha.is_zero() && z.beta.is_zero() && z.gamma.is_zero());

        let x2 = ints(&f, 2, &[1], None).split_by_formula();
        assert!(x2.alpha.is_zero() && x2.gamma.is_zero());
        assert_eq!(x2.beta, ints(&f, 2, &[1], None));

        let x45 = ints(&f, 4, &[1, 1], None).split_by_formula();
        assert_eq!(x45.alpha, ints(&f, 4, &[1], None));
        assert_eq!(x45.beta, ints(&f, 5, &[1], None));
        assert!(x45.gamma.is_zero());
    }

    #[test]
    fn homogeneity_examples() {
        let f = f3();
        assert_eq!(ints(&f, 7, &[1], None).homogeneity_class(), Homogeneity::V1);
        assert_eq!(ints(&f, -1, &[1], None).homogeneity_class(), Homogeneity::Vm1);
        assert_eq!(ints(&f, 0, &[1, 1], None).homogeneity_class(), Homogeneity::Mixed);
        assert_eq!(ints(&f, 0, &[1, 0, 0, 2], Some(20)).homogeneity_class(), Homogeneity::V0);
    }

    #[test]
    fn expand_rational_examples() {
        let f = f3();
        let one = Polynomial::one(&f);
        let s = expand_rational(&one, &Polynomial::from_ints(&f, &[1, -1]), 8).unwrap();
        assert_eq!(s, ints(&f, 0, &[1; 8], Some(8)));

        let num = Polynomial::from_ints(&f, &[0, 0, 1]);
        let den = Polynomial::from_ints(&f, &[-1, 0, 0, 1, 0, 0, 0, 0, 0, 1]);
        let s = expand_rational(&num, &den, 14).unwrap();
        // long division: x^2 / (-1 + x^3 + x^9) = -x^2 (1 + x^3 + x^6 + 2 x^9 ...)
        for (e, c) in [(2, 2), (5, 2), (8, 2), (11, 1)] {
            assert_eq!(s.coeff(e), Some(f.from_int(c)), "exponent {e}");
        }
        let back = &s * &LaurentSeries::from_poly(&den);
        assert!(back.agrees_with(&LaurentSeries::from_poly(&num)));

        let x = Polynomial::x(&f);
        assert_eq!(
            expand_rational(&x, &x, 10).unwrap(),
            ints(&f, 0, &[1], Some(10))
        );
        assert_eq!(
            expand_rational(&x, &Polynomial::zero(&f), 10),
            Err(SeriesError::ZeroDenominator)
        );
    }

    #[test]
    fn zero_representations_distinguished() {
        let f = f3();
        let z = LaurentSeries::zero(&f, 5);
        assert!(z.is_zero() && !z.is_exact_zero());
        assert!(LaurentSeries::exact_zero(&f).is_exact_zero());
        assert_ne!(z, LaurentSeries::exact_zero(&f));
    }

    #[test]
    fn parallel_product_matches_sequential() {
        let f = FieldParams::with_default_modulus(2).unwrap();
        let a: Vec<_> = (0..600).map(|i| f.element_from_index(i * 7 % 9)).collect();
        let b: Vec<_> = (0..600).map(|i| f.element_from_index(i * 5 % 9)).collect();
        let sa = LaurentSeries::new(&f, -1, &a, 599);
        let sb = LaurentSeries::new(&f, 0, &b, 600);
        let p = sa.try_mul_with(&sb, Exec::Parallel).unwrap();
        let s = sa.try_mul_with(&sb, Exec::Sequential).unwrap();
        assert_eq!(p, s);
    }
}
