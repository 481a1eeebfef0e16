//! Exact arithmetic in GF(3^k), polynomial basis.
//!
//! An element is stored as two bit planes packed in a `u32`: bit `i` of the
//! low plane is set when the coefficient of `t^i` is 1, bit `i` of the high
//! plane (shifted by `k`) when it is 2. Addition is then a handful of bitwise
//! operations, and for `k <= 8` multiplication goes through log/exp tables
//! indexed directly by the packed value.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

/// Largest supported extension degree (both bit planes must fit in a `u32`).
pub const MAX_DEGREE: usize = 16;
const TABLE_MAX_DEGREE: usize = 8;

/// Built-in moduli for `k = 1..=8`, coefficients lowest degree first.
const DEFAULT_MODULI: [&[u8]; 8] = [
    &[0, 1],
    &[1, 0, 1],
    &[1, 2, 0, 1],
    &[2, 1, 0, 0, 1],
    &[1, 2, 0, 0, 0, 1],
    &[2, 1, 0, 0, 0, 0, 1],
    &[2, 0, 1, 0, 0, 0, 0, 1],
    &[2, 0, 1, 0, 0, 0, 0, 0, 1],
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("the additive cubic t^3 + A*t = b requires A != 0")]
    ZeroA,
    #[error("unsupported extension degree {0} (supported: 1..={MAX_DEGREE})")]
    UnsupportedDegree(usize),
    #[error("no built-in modulus for degree {0}; pass one explicitly")]
    NoDefaultModulus(usize),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus is reducible over F3")]
    ReducibleModulus,
}

struct LogTables {
    log: Vec<u32>,
    // doubled so that log[a] + log[b] never needs a reduction
    exp: Vec<u32>,
}

struct FieldInner {
    degree: usize,
    modulus: Vec<u8>,
    mask: u32,
    // t^k expressed in the basis, as bit planes
    red_ones: u32,
    red_twos: u32,
    order: u64,
    tables: Option<LogTables>,
}

/// A finite field GF(3^k) given by a monic irreducible modulus over F3.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct FieldParams {
    inner: Arc<FieldInner>,
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(3^{}) mod {}", self.degree(), self.modulus_string())
    }
}

impl PartialEq for FieldParams {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.degree == other.inner.degree
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldParams {}

impl FieldParams {
    /// Builds the field from `modulus` (coefficients lowest degree first,
    /// values reduced mod 3). The polynomial must be monic and irreducible.
    pub fn new(modulus: &[u8]) -> Result<Self, FieldError> {
        let mut modulus: Vec<u8> = modulus.iter().map(|c| c % 3).collect();
        while modulus.last() == Some(&0) {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(FieldError::InvalidModulus(
                "modulus must have degree at least 1".into(),
            ));
        }
        let degree = modulus.len() - 1;
        if degree > MAX_DEGREE {
            return Err(FieldError::UnsupportedDegree(degree));
        }
        if modulus[degree] != 1 {
            return Err(FieldError::InvalidModulus("modulus must be monic".into()));
        }
        if !f3poly::is_irreducible(&modulus) {
            return Err(FieldError::ReducibleModulus);
        }

        let mut red_ones = 0u32;
        let mut red_twos = 0u32;
        for (i, &m) in modulus[..degree].iter().enumerate() {
            // t^k = -(m_0 + m_1 t + ...)
            match (3 - m) % 3 {
                1 => red_ones |= 1 << i,
                2 => red_twos |= 1 << i,
                _ => {}
            }
        }
        let mut inner = FieldInner {
            degree,
            modulus,
            mask: (1u32 << degree) - 1,
            red_ones,
            red_twos,
            order: 3u64.pow(degree as u32),
            tables: None,
        };
        if degree <= TABLE_MAX_DEGREE {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Self {
            inner: Arc::new(inner),
        })
    }

    /// GF(3^k) with the built-in modulus (`t^2+1` for `k = 2`).
    pub fn with_default_modulus(degree: usize) -> Result<Self, FieldError> {
        match degree {
            1..=8 => Self::new(DEFAULT_MODULI[degree - 1]),
            0 => Err(FieldError::UnsupportedDegree(0)),
            d => Err(FieldError::NoDefaultModulus(d)),
        }
    }

    pub fn default_modulus(degree: usize) -> Option<&'static [u8]> {
        (1..=8).contains(&degree).then(|| DEFAULT_MODULI[degree - 1])
    }

    /// The prime field F3.
    pub fn prime() -> Self {
        Self::with_default_modulus(1).expect("F3 is always constructible")
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    /// Modulus coefficients, lowest degree first, including the leading 1.
    pub fn modulus(&self) -> &[u8] {
        &self.inner.modulus
    }

    /// Modulus written as an expression in `t`, highest degree first.
    pub fn modulus_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.inner.modulus.iter().enumerate().rev() {
            if c != 0 {
                terms.push(monomial_string(c, i, "t"));
            }
        }
        terms.join("+")
    }

    /// Number of elements, `3^k`.
    pub fn order(&self) -> u64 {
        self.inner.order
    }

    pub fn zero(&self) -> FieldElement {
        self.wrap(0)
    }

    pub fn one(&self) -> FieldElement {
        self.wrap(1)
    }

    /// The class of `t` modulo the modulus.
    pub fn generator(&self) -> FieldElement {
        let raw = if self.inner.degree == 1 {
            self.join(self.inner.red_ones, self.inner.red_twos)
        } else {
            0b10
        };
        self.wrap(raw)
    }

    /// Image of an integer under `Z -> F3 -> GF(3^k)`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.wrap(digit_raw(n.rem_euclid(3) as u8, 0, self.inner.degree))
    }

    /// Element with the given polynomial-basis coordinates (lowest degree
    /// first). Longer inputs are reduced modulo the modulus.
    pub fn from_coeffs(&self, coeffs: &[u8]) -> FieldElement {
        let mut acc = 0u32;
        for &c in coeffs.iter().rev() {
            acc = self.mul_by_t(acc);
            acc = self.add_raw(acc, digit_raw(c % 3, 0, self.inner.degree));
        }
        self.wrap(acc)
    }

    /// Element number `index` in lexicographic order of coordinate
    /// sequences (coefficient of `t^0` most significant).
    pub fn element_from_index(&self, index: u64) -> FieldElement {
        let k = self.inner.degree;
        let mut coeffs = vec![0u8; k];
        let mut n = index % self.inner.order;
        for i in (0..k).rev() {
            coeffs[i] = (n % 3) as u8;
            n /= 3;
        }
        self.from_coeffs(&coeffs)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.inner.order).map(move |i| self.element_from_index(i))
    }

    pub(crate) fn wrap(&self, raw: u32) -> FieldElement {
        FieldElement {
            field: self.clone(),
            raw,
        }
    }

    // ---- raw arithmetic on packed values ------------------------------------

    #[inline]
    fn planes(&self, r: u32) -> (u32, u32) {
        (r & self.inner.mask, r >> self.inner.degree)
    }

    #[inline]
    fn join(&self, ones: u32, twos: u32) -> u32 {
        ones | (twos << self.inner.degree)
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        let (a1, a2) = self.planes(a);
        let (b1, b2) = self.planes(b);
        let t = (a1 | b2) ^ (a2 | b1);
        self.join((a2 | b2) ^ t, (a1 | b1) ^ t)
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        let (a1, a2) = self.planes(a);
        self.join(a2, a1)
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    fn mul_by_t(&self, a: u32) -> u32 {
        let k = self.inner.degree;
        let (a1, a2) = self.planes(a);
        let (mut o, mut w) = (a1 << 1, a2 << 1);
        let top = 1u32 << k;
        let carry_one = o & top != 0;
        let carry_two = w & top != 0;
        o &= self.inner.mask;
        w &= self.inner.mask;
        let mut r = self.join(o, w);
        let red = self.join(self.inner.red_ones, self.inner.red_twos);
        if carry_one {
            r = self.add_raw(r, red);
        } else if carry_two {
            r = self.sub_raw(r, red);
        }
        r
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (b1, b2) = self.planes(b);
        let neg_a = self.neg_raw(a);
        let mut acc = 0u32;
        for i in (0..self.inner.degree).rev() {
            acc = self.mul_by_t(acc);
            if b1 >> i & 1 == 1 {
                acc = self.add_raw(acc, a);
            } else if b2 >> i & 1 == 1 {
                acc = self.add_raw(acc, neg_a);
            }
        }
        acc
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.inner.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub(crate) fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let q1 = (self.inner.order - 1) as u32;
        Some(match &self.inner.tables {
            Some(t) => t.exp[((q1 - t.log[a as usize]) % q1) as usize],
            None => self.pow_raw(a, self.inner.order - 2),
        })
    }

    #[inline]
    pub(crate) fn cube_raw(&self, a: u32) -> u32 {
        self.mul_raw(self.mul_raw(a, a), a)
    }

    pub(crate) fn raw_coeffs(&self, r: u32) -> Vec<u8> {
        let (o, w) = self.planes(r);
        (0..self.inner.degree)
            .map(|i| {
                if o >> i & 1 == 1 {
                    1
                } else if w >> i & 1 == 1 {
                    2
                } else {
                    0
                }
            })
            .collect()
    }

    pub(crate) fn cmp_raw(&self, a: u32, b: u32) -> Ordering {
        self.raw_coeffs(a).cmp(&self.raw_coeffs(b))
    }

    pub(crate) fn fmt_raw(&self, r: u32) -> String {
        let terms: Vec<String> = self
            .raw_coeffs(r)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| monomial_string(c, i, "t"))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Number of nonzero basis coordinates; used by printers to decide on
    /// parentheses.
    pub(crate) fn raw_weight(&self, r: u32) -> usize {
        let (o, w) = self.planes(r);
        (o | w).count_ones() as usize
    }
}

fn digit_raw(c: u8, pos: usize, degree: usize) -> u32 {
    match c {
        1 => 1 << pos,
        2 => 1 << (pos + degree),
        _ => 0,
    }
}

pub(crate) fn monomial_string(c: u8, exp: usize, var: &str) -> String {
    match (c, exp) {
        (_, 0) => c.to_string(),
        (1, 1) => var.to_string(),
        (1, e) => format!("{var}^{e}"),
        (c, 1) => format!("{c}*{var}"),
        (c, e) => format!("{c}*{var}^{e}"),
    }
}

fn build_tables(inner: &FieldInner) -> LogTables {
    let probe = FieldParams {
        inner: Arc::new(FieldInner {
            degree: inner.degree,
            modulus: inner.modulus.clone(),
            mask: inner.mask,
            red_ones: inner.red_ones,
            red_twos: inner.red_twos,
            order: inner.order,
            tables: None,
        }),
    };
    let q1 = inner.order - 1;
    let factors = prime_factors(q1);
    let generator = (1..inner.order)
        .map(|i| probe.element_from_index(i).raw)
        .find(|&g| factors.iter().all(|&p| probe.pow_raw(g, q1 / p) != 1))
        .expect("the multiplicative group of a finite field is cyclic");

    let mut log = vec![0u32; 1usize << (2 * inner.degree)];
    let mut exp = vec![0u32; 2 * q1 as usize];
    let mut x = 1u32;
    for i in 0..q1 as usize {
        exp[i] = x;
        exp[i + q1 as usize] = x;
        log[x as usize] = i as u32;
        x = probe.mul_slow(x, generator);
    }
    LogTables { log, exp }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over F3 used only for the irreducibility check.
mod f3poly {
    fn rem(f: &[u8], g: &[u8]) -> Vec<u8> {
        let mut r = f.to_vec();
        let dg = g.len() - 1;
        let lead_inv = g[dg]; // 1 and 2 are self-inverse mod 3
        while r.len() > dg {
            let c = (r[r.len() - 1] * lead_inv) % 3;
            let shift = r.len() - 1 - dg;
            if c != 0 {
                for (i, &gi) in g.iter().enumerate() {
                    r[shift + i] = (r[shift + i] + 3 * 3 - c * gi) % 3;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        r
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub(super) fn is_irreducible(f: &[u8]) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = 3usize.pow(d as u32);
            for n in 0..count {
                let mut g = vec![0u8; d + 1];
                let mut m = n;
                for c in g.iter_mut().take(d) {
                    *c = (m % 3) as u8;
                    m /= 3;
                }
                g[d] = 1;
                if rem(f, &g).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// An element of GF(3^k).
#[derive(Clone)]
pub struct FieldElement {
    field: FieldParams,
    raw: u32,
}

impl FieldElement {
    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub(crate) fn raw(&self) -> u32 {
        self.raw
    }

    /// Polynomial-basis coordinates, lowest degree first; length `k`.
    pub fn coeffs(&self) -> Vec<u8> {
        self.field.raw_coeffs(self.raw)
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    pub fn is_one(&self) -> bool {
        self.raw == 1
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.add_raw(self.raw, other.raw)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.sub_raw(self.raw, other.raw)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.field.wrap(self.field.mul_raw(self.raw, other.raw)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let inv = other.inv()?;
        Ok(self.field.wrap(self.field.mul_raw(self.raw, inv.raw)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.field
            .inv_raw(self.raw)
            .map(|r| self.field.wrap(r))
            .ok_or(FieldError::DivisionByZero)
    }

    /// `self^e`; negative exponents require a nonzero base. `0^0 = 1`.
    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(self
            .field
            .wrap(self.field.pow_raw(base.raw, e.unsigned_abs())))
    }

    /// The Frobenius automorphism `a -> a^3`.
    pub fn frobenius(&self) -> Self {
        self.field.wrap(self.field.cube_raw(self.raw))
    }

    /// `a^((q-1)/2) in {0, 1}`.
    pub fn is_square(&self) -> bool {
        self.is_zero() || self.field.pow_raw(self.raw, (self.field.order() - 1) / 2) == 1
    }

    /// A square root, the lexicographically smaller of `±s`, or `None` for a
    /// non-square. Tonelli–Shanks.
    pub fn sqrt(&self) -> Option<Self> {
        let f = &self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        if !self.is_square() {
            return None;
        }
        let q1 = f.order() - 1;
        let s = q1.trailing_zeros();
        let m = q1 >> s;
        let z = f
            .elements()
            .find(|e| !e.is_square())
            .expect("odd-order fields have non-squares")
            .raw;

        let mut big_m = s;
        let mut c = f.pow_raw(z, m);
        let mut t = f.pow_raw(self.raw, m);
        let mut r = f.pow_raw(self.raw, m.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = f.mul_raw(t2, t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(big_m - i - 1) {
                b = f.mul_raw(b, b);
            }
            big_m = i;
            c = f.mul_raw(b, b);
            t = f.mul_raw(t, c);
            r = f.mul_raw(r, b);
        }
        let neg = f.neg_raw(r);
        let root = if f.cmp_raw(neg, r) == Ordering::Less {
            neg
        } else {
            r
        };
        Some(f.wrap(root))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.degree().hash(state);
        self.raw.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the coordinate sequence, coefficient of `t^0` first.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs().cmp(&other.coeffs())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_raw(self.raw))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

// Operators panic on mixed fields and division by zero; the `try_*` methods
// are the fallible versions.
macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.wrap(self.field.neg_raw(self.raw))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// All `t` in the field with `t^3 + a*t = b`, sorted lexicographically.
///
/// `t -> t^3 + a*t` is F3-linear, so this is a `k x k` linear system over F3.
/// The answer is empty or a coset of the kernel.
pub fn solve_additive_cubic(
    a: &FieldElement,
    b: &FieldElement,
) -> Result<Vec<FieldElement>, FieldError> {
    a.check(b)?;
    if a.is_zero() {
        return Err(FieldError::ZeroA);
    }
    let field = a.field();
    let k = field.degree();
    let map = |x: &FieldElement| x.frobenius() + a * x;

    // augmented matrix rows: equations (output coordinates), columns: unknowns
    let mut m = vec![vec![0u8; k + 1]; k];
    for j in 0..k {
        let mut basis = vec![0u8; k];
        basis[j] = 1;
        let image = map(&field.from_coeffs(&basis)).coeffs();
        for i in 0..k {
            m[i][j] = image[i];
        }
    }
    let rhs = b.coeffs();
    for i in 0..k {
        m[i][k] = rhs[i];
    }

    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col]; // self-inverse in F3
        for v in m[row].iter_mut() {
            *v = (*v * inv) % 3;
        }
        let pivot = m[row].clone();
        for (r, line) in m.iter_mut().enumerate() {
            if r != row && line[col] != 0 {
                let factor = line[col];
                for (v, &p) in line.iter_mut().zip(&pivot) {
                    *v = (*v + 3 * 3 - factor * p) % 3;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|r| r[k] != 0) {
        return Ok(Vec::new());
    }

    let mut particular = vec![0u8; k];
    for (r, &col) in pivots.iter().enumerate() {
        particular[col] = m[r][k];
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let kernel: Vec<Vec<u8>> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u8; k];
            v[fc] = 1;
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = (3 - m[r][fc]) % 3;
            }
            v
        })
        .collect();

    let base = field.from_coeffs(&particular);
    let kernel: Vec<FieldElement> = kernel.iter().map(|v| field.from_coeffs(v)).collect();
    let mut out = vec![base];
    for kv in &kernel {
        let mut next = Vec::with_capacity(out.len() * 3);
        for s in &out {
            next.push(s.clone());
            next.push(s + kv);
            next.push(s - kv);
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FieldParams {
        FieldParams::with_default_modulus(2).unwrap()
    }

    // Independent oracle: multiply coordinate vectors as polynomials and
    // reduce by the modulus with plain integer arithmetic.
    fn oracle_mul(a: &[u8], b: &[u8], modulus: &[u8]) -> Vec<u8> {
        let k = modulus.len() - 1;
        let mut prod = vec![0i32; 2 * k];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as i32 * y as i32;
            }
        }
        for d in (k..2 * k).rev() {
            let c = prod[d].rem_euclid(3);
            prod[d] = 0;
            for i in 0..k {
                prod[d - k + i] -= c * modulus[i] as i32;
            }
        }
        prod[..k].iter().map(|c| c.rem_euclid(3) as u8).collect()
    }

    #[test]
    fn basic_values() {
        let f3 = FieldParams::prime();
        assert!((f3.from_int(1) + f3.from_int(2)).is_zero());
        let f = f9();
        let t = f.generator();
        assert_eq!(&t * &t, f.from_int(2));
        assert_eq!(f.from_int(2).inv().unwrap(), f.from_int(2));
        assert_eq!(f.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldParams::prime().one();
        let b = f9().one();
        assert_eq!(a.try_add(&b), Err(FieldError::MixedFields));
        assert_eq!(a.try_mul(&b), Err(FieldError::MixedFields));
    }

    #[test]
    fn exhaustive_tables_small_degree() {
        for k in 1..=2 {
            let f = FieldParams::with_default_modulus(k).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len() as u64, f.order());
            for a in &elems {
                for b in &elems {
                    let ca = a.coeffs();
                    let cb = b.coeffs();
                    let sum: Vec<u8> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
                    assert_eq!((a + b).coeffs(), sum);
                    assert_eq!((a * b).coeffs(), oracle_mul(&ca, &cb, f.modulus()));
                    assert_eq!(&(a - b) + b, a.clone());
                    if !b.is_zero() {
                        assert_eq!(&(a / b) * b, a.clone());
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_slow_paths_agree() {
        for k in [3, 5, 8] {
            let f = FieldParams::with_default_modulus(k).unwrap();
            let n = f.order().min(300);
            for i in 0..n {
                for j in (0..n).step_by(7) {
                    let a = f.element_from_index(i * 13 % f.order()).raw;
                    let b = f.element_from_index(j).raw;
                    assert_eq!(f.mul_raw(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn large_degree_without_tables() {
        // t^11 + t^2 + 2 is irreducible over F3
        let mut m = vec![0u8; 12];
        m[0] = 2;
        m[2] = 1;
        m[11] = 1;
        let f = FieldParams::new(&m).unwrap();
        let a = f.from_coeffs(&[1, 2, 0, 1, 1, 0, 2]);
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(a.pow(f.order() as i64).unwrap(), a);
    }

    #[test]
    fn frobenius_values() {
        let f3 = FieldParams::prime();
        assert_eq!(f3.from_int(2).frobenius(), f3.from_int(2));
        let f = f9();
        let t = f.generator();
        assert_eq!(t.frobenius(), f.from_coeffs(&[0, 2]));
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!((&a + &b).frobenius(), a.frobenius() + b.frobenius());
                assert_eq!((&a * &b).frobenius(), a.frobenius() * b.frobenius());
            }
        }
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for k in 1..=8 {
            let f = FieldParams::with_default_modulus(k).unwrap();
            assert_eq!(f.degree(), k);
        }
        assert_eq!(f9().modulus_string(), "t^2+1");
        assert_eq!(
            FieldParams::new(&[2, 0, 1]).unwrap_err(),
            FieldError::ReducibleModulus
        );
        assert!(matches!(
            FieldParams::new(&[1, 0, 2, 2]),
            Err(FieldError::InvalidModulus(_))
        ));
        assert_eq!(
            FieldParams::with_default_modulus(9).unwrap_err(),
            FieldError::NoDefaultModulus(9)
        );
    }

    #[test]
    fn additive_cubic_examples() {
        let f3 = FieldParams::prime();
        let roots = solve_additive_cubic(&f3.from_int(-1), &f3.zero()).unwrap();
        assert_eq!(roots, vec![f3.from_int(0), f3.from_int(1), f3.from_int(2)]);
        let roots = solve_additive_cubic(&f3.one(), &f3.zero()).unwrap();
        assert_eq!(roots, vec![f3.zero()]);

        let f = f9();
        let roots = solve_additive_cubic(&f.one(), &f.one()).unwrap();
        let expect: Vec<_> = [[2, 0], [2, 1], [2, 2]]
            .iter()
            .map(|c| f.from_coeffs(c))
            .collect();
        assert_eq!(roots, expect);
        assert_eq!(
            solve_additive_cubic(&f.zero(), &f.one()),
            Err(FieldError::ZeroA)
        );
    }

    #[test]
    fn sqrt_examples() {
        let f3 = FieldParams::prime();
        assert_eq!(f3.one().sqrt(), Some(f3.one()));
        assert_eq!(f3.from_int(2).sqrt(), None);
        let f = f9();
        assert_eq!(f.from_int(2).sqrt(), Some(f.generator()));
    }

    #[test]
    fn display_and_order() {
        let f = f9();
        assert_eq!(f.from_coeffs(&[2, 1]).to_string(), "2+t");
        assert_eq!(f.from_coeffs(&[0, 2]).to_string(), "2*t");
        assert_eq!(f.zero().to_string(), "0");
        let sorted: Vec<_> = f.elements().collect();
        let mut copy = sorted.clone();
        copy.sort();
        assert_eq!(sorted, copy);
        // t for F3 (modulus "t") is zero
        assert!(FieldParams::prime().generator().is_zero());
    }
}
