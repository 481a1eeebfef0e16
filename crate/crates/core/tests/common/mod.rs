#![allow(dead_code)]

use char3_isogeny::{CurveParams, FieldElement, FieldParams, LaurentSeries, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn f3() -> FieldParams {
    FieldParams::prime()
}

pub fn f9() -> FieldParams {
    FieldParams::with_default_modulus(2).unwrap()
}

pub fn elem(f: &FieldParams, rng: &mut ChaCha8Rng) -> FieldElement {
    f.element_from_index(rng.random_range(0..f.order()))
}

pub fn nonzero(f: &FieldParams, rng: &mut ChaCha8Rng) -> FieldElement {
    f.element_from_index(rng.random_range(1..f.order()))
}

pub fn small_field(rng: &mut ChaCha8Rng) -> FieldParams {
    if rng.random_bool(0.5) {
        f3()
    } else {
        f9()
    }
}

pub fn curve(f: &FieldParams, a: i64, b: i64, c: i64) -> CurveParams {
    CurveParams::new(f.from_int(a), f.from_int(b), f.from_int(c)).unwrap()
}

pub fn random_curve(f: &FieldParams, rng: &mut ChaCha8Rng, b_nonzero: bool) -> CurveParams {
    let b = if b_nonzero { nonzero(f, rng) } else { elem(f, rng) };
    CurveParams::new(nonzero(f, rng), b, nonzero(f, rng)).unwrap()
}

/// Series with exponents `val..val+len` (only those `≡ residue mod 3` when
/// given) and random precision, occasionally exact.
pub fn random_series(
    f: &FieldParams,
    rng: &mut ChaCha8Rng,
    val: i64,
    len: usize,
    residue: Option<i64>,
) -> LaurentSeries {
    let coeffs: Vec<FieldElement> = (0..len)
        .map(|i| {
            let e = val + i as i64;
            match residue {
                Some(r) if e.rem_euclid(3) != r => f.zero(),
                _ => elem(f, rng),
            }
        })
        .collect();
    if rng.random_bool(0.2) {
        LaurentSeries::exact(f, val, &coeffs)
    } else {
        let prec = val + len as i64 + rng.random_range(0..6);
        LaurentSeries::new(f, val, &coeffs, prec)
    }
}

pub fn random_poly(f: &FieldParams, rng: &mut ChaCha8Rng, max_deg: usize) -> Polynomial {
    let deg = rng.random_range(0..=max_deg);
    let coeffs: Vec<FieldElement> = (0..=deg).map(|_| elem(f, rng)).collect();
    Polynomial::new(f, &coeffs)
}

pub fn x(f: &FieldParams) -> LaurentSeries {
    LaurentSeries::monomial(&f.one(), 1)
}
