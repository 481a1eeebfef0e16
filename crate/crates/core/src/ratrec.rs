//! Rational reconstruction of series prefixes (Padé approximation through
//! the extended Euclidean algorithm on `X^N` and the truncation polynomial).

use thiserror::Error;

use crate::isocore::CurveParams;
use crate::poly::{Polynomial, RationalFunction};
use crate::series::{expand_rational, LaurentSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatRecError {
    #[error("series known to X^{have}, bounds need at least {need} coefficients")]
    InsufficientPrecision { have: i64, need: i64 },
    #[error("series has a pole of order {0}; at most a simple pole is supported")]
    PoleTooHigh(i64),
}

enum Shape {
    Regular,
    SimplePole,
}

/// Rational function `p/q` with `deg p <= deg_num_max`, `deg q <= deg_den_max`
/// whose expansion agrees with every known coefficient of `series`, or
/// `None` if no such function is found.
///
/// Exact series are treated as known to `deg_num_max + deg_den_max + 2`
/// beyond their last term.
pub fn pade(
    series: &LaurentSeries,
    deg_num_max: usize,
    deg_den_max: usize,
) -> Result<Option<RationalFunction>, RatRecError> {
    let f = series.field();
    let need = (deg_num_max + deg_den_max + 2) as i64;
    let val = series.valuation();
    if let Some(v) = val {
        if v < -1 {
            return Err(RatRecError::PoleTooHigh(-v));
        }
    }
    let prec = match series.prec() {
        Some(p) => p,
        None => {
            let top = series.terms().last().map_or(0, |(e, _)| *e + 1);
            top.max(0) + need
        }
    };
    if prec < need {
        return Err(RatRecError::InsufficientPrecision { have: prec, need });
    }

    let (shape, n_known, den_max) = match val {
        Some(-1) => {
            if deg_den_max == 0 {
                return Ok(None);
            }
            (Shape::SimplePole, prec + 1, deg_den_max - 1)
        }
        _ => (Shape::Regular, prec, deg_den_max),
    };
    let shift = match shape {
        Shape::Regular => 0,
        Shape::SimplePole => 1,
    };
    // truncation polynomial of X^shift * series modulo X^n_known
    let t_coeffs: Vec<_> = (0..n_known)
        .map(|e| series.coeff_or_zero(e - shift))
        .collect();
    let t = Polynomial::new(f, &t_coeffs);

    let Some((p, q)) = euclid_pade(&t, n_known as usize, deg_num_max, den_max) else {
        return Ok(None);
    };
    let den = match shape {
        Shape::Regular => q,
        Shape::SimplePole => q.shift(1),
    };
    let Ok(candidate) = RationalFunction::new(p, den) else {
        return Ok(None);
    };
    if !certify(series, &candidate, prec) {
        return Ok(None);
    }
    Ok(Some(candidate))
}

/// First remainder of degree `<= m` in Euclid's sequence for `(X^n, t)`,
/// together with its cofactor of `t`, if that cofactor has degree `<= d`
/// and a nonzero constant term.
fn euclid_pade(t: &Polynomial, n: usize, m: usize, d: usize) -> Option<(Polynomial, Polynomial)> {
    let f = t.field();
    if t.degree().is_none_or(|deg| deg <= m) {
        return Some((t.clone(), Polynomial::one(f)));
    }
    let mut r0 = Polynomial::monomial(&f.one(), n);
    let mut r1 = t.clone();
    let mut t0 = Polynomial::zero(f);
    let mut t1 = Polynomial::one(f);
    loop {
        if r1.degree().is_none_or(|deg| deg <= m) {
            break;
        }
        let (q, r) = r0.div_rem(&r1).ok()?;
        let tn = t0.try_sub(&q.try_mul(&t1).ok()?).ok()?;
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, tn);
    }
    if t1.degree().is_some_and(|deg| deg > d) || t1.coeff(0).is_zero() {
        return None;
    }
    Some((r1, t1))
}

fn certify(series: &LaurentSeries, candidate: &RationalFunction, prec: i64) -> bool {
    let Ok(e) = expand_rational(candidate.num(), candidate.den(), prec) else {
        return false;
    };
    (-1..prec).all(|k| e.coeff_or_zero(k) == series.coeff_or_zero(k))
}

/// `(fx, fy_factor)` for `(x, y) -> (η(x), y·c·η'(x))`.
pub fn derive_map_pair(curve: &CurveParams, eta: &RationalFunction) -> (RationalFunction, RationalFunction) {
    (eta.clone(), eta.derivative().scale(curve.c()))
}
