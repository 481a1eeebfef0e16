//! Group law on `y^2 = x^3 + Ax + B` over a small GF(3^k), used as an
//! independent oracle for maps recovered from series.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exec::Exec;
use crate::field::{FieldElement, FieldParams};
use crate::poly::RationalFunction;

/// Enumeration is refused above `3^10` elements.
pub const MAX_ENUMERATION_DEGREE: usize = 10;
/// Fields up to this size get exhaustive homomorphism checks.
pub const EXHAUSTIVE_HOM_FIELD_SIZE: u64 = 81;
const SAMPLED_PAIRS: usize = 1000;
const SAMPLE_SEED: u64 = 0x5eed_0003;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("field of size 3^{0} is too large to enumerate (limit 3^{MAX_ENUMERATION_DEGREE})")]
    FieldTooLarge(usize),
    #[error("A = 0 gives a singular curve in characteristic 3")]
    Singular,
    #[error("coefficients belong to different fields")]
    MixedFields,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine { x: FieldElement, y: FieldElement },
}

impl Point {
    pub fn affine(x: FieldElement, y: FieldElement) -> Self {
        Point::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Infinity => f.write_str("O"),
            Point::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

/// `y^2 = x^3 + Ax + B` in characteristic 3 (nonsingular iff `A != 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve {
    field: FieldParams,
    a: FieldElement,
    b: FieldElement,
}

impl EllipticCurve {
    pub fn new(a: FieldElement, b: FieldElement) -> Result<Self, CurveError> {
        if a.field() != b.field() {
            return Err(CurveError::MixedFields);
        }
        if a.is_zero() {
            return Err(CurveError::Singular);
        }
        Ok(Self {
            field: a.field().clone(),
            a,
            b,
        })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn b(&self) -> &FieldElement {
        &self.b
    }

    /// `x^3 + Ax + B`.
    pub fn rhs(&self, x: &FieldElement) -> FieldElement {
        x.frobenius() + &self.a * x + &self.b
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                x.field() == &self.field && y.field() == &self.field && y * y == self.rhs(x)
            }
        }
    }

    fn ensure(&self, p: &Point) -> Result<(), CurveError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(CurveError::PointNotOnCurve)
        }
    }

    pub fn neg(&self, p: &Point) -> Result<Point, CurveError> {
        self.ensure(p)?;
        Ok(neg_unchecked(p))
    }

    pub fn add(&self, p: &Point, q: &Point) -> Result<Point, CurveError> {
        self.ensure(p)?;
        self.ensure(q)?;
        Ok(self.add_unchecked(p, q))
    }

    /// Doubling with slope `λ = -A/y` (the `3x^2` term vanishes).
    pub fn double(&self, p: &Point) -> Result<Point, CurveError> {
        self.ensure(p)?;
        Ok(self.double_unchecked(p))
    }

    /// `m·P` by double-and-add; negative `m` negates.
    pub fn mul(&self, m: i64, p: &Point) -> Result<Point, CurveError> {
        self.ensure(p)?;
        Ok(self.mul_unchecked(m, p))
    }

    fn add_unchecked(&self, p: &Point, q: &Point) -> Point {
        match (p, q) {
            (Point::Infinity, _) => q.clone(),
            (_, Point::Infinity) => p.clone(),
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => {
                if x1 == x2 {
                    if y1 == y2 {
                        return self.double_unchecked(p);
                    }
                    return Point::Infinity;
                }
                let lambda = (y2 - y1) / (x2 - x1);
                let x3 = &lambda * &lambda - x1 - x2;
                let y3 = &lambda * &(x1 - &x3) - y1;
                Point::affine(x3, y3)
            }
        }
    }

    fn double_unchecked(&self, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                if y.is_zero() {
                    return Point::Infinity;
                }
                let lambda = -(&self.a / y);
                // x3 = λ² - 2x = λ² + x
                let x3 = &lambda * &lambda + x;
                let y3 = &lambda * &(x - &x3) - y;
                Point::affine(x3, y3)
            }
        }
    }

    fn mul_unchecked(&self, m: i64, p: &Point) -> Point {
        let mut base = if m < 0 { neg_unchecked(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = Point::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.double_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// All rational points: `Infinity` first, then affine points ordered by
    /// `x` and then `y` (lexicographic on coordinates).
    pub fn points(&self) -> Result<Vec<Point>, CurveError> {
        self.points_with(Exec::default())
    }

    pub fn points_with(&self, exec: Exec) -> Result<Vec<Point>, CurveError> {
        if self.field.degree() > MAX_ENUMERATION_DEGREE {
            return Err(CurveError::FieldTooLarge(self.field.degree()));
        }
        let n = self.field.order() as usize;
        let per_x = exec.map_range(0..n, |i| {
            let x = self.field.element_from_index(i as u64);
            let r = self.rhs(&x);
            match r.sqrt() {
                None => Vec::new(),
                Some(s) if s.is_zero() => vec![Point::affine(x, s)],
                Some(s) => {
                    let mut ys = [s.clone(), -s];
                    ys.sort();
                    ys.into_iter().map(|y| Point::affine(x.clone(), y)).collect()
                }
            }
        });
        let mut out = vec![Point::Infinity];
        out.extend(per_x.into_iter().flatten());
        Ok(out)
    }

    /// Image of `P` under `(x, y) -> (fx(x), y·fy(x))`. A pole at `x(P)` sends
    /// `P` to `Infinity`, as does `Infinity` itself.
    pub fn apply_map(&self, fx: &RationalFunction, fy: &RationalFunction, p: &Point) -> Point {
        match p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => match (fx.eval(x), fy.eval(x)) {
                (Some(u), Some(v)) => Point::affine(u, y * &v),
                _ => Point::Infinity,
            },
        }
    }

    /// Checks a candidate endomorphism against the group law on every
    /// rational point.
    pub fn identify_scalar(
        &self,
        fx: &RationalFunction,
        fy: &RationalFunction,
        max_m: i64,
    ) -> Result<Identification, CurveError> {
        self.identify_scalar_with(fx, fy, max_m, Exec::default())
    }

    pub fn identify_scalar_with(
        &self,
        fx: &RationalFunction,
        fy: &RationalFunction,
        max_m: i64,
        exec: Exec,
    ) -> Result<Identification, CurveError> {
        let points = self.points_with(exec)?;
        let images = exec.map_slice(&points, |p| self.apply_map(fx, fy, p));
        let on_curve = exec.all_range(0..images.len(), |i| self.contains(&images[i]));
        if !on_curve {
            return Ok(Identification {
                point_count: points.len(),
                all_on_curve: false,
                homomorphism: false,
                homomorphism_exhaustive: false,
                scalar: None,
            });
        }

        let exhaustive = self.field.order() <= EXHAUSTIVE_HOM_FIELD_SIZE;
        let n = points.len();
        let hom_pair = |i: usize, j: usize| {
            let sum = self.add_unchecked(&points[i], &points[j]);
            self.apply_map(fx, fy, &sum) == self.add_unchecked(&images[i], &images[j])
        };
        let homomorphism = if exhaustive {
            exec.all_range(0..n, |i| (0..n).all(|j| hom_pair(i, j)))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let pairs: Vec<(usize, usize)> = (0..SAMPLED_PAIRS)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                .collect();
            exec.all_range(0..pairs.len(), |k| hom_pair(pairs[k].0, pairs[k].1))
        };

        let m_range = 1..(max_m.max(0) as usize + 1);
        let scalar = exec
            .find_first(m_range, |m| {
                (0..n).all(|i| self.mul_unchecked(m as i64, &points[i]) == images[i])
            })
            .map(|m| m as i64);

        Ok(Identification {
            point_count: n,
            all_on_curve: true,
            homomorphism,
            homomorphism_exhaustive: exhaustive,
            scalar,
        })
    }

    /// Identity, inverses, commutativity and associativity over all points
    /// (triples exhaustively when there are at most 100 points, otherwise a
    /// fixed-seed sample of 1000 triples).
    pub fn check_group_axioms(&self, exec: Exec) -> Result<GroupAxioms, CurveError> {
        let pts = self.points_with(exec)?;
        let n = pts.len();
        let identity = pts
            .iter()
            .all(|p| self.add_unchecked(p, &Point::Infinity) == *p);
        let inverse = pts
            .iter()
            .all(|p| self.add_unchecked(p, &neg_unchecked(p)).is_infinity());
        let commutative = exec.all_range(0..n, |i| {
            (0..n).all(|j| self.add_unchecked(&pts[i], &pts[j]) == self.add_unchecked(&pts[j], &pts[i]))
        });
        let assoc = |i: usize, j: usize, k: usize| {
            let (p, q, r) = (&pts[i], &pts[j], &pts[k]);
            self.add_unchecked(&self.add_unchecked(p, q), r)
                == self.add_unchecked(p, &self.add_unchecked(q, r))
        };
        let exhaustive = n <= 100;
        let associative = if exhaustive {
            exec.all_range(0..n, |i| (0..n).all(|j| (0..n).all(|k| assoc(i, j, k))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
            let triples: Vec<_> = (0..SAMPLED_PAIRS)
                .map(|_| {
                    (
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                        rng.random_range(0..n),
                    )
                })
                .collect();
            exec.all_range(0..triples.len(), |t| {
                let (i, j, k) = triples[t];
                assoc(i, j, k)
            })
        };
        Ok(GroupAxioms {
            point_count: n,
            identity,
            inverse,
            commutative,
            associative,
            exhaustive,
        })
    }
}

fn neg_unchecked(p: &Point) -> Point {
    match p {
        Point::Infinity => Point::Infinity,
        Point::Affine { x, y } => Point::affine(x.clone(), -y),
    }
}

/// Outcome of [`EllipticCurve::identify_scalar`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub point_count: usize,
    pub all_on_curve: bool,
    pub homomorphism: bool,
    pub homomorphism_exhaustive: bool,
    /// Smallest `m` in `1..=max_m` with `f(P) = mP` for every point.
    pub scalar: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAxioms {
    pub point_count: usize,
    pub identity: bool,
    pub inverse: bool,
    pub commutative: bool,
    pub associative: bool,
    pub exhaustive: bool,
}

impl GroupAxioms {
    pub fn all_hold(&self) -> bool {
        self.identity && self.inverse && self.commutative && self.associative
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn ex4_curve() -> EllipticCurve {
        let f = FieldParams::with_default_modulus(2).unwrap();
        EllipticCurve::new(f.one(), f.from_int(2)).unwrap()
    }

    fn ex2_curve() -> EllipticCurve {
        let f = FieldParams::prime();
        EllipticCurve::new(f.from_int(-1), f.zero()).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let e = ex4_curve();
        for p in e.points().unwrap() {
            assert_eq!(e.add(&p, &Point::Infinity).unwrap(), p);
            assert!(e.add(&p, &e.neg(&p).unwrap()).unwrap().is_infinity());
            assert_eq!(e.mul(1, &p).unwrap(), p);
            assert_eq!(e.mul(2, &p).unwrap(), e.double(&p).unwrap());
            assert_eq!(e.mul(-3, &p).unwrap(), e.neg(&e.mul(3, &p).unwrap()).unwrap());
            assert!(e.mul(0, &p).unwrap().is_infinity());
        }
    }

    #[test]
    fn lagrange_on_enumerated_points() {
        let e = ex4_curve();
        let pts = e.points().unwrap();
        assert_eq!(pts.len(), 16);
        for p in &pts {
            assert!(e.contains(p));
            assert!(e.mul(pts.len() as i64, p).unwrap().is_infinity());
        }
    }

    #[test]
    fn two_torsion_of_x3_minus_x() {
        let e = ex2_curve();
        let f = e.field().clone();
        let pts = e.points().unwrap();
        assert_eq!(pts.len(), 4);
        for x in 0..3 {
            let p = Point::affine(f.from_int(x), f.zero());
            assert!(pts.contains(&p));
            assert!(e.double(&p).unwrap().is_infinity());
        }
    }

    #[test]
    fn point_not_on_curve() {
        let e = ex2_curve();
        let f = e.field().clone();
        let bad = Point::affine(f.zero(), f.one());
        assert_eq!(e.double(&bad), Err(CurveError::PointNotOnCurve));
        assert_eq!(
            EllipticCurve::new(f.zero(), f.one()),
            Err(CurveError::Singular)
        );
    }

    #[test]
    fn field_too_large() {
        let mut m = vec![0u8; 12];
        m[0] = 2;
        m[2] = 1;
        m[11] = 1;
        let f = FieldParams::new(&m).unwrap();
        let e = EllipticCurve::new(f.one(), f.one()).unwrap();
        assert_eq!(e.points(), Err(CurveError::FieldTooLarge(11)));
    }

    #[test]
    fn example3_map_pointwise() {
        let e = ex2_curve();
        let f = e.field().clone();
        let fx = RationalFunction::new(Polynomial::from_ints(&f, &[-1]), Polynomial::x(&f)).unwrap();
        let fy = RationalFunction::new(Polynomial::one(&f), Polynomial::from_ints(&f, &[0, 0, 1])).unwrap();
        let img = e.apply_map(&fx, &fy, &Point::affine(f.one(), f.zero()));
        assert_eq!(img, Point::affine(f.from_int(2), f.zero()));
        for p in e.points().unwrap() {
            assert!(e.contains(&e.apply_map(&fx, &fy, &p)));
        }
    }

    #[test]
    fn identity_map_is_scalar_one() {
        let e = ex4_curve();
        let f = e.field().clone();
        let fx = RationalFunction::from_poly(Polynomial::x(&f));
        let fy = RationalFunction::from_poly(Polynomial::one(&f));
        let id = e.identify_scalar(&fx, &fy, 10).unwrap();
        assert_eq!(id.scalar, Some(1));
        assert!(id.homomorphism && id.all_on_curve);
    }

    #[test]
    fn translated_x_map_is_not_scalar() {
        let e = ex2_curve();
        let f = e.field().clone();
        let fx = RationalFunction::from_poly(Polynomial::from_ints(&f, &[1, 1]));
        let fy = RationalFunction::from_poly(Polynomial::one(&f));
        let id = e.identify_scalar(&fx, &fy, 10).unwrap();
        assert!(id.all_on_curve);
        assert_eq!(id.scalar, None);
    }

    #[test]
    fn axioms_both_policies() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert!(ex4_curve().check_group_axioms(exec).unwrap().all_hold());
            assert!(ex2_curve().check_group_axioms(exec).unwrap().all_hold());
        }
    }
}
