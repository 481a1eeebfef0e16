//! Construction of formal separable endomorphisms `η ∈ (1/X)K[[X]]` of
//! `y^2 = x^3 + Ax + B` over GF(3^k), i.e. Laurent series solutions of
//!
//! ```text
//! c²(X³ + AX + B)(η')² = η³ + Aη + B
//! ```
//!
//! Writing `η = α + β + γ` by exponent residue mod 3, the α and β parts
//! determine each other through `c²AXα + c²(X³+B)β = AX²`, and γ solves
//! `γ³ + Aγ = ψ` for a series ψ built from α and β. The pipeline is: pick a
//! seed for α or β, compute its partner, build ψ, check that ψ is a regular
//! V0 series and that `t³ + At = ψ(0)` is solvable, then run the γ recurrence
//! once per root.

use thiserror::Error;

use crate::curve::{CurveError, EllipticCurve};
use crate::exec::Exec;
use crate::field::{solve_additive_cubic, FieldElement, FieldError, FieldParams};
use crate::poly::RationalFunction;
use crate::series::{expand_rational, Homogeneity, LaurentSeries, SeriesError, TriSplit};

/// Extra coefficients carried internally so every reported coefficient of
/// η is exact (ψ assembly loses up to five exponents).
pub const GUARD: i64 = 8;
/// Smallest precision accepted by [`construct`].
pub const MIN_PREC: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("A = 0: the curve is singular in characteristic 3")]
    ZeroA,
    #[error("c = 0 is not the derivative of a separable endomorphism")]
    ZeroC,
    #[error("curve parameters belong to different fields")]
    MixedFields,
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("incompatible seed: {0}")]
    IncompatibleSeed(String),
    #[error("psi is not in V0 ∩ K[[X]]: nonzero coefficient at X^{exponent}")]
    NonRegularPsi { exponent: i64 },
    #[error("gamma0 does not satisfy gamma0^3 + A*gamma0 = psi(0)")]
    BadInitial,
    #[error("precision {0} is below the minimum {MIN_PREC}")]
    PrecisionTooLow(i64),
    #[error("only {have} coefficients are exact, {want} requested")]
    InsufficientPrecision { have: i64, want: i64 },
    #[error("constructed series fails the functional equation at X^{0}")]
    VerificationFailed(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Curve `y^2 = x^3 + Ax + B` together with the derivative-at-origin `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParams {
    curve: EllipticCurve,
    c: FieldElement,
}

impl CurveParams {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Result<Self, IsoError> {
        if a.field() != b.field() || a.field() != c.field() {
            return Err(IsoError::MixedFields);
        }
        if c.is_zero() {
            return Err(IsoError::ZeroC);
        }
        let curve = EllipticCurve::new(a, b).map_err(|e| match e {
            CurveError::Singular => IsoError::ZeroA,
            _ => IsoError::MixedFields,
        })?;
        Ok(Self { curve, c })
    }

    pub fn field(&self) -> &FieldParams {
        self.curve.field()
    }

    pub fn a(&self) -> &FieldElement {
        self.curve.a()
    }

    pub fn b(&self) -> &FieldElement {
        self.curve.b()
    }

    pub fn c(&self) -> &FieldElement {
        &self.c
    }

    pub fn curve(&self) -> &EllipticCurve {
        &self.curve
    }

    fn c2(&self) -> FieldElement {
        &self.c * &self.c
    }

    /// `X^3 + AX + B` as an exact series.
    fn cubic(&self) -> LaurentSeries {
        let f = self.field();
        LaurentSeries::exact(f, 0, &[self.b().clone(), self.a().clone(), f.zero(), f.one()])
    }

    fn constant(&self, c: &FieldElement) -> LaurentSeries {
        LaurentSeries::monomial(c, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    Alpha,
    Beta,
}

/// Starting data for the construction: the α part (in `V1 ∩ XK[[X]]`) or
/// the β part (in `V-1`, at most a simple pole).
#[derive(Debug, Clone)]
pub struct Seed {
    kind: SeedKind,
    series: LaurentSeries,
}

impl Seed {
    pub fn alpha(series: LaurentSeries) -> Result<Self, IsoError> {
        if !series.lies_in(Homogeneity::V1) {
            return Err(IsoError::InvalidSeed(
                "alpha seed must only have exponents ≡ 1 (mod 3)".into(),
            ));
        }
        if !series.valuation_at_least(1) {
            return Err(IsoError::InvalidSeed("alpha seed must lie in X·K[[X]]".into()));
        }
        Ok(Self {
            kind: SeedKind::Alpha,
            series,
        })
    }

    pub fn beta(series: LaurentSeries) -> Result<Self, IsoError> {
        if !series.lies_in(Homogeneity::Vm1) {
            return Err(IsoError::InvalidSeed(
                "beta seed must only have exponents ≡ 2 (mod 3)".into(),
            ));
        }
        if !series.valuation_at_least(-1) {
            return Err(IsoError::InvalidSeed(
                "beta seed may have at most a simple pole".into(),
            ));
        }
        Ok(Self {
            kind: SeedKind::Beta,
            series,
        })
    }

    pub fn new(kind: SeedKind, series: LaurentSeries) -> Result<Self, IsoError> {
        match kind {
            SeedKind::Alpha => Self::alpha(series),
            SeedKind::Beta => Self::beta(series),
        }
    }

    /// Seed from a rational function, expanded to `prec + GUARD`.
    pub fn from_rational(kind: SeedKind, f: &RationalFunction, prec: i64) -> Result<Self, IsoError> {
        let s = expand_rational(f.num(), f.den(), prec + GUARD)?;
        // a rational seed whose expansion is a polynomial is that polynomial
        let s = if f.is_polynomial() {
            LaurentSeries::from_poly(f.num())
        } else {
            s
        };
        Self::new(kind, s)
    }

    /// Kind inferred from the exponents present (for coefficient-list seeds).
    pub fn infer(series: LaurentSeries) -> Result<Self, IsoError> {
        match series.homogeneity_class() {
            Homogeneity::V1 => Self::alpha(series),
            Homogeneity::Vm1 => Self::beta(series),
            _ => Err(IsoError::InvalidSeed(
                "coefficient seed must be purely of exponents ≡ 1 or ≡ 2 (mod 3)".into(),
            )),
        }
    }

    pub fn kind(&self) -> SeedKind {
        self.kind
    }

    pub fn series(&self) -> &LaurentSeries {
        &self.series
    }
}

/// `β = (AX² - c²AXα) / (c²(X³+B))`, known to `prec`.
pub fn beta_from_alpha(
    curve: &CurveParams,
    alpha: &LaurentSeries,
    prec: i64,
) -> Result<LaurentSeries, IsoError> {
    let f = curve.field();
    let a = curve.a();
    let c2 = curve.c2();
    let ax2 = LaurentSeries::monomial(a, 2);
    let num = ax2.try_sub(&alpha.shift(1).scale(&(&c2 * a)))?;
    let den = LaurentSeries::exact(f, 0, &[curve.b().clone(), f.zero(), f.zero(), f.one()]).scale(&c2);
    let beta = num.try_div_to(&den, prec)?;
    debug_assert!(beta.lies_in(Homogeneity::Vm1));
    Ok(beta)
}

/// `α = (AX² - c²(X³+B)β) / (c²AX)`, known to `prec`.
pub fn alpha_from_beta(
    curve: &CurveParams,
    beta: &LaurentSeries,
    prec: i64,
) -> Result<LaurentSeries, IsoError> {
    let f = curve.field();
    let a = curve.a();
    let c2 = curve.c2();
    let x3b = LaurentSeries::exact(f, 0, &[curve.b().clone(), f.zero(), f.zero(), f.one()]);
    let num = LaurentSeries::monomial(a, 2).try_sub(&x3b.try_mul(beta)?.scale(&c2))?;
    if !num.valuation_at_least(1) {
        return Err(IsoError::IncompatibleSeed(format!(
            "AX² - c²(X³+B)β has a term at X^{} and is not divisible by X",
            num.valuation().unwrap_or(0)
        )));
    }
    let alpha = num.shift(-1).scale(&(&c2 * a).inv()?).truncate(prec);
    if !alpha.lies_in(Homogeneity::V1) || !alpha.valuation_at_least(1) {
        return Err(IsoError::IncompatibleSeed(
            "derived alpha part is not in V1 ∩ XK[[X]]".into(),
        ));
    }
    Ok(alpha)
}

/// `ψ = c²(X³+AX+B)((α-β)/X)² - α³ - β³ - Aα - Aβ - B`.
pub fn compute_psi(
    curve: &CurveParams,
    alpha: &LaurentSeries,
    beta: &LaurentSeries,
) -> Result<LaurentSeries, IsoError> {
    let a = curve.a();
    let d = alpha.try_sub(beta)?.shift(-1);
    let lhs = curve.cubic().try_mul(&d.try_mul(&d)?)?.scale(&curve.c2());
    let ab = alpha.try_add(beta)?;
    let psi = lhs
        .try_sub(&alpha.cube())?
        .try_sub(&beta.cube())?
        .try_sub(&ab.scale(a))?
        .try_sub(&curve.constant(curve.b()))?;
    Ok(psi)
}

/// Closed-form quantities attached to a seed pair, for diagnostics only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    /// Coefficient of `X^-1` in β.
    pub beta_minus1: FieldElement,
    /// Coefficient of `X` in α.
    pub alpha1: FieldElement,
    /// `δ(0)` where `α = Xδ(X³)` (`B = 0` only; equals `alpha1`).
    pub delta0: Option<FieldElement>,
    /// `B = 0`: `β₋₁ - (A/c² - Aδ₀)`.
    pub c1_residual: Option<FieldElement>,
    /// `B = 0`: `c²Aβ₋₁² - β₋₁³`.
    pub c2_residual: Option<FieldElement>,
    /// `B = 0`: `c²(β₋₁² + Aα₁β₋₁) - Aβ₋₁`.
    pub c3_residual: Option<FieldElement>,
    /// `B = 0`: which branch of the pole analysis the pair falls in.
    pub branch: Option<PoleBranch>,
    /// `B != 0`: right-hand side `c²Bα₁ - B` of the closed-form compatibility condition.
    pub stated_condition_rhs: Option<FieldElement>,
    /// `B != 0`: `ψ(0) = c²Bα₁² - B` from direct expansion.
    pub expanded_psi0: Option<FieldElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleBranch {
    /// `β₋₁ = 0`: β has no pole.
    NoPole,
    /// `β₋₁ = c²A` and `α₁ = (1 - c⁴)/c²`.
    SimplePole,
    /// Neither; the principal part of ψ cannot vanish.
    Inconsistent,
}

impl std::fmt::Display for PoleBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PoleBranch::NoPole => "beta_-1=0",
            PoleBranch::SimplePole => "beta_-1=c^2*A",
            PoleBranch::Inconsistent => "inconsistent",
        })
    }
}

pub fn closed_form_conditions(
    curve: &CurveParams,
    alpha: &LaurentSeries,
    beta: &LaurentSeries,
) -> ClosedForm {
    let (a, b) = (curve.a(), curve.b());
    let c2 = curve.c2();
    let bm1 = beta.coeff_or_zero(-1);
    let a1 = alpha.coeff_or_zero(1);
    if b.is_zero() {
        let delta0 = a1.clone();
        let c1 = &bm1 - &(a / &c2 - a * &delta0);
        let c2r = &c2 * a * &bm1 * &bm1 - bm1.frobenius();
        let c3 = &c2 * &(&bm1 * &bm1 + a * &a1 * &bm1) - a * &bm1;
        let c4 = &c2 * &c2;
        let one = curve.field().one();
        let branch = if bm1.is_zero() {
            PoleBranch::NoPole
        } else if bm1 == &c2 * a && a1 == (&one - &c4) / &c2 {
            PoleBranch::SimplePole
        } else {
            PoleBranch::Inconsistent
        };
        ClosedForm {
            beta_minus1: bm1,
            alpha1: a1,
            delta0: Some(delta0),
            c1_residual: Some(c1),
            c2_residual: Some(c2r),
            c3_residual: Some(c3),
            branch: Some(branch),
            stated_condition_rhs: None,
            expanded_psi0: None,
        }
    } else {
        ClosedForm {
            stated_condition_rhs: Some(&c2 * b * &a1 - b),
            expanded_psi0: Some(&c2 * b * &a1 * &a1 - b),
            beta_minus1: bm1,
            alpha1: a1,
            delta0: None,
            c1_residual: None,
            c2_residual: None,
            c3_residual: None,
            branch: None,
        }
    }
}

/// Result of checking whether γ can be solved for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatReport {
    /// `ψ(0)`.
    pub psi0: FieldElement,
    /// Solutions of `t³ + At = ψ(0)` (empty unless `principal_part_ok`).
    pub gamma0_roots: Vec<FieldElement>,
    /// ψ has no terms at negative exponents or at exponents `≢ 0 (mod 3)`.
    pub principal_part_ok: bool,
    /// Lowest offending exponent when `principal_part_ok` is false.
    pub first_irregular: Option<i64>,
    /// Closed-form seed data, filled in when α and β are known.
    pub closed_form: Option<ClosedForm>,
}

impl CompatReport {
    pub fn is_compatible(&self) -> bool {
        self.principal_part_ok && !self.gamma0_roots.is_empty()
    }
}

fn first_irregular_exponent(psi: &LaurentSeries) -> Option<i64> {
    psi.terms()
        .into_iter()
        .map(|(e, _)| e)
        .find(|&e| e < 0 || e.rem_euclid(3) != 0)
}

pub fn compatibility_check(curve: &CurveParams, psi: &LaurentSeries) -> Result<CompatReport, IsoError> {
    let first_irregular = first_irregular_exponent(psi);
    let principal_part_ok = first_irregular.is_none();
    let psi0 = psi.coeff_or_zero(0);
    let gamma0_roots = if principal_part_ok {
        solve_additive_cubic(curve.a(), &psi0)?
    } else {
        Vec::new()
    };
    Ok(CompatReport {
        psi0,
        gamma0_roots,
        principal_part_ok,
        first_irregular,
        closed_form: None,
    })
}

/// γ ∈ V0 ∩ K[[X]] with `γ³ + Aγ = ψ` and `γ(0) = gamma0`, known to
/// `min(prec, prec ψ)`.
///
/// With `ψ = Σ C_n X^{3n}` the coefficients follow
/// `γ_n = C_n / A` for `3 ∤ n` and `γ_{3l} = (C_{3l} - γ_l³) / A`.
pub fn solve_gamma(
    a: &FieldElement,
    psi: &LaurentSeries,
    gamma0: &FieldElement,
    prec: i64,
) -> Result<LaurentSeries, IsoError> {
    let f = a.field();
    if a.is_zero() {
        return Err(IsoError::ZeroA);
    }
    if let Some(exponent) = first_irregular_exponent(psi) {
        return Err(IsoError::NonRegularPsi { exponent });
    }
    let c0 = psi.coeff_or_zero(0);
    if gamma0.frobenius() + a * gamma0 != c0 {
        return Err(IsoError::BadInitial);
    }
    let prec = psi.prec().map_or(prec, |p| p.min(prec));
    if prec <= 0 {
        return Ok(LaurentSeries::zero(f, prec));
    }
    let n_terms = ((prec + 2) / 3) as usize; // indices n with 3n < prec
    let a_inv = a.inv()?.raw();
    let mut g = vec![0u32; n_terms];
    g[0] = gamma0.raw();
    for n in 1..n_terms {
        let cn = psi.coeff_raw(3 * n as i64).unwrap_or(0);
        let rhs = if n % 3 == 0 {
            f.sub_raw(cn, f.cube_raw(g[n / 3]))
        } else {
            cn
        };
        g[n] = f.mul_raw(rhs, a_inv);
    }
    let mut coeffs = vec![0u32; prec as usize];
    for (n, &v) in g.iter().enumerate() {
        coeffs[3 * n] = v;
    }
    Ok(LaurentSeries::from_raw(f, 0, coeffs, Some(prec)))
}

/// A formal endomorphism `(x, y) -> (η(x), c·y·η'(x))`.
#[derive(Debug, Clone)]
pub struct FormalEndomorphism {
    pub curve: CurveParams,
    /// η known modulo `X^prec`.
    pub eta: LaurentSeries,
    pub c: FieldElement,
    /// The chosen root of `t³ + At = ψ(0)`.
    pub gamma0: FieldElement,
    pub prec: i64,
}

impl FormalEndomorphism {
    pub fn parts(&self) -> TriSplit {
        self.eta.split()
    }

    /// `c·η'`, the multiplier of `y` in the second coordinate.
    pub fn y_factor(&self) -> LaurentSeries {
        self.eta.derivative().scale(&self.c)
    }

    pub fn verify(&self) -> FunctionalEquationReport {
        verify_functional_equation(&self.curve, &self.eta, self.prec)
    }
}

/// Everything computed before γ: useful for diagnostics even when the seed
/// turns out incompatible.
#[derive(Debug, Clone)]
pub struct Preparation {
    pub working_prec: i64,
    pub alpha: LaurentSeries,
    pub beta: LaurentSeries,
    pub psi: LaurentSeries,
    pub report: CompatReport,
}

/// Partner part, ψ and the compatibility report for `seed`.
pub fn prepare(curve: &CurveParams, seed: &Seed, prec: i64) -> Result<Preparation, IsoError> {
    if seed.series().field() != curve.field() {
        return Err(IsoError::MixedFields);
    }
    if prec < MIN_PREC {
        return Err(IsoError::PrecisionTooLow(prec));
    }
    let working_prec = prec + GUARD;
    let seed_series = seed.series().truncate(working_prec);
    let (alpha, beta) = match seed.kind() {
        SeedKind::Alpha => {
            let beta = beta_from_alpha(curve, &seed_series, working_prec)?;
            (seed_series, beta)
        }
        SeedKind::Beta => {
            let alpha = alpha_from_beta(curve, &seed_series, working_prec)?;
            (alpha, seed_series)
        }
    };
    let psi = compute_psi(curve, &alpha, &beta)?;
    let mut report = compatibility_check(curve, &psi)?;
    report.closed_form = Some(closed_form_conditions(curve, &alpha, &beta));
    Ok(Preparation {
        working_prec,
        alpha,
        beta,
        psi,
        report,
    })
}

/// All formal endomorphisms with the given seed part, one per root of
/// `t³ + At = ψ(0)` in lexicographic order of the root. Every returned η is
/// exact modulo `X^prec` and has been checked against the functional
/// equation.
pub fn construct(curve: &CurveParams, seed: &Seed, prec: i64) -> Result<Vec<FormalEndomorphism>, IsoError> {
    let prep = prepare(curve, seed, prec)?;
    finish(curve, &prep, prec)
}

/// Second half of [`construct`], given a [`prepare`] result.
pub fn finish(
    curve: &CurveParams,
    prep: &Preparation,
    prec: i64,
) -> Result<Vec<FormalEndomorphism>, IsoError> {
    let report = &prep.report;
    if !report.principal_part_ok {
        return Err(IsoError::IncompatibleSeed(format!(
            "psi has a nonzero coefficient at X^{}",
            report.first_irregular.unwrap_or(0)
        )));
    }
    if report.gamma0_roots.is_empty() {
        return Err(IsoError::IncompatibleSeed(format!(
            "t^3 + ({})t = {} has no solution in the field",
            curve.a(),
            report.psi0
        )));
    }
    let ab = prep.alpha.try_add(&prep.beta)?;
    report
        .gamma0_roots
        .iter()
        .map(|g0| {
            let gamma = solve_gamma(curve.a(), &prep.psi, g0, prep.working_prec)?;
            let eta_full = ab.try_add(&gamma)?;
            let have = eta_full.prec().unwrap_or(i64::MAX);
            if have < prec {
                return Err(IsoError::InsufficientPrecision { have, want: prec });
            }
            let check = verify_functional_equation(curve, &eta_full, prep.working_prec);
            if let Some((e, _)) = check.first_failure {
                return Err(IsoError::VerificationFailed(e));
            }
            Ok(FormalEndomorphism {
                curve: curve.clone(),
                eta: eta_full.truncate(prec),
                c: curve.c().clone(),
                gamma0: g0.clone(),
                prec,
            })
        })
        .collect()
}

/// [`construct`] over many seeds; seeds are independent and run in parallel
/// under [`Exec::Parallel`].
pub fn construct_batch(
    curve: &CurveParams,
    seeds: &[Seed],
    prec: i64,
    exec: Exec,
) -> Vec<Result<Vec<FormalEndomorphism>, IsoError>> {
    exec.map_slice(seeds, |s| construct(curve, s, prec))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalEquationReport {
    pub holds: bool,
    /// Residual coefficients were checked for all exponents below this bound.
    pub checked_to: i64,
    /// Lowest exponent with a nonzero residual coefficient, and its value.
    pub first_failure: Option<(i64, FieldElement)>,
}

/// Residual `c²(X³+AX+B)(η')² - η³ - Aη - B`, checked below
/// `min(prec, achievable precision)`.
pub fn verify_functional_equation(
    curve: &CurveParams,
    eta: &LaurentSeries,
    prec: i64,
) -> FunctionalEquationReport {
    let residual = functional_residual(curve, eta);
    let checked_to = residual.prec().map_or(prec, |p| p.min(prec));
    let first_failure = residual
        .terms()
        .into_iter()
        .find(|(e, _)| *e < checked_to);
    FunctionalEquationReport {
        holds: first_failure.is_none(),
        checked_to,
        first_failure,
    }
}

fn functional_residual(curve: &CurveParams, eta: &LaurentSeries) -> LaurentSeries {
    let d = eta.derivative();
    let lhs = curve.cubic().try_mul(&d.try_mul(&d).expect("same field")).expect("same field");
    let lhs = lhs.scale(&curve.c2());
    let rhs = eta
        .cube()
        .try_add(&eta.scale(curve.a()))
        .and_then(|s| s.try_add(&curve.constant(curve.b())))
        .expect("same field");
    lhs.try_sub(&rhs).expect("same field")
}

#[derive(Debug, Clone)]
pub struct CubicMembershipReport {
    /// `c²AXα + c²(X³+B)β - AX²`.
    pub linear_residual: LaurentSeries,
    /// `c²(X³+AX+B)((α-β)/X)² - (η³ + Aη + B)` with `η = α+β+γ`.
    pub cubic_residual: LaurentSeries,
}

impl CubicMembershipReport {
    pub fn holds(&self) -> bool {
        self.linear_residual.is_zero() && self.cubic_residual.is_zero()
    }
}

/// Evaluates both equations of the plane-cubic system at `(α, β, γ)`.
pub fn check_cubic_membership(
    curve: &CurveParams,
    alpha: &LaurentSeries,
    beta: &LaurentSeries,
    gamma: &LaurentSeries,
) -> Result<CubicMembershipReport, IsoError> {
    let f = curve.field();
    let a = curve.a();
    let c2 = curve.c2();
    let x3b = LaurentSeries::exact(f, 0, &[curve.b().clone(), f.zero(), f.zero(), f.one()]);
    let linear_residual = alpha
        .shift(1)
        .scale(&(&c2 * a))
        .try_add(&x3b.try_mul(beta)?.scale(&c2))?
        .try_sub(&LaurentSeries::monomial(a, 2))?;

    let d = alpha.try_sub(beta)?.shift(-1);
    let lhs = curve.cubic().try_mul(&d.try_mul(&d)?)?.scale(&c2);
    let eta = alpha.try_add(beta)?.try_add(gamma)?;
    let rhs = eta
        .cube()
        .try_add(&eta.scale(a))?
        .try_add(&curve.constant(curve.b()))?;
    Ok(CubicMembershipReport {
        linear_residual,
        cubic_residual: lhs.try_sub(&rhs)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn f3() -> FieldParams {
        FieldParams::prime()
    }

    fn curve(f: &FieldParams, a: i64, b: i64, c: i64) -> CurveParams {
        CurveParams::new(f.from_int(a), f.from_int(b), f.from_int(c)).unwrap()
    }

    fn x(f: &FieldParams) -> LaurentSeries {
        LaurentSeries::monomial(&f.one(), 1)
    }

    #[test]
    fn parameter_validation() {
        let f = f3();
        assert_eq!(
            CurveParams::new(f.zero(), f.one(), f.one()),
            Err(IsoError::ZeroA)
        );
        assert_eq!(
            CurveParams::new(f.one(), f.one(), f.zero()),
            Err(IsoError::ZeroC)
        );
    }

    #[test]
    fn seed_validation() {
        let f = f3();
        assert!(Seed::alpha(x(&f)).is_ok());
        assert!(Seed::alpha(LaurentSeries::exact_zero(&f)).is_ok());
        assert!(Seed::alpha(LaurentSeries::monomial(&f.one(), -2)).is_err());
        assert!(Seed::alpha(LaurentSeries::monomial(&f.one(), 2)).is_err());
        assert!(Seed::beta(LaurentSeries::monomial(&f.one(), -1)).is_ok());
        assert!(Seed::beta(LaurentSeries::monomial(&f.one(), -4)).is_err());
        assert_eq!(
            Seed::infer(LaurentSeries::monomial(&f.one(), 5)).unwrap().kind(),
            SeedKind::Beta
        );
    }

    #[test]
    fn beta_from_alpha_examples() {
        let f = f3();
        assert!(beta_from_alpha(&curve(&f, 1, 1, 1), &x(&f), 20).unwrap().is_zero());
        assert!(beta_from_alpha(&curve(&f, -1, 0, 1), &x(&f), 20).unwrap().is_zero());
        let b = beta_from_alpha(&curve(&f, 1, 0, 1), &LaurentSeries::exact_zero(&f), 20).unwrap();
        assert_eq!(b, LaurentSeries::monomial(&f.one(), -1).truncate(20));
    }

    #[test]
    fn alpha_from_beta_examples() {
        let f = f3();
        let e2 = curve(&f, -1, 0, 1);
        let beta = LaurentSeries::monomial(&f.from_int(-1), -1);
        assert!(alpha_from_beta(&e2, &beta, 20).unwrap().is_zero());

        let g = FieldParams::with_default_modulus(2).unwrap();
        let e4 = curve(&g, 1, 2, 1);
        let beta = LaurentSeries::monomial(&g.one(), -1);
        assert!(matches!(
            alpha_from_beta(&e4, &beta, 20),
            Err(IsoError::IncompatibleSeed(_))
        ));
    }

    #[test]
    fn psi_examples() {
        let f = f3();
        let zero = LaurentSeries::exact_zero(&f);
        assert!(compute_psi(&curve(&f, 1, 1, 1), &x(&f), &zero).unwrap().is_zero());
        assert!(compute_psi(&curve(&f, -1, 0, 1), &x(&f), &zero).unwrap().is_zero());
    }

    #[test]
    fn compatibility_examples() {
        let f = f3();
        let zero = LaurentSeries::exact_zero(&f);
        let r = compatibility_check(&curve(&f, -1, 0, 1), &zero).unwrap();
        assert_eq!(r.gamma0_roots, vec![f.from_int(0), f.from_int(1), f.from_int(2)]);
        let r = compatibility_check(&curve(&f, 1, 1, 1), &zero).unwrap();
        assert_eq!(r.gamma0_roots, vec![f.zero()]);
        let r = compatibility_check(&curve(&f, 1, 1, 1), &LaurentSeries::monomial(&f.one(), -3)).unwrap();
        assert!(!r.principal_part_ok);
        assert_eq!(r.first_irregular, Some(-3));
        assert!(!r.is_compatible());
    }

    #[test]
    fn closed_forms_for_b_zero_examples() {
        let f = f3();
        let e2 = curve(&f, -1, 0, 1);
        let zero = LaurentSeries::exact_zero(&f);
        let cf = closed_form_conditions(&e2, &x(&f), &zero);
        assert_eq!(cf.delta0, Some(f.one()));
        assert!(cf.beta_minus1.is_zero());
        assert_eq!(cf.branch, Some(PoleBranch::NoPole));
        assert!(cf.c1_residual.unwrap().is_zero());

        let beta = LaurentSeries::monomial(&f.from_int(-1), -1);
        let cf = closed_form_conditions(&e2, &zero, &beta);
        assert_eq!(cf.beta_minus1, f.from_int(-1));
        assert_eq!(cf.branch, Some(PoleBranch::SimplePole));
        assert!(cf.c2_residual.unwrap().is_zero());
        assert!(cf.c3_residual.unwrap().is_zero());
        assert!(cf.c1_residual.unwrap().is_zero());
    }

    #[test]
    fn gamma_errors() {
        let f = f3();
        let one = f.one();
        assert_eq!(
            solve_gamma(&one, &LaurentSeries::monomial(&one, -3), &f.zero(), 20),
            Err(IsoError::NonRegularPsi { exponent: -3 })
        );
        assert_eq!(
            solve_gamma(&one, &LaurentSeries::monomial(&one, 4), &f.zero(), 20),
            Err(IsoError::NonRegularPsi { exponent: 4 })
        );
        assert_eq!(
            solve_gamma(&one, &LaurentSeries::exact_zero(&f), &f.one(), 20),
            Err(IsoError::BadInitial)
        );
    }

    #[test]
    fn gamma_constant_solution() {
        let f = f3();
        let a = f.from_int(-1);
        let g = solve_gamma(&a, &LaurentSeries::exact_zero(&f), &f.from_int(2), 30).unwrap();
        assert_eq!(g, LaurentSeries::new(&f, 0, &[f.from_int(2)], 30));
    }

    #[test]
    fn example2_construct() {
        let f = f3();
        let e2 = curve(&f, -1, 0, 1);
        let sols = construct(&e2, &Seed::alpha(x(&f)).unwrap(), 32).unwrap();
        assert_eq!(sols.len(), 3);
        for (k, s) in sols.iter().enumerate() {
            let expect = LaurentSeries::exact(&f, 0, &[f.from_int(k as i64), f.one()]).truncate(32);
            assert_eq!(s.eta, expect);
            assert!(s.verify().holds);
        }
    }

    #[test]
    fn verification_examples() {
        let f = f3();
        let e1 = curve(&f, 1, 1, 1);
        assert!(verify_functional_equation(&e1, &x(&f), 30).holds);
        let r = verify_functional_equation(&e1, &LaurentSeries::exact(&f, 0, &[f.one(), f.one()]), 30);
        assert!(!r.holds);
        assert_eq!(r.first_failure, Some((0, f.one())));
    }

    #[test]
    fn membership_examples() {
        let f = f3();
        let zero = LaurentSeries::exact_zero(&f);
        let e2 = curve(&f, -1, 0, 1);
        let one = LaurentSeries::one(&f);
        assert!(check_cubic_membership(&e2, &x(&f), &zero, &one).unwrap().holds());
        let e1 = curve(&f, 1, 1, 1);
        assert!(check_cubic_membership(&e1, &x(&f), &zero, &zero).unwrap().holds());
        let x2 = LaurentSeries::monomial(&f.one(), 2);
        let r = check_cubic_membership(&e1, &x(&f), &x2, &zero).unwrap();
        assert!(!r.linear_residual.is_zero());
    }

    #[test]
    fn rational_seed_polynomial_is_exact() {
        let f = f3();
        let rf = RationalFunction::from_poly(Polynomial::x(&f));
        let s = Seed::from_rational(SeedKind::Alpha, &rf, 16).unwrap();
        assert!(s.series().is_exact());
    }

    #[test]
    fn batch_matches_single() {
        let f = f3();
        let e2 = curve(&f, -1, 0, 1);
        let seeds = vec![
            Seed::alpha(x(&f)).unwrap(),
            Seed::beta(LaurentSeries::monomial(&f.from_int(-1), -1)).unwrap(),
        ];
        for exec in [Exec::Sequential, Exec::Parallel] {
            let out = construct_batch(&e2, &seeds, 20, exec);
            assert_eq!(out.len(), 2);
            for (r, s) in out.iter().zip(&seeds) {
                let single = construct(&e2, s, 20).unwrap();
                let batch = r.as_ref().unwrap();
                assert_eq!(
                    single.iter().map(|e| e.eta.clone()).collect::<Vec<_>>(),
                    batch.iter().map(|e| e.eta.clone()).collect::<Vec<_>>()
                );
            }
        }
    }
}
