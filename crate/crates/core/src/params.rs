//! Exact parameter algebra: derived exponents, Strichartz admissibility,
//! Sobolev-equivalence windows, and well-posedness regime checks.
//!
//! Everything that is rational in the inputs is computed with exact rational
//! arithmetic; only `rho` and `beta` (which involve a square root) are floats.

use core::fmt;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

/// Sign of the nonlinearity: `lambda = -1` focusing, `lambda = +1` defocusing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonlinearity {
    Focusing,
    Defocusing,
}

impl Nonlinearity {
    pub fn lambda(self) -> f64 {
        match self {
            Nonlinearity::Focusing => -1.0,
            Nonlinearity::Defocusing => 1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ParamError {
    DimensionTooSmall(u32),
    InhomogeneityOutOfRange(Rational64),
    NonlinearityPowerNotPositive(Rational64),
    PotentialBelowHardy { c: f64, c_d: f64 },
    SobolevOrderOutOfRange(f64),
    PositivityFactorFails { d: u32, b: Rational64 },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::DimensionTooSmall(d) => write!(f, "dimension d = {d} must be >= 3"),
            ParamError::InhomogeneityOutOfRange(b) => {
                write!(f, "inhomogeneity exponent b = {b} must satisfy 0 < b < 2")
            }
            ParamError::NonlinearityPowerNotPositive(s) => {
                write!(f, "nonlinearity power sigma = {s} must be positive")
            }
            ParamError::PotentialBelowHardy { c, c_d } => write!(
                f,
                "potential coefficient c = {c} must exceed the Hardy bound -c(d) = -{c_d}"
            ),
            ParamError::SobolevOrderOutOfRange(s) => {
                write!(f, "Sobolev order s = {s} must lie in (0, 2)")
            }
            ParamError::PositivityFactorFails { d, b } => write!(
                f,
                "b = {b} violates b < 4/d = 4/{d}; the auxiliary Holder exponents degenerate"
            ),
        }
    }
}

/// Physical/model parameters of the equation.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamSet {
    pub d: u32,
    pub b: Rational64,
    pub sigma: Rational64,
    pub lambda: Nonlinearity,
    pub c: f64,
}

/// The Hardy constant `c(d) = ((d-2)/2)^2`, exact.
pub fn hardy_constant(d: u32) -> Rational64 {
    let m = i64::from(d) - 2;
    Rational64::new(m * m, 4)
}

impl ParamSet {
    pub fn new(
        d: u32,
        b: Rational64,
        sigma: Rational64,
        lambda: Nonlinearity,
        c: f64,
    ) -> Result<Self, ParamError> {
        if d < 3 {
            return Err(ParamError::DimensionTooSmall(d));
        }
        if b <= Rational64::zero() || b >= Rational64::from_integer(2) {
            return Err(ParamError::InhomogeneityOutOfRange(b));
        }
        if sigma <= Rational64::zero() {
            return Err(ParamError::NonlinearityPowerNotPositive(sigma));
        }
        let c_d = hardy_constant(d).to_f64().unwrap();
        if !(c > -c_d) {
            return Err(ParamError::PotentialBelowHardy { c, c_d });
        }
        Ok(ParamSet { d, b, sigma, lambda, c })
    }

    /// Parameters at the energy-critical power `sigma = (4-2b)/(d-2)`.
    pub fn critical(d: u32, b: Rational64, lambda: Nonlinearity, c: f64) -> Result<Self, ParamError> {
        let sigma = energy_critical_power(d, b);
        ParamSet::new(d, b, sigma, lambda, c)
    }

    pub fn derive(&self) -> DerivedExponents {
        derive(self)
    }

    /// `sigma` as a float, for the quadrature-side code.
    pub fn sigma_f64(&self) -> f64 {
        self.sigma.to_f64().unwrap()
    }

    pub fn b_f64(&self) -> f64 {
        self.b.to_f64().unwrap()
    }

    /// True iff `sigma` equals the energy-critical power exactly.
    pub fn is_energy_critical(&self) -> bool {
        self.sigma == energy_critical_power(self.d, self.b)
    }
}

/// `sigma_star = (4-2b)/(d-2)`.
pub fn energy_critical_power(d: u32, b: Rational64) -> Rational64 {
    (Rational64::from_integer(4) - b * 2) / Rational64::from_integer(i64::from(d) - 2)
}

/// `sigma_mass = (4-2b)/d`.
pub fn mass_critical_power(d: u32, b: Rational64) -> Rational64 {
    (Rational64::from_integer(4) - b * 2) / Rational64::from_integer(i64::from(d))
}

/// `rho = (d-2)/2 - sqrt(((d-2)/2)^2 + c)`; positive for c < 0, zero at c = 0.
pub fn rho_exponent(d: u32, c: f64) -> f64 {
    let half = (f64::from(d) - 2.0) / 2.0;
    half - libm::sqrt(half * half + c)
}

/// Time exponent of an admissible pair; `(infinity, 2)` is the endpoint pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaExp {
    Finite(Rational64),
    Infinity,
}

impl GammaExp {
    /// `2/gamma`, the quantity the admissibility relation constrains.
    fn two_over(self) -> Rational64 {
        match self {
            GammaExp::Finite(g) => Rational64::from_integer(2) / g,
            GammaExp::Infinity => Rational64::zero(),
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            GammaExp::Finite(g) => g.to_f64().unwrap(),
            GammaExp::Infinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for GammaExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaExp::Finite(g) => write!(f, "{g}"),
            GammaExp::Infinity => write!(f, "inf"),
        }
    }
}

/// A candidate Strichartz pair `(gamma, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdmissiblePair {
    pub gamma: GammaExp,
    pub p: Rational64,
}

impl AdmissiblePair {
    pub fn finite(gamma: Rational64, p: Rational64) -> Self {
        AdmissiblePair { gamma: GammaExp::Finite(gamma), p }
    }

    pub fn endpoint_infinite(p: Rational64) -> Self {
        AdmissiblePair { gamma: GammaExp::Infinity, p }
    }
}

/// The time exponent paired with `p` by `2/gamma = d/2 - d/p`.
pub fn gamma_for(d: u32, p: Rational64) -> GammaExp {
    let d = Rational64::from_integer(i64::from(d));
    let rhs = d / 2 - d / p;
    if rhs.is_zero() {
        GammaExp::Infinity
    } else {
        GammaExp::Finite(Rational64::from_integer(2) / rhs)
    }
}

/// Dual Lebesgue exponent `p' = p/(p-1)`.
pub fn dual_exponent(p: Rational64) -> Rational64 {
    p / (p - 1)
}

/// Exact admissibility test: `2 <= p <= 2d/(d-2)` and `2/gamma = d/2 - d/p`.
pub fn is_admissible(d: u32, pair: &AdmissiblePair) -> bool {
    let two = Rational64::from_integer(2);
    let d_rat = Rational64::from_integer(i64::from(d));
    let p_max = d_rat * 2 / (d_rat - 2);
    if pair.p < two || pair.p > p_max {
        return false;
    }
    pair.gamma.two_over() == d_rat / 2 - d_rat / pair.p
}

/// All exponents derived from a parameter set. Rational fields are exact;
/// `rho` and `beta` carry the square root of `c(d) + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedExponents {
    pub c_d: Rational64,
    pub sigma_star: Rational64,
    pub sigma_mass: Rational64,
    pub s_c: Rational64,
    pub rho: f64,
    pub beta: f64,
    /// Contraction-space exponent `r = 2d(d+2-2b)/(d^2-2db+4)`.
    pub r: Rational64,
    /// Sobolev endpoint `2d/(d-2)`.
    pub r_bar: Rational64,
    pub gamma_r: GammaExp,
    /// Lower bound on `c` for the Sobolev-norm equivalence at `p = r`:
    /// `-((d+2-2b)^2-4)/(d+2-2b)^2 * c(d)`.
    pub c_equiv_threshold: Rational64,
}

/// Compute every derived exponent for a validated parameter set.
pub fn derive(params: &ParamSet) -> DerivedExponents {
    let d = Rational64::from_integer(i64::from(params.d));
    let b = params.b;
    let two = Rational64::from_integer(2);

    let c_d = hardy_constant(params.d);
    let sigma_star = energy_critical_power(params.d, b);
    let sigma_mass = mass_critical_power(params.d, b);
    let s_c = d / 2 - (two - b) / params.sigma;

    let rho = rho_exponent(params.d, params.c);
    let beta = 1.0 - 2.0 * rho / (f64::from(params.d) - 2.0);

    let k = d + 2 - b * 2;
    let r = d * k * 2 / (d * d - d * b * 2 + 4);
    let r_bar = d * 2 / (d - 2);
    let gamma_r = gamma_for(params.d, r);
    let c_equiv_threshold = -(k * k - 4) / (k * k) * c_d;

    DerivedExponents {
        c_d,
        sigma_star,
        sigma_mass,
        s_c,
        rho,
        beta,
        r,
        r_bar,
        gamma_r,
        c_equiv_threshold,
    }
}

/// Open interval of Lebesgue exponents `p` on which the `P_c`-Sobolev norm
/// `|| . ||_{H^{s,p}_c}` is equivalent to the usual one: `(1, d/s)` for
/// `c >= 0`, `(d/(d-rho), d/(s+rho))` for `-c(d) <= c < 0`.
pub fn equivalence_window(d: u32, c: f64, s: f64) -> Result<(f64, f64), ParamError> {
    if d < 3 {
        return Err(ParamError::DimensionTooSmall(d));
    }
    if !(s > 0.0 && s < 2.0) {
        return Err(ParamError::SobolevOrderOutOfRange(s));
    }
    let c_d = hardy_constant(d).to_f64().unwrap();
    if c < -c_d {
        return Err(ParamError::PotentialBelowHardy { c, c_d });
    }
    let d = f64::from(d);
    if c >= 0.0 {
        Ok((1.0, d / s))
    } else {
        let rho = rho_exponent(d as u32, c);
        Ok((d / (d - rho), d / (s + rho)))
    }
}

/// Per-condition report of the local-theory hypotheses.
#[derive(Clone, Debug)]
pub struct WellposedReport {
    pub sigma_is_critical: bool,
    pub b_below_4_over_d: bool,
    pub c_above_threshold: bool,
    pub r_in_window: bool,
    pub r_bar_dual_in_window: bool,
    pub c_equiv_threshold: Rational64,
    /// Equivalence window for `s = 1` at this `c`.
    pub window: (f64, f64),
    pub r: Rational64,
    pub r_bar_dual: Rational64,
}

impl WellposedReport {
    pub fn passed(&self) -> bool {
        self.sigma_is_critical
            && self.b_below_4_over_d
            && self.c_above_threshold
            && self.r_in_window
            && self.r_bar_dual_in_window
    }
}

/// Check the hypotheses of the local theory: `sigma = sigma_star`,
/// `0 < b < 4/d`, `c` above the equivalence threshold, and both `r` and the
/// dual endpoint `(2d/(d-2))'` inside the `s = 1` equivalence window.
///
/// The threshold comparison and the window membership are recorded
/// separately; they coincide analytically but are independent checks here.
pub fn validate_wellposed(params: &ParamSet) -> WellposedReport {
    let derived = derive(params);
    let four_over_d = Rational64::new(4, i64::from(params.d));
    let threshold = derived.c_equiv_threshold.to_f64().unwrap();
    // s = 1 is the regularity the contraction argument runs at.
    let window = equivalence_window(params.d, params.c, 1.0).expect("validated params");
    let r_f = derived.r.to_f64().unwrap();
    let r_bar_dual = dual_exponent(derived.r_bar);
    let r_bar_dual_f = r_bar_dual.to_f64().unwrap();

    WellposedReport {
        sigma_is_critical: params.sigma == derived.sigma_star,
        b_below_4_over_d: params.b < four_over_d,
        c_above_threshold: params.c > threshold,
        r_in_window: window.0 < r_f && r_f < window.1,
        r_bar_dual_in_window: window.0 < r_bar_dual_f && r_bar_dual_f < window.1,
        c_equiv_threshold: derived.c_equiv_threshold,
        window,
        r: derived.r,
        r_bar_dual,
    }
}

/// One exact identity between rational exponents.
#[derive(Clone, Copy, Debug)]
pub struct IdentityCheck {
    pub lhs: Rational64,
    pub rhs: Rational64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Auxiliary Holder exponents of the nonlinear estimate and the identities
/// tying them to the dual endpoint exponents.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    /// `1/rho_hat = 1/r - (1/d)(1 - (b+1)/(sigma+1))`.
    pub rho_hat_inv: Rational64,
    /// `1/gamma_hat = 1/r - (1/d)(1 - b/sigma)`.
    pub gamma_hat_inv: Rational64,
    /// `1 - (b+1)/(sigma+1)`, positive exactly when `b < 4/d`.
    pub positivity_factor: Rational64,
    /// `1/r_bar' = (sigma+1) / rho_hat`.
    pub rbar_dual_vs_rho_hat: IdentityCheck,
    /// `1/r_bar' = sigma/gamma_hat + 1/r`.
    pub rbar_dual_vs_gamma_hat: IdentityCheck,
    /// `1/gamma(r_bar)' = (sigma+1)/gamma(r)`.
    pub gamma_dual_identity: IdentityCheck,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.rbar_dual_vs_rho_hat.holds()
            && self.rbar_dual_vs_gamma_hat.holds()
            && self.gamma_dual_identity.holds()
    }
}

/// Verify, in exact rationals, the exponent identities behind the nonlinear
/// estimates at the critical power. Requires `0 < b < 4/d` so that the
/// auxiliary exponents are nondegenerate.
pub fn exponent_identities(d: u32, b: Rational64) -> Result<IdentityReport, ParamError> {
    if d < 3 {
        return Err(ParamError::DimensionTooSmall(d));
    }
    if b <= Rational64::zero() {
        return Err(ParamError::InhomogeneityOutOfRange(b));
    }
    if b >= Rational64::new(4, i64::from(d)) {
        return Err(ParamError::PositivityFactorFails { d, b });
    }

    let one = Rational64::from_integer(1);
    let d_rat = Rational64::from_integer(i64::from(d));
    let sigma = energy_critical_power(d, b);

    let positivity_factor = one - (b + 1) / (sigma + 1);

    let k = d_rat + 2 - b * 2;
    let r = d_rat * k * 2 / (d_rat * d_rat - d_rat * b * 2 + 4);
    let r_bar = d_rat * 2 / (d_rat - 2);
    let rbar_dual_inv = one - r_bar.recip();

    let rho_hat_inv = r.recip() - (one / d_rat) * positivity_factor;
    let gamma_hat_inv = r.recip() - (one / d_rat) * (one - b / sigma);

    let rbar_dual_vs_rho_hat = IdentityCheck {
        lhs: rbar_dual_inv,
        rhs: (sigma + 1) * rho_hat_inv,
    };
    let rbar_dual_vs_gamma_hat = IdentityCheck {
        lhs: rbar_dual_inv,
        rhs: sigma * gamma_hat_inv + r.recip(),
    };

    // gamma(r_bar) = 2 for every d, so its dual is 2 as well.
    let gamma_rbar = match gamma_for(d, r_bar) {
        GammaExp::Finite(g) => g,
        GammaExp::Infinity => unreachable!("r_bar > 2 for d >= 3"),
    };
    let gamma_r = match gamma_for(d, r) {
        GammaExp::Finite(g) => g,
        GammaExp::Infinity => unreachable!("r > 2 in the admitted b range"),
    };
    let gamma_dual_identity = IdentityCheck {
        lhs: dual_exponent(gamma_rbar).recip(),
        rhs: (sigma + 1) / gamma_r,
    };

    Ok(IdentityReport {
        rho_hat_inv,
        gamma_hat_inv,
        positivity_factor,
        rbar_dual_vs_rho_hat,
        rbar_dual_vs_gamma_hat,
        gamma_dual_identity,
    })
}
