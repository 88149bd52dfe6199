//! Conserved and variational quantities: mass, the `H^1_c` seminorm, the
//! weighted potential term, energy, the Hardy–Sobolev quotient, and the
//! threshold curve `g`.

use alloc::vec::Vec;
use core::fmt;

use crate::grid::{ddr, GridError, RadialField};
use crate::params::ParamSet;

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionalError {
    ZeroField,
    NotEnergyCritical,
    Grid(GridError),
}

impl fmt::Display for FunctionalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalError::ZeroField => write!(f, "functional undefined on the zero field"),
            FunctionalError::NotEnergyCritical => {
                write!(f, "operation requires the energy-critical power sigma = (4-2b)/(d-2)")
            }
            FunctionalError::Grid(e) => write!(f, "{e}"),
        }
    }
}

impl From<GridError> for FunctionalError {
    fn from(e: GridError) -> Self {
        FunctionalError::Grid(e)
    }
}

/// One row of the time-series record.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    pub mass: f64,
    pub kinetic_c: f64,
    pub potential: f64,
    pub energy: f64,
    pub variance: f64,
    pub dt: f64,
}

/// `M(u) = int |u|^2 dx`.
pub fn mass(u: &RadialField) -> f64 {
    u.grid().integrate(&u.abs2(), 0.0).expect("w = 0 is always integrable")
}

/// Squared `H^1_c` seminorm, `int |grad u|^2 + c |x|^{-2} |u|^2 dx`
/// (no 1/2 factors).
pub fn kinetic_c(u: &RadialField, c: f64) -> f64 {
    let du = ddr(u);
    let grad_sq: Vec<f64> = du.values().iter().map(|z| z.norm_sqr()).collect();
    let grid = u.grid();
    let grad_part = grid.integrate(&grad_sq, 0.0).expect("w = 0");
    if c == 0.0 {
        grad_part
    } else {
        grad_part + c * grid.integrate(&u.abs2(), 2.0).expect("w = 2 < d")
    }
}

/// `|z|^{sigma+2}` through `|z|^2 * exp(sigma log|z|)`, with `0 -> 0`;
/// `sigma` is not an integer in general.
#[inline]
fn abs_pow_sigma_plus_2(norm_sqr: f64, sigma: f64) -> f64 {
    if norm_sqr == 0.0 {
        0.0
    } else {
        norm_sqr * libm::exp(0.5 * sigma * libm::log(norm_sqr))
    }
}

/// `int |x|^{-b} |u|^{sigma+2} dx`.
pub fn potential_term(u: &RadialField, b: f64, sigma: f64) -> f64 {
    debug_assert!(b > 0.0 && b < 2.0);
    let samples: Vec<f64> =
        u.values().iter().map(|z| abs_pow_sigma_plus_2(z.norm_sqr(), sigma)).collect();
    u.grid().integrate(&samples, b).expect("b < 2 <= d - 1")
}

/// `E(u) = kinetic_c/2 + lambda * potential/(sigma+2)`.
pub fn energy(u: &RadialField, params: &ParamSet) -> f64 {
    let sigma = params.sigma_f64();
    let kin = kinetic_c(u, params.c);
    let pot = potential_term(u, params.b_f64(), sigma);
    0.5 * kin + params.lambda.lambda() * pot / (sigma + 2.0)
}

/// Variance `int |x|^2 |u|^2 dx`.
pub fn variance(u: &RadialField) -> f64 {
    u.grid().integrate(&u.abs2(), -2.0).expect("w = -2 < d")
}

/// Hardy–Sobolev quotient `sqrt(kinetic_c) / potential^{1/(sigma*+2)}`.
/// Defined at the energy-critical power only; scale- and
/// amplitude-invariant.
pub fn hs_quotient(u: &RadialField, params: &ParamSet) -> Result<f64, FunctionalError> {
    if !params.is_energy_critical() {
        return Err(FunctionalError::NotEnergyCritical);
    }
    if u.values().iter().all(|z| z.norm_sqr() == 0.0) {
        return Err(FunctionalError::ZeroField);
    }
    let sigma = params.sigma_f64();
    let kin = kinetic_c(u, params.c);
    let pot = potential_term(u, params.b_f64(), sigma);
    Ok(libm::sqrt(kin) / libm::pow(pot, 1.0 / (sigma + 2.0)))
}

/// Threshold curve `g(y) = y^2/2 - C^{sigma*+2} y^{sigma*+2}/(sigma*+2)`.
/// Its unique positive critical point is `y* = C^{-(sigma*+2)/sigma*}`, the
/// seminorm of the extremizer when `C` is the sharp constant.
pub fn g_curve(y: f64, c_hs: f64, sigma_star: f64) -> f64 {
    debug_assert!(y >= 0.0 && c_hs > 0.0);
    let p = sigma_star + 2.0;
    0.5 * y * y - libm::pow(c_hs, p) * libm::pow(y, p) / p
}

/// Bundle every diagnostic for one snapshot, sharing the derivative pass.
pub fn diagnostics(u: &RadialField, params: &ParamSet, t: f64, dt: f64) -> Diagnostics {
    let sigma = params.sigma_f64();
    let kin = kinetic_c(u, params.c);
    let pot = potential_term(u, params.b_f64(), sigma);
    Diagnostics {
        t,
        mass: mass(u),
        kinetic_c: kin,
        potential: pot,
        energy: 0.5 * kin + params.lambda.lambda() * pot / (sigma + 2.0),
        variance: variance(u),
        dt,
    }
}
