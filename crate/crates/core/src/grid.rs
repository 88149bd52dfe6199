//! Cell-centered radial discretization of `R^d` for radial functions.
//!
//! Nodes sit at `r_j = (j + 1/2) h`, so the singular weights `|x|^{-2}` and
//! `|x|^{-b}` are never evaluated at the origin and the midpoint rule stays
//! well-defined for every integrable weight. Integrals over `R^d` reduce to
//! `omega * int f(r) r^{d-1-w} dr` with `omega` the unit-sphere area.
//!
//! The discrete `P_c = -Laplace + c/r^2` is a flux-form three-point stencil:
//! the cell face at `r = 0` carries zero flux automatically (its area
//! vanishes), the outer face uses a homogeneous Dirichlet ghost. The stencil
//! is self-adjoint in the weighted inner product `<u, v> = sum w_j u_j
//! conj(v_j)`, `w_j = omega h r_j^{d-1}`.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub enum GridError {
    DimensionTooSmall(u32),
    TooFewNodes(usize),
    BadSpacing(f64),
    WeightNotIntegrable { w: f64, d: u32 },
    LengthMismatch { expected: usize, got: usize },
    NonFiniteSample(usize),
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::DimensionTooSmall(d) => write!(f, "dimension d = {d} must be >= 3"),
            GridError::TooFewNodes(n) => write!(f, "grid needs at least 3 nodes, got {n}"),
            GridError::BadSpacing(h) => write!(f, "grid spacing h = {h} must be positive and finite"),
            GridError::WeightNotIntegrable { w, d } => {
                write!(f, "weight exponent w = {w} must satisfy w < d = {d}")
            }
            GridError::LengthMismatch { expected, got } => {
                write!(f, "sample length {got} does not match grid size {expected}")
            }
            GridError::NonFiniteSample(j) => write!(f, "non-finite sample at node {j}"),
        }
    }
}

/// `Gamma(d/2)` for integer `d >= 1` by the half-integer recursion.
fn gamma_half_integer(d: u32) -> f64 {
    let mut value = if d % 2 == 0 { 1.0 } else { libm::sqrt(PI) };
    let mut k = if d % 2 == 0 { 2 } else { 1 };
    while k + 2 <= d {
        value *= f64::from(k) / 2.0;
        k += 2;
    }
    value
}

/// Surface area of the unit `(d-1)`-sphere, `2 pi^{d/2} / Gamma(d/2)`.
pub fn unit_sphere_area(d: u32) -> f64 {
    let half = d / 2;
    let mut pi_pow = libm::pow(PI, f64::from(half));
    if d % 2 == 1 {
        pi_pow *= libm::sqrt(PI);
    }
    2.0 * pi_pow / gamma_half_integer(d)
}

/// Offset radial grid with midpoint quadrature.
#[derive(Debug)]
pub struct RadialGrid {
    d: u32,
    n: usize,
    h: f64,
    omega: f64,
    /// `r_j^{d-1}` at the nodes; the hot path of every quadrature.
    r_pow: Vec<f64>,
}

impl RadialGrid {
    pub fn new(d: u32, n: usize, h: f64) -> Result<Arc<Self>, GridError> {
        if d < 3 {
            return Err(GridError::DimensionTooSmall(d));
        }
        if n < 3 {
            return Err(GridError::TooFewNodes(n));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(GridError::BadSpacing(h));
        }
        let omega = unit_sphere_area(d);
        let r_pow = (0..n)
            .map(|j| libm::pow((j as f64 + 0.5) * h, f64::from(d - 1)))
            .collect();
        Ok(Arc::new(RadialGrid { d, n, h, omega, r_pow }))
    }

    /// Grid covering `[0, r_max]` with `n` cells.
    pub fn with_extent(d: u32, r_max: f64, n: usize) -> Result<Arc<Self>, GridError> {
        if n == 0 {
            return Err(GridError::TooFewNodes(0));
        }
        RadialGrid::new(d, n, r_max / n as f64)
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn spacing(&self) -> f64 {
        self.h
    }

    pub fn r_max(&self) -> f64 {
        self.n as f64 * self.h
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        (j as f64 + 0.5) * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.node(j))
    }

    /// Quadrature weight of node `j` in the weighted inner product,
    /// `omega h r_j^{d-1}`.
    #[inline]
    pub fn cell_weight(&self, j: usize) -> f64 {
        self.omega * self.h * self.r_pow[j]
    }

    /// `int_{R^d} |x|^{-w} f(|x|) dx` by the midpoint rule,
    /// `omega sum_j f_j r_j^{d-1-w} h`. Rejects `w >= d`.
    pub fn integrate(&self, samples: &[f64], w: f64) -> Result<f64, GridError> {
        if samples.len() != self.n {
            return Err(GridError::LengthMismatch { expected: self.n, got: samples.len() });
        }
        if w >= f64::from(self.d) {
            return Err(GridError::WeightNotIntegrable { w, d: self.d });
        }
        let mut acc = Kahan::default();
        if w == 0.0 {
            for (f, rp) in samples.iter().zip(&self.r_pow) {
                acc.add(f * rp);
            }
        } else {
            let ex = f64::from(self.d - 1) - w;
            for (j, f) in samples.iter().enumerate() {
                acc.add(f * libm::pow(self.node(j), ex));
            }
        }
        Ok(self.omega * self.h * acc.sum())
    }

    /// Midpoint quadrature of a closed-form radial profile.
    pub fn integrate_fn(&self, w: f64, f: impl Fn(f64) -> f64) -> Result<f64, GridError> {
        if w >= f64::from(self.d) {
            return Err(GridError::WeightNotIntegrable { w, d: self.d });
        }
        let ex = f64::from(self.d - 1) - w;
        let mut acc = Kahan::default();
        for j in 0..self.n {
            let r = self.node(j);
            acc.add(f(r) * libm::pow(r, ex));
        }
        Ok(self.omega * self.h * acc.sum())
    }

    /// Weighted inner product `omega h sum_j r_j^{d-1} u_j conj(v_j)`.
    pub fn weighted_dot(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        assert_eq!(u.len(), self.n);
        assert_eq!(v.len(), self.n);
        let mut re = Kahan::default();
        let mut im = Kahan::default();
        for j in 0..self.n {
            let z = u[j] * v[j].conj() * self.r_pow[j];
            re.add(z.re);
            im.add(z.im);
        }
        Complex64::new(re.sum(), im.sum()) * (self.omega * self.h)
    }

    /// `||u||^2` in the weighted inner product.
    pub fn weighted_norm_sq(&self, u: &[Complex64]) -> f64 {
        assert_eq!(u.len(), self.n);
        let mut acc = Kahan::default();
        for j in 0..self.n {
            acc.add(u[j].norm_sqr() * self.r_pow[j]);
        }
        self.omega * self.h * acc.sum()
    }
}

/// Neumaier compensated accumulator; keeps long quadrature sums at
/// round-off-of-the-result accuracy.
#[derive(Default)]
struct Kahan {
    s: f64,
    c: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    #[inline]
    fn sum(&self) -> f64 {
        self.s + self.c
    }
}

/// Complex radial profile sampled at the grid nodes.
#[derive(Clone, Debug)]
pub struct RadialField {
    grid: Arc<RadialGrid>,
    values: Vec<Complex64>,
}

impl RadialField {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<Complex64>) -> Result<Self, GridError> {
        if values.len() != grid.len() {
            return Err(GridError::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        if let Some(j) = values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GridError::NonFiniteSample(j));
        }
        Ok(RadialField { grid, values })
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        RadialField { grid, values: alloc::vec![Complex64::ZERO; n] }
    }

    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes().map(f).collect();
        RadialField { grid, values }
    }

    pub fn from_real_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `|u_j|^2` samples.
    pub fn abs2(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn scaled(&self, a: Complex64) -> Self {
        RadialField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|z| z * a).collect(),
        }
    }

    /// Pointwise difference, same grid.
    pub fn sub(&self, other: &RadialField) -> Self {
        assert_eq!(self.len(), other.len());
        RadialField {
            grid: self.grid.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Radial derivative: second-order centered differences in the interior,
/// second-order one-sided stencils at both ends.
pub fn ddr(field: &RadialField) -> RadialField {
    let grid = field.grid().clone();
    let u = field.values();
    let n = u.len();
    assert!(n >= 3, "ddr needs at least 3 nodes");
    let inv2h = 1.0 / (2.0 * grid.spacing());

    let mut out = Vec::with_capacity(n);
    out.push((-3.0 * u[0] + 4.0 * u[1] - u[2]) * inv2h);
    for j in 1..n - 1 {
        out.push((u[j + 1] - u[j - 1]) * inv2h);
    }
    out.push((3.0 * u[n - 1] - 4.0 * u[n - 2] + u[n - 3]) * inv2h);

    RadialField { grid, values: out }
}

/// Rows of the discrete `P_c` as a real tridiagonal system
/// (`sub`, `diag`, `sup`). Shared by the operator application and the
/// Crank–Nicolson matrix assembly.
pub(crate) fn pc_stencil(grid: &RadialGrid, c: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let n = grid.len();
    let h = grid.spacing();
    let d = f64::from(grid.dim() - 1);
    let inv_h2 = 1.0 / (h * h);

    // Face areas r^{d-1} at r = j h; the j = 0 face vanishes identically.
    let face = |j: usize| libm::pow(j as f64 * h, d);

    let mut sub = Vec::with_capacity(n - 1);
    let mut diag = Vec::with_capacity(n);
    let mut sup = Vec::with_capacity(n - 1);

    for j in 0..n {
        let r = grid.node(j);
        let inv_rp = 1.0 / grid.r_pow[j];
        let lo = face(j);
        let hi = face(j + 1);
        diag.push((lo + hi) * inv_rp * inv_h2 + c / (r * r));
        if j > 0 {
            sub.push(-lo * inv_rp * inv_h2);
        }
        if j + 1 < n {
            sup.push(-hi * inv_rp * inv_h2);
        }
    }
    (sub, diag, sup)
}

/// Apply the discrete `P_c = -Laplace + c |x|^{-2}` (flux form, zero flux at
/// the origin face, Dirichlet ghost beyond `r_max`).
pub fn apply_pc(field: &RadialField, c: f64) -> RadialField {
    let grid = field.grid().clone();
    let u = field.values();
    let (sub, diag, sup) = pc_stencil(&grid, c);
    let n = u.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = u[j] * diag[j];
        if j > 0 {
            acc += u[j - 1] * sub[j - 1];
        }
        if j + 1 < n {
            acc += u[j + 1] * sup[j];
        }
        out.push(acc);
    }
    RadialField { grid, values: out }
}

/// Signed radial Laplacian of real samples in the same flux form
/// (`Laplace f = f'' + (d-1) f'/r` for smooth radial `f`).
pub fn radial_laplacian(grid: &RadialGrid, samples: &[f64]) -> Vec<f64> {
    assert_eq!(samples.len(), grid.len());
    let (sub, diag, sup) = pc_stencil(grid, 0.0);
    let n = samples.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = samples[j] * diag[j];
        if j > 0 {
            acc += samples[j - 1] * sub[j - 1];
        }
        if j + 1 < n {
            acc += samples[j + 1] * sup[j];
        }
        out.push(-acc);
    }
    out
}
