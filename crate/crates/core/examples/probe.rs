// temporary probe: minimizer behaviour with the ddr-form objective
use inlsc_core::ground_state::*;
use inlsc_core::grid::*;
use inlsc_core::params::*;
use num_rational::Rational64;

fn main() {
    let params = ParamSet::critical(3, Rational64::new(1, 1), Nonlinearity::Focusing, 0.0).unwrap();
    let want = libm::pow(8.0 * std::f64::consts::PI / 3.0, 0.25);

    // W seed: should be nearly stationary now.
    let grid = RadialGrid::with_extent(3, 400.0, 8000).unwrap();
    let spec = GroundStateSpec::new(3, 1.0, 0.0, 1.0).unwrap();
    let seed = spec.sample(&grid);
    let opts = MinimizeOptions { max_iters: 300, step: 0.5, tol: 1e-6 };
    let out = minimize_quotient(&params, &seed, &opts).unwrap();
    println!("W-seed: iters={} q0={:.8} qend={:.8} diverged={}", out.iterations, out.trace[0], out.quotient, out.diverged);

    // Gaussian seed, production grid, full budget.
    let grid2 = RadialGrid::with_extent(3, 1000.0, 20_000).unwrap();
    let seed2 = RadialField::from_real_fn(grid2.clone(), |r| libm::exp(-r * r));
    let t0 = std::time::Instant::now();
    let opts2 = MinimizeOptions { max_iters: 5000, step: 1.0, tol: 1e-10 };
    let out2 = minimize_quotient(&params, &seed2, &opts2).unwrap();
    println!("gauss-seed: iters={} q={:.8} want={:.8} rel={:+.3e} diverged={} elapsed={:?}",
        out2.iterations, out2.quotient, want, (out2.quotient - want) / want, out2.diverged, t0.elapsed());
    for k in [1usize, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 3000, 4000, 5000] {
        if k < out2.trace.len() {
            println!("  it {k}: {:.8} rel={:+.3e}", out2.trace[k], (out2.trace[k] - want) / want);
        }
    }
}
