use num_complex::Complex64;
use unirep::grid::{bump, BumpProfile, SampledFunction};
use unirep::models::{apply_generator, Generator, RepModel};
use unirep::solver::{
    fourier_solve, obstruction_integral, primitive_solve, spectral_density, verify_solution,
    BoundSpec, FourierOutcome,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = RepModel::Rho { t: 1.0 };

    // Closed-form primitive: g = phi(x) psi'(y) -> f = phi psi.
    for n in [256usize, 512, 1024] {
        let grids = model.default_grids(n)?;
        let phi = BumpProfile::new(1.5, 2.5, 1.0, 3.5)?;
        let psi = BumpProfile::new(-1.0, 1.0, -3.5, 3.5)?;
        let g = SampledFunction::from_fn(grids.clone(), |c| {
            Complex64::new(phi.eval(c[0]) * psi.eval_deriv(c[1]), 0.0)
        })?;
        let f = primitive_solve(&g, 1)?;
        let closed = SampledFunction::from_fn(grids, |c| {
            Complex64::new(phi.eval(c[0]) * psi.eval(c[1]), 0.0)
        })?;
        let rel = f.sub(&closed).l2_norm() / closed.l2_norm();
        let maxa = f.sub(&closed).max_abs();
        println!("primitive closed form n={n}: rel {rel:.3e} maxabs {maxa:.3e}");
    }

    // Fourier route vs primitive route on a Gaussian coboundary.
    let grids = model.default_grids(256)?;
    // Odd in y: the solution's y-mean vanishes, so the zeroed frequency
    // bin drops nothing and the recovered f decays at the box edge.
    let f0 = SampledFunction::from_fn(grids.clone(), |c| {
        Complex64::new(
            (-((c[0] - 4.0) / 0.8).powi(2)).exp()
                * (c[1] / 1.2)
                * (-(c[1] / 1.2).powi(2)).exp(),
            0.0,
        )
    })?;
    let g = apply_generator(&model, &Generator::V, &f0)?;
    let rep_f = match fourier_solve(&g, &model)? {
        FourierOutcome::Solution(f) => f,
        FourierOutcome::Diverges { .. } => panic!("unexpected divergence"),
    };
    let recov = rep_f.sub(&f0).l2_norm() / f0.l2_norm();
    println!("fourier recovery rel {recov:.3e}");
    let r_fourier = verify_solution(&model, &Generator::V, &rep_f, &g, BoundSpec::None)?;
    let scaled = g.coord_multiply(0, -1)?.scale(-I);
    let f_prim = primitive_solve(&scaled, 1)?.scale(-I);
    let r_prim = verify_solution(&model, &Generator::V, &f_prim, &g, BoundSpec::None)?;
    let diff_image = apply_generator(&model, &Generator::V, &rep_f.sub(&f_prim))?;
    println!(
        "fourier res {:.3e} prim res {:.3e} V(diff) rel {:.3e}",
        r_fourier.residual_rel,
        r_prim.residual_rel,
        diff_image.l2_norm() / g.l2_norm()
    );

    // Noise sensitivity of the residual metric.
    let f = model.standard_bump(256)?;
    let rhs = apply_generator(&model, &Generator::U, &f)?;
    let base = verify_solution(&model, &Generator::U, &f, &rhs, BoundSpec::None)?;
    let shape = bump(
        &model.default_grids(256)?,
        &[(1.8, 2.8), (0.5, 1.5)],
        &[(1.2, 3.4), (-0.5, 2.5)],
    )?;
    let noisy = f.add(&shape.scale(Complex64::new(0.01 * f.l2_norm() / shape.l2_norm(), 0.0)));
    let pert = verify_solution(&model, &Generator::U, &noisy, &rhs, BoundSpec::None)?;
    println!("residual base {:.3e} noisy {:.3e}", base.residual_rel, pert.residual_rel);

    // Spectral density closed form on a separable bump.
    let v = bump(
        &model.default_grids(256)?,
        &[(1.5, 2.5), (-1.0, 1.0)],
        &[(1.0, 3.5), (-3.5, 3.5)],
    )?;
    let d = spectral_density(&v, &model, &Generator::Y2)?;
    let xg = *v.grid(0);
    let yg = *v.grid(1);
    let phi = BumpProfile::new(1.5, 2.5, 1.0, 3.5)?;
    let psi = BumpProfile::new(-1.0, 1.0, -3.5, 3.5)?;
    let ynorm = (0..yg.len())
        .map(|k| psi.eval(yg.point(k)).powi(2) * yg.spacing())
        .sum::<f64>()
        .sqrt();
    let mut worst: f64 = 0.0;
    for k in 0..xg.len() {
        let expect = phi.eval(d.chi_grid[k]).abs() * ynorm;
        worst = worst.max((d.density[k] - expect).abs());
    }
    println!(
        "density closed-form worst {:.3e}, plancherel {:.3e}",
        worst,
        d.plancherel_defect(v.l2_norm())
    );

    // Obstruction on the coboundary image.
    let gv = apply_generator(&model, &Generator::V, &v)?;
    let rep = obstruction_integral(&gv, 1, unirep::solver::default_obstruction_tol(&gv, 1))?;
    println!("V-image obstruction max {:.3e} tol {:.3e}", rep.max_abs, rep.tolerance_used);

    Ok(())
}
