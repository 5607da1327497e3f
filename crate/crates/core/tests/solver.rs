//! Solver integration: obstruction verdicts, both solve routes against
//! closed-form and cross-route oracles, spectral densities, and fiber
//! cocycle solves.

use num_complex::Complex64;
use unirep::error::Error;
use unirep::grid::{bump, BumpProfile, Grid1D, SampledFunction, Weight};
use unirep::models::{apply_generator, Generator, Parity, RepModel};
use unirep::solver::{
    default_obstruction_tol, density_limit_at_zero, fiber_cocycle_solve, fourier_solve,
    obstruction_integral, primitive_solve, primitive_solve_unchecked, spectral_density,
    sweep_fibers, verify_solution, BoundSpec, FourierOutcome, ObstructionVerdict, SweepFamily,
    SweepProblem,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn separable_bump(n: usize) -> SampledFunction {
    let model = RepModel::Rho { t: 1.0 };
    bump(
        &model.default_grids(n).unwrap(),
        &[(1.5, 2.5), (-1.0, 1.0)],
        &[(1.0, 3.5), (-3.5, 3.5)],
    )
    .unwrap()
}

/// phi(x) psi'(y) with the closed-form primitive phi(x) psi(y).
fn derivative_pair(n: usize) -> (SampledFunction, SampledFunction) {
    let model = RepModel::Rho { t: 1.0 };
    let grids = model.default_grids(n).unwrap();
    let phi = BumpProfile::new(1.5, 2.5, 1.0, 3.5).unwrap();
    let psi = BumpProfile::new(-1.0, 1.0, -3.5, 3.5).unwrap();
    let g = SampledFunction::from_fn(grids.clone(), |c| {
        Complex64::new(phi.eval(c[0]) * psi.eval_deriv(c[1]), 0.0)
    })
    .unwrap();
    let closed = SampledFunction::from_fn(grids, |c| {
        Complex64::new(phi.eval(c[0]) * psi.eval(c[1]), 0.0)
    })
    .unwrap();
    (g, closed)
}

#[test]
fn obstruction_separates_derivative_data_from_positive_data() {
    let (g, _) = derivative_pair(256);
    let rep = obstruction_integral(&g, 1, default_obstruction_tol(&g, 1)).unwrap();
    assert!(matches!(rep.verdict, ObstructionVerdict::Vanishes));
    assert_eq!(rep.per_slice_integral.len(), 256);
    assert!(rep.max_abs <= rep.tolerance_used);

    let v = separable_bump(256);
    let rep = obstruction_integral(&v, 1, default_obstruction_tol(&v, 1)).unwrap();
    assert!(matches!(rep.verdict, ObstructionVerdict::Fails));
    assert!(rep.max_abs > rep.tolerance_used);
}

#[test]
fn generator_images_pass_the_obstruction() {
    let model = RepModel::Rho { t: 1.0 };
    let v = separable_bump(256);
    let g = apply_generator(&model, &Generator::V, &v).unwrap();
    let rep = obstruction_integral(&g, 1, default_obstruction_tol(&g, 1)).unwrap();
    assert!(matches!(rep.verdict, ObstructionVerdict::Vanishes));
    assert!(rep.max_abs <= 1e-12, "slice integral {:.3e}", rep.max_abs);
}

#[test]
fn primitive_solve_matches_the_antiderivative() {
    let mut rels = Vec::new();
    for n in [256usize, 512, 1024] {
        let (g, closed) = derivative_pair(n);
        let f = primitive_solve(&g, 1).unwrap();
        rels.push(f.sub(&closed).l2_norm() / closed.l2_norm());
    }
    assert!(rels[2] <= 1e-8, "closed-form error {:.3e}", rels[2]);
    // The composite rule is fourth order; each doubling gains ~16x.
    assert!(rels[0] / rels[1] >= 10.0, "{:.3e} -> {:.3e}", rels[0], rels[1]);
    assert!(rels[1] / rels[2] >= 10.0, "{:.3e} -> {:.3e}", rels[1], rels[2]);
}

#[test]
fn primitive_solve_requires_vanishing_obstruction() {
    let v = separable_bump(256);
    assert!(matches!(primitive_solve(&v, 1), Err(Error::Obstruction(_))));
    // The unchecked variant proceeds for counterexample studies.
    let f = primitive_solve_unchecked(&v, 1).unwrap();
    assert!(f.l2_norm() > 0.0);
}

#[test]
fn primitive_route_solves_the_flow_equation() {
    let model = RepModel::Rho { t: 1.0 };
    let g = {
        let grids = model.default_grids(256).unwrap();
        let phi = BumpProfile::new(1.5, 2.5, 1.0, 3.5).unwrap();
        let psi = BumpProfile::new(-1.0, 1.0, -3.5, 3.5).unwrap();
        SampledFunction::from_fn(grids, |c| {
            Complex64::new(phi.eval(c[0]) * psi.eval_deriv(c[1]), 0.0)
        })
        .unwrap()
    };
    let scaled = g.coord_multiply(0, -1).unwrap().scale(-I);
    let f = primitive_solve(&scaled, 1).unwrap().scale(-I);
    let report =
        verify_solution(&model, &Generator::V, &f, &g, BoundSpec::TailData { g: &g }).unwrap();
    assert!(report.residual_rel <= 1e-3, "residual {:.3e}", report.residual_rel);
    assert!(report.bound_holds, "{} > {}", report.bound_lhs, report.bound_rhs);
    assert!(report.solution_norm > 0.0);
    assert_eq!(report.bound_lhs, report.solution_norm);
}

#[test]
fn residual_metric_reacts_to_noise() {
    let model = RepModel::Rho { t: 1.0 };
    let f = model.standard_bump(256).unwrap();
    let rhs = apply_generator(&model, &Generator::U, &f).unwrap();
    let base = verify_solution(&model, &Generator::U, &f, &rhs, BoundSpec::None).unwrap();
    assert!(base.residual_rel <= 1e-12);

    let shape = bump(
        &model.default_grids(256).unwrap(),
        &[(1.8, 2.8), (0.5, 1.5)],
        &[(1.2, 3.4), (-0.5, 2.5)],
    )
    .unwrap();
    let noisy = f.add(&shape.scale(Complex64::new(0.01 * f.l2_norm() / shape.l2_norm(), 0.0)));
    let pert = verify_solution(&model, &Generator::U, &noisy, &rhs, BoundSpec::None).unwrap();
    assert!(pert.residual_rel >= 1e-3, "perturbed residual {:.3e}", pert.residual_rel);
    assert!(pert.residual_rel >= 10.0 * (base.residual_rel + 1e-8));
}

#[test]
fn fourier_route_recovers_zero_mean_solutions() {
    let model = RepModel::Rho { t: 1.0 };
    let grids = model.default_grids(256).unwrap();
    // Odd in y, so the solution's y-mean (the zeroed frequency bin)
    // vanishes and the division recovers f exactly.
    let f0 = SampledFunction::from_fn(grids, |c| {
        Complex64::new(
            (-((c[0] - 4.0) / 0.8).powi(2)).exp()
                * (c[1] / 1.2)
                * (-(c[1] / 1.2).powi(2)).exp(),
            0.0,
        )
    })
    .unwrap();
    let g = apply_generator(&model, &Generator::V, &f0).unwrap();
    let f = match fourier_solve(&g, &model).unwrap() {
        FourierOutcome::Solution(f) => f,
        FourierOutcome::Diverges { .. } => panic!("solvable data flagged as divergent"),
    };
    let recovery = f.sub(&f0).l2_norm() / f0.l2_norm();
    assert!(recovery <= 1e-12, "recovery {recovery:.3e}");

    let fr = verify_solution(&model, &Generator::V, &f, &g, BoundSpec::None).unwrap();
    assert!(fr.residual_rel <= 1e-10, "frequency-route residual {:.3e}", fr.residual_rel);

    // The tail-quadrature route reaches the same solution through
    // entirely different arithmetic.
    let scaled = g.coord_multiply(0, -1).unwrap().scale(-I);
    let fp = primitive_solve(&scaled, 1).unwrap().scale(-I);
    let pr = verify_solution(&model, &Generator::V, &fp, &g, BoundSpec::None).unwrap();
    assert!(pr.residual_rel <= 1e-4, "tail-route residual {:.3e}", pr.residual_rel);
    let drift = apply_generator(&model, &Generator::V, &f.sub(&fp)).unwrap();
    assert!(drift.l2_norm() / g.l2_norm() <= 1e-4);
}

#[test]
fn fourier_solve_flags_nonvanishing_slice_mass() {
    let model = RepModel::Rho { t: 1.0 };
    let v = separable_bump(256);
    match fourier_solve(&v, &model).unwrap() {
        FourierOutcome::Diverges { near_zero_energy, reference_energy } => {
            assert!(near_zero_energy > 1e3 * reference_energy);
        }
        FourierOutcome::Solution(_) => panic!("positive slice mass must flag divergence"),
    }
}

#[test]
fn fourier_solve_edge_cases() {
    let model = RepModel::Rho { t: 1.0 };
    let zero = SampledFunction::zeros(model.default_grids(64).unwrap()).unwrap();
    match fourier_solve(&zero, &model).unwrap() {
        FourierOutcome::Solution(f) => assert_eq!(f.l2_norm(), 0.0),
        FourierOutcome::Diverges { .. } => panic!("zero diverged"),
    }

    // A grid sampling x = 0 cannot be divided through.
    let grids = vec![
        Grid1D::new(-8.0, 8.0, 64, 0.0, Weight::Lebesgue).unwrap(),
        Grid1D::new(-8.0, 8.0, 64, 0.5, Weight::Lebesgue).unwrap(),
    ];
    let g = SampledFunction::from_fn(grids, |c| {
        Complex64::new((-c[0] * c[0] - c[1] * c[1]).exp(), 0.0)
    })
    .unwrap();
    assert!(matches!(fourier_solve(&g, &model), Err(Error::SingularGrid(_))));

    let tau = RepModel::Tau { t: 1.0, r: 0.0, z: 1.0 };
    let v = separable_bump(64);
    assert!(matches!(fourier_solve(&v, &tau), Err(Error::Domain(_))));
}

#[test]
fn spectral_density_matches_the_separable_form() {
    let model = RepModel::Rho { t: 1.0 };
    let v = separable_bump(256);
    let d = spectral_density(&v, &model, &Generator::Y2).unwrap();

    let xg = *v.grid(0);
    let yg = *v.grid(1);
    let phi = BumpProfile::new(1.5, 2.5, 1.0, 3.5).unwrap();
    let psi = BumpProfile::new(-1.0, 1.0, -3.5, 3.5).unwrap();
    let ynorm = (0..yg.len())
        .map(|k| psi.eval(yg.point(k)).powi(2) * yg.spacing())
        .sum::<f64>()
        .sqrt();
    assert_eq!(d.chi_grid.len(), xg.len());
    for k in 0..xg.len() {
        let expect = phi.eval(d.chi_grid[k]).abs() * ynorm;
        assert!((d.density[k] - expect).abs() <= 1e-12);
    }
    assert!(d.chi_grid.windows(2).all(|w| w[0] < w[1]));
    assert!(d.plancherel_defect(v.l2_norm()) <= 1e-10);
}

#[test]
fn densities_are_plancherel_normalized_across_realizations() {
    let rho = RepModel::Rho { t: 1.0 };
    let v = separable_bump(256);
    for gen in [Generator::Y1, Generator::Y2] {
        let d = spectral_density(&v, &rho, &gen).unwrap();
        assert!(d.plancherel_defect(v.l2_norm()) <= 1e-10, "{gen:?}");
        assert!(d.chi_grid.windows(2).all(|w| w[0] < w[1]), "{gen:?}");
    }

    let ind = RepModel::ind_line(3, 0.0, Parity::Plus).unwrap();
    let p = BumpProfile::new(-1.0, 1.0, -2.0, 2.0).unwrap();
    let w = SampledFunction::from_fn(ind.default_grids(256).unwrap(), |c| {
        Complex64::new(p.eval(c[0]) * p.eval(c[1]), 0.0)
    })
    .unwrap();
    let d = spectral_density(&w, &ind, &Generator::Root(2, 1)).unwrap();
    assert!(d.plancherel_defect(w.l2_norm()) <= 1e-10);

    assert!(matches!(
        spectral_density(&v, &rho, &Generator::X),
        Err(Error::NotDiagonalized(_))
    ));
}

#[test]
fn density_limit_falls_for_coboundary_data_only() {
    let p = BumpProfile::new(-1.0, 1.0, -2.0, 2.0).unwrap();
    let mut coboundary = Vec::new();
    let mut flat = Vec::new();
    // Wider boxes shrink the frequency bin; the window doubles so the
    // covered band stays fixed while the sampling refines.
    for (half, n, window) in [(8.0, 256usize, 8), (16.0, 512, 16)] {
        let ind = RepModel::ind_line(3, 0.0, Parity::Plus).unwrap();
        let grids: Vec<Grid1D> = (0..2)
            .map(|_| Grid1D::new(-half, half, n, 0.5, Weight::Lebesgue).unwrap())
            .collect();
        let f0 = SampledFunction::from_fn(grids, |c| {
            Complex64::new(p.eval(c[0]) * p.eval(c[1]), 0.0)
        })
        .unwrap();
        let v = apply_generator(&ind, &Generator::Root(2, 1), &f0).unwrap();
        let d = spectral_density(&v, &ind, &Generator::Root(2, 1)).unwrap();
        coboundary.push(density_limit_at_zero(&d, window).unwrap());

        let d0 = spectral_density(&f0, &ind, &Generator::Root(2, 1)).unwrap();
        flat.push(density_limit_at_zero(&d0, window).unwrap());
    }
    assert!(
        coboundary[1] < coboundary[0],
        "{:.4} -> {:.4}",
        coboundary[0],
        coboundary[1]
    );
    assert!((0.30..0.45).contains(&coboundary[0]), "{:.4}", coboundary[0]);
    assert!((0.15..0.25).contains(&coboundary[1]), "{:.4}", coboundary[1]);
    // Non-coboundary mass holds its level instead of draining.
    for (k, lim) in flat.iter().enumerate() {
        assert!((1.8..2.1).contains(lim), "stage {k}: {lim:.4}");
    }

    let ind = RepModel::ind_line(3, 0.0, Parity::Plus).unwrap();
    let f0 = SampledFunction::from_fn(ind.default_grids(64).unwrap(), |c| {
        Complex64::new(p.eval(c[0]) * p.eval(c[1]), 0.0)
    })
    .unwrap();
    let d = spectral_density(&f0, &ind, &Generator::Root(2, 1)).unwrap();
    assert!(matches!(density_limit_at_zero(&d, 1), Err(Error::Domain(_))));
}

#[test]
fn fiber_solve_recovers_exact_images() {
    for z in [-2.0, -0.5, 0.5, 2.0] {
        let model = RepModel::Tau { t: 1.0, r: 0.5, z };
        let p0 = model.standard_bump(128).unwrap();
        let g = apply_generator(&model, &Generator::U1, &p0).unwrap();
        let f = apply_generator(&model, &Generator::Y3, &p0).unwrap();
        let solve = fiber_cocycle_solve(&f, &g, &model).unwrap();
        assert!(solve.residual_u1 <= 1e-10, "z={z}: U1 residual {:.3e}", solve.residual_u1);
        assert!(solve.residual_y3 <= 1e-10, "z={z}: Y3 residual {:.3e}", solve.residual_y3);
        assert!(solve.precondition_defect <= 1e-12);
        assert!(solve.norm_ratio > 0.0);
        let p = solve.p.expect("solution present");
        assert!(p.sub(&p0).l2_norm() / p0.l2_norm() <= 1e-12);
    }
}

#[test]
fn fiber_solve_reports_violated_compatibility() {
    let model = RepModel::Tau { t: 1.0, r: 0.5, z: 1.0 };
    let p0 = model.standard_bump(128).unwrap();
    let g = apply_generator(&model, &Generator::U1, &p0).unwrap();
    let f = apply_generator(&model, &Generator::Y3, &p0)
        .unwrap()
        .scale(Complex64::new(1.1, 0.0));
    let solve = fiber_cocycle_solve(&f, &g, &model).unwrap();
    assert!(
        (0.05..0.2).contains(&solve.precondition_defect),
        "defect {:.3e}",
        solve.precondition_defect
    );
}

#[test]
fn zero_fiber_and_wrong_model_are_rejected() {
    let model = RepModel::Tau { t: 1.0, r: 0.5, z: 0.0 };
    let grids = model.default_grids(64).unwrap();
    let f = SampledFunction::zeros(grids.clone()).unwrap();
    let g = SampledFunction::zeros(grids).unwrap();
    assert!(matches!(
        fiber_cocycle_solve(&f, &g, &model),
        Err(Error::ZeroFiber(_))
    ));

    let rho = RepModel::Rho { t: 1.0 };
    let v = separable_bump(64);
    assert!(matches!(
        fiber_cocycle_solve(&v, &v, &rho),
        Err(Error::Domain(_))
    ));
}

#[test]
fn sweep_handles_empty_and_singleton_sample_lists() {
    let problem = SweepProblem {
        family: SweepFamily::TauCocycle { r: 0.5, z: 1.0 },
        s: 0,
        grid_n: 48,
    };
    let empty = sweep_fibers(&problem, &[]);
    assert!(empty.fibers.is_empty());
    assert_eq!(empty.spread, 1.0);
    assert_eq!(empty.trend_slope, 0.0);
    assert!(empty.bounded);

    let single = sweep_fibers(&problem, &[1.0]);
    assert_eq!(single.fibers.len(), 1);
    let fiber = &single.fibers[0];
    assert!(fiber.error.is_none(), "{:?}", fiber.error);
    let ratio = fiber.ratio.expect("ratio present");
    assert_eq!(single.max_ratio, ratio);
    assert_eq!(single.min_ratio, ratio);
    assert_eq!(single.spread, 1.0);
    let report = fiber.report.as_ref().expect("report present");
    assert!(report.residual_rel <= 1e-10);
    assert!(report.bound_holds);

    let text = serde_json::to_string(&single).unwrap();
    let back: unirep::solver::SweepReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.fibers.len(), 1);
    assert_eq!(back.spread, single.spread);
}

#[test]
fn density_csv_has_two_columns() {
    let model = RepModel::Rho { t: 1.0 };
    let v = separable_bump(64);
    let d = spectral_density(&v, &model, &Generator::Y2).unwrap();
    let mut buf = Vec::new();
    d.to_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "chi,density");
    assert_eq!(lines.len(), 1 + d.chi_grid.len());
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 2));
}
