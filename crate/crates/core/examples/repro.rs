use num_complex::Complex64;
use unirep::fourier::differentiate;
use unirep::grid::SampledFunction;
use unirep::models::RepModel;

fn main() {
    for n in [32usize, 64, 128] {
        let m = RepModel::DualRho { t: 0.7 };
        let grids = m.default_grids(n).unwrap();
        let f = SampledFunction::from_fn(grids, |c| {
            Complex64::new((-((c[0] - 4.0) / 0.8).powi(2) - (c[1] / 1.2).powi(2)).exp(), 0.0)
        })
        .unwrap();
        for axis in [0usize, 1] {
            let df = differentiate(&f, axis).unwrap();
            let g0 = f.grid(axis);
            let g1 = df.grid(axis);
            println!(
                "n={n} axis={axis}: eq={} lo {} vs {} | hi {} vs {} | off {} vs {} | w {:?} vs {:?}",
                g0 == g1,
                g0.lo(), g1.lo(), g0.hi(), g1.hi(), g0.offset(), g1.offset(),
                g0.weight(), g1.weight()
            );
        }
    }
}
