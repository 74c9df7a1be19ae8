//! Finite-difference oracle against the analytic solver.
//!
//! The box half-width is chosen by the tail-containment rule, so that what
//! remains between the two routes is pure discretization error: second
//! order in the grid step, with the Richardson-estimated constant bounding
//! the observed deviation.

use ptwell::model::{LevelIndex, WellSpec};
use ptwell::oracle::{self, OracleConfig};
use ptwell::secular::solve_level;

const PI: f64 = std::f64::consts::PI;

fn analytic_energies(t: f64, count: usize) -> Vec<f64> {
    let spec = WellSpec::new(t).unwrap();
    (0..count)
        .map(|n| {
            solve_level(&spec, LevelIndex(n as u32), 1e-13)
                .unwrap()
                .energy()
        })
        .collect()
}

fn fd_energies(t: f64, lambda: f64, m: usize, count: usize) -> Vec<ptwell::Complex<f64>> {
    let spec = WellSpec::new(t).unwrap();
    let cfg = OracleConfig::new(lambda, PI / m as f64, count).unwrap();
    oracle::fd_spectrum(&spec, &cfg)
        .unwrap()
        .into_iter()
        .map(|pair| pair.energy)
        .collect()
}

/// T = 1 with the default (tail-contained) box: five levels converge at
/// second order, halving the step cuts the error by very nearly 4.
#[test]
fn contained_box_five_levels_second_order() {
    let t = 1.0;
    let count = 5;
    let spec = WellSpec::new(t).unwrap();
    let lambda = oracle::default_lambda(&spec, count, 1e-13).unwrap();
    assert!((lambda - 13.0 * PI).abs() < 1e-9);

    let exact = analytic_energies(t, count);
    let coarse = fd_energies(t, lambda, 250, count);
    let fine = fd_energies(t, lambda, 500, count);
    for n in 0..count {
        let err_coarse = (coarse[n].re - exact[n]).abs();
        let err_fine = (fine[n].re - exact[n]).abs();
        assert!(
            err_coarse <= 1e-3 && err_fine <= 1e-3,
            "N={n}: errors {err_coarse:e}, {err_fine:e}"
        );
        assert!(coarse[n].im.abs() <= 1e-9 && fine[n].im.abs() <= 1e-9);
        let factor = err_coarse / err_fine;
        assert!(
            (3.0..=5.0).contains(&factor),
            "N={n}: halving factor {factor}"
        );
    }
}

/// T ∈ {10, 100}: the imaginary parts obey the 10·h²T² envelope and the
/// real-part error shrinks at second order (grids chosen past the boundary
/// layer of width 1/p), bounded by the Richardson-estimated constant.
#[test]
fn deep_wells_im_envelope_and_order() {
    for &(t, m) in &[(10.0, 100usize), (100.0, 200usize)] {
        let count = 5;
        let exact = analytic_energies(t, count);
        let lambda = 4.0 * PI;
        let coarse = fd_energies(t, lambda, m, count);
        let fine = fd_energies(t, lambda, 2 * m, count);
        let h = PI / m as f64;
        for n in 0..count {
            assert!(
                coarse[n].im.abs() <= 10.0 * h * h * t * t,
                "T={t} N={n}: Im {:e}",
                coarse[n].im
            );
            let err_c = (coarse[n].re - exact[n]).abs();
            let err_f = (fine[n].re - exact[n]).abs();
            let order = (err_c / err_f).log2();
            assert!(
                (1.6..=2.4).contains(&order),
                "T={t} N={n}: order {order}"
            );
            // Richardson: err(h) ≈ C h² with C from the two grids
            let c_est = (coarse[n].re - fine[n].re).abs() * 4.0 / 3.0 / (h * h);
            assert!(
                err_c <= 1.5 * c_est * h * h,
                "T={t} N={n}: err {err_c:e} vs C h² {:e}",
                c_est * h * h
            );
        }
    }
}

/// How the two selection filters act on the truncated box: outer-region
/// modes sit far from the real axis (imaginary-part cut), and once a
/// level's tails carry more than half its mass the weight rule drops it,
/// capping the certifiable count instead of returning misidentified modes.
#[test]
fn selection_filters_box_modes_and_caps_count() {
    let t = 1.0;
    let spec = WellSpec::new(t).unwrap();
    let cfg = OracleConfig::new(13.0 * PI, PI / 60.0, 6).unwrap();
    let pairs = oracle::fd_spectrum(&spec, &cfg).unwrap();
    let exact = analytic_energies(t, 6);
    for (n, pair) in pairs.iter().enumerate() {
        assert!(
            (pair.energy.re - exact[n]).abs() <= 2e-2,
            "N={n}: {} vs {}",
            pair.energy.re,
            exact[n]
        );
        assert!(pair.inner_weight >= 0.5);
    }
    // weights shrink with N as the tails slow down
    for w in pairs.windows(2) {
        assert!(w[1].inner_weight < w[0].inner_weight);
    }

    // at N = 6 less than half the mass is inside the well, so requesting a
    // seventh level must fail rather than substitute an artifact
    let cfg7 = OracleConfig::new(13.0 * PI, PI / 60.0, 7).unwrap();
    assert!(matches!(
        oracle::fd_spectrum(&spec, &cfg7),
        Err(ptwell::Error::Eigensolver(_))
    ));

    // the raw spectrum does contain further eigenvalues below the kept
    // range, but they live in the outer regions: imaginary parts near ±T²,
    // caught by the candidate prefilter rather than the weight rule
    let fd = oracle::fd_matrix(&spec, &cfg);
    let evs =
        oracle::tridiagonal_eigenvalues(fd.diag().to_vec(), vec![fd.off(); fd.size() - 1])
            .unwrap();
    let outer_modes = evs
        .iter()
        .filter(|z| z.re > 0.0 && z.re < pairs[5].energy.re)
        .filter(|z| z.im.abs() > 0.1 && z.im.abs() <= 1.2 * t * t)
        .count();
    assert!(
        outer_modes > 10,
        "expected outer-region modes between the bound levels, found {outer_modes}"
    );
}
