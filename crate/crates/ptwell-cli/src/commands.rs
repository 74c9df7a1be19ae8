//! Subcommand implementations: solve, assemble a [`Table`], print, exit.

use ptwell::analysis::{self, SpectrumRow};
use ptwell::model::{LevelIndex, WellSpec};
use ptwell::oracle::{self, OracleConfig};
use ptwell::secular::{secular_sides, solve_level};
use ptwell::wavefunc::WaveFunction;
use ptwell::{Error, Result};

use crate::emit::{Table, Value};
use crate::{CommonArgs, EXIT_OK, EXIT_VERIFY};

fn version_meta(table: &mut Table, common: &CommonArgs) {
    table.meta("program", "ptwell");
    table.meta("version", env!("CARGO_PKG_VERSION"));
    table.meta("tol", common.tol);
}

pub fn spectrum(t: f64, levels: usize, common: &CommonArgs) -> Result<u8> {
    if levels == 0 {
        return Err(Error::Config("levels must be at least 1".into()));
    }
    let spec = WellSpec::new(t)?;
    let rows = analysis::spectrum_table(&spec, levels, common.tol)?;
    let mut table = Table::new(&[
        "N", "omega", "k", "E", "p", "q", "alpha", "R", "G", "branch",
    ]);
    version_meta(&mut table, common);
    table.meta("T", t);
    table.meta("levels", levels);
    for row in &rows {
        table.row(spectrum_row_values(row));
    }
    print!("{}", table.render(common.format, common.meta_time));
    Ok(EXIT_OK)
}

fn spectrum_row_values(row: &SpectrumRow<f64>) -> Vec<Value> {
    vec![
        row.n.into(),
        row.omega.into(),
        row.k.into(),
        row.energy.into(),
        row.p.into(),
        row.q.into(),
        row.alpha.into(),
        row.r.into(),
        row.g.into(),
        row.branch.symbol().to_string().into(),
    ]
}

pub fn wavefunction(
    t: f64,
    level_index: u32,
    xmin: f64,
    xmax: f64,
    samples: usize,
    common: &CommonArgs,
) -> Result<u8> {
    if !(xmin < xmax) {
        return Err(Error::Config(format!(
            "xmin must be below xmax (got {xmin} >= {xmax})"
        )));
    }
    if samples < 2 {
        return Err(Error::Config("samples must be at least 2".into()));
    }
    let spec = WellSpec::new(t)?;
    let level = solve_level(&spec, LevelIndex(level_index), common.tol)?;
    let wf = WaveFunction::build(level)?;
    let mut table = Table::new(&["x", "re_psi", "im_psi"]);
    version_meta(&mut table, common);
    table.meta("T", t);
    table.meta("level", level_index);
    table.meta("k", wf.level().k());
    table.meta("E", wf.level().energy());
    table.meta("G", wf.level().g());
    table.meta("sigma_re", wf.sigma().re);
    table.meta("sigma_im", wf.sigma().im);
    let step = (xmax - xmin) / (samples - 1) as f64;
    for i in 0..samples {
        let x = if i == samples - 1 {
            xmax
        } else {
            xmin + step * i as f64
        };
        let psi = wf.eval(x);
        table.row(vec![x.into(), psi.re.into(), psi.im.into()]);
    }
    print!("{}", table.render(common.format, common.meta_time));
    Ok(EXIT_OK)
}

pub fn figure1(t: f64, samples: usize, levels: usize, common: &CommonArgs) -> Result<u8> {
    if samples < 100 {
        return Err(Error::Config("samples must be at least 100".into()));
    }
    if levels == 0 {
        return Err(Error::Config("levels must be at least 1".into()));
    }
    let spec = WellSpec::new(t)?;
    let mut columns: Vec<String> = vec!["omega".into(), "lhs".into()];
    columns.extend((0..levels).map(|n| format!("rhs_{n}")));
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut table = Table::new(&column_refs);
    version_meta(&mut table, common);
    table.meta("T", t);
    table.meta("levels", levels);
    table.meta("samples", samples);
    for i in 0..samples {
        let omega = i as f64 / (samples - 1) as f64;
        let mut row: Vec<Value> = Vec::with_capacity(levels + 2);
        row.push(omega.into());
        let mut lhs_cell = None;
        for n in 0..levels {
            let (lhs, rhs) = secular_sides(&spec, LevelIndex(n as u32), omega)?;
            if lhs_cell.is_none() {
                lhs_cell = Some(lhs);
            }
            row.push(rhs.into());
        }
        row.insert(1, lhs_cell.expect("levels >= 1").into());
        table.row(row);
    }
    print!("{}", table.render(common.format, common.meta_time));
    Ok(EXIT_OK)
}

pub fn verify(
    t: f64,
    levels: usize,
    lambda: Option<f64>,
    h: Option<f64>,
    max_dre: f64,
    common: &CommonArgs,
) -> Result<u8> {
    if levels == 0 {
        return Err(Error::Config("levels must be at least 1".into()));
    }
    let spec = WellSpec::new(t)?;
    let lambda = match lambda {
        Some(l) => l,
        None => oracle::default_lambda(&spec, levels, common.tol)?,
    };
    let h = h.unwrap_or(std::f64::consts::PI / 250.0);
    let cfg = OracleConfig::new(lambda, h, levels)?;

    let analytic: Vec<f64> = (0..levels)
        .map(|n| Ok(solve_level(&spec, LevelIndex(n as u32), common.tol)?.energy()))
        .collect::<Result<_>>()?;
    let p_min = solve_level(&spec, LevelIndex(levels as u32 - 1), common.tol)?
        .sigma_parts()
        .p();
    let pairs = oracle::fd_spectrum(&spec, &cfg)?;

    let mut table = Table::new(&[
        "N",
        "E_analytic",
        "re_E_fd",
        "im_E_fd",
        "abs_dre",
        "inner_weight",
    ]);
    version_meta(&mut table, common);
    table.meta("T", t);
    table.meta("levels", levels);
    table.meta("lambda", cfg.half_width());
    table.meta("h", cfg.grid_step());
    table.meta("nodes", cfg.interior_nodes());
    table.meta("max_dre", max_dre);
    table.meta(
        "tail_containment_ok",
        if cfg.tail_containment_ok(p_min) {
            "true"
        } else {
            "false"
        },
    );
    let mut worst = 0.0f64;
    for (n, (exact, pair)) in analytic.iter().zip(pairs.iter()).enumerate() {
        let dre = (pair.energy.re - exact).abs();
        worst = worst.max(dre);
        table.row(vec![
            (n as u32).into(),
            (*exact).into(),
            pair.energy.re.into(),
            pair.energy.im.into(),
            dre.into(),
            pair.inner_weight.into(),
        ]);
    }
    print!("{}", table.render(common.format, common.meta_time));
    if worst > max_dre {
        eprintln!(
            "ptwell: verification disagreement: worst |Re E_fd - E_analytic| = {worst:e} exceeds {max_dre:e}"
        );
        return Ok(EXIT_VERIFY);
    }
    Ok(EXIT_OK)
}

pub fn limits(t_list: &[f64], levels: usize, common: &CommonArgs) -> Result<u8> {
    if levels == 0 {
        return Err(Error::Config("levels must be at least 1".into()));
    }
    if t_list.is_empty() {
        return Err(Error::Config("T-list must not be empty".into()));
    }
    let report = analysis::limit_report(t_list, levels, common.tol)?;
    let mut table = Table::new(&[
        "T",
        "N",
        "E",
        "ref_hermitian",
        "dev_hermitian",
        "ref_weak",
        "dev_weak",
    ]);
    version_meta(&mut table, common);
    table.meta("levels", levels);
    table.meta("t_count", report.t_values.len());
    for row in &report.rows {
        table.row(vec![
            row.t.into(),
            row.n.into(),
            row.energy.into(),
            row.hermitian_ref.into(),
            row.hermitian_dev.into(),
            row.weak_ref.into(),
            row.weak_dev.into(),
        ]);
    }
    print!("{}", table.render(common.format, common.meta_time));
    Ok(EXIT_OK)
}
