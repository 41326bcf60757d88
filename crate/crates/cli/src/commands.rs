//! Implementations of the table-producing subcommands.

use dunkl_core::besov::{membership_report, phi_construct, BesovParams, SeminormGrid};
use dunkl_core::polygauss::from_registry;
use dunkl_core::quad::uniform_grid;
use dunkl_core::taylor::taylor_residual;
use dunkl_core::transform::dunkl_transform;
use dunkl_core::translation::{translate, WKernel};

use crate::config::{OutputFormat, RunConfig};
use crate::output::{emit, json_document, num, CsvTable};

type R<T> = Result<T, String>;

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn emit_table(cfg: &RunConfig, table: CsvTable, json_rows: serde_json::Value) -> R<()> {
    match cfg.format {
        OutputFormat::Csv => emit(cfg.out.as_deref(), &table.render(&cfg.echo)),
        OutputFormat::Json => {
            let doc = json_document(&cfg.echo, json_rows);
            emit(
                cfg.out.as_deref(),
                &format!("{}\n", serde_json::to_string_pretty(&doc).map_err(err_str)?),
            )
        }
    }
}

/// `kernel`: tabulate the translation kernel over a z-grid.
pub fn cmd_kernel(cfg: &mut RunConfig, x: f64, y: f64, z_max: Option<f64>, z_n: usize) -> R<()> {
    let kernel = WKernel::new(cfg.alpha, x, y).map_err(err_str)?;
    let zmax = z_max.unwrap_or(x.abs() + y.abs() + 0.5);
    cfg.echo_extend([
        ("x".to_string(), num(x)),
        ("y".to_string(), num(y)),
        ("z_max".to_string(), num(zmax)),
        ("z_n".to_string(), format!("{z_n}")),
    ]);
    let mut table = CsvTable::new(&["z", "w"]);
    let mut rows = Vec::new();
    for z in uniform_grid(-zmax, zmax, z_n.max(2)) {
        let w = kernel.eval(z);
        table.push(vec![num(z), num(w)]);
        rows.push(serde_json::json!({ "z": z, "w": w }));
    }
    emit_table(cfg, table, serde_json::Value::Array(rows))
}

/// `transform`: emit transform values at requested points.
pub fn cmd_transform(cfg: &mut RunConfig, f_id: &str, ys: &[f64]) -> R<()> {
    let f = from_registry(f_id, cfg.alpha).map_err(err_str)?;
    cfg.echo_extend([("f".to_string(), f_id.to_string())]);
    let values = dunkl_transform(&f, cfg.alpha, ys, &cfg.spec).map_err(err_str)?;
    let mut table = CsvTable::new(&["y", "re", "im"]);
    let mut rows = Vec::new();
    for (&y, v) in ys.iter().zip(&values) {
        table.push(vec![num(y), num(v.re), num(v.im)]);
        rows.push(serde_json::json!({ "y": y, "re": v.re, "im": v.im }));
    }
    emit_table(cfg, table, serde_json::Value::Array(rows))
}

/// `translate`: emit `(y, tau_x f(y))` rows.
pub fn cmd_translate(
    cfg: &mut RunConfig,
    f_id: &str,
    x: f64,
    y_max: Option<f64>,
    y_n: usize,
) -> R<()> {
    let f = from_registry(f_id, cfg.alpha).map_err(err_str)?;
    let ymax = y_max.unwrap_or(x.abs() + cfg.spec.truncation_radius);
    cfg.echo_extend([
        ("f".to_string(), f_id.to_string()),
        ("x".to_string(), num(x)),
        ("y_max".to_string(), num(ymax)),
        ("y_n".to_string(), format!("{y_n}")),
    ]);
    let mut table = CsvTable::new(&["y", "value"]);
    let mut rows = Vec::new();
    for y in uniform_grid(-ymax, ymax, y_n.max(2)) {
        let v = translate(&f, x, y, cfg.alpha, &cfg.spec).map_err(err_str)?;
        table.push(vec![num(y), num(v)]);
        rows.push(serde_json::json!({ "y": y, "value": v }));
    }
    emit_table(cfg, table, serde_json::Value::Array(rows))
}

/// `tabulate theta`: the remainder kernel over an interior y-grid.
pub fn cmd_theta(cfg: &mut RunConfig, k: u32, x: f64, y_n: usize) -> R<()> {
    if k == 0 {
        return Err("k must be >= 1".into());
    }
    let tk = dunkl_core::taylor::theta_build(cfg.alpha, k - 1, x).map_err(err_str)?;
    cfg.echo_extend([
        ("k".to_string(), format!("{k}")),
        ("x".to_string(), num(x)),
        ("y_n".to_string(), format!("{y_n}")),
    ]);
    let n = y_n.max(2);
    let ax = x.abs();
    let mut table = CsvTable::new(&["y", "theta"]);
    let mut rows = Vec::new();
    // interior grid: the kernel may diverge at the origin (skipped) and
    // is only defined up to |x|
    for i in 0..n {
        let y = -ax + 2.0 * ax * (i as f64 + 0.5) / n as f64;
        if y == 0.0 {
            continue;
        }
        let v = tk.eval(y);
        table.push(vec![num(y), num(v)]);
        rows.push(serde_json::json!({ "y": y, "theta": v }));
    }
    emit_table(cfg, table, serde_json::Value::Array(rows))
}

/// `taylor`: residual table of the generalized Taylor identity.
pub fn cmd_taylor(cfg: &mut RunConfig, f_id: &str, k: u32, xs: &[f64], ats: &[f64]) -> R<()> {
    let f = from_registry(f_id, cfg.alpha).map_err(err_str)?;
    cfg.echo_extend([
        ("f".to_string(), f_id.to_string()),
        ("k".to_string(), format!("{k}")),
    ]);
    let mut table = CsvTable::new(&["alpha", "k", "x", "a", "residual"]);
    let mut rows = Vec::new();
    for &x in xs {
        for &at in ats {
            let res = taylor_residual(&f, k, x, at, cfg.alpha, &cfg.spec).map_err(err_str)?;
            table.push(vec![
                num(cfg.alpha.get()),
                format!("{k}"),
                num(x),
                num(at),
                num(res),
            ]);
            rows.push(serde_json::json!({
                "alpha": cfg.alpha.get(), "k": k, "x": x, "a": at, "residual": res
            }));
        }
    }
    emit_table(cfg, table, serde_json::Value::Array(rows))
}

/// `seminorm`: both seminorms for one function, as a JSON report with an
/// optional CSV of per-grid-point contributions.
#[allow(clippy::too_many_arguments)]
pub fn cmd_seminorm(
    cfg: &mut RunConfig,
    k: u32,
    p: f64,
    q: dunkl_core::besov::QIndex,
    beta: f64,
    f_id: &str,
    phi_n0: u32,
    grid_lo: f64,
    grid_hi: f64,
    grid_n: usize,
    points_out: Option<&std::path::Path>,
) -> R<()> {
    let bp = BesovParams::new(cfg.alpha, k, p, q, beta).map_err(err_str)?;
    let f = from_registry(f_id, cfg.alpha).map_err(err_str)?;
    let phi = phi_construct(cfg.alpha, k, phi_n0).map_err(err_str)?;
    let grid = SeminormGrid::new(grid_lo, grid_hi, grid_n).map_err(err_str)?;
    cfg.echo_extend([
        ("k".to_string(), format!("{k}")),
        ("p".to_string(), num(p)),
        (
            "q".to_string(),
            match q {
                dunkl_core::besov::QIndex::Finite(qv) => num(qv),
                dunkl_core::besov::QIndex::Infinity => "inf".to_string(),
            },
        ),
        ("beta".to_string(), num(beta)),
        ("f".to_string(), f_id.to_string()),
        ("phi_n0".to_string(), format!("{phi_n0}")),
        ("grid_lo".to_string(), num(grid_lo)),
        ("grid_hi".to_string(), num(grid_hi)),
        ("grid_n".to_string(), format!("{grid_n}")),
    ]);

    let seminorm_spec = cfg.spec.scaled_tol(100.0);
    let report = membership_report(
        &f,
        &phi,
        &bp,
        &grid,
        &grid,
        &seminorm_spec,
        f_id,
        &format!("hermite-window:{phi_n0}"),
    )
    .map_err(err_str)?;

    if let Some(path) = points_out {
        let mut table = CsvTable::new(&["kind", "point", "value", "weighted"]);
        let sx = bp.scale_exponent();
        for (x, w) in grid.points().iter().zip(&report.omega_values) {
            table.push(vec![
                "modulus".into(),
                num(*x),
                num(*w),
                num(w / x.powf(sx)),
            ]);
        }
        for (t, w) in grid.points().iter().zip(&report.conv_values) {
            table.push(vec![
                "window-norm".into(),
                num(*t),
                num(*w),
                num(w / t.powf(sx)),
            ]);
        }
        emit(Some(path), &table.render(&cfg.echo))?;
    }

    let payload = serde_json::to_value(&report).map_err(err_str)?;
    let doc = json_document(&cfg.echo, payload);
    emit(
        cfg.out.as_deref(),
        &format!("{}\n", serde_json::to_string_pretty(&doc).map_err(err_str)?),
    )
}
