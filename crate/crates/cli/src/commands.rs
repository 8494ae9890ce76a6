use std::fmt::Write as _;
use std::path::Path;

use hypzeta_core::euler::{ruelle_r, ruelle_r_direct, selberg_z};
use hypzeta_core::factors::{c0, c1, det_laplacian, kappa, ruelle_leading_at_zero};
use hypzeta_core::spectrum::{enumerate, CacheMetadata, ShellTable};
use hypzeta_core::surface::{constants, order_r, order_z};
use hypzeta_core::verify::{model_for, modular_sign_report, run_suite};
use hypzeta_core::{
    Complex64, Error, EvalOptions, HalfInteger, Report, ScatteringModel, Signature, TruncatedValue,
};

use crate::args::{Group, SurfaceArgs};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Core(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// A finished command: the report, its human rendering and the exit code.
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(report: Report, text: String) -> Self {
        Outcome {
            report,
            text,
            exit_code: 0,
        }
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{:.15e} {:+.15e}i", z.re, z.im)
}

fn resolve_model(surface: &SurfaceArgs) -> Result<ScatteringModel, CliError> {
    let model = match surface.group {
        Some(Group::Modular) => ScatteringModel::modular(),
        Some(Group::Trivial) => ScatteringModel::trivial(),
        None => model_for(&surface.signature).ok_or_else(|| {
            CliError::Usage(format!(
                "no bundled scattering model has {} cusps; pass --group",
                surface.signature.cusps()
            ))
        })?,
    };
    if model.cusps() != surface.signature.cusps() {
        return Err(Error::Mismatch {
            signature: surface.signature.cusps(),
            model: model.cusps(),
        }
        .into());
    }
    Ok(model)
}

fn echo_surface(report: &mut Report, surface: &SurfaceArgs, model: &ScatteringModel) {
    report
        .input("signature", surface.signature.to_string())
        .input("group", model.label());
}

pub fn surface_info(sig: &Signature) -> Result<Outcome, CliError> {
    let mut report = Report::new("surface info");
    report.input("signature", sig.to_string());
    report
        .result("genus", sig.genus())
        .result("cusps", sig.cusps())
        .result("elliptic_orders", format!("{:?}", sig.orders()))
        .result("area", sig.area())
        .result("area_over_2pi", sig.area_over_2pi())
        .result("euler_term", sig.euler_term());
    match model_for(sig) {
        Some(model) => {
            let k = constants(sig, &model)?;
            report
                .result("model", model.label())
                .result("A", k.a)
                .result("B", k.b)
                .result("C", k.c)
                .result("D", k.d)
                .result("log_E", k.log_e);
        }
        None => {
            report.result(
                "note",
                "A and D depend on the scattering data; no bundled model matches this cusp count",
            );
        }
    }
    let text = render_results(&report);
    Ok(Outcome::ok(report, text))
}

pub fn orders(surface: &SurfaceArgs, from: i64, to: i64) -> Result<Outcome, CliError> {
    if from > to {
        return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
    }
    let model = resolve_model(surface)?;
    let sig = &surface.signature;
    let n0 = model.n0();
    let mut report = Report::new("orders");
    echo_surface(&mut report, surface, &model);
    report.input("from", from).input("to", to).input("n0", n0);
    let mut text = String::from("point\torder_Z\torder_R\n");
    for k in from..=to {
        if k < 0 {
            // the half-integer just above k
            let half = HalfInteger::from_twice(2 * k + 1);
            let o = order_z(sig, n0, half)?;
            report.result(format!("Z order at {half}"), o);
            let _ = writeln!(text, "{half}\t{o}\t");
        }
        let z = match order_z(sig, n0, HalfInteger::integer(k)) {
            Ok(o) => Some(o),
            Err(Error::Domain(_)) => None,
            Err(e) => return Err(e.into()),
        };
        if let Some(o) = z {
            report.result(format!("Z order at {k}"), o);
        }
        let r = order_r(sig, n0, k);
        report.result(format!("R order at {k}"), r);
        let _ = writeln!(
            text,
            "{k}\t{}\t{r}",
            z.map_or("-".to_string(), |o| o.to_string())
        );
    }
    Ok(Outcome::ok(report, text))
}

pub fn kappa_cmd(
    surface: &SurfaceArgs,
    s: Complex64,
    opts: &EvalOptions,
) -> Result<Outcome, CliError> {
    let model = resolve_model(surface)?;
    let mut report = Report::new("kappa");
    echo_surface(&mut report, surface, &model);
    report.input("s", s);
    let k = kappa(&surface.signature, &model, s, opts)?;
    report
        .result("kappa", k.value)
        .result("log_kappa", k.log_value);
    let text = format!("kappa({}) = {}\n", fmt_complex(s), fmt_complex(k.value));
    Ok(Outcome::ok(report, text))
}

pub fn det_laplacian_cmd(
    surface: &SurfaceArgs,
    s: Complex64,
    z_value: Option<Complex64>,
    opts: &EvalOptions,
) -> Result<Outcome, CliError> {
    let model = resolve_model(surface)?;
    let mut report = Report::new("det-laplacian");
    echo_surface(&mut report, surface, &model);
    report.input("s", s);
    let z = match z_value {
        Some(z) => {
            report.input("z_value", z);
            z
        }
        None => {
            if model.label() != "modular" || surface.signature != Signature::modular() {
                return Err(CliError::Usage(
                    "--z-value is required unless the signature is 0,1,2:3 with the modular group"
                        .into(),
                ));
            }
            let table = enumerate(opts.euler_max_trace())?.shells();
            let z = selberg_z(&table, s, opts)?;
            report
                .input("z_source", "euler product")
                .input("max_trace", opts.euler_max_trace())
                .result("z_value", z.value)
                .result("z_abs_error_estimate", z.abs_error_estimate);
            z.value
        }
    };
    let det = det_laplacian(&surface.signature, &model, s, z, opts)?;
    report
        .result("det", det.value)
        .result("a_power", det.a_power);
    for (name, log) in &det.log_terms {
        report.result(format!("log_{name}"), *log);
    }
    let mut text = format!(
        "det(Delta - s(1-s)) at s = {} is {}\n",
        fmt_complex(s),
        fmt_complex(det.value)
    );
    if let Some(w) = &det.warning {
        report.result("warning", w.0.clone());
        let _ = writeln!(text, "warning: {}", w.0);
    }
    Ok(Outcome::ok(report, text))
}

pub fn ruelle_leading_cmd(surface: &SurfaceArgs) -> Result<Outcome, CliError> {
    let model = resolve_model(surface)?;
    let mut report = Report::new("ruelle-leading");
    echo_surface(&mut report, surface, &model);
    let lead = ruelle_leading_at_zero(&surface.signature, &model)?;
    report
        .result("order", lead.order)
        .result("coeff", lead.coeff)
        .result("abs_coeff", lead.coeff.abs())
        .result("phi_tilde_0", model.phi_tilde_0());
    let mut text = format!(
        "order of R at 0: {}\nleading coefficient: {:.15e}\n",
        lead.order, lead.coeff
    );
    if model.stated_phi_tilde_0().is_some() {
        let sign = modular_sign_report()?;
        report
            .result("phi_tilde_0_quoted", sign.stated.unwrap_or(f64::NAN))
            .result(
                "coeff_with_quoted_phi_tilde_0",
                sign.leading_coeff_with_stated.unwrap_or(f64::NAN),
            )
            .result("phi_tilde_0_sign_discrepancy", sign.discrepancy())
            .result("sign_note", sign.note());
        let _ = writeln!(text, "note: {}", sign.note());
    }
    Ok(Outcome::ok(report, text))
}

pub fn constants_cmd(surface: &SurfaceArgs) -> Result<Outcome, CliError> {
    let model = resolve_model(surface)?;
    let sig = &surface.signature;
    let mut report = Report::new("constants");
    echo_surface(&mut report, surface, &model);
    let k = constants(sig, &model)?;
    report
        .result("area", k.area)
        .result("A", k.a)
        .result("B", k.b)
        .result("C", k.c)
        .result("D", k.d)
        .result("log_E", k.log_e)
        .result("c1", c1(sig, &model)?)
        .result("c0", c0(sig, &model)?);
    let text = render_results(&report);
    Ok(Outcome::ok(report, text))
}

fn load_or_enumerate(
    max_trace: u32,
    cache: Option<&Path>,
    report: &mut Report,
) -> Result<ShellTable, CliError> {
    if let Some(path) = cache {
        let expected = CacheMetadata::modular(max_trace);
        if let Some(table) = ShellTable::load(path, &expected)? {
            report.result("cache", "hit");
            return Ok(table);
        }
        let table = enumerate(max_trace)?.shells();
        table.save(path)?;
        report.result("cache", "written");
        return Ok(table);
    }
    Ok(enumerate(max_trace)?.shells())
}

pub fn spectrum_cmd(max_trace: u32, cache: Option<&Path>) -> Result<Outcome, CliError> {
    let mut report = Report::new("spectrum");
    report.input("max_trace", max_trace);
    if let Some(p) = cache {
        report.input("cache", p.display().to_string());
    }
    let table = load_or_enumerate(max_trace, cache, &mut report)?;
    report.result("class_count", table.class_count());
    for shell in &table.shells {
        report
            .result(format!("count at trace {}", shell.trace), shell.count)
            .result(format!("length at trace {}", shell.trace), shell.length)
            .result(format!("norm at trace {}", shell.trace), shell.norm);
    }
    let mut buf = Vec::new();
    table.write_csv(&mut buf, false)?;
    let text = String::from_utf8(buf).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Outcome::ok(report, text))
}

fn truncated_results(report: &mut Report, prefix: &str, v: &TruncatedValue) {
    report
        .result(prefix, v.value)
        .result(format!("{prefix}_abs_error_estimate"), v.abs_error_estimate)
        .result(format!("{prefix}_k_tail_bound"), v.k_tail_bound)
        .result(
            format!("{prefix}_trace_tail_estimate"),
            v.trace_tail_estimate,
        )
        .result(format!("{prefix}_max_trace_used"), v.max_trace_used)
        .result(format!("{prefix}_k_cutoff_used"), v.k_cutoff_used)
        .result(format!("{prefix}_flagged"), v.unreliable);
}

fn truncated_text(label: &str, v: &TruncatedValue) -> String {
    let mut t = format!(
        "{label} = {}  (error estimate {:.3e}, max trace {}, K = {})\n",
        fmt_complex(v.value),
        v.abs_error_estimate,
        v.max_trace_used,
        v.k_cutoff_used
    );
    if v.unreliable {
        t.push_str("  flagged: the truncation estimate exceeds 1% of the value\n");
    }
    t
}

pub fn zeta_cmd(s: Complex64, opts: &EvalOptions) -> Result<Outcome, CliError> {
    let mut report = Report::new("zeta");
    report
        .input("s", s)
        .input("max_trace", opts.euler_max_trace());
    let table = enumerate(opts.euler_max_trace())?.shells();
    let z = selberg_z(&table, s, opts)?;
    truncated_results(&mut report, "Z", &z);
    let text = truncated_text("Z(s)", &z);
    Ok(Outcome::ok(report, text))
}

pub fn ruelle_cmd(s: Complex64, opts: &EvalOptions) -> Result<Outcome, CliError> {
    let mut report = Report::new("ruelle");
    report
        .input("s", s)
        .input("max_trace", opts.euler_max_trace());
    let table = enumerate(opts.euler_max_trace())?.shells();
    let q = ruelle_r(&table, s, opts)?;
    let d = ruelle_r_direct(&table, s, opts)?;
    truncated_results(&mut report, "R_quotient", &q);
    truncated_results(&mut report, "R_direct", &d);
    report.checks.push(hypzeta_core::Check::within(
        "R(s): direct product against Z(s)/Z(s+1)",
        d.value,
        q.value,
        d.abs_error_estimate + q.abs_error_estimate,
    ));
    let mut text = truncated_text("R(s) via Z(s)/Z(s+1)", &q);
    text.push_str(&truncated_text("R(s) direct", &d));
    Ok(Outcome::ok(report, text))
}

pub fn verify_cmd(opts: &EvalOptions, tolerance: Option<f64>) -> Result<Outcome, CliError> {
    if let Some(t) = tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tolerance must be positive, got {t}"
            )));
        }
    }
    let mut report = run_suite(opts, tolerance);
    report.timestamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs());
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    let mut text = format!(
        "{} of {} checks passed\n",
        report.checks.len() - failed.len(),
        report.checks.len()
    );
    for c in &failed {
        let _ = writeln!(
            text,
            "FAIL {}: |lhs - rhs| = {:.3e} > {:.3e}",
            c.name, c.abs_diff, c.tolerance
        );
    }
    if let Some(note) = report
        .results
        .iter()
        .find(|r| r.name == "phi_tilde_0_sign_note")
    {
        if let hypzeta_core::Value::Text(t) = &note.value {
            let _ = writeln!(text, "{t}");
        }
    }
    let exit_code = if failed.is_empty() { 0 } else { EXIT_VERIFY };
    Ok(Outcome {
        report,
        text,
        exit_code,
    })
}

pub fn render_results(report: &Report) -> String {
    let mut text = String::new();
    for r in &report.results {
        let value = match &r.value {
            hypzeta_core::Value::Real(x) => format!("{x:.15e}"),
            hypzeta_core::Value::Complex(z) => fmt_complex(*z),
            hypzeta_core::Value::Integer(i) => i.to_string(),
            hypzeta_core::Value::Bool(b) => b.to_string(),
            hypzeta_core::Value::Text(t) => t.clone(),
        };
        let _ = writeln!(text, "{}: {value}", r.name);
    }
    text
}
