use hypzeta_core::euler::{ruelle_r, ruelle_r_direct, selberg_z};
use hypzeta_core::spectrum::{enumerate, norm_from_trace};
use hypzeta_core::{Complex64, Error, EvalOptions, ShellTable};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn opts(max_trace: u32) -> EvalOptions {
    EvalOptions::default()
        .with_euler_max_trace(max_trace)
        .unwrap()
}

/// log Z(s) = −Σ_P Σ_{j≥1} p^{−js} / (j (1 − p^{−j})), the k-product closed geometrically.
fn log_z_double_sum(table: &ShellTable, s: Complex64) -> Complex64 {
    let mut total = c(0.0, 0.0);
    for shell in table.shells.iter().filter(|sh| sh.count > 0) {
        let p = norm_from_trace(shell.trace);
        let mut per_class = c(0.0, 0.0);
        for j in 1..=200 {
            let jf = j as f64;
            let term = Complex64::new(p, 0.0).powc(-jf * s) / (jf * (1.0 - p.powf(-jf)));
            per_class += term;
            if term.norm() < 1e-22 {
                break;
            }
        }
        total -= shell.count as f64 * per_class;
    }
    total
}

#[test]
fn double_sum_oracle_at_two() {
    let table = enumerate(40).unwrap().shells();
    let z = selberg_z(&table, c(2.0, 0.0), &opts(40)).unwrap();
    let oracle = log_z_double_sum(&table, c(2.0, 0.0)).exp();
    assert!((z.value - oracle).norm() <= 1e-8, "{} vs {oracle}", z.value);
    assert!(z.value.im.abs() < 1e-15);
    assert_eq!(z.max_trace_used, 40);
}

#[test]
fn two_path_grid() {
    let table = enumerate(200).unwrap().shells();
    let o = opts(200);
    for re in [1.5, 2.0, 3.0] {
        for im in [0.0, 1.0, 5.0] {
            let s = c(re, im);
            let quotient = ruelle_r(&table, s, &o).unwrap();
            let direct = ruelle_r_direct(&table, s, &o).unwrap();
            let diff = (quotient.value - direct.value).norm();
            let bound = quotient.abs_error_estimate + direct.abs_error_estimate;
            assert!(diff <= bound, "s = {s}: diff {diff:e} > {bound:e}");
        }
    }
}

#[test]
fn cutoff_monotonicity_on_grid() {
    let full = enumerate(200).unwrap().shells();
    for re in [1.5, 2.0, 3.0] {
        for im in [0.0, 1.0, 5.0] {
            let s = c(re, im);
            for path in [ruelle_r_direct, ruelle_r, selberg_z] {
                let mut previous: Option<(f64, Complex64)> = None;
                for t in (20..=200).step_by(10) {
                    let v = path(&full.truncated(t), s, &opts(t)).unwrap();
                    if let Some((est, value)) = previous {
                        assert!(
                            v.abs_error_estimate <= est,
                            "s = {s}, T = {t}: estimate grew"
                        );
                        assert!(
                            (v.value - value).norm() <= est,
                            "s = {s}, T = {t}: step {:e} exceeds {est:e}",
                            (v.value - value).norm()
                        );
                    }
                    previous = Some((v.abs_error_estimate, v.value));
                }
            }
        }
    }
}

#[test]
fn far_right_limit_is_one() {
    let table = enumerate(60).unwrap().shells();
    let s = c(20.0, 0.0);
    let z = selberg_z(&table, s, &opts(60)).unwrap();
    let r = ruelle_r(&table, s, &opts(60)).unwrap();
    assert!((z.value - 1.0).norm() < 1e-12);
    assert!((r.value - 1.0).norm() < 1e-12);
}

#[test]
fn domain_and_reliability() {
    let table = enumerate(40).unwrap().shells();
    assert!(matches!(
        selberg_z(&table, c(1.0, 3.0), &opts(40)),
        Err(Error::Convergence { .. })
    ));
    let near = selberg_z(&table, c(1.1, 0.0), &opts(40)).unwrap();
    assert!(near.unreliable);
    let far = selberg_z(&table, c(3.0, 0.0), &opts(40)).unwrap();
    assert!(!far.unreliable);
    assert!(far.k_cutoff_used >= 10);
}

#[test]
fn options_cap_the_table() {
    let table = enumerate(80).unwrap().shells();
    let capped = selberg_z(&table, c(2.0, 1.0), &opts(40)).unwrap();
    let small = selberg_z(&table.truncated(40), c(2.0, 1.0), &opts(200)).unwrap();
    assert_eq!(capped.max_trace_used, 40);
    assert_eq!(capped.value, small.value);
}
