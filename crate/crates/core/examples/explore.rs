// Temporary exploration harness (removed before ship).

use qprint_core::math::linear_fit;
use qprint_core::rydberg::{effective_field, CutoffParams, HydrogenicState, RydbergDrive};

fn main() {
    let mode = std::env::args().nth(1).unwrap_or_else(|| "cutoff".into());
    match mode.as_str() {
        "cutoff" => cutoff_decay(),
        "slope" => slope_sweep(),
        "sc" => sc_nucleation(),
        _ => eprintln!("unknown mode"),
    }
}

fn sc_nucleation() {
    use qprint_core::beam::{BeamSpec, Envelope};
    use qprint_core::grid::GridSpec;
    use qprint_core::tdgl::{run_sc, ScRunOutputs, TdglParams};
    let grid = GridSpec::new(48, 48, 0.5);
    let centre = grid.centre();
    for (w0, e0, omega, steps) in [
        (12.0f64, 8.0f64, 0.2f64, 8000usize),
        (12.0, 8.0, 0.2, 16000),
        (12.0, 12.0, 0.2, 8000),
        (12.0, 12.0, 0.2, 16000),
        (10.0, 16.0, 0.2, 8000),
        (12.0, 16.0, 0.2, 12000),
    ] {
        for sigma in [1i8, -1] {
            let mut nets = Vec::new();
            for seed in 0..6u64 {
                let beam = BeamSpec {
                    p: 0, l: 0, sigma,
                    theta_pol: std::f64::consts::FRAC_PI_4,
                    e0, w0, omega,
                    center: centre,
                    envelope: Envelope::Cw,
                };
                let params = TdglParams { dt: 0.02, steps, noise_amp: 1e-3, seed, ..Default::default() };
                match run_sc(&beam, &grid, &params, &ScRunOutputs::default()) {
                    Ok(art) => nets.push(art.winding_series.last().unwrap().plaquette_total),
                    Err(_) => nets.push(-999),
                }
            }
            println!("w0={w0:4.1} e0={e0:5.1} om={omega:3.1} steps={steps:6} sig={sigma:+} nets={nets:?}");
        }
    }
}

fn cutoff_decay() {
    let a = HydrogenicState::circular(5);
    let d = RydbergDrive { e_r: 0.5, e_l: 0.0, omega: 0.002 };
    let mut prev = None;
    for n_max in 7..=30 {
        let cut = CutoffParams::new(n_max);
        let b = effective_field(a, &d, &cut).unwrap();
        let inc = prev.map(|p: f64| (b.b_eff - p).abs() / b.b_eff.abs());
        println!(
            "n_max={n_max:2} b={:+.9e} rel_inc={:?} last_shell_ratio={:.3e}",
            b.b_eff, inc, b.last_shell_ratio
        );
        prev = Some(b.b_eff);
    }
}

fn slope_sweep() {
    // Fit log|B_eff| vs log n over circular states n = 10..40 for a range of
    // drive frequencies; find where the slope is 4.
    let ns: Vec<u32> = (10..=40).step_by(2).collect();
    for omega_exp in [-4.93f64, -4.92, -4.91, -4.90, -4.89, -4.88, -4.87] {
        let omega = 10f64.powf(omega_exp);
        let mut lx = Vec::new();
        let mut ly = Vec::new();
        let mut failed = None;
        for &n in &ns {
            let a = HydrogenicState::circular(n);
            let cut = CutoffParams {
                resonance_delta: 1e-18,
                ..CutoffParams::new(n + 10)
            };
            let d = RydbergDrive { e_r: 1e-3, e_l: 0.0, omega };
            match effective_field(a, &d, &cut) {
                Ok(b) => {
                    if b.b_eff.abs() > 0.0 {
                        lx.push((n as f64).ln());
                        ly.push(b.b_eff.abs().ln());
                    }
                }
                Err(e) => {
                    failed = Some(format!("n={n}: {e}"));
                }
            }
        }
        if lx.len() >= 5 {
            let (slope, _, r2) = linear_fit(&lx, &ly);
            println!(
                "omega=1e{omega_exp:+.1} slope={slope:+.3} r2={r2:.5} pts={} {:?}",
                lx.len(),
                failed
            );
        } else {
            println!("omega=1e{omega_exp:+.1} too few points {:?}", failed);
        }
    }
}
