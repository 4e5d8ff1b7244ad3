//! Subcommand implementations. Every command writes plot-ready CSV/JSON
//! into the configured output directory and echoes the resolved
//! configuration into its JSON outputs for reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::json;

use hfqm_core::deriv::{build_derivative, laplacian, LaplacianVariant};
use hfqm_core::distributions::simpson;
use hfqm_core::grid::{chi, delta, embed_total, make_grid, sqrt_delta, Grid, GridFunction, Stage};
use hfqm_core::io::{
    grid_function_csv, grid_function_csv_complex, net_csv, AnalyticBlock, BoundCheckDoc,
    GridMetadata, NetSummary, PotentialSpec, SpectrumDocument, SpectrumParams,
};
use hfqm_core::operators::{
    assemble_hamiltonian, eigendecompose, evolve as evolve_state, lowest_eigenpair,
    measurement_probabilities, spectral_bound_check, Hamiltonian, Potential,
};
use hfqm_core::oracle;
use hfqm_core::scalar::EuclideanScalar;
use hfqm_core::stages::{approximation_net, estimate_limit, run_net, Net};

use crate::config::RunConfig;
use crate::CliError;

fn out_dir(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(&cfg.output.dir);
    fs::create_dir_all(&dir).map_err(|e| CliError::Config(format!("output dir: {e}")))?;
    Ok(dir)
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n").map_err(|e| CliError::Solver(format!("writing {path:?}: {e}")))
}

fn variant_of(cfg: &RunConfig) -> LaplacianVariant {
    match cfg.laplacian.as_str() {
        "paper_literal" => LaplacianVariant::PaperLiteral,
        _ => LaplacianVariant::Compact,
    }
}

fn potential_of(cfg: &RunConfig, grid: &Grid) -> (Potential, PotentialSpec) {
    let mut spec = PotentialSpec {
        kind: cfg.potential.kind.clone(),
        ..Default::default()
    };
    let mut parts: Vec<Potential> = Vec::new();
    match cfg.potential.kind.as_str() {
        "none" => {}
        "delta" => {
            parts.push(Potential::delta_at_origin(grid, cfg.potential.tau));
            spec.tau = Some(cfg.potential.tau);
        }
        "indicator_origin" => {
            parts.push(Potential::Indicator {
                predicate: Arc::new(|x: f64| x == 0.0),
                height: cfg.potential.height,
            });
            spec.height = Some(cfg.potential.height);
        }
        "square_well" => {
            parts.push(Potential::SquareWell {
                half_width: cfg.potential.half_width,
                height: cfg.potential.height,
            });
            spec.half_width = Some(cfg.potential.half_width);
            spec.height = Some(cfg.potential.height);
        }
        "harmonic" => {
            parts.push(Potential::Sampled(Arc::new(|x: f64| 0.5 * x * x)));
        }
        _ => unreachable!("validated"),
    }
    if cfg.walls.enabled {
        let l = cfg.walls.half_length;
        parts.push(Potential::Indicator {
            predicate: Arc::new(move |x: f64| x.abs() >= l),
            height: cfg.walls.height,
        });
        spec.wall_half_length = Some(l);
        spec.wall_height = Some(cfg.walls.height);
    }
    let pot = match parts.len() {
        0 => Potential::None,
        1 => parts.pop().unwrap(),
        _ => Potential::Sum(parts),
    };
    (pot, spec)
}

fn oracle_block(cfg: &RunConfig) -> Result<AnalyticBlock, CliError> {
    let kind: oracle::PotentialKind = cfg.oracle.kind.parse().map_err(CliError::Config)?;
    let mk = |parity: oracle::Parity| oracle::BoxProblem {
        half_length: cfg.oracle.half_length,
        strength: cfg.oracle.strength,
        kind,
        parity,
    };
    let even = oracle::box_spectrum(&mk(oracle::Parity::Even), cfg.oracle.count)
        .map_err(|e| CliError::Solver(e.to_string()))?;
    let odd = oracle::box_spectrum(&mk(oracle::Parity::Odd), cfg.oracle.count)
        .map_err(|e| CliError::Solver(e.to_string()))?;
    let bound = if kind == oracle::PotentialKind::Well && cfg.oracle.strength > 0.0 {
        Some(oracle::bound_state_energy_1d(cfg.oracle.strength))
    } else {
        None
    };
    Ok(AnalyticBlock {
        source: "analytic".into(),
        even_wavenumbers: even.iter().map(|m| m.k).collect(),
        even_energies: even.iter().map(|m| m.energy).collect(),
        odd_wavenumbers: odd.iter().map(|m| m.k).collect(),
        odd_energies: odd.iter().map(|m| m.energy).collect(),
        bound_state_energy: bound,
    })
}

/// `spectrum`: grid eigenvalues side by side with the analytic oracle,
/// bound check, optional eigenfunction CSV exports.
pub fn cmd_spectrum(cfg: &RunConfig, oracle_only: bool) -> Result<(), CliError> {
    let dir = out_dir(cfg)?;
    let analytic = oracle_block(cfg)?;
    if oracle_only {
        let doc = json!({
            "config": cfg,
            "spectrum": SpectrumDocument {
                source: "analytic".into(),
                params: SpectrumParams {
                    n: 0,
                    h: 0.0,
                    variant: "none".into(),
                    potential: PotentialSpec { kind: "oracle".into(), ..Default::default() },
                },
                eigenvalues: Vec::new(),
                bound_check: None,
                analytic: Some(analytic),
            },
        });
        let path = dir.join("spectrum.json");
        write_json(&path, &doc)?;
        println!("wrote {}", path.display());
        return Ok(());
    }
    let grid = make_grid(cfg.grid.n, cfg.grid.h).map_err(|e| CliError::Config(e.to_string()))?;
    let (pot, spec) = potential_of(cfg, &grid);
    let ham = assemble_hamiltonian(&grid, variant_of(cfg), &pot)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let dec =
        eigendecompose(&ham, cfg.resolved_seed()).map_err(|e| CliError::Solver(e.to_string()))?;
    let bound_check = if cfg.potential.kind == "delta" {
        Some(spectral_bound_check(
            dec.min_eigenvalue(),
            cfg.potential.tau,
            &grid,
        ))
    } else {
        None
    };
    let doc = json!({
        "config": cfg,
        "grid": GridMetadata::of(&grid),
        "spectrum": SpectrumDocument {
            source: "grid".into(),
            params: SpectrumParams {
                n: grid.n(),
                h: grid.h(),
                variant: cfg.laplacian.clone(),
                potential: spec,
            },
            eigenvalues: dec.eigenvalues().to_vec(),
            bound_check: bound_check.as_ref().map(BoundCheckDoc::from),
            analytic: Some(analytic),
        },
    });
    let path = dir.join("spectrum.json");
    write_json(&path, &doc)?;
    for &k in &cfg.output.eigenfunctions {
        if k >= dec.len() {
            return Err(CliError::Config(format!(
                "eigenfunction index {k} out of range for {} modes",
                dec.len()
            )));
        }
        let csv_path = dir.join(format!("eigenfunction_{k}.csv"));
        let file = fs::File::create(&csv_path)
            .map_err(|e| CliError::Solver(format!("writing {csv_path:?}: {e}")))?;
        grid_function_csv(dec.eigenvector(k), file).map_err(|e| CliError::Solver(e.to_string()))?;
    }
    if let Some(bc) = &bound_check {
        if !bc.pass {
            return Err(CliError::Validation(format!(
                "energy bound violated: min eigenvalue {} below {}",
                bc.min_eigenvalue, bc.bound
            )));
        }
    }
    println!(
        "wrote {} ({} eigenvalues, min {:.6})",
        path.display(),
        dec.len(),
        dec.min_eigenvalue()
    );
    Ok(())
}

#[derive(Debug, serde::Serialize)]
struct AxiomRow {
    axiom: u8,
    what: &'static str,
    pass: bool,
    measure: f64,
    note: String,
}

/// `axioms`: run the per-axiom property suite on the configured grid,
/// report measured residuals, exit nonzero on any failure. With
/// `allow_even` an even point count is admitted to exhibit the nullspace
/// failure.
pub fn cmd_axioms(cfg: &RunConfig, allow_even: bool) -> Result<(), CliError> {
    let dir = out_dir(cfg)?;
    let grid = if allow_even {
        Grid::new_lenient(cfg.grid.n, cfg.grid.h).map_err(|e| CliError::Config(e.to_string()))?
    } else {
        make_grid(cfg.grid.n, cfg.grid.h).map_err(|e| CliError::Config(e.to_string()))?
    };
    let n = grid.n();
    let d = build_derivative(&grid);
    let seed = cfg.resolved_seed();
    let mut rng = seed;
    let mut next = move || {
        rng = rng.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = rng;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^= z >> 31;
        ((z >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let random_fn = |next: &mut dyn FnMut() -> f64| {
        GridFunction::from_values(&grid, (0..n).map(|_| 5.0 * next()).collect()).unwrap()
    };
    let mut rows: Vec<AxiomRow> = Vec::new();

    // Axiom 1: the point-characteristic functions generate the space
    let u = random_fn(&mut next);
    let mut recon_err = 0.0f64;
    for a in 0..n {
        let coeff = u.integral_of_product(&delta(&grid, a).unwrap()).unwrap();
        recon_err = recon_err.max((coeff - u.value(a)).abs());
    }
    rows.push(AxiomRow {
        axiom: 1,
        what: "delta-coefficient reconstruction",
        pass: recon_err == 0.0,
        measure: recon_err,
        note: "max |∮u·δ_a - u(a)|".into(),
    });

    // Axiom 2: pointwise integral extends the Riemann integral
    let hw = grid.halfwidth();
    let f = move |x: f64| {
        let u = x / (0.5 * hw);
        if u.abs() < 1.0 {
            (1.0 - u * u).powi(4)
        } else {
            0.0
        }
    };
    let fg = embed_total(f, &grid).unwrap();
    let riemann = simpson(f, -0.5 * hw, 0.5 * hw, 20000);
    let int_err = (fg.pointwise_integral() - riemann).abs();
    rows.push(AxiomRow {
        axiom: 2,
        what: "integral extends Riemann",
        pass: int_err <= 1e-2 * riemann.abs().max(1e-6),
        measure: int_err,
        note: format!("|∮f° - ∫f| for a compact bump (∫f = {riemann:.6})"),
    });

    // Axiom 3: positive point weights
    let chi0 = chi(&grid, grid.origin_index()).unwrap();
    let d0 = chi0.pointwise_integral();
    rows.push(AxiomRow {
        axiom: 3,
        what: "positive point weights",
        pass: (0..n).all(|j| grid.weight(j) > 0.0) && d0 > 0.0,
        measure: d0,
        note: "∮χ₀ dx = d(0)".into(),
    });

    // Axiom 4: derivative consistent with the classical one on smooth data
    let c = grid.circumference();
    let k = 2.0 * std::f64::consts::PI / c;
    let smooth = embed_total(|x| (k * x).sin(), &grid).unwrap();
    let ds = d.apply(&smooth);
    let mut d_err = 0.0f64;
    for j in 0..n {
        d_err = d_err.max((ds.value(j) - k * (k * grid.point(j)).cos()).abs());
    }
    let d_bound = k * k * k * grid.h() * grid.h() / 6.0 * 1.5;
    rows.push(AxiomRow {
        axiom: 4,
        what: "derivative consistency O(h²)",
        pass: d_err <= d_bound,
        measure: d_err,
        note: format!("max |D sin° - (sin)'| vs Taylor bound {d_bound:.3e}"),
    });

    // Axiom 5: constants-only nullspace
    let const_err = d
        .apply(&GridFunction::constant(&grid, 1.0f64))
        .values()
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let sawtooth = GridFunction::from_values(
        &grid,
        (0..n)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 })
            .collect(),
    )
    .unwrap();
    let sawtooth_norm = d.apply(&sawtooth).norm();
    let rank_ok = if n <= 31 {
        d.dense_rank(1e-10) == n - 1
    } else {
        sawtooth_norm > 1e-8
    };
    rows.push(AxiomRow {
        axiom: 5,
        what: "nullspace = constants",
        pass: const_err == 0.0 && rank_ok,
        measure: sawtooth_norm,
        note: if n % 2 == 0 {
            "even point count: sawtooth joins the nullspace".into()
        } else {
            "‖D·sawtooth‖ (nonzero for odd counts)".into()
        },
    });

    // Axiom 6: locality (declared bandwidths hold exactly)
    let bw_defect = d
        .bandwidth_defect()
        .max(laplacian(&grid, LaplacianVariant::PaperLiteral).bandwidth_defect())
        .max(laplacian(&grid, LaplacianVariant::Compact).bandwidth_defect());
    rows.push(AxiomRow {
        axiom: 6,
        what: "locality within declared bandwidth",
        pass: bw_defect == 0.0,
        measure: bw_defect,
        note: "max entry outside the band".into(),
    });

    // Axiom 7: integration by parts with zero boundary terms
    let v = random_fn(&mut next);
    let ibp =
        d.apply(&u).integral_of_product(&v).unwrap() + u.integral_of_product(&d.apply(&v)).unwrap();
    let scale = u.norm() * v.norm();
    rows.push(AxiomRow {
        axiom: 7,
        what: "integration by parts",
        pass: ibp.abs() <= 1e-13 * scale,
        measure: ibp.abs(),
        note: format!("|∮(Du)v + ∮u(Dv)| vs 1e-13·scale = {:.3e}", 1e-13 * scale),
    });

    let all_pass = rows.iter().all(|r| r.pass);
    let doc = json!({
        "config": cfg,
        "grid": { "n": n, "h": grid.h(), "weights_uniform": true },
        "axioms": rows,
        "pass": all_pass,
    });
    let path = dir.join("axioms.json");
    write_json(&path, &doc)?;
    for r in &rows {
        println!(
            "axiom {}: {} — {} ({:.3e}) {}",
            r.axiom,
            if r.pass { "pass" } else { "FAIL" },
            r.what,
            r.measure,
            r.note
        );
    }
    println!("wrote {}", path.display());
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Validation("axiom suite failed".into()))
    }
}

fn run_stage_net<F>(stages: &[Stage], workers: usize, eval: F) -> Result<Net, CliError>
where
    F: Fn(&Stage) -> Result<f64, String> + Sync,
{
    if workers <= 1 {
        return run_net(stages, |s| eval(s)).map_err(|e| CliError::Solver(e.to_string()));
    }
    // stages are independent; evaluate in parallel, keep stage order
    let results: Vec<(Stage, Result<f64, String>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in stages.chunks(stages.len().div_ceil(workers)) {
            handles.push(scope.spawn(|| chunk.iter().map(|s| (*s, eval(s))).collect::<Vec<_>>()));
        }
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut cache = std::collections::HashMap::new();
    for (s, r) in results {
        cache.insert((s.n, s.h.to_bits()), r);
    }
    run_net(stages, |s| cache[&(s.n, s.h.to_bits())].clone())
        .map_err(|e| CliError::Solver(e.to_string()))
}

/// `converge`: run the configured net over the stage chain and emit the
/// CSV plus a JSON limit summary.
pub fn cmd_converge(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = out_dir(cfg)?;
    let stages = cfg.stage_list().map_err(CliError::Config)?;
    if stages.len() < 3 {
        return Err(CliError::Config(format!(
            "need at least 3 stages, have {}",
            stages.len()
        )));
    }
    let seed = cfg.resolved_seed();
    let (net, extra): (Net, serde_json::Value) = match cfg.net.kind.as_str() {
        // lowest eigenvalue of each square-well width on the finest stage,
        // refined against the exact delta bump
        "well_widths" => {
            let stage = *stages.last().unwrap();
            let approx = approximation_net(stage, cfg.potential.tau, &cfg.net.widths)
                .map_err(|e| CliError::Solver(e.to_string()))?;
            // report the width net as a pseudo-stage net over widths
            let rows: Vec<serde_json::Value> = approx
                .well_energies
                .iter()
                .map(|(w, e)| json!({ "width": w, "energy": e, "gap": (e - approx.delta_energy).abs() }))
                .collect();
            let monotone = approx.well_energies.windows(2).all(|p| {
                (p[1].1 - approx.delta_energy).abs() < (p[0].1 - approx.delta_energy).abs()
            });
            let doc = json!({
                "config": cfg,
                "kind": "well_widths",
                "stage": { "n": stage.n, "h": stage.h },
                "delta_energy": approx.delta_energy,
                "width_extrapolated": approx.extrapolated,
                "monotone_approach": monotone,
                "rows": rows,
            });
            let path = dir.join("net.json");
            write_json(&path, &doc)?;
            let mut csv = String::from("width,energy,gap\n");
            for (w, e) in &approx.well_energies {
                csv.push_str(&format!("{w},{e},{}\n", (e - approx.delta_energy).abs()));
            }
            fs::write(dir.join("net.csv"), csv).map_err(|e| CliError::Solver(e.to_string()))?;
            println!(
                "wrote {} (delta {}, extrapolated {}, monotone {monotone})",
                path.display(),
                approx.delta_energy,
                approx.extrapolated
            );
            return Ok(());
        }
        // ground-state shift of the single-point indicator χ₀: -> 0 with h
        "chi" => {
            let net = run_stage_net(&stages, cfg.workers, |s| {
                let grid = Grid::from_stage(*s);
                let free = assemble_hamiltonian(&grid, LaplacianVariant::Compact, &Potential::None)
                    .map_err(|e| e.to_string())?;
                let bumped = assemble_hamiltonian(
                    &grid,
                    LaplacianVariant::Compact,
                    &Potential::Indicator {
                        predicate: Arc::new(|x: f64| x == 0.0),
                        height: 1.0,
                    },
                )
                .map_err(|e| e.to_string())?;
                let (e0, _) = lowest_eigenpair(&free, seed).map_err(|e| e.to_string())?;
                let (e1, _) = lowest_eigenpair(&bumped, seed).map_err(|e| e.to_string())?;
                Ok(e1 - e0)
            })?;
            (
                net,
                json!({ "kind": "chi", "note": "ground-state shift of χ₀ potential" }),
            )
        }
        "constant" => {
            let net = run_stage_net(&stages, cfg.workers, |_| Ok(1.0))?;
            (net, json!({ "kind": "constant" }))
        }
        _ => unreachable!("validated"),
    };
    let est = estimate_limit(&net, cfg.net.tolerance);
    let doc = json!({
        "config": cfg,
        "net": extra,
        "summary": NetSummary::from(&est),
    });
    let json_path = dir.join("net.json");
    write_json(&json_path, &doc)?;
    let csv_path = dir.join("net.csv");
    let file = fs::File::create(&csv_path).map_err(|e| CliError::Solver(e.to_string()))?;
    net_csv(&net, file).map_err(|e| CliError::Solver(e.to_string()))?;
    println!(
        "wrote {} and {} (estimate {:.6e}, converged {})",
        json_path.display(),
        csv_path.display(),
        est.value,
        est.converged
    );
    Ok(())
}

/// `evolve`: spectral time evolution of the configured initial state,
/// emitting |ψ(x,t)|² snapshots and a norm/energy drift log.
pub fn cmd_evolve(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = out_dir(cfg)?;
    let grid = make_grid(cfg.grid.n, cfg.grid.h).map_err(|e| CliError::Config(e.to_string()))?;
    let (pot, _) = potential_of(cfg, &grid);
    let ham: Hamiltonian = assemble_hamiltonian(&grid, variant_of(cfg), &pot)
        .map_err(|e| CliError::Config(e.to_string()))?;
    let dec =
        eigendecompose(&ham, cfg.resolved_seed()).map_err(|e| CliError::Solver(e.to_string()))?;
    let psi0 = match cfg.evolve.state.as_str() {
        "gaussian" => {
            let s = cfg.evolve.sigma;
            embed_total(|x| (-x * x / (2.0 * s * s)).exp(), &grid)
                .map_err(|e| CliError::Config(e.to_string()))?
                .normalized()
                .to_complex()
        }
        "delta" => sqrt_delta(&grid, grid.origin_index())
            .map_err(|e| CliError::Config(e.to_string()))?
            .to_complex(),
        "eigenstate" => {
            let k = cfg.evolve.eigenstate;
            if k >= dec.len() {
                return Err(CliError::Config(format!(
                    "eigenstate {k} out of range for {} modes",
                    dec.len()
                )));
            }
            dec.eigenvector(k).to_complex()
        }
        _ => unreachable!("validated"),
    };
    let norm0 = psi0.norm();
    if (norm0 - 1.0).abs() > 1e-10 {
        return Err(CliError::Validation(format!(
            "initial state norm {norm0} is not 1"
        )));
    }
    let e0 = ham
        .energy_expectation(&psi0)
        .map_err(|e| CliError::Solver(e.to_string()))?;
    let mut density = String::from("t,x,density\n");
    let mut drift = String::from("t,norm,energy\n");
    let mut max_norm_drift = 0.0f64;
    let mut max_energy_drift = 0.0f64;
    let steps = cfg.evolve.steps.max(1);
    for step in 0..=steps {
        let t = cfg.evolve.t_max * step as f64 / steps as f64;
        let psit = evolve_state(&dec, &psi0, t).map_err(|e| CliError::Solver(e.to_string()))?;
        let norm = psit.norm();
        let et = ham
            .energy_expectation(&psit)
            .map_err(|e| CliError::Solver(e.to_string()))?;
        max_norm_drift = max_norm_drift.max((norm - 1.0).abs());
        max_energy_drift = max_energy_drift.max((et - e0).abs());
        drift.push_str(&format!("{t},{norm},{et}\n"));
        // snapshots: ten evenly spaced plus endpoints
        if step % (steps / 10).max(1) == 0 || step == steps {
            for j in 0..grid.n() {
                density.push_str(&format!(
                    "{t},{},{}\n",
                    grid.point(j),
                    psit.value(j).norm_sqr() * grid.weight(j)
                ));
            }
        }
    }
    fs::write(dir.join("evolution.csv"), density).map_err(|e| CliError::Solver(e.to_string()))?;
    fs::write(dir.join("drift.csv"), drift).map_err(|e| CliError::Solver(e.to_string()))?;
    let probs =
        measurement_probabilities(&psi0, &dec).map_err(|e| CliError::Solver(e.to_string()))?;
    let total_p: f64 = probs.iter().map(|m| m.probability).sum();
    let doc = json!({
        "config": cfg,
        "initial_energy": e0,
        "max_norm_drift": max_norm_drift,
        "max_energy_drift": max_energy_drift,
        "measurement_probability_total": total_p,
    });
    let path = dir.join("evolve.json");
    write_json(&path, &doc)?;
    // also export the initial state for plotting
    let file = fs::File::create(dir.join("state_initial.csv"))
        .map_err(|e| CliError::Solver(e.to_string()))?;
    grid_function_csv_complex(&psi0, file).map_err(|e| CliError::Solver(e.to_string()))?;
    println!(
        "wrote {} (norm drift {max_norm_drift:.3e}, energy drift {max_energy_drift:.3e})",
        path.display()
    );
    if max_norm_drift > 1e-8 {
        return Err(CliError::Validation(format!(
            "norm drift {max_norm_drift:e} exceeds 1e-8"
        )));
    }
    Ok(())
}

/// `oracle`: closed-form and root-found reference values only.
pub fn cmd_oracle(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = out_dir(cfg)?;
    let block = oracle_block(cfg)?;
    let o = &cfg.oracle;
    let multidim = json!({
        "n2d": oracle::n2d(o.strength.abs().max(1e-12)).ok(),
        "n3d": oracle::n3d(o.strength.abs().max(1e-12), o.eps_w).ok(),
        "e2d_bare": oracle::e2d_bare(o.strength.abs().max(1e-12), o.eps_w).ok(),
        "tau_renormalized": oracle::renormalized_transparency(o.strength, o.sigma, o.omega).ok(),
        "e2d_renormalized": oracle::renormalized_transparency(o.strength, o.sigma, o.omega)
            .and_then(|tr| oracle::e2d_renormalized(tr, o.omega))
            .ok(),
    });
    let doc = json!({
        "config": cfg,
        "source": "analytic",
        "box": {
            "half_length": o.half_length,
            "strength": o.strength,
            "kind": o.kind,
            "even_wavenumbers": block.even_wavenumbers,
            "even_energies": block.even_energies,
            "odd_wavenumbers": block.odd_wavenumbers,
            "odd_energies": block.odd_energies,
            "bound_state_energy": block.bound_state_energy,
        },
        "multidim": multidim,
    });
    let path = dir.join("oracle.json");
    write_json(&path, &doc)?;
    println!("wrote {}", path.display());
    Ok(())
}

/// `scalar-demo`: a dump of the non-Archimedean arithmetic — the worked
/// examples rendered in the textual scalar format.
pub fn cmd_scalar_demo(cfg: &RunConfig) -> Result<(), CliError> {
    let dir = out_dir(cfg)?;
    let eps = EuclideanScalar::epsilon();
    let sigma = EuclideanScalar::epsilon_inv();
    let examples = json!([
        {
            "expr": "ε · σ (σ = ε⁻¹)",
            "value": (eps.clone() * sigma.clone()).to_string(),
        },
        {
            "expr": "(1 + ε)(1 - ε)",
            "value": ((EuclideanScalar::one() + eps.clone())
                * (EuclideanScalar::one() - eps.clone()))
            .to_string(),
        },
        {
            "expr": "1 / (1 - ε)",
            "value": (EuclideanScalar::one() - eps.clone())
                .try_recip()
                .unwrap()
                .to_string(),
        },
        {
            "expr": "st(3 + 5ε)",
            "value": (EuclideanScalar::from_real(3.0) + EuclideanScalar::term(5.0, 1))
                .standard_part()
                .to_string(),
        },
        {
            "expr": "st(ε⁻¹)",
            "value": sigma.standard_part().to_string(),
        },
        {
            "expr": "classify(ε)",
            "value": eps.classify().to_string(),
        },
        {
            "expr": "classify(3 + ε⁻²)",
            "value": (EuclideanScalar::from_real(3.0) + EuclideanScalar::term(1.0, -2))
                .classify()
                .to_string(),
        },
        {
            "expr": "ε < 0.001",
            "value": (eps.clone() < EuclideanScalar::from_real(0.001)).to_string(),
        },
        {
            "expr": "ε⁻¹ > 10⁶",
            "value": (sigma.clone() > EuclideanScalar::from_real(1e6)).to_string(),
        },
        {
            "expr": "1 + ε ~ 1",
            "value": (EuclideanScalar::one() + eps.clone())
                .infinitely_close(&EuclideanScalar::one())
                .to_string(),
        },
    ]);
    let doc = json!({ "config": cfg, "examples": examples });
    let path = dir.join("scalars.json");
    write_json(&path, &doc)?;
    println!("wrote {}", path.display());
    Ok(())
}
