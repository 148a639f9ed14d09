use crate::control::PiecewiseControl;
use crate::error::{GrapeError, Result};
use crate::grad::propagate;
use crate::optim::{multi_start, optimize, OptimReport, OptimSettings};
use crate::problem::{ControlProblem, Target};

/// Time-energy lower bound on the transfer time:
/// tau = arccos|<psi*|psi0>| / mean(Delta E), with the energy variance
/// averaged over the propagated trajectory.
pub fn mandelstam_tamm_bound(
    problem: &ControlProblem,
    controls: &PiecewiseControl,
) -> Result<f64> {
    let Target::State { initial, target } = &problem.target else {
        return Err(GrapeError::InvalidControls(
            "the time-energy bound is defined for state-transfer problems".into(),
        ));
    };
    let prop = propagate(problem, controls)?;
    let mut psi = initial.clone();
    let mut var_sum = 0.0f64;
    for j in 0..controls.n_steps() {
        let h = (problem.hamiltonian)(&controls.step_values(j));
        let h2 = h.matmul(&h)?;
        let e = h.expectation(&psi)?.re;
        let e2 = h2.expectation(&psi)?.re;
        var_sum += (e2 - e * e).max(0.0).sqrt();
        psi = prop.step_unitaries[j].apply(&psi)?;
    }
    let mean_de = var_sum / controls.n_steps() as f64;
    let overlap = initial.inner(target)?.norm().min(1.0);
    if mean_de <= 0.0 {
        return Ok(if overlap > 1.0 - 1e-15 { 0.0 } else { f64::INFINITY });
    }
    Ok(overlap.acos() / mean_de)
}

/// Result of the warm-started minimum-time sweep.
#[derive(Debug, Clone)]
pub struct QslSweepResult {
    /// (T, optimized cost) in the order visited (descending T).
    pub curve: Vec<(f64, f64)>,
    /// Smallest T whose optimized cost reached the threshold.
    pub t_star: Option<f64>,
    pub threshold: f64,
}

/// Optimize a family of problems over descending durations, reusing each
/// optimum as the next duration's seed (values copied, dt rescaled). When a
/// warm start stalls above the threshold, a few fresh seeds are tried before
/// the duration is declared uncontrollable.
#[allow(clippy::too_many_arguments)]
pub fn qsl_sweep(
    problem_family: impl Fn(f64) -> ControlProblem,
    t_list_desc: &[f64],
    threshold: f64,
    layout_for: impl Fn(f64) -> PiecewiseControl,
    settings: &OptimSettings,
    n_seeds: usize,
    retry_seeds: usize,
    rng_seed: u64,
) -> Result<QslSweepResult> {
    assert!(
        t_list_desc.windows(2).all(|w| w[0] > w[1]),
        "durations must be strictly descending"
    );
    let mut curve = Vec::with_capacity(t_list_desc.len());
    let mut warm: Option<PiecewiseControl> = None;

    for (i, &t) in t_list_desc.iter().enumerate() {
        let problem = problem_family(t);
        let layout = layout_for(t);
        let mut best: Option<OptimReport> = None;

        if let Some(prev) = &warm {
            let seeded = layout.with_values_clamped(prev.values().to_vec());
            let report = optimize(&problem, &seeded, settings)?;
            best = Some(report);
        }
        let needs_fresh = match &best {
            None => true,
            Some(r) => r.final_cost > threshold,
        };
        if needs_fresh {
            let n = if best.is_none() { n_seeds } else { retry_seeds };
            let fresh = multi_start(&problem, &layout, settings, n, rng_seed ^ (i as u64) << 32)?;
            best = Some(match best {
                Some(b) if b.final_cost <= fresh.final_cost => b,
                _ => fresh,
            });
        }
        let report = best.expect("at least one optimization ran");
        curve.push((t, report.final_cost));
        warm = Some(report.controls);
    }

    let t_star = curve
        .iter()
        .filter(|(_, j)| *j <= threshold)
        .map(|(t, _)| *t)
        .fold(None, |acc: Option<f64>, t| {
            Some(acc.map_or(t, |a| a.min(t)))
        });
    Ok(QslSweepResult {
        curve,
        t_star,
        threshold,
    })
}
