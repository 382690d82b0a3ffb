use serde::{Deserialize, Serialize};

use super::{McError, McEstimate, NoiseModel, Sampler};

/// Pseudo-threshold search settings; `model.p` is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub model: NoiseModel,
    pub trials_per_point: u64,
    /// Sign tests widen the sample up to this many trials.
    pub max_trials_per_point: u64,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub bracket: (f64, f64),
    pub scan_points: usize,
    /// Stop once `high / low <= 1 + rel_tol`.
    pub rel_tol: f64,
}

impl SearchConfig {
    pub fn new(model: NoiseModel, trials_per_point: u64, seed: u64) -> SearchConfig {
        SearchConfig {
            model,
            trials_per_point,
            max_trials_per_point: trials_per_point * 16,
            seed,
            jobs: None,
            bracket: (1e-5, 1e-1),
            scan_points: 9,
            rel_tol: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointEval {
    pub p: f64,
    pub estimate: McEstimate,
    /// +1 if e(p) > p, -1 if e(p) < p, 0 if the interval contains p.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoThreshold {
    pub epsilon_tilde: f64,
    pub bracket: (f64, f64),
    pub trials_per_point: u64,
    /// Both bracket ends carry a resolved sign.
    pub resolved: bool,
    /// The bracket reached the requested relative width.
    pub converged: bool,
    pub evaluations: Vec<PointEval>,
}

fn sign_of(est: &McEstimate, p: f64) -> i8 {
    if est.accepted_count == 0 {
        0
    } else if est.ci_low > p {
        1
    } else if est.ci_high < p {
        -1
    } else {
        0
    }
}

fn evaluate(sampler: &Sampler, cfg: &SearchConfig, p: f64) -> Result<PointEval, McError> {
    let model = cfg.model.at(p);
    let mut trials = cfg.trials_per_point.max(1);
    let (mut acc, mut err) = sampler.run_range(&model, 0, trials, cfg.seed, cfg.jobs)?;
    loop {
        let estimate = McEstimate::from_counts(acc, err, trials, cfg.seed);
        let sign = sign_of(&estimate, p);
        if sign != 0 || trials >= cfg.max_trials_per_point {
            return Ok(PointEval { p, estimate, sign });
        }
        let next = (trials * 4).min(cfg.max_trials_per_point);
        let (a, e) = sampler.run_range(&model, trials, next, cfg.seed, cfg.jobs)?;
        acc += a;
        err += e;
        trials = next;
    }
}

/// Geometric scan for a sign change of e(p) - p, then bisection in log p.
pub fn find_pseudothreshold(sampler: &Sampler, cfg: &SearchConfig) -> Result<PseudoThreshold, McError> {
    let (p_min, p_max) = cfg.bracket;
    let k = cfg.scan_points.max(2);
    let mut evaluations = Vec::new();
    let mut low: Option<f64> = None;
    let mut high: Option<f64> = None;
    for i in 0..k {
        let p = p_min * (p_max / p_min).powf(i as f64 / (k - 1) as f64);
        let ev = evaluate(sampler, cfg, p)?;
        let sign = ev.sign;
        evaluations.push(ev);
        match sign {
            -1 => low = Some(p),
            1 if low.is_some() => {
                high = Some(p);
                break;
            }
            _ => {}
        }
    }
    let (Some(mut lo), Some(mut hi)) = (low, high) else {
        let lo = low.unwrap_or(p_min);
        let hi = high.unwrap_or(p_max);
        return Ok(PseudoThreshold {
            epsilon_tilde: (lo * hi).sqrt(),
            bracket: (lo, hi),
            trials_per_point: cfg.trials_per_point,
            resolved: false,
            converged: false,
            evaluations,
        });
    };
    let mut converged = false;
    while hi / lo > 1.0 + cfg.rel_tol {
        let mid = (lo * hi).sqrt();
        let ev = evaluate(sampler, cfg, mid)?;
        let sign = ev.sign;
        evaluations.push(ev);
        match sign {
            -1 => lo = mid,
            1 => hi = mid,
            _ => break,
        }
    }
    if hi / lo <= 1.0 + cfg.rel_tol {
        converged = true;
    }
    Ok(PseudoThreshold {
        epsilon_tilde: (lo * hi).sqrt(),
        bracket: (lo, hi),
        trials_per_point: cfg.trials_per_point,
        resolved: true,
        converged,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub e_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub accept_rate: f64,
    pub accepted: u64,
    pub errors: u64,
    pub trials: u64,
}

/// e(p) at `points` geometrically spaced rates in `[p_min, p_max]`.
pub fn logical_rate_sweep(
    sampler: &Sampler,
    model: &NoiseModel,
    (p_min, p_max): (f64, f64),
    points: usize,
    trials: u64,
    seed: u64,
    jobs: Option<usize>,
) -> Result<Vec<SweepRow>, McError> {
    let points = points.max(1);
    (0..points)
        .map(|i| {
            let p = if points == 1 { p_min } else { p_min * (p_max / p_min).powf(i as f64 / (points - 1) as f64) };
            let est = sampler.estimate(&model.at(p), trials, seed, jobs)?;
            Ok(SweepRow {
                p,
                e_hat: est.e_hat,
                ci_low: est.ci_low,
                ci_high: est.ci_high,
                accept_rate: est.accept_rate(),
                accepted: est.accepted_count,
                errors: est.error_count,
                trials,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("p,e_hat,ci_low,ci_high,accept_rate\n");
    for r in rows {
        s.push_str(&format!("{:e},{:e},{:e},{:e},{}\n", r.p, r.e_hat, r.ci_low, r.ci_high, r.accept_rate));
    }
    s
}
