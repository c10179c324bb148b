//! Small derivative-free simplex minimizer for smooth low-dimensional
//! objectives. Deterministic: no randomness anywhere in the iteration.

/// Stopping and shape parameters.
#[derive(Debug, Clone)]
pub struct NelderMeadOptions {
    pub max_iters: usize,
    /// Converged when the simplex diameter falls below this.
    pub xtol: f64,
    /// Converged when the function spread over the simplex falls below this.
    pub ftol: f64,
    /// Edge length of the initial orthogonal simplex.
    pub init_step: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            max_iters: 500,
            xtol: 1e-9,
            ftol: 1e-18,
            init_step: 0.25,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iters: usize,
    pub evals: usize,
    pub converged: bool,
}

/// Minimize `f` from `x0` with the standard reflect/expand/contract/shrink
/// moves (α = 1, γ = 2, ρ = ½, σ = ½).
pub fn nelder_mead<F>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> NelderMeadResult
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evals = 0usize;
    let eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let fx0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), fx0));
    for i in 0..n {
        let mut xi = x0.to_vec();
        xi[i] += opts.init_step;
        let fxi = eval(&xi, &mut evals);
        simplex.push((xi, fxi));
    }

    let mut iters = 0usize;
    let mut converged = false;
    while iters < opts.max_iters {
        iters += 1;
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));

        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(simplex[0].0.iter())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        let spread = simplex[n].1 - simplex[0].1;
        if diameter <= opts.xtol || spread.abs() <= opts.ftol {
            converged = true;
            break;
        }

        // centroid of all but the worst
        let mut centroid = vec![0.0; n];
        for (x, _) in simplex.iter().take(n) {
            for (c, v) in centroid.iter_mut().zip(x.iter()) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let point = |coef: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(worst.0.iter())
                .map(|(c, w)| c + coef * (c - w))
                .collect()
        };

        let reflected = point(1.0);
        let fr = eval(&reflected, &mut evals);
        if fr < simplex[0].1 {
            let expanded = point(2.0);
            let fe = eval(&expanded, &mut evals);
            simplex[n] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let contracted = if fr < worst.1 { point(0.5) } else { point(-0.5) };
        let fc = eval(&contracted, &mut evals);
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        // shrink towards the best vertex
        let best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            for (v, b) in entry.0.iter_mut().zip(best.iter()) {
                *v = b + 0.5 * (*v - b);
            }
            entry.1 = eval(&entry.0, &mut evals);
        }
    }

    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    NelderMeadResult {
        x: simplex[0].0.clone(),
        fx: simplex[0].1,
        iters,
        evals,
        converged,
    }
}
