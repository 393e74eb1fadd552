//! Nelder-Mead simplex minimization.
//!
//! Infinite objective values are allowed and mark infeasible points; the
//! simplex contracts away from them.

#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    pub max_iters: usize,
    /// Initial edge length along each coordinate.
    pub initial_step: f64,
    /// Stop once the spread of simplex values drops below this.
    pub f_tol: f64,
    /// Re-seed a fresh simplex around the best point after convergence, as
    /// long as iterations remain and the previous re-seed paid off.
    pub restart_on_converge: bool,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            max_iters: 500,
            initial_step: 0.25,
            f_tol: 1e-12,
            restart_on_converge: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iters: usize,
    pub evals: usize,
}

/// Reflection, expansion, contraction and shrink coefficients, scaled with
/// the dimension so that large simplices do not collapse prematurely.
fn coefficients(n: usize) -> (f64, f64, f64, f64) {
    let n = n.max(2) as f64;
    (1.0, 1.0 + 2.0 / n, 0.75 - 0.5 / n, 1.0 - 1.0 / n)
}

fn initial_simplex(x0: &[f64], step: f64) -> Vec<Vec<f64>> {
    let mut simplex = vec![x0.to_vec()];
    for i in 0..x0.len() {
        let mut v = x0.to_vec();
        v[i] += step * (1.0 + x0[i].abs());
        simplex.push(v);
    }
    simplex
}

pub fn minimize<F>(mut objective: F, x0: &[f64], opts: SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = objective(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let f0 = eval(x0, &mut evals);
    if n == 0 || opts.max_iters == 0 {
        return SimplexResult {
            x: x0.to_vec(),
            f: f0,
            iters: 0,
            evals,
        };
    }

    let (alpha, gamma, rho, sigma) = coefficients(n);
    let mut simplex = initial_simplex(x0, opts.initial_step);
    let mut values: Vec<f64> = std::iter::once(f0)
        .chain(simplex[1..].iter().map(|v| eval(v, &mut evals)))
        .collect();

    let mut iters = 0;
    let mut last_reseed_best = f64::INFINITY;
    while iters < opts.max_iters {
        iters += 1;
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        let spread = values[n] - values[0];
        if values[0].is_finite() && spread.is_finite() && spread <= opts.f_tol {
            if !opts.restart_on_converge || values[0] >= last_reseed_best - opts.f_tol {
                break;
            }
            last_reseed_best = values[0];
            let best = simplex[0].clone();
            let step = simplex_diameter(&simplex).max(1e-9);
            simplex = initial_simplex(&best, step.min(opts.initial_step));
            values = std::iter::once(values[0])
                .chain(simplex[1..].iter().map(|v| eval(v, &mut evals)))
                .collect();
            continue;
        }

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let xr = along(alpha);
        let fr = eval(&xr, &mut evals);
        if fr < values[0] {
            let xe = along(gamma);
            let fe = eval(&xe, &mut evals);
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < values[n] {
            let xc = along(rho * alpha);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        } else {
            let xc = along(-rho);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        };
        if fc < values[n].min(fr) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }
        // Shrink toward the best vertex.
        let best = simplex[0].clone();
        for i in 1..=n {
            for j in 0..n {
                simplex[i][j] = best[j] + sigma * (simplex[i][j] - best[j]);
            }
            values[i] = eval(&simplex[i], &mut evals);
        }
    }

    let (bi, &bf) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("simplex is non-empty");
    let (x, f) = if bf <= f0 { (simplex[bi].clone(), bf) } else { (x0.to_vec(), f0) };
    SimplexResult { x, f, iters, evals }
}

fn simplex_diameter(simplex: &[Vec<f64>]) -> f64 {
    let best = &simplex[0];
    simplex[1..]
        .iter()
        .map(|v| v.iter().zip(best).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}
