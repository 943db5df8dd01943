//! Box-constrained quasi-Newton minimization for low-dimensional
//! hyperparameter searches: projected BFGS with an Armijo backtracking search
//! along the projected path.

#[derive(Debug, Clone, Copy)]
pub struct BoxOptions {
    pub max_iterations: usize,
    /// Stop when the projected gradient's infinity norm drops below this.
    pub gradient_tolerance: f64,
    /// Stop when the relative decrease of the objective drops below this.
    pub value_tolerance: f64,
}

impl Default for BoxOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            gradient_tolerance: 1e-6,
            value_tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoxMinimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

fn project(x: &mut [f64], lower: &[f64], upper: &[f64]) {
    for ((v, &lo), &hi) in x.iter_mut().zip(lower).zip(upper) {
        *v = v.clamp(lo, hi);
    }
}

/// Components of the gradient that can still move the point inside the box.
fn projected_gradient(x: &[f64], g: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(g)
        .zip(lower.iter().zip(upper))
        .map(|((&xi, &gi), (&lo, &hi))| {
            if (xi <= lo && gi > 0.0) || (xi >= hi && gi < 0.0) {
                0.0
            } else {
                gi
            }
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Minimizes `f` over `[lower, upper]`. `f` returns the value and gradient;
/// a non-finite value marks an infeasible point and is backtracked from.
pub fn minimize_box<F>(
    mut f: F,
    x0: &[f64],
    lower: &[f64],
    upper: &[f64],
    options: &BoxOptions,
) -> BoxMinimum
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let n = x0.len();
    let mut x = x0.to_vec();
    project(&mut x, lower, upper);
    let (mut fx, mut g) = f(&x);
    let identity = |n: usize| {
        let mut h = vec![0.0; n * n];
        (0..n).for_each(|i| h[i * n + i] = 1.0);
        h
    };
    let mut h_inv = identity(n);
    let mut iterations = 0;

    if !fx.is_finite() {
        return BoxMinimum {
            x,
            value: fx,
            iterations,
        };
    }

    while iterations < options.max_iterations {
        iterations += 1;
        let pg = projected_gradient(&x, &g, lower, upper);
        if pg.iter().fold(0.0f64, |m, v| m.max(v.abs())) < options.gradient_tolerance {
            break;
        }

        let mut accepted = None;
        for attempt in 0..2 {
            if attempt == 1 {
                h_inv = identity(n);
            }
            // direction restricted to free variables
            let mut d: Vec<f64> = (0..n)
                .map(|i| -(0..n).map(|j| h_inv[i * n + j] * pg[j]).sum::<f64>())
                .collect();
            for i in 0..n {
                if pg[i] == 0.0 && g[i] != 0.0 {
                    d[i] = 0.0;
                }
            }
            if dot(&d, &pg) >= 0.0 {
                d = pg.iter().map(|v| -v).collect();
            }
            let mut step = 1.0;
            for _ in 0..40 {
                let mut trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
                project(&mut trial, lower, upper);
                let moved: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
                if moved.iter().all(|m| *m == 0.0) {
                    break;
                }
                let (ft, gt) = f(&trial);
                if ft.is_finite() && ft <= fx + 1e-4 * dot(&g, &moved) {
                    accepted = Some((trial, ft, gt, moved));
                    break;
                }
                step *= 0.5;
            }
            if accepted.is_some() {
                break;
            }
        }

        let Some((x_new, f_new, g_new, s)) = accepted else {
            break;
        };
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 {
            // H ← (I − ρ s yᵀ) H (I − ρ y sᵀ) + ρ s sᵀ
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| h_inv[i * n + j] * y[j]).sum())
                .collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    h_inv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        let decrease = fx - f_new;
        x = x_new;
        fx = f_new;
        g = g_new;
        if decrease.abs() <= options.value_tolerance * (1.0 + fx.abs()) {
            break;
        }
    }

    BoxMinimum {
        x,
        value: fx,
        iterations,
    }
}
