#![allow(dead_code)]

use std::path::PathBuf;

use theta_core::graph::RegularGraph;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn load_fixture(name: &str) -> RegularGraph {
    RegularGraph::read_edge_list(fixture(name)).expect("fixture parses")
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` with Richardson correction.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫ u dμ` against the Kesten–McKay measure, computed independently of the
/// library: the density is written out here and the integral is taken over
/// `θ ∈ [0, π]` with `z = cos θ`, which removes the square-root endpoints.
pub fn kesten_mckay_integral(u: &dyn Fn(f64) -> f64, d: usize) -> f64 {
    let d = d as f64;
    let integrand = |theta: f64| {
        let z = theta.cos();
        let s = theta.sin();
        let density = 2.0 / std::f64::consts::PI * d * (d - 1.0) / (d * d - 4.0 * (d - 1.0) * z * z) * s;
        density * s * u(z)
    };
    adaptive_simpson(&integrand, 0.0, std::f64::consts::PI, 1e-13)
}

/// Horner evaluation of a polynomial given by monomial coefficients.
pub fn horner(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
}

/// Counts non-backtracking walks of length `t` between every pair of
/// vertices by depth-first enumeration.
pub fn brute_force_nb_walks(g: &RegularGraph, t: usize) -> Vec<Vec<i64>> {
    fn walk(g: &RegularGraph, start: usize, prev: Option<usize>, cur: usize, left: usize, out: &mut [Vec<i64>]) {
        if left == 0 {
            out[start][cur] += 1;
            return;
        }
        for &next in g.neighbors(cur) {
            if Some(next) != prev {
                walk(g, start, Some(cur), next, left - 1, out);
            }
        }
    }
    let n = g.n();
    let mut out = vec![vec![0i64; n]; n];
    for s in 0..n {
        walk(g, s, None, s, t, &mut out);
    }
    out
}

/// Shortest cycle length by exhaustive search over simple paths; `None` for
/// forests. Exponential, for small graphs only.
pub fn exhaustive_girth(g: &RegularGraph) -> Option<usize> {
    fn has_cycle_of_len(g: &RegularGraph, start: usize, cur: usize, len: usize, target: usize, on_path: &mut [bool]) -> bool {
        for &next in g.neighbors(cur) {
            if next == start && len + 1 == target && target >= 3 {
                return true;
            }
            // Only paths through vertices above `start`, so each cycle is
            // found from its smallest vertex.
            if next > start && !on_path[next] && len + 1 < target {
                on_path[next] = true;
                let found = has_cycle_of_len(g, start, next, len + 1, target, on_path);
                on_path[next] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }
    let n = g.n();
    for target in 3..=n {
        for s in 0..n {
            let mut on_path = vec![false; n];
            on_path[s] = true;
            if has_cycle_of_len(g, s, s, 0, target, &mut on_path) {
                return Some(target);
            }
        }
    }
    None
}

/// Checks that `cycle` is a simple closed walk in `g`.
pub fn is_simple_cycle(g: &RegularGraph, cycle: &[usize]) -> bool {
    let mut seen = std::collections::HashSet::new();
    cycle.len() >= 3
        && cycle.iter().all(|v| seen.insert(*v))
        && (0..cycle.len()).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]))
}
