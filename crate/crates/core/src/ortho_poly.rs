//! Polynomials orthonormal under the Kesten–McKay measure, and the Gauss-type
//! quadrature rules built from their roots.
//!
//! With `z = λ / (2√(d-1))`, the polynomials `q_t` satisfy
//! `A⁽ᵗ⁾ = √(d(d-1)^{t-1}) · q_t(A / (2√(d-1)))` for the non-backtracking
//! walk matrices of any `d`-regular graph:
//!
//! ```text
//! q_0 = 1
//! q_1 = 2√((d-1)/d) z
//! q_2 = 2z q_1 - √(d/(d-1)) q_0          (from A⁽²⁾ = A² - dI)
//! q_{t+1} = 2z q_t - q_{t-1}              (t >= 2)
//! ```
//!
//! In the orthonormal basis this is the three-term recurrence of a Jacobi
//! matrix with zero diagonal, first off-diagonal `√d / (2√(d-1))` and all
//! later off-diagonals `1/2`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

fn check_degree(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("graph degree must be >= 2, got {d}")));
    }
    Ok(())
}

/// Off-diagonal entry `b_t` coupling `q_{t-1}` and `q_t` in `z q = J q`.
fn jacobi_offdiag(t: usize, d: usize) -> f64 {
    let d = d as f64;
    if t == 1 {
        d.sqrt() / (2.0 * (d - 1.0).sqrt())
    } else {
        0.5
    }
}

/// `q_t(z)` by forward recurrence. `d` must be at least 2.
pub fn q_eval(t: usize, z: f64, d: usize) -> f64 {
    *q_values(t, z, d).last().unwrap()
}

/// `[q_0(z), …, q_T(z)]`.
pub fn q_values(max_t: usize, z: f64, d: usize) -> Vec<f64> {
    let df = d as f64;
    let mut out = Vec::with_capacity(max_t + 1);
    out.push(1.0);
    if max_t >= 1 {
        out.push(2.0 * ((df - 1.0) / df).sqrt() * z);
    }
    if max_t >= 2 {
        out.push(2.0 * z * out[1] - (df / (df - 1.0)).sqrt());
    }
    for t in 3..=max_t {
        let next = 2.0 * z * out[t - 1] - out[t - 2];
        out.push(next);
    }
    out
}

/// Density of the Kesten–McKay measure on `[-1, 1]`:
/// `(2/π) · d(d-1) / (d² - 4(d-1)z²) · √(1-z²)`.
pub fn kesten_mckay_density(z: f64, d: usize) -> Result<f64> {
    check_degree(d)?;
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::Domain { value: z });
    }
    let df = d as f64;
    let denom = df * df - 4.0 * (df - 1.0) * z * z;
    if denom <= 0.0 {
        // Only d = 2 at z = ±1, where the density has an integrable pole.
        return Err(Error::Domain { value: z });
    }
    Ok(2.0 / PI * (df * (df - 1.0) / denom) * (1.0 - z * z).sqrt())
}

/// A polynomial `f(z) = Σ c_t q_t(z)` stored by its `q`-basis coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyInBasis {
    pub d: usize,
    pub coeffs: Vec<f64>,
}

impl PolyInBasis {
    pub fn new(d: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_degree(d)?;
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("polynomial needs at least one coefficient".into()));
        }
        Ok(Self { d, coeffs })
    }

    /// The basis polynomial `q_t`.
    pub fn basis(d: usize, t: usize) -> Result<Self> {
        let mut coeffs = vec![0.0; t + 1];
        coeffs[t] = 1.0;
        Self::new(d, coeffs)
    }

    /// Nominal degree `T` (length of the coefficient list minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: f64) -> f64 {
        q_values(self.degree(), z, self.d)
            .iter()
            .zip(&self.coeffs)
            .map(|(q, c)| q * c)
            .sum()
    }
}

/// Nodes `r_1 > … > r_m` (the roots of `q_m`) and positive weights of the
/// Gauss-type rule for the Kesten–McKay measure.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub d: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn m(&self) -> usize {
        self.nodes.len()
    }

    /// Left-most node `r_m`.
    pub fn leftmost(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    /// `Σ ω_i u(r_i)`: exact for polynomials of degree below `2m`.
    pub fn integrate(&self, u: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&r, &w)| w * u(r)).sum()
    }
}

/// Builds the `m`-node rule from the eigen-decomposition of the `m×m` Jacobi
/// matrix: eigenvalues are the nodes, squared first eigenvector components
/// the weights.
pub fn quadrature_rule(m: usize, d: usize) -> Result<QuadratureRule> {
    check_degree(d)?;
    if m == 0 {
        return Err(Error::InvalidParameter("quadrature needs at least one node".into()));
    }
    let jacobi = DMatrix::from_fn(m, m, |i, j| {
        if i + 1 == j {
            jacobi_offdiag(j, d)
        } else if j + 1 == i {
            jacobi_offdiag(i, d)
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &r)| (r, eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { d, nodes, weights })
}

/// `⟨f, g⟩ = ∫ f g dμ` evaluated with `rule`, which must be exact for
/// `deg f + deg g`.
pub fn inner_product(f: &PolyInBasis, g: &PolyInBasis, rule: &QuadratureRule) -> Result<f64> {
    if f.d != rule.d || g.d != rule.d {
        return Err(Error::InvalidParameter(format!(
            "degree mismatch: polynomials use d = {}, {}, rule uses d = {}",
            f.d, g.d, rule.d
        )));
    }
    let needed = f.degree() + g.degree();
    if needed >= 2 * rule.m() {
        return Err(Error::DegreeBudget {
            nodes: rule.m(),
            exact_below: 2 * rule.m(),
            needed,
        });
    }
    Ok(rule.integrate(|z| f.eval(z) * g.eval(z)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chebyshev_u(t: i64, z: f64) -> f64 {
        match t {
            -1 => 0.0,
            0 => 1.0,
            _ => {
                let (mut prev, mut cur) = (1.0, 2.0 * z);
                for _ in 1..t {
                    (prev, cur) = (cur, 2.0 * z * cur - prev);
                }
                cur
            }
        }
    }

    #[test]
    fn q1_value() {
        assert!((q_eval(1, 1.0, 3) - 2.0 * (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((q_eval(1, 1.0, 3) - 1.632993).abs() < 1e-6);
    }

    #[test]
    fn q2_at_zero() {
        assert!((q_eval(2, 0.0, 3) + 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn matches_chebyshev_closed_form() {
        let mut z = -0.97;
        for d in [3usize, 4, 7] {
            let df = d as f64;
            for _ in 0..50 {
                z = (z * 1.618 + 0.37) % 1.0;
                for t in 1..=8i64 {
                    let closed = ((df - 1.0) / df).sqrt() * chebyshev_u(t, z)
                        - chebyshev_u(t - 2, z) / (df * (df - 1.0)).sqrt();
                    assert!((q_eval(t as usize, z, d) - closed).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn density_values() {
        let v = kesten_mckay_density(0.0, 3).unwrap();
        assert!((v - 4.0 / (3.0 * PI)).abs() < 1e-15);
        assert!((v - 0.4244132).abs() < 1e-7);
        for d in [3, 4, 10] {
            assert_eq!(kesten_mckay_density(1.0, d).unwrap(), 0.0);
            assert_eq!(kesten_mckay_density(-1.0, d).unwrap(), 0.0);
        }
        assert!(matches!(kesten_mckay_density(1.5, 3), Err(Error::Domain { .. })));
        assert!(matches!(kesten_mckay_density(1.0, 2), Err(Error::Domain { .. })));
    }

    #[test]
    fn two_node_rule() {
        let rule = quadrature_rule(2, 3).unwrap();
        let r = (3.0f64 / 8.0).sqrt();
        assert!((rule.nodes[0] - r).abs() < 1e-14);
        assert!((rule.nodes[1] + r).abs() < 1e-14);
        assert!((rule.nodes[0] - 0.6123724).abs() < 1e-7);
    }

    #[test]
    fn one_node_rule() {
        for d in [2, 3, 9] {
            let rule = quadrature_rule(1, d).unwrap();
            assert_eq!(rule.nodes, vec![0.0]);
            assert!((rule.weights[0] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn nodes_are_roots_of_q_m() {
        for d in [3, 5] {
            for m in 1..=12 {
                let rule = quadrature_rule(m, d).unwrap();
                for &r in &rule.nodes {
                    assert!(q_eval(m, r, d).abs() < 1e-10, "m={m} d={d} r={r}");
                }
            }
        }
    }

    #[test]
    fn inner_product_budget_and_values() {
        let rule = quadrature_rule(11, 3).unwrap();
        let q0 = PolyInBasis::basis(3, 0).unwrap();
        assert!((inner_product(&q0, &q0, &rule).unwrap() - 1.0).abs() < 1e-14);
        let z = PolyInBasis::new(3, vec![0.0, 1.0 / (2.0 * (2.0f64 / 3.0).sqrt())]).unwrap();
        let q1 = PolyInBasis::basis(3, 1).unwrap();
        let v = inner_product(&q1, &z, &rule).unwrap();
        assert!((v - 3f64.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-14);

        let small = quadrature_rule(2, 3).unwrap();
        let q2 = PolyInBasis::basis(3, 2).unwrap();
        assert!(matches!(
            inner_product(&q2, &q2, &small),
            Err(Error::DegreeBudget { needed: 4, .. })
        ));
        let q1d4 = PolyInBasis::basis(4, 1).unwrap();
        assert!(inner_product(&q1d4, &q1, &rule).is_err());
    }
}
