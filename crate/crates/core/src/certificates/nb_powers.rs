use nalgebra::DMatrix;

use crate::graph::RegularGraph;

/// `A⁽⁰⁾ … A⁽ᵀ⁾`, where `A⁽ᵗ⁾_ij` counts non-backtracking walks of length
/// `t` from `i` to `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonBacktrackingPowers {
    pub matrices: Vec<DMatrix<i64>>,
}

impl NonBacktrackingPowers {
    /// Largest walk length `T` held.
    pub fn max_len(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn get(&self, t: usize) -> &DMatrix<i64> {
        &self.matrices[t]
    }
}

pub fn nonbacktracking_powers(g: &RegularGraph, max_len: usize) -> NonBacktrackingPowers {
    NonBacktrackingPowers {
        matrices: NbPowerIter::new(g).take(max_len + 1).collect(),
    }
}

/// Streams `A⁽⁰⁾, A⁽¹⁾, …` keeping only the last two matrices:
///
/// ```text
/// A⁽⁰⁾ = I,  A⁽¹⁾ = A,  A⁽²⁾ = A² - dI,
/// A⁽ᵗ⁾ = A·A⁽ᵗ⁻¹⁾ - (d-1)·A⁽ᵗ⁻²⁾   (t >= 3)
/// ```
///
/// Products with `A` go through neighbor lists, `O(d n²)` per step.
pub struct NbPowerIter<'g> {
    g: &'g RegularGraph,
    t: usize,
    prev: Option<DMatrix<i64>>,
    cur: Option<DMatrix<i64>>,
}

impl<'g> NbPowerIter<'g> {
    pub fn new(g: &'g RegularGraph) -> Self {
        Self {
            g,
            t: 0,
            prev: None,
            cur: None,
        }
    }
}

fn times_adjacency(g: &RegularGraph, m: &DMatrix<i64>) -> DMatrix<i64> {
    let n = g.n();
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        let col = m.column(j);
        let mut dst = out.column_mut(j);
        for i in 0..n {
            dst[i] = g.neighbors(i).iter().map(|&k| col[k]).sum();
        }
    }
    out
}

impl Iterator for NbPowerIter<'_> {
    type Item = DMatrix<i64>;

    fn next(&mut self) -> Option<DMatrix<i64>> {
        let n = self.g.n();
        let d = self.g.d() as i64;
        let next = match self.t {
            0 => DMatrix::identity(n, n),
            1 => times_adjacency(self.g, self.cur.as_ref().unwrap()),
            t => {
                let cur = self.cur.as_ref().unwrap();
                let prev = self.prev.as_ref().unwrap();
                let coeff = if t == 2 { d } else { d - 1 };
                let mut m = times_adjacency(self.g, cur);
                m.zip_apply(prev, |x, p| *x -= coeff * p);
                m
            }
        };
        self.t += 1;
        self.prev = self.cur.take();
        self.cur = Some(next.clone());
        Some(next)
    }
}
