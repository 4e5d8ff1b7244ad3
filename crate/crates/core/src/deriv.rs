//! Derivative and Laplacian operators on the periodic grid.
//!
//! All operators here are banded circulants: an offset/coefficient stencil
//! applied with periodic wrap. The central-difference derivative satisfies,
//! exactly and by construction,
//!   - weighted antisymmetry `d_a D_{a,b} = -d_b D_{b,a}`,
//!   - `D·const = 0` with a one-dimensional nullspace for odd point counts,
//!   - locality: entries vanish outside the declared bandwidth.

use crate::grid::{Grid, GridFunction, GridScalar};

/// Which discrete Laplacian to use.
///
/// `PaperLiteral` is the composition `D∘D` of the central difference with
/// itself (bandwidth 2); it decouples the even and odd sublattices, which
/// pollutes delta-potential eigenfunctions. `Compact` is the standard
/// three-point second difference (bandwidth 1). Default for physics runs is
/// `Compact`; axiom checks exercise both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianVariant {
    PaperLiteral,
    Compact,
}

impl LaplacianVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            LaplacianVariant::PaperLiteral => "paper_literal",
            LaplacianVariant::Compact => "compact",
        }
    }
}

impl std::str::FromStr for LaplacianVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paper_literal" | "paper-literal" => Ok(LaplacianVariant::PaperLiteral),
            "compact" => Ok(LaplacianVariant::Compact),
            other => Err(format!("unknown laplacian variant `{other}`")),
        }
    }
}

/// Banded circulant operator: entries `M_{j, j+off mod n} = coeff(off)`.
#[derive(Debug, Clone)]
pub struct StencilOperator {
    grid: Grid,
    offsets: Vec<isize>,
    coeffs: Vec<f64>,
    bandwidth: usize,
}

impl StencilOperator {
    /// Periodic central difference `(u_{j+1} - u_{j-1}) / 2h`.
    pub fn derivative(grid: &Grid) -> StencilOperator {
        let c = 1.0 / (2.0 * grid.h());
        StencilOperator {
            grid: grid.clone(),
            offsets: vec![-1, 1],
            coeffs: vec![-c, c],
            bandwidth: 1,
        }
    }

    /// Discrete Laplacian in the requested variant.
    pub fn laplacian(grid: &Grid, variant: LaplacianVariant) -> StencilOperator {
        let h = grid.h();
        match variant {
            // D∘D: (u_{j+2} - 2u_j + u_{j-2}) / (4h²)
            LaplacianVariant::PaperLiteral => {
                let c = 1.0 / (4.0 * h * h);
                StencilOperator {
                    grid: grid.clone(),
                    offsets: vec![-2, 0, 2],
                    coeffs: vec![c, -2.0 * c, c],
                    bandwidth: 2,
                }
            }
            // (u_{j+1} - 2u_j + u_{j-1}) / h²
            LaplacianVariant::Compact => {
                let c = 1.0 / (h * h);
                StencilOperator {
                    grid: grid.clone(),
                    offsets: vec![-1, 0, 1],
                    coeffs: vec![c, -2.0 * c, c],
                    bandwidth: 1,
                }
            }
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn stencil(&self) -> impl Iterator<Item = (isize, f64)> + '_ {
        self.offsets
            .iter()
            .copied()
            .zip(self.coeffs.iter().copied())
    }

    /// Scale every coefficient; used to form `-(1/2)·laplacian`.
    pub fn scaled(&self, s: f64) -> StencilOperator {
        StencilOperator {
            grid: self.grid.clone(),
            offsets: self.offsets.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            bandwidth: self.bandwidth,
        }
    }

    /// Matrix entry `M_{a,b}` with periodic wrap.
    pub fn entry(&self, a: usize, b: usize) -> f64 {
        let n = self.grid.n() as isize;
        let mut acc = 0.0;
        for (off, c) in self.stencil() {
            let col = (a as isize + off).rem_euclid(n) as usize;
            if col == b {
                acc += c;
            }
        }
        acc
    }

    pub fn apply<S: GridScalar>(&self, u: &GridFunction<S>) -> GridFunction<S> {
        assert!(u.grid() == &self.grid, "operand lives on a different grid");
        let n = self.grid.n() as isize;
        let mut out = GridFunction::zeros(&self.grid);
        for j in 0..self.grid.n() {
            let mut acc = S::zero();
            for (off, c) in self.stencil() {
                let k = (j as isize + off).rem_euclid(n) as usize;
                acc = acc.add(&u.value(k).scale(c));
            }
            out.values_mut()[j] = acc;
        }
        out
    }

    /// Closed-form eigenvalues of the circulant, ordered by mode index
    /// `m = 0..n-1`: `Σ_k c_k e^{i·2πm·off_k/n}` (real for symmetric and
    /// for antisymmetric-squared stencils used here).
    pub fn circulant_symbol(&self, m: usize) -> f64 {
        let n = self.grid.n() as f64;
        let theta = 2.0 * std::f64::consts::PI * m as f64 / n;
        let mut acc = 0.0;
        for (off, c) in self.stencil() {
            acc += c * (theta * off as f64).cos();
        }
        acc
    }

    /// Largest entry-wise violation of `d_a M_{a,b} + d_b M_{b,a} = 0`
    /// over all index pairs. Zero for the derivative, by construction.
    pub fn weighted_antisymmetry_defect(&self) -> f64 {
        let n = self.grid.n();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let v =
                    self.grid.weight(a) * self.entry(a, b) + self.grid.weight(b) * self.entry(b, a);
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    /// Largest entry outside the declared band (periodic distance).
    pub fn bandwidth_defect(&self) -> f64 {
        let n = self.grid.n();
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let dist = (a as isize - b as isize)
                    .rem_euclid(n as isize)
                    .min((b as isize - a as isize).rem_euclid(n as isize));
                if dist as usize > self.bandwidth {
                    worst = worst.max(self.entry(a, b).abs());
                }
            }
        }
        worst
    }

    /// Rank over the rationals-free route: Gaussian elimination with partial
    /// pivoting on a dense copy; intended for small n oracle checks.
    pub fn dense_rank(&self, tol: f64) -> usize {
        let n = self.grid.n();
        let mut m: Vec<Vec<f64>> = (0..n)
            .map(|a| (0..n).map(|b| self.entry(a, b)).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let (mut best, mut best_val) = (row, 0.0f64);
            for r in row..n {
                if m[r][col].abs() > best_val {
                    best_val = m[r][col].abs();
                    best = r;
                }
            }
            if best_val <= tol {
                continue;
            }
            m.swap(row, best);
            for r in (row + 1)..n {
                let f = m[r][col] / m[row][col];
                for c in col..n {
                    m[r][c] -= f * m[row][c];
                }
            }
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.grid.n();
        (0..n)
            .map(|a| (0..n).map(|b| self.entry(a, b)).collect())
            .collect()
    }
}

/// Convenience: the generalized derivative as a standalone named operator.
pub fn build_derivative(grid: &Grid) -> StencilOperator {
    StencilOperator::derivative(grid)
}

pub fn laplacian(grid: &Grid, variant: LaplacianVariant) -> StencilOperator {
    StencilOperator::laplacian(grid, variant)
}
