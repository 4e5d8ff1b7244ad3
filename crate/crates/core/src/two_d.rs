//! Two-dimensional tensor-product assembly at small point counts.
//!
//! Exists to exhibit that the grid formulation is dimension-uniform: the
//! same delta-bump split and energy bound hold with `d(0)` replaced by
//! `d²(0) = h²`. Solved densely by Jacobi; point counts are capped well
//! below the 1-D solver's range.

use crate::deriv::LaplacianVariant;
use crate::eigen::jacobi_eigen;
use crate::grid::{make_grid, Grid, GridError};
use crate::operators::OperatorError;

pub const MAX_POINTS_PER_AXIS: usize = 41;

/// Square tensor grid `n × n` with spacing `h`; weights `d = h²`.
#[derive(Debug, Clone)]
pub struct Grid2 {
    axis: Grid,
}

impl Grid2 {
    pub fn new(n: usize, h: f64) -> Result<Self, GridError> {
        if n > MAX_POINTS_PER_AXIS {
            return Err(GridError::IndexOutOfRange {
                index: n,
                n: MAX_POINTS_PER_AXIS,
            });
        }
        Ok(Grid2 {
            axis: make_grid(n, h)?,
        })
    }

    pub fn axis(&self) -> &Grid {
        &self.axis
    }

    pub fn n(&self) -> usize {
        self.axis.n()
    }

    pub fn dim(&self) -> usize {
        self.axis.n() * self.axis.n()
    }

    pub fn weight(&self) -> f64 {
        self.axis.h() * self.axis.h()
    }

    pub fn origin_flat(&self) -> usize {
        let o = self.axis.origin_index();
        o * self.axis.n() + o
    }
}

/// 2-D potential: none, or a delta of strength `τ` at the origin
/// contributing `τ/d²(0)` to one diagonal entry.
#[derive(Debug, Clone, Copy)]
pub enum Potential2 {
    None,
    DeltaAtOrigin { strength: f64 },
}

/// Dense `H = -(1/2)(D²⊗I + I⊗D²) + V` on the tensor grid.
pub fn assemble_dense_2d(
    grid: &Grid2,
    variant: LaplacianVariant,
    potential: Potential2,
) -> Result<Vec<Vec<f64>>, OperatorError> {
    let n = grid.n();
    let lap = crate::deriv::StencilOperator::laplacian(&grid.axis, variant).scaled(-0.5);
    let mut h = vec![vec![0.0; n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for b in 0..n {
                let kx = lap.entry(i, b);
                if kx != 0.0 {
                    h[row][b * n + j] += kx;
                }
                let ky = lap.entry(j, b);
                if ky != 0.0 {
                    h[row][i * n + b] += ky;
                }
            }
        }
    }
    match potential {
        Potential2::None => {}
        Potential2::DeltaAtOrigin { strength } => {
            if !strength.is_finite() {
                return Err(OperatorError::NonFiniteStrength(strength));
            }
            let o = grid.origin_flat();
            h[o][o] += strength / grid.weight();
        }
    }
    Ok(h)
}

/// Eigenvalues of the 2-D Hamiltonian, ascending.
pub fn eigenvalues_2d(
    grid: &Grid2,
    variant: LaplacianVariant,
    potential: Potential2,
) -> Result<Vec<f64>, OperatorError> {
    let h = assemble_dense_2d(grid, variant, potential)?;
    let (lam, _) = jacobi_eigen(&h);
    Ok(lam)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_2d_spectrum_is_sum_of_axis_symbols() {
        let g = Grid2::new(9, 0.4).unwrap();
        let lam = eigenvalues_2d(&g, LaplacianVariant::Compact, Potential2::None).unwrap();
        let n = g.n();
        let axis = crate::deriv::StencilOperator::laplacian(g.axis(), LaplacianVariant::Compact)
            .scaled(-0.5);
        let mut want: Vec<f64> = (0..n)
            .flat_map(|m1| (0..n).map(move |m2| (m1, m2)))
            .map(|(m1, m2)| axis.circulant_symbol(m1) + axis.circulant_symbol(m2))
            .collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = want.last().copied().unwrap();
        for (g, w) in lam.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-8 * scale, "{g} vs {w}");
        }
    }

    #[test]
    fn delta_well_2d_obeys_dimension_uniform_bound() {
        let g = Grid2::new(9, 0.4).unwrap();
        let tau = -0.8;
        let lam = eigenvalues_2d(
            &g,
            LaplacianVariant::Compact,
            Potential2::DeltaAtOrigin { strength: tau },
        )
        .unwrap();
        // exactly the 1-D bound with d(0) -> d²(0) = h²
        let bound = tau / g.weight();
        assert!(lam[0] >= bound - 1e-9, "λ₀ = {} vs bound {bound}", lam[0]);
        assert!(lam[0] < -1e-6, "delta well should bind: λ₀ = {}", lam[0]);
        // barrier side has no negative energies
        let lam_b = eigenvalues_2d(
            &g,
            LaplacianVariant::Compact,
            Potential2::DeltaAtOrigin { strength: 0.8 },
        )
        .unwrap();
        assert!(lam_b[0] >= -1e-9);
    }

    #[test]
    fn axis_cap_is_enforced() {
        assert!(Grid2::new(43, 0.1).is_err());
    }
}
