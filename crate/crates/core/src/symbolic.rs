//! Symbolic state algebra: finite delta combinations plus an embedded
//! smooth part, with pairings valued in the non-Archimedean scalars.
//!
//! Instead of materializing an `ε⁻¹`-sized grid, states are
//! `u = Σ_a c_a δ_a + g` with `c_a` complex Laurent scalars and `g` a float
//! grid function on the host stage. Pairings follow fixed rules:
//!
//! * `⟨δ_a, δ_b⟩ = δ_ab / d(a)` with `d(a) := ε`,
//! * `∮ δ_a f° dx = f(a)` (reproducing, promoted to the `ε⁰` coefficient),
//! * `⟨f°, g°⟩` = float-stage value promoted to the `ε⁰` coefficient.
//!
//! The bridge between stage refinement and `ε` is the declared convention
//! `1/h ↔ ε⁻¹`: one refinement step maps to one power of `ε`.

use std::collections::BTreeMap;

use crate::grid::{Grid, GridError, GridFunction};
use crate::scalar::{ComplexEuclidean, EuclideanScalar};

#[derive(Debug, Clone)]
pub enum SymbolicError {
    Grid(GridError),
    /// The state is outside the supported algebra for the requested
    /// operation; the caller gets a reason, not a guess.
    Unsupported(String),
    EmptyState,
}

impl std::fmt::Display for SymbolicError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SymbolicError::Grid(e) => write!(f, "{e}"),
            SymbolicError::Unsupported(s) => write!(f, "unsupported symbolic state: {s}"),
            SymbolicError::EmptyState => write!(f, "zero state has no classification"),
        }
    }
}

impl std::error::Error for SymbolicError {}

impl From<GridError> for SymbolicError {
    fn from(e: GridError) -> Self {
        SymbolicError::Grid(e)
    }
}

/// `u = Σ_a deltas[a]·δ_a + smooth` on a host stage grid.
#[derive(Debug, Clone)]
pub struct SymbolicState {
    grid: Grid,
    deltas: BTreeMap<usize, ComplexEuclidean>,
    smooth: Option<GridFunction<f64>>,
}

impl SymbolicState {
    pub fn zero(grid: &Grid) -> Self {
        SymbolicState {
            grid: grid.clone(),
            deltas: BTreeMap::new(),
            smooth: None,
        }
    }

    /// The delta state `δ_a` as a pure symbolic combination.
    pub fn delta(grid: &Grid, a: usize) -> Result<Self, SymbolicError> {
        grid.check_index(a)?;
        let mut s = Self::zero(grid);
        s.deltas.insert(a, ComplexEuclidean::from_f64(1.0));
        Ok(s)
    }

    /// Embedded float part `f°`.
    pub fn embedded(g: GridFunction<f64>) -> Self {
        SymbolicState {
            grid: g.grid().clone(),
            deltas: BTreeMap::new(),
            smooth: Some(g),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn delta_coefficients(&self) -> impl Iterator<Item = (usize, &ComplexEuclidean)> {
        self.deltas.iter().map(|(&a, c)| (a, c))
    }

    pub fn smooth_part(&self) -> Option<&GridFunction<f64>> {
        self.smooth.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.deltas.is_empty() && self.smooth.is_none()
    }

    pub fn scale(&self, c: &ComplexEuclidean) -> Self {
        let mut out = self.clone();
        for v in out.deltas.values_mut() {
            *v = v.clone() * c.clone();
        }
        if let Some(g) = &self.smooth {
            // scaling a float part by a non-real or non-finite coefficient
            // moves it into the delta-free symbolic sector we do not store;
            // only ε⁰-real scalings keep the smooth part a float function
            if let Some(x) = real_finite_part(c) {
                out.smooth = Some(g.scale(x));
            } else {
                // promote each grid point? not supported; keep exactness by
                // pushing the coefficient into delta terms is impossible, so
                // refuse at pairing time instead
                out.smooth = Some(g.scale(f64::NAN));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymbolicError> {
        if self.grid != other.grid {
            return Err(SymbolicError::Grid(GridError::GridMismatch));
        }
        let mut out = self.clone();
        for (&a, c) in &other.deltas {
            let entry = out.deltas.entry(a).or_insert_with(ComplexEuclidean::zero);
            *entry = entry.clone() + c.clone();
            if entry.is_zero() {
                out.deltas.remove(&a);
            }
        }
        out.smooth = match (&self.smooth, &other.smooth) {
            (None, None) => None,
            (Some(g), None) => Some(g.clone()),
            (None, Some(g)) => Some(g.clone()),
            (Some(a), Some(b)) => Some(a.add(b)?),
        };
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SymbolicError> {
        self.add(&other.scale(&ComplexEuclidean::from_f64(-1.0)))
    }

    /// Symbolic value `u(a) = c_a/d(a) + g(a)` at a grid point,
    /// with `d(a) = ε`.
    pub fn value_at(&self, a: usize) -> ComplexEuclidean {
        let mut v = ComplexEuclidean::zero();
        if let Some(c) = self.deltas.get(&a) {
            v = v + c.scale_real(&EuclideanScalar::epsilon_inv());
        }
        if let Some(g) = &self.smooth {
            v = v + ComplexEuclidean::from_f64(*g.value(a));
        }
        v
    }

    /// `∮ u·φ° dx` against an embedded test sample: delta terms reproduce
    /// `φ(a)` exactly, the smooth part pairs at float stage and is promoted.
    pub fn pair_embedded(
        &self,
        phi: &GridFunction<f64>,
    ) -> Result<ComplexEuclidean, SymbolicError> {
        if phi.grid() != &self.grid {
            return Err(SymbolicError::Grid(GridError::GridMismatch));
        }
        let mut acc = ComplexEuclidean::zero();
        for (&a, c) in &self.deltas {
            acc = acc + c.scale_real(&EuclideanScalar::from_real(*phi.value(a)));
        }
        if let Some(g) = &self.smooth {
            let v = g.integral_of_product(phi)?;
            if !v.is_finite() {
                return Err(SymbolicError::Unsupported(
                    "smooth part carries non-finite samples".into(),
                ));
            }
            acc = acc + ComplexEuclidean::from_f64(v);
        }
        Ok(acc)
    }

    /// Symbolic norm square `⟨u, u⟩`: delta self-pairings contribute
    /// `|c_a|²·ε⁻¹`, cross terms `2Re(c_a)·g(a)`, the smooth remainder the
    /// float `⟨g, g⟩` promoted to `ε⁰`.
    pub fn norm_sqr(&self) -> Result<EuclideanScalar, SymbolicError> {
        let mut acc = EuclideanScalar::zero();
        for c in self.deltas.values() {
            acc = acc + c.norm_sqr() * EuclideanScalar::epsilon_inv();
        }
        if let Some(g) = &self.smooth {
            for (&a, c) in &self.deltas {
                let cross = c.re.clone() * (2.0 * g.value(a));
                acc = acc + cross;
            }
            let gg = g.inner_product(g)?;
            if !gg.is_finite() {
                return Err(SymbolicError::Unsupported(
                    "smooth part carries non-finite samples".into(),
                ));
            }
            acc = acc + EuclideanScalar::from_real(gg);
        }
        Ok(acc)
    }

    /// Kinetic pairing `⟨Du, Du⟩` under the central-difference stencil with
    /// the `d(a) = ε`, `1/h = ε⁻¹` substitutions:
    ///
    /// * `⟨Dδ_a, Dδ_a⟩ = ε⁻³/2`, `⟨Dδ_a, Dδ_{a±2}⟩ = -ε⁻³/4`, else 0;
    /// * `⟨Dδ_a, Dg⟩ = (Dg(a-1) - Dg(a+1)) / 2h`, a finite float;
    /// * `⟨Dg, Dg⟩` float-stage value promoted.
    pub fn gradient_pairing(&self) -> Result<EuclideanScalar, SymbolicError> {
        let n = self.grid.n() as isize;
        let eps3 = EuclideanScalar::term(1.0, -3);
        let mut acc = EuclideanScalar::zero();
        for (&a, ca) in &self.deltas {
            for (&b, cb) in &self.deltas {
                let dist = periodic_distance(a as isize, b as isize, n);
                let coeff = match dist {
                    0 => 0.5,
                    2 => -0.25,
                    _ => continue,
                };
                let overlap = (ca.clone() * cb.conj()).re;
                acc = acc + overlap * (eps3.clone() * coeff);
            }
        }
        if let Some(g) = &self.smooth {
            let d = crate::deriv::StencilOperator::derivative(&self.grid);
            let dg = d.apply(g);
            let h = self.grid.h();
            for (&a, ca) in &self.deltas {
                let am = (a as isize - 1).rem_euclid(n) as usize;
                let ap = (a as isize + 1).rem_euclid(n) as usize;
                let cross = (dg.value(am) - dg.value(ap)) / (2.0 * h);
                // both ⟨Dδ_a, Dg⟩ and its mirror term
                acc = acc + ca.re.clone() * (2.0 * cross);
            }
            let gg = dg.inner_product(&dg)?;
            if !gg.is_finite() {
                return Err(SymbolicError::Unsupported(
                    "gradient of smooth part is not finite".into(),
                ));
            }
            acc = acc + EuclideanScalar::from_real(gg);
        }
        Ok(acc)
    }
}

fn periodic_distance(a: isize, b: isize, n: isize) -> usize {
    let d = (a - b).rem_euclid(n);
    d.min(n - d) as usize
}

fn real_finite_part(c: &ComplexEuclidean) -> Option<f64> {
    if !c.im.is_zero() {
        return None;
    }
    if c.re.min_exponent().map_or(true, |k| k >= 0) {
        Some(c.re.coeff(0))
    } else {
        None
    }
}

/// Potential term at symbolic level; strengths may themselves be
/// infinitesimal or infinite.
#[derive(Debug, Clone)]
pub enum SymbolicPotential {
    Free,
    /// `τ·δ_q`: expectation contributes `τ·|u(q)|²` by the reproducing rule.
    DeltaAt {
        index: usize,
        strength: EuclideanScalar,
    },
    /// `Ω·χ_E` over an explicit finite point set: `Ω·Σ |u(x)|²·ε`.
    Indicator {
        indices: Vec<usize>,
        height: EuclideanScalar,
    },
}

impl SymbolicPotential {
    fn expectation(&self, u: &SymbolicState) -> Result<EuclideanScalar, SymbolicError> {
        match self {
            SymbolicPotential::Free => Ok(EuclideanScalar::zero()),
            SymbolicPotential::DeltaAt { index, strength } => {
                u.grid().check_index(*index)?;
                Ok(u.value_at(*index).norm_sqr() * strength.clone())
            }
            SymbolicPotential::Indicator { indices, height } => {
                let mut acc = EuclideanScalar::zero();
                for &q in indices {
                    u.grid().check_index(q)?;
                    acc = acc + u.value_at(q).norm_sqr() * EuclideanScalar::epsilon();
                }
                Ok(acc * height.clone())
            }
        }
    }
}

/// Physical versus ideal state, with the normalized energy expectation as
/// the witness.
#[derive(Debug, Clone, PartialEq)]
pub enum StateClassTag {
    Physical,
    Ideal,
}

#[derive(Debug, Clone)]
pub struct StateClass {
    pub tag: StateClassTag,
    pub witness: EuclideanScalar,
}

impl StateClass {
    fn from_witness(witness: EuclideanScalar) -> StateClass {
        let tag = if witness.classify().is_finite() {
            StateClassTag::Physical
        } else {
            StateClassTag::Ideal
        };
        StateClass { tag, witness }
    }
}

/// Classify a symbolic state by its normalized energy expectation
/// `⟨Hu, u⟩ / ⟨u, u⟩` with `H = -(1/2)D² + V`. Working with the Rayleigh
/// quotient keeps every intermediate inside integer powers of `ε` (the
/// normalized representative `u/‖u‖` of a delta ray would need `√ε`).
pub fn classify_symbolic(
    state: &SymbolicState,
    potential: &SymbolicPotential,
) -> Result<StateClass, SymbolicError> {
    if state.is_zero() {
        return Err(SymbolicError::EmptyState);
    }
    let kinetic = state.gradient_pairing()? * 0.5;
    let v = potential.expectation(state)?;
    let norm = state.norm_sqr()?;
    let witness = (kinetic + v)
        .try_div(&norm)
        .map_err(|e| SymbolicError::Unsupported(format!("norm not invertible: {e}")))?;
    Ok(StateClass::from_witness(witness))
}

/// Classify an embedded state by its float-stage Rayleigh quotient across a
/// refinement net. Under the `1/h ↔ ε⁻¹` bridge, an energy growing like
/// `h^{-p}` is assigned the leading term `ε^{-round(p)}` and the state is
/// ideal; a converging energy yields a physical state with the limit as the
/// `ε⁰` coefficient.
pub fn classify_sampled<F>(
    f: F,
    potential: &crate::operators::Potential,
    variant: crate::deriv::LaplacianVariant,
    stages: &[crate::grid::Stage],
) -> Result<StateClass, SymbolicError>
where
    F: Fn(f64) -> Option<f64>,
{
    assert!(stages.len() >= 3, "need at least 3 stages for a trend");
    let mut samples: Vec<(f64, f64)> = Vec::new(); // (h, rayleigh)
    for st in stages {
        let grid = crate::grid::Grid::from_stage(*st);
        let g = crate::grid::embed(&f, &grid)?;
        let ham = crate::operators::assemble_hamiltonian(&grid, variant, potential)
            .map_err(|e| SymbolicError::Unsupported(format!("assembly failed: {e}")))?;
        let num = ham
            .energy_expectation_real(&g)
            .map_err(|e| SymbolicError::Unsupported(format!("{e}")))?;
        let den = g.inner_product(&g)?;
        if den == 0.0 {
            return Err(SymbolicError::Unsupported(
                "state vanishes on a stage grid".into(),
            ));
        }
        samples.push((st.h, num / den));
    }
    // growth order p from the last two refinement steps: E ~ h^{-p}
    let m = samples.len();
    let slope = |i: usize, j: usize| -> f64 {
        let (hi, ei) = samples[i];
        let (hj, ej) = samples[j];
        ((ej.abs().max(1e-300)).ln() - (ei.abs().max(1e-300)).ln()) / (hi / hj).ln()
    };
    let p = 0.5 * (slope(m - 3, m - 2) + slope(m - 2, m - 1));
    let last = samples[m - 1].1;
    if p >= 0.5 {
        let order = p.round().max(1.0) as i32;
        Ok(StateClass::from_witness(EuclideanScalar::term(
            last.signum(),
            -order,
        )))
    } else {
        Ok(StateClass::from_witness(EuclideanScalar::from_real(last)))
    }
}

/// Symbolic position-measurement probability `|ψ(q)|²·d(q)` with
/// `d(q) = ε`: an infinitesimal for any state with finite value at `q`.
pub fn position_probability_symbolic(
    state: &SymbolicState,
    q: usize,
) -> Result<EuclideanScalar, SymbolicError> {
    state.grid().check_index(q)?;
    Ok(state.value_at(q).norm_sqr() * EuclideanScalar::epsilon())
}
