//! Finite-stage grid: a symmetric periodic point set containing 0, with
//! positive point weights, grid functions over it, the pointwise integral
//! and the weighted inner product.
//!
//! The grid is a circle of circumference `n·h` rather than a truncated line;
//! this makes integration by parts hold with zero boundary terms. Weights
//! are uniform (`d_j = h`) in v1, but every weighted identity is written so
//! that point-dependent weights slot in later.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::scalar::{ComplexEuclidean, EuclideanScalar};

#[derive(Debug, Clone, PartialEq)]
pub enum GridError {
    EvenPointCount(usize),
    TooFewPoints(usize),
    NonPositiveSpacing(f64),
    GridMismatch,
    NonFiniteSample { index: usize, x: f64, value: f64 },
    IndexOutOfRange { index: usize, n: usize },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::EvenPointCount(n) => {
                write!(f, "point count {n} is even; an odd count is required")
            }
            GridError::TooFewPoints(n) => write!(f, "point count {n} is below the minimum of 3"),
            GridError::NonPositiveSpacing(h) => write!(f, "spacing {h} must be positive"),
            GridError::GridMismatch => write!(f, "operands live on different grids"),
            GridError::NonFiniteSample { index, x, value } => {
                write!(f, "non-finite sample {value} at point {index} (x = {x})")
            }
            GridError::IndexOutOfRange { index, n } => {
                write!(f, "index {index} out of range for {n} points")
            }
        }
    }
}

impl std::error::Error for GridError {}

/// Stage parameters: odd point count and spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stage {
    pub n: usize,
    pub h: f64,
}

impl Stage {
    pub fn new(n: usize, h: f64) -> Result<Self, GridError> {
        if n < 3 {
            return Err(GridError::TooFewPoints(n));
        }
        if n % 2 == 0 {
            return Err(GridError::EvenPointCount(n));
        }
        if !(h > 0.0) {
            return Err(GridError::NonPositiveSpacing(h));
        }
        Ok(Stage { n, h })
    }

    pub fn halfwidth(&self) -> f64 {
        ((self.n - 1) / 2) as f64 * self.h
    }

    /// Circumference of the periodic identification.
    pub fn circumference(&self) -> f64 {
        self.n as f64 * self.h
    }
}

#[derive(Debug)]
struct GridInner {
    n: usize,
    h: f64,
    points: Vec<f64>,
    origin: usize,
}

/// Symmetric periodic grid containing 0. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Grid {
    inner: Arc<GridInner>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.inner.n == other.inner.n && self.inner.h == other.inner.h
    }
}

/// Construct the uniform symmetric grid for a stage.
pub fn make_grid(n: usize, h: f64) -> Result<Grid, GridError> {
    let stage = Stage::new(n, h)?;
    Ok(Grid::from_stage(stage))
}

impl Grid {
    pub fn from_stage(stage: Stage) -> Grid {
        Grid::build(stage.n, stage.h)
    }

    fn build(n: usize, h: f64) -> Grid {
        let origin = (n - 1) / 2;
        let points = (0..n).map(|j| (j as f64 - origin as f64) * h).collect();
        Grid {
            inner: Arc::new(GridInner {
                n,
                h,
                points,
                origin,
            }),
        }
    }

    /// Even point counts break the constants-only nullspace of the periodic
    /// central difference; this constructor exists so diagnostics can
    /// exhibit that failure. Everything else should go through `make_grid`.
    pub fn new_lenient(n: usize, h: f64) -> Result<Grid, GridError> {
        if n < 3 {
            return Err(GridError::TooFewPoints(n));
        }
        if !(h > 0.0) {
            return Err(GridError::NonPositiveSpacing(h));
        }
        Ok(Grid::build(n, h))
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn h(&self) -> f64 {
        self.inner.h
    }

    pub fn point(&self, j: usize) -> f64 {
        self.inner.points[j]
    }

    pub fn points(&self) -> &[f64] {
        &self.inner.points
    }

    /// Weight `d(a)` of a grid point; uniform `h` in v1.
    pub fn weight(&self, _j: usize) -> f64 {
        self.inner.h
    }

    pub fn origin_index(&self) -> usize {
        self.inner.origin
    }

    pub fn circumference(&self) -> f64 {
        self.inner.n as f64 * self.inner.h
    }

    pub fn halfwidth(&self) -> f64 {
        self.inner.points[self.inner.n - 1]
    }

    /// Index of the grid point nearest to `x`.
    pub fn nearest_index(&self, x: f64) -> usize {
        let raw = (x / self.inner.h).round() + self.inner.origin as f64;
        raw.clamp(0.0, (self.inner.n - 1) as f64) as usize
    }

    /// Mirror index about the origin; exact because the grid is symmetric.
    pub fn reflect_index(&self, j: usize) -> usize {
        self.inner.n - 1 - j
    }

    pub fn check_index(&self, j: usize) -> Result<(), GridError> {
        if j < self.inner.n {
            Ok(())
        } else {
            Err(GridError::IndexOutOfRange {
                index: j,
                n: self.inner.n,
            })
        }
    }

    /// Stage-level count of grid points satisfying a predicate; for a finite
    /// set contained in the stage this is its cardinality.
    pub fn numerosity_at_stage<P: Fn(f64) -> bool>(&self, pred: P) -> usize {
        self.points().iter().filter(|&&x| pred(x)).count()
    }
}

/// Scalar types a grid function can carry.
pub trait GridScalar: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn from_f64(x: f64) -> Self;
    fn conj(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, w: f64) -> Self;
    fn is_finite_value(&self) -> bool;
}

impl GridScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn conj(&self) -> Self {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, w: f64) -> Self {
        self * w
    }
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl GridScalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, w: f64) -> Self {
        self * w
    }
    fn is_finite_value(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl GridScalar for EuclideanScalar {
    fn zero() -> Self {
        EuclideanScalar::zero()
    }
    fn from_f64(x: f64) -> Self {
        EuclideanScalar::from_real(x)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, w: f64) -> Self {
        self.clone() * w
    }
    fn is_finite_value(&self) -> bool {
        true
    }
}

impl GridScalar for ComplexEuclidean {
    fn zero() -> Self {
        ComplexEuclidean::zero()
    }
    fn from_f64(x: f64) -> Self {
        ComplexEuclidean::from_f64(x)
    }
    fn conj(&self) -> Self {
        ComplexEuclidean::conj(self)
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn scale(&self, w: f64) -> Self {
        self.scale_real(&EuclideanScalar::from_real(w))
    }
    fn is_finite_value(&self) -> bool {
        true
    }
}

/// A value per grid point: the basic function object of the weighted grid
/// calculus.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<S: GridScalar = f64> {
    grid: Grid,
    values: Vec<S>,
}

impl<S: GridScalar> GridFunction<S> {
    pub fn from_values(grid: &Grid, values: Vec<S>) -> Result<Self, GridError> {
        if values.len() != grid.n() {
            return Err(GridError::GridMismatch);
        }
        Ok(GridFunction {
            grid: grid.clone(),
            values,
        })
    }

    pub fn zeros(grid: &Grid) -> Self {
        GridFunction {
            grid: grid.clone(),
            values: vec![S::zero(); grid.n()],
        }
    }

    pub fn constant(grid: &Grid, c: S) -> Self {
        GridFunction {
            grid: grid.clone(),
            values: vec![c; grid.n()],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, j: usize) -> &S {
        &self.values[j]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [S] {
        &mut self.values
    }

    pub fn map<T: GridScalar>(&self, f: impl Fn(&S) -> T) -> GridFunction<T> {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    fn check_same_grid(&self, other: &Self) -> Result<(), GridError> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(GridError::GridMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GridError> {
        self.check_same_grid(other)?;
        Ok(self.zip(other, |a, b| a.add(b)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GridError> {
        self.check_same_grid(other)?;
        Ok(self.zip(other, |a, b| a.sub(b)))
    }

    /// Pointwise product; total, exactly because grid functions are actual
    /// functions at the finite stage.
    pub fn multiply(&self, other: &Self) -> Result<Self, GridError> {
        self.check_same_grid(other)?;
        Ok(self.zip(other, |a, b| a.mul(b)))
    }

    pub fn scale(&self, w: f64) -> Self {
        GridFunction {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.scale(w)).collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        GridFunction {
            grid: self.grid.clone(),
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Deterministic weighted sum in symmetric-pair order: mirror pairs
    /// `(j, n-1-j)` first, center point last. Odd integrands on the
    /// symmetric grid therefore cancel exactly.
    fn weighted_sum(&self, term: impl Fn(usize) -> S) -> S {
        let n = self.grid.n();
        let mut acc = S::zero();
        for j in 0..n / 2 {
            acc = acc.add(&term(j).add(&term(n - 1 - j)));
        }
        if n % 2 == 1 {
            acc = acc.add(&term(n / 2));
        }
        acc
    }

    /// `∮ u dx = Σ_j u_j d_j`, in the scalar type of `u`.
    pub fn pointwise_integral(&self) -> S {
        self.weighted_sum(|j| self.values[j].scale(self.grid.weight(j)))
    }

    /// `∮ u·v dx` with no conjugation. Each term associates as
    /// `u_j·(v_j·d_j)`; since `fl(fl(1/h)·h) = 1` for ordinary spacings this
    /// makes the delta reproducing property `∮ u·δ_a = u(a)` bitwise exact
    /// with the delta in the second slot.
    pub fn integral_of_product(&self, other: &Self) -> Result<S, GridError> {
        self.check_same_grid(other)?;
        Ok(self.weighted_sum(|j| self.values[j].mul(&other.values[j].scale(self.grid.weight(j)))))
    }

    /// Sesquilinear form `⟨u, v⟩ = Σ_j u_j conj(v_j) d_j` (conjugation on
    /// the second argument), same term association as `integral_of_product`.
    pub fn inner_product(&self, other: &Self) -> Result<S, GridError> {
        self.check_same_grid(other)?;
        Ok(self.weighted_sum(|j| {
            self.values[j].mul(&other.values[j].conj().scale(self.grid.weight(j)))
        }))
    }

    /// Value reflected about the origin: `u(-x)`.
    pub fn reflected(&self) -> Self {
        let g = &self.grid;
        let values = (0..g.n())
            .map(|j| self.values[g.reflect_index(j)].clone())
            .collect();
        GridFunction {
            grid: g.clone(),
            values,
        }
    }
}

impl GridFunction<f64> {
    pub fn norm(&self) -> f64 {
        self.inner_product(self).expect("same grid").sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(1.0 / n)
    }

    pub fn to_complex(&self) -> GridFunction<Complex64> {
        self.map(|&v| Complex64::new(v, 0.0))
    }

    /// Parity of a real grid function: `⟨u, u(-·)⟩ / ⟨u, u⟩`, which is `+1`
    /// for even and `-1` for odd vectors.
    pub fn parity_score(&self) -> f64 {
        let r = self.reflected();
        let num = self.inner_product(&r).expect("same grid");
        let den = self.inner_product(self).expect("same grid");
        num / den
    }
}

impl GridFunction<Complex64> {
    pub fn norm(&self) -> f64 {
        self.inner_product(self).expect("same grid").re.sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(1.0 / n)
    }
}

/// Restriction `f°` of a real function to the grid: `f(x_j)` where the
/// domain predicate holds and 0 on every other grid point.
pub fn embed<F>(f: F, grid: &Grid) -> Result<GridFunction<f64>, GridError>
where
    F: Fn(f64) -> Option<f64>,
{
    let mut values = Vec::with_capacity(grid.n());
    for j in 0..grid.n() {
        let x = grid.point(j);
        match f(x) {
            None => values.push(0.0),
            Some(v) => {
                if !v.is_finite() {
                    return Err(GridError::NonFiniteSample {
                        index: j,
                        x,
                        value: v,
                    });
                }
                values.push(v);
            }
        }
    }
    GridFunction::from_values(grid, values)
}

/// Convenience wrapper for total functions.
pub fn embed_total<F: Fn(f64) -> f64>(f: F, grid: &Grid) -> Result<GridFunction<f64>, GridError> {
    embed(|x| Some(f(x)), grid)
}

/// Characteristic function of the single grid point `a`.
pub fn chi(grid: &Grid, a: usize) -> Result<GridFunction<f64>, GridError> {
    grid.check_index(a)?;
    let mut u = GridFunction::zeros(grid);
    u.values_mut()[a] = 1.0;
    Ok(u)
}

/// Delta grid function `δ_a = χ_a / d(a)`: value `1/d(a)` at `a`, zero
/// elsewhere, with `∮ δ_a u dx = u(a)` for every `u`.
pub fn delta(grid: &Grid, a: usize) -> Result<GridFunction<f64>, GridError> {
    grid.check_index(a)?;
    let mut u = GridFunction::zeros(grid);
    u.values_mut()[a] = 1.0 / grid.weight(a);
    Ok(u)
}

/// Normalized delta-basis vector `√δ_a = χ_a / √d(a)`.
pub fn sqrt_delta(grid: &Grid, a: usize) -> Result<GridFunction<f64>, GridError> {
    grid.check_index(a)?;
    let mut u = GridFunction::zeros(grid);
    u.values_mut()[a] = 1.0 / grid.weight(a).sqrt();
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_construction_matches_expected_points() {
        let g = make_grid(5, 0.5).unwrap();
        assert_eq!(g.points(), &[-1.0, -0.5, 0.0, 0.5, 1.0]);
        for j in 0..5 {
            assert_eq!(g.weight(j), 0.5);
        }
        assert_eq!(g.point(g.origin_index()), 0.0);
        let total: f64 = (0..5).map(|j| g.weight(j)).sum();
        assert_eq!(total, g.circumference());
    }

    #[test]
    fn even_count_and_bad_spacing_rejected() {
        assert!(matches!(
            make_grid(4, 0.5),
            Err(GridError::EvenPointCount(4))
        ));
        assert!(matches!(make_grid(1, 0.5), Err(GridError::TooFewPoints(1))));
        assert!(matches!(
            make_grid(5, 0.0),
            Err(GridError::NonPositiveSpacing(_))
        ));
        assert!(matches!(
            make_grid(5, -1.0),
            Err(GridError::NonPositiveSpacing(_))
        ));
    }

    #[test]
    fn embed_uses_domain_rule_at_singular_points() {
        let g = make_grid(5, 0.5).unwrap();
        // f(x) = 1/|x| is undefined at 0; the restriction is 0 there
        let f = embed(|x| if x == 0.0 { None } else { Some(1.0 / x.abs()) }, &g).unwrap();
        assert_eq!(*f.value(g.origin_index()), 0.0);
        assert_eq!(*f.value(0), 1.0);
    }

    #[test]
    fn embed_squares_and_indicator() {
        let g = make_grid(5, 0.5).unwrap();
        let sq = embed_total(|x| x * x, &g).unwrap();
        assert_eq!(sq.values(), &[1.0, 0.25, 0.0, 0.25, 1.0]);
        let step = embed_total(|x| if x >= 0.0 { 1.0 } else { 0.0 }, &g).unwrap();
        assert_eq!(step.values(), &[0.0, 0.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn embed_rejects_non_finite_samples() {
        let g = make_grid(5, 0.5).unwrap();
        let r = embed(|x| Some(1.0 / x), &g);
        assert!(matches!(r, Err(GridError::NonFiniteSample { .. })));
    }

    #[test]
    fn chi_integral_is_the_point_weight() {
        let g = make_grid(7, 0.25).unwrap();
        let c = chi(&g, 3).unwrap();
        assert_eq!(c.pointwise_integral(), 0.25);
    }

    #[test]
    fn integral_of_quadratic_approximates_analytic_value() {
        let g = make_grid(201, 0.01).unwrap();
        let sq = embed_total(|x| x * x, &g).unwrap();
        // ∫_{-1}^{1} x² dx = 2/3 over the box; periodic sum is a Riemann sum
        let val = sq.pointwise_integral();
        assert!((val - 2.0 / 3.0).abs() < 0.02, "got {val}");
    }

    #[test]
    fn odd_function_integrates_to_zero_exactly() {
        let g = make_grid(101, 0.03).unwrap();
        let id = embed_total(|x| x, &g).unwrap();
        assert_eq!(id.pointwise_integral(), 0.0);
    }

    #[test]
    fn delta_reproduces_point_values_exactly() {
        for &(n, h) in &[(51usize, 0.05f64), (201, 0.05), (101, 0.1), (41, 0.025)] {
            let g = make_grid(n, h).unwrap();
            let u = embed_total(|x| (1.3 * x).sin() + 0.7 * x * x - 0.2, &g).unwrap();
            for a in [0usize, n / 2, n - 1, 3] {
                let d = delta(&g, a).unwrap();
                let got = u.integral_of_product(&d).unwrap();
                assert_eq!(got, *u.value(a), "grid ({n}, {h}), point {a}");
            }
        }
    }

    #[test]
    fn integral_of_compact_function_converges_under_refinement() {
        // |∮f° - ∫f| -> 0 as the stage refines, for a compactly supported
        // continuous f sampled well inside the box
        let f = |x: f64| {
            let u: f64 = x / 1.5;
            if u.abs() < 1.0 {
                (1.0 - u * u).powi(2)
            } else {
                0.0
            }
        };
        // midpoint-rule reference on a fine mesh
        let exact = {
            let m = 2_000_000;
            let (a, b) = (-1.5, 1.5);
            let dx = (b - a) / m as f64;
            (0..m)
                .map(|i| f(a + (i as f64 + 0.5) * dx) * dx)
                .sum::<f64>()
        };
        let mut prev = f64::MAX;
        for (n, h) in [(101usize, 0.08f64), (201, 0.04), (401, 0.02)] {
            let g = make_grid(n, h).unwrap();
            let err = (embed_total(f, &g).unwrap().pointwise_integral() - exact).abs();
            assert!(err < prev, "n = {n}: {err} did not shrink");
            prev = err;
        }
        assert!(prev <= 1e-3);
    }

    #[test]
    fn delta_squared_integral_is_inverse_weight() {
        let g = make_grid(11, 0.5).unwrap();
        let a = g.origin_index();
        let d = delta(&g, a).unwrap();
        let dd = d.multiply(&d).unwrap();
        // ∮ δ₀² dx = (1/d₀)²·d₀ = 1/d₀
        let got = dd.pointwise_integral();
        assert!((got - 2.0).abs() <= 1e-15);
        assert_eq!(*d.value(a), 1.0 / g.weight(a));
    }

    #[test]
    fn delta_basis_is_orthonormal() {
        let g = make_grid(21, 0.05).unwrap();
        for a in [0usize, 10, 20] {
            for b in [0usize, 10, 20] {
                let ea = sqrt_delta(&g, a).unwrap();
                let eb = sqrt_delta(&g, b).unwrap();
                let ip = ea.inner_product(&eb).unwrap();
                if a == b {
                    assert!((ip - 1.0).abs() <= 4.0 * f64::EPSILON, "diag at {a}: {ip}");
                } else {
                    assert_eq!(ip, 0.0);
                }
            }
        }
    }

    #[test]
    fn trigonometric_orthogonality_on_uniform_grid() {
        let g = make_grid(101, 0.1).unwrap();
        let c = g.circumference();
        let s = embed_total(|x| (2.0 * std::f64::consts::PI * x / c).sin(), &g).unwrap();
        let co = embed_total(|x| (2.0 * std::f64::consts::PI * x / c).cos(), &g).unwrap();
        let ip = s.inner_product(&co).unwrap();
        assert!(ip.abs() < 1e-12, "got {ip}");
    }

    #[test]
    fn multiply_identities() {
        let g = make_grid(9, 0.2).unwrap();
        let u = embed_total(|x| x.cos(), &g).unwrap();
        let one = GridFunction::constant(&g, 1.0);
        assert_eq!(u.multiply(&one).unwrap(), u);
        let a = chi(&g, 1).unwrap();
        let b = chi(&g, 5).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), GridFunction::zeros(&g));
        let d = delta(&g, 4).unwrap();
        let dd = d.multiply(&d).unwrap();
        assert_eq!(*dd.value(4), (1.0 / 0.2) * (1.0 / 0.2));
    }

    #[test]
    fn grid_mismatch_is_rejected() {
        let g1 = make_grid(9, 0.2).unwrap();
        let g2 = make_grid(11, 0.2).unwrap();
        let u = GridFunction::<f64>::zeros(&g1);
        let v = GridFunction::<f64>::zeros(&g2);
        assert!(matches!(u.inner_product(&v), Err(GridError::GridMismatch)));
        assert!(matches!(u.multiply(&v), Err(GridError::GridMismatch)));
    }

    #[test]
    fn numerosity_counts_stage_points() {
        let g = make_grid(5, 0.5).unwrap();
        assert_eq!(g.numerosity_at_stage(|x| x == 0.0 || x == 0.5), 2);
        assert_eq!(g.numerosity_at_stage(|_| false), 0);
        assert_eq!(g.numerosity_at_stage(|_| true), 5);
    }

    #[test]
    fn reconstruction_from_delta_pairings_is_exact() {
        let g = make_grid(31, 0.05).unwrap();
        let u = embed_total(|x| (2.0 * x).sin() + x, &g).unwrap();
        let mut rebuilt = GridFunction::zeros(&g);
        for a in 0..g.n() {
            let coeff = u.integral_of_product(&delta(&g, a).unwrap()).unwrap();
            rebuilt.values_mut()[a] = coeff;
        }
        assert_eq!(rebuilt, u);
    }

    #[test]
    fn euclidean_valued_grid_function_integrates() {
        let g = make_grid(5, 0.5).unwrap();
        let mut u = GridFunction::<EuclideanScalar>::zeros(&g);
        u.values_mut()[2] = EuclideanScalar::epsilon_inv();
        let total = u.pointwise_integral();
        // ε⁻¹ · 0.5 stays infinite
        assert!(total.classify().is_infinite());
    }
}
