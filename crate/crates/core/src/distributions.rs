//! Pairings against smooth compactly supported test functions: boundedness,
//! association through the standard part, equivalence of grid functions as
//! generalized distributions, and the residual check connecting grid
//! eigenpairs to the standard solutions.
//!
//! All boundedness and equivalence verdicts are relative to the supplied
//! finite test family — a sound under-approximation of quantifying over
//! every smooth compactly supported function.

use crate::grid::{embed_total, Grid, GridError, GridFunction};
use crate::operators::Hamiltonian;
use crate::scalar::{ComplexEuclidean, StandardPart};
use crate::symbolic::{SymbolicError, SymbolicState};

#[derive(Debug, Clone)]
pub enum DistributionError {
    Grid(GridError),
    Symbolic(String),
    /// Test-function support leaks outside the grid's unwrapped box.
    SupportViolation {
        id: String,
        support: (f64, f64),
        halfwidth: f64,
    },
    Unbounded {
        id: String,
    },
}

impl std::fmt::Display for DistributionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DistributionError::Grid(e) => write!(f, "{e}"),
            DistributionError::Symbolic(s) => write!(f, "{s}"),
            DistributionError::SupportViolation {
                id,
                support,
                halfwidth,
            } => write!(
                f,
                "test function `{id}` supported on [{}, {}] exceeds the box halfwidth {halfwidth}",
                support.0, support.1
            ),
            DistributionError::Unbounded { id } => {
                write!(f, "pairing against `{id}` is not finite")
            }
        }
    }
}

impl std::error::Error for DistributionError {}

impl From<GridError> for DistributionError {
    fn from(e: GridError) -> Self {
        DistributionError::Grid(e)
    }
}

impl From<SymbolicError> for DistributionError {
    fn from(e: SymbolicError) -> Self {
        DistributionError::Symbolic(e.to_string())
    }
}

/// Smooth compactly supported test function with evaluable value and
/// second derivative.
pub struct TestFunction {
    pub id: String,
    pub support: (f64, f64),
    value: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    second_derivative: Box<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TestFunction {{ id: {:?}, support: {:?} }}",
            self.id, self.support
        )
    }
}

impl TestFunction {
    pub fn value(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        (self.second_derivative)(x)
    }

    /// Polynomial bump `(1 - u²)⁴` on `|u| < 1`, `u = (x - c)/w`. C³ at the
    /// edges, exact derivatives.
    pub fn poly_bump(center: f64, width: f64) -> TestFunction {
        assert!(width > 0.0);
        let (c, w) = (center, width);
        TestFunction {
            id: format!("poly_bump(c={c}, w={w})"),
            support: (c - w, c + w),
            value: Box::new(move |x| {
                let u = (x - c) / w;
                let s = 1.0 - u * u;
                if s > 0.0 {
                    s.powi(4)
                } else {
                    0.0
                }
            }),
            second_derivative: Box::new(move |x| {
                let u = (x - c) / w;
                let s = 1.0 - u * u;
                if s > 0.0 {
                    // d²/du² (s⁴) = -8s³ + 48u²s², then chain rule 1/w²
                    (-8.0 * s.powi(3) + 48.0 * u * u * s * s) / (w * w)
                } else {
                    0.0
                }
            }),
        }
    }

    /// The classical mollifier `e^{-1/(1-u²)}` on `|u| < 1`.
    pub fn exp_bump(center: f64, width: f64) -> TestFunction {
        assert!(width > 0.0);
        let (c, w) = (center, width);
        let phi = move |x: f64| {
            let u = (x - c) / w;
            let s = 1.0 - u * u;
            if s > 0.0 {
                (-1.0 / s).exp()
            } else {
                0.0
            }
        };
        TestFunction {
            id: format!("exp_bump(c={c}, w={w})"),
            support: (c - w, c + w),
            value: Box::new(phi),
            second_derivative: Box::new(move |x| {
                let u = (x - c) / w;
                let s = 1.0 - u * u;
                if s > 0.0 {
                    let g1 = -2.0 * u / (s * s); // d/du of -1/s
                    let g2 = -2.0 / (s * s) - 8.0 * u * u / (s * s * s);
                    (-1.0 / s).exp() * (g1 * g1 + g2) / (w * w)
                } else {
                    0.0
                }
            }),
        }
    }

    pub fn sampled(&self, grid: &Grid) -> Result<GridFunction<f64>, GridError> {
        embed_total(|x| self.value(x), grid)
    }

    fn check_support(&self, grid: &Grid) -> Result<(), DistributionError> {
        let hw = grid.halfwidth();
        if self.support.0 <= -hw || self.support.1 >= hw {
            return Err(DistributionError::SupportViolation {
                id: self.id.clone(),
                support: self.support,
                halfwidth: hw,
            });
        }
        Ok(())
    }
}

/// Finite, explicit family of test functions.
#[derive(Debug)]
pub struct TestFamily {
    pub functions: Vec<TestFunction>,
}

impl TestFamily {
    pub fn new(functions: Vec<TestFunction>) -> Self {
        TestFamily { functions }
    }

    /// A default five-member family spread over the inner half of the box.
    pub fn standard(halfwidth: f64) -> Self {
        let w = halfwidth / 2.0;
        TestFamily::new(vec![
            TestFunction::poly_bump(0.0, w),
            TestFunction::poly_bump(-w / 2.0, w / 2.0),
            TestFunction::poly_bump(w / 2.0, w / 2.0),
            TestFunction::exp_bump(0.0, 0.8 * w),
            TestFunction::exp_bump(w / 4.0, 0.6 * w),
        ])
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }
}

/// Float-mode pairing `∮ u·φ° dx`.
pub fn pairing(u: &GridFunction<f64>, phi: &TestFunction) -> Result<f64, DistributionError> {
    phi.check_support(u.grid())?;
    let sampled = phi.sampled(u.grid())?;
    Ok(u.integral_of_product(&sampled)?)
}

/// Symbolic-mode pairing with values in the complexified scalars.
pub fn pairing_symbolic(
    u: &SymbolicState,
    phi: &TestFunction,
) -> Result<ComplexEuclidean, DistributionError> {
    phi.check_support(u.grid())?;
    let sampled = phi.sampled(u.grid())?;
    Ok(u.pair_embedded(&sampled)?)
}

/// Bounded iff every pairing against the family classifies finite.
pub fn is_bounded(u: &SymbolicState, family: &TestFamily) -> Result<bool, DistributionError> {
    for phi in &family.functions {
        if !pairing_symbolic(u, phi)?.classify().is_finite() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The associated distribution value `st(∮ u·φ° dx)`; errors on unbounded
/// input rather than guessing.
pub fn associate(u: &SymbolicState, phi: &TestFunction) -> Result<f64, DistributionError> {
    let p = pairing_symbolic(u, phi)?;
    match p.re.standard_part() {
        StandardPart::Finite(x) if p.im.classify().is_finite() => {
            // imaginary part must also vanish at standard level
            match p.im.standard_part() {
                StandardPart::Finite(0.0) => Ok(x),
                _ => Err(DistributionError::Unbounded { id: phi.id.clone() }),
            }
        }
        _ => Err(DistributionError::Unbounded { id: phi.id.clone() }),
    }
}

/// Equivalent as generalized distributions: every pairing of the difference
/// is infinitesimal.
pub fn equivalent(
    u: &SymbolicState,
    v: &SymbolicState,
    family: &TestFamily,
) -> Result<bool, DistributionError> {
    let d = u.sub(v)?;
    for phi in &family.functions {
        if !pairing_symbolic(&d, phi)?.classify().is_infinitesimal() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Report of the weak-form residual check for a grid eigenpair, plus an
/// optional mismatch against a reference profile.
#[derive(Debug, Clone)]
pub struct ConnectionReport {
    /// `max_φ |⟨Hψ - Eψ, φ°⟩|`, identically small for true eigenpairs.
    pub max_eigen_residual_pairing: f64,
    /// `max_φ |⟨ψ, φ°⟩ - ∮ w φ|` against the reference `w`, when given.
    pub oracle_mismatch: Option<f64>,
    pub per_function: Vec<(String, f64)>,
}

/// Weak-form check of `Hψ = Eψ` against a test family, with an optional
/// comparison to a reference solution `w` (compared through Simpson
/// quadrature of `w·φ`, independent of the grid pairing).
pub fn standard_connection_residual(
    psi: &GridFunction<f64>,
    energy: f64,
    hamiltonian: &Hamiltonian,
    family: &TestFamily,
    reference: Option<&dyn Fn(f64) -> f64>,
) -> Result<ConnectionReport, DistributionError> {
    let hpsi = hamiltonian.apply(psi);
    let mut max_res = 0.0f64;
    let mut per_function = Vec::with_capacity(family.len());
    let mut max_mismatch = 0.0f64;
    for phi in &family.functions {
        let r = pairing(&hpsi, phi)? - energy * pairing(psi, phi)?;
        per_function.push((phi.id.clone(), r.abs()));
        max_res = max_res.max(r.abs());
        if let Some(w) = reference {
            let grid_side = pairing(psi, phi)?;
            let exact_side = simpson(|x| w(x) * phi.value(x), phi.support.0, phi.support.1, 4000);
            max_mismatch = max_mismatch.max((grid_side - exact_side).abs());
        }
    }
    Ok(ConnectionReport {
        max_eigen_residual_pairing: max_res,
        oracle_mismatch: reference.map(|_| max_mismatch),
        per_function,
    })
}

/// One JSON-ready record per test function: the standard part of the
/// pairing and the size class of the full symbolic value.
pub fn residual_records(
    u: &SymbolicState,
    family: &TestFamily,
) -> Result<Vec<crate::io::ResidualRecord>, DistributionError> {
    let mut out = Vec::with_capacity(family.len());
    for phi in &family.functions {
        let p = pairing_symbolic(u, phi)?;
        let pairing = match p.re.standard_part() {
            StandardPart::Finite(x) => x,
            StandardPart::PosInfinite => f64::INFINITY,
            StandardPart::NegInfinite => f64::NEG_INFINITY,
        };
        out.push(crate::io::ResidualRecord {
            phi_id: phi.id.clone(),
            pairing,
            classification: p.classify().to_string(),
        });
    }
    Ok(out)
}

/// Composite Simpson quadrature; the independent reference integrator for
/// pairings of continuum profiles.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2) & !1usize; // even
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        acc += f(x) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}
