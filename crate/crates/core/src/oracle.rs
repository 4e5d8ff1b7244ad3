//! Closed-form and root-found reference solutions for the delta potential
//! in a box, square-wall approximations, and the multidimensional
//! estimates, used to cross-validate the grid solver.
//!
//! All transcendental equations are solved by bracketed bisection with
//! brackets derived from the pole/zero structure of `cot`/`coth`; no
//! Newton steps. Every returned root satisfies its defining equation with
//! residual at most `1e-10`.
//!
//! Sign conventions: the box equations take a positive strength and a
//! barrier/well flag. The source convention writes the well bound-state
//! equation as `k·coth(kL) = τ` with `τ < 0`, which is unsatisfiable as
//! written; it is read here as `|τ|`.

use std::f64::consts::PI;

pub const ROOT_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub enum OracleError {
    BracketingFailure {
        what: String,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    InvalidParameter(String),
}

impl std::fmt::Display for OracleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OracleError::BracketingFailure {
                what,
                lo,
                hi,
                f_lo,
                f_hi,
            } => write!(
                f,
                "no sign change for {what} on [{lo}, {hi}] (f = {f_lo} .. {f_hi})"
            ),
            OracleError::InvalidParameter(s) => write!(f, "invalid parameter: {s}"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Bisection on a bracket with opposite signs.
pub fn bisect<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    what: &str,
) -> Result<f64, OracleError> {
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(OracleError::BracketingFailure {
            what: what.into(),
            lo,
            hi,
            f_lo,
            f_hi,
        });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if !(hi - lo > 2.0 * f64::EPSILON * mid.abs().max(1e-30)) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == f_lo.signum() {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Barrier (`τ > 0`) or well (`τ < 0`), encoded with a positive strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    Barrier,
    Well,
}

impl std::str::FromStr for PotentialKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "barrier" => Ok(PotentialKind::Barrier),
            "well" => Ok(PotentialKind::Well),
            other => Err(format!("unknown potential kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl std::str::FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            other => Err(format!("unknown parity `{other}`")),
        }
    }
}

/// Delta potential of strength `strength ≥ 0` (sign from `kind`) at the
/// center of a box of half-length `L`.
#[derive(Debug, Clone, Copy)]
pub struct BoxProblem {
    pub half_length: f64,
    pub strength: f64,
    pub kind: PotentialKind,
    pub parity: Parity,
}

impl BoxProblem {
    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.half_length > 0.0) {
            return Err(OracleError::InvalidParameter(format!(
                "half_length = {}",
                self.half_length
            )));
        }
        if !(self.strength >= 0.0) {
            return Err(OracleError::InvalidParameter(format!(
                "strength = {} (encode the sign in the kind flag)",
                self.strength
            )));
        }
        Ok(())
    }
}

/// One scattering mode: wavenumber and energy `E = k²/2`.
#[derive(Debug, Clone, Copy)]
pub struct BoxMode {
    pub k: f64,
    pub energy: f64,
}

/// First `count` positive modes of the box problem.
///
/// Even parity solves `k·cot(kL) = -τ` (barrier) or `+τ` (well) by
/// bisection between consecutive poles of `cot(kL)`; odd parity uses the
/// closed forms `k = (π + 2πn)/L` (barrier) and `k = 2πn/L, n ≥ 1` (well).
pub fn box_spectrum(p: &BoxProblem, count: usize) -> Result<Vec<BoxMode>, OracleError> {
    p.validate()?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let l = p.half_length;
    match p.parity {
        Parity::Odd => {
            let ks: Vec<f64> = match p.kind {
                PotentialKind::Barrier => {
                    (0..count).map(|n| (PI + 2.0 * PI * n as f64) / l).collect()
                }
                PotentialKind::Well => (1..=count).map(|n| 2.0 * PI * n as f64 / l).collect(),
            };
            Ok(ks
                .into_iter()
                .map(|k| BoxMode {
                    k,
                    energy: 0.5 * k * k,
                })
                .collect())
        }
        Parity::Even => {
            let rhs = match p.kind {
                PotentialKind::Barrier => -p.strength,
                PotentialKind::Well => p.strength,
            };
            let f = |k: f64| k * (k * l).cos() / (k * l).sin() - rhs;
            let mut out = Vec::with_capacity(count);
            let mut branch = 0usize;
            while out.len() < count {
                // k·cot(kL) falls from +∞ (or 1/L on the first branch) to
                // -∞ on (branch·π/L, (branch+1)·π/L): at most one root
                let pad = 1e-9 * PI / l;
                let lo = branch as f64 * PI / l + pad;
                let hi = (branch as f64 + 1.0) * PI / l - pad;
                branch += 1;
                if f(lo).signum() == f(hi).signum() {
                    continue; // first branch has no root when rhs ≥ 1/L
                }
                let k = bisect(f, lo, hi, "k·cot(kL) = rhs")?;
                out.push(BoxMode {
                    k,
                    energy: 0.5 * k * k,
                });
                if branch > count + 8 {
                    return Err(OracleError::BracketingFailure {
                        what: "even box modes".into(),
                        lo,
                        hi,
                        f_lo: f(lo),
                        f_hi: f(hi),
                    });
                }
            }
            Ok(out)
        }
    }
}

/// Unbound-box limit of the unique bound state: `E = -s²/2` for strength
/// `s > 0`.
pub fn bound_state_energy_1d(strength: f64) -> f64 {
    assert!(strength > 0.0, "strength must be positive");
    -0.5 * strength * strength
}

/// Finite-box bound state: the unique root of `k·coth(kL) = s`, which
/// exists when `s > 1/L`; energy `-k²/2`.
pub fn finite_box_bound_state(strength: f64, half_length: f64) -> Result<BoxMode, OracleError> {
    if !(strength > 0.0) || !(half_length > 0.0) {
        return Err(OracleError::InvalidParameter(format!(
            "strength = {strength}, half_length = {half_length}"
        )));
    }
    if strength * half_length <= 1.0 {
        return Err(OracleError::InvalidParameter(format!(
            "no bound state: s·L = {} ≤ 1",
            strength * half_length
        )));
    }
    // coth via tanh so large kL saturates instead of overflowing
    let f = |k: f64| k / (k * half_length).tanh() - strength;
    // k·coth(kL) rises monotonically from 1/L; bracket by doubling
    let mut hi = strength.max(1.0 / half_length) * 2.0;
    let mut lo = 1e-12;
    while f(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            break;
        }
    }
    let k = bisect(f, lo, hi, "k·coth(kL) = s")?;
    Ok(BoxMode {
        k,
        energy: -0.5 * k * k,
    })
}

/// Square wall of half-width `wall_half_width` and height `height`
/// (positive for barrier, negative for well) centered in a box of
/// half-length `box_half_length`; `τ = 2·wall_half_width·height`.
#[derive(Debug, Clone, Copy)]
pub struct SquareWellProblem {
    pub box_half_length: f64,
    pub wall_half_width: f64,
    pub height: f64,
}

impl SquareWellProblem {
    pub fn transparency(&self) -> f64 {
        2.0 * self.wall_half_width * self.height
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        if !(self.wall_half_width > 0.0 && self.wall_half_width < self.box_half_length) {
            return Err(OracleError::InvalidParameter(format!(
                "wall half-width {} must lie in (0, L = {})",
                self.wall_half_width, self.box_half_length
            )));
        }
        if self.height == 0.0 || !self.height.is_finite() {
            return Err(OracleError::InvalidParameter(format!(
                "height = {}",
                self.height
            )));
        }
        Ok(())
    }

    /// Logarithmic derivative `ψ'/ψ` of the inner solution at the wall edge
    /// for positive energy `E > 0`, per parity.
    fn inner_log_derivative(&self, energy: f64, parity: Parity) -> f64 {
        let eps = self.wall_half_width;
        let d = 2.0 * (self.height - energy);
        if d > 0.0 {
            // classically forbidden inside: cosh/sinh profiles
            let vk = d.sqrt();
            match parity {
                Parity::Even => vk * (vk * eps).tanh(),
                Parity::Odd => vk / (vk * eps).tanh(),
            }
        } else {
            // oscillatory inside: cos/sin profiles
            let vk = (-d).sqrt();
            match parity {
                Parity::Even => -vk * (vk * eps).tan(),
                Parity::Odd => vk / (vk * eps).tan(),
            }
        }
    }

    /// Matching residual at the wall edge for a positive-energy mode:
    /// inner `ψ'/ψ` minus the outer `-k·cot(k(L-ε))`.
    pub fn matching_residual(&self, k: f64, parity: Parity) -> f64 {
        let energy = 0.5 * k * k;
        let outer = -k * (k * (self.box_half_length - self.wall_half_width)).cos()
            / (k * (self.box_half_length - self.wall_half_width)).sin();
        self.inner_log_derivative(energy, parity) - outer
    }

    /// Bound-state matching residual (well only, `E = -κ²/2 ∈ (-|V₀|, 0)`):
    /// inner oscillatory `ψ'/ψ` minus outer `-κ·coth(κ(L-ε))`.
    pub fn bound_matching_residual(&self, kappa: f64, parity: Parity) -> f64 {
        let eps = self.wall_half_width;
        let span = self.box_half_length - eps;
        let vk = (2.0 * (-self.height) - kappa * kappa).sqrt();
        let inner = match parity {
            Parity::Even => -vk * (vk * eps).tan(),
            Parity::Odd => vk / (vk * eps).tan(),
        };
        let outer = -kappa / (kappa * span).tanh();
        inner - outer
    }
}

/// First `count` positive-energy modes of the square-wall problem, found by
/// a pole-aware scan for sign changes of the matching residual.
pub fn square_well_spectrum(
    p: &SquareWellProblem,
    parity: Parity,
    count: usize,
) -> Result<Vec<BoxMode>, OracleError> {
    p.validate()?;
    let span = p.box_half_length - p.wall_half_width;
    let k_max = (count as f64 + 4.0) * PI / span * 2.0 + (2.0 * p.height.abs()).sqrt();
    let f = |k: f64| p.matching_residual(k, parity);
    let steps_per_pi = 200usize;
    let dk = PI / span / steps_per_pi as f64;
    let mut out = Vec::with_capacity(count);
    let mut k_prev = dk * 0.5;
    let mut f_prev = f(k_prev);
    let mut k = k_prev + dk;
    while out.len() < count && k < k_max {
        let fk = f(k);
        // accept only genuine crossings, not pole jumps
        if f_prev.is_finite()
            && fk.is_finite()
            && f_prev.signum() != fk.signum()
            && f_prev.abs() < 1e6
            && fk.abs() < 1e6
        {
            let root = bisect(f, k_prev, k, "square-wall matching")?;
            if p.matching_residual(root, parity).abs() <= 1e-6 {
                out.push(BoxMode {
                    k: root,
                    energy: 0.5 * root * root,
                });
            }
        }
        k_prev = k;
        f_prev = fk;
        k += dk;
    }
    if out.len() < count {
        return Err(OracleError::BracketingFailure {
            what: format!("square-wall {parity:?} modes ({} of {count})", out.len()),
            lo: 0.0,
            hi: k_max,
            f_lo: f64::NAN,
            f_hi: f64::NAN,
        });
    }
    Ok(out)
}

/// Bound states of a square well in a box (negative-energy matching roots),
/// returned as `(κ, E = -κ²/2)` pairs, even parity first root only when
/// shallow.
pub fn square_well_bound_states(
    p: &SquareWellProblem,
    parity: Parity,
) -> Result<Vec<BoxMode>, OracleError> {
    p.validate()?;
    if p.height >= 0.0 {
        return Err(OracleError::InvalidParameter(
            "bound states require a well (negative height)".into(),
        ));
    }
    let kappa_max = (2.0 * (-p.height)).sqrt();
    let f = |kappa: f64| p.bound_matching_residual(kappa, parity);
    let steps = 4000usize;
    let dk = kappa_max / steps as f64;
    let mut out = Vec::new();
    let mut k_prev = dk * 1e-3;
    let mut f_prev = f(k_prev);
    let mut k = dk;
    while k < kappa_max * (1.0 - 1e-12) {
        let fk = f(k);
        if f_prev.is_finite()
            && fk.is_finite()
            && f_prev.signum() != fk.signum()
            && f_prev.abs() < 1e6
            && fk.abs() < 1e6
        {
            let root = bisect(f, k_prev, k, "square-well bound matching")?;
            out.push(BoxMode {
                k: root,
                energy: -0.5 * root * root,
            });
        }
        k_prev = k;
        f_prev = fk;
        k += dk;
    }
    Ok(out)
}

/// Normalization constant and center value for a box mode:
/// `|A|⁻² = (2kL - sin 2kL)/(2k)`, `ψ⁺(0) = -A·sin(kL)`, `ψ⁻(0) = 0`.
pub fn normalization_and_origin(k: f64, half_length: f64, parity: Parity) -> (f64, f64) {
    assert!(k > 0.0, "wavenumber must be positive");
    let l = half_length;
    let inv_a2 = (2.0 * k * l - (2.0 * k * l).sin()) / (2.0 * k);
    let a = 1.0 / inv_a2.sqrt();
    let psi0 = match parity {
        Parity::Even => -a * (k * l).sin(),
        Parity::Odd => 0.0,
    };
    (a, psi0)
}

/// The box eigenfunction on `[-L, L]`: `ψ⁺ = ∓A sin(k(x ∓ L))` even,
/// `ψ⁻ = ±A sin(k(x ∓ L))` odd (upper signs for `x > 0`).
pub fn box_eigenfunction(k: f64, half_length: f64, parity: Parity, x: f64) -> f64 {
    let (a, _) = normalization_and_origin(k, half_length, parity);
    if x >= 0.0 {
        a * (k * (x - half_length)).sin()
    } else {
        match parity {
            Parity::Even => -a * (k * (x + half_length)).sin(),
            Parity::Odd => a * (k * (x + half_length)).sin(),
        }
    }
}

/// Infinite-line bound-state profile `√κ·e^{-κ|x|}` for strength `s = κ`.
pub fn bound_state_profile(strength: f64, x: f64) -> f64 {
    strength.sqrt() * (-strength * x.abs()).exp()
}

/// Estimated number of 2-D bound states, `N ≈ (1/π)√(2τ/π)`.
pub fn n2d(tau: f64) -> Result<f64, OracleError> {
    if !(tau > 0.0) {
        return Err(OracleError::InvalidParameter(format!("tau = {tau}")));
    }
    Ok((2.0 * tau / PI).sqrt() / PI)
}

/// Estimated number of 3-D bound states, `N ≈ (1/π)√(3τ/(2πε))`.
pub fn n3d(tau: f64, eps_w: f64) -> Result<f64, OracleError> {
    if !(tau > 0.0 && eps_w > 0.0) {
        return Err(OracleError::InvalidParameter(format!(
            "tau = {tau}, eps_w = {eps_w}"
        )));
    }
    Ok((3.0 * tau / (2.0 * PI * eps_w)).sqrt() / PI)
}

/// Bare 2-D bound-state energy, `E ≈ -(1/(2ε²))·e^{-2π/τ}`.
pub fn e2d_bare(tau: f64, eps_w: f64) -> Result<f64, OracleError> {
    if !(tau > 0.0 && eps_w > 0.0) {
        return Err(OracleError::InvalidParameter(format!(
            "tau = {tau}, eps_w = {eps_w}"
        )));
    }
    Ok(-(-2.0 * PI / tau).exp() / (2.0 * eps_w * eps_w))
}

/// Renormalized transparency: `1/τ_R = 1/τ + (1/4π)·ln(σ²/ω²)`, computed
/// as `τ/(1 + τ·ln(σ²/ω²)/4π)` so that `σ = ω` returns `τ` exactly.
pub fn renormalized_transparency(tau: f64, sigma: f64, omega: f64) -> Result<f64, OracleError> {
    if !(sigma > 0.0 && omega > 0.0) || tau == 0.0 || !tau.is_finite() {
        return Err(OracleError::InvalidParameter(format!(
            "tau = {tau}, sigma = {sigma}, omega = {omega}"
        )));
    }
    let log_term = (sigma * sigma / (omega * omega)).ln() / (4.0 * PI);
    Ok(tau / (1.0 + tau * log_term))
}

/// Renormalized 2-D binding energy, `E = -ω²·e^{-4π/τ_R}`.
pub fn e2d_renormalized(tau_r: f64, omega: f64) -> Result<f64, OracleError> {
    if !(omega > 0.0) || tau_r == 0.0 || !tau_r.is_finite() {
        return Err(OracleError::InvalidParameter(format!(
            "tau_r = {tau_r}, omega = {omega}"
        )));
    }
    Ok(-omega * omega * (-4.0 * PI / tau_r).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbound_bound_state_energy() {
        assert_eq!(bound_state_energy_1d(2.0), -2.0);
        assert_eq!(bound_state_energy_1d(1.0), -0.5);
    }

    #[test]
    fn finite_box_root_satisfies_equation_and_converges() {
        let m = finite_box_bound_state(1.0, 5.0).unwrap();
        let res = m.k / (m.k * 5.0).tanh() - 1.0;
        assert!(res.abs() <= 1e-12);
        // E(L) -> -s²/2 monotonically as L doubles; strictly until the
        // difference hits the rounding floor
        let mut prev_gap = f64::MAX;
        for l in [5.0, 10.0, 20.0, 40.0] {
            let e = finite_box_bound_state(1.0, l).unwrap().energy;
            let gap = (e - (-0.5)).abs();
            assert!(
                gap < prev_gap || gap <= 1e-14,
                "L = {l}: gap {gap} did not shrink"
            );
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-6);
        // uniqueness: exactly one sign change on a geometric sweep
        let f = |k: f64| k / (k * 5.0).tanh() - 1.0;
        let mut changes = 0;
        let mut k = 1e-6;
        let mut fp = f(k);
        while k < 1e3 {
            let k2 = k * 1.1;
            let f2 = f(k2);
            if fp.signum() != f2.signum() {
                changes += 1;
            }
            k = k2;
            fp = f2;
        }
        assert_eq!(changes, 1);
    }

    #[test]
    fn odd_closed_forms() {
        // barrier: k = (π + 2πn)/L
        let p = BoxProblem {
            half_length: PI,
            strength: 1.0,
            kind: PotentialKind::Barrier,
            parity: Parity::Odd,
        };
        let modes = box_spectrum(&p, 3).unwrap();
        assert!((modes[0].k - 1.0).abs() <= 1e-14);
        assert!((modes[0].energy - 0.5).abs() <= 1e-14);
        assert!((modes[1].k - 3.0).abs() <= 1e-14);
        // well: k = 2πn/L, n ≥ 1
        let p = BoxProblem {
            half_length: PI,
            strength: 1.0,
            kind: PotentialKind::Well,
            parity: Parity::Odd,
        };
        let modes = box_spectrum(&p, 2).unwrap();
        assert!((modes[0].k - 2.0).abs() <= 1e-14);
        assert!((modes[0].energy - 2.0).abs() <= 1e-14);
    }

    #[test]
    fn even_roots_satisfy_their_equation() {
        let p = BoxProblem {
            half_length: 5.0,
            strength: 3.0,
            kind: PotentialKind::Barrier,
            parity: Parity::Even,
        };
        let modes = box_spectrum(&p, 6).unwrap();
        for m in &modes {
            let res = m.k * (m.k * 5.0).cos() / (m.k * 5.0).sin() + 3.0;
            assert!(res.abs() <= 1e-10, "k = {}: residual {res}", m.k);
        }
        // strictly increasing
        for w in modes.windows(2) {
            assert!(w[1].k > w[0].k);
        }
    }

    #[test]
    fn even_and_odd_barrier_roots_interlace() {
        let l = 5.0;
        let even = box_spectrum(
            &BoxProblem {
                half_length: l,
                strength: 3.0,
                kind: PotentialKind::Barrier,
                parity: Parity::Even,
            },
            10,
        )
        .unwrap();
        // physical interlacing partner: free odd box modes mπ/L
        for (n, m) in even.iter().enumerate() {
            let lo = n as f64 * PI / l;
            let hi = (n as f64 + 1.0) * PI / l;
            assert!(m.k > lo && m.k < hi, "k_{n} = {} outside ({lo}, {hi})", m.k);
        }
    }

    #[test]
    fn barrier_even_roots_continuous_in_strength() {
        // τ -> 0 recovers the free even modes k·cot(kL) = 0
        let l = 2.0;
        for (i, tau) in [1e-3f64, 1e-6, 1e-9].iter().enumerate() {
            let modes = box_spectrum(
                &BoxProblem {
                    half_length: l,
                    strength: *tau,
                    kind: PotentialKind::Barrier,
                    parity: Parity::Even,
                },
                3,
            )
            .unwrap();
            for (n, m) in modes.iter().enumerate() {
                let free = (n as f64 + 0.5) * PI / l;
                assert!(
                    (m.k - free).abs() <= 10.0 * tau,
                    "tau = {tau}, n = {n}: {} vs {free} (iter {i})",
                    m.k
                );
            }
        }
    }

    #[test]
    fn square_wall_degenerates_to_free_box_as_height_vanishes() {
        let p = SquareWellProblem {
            box_half_length: 4.0,
            wall_half_width: 0.3,
            height: 1e-9,
        };
        let modes = square_well_spectrum(&p, Parity::Even, 3).unwrap();
        for (n, m) in modes.iter().enumerate() {
            // free box even modes: k = (n + 1/2)π/L
            let free = (n as f64 + 0.5) * PI / 4.0;
            assert!((m.k - free).abs() <= 1e-6, "n = {n}: {} vs {free}", m.k);
        }
    }

    #[test]
    fn square_wall_converges_to_delta_box_modes() {
        // fixed τ = 2εV₀ = 3: lowest even k approaches the delta-box root
        let delta_k = box_spectrum(
            &BoxProblem {
                half_length: 5.0,
                strength: 3.0,
                kind: PotentialKind::Barrier,
                parity: Parity::Even,
            },
            1,
        )
        .unwrap()[0]
            .k;
        let mut prev = f64::MAX;
        for eps in [0.4, 0.2, 0.1, 0.05] {
            let p = SquareWellProblem {
                box_half_length: 5.0,
                wall_half_width: eps,
                height: 3.0 / (2.0 * eps),
            };
            let k0 = square_well_spectrum(&p, Parity::Even, 1).unwrap()[0].k;
            let gap = (k0 - delta_k).abs();
            assert!(gap < prev, "ε = {eps}: gap {gap} did not shrink");
            prev = gap;
        }
    }

    #[test]
    fn shallow_well_binds_within_physical_range() {
        let p = SquareWellProblem {
            box_half_length: 20.0,
            wall_half_width: 0.5,
            height: -2.0,
        };
        let bound = square_well_bound_states(&p, Parity::Even).unwrap();
        assert!(!bound.is_empty());
        let e = bound[0].energy;
        assert!(e > -2.0 && e < 0.0, "E = {e}");
        let res = p.bound_matching_residual(bound[0].k, Parity::Even);
        assert!(res.abs() <= 1e-9);
    }

    #[test]
    fn normalization_closed_form() {
        // L = 1, k = π: |A|⁻² = (2π - sin 2π)/(2π) = 1
        let (a, psi0) = normalization_and_origin(PI, 1.0, Parity::Even);
        assert!((a - 1.0).abs() <= 1e-14);
        // sin(kL) = 0 at this k: boundary coincidence
        assert!(psi0.abs() <= 1e-14);
        let (_, psi0_odd) = normalization_and_origin(2.3, 1.7, Parity::Odd);
        assert_eq!(psi0_odd, 0.0);
    }

    #[test]
    fn multidim_closed_forms() {
        // N₂D(2π³) = 2
        let n = n2d(2.0 * PI.powi(3)).unwrap();
        assert_eq!(n, 2.0);
        // E₂D(τ_R = 4π, ω = 1) = -e⁻¹
        let e = e2d_renormalized(4.0 * PI, 1.0).unwrap();
        assert!((e - (-(-1.0f64).exp())).abs() <= 1e-15);
        // σ = ω leaves the transparency untouched, exactly
        assert_eq!(renormalized_transparency(0.7, 2.5, 2.5).unwrap(), 0.7);
        // N₃D parameter validation
        assert!(n3d(-1.0, 0.1).is_err());
        assert!(e2d_bare(1.0, -0.1).is_err());
        let n3 = n3d(2.0 * PI.powi(3), 1.5).unwrap();
        let want = (3.0 * 2.0 * PI.powi(3) / (2.0 * PI * 1.5)).sqrt() / PI;
        assert_eq!(n3, want);
    }

    #[test]
    fn bisect_reports_bad_brackets() {
        let r = bisect(|x| x * x + 1.0, -1.0, 1.0, "no root");
        assert!(matches!(r, Err(OracleError::BracketingFailure { .. })));
    }
}
