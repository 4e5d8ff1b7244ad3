//! Symmetric eigensolvers used by the Hamiltonian layer.
//!
//! Two paths, chosen by matrix structure:
//!
//! * [`SymPeriodicTridiag`] — symmetric tridiagonal plus the two corner
//!   entries the periodic wrap produces. Eigenvalues by bisection on an
//!   LDLᵀ inertia count (the Sturm count extended to the bordered
//!   structure), eigenvectors by inverse iteration with a pivoted sparse
//!   solve and in-cluster orthogonalization.
//! * [`jacobi_eigen`] — cyclic Jacobi rotations for dense symmetric
//!   matrices (wider stencils, 2-D assemblies).
//!
//! Both return eigenvalues in ascending order with deterministic
//! tie-breaking; eigenvectors are Euclidean-orthonormal.

/// Symmetric matrix `diag` on the diagonal, `off[j]` at `(j, j+1)`, and
/// `corner` at `(0, n-1)`.
#[derive(Debug, Clone)]
pub struct SymPeriodicTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub corner: f64,
    /// Pivots smaller than this are pushed away from zero. Relative to the
    /// matrix scale so a guarded step cannot cascade into overflow.
    pivmin: f64,
}

impl SymPeriodicTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, corner: f64) -> Self {
        assert!(diag.len() >= 3, "need at least 3 rows");
        assert_eq!(off.len(), diag.len() - 1);
        let mut m = SymPeriodicTridiag {
            diag,
            off,
            corner,
            pivmin: 0.0,
        };
        m.pivmin = (f64::EPSILON * m.norm_inf()).max(1e-300);
        m
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for j in 0..n {
            let mut acc = self.diag[j] * x[j];
            if j > 0 {
                acc += self.off[j - 1] * x[j - 1];
            }
            if j + 1 < n {
                acc += self.off[j] * x[j + 1];
            }
            y[j] = acc;
        }
        y[0] += self.corner * x[n - 1];
        y[n - 1] += self.corner * x[0];
        y
    }

    /// Infinity norm; also the scale used for tolerances.
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for j in 0..n {
            let mut s = self.diag[j].abs();
            if j > 0 {
                s += self.off[j - 1].abs();
            }
            if j + 1 < n {
                s += self.off[j].abs();
            }
            if j == 0 || j == n - 1 {
                s += self.corner.abs();
            }
            worst = worst.max(s);
        }
        worst
    }

    fn guard(&self, q: f64) -> f64 {
        if q.abs() < self.pivmin {
            if q >= 0.0 {
                self.pivmin
            } else {
                -self.pivmin
            }
        } else {
            q
        }
    }

    /// Number of eigenvalues strictly below `lambda`: negative pivots of the
    /// LDLᵀ factorization of `A - λI`, with the border row eliminated
    /// alongside the tridiagonal chain.
    pub fn count_below(&self, lambda: f64) -> usize {
        let n = self.n();
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        let mut u = self.corner; // evolving entry of row n-1 in the pivot column
        let mut last = self.diag[n - 1] - lambda;
        for j in 0..n - 2 {
            if q < 0.0 {
                count += 1;
            }
            let qs = self.guard(q);
            let e = self.off[j];
            let next_q = (self.diag[j + 1] - lambda) - e * e / qs;
            last -= u * u / qs;
            let u_next = if j + 1 == n - 2 { self.off[n - 2] } else { 0.0 } - u * e / qs;
            q = next_q;
            u = u_next;
        }
        if q < 0.0 {
            count += 1;
        }
        let qs = self.guard(q);
        last -= u * u / qs;
        if last < 0.0 {
            count += 1;
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let (mut lo, mut hi) = (f64::MAX, f64::MIN);
        for j in 0..n {
            let mut r = 0.0;
            if j > 0 {
                r += self.off[j - 1].abs();
            }
            if j + 1 < n {
                r += self.off[j].abs();
            }
            if j == 0 || j == n - 1 {
                r += self.corner.abs();
            }
            lo = lo.min(self.diag[j] - r);
            hi = hi.max(self.diag[j] + r);
        }
        let pad = 1e-10 * (hi - lo).abs().max(1.0);
        (lo - pad, hi + pad)
    }

    fn bisect_eigenvalue(&self, k: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if !(hi - lo > 4.0 * f64::EPSILON * mid.abs().max(1e-30)) {
                break;
            }
            if self.count_below(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// One inverse-iteration step at the bisected shift followed by a
    /// Rayleigh quotient. The border fill amplifies rounding in the inertia
    /// count enough to smear transition points by ~10⁴ ulp of the matrix
    /// scale; the quotient of the amplified iterate recovers eps-level
    /// accuracy (exact-degenerate clusters give the common value for any
    /// vector in their span).
    fn rayleigh_polish(&self, lam: f64, seed: u64) -> f64 {
        let n = self.n();
        let mut rng = SplitMix64::new(seed ^ 0x52415945);
        let mut x: Vec<f64> = (0..n).map(|_| rng.next_sym()).collect();
        normalize(&mut x);
        let mut best = lam;
        for _ in 0..2 {
            x = self.solve_shifted(best, &x);
            let nrm = norm(&x);
            if !(nrm.is_finite() && nrm > 0.0) {
                return best;
            }
            for v in x.iter_mut() {
                *v /= nrm;
            }
            let ax = self.apply(&x);
            let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
            if rho.is_finite() {
                best = rho;
            }
        }
        best
    }

    /// k-th eigenvalue (ascending, 0-based): bisection on the count plus a
    /// Rayleigh polish.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        self.rayleigh_polish(self.bisect_eigenvalue(k), k as u64)
    }

    /// All eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut out: Vec<f64> = (0..self.n()).map(|k| self.eigenvalue(k)).collect();
        // polishing can reorder members of a tight cluster by ulps
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        out
    }

    /// Solve `(A - σI) x = b` by sparse Gaussian elimination with partial
    /// pivoting over the active rows; tiny pivots are guarded so the solve
    /// stays defined at σ equal to an eigenvalue (inverse iteration relies
    /// on the resulting growth).
    pub fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.n();
        assert_eq!(b.len(), n);
        // rows as small sorted (col, val) lists
        let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut r: Vec<(usize, f64)> = Vec::with_capacity(5);
            if i > 0 {
                r.push((i - 1, self.off[i - 1]));
            }
            r.push((i, self.diag[i] - sigma));
            if i + 1 < n {
                r.push((i + 1, self.off[i]));
            }
            if i == 0 {
                push_entry(&mut r, n - 1, self.corner);
            }
            if i == n - 1 {
                push_entry(&mut r, 0, self.corner);
            }
            rows.push(r);
        }
        let mut rhs = b.to_vec();
        // active row indices able to hold a nonzero in the current column;
        // a row enters exactly once and leaves when it becomes a pivot
        let mut active: Vec<usize> = vec![0, n - 1];
        let mut entered = vec![false; n];
        entered[0] = true;
        entered[n - 1] = true;
        let mut pivot_of_col: Vec<usize> = Vec::with_capacity(n);
        for col in 0..n {
            if col + 1 <= n - 1 && !entered[col + 1] {
                active.push(col + 1);
                entered[col + 1] = true;
            }
            // partial pivot among active rows
            let (mut best_pos, mut best_val) = (0usize, -1.0f64);
            for (pos, &r) in active.iter().enumerate() {
                let v = get_entry(&rows[r], col).abs();
                if v > best_val {
                    best_val = v;
                    best_pos = pos;
                }
            }
            let p = active.swap_remove(best_pos);
            let mut pval = get_entry(&rows[p], col);
            if pval.abs() < self.pivmin {
                pval = if pval >= 0.0 {
                    self.pivmin
                } else {
                    -self.pivmin
                };
                set_entry(&mut rows[p], col, pval);
            }
            for &r in &active {
                let v = get_entry(&rows[r], col);
                if v != 0.0 {
                    let m = v / pval;
                    let prow = rows[p].clone();
                    row_axpy(&mut rows[r], m, &prow, col);
                    rhs[r] -= m * rhs[p];
                }
            }
            pivot_of_col.push(p);
        }
        // back substitution in reverse column order
        let mut x = vec![0.0; n];
        for col in (0..n).rev() {
            let p = pivot_of_col[col];
            let mut acc = rhs[p];
            let mut diag = 0.0;
            for &(c, v) in &rows[p] {
                if c == col {
                    diag = v;
                } else if c > col {
                    acc -= v * x[c];
                }
            }
            x[col] = acc / self.guard(diag);
        }
        x
    }

    pub fn residual(&self, lambda: f64, x: &[f64]) -> f64 {
        let ax = self.apply(x);
        let mut acc = 0.0;
        for j in 0..x.len() {
            let r = ax[j] - lambda * x[j];
            acc += r * r;
        }
        acc.sqrt()
    }

    /// Full decomposition: ascending eigenvalues and Euclidean-orthonormal
    /// eigenvectors via inverse iteration. Eigenvalues closer than the
    /// cluster tolerance are treated as one group and orthogonalized
    /// against each other during the iteration.
    pub fn eigenpairs(&self, seed: u64) -> (Vec<f64>, Vec<Vec<f64>>) {
        let lambdas = self.eigenvalues();
        let vectors = self.eigenvectors_for(&lambdas, seed);
        (lambdas, vectors)
    }

    /// Lowest eigenpair only; much cheaper than a full decomposition.
    pub fn lowest_eigenpair(&self, seed: u64) -> (f64, Vec<f64>) {
        let lam = self.eigenvalue(0);
        let vecs = self.eigenvectors_for(std::slice::from_ref(&lam), seed);
        (lam, vecs.into_iter().next().unwrap())
    }

    fn eigenvectors_for(&self, lambdas: &[f64], seed: u64) -> Vec<Vec<f64>> {
        let n = self.n();
        let scale = self.norm_inf().max(1e-300);
        let cluster_tol = 1e-5 * scale;
        let accept_tol = 1e-11 * scale;
        let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(lambdas.len());
        let mut group_start = 0usize;
        for (i, &lam) in lambdas.iter().enumerate() {
            if i > 0 && (lam - lambdas[i - 1]).abs() > cluster_tol {
                group_start = i;
            }
            let mut best: Option<(f64, Vec<f64>)> = None;
            for attempt in 0..3u64 {
                let mut rng = SplitMix64::new(
                    seed ^ (i as u64).wrapping_mul(0x9E3779B97F4A7C15) ^ attempt << 56,
                );
                let mut x: Vec<f64> = (0..n).map(|_| rng.next_sym()).collect();
                normalize(&mut x);
                let mut res = f64::MAX;
                for _ in 0..6 {
                    x = self.solve_shifted(lam, &x);
                    for prev in &vectors[group_start..i] {
                        orthogonalize(&mut x, prev);
                    }
                    let nrm = norm(&x);
                    if !(nrm > 0.0) || !nrm.is_finite() {
                        break;
                    }
                    for v in x.iter_mut() {
                        *v /= nrm;
                    }
                    res = self.residual(lam, &x);
                    if res <= accept_tol {
                        break;
                    }
                }
                if best.as_ref().map_or(true, |(b, _)| res < *b) {
                    best = Some((res, x.clone()));
                }
                if res <= accept_tol {
                    break;
                }
            }
            let (_, mut x) = best.unwrap();
            // a second orthogonalization pass tightens the group
            for prev in &vectors[group_start..i] {
                orthogonalize(&mut x, prev);
            }
            normalize(&mut x);
            vectors.push(x);
        }
        fix_signs(&mut vectors);
        vectors
    }
}

fn get_entry(row: &[(usize, f64)], col: usize) -> f64 {
    row.iter()
        .find(|(c, _)| *c == col)
        .map(|(_, v)| *v)
        .unwrap_or(0.0)
}

fn set_entry(row: &mut Vec<(usize, f64)>, col: usize, val: f64) {
    for e in row.iter_mut() {
        if e.0 == col {
            e.1 = val;
            return;
        }
    }
    push_entry(row, col, val);
}

fn push_entry(row: &mut Vec<(usize, f64)>, col: usize, val: f64) {
    for e in row.iter_mut() {
        if e.0 == col {
            e.1 += val;
            return;
        }
    }
    row.push((col, val));
    row.sort_unstable_by_key(|e| e.0);
}

/// `target -= m * source` over columns `>= from`, keeping the list sorted.
fn row_axpy(target: &mut Vec<(usize, f64)>, m: f64, source: &[(usize, f64)], from: usize) {
    for &(c, v) in source {
        if c < from || v == 0.0 {
            continue;
        }
        let mut found = false;
        for e in target.iter_mut() {
            if e.0 == c {
                e.1 -= m * v;
                found = true;
                break;
            }
        }
        if !found {
            target.push((c, -m * v));
        }
    }
    target.sort_unstable_by_key(|e| e.0);
    target.retain(|&(c, v)| v != 0.0 || c >= from);
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn normalize(x: &mut [f64]) {
    let n = norm(x);
    if n > 0.0 {
        for v in x.iter_mut() {
            *v /= n;
        }
    }
}

fn orthogonalize(x: &mut [f64], against: &[f64]) {
    // two classical Gram-Schmidt passes
    for _ in 0..2 {
        let dot: f64 = x.iter().zip(against).map(|(a, b)| a * b).sum();
        for (xi, bi) in x.iter_mut().zip(against) {
            *xi -= dot * bi;
        }
    }
}

/// Deterministic sign convention: first component larger than a relative
/// threshold is made positive.
fn fix_signs(vectors: &mut [Vec<f64>]) {
    for v in vectors.iter_mut() {
        let peak = v.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        if peak == 0.0 {
            continue;
        }
        let lead = v.iter().find(|x| x.abs() > 1e-8 * peak);
        if let Some(&l) = lead {
            if l < 0.0 {
                for x in v.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
}

struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in (-1, 1).
    fn next_sym(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    }
}

/// Cyclic Jacobi eigendecomposition of a dense symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm falls below
/// `1e-12 ×` the matrix Frobenius norm. Returns ascending eigenvalues and
/// the matching orthonormal eigenvectors (row `k` of the result is the
/// eigenvector for eigenvalue `k`).
pub fn jacobi_eigen(a_in: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a_in.len();
    let mut a: Vec<Vec<f64>> = a_in.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let fro: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();
    let target = 1e-12 * fro.max(1e-300);
    for _sweep in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p][q] * a[p][q];
            }
        }
        if (2.0 * off).sqrt() <= target {
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (a[q][q] - a[p][p]) / apq;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let s = theta.signum();
                    s / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for j in 0..n {
                    if j != p && j != q {
                        let ajp = a[j][p];
                        let ajq = a[j][q];
                        a[j][p] = ajp - s * (ajq + tau * ajp);
                        a[j][q] = ajq + s * (ajp - tau * ajq);
                        a[p][j] = a[j][p];
                        a[q][j] = a[j][q];
                    }
                }
                for j in 0..n {
                    let vjp = v[j][p];
                    let vjq = v[j][q];
                    v[j][p] = vjp - s * (vjq + tau * vjp);
                    v[j][q] = vjq + s * (vjp - tau * vjq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i][i].partial_cmp(&a[j][j]).unwrap().then_with(|| {
            first_sign_key(&v, i)
                .partial_cmp(&first_sign_key(&v, j))
                .unwrap()
        })
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
    let mut vectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&k| (0..n).map(|j| v[j][k]).collect())
        .collect();
    fix_signs(&mut vectors);
    (eigenvalues, vectors)
}

fn first_sign_key(v: &[Vec<f64>], col: usize) -> f64 {
    for row in v {
        if row[col].abs() > 1e-12 {
            return row[col].signum();
        }
    }
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free_laplacian(n: usize, h: f64) -> SymPeriodicTridiag {
        // -(1/2) × compact second difference on the periodic grid
        let hh = h * h;
        SymPeriodicTridiag::new(vec![1.0 / hh; n], vec![-0.5 / hh; n - 1], -0.5 / hh)
    }

    fn circulant_eigs(n: usize, h: f64) -> Vec<f64> {
        let mut e: Vec<f64> = (0..n)
            .map(|m| {
                let s = (std::f64::consts::PI * m as f64 / n as f64).sin();
                2.0 / (h * h) * s * s
            })
            .collect();
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        e
    }

    #[test]
    fn count_below_matches_jacobi_on_random_matrix() {
        let n = 24;
        let mut rng = SplitMix64::new(42);
        let diag: Vec<f64> = (0..n).map(|_| 3.0 * rng.next_sym()).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| rng.next_sym()).collect();
        let corner = rng.next_sym();
        let m = SymPeriodicTridiag::new(diag.clone(), off.clone(), corner);
        let mut dense = vec![vec![0.0; n]; n];
        for j in 0..n {
            dense[j][j] = diag[j];
            if j + 1 < n {
                dense[j][j + 1] = off[j];
                dense[j + 1][j] = off[j];
            }
        }
        dense[0][n - 1] = corner;
        dense[n - 1][0] = corner;
        let (ev, _) = jacobi_eigen(&dense);
        for &x in &[-3.5, -1.0, -0.1, 0.0, 0.4, 1.7, 3.9] {
            let expected = ev.iter().filter(|&&l| l < x).count();
            assert_eq!(m.count_below(x), expected, "at {x}");
        }
    }

    #[test]
    fn bisection_matches_circulant_closed_form() {
        let (n, h) = (101usize, 0.1f64);
        let m = free_laplacian(n, h);
        let got = m.eigenvalues();
        let want = circulant_eigs(n, h);
        let scale = want.last().copied().unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-12 * scale, "{g} vs {w}");
        }
    }

    #[test]
    fn inverse_iteration_produces_orthonormal_vectors() {
        let (n, h) = (64usize + 1, 0.2f64);
        let m = free_laplacian(n, h);
        let (lam, vecs) = m.eigenpairs(7);
        let scale = m.norm_inf();
        for (k, v) in vecs.iter().enumerate() {
            let r = m.residual(lam[k], v);
            assert!(r <= 1e-10 * scale, "residual {r} at {k}");
        }
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() <= 1e-10, "⟨v{i}, v{j}⟩ = {dot}");
            }
        }
    }

    #[test]
    fn bordered_solver_handles_random_shifted_systems() {
        let n = 40;
        let mut rng = SplitMix64::new(11);
        let diag: Vec<f64> = (0..n).map(|_| 2.0 + rng.next_sym()).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| rng.next_sym()).collect();
        let m = SymPeriodicTridiag::new(diag, off, 0.7);
        let b: Vec<f64> = (0..n).map(|_| rng.next_sym()).collect();
        let sigma = -0.3;
        let x = m.solve_shifted(sigma, &b);
        let ax = m.apply(&x);
        for j in 0..n {
            let r = ax[j] - sigma * x[j] - b[j];
            assert!(r.abs() <= 1e-9, "row {j}: {r}");
        }
    }

    #[test]
    fn jacobi_small_fixture() {
        let a = vec![
            vec![2.0, 0.0, 0.0],
            vec![0.0, 3.0, 4.0],
            vec![0.0, 4.0, 9.0],
        ];
        let (ev, vecs) = jacobi_eigen(&a);
        let want = [1.0, 2.0, 11.0];
        for (g, w) in ev.iter().zip(&want) {
            assert!((g - w).abs() <= 1e-12, "{g} vs {w}");
        }
        // residuals
        for (k, v) in vecs.iter().enumerate() {
            for i in 0..3 {
                let av: f64 = (0..3).map(|j| a[i][j] * v[j]).sum();
                assert!((av - ev[k] * v[i]).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn degenerate_pairs_stay_orthogonal() {
        // free Laplacian has exact double eigenvalues (m, n-m)
        let m = free_laplacian(31, 0.11);
        let (_, vecs) = m.eigenpairs(3);
        for i in 0..vecs.len() {
            for j in (i + 1)..vecs.len() {
                let dot: f64 = vecs[i].iter().zip(&vecs[j]).map(|(a, b)| a * b).sum();
                assert!(dot.abs() <= 1e-10, "⟨v{i}, v{j}⟩ = {dot}");
            }
        }
    }
}
