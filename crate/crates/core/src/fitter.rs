//! Classical search for the LC of displaced Lorentzians closest to a sampled target.
//!
//! For fixed rates `a` and centers `k_c`, the squared overlap `F = (dᵀg)²` under the
//! constraint `dᵀSd = 1` is a rank-one generalized eigenproblem, solved exactly by
//! `d ∝ S⁻¹g` with `F = gᵀS⁻¹g`. Rates are refined by coordinate-wise golden-section
//! search and centers by a Metropolis walk over integer moves.

use nalgebra::{Cholesky, DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::locfuncs::{lf_overlap, lf_vector, LcSpec};
use crate::statevector::MAX_QUBITS;
use crate::{Error, Result};

/// Bracket of the decay-rate line search.
pub const A_MIN: f64 = 1e-3;
pub const A_MAX: f64 = 8.0;
/// Golden-section shrink steps per coordinate.
pub const GOLDEN_STEPS: usize = 20;

/// Smallest admissible Cholesky pivot of `S`.
const PIVOT_TOL: f64 = 1e-6;

/// Real samples on a `2^n_q` grid, normalised on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetFunction {
    n_q: usize,
    samples: Vec<f64>,
}

impl TargetFunction {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        let len = samples.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::NotPowerOfTwo(len));
        }
        let n_q = len.trailing_zeros() as usize;
        if n_q > MAX_QUBITS {
            return Err(Error::QubitCount(n_q));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::param("target samples must be finite"));
        }
        let norm = samples.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0) {
            return Err(Error::ZeroNorm);
        }
        Ok(TargetFunction { n_q, samples: samples.into_iter().map(|v| v / norm).collect() })
    }

    /// `exp(−(j−16)²/9) + 0.4·exp(−(j−8)²/4)` on 32 points.
    pub fn two_gaussians() -> Self {
        let raw = (0..32)
            .map(|j| {
                let j = j as f64;
                (-(j - 16.0).powi(2) / 9.0).exp() + 0.4 * (-(j - 8.0).powi(2) / 4.0).exp()
            })
            .collect();
        Self::new(raw).expect("bundled target is valid")
    }

    pub fn n_q(&self) -> usize {
        self.n_q
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }
}

/// Metropolis and rate-search settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitConfig {
    pub n_loc: usize,
    pub beta: f64,
    pub n_metropolis: usize,
    pub n_p: usize,
    pub seed: u64,
    /// Defaults to `n_loc` evenly spaced centers.
    pub k_init: Option<Vec<i64>>,
    /// Defaults to 1 for every term.
    pub a_init: Option<Vec<f64>>,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { n_loc: 3, beta: 200.0, n_metropolis: 400, n_p: 3, seed: 1, k_init: None, a_init: None }
    }
}

impl FitConfig {
    fn initial(&self, n_q: usize) -> Result<(Vec<i64>, Vec<f64>)> {
        if self.n_loc == 0 || !(self.beta > 0.0) || self.n_metropolis == 0 || self.n_p == 0 {
            return Err(Error::param("fit needs n_loc, n_metropolis, n_p ≥ 1 and β > 0"));
        }
        let n = 1i64 << n_q;
        let k: Vec<i64> = match &self.k_init {
            Some(k) => k.iter().map(|c| c.rem_euclid(n)).collect(),
            None => (0..self.n_loc)
                .map(|l| (((l as f64 + 0.5) * n as f64 / self.n_loc as f64).round() as i64).rem_euclid(n))
                .collect(),
        };
        let a = self.a_init.clone().unwrap_or_else(|| vec![1.0; self.n_loc]);
        if k.len() != self.n_loc || a.len() != self.n_loc {
            return Err(Error::param("initial centers and rates must have n_loc entries"));
        }
        if a.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::param("initial rates must be positive"));
        }
        Ok((k, a.into_iter().map(|v| v.clamp(A_MIN, A_MAX)).collect()))
    }
}

/// One Metropolis step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub proposed_f: f64,
    pub accepted: bool,
    pub best_f: f64,
}

/// Best parameters found.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub n_q: usize,
    pub d: Vec<f64>,
    pub a: Vec<f64>,
    pub k_c: Vec<i64>,
    pub f: f64,
    pub seed: u64,
    pub trace: Vec<TraceEntry>,
}

impl FitResult {
    pub fn to_lc(&self) -> Result<LcSpec> {
        let terms: Vec<(f64, f64, i64)> =
            self.d.iter().zip(&self.a).zip(&self.k_c).map(|((&d, &a), &k)| (d, a, k)).collect();
        LcSpec::one_dim(self.n_q, &terms)
    }
}

/// `g_ℓ = Σ_j ψ_j L_{j−k_ℓ}(a_ℓ)`.
pub fn g_vector(target: &TargetFunction, a: &[f64], k_c: &[i64]) -> Vec<f64> {
    a.iter()
        .zip(k_c)
        .map(|(&al, &kl)| lf_vector(target.n_q, al, kl).iter().zip(&target.samples).map(|(l, p)| l * p).sum())
        .collect()
}

/// `S_ℓℓ' = V(a_ℓ, a_ℓ', k_ℓ − k_ℓ')`.
pub fn overlap_matrix(n_q: usize, a: &[f64], k_c: &[i64]) -> DMatrix<f64> {
    let n = a.len();
    DMatrix::from_fn(n, n, |i, j| if i == j { 1.0 } else { lf_overlap(a[i], a[j], k_c[i] - k_c[j], n_q) })
}

/// `(G, S)` with `G = ggᵀ`.
pub fn build_matrices(target: &TargetFunction, a: &[f64], k_c: &[i64]) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if a.len() != k_c.len() {
        return Err(Error::SizeMismatch(a.len(), k_c.len()));
    }
    if a.iter().any(|v| !(*v > 0.0)) {
        return Err(Error::param("decay rates must be positive"));
    }
    let g = DVector::from_vec(g_vector(target, a, k_c));
    let s = overlap_matrix(target.n_q, a, k_c);
    check_basis(&s)?;
    Ok((&g * g.transpose(), s))
}

fn check_basis(s: &DMatrix<f64>) -> Result<Cholesky<f64, nalgebra::Dyn>> {
    let chol = Cholesky::new(s.clone()).ok_or_else(|| Error::DegenerateBasis("Cholesky failed".into()))?;
    let pivot = chol.l_dirty().diagonal().min();
    if pivot < PIVOT_TOL {
        return Err(Error::DegenerateBasis(format!("pivot {pivot:.3e}")));
    }
    Ok(chol)
}

/// Rank-one optimum: `d = S⁻¹g / √F`, `F = gᵀS⁻¹g`, sign chosen so `dᵀg ≥ 0`.
pub fn optimal_coeffs(g: &[f64], s: &DMatrix<f64>) -> Result<(Vec<f64>, f64)> {
    if g.len() != s.nrows() || !s.is_square() {
        return Err(Error::SizeMismatch(g.len(), s.nrows()));
    }
    let chol = check_basis(s)?;
    let gv = DVector::from_column_slice(g);
    let x = chol.solve(&gv);
    let f = gv.dot(&x);
    if !(f > 0.0) {
        return Ok((vec![0.0; g.len()], 0.0));
    }
    let d = x / f.sqrt();
    Ok((d.iter().copied().collect(), f))
}

/// Dense reference: largest eigenpair of `Gc = μSc`, normalised to `cᵀSc = 1`.
pub fn generalized_eigen_max(gm: &DMatrix<f64>, s: &DMatrix<f64>) -> Result<(Vec<f64>, f64)> {
    let chol = check_basis(s)?;
    let l = chol.l();
    let l_inv = l.clone().try_inverse().ok_or_else(|| Error::DegenerateBasis("singular factor".into()))?;
    let reduced = &l_inv * gm * l_inv.transpose();
    let sym = (&reduced + reduced.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let (idx, mu) =
        eig.eigenvalues.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |best, (i, &v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            },
        );
    let y = eig.eigenvectors.column(idx).into_owned();
    let c =
        l.transpose().solve_upper_triangular(&y).ok_or_else(|| Error::DegenerateBasis("back-substitution".into()))?;
    let norm = c.dot(&(s * &c)).sqrt();
    Ok(((c / norm).iter().copied().collect(), mu))
}

/// `F_dc(a, k_c)`, or `None` for a degenerate basis.
fn objective(target: &TargetFunction, a: &[f64], k_c: &[i64]) -> Option<(Vec<f64>, f64)> {
    let g = g_vector(target, a, k_c);
    optimal_coeffs(&g, &overlap_matrix(target.n_q, a, k_c)).ok()
}

/// Result of the rate search at fixed centers.
#[derive(Debug, Clone, PartialEq)]
pub struct RateFit {
    pub a: Vec<f64>,
    pub d: Vec<f64>,
    pub f: f64,
    /// `F` after each outer iteration.
    pub trace: Vec<f64>,
}

fn golden_section<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Maximizes `F_dc` over rates by `n_p` sweeps of coordinate-wise golden-section search.
/// A coordinate only moves when `F` strictly improves, so the trace is non-decreasing.
pub fn optimize_decay_rates(target: &TargetFunction, k_c: &[i64], a_init: &[f64], n_p: usize) -> Result<RateFit> {
    if n_p == 0 {
        return Err(Error::param("n_p must be at least 1"));
    }
    let mut a: Vec<f64> = a_init.iter().map(|v| v.clamp(A_MIN, A_MAX)).collect();
    let (g, s) = (g_vector(target, &a, k_c), overlap_matrix(target.n_q, &a, k_c));
    let (mut d, mut f) = optimal_coeffs(&g, &s)?;
    let mut trace = Vec::with_capacity(n_p);
    for _ in 0..n_p {
        for l in 0..a.len() {
            let mut trial = a.clone();
            let (x, fx) = golden_section(
                |v| {
                    trial[l] = v;
                    objective(target, &trial, k_c).map_or(f64::NEG_INFINITY, |r| r.1)
                },
                A_MIN,
                A_MAX,
            );
            if fx > f {
                a[l] = x;
                let (dn, fn_) = objective(target, &a, k_c).expect("evaluated above");
                d = dn;
                f = fn_;
            }
        }
        trace.push(f);
    }
    Ok(RateFit { a, d, f, trace })
}

/// `min(1, e^{−β(F − F_M)})`.
fn acceptance(beta: f64, f: f64, f_m: f64) -> f64 {
    let delta = f - f_m;
    if delta <= 0.0 {
        1.0
    } else {
        (-beta * delta).exp()
    }
}

/// Metropolis search over integer centers with rate optimization at every proposal.
///
/// One RNG stream, drawn in order: term index, move in `{−1, 0, +1}`, acceptance
/// number (not drawn on the first step, which is always accepted). Centers wrap mod
/// `N`; degenerate proposals are rejected. Returns the best state visited.
pub fn fit(target: &TargetFunction, config: &FitConfig) -> Result<FitResult> {
    let (mut k, mut a) = config.initial(target.n_q)?;
    let n = 1i64 << target.n_q;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut f_cur = f64::NEG_INFINITY;
    let mut best: Option<(Vec<i64>, RateFit)> = None;
    let mut trace = Vec::with_capacity(config.n_metropolis);
    for i in 0..config.n_metropolis {
        let l = rng.gen_range(0..config.n_loc);
        let step = rng.gen_range(-1i64..=1);
        let mut k_m = k.clone();
        k_m[l] = (k_m[l] + step).rem_euclid(n);
        let (accepted, f_m) = match optimize_decay_rates(target, &k_m, &a, config.n_p) {
            Err(Error::DegenerateBasis(_)) => {
                if i > 0 {
                    rng.gen::<f64>();
                }
                (false, f64::NEG_INFINITY)
            }
            Err(e) => return Err(e),
            Ok(p) => {
                let f_m = p.f;
                let accept = i == 0 || rng.gen::<f64>() < acceptance(config.beta, f_cur, f_m);
                if accept {
                    k = k_m.clone();
                    a = p.a.clone();
                    f_cur = f_m;
                    if best.as_ref().is_none_or(|b| f_m > b.1.f) {
                        best = Some((k_m, p));
                    }
                }
                (accept, f_m)
            }
        };
        trace.push(TraceEntry {
            proposed_f: f_m,
            accepted,
            best_f: best.as_ref().map_or(f64::NEG_INFINITY, |b| b.1.f),
        });
    }
    let (k_c, rates) = best.ok_or_else(|| Error::DegenerateBasis("no valid proposal".into()))?;
    Ok(FitResult { n_q: target.n_q, d: rates.d, a: rates.a, k_c, f: rates.f, seed: config.seed, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locfuncs::lorentzian_value;

    fn random_target(seed: u64, n_q: usize) -> TargetFunction {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        TargetFunction::new((0..1 << n_q).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn target_is_normalised() {
        let t = TargetFunction::new(vec![3.0, 4.0]).unwrap();
        assert_eq!(t.samples(), &[0.6, 0.8]);
        assert!(TargetFunction::new(vec![1.0; 3]).is_err());
        assert!(TargetFunction::new(vec![0.0; 4]).is_err());
        let tg = TargetFunction::two_gaussians();
        assert!((tg.samples().iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn g_vector_examples() {
        let t = TargetFunction::new(lf_vector(5, 0.7, 11)).unwrap();
        assert!((g_vector(&t, &[0.7], &[11])[0] - 1.0).abs() < 1e-12);

        // even function at k=0 against an odd function about 0
        let odd: Vec<f64> = (0..16)
            .map(|j| {
                if j == 3 {
                    1.0
                } else if j == 13 {
                    -1.0
                } else {
                    0.0
                }
            })
            .collect();
        let t = TargetFunction::new(odd).unwrap();
        assert!(g_vector(&t, &[0.4], &[0])[0].abs() < 1e-15);

        let t = random_target(2, 4);
        let (a, k) = ([0.3, 0.9, 1.7], [2i64, 9, 15]);
        let g = g_vector(&t, &a, &k);
        for l in 0..3 {
            let brute: f64 = (0..16).map(|j| t.samples()[j] * lorentzian_value(4, a[l], j as i64 - k[l])).sum();
            assert!((g[l] - brute).abs() < 1e-12);
        }
    }

    #[test]
    fn matrices_examples() {
        let t = random_target(3, 4);
        let (gm, s) = build_matrices(&t, &[0.5], &[4]).unwrap();
        let g = g_vector(&t, &[0.5], &[4])[0];
        assert!((gm[(0, 0)] - g * g).abs() < 1e-15);
        assert_eq!(s[(0, 0)], 1.0);
        assert!(matches!(build_matrices(&t, &[0.5, 0.5], &[4, 4]), Err(Error::DegenerateBasis(_))));

        let (a, k) = ([0.360, 0.490, 1.672], [8i64, 16, 12]);
        let s = overlap_matrix(5, &a, &k);
        for i in 0..3 {
            for j in 0..3 {
                let brute: f64 =
                    lf_vector(5, a[i], k[i]).iter().zip(lf_vector(5, a[j], k[j])).map(|(x, y)| x * y).sum();
                assert!((s[(i, j)] - brute).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        let t = random_target(4, 4);
        let g = g_vector(&t, &[0.8], &[5]);
        let (d, f) = optimal_coeffs(&g, &DMatrix::identity(1, 1)).unwrap();
        assert!((d[0].abs() - 1.0).abs() < 1e-12);
        assert!((f - g[0] * g[0]).abs() < 1e-15);

        let (d, f) = optimal_coeffs(&[0.3, 0.4], &DMatrix::identity(2, 2)).unwrap();
        assert!((f - 0.25).abs() < 1e-15);
        assert!((d[0] / d[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn rank_one_matches_dense_eigensolver() {
        for seed in 0..10 {
            let t = random_target(100 + seed, 5);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a: Vec<f64> = (0..4).map(|_| rng.gen_range(0.1..3.0)).collect();
            let k: Vec<i64> = vec![1, 9, 17, 25];
            let (gm, s) = build_matrices(&t, &a, &k).unwrap();
            let g = g_vector(&t, &a, &k);
            let (d, f) = optimal_coeffs(&g, &s).unwrap();
            let (_, mu) = generalized_eigen_max(&gm, &s).unwrap();
            assert!((f - mu).abs() < 1e-10);
            let dv = DVector::from_vec(d);
            assert!((dv.dot(&(&s * &dv)) - 1.0).abs() < 1e-10);
            let overlap = dv.dot(&DVector::from_vec(g));
            assert!((overlap * overlap - f).abs() < 1e-12);
            assert!((0.0..=1.0 + 1e-12).contains(&f));
        }
    }

    #[test]
    fn rate_search_recovers_single_lorentzian() {
        let t = TargetFunction::new(lf_vector(5, 0.7, 13)).unwrap();
        let r = optimize_decay_rates(&t, &[13], &[2.0], 3).unwrap();
        assert!((r.a[0] - 0.7).abs() < 1e-3, "{:?}", r.a);
        assert!(r.f > 1.0 - 1e-6);
        let once = optimize_decay_rates(&t, &[13], &[2.0], 1).unwrap();
        assert_eq!(once.trace.len(), 1);
    }

    #[test]
    fn rate_trace_is_monotone() {
        for seed in 0..10 {
            let t = random_target(200 + seed, 5);
            let r = optimize_decay_rates(&t, &[3, 12, 22], &[1.0, 1.0, 1.0], 4).unwrap();
            for w in r.trace.windows(2) {
                assert!(w[1] >= w[0] - 1e-12);
            }
        }
    }

    #[test]
    fn metropolis_is_reproducible_and_best_is_monotone() {
        let t = TargetFunction::two_gaussians();
        let cfg = FitConfig { n_metropolis: 40, ..FitConfig::default() };
        let a = fit(&t, &cfg).unwrap();
        let b = fit(&t, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.trace[0].accepted);
        for w in a.trace.windows(2) {
            assert!(w[1].best_f >= w[0].best_f);
        }
        let lc = a.to_lc().unwrap();
        assert!((crate::locfuncs::lc_norm_sqr(&lc) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn infinite_beta_is_greedy() {
        let t = TargetFunction::two_gaussians();
        let cfg = FitConfig { n_metropolis: 30, beta: f64::INFINITY, ..FitConfig::default() };
        let r = fit(&t, &cfg).unwrap();
        let mut current = r.trace[0].proposed_f;
        for e in &r.trace[1..] {
            assert_eq!(e.accepted, e.proposed_f >= current && e.proposed_f > f64::NEG_INFINITY, "{e:?}");
            if e.accepted {
                current = e.proposed_f;
            }
        }
    }

    #[test]
    fn self_fit_single_term() {
        let t = TargetFunction::new(lf_vector(4, 0.9, 6)).unwrap();
        let cfg = FitConfig { n_loc: 1, n_metropolis: 30, k_init: Some(vec![3]), ..FitConfig::default() };
        let r = fit(&t, &cfg).unwrap();
        assert!(r.f > 1.0 - 1e-6, "{r:?}");
        assert_eq!(r.k_c, vec![6]);
    }
}
