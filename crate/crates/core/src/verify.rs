//! Independent certification of closed-form spectra.
//!
//! Nothing here looks at the formulas: eigenpairs are checked against the
//! assembled matrices through residuals, pencil determinants, a brute-force
//! sign-scan eigenvalue oracle and the rank of the eigenvector matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{lu_factor, numerical_rank, DenseMatrix};
use crate::spectra::{FormulaVariant, Instance, SetId, Spectrum};

/// Default pass tolerance on the maximum relative residual.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Relative pivot threshold for the eigenvector rank.
pub const RANK_TOL: f64 = 1e-8;
/// Required gap between `|det(A − λB)|` at an eigenvalue and at neighbouring midpoints.
pub const DET_FACTOR: f64 = 1e6;
/// Determinant checks are skipped above this size (one LU per eigenvalue).
pub const DET_CHECK_MAX_N: usize = 200;
/// Largest problem the sign-scan oracle accepts.
pub const ORACLE_MAX_N: usize = 64;
/// Residual ratio within which two variants are considered tied.
pub const TIE_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    /// 1-based eigenpair index.
    pub j: usize,
    pub lambda: f64,
    pub rel_residual: f64,
    /// `ln|det(A − λB)|`; absent when the determinant check was skipped.
    pub det_log_magnitude: Option<f64>,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub set_id: SetId,
    pub variant: FormulaVariant,
    pub n: usize,
    pub m: usize,
    pub per_pair: Vec<PairReport>,
    pub max_rel_residual: f64,
    pub eigvec_rank: usize,
    pub b_singular: bool,
    pub pass: bool,
    pub tolerance_used: f64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetCheck {
    pub lambda: f64,
    pub sign: f64,
    pub log_abs: f64,
    pub singular: bool,
    /// `|det|` is at least [`DET_FACTOR`] below its value at neighbouring midpoints.
    pub certified: bool,
}

fn check_dims(a: &DenseMatrix, b: Option<&DenseMatrix>, n: usize) -> Result<()> {
    if a.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.n() });
    }
    if let Some(b) = b {
        if b.n() != n {
            return Err(Error::DimensionMismatch { expected: n, got: b.n() });
        }
    }
    Ok(())
}

fn sparse_matvec(rows: &[Vec<(usize, f64)>], x: &[f64]) -> Vec<f64> {
    rows.iter().map(|r| r.iter().map(|&(k, v)| v * x[k]).sum()).collect()
}

fn vec_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// `‖A x_j − λ_j B x_j‖∞ / ((‖A‖∞ + |λ_j|‖B‖∞)‖x_j‖∞)` for every pair, in `j` order.
///
/// Non-finite results are reported as `+∞`.
pub fn pair_residuals(a: &DenseMatrix, b: Option<&DenseMatrix>, s: &Spectrum) -> Result<Vec<f64>> {
    check_dims(a, b, s.n)?;
    let a_rows = a.row_nonzeros();
    let b_rows = b.map(|b| b.row_nonzeros());
    let (a_norm, b_norm) = (a.norm_inf(), b.map_or(1.0, |b| b.norm_inf()));
    Ok((0..s.n)
        .into_par_iter()
        .map(|j| {
            let x = s.eigenvector(j);
            let lambda = s.eigenvalues[j];
            let ax = sparse_matvec(&a_rows, &x);
            let bx = match &b_rows {
                Some(rows) => sparse_matvec(rows, &x),
                None => x.clone(),
            };
            let num = ax.iter().zip(&bx).fold(0.0f64, |acc, (p, q)| acc.max((p - lambda * q).abs()));
            let den = (a_norm + lambda.abs() * b_norm) * vec_inf(&x);
            let r = if num == 0.0 { 0.0 } else { num / den };
            if r.is_finite() {
                r
            } else {
                f64::INFINITY
            }
        })
        .collect())
}

fn pencil_log_det(a: &DenseMatrix, b: Option<&DenseMatrix>, lambda: f64) -> (f64, f64, bool) {
    let shifted = match b {
        Some(b) => a.sub_scaled(b, lambda),
        None => a.sub_scaled(&DenseMatrix::identity(a.n()), lambda),
    };
    match shifted {
        Ok(m) => {
            let lu = lu_factor(&m);
            let (sign, log) = lu.log_determinant();
            (sign, log, lu.is_singular())
        }
        // λ so large that A − λB overflows: treat as far from every eigenvalue
        Err(_) => (1.0, f64::INFINITY, false),
    }
}

/// Pencil determinant at each λ and whether it certifies λ as an eigenvalue.
///
/// λ_j is certified when the LU hits an exact zero pivot, or when
/// `|det(A − λ_j B)|` is at least [`DET_FACTOR`] smaller than at the
/// midpoints to the neighbouring distinct eigenvalues.
pub fn det_check(a: &DenseMatrix, b: Option<&DenseMatrix>, lambdas: &[f64]) -> Result<Vec<DetCheck>> {
    check_dims(a, b, a.n())?;
    let mut distinct: Vec<f64> = lambdas.iter().copied().filter(|l| l.is_finite()).collect();
    distinct.sort_by(f64::total_cmp);
    let scale = distinct.iter().fold(1.0f64, |acc, l| acc.max(l.abs()));
    distinct.dedup_by(|x, y| (*x - *y).abs() <= 1e-9 * scale);
    let gap = DET_FACTOR.ln();
    Ok(lambdas
        .par_iter()
        .map(|&lambda| {
            let (sign, log_abs, singular) = pencil_log_det(a, b, lambda);
            let lower = distinct.iter().rev().find(|&&d| d < lambda - 1e-9 * scale);
            let upper = distinct.iter().find(|&&d| d > lambda + 1e-9 * scale);
            let mut probes: Vec<f64> = [lower, upper].into_iter().flatten().map(|d| 0.5 * (d + lambda)).collect();
            if probes.is_empty() {
                let step = 1.0 + lambda.abs();
                probes = vec![lambda - step, lambda + step];
            }
            let probe_min = probes.iter().map(|&p| pencil_log_det(a, b, p).1).fold(f64::INFINITY, f64::min);
            let certified = lambda.is_finite() && (singular || log_abs + gap <= probe_min);
            DetCheck { lambda, sign, log_abs, singular, certified }
        })
        .collect())
}

/// Rank of the eigenvector matrix after scaling each column to unit max-norm.
pub fn independence_check(s: &Spectrum, rel_tol: f64) -> usize {
    let v = &s.eigenvectors;
    let n = v.n();
    let scales: Vec<f64> = (0..n)
        .map(|j| {
            let c = vec_inf(&v.column(j));
            if c > 0.0 {
                1.0 / c
            } else {
                0.0
            }
        })
        .collect();
    numerical_rank(&DenseMatrix::from_fn(n, |i, j| v.get(i, j) * scales[j]), rel_tol)
}

fn b_is_singular(b: &DenseMatrix) -> bool {
    let lu = lu_factor(b);
    let tiny = 1e-14 * b.max_abs();
    lu.is_singular() || lu.pivots().any(|p| p.abs() <= tiny)
}

/// Full certification of `s` against `A x = λ B x` (or `A x = λ x`).
///
/// `pass` requires every residual `≤ tol`, a full-rank eigenvector matrix
/// and, for the generalised problem, a nonsingular `B`.
pub fn relative_residual(
    a: &DenseMatrix,
    b: Option<&DenseMatrix>,
    s: &Spectrum,
    tol: f64,
) -> Result<VerificationReport> {
    let residuals = pair_residuals(a, b, s)?;
    let dets = if s.n <= DET_CHECK_MAX_N { Some(det_check(a, b, &s.eigenvalues)?) } else { None };
    let eigvec_rank = independence_check(s, RANK_TOL);
    let b_singular = b.is_some_and(b_is_singular);
    let per_pair: Vec<PairReport> = residuals
        .iter()
        .enumerate()
        .map(|(idx, &r)| {
            let mut flags = Vec::new();
            if r.is_nan() || r > tol {
                flags.push("residual_above_tol".to_string());
            }
            let det = dets.as_ref().map(|d| d[idx]);
            if let Some(d) = det {
                if d.singular {
                    flags.push("pencil_singular".to_string());
                } else if !d.certified {
                    flags.push("det_not_certified".to_string());
                }
            }
            PairReport {
                j: idx + 1,
                lambda: s.eigenvalues[idx],
                rel_residual: r,
                det_log_magnitude: det.map(|d| d.log_abs).filter(|v| v.is_finite()),
                flags,
            }
        })
        .collect();
    let max_rel_residual = residuals.iter().fold(0.0, |acc: f64, &r| acc.max(r));
    let pass = max_rel_residual <= tol && eigvec_rank == s.n && !b_singular;
    let mut warnings = s.warnings.clone();
    if b_singular {
        warnings.push("B is numerically singular".to_string());
    }
    Ok(VerificationReport {
        set_id: s.set_id,
        variant: s.variant,
        n: s.n,
        m: s.m,
        per_pair,
        max_rel_residual,
        eigvec_rank,
        b_singular,
        pass,
        tolerance_used: tol,
        warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub scan_points: usize,
    pub bisect_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { scan_points: 4096, bisect_tol: 1e-12 }
    }
}

/// Interval containing every real eigenvalue.
///
/// Standard problem: the Gershgorin hull. Generalised problem: `|λ| ≤ ‖B⁻¹A‖∞`.
/// Either way the half-width is doubled.
fn scan_interval(a: &DenseMatrix, b: Option<&DenseMatrix>) -> Result<(f64, f64)> {
    let n = a.n();
    let (lo, hi) = match b {
        None => (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let row = a.row(i);
            let off: f64 = row.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, v)| v.abs()).sum();
            (lo.min(row[i] - off), hi.max(row[i] + off))
        }),
        Some(b) => {
            let lu = lu_factor(b);
            if lu.is_singular() {
                return Err(Error::SingularMatrix);
            }
            let mut row_sums = vec![0.0; n];
            for k in 0..n {
                let col = lu.solve(&a.column(k))?;
                for (s, v) in row_sums.iter_mut().zip(col) {
                    *s += v.abs();
                }
            }
            let r = row_sums.into_iter().fold(0.0, f64::max);
            (-r, r)
        }
    };
    let centre = 0.5 * (lo + hi);
    let half = (0.5 * (hi - lo)).max(1e-6 * (1.0 + centre.abs()));
    Ok((centre - 2.0 * half, centre + 2.0 * half))
}

fn bisect(a: &DenseMatrix, b: Option<&DenseMatrix>, mut lo: f64, mut hi: f64, s_lo: f64, tol: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol * mid.abs().max(1.0) {
            return mid;
        }
        let (s, _, _) = pencil_log_det(a, b, mid);
        if s == 0.0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Every root of `det(A − λB)` revealed by a sign change on the scan grid,
/// refined by bisection and sorted ascending. May return fewer than `n`.
pub fn oracle_roots(a: &DenseMatrix, b: Option<&DenseMatrix>, cfg: OracleConfig) -> Result<Vec<f64>> {
    let n = a.n();
    check_dims(a, b, n)?;
    if n > ORACLE_MAX_N {
        return Err(Error::Usage(format!("oracle is limited to n <= {ORACLE_MAX_N}, got n = {n}")));
    }
    if cfg.scan_points < 2 {
        return Err(Error::Usage("oracle needs at least 2 scan points".into()));
    }
    let (lo, hi) = scan_interval(a, b)?;
    let step = (hi - lo) / (cfg.scan_points - 1) as f64;
    let grid: Vec<f64> = (0..cfg.scan_points).map(|i| lo + i as f64 * step).collect();
    let signs: Vec<f64> = grid.par_iter().map(|&l| pencil_log_det(a, b, l).0).collect();

    let mut exact = Vec::new();
    let mut brackets = Vec::new();
    for i in 0..grid.len() {
        if signs[i] == 0.0 {
            if i == 0 || signs[i - 1] != 0.0 {
                exact.push(grid[i]);
            }
        } else if i > 0 && signs[i - 1] != 0.0 && signs[i - 1] != signs[i] {
            brackets.push((grid[i - 1], grid[i], signs[i - 1]));
        }
    }
    let mut roots: Vec<f64> = brackets.par_iter().map(|&(l, h, s)| bisect(a, b, l, h, s, cfg.bisect_tol)).collect();
    roots.extend(exact);
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// All `n` eigenvalues via [`oracle_roots`], or `OracleIncomplete`.
pub fn oracle_spectrum(a: &DenseMatrix, b: Option<&DenseMatrix>, cfg: OracleConfig) -> Result<Vec<f64>> {
    let roots = oracle_roots(a, b, cfg)?;
    if roots.len() < a.n() {
        return Err(Error::OracleIncomplete { found: roots.len(), expected: a.n() });
    }
    Ok(roots)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Published,
    Rederived,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjudicationResult {
    pub set_id: SetId,
    pub published_max_residual: f64,
    pub rederived_max_residual: f64,
    pub winner: Verdict,
    pub cases: usize,
    pub seed: u64,
}

/// How random coefficients are drawn for adjudication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawRule {
    /// Admissible draws that separate the variants (`α1 ≠ α3` for set 4).
    Generic,
    /// Set 4 with `α3 = α1`, `β3 = β1 = 0`, where both variants coincide.
    CoincidentCoupling,
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.gen_range(lo..hi);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// A random admissible instance of `set` drawn from `rng`.
///
/// Generalised problems get diagonally dominant `B`; set 4 uses a
/// diagonal `B` so both variants stay real (see the crate README).
pub fn random_instance(rng: &mut ChaCha8Rng, set: SetId, n: usize, m: usize, rule: DrawRule) -> Instance {
    let dominant_band = |rng: &mut ChaCha8Rng, m: usize| {
        let off: Vec<f64> = (0..m).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let d = 2.0 * off.iter().map(|v: &f64| v.abs()).sum::<f64>() + rng.gen_range(0.5..2.0);
        std::iter::once(d).chain(off).collect::<Vec<f64>>()
    };
    match set {
        SetId::Set1 | SetId::Set2 | SetId::Set2Mixed => {
            let alpha: Vec<f64> = (0..=m).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let beta = dominant_band(rng, m);
            Instance::new(set, n, alpha).with_beta(beta).with_m(m)
        }
        SetId::Set3 => {
            let alpha = vec![rng.gen_range(-3.0..3.0), signed(rng, 0.2, 2.0), rng.gen_range(-3.0..3.0)];
            let b1 = rng.gen_range(-0.4..0.4);
            let beta = vec![rng.gen_range(1.0..2.0), b1, rng.gen_range(1.0..2.0)];
            Instance::new(set, n, alpha).with_beta(beta)
        }
        SetId::Set4 => {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let a1 = sign * rng.gen_range(0.2..2.0);
            let a3 = match rule {
                DrawRule::CoincidentCoupling => a1,
                DrawRule::Generic => loop {
                    let v: f64 = sign * rng.gen_range(0.2..2.0);
                    if (v - a1).abs() >= 0.1 {
                        break v;
                    }
                },
            };
            let alpha = vec![rng.gen_range(-3.0..3.0), a1, rng.gen_range(-3.0..3.0), a3];
            let beta = vec![rng.gen_range(0.5..2.0), 0.0, rng.gen_range(0.5..2.0), 0.0];
            Instance::new(set, n, alpha).with_beta(beta)
        }
        SetId::Set5 => {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let alpha = vec![
                rng.gen_range(-2.0..2.0),
                sign * rng.gen_range(0.2..2.0),
                rng.gen_range(-1.0..1.0),
                sign * rng.gen_range(0.2..2.0),
            ];
            Instance::new(set, n, alpha)
        }
        SetId::Set6 => {
            let rho = rng.gen_range(0.25..4.0);
            let alpha: Vec<f64> =
                (0..=m).map(|l| if l % 2 == 1 { signed(rng, 0.2, 2.0) } else { rng.gen_range(-2.0..2.0) }).collect();
            let hat = (1..=m).step_by(2).map(|l| rho * alpha[l]).collect();
            Instance::new(set, n, alpha).with_m(m).with_alpha_hat(hat)
        }
    }
}

fn max_residual(inst: &Instance, a: &DenseMatrix, b: Option<&DenseMatrix>) -> Result<f64> {
    let s = inst.spectrum()?;
    Ok(pair_residuals(a, b, &s)?.into_iter().fold(0.0, f64::max))
}

/// Decide between the printed and re-derived formula of set 4 or 2-mixed.
pub fn adjudicate(set: SetId, trials: usize, seed: u64) -> Result<AdjudicationResult> {
    adjudicate_with(set, trials, seed, DrawRule::Generic)
}

/// [`adjudicate`] with an explicit draw rule.
///
/// A draw is retried (up to 100 times) when either variant rejects it, so
/// every counted case has real spectra from both. The winner must beat the
/// other by more than [`TIE_FACTOR`]; when both certify at [`DEFAULT_TOL`]
/// the result is `Inconclusive`.
pub fn adjudicate_with(set: SetId, trials: usize, seed: u64, rule: DrawRule) -> Result<AdjudicationResult> {
    if !set.has_variants() {
        return Err(Error::Usage(format!("set {set} has no published/rederived variants to adjudicate")));
    }
    if trials == 0 {
        return Err(Error::Usage("adjudication needs trials >= 1".into()));
    }
    let sizes: Vec<usize> = match set {
        SetId::Set4 => vec![2, 4, 6, 8],
        _ => (2..=9).collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut published, mut rederived) = (0.0f64, 0.0f64);
    for _ in 0..trials {
        let mut accepted = false;
        for _ in 0..100 {
            let n = sizes[rng.gen_range(0..sizes.len())];
            let m = rng.gen_range(1..=3usize.min(n - 1));
            let inst = random_instance(&mut rng, set, n, m, rule);
            let (a, b) = inst.matrices()?;
            let p = max_residual(&inst.clone().with_variant(FormulaVariant::Published), &a, b.as_ref());
            let r = max_residual(&inst.with_variant(FormulaVariant::Rederived), &a, b.as_ref());
            match (p, r) {
                (Ok(p), Ok(r)) => {
                    published = published.max(p);
                    rederived = rederived.max(r);
                    accepted = true;
                    break;
                }
                (Err(e), _) | (_, Err(e)) if e.is_precondition() => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            }
        }
        if !accepted {
            return Err(Error::Usage(format!("could not draw an admissible set {set} instance")));
        }
    }
    let winner = if published.max(rederived) <= DEFAULT_TOL {
        Verdict::Inconclusive
    } else if published > TIE_FACTOR * rederived {
        Verdict::Rederived
    } else if rederived > TIE_FACTOR * published {
        Verdict::Published
    } else {
        Verdict::Inconclusive
    };
    Ok(AdjudicationResult {
        set_id: set,
        published_max_residual: published,
        rederived_max_residual: rederived,
        winner,
        cases: trials,
        seed,
    })
}
