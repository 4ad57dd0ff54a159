//! Closed-form eigenpairs for the structured families.
//!
//! Each generator returns eigenvalues in the order of their index `j`
//! (no sorting) together with the eigenvector matrix whose column `j` is
//! `x_j`, scaled with `C = 1` unless renormalised.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzFamily;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::structures::{
    antitranspose, build_g1, build_g2, build_g3, build_g4, build_hankel, build_toeplitz, AlternatingBandCoefficients,
    BandCoefficients, HankelKind,
};

/// Denominators at or below this magnitude are treated as zero.
pub const HARD_ZERO: f64 = 1e-300;
/// Relative magnitude below which a denominator is flagged as near zero.
pub const SOFT_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetId {
    #[serde(rename = "1")]
    Set1,
    #[serde(rename = "2")]
    Set2,
    #[serde(rename = "2m")]
    Set2Mixed,
    #[serde(rename = "3")]
    Set3,
    #[serde(rename = "4")]
    Set4,
    #[serde(rename = "5")]
    Set5,
    #[serde(rename = "6")]
    Set6,
}

impl SetId {
    pub const ALL: [SetId; 7] =
        [SetId::Set1, SetId::Set2, SetId::Set2Mixed, SetId::Set3, SetId::Set4, SetId::Set5, SetId::Set6];

    pub fn as_str(self) -> &'static str {
        match self {
            SetId::Set1 => "1",
            SetId::Set2 => "2",
            SetId::Set2Mixed => "2m",
            SetId::Set3 => "3",
            SetId::Set4 => "4",
            SetId::Set5 => "5",
            SetId::Set6 => "6",
        }
    }

    /// Generalised problem (`B` supplied) rather than standard.
    pub fn is_generalized(self) -> bool {
        !matches!(self, SetId::Set5 | SetId::Set6)
    }

    pub fn requires_even_n(self) -> bool {
        matches!(self, SetId::Set3 | SetId::Set4)
    }

    pub fn min_n(self) -> usize {
        match self {
            SetId::Set5 | SetId::Set6 => 4,
            _ => 2,
        }
    }

    /// Sets whose printed formula has a re-derived alternative.
    pub fn has_variants(self) -> bool {
        matches!(self, SetId::Set2Mixed | SetId::Set4)
    }
}

impl fmt::Display for SetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SetId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Usage(format!("unknown set '{s}' (expected 1, 2, 2m, 3, 4, 5, 6)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaVariant {
    /// The formula exactly as printed.
    Published,
    /// The formula re-derived from the row equations.
    Rederived,
}

impl fmt::Display for FormulaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaVariant::Published => "published",
            FormulaVariant::Rederived => "rederived",
        })
    }
}

impl FromStr for FormulaVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "published" => Ok(FormulaVariant::Published),
            "rederived" => Ok(FormulaVariant::Rederived),
            _ => Err(Error::Usage(format!("unknown variant '{s}' (expected published or rederived)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    RawC1,
    UnitTwoNorm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub set_id: SetId,
    pub variant: FormulaVariant,
    pub n: usize,
    pub m: usize,
    pub h: f64,
    pub ansatz: AnsatzFamily,
    pub eigenvalues: Vec<f64>,
    /// Column `j` holds `x_j`.
    pub eigenvectors: DenseMatrix,
    /// Odd/even entry amplitudes `(a, b)` for the alternating pentadiagonal families.
    pub parity_amplitudes: Option<(f64, f64)>,
    pub normalization: Normalization,
    /// Near-zero denominators encountered while generating.
    pub warnings: Vec<String>,
}

impl Spectrum {
    pub fn eigenvector(&self, j: usize) -> Vec<f64> {
        self.eigenvectors.column(j)
    }

    pub fn normalized(mut self, norm: Normalization) -> Self {
        if norm == self.normalization {
            return self;
        }
        let n = self.n;
        let scales: Vec<f64> = match norm {
            Normalization::UnitTwoNorm => {
                (0..n).map(|j| 1.0 / crate::linalg::norm2(&self.eigenvectors.column(j))).collect()
            }
            // C = 1 has no inverse once renormalised; keep the vectors as they are
            Normalization::RawC1 => vec![1.0; n],
        };
        self.eigenvectors = DenseMatrix::from_fn(n, |i, j| self.eigenvectors.get(i, j) * scales[j]);
        self.normalization = norm;
        self
    }
}

/// `a2·λ² + a1·λ + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticPencil {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

/// Real roots `(low, high)` via the cancellation-free form.
///
/// Slightly negative discriminants (within `1e-12` of the coefficient
/// scale) are rounded to a double root.
pub fn solve_quadratic(p: QuadraticPencil) -> Result<(f64, f64)> {
    let QuadraticPencil { a2, a1, a0 } = p;
    if a2.abs() <= HARD_ZERO {
        return Err(Error::ZeroCoefficient("leading coefficient of the quadratic pencil".into()));
    }
    let mut disc = a1 * a1 - 4.0 * a2 * a0;
    let scale = a1 * a1 + (4.0 * a2 * a0).abs();
    if disc < 0.0 {
        if disc < -SOFT_ZERO * scale {
            return Err(Error::NegativeDiscriminant { j: 0, disc });
        }
        disc = 0.0;
    }
    let sign = if a1 >= 0.0 { 1.0 } else { -1.0 };
    let q = -0.5 * (a1 + sign * disc.sqrt());
    let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a2, a0 / q) };
    Ok(if r1 <= r2 { (r1, r2) } else { (r2, r1) })
}

fn check_dims(n: usize, m: usize, min_n: usize) -> Result<()> {
    if n < min_n {
        return Err(Error::DimensionTooSmall { n, min: min_n });
    }
    if m < 1 || m > n - 1 {
        return Err(Error::BandTooWide { m, n, need: "1 <= m <= n-1" });
    }
    Ok(())
}

/// `ξ0 + 2 Σ ξ_l cos(lθ)`.
fn symbol(xi: &BandCoefficients, theta: f64) -> f64 {
    xi.values().iter().enumerate().skip(1).fold(xi.get(0), |acc, (l, v)| acc + 2.0 * v * (l as f64 * theta).cos())
}

fn symbol_scale(xi: &BandCoefficients) -> f64 {
    xi.get(0).abs() + 2.0 * xi.values().iter().skip(1).map(|v| v.abs()).sum::<f64>()
}

/// Ratio-of-symbols eigenvalues at angles `theta(j)`, j = 1..n.
fn ratio_eigenvalues(
    alpha: &BandCoefficients,
    beta: &BandCoefficients,
    n: usize,
    theta: impl Fn(usize) -> f64,
    warnings: &mut Vec<String>,
) -> Result<Vec<f64>> {
    let scale = symbol_scale(beta);
    (1..=n)
        .map(|j| {
            let th = theta(j);
            let den = symbol(beta, th);
            if den.abs() <= HARD_ZERO {
                return Err(Error::ZeroDenominator { j, den });
            }
            if den.abs() <= SOFT_ZERO * scale {
                warnings.push(format!("near-zero denominator {den:e} at j = {j}"));
            }
            Ok(symbol(alpha, th) / den)
        })
        .collect()
}

fn ansatz_vectors(ansatz: &AnsatzFamily, n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, |k, j| ansatz.value(n, j + 1, k + 1))
}

fn corner_spectrum(
    set_id: SetId,
    variant: FormulaVariant,
    ansatz: AnsatzFamily,
    alpha: &BandCoefficients,
    beta: &BandCoefficients,
    n: usize,
    m: usize,
) -> Result<Spectrum> {
    check_dims(n, m, 2)?;
    let alpha = alpha.padded(m)?;
    let beta = beta.padded(m)?;
    let mut warnings = Vec::new();
    let h = ansatz.h(n);
    let eigenvalues = match variant {
        FormulaVariant::Published => {
            ratio_eigenvalues(&alpha, &beta, n, |j| j as f64 * std::f64::consts::PI * h, &mut warnings)?
        }
        FormulaVariant::Rederived => ratio_eigenvalues(&alpha, &beta, n, |j| ansatz.frequency(n, j), &mut warnings)?,
    };
    Ok(Spectrum {
        set_id,
        variant,
        n,
        m,
        h,
        ansatz,
        eigenvalues,
        eigenvectors: ansatz_vectors(&ansatz, n),
        parity_amplitudes: None,
        normalization: Normalization::RawC1,
        warnings,
    })
}

/// `A = T(α) − H(α)`, `B = T(β) − H(β)` with the set-1 corner correction.
pub fn eigs_set1(alpha: &BandCoefficients, beta: &BandCoefficients, n: usize, m: usize) -> Result<Spectrum> {
    corner_spectrum(SetId::Set1, FormulaVariant::Published, AnsatzFamily::CORNER, alpha, beta, n, m)
}

/// Set 1 flipped along the anti-diagonal: same eigenvalues, reversed vectors.
pub fn eigs_set2(alpha: &BandCoefficients, beta: &BandCoefficients, n: usize, m: usize) -> Result<Spectrum> {
    corner_spectrum(SetId::Set2, FormulaVariant::Published, AnsatzFamily::CORNER_FLIPPED, alpha, beta, n, m)
}

/// Mixed Dirichlet–Neumann corners, `A = T(α) + H(α)`.
///
/// The printed eigenvalue uses the angle `jπh`; the half-shifted
/// eigenvector `sin((j − 1/2)π(k − 1/2)h)` only satisfies the row
/// equations at `(j − 1/2)πh`, which is what `Rederived` uses.
pub fn eigs_set2_mixed(
    alpha: &BandCoefficients,
    beta: &BandCoefficients,
    n: usize,
    m: usize,
    variant: FormulaVariant,
) -> Result<Spectrum> {
    corner_spectrum(SetId::Set2Mixed, variant, AnsatzFamily::MIXED, alpha, beta, n, m)
}

/// Alternating tridiagonal pencils (`A = G(α)`, `B = G(β)`) reduced to a
/// quadratic in λ by eliminating the even unknowns.
///
/// `alpha`/`beta` are `(ξ0, ξ1, ξ2, ξ3)`: diagonal on odd rows, coupling on
/// odd rows, diagonal on even rows, coupling on even rows.
fn alternating_tridiagonal(
    set_id: SetId,
    variant: FormulaVariant,
    alpha: [f64; 4],
    beta: [f64; 4],
    n: usize,
) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension { n });
    }
    let [a0, a1, a2, a3] = alpha;
    let [b0, b1, b2, b3] = beta;
    if (b0 * b2).abs() <= HARD_ZERO {
        return Err(Error::ZeroCoefficient("beta0 * beta2 must be nonzero".into()));
    }
    let half = n / 2;
    let ansatz = AnsatzFamily::ODD_HALF;
    let h = ansatz.h(n);
    let mut eigenvalues = Vec::with_capacity(n);
    let mut vectors = DenseMatrix::zeros(n);
    let mut warnings = Vec::new();
    for j in 1..=half {
        let cos = (j as f64 * std::f64::consts::PI * h).cos();
        let c = 1.0 + cos;
        let pencil = match variant {
            FormulaVariant::Published => {
                let (b, d) = (a1 - b1, a3 - b3);
                QuadraticPencil { a2: b0 * b2, a1: -(a0 * b2 + a2 * b0), a0: a0 * a2 - 2.0 * b * b - 2.0 * b * d * cos }
            }
            // coupling (α1 − λβ1)(α3 − λβ3) is quadratic in λ
            FormulaVariant::Rederived => QuadraticPencil {
                a2: b0 * b2 - 2.0 * c * b1 * b3,
                a1: -(a0 * b2 + a2 * b0) + 2.0 * c * (a1 * b3 + a3 * b1),
                a0: a0 * a2 - 2.0 * c * a1 * a3,
            },
        };
        let (lo, hi) = solve_quadratic(pencil).map_err(|e| match e {
            Error::NegativeDiscriminant { disc, .. } => Error::NegativeDiscriminant { j, disc },
            other => other,
        })?;
        for (slot, lambda) in [(2 * j - 2, hi), (2 * j - 1, lo)] {
            let odd: Vec<f64> = (1..=half).map(|k| ansatz.value(n, j, k)).collect();
            let num = match variant {
                FormulaVariant::Published => a3 - b3,
                FormulaVariant::Rederived => a3 - lambda * b3,
            };
            let den = b2 * lambda - a2;
            let den_scale = (b2 * lambda).abs() + a2.abs();
            let num_scale = a3.abs() + (lambda * b3).abs();
            let decoupled = den.abs() <= SOFT_ZERO * den_scale && num.abs() <= SOFT_ZERO * num_scale.max(1.0);
            if decoupled {
                // even rows decouple: the mode lives on the even entries
                for k in 1..=half {
                    vectors.set(2 * k - 1, slot, odd[k - 1]);
                }
            } else {
                if den.abs() <= HARD_ZERO.max(SOFT_ZERO * SOFT_ZERO * den_scale) {
                    return Err(Error::DegenerateEigenvector { j, den });
                }
                if den.abs() <= SOFT_ZERO * den_scale {
                    warnings.push(format!("near-zero even-entry denominator {den:e} at j = {j}"));
                }
                let coupling = num / den;
                for k in 1..=half {
                    let next = if k < half { odd[k] } else { 0.0 };
                    vectors.set(2 * k - 2, slot, odd[k - 1]);
                    vectors.set(2 * k - 1, slot, coupling * (odd[k - 1] + next));
                }
            }
            eigenvalues.push(lambda);
        }
    }
    Ok(Spectrum {
        set_id,
        variant,
        n,
        m: 1,
        h,
        ansatz,
        eigenvalues,
        eigenvectors: vectors,
        parity_amplitudes: None,
        normalization: Normalization::RawC1,
        warnings,
    })
}

/// Symmetric alternating tridiagonal pencil `G1(α)`, `G1(β)`, even `n`.
///
/// Pairs `λ_{2j−1} ≥ λ_{2j}` solve
/// `(β0β2 − 2cβ1²)λ² − (α0β2 + α2β0 − 4cα1β1)λ + α0α2 − 2cα1² = 0`,
/// `c = 1 + cos(jπh)`, `h = 2/(n+1)`; with `β1 = 0` this is the classical
/// `β0β2λ² − (α0β2 + α2β0)λ + α0α2 − 2α1²(1 + cos(jπh))`.
pub fn eigs_set3(alpha: [f64; 3], beta: [f64; 3], n: usize) -> Result<Spectrum> {
    let [a0, a1, a2] = alpha;
    let [b0, b1, b2] = beta;
    alternating_tridiagonal(SetId::Set3, FormulaVariant::Rederived, [a0, a1, a2, a1], [b0, b1, b2, b1], n)
}

/// Non-symmetric alternating tridiagonal pencil `G2(α)`, `G2(β)`, even `n`.
pub fn eigs_set4(alpha: [f64; 4], beta: [f64; 4], n: usize, variant: FormulaVariant) -> Result<Spectrum> {
    alternating_tridiagonal(SetId::Set4, variant, alpha, beta, n)
}

fn parity_scaled_sines(n: usize, amplitudes: (f64, f64)) -> DenseMatrix {
    let ansatz = AnsatzFamily::DIRICHLET;
    DenseMatrix::from_fn(n, |k, j| {
        let amp = if k % 2 == 0 { amplitudes.0 } else { amplitudes.1 };
        amp * ansatz.value(n, j + 1, k + 1)
    })
}

/// Alternating pentadiagonal `G3(α)`, standard problem.
///
/// Requires `α1·α3 > 0`. With `b/a = √(α3/α1)` eigenvector `j` pairs with
/// `λ_j = α0 + 2·sgn(α1)·√(α1α3)·cos(jπh) + 2α2·cos(2jπh)`, `h = 1/(n+1)`.
pub fn eigs_set5(alpha: [f64; 4], n: usize) -> Result<Spectrum> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    let [a0, a1, a2, a3] = alpha;
    if a1 == 0.0 || a1 * a3 <= 0.0 {
        return Err(Error::SignCondition(format!("alpha1 * alpha3 > 0 required, got {a1} * {a3}")));
    }
    let ratio = (a3 / a1).sqrt();
    let ansatz = AnsatzFamily::DIRICHLET;
    let h = ansatz.h(n);
    let coupling = a1 * ratio;
    let eigenvalues = (1..=n)
        .map(|j| {
            let th = ansatz.frequency(n, j);
            a0 + 2.0 * coupling * th.cos() + 2.0 * a2 * (2.0 * th).cos()
        })
        .collect();
    Ok(Spectrum {
        set_id: SetId::Set5,
        variant: FormulaVariant::Rederived,
        n,
        m: 2,
        h,
        ansatz,
        eigenvalues,
        eigenvectors: parity_scaled_sines(n, (1.0, ratio)),
        parity_amplitudes: Some((1.0, ratio)),
        normalization: Normalization::RawC1,
        warnings: Vec::new(),
    })
}

/// Generalised alternating band `G4(α, α̂)`, standard problem.
///
/// With common ratio `ρ = α̂_{2l−1}/α_{2l−1} > 0` and `b/a = √ρ`:
/// `λ_j = α0 + 2Σ α_{2l−1}√ρ·cos((2l−1)θ) + 2Σ α_{2l}·cos(2lθ)`, `θ = jπ/(n+1)`.
pub fn eigs_set6(coeffs: &AlternatingBandCoefficients, n: usize) -> Result<Spectrum> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    let m = coeffs.m();
    if m < 2 || m > n - 2 {
        return Err(Error::BandTooWide { m, n, need: "2 <= m <= n-2" });
    }
    let rho = coeffs.common_ratio(1e-12)?;
    if rho <= 0.0 {
        return Err(Error::SignCondition(format!("common ratio alpha_hat/alpha = {rho} must be positive")));
    }
    let ratio = rho.sqrt();
    let ansatz = AnsatzFamily::DIRICHLET;
    let h = ansatz.h(n);
    let base = coeffs.base();
    let eigenvalues = (1..=n)
        .map(|j| {
            let th = ansatz.frequency(n, j);
            (1..=m).fold(base.get(0), |acc, l| {
                let w = if l % 2 == 1 { ratio } else { 1.0 };
                acc + 2.0 * base.get(l) * w * (l as f64 * th).cos()
            })
        })
        .collect();
    Ok(Spectrum {
        set_id: SetId::Set6,
        variant: FormulaVariant::Rederived,
        n,
        m,
        h,
        ansatz,
        eigenvalues,
        eigenvectors: parity_scaled_sines(n, (1.0, ratio)),
        parity_amplitudes: Some((1.0, ratio)),
        normalization: Normalization::RawC1,
        warnings: Vec::new(),
    })
}

/// One concrete family member: set, size and coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub set: SetId,
    pub n: usize,
    /// Bandwidth for sets 1, 2, 2m and 6; inferred from `alpha` when absent.
    pub m: Option<usize>,
    pub alpha: Vec<f64>,
    pub beta: Option<Vec<f64>>,
    /// `α̂_1, α̂_3, …` for set 6; defaults to the matching `α`.
    pub alpha_hat: Option<Vec<f64>>,
    pub variant: FormulaVariant,
}

impl Instance {
    pub fn new(set: SetId, n: usize, alpha: Vec<f64>) -> Self {
        Self { set, n, m: None, alpha, beta: None, alpha_hat: None, variant: FormulaVariant::Rederived }
    }

    pub fn with_beta(mut self, beta: Vec<f64>) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_alpha_hat(mut self, hat: Vec<f64>) -> Self {
        self.alpha_hat = Some(hat);
        self
    }

    pub fn with_variant(mut self, variant: FormulaVariant) -> Self {
        self.variant = variant;
        self
    }

    /// Bandwidth of `A`.
    pub fn bandwidth(&self) -> usize {
        match self.set {
            SetId::Set1 | SetId::Set2 | SetId::Set2Mixed | SetId::Set6 => {
                self.m.unwrap_or(self.alpha.len().saturating_sub(1))
            }
            SetId::Set3 | SetId::Set4 => 1,
            SetId::Set5 => 2,
        }
    }

    fn fixed<const N: usize>(v: &[f64], what: &str) -> Result<[f64; N]> {
        v.try_into()
            .map_err(|_| Error::Usage(format!("{what} needs exactly {N} comma-separated values, got {}", v.len())))
    }

    fn band(v: &[f64]) -> Result<BandCoefficients> {
        BandCoefficients::new(v.to_vec())
    }

    fn beta_required(&self) -> Result<&[f64]> {
        self.beta
            .as_deref()
            .ok_or_else(|| Error::Usage(format!("set {} is a generalised problem and requires beta", self.set)))
    }

    /// Shape checks that do not depend on the closed form.
    pub fn validate(&self) -> Result<()> {
        if self.set.is_generalized() {
            self.beta_required()?;
        } else if self.beta.is_some() {
            return Err(Error::Usage(format!("set {} is a standard problem and does not take beta", self.set)));
        }
        if self.alpha_hat.is_some() && self.set != SetId::Set6 {
            return Err(Error::Usage(format!("alpha-hat only applies to set 6, not set {}", self.set)));
        }
        if self.alpha.iter().chain(self.beta.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("coefficients"));
        }
        if self.set.requires_even_n() && self.n % 2 == 1 {
            return Err(Error::OddDimension { n: self.n });
        }
        if self.n < self.set.min_n() {
            return Err(Error::DimensionTooSmall { n: self.n, min: self.set.min_n() });
        }
        match self.set {
            SetId::Set3 => {
                Self::fixed::<3>(&self.alpha, "alpha")?;
                Self::fixed::<3>(self.beta_required()?, "beta")?;
            }
            SetId::Set4 => {
                Self::fixed::<4>(&self.alpha, "alpha")?;
                Self::fixed::<4>(self.beta_required()?, "beta")?;
            }
            SetId::Set5 => {
                Self::fixed::<4>(&self.alpha, "alpha")?;
            }
            SetId::Set6 => {
                let m = self.bandwidth();
                if m < 2 || m + 2 > self.n {
                    return Err(Error::BandTooWide { m, n: self.n, need: "2 <= m <= n-2" });
                }
                self.alternating()?;
            }
            SetId::Set1 | SetId::Set2 | SetId::Set2Mixed => {
                let m = self.bandwidth();
                if m < 1 || m + 1 > self.n {
                    return Err(Error::BandTooWide { m, n: self.n, need: "1 <= m <= n-1" });
                }
                Self::band(&self.alpha)?.padded(m)?;
                Self::band(self.beta_required()?)?.padded(m)?;
            }
        }
        Ok(())
    }

    fn alternating(&self) -> Result<AlternatingBandCoefficients> {
        let base = Self::band(&self.alpha)?.padded(self.bandwidth())?;
        match &self.alpha_hat {
            Some(hat) => AlternatingBandCoefficients::new(base, hat.clone()),
            None => Ok(AlternatingBandCoefficients::uniform(base)),
        }
    }

    /// `(A, B)`; `B` is `None` for the standard problems.
    pub fn matrices(&self) -> Result<(DenseMatrix, Option<DenseMatrix>)> {
        self.validate()?;
        let n = self.n;
        let corner = |coeffs: &[f64], kind: HankelKind, sign: f64, flip: bool| -> Result<DenseMatrix> {
            let xi = Self::band(coeffs)?.padded(self.bandwidth())?;
            let t = build_toeplitz(&xi, n)?;
            let mut hk = build_hankel(kind, &xi, n)?;
            if flip {
                hk = antitranspose(&hk);
            }
            t.sub_scaled(&hk, -sign)
        };
        Ok(match self.set {
            SetId::Set1 | SetId::Set2 => {
                let flip = self.set == SetId::Set2;
                let a = corner(&self.alpha, HankelKind::CornerSet1, -1.0, flip)?;
                let b = corner(self.beta_required()?, HankelKind::CornerSet1, -1.0, flip)?;
                (a, Some(b))
            }
            SetId::Set2Mixed => {
                let a = corner(&self.alpha, HankelKind::MixedDirichletNeumann, 1.0, false)?;
                let b = corner(self.beta_required()?, HankelKind::MixedDirichletNeumann, 1.0, false)?;
                (a, Some(b))
            }
            SetId::Set3 => {
                let a = build_g1(Self::fixed(&self.alpha, "alpha")?, n)?;
                let b = build_g1(Self::fixed(self.beta_required()?, "beta")?, n)?;
                (a, Some(b))
            }
            SetId::Set4 => {
                let a = build_g2(Self::fixed(&self.alpha, "alpha")?, n)?;
                let b = build_g2(Self::fixed(self.beta_required()?, "beta")?, n)?;
                (a, Some(b))
            }
            SetId::Set5 => (build_g3(Self::fixed(&self.alpha, "alpha")?, n)?, None),
            SetId::Set6 => (build_g4(&self.alternating()?, n)?, None),
        })
    }

    /// Closed-form eigenpairs of this instance.
    pub fn spectrum(&self) -> Result<Spectrum> {
        self.validate()?;
        let n = self.n;
        match self.set {
            SetId::Set1 | SetId::Set2 | SetId::Set2Mixed => {
                let alpha = Self::band(&self.alpha)?;
                let beta = Self::band(self.beta_required()?)?;
                let m = self.bandwidth();
                match self.set {
                    SetId::Set1 => eigs_set1(&alpha, &beta, n, m),
                    SetId::Set2 => eigs_set2(&alpha, &beta, n, m),
                    _ => eigs_set2_mixed(&alpha, &beta, n, m, self.variant),
                }
            }
            SetId::Set3 => {
                eigs_set3(Self::fixed(&self.alpha, "alpha")?, Self::fixed(self.beta_required()?, "beta")?, n)
            }
            SetId::Set4 => eigs_set4(
                Self::fixed(&self.alpha, "alpha")?,
                Self::fixed(self.beta_required()?, "beta")?,
                n,
                self.variant,
            ),
            SetId::Set5 => eigs_set5(Self::fixed(&self.alpha, "alpha")?, n),
            SetId::Set6 => eigs_set6(&self.alternating()?, n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matvec, norm_inf};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn band(v: &[f64]) -> BandCoefficients {
        BandCoefficients::new(v.to_vec()).unwrap()
    }

    /// max_j ‖A x − λ B x‖∞ / ((‖A‖∞ + |λ|‖B‖∞)‖x‖∞), computed from scratch.
    fn residual(a: &DenseMatrix, b: Option<&DenseMatrix>, s: &Spectrum) -> f64 {
        let id = DenseMatrix::identity(a.n());
        let b = b.unwrap_or(&id);
        (0..s.n)
            .map(|j| {
                let x = s.eigenvector(j);
                let ax = matvec(a, &x).unwrap();
                let bx = matvec(b, &x).unwrap();
                let lam = s.eigenvalues[j];
                let r: Vec<f64> = ax.iter().zip(&bx).map(|(p, q)| p - lam * q).collect();
                norm_inf(&r) / ((a.norm_inf() + lam.abs() * b.norm_inf()) * norm_inf(&x))
            })
            .fold(0.0, f64::max)
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    fn assert_close(got: &[f64], want: &[f64], tol: f64) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert_abs_diff_eq!(*g, *w, epsilon = tol);
        }
    }

    fn check(inst: &Instance) -> (Spectrum, f64) {
        let (a, b) = inst.matrices().unwrap();
        let s = inst.spectrum().unwrap();
        let r = residual(&a, b.as_ref(), &s);
        (s, r)
    }

    #[test]
    fn quadratic_examples() {
        let (lo, hi) = solve_quadratic(QuadraticPencil { a2: 1.0, a1: -5.0, a0: 5.0 }).unwrap();
        assert_abs_diff_eq!(lo, (5.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, (5.0 + 5f64.sqrt()) / 2.0, epsilon = 1e-15);
        for r in [lo, hi] {
            assert_abs_diff_eq!(r * r - 5.0 * r + 5.0, 0.0, epsilon = 1e-14);
        }
        assert_eq!(solve_quadratic(QuadraticPencil { a2: 1.0, a1: -2.0, a0: 1.0 }).unwrap(), (1.0, 1.0));
        assert!(matches!(
            solve_quadratic(QuadraticPencil { a2: 1.0, a1: 0.0, a0: 1.0 }),
            Err(Error::NegativeDiscriminant { .. })
        ));
        assert!(matches!(
            solve_quadratic(QuadraticPencil { a2: 0.0, a1: 1.0, a0: 1.0 }),
            Err(Error::ZeroCoefficient(_))
        ));
        assert_eq!(solve_quadratic(QuadraticPencil { a2: 2.0, a1: 0.0, a0: 0.0 }).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn quadratic_avoids_cancellation() {
        let (lo, hi) = solve_quadratic(QuadraticPencil { a2: 1.0, a1: -1e8, a0: 1.0 }).unwrap();
        assert_abs_diff_eq!(lo, 1e-8, epsilon = 1e-22);
        assert_abs_diff_eq!(hi, 1e8, epsilon = 1e-6);
    }

    #[test]
    fn set1_examples() {
        // characteristic polynomial of [[3,-1],[-1,2]]: λ² − 5λ + 5
        let s = eigs_set1(&band(&[2.0, -1.0]), &band(&[1.0]), 2, 1).unwrap();
        assert_close(&sorted(s.eigenvalues.clone()), &[(5.0 - 5f64.sqrt()) / 2.0, (5.0 + 5f64.sqrt()) / 2.0], 1e-12);

        let s = eigs_set1(&band(&[3.25]), &band(&[1.0]), 5, 2).unwrap();
        assert!(s.eigenvalues.iter().all(|l| (l - 3.25).abs() < 1e-15));

        let inst = Instance::new(SetId::Set1, 6, vec![2.0, -1.0]).with_beta(vec![4.0, 1.0]);
        let (s, r) = check(&inst);
        let h = 2.0 / 13.0;
        for (j, l) in s.eigenvalues.iter().enumerate() {
            let c = ((j + 1) as f64 * PI * h).cos();
            assert_abs_diff_eq!(*l, (2.0 - 2.0 * c) / (4.0 + 2.0 * c), epsilon = 1e-15);
        }
        assert!(r <= 1e-12, "residual {r}");
    }

    #[test]
    fn set1_rejects_bad_band() {
        assert!(matches!(eigs_set1(&band(&[1.0, 1.0, 1.0]), &band(&[1.0]), 2, 2), Err(Error::BandTooWide { .. })));
        assert!(matches!(eigs_set1(&band(&[1.0, 1.0]), &band(&[1.0]), 4, 0), Err(Error::BandTooWide { .. })));
        // β symbol 1 + 2·(−1/2)cos(θ) never vanishes exactly, but 0 + 0 does
        assert!(matches!(eigs_set1(&band(&[1.0, 1.0]), &band(&[0.0]), 3, 1), Err(Error::ZeroDenominator { j: 1, .. })));
    }

    #[test]
    fn set2_mirrors_set1() {
        let (alpha, beta) = (band(&[3.0, -1.0, 0.3]), band(&[2.0, 0.4]));
        let s1 = eigs_set1(&alpha, &beta, 7, 2).unwrap();
        let s2 = eigs_set2(&alpha, &beta, 7, 2).unwrap();
        assert_eq!(s1.eigenvalues, s2.eigenvalues);
        for j in 0..7 {
            let (x1, mut x2) = (s1.eigenvector(j), s2.eigenvector(j));
            x2.reverse();
            assert_close(&x1, &x2, 1e-14);
        }
        let inst = Instance::new(SetId::Set2, 2, vec![2.0, -1.0]).with_beta(vec![1.0]);
        let (s, r) = check(&inst);
        assert_close(&sorted(s.eigenvalues), &[(5.0 - 5f64.sqrt()) / 2.0, (5.0 + 5f64.sqrt()) / 2.0], 1e-12);
        assert!(r < 1e-14);
    }

    #[test]
    fn set2_mixed_variants() {
        // A = [[3,-1],[-1,1]]: λ² − 4λ + 2
        let base = Instance::new(SetId::Set2Mixed, 2, vec![2.0, -1.0]).with_beta(vec![1.0]);
        let (s, r) = check(&base);
        assert_close(&sorted(s.eigenvalues), &[2.0 - 2f64.sqrt(), 2.0 + 2f64.sqrt()], 1e-12);
        assert!(r <= 1e-12);

        let (s, r) = check(&base.clone().with_variant(FormulaVariant::Published));
        assert_close(&s.eigenvalues, &[2.0, 4.0], 1e-12);
        assert!(r > 1e-2, "published residual {r}");

        for v in [FormulaVariant::Published, FormulaVariant::Rederived] {
            let s = eigs_set2_mixed(&band(&[1.5]), &band(&[1.0]), 4, 1, v).unwrap();
            assert!(s.eigenvalues.iter().all(|l| (l - 1.5).abs() < 1e-15));
        }
    }

    #[test]
    fn set3_examples() {
        // [[2,1],[1,3]]: λ² − 5λ + 5
        let s = eigs_set3([2.0, 1.0, 3.0], [1.0, 0.0, 1.0], 2).unwrap();
        assert_close(&sorted(s.eigenvalues.clone()), &[(5.0 - 5f64.sqrt()) / 2.0, (5.0 + 5f64.sqrt()) / 2.0], 1e-12);

        let inst = Instance::new(SetId::Set3, 6, vec![2.0, 1.0, 3.0]).with_beta(vec![1.0, 0.0, 1.0]);
        let (_, r) = check(&inst);
        assert!(r <= 1e-12, "residual {r}");

        // decoupled: diagonal pencil, roots α0 and α2 each n/2 times
        let inst = Instance::new(SetId::Set3, 6, vec![2.0, 0.0, 5.0]).with_beta(vec![1.0, 0.0, 1.0]);
        let (s, r) = check(&inst);
        assert_eq!(sorted(s.eigenvalues.clone()), vec![2.0, 2.0, 2.0, 5.0, 5.0, 5.0]);
        assert!(r == 0.0);
        assert_eq!(crate::linalg::numerical_rank(&s.eigenvectors, 1e-8), 6);
    }

    #[test]
    fn set3_general_mass_matrix() {
        let inst = Instance::new(SetId::Set3, 8, vec![2.0, -1.0, 3.0]).with_beta(vec![4.0, 0.5, 3.0]);
        let (_, r) = check(&inst);
        assert!(r <= 1e-12, "residual {r}");
    }

    #[test]
    fn set3_errors() {
        assert!(matches!(eigs_set3([1.0; 3], [1.0; 3], 3), Err(Error::OddDimension { .. })));
        assert!(matches!(eigs_set3([1.0; 3], [0.0, 0.0, 1.0], 4), Err(Error::ZeroCoefficient(_))));
    }

    #[test]
    fn set4_variants() {
        // [[2,1],[2,3]]: λ² − 5λ + 4
        let base = Instance::new(SetId::Set4, 2, vec![2.0, 1.0, 3.0, 2.0]).with_beta(vec![1.0, 0.0, 1.0, 0.0]);
        let (s, r) = check(&base);
        assert_close(&sorted(s.eigenvalues), &[1.0, 4.0], 1e-12);
        assert!(r <= 1e-12);
        let (s, r) = check(&base.clone().with_variant(FormulaVariant::Published));
        assert_close(&sorted(s.eigenvalues), &[2.0, 3.0], 1e-12);
        assert!(r >= 1e-2);

        // α3 = α1, β3 = β1 (β1 = 0): variants coincide with set 3
        let a = [2.0, 0.7, 3.0, 0.7];
        let b = [1.5, 0.0, 2.0, 0.0];
        let p = eigs_set4(a, b, 6, FormulaVariant::Published).unwrap();
        let q = eigs_set4(a, b, 6, FormulaVariant::Rederived).unwrap();
        let s3 = eigs_set3([2.0, 0.7, 3.0], [1.5, 0.0, 2.0], 6).unwrap();
        assert_close(&p.eigenvalues, &q.eigenvalues, 1e-13);
        assert_close(&q.eigenvalues, &s3.eigenvalues, 1e-13);
    }

    #[test]
    fn set5_examples() {
        let s = eigs_set5([2.0, -1.0, 0.0, -1.0], 9).unwrap();
        for (j, l) in s.eigenvalues.iter().enumerate() {
            assert_abs_diff_eq!(*l, 2.0 - 2.0 * ((j + 1) as f64 * PI / 10.0).cos(), epsilon = 1e-12);
        }
        let (s, r) = check(&Instance::new(SetId::Set5, 4, vec![0.0, 1.0, 0.0, 4.0]));
        let c1 = 4.0 * (PI / 5.0).cos();
        let c2 = 4.0 * (2.0 * PI / 5.0).cos();
        assert_close(&s.eigenvalues, &[c1, c2, -c2, -c1], 1e-12);
        assert_eq!(s.parity_amplitudes, Some((1.0, 2.0)));
        assert!(r < 1e-14);
        assert!(matches!(eigs_set5([1.0, 0.0, 0.0, 0.0], 5), Err(Error::SignCondition(_))));
        assert!(matches!(eigs_set5([1.0, 1.0, 0.0, -1.0], 5), Err(Error::SignCondition(_))));
        assert!(matches!(eigs_set5([1.0, 1.0, 0.0, 1.0], 3), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn set5_negative_couplings_pair_correctly() {
        for n in 4..=9 {
            let (_, r) = check(&Instance::new(SetId::Set5, n, vec![1.0, -0.5, 0.3, -2.0]));
            assert!(r < 1e-13, "n={n} r={r}");
        }
    }

    #[test]
    fn set6_examples() {
        let uniform = Instance::new(SetId::Set6, 7, vec![1.0, -0.4, 0.3]);
        let s = uniform.spectrum().unwrap();
        for (j, l) in s.eigenvalues.iter().enumerate() {
            let th = (j + 1) as f64 * PI / 8.0;
            assert_abs_diff_eq!(*l, 1.0 - 0.8 * th.cos() + 0.6 * (2.0 * th).cos(), epsilon = 1e-14);
        }

        let s6 = Instance::new(SetId::Set6, 4, vec![0.0, 1.0, 0.0]).with_alpha_hat(vec![4.0]).spectrum().unwrap();
        let s5 = eigs_set5([0.0, 1.0, 0.0, 4.0], 4).unwrap();
        assert_close(&s6.eigenvalues, &s5.eigenvalues, 1e-15);
        assert_eq!(s6.eigenvectors, s5.eigenvectors);

        let inst = Instance::new(SetId::Set6, 8, vec![2.0, -1.0, 0.2, -0.1]).with_alpha_hat(vec![-2.0, -0.2]);
        let (s, r) = check(&inst);
        assert_eq!(s.parity_amplitudes.unwrap().1, 2f64.sqrt());
        assert!(r <= 1e-10, "residual {r}");
    }

    #[test]
    fn set6_errors() {
        let bad = Instance::new(SetId::Set6, 8, vec![2.0, -1.0, 0.2, -0.1]).with_alpha_hat(vec![-2.0, -0.3]);
        assert!(matches!(bad.spectrum(), Err(Error::RatioConstraintViolated(_))));
        let neg = Instance::new(SetId::Set6, 8, vec![2.0, -1.0, 0.2]).with_alpha_hat(vec![1.0]);
        assert!(matches!(neg.spectrum(), Err(Error::SignCondition(_))));
        let wide = Instance::new(SetId::Set6, 4, vec![2.0, -1.0, 0.2, 0.1]);
        assert!(matches!(wide.spectrum(), Err(Error::BandTooWide { .. })));
    }

    #[test]
    fn instance_beta_rules() {
        let no_beta = Instance::new(SetId::Set1, 4, vec![2.0, -1.0]);
        assert!(matches!(no_beta.validate(), Err(Error::Usage(_))));
        let extra = Instance::new(SetId::Set5, 4, vec![0.0, 1.0, 0.0, 4.0]).with_beta(vec![1.0]);
        assert!(matches!(extra.validate(), Err(Error::Usage(_))));
        let short = Instance::new(SetId::Set4, 4, vec![0.0, 1.0, 0.0]).with_beta(vec![1.0, 0.0, 1.0, 0.0]);
        assert!(matches!(short.validate(), Err(Error::Usage(_))));
    }

    #[test]
    fn unit_norm_columns() {
        let s = eigs_set1(&band(&[2.0, -1.0]), &band(&[1.0]), 5, 1).unwrap().normalized(Normalization::UnitTwoNorm);
        for j in 0..5 {
            assert_abs_diff_eq!(crate::linalg::norm2(&s.eigenvector(j)), 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn set_id_round_trip() {
        for id in SetId::ALL {
            assert_eq!(id.as_str().parse::<SetId>().unwrap(), id);
        }
        assert!("7".parse::<SetId>().is_err());
    }
}
