//! Constructors for the structured matrix families.
//!
//! Boundary corrections are never tabulated per `(m, n)`: the corner
//! families are produced by folding a per-row stencil back into range with
//! the reflection rule of the matching eigenvector ansatz (see
//! [`fold_reflection`]). The explicit Hankel builders exist so the two
//! routes can be compared entrywise.

use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzFamily;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Band coefficients `(ξ0, ξ1, …, ξm)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandCoefficients {
    values: Vec<f64>,
}

impl BandCoefficients {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Usage("band coefficients must not be empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("band coefficients"));
        }
        Ok(Self { values })
    }

    /// Bandwidth `m` (index of the last stored coefficient).
    pub fn m(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `ξ_l`, zero beyond the stored band.
    pub fn get(&self, l: usize) -> f64 {
        self.values.get(l).copied().unwrap_or(0.0)
    }

    /// Zero-pads to bandwidth `m`; fails if more than `m + 1` values are stored.
    pub fn padded(&self, m: usize) -> Result<Self> {
        if self.values.len() > m + 1 {
            return Err(Error::CoefficientCount { got: self.values.len(), m, max: m + 1 });
        }
        let mut values = self.values.clone();
        values.resize(m + 1, 0.0);
        Ok(Self { values })
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { values: self.values.iter().map(|v| v * c).collect() }
    }
}

impl TryFrom<&[f64]> for BandCoefficients {
    type Error = Error;
    fn try_from(v: &[f64]) -> Result<Self> {
        Self::new(v.to_vec())
    }
}

/// Band coefficients whose odd offsets differ on even-numbered rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternatingBandCoefficients {
    base: BandCoefficients,
    /// `α̂_1, α̂_3, …`
    hat_odd: Vec<f64>,
}

impl AlternatingBandCoefficients {
    pub fn new(base: BandCoefficients, hat_odd: Vec<f64>) -> Result<Self> {
        let expected = base.m().div_ceil(2);
        if hat_odd.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: hat_odd.len() });
        }
        if hat_odd.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("hat coefficients"));
        }
        Ok(Self { base, hat_odd })
    }

    /// All hats equal to the base coefficients.
    pub fn uniform(base: BandCoefficients) -> Self {
        let hat_odd = (1..=base.m()).step_by(2).map(|l| base.get(l)).collect();
        Self { base, hat_odd }
    }

    pub fn base(&self) -> &BandCoefficients {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn hat_odd(&self) -> &[f64] {
        &self.hat_odd
    }

    /// `α̂_l` for odd `l`.
    pub fn hat(&self, l: usize) -> f64 {
        debug_assert!(l % 2 == 1);
        self.hat_odd.get(l / 2).copied().unwrap_or(0.0)
    }

    /// Common ratio `α̂_{2l-1} / α_{2l-1}` over the odd offsets.
    ///
    /// Offsets where both coefficients vanish carry no constraint; the ratio
    /// is 1 when every odd pair vanishes.
    pub fn common_ratio(&self, rel_tol: f64) -> Result<f64> {
        let mut ratio: Option<f64> = None;
        for l in (1..=self.m()).step_by(2) {
            let (a, ah) = (self.base.get(l), self.hat(l));
            if a == 0.0 && ah == 0.0 {
                continue;
            }
            if a == 0.0 {
                return Err(Error::RatioConstraintViolated(format!("alpha_{l} = 0 but alpha_hat_{l} = {ah}")));
            }
            let r = ah / a;
            match ratio {
                None => ratio = Some(r),
                Some(r0) if (r - r0).abs() <= rel_tol * r0.abs().max(r.abs()) => {}
                Some(r0) => {
                    return Err(Error::RatioConstraintViolated(format!(
                        "alpha_hat_{l}/alpha_{l} = {r} differs from {r0}"
                    )))
                }
            }
        }
        Ok(ratio.unwrap_or(1.0))
    }
}

/// Corner patterns of the Hankel correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HankelKind {
    /// `α_{j+k-1}` in the upper-left, `α_{j+k}` in the lower-right.
    CornerSet1,
    /// `-α_{j+k-1}` in the upper-left, `+α_{j+k-1}` in the lower-right.
    MixedDirichletNeumann,
}

/// Per-row symmetric stencils for odd (1st, 3rd, …) and even rows, indexed
/// by `|offset|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RowStencils {
    pub odd_rows: Vec<f64>,
    pub even_rows: Vec<f64>,
}

impl RowStencils {
    pub fn uniform(band: &[f64]) -> Self {
        Self { odd_rows: band.to_vec(), even_rows: band.to_vec() }
    }

    pub fn bandwidth(&self) -> usize {
        self.odd_rows.len().max(self.even_rows.len()).saturating_sub(1)
    }
}

fn check_band(m: usize, n: usize) -> Result<()> {
    if n == 0 || m > n - 1 {
        return Err(Error::BandTooWide { m, n, need: "m <= n-1" });
    }
    Ok(())
}

/// Symmetric banded Toeplitz `T_{j,j+k} = α_{|k|}`.
pub fn build_toeplitz(alpha: &BandCoefficients, n: usize) -> Result<DenseMatrix> {
    check_band(alpha.m(), n)?;
    Ok(DenseMatrix::from_fn(n, |i, j| alpha.get(i.abs_diff(j))))
}

/// Corner Hankel correction. Overlapping corner triangles accumulate.
pub fn build_hankel(kind: HankelKind, alpha: &BandCoefficients, n: usize) -> Result<DenseMatrix> {
    let m = alpha.m();
    if m > n {
        return Err(Error::BandTooWide { m, n, need: "m <= n" });
    }
    let mut h = DenseMatrix::zeros(n);
    let upper_sign = match kind {
        HankelKind::CornerSet1 => 1.0,
        HankelKind::MixedDirichletNeumann => -1.0,
    };
    for j in 1..=m {
        for k in 1..=m - j + 1 {
            h.add(j - 1, k - 1, upper_sign * alpha.get(j + k - 1));
        }
    }
    match kind {
        HankelKind::CornerSet1 => {
            for j in 1..m {
                for k in 1..=m - j {
                    h.add(n - j, n - k, alpha.get(j + k));
                }
            }
        }
        HankelKind::MixedDirichletNeumann => {
            for j in 1..=m {
                for k in 1..=m - j + 1 {
                    h.add(n - j, n - k, alpha.get(j + k - 1));
                }
            }
        }
    }
    Ok(h)
}

/// The mixed Dirichlet–Neumann correction with the lower-right clause taken
/// literally as `α_{j+k+1}` over `k ≤ m - j, j ≤ m - 1`.
///
/// Kept for comparison only; its composite `T + H` does not admit the
/// mixed-ansatz eigenvectors.
pub fn build_hankel_mixed_literal(alpha: &BandCoefficients, n: usize) -> Result<DenseMatrix> {
    let m = alpha.m();
    if m > n {
        return Err(Error::BandTooWide { m, n, need: "m <= n" });
    }
    let mut h = DenseMatrix::zeros(n);
    for j in 1..=m {
        for k in 1..=m - j + 1 {
            h.add(j - 1, k - 1, -alpha.get(j + k - 1));
        }
    }
    for j in 1..m {
        for k in 1..=m - j {
            h.add(n - j, n - k, alpha.get(j + k + 1));
        }
    }
    Ok(h)
}

/// Flip along the anti-diagonal: `R_{j,k} = M_{n+1-k, n+1-j}`.
pub fn antitranspose(m: &DenseMatrix) -> DenseMatrix {
    let n = m.n();
    DenseMatrix::from_fn(n, |j, k| m.get(n - 1 - k, n - 1 - j))
}

fn check_even(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n, min: 2 });
    }
    if n % 2 == 1 {
        return Err(Error::OddDimension { n });
    }
    Ok(())
}

/// Alternating-diagonal tridiagonal: diagonal `α0, α2, α0, …`, off-diagonals `α1`.
pub fn build_g1(alpha: [f64; 3], n: usize) -> Result<DenseMatrix> {
    check_even(n)?;
    let [a0, a1, a2] = alpha;
    Ok(DenseMatrix::from_fn(n, |i, j| {
        if i == j {
            if i % 2 == 0 {
                a0
            } else {
                a2
            }
        } else if i.abs_diff(j) == 1 {
            a1
        } else {
            0.0
        }
    }))
}

/// Non-symmetric tridiagonal: odd rows `(α1, α0, α1)`, even rows `(α3, α2, α3)`.
pub fn build_g2(alpha: [f64; 4], n: usize) -> Result<DenseMatrix> {
    check_even(n)?;
    let [a0, a1, a2, a3] = alpha;
    Ok(DenseMatrix::from_fn(n, |i, j| {
        let odd_row = i % 2 == 0;
        if i == j {
            if odd_row {
                a0
            } else {
                a2
            }
        } else if i.abs_diff(j) == 1 {
            if odd_row {
                a1
            } else {
                a3
            }
        } else {
            0.0
        }
    }))
}

/// Pentadiagonal: odd rows `(α2, α1, α0, α1, α2)`, even rows
/// `(α2, α3, α0, α3, α2)`, with `α0 - α2` in both diagonal corners.
pub fn build_g3(alpha: [f64; 4], n: usize) -> Result<DenseMatrix> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    let [a0, a1, a2, a3] = alpha;
    let stencils = RowStencils { odd_rows: vec![a0, a1, a2], even_rows: vec![a0, a3, a2] };
    fold_reflection(&stencils, &AnsatzFamily::DIRICHLET, n)
}

/// Generalised alternating band: even rows use `α̂` at odd offsets; the
/// boundary rows are folded with the Dirichlet ansatz.
pub fn build_g4(coeffs: &AlternatingBandCoefficients, n: usize) -> Result<DenseMatrix> {
    if n < 4 {
        return Err(Error::DimensionTooSmall { n, min: 4 });
    }
    let m = coeffs.m();
    if m < 2 {
        return Err(Error::BandTooWide { m, n, need: "m >= 2" });
    }
    if m > n - 2 {
        return Err(Error::BandTooWide { m, n, need: "m <= n-2" });
    }
    let base = coeffs.base().values().to_vec();
    let even = (0..=m).map(|l| if l % 2 == 1 { coeffs.hat(l) } else { base[l] }).collect();
    fold_reflection(&RowStencils { odd_rows: base, even_rows: even }, &AnsatzFamily::DIRICHLET, n)
}

/// Builds the matrix whose row `i` applies the parity stencil, folding
/// out-of-range columns back through the ansatz's reflection points.
///
/// A column landing exactly on a zero point is dropped (the eigenvector
/// vanishes there). Each fold multiplies the coefficient by the point's sign.
pub fn fold_reflection(stencils: &RowStencils, ansatz: &AnsatzFamily, n: usize) -> Result<DenseMatrix> {
    check_band(stencils.bandwidth(), n)?;
    let [lo, hi] = ansatz.reflection_points(n)?;
    let mut out = DenseMatrix::zeros(n);
    let nf = n as f64;
    for row in 1..=n {
        let band = if row % 2 == 1 { &stencils.odd_rows } else { &stencils.even_rows };
        for (d, &c) in band.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let offsets: &[i64] = if d == 0 { &[0] } else { &[-(d as i64), d as i64] };
            for &off in offsets {
                let mut col = (row as i64 + off) as f64;
                let mut sign = 1.0;
                let mut folds = 0;
                let landed = loop {
                    if col >= 1.0 && col <= nf {
                        break true;
                    }
                    let p = if col < 1.0 { lo } else { hi };
                    if col == p.at && p.sign < 0.0 {
                        break false;
                    }
                    col = 2.0 * p.at - col;
                    sign *= p.sign;
                    folds += 1;
                    if folds > 64 {
                        return Err(Error::UnsupportedAnsatz(format!(
                            "column {} does not fold into 1..={n}",
                            row as i64 + off
                        )));
                    }
                };
                if landed {
                    out.add(row - 1, col as usize - 1, sign * c);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn band(v: &[f64]) -> BandCoefficients {
        BandCoefficients::new(v.to_vec()).unwrap()
    }

    fn rows(m: &DenseMatrix) -> Vec<Vec<f64>> {
        (0..m.n()).map(|i| m.row(i).to_vec()).collect()
    }

    #[test]
    fn toeplitz_examples() {
        let (a0, a1) = (3.0, -1.5);
        let t = build_toeplitz(&band(&[a0, a1]), 3).unwrap();
        assert_eq!(rows(&t), vec![vec![a0, a1, 0.0], vec![a1, a0, a1], vec![0.0, a1, a0]]);
        assert_eq!(build_toeplitz(&band(&[2.5]), 4).unwrap(), DenseMatrix::identity(4).scaled(2.5));
        let t = build_toeplitz(&band(&[2.0, -1.0, 0.5]), 4).unwrap();
        assert_eq!(
            rows(&t),
            vec![
                vec![2.0, -1.0, 0.5, 0.0],
                vec![-1.0, 2.0, -1.0, 0.5],
                vec![0.5, -1.0, 2.0, -1.0],
                vec![0.0, 0.5, -1.0, 2.0],
            ]
        );
        assert!(matches!(build_toeplitz(&band(&[1.0, 1.0, 1.0]), 2), Err(Error::BandTooWide { .. })));
    }

    #[test]
    fn hankel_corner_examples() {
        let h = build_hankel(HankelKind::CornerSet1, &band(&[0.0, 1.0, 2.0]), 4).unwrap();
        let mut expected = DenseMatrix::zeros(4);
        expected.set(0, 0, 1.0);
        expected.set(0, 1, 2.0);
        expected.set(1, 0, 2.0);
        expected.set(3, 3, 2.0);
        assert_eq!(h, expected);

        let h = build_hankel(HankelKind::CornerSet1, &band(&[0.0, 7.0]), 3).unwrap();
        assert_eq!(h.nnz(), 1);
        assert_eq!(h.get(0, 0), 7.0);
        assert!(build_hankel(HankelKind::CornerSet1, &band(&[0.0, 1.0, 1.0, 1.0]), 2).is_err());
    }

    #[test]
    fn mixed_hankel_composite_last_rows() {
        let (a0, a1, a2, a3) = (10.0, 1.0, 2.0, 3.0);
        let alpha = band(&[a0, a1, a2, a3]);
        let n = 7;
        let a = build_toeplitz(&alpha, n).unwrap();
        let h = build_hankel(HankelKind::MixedDirichletNeumann, &alpha, n).unwrap();
        let a = a.sub_scaled(&h, -1.0).unwrap();
        assert_eq!(&a.row(n - 1)[n - 4..], &[a3, a2 + a3, a1 + a2, a0 + a1]);
        assert_eq!(&a.row(0)[..4], &[a0 - a1, a1 - a2, a2 - a3, a3]);
        assert_eq!(a.get(1, 1), a0 - a3);
        assert_eq!(a.get(n - 3, n - 1), a2 + a3);
    }

    #[test]
    fn mixed_literal_differs_from_displayed() {
        let alpha = band(&[10.0, 1.0, 2.0, 3.0]);
        let lit = build_hankel_mixed_literal(&alpha, 7).unwrap();
        let shown = build_hankel(HankelKind::MixedDirichletNeumann, &alpha, 7).unwrap();
        assert_eq!(lit.get(6, 6), 3.0);
        assert_eq!(shown.get(6, 6), 1.0);
    }

    #[test]
    fn antitranspose_examples() {
        assert_eq!(antitranspose(&DenseMatrix::identity(3)), DenseMatrix::identity(3));
        let m = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(rows(&antitranspose(&m)), vec![vec![4.0, 2.0], vec![3.0, 1.0]]);
    }

    #[test]
    fn g1_examples() {
        assert_eq!(rows(&build_g1([2.0, 1.0, 3.0], 2).unwrap()), vec![vec![2.0, 1.0], vec![1.0, 3.0]]);
        assert_eq!(build_g1([4.0, 0.0, 4.0], 4).unwrap(), DenseMatrix::identity(4).scaled(4.0));
        assert_eq!(
            rows(&build_g1([2.0, 1.0, 3.0], 4).unwrap()),
            vec![
                vec![2.0, 1.0, 0.0, 0.0],
                vec![1.0, 3.0, 1.0, 0.0],
                vec![0.0, 1.0, 2.0, 1.0],
                vec![0.0, 0.0, 1.0, 3.0],
            ]
        );
        assert!(matches!(build_g1([1.0, 1.0, 1.0], 5), Err(Error::OddDimension { n: 5 })));
    }

    #[test]
    fn g2_examples() {
        assert_eq!(rows(&build_g2([2.0, 1.0, 3.0, 2.0], 2).unwrap()), vec![vec![2.0, 1.0], vec![2.0, 3.0]]);
        let sym = build_g2([2.0, -1.0, 2.0, -1.0], 6).unwrap();
        assert_eq!(sym, build_toeplitz(&band(&[2.0, -1.0]), 6).unwrap());
        assert_eq!(
            rows(&build_g2([0.0, 1.0, 0.0, 4.0], 4).unwrap()),
            vec![
                vec![0.0, 1.0, 0.0, 0.0],
                vec![4.0, 0.0, 4.0, 0.0],
                vec![0.0, 1.0, 0.0, 1.0],
                vec![0.0, 0.0, 4.0, 0.0],
            ]
        );
        assert!(matches!(build_g2([1.0; 4], 3), Err(Error::OddDimension { .. })));
    }

    #[test]
    fn g3_examples() {
        let g = build_g3([2.0, -1.0, 0.0, -1.0], 5).unwrap();
        assert_eq!(g, build_toeplitz(&band(&[2.0, -1.0]), 5).unwrap());
        assert_eq!(build_g3([0.0, 1.0, 0.0, 4.0], 4).unwrap(), build_g2([0.0, 1.0, 0.0, 4.0], 4).unwrap());
        let (a0, a1, a2, a3) = (1.0, 2.0, 3.0, 4.0);
        let g = build_g3([a0, a1, a2, a3], 5).unwrap();
        assert_eq!(g.row(2), &[a2, a1, a0, a1, a2]);
        assert_eq!(g.row(0), &[a0 - a2, a1, a2, 0.0, 0.0]);
        assert_eq!(g.row(1), &[a3, a0, a3, a2, 0.0]);
        assert_eq!(g.row(4), &[0.0, 0.0, a2, a1, a0 - a2]);
        let g = build_g3([a0, a1, a2, a3], 6).unwrap();
        assert_eq!(g.row(4), &[0.0, 0.0, a2, a1, a0, a1]);
        assert_eq!(g.row(5), &[0.0, 0.0, 0.0, a2, a3, a0 - a2]);
        assert!(matches!(build_g3([1.0; 4], 3), Err(Error::DimensionTooSmall { .. })));
    }

    #[test]
    fn g4_examples() {
        let alpha = band(&[1.5, 2.0, 3.0]);
        let g4 = build_g4(&AlternatingBandCoefficients::uniform(alpha), 7).unwrap();
        assert_eq!(g4, build_g3([1.5, 2.0, 3.0, 2.0], 7).unwrap());

        let (a0, a1, a2, a3) = (5.0, 1.0, 2.0, 3.0);
        let c = AlternatingBandCoefficients::new(band(&[a0, a1, a2, a3]), vec![7.0, 11.0]).unwrap();
        let g = build_g4(&c, 8).unwrap();
        assert_eq!(&g.row(0)[..5], &[a0 - a2, a1 - a3, a2, a3, 0.0]);
        assert_eq!(g.row(3), &[11.0, a2, 7.0, a0, 7.0, a2, 11.0, 0.0]);

        let c = AlternatingBandCoefficients::new(band(&[0.0, 1.0, 0.0]), vec![4.0]).unwrap();
        assert_eq!(build_g4(&c, 4).unwrap(), build_g3([0.0, 1.0, 0.0, 4.0], 4).unwrap());
        assert!(matches!(build_g4(&c, 3), Err(Error::DimensionTooSmall { .. })));
        let wide = AlternatingBandCoefficients::uniform(band(&[1.0, 1.0, 1.0, 1.0]));
        assert!(matches!(build_g4(&wide, 4), Err(Error::BandTooWide { .. })));
    }

    #[test]
    fn ratio_constraint() {
        let c = AlternatingBandCoefficients::new(band(&[2.0, -1.0, 0.2, -0.1]), vec![-2.0, -0.2]).unwrap();
        assert!((c.common_ratio(1e-12).unwrap() - 2.0).abs() < 1e-15);
        let c = AlternatingBandCoefficients::new(band(&[2.0, -1.0, 0.2, -0.1]), vec![-2.0, -0.3]).unwrap();
        assert!(matches!(c.common_ratio(1e-12), Err(Error::RatioConstraintViolated(_))));
        let c = AlternatingBandCoefficients::new(band(&[2.0, 0.0, 1.0]), vec![1.0]).unwrap();
        assert!(c.common_ratio(1e-12).is_err());
        assert!(AlternatingBandCoefficients::new(band(&[2.0, 0.0, 1.0]), vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn fold_plain_tridiagonal_has_no_corrections() {
        let s = RowStencils::uniform(&[2.0, -1.0]);
        let f = fold_reflection(&s, &AnsatzFamily::DIRICHLET, 6).unwrap();
        assert_eq!(f, build_toeplitz(&band(&[2.0, -1.0]), 6).unwrap());
    }

    #[test]
    fn fold_reproduces_corner_m2() {
        let (a0, a1, a2) = (4.0, 1.0, 0.25);
        let n = 6;
        let f = fold_reflection(&RowStencils::uniform(&[a0, a1, a2]), &AnsatzFamily::CORNER, n).unwrap();
        assert_eq!(f.get(0, 0), a0 - a1);
        assert_eq!(f.get(0, 1), a1 - a2);
        assert_eq!(f.get(1, 0), a1 - a2);
        assert_eq!(f.get(1, 1), a0);
        assert_eq!(f.get(n - 1, n - 1), a0 - a2);
        assert_eq!(f.get(n - 2, n - 1), a1);
    }

    #[test]
    fn fold_reproduces_mixed_composite() {
        for m in 1..=4 {
            for n in m + 1..=12 {
                let alpha = band(&[3.0, -1.0, 0.5, 0.25, -0.125][..=m]);
                let f = fold_reflection(&RowStencils::uniform(alpha.values()), &AnsatzFamily::MIXED, n).unwrap();
                let t = build_toeplitz(&alpha, n).unwrap();
                let h = build_hankel(HankelKind::MixedDirichletNeumann, &alpha, n).unwrap();
                assert!(f.max_abs_diff(&t.sub_scaled(&h, -1.0).unwrap()) < 1e-15, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn fold_flipped_is_antitranspose() {
        let alpha = band(&[3.0, -1.0, 0.5]);
        let n = 7;
        let s = RowStencils::uniform(alpha.values());
        let f = fold_reflection(&s, &AnsatzFamily::CORNER_FLIPPED, n).unwrap();
        let g = antitranspose(&fold_reflection(&s, &AnsatzFamily::CORNER, n).unwrap());
        assert_eq!(f, g);
    }

    #[test]
    fn padded_coefficients() {
        let b = band(&[1.0]).padded(2).unwrap();
        assert_eq!(b.values(), &[1.0, 0.0, 0.0]);
        assert!(matches!(band(&[1.0, 2.0, 3.0]).padded(1), Err(Error::CoefficientCount { .. })));
    }
}
