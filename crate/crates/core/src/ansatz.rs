//! Trigonometric eigenvector patterns.
//!
//! Every closed form in this crate uses an eigenvector of the shape
//! `x_{j,k} = sin((j - r)·π·(k' - c)·h)` where `r` and `c` are half-shifts,
//! `h` comes from a grid rule and `k'` is `k` or its mirror `n + 1 - k`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridRule {
    /// h = 1/(n + 1/2)
    OverHalf,
    /// h = 1/n
    Unit,
    /// h = 1/(n + 1)
    Dirichlet,
    /// h = 2/(n + 1)
    OddHalf,
}

impl GridRule {
    /// `1/h` for dimension `n`.
    pub fn inverse_spacing(self, n: usize) -> f64 {
        let n = n as f64;
        match self {
            GridRule::OverHalf => n + 0.5,
            GridRule::Unit => n,
            GridRule::Dirichlet => n + 1.0,
            GridRule::OddHalf => (n + 1.0) / 2.0,
        }
    }

    pub fn spacing(self, n: usize) -> f64 {
        1.0 / self.inverse_spacing(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfShift {
    Zero,
    Half,
}

impl HalfShift {
    pub fn value(self) -> f64 {
        match self {
            HalfShift::Zero => 0.0,
            HalfShift::Half => 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzFamily {
    pub grid_rule: GridRule,
    pub row_shift: HalfShift,
    pub col_shift: HalfShift,
    pub reflected: bool,
}

/// A point of the column axis where every ansatz vector is odd (zero,
/// `sign = -1`) or even (mirror, `sign = +1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPoint {
    pub at: f64,
    pub sign: f64,
}

impl AnsatzFamily {
    /// `sin(jπ(k - 1/2)h)`, h = 1/(n + 1/2).
    pub const CORNER: Self = Self {
        grid_rule: GridRule::OverHalf,
        row_shift: HalfShift::Zero,
        col_shift: HalfShift::Half,
        reflected: false,
    };

    /// `sin(jπ(n - k + 1/2)h)`, h = 1/(n + 1/2).
    pub const CORNER_FLIPPED: Self = Self { reflected: true, ..Self::CORNER };

    /// `sin((j - 1/2)π(k - 1/2)h)`, h = 1/n.
    pub const MIXED: Self =
        Self { grid_rule: GridRule::Unit, row_shift: HalfShift::Half, col_shift: HalfShift::Half, reflected: false };

    /// `sin(jπkh)`, h = 1/(n + 1).
    pub const DIRICHLET: Self = Self {
        grid_rule: GridRule::Dirichlet,
        row_shift: HalfShift::Zero,
        col_shift: HalfShift::Zero,
        reflected: false,
    };

    /// Odd-indexed entries of the alternating tridiagonal families:
    /// `sin(jπ(k - 1/2)h)` with h = 2/(n + 1).
    pub const ODD_HALF: Self =
        Self { grid_rule: GridRule::OddHalf, row_shift: HalfShift::Zero, col_shift: HalfShift::Half, reflected: false };

    pub fn h(&self, n: usize) -> f64 {
        self.grid_rule.spacing(n)
    }

    /// Frequency `(j - r)·π·h` of eigenvector `j` (1-based).
    pub fn frequency(&self, n: usize, j: usize) -> f64 {
        (j as f64 - self.row_shift.value()) * PI * self.h(n)
    }

    /// Entry `k` (1-based) of eigenvector `j` with unit amplitude.
    pub fn value(&self, n: usize, j: usize, k: usize) -> f64 {
        let k = if self.reflected { (n + 1 - k) as f64 } else { k as f64 };
        (self.frequency(n, j) * (k - self.col_shift.value())).sin()
    }

    /// The two reflection points bracketing `1..=n`, lower first.
    ///
    /// The lower point is the column shift, always a zero. The upper point
    /// sits one half-period `1/h` further and is a zero for unshifted rows,
    /// a mirror for half-shifted rows.
    pub fn reflection_points(&self, n: usize) -> Result<[ReflectionPoint; 2]> {
        let c = self.col_shift.value();
        let lo = c;
        let hi = c + self.grid_rule.inverse_spacing(n);
        let hi_sign = match self.row_shift {
            HalfShift::Zero => -1.0,
            HalfShift::Half => 1.0,
        };
        for p in [lo, hi] {
            if (2.0 * p - (2.0 * p).round()).abs() > 1e-9 {
                return Err(Error::UnsupportedAnsatz(format!(
                    "reflection point {p} is not on the half-integer lattice"
                )));
            }
        }
        let mut pts = [ReflectionPoint { at: lo, sign: -1.0 }, ReflectionPoint { at: hi, sign: hi_sign }];
        if self.reflected {
            let np1 = (n + 1) as f64;
            pts = [ReflectionPoint { at: np1 - hi, sign: hi_sign }, ReflectionPoint { at: np1 - lo, sign: -1.0 }];
        }
        if pts[0].at > 1.0 || pts[1].at < n as f64 {
            return Err(Error::UnsupportedAnsatz(format!(
                "reflection points {} and {} do not bracket 1..={n}",
                pts[0].at, pts[1].at
            )));
        }
        Ok(pts)
    }
}
