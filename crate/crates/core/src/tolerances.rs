/// All numeric thresholds used across the crate, in one place.
///
/// Linear-algebra residuals are held to `linalg`; value-level equality
/// verdicts (Schur equality, trace equality, sign conditions) use the looser
/// `equality` since a generalized matrix function accumulates up to
/// `g · n^n` rounding contributions. Support detection is relative:
/// an entry counts as nonzero when `|d_ij| > zero * max|D|`.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Relative threshold for treating a matrix entry as nonzero (1e-12).
    pub zero: f64,
    /// Relative tolerance for linear-algebra residuals (1e-10).
    pub linalg: f64,
    /// Relative tolerance for equality verdicts (1e-8).
    pub equality: f64,
    /// Tolerance for agreement between two independent computation routes
    /// of the same quantity (1e-9).
    pub route: f64,
    /// Relative residual below which two symmetrized tensors count as
    /// collinear (1e-8).
    pub collinearity: f64,
    /// Absolute floor under which a collinearity coefficient counts as
    /// zero (1e-12).
    pub k_floor: f64,
    /// Pivot threshold for positive definiteness, relative to `max|H|` (1e-10).
    pub pd_pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: 1e-12,
            linalg: 1e-10,
            equality: 1e-8,
            route: 1e-9,
            collinearity: 1e-8,
            k_floor: 1e-12,
            pd_pivot: 1e-10,
        }
    }
}
