/// Numerical thresholds shared by the floating-point code paths.
///
/// The defaults are the frozen values the acceptance suite runs against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum `|G[i][j] − conj(G[j][i])|` accepted for a Hermitian matrix.
    pub hermitian: f64,
    /// A matrix is reported NOT_PSD iff its least eigenvalue is below `−psd`.
    pub psd: f64,
    /// Coefficients with modulus below this are dropped from Weyl sums.
    pub prune: f64,
    /// Entrywise tolerance for comparing Weyl elements and state values.
    pub compare: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        psd: 1e-9,
        prune: 1e-15,
        compare: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
