use nalgebra::DMatrix;
use num::complex::Complex64;

/// Singular values below this fraction of the largest count as zero.
pub const RANK_TOLERANCE: f64 = 1e-9;

pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .collect()
}

fn largest(sv: &[f64]) -> f64 {
    sv.iter().copied().fold(0.0_f64, f64::max)
}

pub fn rank(m: &DMatrix<Complex64>) -> usize {
    rank_at_scale(m, largest(&singular_values(m)))
}

/// Rank counting only singular values above `RANK_TOLERANCE * scale`; used
/// for sub-blocks so that numerically cancelled entries do not count.
pub fn rank_at_scale(m: &DMatrix<Complex64>, scale: f64) -> usize {
    if scale == 0.0 {
        return 0;
    }
    singular_values(m)
        .iter()
        .filter(|&&s| s > RANK_TOLERANCE * scale)
        .count()
}

pub fn spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    largest(&singular_values(m))
}

/// Columns `cols` of `m`, in order.
pub fn select_columns(m: &DMatrix<Complex64>, cols: std::ops::Range<usize>) -> DMatrix<Complex64> {
    m.columns(cols.start, cols.len()).into_owned()
}
