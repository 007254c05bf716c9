use fourier_core::CMat;

use crate::{AnalysisError, Result};

pub fn singular_values_desc(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Decay exponent `s` of a profile `sigma_k ~ k^{-s}` (1-based `k`), fitted by
/// least squares on log-log data over the middle half of the samples.
pub fn decay_exponent(profile: &[f64]) -> Result<f64> {
    let n = profile.len();
    let (lo, hi) = (n / 4, n - n / 4);
    let points: Vec<(f64, f64)> = (lo..hi)
        .filter(|&i| profile[i] > 0.0)
        .map(|i| (((i + 1) as f64).ln(), profile[i].ln()))
        .collect();
    if points.len() < 3 {
        return Err(AnalysisError::TooFewSamples {
            required: 3,
            found: points.len(),
        });
    }
    let m = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(-sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_power_law() {
        let profile: Vec<f64> = (1..=200).map(|k| 3.0 * (k as f64).powf(-1.7)).collect();
        assert!((decay_exponent(&profile).unwrap() - 1.7).abs() < 1e-12);
    }

    #[test]
    fn rejects_tiny_profiles() {
        assert!(decay_exponent(&[1.0, 0.5]).is_err());
    }
}
