#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DixmierPoint {
    pub n: u64,
    pub average: f64,
}

/// Partial averages `(1 / log N) sum_{k <= N} k^{-qp}` on a grid of ten points
/// per decade, ending exactly at `n_max`.
pub fn dixmier_scan(q: f64, p: f64, n_max: u64) -> Vec<DixmierPoint> {
    let exponent = q * p;
    let mut grid: Vec<u64> = (2..)
        .map(|i| 10f64.powf(i as f64 / 10.0).round() as u64)
        .take_while(|&n| n < n_max)
        .collect();
    grid.dedup();
    grid.push(n_max);

    let mut points = Vec::with_capacity(grid.len());
    let mut sum = 0.0;
    let mut k = 0u64;
    for n in grid {
        while k < n {
            k += 1;
            sum += (k as f64).powf(-exponent);
        }
        points.push(DixmierPoint {
            n,
            average: sum / (n as f64).ln(),
        });
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ends_at_requested_size() {
        let scan = dixmier_scan(1.0, 1.0, 1000);
        assert_eq!(scan.last().unwrap().n, 1000);
        assert!(scan.windows(2).all(|w| w[0].n < w[1].n));
    }
}
