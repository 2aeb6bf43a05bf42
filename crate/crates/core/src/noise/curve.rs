use serde::{Deserialize, Serialize};

/// Per-draw curves over a common axis and their index-ordered average.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McCurve {
    pub axis: Vec<f64>,
    pub offsets: Vec<f64>,
    /// One curve per draw; `None` for excluded draws.
    pub draws: Vec<Option<Vec<f64>>>,
    pub mean: Vec<f64>,
    /// Standard error of the mean (0 with fewer than two draws).
    pub stderr: Vec<f64>,
    pub n_effective: usize,
    pub n_excluded: usize,
}

impl McCurve {
    pub fn from_draws(axis: Vec<f64>, offsets: Vec<f64>, draws: Vec<Option<Vec<f64>>>) -> Self {
        let len = axis.len();
        let kept: Vec<&Vec<f64>> = draws.iter().flatten().collect();
        let n = kept.len();
        let mut mean = vec![f64::NAN; len];
        let mut stderr = vec![f64::NAN; len];
        if n > 0 {
            for i in 0..len {
                let mut sum = 0.0;
                for c in &kept {
                    sum += c[i];
                }
                let m = sum / n as f64;
                mean[i] = m;
                stderr[i] = if n > 1 {
                    let mut ss = 0.0;
                    for c in &kept {
                        ss += (c[i] - m) * (c[i] - m);
                    }
                    (ss / (n - 1) as f64 / n as f64).sqrt()
                } else {
                    0.0
                };
            }
        }
        let n_excluded = draws.len() - n;
        Self { axis, offsets, draws, mean, stderr, n_effective: n, n_excluded }
    }

    pub fn n_draws(&self) -> usize {
        self.draws.len()
    }

    /// Index of the axis point nearest `x`.
    pub fn index_at(&self, x: f64) -> usize {
        let mut best = 0;
        for (i, a) in self.axis.iter().enumerate() {
            if (a - x).abs() < (self.axis[best] - x).abs() {
                best = i;
            }
        }
        best
    }

    pub fn mean_at(&self, x: f64) -> f64 {
        self.mean[self.index_at(x)]
    }
}
