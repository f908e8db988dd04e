//! Estimators with exact integer accumulation, so aggregates do not depend
//! on summation order.

/// Mean and standard error of integer observations.
#[derive(Clone, Copy, Debug, Default)]
pub struct IntMoments {
    count: u64,
    sum: u128,
    sum_sq: u128,
}

impl IntMoments {
    pub fn push(&mut self, x: u64) {
        self.count += 1;
        self.sum += x as u128;
        self.sum_sq += (x as u128) * (x as u128);
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            return f64::NAN;
        }
        self.sum as f64 / self.count as f64
    }

    /// Sample standard deviation over `sqrt(count)`.
    pub fn stderr(&self) -> f64 {
        if self.count < 2 {
            return f64::NAN;
        }
        let n = self.count as f64;
        // n * sum_sq - sum^2 is exact in integers
        let num = self.count as u128 * self.sum_sq - self.sum * self.sum;
        let var = num as f64 / (n * (n - 1.0));
        (var / n).sqrt()
    }
}

impl FromIterator<u64> for IntMoments {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut m = IntMoments::default();
        for x in iter {
            m.push(x);
        }
        m
    }
}

/// Proportion of successes with its binomial standard error.
pub fn proportion(hits: u64, reps: u64) -> (f64, f64) {
    let p = hits as f64 / reps as f64;
    (p, (p * (1.0 - p) / reps as f64).sqrt())
}

/// Mean and standard error of real observations, summed with Neumaier
/// compensation in input order.
pub fn real_mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = compensated_sum(xs.iter().copied()) / n;
    let ss = compensated_sum(xs.iter().map(|x| (x - mean) * (x - mean)));
    (mean, (ss / (n - 1.0) / n).sqrt())
}

pub fn compensated_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sample median and a distribution-free standard error from the order
/// statistics bracketing a 95% interval.
pub fn median_with_stderr(xs: &[f64]) -> (f64, f64) {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let median = if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    };
    let half = 1.96 * (n as f64).sqrt() / 2.0;
    let lo = ((n as f64 / 2.0 - half).floor().max(0.0)) as usize;
    let hi = ((n as f64 / 2.0 + half).ceil() as usize).min(n - 1);
    (median, (v[hi] - v[lo]) / (2.0 * 1.96))
}

/// Two-sample Kolmogorov–Smirnov distance.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Kolmogorov–Smirnov distance to a continuous CDF.
pub fn ks_one_sample(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments() {
        let m: IntMoments = [1u64, 2, 3, 4].into_iter().collect();
        assert_eq!(m.mean(), 2.5);
        let sd = (5.0f64 / 3.0).sqrt();
        assert!((m.stderr() - sd / 2.0).abs() < 1e-12);
        let (mu, se) = real_mean_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert!((mu - 2.5).abs() < 1e-12 && (se - sd / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ks_distances() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample(&[1.0, 3.0], &[2.0, 4.0]) - 0.5).abs() < 1e-12);
        let grid: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        assert!(ks_one_sample(&grid, |x| x) <= 0.0005 + 1e-12);
    }

    #[test]
    fn median() {
        assert_eq!(median_with_stderr(&[3.0, 1.0, 2.0]).0, 2.0);
        assert_eq!(median_with_stderr(&[4.0, 1.0, 2.0, 3.0]).0, 2.5);
    }
}
