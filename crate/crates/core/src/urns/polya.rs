use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::parallel::map_indexed;
use crate::rng::RngStream;

/// Two-colour Pólya–Eggenberger urn: the drawn colour gains one ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PolyaState {
    pub x: u64,
    pub y: u64,
    pub t: u64,
}

impl PolyaState {
    /// The urn started from `a` X-balls and one Y-ball.
    pub fn start(a: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::invalid("a must be at least 1"));
        }
        Ok(Self { x: a, y: 1, t: 0 })
    }

    #[inline]
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        if rng.random_range(0..self.x + self.y) < self.x {
            self.x += 1;
        } else {
            self.y += 1;
        }
        self.t += 1;
    }

    /// Share of X-balls.
    pub fn fraction(&self) -> f64 {
        self.x as f64 / (self.x + self.y) as f64
    }
}

/// Trajectory of `steps` draws, including the initial state.
pub fn polya_run<R: Rng + ?Sized>(a: u64, steps: u64, rng: &mut R) -> Result<Vec<PolyaState>> {
    let mut s = PolyaState::start(a)?;
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(s);
    for _ in 0..steps {
        s.step(rng);
        out.push(s);
    }
    Ok(out)
}

/// Monte Carlo estimate of the chance that the X share dips below a level.
#[derive(Clone, Debug, Serialize)]
pub struct HitEstimate {
    pub a: u64,
    pub threshold: f64,
    pub horizon: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub reps: u64,
    pub hits: u64,
}

/// Fraction of urns from `(a, 1)` whose X share drops below `x` at some
/// `t <= horizon`. This is a lower bound for the event over all `t`.
pub fn polya_diagonal_hit_estimate(
    a: u64,
    x: f64,
    horizon: u64,
    reps: u64,
    seed: u64,
    workers: usize,
) -> Result<HitEstimate> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::invalid("threshold must lie in (0, 1)"));
    }
    if horizon == 0 || reps == 0 {
        return Err(Error::invalid("horizon and reps must be at least 1"));
    }
    PolyaState::start(a)?;
    let hits = map_indexed(
        reps as usize,
        workers,
        || (),
        |_, i| {
            let mut rng = RngStream::new(seed, i as u64).rng();
            let mut s = PolyaState { x: a, y: 1, t: 0 };
            loop {
                if (s.x as f64) < x * (s.x + s.y) as f64 {
                    return true;
                }
                if s.t == horizon {
                    return false;
                }
                s.step(&mut rng);
            }
        },
    )?
    .into_iter()
    .filter(|&h| h)
    .count() as u64;
    let p = hits as f64 / reps as f64;
    Ok(HitEstimate {
        a,
        threshold: x,
        horizon,
        estimate: p,
        stderr: (p * (1.0 - p) / reps as f64).sqrt(),
        reps,
        hits,
    })
}
