use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Counts of the coloured balls; the single black ball is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HoppeState {
    /// Per-colour counts in order of birth.
    pub colors: Vec<u64>,
    pub t: u64,
}

/// Hoppe's urn with leader tracking. The leader is the colour with the most
/// balls, ties going to the earliest-born colour.
#[derive(Clone, Debug, Default)]
pub struct HoppeUrn {
    state: HoppeState,
    /// Colour of every coloured ball, so a uniform ball is one index draw.
    balls: Vec<u32>,
    leader: Option<u32>,
    changes: Vec<u64>,
}

impl HoppeUrn {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn state(&self) -> &HoppeState {
        &self.state
    }

    /// 0-based colour index of the current leader.
    pub fn leader(&self) -> Option<u32> {
        self.leader
    }

    /// Times `t` at which the leader switched to a different colour.
    pub fn leader_changes(&self) -> &[u64] {
        &self.changes
    }

    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        // t coloured balls plus the black one
        let total = self.state.t + 1;
        let pick = rng.random_range(0..total);
        let color = if pick == self.state.t {
            self.state.colors.push(0);
            (self.state.colors.len() - 1) as u32
        } else {
            self.balls[pick as usize]
        };
        self.state.colors[color as usize] += 1;
        self.balls.push(color);
        self.state.t += 1;

        let count = self.state.colors[color as usize];
        match self.leader {
            None => self.leader = Some(color),
            Some(l) if l != color => {
                let lc = self.state.colors[l as usize];
                if count > lc || (count == lc && color < l) {
                    self.leader = Some(color);
                    self.changes.push(self.state.t);
                }
            }
            Some(_) => {}
        }
    }
}

/// One row of a Hoppe trajectory; `leader` is the 1-based birth order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HoppeRow {
    pub t: u64,
    pub num_colors: u64,
    pub leader: u64,
    pub leader_count: u64,
}

/// Runs `steps` draws and records the state after each one.
pub fn hoppe_run<R: Rng + ?Sized>(steps: u64, rng: &mut R) -> Result<(HoppeUrn, Vec<HoppeRow>)> {
    if steps == 0 {
        return Err(Error::invalid("steps must be at least 1"));
    }
    let mut urn = HoppeUrn::new();
    let mut rows = Vec::with_capacity(steps as usize);
    for _ in 0..steps {
        urn.step(rng);
        let l = urn.leader.expect("a colour exists after one step");
        rows.push(HoppeRow {
            t: urn.state.t,
            num_colors: urn.state.colors.len() as u64,
            leader: l as u64 + 1,
            leader_count: urn.state.colors[l as usize],
        });
    }
    Ok((urn, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn first_step_creates_a_colour() {
        let mut rng = RngStream::new(3, 0).rng();
        let (urn, rows) = hoppe_run(1, &mut rng).unwrap();
        assert_eq!(urn.state().colors, [1]);
        assert_eq!(
            rows[0],
            HoppeRow {
                t: 1,
                num_colors: 1,
                leader: 1,
                leader_count: 1
            }
        );
        assert!(hoppe_run(0, &mut rng).is_err());
    }

    #[test]
    fn counts_and_leader_are_consistent() {
        let mut rng = RngStream::new(3, 1).rng();
        let (urn, rows) = hoppe_run(5000, &mut rng).unwrap();
        let s = urn.state();
        assert_eq!(1 + s.colors.iter().sum::<u64>(), s.t + 1);
        let max = *s.colors.iter().max().unwrap();
        let first_max = s.colors.iter().position(|&c| c == max).unwrap() as u32;
        assert_eq!(urn.leader(), Some(first_max));
        // each recorded change is a step where the leader column moves
        let moves: Vec<u64> = rows
            .windows(2)
            .filter(|w| w[0].leader != w[1].leader)
            .map(|w| w[1].t)
            .collect();
        assert_eq!(moves, urn.leader_changes());
    }
}
