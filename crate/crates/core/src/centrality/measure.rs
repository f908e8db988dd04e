use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    /// Size of the largest component of `T \ v`.
    Jordan,
    /// Sum of distances to every other vertex.
    Closeness,
    /// Product of subtree sizes with the tree rooted at `v`.
    Rumor,
    /// Sum of squared neighbour-component sizes.
    BetweennessSq,
    /// Unordered pairs `{s, t}` whose path has `v` strictly inside.
    BetweennessPairs,
    /// Sum of `q`-th powers of neighbour-component sizes.
    BetweennessQ(u32),
    Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    SmallerIsCentral,
    LargerIsCentral,
}

impl Measure {
    /// The five measures used by the experiments, betweenness in its
    /// sum-of-squares form.
    pub const STANDARD: [Measure; 5] = [
        Measure::Jordan,
        Measure::Closeness,
        Measure::Rumor,
        Measure::BetweennessSq,
        Measure::Degree,
    ];

    pub fn direction(self) -> Direction {
        match self {
            Measure::Degree | Measure::BetweennessPairs => Direction::LargerIsCentral,
            _ => Direction::SmallerIsCentral,
        }
    }

    pub fn name(self) -> String {
        match self {
            Measure::Jordan => "jordan".into(),
            Measure::Closeness => "closeness".into(),
            Measure::Rumor => "rumor".into(),
            Measure::BetweennessSq => "betweenness".into(),
            Measure::BetweennessPairs => "betweenness_pairs".into(),
            Measure::BetweennessQ(q) => format!("betweenness_q{q}"),
            Measure::Degree => "degree".into(),
        }
    }

    /// Exponent used by the sum-of-powers form, if any.
    pub fn power(self) -> Option<u32> {
        match self {
            Measure::BetweennessSq => Some(2),
            Measure::BetweennessQ(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Ok(match s.as_str() {
            "jordan" => Measure::Jordan,
            "closeness" => Measure::Closeness,
            "rumor" | "rumour" => Measure::Rumor,
            "betweenness" | "betweenness_sq" => Measure::BetweennessSq,
            "betweenness_pairs" => Measure::BetweennessPairs,
            "degree" => Measure::Degree,
            other => match other.strip_prefix("betweenness_q") {
                Some(q) => {
                    let q: u32 = q
                        .parse()
                        .map_err(|_| Error::invalid(format!("bad exponent in `{other}`")))?;
                    if q < 2 {
                        return Err(Error::invalid("betweenness exponent must be at least 2"));
                    }
                    Measure::BetweennessQ(q)
                }
                None => return Err(Error::invalid(format!("unknown measure `{other}`"))),
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directions() {
        for m in [
            Measure::Jordan,
            Measure::Closeness,
            Measure::Rumor,
            Measure::BetweennessSq,
            Measure::BetweennessQ(3),
        ] {
            assert_eq!(m.direction(), Direction::SmallerIsCentral);
        }
        assert_eq!(Measure::Degree.direction(), Direction::LargerIsCentral);
        assert_eq!(Measure::BetweennessPairs.direction(), Direction::LargerIsCentral);
    }

    #[test]
    fn names_parse_back() {
        for m in [
            Measure::Jordan,
            Measure::Closeness,
            Measure::Rumor,
            Measure::BetweennessSq,
            Measure::BetweennessPairs,
            Measure::BetweennessQ(5),
            Measure::Degree,
        ] {
            assert_eq!(m.name().parse::<Measure>().unwrap(), m);
        }
        assert!("betweenness_q1".parse::<Measure>().is_err());
        assert!("pagerank".parse::<Measure>().is_err());
    }
}
