//! Configurations, the synchronous global transition and orbit analysis.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::machine::Machine;
use crate::neighbourhood::Neighbourhood;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigurationError {
    #[error("IncompleteConfiguration: expected {expected} states, found {found}")]
    IncompleteConfiguration { expected: usize, found: usize },
    #[error("invalid state character {ch:?} at position {pos}")]
    InvalidChar { ch: char, pos: usize },
}

/// Alive/dead state of every organism, in arrow declaration order.
///
/// The canonical text form is one `'1'`/`'0'` per arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    states: Vec<bool>,
}

impl Configuration {
    pub fn new(states: Vec<bool>) -> Self {
        Self { states }
    }

    pub fn all(len: usize, alive: bool) -> Self {
        Self {
            states: vec![alive; len],
        }
    }

    pub fn states(&self) -> &[bool] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_alive(&self, arrow: usize) -> bool {
        self.states[arrow]
    }

    pub fn alive_count(&self) -> usize {
        self.states.iter().filter(|&&s| s).count()
    }

    pub(crate) fn check_len(&self, expected: usize) -> Result<(), ConfigurationError> {
        if self.states.len() == expected {
            Ok(())
        } else {
            Err(ConfigurationError::IncompleteConfiguration {
                expected,
                found: self.states.len(),
            })
        }
    }
}

impl FromStr for Configuration {
    type Err = ConfigurationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(pos, ch)| match ch {
                '1' => Ok(true),
                '0' => Ok(false),
                _ => Err(ConfigurationError::InvalidChar { ch, pos }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Configuration::new)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.states {
            f.write_str(if s { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One synchronous application of the global transition `G`.
///
/// Every next state is read off the current configuration only.
pub fn step(m: &Machine, c: &Configuration) -> Result<Configuration, ConfigurationError> {
    c.check_len(m.quiver().arrow_count())?;
    Ok(step_unchecked(m, c))
}

fn step_unchecked(m: &Machine, c: &Configuration) -> Configuration {
    let rules = m.rules();
    let s = c.states();
    let states = m
        .neighbourhoods()
        .entries()
        .iter()
        .enumerate()
        .map(|(a, n)| match *n {
            Neighbourhood::Isolated => rules.apply1(s[a]),
            Neighbourhood::RightOnly { right } => rules.apply2(s[a], s[right]),
            Neighbourhood::LeftOnly { left } => rules.apply3(s[left], s[a]),
            Neighbourhood::Both { left, right } => rules.apply4(s[left], s[a], s[right]),
        })
        .collect();
    Configuration { states }
}

/// The sequence `c0, G(c0), .., G^steps(c0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    configurations: Vec<Configuration>,
}

impl Orbit {
    pub fn configurations(&self) -> &[Configuration] {
        &self.configurations
    }

    /// Number of transitions recorded (one less than the configurations).
    pub fn steps(&self) -> usize {
        self.configurations.len() - 1
    }

    pub fn at(&self, t: usize) -> Option<&Configuration> {
        self.configurations.get(t)
    }

    /// First repetition among the recorded configurations, if any.
    pub fn observed_cycle(&self) -> Option<CycleReport> {
        let mut seen = HashMap::new();
        for (t, c) in self.configurations.iter().enumerate() {
            if let Some(&p) = seen.get(c) {
                return Some(CycleReport {
                    preperiod: p,
                    period: t - p,
                });
            }
            seen.insert(c, t);
        }
        None
    }
}

pub fn orbit(m: &Machine, c0: &Configuration, steps: usize) -> Result<Orbit, ConfigurationError> {
    c0.check_len(m.quiver().arrow_count())?;
    let mut configurations = Vec::with_capacity(steps + 1);
    configurations.push(c0.clone());
    for _ in 0..steps {
        let next = step_unchecked(m, configurations.last().expect("non-empty"));
        configurations.push(next);
    }
    Ok(Orbit { configurations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycleOutcome {
    Found(CycleReport),
    NotFoundWithin(usize),
}

impl CycleOutcome {
    pub fn report(self) -> Option<CycleReport> {
        match self {
            CycleOutcome::Found(r) => Some(r),
            CycleOutcome::NotFoundWithin(_) => None,
        }
    }
}

/// Exact pre-period and period of the orbit of `c0`, applying `G` at most
/// `max_steps` times.
///
/// Keeps a first-seen index per configuration, so memory grows with the
/// transient plus one period.
pub fn detect_cycle(
    m: &Machine,
    c0: &Configuration,
    max_steps: usize,
) -> Result<CycleOutcome, ConfigurationError> {
    c0.check_len(m.quiver().arrow_count())?;
    let mut seen = HashMap::new();
    let mut current = c0.clone();
    seen.insert(current.clone(), 0usize);
    for u in 1..=max_steps {
        current = step_unchecked(m, &current);
        if let Some(&p) = seen.get(&current) {
            return Ok(CycleOutcome::Found(CycleReport {
                preperiod: p,
                period: u - p,
            }));
        }
        seen.insert(current.clone(), u);
    }
    Ok(CycleOutcome::NotFoundWithin(max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn text_form() {
        assert_eq!(cfg("1101").to_string(), "1101");
        assert!(matches!(
            "10x".parse::<Configuration>(),
            Err(ConfigurationError::InvalidChar { ch: 'x', pos: 2 })
        ));
        assert_eq!(cfg("").len(), 0);
    }

    #[test]
    fn example1_steps() {
        let m = fixtures::example1();
        assert_eq!(step(&m, &cfg("1101101001")).unwrap(), cfg("0010010011"));
        assert_eq!(step(&m, &cfg("0010010011")).unwrap(), cfg("0111111100"));
    }

    #[test]
    fn example2_step() {
        let m = fixtures::example2();
        assert_eq!(step(&m, &cfg("1101101001")).unwrap(), cfg("1111111011"));
    }

    #[test]
    fn update_is_synchronous() {
        // An in-place left-to-right sweep would read α1's new state (0) when
        // updating α2 and get δ4(0,1,0)=1 instead of δ4(1,1,0)=0.
        let m = fixtures::example1();
        let next = step(&m, &cfg("1101101001")).unwrap();
        assert!(!next.is_alive(1));
    }

    #[test]
    fn wrong_length_rejected() {
        let m = fixtures::example1();
        assert_eq!(
            step(&m, &cfg("110")),
            Err(ConfigurationError::IncompleteConfiguration {
                expected: 10,
                found: 3
            })
        );
        assert!(orbit(&m, &cfg("1"), 3).is_err());
        assert!(detect_cycle(&m, &cfg("1"), 3).is_err());
    }

    #[test]
    fn orbit_zero_steps() {
        let m = fixtures::example1();
        let o = orbit(&m, &cfg("1101101001"), 0).unwrap();
        assert_eq!(o.configurations(), &[cfg("1101101001")]);
        assert_eq!(o.steps(), 0);
    }

    #[test]
    fn cycles_of_examples() {
        let c0 = cfg("1101101001");
        assert_eq!(
            detect_cycle(&fixtures::example1(), &c0, 10_000).unwrap(),
            CycleOutcome::Found(CycleReport {
                preperiod: 5,
                period: 4
            })
        );
        assert_eq!(
            detect_cycle(&fixtures::example2(), &c0, 10_000).unwrap(),
            CycleOutcome::Found(CycleReport {
                preperiod: 2,
                period: 6
            })
        );
        // the revisit happens at t=9
        assert_eq!(
            detect_cycle(&fixtures::example1(), &c0, 8).unwrap(),
            CycleOutcome::NotFoundWithin(8)
        );
        assert!(detect_cycle(&fixtures::example1(), &c0, 9)
            .unwrap()
            .report()
            .is_some());
    }

    #[test]
    fn observed_cycle_agrees_with_detection() {
        let m = fixtures::example1();
        let o = orbit(&m, &cfg("1101101001"), 12).unwrap();
        assert_eq!(
            o.observed_cycle(),
            Some(CycleReport {
                preperiod: 5,
                period: 4
            })
        );
        assert_eq!(
            orbit(&m, &cfg("1101101001"), 8).unwrap().observed_cycle(),
            None
        );
    }
}
