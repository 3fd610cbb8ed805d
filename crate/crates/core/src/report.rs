//! JSON report for an orbit run.

use serde::Serialize;

use crate::evolution::{CycleReport, Orbit};
use crate::machine::Machine;
use crate::space::{space_of, SpaceStats};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub steps: usize,
    pub configurations: Vec<String>,
    /// First repetition seen among the recorded configurations, if any.
    pub cycle: Option<CycleReport>,
    pub space_stats: Vec<SpaceStats>,
}

impl OrbitReport {
    pub fn new(m: &Machine, orbit: &Orbit) -> Self {
        OrbitReport {
            steps: orbit.steps(),
            configurations: orbit
                .configurations()
                .iter()
                .map(|c| c.to_string())
                .collect(),
            cycle: orbit.observed_cycle(),
            space_stats: orbit
                .configurations()
                .iter()
                .enumerate()
                .map(|(t, c)| {
                    space_of(m, c, t)
                        .expect("orbit configurations are total")
                        .stats()
                })
                .collect(),
        }
    }
}
