//! Composition machines: a quiver of organisms, each carrying a computon,
//! evolves in discrete time under local alive/dead rules. At every step the
//! alive organisms induce a program space containing every sequential
//! composition of the computons that are currently available.
//!
//! ```
//! use composition_machine::{fixtures, detect_cycle, CycleOutcome, CycleReport};
//!
//! let m = fixtures::example1();
//! let outcome = detect_cycle(&m, m.initial_configuration(), 10_000).unwrap();
//! assert_eq!(outcome, CycleOutcome::Found(CycleReport { preperiod: 5, period: 4 }));
//! ```

pub mod evolution;
pub mod execution;
pub mod export;
pub mod expr;
pub mod fixtures;
pub mod ids;
pub mod io;
pub mod machine;
pub mod neighbourhood;
pub mod quiver;
pub mod report;
pub mod rules;
pub mod space;

pub use evolution::{
    detect_cycle, orbit, step, Configuration, ConfigurationError, CycleOutcome, CycleReport, Orbit,
};
pub use execution::{eval_computon, eval_morphism, EvalError, Value};
pub use export::{export_dot, render_diagram, render_space_text, ToDot};
pub use expr::Expression;
pub use ids::{ArrowId, ComputonId, DataTypeId, VertexId};
pub use io::{load_machine, machine_to_json, parse_machine, LoadError};
pub use machine::{validate_machine, Machine, MachineSpec, ValidationErrors, Violation};
pub use neighbourhood::{derive_neighbourhoods, Neighbourhood, NeighbourhoodTable};
pub use quiver::{Path, Quiver, QuiverError};
pub use report::OrbitReport;
pub use rules::{named_rule, rule_table, NamedRule, RuleSet};
pub use space::{
    alive_quiver, build_space, compose, maximal_space, parse_morphism, space_of, space_stats,
    spaces_equal, AliveQuiver, Morphism, MorphismKind, ProgramSpace, SpaceStats,
};
