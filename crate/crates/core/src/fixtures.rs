//! The bundled machine files.
//!
//! `example1` and `example2` share the 13-vertex, 10-organism quiver and
//! the initial configuration `1101101001`; they differ only in rules
//! (NOT/XOR/Rule 54 versus ID/OR/Rule 122). `walkthrough` is the small
//! 8-vertex, 6-arrow quiver with runnable integer computons.

use crate::io::{parse_machine, parse_spec};
use crate::machine::{Machine, MachineSpec};

pub const EXAMPLE1_JSON: &str = include_str!("../fixtures/example1.json");
pub const EXAMPLE2_JSON: &str = include_str!("../fixtures/example2.json");
pub const WALKTHROUGH_JSON: &str = include_str!("../fixtures/walkthrough.json");

pub fn example1_spec() -> MachineSpec {
    parse_spec(EXAMPLE1_JSON).expect("bundled fixture decodes")
}

pub fn example1() -> Machine {
    parse_machine(EXAMPLE1_JSON).expect("bundled fixture is valid")
}

pub fn example2() -> Machine {
    parse_machine(EXAMPLE2_JSON).expect("bundled fixture is valid")
}

pub fn walkthrough() -> Machine {
    parse_machine(WALKTHROUGH_JSON).expect("bundled fixture is valid")
}
