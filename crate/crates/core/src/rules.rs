//! Bit-encoded local transition rules.
//!
//! With alive = 1 and dead = 0, a rule of arity `k` maps the input tuple
//! `(s1, .., sk)` to bit `Σ s_i·2^(k-i)` of its rule number. This is the
//! elementary cellular automaton numbering, so ternary rule 54 here is
//! Wolfram's Rule 54.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("unknown rule name {0:?}")]
    UnknownRuleName(String),
    #[error("rule number {value} out of range for arity {arity} (max {max})")]
    OutOfRange { arity: u8, value: u32, max: u32 },
    #[error("rule {name:?} does not have arity {arity}")]
    WrongArity { name: String, arity: u8 },
    #[error("arity must be 1, 2 or 3, got {0}")]
    BadArity(u8),
}

/// The four local transition functions δ1..δ4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleSet {
    pub delta1: u8,
    pub delta2: u8,
    pub delta3: u8,
    pub delta4: u8,
}

impl RuleSet {
    pub fn new(delta1: u8, delta2: u8, delta3: u8, delta4: u8) -> Result<Self, RuleError> {
        check_range(1, delta1 as u32)?;
        check_range(2, delta2 as u32)?;
        check_range(2, delta3 as u32)?;
        Ok(Self {
            delta1,
            delta2,
            delta3,
            delta4,
        })
    }

    /// Isolated organism.
    pub fn apply1(&self, s: bool) -> bool {
        bit(self.delta1, s as u8)
    }

    /// Organism with only a right neighbour: `(self, right)`.
    pub fn apply2(&self, s: bool, right: bool) -> bool {
        bit(self.delta2, (s as u8) << 1 | right as u8)
    }

    /// Organism with only a left neighbour: `(left, self)`.
    pub fn apply3(&self, left: bool, s: bool) -> bool {
        bit(self.delta3, (left as u8) << 1 | s as u8)
    }

    pub fn apply4(&self, left: bool, s: bool, right: bool) -> bool {
        bit(
            self.delta4,
            (left as u8) << 2 | (s as u8) << 1 | right as u8,
        )
    }
}

fn bit(rule: u8, index: u8) -> bool {
    (rule >> index) & 1 == 1
}

fn max_for_arity(arity: u8) -> u32 {
    (1u32 << (1u32 << arity)) - 1
}

pub(crate) fn check_range(arity: u8, value: u32) -> Result<u8, RuleError> {
    let max = max_for_arity(arity);
    if value > max {
        Err(RuleError::OutOfRange { arity, value, max })
    } else {
        Ok(value as u8)
    }
}

/// One row of an expanded rule table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleRow {
    pub inputs: Vec<bool>,
    pub output: bool,
}

/// Expands `rule` of the given arity into rows ordered from the all-alive
/// input down to the all-dead input.
pub fn rule_table(rule: u8, arity: u8) -> Result<Vec<RuleRow>, RuleError> {
    if !(1..=3).contains(&arity) {
        return Err(RuleError::BadArity(arity));
    }
    check_range(arity, rule as u32)?;
    let patterns = 1u8 << arity;
    Ok((0..patterns)
        .rev()
        .map(|idx| RuleRow {
            inputs: (0..arity).rev().map(|b| (idx >> b) & 1 == 1).collect(),
            output: bit(rule, idx),
        })
        .collect())
}

/// Inverse of [`rule_table`]: packs rows back into a rule number.
pub fn encode_table(rows: &[RuleRow]) -> u8 {
    rows.iter()
        .filter(|r| r.output)
        .map(|r| r.inputs.iter().fold(0u8, |acc, &s| acc << 1 | s as u8))
        .fold(0u8, |acc, idx| acc | 1 << idx)
}

/// A named rule resolved to the δ slot(s) it can fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedRule {
    Unary(u8),
    Binary(u8),
    Ternary(u8),
}

impl NamedRule {
    pub fn arity(self) -> u8 {
        match self {
            NamedRule::Unary(_) => 1,
            NamedRule::Binary(_) => 2,
            NamedRule::Ternary(_) => 3,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            NamedRule::Unary(n) | NamedRule::Binary(n) | NamedRule::Ternary(n) => n,
        }
    }
}

/// Resolves `NOT`, `ID`, `XOR`, `OR`, `AND` and `RULE<n>` (n in 0..=255).
pub fn named_rule(name: &str) -> Result<NamedRule, RuleError> {
    match name {
        "NOT" => Ok(NamedRule::Unary(0b01)),
        "ID" => Ok(NamedRule::Unary(0b10)),
        "XOR" => Ok(NamedRule::Binary(0b0110)),
        "OR" => Ok(NamedRule::Binary(0b1110)),
        "AND" => Ok(NamedRule::Binary(0b1000)),
        _ => name
            .strip_prefix("RULE")
            .filter(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|n| n.parse::<u8>().ok())
            .map(NamedRule::Ternary)
            .ok_or_else(|| RuleError::UnknownRuleName(name.to_string())),
    }
}

/// Resolves a rule given as a name for a slot of the given arity.
pub fn resolve_named(name: &str, arity: u8) -> Result<u8, RuleError> {
    let rule = named_rule(name)?;
    if rule.arity() != arity {
        return Err(RuleError::WrongArity {
            name: name.to_string(),
            arity,
        });
    }
    Ok(rule.number())
}
