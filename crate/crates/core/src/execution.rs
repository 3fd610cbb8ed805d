//! Running computons and morphisms on integer values.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ids::{ComputonId, DataTypeId};
use crate::machine::{Machine, Semantics};
use crate::space::Morphism;

/// An integer tagged with the data type it inhabits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Value {
    pub data_type: DataTypeId,
    pub value: i64,
}

impl Value {
    pub fn new(data_type: DataTypeId, value: i64) -> Self {
        Value { data_type, value }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.value, self.data_type)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("NoSemantics({0}): computon has no expression")]
    NoSemantics(ComputonId),
    #[error("unknown computon {0}")]
    UnknownComputon(ComputonId),
    #[error("TypeMismatch({computon}): expected input of type {expected}, got {found}")]
    TypeMismatch {
        computon: String,
        expected: DataTypeId,
        found: DataTypeId,
    },
    #[error("AbstractDataType({0}): values of this type are not integers")]
    AbstractDataType(DataTypeId),
    #[error("ArithmeticOverflow({0})")]
    ArithmeticOverflow(ComputonId),
}

fn check_numeric(m: &Machine, d: &DataTypeId) -> Result<(), EvalError> {
    match m.data_type(d).and_then(|t| t.semantics) {
        Some(Semantics::Abstract) => Err(EvalError::AbstractDataType(d.clone())),
        _ => Ok(()),
    }
}

/// Applies computon `f` to `v`; the result is tagged with `cod(f)`.
pub fn eval_computon(m: &Machine, f: &ComputonId, v: &Value) -> Result<Value, EvalError> {
    let c = m
        .computon(f)
        .ok_or_else(|| EvalError::UnknownComputon(f.clone()))?;
    if v.data_type != c.dom {
        return Err(EvalError::TypeMismatch {
            computon: f.to_string(),
            expected: c.dom.clone(),
            found: v.data_type.clone(),
        });
    }
    let expr = c
        .expr
        .as_ref()
        .ok_or_else(|| EvalError::NoSemantics(f.clone()))?;
    check_numeric(m, &c.dom)?;
    check_numeric(m, &c.cod)?;
    let out = expr
        .eval(v.value)
        .map_err(|_| EvalError::ArithmeticOverflow(f.clone()))?;
    Ok(Value::new(c.cod.clone(), out))
}

/// Identity returns `v`; otherwise folds [`eval_computon`] over the
/// constituents in application order.
pub fn eval_morphism(m: &Machine, mo: &Morphism, v: &Value) -> Result<Value, EvalError> {
    if &v.data_type != mo.input() {
        return Err(EvalError::TypeMismatch {
            computon: mo.to_string(),
            expected: mo.input().clone(),
            found: v.data_type.clone(),
        });
    }
    mo.computons()
        .iter()
        .try_fold(v.clone(), |acc, f| eval_computon(m, f, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::space::{compose, parse_morphism};

    fn d(s: &str) -> DataTypeId {
        DataTypeId::new(s).unwrap()
    }

    fn f(s: &str) -> ComputonId {
        ComputonId::new(s).unwrap()
    }

    #[test]
    fn single_computon() {
        let m = fixtures::walkthrough();
        // f1 = x + 1
        assert_eq!(
            eval_computon(&m, &f("f1"), &Value::new(d("d1"), 5)).unwrap(),
            Value::new(d("d2"), 6)
        );
        assert!(matches!(
            eval_computon(&m, &f("f1"), &Value::new(d("d3"), 5)),
            Err(EvalError::TypeMismatch { .. })
        ));
        assert!(matches!(
            eval_computon(&m, &f("f2"), &Value::new(d("d2"), i64::MAX)),
            Err(EvalError::ArithmeticOverflow(_))
        ));
    }

    #[test]
    fn composites_are_sequential_application() {
        let m = fixtures::walkthrough();
        // (3 + 1) * 2
        let mo = parse_morphism(&m, "f2∘f1").unwrap();
        assert_eq!(
            eval_morphism(&m, &mo, &Value::new(d("d1"), 3))
                .unwrap()
                .value,
            8
        );
        // ((3 + 1) * 2) - 5
        let mo = parse_morphism(&m, "f3∘f2∘f1").unwrap();
        let out = eval_morphism(&m, &mo, &Value::new(d("d1"), 3)).unwrap();
        assert_eq!(out, Value::new(d("d4"), 3));
    }

    #[test]
    fn identity_returns_input() {
        let m = fixtures::walkthrough();
        let id = parse_morphism(&m, "id:d5").unwrap();
        assert_eq!(
            eval_morphism(&m, &id, &Value::new(d("d5"), 7)).unwrap(),
            Value::new(d("d5"), 7)
        );
        let f = parse_morphism(&m, "f6∘f5").unwrap();
        let unit = compose(&parse_morphism(&m, "id:d6").unwrap(), &f).unwrap();
        for x in -20..20 {
            let v = Value::new(d("d6"), x);
            assert_eq!(eval_morphism(&m, &unit, &v), eval_morphism(&m, &f, &v));
        }
    }

    #[test]
    fn structure_only_machines_refuse() {
        let m = fixtures::example1();
        let mo = parse_morphism(&m, "f2∘f1").unwrap();
        assert_eq!(
            eval_morphism(&m, &mo, &Value::new(d("d1"), 1)),
            Err(EvalError::NoSemantics(f("f1")))
        );
    }

    #[test]
    fn abstract_types_refuse() {
        let mut spec = fixtures::walkthrough().to_spec();
        spec.data_types[1].semantics = Some(Semantics::Abstract);
        let m = crate::validate_machine(&spec).unwrap();
        assert_eq!(
            eval_computon(&m, &f("f1"), &Value::new(d("d1"), 1)),
            Err(EvalError::AbstractDataType(d("d2")))
        );
    }
}
