//! Outcome records for single inequality checks.

use alloc::vec::Vec;

/// A value stored in a certificate's context bag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CtxValue {
    Int(i64),
    Real(f64),
    Text(&'static str),
}

impl From<usize> for CtxValue {
    fn from(v: usize) -> Self {
        CtxValue::Int(v as i64)
    }
}

impl From<i64> for CtxValue {
    fn from(v: i64) -> Self {
        CtxValue::Int(v)
    }
}

impl From<u32> for CtxValue {
    fn from(v: u32) -> Self {
        CtxValue::Int(v as i64)
    }
}

impl From<f64> for CtxValue {
    fn from(v: f64) -> Self {
        CtxValue::Real(v)
    }
}

impl From<&'static str> for CtxValue {
    fn from(v: &'static str) -> Self {
        CtxValue::Text(v)
    }
}

/// Ordered key/value bag. Insertion order is kept so serialized output is
/// stable.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Context(Vec<(&'static str, CtxValue)>);

impl Context {
    pub fn new() -> Self {
        Context(Vec::new())
    }

    pub fn push(&mut self, key: &'static str, value: impl Into<CtxValue>) {
        self.0.push((key, value.into()));
    }

    pub fn get(&self, key: &str) -> Option<CtxValue> {
        self.0.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(&'static str, CtxValue)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One checked instance of an inequality `lhs <= rhs`.
///
/// `slack = rhs - lhs` and `pass` is exactly `slack >= -tol`. A NaN on either
/// side never passes.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub id: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub tol: f64,
    pub pass: bool,
    pub context: Context,
}

impl Certificate {
    pub fn new(id: &'static str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        Certificate { id, lhs, rhs, slack, tol, pass: slack >= -tol, context: Context::new() }
    }

    /// Builder-style context insertion.
    pub fn with(mut self, key: &'static str, value: impl Into<CtxValue>) -> Self {
        self.context.push(key, value);
        self
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::*;
    use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

    impl Serialize for CtxValue {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            match *self {
                CtxValue::Int(v) => s.serialize_i64(v),
                CtxValue::Real(v) => s.serialize_f64(v),
                CtxValue::Text(v) => s.serialize_str(v),
            }
        }
    }

    impl Serialize for Context {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut map = s.serialize_map(Some(self.0.len()))?;
            for (k, v) in &self.0 {
                map.serialize_entry(k, v)?;
            }
            map.end()
        }
    }

    impl Serialize for Certificate {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut st = s.serialize_struct("Certificate", 7)?;
            st.serialize_field("id", self.id)?;
            st.serialize_field("lhs", &self.lhs)?;
            st.serialize_field("rhs", &self.rhs)?;
            st.serialize_field("slack", &self.slack)?;
            st.serialize_field("tol", &self.tol)?;
            st.serialize_field("pass", &self.pass)?;
            st.serialize_field("context", &self.context)?;
            st.end()
        }
    }
}
