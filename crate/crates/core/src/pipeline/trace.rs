//! An ordered record of the intermediate maps produced by a construction.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::RingElement;
use crate::modules::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceValue {
    Map(Matrix),
    Element(RingElement),
    Indices(Vec<usize>),
    Integer(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub tag: String,
    pub value: TraceValue,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionTrace {
    entries: Vec<TraceEntry>,
}

impl ConstructionTrace {
    pub fn push(&mut self, tag: &str, value: TraceValue) {
        self.entries.push(TraceEntry { tag: tag.to_string(), value });
    }

    pub fn map(&mut self, tag: &str, m: &Matrix) {
        self.push(tag, TraceValue::Map(m.clone()));
    }

    pub fn element(&mut self, tag: &str, e: &RingElement) {
        self.push(tag, TraceValue::Element(e.clone()));
    }

    pub fn indices(&mut self, tag: &str, idx: &[usize]) {
        self.push(tag, TraceValue::Indices(idx.to_vec()));
    }

    pub fn integer(&mut self, tag: &str, n: &BigInt) {
        self.push(tag, TraceValue::Integer(n.clone()));
    }

    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, tag: &str) -> Option<&TraceValue> {
        self.entries.iter().find(|e| e.tag == tag).map(|e| &e.value)
    }

    /// Replaces the value of an existing entry; returns false if there is
    /// no entry with that tag.
    pub fn set(&mut self, tag: &str, value: TraceValue) -> bool {
        match self.entries.iter_mut().find(|e| e.tag == tag) {
            Some(e) => {
                e.value = value;
                true
            }
            None => false,
        }
    }

    pub fn get_map(&self, tag: &str) -> Option<&Matrix> {
        match self.get(tag) {
            Some(TraceValue::Map(m)) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for ConstructionTrace {
    /// Human-readable dump; indices are printed 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            match &e.value {
                TraceValue::Map(m) => write!(f, "{} ({}x{}):\n{}", e.tag, m.rows(), m.cols(), m)?,
                TraceValue::Element(x) => writeln!(f, "{} = {}", e.tag, x)?,
                TraceValue::Indices(v) => {
                    let s: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
                    writeln!(f, "{} = [{}]", e.tag, s.join(", "))?
                }
                TraceValue::Integer(n) => writeln!(f, "{} = {}", e.tag, n)?,
            }
        }
        Ok(())
    }
}
