//! A plain-text document holding a complex, optionally its self-duality
//! witness, a multiplication table and a construction trace.
//!
//! ```text
//! resdg-document v1
//! ring integers
//! vars x y z w
//! order grevlex
//! ranks 1 4 6 4 1
//! complex
//! map d1 1 4
//! [x, y, z, w]
//! map d2 4 6
//! ...
//! witness            (optional: phi0 .. phi4)
//! dg                 (optional: psi1 .. psi4)
//! trace              (optional: map / element / indices / integer entries)
//! end
//! ```
//!
//! Every matrix carries its shape, so a truncated file is detected, and the
//! closing `end` line is mandatory. Lines starting with `#` are comments.
//! Printing is canonical: `parse(print(doc)) == doc` and `print` is
//! deterministic.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::arith::{CoefficientDomain, MonomialOrder, PolyRing, Ring, RingElement};
use crate::complexes::{koszul_complex, koszul_witness, FreeComplex};
use crate::error::{Error, Result};
use crate::modules::Matrix;
use crate::pipeline::{ConstructionTrace, DGStructure, TraceValue};

pub const HEADER: &str = "resdg-document v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub complex: FreeComplex,
    pub witness: Option<[Matrix; 5]>,
    pub dg: Option<DGStructure>,
    pub trace: Option<ConstructionTrace>,
}

impl Document {
    pub fn new(complex: FreeComplex) -> Self {
        Document { complex, witness: None, dg: None, trace: None }
    }

    pub fn ring(&self) -> &Ring {
        self.complex.ring()
    }

    pub fn parse(text: &str) -> Result<Document> {
        Reader::new(text).document()
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        let ring = self.ring();
        let ranks: Vec<String> = self.complex.ranks().iter().map(ToString::to_string).collect();
        out.push_str(HEADER);
        out.push('\n');
        let _ = writeln!(out, "ring {}", ring.domain());
        if ring.vars().is_empty() {
            out.push_str("vars\n");
        } else {
            let _ = writeln!(out, "vars {}", ring.vars().join(" "));
        }
        let _ = writeln!(out, "order {}", ring.order());
        let _ = writeln!(out, "ranks {}", ranks.join(" "));
        out.push_str("complex\n");
        for k in 1..=4 {
            write_map(&mut out, &format!("d{k}"), self.complex.d(k));
        }
        if let Some(w) = &self.witness {
            out.push_str("witness\n");
            for (k, m) in w.iter().enumerate() {
                write_map(&mut out, &format!("phi{k}"), m);
            }
        }
        if let Some(d) = &self.dg {
            out.push_str("dg\n");
            write_map(&mut out, "psi1", &d.psi1);
            write_map(&mut out, "psi2", &d.psi2);
            write_map(&mut out, "psi3", &d.psi3);
            write_map(&mut out, "psi4", &d.psi4);
        }
        if let Some(t) = &self.trace {
            out.push_str("trace\n");
            for e in t.entries() {
                match &e.value {
                    TraceValue::Map(m) => write_map(&mut out, &e.tag, m),
                    TraceValue::Element(x) => {
                        let _ = writeln!(out, "element {} {}", e.tag, x);
                    }
                    TraceValue::Indices(v) => {
                        let s: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
                        let _ = writeln!(out, "indices {} {}", e.tag, s.join(" "));
                    }
                    TraceValue::Integer(n) => {
                        let _ = writeln!(out, "integer {} {}", e.tag, n);
                    }
                }
            }
        }
        out.push_str("end\n");
        out
    }
}

fn write_map(out: &mut String, name: &str, m: &Matrix) {
    let _ = writeln!(out, "map {} {} {}", name, m.rows(), m.cols());
    out.push_str(&m.to_string());
}

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Reader { lines, pos: 0 }
    }

    fn line_no(&self) -> usize {
        self.lines.get(self.pos).or(self.lines.last()).map_or(0, |l| l.0)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line_no(), msg)
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|l| l.1)
    }

    fn next(&mut self) -> Result<&'a str> {
        let l = self.peek().ok_or_else(|| self.err("unexpected end of document (missing `end`?)"))?;
        self.pos += 1;
        Ok(l)
    }

    /// The rest of a line starting with `key`.
    fn keyed(&mut self, key: &str) -> Result<&'a str> {
        let l = self.next()?;
        match l.split_once(char::is_whitespace) {
            Some((k, rest)) if k == key => Ok(rest.trim()),
            None if l == key => Ok(""),
            _ => {
                self.pos -= 1;
                Err(self.err(format!("expected `{key}`, found `{l}`")))
            }
        }
    }

    fn document(&mut self) -> Result<Document> {
        let h = self.next()?;
        if h != HEADER {
            self.pos -= 1;
            return Err(self.err(format!("expected `{HEADER}`")));
        }
        let dom = self.keyed("ring")?;
        let dom = CoefficientDomain::parse(dom).map_err(|e| self.err(e.to_string()))?;
        let vars: Vec<String> = self.keyed("vars")?.split_whitespace().map(String::from).collect();
        let order = MonomialOrder::parse(self.keyed("order")?).map_err(|e| self.err(e.to_string()))?;
        let ring = PolyRing::with_names(dom, vars, order).map_err(|e| self.err(e.to_string()))?;
        let ranks_line = self.keyed("ranks")?;
        let ranks: Vec<usize> = ranks_line
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| self.err(format!("bad ranks `{ranks_line}`")))?;
        if ranks.len() != 5 {
            return Err(self.err("ranks must list five numbers"));
        }

        self.keyed("complex")?;
        let mut d = Vec::with_capacity(4);
        for k in 1..=4 {
            d.push(self.named_map(&ring, &format!("d{k}"), Some((ranks[k - 1], ranks[k])))?);
        }
        let [d1, d2, d3, d4]: [Matrix; 4] = d.try_into().expect("four maps");
        let complex = FreeComplex::new(&ring, d1, d2, d3, d4)?;
        let mut doc = Document::new(complex);

        loop {
            match self.next()? {
                "end" => break,
                "witness" if doc.witness.is_none() => {
                    let mut w = Vec::with_capacity(5);
                    for k in 0..5 {
                        w.push(self.named_map(&ring, &format!("phi{k}"), Some((ranks[4 - k], ranks[k])))?);
                    }
                    doc.witness = Some(w.try_into().expect("five maps"));
                }
                "dg" if doc.dg.is_none() => {
                    let psi1 = self.named_map(&ring, "psi1", None)?;
                    let psi2 = self.named_map(&ring, "psi2", None)?;
                    let psi3 = self.named_map(&ring, "psi3", None)?;
                    let psi4 = self.named_map(&ring, "psi4", None)?;
                    doc.dg = Some(DGStructure { psi1, psi2, psi3, psi4 });
                }
                "trace" if doc.trace.is_none() => doc.trace = Some(self.trace(&ring)?),
                other => {
                    self.pos -= 1;
                    return Err(self.err(format!("unexpected section `{other}`")));
                }
            }
        }
        if let Some(l) = self.peek() {
            return Err(self.err(format!("content after `end`: `{l}`")));
        }
        Ok(doc)
    }

    fn trace(&mut self, ring: &Ring) -> Result<ConstructionTrace> {
        let mut t = ConstructionTrace::default();
        loop {
            let Some(l) = self.peek() else {
                return Err(self.err("unexpected end of document inside trace"));
            };
            let mut parts = l.splitn(3, char::is_whitespace);
            let (kind, tag, rest) = (parts.next().unwrap_or(""), parts.next().unwrap_or(""), parts.next().unwrap_or("").trim());
            match kind {
                "map" => {
                    let m = self.map(ring)?;
                    t.map(&m.0, &m.1);
                }
                "element" => {
                    let x = RingElement::parse(ring, rest).map_err(|e| self.err(e.to_string()))?;
                    t.element(tag, &x);
                    self.pos += 1;
                }
                "indices" => {
                    let v: Vec<usize> = rest
                        .split_whitespace()
                        .map(|s| s.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1))
                        .collect::<Option<_>>()
                        .ok_or_else(|| self.err(format!("bad index list `{rest}`")))?;
                    t.indices(tag, &v);
                    self.pos += 1;
                }
                "integer" => {
                    let n: BigInt = rest.parse().map_err(|_| self.err(format!("bad integer `{rest}`")))?;
                    t.integer(tag, &n);
                    self.pos += 1;
                }
                _ => return Ok(t),
            }
        }
    }

    fn named_map(&mut self, ring: &Ring, name: &str, shape: Option<(usize, usize)>) -> Result<Matrix> {
        let line = self.line_no();
        let (n, m) = self.map(ring)?;
        if n != name {
            return Err(Error::parse(line, format!("expected map `{name}`, found `{n}`")));
        }
        if let Some(s) = shape {
            if m.shape() != s {
                return Err(Error::parse(line, format!("{name} must be {}x{} for the declared ranks", s.0, s.1)));
            }
        }
        Ok(m)
    }

    fn map(&mut self, ring: &Ring) -> Result<(String, Matrix)> {
        let head = self.keyed("map")?;
        let parts: Vec<&str> = head.split_whitespace().collect();
        let [name, rows, cols] = parts[..] else {
            return Err(self.err(format!("expected `map <name> <rows> <cols>`, found `map {head}`")));
        };
        let (rows, cols): (usize, usize) = match (rows.parse(), cols.parse()) {
            (Ok(r), Ok(c)) => (r, c),
            _ => return Err(self.err(format!("bad shape `{rows} {cols}`"))),
        };
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let l = self.next()?;
            let inner = l
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::parse(self.line_no() - 1, format!("{name}: expected a row `[a, b, ...]`")))?;
            let row: Vec<RingElement> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|s| RingElement::parse(ring, s.trim()))
                    .collect::<Result<_>>()
                    .map_err(|e| Error::parse(self.lines[self.pos - 1].0, format!("{name}: {e}")))?
            };
            if row.len() != cols {
                return Err(Error::parse(self.lines[self.pos - 1].0, format!("{name}: row has {} entries, expected {cols}", row.len())));
            }
            data.push(row);
        }
        let m = if rows == 0 { Matrix::zeros(ring, 0, cols) } else { Matrix::from_rows(ring, data)? };
        Ok((name.to_string(), m))
    }
}

/// The Koszul complex on four ring elements with its standard witness and,
/// if asked, the exterior algebra multiplication.
pub fn generate_koszul(ring: &Ring, seq: &[RingElement], with_exterior: bool) -> Result<Document> {
    let complex = koszul_complex(ring, seq)?;
    let mut doc = Document::new(complex);
    doc.witness = Some(koszul_witness(ring));
    if with_exterior {
        doc.dg = Some(DGStructure::exterior(ring));
    }
    Ok(doc)
}
