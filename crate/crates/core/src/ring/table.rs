//! Rings given by explicit addition and multiplication tables, and their
//! plain-text serialization.
//!
//! Text format, one ring per block:
//!
//! ```text
//! order zero one additive_type
//! <order lines: add_table rows>
//! <order lines: mul_table rows>
//! ```
//!
//! `additive_type` is the comma-joined list of invariant factors (`4,2`),
//! or `-` for the zero ring. Entries are space separated and every line
//! ends with `\n`.

use std::fmt::Write as _;

use serde::Serialize;

use super::{Ring, EAGER_MAX};
use crate::enumeration::shapes::detect_shape;
use crate::error::{Result, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TableRing {
    pub order: usize,
    /// Row-major `order × order`.
    pub add: Vec<u32>,
    /// Row-major `order × order`.
    pub mul: Vec<u32>,
    pub zero: usize,
    pub one: usize,
    pub additive_type: Vec<usize>,
}

impl TableRing {
    #[inline]
    pub fn add_at(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul_at(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// Tables of a structured ring; the additive type is detected.
    pub fn from_ring(r: &Ring) -> Result<TableRing> {
        let n = r.order();
        if n > EAGER_MAX {
            return Err(RingError::OrderTooLarge { order: n as u128, cap: EAGER_MAX as u128 });
        }
        let (add, mul) = match r.tables() {
            Some(t) => (t.add.clone(), t.mul.clone()),
            None => {
                let mut add = Vec::with_capacity(n * n);
                let mut mul = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        add.push(r.add_idx(a, b) as u32);
                        mul.push(r.mul_idx(a, b) as u32);
                    }
                }
                (add, mul)
            }
        };
        let additive_type = match r.additive_type_hint() {
            Some(t) => t.to_vec(),
            None => detect_shape(n, &|a, b| add[a * n + b] as usize)
                .ok_or_else(|| RingError::Invariant("additive group not abelian".into()))?,
        };
        Ok(TableRing { order: n, add, mul, zero: 0, one: r.one_idx(), additive_type })
    }

    /// Exhaustive check of all unital-ring axioms and the declared
    /// additive type. Reports the first failing axiom with a witness.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(RingError::ZeroOrder);
        }
        if n > EAGER_MAX {
            return Err(RingError::OrderTooLarge { order: n as u128, cap: EAGER_MAX as u128 });
        }
        if self.add.len() != n * n || self.mul.len() != n * n {
            return Err(RingError::TableShape(format!("expected {} entries per table", n * n)));
        }
        if let Some(bad) = self.add.iter().chain(&self.mul).find(|&&v| v as usize >= n) {
            return Err(RingError::TableShape(format!("entry {bad} out of range")));
        }
        if self.zero >= n || self.one >= n {
            return Err(RingError::TableShape("zero/one out of range".into()));
        }
        if self.zero != 0 {
            return Err(RingError::ZeroNotIndexZero(self.zero));
        }
        let (add, mul) = (|a, b| self.add_at(a, b), |a, b| self.mul_at(a, b));
        let fail = |axiom, witness: Vec<usize>| Err(RingError::AxiomViolation { axiom, witness });

        for a in 0..n {
            if add(a, 0) != a || add(0, a) != a {
                return fail("additive identity", vec![a]);
            }
            if !(0..n).any(|b| add(a, b) == 0) {
                return fail("additive inverse", vec![a]);
            }
            for b in 0..n {
                if add(a, b) != add(b, a) {
                    return fail("additive commutativity", vec![a, b]);
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let (ab, mab) = (add(a, b), mul(a, b));
                for c in 0..n {
                    if add(ab, c) != add(a, add(b, c)) {
                        return fail("additive associativity", vec![a, b, c]);
                    }
                    if mul(mab, c) != mul(a, mul(b, c)) {
                        return fail("multiplicative associativity", vec![a, b, c]);
                    }
                    if mul(a, add(b, c)) != add(mab, mul(a, c)) {
                        return fail("left distributivity", vec![a, b, c]);
                    }
                    if mul(add(a, b), c) != add(mul(a, c), mul(b, c)) {
                        return fail("right distributivity", vec![a, b, c]);
                    }
                }
            }
        }
        let is_unity = |e: usize| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x);
        if !is_unity(self.one) {
            return match (0..n).find(|&e| is_unity(e)) {
                Some(actual) => Err(RingError::WrongUnity { declared: self.one, actual }),
                None => Err(RingError::NoUnity),
            };
        }
        let detected = detect_shape(n, &|a, b| add(a, b));
        if detected.as_deref() != Some(self.additive_type.as_slice()) {
            return Err(RingError::AdditiveTypeMismatch { declared: self.additive_type.clone() });
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ty = if self.additive_type.is_empty() {
            "-".to_string()
        } else {
            self.additive_type.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        };
        writeln!(out, "{} {} {} {}", self.order, self.zero, self.one, ty).unwrap();
        for table in [&self.add, &self.mul] {
            for row in table.chunks(self.order) {
                let cells: Vec<String> = row.iter().map(u32::to_string).collect();
                writeln!(out, "{}", cells.join(" ")).unwrap();
            }
        }
        out
    }

    /// Parses one or more concatenated ring blocks. Blank lines between
    /// blocks are ignored. Tables are not validated here.
    pub fn parse_many(text: &str) -> Result<Vec<TableRing>> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).peekable();
        let mut out = Vec::new();
        while let Some((ln, header)) = lines.next() {
            let err = |line: usize, msg: String| RingError::Format { line: line + 1, msg };
            let parts: Vec<&str> = header.split_whitespace().collect();
            if parts.len() != 4 {
                return Err(err(ln, "header needs `order zero one additive_type`".into()));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|e| err(ln, format!("{s}: {e}")));
            let (order, zero, one) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
            let additive_type = if parts[3] == "-" {
                Vec::new()
            } else {
                parts[3].split(',').map(num).collect::<Result<_>>()?
            };
            let mut tables = [Vec::with_capacity(order * order), Vec::with_capacity(order * order)];
            for table in tables.iter_mut() {
                for _ in 0..order {
                    let (rl, row) = lines.next().ok_or_else(|| err(ln, "truncated table".into()))?;
                    let cells = row
                        .split_whitespace()
                        .map(|c| c.parse::<u32>().map_err(|e| err(rl, format!("{c}: {e}"))))
                        .collect::<Result<Vec<u32>>>()?;
                    if cells.len() != order {
                        return Err(err(rl, format!("expected {order} entries, found {}", cells.len())));
                    }
                    table.extend(cells);
                }
            }
            let [add, mul] = tables;
            out.push(TableRing { order, add, mul, zero, one, additive_type });
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<TableRing> {
        let mut all = Self::parse_many(text)?;
        if all.len() != 1 {
            return Err(RingError::Format { line: 1, msg: format!("expected one ring, found {}", all.len()) });
        }
        Ok(all.remove(0))
    }
}
