//! Exhaustive generation of the unital rings of a given order.
//!
//! For each abelian group `⊕ Z_{d_i}` of the target order, a
//! multiplication is fixed by its structure constants `e_i · e_j`, with
//! `e_i · e_j` killed by `gcd(d_i, d_j)`. Constants are placed one at a
//! time; after each placement every basis triple whose associator can
//! already be evaluated is checked, and failing branches are cut. Complete
//! assignments are scanned for a unity and validated exhaustively.
//!
//! Work is split into units `(shape, value of the first constant)`.
//! Workers take units in any order but results are merged in unit order,
//! so output does not depend on the worker count.

pub mod canon;
pub mod shapes;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use thiserror::Error;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use shapes::{abelian_group_shapes, AdditiveGroupShape};

use crate::arith::gcd;
use crate::error::RingError;
use crate::ring::TableRing;

/// Largest order that is enumerated without an explicit node budget.
pub const MANDATORY_MAX_ORDER: usize = 8;
/// Largest order accepted at all.
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    /// Constants placed row-major, candidate values ascending.
    #[default]
    Forward,
    /// Constants placed in reverse, candidate values descending.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub up_to_iso: bool,
    pub jobs: usize,
    /// Search nodes allowed. `None` means unlimited up to
    /// [`MANDATORY_MAX_ORDER`] and zero above it.
    pub node_budget: Option<u64>,
    pub resume: Option<ResumeToken>,
    pub search_order: SearchOrder,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            up_to_iso: false,
            jobs: 1,
            node_budget: None,
            resume: None,
            search_order: SearchOrder::Forward,
        }
    }
}

/// Position in the work-unit sequence: `order:shape:first`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ResumeToken {
    pub order: usize,
    pub shape: usize,
    pub first: usize,
}

impl fmt::Display for ResumeToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.order, self.shape, self.first)
    }
}

impl FromStr for ResumeToken {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|e| format!("bad resume token {s:?}: {e}"));
        match parts.as_slice() {
            [o, sh, fi] => Ok(ResumeToken { order: num(o)?, shape: num(sh)?, first: num(fi)? }),
            _ => Err(format!("bad resume token {s:?}: expected order:shape:first")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Enumeration {
    /// Raw rings in search order, or canonical representatives sorted by
    /// canonical form when classing up to isomorphism.
    pub rings: Vec<TableRing>,
    /// Labeled rings found, before isomorphism classing.
    pub raw_count: usize,
    pub nodes: u64,
}

#[derive(Debug, Error)]
pub enum EnumerateError {
    #[error("node budget exhausted after {nodes} nodes; resume with token {resume}")]
    BudgetExceeded {
        partial: Enumeration,
        resume: ResumeToken,
        nodes: u64,
    },
    #[error("order {0} is outside the supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("resume token {0} does not match this enumeration")]
    BadResume(ResumeToken),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Precomputed arithmetic on one additive shape.
struct Group {
    n: usize,
    factors: Vec<usize>,
    add: Vec<usize>,
    coords: Vec<Vec<usize>>,
    /// scale[m][x] = m·x for m below the exponent
    scale: Vec<Vec<usize>>,
}

impl Group {
    fn new(shape: &AdditiveGroupShape) -> Group {
        let n = shape.order();
        let add = (0..n * n).map(|k| shape.add(k / n, k % n)).collect();
        let coords = (0..n).map(|x| shape.coords(x)).collect();
        let exponent = shape.invariant_factors.first().copied().unwrap_or(1);
        let scale = (0..exponent)
            .map(|m| {
                (0..n)
                    .map(|x| {
                        let c: Vec<usize> = shape.coords(x).iter().map(|&v| v * m).collect();
                        shape.from_coords(&c)
                    })
                    .collect()
            })
            .collect();
        Group { n, factors: shape.invariant_factors.clone(), add, coords, scale }
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    #[inline]
    fn times(&self, m: usize, x: usize) -> usize {
        self.scale[m][x]
    }

    /// Elements killed by `g`.
    fn killed_by(&self, g: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&x| self.coords[x].iter().zip(&self.factors).all(|(&c, &d)| (c * g).is_multiple_of(d)))
            .collect()
    }
}

struct Search<'a> {
    group: &'a Group,
    k: usize,
    positions: Vec<(usize, usize)>,
    candidates: Vec<Vec<usize>>,
    consts: Vec<Option<usize>>,
    nodes: &'a AtomicU64,
    budget: u64,
    abort: &'a AtomicBool,
    found: Vec<TableRing>,
    shape: &'a AdditiveGroupShape,
}

impl Search<'_> {
    fn c(&self, i: usize, j: usize) -> Option<usize> {
        self.consts[i * self.k + j]
    }

    /// `x · e_col` where only constants in column `col` are consulted.
    fn left_combo(&self, x: usize, col: usize) -> Option<usize> {
        let mut acc = 0;
        for (l, &m) in self.group.coords[x].iter().enumerate() {
            if m != 0 {
                acc = self.group.add(acc, self.group.times(m, self.c(l, col)?));
            }
        }
        Some(acc)
    }

    /// `e_row · x`.
    fn right_combo(&self, row: usize, x: usize) -> Option<usize> {
        let mut acc = 0;
        for (l, &m) in self.group.coords[x].iter().enumerate() {
            if m != 0 {
                acc = self.group.add(acc, self.group.times(m, self.c(row, l)?));
            }
        }
        Some(acc)
    }

    /// False when some evaluable basis associator is nonzero.
    fn consistent(&self) -> bool {
        let k = self.k;
        for i in 0..k {
            for j in 0..k {
                let Some(ij) = self.c(i, j) else { continue };
                for l in 0..k {
                    let Some(jl) = self.c(j, l) else { continue };
                    let (Some(lhs), Some(rhs)) = (self.left_combo(ij, l), self.right_combo(i, jl)) else {
                        continue;
                    };
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if self.abort.load(Ordering::Relaxed) {
            return false;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            self.abort.store(true, Ordering::Relaxed);
            return false;
        }
        if depth == self.positions.len() {
            self.leaf();
            return true;
        }
        let (i, j) = self.positions[depth];
        let slot = i * self.k + j;
        for ci in 0..self.candidates[depth].len() {
            self.consts[slot] = Some(self.candidates[depth][ci]);
            if self.consistent() && !self.run(depth + 1) {
                self.consts[slot] = None;
                return false;
            }
        }
        self.consts[slot] = None;
        true
    }

    fn product(&self, x: usize, y: usize) -> usize {
        let g = self.group;
        let mut acc = 0;
        for (i, &a) in g.coords[x].iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.coords[y].iter().enumerate() {
                if b != 0 {
                    let m = (a * b) % g.factors[0].max(1);
                    acc = g.add(acc, g.times(m, self.consts[i * self.k + j].unwrap()));
                }
            }
        }
        acc
    }

    fn leaf(&mut self) {
        let g = self.group;
        let basis = &self.shape.generators;
        let unity = (0..g.n).find(|&e| {
            (0..self.k).all(|i| {
                self.left_combo(e, i) == Some(basis[i]) && self.right_combo(i, e) == Some(basis[i])
            })
        });
        let Some(one) = unity else { return };
        let n = g.n;
        let mul = (0..n * n).map(|t| self.product(t / n, t % n) as u32).collect();
        self.found.push(TableRing {
            order: n,
            add: g.add.iter().map(|&v| v as u32).collect(),
            mul,
            zero: 0,
            one,
            additive_type: g.factors.clone(),
        });
    }
}

struct Unit {
    token: ResumeToken,
    shape: usize,
    first: Option<usize>,
}

fn positions(k: usize, order: SearchOrder) -> Vec<(usize, usize)> {
    let mut p: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    if order == SearchOrder::Reversed {
        p.reverse();
    }
    p
}

fn candidates(group: &Group, positions: &[(usize, usize)], order: SearchOrder) -> Vec<Vec<usize>> {
    positions
        .iter()
        .map(|&(i, j)| {
            let mut c = group.killed_by(gcd(group.factors[i] as u64, group.factors[j] as u64) as usize);
            if order == SearchOrder::Reversed {
                c.reverse();
            }
            c
        })
        .collect()
}

/// Every unital ring of the given order, as validated tables.
pub fn enumerate_unital_rings(order: usize, opts: &EnumerateOptions) -> Result<Enumeration, EnumerateError> {
    if order == 0 || order > MAX_ORDER {
        return Err(EnumerateError::OrderOutOfRange(order));
    }
    let budget = opts.node_budget.unwrap_or(if order <= MANDATORY_MAX_ORDER { u64::MAX } else { 0 });
    let shapes = abelian_group_shapes(order);
    let groups: Vec<Group> = shapes.iter().map(Group::new).collect();
    let plans: Vec<(Vec<(usize, usize)>, Vec<Vec<usize>>)> = groups
        .iter()
        .zip(&shapes)
        .map(|(g, s)| {
            let p = positions(s.invariant_factors.len(), opts.search_order);
            let c = candidates(g, &p, opts.search_order);
            (p, c)
        })
        .collect();

    let mut units = Vec::new();
    for (si, (_, cands)) in plans.iter().enumerate() {
        match cands.first() {
            None => units.push(Unit { token: ResumeToken { order, shape: si, first: 0 }, shape: si, first: None }),
            Some(first) => units.extend((0..first.len()).map(|fi| Unit {
                token: ResumeToken { order, shape: si, first: fi },
                shape: si,
                first: Some(fi),
            })),
        }
    }
    if let Some(tok) = opts.resume {
        if tok.order != order || !units.iter().any(|u| u.token == tok) {
            return Err(EnumerateError::BadResume(tok));
        }
        units.retain(|u| u.token >= tok);
    }

    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Vec<TableRing>>>> = Mutex::new(vec![None; units.len()]);
    let jobs = opts.jobs.max(1).min(units.len().max(1));

    let work = || loop {
        let u = next.fetch_add(1, Ordering::Relaxed);
        if u >= units.len() || abort.load(Ordering::Relaxed) {
            return;
        }
        let unit = &units[u];
        let (pos, cands) = &plans[unit.shape];
        let k = shapes[unit.shape].invariant_factors.len();
        let mut search = Search {
            group: &groups[unit.shape],
            k,
            positions: pos.clone(),
            candidates: cands.clone(),
            consts: vec![None; k * k],
            nodes: &nodes,
            budget,
            abort: &abort,
            found: Vec::new(),
            shape: &shapes[unit.shape],
        };
        let complete = match unit.first {
            None => search.run(0),
            Some(fi) => {
                search.candidates[0] = vec![cands[0][fi]];
                search.run(0)
            }
        };
        if complete {
            results.lock().unwrap()[u] = Some(search.found);
        }
    };
    std::thread::scope(|s| {
        for _ in 1..jobs {
            s.spawn(work);
        }
        work();
    });

    let results = results.into_inner().unwrap();
    let done = results.iter().take_while(|r| r.is_some()).count();
    let mut raw = Vec::new();
    for r in results.into_iter().take(done) {
        raw.extend(r.unwrap());
    }
    for t in &raw {
        t.validate()?;
    }
    let raw_count = raw.len();
    let rings = if opts.up_to_iso { class_representatives(&raw)? } else { raw };
    let out = Enumeration { rings, raw_count, nodes: nodes.load(Ordering::Relaxed) };
    if done < units.len() {
        return Err(EnumerateError::BudgetExceeded { resume: units[done].token, nodes: out.nodes, partial: out });
    }
    Ok(out)
}

/// One canonical table per isomorphism class, sorted by canonical form.
pub fn class_representatives(rings: &[TableRing]) -> Result<Vec<TableRing>, RingError> {
    let mut classes = BTreeMap::new();
    for r in rings {
        let c = canonical_form(r)?;
        classes.entry(c).or_insert(());
    }
    Ok(classes.into_keys().map(|c| c.to_table_ring()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis;
    use crate::ring::Ring;

    fn run(order: usize, up_to_iso: bool) -> Enumeration {
        enumerate_unital_rings(order, &EnumerateOptions { up_to_iso, ..Default::default() }).unwrap()
    }

    #[test]
    fn prime_orders_have_one_ring() {
        assert_eq!(run(2, true).rings.len(), 1);
        assert_eq!(run(3, true).rings.len(), 1);
        assert_eq!(run(5, true).rings.len(), 1);
        assert_eq!(run(2, false).raw_count, 1);
    }

    #[test]
    fn order_one_is_the_zero_ring() {
        let e = run(1, false);
        assert_eq!(e.rings.len(), 1);
        assert_eq!(e.rings[0].one, 0);
    }

    #[test]
    fn order_four_signatures() {
        let e = run(4, true);
        let mut sig: Vec<(u64, usize, bool)> = e
            .rings
            .iter()
            .map(|t| {
                let r = Ring::from_table(t).unwrap();
                let u = analysis::unit_group(&r).unwrap();
                (analysis::characteristic(&r), u.count, analysis::is_boolean(&r))
            })
            .collect();
        sig.sort();
        assert_eq!(sig, vec![(2, 1, true), (2, 2, false), (2, 3, false), (4, 2, false)]);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = enumerate_unital_rings(8, &EnumerateOptions { jobs: 1, ..Default::default() }).unwrap();
        let four = enumerate_unital_rings(8, &EnumerateOptions { jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(one.rings, four.rings);
    }

    #[test]
    fn budget_yields_resume_token() {
        let opts = EnumerateOptions { node_budget: Some(5), ..Default::default() };
        match enumerate_unital_rings(4, &opts) {
            Err(EnumerateError::BudgetExceeded { resume, .. }) => {
                assert_eq!(resume.order, 4);
                let back: ResumeToken = resume.to_string().parse().unwrap();
                assert_eq!(back, resume);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn resuming_completes_the_enumeration() {
        let full = run(8, false);
        let mut collected = Vec::new();
        let mut resume = None;
        loop {
            let opts = EnumerateOptions { node_budget: Some(20_000), resume, ..Default::default() };
            match enumerate_unital_rings(8, &opts) {
                Ok(e) => {
                    collected.extend(e.rings);
                    break;
                }
                Err(EnumerateError::BudgetExceeded { partial, resume: tok, .. }) => {
                    collected.extend(partial.rings);
                    resume = Some(tok);
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(collected, full.rings);
    }

    #[test]
    fn large_orders_need_an_explicit_budget() {
        let e = enumerate_unital_rings(12, &EnumerateOptions::default()).unwrap_err();
        match e {
            EnumerateError::BudgetExceeded { resume, .. } => assert_eq!(resume.to_string(), "12:0:0"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            enumerate_unital_rings(17, &EnumerateOptions::default()),
            Err(EnumerateError::OrderOutOfRange(17))
        ));
    }
}
