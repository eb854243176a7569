//! The uniform ring interface and its constructors.
//!
//! Every ring exposes its elements as canonical indices `0..order`, with
//! index 0 the additive zero. Small rings carry materialized addition and
//! multiplication tables; larger structured rings (matrices, products)
//! compute on demand from their components.

pub mod field;
pub mod matrix;
pub mod table;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::arith::mod_inverse;
use crate::error::{Result, RingError};

pub use field::FieldSpec;
pub use table::TableRing;

/// Structured rings up to this order get materialized tables.
pub const MATERIALIZE_MAX: usize = 1024;
/// Cap for rings that need explicit tables (table and quotient rings) and
/// for cubic-cost scans such as the radical.
pub const EAGER_MAX: usize = 4096;
/// Cap for lazily evaluated rings.
pub const LAZY_MAX: u128 = 1 << 48;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u64);

/// An element of one specific ring, by canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    ring: RingId,
    index: usize,
}

impl Elem {
    pub fn index(self) -> usize {
        self.index
    }

    pub fn ring_id(self) -> RingId {
        self.ring
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Modular,
    Field,
    Matrix,
    Triangular,
    Product,
    Table,
    Quotient,
}

pub(crate) struct Tables {
    pub add: Vec<u32>,
    pub mul: Vec<u32>,
    pub neg: Vec<u32>,
}

enum Repr {
    Modular { n: usize },
    Field(FieldSpec),
    Matrix { n: usize, base: Ring },
    Triangular { n: usize, base: Ring, slots: Vec<(usize, usize)> },
    Product { factors: Vec<Ring> },
    Table { additive_type: Vec<usize> },
    Quotient { parent: Ring, reps: Vec<usize>, ideal: Vec<usize> },
}

struct Inner {
    id: RingId,
    order: usize,
    one: usize,
    label: String,
    repr: Repr,
    tables: Option<Tables>,
    inverses: OnceLock<Vec<u32>>,
}

/// A finite unital ring. Cloning is cheap and shares the same ring.
#[derive(Clone)]
pub struct Ring(Arc<Inner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, order {})", self.0.label, self.0.order)
    }
}

const NO_INVERSE: u32 = u32::MAX;

impl Ring {
    fn build(order: usize, one: usize, label: String, repr: Repr) -> Ring {
        let ring = Ring(Arc::new(Inner {
            id: RingId(NEXT_ID.fetch_add(1, Ordering::Relaxed)),
            order,
            one,
            label,
            repr,
            tables: None,
            inverses: OnceLock::new(),
        }));
        if order <= MATERIALIZE_MAX {
            ring.materialize()
        } else {
            ring
        }
    }

    fn with_tables(order: usize, one: usize, label: String, repr: Repr, tables: Tables) -> Ring {
        Ring(Arc::new(Inner {
            id: RingId(NEXT_ID.fetch_add(1, Ordering::Relaxed)),
            order,
            one,
            label,
            repr,
            tables: Some(tables),
            inverses: OnceLock::new(),
        }))
    }

    /// Replaces the descriptive label of a ring nobody else holds yet.
    pub(crate) fn relabel(self, label: String) -> Ring {
        match Arc::try_unwrap(self.0) {
            Ok(inner) => Ring(Arc::new(Inner { label, ..inner })),
            Err(shared) => Ring(shared),
        }
    }

    fn materialize(self) -> Ring {
        let n = self.order();
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(self.add_idx(a, b) as u32);
                mul.push(self.mul_idx(a, b) as u32);
            }
        }
        let neg = (0..n).map(|a| self.neg_idx(a) as u32).collect();
        let inner = Arc::try_unwrap(self.0).unwrap_or_else(|_| unreachable!("fresh ring is unshared"));
        Ring(Arc::new(Inner {
            tables: Some(Tables { add, mul, neg }),
            ..inner
        }))
    }

    // ---- constructors -------------------------------------------------

    /// Integers modulo `n`; `n = 1` gives the zero ring.
    pub fn zn(n: u64) -> Result<Ring> {
        if n == 0 {
            return Err(RingError::ZeroOrder);
        }
        check_cap(n as u128, LAZY_MAX)?;
        let n = n as usize;
        let one = if n == 1 { 0 } else { 1 };
        Ok(Ring::build(n, one, format!("Z({n})"), Repr::Modular { n }))
    }

    /// The field with `q` elements.
    pub fn gf(q: u64) -> Result<Ring> {
        check_cap(q as u128, LAZY_MAX)?;
        let spec = FieldSpec::new(q)?;
        Ok(Ring::build(q as usize, 1, format!("GF({q})"), Repr::Field(spec)))
    }

    /// `n × n` matrices over a commutative base.
    pub fn matrix(n: usize, base: &Ring) -> Result<Ring> {
        if n == 0 {
            return Err(RingError::ZeroDimension);
        }
        require_commutative(base)?;
        let order = pow_checked(base.order(), n * n)?;
        let mut id = vec![0usize; n * n];
        for i in 0..n {
            id[i * n + i] = base.one_idx();
        }
        let one = matrix::encode(&id, base.order());
        let label = format!("M({n}, {})", base.label());
        Ok(Ring::build(order, one, label, Repr::Matrix { n, base: base.clone() }))
    }

    /// Upper-triangular `n × n` matrices over a commutative base.
    pub fn triangular(n: usize, base: &Ring) -> Result<Ring> {
        if n == 0 {
            return Err(RingError::ZeroDimension);
        }
        require_commutative(base)?;
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        let order = pow_checked(base.order(), slots.len())?;
        let digits: Vec<usize> = slots
            .iter()
            .map(|&(i, j)| if i == j { base.one_idx() } else { 0 })
            .collect();
        let one = matrix::encode(&digits, base.order());
        let label = format!("UT({n}, {})", base.label());
        Ok(Ring::build(order, one, label, Repr::Triangular { n, base: base.clone(), slots }))
    }

    /// Direct product; element index is mixed-radix with the first factor
    /// as the least significant digit.
    pub fn product(factors: &[Ring]) -> Result<Ring> {
        if factors.is_empty() {
            return Err(RingError::EmptyProduct);
        }
        let mut order: u128 = 1;
        for f in factors {
            order *= f.order() as u128;
            check_cap(order, LAZY_MAX)?;
        }
        let ones: Vec<usize> = factors.iter().map(|f| f.one_idx()).collect();
        let radices: Vec<usize> = factors.iter().map(|f| f.order()).collect();
        let one = mixed_encode(&ones, &radices);
        let names: Vec<&str> = factors.iter().map(Ring::label).collect();
        let label = format!("Prod({})", names.join(", "));
        Ok(Ring::build(order as usize, one, label, Repr::Product { factors: factors.to_vec() }))
    }

    /// Validates explicit tables and wraps them.
    pub fn from_table(spec: &TableRing) -> Result<Ring> {
        spec.validate()?;
        Ok(Ring::table_unchecked(spec, format!("Table(order {})", spec.order)))
    }

    pub(crate) fn table_unchecked(spec: &TableRing, label: String) -> Ring {
        let n = spec.order;
        let neg = (0..n)
            .map(|a| (0..n).find(|&b| spec.add[a * n + b] as usize == spec.zero).unwrap_or(0) as u32)
            .collect();
        Ring::with_tables(
            n,
            spec.one,
            label,
            Repr::Table { additive_type: spec.additive_type.clone() },
            Tables { add: spec.add.clone(), mul: spec.mul.clone(), neg },
        )
    }

    /// The quotient by a two-sided ideal. Cosets are indexed by their
    /// minimal representatives in increasing order.
    pub fn quotient(&self, ideal: &[Elem]) -> Result<Ring> {
        let idx = self.indices_of(ideal)?;
        self.quotient_idx(&idx)
    }

    pub(crate) fn quotient_idx(&self, ideal: &[usize]) -> Result<Ring> {
        check_cap(self.order() as u128, EAGER_MAX as u128)?;
        let mut members = ideal.to_vec();
        members.sort_unstable();
        members.dedup();
        self.verify_ideal(&members)?;
        let n = self.order();
        let mut rep_of = vec![usize::MAX; n];
        for x in 0..n {
            if rep_of[x] != usize::MAX {
                continue;
            }
            let coset: Vec<usize> = members.iter().map(|&a| self.add_idx(x, a)).collect();
            let rep = *coset.iter().min().unwrap();
            for c in coset {
                rep_of[c] = rep;
            }
        }
        let mut reps: Vec<usize> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let mut pos = vec![usize::MAX; n];
        for (k, &r) in reps.iter().enumerate() {
            pos[r] = k;
        }
        let class = |x: usize| pos[rep_of[x]];
        let m = reps.len();
        let mut add = Vec::with_capacity(m * m);
        let mut mul = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                add.push(class(self.add_idx(a, b)) as u32);
                mul.push(class(self.mul_idx(a, b)) as u32);
            }
        }
        let neg = reps.iter().map(|&a| class(self.neg_idx(a)) as u32).collect();
        let one = class(self.one_idx());
        let label = format!("{} / I{}", self.label(), members.len());
        Ok(Ring::with_tables(
            m,
            one,
            label,
            Repr::Quotient { parent: self.clone(), reps, ideal: members },
            Tables { add, mul, neg },
        ))
    }

    /// Exhaustive check that `members` (sorted) is a two-sided ideal.
    pub(crate) fn verify_ideal(&self, members: &[usize]) -> Result<()> {
        let n = self.order();
        let mut inside = vec![false; n];
        for &a in members {
            if a >= n {
                return Err(RingError::IndexOutOfRange { index: a, order: n });
            }
            inside[a] = true;
        }
        if !inside[0] {
            return Err(RingError::NotIdeal { property: "contains zero", witness: vec![0] });
        }
        for &a in members {
            if !inside[self.neg_idx(a)] {
                return Err(RingError::NotIdeal { property: "negation", witness: vec![a] });
            }
            for &b in members {
                if !inside[self.add_idx(a, b)] {
                    return Err(RingError::NotIdeal { property: "addition", witness: vec![a, b] });
                }
            }
        }
        for x in 0..n {
            for &a in members {
                if !inside[self.mul_idx(x, a)] {
                    return Err(RingError::NotIdeal { property: "left absorption", witness: vec![x, a] });
                }
                if !inside[self.mul_idx(a, x)] {
                    return Err(RingError::NotIdeal { property: "right absorption", witness: vec![a, x] });
                }
            }
        }
        Ok(())
    }

    // ---- metadata -----------------------------------------------------

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn id(&self) -> RingId {
        self.0.id
    }

    /// Expression-like description, e.g. `M(2, GF(4))`.
    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn kind(&self) -> RingKind {
        match self.0.repr {
            Repr::Modular { .. } => RingKind::Modular,
            Repr::Field(_) => RingKind::Field,
            Repr::Matrix { .. } => RingKind::Matrix,
            Repr::Triangular { .. } => RingKind::Triangular,
            Repr::Product { .. } => RingKind::Product,
            Repr::Table { .. } => RingKind::Table,
            Repr::Quotient { .. } => RingKind::Quotient,
        }
    }

    pub fn is_materialized(&self) -> bool {
        self.0.tables.is_some()
    }

    pub fn one_idx(&self) -> usize {
        self.0.one
    }

    pub fn zero(&self) -> Elem {
        Elem { ring: self.id(), index: 0 }
    }

    pub fn one(&self) -> Elem {
        Elem { ring: self.id(), index: self.0.one }
    }

    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index >= self.order() {
            return Err(RingError::IndexOutOfRange { index, order: self.order() });
        }
        Ok(Elem { ring: self.id(), index })
    }

    pub(crate) fn elem_unchecked(&self, index: usize) -> Elem {
        debug_assert!(index < self.order());
        Elem { ring: self.id(), index }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order()).map(move |i| self.elem_unchecked(i))
    }

    /// Field description when this is `GF(q)` or `Z_p` for prime `p`.
    pub fn field_spec(&self) -> Option<FieldSpec> {
        match &self.0.repr {
            Repr::Field(f) => Some(f.clone()),
            Repr::Modular { n } if crate::arith::is_prime(*n as u64) => {
                Some(FieldSpec::new(*n as u64).expect("prime order"))
            }
            _ => None,
        }
    }

    /// `(n, base)` for full matrix rings.
    pub fn matrix_parts(&self) -> Option<(usize, &Ring)> {
        match &self.0.repr {
            Repr::Matrix { n, base } => Some((*n, base)),
            _ => None,
        }
    }

    /// `(n, base)` for upper-triangular rings.
    pub fn triangular_parts(&self) -> Option<(usize, &Ring)> {
        match &self.0.repr {
            Repr::Triangular { n, base, .. } => Some((*n, base)),
            _ => None,
        }
    }

    pub fn product_factors(&self) -> Option<&[Ring]> {
        match &self.0.repr {
            Repr::Product { factors } => Some(factors),
            _ => None,
        }
    }

    pub fn quotient_parts(&self) -> Option<(&Ring, &[usize])> {
        match &self.0.repr {
            Repr::Quotient { parent, ideal, .. } => Some((parent, ideal)),
            _ => None,
        }
    }

    pub fn additive_type_hint(&self) -> Option<&[usize]> {
        match &self.0.repr {
            Repr::Table { additive_type } => Some(additive_type),
            _ => None,
        }
    }

    // ---- index arithmetic ---------------------------------------------

    #[inline]
    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.0.tables {
            return t.add[a * self.0.order + b] as usize;
        }
        match &self.0.repr {
            Repr::Modular { n } => ((a as u128 + b as u128) % *n as u128) as usize,
            Repr::Field(f) => f.add(a as u64, b as u64) as usize,
            Repr::Matrix { base, .. } | Repr::Triangular { base, .. } => {
                let r = base.order();
                let len = self.digit_count();
                let (x, y) = (matrix::decode(a, r, len), matrix::decode(b, r, len));
                let s: Vec<usize> = x.iter().zip(&y).map(|(&u, &v)| base.add_idx(u, v)).collect();
                matrix::encode(&s, r)
            }
            Repr::Product { factors } => self.componentwise(factors, a, b, |f, u, v| f.add_idx(u, v)),
            Repr::Table { .. } | Repr::Quotient { .. } => unreachable!("table rings are materialized"),
        }
    }

    #[inline]
    pub fn neg_idx(&self, a: usize) -> usize {
        if let Some(t) = &self.0.tables {
            return t.neg[a] as usize;
        }
        match &self.0.repr {
            Repr::Modular { n } => (n - a) % n,
            Repr::Field(f) => f.neg(a as u64) as usize,
            Repr::Matrix { base, .. } | Repr::Triangular { base, .. } => {
                let r = base.order();
                let x = matrix::decode(a, r, self.digit_count());
                let s: Vec<usize> = x.iter().map(|&u| base.neg_idx(u)).collect();
                matrix::encode(&s, r)
            }
            Repr::Product { factors } => {
                let radices: Vec<usize> = factors.iter().map(Ring::order).collect();
                let c = mixed_decode(a, &radices);
                let s: Vec<usize> = c.iter().zip(factors).map(|(&u, f)| f.neg_idx(u)).collect();
                mixed_encode(&s, &radices)
            }
            Repr::Table { .. } | Repr::Quotient { .. } => unreachable!("table rings are materialized"),
        }
    }

    #[inline]
    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.0.tables {
            return t.mul[a * self.0.order + b] as usize;
        }
        match &self.0.repr {
            Repr::Modular { n } => ((a as u128 * b as u128) % *n as u128) as usize,
            Repr::Field(f) => f.mul(a as u64, b as u64) as usize,
            Repr::Matrix { n, base } => {
                let r = base.order();
                let x = matrix::decode(a, r, n * n);
                let y = matrix::decode(b, r, n * n);
                matrix::encode(&matrix::mat_mul(base, *n, &x, &y), r)
            }
            Repr::Triangular { n, base, slots } => {
                let r = base.order();
                let x = matrix::expand_triangular(&matrix::decode(a, r, slots.len()), *n, slots);
                let y = matrix::expand_triangular(&matrix::decode(b, r, slots.len()), *n, slots);
                let z = matrix::mat_mul(base, *n, &x, &y);
                matrix::encode(&matrix::compress_triangular(&z, *n, slots), r)
            }
            Repr::Product { factors } => self.componentwise(factors, a, b, |f, u, v| f.mul_idx(u, v)),
            Repr::Table { .. } | Repr::Quotient { .. } => unreachable!("table rings are materialized"),
        }
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// `k · x` for a non-negative integer `k`.
    pub fn scale_idx(&self, k: u64, x: usize) -> usize {
        let (mut acc, mut base, mut k) = (0usize, x, k);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_idx(acc, base);
            }
            base = self.add_idx(base, base);
            k >>= 1;
        }
        acc
    }

    fn digit_count(&self) -> usize {
        match &self.0.repr {
            Repr::Matrix { n, .. } => n * n,
            Repr::Triangular { slots, .. } => slots.len(),
            _ => 1,
        }
    }

    fn componentwise(
        &self,
        factors: &[Ring],
        a: usize,
        b: usize,
        op: impl Fn(&Ring, usize, usize) -> usize,
    ) -> usize {
        let radices: Vec<usize> = factors.iter().map(Ring::order).collect();
        let (x, y) = (mixed_decode(a, &radices), mixed_decode(b, &radices));
        let s: Vec<usize> = factors
            .iter()
            .zip(x.iter().zip(&y))
            .map(|(f, (&u, &v))| op(f, u, v))
            .collect();
        mixed_encode(&s, &radices)
    }

    // ---- checked element arithmetic -----------------------------------

    fn own(&self, e: Elem) -> Result<usize> {
        if e.ring != self.id() {
            return Err(RingError::RingMismatch);
        }
        Ok(e.index)
    }

    pub(crate) fn indices_of(&self, elems: &[Elem]) -> Result<Vec<usize>> {
        elems.iter().map(|&e| self.own(e)).collect()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.elem_unchecked(self.add_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn neg(&self, a: Elem) -> Result<Elem> {
        Ok(self.elem_unchecked(self.neg_idx(self.own(a)?)))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.elem_unchecked(self.mul_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn pretty(&self, e: Elem) -> Result<String> {
        Ok(self.pretty_idx(self.own(e)?))
    }

    // ---- inverses -----------------------------------------------------

    /// Two-sided inverse by the structural route: residues via extended
    /// gcd, fields via Fermat, matrices via determinant and adjugate,
    /// products componentwise, table rings via a precomputed scan.
    pub fn inverse_idx(&self, a: usize) -> Option<usize> {
        match &self.0.repr {
            Repr::Modular { n } => mod_inverse(a as u64, *n as u64).map(|v| v as usize),
            Repr::Field(f) => f.inverse(a as u64).map(|v| v as usize),
            Repr::Matrix { n, base } => {
                let x = matrix::decode(a, base.order(), n * n);
                matrix::inverse_by_determinant(base, *n, &x).map(|v| matrix::encode(&v, base.order()))
            }
            Repr::Triangular { n, base, slots } => {
                let x = matrix::expand_triangular(&matrix::decode(a, base.order(), slots.len()), *n, slots);
                matrix::inverse_by_determinant(base, *n, &x)
                    .map(|v| matrix::encode(&matrix::compress_triangular(&v, *n, slots), base.order()))
            }
            Repr::Product { factors } => {
                let radices: Vec<usize> = factors.iter().map(Ring::order).collect();
                let c = mixed_decode(a, &radices);
                let inv: Option<Vec<usize>> =
                    c.iter().zip(factors).map(|(&u, f)| f.inverse_idx(u)).collect();
                inv.map(|v| mixed_encode(&v, &radices))
            }
            Repr::Table { .. } | Repr::Quotient { .. } => {
                let v = self.0.inverses.get_or_init(|| self.scan_inverses())[a];
                (v != NO_INVERSE).then_some(v as usize)
            }
        }
    }

    fn scan_inverses(&self) -> Vec<u32> {
        let n = self.order();
        let one = self.one_idx();
        (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| self.mul_idx(a, b) == one && self.mul_idx(b, a) == one)
                    .map_or(NO_INVERSE, |b| b as u32)
            })
            .collect()
    }

    // ---- structure helpers ----------------------------------------------

    /// Elements spanning the additive group; bilinear properties (such as
    /// commutativity) need only be checked on these.
    pub fn additive_generators(&self) -> Vec<usize> {
        match &self.0.repr {
            Repr::Modular { n } => if *n > 1 { vec![1] } else { vec![] },
            Repr::Field(f) => (0..f.s).map(|i| f.p.pow(i) as usize).collect(),
            Repr::Matrix { base, .. } | Repr::Triangular { base, .. } => {
                let len = self.digit_count();
                let r = base.order();
                let mut out = Vec::new();
                for pos in 0..len {
                    for g in base.additive_generators() {
                        let mut d = vec![0; len];
                        d[pos] = g;
                        out.push(matrix::encode(&d, r));
                    }
                }
                out
            }
            Repr::Product { factors } => {
                let radices: Vec<usize> = factors.iter().map(Ring::order).collect();
                let mut out = Vec::new();
                for (i, f) in factors.iter().enumerate() {
                    for g in f.additive_generators() {
                        let mut d = vec![0; factors.len()];
                        d[i] = g;
                        out.push(mixed_encode(&d, &radices));
                    }
                }
                out
            }
            Repr::Table { .. } | Repr::Quotient { .. } => (1..self.order()).collect(),
        }
    }

    // ---- printing -----------------------------------------------------

    pub fn pretty_idx(&self, a: usize) -> String {
        match &self.0.repr {
            Repr::Modular { .. } | Repr::Table { .. } => a.to_string(),
            Repr::Field(f) => f.pretty(a as u64),
            Repr::Matrix { n, base } => {
                let x = matrix::decode(a, base.order(), n * n);
                matrix::pretty(base, *n, &x)
            }
            Repr::Triangular { n, base, slots } => {
                let x = matrix::expand_triangular(&matrix::decode(a, base.order(), slots.len()), *n, slots);
                matrix::pretty(base, *n, &x)
            }
            Repr::Product { factors } => {
                let radices: Vec<usize> = factors.iter().map(Ring::order).collect();
                let c = mixed_decode(a, &radices);
                let parts: Vec<String> = c.iter().zip(factors).map(|(&u, f)| f.pretty_idx(u)).collect();
                format!("({})", parts.join(","))
            }
            Repr::Quotient { parent, reps, .. } => format!("{}+I", parent.pretty_idx(reps[a])),
        }
    }

    /// Raw tables for materialized rings.
    pub(crate) fn tables(&self) -> Option<&Tables> {
        self.0.tables.as_ref()
    }
}

fn check_cap(order: u128, cap: u128) -> Result<()> {
    if order > cap {
        return Err(RingError::OrderTooLarge { order, cap });
    }
    Ok(())
}

fn pow_checked(base: usize, exp: usize) -> Result<usize> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        check_cap(acc, LAZY_MAX)?;
    }
    Ok(acc as usize)
}

fn require_commutative(base: &Ring) -> Result<()> {
    let g = base.additive_generators();
    for &x in &g {
        for &y in &g {
            if base.mul_idx(x, y) != base.mul_idx(y, x) {
                return Err(RingError::NoncommutativeBase(base.label().to_string()));
            }
        }
    }
    Ok(())
}

pub(crate) fn mixed_encode(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .rev()
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

pub(crate) fn mixed_decode(mut x: usize, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = x % r;
            x /= r;
            d
        })
        .collect()
}

/// Shorthand used by the expression layer: `Z_2^k`.
pub fn boolean_power(k: usize) -> Result<Ring> {
    let z2 = Ring::zn(2)?;
    let r = Ring::product(&vec![z2; k])?;
    Ok(r.relabel(format!("B({k})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z4_two_is_its_own_negative() {
        let z4 = Ring::zn(4).unwrap();
        assert_eq!(z4.neg_idx(2), 2);
        assert_eq!(z4.order(), 4);
    }

    #[test]
    fn z2_one_plus_one() {
        let z2 = Ring::zn(2).unwrap();
        assert_eq!(z2.add_idx(1, 1), 0);
    }

    #[test]
    fn zero_ring_has_one_equal_zero() {
        let z1 = Ring::zn(1).unwrap();
        assert_eq!(z1.one_idx(), 0);
        assert!(Ring::zn(0).is_err());
    }

    #[test]
    fn gf_rejects_composite() {
        let e = Ring::gf(6).unwrap_err();
        assert_eq!(e.to_string(), "6 = 2·3 is not a prime power");
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let a = Ring::zn(4).unwrap();
        let b = Ring::zn(4).unwrap();
        let x = a.elem(1).unwrap();
        let y = b.elem(1).unwrap();
        assert_eq!(a.add(x, y), Err(RingError::RingMismatch));
        assert!(a.add(x, x).is_ok());
        assert!(a.elem(4).is_err());
    }

    #[test]
    fn orders_of_structured_rings() {
        let z2 = Ring::zn(2).unwrap();
        let gf4 = Ring::gf(4).unwrap();
        assert_eq!(Ring::matrix(2, &z2).unwrap().order(), 16);
        assert_eq!(Ring::matrix(2, &gf4).unwrap().order(), 256);
        assert_eq!(Ring::triangular(2, &z2).unwrap().order(), 8);
        assert_eq!(Ring::triangular(3, &z2).unwrap().order(), 64);
        let m3 = Ring::matrix(3, &gf4).unwrap();
        assert_eq!(m3.order(), 262_144);
        assert!(!m3.is_materialized());
    }

    #[test]
    fn noncommutative_base_rejected() {
        let z2 = Ring::zn(2).unwrap();
        let m2 = Ring::matrix(2, &z2).unwrap();
        assert!(matches!(Ring::matrix(2, &m2), Err(RingError::NoncommutativeBase(_))));
        assert!(matches!(Ring::triangular(2, &m2), Err(RingError::NoncommutativeBase(_))));
        assert!(matches!(Ring::matrix(0, &z2), Err(RingError::ZeroDimension)));
    }

    #[test]
    fn empty_product_rejected() {
        assert_eq!(Ring::product(&[]).unwrap_err(), RingError::EmptyProduct);
    }

    #[test]
    fn lazy_and_materialized_agree() {
        // M_2(GF(4)) computed through tables vs directly through entries.
        let gf4 = Ring::gf(4).unwrap();
        let m = Ring::matrix(2, &gf4).unwrap();
        assert!(m.is_materialized());
        for (a, b) in [(17usize, 200usize), (255, 3), (1, 254)] {
            let x = matrix::decode(a, 4, 4);
            let y = matrix::decode(b, 4, 4);
            let direct = matrix::encode(&matrix::mat_mul(&gf4, 2, &x, &y), 4);
            assert_eq!(m.mul_idx(a, b), direct);
        }
    }

    #[test]
    fn pretty_printing() {
        let z2 = Ring::zn(2).unwrap();
        let ut = Ring::triangular(2, &z2).unwrap();
        // slots (0,0),(0,1),(1,1); E_12 is the second digit
        assert_eq!(ut.pretty_idx(2), "[[0,1],[0,0]]");
        let p = Ring::product(&[z2.clone(), Ring::zn(3).unwrap()]).unwrap();
        assert_eq!(p.pretty_idx(5), "(1,2)");
        let gf4 = Ring::gf(4).unwrap();
        assert_eq!(gf4.pretty_idx(3), "a+1");
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = Ring::zn(4).unwrap();
        let ideal = [z4.elem(0).unwrap(), z4.elem(2).unwrap()];
        let q = z4.quotient(&ideal).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(q.add_idx(1, 1), 0);
        assert_eq!(q.one_idx(), 1);
        assert_eq!(q.kind(), RingKind::Quotient);
    }

    #[test]
    fn quotient_rejects_non_ideal() {
        let z4 = Ring::zn(4).unwrap();
        let bad = [z4.elem(0).unwrap(), z4.elem(1).unwrap()];
        assert!(matches!(z4.quotient(&bad), Err(RingError::NotIdeal { .. })));
    }

    #[test]
    fn quotient_by_zero_ideal_is_identity() {
        let z2 = Ring::zn(2).unwrap();
        let ut = Ring::triangular(2, &z2).unwrap();
        let q = ut.quotient(&[ut.zero()]).unwrap();
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(q.add_idx(a, b), ut.add_idx(a, b));
                assert_eq!(q.mul_idx(a, b), ut.mul_idx(a, b));
            }
        }
    }
}
