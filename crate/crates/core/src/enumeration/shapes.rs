//! Finite abelian groups as additive skeletons for ring search.

use serde::Serialize;

use crate::arith::factorize;

/// An abelian group `Z_{d_0} ⊕ … ⊕ Z_{d_{k-1}}` by invariant factors,
/// largest first, with `d_{i+1} | d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdditiveGroupShape {
    pub invariant_factors: Vec<usize>,
    /// Indices of the standard basis vectors in the mixed-radix encoding.
    pub generators: Vec<usize>,
    pub automorphism_count: u64,
}

impl AdditiveGroupShape {
    pub fn new(invariant_factors: Vec<usize>) -> Self {
        let mut generators = Vec::with_capacity(invariant_factors.len());
        let mut stride = 1;
        for &d in &invariant_factors {
            generators.push(stride);
            stride *= d;
        }
        let automorphism_count = automorphism_count(&invariant_factors);
        AdditiveGroupShape { invariant_factors, generators, automorphism_count }
    }

    pub fn order(&self) -> usize {
        self.invariant_factors.iter().product()
    }

    /// Addition table of the standard encoding: element index
    /// `Σ a_i · stride_i` with `a_i ∈ Z_{d_i}`, first factor least
    /// significant.
    pub fn add_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                t.push(self.add(a, b) as u32);
            }
        }
        t
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut stride = 1;
        for &d in &self.invariant_factors {
            out += ((a % d + b % d) % d) * stride;
            a /= d;
            b /= d;
            stride *= d;
        }
        out
    }

    pub fn coords(&self, mut x: usize) -> Vec<usize> {
        self.invariant_factors
            .iter()
            .map(|&d| {
                let c = x % d;
                x /= d;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[usize]) -> usize {
        c.iter()
            .zip(&self.invariant_factors)
            .rev()
            .fold(0, |acc, (&x, &d)| acc * d + x % d)
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All abelian groups of the given order up to isomorphism, fewest
/// factors first.
pub fn abelian_group_shapes(order: usize) -> Vec<AdditiveGroupShape> {
    let primes = factorize(order as u64);
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for &(p, e) in &primes {
        let mut next = Vec::new();
        for combo in &combos {
            for part in partitions(e, e) {
                let len = combo.len().max(part.len());
                let mut merged = vec![1usize; len];
                for (i, m) in merged.iter_mut().enumerate() {
                    let a = combo.get(i).copied().unwrap_or(1);
                    let b = part.get(i).map_or(1, |&k| (p as usize).pow(k));
                    *m = a * b;
                }
                next.push(merged);
            }
        }
        combos = next;
    }
    combos.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)));
    combos.into_iter().map(AdditiveGroupShape::new).collect()
}

/// `|Aut(G)|` as a product over the primary components.
pub fn automorphism_count(invariant_factors: &[usize]) -> u64 {
    let order: usize = invariant_factors.iter().product();
    let mut total: u64 = 1;
    for (p, _) in factorize(order as u64) {
        let mut exps: Vec<u32> = invariant_factors
            .iter()
            .map(|&d| {
                let mut d = d as u64;
                let mut e = 0;
                while d.is_multiple_of(p) {
                    d /= p;
                    e += 1;
                }
                e
            })
            .filter(|&e| e > 0)
            .collect();
        exps.sort_unstable();
        total *= primary_automorphisms(p, &exps);
    }
    total
}

fn primary_automorphisms(p: u64, e: &[u32]) -> u64 {
    let n = e.len();
    let mut acc: u64 = 1;
    for k in 0..n {
        let d = (0..n).rev().find(|&l| e[l] == e[k]).unwrap() + 1;
        let c = (0..n).find(|&l| e[l] == e[k]).unwrap() + 1;
        acc *= p.pow(d as u32) - p.pow(k as u32);
        acc *= p.pow(e[k]).pow((n - d) as u32);
        acc *= p.pow(e[k] - 1).pow((n - c + 1) as u32);
    }
    acc
}

/// Visits every additive isomorphism from the standard group of
/// `factors` onto the group `(0..order, add)`. The callback receives the
/// map as a vector `std index → element` and returns `false` to stop.
pub(crate) fn for_each_basis(
    order: usize,
    add: &dyn Fn(usize, usize) -> usize,
    factors: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    if factors.iter().product::<usize>() != order {
        return;
    }
    let mut inside = vec![false; order];
    inside[0] = true;
    let span = vec![0usize];
    extend_basis(order, add, factors, 0, span, &mut inside, visit);
}

fn extend_basis(
    order: usize,
    add: &dyn Fn(usize, usize) -> usize,
    factors: &[usize],
    depth: usize,
    span: Vec<usize>,
    inside: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == factors.len() {
        return visit(&span);
    }
    let d = factors[depth];
    'cand: for g in 0..order {
        // multiples m·g for m in 1..d must leave the span, and d·g = 0
        let mut mult = g;
        for _ in 1..d {
            if inside[mult] {
                continue 'cand;
            }
            mult = add(mult, g);
        }
        if mult != 0 {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * d);
        let mut shift = 0usize;
        for _ in 0..d {
            for &s in &span {
                next.push(add(s, shift));
            }
            shift = add(shift, g);
        }
        for &x in &next[span.len()..] {
            inside[x] = true;
        }
        let keep_going = extend_basis(order, add, factors, depth + 1, next.clone(), inside, visit);
        for &x in &next[span.len()..] {
            inside[x] = false;
        }
        if !keep_going {
            return false;
        }
    }
    true
}

/// The invariant factors of the group `(0..order, add)`.
pub fn detect_shape(order: usize, add: &dyn Fn(usize, usize) -> usize) -> Option<Vec<usize>> {
    abelian_group_shapes(order).into_iter().find_map(|shape| {
        let mut found = false;
        for_each_basis(order, add, &shape.invariant_factors, &mut |_| {
            found = true;
            false
        });
        found.then_some(shape.invariant_factors)
    })
}
