//! Structural invariants of finite rings: characteristic, commutativity,
//! booleanness, the unit group and its sum, the Jacobson radical, and
//! primitive elements of finite fields.

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{gcd, prime_power};
use crate::error::{Result, RingError};
use crate::ring::{matrix, Elem, Ring, EAGER_MAX};

/// Resource limits for element scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest ring order that may be walked element by element.
    pub max_elements: usize,
    /// Largest unit group whose closure is checked pairwise.
    pub max_closure_check: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_elements: 1 << 20, max_closure_check: 4096 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroupSummary {
    pub units: Vec<Elem>,
    pub count: usize,
    pub sum: Elem,
    /// Set when closure and two-sided inverses were checked exhaustively.
    pub closure_verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalSummary {
    pub members: Vec<Elem>,
    pub is_zero: bool,
}

/// Additive order of one.
pub fn characteristic(r: &Ring) -> u64 {
    if let Some((_, base)) = r.matrix_parts().or(r.triangular_parts()) {
        return characteristic(base);
    }
    if let Some(factors) = r.product_factors() {
        return factors
            .iter()
            .map(characteristic)
            .fold(1, |acc, c| acc / gcd(acc, c) * c);
    }
    let one = r.one_idx();
    let (mut acc, mut k) = (one, 1u64);
    while acc != 0 {
        acc = r.add_idx(acc, one);
        k += 1;
    }
    k
}

pub fn is_commutative(r: &Ring) -> bool {
    let g = r.additive_generators();
    g.iter()
        .all(|&x| g.iter().all(|&y| r.mul_idx(x, y) == r.mul_idx(y, x)))
}

/// `x² = x` for every element. Rings too large to walk are decided on
/// additive generators: the identity holds everywhere iff `g² = g`,
/// `2g = 0` and `gh + hg = 0` for all generators.
pub fn is_boolean(r: &Ring) -> bool {
    if r.is_materialized() || r.order() <= EAGER_MAX {
        return (0..r.order()).all(|x| r.mul_idx(x, x) == x);
    }
    let g = r.additive_generators();
    g.iter().all(|&x| r.mul_idx(x, x) == x && r.add_idx(x, x) == 0)
        && g.iter().all(|&x| {
            g.iter()
                .all(|&y| r.add_idx(r.mul_idx(x, y), r.mul_idx(y, x)) == 0)
        })
}

/// Two-sided inverse of `x`, if any. Both sides are checked.
pub fn is_unit(r: &Ring, x: Elem) -> Result<Option<Elem>> {
    let a = r.indices_of(&[x])?[0];
    match r.inverse_idx(a) {
        Some(b) => {
            let one = r.one_idx();
            if r.mul_idx(a, b) != one || r.mul_idx(b, a) != one {
                return Err(RingError::Invariant(format!("inverse of {a} is one-sided")));
            }
            Ok(Some(r.elem_unchecked(b)))
        }
        None => Ok(None),
    }
}

/// Inverse by scanning every element; independent of the structural
/// route used by [`is_unit`].
pub fn inverse_by_scan(r: &Ring, x: usize) -> Option<usize> {
    let one = r.one_idx();
    (0..r.order()).find(|&y| r.mul_idx(x, y) == one && r.mul_idx(y, x) == one)
}

/// Streams every unit index. Matrix rings over a field are walked column
/// by column, each new column outside the span of the previous ones, so
/// non-invertible matrices are never visited.
pub fn for_each_unit(r: &Ring, budget: &Budget, f: &mut dyn FnMut(usize)) -> Result<()> {
    if r.order() > budget.max_elements {
        return Err(RingError::Budget(format!(
            "{} has {} elements, scan limit is {}",
            r.label(),
            r.order(),
            budget.max_elements
        )));
    }
    if let Some((n, base)) = r.matrix_parts() {
        if base.field_spec().is_some() {
            stream_invertible_matrices(n, base, f);
            return Ok(());
        }
    }
    if let Some((n, base)) = r.triangular_parts() {
        let mut base_units = Vec::new();
        for_each_unit(base, budget, &mut |u| base_units.push(u))?;
        stream_invertible_triangular(n, base, &base_units, f);
        return Ok(());
    }
    if let Some(factors) = r.product_factors() {
        let mut lists = Vec::with_capacity(factors.len());
        for fac in factors {
            let mut l = Vec::new();
            for_each_unit(fac, budget, &mut |u| l.push(u))?;
            lists.push(l);
        }
        let radices: Vec<usize> = factors.iter().map(Ring::order).collect();
        let mut pick = vec![0usize; lists.len()];
        if lists.iter().any(Vec::is_empty) {
            return Ok(());
        }
        loop {
            let digits: Vec<usize> = pick.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
            f(crate::ring::mixed_encode(&digits, &radices));
            let mut k = 0;
            loop {
                if k == pick.len() {
                    return Ok(());
                }
                pick[k] += 1;
                if pick[k] < lists[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
    for x in 0..r.order() {
        if r.inverse_idx(x).is_some() {
            f(x);
        }
    }
    Ok(())
}

fn stream_invertible_matrices(n: usize, base: &Ring, f: &mut dyn FnMut(usize)) {
    let q = base.order();
    let vectors = q.pow(n as u32);
    let vec_add = |a: usize, b: usize| {
        let (x, y) = (matrix::decode(a, q, n), matrix::decode(b, q, n));
        let s: Vec<usize> = x.iter().zip(&y).map(|(&u, &v)| base.add_idx(u, v)).collect();
        matrix::encode(&s, q)
    };
    let vec_scale = |c: usize, a: usize| {
        let x = matrix::decode(a, q, n);
        let s: Vec<usize> = x.iter().map(|&u| base.mul_idx(c, u)).collect();
        matrix::encode(&s, q)
    };
    // contribution of vector v placed in column j to the matrix index
    let contrib: Vec<Vec<usize>> = (0..n)
        .map(|j| {
            (0..vectors)
                .map(|v| {
                    let x = matrix::decode(v, q, n);
                    let mut d = vec![0usize; n * n];
                    for i in 0..n {
                        d[i * n + j] = x[i];
                    }
                    matrix::encode(&d, q)
                })
                .collect()
        })
        .collect();

    fn walk(
        col: usize,
        n: usize,
        q: usize,
        vectors: usize,
        span: &[usize],
        acc: usize,
        contrib: &[Vec<usize>],
        vec_add: &dyn Fn(usize, usize) -> usize,
        vec_scale: &dyn Fn(usize, usize) -> usize,
        f: &mut dyn FnMut(usize),
    ) {
        if col == n {
            f(acc);
            return;
        }
        let mut inside = vec![false; vectors];
        for &s in span {
            inside[s] = true;
        }
        for v in 0..vectors {
            if inside[v] {
                continue;
            }
            let mut next = Vec::with_capacity(span.len() * q);
            for c in 0..q {
                let cv = vec_scale(c, v);
                next.extend(span.iter().map(|&s| vec_add(s, cv)));
            }
            walk(col + 1, n, q, vectors, &next, acc + contrib[col][v], contrib, vec_add, vec_scale, f);
        }
    }
    walk(0, n, q, vectors, &[0], 0, &contrib, &vec_add, &vec_scale, f);
}

fn stream_invertible_triangular(n: usize, base: &Ring, base_units: &[usize], f: &mut dyn FnMut(usize)) {
    let q = base.order();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut digits = vec![0usize; slots.len()];
    fn fill(
        k: usize,
        slots: &[(usize, usize)],
        q: usize,
        base_units: &[usize],
        digits: &mut Vec<usize>,
        f: &mut dyn FnMut(usize),
    ) {
        if k == slots.len() {
            f(matrix::encode(digits, q));
            return;
        }
        let (i, j) = slots[k];
        if i == j {
            for &u in base_units {
                digits[k] = u;
                fill(k + 1, slots, q, base_units, digits, f);
            }
        } else {
            for v in 0..q {
                digits[k] = v;
                fill(k + 1, slots, q, base_units, digits, f);
            }
        }
    }
    fill(0, &slots, q, base_units, &mut digits, f);
}

/// Count and sum of the units, without storing them.
pub fn unit_count_and_sum(r: &Ring, budget: &Budget) -> Result<(usize, usize)> {
    let (mut count, mut sum) = (0usize, 0usize);
    for_each_unit(r, budget, &mut |u| {
        count += 1;
        sum = r.add_idx(sum, u);
    })?;
    Ok((count, sum))
}

pub fn unit_group(r: &Ring) -> Result<UnitGroupSummary> {
    unit_group_with(r, &Budget::default())
}

pub fn unit_group_with(r: &Ring, budget: &Budget) -> Result<UnitGroupSummary> {
    let mut units = Vec::new();
    for_each_unit(r, budget, &mut |u| units.push(u))?;
    units.sort_unstable();
    let sum = units.iter().fold(0, |acc, &u| r.add_idx(acc, u));
    let closure_verified = if units.len() <= budget.max_closure_check {
        verify_group(r, &units)?;
        true
    } else {
        false
    };
    Ok(UnitGroupSummary {
        count: units.len(),
        units: units.into_iter().map(|u| r.elem_unchecked(u)).collect(),
        sum: r.elem_unchecked(sum),
        closure_verified,
    })
}

fn verify_group(r: &Ring, units: &[usize]) -> Result<()> {
    let one = r.one_idx();
    let member = |x: usize| units.binary_search(&x).is_ok();
    if !member(one) {
        return Err(RingError::Invariant("one is not among the units".into()));
    }
    for &a in units {
        for &b in units {
            if !member(r.mul_idx(a, b)) {
                return Err(RingError::Invariant(format!("units not closed: {a}·{b}")));
            }
        }
        let inv = units
            .iter()
            .find(|&&b| r.mul_idx(a, b) == one)
            .ok_or_else(|| RingError::Invariant(format!("unit {a} has no inverse among units")))?;
        if r.mul_idx(*inv, a) != one {
            return Err(RingError::Invariant(format!("inverse of {a} is one-sided")));
        }
    }
    Ok(())
}

/// `|GL_n(F_q)| = Π_{k=1..n} (qⁿ − q^{n−k})`.
pub fn gl_order(n: u32, q: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(RingError::ZeroDimension);
    }
    prime_power(q)?;
    let q = BigUint::from(q);
    let qn = q.pow(n);
    Ok((1..=n).fold(BigUint::one(), |acc, k| acc * (&qn - q.pow(n - k))))
}

/// Unit membership bitmap, for repeated queries.
pub fn unit_bitmap(r: &Ring, budget: &Budget) -> Result<Vec<bool>> {
    let mut bits = vec![false; r.order()];
    for_each_unit(r, budget, &mut |u| bits[u] = true)?;
    Ok(bits)
}

/// `J(R) = { a : 1 − x·a·y is a unit for all x, y }`, with the ideal
/// property verified before returning.
pub fn jacobson_radical(r: &Ring) -> Result<RadicalSummary> {
    let members = radical_indices(r)?;
    Ok(RadicalSummary {
        is_zero: members == [0],
        members: members.into_iter().map(|a| r.elem_unchecked(a)).collect(),
    })
}

pub(crate) fn radical_indices(r: &Ring) -> Result<Vec<usize>> {
    let n = r.order();
    if n > EAGER_MAX {
        return Err(RingError::Budget(format!(
            "radical scan needs order ≤ {EAGER_MAX}, {} has {n}",
            r.label()
        )));
    }
    let unit = unit_bitmap(r, &Budget::default())?;
    let one = r.one_idx();
    let mut members = Vec::new();
    let mut seen = vec![false; n];
    'outer: for a in 0..n {
        if !unit[r.sub_idx(one, a)] {
            continue;
        }
        // distinct right multiples a·y
        seen.iter_mut().for_each(|s| *s = false);
        let mut right = Vec::new();
        for y in 0..n {
            let ay = r.mul_idx(a, y);
            if !seen[ay] {
                seen[ay] = true;
                right.push(ay);
            }
        }
        for x in 0..n {
            for &ay in &right {
                if !unit[r.sub_idx(one, r.mul_idx(x, ay))] {
                    continue 'outer;
                }
            }
        }
        members.push(a);
    }
    r.verify_ideal(&members)?;
    Ok(members)
}

pub fn is_semisimple(r: &Ring) -> Result<bool> {
    Ok(radical_indices(r)? == [0])
}

/// `R / J(R)`.
pub fn semisimple_quotient(r: &Ring) -> Result<Ring> {
    let j = radical_indices(r)?;
    r.quotient_idx(&j)
}

/// Multiplicative order of a unit.
pub fn multiplicative_order(r: &Ring, x: usize) -> Option<u64> {
    let one = r.one_idx();
    let (mut acc, mut k) = (x, 1u64);
    while acc != one {
        acc = r.mul_idx(acc, x);
        k += 1;
        if k as usize > r.order() {
            return None;
        }
    }
    Some(k)
}

/// The smallest-encoded generator of the multiplicative group of a
/// field. For `q > 2` the geometric sum `Σ_{k=0}^{q-2} α^k` is checked
/// to vanish before returning.
pub fn primitive_element(f: &Ring) -> Result<Elem> {
    if f.field_spec().is_none() {
        return Err(RingError::NotAField(f.label().to_string()));
    }
    let q = f.order() as u64;
    let alpha = (1..f.order())
        .find(|&x| multiplicative_order(f, x) == Some(q - 1))
        .ok_or_else(|| RingError::Invariant("field without a generator".into()))?;
    if q > 2 {
        let (mut power, mut sum) = (f.one_idx(), 0usize);
        for _ in 0..q - 1 {
            sum = f.add_idx(sum, power);
            power = f.mul_idx(power, alpha);
        }
        if sum != 0 {
            return Err(RingError::Invariant(format!("geometric sum of {alpha} is nonzero")));
        }
    }
    Ok(f.elem_unchecked(alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(v: &[Elem]) -> Vec<usize> {
        v.iter().map(|e| e.index()).collect()
    }

    #[test]
    fn characteristics() {
        assert_eq!(characteristic(&Ring::zn(12).unwrap()), 12);
        assert_eq!(characteristic(&Ring::gf(8).unwrap()), 2);
        let m = Ring::matrix(2, &Ring::zn(4).unwrap()).unwrap();
        assert_eq!(characteristic(&m), 4);
        let p = Ring::product(&[Ring::zn(4).unwrap(), Ring::zn(6).unwrap()]).unwrap();
        assert_eq!(characteristic(&p), 12);
    }

    #[test]
    fn commutativity_and_booleanness() {
        let z2 = Ring::zn(2).unwrap();
        let m2 = Ring::matrix(2, &z2).unwrap();
        assert!(!is_commutative(&m2));
        assert!(!is_boolean(&m2));
        assert!(is_commutative(&Ring::triangular(1, &Ring::gf(3).unwrap()).unwrap()));
        assert!(!is_boolean(&Ring::zn(4).unwrap()));
        let b3 = crate::ring::boolean_power(3).unwrap();
        assert!(is_boolean(&b3) && is_commutative(&b3));
        // lazy path: B(13) has 8192 elements
        let b13 = crate::ring::boolean_power(13).unwrap();
        assert!(!b13.is_materialized());
        assert!(is_boolean(&b13));
        let big = Ring::product(&[b13, Ring::zn(3).unwrap()]).unwrap();
        assert!(!is_boolean(&big));
    }

    #[test]
    fn units_of_z4() {
        let z4 = Ring::zn(4).unwrap();
        let three = z4.elem(3).unwrap();
        assert_eq!(is_unit(&z4, three).unwrap(), Some(three));
        assert_eq!(is_unit(&z4, z4.elem(2).unwrap()).unwrap(), None);
        let u = unit_group(&z4).unwrap();
        assert_eq!(idx(&u.units), vec![1, 3]);
        assert_eq!(u.sum.index(), 0);
        assert!(u.closure_verified);
    }

    #[test]
    fn field_unit_sums() {
        let u = unit_group(&Ring::gf(2).unwrap()).unwrap();
        assert_eq!((u.count, u.sum.index()), (1, 1));
        let u = unit_group(&Ring::gf(4).unwrap()).unwrap();
        assert_eq!((u.count, u.sum.index()), (3, 0));
    }

    #[test]
    fn matrix_unit_route_matches_scan() {
        let z2 = Ring::zn(2).unwrap();
        let m = Ring::matrix(2, &z2).unwrap();
        // [[1,1],[0,1]] has digits (1,1,0,1)
        let a = matrix::encode(&[1, 1, 0, 1], 2);
        assert_eq!(inverse_by_scan(&m, a), Some(a));
        assert_eq!(m.inverse_idx(a), Some(a));
        let u = unit_group(&m).unwrap();
        assert_eq!((u.count, u.sum.index()), (6, 0));
    }

    #[test]
    fn gl_orders() {
        let v = |n, q| gl_order(n, q).unwrap().to_string();
        assert_eq!(v(1, 7), "6");
        assert_eq!(v(2, 2), "6");
        assert_eq!(v(3, 2), "168");
        assert_eq!(v(2, 3), "48");
        assert_eq!(v(2, 4), "180");
        assert!(gl_order(2, 6).is_err());
    }

    #[test]
    fn radicals() {
        let z4 = Ring::zn(4).unwrap();
        assert_eq!(idx(&jacobson_radical(&z4).unwrap().members), vec![0, 2]);
        assert!(!is_semisimple(&z4).unwrap());
        assert!(is_semisimple(&Ring::zn(6).unwrap()).unwrap());
        assert!(jacobson_radical(&Ring::gf(9).unwrap()).unwrap().is_zero);
        let ut = Ring::triangular(2, &Ring::zn(2).unwrap()).unwrap();
        // E_12 has digit pattern (0,1,0) -> index 2
        assert_eq!(idx(&jacobson_radical(&ut).unwrap().members), vec![0, 2]);
    }

    #[test]
    fn primitive_elements() {
        assert_eq!(primitive_element(&Ring::gf(2).unwrap()).unwrap().index(), 1);
        assert_eq!(primitive_element(&Ring::gf(5).unwrap()).unwrap().index(), 2);
        assert_eq!(primitive_element(&Ring::gf(4).unwrap()).unwrap().index(), 2);
        assert_eq!(primitive_element(&Ring::zn(7).unwrap()).unwrap().index(), 3);
        assert!(matches!(primitive_element(&Ring::zn(8).unwrap()), Err(RingError::NotAField(_))));
    }

    #[test]
    fn scan_budget_is_enforced() {
        let gf4 = Ring::gf(4).unwrap();
        let m = Ring::matrix(3, &gf4).unwrap();
        let tight = Budget { max_elements: 1000, ..Budget::default() };
        assert!(matches!(unit_count_and_sum(&m, &tight), Err(RingError::Budget(_))));
        assert!(matches!(jacobson_radical(&m), Err(RingError::Budget(_))));
    }
}
