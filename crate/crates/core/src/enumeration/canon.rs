//! Isomorphism classing by minimal relabeling over additive automorphisms.

use serde::Serialize;

use super::shapes::{for_each_basis, AdditiveGroupShape};
use crate::analysis;
use crate::error::{Result, RingError};
use crate::ring::{Ring, TableRing};

/// Largest order accepted by [`canonical_form`]; `|Aut(Z_2^4)| = 20160`.
pub const CANON_MAX: usize = 16;

/// The lexicographically smallest `(add_table, mul_table, one)` over all
/// relabelings of a ring onto the standard encoding of its additive
/// group. The addition table is fixed by `additive_type`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub additive_type: Vec<usize>,
    pub mul: Vec<u32>,
    pub one: u32,
}

impl CanonicalForm {
    pub fn to_table_ring(&self) -> TableRing {
        let shape = AdditiveGroupShape::new(self.additive_type.clone());
        TableRing {
            order: shape.order(),
            add: shape.add_table(),
            mul: self.mul.clone(),
            zero: 0,
            one: self.one as usize,
            additive_type: self.additive_type.clone(),
        }
    }
}

pub fn canonical_form(r: &TableRing) -> Result<CanonicalForm> {
    let n = r.order;
    if n > CANON_MAX {
        return Err(RingError::OrderTooLarge { order: n as u128, cap: CANON_MAX as u128 });
    }
    let mut best: Option<(Vec<u32>, u32)> = None;
    let mut candidate = vec![0u32; n * n];
    let mut inverse = vec![0usize; n];
    let add = |a: usize, b: usize| r.add_at(a, b);
    for_each_basis(n, &add, &r.additive_type, &mut |phi| {
        for (u, &x) in phi.iter().enumerate() {
            inverse[x] = u;
        }
        // fill while comparing; stop as soon as this relabeling loses
        let mut state = std::cmp::Ordering::Equal;
        for u in 0..n {
            for v in 0..n {
                let val = inverse[r.mul_at(phi[u], phi[v])] as u32;
                let k = u * n + v;
                if state == std::cmp::Ordering::Equal {
                    if let Some((b, _)) = &best {
                        state = val.cmp(&b[k]);
                        if state == std::cmp::Ordering::Greater {
                            return true;
                        }
                    } else {
                        state = std::cmp::Ordering::Less;
                    }
                }
                candidate[k] = val;
            }
        }
        let one = inverse[r.one] as u32;
        let better = match (&best, state) {
            (None, _) | (_, std::cmp::Ordering::Less) => true,
            (Some((_, b1)), std::cmp::Ordering::Equal) => one < *b1,
            _ => false,
        };
        if better {
            best = Some((candidate.clone(), one));
        }
        true
    });
    let (mul, one) = best.ok_or_else(|| RingError::AdditiveTypeMismatch {
        declared: r.additive_type.clone(),
    })?;
    Ok(CanonicalForm { additive_type: r.additive_type.clone(), mul, one })
}

/// Cheap invariants compared before canonical forms.
fn signature(r: &TableRing) -> (usize, Vec<usize>, u64, usize, bool, bool, usize) {
    let ring = Ring::table_unchecked(r, String::new());
    let units = (0..r.order).filter(|&x| ring.inverse_idx(x).is_some()).count();
    let radical = analysis::radical_indices(&ring).map_or(0, |j| j.len());
    (
        r.order,
        r.additive_type.clone(),
        analysis::characteristic(&ring),
        units,
        analysis::is_boolean(&ring),
        analysis::is_commutative(&ring),
        radical,
    )
}

pub fn are_isomorphic(a: &TableRing, b: &TableRing) -> Result<bool> {
    for r in [a, b] {
        if r.order > CANON_MAX {
            return Err(RingError::OrderTooLarge { order: r.order as u128, cap: CANON_MAX as u128 });
        }
    }
    if signature(a) != signature(b) {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(r: &Ring) -> TableRing {
        TableRing::from_ring(r).unwrap()
    }

    /// Relabels `r` by an arbitrary permutation fixing 0.
    fn permuted(r: &TableRing, perm: &[usize]) -> TableRing {
        let n = r.order;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[r.add_at(a, b)] as u32;
                mul[perm[a] * n + perm[b]] = perm[r.mul_at(a, b)] as u32;
            }
        }
        TableRing { add, mul, one: perm[r.one], ..r.clone() }
    }

    #[test]
    fn automorphic_copy_of_z4() {
        let z4 = table(&Ring::zn(4).unwrap());
        let swapped = permuted(&z4, &[0, 3, 2, 1]);
        swapped.validate().unwrap();
        assert_eq!(canonical_form(&z4).unwrap(), canonical_form(&swapped).unwrap());
    }

    #[test]
    fn distinct_rings_of_order_four() {
        let z2 = Ring::zn(2).unwrap();
        let b2 = table(&Ring::product(&[z2.clone(), z2]).unwrap());
        let gf4 = table(&Ring::gf(4).unwrap());
        let z4 = table(&Ring::zn(4).unwrap());
        assert_ne!(canonical_form(&b2).unwrap(), canonical_form(&gf4).unwrap());
        assert_ne!(canonical_form(&z4).unwrap(), canonical_form(&b2).unwrap());
        assert!(!are_isomorphic(&gf4, &b2).unwrap());
        assert!(are_isomorphic(&gf4, &gf4).unwrap());
    }

    #[test]
    fn crt_product_is_z6() {
        let p = table(&Ring::product(&[Ring::zn(2).unwrap(), Ring::zn(3).unwrap()]).unwrap());
        let z6 = table(&Ring::zn(6).unwrap());
        assert!(are_isomorphic(&p, &z6).unwrap());
    }

    #[test]
    fn canonical_table_is_a_fixed_point() {
        let ut = table(&Ring::triangular(2, &Ring::zn(2).unwrap()).unwrap());
        let c = canonical_form(&ut).unwrap();
        let t = c.to_table_ring();
        t.validate().unwrap();
        assert_eq!(canonical_form(&t).unwrap(), c);
    }

    #[test]
    fn order_bound() {
        let big = table(&Ring::zn(17).unwrap());
        assert!(canonical_form(&big).is_err());
    }
}
