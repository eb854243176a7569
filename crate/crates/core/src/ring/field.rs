//! Arithmetic in GF(p^s) on integer encodings `Σ c_i p^i`.

use crate::arith::prime_power;
use crate::error::Result;

/// A finite field presented as `Z_p[x] / (modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub s: u32,
    pub q: u64,
    /// Monic irreducible modulus, constant term first, length `s + 1`.
    pub modulus: Vec<u64>,
}

impl FieldSpec {
    /// Field of order `q` with the lexicographically smallest monic
    /// irreducible modulus, comparing `(c_0, …, c_{s-1})`.
    pub fn new(q: u64) -> Result<Self> {
        let (p, s) = prime_power(q)?;
        let modulus = smallest_irreducible(p, s);
        Ok(FieldSpec { p, s, q, modulus })
    }

    pub fn coeffs(&self, x: u64) -> Vec<u64> {
        let mut c = Vec::with_capacity(self.s as usize);
        let mut x = x;
        for _ in 0..self.s {
            c.push(x % self.p);
            x /= self.p;
        }
        c
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.s == 1 {
            return (a + b) % self.p;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.s == 1 {
            return (self.p - a) % self.p;
        }
        let c: Vec<u64> = self.coeffs(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&c)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.s == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        let prod = poly_mul(&self.coeffs(a), &self.coeffs(b), self.p);
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut c = rem;
        c.resize(self.s as usize, 0);
        self.encode(&c)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow(a, self.q - 2))
    }

    /// Polynomial in the generator `a`, highest degree first.
    pub fn pretty(&self, x: u64) -> String {
        if self.s == 1 {
            return x.to_string();
        }
        let c = self.coeffs(x);
        let mut terms = Vec::new();
        for (d, &k) in c.iter().enumerate().rev() {
            if k == 0 {
                continue;
            }
            let mono = match d {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{d}"),
            };
            terms.push(match (k, d) {
                (_, 0) => k.to_string(),
                (1, _) => mono,
                _ => format!("{k}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
pub(crate) fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
        }
        r = trim(r);
    }
    r
}

fn monic_polys(p: u64, deg: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(deg);
    (0..count).map(move |t| {
        let mut c = Vec::with_capacity(deg as usize + 1);
        let mut t = t;
        for _ in 0..deg {
            c.push(t % p);
            t /= p;
        }
        c.push(1);
        c
    })
}

/// Irreducibility by trial division over monic divisors of degree ≤ deg/2.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| !poly_rem(f, &g, p).is_empty()))
}

pub fn smallest_irreducible(p: u64, s: u32) -> Vec<u64> {
    // c_0 is the most significant position of the comparison tuple.
    let total = p.pow(s);
    for t in 0..total {
        let mut c = vec![0u64; s as usize];
        let mut t = t;
        for slot in c.iter_mut().rev() {
            *slot = t % p;
            t /= p;
        }
        c.push(1);
        if is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_moduli() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        // expected values cross-checked with an external irreducibility test
        assert_eq!(smallest_irreducible(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 4), vec![1, 0, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 3), vec![1, 0, 2, 1]);
        assert_eq!(smallest_irreducible(5, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(5, 1), vec![0, 1]);
    }

    #[test]
    fn gf4_generator_squares() {
        let f = FieldSpec::new(4).unwrap();
        // x^2 = x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.pretty(3), "a+1");
        assert_eq!(f.pretty(2), "a");
        assert_eq!(f.pretty(0), "0");
    }

    #[test]
    fn inverses_in_gf9() {
        let f = FieldSpec::new(9).unwrap();
        for a in 1..9 {
            let b = f.inverse(a).unwrap();
            assert_eq!(f.mul(a, b), 1);
        }
        assert_eq!(f.pretty(5), "a+2");
        assert_eq!(f.pretty(7), "2a+1");
    }
}
