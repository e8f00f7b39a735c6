//! Finite fields `F_{p^d}` with explicit polynomial representation.
//!
//! Elements are stored as integer codes in `[0, p^d)`: the code of
//! `c_0 + c_1 X + ... + c_{d-1} X^{d-1}` is `sum c_i p^i`. The modulus is the
//! smallest monic irreducible of degree `d` under that same integer order, so
//! a `(p, d)` pair always names one concrete field and serialized instances
//! are portable.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Largest allowed field size. Everything downstream enumerates field
/// elements freely, so the cap keeps all of it sane.
pub const MAX_FIELD: u64 = 1 << 20;

/// A concrete finite field `F_{p^d}`, reduced modulo `irreducible`
/// (coefficients low-to-high, length `d + 1`, monic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub d: usize,
    pub irreducible: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Build `F_{p^d}`, selecting the canonical irreducible modulus.
pub fn field_make(p: u64, d: usize) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::validation(format!("field_make: p = {p} is not prime")));
    }
    if d == 0 {
        return Err(Error::validation("field_make: d must be >= 1"));
    }
    let mut size: u64 = 1;
    for _ in 0..d {
        size = size
            .checked_mul(p)
            .filter(|&s| s <= MAX_FIELD)
            .ok_or_else(|| {
                Error::validation(format!("field_make: p^d exceeds cap {MAX_FIELD}"))
            })?;
    }
    let irreducible = if d == 1 {
        vec![0, 1] // X itself; reduction mod X never triggers for degree-0 elements
    } else {
        find_irreducible(p, d)
    };
    Ok(FieldSpec { p, d, irreducible })
}

/// Smallest monic irreducible of degree `d` over `F_p`, ordered by the
/// integer code of the non-leading coefficients (constant term least
/// significant).
fn find_irreducible(p: u64, d: usize) -> Vec<u64> {
    let count = p.pow(d as u32);
    for n in 0..count {
        let mut poly = digits(n, p, d);
        poly.push(1);
        if poly_is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible of every degree exists over every prime field")
}

fn digits(mut n: u64, p: u64, d: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        out.push(n % p);
        n /= p;
    }
    out
}

fn undigits(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, &ci| acc * p + ci)
}

fn poly_deg(poly: &[u64]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo monic-leading `m`, over `F_p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = poly_deg(m).expect("modulus must be nonzero");
    let lead_inv = mod_inv(m[md], p);
    let mut r = a.to_vec();
    while let Some(rd) = poly_deg(&r) {
        if rd < md {
            break;
        }
        let factor = r[rd] * lead_inv % p;
        for i in 0..=md {
            let idx = rd - md + i;
            r[idx] = (r[idx] + p - factor * m[i] % p) % p;
        }
    }
    r.truncate(md);
    r.resize(md, 0);
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is tiny; Fermat is fine.
    mod_pow(a % p, p - 2, p)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let d = poly_deg(poly).unwrap_or(0);
    if d == 0 {
        return false;
    }
    for e in 1..=d / 2 {
        for n in 0..p.pow(e as u32) {
            let mut div = digits(n, p, e);
            div.push(1);
            if poly_deg(&poly_rem(poly, &div, p)).is_none() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    pub fn size(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    pub fn validate_elem(&self, a: u64) -> Result<()> {
        if a < self.size() {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "element code {a} out of range for field of size {}",
                self.size()
            )))
        }
    }

    /// Coefficient vector of the element with code `a` (length `d`).
    pub fn coeffs(&self, a: u64) -> Vec<u64> {
        digits(a, self.p, self.d)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> u64 {
        debug_assert!(c.len() <= self.d);
        undigits(c, self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let sum: Vec<u64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        undigits(&sum, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let c: Vec<u64> = self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect();
        undigits(&c, self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.d == 1 {
            return a * b % self.p;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.d];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        undigits(&poly_rem(&prod, &self.irreducible, self.p), self.p)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::validation("inverse of zero"));
        }
        Ok(self.pow(a, self.size() - 2))
    }

    /// Multiplicative order of `a`.
    pub fn order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::validation("order of zero"));
        }
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        Ok(n)
    }

    /// Smallest-code generator of the multiplicative group.
    pub fn primitive_element(&self) -> u64 {
        let group = self.size() - 1;
        (1..self.size())
            .find(|&a| self.order(a).unwrap() == group)
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

/// Coordinate isomorphism `f : F_{p^d} -> F_p^d` (the coefficient vector).
/// It is F_p-linear: `f(a + b) = f(a) + f(b)` and `f(c * a) = c * f(a)` for
/// `c` in the prime subfield.
pub fn f_map(spec: &FieldSpec, a: u64) -> Result<Vec<u64>> {
    spec.validate_elem(a)?;
    Ok(spec.coeffs(a))
}

/// Entrywise extension `F : F_{p^d}^n -> F_p^{nd}` of [`f_map`], concatenating
/// the per-entry coefficient vectors.
pub fn big_f_map(spec: &FieldSpec, v: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::with_capacity(v.len() * spec.d);
    for &a in v {
        out.extend(f_map(spec, a)?);
    }
    Ok(out)
}

/// `C_{(i,alpha)}`: the nonzero elements whose `i`-th coordinate (1-based)
/// under [`f_map`] equals `alpha`. For every nonzero `a` there is at least one
/// pair `(i, alpha)` with `a` in `C_{(i,alpha)}`, and scaling members by a
/// prime-subfield unit permutes the family.
pub fn c_set(spec: &FieldSpec, i: usize, alpha: u64) -> Result<Vec<u64>> {
    if i == 0 || i > spec.d {
        return Err(Error::validation(format!(
            "c_set: coordinate {i} out of range 1..={}",
            spec.d
        )));
    }
    if alpha == 0 || alpha >= spec.p {
        return Err(Error::validation(format!(
            "c_set: alpha = {alpha} must be a nonzero element of F_{}",
            spec.p
        )));
    }
    Ok((1..spec.size())
        .filter(|&a| spec.coeffs(a)[i - 1] == alpha)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_irreducibles() {
        // Frozen moduli for the small fields the reductions use.
        assert_eq!(field_make(3, 2).unwrap().irreducible, vec![1, 0, 1]); // X^2 + 1
        assert_eq!(field_make(2, 2).unwrap().irreducible, vec![1, 1, 1]); // X^2 + X + 1
        assert_eq!(field_make(2, 3).unwrap().irreducible, vec![1, 1, 0, 1]); // X^3 + X + 1
        assert_eq!(field_make(2, 4).unwrap().irreducible, vec![1, 1, 0, 0, 1]); // X^4 + X + 1
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(field_make(4, 1).is_err());
        assert!(field_make(2, 0).is_err());
        assert!(field_make(2, 21).is_err()); // 2^21 > cap
    }

    #[test]
    fn f4_arithmetic_table() {
        let f4 = field_make(2, 2).unwrap();
        let x = 2; // code of X
        assert_eq!(f4.mul(x, x), 3); // X^2 = X + 1
        assert_eq!(f4.mul(x, 3), 1); // X * (X+1) = X^2 + X = 1
        assert_eq!(f4.inv(x).unwrap(), 3);
        assert_eq!(f4.add(3, x), 1);
        assert_eq!(f4.pow(x, 3), 1);
    }

    #[test]
    fn prime_field_matches_modular_arithmetic() {
        let f7 = field_make(7, 1).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f7.add(a, b), (a + b) % 7);
                assert_eq!(f7.mul(a, b), a * b % 7);
            }
            if a != 0 {
                assert_eq!(f7.mul(a, f7.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for (p, d) in [(2, 4), (3, 3), (5, 2)] {
            let f = field_make(p, d).unwrap();
            for a in 1..f.size() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p={p} d={d} a={a}");
            }
        }
    }

    #[test]
    fn f_map_is_linear() {
        let f9 = field_make(3, 2).unwrap();
        for a in 0..9 {
            for b in 0..9 {
                let lhs = f_map(&f9, f9.add(a, b)).unwrap();
                let rhs: Vec<u64> = f_map(&f9, a)
                    .unwrap()
                    .iter()
                    .zip(f_map(&f9, b).unwrap())
                    .map(|(x, y)| (x + y) % 3)
                    .collect();
                assert_eq!(lhs, rhs);
            }
            // scalar action of the prime subfield
            for c in 0..3u64 {
                let lhs = f_map(&f9, f9.mul(c, a)).unwrap();
                let rhs: Vec<u64> = f_map(&f9, a).unwrap().iter().map(|x| x * c % 3).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn c_sets_in_f4() {
        let f4 = field_make(2, 2).unwrap();
        assert_eq!(c_set(&f4, 1, 1).unwrap(), vec![1, 3]); // 1 and X+1
        assert_eq!(c_set(&f4, 2, 1).unwrap(), vec![2, 3]); // X and X+1
        assert!(c_set(&f4, 3, 1).is_err());
        assert!(c_set(&f4, 1, 0).is_err());
    }

    #[test]
    fn c_sets_cover_nonzero_elements() {
        for (p, d) in [(2, 2), (2, 3), (3, 2), (5, 1)] {
            let f = field_make(p, d).unwrap();
            let mut covered = vec![false; f.size() as usize];
            for i in 1..=d {
                for alpha in 1..p {
                    for a in c_set(&f, i, alpha).unwrap() {
                        covered[a as usize] = true;
                    }
                }
            }
            assert!(covered[1..].iter().all(|&c| c));
            assert!(!covered[0]);
        }
    }

    #[test]
    fn big_f_map_concatenates() {
        let f4 = field_make(2, 2).unwrap();
        assert_eq!(big_f_map(&f4, &[1, 2, 3]).unwrap(), vec![1, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn primitive_elements() {
        let f16 = field_make(2, 4).unwrap();
        let g = f16.primitive_element();
        assert_eq!(f16.order(g).unwrap(), 15);
        // X is primitive for X^4 + X + 1
        assert_eq!(g, 2);
    }
}
