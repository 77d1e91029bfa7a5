//! Exact arithmetic and enumeration for the special linear group SL(2,p).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the modulus for full group enumeration.
///
/// |SL(2,23)| = 12144, which keeps every |G| x |G| intermediate well under
/// bounds suitable for dense bit-packed work.
pub const DEFAULT_PRIME_CAP: u32 = 23;

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Order of SL(2,p): (p^2 - 1) * p.
pub fn group_order(p: u32) -> u64 {
    let p = p as u64;
    (p * p - 1) * p
}

/// A 2x2 matrix over Z_p with determinant 1, entries stored row-major as
/// canonical residues in [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    p: u32,
    e: [u32; 4],
}

impl GroupElement {
    pub fn new(p: u32, entries: [u32; 4]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if entries.iter().any(|&x| x >= p) {
            return Err(Error::InvalidElement(format!(
                "entries {entries:?} not reduced mod {p}"
            )));
        }
        let el = GroupElement { p, e: entries };
        if el.det() != 1 % p {
            return Err(Error::InvalidElement(format!(
                "det of {entries:?} mod {p} is {}, expected 1",
                el.det()
            )));
        }
        Ok(el)
    }

    /// Reduce arbitrary integer entries mod p, then validate.
    pub fn from_integers(p: u32, entries: [i64; 4]) -> Result<Self> {
        let m = p as i64;
        let reduced = entries.map(|x| x.rem_euclid(m) as u32);
        Self::new(p, reduced)
    }

    pub fn identity(p: u32) -> Self {
        GroupElement {
            p,
            e: [1 % p, 0, 0, 1 % p],
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> [u32; 4] {
        self.e
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        (((a * d) % p + p - (b * c) % p) % p) as u32
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.p)
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        let [e, f, g, h] = other.e.map(u64::from);
        Ok(GroupElement {
            p: self.p,
            e: [
                ((a * e + b * g) % p) as u32,
                ((a * f + b * h) % p) as u32,
                ((c * e + d * g) % p) as u32,
                ((c * f + d * h) % p) as u32,
            ],
        })
    }

    /// Adjugate inverse: [[d, -b], [-c, a]] mod p (valid since det = 1).
    pub fn inverse(&self) -> GroupElement {
        let p = self.p;
        let [a, b, c, d] = self.e;
        GroupElement {
            p,
            e: [d, (p - b) % p, (p - c) % p, a],
        }
    }
}

impl std::fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{},{}],[{},{}]] mod {}",
            self.e[0], self.e[1], self.e[2], self.e[3], self.p
        )
    }
}

/// The full group in a fixed (lexicographic) order, with the inverse map
/// from element to position.
pub struct GroupIndex {
    p: u32,
    elements: Vec<GroupElement>,
    positions: HashMap<[u32; 4], usize>,
}

impl GroupIndex {
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.positions.get(&g.entries()).copied()
    }
}

/// Enumerate SL(2,p) in lexicographic order on (a,b,c,d).
pub fn enumerate_group(p: u32) -> Result<GroupIndex> {
    enumerate_group_capped(p, DEFAULT_PRIME_CAP)
}

pub fn enumerate_group_capped(p: u32, prime_cap: u32) -> Result<GroupIndex> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > prime_cap {
        return Err(Error::GroupTooLarge {
            p,
            order: group_order(p),
            cap: group_order(prime_cap),
        });
    }
    let pp = p as u64;
    let mut elements = Vec::with_capacity(group_order(p) as usize);
    // det = ad - bc = 1: for each (a,b,c) the d is forced when a != 0,
    // otherwise b must be invertible and d is free. A plain quadruple scan
    // keeps lexicographic order with no bookkeeping; p <= 23 makes p^4 cheap.
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let det = ((a as u64 * d as u64) % pp + pp - (b as u64 * c as u64) % pp) % pp;
                    if det == 1 % pp {
                        elements.push(GroupElement { p, e: [a, b, c, d] });
                    }
                }
            }
        }
    }
    debug_assert_eq!(elements.len() as u64, group_order(p));
    let positions = elements
        .iter()
        .enumerate()
        .map(|(i, g)| (g.e, i))
        .collect();
    Ok(GroupIndex {
        p,
        elements,
        positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut impl Rng, index: &GroupIndex) -> GroupElement {
        *index.element(rng.gen_range(0..index.order()))
    }

    #[test]
    fn identity_is_neutral() {
        let index = enumerate_group(5).unwrap();
        let id = GroupElement::identity(5);
        for g in index.elements().iter().take(30) {
            assert_eq!(id.mul(g).unwrap(), *g);
            assert_eq!(g.mul(&id).unwrap(), *g);
        }
    }

    #[test]
    fn known_product_mod_5() {
        let x = GroupElement::new(5, [1, 1, 0, 1]).unwrap();
        let y = GroupElement::new(5, [1, 0, 1, 1]).unwrap();
        let z = x.mul(&y).unwrap();
        assert_eq!(z.entries(), [2, 1, 1, 1]);
    }

    #[test]
    fn known_inverse_mod_5() {
        let x = GroupElement::new(5, [1, 1, 0, 1]).unwrap();
        assert_eq!(x.inverse().entries(), [1, 4, 0, 1]);
        assert_eq!(GroupElement::identity(7).inverse(), GroupElement::identity(7));
    }

    #[test]
    fn inverse_roundtrip_and_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let index = enumerate_group(11).unwrap();
        for _ in 0..100 {
            let x = random_element(&mut rng, &index);
            assert!(x.mul(&x.inverse()).unwrap().is_identity());
            assert_eq!(x.inverse().inverse(), x);
        }
    }

    #[test]
    fn closure_under_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let index = enumerate_group(7).unwrap();
        for _ in 0..1000 {
            let x = random_element(&mut rng, &index);
            let y = random_element(&mut rng, &index);
            let z = x.mul(&y).unwrap();
            assert_eq!(z.det(), 1);
            assert!(index.position(&z).is_some());
        }
    }

    #[test]
    fn associativity_spot_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let index = enumerate_group(11).unwrap();
        for _ in 0..100 {
            let x = random_element(&mut rng, &index);
            let y = random_element(&mut rng, &index);
            let z = random_element(&mut rng, &index);
            let lhs = x.mul(&y).unwrap().mul(&z).unwrap();
            let rhs = x.mul(&y.mul(&z).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn group_orders() {
        for (p, expected) in [(2u32, 6usize), (3, 24), (5, 120), (7, 336), (11, 1320)] {
            let index = enumerate_group(p).unwrap();
            assert_eq!(index.order(), expected);
        }
    }

    #[test]
    fn p2_brute_force_oracle() {
        // All 16 binary matrices, keep det = 1 mod 2.
        let mut count = 0;
        for bits in 0u32..16 {
            let e = [bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1];
            if (e[0] * e[3] + e[1] * e[2]) % 2 == 1 {
                count += 1;
            }
        }
        assert_eq!(count, 6);
        assert_eq!(enumerate_group(2).unwrap().order(), 6);
    }

    #[test]
    fn index_bijectivity() {
        let index = enumerate_group(5).unwrap();
        for i in 0..index.order() {
            assert_eq!(index.position(index.element(i)), Some(i));
        }
    }

    #[test]
    fn lexicographic_ordering() {
        let index = enumerate_group(3).unwrap();
        let entries: Vec<[u32; 4]> = index.elements().iter().map(|g| g.entries()).collect();
        let mut sorted = entries.clone();
        sorted.sort();
        assert_eq!(entries, sorted);
    }

    #[test]
    fn rejections() {
        assert!(matches!(enumerate_group(4), Err(Error::NotPrime(4))));
        assert!(matches!(
            enumerate_group_capped(29, 23),
            Err(Error::GroupTooLarge { .. })
        ));
        assert!(GroupElement::new(5, [1, 0, 0, 2]).is_err());
        assert!(GroupElement::new(5, [6, 0, 0, 1]).is_err());
        let x = GroupElement::identity(5);
        let y = GroupElement::identity(7);
        assert!(matches!(x.mul(&y), Err(Error::ModulusMismatch(5, 7))));
    }
}
