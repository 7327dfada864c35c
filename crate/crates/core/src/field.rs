//! Finite fields `GF(p^k)` with table-driven arithmetic.
//!
//! Elements are stored by canonical index: the polynomial
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` has index `sum c_i p^i`. Index 0 is
//! the zero element and index 1 is the identity.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;
/// Fields up to this order get a full addition table.
const ADD_TABLE_MAX: u32 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field operations exposed through [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
    Pow(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    All,
    Nonzero,
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `add[a * q + b]`, only for `q <= ADD_TABLE_MAX`.
    add: Vec<u16>,
    neg: Vec<u16>,
    /// `exp[i] = g^i` for a fixed primitive element `g`.
    exp: Vec<u16>,
    log: Vec<u32>,
}

/// A finite field `GF(q)`, `q = p^k`, fixed by a monic irreducible modulus.
///
/// Cloning is cheap; the arithmetic tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {:?}", self.t.q, self.t.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.modulus == other.t.modulus
    }
}

impl Eq for FieldSpec {}

// Polynomials over GF(p), constant term first.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // modulus is monic: x^k = -(m_0 + ... + m_{k-1} x^{k-1})
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let sub = c * m % p;
            prod[deg - k + i] = (prod[deg - k + i] + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// True when monic `divisor` divides `poly` over GF(p).
fn divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    let d = divisor.len() - 1;
    let mut rem = poly.to_vec();
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (i, &c) in divisor.iter().enumerate() {
                let sub = lead * c % p;
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

/// Monic polynomials of exact degree `deg`, constant term first.
fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |mut i| {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push((i % p as u64) as u32);
            i /= p as u64;
        }
        c.push(1);
        c
    })
}

/// Exhaustive trial division by every monic polynomial of degree `1..=k/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len().saturating_sub(1);
    if k == 0 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
        return false;
    }
    (1..=k / 2).all(|deg| monic_polys(p, deg).all(|d| !divides(&d, modulus, p)))
}

impl FieldSpec {
    /// Builds `GF(q)` with the lexicographically smallest monic irreducible
    /// modulus, coefficients compared constant term first.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::cap("field order", q as usize, MAX_ORDER as usize));
        }
        let p = p as u32;
        if k == 1 {
            return Self::with_modulus(p, vec![0, 1]);
        }
        let k = k as usize;
        // Constant term is the most significant digit of the scan.
        let total = (p as u64).pow(k as u32);
        for i in 0..total {
            let mut low = vec![0u32; k];
            let mut rest = i;
            for slot in (0..k).rev() {
                low[slot] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            low.push(1);
            if is_irreducible(&low, p) {
                return Self::with_modulus(p, low);
            }
        }
        unreachable!("an irreducible polynomial exists in every degree")
    }

    /// Builds a field from an explicit modulus (constant term first).
    ///
    /// For prime fields the modulus must be the placeholder `[0, 1]`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if prime_power(p as u64) != Some((p as u64, 1)) {
            return Err(Error::NotPrimePower(p as u64));
        }
        let k = modulus.len().saturating_sub(1) as u32;
        if k > 16 {
            return Err(Error::cap("field degree", k as usize, 16));
        }
        let valid = if k == 1 {
            modulus == [0, 1]
        } else {
            is_irreducible(&modulus, p)
        };
        if !valid {
            return Err(Error::BadParams(format!(
                "modulus {modulus:?} is not monic irreducible over GF({p})"
            )));
        }
        let q64 = (p as u64).pow(k);
        if q64 > MAX_ORDER {
            return Err(Error::cap("field order", q64 as usize, MAX_ORDER as usize));
        }
        let q = q64 as u32;
        let coeffs_of = |mut i: u32| {
            let mut c = Vec::with_capacity(k as usize);
            for _ in 0..k {
                c.push(i % p);
                i /= p;
            }
            c
        };
        let index_of = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);

        let mut neg = vec![0u16; q as usize];
        for (i, slot) in neg.iter_mut().enumerate() {
            let c: Vec<u32> = coeffs_of(i as u32).iter().map(|&d| (p - d) % p).collect();
            *slot = index_of(&c) as u16;
        }

        let mut add = Vec::new();
        if q <= ADD_TABLE_MAX {
            add = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let ca = coeffs_of(a);
                for b in 0..q {
                    let cb = coeffs_of(b);
                    let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % p).collect();
                    add[(a * q + b) as usize] = index_of(&s) as u16;
                }
            }
        }

        // Find a primitive element by exhaustive order check.
        let poly_of = |i: u32| {
            if k == 1 {
                vec![i]
            } else {
                coeffs_of(i)
            }
        };
        let mul_prime = |a: u32, b: u32| a * b % p;
        let mut exp = Vec::new();
        let mut log = vec![0u32; q as usize];
        for g in 1..q {
            let mut powers = Vec::with_capacity(q as usize - 1);
            let mut cur = 1u32;
            let gp = poly_of(g);
            loop {
                powers.push(cur as u16);
                cur = if k == 1 {
                    mul_prime(cur, g)
                } else {
                    index_of(&poly_mulmod(&poly_of(cur), &gp, &modulus, p))
                };
                if cur == 1 || powers.len() >= q as usize {
                    break;
                }
            }
            if powers.len() == q as usize - 1 {
                exp = powers;
                break;
            }
        }
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }

        Ok(FieldSpec {
            t: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                add,
                neg,
                exp,
                log,
            }),
        })
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn k(&self) -> u32 {
        self.t.k
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.t.q, "index {index} outside GF({})", self.t.q);
        FieldElement(index as u16)
    }

    /// Coefficient vector (length `k`, constant term first).
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut i = a.0 as u32;
        (0..self.t.k)
            .map(|_| {
                let d = i % self.t.p;
                i /= self.t.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        let p = self.t.p;
        FieldElement(coeffs.iter().rev().fold(0u32, |acc, &d| acc * p + d % p) as u16)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.t;
        if !t.add.is_empty() {
            return FieldElement(t.add[a.index() * t.q as usize + b.index()]);
        }
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0 as u32, b.0 as u32);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % t.p + y % t.p) % t.p) * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        FieldElement(out as u16)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.t.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let n = t.q - 1;
        let e = (t.log[a.index()] + t.log[b.index()]) % n;
        FieldElement(t.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let n = t.q - 1;
        Ok(FieldElement(t.exp[((n - t.log[a.index()]) % n) as usize]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let n = (t.q - 1) as u64;
        let idx = (t.log[a.index()] as u64 * (e % n)) % n;
        FieldElement(t.exp[idx as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let n = self.t.q - 1;
        let l = self.t.log[a.index()];
        Some(n / gcd(n, l))
    }

    /// Dispatches one of the field operations; unary operations ignore `b`.
    pub fn arith(&self, op: FieldOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
        let need_b = || b.ok_or_else(|| Error::BadParams("binary operation needs two operands".into()));
        for x in std::iter::once(a).chain(b) {
            if x.0 as u32 >= self.t.q {
                return Err(Error::BadParams(format!("{x} is not an element of GF({})", self.t.q)));
            }
        }
        match op {
            FieldOp::Add => Ok(self.add(a, need_b()?)),
            FieldOp::Mul => Ok(self.mul(a, need_b()?)),
            FieldOp::Neg => Ok(self.neg(a)),
            FieldOp::Inv => self.inv(a),
            FieldOp::Pow(e) => Ok(self.pow(a, e)),
        }
    }

    /// Elements in canonical index order.
    pub fn enumerate(&self, which: Which) -> Vec<FieldElement> {
        let start = match which {
            Which::All => 0,
            Which::Nonzero => 1,
        };
        (start..self.t.q).map(|i| FieldElement(i as u16)).collect()
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct FieldSpecRepr {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u32>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FieldSpecRepr {
            p: self.t.p as u64,
            k: self.t.k,
            modulus: self.t.modulus.clone(),
        }
        .serialize(s)
    }
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        if prime_power(r.p) != Some((r.p, 1)) || r.p > MAX_ORDER {
            return Err(Error::NotPrimePower(r.p));
        }
        if r.modulus.len() != r.k as usize + 1 {
            return Err(Error::BadParams(format!(
                "modulus has {} coefficients, expected k + 1 = {}",
                r.modulus.len(),
                r.k + 1
            )));
        }
        FieldSpec::with_modulus(r.p as u32, r.modulus)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = FieldSpecRepr::deserialize(d)?;
        FieldSpec::try_from(repr).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::is_prime_power;

    #[test]
    fn construction_examples() {
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!((f5.p(), f5.k(), f5.q()), (5, 1, 5));
        let f4 = FieldSpec::new(4).unwrap();
        assert_eq!((f4.p(), f4.k()), (2, 2));
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(1 << 17).is_err());
    }

    #[test]
    fn smallest_irreducible_scan() {
        // Among x^3 + x + 1 and x^3 + x^2 + 1, constant-first order picks (1,0,1,1).
        assert_eq!(FieldSpec::new(8).unwrap().modulus(), &[1, 0, 1, 1]);
        // Over GF(3), x^2 + 1 is the first candidate with a nonzero constant term.
        assert_eq!(FieldSpec::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn arithmetic_examples() {
        let f5 = FieldSpec::new(5).unwrap();
        assert_eq!(f5.inv(f5.element(2)).unwrap(), f5.element(3));
        assert_eq!(f5.inv(FieldElement::ZERO), Err(Error::DivisionByZero));

        let f4 = FieldSpec::new(4).unwrap();
        let x = f4.from_coeffs(&[0, 1]);
        assert_eq!(f4.mul(x, x), f4.from_coeffs(&[1, 1]));

        let f8 = FieldSpec::new(8).unwrap();
        for g in f8.enumerate(Which::Nonzero) {
            assert_eq!(f8.pow(g, 7), FieldElement::ONE);
        }
        assert_eq!(
            f8.arith(FieldOp::Inv, FieldElement::ZERO, None),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn enumeration() {
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(f3.enumerate(Which::Nonzero), vec![FieldElement(1), FieldElement(2)]);
        assert_eq!(FieldSpec::new(4).unwrap().enumerate(Which::All).len(), 4);
        let f9 = FieldSpec::new(9).unwrap();
        let nz = f9.enumerate(Which::Nonzero);
        assert_eq!(nz.len(), 8);
        assert!(nz.iter().any(|&g| f9.order(g) == Some(8)));
    }

    #[test]
    fn coefficient_index_bijection() {
        let f = FieldSpec::new(27).unwrap();
        assert_eq!(f.coeffs(FieldElement::ZERO), vec![0, 0, 0]);
        assert_eq!(f.coeffs(FieldElement::ONE), vec![1, 0, 0]);
        for a in f.enumerate(Which::All) {
            assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
        }
    }

    // Brute-force order computation, independent of the log tables.
    fn naive_order(f: &FieldSpec, a: FieldElement) -> u32 {
        let mut cur = a;
        let mut n = 1;
        while cur != FieldElement::ONE {
            cur = f.mul(cur, a);
            n += 1;
        }
        n
    }

    #[test]
    fn field_axioms_up_to_64() {
        for q in 2..=64u64 {
            if !is_prime_power(q) {
                continue;
            }
            let f = FieldSpec::new(q).unwrap();
            let all = f.enumerate(Which::All);
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            let triples: Vec<(usize, usize, usize)> = if q <= 16 {
                let n = all.len();
                (0..n * n * n).map(|i| (i % n, i / n % n, i / (n * n))).collect()
            } else {
                // Deterministic sample of triples.
                let n = all.len();
                (0..4000usize)
                    .map(|i| ((i * 7919) % n, (i * 104_729 + 3) % n, (i * 1_299_709 + 11) % n))
                    .collect()
            };
            for (i, j, l) in triples {
                let (a, b, c) = (all[i], all[j], all[l]);
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
            let cyclic = f
                .enumerate(Which::Nonzero)
                .into_iter()
                .any(|g| naive_order(&f, g) == q as u32 - 1);
            assert!(cyclic, "GF({q})* not cyclic");
        }
    }

    #[test]
    fn large_field_digitwise_addition() {
        let f = FieldSpec::new(729).unwrap();
        let a = f.from_coeffs(&[2, 1, 0, 2, 0, 1]);
        let b = f.from_coeffs(&[1, 1, 2, 2, 0, 0]);
        assert_eq!(f.coeffs(f.add(a, b)), vec![0, 2, 2, 1, 0, 1]);
        assert_eq!(f.sub(f.add(a, b), b), a);
    }

    #[test]
    fn json_shape() {
        let f4 = FieldSpec::new(4).unwrap();
        let json = serde_json::to_string(&f4).unwrap();
        assert_eq!(json, r#"{"p":2,"k":2,"modulus":[1,1,1]}"#);
        let back: FieldSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f4);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"k":2,"modulus":[0,0,1]}"#).is_err());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":6,"k":1,"modulus":[0,1]}"#).is_err());
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"k":1,"modulus":[0,1],"x":1}"#).is_err());
    }
}
