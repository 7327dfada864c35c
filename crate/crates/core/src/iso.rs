//! Matroid isomorphism by backtracking over element bijections.
//!
//! A bijection is an isomorphism iff it maps circuits onto circuits. The
//! search assigns elements one at a time, only to partners with the same
//! invariant (loop, parallel-class size, circuit counts by size), and checks
//! every circuit that becomes fully assigned in either matroid.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{Matroid, CIRCUIT_CAP};
use crate::subset::Subset;

/// Subsets sampled when verifying certificates on more than 12 elements.
pub const VERIFY_SAMPLES: usize = 10_000;

/// `bijection[e]` is the image in the target of element `e` of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub bijection: Vec<usize>,
}

impl IsoCertificate {
    /// Re-checks `r_M(X) = r_N(image(X))` from scratch: on every subset when
    /// `|E| <= 12`, otherwise on [`VERIFY_SAMPLES`] seeded random subsets.
    pub fn verify(&self, m: &Matroid, n: &Matroid) -> bool {
        let size = m.ground_size();
        if size != n.ground_size() || self.bijection.len() != size {
            return false;
        }
        let mut seen = vec![false; size];
        for &b in &self.bijection {
            if b >= size || seen[b] {
                return false;
            }
            seen[b] = true;
        }
        let check = |x: &Subset| m.rank(x) == n.rank(&x.map(&self.bijection));
        if size <= 12 {
            return (0..1u64 << size).all(|mask| check(&Subset::from_mask(mask)));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(size as u64);
        (0..VERIFY_SAMPLES).all(|_| {
            let x: Subset = (0..size).filter(|_| rng.gen_bool(0.5)).collect();
            check(&x)
        })
    }
}

/// Precomputed circuit structure used by the search.
pub(crate) struct IsoData {
    n: usize,
    rank: usize,
    circuits: HashSet<u32>,
    by_elem: Vec<Vec<u32>>,
    invariant: Vec<Vec<usize>>,
    size_profile: Vec<usize>,
}

impl IsoData {
    pub(crate) fn new(m: &Matroid) -> Result<Self> {
        let n = m.ground_size();
        if n > CIRCUIT_CAP {
            return Err(Error::cap("isomorphism ground set", n, CIRCUIT_CAP));
        }
        let circuits: Vec<u32> = m
            .circuits()?
            .iter()
            .map(|c| c.to_mask().unwrap() as u32)
            .collect();
        let mut by_elem = vec![Vec::new(); n];
        let mut size_profile = vec![0usize; n + 2];
        // invariant[e] = [circuits through e of size 1, 2, ..]
        let mut invariant = vec![vec![0usize; n + 1]; n];
        for &c in &circuits {
            let size = c.count_ones() as usize;
            size_profile[size] += 1;
            for (e, slot) in by_elem.iter_mut().enumerate() {
                if c & (1 << e) != 0 {
                    slot.push(c);
                    invariant[e][size - 1] += 1;
                }
            }
        }
        Ok(IsoData {
            n,
            rank: m.rank_total(),
            circuits: circuits.into_iter().collect(),
            by_elem,
            invariant,
            size_profile,
        })
    }

    fn sorted_invariants(&self) -> Vec<&Vec<usize>> {
        let mut v: Vec<_> = self.invariant.iter().collect();
        v.sort();
        v
    }
}

fn image(mask: u32, map: &[usize]) -> u32 {
    let mut out = 0u32;
    let mut m = mask;
    while m != 0 {
        let e = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= 1 << map[e];
    }
    out
}

struct Search<'a> {
    a: &'a IsoData,
    b: &'a IsoData,
    order: Vec<usize>,
    fwd: Vec<usize>,
    back: Vec<usize>,
    used_a: u32,
    used_b: u32,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn consistent(&self, x: usize, y: usize) -> bool {
        for &c in &self.a.by_elem[x] {
            if c & !self.used_a == 0 && !self.b.circuits.contains(&image(c, &self.fwd)) {
                return false;
            }
        }
        for &d in &self.b.by_elem[y] {
            if d & !self.used_b == 0 && !self.a.circuits.contains(&image(d, &self.back)) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.b.n {
            if self.back[y] != UNSET || self.a.invariant[x] != self.b.invariant[y] {
                continue;
            }
            self.fwd[x] = y;
            self.back[y] = x;
            self.used_a |= 1 << x;
            self.used_b |= 1 << y;
            if self.consistent(x, y) && self.run(depth + 1) {
                return true;
            }
            self.fwd[x] = UNSET;
            self.back[y] = UNSET;
            self.used_a &= !(1 << x);
            self.used_b &= !(1 << y);
        }
        false
    }
}

pub(crate) fn find_iso(a: &IsoData, b: &IsoData) -> Option<IsoCertificate> {
    if a.n != b.n
        || a.rank != b.rank
        || a.size_profile != b.size_profile
        || a.sorted_invariants() != b.sorted_invariants()
    {
        return None;
    }
    // Rarest invariant classes first.
    let mut freq: HashMap<&Vec<usize>, usize> = HashMap::new();
    for inv in &a.invariant {
        *freq.entry(inv).or_default() += 1;
    }
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&e| (freq[&a.invariant[e]], e));
    let mut s = Search {
        a,
        b,
        order,
        fwd: vec![UNSET; a.n],
        back: vec![UNSET; b.n],
        used_a: 0,
        used_b: 0,
    };
    s.run(0).then_some(IsoCertificate { bijection: s.fwd })
}

/// An isomorphism from `m` to `n`, or `None` if there is none.
///
/// Both ground sets must have at most 20 elements.
pub fn are_isomorphic(m: &Matroid, n: &Matroid) -> Result<Option<IsoCertificate>> {
    if m.ground_size() != n.ground_size() {
        return Ok(None);
    }
    if m.ground_size() > CIRCUIT_CAP {
        return Err(Error::cap("isomorphism ground set", m.ground_size(), CIRCUIT_CAP));
    }
    if m.rank_total() != n.rank_total() || m.epsilon() != n.epsilon() {
        return Ok(None);
    }
    let a = IsoData::new(m)?;
    let b = IsoData::new(n)?;
    Ok(find_iso(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_spike, pg, uniform};

    #[test]
    fn line_examples() {
        let a = pg(2, 2).unwrap().matroid;
        let b = uniform(2, 3).unwrap().matroid;
        let cert = are_isomorphic(&a, &b).unwrap().unwrap();
        assert!(cert.verify(&a, &b));
    }

    #[test]
    fn spike_is_u36() {
        let a = free_spike(3).unwrap().matroid;
        let b = uniform(3, 6).unwrap().matroid;
        let cert = are_isomorphic(&a, &b).unwrap().unwrap();
        assert!(cert.verify(&a, &b));
    }

    #[test]
    fn fano_minus_point_is_not_uniform() {
        let fano = pg(3, 2).unwrap().matroid;
        let punctured = fano.delete(&Subset::singleton(6)).unwrap();
        assert_eq!(punctured.epsilon(), 6);
        let u = uniform(3, 6).unwrap().matroid;
        assert!(are_isomorphic(&u, &punctured).unwrap().is_none());
    }

    #[test]
    fn permuted_copy_is_found() {
        let fano = pg(3, 2).unwrap().matroid;
        let lin = fano.as_linear().unwrap();
        let perm = [3usize, 6, 0, 5, 1, 4, 2];
        let shuffled: Matroid = lin.select(&perm).into();
        let cert = are_isomorphic(&fano, &shuffled).unwrap().unwrap();
        assert!(cert.verify(&fano, &shuffled));
    }

    #[test]
    fn bad_certificates_fail() {
        let a = uniform(2, 4).unwrap().matroid;
        let b = pg(2, 3).unwrap().matroid;
        assert!(!IsoCertificate { bijection: vec![0, 0, 1, 2] }.verify(&a, &b));
        let c = uniform(3, 4).unwrap().matroid;
        assert!(!IsoCertificate { bijection: vec![0, 1, 2, 3] }.verify(&a, &c));
    }

    #[test]
    fn size_cap() {
        let big = uniform(2, 20).unwrap().matroid;
        assert!(are_isomorphic(&big, &big).unwrap().is_some());
        let g = pg(3, 4).unwrap().matroid;
        assert!(matches!(are_isomorphic(&g, &g), Err(Error::SizeCapExceeded { .. })));
    }
}
