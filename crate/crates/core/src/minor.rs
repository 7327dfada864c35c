//! Minor detection and the longest-line minor.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{find_iso, IsoCertificate, IsoData};
use crate::matroid::{Matroid, ENUM_CAP, RANK_CAP};
use crate::subset::{combinations, Subset};

/// Host-size cap for general minor search.
pub const MINOR_HOST_CAP: usize = 24;

/// `host / contract \ delete` is isomorphic to the target via `iso`, which
/// maps the minor's (renumbered) elements to the target's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorWitness {
    pub contract: Subset,
    pub delete: Subset,
    pub iso: IsoCertificate,
}

impl MinorWitness {
    /// Independent re-check with fresh rank queries.
    pub fn verify(&self, host: &Matroid, target: &Matroid) -> bool {
        if !self.contract.is_disjoint(&self.delete) || !host.is_independent(&self.contract) {
            return false;
        }
        match host.minor(&self.contract, &self.delete) {
            Ok(minor) => self.iso.verify(&minor, target),
            Err(_) => false,
        }
    }
}

/// A simple rank-2 target, i.e. some `U_{2,m}`.
fn is_line(n: &Matroid) -> bool {
    n.rank_total() == 2 && n.is_simple()
}

/// Finds `target` as a minor of `host`: contract sets are independent sets
/// of size `r(host) - r(target)` in lexicographic order, and for each, the
/// candidate restrictions in lexicographic order. Returns the first witness.
pub fn has_minor(host: &Matroid, target: &Matroid) -> Result<Option<MinorWitness>> {
    let n_host = host.ground_size();
    let n_target = target.ground_size();
    if n_target > n_host || target.rank_total() > host.rank_total() {
        return Ok(None);
    }
    if is_line(target) {
        return line_minor(host, n_target);
    }
    if n_host > MINOR_HOST_CAP {
        return Err(Error::cap("minor search host", n_host, MINOR_HOST_CAP));
    }
    let target_data = IsoData::new(target)?;
    let target_simple = target.is_simple();
    let target_eps = target.epsilon();
    let target_loops = (0..n_target).filter(|&e| target.is_loop(e)).count();
    let k = host.rank_total() - target.rank_total();

    for c in combinations(n_host, k) {
        let contract: Subset = c.into_iter().collect();
        if !host.is_independent(&contract) {
            continue;
        }
        let rest: Vec<usize> = contract.complement(n_host).to_vec();
        let minor = host.contract(&contract)?;
        // candidate pools, in the contracted minor's ids
        let pool: Vec<usize> = if target_simple {
            let (_, reps) = minor.points();
            reps
        } else {
            (0..minor.ground_size()).collect()
        };
        if pool.len() < n_target {
            continue;
        }
        for pick in combinations(pool.len(), n_target) {
            let keep: Subset = pick.iter().map(|&i| pool[i]).collect();
            if minor.rank(&keep) != target.rank_total() {
                continue;
            }
            let cand = minor.restrict(&keep)?;
            if !target_simple {
                let loops = (0..n_target).filter(|&e| cand.is_loop(e)).count();
                if loops != target_loops || cand.epsilon() != target_eps {
                    continue;
                }
            }
            if let Some(iso) = find_iso(&IsoData::new(&cand)?, &target_data) {
                let kept_host: Subset = keep.iter().map(|e| rest[e]).collect();
                let delete = kept_host.union(&contract).complement(n_host);
                return Ok(Some(MinorWitness {
                    contract,
                    delete,
                    iso,
                }));
            }
        }
    }
    Ok(None)
}

/// The `U_{2,m}` minor found through the longest line.
fn line_minor(host: &Matroid, m: usize) -> Result<Option<MinorWitness>> {
    let Some((flat, len)) = longest_line_flat(host)? else {
        return Ok(None);
    };
    if len < m {
        return Ok(None);
    }
    let n_host = host.ground_size();
    let contract = host.basis_of(&flat);
    let minor = host.contract(&contract)?;
    let rest = contract.complement(n_host).to_vec();
    let (_, reps) = minor.points();
    let keep: Subset = reps[..m].iter().map(|&e| rest[e]).collect();
    let delete = keep.union(&contract).complement(n_host);
    Ok(Some(MinorWitness {
        contract,
        delete,
        iso: IsoCertificate {
            bijection: (0..m).collect(),
        },
    }))
}

/// The rank-`(r-2)` flat whose contraction has the most points, and that
/// point count. `None` when `r(M) < 2`.
fn longest_line_flat(m: &Matroid) -> Result<Option<(Subset, usize)>> {
    let r = m.rank_total();
    if r < 2 {
        return Ok(None);
    }
    let n = m.ground_size();
    if r > 8 && n > ENUM_CAP {
        return Err(Error::cap("longest line ground set", n, ENUM_CAP));
    }
    let mut best: Option<(Subset, usize)> = None;
    for flat in m.flats_of_rank_capped(r - 2, RANK_CAP)? {
        let basis = m.basis_of(&flat);
        let eps = m.contract(&basis)?.epsilon();
        if best.as_ref().is_none_or(|(_, b)| eps > *b) {
            best = Some((flat, eps));
        }
    }
    Ok(best)
}

/// The largest `m` such that `M` has a `U_{2,m}`-minor (0 when `r(M) < 2`).
///
/// `M` has no `U_{2,l+2}`-minor iff this is at most `l + 1`.
pub fn longest_line_minor(m: &Matroid) -> Result<usize> {
    Ok(longest_line_flat(m)?.map_or(0, |(_, len)| len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{free_spike, pg, uniform};
    use crate::iso::are_isomorphic;

    #[test]
    fn fano_minors() {
        let fano = pg(3, 2).unwrap().matroid;
        let u23 = uniform(2, 3).unwrap().matroid;
        let w = has_minor(&fano, &u23).unwrap().unwrap();
        assert_eq!(w.contract.len(), 1);
        assert!(w.verify(&fano, &u23));
        let u24 = uniform(2, 4).unwrap().matroid;
        assert!(has_minor(&fano, &u24).unwrap().is_none());
    }

    #[test]
    fn spike_has_u24() {
        let s = free_spike(3).unwrap().matroid;
        let u24 = uniform(2, 4).unwrap().matroid;
        let w = has_minor(&s, &u24).unwrap().unwrap();
        assert_eq!(w.contract.len(), 1);
        assert!(w.verify(&s, &u24));
    }

    #[test]
    fn general_path_on_non_line_target() {
        // U_{3,5} is a minor of U_{4,7} but the Fano plane is not.
        let host = uniform(4, 7).unwrap().matroid;
        let t = uniform(3, 5).unwrap().matroid;
        let w = has_minor(&host, &t).unwrap().unwrap();
        assert!(w.verify(&host, &t));
        let fano = pg(3, 2).unwrap().matroid;
        let big = pg(4, 3).unwrap().matroid;
        assert!(has_minor(&host, &fano).unwrap().is_none());
        assert!(matches!(has_minor(&big, &fano), Err(Error::SizeCapExceeded { .. })));
    }

    #[test]
    fn non_simple_target() {
        // a parallel pair plus a loop
        let host = pg(3, 2).unwrap().matroid;
        let lin = host.as_linear().unwrap();
        let mut cols = lin.select(&[0, 0]).columns().to_vec();
        cols.push(vec![crate::FieldElement::ZERO; 3]);
        let target: Matroid = crate::matroid::LinearBackend::new(lin.field().clone(), 3, cols)
            .unwrap()
            .into();
        let w = has_minor(&host, &target).unwrap().unwrap();
        assert!(w.verify(&host, &target));
        let m = host.minor(&w.contract, &w.delete).unwrap();
        assert!(are_isomorphic(&m, &target).unwrap().is_some());
    }

    #[test]
    fn longest_lines() {
        assert_eq!(longest_line_minor(&pg(3, 3).unwrap().matroid).unwrap(), 4);
        assert_eq!(longest_line_minor(&uniform(4, 10).unwrap().matroid).unwrap(), 8);
        assert_eq!(longest_line_minor(&pg(4, 2).unwrap().matroid).unwrap(), 3);
        assert_eq!(longest_line_minor(&uniform(1, 3).unwrap().matroid).unwrap(), 0);
    }
}
