//! Constructive versions of three density arguments: losing density under
//! contraction, descending to a restriction whose cocircuits all have large
//! rank, and extracting a principal-extension minor from a non-representable
//! extension of a projective geometry.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::{prime_power, projective_count};
use crate::constructions::{principal_ext_pg, MatroidName};
use crate::error::{Error, Result};
use crate::iso::are_isomorphic;
use crate::matroid::{Matroid, ENUM_CAP};
use crate::minor::{longest_line_minor, MinorWitness};
use crate::subset::Subset;
use crate::zphi::ZPhi;

/// Which side of the long-line dichotomy holds for an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LongLineOutcome {
    /// `M / e` is still dense.
    DenseContraction,
    /// A line through `e` with at least `q + 2` points.
    LineRestriction(Subset),
}

fn require_dense(m: &Matroid, q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::BadParams(format!("density needs q >= 2, got {q}")));
    }
    if !m.is_q_dense(q) {
        return Err(Error::PreconditionViolated(format!(
            "matroid with {} points in rank {} is not {q}-dense",
            m.epsilon(),
            m.rank_total()
        )));
    }
    Ok(())
}

/// For a `q`-dense `M` and a non-loop `e`: either `M / e` is `q`-dense, or
/// some line through `e` has at least `q + 2` points. Prefers the first.
pub fn longline_step(m: &Matroid, q: u64, e: usize) -> Result<LongLineOutcome> {
    require_dense(m, q)?;
    if e >= m.ground_size() || m.is_loop(e) {
        return Err(Error::PreconditionViolated(format!("element {e} is a loop or absent")));
    }
    let single = Subset::singleton(e);
    if m.contract(&single)?.is_q_dense(q) {
        return Ok(LongLineOutcome::DenseContraction);
    }
    // points of M / e are exactly the lines of M through e
    let (point, reps) = m.points();
    let own = point[e];
    let mut seen: Vec<Subset> = Vec::new();
    for &f in &reps {
        if Some(f) == own.map(|p| reps[p]) {
            continue;
        }
        let line = m.closure(&single.with(f));
        if seen.contains(&line) {
            continue;
        }
        let on_line = reps.iter().filter(|&&x| line.contains(x)).count();
        if on_line as u64 >= q + 2 {
            return Ok(LongLineOutcome::LineRestriction(line));
        }
        seen.push(line);
    }
    Err(Error::LemmaViolation(format!(
        "element {e}: contraction not {q}-dense and no line through it has {} points",
        q + 2
    )))
}

/// One descent step: the cocircuit found and which side was kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseStep {
    /// In the input's element ids.
    pub cocircuit: Subset,
    pub cocircuit_rank: usize,
    /// `true` when the restriction to the cocircuit was kept, `false` when
    /// the cocircuit was deleted.
    pub kept_cocircuit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DenseRestrictionReport {
    /// Elements of the input kept in the final restriction.
    pub restriction: Subset,
    pub trace: Vec<DenseStep>,
    #[serde(skip)]
    pub final_matroid: Matroid,
    pub final_rank: usize,
    pub final_points: usize,
    /// Line-length parameter used in the rank guarantee.
    pub ell: usize,
    /// Whether `(√5 - 1)^{r-1} >= ℓ^{t-1}` holds; only then is
    /// `final_rank >= t` guaranteed.
    pub hypothesis_holds: bool,
}

/// `(√5 - 1)^{r-1} >= ℓ^{t-1}`, i.e. `2^{r-1} >= ℓ^{t-1} φ^{r-1}` since
/// `√5 - 1 = 2/φ`. Overflow means the right side is astronomically larger.
pub fn rank_hypothesis(r: usize, ell: usize, t: usize) -> bool {
    let (Some(r1), Some(t1)) = (r.checked_sub(1), t.checked_sub(1)) else {
        return true;
    };
    let check = || -> Option<bool> {
        let lhs = 2i128.checked_pow(r1 as u32)?;
        let c = (ell as i128).checked_pow(t1 as u32)?;
        let rhs = ZPhi::phi_pow(r1 as u32)?.checked_scale(c)?;
        Some(ZPhi::int(lhs).checked_cmp(rhs)? != Ordering::Less)
    };
    check().unwrap_or(false)
}

/// `ε · φ^{r_total - rank} > threshold`, exactly.
fn weighted_ok(eps: usize, rank: usize, r_total: usize, threshold: u128) -> Result<bool> {
    let d = (r_total - rank) as u32;
    let lhs = ZPhi::phi_pow(d)
        .and_then(|p| p.checked_scale(eps as i128))
        .and_then(|x| x.checked_cmp(ZPhi::int(threshold as i128)));
    lhs.map(|o| o == Ordering::Greater)
        .ok_or_else(|| Error::cap("weighted comparison magnitude", d as usize, 180))
}

/// Descends from a `q`-dense `M` through restrictions until every
/// cocircuit has rank at least `r - 1`. At each step the first cocircuit of
/// rank at most `r - 2` is split; the restriction to it is kept when it
/// satisfies `ε > φ^{r(·) - r(M)} (q^{r(M)} - 1)/(q - 1)`, otherwise the
/// deletion, which must then satisfy it.
///
/// `ell` bounds the line length (`M` has no `U_{2,ℓ+2}`-minor); when absent
/// it is computed.
pub fn dense_restriction(
    m: &Matroid,
    q: u64,
    t: usize,
    ell: Option<usize>,
) -> Result<DenseRestrictionReport> {
    require_dense(m, q)?;
    let n = m.ground_size();
    if n > ENUM_CAP {
        return Err(Error::cap("cocircuit enumeration", n, ENUM_CAP));
    }
    let ell = match ell {
        Some(l) => l,
        None => longest_line_minor(m)?.saturating_sub(1).max(2),
    };
    let r_total = m.rank_total();
    let threshold = projective_count(q, r_total as u32);
    let hypothesis_holds = rank_hypothesis(r_total, ell, t);

    let mut keep = Subset::full(n);
    let mut trace = Vec::new();
    loop {
        let current = m.restrict(&keep)?;
        let ids = keep.to_vec();
        let r0 = current.rank_total();
        let small = current
            .cocircuits()?
            .into_iter()
            .map(|c| (current.rank(&c), c))
            .find(|(rc, _)| *rc + 2 <= r0);
        let Some((rc, c)) = small else {
            let final_points = current.epsilon();
            if hypothesis_holds && r0 < t {
                return Err(Error::LemmaViolation(format!(
                    "final rank {r0} below {t} although the rank hypothesis holds"
                )));
            }
            return Ok(DenseRestrictionReport {
                restriction: keep,
                trace,
                final_matroid: current,
                final_rank: r0,
                final_points,
                ell,
                hypothesis_holds,
            });
        };
        let c_host = c.map(&ids);
        let on_c = m.restrict(&c_host)?;
        let kept_cocircuit = weighted_ok(on_c.epsilon(), rc, r_total, threshold)?;
        if kept_cocircuit {
            keep = c_host.clone();
        } else {
            let rest = keep.difference(&c_host);
            let off_c = m.restrict(&rest)?;
            if !weighted_ok(off_c.epsilon(), off_c.rank_total(), r_total, threshold)? {
                return Err(Error::LemmaViolation(format!(
                    "neither side of cocircuit {c_host} meets the weighted bound"
                )));
            }
            keep = rest;
        }
        trace.push(DenseStep {
            cocircuit: c_host,
            cocircuit_rank: rc,
            kept_cocircuit,
        });
    }
}

/// A principal-extension minor found in an extension of a geometry.
#[derive(Clone, Debug, Serialize)]
pub struct ExtensionMinor {
    /// `P(m-1, q, m)` or `P(m-1, q, 2)`.
    pub tag: MatroidName,
    /// The minimal flat of the geometry whose closure holds the new element.
    pub flat: Subset,
    /// Rank of that flat.
    pub flat_rank: usize,
    pub witness: MinorWitness,
}

/// `M` is a single-element extension of `PG(2m-1, q)` by its last element
/// `e`. Finds the flat `F` the new element was placed on and contracts a set
/// chosen from a basis through `F`, landing on `P(m-1,q,m)` when
/// `r(F) >= m` and on `P(m-1,q,2)` otherwise. The witness is checked for
/// isomorphism against the constructed target.
pub fn unavoidable_minor_of_extension(m: &Matroid, mm: usize, q: u64) -> Result<ExtensionMinor> {
    if mm < 2 {
        return Err(Error::BadParams(format!("m must be at least 2, got {mm}")));
    }
    if prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    let rank = 2 * mm;
    let points = projective_count(q, rank as u32);
    let n = m.ground_size();
    if n as u128 != points + 1 {
        return Err(Error::NotAnExtension(format!(
            "expected {} elements, found {n}",
            points + 1
        )));
    }
    let e = n - 1;
    let geometry = Subset::full(e);
    let base = m.restrict(&geometry)?;
    if base.rank_total() != rank || m.rank_total() != rank || !base.is_simple() {
        return Err(Error::NotAnExtension(format!(
            "deleting element {e} must leave a simple rank-{rank} matroid on {points} points"
        )));
    }

    // F is the intersection of the hyperplanes of M \ e spanning e in M;
    // every flat of a projective geometry is modular, so this is the
    // least flat whose closure contains e.
    let single = Subset::singleton(e);
    let mut flat = geometry.clone();
    for h in base.hyperplanes()? {
        if m.rank(&h.union(&single)) == rank - 1 {
            flat = flat.intersection(&h);
        }
    }
    let flat_rank = m.rank(&flat);
    if flat_rank <= 1 || m.rank(&flat.union(&single)) != flat_rank {
        return Err(Error::RepresentableInput);
    }

    let basis_f = m.basis_of(&flat);
    let mut basis = basis_f.clone();
    for x in 0..e {
        if basis.len() == rank {
            break;
        }
        if m.rank(&basis.with(x)) > basis.len() {
            basis.insert(x);
        }
    }
    let bf = basis_f.to_vec();
    let (contract, k) = if flat_rank >= mm {
        let i: Subset = bf[..mm].iter().copied().collect();
        (basis.difference(&i), mm)
    } else {
        let j1 = &bf[..flat_rank - 2];
        let outside = basis.difference(&basis_f).to_vec();
        let j2 = &outside[..mm - j1.len()];
        (j1.iter().chain(j2).copied().collect::<Subset>(), 2)
    };
    let tag = MatroidName::PrincipalExt { n: mm, q, k };

    let contracted = m.contract(&contract)?;
    let rest = contract.complement(n).to_vec();
    let (_, reps) = contracted.points();
    let kept: Subset = reps.iter().map(|&x| rest[x]).collect();
    let delete = kept.union(&contract).complement(n);
    let minor = m.minor(&contract, &delete)?;
    let target = principal_ext_pg(mm, q, k)?.matroid;
    let iso = are_isomorphic(&minor, &target)?.ok_or_else(|| {
        Error::LemmaViolation(format!("contraction by {contract} does not give {tag}"))
    })?;
    Ok(ExtensionMinor {
        tag,
        flat,
        flat_rank,
        witness: MinorWitness {
            contract,
            delete,
            iso,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{pg, uniform};
    use crate::matroid::direct_sum;

    #[test]
    fn longline_examples() {
        let u24 = uniform(2, 4).unwrap().matroid;
        assert_eq!(
            longline_step(&u24, 2, 1).unwrap(),
            LongLineOutcome::LineRestriction(Subset::full(4))
        );
        let u38 = uniform(3, 8).unwrap().matroid;
        assert_eq!(longline_step(&u38, 2, 0).unwrap(), LongLineOutcome::DenseContraction);
        let u26 = uniform(2, 6).unwrap().matroid;
        assert!(matches!(longline_step(&u26, 2, 5).unwrap(), LongLineOutcome::LineRestriction(_)));
        let fano = pg(3, 2).unwrap().matroid;
        assert!(matches!(longline_step(&fano, 2, 0), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn rank_hypothesis_values() {
        // (√5-1)^{r-1} ≈ 1.236^{r-1}
        assert!(!rank_hypothesis(2, 3, 2));
        assert!(rank_hypothesis(7, 2, 2)); // 3.57 >= 2
        assert!(!rank_hypothesis(4, 2, 2)); // 1.89 < 2
        assert!(rank_hypothesis(1, 5, 1));
        assert!(!rank_hypothesis(60, 1000, 30));
    }

    #[test]
    fn weighted_boundary() {
        // 13 φ^1 > 15 but 9 φ < 15
        assert!(weighted_ok(13, 3, 4, 15).unwrap());
        assert!(!weighted_ok(9, 3, 4, 15).unwrap());
        assert!(!weighted_ok(3, 2, 4, 15).unwrap());
    }

    #[test]
    fn dense_restriction_fixed_points() {
        let u24 = uniform(2, 4).unwrap().matroid;
        let rep = dense_restriction(&u24, 2, 2, None).unwrap();
        assert!(rep.trace.is_empty());
        assert_eq!(rep.restriction, Subset::full(4));
        assert_eq!(rep.ell, 3);
        let u38 = uniform(3, 8).unwrap().matroid;
        let rep = dense_restriction(&u38, 2, 2, None).unwrap();
        assert!(rep.trace.is_empty());
    }

    #[test]
    fn dense_restriction_one_step() {
        let a = uniform(3, 13).unwrap().matroid;
        let b = uniform(2, 3).unwrap().matroid;
        let m = direct_sum(&a, &b).unwrap().truncate(4).unwrap();
        assert_eq!(m.epsilon(), 16);
        let rep = dense_restriction(&m, 2, 3, None).unwrap();
        assert_eq!(rep.trace.len(), 1);
        assert_eq!(rep.trace[0].cocircuit, (13..16).collect());
        assert!(!rep.trace[0].kept_cocircuit);
        assert_eq!(rep.restriction, Subset::full(13));
        assert!(rep.final_matroid.rank_agrees(&a));
        assert!(rep.final_matroid.is_q_dense(2));
    }

    #[test]
    fn dense_restriction_needs_density() {
        let fano = pg(3, 2).unwrap().matroid;
        assert!(matches!(
            dense_restriction(&fano, 2, 2, Some(2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn extension_on_plane_and_line() {
        let g = pg(4, 2).unwrap().matroid;
        let plane = g.closure(&[0, 1, 3].into_iter().collect());
        let line = g.closure(&[0, 1].into_iter().collect());
        for f in [plane, line] {
            let m = g.principal_extension(&f).unwrap();
            let got = unavoidable_minor_of_extension(&m, 2, 2).unwrap();
            assert_eq!(got.tag, MatroidName::PrincipalExt { n: 2, q: 2, k: 2 });
            assert_eq!(got.flat, f);
            let u24 = uniform(2, 4).unwrap().matroid;
            let minor = m.minor(&got.witness.contract, &got.witness.delete).unwrap();
            assert!(are_isomorphic(&minor, &u24).unwrap().is_some());
            let target = principal_ext_pg(2, 2, 2).unwrap().matroid;
            assert!(got.witness.verify(&m, &target));
        }
    }

    #[test]
    fn extension_rejects_bad_input() {
        let g = pg(4, 2).unwrap().matroid;
        let point = Subset::singleton(3);
        let m = g.principal_extension(&point).unwrap();
        assert_eq!(unavoidable_minor_of_extension(&m, 2, 2).unwrap_err(), Error::RepresentableInput);
        assert!(matches!(
            unavoidable_minor_of_extension(&g, 2, 2),
            Err(Error::NotAnExtension(_))
        ));
    }
}
