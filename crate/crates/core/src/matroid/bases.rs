use std::collections::HashSet;

use crate::error::{Error, Result, SchemaErrorKind};
use crate::subset::Subset;

/// Largest basis family whose exchange axiom is checked at construction.
pub const EXCHANGE_CHECK_MAX: usize = 5000;
/// Ground-set limit for explicit bases.
pub const BASES_MAX_GROUND: usize = 64;

/// A matroid given by its list of bases, stored as bit masks.
#[derive(Clone, Debug)]
pub struct BasesBackend {
    n: usize,
    rank: usize,
    bases: Vec<u64>,
}

impl BasesBackend {
    /// Validates and stores a basis family.
    ///
    /// Bases are deduplicated and sorted; the exchange axiom is verified
    /// exhaustively when there are at most [`EXCHANGE_CHECK_MAX`] of them.
    pub fn new(n: usize, rank: usize, bases: Vec<Subset>) -> Result<Self> {
        if n > BASES_MAX_GROUND {
            return Err(Error::cap("bases ground set", n, BASES_MAX_GROUND));
        }
        let backend = Self::unchecked(n, rank, bases)?;
        if backend.bases.len() <= EXCHANGE_CHECK_MAX && !backend.exchange_axiom_holds() {
            return Err(Error::schema("bases", SchemaErrorKind::ExchangeAxiom));
        }
        Ok(backend)
    }

    pub(crate) fn unchecked(n: usize, rank: usize, bases: Vec<Subset>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::schema(
                "bases",
                SchemaErrorKind::Invalid("a matroid has at least one basis".into()),
            ));
        }
        let mut masks = Vec::with_capacity(bases.len());
        for (i, b) in bases.iter().enumerate() {
            let bad = |msg: String| Error::schema(format!("bases[{i}]"), SchemaErrorKind::Invalid(msg));
            if b.len() != rank {
                return Err(bad(format!("has {} elements, rank is {rank}", b.len())));
            }
            if b.last().is_some_and(|m| m >= n) {
                return Err(bad(format!("element outside ground set of size {n}")));
            }
            masks.push(b.to_mask().expect("ground fits in 64 bits"));
        }
        masks.sort_by(|a, b| Subset::from_mask(*a).cmp(&Subset::from_mask(*b)));
        let before = masks.len();
        masks.dedup();
        if masks.len() != before {
            return Err(Error::schema(
                "bases",
                SchemaErrorKind::Invalid("duplicate basis".into()),
            ));
        }
        Ok(BasesBackend {
            n,
            rank,
            bases: masks,
        })
    }

    pub fn exchange_axiom_holds(&self) -> bool {
        let set: HashSet<u64> = self.bases.iter().copied().collect();
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                let mut out = b1 & !b2;
                while out != 0 {
                    let x = out & out.wrapping_neg();
                    out &= out - 1;
                    let mut inn = b2 & !b1;
                    let mut found = false;
                    while inn != 0 {
                        let y = inn & inn.wrapping_neg();
                        inn &= inn - 1;
                        if set.contains(&((b1 & !x) | y)) {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank_total(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> impl Iterator<Item = Subset> + '_ {
        self.bases.iter().map(|&m| Subset::from_mask(m))
    }

    pub fn rank(&self, x: &Subset) -> usize {
        let Some(mask) = x.to_mask() else {
            // Elements beyond 63 are outside the ground set.
            return self.rank(&x.intersection(&Subset::full(self.n)));
        };
        let target = (mask.count_ones() as usize).min(self.rank);
        let mut best = 0;
        for &b in &self.bases {
            let c = (b & mask).count_ones() as usize;
            if c > best {
                best = c;
                if best == target {
                    break;
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> Subset {
        v.iter().copied().collect()
    }

    #[test]
    fn exchange_axiom_rejects_non_matroid() {
        let err = BasesBackend::new(4, 2, vec![set(&[0, 1]), set(&[2, 3])]).unwrap_err();
        assert_eq!(err, Error::schema("bases", SchemaErrorKind::ExchangeAxiom));
    }

    #[test]
    fn rank_from_bases() {
        // U_{2,3}
        let b = BasesBackend::new(3, 2, vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]).unwrap();
        assert_eq!(b.rank(&set(&[0])), 1);
        assert_eq!(b.rank(&set(&[0, 1, 2])), 2);
        assert_eq!(b.rank(&Subset::new()), 0);
    }

    #[test]
    fn rejects_malformed() {
        assert!(BasesBackend::new(3, 2, vec![]).is_err());
        assert!(BasesBackend::new(3, 2, vec![set(&[0])]).is_err());
        assert!(BasesBackend::new(3, 1, vec![set(&[3])]).is_err());
        assert!(BasesBackend::new(3, 1, vec![set(&[1]), set(&[1])]).is_err());
        assert!(BasesBackend::new(65, 1, vec![set(&[1])]).is_err());
    }
}
