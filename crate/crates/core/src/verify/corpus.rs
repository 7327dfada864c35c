use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Caps;
use crate::arith::{binomial, projective_count};
use crate::constructions::{
    ag, density_witness, free_spike, free_swirl, pg, principal_ext_pg, theta_graph, two_sum_chain,
    uniform, DensityClass, NamedMatroid,
};
use crate::field::FieldSpec;
use crate::iso::are_isomorphic;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// A corpus member and how to rebuild it.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub descriptor: String,
    pub matroid: Matroid,
}

/// Ground sets up to this size are deduplicated up to isomorphism.
const ISO_DEDUP_MAX: usize = 9;
const RANDOM_PER_GEOMETRY: usize = 3;

fn fits(m: &Matroid, caps: &Caps) -> bool {
    m.ground_size() <= caps.max_ground && m.rank_total() <= caps.max_rank
}

/// Named constructions within `caps`, then seeded random restrictions of
/// `PG(r-1, q)` and single-element contractions of those, with
/// isomorphic copies of small members removed (first occurrence kept).
pub fn corpus_generate(seed: u64, caps: &Caps) -> Vec<CorpusEntry> {
    let mut named: Vec<NamedMatroid> = Vec::new();
    let mut push = |r: crate::Result<NamedMatroid>| {
        if let Ok(nm) = r {
            named.push(nm);
        }
    };
    for q in [2u64, 3, 4, 5] {
        for n in 2..=caps.max_rank {
            if projective_count(q, n as u32) <= caps.max_ground as u128 {
                push(pg(n, q));
            }
            if (q as u128).pow(n as u32 - 1) <= caps.max_ground as u128 {
                push(ag(n, q));
            }
        }
    }
    for r in 1..=caps.max_rank.min(4) {
        for n in r..=caps.max_ground.min(12) {
            if binomial(n, r) <= caps.max_bases as u128 {
                push(uniform(r, n));
            }
        }
    }
    for k in 3..=6 {
        push(free_spike(k));
        push(free_swirl(k));
    }
    let gf2 = FieldSpec::new(2).expect("2 is prime");
    for k in 2..=5 {
        push(theta_graph(k, &gf2));
    }
    for k in 2..=4 {
        push(two_sum_chain(k));
    }
    for q in [2u64, 3] {
        for n in 2..=caps.max_rank {
            for class in [DensityClass::L, DensityClass::Lcirc, DensityClass::Llambda] {
                if projective_count(q, n as u32 + 1) <= caps.max_ground as u128 {
                    push(density_witness(q, class, n));
                }
            }
        }
    }
    for (n, q) in [(3, 2), (3, 3), (4, 2)] {
        for k in 1..=n {
            push(principal_ext_pg(n, q, k));
        }
    }

    let mut out: Vec<CorpusEntry> = named
        .into_iter()
        .filter(|nm| fits(&nm.matroid, caps))
        .map(|nm| CorpusEntry {
            descriptor: nm.name.to_string(),
            matroid: nm.matroid,
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for q in [2u64, 3] {
        for r in 2..=caps.max_rank.min(5) {
            let Ok(g) = pg(r, q) else { continue };
            let g = g.matroid;
            let size = g.ground_size();
            if size > 64 {
                continue;
            }
            let label = g_name(r, q);
            for _ in 0..RANDOM_PER_GEOMETRY {
                let density = rng.gen_range(0.3..0.9);
                let keep: Subset = (0..size).filter(|_| rng.gen_bool(density)).collect();
                if keep.len() < 2 {
                    continue;
                }
                let m = g.restrict(&keep).expect("subset of the ground set");
                let descriptor = format!("restrict({label},{keep})");
                let e = rng.gen_range(0..keep.len());
                let c = m.contract(&Subset::singleton(e)).expect("element exists");
                let contracted = format!("contract({descriptor},{{{e}}})");
                for (d, mm) in [(descriptor, m), (contracted, c)] {
                    if fits(&mm, caps) {
                        out.push(CorpusEntry { descriptor: d, matroid: mm });
                    }
                }
            }
        }
    }
    dedup(out)
}

fn g_name(r: usize, q: u64) -> String {
    format!("PG({},{q})", r - 1)
}

fn dedup(entries: Vec<CorpusEntry>) -> Vec<CorpusEntry> {
    let mut kept: Vec<CorpusEntry> = Vec::new();
    for e in entries {
        let n = e.matroid.ground_size();
        let duplicate = kept.iter().any(|k| {
            if k.descriptor == e.descriptor {
                return true;
            }
            n <= ISO_DEDUP_MAX
                && k.matroid.ground_size() == n
                && matches!(are_isomorphic(&k.matroid, &e.matroid), Ok(Some(_)))
        });
        if !duplicate {
            kept.push(e);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_contains_named_members() {
        let caps = Caps::default();
        let a = corpus_generate(0, &caps);
        let b = corpus_generate(0, &caps);
        let da: Vec<&str> = a.iter().map(|e| e.descriptor.as_str()).collect();
        let db: Vec<&str> = b.iter().map(|e| e.descriptor.as_str()).collect();
        assert_eq!(da, db);
        assert!(da.contains(&"PG(2,2)"));
        assert!(da.contains(&"Swirl(4)"));
        let c = corpus_generate(1, &caps);
        assert_ne!(da, c.iter().map(|e| e.descriptor.as_str()).collect::<Vec<_>>());
    }

    #[test]
    fn small_members_pairwise_non_isomorphic() {
        let corpus = corpus_generate(0, &Caps::default());
        let small: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.matroid.ground_size() <= 9).collect();
        for (i, a) in small.iter().enumerate() {
            for b in &small[i + 1..] {
                assert!(
                    are_isomorphic(&a.matroid, &b.matroid).unwrap().is_none(),
                    "{} ≅ {}",
                    a.descriptor,
                    b.descriptor
                );
            }
        }
    }

    #[test]
    fn caps_respected() {
        let caps: Caps = "max_ground=10,max_rank=3".parse().unwrap();
        let corpus = corpus_generate(7, &caps);
        assert!(!corpus.is_empty());
        assert!(corpus.iter().all(|e| e.matroid.ground_size() <= 10 && e.matroid.rank_total() <= 3));
    }
}
