//! `has_minor` against brute force over every (contract, delete) split.

use mforge_core::constructions::{free_spike, pg, theta_graph, uniform};
use mforge_core::iso::are_isomorphic;
use mforge_core::minor::has_minor;
use mforge_core::verify::{corpus_generate, Caps};
use mforge_core::{FieldSpec, Matroid, Subset};

/// Tries every way of assigning each host element to keep, contract or delete.
fn naive_has_minor(host: &Matroid, target: &Matroid) -> bool {
    let n = host.ground_size();
    let keep = target.ground_size();
    if keep > n {
        return false;
    }
    let drop = n - keep;
    for gone in 0u64..1 << n {
        if gone.count_ones() as usize != drop {
            continue;
        }
        let gone_set = Subset::from_mask(gone);
        // every subset is tried as the contraction, independent or not
        let members = gone_set.to_vec();
        for c in 0u64..1 << drop {
            let contract: Subset = members
                .iter()
                .enumerate()
                .filter(|(i, _)| c >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let delete = gone_set.difference(&contract);
            let minor = host.minor(&contract, &delete).expect("disjoint sets");
            if minor.rank_total() == target.rank_total()
                && matches!(are_isomorphic(&minor, target), Ok(Some(_)))
            {
                return true;
            }
        }
    }
    false
}

fn targets() -> Vec<(String, Matroid)> {
    let gf2 = FieldSpec::new(2).unwrap();
    vec![
        ("U(1,2)".into(), uniform(1, 2).unwrap().matroid),
        ("U(2,3)".into(), uniform(2, 3).unwrap().matroid),
        ("U(2,4)".into(), uniform(2, 4).unwrap().matroid),
        ("U(3,5)".into(), uniform(3, 5).unwrap().matroid),
        ("U(0,2)".into(), uniform(0, 2).unwrap().matroid),
        ("M(K2,3)".into(), theta_graph(3, &gf2).unwrap().matroid),
        ("PG(2,2)".into(), pg(3, 2).unwrap().matroid),
    ]
}

#[test]
fn agrees_with_brute_force_on_small_hosts() {
    let mut hosts: Vec<(String, Matroid)> = corpus_generate(3, &Caps::default())
        .into_iter()
        .filter(|e| e.matroid.ground_size() <= 8)
        .map(|e| (e.descriptor, e.matroid))
        .collect();
    hosts.push(("Spike(3)".into(), free_spike(3).unwrap().matroid));
    assert!(hosts.len() >= 10, "too few small hosts: {}", hosts.len());
    for (hname, host) in &hosts {
        for (tname, target) in targets() {
            let fast = has_minor(host, &target).unwrap();
            if let Some(w) = &fast {
                assert!(w.verify(host, &target), "{hname} / {tname}: witness does not verify");
            }
            assert_eq!(
                fast.is_some(),
                naive_has_minor(host, &target),
                "{hname} / {tname}"
            );
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let host = pg(3, 3).unwrap().matroid;
    let target = uniform(2, 4).unwrap().matroid;
    let a = has_minor(&host, &target).unwrap().unwrap();
    let b = has_minor(&host, &target).unwrap().unwrap();
    assert_eq!(a.contract, b.contract);
    assert_eq!(a.delete, b.delete);
}
