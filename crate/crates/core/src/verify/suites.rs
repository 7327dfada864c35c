use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::{corpus_generate, Case, CorpusEntry, Suite, SuiteConfig};
use crate::arith::{is_prime_power, projective_count};
use crate::constructions::{
    density_witness, free_spike, free_swirl, pg, principal_ext_pg, uniform, DensityClass, MatroidName,
};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Which};
use crate::io::to_value;
use crate::iso::are_isomorphic;
use crate::lemmas::{dense_restriction, longline_step, unavoidable_minor_of_extension, LongLineOutcome};
use crate::matroid::{Matroid, ENUM_CAP};
use crate::minor::longest_line_minor;
use crate::representability::{
    brute_force_linear_rep, eventual_base, spike_rep_predicate, spike_witness_search,
    swirl_rep_predicate, swirl_witness_search, ClassSpec, Structure,
};
use crate::subset::{combinations, Subset};

type Output = (Value, Vec<Case>);

pub(super) fn run(config: &SuiteConfig) -> Result<Output> {
    let corpus = || corpus_generate(config.seed, &config.caps);
    match config.suite {
        Suite::FieldAxioms => Ok(field_axioms(config.seed)),
        Suite::RankAxioms => Ok(rank_axioms(&corpus(), config.seed)),
        Suite::Kung => Ok(kung(&corpus())),
        Suite::Lemma4 => Ok(lemma4(&corpus())),
        Suite::Lemma5 => Ok(lemma5(&corpus())),
        Suite::Lemma6 => Ok(lemma6()),
        Suite::SpikeOracle => Ok(group_oracle(true)),
        Suite::SwirlOracle => Ok(group_oracle(false)),
        Suite::RepCross => Ok(rep_cross()),
        Suite::GrowthWitness => Ok(growth_witness()),
        Suite::SwirlStructure => Ok(swirl_structure()),
        Suite::SpikeStructure => Ok(spike_structure()),
        Suite::EventualBase => Ok(eventual_base_table()),
    }
}

fn repro(m: &Matroid, operation: &str, params: Value) -> Value {
    json!({
        "matroid": to_value(m).unwrap_or_else(|e| json!(e.to_string())),
        "operation": operation,
        "params": params,
    })
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

// ---------------------------------------------------------------- fields

fn field_axioms(seed: u64) -> Output {
    let qs: Vec<u64> = (2..=64).filter(|&q| is_prime_power(q)).collect();
    let cases = qs
        .par_iter()
        .map(|&q| {
            let got = match FieldSpec::new(q) {
                Ok(f) => check_field(&f, seed),
                Err(e) => error_value(&e),
            };
            Case::new(format!("GF({q:02})"), json!("ok"), got).with_repro(|| json!({ "q": q }))
        })
        .collect();
    (json!({ "q_max": 64, "exhaustive_up_to": 16 }), cases)
}

fn check_field(f: &FieldSpec, seed: u64) -> Value {
    let all = f.enumerate(Which::All);
    let nonzero = f.enumerate(Which::Nonzero);
    let q = f.q() as usize;
    if all.len() != q || nonzero.len() != q - 1 {
        return json!("wrong element count");
    }
    for &a in &all {
        if f.add(a, f.neg(a)) != crate::FieldElement::ZERO {
            return json!(format!("additive inverse of {}", a.0));
        }
        if !a.is_zero() && f.mul(a, f.inv(a).expect("nonzero")) != crate::FieldElement::ONE {
            return json!(format!("multiplicative inverse of {}", a.0));
        }
        for &b in &all {
            if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                return json!(format!("commutativity at {},{}", a.0, b.0));
            }
        }
    }
    let triple = |a, b, c| {
        f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    };
    if q <= 16 {
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    if !triple(a, b, c) {
                        return json!(format!("triple {},{},{}", a.0, b.0, c.0));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q as u64);
        for _ in 0..4000 {
            let pick = |r: &mut ChaCha8Rng| all[r.gen_range(0..q)];
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            if !triple(a, b, c) {
                return json!(format!("triple {},{},{}", a.0, b.0, c.0));
            }
        }
    }
    if !nonzero.iter().any(|&g| f.order(g) == Some(q as u32 - 1)) {
        return json!("multiplicative group not cyclic");
    }
    json!("ok")
}

// --------------------------------------------------------------- matroids

fn rank_table(m: &Matroid) -> Vec<u8> {
    (0..1u64 << m.ground_size())
        .map(|x| m.rank(&Subset::from_mask(x)) as u8)
        .collect()
}

fn axioms_exhaustive(m: &Matroid) -> std::result::Result<(), String> {
    let n = m.ground_size();
    let r = rank_table(m);
    if r[0] != 0 || r[(1 << n) - 1] as usize != m.rank_total() {
        return Err("normalization".into());
    }
    for x in 0..1usize << n {
        for e in 0..n {
            let xe = x | 1 << e;
            if r[xe] < r[x] || r[xe] > r[x] + 1 {
                return Err(format!("unit increase at {}+{e}", Subset::from_mask(x as u64)));
            }
            for f in e + 1..n {
                if r[xe] + r[x | 1 << f] < r[xe | 1 << f] + r[x] {
                    return Err(format!("submodularity at {}", Subset::from_mask(x as u64)));
                }
            }
        }
    }
    Ok(())
}

fn axioms_sampled(m: &Matroid, rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let n = m.ground_size();
    if m.rank(&Subset::new()) != 0 || m.rank(&Subset::full(n)) != m.rank_total() {
        return Err("normalization".into());
    }
    for _ in 0..2000 {
        let x: Subset = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let y: Subset = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        let (rx, ry) = (m.rank(&x), m.rank(&y));
        let (ru, ri) = (m.rank(&x.union(&y)), m.rank(&x.intersection(&y)));
        if rx > x.len() || ru < rx.max(ry) || ri > rx.min(ry) || ru + ri > rx + ry {
            return Err(format!("axioms fail on {x} and {y}"));
        }
    }
    Ok(())
}

fn rank_axioms(corpus: &[CorpusEntry], seed: u64) -> Output {
    let cases = corpus
        .par_iter()
        .enumerate()
        .map(|(i, entry)| {
            let m = &entry.matroid;
            let n = m.ground_size();
            let mut problems: Vec<String> = Vec::new();
            let axioms = if n <= 10 {
                axioms_exhaustive(m)
            } else {
                axioms_sampled(m, &mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64)))
            };
            if let Err(e) = axioms {
                problems.push(e);
            }
            if n <= 12 {
                match m.to_bases() {
                    Ok(b) if !b.rank_agrees(m) => problems.push("materialized bases disagree".into()),
                    Err(e) => problems.push(e.to_string()),
                    _ => {}
                }
                if !m.dual().dual().rank_agrees(m) {
                    problems.push("double dual disagrees".into());
                }
            }
            let (si, _) = m.simplify();
            if si.ground_size() != m.epsilon() || si.epsilon() != m.epsilon() || si.rank_total() != m.rank_total() {
                problems.push("simplification changes points or rank".into());
            }
            let mode = if n <= 10 { "exhaustive" } else { "sampled" };
            Case::new(entry.descriptor.clone(), json!([]), json!(problems))
                .with_witness(json!({ "axioms": mode, "n": n }))
                .with_repro(|| repro(m, "rank-axioms", json!({ "seed": seed })))
        })
        .collect();
    (json!({ "exhaustive_up_to": 10, "views_up_to": 12 }), cases)
}

fn kung_bound(ell: u64, r: usize) -> u128 {
    projective_count(ell, r as u32)
}

fn kung(corpus: &[CorpusEntry]) -> Output {
    let mut cases: Vec<Case> = corpus
        .par_iter()
        .map(|entry| {
            let m = &entry.matroid;
            match longest_line_minor(m) {
                Ok(line) => {
                    let ell = (line as u64).saturating_sub(1).max(2);
                    let bound = kung_bound(ell, m.rank_total());
                    let eps = m.epsilon() as u128;
                    Case::new(entry.descriptor.clone(), json!(true), json!(eps <= bound))
                        .with_witness(json!({ "longest_line": line, "ell": ell, "eps": eps, "bound": bound }))
                        .with_repro(|| repro(m, "kung", json!({ "ell": ell })))
                }
                Err(e) => Case::new(entry.descriptor.clone(), json!(true), error_value(&e)),
            }
        })
        .collect();
    let mut grid = Vec::new();
    for ell in [2u64, 3, 4, 5] {
        for r in 1..=4usize {
            grid.push((ell, r));
        }
    }
    cases.par_extend(grid.par_iter().map(|&(ell, r)| {
        let g = pg(r, ell).expect("prime power").matroid;
        let descriptor = format!("equality PG({},{ell})", r - 1);
        let expected_line = if r >= 2 { ell as usize + 1 } else { 0 };
        let expected = json!({ "eps": kung_bound(ell, r), "longest_line": expected_line });
        let got = match longest_line_minor(&g) {
            Ok(line) => json!({ "eps": g.epsilon() as u128, "longest_line": line }),
            Err(e) => error_value(&e),
        };
        Case::new(descriptor, expected, got)
    }));
    (json!({ "equality_ell": [2, 3, 4, 5], "equality_rank_max": 4 }), cases)
}

fn lemma4(corpus: &[CorpusEntry]) -> Output {
    let mut jobs = Vec::new();
    for entry in corpus {
        for q in [2u64, 3] {
            if entry.matroid.is_q_dense(q) {
                jobs.push((entry, q));
            }
        }
    }
    let cases = jobs
        .par_iter()
        .map(|&(entry, q)| {
            let m = &entry.matroid;
            let (mut dense, mut line, mut violations) = (0usize, 0usize, Vec::new());
            for e in (0..m.ground_size()).filter(|&e| !m.is_loop(e)) {
                match longline_step(m, q, e) {
                    Ok(LongLineOutcome::DenseContraction) => {
                        if m.contract(&Subset::singleton(e)).map(|c| c.is_q_dense(q)) == Ok(true) {
                            dense += 1;
                        } else {
                            violations.push(json!({ "e": e, "error": "contraction is not dense" }));
                        }
                    }
                    Ok(LongLineOutcome::LineRestriction(l)) => {
                        let points = m.restrict(&l).map(|r| r.epsilon()).unwrap_or(0);
                        if l.contains(e) && m.rank(&l) == 2 && points as u64 >= q + 2 {
                            line += 1;
                        } else {
                            violations.push(json!({ "e": e, "error": "bad line witness" }));
                        }
                    }
                    Err(err) => violations.push(json!({ "e": e, "error": err.to_string() })),
                }
            }
            Case::new(format!("{} q={q}", entry.descriptor), json!([]), json!(violations))
                .with_witness(json!({ "dense_contractions": dense, "long_lines": line }))
                .with_repro(|| repro(m, "longline_step", json!({ "q": q })))
        })
        .collect();
    (json!({ "q": [2, 3] }), cases)
}

fn check_dense_report(m: &Matroid, q: u64, t: usize, ell: Option<usize>) -> Value {
    match dense_restriction(m, q, t, ell) {
        Ok(rep) => {
            let f = &rep.final_matroid;
            let r0 = f.rank_total();
            let cocircuits_ok = f
                .cocircuits()
                .map(|cs| cs.iter().all(|c| f.rank(c) + 1 >= r0))
                .unwrap_or(false);
            json!({
                "dense": f.is_q_dense(q),
                "cocircuits_ok": cocircuits_ok,
                "rank_ok": !rep.hypothesis_holds || r0 >= t,
            })
        }
        Err(e) => error_value(&e),
    }
}

fn lemma5(corpus: &[CorpusEntry]) -> Output {
    let expected = json!({ "dense": true, "cocircuits_ok": true, "rank_ok": true });
    let mut jobs = Vec::new();
    for entry in corpus {
        for q in [2u64, 3] {
            if entry.matroid.ground_size() <= ENUM_CAP && entry.matroid.is_q_dense(q) {
                jobs.push((entry, q));
            }
        }
    }
    let mut cases: Vec<Case> = jobs
        .par_iter()
        .map(|&(entry, q)| {
            let m = &entry.matroid;
            Case::new(
                format!("{} q={q} t=2", entry.descriptor),
                expected.clone(),
                check_dense_report(m, q, 2, None),
            )
            .with_repro(|| repro(m, "dense_restriction", json!({ "q": q, "t": 2 })))
        })
        .collect();
    // the worked example: one split down to U(3,13)
    let a = uniform(3, 13).expect("small").matroid;
    let b = uniform(2, 3).expect("small").matroid;
    let got = crate::matroid::direct_sum(&a, &b)
        .and_then(|s| s.truncate(4))
        .and_then(|m| dense_restriction(&m, 2, 3, None))
        .map(|rep| {
            json!({
                "steps": rep.trace.len(),
                "kept": rep.restriction,
                "final_uniform": rep.final_matroid.rank_agrees(&a),
            })
        })
        .unwrap_or_else(|e| error_value(&e));
    cases.push(Case::new(
        "example T4(U(3,13)+U(2,3)) q=2 t=3",
        json!({ "steps": 1, "kept": (0..13).collect::<Vec<_>>(), "final_uniform": true }),
        got,
    ));
    (json!({ "q": [2, 3], "t": 2 }), cases)
}

fn lemma6_case(geometry: &Matroid, flat: &Subset, mm: usize, q: u64, expect_k: usize) -> Case {
    let descriptor = format!("P(PG({},{q}),{flat}) m={mm}", 2 * mm - 1);
    let expected_tag = MatroidName::PrincipalExt { n: mm, q, k: expect_k };
    let ext = match geometry.principal_extension(flat) {
        Ok(e) => e,
        Err(e) => return Case::new(descriptor, json!(expected_tag.to_string()), error_value(&e)),
    };
    let got = unavoidable_minor_of_extension(&ext, mm, q).and_then(|found| {
        let target = principal_ext_pg(mm, q, tag_k(&found))?.matroid;
        let verified = found.witness.verify(&ext, &target);
        Ok((found, verified))
    });
    match got {
        Ok((found, verified)) => {
            let tag = found.tag.to_string();
            let got = if verified { json!(tag) } else { json!({ "unverified": tag }) };
            Case::new(descriptor, json!(expected_tag.to_string()), got)
                .with_witness(json!({ "flat_rank": found.flat_rank, "contract": found.witness.contract }))
        }
        Err(e) => Case::new(descriptor, json!(expected_tag.to_string()), error_value(&e)),
    }
}

fn tag_k(found: &crate::lemmas::ExtensionMinor) -> usize {
    match found.tag {
        MatroidName::PrincipalExt { k, .. } => k,
        _ => unreachable!("extension minors are principal extensions"),
    }
}

fn lemma6() -> Output {
    let g4 = pg(4, 2).expect("small").matroid;
    let mut flats = Vec::new();
    for r in 2..=4 {
        flats.extend(g4.flats_of_rank(r).expect("15 points"));
    }
    let mut cases: Vec<Case> = flats
        .par_iter()
        .map(|f| lemma6_case(&g4, f, 2, 2, 2))
        .collect();
    // m = 3: one coordinate flat per rank
    let g6 = pg(6, 2).expect("small").matroid;
    let reps: Vec<(Subset, usize)> = (2..=6)
        .map(|r| (Subset::full(projective_count(2, r as u32) as usize), r))
        .collect();
    cases.par_extend(
        reps.par_iter()
            .map(|(f, r)| lemma6_case(&g6, f, 3, 2, if *r >= 3 { 3 } else { 2 })),
    );
    (json!({ "m2_q2": "all flats of rank >= 2", "m3_q2": "coordinate flats of rank 2..6" }), cases)
}

// -------------------------------------------------------- representability

fn group_oracle(spike: bool) -> Output {
    let mut grid = Vec::new();
    for q in (3..=13u64).filter(|&q| is_prime_power(q)) {
        for k in 3..=10usize {
            grid.push((q, k));
        }
    }
    let cases = grid
        .par_iter()
        .map(|&(q, k)| {
            let (pred, found) = if spike {
                (spike_rep_predicate(k, q), spike_witness_search(k, q))
            } else {
                (swirl_rep_predicate(k, q), swirl_witness_search(k, q))
            };
            let descriptor = format!("q={q:02} k={k:02}");
            match (pred, found) {
                (Ok(p), Ok(w)) => {
                    let valid = w.as_ref().is_none_or(|w| w.verify());
                    let got = json!({ "representable": w.is_some(), "witness_valid": valid });
                    let case = Case::new(descriptor, json!({ "representable": p, "witness_valid": true }), got);
                    match w {
                        Some(w) => case.with_witness(serde_json::to_value(w).expect("plain data")),
                        None => case,
                    }
                }
                (Err(e), _) | (_, Err(e)) => Case::new(descriptor, json!(true), error_value(&e)),
            }
        })
        .collect();
    (json!({ "q": "prime powers 3..=13", "k": "3..=10", "group": if spike { "additive" } else { "multiplicative" } }), cases)
}

fn rep_cross() -> Output {
    let spike = free_spike(3).expect("small").matroid;
    let cases = [3u64, 4, 5]
        .par_iter()
        .map(|&q| {
            let expected = spike_rep_predicate(3, q).map(|b| json!(b)).unwrap_or_else(|e| error_value(&e));
            let got = brute_force_linear_rep(&spike, q)
                .map(|r| json!(r.is_some()))
                .unwrap_or_else(|e| error_value(&e));
            Case::new(format!("Spike(3) q={q}"), expected, got)
                .with_repro(|| repro(&spike, "brute_force_linear_rep", json!({ "q": q })))
        })
        .collect();
    (json!({ "k": 3, "q": [3, 4, 5] }), cases)
}

fn growth_witness() -> Output {
    let mut grid = Vec::new();
    for q in [2u64, 3] {
        for n in 2..=4usize {
            for class in [DensityClass::L, DensityClass::Lcirc, DensityClass::Llambda] {
                grid.push((q, n, class));
            }
        }
    }
    let cases = grid
        .par_iter()
        .map(|&(q, n, class)| {
            let eps = match class {
                DensityClass::L => projective_count(q, n as u32),
                DensityClass::Lcirc => projective_count(q, n as u32 + 1),
                DensityClass::Llambda => projective_count(q, n as u32 + 1) - q as u128,
            };
            let expected = json!({ "eps": eps, "rank": n, "simple": true });
            let got = match density_witness(q, class, n) {
                Ok(w) => {
                    let m = w.matroid;
                    json!({ "eps": m.epsilon() as u128, "rank": m.rank_total(), "simple": m.is_simple() })
                }
                Err(e) => error_value(&e),
            };
            Case::new(format!("{class:?} q={q} n={n}"), expected, got)
        })
        .collect();
    (json!({ "q": [2, 3], "n": [2, 3, 4] }), cases)
}

fn pair_union(i: usize, j: usize) -> Subset {
    [2 * i, 2 * i + 1, 2 * j, 2 * j + 1].into_iter().collect()
}

fn is_circuit(m: &Matroid, c: &Subset) -> bool {
    m.rank(c) + 1 == c.len() && c.iter().all(|e| m.is_independent(&c.without(e)))
}

fn swirl_structure() -> Output {
    let cases = (3..=6usize)
        .into_par_iter()
        .map(|k| {
            let s = free_swirl(k).expect("small").matroid;
            let mut circuits = Vec::new();
            let mut bad = Vec::new();
            for pair in combinations(k, 2) {
                let (i, j) = (pair[0], pair[1]);
                let u = pair_union(i, j);
                if is_circuit(&s, &u) {
                    circuits.push(vec![i, j]);
                } else if !s.is_independent(&u) {
                    bad.push(vec![i, j]);
                }
            }
            let mut expected: Vec<Vec<usize>> = (0..k).map(|i| {
                let j = (i + 1) % k;
                vec![i.min(j), i.max(j)]
            }).collect();
            expected.sort();
            Case::new(
                format!("Swirl({k})"),
                json!({ "circuits": expected, "other": [] }),
                json!({ "circuits": circuits, "other": bad }),
            )
            .with_repro(|| repro(&s, "pair-unions", json!({ "k": k })))
        })
        .collect();
    (json!({ "k": [3, 4, 5, 6] }), cases)
}

fn spike_structure() -> Output {
    let mut cases: Vec<Case> = (3..=6usize)
        .into_par_iter()
        .map(|k| {
            let s = free_spike(k).expect("small").matroid;
            let circuits = combinations(k, 2)
                .filter(|p| is_circuit(&s, &pair_union(p[0], p[1])))
                .count();
            Case::new(format!("Spike({k})"), json!(k * (k - 1) / 2), json!(circuits))
                .with_repro(|| repro(&s, "pair-unions", json!({ "k": k })))
        })
        .collect();
    let s3 = free_spike(3).expect("small").matroid;
    let u36 = uniform(3, 6).expect("small").matroid;
    let got = match are_isomorphic(&s3, &u36) {
        Ok(Some(cert)) => json!({ "isomorphic": true, "verified": cert.verify(&s3, &u36) }),
        Ok(None) => json!({ "isomorphic": false }),
        Err(e) => error_value(&e),
    };
    cases.push(Case::new("Spike(3) ~ U(3,6)", json!({ "isomorphic": true, "verified": true }), got));
    (json!({ "k": [3, 4, 5, 6] }), cases)
}

pub(crate) fn eventual_base_rows() -> Vec<(String, ClassSpec, u64, bool, Vec<Structure>)> {
    let spec = |ell: u64, spikes: &[usize], swirls: &[usize]| ClassSpec {
        line_ell: Some(ell),
        spike_ranks: spikes.iter().copied().collect(),
        swirl_ranks: swirls.iter().copied().collect(),
    };
    let mut rows = vec![
        ("ell=9".to_string(), spec(9, &[], &[]), 9, true, vec![]),
        ("ell=10 spikes=5".to_string(), spec(10, &[5], &[]), 5, true, vec![]),
        ("ell=5 swirls=4".to_string(), spec(5, &[], &[4]), 4, true, vec![]),
        ("ell=25 swirls=4".to_string(), spec(25, &[], &[4]), 4, false, vec![Structure::Lcirc(4)]),
    ];
    for k in 3..=10 {
        rows.push((format!("ell=3 spikes={k:02} swirls={k:02}"), spec(3, &[k], &[k]), 3, true, vec![]));
    }
    rows
}

fn eventual_base_table() -> Output {
    let cases = eventual_base_rows()
        .into_par_iter()
        .map(|(d, spec, base, certified, gaps)| {
            let expected = json!({ "base": base, "certified": certified, "gaps": gaps });
            let got = match eventual_base(&spec) {
                Ok(r) => json!({ "base": r.base, "certified": r.certified, "gaps": r.gaps }),
                Err(e) => error_value(&e),
            };
            Case::new(d, expected, got)
        })
        .collect();
    (json!({ "rows": "theorem table" }), cases)
}
