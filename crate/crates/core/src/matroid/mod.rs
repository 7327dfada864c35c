//! Rank-oracle matroids.
//!
//! A [`Matroid`] has ground set `{0, .., n-1}` and answers rank queries on
//! [`Subset`]s. Concrete backends are column matrices over a finite field and
//! explicit basis lists; minors, truncations, duals, principal extensions and
//! parallel connections are lazy views over a parent.

mod bases;
mod linear;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use bases::{BasesBackend, BASES_MAX_GROUND, EXCHANGE_CHECK_MAX};
pub use linear::{Echelon, LinearBackend};

use crate::arith::{binomial, projective_count};
use crate::error::{Error, Result};
use crate::subset::{combinations, Subset};

/// Ground-set cap for enumerative operations (flats, cocircuits).
pub const ENUM_CAP: usize = 64;
/// Ground-set cap for circuit enumeration.
pub const CIRCUIT_CAP: usize = 20;
/// Ground-set cap for rank queries.
pub const RANK_CAP: usize = 4096;

const CACHE_LIMIT: usize = 1 << 18;

#[derive(Default)]
struct RankCache {
    map: Mutex<HashMap<Subset, u32>>,
}

impl RankCache {
    fn get(&self, x: &Subset) -> Option<usize> {
        self.map.lock().unwrap().get(x).map(|&r| r as usize)
    }

    fn put(&self, x: &Subset, r: usize) {
        let mut m = self.map.lock().unwrap();
        if m.len() >= CACHE_LIMIT {
            m.clear();
        }
        m.insert(x.clone(), r as u32);
    }
}

#[derive(Clone, Debug)]
pub enum ViewKind {
    /// `parent / contract \ delete`, elements renumbered in ascending order.
    Minor {
        contract: Subset,
        delete: Subset,
        /// new id -> parent id
        map: Vec<usize>,
        contract_rank: usize,
    },
    Truncate(usize),
    /// Adds element `n` (the parent's ground size) freely on `flat`.
    PrincipalExt { flat: Subset },
    Dual,
    /// Parent elements keep their ids; `other`'s elements except its
    /// basepoint follow in order.
    ParallelConnection {
        other: Matroid,
        p1: usize,
        p2: usize,
    },
}

#[derive(Clone, Debug)]
pub struct ViewBackend {
    pub parent: Matroid,
    pub kind: ViewKind,
}

#[derive(Clone, Debug)]
pub enum Backend {
    Linear(LinearBackend),
    Bases(BasesBackend),
    View(ViewBackend),
}

struct Inner {
    n: usize,
    rank_total: usize,
    backend: Backend,
    cache: Option<RankCache>,
}

/// An immutable matroid. Cloning shares the backend.
#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.backend {
            Backend::Linear(l) => format!("linear over GF({})", l.field().q()),
            Backend::Bases(_) => "bases".to_string(),
            Backend::View(v) => format!("{:?} view", v.kind).chars().take(40).collect(),
        };
        write!(
            f,
            "Matroid(n = {}, r = {}, {kind})",
            self.inner.n, self.inner.rank_total
        )
    }
}

impl From<LinearBackend> for Matroid {
    fn from(l: LinearBackend) -> Self {
        let n = l.len();
        let rank_total = l.rank(&Subset::full(n));
        Matroid::build(n, rank_total, Backend::Linear(l), false)
    }
}

impl From<BasesBackend> for Matroid {
    fn from(b: BasesBackend) -> Self {
        Matroid::build(b.ground_size(), b.rank_total(), Backend::Bases(b), true)
    }
}

impl Matroid {
    fn build(n: usize, rank_total: usize, backend: Backend, cached: bool) -> Self {
        Matroid {
            inner: Arc::new(Inner {
                n,
                rank_total,
                backend,
                cache: cached.then(RankCache::default),
            }),
        }
    }

    fn view(parent: &Matroid, kind: ViewKind, n: usize, cached: bool) -> Self {
        let mut m = Matroid::build(
            n,
            0,
            Backend::View(ViewBackend {
                parent: parent.clone(),
                kind,
            }),
            cached,
        );
        let r = m.rank_uncached(&Subset::full(n));
        Arc::get_mut(&mut m.inner).expect("fresh").rank_total = r;
        m
    }

    /// The free matroid `U_{n,n}`.
    pub fn free(n: usize) -> Result<Self> {
        Ok(BasesBackend::new(n, n, vec![Subset::full(n)])?.into())
    }

    pub fn ground_size(&self) -> usize {
        self.inner.n
    }

    pub fn rank_total(&self) -> usize {
        self.inner.rank_total
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.inner.n)
    }

    pub fn backend(&self) -> &Backend {
        &self.inner.backend
    }

    pub fn as_linear(&self) -> Option<&LinearBackend> {
        match &self.inner.backend {
            Backend::Linear(l) => Some(l),
            _ => None,
        }
    }

    pub fn rank(&self, x: &Subset) -> usize {
        debug_assert!(
            x.last().is_none_or(|m| m < self.inner.n),
            "subset {x} outside ground set of size {}",
            self.inner.n
        );
        if let Some(cache) = &self.inner.cache {
            if let Some(r) = cache.get(x) {
                return r;
            }
            let r = self.rank_uncached(x);
            cache.put(x, r);
            r
        } else {
            self.rank_uncached(x)
        }
    }

    fn rank_uncached(&self, x: &Subset) -> usize {
        match &self.inner.backend {
            Backend::Linear(l) => l.rank(x),
            Backend::Bases(b) => b.rank(x),
            Backend::View(v) => v.rank(x, self.inner.n),
        }
    }

    pub fn is_independent(&self, x: &Subset) -> bool {
        self.rank(x) == x.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank(&Subset::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank(&self.ground().without(e)) < self.rank_total()
    }

    /// `{e : r(X + e) = r(X)}`.
    pub fn closure(&self, x: &Subset) -> Subset {
        match &self.inner.backend {
            Backend::Linear(l) => l.closure(x),
            Backend::View(v) => match v.closure(x, self.inner.n) {
                Some(c) => c,
                None => self.closure_by_rank(x),
            },
            Backend::Bases(_) => self.closure_by_rank(x),
        }
    }

    fn closure_by_rank(&self, x: &Subset) -> Subset {
        let r = self.rank(x);
        (0..self.inner.n)
            .filter(|&e| x.contains(e) || self.rank(&x.with(e)) == r)
            .collect()
    }

    pub fn is_flat(&self, x: &Subset) -> bool {
        self.closure(x) == *x
    }

    /// Greedy (lexicographically least) maximal independent subset of `x`.
    pub fn basis_of(&self, x: &Subset) -> Subset {
        let mut b = Subset::new();
        let mut r = 0;
        for e in x {
            let nb = b.with(e);
            let nr = self.rank(&nb);
            if nr > r {
                b = nb;
                r = nr;
            }
        }
        b
    }

    /// All flats of rank `k` with ground set at most [`ENUM_CAP`].
    pub fn flats_of_rank(&self, k: usize) -> Result<Vec<Subset>> {
        self.flats_of_rank_capped(k, ENUM_CAP)
    }

    /// All flats of rank `k`, each generated once from its lexicographically
    /// least basis, in lexicographic order of those bases.
    pub fn flats_of_rank_capped(&self, k: usize, cap: usize) -> Result<Vec<Subset>> {
        let n = self.inner.n;
        if n > cap {
            return Err(Error::cap("flat enumeration", n, cap));
        }
        if k > self.rank_total() {
            return Err(Error::BadRank {
                rank: k,
                reason: format!("exceeds matroid rank {}", self.rank_total()),
            });
        }
        let mut out = Vec::new();
        let base = self.closure(&Subset::new());
        self.flats_dfs(&base, 0, 0, k, &mut out);
        Ok(out)
    }

    fn flats_dfs(&self, cl: &Subset, start: usize, depth: usize, k: usize, out: &mut Vec<Subset>) {
        if depth == k {
            out.push(cl.clone());
            return;
        }
        for e in start..self.inner.n {
            if cl.contains(e) {
                continue;
            }
            let next = self.closure(&cl.with(e));
            // e must be the least new element, else another basis comes first
            if next.difference(cl).first() != Some(e) {
                continue;
            }
            self.flats_dfs(&next, e + 1, depth + 1, k, out);
        }
    }

    pub fn hyperplanes(&self) -> Result<Vec<Subset>> {
        match self.rank_total() {
            0 => Ok(Vec::new()),
            r => self.flats_of_rank(r - 1),
        }
    }

    /// Parallel classes: `point[e]` is the point id of `e` (`None` for
    /// loops), and `reps[i]` the least element of point `i`.
    pub fn points(&self) -> (Vec<Option<usize>>, Vec<usize>) {
        let n = self.inner.n;
        let mut point = vec![None; n];
        let mut reps: Vec<usize> = Vec::new();
        if let Some(lin) = self.as_linear() {
            let mut seen: HashMap<Vec<crate::field::FieldElement>, usize> = HashMap::new();
            for (e, slot) in point.iter_mut().enumerate() {
                if let Some(v) = lin.normalized(e) {
                    let id = *seen.entry(v).or_insert_with(|| {
                        reps.push(e);
                        reps.len() - 1
                    });
                    *slot = Some(id);
                }
            }
            return (point, reps);
        }
        for (e, slot) in point.iter_mut().enumerate() {
            if self.is_loop(e) {
                continue;
            }
            let found = reps
                .iter()
                .position(|&r| self.rank(&[r, e].into_iter().collect()) == 1);
            *slot = Some(found.unwrap_or_else(|| {
                reps.push(e);
                reps.len() - 1
            }));
        }
        (point, reps)
    }

    /// Number of rank-1 flats.
    pub fn epsilon(&self) -> usize {
        self.points().1.len()
    }

    pub fn is_simple(&self) -> bool {
        self.epsilon() == self.inner.n
    }

    /// The simplification: one representative (the least element) per
    /// point, loops dropped. Returns the map from elements to point ids,
    /// which are also the element ids of the simplification.
    pub fn simplify(&self) -> (Matroid, Vec<Option<usize>>) {
        let (point, reps) = self.points();
        let keep: Subset = reps.iter().copied().collect();
        let si = self.restrict(&keep).expect("restriction is always valid");
        (si, point)
    }

    /// `self / contract \ delete`.
    pub fn minor(&self, contract: &Subset, delete: &Subset) -> Result<Matroid> {
        if !contract.is_disjoint(delete) {
            return Err(Error::OverlappingSets);
        }
        let n = self.inner.n;
        let removed = contract.union(delete);
        if removed.last().is_some_and(|m| m >= n) {
            return Err(Error::BadParams(format!("{removed} outside ground set of size {n}")));
        }
        if removed.is_empty() {
            return Ok(self.clone());
        }
        if let Backend::View(ViewBackend {
            parent,
            kind: ViewKind::PrincipalExt { .. },
        }) = self.backend()
        {
            // deleting the added element gives back the parent
            let added = n - 1;
            if delete.contains(added) {
                return parent.minor(contract, &delete.without(added));
            }
        }
        let map: Vec<usize> = (0..n).filter(|e| !removed.contains(*e)).collect();
        if let Some(lin) = self.as_linear() {
            let sub = if contract.is_empty() {
                lin.select(&map)
            } else {
                lin.contract_select(contract, &map)
            };
            return Ok(sub.into());
        }
        let contract_rank = self.rank(contract);
        let cached = !matches!(self.backend(), Backend::Linear(_));
        Ok(Matroid::view(
            self,
            ViewKind::Minor {
                contract: contract.clone(),
                delete: delete.clone(),
                map: map.clone(),
                contract_rank,
            },
            map.len(),
            cached,
        ))
    }

    pub fn delete(&self, d: &Subset) -> Result<Matroid> {
        self.minor(&Subset::new(), d)
    }

    pub fn contract(&self, c: &Subset) -> Result<Matroid> {
        self.minor(c, &Subset::new())
    }

    /// `self | keep`.
    pub fn restrict(&self, keep: &Subset) -> Result<Matroid> {
        self.delete(&keep.complement(self.inner.n))
    }

    pub fn dual(&self) -> Matroid {
        Matroid::view(self, ViewKind::Dual, self.inner.n, false)
    }

    /// Rank function `min(r(X), t)`, `1 <= t <= r(M)`.
    pub fn truncate(&self, t: usize) -> Result<Matroid> {
        if t == 0 || t > self.rank_total() {
            return Err(Error::BadRank {
                rank: t,
                reason: format!("truncation needs 1 <= t <= {}", self.rank_total()),
            });
        }
        if t == self.rank_total() {
            return Ok(self.clone());
        }
        Ok(Matroid::view(self, ViewKind::Truncate(t), self.inner.n, false))
    }

    /// Adds a new element (id `n`) freely on the flat `flat`.
    pub fn principal_extension(&self, flat: &Subset) -> Result<Matroid> {
        if !self.is_flat(flat) {
            return Err(Error::NotAFlat(flat.to_string()));
        }
        Ok(Matroid::view(
            self,
            ViewKind::PrincipalExt { flat: flat.clone() },
            self.inner.n + 1,
            true,
        ))
    }

    /// Principal extension on `flat` followed by contraction of the new
    /// element. Requires `r(flat) >= 2`.
    pub fn principal_truncation(&self, flat: &Subset) -> Result<Matroid> {
        let r = self.rank(flat);
        if r < 2 {
            return Err(Error::BadRank {
                rank: r,
                reason: "principal truncation needs a flat of rank at least 2".into(),
            });
        }
        let ext = self.principal_extension(flat)?;
        ext.contract(&Subset::singleton(self.inner.n))
    }

    /// `ε(M) > (q^{r(M)} - 1)/(q - 1)`.
    pub fn is_q_dense(&self, q: u64) -> bool {
        assert!(q >= 2, "density threshold needs q >= 2");
        (self.epsilon() as u128) > projective_count(q, self.rank_total() as u32)
    }

    /// Minimal dependent sets, ordered by size then lexicographically.
    pub fn circuits(&self) -> Result<Vec<Subset>> {
        let n = self.inner.n;
        if n > CIRCUIT_CAP {
            return Err(Error::cap("circuit enumeration", n, CIRCUIT_CAP));
        }
        let mut out = Vec::new();
        for size in 1..=(self.rank_total() + 1).min(n) {
            for c in combinations(n, size) {
                let set: Subset = c.iter().copied().collect();
                if self.rank(&set) != size - 1 {
                    continue;
                }
                if c.iter().all(|&e| self.rank(&set.without(e)) == size - 1) {
                    out.push(set);
                }
            }
        }
        Ok(out)
    }

    /// Complements of hyperplanes.
    pub fn cocircuits(&self) -> Result<Vec<Subset>> {
        let n = self.inner.n;
        Ok(self
            .hyperplanes()?
            .into_iter()
            .map(|h| h.complement(n))
            .collect())
    }

    /// Materializes the matroid as an explicit basis list.
    pub fn to_bases(&self) -> Result<Matroid> {
        let n = self.inner.n;
        if n > BASES_MAX_GROUND {
            return Err(Error::cap("bases ground set", n, BASES_MAX_GROUND));
        }
        let r = self.rank_total();
        let count = binomial(n, r);
        const CANDIDATE_CAP: u128 = 1 << 22;
        if count > CANDIDATE_CAP {
            return Err(Error::cap("basis candidates", count as usize, CANDIDATE_CAP as usize));
        }
        let bases: Vec<Subset> = combinations(n, r)
            .map(|c| c.into_iter().collect::<Subset>())
            .filter(|s| self.rank(s) == r)
            .collect();
        Ok(BasesBackend::unchecked(n, r, bases)?.into())
    }

    /// Whether two matroids on the same ground set agree on every subset.
    pub fn rank_agrees(&self, other: &Matroid) -> bool {
        let n = self.inner.n;
        n == other.inner.n
            && n <= 24
            && (0..1u64 << n).all(|m| {
                let s = Subset::from_mask(m);
                self.rank(&s) == other.rank(&s)
            })
    }
}

impl ViewBackend {
    fn rank(&self, x: &Subset, n: usize) -> usize {
        let parent = &self.parent;
        match &self.kind {
            ViewKind::Minor {
                contract,
                map,
                contract_rank,
                ..
            } => parent.rank(&x.map(map).union(contract)) - contract_rank,
            ViewKind::Truncate(t) => parent.rank(x).min(*t),
            ViewKind::Dual => {
                let pn = parent.ground_size();
                x.len() + parent.rank(&x.complement(pn)) - parent.rank_total()
            }
            ViewKind::PrincipalExt { flat } => {
                let e = n - 1;
                if !x.contains(e) {
                    return parent.rank(x);
                }
                let rest = x.without(e);
                (parent.rank(&rest) + 1).min(parent.rank(&rest.union(flat)))
            }
            ViewKind::ParallelConnection { other, p1, p2 } => {
                let n1 = parent.ground_size();
                let x1: Subset = x.iter().filter(|&e| e < n1).collect();
                let mut x2: Subset = x
                    .iter()
                    .filter(|&e| e >= n1)
                    .map(|e| {
                        let j = e - n1;
                        if j >= *p2 {
                            j + 1
                        } else {
                            j
                        }
                    })
                    .collect();
                if x1.contains(*p1) {
                    x2.insert(*p2);
                }
                let joined = parent.rank(&x1.with(*p1)) + other.rank(&x2.with(*p2)) - 1;
                joined.min(parent.rank(&x1) + other.rank(&x2))
            }
        }
    }

    /// Closure through the parent where the view allows it.
    fn closure(&self, x: &Subset, n: usize) -> Option<Subset> {
        let parent = &self.parent;
        match &self.kind {
            ViewKind::Minor { contract, map, .. } => {
                let pc = parent.closure(&x.map(map).union(contract));
                Some(
                    map.iter()
                        .enumerate()
                        .filter(|(_, &pe)| pc.contains(pe))
                        .map(|(i, _)| i)
                        .collect(),
                )
            }
            ViewKind::Truncate(t) => {
                if parent.rank(x) < *t {
                    Some(parent.closure(x))
                } else {
                    Some(Subset::full(n))
                }
            }
            ViewKind::PrincipalExt { flat } => {
                let e = n - 1;
                if x.contains(e) {
                    return None;
                }
                let mut c = parent.closure(x);
                if flat.is_subset(&c) {
                    c.insert(e);
                }
                Some(c)
            }
            _ => None,
        }
    }
}

/// Parallel connection of `m1` and `m2` along basepoints `p1`, `p2`.
///
/// Elements of `m1` keep their ids; the elements of `m2` other than `p2`
/// follow in order. The shared basepoint is `p1`.
pub fn parallel_connection(m1: &Matroid, m2: &Matroid, p1: usize, p2: usize) -> Result<Matroid> {
    for (m, p) in [(m1, p1), (m2, p2)] {
        if p >= m.ground_size() || m.is_loop(p) || m.is_coloop(p) {
            return Err(Error::BadBasepoint(p));
        }
    }
    let n = m1.ground_size() + m2.ground_size() - 1;
    Ok(Matroid::view(
        m1,
        ViewKind::ParallelConnection {
            other: m2.clone(),
            p1,
            p2,
        },
        n,
        true,
    ))
}

/// 2-sum: the parallel connection with the basepoint deleted. Element ids
/// follow [`parallel_connection`] with `p1` removed.
pub fn two_sum(m1: &Matroid, m2: &Matroid, p1: usize, p2: usize) -> Result<Matroid> {
    parallel_connection(m1, m2, p1, p2)?.delete(&Subset::singleton(p1))
}

/// Direct sum with explicit bases; the elements of `m2` follow those of
/// `m1`.
pub fn direct_sum(m1: &Matroid, m2: &Matroid) -> Result<Matroid> {
    let (n1, n2) = (m1.ground_size(), m2.ground_size());
    let n = n1 + n2;
    if n > BASES_MAX_GROUND {
        return Err(Error::cap("bases ground set", n, BASES_MAX_GROUND));
    }
    let shift: Vec<usize> = (n1..n).collect();
    let bases_of = |m: &Matroid| -> Result<Vec<Subset>> {
        match m.to_bases()?.backend() {
            Backend::Bases(b) => Ok(b.bases().collect()),
            _ => unreachable!("to_bases yields a bases backend"),
        }
    };
    let (b1, b2) = (bases_of(m1)?, bases_of(m2)?);
    let count = b1.len().saturating_mul(b2.len());
    const PRODUCT_CAP: usize = 1 << 20;
    if count > PRODUCT_CAP {
        return Err(Error::cap("direct sum bases", count, PRODUCT_CAP));
    }
    let mut bases = Vec::with_capacity(count);
    for x in &b1 {
        for y in &b2 {
            bases.push(x.union(&y.map(&shift)));
        }
    }
    Ok(BasesBackend::unchecked(n, m1.rank_total() + m2.rank_total(), bases)?.into())
}
