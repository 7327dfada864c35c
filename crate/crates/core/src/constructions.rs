//! Named matroids: projective and affine geometries, uniform matroids, the
//! theta graphs `M(K_{2,k})`, free spikes and swirls, principal extensions of
//! flats in projective geometries, and the extremal members of the classes
//! built from truncations and principal truncations of geometries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::projective_count;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matroid::{two_sum, LinearBackend, Matroid, RANK_CAP};
use crate::subset::Subset;

/// Which extremal family a density witness comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DensityClass {
    /// `GF(q)`-representable matroids.
    L,
    /// Minor closure of the principal extensions on the whole ground set.
    Lcirc,
    /// Minor closure of the principal extensions on a line.
    Llambda,
}

impl std::str::FromStr for DensityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l" => Ok(DensityClass::L),
            "lcirc" => Ok(DensityClass::Lcirc),
            "llambda" => Ok(DensityClass::Llambda),
            _ => Err(Error::BadParams(format!("unknown class `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatroidName {
    /// `PG(n-1, q)`; `n` is the rank.
    Pg { n: usize, q: u64 },
    /// `AG(n-1, q)`; `n` is the rank.
    Ag { n: usize, q: u64 },
    Uniform { r: usize, n: usize },
    Theta(usize),
    Spike(usize),
    Swirl(usize),
    /// `P(n-1, q, k)`: principal extension of a rank-`k` flat of `PG(n-1, q)`.
    PrincipalExt { n: usize, q: u64, k: usize },
    TwoSumChain(usize),
    Witness {
        q: u64,
        class: DensityClass,
        n: usize,
    },
}

impl fmt::Display for MatroidName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidName::Pg { n, q } => write!(f, "PG({},{q})", n - 1),
            MatroidName::Ag { n, q } => write!(f, "AG({},{q})", n - 1),
            MatroidName::Uniform { r, n } => write!(f, "U({r},{n})"),
            MatroidName::Theta(k) => write!(f, "M(K2,{k})"),
            MatroidName::Spike(k) => write!(f, "Spike({k})"),
            MatroidName::Swirl(k) => write!(f, "Swirl({k})"),
            MatroidName::PrincipalExt { n, q, k } => write!(f, "P({},{q},{k})", n - 1),
            MatroidName::TwoSumChain(k) => write!(f, "TwoSumChain({k})"),
            MatroidName::Witness { q, class, n } => write!(f, "Witness({q},{class:?},{n})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedMatroid {
    pub matroid: Matroid,
    pub name: MatroidName,
    pub provenance: String,
}

impl NamedMatroid {
    fn new(matroid: Matroid, name: MatroidName, provenance: impl Into<String>) -> Self {
        NamedMatroid {
            matroid,
            name,
            provenance: provenance.into(),
        }
    }
}

fn field(q: u64) -> Result<FieldSpec> {
    FieldSpec::new(q)
}

fn check_points(count: u128) -> Result<()> {
    if count > RANK_CAP as u128 {
        return Err(Error::cap("point count", count.min(usize::MAX as u128) as usize, RANK_CAP));
    }
    Ok(())
}

/// All vectors of `GF(q)^n` in lexicographic order of coefficient indices
/// (coordinate 0 most significant).
fn vectors(f: &FieldSpec, n: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = f.q() as u64;
    (0..q.pow(n as u32)).map(move |mut i| {
        let mut v = vec![FieldElement::ZERO; n];
        for slot in (0..n).rev() {
            v[slot] = f.element((i % q) as u32);
            i /= q;
        }
        v
    })
}

/// Projective geometry `PG(n-1, q)` of rank `n`: one column per
/// one-dimensional subspace, first nonzero coordinate 1, columns in
/// lexicographic order.
pub fn pg(n: usize, q: u64) -> Result<NamedMatroid> {
    if n == 0 {
        return Err(Error::BadParams("PG needs rank n >= 1".into()));
    }
    let f = field(q)?;
    check_points(projective_count(q, n as u32))?;
    let columns: Vec<_> = vectors(&f, n)
        .filter(|v| v.iter().find(|x| !x.is_zero()) == Some(&FieldElement::ONE))
        .collect();
    let m = LinearBackend::new(f, n, columns)?.into();
    Ok(NamedMatroid::new(
        m,
        MatroidName::Pg { n, q },
        format!("pg(n={n},q={q})"),
    ))
}

/// Affine geometry `AG(n-1, q)` of rank `n`: the points `(1, v)`.
pub fn ag(n: usize, q: u64) -> Result<NamedMatroid> {
    if n == 0 {
        return Err(Error::BadParams("AG needs rank n >= 1".into()));
    }
    let f = field(q)?;
    check_points((q as u128).pow(n as u32 - 1))?;
    let columns: Vec<_> = vectors(&f, n - 1)
        .map(|v| {
            let mut c = vec![FieldElement::ONE];
            c.extend(v);
            c
        })
        .collect();
    let m = LinearBackend::new(f, n, columns)?.into();
    Ok(NamedMatroid::new(
        m,
        MatroidName::Ag { n, q },
        format!("ag(n={n},q={q})"),
    ))
}

/// `U_{r,n}`, `0 <= r <= n <= 20`.
pub fn uniform(r: usize, n: usize) -> Result<NamedMatroid> {
    if r > n || n > 20 {
        return Err(Error::BadParams(format!("uniform({r},{n}) needs 0 <= r <= n <= 20")));
    }
    let free = Matroid::free(n)?;
    let m = if r == n {
        free
    } else if r == 0 {
        free.contract(&Subset::new())?.dual()
    } else {
        free.truncate(r)?
    };
    Ok(NamedMatroid::new(
        m,
        MatroidName::Uniform { r, n },
        format!("uniform(r={r},n={n})"),
    ))
}

/// The cycle matroid of `K_{2,k}` from signed incidence columns over `f`.
///
/// Vertices are hubs `u`, `w` and `v_1..v_k`; element `2i` is the edge
/// `u v_{i+1}` and element `2i+1` the edge `v_{i+1} w`, so each leg pair
/// `{2i, 2i+1}` is one path between the hubs.
pub fn theta_graph(k: usize, f: &FieldSpec) -> Result<NamedMatroid> {
    if k < 2 {
        return Err(Error::BadParams("theta graph needs k >= 2".into()));
    }
    let dim = k + 2;
    let one = FieldElement::ONE;
    let minus = f.neg(one);
    let edge = |a: usize, b: usize| {
        let mut c = vec![FieldElement::ZERO; dim];
        c[a] = one;
        c[b] = minus;
        c
    };
    let mut columns = Vec::with_capacity(2 * k);
    for i in 0..k {
        columns.push(edge(0, 2 + i));
        columns.push(edge(2 + i, 1));
    }
    let m = LinearBackend::new(f.clone(), dim, columns)?.into();
    Ok(NamedMatroid::new(
        m,
        MatroidName::Theta(k),
        format!("theta_graph(k={k},q={})", f.q()),
    ))
}

/// The free spike `Λ_k`: the rank-`k` truncation of `M(K_{2,k})`. Leg pair
/// `i` is `{2i, 2i+1}`.
pub fn free_spike(k: usize) -> Result<NamedMatroid> {
    if k < 3 {
        return Err(Error::BadParams("free spike needs k >= 3".into()));
    }
    let theta = theta_graph(k, &field(2)?)?;
    let m = theta.matroid.truncate(k)?;
    Ok(NamedMatroid::new(
        m,
        MatroidName::Spike(k),
        format!("truncate(theta_graph(k={k}),{k})"),
    ))
}

/// The chain `L_1 ⊕₂ L_2 ⊕₂ ... ⊕₂ L_k` of copies of `U_{2,4}`.
///
/// Each `L_i` is labelled (left basepoint, `a_i`, `b_i`, right basepoint);
/// the right basepoint of `L_i` is glued to the left basepoint of `L_{i+1}`.
/// Element order of the result: `x_1, a_1, b_1, .., a_k, b_k, x_k`.
pub fn two_sum_chain(k: usize) -> Result<NamedMatroid> {
    if k < 1 {
        return Err(Error::BadParams("chain needs k >= 1".into()));
    }
    let line = uniform(2, 4)?.matroid;
    let mut chain = line.clone();
    for _ in 1..k {
        let right = chain.ground_size() - 1;
        chain = two_sum(&chain, &line, right, 0)?;
    }
    Ok(NamedMatroid::new(
        chain,
        MatroidName::TwoSumChain(k),
        format!("two_sum_chain(k={k})"),
    ))
}

/// The free swirl `Δ_k`: principally truncate the line spanned by the free
/// ends `x_1`, `x_k` of [`two_sum_chain`], then delete `x_1` and `x_k`.
/// Leg pair `i` is `{2i, 2i+1}`.
pub fn free_swirl(k: usize) -> Result<NamedMatroid> {
    if k < 3 {
        return Err(Error::BadParams("free swirl needs k >= 3".into()));
    }
    let chain = two_sum_chain(k)?.matroid;
    let n = chain.ground_size();
    let ends: Subset = [0, n - 1].into_iter().collect();
    let line = chain.closure(&ends);
    let m = chain.principal_truncation(&line)?.delete(&ends)?;
    Ok(NamedMatroid::new(
        m,
        MatroidName::Swirl(k),
        format!("principal_truncation(two_sum_chain(k={k}),cl{{x1,xk}}) \\ {{x1,xk}}"),
    ))
}

/// `P(n-1, q, k)`: principal extension of the rank-`k` flat spanned by the
/// last `k` coordinates of `PG(n-1, q)` (its first `(q^k-1)/(q-1)` points).
/// The new element has id `|PG(n-1,q)|`.
pub fn principal_ext_pg(n: usize, q: u64, k: usize) -> Result<NamedMatroid> {
    if k > n {
        return Err(Error::BadParams(format!("flat rank {k} exceeds geometry rank {n}")));
    }
    let geometry = pg(n, q)?.matroid;
    let flat = Subset::full(projective_count(q, k as u32) as usize);
    let m = geometry.principal_extension(&flat)?;
    Ok(NamedMatroid::new(
        m,
        MatroidName::PrincipalExt { n, q, k },
        format!("principal_extension(pg(n={n},q={q}),rank-{k} coordinate flat)"),
    ))
}

/// Densest known rank-`n` member of each class: `PG(n-1,q)`; the rank-`n`
/// truncation of `PG(n,q)`; and the simplification of `PG(n,q)` with a line
/// principally truncated.
pub fn density_witness(q: u64, class: DensityClass, n: usize) -> Result<NamedMatroid> {
    if n < 2 {
        return Err(Error::BadParams("density witness needs n >= 2".into()));
    }
    let name = MatroidName::Witness { q, class, n };
    match class {
        DensityClass::L => {
            let g = pg(n, q)?;
            Ok(NamedMatroid::new(g.matroid, name, format!("pg(n={n},q={q})")))
        }
        DensityClass::Lcirc => {
            let g = pg(n + 1, q)?.matroid;
            Ok(NamedMatroid::new(
                g.truncate(n)?,
                name,
                format!("truncate(pg(n={},q={q}),{n})", n + 1),
            ))
        }
        DensityClass::Llambda => {
            let g = pg(n + 1, q)?.matroid;
            let line = Subset::full(q as usize + 1);
            let (si, _) = g.principal_truncation(&line)?.simplify();
            Ok(NamedMatroid::new(
                si,
                name,
                format!("si(principal_truncation(pg(n={},q={q}),line))", n + 1),
            ))
        }
    }
}
