use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::subset::Subset;

/// Incrementally built row-echelon basis of a subspace of `GF(q)^d`.
///
/// Every stored vector has a 1 in its pivot coordinate and zeros in the
/// pivot coordinates of all other stored vectors.
#[derive(Clone, Debug)]
pub struct Echelon<'f> {
    field: &'f FieldSpec,
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl<'f> Echelon<'f> {
    pub fn new(field: &'f FieldSpec) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// Reduces `v` modulo the span; the result vanishes on every pivot.
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let scale = f.inv(v[pivot]).expect("pivot is nonzero");
        for x in v.iter_mut() {
            *x = f.mul(*x, scale);
        }
        // keep the basis fully reduced
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}

/// Columns of a matrix over a finite field; the matroid of column dependence.
#[derive(Clone, Debug)]
pub struct LinearBackend {
    field: FieldSpec,
    dim: usize,
    columns: Vec<Vec<FieldElement>>,
}

impl LinearBackend {
    pub fn new(field: FieldSpec, dim: usize, columns: Vec<Vec<FieldElement>>) -> Result<Self> {
        for (i, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::BadParams(format!(
                    "column {i} has length {}, expected {dim}",
                    c.len()
                )));
            }
            if let Some(x) = c.iter().find(|x| x.0 as u32 >= field.q()) {
                return Err(Error::BadParams(format!(
                    "column {i} entry {x} outside GF({})",
                    field.q()
                )));
            }
        }
        Ok(LinearBackend {
            field,
            dim,
            columns,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[Vec<FieldElement>] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn echelon_of(&self, x: &Subset) -> Echelon<'_> {
        let mut ech = Echelon::new(&self.field);
        for e in x {
            if ech.rank() == self.dim {
                break;
            }
            ech.insert(&self.columns[e]);
        }
        ech
    }

    pub fn rank(&self, x: &Subset) -> usize {
        self.echelon_of(x).rank()
    }

    pub fn closure(&self, x: &Subset) -> Subset {
        let ech = self.echelon_of(x);
        (0..self.columns.len())
            .filter(|&e| x.contains(e) || ech.contains(&self.columns[e]))
            .collect()
    }

    /// Keeps the listed columns, in the given order.
    pub fn select(&self, keep: &[usize]) -> LinearBackend {
        LinearBackend {
            field: self.field.clone(),
            dim: self.dim,
            columns: keep.iter().map(|&e| self.columns[e].clone()).collect(),
        }
    }

    /// Contracts `contract` and keeps `keep` by projecting onto the quotient
    /// by the span of the contracted columns.
    pub fn contract_select(&self, contract: &Subset, keep: &[usize]) -> LinearBackend {
        let ech = self.echelon_of(contract);
        let pivots: Vec<usize> = ech.pivots().collect();
        let remaining: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let columns = keep
            .iter()
            .map(|&e| {
                let v = ech.reduce(&self.columns[e]);
                remaining.iter().map(|&i| v[i]).collect()
            })
            .collect();
        LinearBackend {
            field: self.field.clone(),
            dim: remaining.len(),
            columns,
        }
    }

    /// Scales a nonzero column so its first nonzero entry is 1; `None` for a
    /// zero column.
    pub fn normalized(&self, e: usize) -> Option<Vec<FieldElement>> {
        let c = &self.columns[e];
        let lead = *c.iter().find(|x| !x.is_zero())?;
        let s = self.field.inv(lead).ok()?;
        Some(c.iter().map(|&x| self.field.mul(x, s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(f: &FieldSpec, v: &[u32]) -> Vec<FieldElement> {
        v.iter().map(|&i| f.element(i)).collect()
    }

    #[test]
    fn rank_and_closure_over_gf3() {
        let f = FieldSpec::new(3).unwrap();
        let cols = vec![
            col(&f, &[1, 0, 0]),
            col(&f, &[0, 1, 0]),
            col(&f, &[1, 1, 0]),
            col(&f, &[2, 2, 0]),
            col(&f, &[0, 0, 1]),
            col(&f, &[0, 0, 0]),
        ];
        let lin = LinearBackend::new(f, 3, cols).unwrap();
        assert_eq!(lin.rank(&Subset::full(6)), 3);
        assert_eq!(lin.rank(&[0, 1, 2, 3].into_iter().collect()), 2);
        let cl = lin.closure(&[0, 2].into_iter().collect());
        assert_eq!(cl.to_vec(), vec![0, 1, 2, 3, 5]);
        assert_eq!(lin.normalized(3), lin.normalized(2));
        assert_eq!(lin.normalized(5), None);
    }

    #[test]
    fn contraction_projects() {
        let f = FieldSpec::new(2).unwrap();
        let cols = vec![
            col(&f, &[1, 0, 0]),
            col(&f, &[0, 1, 0]),
            col(&f, &[1, 1, 0]),
            col(&f, &[0, 0, 1]),
        ];
        let lin = LinearBackend::new(f, 3, cols).unwrap();
        let c = lin.contract_select(&Subset::singleton(0), &[1, 2, 3]);
        assert_eq!(c.dim(), 2);
        // 1 and 2 become parallel after contracting 0
        assert_eq!(c.rank(&[0, 1].into_iter().collect()), 1);
        assert_eq!(c.rank(&Subset::full(3)), 2);
    }

    #[test]
    fn rejects_bad_columns() {
        let f = FieldSpec::new(2).unwrap();
        assert!(LinearBackend::new(f.clone(), 2, vec![vec![FieldElement(1)]]).is_err());
        assert!(LinearBackend::new(f, 1, vec![vec![FieldElement(2)]]).is_err());
    }
}
