//! Exact sparse linear algebra: echelon forms, kernels and cohomology of finite
//! cochain complexes.

use std::collections::HashMap;

use crate::graded::{Key, Lin};
use crate::scalar::Field;

pub type SparseVec<K> = Lin<usize, K>;

/// Row-echelon basis of a subspace, each row normalised to leading coefficient 1
/// and tagged with its expression in the inserted generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon<K: Field> {
    rows: Vec<(SparseVec<K>, SparseVec<K>)>,
    pivot_row: HashMap<usize, usize>,
}

impl<K: Field> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows; the tag records the generators subtracted.
    pub fn reduce(&self, v: &SparseVec<K>, tag: &SparseVec<K>) -> (SparseVec<K>, SparseVec<K>) {
        let mut v = v.clone();
        let mut tag = tag.clone();
        let mut cursor: Option<usize> = None;
        loop {
            let next = match cursor {
                None => v.keys().find(|k| self.pivot_row.contains_key(k)).copied(),
                Some(c) => v
                    .keys()
                    .filter(|k| **k > c)
                    .find(|k| self.pivot_row.contains_key(k))
                    .copied(),
            };
            let Some(k) = next else { break };
            let (row, rtag) = &self.rows[self.pivot_row[&k]];
            let c = v.coeff(&k);
            let neg = -c;
            v.add_scaled(row, &neg);
            tag.add_scaled(rtag, &neg);
            cursor = Some(k);
        }
        (v, tag)
    }

    /// Inserts `v` with tag; returns the nonzero residual if `v` was independent.
    pub fn insert(&mut self, v: &SparseVec<K>, tag: &SparseVec<K>) -> Option<SparseVec<K>> {
        let (r, t) = self.reduce(v, tag);
        let (&p, c) = r.iter().next()?;
        let inv = c.inv().expect("leading coefficients are nonzero");
        let (r, t) = (r.scaled(&inv), t.scaled(&inv));
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push((r.clone(), t));
        Some(r)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v, &Lin::zero()).0.is_zero()
    }
}

/// Rank of the span of the given vectors.
pub fn rank<K: Field>(cols: &[SparseVec<K>]) -> usize {
    let mut e = Echelon::new();
    for c in cols {
        e.insert(c, &Lin::zero());
    }
    e.rank()
}

/// Basis of `{x : Σ x_i cols[i] = 0}`, as vectors over column indices.
pub fn kernel<K: Field>(cols: &[SparseVec<K>]) -> Vec<SparseVec<K>> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for (i, c) in cols.iter().enumerate() {
        let tag = Lin::basis(i);
        if e.insert(c, &tag).is_none() {
            out.push(e.reduce(c, &tag).1);
        }
    }
    out
}

/// A finite cochain complex in one degree: `d_in: C^{n−1} → C^n`, `d_out: C^n → C^{n+1}`.
#[derive(Clone, Debug)]
pub struct CohomologyDegree<K: Field> {
    pub dim: usize,
    /// Representatives of a basis of `H^n`, as vectors over the basis of `C^n`.
    pub reps: Vec<SparseVec<K>>,
    /// Echelon basis of `B^n` followed by the representatives (tagged by their index).
    classes: Echelon<K>,
    boundary_rank: usize,
}

impl<K: Field> CohomologyDegree<K> {
    /// `boundaries`: images of `C^{n−1}`; `d_out`: images of basis vectors of `C^n`.
    pub fn compute(dim: usize, boundaries: &[SparseVec<K>], d_out: &[SparseVec<K>]) -> Self {
        let mut classes = Echelon::new();
        for b in boundaries {
            classes.insert(b, &Lin::zero());
        }
        let boundary_rank = classes.rank();
        let mut reps = Vec::new();
        for z in kernel(d_out) {
            let tag = Lin::basis(reps.len());
            if classes.insert(&z, &tag).is_some() {
                reps.push(z);
            }
        }
        CohomologyDegree {
            dim,
            reps,
            classes,
            boundary_rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn boundary_rank(&self) -> usize {
        self.boundary_rank
    }

    /// Coordinates of the class of a cocycle in the basis `reps`; `None` if `z` is
    /// not in the span of cocycles.
    pub fn class_of(&self, z: &SparseVec<K>) -> Option<SparseVec<K>> {
        let (r, t) = self.classes.reduce(z, &Lin::zero());
        r.is_zero().then(|| t.negated())
    }
}

/// Enumerated basis of a graded piece with index lookup.
#[derive(Clone, Debug)]
pub struct Indexed<B: Key> {
    pub items: Vec<B>,
    index: HashMap<B, usize>,
}

impl<B: Key> Indexed<B> {
    pub fn new(items: Vec<B>) -> Self {
        let index = items
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        Indexed { items, index }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn position(&self, b: &B) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Coordinates of `x`; panics on elements outside the enumerated basis.
    pub fn coords<K: Field>(&self, x: &Lin<B, K>) -> SparseVec<K> {
        x.relabel(|b| {
            self.index
                .get(b)
                .copied()
                .unwrap_or_else(|| panic!("{b:?} is outside the enumerated basis"))
        })
    }

    pub fn element<K: Field>(&self, v: &SparseVec<K>) -> Lin<B, K> {
        v.relabel(|i| self.items[*i].clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{F3, Q};

    fn v<K: Field>(entries: &[(usize, i64)]) -> SparseVec<K> {
        entries.iter().map(|(i, c)| (*i, K::from_i64(*c))).collect()
    }

    #[test]
    fn rank_over_rationals_and_f3() {
        let cols = [
            v::<Q>(&[(0, 1), (1, 1)]),
            v(&[(1, 1), (2, 1)]),
            v(&[(0, 1), (2, -1)]),
        ];
        assert_eq!(rank(&cols), 2);
        let cols = [
            v::<F3>(&[(0, 1), (1, 1)]),
            v(&[(1, 1), (2, 1)]),
            v(&[(0, 1), (2, 2)]),
        ];
        assert_eq!(rank(&cols), 2);
        let cols = [
            v::<F3>(&[(0, 1), (1, 1)]),
            v(&[(1, 1), (2, 1)]),
            v(&[(0, 1), (2, 1)]),
        ];
        assert_eq!(rank(&cols), 3);
    }

    #[test]
    fn kernel_of_boundary_of_a_triangle() {
        // edges 01, 02, 12 → vertices 0, 1, 2 with ∂[ij] = j − i
        let cols = [
            v::<Q>(&[(0, -1), (1, 1)]),
            v(&[(0, -1), (2, 1)]),
            v(&[(1, -1), (2, 1)]),
        ];
        let k = kernel(&cols);
        assert_eq!(k.len(), 1);
        let mut sum: SparseVec<Q> = Lin::zero();
        for (i, c) in k[0].iter() {
            sum.add_scaled(&cols[*i], c);
        }
        assert!(sum.is_zero());
    }

    #[test]
    fn class_coordinates_ignore_boundaries() {
        let h =
            CohomologyDegree::<Q>::compute(2, &[v(&[(0, 1), (1, 1)])], &[Lin::zero(), Lin::zero()]);
        assert_eq!(h.rank(), 1);
        let c = h.class_of(&v(&[(1, 3)])).unwrap();
        let c2 = h.class_of(&v(&[(0, -3)])).unwrap();
        assert_eq!(c, c2);
        assert!(!c.is_zero());
    }
}
