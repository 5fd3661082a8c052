use std::cmp::Ordering;
use std::fmt;

use crate::error::CycleError;
use crate::graph::EdgeId;

/// A subset of a graph's edges, viewed as a vector over GF(2).
///
/// The length is the edge count of the graph the set was built for; sets of
/// different lengths never combine.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeSet {
    len: usize,
    words: Vec<u64>,
}

impl EdgeSet {
    pub fn empty(len: usize) -> Self {
        EdgeSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Panics if an edge id is `>= len`.
    pub fn from_edges(len: usize, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut set = Self::empty(len);
        for e in edges {
            set.insert(e);
        }
        set
    }

    /// Dimension of the ambient space (edge count of the graph).
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn insert(&mut self, e: EdgeId) {
        assert!(
            e < self.len,
            "edge {e} out of range for dimension {}",
            self.len
        );
        self.words[e / 64] |= 1 << (e % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: EdgeId) {
        assert!(
            e < self.len,
            "edge {e} out of range for dimension {}",
            self.len
        );
        self.words[e / 64] &= !(1 << (e % 64));
    }

    #[inline]
    pub fn toggle(&mut self, e: EdgeId) {
        assert!(
            e < self.len,
            "edge {e} out of range for dimension {}",
            self.len
        );
        self.words[e / 64] ^= 1 << (e % 64);
    }

    #[inline]
    pub fn contains(&self, e: EdgeId) -> bool {
        e < self.len && self.words[e / 64] >> (e % 64) & 1 == 1
    }

    /// Number of edges in the set.
    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<EdgeId> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Edge ids in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    i * 64 + bit
                })
            })
        })
    }

    fn check(&self, other: &EdgeSet) -> Result<(), CycleError> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(CycleError::DimensionMismatch {
                left: self.len,
                right: other.len,
            })
        }
    }

    /// Symmetric difference `(A ∪ B) \ (A ∩ B)`.
    pub fn xor(&self, other: &EdgeSet) -> Result<EdgeSet, CycleError> {
        let mut out = self.clone();
        out.xor_assign(other)?;
        Ok(out)
    }

    pub fn xor_assign(&mut self, other: &EdgeSet) -> Result<(), CycleError> {
        self.check(other)?;
        self.xor_unchecked(other);
        Ok(())
    }

    #[inline]
    pub(crate) fn xor_unchecked(&mut self, other: &EdgeSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn intersection_count(&self, other: &EdgeSet) -> Result<usize, CycleError> {
        self.check(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum())
    }

    pub fn is_subset(&self, other: &EdgeSet) -> Result<bool, CycleError> {
        self.check(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    /// Lexicographic comparison of the increasing edge-id sequences.
    pub fn cmp_lex(&self, other: &EdgeSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Incrementally maintained row-echelon basis over GF(2).
///
/// Each stored row has a distinct pivot (its lowest set bit) and has been
/// reduced by every earlier row, so reduction is one pass in insertion order.
#[derive(Debug, Clone)]
pub struct Gf2Basis {
    len: usize,
    rows: Vec<EdgeSet>,
    pivots: Vec<usize>,
}

impl Gf2Basis {
    pub fn new(len: usize) -> Self {
        Gf2Basis {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &EdgeSet) -> Result<EdgeSet, CycleError> {
        if v.len() != self.len {
            return Err(CycleError::DimensionMismatch {
                left: self.len,
                right: v.len(),
            });
        }
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.contains(p) {
                r.xor_unchecked(row);
            }
        }
        Ok(r)
    }

    /// True iff `v` is in the span of the rows inserted so far.
    pub fn spans(&self, v: &EdgeSet) -> Result<bool, CycleError> {
        Ok(self.reduce(v)?.is_empty())
    }

    /// Adds `v` if it is independent of the current rows. Returns whether it
    /// was added.
    pub fn insert(&mut self, v: &EdgeSet) -> Result<bool, CycleError> {
        let r = self.reduce(v)?;
        match r.first() {
            None => Ok(false),
            Some(p) => {
                self.rows.push(r);
                self.pivots.push(p);
                Ok(true)
            }
        }
    }
}

/// Rank over GF(2) of a list of edge sets of a common dimension.
pub fn gf2_rank(vectors: &[EdgeSet]) -> Result<usize, CycleError> {
    let Some(first) = vectors.first() else {
        return Ok(0);
    };
    let mut basis = Gf2Basis::new(first.len());
    for v in vectors {
        basis.insert(v)?;
    }
    Ok(basis.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(len: usize, e: &[usize]) -> EdgeSet {
        EdgeSet::from_edges(len, e.iter().copied())
    }

    #[test]
    fn xor_examples() {
        let a = set(5, &[1, 2]);
        let b = set(5, &[2, 3]);
        assert!(a.xor(&a).unwrap().is_empty());
        assert_eq!(EdgeSet::empty(5).xor(&a).unwrap(), a);
        assert_eq!(a.xor(&b).unwrap(), set(5, &[1, 3]));
        assert_eq!(
            a.xor(&EdgeSet::empty(6)),
            Err(CycleError::DimensionMismatch { left: 5, right: 6 })
        );
    }

    #[test]
    fn iteration_crosses_word_boundaries() {
        let s = set(200, &[0, 63, 64, 127, 199]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 63, 64, 127, 199]);
        assert_eq!(s.count(), 5);
        assert_eq!(s.first(), Some(0));
        assert!(!s.contains(200));
    }

    // Brute force: a set of vectors is independent iff no non-empty subset
    // XORs to zero.
    fn independent_brute(vs: &[EdgeSet]) -> bool {
        (1u32..1 << vs.len()).all(|mask| {
            let mut acc = EdgeSet::empty(vs[0].len());
            for (i, v) in vs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc.xor_assign(v).unwrap();
                }
            }
            !acc.is_empty()
        })
    }

    #[test]
    fn rank_examples() {
        // K4 edges: 01=0 02=1 03=2 12=3 13=4 23=5
        let t012 = set(6, &[0, 1, 3]);
        let t013 = set(6, &[0, 2, 4]);
        let t023 = set(6, &[1, 2, 5]);
        let tris = [t012.clone(), t013, t023];
        assert!(independent_brute(&tris));
        assert_eq!(gf2_rank(&tris).unwrap(), 3);
        assert_eq!(gf2_rank(&[t012.clone(), t012.clone(), t012]).unwrap(), 1);
        assert_eq!(gf2_rank(&[]).unwrap(), 0);
    }

    fn arb_sets(len: usize, count: usize) -> impl Strategy<Value = Vec<EdgeSet>> {
        prop::collection::vec(prop::collection::vec(0..len, 0..len), 0..=count)
            .prop_map(move |vs| vs.iter().map(|e| set(len, e)).collect())
    }

    proptest! {
        #[test]
        fn rank_matches_brute_force_and_ignores_order(vs in arb_sets(9, 6)) {
            let r = gf2_rank(&vs).unwrap();
            // rank = size of the largest independent subset
            let best = (0u32..1 << vs.len())
                .filter(|mask| {
                    let sub: Vec<_> = (0..vs.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| vs[i].clone())
                        .collect();
                    sub.is_empty() || independent_brute(&sub)
                })
                .map(|mask| mask.count_ones() as usize)
                .max()
                .unwrap();
            prop_assert_eq!(r, best);
            let mut rev = vs.clone();
            rev.reverse();
            prop_assert_eq!(gf2_rank(&rev).unwrap(), r);
        }

        #[test]
        fn xor_is_a_group(a in arb_sets(70, 3)) {
            if a.len() == 3 {
                let (x, y, z) = (&a[0], &a[1], &a[2]);
                prop_assert_eq!(x.xor(y).unwrap(), y.xor(x).unwrap());
                prop_assert_eq!(
                    x.xor(y).unwrap().xor(z).unwrap(),
                    x.xor(&y.xor(z).unwrap()).unwrap()
                );
                prop_assert!(x.xor(x).unwrap().is_empty());
            }
        }
    }
}
