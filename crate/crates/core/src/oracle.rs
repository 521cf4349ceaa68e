//! Explicit binary relations on a finite base set `0..n`, stored as bit
//! matrices. This is the ground truth the symbolic algebra is checked
//! against, so it shares no code with the coset machinery: every operation
//! here works on raw pairs.

use std::fmt;

use crate::group::FiniteGroup;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConcreteRelation {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl ConcreteRelation {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64);
        ConcreteRelation {
            n,
            stride,
            bits: vec![0; stride * n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Self::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    /// `id_U` on `0..n`.
    pub fn identity_on(n: usize) -> Self {
        Self::from_pairs(n, (0..n).map(|i| (i, i)))
    }

    /// `A × B` for two lists of points.
    pub fn rectangle(n: usize, rows: &[usize], cols: &[usize]) -> Self {
        let mut r = Self::empty(n);
        for &a in rows {
            for &b in cols {
                r.insert(a, b);
            }
        }
        r
    }

    pub fn base_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn insert(&mut self, a: usize, b: usize) {
        assert!(
            a < self.n && b < self.n,
            "pair ({a},{b}) outside 0..{}",
            self.n
        );
        self.bits[a * self.stride + b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.bits[a * self.stride + b / 64] & (1 << (b % 64)) != 0
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.stride..(a + 1) * self.stride]
    }

    fn row_iter(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(a).iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// All pairs, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| self.row_iter(a).map(move |b| (a, b)))
            .collect()
    }

    fn assert_same_base(&self, other: &Self) {
        assert_eq!(self.n, other.n, "relations over different base sets");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.assert_same_base(other);
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn union_with(&mut self, other: &Self) {
        self.assert_same_base(other);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.assert_same_base(other);
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        out
    }

    /// `unit \ self`: complement taken inside the unit, not inside `U × U`.
    pub fn complement_within(&self, unit: &Self) -> Self {
        self.assert_same_base(unit);
        let mut out = unit.clone();
        for (a, b) in out.bits.iter_mut().zip(&self.bits) {
            *a &= !b;
        }
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.assert_same_base(other);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.assert_same_base(other);
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & b == 0)
    }

    /// `{(b, a) : (a, b) ∈ self}`
    pub fn converse(&self) -> Self {
        let mut out = Self::empty(self.n);
        for a in 0..self.n {
            for b in self.row_iter(a) {
                out.insert(b, a);
            }
        }
        out
    }

    /// `{(a, c) : ∃b. (a, b) ∈ self ∧ (b, c) ∈ other}`
    pub fn compose(&self, other: &Self) -> Self {
        self.assert_same_base(other);
        let mut out = Self::empty(self.n);
        for a in 0..self.n {
            let start = a * self.stride;
            for b in self.row_iter(a) {
                let src = other.row(b);
                for (w, s) in out.bits[start..start + self.stride].iter_mut().zip(src) {
                    *w |= s;
                }
            }
        }
        out
    }

    /// Each point of the domain has at most one image.
    pub fn is_function(&self) -> bool {
        (0..self.n).all(|a| self.row_iter(a).nth(1).is_none())
    }

    /// A bijection from `domain` onto `codomain` (both given as point lists).
    pub fn is_bijection_between(&self, domain: &[usize], codomain: &[usize]) -> bool {
        if self.len() != domain.len() || domain.len() != codomain.len() {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &a in domain {
            let mut images = self.row_iter(a);
            let (Some(b), None) = (images.next(), images.next()) else {
                return false;
            };
            if !codomain.contains(&b) || seen[b] {
                return false;
            }
            seen[b] = true;
        }
        true
    }

    /// Lines `"a b"`, one per pair, sorted.
    pub fn dump_pairs(&self) -> String {
        let mut s = String::new();
        for (a, b) in self.pairs() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

impl fmt::Debug for ConcreteRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ConcreteRelation(n={}, ", self.n)?;
        f.debug_set().entries(self.pairs()).finish()?;
        f.write_str(")")
    }
}

/// `R_g = {(h, h∘g) : h ∈ G}` over the base set `0..|G|`.
pub fn cayley_relation(group: &FiniteGroup, g: usize) -> ConcreteRelation {
    let n = group.order();
    ConcreteRelation::from_pairs(n, (0..n).map(|h| (h, group.op(h, g))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    #[test]
    fn composition_basics() {
        let r = ConcreteRelation::from_pairs(4, [(0, 1), (1, 2), (2, 3)]);
        let rr = r.compose(&r);
        assert_eq!(rr.pairs(), vec![(0, 2), (1, 3)]);
        assert!(r.compose(&ConcreteRelation::empty(4)).is_empty());
        assert_eq!(r.compose(&ConcreteRelation::identity_on(4)), r);
        assert_eq!(r.converse().pairs(), vec![(1, 0), (2, 1), (3, 2)]);
    }

    #[test]
    fn complement_is_relative_to_unit() {
        let unit = ConcreteRelation::rectangle(5, &[0, 1], &[0, 1]);
        let r = ConcreteRelation::from_pairs(5, [(0, 1)]);
        let c = r.complement_within(&unit);
        assert_eq!(c.len(), 3);
        assert!(c.is_disjoint(&r));
        assert_eq!(c.union(&r), unit);
        assert!(unit.complement_within(&unit).is_empty());
    }

    #[test]
    fn cayley_relations_on_z6() {
        let z6 = make_cyclic(6).unwrap();
        assert_eq!(cayley_relation(&z6, 0), ConcreteRelation::identity_on(6));
        assert!(cayley_relation(&z6, 2).contains(1, 3));
        for f in 0..6 {
            let rf = cayley_relation(&z6, f);
            assert!(rf.is_bijection_between(&[0, 1, 2, 3, 4, 5], &[0, 1, 2, 3, 4, 5]));
            assert_eq!(rf.converse(), cayley_relation(&z6, z6.inv(f)));
            for g in 0..6 {
                assert_eq!(
                    rf.compose(&cayley_relation(&z6, g)),
                    cayley_relation(&z6, z6.op(f, g))
                );
            }
        }
    }

    #[test]
    fn rows_wider_than_a_word() {
        let r = ConcreteRelation::from_pairs(100, [(0, 70), (70, 99), (99, 0)]);
        assert_eq!(r.compose(&r).pairs(), vec![(0, 99), (70, 0), (99, 70)]);
        assert_eq!(r.dump_pairs(), "0 70\n70 99\n99 0\n");
        assert!(r.is_function());
    }
}
