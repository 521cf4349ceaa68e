//! Finite groups given by operation tables, together with the subset
//! ("complex") arithmetic, normal subgroups, coset systems and quotient
//! groups the rest of the crate is built on.
//!
//! Elements are dense indices `0..order` and the identity is always `0`.

use std::fmt;

use crate::elements::ElementSet;
use crate::error::{Error, IsoViolation, Result};

/// A finite group stored as a full operation table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    label: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

/// The cyclic group `Z_n` with `op(i, j) = (i + j) mod n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    let table = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i + j) % n))
        .collect();
    let inverse = (0..n).map(|i| (n - i) % n).collect();
    Ok(FiniteGroup {
        order: n,
        table,
        inverse,
        label: format!("Z{n}"),
    })
}

/// Checks the group axioms on a square table and returns the group with its
/// identity renumbered to index 0.
pub fn validate_table(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
    validate_table_relabeled(rows).map(|(g, _)| g)
}

/// Like [`validate_table`], but also returns the relabelling `old index -> new index`
/// that moved the identity to 0 (a transposition, or the identity permutation).
pub fn validate_table_relabeled(rows: &[Vec<usize>]) -> Result<(FiniteGroup, Vec<usize>)> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidOrder);
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
        if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::NotClosed {
                row,
                col,
                value,
                order: n,
            });
        }
    }
    let op = |a: usize, b: usize| rows[a][b];
    for i in 0..n {
        for j in 0..n {
            let ij = op(i, j);
            for k in 0..n {
                if op(ij, k) != op(i, op(j, k)) {
                    return Err(Error::NotAssociative(i, j, k));
                }
            }
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|a| op(e, a) == a && op(a, e) == a))
        .ok_or(Error::NoIdentity)?;
    let mut inverse = vec![0; n];
    for a in 0..n {
        inverse[a] = (0..n)
            .find(|&b| op(a, b) == identity && op(b, a) == identity)
            .ok_or(Error::NoInverse(a))?;
    }

    // Swap the identity into position 0.
    let relabel: Vec<usize> = (0..n)
        .map(|i| {
            if i == identity {
                0
            } else if i == 0 {
                identity
            } else {
                i
            }
        })
        .collect();
    let mut table = vec![0; n * n];
    let mut new_inverse = vec![0; n];
    for a in 0..n {
        for b in 0..n {
            table[relabel[a] * n + relabel[b]] = relabel[op(a, b)];
        }
        new_inverse[relabel[a]] = relabel[inverse[a]];
    }
    let group = FiniteGroup {
        order: n,
        table,
        inverse: new_inverse,
        label: format!("G{n}"),
    };
    Ok((group, relabel))
}

impl FiniteGroup {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// True when the table is literally addition modulo the order.
    pub fn is_standard_cyclic(&self) -> bool {
        let n = self.order;
        (0..n).all(|i| (0..n).all(|j| self.op(i, j) == (i + j) % n))
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        ElementSet::singleton(self.order, 0)
    }

    pub fn set(&self, elements: impl IntoIterator<Item = usize>) -> Result<ElementSet> {
        let mut s = ElementSet::empty(self.order);
        for e in elements {
            if e >= self.order {
                return Err(Error::ElementOutOfRange {
                    element: e,
                    order: self.order,
                });
            }
            s.insert(e);
        }
        Ok(s)
    }

    /// `{a∘b : a ∈ lhs, b ∈ rhs}`
    pub fn complex_product(&self, lhs: &ElementSet, rhs: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.order);
        for a in lhs {
            for b in rhs {
                out.insert(self.op(a, b));
            }
        }
        out
    }

    /// `{a⁻¹ : a ∈ set}`
    pub fn complex_inverse(&self, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.order, set.iter().map(|a| self.inv(a)))
    }

    pub fn left_translate(&self, g: usize, set: &ElementSet) -> ElementSet {
        ElementSet::from_elements(self.order, set.iter().map(|h| self.op(g, h)))
    }

    pub fn right_translate(&self, set: &ElementSet, g: usize) -> ElementSet {
        ElementSet::from_elements(self.order, set.iter().map(|h| self.op(h, g)))
    }

    fn check_universe(&self, set: &ElementSet) -> Result<()> {
        if set.universe() != self.order {
            return Err(Error::NotASubgroup(format!(
                "set over {} elements used with group of order {}",
                set.universe(),
                self.order
            )));
        }
        Ok(())
    }

    /// Verifies that `h` contains the identity and is closed under the
    /// operation and inverses.
    pub fn check_subgroup(&self, h: &ElementSet) -> Result<()> {
        self.check_universe(h)?;
        if !h.contains(0) {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for a in h {
            if !h.contains(self.inv(a)) {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for b in h {
                if !h.contains(self.op(a, b)) {
                    return Err(Error::NotASubgroup(format!(
                        "product of {a} and {b} missing"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether the subgroup `h` is normal. Errors when `h` is not a subgroup.
    pub fn is_normal(&self, h: &ElementSet) -> Result<bool> {
        Ok(self.normality_witness(h)?.is_none())
    }

    /// A pair `(g, h)` with `g∘h∘g⁻¹ ∉ H`, if one exists.
    pub fn normality_witness(&self, h: &ElementSet) -> Result<Option<(usize, usize)>> {
        self.check_subgroup(h)?;
        for g in 0..self.order {
            let gi = self.inv(g);
            for x in h {
                if !h.contains(self.op(self.op(g, x), gi)) {
                    return Ok(Some((g, x)));
                }
            }
        }
        Ok(None)
    }

    fn require_normal(&self, h: &ElementSet) -> Result<()> {
        match self.normality_witness(h)? {
            None => Ok(()),
            Some((conjugator, element)) => Err(Error::NotNormal {
                conjugator,
                element,
            }),
        }
    }

    /// Canonical coset system of a normal subgroup: `h` first, the remaining
    /// left cosets by ascending least element.
    pub fn enumerate_cosets(&self, h: &ElementSet) -> Result<CosetSystem> {
        self.require_normal(h)?;
        let mut cosets = vec![h.clone()];
        let mut covered = h.clone();
        for g in 0..self.order {
            if !covered.contains(g) {
                let c = self.left_translate(g, h);
                covered.union_with(&c);
                cosets.push(c);
            }
        }
        CosetSystem::new(self.order, cosets)
    }

    /// The singleton coset system of `{e}`, in element order.
    pub fn singleton_cosets(&self) -> CosetSystem {
        let cosets = (0..self.order)
            .map(|g| ElementSet::singleton(self.order, g))
            .collect();
        CosetSystem::new(self.order, cosets).expect("singletons partition the group")
    }

    /// The quotient group on canonical coset indices.
    pub fn quotient(&self, h: &ElementSet) -> Result<FiniteGroup> {
        let cosets = self.enumerate_cosets(h)?;
        Ok(cosets
            .quotient_group(self)
            .with_label(format!("{}/{}", self.label, h)))
    }
}

/// An enumeration of the cosets of a normal subgroup; `cosets[0]` is the subgroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetSystem {
    cosets: Vec<ElementSet>,
    index_of: Vec<usize>,
}

impl fmt::Debug for CosetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.cosets).finish()
    }
}

impl CosetSystem {
    /// Checks that `cosets` partition `0..group_order` into equal-sized blocks
    /// with the identity in the first one.
    pub fn new(group_order: usize, cosets: Vec<ElementSet>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCosetSystem(m));
        let Some(first) = cosets.first() else {
            return bad("no cosets".into());
        };
        if !first.contains(0) {
            return bad("first coset does not contain the identity".into());
        }
        let size = first.len();
        let mut index_of = vec![usize::MAX; group_order];
        for (i, c) in cosets.iter().enumerate() {
            if c.universe() != group_order {
                return bad(format!("coset {i} is over the wrong group"));
            }
            if c.len() != size {
                return bad(format!(
                    "coset {i} has {} elements, expected {size}",
                    c.len()
                ));
            }
            for e in c {
                if index_of[e] != usize::MAX {
                    return bad(format!(
                        "element {e} lies in cosets {} and {i}",
                        index_of[e]
                    ));
                }
                index_of[e] = i;
            }
        }
        if let Some(e) = index_of.iter().position(|&i| i == usize::MAX) {
            return bad(format!("element {e} is in no coset"));
        }
        Ok(CosetSystem { cosets, index_of })
    }

    pub fn subgroup(&self) -> &ElementSet {
        &self.cosets[0]
    }

    pub fn cosets(&self) -> &[ElementSet] {
        &self.cosets
    }

    pub fn coset(&self, i: usize) -> &ElementSet {
        &self.cosets[i]
    }

    /// The number of cosets (the index of the subgroup).
    pub fn count(&self) -> usize {
        self.cosets.len()
    }

    pub fn group_order(&self) -> usize {
        self.index_of.len()
    }

    /// Index of the coset containing `element`.
    #[inline]
    pub fn index_of(&self, element: usize) -> usize {
        self.index_of[element]
    }

    /// Index of the coset equal to `set`, if `set` is one of the cosets.
    pub fn position(&self, set: &ElementSet) -> Option<usize> {
        let i = self.index_of(set.least()?);
        (&self.cosets[i] == set).then_some(i)
    }

    /// Cosets listed in a new order: `cosets[i]` becomes `old[order[i]]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        let cosets = order.iter().map(|&i| self.cosets[i].clone()).collect();
        CosetSystem::new(self.group_order(), cosets)
    }

    /// Union of the cosets selected by `indices`.
    pub fn union_of(&self, indices: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut out = ElementSet::empty(self.group_order());
        for i in indices {
            out.union_with(&self.cosets[i]);
        }
        out
    }

    /// The indices of cosets wholly contained in `set`, or `None` when `set`
    /// is not a union of cosets.
    pub fn decompose(&self, set: &ElementSet) -> Option<Vec<usize>> {
        let mut hit = vec![false; self.count()];
        for e in set {
            hit[self.index_of(e)] = true;
        }
        let indices: Vec<usize> = (0..self.count()).filter(|&i| hit[i]).collect();
        indices
            .iter()
            .all(|&i| self.cosets[i].is_subset(set))
            .then_some(indices)
    }

    /// The quotient group on coset indices of this system (identity index 0).
    pub fn quotient_group(&self, group: &FiniteGroup) -> FiniteGroup {
        let k = self.count();
        let reps: Vec<usize> = self.cosets.iter().map(|c| c.least().unwrap()).collect();
        let rows: Vec<Vec<usize>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| self.index_of(group.op(reps[a], reps[b])))
                    .collect()
            })
            .collect();
        let (q, relabel) = validate_table_relabeled(&rows).expect("quotient of a normal subgroup");
        debug_assert_eq!(relabel[0], 0);
        q
    }
}

/// Verifies that `map` (canonical coset index of `h` → canonical coset index
/// of `k`) is an isomorphism `gx/h → gy/k`.
pub fn check_quotient_iso(
    gx: &FiniteGroup,
    h: &ElementSet,
    gy: &FiniteGroup,
    k: &ElementSet,
    map: &[usize],
) -> Result<()> {
    let hs = gx.enumerate_cosets(h)?;
    let ks = gy.enumerate_cosets(k)?;
    check_coset_map(gx, &hs, gy, &ks, map)
}

/// Quotient-isomorphism check against explicit coset systems.
pub fn check_coset_map(
    gx: &FiniteGroup,
    hs: &CosetSystem,
    gy: &FiniteGroup,
    ks: &CosetSystem,
    map: &[usize],
) -> Result<()> {
    let violation = |v| Err(Error::NotQuotientIso(v));
    let count = hs.count();
    if count != ks.count() {
        return Err(Error::IncompatibleQuotients {
            left: count,
            right: ks.count(),
        });
    }
    if map.len() != count {
        return violation(IsoViolation::WrongLength {
            expected: count,
            got: map.len(),
        });
    }
    let mut preimage = vec![usize::MAX; count];
    for (a, &t) in map.iter().enumerate() {
        if t >= count {
            return violation(IsoViolation::OutOfRange {
                source_coset: a,
                target: t,
                count,
            });
        }
        if preimage[t] != usize::MAX {
            return violation(IsoViolation::NotInjective {
                first: preimage[t],
                second: a,
                target: t,
            });
        }
        preimage[t] = a;
    }
    let ident_x = hs.index_of(0);
    let ident_y = ks.index_of(0);
    if map[ident_x] != ident_y {
        return violation(IsoViolation::IdentityNotPreserved(map[ident_x]));
    }
    let qx = |a: usize, b: usize| {
        hs.index_of(gx.op(hs.coset(a).least().unwrap(), hs.coset(b).least().unwrap()))
    };
    let qy = |a: usize, b: usize| {
        ks.index_of(gy.op(ks.coset(a).least().unwrap(), ks.coset(b).least().unwrap()))
    };
    for a in 0..count {
        for b in 0..count {
            if map[qx(a, b)] != qy(map[a], map[b]) {
                return violation(IsoViolation::NotHomomorphic(a, b));
            }
        }
    }
    Ok(())
}

pub fn is_quotient_iso(
    gx: &FiniteGroup,
    h: &ElementSet,
    gy: &FiniteGroup,
    k: &ElementSet,
    map: &[usize],
) -> bool {
    check_quotient_iso(gx, h, gy, k, map).is_ok()
}
