//! The full group relation algebra of a frame.
//!
//! Elements are sets of atom indices; an element stands for the union of its
//! atomic relations. Converse and composition are computed from coset
//! arithmetic on the atom indices and only materialized as pair sets on
//! request.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::oracle::ConcreteRelation;

static NEXT_TAG: AtomicU64 = AtomicU64::new(1);

/// The atom `((x, y), α)`: `α` indexes the coset `H_xy,α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomIndex {
    pub x: usize,
    pub y: usize,
    pub alpha: usize,
}

impl AtomIndex {
    pub fn new(x: usize, y: usize, alpha: usize) -> Self {
        AtomIndex { x, y, alpha }
    }
}

impl fmt::Display for AtomIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),{})", self.x, self.y, self.alpha)
    }
}

/// The base set `U` (disjoint union of the groups) with global point ids
/// assigned by prefix sums in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSpace {
    offsets: Vec<usize>,
    size: usize,
}

impl BaseSpace {
    pub fn new(frame: &Frame) -> Self {
        let mut offsets = Vec::with_capacity(frame.len());
        let mut size = 0;
        for g in frame.groups() {
            offsets.push(size);
            size += g.order();
        }
        BaseSpace { offsets, size }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn global(&self, x: usize, element: usize) -> usize {
        self.offsets[x] + element
    }

    /// `(group index, element)` for a global id.
    pub fn locate(&self, id: usize) -> (usize, usize) {
        let x = self.offsets.partition_point(|&o| o <= id) - 1;
        (x, id - self.offsets[x])
    }

    pub fn points(&self, x: usize, set: &ElementSet) -> Vec<usize> {
        set.iter().map(|e| self.global(x, e)).collect()
    }
}

/// A set of atoms of one particular algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FrameElement {
    tag: u64,
    atoms: ElementSet,
}

impl FrameElement {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Atom ordinals (positions in [`GroupRelationAlgebra::atoms`]).
    pub fn ordinals(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter()
    }

    pub fn contains_ordinal(&self, ordinal: usize) -> bool {
        self.atoms.contains(ordinal)
    }
}

impl fmt::Debug for FrameElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FrameElement{}", self.atoms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureEntry {
    pub x: usize,
    pub subidentity: AtomIndex,
    pub measure: usize,
    /// Atoms below the square `G_x × G_x`.
    pub functional_atoms: Vec<AtomIndex>,
    /// Every functional atom materializes to a bijection of `G_x`.
    pub all_bijections: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub entries: Vec<MeasureEntry>,
    /// Every subidentity atom has measure at most 2.
    pub pair_dense: bool,
    /// Every subidentity atom has measure 1.
    pub singleton_dense: bool,
}

pub struct GroupRelationAlgebra {
    frame: Frame,
    base: BaseSpace,
    tag: u64,
    atoms: Vec<AtomIndex>,
    pair_start: BTreeMap<(usize, usize), usize>,
    rows: Vec<Range<usize>>,
    relations: OnceLock<Vec<ConcreteRelation>>,
}

impl fmt::Debug for GroupRelationAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupRelationAlgebra({} groups, {} atoms)",
            self.frame.len(),
            self.atoms.len()
        )
    }
}

impl GroupRelationAlgebra {
    /// Builds the algebra after checking the frame conditions. Fails with
    /// [`Error::NotAFrame`] when any condition is violated.
    pub fn new(frame: Frame) -> Result<Self> {
        let report = frame.check_frame_reduced();
        if let Some(v) = report.violations.first() {
            let ids: Vec<&str> = v.indices.iter().map(|&i| frame.id(i)).collect();
            return Err(Error::NotAFrame(format!(
                "condition {} at ({}): {}",
                v.condition,
                ids.join(","),
                v.detail
            )));
        }
        let frame = frame.without_explicit_records();
        let base = BaseSpace::new(&frame);
        let mut atoms = Vec::new();
        let mut pair_start = BTreeMap::new();
        let mut rows = vec![0..0; frame.len()];
        for (x, y) in frame.related_pairs() {
            let r = frame.resolve_iso(x, y).expect("related pair");
            if rows[x].is_empty() {
                rows[x] = atoms.len()..atoms.len();
            }
            pair_start.insert((x, y), atoms.len());
            atoms.extend((0..r.kappa()).map(|a| AtomIndex::new(x, y, a)));
            rows[x].end = atoms.len();
        }
        Ok(GroupRelationAlgebra {
            frame,
            base,
            tag: NEXT_TAG.fetch_add(1, Ordering::Relaxed),
            atoms,
            pair_start,
            rows,
            relations: OnceLock::new(),
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn base(&self) -> &BaseSpace {
        &self.base
    }

    /// All atoms in lexicographic `(x, y, α)` order.
    pub fn atoms(&self) -> &[AtomIndex] {
        &self.atoms
    }

    pub fn ordinal(&self, a: AtomIndex) -> Option<usize> {
        let start = *self.pair_start.get(&(a.x, a.y))?;
        let kappa = self.kappa(a.x, a.y);
        (a.alpha < kappa).then_some(start + a.alpha)
    }

    fn ordinal_unchecked(&self, x: usize, y: usize, alpha: usize) -> usize {
        self.pair_start[&(x, y)] + alpha
    }

    pub fn kappa(&self, x: usize, y: usize) -> usize {
        self.frame.resolve_iso(x, y).map(|r| r.kappa()).unwrap_or(0)
    }

    pub fn check_atom(&self, a: AtomIndex) -> Result<()> {
        self.ordinal(a)
            .map(|_| ())
            .ok_or_else(|| Error::InvalidAtom(a.to_string()))
    }

    /// `((x,y),α)` written with the frame's group ids.
    pub fn atom_label(&self, a: AtomIndex) -> String {
        format!(
            "(({},{}),{})",
            self.frame.id(a.x),
            self.frame.id(a.y),
            a.alpha
        )
    }

    /// The coset `H_xy,α` the atom stands for.
    pub fn atom_coset(&self, a: AtomIndex) -> &ElementSet {
        self.frame.resolve_iso(a.x, a.y).unwrap().h().coset(a.alpha)
    }

    pub fn zero(&self) -> FrameElement {
        FrameElement {
            tag: self.tag,
            atoms: ElementSet::empty(self.atoms.len()),
        }
    }

    /// The unit `E`: every atom.
    pub fn unit(&self) -> FrameElement {
        FrameElement {
            tag: self.tag,
            atoms: ElementSet::full(self.atoms.len()),
        }
    }

    pub fn element<I: IntoIterator<Item = AtomIndex>>(&self, atoms: I) -> Result<FrameElement> {
        let mut e = self.zero();
        for a in atoms {
            let o = self
                .ordinal(a)
                .ok_or_else(|| Error::InvalidAtom(a.to_string()))?;
            e.atoms.insert(o);
        }
        Ok(e)
    }

    pub fn singleton(&self, a: AtomIndex) -> Result<FrameElement> {
        self.element([a])
    }

    pub fn element_from_ordinals<I: IntoIterator<Item = usize>>(
        &self,
        ordinals: I,
    ) -> FrameElement {
        let mut e = self.zero();
        for o in ordinals {
            e.atoms.insert(o);
        }
        e
    }

    pub fn atoms_of(&self, e: &FrameElement) -> Vec<AtomIndex> {
        e.atoms.iter().map(|o| self.atoms[o]).collect()
    }

    fn same_algebra(&self, e: &FrameElement) -> Result<()> {
        if e.tag == self.tag {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn union(&self, a: &FrameElement, b: &FrameElement) -> Result<FrameElement> {
        self.same_algebra(a)?;
        self.same_algebra(b)?;
        Ok(FrameElement {
            tag: self.tag,
            atoms: a.atoms.union(&b.atoms),
        })
    }

    pub fn intersect(&self, a: &FrameElement, b: &FrameElement) -> Result<FrameElement> {
        self.same_algebra(a)?;
        self.same_algebra(b)?;
        Ok(FrameElement {
            tag: self.tag,
            atoms: a.atoms.intersection(&b.atoms),
        })
    }

    /// Complement relative to the unit `E`.
    pub fn complement(&self, a: &FrameElement) -> Result<FrameElement> {
        self.same_algebra(a)?;
        Ok(FrameElement {
            tag: self.tag,
            atoms: ElementSet::full(self.atoms.len()).difference(&a.atoms),
        })
    }

    /// `{((x,x),0) : x ∈ I}`
    pub fn identity_element(&self) -> FrameElement {
        self.element_from_ordinals((0..self.frame.len()).map(|x| self.ordinal_unchecked(x, x, 0)))
    }

    /// `R_xy,α⁻¹ = R_yx,β` with `H_xy,β = H_xy,α⁻¹`.
    pub fn converse_atom(&self, a: AtomIndex) -> AtomIndex {
        let r = self.frame.resolve_iso(a.x, a.y).expect("valid atom");
        let g = self.frame.group(a.x);
        let rep = r.h().coset(a.alpha).least().unwrap();
        AtomIndex::new(a.y, a.x, r.h().index_of(g.inv(rep)))
    }

    /// `R_xy,α ; R_wz,β`: empty unless `y = w`, otherwise every `((x,z),γ)`
    /// with `H_xz,γ ⊆ φ_xy⁻¹[K_xy,α ∘ H_yz,β]`.
    pub fn compose_atoms(&self, a: AtomIndex, b: AtomIndex) -> FrameElement {
        let mut out = self.zero();
        if a.y != b.x {
            return out;
        }
        let (x, y, z) = (a.x, a.y, b.y);
        let rxy = self.frame.resolve_iso(x, y).expect("valid atom");
        let ryz = self.frame.resolve_iso(y, z).expect("valid atom");
        let rxz = self
            .frame
            .resolve_iso(x, z)
            .expect("related by transitivity");
        let product = self
            .frame
            .group(y)
            .complex_product(rxy.k().coset(a.alpha), ryz.h().coset(b.alpha));
        let pre = rxy
            .preimage(&product)
            .expect("a K_xy-coset times an H_yz-coset is a union of K_xy-cosets");
        let start = self.pair_start[&(x, z)];
        for (g, c) in rxz.h().cosets().iter().enumerate() {
            if c.is_subset(&pre) {
                out.atoms.insert(start + g);
            }
        }
        out
    }

    /// The closed forms available when one operand lies on a square `(x,x)`
    /// or the operands have the shape `(x,y),(y,x)`. `None` when neither
    /// applies.
    pub fn subidentity_fast_path(&self, a: AtomIndex, b: AtomIndex) -> Option<FrameElement> {
        if a.y != b.x {
            return None;
        }
        if a.x == a.y {
            // R_xx,f ; R_xy,β = R_xy,γ with H_xy,γ = f ∘ H_xy,β
            let r = self.frame.resolve_iso(b.x, b.y).ok()?;
            let g = self.frame.group(b.x);
            let gamma = r
                .h()
                .index_of(g.op(a.alpha, r.h().coset(b.alpha).least().unwrap()));
            return Some(self.element_from_ordinals([self.ordinal_unchecked(b.x, b.y, gamma)]));
        }
        if b.x == b.y {
            // R_xy,α ; R_yy,g = R_xy,γ with K_xy,γ = K_xy,α ∘ g
            let r = self.frame.resolve_iso(a.x, a.y).ok()?;
            let g = self.frame.group(a.y);
            let gamma = r
                .k()
                .index_of(g.op(r.k().coset(a.alpha).least().unwrap(), b.alpha));
            return Some(self.element_from_ordinals([self.ordinal_unchecked(a.x, a.y, gamma)]));
        }
        if b.y == a.x {
            // R_xy,α ; R_yx,β = ⋃{R_xx,f : f ∈ H_xy,α ∘ H_xy,β}
            let r = self.frame.resolve_iso(a.x, a.y).ok()?;
            let g = self.frame.group(a.x);
            let fs = g.complex_product(r.h().coset(a.alpha), r.h().coset(b.alpha));
            return Some(
                self.element_from_ordinals(fs.iter().map(|f| self.ordinal_unchecked(a.x, a.x, f))),
            );
        }
        None
    }

    /// `R_xx,f⁻¹ = R_xx,f⁻¹` on squares; `None` elsewhere.
    pub fn subidentity_converse(&self, a: AtomIndex) -> Option<AtomIndex> {
        (a.x == a.y).then(|| AtomIndex::new(a.x, a.x, self.frame.group(a.x).inv(a.alpha)))
    }

    /// Composition through the closed forms when they apply, otherwise the
    /// general rule.
    pub fn fast_compose_subidentity(&self, a: AtomIndex, b: AtomIndex) -> FrameElement {
        self.subidentity_fast_path(a, b)
            .unwrap_or_else(|| self.compose_atoms(a, b))
    }

    pub fn converse(&self, e: &FrameElement) -> Result<FrameElement> {
        self.same_algebra(e)?;
        Ok(self.element_from_ordinals(
            e.atoms
                .iter()
                .map(|o| self.ordinal(self.converse_atom(self.atoms[o])).unwrap()),
        ))
    }

    pub fn compose(&self, a: &FrameElement, b: &FrameElement) -> Result<FrameElement> {
        self.same_algebra(a)?;
        self.same_algebra(b)?;
        let mut out = self.zero();
        for oa in a.atoms.iter() {
            let lhs = self.atoms[oa];
            for ob in self.rows[lhs.y].clone().filter(|&o| b.atoms.contains(o)) {
                out.atoms
                    .union_with(&self.compose_atoms(lhs, self.atoms[ob]).atoms);
            }
        }
        Ok(out)
    }

    /// `R_xy,α = ⋃_γ H_xy,γ × (K_xy,γ ∘ K_xy,α)` as explicit pairs over `U`.
    pub fn atom_relation(&self, a: AtomIndex) -> ConcreteRelation {
        let r = self.frame.resolve_iso(a.x, a.y).expect("valid atom");
        let gy = self.frame.group(a.y);
        let mut rel = ConcreteRelation::empty(self.base.size());
        let ka = r.k().coset(a.alpha);
        for g in 0..r.kappa() {
            let rows = self.base.points(a.x, r.h().coset(g));
            let cols = self
                .base
                .points(a.y, &gy.complex_product(r.k().coset(g), ka));
            for &p in &rows {
                for &q in &cols {
                    rel.insert(p, q);
                }
            }
        }
        rel
    }

    fn cached_relations(&self) -> &[ConcreteRelation] {
        self.relations
            .get_or_init(|| self.atoms.iter().map(|&a| self.atom_relation(a)).collect())
    }

    /// The union of the element's atomic relations.
    pub fn materialize(&self, e: &FrameElement) -> Result<ConcreteRelation> {
        self.same_algebra(e)?;
        let rels = self.cached_relations();
        let mut out = ConcreteRelation::empty(self.base.size());
        for o in e.atoms.iter() {
            out.union_with(&rels[o]);
        }
        Ok(out)
    }

    pub fn materialize_atom(&self, a: AtomIndex) -> &ConcreteRelation {
        &self.cached_relations()[self.ordinal(a).expect("valid atom")]
    }

    /// `E = ⋃ G_x × G_y` over related pairs, built directly from the groups.
    pub fn unit_relation(&self) -> ConcreteRelation {
        let mut e = ConcreteRelation::empty(self.base.size());
        for (x, y) in self.frame.related_pairs() {
            let rows = self.base.points(x, &self.frame.group(x).all());
            let cols = self.base.points(y, &self.frame.group(y).all());
            e.union_with(&ConcreteRelation::rectangle(self.base.size(), &rows, &cols));
        }
        e
    }

    /// Measure of each subidentity atom `((x,x),0)`: the number of functional
    /// atoms below its square, each verified to be a bijection of `G_x`.
    pub fn measure_report(&self) -> MeasureReport {
        let mut entries = Vec::new();
        for x in 0..self.frame.len() {
            let kappa = self.kappa(x, x);
            let functional_atoms: Vec<AtomIndex> =
                (0..kappa).map(|a| AtomIndex::new(x, x, a)).collect();
            let points = self.base.points(x, &self.frame.group(x).all());
            let all_bijections = functional_atoms.iter().all(|&a| {
                self.materialize_atom(a)
                    .is_bijection_between(&points, &points)
            });
            entries.push(MeasureEntry {
                x,
                subidentity: AtomIndex::new(x, x, 0),
                measure: functional_atoms.len(),
                functional_atoms,
                all_bijections,
            });
        }
        let pair_dense = entries.iter().all(|e| e.measure <= 2);
        let singleton_dense = entries.iter().all(|e| e.measure == 1);
        MeasureReport {
            entries,
            pair_dense,
            singleton_dense,
        }
    }

    pub fn is_simple(&self) -> bool {
        self.frame.is_simple()
    }

    /// One algebra per block of the frame.
    pub fn decompose(&self) -> Vec<GroupRelationAlgebra> {
        self.frame
            .components()
            .into_iter()
            .map(|f| GroupRelationAlgebra::new(f).expect("components of a frame are frames"))
            .collect()
    }
}
