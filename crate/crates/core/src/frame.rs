//! Group pairs: a system of disjoint finite groups, a partition of their
//! indices into blocks, and quotient isomorphisms between the groups of a
//! block. Also the frame-condition checkers.
//!
//! Only isomorphisms `x < y` (declaration order) are stored. The record for
//! `(x, x)` is the identity automorphism of `G_x/{e}` and the record for
//! `(y, x)` is the inverse of the stored `(x, y)` record with the two coset
//! systems swapped. Raw group pairs that deviate from this can be expressed
//! with [`Frame::with_explicit_record`], which is what the checkers exist to
//! catch.

use std::collections::BTreeMap;
use std::fmt;

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::group::{check_coset_map, CosetSystem, FiniteGroup};

/// One quotient isomorphism `φ_xy : G_x/H → G_y/K`.
///
/// The `K` coset system is stored in image order: `k.coset(γ)` is the image
/// of `h.coset(γ)`, so the map itself is `γ ↦ γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IsoRecord {
    x: usize,
    y: usize,
    h: CosetSystem,
    k: CosetSystem,
}

impl IsoRecord {
    /// Builds the record from the two normal subgroups and a map between
    /// their canonical coset indices.
    pub fn new(
        (x, gx, h): (usize, &FiniteGroup, &ElementSet),
        (y, gy, k): (usize, &FiniteGroup, &ElementSet),
        map: &[usize],
    ) -> Result<Self> {
        let hs = gx.enumerate_cosets(h)?;
        let ks = gy.enumerate_cosets(k)?;
        check_coset_map(gx, &hs, gy, &ks, map)?;
        let k = ks.reordered(map)?;
        Ok(IsoRecord { x, y, h: hs, k })
    }

    /// Builds the record from two coset systems paired index by index.
    pub fn from_systems(
        (x, gx, h): (usize, &FiniteGroup, CosetSystem),
        (y, gy, k): (usize, &FiniteGroup, CosetSystem),
    ) -> Result<Self> {
        if h.group_order() != gx.order() || k.group_order() != gy.order() {
            return Err(Error::InvalidCosetSystem(
                "coset system does not match the group order".into(),
            ));
        }
        for s in [(gx, h.subgroup()), (gy, k.subgroup())] {
            if !s.0.is_normal(s.1)? {
                return Err(Error::InvalidCosetSystem("subgroup is not normal".into()));
            }
        }
        let identity: Vec<usize> = (0..h.count()).collect();
        check_coset_map(gx, &h, gy, &k, &identity)?;
        Ok(IsoRecord { x, y, h, k })
    }

    /// The identity automorphism of `G_x/{e}`.
    pub fn identity(x: usize, gx: &FiniteGroup) -> Self {
        let s = gx.singleton_cosets();
        IsoRecord {
            x,
            y: x,
            h: s.clone(),
            k: s,
        }
    }

    /// `φ⁻¹`, with `H_yx,γ = K_xy,γ` and `K_yx,γ = H_xy,γ`.
    pub fn inverse(&self) -> Self {
        IsoRecord {
            x: self.y,
            y: self.x,
            h: self.k.clone(),
            k: self.h.clone(),
        }
    }

    pub fn x(&self) -> usize {
        self.x
    }

    pub fn y(&self) -> usize {
        self.y
    }

    pub fn h(&self) -> &CosetSystem {
        &self.h
    }

    pub fn k(&self) -> &CosetSystem {
        &self.k
    }

    pub fn kappa(&self) -> usize {
        self.h.count()
    }

    /// `φ[S]` for a set `S ⊆ G_x` that is a union of `H`-cosets.
    pub fn image(&self, set: &ElementSet) -> Option<ElementSet> {
        self.h.decompose(set).map(|ix| self.k.union_of(ix))
    }

    /// `φ⁻¹[S]` for a set `S ⊆ G_y` that is a union of `K`-cosets.
    pub fn preimage(&self, set: &ElementSet) -> Option<ElementSet> {
        self.k.decompose(set).map(|ix| self.h.union_of(ix))
    }

    /// The map as canonical-index pairs: `γ ↦ position of K_γ in the
    /// canonical (least-element) order of K's cosets`.
    pub fn canonical_map(&self) -> Vec<usize> {
        let mut mins: Vec<(usize, usize)> = self
            .k
            .cosets()
            .iter()
            .enumerate()
            .map(|(i, c)| (c.least().unwrap(), i))
            .collect();
        mins.sort();
        let mut rank = vec![0; mins.len()];
        for (r, &(_, i)) in mins.iter().enumerate() {
            rank[i] = r;
        }
        // H is in canonical order already, so γ is its canonical index.
        rank
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::III => "(iii)",
            Condition::IV => "(iv)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub condition: Condition,
    /// The failing index, pair or triple.
    pub indices: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Full,
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameReport {
    pub mode: CheckMode,
    /// Number of individual condition instances evaluated, per condition.
    pub checked: [usize; 4],
    pub violations: Vec<Violation>,
}

impl FrameReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, c: Condition) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.condition == c)
    }
}

/// The isomorphisms induced on the coarser quotients for a triple `(x, y, z)`:
/// `P₀ = K_xy∘H_yz`, `M₀ = φ_xy⁻¹[P₀]`, `N₀ = φ_yz[P₀]`.
#[derive(Clone, Debug)]
pub struct InducedIso {
    pub triple: (usize, usize, usize),
    pub m0: ElementSet,
    pub p0: ElementSet,
    pub n0: ElementSet,
    pub m_cosets: CosetSystem,
    pub p_cosets: CosetSystem,
    pub n_cosets: CosetSystem,
    /// `φ̂_xy`: `M`-coset index → `P`-coset index.
    pub hat_xy: Vec<usize>,
    /// `φ̂_yz`: `P`-coset index → `N`-coset index.
    pub hat_yz: Vec<usize>,
    /// `φ̂_xz`: `M`-coset index → `N`-coset index; `None` when `φ_xz` does not
    /// induce a map `G_x/M₀ → G_z/N₀`.
    pub hat_xz: Option<Vec<usize>>,
}

impl InducedIso {
    /// `φ̂_xy ; φ̂_yz`
    pub fn composed(&self) -> Vec<usize> {
        self.hat_xy.iter().map(|&p| self.hat_yz[p]).collect()
    }

    /// Whether `φ̂_xy ; φ̂_yz = φ̂_xz`.
    pub fn commutes(&self) -> bool {
        self.hat_xz.as_deref() == Some(&self.composed()[..])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    ids: Vec<String>,
    groups: Vec<FiniteGroup>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    stored: BTreeMap<(usize, usize), IsoRecord>,
    explicit: BTreeMap<(usize, usize), IsoRecord>,
    resolved: BTreeMap<(usize, usize), IsoRecord>,
    comments: Vec<String>,
}

impl Frame {
    /// `groups` are in declaration order; their positions are the indices used
    /// everywhere else. `blocks` must partition those indices, and `isos`
    /// must hold exactly one record per pair `x < y` inside a block.
    pub fn new(
        groups: Vec<(String, FiniteGroup)>,
        blocks: Vec<Vec<usize>>,
        isos: Vec<IsoRecord>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidFrame(m));
        let n = groups.len();
        let (ids, groups): (Vec<String>, Vec<FiniteGroup>) = groups.into_iter().unzip();
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return bad(format!("duplicate group id {id}"));
            }
        }

        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        for (bi, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return bad("empty block".into());
            }
            for &x in b {
                if x >= n {
                    return bad(format!("block mentions unknown group index {x}"));
                }
                if block_of[x] != usize::MAX {
                    return bad(format!("group {} appears in two blocks", ids[x]));
                }
                block_of[x] = bi;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return bad(format!("group {} is in no block", ids[x]));
        }

        let mut stored = BTreeMap::new();
        for r in isos {
            let (x, y) = (r.x, r.y);
            if x >= n || y >= n {
                return bad(format!("isomorphism mentions unknown index ({x},{y})"));
            }
            if x >= y {
                return bad(format!(
                    "isomorphism ({},{}) must go from an earlier to a later group",
                    ids[x], ids[y]
                ));
            }
            if block_of[x] != block_of[y] {
                return bad(format!(
                    "isomorphism ({},{}) crosses blocks",
                    ids[x], ids[y]
                ));
            }
            if r.h.group_order() != groups[x].order() || r.k.group_order() != groups[y].order() {
                return bad(format!(
                    "isomorphism ({},{}) does not match the group orders",
                    ids[x], ids[y]
                ));
            }
            if stored.insert((x, y), r).is_some() {
                return bad(format!("duplicate isomorphism ({},{})", ids[x], ids[y]));
            }
        }
        for b in &blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    if !stored.contains_key(&(x, y)) {
                        return bad(format!("missing isomorphism ({},{})", ids[x], ids[y]));
                    }
                }
            }
        }

        let mut frame = Frame {
            ids,
            groups,
            blocks,
            block_of,
            stored,
            explicit: BTreeMap::new(),
            resolved: BTreeMap::new(),
            comments: Vec::new(),
        };
        frame.resolve_all();
        Ok(frame)
    }

    /// The frame with no groups.
    pub fn empty() -> Self {
        Frame::new(Vec::new(), Vec::new(), Vec::new()).unwrap()
    }

    fn resolve_all(&mut self) {
        let mut resolved = BTreeMap::new();
        for b in &self.blocks {
            for &x in b {
                for &y in b {
                    let r = match x.cmp(&y) {
                        std::cmp::Ordering::Equal => IsoRecord::identity(x, &self.groups[x]),
                        std::cmp::Ordering::Less => self.stored[&(x, y)].clone(),
                        std::cmp::Ordering::Greater => self.stored[&(y, x)].inverse(),
                    };
                    resolved.insert((x, y), r);
                }
            }
        }
        for (k, r) in &self.explicit {
            resolved.insert(*k, r.clone());
        }
        self.resolved = resolved;
    }

    /// Replaces the derived record for a pair `(x, y)` with `x ≥ y` by an
    /// explicitly given one. This models an arbitrary group pair; the result
    /// is a frame only if the checks still pass.
    pub fn with_explicit_record(mut self, record: IsoRecord) -> Result<Self> {
        let (x, y) = (record.x, record.y);
        if x < y {
            return Err(Error::InvalidFrame(
                "explicit records are for pairs x >= y; store x < y normally".into(),
            ));
        }
        if !self.related(x, y) {
            return Err(Error::NotRelated(x, y));
        }
        if record.h.group_order() != self.groups[x].order()
            || record.k.group_order() != self.groups[y].order()
        {
            return Err(Error::InvalidFrame(
                "record does not match the group orders".into(),
            ));
        }
        self.explicit.insert((x, y), record);
        self.resolve_all();
        Ok(self)
    }

    /// Drops explicit records so every non-stored pair is derived again.
    pub fn without_explicit_records(mut self) -> Self {
        if !self.explicit.is_empty() {
            self.explicit.clear();
            self.resolve_all();
        }
        self
    }

    /// Renames the groups; indices and blocks are unchanged.
    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.len() {
            return Err(Error::InvalidFrame(format!(
                "{} ids for {} groups",
                ids.len(),
                self.len()
            )));
        }
        for (i, id) in ids.iter().enumerate() {
            if ids[..i].contains(id) {
                return Err(Error::InvalidFrame(format!("duplicate group id {id}")));
            }
        }
        self.ids = ids;
        Ok(self)
    }

    pub fn with_comments(mut self, comments: Vec<String>) -> Self {
        self.comments = comments;
        self
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of_id(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|i| i == id)
    }

    pub fn group(&self, x: usize) -> &FiniteGroup {
        &self.groups[x]
    }

    pub fn groups(&self) -> &[FiniteGroup] {
        &self.groups
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        x < self.len() && y < self.len() && self.block_of[x] == self.block_of[y]
    }

    /// Stored records, `x < y`, in lexicographic order.
    pub fn stored_isos(&self) -> impl Iterator<Item = &IsoRecord> {
        self.stored.values()
    }

    pub fn explicit_records(&self) -> impl Iterator<Item = &IsoRecord> {
        self.explicit.values()
    }

    /// All pairs of the equivalence relation on indices, lexicographically.
    pub fn related_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.resolved.keys().copied()
    }

    /// The record for a related pair: stored for `x < y`, otherwise derived.
    pub fn resolve_iso(&self, x: usize, y: usize) -> Result<&IsoRecord> {
        self.resolved.get(&(x, y)).ok_or(Error::NotRelated(x, y))
    }

    /// The isomorphisms induced on the quotients modulo `M₀`, `P₀`, `N₀`.
    pub fn induced_iso(&self, x: usize, y: usize, z: usize) -> Result<InducedIso> {
        let rxy = self.resolve_iso(x, y)?;
        let ryz = self.resolve_iso(y, z)?;
        let rxz = self.resolve_iso(x, z)?;
        let (gx, gy, gz) = (&self.groups[x], &self.groups[y], &self.groups[z]);
        let broken = |what: &str| Error::InvalidFrame(format!("({x},{y},{z}): {what}"));

        let p0 = gy.complex_product(rxy.k.subgroup(), ryz.h.subgroup());
        let m0 = rxy
            .preimage(&p0)
            .ok_or_else(|| broken("K_xy∘H_yz not a union of K_xy-cosets"))?;
        let n0 = ryz
            .image(&p0)
            .ok_or_else(|| broken("K_xy∘H_yz not a union of H_yz-cosets"))?;
        let m_cosets = gx.enumerate_cosets(&m0)?;
        let p_cosets = gy.enumerate_cosets(&p0)?;
        let n_cosets = gz.enumerate_cosets(&n0)?;

        let hat_xy = m_cosets
            .cosets()
            .iter()
            .map(|c| rxy.image(c).and_then(|i| p_cosets.position(&i)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| broken("φ_xy does not induce a map on M₀-cosets"))?;
        let hat_yz = p_cosets
            .cosets()
            .iter()
            .map(|c| ryz.image(c).and_then(|i| n_cosets.position(&i)))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| broken("φ_yz does not induce a map on P₀-cosets"))?;
        let hat_xz = m_cosets
            .cosets()
            .iter()
            .map(|c| rxz.image(c).and_then(|i| n_cosets.position(&i)))
            .collect::<Option<Vec<_>>>();

        Ok(InducedIso {
            triple: (x, y, z),
            m0,
            p0,
            n0,
            m_cosets,
            p_cosets,
            n_cosets,
            hat_xy,
            hat_yz,
            hat_xz,
        })
    }

    /// Checks all four frame conditions for every pair and triple.
    pub fn check_frame_full(&self) -> FrameReport {
        let mut report = FrameReport {
            mode: CheckMode::Full,
            checked: [0; 4],
            violations: Vec::new(),
        };
        for x in 0..self.len() {
            self.check_identity(x, &mut report);
        }
        for (x, y) in self.related_pairs() {
            self.check_inverse(x, y, &mut report);
        }
        for b in &self.blocks {
            for &x in b {
                for &y in b {
                    for &z in b {
                        self.check_image(x, y, z, &mut report);
                        self.check_induced(x, y, z, &mut report);
                    }
                }
            }
        }
        report.violations.sort();
        report
    }

    /// The reduced check: (i) for all `x`, (ii) for `x < y`, and (iii)/(iv)
    /// for `x < y < z` only. Agrees with [`Frame::check_frame_full`].
    pub fn check_frame_reduced(&self) -> FrameReport {
        let mut report = FrameReport {
            mode: CheckMode::Reduced,
            checked: [0; 4],
            violations: Vec::new(),
        };
        for x in 0..self.len() {
            self.check_identity(x, &mut report);
        }
        for (x, y) in self.related_pairs().filter(|(x, y)| x < y) {
            self.check_inverse(x, y, &mut report);
        }
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for (j, &y) in b.iter().enumerate().skip(i + 1) {
                    for &z in &b[j + 1..] {
                        self.check_image(x, y, z, &mut report);
                        self.check_second_image(x, y, z, &mut report);
                        self.check_induced(x, y, z, &mut report);
                    }
                }
            }
        }
        report.violations.sort();
        report
    }

    fn check_identity(&self, x: usize, report: &mut FrameReport) {
        report.checked[0] += 1;
        let r = &self.resolved[&(x, x)];
        let trivial = self.groups[x].trivial_subgroup();
        let detail = if r.h.subgroup() != &trivial {
            Some(format!(
                "κ = {} differs from |G_{}| = {}: H = {}",
                r.kappa(),
                self.ids[x],
                self.groups[x].order(),
                r.h.subgroup()
            ))
        } else if r.k.subgroup() != &trivial {
            Some(format!("K = {} is not trivial", r.k.subgroup()))
        } else {
            (0..r.kappa())
                .find(|&g| r.h.coset(g) != r.k.coset(g))
                .map(|g| format!("{} maps to {}", r.h.coset(g), r.k.coset(g)))
        };
        if let Some(detail) = detail {
            report.violations.push(Violation {
                condition: Condition::I,
                indices: vec![x],
                detail,
            });
        }
    }

    fn check_inverse(&self, x: usize, y: usize, report: &mut FrameReport) {
        report.checked[1] += 1;
        let rxy = &self.resolved[&(x, y)];
        let ryx = &self.resolved[&(y, x)];
        let detail = if ryx.h.subgroup() != rxy.k.subgroup() {
            Some(format!(
                "H_yx = {} but K_xy = {}",
                ryx.h.subgroup(),
                rxy.k.subgroup()
            ))
        } else if ryx.k.subgroup() != rxy.h.subgroup() {
            Some(format!(
                "K_yx = {} but H_xy = {}",
                ryx.k.subgroup(),
                rxy.h.subgroup()
            ))
        } else {
            (0..rxy.kappa()).find_map(|g| {
                let d = ryx.h.position(rxy.k.coset(g))?;
                (ryx.k.coset(d) != rxy.h.coset(g)).then(|| {
                    format!(
                        "φ_yx sends {} to {}, expected {}",
                        rxy.k.coset(g),
                        ryx.k.coset(d),
                        rxy.h.coset(g)
                    )
                })
            })
        };
        if let Some(detail) = detail {
            report.violations.push(Violation {
                condition: Condition::II,
                indices: vec![x, y],
                detail,
            });
        }
    }

    /// `φ_xy[H_xy∘H_xz] = K_xy∘H_yz`
    fn check_image(&self, x: usize, y: usize, z: usize, report: &mut FrameReport) {
        report.checked[2] += 1;
        let (rxy, rxz, ryz) = (
            &self.resolved[&(x, y)],
            &self.resolved[&(x, z)],
            &self.resolved[&(y, z)],
        );
        let lhs_dom = self.groups[x].complex_product(rxy.h.subgroup(), rxz.h.subgroup());
        let rhs = self.groups[y].complex_product(rxy.k.subgroup(), ryz.h.subgroup());
        let lhs = rxy.image(&lhs_dom);
        if lhs.as_ref() != Some(&rhs) {
            report.violations.push(Violation {
                condition: Condition::III,
                indices: vec![x, y, z],
                detail: format!(
                    "φ_xy[H_xy∘H_xz] = {} but K_xy∘H_yz = {}",
                    lhs.map_or("undefined".to_string(), |s| s.to_string()),
                    rhs
                ),
            });
        }
    }

    /// `φ_yz[K_xy∘H_yz] = K_xz∘K_yz`
    fn check_second_image(&self, x: usize, y: usize, z: usize, report: &mut FrameReport) {
        report.checked[2] += 1;
        let (rxy, rxz, ryz) = (
            &self.resolved[&(x, y)],
            &self.resolved[&(x, z)],
            &self.resolved[&(y, z)],
        );
        let dom = self.groups[y].complex_product(rxy.k.subgroup(), ryz.h.subgroup());
        let rhs = self.groups[z].complex_product(rxz.k.subgroup(), ryz.k.subgroup());
        let lhs = ryz.image(&dom);
        if lhs.as_ref() != Some(&rhs) {
            report.violations.push(Violation {
                condition: Condition::III,
                indices: vec![x, y, z],
                detail: format!(
                    "φ_yz[K_xy∘H_yz] = {} but K_xz∘K_yz = {}",
                    lhs.map_or("undefined".to_string(), |s| s.to_string()),
                    rhs
                ),
            });
        }
    }

    fn check_induced(&self, x: usize, y: usize, z: usize, report: &mut FrameReport) {
        report.checked[3] += 1;
        let detail = match self.induced_iso(x, y, z) {
            Err(e) => Some(e.to_string()),
            Ok(ind) => match &ind.hat_xz {
                None => Some(format!(
                    "φ_xz induces no map G_x/{} → G_z/{}",
                    ind.m0, ind.n0
                )),
                Some(direct) => {
                    let composed = ind.composed();
                    (0..composed.len())
                        .find(|&i| composed[i] != direct[i])
                        .map(|i| {
                            format!(
                                "coset {} goes to {} via y but to {} directly",
                                ind.m_cosets.coset(i),
                                ind.n_cosets.coset(composed[i]),
                                ind.n_cosets.coset(direct[i])
                            )
                        })
                }
            },
        };
        if let Some(detail) = detail {
            report.violations.push(Violation {
                condition: Condition::IV,
                indices: vec![x, y, z],
                detail,
            });
        }
    }

    /// A frame is simple when it has groups and a single block.
    pub fn is_simple(&self) -> bool {
        !self.is_empty() && self.blocks.len() == 1
    }

    /// The restrictions of the frame to each block, in block order.
    pub fn components(&self) -> Vec<Frame> {
        self.blocks.iter().map(|b| self.restrict(b)).collect()
    }

    fn restrict(&self, block: &[usize]) -> Frame {
        let local = |x: usize| block.iter().position(|&b| b == x).unwrap();
        let relabel = |r: &IsoRecord| IsoRecord {
            x: local(r.x),
            y: local(r.y),
            h: r.h.clone(),
            k: r.k.clone(),
        };
        let groups = block
            .iter()
            .map(|&x| (self.ids[x].clone(), self.groups[x].clone()))
            .collect();
        let isos = self
            .stored
            .values()
            .filter(|r| block.contains(&r.x))
            .map(relabel)
            .collect();
        let mut f = Frame::new(groups, vec![(0..block.len()).collect()], isos)
            .expect("restriction of a structurally valid frame");
        for r in self.explicit.values().filter(|r| block.contains(&r.x)) {
            f = f.with_explicit_record(relabel(r)).unwrap();
        }
        f
    }

    /// Places frames side by side; ids must be distinct across the parts.
    pub fn disjoint_union(parts: &[Frame]) -> Result<Frame> {
        let mut groups = Vec::new();
        let mut blocks = Vec::new();
        let mut isos = Vec::new();
        let mut explicit = Vec::new();
        let mut offset = 0;
        for p in parts {
            let shift = |r: &IsoRecord| IsoRecord {
                x: r.x + offset,
                y: r.y + offset,
                h: r.h.clone(),
                k: r.k.clone(),
            };
            groups.extend(p.ids.iter().cloned().zip(p.groups.iter().cloned()));
            blocks.extend(
                p.blocks
                    .iter()
                    .map(|b| b.iter().map(|x| x + offset).collect::<Vec<_>>()),
            );
            isos.extend(p.stored.values().map(shift));
            explicit.extend(p.explicit.values().map(shift));
            offset += p.len();
        }
        let mut f = Frame::new(groups, blocks, isos)?;
        for r in explicit {
            f = f.with_explicit_record(r)?;
        }
        Ok(f)
    }
}
