//! Exhaustive verification of an algebra against its concrete relations.
//!
//! Every law is checked atom by atom; composition distributes over unions,
//! so agreement on atoms gives agreement on all elements.

use std::fmt;

use crate::algebra::{AtomIndex, FrameElement, GroupRelationAlgebra};
use crate::oracle::{cayley_relation, ConcreteRelation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    /// The law was sampled rather than checked exhaustively.
    pub sampled: bool,
}

impl LawResult {
    fn new(name: &'static str) -> Self {
        LawResult {
            name,
            checked: 0,
            failures: 0,
            first_failure: None,
            sampled: false,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for LawResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "ok" } else { "FAIL" };
        write!(f, "{:<22} {verdict:<4} {} checked", self.name, self.checked)?;
        if self.sampled {
            write!(f, " (sampled)")?;
        }
        if let Some(w) = &self.first_failure {
            write!(f, "; first failure: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub laws: Vec<LawResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Composable atom triples checked for associativity before switching to
    /// an evenly strided sample.
    pub max_triples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_triples: 2_000_000,
        }
    }
}

fn show(alg: &GroupRelationAlgebra, e: &FrameElement) -> String {
    let atoms: Vec<String> = alg.atoms_of(e).iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", atoms.join(" "))
}

pub fn verify(alg: &GroupRelationAlgebra) -> VerifyReport {
    verify_with(alg, VerifyOptions::default())
}

pub fn verify_with(alg: &GroupRelationAlgebra, opts: VerifyOptions) -> VerifyReport {
    let atoms = alg.atoms();
    let base = alg.base();
    let frame = alg.frame();
    let n = base.size();
    let mut laws = Vec::new();

    let mut partition = LawResult::new("partition");
    let mut cardinality = LawResult::new("cardinality");
    for (x, y) in frame.related_pairs() {
        let rows = base.points(x, &frame.group(x).all());
        let cols = base.points(y, &frame.group(y).all());
        let rect = ConcreteRelation::rectangle(n, &rows, &cols);
        let kappa = alg.kappa(x, y);
        let mut union = ConcreteRelation::empty(n);
        let mut ok = true;
        for a in 0..kappa {
            let r = alg.materialize_atom(AtomIndex::new(x, y, a));
            ok &= !r.is_empty() && r.is_disjoint(&union);
            union.union_with(r);
            let k = frame.resolve_iso(x, y).unwrap().k().subgroup().len();
            cardinality.record(r.len() == rows.len() * k, || {
                format!("{} has {} pairs", AtomIndex::new(x, y, a), r.len())
            });
        }
        partition.record(ok && union == rect, || format!("block rectangle ({x},{y})"));
    }
    laws.push(partition);
    laws.push(cardinality);

    let mut identity = LawResult::new("identity oracle");
    let id = alg.materialize(&alg.identity_element()).unwrap();
    identity.record(id == ConcreteRelation::identity_on(n), || {
        "identity element is not id_U".into()
    });
    let unit = alg.materialize(&alg.unit()).unwrap();
    identity.record(unit == alg.unit_relation(), || "unit is not E".into());
    laws.push(identity);

    let mut cayley = LawResult::new("cayley");
    for x in 0..frame.len() {
        let g = frame.group(x);
        let off = base.global(x, 0);
        for f in 0..g.order() {
            let expected: Vec<(usize, usize)> = cayley_relation(g, f)
                .pairs()
                .into_iter()
                .map(|(a, b)| (a + off, b + off))
                .collect();
            let got = alg.materialize_atom(AtomIndex::new(x, x, f)).pairs();
            cayley.record(got == expected, || format!("(({x},{x}),{f})"));
        }
    }
    laws.push(cayley);

    let mut conv_oracle = LawResult::new("converse oracle");
    let mut inv1 = LawResult::new("first involution");
    for &a in atoms {
        let c = alg.converse_atom(a);
        conv_oracle.record(
            alg.materialize_atom(c) == &alg.materialize_atom(a).converse(),
            || format!("{a}"),
        );
        inv1.record(alg.converse_atom(c) == a, || format!("{a}"));
    }
    laws.push(conv_oracle);
    laws.push(inv1);

    let mut comp_oracle = LawResult::new("composition oracle");
    let mut inv2 = LawResult::new("second involution");
    let mut fast = LawResult::new("fast paths");
    for &a in atoms {
        for &b in atoms {
            let ab = alg.compose_atoms(a, b);
            let concrete = alg.materialize_atom(a).compose(alg.materialize_atom(b));
            comp_oracle.record(alg.materialize(&ab).unwrap() == concrete, || {
                format!("{a} ; {b} gave {}", show(alg, &ab))
            });
            let lhs = alg.converse(&ab).unwrap();
            let rhs = alg.compose_atoms(alg.converse_atom(b), alg.converse_atom(a));
            inv2.record(lhs == rhs, || format!("{a} ; {b}"));
            if let Some(f) = alg.subidentity_fast_path(a, b) {
                fast.record(f == ab, || format!("{a} ; {b}"));
            }
        }
        if let Some(c) = alg.subidentity_converse(a) {
            fast.record(c == alg.converse_atom(a), || format!("converse of {a}"));
        }
    }
    laws.push(comp_oracle);
    laws.push(inv2);
    laws.push(fast);

    laws.push(associativity(alg, opts));

    let mut ident = LawResult::new("identity laws");
    let one = alg.identity_element();
    let mut samples: Vec<FrameElement> = atoms.iter().map(|&a| alg.singleton(a).unwrap()).collect();
    samples.push(alg.unit());
    samples.push(alg.zero());
    for e in &samples {
        let l = alg.compose(&one, e).unwrap();
        let r = alg.compose(e, &one).unwrap();
        ident.record(&l == e && &r == e, || show(alg, e));
    }
    laws.push(ident);

    let mut measure = LawResult::new("measure");
    for entry in alg.measure_report().entries {
        let order = frame.group(entry.x).order();
        measure.record(entry.measure == order && entry.all_bijections, || {
            format!("group {} has measure {}", frame.id(entry.x), entry.measure)
        });
    }
    laws.push(measure);

    VerifyReport { laws }
}

fn associativity(alg: &GroupRelationAlgebra, opts: VerifyOptions) -> LawResult {
    let mut law = LawResult::new("associativity");
    let atoms = alg.atoms();
    // Only chains x→y→z→w can compose to something nonempty.
    let mut by_source: Vec<Vec<AtomIndex>> = vec![Vec::new(); alg.frame().len()];
    for &a in atoms {
        by_source[a.x].push(a);
    }
    let total: usize = atoms
        .iter()
        .map(|a| {
            by_source[a.y]
                .iter()
                .map(|b| by_source[b.y].len())
                .sum::<usize>()
        })
        .sum();
    let stride = total.div_ceil(opts.max_triples.max(1)).max(1);
    law.sampled = stride > 1;
    let mut counter = 0usize;
    for &a in atoms {
        for &b in &by_source[a.y] {
            let ab = alg.compose_atoms(a, b);
            for &c in &by_source[b.y] {
                counter += 1;
                if !(counter - 1).is_multiple_of(stride) {
                    continue;
                }
                let c_el = alg.singleton(c).unwrap();
                let left = alg.compose(&ab, &c_el).unwrap();
                let bc = alg.compose_atoms(b, c);
                let a_el = alg.singleton(a).unwrap();
                let right = alg.compose(&a_el, &bc).unwrap();
                law.record(left == right, || format!("{a}, {b}, {c}"));
            }
        }
    }
    law
}
