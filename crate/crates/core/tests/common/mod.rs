//! Shared fixtures: random cyclic frames, small non-abelian groups and
//! deliberately broken frames.
#![allow(dead_code)]

use gra_core::builders::{
    build_cyclic_frame, check_cyclic_kappa, cyclic_subgroup_of_index, KappaMatrix,
};
use gra_core::{make_cyclic, validate_table, ElementSet, FiniteGroup, Frame, IsoRecord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn z6_z9() -> Frame {
    build_cyclic_frame(&[6, 9], &vec![vec![6, 3], vec![3, 9]]).unwrap()
}

#[derive(Clone, Debug)]
pub struct CyclicParams {
    pub orders: Vec<usize>,
    pub kappa: KappaMatrix,
}

impl CyclicParams {
    pub fn build(&self) -> Frame {
        build_cyclic_frame(&self.orders, &self.kappa).unwrap()
    }
}

/// Orders that share many divisors, so blocks get nontrivial quotients.
const FRIENDLY: [usize; 10] = [1, 2, 3, 4, 6, 8, 9, 12, 18, 24];

/// A random partition of `0..n` into blocks.
fn random_blocks<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = Vec::with_capacity(n);
    for x in 0..n {
        let next = label.iter().max().map_or(0, |m| m + 1);
        label.push(rng.gen_range(0..=next.min(x)));
    }
    let count = label.iter().max().map_or(0, |m| m + 1);
    (0..count)
        .map(|b| (0..n).filter(|&x| label[x] == b).collect())
        .filter(|b: &Vec<usize>| !b.is_empty())
        .collect()
}

/// Random orders (at most `max_order`), random blocks, and κ values drawn
/// from the common divisors inside each block; κ matrices failing the gcd
/// conditions are redrawn, falling back to κ = 1 off the diagonal.
pub fn random_cyclic_params<R: Rng>(
    rng: &mut R,
    max_groups: usize,
    max_order: usize,
) -> CyclicParams {
    let n = rng.gen_range(1..=max_groups);
    let orders: Vec<usize> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.7) {
                let friendly: Vec<usize> = FRIENDLY
                    .iter()
                    .copied()
                    .filter(|&o| o <= max_order)
                    .collect();
                *friendly.choose(rng).unwrap()
            } else {
                rng.gen_range(1..=max_order)
            }
        })
        .collect();
    let blocks = random_blocks(rng, n);
    for _ in 0..200 {
        let mut kappa = vec![vec![0; n]; n];
        for x in 0..n {
            kappa[x][x] = orders[x];
        }
        for b in &blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    let k = *divisors(gcd(orders[x], orders[y])).choose(rng).unwrap();
                    kappa[x][y] = k;
                    kappa[y][x] = k;
                }
            }
        }
        if check_cyclic_kappa(&orders, &kappa).is_ok() {
            return CyclicParams { orders, kappa };
        }
    }
    let mut kappa = vec![vec![0; n]; n];
    for b in &blocks {
        for &x in b {
            for &y in b {
                kappa[x][y] = if x == y { orders[x] } else { 1 };
            }
        }
    }
    CyclicParams { orders, kappa }
}

/// The running example plus 25 random cyclic frames (orders ≤ 24, at most
/// four groups). Every fourth frame is kept small.
pub fn criterion_frames(seed: u64) -> Vec<Frame> {
    let mut r = rng(seed);
    let mut frames = vec![z6_z9()];
    for i in 0..25 {
        let params = if i % 4 == 0 {
            random_cyclic_params(&mut r, 3, 8)
        } else {
            random_cyclic_params(&mut r, 4, 24)
        };
        frames.push(params.build());
    }
    frames
}

pub fn klein_table() -> Vec<Vec<usize>> {
    (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect()
}

/// S3 as permutations of {0,1,2}, listed so that index 0 is the identity.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                // (p∘q)(i) = q(p(i)): apply p first
                .map(|q| index([q[p[0]], q[p[1]], q[p[2]]]))
                .collect()
        })
        .collect()
}

pub fn klein() -> FiniteGroup {
    validate_table(&klein_table()).unwrap()
}

pub fn s3() -> FiniteGroup {
    validate_table(&s3_table()).unwrap()
}

/// The isomorphism `γ ↦ u·γ mod κ` between the index-`κ` subgroups of two
/// cyclic groups.
pub fn cyclic_record(
    x: usize,
    nx: usize,
    y: usize,
    ny: usize,
    kappa: usize,
    unit: usize,
) -> IsoRecord {
    let gx = make_cyclic(nx).unwrap();
    let gy = make_cyclic(ny).unwrap();
    let map: Vec<usize> = (0..kappa).map(|g| g * unit % kappa).collect();
    IsoRecord::new(
        (x, &gx, &cyclic_subgroup_of_index(nx, kappa)),
        (y, &gy, &cyclic_subgroup_of_index(ny, kappa)),
        &map,
    )
    .unwrap()
}

/// A cyclic frame built straight from records, skipping every check on κ.
/// `units[(x,y)]` multiplies the stored map for `x < y`; missing entries use 1.
pub fn raw_cyclic_frame(
    orders: &[usize],
    kappa: &KappaMatrix,
    units: &[((usize, usize), usize)],
) -> Frame {
    let n = orders.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        match blocks.iter_mut().find(|b| kappa[b[0]][x] > 0) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    let mut isos = Vec::new();
    for b in &blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                let u = units
                    .iter()
                    .find(|(p, _)| *p == (x, y))
                    .map_or(1, |&(_, u)| u);
                isos.push(cyclic_record(x, orders[x], y, orders[y], kappa[x][y], u));
            }
        }
    }
    let groups = orders
        .iter()
        .enumerate()
        .map(|(i, &o)| (i.to_string(), make_cyclic(o).unwrap()))
        .collect();
    Frame::new(groups, blocks, isos).unwrap()
}

fn units_mod(k: usize) -> Vec<usize> {
    (2..k).filter(|&u| gcd(u, k) == 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// `φ_xx` replaced by the identity on a proper quotient.
    Diagonal,
    /// `φ_yx` replaced by a map that is not the inverse of `φ_xy`.
    Reverse,
    /// A stored `φ_xy` twisted by a unit inside a three-group block.
    StoredMap,
    /// `κ` entries chosen so the gcd condition fails.
    Kappa,
}

pub const CORRUPTIONS: [Corruption; 4] = [
    Corruption::Diagonal,
    Corruption::Reverse,
    Corruption::StoredMap,
    Corruption::Kappa,
];

/// A frame broken in the given way. The caller decides what the checks
/// should say; the corruption only guarantees that some condition fails.
pub fn corrupted_frame<R: Rng>(rng: &mut R, kind: Corruption) -> Frame {
    loop {
        if let Some(f) = try_corrupt(rng, kind) {
            return f;
        }
    }
}

fn try_corrupt<R: Rng>(rng: &mut R, kind: Corruption) -> Option<Frame> {
    match kind {
        Corruption::Diagonal => {
            let params = random_cyclic_params(rng, 4, 24);
            let x = rng.gen_range(0..params.orders.len());
            let n = params.orders[x];
            let proper: Vec<usize> = divisors(n).into_iter().filter(|&d| d < n).collect();
            let &k = proper.choose(rng)?;
            let g = make_cyclic(n).unwrap();
            let h: ElementSet = cyclic_subgroup_of_index(n, k);
            let identity: Vec<usize> = (0..k).collect();
            let rec = IsoRecord::new((x, &g, &h), (x, &g, &h), &identity).unwrap();
            params.build().with_explicit_record(rec).ok()
        }
        Corruption::Reverse => {
            let params = random_cyclic_params(rng, 4, 24);
            let pairs: Vec<(usize, usize)> = (0..params.orders.len())
                .flat_map(|x| (x + 1..params.orders.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| params.kappa[x][y] >= 3)
                .collect();
            let &(x, y) = pairs.choose(rng)?;
            let k = params.kappa[x][y];
            let &u = units_mod(k).choose(rng)?;
            let rec = cyclic_record(y, params.orders[y], x, params.orders[x], k, u);
            params.build().with_explicit_record(rec).ok()
        }
        Corruption::StoredMap => {
            // three groups in one block with d = gcd of the κ's at least 3,
            // so a unit u ≢ 1 mod d breaks the commuting triangle
            let base = *[3usize, 4, 6, 8, 9, 12].choose(rng)?;
            let orders: Vec<usize> = (0..3).map(|_| base * rng.gen_range(1..=2)).collect();
            let mut kappa = vec![vec![base; 3]; 3];
            for x in 0..3 {
                kappa[x][x] = orders[x];
            }
            check_cyclic_kappa(&orders, &kappa).ok()?;
            let candidates: Vec<usize> = units_mod(base)
                .into_iter()
                .filter(|u| u % base != 1)
                .collect();
            let &u = candidates.choose(rng)?;
            let pair = *[(0, 1), (0, 2), (1, 2)].choose(rng)?;
            Some(raw_cyclic_frame(&orders, &kappa, &[(pair, u)]))
        }
        Corruption::Kappa => {
            let orders: Vec<usize> = (0..3)
                .map(|_| *[6usize, 12, 18, 24].choose(rng).unwrap())
                .collect();
            let g = orders.iter().copied().fold(0, gcd);
            let ds = divisors(g);
            let mut kappa = vec![vec![0; 3]; 3];
            for x in 0..3 {
                kappa[x][x] = orders[x];
            }
            for (x, y) in [(0, 1), (0, 2), (1, 2)] {
                let k = *ds.choose(rng).unwrap();
                kappa[x][y] = k;
                kappa[y][x] = k;
            }
            let (a, b, c) = (kappa[0][1], kappa[0][2], kappa[1][2]);
            if gcd(a, b) == gcd(a, c) && gcd(a, c) == gcd(b, c) {
                return None;
            }
            Some(raw_cyclic_frame(&orders, &kappa, &[]))
        }
    }
}
