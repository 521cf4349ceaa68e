//! Constructors for standard frame families.
//!
//! Every builder runs the frame check on its output before returning it.

use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::frame::{Frame, IsoRecord};
use crate::group::{make_cyclic, FiniteGroup};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn assert_frame(frame: Frame) -> Frame {
    let report = frame.check_frame_full();
    assert!(
        report.passed(),
        "builder produced a non-frame: {:?}",
        report.violations
    );
    frame
}

/// One group, no isomorphisms: the atoms are the Cayley relations `R_g`.
pub fn build_complex_algebra_frame(group: &FiniteGroup) -> Frame {
    let f = Frame::new(vec![("0".into(), group.clone())], vec![vec![0]], vec![])
        .expect("single-group frame");
    assert_frame(f)
}

/// `index_count` copies of `m`; within each block the isomorphisms send the
/// copy of each coset of `n` to the copy of the same coset.
pub fn build_power_frame(
    m: &FiniteGroup,
    n: &ElementSet,
    index_count: usize,
    blocks: &[Vec<usize>],
) -> Result<Frame> {
    let cosets = m.enumerate_cosets(n)?;
    let identity: Vec<usize> = (0..cosets.count()).collect();
    let groups = (0..index_count)
        .map(|i| (i.to_string(), m.clone()))
        .collect();
    let mut isos = Vec::new();
    for b in blocks {
        let mut b = b.clone();
        b.sort_unstable();
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                isos.push(IsoRecord::new((x, m, n), (y, m, n), &identity)?);
            }
        }
    }
    let f = Frame::new(groups, blocks.to_vec(), isos)?;
    Ok(assert_frame(f))
}

/// Symmetric matrix of quotient sizes `κ_xy`; `0` marks unrelated pairs.
pub type KappaMatrix = Vec<Vec<usize>>;

/// Validates the divisor conditions on `κ` for cyclic groups of the given
/// orders, returning the blocks of the relation `κ_xy > 0`.
pub fn check_cyclic_kappa(orders: &[usize], kappa: &KappaMatrix) -> Result<Vec<Vec<usize>>> {
    let n = orders.len();
    let structure = |detail: String| Error::InvalidFrame(detail);
    if kappa.len() != n || kappa.iter().any(|r| r.len() != n) {
        return Err(structure(format!("κ matrix must be {n}×{n}")));
    }
    if let Some(x) = orders.iter().position(|&o| o == 0) {
        return Err(structure(format!("group {x} has order 0")));
    }
    let cond = |condition, detail| Error::CyclicCondition { condition, detail };
    for x in 0..n {
        for y in 0..n {
            let k = kappa[x][y];
            if k != 0 && (!orders[x].is_multiple_of(k) || !orders[y].is_multiple_of(k)) {
                let o = if !orders[x].is_multiple_of(k) {
                    orders[x]
                } else {
                    orders[y]
                };
                return Err(cond("i", format!("{k} does not divide {o}")));
            }
        }
    }
    for x in 0..n {
        if kappa[x][x] != orders[x] {
            return Err(cond(
                "ii",
                format!(
                    "κ[{x}][{x}] = {} differs from the order {}",
                    kappa[x][x], orders[x]
                ),
            ));
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if kappa[x][y] != kappa[y][x] {
                return Err(cond(
                    "iii",
                    format!(
                        "κ[{x}][{y}] = {} but κ[{y}][{x}] = {}",
                        kappa[x][y], kappa[y][x]
                    ),
                ));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if kappa[x][y] > 0 && kappa[y][z] > 0 && kappa[x][z] == 0 {
                    return Err(structure(format!(
                        "related pairs ({x},{y}) and ({y},{z}) but ({x},{z}) unrelated"
                    )));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (xy, yz, xz) = (kappa[x][y], kappa[y][z], kappa[x][z]);
                if xy == 0 || yz == 0 {
                    continue;
                }
                let (a, b, c) = (gcd(xy, yz), gcd(xy, xz), gcd(xz, yz));
                if a != b || b != c {
                    return Err(cond(
                        "iv",
                        format!("gcds {a}, {b}, {c} differ on triple ({x},{y},{z})"),
                    ));
                }
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        match blocks.iter_mut().find(|b| kappa[b[0]][x] > 0) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    Ok(blocks)
}

/// The subgroup of `Z_n` of index `k`: the multiples of `k`.
pub fn cyclic_subgroup_of_index(n: usize, k: usize) -> ElementSet {
    ElementSet::from_elements(n, (0..n).step_by(k))
}

/// Cyclic groups `Z_{n_x}` with `H_xy` the subgroup of index `κ_xy` and
/// `φ_xy` sending the generator `1` of `G_x/H_xy` to `1` of `G_y/K_xy`.
pub fn build_cyclic_frame(orders: &[usize], kappa: &KappaMatrix) -> Result<Frame> {
    let blocks = check_cyclic_kappa(orders, kappa)?;
    let groups: Vec<FiniteGroup> = orders
        .iter()
        .map(|&o| make_cyclic(o))
        .collect::<Result<_>>()?;
    let mut isos = Vec::new();
    for b in &blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                let k = kappa[x][y];
                let h = cyclic_subgroup_of_index(orders[x], k);
                let kk = cyclic_subgroup_of_index(orders[y], k);
                // canonical cosets of multiples-of-k are the residues 0..k,
                // so generator-to-generator is the identity on indices.
                let map: Vec<usize> = (0..k).collect();
                isos.push(IsoRecord::new(
                    (x, &groups[x], &h),
                    (y, &groups[y], &kk),
                    &map,
                )?);
            }
        }
    }
    let f = Frame::new(
        groups
            .into_iter()
            .enumerate()
            .map(|(i, g)| (i.to_string(), g))
            .collect(),
        blocks,
        isos,
    )?;
    let report = f.check_frame_reduced();
    assert!(
        report.passed(),
        "cyclic frame failed: {:?}",
        report.violations
    );
    Ok(assert_frame(f))
}
