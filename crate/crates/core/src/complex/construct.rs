//! Building admissible complexes in `Z_2^3` out of planar pieces.
//!
//! A set of four lines inside a plane (four points) is relatively admissible
//! when the transform restricted to those lines is injective on the plane's
//! points.

use super::{classify, line_endpoints, line_id, LineComplex};
use crate::error::{Error, Result};
use crate::geometry::{self, AffineFlat, GeometrySpace};
use crate::linalg;

fn require_binary_space(space: &GeometrySpace, n: u32) -> Result<()> {
    if space.q() != 2 || space.n() != n {
        return Err(Error::Unsupported(format!("planar constructions are defined in Z_2^{n}")));
    }
    Ok(())
}

fn require_plane(plane: &AffineFlat) -> Result<()> {
    if plane.dim() != 2 {
        return Err(Error::InvalidConstruction(format!("{:?} is not a plane", plane.points())));
    }
    Ok(())
}

/// Lines of `Z_2^n` lying inside the flat, ascending.
fn lines_inside(space: &GeometrySpace, flat: &AffineFlat) -> Vec<usize> {
    let pts = flat.points();
    let count = space.point_count();
    pts.iter()
        .enumerate()
        .flat_map(|(k, &i)| pts[k + 1..].iter().map(move |&j| line_id(count, i, j)))
        .collect()
}

pub fn relatively_admissible(space: &GeometrySpace, plane: &AffineFlat, lines: &[usize]) -> Result<bool> {
    if space.q() != 2 {
        return Err(Error::Unsupported("relative admissibility is defined over Z_2".into()));
    }
    require_plane(plane)?;
    let count = space.point_count();
    let pts = plane.points();
    if lines.len() != pts.len() {
        return Err(Error::WrongCardinality { expected: pts.len(), found: lines.len() });
    }
    let mut entries = vec![0i64; pts.len() * pts.len()];
    for (row, &l) in lines.iter().enumerate() {
        if l >= super::line_count(count) {
            return Err(Error::IndexOutOfRange { index: l, size: super::line_count(count) });
        }
        let (i, j) = line_endpoints(count, l);
        for p in [i, j] {
            let col = pts.binary_search(&p).map_err(|_| {
                Error::InvalidConstruction(format!("line {l} = ({i}, {j}) leaves the plane {pts:?}"))
            })?;
            entries[row * pts.len() + col] = 1;
        }
    }
    Ok(linalg::integer_rank(&entries, pts.len(), pts.len()) == pts.len())
}

/// Every relatively admissible four-line set in the plane.
pub fn relatively_admissible_sets(space: &GeometrySpace, plane: &AffineFlat) -> Result<Vec<Vec<usize>>> {
    require_plane(plane)?;
    let inside = lines_inside(space, plane);
    let mut out = Vec::new();
    for skip_a in 0..inside.len() {
        for skip_b in skip_a + 1..inside.len() {
            let set: Vec<usize> = (0..inside.len()).filter(|&k| k != skip_a && k != skip_b).map(|k| inside[k]).collect();
            if relatively_admissible(space, plane, &set)? {
                out.push(set);
            }
        }
    }
    out.sort();
    Ok(out)
}

fn assert_admissible(complex: LineComplex) -> Result<LineComplex> {
    if !classify(&complex).admissible() {
        return Err(Error::OracleDisagreement(format!(
            "construction produced an inadmissible complex {:?}",
            complex.pairs()
        )));
    }
    Ok(complex)
}

/// Union of relatively admissible sets on two parallel planes.
pub fn construct_spread_union(
    space: &GeometrySpace,
    planes: [&AffineFlat; 2],
    cores: [&[usize]; 2],
) -> Result<LineComplex> {
    require_binary_space(space, 3)?;
    planes.iter().try_for_each(|p| require_plane(p))?;
    if planes[0] == planes[1] || !planes[0].is_parallel(space, planes[1]) {
        return Err(Error::InvalidConstruction("the two planes must be distinct and parallel".into()));
    }
    for (plane, core) in planes.iter().zip(cores) {
        if !relatively_admissible(space, plane, core)? {
            return Err(Error::InvalidConstruction(format!("{core:?} is not relatively admissible")));
        }
    }
    assert_admissible(LineComplex::new(*space, cores.concat())?)
}

/// The four lines `{p, p + direction}` for `p` in the plane.
pub fn perpendicular_legs(space: &GeometrySpace, plane: &AffineFlat, direction: usize) -> Result<Vec<usize>> {
    require_binary_space(space, 3)?;
    require_plane(plane)?;
    let count = space.point_count();
    if direction == 0 || direction >= count || plane.contains(plane.points()[0] ^ direction) {
        return Err(Error::InvalidConstruction(format!("direction {direction} is not transverse to the plane")));
    }
    let mut legs: Vec<usize> = plane
        .points()
        .iter()
        .map(|&p| {
            let q = p ^ direction;
            line_id(count, p.min(q), p.max(q))
        })
        .collect();
    legs.sort_unstable();
    Ok(legs)
}

/// The complex made of `core` and `legs` with no further checks.
pub fn legs_union(space: &GeometrySpace, core: &[usize], legs: &[usize]) -> Result<LineComplex> {
    LineComplex::new(*space, [core, legs].concat())
}

/// A relatively admissible core in `plane` plus four parallel legs leaving it.
pub fn construct_legs(
    space: &GeometrySpace,
    plane: &AffineFlat,
    core: &[usize],
    legs: &[usize],
) -> Result<LineComplex> {
    require_binary_space(space, 3)?;
    if !relatively_admissible(space, plane, core)? {
        return Err(Error::InvalidConstruction(format!("{core:?} is not relatively admissible")));
    }
    let count = space.point_count();
    if legs.len() != 4 || legs.iter().any(|&l| l >= super::line_count(count)) {
        return Err(Error::InvalidConstruction("expected four legs".into()));
    }
    let ends: Vec<(usize, usize)> = legs.iter().map(|&l| line_endpoints(count, l)).collect();
    let direction = ends[0].0 ^ ends[0].1;
    let mut feet: Vec<usize> = Vec::new();
    for &(i, j) in &ends {
        if i ^ j != direction || plane.contains(i) == plane.contains(j) {
            return Err(Error::InvalidConstruction(format!("({i}, {j}) is not a perpendicular leg")));
        }
        feet.push(if plane.contains(i) { i } else { j });
    }
    feet.sort_unstable();
    if feet != plane.points() {
        return Err(Error::InvalidConstruction("legs must start at the four plane points".into()));
    }
    assert_admissible(legs_union(space, core, legs)?)
}

/// Whether some plane holds four of the complex's lines forming a
/// relatively admissible set.
pub fn has_planar_core(complex: &LineComplex) -> Result<bool> {
    let space = complex.space();
    require_binary_space(space, 3)?;
    for plane in geometry::enumerate_hyperplanes(space)? {
        let inside: Vec<usize> = lines_inside(space, &plane)
            .into_iter()
            .filter(|l| complex.line_ids().binary_search(l).is_ok())
            .collect();
        if inside.len() < 4 {
            continue;
        }
        let k = inside.len();
        for mask in 0u32..(1 << k) {
            if mask.count_ones() != 4 {
                continue;
            }
            let subset: Vec<usize> = (0..k).filter(|&b| mask & (1 << b) != 0).map(|b| inside[b]).collect();
            if relatively_admissible(space, &plane, &subset)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
