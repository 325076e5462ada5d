//! Affine geometry over a prime field `F_q`.
//!
//! Points of `F_q^n` are addressed by a single index: the coordinates read as
//! a little-endian base-`q` number, so `index = c[0] + c[1]*q + ... `. Every
//! enumeration, matrix ordering and file format in the crate uses this
//! convention.
//!
//! Flats are stored extensionally as their sorted point indices. Two flats are
//! equal exactly when their point lists are equal, and the canonical order of
//! any list of flats is the lexicographic order of those lists.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of points we are willing to enumerate extensionally.
pub const MAX_POINTS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeometrySpace {
    q: u32,
    n: u32,
    point_count: usize,
}

impl GeometrySpace {
    pub fn new(q: u32, n: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::CompositeOrder(q));
        }
        if n == 0 {
            return Err(Error::InvalidGeometry("dimension must be at least 1".into()));
        }
        let point_count = (q as usize)
            .checked_pow(n)
            .filter(|&c| c <= MAX_POINTS)
            .ok_or_else(|| {
                Error::InvalidGeometry(format!("{q}^{n} points exceeds the limit of {MAX_POINTS}"))
            })?;
        Ok(Self { q, n, point_count })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn point(&self, index: usize) -> Result<Point> {
        if index >= self.point_count {
            return Err(Error::IndexOutOfRange { index, size: self.point_count });
        }
        Ok(Point { coords: self.coords(index) })
    }

    pub fn index(&self, point: &Point) -> Result<usize> {
        if point.coords.len() != self.n as usize || point.coords.iter().any(|&c| c >= self.q) {
            return Err(Error::InvalidArgument(format!(
                "point {:?} does not belong to F_{}^{}",
                point.coords, self.q, self.n
            )));
        }
        Ok(self.index_of(&point.coords))
    }

    pub(crate) fn coords(&self, mut index: usize) -> Vec<u32> {
        let q = self.q as usize;
        (0..self.n)
            .map(|_| {
                let c = (index % q) as u32;
                index /= q;
                c
            })
            .collect()
    }

    pub(crate) fn index_of(&self, coords: &[u32]) -> usize {
        coords.iter().rev().fold(0usize, |acc, &c| acc * self.q as usize + c as usize)
    }

    /// `x + t (y - x)` on point indices.
    pub(crate) fn affine_combination(&self, x: usize, y: usize, t: u32) -> usize {
        let q = self.q;
        let xs = self.coords(x);
        let ys = self.coords(y);
        let out: Vec<u32> = xs
            .iter()
            .zip(&ys)
            .map(|(&a, &b)| (a + t * ((b + q - a) % q)) % q)
            .collect();
        self.index_of(&out)
    }

    /// `x + y - z`, the translate of `x` by the vector `y - z`.
    pub(crate) fn translate(&self, x: usize, y: usize, z: usize) -> usize {
        self.shift(x, y, z, 1)
    }

    /// `x + t (y - z)`.
    pub(crate) fn shift(&self, x: usize, y: usize, z: usize, t: u32) -> usize {
        let q = self.q;
        let out: Vec<u32> = self
            .coords(x)
            .iter()
            .zip(self.coords(y))
            .zip(self.coords(z))
            .map(|((&a, b), c)| (a + t * ((b + q - c) % q)) % q)
            .collect();
        self.index_of(&out)
    }
}

pub fn is_prime(q: u32) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub coords: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineFlat {
    dim: u32,
    points: Vec<usize>,
}

impl AffineFlat {
    /// Builds a flat from its point set, checking size `q^k` and closure
    /// under `x + t (y - z)`.
    pub fn new(space: &GeometrySpace, mut points: Vec<usize>) -> Result<Self> {
        points.sort_unstable();
        points.dedup();
        if let Some(&bad) = points.iter().find(|&&p| p >= space.point_count()) {
            return Err(Error::IndexOutOfRange { index: bad, size: space.point_count() });
        }
        let q = space.q() as usize;
        let mut dim = 0u32;
        let mut size = 1usize;
        while size < points.len() {
            size *= q;
            dim += 1;
        }
        if size != points.len() {
            return Err(Error::InvalidGeometry(format!(
                "{} points is not a power of {q}",
                points.len()
            )));
        }
        if !is_affinely_closed(space, &points) {
            return Err(Error::InvalidGeometry(format!("{points:?} is not an affine flat")));
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn contains(&self, index: usize) -> bool {
        self.points.binary_search(&index).is_ok()
    }

    /// True when `other` is a translate of `self` (this includes `self == other`).
    pub fn is_parallel(&self, space: &GeometrySpace, other: &AffineFlat) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let (base, target) = (self.points[0], other.points[0]);
        let mut moved: Vec<usize> =
            self.points.iter().map(|&p| space.translate(p, target, base)).collect();
        moved.sort_unstable();
        moved == other.points
    }
}

// Closure under x + t(y - x) alone is vacuous over F_2, so the translate
// of every member by every difference vector is checked instead.
fn is_affinely_closed(space: &GeometrySpace, sorted: &[usize]) -> bool {
    let Some(&base) = sorted.first() else {
        return false;
    };
    sorted.iter().all(|&x| {
        sorted.iter().all(|&y| {
            (1..space.q()).all(|t| sorted.binary_search(&space.shift(x, y, base, t)).is_ok())
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spread {
    /// Indices into the canonical hyperplane enumeration, ascending.
    pub flats: Vec<usize>,
    /// Normal direction, normalized so its first nonzero coordinate is 1.
    pub normal: Vec<u32>,
}

pub fn enumerate_points(space: &GeometrySpace) -> Vec<Point> {
    (0..space.point_count()).map(|i| Point { coords: space.coords(i) }).collect()
}

pub fn enumerate_lines(space: &GeometrySpace) -> Vec<AffineFlat> {
    let count = space.point_count();
    let mut lines = BTreeSet::new();
    for x in 0..count {
        for y in x + 1..count {
            let mut pts: Vec<usize> =
                (0..space.q()).map(|t| space.affine_combination(x, y, t)).collect();
            pts.sort_unstable();
            if pts[0] == x {
                lines.insert(pts);
            }
        }
    }
    lines.into_iter().map(|points| AffineFlat { dim: 1, points }).collect()
}

/// Nonzero vectors whose first nonzero coordinate is 1, in index order.
fn normal_directions(space: &GeometrySpace) -> Vec<Vec<u32>> {
    (1..space.point_count())
        .map(|i| space.coords(i))
        .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn level_set(space: &GeometrySpace, normal: &[u32], level: u32) -> Vec<usize> {
    let q = space.q();
    (0..space.point_count())
        .filter(|&i| {
            let dot = space.coords(i).iter().zip(normal).map(|(&a, &b)| a * b % q).sum::<u32>();
            dot % q == level
        })
        .collect()
}

pub fn enumerate_hyperplanes(space: &GeometrySpace) -> Result<Vec<AffineFlat>> {
    require_hyperplanes(space)?;
    let mut planes: Vec<AffineFlat> = normal_directions(space)
        .iter()
        .flat_map(|a| (0..space.q()).map(move |c| (a, c)))
        .map(|(a, c)| AffineFlat { dim: space.n() - 1, points: level_set(space, a, c) })
        .collect();
    planes.sort();
    Ok(planes)
}

/// One spread per normal direction, ordered by their smallest member.
pub fn hyperplane_spreads(space: &GeometrySpace) -> Result<Vec<Spread>> {
    let planes = enumerate_hyperplanes(space)?;
    let mut spreads: Vec<Spread> = normal_directions(space)
        .into_iter()
        .map(|normal| {
            let mut flats: Vec<usize> = (0..space.q())
                .map(|c| {
                    let pts = level_set(space, &normal, c);
                    planes.binary_search_by(|h| h.points.cmp(&pts)).expect("level set is a hyperplane")
                })
                .collect();
            flats.sort_unstable();
            Spread { flats, normal }
        })
        .collect();
    spreads.sort_by_key(|s| s.flats[0]);
    Ok(spreads)
}

fn require_hyperplanes(space: &GeometrySpace) -> Result<()> {
    if space.n() < 2 {
        return Err(Error::InvalidGeometry("hyperplanes need dimension at least 2".into()));
    }
    Ok(())
}

pub fn incidence(space: &GeometrySpace, point: &Point, flat: &AffineFlat) -> Result<bool> {
    Ok(flat.contains(space.index(point)?))
}

/// Exhaustively searches for every partition of the point set into
/// hyperplanes and checks each one is a parallel class.
pub fn spreads_are_parallel_classes(space: &GeometrySpace) -> Result<bool> {
    let planes = enumerate_hyperplanes(space)?;
    let spreads = hyperplane_spreads(space)?;
    let mut known: Vec<Vec<usize>> = spreads.into_iter().map(|s| s.flats).collect();
    known.sort();

    let mut found = Vec::new();
    let mut chosen = Vec::new();
    let mut covered = vec![false; space.point_count()];
    exact_covers(&planes, &mut covered, &mut chosen, &mut found);
    for cover in &mut found {
        cover.sort_unstable();
    }
    found.sort();
    Ok(found == known)
}

fn exact_covers(
    planes: &[AffineFlat],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let Some(first) = covered.iter().position(|&c| !c) else {
        found.push(chosen.clone());
        return;
    };
    for (id, plane) in planes.iter().enumerate() {
        if !plane.contains(first) || plane.points.iter().any(|&p| covered[p]) {
            continue;
        }
        plane.points.iter().for_each(|&p| covered[p] = true);
        chosen.push(id);
        exact_covers(planes, covered, chosen, found);
        chosen.pop();
        plane.points.iter().for_each(|&p| covered[p] = false);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(q: u32, n: u32) -> GeometrySpace {
        GeometrySpace::new(q, n).unwrap()
    }

    /// Brute force: every subset of the given size that is affinely closed.
    fn closed_subsets(space: &GeometrySpace, size: usize) -> usize {
        let n = space.point_count();
        let mut count = 0;
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            if is_affinely_closed(space, &subset) {
                count += 1;
            }
            let Some(i) = (0..size).rev().find(|&i| subset[i] < n - size + i) else {
                return count;
            };
            subset[i] += 1;
            for j in i + 1..size {
                subset[j] = subset[j - 1] + 1;
            }
        }
    }

    #[test]
    fn rejects_composite_and_degenerate_spaces() {
        assert_eq!(GeometrySpace::new(4, 2), Err(Error::CompositeOrder(4)));
        assert_eq!(GeometrySpace::new(1, 2), Err(Error::CompositeOrder(1)));
        assert!(GeometrySpace::new(2, 0).is_err());
        assert!(GeometrySpace::new(2, 40).is_err());
    }

    #[test]
    fn point_counts_and_round_trip() {
        assert_eq!(enumerate_points(&space(2, 3)).len(), 8);
        let line = enumerate_points(&space(2, 1));
        assert_eq!(line, vec![Point { coords: vec![0] }, Point { coords: vec![1] }]);
        let s = space(3, 2);
        let pts = enumerate_points(&s);
        assert_eq!(pts.len(), 9);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(s.index(p).unwrap(), i);
        }
        // little-endian: index 5 in F_3^2 is (2, 1)
        assert_eq!(s.point(5).unwrap().coords, vec![2, 1]);
    }

    #[test]
    fn line_counts() {
        assert_eq!(enumerate_lines(&space(2, 3)).len(), 28);
        assert_eq!(enumerate_lines(&space(2, 2)).len(), 6);
        assert_eq!(enumerate_lines(&space(3, 2)).len(), closed_subsets(&space(3, 2), 3));
        assert_eq!(enumerate_lines(&space(3, 2)).len(), 12);
    }

    #[test]
    fn binary_lines_are_point_pairs() {
        for n in 1..=5 {
            let s = space(2, n);
            let lines = enumerate_lines(&s);
            let count = s.point_count();
            assert_eq!(lines.len(), count * (count - 1) / 2);
            let pairs: Vec<Vec<usize>> = (0..count)
                .flat_map(|i| (i + 1..count).map(move |j| vec![i, j]))
                .collect();
            let got: Vec<Vec<usize>> = lines.iter().map(|l| l.points().to_vec()).collect();
            assert_eq!(got, pairs);
        }
    }

    #[test]
    fn hyperplane_counts_match_closure_search() {
        assert_eq!(enumerate_hyperplanes(&space(2, 3)).unwrap().len(), 14);
        assert_eq!(closed_subsets(&space(2, 3), 4), 14);
        assert_eq!(enumerate_hyperplanes(&space(2, 2)).unwrap(), enumerate_lines(&space(2, 2)));
        assert_eq!(enumerate_hyperplanes(&space(3, 2)).unwrap().len(), 12);
        assert_eq!(closed_subsets(&space(3, 2), 3), 12);
        assert!(enumerate_hyperplanes(&space(2, 1)).is_err());
    }

    #[test]
    fn spreads_partition_points() {
        for (q, n, count) in [(2, 3, 7), (2, 2, 3), (3, 2, 4), (2, 4, 15)] {
            let s = space(q, n);
            let planes = enumerate_hyperplanes(&s).unwrap();
            let spreads = hyperplane_spreads(&s).unwrap();
            assert_eq!(spreads.len(), count);
            let mut seen = vec![0; planes.len()];
            for spread in &spreads {
                assert_eq!(spread.flats.len(), q as usize);
                let mut pts: Vec<usize> =
                    spread.flats.iter().flat_map(|&h| planes[h].points().to_vec()).collect();
                pts.sort_unstable();
                assert_eq!(pts, (0..s.point_count()).collect::<Vec<_>>());
                spread.flats.iter().for_each(|&h| seen[h] += 1);
            }
            assert!(seen.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn every_hyperplane_partition_is_a_parallel_class() {
        for (q, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            assert!(spreads_are_parallel_classes(&space(q, n)).unwrap(), "({q},{n})");
        }
    }

    #[test]
    fn incidence_counts() {
        let s = space(2, 3);
        let lines = enumerate_lines(&s);
        let points = enumerate_points(&s);
        for p in &points {
            let through = lines.iter().filter(|l| incidence(&s, p, l).unwrap()).count();
            assert_eq!(through, 7);
        }
        for (i, a) in points.iter().enumerate() {
            for b in &points[i + 1..] {
                let both = lines
                    .iter()
                    .filter(|l| incidence(&s, a, l).unwrap() && incidence(&s, b, l).unwrap())
                    .count();
                assert_eq!(both, 1);
            }
        }
        let origin = s.point(0).unwrap();
        for plane in enumerate_hyperplanes(&s).unwrap().iter().filter(|h| h.contains(0)) {
            assert!(incidence(&s, &origin, plane).unwrap());
        }
        // double counting: 28 * 2 = 8 * 7
        assert_eq!(lines.iter().map(|l| l.points().len()).sum::<usize>(), 8 * 7);
    }

    #[test]
    fn flat_construction_validates() {
        let s = space(2, 3);
        assert!(AffineFlat::new(&s, vec![0, 1, 2, 3]).is_ok());
        assert!(AffineFlat::new(&s, vec![0, 1, 2, 4]).is_err());
        assert!(AffineFlat::new(&s, vec![0, 1, 2]).is_err());
        assert!(AffineFlat::new(&s, vec![0, 9]).is_err());
        let a = AffineFlat::new(&s, vec![0, 1, 2, 3]).unwrap();
        let b = AffineFlat::new(&s, vec![4, 5, 6, 7]).unwrap();
        let c = AffineFlat::new(&s, vec![0, 1, 4, 5]).unwrap();
        assert!(a.is_parallel(&s, &b));
        assert!(!a.is_parallel(&s, &c));
    }
}
