//! Radon and dual Radon transforms of a finite incidence geometry, the Bolker
//! condition, and closed-form inversion through the normal operator.
//!
//! A geometry is a point set `0..x_count`, a block set `0..y_count` and an
//! incidence relation between them. `F_y` is the set of points on block `y`
//! and `G_x` the set of blocks through point `x`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::data::{DataVector, Role};
use crate::error::{Error, Result};
use crate::geometry::{self, AffineFlat, GeometrySpace};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGeometry {
    x_count: usize,
    blocks: Vec<Vec<usize>>,
    through: Vec<Vec<usize>>,
}

impl IncidenceGeometry {
    /// Builds a geometry from `(point, block)` incidence pairs.
    pub fn new(
        x_count: usize,
        y_count: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut blocks = vec![Vec::new(); y_count];
        for (x, y) in pairs {
            if x >= x_count {
                return Err(Error::IndexOutOfRange { index: x, size: x_count });
            }
            if y >= y_count {
                return Err(Error::IndexOutOfRange { index: y, size: y_count });
            }
            if !seen.insert((x, y)) {
                return Err(Error::InvalidGeometry(format!("duplicate incidence ({x}, {y})")));
            }
            blocks[y].push(x);
        }
        Ok(Self::from_sorted_blocks(x_count, blocks))
    }

    /// Builds a geometry whose block `y` is the point set `blocks[y]`.
    pub fn from_blocks(x_count: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let y_count = blocks.len();
        let pairs: Vec<(usize, usize)> = blocks
            .iter()
            .enumerate()
            .flat_map(|(y, pts)| pts.iter().map(move |&x| (x, y)))
            .collect();
        Self::new(x_count, y_count, pairs)
    }

    fn from_sorted_blocks(x_count: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        let mut through = vec![Vec::new(); x_count];
        for (y, pts) in blocks.iter_mut().enumerate() {
            pts.sort_unstable();
            for &x in pts.iter() {
                through[x].push(y);
            }
        }
        Self { x_count, blocks, through }
    }

    pub fn from_flats(space: &GeometrySpace, flats: &[AffineFlat]) -> Self {
        let blocks = flats.iter().map(|f| f.points().to_vec()).collect();
        Self::from_sorted_blocks(space.point_count(), blocks)
    }

    pub fn lines(space: &GeometrySpace) -> Self {
        Self::from_flats(space, &geometry::enumerate_lines(space))
    }

    pub fn hyperplanes(space: &GeometrySpace) -> Result<Self> {
        Ok(Self::from_flats(space, &geometry::enumerate_hyperplanes(space)?))
    }

    /// The `m`-gon: `m` vertices, block `i` joins vertex `i` to vertex `i + 1 mod m`.
    pub fn polygon(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!("a polygon needs at least 3 sides, got {m}")));
        }
        Ok(Self::from_sorted_blocks(m, (0..m).map(|i| vec![i, (i + 1) % m]).collect()))
    }

    /// The sub-geometry keeping only the listed blocks, in the given order.
    pub fn restrict(&self, block_ids: &[usize]) -> Result<Self> {
        let blocks = block_ids
            .iter()
            .map(|&y| {
                self.blocks
                    .get(y)
                    .cloned()
                    .ok_or(Error::IndexOutOfRange { index: y, size: self.blocks.len() })
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_sorted_blocks(self.x_count, blocks))
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn y_count(&self) -> usize {
        self.blocks.len()
    }

    /// `F_y`: the points of block `y`.
    pub fn points_of(&self, y: usize) -> &[usize] {
        &self.blocks[y]
    }

    /// `G_x`: the blocks through point `x`.
    pub fn blocks_through(&self, x: usize) -> &[usize] {
        &self.through[x]
    }

    pub fn incidences(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.blocks.iter().enumerate().flat_map(|(y, pts)| pts.iter().map(move |&x| (x, y)))
    }
}

/// The 0/1 matrix with `entry(y, x) = 1` iff `x` lies on `y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u8>>,
}

impl IncidenceMatrix {
    pub fn get(&self, y: usize, x: usize) -> u8 {
        self.entries[y][x]
    }

    /// One row per line, `0`/`1` separated by single spaces, newline-terminated.
    pub fn dump(&self) -> String {
        let mut out = String::with_capacity(self.rows * (2 * self.cols + 1));
        for row in &self.entries {
            let cells: Vec<&str> = row.iter().map(|&v| if v == 1 { "1" } else { "0" }).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_dump(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let row = line
                .split(' ')
                .map(|c| match c {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    other => Err(Error::Parse { line: i + 1, message: format!("bad entry `{other}`") }),
                })
                .collect::<Result<Vec<u8>>>()?;
            entries.push(row);
        }
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(i) = entries.iter().position(|r| r.len() != cols) {
            return Err(Error::Parse { line: i + 1, message: "ragged row".into() });
        }
        Ok(Self { rows: entries.len(), cols, entries })
    }

    pub fn to_rational(&self) -> linalg::Matrix {
        linalg::from_integers(&self.entries)
    }
}

pub fn radon_matrix(g: &IncidenceGeometry) -> IncidenceMatrix {
    let entries = g
        .blocks
        .iter()
        .map(|pts| {
            let mut row = vec![0u8; g.x_count];
            pts.iter().for_each(|&x| row[x] = 1);
            row
        })
        .collect();
    IncidenceMatrix { rows: g.y_count(), cols: g.x_count, entries }
}

/// `(Rf)(y) = Σ_{x ∈ F_y} f(x)`.
pub fn radon_apply(g: &IncidenceGeometry, f: &DataVector) -> Result<DataVector> {
    f.expect(Role::Point, g.x_count)?;
    let values = g.blocks.iter().map(|pts| pts.iter().map(|&x| &f.values[x]).sum()).collect();
    Ok(DataVector::new(Role::Block, values))
}

/// `(R^t h)(x) = Σ_{y ∈ G_x} h(y)`.
pub fn dual_apply(g: &IncidenceGeometry, h: &DataVector) -> Result<DataVector> {
    h.expect(Role::Block, g.y_count())?;
    let values = g.through.iter().map(|ys| ys.iter().map(|&y| &h.values[y]).sum()).collect();
    Ok(DataVector::new(Role::Point, values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BolkerReport {
    /// Common value of `|G_x|`, if uniform.
    pub alpha: Option<usize>,
    /// Common value of `|G_x1 ∩ G_x2|` over unordered pairs, if uniform.
    pub beta: Option<usize>,
    pub holds: bool,
}

fn uniform(mut values: impl Iterator<Item = usize>) -> Option<usize> {
    let first = values.next()?;
    values.all(|v| v == first).then_some(first)
}

fn common_blocks(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

pub fn bolker_check(g: &IncidenceGeometry) -> Result<BolkerReport> {
    let n = g.x_count;
    if n < 2 {
        return Err(Error::InvalidArgument("the Bolker condition needs at least two points".into()));
    }
    let alpha = uniform(g.through.iter().map(Vec::len));
    let beta = uniform(
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| common_blocks(&g.through[a], &g.through[b])),
    );
    let holds = matches!((alpha, beta), (Some(a), Some(b)) if a != 0 && a != b);
    Ok(BolkerReport { alpha, beta, holds })
}

/// The matrix of `R^t R`: entry `(x1, x2) = |G_x1 ∩ G_x2|`.
pub fn normal_matrix(g: &IncidenceGeometry) -> Vec<Vec<i64>> {
    (0..g.x_count)
        .map(|a| (0..g.x_count).map(|b| common_blocks(&g.through[a], &g.through[b]) as i64).collect())
        .collect()
}

/// `a I + b 1` on an `n`-point set, where `1` is the all-ones matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarPlusOnes {
    #[serde(with = "crate::data::rational_string")]
    pub identity: BigRational,
    #[serde(with = "crate::data::rational_string")]
    pub ones: BigRational,
    pub n: usize,
}

impl ScalarPlusOnes {
    /// `(aI + b1)(cI + d1) = ac I + (ad + bc + n bd) 1`.
    pub fn compose(&self, other: &ScalarPlusOnes) -> ScalarPlusOnes {
        let (a, b, c, d) = (&self.identity, &self.ones, &other.identity, &other.ones);
        let n = BigRational::from_integer(BigInt::from(self.n));
        ScalarPlusOnes { identity: a * c, ones: a * d + b * c + n * b * d, n: self.n }
    }

    /// Solves `ac = 1`, `ad + bc + n bd = 0`.
    pub fn inverse(&self) -> Result<ScalarPlusOnes> {
        let n = BigRational::from_integer(BigInt::from(self.n));
        let a = &self.identity;
        let b = &self.ones;
        let pivot = a + &n * b;
        if a.is_zero() || pivot.is_zero() {
            return Err(Error::SingularOperator);
        }
        Ok(ScalarPlusOnes { identity: a.recip(), ones: -b / (a * pivot), n: self.n })
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        let total: BigRational = v.iter().sum();
        let shift = &self.ones * total;
        v.iter().map(|x| &self.identity * x + &shift).collect()
    }
}

/// The normal operator `(α − β) I + β 1` of a geometry satisfying Bolker.
pub fn normal_operator(g: &IncidenceGeometry) -> Result<ScalarPlusOnes> {
    let report = bolker_check(g)?;
    match report {
        BolkerReport { alpha: Some(a), beta: Some(b), holds: true } => {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            Ok(ScalarPlusOnes {
                identity: BigRational::from_integer(&a - &b),
                ones: BigRational::from_integer(b),
                n: g.x_count,
            })
        }
        _ => Err(Error::BolkerFailure(format!("alpha = {:?}, beta = {:?}", report.alpha, report.beta))),
    }
}

/// Recovers `f` from `Rf` as `((α − β) I + β 1)^{-1} R^t (Rf)`.
pub fn bolker_invert(g: &IncidenceGeometry, data: &DataVector) -> Result<DataVector> {
    let inverse = normal_operator(g)?.inverse()?;
    let back = dual_apply(g, data)?;
    Ok(DataVector::new(Role::Point, inverse.apply(&back.values)))
}

/// Rank over the rationals by exact elimination.
pub fn exact_rank(m: &IncidenceMatrix) -> usize {
    linalg::rank(&m.to_rational())
}

pub fn is_injective(g: &IncidenceGeometry) -> bool {
    exact_rank(&radon_matrix(g)) == g.x_count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::int;
    use num_traits::One;

    fn z2(n: u32) -> GeometrySpace {
        GeometrySpace::new(2, n).unwrap()
    }

    #[test]
    fn polygon_matrices_match_circulants() {
        let tri = radon_matrix(&IncidenceGeometry::polygon(3).unwrap());
        assert_eq!(tri.dump(), "1 1 0\n0 1 1\n1 0 1\n");
        let pent = radon_matrix(&IncidenceGeometry::polygon(5).unwrap());
        assert_eq!(
            pent.dump(),
            "1 1 0 0 0\n0 1 1 0 0\n0 0 1 1 0\n0 0 0 1 1\n1 0 0 0 1\n"
        );
        assert!(IncidenceGeometry::polygon(2).is_err());
    }

    #[test]
    fn single_block_geometry() {
        let g = IncidenceGeometry::new(1, 1, [(0, 0)]).unwrap();
        assert_eq!(radon_matrix(&g).entries, vec![vec![1]]);
        assert!(IncidenceGeometry::new(1, 1, [(0, 0), (0, 0)]).is_err());
        assert!(IncidenceGeometry::new(1, 1, [(1, 0)]).is_err());
    }

    #[test]
    fn line_matrix_weights() {
        let m = radon_matrix(&IncidenceGeometry::lines(&z2(3)));
        assert_eq!((m.rows, m.cols), (28, 8));
        assert!(m.entries.iter().all(|r| r.iter().map(|&v| v as usize).sum::<usize>() == 2));
        for x in 0..8 {
            assert_eq!(m.entries.iter().filter(|r| r[x] == 1).count(), 7);
        }
        assert_eq!(IncidenceMatrix::parse_dump(&m.dump()).unwrap(), m);
    }

    #[test]
    fn apply_examples() {
        let g = IncidenceGeometry::lines(&z2(3));
        let ones = DataVector::from_integers(Role::Point, &[1; 8]);
        assert!(radon_apply(&g, &ones).unwrap().values.iter().all(|v| *v == int(2)));

        let delta = DataVector::delta(Role::Point, 8, 0);
        let rf = radon_apply(&g, &delta).unwrap();
        for y in 0..28 {
            let expected = if g.points_of(y).contains(&0) { 1 } else { 0 };
            assert_eq!(rf.values[y], int(expected));
        }

        let (p, q) = (2, 5);
        let mut dipole = DataVector::zeros(Role::Point, 8);
        dipole.values[p] = int(1);
        dipole.values[q] = int(-1);
        let rf = radon_apply(&g, &dipole).unwrap();
        let nonzero = rf.values.iter().filter(|v| !v.is_zero()).count();
        assert_eq!(nonzero, 12);
        let pq = (0..28).find(|&y| g.points_of(y) == [p, q]).unwrap();
        assert!(rf.values[pq].is_zero());

        let h = DataVector::from_integers(Role::Block, &[1; 28]);
        assert!(dual_apply(&g, &h).unwrap().values.iter().all(|v| *v == int(7)));
        let line = DataVector::delta(Role::Block, 28, 9);
        let back = dual_apply(&g, &line).unwrap();
        let support: Vec<usize> = (0..8).filter(|&x| back.values[x].is_one()).collect();
        assert_eq!(support, g.points_of(9));

        assert!(radon_apply(&g, &h).is_err());
        assert!(dual_apply(&g, &ones).is_err());
    }

    #[test]
    fn dual_is_transpose() {
        let g = IncidenceGeometry::hyperplanes(&GeometrySpace::new(3, 2).unwrap()).unwrap();
        let m = radon_matrix(&g);
        let h = DataVector::from_integers(Role::Block, &(0..12).map(|i| i * i - 5).collect::<Vec<_>>());
        let expected: Vec<BigRational> = (0..m.cols)
            .map(|x| (0..m.rows).map(|y| int(m.get(y, x) as i64) * &h.values[y]).sum())
            .collect();
        assert_eq!(dual_apply(&g, &h).unwrap().values, expected);
    }

    #[test]
    fn bolker_examples() {
        let lines = bolker_check(&IncidenceGeometry::lines(&z2(3))).unwrap();
        assert_eq!(lines, BolkerReport { alpha: Some(7), beta: Some(1), holds: true });
        let square = bolker_check(&IncidenceGeometry::polygon(4).unwrap()).unwrap();
        assert_eq!(square, BolkerReport { alpha: Some(2), beta: None, holds: false });
        let planes = bolker_check(&IncidenceGeometry::hyperplanes(&z2(3)).unwrap()).unwrap();
        assert_eq!(planes, BolkerReport { alpha: Some(7), beta: Some(3), holds: true });
        let single = IncidenceGeometry::new(1, 1, [(0, 0)]).unwrap();
        assert!(bolker_check(&single).is_err());
        // alpha == beta: every block is the whole point set
        let full = IncidenceGeometry::from_blocks(3, vec![vec![0, 1, 2]; 2]).unwrap();
        assert!(!bolker_check(&full).unwrap().holds);
    }

    #[test]
    fn normal_operator_constants() {
        let op = normal_operator(&IncidenceGeometry::lines(&z2(3))).unwrap();
        assert_eq!((op.identity.clone(), op.ones.clone()), (int(6), int(1)));
        let inv = op.inverse().unwrap();
        assert_eq!(inv.identity, BigRational::new(1.into(), 6.into()));
        assert_eq!(inv.ones, BigRational::new((-1).into(), 84.into()));
        let id = op.compose(&inv);
        assert_eq!((id.identity, id.ones), (int(1), int(0)));
    }

    #[test]
    fn singular_operator_rejected() {
        let op = ScalarPlusOnes { identity: int(3), ones: int(-1), n: 3 };
        assert_eq!(op.inverse(), Err(Error::SingularOperator));
        let err = bolker_invert(&IncidenceGeometry::polygon(4).unwrap(), &DataVector::zeros(Role::Block, 4));
        assert!(matches!(err, Err(Error::BolkerFailure(_))));
    }

    #[test]
    fn invert_delta_from_line_sums() {
        let g = IncidenceGeometry::lines(&z2(3));
        for p in 0..8 {
            let delta = DataVector::delta(Role::Point, 8, p);
            let back = bolker_invert(&g, &radon_apply(&g, &delta).unwrap()).unwrap();
            assert_eq!(back, delta);
        }
    }

    #[test]
    fn polygon_injectivity_table() {
        let rows: Vec<(usize, bool, bool)> = (3..=5)
            .map(|m| {
                let g = IncidenceGeometry::polygon(m).unwrap();
                (m, bolker_check(&g).unwrap().holds, is_injective(&g))
            })
            .collect();
        assert_eq!(rows, vec![(3, true, true), (4, false, false), (5, false, true)]);
        assert_eq!(exact_rank(&radon_matrix(&IncidenceGeometry::polygon(4).unwrap())), 3);
    }

    #[test]
    fn binary_line_transforms_are_injective() {
        for n in 2..=4 {
            assert!(is_injective(&IncidenceGeometry::lines(&z2(n))), "n = {n}");
        }
        // a single line through both points of F_2 cannot separate them
        assert!(!is_injective(&IncidenceGeometry::lines(&z2(1))));
    }
}
