//! Line complexes in `Z_2^n`.
//!
//! Over the two-element field every line has exactly two points, so the lines
//! of `Z_2^n` are the unordered point pairs and a complex (a set of `2^n`
//! lines) is a graph with as many edges as vertices. Line ids follow the
//! canonical line order, which for `q = 2` is lexicographic on `(i, j)`,
//! `i < j`.

mod admissibility;
mod construct;
pub mod graph;
mod sample;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::GeometrySpace;

pub use admissibility::{
    classify, kernel_witness, obstruction_scan, rank_oracle_admissible, reconstruct, restricted_apply,
    AdmissibilityReport, ObstructionFlags,
};
pub use construct::{
    construct_legs, construct_spread_union, has_planar_core, legs_union, perpendicular_legs,
    relatively_admissible, relatively_admissible_sets,
};
pub use graph::{ComplexGraph, Component, ComponentKind};
pub use sample::{sample_admissibility_rate, SampleEstimate};

/// Number of lines in `Z_2^n` for a point count of `points`.
pub fn line_count(points: usize) -> usize {
    points * (points.saturating_sub(1)) / 2
}

/// Id of the line through points `i < j` among `points` points.
pub fn line_id(points: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < points);
    i * (2 * points - i - 1) / 2 + (j - i - 1)
}

/// The two points of line `id`, ascending.
pub fn line_endpoints(points: usize, id: usize) -> (usize, usize) {
    let start = |i: usize| i * (2 * points - i - 1) / 2;
    // largest i with start(i) <= id
    let (mut lo, mut hi) = (0, points - 1);
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if start(mid) <= id {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, lo + 1 + id - start(lo))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineComplex {
    space: GeometrySpace,
    line_ids: Vec<usize>,
}

impl LineComplex {
    pub fn new(space: GeometrySpace, mut line_ids: Vec<usize>) -> Result<Self> {
        if space.q() != 2 {
            return Err(Error::Unsupported(format!(
                "line complexes are only modelled over Z_2, got q = {}",
                space.q()
            )));
        }
        let points = space.point_count();
        let total = line_count(points);
        line_ids.sort_unstable();
        line_ids.dedup();
        if line_ids.len() != points {
            return Err(Error::WrongCardinality { expected: points, found: line_ids.len() });
        }
        if let Some(&bad) = line_ids.iter().find(|&&l| l >= total) {
            return Err(Error::IndexOutOfRange { index: bad, size: total });
        }
        Ok(Self { space, line_ids })
    }

    /// Builds a complex from point pairs in any order or orientation.
    pub fn from_pairs(space: GeometrySpace, pairs: &[(usize, usize)]) -> Result<Self> {
        let points = space.point_count();
        let ids = pairs
            .iter()
            .map(|&(a, b)| {
                if a == b || a >= points || b >= points {
                    return Err(Error::InvalidArgument(format!("({a}, {b}) is not a line of Z_2^{}", space.n())));
                }
                Ok(line_id(points, a.min(b), a.max(b)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut dedup = ids.clone();
        dedup.sort_unstable();
        dedup.dedup();
        if dedup.len() != ids.len() {
            return Err(Error::InvalidArgument("repeated line".into()));
        }
        Self::new(space, ids)
    }

    pub fn space(&self) -> &GeometrySpace {
        &self.space
    }

    pub fn line_ids(&self) -> &[usize] {
        &self.line_ids
    }

    pub fn point_count(&self) -> usize {
        self.space.point_count()
    }

    /// The complex's lines as point pairs, in complex order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let points = self.point_count();
        self.line_ids.iter().map(|&l| line_endpoints(points, l)).collect()
    }

    pub fn graph(&self) -> ComplexGraph {
        ComplexGraph::new(self.point_count(), self.pairs())
    }

    /// Header `q n`, then one `i j` line per member, sorted.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{} {}\n", self.space.q(), self.space.n());
        for (i, j) in self.pairs() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |line: usize, body: &str| -> Result<(usize, usize)> {
            let fields: Vec<&str> = body.split_whitespace().collect();
            let bad = || Error::Parse { line, message: format!("expected two integers, got `{body}`") };
            if fields.len() != 2 {
                return Err(bad());
            }
            Ok((fields[0].parse().map_err(|_| bad())?, fields[1].parse().map_err(|_| bad())?))
        };
        let (hline, header) = rows.next().ok_or(Error::Parse { line: 1, message: "missing `q n` header".into() })?;
        let (q, n) = parse_pair(hline, header)?;
        let space = GeometrySpace::new(q as u32, n as u32)?;
        let mut pairs = Vec::new();
        let mut last: Option<(usize, usize)> = None;
        for (line, body) in rows {
            let (i, j) = parse_pair(line, body)?;
            if i >= j {
                return Err(Error::Parse { line, message: format!("expected i < j, got {i} {j}") });
            }
            if j >= space.point_count() {
                return Err(Error::Parse { line, message: format!("point {j} out of range") });
            }
            if last.is_some_and(|p| p >= (i, j)) {
                return Err(Error::Parse { line, message: "lines must be sorted and distinct".into() });
            }
            last = Some((i, j));
            pairs.push((i, j));
        }
        Self::from_pairs(space, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::enumerate_lines;

    #[test]
    fn line_ids_follow_canonical_order() {
        for n in 1..=5 {
            let space = GeometrySpace::new(2, n).unwrap();
            let points = space.point_count();
            let lines = enumerate_lines(&space);
            assert_eq!(lines.len(), line_count(points));
            for (id, line) in lines.iter().enumerate() {
                let (i, j) = line_endpoints(points, id);
                assert_eq!(line.points(), [i, j]);
                assert_eq!(line_id(points, i, j), id);
            }
        }
    }

    #[test]
    fn complex_validation() {
        let space = GeometrySpace::new(2, 3).unwrap();
        assert!(LineComplex::new(space, (0..8).collect()).is_ok());
        assert!(matches!(LineComplex::new(space, (0..7).collect()), Err(Error::WrongCardinality { .. })));
        assert!(LineComplex::new(space, vec![0, 0, 1, 2, 3, 4, 5, 6]).is_err());
        assert!(LineComplex::new(space, (21..29).collect()).is_err());
        let q3 = GeometrySpace::new(3, 2).unwrap();
        assert!(matches!(LineComplex::new(q3, (0..9).collect()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn file_format_round_trip() {
        let space = GeometrySpace::new(2, 3).unwrap();
        let c = LineComplex::from_pairs(space, &[(1, 0), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)])
            .unwrap();
        let text = c.to_file_string();
        assert_eq!(text, "2 3\n0 1\n0 3\n1 2\n2 3\n4 5\n4 7\n5 6\n6 7\n");
        assert_eq!(LineComplex::parse(&text).unwrap(), c);
    }

    #[test]
    fn file_format_errors() {
        assert!(LineComplex::parse("").is_err());
        assert!(LineComplex::parse("2 3\n0 1\n").is_err());
        assert!(matches!(LineComplex::parse("2 3\n1 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(LineComplex::parse("2 3\n0 2\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(LineComplex::parse("2 3\n0 9\n"), Err(Error::Parse { .. })));
        assert!(matches!(LineComplex::parse("2 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(LineComplex::parse("4 2\n"), Err(Error::CompositeOrder(4))));
    }
}
