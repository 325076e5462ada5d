//! Spread sums, range membership and admissible complexes for the hyperplane
//! transform over `F_q^n`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::data::{DataVector, Role};
use crate::error::{Error, Result};
use crate::geometry::{self, AffineFlat, GeometrySpace, Spread};
use crate::linalg;
use crate::radon::{self, IncidenceGeometry};

/// The hyperplane geometry of a space together with its spreads.
#[derive(Debug, Clone)]
pub struct HyperplaneGeometry {
    pub space: GeometrySpace,
    pub planes: Vec<AffineFlat>,
    pub spreads: Vec<Spread>,
    /// `spread_of[h]` is the spread containing hyperplane `h`.
    pub spread_of: Vec<usize>,
    pub incidence: IncidenceGeometry,
}

impl HyperplaneGeometry {
    pub fn new(space: GeometrySpace) -> Result<Self> {
        let planes = geometry::enumerate_hyperplanes(&space)?;
        let spreads = geometry::hyperplane_spreads(&space)?;
        let mut spread_of = vec![0; planes.len()];
        for (s, spread) in spreads.iter().enumerate() {
            spread.flats.iter().for_each(|&h| spread_of[h] = s);
        }
        let incidence = IncidenceGeometry::from_flats(&space, &planes);
        Ok(Self { space, planes, spreads, spread_of, incidence })
    }

    pub fn plane_count(&self) -> usize {
        self.planes.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CavalieriReport {
    pub holds: bool,
    #[serde(with = "crate::data::rational_vec")]
    pub spread_sums: Vec<BigRational>,
}

pub fn cavalieri_check(geo: &HyperplaneGeometry, g: &DataVector) -> Result<CavalieriReport> {
    g.expect(Role::Block, geo.plane_count())?;
    let spread_sums: Vec<BigRational> = geo
        .spreads
        .iter()
        .map(|s| s.flats.iter().map(|&h| &g.values[h]).sum())
        .collect();
    let holds = spread_sums.windows(2).all(|w| w[0] == w[1]);
    Ok(CavalieriReport { holds, spread_sums })
}

/// Decides whether `g = Rf` for some `f` by an exact linear solve.
pub fn solvable(geo: &HyperplaneGeometry, g: &DataVector) -> Result<bool> {
    g.expect(Role::Block, geo.plane_count())?;
    let m = radon::radon_matrix(&geo.incidence).to_rational();
    Ok(linalg::solve(&m, &g.values).is_some())
}

/// Range membership via the Cavalieri conditions, cross-checked against
/// exact solvability. A disagreement between the two is an error.
pub fn range_membership(geo: &HyperplaneGeometry, g: &DataVector) -> Result<bool> {
    let by_spreads = cavalieri_check(geo, g)?.holds;
    let by_solve = solvable(geo, g)?;
    if by_spreads != by_solve {
        return Err(Error::OracleDisagreement(format!(
            "Cavalieri conditions say {by_spreads}, linear solve says {by_solve}"
        )));
    }
    Ok(by_spreads)
}

/// Rows `sum over spread i - sum over spread 0`, one per non-first spread.
pub fn cavalieri_constraints(geo: &HyperplaneGeometry) -> linalg::Matrix {
    let indicator = |s: &Spread| {
        let mut row = vec![0i64; geo.plane_count()];
        s.flats.iter().for_each(|&h| row[h] = 1);
        row
    };
    let first = indicator(&geo.spreads[0]);
    let rows: Vec<Vec<i64>> = geo.spreads[1..]
        .iter()
        .map(|s| indicator(s).iter().zip(&first).map(|(a, b)| a - b).collect())
        .collect();
    linalg::from_integers(&rows)
}

/// Dimension of the space of hyperplane functions satisfying every
/// Cavalieri condition.
pub fn cavalieri_subspace_dim(geo: &HyperplaneGeometry) -> usize {
    geo.plane_count() - linalg::rank(&cavalieri_constraints(geo))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternReport {
    pub admissible: bool,
    /// Number of members of each spread missing from the complex.
    pub omitted_per_spread: Vec<usize>,
    /// The spreads contained entirely in the complex.
    pub full_spreads: Vec<usize>,
}

fn check_complex(geo: &HyperplaneGeometry, complex: &[usize]) -> Result<Vec<usize>> {
    let expected = geo.space.point_count();
    let mut ids = complex.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() != complex.len() || ids.len() != expected {
        return Err(Error::WrongCardinality { expected, found: ids.len() });
    }
    if let Some(&bad) = ids.iter().find(|&&h| h >= geo.plane_count()) {
        return Err(Error::IndexOutOfRange { index: bad, size: geo.plane_count() });
    }
    Ok(ids)
}

/// Exactly one spread lies entirely in the complex, every other spread is
/// missing exactly one member. For `q > 2` this reading is experimental; the
/// rank test is authoritative there.
pub fn admissible_pattern(geo: &HyperplaneGeometry, complex: &[usize]) -> Result<PatternReport> {
    let ids = check_complex(geo, complex)?;
    let mut present = vec![0usize; geo.spreads.len()];
    ids.iter().for_each(|&h| present[geo.spread_of[h]] += 1);
    let omitted_per_spread: Vec<usize> =
        geo.spreads.iter().zip(&present).map(|(s, &p)| s.flats.len() - p).collect();
    let full_spreads: Vec<usize> = (0..geo.spreads.len()).filter(|&s| omitted_per_spread[s] == 0).collect();
    let admissible =
        full_spreads.len() == 1 && omitted_per_spread.iter().filter(|&&o| o != 0).all(|&o| o == 1);
    Ok(PatternReport { admissible, omitted_per_spread, full_spreads })
}

pub fn admissible_rank(geo: &HyperplaneGeometry, complex: &[usize]) -> Result<bool> {
    let ids = check_complex(geo, complex)?;
    let points = geo.space.point_count();
    let entries: Vec<i64> = ids
        .iter()
        .flat_map(|&h| {
            let mut row = vec![0i64; points];
            geo.planes[h].points().iter().for_each(|&x| row[x] = 1);
            row
        })
        .collect();
    Ok(linalg::integer_rank(&entries, ids.len(), points) == points)
}

/// `+1` on `h1`, `-1` on the parallel hyperplane `h2`, zero elsewhere.
/// Every other hyperplane sums it to zero.
pub fn capacitor_witness(geo: &HyperplaneGeometry, h1: usize, h2: usize) -> Result<DataVector> {
    let count = geo.plane_count();
    for h in [h1, h2] {
        if h >= count {
            return Err(Error::IndexOutOfRange { index: h, size: count });
        }
    }
    if h1 == h2 || geo.spread_of[h1] != geo.spread_of[h2] {
        return Err(Error::NotParallel(h1, h2));
    }
    let mut f = DataVector::zeros(Role::Point, geo.space.point_count());
    geo.planes[h1].points().iter().for_each(|&x| f.values[x] = crate::data::int(1));
    geo.planes[h2].points().iter().for_each(|&x| f.values[x] = crate::data::int(-1));
    Ok(f)
}
