use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::graph::{ComplexGraph, ComponentKind};
use super::LineComplex;
use crate::data::{int, DataVector, Role};
use crate::error::{Error, Result};
use crate::linalg;

/// Which of the three obstructions a complex exhibits. Not exclusive.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObstructionFlags {
    pub omitted_point: bool,
    pub isolated_tree: bool,
    pub even_cycle: bool,
}

impl ObstructionFlags {
    pub fn admissible(&self) -> bool {
        !(self.omitted_point || self.isolated_tree || self.even_cycle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub omitted_points: Vec<usize>,
    /// Vertex sets of tree components with at least one line.
    pub isolated_tree_components: Vec<Vec<usize>>,
    pub even_cycle: Option<Vec<usize>>,
    /// A verified kernel vector, present exactly when inadmissible.
    pub witness: Option<DataVector>,
}

fn flags_of(graph: &ComplexGraph) -> ObstructionFlags {
    ObstructionFlags {
        omitted_point: graph.components.iter().any(|c| c.kind() == ComponentKind::Isolated),
        isolated_tree: graph.components.iter().any(|c| c.kind() == ComponentKind::Tree),
        even_cycle: graph.even_cycle().is_some(),
    }
}

pub fn classify(complex: &LineComplex) -> ObstructionFlags {
    flags_of(&complex.graph())
}

pub fn obstruction_scan(complex: &LineComplex) -> Result<AdmissibilityReport> {
    let graph = complex.graph();
    let omitted_points: Vec<usize> = graph
        .components
        .iter()
        .filter(|c| c.kind() == ComponentKind::Isolated)
        .map(|c| c.vertices[0])
        .collect();
    let isolated_tree_components: Vec<Vec<usize>> = graph
        .components
        .iter()
        .filter(|c| c.kind() == ComponentKind::Tree)
        .map(|c| c.vertices.clone())
        .collect();
    let even_cycle = graph.even_cycle();
    let admissible = omitted_points.is_empty() && isolated_tree_components.is_empty() && even_cycle.is_none();
    let witness = if admissible { None } else { Some(witness_for(complex, &graph)?) };
    Ok(AdmissibilityReport { admissible, omitted_points, isolated_tree_components, even_cycle, witness })
}

/// The complex's rows of the incidence matrix, row-major.
fn restricted_entries(complex: &LineComplex) -> Vec<i64> {
    let points = complex.point_count();
    let mut entries = vec![0i64; points * points];
    for (row, (i, j)) in complex.pairs().into_iter().enumerate() {
        entries[row * points + i] = 1;
        entries[row * points + j] = 1;
    }
    entries
}

/// Admissibility decided by the exact rank of the square restricted matrix.
pub fn rank_oracle_admissible(complex: &LineComplex) -> bool {
    let points = complex.point_count();
    linalg::integer_rank(&restricted_entries(complex), points, points) == points
}

/// The transform restricted to the complex's lines, in complex order.
pub fn restricted_apply(complex: &LineComplex, f: &DataVector) -> Result<DataVector> {
    f.expect(Role::Point, complex.point_count())?;
    let values = complex.pairs().into_iter().map(|(i, j)| &f.values[i] + &f.values[j]).collect();
    Ok(DataVector::new(Role::Block, values))
}

fn is_kernel_witness(complex: &LineComplex, w: &DataVector) -> bool {
    !w.is_zero() && restricted_apply(complex, w).is_ok_and(|r| r.is_zero())
}

/// A nonzero point function annihilated by the restricted transform.
pub fn kernel_witness(complex: &LineComplex) -> Result<DataVector> {
    let graph = complex.graph();
    if flags_of(&graph).admissible() {
        return Err(Error::Admissible);
    }
    witness_for(complex, &graph)
}

fn witness_for(complex: &LineComplex, graph: &ComplexGraph) -> Result<DataVector> {
    let points = complex.point_count();
    let fast = if let Some(c) = graph.components.iter().find(|c| c.kind() == ComponentKind::Isolated) {
        Some(DataVector::delta(Role::Point, points, c.vertices[0]))
    } else {
        // +1/-1 on the two colour classes of a bipartite component
        graph.components.iter().find(|c| c.bipartite).map(|c| {
            let mut w = DataVector::zeros(Role::Point, points);
            for &v in &c.vertices {
                w.values[v] = if graph.color(v) == 0 { int(1) } else { int(-1) };
            }
            w
        })
    };
    if let Some(w) = fast.filter(|w| is_kernel_witness(complex, w)) {
        return Ok(w);
    }
    let rows: Vec<Vec<i64>> = restricted_entries(complex).chunks(points).map(<[i64]>::to_vec).collect();
    linalg::nullspace(&linalg::from_integers(&rows), points)
        .into_iter()
        .map(|v| DataVector::new(Role::Point, v))
        .find(|w| is_kernel_witness(complex, w))
        .ok_or_else(|| Error::OracleDisagreement("obstruction found but the restricted transform has full rank".into()))
}

/// Inverts the restricted transform on an admissible complex.
///
/// Each component has exactly one cycle, of odd length `m`. With cycle
/// `v_1 .. v_m` and `e_i = {v_i, v_(i+1)}`, the alternating sum of `g` around
/// the cycle telescopes to `2 f(v_1)`. Values then propagate breadth-first by
/// `f(w) = g({v, w}) - f(v)`, and every line is checked against the result.
pub fn reconstruct(complex: &LineComplex, g: &DataVector) -> Result<DataVector> {
    g.expect(Role::Block, complex.point_count())?;
    let graph = complex.graph();
    if !flags_of(&graph).admissible() {
        return Err(Error::Inadmissible);
    }
    let mut f: Vec<Option<BigRational>> = vec![None; graph.vertex_count];
    let half = BigRational::new(1.into(), 2.into());
    for component in &graph.components {
        let cycle = component.cycle.as_ref().ok_or(Error::Inadmissible)?;
        let m = cycle.len();
        let mut alternating = BigRational::zero();
        for i in 0..m {
            let (a, b) = (cycle[i], cycle[(i + 1) % m]);
            let e = graph.neighbors(a).iter().find(|&&(w, _)| w == b).map(|&(_, e)| e).expect("cycle edge");
            if i % 2 == 0 {
                alternating += &g.values[e];
            } else {
                alternating -= &g.values[e];
            }
        }
        let seed = cycle[0];
        f[seed] = Some(alternating * &half);

        let mut queue = VecDeque::from([seed]);
        while let Some(v) = queue.pop_front() {
            let fv = f[v].clone().expect("queued vertices are assigned");
            let mut incident = graph.neighbors(v).to_vec();
            incident.sort_unstable_by_key(|&(_, e)| e);
            for (w, e) in incident {
                match &f[w] {
                    None => {
                        f[w] = Some(&g.values[e] - &fv);
                        queue.push_back(w);
                    }
                    Some(fw) if &fv + fw != g.values[e] => {
                        return Err(Error::InconsistentData { line: complex.line_ids()[e] });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(DataVector::new(Role::Point, f.into_iter().map(|v| v.expect("every component was seeded")).collect()))
}
