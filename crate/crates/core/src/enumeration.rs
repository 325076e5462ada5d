//! Exhaustive sweeps over the line complexes of `Z_2^3`.
//!
//! Complexes are the 8-element subsets of the 28 lines, visited in
//! lexicographic order. The range `0..C(28, 8)` is cut into contiguous
//! partitions that are classified independently and merged in order, so
//! results do not depend on the partition count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{line_endpoints, ComplexGraph, LineComplex, ObstructionFlags};
use crate::error::{Error, Result};
use crate::geometry::GeometrySpace;
use crate::linalg;

const POINTS: usize = 8;
const LINES: usize = 28;

pub fn binomial(a: u64, b: u64) -> Result<u128> {
    if b > a {
        return Err(Error::InvalidArgument(format!("C({a}, {b}) needs b <= a")));
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // C(a, i) * (a - i) = (i + 1) * C(a, i + 1)
        acc = acc
            .checked_mul((a - i) as u128)
            .ok_or_else(|| Error::Overflow(format!("C({a}, {b})")))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

fn binom_or_zero(a: usize, b: usize) -> u128 {
    if b > a {
        0
    } else {
        binomial(a as u64, b as u64).expect("small binomials fit")
    }
}

/// Lexicographic rank of a strictly increasing `subset` of `0..n`.
pub fn combination_rank(n: usize, subset: &[usize]) -> Result<u128> {
    let k = subset.len();
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset.last().is_some_and(|&x| x >= n) {
        return Err(Error::InvalidArgument(format!("{subset:?} is not an increasing subset of 0..{n}")));
    }
    let mut rank = 0u128;
    let mut from = 0;
    for (pos, &x) in subset.iter().enumerate() {
        for skipped in from..x {
            rank += binom_or_zero(n - skipped - 1, k - pos - 1);
        }
        from = x + 1;
    }
    Ok(rank)
}

/// The `index`-th `k`-subset of `0..n` in lexicographic order.
pub fn combination_unrank(n: usize, k: usize, mut index: u128) -> Result<Vec<usize>> {
    let total = binomial(n as u64, k as u64)?;
    if index >= total {
        return Err(Error::IndexOutOfRange { index: index.min(usize::MAX as u128) as usize, size: total as usize });
    }
    let mut out = Vec::with_capacity(k);
    let mut x = 0;
    for pos in 0..k {
        loop {
            let block = binom_or_zero(n - x - 1, k - pos - 1);
            if index < block {
                break;
            }
            index -= block;
            x += 1;
        }
        out.push(x);
        x += 1;
    }
    Ok(out)
}

/// Advances `c` to the next `k`-subset of `0..n`; false after the last one.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

fn space3() -> GeometrySpace {
    GeometrySpace::new(2, 3).expect("Z_2^3")
}

fn require_three(n: u32) -> Result<()> {
    if n != 3 {
        return Err(Error::Unsupported(format!(
            "exhaustive enumeration is only feasible for n = 3; Z_2^{n} has C({}, {}) complexes, use sampling",
            (1u64 << n) * ((1u64 << n).saturating_sub(1)) / 2,
            1u64 << n
        )));
    }
    Ok(())
}

/// Total number of complexes in `Z_2^3`.
pub fn complex_count() -> u128 {
    binom_or_zero(LINES, POINTS)
}

/// The complex at lexicographic position `index`.
pub fn complex_at(index: u128) -> Result<LineComplex> {
    LineComplex::new(space3(), combination_unrank(LINES, POINTS, index)?)
}

/// Bit-packed view of one complex in `Z_2^3`.
#[derive(Debug, Clone, Copy)]
pub struct MaskComplex {
    lines: [u8; POINTS],
    adj: [u8; POINTS],
    covered: u8,
}

const fn line_table() -> [(u8, u8); LINES] {
    let mut t = [(0u8, 0u8); LINES];
    let mut id = 0;
    let mut i = 0;
    while i < POINTS {
        let mut j = i + 1;
        while j < POINTS {
            t[id] = (i as u8, j as u8);
            id += 1;
            j += 1;
        }
        i += 1;
    }
    t
}

const LINE_TABLE: [(u8, u8); LINES] = line_table();

impl MaskComplex {
    pub fn new(ids: &[usize]) -> Self {
        let mut lines = [0u8; POINTS];
        let mut adj = [0u8; POINTS];
        let mut covered = 0u8;
        for (slot, &id) in ids.iter().enumerate() {
            let (i, j) = LINE_TABLE[id];
            lines[slot] = id as u8;
            adj[i as usize] |= 1 << j;
            adj[j as usize] |= 1 << i;
            covered |= (1 << i) | (1 << j);
        }
        Self { lines, adj, covered }
    }

    fn neighbourhood(&self, set: u8) -> u8 {
        let mut out = 0;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            out |= self.adj[v];
            rest &= rest - 1;
        }
        out
    }

    pub fn omitted_points(&self) -> u32 {
        (!self.covered).count_ones()
    }

    /// Lines meeting no other line of the complex.
    pub fn isolated_lines(&self) -> u32 {
        self.lines
            .iter()
            .filter(|&&id| {
                let (i, j) = LINE_TABLE[id as usize];
                self.adj[i as usize] == 1 << j && self.adj[j as usize] == 1 << i
            })
            .count() as u32
    }

    pub fn flags(&self) -> ObstructionFlags {
        let mut flags = ObstructionFlags { omitted_point: self.covered != 0xFF, ..Default::default() };
        let mut seen = !self.covered;
        let mut needs_search = false;
        while seen != 0xFF {
            let start = (!seen).trailing_zeros();
            // two-colour the component by alternating neighbourhoods
            let (mut even, mut odd) = (1u8 << start, 0u8);
            loop {
                let next_odd = odd | self.neighbourhood(even);
                let next_even = even | self.neighbourhood(odd);
                if (next_even, next_odd) == (even, odd) {
                    break;
                }
                (even, odd) = (next_even, next_odd);
            }
            let comp = even | odd;
            seen |= comp;
            let vertices = comp.count_ones();
            let edges = self
                .lines
                .iter()
                .filter(|&&id| comp & (1 << LINE_TABLE[id as usize].0) != 0)
                .count() as u32;
            let bipartite = even & odd == 0;
            if edges + 1 == vertices {
                flags.isolated_tree = true;
            } else if bipartite {
                flags.even_cycle = true;
            } else if edges > vertices {
                needs_search = true;
            }
        }
        if needs_search && !flags.even_cycle {
            flags.even_cycle = self.graph().even_cycle().is_some();
        }
        flags
    }

    pub fn graph(&self) -> ComplexGraph {
        let edges = self.lines.iter().map(|&id| line_endpoints(POINTS, id as usize)).collect();
        ComplexGraph::new(POINTS, edges)
    }

    pub fn rank_admissible(&self) -> bool {
        let mut entries = [0i64; POINTS * POINTS];
        for (row, &id) in self.lines.iter().enumerate() {
            let (i, j) = LINE_TABLE[id as usize];
            entries[row * POINTS + i as usize] = 1;
            entries[row * POINTS + j as usize] = 1;
        }
        linalg::integer_rank(&entries, POINTS, POINTS) == POINTS
    }

    /// Some plane meets the complex in a triangle whose plane points are all
    /// covered by in-plane lines, i.e. contains a relatively admissible set.
    pub fn has_planar_core(&self) -> bool {
        PLANES.iter().any(|&plane| {
            let inside: Vec<(u8, u8)> = self
                .lines
                .iter()
                .map(|&id| LINE_TABLE[id as usize])
                .filter(|&(i, j)| plane & (1 << i) != 0 && plane & (1 << j) != 0)
                .collect();
            let touched = inside.iter().fold(0u8, |m, &(i, j)| m | (1 << i) | (1 << j));
            touched == plane
                && inside.len() >= 4
                && (0..POINTS as u8).filter(|v| plane & (1 << v) != 0).any(|skip| {
                    inside.iter().filter(|&&(i, j)| i != skip && j != skip).count() == 3
                })
        })
    }
}

const fn plane_masks() -> [u8; 14] {
    let mut out = [0u8; 14];
    let mut k = 0;
    let mut normal = 1;
    while normal < 8 {
        let mut level = 0;
        while level < 2 {
            let mut mask = 0u8;
            let mut p = 0;
            while p < 8 {
                if (p & normal as u32).count_ones() % 2 == level {
                    mask |= 1 << p;
                }
                p += 1;
            }
            out[k] = mask;
            k += 1;
            level += 1;
        }
        normal += 1;
    }
    out
}

const PLANES: [u8; 14] = plane_masks();

/// Non-exclusive obstruction tallies for a range of complexes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub total: u64,
    pub admissible: u64,
    pub inadmissible: u64,
    pub omitted_point: u64,
    pub isolated_tree: u64,
    pub even_cycle: u64,
    /// Counts per obstruction pattern, indexed by
    /// `omitted_point | isolated_tree << 1 | even_cycle << 2`.
    pub patterns: [u64; 8],
    pub rank_verified: bool,
    pub rank_disagreements: u64,
    /// Admissible complexes containing no relatively admissible planar set.
    pub admissible_without_planar_core: u64,
}

impl CensusResult {
    fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        self.admissible += other.admissible;
        self.inadmissible += other.inadmissible;
        self.omitted_point += other.omitted_point;
        self.isolated_tree += other.isolated_tree;
        self.even_cycle += other.even_cycle;
        for (a, b) in self.patterns.iter_mut().zip(other.patterns) {
            *a += b;
        }
        self.rank_verified = self.rank_verified && other.rank_verified;
        self.rank_disagreements += other.rank_disagreements;
        self.admissible_without_planar_core += other.admissible_without_planar_core;
        self
    }
}

/// Contiguous index ranges covering `0..total`.
pub fn partition_ranges(total: u128, partitions: usize) -> Vec<(u128, u128)> {
    let k = partitions.max(1) as u128;
    (0..k).map(|i| (total * i / k, total * (i + 1) / k)).filter(|(a, b)| a < b).collect()
}

fn sweep<T, F>(partitions: usize, zero: T, visit: F, merge: fn(T, T) -> T) -> T
where
    T: Clone + Send + Sync,
    F: Fn(&mut T, &[usize]) + Sync,
{
    let ranges = partition_ranges(complex_count(), partitions);
    let parts: Vec<T> = ranges
        .par_iter()
        .map(|&(start, end)| {
            let mut acc = zero.clone();
            let mut c = combination_unrank(LINES, POINTS, start).expect("start in range");
            for _ in start..end {
                visit(&mut acc, &c);
                next_combination(&mut c, LINES);
            }
            acc
        })
        .collect();
    parts.into_iter().fold(zero, merge)
}

/// Classifies every complex of `Z_2^n` (only `n = 3` is feasible).
pub fn enumerate_all_complexes(n: u32, partitions: usize, verify_rank: bool) -> Result<CensusResult> {
    require_three(n)?;
    if partitions == 0 {
        return Err(Error::InvalidArgument("partitions must be at least 1".into()));
    }
    let zero = CensusResult { rank_verified: verify_rank, ..Default::default() };
    Ok(sweep(
        partitions,
        zero,
        |acc, c| {
            let m = MaskComplex::new(c);
            let f = m.flags();
            let ok = f.admissible();
            acc.total += 1;
            if ok {
                acc.admissible += 1;
                if !m.has_planar_core() {
                    acc.admissible_without_planar_core += 1;
                }
            } else {
                acc.inadmissible += 1;
            }
            acc.omitted_point += f.omitted_point as u64;
            acc.isolated_tree += f.isolated_tree as u64;
            acc.even_cycle += f.even_cycle as u64;
            acc.patterns[f.omitted_point as usize | (f.isolated_tree as usize) << 1 | (f.even_cycle as usize) << 2] += 1;
            if verify_rank && m.rank_admissible() != ok {
                acc.rank_disagreements += 1;
            }
        },
        CensusResult::merge,
    ))
}

/// The first admissible complex, in lexicographic order, with no
/// relatively admissible planar set.
pub fn first_admissible_without_planar_core() -> Option<LineComplex> {
    let mut c: Vec<usize> = (0..POINTS).collect();
    loop {
        let m = MaskComplex::new(&c);
        if m.flags().admissible() && !m.has_planar_core() {
            return Some(LineComplex::new(space3(), c).expect("valid complex"));
        }
        if !next_combination(&mut c, LINES) {
            return None;
        }
    }
}

/// Brute-force sums over all complexes, with `k` omitted points and `j`
/// isolated lines per complex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTallies {
    pub sum_k: u128,
    pub sum_k_choose_2: u128,
    pub sum_k_choose_3: u128,
    pub exactly_three_omitted: u128,
    pub some_omitted: u128,
    pub sum_j: u128,
    pub sum_j_choose_2: u128,
    pub exactly_two_isolated: u128,
    pub some_isolated: u128,
    pub sum_jk: u128,
    pub isolated_and_two_omitted: u128,
    pub two_isolated_and_omitted: u128,
}

impl CountTallies {
    pub fn sweep(partitions: usize) -> Self {
        sweep(
            partitions,
            Self::default(),
            |t, c| {
                let m = MaskComplex::new(c);
                let k = m.omitted_points() as u128;
                let j = m.isolated_lines() as u128;
                t.sum_k += k;
                t.sum_k_choose_2 += k * k.saturating_sub(1) / 2;
                t.sum_k_choose_3 += k * k.saturating_sub(1) * k.saturating_sub(2) / 6;
                t.exactly_three_omitted += (k == 3) as u128;
                t.some_omitted += (k > 0) as u128;
                t.sum_j += j;
                t.sum_j_choose_2 += j * j.saturating_sub(1) / 2;
                t.exactly_two_isolated += (j == 2) as u128;
                t.some_isolated += (j > 0) as u128;
                t.sum_jk += j * k;
                t.isolated_and_two_omitted += (j >= 1 && k >= 2) as u128;
                t.two_isolated_and_omitted += (j >= 2 && k >= 1) as u128;
            },
            |a, b| Self {
                sum_k: a.sum_k + b.sum_k,
                sum_k_choose_2: a.sum_k_choose_2 + b.sum_k_choose_2,
                sum_k_choose_3: a.sum_k_choose_3 + b.sum_k_choose_3,
                exactly_three_omitted: a.exactly_three_omitted + b.exactly_three_omitted,
                some_omitted: a.some_omitted + b.some_omitted,
                sum_j: a.sum_j + b.sum_j,
                sum_j_choose_2: a.sum_j_choose_2 + b.sum_j_choose_2,
                exactly_two_isolated: a.exactly_two_isolated + b.exactly_two_isolated,
                some_isolated: a.some_isolated + b.some_isolated,
                sum_jk: a.sum_jk + b.sum_jk,
                isolated_and_two_omitted: a.isolated_and_two_omitted + b.isolated_and_two_omitted,
                two_isolated_and_omitted: a.two_isolated_and_omitted + b.two_isolated_and_omitted,
            },
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub name: String,
    pub closed_form: u128,
    pub brute_force: u128,
    pub agrees: bool,
}

impl CountCheck {
    fn new(name: &str, closed_form: u128, brute_force: u128) -> Self {
        Self { name: name.into(), closed_form, brute_force, agrees: closed_form == brute_force }
    }
}

fn c(a: usize, b: usize) -> u128 {
    binom_or_zero(a, b)
}

pub fn point_omitting_checks(t: &CountTallies) -> Vec<CountCheck> {
    let multiplicity = 8 * c(21, 8);
    let pairs = 28 * c(15, 8);
    let triples = c(10, 8) * c(8, 3);
    vec![
        CountCheck::new("omit_multiplicity", multiplicity, t.sum_k),
        CountCheck::new("omit_pairs", pairs, t.sum_k_choose_2),
        CountCheck::new("omit_triples", triples, t.sum_k_choose_3),
        CountCheck::new("omit_exactly_three", triples, t.exactly_three_omitted),
        CountCheck::new("omit_distinct", multiplicity - pairs + triples, t.some_omitted),
    ]
}

pub fn isolated_line_checks(t: &CountTallies) -> Vec<CountCheck> {
    let multiplicity = 28 * c(15, 7);
    let two = 28 * 15 / 2;
    vec![
        CountCheck::new("isolated_multiplicity", multiplicity, t.sum_j),
        CountCheck::new("isolated_pairs", two, t.sum_j_choose_2),
        CountCheck::new("isolated_exactly_two", two, t.exactly_two_isolated),
        CountCheck::new("isolated_distinct", multiplicity - two, t.some_isolated),
    ]
}

pub fn mixed_checks(t: &CountTallies) -> Vec<CountCheck> {
    vec![
        CountCheck::new("disjoint_point_line_pairs", 8 * 21, disjoint_point_line_pairs()),
        CountCheck::new("isolated_line_and_omitted_point", 8 * 21 * c(10, 7), t.sum_jk),
        CountCheck::new("isolated_line_and_two_omitted", 0, t.isolated_and_two_omitted),
        CountCheck::new("two_isolated_lines_and_omitted", 0, t.two_isolated_and_omitted),
    ]
}

fn disjoint_point_line_pairs() -> u128 {
    (0..POINTS as u8)
        .map(|p| LINE_TABLE.iter().filter(|&&(i, j)| i != p && j != p).count() as u128)
        .sum()
}

pub fn count_point_omitting(n: u32) -> Result<Vec<CountCheck>> {
    require_three(n)?;
    Ok(point_omitting_checks(&CountTallies::sweep(1)))
}

pub fn count_isolated_lines(n: u32) -> Result<Vec<CountCheck>> {
    require_three(n)?;
    Ok(isolated_line_checks(&CountTallies::sweep(1)))
}

pub fn count_mixed(n: u32) -> Result<Vec<CountCheck>> {
    require_three(n)?;
    Ok(mixed_checks(&CountTallies::sweep(1)))
}
