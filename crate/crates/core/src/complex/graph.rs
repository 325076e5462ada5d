//! A line complex over `Z_2` read as a simple graph: points are vertices and
//! each two-point line is an edge.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// A single vertex with no edges.
    Isolated,
    Tree,
    Unicyclic,
    Multicyclic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Ascending.
    pub vertices: Vec<usize>,
    /// Indices into [`ComplexGraph::edges`], ascending.
    pub edges: Vec<usize>,
    pub bipartite: bool,
    /// The unique cycle of a unicyclic component, starting at its smallest
    /// vertex and continuing towards the smaller of its two cycle neighbours.
    pub cycle: Option<Vec<usize>>,
}

impl Component {
    pub fn kind(&self) -> ComponentKind {
        match self.edges.len() as isize - self.vertices.len() as isize {
            _ if self.edges.is_empty() => ComponentKind::Isolated,
            -1 => ComponentKind::Tree,
            0 => ComponentKind::Unicyclic,
            _ => ComponentKind::Multicyclic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexGraph {
    pub vertex_count: usize,
    /// Edges as `(i, j)` with `i < j`, in the order given.
    pub edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
    /// A proper 2-colouring on every bipartite component (0/1), arbitrary elsewhere.
    colors: Vec<u8>,
    /// Ordered by smallest vertex.
    pub components: Vec<Component>,
    component_of: Vec<usize>,
}

impl ComplexGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (e, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, e));
            adjacency[b].push((a, e));
        }
        let mut graph = Self {
            vertex_count,
            edges,
            adjacency,
            colors: vec![0; vertex_count],
            components: Vec::new(),
            component_of: vec![usize::MAX; vertex_count],
        };
        graph.label_components();
        graph
    }

    fn label_components(&mut self) {
        let mut queue = VecDeque::new();
        for start in 0..self.vertex_count {
            if self.component_of[start] != usize::MAX {
                continue;
            }
            let id = self.components.len();
            let mut vertices = vec![start];
            let mut bipartite = true;
            self.component_of[start] = id;
            self.colors[start] = 0;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adjacency[v] {
                    if self.component_of[w] == usize::MAX {
                        self.component_of[w] = id;
                        self.colors[w] = 1 - self.colors[v];
                        vertices.push(w);
                        queue.push_back(w);
                    } else if self.colors[w] == self.colors[v] {
                        bipartite = false;
                    }
                }
            }
            vertices.sort_unstable();
            let mut edges: Vec<usize> =
                vertices.iter().flat_map(|&v| self.adjacency[v].iter().map(|&(_, e)| e)).collect();
            edges.sort_unstable();
            edges.dedup();
            let mut component = Component { vertices, edges, bipartite, cycle: None };
            if component.kind() == ComponentKind::Unicyclic {
                component.cycle = Some(self.unique_cycle(&component));
            }
            self.components.push(component);
        }
    }

    /// Strips leaves until only the cycle remains, then walks it.
    fn unique_cycle(&self, component: &Component) -> Vec<usize> {
        let mut degree: Vec<usize> = vec![0; self.vertex_count];
        for &v in &component.vertices {
            degree[v] = self.adjacency[v].len();
        }
        let mut leaves: Vec<usize> = component.vertices.iter().copied().filter(|&v| degree[v] == 1).collect();
        while let Some(v) = leaves.pop() {
            degree[v] = 0;
            for &(w, _) in &self.adjacency[v] {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        leaves.push(w);
                    }
                }
            }
        }
        let on_cycle = |v: usize| degree[v] == 2;
        let start = *component.vertices.iter().find(|&&v| on_cycle(v)).expect("unicyclic component has a cycle");
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut current = start;
        loop {
            let next = self.adjacency[current]
                .iter()
                .map(|&(w, _)| w)
                .filter(|&w| on_cycle(w) && w != prev)
                .min()
                .expect("cycle vertices have two cycle neighbours");
            if next == start {
                break;
            }
            cycle.push(next);
            prev = current;
            current = next;
        }
        cycle
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn color(&self, v: usize) -> u8 {
        self.colors[v]
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    /// Some cycle of even length, if the graph has one.
    ///
    /// Works block by block: a block that is a single cycle contributes it when
    /// its length is even, and any block with more edges than vertices always
    /// holds an even cycle, found by combining a cycle with an ear.
    pub fn even_cycle(&self) -> Option<Vec<usize>> {
        for component in &self.components {
            if component.edges.len() < component.vertices.len() {
                continue;
            }
            if let Some(cycle) = &component.cycle {
                if cycle.len() % 2 == 0 {
                    return Some(cycle.clone());
                }
                continue;
            }
            for block in self.blocks(component.vertices[0]) {
                let mut verts: Vec<usize> = block.iter().flat_map(|&e| [self.edges[e].0, self.edges[e].1]).collect();
                verts.sort_unstable();
                verts.dedup();
                if block.len() < verts.len() {
                    continue;
                }
                let in_block = |e: usize| block.binary_search(&e).is_ok();
                let cycle = self.cycle_in(&verts, &in_block);
                if cycle.len() % 2 == 0 {
                    return Some(cycle);
                }
                if block.len() > verts.len() {
                    return Some(self.even_cycle_from_ear(&cycle, &in_block));
                }
            }
        }
        None
    }

    /// Edge sets (ascending) of the biconnected blocks of the component of `root`.
    fn blocks(&self, root: usize) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut time = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut blocks = Vec::new();
        // (vertex, parent edge, next adjacency position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (v, parent_edge, ref mut pos)) = stack.last_mut() {
            if let Some(&(w, e)) = self.adjacency[v].get(*pos) {
                *pos += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        blocks
    }

    /// A cycle through the edges accepted by `in_block`, from a BFS tree and
    /// the first non-tree edge.
    fn cycle_in(&self, verts: &[usize], in_block: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let root = verts[0];
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut parent_edge = vec![usize::MAX; self.vertex_count];
        let mut depth = vec![0usize; self.vertex_count];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        let mut closing = None;
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &self.adjacency[v] {
                if !in_block(e) || e == parent_edge[v] {
                    continue;
                }
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    parent_edge[w] = e;
                    depth[w] = depth[v] + 1;
                    queue.push_back(w);
                } else if closing.is_none() {
                    closing = Some((v, w));
                }
            }
        }
        let (mut a, mut b) = closing.expect("block with a cycle has a non-tree edge");
        let mut left = vec![a];
        let mut right = vec![b];
        while a != b {
            if depth[a] >= depth[b] {
                a = parent[a];
                left.push(a);
            } else {
                b = parent[b];
                right.push(b);
            }
        }
        right.pop();
        left.extend(right.into_iter().rev());
        left
    }

    /// Given an odd cycle in a block with more edges than vertices, finds an
    /// ear and returns whichever of the two new cycles is even.
    fn even_cycle_from_ear(&self, cycle: &[usize], in_block: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let m = cycle.len();
        let mut pos = vec![usize::MAX; self.vertex_count];
        cycle.iter().enumerate().for_each(|(i, &v)| pos[v] = i);
        let on_cycle_edge = |a: usize, b: usize| {
            pos[a] != usize::MAX && pos[b] != usize::MAX && {
                let d = (pos[a] + m - pos[b]) % m;
                d == 1 || d == m - 1
            }
        };
        let (x, y) = cycle
            .iter()
            .flat_map(|&x| self.adjacency[x].iter().map(move |&(y, e)| (x, y, e)))
            .find(|&(x, y, e)| in_block(e) && !on_cycle_edge(x, y))
            .map(|(x, y, _)| (x, y))
            .expect("block has an edge off the cycle touching it");

        // ear x, y, ..., z with interior off the cycle
        let mut ear = vec![x];
        if pos[y] != usize::MAX {
            ear.push(y);
        } else {
            let mut parent = vec![usize::MAX; self.vertex_count];
            parent[y] = y;
            let mut queue = VecDeque::from([y]);
            let mut end = None;
            'bfs: while let Some(v) = queue.pop_front() {
                for &(w, e) in &self.adjacency[v] {
                    if !in_block(e) || w == x || parent[w] != usize::MAX {
                        continue;
                    }
                    parent[w] = v;
                    if pos[w] != usize::MAX {
                        end = Some(w);
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
            let mut path = vec![end.expect("2-connected block reaches the cycle avoiding x")];
            while *path.last().unwrap() != y {
                path.push(parent[*path.last().unwrap()]);
            }
            ear.extend(path.into_iter().rev());
        }
        let z = *ear.last().unwrap();
        // the two arcs of the cycle from z back to x
        let pz = pos[z];
        let forward: Vec<usize> = (1..).map(|k| cycle[(pz + k) % m]).take_while(|&v| v != x).collect();
        let backward: Vec<usize> = (1..).map(|k| cycle[(pz + m - k) % m]).take_while(|&v| v != x).collect();
        debug_assert_eq!(forward.len() + backward.len() + 2, m);
        let ear_edges = ear.len() - 1;
        let arc = if (ear_edges + forward.len() + 1) % 2 == 0 { forward } else { backward };
        let mut result = ear;
        result.extend(arc);
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_edges(vs: &[usize]) -> Vec<(usize, usize)> {
        (0..vs.len())
            .map(|i| {
                let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    fn is_cycle(g: &ComplexGraph, vs: &[usize]) -> bool {
        let mut sorted = vs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == vs.len()
            && vs.len() >= 3
            && cycle_edges(vs).iter().all(|e| g.edges.contains(e))
    }

    #[test]
    fn two_squares() {
        let mut edges = cycle_edges(&[0, 1, 2, 3]);
        edges.extend(cycle_edges(&[4, 5, 6, 7]));
        let g = ComplexGraph::new(8, edges);
        assert_eq!(g.components.len(), 2);
        for c in &g.components {
            assert_eq!(c.kind(), ComponentKind::Unicyclic);
            assert!(c.bipartite);
            assert_eq!(c.cycle.as_ref().unwrap().len(), 4);
        }
        assert_eq!(g.even_cycle(), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn octagon_and_triangle_pentagon() {
        let g = ComplexGraph::new(8, cycle_edges(&[0, 3, 1, 5, 7, 2, 6, 4]));
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.components[0].cycle, Some(vec![0, 3, 1, 5, 7, 2, 6, 4]));
        assert!(g.even_cycle().is_some());

        let mut edges = cycle_edges(&[0, 1, 2]);
        edges.extend(cycle_edges(&[3, 4, 5, 6, 7]));
        let g = ComplexGraph::new(8, edges);
        assert_eq!(g.components.len(), 2);
        assert!(g.components.iter().all(|c| !c.bipartite && c.kind() == ComponentKind::Unicyclic));
        assert_eq!(g.even_cycle(), None);
    }

    #[test]
    fn unique_cycle_ignores_pendants() {
        // triangle 1-2-4 with a pendant 0-1 and a path 4-5-6
        let g = ComplexGraph::new(7, vec![(0, 1), (1, 2), (2, 4), (1, 4), (4, 5), (5, 6)]);
        let c = &g.components[0];
        assert_eq!(c.cycle, Some(vec![1, 2, 4]));
        assert_eq!(g.components.len(), 2);
        assert_eq!(g.components[1].kind(), ComponentKind::Isolated);
    }

    #[test]
    fn even_cycle_in_multicyclic_blocks() {
        // two triangles sharing an edge contain a 4-cycle
        let g = ComplexGraph::new(4, vec![(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)]);
        let c = g.even_cycle().unwrap();
        assert_eq!(c.len(), 4);
        assert!(is_cycle(&g, &c));

        // bowtie has no even cycle
        let g = ComplexGraph::new(5, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert_eq!(g.even_cycle(), None);

        // triangles joined by a path: none either
        let g = ComplexGraph::new(7, vec![(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)]);
        assert_eq!(g.even_cycle(), None);

        // pentagon with a long chord through outside vertices
        let g = ComplexGraph::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5), (5, 6), (2, 6)]);
        let c = g.even_cycle().unwrap();
        assert!(is_cycle(&g, &c) && c.len() % 2 == 0, "{c:?}");
    }

    /// Brute force: does some simple cycle have even length?
    fn has_even_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
        fn dfs(adj: &[Vec<usize>], start: usize, v: usize, len: usize, seen: &mut Vec<bool>) -> bool {
            for &w in &adj[v] {
                if w == start && len >= 3 && len % 2 == 0 {
                    return true;
                }
                if !seen[w] && w > start {
                    seen[w] = true;
                    if dfs(adj, start, w, len + 1, seen) {
                        return true;
                    }
                    seen[w] = false;
                }
            }
            false
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        (0..n).any(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            dfs(&adj, s, s, 1, &mut seen)
        })
    }

    #[test]
    fn even_cycle_agrees_with_brute_force() {
        use rand::{seq::index::sample, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 8;
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        for trial in 0..4000 {
            let k = 4 + trial % 9;
            let mut edges: Vec<(usize, usize)> =
                sample(&mut rng, pairs.len(), k).into_iter().map(|i| pairs[i]).collect();
            edges.sort_unstable();
            let g = ComplexGraph::new(n, edges.clone());
            let found = g.even_cycle();
            assert_eq!(found.is_some(), has_even_cycle(n, &edges), "{edges:?}");
            if let Some(c) = found {
                assert!(is_cycle(&g, &c) && c.len() % 2 == 0, "{edges:?} -> {c:?}");
            }
        }
    }
}
