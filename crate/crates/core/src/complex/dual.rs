use alloc::vec::Vec;

use super::Combinatoric;

/// The circuit `k*` of faces around vertex `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCell {
    pub vertex: usize,
    /// Dual nodes (faces) in the cyclic order of the vertex link.
    pub nodes: Vec<usize>,
    /// Dual edges (edges `{k, y_i}`) in link order; `edges[i]` separates
    /// `nodes[i - 1]` from `nodes[i]`.
    pub edges: Vec<usize>,
}

/// Dual graph `K*`: one node per face, one edge per edge of `K` joining the
/// two faces on it, and one two-cell per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    node_count: usize,
    /// Endpoints (faces) of each dual edge, indexed like the edges of `K`.
    edge_nodes: Vec<[usize; 2]>,
    /// The two two-cells (vertices of `K`) containing each dual edge.
    edge_cells: Vec<[usize; 2]>,
    cells: Vec<TwoCell>,
    /// Dual edges at each node, in the order of [`Combinatoric::face_edges`].
    node_edges: Vec<[usize; 3]>,
}

impl DualGraph {
    pub fn new(k: &Combinatoric) -> Self {
        let cells = (0..k.vertex_count())
            .map(|v| TwoCell {
                vertex: v,
                nodes: k.link(v).iter().map(|s| s.face).collect(),
                edges: k.link(v).iter().map(|s| s.edge).collect(),
            })
            .collect();
        DualGraph {
            node_count: k.face_count(),
            edge_nodes: (0..k.edge_count()).map(|e| k.edge_faces(e)).collect(),
            edge_cells: k.edges().to_vec(),
            cells,
            node_edges: (0..k.face_count()).map(|f| k.face_edges(f)).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_nodes.len()
    }

    pub fn edge_nodes(&self, e: usize) -> [usize; 2] {
        self.edge_nodes[e]
    }

    pub fn edge_cells(&self, e: usize) -> [usize; 2] {
        self.edge_cells[e]
    }

    pub fn node_edges(&self, node: usize) -> [usize; 3] {
        self.node_edges[node]
    }

    pub fn cells(&self) -> &[TwoCell] {
        &self.cells
    }

    pub fn cell(&self, k: usize) -> &TwoCell {
        &self.cells[k]
    }

    /// The dual edge joining two nodes, if they are adjacent.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.node_edges
            .get(a)?
            .iter()
            .copied()
            .find(|&e| self.edge_nodes[e].contains(&b) && a != b)
    }

    pub fn neighbors(&self, node: usize) -> [usize; 3] {
        self.node_edges[node].map(|e| {
            let [x, y] = self.edge_nodes[e];
            if x == node {
                y
            } else {
                x
            }
        })
    }
}
