//! Oriented simplicial 2-complexes whose realization is a closed connected
//! surface, together with the structures derived from them: edges, corners,
//! vertex links, the dual graph and a disc-growth ordering of the vertices.

mod disc;
mod dual;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub use disc::{disc_growth_order, disc_growth_order_from, is_disc, StarUnion};
pub use dual::{DualGraph, TwoCell};

/// A corner: the face angle at `center` inside the face `{center, wings.0, wings.1}`.
///
/// `wings` is stored sorted, which makes `(i k j)` and `(j k i)` the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub center: usize,
    pub wings: (usize, usize),
}

impl Corner {
    pub fn new(a: usize, center: usize, b: usize) -> Self {
        let wings = if a < b { (a, b) } else { (b, a) };
        Corner { center, wings }
    }
}

/// One step of a vertex link: the neighbor `y_i` and the simplices joining it
/// to the vertex and to the next neighbor `y_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkSlot {
    /// Neighbor `y_i`.
    pub neighbor: usize,
    /// Edge `{k, y_i}`.
    pub edge: usize,
    /// Face `{k, y_i, y_{i+1}}`.
    pub face: usize,
    /// Corner of that face at `k` (between `y_i` and `y_{i+1}`).
    pub corner: usize,
}

/// A validated combinatoric.
///
/// Edges are indexed in lexicographic order of their sorted endpoints. Corner
/// `3 f + p` is the corner of face `f` centered at `faces[f][p]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Combinatoric {
    vertex_count: usize,
    faces: Vec<[usize; 3]>,
    edges: Vec<[usize; 2]>,
    edge_index: BTreeMap<(usize, usize), usize>,
    /// `[face traversing a→b, face traversing b→a]` for edge `[a, b]`, `a < b`.
    edge_faces: Vec<[usize; 2]>,
    face_index: BTreeMap<[usize; 3], usize>,
    links: Vec<Vec<LinkSlot>>,
}

fn sorted3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Validates oriented triangles and derives edges, corners and links.
pub fn build_complex(vertex_count: usize, faces: &[[usize; 3]]) -> Result<Combinatoric> {
    if faces.len() < 4 || vertex_count < 4 {
        return Err(Error::TooSmall { vertices: vertex_count, faces: faces.len() });
    }
    let mut used = vec![false; vertex_count];
    for (f, t) in faces.iter().enumerate() {
        if t.iter().any(|&v| v >= vertex_count) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
            return Err(Error::InvalidFace { face: f, vertex_count });
        }
        for &v in t {
            used[v] = true;
        }
    }
    if let Some(v) = used.iter().position(|u| !u) {
        return Err(Error::UnusedVertex { vertex: v });
    }

    // Directed occurrences of every unordered pair.
    let mut occurrences: BTreeMap<(usize, usize), Vec<(usize, bool)>> = BTreeMap::new();
    for (f, t) in faces.iter().enumerate() {
        for p in 0..3 {
            let (a, b) = (t[p], t[(p + 1) % 3]);
            let key = if a < b { (a, b) } else { (b, a) };
            occurrences.entry(key).or_default().push((f, a < b));
        }
    }
    let mut edges = Vec::with_capacity(occurrences.len());
    let mut edge_index = BTreeMap::new();
    let mut edge_faces = Vec::with_capacity(occurrences.len());
    for (&(a, b), occ) in &occurrences {
        if occ.len() != 2 {
            return Err(Error::NonManifoldEdge { a, b, count: occ.len() });
        }
        let (forward, backward): (Vec<(usize, bool)>, Vec<(usize, bool)>) = occ.iter().partition(|o| o.1);
        if forward.len() != 1 || backward.len() != 1 {
            return Err(Error::InconsistentOrientation { a, b });
        }
        edge_index.insert((a, b), edges.len());
        edges.push([a, b]);
        edge_faces.push([forward[0].0, backward[0].0]);
    }

    let mut face_index = BTreeMap::new();
    for (f, t) in faces.iter().enumerate() {
        face_index.insert(sorted3(*t), f);
    }

    // Link arrows: face (k, a, b) read from k contributes a -> b.
    let mut next: Vec<BTreeMap<usize, (usize, usize)>> = vec![BTreeMap::new(); vertex_count];
    for (f, t) in faces.iter().enumerate() {
        for p in 0..3 {
            let k = t[p];
            next[k].insert(t[(p + 1) % 3], (t[(p + 2) % 3], 3 * f + p));
        }
    }
    let mut links = Vec::with_capacity(vertex_count);
    for (k, arrows) in next.iter().enumerate() {
        let start = *arrows.keys().next().ok_or(Error::UnusedVertex { vertex: k })?;
        let mut slots = Vec::with_capacity(arrows.len());
        let mut y = start;
        loop {
            let &(succ, corner) = arrows.get(&y).ok_or(Error::PinchedVertex { vertex: k })?;
            let key = if k < y { (k, y) } else { (y, k) };
            slots.push(LinkSlot { neighbor: y, edge: edge_index[&key], face: corner / 3, corner });
            y = succ;
            if y == start || slots.len() > arrows.len() {
                break;
            }
        }
        if y != start || slots.len() != arrows.len() {
            return Err(Error::PinchedVertex { vertex: k });
        }
        links.push(slots);
    }

    let complex = Combinatoric {
        vertex_count,
        faces: faces.to_vec(),
        edges,
        edge_index,
        edge_faces,
        face_index,
        links,
    };
    if !complex.faces_connected() {
        return Err(Error::DisconnectedComplex);
    }
    Ok(complex)
}

impl Combinatoric {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn corner_count(&self) -> usize {
        3 * self.faces.len()
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Index of the edge `{a, b}`, in either order.
    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.edge_index.get(&key).copied()
    }

    /// The two faces on edge `e`: the one traversing it low→high first.
    pub fn edge_faces(&self, e: usize) -> [usize; 2] {
        self.edge_faces[e]
    }

    pub fn face_id(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        self.face_index.get(&sorted3([a, b, c])).copied()
    }

    /// Index of the corner centered at `center` in the face `{a, center, b}`.
    pub fn corner_id(&self, a: usize, center: usize, b: usize) -> Option<usize> {
        let f = self.face_id(a, center, b)?;
        let p = self.faces[f].iter().position(|&v| v == center)?;
        Some(3 * f + p)
    }

    pub fn corner(&self, id: usize) -> Corner {
        let t = self.faces[id / 3];
        let p = id % 3;
        Corner::new(t[(p + 1) % 3], t[p], t[(p + 2) % 3])
    }

    pub fn corners(&self) -> impl Iterator<Item = Corner> + '_ {
        (0..self.corner_count()).map(move |c| self.corner(c))
    }

    /// The third vertex of face `f` opposite to its edge `e`.
    pub fn opposite_vertex(&self, f: usize, e: usize) -> usize {
        let [a, b] = self.edges[e];
        self.faces[f].iter().copied().find(|&v| v != a && v != b).unwrap_or(a)
    }

    /// Edge ids of face `f`, the `p`-th being opposite to `faces[f][p]`.
    pub fn face_edges(&self, f: usize) -> [usize; 3] {
        let t = self.faces[f];
        let id = |a: usize, b: usize| {
            let key = if a < b { (a, b) } else { (b, a) };
            self.edge_index[&key]
        };
        [id(t[1], t[2]), id(t[2], t[0]), id(t[0], t[1])]
    }

    /// Faces sharing an edge with `f`, in the order of [`Self::face_edges`].
    pub fn face_neighbors(&self, f: usize) -> [usize; 3] {
        self.face_edges(f).map(|e| {
            let [x, y] = self.edge_faces[e];
            if x == f {
                y
            } else {
                x
            }
        })
    }

    /// Cyclic link of `k`, starting at its smallest neighbor.
    pub fn link(&self, k: usize) -> &[LinkSlot] {
        &self.links[k]
    }

    pub fn valency(&self, k: usize) -> usize {
        self.links[k].len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic()) / 2) as usize
    }

    pub fn dual_graph(&self) -> DualGraph {
        DualGraph::new(self)
    }

    fn faces_connected(&self) -> bool {
        let mut seen = vec![false; self.faces.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(f) = queue.pop_front() {
            for g in self.face_neighbors(f) {
                if !seen[g] {
                    seen[g] = true;
                    count += 1;
                    queue.push_back(g);
                }
            }
        }
        count == self.faces.len()
    }
}

/// Genus `g` with `V - E + F = 2 - 2g`.
pub fn genus(k: &Combinatoric) -> usize {
    k.genus()
}

/// Neighbors of `k` in the cyclic order induced by the orientation.
pub fn vertex_link(complex: &Combinatoric, k: usize) -> Result<Vec<usize>> {
    if k >= complex.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: k });
    }
    Ok(complex.link(k).iter().map(|s| s.neighbor).collect())
}
