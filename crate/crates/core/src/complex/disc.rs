use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::Combinatoric;
use crate::error::{Error, Result};

/// A union of closed vertex stars, tracked as a face mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarUnion {
    faces: Vec<bool>,
    covered: usize,
}

impl StarUnion {
    pub fn empty(k: &Combinatoric) -> Self {
        StarUnion { faces: vec![false; k.face_count()], covered: 0 }
    }

    pub fn add_star(&mut self, k: &Combinatoric, v: usize) {
        for s in k.link(v) {
            if !self.faces[s.face] {
                self.faces[s.face] = true;
                self.covered += 1;
            }
        }
    }

    pub fn contains_face(&self, f: usize) -> bool {
        self.faces[f]
    }

    pub fn face_mask(&self) -> &[bool] {
        &self.faces
    }

    pub fn is_everything(&self) -> bool {
        self.covered == self.faces.len()
    }

    /// Whether `v` is a vertex of the union.
    pub fn touches(&self, k: &Combinatoric, v: usize) -> bool {
        k.link(v).iter().any(|s| self.faces[s.face])
    }

    /// Vertices of the union whose star is not entirely contained in it.
    pub fn boundary_vertices(&self, k: &Combinatoric) -> Vec<usize> {
        (0..k.vertex_count())
            .filter(|&v| {
                let inside = k.link(v).iter().filter(|s| self.faces[s.face]).count();
                inside > 0 && inside < k.valency(v)
            })
            .collect()
    }
}

/// Positions (in link order) of the faces around `v` selected by `mask`, if
/// they form one cyclically contiguous run. `Some(None)` means all faces.
fn contiguous_run(k: &Combinatoric, v: usize, mask: &[bool]) -> Option<Option<(usize, usize)>> {
    let link = k.link(v);
    let n = link.len();
    let inside: Vec<bool> = link.iter().map(|s| mask[s.face]).collect();
    let count = inside.iter().filter(|b| **b).count();
    if count == n {
        return Some(None);
    }
    if count == 0 {
        return None;
    }
    // start of the run: an inside slot preceded by an outside slot
    let starts: Vec<usize> = (0..n).filter(|&i| inside[i] && !inside[(i + n - 1) % n]).collect();
    if starts.len() != 1 {
        return None;
    }
    Some(Some((starts[0], count)))
}

/// Whether the faces selected by `mask` form a combinatorial closed disc:
/// edge-connected, a surface with boundary at every vertex, and `χ = 1`.
pub fn is_disc(k: &Combinatoric, mask: &[bool]) -> bool {
    let faces: Vec<usize> = (0..k.face_count()).filter(|&f| mask[f]).collect();
    let Some(&first) = faces.first() else {
        return false;
    };
    let mut seen = vec![false; k.face_count()];
    seen[first] = true;
    let mut stack = vec![first];
    let mut reached = 1;
    while let Some(f) = stack.pop() {
        for g in k.face_neighbors(f) {
            if mask[g] && !seen[g] {
                seen[g] = true;
                reached += 1;
                stack.push(g);
            }
        }
    }
    if reached != faces.len() {
        return false;
    }
    let mut vertices = 0i64;
    for v in 0..k.vertex_count() {
        if k.link(v).iter().any(|s| mask[s.face]) {
            vertices += 1;
            if contiguous_run(k, v, mask).is_none() {
                return false;
            }
        }
    }
    let edges = (0..k.edge_count())
        .filter(|&e| k.edge_faces(e).iter().any(|&f| mask[f]))
        .count() as i64;
    vertices - edges + faces.len() as i64 == 1
}

/// Disc-growth ordering starting at vertex 0.
pub fn disc_growth_order(k: &Combinatoric) -> Result<Vec<usize>> {
    disc_growth_order_from(k, 0)
}

/// Orders all vertices so that every prefix union of closed stars is a disc
/// until the union covers the surface; remaining vertices follow ascending.
///
/// Each new vertex lies on the boundary of the current disc and its star
/// meets the disc in one contiguous fan of faces. Among valid candidates the
/// smallest index is taken; the search backtracks if that ever dead-ends.
pub fn disc_growth_order_from(k: &Combinatoric, start: usize) -> Result<Vec<usize>> {
    if k.genus() != 0 {
        return Err(Error::GenusNotZero { genus: k.genus() });
    }
    if start >= k.vertex_count() {
        return Err(Error::VertexOutOfRange { vertex: start });
    }
    let mut union = StarUnion::empty(k);
    union.add_star(k, start);
    let mut order = vec![start];
    if !union.is_everything() && !is_disc(k, union.face_mask()) {
        return Err(Error::SearchExhausted);
    }
    if !grow(k, &mut union, &mut order) {
        return Err(Error::SearchExhausted);
    }
    let placed: BTreeSet<usize> = order.iter().copied().collect();
    order.extend((0..k.vertex_count()).filter(|v| !placed.contains(v)));
    Ok(order)
}

fn grow(k: &Combinatoric, union: &mut StarUnion, order: &mut Vec<usize>) -> bool {
    if union.is_everything() {
        return true;
    }
    for c in union.boundary_vertices(k) {
        if order.contains(&c) {
            continue;
        }
        // the shared part must be a single fan around c
        if !matches!(contiguous_run(k, c, union.face_mask()), Some(Some(_))) {
            continue;
        }
        let mut next = union.clone();
        next.add_star(k, c);
        if !next.is_everything() && !is_disc(k, next.face_mask()) {
            continue;
        }
        order.push(c);
        let saved = core::mem::replace(union, next);
        if grow(k, union, order) {
            return true;
        }
        *union = saved;
        order.pop();
    }
    false
}
