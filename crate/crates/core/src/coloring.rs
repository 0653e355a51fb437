//! Colorings of the dual graph: colored corners of two-cells and arrows on
//! dual edges. A coloring is admissible when every two-cell carries exactly
//! three colors, counting the arrows pointing out of it and its colored
//! corners.
//!
//! The dual edge of an edge `{k, l}` separates the two-cells `k*` and `l*`;
//! an arrow on it points out of one of them and into the other.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::complex::DualGraph;
use crate::error::{Error, Result};

/// Colors a two-cell must carry.
const COLORS_PER_CELL: usize = 3;

/// The corner of two-cell `cell` centered at dual node `node`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualCorner {
    pub cell: usize,
    pub node: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualColoring {
    pub corners: BTreeSet<DualCorner>,
    /// Dual edge id → the two-cell the arrow points out of.
    pub arrows: BTreeMap<usize, usize>,
}

impl DualColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Colors carried by each two-cell; `ForeignSimplex` if anything does
    /// not belong to `d`.
    pub fn cell_counts(&self, d: &DualGraph) -> Result<Vec<usize>> {
        let mut counts = vec![0usize; d.cells().len()];
        for (&e, &cell) in &self.arrows {
            if e >= d.edge_count() {
                return Err(Error::ForeignSimplex(format!("dual edge {e}")));
            }
            if !d.edge_cells(e).contains(&cell) {
                return Err(Error::ForeignSimplex(format!("arrow on dual edge {e} out of cell {cell}")));
            }
            counts[cell] += 1;
        }
        for c in &self.corners {
            if c.cell >= counts.len() || !d.cell(c.cell).nodes.contains(&c.node) {
                return Err(Error::ForeignSimplex(format!("corner of cell {} at node {}", c.cell, c.node)));
            }
            counts[c.cell] += 1;
        }
        Ok(counts)
    }

    /// Dual edges without an arrow.
    pub fn uncolored_edges(&self, d: &DualGraph) -> Vec<usize> {
        (0..d.edge_count()).filter(|e| !self.arrows.contains_key(e)).collect()
    }

    /// Text report: `arrow e -> cell` (the cell the arrow points into),
    /// `corner cell a b c` (the corner at `b` between `a` and `c`) and
    /// `uncolored e` lines.
    pub fn report<'a>(&'a self, d: &'a DualGraph) -> ColoringReport<'a> {
        ColoringReport { coloring: self, dual: d }
    }
}

pub struct ColoringReport<'a> {
    coloring: &'a DualColoring,
    dual: &'a DualGraph,
}

impl fmt::Display for ColoringReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dual;
        for (&e, &out_of) in &self.coloring.arrows {
            let [a, b] = d.edge_cells(e);
            writeln!(f, "arrow {e} -> {}", if out_of == a { b } else { a })?;
        }
        for c in &self.coloring.corners {
            let nodes = &d.cell(c.cell).nodes;
            let n = nodes.len();
            let i = nodes.iter().position(|&x| x == c.node).unwrap_or(0);
            writeln!(f, "corner {} {} {} {}", c.cell, nodes[(i + n - 1) % n], c.node, nodes[(i + 1) % n])?;
        }
        for e in self.coloring.uncolored_edges(d) {
            writeln!(f, "uncolored {e}")?;
        }
        Ok(())
    }
}

/// Every two-cell carries exactly three colors.
pub fn is_admissible(d: &DualGraph, col: &DualColoring) -> Result<bool> {
    Ok(col.cell_counts(d)?.iter().all(|&c| c == COLORS_PER_CELL))
}

/// Searches for an admissible coloring with one arrow on every dual edge and
/// the six corners at the adjacent nodes `pair` (genus 0), or with arrows on
/// all but `6g − 6` dual edges and no corners (genus `g ≥ 1`).
///
/// `Ok(None)` means no such coloring exists for this instance. Without a
/// pair, genus 0 uses the two nodes on dual edge 0.
pub fn find_epc_coloring(d: &DualGraph, g: usize, pair: Option<(usize, usize)>) -> Result<Option<DualColoring>> {
    let chi = d.cells().len() as i64 - d.edge_count() as i64 + d.node_count() as i64;
    if chi != 2 - 2 * g as i64 {
        return Err(Error::ArgumentMismatch(format!("genus {g} does not match the dual graph")));
    }
    let mut coloring = DualColoring::new();
    let mut capacity = vec![COLORS_PER_CELL; d.cells().len()];
    let (start_nodes, required) = if g == 0 {
        let (a, b) = pair.unwrap_or_else(|| {
            let [a, b] = d.edge_nodes(0);
            (a, b)
        });
        if a >= d.node_count() || b >= d.node_count() || d.edge_between(a, b).is_none() {
            return Err(Error::ArgumentMismatch(format!("dual nodes {a} and {b} are not adjacent")));
        }
        for node in [a, b] {
            for (cell, c) in d.cells().iter().enumerate() {
                if c.nodes.contains(&node) {
                    coloring.corners.insert(DualCorner { cell, node });
                    capacity[cell] -= 1;
                }
            }
        }
        (vec![a, b], d.edge_count())
    } else {
        if pair.is_some() {
            return Err(Error::ArgumentMismatch(format!("a corner pair applies to genus 0 only, not genus {g}")));
        }
        (vec![0], COLORS_PER_CELL * d.cells().len())
    };
    let order = edges_by_distance(d, &start_nodes);
    let mut orientation = Orientation { d, capacity, load: vec![0; d.cells().len()], out_of: vec![None; d.edge_count()] };
    let mut assigned = 0;
    for e in order {
        let mut visited = vec![false; d.cells().len()];
        if orientation.augment(e, &mut visited) {
            assigned += 1;
        }
    }
    if assigned != required {
        return Ok(None);
    }
    for (e, cell) in orientation.out_of.iter().enumerate() {
        if let Some(cell) = cell {
            coloring.arrows.insert(e, *cell);
        }
    }
    debug_assert!(is_admissible(d, &coloring).unwrap_or(false));
    Ok(Some(coloring))
}

/// Dual edges in breadth-first order from the given nodes.
fn edges_by_distance(d: &DualGraph, start: &[usize]) -> Vec<usize> {
    let mut seen_node = vec![false; d.node_count()];
    let mut seen_edge = vec![false; d.edge_count()];
    let mut queue: VecDeque<usize> = start.iter().copied().collect();
    for &s in start {
        seen_node[s] = true;
    }
    let mut order = Vec::with_capacity(d.edge_count());
    while let Some(node) = queue.pop_front() {
        for e in d.node_edges(node) {
            if !seen_edge[e] {
                seen_edge[e] = true;
                order.push(e);
            }
            let [x, y] = d.edge_nodes(e);
            let other = if x == node { y } else { x };
            if !seen_node[other] {
                seen_node[other] = true;
                queue.push_back(other);
            }
        }
    }
    order
}

/// Arrows as a matching of dual edges into two-cells with bounded load.
struct Orientation<'a> {
    d: &'a DualGraph,
    capacity: Vec<usize>,
    load: Vec<usize>,
    out_of: Vec<Option<usize>>,
}

impl Orientation<'_> {
    /// Gives edge `e` an arrow, moving earlier arrows along an alternating
    /// path when both cells are full.
    fn augment(&mut self, e: usize, visited: &mut [bool]) -> bool {
        for cell in self.d.edge_cells(e) {
            if visited[cell] {
                continue;
            }
            visited[cell] = true;
            if self.load[cell] < self.capacity[cell] {
                self.set(e, cell);
                return true;
            }
            let holders: Vec<usize> =
                self.d.cell(cell).edges.iter().copied().filter(|&x| self.out_of[x] == Some(cell)).collect();
            for other in holders {
                self.unset(other);
                if self.augment(other, visited) {
                    self.set(e, cell);
                    return true;
                }
                self.set(other, cell);
            }
        }
        false
    }

    fn set(&mut self, e: usize, cell: usize) {
        self.out_of[e] = Some(cell);
        self.load[cell] += 1;
    }

    fn unset(&mut self, e: usize) {
        if let Some(cell) = self.out_of[e].take() {
            self.load[cell] -= 1;
        }
    }
}
