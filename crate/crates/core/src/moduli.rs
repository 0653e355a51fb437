//! The full constraint system on `(σ, δ, charts, ℓ)`: intrinsic rows per
//! face stacked over cone rows per vertex. Membership of angle data, and the
//! numerical rank analysis behind the dimension counts.
//!
//! Packed variable order: all `σ` by corner id, all `δ` by edge id, then per
//! vertex in ascending order its chart `α, β, γ, c`, then all `ℓ` by edge id.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use nalgebra::DMatrix;

use crate::angles::{DihedralAngles, EdgeLengths, SurfaceAngles};
use crate::coloring::find_epc_coloring;
use crate::complex::Combinatoric;
use crate::cones::{cone_angles_at, cone_residual, cone_row_count, lift_cone, ConeChart};
use crate::error::{Error, Result};
use crate::intrinsic::{g_in_raw, max_norm, propagate_lengths};
use crate::tolerance::{FD_STEP, NULLITY_RELATIVE, RESIDUAL};

pub type Matrix = DMatrix<f64>;

/// Central-difference Jacobian of `f` at `x`.
pub fn numeric_jacobian(f: impl Fn(&[f64]) -> Vec<f64>, x: &[f64], step: f64) -> Matrix {
    let rows = f(x).len();
    let mut j = Matrix::zeros(rows, x.len());
    let mut y = x.to_vec();
    for col in 0..x.len() {
        y[col] = x[col] + step;
        let plus = f(&y);
        y[col] = x[col] - step;
        let minus = f(&y);
        y[col] = x[col];
        for row in 0..rows {
            j[(row, col)] = (plus[row] - minus[row]) / (2.0 * step);
        }
    }
    j
}

/// Singular values in descending order and the cut separating the numerical
/// kernel from the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub threshold: f64,
}

impl Spectrum {
    /// Ratio between the smallest value kept and the largest value dropped;
    /// infinite when one side is empty.
    pub fn gap(&self) -> f64 {
        let kept = self.values.iter().copied().filter(|&s| s >= self.threshold).fold(f64::INFINITY, f64::min);
        let dropped = self.values.iter().copied().filter(|&s| s < self.threshold).fold(0.0, f64::max);
        if kept.is_infinite() || dropped == 0.0 {
            f64::INFINITY
        } else {
            kept / dropped
        }
    }
}

/// Column count minus numerical rank, where singular values below
/// `rel_threshold` times the largest one count as zero.
pub fn numeric_nullity(j: &Matrix, rel_threshold: f64) -> Result<(usize, Spectrum)> {
    if j.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteMatrix);
    }
    let mut values: Vec<f64> =
        if j.nrows() == 0 || j.ncols() == 0 { Vec::new() } else { j.singular_values().iter().copied().collect() };
    values.sort_by(|a, b| b.total_cmp(a));
    let largest = values.first().copied().unwrap_or(0.0);
    let threshold = rel_threshold * largest;
    let rank = if largest > 0.0 { values.iter().filter(|&&s| s >= threshold).count() } else { 0 };
    Ok((j.ncols() - rank, Spectrum { values, threshold }))
}

/// A point of the full system.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuliPoint {
    pub sigma: SurfaceAngles,
    pub delta: DihedralAngles,
    /// One chart per vertex.
    pub charts: Vec<ConeChart>,
    pub ell: EdgeLengths,
}

/// Offsets of the variable groups in the packed vector.
#[derive(Debug, Clone)]
struct Layout {
    corners: usize,
    edges: usize,
    /// `(offset, valency)` of each vertex chart.
    charts: Vec<(usize, usize)>,
    lengths: usize,
    total: usize,
    /// First row of each vertex's cone block; intrinsic rows come first.
    cone_rows: Vec<usize>,
    rows: usize,
}

impl Layout {
    fn new(k: &Combinatoric) -> Self {
        let corners = k.corner_count();
        let edges = k.edge_count();
        let mut offset = corners + edges;
        let mut row = 3 * k.face_count();
        let mut charts = Vec::with_capacity(k.vertex_count());
        let mut cone_rows = Vec::with_capacity(k.vertex_count());
        for v in 0..k.vertex_count() {
            let n = k.valency(v);
            charts.push((offset, n));
            cone_rows.push(row);
            offset += 4 * n - 9;
            row += cone_row_count(n);
        }
        Layout { corners, edges, charts, lengths: offset, total: offset + edges, cone_rows, rows: row }
    }

    fn pack(&self, point: &ModuliPoint) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.total);
        x.extend_from_slice(point.sigma.as_slice());
        x.extend_from_slice(point.delta.as_slice());
        for chart in &point.charts {
            chart.pack(&mut x);
        }
        x.extend_from_slice(point.ell.as_slice());
        x
    }

    fn residual(&self, k: &Combinatoric, x: &[f64]) -> Vec<f64> {
        let sigma = &x[..self.corners];
        let delta = &x[self.corners..self.corners + self.edges];
        let mut out = g_in_raw(k, &x[self.lengths..], sigma);
        let mut cone_sigma = Vec::new();
        let mut cone_delta = Vec::new();
        for (v, &(offset, n)) in self.charts.iter().enumerate() {
            cone_sigma.clear();
            cone_delta.clear();
            for s in k.link(v) {
                cone_sigma.push(sigma[s.corner]);
                cone_delta.push(delta[s.edge]);
            }
            cone_residual(&cone_sigma, &cone_delta, &x[offset..offset + 4 * n - 9], &mut out);
        }
        out
    }

    fn angle_columns(&self) -> core::ops::Range<usize> {
        0..self.lengths
    }

    fn length_columns(&self) -> core::ops::Range<usize> {
        self.lengths..self.total
    }
}

fn check_point(k: &Combinatoric, point: &ModuliPoint) -> Result<()> {
    point.sigma.check_len(k)?;
    point.delta.check_len(k)?;
    point.ell.check_len(k)?;
    for v in 0..k.vertex_count() {
        let chart = point.charts.get(v).ok_or(Error::MissingChart { vertex: v })?;
        if chart.variable_count() != 4 * k.valency(v) - 9 || chart.alpha.len() != k.valency(v) - 2 {
            return Err(Error::MissingEntry(format!("chart of vertex {v} has the wrong size")));
        }
    }
    Ok(())
}

/// Intrinsic residual (`3F` rows, face-major) followed by the cone residuals
/// of all vertices in ascending order.
pub fn g_full(k: &Combinatoric, point: &ModuliPoint) -> Result<Vec<f64>> {
    check_point(k, point)?;
    let layout = Layout::new(k);
    Ok(layout.residual(k, &layout.pack(point)))
}

/// Rows of [`g_full`] with the intrinsic rows of the two given faces removed.
fn reduced_rows(k: &Combinatoric, dropped: [usize; 2]) -> Result<Vec<usize>> {
    let [f, g] = dropped;
    shared_edge(k, dropped)?;
    let rows = Layout::new(k).rows;
    Ok((0..rows).filter(|&r| !(r < 3 * k.face_count() && (r / 3 == f || r / 3 == g))).collect())
}

/// [`g_full`] without the intrinsic rows of two adjacent faces.
pub fn g_full_reduced(k: &Combinatoric, point: &ModuliPoint, dropped: [usize; 2]) -> Result<Vec<f64>> {
    let keep = reduced_rows(k, dropped)?;
    let full = g_full(k, point)?;
    Ok(keep.into_iter().map(|r| full[r]).collect())
}

/// The two faces on the lexicographically smallest edge.
pub fn default_dropped_faces(k: &Combinatoric) -> [usize; 2] {
    k.edge_faces(0)
}

/// Outcome of [`check_membership`].
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub member: bool,
    /// Max-norm of the full residual; infinite when no point could be built.
    pub residual: f64,
    /// The row block with the largest residual, or the step that failed.
    pub worst: String,
    pub point: Option<ModuliPoint>,
}

impl Membership {
    fn rejected(worst: String) -> Self {
        Membership { member: false, residual: f64::INFINITY, worst, point: None }
    }
}

/// Name of the row block containing `row` of the full system.
fn block_name(k: &Combinatoric, layout: &Layout, row: usize) -> String {
    if row < 3 * k.face_count() {
        let [a, b, c] = k.faces()[row / 3];
        return format!("intrinsic face {} ({a} {b} {c}) row {}", row / 3, row % 3);
    }
    let v = layout.cone_rows.iter().rposition(|&start| start <= row).unwrap_or(0);
    let local = row - layout.cone_rows[v];
    let n = k.valency(v);
    if local < 3 * (n - 2) {
        format!("cone vertex {v} triangle {} row {}", local / 3 + 1, local % 3)
    } else {
        format!("cone vertex {v} dihedral row {}", local - 3 * (n - 2) + 1)
    }
}

/// Whether `(σ, δ)` are the angles of a polyhedron on `k`.
///
/// Lengths are propagated from edge 0 with length 1, every cone is lifted to
/// its chart, and the full residual must have max-norm at most `2 tol` (the
/// tolerance scaled by one plus the base length).
pub fn check_membership(k: &Combinatoric, sigma: &SurfaceAngles, delta: &DihedralAngles, tol: f64) -> Membership {
    const BASE_LENGTH: f64 = 1.0;
    if sigma.check_len(k).is_err() || delta.check_len(k).is_err() {
        return Membership::rejected(String::from("input size"));
    }
    if let Some(c) = sigma.as_slice().iter().position(|&s| !(s > 0.0 && s < PI)) {
        return Membership::rejected(format!("face angle {c} outside (0, pi)"));
    }
    if let Some(e) = delta.as_slice().iter().position(|&d| !(d > 0.0 && d < 2.0 * PI)) {
        return Membership::rejected(format!("dihedral angle {e} outside (0, 2pi)"));
    }
    let ell = match propagate_lengths(k, sigma, 0, BASE_LENGTH) {
        Ok(ell) => ell,
        Err(e) => return Membership::rejected(format!("length propagation: {e}")),
    };
    let mut charts = Vec::with_capacity(k.vertex_count());
    for v in 0..k.vertex_count() {
        match lift_cone(&cone_angles_at(k, sigma, delta, v)) {
            Ok(chart) => charts.push(chart),
            Err(e) => return Membership::rejected(format!("cone vertex {v} lift: {e}")),
        }
    }
    let point = ModuliPoint { sigma: sigma.clone(), delta: delta.clone(), charts, ell };
    let layout = Layout::new(k);
    let r = layout.residual(k, &layout.pack(&point));
    let residual = max_norm(&r);
    let worst_row = (0..r.len()).max_by(|&a, &b| r[a].abs().total_cmp(&r[b].abs())).unwrap_or(0);
    let member = residual <= tol * (1.0 + BASE_LENGTH);
    Membership {
        member,
        residual,
        worst: block_name(k, &layout, worst_row),
        point: member.then_some(point),
    }
}

/// Jacobians of the subsystems at a point, all cut from one finite-difference
/// Jacobian of the full system.
#[derive(Debug, Clone)]
pub struct Jacobians {
    pub full: Matrix,
    layout_lengths: usize,
    layout_corners: usize,
    charts: Vec<(usize, usize)>,
    cone_rows: Vec<usize>,
    intrinsic_rows: usize,
}

impl Jacobians {
    pub fn at(k: &Combinatoric, point: &ModuliPoint) -> Result<Self> {
        check_point(k, point)?;
        let layout = Layout::new(k);
        let x = layout.pack(point);
        let full = numeric_jacobian(|y| layout.residual(k, y), &x, FD_STEP);
        Ok(Jacobians {
            full,
            layout_lengths: layout.lengths,
            layout_corners: layout.corners,
            charts: layout.charts,
            cone_rows: layout.cone_rows,
            intrinsic_rows: 3 * k.face_count(),
        })
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.full[(rows[r], cols[c])])
    }

    /// Intrinsic rows in the variables `σ, ℓ`.
    pub fn intrinsic(&self) -> Matrix {
        let rows: Vec<usize> = (0..self.intrinsic_rows).collect();
        let cols: Vec<usize> =
            (0..self.layout_corners).chain(self.layout_lengths..self.full.ncols()).collect();
        self.select(&rows, &cols)
    }

    /// Cone rows of vertex `v` in its own variables `σ^v, δ^v` and chart.
    pub fn cone(&self, k: &Combinatoric, v: usize) -> Matrix {
        let (offset, n) = self.charts[v];
        let rows: Vec<usize> = (self.cone_rows[v]..self.cone_rows[v] + cone_row_count(n)).collect();
        let mut cols: Vec<usize> = k.link(v).iter().map(|s| s.corner).collect();
        cols.extend(k.link(v).iter().map(|s| self.layout_corners + s.edge));
        cols.extend(offset..offset + 4 * n - 9);
        self.select(&rows, &cols)
    }

    /// All cone rows in the variables `σ, δ` and all charts.
    pub fn link_equations(&self) -> Matrix {
        let rows: Vec<usize> = (self.intrinsic_rows..self.full.nrows()).collect();
        let cols: Vec<usize> = (0..self.layout_lengths).collect();
        self.select(&rows, &cols)
    }

    /// The full system without the intrinsic rows of two adjacent faces.
    pub fn reduced(&self, k: &Combinatoric, dropped: [usize; 2]) -> Result<Matrix> {
        let rows = reduced_rows(k, dropped)?;
        let cols: Vec<usize> = (0..self.full.ncols()).collect();
        Ok(self.select(&rows, &cols))
    }

    /// [`Self::reduced`] without the length column of the edge shared by
    /// the two dropped faces, which no remaining row involves.
    pub fn reduced_pinned(&self, k: &Combinatoric, dropped: [usize; 2]) -> Result<Matrix> {
        let rows = reduced_rows(k, dropped)?;
        let shared = shared_edge(k, dropped)?;
        let cols: Vec<usize> = (0..self.full.ncols()).filter(|&c| c != self.layout_lengths + shared).collect();
        Ok(self.select(&rows, &cols))
    }

    /// Number of angle and chart columns preceding the length columns.
    pub fn length_offset(&self) -> usize {
        self.layout_lengths
    }
}

/// The edge common to two adjacent faces.
pub fn shared_edge(k: &Combinatoric, faces: [usize; 2]) -> Result<usize> {
    let [f, g] = faces;
    if f >= k.face_count() || g >= k.face_count() || f == g {
        return Err(Error::FacesNotAdjacent { first: f, second: g });
    }
    let other = k.face_edges(g);
    k.face_edges(f).into_iter().find(|e| other.contains(e)).ok_or(Error::FacesNotAdjacent { first: f, second: g })
}

/// Direction scaling all lengths and fixing every angle, as a packed vector.
pub fn scale_direction(k: &Combinatoric, point: &ModuliPoint) -> Result<Vec<f64>> {
    check_point(k, point)?;
    let layout = Layout::new(k);
    let mut v = vec![0.0; layout.total];
    for (slot, l) in v[layout.length_columns()].iter_mut().zip(point.ell.as_slice()) {
        *slot = *l;
    }
    debug_assert!(layout.angle_columns().end == layout.lengths);
    Ok(v)
}

/// One line of a [`DimensionReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionCheck {
    pub name: String,
    /// `None` where no formula applies: the full-system dimensions are
    /// only known for sphere-like surfaces.
    pub expected: Option<usize>,
    pub actual: usize,
    /// Singular-value gap between the kernel and the rest.
    pub gap: f64,
}

impl DimensionCheck {
    pub fn holds(&self) -> bool {
        self.expected.is_none_or(|e| e == self.actual)
    }
}

/// Numerical nullities compared with the dimension formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub checks: Vec<DimensionCheck>,
    /// `|J v| / |v|` for the length-scaling direction `v`.
    pub scale_derivative: f64,
    /// Whether an admissible coloring of the required pattern was found;
    /// the formulas are stated under its existence.
    pub coloring_found: bool,
    pub dropped_faces: [usize; 2],
}

impl DimensionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(DimensionCheck::holds)
    }

    pub fn check(&self, name: &str) -> Option<&DimensionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension-report")?;
        writeln!(f, "coloring {}", if self.coloring_found { "found" } else { "not-found (formula comparison only)" })?;
        writeln!(f, "dropped-faces {} {}", self.dropped_faces[0], self.dropped_faces[1])?;
        for c in &self.checks {
            writeln!(
                f,
                "{} expected={} actual={} gap={:.3e} {}",
                c.name,
                c.expected.map_or(String::from("n/a"), |e| format!("{e}")),
                c.actual,
                c.gap,
                match (c.expected, c.holds()) {
                    (None, _) => "unchecked",
                    (_, true) => "ok",
                    (_, false) => "MISMATCH",
                }
            )?;
        }
        writeln!(f, "scale-direction derivative={:.3e}", self.scale_derivative)
    }
}

/// Nullities of the intrinsic system, every cone, the assembled cone
/// system and the full system, compared with the dimension formulas.
///
/// The full system is measured as is, with the intrinsic rows of two
/// adjacent faces dropped, and with those rows dropped and the length of
/// their common edge removed from the variables, since no remaining row
/// involves it. The quotient by the scale direction is taken from the full
/// system.
pub fn verify_dimensions(k: &Combinatoric, point: &ModuliPoint) -> Result<DimensionReport> {
    verify_dimensions_with(k, point, default_dropped_faces(k))
}

pub fn verify_dimensions_with(k: &Combinatoric, point: &ModuliPoint, dropped: [usize; 2]) -> Result<DimensionReport> {
    let residual = max_norm(&g_full(k, point)?);
    if !(residual <= RESIDUAL) {
        return Err(Error::NotASolution { residual });
    }
    let jac = Jacobians::at(k, point)?;
    let e = k.edge_count();
    let g = k.genus();
    let mut checks = Vec::new();
    let sphere = |n: usize| (g == 0).then_some(n);
    let mut push = |name: String, expected: Option<usize>, m: &Matrix| -> Result<usize> {
        let (actual, spectrum) = numeric_nullity(m, NULLITY_RELATIVE)?;
        checks.push(DimensionCheck { name, expected, actual, gap: spectrum.gap() });
        Ok(actual)
    };
    push(String::from("intrinsic"), Some(e), &jac.intrinsic())?;
    for v in 0..k.vertex_count() {
        push(format!("cone {v}"), Some(2 * k.valency(v) - 3), &jac.cone(k, v))?;
    }
    push(String::from("link-equations"), Some(2 * e + 6 * g - 6), &jac.link_equations())?;
    let full = push(String::from("full"), sphere(e), &jac.full)?;
    push(String::from("full-reduced"), sphere(e), &jac.reduced(k, dropped)?)?;
    push(String::from("full-reduced-pinned"), sphere(e), &jac.reduced_pinned(k, dropped)?)?;
    let direction = nalgebra::DVector::from_vec(scale_direction(k, point)?);
    let scale_derivative = (&jac.full * &direction).norm() / direction.norm();
    let in_kernel = scale_derivative < 1e-6;
    checks.push(DimensionCheck {
        name: String::from("quotient"),
        expected: sphere(e - 1),
        actual: if in_kernel { full - 1 } else { full },
        gap: if in_kernel { f64::INFINITY } else { 0.0 },
    });
    let coloring_found = matches!(find_epc_coloring(&k.dual_graph(), g, None), Ok(Some(_)));
    Ok(DimensionReport { checks, scale_derivative, coloring_found, dropped_faces: dropped })
}
