use alloc::string::String;

/// Everything that can go wrong in the library.
///
/// Variants are grouped by the stage that raises them. Vertex and face
/// indices refer to the [`Combinatoric`](crate::Combinatoric) in use.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    // complex
    #[error("a closed surface needs at least 4 faces and 4 vertices, got {faces} faces on {vertices} vertices")]
    TooSmall { vertices: usize, faces: usize },
    #[error("face {face} is not a triangle on three distinct vertices below {vertex_count}")]
    InvalidFace { face: usize, vertex_count: usize },
    #[error("vertex {vertex} is not used by any face")]
    UnusedVertex { vertex: usize },
    #[error("edge {{{a},{b}}} lies in {count} faces, expected 2")]
    NonManifoldEdge { a: usize, b: usize, count: usize },
    #[error("edge {{{a},{b}}} is traversed in the same direction by both of its faces")]
    InconsistentOrientation { a: usize, b: usize },
    #[error("face-adjacency graph is not connected")]
    DisconnectedComplex,
    #[error("link of vertex {vertex} is not a single cycle")]
    PinchedVertex { vertex: usize },
    #[error("vertex {vertex} out of range")]
    VertexOutOfRange { vertex: usize },
    #[error("expected genus 0, complex has genus {genus}")]
    GenusNotZero { genus: usize },
    #[error("disc growth search exhausted without covering the surface")]
    SearchExhausted,

    // coloring
    #[error("coloring references a simplex that is not in the dual graph: {0}")]
    ForeignSimplex(String),
    #[error("argument mismatch: {0}")]
    ArgumentMismatch(String),

    // triangle kernels and cones
    #[error("degenerate euclidean triangle ({a}, {b}, {c})")]
    DegenerateTriangle { a: f64, b: f64, c: f64 },
    #[error("degenerate spherical triangle (cosine argument {argument})")]
    DegenerateSphericalTriangle { argument: f64 },
    #[error("degenerate cone: {0}")]
    DegenerateCone(String),
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("cone edges {first}, {second}, {third} are not linearly independent")]
    NotInGeneralPosition { first: usize, second: usize, third: usize },
    #[error("missing chart for vertex {vertex}")]
    MissingChart { vertex: usize },
    #[error("missing entry: {0}")]
    MissingEntry(String),

    // moduli
    #[error("faces {first} and {second} do not share an edge")]
    FacesNotAdjacent { first: usize, second: usize },
    #[error("matrix has non-finite entries")]
    NonFiniteMatrix,
    #[error("point is not a solution: residual {residual:e}")]
    NotASolution { residual: f64 },

    // build
    #[error("face {face} of the embedding is degenerate")]
    DegenerateFace { face: usize },
    #[error("edge {{{a},{b}}} is folded flat (dihedral angle 0)")]
    ZeroDihedral { a: usize, b: usize },
    #[error("angle data is not in the moduli space: residual {residual:e}")]
    NotAMember { residual: f64 },
    #[error("cone of vertex {vertex} does not close up: deviation {deviation:e}")]
    ClosureFailure { vertex: usize, deviation: f64 },
    #[error("point triples are not congruent (distance mismatch {mismatch:e})")]
    NotCongruent { mismatch: f64 },
    #[error("point triple is collinear")]
    Collinear,
    #[error("embeddings have different combinatorics")]
    CombinatoricMismatch,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
