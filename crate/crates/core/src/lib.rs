//! Alpha-fractal interpolation functions on the Sierpinski gasket.
//!
//! * [`gasket`]: base triangle, contractions, addresses and the vertex
//!   lattices `V_m`.
//! * [`expr`]: parser and evaluator for scalar fields in `x`, `y`.
//! * [`fractal`]: validated problem specs and the evaluators of `f^alpha`.
//! * [`verify`]: sampled checks of the stability bounds.

pub mod expr;
pub mod fixtures;
pub mod fractal;
pub mod gasket;
pub mod verify;

pub use expr::{builtin_figure_fields, parse, FieldExpr, ParseError, ScalarField};
pub use fractal::{
    sup_norm_estimate, validate, FractalError, GraphPoint, GraphSample, PointValue, ProblemSpec,
    RbTrace, ScaleVector, VmTable,
};
pub use gasket::{Address, CellIndex, GasketError, Point2, VertexId, VmLattice};
pub use verify::{BoundReport, FieldPair, SweepReport};
