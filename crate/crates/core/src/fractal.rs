//! Construction of the alpha-fractal function `f^alpha_b` on the gasket.
//!
//! `f^alpha` is the fixed point of the Read-Bajraktarevic operator
//!
//! ```text
//! (T g)(t) = f(t) + alpha_i * (g - b)(u_i^{-1}(t))    for t in u_i(gasket)
//! ```
//!
//! Three independent evaluators are provided: exact forward recursion over
//! the vertex lattices ([`ProblemSpec::vm_table`]), truncated unrolling along
//! an address ([`ProblemSpec::eval_point`]) and plain operator iteration on a
//! lattice ([`ProblemSpec::rb_iterate`]). [`ProblemSpec::chaos_game`] samples
//! the graph through the IFS maps `H_i(t, x) = (u_i(t), M_i(t, x))`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{EvalError, ScalarField, TableField};
use crate::gasket::{
    apply_map, base_vertices, shared_lattice, Address, CellIndex, GasketError, GridKey, Point2,
    VmLattice, MAX_DEPTH,
};

/// Tolerance for functional-equation residuals and shared-vertex agreement.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Corner-compatibility tolerance for user supplied pairs.
pub const DEFAULT_COMPAT_TOL: f64 = 1e-9;
/// Corner-compatibility tolerance for the reference figures, whose captions
/// round `sqrt(3)/2` to `0.866`.
pub const FIGURE_COMPAT_TOL: f64 = 1e-3;
pub const DEFAULT_BURN_IN: usize = 50;
/// Lattice depth used for sampled sup norms.
pub const NORM_DEPTH: usize = 8;
const MAX_NORM_DEPTH: usize = 10;
const MAX_RB_DEPTH: usize = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FractalError {
    #[error("scale vector {alpha} has sup norm {sup} >= 1")]
    ScaleOutOfRange { alpha: ScaleVector, sup: f64 },
    #[error("base differs from f by {deviation:e} at corner x{corner} (tolerance {tol:e})")]
    IncompatibleBase {
        corner: CellIndex,
        deviation: f64,
        tol: f64,
    },
    #[error("depth {depth} exceeds {max}")]
    DepthTooLarge { depth: usize, max: usize },
    #[error("parents disagree at {point}: {first} vs {second}")]
    ConsistencyFailure {
        point: Point2,
        first: f64,
        second: f64,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Gasket(#[from] GasketError),
}

fn depth_guard(depth: usize, max: usize) -> Result<(), FractalError> {
    if depth > max {
        Err(FractalError::DepthTooLarge { depth, max })
    } else {
        Ok(())
    }
}

/// Vertical scaling factors `(alpha_1, alpha_2, alpha_3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleVector([f64; 3]);

impl ScaleVector {
    pub const ZERO: ScaleVector = ScaleVector([0.0; 3]);

    pub const fn new(a1: f64, a2: f64, a3: f64) -> Self {
        ScaleVector([a1, a2, a3])
    }

    pub const fn uniform(a: f64) -> Self {
        ScaleVector([a; 3])
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn get(&self, i: CellIndex) -> f64 {
        self.0[i.slot()]
    }

    /// `max_i |alpha_i|`
    pub fn sup_norm(&self) -> f64 {
        self.0.iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }

    pub fn distance(&self, other: &ScaleVector) -> f64 {
        (0..3).fold(0.0f64, |m, k| m.max((self.0[k] - other.0[k]).abs()))
    }

    /// `self + radius * direction`
    pub fn offset(&self, direction: [f64; 3], radius: f64) -> ScaleVector {
        let [a1, a2, a3] = self.0;
        ScaleVector([
            a1 + radius * direction[0],
            a2 + radius * direction[1],
            a3 + radius * direction[2],
        ])
    }

    fn check(&self) -> Result<(), FractalError> {
        let sup = self.sup_norm();
        if sup < 1.0 && self.0.iter().all(|a| a.is_finite()) {
            Ok(())
        } else {
            Err(FractalError::ScaleOutOfRange { alpha: *self, sup })
        }
    }
}

impl fmt::Display for ScaleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3] = self.0;
        write!(f, "({a1}, {a2}, {a3})")
    }
}

/// Sampled sup norms of `f` and of the base, on `V_8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampledNorms {
    pub f: f64,
    pub base: f64,
}

/// A validated triple `(f, b, alpha)`.
///
/// Corner mismatches `d_j = b(x_j) - f(x_j)` that pass the tolerance are
/// removed by subtracting their barycentric interpolant from `b`, so the
/// base actually used agrees with `f` on `V_0` to rounding. Without this the
/// operator has no continuous fixed point and shared lattice vertices get
/// two different values. [`ProblemSpec::validate_raw`] skips the step.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    f: ScalarField,
    b: ScalarField,
    base: ScalarField,
    alpha: ScaleVector,
    compat_tol: f64,
    corner_deviation: [f64; 3],
    norms: SampledNorms,
}

pub fn validate(
    f: &ScalarField,
    b: &ScalarField,
    alpha: ScaleVector,
    tol: f64,
) -> Result<ProblemSpec, FractalError> {
    ProblemSpec::validate(f, b, alpha, tol)
}

impl ProblemSpec {
    pub fn validate(
        f: &ScalarField,
        b: &ScalarField,
        alpha: ScaleVector,
        tol: f64,
    ) -> Result<Self, FractalError> {
        Self::build(f, b, alpha, tol, true)
    }

    /// Like [`ProblemSpec::validate`] but uses `b` verbatim.
    pub fn validate_raw(
        f: &ScalarField,
        b: &ScalarField,
        alpha: ScaleVector,
        tol: f64,
    ) -> Result<Self, FractalError> {
        Self::build(f, b, alpha, tol, false)
    }

    fn build(
        f: &ScalarField,
        b: &ScalarField,
        alpha: ScaleVector,
        tol: f64,
        project: bool,
    ) -> Result<Self, FractalError> {
        alpha.check()?;
        let mut deviation = [0.0; 3];
        let mut worst: Option<(CellIndex, f64)> = None;
        for j in CellIndex::ALL {
            let p = j.corner();
            let d = b.eval(p)? - f.eval(p)?;
            deviation[j.slot()] = d;
            if worst.is_none_or(|(_, w)| d.abs() > w) {
                worst = Some((j, d.abs()));
            }
        }
        if let Some((corner, dev)) = worst {
            if dev.is_nan() || dev > tol {
                return Err(FractalError::IncompatibleBase {
                    corner,
                    deviation: dev,
                    tol,
                });
            }
        }

        let base = if project && deviation.iter().any(|&d| d != 0.0) {
            let inner = b.clone();
            ScalarField::from_fn(format!("{} [corner-adjusted]", b.name()), move |t| {
                let l = t.barycentric();
                let correction = deviation[0] * l[0] + deviation[1] * l[1] + deviation[2] * l[2];
                Ok(inner.eval(t)? - correction)
            })
        } else {
            b.clone()
        };

        let norms = SampledNorms {
            f: sup_norm_estimate(f, NORM_DEPTH)?,
            base: sup_norm_estimate(&base, NORM_DEPTH)?,
        };
        Ok(ProblemSpec {
            f: f.clone(),
            b: b.clone(),
            base,
            alpha,
            compat_tol: tol,
            corner_deviation: if project { deviation } else { [0.0; 3] },
            norms,
        })
    }

    /// Same `f` and base with a different scale vector.
    pub fn with_alpha(&self, alpha: ScaleVector) -> Result<Self, FractalError> {
        alpha.check()?;
        Ok(ProblemSpec {
            alpha,
            ..self.clone()
        })
    }

    pub fn f(&self) -> &ScalarField {
        &self.f
    }

    /// The base function as supplied.
    pub fn raw_base(&self) -> &ScalarField {
        &self.b
    }

    /// The base function the construction uses.
    pub fn base(&self) -> &ScalarField {
        &self.base
    }

    pub fn alpha(&self) -> ScaleVector {
        self.alpha
    }

    pub fn compat_tol(&self) -> f64 {
        self.compat_tol
    }

    /// Largest corner mismatch removed from the base (0 when none).
    pub fn base_adjustment(&self) -> f64 {
        self.corner_deviation
            .iter()
            .fold(0.0f64, |m, d| m.max(d.abs()))
    }

    pub fn norms(&self) -> SampledNorms {
        self.norms
    }

    /// `U + B`, where `B` is the base norm and
    /// `U = (F + |alpha| B) / (1 - |alpha|)` bounds `|f^alpha|`.
    pub fn a_priori_bound(&self) -> f64 {
        let r = self.alpha.sup_norm();
        let u = (self.norms.f + r * self.norms.base) / (1.0 - r);
        u + self.norms.base
    }

    /// Exact values of `f^alpha` on `V_m` by forward recursion
    /// `value(u_i(p)) = f(u_i(p)) + alpha_i (value(p) - b(p))`, seeded with `f`
    /// on `V_0`. Every vertex reached from two parents must agree.
    pub fn vm_table(&self, m: usize) -> Result<VmTable, FractalError> {
        depth_guard(m, MAX_DEPTH)?;
        let lattice = shared_lattice(m)?;

        let mut level: Vec<GridKey> = CellIndex::ALL.iter().map(|&j| GridKey::corner(j)).collect();
        let mut values = HashMap::with_capacity(3);
        for &k in &level {
            values.insert(k, self.f.eval(k.point())?);
        }

        for depth in 1..=m {
            let size = crate::gasket::vertex_count(depth);
            let mut next_values: HashMap<GridKey, f64> = HashMap::with_capacity(size);
            let mut next_level = Vec::with_capacity(size);
            for &p in &level {
                let carried = values[&p] - self.base.eval(p.point())?;
                for i in CellIndex::ALL {
                    let child = p.mapped(i);
                    let v = self.f.eval(child.point())? + self.alpha.get(i) * carried;
                    match next_values.entry(child) {
                        Entry::Occupied(e) => agree(child, *e.get(), v)?,
                        Entry::Vacant(e) => {
                            e.insert(v);
                            next_level.push(child);
                        }
                    }
                }
            }
            for &p in &level {
                agree(p, values[&p], next_values[&p])?;
            }
            level = next_level;
            values = next_values;
        }

        debug_assert_eq!(values.len(), lattice.len());
        let table = lattice.vertices().iter().map(|v| values[&v.key]).collect();
        Ok(VmTable {
            lattice,
            values: table,
            spec: self.clone(),
        })
    }

    /// `f^alpha` at the `corner` of cell `addr`, unrolling the functional
    /// equation `n` times along the point's address (continued with the
    /// corner letter past its end) and dropping the remainder.
    pub fn eval_vertex(
        &self,
        addr: &Address,
        corner: CellIndex,
        n: usize,
    ) -> Result<PointValue, FractalError> {
        let word = addr.word();
        let letter = |k: usize| word.get(k).copied().unwrap_or(corner);

        // s_k = u_{w_k} o ... o u_{w_last}(x_corner); s_k = x_corner past the word
        let needed = n.max(1).min(word.len());
        let mut orbit = vec![Point2::default(); needed];
        let mut p = corner.corner();
        for k in (0..word.len()).rev() {
            p = apply_map(word[k], p);
            if k < needed {
                orbit[k] = p;
            }
        }
        let point_at = |k: usize| if k < needed { orbit[k] } else { corner.corner() };

        let mut value = self.f.eval(point_at(0))?;
        let mut weight = 1.0;
        for k in 1..n {
            weight *= self.alpha.get(letter(k - 1));
            if weight == 0.0 {
                break;
            }
            let s = point_at(k);
            value += weight * (self.f.eval(s)? - self.base.eval(s)?);
        }
        let error_bound = self.alpha.sup_norm().powi(n as i32) * self.a_priori_bound();
        Ok(PointValue { value, error_bound })
    }

    /// [`ProblemSpec::eval_vertex`] anchored at the cell's `x1` corner.
    pub fn eval_point(&self, addr: &Address, n: usize) -> Result<PointValue, FractalError> {
        self.eval_vertex(addr, CellIndex::ONE, n)
    }

    /// Iterates `T` on the `V_m` lattice from `g_0 = f`, recording every
    /// iterate and the sup-norm step `|g_{k+1} - g_k|`.
    pub fn rb_iterate(&self, m: usize, iters: usize) -> Result<RbTrace, FractalError> {
        depth_guard(m, MAX_RB_DEPTH)?;
        let lattice = shared_lattice(m)?;

        // per vertex: (alpha_i, f(t), index of u_i^{-1}(t), b(u_i^{-1}(t)))
        let mut plan = Vec::with_capacity(lattice.len());
        for v in lattice.vertices() {
            let i = v.id.address.first().unwrap_or(v.id.corner);
            let pre = v
                .key
                .preimage(i)
                .and_then(|k| lattice.position(k))
                .expect("preimage of a lattice vertex lies in the lattice");
            let pre_point = lattice.vertices()[pre].point;
            plan.push((
                self.alpha.get(i),
                self.f.eval(v.point)?,
                pre,
                self.base.eval(pre_point)?,
            ));
        }

        let start: Vec<f64> = plan.iter().map(|&(_, fv, _, _)| fv).collect();
        let mut tables = vec![start];
        let mut deltas = Vec::with_capacity(iters);
        for _ in 0..iters {
            let prev = tables.last().expect("at least the start table");
            let next: Vec<f64> = plan
                .iter()
                .map(|&(a, fv, pre, bv)| fv + a * (prev[pre] - bv))
                .collect();
            deltas.push(sup_distance(prev, &next));
            tables.push(next);
        }
        Ok(RbTrace {
            lattice,
            tables,
            deltas,
        })
    }

    /// Samples `graph(f^alpha)` by applying uniformly chosen maps `H_i` from
    /// `(x1, f(x1))`; the first `burn_in` points are discarded.
    pub fn chaos_game(
        &self,
        count: usize,
        seed: u64,
        burn_in: usize,
    ) -> Result<GraphSample, FractalError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = base_vertices()[0];
        let mut z = self.f.eval(t)?;
        let mut points = Vec::with_capacity(count);
        let mut choices = Vec::with_capacity(burn_in + count);
        for step in 0..burn_in + count {
            let i = CellIndex::ALL[rng.random_range(0..3)];
            let a = self.alpha.get(i);
            let next = apply_map(i, t);
            // M_i(t, z) = a_i z + f(u_i(t)) - a_i b(t)
            z = a * z + self.f.eval(next)? - a * self.base.eval(t)?;
            t = next;
            choices.push(i);
            if step >= burn_in {
                points.push(GraphPoint { x: t.x, y: t.y, z });
            }
        }
        Ok(GraphSample {
            points,
            provenance: Provenance::ChaosGame { seed, burn_in },
            choices,
        })
    }

    /// Distance bound of every chaos-game point from the graph, from the
    /// start's worst case.
    pub fn chaos_bound(&self, burn_in: usize) -> f64 {
        self.alpha.sup_norm().powi(burn_in as i32) * self.a_priori_bound()
    }
}

fn agree(key: GridKey, first: f64, second: f64) -> Result<(), FractalError> {
    if (first - second).abs() <= RESIDUAL_TOL {
        Ok(())
    } else {
        Err(FractalError::ConsistencyFailure {
            point: key.point(),
            first,
            second,
        })
    }
}

pub(crate) fn sup_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Largest `|g|` over `V_depth`: a lower estimate of the sup norm. Table
/// fields report their largest stored magnitude.
pub fn sup_norm_estimate(g: &ScalarField, depth: usize) -> Result<f64, FractalError> {
    if let Some(table) = g.as_table() {
        return Ok(table.values().fold(0.0, |m, v| m.max(v.abs())));
    }
    depth_guard(depth, MAX_NORM_DEPTH)?;
    let lattice = shared_lattice(depth)?;
    let mut best = 0.0f64;
    for p in lattice.points() {
        best = best.max(g.eval(p)?.abs());
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Values of `f^alpha` on every canonical vertex of `V_m`.
#[derive(Debug, Clone)]
pub struct VmTable {
    lattice: Arc<VmLattice>,
    values: Vec<f64>,
    spec: ProblemSpec,
}

impl VmTable {
    pub fn depth(&self) -> usize {
        self.lattice.depth()
    }

    pub fn lattice(&self) -> &VmLattice {
        &self.lattice
    }

    /// Aligned with `lattice().vertices()`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn value(&self, key: GridKey) -> Option<f64> {
        self.lattice.position(key).map(|i| self.values[i])
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Largest `|value - f|` over the table.
    pub fn deviation_from_f(&self) -> Result<f64, FractalError> {
        let mut worst = 0.0f64;
        for (v, &val) in self.lattice.vertices().iter().zip(&self.values) {
            worst = worst.max((val - self.spec.f.eval(v.point)?).abs());
        }
        Ok(worst)
    }

    /// Largest `|value - f|` over the points of `V_1` (needs `m >= 1`).
    pub fn interpolation_error(&self) -> Result<f64, FractalError> {
        let v1 = shared_lattice(1)?;
        let mut worst = 0.0f64;
        for v in v1.vertices() {
            let Some(val) = self.value(v.key) else {
                return Err(FractalError::DepthTooLarge {
                    depth: 1,
                    max: self.depth(),
                });
            };
            worst = worst.max((val - self.spec.f.eval(v.point)?).abs());
        }
        Ok(worst)
    }

    /// Largest residual of `value(t) - f(t) - alpha_i (value - b)(u_i^{-1} t)`
    /// over every vertex `t` and every cell `u_i(gasket)` containing it.
    pub fn functional_residual(&self) -> Result<f64, FractalError> {
        let spec = &self.spec;
        let mut worst = 0.0f64;
        for (v, &val) in self.lattice.vertices().iter().zip(&self.values) {
            let ft = spec.f.eval(v.point)?;
            for i in CellIndex::ALL {
                let Some(pre) = v.key.preimage(i) else { continue };
                let Some(pre_val) = self.value(pre) else { continue };
                let r = val - ft - spec.alpha.get(i) * (pre_val - spec.base.eval(pre.point())?);
                worst = worst.max(r.abs());
            }
        }
        Ok(worst)
    }

    /// The table as a lattice-backed field.
    pub fn as_field(&self) -> ScalarField {
        let entries = self
            .lattice
            .vertices()
            .iter()
            .zip(&self.values)
            .map(|(v, &val)| (v.key, val));
        ScalarField::from_table(
            format!("f^alpha on V_{}", self.depth()),
            TableField::new(entries),
        )
    }
}

#[derive(Debug, Clone)]
pub struct RbTrace {
    pub lattice: Arc<VmLattice>,
    /// `g_0, g_1, ..., g_n`, aligned with `lattice.vertices()`.
    pub tables: Vec<Vec<f64>>,
    /// `|g_{k+1} - g_k|` over the lattice.
    pub deltas: Vec<f64>,
}

impl RbTrace {
    pub fn last(&self) -> &[f64] {
        self.tables.last().expect("trace holds the start table")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    ChaosGame { seed: u64, burn_in: usize },
    Table { depth: usize },
}

/// Points on `graph(f^alpha)`.
#[derive(Debug, Clone)]
pub struct GraphSample {
    pub points: Vec<GraphPoint>,
    pub provenance: Provenance,
    /// Chaos game map choices in application order; empty for tables.
    choices: Vec<CellIndex>,
}

impl GraphSample {
    pub fn from_table(table: &VmTable) -> Self {
        let points = table
            .lattice()
            .vertices()
            .iter()
            .zip(table.values())
            .map(|(v, &z)| GraphPoint {
                x: v.point.x,
                y: v.point.y,
                z,
            })
            .collect();
        GraphSample {
            points,
            provenance: Provenance::Table {
                depth: table.depth(),
            },
            choices: Vec::new(),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self.provenance {
            Provenance::ChaosGame { seed, .. } => Some(seed),
            Provenance::Table { .. } => None,
        }
    }

    /// Exact generating address of the `k`-th chaos point, to be read with
    /// the `x1` corner: the point is `u_{i_N} o ... o u_{i_1}(x1)`.
    pub fn address_of(&self, k: usize) -> Option<Address> {
        let Provenance::ChaosGame { burn_in, .. } = self.provenance else {
            return None;
        };
        let len = burn_in + k + 1;
        (len <= self.choices.len())
            .then(|| Address::new(self.choices[..len].iter().rev().copied().collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::builtin_figure_fields;

    fn fig1(alpha: f64) -> ProblemSpec {
        let (f, b) = builtin_figure_fields(1).unwrap();
        validate(&f, &b, ScaleVector::uniform(alpha), DEFAULT_COMPAT_TOL).unwrap()
    }

    #[test]
    fn validate_examples() {
        let spec = fig1(0.3);
        assert_eq!(spec.base_adjustment(), 0.0);

        let f = ScalarField::parse("x*y + 2").unwrap();
        let b = ScalarField::parse("x*y + 3").unwrap();
        match validate(&f, &b, ScaleVector::uniform(0.1), 1e-9) {
            Err(FractalError::IncompatibleBase { deviation, .. }) => assert_eq!(deviation, 1.0),
            other => panic!("expected IncompatibleBase, got {other:?}"),
        }

        let (f, b) = builtin_figure_fields(1).unwrap();
        assert!(matches!(
            validate(&f, &b, ScaleVector::new(1.0, 0.0, 0.0), 1e-9),
            Err(FractalError::ScaleOutOfRange { sup, .. }) if sup == 1.0
        ));
        assert!(validate(&f, &b, ScaleVector::new(0.0, -1.2, 0.0), 1e-9).is_err());
        assert!(validate(&f, &b, ScaleVector::new(f64::NAN, 0.0, 0.0), 1e-9).is_err());
    }

    #[test]
    fn figure_two_needs_loose_tolerance() {
        let (f, b) = builtin_figure_fields(2).unwrap();
        assert!(matches!(
            validate(&f, &b, ScaleVector::uniform(0.5), DEFAULT_COMPAT_TOL),
            Err(FractalError::IncompatibleBase { corner, .. }) if corner == CellIndex::THREE
        ));
        let spec = validate(&f, &b, ScaleVector::uniform(0.5), FIGURE_COMPAT_TOL).unwrap();
        let adj = spec.base_adjustment();
        assert!(adj > 1e-6 && adj < 1e-5, "{adj}");
        for p in base_vertices() {
            let d = spec.base().eval(p).unwrap() - f.eval(p).unwrap();
            assert!(d.abs() < 1e-15);
        }
    }

    #[test]
    fn raw_base_breaks_shared_vertices() {
        let (f, b) = builtin_figure_fields(2).unwrap();
        let raw =
            ProblemSpec::validate_raw(&f, &b, ScaleVector::uniform(0.5), FIGURE_COMPAT_TOL).unwrap();
        assert!(matches!(raw.vm_table(2), Err(FractalError::ConsistencyFailure { .. })));
    }

    #[test]
    fn zero_scale_gives_f() {
        let spec = fig1(0.0);
        let table = spec.vm_table(4).unwrap();
        assert_eq!(table.deviation_from_f().unwrap(), 0.0);
    }

    #[test]
    fn v1_values_are_f() {
        let spec = fig1(0.7);
        let table = spec.vm_table(1).unwrap();
        assert_eq!(table.values().len(), 6);
        assert!(table.deviation_from_f().unwrap() <= 1e-10);
    }

    #[test]
    fn hand_expansion_at_u3_u2_x3() {
        // q = u_2(x_3) is in V_1 so f^a(q) = f(q); one step of the functional
        // equation then gives f(p) + 0.5 * (f(q) - b(q)) at p = u_3(q).
        let q = Point2::new(0.75, 0.25 * 3f64.sqrt());
        let p = Point2::new(0.625, 0.375 * 3f64.sqrt());
        let f = |t: Point2| t.x / 4.0 + t.y / 9.0;
        let b = |t: Point2| f(t) - 1.3 * t.y * (t.x - 0.5);
        let expected = f(p) + 0.5 * (f(q) - b(q));
        assert!((expected - 0.298784).abs() < 1e-5);

        let spec = fig1(0.5);
        let table = spec.vm_table(2).unwrap();
        let v = crate::gasket::VertexId::new("32".parse().unwrap(), CellIndex::THREE);
        let got = table.value(v.key()).unwrap();
        assert!((got - expected).abs() < 1e-14, "{got} vs {expected}");

        let pv = spec.eval_vertex(&"32".parse().unwrap(), CellIndex::THREE, 40).unwrap();
        assert!((pv.value - got).abs() <= pv.error_bound);
        assert!((pv.value - got).abs() < 1e-14);
    }

    #[test]
    fn eval_point_examples() {
        let (f, b) = builtin_figure_fields(3).unwrap();
        let spec = validate(&f, &b, ScaleVector::ZERO, FIGURE_COMPAT_TOL).unwrap();
        let pv = spec.eval_point(&"1".parse().unwrap(), 40).unwrap();
        let want = f.eval(apply_map(CellIndex::ONE, base_vertices()[0])).unwrap();
        assert_eq!(pv, PointValue { value: want, error_bound: 0.0 });

        let spec = fig1(0.6);
        for n in [0, 1, 7, 60] {
            let pv = spec.eval_point(&Address::root(), n).unwrap();
            assert_eq!(pv.value, spec.f().eval(Point2::new(0.0, 0.0)).unwrap());
        }
    }

    #[test]
    fn rb_fixed_point_when_base_is_f() {
        let f = ScalarField::parse("sin(3*x) + y^2").unwrap();
        let spec = validate(&f, &f, ScaleVector::new(0.4, -0.8, 0.2), 0.0).unwrap();
        let trace = spec.rb_iterate(4, 5).unwrap();
        assert!(trace.deltas.iter().all(|&d| d == 0.0));
        assert_eq!(trace.tables[0], trace.tables[1]);
    }

    #[test]
    fn rb_matches_table() {
        let spec = fig1(0.5);
        let trace = spec.rb_iterate(6, 10).unwrap();
        let table = spec.vm_table(6).unwrap();
        assert!(sup_distance(trace.last(), table.values()) <= 1e-12);
        let r = spec.alpha().sup_norm();
        for w in trace.deltas.windows(2) {
            if w[0] > 1e-13 {
                assert!(w[1] / w[0] <= r + 1e-9);
            }
        }
        assert!(matches!(spec.rb_iterate(11, 1), Err(FractalError::DepthTooLarge { .. })));
    }

    #[test]
    fn chaos_identities() {
        let (f, b) = builtin_figure_fields(1).unwrap();
        let spec = validate(&f, &b, ScaleVector::ZERO, 1e-9).unwrap();
        let sample = spec.chaos_game(500, 7, 10).unwrap();
        assert_eq!(sample.points.len(), 500);
        for p in &sample.points {
            assert_eq!(p.z, f.eval(Point2::new(p.x, p.y)).unwrap());
        }

        let spec = validate(&f, &f, ScaleVector::uniform(0.8), 0.0).unwrap();
        for p in &spec.chaos_game(500, 9, DEFAULT_BURN_IN).unwrap().points {
            assert!((p.z - f.eval(Point2::new(p.x, p.y)).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn chaos_is_deterministic() {
        let spec = fig1(0.5);
        let a = spec.chaos_game(100, 42, 5).unwrap();
        let b = spec.chaos_game(100, 42, 5).unwrap();
        assert_eq!(a.points, b.points);
        assert_eq!(a.seed(), Some(42));
        let c = spec.chaos_game(100, 43, 5).unwrap();
        assert_ne!(a.points, c.points);
        let addr = a.address_of(3).unwrap();
        assert_eq!(addr.depth(), 9);
        let p = addr.apply(base_vertices()[0]);
        assert_eq!((p.x, p.y), (a.points[3].x, a.points[3].y));
        assert!(a.address_of(100).is_none());
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(sup_norm_estimate(&ScalarField::constant(2.5), 3).unwrap(), 2.5);
        assert_eq!(sup_norm_estimate(&ScalarField::constant(-2.5), 0).unwrap(), 2.5);
        let g = ScalarField::parse("x/4 + y/9").unwrap();
        assert_eq!(sup_norm_estimate(&g, 6).unwrap(), 0.25);
        assert!(sup_norm_estimate(&g, 11).is_err());

        let table = fig1(0.5).vm_table(3).unwrap();
        let field = table.as_field();
        assert_eq!(sup_norm_estimate(&field, 8).unwrap(), table.sup_norm());
        let v = &table.lattice().vertices()[7];
        assert_eq!(field.eval(v.point).unwrap(), table.values()[7]);
    }

    #[test]
    fn depth_cap() {
        let spec = fig1(0.5);
        assert!(matches!(
            spec.vm_table(13),
            Err(FractalError::DepthTooLarge { depth: 13, max: 12 })
        ));
    }
}
