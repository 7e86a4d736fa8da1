//! Geometry of the Sierpinski gasket.
//!
//! The base triangle is the unit equilateral triangle with corners
//! `x1 = (0, 0)`, `x2 = (1, 0)` and `x3 = (1/2, sqrt(3)/2)`. The three
//! contractions `u_i(t) = (t + x_i) / 2` generate the gasket; a word
//! `i1 i2 ... im` over `{1, 2, 3}` names the cell `u_i1 o ... o u_im(gasket)`.
//!
//! Lattice vertices are tracked by exact integer [`GridKey`]s so that vertex
//! identity never depends on floating point comparisons.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Deepest lattice that may be enumerated.
pub const MAX_DEPTH: usize = 12;

/// Absolute tolerance for cell membership tests.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Tolerance below which two points are the same vertex.
pub const DEDUP_TOL: f64 = 1e-12;

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

/// Number of grid units along a side of the base triangle.
const GRID: u32 = 1 << MAX_DEPTH;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GasketError {
    #[error("cell index {0} is not in 1..=3")]
    BadCellIndex(u32),
    #[error("invalid address letter {letter:?} at position {position}")]
    BadAddress { letter: char, position: usize },
    #[error("point ({x}, {y}) is not in cell {cell}")]
    OutOfCell { cell: CellIndex, x: f64, y: f64 },
    #[error("point ({x}, {y}) is not on any depth-{depth} cell")]
    NotOnGasket { x: f64, y: f64, depth: usize },
    #[error("depth {0} exceeds {MAX_DEPTH}")]
    DepthTooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Barycentric coordinates with respect to the base triangle.
    pub fn barycentric(&self) -> [f64; 3] {
        let l3 = self.y / HALF_SQRT3;
        let l2 = self.x - 0.5 * l3;
        [1.0 - l2 - l3, l2, l3]
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Index of one of the three contractions (and of the matching corner).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct CellIndex(u8);

impl CellIndex {
    pub const ONE: CellIndex = CellIndex(1);
    pub const TWO: CellIndex = CellIndex(2);
    pub const THREE: CellIndex = CellIndex(3);
    pub const ALL: [CellIndex; 3] = [Self::ONE, Self::TWO, Self::THREE];

    pub fn new(i: u32) -> Result<Self, GasketError> {
        match i {
            1..=3 => Ok(CellIndex(i as u8)),
            _ => Err(GasketError::BadCellIndex(i)),
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position, handy for indexing `[T; 3]`.
    pub fn slot(self) -> usize {
        self.0 as usize - 1
    }

    /// The fixed point `x_i` of `u_i`.
    pub fn corner(self) -> Point2 {
        base_vertices()[self.slot()]
    }
}

impl TryFrom<u32> for CellIndex {
    type Error = GasketError;

    fn try_from(value: u32) -> Result<Self, Self::Error> {
        CellIndex::new(value)
    }
}

impl From<CellIndex> for u32 {
    fn from(value: CellIndex) -> Self {
        value.0 as u32
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite word over `{1, 2, 3}`; the empty word is the whole gasket.
///
/// The first letter is the outermost map: `[3, 2]` names `u_3(u_2(gasket))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Address {
    word: Vec<CellIndex>,
}

impl Address {
    pub fn root() -> Self {
        Address::default()
    }

    pub fn new(word: Vec<CellIndex>) -> Self {
        Address { word }
    }

    pub fn from_digits(digits: &[u32]) -> Result<Self, GasketError> {
        digits
            .iter()
            .map(|&d| CellIndex::new(d))
            .collect::<Result<Vec<_>, _>>()
            .map(Address::new)
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[CellIndex] {
        &self.word
    }

    pub fn first(&self) -> Option<CellIndex> {
        self.word.first().copied()
    }

    pub fn push(&mut self, i: CellIndex) {
        self.word.push(i);
    }

    pub fn child(&self, i: CellIndex) -> Address {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.extend_from_slice(&self.word);
        word.push(i);
        Address { word }
    }

    /// Maps a point of the base triangle into this cell.
    pub fn apply(&self, t: Point2) -> Point2 {
        self.word.iter().rev().fold(t, |p, &i| apply_map(i, p))
    }

    /// Whether `t` lies in the closed triangle spanned by this cell, within
    /// `tol` measured in the coordinates of the base triangle.
    pub fn contains(&self, t: Point2, tol: f64) -> bool {
        let origin = self.apply(base_vertices()[0]);
        let scale = 0.5f64.powi(self.word.len() as i32);
        let local = Point2::new((t.x - origin.x) / scale, (t.y - origin.y) / scale);
        let height = scale * HALF_SQRT3;
        local.barycentric().iter().all(|&l| l * height >= -tol)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.word {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = GasketError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, letter)| match letter {
                '1' => Ok(CellIndex::ONE),
                '2' => Ok(CellIndex::TWO),
                '3' => Ok(CellIndex::THREE),
                _ => Err(GasketError::BadAddress { letter, position }),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Address::new)
    }
}

/// Exact lattice coordinates of a dyadic vertex.
///
/// The point is `(p * x2 + q * x3) / 2^MAX_DEPTH`, so every vertex of `V_m`
/// for `m <= MAX_DEPTH` has a unique key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridKey {
    pub p: u32,
    pub q: u32,
}

impl GridKey {
    pub fn corner(i: CellIndex) -> GridKey {
        match i.get() {
            1 => GridKey { p: 0, q: 0 },
            2 => GridKey { p: GRID, q: 0 },
            _ => GridKey { p: 0, q: GRID },
        }
    }

    /// Key of `u_i(self)`. Exact for keys of depth below `MAX_DEPTH`.
    pub fn mapped(self, i: CellIndex) -> GridKey {
        let c = GridKey::corner(i);
        debug_assert!((self.p + c.p).is_multiple_of(2) && (self.q + c.q).is_multiple_of(2));
        GridKey {
            p: (self.p + c.p) / 2,
            q: (self.q + c.q) / 2,
        }
    }

    /// Key of `u_i^{-1}(self)`, if that preimage lies in the base triangle.
    pub fn preimage(self, i: CellIndex) -> Option<GridKey> {
        let c = GridKey::corner(i);
        let p = (2 * self.p).checked_sub(c.p)?;
        let q = (2 * self.q).checked_sub(c.q)?;
        (p + q <= GRID).then_some(GridKey { p, q })
    }

    pub fn point(self) -> Point2 {
        let unit = 1.0 / GRID as f64;
        let p = self.p as f64;
        let q = self.q as f64;
        Point2::new((p + 0.5 * q) * unit, q * HALF_SQRT3 * unit)
    }
}

/// A vertex named by a cell word and one of that cell's corners:
/// the point `u_word(x_corner)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexId {
    pub address: Address,
    pub corner: CellIndex,
    pub canonical: bool,
}

impl VertexId {
    pub fn new(address: Address, corner: CellIndex) -> Self {
        VertexId {
            address,
            corner,
            canonical: false,
        }
    }

    pub fn key(&self) -> GridKey {
        self.address
            .word()
            .iter()
            .rev()
            .fold(GridKey::corner(self.corner), |k, &i| k.mapped(i))
    }

    pub fn point(&self) -> Point2 {
        address_to_point(self)
    }
}

#[derive(Debug, Clone)]
pub struct LatticeVertex {
    pub id: VertexId,
    pub point: Point2,
    pub key: GridKey,
}

/// The distinct vertices of `V_m`, each under its canonical id, in
/// lexicographic order of `(word, corner)`.
#[derive(Debug, Clone)]
pub struct VmLattice {
    m: usize,
    vertices: Vec<LatticeVertex>,
    index: HashMap<GridKey, usize>,
}

impl VmLattice {
    pub fn depth(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[LatticeVertex] {
        &self.vertices
    }

    pub fn points(&self) -> impl Iterator<Item = Point2> + '_ {
        self.vertices.iter().map(|v| v.point)
    }

    pub fn position(&self, key: GridKey) -> Option<usize> {
        self.index.get(&key).copied()
    }

    pub fn contains_key(&self, key: GridKey) -> bool {
        self.index.contains_key(&key)
    }
}

/// `(3^(m+1) + 3) / 2`.
pub fn vertex_count(m: usize) -> usize {
    (3usize.pow(m as u32 + 1) + 3) / 2
}

pub fn base_vertices() -> [Point2; 3] {
    [
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(0.5, HALF_SQRT3),
    ]
}

pub fn apply_map(i: CellIndex, t: Point2) -> Point2 {
    let c = i.corner();
    Point2::new(0.5 * (t.x + c.x), 0.5 * (t.y + c.y))
}

pub fn invert_map(i: CellIndex, t: Point2) -> Result<Point2, GasketError> {
    if !Address::new(vec![i]).contains(t, MEMBERSHIP_TOL) {
        return Err(GasketError::OutOfCell {
            cell: i,
            x: t.x,
            y: t.y,
        });
    }
    let c = i.corner();
    Ok(Point2::new(2.0 * t.x - c.x, 2.0 * t.y - c.y))
}

pub fn address_to_point(v: &VertexId) -> Point2 {
    v.address.apply(v.corner.corner())
}

/// Every `(word, corner)` pair of depth `m`, flagged canonical when it is the
/// lexicographically first name of its point.
pub fn representations(m: usize) -> Result<Vec<VertexId>, GasketError> {
    if m > MAX_DEPTH {
        return Err(GasketError::DepthTooLarge(m));
    }
    let mut seen = HashMap::with_capacity(vertex_count(m));
    let mut out = Vec::with_capacity(3usize.pow(m as u32 + 1));
    for_each_word(m, |word, offset| {
        for j in CellIndex::ALL {
            let c = GridKey::corner(j);
            let key = GridKey {
                p: offset.p + (c.p >> m),
                q: offset.q + (c.q >> m),
            };
            let canonical = seen.insert(key, ()).is_none();
            out.push(VertexId {
                address: Address::new(word.to_vec()),
                corner: j,
                canonical,
            });
        }
    });
    Ok(out)
}

pub fn enumerate_vm(m: usize) -> Result<VmLattice, GasketError> {
    if m > MAX_DEPTH {
        return Err(GasketError::DepthTooLarge(m));
    }
    let mut vertices = Vec::with_capacity(vertex_count(m));
    let mut index = HashMap::with_capacity(vertex_count(m));
    for_each_word(m, |word, offset| {
        for j in CellIndex::ALL {
            let c = GridKey::corner(j);
            let key = GridKey {
                p: offset.p + (c.p >> m),
                q: offset.q + (c.q >> m),
            };
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
                slot.insert(vertices.len());
                vertices.push(LatticeVertex {
                    id: VertexId {
                        address: Address::new(word.to_vec()),
                        corner: j,
                        canonical: true,
                    },
                    point: key.point(),
                    key,
                });
            }
        }
    });
    debug_assert_eq!(vertices.len(), vertex_count(m));
    Ok(VmLattice { m, vertices, index })
}

/// Lattices are immutable, so repeated requests share one enumeration.
pub fn shared_lattice(m: usize) -> Result<Arc<VmLattice>, GasketError> {
    static CACHE: [OnceLock<Arc<VmLattice>>; MAX_DEPTH + 1] =
        [const { OnceLock::new() }; MAX_DEPTH + 1];
    let slot = CACHE.get(m).ok_or(GasketError::DepthTooLarge(m))?;
    if let Some(lattice) = slot.get() {
        return Ok(lattice.clone());
    }
    let lattice = Arc::new(enumerate_vm(m)?);
    Ok(slot.get_or_init(|| lattice).clone())
}

/// Visits all words of length `m` in lexicographic order together with the
/// grid key of the cell's `x1` corner.
fn for_each_word(m: usize, mut visit: impl FnMut(&[CellIndex], GridKey)) {
    let mut word = vec![CellIndex::ONE; m];
    let total = 3usize.pow(m as u32);
    for n in 0..total {
        let mut rest = n;
        for slot in word.iter_mut().rev() {
            *slot = CellIndex((rest % 3) as u8 + 1);
            rest /= 3;
        }
        let mut offset = GridKey { p: 0, q: 0 };
        for (level, &i) in word.iter().enumerate() {
            let c = GridKey::corner(i);
            offset.p += c.p >> (level + 1);
            offset.q += c.q >> (level + 1);
        }
        visit(&word, offset);
    }
}

/// Finds the lexicographically first length-`depth` word whose cell contains
/// `t`. At points shared by several cells this picks the smallest index at
/// each level.
pub fn locate(t: Point2, depth: usize) -> Result<Address, GasketError> {
    fn search(t: Point2, depth: usize, current: &mut Address) -> bool {
        if current.depth() == depth {
            return true;
        }
        for i in CellIndex::ALL {
            current.push(i);
            if current.contains(t, MEMBERSHIP_TOL) && search(t, depth, current) {
                return true;
            }
            current.word.pop();
        }
        false
    }

    let mut current = Address::root();
    if t.is_finite() && current.contains(t, MEMBERSHIP_TOL) && search(t, depth, &mut current) {
        Ok(current)
    } else {
        Err(GasketError::NotOnGasket {
            x: t.x,
            y: t.y,
            depth,
        })
    }
}
