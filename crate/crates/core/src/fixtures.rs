//! Deterministic generators of random compatible `(f, b, alpha)` triples,
//! used by the property and acceptance tests and by the benchmarks.
//!
//! `f` and a shape function `g` come from a fixed pool of smooth
//! expressions; `b = f + c * l1 * l2 * l3 * g`, which agrees with `f` on the
//! corners by construction. Scale components are uniform in `[-0.9, 0.9]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{barycentric_bump_text, ScalarField};
use crate::fractal::ScaleVector;

pub const SMOOTH_POOL: [&str; 8] = [
    "x/4 + y/9",
    "sin(x + 3.7) + 1.3*x",
    "cos(2*x + 5) + y^2",
    "exp(-x)*y - 0.5",
    "x*y - 0.3*x + 1",
    "sqrt(1 + x^2 + y^2)",
    "cos(3*y) - x/2",
    "log(2 + x + y)",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SpecText {
    pub f: String,
    pub b: String,
    pub alpha: ScaleVector,
}

impl SpecText {
    pub fn fields(&self) -> (ScalarField, ScalarField) {
        let parse = |s: &str| ScalarField::parse(s).expect("pool expressions parse");
        (parse(&self.f), parse(&self.b))
    }
}

/// `base + c * l1 * l2 * l3 * shape` for a random pool shape and `c` in
/// `[-3, 3]`.
pub fn bumped(base: &str, rng: &mut impl Rng) -> String {
    let shape = SMOOTH_POOL[rng.random_range(0..SMOOTH_POOL.len())];
    let c: f64 = rng.random_range(-3.0..3.0);
    format!("{base} + {}*({shape})", barycentric_bump_text(c))
}

pub fn random_spec(rng: &mut impl Rng) -> SpecText {
    let f = SMOOTH_POOL[rng.random_range(0..SMOOTH_POOL.len())].to_string();
    let b = bumped(&f, rng);
    let mut a = || rng.random_range(-0.9..=0.9);
    let alpha = ScaleVector::new(a(), a(), a());
    SpecText { f, b, alpha }
}

pub fn random_specs(seed: u64, count: usize) -> Vec<SpecText> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_spec(&mut rng)).collect()
}
