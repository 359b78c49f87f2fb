//! Conway's topograph of a binary quadratic form `Q(x, y) = ax² + hxy + by²`.
//!
//! Values are propagated from the root superbase by the arithmetic
//! progression rule `Q(u+v) + Q(u−v) = 2(Q(u) + Q(v))`; regions are labelled
//! by primitive vectors, which double as Farey fractions `u/v`. See
//! [`crate::tree`] for the orientation convention.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{check_depth, Direction, ExchangeRule, FaceTriple, PathWord, Region, Tree, DEFAULT_DEPTH_LIMIT};

mod river;

pub use river::{find_river, is_river_edge, river_step, RiverDescription, RIVER_STEP_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadForm {
    #[serde(serialize_with = "crate::render::decimal")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::render::decimal")]
    pub h: BigInt,
    #[serde(serialize_with = "crate::render::decimal")]
    pub b: BigInt,
}

impl QuadForm {
    pub fn new(a: impl Into<BigInt>, h: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadForm {
            a: a.into(),
            h: h.into(),
            b: b.into(),
        }
    }

    /// The form whose root superbase values are `(a, b, c)`, i.e. `h = c − a − b`.
    pub fn from_superbase(a: &BigInt, b: &BigInt, c: &BigInt) -> Self {
        QuadForm {
            a: a.clone(),
            h: c - a - b,
            b: b.clone(),
        }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.h * x * y + &self.b * y * y
    }

    pub fn eval_vector(&self, v: &RegionVector) -> BigInt {
        self.eval(&v.u, &v.v)
    }

    /// `D = h² − 4ab`.
    pub fn discriminant(&self) -> BigInt {
        &self.h * &self.h - 4 * &self.a * &self.b
    }

    /// `Q(x, −y)`: the same topograph seen through the lower half of the tree.
    pub fn reflected(&self) -> QuadForm {
        QuadForm {
            a: self.a.clone(),
            h: -&self.h,
            b: self.b.clone(),
        }
    }

    /// Values on `e₁ = (1,0)`, `e₂ = (0,1)` and `e₁ + e₂`: `(a, b, a + b + h)`.
    pub fn root_triple(&self) -> FaceTriple<BigInt> {
        FaceTriple::new(
            self.a.clone(),
            self.b.clone(),
            &self.a + &self.b + &self.h,
        )
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x²", self.a)?;
        if self.h.is_negative() {
            write!(f, " - {}xy", self.h.abs())?;
        } else {
            write!(f, " + {}xy", self.h)?;
        }
        if self.b.is_negative() {
            write!(f, " - {}y²", self.b.abs())
        } else {
            write!(f, " + {}y²", self.b)
        }
    }
}

/// Parses `a,h,b`.
impl FromStr for QuadForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, h, b] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected a,h,b but got {s:?}")));
        };
        let num = |t: &str| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        };
        Ok(QuadForm::new(num(a)?, num(h)?, num(b)?))
    }
}

/// `a² + b² + c² − 2ab − 2ac − 2bc`, the discriminant of the form with
/// superbase values `(a, b, c)`.
pub fn triple_discriminant(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    a * a + b * b + c * c - 2 * a * b - 2 * a * c - 2 * b * c
}

/// `h² − 4xy` from the values around one vertex, taking `top − left − right`
/// as the local middle coefficient.
pub fn local_discriminant(t: &FaceTriple<BigInt>) -> BigInt {
    let h = &t.top - &t.left - &t.right;
    &h * &h - 4 * &t.left * &t.right
}

/// Crossing an edge between `x` and `y` replaces the opposite value `z` by
/// `2(x + y) − z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ArithmeticProgression;

impl ExchangeRule for ArithmeticProgression {
    type Value = BigInt;

    fn exchange(&self, a: &BigInt, b: &BigInt, opposite: &BigInt) -> BigInt {
        2 * (a + b) - opposite
    }
}

pub fn root_triple(q: &QuadForm) -> FaceTriple<BigInt> {
    q.root_triple()
}

pub fn ap_step(parent: &FaceTriple<BigInt>, direction: Direction) -> FaceTriple<BigInt> {
    parent.child(direction, &ArithmeticProgression)
}

/// Triples from the root along `word`; `word.len() + 1` entries.
pub fn values_along_path(q: &QuadForm, word: &PathWord) -> Vec<FaceTriple<BigInt>> {
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(q.root_triple());
    for d in word.iter() {
        let next = ap_step(out.last().unwrap(), d);
        out.push(next);
    }
    out
}

/// Primitive vector of a region, sign-normalized so that `v > 0`, or `u > 0`
/// when `v = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RegionVector {
    #[serde(serialize_with = "crate::render::decimal")]
    pub u: BigInt,
    #[serde(serialize_with = "crate::render::decimal")]
    pub v: BigInt,
}

impl RegionVector {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        let (u, v) = (u.into(), v.into());
        if v.is_negative() || (v.is_zero() && u.is_negative()) {
            RegionVector { u: -u, v: -v }
        } else {
            RegionVector { u, v }
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.u.gcd(&self.v).is_one()
    }

    /// The Farey fraction `u/v` (`1/0` is ∞).
    pub fn farey(&self) -> String {
        format!("{}/{}", self.u, self.v)
    }
}

impl fmt::Display for RegionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// Superbase recursion on lax vectors: the new region is the sum of the two
/// flanking the crossed edge (all vectors in the upper tree are nonnegative).
#[derive(Clone, Copy, Debug, Default)]
pub struct SuperbaseRule;

impl ExchangeRule for SuperbaseRule {
    type Value = RegionVector;

    fn exchange(&self, a: &RegionVector, b: &RegionVector, _opposite: &RegionVector) -> RegionVector {
        RegionVector::new(&a.u + &b.u, &a.v + &b.v)
    }
}

pub fn root_vectors() -> FaceTriple<RegionVector> {
    FaceTriple::new(
        RegionVector::new(1, 0),
        RegionVector::new(0, 1),
        RegionVector::new(1, 1),
    )
}

pub fn region_vectors(word: &PathWord) -> FaceTriple<RegionVector> {
    root_vectors().walk(word, &SuperbaseRule)
}

pub fn region_vector(word: &PathWord, which: Region) -> RegionVector {
    region_vectors(word).get(which).clone()
}

/// Complete tree of triples to `depth` under the default limit.
pub fn enumerate(q: &QuadForm, depth: usize) -> Result<Tree<FaceTriple<BigInt>>> {
    enumerate_with_limit(q, depth, DEFAULT_DEPTH_LIMIT)
}

pub fn enumerate_with_limit(
    q: &QuadForm,
    depth: usize,
    limit: usize,
) -> Result<Tree<FaceTriple<BigInt>>> {
    check_depth(depth, limit)?;
    Ok(Tree::generate(q.root_triple(), depth, &ArithmeticProgression))
}

pub fn vector_tree(depth: usize, limit: usize) -> Result<Tree<FaceTriple<RegionVector>>> {
    check_depth(depth, limit)?;
    Ok(Tree::generate(root_vectors(), depth, &SuperbaseRule))
}

/// Words (within the tree) whose triple disagrees with direct evaluation of
/// `q` on the region vectors. Empty when the topograph is consistent.
pub fn ap_inconsistencies(q: &QuadForm, tree: &Tree<FaceTriple<BigInt>>) -> Vec<PathWord> {
    let vectors = Tree::generate(root_vectors(), tree.depth(), &SuperbaseRule);
    tree.iter()
        .zip(vectors.nodes())
        .filter(|((_, t), vs)| **t != vs.map(|v| q.eval_vector(v)))
        .map(|((w, _), _)| w)
        .collect()
}

/// Number of representations `n = x² + y²`, `(x, y) ∈ ℤ²`, by Jacobi's
/// divisor formula `4(N₁(n) − N₃(n))`.
pub fn jacobi_two_squares(n: u64) -> u64 {
    assert!(n >= 1, "jacobi_two_squares needs n ≥ 1");
    let (mut n1, mut n3) = (0u64, 0u64);
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            for e in [d, n / d] {
                match e % 4 {
                    1 => n1 += 1,
                    3 => n3 += 1,
                    _ => {}
                }
            }
            if d * d == n {
                // counted twice above
                match d % 4 {
                    1 => n1 -= 1,
                    3 => n3 -= 1,
                    _ => {}
                }
            }
        }
        d += 1;
    }
    4 * (n1 - n3)
}

/// Lattice-point count of `x² + y² = n`.
pub fn brute_force_two_squares(n: u64) -> u64 {
    let r = crate::numeric::isqrt_u64(n) as i64;
    let n = n as i64;
    let mut count = 0;
    for x in -r..=r {
        for y in -r..=r {
            if x * x + y * y == n {
                count += 1;
            }
        }
    }
    count
}
