//! Markov triples `x² + y² + z² = 3xyz` and their shadows over the dual
//! integers, `X² + Y² + Z² = (3 − 2ε)XYZ`.
//!
//! Both trees use the topograph addressing of [`crate::tree`]. The shadow
//! tree is rooted at the units `(1 + ε, 1, 1 + ε)`, ordered so that the
//! leftmost branch `LL…L` is the Fibonacci branch.

use num_bigint::BigInt;

use crate::dual::DualInt;
use crate::error::{Error, Result};
use crate::tree::{check_depth, ExchangeRule, FaceTriple, Tree, DEFAULT_DEPTH_LIMIT};

/// `z′ = 3xy − z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MarkovRule;

impl ExchangeRule for MarkovRule {
    type Value = BigInt;

    fn exchange(&self, a: &BigInt, b: &BigInt, opposite: &BigInt) -> BigInt {
        3 * a * b - opposite
    }
}

/// `Z′ = (3 − 2ε)XY − Z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShadowMarkovRule;

fn shadow_coefficient() -> DualInt {
    DualInt::from_i64(3, -2)
}

impl ExchangeRule for ShadowMarkovRule {
    type Value = DualInt;

    fn exchange(&self, a: &DualInt, b: &DualInt, opposite: &DualInt) -> DualInt {
        &(&shadow_coefficient() * &(a * b)) - opposite
    }
}

pub fn is_markov(t: &FaceTriple<BigInt>) -> bool {
    let [x, y, z] = t.as_array();
    x * x + y * y + z * z == 3 * x * y * z
}

pub fn is_shadow_markov(t: &FaceTriple<DualInt>) -> bool {
    let [x, y, z] = t.as_array();
    let lhs = &(&(x * x) + &(y * y)) + &(z * z);
    lhs == &shadow_coefficient() * &(&(x * y) * z)
}

/// `(x, y, z) ↦ (x, y, 3xy − z)`.
pub fn vieta_markov(t: &FaceTriple<BigInt>) -> Result<FaceTriple<BigInt>> {
    if !is_markov(t) {
        return Err(Error::InvalidTriple(t.to_string()));
    }
    Ok(t.reflect(&MarkovRule))
}

/// `(X, Y, Z) ↦ (X, Y, (3 − 2ε)XY − Z)`.
pub fn shadow_vieta(t: &FaceTriple<DualInt>) -> Result<FaceTriple<DualInt>> {
    if !is_shadow_markov(t) {
        return Err(Error::InvalidTriple(t.to_string()));
    }
    Ok(t.reflect(&ShadowMarkovRule))
}

/// `(x, y, z) ↦ (y, z, x)`; both equations are symmetric.
pub fn cyclic<T: Clone>(t: &FaceTriple<T>) -> FaceTriple<T> {
    FaceTriple::new(t.right.clone(), t.top.clone(), t.left.clone())
}

pub fn markov_root() -> FaceTriple<BigInt> {
    FaceTriple::new(BigInt::from(1), BigInt::from(1), BigInt::from(1))
}

pub fn shadow_markov_root() -> FaceTriple<DualInt> {
    FaceTriple::new(
        DualInt::from_i64(1, 1),
        DualInt::from_i64(1, 0),
        DualInt::from_i64(1, 1),
    )
}

pub fn markov_tree(depth: usize) -> Result<Tree<FaceTriple<BigInt>>> {
    markov_tree_with_limit(depth, DEFAULT_DEPTH_LIMIT)
}

pub fn markov_tree_with_limit(depth: usize, limit: usize) -> Result<Tree<FaceTriple<BigInt>>> {
    check_depth(depth, limit)?;
    Ok(Tree::generate(markov_root(), depth, &MarkovRule))
}

pub fn shadow_markov_tree(depth: usize) -> Result<Tree<FaceTriple<DualInt>>> {
    shadow_markov_tree_with_limit(depth, DEFAULT_DEPTH_LIMIT)
}

pub fn shadow_markov_tree_with_limit(
    depth: usize,
    limit: usize,
) -> Result<Tree<FaceTriple<DualInt>>> {
    check_depth(depth, limit)?;
    Ok(Tree::generate(shadow_markov_root(), depth, &ShadowMarkovRule))
}

/// Shadows of the regions met along `LL…L`: the `top` of the root and of
/// each successive left child. Starts 1, 4, 13, 40, 120, …
pub fn fibonacci_branch_shadow(n: usize) -> Vec<BigInt> {
    let mut t = shadow_markov_root();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(t.top.sh.clone());
        t = t.child(crate::tree::Direction::L, &ShadowMarkovRule);
    }
    out
}
