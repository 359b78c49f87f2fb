//! The Mordell equation `x² + y² + z² = 2xyz + 1`, its type II solutions
//! indexed by Euclid triples, and their principal integer shadows.
//!
//! With `ξ = p + q√d` the fundamental Pell unit and `η = ξ⁻¹`, write
//! `ξᵃ = P_a + q√d·U_a`. Then `P_a = (ξᵃ + ηᵃ)/2` and
//! `(ξᵃ − ηᵃ)/(2√d) = q·U_a`, so for `a + b = c`
//!
//! * `(P_a, P_b, P_c)` solves the Mordell equation, and
//! * `m·(a·q·U_a, b·q·U_b, c·q·U_c)` is a shadow of it.
//!
//! Both sequences satisfy `s_{a+1} = 2p·s_a − s_{a−1}`; nothing here touches
//! floating point.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cf::sqrt_continued_fraction;
use crate::dual::DualInt;
use crate::error::{Error, Result};
use crate::euclid::{euclid_root, EuclidRule};
use crate::tree::{check_depth, ExchangeRule, FaceTriple, Tree, DEFAULT_DEPTH_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    pub d: u64,
    #[serde(serialize_with = "crate::render::decimal")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::render::decimal")]
    pub q: BigInt,
}

impl PellSolution {
    pub fn is_solution(&self) -> bool {
        &self.p * &self.p - BigInt::from(self.d) * &self.q * &self.q == BigInt::one()
    }
}

/// Minimal positive solution of `p² − dq² = 1` from the convergents of `√d`.
///
/// With period length `r`, the solution is the convergent `h_{r−1}/k_{r−1}`
/// when `r` is even and `h_{2r−1}/k_{2r−1}` when `r` is odd.
pub fn pell_fundamental(d: u64) -> Result<PellSolution> {
    let cf = sqrt_continued_fraction(d)?;
    let r = cf.period().len();
    let index = if r % 2 == 0 { r - 1 } else { 2 * r - 1 };
    let (mut h, mut h_prev) = (BigInt::one(), BigInt::zero());
    let (mut k, mut k_prev) = (BigInt::zero(), BigInt::one());
    for c in cf.iter().take(index + 1) {
        let h_next = c * &h + &h_prev;
        let k_next = c * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    let sol = PellSolution { d, p: h, q: k };
    debug_assert!(sol.is_solution());
    Ok(sol)
}

/// Ascending scan over `q`; only for cross-checking small `d`.
pub fn pell_brute_force(d: u64) -> Result<PellSolution> {
    if crate::numeric::isqrt_u64(d).pow(2) == d {
        return Err(Error::SquareInput(d));
    }
    let d_big = BigInt::from(d);
    let mut q = BigInt::one();
    loop {
        let n = &d_big * &q * &q + 1u32;
        if crate::numeric::is_perfect_square(&n) {
            return Ok(PellSolution {
                d,
                p: num_integer::Roots::sqrt(&n),
                q,
            });
        }
        q += 1u32;
    }
}

/// `ξᵃ = P + q√d·U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPower {
    pub p: BigInt,
    pub u: BigInt,
}

/// Below this index the three-term recurrence beats doubling.
const RECURRENCE_CUTOFF: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PellContext {
    pub pell: PellSolution,
    /// Shadow scale.
    #[serde(serialize_with = "crate::render::decimal")]
    pub m: BigInt,
    #[serde(skip)]
    dq2: BigInt,
}

impl PellContext {
    pub fn new(d: u64, m: impl Into<BigInt>) -> Result<Self> {
        Ok(Self::from_solution(pell_fundamental(d)?, m))
    }

    pub fn from_solution(pell: PellSolution, m: impl Into<BigInt>) -> Self {
        let dq2 = BigInt::from(pell.d) * &pell.q * &pell.q;
        PellContext {
            pell,
            m: m.into(),
            dq2,
        }
    }

    /// `ξᵃ` for any integer `a`; `ξ⁻ᵃ = P_a − q√d·U_a`.
    pub fn power(&self, a: i64) -> UnitPower {
        let n = a.unsigned_abs();
        let UnitPower { p, u } = if n <= RECURRENCE_CUTOFF {
            self.power_by_recurrence(n)
        } else {
            self.power_by_doubling(n)
        };
        UnitPower {
            p,
            u: if a < 0 { -u } else { u },
        }
    }

    fn power_by_recurrence(&self, n: u64) -> UnitPower {
        let two_p: BigInt = 2 * &self.pell.p;
        let (mut p0, mut p1) = (BigInt::one(), self.pell.p.clone());
        let (mut u0, mut u1) = (BigInt::zero(), BigInt::one());
        for _ in 0..n {
            let p2: BigInt = &two_p * &p1 - &p0;
            let u2: BigInt = &two_p * &u1 - &u0;
            p0 = std::mem::replace(&mut p1, p2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        UnitPower { p: p0, u: u0 }
    }

    // Chebyshev doubling on (P_k, P_{k+1}):
    //   P_{2k} = 2P_k² − 1,  P_{2k+1} = 2P_k·P_{k+1} − p,  P_{2k+2} = 2P_{k+1}² − 1,
    // then U_n = (P_{n+1} − p·P_n) / (d q²).
    fn power_by_doubling(&self, n: u64) -> UnitPower {
        let p = &self.pell.p;
        let (mut lo, mut hi) = (BigInt::one(), p.clone());
        for bit in (0..u64::BITS - n.leading_zeros()).rev() {
            let cross: BigInt = 2 * &lo * &hi - p;
            if (n >> bit) & 1 == 1 {
                hi = 2 * &hi * &hi - 1u32;
                lo = cross;
            } else {
                lo = 2 * &lo * &lo - 1u32;
                hi = cross;
            }
        }
        let (u, rem) = (&hi - p * &lo).div_rem(&self.dq2);
        debug_assert!(rem.is_zero());
        UnitPower { p: lo, u }
    }

    /// `ξᵃ·ξᵇ`.
    pub fn multiply(&self, x: &UnitPower, y: &UnitPower) -> UnitPower {
        UnitPower {
            p: &x.p * &y.p + &self.dq2 * &x.u * &y.u,
            u: &x.p * &y.u + &x.u * &y.p,
        }
    }

    /// `P_a = (ξᵃ + ηᵃ)/2`.
    pub fn half_trace(&self, a: i64) -> BigInt {
        self.power(a).p
    }

    /// `U_a = (ξᵃ − ηᵃ)/(ξ − η)`.
    pub fn half_diff_unit(&self, a: i64) -> BigInt {
        self.power(a).u
    }

    /// Principal shadow component `m·a·q·U_a` from a precomputed power.
    pub fn shadow_component(&self, a: i64, power: &UnitPower) -> BigInt {
        &self.m * a * &self.pell.q * &power.u
    }
}

/// Indices `(a, b, c)` with `a + b = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EuclidTriple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl EuclidTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a.checked_add(b) != Some(c) {
            return Err(Error::BadEuclidTriple { a, b, c });
        }
        Ok(EuclidTriple { a, b, c })
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }
}

impl From<EuclidTriple> for FaceTriple<i64> {
    fn from(e: EuclidTriple) -> Self {
        FaceTriple::new(e.a, e.b, e.c)
    }
}

pub type MordellTriple = FaceTriple<BigInt>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadowMordellTriple {
    #[serde(serialize_with = "crate::render::decimal_triple")]
    pub value: MordellTriple,
    #[serde(serialize_with = "crate::render::decimal_triple")]
    pub shadow: FaceTriple<BigInt>,
}

impl ShadowMordellTriple {
    pub fn to_duals(&self) -> FaceTriple<DualInt> {
        FaceTriple::new(
            DualInt::new(self.value.left.clone(), self.shadow.left.clone()),
            DualInt::new(self.value.right.clone(), self.shadow.right.clone()),
            DualInt::new(self.value.top.clone(), self.shadow.top.clone()),
        )
    }

    pub fn from_duals(t: &FaceTriple<DualInt>) -> Self {
        ShadowMordellTriple {
            value: t.map(|x| x.re.clone()),
            shadow: t.map(|x| x.sh.clone()),
        }
    }
}

pub fn is_mordell(t: &MordellTriple) -> bool {
    let [x, y, z] = t.as_array();
    x * x + y * y + z * z == 2 * x * y * z + 1u32
}

/// `(x − yz)x̃ + (y − xz)ỹ + (z − xy)z̃ = 0`.
pub fn satisfies_shadow_constraint(t: &ShadowMordellTriple) -> bool {
    let [x, y, z] = t.value.as_array();
    let [sx, sy, sz] = t.shadow.as_array();
    ((x - y * z) * sx + (y - x * z) * sy + (z - x * y) * sz).is_zero()
}

/// `X² + Y² + Z² = 2XYZ + 1` over the dual integers.
pub fn is_dual_mordell(t: &FaceTriple<DualInt>) -> bool {
    let [x, y, z] = t.as_array();
    let lhs = &(&(x * x) + &(y * y)) + &(z * z);
    let two = DualInt::from_i64(2, 0);
    lhs == &(&two * &(&(x * y) * z)) + &DualInt::from_i64(1, 0)
}

/// `z′ = 2xy − z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct MordellRule;

impl ExchangeRule for MordellRule {
    type Value = BigInt;

    fn exchange(&self, a: &BigInt, b: &BigInt, opposite: &BigInt) -> BigInt {
        2 * a * b - opposite
    }
}

/// `Z′ = 2XY − Z` over the dual integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct DualMordellRule;

impl ExchangeRule for DualMordellRule {
    type Value = DualInt;

    fn exchange(&self, a: &DualInt, b: &DualInt, opposite: &DualInt) -> DualInt {
        &(&DualInt::from_i64(2, 0) * &(a * b)) - opposite
    }
}

/// `(P_a, P_b, P_c)`.
pub fn mordell_triple(ctx: &PellContext, e: &EuclidTriple) -> MordellTriple {
    FaceTriple::new(
        ctx.half_trace(e.a),
        ctx.half_trace(e.b),
        ctx.half_trace(e.c),
    )
}

/// `(P_a, P_b, P_c)` with shadow `m·(a·q·U_a, b·q·U_b, c·q·U_c)`.
pub fn principal_shadow(ctx: &PellContext, e: &EuclidTriple) -> ShadowMordellTriple {
    let powers = e.as_array().map(|a| ctx.power(a));
    let shadows: Vec<BigInt> = e
        .as_array()
        .iter()
        .zip(&powers)
        .map(|(&a, pw)| ctx.shadow_component(a, pw))
        .collect();
    let [sa, sb, sc]: [BigInt; 3] = shadows.try_into().unwrap();
    let [pa, pb, pc] = powers.map(|pw| pw.p);
    ShadowMordellTriple {
        value: FaceTriple::new(pa, pb, pc),
        shadow: FaceTriple::new(sa, sb, sc),
    }
}

/// `(x, y, z) ↦ (x, y, 2xy − z)`.
pub fn vieta_mordell(t: &MordellTriple) -> Result<MordellTriple> {
    if !is_mordell(t) {
        return Err(Error::InvalidTriple(t.to_string()));
    }
    Ok(t.reflect(&MordellRule))
}

/// Dual Vieta move `Z′ = 2XY − Z` on the assembled dual triple.
pub fn shadow_vieta_mordell(t: &ShadowMordellTriple) -> Result<ShadowMordellTriple> {
    let duals = t.to_duals();
    if !is_dual_mordell(&duals) {
        return Err(Error::InvalidTriple(duals.to_string()));
    }
    Ok(ShadowMordellTriple::from_duals(&duals.reflect(&DualMordellRule)))
}

/// Shadow components of the dual orbit of `(1 + aε, 1 + bε, 1 + cε)`.
///
/// Since the real parts stay 1, the dual Vieta rule reduces to the
/// arithmetic progression rule on the shadows, and the result is the
/// topograph of `ax² + (c − a − b)xy + by²`.
pub fn special_orbit_shadow_tree(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    depth: usize,
) -> Result<Tree<FaceTriple<BigInt>>> {
    Ok(special_orbit_dual_tree(a, b, c, depth)?.map(|t| t.map(|x| x.sh.clone())))
}

pub fn special_orbit_dual_tree(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    depth: usize,
) -> Result<Tree<FaceTriple<DualInt>>> {
    check_depth(depth, DEFAULT_DEPTH_LIMIT)?;
    let one = BigInt::one();
    let root = FaceTriple::new(
        DualInt::new(one.clone(), a.clone()),
        DualInt::new(one.clone(), b.clone()),
        DualInt::new(one, c.clone()),
    );
    Ok(Tree::generate(root, depth, &DualMordellRule))
}

/// Mordell triples over the Euclid tree, grown by Vieta moves from the
/// closed form at the root `(1, 1, 2)`.
pub fn mordell_tree(ctx: &PellContext, depth: usize) -> Result<Tree<MordellTriple>> {
    check_depth(depth, DEFAULT_DEPTH_LIMIT)?;
    let root = mordell_triple(ctx, &euclid_root());
    Ok(Tree::generate(root, depth, &MordellRule))
}

/// Dual Mordell triples grown from the principal shadow at the root.
pub fn shadow_mordell_tree(ctx: &PellContext, depth: usize) -> Result<Tree<FaceTriple<DualInt>>> {
    check_depth(depth, DEFAULT_DEPTH_LIMIT)?;
    let root = principal_shadow(ctx, &euclid_root()).to_duals();
    Ok(Tree::generate(root, depth, &DualMordellRule))
}

/// Principal shadows evaluated node by node on the Euclid tree.
pub fn principal_shadow_tree(ctx: &PellContext, depth: usize) -> Result<Tree<ShadowMordellTriple>> {
    check_depth(depth, DEFAULT_DEPTH_LIMIT)?;
    let indices = Tree::generate(FaceTriple::from(euclid_root()), depth, &EuclidRule);
    let mut cache: HashMap<i64, UnitPower> = HashMap::new();
    let mut entry = |a: i64| -> (BigInt, BigInt) {
        let pw = cache.entry(a).or_insert_with(|| ctx.power(a));
        (pw.p.clone(), ctx.shadow_component(a, pw))
    };
    Ok(indices.map(|t| {
        let (x, sx) = entry(t.left);
        let (y, sy) = entry(t.right);
        let (z, sz) = entry(t.top);
        ShadowMordellTriple {
            value: FaceTriple::new(x, y, z),
            shadow: FaceTriple::new(sx, sy, sz),
        }
    }))
}

/// `P_1, …, P_n`: the largest entries along the branch `LL…L` of the Mordell
/// tree, whose indices are `(1, k, k + 1)`.
pub fn mordell_branch(ctx: &PellContext, n: usize) -> Vec<BigInt> {
    (1..=n as i64).map(|a| ctx.half_trace(a)).collect()
}
