//! Paths in the Euclid tree and growth along them.
//!
//! The Euclid tree carries triples `(a, b, a + b)` from the root `(1, 1, 2)`;
//! it is the topograph of the linear functional `(u, v) ↦ u + v`, so it shares
//! addressing with every other tree in the crate. The Lyapunov function
//!
//! ```text
//! Λ(ξ) = limsup ln a_n(ξ) / n
//! ```
//!
//! is estimated by the maximum of `ln a_k / k` over the last quarter of the
//! steps, and computed exactly for eventually periodic paths from the spectral
//! radius of the period's matrix product.
//!
//! A continued fraction `[c₀; c₁, c₂, …]` becomes the word
//! `L^{c₀} R^{c₁} L^{c₂} …`, whose Farey labels converge to ξ.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::mordell::{EuclidTriple, PellContext};
use crate::numeric::{ln_abs, ln_abs_ratio};
use crate::topograph::{root_vectors, QuadForm, SuperbaseRule};
use crate::tree::{check_depth, Direction, ExchangeRule, FaceTriple, PathWord, Tree, DEFAULT_DEPTH_LIMIT};

/// `c = a + b`, on machine integers (tree depths stay far below overflow).
#[derive(Clone, Copy, Debug, Default)]
pub struct EuclidRule;

impl ExchangeRule for EuclidRule {
    type Value = i64;

    fn exchange(&self, a: &i64, b: &i64, _opposite: &i64) -> i64 {
        a + b
    }
}

pub fn euclid_root() -> EuclidTriple {
    EuclidTriple { a: 1, b: 1, c: 2 }
}

pub fn euclid_tree(depth: usize) -> Result<Tree<FaceTriple<i64>>> {
    check_depth(depth, DEFAULT_DEPTH_LIMIT)?;
    Ok(Tree::generate(euclid_root().into(), depth, &EuclidRule))
}

/// Triples from the root along `word`, `word.len() + 1` of them. `L` gives
/// `(a, c, a + c)` and `R` gives `(c, b, c + b)`.
pub fn euclid_path(word: &PathWord) -> Vec<FaceTriple<BigInt>> {
    let mut t = FaceTriple::new(BigInt::one(), BigInt::one(), BigInt::from(2));
    let mut out = Vec::with_capacity(word.len() + 1);
    out.push(t.clone());
    for d in word.iter() {
        t = match d {
            Direction::L => FaceTriple::new(t.left.clone(), t.top.clone(), &t.left + &t.top),
            Direction::R => FaceTriple::new(t.top.clone(), t.right.clone(), &t.top + &t.right),
        };
        out.push(t.clone());
    }
    out
}

/// An infinite path from the root: an eventually periodic word, or the
/// word of a continued fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathSpec {
    Word { prefix: PathWord, period: PathWord },
    Cf(ContinuedFraction),
}

impl PathSpec {
    pub fn periodic(period: PathWord) -> Result<Self> {
        Self::eventually_periodic(PathWord::root(), period)
    }

    pub fn eventually_periodic(prefix: PathWord, period: PathWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidWord("empty period".into()));
        }
        Ok(PathSpec::Word { prefix, period })
    }

    pub fn golden() -> Self {
        PathSpec::Cf(ContinuedFraction::golden())
    }

    /// The first `n` letters.
    pub fn word(&self, n: usize) -> PathWord {
        match self {
            PathSpec::Word { prefix, period } => {
                PathWord(prefix.iter().chain(period.0.iter().copied().cycle()).take(n).collect())
            }
            PathSpec::Cf(cf) => word_from_cf(cf, n),
        }
    }

    /// `Λ` exactly when the path is eventually periodic or ends on a tree
    /// edge; `None` for the non-periodic continued fractions.
    pub fn exact_lyapunov(&self) -> Option<f64> {
        match self {
            PathSpec::Word { period, .. } => Some(lyapunov_exact_periodic(period)),
            PathSpec::Cf(cf) if cf.is_rational() => Some(0.0),
            PathSpec::Cf(cf) => Some(lyapunov_exact_periodic(&period_word(cf.period()))),
        }
    }

    /// The point ξ the path converges to.
    fn point(&self) -> Result<Point> {
        let cf = match self {
            PathSpec::Cf(cf) => cf.clone(),
            PathSpec::Word { prefix, period } => match cf_of_word(prefix, period)? {
                Some(cf) => cf,
                None => return Ok(Point::Infinity),
            },
        };
        Ok(match cf.rational_value() {
            Some(r) => Point::Rational(r),
            None => Point::Surd(cf),
        })
    }
}

impl fmt::Display for PathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathSpec::Word { prefix, period } => write!(f, "{prefix}({period})"),
            PathSpec::Cf(cf) => write!(f, "{cf}"),
        }
    }
}

/// `LRRL` (repeated), `LL(LR)` (prefix then period), or a continued fraction
/// such as `1,1,1,...` or `[1; (2)]`.
impl FromStr for PathSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let is_word = !body.is_empty()
            && body.chars().all(|c| "LRlr()".contains(c))
            && body.chars().any(|c| "LRlr".contains(c));
        if !is_word {
            return body.parse().map(PathSpec::Cf);
        }
        match body.find('(') {
            None => Self::periodic(body.parse()?),
            Some(open) => {
                let rest = body[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::InvalidWord(s.to_string()))?;
                Self::eventually_periodic(body[..open].parse()?, rest.parse()?)
            }
        }
    }
}

impl Serialize for PathSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

enum Point {
    Rational(BigRational),
    Surd(ContinuedFraction),
    Infinity,
}

/// The first `n` letters of `L^{c₀} R^{c₁} L^{c₂} …`.
///
/// A negative `c₀` is read as 0: the path then converges to `ξ − c₀`, which
/// has the same Λ. A finite expansion `[c₀; …, c_k]` reaches the region
/// labeled ξ after its last block and then keeps that region on one side by
/// repeating the other letter forever.
pub fn word_from_cf(cf: &ContinuedFraction, n: usize) -> PathWord {
    let mut letters = Vec::with_capacity(n);
    let mut letter = Direction::L;
    for (i, c) in cf.iter().enumerate() {
        if letters.len() >= n {
            break;
        }
        let count = if i == 0 { c.max(0) } else { c } as usize;
        letters.extend(std::iter::repeat(letter).take(count.min(n - letters.len())));
        letter = letter.flip();
    }
    // finite expansions: `letter` is now the opposite of the last block
    letters.resize(n, letter);
    PathWord(letters)
}

/// Blocks of a periodic tail starting with `L`, doubled when the period is
/// odd so that the word itself is periodic.
fn period_word(period: &[i64]) -> PathWord {
    let times = if period.len() % 2 == 1 { 2 } else { 1 };
    let mut letters = Vec::new();
    let mut letter = Direction::L;
    for &c in period.iter().cycle().take(period.len() * times) {
        letters.extend(std::iter::repeat(letter).take(c as usize));
        letter = letter.flip();
    }
    PathWord(letters)
}

/// Continued fraction of the point reached by `prefix · period^∞`; `None`
/// for ξ = ∞.
fn cf_of_word(prefix: &PathWord, period: &PathWord) -> Result<Option<ContinuedFraction>> {
    let Some(j) = (1..period.len()).find(|&j| period.0[j] != period.0[j - 1]) else {
        // a constant tail keeps one region fixed, and ξ is its label
        let state = root_vectors().walk(prefix, &SuperbaseRule);
        let kept = match period.0[0] {
            Direction::L => state.left,
            Direction::R => state.right,
        };
        if kept.v.is_zero() {
            return Ok(None);
        }
        return ContinuedFraction::from_rational(&kept.u, &kept.v).map(Some);
    };
    // after period[..j] every copy of the rotated period starts a new run
    let head: Vec<Direction> = prefix.iter().chain(period.iter().take(j)).collect();
    let tail = runs(&period.rotate(j).0);
    let mut all = runs(&head);
    all.extend(tail.iter().copied());
    let q = quotients(&all);
    let (pre, per) = q.split_at(q.len() - tail.len());
    ContinuedFraction::periodic(pre.to_vec(), per.to_vec()).map(Some)
}

fn runs(letters: &[Direction]) -> Vec<(Direction, usize)> {
    let mut out: Vec<(Direction, usize)> = Vec::new();
    for &d in letters {
        match out.last_mut() {
            Some((l, n)) if *l == d => *n += 1,
            _ => out.push((d, 1)),
        }
    }
    out
}

/// Partial quotients from alternating runs, with `c₀ = 0` when the word
/// starts with `R`.
fn quotients(runs: &[(Direction, usize)]) -> Vec<i64> {
    let mut q = Vec::new();
    if runs.first().map(|r| r.0) == Some(Direction::R) {
        q.push(0);
    }
    q.extend(runs.iter().map(|r| r.1 as i64));
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    WindowedLimsup,
    ExactPeriodic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LyapunovEstimate {
    pub n: usize,
    pub value: f64,
    pub method: Method,
}

/// First index of the tail window `[n − ⌊n/4⌋, n]`.
pub fn window_start(n: usize) -> usize {
    (n - n / 4).max(1)
}

fn require_steps(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("the number of steps must be at least 1".into()));
    }
    Ok(())
}

/// `ln a_k / k` for `k = 1..=n`.
pub fn lyapunov_series(spec: &PathSpec, n: usize) -> Vec<(usize, f64)> {
    euclid_path(&spec.word(n))
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, t)| (k, ln_abs(&t.left) / k as f64))
        .collect()
}

pub fn lyapunov_estimate(spec: &PathSpec, n: usize) -> Result<LyapunovEstimate> {
    require_steps(n)?;
    let value = windowed_max(&lyapunov_series(spec, n), n);
    Ok(LyapunovEstimate {
        n,
        value,
        method: Method::WindowedLimsup,
    })
}

fn windowed_max(series: &[(usize, f64)], n: usize) -> f64 {
    let start = window_start(n);
    series
        .iter()
        .filter(|(k, _)| *k >= start)
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `L = [[1, 0], [1, 1]]`, `R = [[1, 1], [0, 1]]`.
pub fn word_matrix(word: &PathWord) -> [[BigInt; 2]; 2] {
    let mut m = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    for d in word.iter() {
        m = match d {
            Direction::L => [
                [&m[0][0] + &m[0][1], m[0][1].clone()],
                [&m[1][0] + &m[1][1], m[1][1].clone()],
            ],
            Direction::R => [
                [m[0][0].clone(), &m[0][0] + &m[0][1]],
                [m[1][0].clone(), &m[1][0] + &m[1][1]],
            ],
        };
    }
    m
}

/// `ln ρ(M_w) / |w|` for the product `M_w` over a nonempty word.
///
/// `M_w` has determinant 1 and trace `t ≥ 2`, so
/// `ρ = t·(1 + √(1 − 4/t²))/2`.
pub fn lyapunov_exact_periodic(word: &PathWord) -> f64 {
    assert!(!word.is_empty(), "period word must be nonempty");
    let m = word_matrix(word);
    let t = &m[0][0] + &m[1][1];
    let ln_t = ln_abs(&t);
    let x = (4f64.ln() - 2.0 * ln_t).exp();
    let ln_rho = ln_t + ((1.0 + (1.0 - x).max(0.0).sqrt()) / 2.0).ln();
    ln_rho / word.len() as f64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gl2Check {
    pub xi: String,
    pub image: String,
    pub estimate: LyapunovEstimate,
    pub image_estimate: LyapunovEstimate,
    pub exact: Option<f64>,
    pub image_exact: Option<f64>,
}

impl Gl2Check {
    /// Exact values agree to floating-point precision.
    pub fn exact_agrees(&self) -> bool {
        match (self.exact, self.image_exact) {
            (Some(a), Some(b)) => (a - b).abs() <= 1e-12,
            _ => true,
        }
    }
}

/// Λ at ξ and at `(aξ + b)/(cξ + e)` for `g = [[a, b], [c, e]]`, the image
/// re-expanded exactly.
pub fn gl2_invariance_check(spec: &PathSpec, g: [[i64; 2]; 2], n: usize) -> Result<Gl2Check> {
    let [[a, b], [c, e]] = g;
    let det = a as i128 * e as i128 - b as i128 * c as i128;
    if det.abs() != 1 {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let (a, b, c, e) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(e));
    let image = match spec.point()? {
        Point::Infinity => return Err(Error::DegenerateImage),
        Point::Rational(r) => {
            let num = &a * r.numer() + &b * r.denom();
            let den = &c * r.numer() + &e * r.denom();
            if den.is_zero() {
                return Err(Error::DegenerateImage);
            }
            ContinuedFraction::from_rational(&num, &den)?
        }
        Point::Surd(cf) => {
            let xi = cf.surd_value().expect("periodic expansion");
            xi.mobius(&a, &b, &c, &e)
                .ok_or(Error::DegenerateImage)?
                .continued_fraction()?
        }
    };
    let image = PathSpec::Cf(image);
    Ok(Gl2Check {
        xi: spec.to_string(),
        image: image.to_string(),
        estimate: lyapunov_estimate(spec, n)?,
        image_estimate: lyapunov_estimate(&image, n)?,
        exact: spec.exact_lyapunov(),
        image_exact: image.exact_lyapunov(),
    })
}

/// `ln |Q(v_k)| / k`, `v_k` the left region at step `k` of `word`.
pub fn topograph_growth_series(q: &QuadForm, word: &PathWord) -> Result<Vec<(usize, f64)>> {
    let mut t = q.root_triple();
    let mut out = Vec::with_capacity(word.len());
    for (i, d) in word.iter().enumerate() {
        t = crate::topograph::ap_step(&t, d);
        if t.left.is_zero() {
            return Err(Error::ZeroValueEncountered(PathWord(word.0[..=i].to_vec()).to_string()));
        }
        out.push((i + 1, ln_abs(&t.left) / (i + 1) as f64));
    }
    Ok(out)
}

/// Windowed growth exponent of the topograph values along the first `n`
/// letters of `spec`.
pub fn topograph_growth_exponent(q: &QuadForm, spec: &PathSpec, n: usize) -> Result<f64> {
    topograph_growth_along(q, &spec.word(n))
}

pub fn topograph_growth_along(q: &QuadForm, word: &PathWord) -> Result<f64> {
    require_steps(word.len())?;
    Ok(windowed_max(&topograph_growth_series(q, word)?, word.len()))
}

/// Indices `a_k` of the Euclid path for `k ∈ ks`, on machine integers.
fn euclid_indices(word: &PathWord) -> Result<Vec<i64>> {
    let mut t = FaceTriple::new(1i64, 1, 2);
    let mut out = vec![1];
    for d in word.iter() {
        let overflow = || Error::InvalidArgument("Euclid index exceeds 64 bits".into());
        t = match d {
            Direction::L => FaceTriple::new(t.left, t.top, t.left.checked_add(t.top).ok_or_else(overflow)?),
            Direction::R => FaceTriple::new(t.top, t.right, t.top.checked_add(t.right).ok_or_else(overflow)?),
        };
        out.push(t.left);
    }
    Ok(out)
}

/// `(1/k)·ln(x̃_k / x_k)` for `k` in `ks`, where `x_k = P_{a_k}` and
/// `x̃_k = m·a_k·q·U_{a_k}`.
fn relative_growth_at(ctx: &PellContext, indices: &[i64], ks: impl Iterator<Item = usize>) -> Result<Vec<(usize, f64)>> {
    if ctx.m.is_zero() {
        return Err(Error::InvalidArgument("shadow scale m must be nonzero".into()));
    }
    let mut cache: HashMap<i64, f64> = HashMap::new();
    let scale = ln_abs(&(&ctx.m * &ctx.pell.q));
    ks.map(|k| {
        let a = indices[k];
        let ratio = *cache.entry(a).or_insert_with(|| {
            let pw = ctx.power(a);
            ln_abs_ratio(&pw.u, &pw.p)
        });
        Ok((k, (scale + (a as f64).ln() + ratio) / k as f64))
    })
    .collect()
}

pub fn relative_shadow_series(ctx: &PellContext, spec: &PathSpec, n: usize) -> Result<Vec<(usize, f64)>> {
    let indices = euclid_indices(&spec.word(n))?;
    relative_growth_at(ctx, &indices, 1..=n)
}

/// Windowed `(1/k)·ln(x̃_k / x_k)` along the path; tends to Λ(ξ).
pub fn relative_shadow_growth(ctx: &PellContext, spec: &PathSpec, n: usize) -> Result<f64> {
    require_steps(n)?;
    let indices = euclid_indices(&spec.word(n))?;
    let series = relative_growth_at(ctx, &indices, window_start(n)..=n)?;
    Ok(windowed_max(&series, n))
}

/// `x̃(a) / (a·x(a)) = m·q·U_a / P_a`, exactly; tends to `m/√d`.
pub fn theorem4_ratio(ctx: &PellContext, a: i64) -> Result<BigRational> {
    if a < 1 {
        return Err(Error::InvalidArgument(format!("index must be ≥ 1, got {a}")));
    }
    let pw = ctx.power(a);
    Ok(BigRational::new(&ctx.m * &ctx.pell.q * pw.u, pw.p))
}

/// `|r − √n|` bound check: `r` is within `tol` of `√n` scaled by `scale`,
/// using a `digits`-digit integer square root.
pub fn within_of_sqrt(r: &BigRational, scale: &BigRational, n: u64, digits: u32, tol: &BigRational) -> bool {
    let ten = BigInt::from(10);
    let unit = num_traits::pow(ten, digits as usize);
    let root = num_integer::Roots::sqrt(&(BigInt::from(n) * &unit * &unit));
    let sqrt = BigRational::new(root, unit.clone());
    // truncation error of the root is below 10^-digits
    let slack = BigRational::new(BigInt::one(), unit) * scale.abs();
    (r - scale * sqrt).abs() < tol - slack
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::sqrt_continued_fraction;
    use crate::tree::Region;
    use num_integer::Integer;
    use proptest::prelude::*;

    const LN_PHI: f64 = 0.481_211_825_059_603_4;

    fn w(s: &str) -> PathWord {
        s.parse().unwrap()
    }

    fn spec(s: &str) -> PathSpec {
        s.parse().unwrap()
    }

    #[test]
    fn euclid_examples() {
        let path = euclid_path(&PathWord::root());
        assert_eq!(path, vec![FaceTriple::new(1.into(), 1.into(), 2.into())]);
        let golden = euclid_path(&PathSpec::golden().word(12));
        let a: Vec<String> = golden.iter().map(|t| t.left.to_string()).collect();
        assert_eq!(a, ["1", "1", "3", "3", "8", "8", "21", "21", "55", "55", "144", "144", "377"]);
        // the Euclid tree is the topograph of u + v
        let tree = euclid_tree(5).unwrap();
        for (word, t) in tree.iter() {
            let v = root_vectors().walk(&word, &SuperbaseRule);
            assert_eq!(*t, v.map(|r| i64::try_from(&r.u + &r.v).unwrap()));
        }
    }

    #[test]
    fn cf_words() {
        assert_eq!(PathSpec::golden().word(6).to_string(), "LRLRLR");
        let sqrt2 = PathSpec::Cf(sqrt_continued_fraction(2).unwrap());
        assert_eq!(sqrt2.word(9).to_string(), "LRRLLRRLL");
        // rationals end on a tree edge
        assert_eq!(spec("[1;]").word(5).to_string(), "LRRRR");
        assert_eq!(spec("[0;]").word(4).to_string(), "RRRR");
        assert_eq!(spec("[0; 2, 3]").word(8).to_string(), "RRLLLRRR");
        assert_eq!(spec("[-2; 1, (1)]").word(4), PathSpec::golden().word(5).0[1..].to_vec().into());
    }

    /// Stern–Brocot descent by mediants, independent of the topograph code.
    fn stern_brocot(word: &PathWord) -> (i64, i64) {
        let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 0i64));
        let mut node = (1, 1);
        for d in word.iter() {
            match d {
                Direction::L => lo = node,
                Direction::R => hi = node,
            }
            node = (lo.0 + hi.0, lo.1 + hi.1);
        }
        node
    }

    #[test]
    fn top_labels_follow_stern_brocot() {
        for i in 0..(1 << 9) - 1 {
            let word = PathWord::from_heap_index(i);
            let v = root_vectors().walk(&word, &SuperbaseRule).top;
            let (p, q) = stern_brocot(&word);
            assert_eq!((v.u, v.v), (p.into(), q.into()), "{word}");
        }
    }

    #[test]
    fn labels_converge_to_xi() {
        for s in ["[0; 2, 3]", "[2; 5]", "[1;]", "[0;]"] {
            let sp = spec(s);
            let PathSpec::Cf(cf) = &sp else { unreachable!() };
            let xi = cf.rational_value().unwrap();
            let word = sp.word(40);
            let v = root_vectors().walk(&word, &SuperbaseRule);
            let kept = [Region::Left, Region::Right]
                .iter()
                .map(|&r| v.get(r).clone())
                .any(|r| BigRational::new(r.u, r.v) == xi);
            assert!(kept, "{s}");
        }
        // irrational: the top label approaches the value
        for sp in [PathSpec::golden(), PathSpec::Cf(sqrt_continued_fraction(7).unwrap())] {
            let PathSpec::Cf(cf) = &sp else { unreachable!() };
            let top = root_vectors().walk(&sp.word(60), &SuperbaseRule).top;
            let approx = crate::numeric::ln_abs_ratio(&top.u, &top.v).exp();
            assert!((approx - cf.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_periodic_examples() {
        assert!((lyapunov_exact_periodic(&w("LR")) - LN_PHI).abs() < 1e-12);
        assert_eq!(lyapunov_exact_periodic(&w("L")), 0.0);
        assert_eq!(lyapunov_exact_periodic(&w("LLR")), lyapunov_exact_periodic(&w("LRL")));
        let m = word_matrix(&w("LR"));
        assert_eq!(m, [[1.into(), 1.into()], [1.into(), 2.into()]]);
    }

    #[test]
    fn estimates() {
        let golden = lyapunov_estimate(&PathSpec::golden(), 40).unwrap();
        assert!((golden.value - LN_PHI).abs() < 0.02, "{}", golden.value);
        let rational = lyapunov_estimate(&spec("[0; 2, 3]"), 500).unwrap();
        assert!(rational.value < 0.05);
        assert!(lyapunov_estimate(&PathSpec::golden(), 0).is_err());
        assert_eq!(PathSpec::golden().exact_lyapunov(), Some(lyapunov_exact_periodic(&w("LR"))));
        assert_eq!(spec("[3; 7]").exact_lyapunov(), Some(0.0));
    }

    #[test]
    fn word_specs_round_trip_through_cf() {
        for (word, cf) in [("LR", "[1; (1)]"), ("LRR", "[1; (2, 1)]"), ("RRL(LR)", "[0; 2, 2, (1)]")] {
            let PathSpec::Word { prefix, period } = spec(word) else { unreachable!() };
            let got = cf_of_word(&prefix, &period).unwrap().unwrap();
            assert_eq!(got.to_string(), spec(cf).to_string(), "{word}");
            assert_eq!(PathSpec::Cf(got).word(30), spec(word).word(30));
        }
        let PathSpec::Word { prefix, period } = spec("L") else { unreachable!() };
        assert!(cf_of_word(&prefix, &period).unwrap().is_none());
    }

    #[test]
    fn gl2_examples() {
        let c = gl2_invariance_check(&PathSpec::golden(), [[1, 1], [0, 1]], 200).unwrap();
        assert!((c.exact.unwrap() - LN_PHI).abs() < 1e-12);
        assert!(c.exact_agrees());
        let sqrt2 = PathSpec::Cf(sqrt_continued_fraction(2).unwrap());
        let c = gl2_invariance_check(&sqrt2, [[0, 1], [1, 0]], 200).unwrap();
        assert!(c.exact_agrees());
        assert!((c.estimate.value - c.image_estimate.value).abs() < 0.05);
        let c = gl2_invariance_check(&sqrt2, [[1, 0], [0, 1]], 100).unwrap();
        assert_eq!(c.estimate, c.image_estimate);
        let c = gl2_invariance_check(&spec("[0; 2, 3]"), [[2, 1], [1, 1]], 100).unwrap();
        assert_eq!(c.image_exact, Some(0.0));
        assert!(matches!(
            gl2_invariance_check(&spec("[1;]"), [[1, 0], [1, -1]], 10),
            Err(Error::DegenerateImage)
        ));
        assert!(matches!(
            gl2_invariance_check(&sqrt2, [[2, 0], [0, 1]], 10),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn growth_exponents() {
        let golden = topograph_growth_exponent(&QuadForm::new(1, 1, 1), &PathSpec::golden(), 40).unwrap();
        assert!((golden - 2.0 * LN_PHI).abs() < 0.05, "{golden}");
        let q = QuadForm::new(17, -12, 2);
        let river = crate::topograph::find_river(&q).unwrap();
        assert!(!river.reflected);
        let along = topograph_growth_along(&q, &river.word(20)).unwrap();
        assert!(along < 0.05, "{along}");
        // polynomial growth: the exponent decays like ln n / n
        let sum_of_squares = QuadForm::new(1, 0, 1);
        let short = topograph_growth_exponent(&sum_of_squares, &spec("[0; 2, 3]"), 500).unwrap();
        let long = topograph_growth_exponent(&sum_of_squares, &spec("[0; 2, 3]"), 2000).unwrap();
        assert!(long < short && long < 0.02, "{short} {long}");
        // x² − 2y² vanishes nowhere but x² − y² does, along R^∞ at (1, 1)
        assert!(matches!(
            topograph_growth_along(&QuadForm::new(1, 0, -1), &w("RR")),
            Err(Error::ZeroValueEncountered(_))
        ));
    }

    #[test]
    fn relative_growth() {
        let ctx = PellContext::new(2, 1).unwrap();
        let g = relative_shadow_growth(&ctx, &PathSpec::golden(), 20).unwrap();
        assert!((g - LN_PHI).abs() < 0.1, "{g}");
        let flat = relative_shadow_growth(&ctx, &spec("[0; 2, 3]"), 300).unwrap();
        assert!(flat.abs() < 0.05);
        assert!(relative_shadow_growth(&PellContext::new(2, 0).unwrap(), &PathSpec::golden(), 5).is_err());
        // finite identity: ln(x̃/x) from exact integers
        let series = relative_shadow_series(&ctx, &PathSpec::golden(), 6).unwrap();
        let (k, v) = series[5];
        let a = euclid_path(&PathSpec::golden().word(6))[6].left.clone();
        let a64 = i64::try_from(&a).unwrap();
        let x = ctx.half_trace(a64);
        let shadow = &a * &ctx.pell.q * ctx.half_diff_unit(a64);
        assert!((v * k as f64 - ln_abs_ratio(&shadow, &x)).abs() < 1e-12);
    }

    #[test]
    fn theorem4_examples() {
        let ctx = PellContext::new(2, 1).unwrap();
        assert_eq!(theorem4_ratio(&ctx, 1).unwrap(), BigRational::new(2.into(), 3.into()));
        let r = theorem4_ratio(&ctx, 30).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let tol = BigRational::new(1.into(), 1_000_000_000.into());
        assert!(within_of_sqrt(&r, &half, 2, 40, &tol));
        let zero = PellContext::new(2, 0).unwrap();
        assert!(theorem4_ratio(&zero, 5).unwrap().is_zero());
        assert!(theorem4_ratio(&ctx, 0).is_err());
    }

    fn periodic_word() -> impl Strategy<Value = PathWord> {
        prop::collection::vec(prop::bool::ANY, 2..8)
            .prop_filter("both letters", |v| v.iter().any(|&b| b) && v.iter().any(|&b| !b))
            .prop_map(|v| PathWord(v.into_iter().map(|b| if b { Direction::L } else { Direction::R }).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn path_invariants(word in prop::collection::vec(prop::bool::ANY, 0..200)) {
            let word = PathWord(word.into_iter().map(|b| if b { Direction::L } else { Direction::R }).collect());
            let path = euclid_path(&word);
            for pair in path.windows(2) {
                let [t, next] = pair else { unreachable!() };
                prop_assert_eq!(&t.left + &t.right, t.top.clone());
                prop_assert!(t.left.gcd(&t.right).is_one());
                prop_assert!(next.top > t.top);
            }
        }

        #[test]
        fn rotation_invariance(word in periodic_word(), k in 0usize..8) {
            let a = lyapunov_exact_periodic(&word);
            let b = lyapunov_exact_periodic(&word.rotate(k));
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn estimate_converges_to_exact(word in periodic_word()) {
            let spec = PathSpec::periodic(word.clone()).unwrap();
            let est = lyapunov_estimate(&spec, 300).unwrap().value;
            let exact = lyapunov_exact_periodic(&word);
            prop_assert!((est - exact).abs() < 0.02, "{} vs {}", est, exact);
            prop_assert!(est <= LN_PHI + 0.02);
            prop_assert!(exact <= LN_PHI + 1e-12);
        }
    }
}
