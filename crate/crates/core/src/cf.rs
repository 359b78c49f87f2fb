//! Simple continued fractions: finite, or eventually periodic.
//!
//! Eventually periodic expansions are exactly the real quadratic irrationals;
//! [`QuadraticSurd`] expands them with exact integer arithmetic, which is what
//! lets the GL₂(ℤ) invariance check re-expand `(aξ + b)/(cξ + d)` without any
//! floating point.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numeric::is_perfect_square;

/// `[c₀; c₁, …, c_k, (p₁, …, p_m)]`: the `terms` followed by `period`
/// repeated forever. An empty period means a finite (rational) expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    terms: Vec<i64>,
    period: Vec<i64>,
}

impl ContinuedFraction {
    pub fn new(terms: Vec<i64>, period: Vec<i64>) -> Result<Self> {
        if terms.is_empty() && period.is_empty() {
            return Err(Error::InvalidContinuedFraction("no partial quotients".into()));
        }
        let tail_ok = terms.iter().skip(1).chain(period.iter()).all(|&c| c >= 1);
        if !tail_ok {
            return Err(Error::InvalidContinuedFraction(
                "partial quotients after the first must be ≥ 1".into(),
            ));
        }
        let mut cf = ContinuedFraction { terms, period };
        cf.normalize();
        Ok(cf)
    }

    pub fn finite(terms: Vec<i64>) -> Result<Self> {
        Self::new(terms, Vec::new())
    }

    pub fn periodic(terms: Vec<i64>, period: Vec<i64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidContinuedFraction("empty period".into()));
        }
        Self::new(terms, period)
    }

    /// The golden ratio `[1; 1, 1, …]`.
    pub fn golden() -> Self {
        ContinuedFraction {
            terms: vec![1],
            period: vec![1],
        }
    }

    /// Expansion of the rational `num/den`.
    pub fn from_rational(num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidContinuedFraction("zero denominator".into()));
        }
        let (mut n, mut d) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let mut terms = Vec::new();
        while !d.is_zero() {
            let (q, r) = n.div_mod_floor(&d);
            terms.push(
                q.to_i64()
                    .ok_or_else(|| Error::InvalidContinuedFraction("quotient overflow".into()))?,
            );
            n = d;
            d = r;
        }
        Self::finite(terms)
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn is_rational(&self) -> bool {
        self.period.is_empty()
    }

    /// Partial quotient `c_i`.
    pub fn get(&self, i: usize) -> i64 {
        if i < self.terms.len() {
            self.terms[i]
        } else {
            self.period[(i - self.terms.len()) % self.period.len()]
        }
    }

    /// Partial quotients in order; infinite when periodic.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        let tail = (!self.period.is_empty())
            .then(|| self.period.iter().copied().cycle())
            .into_iter()
            .flatten();
        self.terms.iter().copied().chain(tail)
    }

    // Finite expansions end in a quotient ≥ 2 (unless they are the single
    // term); periodic ones keep the shortest prefix and period.
    fn normalize(&mut self) {
        if self.period.is_empty() {
            while self.terms.len() >= 2 && *self.terms.last().unwrap() == 1 {
                self.terms.pop();
                *self.terms.last_mut().unwrap() += 1;
            }
            return;
        }
        // shortest period
        let p = self.period.len();
        if let Some(k) = (1..=p).find(|&k| p % k == 0 && (k..p).all(|i| self.period[i] == self.period[i - k])) {
            self.period.truncate(k);
        }
        // absorb prefix terms that already follow the period backwards
        while self.terms.len() > 1 && self.terms.last() == self.period.last() {
            self.terms.pop();
            self.period.rotate_right(1);
        }
        if self.terms.is_empty() {
            self.terms.push(self.period[0]);
            self.period.rotate_left(1);
        }
    }

    /// Convergent `h/k` after the first `n + 1` partial quotients.
    pub fn convergent(&self, n: usize) -> BigRational {
        let (mut h0, mut h1) = (BigInt::one(), BigInt::from(self.get(0)));
        let (mut k0, mut k1) = (BigInt::zero(), BigInt::one());
        for c in self.iter().skip(1).take(n) {
            let h2 = &h1 * c + &h0;
            let k2 = &k1 * c + &k0;
            h0 = std::mem::replace(&mut h1, h2);
            k0 = std::mem::replace(&mut k1, k2);
        }
        BigRational::new(h1, k1)
    }

    /// Exact value of a finite expansion.
    pub fn rational_value(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| self.convergent(self.terms.len() - 1))
    }

    /// Exact value of a periodic expansion as `(P + √D)/Q`.
    pub fn surd_value(&self) -> Option<QuadraticSurd> {
        if self.is_rational() {
            return None;
        }
        // ω = [p₁; …, p_m, ω] solves Cω² + (E − A)ω − B = 0 where
        // [[A, B], [C, E]] is the convergent matrix of the period.
        let [a, b, c, e] = convergent_matrix(&self.period);
        let omega = QuadraticSurd::new(&a - &e, (&a - &e) * (&a - &e) + 4 * &b * &c, 2 * &c)
            .expect("purely periodic expansion is irrational");
        let [ha, hb, hc, he] = convergent_matrix(&self.terms);
        Some(omega.mobius(&ha, &hb, &hc, &he).expect("irrational image"))
    }

    /// Floating-point value, from a long convergent.
    pub fn to_f64(&self) -> f64 {
        let n = if self.is_rational() {
            self.terms.len() - 1
        } else {
            self.terms.len() + 64
        };
        let r = self.convergent(n);
        if r.numer().is_zero() {
            return 0.0;
        }
        sign_f64(r.numer()) * crate::numeric::ln_abs_ratio(r.numer(), r.denom()).exp()
    }
}

fn sign_f64(n: &BigInt) -> f64 {
    if n.is_negative() {
        -1.0
    } else {
        1.0
    }
}

/// `Π [[cᵢ, 1], [1, 0]]`, flattened row-major.
fn convergent_matrix(quotients: &[i64]) -> [BigInt; 4] {
    let mut m = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for &c in quotients {
        // m · [[c, 1], [1, 0]]
        m = [
            &m[0] * c + &m[1],
            m[0].clone(),
            &m[2] * c + &m[3],
            m[2].clone(),
        ];
    }
    m
}

/// `[a0; a1, …]` with a parenthesized period, e.g. `1;(2)` for √2, `[0; 2, 3]`
/// for 3/7. A trailing `...` repeats the final term, so `1,1,1,...` is the
/// golden ratio.
impl FromStr for ContinuedFraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidContinuedFraction(format!("{s:?}: {why}"));
        let mut body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if body.starts_with('[') && body.ends_with(']') {
            body = body[1..body.len() - 1].to_string();
        }
        let mut repeat_last = false;
        for ell in ["...", "…"] {
            if let Some(stripped) = body.strip_suffix(ell) {
                body = stripped.trim_end_matches(',').to_string();
                repeat_last = true;
            }
        }
        let body = body.replacen(';', ",", 1);
        let (head, period) = match body.find('(') {
            Some(i) => {
                let inner = body[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| bad("unclosed period"))?;
                (body[..i].trim_end_matches(',').to_string(), inner.to_string())
            }
            None => (body.clone(), String::new()),
        };
        let parse_list = |t: &str| -> Result<Vec<i64>> {
            t.split(',')
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<i64>().map_err(|_| bad("not an integer")))
                .collect()
        };
        let mut terms = parse_list(&head)?;
        let mut period = parse_list(&period)?;
        if repeat_last {
            if !period.is_empty() {
                return Err(bad("both a period and a trailing ellipsis"));
            }
            let last = terms.pop().ok_or_else(|| bad("nothing to repeat"))?;
            period.push(last);
        }
        ContinuedFraction::new(terms, period)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        let rest: Vec<String> = self.terms[1..].iter().map(|c| c.to_string()).collect();
        let mut sep = ";";
        if !rest.is_empty() {
            write!(f, "; {}", rest.join(", "))?;
            sep = ",";
        }
        if !self.period.is_empty() {
            let p: Vec<String> = self.period.iter().map(|c| c.to_string()).collect();
            write!(f, "{sep} ({})", p.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Periodic expansion of `√d` for nonsquare `d`: `[a₀; (a₁, …, a_{r−1}, 2a₀)]`.
pub fn sqrt_continued_fraction(d: u64) -> Result<ContinuedFraction> {
    let a0 = d.sqrt();
    if a0 * a0 == d {
        return Err(Error::SquareInput(d));
    }
    let (d, a0) = (d as i128, a0 as i128);
    let (mut m, mut den, mut a) = (0i128, 1i128, a0);
    let mut period = Vec::new();
    loop {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        period.push(a as i64);
        if a == 2 * a0 {
            break;
        }
    }
    ContinuedFraction::periodic(vec![a0 as i64], period)
}

/// A real quadratic irrational `(P + √D)/Q` with `Q | D − P²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    d: BigInt,
    q: BigInt,
}

impl QuadraticSurd {
    /// Returns `None` when the value is rational (`D` a perfect square).
    pub fn new(p: BigInt, d: BigInt, q: BigInt) -> Option<Self> {
        assert!(!q.is_zero(), "zero denominator");
        if is_perfect_square(&d) {
            return None;
        }
        let (p, d, q) = if (&d - &p * &p).is_multiple_of(&q) {
            (p, d, q)
        } else {
            let qa = q.abs();
            (&p * &qa, &d * &q * &q, &q * &qa)
        };
        Some(QuadraticSurd { p, d, q })
    }

    /// `(aξ + b)/(cξ + e)`; `None` if the result is rational or infinite,
    /// which for an irrational ξ only happens with a singular matrix.
    pub fn mobius(&self, a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt) -> Option<Self> {
        // ξ = (P + √D)/Q  ⇒  image = (α + a√D)/(γ + c√D), α = aP + bQ, γ = cP + eQ
        let alpha = a * &self.p + b * &self.q;
        let gamma = c * &self.p + e * &self.q;
        let x = &alpha * &gamma - a * c * &self.d;
        let y = a * &gamma - &alpha * c;
        let z = &gamma * &gamma - c * c * &self.d;
        if y.is_zero() || z.is_zero() {
            return None;
        }
        let (x, y, z) = if y.is_negative() { (-x, -y, -z) } else { (x, y, z) };
        QuadraticSurd::new(x, &y * &y * &self.d, z)
    }

    pub fn floor(&self) -> BigInt {
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + &s).div_floor(&self.q)
        } else {
            // √D is irrational, so (P + √D)/|Q| is never an integer
            let down: BigInt = (&self.p + &s).div_floor(&-&self.q);
            -(down + BigInt::one())
        }
    }

    /// Exact expansion, detecting the period by repetition of `(P, Q)`.
    pub fn continued_fraction(&self) -> Result<ContinuedFraction> {
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut quotients = Vec::new();
        let (mut p, mut q) = (self.p.clone(), self.q.clone());
        let d = &self.d;
        let limit = 100_000;
        loop {
            if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
                let period = quotients.split_off(start);
                return ContinuedFraction::periodic(quotients, period);
            }
            if quotients.len() > limit {
                return Err(Error::InvalidContinuedFraction(
                    "period detection did not terminate".into(),
                ));
            }
            seen.insert((p.clone(), q.clone()), quotients.len());
            let surd = QuadraticSurd {
                p: p.clone(),
                d: d.clone(),
                q: q.clone(),
            };
            let a = surd.floor();
            quotients.push(
                a.to_i64()
                    .ok_or_else(|| Error::InvalidContinuedFraction("quotient overflow".into()))?,
            );
            // 1/(ξ − a) = (P′ + √D)/Q′ with P′ = aQ − P, Q′ = (D − P′²)/Q
            let p_next = &a * &q - &p;
            let q_next = (d - &p_next * &p_next) / &q;
            p = p_next;
            q = q_next;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::INFINITY);
        (self.p.to_f64().unwrap_or(0.0) + d.sqrt()) / self.q.to_f64().unwrap_or(1.0)
    }
}
