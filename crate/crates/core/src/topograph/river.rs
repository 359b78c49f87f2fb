//! Conway's river: the periodic path of edges separating the positive and
//! negative values of a nondegenerate indefinite form.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{ap_step, QuadForm};
use crate::error::{Error, Result};
use crate::numeric::{is_perfect_square, sign};
use crate::tree::{Direction, FaceTriple, PathWord};

/// Bound on search and walking steps.
pub const RIVER_STEP_LIMIT: usize = 1_000_000;

/// One end of the river, reached from the root of the upper tree.
///
/// Every vertex at `approach · periodᵏ · (prefix of period)` is entered
/// through a river edge, i.e. its `left` and `right` values have opposite
/// signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RiverDescription {
    /// The form whose upper tree was searched: the input, or `Q(x, −y)` when
    /// both river ends lie on the negative side.
    pub form: QuadForm,
    pub reflected: bool,
    pub approach: PathWord,
    #[serde(serialize_with = "crate::render::decimal_triple")]
    pub start: FaceTriple<BigInt>,
    pub period: PathWord,
    #[serde(serialize_with = "crate::render::decimal_triples")]
    pub period_states: Vec<FaceTriple<BigInt>>,
}

impl RiverDescription {
    /// `approach` followed by `repeats` copies of the period.
    pub fn word(&self, repeats: usize) -> PathWord {
        self.approach.concat(&self.period.repeat(repeats))
    }
}

pub fn is_river_edge(t: &FaceTriple<BigInt>) -> bool {
    sign(&t.left) * sign(&t.right) < 0
}

/// Continuing up a river edge: `top` shares its sign with exactly one of
/// `left`, `right`, and the river leaves between `top` and the other one.
pub fn river_step(t: &FaceTriple<BigInt>) -> Direction {
    if sign(&t.top) == sign(&t.left) {
        Direction::R
    } else {
        Direction::L
    }
}

pub fn find_river(q: &QuadForm) -> Result<RiverDescription> {
    let disc = q.discriminant();
    if !disc.is_positive() {
        return Err(Error::NotIndefinite(disc.to_string()));
    }
    if is_perfect_square(&disc) {
        return Err(Error::SquareDiscriminant(disc.to_string()));
    }

    // Q(ξ, 1) has a root in (0, ∞) iff the river enters the upper tree.
    let ab = sign(&q.a) * sign(&q.b);
    let ha = sign(&q.h) * sign(&q.a);
    let reflected = !(ab < 0 || (ab > 0 && ha < 0));
    let form = if reflected { q.reflected() } else { q.clone() };

    let found = search(&form)?;
    let lowest = lowest_on_branch(&form, found);
    walk(&form, reflected, lowest)
}

/// Best-first descent over the upper tree by `|left| + |right|`; values grow
/// away from the river, so the smallest edges lead to it.
fn search(q: &QuadForm) -> Result<PathWord> {
    let mut heap = BinaryHeap::new();
    let root = q.root_triple();
    heap.push(Reverse((root.left.abs() + root.right.abs(), PathWord::root(), Wrapped(root))));
    let mut steps = 0;
    while let Some(Reverse((_, word, Wrapped(t)))) = heap.pop() {
        if t.as_array().iter().any(|v| v.is_zero()) {
            return Err(Error::ZeroValueEncountered(word.to_string()));
        }
        if is_river_edge(&t) {
            return Ok(word);
        }
        steps += 1;
        if steps > RIVER_STEP_LIMIT {
            return Err(Error::RiverSearchExhausted(RIVER_STEP_LIMIT));
        }
        for d in [Direction::L, Direction::R] {
            let c = ap_step(&t, d);
            heap.push(Reverse((c.left.abs() + c.right.abs(), word.child(d), Wrapped(c))));
        }
    }
    unreachable!("the upper tree is infinite")
}

// Orders heap entries by key and word only.
#[derive(Debug)]
struct Wrapped(FaceTriple<BigInt>);

impl PartialEq for Wrapped {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Wrapped {}
impl PartialOrd for Wrapped {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Wrapped {
    fn cmp(&self, _: &Self) -> std::cmp::Ordering {
        std::cmp::Ordering::Equal
    }
}

fn lowest_on_branch(q: &QuadForm, mut word: PathWord) -> PathWord {
    while let Some(parent) = word.parent() {
        let t = q.root_triple().walk(&parent, &super::ArithmeticProgression);
        if !is_river_edge(&t) {
            break;
        }
        word = parent;
    }
    word
}

fn walk(q: &QuadForm, reflected: bool, approach: PathWord) -> Result<RiverDescription> {
    let start = q.root_triple().walk(&approach, &super::ArithmeticProgression);
    let mut seen: HashMap<FaceTriple<BigInt>, usize> = HashMap::new();
    let mut states: Vec<FaceTriple<BigInt>> = Vec::new();
    let mut letters = Vec::new();
    let mut t = start;
    for _ in 0..RIVER_STEP_LIMIT {
        if t.as_array().iter().any(|v| v.is_zero()) {
            let at = approach.concat(&PathWord(letters.clone()));
            return Err(Error::ZeroValueEncountered(at.to_string()));
        }
        if let Some(&first) = seen.get(&t) {
            let mut approach = approach;
            for &d in &letters[..first] {
                approach.push(d);
            }
            return Ok(RiverDescription {
                form: q.clone(),
                reflected,
                approach,
                start: states[first].clone(),
                period: PathWord(letters[first..].to_vec()),
                period_states: states[first..].to_vec(),
            });
        }
        seen.insert(t.clone(), states.len());
        let d = river_step(&t);
        let next = ap_step(&t, d);
        states.push(t);
        letters.push(d);
        t = next;
    }
    Err(Error::RiverSearchExhausted(RIVER_STEP_LIMIT))
}
