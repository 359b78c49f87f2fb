//! Node addressing shared by every topograph-shaped tree in the crate.
//!
//! # Orientation
//!
//! A vertex of the topograph is entered through one edge from below. The two
//! regions flanking that edge are `left` and `right`; the region opposite the
//! entering edge, between the two outgoing edges, is `top`. Crossing out of a
//! vertex:
//!
//! * `L` takes the edge between `left` and `top`. The child keeps `left`,
//!   promotes `top` to its `right`, and the region across the edge becomes its
//!   `top`. The region left behind is `right`.
//! * `R` takes the edge between `top` and `right`. The child promotes `top` to
//!   its `left`, keeps `right`, and leaves `left` behind.
//!
//! At the root vertex of a quadratic-form topograph the regions are
//! `left = e₁ = (1,0)`, `right = e₂ = (0,1)` and `top = e₁ + e₂ = (1,1)` (the
//! lax vector `±e₃`). Markov, Mordell, Euclid and Farey trees all use this
//! convention, so a [`PathWord`] names the same vertex in each of them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    L,
    R,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::L => Direction::R,
            Direction::R => Direction::L,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Direction::L => 'L',
            Direction::R => 'R',
        }
    }
}

/// A word over `{L, R}` addressing a vertex from the root; empty is the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWord(pub Vec<Direction>);

impl PathWord {
    pub fn root() -> Self {
        PathWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Direction> + '_ {
        self.0.iter().copied()
    }

    pub fn push(&mut self, d: Direction) {
        self.0.push(d);
    }

    pub fn child(&self, d: Direction) -> PathWord {
        let mut w = self.clone();
        w.push(d);
        w
    }

    pub fn parent(&self) -> Option<PathWord> {
        if self.is_empty() {
            None
        } else {
            Some(PathWord(self.0[..self.len() - 1].to_vec()))
        }
    }

    pub fn concat(&self, other: &PathWord) -> PathWord {
        PathWord(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn repeat(&self, times: usize) -> PathWord {
        PathWord(self.0.repeat(times))
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> PathWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        PathWord(v)
    }

    /// Word of the node at `index` in heap order (root 0, children `2i+1`, `2i+2`).
    pub fn from_heap_index(index: usize) -> PathWord {
        let mut letters = Vec::new();
        let mut i = index;
        while i > 0 {
            letters.push(if i % 2 == 1 { Direction::L } else { Direction::R });
            i = (i - 1) / 2;
        }
        letters.reverse();
        PathWord(letters)
    }

    pub fn heap_index(&self) -> usize {
        self.iter().fold(0, |i, d| match d {
            Direction::L => 2 * i + 1,
            Direction::R => 2 * i + 2,
        })
    }
}

impl From<Vec<Direction>> for PathWord {
    fn from(v: Vec<Direction>) -> Self {
        PathWord(v)
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.iter() {
            write!(f, "{}", d.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PathWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'L' | 'l' => Ok(Direction::L),
                'R' | 'r' => Ok(Direction::R),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(PathWord)
    }
}

impl Serialize for PathWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which of the three regions around a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    Left,
    Right,
    Top,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Left, Region::Right, Region::Top];
}

/// Values on the three regions around a vertex, in `(left, right, top)` order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceTriple<T> {
    pub left: T,
    pub right: T,
    pub top: T,
}

impl<T> FaceTriple<T> {
    pub fn new(left: T, right: T, top: T) -> Self {
        FaceTriple { left, right, top }
    }

    pub fn get(&self, region: Region) -> &T {
        match region {
            Region::Left => &self.left,
            Region::Right => &self.right,
            Region::Top => &self.top,
        }
    }

    pub fn as_array(&self) -> [&T; 3] {
        [&self.left, &self.right, &self.top]
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> FaceTriple<U> {
        FaceTriple::new(f(&self.left), f(&self.right), f(&self.top))
    }
}

impl<T: Clone> FaceTriple<T> {
    /// The vertex across the `d` edge, with the new region computed by `rule`.
    pub fn child<R: ExchangeRule<Value = T> + ?Sized>(&self, d: Direction, rule: &R) -> Self {
        match d {
            Direction::L => FaceTriple::new(
                self.left.clone(),
                self.top.clone(),
                rule.exchange(&self.left, &self.top, &self.right),
            ),
            Direction::R => FaceTriple::new(
                self.top.clone(),
                self.right.clone(),
                rule.exchange(&self.top, &self.right, &self.left),
            ),
        }
    }

    /// The vertex at the other end of the entering edge, seen from above:
    /// `left` and `right` are kept and `top` is exchanged.
    pub fn reflect<R: ExchangeRule<Value = T> + ?Sized>(&self, rule: &R) -> Self {
        FaceTriple::new(
            self.left.clone(),
            self.right.clone(),
            rule.exchange(&self.left, &self.right, &self.top),
        )
    }

    pub fn walk<R: ExchangeRule<Value = T> + ?Sized>(&self, word: &PathWord, rule: &R) -> Self {
        word.iter().fold(self.clone(), |t, d| t.child(d, rule))
    }
}

impl<T: fmt::Display> fmt::Display for FaceTriple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.left, self.right, self.top)
    }
}

/// Local rule producing the region across an edge.
///
/// `a` and `b` flank the crossed edge; `opposite` is the region being
/// replaced. Topographs use the arithmetic progression rule, Markov and
/// Mordell trees their Vieta involutions.
pub trait ExchangeRule {
    type Value;

    fn exchange(&self, a: &Self::Value, b: &Self::Value, opposite: &Self::Value) -> Self::Value;
}

/// A complete binary tree stored in heap order, `L` child before `R` child.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree<T> {
    depth: usize,
    nodes: Vec<T>,
}

pub const DEFAULT_DEPTH_LIMIT: usize = 24;

pub fn check_depth(depth: usize, limit: usize) -> Result<()> {
    if depth > limit {
        Err(Error::DepthLimit {
            requested: depth,
            limit,
        })
    } else {
        Ok(())
    }
}

impl<T> Tree<T> {
    pub fn node_count(depth: usize) -> usize {
        (1usize << (depth + 1)) - 1
    }

    /// Builds the tree top-down; `expand(parent, d)` produces a child.
    pub fn build(root: T, depth: usize, mut expand: impl FnMut(&T, Direction) -> T) -> Self {
        let count = Self::node_count(depth);
        let mut nodes = Vec::with_capacity(count);
        nodes.push(root);
        for i in 1..count {
            let parent = (i - 1) / 2;
            let d = if i % 2 == 1 { Direction::L } else { Direction::R };
            let child = expand(&nodes[parent], d);
            nodes.push(child);
        }
        Tree { depth, nodes }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &T {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn get(&self, word: &PathWord) -> Option<&T> {
        if word.len() > self.depth {
            return None;
        }
        self.nodes.get(word.heap_index())
    }

    /// Nodes with their addresses, breadth first.
    pub fn iter(&self) -> impl Iterator<Item = (PathWord, &T)> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (PathWord::from_heap_index(i), n))
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Tree<U> {
        Tree {
            depth: self.depth,
            nodes: self.nodes.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Tree<FaceTriple<T>> {
    pub fn generate<R: ExchangeRule<Value = T> + ?Sized>(
        root: FaceTriple<T>,
        depth: usize,
        rule: &R,
    ) -> Self {
        Tree::build(root, depth, |t, d| t.child(d, rule))
    }
}
