//! Conway topographs, Markov and Mordell triples with their dual-number
//! shadows, Pell's equation, and growth along paths of the Euclid tree.
//!
//! Everything is computed over arbitrary-precision integers; floating point
//! only appears when a logarithm is reported.
//!
//! ```
//! use conway_shadows::markov::fibonacci_branch_shadow;
//!
//! let s: Vec<String> = fibonacci_branch_shadow(5).iter().map(|x| x.to_string()).collect();
//! assert_eq!(s, ["1", "4", "13", "40", "120"]);
//! ```

pub mod cf;
pub mod dual;
pub mod error;
pub mod euclid;
pub mod markov;
pub mod mordell;
pub mod numeric;
pub mod render;
pub mod topograph;
pub mod tree;
pub mod verify;

pub use dual::{DualInt, DualRat};
pub use error::{Error, Result};
pub use topograph::QuadForm;
pub use tree::{Direction, FaceTriple, PathWord, Region, Tree};
