//! Exact recognition of quaternion algebras in finite-rank presentations.
//!
//! ```
//! use quatrec::builtins;
//! use quatrec::recognition::{decompose, recognize};
//!
//! let h = builtins::hamilton();
//! let out = recognize(&h);
//! assert!(out.is_quaternion() && out.division_certified());
//!
//! let qs = out.working(&h).unwrap();
//! let x = h.element_i64(&[1, 2, 3, 4]);
//! let d = decompose(&h, &qs, &x).unwrap();
//! assert_eq!(d.reconstruct(&h, &qs), x);
//! ```

pub mod algebra;
pub mod analysis;
pub mod builtins;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod localization;
pub mod norm;
pub mod recognition;
pub mod scalar;
pub mod witness;
