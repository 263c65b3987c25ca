//! Exact-arithmetic calculus of Chow functions on finite posets.
//!
//! The crate is organized around the incidence algebra `I_rho(P)` of a
//! weakly ranked finite poset: elements assign an integer polynomial to
//! every closed interval, with convolution as the product. Kernels in
//! that algebra give rise to Kazhdan--Lusztig--Stanley functions, Chow
//! functions and their augmented variants; the three classical
//! instantiations (characteristic, Eulerian, Coxeter) each get their own
//! module. Everything is computed over arbitrary-precision integers;
//! no floating point enters any verdict.

pub mod cdindex;
pub mod coxeter;
pub mod fixtures;
pub mod gen;
pub mod homology;
pub mod incidence;
pub mod kernels;
pub mod matroid;
pub mod poly;
pub mod poset;


pub use poly::{analyze, Poly, PropertyReport};

pub use poset::{Poset, RankFn};
pub use incidence::{ChowSystem, IncAlgebra, IncElem, KernelCheck};
