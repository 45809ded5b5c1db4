//! Properly colored path kernels in arc-colored digraphs.
//!
//! - [`graph`]: colored digraphs, the `.acd` text format, generators, named instances.
//! - [`reach`]: properly colored and rainbow path search, the closure digraph.
//! - [`kernel`]: kernels of plain digraphs.
//! - [`construct`]: PCP-kernel certificates, class constructors, reductions.
//! - [`lab`]: conjecture checks, fuzzing and parameter sweeps.

pub mod construct;
pub mod graph;
pub mod kernel;
pub mod lab;
pub mod reach;
