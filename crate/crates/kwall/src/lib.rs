//! Exact reproduction of the wall-and-chamber structure of the two-parameter
//! K-moduli space of plane-quintic-plus-line pairs `(X, aQ + bL)`.
//!
//! Everything is computed in exact rational arithmetic: K-stability
//! invariants (A, S, β, Futaki) of divisorial valuations on the four
//! admissible degeneration surfaces P², P(1,1,4), P(1,4,25) and X₂₆, the
//! full list of critical pairs and wall lines, the chamber decomposition of
//! the coefficient domain, and an independent section-counting oracle that
//! validates every closed-form invariant.
//!
//! Every major capability has a runnable example under `examples/`; the thin
//! `kwall` binary exposes the same functionality as subcommands.

pub mod curvealg;
pub mod exactmath;
pub mod gitslope;
pub mod kstab;
pub mod oracle;
pub mod surface;
pub mod toric;
pub mod wallfinder;

pub mod cli;

pub use surface::SurfaceId;
