//! Link invariants of 1-quasi-isotopy and link homotopy.
//!
//! Every invariant is reachable along two independent routes so results can
//! be cross-checked: Conway-polynomial skein recursion against crossing-change
//! traces, Magnus expansions of longitudes against both, and annular lifts
//! against trace jumps for the eta function.

pub mod catalog;
pub mod commutator;
pub mod conway;
pub mod diagram;
pub mod laurent;
pub mod milnor;
pub mod trace;
pub mod verify;

pub use diagram::{Crossing, DiagramError, LinkDiagram, TangleDiagram};
pub use laurent::{LaurentError, LaurentPoly, ZSeries};
