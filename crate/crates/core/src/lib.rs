//! Exact computational geometry of GC_n interpolation node sets.
//!
//! A node set of `N = (n+1)(n+2)/2` points is GC_n when every fundamental
//! polynomial of degree ≤ n splits into n linear factors. This crate decides
//! poisedness and the GC property with exact rational arithmetic, analyses
//! the lines each node uses, and checks the Gasca–Maeztu property (a line
//! through n+1 nodes) on generated and user-supplied sets.

pub mod error;
pub mod geom;
pub mod linalg;
pub mod poly;
pub mod interp;
pub mod gc;
pub mod gen;
pub mod mdseq;
pub mod gm;
pub mod io;
pub mod svg;

pub use error::{Error, Result};
pub use gc::{certify_gc, GCCertificate, GcVerdict, NodeCertificate, UsedLineIndex};
pub use gen::{GeneratorKind, GeneratorSpec};
pub use geom::{intersect, is_incident, line_through, Line, Point, Scalar};
pub use gm::{GMReport, IncidenceProfile, SearchKinds, SearchSummary};
pub use interp::{FundamentalSolution, NodeSet};
pub use mdseq::{MDSequence, MLineSequence};
pub use poly::{dim_pi, Poly};
