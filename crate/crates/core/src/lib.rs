//! Exact Grothendieck classes, point counts and F1-zeta functions of loose
//! graphs, with supporting monoid-spectrum and q-analog calculators.

pub mod arith;
mod bits;
pub mod corpus;
pub mod grothendieck;
pub mod loose_graph;
pub mod monoid;
pub mod oracle;
pub mod poly;
pub mod qanalog;
pub mod zeta;

pub use grothendieck::{class_of, surgery, tree_class, SurgeryTrace};
pub use loose_graph::{EdgeTag, Endpoints, GraphError, LooseGraph, TreeStats};
pub use monoid::{MonoidError, MonoidPresentation, PrimeIdeal};
pub use poly::{LPolynomial, Polynomial, QPolynomial};
pub use zeta::{PowerSeries, ZetaF1};
