//! Sponges: reflexive, antisymmetric relations with lattice-like joins and
//! meets but no transitivity, on concrete models in `ℝⁿ`.
//!
//! Families:
//! * [`inner_product`]: `x ⪯ y ⇔ (x, x) ≤ (x, y)`; meets are min-norm points
//!   of convex hulls, joins lowest points of halfspace intersections.
//! * [`epigraph`]: the positive cone is the epigraph of a radial profile `f`.
//! * [`hyperbolic`]: the Poincaré half-space with half-ball left cones.
//! * [`groups`]: half-open cones on `ℝ`, quotients by subgroups, angles.
//!
//! [`spec::SpongeSpec`] dispatches over the families and combines them
//! blockwise. [`axioms`], [`oracle`] and [`descent`] provide the checkers
//! and cross-checks, [`morphology`] the image operators.

pub mod axioms;
pub mod cli;
pub mod descent;
pub mod epigraph;
pub mod error;
pub mod groups;
pub mod hyperbolic;
pub mod inner_product;
pub mod io;
pub mod minimax;
pub mod morphology;
pub mod numeric;
pub mod oracle;
pub mod point;
pub mod report;
pub mod spec;

pub use error::{Result, SpongeError};
pub use point::{Point, PointSet};
pub use report::AxiomReport;
pub use spec::{bounds_check, leq, product_join, product_meet, Extremum, Family, Orientation, Side, Sponge, SpongeSpec, DEFAULT_TOL};
