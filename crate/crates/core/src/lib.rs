//! Combinatorial models of spinal open book decompositions of 3-manifolds:
//! the incidence data structure and validator, branched-cover existence
//! searches, the symmetric/uniform/amenable classification, planar-torsion
//! fillability verdicts, surgeries (spine removal, blow-up, binding sum,
//! fiber sum along pages), circle bundles partitioned by multicurves,
//! Lefschetz fibration boundaries, and numerical verification of the
//! model contact/symplectic forms on coordinate charts.

pub mod canonical;
pub mod catalog;
pub mod circle_bundles;
pub mod covers;
pub mod forms;
pub mod lefschetz;
pub mod obstructions;
pub mod perm;
pub mod random;
pub mod sob;
pub mod surfaces;
pub mod surgery;

pub use canonical::canonicalize;
pub use sob::{SpinalOpenBook, ValidationReport};
pub use surfaces::Surface;
