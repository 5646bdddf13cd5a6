//! Discretization of planar geometric cover problems.
//!
//! Given points `P` and a compact prototype shape, the continuous problem of
//! covering `P` with translated copies of the shape admits a finite reduced
//! solution space: one representative translate per maximal ("canonical")
//! covered point set. This crate computes that space — by plane sweep or
//! graph traversal over the arrangement of point inverses through `P` — and
//! hands the result to a set-cover stage.

pub mod constructions;
pub mod covset;
pub mod disk_sweep;
pub mod disk_traverse;
pub mod error;
pub mod geom;
pub mod inverse;
pub mod oracle;
pub mod polygon;
pub mod report;
pub mod setcover;
pub mod svg;

mod sweep;

pub use covset::CovSet;
pub use error::{Error, Result};
pub use geom::{Point, PrototypeShape, Tolerance};

/// A representative placement together with the exact set of input points
/// the translate covers. Covered sets of distinct entries never nest.
#[derive(Clone, Debug)]
pub struct CanonicalTranslate {
    pub reference: Point,
    pub covered: CovSet,
}

impl CanonicalTranslate {
    pub fn new(reference: Point, covered: CovSet) -> Self {
        CanonicalTranslate { reference, covered }
    }
}

/// Sorts translates by their covered index sequence and checks the antichain
/// contract in debug builds.
pub(crate) fn finalize_translates(mut out: Vec<CanonicalTranslate>) -> Vec<CanonicalTranslate> {
    out.sort_by(|a, b| a.covered.cmp(&b.covered));
    debug_assert!(
        out.iter().enumerate().all(|(i, a)| {
            out.iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.covered.is_subset(&b.covered))
        }),
        "canonical covered sets must form an antichain"
    );
    out
}
