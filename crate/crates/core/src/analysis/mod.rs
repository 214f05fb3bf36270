//! Ring extraction and invariants.
//!
//! The usual path is [`analyze`]: zero contours of `sz`, BIS / FSIS / ISIS
//! labels, windings, enclosed charges and the process type.

pub mod charges;
pub mod contour;
pub mod locus;
pub mod process;
pub mod rings;
pub mod sweep;
pub mod winding;

use serde::{Deserialize, Serialize};

pub use charges::{charge_report, point_in_polygon, topological_charges, Charge, ChargeReport, RingCharge};
pub use contour::{extract_zero_contours, hausdorff, Contour, ContourFamily, ContourSet};
pub use locus::{critical_tso, sis_g0_diagonal_zeros, sis_g0_locus};
pub use process::{classify_process, compare_processes, PairVerdict, ProcessClass, ProcessLabel};
pub use rings::{classify_rings, diagonal_crossings, Ring, RingKind, RingSet, Side};
pub use sweep::{sweep_g, sweep_tso, GSweepRow, TsoSweepRow};
pub use winding::{annotate_windings, gradient_alignment, winding_on_bis, winding_on_sis};

use crate::dynamics::TaspGrid;
use crate::error::Result;

/// Everything read off one TASP grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Analysis {
    pub rings: Vec<Ring>,
    pub ambiguous: bool,
    pub sis_threshold: f64,
    /// Grid edges whose sign could not be made consistent with the rest.
    pub frustrated_edges: usize,
    pub charges: Option<ChargeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charge_error: Option<String>,
    pub process: ProcessClass,
}

/// Runs the full ring pipeline on a grid.
pub fn analyze(grid: &TaspGrid) -> Result<Analysis> {
    let contours = extract_zero_contours(grid)?;
    let RingSet { mut rings, ambiguous, sis_threshold } = classify_rings(grid, &contours.contours);
    annotate_windings(&mut rings, grid);
    let (charges, charge_error) = if grid.params.t_so > 0.0 && rings.iter().all(|r| r.contractible) {
        match charge_report(&grid.params, &rings, grid.spacing()) {
            Ok(rep) => {
                for rc in &rep.per_ring_enclosed {
                    rings[rc.ring].enclosed_charge = rc.enclosed;
                }
                (Some(rep), None)
            }
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    let process = classify_process(&rings, ambiguous);
    Ok(Analysis {
        rings,
        ambiguous,
        sis_threshold,
        frustrated_edges: contours.frustrated_edges,
        charges,
        charge_error,
        process,
    })
}
