//! Quench-process type from the ring pattern.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::rings::{Ring, RingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessLabel {
    TrivialToTopo,
    TopoToTrivial,
    TopoToTopo,
    TrivialToTrivial,
    /// Ring pattern matches none of the above; the raw rings are attached.
    Unclassifiable,
}

impl fmt::Display for ProcessLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProcessLabel::TrivialToTopo => "trivial_to_topo",
            ProcessLabel::TopoToTrivial => "topo_to_trivial",
            ProcessLabel::TopoToTopo => "topo_to_topo",
            ProcessLabel::TrivialToTrivial => "trivial_to_trivial",
            ProcessLabel::Unclassifiable => "unclassifiable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProcessClass {
    pub label: ProcessLabel,
    pub initial_invariant: Option<i32>,
    pub final_invariant: Option<i32>,
    /// Ring kinds in the order given, e.g. `["BIS", "FSIS"]`.
    pub signature: Vec<RingKind>,
    /// Set for an ambiguous FSIS choice or disagreeing BIS and FSIS windings.
    pub ambiguous: bool,
    /// The rings themselves when the pattern is unclassifiable.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub raw_rings: Vec<Ring>,
}

/// Maps the ring multiset onto a process type. Windings are taken from the
/// rings; a missing winding on a required ring leaves that invariant unset.
pub fn classify_process(rings: &[Ring], ambiguous_rings: bool) -> ProcessClass {
    let count = |k: RingKind| rings.iter().filter(|r| r.kind == k).count();
    let (b, f, i) = (count(RingKind::Bis), count(RingKind::Fsis), count(RingKind::Isis));
    let winding_of = |k: RingKind| rings.iter().find(|r| r.kind == k).and_then(|r| r.winding);
    let mut signature: Vec<RingKind> = rings.iter().map(|r| r.kind).collect();
    signature.sort();
    let all_closed = rings.iter().all(|r| r.contractible);
    let mut out = ProcessClass {
        label: ProcessLabel::Unclassifiable,
        initial_invariant: None,
        final_invariant: None,
        signature,
        ambiguous: ambiguous_rings,
        raw_rings: Vec::new(),
    };
    if !all_closed {
        out.raw_rings = rings.to_vec();
        return out;
    }
    match (b, f, i) {
        (0, 0, 0) => {
            out.label = ProcessLabel::TrivialToTrivial;
        }
        (1, 1, 0) => {
            out.label = ProcessLabel::TrivialToTopo;
            out.final_invariant = winding_of(RingKind::Bis);
            if winding_of(RingKind::Bis) != winding_of(RingKind::Fsis) {
                out.ambiguous = true;
            }
        }
        (0, _, _) => {
            out.label = ProcessLabel::TopoToTrivial;
            if rings.len() == 1 {
                out.initial_invariant = rings[0].winding;
            }
        }
        (1, 1, 1) => {
            out.label = ProcessLabel::TopoToTopo;
            out.final_invariant = winding_of(RingKind::Bis);
            out.initial_invariant = winding_of(RingKind::Isis);
            if winding_of(RingKind::Bis) != winding_of(RingKind::Fsis) {
                out.ambiguous = true;
            }
        }
        _ => out.raw_rings = rings.to_vec(),
    }
    out
}

/// Outcome of comparing the ring signatures of two processes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub distinguishable: bool,
    /// Set when the two processes leave the same ring signature.
    pub ambiguous: bool,
    pub first: ProcessLabel,
    pub second: ProcessLabel,
}

/// Two processes can be told apart from their TASP exactly when their
/// labels or ring signatures differ.
pub fn compare_processes(a: &ProcessClass, b: &ProcessClass) -> PairVerdict {
    let same = a.label == b.label && a.signature == b.signature;
    PairVerdict { distinguishable: !same, ambiguous: same, first: a.label, second: b.label }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::contour::ContourFamily;
    use crate::model::Momentum;

    fn ring(kind: RingKind, winding: i32) -> Ring {
        Ring {
            points: vec![Momentum::new(0.0, 0.0); 4],
            kind,
            winding: Some(winding),
            winding_error: None,
            mean_inplane: 0.0,
            centroid: Momentum::new(0.0, 0.0),
            contractible: true,
            family: ContourFamily::Occupation,
            inverted_side: None,
            enclosed_charge: None,
        }
    }

    #[test]
    fn patterns() {
        let c = classify_process(&[], false);
        assert_eq!(c.label, ProcessLabel::TrivialToTrivial);

        let c = classify_process(&[ring(RingKind::Bis, -1), ring(RingKind::Fsis, -1)], false);
        assert_eq!((c.label, c.final_invariant, c.ambiguous), (ProcessLabel::TrivialToTopo, Some(-1), false));

        let c = classify_process(&[ring(RingKind::Isis, 1)], false);
        assert_eq!((c.label, c.initial_invariant), (ProcessLabel::TopoToTrivial, Some(1)));

        let c = classify_process(&[ring(RingKind::Isis, -1), ring(RingKind::Bis, 1), ring(RingKind::Fsis, 1)], false);
        assert_eq!((c.label, c.initial_invariant, c.final_invariant), (ProcessLabel::TopoToTopo, Some(-1), Some(1)));

        let c = classify_process(&[ring(RingKind::Bis, 1), ring(RingKind::Bis, 1)], false);
        assert_eq!(c.label, ProcessLabel::Unclassifiable);
        assert_eq!(c.raw_rings.len(), 2);
    }

    #[test]
    fn open_ring_is_unclassifiable() {
        let mut r = ring(RingKind::Isis, 1);
        r.contractible = false;
        assert_eq!(classify_process(&[r], false).label, ProcessLabel::Unclassifiable);
    }

    #[test]
    fn pair_verdict() {
        let a = classify_process(&[ring(RingKind::Isis, 1)], false);
        let b = classify_process(&[ring(RingKind::Isis, -1)], false);
        assert!(compare_processes(&a, &b).ambiguous);
        let c = classify_process(&[ring(RingKind::Bis, 1), ring(RingKind::Fsis, 1)], false);
        assert!(compare_processes(&a, &c).distinguishable);
    }
}
