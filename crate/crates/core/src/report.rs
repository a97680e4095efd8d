//! Versioned report documents and their JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::analysis::{CertificateSummary, ComplexReport, ManifoldAnnotations, TightNeighborly, TightVerdicts, WeakGolodSummary};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Annotations {
    pub vertices: Vec<String>,
    pub euler_characteristic: i64,
    pub neighborly: bool,
    pub tight_neighborly: Option<TightNeighborly>,
    /// Set when the literal and the connected tightness conventions disagree.
    pub tightness_conventions_disagree: bool,
    pub poincare_series: BTreeMap<String, BTreeMap<usize, usize>>,
    pub manifold: BTreeMap<String, ManifoldAnnotations>,
}

/// The `report` document. Per-field maps are keyed by field name.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub name: String,
    pub fields: Vec<String>,
    pub f_vector: Vec<usize>,
    pub betti: BTreeMap<String, Vec<usize>>,
    pub tight: BTreeMap<String, TightVerdicts>,
    pub weak_golod: BTreeMap<String, WeakGolodSummary>,
    pub certificate: BTreeMap<String, CertificateSummary>,
    pub annotations: Annotations,
    pub tool_version: &'static str,
    pub schema_version: u32,
}

impl Report {
    pub fn new(name: &str, r: ComplexReport) -> Report {
        let mut out = Report {
            name: name.to_string(),
            fields: r.fields.iter().map(|(f, _)| f.clone()).collect(),
            f_vector: r.f_vector,
            betti: BTreeMap::new(),
            tight: BTreeMap::new(),
            weak_golod: BTreeMap::new(),
            certificate: BTreeMap::new(),
            annotations: Annotations {
                vertices: r.vertices,
                euler_characteristic: r.euler_characteristic,
                neighborly: r.neighborly,
                tight_neighborly: r.tight_neighborly,
                tightness_conventions_disagree: false,
                poincare_series: BTreeMap::new(),
                manifold: BTreeMap::new(),
            },
            tool_version: TOOL_VERSION,
            schema_version: SCHEMA_VERSION,
        };
        for (f, fr) in r.fields {
            out.annotations.tightness_conventions_disagree |= fr.tight.unreduced != fr.tight.unreduced_connected;
            out.betti.insert(f.clone(), fr.betti);
            out.tight.insert(f.clone(), fr.tight);
            out.weak_golod.insert(f.clone(), fr.weak_golod);
            out.certificate.insert(f.clone(), fr.certificate);
            out.annotations.poincare_series.insert(f.clone(), fr.poincare_series);
            out.annotations.manifold.insert(f, fr.annotations);
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "complex {}", self.name);
        let _ = writeln!(s, "f-vector {:?}", self.f_vector);
        let _ = writeln!(s, "euler characteristic {}", self.annotations.euler_characteristic);
        let _ = writeln!(s, "neighborly {}", self.annotations.neighborly);
        if let Some(t) = &self.annotations.tight_neighborly {
            let _ = writeln!(s, "tight-neighborly equation (m={}, d={}, h1={}) {}", t.m, t.d, t.h1, t.holds);
        }
        for f in &self.fields {
            let _ = writeln!(s, "field {f}");
            let _ = writeln!(s, "  betti {:?}", self.betti[f]);
            let t = &self.tight[f];
            let _ = write!(s, "  tight {} (reduced {}, requiring connectivity {})", t.unreduced, t.reduced, t.unreduced_connected);
            if let Some(w) = &t.witness {
                let _ = write!(s, " witness {{{}}}", w.join(","));
            }
            s.push('\n');
            let w = &self.weak_golod[f];
            let _ = write!(s, "  weakly golod {} ({} products checked)", w.weakly_golod, w.pairs_checked);
            if let Some((a, b)) = &w.witness {
                let _ = write!(s, " witness {{{}}} x {{{}}}", a.join(","), b.join(","));
            }
            s.push('\n');
            let c = &self.certificate[f];
            let _ = writeln!(
                s,
                "  certificate {} (max arity {}, {} entries, {} partitions, {} vacuous)",
                c.status, c.max_arity, c.entries, c.partitions_checked, c.vacuous_partitions
            );
            let m = &self.annotations.manifold[f];
            let _ = writeln!(
                s,
                "  manifold heuristics: pure {}, ridges in two facets {}, connected {}, top rank {}",
                m.pure, m.ridges_in_two_facets, m.connected, m.top_homology_rank
            );
        }
        if self.annotations.tightness_conventions_disagree {
            let _ = writeln!(s, "note: tightness depends on whether connectivity is required");
        }
        let _ = writeln!(s, "tool {} schema {}", self.tool_version, self.schema_version);
        s
    }
}

/// Pretty JSON with a trailing newline; key order follows the declarations.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}
