//! Combinatorial predicates on complexes (tightness, neighborliness,
//! manifold heuristics) and the aggregated per-complex report.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::dga::{hochster_cohomology, nonempty_subsets, weak_golod_check, HochsterTable};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{homology, inclusion_is_injective, Flavor};
use crate::massey::{construct_golod_certificate, CertificateOptions};
use crate::simplicial::{mask_indices, FaceMask, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightnessOptions {
    pub flavor: Flavor,
    /// Also demand that `K` itself is connected.
    pub require_connected: bool,
    /// Check every subset instead of stopping at the first failure.
    pub full_table: bool,
}

impl Default for TightnessOptions {
    fn default() -> Self {
        TightnessOptions {
            flavor: Flavor::Unreduced,
            require_connected: false,
            full_table: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessReport {
    pub field: Field,
    pub flavor: Flavor,
    pub require_connected: bool,
    pub tight: bool,
    /// First failing subset in (cardinality, mask) order.
    pub witness: Option<FaceMask>,
    /// `(I, injective?)` for every checked subset.
    pub table: Vec<(FaceMask, bool)>,
}

impl TightnessReport {
    pub fn witness_labels(&self, k: &SimplicialComplex) -> Vec<String> {
        self.witness
            .map(|w| mask_indices(w).into_iter().map(|i| k.vertices()[i].to_string()).collect())
            .unwrap_or_default()
    }
}

/// `H_*(K_I; F) → H_*(K; F)` injective for every non-empty `I`.
pub fn is_tight(k: &SimplicialComplex, field: Field, options: TightnessOptions) -> Result<TightnessReport> {
    let whole = homology(k, field, options.flavor);
    let subsets = nonempty_subsets(k.vertex_mask());
    let mut report = TightnessReport {
        field,
        flavor: options.flavor,
        require_connected: options.require_connected,
        tight: true,
        witness: None,
        table: Vec::new(),
    };
    if options.require_connected && !k.is_connected() {
        report.tight = false;
        report.witness = Some(k.vertex_mask());
        if !options.full_table {
            return Ok(report);
        }
    }
    if options.full_table {
        let table: Vec<(FaceMask, bool)> = subsets
            .par_iter()
            .map(|&u| Ok((u, inclusion_is_injective(k, &whole, u)?)))
            .collect::<Result<_>>()?;
        if report.witness.is_none() {
            report.witness = table.iter().find(|(_, ok)| !ok).map(|&(u, _)| u);
        }
        report.tight = report.witness.is_none();
        report.table = table;
        return Ok(report);
    }
    let failure = subsets
        .par_iter()
        .map(|&u| inclusion_is_injective(k, &whole, u).map(|ok| (u, ok)))
        .find_first(|r| !matches!(r, Ok((_, true))));
    match failure {
        Some(Err(e)) => return Err(e),
        Some(Ok((u, _))) => {
            report.tight = false;
            report.witness = Some(u);
        }
        None => {}
    }
    Ok(report)
}

/// Every two vertices span an edge.
pub fn is_neighborly(k: &SimplicialComplex) -> bool {
    let n = k.n_vertices();
    k.faces_of_card(2).len() == n * n.saturating_sub(1) / 2
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// `binom(m − d − 1, 2) = binom(d + 2, 2) · h1` for an `m`-vertex `d`-manifold.
pub fn tight_neighborly_check(m: usize, d: usize, h1: usize) -> Result<bool> {
    if d < 3 {
        return Err(Error::domain(format!("dimension must be at least 3, got {d}")));
    }
    if m < d + 2 {
        return Err(Error::domain(format!("a closed {d}-manifold needs at least {} vertices, got {m}", d + 2)));
    }
    let lhs = binom2(m as i64 - d as i64 - 1);
    let rhs = binom2(d as i64 + 2) * h1 as i64;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TightNeighborly {
    pub m: usize,
    pub d: usize,
    pub h1: usize,
    pub holds: bool,
}

/// [`tight_neighborly_check`] with `m`, `d` and `dim H_1(K; Q)` read off `K`.
pub fn tight_neighborly_of(k: &SimplicialComplex) -> Result<TightNeighborly> {
    let d = usize::try_from(k.dim()).map_err(|_| Error::domain("empty complex"))?;
    let m = k.n_vertices();
    let h1 = homology(k, Field::Q, Flavor::Unreduced).rank(1);
    Ok(TightNeighborly {
        m,
        d,
        h1,
        holds: tight_neighborly_check(m, d, h1)?,
    })
}

/// Necessary-condition heuristics, not a manifold recognizer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldAnnotations {
    pub pure: bool,
    /// Every codimension-one face lies in exactly two facets.
    pub ridges_in_two_facets: bool,
    pub connected: bool,
    /// Rank of `H_d(K; F)`, `d = dim K`.
    pub top_homology_rank: usize,
    pub orientable_over_field: bool,
    pub note: &'static str,
}

pub fn manifold_annotations(k: &SimplicialComplex, field: Field) -> ManifoldAnnotations {
    let d = k.dim();
    let facets = k.facets();
    let pure = facets.iter().all(|f| f.count_ones() as isize == d + 1);
    let mut ridge_count: BTreeMap<FaceMask, usize> = BTreeMap::new();
    for &f in &facets {
        for i in mask_indices(f) {
            *ridge_count.entry(f & !(1 << i)).or_default() += 1;
        }
    }
    let ridges_in_two_facets = d >= 1 && pure && k.faces_of_dim(d - 1).iter().all(|r| ridge_count.get(r) == Some(&2));
    let connected = k.is_connected();
    let top_homology_rank = homology(k, field, Flavor::Unreduced).rank(d);
    ManifoldAnnotations {
        pure,
        ridges_in_two_facets,
        connected,
        top_homology_rank,
        orientable_over_field: connected && top_homology_rank == 1,
        note: "necessary-condition heuristics, not a manifold recognizer",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TightVerdicts {
    pub unreduced: bool,
    pub reduced: bool,
    pub unreduced_connected: bool,
    /// Failing subset of the unreduced check, as vertex labels.
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakGolodSummary {
    pub weakly_golod: bool,
    pub pairs_checked: usize,
    /// `(I, J)` supports of a nonzero product, as vertex labels.
    pub witness: Option<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateSummary {
    pub status: &'static str,
    pub max_arity: usize,
    pub entries: usize,
    pub partitions_checked: usize,
    pub vacuous_partitions: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldReport {
    /// Unreduced Betti numbers.
    pub betti: Vec<usize>,
    pub tight: TightVerdicts,
    pub weak_golod: WeakGolodSummary,
    /// Total degree ↦ rank of `H^*(C*(K))`.
    pub poincare_series: BTreeMap<usize, usize>,
    pub certificate: CertificateSummary,
    pub annotations: ManifoldAnnotations,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub vertices: Vec<String>,
    /// Face counts from dimension −1.
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub neighborly: bool,
    pub tight_neighborly: Option<TightNeighborly>,
    /// Keyed by field name, in the order given (duplicates dropped).
    pub fields: Vec<(String, FieldReport)>,
}

#[derive(Debug, Clone, Copy)]
pub struct ReportOptions {
    pub max_arity: usize,
    pub certificate: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_arity: 3,
            certificate: true,
        }
    }
}

fn labels(k: &SimplicialComplex, m: FaceMask) -> Vec<String> {
    mask_indices(m).into_iter().map(|i| k.vertices()[i].to_string()).collect()
}

fn field_report(k: &SimplicialComplex, field: Field, options: ReportOptions) -> Result<FieldReport> {
    let betti = homology(k, field, Flavor::Unreduced).betti();
    let unreduced = is_tight(k, field, TightnessOptions::default())?;
    let reduced = is_tight(
        k,
        field,
        TightnessOptions {
            flavor: Flavor::Reduced,
            ..Default::default()
        },
    )?;
    let connected = is_tight(
        k,
        field,
        TightnessOptions {
            require_connected: true,
            ..Default::default()
        },
    )?;
    let table: HochsterTable = hochster_cohomology(k, field)?;
    let wg = weak_golod_check(k, &table)?;
    let certificate = if !options.certificate {
        CertificateSummary {
            status: "skipped",
            max_arity: options.max_arity,
            entries: 0,
            partitions_checked: 0,
            vacuous_partitions: 0,
        }
    } else if !unreduced.tight {
        CertificateSummary {
            status: "not-tight",
            max_arity: options.max_arity,
            entries: 0,
            partitions_checked: 0,
            vacuous_partitions: 0,
        }
    } else {
        let cert = construct_golod_certificate(
            k,
            &table,
            CertificateOptions {
                max_arity: options.max_arity,
                ..Default::default()
            },
        )?;
        CertificateSummary {
            status: "verified",
            max_arity: options.max_arity,
            entries: cert.entries.len(),
            partitions_checked: cert.partitions_checked,
            vacuous_partitions: cert.vacuous_partitions,
        }
    };
    Ok(FieldReport {
        betti,
        tight: TightVerdicts {
            unreduced: unreduced.tight,
            reduced: reduced.tight,
            unreduced_connected: connected.tight,
            witness: unreduced.witness.map(|w| labels(k, w)),
        },
        weak_golod: WeakGolodSummary {
            weakly_golod: wg.weakly_golod,
            pairs_checked: wg.pairs_checked,
            witness: wg.witness.map(|w| (labels(k, w.left.subset), labels(k, w.right.subset))),
        },
        poincare_series: table.poincare_series(),
        certificate,
        annotations: manifold_annotations(k, field),
    })
}

/// Everything computed for `K` over each field.
pub fn full_report(k: &SimplicialComplex, fields: &[Field], options: ReportOptions) -> Result<ComplexReport> {
    if k.n_vertices() == 0 {
        return Err(Error::domain("the complex has no vertices"));
    }
    if fields.is_empty() {
        return Err(Error::domain("no fields requested"));
    }
    let mut seen = Vec::new();
    for &f in fields {
        if !seen.contains(&f) {
            seen.push(f);
        }
    }
    let f_vector = k.f_vector();
    let euler_characteristic = f_vector
        .iter()
        .skip(1)
        .enumerate()
        .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum();
    let mut out = Vec::new();
    for f in seen {
        let r = field_report(k, f, options)?;
        let alt: i64 = r
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        if alt != euler_characteristic {
            return Err(Error::Verification(format!(
                "Euler characteristic {euler_characteristic} differs from the Betti sum {alt} over {f}"
            )));
        }
        out.push((f.to_string(), r));
    }
    let tight_neighborly = if k.dim() >= 3 && k.n_vertices() as isize >= k.dim() + 2 {
        Some(tight_neighborly_of(k)?)
    } else {
        None
    };
    Ok(ComplexReport {
        vertices: k.vertices().iter().map(|v| v.to_string()).collect(),
        f_vector,
        euler_characteristic,
        neighborly: is_neighborly(k),
        tight_neighborly,
        fields: out,
    })
}
