//! Named complexes, each checked against stored expectations when loaded.

use crate::analysis::manifold_annotations;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{homology, Flavor};
use crate::simplicial::SimplicialComplex;

/// What a catalog complex must satisfy to load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectations {
    pub euler: i64,
    /// Unreduced Betti numbers over `Q`, dimensions `0..=dim`.
    pub betti_q: Vec<usize>,
    pub betti_f2: Vec<usize>,
    /// Connected with rank-one top homology over `Q`.
    pub orientable: bool,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub facets: Vec<Vec<u32>>,
    pub expectations: Expectations,
}

impl CatalogEntry {
    /// Builds the complex and checks every expectation.
    pub fn load(&self) -> Result<SimplicialComplex> {
        let fail = |message: String| Error::Catalog {
            name: self.name.clone(),
            message,
        };
        let refs: Vec<&[u32]> = self.facets.iter().map(|f| f.as_slice()).collect();
        let k = SimplicialComplex::from_int_facets(&refs).map_err(|e| fail(e.to_string()))?;
        k.check_invariants().map_err(|e| fail(e.to_string()))?;
        let euler: i64 = k
            .f_vector()
            .iter()
            .skip(1)
            .enumerate()
            .map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        if euler != self.expectations.euler {
            return Err(fail(format!("Euler characteristic {euler}, expected {}", self.expectations.euler)));
        }
        for (field, expected) in [(Field::Q, &self.expectations.betti_q), (Field::F2, &self.expectations.betti_f2)] {
            let b = homology(&k, field, Flavor::Unreduced).betti();
            if &b != expected {
                return Err(fail(format!("Betti numbers over {field} are {b:?}, expected {expected:?}")));
            }
        }
        if manifold_annotations(&k, Field::Q).orientable_over_field != self.expectations.orientable {
            return Err(fail("orientability proxy disagrees".into()));
        }
        Ok(k)
    }
}

fn entry(name: String, description: String, facets: Vec<Vec<u32>>, euler: i64, betti_q: Vec<usize>, betti_f2: Vec<usize>, orientable: bool) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        facets,
        expectations: Expectations {
            euler,
            betti_q,
            betti_f2,
            orientable,
        },
    }
}

fn cycle(m: u32) -> Vec<Vec<u32>> {
    (1..=m).map(|i| vec![i, i % m + 1]).collect()
}

fn sphere(n: usize) -> (Vec<Vec<u32>>, Vec<usize>) {
    let vs: Vec<u32> = (1..=n as u32 + 1).collect();
    let facets = vs.iter().map(|&skip| vs.iter().copied().filter(|&v| v != skip).collect()).collect();
    let betti = if n == 1 {
        vec![2]
    } else {
        let mut b = vec![0; n];
        b[0] = 1;
        b[n - 1] = 1;
        b
    };
    (facets, betti)
}

/// Every entry, unvalidated, in a fixed order.
pub fn catalog_entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("point".into(), "a single vertex".into(), vec![vec![1]], 1, vec![1], vec![1], true),
        entry("two-points".into(), "two vertices, no edge".into(), vec![vec![1], vec![2]], 2, vec![2], vec![2], false),
        entry("triangle".into(), "boundary of a triangle, the minimal circle".into(), cycle(3), 0, vec![1, 1], vec![1, 1], true),
    ];
    for m in 4..=12 {
        out.push(entry(format!("cycle-{m}"), format!("{m}-gon"), cycle(m), 0, vec![1, 1], vec![1, 1], true));
    }
    for n in 1..=6 {
        let (facets, betti) = sphere(n);
        let euler = if n % 2 == 1 { 2 } else { 0 };
        out.push(entry(
            format!("boundary-simplex-{n}"),
            format!("boundary of the {n}-simplex, a {}-sphere", n - 1),
            facets,
            euler,
            betti.clone(),
            betti,
            n > 1,
        ));
    }
    for n in 0..=6 {
        let mut betti = vec![0; n + 1];
        betti[0] = 1;
        out.push(entry(
            format!("simplex-{n}"),
            format!("the full {n}-simplex"),
            vec![(1..=n as u32 + 1).collect()],
            1,
            betti.clone(),
            betti,
            n == 0,
        ));
    }
    out.push(entry(
        "rp2-6".into(),
        "6-vertex real projective plane".into(),
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]]
            .iter()
            .map(|f| f.to_vec())
            .collect(),
        1,
        vec![1, 0, 0],
        vec![1, 1, 1],
        false,
    ));
    let mut torus = Vec::new();
    for i in 0..7u32 {
        torus.push(vec![i + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1]);
        torus.push(vec![i + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1]);
    }
    out.push(entry("torus-7".into(), "7-vertex torus".into(), torus, 0, vec![1, 2, 1], vec![1, 2, 1], true));
    out
}

/// Names in catalog order.
pub fn catalog_names() -> Vec<String> {
    catalog_entries().into_iter().map(|e| e.name).collect()
}

/// Loads and validates every entry.
pub fn catalog() -> Result<Vec<(String, SimplicialComplex)>> {
    catalog_entries().into_iter().map(|e| Ok((e.name.clone(), e.load()?))).collect()
}

pub fn catalog_complex(name: &str) -> Result<SimplicialComplex> {
    catalog_entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::domain(format!("no catalog entry named {name:?}")))?
        .load()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        let all = catalog().unwrap();
        assert_eq!(all.len(), 3 + 9 + 6 + 7 + 2);
        let names = catalog_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn wrong_expectation_is_rejected() {
        let mut e = catalog_entries().into_iter().find(|e| e.name == "torus-7").unwrap();
        e.expectations.betti_q = vec![1, 1, 1];
        assert!(matches!(e.load(), Err(Error::Catalog { .. })));
        let mut e = catalog_entries().into_iter().find(|e| e.name == "rp2-6").unwrap();
        e.facets.pop();
        assert!(e.load().is_err());
    }

    #[test]
    fn torus_shape() {
        let k = catalog_complex("torus-7").unwrap();
        assert_eq!(k.f_vector(), vec![1, 7, 21, 14]);
        assert!(catalog_complex("klein").is_err());
    }
}
