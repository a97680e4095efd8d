//! Simplicial maps between ordered complexes and the specific maps used to
//! build higher homotopies: `ι_{I,J}`, `h_I^i`, `H_I` and `μ_i`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::partition::VertexPartition;
use crate::simplicial::{
    mask_indices, permutation_parity, FaceMask, SimplicialComplex, VertexLabel,
};

/// A vertex map whose image of every face is a face of the target.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    source: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    assignment: Vec<usize>,
}

impl SimplicialMap {
    /// Validates the vertex assignment (source index -> target index).
    pub fn new(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        assignment: Vec<usize>,
    ) -> Result<SimplicialMap> {
        if assignment.len() != source.n_vertices() {
            return Err(Error::domain("assignment must cover every source vertex"));
        }
        if assignment.iter().any(|&t| t >= target.n_vertices()) {
            return Err(Error::domain("assignment points outside the target"));
        }
        let map = SimplicialMap {
            source,
            target,
            assignment,
        };
        for facet in map.source.facets() {
            if !map.target.contains(map.image_mask(facet)) {
                return Err(Error::domain(format!(
                    "image of {} is not a face of the target",
                    map.source.simplex(facet)
                )));
            }
        }
        Ok(map)
    }

    pub fn from_labels(
        source: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        f: impl Fn(&VertexLabel) -> VertexLabel,
    ) -> Result<SimplicialMap> {
        let assignment = source
            .vertices()
            .iter()
            .map(|v| {
                let w = f(v);
                target
                    .vertex_index(&w)
                    .ok_or_else(|| Error::domain(format!("{w} is not a target vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(source, target, assignment)
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> SimplicialMap {
        let n = k.n_vertices();
        SimplicialMap {
            source: k.clone(),
            target: k,
            assignment: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn image_mask(&self, face: FaceMask) -> FaceMask {
        mask_indices(face)
            .into_iter()
            .fold(0, |m, v| m | (1u64 << self.assignment[v]))
    }

    /// Chain-level image of an oriented face: `None` when two vertices collide,
    /// otherwise the image face and the parity of sorting the image sequence.
    pub fn push_face(&self, face: FaceMask) -> Option<(FaceMask, usize)> {
        let image: Vec<usize> = mask_indices(face)
            .into_iter()
            .map(|v| self.assignment[v])
            .collect();
        let mask = image.iter().fold(0u64, |m, &v| m | (1u64 << v));
        if mask.count_ones() as usize != image.len() {
            return None;
        }
        Some((mask, permutation_parity(&image)))
    }

    pub fn is_injective_on_vertices(&self) -> bool {
        let mut seen = vec![false; self.target.n_vertices()];
        self.assignment.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if self.target.as_ref() != other.source.as_ref() {
            return Err(Error::domain("composition of non-matching maps"));
        }
        Ok(SimplicialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            assignment: self.assignment.iter().map(|&v| other.assignment[v]).collect(),
        })
    }

    /// Restriction to a subcomplex whose labels are source labels.
    pub fn restrict(&self, sub: Arc<SimplicialComplex>) -> Result<SimplicialMap> {
        let assignment = sub
            .vertices()
            .iter()
            .map(|v| {
                self.source
                    .vertex_index(v)
                    .map(|i| self.assignment[i])
                    .ok_or_else(|| Error::domain(format!("{v} is not a source vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialMap::new(sub, self.target.clone(), assignment)
    }
}

fn join_power(k: &SimplicialComplex, n: usize) -> Result<Arc<SimplicialComplex>> {
    let copies: Vec<&SimplicialComplex> = std::iter::repeat_n(k, n).collect();
    Ok(Arc::new(SimplicialComplex::join_many(&copies)?))
}

/// Index of vertex `v` of `k` inside copy `c` of the `n`-fold join.
fn join_index(k: &SimplicialComplex, c: usize, v: usize) -> usize {
    c * k.n_vertices() + v
}

/// `ι_{I,J}: K_{I∪J} -> K_I ⋆ K_J`, `σ ↦ (σ∩I) ⊔ (σ∩J)`.
pub fn iota(k: &SimplicialComplex, i: FaceMask, j: FaceMask) -> Result<SimplicialMap> {
    if i == 0 || j == 0 {
        return Err(Error::domain("ι needs non-empty subsets"));
    }
    if i & j != 0 {
        return Err(Error::domain("ι needs disjoint subsets"));
    }
    let source = Arc::new(k.full_subcomplex_mask(i | j)?);
    let ki = k.full_subcomplex_mask(i)?;
    let kj = k.full_subcomplex_mask(j)?;
    let target = Arc::new(ki.join(&kj)?);
    SimplicialMap::from_labels(source, target, |v| {
        let orig = k.vertex_index(v).expect("source vertex");
        if i & (1 << orig) != 0 {
            v.prefixed(0)
        } else {
            v.prefixed(1)
        }
    })
}

/// `h_I^i: K -> K^{⋆(q+1)}`: a vertex in part `k` goes to copy `min(k, i)`.
pub fn h_map(partition: &VertexPartition, i: usize) -> Result<SimplicialMap> {
    let q = partition.q();
    if i > q {
        return Err(Error::domain(format!("h^{i} needs i <= {q}")));
    }
    let k = partition.parent();
    let target = join_power(k, q + 1)?;
    let part = partition.part_index();
    let assignment = (0..k.n_vertices())
        .map(|v| join_index(k, part[v].min(i), v))
        .collect();
    SimplicialMap::new(k.clone(), target, assignment)
}

/// `H_I: K ⊗ Δ^q -> K^{⋆(q+1)}`, `(v, i) ↦ h_I^i(v)`.
pub fn big_homotopy(partition: &VertexPartition) -> Result<SimplicialMap> {
    let q = partition.q();
    let k = partition.parent();
    let source = Arc::new(k.ordered_product(q)?);
    let target = join_power(k, q + 1)?;
    let part = partition.part_index();
    let n = k.n_vertices();
    let assignment = (0..source.n_vertices())
        .map(|x| {
            let (level, v) = (x / n, x % n);
            join_index(k, part[v].min(level), v)
        })
        .collect();
    SimplicialMap::new(source, target, assignment)
}

/// `μ_i: K -> K ⋆ K`: parts `0..=i` to copy 0, parts `i+1..=q` to copy 1.
pub fn mu_map(partition: &VertexPartition, i: usize) -> Result<SimplicialMap> {
    let q = partition.q();
    if q == 0 || i > q - 1 {
        return Err(Error::domain(format!("μ_{i} needs i < q = {q}")));
    }
    let k = partition.parent();
    let target = join_power(k, 2)?;
    let part = partition.part_index();
    let assignment = (0..k.n_vertices())
        .map(|v| join_index(k, usize::from(part[v] > i), v))
        .collect();
    SimplicialMap::new(k.clone(), target, assignment)
}

/// `1_{K^{⋆i}} ⋆ μ_i ⋆ 1_{K^{⋆(q-i-1)}}: K^{⋆q} -> K^{⋆(q+1)}`.
pub fn mu_map_padded(partition: &VertexPartition, i: usize) -> Result<SimplicialMap> {
    let q = partition.q();
    if q == 0 || i > q - 1 {
        return Err(Error::domain(format!("μ_{i} needs i < q = {q}")));
    }
    let k = partition.parent();
    let n = k.n_vertices();
    let source = join_power(k, q)?;
    let target = join_power(k, q + 1)?;
    let part = partition.part_index();
    let assignment = (0..source.n_vertices())
        .map(|x| {
            let (c, v) = (x / n, x % n);
            let copy = match c.cmp(&i) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => i + usize::from(part[v] > i),
                std::cmp::Ordering::Greater => c + 1,
            };
            join_index(k, copy, v)
        })
        .collect();
    SimplicialMap::new(source, target, assignment)
}

/// `1_K ⊗ d^i: K ⊗ Δ^{q-1} -> K ⊗ Δ^q`, skipping level `i`.
pub fn coface_product(k: &Arc<SimplicialComplex>, q: usize, i: usize) -> Result<SimplicialMap> {
    if q == 0 || i > q {
        return Err(Error::domain(format!("coface d^{i} into Δ^{q}")));
    }
    let source = Arc::new(k.ordered_product(q - 1)?);
    let target = Arc::new(k.ordered_product(q)?);
    let n = k.n_vertices();
    let assignment = (0..source.n_vertices())
        .map(|x| {
            let (level, v) = (x / n, x % n);
            let l = if level < i { level } else { level + 1 };
            l * n + v
        })
        .collect();
    SimplicialMap::new(source, target, assignment)
}

/// The inclusion `K ⊗ {level} -> K ⊗ Δ^q` composed with `h`, as a map from `K`.
pub fn level_restriction(h: &SimplicialMap, k: &Arc<SimplicialComplex>, level: usize) -> Result<SimplicialMap> {
    let n = k.n_vertices();
    let assignment = (0..n).map(|v| h.assignment()[level * n + v]).collect();
    SimplicialMap::new(k.clone(), h.target().clone(), assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    #[test]
    fn iota_on_cycle() {
        let k = four_cycle();
        let map = iota(&k, 0b0101, 0b1010).unwrap();
        // face {1,2} (indices 0,1) -> copy0:1, copy1:2
        let (img, parity) = map.push_face(0b0011).unwrap();
        let s = map.target().simplex(img);
        assert_eq!(s.to_string(), "{0:1,1:2}");
        assert_eq!(parity, 0);
        assert_eq!(map.push_face(0), Some((0, 0)));
        assert!(iota(&k, 0b0101, 0b0110).is_err());
    }

    #[test]
    fn h_map_levels() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2, 3]]).unwrap());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1], &[2], &[3]]).unwrap();
        let h1 = h_map(&p, 1).unwrap();
        let img = h1.image_mask(0b111);
        assert_eq!(h1.target().simplex(img).to_string(), "{0:1,1:2,1:3}");
        let h0 = h_map(&p, 0).unwrap();
        assert_eq!(h0.image_mask(0b111), 0b111);
        let h2 = h_map(&p, 2).unwrap();
        assert_eq!(h2.target().simplex(h2.image_mask(0b111)).to_string(), "{0:1,1:2,2:3}");
        assert!(h_map(&p, 3).is_err());
    }

    #[test]
    fn big_homotopy_levels_match_h() {
        let k = Arc::new(four_cycle());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1, 3], &[2, 4]]).unwrap();
        let h = big_homotopy(&p).unwrap();
        for level in 0..=1 {
            let lr = level_restriction(&h, &k, level).unwrap();
            assert_eq!(lr.assignment(), h_map(&p, level).unwrap().assignment());
        }
    }

    #[test]
    fn big_homotopy_q0_identity() {
        let k = Arc::new(four_cycle());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1, 2, 3, 4]]).unwrap();
        let h = big_homotopy(&p).unwrap();
        assert_eq!(h.assignment(), &[0, 1, 2, 3]);
    }

    #[test]
    fn big_homotopy_edge_chain() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2]]).unwrap());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1], &[2]]).unwrap();
        let h = big_homotopy(&p).unwrap();
        // chain (1,0) < (2,0) < (2,1): source indices 0, 1, 3
        let img = h.image_mask(0b1011);
        assert_eq!(h.target().simplex(img).to_string(), "{0:1,0:2,1:2}");
        assert!(h.target().contains(img));
    }

    #[test]
    fn mu_on_cycle() {
        let k = Arc::new(four_cycle());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1, 3], &[2, 4]]).unwrap();
        let mu = mu_map(&p, 0).unwrap();
        let img = mu.image_mask(0b0011);
        assert_eq!(mu.target().simplex(img).to_string(), "{0:1,1:2}");
        assert!(mu_map(&p, 1).is_err());
    }

    #[test]
    fn non_simplicial_assignment_rejected() {
        let k = Arc::new(four_cycle());
        let edge = Arc::new(SimplicialComplex::from_int_facets(&[&[1], &[2]]).unwrap());
        // {1,2} would map onto two isolated points
        assert!(SimplicialMap::new(k, edge, vec![0, 1, 0, 1]).is_err());
    }
}
