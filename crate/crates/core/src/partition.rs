use std::sync::Arc;

use crate::error::{Error, Result};
use crate::shuffle::Shuffle;
use crate::simplicial::{mask_indices, FaceMask, SimplicialComplex, VertexLabel};

/// An ordered partition `V(K) = I_0 ⊔ ... ⊔ I_q` into non-empty parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    parent: Arc<SimplicialComplex>,
    parts: Vec<FaceMask>,
}

impl VertexPartition {
    pub fn new(parent: Arc<SimplicialComplex>, parts: Vec<FaceMask>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a partition needs at least one part"));
        }
        let mut seen: FaceMask = 0;
        for &p in &parts {
            if p == 0 {
                return Err(Error::domain("partition parts must be non-empty"));
            }
            if p & seen != 0 {
                return Err(Error::domain("partition parts must be disjoint"));
            }
            seen |= p;
        }
        if seen != parent.vertex_mask() {
            return Err(Error::domain("partition parts must cover the vertex set"));
        }
        Ok(VertexPartition { parent, parts })
    }

    pub fn from_labels(parent: Arc<SimplicialComplex>, parts: &[Vec<VertexLabel>]) -> Result<Self> {
        let masks = parts
            .iter()
            .map(|p| parent.mask_of_labels(p))
            .collect::<Result<Vec<_>>>()?;
        VertexPartition::new(parent, masks)
    }

    pub fn from_int_parts(parent: Arc<SimplicialComplex>, parts: &[&[u32]]) -> Result<Self> {
        let labels: Vec<Vec<VertexLabel>> = parts
            .iter()
            .map(|p| p.iter().map(|&v| VertexLabel::int(v)).collect())
            .collect();
        VertexPartition::from_labels(parent, &labels)
    }

    pub fn parent(&self) -> &Arc<SimplicialComplex> {
        &self.parent
    }

    pub fn parts(&self) -> &[FaceMask] {
        &self.parts
    }

    /// Index of the last part; the partition has `q + 1` parts.
    pub fn q(&self) -> usize {
        self.parts.len() - 1
    }

    /// Part index of every vertex of the parent.
    pub fn part_index(&self) -> Vec<usize> {
        let mut out = vec![0; self.parent.n_vertices()];
        for (k, &p) in self.parts.iter().enumerate() {
            for v in mask_indices(p) {
                out[v] = k;
            }
        }
        out
    }

    /// Union of parts `from..=to`.
    pub fn union(&self, from: usize, to: usize) -> FaceMask {
        self.parts[from..=to].iter().fold(0, |m, p| m | p)
    }

    /// `I(i)`: merges parts `i` and `i + 1`.
    pub fn merge(&self, i: usize) -> Result<VertexPartition> {
        if i >= self.q() {
            return Err(Error::domain(format!("cannot merge part {i} of {} parts", self.parts.len())));
        }
        let mut parts = self.parts.clone();
        let right = parts.remove(i + 1);
        parts[i] |= right;
        Ok(VertexPartition {
            parent: self.parent.clone(),
            parts,
        })
    }

    /// Blocks of the coarsening of parts `i..=j` along `s ∈ S(j-i, k)`:
    /// `J_0 = I_{i_0} ⊔ ... ⊔ I_{i_1}` and `J_p = I_{i_p+1} ⊔ ... ⊔ I_{i_{p+1}}`,
    /// where `i_p = i + s_p`.
    pub fn shuffle_blocks(&self, i: usize, j: usize, s: &Shuffle) -> Result<Vec<FaceMask>> {
        if i > j || j > self.q() {
            return Err(Error::domain(format!("index range {i}..={j} out of bounds")));
        }
        if s.p() != j - i {
            return Err(Error::domain(format!("shuffle {s} does not have p = {}", j - i)));
        }
        let k = s.q();
        let idx: Vec<usize> = s.entries().iter().map(|x| i + x).collect();
        let mut blocks = Vec::with_capacity(k + 1);
        blocks.push(self.union(idx[0], idx[1]));
        for p in 1..=k {
            if idx[p] + 1 > idx[p + 1] {
                return Err(Error::domain(format!("shuffle {s} produces an empty block")));
            }
            blocks.push(self.union(idx[p] + 1, idx[p + 1]));
        }
        Ok(blocks)
    }

    /// `I^s` as a partition of the whole vertex set: the blocks of
    /// [`shuffle_blocks`](Self::shuffle_blocks), with parts before `i` absorbed
    /// into the first block and parts after `j` into the last.
    pub fn from_shuffle(&self, i: usize, j: usize, s: &Shuffle) -> Result<VertexPartition> {
        let mut blocks = self.shuffle_blocks(i, j, s)?;
        if i > 0 {
            blocks[0] |= self.union(0, i - 1);
        }
        if j < self.q() {
            let last = blocks.len() - 1;
            blocks[last] |= self.union(j + 1, self.q());
        }
        VertexPartition::new(self.parent.clone(), blocks)
    }

    pub fn labels(&self) -> Vec<Vec<VertexLabel>> {
        self.parts
            .iter()
            .map(|&p| {
                mask_indices(p)
                    .into_iter()
                    .map(|v| self.parent.vertices()[v].clone())
                    .collect()
            })
            .collect()
    }
}

/// All ordered partitions of the set bits of `mask` into exactly `n` non-empty parts.
pub fn ordered_partitions(mask: FaceMask, n: usize) -> Vec<Vec<FaceMask>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    rec(mask, n, &mut cur, &mut out);
    out
}

fn rec(rest: FaceMask, n: usize, cur: &mut Vec<FaceMask>, out: &mut Vec<Vec<FaceMask>>) {
    if n == 1 {
        if rest != 0 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    // proper non-empty submasks of rest, ascending
    let mut subs = Vec::new();
    let mut sub = (rest.wrapping_sub(1)) & rest;
    while sub != 0 {
        subs.push(sub);
        sub = (sub - 1) & rest;
    }
    subs.reverse();
    for s in subs {
        if (rest & !s).count_ones() as usize >= n - 1 {
            cur.push(s);
            rec(rest & !s, n - 1, cur, out);
            cur.pop();
        }
    }
}
