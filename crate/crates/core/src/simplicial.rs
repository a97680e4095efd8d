//! Ordered simplicial complexes stored by their full face set.
//!
//! Faces are bit masks over the index of each vertex in the ordered vertex
//! list, so a complex holds at most [`MAX_VERTICES`] vertices. Within one
//! cardinality, faces are kept in lexicographic order of their ascending
//! vertex sequences; this is the basis order used by every chain space.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;
pub const MAX_FACES: usize = 1 << 21;

/// Bit mask over vertex indices of one complex.
pub type FaceMask = u64;

/// A vertex name: a non-empty path of integers, ordered lexicographically.
///
/// Plain complexes use length-one paths. Joins prepend the copy index and
/// ordered products prepend the level, so labels of one complex share a length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexLabel(Vec<u32>);

impl VertexLabel {
    pub fn new(path: Vec<u32>) -> Result<VertexLabel> {
        if path.is_empty() {
            return Err(Error::domain("vertex label path must be non-empty"));
        }
        Ok(VertexLabel(path))
    }

    pub fn int(v: u32) -> VertexLabel {
        VertexLabel(vec![v])
    }

    pub fn path(&self) -> &[u32] {
        &self.0
    }

    pub fn prefixed(&self, head: u32) -> VertexLabel {
        let mut p = Vec::with_capacity(self.0.len() + 1);
        p.push(head);
        p.extend_from_slice(&self.0);
        VertexLabel(p)
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

/// A strictly increasing sequence of vertex labels; possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<VertexLabel>);

impl Simplex {
    pub fn new(mut vertices: Vec<VertexLabel>) -> Result<Simplex> {
        let n = vertices.len();
        vertices.sort();
        vertices.dedup();
        if vertices.len() != n {
            return Err(Error::domain("simplex has repeated vertices"));
        }
        Ok(Simplex(vertices))
    }

    pub fn from_ints(vs: &[u32]) -> Simplex {
        Simplex::new(vs.iter().map(|&v| VertexLabel::int(v)).collect()).expect("distinct vertices")
    }

    pub fn empty() -> Simplex {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.0
    }

    pub fn cardinality(&self) -> usize {
        self.0.len()
    }

    /// Dimension; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Lexicographic order of the ascending index sequences of two masks.
pub fn lex_cmp(a: FaceMask, b: FaceMask) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {}
        other => return other,
    }
    let d = a ^ b;
    if d == 0 {
        return Ordering::Equal;
    }
    let low = d & d.wrapping_neg();
    if a & low != 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Ascending vertex indices of a mask.
pub fn mask_indices(mut m: FaceMask) -> Vec<usize> {
    let mut out = Vec::with_capacity(m.count_ones() as usize);
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn indices_mask(idx: impl IntoIterator<Item = usize>) -> FaceMask {
    idx.into_iter().fold(0, |m, i| m | (1u64 << i))
}

/// Number of pairs `(u, w)` with `u` in `a`, `w` in `b` and `w < u`.
pub fn inversions(a: FaceMask, b: FaceMask) -> usize {
    let mut count = 0;
    let mut rest = a;
    while rest != 0 {
        let u = rest.trailing_zeros();
        rest &= rest - 1;
        let below = if u == 0 { 0 } else { b & ((1u64 << u) - 1) };
        count += below.count_ones() as usize;
    }
    count
}

/// Sign exponent of sorting a sequence of distinct keys.
pub fn permutation_parity<T: Ord>(seq: &[T]) -> usize {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// A downward-closed face set over an ordered vertex list.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<VertexLabel>,
    // faces_by_card[k] = faces with k vertices, in lexicographic order
    faces_by_card: Vec<Vec<FaceMask>>,
    position: HashMap<FaceMask, usize>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self
            .facets()
            .iter()
            .map(|&m| self.simplex(m).to_string())
            .collect();
        write!(
            f,
            "SimplicialComplex(n={}, facets=[{}])",
            self.vertices.len(),
            facets.join(" ")
        )
    }
}

impl SimplicialComplex {
    /// Builds the downward closure of `facets` over the declared vertex list.
    ///
    /// Every declared vertex becomes a face; facets may only use declared vertices.
    pub fn from_facets(vertices: Vec<VertexLabel>, facets: &[Vec<VertexLabel>]) -> Result<Self> {
        let mut verts = vertices;
        verts.sort();
        let n = verts.len();
        verts.dedup();
        if verts.len() != n {
            return Err(Error::domain("duplicate vertex labels"));
        }
        if let Some(first) = verts.first() {
            let len = first.path().len();
            if verts.iter().any(|v| v.path().len() != len) {
                return Err(Error::domain("vertex labels must share one path length"));
            }
        }
        if verts.len() > MAX_VERTICES {
            return Err(Error::domain(format!(
                "{} vertices exceed the limit of {MAX_VERTICES}",
                verts.len()
            )));
        }
        let index: HashMap<&VertexLabel, usize> =
            verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut masks = Vec::with_capacity(facets.len());
        for facet in facets {
            let mut m: FaceMask = 0;
            for v in facet {
                let i = *index
                    .get(v)
                    .ok_or_else(|| Error::domain(format!("facet uses undeclared vertex {v}")))?;
                if m & (1 << i) != 0 {
                    return Err(Error::domain(format!("facet repeats vertex {v}")));
                }
                m |= 1 << i;
            }
            masks.push(m);
        }
        Self::from_masks(verts, masks)
    }

    /// Facet input with integer labels; the vertex set is the union of the facets.
    pub fn from_int_facets(facets: &[&[u32]]) -> Result<Self> {
        let mut vs: Vec<u32> = facets.iter().flat_map(|f| f.iter().copied()).collect();
        vs.sort_unstable();
        vs.dedup();
        let facets: Vec<Vec<VertexLabel>> = facets
            .iter()
            .map(|f| f.iter().map(|&v| VertexLabel::int(v)).collect())
            .collect();
        Self::from_facets(vs.into_iter().map(VertexLabel::int).collect(), &facets)
    }

    /// Closure of the given masks, plus every vertex singleton. Vertices must be sorted.
    pub(crate) fn from_masks(
        vertices: Vec<VertexLabel>,
        generators: impl IntoIterator<Item = FaceMask>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut all: HashSet<FaceMask> = HashSet::new();
        all.insert(0);
        for i in 0..n {
            all.insert(1 << i);
        }
        let mut gens: Vec<FaceMask> = generators.into_iter().collect();
        gens.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
        for g in gens {
            if all.contains(&g) {
                continue;
            }
            // enumerate submasks
            let mut sub = g;
            loop {
                all.insert(sub);
                if all.len() > MAX_FACES {
                    return Err(Error::domain(format!("more than {MAX_FACES} faces")));
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & g;
            }
        }
        Ok(Self::from_closed_set(vertices, all))
    }

    fn from_closed_set(vertices: Vec<VertexLabel>, all: HashSet<FaceMask>) -> Self {
        let max_card = all.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0);
        let mut faces_by_card = vec![Vec::new(); max_card + 1];
        for m in all {
            faces_by_card[m.count_ones() as usize].push(m);
        }
        let mut position = HashMap::new();
        for list in faces_by_card.iter_mut() {
            list.sort_unstable_by(|a, b| lex_cmp(*a, *b));
            for (i, &m) in list.iter().enumerate() {
                position.insert(m, i);
            }
        }
        SimplicialComplex {
            vertices,
            faces_by_card,
            position,
        }
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_mask(&self) -> FaceMask {
        if self.vertices.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.vertices.len()) - 1
        }
    }

    pub fn vertex_index(&self, v: &VertexLabel) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Maximal dimension (-1 for the void-vertex complex {∅}).
    pub fn dim(&self) -> isize {
        self.faces_by_card.len() as isize - 2
    }

    /// Faces of the given cardinality in basis order.
    pub fn faces_of_card(&self, card: usize) -> &[FaceMask] {
        self.faces_by_card.get(card).map_or(&[], |v| v.as_slice())
    }

    /// Faces of dimension `d` (`d = -1` gives the empty face).
    pub fn faces_of_dim(&self, d: isize) -> &[FaceMask] {
        if d < -1 {
            return &[];
        }
        self.faces_of_card((d + 1) as usize)
    }

    pub fn all_faces(&self) -> impl Iterator<Item = FaceMask> + '_ {
        self.faces_by_card.iter().flatten().copied()
    }

    pub fn n_faces(&self) -> usize {
        self.position.len()
    }

    pub fn contains(&self, m: FaceMask) -> bool {
        self.position.contains_key(&m)
    }

    /// Position of a face within its cardinality class.
    pub fn face_position(&self, m: FaceMask) -> Option<usize> {
        self.position.get(&m).copied()
    }

    /// Face counts by dimension, starting at dimension -1.
    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_card.iter().map(|v| v.len()).collect()
    }

    pub fn facets(&self) -> Vec<FaceMask> {
        let mut out = Vec::new();
        for m in self.all_faces() {
            let mut maximal = true;
            for i in 0..self.n_vertices() {
                let bit = 1u64 << i;
                if m & bit == 0 && self.contains(m | bit) {
                    maximal = false;
                    break;
                }
            }
            if maximal && (m != 0 || self.n_vertices() == 0) {
                out.push(m);
            }
        }
        out.sort_unstable_by(|a, b| lex_cmp(*a, *b));
        out
    }

    pub fn simplex(&self, m: FaceMask) -> Simplex {
        Simplex(
            mask_indices(m)
                .into_iter()
                .map(|i| self.vertices[i].clone())
                .collect(),
        )
    }

    pub fn mask_of(&self, s: &Simplex) -> Option<FaceMask> {
        let mut m = 0;
        for v in s.vertices() {
            m |= 1u64 << self.vertex_index(v)?;
        }
        Some(m)
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.mask_of(s).is_some_and(|m| self.contains(m))
    }

    pub fn mask_of_labels(&self, labels: &[VertexLabel]) -> Result<FaceMask> {
        let mut m = 0;
        for v in labels {
            let i = self
                .vertex_index(v)
                .ok_or_else(|| Error::domain(format!("{v} is not a vertex")))?;
            m |= 1u64 << i;
        }
        Ok(m)
    }

    /// `K_I`: all faces contained in `subset`, keeping the original labels.
    pub fn full_subcomplex(&self, subset: &[VertexLabel]) -> Result<SimplicialComplex> {
        let m = self.mask_of_labels(subset)?;
        self.full_subcomplex_mask(m)
    }

    pub fn full_subcomplex_mask(&self, subset: FaceMask) -> Result<SimplicialComplex> {
        if subset == 0 {
            return Err(Error::domain("full subcomplex over the empty vertex set"));
        }
        if subset & !self.vertex_mask() != 0 {
            return Err(Error::domain("subset is not contained in the vertex set"));
        }
        let keep = mask_indices(subset);
        let verts: Vec<VertexLabel> = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let all: HashSet<FaceMask> = self
            .all_faces()
            .filter(|f| f & !subset == 0)
            .map(|f| compress(f, &keep))
            .collect();
        Ok(Self::from_closed_set(verts, all))
    }

    /// `K ⋆ L` with labels prefixed by copy index 0 and 1.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        SimplicialComplex::join_many(&[self, other])
    }

    /// Iterated join; copy `c` prefixes its labels with `c`.
    pub fn join_many(parts: &[&SimplicialComplex]) -> Result<SimplicialComplex> {
        let total: usize = parts.iter().map(|k| k.n_vertices()).sum();
        if total > MAX_VERTICES {
            return Err(Error::domain("join has too many vertices"));
        }
        let count: usize = parts.iter().map(|k| k.n_faces()).product();
        if count > MAX_FACES {
            return Err(Error::domain("join has too many faces"));
        }
        let mut verts = Vec::with_capacity(total);
        let mut offsets = Vec::with_capacity(parts.len());
        for (c, k) in parts.iter().enumerate() {
            offsets.push(verts.len());
            verts.extend(k.vertices.iter().map(|v| v.prefixed(c as u32)));
        }
        let mut all: HashSet<FaceMask> = HashSet::with_capacity(count);
        all.insert(0);
        for (c, k) in parts.iter().enumerate() {
            let prev: Vec<FaceMask> = all.iter().copied().collect();
            let mut next = HashSet::with_capacity(prev.len() * k.n_faces());
            for p in prev {
                for f in k.all_faces() {
                    next.insert(p | (f << offsets[c]));
                }
            }
            all = next;
        }
        Ok(Self::from_closed_set(verts, all))
    }

    /// `K ⊗ Δ^q`: vertices `(v, i)` labelled `[i, v...]`, faces the chains in the
    /// product order whose projections are faces.
    pub fn ordered_product(&self, q: usize) -> Result<SimplicialComplex> {
        let n = self.n_vertices();
        if n * (q + 1) > MAX_VERTICES {
            return Err(Error::domain("ordered product has too many vertices"));
        }
        let mut verts = Vec::with_capacity(n * (q + 1));
        for level in 0..=q {
            for v in &self.vertices {
                verts.push(v.prefixed(level as u32));
            }
        }
        // index of (v, level) = level * n + v since labels sort level-major
        let mut gens = Vec::new();
        for facet in self.facets() {
            let vs = mask_indices(facet);
            let mut path = Vec::new();
            lattice_chains(&vs, q, 0, 0, n, &mut path, &mut gens);
        }
        Self::from_masks(verts, gens)
    }

    /// Connected components as vertex masks, ordered by lowest vertex.
    pub fn components(&self) -> Vec<FaceMask> {
        let n = self.n_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        for &e in self.faces_of_card(2) {
            let ix = mask_indices(e);
            let (a, b) = (find(&mut parent, ix[0]), find(&mut parent, ix[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut comps: Vec<FaceMask> = Vec::new();
        let mut root_of: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let slot = *root_of.entry(r).or_insert_with(|| {
                comps.push(0);
                comps.len() - 1
            });
            comps[slot] |= 1 << v;
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks downward closure and the vertex-singleton condition.
    pub fn check_invariants(&self) -> Result<()> {
        if !self.contains(0) {
            return Err(Error::domain("missing empty face"));
        }
        for i in 0..self.n_vertices() {
            if !self.contains(1 << i) {
                return Err(Error::domain("ghost vertex"));
            }
        }
        for f in self.all_faces() {
            if f & !self.vertex_mask() != 0 {
                return Err(Error::domain("face outside vertex set"));
            }
            let mut rest = f;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest &= rest - 1;
                if !self.contains(f & !bit) {
                    return Err(Error::domain("not downward closed"));
                }
            }
        }
        Ok(())
    }

    /// Relabels vertices by an order-preserving map; faces carry over unchanged.
    pub fn relabeled(&self, labels: Vec<VertexLabel>) -> Result<SimplicialComplex> {
        if labels.len() != self.n_vertices() || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("relabeling must be strictly increasing"));
        }
        let mut out = self.clone();
        out.vertices = labels;
        Ok(out)
    }
}

/// Re-indexes the bits of `face` inside `subset` as `0, 1, ...`, the vertex
/// indexing of `full_subcomplex_mask(subset)`.
pub fn compress_mask(face: FaceMask, subset: FaceMask) -> FaceMask {
    compress(face & subset, &mask_indices(subset))
}

/// Inverse of [`compress_mask`].
pub fn expand_mask(face: FaceMask, subset: FaceMask) -> FaceMask {
    mask_indices(subset)
        .into_iter()
        .enumerate()
        .filter(|(new, _)| face & (1 << new) != 0)
        .fold(0, |m, (_, old)| m | (1 << old))
}

fn compress(face: FaceMask, keep: &[usize]) -> FaceMask {
    keep.iter()
        .enumerate()
        .filter(|(_, &old)| face & (1 << old) != 0)
        .fold(0, |m, (new, _)| m | (1 << new))
}

/// Maximal chains of `vs × {0..q}`: monotone lattice paths from the current point.
fn lattice_chains(
    vs: &[usize],
    q: usize,
    i: usize,
    level: usize,
    n: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<FaceMask>,
) {
    path.push(level * n + vs[i]);
    if i + 1 == vs.len() && level == q {
        out.push(indices_mask(path.iter().copied()));
    } else {
        if i + 1 < vs.len() {
            lattice_chains(vs, q, i + 1, level, n, path, out);
        }
        if level < q {
            lattice_chains(vs, q, i, level + 1, n, path, out);
        }
    }
    path.pop();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    fn labels(vs: &[u32]) -> Vec<VertexLabel> {
        vs.iter().map(|&v| VertexLabel::int(v)).collect()
    }

    #[test]
    fn full_subcomplex_of_cycle_has_no_edge() {
        let k = four_cycle();
        let sub = k.full_subcomplex(&labels(&[1, 3])).unwrap();
        assert_eq!(sub.f_vector(), vec![1, 2]);
    }

    #[test]
    fn full_subcomplex_identity() {
        let k = four_cycle();
        let sub = k.full_subcomplex(&labels(&[1, 2, 3, 4])).unwrap();
        assert_eq!(sub, k);
    }

    #[test]
    fn full_subcomplex_of_triangle_boundary() {
        let k = SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap();
        let sub = k.full_subcomplex(&labels(&[1, 2])).unwrap();
        assert_eq!(sub.f_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn full_subcomplex_errors() {
        let k = four_cycle();
        assert!(k.full_subcomplex(&[]).is_err());
        assert!(k.full_subcomplex(&labels(&[1, 9])).is_err());
    }

    #[test]
    fn point_join_point_is_edge() {
        let p = SimplicialComplex::from_int_facets(&[&[0]]).unwrap();
        let j = p.join(&p).unwrap();
        assert_eq!(j.f_vector(), vec![1, 2, 1]);
    }

    #[test]
    fn two_points_join_is_four_cycle() {
        let s0 = SimplicialComplex::from_int_facets(&[&[0], &[1]]).unwrap();
        let j = s0.join(&s0).unwrap();
        assert_eq!(j.f_vector(), vec![1, 4, 4]);
        // each vertex has degree 2
        for v in 0..4 {
            let deg = j.faces_of_card(2).iter().filter(|e| *e & (1 << v) != 0).count();
            assert_eq!(deg, 2);
        }
    }

    #[test]
    fn product_of_edges_is_split_square() {
        let e = SimplicialComplex::from_int_facets(&[&[0, 1]]).unwrap();
        let p = e.ordered_product(1).unwrap();
        assert_eq!(p.f_vector(), vec![1, 4, 5, 2]);
        // diagonal (0,0)-(1,1): labels [0,0] and [1,1]
        let diag = Simplex::new(vec![
            VertexLabel::new(vec![0, 0]).unwrap(),
            VertexLabel::new(vec![1, 1]).unwrap(),
        ])
        .unwrap();
        assert!(p.contains_simplex(&diag));
        let anti = Simplex::new(vec![
            VertexLabel::new(vec![0, 1]).unwrap(),
            VertexLabel::new(vec![1, 0]).unwrap(),
        ])
        .unwrap();
        assert!(!p.contains_simplex(&anti));
    }

    #[test]
    fn point_times_simplex_is_simplex() {
        let p = SimplicialComplex::from_int_facets(&[&[5]]).unwrap();
        let prod = p.ordered_product(3).unwrap();
        assert_eq!(prod.f_vector(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn lex_order_of_faces() {
        let k = SimplicialComplex::from_int_facets(&[&[1, 2, 3, 4]]).unwrap();
        let edges: Vec<String> = k
            .faces_of_card(2)
            .iter()
            .map(|&m| k.simplex(m).to_string())
            .collect();
        assert_eq!(
            edges,
            vec!["{1,2}", "{1,3}", "{1,4}", "{2,3}", "{2,4}", "{3,4}"]
        );
    }

    #[test]
    fn inversion_count() {
        // a = {2}, b = {0,1} -> two pairs with w < u
        assert_eq!(inversions(0b100, 0b011), 2);
        assert_eq!(inversions(0b011, 0b100), 0);
    }
}
