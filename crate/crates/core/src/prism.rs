//! Higher prism operators `P_H(σ) = Σ_s sgn(s) H_*(σ⊙s)`, the operators
//! `P(I) = P_{H_I}`, cochains on iterated joins, and residual checks for the
//! boundary identities these operators satisfy.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homology::{chain_boundary, face_boundary, sparse_add, sparse_axpy, Cochain, FaceSpace, Flavor, SparseVec};
use crate::linalg::Matrix;
use crate::maps::{big_homotopy, SimplicialMap};
use crate::partition::VertexPartition;
use crate::shuffle::{enumerate_shuffles, Shuffle};
use crate::simplicial::{mask_indices, permutation_parity, FaceMask, Simplex, SimplicialComplex, VertexLabel};

/// `σ⊙s` as the ordered list of `(vertex index, level)` pairs.
pub fn sigma_odot_indices(sigma: &[usize], s: &Shuffle) -> Result<Vec<(usize, usize)>> {
    if sigma.is_empty() || s.p() != sigma.len() - 1 {
        return Err(Error::domain(format!(
            "shuffle {s} does not match a simplex with {} vertices",
            sigma.len()
        )));
    }
    let e = s.entries();
    let mut out = Vec::with_capacity(sigma.len() + s.q());
    for level in 0..=s.q() {
        for &v in &sigma[e[level]..=e[level + 1]] {
            out.push((v, level));
        }
    }
    Ok(out)
}

/// `σ⊙s` as a simplex of `K ⊗ Δ^q`, with labels `[level, v...]`.
pub fn sigma_odot(k: &SimplicialComplex, sigma: &Simplex, s: &Shuffle) -> Result<Simplex> {
    let mask = k
        .mask_of(sigma)
        .filter(|m| k.contains(*m))
        .ok_or_else(|| Error::domain(format!("{sigma} is not a face")))?;
    let chain = sigma_odot_indices(&mask_indices(mask), s)?;
    Simplex::new(
        chain
            .into_iter()
            .map(|(v, level)| k.vertices()[v].prefixed(level as u32))
            .collect(),
    )
}

/// Image of `σ⊙s` under a vertex rule: the target face and the sorting parity,
/// or `None` when two vertices collide.
fn odot_image(
    sigma: &[usize],
    s: &Shuffle,
    rule: &dyn Fn(usize, usize) -> usize,
) -> Option<(FaceMask, usize)> {
    let e = s.entries();
    let mut seq = Vec::with_capacity(sigma.len() + s.q());
    let mut mask: FaceMask = 0;
    for level in 0..=s.q() {
        for &v in &sigma[e[level]..=e[level + 1]] {
            let t = rule(v, level);
            let bit = 1u64 << t;
            if mask & bit != 0 {
                return None;
            }
            mask |= bit;
            seq.push(t);
        }
    }
    Some((mask, permutation_parity(&seq)))
}

/// `P_H(σ)` for the vertex rule `(v, level) ↦ target index`.
fn rule_column(
    sigma: FaceMask,
    q: usize,
    rule: &dyn Fn(usize, usize) -> usize,
    field: Field,
    flavor: Flavor,
    shuffles: &ShuffleCache,
) -> SparseVec {
    let mut out = SparseVec::new();
    if sigma == 0 {
        if q == 0 && flavor.is_reduced() {
            out.insert(0, field.one());
        }
        return out;
    }
    let verts = mask_indices(sigma);
    for s in shuffles.get(verts.len() - 1, q).iter() {
        if let Some((img, parity)) = odot_image(&verts, s, rule) {
            sparse_add(&mut out, img, field.sign(parity + s.sign_exponent()));
        }
    }
    out
}

type ShuffleTable = BTreeMap<(usize, usize), Arc<Vec<Shuffle>>>;

#[derive(Default)]
struct ShuffleCache {
    table: std::sync::Mutex<ShuffleTable>,
}

impl ShuffleCache {
    fn get(&self, p: usize, q: usize) -> Arc<Vec<Shuffle>> {
        let mut t = self.table.lock().expect("shuffle cache");
        t.entry((p, q))
            .or_insert_with(|| Arc::new(enumerate_shuffles(p, q)))
            .clone()
    }
}

/// A higher prism operator materialized as sparse columns over the faces of `K`.
#[derive(Debug, Clone)]
pub struct PrismOperator {
    q: usize,
    field: Field,
    flavor: Flavor,
    base: Arc<SimplicialComplex>,
    target: Arc<SimplicialComplex>,
    // (level * n + v) -> target vertex index
    assignment: Vec<usize>,
    columns: BTreeMap<FaceMask, SparseVec>,
}

impl PrismOperator {
    /// Builds `P_H` for `H: K ⊗ Δ^q -> L`.
    pub fn new(h: &SimplicialMap, k: Arc<SimplicialComplex>, q: usize, field: Field, flavor: Flavor) -> Result<PrismOperator> {
        let n = k.n_vertices();
        let src = h.source();
        let shape_ok = src.n_vertices() == n * (q + 1)
            && (0..=q).all(|level| {
                (0..n).all(|v| src.vertices()[level * n + v] == k.vertices()[v].prefixed(level as u32))
            });
        if !shape_ok {
            return Err(Error::domain(format!("source of H is not K ⊗ Δ^{q}")));
        }
        Ok(Self::from_assignment(k, h.target().clone(), q, h.assignment().to_vec(), field, flavor))
    }

    fn from_assignment(
        base: Arc<SimplicialComplex>,
        target: Arc<SimplicialComplex>,
        q: usize,
        assignment: Vec<usize>,
        field: Field,
        flavor: Flavor,
    ) -> PrismOperator {
        let n = base.n_vertices();
        let cache = ShuffleCache::default();
        let rule = |v: usize, level: usize| assignment[level * n + v];
        let columns = base
            .all_faces()
            .map(|f| (f, rule_column(f, q, &rule, field, flavor, &cache)))
            .collect();
        PrismOperator {
            q,
            field,
            flavor,
            base,
            target,
            assignment,
            columns,
        }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn source(&self) -> &Arc<SimplicialComplex> {
        &self.base
    }

    pub fn target(&self) -> &Arc<SimplicialComplex> {
        &self.target
    }

    pub fn column(&self, face: FaceMask) -> Option<&SparseVec> {
        self.columns.get(&face)
    }

    pub fn apply(&self, chain: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (f, c) in chain {
            if let Some(col) = self.columns.get(f) {
                sparse_axpy(&mut out, c, col);
            }
        }
        out
    }

    /// `P_H: C_d(K) -> C_{d+q}(L)` as a dense matrix.
    pub fn matrix(&self, d: isize) -> Matrix {
        let src = FaceSpace::full(&self.base);
        let tgt = FaceSpace::full(&self.target);
        let e = d + self.q as isize;
        let mut m = Matrix::zeros(self.field, tgt.chain_rank(e, self.flavor), src.chain_rank(d, self.flavor));
        if m.rows() == 0 {
            return m;
        }
        for (c, f) in src.faces(d).iter().enumerate().take(m.cols()) {
            for (g, x) in &self.columns[f] {
                m.set(tgt.position(*g).expect("target face"), c, x.clone());
            }
        }
        m
    }

    /// Largest number of terms in any column.
    pub fn max_column_terms(&self) -> usize {
        self.columns.values().map(|c| c.len()).max().unwrap_or(0)
    }

    /// `P_H^*` applied to a cochain on `L`, evaluated through a face evaluator.
    pub fn pullback(&self, degree: isize, eval: &dyn Fn(FaceMask) -> Scalar) -> Cochain {
        let d = degree - self.q as isize;
        let mut terms = SparseVec::new();
        for (&f, col) in &self.columns {
            if f.count_ones() as isize != d + 1 {
                continue;
            }
            let mut acc = self.field.zero();
            for (g, c) in col {
                acc += &(c * &eval(*g));
            }
            sparse_add(&mut terms, f, acc);
        }
        Cochain {
            field: self.field,
            degree: d,
            terms,
        }
    }
}

/// Nonzero columns of `LHS − RHS` for a chain-level identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Residual {
    pub columns: BTreeMap<FaceMask, SparseVec>,
    pub checked: usize,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    fn record(&mut self, face: FaceMask, v: SparseVec) {
        self.checked += 1;
        if !v.is_empty() {
            self.columns.insert(face, v);
        }
    }
}

/// Residual of `∂P_H + (−1)^{q−1} P_H ∂ = Σ_i (−1)^i P_{H∘(1⊗d^i)}`.
pub fn verify_boundary_identity(p: &PrismOperator) -> Residual {
    let (q, field, flavor) = (p.q, p.field, p.flavor);
    let n = p.base.n_vertices();
    let cache = ShuffleCache::default();
    let minus_one = field.from_i64(-1);
    let mut res = Residual::default();
    for (&f, col) in &p.columns {
        let mut lhs = chain_boundary(col, field, flavor);
        let pd = p.apply(&face_boundary(f, field, flavor));
        sparse_axpy(&mut lhs, &field.sign(q + 1), &pd);
        if q >= 1 {
            for i in 0..=q {
                let rule = |v: usize, level: usize| {
                    let l = if level < i { level } else { level + 1 };
                    p.assignment[l * n + v]
                };
                let face_term = rule_column(f, q - 1, &rule, field, flavor, &cache);
                sparse_axpy(&mut lhs, &(minus_one.clone() * field.sign(i)), &face_term);
            }
        }
        res.record(f, lhs);
    }
    res
}

/// `P(I)`, the prism operator of `H_I: K ⊗ Δ^q -> K^{⋆(q+1)}`.
pub fn prism_p(partition: &VertexPartition, field: Field, flavor: Flavor) -> Result<PrismOperator> {
    let h = big_homotopy(partition)?;
    PrismOperator::new(&h, partition.parent().clone(), partition.q(), field, flavor)
}

/// Vertex rule of `H_I`: `level·n + v ↦ min(part(v), level)·n + v`.
fn homotopy_rule(partition: &VertexPartition) -> Vec<usize> {
    let n = partition.parent().n_vertices();
    let part = partition.part_index();
    (0..=partition.q())
        .flat_map(|level| (0..n).map(move |v| (level, v)))
        .map(|(level, v)| part[v].min(level) * n + v)
        .collect()
}

/// Vertex rule of `1 ⋆ μ_i ⋆ 1: K^{⋆q} -> K^{⋆(q+1)}`.
fn padded_mu_rule(partition: &VertexPartition, i: usize) -> Vec<usize> {
    let n = partition.parent().n_vertices();
    let part = partition.part_index();
    (0..partition.q() * n)
        .map(|x| {
            let (c, v) = (x / n, x % n);
            let copy = match c.cmp(&i) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => i + usize::from(part[v] > i),
                std::cmp::Ordering::Greater => c + 1,
            };
            copy * n + v
        })
        .collect()
}

/// Columns of `P_H` over every face of `K` for a vertex rule.
fn rule_columns(k: &SimplicialComplex, q: usize, assignment: &[usize], field: Field, flavor: Flavor, cache: &ShuffleCache) -> BTreeMap<FaceMask, SparseVec> {
    let n = k.n_vertices();
    let rule = |v: usize, level: usize| assignment[level * n + v];
    k.all_faces().map(|f| (f, rule_column(f, q, &rule, field, flavor, cache))).collect()
}

/// Image of a face under a vertex-injective rule, with the sorting parity.
fn push_by(assignment: &[usize], face: FaceMask) -> (FaceMask, usize) {
    let seq: Vec<usize> = mask_indices(face).into_iter().map(|x| assignment[x]).collect();
    let mask = seq.iter().fold(0u64, |m, &t| m | (1u64 << t));
    (mask, permutation_parity(&seq))
}

/// Residual of
/// `∂P(I) + (−1)^{q−1}P(I)∂ = Σ_{i<q} (−1)^i (1⋆μ_i⋆1)_* P(I(i)) + (−1)^q P_{H_I∘(1⊗d^q)}`.
///
/// Works from the vertex rules of `H_I` and `μ_i` without building
/// `K ⊗ Δ^q` or the joins.
pub fn verify_boundary_identity_i(partition: &VertexPartition, field: Field, flavor: Flavor) -> Result<Residual> {
    let q = partition.q();
    let k = partition.parent();
    let n = k.n_vertices();
    let cache = ShuffleCache::default();
    let minus_one = field.from_i64(-1);
    let assignment = homotopy_rule(partition);
    let columns = rule_columns(k, q, &assignment, field, flavor, &cache);
    let mut merged = Vec::new();
    for i in 0..q {
        let m = partition.merge(i)?;
        merged.push((rule_columns(k, q - 1, &homotopy_rule(&m), field, flavor, &cache), padded_mu_rule(partition, i)));
    }
    let apply = |chain: &SparseVec| {
        let mut out = SparseVec::new();
        for (f, c) in chain {
            sparse_axpy(&mut out, c, &columns[f]);
        }
        out
    };
    let mut res = Residual::default();
    for (&f, col) in &columns {
        let mut lhs = chain_boundary(col, field, flavor);
        sparse_axpy(&mut lhs, &field.sign(q + 1), &apply(&face_boundary(f, field, flavor)));
        if q >= 1 {
            for (i, (pi, mu)) in merged.iter().enumerate() {
                for (g, c) in &pi[&f] {
                    let (img, parity) = push_by(mu, *g);
                    sparse_add(&mut lhs, img, minus_one.clone() * field.sign(i + parity) * c.clone());
                }
            }
            let rule = |v: usize, level: usize| assignment[level * n + v];
            let last = rule_column(f, q - 1, &rule, field, flavor, &cache);
            sparse_axpy(&mut lhs, &(minus_one.clone() * field.sign(q)), &last);
        }
        res.record(f, lhs);
    }
    Ok(res)
}

/// A random simplicial map `K ⊗ Δ^q -> L`, where `L` is the closure of the
/// images of the facets of `K ⊗ Δ^q` under a random vertex assignment into
/// `target_vertices` points.
pub fn random_homotopy<R: Rng>(
    k: &SimplicialComplex,
    q: usize,
    target_vertices: usize,
    rng: &mut R,
) -> Result<SimplicialMap> {
    if target_vertices == 0 || target_vertices > crate::simplicial::MAX_VERTICES {
        return Err(Error::domain("target needs between 1 and 64 vertices"));
    }
    let source = Arc::new(k.ordered_product(q)?);
    let assignment: Vec<usize> = (0..source.n_vertices())
        .map(|_| rng.gen_range(0..target_vertices))
        .collect();
    let images: Vec<FaceMask> = source
        .facets()
        .into_iter()
        .map(|f| mask_indices(f).into_iter().fold(0u64, |m, v| m | (1u64 << assignment[v])))
        .collect();
    let labels = (0..target_vertices as u32).map(VertexLabel::int).collect();
    let target = Arc::new(SimplicialComplex::from_masks(labels, images)?);
    SimplicialMap::new(source, target, assignment)
}

/// A cochain on `K^{⋆m}`, evaluated on faces given as per-copy blocks of
/// vertex masks of `K`.
pub trait JoinCochain: Sync {
    fn copies(&self) -> usize;
    /// Dimension of the join faces it is supported on.
    fn degree(&self) -> isize;
    fn field(&self) -> Field;
    fn eval(&self, blocks: &[FaceMask]) -> Scalar;
}

/// `a_0 ⋆ ⋯ ⋆ a_m`: `(σ_0 ⊔ ⋯ ⊔ σ_m) ↦ Π a_i(σ_i)`.
#[derive(Debug, Clone)]
pub struct StarCochain {
    pub factors: Vec<Cochain>,
}

impl StarCochain {
    pub fn new(factors: Vec<Cochain>) -> Result<StarCochain> {
        let Some(first) = factors.first() else {
            return Err(Error::domain("a star cochain needs at least one factor"));
        };
        if factors.iter().any(|a| a.field != first.field) {
            return Err(Error::domain("star factors over different fields"));
        }
        Ok(StarCochain { factors })
    }
}

impl JoinCochain for StarCochain {
    fn copies(&self) -> usize {
        self.factors.len()
    }

    fn degree(&self) -> isize {
        self.factors.iter().map(|a| a.degree + 1).sum::<isize>() - 1
    }

    fn field(&self) -> Field {
        self.factors[0].field
    }

    fn eval(&self, blocks: &[FaceMask]) -> Scalar {
        let mut acc = self.field().one();
        for (a, &b) in self.factors.iter().zip(blocks) {
            if b.count_ones() as isize != a.degree + 1 {
                return self.field().zero();
            }
            acc = acc * a.eval(b);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

/// The (reduced) coboundary of a join cochain.
pub struct JoinCoboundary<'a> {
    pub inner: &'a dyn JoinCochain,
}

impl JoinCochain for JoinCoboundary<'_> {
    fn copies(&self) -> usize {
        self.inner.copies()
    }

    fn degree(&self) -> isize {
        self.inner.degree() + 1
    }

    fn field(&self) -> Field {
        self.inner.field()
    }

    fn eval(&self, blocks: &[FaceMask]) -> Scalar {
        let field = self.field();
        let mut acc = field.zero();
        let mut pos = 0;
        let mut face = blocks.to_vec();
        for (c, &b) in blocks.iter().enumerate() {
            for v in mask_indices(b) {
                face[c] = b & !(1u64 << v);
                let x = self.inner.eval(&face);
                if !x.is_zero() {
                    acc += &x.signed(pos);
                }
                pos += 1;
            }
            face[c] = b;
        }
        acc
    }
}

/// `(1⋆μ_i⋆1)^*`: pulls a cochain on `K^{⋆(m+1)}` back to `K^{⋆m}`, splitting
/// copy `i` by the partition.
pub struct PaddedMuPullback<'a> {
    pub inner: &'a dyn JoinCochain,
    pub partition: &'a VertexPartition,
    pub i: usize,
}

impl JoinCochain for PaddedMuPullback<'_> {
    fn copies(&self) -> usize {
        self.inner.copies() - 1
    }

    fn degree(&self) -> isize {
        self.inner.degree()
    }

    fn field(&self) -> Field {
        self.inner.field()
    }

    fn eval(&self, blocks: &[FaceMask]) -> Scalar {
        let first = self.partition.union(0, self.i);
        let b = blocks[self.i];
        let (lo, hi) = (b & first, b & !first);
        let mut split = Vec::with_capacity(blocks.len() + 1);
        split.extend_from_slice(&blocks[..self.i]);
        split.push(lo);
        split.push(hi);
        split.extend_from_slice(&blocks[self.i + 1..]);
        let parity = crate::simplicial::inversions(lo, hi);
        self.inner.eval(&split).signed(parity)
    }
}

/// Converts a face of `K^{⋆m}` (indices `c·n + v`) into per-copy blocks.
pub fn join_blocks(face: FaceMask, n: usize, copies: usize) -> Vec<FaceMask> {
    let low = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (0..copies).map(|c| (face >> (c * n)) & low).collect()
}

/// `P(I)^* c` for a cochain on `K^{⋆(q+1)}`, without building the join:
/// each `σ⊙s` is sent through `H_I` block by block.
pub fn prism_pullback_fast(partition: &VertexPartition, c: &dyn JoinCochain) -> Result<Cochain> {
    let q = partition.q();
    if c.copies() != q + 1 {
        return Err(Error::domain(format!(
            "cochain lives on {} copies, P(I) needs {}",
            c.copies(),
            q + 1
        )));
    }
    let field = c.field();
    let d = c.degree() - q as isize;
    let k = partition.parent();
    let n = k.n_vertices();
    let part = partition.part_index();
    let mut terms = SparseVec::new();
    if d < 0 {
        return Ok(Cochain { field, degree: d, terms });
    }
    let shuffles = enumerate_shuffles(d as usize, q);
    let mut blocks = vec![0u64; q + 1];
    for &f in k.faces_of_card((d + 1) as usize) {
        let verts = mask_indices(f);
        let mut acc = field.zero();
        for s in &shuffles {
            let e = s.entries();
            blocks.iter_mut().for_each(|b| *b = 0);
            let mut seq = Vec::with_capacity(verts.len() + q);
            let mut collided = false;
            'outer: for level in 0..=q {
                for &v in &verts[e[level]..=e[level + 1]] {
                    let copy = part[v].min(level);
                    let bit = 1u64 << v;
                    if blocks[copy] & bit != 0 {
                        collided = true;
                        break 'outer;
                    }
                    blocks[copy] |= bit;
                    seq.push(copy * n + v);
                }
            }
            if collided {
                continue;
            }
            let x = c.eval(&blocks);
            if !x.is_zero() {
                acc += &x.signed(permutation_parity(&seq) + s.sign_exponent());
            }
        }
        sparse_add(&mut terms, f, acc);
    }
    Ok(Cochain { field, degree: d, terms })
}

/// `P(I)^*(a_0 ⋆ ⋯ ⋆ a_q)`.
pub fn prism_pullback_on_star(partition: &VertexPartition, cochains: &[Cochain]) -> Result<Cochain> {
    if cochains.iter().any(|a| a.degree < 0) {
        return Err(Error::domain("star factors must have degree at least 0"));
    }
    let star = StarCochain::new(cochains.to_vec())?;
    prism_pullback_fast(partition, &star)
}

/// `P(I)^*` through a materialized operator, the slow route used to
/// cross-check [`prism_pullback_fast`].
pub fn prism_pullback_materialized(p: &PrismOperator, c: &dyn JoinCochain) -> Cochain {
    let n = p.source().n_vertices();
    let copies = c.copies();
    p.pullback(c.degree(), &|g| c.eval(&join_blocks(g, n, copies)))
}

/// Residual of
/// `(P(I)^*δ + (−1)^{q−1}δP(I)^*)(a_0⋆⋯⋆a_q) − Σ_{i<q} (−1)^i P(I(i))^*(1⋆μ_i⋆1)^*(a_0⋆⋯⋆a_q)`.
pub fn prism_lemma_residual(partition: &VertexPartition, cochains: &[Cochain]) -> Result<Cochain> {
    let q = partition.q();
    if cochains.len() != q + 1 {
        return Err(Error::domain(format!("need {} cochains, got {}", q + 1, cochains.len())));
    }
    if cochains.iter().any(|a| a.degree < 0) {
        return Err(Error::domain("star factors must have degree at least 0"));
    }
    let k = partition.parent();
    let space = FaceSpace::full(k);
    let star = StarCochain::new(cochains.to_vec())?;
    let field = star.field();
    let dstar = JoinCoboundary { inner: &star };
    let mut res = prism_pullback_fast(partition, &dstar)?;
    let pstar = prism_pullback_fast(partition, &star)?;
    res = res.add(&space.coboundary(&pstar).scale(&field.sign(q + 1)))?;
    for i in 0..q {
        let merged = partition.merge(i)?;
        let pulled = PaddedMuPullback {
            inner: &star,
            partition,
            i,
        };
        let term = prism_pullback_fast(&merged, &pulled)?;
        res = res.sub(&term.scale(&field.sign(i)))?;
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::mu_map_padded;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sh(s: &[usize]) -> Shuffle {
        Shuffle::from_entries(s.to_vec()).unwrap()
    }

    fn edge() -> Arc<SimplicialComplex> {
        Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2]]).unwrap())
    }

    #[test]
    fn odot_examples() {
        let k = edge();
        let sigma = Simplex::from_ints(&[1, 2]);
        assert_eq!(sigma_odot(&k, &sigma, &sh(&[0, 1, 1])).unwrap().to_string(), "{0:1,0:2,1:2}");
        assert_eq!(sigma_odot(&k, &sigma, &sh(&[0, 0, 1])).unwrap().to_string(), "{0:1,1:1,1:2}");
        assert_eq!(sigma_odot(&k, &sigma, &sh(&[0, 1])).unwrap().to_string(), "{0:1,0:2}");
        assert!(sigma_odot(&k, &sigma, &sh(&[0, 2])).is_err());
    }

    #[test]
    fn q0_prism_is_pushforward() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1, 2, 3]]).unwrap();
        let op = prism_p(&p, Field::Q, Flavor::Unreduced).unwrap();
        for d in 0..=1 {
            assert_eq!(op.matrix(d), Matrix::identity(Field::Q, k.faces_of_dim(d).len()));
        }
        assert!(verify_boundary_identity(&op).is_zero());
    }

    #[test]
    fn classical_prism_on_interval() {
        // H: Δ¹ ⊗ Δ¹ -> Δ¹ ⋆ Δ¹ sends level 0 to copy 0 and level 1 to copy 1
        let k = edge();
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1], &[2]]).unwrap();
        for flavor in [Flavor::Reduced, Flavor::Unreduced] {
            let op = prism_p(&p, Field::F3, flavor).unwrap();
            assert!(verify_boundary_identity(&op).is_zero());
            assert!(op.max_column_terms() <= 2);
        }
    }

    #[test]
    fn vertex_rules_match_maps() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 1]]).unwrap());
        let p = VertexPartition::from_int_parts(k, &[&[2], &[1, 3]]).unwrap();
        assert_eq!(homotopy_rule(&p), big_homotopy(&p).unwrap().assignment());
        assert_eq!(padded_mu_rule(&p, 0), mu_map_padded(&p, 0).unwrap().assignment());
    }

    #[test]
    fn boundary_identity_i_on_triangle() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap());
        let p = VertexPartition::from_int_parts(k, &[&[1], &[2], &[3]]).unwrap();
        for field in [Field::F2, Field::F3, Field::Q] {
            let op = prism_p(&p, field, Flavor::Unreduced).unwrap();
            assert!(verify_boundary_identity(&op).is_zero());
            assert!(verify_boundary_identity_i(&p, field, Flavor::Unreduced).unwrap().is_zero());
            assert!(verify_boundary_identity_i(&p, field, Flavor::Reduced).unwrap().is_zero());
        }
    }

    #[test]
    fn random_homotopies_satisfy_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2, 3], &[3, 4]]).unwrap());
        for q in 0..=2 {
            let h = random_homotopy(&k, q, 5, &mut rng).unwrap();
            let op = PrismOperator::new(&h, k.clone(), q, Field::F3, Flavor::Reduced).unwrap();
            assert!(verify_boundary_identity(&op).is_zero(), "q = {q}");
        }
    }

    fn unit_cochain(field: Field, f: FaceMask) -> Cochain {
        Cochain::from_terms(field, f.count_ones() as isize - 1, [(f, field.one())].into_iter().collect()).unwrap()
    }

    #[test]
    fn fast_pullback_matches_materialized() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap());
        let p = VertexPartition::from_int_parts(k.clone(), &[&[1, 3], &[2, 4]]).unwrap();
        let op = prism_p(&p, Field::Q, Flavor::Reduced).unwrap();
        let a = unit_cochain(Field::Q, 0b0001).add(&unit_cochain(Field::Q, 0b0100)).unwrap();
        let b = unit_cochain(Field::Q, 0b0010);
        let star = StarCochain::new(vec![a, b]).unwrap();
        let fast = prism_pullback_fast(&p, &star).unwrap();
        let slow = prism_pullback_materialized(&op, &star);
        assert_eq!(fast, slow);
        let dstar = JoinCoboundary { inner: &star };
        assert_eq!(prism_pullback_fast(&p, &dstar).unwrap(), prism_pullback_materialized(&op, &dstar));
    }

    #[test]
    fn prism_lemma_on_cycle() {
        let k = Arc::new(SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap());
        let p = VertexPartition::from_int_parts(k, &[&[1, 3], &[2, 4]]).unwrap();
        for a in [0b0001u64, 0b0100, 0b0101] {
            for b in [0b0010u64, 0b1000, 0b0011] {
                let ca = unit_cochain(Field::F3, a & 0b0101 | (a & !0b0101));
                let cb = unit_cochain(Field::F3, b);
                let r = prism_lemma_residual(&p, &[ca, cb]).unwrap();
                assert!(r.is_zero(), "{a:b} {b:b}");
            }
        }
        let z = prism_pullback_on_star(&p, &[Cochain::zero(Field::F3, 0), Cochain::zero(Field::F3, 0)]).unwrap();
        assert!(z.is_zero());
    }
}
