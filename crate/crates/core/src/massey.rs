//! Massey products in `C*(K)`: defining systems, exact triple products, the
//! zeroing of systems with overlapping supports, and the construction of
//! vanishing defining systems on tight complexes.
//!
//! The construction works with reduced cochains `a_{i,j}` on `K` and the
//! positional star product on joins, where `ā = (−1)^{r+1} a` for reduced
//! degree `r`. Systems are carried into `C*(K)` by
//! `b_{i,j} = (−1)^{e_{i,j}} j*_{I_i⊔⋯⊔I_j}(a_{i,j})`, where
//! `e_{i,j} = (j−i) + Σ_{i≤p<l≤j} (|I_p|·r_l + inv(I_p, I_l))`.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dga::{dga_differential, dga_product, ClassRef, HochsterTable, KoszulCochain};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homology::{express_as_coboundary, sparse_add, Cochain, FaceSpace, SparseVec};
use crate::linalg::Matrix;
use crate::partition::{ordered_partitions, VertexPartition};
use crate::prism::{prism_pullback_fast, JoinCoboundary, StarCochain};
use crate::shuffle::{enumerate_hat_shuffles, epsilon_k, Shuffle};
use crate::simplicial::{compress_mask, expand_mask, inversions, mask_indices, FaceMask, SimplicialComplex};

/// `ā = (−1)^{r+1} a` for a reduced cochain of degree `r`.
pub fn bar(a: &Cochain) -> Cochain {
    let e = (a.degree + 1).rem_euclid(2) as usize;
    a.scale(&a.field.sign(e))
}

/// A defining system `{a_{i,j}}` in `C*(K)`, optionally with `a_{0,q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSystem {
    pub q: usize,
    pub entries: BTreeMap<(usize, usize), KoszulCochain>,
}

impl DefiningSystem {
    pub fn new(q: usize) -> DefiningSystem {
        DefiningSystem {
            q,
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&KoszulCochain> {
        self.entries.get(&(i, j))
    }

    fn entry(&self, i: usize, j: usize, field: Field) -> KoszulCochain {
        self.get(i, j).cloned().unwrap_or_else(|| KoszulCochain::zero(field))
    }

    /// `Σ_{k=i}^{j−1} ā_{i,k} a_{k+1,j}`.
    pub fn relation_rhs(&self, k: &SimplicialComplex, field: Field, i: usize, j: usize) -> Result<KoszulCochain> {
        let mut acc = KoszulCochain::zero(field);
        for p in i..j {
            let term = dga_product(k, &self.entry(i, p, field).bar(), &self.entry(p + 1, j, field))?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Checks degrees, that `a_{i,i}` represents the class of `reps[i]`, and
/// every relation `δa_{i,j} = Σ ā_{i,k} a_{k+1,j}` (including `(0, q)` when present).
pub fn is_defining_system(
    k: &SimplicialComplex,
    table: &HochsterTable,
    ds: &DefiningSystem,
    reps: &[KoszulCochain],
) -> Result<bool> {
    let field = table.field;
    if reps.len() != ds.q + 1 {
        return Err(Error::domain(format!("{} classes for a system with q = {}", reps.len(), ds.q)));
    }
    let degs: Vec<usize> = reps
        .iter()
        .map(|r| r.degree().ok_or_else(|| Error::domain("class representatives must be homogeneous and nonzero")))
        .collect::<Result<_>>()?;
    for (&(i, j), a) in &ds.entries {
        if i > j || j > ds.q {
            return Err(Error::domain(format!("entry ({i},{j}) out of range")));
        }
        let expected = degs[i..=j].iter().sum::<usize>() - (j - i);
        if !a.is_zero() && a.degree() != Some(expected) {
            return Err(Error::domain(format!("a_{{{i},{j}}} should have degree {expected}")));
        }
    }
    for (i, rep) in reps.iter().enumerate().take(ds.q + 1) {
        let a = ds.entry(i, i, field);
        if !dga_differential(k, &a).is_zero() {
            return Ok(false);
        }
        if table.express_as_coboundary(&a.sub(rep)?)?.is_none() {
            return Ok(false);
        }
    }
    for span in 1..=ds.q {
        for i in 0..=ds.q - span {
            let j = i + span;
            if (i, j) == (0, ds.q) && ds.get(0, ds.q).is_none() {
                continue;
            }
            let lhs = dga_differential(k, &ds.entry(i, j, field));
            if lhs != ds.relation_rhs(k, field, i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct MasseyOutcome {
    pub defined: bool,
    pub representative: KoszulCochain,
    pub total_degree: usize,
    /// Coordinates against `table.classes_of_degree(total_degree)`.
    pub class: Vec<Scalar>,
}

impl MasseyOutcome {
    pub fn is_zero(&self) -> bool {
        self.class.iter().all(|c| c.is_zero())
    }
}

/// The class of `Σ_{i<q} ā_{0,i} a_{i+1,q}` for a valid system.
pub fn massey_evaluate(
    k: &SimplicialComplex,
    table: &HochsterTable,
    ds: &DefiningSystem,
    reps: &[KoszulCochain],
) -> Result<MasseyOutcome> {
    if !is_defining_system(k, table, ds, reps)? {
        return Err(Error::domain("not a defining system"));
    }
    let field = table.field;
    let representative = ds.relation_rhs(k, field, 0, ds.q)?;
    let total_degree = reps.iter().map(|r| r.degree().unwrap_or(0)).sum::<usize>() + 1 - ds.q;
    if !dga_differential(k, &representative).is_zero() {
        return Err(Error::Verification("Massey representative is not a cocycle".into()));
    }
    let class = if representative.is_zero() {
        vec![field.zero(); table.classes_of_degree(total_degree).len()]
    } else {
        table.coordinates(&representative, total_degree)?
    };
    Ok(MasseyOutcome {
        defined: true,
        representative,
        total_degree,
        class,
    })
}

/// Overlapping supports: zero every `a_{k,l}` with `k ≤ i < j ≤ l`.
///
/// `supports[k]` is the support of the `k`-th class; entry `a_{k,l}` must live
/// in the summand `I_k ∪ ⋯ ∪ I_l`.
pub fn zero_overlap_system(ds: &DefiningSystem, supports: &[FaceMask], i: usize, j: usize) -> Result<DefiningSystem> {
    if supports.len() != ds.q + 1 || i >= j || j > ds.q {
        return Err(Error::domain("bad positions for the overlap lemma"));
    }
    if supports[i] & supports[j] == 0 {
        return Err(Error::domain(format!("supports at {i} and {j} are disjoint")));
    }
    for (&(k, l), a) in &ds.entries {
        let u = supports[k..=l].iter().fold(0, |m, s| m | s);
        if a.supports().iter().any(|&s| s != u) {
            return Err(Error::domain(format!("a_{{{k},{l}}} is not supported on the union of its classes")));
        }
    }
    let mut out = ds.clone();
    for (&(k, l), a) in out.entries.iter_mut() {
        if k <= i && j <= l {
            *a = KoszulCochain::zero(a.field);
        }
    }
    out.entries.remove(&(0, ds.q));
    Ok(out)
}

/// Result of [`triple_massey_exact`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleMasseyOutcome {
    pub defined: bool,
    pub total_degree: usize,
    /// Dimension of `α·H + H·γ` in the target degree.
    pub indeterminacy_dim: usize,
    pub target_dim: usize,
    /// Class of the representative reduced modulo the indeterminacy.
    pub coset: Vec<Scalar>,
    pub trivial: bool,
}

fn solve_product(k: &SimplicialComplex, table: &HochsterTable, x: &KoszulCochain, y: &KoszulCochain) -> Result<Option<KoszulCochain>> {
    let prod = dga_product(k, &x.bar(), y)?;
    table.express_as_coboundary(&prod)
}

/// `⟨α, β, γ⟩` decided exactly: representative class modulo `α·H + H·γ`.
pub fn triple_massey_exact(
    k: &SimplicialComplex,
    table: &HochsterTable,
    classes: [ClassRef; 3],
) -> Result<TripleMasseyOutcome> {
    let reps = classes
        .iter()
        .map(|&c| table.koszul_representative(c))
        .collect::<Result<Vec<_>>>()?;
    triple_from_reps(k, table, classes, &reps, None::<&mut rand_chacha::ChaCha8Rng>)
}

/// Same verdict computed from randomly perturbed representatives and
/// randomly perturbed defining choices.
pub fn triple_massey_randomized<R: Rng>(
    k: &SimplicialComplex,
    table: &HochsterTable,
    classes: [ClassRef; 3],
    rng: &mut R,
) -> Result<TripleMasseyOutcome> {
    let mut reps = Vec::new();
    for &c in &classes {
        let base = table.representative(c)?;
        let noise = random_coboundary(table, c.subset, base.degree, rng)?;
        reps.push(KoszulCochain::from_cochain(c.subset, &base.add(&noise)?)?);
    }
    triple_from_reps(k, table, classes, &reps, Some(rng))
}

fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    field.from_i64(rng.gen_range(-3..=3))
}

fn random_coboundary<R: Rng>(table: &HochsterTable, subset: FaceMask, r: isize, rng: &mut R) -> Result<Cochain> {
    let field = table.field;
    let space = table.space(subset).ok_or_else(|| Error::domain("unknown subset"))?;
    let mut terms = SparseVec::new();
    for &f in space.faces(r - 1) {
        sparse_add(&mut terms, f, random_scalar(field, rng));
    }
    Ok(space.coboundary(&Cochain {
        field,
        degree: r - 1,
        terms,
    }))
}

/// A random cocycle of total degree `t` in `C*(K)`: a random combination of
/// basis classes plus random coboundaries.
fn random_cocycle<R: Rng>(table: &HochsterTable, t: usize, rng: &mut R) -> Result<KoszulCochain> {
    let field = table.field;
    let mut acc = KoszulCochain::zero(field);
    for c in table.classes_of_degree(t) {
        let rep = table.koszul_representative(c)?;
        acc = acc.add(&rep.scale(&random_scalar(field, rng)))?;
    }
    for u in table.subsets() {
        let r = t as isize - u.count_ones() as isize - 1;
        if r < 0 {
            continue;
        }
        let b = random_coboundary(table, u, r, rng)?;
        acc = acc.add(&KoszulCochain::from_cochain(u, &b)?)?;
    }
    Ok(acc)
}

fn triple_from_reps<R: Rng>(
    k: &SimplicialComplex,
    table: &HochsterTable,
    classes: [ClassRef; 3],
    reps: &[KoszulCochain],
    rng: Option<&mut R>,
) -> Result<TripleMasseyOutcome> {
    let field = table.field;
    let degs: Vec<usize> = classes.iter().map(|c| c.total_degree()).collect();
    let t = degs.iter().sum::<usize>() - 1;
    let target = table.classes_of_degree(t);
    let (Some(mut a01), Some(mut a12)) = (
        solve_product(k, table, &reps[0], &reps[1])?,
        solve_product(k, table, &reps[1], &reps[2])?,
    ) else {
        return Ok(TripleMasseyOutcome {
            defined: false,
            total_degree: t,
            indeterminacy_dim: 0,
            target_dim: target.len(),
            coset: Vec::new(),
            trivial: false,
        });
    };
    if let Some(r) = rng {
        a01 = a01.add(&random_cocycle(table, degs[0] + degs[1] - 1, r)?)?;
        a12 = a12.add(&random_cocycle(table, degs[1] + degs[2] - 1, r)?)?;
    }
    let omega = dga_product(k, &reps[0].bar(), &a12)?.add(&dga_product(k, &a01.bar(), &reps[2])?)?;
    if !dga_differential(k, &omega).is_zero() {
        return Err(Error::Verification("triple Massey representative is not a cocycle".into()));
    }
    let coords = table.coordinates(&omega, t)?;
    // indeterminacy α·H^{|β|+|γ|−1} + H^{|α|+|β|−1}·γ
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let alpha = table.koszul_representative(classes[0])?;
    let gamma = table.koszul_representative(classes[2])?;
    let mut h_right: Vec<KoszulCochain> = table
        .classes_of_degree(degs[1] + degs[2] - 1)
        .into_iter()
        .map(|c| table.koszul_representative(c))
        .collect::<Result<_>>()?;
    if degs[1] + degs[2] == 1 {
        h_right.push(KoszulCochain::unit(field));
    }
    for h in &h_right {
        gens.push(table.coordinates(&dga_product(k, &alpha, h)?, t)?);
    }
    let h_left: Vec<KoszulCochain> = table
        .classes_of_degree(degs[0] + degs[1] - 1)
        .into_iter()
        .map(|c| table.koszul_representative(c))
        .collect::<Result<_>>()?;
    for h in &h_left {
        gens.push(table.coordinates(&dga_product(k, h, &gamma)?, t)?);
    }
    let (indeterminacy_dim, coset) = reduce_modulo(field, coords.len(), &gens, &coords);
    let trivial = coset.iter().all(|c| c.is_zero());
    Ok(TripleMasseyOutcome {
        defined: true,
        total_degree: t,
        indeterminacy_dim,
        target_dim: coords.len(),
        coset,
        trivial,
    })
}

/// Canonical representative of `v` modulo the span of `gens`.
fn reduce_modulo(field: Field, dim: usize, gens: &[Vec<Scalar>], v: &[Scalar]) -> (usize, Vec<Scalar>) {
    let mut out = v.to_vec();
    if gens.is_empty() || dim == 0 {
        return (0, out);
    }
    let rr = Matrix::from_columns(field, dim, gens).transpose().rref();
    for (row, &p) in rr.pivots.iter().enumerate() {
        let c = out[p].clone();
        if c.is_zero() {
            continue;
        }
        for (col, x) in out.iter_mut().enumerate() {
            *x = x.clone() - &c * rr.matrix.get(row, col);
        }
    }
    (rr.rank, out)
}

/// Reduced cochains `a_{i,j}` on one complex, keyed by `(i, j)`.
pub type LocalSystem = BTreeMap<(usize, usize), Cochain>;

/// `μ_p^*(x ⋆ y)`: `σ ↦ (−1)^{inv(σ∩A, σ∩B)} x(σ∩A) y(σ∩B)`, `A = I_0 ⊔ ⋯ ⊔ I_p`.
pub fn mu_pullback_star(partition: &VertexPartition, p: usize, x: &Cochain, y: &Cochain) -> Result<Cochain> {
    if p >= partition.q() {
        return Err(Error::domain(format!("μ_{p} needs p < {}", partition.q())));
    }
    let k = partition.parent();
    let a = partition.union(0, p);
    let field = x.field;
    let mut terms = SparseVec::new();
    for (&f, cx) in &x.terms {
        if f & !a != 0 {
            continue;
        }
        for (&g, cy) in &y.terms {
            if g & a != 0 || !k.contains(f | g) {
                continue;
            }
            sparse_add(&mut terms, f | g, (cx * cy).signed(inversions(f, g)));
        }
    }
    Ok(Cochain {
        field,
        degree: x.degree + y.degree + 1,
        terms,
    })
}

/// `Σ_{p=i}^{j−1} μ_p^*(ā_{i,p} ⋆ a_{p+1,j})`.
pub fn condition_rhs(partition: &VertexPartition, sys: &LocalSystem, i: usize, j: usize) -> Result<Cochain> {
    let mut acc: Option<Cochain> = None;
    for p in i..j {
        let x = sys.get(&(i, p)).ok_or_else(|| Error::domain(format!("missing a_{{{i},{p}}}")))?;
        let y = sys.get(&(p + 1, j)).ok_or_else(|| Error::domain(format!("missing a_{{{},{j}}}", p + 1)))?;
        let term = mu_pullback_star(partition, p, &bar(x), y)?;
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    acc.ok_or_else(|| Error::domain("empty range"))
}

/// A cocycle `a` on `K` whose restriction to `K_I` is cohomologous to `alpha`.
pub fn lift_cocycle(k: &SimplicialComplex, field: Field, part: FaceMask, alpha: &Cochain) -> Result<Cochain> {
    let r = alpha.degree;
    if part == k.vertex_mask() {
        return Ok(alpha.clone());
    }
    let full = FaceSpace::full(k);
    let sub = FaceSpace::new(k, part)?;
    let n_a = full.faces(r).len();
    let n_y = sub.faces(r - 1).len();
    let rows_d = full.faces(r + 1).len();
    let rows_r = sub.faces(r).len();
    let mut m = Matrix::zeros(field, rows_d + rows_r, n_a + n_y);
    let dk = full.coboundary_matrix(r, field, crate::homology::Flavor::Reduced);
    for row in 0..rows_d {
        for col in 0..n_a {
            let v = dk.get(row, col);
            if !v.is_zero() {
                m.set(row, col, v.clone());
            }
        }
    }
    let di = sub.coboundary_matrix(r - 1, field, crate::homology::Flavor::Reduced);
    let minus_one = field.from_i64(-1);
    for (row, &f) in sub.faces(r).iter().enumerate() {
        m.set(rows_d + row, full.position(f).expect("face of K"), field.one());
        for col in 0..n_y {
            let v = di.get(row, col);
            if !v.is_zero() {
                m.set(rows_d + row, n_a + col, &minus_one * v);
            }
        }
    }
    let mut rhs = vec![field.zero(); rows_d];
    rhs.extend(sub.to_dense(r, &alpha.terms, field)?);
    let x = m.solve(&rhs)?.ok_or_else(|| {
        Error::NotLiftable(format!("class of degree {r} on subset {part:#b} is not a restriction"))
    })?;
    Ok(Cochain {
        field,
        degree: r,
        terms: full.from_dense(r, &x[..n_a]),
    })
}

/// Adjacent entries: `a_{i,i+1} = P(J)^*(ā_{i,i} ⋆ a_{i+1,i+1})`, checked against
/// `δa_{i,i+1} = μ_i^*(ā_{i,i} ⋆ a_{i+1,i+1})`.
pub fn build_adjacent(partition: &VertexPartition, i: usize, aii: &Cochain, ajj: &Cochain) -> Result<Cochain> {
    let q = partition.q();
    if i >= q {
        return Err(Error::domain(format!("adjacent pair ({i},{}) out of range", i + 1)));
    }
    let k = partition.parent();
    let j = VertexPartition::new(k.clone(), vec![partition.union(0, i), partition.union(i + 1, q)])?;
    let star = StarCochain::new(vec![bar(aii), ajj.clone()])?;
    let a = prism_pullback_fast(&j, &star)?;
    let space = FaceSpace::full(k);
    let expected = mu_pullback_star(partition, i, &bar(aii), ajj)?;
    if space.coboundary(&a) != expected {
        return Err(Error::Verification(format!("δa_{{{i},{}}} differs from μ_{i}^*(ā⋆a)", i + 1)));
    }
    Ok(a)
}

/// Solves `δa_{i,j} = Σ_p μ_p^*(ā_{i,p} ⋆ a_{p+1,j})` with the first solution.
pub fn build_general(partition: &VertexPartition, sys: &LocalSystem, i: usize, j: usize) -> Result<Cochain> {
    let k = partition.parent();
    let space = FaceSpace::full(k);
    let rhs = condition_rhs(partition, sys, i, j)?;
    if !space.coboundary(&rhs).is_zero() {
        return Err(Error::Verification(format!("right-hand side for a_{{{i},{j}}} is not a cocycle")));
    }
    express_as_coboundary(&space, &rhs)?.ok_or_else(|| Error::ConstructionFailed {
        context: format!("a_{{{i},{j}}}"),
        message: "right-hand side is not exact".into(),
    })
}

/// `ε(s)` for `s ∈ Ŝ(j−i, k)` with the factor degrees of `a^s`.
fn epsilon_s(s: &Shuffle, factor_degrees: &[isize]) -> usize {
    let k = s.q();
    (0..k)
        .filter(|m| (m + k) % 2 == 1)
        .map(|m| (factor_degrees[m] + 1).rem_euclid(2) as usize)
        .sum()
}

/// Checks that `Σ_p μ_p^*(ā_{i,p}⋆a_{p+1,j}) − Σ_{s∈Ŝ(j−i,k)} (−1)^{ε(s)+ε(k)} P(I^s)^*δ(a^s)`
/// is a coboundary. Returns whether it is.
pub fn verify_decomposition(partition: &VertexPartition, sys: &LocalSystem, i: usize, j: usize, k: usize) -> Result<bool> {
    if k == 0 || k > j - i {
        return Err(Error::domain(format!("k = {k} outside 1..={}", j - i)));
    }
    let field = sys
        .values()
        .next()
        .map(|c| c.field)
        .ok_or_else(|| Error::domain("empty system"))?;
    let space = FaceSpace::full(partition.parent());
    let mut residual = condition_rhs(partition, sys, i, j)?;
    for s in enumerate_hat_shuffles(j - i, k) {
        let e = s.entries();
        let idx: Vec<usize> = e.iter().map(|x| i + x).collect();
        let mut factors = Vec::with_capacity(k + 1);
        let first = sys
            .get(&(idx[0], idx[1]))
            .ok_or_else(|| Error::domain("missing factor"))?;
        factors.push(first.clone());
        for p in 1..=k {
            let f = sys
                .get(&(idx[p] + 1, idx[p + 1]))
                .ok_or_else(|| Error::domain("missing factor"))?;
            factors.push(f.clone());
        }
        let degrees: Vec<isize> = factors.iter().map(|f| f.degree).collect();
        let sign = field.sign(epsilon_s(&s, &degrees) + epsilon_k(k));
        let blocks = partition.from_shuffle(i, j, &s)?;
        let star = StarCochain::new(factors)?;
        let dstar = JoinCoboundary { inner: &star };
        let term = prism_pullback_fast(&blocks, &dstar)?;
        residual = residual.sub(&term.scale(&sign))?;
    }
    Ok(express_as_coboundary(&space, &residual)?.is_some())
}

/// Exponent `e_{i,j}` of the transport sign into `C*(K)`.
fn transport_exponent(parts: &[FaceMask], degrees: &[isize], i: usize, j: usize) -> usize {
    let mut e = j - i;
    for p in i..=j {
        for l in p + 1..=j {
            e += parts[p].count_ones() as usize * degrees[l].rem_euclid(2) as usize;
            e += inversions(parts[p], parts[l]);
        }
    }
    e
}

/// `b_{i,j} = (−1)^{e_{i,j}} j*_{I_i⊔⋯⊔I_j}(a_{i,j})` as elements of `C*(K)`.
pub fn transport_system(parts: &[FaceMask], degrees: &[isize], sys: &LocalSystem) -> Result<DefiningSystem> {
    let q = parts.len() - 1;
    let mut ds = DefiningSystem::new(q);
    for (&(i, j), a) in sys {
        let u = parts[i..=j].iter().fold(0, |m, p| m | p);
        let sign = a.field.sign(transport_exponent(parts, degrees, i, j));
        let restricted = a.restrict(u).scale(&sign);
        ds.entries.insert((i, j), KoszulCochain::from_cochain(u, &restricted)?);
    }
    Ok(ds)
}

/// Runs the full construction for one partition of `V(K)` and one tuple of
/// class representatives (cocycles on `K_{I_i}`).
pub fn construct_system(partition: &VertexPartition, classes: &[Cochain]) -> Result<LocalSystem> {
    let q = partition.q();
    if classes.len() != q + 1 {
        return Err(Error::domain(format!("{} classes for {} parts", classes.len(), q + 1)));
    }
    let k = partition.parent();
    let mut sys = LocalSystem::new();
    for (i, alpha) in classes.iter().enumerate() {
        let field = alpha.field;
        sys.insert((i, i), lift_cocycle(k, field, partition.parts()[i], alpha)?);
    }
    for i in 0..q {
        let a = build_adjacent(partition, i, &sys[&(i, i)], &sys[&(i + 1, i + 1)])?;
        sys.insert((i, i + 1), a);
    }
    for span in 2..=q {
        for i in 0..=q - span {
            let a = build_general(partition, &sys, i, i + span)?;
            sys.insert((i, i + span), a);
        }
    }
    Ok(sys)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EntryChecks {
    pub defining_system: bool,
    pub representative_is_coboundary: bool,
    /// `None` when the decomposition oracle was not run.
    pub decomposition: Option<bool>,
}

impl EntryChecks {
    pub fn passed(&self) -> bool {
        self.defining_system && self.representative_is_coboundary && self.decomposition != Some(false)
    }
}

#[derive(Debug, Clone)]
pub struct CertificateEntry {
    /// Support `U` in the ambient complex.
    pub support: FaceMask,
    /// Parts `I_0, ..., I_q` in the ambient complex.
    pub parts: Vec<FaceMask>,
    pub classes: Vec<ClassRef>,
    /// `a_{i,j}` on `K_U`, in the vertex indexing of `K_U`.
    pub a: LocalSystem,
    /// `b_{i,j}` in `C*(K_U)`, including `b_{0,q}`.
    pub b: DefiningSystem,
    pub checks: EntryChecks,
}

#[derive(Debug, Clone)]
pub struct GolodCertificate {
    pub field: Field,
    pub max_arity: usize,
    pub entries: Vec<CertificateEntry>,
    /// Partitions with some part carrying no cohomology.
    pub vacuous_partitions: usize,
    pub partitions_checked: usize,
}

impl GolodCertificate {
    pub fn all_verified(&self) -> bool {
        self.entries.iter().all(|e| e.checks.passed())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CertificateOptions {
    pub max_arity: usize,
    /// Run the decomposition oracle on entries with `j − i ≤` this span.
    pub decomposition_span: usize,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            max_arity: 3,
            decomposition_span: 3,
        }
    }
}

/// Certifies one `(U, partition, tuple)`: builds the system inside `K_U`,
/// transports it into `C*(K_U)` and checks it.
pub fn certify_tuple(
    k: &SimplicialComplex,
    table: &HochsterTable,
    parts: &[FaceMask],
    classes: &[ClassRef],
    decomposition_span: usize,
) -> Result<CertificateEntry> {
    let field = table.field;
    let support = parts.iter().fold(0, |m, p| m | p);
    let ku = Arc::new(k.full_subcomplex_mask(support)?);
    let local_parts: Vec<FaceMask> = parts.iter().map(|&p| compress_mask(p, support)).collect();
    let partition = VertexPartition::new(ku.clone(), local_parts.clone())?;
    let reps: Vec<Cochain> = classes
        .iter()
        .map(|&c| {
            let rep = table.representative(c)?;
            Ok(Cochain {
                field,
                degree: rep.degree,
                terms: rep.terms.iter().map(|(&f, v)| (compress_mask(f, support), v.clone())).collect(),
            })
        })
        .collect::<Result<_>>()?;
    let context = || {
        format!(
            "support {support:#b}, parts {:?}, classes {:?}",
            parts.iter().map(|p| format!("{p:#b}")).collect::<Vec<_>>(),
            classes
        )
    };
    let sys = construct_system(&partition, &reps).map_err(|e| match e {
        Error::ConstructionFailed { message, .. } => Error::ConstructionFailed { context: context(), message },
        other => other,
    })?;
    let degrees: Vec<isize> = classes.iter().map(|c| c.reduced_degree).collect();
    let b = transport_system(&local_parts, &degrees, &sys)?;
    let local_table = LocalTable::new(&ku, &local_parts, &reps)?;
    let q = parts.len() - 1;
    let defining_system = local_table.check(&ku, &b)?;
    let rhs = b.relation_rhs(&ku, field, 0, q)?;
    let representative_is_coboundary = dga_differential(&ku, &b.entry(0, q, field)) == rhs;
    let decomposition = if q <= decomposition_span.max(1) {
        let mut ok = true;
        for span in 1..=q {
            for i in 0..=q - span {
                for kk in 1..=span {
                    ok &= verify_decomposition(&partition, &sys, i, i + span, kk)?;
                }
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(CertificateEntry {
        support,
        parts: parts.to_vec(),
        classes: classes.to_vec(),
        a: sys,
        b,
        checks: EntryChecks {
            defining_system,
            representative_is_coboundary,
            decomposition,
        },
    })
}

/// Cohomology data of `K_U` needed to check a transported system.
struct LocalTable {
    reps: Vec<KoszulCochain>,
    spaces: BTreeMap<FaceMask, FaceSpace>,
}

impl LocalTable {
    fn new(ku: &SimplicialComplex, parts: &[FaceMask], reps: &[Cochain]) -> Result<LocalTable> {
        let mut spaces = BTreeMap::new();
        let q = parts.len() - 1;
        for i in 0..=q {
            for j in i..=q {
                let u = parts[i..=j].iter().fold(0, |m, p| m | p);
                spaces.insert(u, FaceSpace::new(ku, u)?);
            }
        }
        let reps = parts
            .iter()
            .zip(reps)
            .map(|(&p, c)| KoszulCochain::from_cochain(p, c))
            .collect::<Result<_>>()?;
        Ok(LocalTable { reps, spaces })
    }

    /// The defining-system identities for all `(i, j)` including `(0, q)`, and
    /// that each `b_{i,i}` is cohomologous to the chosen representative.
    fn check(&self, ku: &SimplicialComplex, b: &DefiningSystem) -> Result<bool> {
        let field = self.reps[0].field;
        for i in 0..=b.q {
            let bii = b.entry(i, i, field);
            if !dga_differential(ku, &bii).is_zero() {
                return Ok(false);
            }
            let diff = bii.sub(&self.reps[i])?;
            for u in diff.supports() {
                let space = &self.spaces[&u];
                let r = diff.degree().map(|d| d as isize - u.count_ones() as isize - 1).unwrap_or(-1);
                if express_as_coboundary(space, &diff.summand(u, r))?.is_none() {
                    return Ok(false);
                }
            }
        }
        for span in 1..=b.q {
            for i in 0..=b.q - span {
                let j = i + span;
                if dga_differential(ku, &b.entry(i, j, field)) != b.relation_rhs(ku, field, i, j)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// One certificate job: an ordered partition of a support and a class per part.
pub type CertificateJob = (Vec<FaceMask>, Vec<ClassRef>);

/// All certificate jobs of `K`: every support, ordered partition into
/// `2..=max_arity` parts, and tuple of basis classes. Also returns the number
/// of partitions seen and how many of them were vacuous.
pub fn certificate_jobs(k: &SimplicialComplex, table: &HochsterTable, max_arity: usize) -> (Vec<CertificateJob>, usize, usize) {
    let mut jobs = Vec::new();
    let mut vacuous = 0;
    let mut partitions = 0;
    for u in crate::dga::nonempty_subsets(k.vertex_mask()) {
        for m in 2..=max_arity.min(u.count_ones() as usize) {
            for parts in ordered_partitions(u, m) {
                partitions += 1;
                let per_part: Vec<Vec<ClassRef>> = parts.iter().map(|&p| table.classes(p)).collect();
                if per_part.iter().any(|c| c.is_empty()) {
                    vacuous += 1;
                    continue;
                }
                let mut tuple = Vec::with_capacity(m);
                product_tuples(&per_part, &mut tuple, &mut |t| jobs.push((parts.clone(), t.to_vec())));
            }
        }
    }
    (jobs, vacuous, partitions)
}

fn product_tuples(lists: &[Vec<ClassRef>], cur: &mut Vec<ClassRef>, f: &mut dyn FnMut(&[ClassRef])) {
    if cur.len() == lists.len() {
        f(cur);
        return;
    }
    for &c in &lists[cur.len()] {
        cur.push(c);
        product_tuples(lists, cur, f);
        cur.pop();
    }
}

/// Certificate that every Massey product of disjointly supported basis
/// classes, up to `max_arity` factors, vanishes. Requires `K` tight over the field.
pub fn construct_golod_certificate(
    k: &SimplicialComplex,
    table: &HochsterTable,
    options: CertificateOptions,
) -> Result<GolodCertificate> {
    let field = table.field;
    let tight = crate::analysis::is_tight(k, field, crate::analysis::TightnessOptions::default())?;
    if !tight.tight {
        return Err(Error::NotTight {
            field: field.to_string(),
            witness: tight.witness_labels(k),
        });
    }
    if options.max_arity < 2 {
        return Err(Error::domain("max arity must be at least 2"));
    }
    let (jobs, vacuous_partitions, partitions_checked) = certificate_jobs(k, table, options.max_arity);
    let entries: Vec<CertificateEntry> = jobs
        .par_iter()
        .map(|(parts, classes)| certify_tuple(k, table, parts, classes, options.decomposition_span))
        .collect::<Result<_>>()?;
    if let Some(bad) = entries.iter().find(|e| !e.checks.passed()) {
        return Err(Error::Verification(format!(
            "certificate entry on support {:#b} failed its checks: {:?}",
            bad.support, bad.checks
        )));
    }
    Ok(GolodCertificate {
        field,
        max_arity: options.max_arity,
        entries,
        vacuous_partitions,
        partitions_checked,
    })
}

/// Expands a cochain on `K_U` (compressed indexing) back to ambient masks.
pub fn expand_cochain(c: &Cochain, support: FaceMask) -> Cochain {
    Cochain {
        field: c.field,
        degree: c.degree,
        terms: c.terms.iter().map(|(&f, v)| (expand_mask(f, support), v.clone())).collect(),
    }
}

/// Masks of the faces supporting a cochain, listed as vertex index sequences.
pub fn cochain_support(c: &Cochain) -> Vec<Vec<usize>> {
    c.terms.keys().map(|&f| mask_indices(f)).collect()
}
