//! The dga `C*(K) = F ⊕ ⨁_{∅≠I} C̃^*(K_I)`, the finite Koszul quotient
//! `R(K)`, the isomorphism `φ` between them, Hochster-style cohomology and the
//! weak Golod test.
//!
//! Sign conventions. A basis key `(I, σ)` has total degree `|I| + card σ`.
//! The differential is the plain coboundary of each summand. The product of
//! `(I, σ)` and `(J, τ)` is `(I ∪ J, σ ∪ τ)` with sign
//! `(−1)^{|I|·card τ + inv(I, J) + inv(σ, τ)}`, zero when `I ∩ J ≠ ∅` or
//! `σ ∪ τ ∉ K`, where `inv(A, B)` counts pairs `u ∈ A`, `w ∈ B` with `w < u`.
//! `φ(I, σ) = (−1)^{θ} v_σ x_{I∖σ}` with `θ = binom(card σ, 2) + inv(σ, I∖σ)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::homology::{cohomology_of, express_as_coboundary, Cochain, FaceSpace, Flavor, HomologyBasis, SparseVec};
use crate::linalg::Matrix;
use crate::simplicial::{inversions, mask_indices, FaceMask, SimplicialComplex};

/// `(I, σ)`.
pub type Key = (FaceMask, FaceMask);

pub fn key_degree(key: Key) -> usize {
    (key.0.count_ones() + key.1.count_ones()) as usize
}

fn add_term<K: Ord + Copy>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

/// An element of `C*(K)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulCochain {
    pub field: Field,
    pub unit: Scalar,
    pub terms: BTreeMap<Key, Scalar>,
}

impl KoszulCochain {
    pub fn zero(field: Field) -> KoszulCochain {
        KoszulCochain {
            field,
            unit: field.zero(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(field: Field) -> KoszulCochain {
        KoszulCochain {
            unit: field.one(),
            ..KoszulCochain::zero(field)
        }
    }

    pub fn basis(field: Field, key: Key) -> Result<KoszulCochain> {
        check_key(key)?;
        let mut x = KoszulCochain::zero(field);
        x.terms.insert(key, field.one());
        Ok(x)
    }

    /// The cochain `c` on `K_U`, placed in the summand `U`.
    pub fn from_cochain(subset: FaceMask, c: &Cochain) -> Result<KoszulCochain> {
        if subset == 0 {
            return Err(Error::domain("summands are indexed by non-empty subsets"));
        }
        let mut x = KoszulCochain::zero(c.field);
        for (&f, v) in &c.terms {
            if f & !subset != 0 {
                return Err(Error::domain("cochain is not supported on the subset"));
            }
            add_term(&mut x.terms, (subset, f), v.clone());
        }
        Ok(x)
    }

    /// The component in summand `U` with reduced degree `r`.
    pub fn summand(&self, subset: FaceMask, r: isize) -> Cochain {
        let mut terms = SparseVec::new();
        for (&(i, s), v) in &self.terms {
            if i == subset && s.count_ones() as isize == r + 1 {
                terms.insert(s, v.clone());
            }
        }
        Cochain {
            field: self.field,
            degree: r,
            terms,
        }
    }

    /// Subsets carrying a nonzero component.
    pub fn supports(&self) -> Vec<FaceMask> {
        let mut out: Vec<FaceMask> = self.terms.keys().map(|k| k.0).collect();
        out.dedup();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero() && self.terms.is_empty()
    }

    /// Total degree, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|&k| key_degree(k));
        let first = if self.unit.is_zero() { degs.next()? } else { 0 };
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &KoszulCochain) -> Result<KoszulCochain> {
        if self.field != other.field {
            return Err(Error::domain("adding elements over different fields"));
        }
        let mut out = self.clone();
        out.unit = out.unit + other.unit.clone();
        for (&k, v) in &other.terms {
            add_term(&mut out.terms, k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &KoszulCochain) -> Result<KoszulCochain> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, a: &Scalar) -> KoszulCochain {
        let mut out = KoszulCochain::zero(self.field);
        out.unit = a * &self.unit;
        for (&k, v) in &self.terms {
            add_term(&mut out.terms, k, a * v);
        }
        out
    }

    /// `ā = (−1)^{|a|+1} a`, termwise in the total degree.
    pub fn bar(&self) -> KoszulCochain {
        KoszulCochain {
            field: self.field,
            unit: -self.unit.clone(),
            terms: self
                .terms
                .iter()
                .map(|(&k, v)| (k, v.clone().signed(key_degree(k) + 1)))
                .collect(),
        }
    }

    /// Checks every key against `K`.
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        for &(i, s) in self.terms.keys() {
            check_key((i, s))?;
            if i & !k.vertex_mask() != 0 || !k.contains(s) {
                return Err(Error::domain(format!("key ({i:#b}, {s:#b}) is not a basis element of C*(K)")));
            }
        }
        Ok(())
    }
}

fn check_key((i, s): Key) -> Result<()> {
    if i == 0 {
        return Err(Error::domain("summands are indexed by non-empty subsets"));
    }
    if s & !i != 0 {
        return Err(Error::domain("a face must lie inside its subset"));
    }
    Ok(())
}

pub fn dga_differential(k: &SimplicialComplex, x: &KoszulCochain) -> KoszulCochain {
    let mut out = KoszulCochain::zero(x.field);
    for (&(i, s), v) in &x.terms {
        let mut rest = i & !s;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            let t = s | (1u64 << j);
            if !k.contains(t) {
                continue;
            }
            let below = (s & ((1u64 << j) - 1)).count_ones() as usize;
            add_term(&mut out.terms, (i, t), v.clone().signed(below));
        }
    }
    out
}

/// Product of two basis keys: the resulting key and sign exponent, if nonzero.
pub fn key_product(k: &SimplicialComplex, a: Key, b: Key) -> Option<(Key, usize)> {
    let ((i, s), (j, t)) = (a, b);
    if i & j != 0 || !k.contains(s | t) {
        return None;
    }
    let e = i.count_ones() as usize * t.count_ones() as usize + inversions(i, j) + inversions(s, t);
    Some(((i | j, s | t), e))
}

pub fn dga_product(k: &SimplicialComplex, a: &KoszulCochain, b: &KoszulCochain) -> Result<KoszulCochain> {
    if a.field != b.field {
        return Err(Error::domain("multiplying elements over different fields"));
    }
    let field = a.field;
    let mut out = KoszulCochain::zero(field);
    out.unit = &a.unit * &b.unit;
    if !a.unit.is_zero() {
        for (&kb, vb) in &b.terms {
            add_term(&mut out.terms, kb, &a.unit * vb);
        }
    }
    if !b.unit.is_zero() {
        for (&ka, va) in &a.terms {
            add_term(&mut out.terms, ka, va * &b.unit);
        }
    }
    for (&ka, va) in &a.terms {
        for (&kb, vb) in &b.terms {
            if let Some((key, e)) = key_product(k, ka, kb) {
                add_term(&mut out.terms, key, (va * vb).signed(e));
            }
        }
    }
    Ok(out)
}

/// A monomial `v_σ x_τ` of `R(K)`.
pub type Monomial = (FaceMask, FaceMask);

pub fn monomial_degree(m: Monomial) -> usize {
    2 * m.0.count_ones() as usize + m.1.count_ones() as usize
}

/// An element of `R(K) = K(K)/(v_i², v_i x_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RKoszulElement {
    pub field: Field,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl RKoszulElement {
    pub fn zero(field: Field) -> RKoszulElement {
        RKoszulElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> RKoszulElement {
        RKoszulElement::monomial(field, 0, 0)
    }

    pub fn monomial(field: Field, sigma: FaceMask, tau: FaceMask) -> RKoszulElement {
        let mut x = RKoszulElement::zero(field);
        if sigma & tau == 0 {
            x.terms.insert((sigma, tau), field.one());
        }
        x
    }

    pub fn v(field: Field, i: usize) -> RKoszulElement {
        RKoszulElement::monomial(field, 1 << i, 0)
    }

    pub fn x(field: Field, i: usize) -> RKoszulElement {
        RKoszulElement::monomial(field, 0, 1 << i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RKoszulElement) -> RKoszulElement {
        let mut out = self.clone();
        for (&k, v) in &other.terms {
            add_term(&mut out.terms, k, v.clone());
        }
        out
    }

    pub fn scale(&self, a: &Scalar) -> RKoszulElement {
        let mut out = RKoszulElement::zero(self.field);
        for (&k, v) in &self.terms {
            add_term(&mut out.terms, k, a * v);
        }
        out
    }
}

/// `d v_i = 0`, `d x_i = v_i`, extended as a derivation; faces outside `K` vanish.
pub fn r_differential(k: &SimplicialComplex, x: &RKoszulElement) -> RKoszulElement {
    let mut out = RKoszulElement::zero(x.field);
    for (&(s, t), c) in &x.terms {
        for (pos, m) in mask_indices(t).into_iter().enumerate() {
            let bit = 1u64 << m;
            let s2 = s | bit;
            if !k.contains(s2) {
                continue;
            }
            add_term(&mut out.terms, (s2, t & !bit), c.clone().signed(pos));
        }
    }
    out
}

pub fn r_product(k: &SimplicialComplex, a: &RKoszulElement, b: &RKoszulElement) -> RKoszulElement {
    let mut out = RKoszulElement::zero(a.field);
    for (&(s, t), ca) in &a.terms {
        for (&(s2, t2), cb) in &b.terms {
            if s & s2 != 0 || t & t2 != 0 || s & t2 != 0 || s2 & t != 0 || !k.contains(s | s2) {
                continue;
            }
            add_term(&mut out.terms, (s | s2, t | t2), (ca * cb).signed(inversions(t, t2)));
        }
    }
    out
}

fn phi_sign(i: FaceMask, s: FaceMask) -> usize {
    let c = s.count_ones() as usize;
    c * c.saturating_sub(1) / 2 + inversions(s, i & !s)
}

pub fn phi(x: &KoszulCochain) -> RKoszulElement {
    let mut out = RKoszulElement::zero(x.field);
    add_term(&mut out.terms, (0, 0), x.unit.clone());
    for (&(i, s), v) in &x.terms {
        add_term(&mut out.terms, (s, i & !s), v.clone().signed(phi_sign(i, s)));
    }
    out
}

pub fn phi_inverse(k: &SimplicialComplex, y: &RKoszulElement) -> Result<KoszulCochain> {
    let mut out = KoszulCochain::zero(y.field);
    for (&(s, t), v) in &y.terms {
        if s & t != 0 || !k.contains(s) {
            return Err(Error::domain("monomial is not a basis element of R(K)"));
        }
        if s | t == 0 {
            out.unit = out.unit + v.clone();
        } else {
            let i = s | t;
            add_term(&mut out.terms, (i, s), v.clone().signed(phi_sign(i, s)));
        }
    }
    Ok(out)
}

/// All basis keys of `C*(K)` (the unit excluded), ordered by `(I, σ)`.
pub fn koszul_basis(k: &SimplicialComplex) -> Vec<Key> {
    let full = k.vertex_mask();
    let mut out = Vec::new();
    let mut i = full;
    let mut subsets = Vec::new();
    while i != 0 {
        subsets.push(i);
        i = (i - 1) & full;
    }
    subsets.sort_unstable();
    for i in subsets {
        for s in k.all_faces() {
            if s & !i == 0 {
                out.push((i, s));
            }
        }
    }
    out
}

/// All monomials of `R(K)`, `1` included.
pub fn r_basis(k: &SimplicialComplex) -> Vec<Monomial> {
    let full = k.vertex_mask();
    let mut out = Vec::new();
    for s in k.all_faces() {
        let rest = full & !s;
        let mut t = rest;
        loop {
            out.push((s, t));
            if t == 0 {
                break;
            }
            t = (t - 1) & rest;
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiIsoReport {
    pub koszul_basis_size: usize,
    pub r_basis_size: usize,
    pub bijective: bool,
    pub degree_preserving: bool,
    pub differential_failures: usize,
    pub product_failures: usize,
    pub pairs_checked: usize,
}

impl PhiIsoReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.degree_preserving && self.differential_failures == 0 && self.product_failures == 0
    }
}

/// Exhaustive check that `φ` is a dga isomorphism on basis elements.
pub fn verify_phi_iso(k: &SimplicialComplex, field: Field) -> Result<PhiIsoReport> {
    if k.n_vertices() > 8 {
        return Err(Error::domain("φ verification is limited to 8 vertices"));
    }
    let mut basis: Vec<KoszulCochain> = vec![KoszulCochain::unit(field)];
    for key in koszul_basis(k) {
        basis.push(KoszulCochain::basis(field, key)?);
    }
    let rb = r_basis(k);
    let mut images = std::collections::BTreeSet::new();
    let mut degree_preserving = true;
    let mut differential_failures = 0;
    for b in &basis {
        let y = phi(b);
        if y.terms.len() != 1 {
            degree_preserving = false;
            continue;
        }
        let (&m, _) = y.terms.iter().next().expect("one term");
        images.insert(m);
        if Some(monomial_degree(m)) != b.degree() {
            degree_preserving = false;
        }
        if phi_inverse(k, &y)? != *b {
            degree_preserving = false;
        }
        if phi(&dga_differential(k, b)) != r_differential(k, &y) {
            differential_failures += 1;
        }
    }
    let bijective = images.len() == basis.len() && images.iter().copied().eq(rb.iter().copied());
    let imgs: Vec<RKoszulElement> = basis.iter().map(phi).collect();
    let failures: usize = (0..basis.len())
        .into_par_iter()
        .map(|x| {
            let mut fails = 0;
            for y in 0..basis.len() {
                let lhs = phi(&dga_product(k, &basis[x], &basis[y]).expect("same field"));
                if lhs != r_product(k, &imgs[x], &imgs[y]) {
                    fails += 1;
                }
            }
            fails
        })
        .sum();
    Ok(PhiIsoReport {
        koszul_basis_size: basis.len(),
        r_basis_size: rb.len(),
        bijective,
        degree_preserving,
        differential_failures,
        product_failures: failures,
        pairs_checked: basis.len() * basis.len(),
    })
}

/// A basis class of `H̃^r(K_I) ⊂ H^{r+|I|+1}(C*(K))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassRef {
    pub subset: FaceMask,
    pub reduced_degree: isize,
    pub index: usize,
}

impl ClassRef {
    pub fn total_degree(&self) -> usize {
        (self.reduced_degree + 1) as usize + self.subset.count_ones() as usize
    }
}

#[derive(Debug, Clone)]
pub struct HochsterEntry {
    pub subset: FaceMask,
    pub reduced_degree: isize,
    pub total_degree: usize,
    pub rank: usize,
}

/// `H^p(C*(K)) = ⨁_{∅≠I} H̃^{p−|I|−1}(K_I)` with explicit representatives.
#[derive(Debug, Clone)]
pub struct HochsterTable {
    pub field: Field,
    spaces: BTreeMap<FaceMask, (FaceSpace, HomologyBasis)>,
}

impl HochsterTable {
    pub fn subsets(&self) -> impl Iterator<Item = FaceMask> + '_ {
        self.spaces.keys().copied()
    }

    pub fn space(&self, subset: FaceMask) -> Option<&FaceSpace> {
        self.spaces.get(&subset).map(|(s, _)| s)
    }

    pub fn cohomology(&self, subset: FaceMask) -> Option<&HomologyBasis> {
        self.spaces.get(&subset).map(|(_, h)| h)
    }

    /// Nonzero entries, ordered by total degree, then subset size, then mask.
    pub fn entries(&self) -> Vec<HochsterEntry> {
        let mut out = Vec::new();
        for (&subset, (space, h)) in &self.spaces {
            for r in -1..=space.dim() {
                let rank = h.rank(r);
                if rank > 0 {
                    out.push(HochsterEntry {
                        subset,
                        reduced_degree: r,
                        total_degree: (r + 1) as usize + subset.count_ones() as usize,
                        rank,
                    });
                }
            }
        }
        out.sort_by_key(|e| (e.total_degree, e.subset.count_ones(), e.subset, e.reduced_degree));
        out
    }

    /// Ranks by total degree, including the unit in degree 0.
    pub fn poincare_series(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        out.insert(0, 1);
        for e in self.entries() {
            *out.entry(e.total_degree).or_insert(0) += e.rank;
        }
        out
    }

    pub fn classes(&self, subset: FaceMask) -> Vec<ClassRef> {
        let Some((space, h)) = self.spaces.get(&subset) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for r in -1..=space.dim() {
            for index in 0..h.rank(r) {
                out.push(ClassRef {
                    subset,
                    reduced_degree: r,
                    index,
                });
            }
        }
        out
    }

    /// Positive-degree basis classes of total degree `t`, in table order.
    pub fn classes_of_degree(&self, t: usize) -> Vec<ClassRef> {
        let mut out: Vec<ClassRef> = self
            .spaces
            .keys()
            .flat_map(|&s| self.classes(s))
            .filter(|c| c.total_degree() == t)
            .collect();
        out.sort_by_key(|c| (c.subset.count_ones(), c.subset, c.reduced_degree, c.index));
        out
    }

    /// Representative cocycle on `K_I`, in ambient face indexing.
    pub fn representative(&self, c: ClassRef) -> Result<Cochain> {
        let (space, h) = self
            .spaces
            .get(&c.subset)
            .ok_or_else(|| Error::domain("unknown subset"))?;
        let g = h
            .group(c.reduced_degree)
            .filter(|g| c.index < g.rank())
            .ok_or_else(|| Error::domain("class index out of range"))?;
        Ok(Cochain {
            field: self.field,
            degree: c.reduced_degree,
            terms: space.from_dense(c.reduced_degree, &g.representatives()[c.index]),
        })
    }

    pub fn koszul_representative(&self, c: ClassRef) -> Result<KoszulCochain> {
        KoszulCochain::from_cochain(c.subset, &self.representative(c)?)
    }

    /// Class coordinates of a cocycle on `K_I`.
    pub fn summand_coordinates(&self, subset: FaceMask, c: &Cochain) -> Result<Vec<Scalar>> {
        let (space, h) = self
            .spaces
            .get(&subset)
            .ok_or_else(|| Error::domain("unknown subset"))?;
        let Some(g) = h.group(c.degree) else {
            return Ok(Vec::new());
        };
        g.coordinates(&space.to_dense(c.degree, &c.terms, self.field)?)
    }

    /// Coordinates of a homogeneous cocycle of total degree `t` against
    /// [`classes_of_degree`](Self::classes_of_degree)`(t)` (the unit first when `t = 0`).
    pub fn coordinates(&self, x: &KoszulCochain, t: usize) -> Result<Vec<Scalar>> {
        let mut out = Vec::new();
        if t == 0 {
            out.push(x.unit.clone());
        }
        let classes = self.classes_of_degree(t);
        let mut cache: BTreeMap<(FaceMask, isize), Vec<Scalar>> = BTreeMap::new();
        for c in &classes {
            let key = (c.subset, c.reduced_degree);
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(key) {
                let comp = x.summand(c.subset, c.reduced_degree);
                e.insert(self.summand_coordinates(c.subset, &comp)?);
            }
            out.push(cache[&key][c.index].clone());
        }
        Ok(out)
    }

    /// `x = δy` in `C*(K)`, solved summand by summand.
    pub fn express_as_coboundary(&self, x: &KoszulCochain) -> Result<Option<KoszulCochain>> {
        if !x.unit.is_zero() {
            return Ok(None);
        }
        let mut out = KoszulCochain::zero(self.field);
        let mut groups: BTreeMap<(FaceMask, isize), SparseVec> = BTreeMap::new();
        for (&(i, s), v) in &x.terms {
            groups
                .entry((i, s.count_ones() as isize - 1))
                .or_default()
                .insert(s, v.clone());
        }
        for ((i, r), terms) in groups {
            let space = self.space(i).ok_or_else(|| Error::domain("unknown subset"))?;
            let c = Cochain {
                field: self.field,
                degree: r,
                terms,
            };
            match express_as_coboundary(space, &c)? {
                Some(y) => {
                    for (f, v) in y.terms {
                        add_term(&mut out.terms, (i, f), v);
                    }
                }
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }
}

/// All non-empty vertex subsets, by size then mask.
pub fn nonempty_subsets(full: FaceMask) -> Vec<FaceMask> {
    let mut out = Vec::new();
    let mut i = full;
    while i != 0 {
        out.push(i);
        i = (i - 1) & full;
    }
    out.sort_unstable_by_key(|&m| (m.count_ones(), m));
    out
}

pub fn hochster_cohomology(k: &SimplicialComplex, field: Field) -> Result<HochsterTable> {
    if k.n_vertices() > 20 {
        return Err(Error::domain("Hochster tables are limited to 20 vertices"));
    }
    let subsets = nonempty_subsets(k.vertex_mask());
    let spaces: Vec<(FaceMask, (FaceSpace, HomologyBasis))> = subsets
        .par_iter()
        .map(|&s| {
            let space = FaceSpace::new(k, s).expect("subset of the vertex set");
            let h = cohomology_of(&space, field, Flavor::Reduced);
            (s, (space, h))
        })
        .collect();
    Ok(HochsterTable {
        field,
        spaces: spaces.into_iter().collect(),
    })
}

/// Cohomology ranks of `C*(K)` per total degree, computed from the total
/// differential without using the subset grading.
pub fn total_cohomology_ranks(k: &SimplicialComplex, field: Field) -> BTreeMap<usize, usize> {
    let keys = koszul_basis(k);
    let max = keys.iter().map(|&x| key_degree(x)).max().unwrap_or(0);
    let mut by_deg: Vec<Vec<Key>> = vec![Vec::new(); max + 2];
    for key in keys {
        by_deg[key_degree(key)].push(key);
    }
    let pos: Vec<BTreeMap<Key, usize>> = by_deg
        .iter()
        .map(|ks| ks.iter().enumerate().map(|(i, &x)| (x, i)).collect())
        .collect();
    let ranks: Vec<usize> = (0..=max)
        .into_par_iter()
        .map(|t| {
            let mut m = Matrix::zeros(field, by_deg[t + 1].len(), by_deg[t].len());
            for (c, &key) in by_deg[t].iter().enumerate() {
                let x = KoszulCochain::basis(field, key).expect("valid key");
                for (kk, v) in dga_differential(k, &x).terms {
                    m.set(pos[t + 1][&kk], c, v);
                }
            }
            m.rank()
        })
        .collect();
    let mut out = BTreeMap::new();
    out.insert(0, 1);
    for t in 1..=max {
        let dim = by_deg[t].len();
        let b = dim - ranks[t] - ranks[t - 1];
        if b > 0 {
            out.insert(t, b);
        }
    }
    out
}

/// A nonzero product of two basis classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub left: ClassRef,
    pub right: ClassRef,
    /// Class coordinates of the product in `H̃^*(K_{I∪J})`.
    pub product: Vec<Scalar>,
}

#[derive(Debug, Clone)]
pub struct WeakGolodReport {
    pub field: Field,
    pub weakly_golod: bool,
    pub witness: Option<ProductWitness>,
    pub pairs_checked: usize,
}

/// Product class of two basis classes with disjoint supports, in the
/// summand of the union.
pub fn product_class(k: &SimplicialComplex, table: &HochsterTable, a: ClassRef, b: ClassRef) -> Result<Vec<Scalar>> {
    let x = table.koszul_representative(a)?;
    let y = table.koszul_representative(b)?;
    let xy = dga_product(k, &x, &y)?;
    let u = a.subset | b.subset;
    let r = a.reduced_degree + b.reduced_degree + 1;
    if a.subset & b.subset != 0 {
        return Ok(Vec::new());
    }
    table.summand_coordinates(u, &xy.summand(u, r))
}

/// Tests every product of basis classes on disjoint supports.
pub fn weak_golod_check(k: &SimplicialComplex, table: &HochsterTable) -> Result<WeakGolodReport> {
    let unions = nonempty_subsets(k.vertex_mask());
    let results: Vec<Result<(usize, Option<ProductWitness>)>> = unions
        .par_iter()
        .map(|&u| {
            let low = u & u.wrapping_neg();
            let mut checked = 0;
            let mut parts: Vec<FaceMask> = Vec::new();
            let mut i = u;
            while i != 0 {
                if i & low != 0 && i != u {
                    parts.push(i);
                }
                i = (i - 1) & u;
            }
            parts.sort_unstable_by_key(|&m| (m.count_ones(), m));
            for i in parts {
                let j = u & !i;
                let (ci, cj) = (table.classes(i), table.classes(j));
                for &a in &ci {
                    for &b in &cj {
                        checked += 1;
                        let coords = product_class(k, table, a, b)?;
                        if coords.iter().any(|c| !c.is_zero()) {
                            return Ok((checked, Some(ProductWitness { left: a, right: b, product: coords })));
                        }
                    }
                }
            }
            Ok((checked, None))
        })
        .collect();
    let mut pairs_checked = 0;
    let mut witness = None;
    for r in results {
        let (n, w) = r?;
        pairs_checked += n;
        if witness.is_none() {
            witness = w;
        }
    }
    Ok(WeakGolodReport {
        field: table.field,
        weakly_golod: witness.is_none(),
        witness,
        pairs_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    fn boundary_triangle() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap()
    }

    fn two_points() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1], &[2]]).unwrap()
    }

    #[test]
    fn differential_of_point_generator() {
        let k = SimplicialComplex::from_int_facets(&[&[1]]).unwrap();
        let x = KoszulCochain::basis(Field::Q, (1, 0)).unwrap();
        let dx = dga_differential(&k, &x);
        assert_eq!(dx, KoszulCochain::basis(Field::Q, (1, 1)).unwrap());
        assert!(dga_differential(&k, &KoszulCochain::unit(Field::Q)).is_zero());
    }

    #[test]
    fn product_on_cycle() {
        let k = c4();
        let a = KoszulCochain::basis(Field::Q, (0b0101, 0b0001)).unwrap();
        let b = KoszulCochain::basis(Field::Q, (0b1010, 0b0010)).unwrap();
        let ab = dga_product(&k, &a, &b).unwrap();
        assert_eq!(ab.terms.len(), 1);
        assert!(ab.terms.contains_key(&(0b1111, 0b0011)));
        let overlap = KoszulCochain::basis(Field::Q, (0b0011, 0b0001)).unwrap();
        assert!(dga_product(&k, &a, &overlap).unwrap().is_zero());
        assert_eq!(dga_product(&k, &KoszulCochain::unit(Field::Q), &a).unwrap(), a);
    }

    #[test]
    fn phi_examples() {
        let x = KoszulCochain::basis(Field::Q, (0b100, 0)).unwrap();
        assert_eq!(phi(&x), RKoszulElement::x(Field::Q, 2));
        assert_eq!(phi(&KoszulCochain::unit(Field::Q)), RKoszulElement::one(Field::Q));
    }

    #[test]
    fn r_algebra_rules() {
        let k = SimplicialComplex::from_int_facets(&[&[1, 2]]).unwrap();
        let f = Field::Q;
        let xij = r_product(&k, &RKoszulElement::x(f, 0), &RKoszulElement::x(f, 1));
        let expected = r_product(&k, &RKoszulElement::v(f, 0), &RKoszulElement::x(f, 1))
            .add(&r_product(&k, &RKoszulElement::x(f, 0), &RKoszulElement::v(f, 1)).scale(&f.from_i64(-1)));
        assert_eq!(r_differential(&k, &xij), expected);
        assert!(r_product(&k, &RKoszulElement::x(f, 0), &RKoszulElement::x(f, 0)).is_zero());
        assert!(r_product(&k, &RKoszulElement::v(f, 0), &RKoszulElement::x(f, 0)).is_zero());
    }

    #[test]
    fn phi_iso_small() {
        for k in [boundary_triangle(), two_points(), c4()] {
            for field in [Field::F2, Field::Q] {
                let rep = verify_phi_iso(&k, field).unwrap();
                assert!(rep.passed(), "{rep:?}");
                assert_eq!(rep.koszul_basis_size, rep.r_basis_size);
            }
        }
        let d3 = SimplicialComplex::from_int_facets(&[&[1, 2, 3, 4]]).unwrap();
        assert!(verify_phi_iso(&d3, Field::Q).unwrap().passed());
    }

    #[test]
    fn hochster_fixtures() {
        let t = hochster_cohomology(&two_points(), Field::Q).unwrap();
        let e = t.entries();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].subset, e[0].total_degree, e[0].rank), (0b11, 3, 1));
        let t = hochster_cohomology(&boundary_triangle(), Field::Q).unwrap();
        let e = t.entries();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].subset, e[0].total_degree, e[0].rank), (0b111, 5, 1));
        let d3 = SimplicialComplex::from_int_facets(&[&[1, 2, 3, 4]]).unwrap();
        assert!(hochster_cohomology(&d3, Field::F2).unwrap().entries().is_empty());
    }

    #[test]
    fn two_pipelines_agree() {
        for k in [c4(), boundary_triangle(), two_points()] {
            for field in [Field::F2, Field::Q] {
                let t = hochster_cohomology(&k, field).unwrap();
                assert_eq!(t.poincare_series(), total_cohomology_ranks(&k, field));
            }
        }
    }

    #[test]
    fn weak_golod_verdicts() {
        let k = c4();
        let t = hochster_cohomology(&k, Field::Q).unwrap();
        let rep = weak_golod_check(&k, &t).unwrap();
        assert!(!rep.weakly_golod);
        let w = rep.witness.unwrap();
        assert_eq!((w.left.subset, w.right.subset), (0b0101, 0b1010));
        for k in [boundary_triangle(), two_points()] {
            let t = hochster_cohomology(&k, Field::F2).unwrap();
            assert!(weak_golod_check(&k, &t).unwrap().weakly_golod);
        }
    }
}
