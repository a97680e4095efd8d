//! Simplicial (co)chains, boundary matrices and (co)homology with explicit
//! bases, for a complex or for a full subcomplex addressed by a vertex mask.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Factorization, Matrix};
use crate::maps::SimplicialMap;
use crate::simplicial::{lex_cmp, mask_indices, FaceMask, SimplicialComplex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Reduced,
    Unreduced,
}

impl Flavor {
    pub fn is_reduced(self) -> bool {
        self == Flavor::Reduced
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Reduced => "reduced",
            Flavor::Unreduced => "unreduced",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "reduced" => Ok(Flavor::Reduced),
            "unreduced" => Ok(Flavor::Unreduced),
            _ => Err(Error::domain(format!("unknown flavor {s:?}"))),
        }
    }
}

/// A sparse linear combination of faces, keyed by face mask.
pub type SparseVec = BTreeMap<FaceMask, Scalar>;

pub fn sparse_add(v: &mut SparseVec, key: FaceMask, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match v.get_mut(&key) {
        Some(x) => {
            *x += &c;
            if x.is_zero() {
                v.remove(&key);
            }
        }
        None => {
            v.insert(key, c);
        }
    }
}

pub fn sparse_axpy(v: &mut SparseVec, a: &Scalar, w: &SparseVec) {
    for (&k, c) in w {
        sparse_add(v, k, a * c);
    }
}

/// Sparse boundary of one face: `Σ_j (-1)^j (face ∖ v_j)`, with `∂{v} = ∅`
/// in the reduced flavor.
pub fn face_boundary(face: FaceMask, field: Field, flavor: Flavor) -> SparseVec {
    let mut out = SparseVec::new();
    if face.count_ones() == 1 && !flavor.is_reduced() {
        return out;
    }
    for (j, v) in mask_indices(face).into_iter().enumerate() {
        sparse_add(&mut out, face & !(1u64 << v), field.sign(j));
    }
    out
}

pub fn chain_boundary(chain: &SparseVec, field: Field, flavor: Flavor) -> SparseVec {
    let mut out = SparseVec::new();
    for (&f, c) in chain {
        sparse_axpy(&mut out, c, &face_boundary(f, field, flavor));
    }
    out
}

/// The faces of `K` inside a vertex subset, graded by cardinality in
/// lexicographic order. Faces keep the ambient vertex indexing.
#[derive(Debug, Clone)]
pub struct FaceSpace {
    subset: FaceMask,
    n_vertices: usize,
    by_card: Vec<Vec<FaceMask>>,
    position: HashMap<FaceMask, usize>,
}

impl FaceSpace {
    pub fn new(k: &SimplicialComplex, subset: FaceMask) -> Result<FaceSpace> {
        if subset & !k.vertex_mask() != 0 {
            return Err(Error::domain("subset is not contained in the vertex set"));
        }
        let mut by_card: Vec<Vec<FaceMask>> = Vec::new();
        for c in 0..=k.n_vertices() {
            let faces: Vec<FaceMask> = k
                .faces_of_card(c)
                .iter()
                .copied()
                .filter(|f| f & !subset == 0)
                .collect();
            if faces.is_empty() {
                break;
            }
            by_card.push(faces);
        }
        let mut position = HashMap::new();
        for list in &mut by_card {
            list.sort_unstable_by(|a, b| lex_cmp(*a, *b));
            for (i, &f) in list.iter().enumerate() {
                position.insert(f, i);
            }
        }
        Ok(FaceSpace {
            subset,
            n_vertices: k.n_vertices(),
            by_card,
            position,
        })
    }

    pub fn full(k: &SimplicialComplex) -> FaceSpace {
        FaceSpace::new(k, k.vertex_mask()).expect("full vertex set")
    }

    pub fn subset(&self) -> FaceMask {
        self.subset
    }

    pub fn n_ambient_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Top dimension (−1 for the empty vertex set).
    pub fn dim(&self) -> isize {
        self.by_card.len() as isize - 2
    }

    pub fn contains(&self, f: FaceMask) -> bool {
        self.position.contains_key(&f)
    }

    /// Faces of dimension `d`; dimension −1 holds the empty face.
    pub fn faces(&self, d: isize) -> &[FaceMask] {
        let c = d + 1;
        if c < 0 || c as usize >= self.by_card.len() {
            return &[];
        }
        &self.by_card[c as usize]
    }

    pub fn position(&self, f: FaceMask) -> Option<usize> {
        self.position.get(&f).copied()
    }

    /// Rank of `C_d` in the given flavor.
    pub fn chain_rank(&self, d: isize, flavor: Flavor) -> usize {
        if d == -1 && !flavor.is_reduced() {
            return 0;
        }
        self.faces(d).len()
    }

    /// `∂_d: C_d -> C_{d-1}` in the lexicographic bases.
    pub fn boundary_matrix(&self, d: isize, field: Field, flavor: Flavor) -> Matrix {
        let rows = self.chain_rank(d - 1, flavor);
        let cols = self.chain_rank(d, flavor);
        let mut m = Matrix::zeros(field, rows, cols);
        if rows == 0 || cols == 0 {
            return m;
        }
        for (c, &f) in self.faces(d).iter().enumerate() {
            for (g, s) in face_boundary(f, field, flavor) {
                let r = self.position(g).expect("boundary face");
                m.set(r, c, s);
            }
        }
        m
    }

    /// `δ^d: C^d -> C^{d+1}`, the transpose of `∂_{d+1}`.
    pub fn coboundary_matrix(&self, d: isize, field: Field, flavor: Flavor) -> Matrix {
        self.boundary_matrix(d + 1, field, flavor).transpose()
    }

    pub fn to_dense(&self, d: isize, v: &SparseVec, field: Field) -> Result<Vec<Scalar>> {
        let mut out = vec![field.zero(); self.faces(d).len()];
        for (&f, c) in v {
            let i = self
                .position(f)
                .filter(|_| f.count_ones() as isize == d + 1)
                .ok_or_else(|| Error::domain(format!("face {f:#b} is not a {d}-face of the space")))?;
            out[i] = c.clone();
        }
        Ok(out)
    }

    pub fn from_dense(&self, d: isize, v: &[Scalar]) -> SparseVec {
        let mut out = SparseVec::new();
        for (&f, c) in self.faces(d).iter().zip(v) {
            if !c.is_zero() {
                out.insert(f, c.clone());
            }
        }
        out
    }

    /// Sparse reduced coboundary: `σ* ↦ Σ_{j ∉ σ} (-1)^{#{u ∈ σ : u < j}} (σ ∪ j)*`.
    pub fn coboundary(&self, a: &Cochain) -> Cochain {
        let mut out = SparseVec::new();
        for (&f, c) in &a.terms {
            let mut rest = self.subset & !f;
            while rest != 0 {
                let j = rest.trailing_zeros();
                rest &= rest - 1;
                let g = f | (1u64 << j);
                if !self.contains(g) {
                    continue;
                }
                let below = (f & ((1u64 << j) - 1)).count_ones() as usize;
                sparse_add(&mut out, g, c.clone().signed(below));
            }
        }
        Cochain {
            field: a.field,
            degree: a.degree + 1,
            terms: out,
        }
    }
}

/// A homogeneous reduced cochain: a sparse function on faces of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub field: Field,
    /// Dimension of the faces it is supported on (−1 for the empty face).
    pub degree: isize,
    pub terms: SparseVec,
}

impl Cochain {
    pub fn zero(field: Field, degree: isize) -> Cochain {
        Cochain {
            field,
            degree,
            terms: SparseVec::new(),
        }
    }

    pub fn from_terms(field: Field, degree: isize, terms: SparseVec) -> Result<Cochain> {
        if let Some(f) = terms.keys().find(|f| f.count_ones() as isize != degree + 1) {
            return Err(Error::domain(format!("face {f:#b} does not have dimension {degree}")));
        }
        Ok(Cochain {
            field,
            degree,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, f: FaceMask) -> Scalar {
        self.terms.get(&f).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        sparse_axpy(&mut terms, &self.field.one(), &other.terms);
        Ok(Cochain { terms, ..self.clone() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, a: &Scalar) -> Cochain {
        let mut terms = SparseVec::new();
        sparse_axpy(&mut terms, a, &self.terms);
        Cochain { terms, ..self.clone() }
    }

    /// Restriction to the faces inside a vertex subset.
    pub fn restrict(&self, subset: FaceMask) -> Cochain {
        Cochain {
            terms: self
                .terms
                .iter()
                .filter(|(f, _)| *f & !subset == 0)
                .map(|(f, c)| (*f, c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.field != other.field || self.degree != other.degree {
            return Err(Error::domain(format!(
                "cannot add a degree {} cochain over {} to a degree {} cochain over {}",
                other.degree, other.field, self.degree, self.field
            )));
        }
        Ok(())
    }
}

/// `ker(out) / im(inc)` with explicit representatives and a coordinate projection.
#[derive(Debug, Clone)]
pub struct Subquotient {
    field: Field,
    ambient: usize,
    n_image: usize,
    reps: Vec<Vec<Scalar>>,
    // factorization of [inc | reps]
    joint: Factorization,
    image: Factorization,
}

impl Subquotient {
    /// `inc: A -> V` (boundaries), `out: V -> B` (cycles are its kernel).
    pub fn new(field: Field, ambient: usize, inc: &Matrix, out: &Matrix) -> Subquotient {
        let cycles = if out.rows() == 0 {
            (0..ambient)
                .map(|i| {
                    let mut e = vec![field.zero(); ambient];
                    e[i] = field.one();
                    e
                })
                .collect()
        } else {
            out.nullspace()
        };
        let mut cols: Vec<Vec<Scalar>> = (0..inc.cols()).map(|c| inc.column(c)).collect();
        let n_image = cols.len();
        cols.extend(cycles.iter().cloned());
        let all = Matrix::from_columns(field, ambient, &cols);
        let pivots = all.rref().pivots;
        let reps: Vec<Vec<Scalar>> = pivots
            .iter()
            .filter(|&&p| p >= n_image)
            .map(|&p| cycles[p - n_image].clone())
            .collect();
        let mut joint_cols: Vec<Vec<Scalar>> = cols[..n_image].to_vec();
        joint_cols.extend(reps.iter().cloned());
        let joint = Matrix::from_columns(field, ambient, &joint_cols).factorize();
        let image = inc.factorize();
        Subquotient {
            field,
            ambient,
            n_image,
            reps,
            joint,
            image,
        }
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    /// Class coordinates of a cycle; domain error if `z` is not a cycle.
    pub fn coordinates(&self, z: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.ambient == 0 {
            return Ok(Vec::new());
        }
        let x = self
            .joint
            .solve(z)?
            .ok_or_else(|| Error::domain("vector is not a cycle"))?;
        Ok(x[self.n_image..].to_vec())
    }

    pub fn is_boundary(&self, z: &[Scalar]) -> Result<bool> {
        Ok(self.preimage(z)?.is_some())
    }

    /// Some `x` with `inc·x = z`, the first one in pivot order.
    pub fn preimage(&self, z: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if z.len() != self.ambient {
            return Err(Error::domain("vector has the wrong length"));
        }
        if self.n_image == 0 || self.ambient == 0 {
            return Ok(if z.iter().all(|c| c.is_zero()) {
                Some(vec![self.field.zero(); self.n_image])
            } else {
                None
            });
        }
        self.image.solve(z)
    }
}

/// Homology or cohomology of a face space, degree by degree.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    pub field: Field,
    pub flavor: Flavor,
    pub cohomological: bool,
    /// Entry `k` is the group in dimension `k − 1`.
    groups: Vec<Subquotient>,
}

impl HomologyBasis {
    pub fn group(&self, d: isize) -> Option<&Subquotient> {
        if d < -1 {
            return None;
        }
        self.groups.get((d + 1) as usize)
    }

    pub fn rank(&self, d: isize) -> usize {
        self.group(d).map_or(0, |g| g.rank())
    }

    /// Betti numbers in dimensions `0..=dim`.
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().skip(1).map(|g| g.rank()).collect()
    }

    /// Total rank including dimension −1.
    pub fn total_rank(&self) -> usize {
        self.groups.iter().map(|g| g.rank()).sum()
    }

    pub fn max_dim(&self) -> isize {
        self.groups.len() as isize - 2
    }
}

pub fn homology_of(space: &FaceSpace, field: Field, flavor: Flavor) -> HomologyBasis {
    let groups = (-1..=space.dim())
        .map(|d| {
            let inc = space.boundary_matrix(d + 1, field, flavor);
            let out = space.boundary_matrix(d, field, flavor);
            Subquotient::new(field, space.chain_rank(d, flavor), &inc, &out)
        })
        .collect();
    HomologyBasis {
        field,
        flavor,
        cohomological: false,
        groups,
    }
}

pub fn cohomology_of(space: &FaceSpace, field: Field, flavor: Flavor) -> HomologyBasis {
    let groups = (-1..=space.dim())
        .map(|d| {
            let inc = space.coboundary_matrix(d - 1, field, flavor);
            let out = space.coboundary_matrix(d, field, flavor);
            Subquotient::new(field, space.chain_rank(d, flavor), &inc, &out)
        })
        .collect();
    HomologyBasis {
        field,
        flavor,
        cohomological: true,
        groups,
    }
}

pub fn boundary_matrix(k: &SimplicialComplex, d: isize, field: Field, flavor: Flavor) -> Matrix {
    FaceSpace::full(k).boundary_matrix(d, field, flavor)
}

pub fn homology(k: &SimplicialComplex, field: Field, flavor: Flavor) -> HomologyBasis {
    homology_of(&FaceSpace::full(k), field, flavor)
}

pub fn cohomology(k: &SimplicialComplex, field: Field, flavor: Flavor) -> HomologyBasis {
    cohomology_of(&FaceSpace::full(k), field, flavor)
}

/// Chain-level pushforward `C_d(source) -> C_d(target)`; degenerate images go to 0.
pub fn chain_map_matrix(f: &SimplicialMap, d: isize, field: Field, flavor: Flavor) -> Matrix {
    let src = FaceSpace::full(f.source());
    let tgt = FaceSpace::full(f.target());
    let mut m = Matrix::zeros(field, tgt.chain_rank(d, flavor), src.chain_rank(d, flavor));
    if m.rows() == 0 || m.cols() == 0 {
        return m;
    }
    for (c, &face) in src.faces(d).iter().enumerate() {
        if let Some((img, parity)) = f.push_face(face) {
            let r = tgt.position(img).expect("image is a face");
            m.set(r, c, field.sign(parity));
        }
    }
    m
}

/// Matrix of `f_*: H_d(source) -> H_d(target)` in the representative bases.
pub fn induced_map(f: &SimplicialMap, field: Field, d: isize, flavor: Flavor) -> Result<Matrix> {
    let hs = homology(f.source(), field, flavor);
    let ht = homology(f.target(), field, flavor);
    induced_with(f, &hs, &ht, d)
}

fn induced_with(f: &SimplicialMap, hs: &HomologyBasis, ht: &HomologyBasis, d: isize) -> Result<Matrix> {
    let field = hs.field;
    let chain = chain_map_matrix(f, d, field, hs.flavor);
    let rs = hs.rank(d);
    let rt = ht.rank(d);
    let mut out = Matrix::zeros(field, rt, rs);
    let (Some(gs), Some(gt)) = (hs.group(d), ht.group(d)) else {
        return Ok(out);
    };
    for (c, rep) in gs.representatives().iter().enumerate() {
        let image = chain.mul_vec(rep)?;
        let coords = gt.coordinates(&image)?;
        for (r, x) in coords.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Ok(out)
}

/// `f_*` injective on homology in every dimension.
pub fn is_injective(f: &SimplicialMap, field: Field, flavor: Flavor) -> Result<bool> {
    let hs = homology(f.source(), field, flavor);
    let ht = homology(f.target(), field, flavor);
    for d in -1..=hs.max_dim() {
        let m = induced_with(f, &hs, &ht, d)?;
        if m.rank() != hs.rank(d) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f^*` surjective on cohomology in every dimension.
pub fn is_surjective_on_cohomology(f: &SimplicialMap, field: Field, flavor: Flavor) -> Result<bool> {
    let cs = cohomology(f.source(), field, flavor);
    let ct = cohomology(f.target(), field, flavor);
    for d in -1..=cs.max_dim() {
        let (Some(gs), Some(gt)) = (cs.group(d), ct.group(d)) else {
            if cs.rank(d) > 0 {
                return Ok(false);
            }
            continue;
        };
        let chain = chain_map_matrix(f, d, field, flavor).transpose();
        let mut cols = Vec::new();
        for rep in gt.representatives() {
            cols.push(gs.coordinates(&chain.mul_vec(rep)?)?);
        }
        let m = Matrix::from_columns(field, gs.rank(), &cols);
        if m.rank() != gs.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some `x` with `δx = c` on the face space, or `None` when `c` is not exact.
pub fn express_as_coboundary(space: &FaceSpace, c: &Cochain) -> Result<Option<Cochain>> {
    let d = c.degree;
    let field = c.field;
    let target = space.to_dense(d, &c.terms, field)?;
    if d == -1 {
        return Ok(if c.is_zero() { Some(Cochain::zero(field, -2)) } else { None });
    }
    let m = space.coboundary_matrix(d - 1, field, Flavor::Reduced);
    if m.cols() == 0 {
        return Ok(if c.is_zero() { Some(Cochain::zero(field, d - 1)) } else { None });
    }
    Ok(m.solve(&target)?.map(|x| Cochain {
        field,
        degree: d - 1,
        terms: space.from_dense(d - 1, &x),
    }))
}

/// Injectivity of `H_*(K_I) -> H_*(K)` for the inclusion of a full subcomplex,
/// given the homology of `K`.
pub fn inclusion_is_injective(
    k: &SimplicialComplex,
    whole: &HomologyBasis,
    subset: FaceMask,
) -> Result<bool> {
    let sub = FaceSpace::new(k, subset)?;
    let full = FaceSpace::full(k);
    let hs = homology_of(&sub, whole.field, whole.flavor);
    for d in -1..=hs.max_dim() {
        let Some(gs) = hs.group(d) else { continue };
        if gs.rank() == 0 {
            continue;
        }
        let Some(gt) = whole.group(d) else {
            return Ok(false);
        };
        let mut cols = Vec::new();
        for rep in gs.representatives() {
            let sparse = sub.from_dense(d, rep);
            let dense = full.to_dense(d, &sparse, whole.field)?;
            cols.push(gt.coordinates(&dense)?);
        }
        if Matrix::from_columns(whole.field, gt.rank(), &cols).rank() != gs.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn tri() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[1, 3]]).unwrap()
    }

    fn c4() -> SimplicialComplex {
        SimplicialComplex::from_int_facets(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    #[test]
    fn triangle_boundary_rank() {
        assert_eq!(boundary_matrix(&tri(), 1, Field::Q, Flavor::Unreduced).rank(), 2);
        let aug = boundary_matrix(&tri(), 0, Field::F3, Flavor::Reduced);
        assert_eq!(aug.rows(), 1);
        assert!(aug.row(0).iter().all(|c| c.is_one()));
    }

    #[test]
    fn betti_numbers() {
        assert_eq!(homology(&tri(), Field::Q, Flavor::Reduced).betti(), vec![0, 1]);
        assert_eq!(homology(&tri(), Field::Q, Flavor::Unreduced).betti(), vec![1, 1]);
        let s2 = SimplicialComplex::from_int_facets(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]).unwrap();
        assert_eq!(homology(&s2, Field::F2, Flavor::Reduced).betti(), vec![0, 0, 1]);
        let pt = SimplicialComplex::from_int_facets(&[&[7]]).unwrap();
        assert_eq!(homology(&pt, Field::Q, Flavor::Reduced).total_rank(), 0);
        assert_eq!(cohomology(&s2, Field::Q, Flavor::Reduced).betti(), vec![0, 0, 1]);
    }

    #[test]
    fn inclusion_of_opposite_vertices() {
        let k = Arc::new(c4());
        let sub = Arc::new(k.full_subcomplex_mask(0b0101).unwrap());
        assert_eq!(sub.faces_of_card(2).len(), 0);
        let j = SimplicialMap::from_labels(sub.clone(), k.clone(), |v| v.clone()).unwrap();
        let m = induced_map(&j, Field::Q, 0, Flavor::Unreduced).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (1, 2, 1));
        assert!(!is_injective(&j, Field::Q, Flavor::Unreduced).unwrap());
        assert!(!is_surjective_on_cohomology(&j, Field::Q, Flavor::Unreduced).unwrap());
        let whole = homology(&k, Field::Q, Flavor::Unreduced);
        assert!(!inclusion_is_injective(&k, &whole, 0b0101).unwrap());
        assert!(inclusion_is_injective(&k, &whole, 0b0011).unwrap());
    }

    #[test]
    fn identity_is_injective() {
        let k = Arc::new(tri());
        let id = SimplicialMap::identity(k);
        assert!(is_injective(&id, Field::F2, Flavor::Reduced).unwrap());
        let m = induced_map(&id, Field::F2, 1, Flavor::Reduced).unwrap();
        assert_eq!(m, Matrix::identity(Field::F2, 1));
    }

    #[test]
    fn constant_map_kills_positive_degrees() {
        let k = Arc::new(tri());
        let pt = Arc::new(SimplicialComplex::from_int_facets(&[&[0]]).unwrap());
        let f = SimplicialMap::new(k, pt, vec![0, 0, 0]).unwrap();
        assert!(induced_map(&f, Field::Q, 1, Flavor::Unreduced).unwrap().is_zero());
    }

    #[test]
    fn triangle_subsets_inject() {
        let k = tri();
        let whole = homology(&k, Field::Q, Flavor::Unreduced);
        for s in 1..8u64 {
            assert!(inclusion_is_injective(&k, &whole, s).unwrap());
        }
    }

    #[test]
    fn coboundary_exactness() {
        let k = tri();
        let space = FaceSpace::full(&k);
        let gen = Cochain::from_terms(Field::Q, 1, [(0b011u64, Field::Q.one())].into_iter().collect()).unwrap();
        assert!(space.coboundary(&gen).is_zero());
        assert!(express_as_coboundary(&space, &gen).unwrap().is_none());
        let zero = Cochain::zero(Field::Q, 1);
        assert!(express_as_coboundary(&space, &zero).unwrap().is_some());
        let x = Cochain::from_terms(Field::Q, 0, [(0b001u64, Field::Q.from_i64(3))].into_iter().collect()).unwrap();
        let dx = space.coboundary(&x);
        let y = express_as_coboundary(&space, &dx).unwrap().unwrap();
        assert_eq!(space.coboundary(&y), dx);
    }

    #[test]
    fn sparse_coboundary_matches_matrix() {
        let k = c4();
        let space = FaceSpace::full(&k);
        for d in -1..=1 {
            let m = space.coboundary_matrix(d, Field::F3, Flavor::Reduced);
            for (i, &f) in space.faces(d).iter().enumerate() {
                let a = Cochain::from_terms(Field::F3, d, [(f, Field::F3.one())].into_iter().collect()).unwrap();
                let da = space.coboundary(&a);
                let dense = space.to_dense(d + 1, &da.terms, Field::F3).unwrap();
                assert_eq!(dense, m.column(i));
            }
        }
    }
}
