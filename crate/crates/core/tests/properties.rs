use golodlab::analysis::{is_tight, TightnessOptions};
use golodlab::dga::{dga_differential, dga_product, hochster_cohomology, product_class, KoszulCochain};
use golodlab::homology::{boundary_matrix, homology, Flavor};
use golodlab::io::{emit_complex, parse_complex, ComplexFormat};
use golodlab::partition::ordered_partitions;
use golodlab::shuffle::Shuffle;
use golodlab::simplicial::{compress_mask, FaceMask};
use golodlab::{Field, Matrix, SimplicialComplex};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::F2), Just(Field::F3), Just(Field::Q)]
}

// Random facet masks on up to six vertices, every vertex present.
fn complex_on(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n).prop_flat_map(|n| {
        let full = (1u64 << n) - 1;
        prop::collection::vec(1..=full, 0..6).prop_map(move |masks| {
            let mut facets: Vec<FaceMask> = (0..n).map(|v| 1u64 << v).collect();
            facets.extend(masks.into_iter().filter(|m| m.count_ones() <= 4));
            let facets: Vec<Vec<u32>> = facets
                .iter()
                .map(|&m| (0..n as u32).filter(|v| m >> v & 1 == 1).map(|v| v + 1).collect())
                .collect();
            let refs: Vec<&[u32]> = facets.iter().map(|f| f.as_slice()).collect();
            SimplicialComplex::from_int_facets(&refs).unwrap()
        })
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    complex_on(6)
}

fn shuffle() -> impl Strategy<Value = Shuffle> {
    (0..=7usize, 0..=7usize).prop_flat_map(|(p, q)| {
        prop::collection::vec(0..=p, q + 2).prop_map(move |mut s| {
            s.sort();
            s[0] = 0;
            s[q + 1] = p;
            Shuffle::new(p, q, s).unwrap()
        })
    })
}

/// A homogeneous Koszul cochain from a seed list.
fn koszul(k: &SimplicialComplex, f: Field, degree: usize, seeds: &[(u64, i64)]) -> KoszulCochain {
    let keys: Vec<(FaceMask, FaceMask)> = (1..=k.vertex_mask())
        .flat_map(|i| k.all_faces().filter(move |&s| s & !i == 0).map(move |s| (i, s)))
        .filter(|&(i, s)| (i.count_ones() + s.count_ones()) as usize == degree)
        .collect();
    let mut x = KoszulCochain::zero(f);
    if keys.is_empty() {
        return x;
    }
    for &(pick, c) in seeds {
        let key = keys[pick as usize % keys.len()];
        x = x.add(&KoszulCochain::basis(f, key).unwrap().scale(&f.from_i64(c))).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_under_faces(k in complex()) {
        prop_assert!(k.check_invariants().is_ok());
        for f in k.all_faces() {
            for v in 0..k.n_vertices() {
                prop_assert!(k.contains(f & !(1u64 << v)));
            }
        }
        let u = k.vertex_mask() & 0b10110;
        if u != 0 {
            let sub = k.full_subcomplex_mask(u).unwrap();
            let inside = k.all_faces().filter(|&f| f & !u == 0).count();
            prop_assert_eq!(sub.n_faces(), inside);
            prop_assert!(k.all_faces().filter(|&f| f & !u == 0).all(|f| sub.contains(compress_mask(f, u))));
        }
    }

    #[test]
    fn boundary_squares_to_zero(k in complex(), f in field(), reduced in any::<bool>()) {
        let flavor = if reduced { Flavor::Reduced } else { Flavor::Unreduced };
        for d in 1..=k.dim() {
            let dd = boundary_matrix(&k, d - 1, f, flavor).mul(&boundary_matrix(&k, d, f, flavor)).unwrap();
            prop_assert!(dd.is_zero());
        }
    }

    #[test]
    fn rank_nullity(f in field(), rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let m = Matrix::from_i64_rows(f, &rows);
        let null = m.nullspace();
        prop_assert_eq!(m.rank() + null.len(), m.cols());
        for v in null {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|c| c.is_zero()));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn euler_matches_betti(k in complex(), f in field()) {
        let fv = k.f_vector();
        let chi: i64 = fv.iter().skip(1).enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        let b = homology(&k, f, Flavor::Unreduced).betti();
        let alt: i64 = b.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        prop_assert_eq!(chi, alt);
    }

    #[test]
    fn leibniz_and_associativity(
        k in complex_on(4),
        f in field(),
        dx in 1usize..5, dy in 1usize..5, dz in 1usize..4,
        sx in prop::collection::vec((any::<u64>(), -2i64..=2), 1..4),
        sy in prop::collection::vec((any::<u64>(), -2i64..=2), 1..4),
        sz in prop::collection::vec((any::<u64>(), -2i64..=2), 1..3),
    ) {
        let x = koszul(&k, f, dx, &sx);
        let y = koszul(&k, f, dy, &sy);
        let z = koszul(&k, f, dz, &sz);
        let d = |a: &KoszulCochain| dga_differential(&k, a);
        let p = |a: &KoszulCochain, b: &KoszulCochain| dga_product(&k, a, b).unwrap();
        prop_assert!(d(&d(&x)).is_zero());
        let lhs = d(&p(&x, &y));
        let rhs = p(&d(&x), &y).add(&p(&x, &d(&y)).scale(&f.sign(dx))).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
        prop_assert!(p(&p(&x, &y), &z).sub(&p(&x, &p(&y, &z))).unwrap().is_zero());
    }

    #[test]
    fn graded_commutative_in_cohomology(k in complex_on(5), f in field()) {
        let t = hochster_cohomology(&k, f).unwrap();
        let subsets: Vec<FaceMask> = t.subsets().collect();
        for &i in &subsets {
            for &j in &subsets {
                if i & j != 0 || i > j || !t.subsets().any(|u| u == i | j) {
                    continue;
                }
                for a in t.classes(i) {
                    for b in t.classes(j) {
                        let ab = product_class(&k, &t, a, b).unwrap();
                        let ba = product_class(&k, &t, b, a).unwrap();
                        let s = f.sign(a.total_degree() * b.total_degree());
                        prop_assert!(ab.iter().zip(&ba).all(|(x, y)| *x == s.clone() * y.clone()));
                    }
                }
            }
        }
    }

    #[test]
    fn tightness_passes_to_full_subcomplexes(k in complex_on(5), f in field()) {
        if is_tight(&k, f, TightnessOptions::default()).unwrap().tight {
            let mut u = k.vertex_mask();
            while u != 0 {
                let sub = k.full_subcomplex_mask(u).unwrap();
                prop_assert!(is_tight(&sub, f, TightnessOptions::default()).unwrap().tight);
                u = (u - 1) & k.vertex_mask();
            }
        }
    }

    #[test]
    fn shuffle_steps_and_flips(s in shuffle()) {
        let (p, q) = (s.p(), s.q());
        let c = s.classify();
        prop_assert!(c.is_partition_of(p + q));
        for &i in &c.corner_down {
            let t = s.flip_alpha(i).unwrap();
            prop_assert_eq!(t.sgn(), -s.sgn());
            prop_assert_eq!(t.flip_beta(i).unwrap(), s.clone());
        }
        for &j in &c.corner_up {
            let t = s.flip_beta(j).unwrap();
            prop_assert_eq!(t.flip_alpha(j).unwrap(), s.clone());
        }
    }

    #[test]
    fn parse_emit_round_trip(k in complex(), json in any::<bool>()) {
        let fmt = if json { ComplexFormat::FacetJson } else { ComplexFormat::FacetLines };
        let text = emit_complex(&k, Some("k"), fmt);
        let back = parse_complex(text.as_bytes(), fmt).unwrap();
        prop_assert!(back.complex == k);
        prop_assert_eq!(emit_complex(&back.complex, Some("k"), fmt), text);
    }

    #[test]
    fn ordered_partition_counts(n in 1usize..=7, m in 1usize..=4) {
        let parts = ordered_partitions((1u64 << n) - 1, m);
        // surjections from n points onto m labels
        let surj: i64 = (0..=m as i64).map(|j| {
            let b = (0..j).fold(1i64, |a, i| a * (m as i64 - i) / (i + 1));
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * b * (m as i64 - j).pow(n as u32)
        }).sum();
        prop_assert_eq!(parts.len() as i64, surj);
        for p in parts {
            prop_assert_eq!(p.iter().fold(0, |a, &x| a | x), (1u64 << n) - 1);
            prop_assert_eq!(p.iter().map(|x| x.count_ones()).sum::<u32>(), n as u32);
        }
    }
}
