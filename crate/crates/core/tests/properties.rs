use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::sample::subsequence;

use koszul_core::f2::{echelonize, kernel, BitMatrix};
use koszul_core::homology::{koszul_certificate, tor_table};
use koszul_core::hopf::{
    deconcatenate, divided_power_coproduct, shuffle, Coalgebra, DividedPowerElement, TensorWordElement,
};
use koszul_core::quadratic::{hilbert_product_check, inverse_series};
use koszul_core::tatecheck::{check_tate_type, predict_heart_equivalence, HomTable};
use koszul_core::weight::{
    fiber_functor, tensor_comodule, validate, weight_filtration, BasisElement, GradedComodule, Transition,
};
use koszul_core::{BitVec, Limits, QuadraticPresentation, Subspace};

fn limits() -> Limits {
    Limits::default()
}

fn bitvec(len: usize) -> impl Strategy<Value = BitVec> {
    prop::collection::vec(any::<bool>(), len)
        .prop_map(move |bits| BitVec::from_indices(len, (0..len).filter(|&i| bits[i])))
}

fn matrix() -> impl Strategy<Value = BitMatrix> {
    (0usize..8, 0usize..12).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(bitvec(cols), rows).prop_map(move |r| BitMatrix::from_rows(cols, &r))
    })
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(bitvec(ambient), 0..=ambient).prop_map(move |v| Subspace::span(ambient, v))
}

fn presentation() -> impl Strategy<Value = QuadraticPresentation> {
    (1usize..=3)
        .prop_flat_map(|d| subspace(d * d).prop_map(move |r| QuadraticPresentation::with_default_names(d, r).unwrap()))
}

fn word(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..dim, 0..=max_len)
}

/// `e_0, …, e_k` with `e_i → e_j` by the subword `w[j..i]`, shifted by a base
/// weight. Deconcatenation makes this coassociative.
fn path_comodule(w: &[usize], base: i64, dim: usize) -> GradedComodule {
    let k = w.len();
    let basis = (0..=k)
        .map(|i| BasisElement {
            label: format!("p{i}"),
            weight: base + i as i64,
        })
        .collect();
    let transitions = (0..=k)
        .flat_map(|i| {
            (0..i).map(move |j| Transition {
                from: i,
                to: j,
                key: w[j..i].to_vec(),
            })
        })
        .collect();
    GradedComodule::new(Coalgebra::Tensor { dim }, basis, transitions)
}

fn comodule() -> impl Strategy<Value = GradedComodule> {
    (word(2, 3), -2i64..3).prop_map(|(w, base)| path_comodule(&w, base, 2))
}

fn convolve(a: &BTreeMap<i64, usize>, b: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (wa, da) in a {
        for (wb, db) in b {
            *out.entry(wa + wb).or_insert(0) += da * db;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn echelonize_is_idempotent_and_row_order_free(m in matrix(), seed in any::<u64>()) {
        let s = echelonize(&m);
        prop_assert_eq!(echelonize(s.basis()), s.clone());
        let mut rows: Vec<BitVec> = m.row_vecs().collect();
        let n = rows.len();
        for i in (1..n).rev() {
            rows.swap(i, (seed as usize ^ i.wrapping_mul(2654435761)) % (i + 1));
        }
        prop_assert_eq!(echelonize(&BitMatrix::from_rows(m.cols(), &rows)), s);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.basis_vectors() {
            prop_assert!(m.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn perp_reverses_order_and_is_an_involution(a in subspace(6), b in subspace(6)) {
        prop_assert_eq!(a.perp().perp(), a.clone());
        prop_assert_eq!(a.perp().dim(), 6 - a.dim());
        let sum = a.sum(&b).unwrap();
        prop_assert!(a.is_subspace_of(&sum));
        prop_assert!(sum.perp().is_subspace_of(&a.perp()));
    }

    #[test]
    fn intersection_laws(a in subspace(5), b in subspace(5), c in subspace(5)) {
        let ab = a.intersect(&b).unwrap();
        prop_assert_eq!(ab.clone(), b.intersect(&a).unwrap());
        prop_assert_eq!(a.intersect(&a).unwrap(), a.clone());
        prop_assert_eq!(ab.intersect(&c).unwrap(), a.intersect(&b.intersect(&c).unwrap()).unwrap());
        // dim(A ∩ B) + dim(A + B) = dim A + dim B
        prop_assert_eq!(ab.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
    }

    #[test]
    fn algebra_and_ideal_are_complementary(q in presentation()) {
        let d = q.dim_v();
        let dims = q.algebra_dims(5, &limits()).unwrap();
        for n in 0..=5 {
            let ideal = q.ideal_component(n, &limits()).unwrap();
            prop_assert_eq!(dims.0[n] + ideal.dim(), d.pow(n as u32));
        }
        let r = q.relations().dim();
        prop_assert_eq!(dims.0[2], d * d - r);
        prop_assert_eq!(q.coalgebra_dims(2, &limits()).unwrap().0[2], r);
    }

    #[test]
    fn duality_bridge_and_involution(q in presentation()) {
        let dual = q.dual();
        prop_assert_eq!(dual.algebra_dims(5, &limits()).unwrap(), q.coalgebra_dims(5, &limits()).unwrap());
        prop_assert_eq!(dual.dual(), q);
    }

    #[test]
    fn quotients_compose(q in presentation(), seeds in prop::collection::vec(any::<u8>(), 0..3)) {
        let d = q.dim_v();
        prop_assert_eq!(q.quotient_by_degree_one(&Subspace::zero(d)).unwrap(), q.clone());
        let vec_of = |s: u8| BitVec::from_indices(d, (0..d).filter(|&i| s >> i & 1 == 1));
        let u2 = Subspace::span(d, seeds.iter().map(|&s| vec_of(s)));
        let u1 = Subspace::span(d, seeds.iter().take(1).map(|&s| vec_of(s)));
        let once = q.quotient_by_degree_one(&u2).unwrap();
        let first = q.quotient_by_degree_one(&u1).unwrap();
        // image of u2 in V/u1, in the coordinates kept by the first quotient
        let kept = u1.non_pivots();
        let image = Subspace::span(
            kept.len(),
            u2.basis_vectors().map(|v| {
                let r = u1.reduce(&v);
                BitVec::from_indices(kept.len(), (0..kept.len()).filter(|&k| r.get(kept[k])))
            }),
        );
        prop_assert_eq!(first.quotient_by_degree_one(&image).unwrap(), once);
    }

    #[test]
    fn tor_laws(q in presentation()) {
        let n = 4;
        let tor = tor_table(&q, n, &limits()).unwrap();
        prop_assert_eq!(tor.diagonal(), q.coalgebra_dims(n, &limits()).unwrap());
        let a = q.algebra_dims(n, &limits()).unwrap();
        prop_assert_eq!(tor.euler_characteristics(), inverse_series(a.as_slice()));
        prop_assert!(tor.entries.keys().all(|&(i, j)| i <= j));
        let cert = koszul_certificate(&q, n, &limits()).unwrap();
        if cert.is_positive() {
            prop_assert!(hilbert_product_check(&q, n, &limits()).unwrap().passed);
        }
    }

    #[test]
    fn prediction_tracks_certificate(q in presentation()) {
        let n = 4;
        let t = HomTable::from_algebra_dims(q.algebra_dims(n, &limits()).unwrap().as_slice());
        let p = predict_heart_equivalence(&q, &t, n, &limits()).unwrap();
        prop_assert_eq!(p.predicted(), koszul_certificate(&q, n, &limits()).unwrap().is_positive());
    }

    #[test]
    fn shuffle_bialgebra_on_longer_words(u in word(3, 4), v in word(3, 4), w in word(3, 3)) {
        let e = |x: &[usize]| TensorWordElement::from_word(3, x).unwrap();
        let uv = shuffle(&u, &v, 3).unwrap();
        prop_assert_eq!(uv.clone(), shuffle(&v, &u, 3).unwrap());
        prop_assert_eq!(uv.shuffle(&e(&w)), e(&u).shuffle(&shuffle(&v, &w, 3).unwrap()));
        prop_assert_eq!(uv.coproduct(), e(&u).coproduct().shuffle(&e(&v).coproduct()));
        prop_assert_eq!(deconcatenate(&u).len(), u.len() + 1);
    }

    #[test]
    fn divided_powers_form_a_bialgebra(
        a in prop::collection::vec(0usize..6, 2),
        b in prop::collection::vec(0usize..6, 2),
        c in prop::collection::vec(0usize..6, 2),
    ) {
        let g = |x: &[usize]| DividedPowerElement::monomial(2, x).unwrap();
        let ab = g(&a).multiply(&g(&b)).unwrap();
        prop_assert_eq!(ab.clone(), g(&b).multiply(&g(&a)).unwrap());
        prop_assert_eq!(ab.multiply(&g(&c)).unwrap(), g(&a).multiply(&g(&b).multiply(&g(&c)).unwrap()).unwrap());
        // Δ(ab) = Δ(a)Δ(b)
        let mut lhs = BTreeMap::<(Vec<usize>, Vec<usize>), bool>::new();
        for m in ab.terms() {
            for split in divided_power_coproduct(m) {
                *lhs.entry(split).or_default() ^= true;
            }
        }
        let mut rhs = BTreeMap::<(Vec<usize>, Vec<usize>), bool>::new();
        for (a1, a2) in divided_power_coproduct(&a) {
            for (b1, b2) in divided_power_coproduct(&b) {
                let l = g(&a1).multiply(&g(&b1)).unwrap();
                let r = g(&a2).multiply(&g(&b2)).unwrap();
                for x in l.terms() {
                    for y in r.terms() {
                        *rhs.entry((x.clone(), y.clone())).or_default() ^= true;
                    }
                }
            }
        }
        lhs.retain(|_, v| *v);
        rhs.retain(|_, v| *v);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tate_monotone_and_no_phantoms(
        entries in prop::collection::btree_map((-3i64..4, -3i64..4), 0u64..3, 0..8),
    ) {
        let t = HomTable::new(entries.clone());
        let r = check_tate_type(&t);
        for (&key, &dim) in &entries {
            if dim == 0 || key == (0, 0) {
                continue;
            }
            let mut smaller = t.clone();
            smaller.entries.remove(&key);
            let s = check_tate_type(&smaller);
            prop_assert!(!r.passed() || s.passed());
            prop_assert!(s.violations.len() <= r.violations.len());
        }
        for v in &r.violations {
            let mut fixed = t.clone();
            fixed.entries.insert((v.l, v.w), u64::from((v.l, v.w) == (0, 0)));
            prop_assert!(check_tate_type(&fixed).violations.len() < r.violations.len());
        }
    }

    #[test]
    fn path_comodules_are_valid(m in comodule()) {
        prop_assert!(validate(&m, &limits()).unwrap().passed());
        prop_assert!(weight_filtration(&m, &limits()).unwrap().is_sound());
        let fiber = fiber_functor(&m, &limits()).unwrap();
        prop_assert_eq!(fiber.values().sum::<usize>(), m.dim());
    }

    #[test]
    fn tensor_products_are_monoidal(m1 in comodule(), m2 in comodule(), m3 in comodule()) {
        let l = limits();
        let m12 = tensor_comodule(&m1, &m2, &l).unwrap();
        prop_assert!(validate(&m12, &l).unwrap().passed());
        prop_assert!(weight_filtration(&m12, &l).unwrap().is_sound());
        let f = |m: &GradedComodule| fiber_functor(m, &l).unwrap();
        prop_assert_eq!(f(&m12), convolve(&f(&m1), &f(&m2)));
        let left = tensor_comodule(&m12, &m3, &l).unwrap();
        let right = tensor_comodule(&m1, &tensor_comodule(&m2, &m3, &l).unwrap(), &l).unwrap();
        prop_assert_eq!(f(&left), f(&right));
        prop_assert_eq!(left.transitions.len(), right.transitions.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn subsets_of_a_basis_span_subspaces(s in subspace(6), pick in subsequence((0..6).collect::<Vec<_>>(), 0..=6)) {
        let basis: Vec<BitVec> = s.basis_vectors().collect();
        let sub = Subspace::span(6, pick.iter().filter_map(|&i| basis.get(i).cloned()));
        prop_assert!(sub.is_subspace_of(&s));
        prop_assert!(s.perp().is_subspace_of(&sub.perp()));
    }
}
