use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3lat::ellfib::{classify_all, disc84, is_k3, resultant_r, FamilyParams};
use k3lat::exactmath::rational::{format_rational, parse_rational};
use k3lat::exactmath::upoly::{resultant_euclid, resultant_formal};
use k3lat::exactmath::{
    discriminant, hermite_normal_form, integer_kernel, resultant, smith_normal_form, squarefree_decomposition, IMat,
    Rational, UPoly,
};
use k3lat::graded::{canonical_t, canonical_u, hilbert_count, humbert_m, WeightSystem};
use k3lat::k3cat::{catalog, derive_e8_labeling, CATALOG_NAMES};
use k3lat::lattice::{disc_group, find_isometry, genus_invariants, verify_isometry, IsometryOutcome, Lattice, SpanInAmbient};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

fn poly(max_deg: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
        .prop_map(|c| UPoly::from_ints(&c))
        .prop_filter("nonconstant", |p| p.degree().unwrap_or(0) >= 1)
}

fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=3).prop_map(|(p, q)| r(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn params() -> impl Strategy<Value = FamilyParams> {
    prop::array::uniform7(nonzero_rational()).prop_map(FamilyParams::new)
}

fn imat(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IMat> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(m, n)| {
        prop::collection::vec(prop::collection::vec(-9i64..=9, n), m).prop_map(|rows| IMat::from_i64(&rows))
    })
}

/// Row operations applied to the identity: unimodular by construction.
fn row_ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..16, 0usize..16, -2i64..=2, any::<bool>()), 0..24)
}

fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> IMat {
    let mut p = IMat::identity(n);
    for &(i, j, k, swap) in ops {
        let (i, j) = (i % n, j % n);
        if swap {
            p.swap_rows(i, j);
        } else if i != j {
            p.add_row_multiple(i, j, &BigInt::from(k));
        } else {
            p.negate_row(i);
        }
    }
    p
}

fn divides_chain(d: &[BigInt]) -> bool {
    d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) })
}

fn pow(x: &Rational, e: i64) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn resultant_vanishes_iff_common_factor(common in prop::option::of(poly(2)), p in poly(4), q in poly(4)) {
        let (p, q) = match &common {
            Some(c) => (&p * c, &q * c),
            None => (p, q),
        };
        let res = resultant(&p, &q).unwrap();
        let shared = p.gcd(&q).degree().unwrap_or(0) >= 1;
        prop_assert_eq!(res.is_zero(), shared);
        prop_assert_eq!(resultant_euclid(&p, &q).unwrap(), res);
    }

    #[test]
    fn formal_resultant_matches_true_degrees(p in poly(5), q in poly(5)) {
        let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
        prop_assert_eq!(resultant_formal(&p, dp, &q, dq), resultant(&p, &q).unwrap());
    }

    #[test]
    fn squarefree_product_recovers_input(parts in prop::collection::vec((poly(2), 1usize..=3), 1..=3)) {
        let p = parts.iter().fold(UPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32));
        let dec = squarefree_decomposition(&p);
        let lc = p.leading().unwrap().clone();
        let back = dec.iter().fold(UPoly::constant(lc), |acc, (f, m)| &acc * &f.pow(*m as u32));
        prop_assert_eq!(back, p);
        for (i, (f, _)) in dec.iter().enumerate() {
            prop_assert_eq!(f.gcd(&f.derivative()).degree(), Some(0));
            for (g, _) in &dec[i + 1..] {
                prop_assert_eq!(f.gcd(g).degree(), Some(0));
            }
        }
    }

    #[test]
    fn discriminant_of_product(p in poly(3), q in poly(3)) {
        prop_assume!(p.gcd(&q).degree() == Some(0));
        let res = resultant(&p, &q).unwrap();
        let lhs = discriminant(&(&p * &q)).unwrap();
        let rhs = discriminant(&p).unwrap() * discriminant(&q).unwrap() * &res * &res;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_form_properties(m in imat(4, 5)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert_eq!(s.u.det().abs(), BigInt::one());
        prop_assert_eq!(s.v.det().abs(), BigInt::one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let diag = s.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        prop_assert!(divides_chain(&diag));
    }

    #[test]
    fn hermite_form_same_row_lattice(m in imat(4, 5)) {
        let h = hermite_normal_form(&m);
        prop_assert_eq!(&h.t * &m, h.h.clone());
        let tinv = h.t.unimodular_inverse();
        prop_assert!(tinv.is_some(), "transform not unimodular");
        prop_assert_eq!(&tinv.unwrap() * &h.h, m.clone());
        for i in h.rank..h.h.rows() {
            prop_assert!(h.h.row(i).iter().all(Zero::is_zero));
        }
        let piv = h.pivots();
        prop_assert!(piv.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn kernel_is_annihilated_and_saturated(m in imat(3, 6)) {
        let k = integer_kernel(&m);
        for i in 0..k.rows() {
            prop_assert!(m.mul_vec(k.row(i)).iter().all(Zero::is_zero));
        }
        let rank = smith_normal_form(&m).rank();
        prop_assert_eq!(k.rows(), m.cols() - rank);
        if k.rows() > 0 {
            prop_assert!(smith_normal_form(&k).diagonal().iter().all(One::is_one));
        }
    }

    #[test]
    fn rational_text_round_trip(p in -1000i64..1000, q in 1i64..50) {
        let x = r(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }
}

fn small_catalog() -> Vec<Lattice> {
    ["A0", "A1", "A2", "A3", "A1'", "B0", "B1", "B2", "B3", "B1'"].iter().map(|n| catalog(n).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn fingerprint_invariant_under_change_of_basis(idx in 0usize..10, ops in row_ops()) {
        let l = &small_catalog()[idx];
        let p = unimodular(l.rank(), &ops);
        let moved = Lattice::new(l.gram().congruent(&p).unwrap()).unwrap();
        prop_assert_eq!(genus_invariants(&moved).unwrap(), genus_invariants(l).unwrap());
        match find_isometry(l.gram(), moved.gram(), 1_000_000).unwrap() {
            IsometryOutcome::Found(w) => prop_assert!(verify_isometry(l.gram(), moved.gram(), &w).unwrap()),
            IsometryOutcome::NotIsometric(why) => prop_assert!(false, "congruent lattices declared different: {}", why),
            IsometryOutcome::Unknown(_) => {}
        }
    }

    #[test]
    fn primitive_span_complement(picks in prop::collection::btree_set(0usize..22, 1..8)) {
        let b = derive_e8_labeling().unwrap().basis();
        let ambient = b.lattice();
        let vectors: Vec<Vec<BigInt>> = picks
            .iter()
            .map(|&i| (0..22).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        let span = SpanInAmbient::new(ambient, vectors).unwrap();
        prop_assert!(span.is_primitive());
        let det = span.gram().det();
        prop_assume!(!det.is_zero());
        let comp = span.orth_complement();
        prop_assert_eq!(span.rank() + comp.rank(), 22);
        prop_assert_eq!(comp.gram().det().abs(), det.abs());
    }
}

#[test]
fn catalog_det_is_disc_order_and_twist_scales() {
    for name in CATALOG_NAMES {
        let l = catalog(name).unwrap();
        assert!(l.is_even(), "{name} even");
        let dg = disc_group(&l).unwrap();
        assert_eq!(dg.order(), l.det().abs(), "{name}");
        let prod = dg.invariant_factors.iter().fold(BigInt::one(), |a, b| a * b);
        assert_eq!(prod, l.det().abs(), "{name}");
    }
    for name in ["A1", "A2"] {
        let l = k3lat::lattice::make_named(name, 1).unwrap();
        let t = l.twist(2).unwrap();
        let expected = BigInt::from(2).pow(l.rank() as u32) * l.det().abs();
        assert_eq!(disc_group(&t).unwrap().order(), expected, "{name}(2)");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn canonical_u_equivariance(a in params(), lambda in nonzero_rational()) {
        let la = a.scale(&lambda).unwrap();
        let (u, lu) = (canonical_u(&a).unwrap(), canonical_u(&la).unwrap());
        for ((x, y), w) in u.iter().zip(&lu).zip(WeightSystem::u_system().weights) {
            prop_assert_eq!(y, &(x * pow(&lambda, w)));
        }
    }

    #[test]
    fn canonical_t_equivariance(a in params(), lambda in nonzero_rational()) {
        let a = a.with(0, Rational::zero());
        let la = a.scale(&lambda).unwrap();
        let (t, lt) = (canonical_t(&a).unwrap(), canonical_t(&la).unwrap());
        for ((x, y), w) in t.iter().zip(&lt).zip(WeightSystem::t_system().weights) {
            prop_assert_eq!(y, &(x * pow(&lambda, w)));
        }
    }

    #[test]
    fn humbert_weight_24(a in prop::array::uniform7(rational()).prop_map(FamilyParams::new), lambda in nonzero_rational()) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(humbert_m(&a.scale(&lambda).unwrap()), humbert_m(&a) * pow(&lambda, 24));
    }

    #[test]
    fn euler_sum_and_scaling(a in params(), lambda in nonzero_rational()) {
        prop_assert!(is_k3(&a));
        let conf = classify_all(&a).unwrap();
        prop_assert_eq!(conf.total_euler, 24);
        let scaled = classify_all(&a.scale(&lambda).unwrap()).unwrap();
        prop_assert_eq!(scaled.type_counts(), conf.type_counts());
    }

    #[test]
    fn sparse_points_stay_k3(a in prop::array::uniform7(prop_oneof![Just(Rational::zero()), nonzero_rational()]).prop_map(FamilyParams::new)) {
        prop_assume!(!a.is_zero());
        if let Ok(conf) = classify_all(&a) {
            prop_assert_eq!(conf.total_euler, 24);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn d84_and_r_weights(a in params(), lambda in nonzero_rational()) {
        let la = a.scale(&lambda).unwrap();
        prop_assert_eq!(resultant_r(&la).unwrap(), resultant_r(&a).unwrap() * pow(&lambda, 28));
        prop_assert_eq!(disc84(&la).unwrap(), disc84(&a).unwrap() * pow(&lambda, 84));
    }
}

#[test]
fn hilbert_counts_nondecreasing_in_even_steps() {
    let u = WeightSystem::u_system();
    for start in 0..2 {
        let seq: Vec<u64> = (0..60).map(|k| hilbert_count(&u, start + 2 * k)).collect();
        assert!(seq.windows(2).all(|w| w[0] <= w[1]), "{seq:?}");
    }
}
