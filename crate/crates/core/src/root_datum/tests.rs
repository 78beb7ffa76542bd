use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::rational::{int, rat};

fn g(s: &str) -> RootDatum {
    s.parse().unwrap()
}

fn pt(v: &[Rational]) -> Vec<Rational> {
    v.to_vec()
}

/// Every element of W as a matrix, by closure of the generators.
fn weyl_group_closure(d: &RootDatum) -> Vec<ZMatrix> {
    let mut seen: BTreeSet<ZMatrix> = BTreeSet::new();
    let mut stack = vec![int_identity(d.n())];
    while let Some(m) = stack.pop() {
        if seen.insert(m.clone()) {
            for s in d.generators() {
                stack.push(int_mat_mul(s, &m));
            }
        }
    }
    seen.into_iter().collect()
}

fn apply_rat(m: &ZMatrix, x: &[Rational]) -> Vec<Rational> {
    m.iter().map(|r| r.iter().zip(x).map(|(&a, b)| b * a).sum()).collect()
}

#[test]
fn gl2_and_a1_presets() {
    let d = g("GL2");
    assert_eq!((d.n(), d.l()), (2, 1));
    assert_eq!(d.simple_root(0).0, vec![2, -1]);
    let a1 = g("A1");
    assert_eq!((a1.n(), a1.l()), (1, 1));
    assert_eq!(a1.alpha(), &vec![vec![2]]);
}

#[test]
fn gl_n_roots_match_standard_model() {
    // alpha_i = 2 omega_i - omega_{i-1} - omega_{i+1}, omega_0 = 0
    for n in 2..=6 {
        let d = g(&format!("GL{n}"));
        for j in 0..n - 1 {
            let mut expect = vec![0; n];
            expect[j] = 2;
            if j > 0 {
                expect[j - 1] = -1;
            }
            expect[j + 1] = -1;
            assert_eq!(d.simple_root(j).0, expect);
        }
    }
}

#[test]
fn gext_e6_component_group_order_three() {
    let d = g("Gext(E6;m=-e1)");
    assert_eq!((d.n(), d.l()), (7, 6));
    let cg = d.component_group();
    assert_eq!(cg.invariant_factors, vec![3]);
    // independent check: smallest k with k * A^{-T} e_1 integral
    let at = linalg::transpose(&linalg::from_int(&d.cartan()));
    let mut e1 = vec![int(0); 6];
    e1[0] = int(1);
    let v = linalg::solve(&at, &e1).unwrap();
    let k = (1..10).find(|&k| v.iter().all(|x| (x * k).is_integer())).unwrap();
    assert_eq!(k, 3);
}

#[test]
fn component_groups_of_presets() {
    for n in 2..=8 {
        assert_eq!(g(&format!("GL{n}")).component_group().invariant_factors, vec![n as i64]);
    }
    for s in ["A1", "A3", "B2", "G2", "E8", "F4", "E6"] {
        let cg = g(s).component_group();
        assert_eq!(cg.order(), 1, "{s}");
        assert_eq!(cg.classes(), vec![Vec::<i64>::new()]);
    }
    let expected = [("E6", 3), ("E7", 2), ("D4", 2), ("D5", 4), ("C3", 2), ("B3", 2)];
    for (t, order) in expected {
        let d = g(&format!("Gext({t})"));
        assert_eq!(d.component_group().order(), order, "{t}");
        assert_eq!(d.component_group().classes().len(), order as usize);
    }
    assert_eq!(g("GL2*GL2").component_group().invariant_factors, vec![2, 2]);
    assert_eq!(g("T3").component_group().order(), 1);
}

#[test]
fn pair_examples() {
    let d = g("GL2");
    let w1 = Weight::basis(2, 0);
    let x: ValuationVector = APoint(vec![rat(3, 2), int(0)]).into();
    assert_eq!(d.pair(&w1, &x).unwrap(), ExtRational::from(rat(3, 2)));
    let d3 = g("GL3");
    let alpha1 = d3.simple_root(0);
    assert_eq!(alpha1.0, vec![2, -1, 0]);
    assert_eq!(d3.pair(&alpha1, &ValuationVector::from_ints(&[1, 1, 0])).unwrap(), ExtRational::from(1));
    let inf = ValuationVector(vec![ExtRational::NegInf, 0.into()]);
    assert_eq!(d.pair(&w1, &inf).unwrap(), ExtRational::NegInf);
    assert!(matches!(
        d.pair(&Weight(vec![-1, 0]), &inf),
        Err(Error::NegInfTimesNegative { index: 1, coeff: -1 })
    ));
}

#[test]
fn dominance_and_order_examples() {
    let d = g("GL2");
    assert!(d.is_dominant(&[int(1), int(1)]));
    assert!(!d.is_dominant(&[int(0), int(2)]));
    assert!(d.is_dominant(&[int(0), int(0)]));
    assert!(d.leq(&[int(0), int(2)], &[int(1), int(2)]));
    assert!(!d.leq(&[int(0), int(2)], &[int(1), int(3)]));
    assert!(d.leq(&[int(0), int(2)], &[int(0), int(2)]));
}

#[test]
fn dominant_rep_examples() {
    let a1 = g("A1");
    let (y, w) = a1.dominant_rep(&[int(-3)]);
    assert_eq!(y.0, vec![int(3)]);
    assert_eq!(w.word, vec![0]);
    let d = g("GL2");
    let (y, _) = d.dominant_rep(&[int(0), int(2)]);
    assert_eq!(y.0, vec![int(2), int(2)]);
    // brute force over the orbit
    let orbit: BTreeSet<Vec<Rational>> =
        weyl_group_closure(&d).iter().map(|m| apply_rat(m, &[int(0), int(2)])).collect();
    let dom: Vec<_> = orbit.iter().filter(|p| d.is_dominant(p)).collect();
    assert_eq!(dom, vec![&vec![int(2), int(2)]]);
    let (y, w) = d.dominant_rep(&[int(2), int(3)]);
    assert_eq!(y.0, vec![int(2), int(3)]);
    assert!(w.is_identity());
}

#[test]
fn weyl_orbit_examples() {
    assert_eq!(g("GL3").weyl_orbit(&Weight::basis(3, 0)).unwrap().len(), 3);
    let b2 = g("B2");
    let orbit = b2.weyl_orbit(&Weight::basis(2, 0)).unwrap();
    assert_eq!(orbit.len(), 4);
    // brute force: apply all 8 Weyl matrices (contragredient action)
    let group = weyl_group_closure(&b2);
    assert_eq!(group.len(), 8);
    let brute: BTreeSet<Weight> = group
        .iter()
        .map(|m| {
            let w = WeylElement { matrix: m.clone(), word: vec![] };
            let inv = b2.weyl_element(m).unwrap().inverse(b2.generators());
            w.act_on_weight(&inv, &Weight::basis(2, 0))
        })
        .collect();
    assert_eq!(brute.into_iter().collect::<Vec<_>>(), orbit);
    assert_eq!(g("E6").weyl_orbit(&Weight::zero(6)).unwrap(), vec![Weight::zero(6)]);
    assert_eq!(g("E6").weyl_orbit(&Weight::basis(6, 0)).unwrap().len(), 27);
    assert!(matches!(
        g("E8").weyl_orbit_guarded(&Weight(vec![1; 8]), 1000),
        Err(Error::Guard { .. })
    ));
}

#[test]
fn p_m_examples() {
    let d = g("GL2");
    let s1 = LeviDescriptor::from_indices(&[0]);
    assert_eq!(d.p_m(&[int(0), int(2)], s1).0, vec![int(1), int(2)]);
    assert_eq!(d.p_m(&[int(0), int(2)], LeviDescriptor::empty()).0, vec![int(0), int(2)]);
    assert_eq!(d.p_m(&[int(1), int(2)], s1).0, vec![int(1), int(2)]);
}

#[test]
fn p_m_is_w_m_orbit_average() {
    for grp in ["GL3", "B2", "G2", "C3", "GL2*A1"] {
        let d = g(grp);
        let x: Vec<Rational> = (0..d.n()).map(|i| rat(3 * i as i64 - 2, 2 + i as i64)).collect();
        for mask in 0..1u64 << d.l() {
            let s = LeviDescriptor::from_mask(mask);
            // W_M closure from generators in S
            let mut seen: BTreeSet<ZMatrix> = BTreeSet::new();
            let mut stack = vec![int_identity(d.n())];
            while let Some(m) = stack.pop() {
                if seen.insert(m.clone()) {
                    for j in s.indices() {
                        stack.push(int_mat_mul(&d.generators()[j], &m));
                    }
                }
            }
            let k = seen.len() as i64;
            let mut avg = vec![int(0); d.n()];
            for m in &seen {
                for (a, b) in avg.iter_mut().zip(apply_rat(m, &x)) {
                    *a += b / k;
                }
            }
            assert_eq!(d.p_m(&x, s).0, avg, "{grp} {s}");
        }
    }
}

#[test]
fn generators_are_involutions() {
    for grp in ["GL4", "B3", "G2", "Gext(E6)", "F4"] {
        let d = g(grp);
        for s in d.generators() {
            assert_eq!(int_mat_mul(s, s), int_identity(d.n()));
            let q = linalg::from_int(s);
            // det via rank-one update: det(I - e_j a^T) = 1 - a_j = -1
            assert_eq!(linalg::rank(&q), d.n());
        }
        for j in 0..d.l() {
            assert_eq!(d.generators()[j][j][j], -1);
        }
    }
}

#[test]
fn levi_examples() {
    let gl3 = g("GL3");
    let m = gl3.levi(LeviDescriptor::from_indices(&[0]));
    assert_eq!((m.n(), m.l()), (3, 1));
    assert_eq!(m.simple_root(0).0, vec![2, -1, 0]);
    assert_eq!(gl3.levi(LeviDescriptor::full(2)), gl3);

    let e6 = g("Gext(E6)");
    let d4 = e6.levi(LeviDescriptor::from_indices(&[1, 2, 3, 4]));
    assert_eq!((d4.n(), d4.l()), (7, 4));
    assert_eq!(d4.components()[0].label, "D4");
    // Levi order (2,3,4,5) -> Bourbaki D4 via 4->2, 3->1, 2->3, 5->4
    let to_d4 = [2usize, 0, 1, 3];
    let d4_cartan = CartanType::new(Family::D, 4).unwrap().cartan_matrix();
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(d4.alpha()[a][b], d4_cartan[to_d4[a]][to_d4[b]]);
        }
    }
}

#[test]
fn parse_errors() {
    for bad in ["", "X3", "GL0", "D3", "Gext(E6;m=1)", "Gext(E6", "A1**A2", "E6;m=", "T0", "Gext(A2;m=-e3)"] {
        assert!(bad.parse::<RootDatum>().is_err(), "{bad}");
    }
    assert!("A99".parse::<RootDatum>().is_err());
    let d = g("GL2 * T1 * Gext(A2;m=1,0)");
    assert_eq!((d.n(), d.l()), (6, 3));
}

#[test]
fn weyl_element_words_reproduce_matrices() {
    for grp in ["GL3", "B2", "G2", "Gext(D4)"] {
        let d = g(grp);
        for m in weyl_group_closure(&d) {
            let w = d.weyl_element(&m).unwrap();
            let rebuilt = w.word.iter().fold(int_identity(d.n()), |acc, &j| int_mat_mul(&acc, &d.generators()[j]));
            assert_eq!(rebuilt, m);
        }
    }
}

#[test]
fn gram_matrix_is_w_invariant() {
    for grp in ["GL3", "B2", "G2", "Gext(C3)", "GL2*A1"] {
        let d = g(grp);
        let gram = d.gram_matrix();
        for s in d.generators() {
            let q = linalg::from_int(s);
            let lhs = linalg::mat_mul(&linalg::transpose(&q), &linalg::mat_mul(&gram, &q));
            assert_eq!(lhs, gram, "{grp}");
        }
    }
}

#[test]
fn fundamental_weights_kill_center() {
    let d = g("Gext(E6)");
    let w = d.fundamental_weights();
    let xg = d.central_point(&[int(5)]);
    for (i, wi) in w.iter().enumerate() {
        let p: Rational = wi.iter().zip(xg.iter()).map(|(a, b)| a * b).sum();
        assert_eq!(p, int(0));
        for j in 0..6 {
            assert_eq!(wi[j], int(i64::from(i == j)));
        }
    }
}

fn arb_change(l: usize, t: usize) -> impl Strategy<Value = ExtensionChange> {
    proptest::collection::vec(proptest::collection::vec(-3i64..4, t), l)
        .prop_map(|lambda| ExtensionChange { lambda })
}

proptest! {
    #[test]
    fn dominant_rep_constant_on_orbits(v in proptest::collection::vec(-6i64..7, 3), word in proptest::collection::vec(0usize..2, 0..6)) {
        let d = g("GL3");
        let x: Vec<Rational> = v.iter().map(|&a| rat(a, 2)).collect();
        let wx = word.iter().fold(APoint(x.clone()), |p, &j| d.reflection(j).apply(&p));
        let (y1, w1) = d.dominant_rep(&x);
        prop_assert_eq!(&d.dominant_rep(&wx).0, &y1);
        prop_assert_eq!(w1.apply(&x), y1);
    }

    #[test]
    fn p_m_idempotent_and_monotone(v in proptest::collection::vec(-8i64..9, 4), dv in proptest::collection::vec(0i64..5, 2), mask in 0u64..8) {
        let d = g("Gext(C3)");
        let x: Vec<Rational> = v.iter().map(|&a| rat(a, 3)).collect();
        let s = LeviDescriptor::from_mask(mask);
        let p = d.p_m(&x, s);
        prop_assert_eq!(&d.p_m(&p, s), &p);
        // x <= y
        let mut y = x.clone();
        y[0] += int(dv[0]);
        y[2] += rat(dv[1], 2);
        prop_assert!(d.leq(&d.p_m(&x, s), &d.p_m(&y, s)));
        let (dom, _) = d.dominant_rep(&x);
        prop_assert!(d.leq(&d.p_m(&dom, s), &dom));
    }

    #[test]
    fn orbit_of_dominant_weight_has_one_dominant_element(v in proptest::collection::vec(0i64..3, 3), t in -2i64..3) {
        let d = g("Gext(B3)");
        let lambda = Weight(vec![v[0], v[1], v[2], t]);
        let orbit = d.weyl_orbit(&lambda).unwrap();
        let dominant = orbit.iter().filter(|w| w.iter().take(3).all(|&c| c >= 0)).count();
        prop_assert_eq!(dominant, 1);
    }

    #[test]
    fn component_group_extension_invariant(change in arb_change(6, 1)) {
        let d = g("Gext(E6)");
        let d2 = change.apply_datum(&d).unwrap();
        prop_assert_eq!(d2.component_group().invariant_factors, d.component_group().invariant_factors);
    }

    #[test]
    fn extension_change_preserves_root_pairings(change in arb_change(2, 1), v in proptest::collection::vec(-9i64..9, 3)) {
        let d = g("GL3");
        let d2 = change.apply_datum(&d).unwrap();
        let x: Vec<Rational> = v.iter().map(|&a| rat(a, 4)).collect();
        let x2 = change.apply_point(&d, &x);
        prop_assert_eq!(d.root_pairings(&x), d2.root_pairings(&x2));
        prop_assert_eq!(pt(&x2[2..]), pt(&x[2..]));
    }
}
