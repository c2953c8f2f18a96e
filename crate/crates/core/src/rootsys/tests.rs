use super::*;
use crate::arith::int;

fn rs(s: &str) -> RootSystem {
    RootSystem::new(s.parse().unwrap()).unwrap()
}

fn det(a: &[Vec<i64>]) -> i64 {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
    let mut d = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return 0 };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            let pivot = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    d.to_integer().to_i64().unwrap()
}

/// w0 found by breadth-first search over the regular orbit of ρ, which is in
/// bijection with W; independent of the greedy descent used in the library.
fn w0_by_orbit_search(rs: &RootSystem, lambda: &Weight) -> Weight {
    let rho = rs.rho();
    let mut words: HashMap<Weight, Vec<usize>> = HashMap::from([(rho.clone(), vec![])]);
    let mut queue = VecDeque::from([rho.clone()]);
    while let Some(w) = queue.pop_front() {
        let word = words[&w].clone();
        for i in 0..rs.rank() {
            let r = rs.reflect(&w, i);
            if !words.contains_key(&r) {
                let mut wd = word.clone();
                wd.push(i);
                words.insert(r.clone(), wd);
                queue.push_back(r);
            }
        }
    }
    words[&-&rho].iter().fold(lambda.clone(), |w, &i| rs.reflect(&w, i))
}

#[test]
fn a1_basics() {
    let a1 = rs("A1");
    assert_eq!(a1.coxeter_number(), 2);
    assert_eq!(a1.num_positive_roots(), 1);
    assert_eq!(a1.highest_root().weight, Weight::new(vec![2]));
    assert_eq!(a1.highest_root().coeffs, vec![1]);
    // σ ↔ ⟨σ, α^∨⟩ in rank one
    let sigma = Weight::new(vec![5]);
    assert_eq!(a1.highest_root().pair(&sigma), 5);
}

#[test]
fn g2_highest_root_and_coxeter() {
    let g2 = rs("G2");
    assert_eq!(g2.highest_root().coeffs, vec![3, 2]);
    assert_eq!(g2.coxeter_number(), 6);
    assert_eq!(g2.highest_short_root().pair(&g2.rho()) + 1, 6);
    assert_eq!(g2.dual_coxeter_number(), 4);
    assert_eq!(g2.num_positive_roots(), 6);
}

#[test]
fn e8_counts() {
    let e8 = rs("E8");
    assert_eq!(e8.num_positive_roots(), 120);
    assert_eq!(e8.coxeter_number(), 30);
    assert_eq!(e8.dual_coxeter_number(), 30);
    assert_eq!(e8.fundamental_group_invariants(), vec![1]);
}

#[test]
fn coxeter_numbers_by_family() {
    let expected = [
        ("A4", 5, 5),
        ("B3", 6, 5),
        ("C3", 6, 4),
        ("D5", 8, 8),
        ("E6", 12, 12),
        ("E7", 18, 18),
        ("F4", 12, 9),
        ("G2", 6, 4),
    ];
    for (t, h, hv) in expected {
        let r = rs(t);
        assert_eq!((r.coxeter_number(), r.dual_coxeter_number()), (h, hv), "{t}");
    }
}

#[test]
fn fundamental_groups() {
    assert_eq!(rs("A3").fundamental_group_invariants(), vec![4]);
    assert_eq!(rs("B4").fundamental_group_invariants(), vec![2]);
    assert_eq!(rs("D4").fundamental_group_invariants(), vec![2, 2]);
    assert_eq!(rs("D5").fundamental_group_invariants(), vec![4]);
    assert_eq!(rs("E6").fundamental_group_invariants(), vec![3]);
    assert_eq!(rs("E7").fundamental_group_invariants(), vec![2]);
    assert_eq!(rs("F4").fundamental_group_invariants(), vec![1]);
}

#[test]
fn structural_invariants_all_types() {
    for t in CartanType::all_up_to(8) {
        let r = RootSystem::new(t).unwrap();
        let n = r.rank();
        // ⟨ω_i, α_j^∨⟩ = δ_ij on simple roots
        for (j, root) in r.positive_roots().iter().filter(|x| x.height() == 1).enumerate() {
            let _ = j;
            let idx = root.coeffs.iter().position(|&c| c == 1).unwrap();
            for i in 0..n {
                assert_eq!(root.pair(&r.fundamental_weight(i)), i64::from(i == idx), "{t}");
            }
        }
        // Σ α = 2ρ
        let sum = r.positive_roots().iter().fold(r.zero(), |acc, x| &acc + &x.weight);
        assert_eq!(sum, r.rho().scale(2), "{t}");
        // |Φ+| = h n / 2
        assert_eq!(r.num_positive_roots() as i64 * 2, r.coxeter_number() * n as i64, "{t}");
        // short roots have ⟨α,α⟩ = 2
        assert_eq!(r.positive_roots().iter().map(|x| x.norm).min(), Some(2), "{t}");
        if r.is_simply_laced() {
            assert_eq!(r.highest_root(), r.highest_short_root(), "{t}");
        } else {
            assert_ne!(r.highest_root(), r.highest_short_root(), "{t}");
        }
        // det C = |X/ZΦ| = product of invariants
        let d = det(r.cartan_matrix());
        assert_eq!(d as u64, r.fundamental_group().order(), "{t}");
        // inner product restricted to roots is the Gram of the norms
        for x in r.positive_roots() {
            assert_eq!(r.inner(&x.weight, &x.weight), int(x.norm), "{t}");
        }
        // root-coordinate round trip on fundamental weights
        for i in 0..n {
            let w = r.fundamental_weight(i);
            assert_eq!(r.weight_from_root_coords(&r.root_coords(&w)), Some(w), "{t}");
        }
    }
}

#[test]
fn dual_weight_examples() {
    let a1 = rs("A1");
    assert_eq!(a1.dual_weight(&Weight::new(vec![3])), Weight::new(vec![3]));
    let a2 = rs("A2");
    assert_eq!(a2.dual_weight(&Weight::new(vec![1, 0])), Weight::new(vec![0, 1]));
    assert_eq!(w0_by_orbit_search(&a2, &Weight::new(vec![1, 0])), Weight::new(vec![0, -1]));
    let d4 = rs("D4");
    for i in 0..4 {
        let w = d4.fundamental_weight(i);
        assert_eq!(d4.dual_weight(&w), w);
    }
    assert_eq!(d4.apply_longest(&d4.rho()), -d4.rho());
}

#[test]
fn longest_element_matches_orbit_search() {
    for t in ["A3", "B3", "C3", "D5", "G2", "F4", "E6"] {
        let r = rs(t);
        for i in 0..r.rank() {
            let w = r.fundamental_weight(i);
            assert_eq!(r.apply_longest(&w), w0_by_orbit_search(&r, &w), "{t} ω{}", i + 1);
        }
        assert_eq!(r.longest_word().len(), r.num_positive_roots(), "{t}");
    }
}

#[test]
fn dominance_examples() {
    let a2 = rs("A2");
    let w11 = Weight::new(vec![1, 1]);
    assert!(a2.dominance_leq(&w11, &w11));
    assert!(a2.dominance_leq(&a2.zero(), &w11));
    let w10 = Weight::new(vec![1, 0]);
    let w01 = Weight::new(vec![0, 1]);
    assert!(!a2.dominance_leq(&w10, &w01));
    assert!(!a2.dominance_leq(&w01, &w10));
    assert_eq!(a2.root_coords(&w11), vec![int(1), int(1)]);
}

#[test]
fn coroot_pairing_rejects_non_roots() {
    let a2 = rs("A2");
    assert!(a2.coroot_pairing(&a2.rho(), &Weight::new(vec![1, 0])).is_err());
    let hr = a2.highest_root().weight.clone();
    assert_eq!(a2.coroot_pairing(&Weight::new(vec![1, 0]), &hr).unwrap(), 1);
    assert_eq!(a2.coroot_pairing(&Weight::new(vec![1, 0]), &-&hr).unwrap(), -1);
}

#[test]
fn rank_cap_is_guarded() {
    assert!(build_root_system(Family::A, 12).is_ok());
    assert!(build_root_system(Family::A, 13).is_err());
    assert!(build_root_system(Family::D, 3).is_err());
    let caps = Caps { max_classical_rank: 20, ..Caps::default() };
    assert!(RootSystem::with_caps(CartanType::new(Family::B, 13).unwrap(), &caps).is_ok());
}

#[test]
fn orbit_order_via_smith_matches_denominators() {
    for t in ["A1", "A4", "B3", "C4", "D4", "D5", "D6", "E6", "E7"] {
        let r = rs(t);
        for i in 0..r.rank() {
            let w = r.fundamental_weight(i);
            let denominators = r.root_coords(&w).iter().map(|c| c.denom().to_u64().unwrap()).collect::<Vec<_>>();
            assert_eq!(r.fundamental_group().order_of(&w), lcm_all(denominators), "{t} ω{}", i + 1);
        }
    }
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn weight3() -> impl Strategy<Value = Weight> {
        prop::collection::vec(-4i64..=4, 3).prop_map(Weight::new)
    }

    proptest! {
        #[test]
        fn dual_is_involution(w in weight3()) {
            for t in ["A3", "B3", "C3"] {
                let r = rs(t);
                let d = r.dual_weight(&w);
                prop_assert_eq!(r.dual_weight(&d), w.clone());
                prop_assert_eq!(d.is_dominant(), w.is_dominant());
            }
        }

        #[test]
        fn dominance_is_partial_order(a in weight3(), b in weight3(), c in weight3()) {
            let r = rs("B3");
            prop_assert!(r.dominance_leq(&a, &a));
            if r.dominance_leq(&a, &b) && r.dominance_leq(&b, &a) {
                prop_assert_eq!(&a, &b);
            }
            if r.dominance_leq(&a, &b) && r.dominance_leq(&b, &c) {
                prop_assert!(r.dominance_leq(&a, &c));
            }
        }

        #[test]
        fn root_coords_round_trip(w in weight3()) {
            let r = rs("C3");
            prop_assert_eq!(r.weight_from_root_coords(&r.root_coords(&w)), Some(w));
        }

        #[test]
        fn scaled_root_coords_agree(w in weight3()) {
            for t in ["A3", "B3", "C3"] {
                let r = rs(t);
                let d = BigInt::from(r.root_denominator());
                let scaled: Vec<Rational> =
                    r.root_coords_scaled(&w).into_iter().map(|x| Rational::new(x.into(), d.clone())).collect();
                prop_assert_eq!(scaled, r.root_coords(&w));
            }
        }
    }
}
