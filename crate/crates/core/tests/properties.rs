use proptest::prelude::*;
use proptest::strategy::ValueTree;

use rtglab_core::generators::{
    cyclic_multipliers, random_instance, schreier_action_formula, schreier_product, sheet_function, sheet_measure,
    standard_catalog,
};
use rtglab_core::measures::{act_unchecked, pushforward, Meas};
use rtglab_core::rtg::make_rtg;
use rtglab_core::scalar::{int, Cq};
use rtglab_core::topology::{final_topology, is_continuous, is_continuous_bruteforce, point_set, product_topology, PointSet};
use rtglab_core::AlexandrovTopology;

/// Reflexive-transitive closure of a random relation on `n` points.
fn preorder(n: usize) -> impl Strategy<Value = AlexandrovTopology> {
    prop::collection::vec(prop::collection::vec(any::<bool>(), n), n).prop_map(move |mut m| {
        for (x, row) in m.iter_mut().enumerate() {
            row[x] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        AlexandrovTopology::from_matrix(&m).expect("preorder")
    })
}

fn space() -> impl Strategy<Value = AlexandrovTopology> {
    (1usize..=7).prop_flat_map(preorder)
}

fn subsets(n: usize) -> impl Iterator<Item = PointSet> {
    (0u32..1 << n).map(move |b| point_set(n, (0..n).filter(|&i| b >> i & 1 == 1)))
}

fn ints(len: usize) -> impl Strategy<Value = Vec<Cq>> {
    prop::collection::vec(-4i64..=4, len).prop_map(|v| v.into_iter().map(int).collect())
}

proptest! {
    #[test]
    fn opens_form_a_topology(t in space()) {
        let opens = t.open_sets();
        prop_assert!(opens.contains(&t.empty_set()) && opens.contains(&t.full_set()));
        for a in &opens {
            for b in &opens {
                prop_assert!(t.is_open(&(a | b)));
                prop_assert!(t.is_open(&(a & b)));
            }
        }
    }

    #[test]
    fn closure_is_dual_to_interior(t in space(), bits in any::<u32>()) {
        let n = t.points();
        let a = point_set(n, (0..n).filter(|&i| bits >> i & 1 == 1));
        let mut complement = t.full_set();
        complement.difference_with(&a);
        let mut dual = t.full_set();
        dual.difference_with(&t.interior(&complement));
        prop_assert_eq!(t.closure(&a), dual);
        prop_assert!(t.is_closed(&t.closure(&a)));
    }

    #[test]
    fn continuity_criteria_agree(
        (tx, ty, f) in (space(), space()).prop_flat_map(|(tx, ty)| {
            let m = ty.points();
            let n = tx.points();
            (Just(tx), Just(ty), prop::collection::vec(0..m, n))
        })
    ) {
        prop_assert_eq!(is_continuous(&f, &tx, &ty), is_continuous_bruteforce(&f, &tx, &ty));
    }

    #[test]
    fn final_topology_is_finest_making_map_continuous(
        (t, f, m) in space().prop_flat_map(|t| {
            let n = t.points();
            (1..=n).prop_flat_map(move |m| {
                // surjective: the first m points hit every target
                prop::collection::vec(0..m, n).prop_map(move |mut f| {
                    for (y, v) in f.iter_mut().enumerate().take(m) {
                        *v = y;
                    }
                    (f, m)
                })
            })
            .prop_map(move |(f, m)| (t.clone(), f, m))
        })
    ) {
        let q = final_topology(&t, &f, m).unwrap();
        prop_assert!(is_continuous(&f, &t, &q));
        for v in subsets(m) {
            let pre = point_set(t.points(), (0..t.points()).filter(|&x| v.contains(f[x])));
            prop_assert_eq!(q.is_open(&v), t.is_open(&pre));
        }
    }

    #[test]
    fn product_has_box_neighbourhoods(t1 in (1usize..=6).prop_flat_map(preorder), t2 in (1usize..=6).prop_flat_map(preorder)) {
        let (n1, n2) = (t1.points(), t2.points());
        let p = product_topology(&t1, &t2);
        let first: Vec<usize> = (0..n1 * n2).map(|i| i / n2).collect();
        let second: Vec<usize> = (0..n1 * n2).map(|i| i % n2).collect();
        prop_assert!(is_continuous(&first, &p, &t1) && is_continuous(&second, &p, &t2));
        for u in t1.open_sets() {
            for v in t2.open_sets() {
                let open_box = point_set(n1 * n2, (0..n1 * n2).filter(|&i| u.contains(i / n2) && v.contains(i % n2)));
                prop_assert!(p.is_open(&open_box));
            }
        }
        for i in 0..n1 * n2 {
            prop_assert_eq!(p.minimal(i).count_ones(..), t1.minimal(i / n2).count_ones(..) * t2.minimal(i % n2).count_ones(..));
        }
    }

    #[test]
    fn convolution_is_associative(gi in 0usize..23, a in ints(24), b in ints(24), c in ints(24)) {
        let g = &standard_catalog()[gi];
        let n = g.order();
        let m = |v: &[Cq]| Meas::new(v[..n].to_vec());
        let (a, b, c) = (m(&a), m(&b), m(&c));
        prop_assert_eq!(pushforward(g, &pushforward(g, &a, &b), &c), pushforward(g, &a, &pushforward(g, &b, &c)));
        prop_assert_eq!(pushforward(g, &Meas::delta(n, g.identity()), &a), a.clone());
    }

    #[test]
    fn random_instances_are_right_topological(seed in any::<u64>()) {
        let r = random_instance(seed, 24).unwrap();
        let g = r.group();
        for a in 0..g.order() {
            let right: Vec<usize> = (0..g.order()).map(|x| g.mul(x, a)).collect();
            prop_assert!(is_continuous(&right, r.tau(), r.tau()));
        }
        prop_assert!(r.tau().is_finer_or_equal(r.sigma()));
    }
}

#[test]
fn catalog_tables_are_groups() {
    for g in standard_catalog() {
        let n = g.order();
        let e = g.identity();
        for x in 0..n {
            assert_eq!(g.mul(x, e), x);
            assert_eq!(g.mul(e, x), x);
            assert_eq!(g.mul(x, g.inv(x)), e);
            for y in 0..n {
                for z in 0..n {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)), "{}", g.label());
                }
            }
        }
    }
}

#[test]
fn schreier_formula_for_every_involution() {
    let mut checked = 0;
    for n in 3..=12 {
        for u in (2..n).filter(|u| u * u % n == 1) {
            let g = schreier_product(&cyclic_multipliers(n, &[1, u])).unwrap();
            let mut runner = proptest::test_runner::TestRunner::deterministic();
            for _ in 0..8 {
                let f = ints(n).new_tree(&mut runner).unwrap().current();
                let mu = ints(n).new_tree(&mut runner).unwrap().current();
                for (delta, gamma) in [(false, false), (false, true), (true, false), (true, true)] {
                    let got = act_unchecked(&g, &sheet_function(n, &f, delta), &sheet_measure(n, &mu, gamma));
                    for (y, value) in got.iter().enumerate() {
                        let want = schreier_action_formula(n, u, &f, delta, &mu, gamma, y % n, y >= n).unwrap();
                        assert_eq!(*value, want, "n={n} u={u} y={y}");
                    }
                }
            }
            checked += 1;
        }
    }
    // n - 1 for each n, plus 3, 5 mod 8 and 5, 7 mod 12
    assert_eq!(checked, 14);
}

#[test]
fn seeded_instances_cover_both_regimes() {
    let (mut top, mut not) = (0, 0);
    for seed in 0..1000 {
        if random_instance(seed, 24).unwrap().is_topological() {
            top += 1;
        } else {
            not += 1;
        }
    }
    assert!(top > 100 && not > 100, "{top} topological, {not} not");
}

#[test]
fn make_rtg_accepts_every_subgroup_of_the_catalog() {
    for g in standard_catalog() {
        for h in rtglab_core::group::subgroups(&g).unwrap() {
            let r = make_rtg(g.clone(), h).unwrap();
            assert_eq!(r.cone(), h);
        }
    }
}
