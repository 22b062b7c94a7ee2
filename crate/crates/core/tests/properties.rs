use proptest::prelude::*;

use leibniz_core::algebra::{BasisSplit, LeibnizAlgebra, MultiplicativeTable};
use leibniz_core::corpus::{direct_sum, fuzz_algebra, fuzz_batch, random_permutation, random_scaling};
use leibniz_core::equivalence::{
    change_basis, decomposition_correspondence, induced_graph_isomorphism, is_automorphism, maps_standard_basis,
    LinearMap,
};
use leibniz_core::graph::DiGraph;
use leibniz_core::linalg::{rref, Vector};
use leibniz_core::scalar::{Field, Scalar};
use leibniz_core::structure::MultiplicativeAlgebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gf(p: u64) -> impl Strategy<Value = Scalar> {
    (0..p).prop_map(move |x| Field::Prime(p).from_i64(x as i64))
}

fn rational() -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Field::Rationals.from_ratio(n, d).unwrap())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![rational(), gf(5), gf(7), gf(65_521)]
}

fn triple() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    prop_oneof![
        (rational(), rational(), rational()),
        (gf(7), gf(7), gf(7)),
        (gf(65_521), gf(65_521), gf(65_521)),
    ]
}

fn rows(field: Field, dim: usize) -> impl Strategy<Value = Vec<Vector>> {
    let entry = match field {
        Field::Prime(p) => gf(p).boxed(),
        Field::Rationals => (-3i64..4).prop_map(|x| Field::Rationals.from_i64(x)).boxed(),
    };
    prop::collection::vec(prop::collection::vec(entry, dim), 0..6)
}

fn digraph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (0usize..=10).prop_flat_map(|n| {
        let edge = (0..n.max(1), 0..n.max(1));
        (Just(n), prop::collection::vec(edge, 0..(n * n).max(1)))
    })
    .prop_map(|(n, es)| (n, if n == 0 { vec![] } else { es }))
}

fn fuzz_instance() -> impl Strategy<Value = (LeibnizAlgebra, BasisSplit)> {
    (any::<u64>(), 1usize..=4).prop_filter_map("rejected sample", |(seed, dim)| fuzz_algebra(seed, dim, Field::Prime(5)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
            prop_assert_eq!(a.checked_div(&a).unwrap(), a.field().one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn display_parses_back(x in scalar()) {
        prop_assert_eq!(x.field().parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rref_is_idempotent(rs in rows(Field::Rationals, 4), ps in rows(Field::Prime(3), 4)) {
        for (field, rs) in [(Field::Rationals, rs), (Field::Prime(3), ps)] {
            let s = rref(field, 4, rs.clone()).unwrap();
            let again = rref(field, 4, s.rows().to_vec()).unwrap();
            prop_assert_eq!(&again, &s);
            for r in &rs {
                prop_assert!(s.contains(r));
            }
        }
    }

    #[test]
    fn membership_matches_rank(rs in rows(Field::Prime(5), 3), v in prop::collection::vec(gf(5), 3)) {
        let s = rref(Field::Prime(5), 3, rs.clone()).unwrap();
        let with = rref(Field::Prime(5), 3, rs.into_iter().chain([v.clone()])).unwrap();
        prop_assert_eq!(s.contains(&v), with.rank() == s.rank());
    }

    #[test]
    fn strongly_connected_iff_connected_and_weakly_symmetric((n, es) in digraph()) {
        let g = DiGraph::from_edges(n, es);
        prop_assert_eq!(g.is_strongly_connected(), g.is_connected() && g.is_weakly_symmetric());
        prop_assert_eq!(g.is_weakly_symmetric(), g.weak_symmetry_witness().is_none());
    }

    #[test]
    fn graph_ignores_rescaling((a, s) in fuzz_instance(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = MultiplicativeAlgebra::new(a.clone(), s.clone()).unwrap();
        let scaled = a.rescaled(&random_scaling(&mut rng, a.field(), a.dim())).unwrap();
        prop_assert_eq!(scaled.leibniz_kernel().unwrap(), a.leibniz_kernel().unwrap());
        let sm = MultiplicativeAlgebra::new(scaled, s).unwrap();
        prop_assert_eq!(sm.graph(), m.graph());
    }

    #[test]
    fn graph_follows_permutation((a, s) in fuzz_instance(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let perm = random_permutation(&mut rng, a.dim());
        let m = MultiplicativeAlgebra::new(a.clone(), s.clone()).unwrap();
        let pm = MultiplicativeAlgebra::new(a.permuted(&perm).unwrap(), s.permuted(&perm).unwrap()).unwrap();
        prop_assert!(induced_graph_isomorphism(m.graph(), pm.graph(), &perm).unwrap());
        for (x, y) in m.graph().edges() {
            prop_assert!(pm.graph().has_edge(perm[x], perm[y]));
        }
    }

    #[test]
    fn table_round_trip((a, s) in fuzz_instance()) {
        let t = MultiplicativeTable::from_algebra(&a, &s).unwrap();
        prop_assert_eq!(t.to_tensor(a.field()), a.tensor());
    }

    #[test]
    fn routes_agree_on_fuzz((a, s) in fuzz_instance()) {
        let m = MultiplicativeAlgebra::new(a, s).unwrap();
        let v = m.check_minimality(Some(16)).unwrap();
        prop_assert_eq!(v.via_oracle, Some(v.minimal));
        prop_assert!(m.reachability_mismatches().unwrap().is_empty());
        prop_assert!(m.weak_division_matches_graph());
        prop_assert!(m.check_ideal_absorption_props(16).unwrap().holds());
        let d = m.decompose().unwrap();
        for part in &d.parts {
            let (sub, split) = m.restrict_to(part).unwrap();
            let sub = LeibnizAlgebra::new(sub.field(), sub.labels().to_vec(), sub.tensor().to_vec()).unwrap();
            prop_assert!(sub.validate_split(&split));
        }
    }

    #[test]
    fn direct_sum_graph_is_disjoint_union((a, s) in fuzz_instance(), (b, t) in fuzz_instance()) {
        let (c, u) = direct_sum(&a, &s, &b, &t).unwrap();
        let (ma, mb, mc) = (
            MultiplicativeAlgebra::new(a.clone(), s).unwrap(),
            MultiplicativeAlgebra::new(b, t).unwrap(),
            MultiplicativeAlgebra::new(c, u).unwrap(),
        );
        let off = a.dim();
        let mut expected: Vec<(usize, usize)> = ma.graph().edges().collect();
        expected.extend(mb.graph().edges().map(|(x, y)| (x + off, y + off)));
        expected.sort_unstable();
        prop_assert_eq!(mc.graph().edges().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn change_basis_keeps_leibniz_and_kernel_dim((a, _) in fuzz_instance(), cols in prop::collection::vec(prop::collection::vec(gf(5), 4), 4)) {
        let n = a.dim();
        let cols: Vec<Vector> = cols.into_iter().take(n).map(|c| c.into_iter().take(n).collect()).collect();
        let f = LinearMap::from_columns(a.field(), cols).unwrap();
        prop_assume!(f.is_invertible());
        let b = change_basis(&a, &f, None).unwrap();
        prop_assert!(b.check_leibniz().is_empty());
        prop_assert_eq!(b.leibniz_kernel().unwrap().rank(), a.leibniz_kernel().unwrap().rank());
    }
}

/// Every basis-permuting automorphism of a small accepted instance induces a
/// graph isomorphism and a decomposition correspondence.
#[test]
fn permutation_automorphisms_induce_equivalences() {
    let mut automorphisms = 0;
    for (seed, a, s) in fuzz_batch(40_000, 300, 4, Field::Prime(5), 100_000) {
        let m = MultiplicativeAlgebra::new(a.clone(), s).unwrap();
        let d = m.decompose().unwrap();
        for perm in permutations(a.dim()) {
            let f = LinearMap::permutation(a.field(), &perm).unwrap();
            if !is_automorphism(&a, &f).unwrap() {
                continue;
            }
            automorphisms += 1;
            let bij = maps_standard_basis(&f).unwrap();
            assert!(induced_graph_isomorphism(m.graph(), m.graph(), &bij).unwrap(), "seed {seed} {perm:?}");
            assert!(decomposition_correspondence(&d, &d, &bij).unwrap().is_some(), "seed {seed} {perm:?}");
            let changed = change_basis(&a, &f, Some(a.labels().to_vec())).unwrap();
            let cm = MultiplicativeAlgebra::infer(changed).unwrap();
            let id: Vec<usize> = (0..a.dim()).collect();
            assert!(induced_graph_isomorphism(m.graph(), cm.graph(), &id).unwrap(), "seed {seed} {perm:?}");
        }
    }
    assert!(automorphisms > 300);
}
