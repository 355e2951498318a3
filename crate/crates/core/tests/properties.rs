use std::sync::Arc;

use fusionforge_core::goursat::{decompose, flip, reconstruct};
use fusionforge_core::gset::{deflate, find_isomorphism};
use fusionforge_core::{catalog, Biset, DirectProduct, GSet, Limits, PermGroup, Subgroup};
use proptest::prelude::*;

const SMALL: &[&str] = &["C1", "C2", "C3", "C4", "C2 x C2", "S3"];

fn group(i: usize) -> Arc<PermGroup> {
    Arc::new(catalog::parse(SMALL[i % SMALL.len()], &Limits::default()).unwrap())
}

fn pick(g: &PermGroup, i: usize) -> Subgroup {
    let subs = g.all_subgroups(&Limits::default()).unwrap();
    subs[i % subs.len()].clone()
}

fn product(a: &Arc<PermGroup>, b: &Arc<PermGroup>) -> Arc<DirectProduct> {
    Arc::new(DirectProduct::from_arcs(a.clone(), b.clone()))
}

/// `perm` applied to the points of `s`.
fn relabel(s: &GSet, perm: &[u32]) -> GSet {
    let mut inv = vec![0u32; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    GSet::from_fn(s.group().clone(), s.len(), |g, y| {
        perm[s.act(g, inv[y as usize]) as usize]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn goursat_round_trip(a in 0usize..6, b in 0usize..6, i in 0usize..1000) {
        let (ga, gb) = (group(a), group(b));
        let dp = DirectProduct::from_arcs(ga.clone(), gb.clone());
        let swapped = DirectProduct::from_arcs(gb, ga);
        let x = pick(&dp.group, i);
        let d = decompose(&dp, &x);
        prop_assert_eq!(&reconstruct(&dp, &d).unwrap(), &x);
        prop_assert_eq!(x.order(), d.p1x.order() * d.x2.order());
        prop_assert_eq!(x.order(), d.p2x.order() * d.x1.order());
        let y = flip(&dp, &swapped, &x);
        let e = decompose(&swapped, &y);
        prop_assert_eq!(e.x1.elements(), d.x2.elements());
        prop_assert_eq!(e.x2.elements(), d.x1.elements());
        prop_assert_eq!(flip(&swapped, &dp, &y), x);
    }

    #[test]
    fn biset_composition_is_associative(
        gs in proptest::array::uniform4(0usize..5),
        xs in proptest::array::uniform3(0usize..1000),
    ) {
        let [g, h, k, l] = gs.map(group);
        let u = Biset::cosets(product(&g, &h), &pick(&product(&g, &h).group, xs[0]));
        let v = Biset::cosets(product(&h, &k), &pick(&product(&h, &k).group, xs[1]));
        let w = Biset::cosets(product(&k, &l), &pick(&product(&k, &l).group, xs[2]));
        let gl = product(&g, &l);
        let left = u.compose(&v, product(&g, &k)).compose(&w, gl.clone());
        let right = u.compose(&v.compose(&w, product(&h, &l)), gl);
        prop_assert_eq!(left.set.len(), right.set.len());
        prop_assert!(find_isomorphism(&left.set, &right.set).is_some());
        prop_assert_eq!(left.set.orbits(), right.set.orbits());
    }

    #[test]
    fn dual_of_composite_is_composite_of_duals(gs in proptest::array::uniform3(0usize..6), xs in proptest::array::uniform2(0usize..1000)) {
        let [g, h, k] = gs.map(group);
        let u = Biset::cosets(product(&g, &h), &pick(&product(&g, &h).group, xs[0]));
        let v = Biset::cosets(product(&h, &k), &pick(&product(&h, &k).group, xs[1]));
        let kg = product(&k, &g);
        let dual_first = v.dualize().compose(&u.dualize(), kg.clone());
        let composite = u.compose(&v, product(&g, &k)).dualize();
        prop_assert!(find_isomorphism(&dual_first.set, &composite.set).is_some());
        prop_assert_eq!(dual_first.set.orbits(), composite.set.orbits());
        let twice = u.dualize().dualize();
        prop_assert_eq!(twice.set.table(), u.set.table());
    }

    #[test]
    fn relabelled_sets_are_isomorphic(a in 0usize..6, hs in proptest::collection::vec(0usize..1000, 1..4), seed in any::<u64>()) {
        let g = group(a);
        let mut s = GSet::cosets(g.clone(), &pick(&g, hs[0]));
        for &h in &hs[1..] {
            s = s.disjoint_union(&GSet::cosets(g.clone(), &pick(&g, h)));
        }
        let mut perm: Vec<u32> = (0..s.len() as u32).collect();
        let mut state = seed;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let t = relabel(&s, &perm);
        prop_assert!(t.is_action());
        let iso = find_isomorphism(&s, &t).unwrap();
        for e in 0..g.order() as u32 {
            for x in 0..s.len() as u32 {
                prop_assert_eq!(iso[s.act(e, x) as usize], t.act(e, iso[x as usize]));
            }
        }
        prop_assert_eq!(s.orbits(), t.orbits());
    }

    #[test]
    fn deflated_coset_space_has_index_of_hn(a in 0usize..6, i in 0usize..1000, j in 0usize..1000) {
        let g = group(a);
        let h = pick(&g, i);
        let normals: Vec<Subgroup> = g.all_subgroups(&Limits::default()).unwrap().into_iter().filter(|n| g.is_normal(n)).collect();
        let n = &normals[j % normals.len()];
        let (def, _) = deflate(&GSet::cosets(g.clone(), &h), n).unwrap();
        let hn = g.product_subgroup(&h, n);
        prop_assert_eq!(def.len() * hn.order(), g.order());
        prop_assert_eq!(def.orbits().orbit_count(), 1);
    }
}
