use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::sample::Index;
use turan_core::invariants::*;
use turan_core::isomorphism::{are_isomorphic, canonical_form, canonical_labeling};
use turan_core::system::binomial;
use turan_core::*;

fn arb_system(max_n: usize) -> impl Strategy<Value = TripleSystem> {
    (3..=max_n).prop_flat_map(|n| {
        let total = binomial(n, 3) as usize;
        proptest::collection::vec(any::<bool>(), total).prop_map(move |keep| {
            let all = TripleSystem::complete(n).unwrap().triples();
            let chosen = all
                .into_iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(t, _)| t);
            TripleSystem::from_triples(n, chosen).unwrap()
        })
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn arb_relabelled(max_n: usize) -> impl Strategy<Value = (TripleSystem, Vec<usize>)> {
    arb_system(max_n).prop_flat_map(|ts| {
        let n = ts.n();
        (Just(ts), arb_perm(n))
    })
}

/// A construction complex with at most `max_n` vertices and a relabelling of it.
fn arb_construction(min_n: usize, max_n: usize) -> impl Strategy<Value = (Layout, Vec<usize>)> {
    (min_n..=max_n, any::<Index>()).prop_flat_map(|(n, idx)| {
        let fam = enumerate_construction4(n).unwrap();
        let layout = fam[idx.index(fam.len())].clone();
        (Just(layout), arb_perm(n))
    })
}

fn brute_isomorphic(x: &TripleSystem, y: &TripleSystem) -> bool {
    let n = x.n();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if x.relabel(&perm).unwrap() == *y {
            return true;
        }
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn mapped(sets: impl IntoIterator<Item = VertexSet>, perm: &[usize]) -> BTreeSet<VertexSet> {
    sets.into_iter().map(|s| s.map(perm)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn system_text_round_trips(ts in arb_system(10)) {
        prop_assert_eq!(TripleSystem::parse(&ts.render()).unwrap(), ts);
    }

    #[test]
    fn counting_identities(ts in arb_system(10)) {
        let n = ts.n();
        let t = ts.triangle_count();
        prop_assert_eq!(t + ts.missing_triples().len(), binomial(n, 3) as usize);
        prop_assert_eq!(ts.degrees().iter().sum::<usize>(), 3 * t);
        prop_assert_eq!(ts.triples().len(), t);
    }

    #[test]
    fn k4_search_agrees_with_quadruple_scan(ts in arb_system(8)) {
        let n = ts.n();
        let mut any = false;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        any |= ts.has(a, b, c) && ts.has(a, b, d) && ts.has(a, c, d) && ts.has(b, c, d);
                    }
                }
            }
        }
        prop_assert_eq!(ts.find_k4().is_some(), any);
    }

    #[test]
    fn canonical_form_decides_isomorphism((x, perm) in arb_relabelled(6), flip in any::<Index>()) {
        let n = x.n();
        let y = x.relabel(&perm).unwrap();
        // Toggle one triple to get a usually non-isomorphic neighbour.
        let all = TripleSystem::complete(n).unwrap().triples();
        let t = all[flip.index(all.len())];
        let z = if y.contains(t) {
            TripleSystem::from_triples(n, y.triples().into_iter().filter(|&u| u != t)).unwrap()
        } else {
            y.with_triple(t).unwrap()
        };
        prop_assert_eq!(canonical_form(&x), canonical_form(&y));
        prop_assert_eq!(canonical_form(&x) == canonical_form(&z), brute_isomorphic(&x, &z));
    }

    #[test]
    fn witness_is_sound((x, perm) in arb_relabelled(9)) {
        let y = x.relabel(&perm).unwrap();
        let w = are_isomorphic(&x, &y);
        prop_assert!(w.is_some());
        prop_assert_eq!(x.relabel(&w.unwrap()).unwrap(), y);
    }

    #[test]
    fn canonical_labeling_produces_form(x in arb_system(9)) {
        let (form, lab) = canonical_labeling(&x);
        prop_assert_eq!(x.relabel(&lab).unwrap(), form.system());
        prop_assert_eq!(canonical_form(&form.system()), form);
    }

    #[test]
    fn construction_canonical_forms_are_relabel_invariant((layout, perm) in arb_construction(7, 11)) {
        let ts = complex_from_layout(&layout);
        let other = ts.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_form(&ts), canonical_form(&other));
        let w = are_isomorphic(&ts, &other).unwrap();
        prop_assert_eq!(ts.relabel(&w).unwrap(), other);
    }

    #[test]
    fn invariants_are_relabel_invariant((layout, perm) in arb_construction(6, 11)) {
        let ts = complex_from_layout(&layout);
        let other = ts.relabel(&perm).unwrap();
        let a = InvariantTower::compute(&ts);
        let b = InvariantTower::compute(&other);
        prop_assert_eq!(mapped(a.clusters.iter().map(|c| c.members), &perm), b.cluster_sets());
        let cores_a: BTreeSet<(VertexSet, usize)> =
            a.cores.iter().map(|c| (c.members.map(&perm), c.defining_size)).collect();
        let cores_b: BTreeSet<(VertexSet, usize)> =
            b.cores.iter().map(|c| (c.members, c.defining_size)).collect();
        prop_assert_eq!(cores_a, cores_b);
        prop_assert_eq!(
            mapped(a.unions.iter().map(|u| u.members), &perm),
            b.unions.iter().map(|u| u.members).collect::<BTreeSet<_>>()
        );
        prop_assert_eq!(mapped(a.proper_legs(), &perm), b.proper_legs());
        let feet_a: BTreeSet<(VertexSet, VertexSet)> =
            a.feet.iter().map(|f| (f.leg.map(&perm), f.foot.map(&perm))).collect();
        let feet_b: BTreeSet<(VertexSet, VertexSet)> = b.feet.iter().map(|f| (f.leg, f.foot)).collect();
        prop_assert_eq!(feet_a, feet_b);
        prop_assert_eq!(fingerprint(&ts), fingerprint(&other));
        let n = ts.n();
        for u in 0..n {
            for v in u + 1..n {
                prop_assert_eq!(
                    indistinguishable(&ts, u, v).unwrap(),
                    indistinguishable(&other, perm[u], perm[v]).unwrap()
                );
            }
        }
    }

    #[test]
    fn arbitrary_clusters_are_free_and_maximal(ts in arb_system(9)) {
        let n = ts.n();
        for c in empty_clusters(&ts) {
            prop_assert!(3 * c.size() > n);
            let vs = c.members.to_vec();
            let free = |s: &[usize]| {
                s.iter().enumerate().all(|(i, &a)| {
                    s[i + 1..].iter().enumerate().all(|(j, &b)| s[i + j + 2..].iter().all(|&d| !ts.has(a, b, d)))
                })
            };
            prop_assert!(free(&vs));
            for v in (0..n).filter(|&v| !c.members.contains(v)) {
                let mut bigger = vs.clone();
                bigger.push(v);
                prop_assert!(!free(&bigger));
            }
        }
    }
}
