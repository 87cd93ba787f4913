//! Acceptance suite: one line per criterion, nonzero exit if any required
//! criterion fails. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use turan_core::construction::{all_layouts, color_sets_balanced, is_exceptional_construction};
use turan_core::invariants::*;
use turan_core::isomorphism::{are_isomorphic, canonical_form};
use turan_core::search::{density, min_missing_cover, SearchConfig};
use turan_core::*;

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn family(n: usize) -> Vec<(Layout, TripleSystem)> {
    enumerate_construction4(n)
        .unwrap()
        .into_iter()
        .map(|l| {
            let ts = complex_from_layout(&l);
            (l, ts)
        })
        .collect()
}

fn enumeration_cardinalities() -> Check {
    let expected = [
        (7, 3),
        (8, 6),
        (9, 2),
        (10, 18),
        (11, 36),
        (12, 4),
        (13, 108),
        (14, 216),
    ];
    for (n, count) in expected {
        let start = Instant::now();
        let got = enumerate_construction4(n).map_err(|e| e.to_string())?.len();
        let took = start.elapsed();
        ensure(got == count, || {
            format!("n={n}: {got} complexes, expected {count}")
        })?;
        ensure(took < Duration::from_secs(1), || {
            format!("n={n} took {took:?}")
        })?;
    }
    Ok(())
}

fn bound_attainment() -> Check {
    for (n, t) in [(7, 23), (8, 36), (13, 174), (14, 220)] {
        ensure(conjectured_max(n) == Ok(t), || {
            format!("conjectured_max({n}) != {t}")
        })?;
    }
    for n in 3..=14 {
        let target = conjectured_max(n).unwrap() as usize;
        for (l, ts) in family(n) {
            ensure(ts.triangle_count() == target, || {
                format!(
                    "n={n}: {} triangles, expected {target}\n{l}",
                    ts.triangle_count()
                )
            })?;
        }
    }
    Ok(())
}

fn non_isomorphism() -> Check {
    for n in 3..=14 {
        let systems: Vec<TripleSystem> = family(n).into_iter().map(|(_, ts)| ts).collect();
        let classes = iso_classes(&systems).len();
        ensure(classes == systems.len(), || {
            format!("n={n}: {classes} classes among {} complexes", systems.len())
        })?;
    }
    Ok(())
}

fn small_case_fingerprints() -> Check {
    let mut elevens: Vec<usize> = family(7)
        .iter()
        .map(|(_, ts)| ts.degrees().iter().filter(|&&d| d == 11).count())
        .collect();
    elevens.sort_unstable();
    ensure(elevens == [0, 1, 2], || {
        format!("n=7 eleven-counts {elevens:?}")
    })?;

    let records: Vec<InvariantRecord> = family(8).iter().map(|(_, ts)| fingerprint(ts)).collect();
    let mut fours: Vec<usize> = records
        .iter()
        .map(|r| r.cluster_sizes.get(&4).copied().unwrap_or(0))
        .collect();
    fours.sort_unstable_by(|a, b| b.cmp(a));
    ensure(fours == [5, 4, 3, 3, 3, 3], || {
        format!("n=8 four-cluster counts {fours:?}")
    })?;

    let mut pairs: Vec<Vec<usize>> = records
        .iter()
        .filter(|r| r.cluster_sizes.get(&4) == Some(&3))
        .map(|r| {
            let mut p = r.distinguished_degrees.clone();
            p.sort_unstable_by(|a, b| b.cmp(a));
            p
        })
        .collect();
    pairs.sort_unstable_by(|a, b| b.cmp(a));
    let expected = vec![vec![15, 14], vec![14, 14], vec![14, 13], vec![13, 13]];
    ensure(pairs == expected, || {
        format!("n=8 distinguished pairs {pairs:?}")
    })
}

fn invariant_oracles() -> Check {
    for n in 3..=11 {
        let k = n / 3;
        for (l, ts) in family(n) {
            let tower = InvariantTower::compute(&ts);
            let predicted: BTreeSet<VertexSet> = predict_empty_clusters(&l).into_iter().collect();
            ensure(tower.cluster_sets() == predicted, || {
                format!("clusters differ\n{l}")
            })?;
            if k < 3 || is_exceptional_construction(&l) {
                continue;
            }
            let cores: BTreeSet<EmptyCore> = tower.cores.iter().copied().collect();
            let want: BTreeSet<EmptyCore> = predict_empty_cores(&l).into_iter().collect();
            ensure(cores == want, || format!("cores differ\n{l}"))?;
            let unions: BTreeSet<VertexSet> = tower.unions.iter().map(|u| u.members).collect();
            let want: BTreeSet<VertexSet> = predict_empty_unions(&l).into_iter().collect();
            ensure(unions == want, || format!("unions differ\n{l}"))?;
            let want: BTreeSet<VertexSet> = predict_column_legs(&l)
                .into_iter()
                .filter(|s| s.len() >= 2)
                .collect();
            ensure(tower.proper_legs() == want, || format!("legs differ\n{l}"))?;
            for f in tower.feet.iter().filter(|f| f.leg.len() >= 2) {
                let bottom = f.leg.min().unwrap();
                let want: VertexSet = f
                    .leg
                    .iter()
                    .filter(|&v| v == bottom || indistinguishable(&ts, v, bottom).unwrap())
                    .collect();
                ensure(f.foot == want, || {
                    format!("foot of {:?} differs\n{l}", f.leg)
                })?;
            }
        }
    }
    for (n, want) in [(10, vec![2, 3, 4]), (11, vec![3, 3, 4])] {
        let (_, ts) = family(n)
            .into_iter()
            .find(|(l, _)| is_exceptional_construction(l))
            .ok_or_else(|| format!("no exceptional construction at n={n}"))?;
        let mut sizes: Vec<usize> = InvariantTower::compute(&ts)
            .proper_legs()
            .iter()
            .map(|s| s.len())
            .collect();
        sizes.sort_unstable();
        ensure(sizes == want, || {
            format!("n={n} exceptional leg sizes {sizes:?}")
        })?;
    }
    Ok(())
}

fn bound_iff_balanced_color_sets() -> Check {
    for n in 3..=11 {
        let target = conjectured_max(n).unwrap() as usize;
        for l in all_layouts(n).unwrap() {
            let attains = complex_from_layout(&l).triangle_count() == target;
            ensure(attains == color_sets_balanced(&l), || {
                format!("attains={attains} balanced={}\n{l}", !attains)
            })?;
        }
    }
    Ok(())
}

fn maximality() -> Check {
    for n in 3..=14 {
        for (l, ts) in family(n) {
            ensure(ts.is_maximal_k4_free() == Ok(true), || {
                format!("not maximal K4-free\n{l}")
            })?;
        }
    }
    Ok(())
}

fn search_classes(
    n: usize,
    budget: Duration,
    m: usize,
    t: u64,
    expected: BTreeSet<CanonicalForm>,
) -> Check {
    let config = SearchConfig {
        budget: Some(budget),
        jobs: None,
    };
    let (outcome, _) = min_missing_cover(n, config).map_err(|e| e.to_string())?;
    let r = outcome
        .complete()
        .ok_or_else(|| format!("n={n}: budget exceeded"))?;
    ensure((r.m, r.t) == (m, t), || {
        format!("n={n}: m={} t={}", r.m, r.t)
    })?;
    let found: BTreeSet<CanonicalForm> = r.classes.iter().cloned().collect();
    ensure(found.len() == expected.len(), || {
        format!(
            "n={n}: {} classes, expected {}",
            found.len(),
            expected.len()
        )
    })?;
    ensure(found == expected, || {
        format!("n={n}: class list differs from expectation")
    })
}

fn search_seven() -> Check {
    let mut expected: BTreeSet<CanonicalForm> =
        family(7).iter().map(|(_, ts)| canonical_form(ts)).collect();
    expected.insert(canonical_form(&exceptional_complex7()));
    search_classes(7, Duration::from_secs(600), 12, 23, expected)
}

fn search_eight() -> Check {
    let expected: BTreeSet<CanonicalForm> =
        family(8).iter().map(|(_, ts)| canonical_form(ts)).collect();
    search_classes(8, Duration::from_secs(7200), 20, 36, expected)
}

fn monotonicity() -> Check {
    let mut values = Vec::new();
    for n in 4..=7 {
        let (outcome, _) =
            min_missing_cover(n, SearchConfig::default()).map_err(|e| e.to_string())?;
        let r = outcome.complete().ok_or("budget exceeded")?;
        values.push((n, r.t));
    }
    values.push((8, conjectured_max(8).unwrap()));
    ensure(ratio_monotonicity_check(&values) == Ok(true), || {
        format!("not monotone: {values:?}")
    })?;
    values.push((9, conjectured_max(9).unwrap()));
    ensure(ratio_monotonicity_check(&values) == Ok(true), || {
        "not monotone with n=9".into()
    })?;
    ensure(density(8, 36) == density(9, 54), || "36/56 != 54/84".into())?;
    ensure(
        ratio_monotonicity_check(&[(6, 14), (7, 25)]) == Ok(false),
        || "violation not detected".into(),
    )
}

fn mapped(sets: impl IntoIterator<Item = VertexSet>, perm: &[usize]) -> BTreeSet<VertexSet> {
    sets.into_iter().map(|s| s.map(perm)).collect()
}

fn property_suites() -> Check {
    let mut rng = StdRng::seed_from_u64(0x7ec4);
    let mut targets: Vec<TripleSystem> = vec![exceptional_complex7()];
    for n in [6, 7, 8, 9, 10, 11] {
        targets.extend(family(n).into_iter().map(|(_, ts)| ts).take(6));
    }
    for ts in &targets {
        let n = ts.n();
        let tower = InvariantTower::compute(ts);
        let record = fingerprint_of(ts, &tower);
        let form = canonical_form(ts);
        ensure(TripleSystem::parse(&ts.render()).as_ref() == Ok(ts), || {
            "system round trip".into()
        })?;
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let other = ts.relabel(&perm).unwrap();
            let t2 = InvariantTower::compute(&other);
            ensure(
                mapped(tower.cluster_sets(), &perm) == t2.cluster_sets(),
                || "clusters".into(),
            )?;
            let c1: BTreeSet<(VertexSet, usize)> = tower
                .cores
                .iter()
                .map(|c| (c.members.map(&perm), c.defining_size))
                .collect();
            let c2: BTreeSet<(VertexSet, usize)> = t2
                .cores
                .iter()
                .map(|c| (c.members, c.defining_size))
                .collect();
            ensure(c1 == c2, || "cores".into())?;
            let u2: BTreeSet<VertexSet> = t2.unions.iter().map(|u| u.members).collect();
            ensure(
                mapped(tower.unions.iter().map(|u| u.members), &perm) == u2,
                || "unions".into(),
            )?;
            ensure(
                mapped(tower.proper_legs(), &perm) == t2.proper_legs(),
                || "legs".into(),
            )?;
            let f1: BTreeSet<(VertexSet, VertexSet)> = tower
                .feet
                .iter()
                .map(|f| (f.leg.map(&perm), f.foot.map(&perm)))
                .collect();
            let f2: BTreeSet<(VertexSet, VertexSet)> =
                t2.feet.iter().map(|f| (f.leg, f.foot)).collect();
            ensure(f1 == f2, || "feet".into())?;
            ensure(fingerprint_of(&other, &t2) == record, || {
                "fingerprint".into()
            })?;
            ensure(canonical_form(&other) == form, || "canonical form".into())?;
            let w = are_isomorphic(ts, &other).ok_or("relabelled copy not isomorphic")?;
            ensure(ts.relabel(&w).unwrap() == other, || {
                "witness unsound".into()
            })?;
        }
    }
    for n in 3..=9 {
        for l in all_layouts(n).unwrap() {
            ensure(Layout::parse(&l.render()).as_ref() == Ok(&l), || {
                format!("layout round trip\n{l}")
            })?;
        }
    }
    // every positive verdict among a family and its relabelled copies carries a sound witness
    let systems: Vec<TripleSystem> = family(10).into_iter().map(|(_, ts)| ts).collect();
    for x in &systems {
        let mut perm: Vec<usize> = (0..10).collect();
        perm.shuffle(&mut rng);
        let x2 = x.relabel(&perm).unwrap();
        for y in &systems {
            if let Some(w) = are_isomorphic(&x2, y) {
                ensure(x2.relabel(&w).unwrap() == *y, || "witness unsound".into())?;
                ensure(x == y, || {
                    "distinct constructions reported isomorphic".into()
                })?;
            }
        }
    }
    Ok(())
}

struct Criterion {
    id: &'static str,
    name: &'static str,
    limit: Duration,
    run: fn() -> Check,
    required: bool,
}

fn main() -> ExitCode {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let criteria = [
        Criterion {
            id: "1",
            name: "enumeration cardinalities",
            limit: minutes(1),
            run: enumeration_cardinalities,
            required: true,
        },
        Criterion {
            id: "2",
            name: "bound attainment k<=4",
            limit: Duration::from_secs(10),
            run: bound_attainment,
            required: true,
        },
        Criterion {
            id: "3",
            name: "pairwise non-isomorphism k<=4",
            limit: minutes(5),
            run: non_isomorphism,
            required: true,
        },
        Criterion {
            id: "4",
            name: "n=7 and n=8 fingerprints",
            limit: Duration::from_secs(10),
            run: small_case_fingerprints,
            required: true,
        },
        Criterion {
            id: "5",
            name: "invariant oracle agreement n<=11",
            limit: minutes(2),
            run: invariant_oracles,
            required: true,
        },
        Criterion {
            id: "6",
            name: "bound iff balanced color sets k<=3",
            limit: minutes(5),
            run: bound_iff_balanced_color_sets,
            required: true,
        },
        Criterion {
            id: "7",
            name: "maximal K4-freeness k<=4",
            limit: minutes(1),
            run: maximality,
            required: true,
        },
        Criterion {
            id: "8",
            name: "exhaustive search n=7",
            limit: minutes(10),
            run: search_seven,
            required: true,
        },
        Criterion {
            id: "8s",
            name: "exhaustive search n=8 (stretch)",
            limit: minutes(120),
            run: search_eight,
            required: false,
        },
        Criterion {
            id: "9",
            name: "density monotonicity",
            limit: Duration::from_secs(10),
            run: monotonicity,
            required: true,
        },
        Criterion {
            id: "10",
            name: "property suites",
            limit: minutes(5),
            run: property_suites,
            required: true,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let took = start.elapsed();
        let verdict = match result {
            Ok(()) if took <= c.limit => Ok(()),
            Ok(()) => Err(format!("took {took:?}, limit {:?}", c.limit)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!("PASS [{}] {} ({:.2?})", c.id, c.name, took),
            Err(e) => {
                println!("FAIL [{}] {} ({:.2?}): {}", c.id, c.name, took, e);
                if c.required {
                    failed += 1;
                }
            }
        }
    }
    if failed > 0 {
        println!("{failed} required criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all required criteria passed");
        ExitCode::SUCCESS
    }
}
