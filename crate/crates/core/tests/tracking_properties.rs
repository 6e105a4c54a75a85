use mirror_stokes::geometry::{critical_data, direction_report, LaurentPoly, PiPhase, RootFinderConfig};
use mirror_stokes::tracking::{generates, is_transitive, lift_path, monodromy_data, MonodromyData, Permutation, TrackConfig};
use proptest::prelude::*;

fn run(a: u32, b: u32, phase: &PiPhase, cfg: &TrackConfig) -> Option<MonodromyData> {
    let f = LaurentPoly::mirror(a, b);
    let crit = critical_data(&f, &cfg.roots).unwrap();
    // inadmissible directions are skipped, not failures
    let frame = direction_report(&crit.sigma(), phase).ok()?;
    Some(monodromy_data(&f, &crit, &frame, cfg).unwrap())
}

fn weights() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((1, 1)), Just((1, 2)), Just((2, 1)), Just((1, 3)), Just((2, 3)), Just((3, 2)), Just((1, 4)), Just((3, 4))]
}

fn phase() -> impl Strategy<Value = PiPhase> {
    (-12i64..12, prop_oneof![Just(7i64), Just(9), Just(11), Just(13)]).prop_map(|(p, q)| PiPhase::new(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn monodromy_invariants((a, b) in weights(), phase in phase()) {
        let Some(data) = run(a, b, &phase, &TrackConfig::default()) else { return Ok(()); };
        let n = (a + b) as usize;
        let gens: Vec<Permutation> = data.loops.iter().map(|l| l.permutation.clone()).collect();
        prop_assert_eq!(gens.len(), n);
        for g in &gens {
            // one simple critical point per value: a transposition
            prop_assert!(g.as_transposition().is_some(), "{:?}", g);
            prop_assert!(g.after(g).is_identity());
            prop_assert_eq!(g.after(&g.inverse()), Permutation::identity(n));
        }
        prop_assert!(is_transitive(n, &gens));
        let mut expected = vec![a.max(b) as usize, a.min(b) as usize];
        expected.retain(|&k| k > 0);
        prop_assert_eq!(data.infinity.cycle_type(), expected);
        prop_assert_eq!(generates(&gens, &data.infinity, 100_000), Some(true));
        for h in &data.halflines {
            // every lift starts at one point; the double point takes two of them
            prop_assert_eq!((h.b.rows(), h.b.cols()), (n, n - 1));
            let rows = h.b.to_rows();
            prop_assert!(rows.iter().all(|r| r.iter().sum::<i64>() == 1));
            let mut hits: Vec<i64> = (0..n - 1).map(|c| rows.iter().map(|r| r[c]).sum()).collect();
            hits.sort_unstable();
            let mut expected = vec![1; n - 1];
            expected[n - 2] = 2;
            prop_assert_eq!(hits, expected);
        }
    }

    #[test]
    fn halving_steps_changes_nothing((a, b) in weights(), phase in phase()) {
        let Some(coarse) = run(a, b, &phase, &TrackConfig::default()) else { return Ok(()); };
        let fine_cfg = TrackConfig { step_scale: 0.5, ..TrackConfig::default() };
        let fine = run(a, b, &phase, &fine_cfg).unwrap();
        prop_assert_eq!(&coarse.infinity, &fine.infinity);
        for (c, f) in coarse.loops.iter().zip(&fine.loops) {
            prop_assert_eq!(&c.permutation, &f.permutation);
            prop_assert!(f.stats.steps > c.stats.steps);
        }
        for (c, f) in coarse.halflines.iter().zip(&fine.halflines) {
            prop_assert_eq!(&c.b, &f.b);
        }
    }
}

#[test]
fn loop_lifts_return_to_the_base_fiber() {
    let f = LaurentPoly::mirror(1, 3);
    let cfg = TrackConfig::default();
    let crit = critical_data(&f, &RootFinderConfig::default()).unwrap();
    let frame = direction_report(&crit.sigma(), &PiPhase::new(1, 8)).unwrap();
    let data = monodromy_data(&f, &crit, &frame, &cfg).unwrap();
    for l in &data.loops {
        let lift = lift_path(&f, &l.plan, &data.labeling.sheets, &cfg).unwrap();
        for (p, q) in lift.end.points.iter().zip(&data.labeling.sheets.points) {
            assert!((p.z - q.z).norm() < 1e-9);
        }
        assert_eq!(lift.correspondence, l.permutation.images());
    }
}
