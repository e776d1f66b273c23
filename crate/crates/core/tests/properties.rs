use proptest::prelude::*;

use nofil::bounds::{class_counts, lemma1_bounds};
use nofil::design::io::{parse_certificate, parse_sts, write_certificate, write_sts};
use nofil::design::{canonical_form, find_paschs, fixtures, graph_family, pasch_switch, GraphFamily, LabeledGraph};
use nofil::game::{self, GameState};
use nofil::search::{self, SearchConfig};
use nofil::skolem::{self, SequenceKind};

fn random_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let m = pairs.len();
        (Just(n), Just(pairs), prop::collection::vec(any::<bool>(), m))
    })
    .prop_map(|(n, pairs, keep)| {
        let edges = pairs.into_iter().zip(keep).filter(|x| x.1).map(|x| x.0);
        LabeledGraph::numbered(n, edges).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_sum_to_block_total(p in 0u64..30, a in 0u64..20, u in 0u64..40, e_frac in 0.0f64..=1.0) {
        let e = (e_frac * (a * a.saturating_sub(1) / 2) as f64) as u64;
        if let Some(c) = class_counts(p, a, u, e) {
            let v = p + a + u;
            prop_assert_eq!(c.total() * 3, v * v.saturating_sub(1) / 2);
        }
    }

    #[test]
    fn feasible_counts_pass_counting_bounds(p in 0u64..30, a in 1u64..20, u in 0u64..40, e_frac in 0.0f64..=1.0) {
        let e = (e_frac * (a * (a - 1) / 2) as f64) as u64;
        if class_counts(p, a, u, e).is_some() {
            let failed = lemma1_bounds(p + a + u, a, u, e, 0, 0).failed();
            prop_assert!(failed.iter().all(|id| !(3..=7).contains(id) && *id < 9), "{:?}", failed);
        }
    }

    #[test]
    fn canonical_form_ignores_relabelling(g in random_graph(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = LabeledGraph::numbered(g.n(), g.edges().iter().map(|&(x, y)| (perm[x], perm[y]))).unwrap();
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
    }

    #[test]
    fn hillclimb_output_is_steiner_and_reproducible(k in 0usize..6, seed in any::<u64>()) {
        let v = [7u64, 9, 13, 15, 19, 21][k];
        let cfg = SearchConfig { seed, ..SearchConfig::default() };
        let ts = search::hillclimb_sts(v, &cfg).unwrap();
        prop_assert!(ts.is_sts());
        prop_assert_eq!(write_sts(&ts), write_sts(&search::hillclimb_sts(v, &cfg).unwrap()));
        prop_assert_eq!(write_sts(&parse_sts(&write_sts(&ts)).unwrap()), write_sts(&ts));
    }

    #[test]
    fn pasch_switch_is_an_involution(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let ts = search::hillclimb_sts(15, &SearchConfig { seed, ..SearchConfig::default() }).unwrap();
        let paschs = find_paschs(&ts);
        prop_assume!(!paschs.is_empty());
        let pc = &paschs[pick.index(paschs.len())];
        let once = pasch_switch(&ts, pc).unwrap();
        prop_assert!(once.is_sts());
        let back = pasch_switch(&once, &pc.image()).unwrap();
        let mut x = back.blocks().to_vec();
        let mut y = ts.blocks().to_vec();
        x.sort();
        y.sort();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn random_play_keeps_roles_consistent(moves in prop::collection::vec(any::<prop::sample::Index>(), 0..9)) {
        let ts = fixtures::sts9();
        let mut s: GameState = game::new_game(&ts).unwrap();
        for m in moves {
            let legal = s.legal_moves();
            if legal.is_empty() {
                break;
            }
            s = s.play(legal[m.index(legal.len())]).unwrap();
            for b in ts.blocks() {
                let played = b.points().iter().filter(|x| s.played().contains(x)).count();
                prop_assert!(played < 3);
                if played == 2 {
                    let rest = b.points().into_iter().find(|x| !s.played().contains(x)).unwrap();
                    prop_assert!(s.unplayable().contains(&rest));
                }
            }
        }
        if let Some(g) = s.graph() {
            prop_assert_eq!(g.n(), s.available().len());
        }
    }

    #[test]
    fn generated_sequences_validate(k in 0usize..5, t in 1u32..16, d in 1u32..4) {
        let kind = SequenceKind::ALL[k];
        let d = if kind.has_defect() { d } else { 1 };
        match skolem::generate(kind, t, d, 3) {
            Ok(s) => prop_assert!(s.is_valid()),
            Err(_) => prop_assert!(!skolem::exists(kind, t, d)),
        }
    }
}

#[test]
fn certificate_round_trip() {
    let cert = nofil::constructions::embed_complete(5).unwrap();
    let text = write_certificate(&cert);
    assert_eq!(write_certificate(&parse_certificate(&text).unwrap()), text);
    let g = graph_family(GraphFamily::Complete, 5).unwrap();
    assert_eq!(canonical_form(&cert.graph).unwrap(), canonical_form(&g).unwrap());
}
