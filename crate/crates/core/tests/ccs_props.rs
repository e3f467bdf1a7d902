mod common;

use std::collections::BTreeSet;

use common::*;
use opsem::ccs::{
    bisimilar_ccs, decompose, explore_lts, parse_defs, parse_process, transitions, weak_bisimilar_ccs, Act,
    CcsContext, CcsError, Defs, Process,
};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn printer_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let depth = r.gen_range(1..=7);
        let p = random_process(&mut r, depth);
        prop_assert_eq!(parse_process(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn transitions_match_naive_derivation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let defs = ccs_defs();
        let p = random_process(&mut r, 4);
        let got: BTreeSet<(String, String)> = transitions(&defs, &p)
            .unwrap()
            .into_iter()
            .map(|(a, q)| (a.to_string(), q.to_string()))
            .collect();
        prop_assert_eq!(got, naive_moves(&defs, &p));
    }

    #[test]
    fn restriction_hides_its_channel(seed in any::<u64>()) {
        let mut r = rng(seed);
        let defs = ccs_defs();
        let chan = ["a", "b"][r.gen_range(0..2)];
        let p = Process::res(chan, random_process(&mut r, 4));
        for (a, _) in transitions(&defs, &p).unwrap() {
            prop_assert_ne!(a.channel(), Some(chan));
        }
    }

    #[test]
    fn decompose_then_fill_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let depth = r.gen_range(1..=7);
        let p = random_process(&mut r, depth);
        let (ctx, leaf) = decompose(&p);
        prop_assert_eq!(ctx.fill(leaf.to_process()), p);
    }

    #[test]
    fn composed_contexts_fill_in_sequence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (outer, inner) = (random_context(&mut r, 3), random_context(&mut r, 3));
        let p = random_process(&mut r, 3);
        let composed = outer.compose(&inner);
        prop_assert_eq!(composed.fill(p.clone()), outer.fill(inner.fill(p)));
        prop_assert_eq!(composed.depth(), outer.depth() + inner.depth());
    }

    #[test]
    fn laws_agree_with_game_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let defs = ccs_defs();
        let (p, q, s) = (random_process(&mut r, 3), random_process(&mut r, 3), random_process(&mut r, 3));
        for (law, lhs, rhs) in law_pairs(&p, &q, &s) {
            prop_assert!(bisimilar_ccs(&defs, &lhs, &rhs, 500).unwrap(), "{}", law);
            let ex = explore_lts(&defs, &[lhs, rhs], 500).unwrap();
            prop_assert!(strong_oracle(&ex.lts).contains(&(ex.roots[0], ex.roots[1])), "{}", law);
        }
    }

    #[test]
    fn bisimilarity_agrees_with_game_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let defs = ccs_defs();
        let (p, q) = (random_process(&mut r, 3), random_process(&mut r, 3));
        let ex = explore_lts(&defs, &[p.clone(), q.clone()], 500).unwrap();
        let oracle = strong_oracle(&ex.lts).contains(&(ex.roots[0], ex.roots[1]));
        prop_assert_eq!(bisimilar_ccs(&defs, &p, &q, 500).unwrap(), oracle);
        let lts = ex.lts.with_alphabet([label("i")]);
        let weak = weak_oracle(&lts, "i").contains(&(ex.roots[0], ex.roots[1]));
        prop_assert_eq!(weak_bisimilar_ccs(&defs, &p, &q, 500).unwrap(), weak);
    }

    #[test]
    fn tau_prefix_is_weakly_invisible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random_process(&mut r, 3);
        let tp = Process::prefix(Act::Tau, p.clone());
        prop_assert!(weak_bisimilar_ccs(&ccs_defs(), &tp, &p, 500).unwrap());
    }
}

#[test]
fn complement_is_an_involution() {
    for a in [Act::name("a"), Act::coname("a"), Act::name("req")] {
        assert_eq!(a.co().and_then(|c| c.co()), Some(a.clone()));
        assert_ne!(a.co(), Some(a));
    }
    assert_eq!(Act::Tau.co(), None);
}

#[test]
fn defs_round_trip_through_their_printer() {
    let defs = parse_defs("# buffers\nBuf = put.'get.Buf\n\nCell = put.Full + 0\nFull = 'get.Cell\n").unwrap();
    assert_eq!(parse_defs(&defs.to_string()).unwrap(), defs);
}

#[test]
fn unguarded_recursion_is_reported() {
    for src in ["K = K\n", "K = a.0 + K\n", "K = L | 0\nL = new a in K\n"] {
        let defs = parse_defs(src).unwrap();
        let err = transitions(&defs, &Process::constant("K")).unwrap_err();
        assert!(matches!(err, CcsError::UnguardedRecursion(_)), "{src}: {err}");
    }
    let guarded = parse_defs("K = a.K + b.L\nL = tau.K\n").unwrap();
    assert_eq!(transitions(&guarded, &Process::constant("K")).unwrap().len(), 2);
}

#[test]
fn unbound_constants_are_reported_lazily() {
    let defs = Defs::new();
    let p = parse_process("a.Missing").unwrap();
    assert_eq!(transitions(&defs, &p).unwrap().len(), 1);
    let err = explore_lts(&defs, &[p], 10).unwrap_err();
    assert_eq!(err, CcsError::UnboundConstant("Missing".into()));
}

#[test]
fn growing_systems_hit_the_bound() {
    let defs = parse_defs("C = up.(C | down.0)\n").unwrap();
    let err = bisimilar_ccs(&defs, &Process::constant("C"), &Process::Nil, 40).unwrap_err();
    assert!(matches!(err, CcsError::BoundExceeded { limit: 40, .. }));
}

#[test]
fn congruence_example_contexts() {
    let defs = Defs::new();
    let (p, q) = (parse_process("a.0 | b.0").unwrap(), parse_process("a.b.0 + b.a.0").unwrap());
    let contexts = vec![
        CcsContext::Hole,
        CcsContext::ParL(Box::new(CcsContext::Hole), parse_process("'a.0").unwrap()),
        CcsContext::Res("a".into(), Box::new(CcsContext::SumR(parse_process("c.0").unwrap(), Box::new(CcsContext::Hole)))),
    ];
    let report = opsem::ccs::congruence_sample(&defs, &p, &q, &contexts, 1000).unwrap();
    assert!(report.holds());
    assert_eq!(report.checked, 3);
    let not = opsem::ccs::congruence_sample(&defs, &p, &Process::Nil, &contexts, 1000).unwrap_err();
    assert!(matches!(not, CcsError::NotBisimilar { .. }));
}
