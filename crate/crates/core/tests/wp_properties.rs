use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use triangles_core::effect::Rat;
use triangles_core::wp::{
    denote_dist, denote_pow, eval, parse, post_predicate, random_program, wp, Flavor, GenConfig, Mode, Predicate,
    Program, StateSpace,
};

fn small_program(seed: u64, mode: Mode) -> Program {
    let cfg = GenConfig {
        max_hi: 4,
        ..GenConfig::new(mode)
    };
    random_program(&mut ChaCha8Rng::seed_from_u64(seed), &cfg)
}

fn post_of(p: &Program, mode: Mode) -> (StateSpace, Predicate) {
    let space = StateSpace::of(p).unwrap();
    let post = post_predicate(&space, p.post.as_ref().unwrap(), mode).unwrap();
    (space, post)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn printed_programs_reparse(seed in any::<u64>(), pow in any::<bool>()) {
        let mode = if pow { Mode::Pow } else { Mode::Dist };
        let p = small_program(seed, mode);
        prop_assert_eq!(parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn set_wp_matches_reachable_states(seed in any::<u64>()) {
        let p = small_program(seed, Mode::Pow);
        let (space, post) = post_of(&p, Mode::Pow);
        let holds = |t: usize| eval(p.post.as_ref().unwrap(), &space.env(t)).unwrap().truth();
        let g = denote_pow(&p).unwrap();
        let demonic = wp(&p, Flavor::Demonic, &post).unwrap();
        let angelic = wp(&p, Flavor::Angelic, &post).unwrap();
        for s in 0..space.len() {
            let reach: Vec<usize> = g.apply(s).iter().collect();
            let all = reach.iter().all(|&t| holds(t));
            let some = reach.iter().any(|&t| holds(t));
            prop_assert_eq!(demonic.value(s), Rat::from_integer(i64::from(all).into()));
            prop_assert_eq!(angelic.value(s), Rat::from_integer(i64::from(some).into()));
        }
    }

    #[test]
    fn expectation_is_a_weighted_average(seed in any::<u64>()) {
        let p = small_program(seed, Mode::Dist);
        let (space, post) = post_of(&p, Mode::Dist);
        let g = denote_dist(&p).unwrap();
        let pre = wp(&p, Flavor::Expectation, &post).unwrap();
        for s in 0..space.len() {
            let mut total = Rat::from_integer(0.into());
            for (t, w) in g.apply(s).support() {
                total += w * post.value(t);
            }
            prop_assert_eq!(pre.value(s), total);
        }
    }

    #[test]
    fn demonic_below_angelic_when_total(seed in any::<u64>()) {
        let p = small_program(seed, Mode::Pow);
        prop_assume!(!p.body.contains_abort());
        let (space, post) = post_of(&p, Mode::Pow);
        let demonic = wp(&p, Flavor::Demonic, &post).unwrap();
        let angelic = wp(&p, Flavor::Angelic, &post).unwrap();
        for s in 0..space.len() {
            prop_assert!(demonic.value(s) <= angelic.value(s));
        }
    }
}

#[test]
fn coin_flip_with_a_biased_branch() {
    let p = parse("vars x in 0..1; body: prob 1/3 { x := 0 } { x := 1 }; post: [x == 1]").unwrap();
    let (_, post) = post_of(&p, Mode::Dist);
    let pre = wp(&p, Flavor::Expectation, &post).unwrap();
    assert_eq!(pre.render_value(0), "2/3");
    assert_eq!(pre.render_value(1), "2/3");
}

#[test]
fn abort_separates_the_flavors() {
    let p = parse("vars x in 0..1; body: if x == 0 { abort } else { skip }; post: true").unwrap();
    let (_, post) = post_of(&p, Mode::Pow);
    let demonic = wp(&p, Flavor::Demonic, &post).unwrap();
    let angelic = wp(&p, Flavor::Angelic, &post).unwrap();
    assert_eq!((demonic.render_value(0), demonic.render_value(1)), ("1/1".into(), "1/1".into()));
    assert_eq!((angelic.render_value(0), angelic.render_value(1)), ("0/1".into(), "1/1".into()));
}
