//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the process exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triangles_core::bitset::ElemSet;
use triangles_core::effect::{
    check_mv_identities, unit_grid, validate_effect_algebra, Distribution, FuzzyPredicate, PowersetEffect, Rat,
    UnitInterval,
};
use triangles_core::monads::expectation::{bind as e_bind, recover, unit as e_unit};
use triangles_core::monads::giry::{integral_of, measure_of};
use triangles_core::monads::{cba_collapse_check, sigma, LawConfig, Measure, MonadId, NKind, NeighbourhoodMonad};
use triangles_core::monads::{registry::run_laws, Monad};
use triangles_core::order::{catalog, FinPoset, FinSet};
use triangles_core::three::{lens_pairs, ThreeMaps};
use triangles_core::transformers::expectation::{random_distribution, random_predicate};
use triangles_core::transformers::plotkin::{three_backward, three_forward, PlotkinHomSetting};
use triangles_core::transformers::{expectation_kleisli, expectation_pred, round_trip_by_id, CorrespondenceId};
use triangles_core::wp::{check_healthiness, check_roundtrip, corpus, default_probes, Flavor, GenConfig, Mode, StateSpace};
use triangles_core::Strategy;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: triangles_core::Error) -> String {
    e.to_string()
}

fn subsets_of(mask: usize) -> impl Iterator<Item = usize> {
    (0..=mask).filter(move |s| s & !mask == 0)
}

/// Brute force: families `F ⊆ P(n)` encoded as bitmasks over subset masks.
fn families(n: usize, keep: impl Fn(&dyn Fn(usize) -> bool) -> bool) -> usize {
    let subsets = 1usize << n;
    (0u64..1 << subsets)
        .filter(|fam| keep(&|s: usize| fam >> s & 1 == 1))
        .count()
}

fn up_closed(n: usize, has: &dyn Fn(usize) -> bool) -> bool {
    let full = (1 << n) - 1;
    (0..=full).all(|a| !has(a) || (0..=full).filter(|b| a & b == a).all(has))
}

fn meet_closed(n: usize, has: &dyn Fn(usize) -> bool) -> bool {
    let full = (1 << n) - 1;
    (0..=full).all(|a| (0..=full).all(|b| !(has(a) && has(b)) || has(a & b)))
}

fn monad_cardinality(kind: NKind, n: usize) -> Result<usize, String> {
    let x = FinPoset::discrete_n(n);
    Ok(NeighbourhoodMonad::new(kind).elements(&x).map_err(err)?.items.len())
}

fn criterion_1() -> Outcome {
    // Budgets large enough to make every suite exhaustive except Plotkin,
    // D and Giry at size 3, whose associativity checks are sampled.
    let full: u128 = 1 << 24;
    let suites: [(MonadId, usize, u128, bool); 11] = [
        (MonadId::Powerset, 3, full, true),
        (MonadId::Neighbourhood, 2, full, true),
        (MonadId::MonotoneNeighbourhood, 2, full, true),
        (MonadId::Filter, 3, full, true),
        (MonadId::Ultrafilter, 3, full, true),
        (MonadId::Downset, 3, full, true),
        (MonadId::Hoare, 3, full, true),
        (MonadId::Smyth, 3, full, true),
        (MonadId::Plotkin, 3, 1 << 16, false),
        (MonadId::Distribution, 3, 1 << 16, false),
        (MonadId::Giry, 3, 1 << 16, false),
    ];
    let mut notes = Vec::new();
    for (id, size, budget, exhaustive) in suites {
        let started = Instant::now();
        let cfg = LawConfig::new(size).exhaustive_budget(budget).seed(SEED);
        let report = run_laws(id, &cfg, Strategy::Parallel).map_err(err)?;
        let elapsed = started.elapsed();
        ensure(report.passed(), || format!("{id}: {:?}", report.failures.first()))?;
        ensure(!exhaustive || !report.sampled(), || format!("{id}: expected an exhaustive run"))?;
        ensure(elapsed < Duration::from_secs(60), || format!("{id}: {elapsed:?}"))?;
        let cases: u128 = report.tallies.iter().map(|t| t.cases).sum();
        let how = if report.sampled() { "sampled" } else { "exhaustive" };
        notes.push(format!("{}({cases} {how})", id.name()));
    }
    Ok(format!("{}; seed {SEED}", notes.join(" ")))
}

fn criterion_2() -> Outcome {
    for n in 1..=3 {
        let u = monad_cardinality(NKind::Ultrafilter, n)?;
        let brute = families(n, |has| {
            let full = (1 << n) - 1;
            !has(0)
                && up_closed(n, has)
                && meet_closed(n, has)
                && (0..=full).all(|a| has(a) != has(full & !a))
        });
        ensure(u == n && brute == n, || format!("|U({n})| = {u}, brute force {brute}"))?;

        let report = cba_collapse_check(n).map_err(err)?;
        let full = (1usize << n) - 1;
        let brute_cba = (0u64..1 << (1 << n))
            .filter(|h| {
                let at = |s: usize| h >> s & 1 == 1;
                !at(0)
                    && at(full)
                    && (0..=full).all(|a| at(full & !a) == !at(a))
                    && (0..=full).all(|a| (0..=full).all(|b| at(a | b) == (at(a) || at(b))))
            })
            .count();
        ensure(report.collapses() && report.cba_maps == n && brute_cba == n, || {
            format!("CBA maps P({n}) -> 2: {} (brute force {brute_cba})", report.cba_maps)
        })?;
    }

    let m = monad_cardinality(NKind::MonotoneNeighbourhood, 2)?;
    let m_brute = families(2, |has| up_closed(2, has));
    ensure(m == 6 && m_brute == 6, || format!("|M({{1,2}})| = {m}, brute force {m_brute}"))?;

    let f = monad_cardinality(NKind::Filter, 2)?;
    let f_brute = families(2, |has| (0..4).any(has) && up_closed(2, has) && meet_closed(2, has));
    ensure(f == 4 && f_brute == 4, || format!("|F({{1,2}})| = {f}, brute force {f_brute}"))?;

    let chain = FinPoset::chain(2);
    let dcpo = ThreeMaps::new(&chain).map_err(err)?.len();
    let lenses = lens_pairs(&chain).map_err(err)?.len();
    // Monotone maps from a 2-chain into the 3-chain: pairs a <= b.
    let brute = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|(a, b)| a <= b).count();
    ensure(dcpo == 6 && lenses == 6 && brute == 6, || {
        format!("|Dcpo(2,3)| = {dcpo}, lens pairs {lenses}, brute force {brute}")
    })?;
    Ok("|U|=|X|, CBA collapse, |M|=6, |F|=4, |Dcpo(2,3)|=6=|O⋉O|".into())
}

fn round_trips(id: CorrespondenceId, max: usize, full_up_to: usize, samples: usize) -> Result<usize, String> {
    let mut checked = 0;
    for nx in 0..=max {
        for ny in 0..=max {
            for x in id.objects_of_size(nx) {
                for y in id.objects_of_size(ny) {
                    let sampled = (nx.max(ny) > full_up_to).then_some((samples, SEED));
                    let r = round_trip_by_id(id, &x, &y, sampled, Strategy::Parallel).map_err(err)?;
                    ensure(r.passed(), || format!("{id} {nx}x{ny}: {:?}", r.mismatches.first()))?;
                    checked += r.arrows + r.transformers;
                }
            }
        }
    }
    Ok(checked)
}

fn expectation_round_trips(instances: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..instances {
        let (nx, ny) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (x, y) = (FinSet::numbered(nx), FinSet::numbered(ny));
        let den = rng.gen_range(1..=6);
        let f: Vec<Distribution> = (0..nx).map(|_| random_distribution(&mut rng, ny, den)).collect();
        let t = expectation_pred(&x, &y, &f).map_err(err)?;
        let back = expectation_kleisli(&t).map_err(err)?;
        ensure(back == f, || format!("instance {i}: arrow not recovered"))?;
        let again = expectation_pred(&x, &y, &back).map_err(err)?;
        for _ in 0..8 {
            let q = random_predicate(&mut rng, &y, 6);
            ensure(t.apply(&q).map_err(err)? == again.apply(&q).map_err(err)?, || {
                format!("instance {i}: transformer not recovered at {q}")
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let box_full = round_trips(CorrespondenceId::Box, 3, 2, 400)?;
    notes.push(format!("box {box_full}"));
    for (id, max) in [
        (CorrespondenceId::Diamond, 3),
        (CorrespondenceId::MonotoneNbhd, 2),
        (CorrespondenceId::Hoare, 3),
        (CorrespondenceId::Smyth, 3),
    ] {
        let n = round_trips(id, max, max, 0)?;
        notes.push(format!("{id} {n}"));
    }

    let mut three = 0;
    for x in catalog::posets_up_to(4) {
        let maps = ThreeMaps::new(&x).map_err(err)?;
        for f in &maps.maps {
            let back = three_backward(&x, &three_forward(&x, f).map_err(err)?).map_err(err)?;
            ensure(&back == f, || format!("three_transpose: {f:?} on {} points", x.len()))?;
        }
        for lens in lens_pairs(&x).map_err(err)? {
            let fwd = three_forward(&x, &three_backward(&x, &lens).map_err(err)?).map_err(err)?;
            ensure(fwd == lens, || format!("three_transpose: lens {lens:?}"))?;
        }
        three += maps.len();
    }
    notes.push(format!("three_transpose {three}"));

    let mut hom = 0;
    for p in catalog::posets_up_to(2) {
        for q in catalog::posets_up_to(2) {
            let setting = PlotkinHomSetting::new(&p, &q).map_err(err)?;
            let r = setting.round_trip(Strategy::Parallel).map_err(err)?;
            ensure(r.passed(), || format!("plotkin_hom: {:?}", r.mismatches.first()))?;
            hom += r.arrows + r.transformers;
        }
    }
    notes.push(format!("plotkin_hom {hom}"));

    expectation_round_trips(200)?;
    notes.push("expectation 200".into());
    Ok(format!("{}; 0 mismatches", notes.join(", ")))
}

fn criterion_4() -> Outcome {
    let two = FinPoset::discrete_n(2);
    let r = triangles_core::kit::certify_full_faithful(CorrespondenceId::Box, &two, &two).map_err(err)?;
    ensure(r.bijection && r.kleisli_count == 16 && r.transformer_count == 16, || {
        format!("box (2,2): {} vs {}", r.kleisli_count, r.transformer_count)
    })?;
    let mut certified = 1;
    for id in [CorrespondenceId::Hoare, CorrespondenceId::Smyth, CorrespondenceId::Three] {
        for x in catalog::posets_up_to(2) {
            for y in catalog::posets_up_to(2) {
                let r = triangles_core::kit::certify_full_faithful(id, &x, &y).map_err(err)?;
                ensure(r.bijection && r.kleisli_count == r.transformer_count, || {
                    format!("{id}: {} vs {} ({:?})", r.kleisli_count, r.transformer_count, r.counterexample)
                })?;
                certified += 1;
            }
        }
    }
    Ok(format!("box (2,2) 16 vs 16; {certified} pairs certified"))
}

fn indicator_probes(c: &FinSet) -> Vec<FuzzyPredicate> {
    (0..1u64 << c.len())
        .map(|m| FuzzyPredicate::indicator(c, &ElemSet::from_mask(m)))
        .collect()
}

fn grid_distribution(rng: &mut ChaCha8Rng, size: usize) -> Distribution {
    let den = rng.gen_range(1..=6);
    random_distribution(rng, size, den)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let scalars: Vec<Rat> = unit_grid(4);
    for i in 0..500 {
        let (nx, ny) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let (x, y) = (FinSet::numbered(nx), FinSet::numbered(ny));
        let omega = grid_distribution(&mut rng, nx);
        let f: Vec<Distribution> = (0..nx)
            .map(|_| grid_distribution(&mut rng, ny))
            .collect();
        let mut probes_x: Vec<FuzzyPredicate> = (0..6).map(|_| random_predicate(&mut rng, &x, 6)).collect();
        probes_x.extend(indicator_probes(&x));
        let mut probes_y: Vec<FuzzyPredicate> = (0..6).map(|_| random_predicate(&mut rng, &y, 6)).collect();
        probes_y.extend(indicator_probes(&y));

        let s = sigma(&x, &omega).map_err(err)?;
        ensure(s.check_module_map(&probes_x, &scalars).is_none(), || {
            format!("instance {i}: σ(ω) is not an effect-module map")
        })?;
        let a = rng.gen_range(0..nx);
        let dirac = sigma(&x, &Distribution::dirac(nx, a)).map_err(err)?;
        ensure(dirac.disagreement(&e_unit(&x, a), &probes_x).is_none(), || {
            format!("instance {i}: unit not preserved")
        })?;

        let lhs = sigma(&y, &omega.bind(&f).map_err(err)?).map_err(err)?;
        let fs = f.iter().map(|d| sigma(&y, d)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        let rhs = e_bind(&x, &y, fs, s.clone()).map_err(err)?;
        ensure(lhs.disagreement(&rhs, &probes_y).is_none(), || format!("instance {i}: bind not preserved"))?;

        ensure(recover(&s).map_err(err)? == omega, || format!("instance {i}: σ is not injective"))?;
        let other = grid_distribution(&mut rng, nx);
        let so = sigma(&x, &other).map_err(err)?;
        ensure((other == omega) == so.disagreement(&s, &probes_x).is_none(), || {
            format!("instance {i}: distinct distributions share σ")
        })?;
    }
    Ok("500 instances: unit, bind, injectivity (surjectivity not checked)".into())
}

/// Every probability measure on `atoms` atoms whose atom weights have
/// denominators at most `max_den`, built by brute force.
fn grid_measures(atoms: usize, max_den: i64) -> Vec<Measure> {
    let mut weights: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for d in 1..=max_den {
        let mut counts = vec![0i64; atoms];
        loop {
            if counts.iter().sum::<i64>() == d {
                weights.insert(counts.iter().map(|&k| Rat::new(k.into(), d.into())).collect());
            }
            let mut i = 0;
            while i < atoms && counts[i] == d {
                counts[i] = 0;
                i += 1;
            }
            if i == atoms {
                break;
            }
            counts[i] += 1;
        }
    }
    weights
        .into_iter()
        .map(|w| {
            let values = (0..1usize << atoms)
                .map(|m| subsets_of(m).filter(|s| s.count_ones() == 1).map(|s| w[s.trailing_zeros() as usize].clone()).sum())
                .collect();
            Measure::new(atoms, values).expect("grid weights form a probability measure")
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut total = 0;
    for atoms in 1..=3 {
        let c = FinSet::numbered(atoms);
        let grid = unit_grid(6);
        let probes: Vec<FuzzyPredicate> = (0..grid.len().pow(atoms as u32))
            .map(|mut k| {
                let values = (0..atoms)
                    .map(|_| {
                        let v = grid[k % grid.len()].clone();
                        k /= grid.len();
                        v
                    })
                    .collect();
                FuzzyPredicate::new(c.clone(), values).expect("grid values")
            })
            .collect();
        for phi in grid_measures(atoms, 6) {
            let integral = integral_of(&c, &phi).map_err(err)?;
            let back = measure_of(&integral).map_err(err)?;
            ensure(back == phi, || format!("measure {phi:?} not recovered"))?;
            let again = integral_of(&c, &back).map_err(err)?;
            ensure(again.disagreement(&integral, &probes).is_none(), || {
                format!("integral of {phi:?} not recovered")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} measures, both composites identities"))
}

fn criterion_7() -> Outcome {
    let started = Instant::now();
    let mut checks = 0;
    for (mode, flavors) in [
        (Mode::Pow, vec![Flavor::Demonic, Flavor::Angelic]),
        (Mode::Dist, vec![Flavor::Expectation]),
    ] {
        let programs = corpus(SEED, 200, &GenConfig::new(mode));
        for (i, p) in programs.iter().enumerate() {
            let space = StateSpace::of(p).map_err(err)?;
            ensure(space.len() <= 512, || format!("program {i}: {} states", space.len()))?;
            let probes = default_probes(&space, mode, SEED ^ i as u64);
            for &flavor in &flavors {
                let c = check_roundtrip(p, flavor, &probes).map_err(err)?;
                ensure(c.passed(), || format!("{mode}/{flavor} program {i}: {:?}\n{p}", c.mismatches.first()))?;
                checks += 1;
            }
            for inv in check_healthiness(p, mode, &probes).map_err(err)? {
                ensure(inv.passed(), || format!("{mode} program {i}: {} {:?}\n{p}", inv.name, inv.witness))?;
            }
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{checks} round trips plus invariants in {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_8() -> Outcome {
    for size in 0..=3 {
        let r = validate_effect_algebra(&PowersetEffect { size }, Strategy::Parallel);
        ensure(r.passed(), || format!("P({size}): {r:?}"))?;
    }
    let r = validate_effect_algebra(&UnitInterval { max_den: 6 }, Strategy::Parallel);
    ensure(r.passed(), || format!("[0,1]: {r:?}"))?;
    for id in check_mv_identities(&unit_grid(6)) {
        ensure(id.passed(), || format!("MV identity {}: {:?}", id.name, id.counterexample))?;
    }
    Ok("P(X) for |X| <= 3, [0,1] grid to 1/6, MV identities".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("monad laws", criterion_1),
        ("cardinality oracles", criterion_2),
        ("round trips", criterion_3),
        ("full and faithful", criterion_4),
        ("D => E monad morphism", criterion_5),
        ("finite Giry isomorphism", criterion_6),
        ("wp healthiness", criterion_7),
        ("effect-structure axioms", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} [{secs:.1}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name} [{secs:.1}s]: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
