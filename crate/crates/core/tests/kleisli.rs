use proptest::prelude::*;

use triangles_core::bitset::ElemSet;
use triangles_core::effect::{Distribution, Rat};
use triangles_core::kit::{kleisli_compose, KleisliArrow};
use triangles_core::monads::{DistributionMonad, PowersetMonad};
use triangles_core::order::FinPoset;

fn relation(n: usize, m: usize) -> impl Strategy<Value = Vec<ElemSet>> {
    prop::collection::vec(0u64..1 << m, n).prop_map(|masks| masks.into_iter().map(ElemSet::from_mask).collect())
}

fn stochastic(n: usize, m: usize) -> impl Strategy<Value = Vec<Distribution>> {
    prop::collection::vec(prop::collection::vec(0i64..4, m), n).prop_map(move |rows| {
        rows.into_iter()
            .map(|mut w| {
                if w.iter().all(|&k| k == 0) {
                    w[0] = 1;
                }
                let total: i64 = w.iter().sum();
                let dense: Vec<Rat> = w.iter().map(|&k| Rat::new(k.into(), total.into())).collect();
                Distribution::from_dense(&dense).unwrap()
            })
            .collect()
    })
}

const P: PowersetMonad = PowersetMonad { cap: 8 };

fn pow_arrow(images: Vec<ElemSet>, m: usize) -> KleisliArrow<ElemSet> {
    let dom = FinPoset::discrete_n(images.len());
    KleisliArrow::new(&P, dom, FinPoset::discrete_n(m), images).unwrap()
}

fn dist_arrow(d: &DistributionMonad, images: Vec<Distribution>, m: usize) -> KleisliArrow<Distribution> {
    let dom = FinPoset::discrete_n(images.len());
    KleisliArrow::new(d, dom, FinPoset::discrete_n(m), images).unwrap()
}

proptest! {
    #[test]
    fn powerset_composition_is_relational(f in relation(3, 2), g in relation(2, 3)) {
        let expected: Vec<ElemSet> = f
            .iter()
            .map(|ys| ys.iter().fold(ElemSet::new(), |acc, y| acc.union(&g[y])))
            .collect();
        let h = kleisli_compose(&P, &pow_arrow(g, 3), &pow_arrow(f, 2)).unwrap();
        prop_assert_eq!(h.images(), &expected[..]);
    }

    #[test]
    fn powerset_composition_laws(f in relation(2, 3), g in relation(3, 2), h in relation(2, 2)) {
        let (f, g, h) = (pow_arrow(f, 3), pow_arrow(g, 2), pow_arrow(h, 2));
        let left = kleisli_compose(&P, &h, &kleisli_compose(&P, &g, &f).unwrap()).unwrap();
        let right = kleisli_compose(&P, &kleisli_compose(&P, &h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(left, right);
        let id = KleisliArrow::unit(&P, f.cod());
        prop_assert_eq!(&kleisli_compose(&P, &id, &f).unwrap(), &f);
        let id = KleisliArrow::unit(&P, f.dom());
        prop_assert_eq!(&kleisli_compose(&P, &f, &id).unwrap(), &f);
    }

    #[test]
    fn distribution_composition_is_matrix_product(f in stochastic(3, 2), g in stochastic(2, 3)) {
        let d = DistributionMonad { cap: 4, probe_den: 2 };
        let expected: Vec<Vec<Rat>> = f
            .iter()
            .map(|row| {
                (0..3)
                    .map(|z| (0..2).map(|y| row.weight(y) * g[y].weight(z)).sum())
                    .collect()
            })
            .collect();
        let h = kleisli_compose(&d, &dist_arrow(&d, g, 3), &dist_arrow(&d, f, 2)).unwrap();
        let got: Vec<Vec<Rat>> = h.images().iter().map(Distribution::dense).collect();
        prop_assert_eq!(got, expected);
    }
}

#[test]
fn rejects_mismatched_carriers() {
    let f = pow_arrow(vec![ElemSet::singleton(0)], 1);
    let g = pow_arrow(vec![ElemSet::singleton(1), ElemSet::new()], 2);
    assert!(kleisli_compose(&P, &g, &f).is_err());
    let bad = KleisliArrow::new(&P, FinPoset::discrete_n(1), FinPoset::discrete_n(1), vec![ElemSet::singleton(3)]);
    assert!(bad.is_err());
}
