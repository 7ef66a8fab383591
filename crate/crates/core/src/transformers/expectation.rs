//! Distribution-valued Kleisli arrows against effect-module maps on fuzzy
//! predicates: `f*(q)(x) = Σ_y q(y)·f(x)(y)`, inverted by
//! `f̄(x)(y) = T(1_y)(x)`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::bitset::ElemSet;
use crate::effect::{Distribution, FuzzyPredicate, Rat};
use crate::error::{Error, Result};
use crate::order::FinSet;

type Map = dyn Fn(&FuzzyPredicate) -> Result<FuzzyPredicate> + Send + Sync;

/// A map `[0,1]^Y -> [0,1]^X`.
#[derive(Clone)]
pub struct PredicateTransformer {
    post: FinSet,
    pre: FinSet,
    map: Arc<Map>,
}

impl fmt::Debug for PredicateTransformer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PredicateTransformer {:?} -> {:?}", self.post.elements(), self.pre.elements())
    }
}

impl PredicateTransformer {
    /// `post` is the carrier of the predicates consumed, `pre` of those produced.
    pub fn new(
        post: FinSet,
        pre: FinSet,
        map: impl Fn(&FuzzyPredicate) -> Result<FuzzyPredicate> + Send + Sync + 'static,
    ) -> Self {
        PredicateTransformer {
            post,
            pre,
            map: Arc::new(map),
        }
    }

    pub fn post(&self) -> &FinSet {
        &self.post
    }

    pub fn pre(&self) -> &FinSet {
        &self.pre
    }

    pub fn apply(&self, q: &FuzzyPredicate) -> Result<FuzzyPredicate> {
        if q.carrier() != &self.post {
            return Err(Error::CarrierMismatch("predicate on another carrier".into()));
        }
        let out = (self.map)(q)?;
        if out.carrier() != &self.pre {
            return Err(Error::CarrierMismatch("transformer produced a predicate on another carrier".into()));
        }
        Ok(out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn after(&self, other: &PredicateTransformer) -> Result<PredicateTransformer> {
        if other.pre != self.post {
            return Err(Error::CarrierMismatch("transformers do not compose".into()));
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(PredicateTransformer::new(other.post.clone(), self.pre.clone(), move |q| {
            a.apply(&b.apply(q)?)
        }))
    }

    /// Effect-module map conditions on probes: `1 ↦ 1`, `⊕` (where
    /// defined), orthosupplement and scalars preserved. Returns the first
    /// failure.
    pub fn check_module_map(&self, probes: &[FuzzyPredicate], scalars: &[Rat]) -> Option<String> {
        let one_y = FuzzyPredicate::constant(&self.post, Rat::one()).ok()?;
        let one_x = FuzzyPredicate::constant(&self.pre, Rat::one()).ok()?;
        match self.apply(&one_y) {
            Ok(p) if p == one_x => {}
            _ => return Some("1 is not sent to 1".into()),
        }
        for p in probes {
            let tp = match self.apply(p) {
                Ok(tp) => tp,
                Err(e) => return Some(format!("{p}: {e}")),
            };
            if self.apply(&p.orth()).ok()? != tp.orth() {
                return Some(format!("orthosupplement not preserved at {p}"));
            }
            for q in probes {
                if let Ok(Some(pq)) = p.ovee(q) {
                    let lhs = self.apply(&pq).ok()?;
                    let rhs = tp.ovee(&self.apply(q).ok()?).ok()?;
                    if rhs.as_ref() != Some(&lhs) {
                        return Some(format!("⊕ not preserved at {p}, {q}"));
                    }
                }
            }
            for r in scalars {
                if self.apply(&p.scalar(r).ok()?).ok()? != tp.scalar(r).ok()? {
                    return Some(format!("scalar {r} not preserved at {p}"));
                }
            }
        }
        None
    }
}

/// `f*(q)(x) = Σ_y q(y)·f(x)(y)` for `f: X -> D(Y)`.
pub fn expectation_pred(x: &FinSet, y: &FinSet, f: &[Distribution]) -> Result<PredicateTransformer> {
    if f.len() != x.len() || f.iter().any(|d| d.size() != y.len()) {
        return Err(Error::CarrierMismatch("Kleisli arrow does not match its carriers".into()));
    }
    let f = f.to_vec();
    let xc = x.clone();
    Ok(PredicateTransformer::new(y.clone(), x.clone(), move |q| {
        FuzzyPredicate::from_fn(&xc, |a| f[a].expectation(q.values()))
    }))
}

/// `f̄(x)(y) = T(1_y)(x)`; fails unless each row is a distribution.
pub fn expectation_kleisli(t: &PredicateTransformer) -> Result<Vec<Distribution>> {
    let y = t.post();
    let columns: Vec<FuzzyPredicate> = (0..y.len())
        .map(|b| t.apply(&FuzzyPredicate::indicator(y, &ElemSet::singleton(b))))
        .collect::<Result<_>>()?;
    (0..t.pre().len())
        .map(|a| Distribution::from_dense(&columns.iter().map(|c| c.value(a).clone()).collect::<Vec<_>>()))
        .collect()
}

/// A random distribution with weights on a grid of denominator `den`.
pub fn random_distribution<R: Rng>(rng: &mut R, size: usize, den: u32) -> Distribution {
    assert!(size > 0 && den > 0);
    let mut counts = vec![0i64; size];
    for _ in 0..den {
        counts[rng.gen_range(0..size)] += 1;
    }
    let weights: Vec<Rat> = counts
        .into_iter()
        .map(|c| Rat::new(c.into(), i64::from(den).into()))
        .collect();
    Distribution::from_dense(&weights).expect("counts sum to the denominator")
}

/// A random fuzzy predicate with values in `{0, 1/den, .., 1}`.
pub fn random_predicate<R: Rng>(rng: &mut R, carrier: &FinSet, den: u32) -> FuzzyPredicate {
    let values = (0..carrier.len())
        .map(|_| Rat::new(rng.gen_range(0..=den as i64).into(), i64::from(den).into()))
        .collect();
    FuzzyPredicate::new(carrier.clone(), values).expect("grid values lie in [0,1]")
}

/// `r·f + (1 - r)·g`, pointwise.
pub fn convex_arrow(r: &Rat, f: &[Distribution], g: &[Distribution]) -> Result<Vec<Distribution>> {
    if f.len() != g.len() {
        return Err(Error::CarrierMismatch("arrows on different domains".into()));
    }
    f.iter().zip(g).map(|(a, b)| Distribution::convex(r, a, b)).collect()
}

/// Whether `T(0) = 0` as well; a cheap sanity probe used alongside
/// [`PredicateTransformer::check_module_map`].
pub fn preserves_zero(t: &PredicateTransformer) -> bool {
    FuzzyPredicate::constant(t.post(), Rat::zero())
        .ok()
        .and_then(|z| t.apply(&z).ok())
        .is_some_and(|p| p.values().iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effect::rat::one_minus;
    use crate::effect::rat::rat;
    use crate::effect::{unit_grid, EffectAlgebra, FuzzyPredicates};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn compose(f: &[Distribution], g: &[Distribution]) -> Vec<Distribution> {
        f.iter().map(|d| d.bind(g).unwrap()).collect()
    }

    #[test]
    fn half_half() {
        let x = FinSet::numbered(1);
        let y = FinSet::numbered(2);
        let f = vec![Distribution::from_dense(&[rat(1, 2), rat(1, 2)]).unwrap()];
        let t = expectation_pred(&x, &y, &f).unwrap();
        let q = FuzzyPredicate::indicator(&y, &ElemSet::singleton(0));
        assert_eq!(t.apply(&q).unwrap().value(0), &rat(1, 2));
    }

    #[test]
    fn unit_is_substitution() {
        let x = FinSet::numbered(3);
        let f: Vec<Distribution> = (0..3).map(|a| Distribution::dirac(3, (a + 1) % 3)).collect();
        let t = expectation_pred(&x, &x, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let q = random_predicate(&mut rng, &x, 5);
            let p = t.apply(&q).unwrap();
            for a in 0..3 {
                assert_eq!(p.value(a), q.value((a + 1) % 3));
            }
        }
    }

    #[test]
    fn round_trip_and_module_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let (nx, ny) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let (x, y) = (FinSet::numbered(nx), FinSet::numbered(ny));
            let f: Vec<Distribution> = (0..nx).map(|_| random_distribution(&mut rng, ny, 6)).collect();
            let t = expectation_pred(&x, &y, &f).unwrap();
            assert_eq!(expectation_kleisli(&t).unwrap(), f);
            let probes = FuzzyPredicates {
                carrier: y.clone(),
                max_den: 2,
            }
            .probes();
            assert_eq!(t.check_module_map(&probes, &unit_grid(3)), None);
            assert!(preserves_zero(&t));
        }
    }

    #[test]
    fn compositional() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let (x, y, z) = (FinSet::numbered(2), FinSet::numbered(3), FinSet::numbered(2));
            let f: Vec<Distribution> = (0..2).map(|_| random_distribution(&mut rng, 3, 4)).collect();
            let g: Vec<Distribution> = (0..3).map(|_| random_distribution(&mut rng, 2, 4)).collect();
            let lhs = expectation_pred(&x, &y, &f)
                .unwrap()
                .after(&expectation_pred(&y, &z, &g).unwrap())
                .unwrap();
            let rhs = expectation_pred(&x, &z, &compose(&f, &g)).unwrap();
            for _ in 0..5 {
                let q = random_predicate(&mut rng, &z, 4);
                assert_eq!(lhs.apply(&q).unwrap(), rhs.apply(&q).unwrap());
            }
        }
    }

    #[test]
    fn linear_in_the_arrow() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (x, y) = (FinSet::numbered(2), FinSet::numbered(2));
        for _ in 0..20 {
            let f: Vec<Distribution> = (0..2).map(|_| random_distribution(&mut rng, 2, 3)).collect();
            let g: Vec<Distribution> = (0..2).map(|_| random_distribution(&mut rng, 2, 3)).collect();
            let r = rat(rng.gen_range(0..=4), 4);
            let mixed = expectation_pred(&x, &y, &convex_arrow(&r, &f, &g).unwrap()).unwrap();
            let (tf, tg) = (expectation_pred(&x, &y, &f).unwrap(), expectation_pred(&x, &y, &g).unwrap());
            let q = random_predicate(&mut rng, &y, 3);
            let (a, b) = (tf.apply(&q).unwrap(), tg.apply(&q).unwrap());
            for i in 0..2 {
                let expected = &r * a.value(i) + one_minus(&r) * b.value(i);
                assert_eq!(mixed.apply(&q).unwrap().value(i), &expected);
            }
        }
    }

    #[test]
    fn rejects_carrier_mismatch() {
        let x = FinSet::numbered(1);
        let f = vec![Distribution::dirac(2, 0)];
        let t = expectation_pred(&x, &FinSet::numbered(2), &f).unwrap();
        let q = FuzzyPredicate::constant(&FinSet::numbered(3), rat(1, 2)).unwrap();
        assert!(matches!(t.apply(&q), Err(Error::CarrierMismatch(_))));
        assert!(expectation_pred(&x, &FinSet::numbered(3), &f).is_err());
    }
}
