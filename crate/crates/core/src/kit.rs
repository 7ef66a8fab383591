//! Kleisli arrows and their composition, the `Stat` functor, an
//! Eilenberg–Moore algebra checker, and full-and-faithfulness
//! certification of the predicate functors.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::monads::{as_poset, resolve, Monad};
use crate::order::{FinPoset, DEFAULT_BUDGET};
use crate::transformers::{certify_by_id, kleisli_arrows, CertReport, CorrespondenceId};

/// A computation `X -> T(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleisliArrow<E> {
    monad: &'static str,
    dom: FinPoset,
    cod: FinPoset,
    images: Vec<E>,
}

impl<E: Clone + Eq> KleisliArrow<E> {
    /// Checks that every image lies in `T(cod)` and, over posets, that the
    /// arrow is monotone.
    pub fn new<M: Monad<Elem = E>>(m: &M, dom: FinPoset, cod: FinPoset, images: Vec<E>) -> Result<Self> {
        if images.len() != dom.len() {
            return Err(Error::CarrierMismatch(format!(
                "{} images for {} points",
                images.len(),
                dom.len()
            )));
        }
        if let Some(e) = images.iter().find(|e| !m.contains(&cod, e)) {
            return Err(Error::InvalidElement(m.render(&cod, e)));
        }
        if !m.on_sets() {
            for a in 0..dom.len() {
                if let Some(b) = dom.up_of(a).iter().find(|&b| !m.leq(&cod, &images[a], &images[b])) {
                    return Err(Error::NotMonotone(format!("{} ≤ {}", dom.label(a), dom.label(b))));
                }
            }
        }
        Ok(KleisliArrow {
            monad: m.name(),
            dom,
            cod,
            images,
        })
    }

    /// Skips validation; callers guarantee the images lie in `T(cod)`.
    pub(crate) fn from_parts(monad: &'static str, dom: FinPoset, cod: FinPoset, images: Vec<E>) -> Self {
        KleisliArrow {
            monad,
            dom,
            cod,
            images,
        }
    }

    /// `η: X -> T(X)`.
    pub fn unit<M: Monad<Elem = E>>(m: &M, x: &FinPoset) -> Self {
        KleisliArrow {
            monad: m.name(),
            dom: x.clone(),
            cod: x.clone(),
            images: (0..x.len()).map(|a| m.unit(x, a)).collect(),
        }
    }

    pub fn monad(&self) -> &'static str {
        self.monad
    }

    pub fn dom(&self) -> &FinPoset {
        &self.dom
    }

    pub fn cod(&self) -> &FinPoset {
        &self.cod
    }

    pub fn images(&self) -> &[E] {
        &self.images
    }

    pub fn apply(&self, a: usize) -> &E {
        &self.images[a]
    }
}

/// `g ⊙ f = x ↦ bind(g, f(x))`.
pub fn kleisli_compose<M: Monad>(
    m: &M,
    g: &KleisliArrow<M::Elem>,
    f: &KleisliArrow<M::Elem>,
) -> Result<KleisliArrow<M::Elem>> {
    if f.monad != m.name() || g.monad != m.name() {
        return Err(Error::MonadMismatch(format!(
            "{} and {} composed in {}",
            g.monad,
            f.monad,
            m.name()
        )));
    }
    if f.cod != g.dom {
        return Err(Error::CarrierMismatch("codomain of f is not the domain of g".into()));
    }
    Ok(KleisliArrow {
        monad: m.name(),
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        images: f
            .images
            .iter()
            .map(|e| m.bind(&f.cod, &g.cod, &g.images, e))
            .collect(),
    })
}

/// `Stat(f) = bind(f): T(X) -> T(Y)` tabulated on `T(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatMap<E> {
    pub inputs: Vec<E>,
    pub outputs: Vec<E>,
}

impl<E: Eq> StatMap<E> {
    pub fn get(&self, e: &E) -> Option<&E> {
        self.inputs.iter().position(|i| i == e).map(|k| &self.outputs[k])
    }
}

pub fn stat_functor<M: Monad>(m: &M, f: &KleisliArrow<M::Elem>) -> Result<StatMap<M::Elem>> {
    let tx = m.elements(&f.dom)?;
    if !tx.exhaustive {
        return Err(Error::too_large(
            format!("{}: T(X) is not enumerable", m.name()),
            u128::MAX,
            tx.items.len() as u128,
        ));
    }
    let outputs = tx.items.iter().map(|e| m.bind(&f.dom, &f.cod, &f.images, e)).collect();
    Ok(StatMap {
        inputs: tx.items,
        outputs,
    })
}

/// Distinct Kleisli arrows `X -> T(Y)` have distinct `Stat` extensions.
pub fn stat_is_faithful<M: Monad>(m: &M, x: &FinPoset, y: &FinPoset) -> Result<bool> {
    let (ty, space) = kleisli_arrows(m, x, y, DEFAULT_BUDGET)?;
    let mut seen = HashSet::new();
    for i in 0..space.count() {
        let f = KleisliArrow::new(m, x.clone(), y.clone(), resolve(&ty, &space.get(i)))?;
        if !seen.insert(stat_functor(m, &f)?.outputs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A carrier with a structure map `α: T(A) -> A`, tabulated over the
/// enumeration of `T(A)`.
#[derive(Clone, Debug)]
pub struct EMAlgebraCandidate<E> {
    pub carrier: FinPoset,
    pub elements: Vec<E>,
    pub alpha: Vec<usize>,
}

impl<E: Clone + Eq> EMAlgebraCandidate<E> {
    pub fn new<M: Monad<Elem = E>>(m: &M, carrier: FinPoset, alpha: impl Fn(&E) -> usize) -> Result<Self> {
        let t = m.elements(&carrier)?;
        if !t.exhaustive {
            return Err(Error::too_large("T(A) is not enumerable", u128::MAX, t.items.len() as u128));
        }
        let alpha = t.items.iter().map(&alpha).collect();
        Ok(EMAlgebraCandidate {
            carrier,
            elements: t.items,
            alpha,
        })
    }

    /// The free algebra `(T(X), μ)`.
    pub fn free<M: Monad<Elem = E>>(m: &M, x: &FinPoset) -> Result<Self> {
        let tx = m.elements(x)?.items;
        let carrier = as_poset(m, x, &tx)?;
        Self::new(m, carrier.clone(), |mm| {
            let joined = m.join(x, &tx, &carrier, mm);
            tx.iter().position(|e| *e == joined).expect("μ lands in T(X)")
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmLaw {
    pub law: &'static str,
    pub cases: usize,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmReport {
    pub laws: Vec<EmLaw>,
}

impl EmReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.counterexample.is_none())
    }
}

/// Checks that `α` is a morphism (monotone, over posets), that
/// `α ∘ η = id`, and that `α ∘ T(α) = α ∘ μ` on all of `T(T(A))`.
pub fn check_em_algebra<M: Monad>(m: &M, c: &EMAlgebraCandidate<M::Elem>) -> Result<EmReport> {
    let a = &c.carrier;
    let index = |e: &M::Elem| c.elements.iter().position(|x| x == e);
    let show = |i: usize| m.render(a, &c.elements[i]);
    let mut laws = Vec::new();

    let mut morphism = None;
    if !m.on_sets() {
        'outer: for i in 0..c.elements.len() {
            for j in 0..c.elements.len() {
                if m.leq(a, &c.elements[i], &c.elements[j]) && !a.leq(c.alpha[i], c.alpha[j]) {
                    morphism = Some(format!(
                        "{} ≤ {} but α gives {} and {}",
                        show(i),
                        show(j),
                        a.label(c.alpha[i]),
                        a.label(c.alpha[j])
                    ));
                    break 'outer;
                }
            }
        }
    }
    laws.push(EmLaw {
        law: "morphism",
        cases: c.elements.len().pow(2),
        counterexample: morphism,
    });

    let unit = (0..a.len()).find_map(|x| match index(&m.unit(a, x)) {
        Some(i) if c.alpha[i] == x => None,
        Some(i) => Some(format!("α(η({})) = {}", a.label(x), a.label(c.alpha[i]))),
        None => Some(format!("η({}) missing from T(A)", a.label(x))),
    });
    laws.push(EmLaw {
        law: "unit",
        cases: a.len(),
        counterexample: unit,
    });

    let ta = as_poset(m, a, &c.elements)?;
    let tta = m.elements(&ta)?.items;
    let alpha_units: Vec<M::Elem> = c.alpha.iter().map(|&x| m.unit(a, x)).collect();
    let multiplication = tta.iter().find_map(|phi| {
        let via_alpha = index(&m.bind(&ta, a, &alpha_units, phi));
        let via_mu = index(&m.bind(&ta, a, &c.elements, phi));
        match (via_alpha, via_mu) {
            (Some(i), Some(j)) if c.alpha[i] == c.alpha[j] => None,
            (Some(i), Some(j)) => Some(format!(
                "at {}: α(T(α)(Φ)) = {} but α(μ(Φ)) = {}",
                m.render(&ta, phi),
                a.label(c.alpha[i]),
                a.label(c.alpha[j])
            )),
            _ => Some(format!("at {}: image outside T(A)", m.render(&ta, phi))),
        }
    });
    laws.push(EmLaw {
        law: "multiplication",
        cases: tta.len(),
        counterexample: multiplication,
    });
    Ok(EmReport { laws })
}

/// Certifies that the transpose of the named correspondence is a bijection
/// between Kleisli arrows `X -> T(Y)` and transformers `Pred(Y) -> Pred(X)`.
pub fn certify_full_faithful(id: CorrespondenceId, x: &FinPoset, y: &FinPoset) -> Result<CertReport> {
    certify_by_id(id, x, y, Strategy::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::ElemSet;
    use crate::effect::rat::rat;
    use crate::effect::{Distribution, Rat};
    use crate::monads::{DistributionMonad, DownsetMonad, PowersetMonad};
    use crate::order::{catalog, make_poset};
    use num_traits::Zero;

    fn relation(n: usize, m: usize, code: u64) -> Vec<ElemSet> {
        (0..n).map(|a| ElemSet::from_mask((code >> (a * m)) & ((1 << m) - 1))).collect()
    }

    #[test]
    fn powerset_composition_is_relational() {
        let p = PowersetMonad::default();
        let (x, y, z) = (FinPoset::discrete_n(2), FinPoset::discrete_n(2), FinPoset::discrete_n(2));
        for fc in 0..16 {
            for gc in 0..16 {
                let f = KleisliArrow::new(&p, x.clone(), y.clone(), relation(2, 2, fc)).unwrap();
                let g = KleisliArrow::new(&p, y.clone(), z.clone(), relation(2, 2, gc)).unwrap();
                let h = kleisli_compose(&p, &g, &f).unwrap();
                for a in 0..2 {
                    let brute: ElemSet = (0..2)
                        .filter(|&c| (0..2).any(|b| f.apply(a).contains(b) && g.apply(b).contains(c)))
                        .collect();
                    assert_eq!(h.apply(a), &brute);
                }
                let unit = KleisliArrow::unit(&p, &x);
                assert_eq!(kleisli_compose(&p, &f, &unit).unwrap(), f);
            }
        }
    }

    #[test]
    fn distribution_composition_is_matrix_product() {
        let d = DistributionMonad::default();
        let (x, y) = (FinPoset::discrete_n(2), FinPoset::discrete_n(3));
        let f = KleisliArrow::new(
            &d,
            x.clone(),
            y.clone(),
            vec![
                Distribution::from_dense(&[rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap(),
                Distribution::dirac(3, 2),
            ],
        )
        .unwrap();
        let g = KleisliArrow::new(
            &d,
            y.clone(),
            x.clone(),
            vec![
                Distribution::from_dense(&[rat(1, 3), rat(2, 3)]).unwrap(),
                Distribution::dirac(2, 0),
                Distribution::from_dense(&[rat(1, 2), rat(1, 2)]).unwrap(),
            ],
        )
        .unwrap();
        let h = kleisli_compose(&d, &g, &f).unwrap();
        for a in 0..2 {
            for c in 0..2 {
                let product: Rat = (0..3).map(|b| f.apply(a).weight(b) * g.apply(b).weight(c)).sum();
                assert_eq!(h.apply(a).weight(c), product);
            }
        }
        assert!(!h.apply(0).weight(0).is_zero());
    }

    #[test]
    fn mismatches() {
        let p = PowersetMonad::default();
        let x = FinPoset::discrete_n(2);
        let f = KleisliArrow::unit(&p, &x);
        let g = KleisliArrow::unit(&p, &FinPoset::discrete_n(3));
        assert!(matches!(kleisli_compose(&p, &g, &f), Err(Error::CarrierMismatch(_))));
        let h = DownsetMonad::downsets();
        let d = KleisliArrow::unit(&h, &x);
        assert!(matches!(kleisli_compose(&h, &d, &KleisliArrow {
            monad: "powerset",
            dom: x.clone(),
            cod: x.clone(),
            images: d.images.clone(),
        }), Err(Error::MonadMismatch(_))));
    }

    #[test]
    fn stat_is_functorial() {
        let h = DownsetMonad::hoare();
        for x in catalog::posets_up_to(2) {
            let (ty, space) = kleisli_arrows(&h, &x, &x, DEFAULT_BUDGET).unwrap();
            let arrows: Vec<_> = (0..space.count())
                .map(|i| KleisliArrow::new(&h, x.clone(), x.clone(), resolve(&ty, &space.get(i))).unwrap())
                .collect();
            let id = stat_functor(&h, &KleisliArrow::unit(&h, &x)).unwrap();
            assert_eq!(id.inputs, id.outputs);
            for f in &arrows {
                let sf = stat_functor(&h, f).unwrap();
                for g in &arrows {
                    let sg = stat_functor(&h, g).unwrap();
                    let sgf = stat_functor(&h, &kleisli_compose(&h, g, f).unwrap()).unwrap();
                    for (e, out) in sgf.inputs.iter().zip(&sgf.outputs) {
                        assert_eq!(sg.get(sf.get(e).unwrap()).unwrap(), out);
                    }
                }
            }
            assert!(stat_is_faithful(&h, &x, &x).unwrap());
        }
    }

    #[test]
    fn powerset_stat_is_union() {
        let p = PowersetMonad::default();
        let x = FinPoset::discrete_n(3);
        let f = KleisliArrow::new(&p, x.clone(), x.clone(), relation(3, 3, 0o421)).unwrap();
        let s = stat_functor(&p, &f).unwrap();
        for (a, out) in s.inputs.iter().zip(&s.outputs) {
            let union = a.iter().fold(ElemSet::new(), |acc, i| acc.union(f.apply(i)));
            assert_eq!(out, &union);
        }
    }

    #[test]
    fn free_algebras() {
        let p = PowersetMonad { cap: 16 };
        let h = DownsetMonad::hoare();
        assert!(check_em_algebra(&p, &EMAlgebraCandidate::free(&p, &FinPoset::discrete_n(2)).unwrap())
            .unwrap()
            .passed());
        assert!(check_em_algebra(&h, &EMAlgebraCandidate::free(&h, &FinPoset::chain(2)).unwrap())
            .unwrap()
            .passed());
    }

    #[test]
    fn join_on_a_lattice() {
        let d = DownsetMonad {
            nonempty: false,
            cap: 6,
        };
        for l in [FinPoset::chain(3), make_poset(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()] {
            let c = EMAlgebraCandidate::new(&d, l.clone(), |s| l.join_of(s).unwrap()).unwrap();
            let r = check_em_algebra(&d, &c).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn pick_max_on_a_non_lattice_fails() {
        let h = DownsetMonad::hoare();
        let v = make_poset(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let c = EMAlgebraCandidate::new(&h, v.clone(), |s| s.max_element().unwrap()).unwrap();
        let r = check_em_algebra(&h, &c).unwrap();
        assert!(!r.passed());
        assert!(r.laws.iter().any(|l| l.counterexample.is_some()));
    }

    #[test]
    fn certification_small() {
        let two = FinPoset::discrete_n(2);
        let r = certify_full_faithful(CorrespondenceId::Box, &two, &two).unwrap();
        assert_eq!((r.kleisli_count, r.transformer_count, r.bijection), (16, 16, true));
    }
}
