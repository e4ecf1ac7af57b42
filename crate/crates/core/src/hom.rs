//! Homomorphisms stored as total maps, pullbacks and sections.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::monoid::{FiniteMonoid, MemberRule, ProductRule, TupleRule, EXHAUSTIVE_LIMIT};

const SAMPLED_PAIRS: usize = 10_000;

/// A monoid homomorphism as an explicit total map on element indices.
#[derive(Clone, Debug)]
pub struct MonoidHom {
    source: Arc<FiniteMonoid>,
    target: Arc<FiniteMonoid>,
    map: Vec<usize>,
}

impl MonoidHom {
    /// Validates `map` as a homomorphism (see [`MonoidHom::check`]).
    pub fn new(
        source: Arc<FiniteMonoid>,
        target: Arc<FiniteMonoid>,
        map: Vec<usize>,
    ) -> Result<Self> {
        let hom = Self::new_unchecked(source, target, map)?;
        hom.check().map_err(|(a, b)| {
            Error::NotWellDefined(format!(
                "map({}) * map({}) != map({} * {})",
                hom.source.element(a),
                hom.source.element(b),
                hom.source.element(a),
                hom.source.element(b)
            ))
        })?;
        Ok(hom)
    }

    /// Only checks that the map is total and lands in the target.
    pub fn new_unchecked(
        source: Arc<FiniteMonoid>,
        target: Arc<FiniteMonoid>,
        map: Vec<usize>,
    ) -> Result<Self> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::InvalidInput(
                "map is not total into the target".into(),
            ));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(m: &Arc<FiniteMonoid>) -> Self {
        Self {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.len()).collect(),
        }
    }

    pub fn source(&self) -> &Arc<FiniteMonoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteMonoid> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `map(1) = 1`, then `map(x g) = map(x) map(g)` on every right Cayley
    /// edge, then `map(a) map(b) = map(ab)` on all pairs up to
    /// [`EXHAUSTIVE_LIMIT`] elements (sampled with a fixed seed above).
    /// Returns a failing pair.
    pub fn check(&self) -> std::result::Result<(), (usize, usize)> {
        let (s, t) = (&*self.source, &*self.target);
        if self.map[0] != 0 {
            return Err((0, 0));
        }
        for x in 0..s.len() {
            for (g, &gen) in s.generators().iter().enumerate() {
                if self.map[s.right(x, g)] != t.mul(self.map[x], self.map[gen]) {
                    return Err((x, gen));
                }
            }
        }
        let pair = |a: usize, b: usize| {
            if self.map[s.mul(a, b)] == t.mul(self.map[a], self.map[b]) {
                Ok(())
            } else {
                Err((a, b))
            }
        };
        if s.len() <= EXHAUSTIVE_LIMIT {
            for a in 0..s.len() {
                for b in 0..s.len() {
                    pair(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SAMPLED_PAIRS {
                pair(rng.gen_range(0..s.len()), rng.gen_range(0..s.len()))?;
            }
        }
        Ok(())
    }

    /// Sorted image.
    pub fn image(&self) -> Vec<usize> {
        let mut hit = vec![false; self.target.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        (0..hit.len()).filter(|&y| hit[y]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.len()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.len()
    }

    pub fn preimages(&self, y: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }

    /// Preimage of the identity.
    pub fn kernel(&self) -> Vec<usize> {
        self.preimages(0)
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &MonoidHom) -> Result<MonoidHom> {
        if !Arc::ptr_eq(&self.target, &then.source)
            && self.target.elements() != then.source.elements()
        {
            return Err(Error::SizeMismatch("composed maps do not meet".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        })
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Result<MonoidHom> {
        if !self.is_injective() || !self.is_surjective() {
            return Err(Error::InvalidInput("map is not a bijection".into()));
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            map: inv,
        })
    }
}

/// The homomorphism sending the `i`-th generator of `source` to `images[i]`,
/// obtained by replaying witness words.
pub fn hom_from_images(
    source: &Arc<FiniteMonoid>,
    target: &Arc<FiniteMonoid>,
    images: &[usize],
) -> Result<MonoidHom> {
    if images.len() != source.num_generators() {
        return Err(Error::SizeMismatch(format!(
            "{} images for {} generators",
            images.len(),
            source.num_generators()
        )));
    }
    if let Some(&bad) = images.iter().find(|&&y| y >= target.len()) {
        return Err(Error::InvalidInput(format!(
            "image index {bad} outside target"
        )));
    }
    let map: Vec<usize> = (0..source.len())
        .map(|x| {
            source
                .word(x)
                .into_iter()
                .fold(0, |acc, g| target.mul(acc, images[g]))
        })
        .collect();
    MonoidHom::new(source.clone(), target.clone(), map)
}

/// Fiber product `H' = {(h, k') : alpha(h) = rho(k')}` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: FiniteGroup,
    pub to_h: MonoidHom,
    pub to_k_prime: MonoidHom,
}

pub fn pullback(alpha: &MonoidHom, rho: &MonoidHom) -> Result<Pullback> {
    if !alpha.is_surjective() {
        return Err(Error::NotSurjective("alpha".into()));
    }
    if !rho.is_surjective() {
        return Err(Error::NotSurjective("rho".into()));
    }
    if alpha.target().elements() != rho.target().elements() {
        return Err(Error::SizeMismatch(
            "alpha and rho have different codomains".into(),
        ));
    }
    let (h, kp) = (alpha.source(), rho.source());
    let mut pairs = Vec::new();
    for a in 0..h.len() {
        for b in 0..kp.len() {
            if alpha.apply(a) == rho.apply(b) {
                pairs.push(Element::Tuple(vec![
                    h.element(a).clone(),
                    kp.element(b).clone(),
                ]));
            }
        }
    }
    let identity = Element::Tuple(vec![h.element(0).clone(), kp.element(0).clone()]);
    let rule = TupleRule(vec![
        Box::new(MemberRule { monoid: h }) as Box<dyn ProductRule>,
        Box::new(MemberRule { monoid: kp }),
    ]);
    let group = FiniteGroup::from_elements(&pairs, identity, &rule)?;
    if group.order() != pairs.len() {
        return Err(Error::InternalInconsistency(
            "fiber product is not closed".into(),
        ));
    }
    let project = |slot: usize, onto: &Arc<FiniteMonoid>| -> Result<MonoidHom> {
        let map = group
            .elements()
            .iter()
            .map(|e| {
                onto.index_of(&e.as_tuple().expect("pair")[slot])
                    .expect("component")
            })
            .collect();
        MonoidHom::new(group.monoid().clone(), onto.clone(), map)
    };
    let to_h = project(0, h)?;
    let to_k_prime = project(1, kp)?;
    Ok(Pullback {
        group,
        to_h,
        to_k_prime,
    })
}

/// A set-theoretic right inverse of a surjection `alpha: H -> K`.
#[derive(Clone, Debug)]
pub struct Section {
    alpha: MonoidHom,
    map: Vec<usize>,
}

impl Section {
    pub fn alpha(&self) -> &MonoidHom {
        &self.alpha
    }

    pub fn apply(&self, k: usize) -> usize {
        self.map[k]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// `sigma(1) = 1`, and otherwise the least preimage in element order.
pub fn canonical_section(alpha: &MonoidHom) -> Result<Section> {
    let k = alpha.target().len();
    let mut map = vec![usize::MAX; k];
    for (h, &y) in alpha.map().iter().enumerate() {
        if map[y] == usize::MAX {
            map[y] = h;
        }
    }
    if map.contains(&usize::MAX) {
        return Err(Error::NotSurjective(
            "alpha has no preimage for some element".into(),
        ));
    }
    map[0] = 0;
    Ok(Section {
        alpha: alpha.clone(),
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_by_name, is_isomorphic};

    fn c(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    fn reduce(from: usize, to: usize) -> MonoidHom {
        let (g, h) = (c(from), c(to));
        hom_from_images(g.monoid(), h.monoid(), &[h.generators()[0]]).unwrap()
    }

    #[test]
    fn trivial_target() {
        let (g, t) = (c(3), FiniteGroup::trivial());
        let hom = hom_from_images(g.monoid(), t.monoid(), &[0]).unwrap();
        assert!(hom.map().iter().all(|&y| y == 0));
    }

    #[test]
    fn c4_onto_c2() {
        let hom = reduce(4, 2);
        let (g, h) = (hom.source().clone(), hom.target().clone());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(hom.apply(g.mul(a, b)), h.mul(hom.apply(a), hom.apply(b)));
            }
        }
        assert!(hom.is_surjective());
        assert_eq!(hom.kernel().len(), 2);
    }

    #[test]
    fn c2_into_c3_not_well_defined() {
        let (g, h) = (c(2), c(3));
        assert!(matches!(
            hom_from_images(g.monoid(), h.monoid(), &[h.generators()[0]]),
            Err(Error::NotWellDefined(_))
        ));
        assert!(matches!(
            hom_from_images(g.monoid(), h.monoid(), &[]),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn pullback_along_identity() {
        let alpha = reduce(4, 2);
        let id = MonoidHom::identity(alpha.target());
        let pb = pullback(&alpha, &id).unwrap();
        assert_eq!(pb.group.order(), 4);
        assert!(is_isomorphic(&pb.group, &c(4)).unwrap().is_some());
        assert!(pb.to_h.is_surjective() && pb.to_k_prime.is_surjective());
        assert!(pb.to_h.is_injective());
    }

    #[test]
    fn pullback_over_trivial_is_product() {
        let t = FiniteGroup::trivial();
        let s3 = FiniteGroup::symmetric(3);
        let c2 = c(2);
        let alpha = hom_from_images(s3.monoid(), t.monoid(), &[0, 0]).unwrap();
        let rho = hom_from_images(c2.monoid(), t.monoid(), &[0]).unwrap();
        let pb = pullback(&alpha, &rho).unwrap();
        assert_eq!(pb.group.order(), 12);
        let d6 = group_by_name("S3xC2").unwrap();
        assert!(is_isomorphic(&pb.group, &d6).unwrap().is_some());
    }

    #[test]
    fn pullback_requires_surjections() {
        let t = FiniteGroup::trivial();
        let c2 = c(2);
        let into = hom_from_images(t.monoid(), c2.monoid(), &[0]).unwrap();
        let id = MonoidHom::identity(c2.monoid());
        assert!(matches!(pullback(&into, &id), Err(Error::NotSurjective(_))));
    }

    #[test]
    fn sections() {
        let id = MonoidHom::identity(c(3).monoid());
        let s = canonical_section(&id).unwrap();
        assert_eq!(s.map(), &[0, 1, 2]);

        let alpha = reduce(4, 2);
        let s = canonical_section(&alpha).unwrap();
        assert_eq!(s.apply(0), 0);
        let g = alpha.target().generators()[0];
        let least = (0..4).find(|&h| alpha.apply(h) == g).unwrap();
        assert_eq!(s.apply(g), least);
        for k in 0..2 {
            assert_eq!(alpha.apply(s.apply(k)), k);
        }

        let t = FiniteGroup::trivial();
        let s3 = FiniteGroup::symmetric(3);
        let to_t = hom_from_images(s3.monoid(), t.monoid(), &[0, 0]).unwrap();
        assert_eq!(canonical_section(&to_t).unwrap().map(), &[0]);

        let into = hom_from_images(t.monoid(), c(2).monoid(), &[0]).unwrap();
        assert!(matches!(
            canonical_section(&into),
            Err(Error::NotSurjective(_))
        ));
    }
}
