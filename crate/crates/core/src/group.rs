use std::ops::Deref;
use std::sync::{Arc, OnceLock};

use crate::element::{Element, Transformation};
use crate::error::{Error, Result};
use crate::hom::MonoidHom;
use crate::monoid::{
    generate_monoid, FiniteMonoid, MemberRule, ProductRule, TupleRule, DEFAULT_CAP,
};

/// Largest group order handled by [`is_isomorphic`] and the normal subgroup
/// search.
pub const ISOMORPHISM_BOUND: usize = 200;

/// A finite monoid in which every element is invertible.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    monoid: Arc<FiniteMonoid>,
    inverse: Vec<usize>,
}

impl Deref for FiniteGroup {
    type Target = FiniteMonoid;

    fn deref(&self) -> &FiniteMonoid {
        &self.monoid
    }
}

impl FiniteGroup {
    pub fn from_monoid(monoid: Arc<FiniteMonoid>) -> Result<Self> {
        let n = monoid.len();
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            if inverse[x] != usize::MAX {
                continue;
            }
            // x^(k-1) is the inverse when x^k = 1; otherwise x is not a unit
            let mut power = x;
            let mut prev = 0;
            for _ in 0..n {
                if power == 0 {
                    break;
                }
                prev = power;
                power = monoid.mul(power, x);
            }
            if power != 0 {
                return Err(Error::NotAGroup(format!(
                    "element {} has no inverse",
                    monoid.element(x)
                )));
            }
            let inv = if x == 0 { 0 } else { prev };
            if monoid.mul(x, inv) != 0 || monoid.mul(inv, x) != 0 {
                return Err(Error::NotAGroup(format!(
                    "element {} has no two-sided inverse",
                    monoid.element(x)
                )));
            }
            inverse[x] = inv;
            inverse[inv] = x;
        }
        Ok(Self { monoid, inverse })
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    pub fn order(&self) -> usize {
        self.monoid.len()
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn order_of(&self, x: usize) -> usize {
        let mut power = x;
        let mut k = 1;
        while power != 0 {
            power = self.mul(power, x);
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(self.inverse(by), x), by)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted subgroup generated by `xs`.
    pub fn subgroup_generated(&self, xs: &[usize]) -> Vec<usize> {
        let mut c = self.closure(xs);
        if c.first() != Some(&0) {
            c.insert(0, 0);
        }
        c
    }

    pub fn trivial() -> Self {
        Self::from_permutations(1, &[Transformation::identity(1)]).expect("trivial group")
    }

    /// Permutation group generated by `gens` on `degree` points.
    pub fn from_permutations(degree: usize, gens: &[Transformation]) -> Result<Self> {
        if let Some(g) = gens
            .iter()
            .find(|g| !g.is_permutation() || g.degree() != degree)
        {
            return Err(Error::InvalidInput(format!(
                "{g} is not a permutation of degree {degree}"
            )));
        }
        let gens: Vec<Transformation> = if gens.is_empty() {
            vec![Transformation::identity(degree)]
        } else {
            gens.to_vec()
        };
        let m = FiniteMonoid::transformations(degree, &gens, DEFAULT_CAP)?;
        Self::from_monoid(Arc::new(m))
    }

    /// Group from a multiplication table on labels `0..order`.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        Self::from_monoid(Arc::new(FiniteMonoid::from_table(order, table)?))
    }

    /// Cyclic group generated by the permutation `(1 2 .. n)`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        Self::from_permutations(n, &[Transformation::cycle(n)]).expect("cyclic group")
    }

    /// Symmetric group generated by `(1 2 .. n)` and `(1 2)`.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n <= 2 {
            return Self::cyclic(n);
        }
        let swap = Transformation::from_cycles(n, &[vec![0, 1]]).expect("swap");
        Self::from_permutations(n, &[Transformation::cycle(n), swap]).expect("symmetric group")
    }

    /// Alternating group generated by the 3-cycles `(1 2 k)`.
    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return Self::trivial();
        }
        let gens: Vec<Transformation> = (2..n as u32)
            .map(|k| Transformation::from_cycles(n, &[vec![0, 1, k]]).expect("3-cycle"))
            .collect();
        Self::from_permutations(n, &gens).expect("alternating group")
    }

    /// Symmetry group of the regular `n`-gon, of order `2n` (`n >= 3`).
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let reflection =
            Transformation::new((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect())
                .expect("reflection");
        Self::from_permutations(n, &[Transformation::cycle(n), reflection]).expect("dihedral group")
    }

    /// Dicyclic group of order `4n` (`n >= 2`); `n = 2` is the quaternion
    /// group.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 2);
        let two_n = 2 * n;
        let order = 4 * n;
        // label a^k b^e as k + 2n*e
        let label = |k: usize, e: usize| (k % two_n + two_n * e) as u32;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            let (k, e) = (x % two_n, x / two_n);
            for y in 0..order {
                let (l, f) = (y % two_n, y / two_n);
                table[x * order + y] = match (e, f) {
                    (0, _) => label(k + l, f),
                    (_, 0) => label(k + two_n - l, 1),
                    _ => label(k + two_n - l + n, 0),
                };
            }
        }
        Self::from_table(order, table).expect("dicyclic group")
    }

    pub fn quaternion() -> Self {
        Self::dicyclic(2)
    }

    /// Direct product with tuple elements; generators are the factor
    /// generators embedded coordinatewise, factor by factor.
    pub fn direct_product(factors: &[&FiniteGroup]) -> Result<Self> {
        if factors.is_empty() {
            return Ok(Self::trivial());
        }
        let identity = Element::Tuple(factors.iter().map(|f| f.element(0).clone()).collect());
        let mut seeds = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for &g in f.generators() {
                let mut parts: Vec<Element> =
                    factors.iter().map(|f| f.element(0).clone()).collect();
                parts[i] = f.element(g).clone();
                seeds.push(Element::Tuple(parts));
            }
        }
        let rule = TupleRule(
            factors
                .iter()
                .map(|f| Box::new(MemberRule { monoid: f.monoid() }) as Box<dyn ProductRule>)
                .collect(),
        );
        let m = generate_monoid(&seeds, identity, &rule, DEFAULT_CAP)?;
        Self::from_monoid(Arc::new(m))
    }

    /// `self^k`; the trivial group for `k = 0`.
    pub fn power(&self, k: usize) -> Result<Self> {
        let factors: Vec<&FiniteGroup> = std::iter::repeat_n(self, k).collect();
        Self::direct_product(&factors)
    }

    /// Group on a set of element values closed under `rule`, re-enumerated
    /// from a greedy generating set.
    pub fn from_elements<R: ProductRule + ?Sized>(
        elements: &[Element],
        identity: Element,
        rule: &R,
    ) -> Result<Self> {
        let seeds: Vec<Element> = if elements.is_empty() {
            vec![identity.clone()]
        } else {
            elements.to_vec()
        };
        let all = generate_monoid(&seeds, identity.clone(), rule, elements.len().max(1) + 1)?;
        let members: Vec<usize> = (0..all.len()).collect();
        let gens: Vec<usize> = all
            .greedy_generators(&members)
            .into_iter()
            .filter(|&g| g != 0)
            .collect();
        let gens: Vec<Element> = if gens.is_empty() {
            vec![identity.clone()]
        } else {
            gens.iter().map(|&g| all.element(g).clone()).collect()
        };
        let m = generate_monoid(&gens, identity, rule, all.len())?;
        Self::from_monoid(Arc::new(m))
    }

    /// Subgroup of a monoid on `members` with identity `identity`. Returns the
    /// group and the embedding of its element indices into `parent`.
    pub fn from_subset(
        parent: &FiniteMonoid,
        members: &[usize],
        identity: usize,
    ) -> Result<(Self, Vec<usize>)> {
        let (m, embedding) = parent.submonoid(members, identity)?;
        Ok((Self::from_monoid(Arc::new(m))?, embedding))
    }
}

/// Element orders, sorted; a cheap isomorphism invariant.
fn order_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|x| g.order_of(x)).collect();
    v.sort_unstable();
    v
}

/// Searches for an isomorphism `g1 -> g2` by backtracking over images of a
/// small generating set of `g1`.
pub fn is_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Option<MonoidHom>> {
    for g in [g1, g2] {
        if g.order() > ISOMORPHISM_BOUND {
            return Err(Error::SizeExceeded {
                size: g.order(),
                bound: ISOMORPHISM_BOUND,
            });
        }
    }
    if g1.order() != g2.order() || order_profile(g1) != order_profile(g2) {
        return Ok(None);
    }
    let n = g1.order();
    let orders1: Vec<usize> = (0..n).map(|x| g1.order_of(x)).collect();
    let orders2: Vec<usize> = (0..n).map(|x| g2.order_of(x)).collect();

    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(orders1[x]), x));
    let gens = g1.greedy_generators(&by_order);

    let mut search = IsoSearch {
        g1,
        g2,
        gens: &gens,
        orders1: &orders1,
        orders2: &orders2,
        images: Vec::new(),
    };
    let Some(map) = search.extend() else {
        return Ok(None);
    };
    let hom = MonoidHom::new(g1.monoid().clone(), g2.monoid().clone(), map)?;
    Ok(Some(hom))
}

struct IsoSearch<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    gens: &'a [usize],
    orders1: &'a [usize],
    orders2: &'a [usize],
    images: Vec<usize>,
}

impl IsoSearch<'_> {
    /// Partial map on the subgroup generated by the assigned generators, or
    /// `None` if the assignment is inconsistent or non-injective.
    fn partial_map(&self) -> Option<Vec<usize>> {
        let n = self.g1.order();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for (i, &g) in self.gens[..self.images.len()].iter().enumerate() {
                let y = self.g1.mul(x, g);
                let fy = self.g2.mul(map[x], self.images[i]);
                if map[y] == usize::MAX {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = fy;
                    queue.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn extend(&mut self) -> Option<Vec<usize>> {
        let map = self.partial_map()?;
        if self.images.len() == self.gens.len() {
            return map.iter().all(|&v| v != usize::MAX).then_some(map);
        }
        let g = self.gens[self.images.len()];
        for candidate in 0..self.g2.order() {
            if self.orders2[candidate] != self.orders1[g] {
                continue;
            }
            self.images.push(candidate);
            if let Some(found) = self.extend() {
                return Some(found);
            }
            self.images.pop();
        }
        None
    }
}

/// Names of the reference groups used to identify small groups.
const LIBRARY_NAMES: &[&str] = &[
    "1",
    "C2",
    "C3",
    "C4",
    "C2xC2",
    "C5",
    "C6",
    "S3",
    "C7",
    "C8",
    "C2xC4",
    "C2xC2xC2",
    "D4",
    "Q8",
    "C9",
    "C3xC3",
    "C10",
    "D5",
    "C11",
    "C12",
    "C2xC6",
    "D6",
    "A4",
    "Dic3",
    "C13",
    "C14",
    "D7",
    "C15",
    "C16",
    "C4xC4",
    "C2xC8",
    "C2xC2xC4",
    "C2xC2xC2xC2",
    "D8",
    "Q16",
    "C2xD4",
    "C2xQ8",
];

/// Parses a group name: `1`/`trivial`, `C<n>`, `S<n>`, `A<n>`, `D<n>`
/// (order `2n`), `Q8`, `Q16`, `Dic<n>` (order `4n`), and direct products
/// joined by `x`, e.g. `C2xC2xC3`.
pub fn group_by_name(name: &str) -> Option<FiniteGroup> {
    let parts: Vec<&str> = name.split('x').collect();
    if parts.len() > 1 {
        let factors: Option<Vec<FiniteGroup>> = parts.iter().map(|p| simple_factor(p)).collect();
        let factors = factors?;
        let refs: Vec<&FiniteGroup> = factors.iter().collect();
        return FiniteGroup::direct_product(&refs).ok();
    }
    simple_factor(name)
}

fn simple_factor(name: &str) -> Option<FiniteGroup> {
    let number = |prefix: &str| -> Option<usize> { name.strip_prefix(prefix)?.parse().ok() };
    match name {
        "1" | "trivial" | "C1" => return Some(FiniteGroup::trivial()),
        "Q8" => return Some(FiniteGroup::quaternion()),
        "Q16" => return Some(FiniteGroup::dicyclic(4)),
        _ => {}
    }
    if let Some(n) = number("Dic") {
        return (2..=12).contains(&n).then(|| FiniteGroup::dicyclic(n));
    }
    if let Some(n) = number("C") {
        return (1..=ISOMORPHISM_BOUND)
            .contains(&n)
            .then(|| FiniteGroup::cyclic(n));
    }
    if let Some(n) = number("S") {
        return (1..=5).contains(&n).then(|| FiniteGroup::symmetric(n));
    }
    if let Some(n) = number("A") {
        return (1..=5).contains(&n).then(|| FiniteGroup::alternating(n));
    }
    if let Some(n) = number("D") {
        return (3..=100).contains(&n).then(|| FiniteGroup::dihedral(n));
    }
    None
}

fn library() -> &'static [(&'static str, FiniteGroup)] {
    static LIB: OnceLock<Vec<(&'static str, FiniteGroup)>> = OnceLock::new();
    LIB.get_or_init(|| {
        LIBRARY_NAMES
            .iter()
            .map(|&n| (n, group_by_name(n).expect("library name parses")))
            .collect()
    })
}

/// Names `g` if it is isomorphic to one of the reference groups of order at
/// most 16.
pub fn identify(g: &FiniteGroup) -> Option<&'static str> {
    if g.order() > 16 {
        return None;
    }
    library()
        .iter()
        .filter(|(_, h)| h.order() == g.order())
        .find(|(_, h)| matches!(is_isomorphic(g, h), Ok(Some(_))))
        .map(|(n, _)| *n)
}

/// Multiplication table of a group as labels, for serialization.
pub fn table_of(g: &FiniteGroup) -> Vec<Vec<usize>> {
    (0..g.order())
        .map(|a| (0..g.order()).map(|b| g.mul(a, b)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn library_orders() {
        for (name, g) in library() {
            assert!(g.order() <= 16, "{name}");
        }
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert_eq!(FiniteGroup::dicyclic(3).order(), 12);
        assert_eq!(FiniteGroup::alternating(4).order(), 12);
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::symmetric(4).order(), 24);
        assert_eq!(group_by_name("C2xC2xC3").unwrap().order(), 12);
        assert!(group_by_name("X9").is_none());
    }

    #[test]
    fn library_groups_pairwise_distinct() {
        let lib = library();
        for (i, (a, g)) in lib.iter().enumerate() {
            for (b, h) in &lib[i + 1..] {
                if g.order() == h.order() {
                    assert!(is_isomorphic(g, h).unwrap().is_none(), "{a} ~ {b}");
                }
            }
            assert_eq!(identify(g), Some(*a));
        }
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = FiniteGroup::quaternion();
        let involutions = (0..8).filter(|&x| q.order_of(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
    }

    #[test]
    fn c4_not_klein() {
        let c4 = FiniteGroup::cyclic(4);
        let v = group_by_name("C2xC2").unwrap();
        assert!(is_isomorphic(&c4, &v).unwrap().is_none());
    }

    #[test]
    fn c6_is_c2_times_c3() {
        let c6 = FiniteGroup::cyclic(6);
        let p = group_by_name("C2xC3").unwrap();
        let iso = is_isomorphic(&c6, &p).unwrap().expect("CRT");
        // table comparison
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(iso.apply(c6.mul(a, b)), p.mul(iso.apply(a), iso.apply(b)));
            }
        }
        assert!(iso.is_injective());
    }

    #[test]
    fn self_isomorphism_found() {
        let s3 = FiniteGroup::symmetric(3);
        let iso = is_isomorphic(&s3, &s3).unwrap().unwrap();
        assert!(iso.is_surjective());
    }

    #[test]
    fn size_bound() {
        let big = FiniteGroup::cyclic(201);
        assert!(matches!(
            is_isomorphic(&big, &big),
            Err(Error::SizeExceeded { size: 201, .. })
        ));
    }

    #[test]
    fn non_group_rejected() {
        let m = FiniteMonoid::from_table(2, vec![0, 0, 0, 1]).unwrap();
        assert!(matches!(
            FiniteGroup::from_monoid(Arc::new(m)),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn inverses() {
        let s4 = FiniteGroup::symmetric(4);
        for x in 0..24 {
            assert_eq!(s4.mul(x, s4.inverse(x)), 0);
            assert_eq!(s4.mul(s4.inverse(x), x), 0);
        }
    }
}
