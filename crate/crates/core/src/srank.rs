//! Normal subgroups, quotients and the `S`-rank of a finite group.
//!
//! For a finite simple group `S`, `M_S(G)` is the intersection of all normal
//! subgroups `N` with `G/N ≅ S`, and `r_S(G)` is the `k` with
//! `G/M_S(G) ≅ S^k`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::{is_isomorphic, FiniteGroup, ISOMORPHISM_BOUND};
use crate::hom::MonoidHom;

fn check_size(g: &FiniteGroup) -> Result<()> {
    if g.order() > ISOMORPHISM_BOUND {
        return Err(Error::SizeExceeded {
            size: g.order(),
            bound: ISOMORPHISM_BOUND,
        });
    }
    Ok(())
}

/// Sorted normal closure of `xs`.
pub fn normal_closure(g: &FiniteGroup, xs: &[usize]) -> Vec<usize> {
    let conjugates: Vec<usize> = xs
        .iter()
        .flat_map(|&x| (0..g.order()).map(move |y| g.conjugate(x, y)))
        .collect();
    g.subgroup_generated(&conjugates)
}

/// All normal subgroups as sorted element sets, ordered by size and then
/// lexicographically. Every normal subgroup is a join of normal closures of
/// single elements, so joins are taken until nothing new appears.
pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Vec<usize>>> {
    check_size(g)?;
    let mut found: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| normal_closure(g, &[x])).collect();
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    let atoms = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &atoms {
                let join: Vec<usize> = a.iter().chain(b).copied().collect();
                let join = g.subgroup_generated(&join);
                if found.insert(join.clone()) {
                    next.push(join);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

pub fn is_normal(g: &FiniteGroup, n: &[usize]) -> bool {
    let set: BTreeSet<usize> = n.iter().copied().collect();
    set.contains(&0)
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
        && set
            .iter()
            .all(|&a| (0..g.order()).all(|y| set.contains(&g.conjugate(a, y))))
}

/// `G/N` on cosets labelled by their least element, with the projection.
pub fn quotient(g: &FiniteGroup, n: &[usize]) -> Result<(FiniteGroup, MonoidHom)> {
    if !is_normal(g, n) {
        return Err(Error::InvalidInput("subgroup is not normal".into()));
    }
    let mut rep = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if rep[x] == usize::MAX {
            for &k in n {
                rep[g.mul(x, k)] = x;
            }
            reps.push(x);
        }
    }
    let label = |x: usize| reps.binary_search(&rep[x]).expect("representative") as u32;
    let order = reps.len();
    let table: Vec<u32> = reps
        .iter()
        .flat_map(|&a| reps.iter().map(move |&b| (a, b)))
        .map(|(a, b)| label(g.mul(a, b)))
        .collect();
    let q = FiniteGroup::from_table(order, table)?;
    let map = (0..g.order())
        .map(|x| q.index_of(&Element::Index(label(x))).expect("coset label"))
        .collect();
    let projection = MonoidHom::new(g.monoid().clone(), q.monoid().clone(), map)?;
    Ok((q, projection))
}

/// Non-trivial with no normal subgroups besides `1` and itself.
pub fn is_simple_group(s: &FiniteGroup) -> Result<bool> {
    Ok(s.order() > 1 && normal_subgroups(s)?.len() == 2)
}

fn require_simple(s: &FiniteGroup) -> Result<()> {
    if is_simple_group(s)? {
        Ok(())
    } else {
        Err(Error::NotSimple(format!(
            "group of order {} has a proper non-trivial normal subgroup or is trivial",
            s.order()
        )))
    }
}

/// `M_S(G)`, sorted; all of `G` when no quotient is isomorphic to `S`.
pub fn m_s(g: &FiniteGroup, s: &FiniteGroup) -> Result<Vec<usize>> {
    require_simple(s)?;
    let mut meet: Vec<usize> = (0..g.order()).collect();
    for n in normal_subgroups(g)? {
        if n.len() * s.order() != g.order() {
            continue;
        }
        let (q, _) = quotient(g, &n)?;
        if is_isomorphic(&q, s)?.is_some() {
            meet.retain(|x| n.binary_search(x).is_ok());
        }
    }
    Ok(meet)
}

#[derive(Clone, Debug)]
pub struct SRankResult {
    pub group: FiniteGroup,
    pub simple: FiniteGroup,
    pub m_s: Vec<usize>,
    pub rank: usize,
}

/// Computes `M_S(G)` and `r_S(G)`, confirming `G/M_S(G) ≅ S^k`.
pub fn s_rank(g: &FiniteGroup, s: &FiniteGroup) -> Result<SRankResult> {
    let meet = m_s(g, s)?;
    let mut index = g.order() / meet.len();
    let mut rank = 0;
    while index > 1 {
        if !index.is_multiple_of(s.order()) {
            return Err(Error::InternalInconsistency(format!(
                "|G/M_S(G)| = {} is not a power of |S| = {}",
                g.order() / meet.len(),
                s.order()
            )));
        }
        index /= s.order();
        rank += 1;
    }
    let (q, _) = quotient(g, &meet)?;
    let power = s.power(rank)?;
    if is_isomorphic(&q, &power)?.is_none() {
        return Err(Error::InternalInconsistency(format!(
            "G/M_S(G) is not isomorphic to S^{rank}"
        )));
    }
    Ok(SRankResult {
        group: g.clone(),
        simple: s.clone(),
        m_s: meet,
        rank,
    })
}

pub fn r_s(g: &FiniteGroup, s: &FiniteGroup) -> Result<usize> {
    s_rank(g, s).map(|r| r.rank)
}

/// Whether `r_S(H) <= r_S(G)` for a surjection `phi: G -> H`.
pub fn check_rank_monotone(phi: &MonoidHom, s: &FiniteGroup) -> Result<bool> {
    if !phi.is_surjective() {
        return Err(Error::NotSurjective("phi".into()));
    }
    let g = FiniteGroup::from_monoid(phi.source().clone())?;
    let h = FiniteGroup::from_monoid(Arc::clone(phi.target()))?;
    Ok(r_s(&h, s)? <= r_s(&g, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_by_name;
    use crate::hom::hom_from_images;
    use crate::oracle;

    fn g(name: &str) -> FiniteGroup {
        group_by_name(name).unwrap()
    }

    #[test]
    fn normal_subgroup_counts() {
        assert_eq!(normal_subgroups(&g("C5")).unwrap().len(), 2);
        let c4 = normal_subgroups(&g("C4")).unwrap();
        assert_eq!(c4.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 2, 4]);
        let s3 = normal_subgroups(&g("S3")).unwrap();
        assert_eq!(s3.iter().map(Vec::len).collect::<Vec<_>>(), vec![1, 3, 6]);
        for name in ["C2xC2", "D4", "Q8", "A4", "S4", "C2xS3", "Dic3"] {
            let group = g(name);
            assert_eq!(
                normal_subgroups(&group).unwrap(),
                {
                    let mut v = oracle::normal_subgroups_by_conjugation(&group);
                    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
                    v
                },
                "{name}"
            );
        }
    }

    #[test]
    fn m_s_examples() {
        let c2 = g("C2");
        assert_eq!(m_s(&c2, &c2).unwrap(), vec![0]);
        assert_eq!(m_s(&g("C4"), &c2).unwrap().len(), 2);
        assert_eq!(m_s(&c2, &g("C3")).unwrap(), vec![0, 1]);
        assert!(matches!(m_s(&c2, &g("C4")), Err(Error::NotSimple(_))));
        assert!(matches!(m_s(&c2, &g("1")), Err(Error::NotSimple(_))));
    }

    #[test]
    fn ranks_of_powers() {
        for s in [g("C2"), g("C3")] {
            for n in 1..=3 {
                assert_eq!(r_s(&s.power(n).unwrap(), &s).unwrap(), n);
            }
        }
        assert_eq!(r_s(&g("C3"), &g("C2")).unwrap(), 0);
        // D4 abelianizes to C2 x C2
        assert_eq!(r_s(&g("D4"), &g("C2")).unwrap(), 2);
        assert_eq!(r_s(&g("C2xC2"), &g("C2")).unwrap(), 2);
    }

    #[test]
    fn quotient_by_center() {
        let d4 = g("D4");
        let center: Vec<usize> = (0..d4.order())
            .filter(|&z| (0..d4.order()).all(|y| d4.mul(z, y) == d4.mul(y, z)))
            .collect();
        let (q, proj) = quotient(&d4, &center).unwrap();
        assert_eq!(q.order(), 4);
        assert!(is_isomorphic(&q, &g("C2xC2")).unwrap().is_some());
        assert!(proj.is_surjective());
    }

    #[test]
    fn monotone_examples() {
        let c2 = g("C2");
        assert!(check_rank_monotone(&MonoidHom::identity(c2.monoid()), &c2).unwrap());
        let c4 = g("C4");
        let reduce = hom_from_images(c4.monoid(), c2.monoid(), &[1]).unwrap();
        assert!(check_rank_monotone(&reduce, &c2).unwrap());
        let s3 = g("S3");
        let sign = hom_from_images(s3.monoid(), c2.monoid(), &[0, 1]).unwrap();
        assert!(check_rank_monotone(&sign, &c2).unwrap());
        let zero = MonoidHom::new(c2.monoid().clone(), c2.monoid().clone(), vec![0, 0]).unwrap();
        assert!(matches!(
            check_rank_monotone(&zero, &c2),
            Err(Error::NotSurjective(_))
        ));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn rank_matches_oracle(pick in 0usize..12, simple in 0usize..3) {
            let names = ["C2", "C4", "C6", "S3", "D4", "Q8", "C2xC2", "A4", "C2xC2xC2", "C3xC3", "C2xC6", "Dic3"];
            let group = g(names[pick]);
            let s = g(["C2", "C3", "C5"][simple]);
            proptest::prop_assert_eq!(r_s(&group, &s).unwrap(), oracle::s_rank(&group, &s));
            let meet = m_s(&group, &s).unwrap();
            proptest::prop_assert!(is_normal(&group, &meet));
            let p = s.order();
            for a in 0..group.order() {
                proptest::prop_assert!(meet.binary_search(&group.pow(a, p)).is_ok());
                for b in 0..group.order() {
                    let commutator = group.product(&[group.inverse(a), group.inverse(b), a, b]);
                    proptest::prop_assert!(meet.binary_search(&commutator).is_ok());
                }
            }
        }
    }
}
