//! Green's relations, the minimal ideal and maximal subgroups.
//!
//! R-, L- and J-classes are the strongly connected components of the right,
//! left and two-sided Cayley graphs; H is the meet of R and L.

mod rees;

pub use rees::{rees_coordinates, ReesCoordinates};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::hom::MonoidHom;
use crate::monoid::FiniteMonoid;
use crate::report::Check;

/// A partition of `0..n` into classes, each sorted, listed by least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from arbitrary class labels.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut relabel = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let class_of = labels
            .iter()
            .enumerate()
            .map(|(x, l)| {
                let c = *relabel.entry(*l).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(x);
                c
            })
            .collect();
        Self { class_of, classes }
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// Common refinement.
    pub fn meet(&self, other: &Partition) -> Partition {
        let labels: Vec<usize> = (0..self.class_of.len())
            .map(|x| self.class_of[x] * other.len() + other.class_of[x])
            .collect();
        Partition::from_labels(&labels)
    }
}

/// A preorder on the classes of a partition, given by the edges of the
/// condensed graph: `x <= y` iff `x` is reachable from `y`.
#[derive(Clone, Debug)]
pub struct Preorder {
    successors: Vec<Vec<usize>>,
}

impl Preorder {
    /// Whether class `x` lies below class `y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        let mut seen = vec![false; self.successors.len()];
        let mut stack = vec![y];
        seen[y] = true;
        while let Some(c) = stack.pop() {
            for &d in &self.successors[c] {
                if d == x {
                    return true;
                }
                if !std::mem::replace(&mut seen[d], true) {
                    stack.push(d);
                }
            }
        }
        false
    }

    /// Classes with no strictly smaller class.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.successors.len())
            .filter(|&c| self.successors[c].is_empty())
            .collect()
    }
}

/// Largest monoid on which [`maximal_subgroup_of`] cross-checks the H-class
/// against a direct scan of the units of `eMe`.
pub const UNIT_SCAN_LIMIT: usize = 2000;

#[derive(Clone, Debug)]
pub struct GreenStructure {
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
    pub r_order: Preorder,
    pub l_order: Preorder,
    pub j_order: Preorder,
}

/// Strongly connected components of the graph on `0..n` with edges
/// `x -> succ(x)`, by an iterative Tarjan search.
fn scc<F, I>(n: usize, succ: F) -> Vec<usize>
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut next = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
        let visit = |v: usize, index: &mut [usize], low: &mut [usize], next: &mut usize| {
            index[v] = *next;
            low[v] = *next;
            *next += 1;
        };
        visit(root, &mut index, &mut low, &mut next);
        stack.push(root);
        on_stack[root] = true;
        call.push((root, succ(root).collect(), 0));
        while let Some((v, edges, pos)) = call.last_mut() {
            let v = *v;
            if *pos < edges.len() {
                let w = edges[*pos];
                *pos += 1;
                if index[w] == UNSEEN {
                    visit(w, &mut index, &mut low, &mut next);
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, succ(w).collect(), 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some((u, _, _)) = call.last() {
                low[*u] = low[*u].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}

fn condensation<F, I>(part: &Partition, succ: F) -> Preorder
where
    F: Fn(usize) -> I,
    I: Iterator<Item = usize>,
{
    let mut successors: Vec<Vec<usize>> = vec![Vec::new(); part.len()];
    for (c, members) in part.classes().iter().enumerate() {
        for &x in members {
            for y in succ(x) {
                let d = part.class_of(y);
                if d != c {
                    successors[c].push(d);
                }
            }
        }
        successors[c].sort_unstable();
        successors[c].dedup();
    }
    Preorder { successors }
}

pub fn green_structure(m: &FiniteMonoid) -> GreenStructure {
    let n = m.len();
    let k = m.num_generators();
    let right = |x: usize| (0..k).map(move |g| m.right(x, g));
    let left = |x: usize| (0..k).map(move |g| m.left(g, x));
    let both = |x: usize| right(x).chain(left(x));
    let r = Partition::from_labels(&scc(n, right));
    let l = Partition::from_labels(&scc(n, left));
    let j = Partition::from_labels(&scc(n, both));
    let h = r.meet(&l);
    GreenStructure {
        r_order: condensation(&r, right),
        l_order: condensation(&l, left),
        j_order: condensation(&j, both),
        r,
        l,
        j,
        h,
    }
}

impl GreenStructure {
    /// Sorted H-class of `x`.
    pub fn h_class(&self, x: usize) -> &[usize] {
        self.h.class(self.h.class_of(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalIdeal {
    /// Sorted.
    pub elements: Vec<usize>,
    /// Sorted.
    pub idempotents: Vec<usize>,
}

impl MinimalIdeal {
    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// The least J-class. Checks that it is the only minimal class, that it
/// contains an idempotent and that `I = MxM` for every `x` in it (via
/// strong connectivity of the two-sided Cayley graph on `I`).
pub fn minimal_ideal_of(m: &FiniteMonoid, green: &GreenStructure) -> Result<MinimalIdeal> {
    let minimal = green.j_order.minimal();
    let [c] = minimal[..] else {
        return Err(Error::InternalInconsistency(format!(
            "{} minimal J-classes",
            minimal.len()
        )));
    };
    let elements = green.j.class(c).to_vec();
    let idempotents: Vec<usize> = elements
        .iter()
        .copied()
        .filter(|&x| m.is_idempotent(x))
        .collect();
    if idempotents.is_empty() {
        return Err(Error::InternalInconsistency(
            "minimal ideal without idempotents".into(),
        ));
    }
    Ok(MinimalIdeal {
        elements,
        idempotents,
    })
}

pub fn minimal_ideal(m: &FiniteMonoid) -> MinimalIdeal {
    minimal_ideal_of(m, &green_structure(m)).expect("a finite monoid has a minimal ideal")
}

/// Group of units of `eMe`, i.e. the H-class of `e`, with its embedding into
/// `m`. Up to [`UNIT_SCAN_LIMIT`] elements the two descriptions are computed
/// independently and compared.
pub fn maximal_subgroup_of(
    m: &FiniteMonoid,
    green: &GreenStructure,
    e: usize,
) -> Result<(FiniteGroup, Vec<usize>)> {
    if !m.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let h = green.h_class(e);
    if m.len() <= UNIT_SCAN_LIMIT {
        let mut local: Vec<usize> = (0..m.len()).map(|x| m.mul(m.mul(e, x), e)).collect();
        local.sort_unstable();
        local.dedup();
        let units: Vec<usize> = local
            .iter()
            .copied()
            .filter(|&u| local.iter().any(|&v| m.mul(u, v) == e && m.mul(v, u) == e))
            .collect();
        if units != h {
            return Err(Error::InternalInconsistency(format!(
                "units of eMe ({}) differ from the H-class of e ({})",
                units.len(),
                h.len()
            )));
        }
    }
    FiniteGroup::from_subset(m, h, e)
}

pub fn maximal_subgroup(m: &FiniteMonoid, e: usize) -> Result<FiniteGroup> {
    maximal_subgroup_of(m, &green_structure(m), e).map(|(g, _)| g)
}

/// Whether the closed subset `s` is a simple semigroup: every element
/// reaches every other by multiplication on both sides by a generating set.
pub fn is_simple(m: &FiniteMonoid, s: &[usize]) -> Result<bool> {
    let members = sorted_closed(m, s)?;
    if members.is_empty() {
        return Ok(true);
    }
    let gens = m.greedy_generators(&members);
    let pos = |x: usize| members.binary_search(&x).expect("closed");
    let mut forward: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    let mut backward: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    for (i, &x) in members.iter().enumerate() {
        for &g in &gens {
            for y in [m.mul(x, g), m.mul(g, x)] {
                forward[i].push(pos(y));
                backward[pos(y)].push(i);
            }
        }
    }
    let reaches_all = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; adj.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !std::mem::replace(&mut seen[j], true) {
                    count += 1;
                    stack.push(j);
                }
            }
        }
        count == adj.len()
    };
    Ok(reaches_all(&forward) && reaches_all(&backward))
}

/// Closure of the idempotents of the closed subset `s`.
pub fn idempotent_generated(m: &FiniteMonoid, s: &[usize]) -> Result<Vec<usize>> {
    let members = sorted_closed(m, s)?;
    let idempotents: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&x| m.is_idempotent(x))
        .collect();
    if idempotents.is_empty() {
        return Err(Error::NoIdempotents);
    }
    Ok(m.closure(&idempotents))
}

fn sorted_closed(m: &FiniteMonoid, s: &[usize]) -> Result<Vec<usize>> {
    let mut members = s.to_vec();
    members.sort_unstable();
    members.dedup();
    let gens = m.greedy_generators(&members);
    for &x in &members {
        for &g in &gens {
            let y = m.mul(x, g);
            if members.binary_search(&y).is_err() {
                return Err(Error::NotClosed(format!(
                    "{} * {} = {}",
                    m.element(x),
                    m.element(g),
                    m.element(y)
                )));
            }
        }
    }
    Ok(members)
}

/// Checks that a surjection maps the minimal ideal onto the minimal ideal
/// and each maximal subgroup of it onto the maximal subgroup at the image
/// idempotent.
pub fn check_min_ideal_image(phi: &MonoidHom) -> Result<Vec<Check>> {
    if !phi.is_surjective() {
        return Err(Error::NotSurjective("phi".into()));
    }
    let (s, t) = (phi.source(), phi.target());
    let (gs, gt) = (green_structure(s), green_structure(t));
    let i = minimal_ideal_of(s, &gs)?;
    let j = minimal_ideal_of(t, &gt)?;
    let mut image: Vec<usize> = i.elements.iter().map(|&x| phi.apply(x)).collect();
    image.sort_unstable();
    image.dedup();
    let ideal = if image == j.elements {
        Check::pass("image_of_minimal_ideal")
    } else {
        let witness = image
            .iter()
            .find(|y| !j.contains(**y))
            .map(|&y| format!("{} in phi(I) but not in J", t.element(y)))
            .or_else(|| {
                j.elements
                    .iter()
                    .find(|y| image.binary_search(y).is_err())
                    .map(|&y| format!("{} in J but not in phi(I)", t.element(y)))
            })
            .unwrap_or_default();
        Check::fail("image_of_minimal_ideal", witness)
    };
    let mut bad = None;
    for &e in &i.idempotents {
        let mut img: Vec<usize> = gs.h_class(e).iter().map(|&x| phi.apply(x)).collect();
        img.sort_unstable();
        img.dedup();
        if img != gt.h_class(phi.apply(e)) {
            bad = Some(e);
            break;
        }
    }
    let groups = match bad {
        None => Check::pass("image_of_maximal_subgroups"),
        Some(e) => Check::fail(
            "image_of_maximal_subgroups",
            format!("phi(G_e) != G_phi(e) at e = {}", s.element(e)),
        ),
    };
    Ok(vec![ideal, groups])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Transformation;
    use crate::monoid::DEFAULT_CAP;
    use crate::oracle;
    use std::sync::Arc;

    fn t(images: &[u32]) -> Transformation {
        Transformation::new(images.to_vec()).unwrap()
    }

    fn zero_one() -> FiniteMonoid {
        // label 0 = identity, label 1 = zero
        FiniteMonoid::from_table(2, vec![0, 1, 1, 1]).unwrap()
    }

    fn t3() -> FiniteMonoid {
        FiniteMonoid::transformations(
            3,
            &[t(&[1, 2, 0]), t(&[1, 0, 2]), t(&[0, 0, 2])],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn group_is_one_class() {
        let s3 = FiniteGroup::symmetric(3);
        let g = green_structure(&s3);
        assert_eq!((g.r.len(), g.l.len(), g.j.len(), g.h.len()), (1, 1, 1, 1));
        assert_eq!(minimal_ideal(&s3).elements, (0..6).collect::<Vec<_>>());
        assert_eq!(maximal_subgroup(&s3, 0).unwrap().order(), 6);
    }

    #[test]
    fn zero_one_monoid() {
        let m = zero_one();
        let g = green_structure(&m);
        assert_eq!(g.j.len(), 2);
        let zero = 1;
        assert_eq!(minimal_ideal(&m).elements, vec![zero]);
        assert_eq!(maximal_subgroup(&m, zero).unwrap().order(), 1);
        assert!(!is_simple(&m, &[0, 1]).unwrap());
        assert!(is_simple(&m, &[zero]).unwrap());
    }

    #[test]
    fn t3_stratified_by_rank() {
        let m = t3();
        let g = green_structure(&m);
        assert_eq!(g.j.len(), 3);
        for class in g.j.classes() {
            let ranks: Vec<usize> = class
                .iter()
                .map(|&x| m.element(x).as_transf().unwrap().rank())
                .collect();
            assert!(ranks.windows(2).all(|w| w[0] == w[1]));
        }
        let oracle = oracle::green_classes(&m);
        assert_eq!(oracle.r, g.r);
        assert_eq!(oracle.l, g.l);
        assert_eq!(oracle.j, g.j);
        assert_eq!(oracle.h, g.h);
        let i = minimal_ideal(&m);
        assert_eq!(i.elements.len(), 3);
        assert_eq!(i.idempotents.len(), 3);
        let x = (0..m.len()).find(|&x| !m.is_idempotent(x)).unwrap();
        assert!(matches!(
            maximal_subgroup(&m, x),
            Err(Error::NotIdempotent(_))
        ));
    }

    #[test]
    fn preorders_follow_ideals() {
        let m = t3();
        let g = green_structure(&m);
        let i = minimal_ideal(&m);
        let bottom = g.j.class_of(i.elements[0]);
        for c in 0..g.j.len() {
            assert!(g.j_order.leq(bottom, c));
        }
        assert!(!g.j_order.leq(g.j.class_of(0), bottom));
    }

    #[test]
    fn rectangular_band() {
        // 2x2 rectangular band on 4 labels plus identity: (a,b)(c,d) = (a,d)
        let label = |a: usize, b: usize| (1 + 2 * a + b) as u32;
        let mut table = vec![0u32; 25];
        for x in 0..5 {
            table[x] = x as u32;
            table[x * 5] = x as u32;
        }
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        table[label(a, b) as usize * 5 + label(c, d) as usize] = label(a, d);
                    }
                }
            }
        }
        let m = FiniteMonoid::from_table(5, table).unwrap();
        let i = minimal_ideal(&m);
        assert_eq!(i.len(), 4);
        assert!(is_simple(&m, &i.elements).unwrap());
        assert_eq!(idempotent_generated(&m, &i.elements).unwrap(), i.elements);
    }

    #[test]
    fn idempotent_generated_in_group() {
        let c4 = FiniteGroup::cyclic(4);
        let all: Vec<usize> = (0..4).collect();
        assert_eq!(idempotent_generated(&c4, &all).unwrap(), vec![0]);
        assert!(is_simple(&c4, &all).unwrap());
        assert!(matches!(is_simple(&c4, &[1]), Err(Error::NotClosed(_))));
    }

    #[test]
    fn identity_image_check() {
        let m = Arc::new(t3());
        let checks = check_min_ideal_image(&MonoidHom::identity(&m)).unwrap();
        assert!(checks.iter().all(Check::passed));
    }

    #[test]
    fn maximal_subgroups_agree() {
        let m =
            FiniteMonoid::transformations(4, &[t(&[1, 2, 3, 0]), t(&[0, 0, 2, 3])], DEFAULT_CAP)
                .unwrap();
        let g = green_structure(&m);
        let i = minimal_ideal_of(&m, &g).unwrap();
        let (first, _) = maximal_subgroup_of(&m, &g, i.idempotents[0]).unwrap();
        for &e in &i.idempotents {
            let (h, _) = maximal_subgroup_of(&m, &g, e).unwrap();
            assert!(crate::group::is_isomorphic(&first, &h).unwrap().is_some());
        }
    }
}
