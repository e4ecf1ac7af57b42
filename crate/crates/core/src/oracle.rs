//! Reference implementations straight from the definitions.
//!
//! These are quadratic or worse and only meant for small inputs; the test
//! suite and the self-test compare the fast algorithms against them.

use std::collections::BTreeMap;

use crate::green::Partition;
use crate::group::FiniteGroup;
use crate::monoid::FiniteMonoid;

#[derive(Clone, Debug)]
pub struct NaiveGreen {
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
}

fn sorted_set(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn right_ideal(m: &FiniteMonoid, x: usize) -> Vec<usize> {
    sorted_set((0..m.len()).map(|y| m.mul(x, y)))
}

pub fn left_ideal(m: &FiniteMonoid, x: usize) -> Vec<usize> {
    sorted_set((0..m.len()).map(|y| m.mul(y, x)))
}

pub fn two_sided_ideal(m: &FiniteMonoid, x: usize) -> Vec<usize> {
    let left = left_ideal(m, x);
    sorted_set(
        left.iter()
            .flat_map(|&y| (0..m.len()).map(move |z| m.mul(y, z))),
    )
}

fn partition_by<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Partition {
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    let labels: Vec<usize> = (0..n)
        .map(|x| {
            let next = ids.len();
            *ids.entry(key(x)).or_insert(next)
        })
        .collect();
    Partition::from_labels(&labels)
}

/// Green's relations by comparing principal ideals as explicit sets.
pub fn green_classes(m: &FiniteMonoid) -> NaiveGreen {
    let n = m.len();
    let rights: Vec<Vec<usize>> = (0..n).map(|x| right_ideal(m, x)).collect();
    let lefts: Vec<Vec<usize>> = (0..n).map(|x| left_ideal(m, x)).collect();
    let twos: Vec<Vec<usize>> = (0..n).map(|x| two_sided_ideal(m, x)).collect();
    NaiveGreen {
        r: partition_by(n, |x| rights[x].clone()),
        l: partition_by(n, |x| lefts[x].clone()),
        j: partition_by(n, |x| twos[x].clone()),
        h: partition_by(n, |x| (rights[x].clone(), lefts[x].clone())),
    }
}

/// Intersection of all principal two-sided ideals.
pub fn minimal_ideal(m: &FiniteMonoid) -> Vec<usize> {
    let mut inside = vec![true; m.len()];
    for x in 0..m.len() {
        let ideal = two_sided_ideal(m, x);
        for (y, flag) in inside.iter_mut().enumerate() {
            *flag &= ideal.binary_search(&y).is_ok();
        }
    }
    (0..m.len()).filter(|&y| inside[y]).collect()
}

/// The idempotent among `x, x^2, .., x^|M|`; `None` if there is not exactly
/// one.
pub fn omega_power(m: &FiniteMonoid, x: usize) -> Option<usize> {
    let mut found = Vec::new();
    let mut power = x;
    for _ in 0..m.len() {
        if m.mul(power, power) == power && !found.contains(&power) {
            found.push(power);
        }
        power = m.mul(power, x);
    }
    match found[..] {
        [e] => Some(e),
        _ => None,
    }
}

/// `S¹xS¹ = S` for every `x`, by explicit products.
pub fn is_simple(m: &FiniteMonoid, s: &[usize]) -> bool {
    let set = sorted_set(s.iter().copied());
    set.iter().all(|&x| {
        let mut reach: Vec<usize> = set.clone();
        reach.push(m.identity());
        let ideal = sorted_set(
            reach
                .iter()
                .flat_map(|&u| reach.iter().map(move |&v| m.mul(m.mul(u, x), v))),
        );
        ideal == set
    })
}

/// Closure of a subset by repeated pairwise products.
pub fn closure(m: &FiniteMonoid, seeds: &[usize]) -> Vec<usize> {
    let mut set = sorted_set(seeds.iter().copied());
    loop {
        let next = sorted_set(
            set.iter().copied().chain(
                set.iter()
                    .flat_map(|&a| set.iter().map(move |&b| m.mul(a, b))),
            ),
        );
        if next == set {
            return set;
        }
        set = next;
    }
}

/// All normal subgroups as sorted element sets: the unions of conjugacy
/// classes that contain 1 and are closed under the product.
pub fn normal_subgroups_by_conjugation(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let class = sorted_set((0..n).map(|y| g.conjugate(x, y)));
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class);
    }
    let rest = &classes[1..];
    assert!(
        rest.len() <= 16,
        "too many conjugacy classes for subset search"
    );
    for mask in 0u32..(1 << rest.len()) {
        let mut set = vec![0usize];
        for (i, c) in rest.iter().enumerate() {
            if mask >> i & 1 == 1 {
                set.extend(c);
            }
        }
        set.sort_unstable();
        if set
            .iter()
            .all(|&a| set.iter().all(|&b| set.binary_search(&g.mul(a, b)).is_ok()))
        {
            out.push(set);
        }
    }
    out.sort();
    out
}

/// `r_S(G)` by brute force: intersect the kernels of all surjections
/// `G -> S`, found by trying every assignment of generator images, then read
/// the exponent off the index.
pub fn s_rank(g: &FiniteGroup, s: &FiniteGroup) -> usize {
    let mut meet = vec![true; g.order()];
    for_each_hom(g, s, |map| {
        if sorted_set(map.iter().copied()).len() == s.order() {
            for (x, flag) in meet.iter_mut().enumerate() {
                *flag &= map[x] == 0;
            }
        }
    });
    let mut index = g.order() / meet.iter().filter(|&&f| f).count();
    let mut k = 0;
    while index > 1 {
        assert_eq!(index % s.order(), 0, "index is not a power of |S|");
        index /= s.order();
        k += 1;
    }
    k
}

/// Calls `f` on every homomorphism `G -> S`, as a total map, trying every
/// assignment of images to a small generating set.
pub fn for_each_hom(g: &FiniteGroup, s: &FiniteGroup, mut f: impl FnMut(&[usize])) {
    let all: Vec<usize> = (0..g.order()).collect();
    let gens: Vec<usize> = g
        .greedy_generators(&all)
        .into_iter()
        .filter(|&x| x != 0)
        .collect();
    let k = gens.len();
    let mut images = vec![0usize; k];
    loop {
        let mut map = vec![usize::MAX; g.order()];
        map[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut consistent = true;
        while let Some(x) = queue.pop_front() {
            for (i, &a) in gens.iter().enumerate() {
                let (y, v) = (g.mul(x, a), s.mul(map[x], images[i]));
                if map[y] == usize::MAX {
                    map[y] = v;
                    queue.push_back(y);
                } else if map[y] != v {
                    consistent = false;
                }
            }
        }
        if consistent
            && (0..g.order())
                .all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == s.mul(map[a], map[b])))
        {
            f(&map);
        }
        let mut i = 0;
        loop {
            if i == k {
                return;
            }
            images[i] += 1;
            if images[i] < s.order() {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}
