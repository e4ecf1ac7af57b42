use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{maximal_subgroup_of, GreenStructure, MinimalIdeal};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::monoid::FiniteMonoid;

/// Exhaustive multiplicativity checks up to this ideal size.
const REES_EXHAUSTIVE: usize = 2000;
const REES_SAMPLES: usize = 20_000;

/// Normalized Rees coordinates `(a, g, b)` of a minimal ideal at an
/// idempotent `e`.
///
/// `A` lists the R-classes of `I` and `B` its L-classes, each with the class
/// of `e` first (`a0 = b0 = 0`). The row representative `r_a` lies in
/// `R_a ∩ L_e` with `e r_a = e`; the column representative `q_b` lies in
/// `R_e ∩ L_b` with `q_b e = e`. Then `s` has coordinates
/// `(a, e s e, b)`, its inverse is `r_a g q_b`, and the sandwich entry is
/// `C(b, a) = q_b r_a`, which is `1` on row `b0` and column `a0`.
#[derive(Clone, Debug)]
pub struct ReesCoordinates {
    pub idempotent: usize,
    /// `a_index[a]` is the sorted R-class `a` of `I`.
    pub a_index: Vec<Vec<usize>>,
    /// `b_index[b]` is the sorted L-class `b` of `I`.
    pub b_index: Vec<Vec<usize>>,
    pub group: FiniteGroup,
    /// Group element index to monoid element index.
    pub group_embedding: Vec<usize>,
    /// `sandwich[b][a]`, a group element index.
    pub sandwich: Vec<Vec<usize>>,
    pub a0: usize,
    pub b0: usize,
    pub row_reps: Vec<usize>,
    pub col_reps: Vec<usize>,
    group_index: HashMap<usize, usize>,
    coords: HashMap<usize, (usize, usize, usize)>,
}

impl ReesCoordinates {
    pub fn coord(&self, s: usize) -> Option<(usize, usize, usize)> {
        self.coords.get(&s).copied()
    }

    /// Monoid element with coordinates `(a, g, b)`.
    pub fn element_at(&self, m: &FiniteMonoid, a: usize, g: usize, b: usize) -> usize {
        let g = self.group_embedding[g];
        m.mul(m.mul(self.row_reps[a], g), self.col_reps[b])
    }

    /// Group index of a monoid element of the maximal subgroup at `e`.
    pub fn group_index(&self, x: usize) -> Option<usize> {
        self.group_index.get(&x).copied()
    }

    /// `(a, g, b)(a', g', b') = (a, g C(b, a') g', b')`.
    pub fn rees_mul(
        &self,
        x: (usize, usize, usize),
        y: (usize, usize, usize),
    ) -> (usize, usize, usize) {
        let g = &self.group;
        let mid = g.mul(g.mul(x.1, self.sandwich[x.2][y.0]), y.1);
        (x.0, mid, y.2)
    }

    /// L-class index in `B` of a monoid element of `I`.
    pub fn b_of(&self, s: usize) -> Option<usize> {
        self.coord(s).map(|c| c.2)
    }

    /// R-class index in `A` of a monoid element of `I`.
    pub fn a_of(&self, s: usize) -> Option<usize> {
        self.coord(s).map(|c| c.0)
    }

    /// The size of `B`.
    pub fn b(&self) -> usize {
        self.b_index.len()
    }

    /// Checks that `coord` is multiplicative on `I`, exhaustively up to 2000
    /// elements and on a fixed-seed sample above. Returns a failing pair.
    pub fn verify(
        &self,
        m: &FiniteMonoid,
        ideal: &MinimalIdeal,
    ) -> std::result::Result<(), (usize, usize)> {
        let check = |s: usize, t: usize| {
            let want = self.rees_mul(self.coords[&s], self.coords[&t]);
            if self.coords.get(&m.mul(s, t)) == Some(&want) {
                Ok(())
            } else {
                Err((s, t))
            }
        };
        let elems = &ideal.elements;
        if elems.len() <= REES_EXHAUSTIVE {
            for &s in elems {
                for &t in elems {
                    check(s, t)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7ee5);
            for _ in 0..REES_SAMPLES {
                let s = elems[rng.gen_range(0..elems.len())];
                let t = elems[rng.gen_range(0..elems.len())];
                check(s, t)?;
            }
        }
        Ok(())
    }
}

/// Classes of `part` meeting `ideal`, the class of `e` first, then by least
/// element.
fn classes_in(part: &super::Partition, ideal: &MinimalIdeal, e: usize) -> Vec<Vec<usize>> {
    let mut ids: Vec<usize> = ideal.elements.iter().map(|&x| part.class_of(x)).collect();
    ids.sort_unstable();
    ids.dedup();
    let first = part.class_of(e);
    let mut out = vec![part.class(first).to_vec()];
    let mut rest: Vec<&Vec<usize>> = ids
        .iter()
        .filter(|&&c| c != first)
        .map(|&c| &part.classes()[c])
        .collect();
    rest.sort_by_key(|c| c[0]);
    out.extend(rest.into_iter().cloned());
    out
}

pub fn rees_coordinates(
    m: &FiniteMonoid,
    green: &GreenStructure,
    ideal: &MinimalIdeal,
    e: usize,
) -> Result<ReesCoordinates> {
    if !ideal.contains(e) {
        return Err(Error::NotInMinimalIdeal(e));
    }
    let (group, group_embedding) = maximal_subgroup_of(m, green, e)?;
    let group_index: HashMap<usize, usize> = group_embedding
        .iter()
        .enumerate()
        .map(|(g, &x)| (x, g))
        .collect();
    let a_index = classes_in(&green.r, ideal, e);
    let b_index = classes_in(&green.l, ideal, e);
    let a_pos: HashMap<usize, usize> = a_index
        .iter()
        .enumerate()
        .map(|(a, c)| (green.r.class_of(c[0]), a))
        .collect();
    let b_pos: HashMap<usize, usize> = b_index
        .iter()
        .enumerate()
        .map(|(b, c)| (green.l.class_of(c[0]), b))
        .collect();

    let missing = |what: &str| Error::InternalInconsistency(format!("no {what} representative"));
    let row_reps = a_index
        .iter()
        .map(|class| {
            class
                .iter()
                .copied()
                .find(|&x| green.l.same(x, e) && m.mul(e, x) == e)
                .ok_or_else(|| missing("row"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let col_reps = b_index
        .iter()
        .map(|class| {
            class
                .iter()
                .copied()
                .find(|&x| green.r.same(x, e) && m.mul(x, e) == e)
                .ok_or_else(|| missing("column"))
        })
        .collect::<Result<Vec<usize>>>()?;
    let sandwich = col_reps
        .iter()
        .map(|&q| {
            row_reps
                .iter()
                .map(|&r| {
                    group_index
                        .get(&m.mul(q, r))
                        .copied()
                        .ok_or_else(|| missing("sandwich"))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut coords = HashMap::with_capacity(ideal.len());
    for &s in &ideal.elements {
        let a = a_pos[&green.r.class_of(s)];
        let b = b_pos[&green.l.class_of(s)];
        let g = *group_index.get(&m.mul(m.mul(e, s), e)).ok_or_else(|| {
            Error::InternalInconsistency("ese outside the maximal subgroup".into())
        })?;
        coords.insert(s, (a, g, b));
    }
    let rees = ReesCoordinates {
        idempotent: e,
        a_index,
        b_index,
        group,
        group_embedding,
        sandwich,
        a0: 0,
        b0: 0,
        row_reps,
        col_reps,
        group_index,
        coords,
    };
    rees.verify(m, ideal).map_err(|(s, t)| {
        Error::InternalInconsistency(format!(
            "Rees coordinates not multiplicative at {} * {}",
            m.element(s),
            m.element(t)
        ))
    })?;
    Ok(rees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::Transformation;
    use crate::green::{green_structure, minimal_ideal_of};
    use crate::monoid::DEFAULT_CAP;

    fn rees_of(m: &FiniteMonoid) -> (ReesCoordinates, MinimalIdeal) {
        let g = green_structure(m);
        let i = minimal_ideal_of(m, &g).unwrap();
        (rees_coordinates(m, &g, &i, i.idempotents[0]).unwrap(), i)
    }

    fn normalized(r: &ReesCoordinates) -> bool {
        r.sandwich[r.b0].iter().all(|&g| g == 0) && r.sandwich.iter().all(|row| row[r.a0] == 0)
    }

    #[test]
    fn group_ideal() {
        let s3 = FiniteGroup::symmetric(3);
        let (r, _) = rees_of(&s3);
        assert_eq!((r.a_index.len(), r.b_index.len()), (1, 1));
        assert_eq!(r.sandwich, vec![vec![0]]);
        assert_eq!(r.group.order(), 6);
    }

    #[test]
    fn constants_form_right_zero_band() {
        let gens = [
            Transformation::new(vec![1, 2, 0]).unwrap(),
            Transformation::constant(3, 0),
        ];
        let m = FiniteMonoid::transformations(3, &gens, DEFAULT_CAP).unwrap();
        let (r, i) = rees_of(&m);
        assert_eq!(i.len(), 3);
        assert_eq!((r.a_index.len(), r.b_index.len()), (1, 3));
        assert_eq!(r.group.order(), 1);
        assert!(normalized(&r));
    }

    #[test]
    fn coordinates_are_a_bijection() {
        let gens = [
            Transformation::new(vec![1, 2, 3, 0]).unwrap(),
            Transformation::new(vec![1, 0, 2, 3]).unwrap(),
            Transformation::new(vec![0, 0, 2, 2]).unwrap(),
        ];
        let m = FiniteMonoid::transformations(4, &gens, DEFAULT_CAP).unwrap();
        let (r, i) = rees_of(&m);
        assert!(normalized(&r));
        assert_eq!(r.coord(r.idempotent), Some((0, 0, 0)));
        assert_eq!(i.len(), r.a_index.len() * r.b_index.len() * r.group.order());
        for &s in &i.elements {
            let (a, g, b) = r.coord(s).unwrap();
            assert_eq!(r.element_at(&m, a, g, b), s);
        }
    }

    #[test]
    fn outside_ideal_rejected() {
        let gens = [
            Transformation::new(vec![1, 2, 0]).unwrap(),
            Transformation::constant(3, 0),
        ];
        let m = FiniteMonoid::transformations(3, &gens, DEFAULT_CAP).unwrap();
        let g = green_structure(&m);
        let i = minimal_ideal_of(&m, &g).unwrap();
        assert!(matches!(
            rees_coordinates(&m, &g, &i, 0),
            Err(Error::NotInMinimalIdeal(0))
        ));
    }
}
