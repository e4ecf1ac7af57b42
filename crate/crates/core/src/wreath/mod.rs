//! Wreath products as row-monomial matrices, the representation of a
//! monoid on the L-classes of its minimal ideal, and the Schützenberger
//! representation.

mod matrix;

pub use matrix::*;

use std::sync::Arc;

use crate::element::{Element, Transformation};
use crate::error::{Error, Result};
use crate::green::{
    green_structure, minimal_ideal_of, rees_coordinates, GreenStructure, MinimalIdeal,
    ReesCoordinates,
};
use crate::group::FiniteGroup;
use crate::hom::{hom_from_images, MonoidHom};
use crate::monoid::{generate_monoid, FiniteMonoid, RowMonoRule};

/// An element `(f, t)` of `S ≀ (B, T)`: `f` assigns an entry to each point
/// and `t` moves the points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub f: Vec<u32>,
    pub t: Transformation,
}

/// The matrix with `f(i)` in position `(i, t(i))`.
pub fn wreath_to_rm(w: &WreathElement) -> Result<RowMonomialMatrix> {
    if w.f.len() != w.t.degree() {
        return Err(Error::SizeMismatch(format!(
            "{} entries for {} points",
            w.f.len(),
            w.t.degree()
        )));
    }
    RowMonomialMatrix::new(w.t.images().to_vec(), w.f.clone())
}

pub fn rm_to_wreath(m: &RowMonomialMatrix) -> WreathElement {
    WreathElement {
        f: m.entries().to_vec(),
        t: Transformation::new(m.cols().to_vec()).expect("columns are in range"),
    }
}

/// The transformation monoid generated by `gens` together with every
/// constant map on `degree` points.
pub fn augmented(degree: usize, gens: &[Transformation], cap: usize) -> Result<FiniteMonoid> {
    let mut all = gens.to_vec();
    all.extend((0..degree).map(|p| Transformation::constant(degree, p)));
    FiniteMonoid::transformations(degree, &all, cap)
}

/// `G ≀ (B, B̄)`: all `b x b` row-monomial matrices over `G` with a single
/// non-zero column, with an identity adjoined.
#[derive(Clone, Debug)]
pub struct ConstantWreath {
    pub group: FiniteGroup,
    pub points: usize,
    pub monoid: FiniteMonoid,
    /// The elements of the simple semigroup, sorted.
    pub simple: Vec<usize>,
}

pub fn constant_wreath(g: &FiniteGroup, points: usize, cap: usize) -> Result<ConstantWreath> {
    if points == 0 {
        return Err(Error::InvalidInput("empty point set".into()));
    }
    let size = g
        .order()
        .checked_pow(points as u32)
        .and_then(|s| s.checked_mul(points))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::CapExceeded { cap, reached: size });
    }
    let mut seeds = Vec::with_capacity(size);
    for column in 0..points as u32 {
        for code in 0..g.order().pow(points as u32) {
            let mut f = Vec::with_capacity(points);
            let mut c = code;
            for _ in 0..points {
                f.push((c % g.order()) as u32);
                c /= g.order();
            }
            seeds.push(Element::RowMono(RowMonomialMatrix::new(
                vec![column; points],
                f,
            )?));
        }
    }
    let identity = Element::RowMono(RowMonomialMatrix::identity(points, 0));
    let monoid = generate_monoid(
        &seeds,
        identity,
        &RowMonoRule { entry: g },
        cap.saturating_add(1),
    )?;
    let mut simple: Vec<usize> = seeds
        .iter()
        .map(|s| monoid.index_of(s).expect("seed"))
        .collect();
    simple.sort_unstable();
    Ok(ConstantWreath {
        group: g.clone(),
        points,
        monoid,
        simple,
    })
}

/// `ψ(f', b̄) = b f'` on the local monoid `eSe` at the idempotent
/// `e = (f, b̄)`: the entry of `s` in row `b`.
pub fn psi(cw: &ConstantWreath, e: usize, s: usize) -> Result<usize> {
    let m = &cw.monoid;
    if !m.is_idempotent(e) {
        return Err(Error::NotIdempotent(e));
    }
    let Some(em) = m.element(e).as_row_mono() else {
        return Err(Error::InvalidInput("not a matrix".into()));
    };
    let Some(b) = em.constant_column() else {
        return Err(Error::NotIdempotent(e));
    };
    if cw.simple.binary_search(&s).is_err() || m.mul(m.mul(e, s), e) != s {
        return Err(Error::NotInLocalMonoid(s));
    }
    let sm = m.element(s).as_row_mono().expect("matrix");
    Ok(*sm.entry(b) as usize)
}

/// The right action of `M` on the L-classes of its minimal ideal.
#[derive(Clone, Debug)]
pub struct Rlm {
    /// Sorted L-classes; the class of the least idempotent of `I` first.
    pub classes: Vec<Vec<usize>>,
    pub monoid: Arc<FiniteMonoid>,
    pub hom: MonoidHom,
}

pub fn rlm(m: &Arc<FiniteMonoid>) -> Result<Rlm> {
    let green = green_structure(m);
    let ideal = minimal_ideal_of(m, &green)?;
    rlm_of(m, &green, &ideal)
}

pub fn rlm_of(m: &Arc<FiniteMonoid>, green: &GreenStructure, ideal: &MinimalIdeal) -> Result<Rlm> {
    let e = ideal.idempotents[0];
    let mut classes = vec![green.l.class(green.l.class_of(e)).to_vec()];
    let mut rest: Vec<usize> = ideal
        .elements
        .iter()
        .map(|&x| green.l.class_of(x))
        .collect();
    rest.sort_unstable();
    rest.dedup();
    classes.extend(
        rest.into_iter()
            .filter(|&c| c != green.l.class_of(e))
            .map(|c| green.l.class(c).to_vec()),
    );
    let point = |x: usize| {
        classes
            .iter()
            .position(|c| c.binary_search(&x).is_ok())
            .expect("L-class of the minimal ideal")
    };
    let action: Vec<Transformation> = m
        .generators()
        .iter()
        .map(|&g| {
            let images = classes
                .iter()
                .map(|c| point(m.mul(c[0], g)) as u32)
                .collect();
            Transformation::new(images).expect("points in range")
        })
        .collect();
    let target = Arc::new(FiniteMonoid::transformations(
        classes.len(),
        &action,
        m.len(),
    )?);
    let gens: Vec<usize> = (0..action.len()).map(|i| target.generators()[i]).collect();
    let hom = hom_from_images(m, &target, &gens)?;
    Ok(Rlm {
        classes,
        monoid: target,
        hom,
    })
}

/// The Schützenberger representation `M -> G ≀ (B, RLM)` as a
/// homomorphism onto a monoid of row-monomial matrices whose entries are
/// element indices of `rees.group`.
#[derive(Clone, Debug)]
pub struct SchutzRep {
    pub rees: ReesCoordinates,
    pub hom: MonoidHom,
}

impl SchutzRep {
    pub fn matrix(&self, s: usize) -> &RowMonomialMatrix {
        self.hom
            .target()
            .element(self.hom.apply(s))
            .as_row_mono()
            .expect("matrix")
    }

    pub fn image(&self) -> &Arc<FiniteMonoid> {
        self.hom.target()
    }
}

/// Row `b` of the image of `s` has its entry in column `L(q_b s)` equal to
/// the group coordinate of `q_b s`.
pub fn schutz_rep(m: &Arc<FiniteMonoid>, rees: &ReesCoordinates) -> Result<SchutzRep> {
    let b = rees.b();
    let matrix_of = |s: usize| -> Result<RowMonomialMatrix> {
        let mut cols = Vec::with_capacity(b);
        let mut entries = Vec::with_capacity(b);
        for &q in &rees.col_reps {
            let (_, g, col) = rees.coord(m.mul(q, s)).ok_or_else(|| {
                Error::InternalInconsistency("q_b s outside the minimal ideal".into())
            })?;
            cols.push(col as u32);
            entries.push(g as u32);
        }
        RowMonomialMatrix::new(cols, entries)
    };
    let seeds: Vec<Element> = m
        .generators()
        .iter()
        .map(|&g| matrix_of(g).map(Element::RowMono))
        .collect::<Result<_>>()?;
    let identity = Element::RowMono(RowMonomialMatrix::identity(b, 0));
    let target = Arc::new(generate_monoid(
        &seeds,
        identity,
        &RowMonoRule { entry: &rees.group },
        m.len(),
    )?);
    let images: Vec<usize> = (0..seeds.len()).map(|i| target.generators()[i]).collect();
    let hom = hom_from_images(m, &target, &images)?;
    Ok(SchutzRep {
        rees: rees.clone(),
        hom,
    })
}

/// Schützenberger representation at the least idempotent of the minimal
/// ideal.
pub fn schutz_rep_default(m: &Arc<FiniteMonoid>) -> Result<SchutzRep> {
    let green = green_structure(m);
    let ideal = minimal_ideal_of(m, &green)?;
    let rees = rees_coordinates(m, &green, &ideal, ideal.idempotents[0])?;
    schutz_rep(m, &rees)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faithfulness {
    pub faithful: bool,
    /// Two distinct elements with the same image.
    pub witness: Option<(usize, usize)>,
}

pub fn is_faithful_on_min_ideal(m: &Arc<FiniteMonoid>) -> Result<Faithfulness> {
    let rep = schutz_rep_default(m)?;
    let mut first = vec![usize::MAX; rep.image().len()];
    for x in 0..m.len() {
        let y = rep.hom.apply(x);
        if first[y] != usize::MAX {
            return Ok(Faithfulness {
                faithful: false,
                witness: Some((first[y], x)),
            });
        }
        first[y] = x;
    }
    Ok(Faithfulness {
        faithful: true,
        witness: None,
    })
}

/// The image of `M` under its Schützenberger representation, with the
/// quotient map.
pub fn schutz_faithful_quotient(m: &Arc<FiniteMonoid>) -> Result<(Arc<FiniteMonoid>, MonoidHom)> {
    let rep = schutz_rep_default(m)?;
    Ok((rep.image().clone(), rep.hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::{is_simple, maximal_subgroup};
    use crate::group::is_isomorphic;
    use crate::monoid::DEFAULT_CAP;
    use crate::oracle;

    #[test]
    fn wreath_round_trip() {
        let id = WreathElement {
            f: vec![0, 0, 0],
            t: Transformation::identity(3),
        };
        assert_eq!(
            wreath_to_rm(&id).unwrap(),
            RowMonomialMatrix::identity(3, 0)
        );
        let constant = WreathElement {
            f: vec![1, 0, 1],
            t: Transformation::constant(3, 2),
        };
        assert_eq!(wreath_to_rm(&constant).unwrap().constant_column(), Some(2));
        let bad = WreathElement {
            f: vec![0],
            t: Transformation::identity(2),
        };
        assert!(wreath_to_rm(&bad).is_err());
    }

    #[test]
    fn wreath_product_matches_matrices() {
        // S = C2 on entries {0, 1}, B = 2: all 16 elements of C2 ≀ ([2], T2)
        let c2 = FiniteGroup::cyclic(2);
        let mut all = Vec::new();
        for t in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            for f in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                all.push(WreathElement {
                    f: f.to_vec(),
                    t: Transformation::new(t.to_vec()).unwrap(),
                });
            }
        }
        // (f, t)(f', t') = (i -> f(i) f'(t(i)), t then t')
        let mul = |x: &WreathElement, y: &WreathElement| WreathElement {
            f: (0..2)
                .map(|i| c2.mul(x.f[i] as usize, y.f[x.t.image(i)] as usize) as u32)
                .collect(),
            t: x.t.then(&y.t),
        };
        for x in &all {
            assert_eq!(&rm_to_wreath(&wreath_to_rm(x).unwrap()), x);
            for y in &all {
                let xy = wreath_to_rm(x)
                    .unwrap()
                    .multiply(&wreath_to_rm(y).unwrap(), |&u, &v| {
                        c2.mul(u as usize, v as usize) as u32
                    })
                    .unwrap();
                assert_eq!(rm_to_wreath(&xy), mul(x, y));
            }
        }
    }

    #[test]
    fn augmented_contains_constants() {
        let m = augmented(3, &[Transformation::cycle(3)], DEFAULT_CAP).unwrap();
        assert_eq!(m.len(), 6);
        for p in 0..3 {
            assert!(m
                .index_of(&Element::Transf(Transformation::constant(3, p)))
                .is_some());
        }
    }

    #[test]
    fn constant_wreath_small_cases() {
        let trivial = constant_wreath(&FiniteGroup::trivial(), 2, DEFAULT_CAP).unwrap();
        assert_eq!(trivial.simple.len(), 2);
        let s = &trivial.simple;
        for &x in s {
            for &y in s {
                assert_eq!(trivial.monoid.mul(x, y), y);
            }
        }

        let c2 = FiniteGroup::cyclic(2);
        let one = constant_wreath(&c2, 1, DEFAULT_CAP).unwrap();
        assert_eq!(one.monoid.len(), 2);
        assert_eq!(one.simple.len(), 2);

        let two = constant_wreath(&c2, 2, DEFAULT_CAP).unwrap();
        assert_eq!(two.simple.len(), 8);
        assert!(is_simple(&two.monoid, &two.simple).unwrap());
        assert!(oracle::is_simple(&two.monoid, &two.simple));
        for &e in two.simple.iter().filter(|&&e| two.monoid.is_idempotent(e)) {
            assert_eq!(maximal_subgroup(&two.monoid, e).unwrap().order(), 2);
        }
        assert!(matches!(
            constant_wreath(&c2, 3, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn psi_is_an_isomorphism() {
        let s3 = FiniteGroup::symmetric(3);
        let cw = constant_wreath(&s3, 2, DEFAULT_CAP).unwrap();
        let m = &cw.monoid;
        for &e in cw.simple.iter().filter(|&&e| m.is_idempotent(e)) {
            assert_eq!(psi(&cw, e, e).unwrap(), 0);
            let local: Vec<usize> = cw
                .simple
                .iter()
                .copied()
                .filter(|&s| m.mul(m.mul(e, s), e) == s)
                .collect();
            assert_eq!(local.len(), 6);
            let images: Vec<usize> = local.iter().map(|&s| psi(&cw, e, s).unwrap()).collect();
            let mut sorted = images.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..6).collect::<Vec<_>>());
            for (i, &s) in local.iter().enumerate() {
                for (j, &t) in local.iter().enumerate() {
                    assert_eq!(
                        psi(&cw, e, m.mul(s, t)).unwrap(),
                        s3.mul(images[i], images[j])
                    );
                }
            }
        }
        let outside = cw
            .simple
            .iter()
            .copied()
            .find(|&s| !m.is_idempotent(s))
            .unwrap();
        let e = cw
            .simple
            .iter()
            .copied()
            .find(|&e| m.is_idempotent(e) && m.mul(m.mul(e, outside), e) != outside)
            .unwrap();
        assert!(matches!(
            psi(&cw, e, outside),
            Err(Error::NotInLocalMonoid(_))
        ));
    }

    fn zero_one() -> Arc<FiniteMonoid> {
        Arc::new(FiniteMonoid::from_table(2, vec![0, 1, 1, 1]).unwrap())
    }

    #[test]
    fn rlm_of_group_and_zero() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(rlm(s3.monoid()).unwrap().classes.len(), 1);
        let r = rlm(&zero_one()).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.monoid.len(), 1);
    }

    #[test]
    fn rlm_constants() {
        let gens = [
            Transformation::cycle(3),
            Transformation::new(vec![0, 0, 2]).unwrap(),
        ];
        let m = Arc::new(FiniteMonoid::transformations(3, &gens, DEFAULT_CAP).unwrap());
        let r = rlm(&m).unwrap();
        let b = r.classes.len();
        assert_eq!(b, 3);
        let mut constants: Vec<usize> = (0..r.monoid.len())
            .filter(|&x| r.monoid.element(x).as_transf().unwrap().is_constant())
            .collect();
        constants.sort_unstable();
        assert_eq!(constants.len(), b);
    }

    #[test]
    fn schutz_on_group_is_regular() {
        let s3 = FiniteGroup::symmetric(3);
        let rep = schutz_rep_default(s3.monoid()).unwrap();
        assert_eq!(rep.image().len(), 6);
        assert!(is_faithful_on_min_ideal(s3.monoid()).unwrap().faithful);
        let (q, hom) = schutz_faithful_quotient(s3.monoid()).unwrap();
        assert!(hom.is_injective());
        let g = FiniteGroup::from_monoid(q).unwrap();
        assert!(is_isomorphic(&g, &s3).unwrap().is_some());
    }

    #[test]
    fn zero_one_is_not_faithful() {
        let m = zero_one();
        let verdict = is_faithful_on_min_ideal(&m).unwrap();
        assert!(!verdict.faithful);
        assert_eq!(verdict.witness, Some((0, 1)));
        let (q, _) = schutz_faithful_quotient(&m).unwrap();
        assert_eq!(q.len(), 1);
        assert!(is_faithful_on_min_ideal(&q).unwrap().faithful);
    }

    #[test]
    fn schutz_maximal_subgroup_and_base_idempotent() {
        // C2 x {1, 0}: (g, 1) and (g, 0) act identically on I = C2 x {0}
        let c2 = FiniteGroup::cyclic(2);
        let z = zero_one();
        let rule = crate::monoid::TupleRule(vec![
            Box::new(crate::monoid::MemberRule { monoid: &c2 }),
            Box::new(crate::monoid::MemberRule { monoid: &z }),
        ]);
        let seeds = [
            Element::Tuple(vec![c2.element(1).clone(), z.element(0).clone()]),
            Element::Tuple(vec![c2.element(0).clone(), z.element(1).clone()]),
        ];
        let m = Arc::new(
            generate_monoid(
                &seeds,
                Element::Tuple(vec![c2.element(0).clone(), z.element(0).clone()]),
                &rule,
                DEFAULT_CAP,
            )
            .unwrap(),
        );
        assert_eq!(m.len(), 4);
        let verdict = is_faithful_on_min_ideal(&m).unwrap();
        assert!(!verdict.faithful);
        let (q, _) = schutz_faithful_quotient(&m).unwrap();
        assert_eq!(q.len(), 2);

        let rep = schutz_rep_default(&m).unwrap();
        let e = rep.rees.idempotent;
        let em = rep.matrix(e);
        assert_eq!(em.constant_column(), Some(0));
        assert!(em.entries().iter().all(|&v| v == 0));
        let group = &rep.rees.group_embedding;
        let images: Vec<&RowMonomialMatrix> = group.iter().map(|&x| rep.matrix(x)).collect();
        for (g, img) in images.iter().enumerate() {
            assert_eq!(img.constant_column(), Some(0));
            assert!(img.entries().iter().all(|&v| v as usize == g));
        }
    }
}
