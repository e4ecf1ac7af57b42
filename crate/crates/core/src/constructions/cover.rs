//! A two-generated monoid whose minimal ideal has a prescribed maximal
//! subgroup `H` and is generated by idempotents.
//!
//! With `H = {h_1 = 1, .., h_m}` and `n >= 2m - 1`, the generators are
//! `x = (1̄, a)` with `a` the cycle `i -> i + 1 mod n`, and `y = (Y, 1̄)`
//! with `Y(j) = h_{j+1}` for `j < m` and `1` otherwise, both as `n x n`
//! row-monomial matrices over `H`.

use std::sync::Arc;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::green::{
    green_structure, idempotent_generated, maximal_subgroup_of, minimal_ideal_of, GreenStructure,
    MinimalIdeal,
};
use crate::group::{is_isomorphic, FiniteGroup, ISOMORPHISM_BOUND};
use crate::hom::MonoidHom;
use crate::monoid::{generate_monoid, FiniteMonoid, RowMonoRule, DEFAULT_CAP};
use crate::report::{Check, ConstructionReport};
use crate::wreath::RowMonomialMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    /// Enumerate `M` and check every claim directly.
    Full,
    /// Only multiply the witness products.
    Cheap,
}

impl CoverMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverMode::Full => "full",
            CoverMode::Cheap => "cheap",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverOptions {
    /// `None` picks full mode when `|H|^n * n` is within the cap.
    pub mode: Option<CoverMode>,
    pub cap: usize,
    /// Restricts the admissible moduli `n`; unrestricted when `None`.
    pub allowed_moduli: Option<Vec<usize>>,
}

impl Default for CoverOptions {
    fn default() -> Self {
        Self {
            mode: None,
            cap: DEFAULT_CAP,
            allowed_moduli: None,
        }
    }
}

/// The enumerated monoid and its minimal ideal data (full mode).
#[derive(Clone, Debug)]
pub struct CoverMonoid {
    pub monoid: Arc<FiniteMonoid>,
    pub green: GreenStructure,
    pub ideal: MinimalIdeal,
    pub x: usize,
    pub y: usize,
    pub g_y: FiniteGroup,
    /// Element indices of `g_y` in `monoid`.
    pub g_y_embedding: Vec<usize>,
    /// Row-1 entry, from `G_y` to `H`.
    pub theta: MonoidHom,
}

#[derive(Clone, Debug)]
pub struct CoverResult {
    pub group: FiniteGroup,
    pub n: usize,
    pub mode: CoverMode,
    pub x: RowMonomialMatrix,
    pub y: RowMonomialMatrix,
    pub full: Option<CoverMonoid>,
}

/// `|H|^n * n`, the size of `H ≀ ([n], constants)`.
pub fn cover_bound(order: usize, n: usize) -> Option<usize> {
    order.checked_pow(n as u32)?.checked_mul(n)
}

pub fn min_modulus(order: usize) -> usize {
    (2 * order).saturating_sub(1).max(2)
}

pub fn build_idempotent_cover(
    h: &FiniteGroup,
    n: usize,
    options: &CoverOptions,
) -> Result<CoverResult> {
    let m = h.order();
    let bound = min_modulus(m);
    if n < bound {
        return Err(Error::NTooSmall { n, bound });
    }
    if let Some(allowed) = &options.allowed_moduli {
        if !allowed.contains(&n) {
            return Err(Error::InvalidInput(format!(
                "modulus {n} is not in the allowed list"
            )));
        }
    }
    let x = RowMonomialMatrix::new(
        (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        vec![0; n],
    )?;
    let y = RowMonomialMatrix::new(
        vec![0; n],
        (0..n).map(|j| if j < m { j as u32 } else { 0 }).collect(),
    )?;
    let within_cap = cover_bound(m, n).is_some_and(|b| b <= options.cap);
    let mode = options.mode.unwrap_or(if within_cap {
        CoverMode::Full
    } else {
        CoverMode::Cheap
    });
    let mut result = CoverResult {
        group: h.clone(),
        n,
        mode,
        x,
        y,
        full: None,
    };
    if mode == CoverMode::Full {
        result.full = Some(enumerate(&result, options.cap)?);
    }
    Ok(result)
}

fn enumerate(c: &CoverResult, cap: usize) -> Result<CoverMonoid> {
    let h = &c.group;
    let seeds = [Element::RowMono(c.x.clone()), Element::RowMono(c.y.clone())];
    let identity = Element::RowMono(RowMonomialMatrix::identity(c.n, 0));
    let monoid = Arc::new(generate_monoid(
        &seeds,
        identity,
        &RowMonoRule { entry: h },
        cap,
    )?);
    let (x, y) = (monoid.generators()[0], monoid.generators()[1]);
    let green = green_structure(&monoid);
    let ideal = minimal_ideal_of(&monoid, &green)?;
    if !monoid.is_idempotent(y) {
        return Err(Error::InternalInconsistency("y is not idempotent".into()));
    }
    let (g_y, g_y_embedding) = maximal_subgroup_of(&monoid, &green, y)?;
    let theta_map = g_y_embedding
        .iter()
        .map(|&s| theta_of(monoid.element(s).as_row_mono().expect("matrix")))
        .collect();
    let theta = MonoidHom::new_unchecked(g_y.monoid().clone(), h.monoid().clone(), theta_map)?;
    Ok(CoverMonoid {
        monoid,
        green,
        ideal,
        x,
        y,
        g_y,
        g_y_embedding,
        theta,
    })
}

/// The entry in row 1.
pub fn theta_of(m: &RowMonomialMatrix) -> usize {
    *m.entry(0) as usize
}

impl CoverResult {
    pub fn mul(&self, a: &RowMonomialMatrix, b: &RowMonomialMatrix) -> RowMonomialMatrix {
        a.multiply(b, |&u, &v| self.group.mul(u as usize, v as usize) as u32)
            .expect("same size")
    }

    pub fn product(&self, factors: &[RowMonomialMatrix]) -> RowMonomialMatrix {
        factors
            .iter()
            .fold(RowMonomialMatrix::identity(self.n, 0), |acc, f| {
                self.mul(&acc, f)
            })
    }

    /// `x^k` for any integer `k`, using `x^n = 1`.
    pub fn x_power(&self, k: i64) -> RowMonomialMatrix {
        let k = k.rem_euclid(self.n as i64) as usize;
        self.product(&vec![self.x.clone(); k])
    }

    pub fn is_idempotent(&self, a: &RowMonomialMatrix) -> bool {
        &self.mul(a, a) == a
    }
}

/// A product of idempotents whose row-1 entry is `h`.
#[derive(Clone, Debug)]
pub struct CoverWitness {
    pub h: usize,
    /// `j` with `h = h_{j+1}`.
    pub j: usize,
    pub factors: Vec<RowMonomialMatrix>,
    pub product: RowMonomialMatrix,
}

/// `[y]` for `h_1`, and `[y, x^j y x^-j, y]` for `h_{j+1}`.
pub fn cover_idempotent_witnesses(c: &CoverResult) -> Vec<CoverWitness> {
    let mut out = vec![CoverWitness {
        h: 0,
        j: 0,
        factors: vec![c.y.clone()],
        product: c.y.clone(),
    }];
    for j in 1..c.group.order() {
        let conj = c.product(&[c.x_power(j as i64), c.y.clone(), c.x_power(-(j as i64))]);
        let factors = vec![c.y.clone(), conj, c.y.clone()];
        out.push(CoverWitness {
            h: j,
            j,
            product: c.product(&factors),
            factors,
        });
    }
    out
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    ok: impl Fn(&T) -> bool,
    describe: impl Fn(&T) -> String,
) -> std::result::Result<(), String> {
    match items.into_iter().find(|i| !ok(i)) {
        None => Ok(()),
        Some(bad) => Err(describe(&bad)),
    }
}

pub fn verify_cover(c: &CoverResult, mode: CoverMode) -> ConstructionReport {
    let h = &c.group;
    let mut report = ConstructionReport::new("cover");
    report
        .param("group_order", h.order())
        .param("n", c.n)
        .param("mode", mode.as_str());
    if let Some(full) = &c.full {
        report.param("monoid_size", full.monoid.len());
        report.param("ideal_size", full.ideal.len());
    }

    let witnesses = cover_idempotent_witnesses(c);
    report.push(Check::from_result(
        "witness_factors_idempotent",
        first_failure(
            witnesses
                .iter()
                .flat_map(|w| w.factors.iter().map(move |f| (w.h, f))),
            |(_, f)| c.is_idempotent(f),
            |(h, f)| {
                format!(
                    "factor {f} of the witness for h_{} is not idempotent",
                    h + 1
                )
            },
        ),
    ));
    report.push(Check::from_result(
        "witness_in_local_group",
        first_failure(
            &witnesses,
            |w| {
                c.product(&[c.y.clone(), w.product.clone(), c.y.clone()]) == w.product
                    && w.product.constant_column() == Some(0)
            },
            |w| format!("witness for h_{} is not in yMy", w.h + 1),
        ),
    ));
    report.push(Check::from_result(
        "witness_theta",
        first_failure(
            &witnesses,
            |w| theta_of(&w.product) == w.h,
            |w| {
                format!(
                    "theta of the witness for h_{} is h_{}",
                    w.h + 1,
                    theta_of(&w.product) + 1
                )
            },
        ),
    ));
    let images: Vec<usize> = witnesses.iter().map(|w| theta_of(&w.product)).collect();
    let generated = h.subgroup_generated(&images);
    let generates = if generated.len() != h.order() {
        Err(format!(
            "witness images generate {} of {} elements",
            generated.len(),
            h.order()
        ))
    } else if h.order() <= ISOMORPHISM_BOUND {
        let (sub, _) = FiniteGroup::from_subset(h, &generated, 0).expect("subgroup");
        match is_isomorphic(&sub, h) {
            Ok(Some(_)) => Ok(()),
            _ => Err("generated subgroup is not isomorphic to H".into()),
        }
    } else {
        Ok(())
    };
    report.push(Check::from_result("witnesses_generate_h", generates));

    let full = match (mode, &c.full) {
        (CoverMode::Full, Some(full)) => full,
        (CoverMode::Full, None) => {
            report.push(Check::skipped("full_checks", "monoid was not enumerated"));
            return report;
        }
        (CoverMode::Cheap, _) => {
            let note = match cover_bound(h.order(), c.n) {
                Some(b) => format!("closure skipped: |H|^n n = {b}"),
                None => "closure skipped: |H|^n n overflows".to_string(),
            };
            report.push(Check::skipped("full_closure", note));
            return report;
        }
    };
    let m = &full.monoid;
    let matrix = |s: usize| m.element(s).as_row_mono().expect("matrix");

    let identity = RowMonomialMatrix::identity(c.n, 0);
    let mut power = c.x.clone();
    let mut order = 1;
    while power != identity {
        power = c.mul(&power, &c.x);
        order += 1;
    }
    let order_ok = order == c.n;
    report.push(Check::from_result(
        "x_order_n",
        if order_ok {
            Ok(())
        } else {
            Err(format!("x does not have order {}", c.n))
        },
    ));
    report.push(Check::from_result(
        "y_idempotent",
        if m.is_idempotent(full.y) {
            Ok(())
        } else {
            Err("y * y != y".into())
        },
    ));
    let constant_part: Vec<usize> = (0..m.len())
        .filter(|&s| matrix(s).constant_column().is_some())
        .collect();
    report.push(Check::from_result(
        "ideal_is_constant_part",
        if constant_part == full.ideal.elements {
            Ok(())
        } else {
            Err(format!(
                "minimal ideal has {} elements, constant-column part {}",
                full.ideal.len(),
                constant_part.len()
            ))
        },
    ));
    let theta_ok = full
        .theta
        .check()
        .map_err(|(a, b)| format!("theta not multiplicative at {a}, {b}"))
        .and_then(|()| {
            if full.theta.is_injective() && full.theta.is_surjective() {
                Ok(())
            } else {
                Err(format!(
                    "theta has image of size {} in H",
                    full.theta.image().len()
                ))
            }
        });
    report.push(Check::from_result("theta_isomorphism", theta_ok));
    let iso = match is_isomorphic(&full.g_y, h) {
        Ok(Some(_)) => Ok(()),
        Ok(None) => Err(format!(
            "G_y has order {} and is not isomorphic to H",
            full.g_y.order()
        )),
        Err(e) => Err(e.to_string()),
    };
    report.push(Check::from_result("maximal_subgroup_is_h", iso));
    let generated = idempotent_generated(m, &full.ideal.elements);
    let egen = match &generated {
        Ok(g) if *g == full.ideal.elements => Ok(()),
        Ok(g) => Err(format!(
            "<E(J)> has {} of {} elements",
            g.len(),
            full.ideal.len()
        )),
        Err(e) => Err(e.to_string()),
    };
    report.push(Check::from_result("idempotents_generate_ideal", egen));
    if let Ok(generated) = generated {
        let mut hit = vec![false; h.order()];
        for (g, &s) in full.g_y_embedding.iter().enumerate() {
            if generated.binary_search(&s).is_ok() {
                hit[full.theta.apply(g)] = true;
            }
        }
        let count = hit.iter().filter(|&&b| b).count();
        report.push(Check::from_result(
            "idempotent_products_exhaust_h",
            if count == h.order() {
                Ok(())
            } else {
                Err(format!(
                    "theta(<E(J)> ∩ G_y) has {count} of {} elements",
                    h.order()
                ))
            },
        ));
    }
    report.push(Check::from_result(
        "witnesses_in_monoid",
        first_failure(
            &witnesses,
            |w| {
                m.index_of(&Element::RowMono(w.product.clone()))
                    .is_some_and(|s| full.g_y_embedding.contains(&s))
            },
            |w| format!("witness for h_{} is not in G_y", w.h + 1),
        ),
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_by_name;

    fn cover(name: &str, n: usize) -> CoverResult {
        build_idempotent_cover(&group_by_name(name).unwrap(), n, &CoverOptions::default()).unwrap()
    }

    #[test]
    fn trivial_group_cover() {
        let c = cover("1", 2);
        assert_eq!(c.mode, CoverMode::Full);
        let report = verify_cover(&c, CoverMode::Full);
        assert!(report.all_passed(), "{report}");
        assert_eq!(c.full.as_ref().unwrap().g_y.order(), 1);
    }

    #[test]
    fn c2_cover_matches_hand_computation() {
        let c = cover("C2", 3);
        let w = &cover_idempotent_witnesses(&c)[1];
        // x y x^-1 = (aY, column 3)
        assert_eq!(w.factors[1].constant_column(), Some(2));
        assert_eq!(theta_of(&w.product), 1);
        let report = verify_cover(&c, CoverMode::Full);
        assert!(report.all_passed(), "{report}");
        let full = c.full.unwrap();
        assert_eq!(full.g_y.order(), 2);
        let direct: Vec<usize> = (0..full.monoid.len())
            .filter(|&s| {
                full.monoid
                    .element(s)
                    .as_row_mono()
                    .unwrap()
                    .constant_column()
                    .is_some()
            })
            .collect();
        assert_eq!(direct, full.ideal.elements);
    }

    #[test]
    fn c3_witness_by_direct_multiplication() {
        let c = build_idempotent_cover(
            &FiniteGroup::cyclic(3),
            5,
            &CoverOptions {
                mode: Some(CoverMode::Cheap),
                ..CoverOptions::default()
            },
        )
        .unwrap();
        let w = &cover_idempotent_witnesses(&c)[2];
        // x^2 y x^-2 has its column at n - j + 1 = 4 (1-based)
        assert_eq!(w.factors[1].constant_column(), Some(3));
        let mut z = c.y.clone();
        for f in &w.factors[1..] {
            z = c.mul(&z, f);
        }
        assert_eq!(theta_of(&z), 2);
    }

    #[test]
    fn modulus_bound() {
        let s3 = FiniteGroup::symmetric(3);
        assert!(matches!(
            build_idempotent_cover(&s3, 10, &CoverOptions::default()),
            Err(Error::NTooSmall { n: 10, bound: 11 })
        ));
        assert!(matches!(
            build_idempotent_cover(&FiniteGroup::trivial(), 1, &CoverOptions::default()),
            Err(Error::NTooSmall { n: 1, bound: 2 })
        ));
        let restricted = CoverOptions {
            allowed_moduli: Some(vec![5]),
            ..CoverOptions::default()
        };
        assert!(build_idempotent_cover(&FiniteGroup::cyclic(2), 3, &restricted).is_err());
    }

    #[test]
    fn s3_cheap_mode() {
        let c = cover("S3", 11);
        assert_eq!(c.mode, CoverMode::Cheap);
        let report = verify_cover(&c, CoverMode::Cheap);
        assert!(report.all_passed(), "{report}");
        assert_eq!(
            report.get("full_closure").unwrap().outcome,
            crate::report::Outcome::Skipped
        );
    }
}
