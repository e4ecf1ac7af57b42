//! Solving a finite embedding problem over a monoid whose Schützenberger
//! representation on its minimal ideal is faithful.
//!
//! Given `alpha: H -> K` onto the maximal subgroup `K` of the base monoid at
//! `f`, the new generators are block row-monomial matrices of `p x p` blocks
//! of size `b`, each block a row-monomial matrix over `H` lifting the
//! Schützenberger matrix of a base generator along a section of `alpha`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::green::{
    check_min_ideal_image, green_structure, maximal_subgroup_of, minimal_ideal_of,
    rees_coordinates, GreenStructure, MinimalIdeal, ReesCoordinates,
};
use crate::group::{is_isomorphic, FiniteGroup};
use crate::hom::{canonical_section, MonoidHom, Section};
use crate::monoid::{generate_monoid, BlockRule, FiniteMonoid};
use crate::report::{Check, ConstructionReport};
use crate::wreath::{
    schutz_faithful_quotient, schutz_rep, BlockRowMonomialMatrix, RowMonomialMatrix, SchutzRep,
};

/// A base monoid made Schützenberger-faithful, with an idempotent `f` of its
/// minimal ideal satisfying `g1^ω f = f = f g2^ω`.
#[derive(Clone, Debug)]
pub struct PreparedBase {
    pub original: Arc<FiniteMonoid>,
    /// `original -> monoid`, the Schützenberger image.
    pub quotient: MonoidHom,
    pub monoid: Arc<FiniteMonoid>,
    pub green: GreenStructure,
    pub ideal: MinimalIdeal,
    /// The word `w0 g1 .. gn` over generator positions.
    pub word: Vec<usize>,
    pub z: usize,
    pub f: usize,
    /// The same recipe evaluated in `original`.
    pub f_original: usize,
    pub rees: ReesCoordinates,
    pub schutz: SchutzRep,
    /// Schützenberger matrices of the generators, entries in `k()`.
    pub matrices: Vec<RowMonomialMatrix>,
    pub m_f: RowMonomialMatrix,
}

impl PreparedBase {
    pub fn k(&self) -> &FiniteGroup {
        &self.rees.group
    }

    pub fn b(&self) -> usize {
        self.rees.b()
    }

    pub fn num_generators(&self) -> usize {
        self.monoid.num_generators()
    }

    pub fn matrix(&self, s: usize) -> &RowMonomialMatrix {
        self.schutz.matrix(s)
    }
}

fn recipe(m: &FiniteMonoid, ideal: &MinimalIdeal) -> (Vec<usize>, usize, usize) {
    let w0 = m.word(ideal.elements[0]);
    let word: Vec<usize> = w0.into_iter().chain(0..m.num_generators()).collect();
    let z = m.evaluate(&word);
    let gens = m.generators();
    let f = m.omega_power(m.product(&[m.omega_power(gens[0]), z, m.omega_power(gens[1])]));
    (word, z, f)
}

pub fn prepare_base(m: &Arc<FiniteMonoid>) -> Result<PreparedBase> {
    let n = m.num_generators();
    if n < 2 {
        return Err(Error::TooFewGenerators(n));
    }
    let (monoid, quotient) = schutz_faithful_quotient(m)?;
    let green = green_structure(&monoid);
    let ideal = minimal_ideal_of(&monoid, &green)?;
    let (word, z, f) = recipe(&monoid, &ideal);
    let original_ideal = minimal_ideal_of(m, &green_structure(m))?;
    let (_, _, f_original) = recipe(m, &original_ideal);
    let rees = rees_coordinates(&monoid, &green, &ideal, f)?;
    let schutz = schutz_rep(&monoid, &rees)?;
    if !schutz.hom.is_injective() {
        return Err(Error::InternalInconsistency(
            "Schützenberger image is not faithful at the chosen idempotent".into(),
        ));
    }
    let matrices = monoid
        .generators()
        .iter()
        .map(|&g| schutz.matrix(g).clone())
        .collect();
    let m_f = schutz.matrix(f).clone();
    if m_f.constant_column() != Some(0) || m_f.entries().iter().any(|&k| k != 0) {
        return Err(Error::InternalInconsistency(format!(
            "M_f = {m_f} is not the first-column identity"
        )));
    }
    Ok(PreparedBase {
        original: m.clone(),
        quotient,
        monoid,
        green,
        ideal,
        word,
        z,
        f,
        f_original,
        rees,
        schutz,
        matrices,
        m_f,
    })
}

/// `alpha: H -> K` with `K` identified with the maximal subgroup of the base.
#[derive(Clone, Debug)]
pub struct EmbeddingProblem {
    pub h: FiniteGroup,
    pub k: FiniteGroup,
    pub alpha: MonoidHom,
    pub base: PreparedBase,
    /// `k -> base.k()`.
    pub iso: MonoidHom,
    /// `alpha` followed by `iso`.
    pub alpha_base: MonoidHom,
}

impl EmbeddingProblem {
    pub fn new(alpha: MonoidHom, base: PreparedBase) -> Result<Self> {
        let h = FiniteGroup::from_monoid(alpha.source().clone())?;
        let k = FiniteGroup::from_monoid(alpha.target().clone())?;
        if !alpha.is_surjective() {
            return Err(Error::NonSurjectiveAlpha);
        }
        let mismatch = Error::KMismatch {
            alpha_codomain: k.order(),
            base: base.k().order(),
        };
        if k.order() != base.k().order() {
            return Err(mismatch);
        }
        let iso = is_isomorphic(&k, base.k())?.ok_or(mismatch)?;
        let alpha_base = alpha.then(&iso)?;
        Ok(Self {
            h,
            k,
            alpha,
            base,
            iso,
            alpha_base,
        })
    }

    /// `ᾱ`: `alpha` applied entry-wise, landing in matrices over `base.k()`.
    pub fn alpha_bar(&self, u: &RowMonomialMatrix) -> RowMonomialMatrix {
        u.map_entries(|&h| self.alpha_base.apply(h as usize) as u32)
    }
}

#[derive(Clone, Debug)]
pub struct EmbeddingParams {
    pub section: Section,
    /// `N = ker alpha`, sorted.
    pub kernel: Vec<usize>,
    pub nu: usize,
    pub ell: usize,
    /// `N^b` in lexicographic order, first coordinate most significant.
    pub diagonals: Vec<Vec<usize>>,
    pub m: usize,
    pub bound: usize,
    pub p: usize,
    pub r: usize,
    /// `M_{g_i}^σ`.
    pub lifted: Vec<RowMonomialMatrix>,
}

pub fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn h_mul(h: &FiniteGroup, a: &RowMonomialMatrix, b: &RowMonomialMatrix) -> RowMonomialMatrix {
    a.multiply(b, |&u, &v| h.mul(u as usize, v as usize) as u32)
        .expect("same size")
}

/// `N_j X`: row `r` of `X` multiplied on the left by `n_r`.
pub fn diag_times(h: &FiniteGroup, diag: &[usize], x: &RowMonomialMatrix) -> RowMonomialMatrix {
    let entries = x
        .entries()
        .iter()
        .zip(diag)
        .map(|(&v, &n)| h.mul(n, v as usize) as u32)
        .collect();
    RowMonomialMatrix::new(x.cols().to_vec(), entries).expect("same shape")
}

/// Least `m >= 1` with `x^m` idempotent.
pub fn idempotent_exponent(h: &FiniteGroup, x: &RowMonomialMatrix) -> usize {
    let mut power = x.clone();
    let mut m = 1;
    while h_mul(h, &power, &power) != power {
        power = h_mul(h, &power, x);
        m += 1;
    }
    m
}

pub fn embedding_parameters(
    problem: &EmbeddingProblem,
    p_override: Option<usize>,
    allowed_primes: Option<&[usize]>,
) -> Result<EmbeddingParams> {
    let h = &problem.h;
    let b = problem.base.b();
    let section = canonical_section(&problem.alpha_base)?;
    let kernel = problem.alpha_base.kernel();
    let nu = kernel.len();
    let ell = u32::try_from(b)
        .ok()
        .and_then(|e| nu.checked_pow(e))
        .ok_or(Error::SizeExceeded { size: nu, bound: b })?;
    let mut diagonals = vec![Vec::with_capacity(b)];
    for _ in 0..b {
        diagonals = diagonals
            .into_iter()
            .flat_map(|prefix| {
                kernel.iter().map(move |&n| {
                    let mut t = prefix.clone();
                    t.push(n);
                    t
                })
            })
            .collect();
    }
    let lifted: Vec<RowMonomialMatrix> = problem
        .base
        .matrices
        .iter()
        .map(|x| x.map_entries(|&k| section.apply(k as usize) as u32))
        .collect();
    let m = idempotent_exponent(h, &lifted[0]);
    let bound = m.max(ell);
    let admissible =
        |p: usize| is_prime(p) && p > bound && allowed_primes.is_none_or(|a| a.contains(&p));
    let p = match p_override {
        Some(p) if admissible(p) => p,
        Some(p) => {
            return Err(Error::PrimeBoundViolated(format!(
                "override {p} is not an allowed prime above max(m, nu^b) = {bound}"
            )))
        }
        None => match allowed_primes {
            Some(list) => list
                .iter()
                .copied()
                .filter(|&p| admissible(p))
                .min()
                .ok_or_else(|| {
                    Error::PrimeBoundViolated(format!("no allowed prime exceeds {bound}"))
                })?,
            None => (bound + 1..)
                .find(|&p| is_prime(p))
                .expect("primes are unbounded"),
        },
    };
    let r = (1..p)
        .find(|&r| r * m % p == 1)
        .expect("m is invertible mod p");
    Ok(EmbeddingParams {
        section,
        kernel,
        nu,
        ell,
        diagonals,
        m,
        bound,
        p,
        r,
        lifted,
    })
}

/// `x̃_1` cycles the `p` block rows with every block `M_{g1}^σ`; `x̃_i` for
/// `i >= 2` has every block in the first block column, block `j` equal to
/// `N_j M_{gi}^σ` for `j < ell` and `M_{gi}^σ` beyond.
pub fn embedding_generators(
    problem: &EmbeddingProblem,
    params: &EmbeddingParams,
) -> Vec<BlockRowMonomialMatrix> {
    let p = params.p;
    let mut out = Vec::with_capacity(params.lifted.len());
    out.push(
        RowMonomialMatrix::new(
            (0..p as u32).map(|i| (i + 1) % p as u32).collect(),
            vec![params.lifted[0].clone(); p],
        )
        .expect("cycle"),
    );
    for x in &params.lifted[1..] {
        let blocks = (0..p)
            .map(|j| match params.diagonals.get(j) {
                Some(d) => diag_times(&problem.h, d, x),
                None => x.clone(),
            })
            .collect();
        out.push(RowMonomialMatrix::new(vec![0; p], blocks).expect("first column"));
    }
    out
}

#[derive(Clone, Debug)]
pub struct EmbeddingSolution {
    pub problem: EmbeddingProblem,
    pub params: EmbeddingParams,
    pub tilde_x: Vec<BlockRowMonomialMatrix>,
    pub monoid: Arc<FiniteMonoid>,
    /// `M' -> base.monoid`, by replaying words.
    pub rho: MonoidHom,
    pub green: GreenStructure,
    pub ideal: MinimalIdeal,
    pub e_prime: usize,
    pub g_e: FiniteGroup,
    pub g_e_embedding: Vec<usize>,
    /// The `(1,1)` entry, from `G_{e'}` to `H`.
    pub theta: MonoidHom,
    /// `x̃_1^{mr}`.
    pub cycler: usize,
}

impl EmbeddingSolution {
    pub fn block(&self, u: usize) -> &BlockRowMonomialMatrix {
        self.monoid.element(u).as_block().expect("block matrix")
    }

    /// `η(w)` for a word over generator positions.
    pub fn eta(&self, word: &[usize]) -> usize {
        self.monoid.evaluate(word)
    }
}

pub fn solve_embedding(
    problem: &EmbeddingProblem,
    p_override: Option<usize>,
    allowed_primes: Option<&[usize]>,
    cap: usize,
) -> Result<EmbeddingSolution> {
    let params = embedding_parameters(problem, p_override, allowed_primes)?;
    let generators = embedding_generators(problem, &params);
    assemble_solution(problem, params, generators, cap)
}

/// Enumerates `M'` from the given generators and derives `rho`, `e'` and
/// `theta`. Exposed so that altered generators can be verified too.
pub fn assemble_solution(
    problem: &EmbeddingProblem,
    params: EmbeddingParams,
    tilde_x: Vec<BlockRowMonomialMatrix>,
    cap: usize,
) -> Result<EmbeddingSolution> {
    let base = &problem.base;
    if tilde_x.len() != base.num_generators() {
        return Err(Error::SizeMismatch(format!(
            "{} generators for a base with {}",
            tilde_x.len(),
            base.num_generators()
        )));
    }
    let b = base.b();
    let identity = RowMonomialMatrix::identity(params.p, RowMonomialMatrix::identity(b, 0));
    let seeds: Vec<Element> = tilde_x.iter().cloned().map(Element::Block).collect();
    let monoid = Arc::new(generate_monoid(
        &seeds,
        Element::Block(identity),
        &BlockRule { entry: &problem.h },
        cap,
    )?);
    let rho_map = (0..monoid.len())
        .map(|u| base.monoid.evaluate(&monoid.word(u)))
        .collect();
    let rho = MonoidHom::new_unchecked(monoid.clone(), base.monoid.clone(), rho_map)?;
    let green = green_structure(&monoid);
    let ideal = minimal_ideal_of(&monoid, &green)?;
    let gens = monoid.generators();
    let eta_w = monoid.evaluate(&base.word);
    let e_prime = monoid.omega_power(monoid.product(&[
        monoid.omega_power(gens[0]),
        eta_w,
        monoid.omega_power(gens[1]),
    ]));
    let (g_e, g_e_embedding) = maximal_subgroup_of(&monoid, &green, e_prime)?;
    let theta_map = g_e_embedding
        .iter()
        .map(|&u| {
            monoid
                .element(u)
                .as_block()
                .expect("block matrix")
                .flat_entry(0)
                .1 as usize
        })
        .collect();
    let theta =
        MonoidHom::new_unchecked(g_e.monoid().clone(), problem.h.monoid().clone(), theta_map)?;
    let cycler = monoid.pow(gens[0], params.m * params.r);
    Ok(EmbeddingSolution {
        problem: problem.clone(),
        params,
        tilde_x,
        monoid,
        rho,
        green,
        ideal,
        e_prime,
        g_e,
        g_e_embedding,
        theta,
        cycler,
    })
}

fn ok_if(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// Random words containing every generator.
pub fn full_support_words(n: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    (0..count)
        .map(|_| {
            let extra = rng.gen_range(0..=8);
            let mut w: Vec<usize> = (0..n)
                .chain((0..extra).map(|_| rng.gen_range(0..n)))
                .collect();
            w.shuffle(rng);
            w
        })
        .collect()
}

/// Checks every postcondition of the construction; see the check names.
///
/// Block-entry and word checks run over `sample` random elements and words,
/// or over all of `M'` when it has at most `sample` elements.
pub fn verify_embedding(sol: &EmbeddingSolution, sample: usize, seed: u64) -> ConstructionReport {
    let problem = &sol.problem;
    let base = &problem.base;
    let params = &sol.params;
    let h = &problem.h;
    let m = &sol.monoid;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ConstructionReport::new("embedding");
    report
        .param("h_order", h.order())
        .param("k_order", problem.k.order())
        .param("generators", base.num_generators())
        .param("base_size", base.monoid.len())
        .param("b", base.b())
        .param("nu", params.nu)
        .param("ell", params.ell)
        .param("m", params.m)
        .param("p", params.p)
        .param("r", params.r)
        .param("monoid_size", m.len())
        .param("ideal_size", sol.ideal.len())
        .param("g_e_order", sol.g_e.order());

    let exhaustive = m.len() <= sample;
    report.param(
        "element_checks",
        if exhaustive { "exhaustive" } else { "sampled" },
    );
    let elements: Vec<usize> = if exhaustive {
        (0..m.len()).collect()
    } else {
        (0..sample).map(|_| rng.gen_range(0..m.len())).collect()
    };

    // (1) ᾱ(U) = M_{ρ(u)} for every block entry U of u.
    let block_entries = elements.iter().find_map(|&u| {
        let want = base.matrix(sol.rho.apply(u));
        sol.block(u)
            .rows()
            .position(|(_, block)| &problem.alpha_bar(block) != want)
            .map(|row| {
                format!(
                    "block row {} of element {} maps to {} not {}",
                    row + 1,
                    u,
                    problem.alpha_bar(sol.block(u).entry(row)),
                    want
                )
            })
    });
    report.push(Check::from_result(
        "block_entries_lift",
        block_entries.map_or(Ok(()), Err),
    ));

    // (2) full-support words: one block column, every preimage present, diagonal law.
    let words = full_support_words(base.num_generators(), sample.min(500), &mut rng);
    let mut word_failure = None;
    let mut law_failure = None;
    for w in &words {
        let u = sol.eta(w);
        let blocks = sol.block(u);
        let m_w = base.matrix(base.monoid.evaluate(w));
        let lift = m_w.map_entries(|&k| params.section.apply(k as usize) as u32);
        let preimages: Vec<RowMonomialMatrix> = params
            .diagonals
            .iter()
            .map(|d| diag_times(h, d, &lift))
            .collect();
        if blocks.constant_column().is_none() {
            word_failure = Some(format!("eta({w:?}) has blocks in several columns"));
        } else if let Some(missing) = preimages.iter().find(|p| !blocks.entries().contains(p)) {
            word_failure = Some(format!("preimage {missing} of M_w missing from eta({w:?})"));
        }
        if let Some(bad) = blocks
            .entries()
            .iter()
            .find(|u| preimages.iter().filter(|p| p == u).count() != 1)
        {
            law_failure = Some(format!(
                "block {bad} of eta({w:?}) is not N_j M_w^σ for exactly one j"
            ));
        }
        if word_failure.is_some() {
            break;
        }
    }
    report.param("words_checked", words.len());
    report.push(Check::from_result(
        "word_preimages_present",
        word_failure.map_or(Ok(()), Err),
    ));
    report.push(Check::from_result(
        "diagonal_law",
        law_failure.map_or(Ok(()), Err),
    ));

    // (3) J' is the constant-column part.
    let constant: Vec<usize> = (0..m.len())
        .filter(|&u| {
            sol.block(u)
                .flatten()
                .ok()
                .and_then(|f| f.constant_column())
                .is_some()
        })
        .collect();
    report.push(Check::from_result(
        "ideal_is_constant_part",
        ok_if(constant == sol.ideal.elements, || {
            format!(
                "J' has {} elements, constant-column part {}",
                sol.ideal.len(),
                constant.len()
            )
        }),
    ));

    // e' and theta.
    let e = sol.e_prime;
    report.push(Check::from_result(
        "e_prime_idempotent_in_ideal",
        ok_if(m.is_idempotent(e) && sol.ideal.contains(e), || {
            format!("e' = {e} is not an idempotent of J'")
        }),
    ));
    report.push(Check::from_result(
        "e_prime_over_f",
        ok_if(sol.rho.apply(e) == base.f, || {
            format!("rho(e') = {} but f = {}", sol.rho.apply(e), base.f)
        }),
    ));
    report.push(Check::from_result(
        "e_prime_corner_identity",
        ok_if(sol.block(e).flat_entry(0) == (0, 0), || {
            format!(
                "(1,1) position of e' holds {:?}",
                sol.block(e).flat_entry(0)
            )
        }),
    ));
    let corner = sol
        .g_e_embedding
        .iter()
        .find(|&&u| sol.block(u).flat_entry(0).0 != 0);
    let theta_hom = sol
        .theta
        .check()
        .map_err(|(a, b)| format!("theta not multiplicative at {a}, {b}"));
    let theta_iso = corner
        .map_or(Ok(()), |u| {
            Err(format!("element {u} of G_e' has no (1,1) entry"))
        })
        .and(theta_hom)
        .and(ok_if(sol.theta.is_injective(), || {
            "theta is not injective".into()
        }))
        .and(ok_if(sol.theta.is_surjective(), || {
            format!(
                "theta image has {} of {} elements",
                sol.theta.image().len(),
                h.order()
            )
        }));
    report.push(Check::from_result("theta_isomorphism", theta_iso));

    // (4) N is reached by the cycler powers and every k has a lift.
    let mut reached = Vec::new();
    let mut power = 0usize;
    for _ in 0..params.p {
        let u = m.product(&[e, power, e]);
        let (col, v) = sol.block(u).flat_entry(0);
        if col == 0 {
            reached.push(v as usize);
        }
        power = m.mul(power, sol.cycler);
    }
    let reached = sorted(reached);
    let missing: Vec<usize> = params
        .kernel
        .iter()
        .copied()
        .filter(|n| reached.binary_search(n).is_err())
        .collect();
    report.push(Check::from_result(
        "cycler_reaches_kernel",
        ok_if(missing.is_empty(), || {
            format!("kernel elements {missing:?} not reached")
        }),
    ));
    let lifted_k = sorted(
        sol.theta
            .map()
            .iter()
            .map(|&x| problem.alpha_base.apply(x))
            .collect(),
    );
    report.push(Check::from_result(
        "theta_covers_k",
        ok_if(lifted_k.len() == base.k().order(), || {
            format!(
                "alpha(theta(G_e')) has {} of {} elements",
                lifted_k.len(),
                base.k().order()
            )
        }),
    ));

    // (5) rho = alpha theta on G_e'.
    let compatible = sol.g_e_embedding.iter().enumerate().find_map(|(g, &u)| {
        let over = base.rees.group_index(sol.rho.apply(u));
        let want = problem.alpha_base.apply(sol.theta.apply(g));
        (over != Some(want))
            .then(|| format!("element {u}: rho gives {over:?}, alpha theta gives {want}"))
    });
    report.push(Check::from_result(
        "rho_equals_alpha_theta",
        compatible.map_or(Ok(()), Err),
    ));

    // rho itself.
    report.push(Check::from_result(
        "rho_homomorphism",
        sol.rho
            .check()
            .map_err(|(a, b)| format!("rho not multiplicative at {a}, {b}")),
    ));
    report.push(Check::from_result(
        "rho_surjective",
        ok_if(sol.rho.is_surjective(), || {
            format!(
                "rho image has {} of {} elements",
                sol.rho.image().len(),
                base.monoid.len()
            )
        }),
    ));
    let bad_gen = (0..base.num_generators())
        .find(|&i| sol.rho.apply(m.generators()[i]) != base.monoid.generators()[i]);
    report.push(Check::from_result(
        "rho_on_generators",
        bad_gen.map_or(Ok(()), |i| Err(format!("rho(x{}) != g{}", i + 1, i + 1))),
    ));

    // (6) minimal ideal and maximal subgroups go onto their counterparts.
    match check_min_ideal_image(&sol.rho) {
        Ok(checks) => {
            report.extend(checks);
        }
        Err(err) => {
            report.push(Check::fail("image_of_minimal_ideal", err.to_string()));
        }
    }
    let g_f = base.green.h_class(base.f);
    let image = sorted(
        sol.g_e_embedding
            .iter()
            .map(|&u| sol.rho.apply(u))
            .collect(),
    );
    report.push(Check::from_result(
        "rho_onto_k",
        ok_if(image == g_f, || {
            format!("rho(G_e') has {} of {} elements", image.len(), g_f.len())
        }),
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_by_name;
    use crate::hom::hom_from_images;
    use crate::monoid::DEFAULT_CAP;

    fn c2_gg() -> Arc<FiniteMonoid> {
        Arc::new(FiniteGroup::cyclic(2).generated_by(&[1, 1]).unwrap())
    }

    fn zero_one() -> Arc<FiniteMonoid> {
        Arc::new(
            FiniteMonoid::from_table(2, vec![0, 1, 1, 1])
                .unwrap()
                .generated_by(&[0, 1])
                .unwrap(),
        )
    }

    fn onto(h: &FiniteGroup, k: &FiniteGroup, images: &[usize]) -> MonoidHom {
        hom_from_images(h.monoid(), k.monoid(), images).unwrap()
    }

    fn c4_onto_c2() -> MonoidHom {
        onto(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2), &[1])
    }

    #[test]
    fn primes() {
        let found: Vec<usize> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(found, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn prepare_group_base() {
        let base = prepare_base(&c2_gg()).unwrap();
        assert_eq!(base.f, 0);
        assert_eq!(base.k().order(), 2);
        assert_eq!(base.b(), 1);
    }

    #[test]
    fn prepare_zero_one_base() {
        let base = prepare_base(&zero_one()).unwrap();
        assert_eq!(base.original.element(base.f_original), &Element::Index(1));
        assert_eq!(base.monoid.len(), 1);
        assert_eq!(base.k().order(), 1);
        assert_eq!(base.b(), 1);
    }

    #[test]
    fn too_few_generators() {
        let single = Arc::new(FiniteGroup::cyclic(2).generated_by(&[1]).unwrap());
        assert!(matches!(
            prepare_base(&single),
            Err(Error::TooFewGenerators(1))
        ));
    }

    #[test]
    fn c4_over_c2() {
        let problem = EmbeddingProblem::new(c4_onto_c2(), prepare_base(&c2_gg()).unwrap()).unwrap();
        let sol = solve_embedding(&problem, None, None, DEFAULT_CAP).unwrap();
        assert_eq!((sol.params.nu, sol.params.ell, sol.params.m), (2, 2, 4));
        assert_eq!(sol.params.p, 5);
        assert_eq!(sol.params.r * sol.params.m % sol.params.p, 1);
        assert!(is_isomorphic(&sol.g_e, &FiniteGroup::cyclic(4))
            .unwrap()
            .is_some());
        let report = verify_embedding(&sol, 1000, 7);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn two_over_trivial_on_zero_one() {
        let alpha = onto(&FiniteGroup::cyclic(2), &FiniteGroup::trivial(), &[0]);
        let problem = EmbeddingProblem::new(alpha, prepare_base(&zero_one()).unwrap()).unwrap();
        let sol = solve_embedding(&problem, None, None, DEFAULT_CAP).unwrap();
        assert_eq!(sol.params.p, 3);
        assert_eq!(sol.g_e.order(), 2);
        let report = verify_embedding(&sol, 1000, 7);
        assert!(report.all_passed(), "{report}");
    }

    #[test]
    fn identity_alpha() {
        let c2 = FiniteGroup::cyclic(2);
        let problem = EmbeddingProblem::new(
            MonoidHom::identity(c2.monoid()),
            prepare_base(&c2_gg()).unwrap(),
        )
        .unwrap();
        let sol = solve_embedding(&problem, None, None, DEFAULT_CAP).unwrap();
        assert_eq!((sol.params.nu, sol.params.ell), (1, 1));
        assert_eq!(sol.g_e.order(), 2);
        assert!(verify_embedding(&sol, 1000, 1).all_passed());
    }

    #[test]
    fn problem_validation() {
        let base = prepare_base(&c2_gg()).unwrap();
        let c3 = FiniteGroup::cyclic(3);
        assert!(matches!(
            EmbeddingProblem::new(MonoidHom::identity(c3.monoid()), base.clone()),
            Err(Error::KMismatch {
                alpha_codomain: 3,
                base: 2
            })
        ));
        let c2 = FiniteGroup::cyclic(2);
        let trivial_map =
            MonoidHom::new(c2.monoid().clone(), c2.monoid().clone(), vec![0, 0]).unwrap();
        assert!(matches!(
            EmbeddingProblem::new(trivial_map, base.clone()),
            Err(Error::NonSurjectiveAlpha)
        ));
        let problem = EmbeddingProblem::new(c4_onto_c2(), base).unwrap();
        assert!(matches!(
            embedding_parameters(&problem, Some(4), None),
            Err(Error::PrimeBoundViolated(_))
        ));
        assert!(matches!(
            embedding_parameters(&problem, Some(3), None),
            Err(Error::PrimeBoundViolated(_))
        ));
        assert_eq!(embedding_parameters(&problem, Some(7), None).unwrap().p, 7);
        assert!(matches!(
            embedding_parameters(&problem, None, Some(&[2, 3])),
            Err(Error::PrimeBoundViolated(_))
        ));
        assert_eq!(
            embedding_parameters(&problem, None, Some(&[3, 11, 7]))
                .unwrap()
                .p,
            7
        );
    }

    #[test]
    fn corrupted_block_is_detected() {
        let problem = EmbeddingProblem::new(c4_onto_c2(), prepare_base(&c2_gg()).unwrap()).unwrap();
        let params = embedding_parameters(&problem, None, None).unwrap();
        let mut gens = embedding_generators(&problem, &params);
        let h = &problem.h;
        let shift = params.section.apply(1);
        let block = gens[1]
            .entry(0)
            .map_entries(|&v| h.mul(shift, v as usize) as u32);
        gens[1] = gens[1].with_entry(0, block);
        let sol = assemble_solution(&problem, params, gens, DEFAULT_CAP).unwrap();
        let report = verify_embedding(&sol, 1000, 7);
        let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        assert!(
            failed.contains(&"block_entries_lift") || failed.contains(&"word_preimages_present"),
            "{report}"
        );
        assert!(report.failures().all(|c| c.witness.is_some()));
    }

    #[test]
    fn cover_base_shape() {
        let c = crate::constructions::build_idempotent_cover(
            &group_by_name("C2").unwrap(),
            3,
            &Default::default(),
        )
        .unwrap();
        let base = prepare_base(&c.full.unwrap().monoid).unwrap();
        assert_eq!(base.k().order(), 2);
        assert_eq!(base.b(), 3);
        assert_eq!(base.m_f.constant_column(), Some(0));
        assert!(base.m_f.entries().iter().all(|&k| k == 0));
        assert_eq!(base.monoid.len(), base.original.len());
    }
}
