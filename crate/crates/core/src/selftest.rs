//! The acceptance suite: ten criteria, each a list of checks.
//!
//! Every criterion is deterministic; criterion 10 runs criteria 1 to 9 a
//! second time and compares the machine-readable trailers byte for byte.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    assemble_solution, build_idempotent_cover, embedding_generators, embedding_parameters,
    prepare_base, solve_embedding, verify_cover, verify_embedding, CoverMode, CoverOptions,
    CoverResult, EmbeddingProblem, EmbeddingSolution,
};
use crate::element::Transformation;
use crate::error::{Error, Result};
use crate::green::{
    check_min_ideal_image, green_structure, idempotent_generated, is_simple, minimal_ideal_of,
};
use crate::group::{group_by_name, is_isomorphic, FiniteGroup};
use crate::hom::{hom_from_images, MonoidHom};
use crate::monoid::{FiniteMonoid, DEFAULT_CAP};
use crate::oracle;
use crate::report::{Check, ConstructionReport};
use crate::srank::{check_rank_monotone, normal_subgroups, quotient, r_s};
use crate::wreath::{constant_wreath, psi, rlm, ConstantWreath};

pub const SELFTEST_SEED: u64 = 0x5e1f_7e57;
pub const RANDOM_MONOIDS: usize = 200;
pub const RANDOM_MONOID_CAP: usize = 100;

#[derive(Clone, Debug)]
pub struct Criterion {
    pub number: usize,
    pub name: &'static str,
    pub checks: Vec<Check>,
    /// Sizes and parameters, as `key=value` pairs.
    pub params: Vec<(String, String)>,
}

impl Criterion {
    fn new(number: usize, name: &'static str) -> Self {
        Self {
            number,
            name,
            checks: Vec::new(),
            params: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, result: std::result::Result<(), String>) {
        self.checks.push(Check::from_result(name, result));
    }

    fn param(&mut self, key: impl Into<String>, value: impl std::fmt::Display) {
        self.params.push((key.into(), value.to_string()));
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// One line: number, name, verdict, check counts and the first failure.
    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed()).count();
        let mut line = format!(
            "criterion {:>2} {:<24} {} ({}/{} checks)",
            self.number,
            self.name,
            if self.passed() { "pass" } else { "FAIL" },
            ok,
            self.checks.len()
        );
        if let Some(bad) = self.checks.iter().find(|c| !c.passed()) {
            line.push_str(&format!(
                ": {} {}",
                bad.name,
                bad.witness.as_deref().unwrap_or("")
            ));
        }
        line
    }
}

#[derive(Clone, Debug)]
pub struct SelfTest {
    pub criteria: Vec<Criterion>,
}

impl SelfTest {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(Criterion::passed)
    }

    pub fn report(&self) -> ConstructionReport {
        let mut report = ConstructionReport::new("selftest");
        for c in &self.criteria {
            for (k, v) in &c.params {
                report.param(format!("c{}.{k}", c.number), v);
            }
        }
        for c in &self.criteria {
            let summary = if c.passed() {
                Check::pass(format!("criterion{}.{}", c.number, c.name))
            } else {
                Check::fail(format!("criterion{}.{}", c.number, c.name), c.summary())
            };
            report.push(summary);
            report.extend(c.checks.iter().map(|check| Check {
                name: format!("c{}.{}", c.number, check.name),
                ..check.clone()
            }));
        }
        report
    }
}

fn err_string(e: Error) -> String {
    e.to_string()
}

fn group(name: &str) -> FiniteGroup {
    group_by_name(name).expect("library group")
}

fn ok_if(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

/// `ψ` is a bijective homomorphism `eSe -> G` at every idempotent.
fn psi_is_iso(cw: &ConstantWreath) -> std::result::Result<(), String> {
    let m = &cw.monoid;
    let g = &cw.group;
    for &e in cw.simple.iter().filter(|&&e| m.is_idempotent(e)) {
        let mut local: Vec<usize> = cw.simple.iter().map(|&s| m.mul(m.mul(e, s), e)).collect();
        local.sort_unstable();
        local.dedup();
        let values: Vec<usize> = local
            .iter()
            .map(|&s| psi(cw, e, s))
            .collect::<Result<_>>()
            .map_err(err_string)?;
        let mut image = values.clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != local.len() || image.len() != g.order() {
            return Err(format!("psi at {} is not a bijection onto G", m.element(e)));
        }
        if psi(cw, e, e).map_err(err_string)? != 0 {
            return Err(format!("psi({}) is not 1", m.element(e)));
        }
        for (i, &s) in local.iter().enumerate() {
            for (j, &t) in local.iter().enumerate() {
                let st = local
                    .binary_search(&m.mul(s, t))
                    .map_err(|_| "eSe not closed".to_string())?;
                if values[st] != g.mul(values[i], values[j]) {
                    return Err(format!(
                        "psi not multiplicative at {} * {}",
                        m.element(s),
                        m.element(t)
                    ));
                }
            }
        }
    }
    Ok(())
}

pub const WREATH_GROUPS: [&str; 6] = ["1", "C2", "C3", "C4", "C2xC2", "S3"];
pub const COVER_GROUPS: [&str; 5] = ["1", "C2", "C3", "C4", "C2xC2"];

fn criterion1(wreaths: &mut Vec<ConstantWreath>) -> Criterion {
    let mut c = Criterion::new(1, "psi_isomorphism");
    for name in WREATH_GROUPS {
        let g = group(name);
        for b in 1..=3 {
            let label = format!("{name}.b{b}");
            match constant_wreath(&g, b, DEFAULT_CAP) {
                Ok(cw) => {
                    c.check(label.clone(), psi_is_iso(&cw));
                    c.check(
                        format!("{label}.size"),
                        ok_if(cw.simple.len() == g.order().pow(b as u32) * b, || {
                            format!("simple part has {} elements", cw.simple.len())
                        }),
                    );
                    wreaths.push(cw);
                }
                Err(e) => c.check(label, Err(e.to_string())),
            }
        }
    }
    c
}

/// The cover with the least admissible modulus.
pub fn least_cover(name: &str, mode: Option<CoverMode>) -> Result<CoverResult> {
    let h = group(name);
    let n = crate::constructions::min_modulus(h.order());
    build_idempotent_cover(
        &h,
        n,
        &CoverOptions {
            mode,
            ..CoverOptions::default()
        },
    )
}

fn criterion2(covers: &mut Vec<(String, CoverResult)>) -> Criterion {
    let mut c = Criterion::new(2, "cover_full_mode");
    for name in COVER_GROUPS {
        match least_cover(name, Some(CoverMode::Full)) {
            Ok(cover) => {
                let report = verify_cover(&cover, CoverMode::Full);
                c.param(format!("{name}.n"), cover.n);
                for key in ["monoid_size", "ideal_size"] {
                    c.param(
                        format!("{name}.{key}"),
                        report.param_value(key).unwrap_or("-"),
                    );
                }
                for check in [
                    "maximal_subgroup_is_h",
                    "idempotents_generate_ideal",
                    "witness_theta",
                    "ideal_is_constant_part",
                    "theta_isomorphism",
                    "idempotent_products_exhaust_h",
                ] {
                    let found = report
                        .get(check)
                        .cloned()
                        .unwrap_or_else(|| Check::fail(check, "not run"));
                    c.checks.push(Check {
                        name: format!("{name}.{check}"),
                        ..found
                    });
                }
                covers.push((name.to_string(), cover));
            }
            Err(e) => c.check(name, Err(e.to_string())),
        }
    }
    c
}

fn criterion3() -> Criterion {
    let mut c = Criterion::new(3, "cover_cheap_mode");
    match build_idempotent_cover(&group("S3"), 11, &CoverOptions::default()) {
        Ok(cover) => {
            c.check(
                "mode_is_cheap",
                ok_if(cover.mode == CoverMode::Cheap, || "full mode chosen".into()),
            );
            let report = verify_cover(&cover, CoverMode::Cheap);
            for check in [
                "witness_factors_idempotent",
                "witness_theta",
                "witnesses_generate_h",
            ] {
                c.checks.push(
                    report
                        .get(check)
                        .cloned()
                        .unwrap_or_else(|| Check::fail(check, "not run")),
                );
            }
        }
        Err(e) => c.check("build", Err(e.to_string())),
    }
    c
}

/// The three exhaustive embedding problems, by label.
pub fn example_problem(label: &str) -> Result<EmbeddingProblem> {
    let c2 = group("C2");
    match label {
        "E1" => {
            let zero_one = FiniteMonoid::from_table(2, vec![0, 1, 1, 1])?;
            let base = prepare_base(&Arc::new(zero_one.generated_by(&[0, 1])?))?;
            let alpha = hom_from_images(c2.monoid(), FiniteGroup::trivial().monoid(), &[0])?;
            EmbeddingProblem::new(alpha, base)
        }
        "E2" => {
            let base = prepare_base(&Arc::new(c2.generated_by(&[1, 1])?))?;
            let c4 = group("C4");
            let alpha = hom_from_images(c4.monoid(), c2.monoid(), &[1])?;
            EmbeddingProblem::new(alpha, base)
        }
        "E3" => {
            let base = prepare_base(&Arc::new(c2.generated_by(&[1, 1])?))?;
            EmbeddingProblem::new(MonoidHom::identity(c2.monoid()), base)
        }
        _ => Err(Error::InvalidInput(format!("unknown example {label}"))),
    }
}

const EXHAUSTIVE_SAMPLE: usize = 1_000_000;

fn criterion4(solutions: &mut Vec<(String, EmbeddingSolution)>) -> Criterion {
    let mut c = Criterion::new(4, "embedding_exhaustive");
    for (label, expected) in [("E1", "C2"), ("E2", "C4"), ("E3", "C2")] {
        let solved =
            example_problem(label).and_then(|p| solve_embedding(&p, None, None, DEFAULT_CAP));
        let sol = match solved {
            Ok(sol) => sol,
            Err(e) => {
                c.check(label, Err(e.to_string()));
                continue;
            }
        };
        let report = verify_embedding(&sol, EXHAUSTIVE_SAMPLE, SELFTEST_SEED);
        for key in ["p", "nu", "ell", "m", "r", "monoid_size"] {
            c.param(
                format!("{label}.{key}"),
                report.param_value(key).unwrap_or("-"),
            );
        }
        c.check(
            format!("{label}.exhaustive"),
            ok_if(
                report.param_value("element_checks") == Some("exhaustive"),
                || "sampled".into(),
            ),
        );
        let want = group(expected);
        c.check(
            format!("{label}.g_e_is_{expected}"),
            match is_isomorphic(&sol.g_e, &want) {
                Ok(Some(_)) => Ok(()),
                Ok(None) => Err(format!("G_e' has order {}", sol.g_e.order())),
                Err(e) => Err(e.to_string()),
            },
        );
        for check in &report.checks {
            c.checks.push(Check {
                name: format!("{label}.{}", check.name),
                ..check.clone()
            });
        }
        solutions.push((label.to_string(), sol));
    }
    c
}

/// `E2` with the first block of `x̃_2` multiplied by a lift of the
/// non-trivial element of `K`.
pub fn corrupted_e2() -> Result<EmbeddingSolution> {
    let problem = example_problem("E2")?;
    let params = embedding_parameters(&problem, None, None)?;
    let mut gens = embedding_generators(&problem, &params);
    let h = &problem.h;
    let shift = params.section.apply(1);
    let block = gens[1]
        .entry(0)
        .map_entries(|&v| h.mul(shift, v as usize) as u32);
    gens[1] = gens[1].with_entry(0, block);
    assemble_solution(&problem, params, gens, DEFAULT_CAP)
}

fn criterion5() -> Criterion {
    let mut c = Criterion::new(5, "mutation_sensitivity");
    match corrupted_e2() {
        Ok(sol) => {
            let report = verify_embedding(&sol, EXHAUSTIVE_SAMPLE, SELFTEST_SEED);
            let failed: Vec<&Check> = report.failures().collect();
            c.param("failed_checks", failed.len());
            c.check(
                "some_check_fails",
                ok_if(!failed.is_empty(), || {
                    "corrupted solution passed every check".into()
                }),
            );
            c.check(
                "failures_have_witnesses",
                ok_if(failed.iter().all(|f| f.witness.is_some()), || {
                    "failure without witness".into()
                }),
            );
            c.check(
                "block_or_word_check_fails",
                ok_if(
                    failed.iter().any(|f| {
                        f.name == "block_entries_lift" || f.name == "word_preimages_present"
                    }),
                    || "neither block check failed".into(),
                ),
            );
        }
        Err(e) => c.check("assemble", Err(e.to_string())),
    }
    c
}

fn min_ideal_checks(c: &mut Criterion, label: &str, phi: &MonoidHom) {
    match check_min_ideal_image(phi) {
        Ok(checks) => c.checks.extend(checks.into_iter().map(|check| Check {
            name: format!("{label}.{}", check.name),
            ..check
        })),
        Err(e) => c.check(label, Err(e.to_string())),
    }
}

fn criterion6(
    solutions: &[(String, EmbeddingSolution)],
    covers: &[(String, CoverResult)],
) -> Criterion {
    let mut c = Criterion::new(6, "minimal_ideal_image");
    for (label, sol) in solutions {
        min_ideal_checks(&mut c, &format!("{label}.rho"), &sol.rho);
    }
    for (name, cover) in covers {
        let Some(full) = &cover.full else {
            c.check(format!("{name}.rlm"), Err("cover not enumerated".into()));
            continue;
        };
        match rlm(&full.monoid) {
            Ok(r) => {
                c.param(format!("{name}.rlm_size"), r.monoid.len());
                min_ideal_checks(&mut c, &format!("{name}.rlm"), &r.hom);
            }
            Err(e) => c.check(format!("{name}.rlm"), Err(e.to_string())),
        }
    }
    c
}

const ORACLE_SIMPLE_LIMIT: usize = 200;

fn graham(c: &mut Criterion, label: String, m: &FiniteMonoid, s: &[usize]) {
    let result = (|| {
        if !is_simple(m, s).map_err(err_string)? {
            return Err("semigroup is not simple".to_string());
        }
        let e = idempotent_generated(m, s).map_err(err_string)?;
        if !is_simple(m, &e).map_err(err_string)? {
            return Err(format!("<E(S)> with {} elements is not simple", e.len()));
        }
        if e.len() <= ORACLE_SIMPLE_LIMIT && !oracle::is_simple(m, &e) {
            return Err("naive check finds <E(S)> not simple".to_string());
        }
        Ok(())
    })();
    c.check(label, result);
}

fn criterion7(
    wreaths: &[ConstantWreath],
    covers: &[(String, CoverResult)],
    solutions: &[(String, EmbeddingSolution)],
) -> Criterion {
    let mut c = Criterion::new(7, "graham_property");
    for cw in wreaths {
        graham(
            &mut c,
            format!("wreath.{}.b{}", cw.group.order(), cw.points),
            &cw.monoid,
            &cw.simple,
        );
    }
    for (name, cover) in covers {
        if let Some(full) = &cover.full {
            graham(
                &mut c,
                format!("cover.{name}"),
                &full.monoid,
                &full.ideal.elements,
            );
        }
    }
    for (label, sol) in solutions {
        graham(
            &mut c,
            format!("{label}.m_prime"),
            &sol.monoid,
            &sol.ideal.elements,
        );
        let base = &sol.problem.base;
        graham(
            &mut c,
            format!("{label}.base"),
            &base.monoid,
            &base.ideal.elements,
        );
    }
    c
}

/// Groups of order at most 24.
pub const RANK_CORPUS: [&str; 24] = [
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
    "C3xC3",
    "C10",
    "D5",
    "C12",
    "C2xC6",
    "A4",
    "D6",
    "Dic3",
    "S4",
    "C2xC2xC2xC3",
];
pub const SIMPLE_CORPUS: [&str; 6] = ["C2", "C3", "C5", "C7", "C11", "A5"];

fn criterion8() -> Criterion {
    let mut c = Criterion::new(8, "s_rank");
    for s in ["C2", "C3"] {
        let sg = group(s);
        for n in 1..=3 {
            let result = sg
                .power(n)
                .and_then(|p| r_s(&p, &sg))
                .map_err(err_string)
                .and_then(|r| ok_if(r == n, || format!("rank {r}")));
            c.check(format!("power.{s}.{n}"), result);
        }
    }
    c.check(
        "C2_rank_of_C3",
        r_s(&group("C3"), &group("C2"))
            .map_err(err_string)
            .and_then(|r| ok_if(r == 0, || format!("rank {r}"))),
    );
    let mut compared = 0;
    let mut monotone = 0;
    for name in RANK_CORPUS {
        let g = group(name);
        for s in SIMPLE_CORPUS {
            let sg = group(s);
            if sg.order() > g.order() {
                continue;
            }
            compared += 1;
            let result = r_s(&g, &sg).map_err(err_string).and_then(|r| {
                let naive = oracle::s_rank(&g, &sg);
                ok_if(r == naive, || format!("fast {r}, naive {naive}"))
            });
            c.check(format!("oracle.{name}.{s}"), result);
        }
        let normals = match normal_subgroups(&g) {
            Ok(n) => n,
            Err(e) => {
                c.check(format!("normals.{name}"), Err(e.to_string()));
                continue;
            }
        };
        for (i, n) in normals.iter().enumerate() {
            let projection = match quotient(&g, n) {
                Ok((_, p)) => p,
                Err(e) => {
                    c.check(format!("monotone.{name}.{i}"), Err(e.to_string()));
                    continue;
                }
            };
            for s in ["C2", "C3"] {
                monotone += 1;
                let result = check_rank_monotone(&projection, &group(s))
                    .map_err(err_string)
                    .and_then(|ok| {
                        ok_if(ok, || {
                            format!("rank increases along G/N for |N| = {}", n.len())
                        })
                    });
                c.check(format!("monotone.{name}.{i}.{s}"), result);
            }
        }
    }
    c.param("oracle_comparisons", compared);
    c.param("monotone_checks", monotone);
    c
}

/// Random transformation monoids of degree at most 4 with at most 100
/// elements, drawn from a fixed seed.
pub fn random_monoids(count: usize, seed: u64) -> Vec<FiniteMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let degree = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Transformation> = (0..k)
            .map(|_| {
                Transformation::new(
                    (0..degree)
                        .map(|_| rng.gen_range(0..degree as u32))
                        .collect(),
                )
                .expect("in range")
            })
            .collect();
        if let Ok(m) = FiniteMonoid::transformations(degree, &gens, RANDOM_MONOID_CAP) {
            out.push(m);
        }
    }
    out
}

fn oracle_agreement(m: &FiniteMonoid) -> std::result::Result<(), String> {
    let fast = green_structure(m);
    let naive = oracle::green_classes(m);
    for (rel, a, b) in [
        ("R", &fast.r, &naive.r),
        ("L", &fast.l, &naive.l),
        ("J", &fast.j, &naive.j),
        ("H", &fast.h, &naive.h),
    ] {
        if a.classes() != b.classes() {
            return Err(format!("{rel}-classes differ"));
        }
    }
    let ideal = minimal_ideal_of(m, &fast).map_err(err_string)?;
    if ideal.elements != oracle::minimal_ideal(m) {
        return Err("minimal ideals differ".into());
    }
    if let Some(x) = (0..m.len()).find(|&x| Some(m.omega_power(x)) != oracle::omega_power(m, x)) {
        return Err(format!("omega power of {} differs", m.element(x)));
    }
    Ok(())
}

fn criterion9() -> Criterion {
    let mut c = Criterion::new(9, "oracle_equivalence");
    let monoids = random_monoids(RANDOM_MONOIDS, SELFTEST_SEED);
    c.param("monoids", monoids.len());
    c.param(
        "total_elements",
        monoids.iter().map(FiniteMonoid::len).sum::<usize>(),
    );
    let failures: Vec<String> = monoids
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            oracle_agreement(m)
                .err()
                .map(|e| format!("monoid {i}: {e}"))
        })
        .collect();
    c.param("disagreements", failures.len());
    c.check(
        "green_ideal_omega_agree",
        failures.first().cloned().map_or(Ok(()), Err),
    );
    c
}

/// Criteria 1 to 9.
pub fn run_criteria() -> Vec<Criterion> {
    let mut wreaths = Vec::new();
    let mut covers = Vec::new();
    let mut solutions = Vec::new();
    let c1 = criterion1(&mut wreaths);
    let c2 = criterion2(&mut covers);
    let c3 = criterion3();
    let c4 = criterion4(&mut solutions);
    let c5 = criterion5();
    let c6 = criterion6(&solutions, &covers);
    let c7 = criterion7(&wreaths, &covers, &solutions);
    let c8 = criterion8();
    let c9 = criterion9();
    vec![c1, c2, c3, c4, c5, c6, c7, c8, c9]
}

fn trailer_of(criteria: &[Criterion]) -> String {
    SelfTest {
        criteria: criteria.to_vec(),
    }
    .report()
    .trailer()
}

/// Runs criteria 1 to 9 twice; criterion 10 compares the two trailers.
pub fn selftest() -> SelfTest {
    let first = run_criteria();
    let second = run_criteria();
    let (a, b) = (trailer_of(&first), trailer_of(&second));
    let mut c = Criterion::new(10, "determinism");
    c.param("trailer_bytes", a.len());
    let diff = a
        .lines()
        .zip(b.lines())
        .position(|(x, y)| x != y)
        .map(|i| format!("trailers differ at line {}", i + 1));
    c.check(
        "identical_trailers",
        match diff {
            Some(d) => Err(d),
            None => ok_if(a == b, || "trailers differ in length".into()),
        },
    );
    let mut criteria = first;
    criteria.push(c);
    SelfTest { criteria }
}
