//! The subcommands. Each returns a human-readable summary and the report
//! whose trailer ends the output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use semikernel::constructions::min_modulus;
use semikernel::green::{is_simple, minimal_ideal_of, rees_coordinates};
use semikernel::wreath::is_faithful_on_min_ideal;
use semikernel::{
    build_idempotent_cover, green_structure, identify, oracle, prepare_base, selftest,
    solve_embedding, srank, verify_cover, verify_embedding, Check, ConstructionReport, CoverMode,
    CoverOptions, CoverResult, EmbeddingProblem, FiniteGroup, Outcome, RowMonomialMatrix,
};

use crate::definition::{DefinitionError, Definitions, Structure};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Definition(#[from] DefinitionError),
    #[error("{0}")]
    Library(#[from] semikernel::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 3 when a closure or size bound was hit, 1 for an internal
    /// inconsistency, 2 for every other input problem.
    pub fn exit_code(&self) -> u8 {
        let library = match self {
            CliError::Library(e) => Some(e),
            CliError::Definition(e) => e.library_error(),
            _ => None,
        };
        match library {
            Some(
                semikernel::Error::CapExceeded { .. } | semikernel::Error::SizeExceeded { .. },
            ) => 3,
            Some(semikernel::Error::InternalInconsistency(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Options {
    pub cap: usize,
    pub prime: Option<usize>,
    pub mode: Option<CoverMode>,
    pub sample: usize,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

pub struct Output {
    pub summary: String,
    pub report: ConstructionReport,
}

impl Output {
    /// Summary, check lines, then the `---` trailer.
    pub fn render(&self) -> String {
        let mut out = self.summary.clone();
        for c in &self.report.checks {
            let tag = match c.outcome {
                Outcome::Pass => "pass",
                Outcome::Fail => "FAIL",
                Outcome::Skipped => "skip",
            };
            let _ = write!(out, "  {tag} {}", c.name);
            if let Some(w) = &c.witness {
                let _ = write!(out, ": {w}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.report.count(Outcome::Pass),
            self.report.count(Outcome::Fail),
            self.report.count(Outcome::Skipped)
        );
        out.push_str("---\n");
        out.push_str(&self.report.trailer());
        out
    }

    pub fn exit_code(&self) -> u8 {
        match self.report.worst() {
            Outcome::Fail => 1,
            _ => 0,
        }
    }
}

pub fn load(path: &Path, cap: usize) -> CliResult<Definitions> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(Definitions::parse(&text, cap)?)
}

fn load_or_library(path: Option<&Path>, cap: usize) -> CliResult<Definitions> {
    path.map_or_else(|| Ok(Definitions::default()), |p| load(p, cap))
}

fn named_group(defs: &Definitions, name: &str) -> CliResult<FiniteGroup> {
    let s = defs.structure(name, 0)?;
    Ok(s.group()?)
}

fn group_name(g: &FiniteGroup) -> String {
    identify(g).map_or_else(|| format!("order {}", g.order()), str::to_string)
}

fn labels(s: &Structure, xs: &[usize]) -> String {
    xs.iter()
        .map(|&x| s.label_of(x).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn analyze(path: &Path, name: &str, opts: &Options) -> CliResult<Output> {
    let defs = load(path, opts.cap)?;
    let s = defs.structure(name, 0)?;
    let m = &s.monoid;
    let green = green_structure(m);
    let ideal = minimal_ideal_of(m, &green)?;
    let rees = rees_coordinates(m, &green, &ideal, ideal.idempotents[0])?;
    let faithful = is_faithful_on_min_ideal(m)?;
    let subgroup = group_name(&rees.group);

    let mut report = ConstructionReport::new("analyze");
    report
        .param("object", name)
        .param("kind", if s.is_group { "group" } else { "monoid" })
        .param("elements", m.len())
        .param("generators", labels(&s, m.generators()))
        .param("idempotents", m.idempotents().len())
        .param("r_classes", green.r.len())
        .param("l_classes", green.l.len())
        .param("h_classes", green.h.len())
        .param("j_classes", green.j.len())
        .param("minimal_ideal_size", ideal.len())
        .param("rees_rows", rees.a_index.len())
        .param("rees_cols", rees.b_index.len())
        .param("maximal_subgroup_order", rees.group.order())
        .param("maximal_subgroup", &subgroup)
        .param("faithful", faithful.faithful);
    if ideal.len() <= 16 {
        report.param("minimal_ideal", labels(&s, &ideal.elements));
    }
    if let Some((x, y)) = faithful.witness {
        report.param(
            "faithful_witness",
            format!("{} {}", s.label_of(x), s.label_of(y)),
        );
    }
    report.push(Check::from_result(
        "rees_coordinates",
        rees.verify(m, &ideal)
            .map_err(|(x, y)| format!("product of labels {} and {}", s.label_of(x), s.label_of(y))),
    ));
    report.push(Check::from_result(
        "minimal_ideal_simple",
        if is_simple(m, &ideal.elements)? {
            Ok(())
        } else {
            Err("minimal ideal is not simple".into())
        },
    ));
    let expected = rees.a_index.len() * rees.b_index.len() * rees.group.order();
    report.push(Check::from_result(
        "minimal_ideal_is_rectangular",
        if expected == ideal.len() {
            Ok(())
        } else {
            Err(format!(
                "{} rows x {} cols x |G| = {expected}",
                rees.a_index.len(),
                rees.b_index.len()
            ))
        },
    ));
    if s.is_group {
        report.push(Check::from_result(
            "group_axioms",
            s.group().map(|_| ()).map_err(|e| e.to_string()),
        ));
    }

    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "{name}: {} with {} elements",
        if s.is_group { "group" } else { "monoid" },
        m.len()
    );
    let _ = writeln!(
        summary,
        "green classes: {} R, {} L, {} H, {} J; {} idempotents",
        green.r.len(),
        green.l.len(),
        green.h.len(),
        green.j.len(),
        m.idempotents().len()
    );
    let _ = writeln!(
        summary,
        "minimal ideal: {} elements, {} x {} Rees matrix over {subgroup}",
        ideal.len(),
        rees.a_index.len(),
        rees.b_index.len()
    );
    let _ = writeln!(
        summary,
        "schutzenberger representation: {}",
        if faithful.faithful {
            "faithful"
        } else {
            "not faithful"
        }
    );
    Ok(Output { summary, report })
}

pub fn cover(
    group: &str,
    n: Option<usize>,
    file: Option<&Path>,
    opts: &Options,
) -> CliResult<Output> {
    let defs = load_or_library(file, opts.cap)?;
    let h = named_group(&defs, group)?;
    let n = n.unwrap_or_else(|| min_modulus(h.order()));
    let options = CoverOptions {
        mode: opts.mode,
        cap: opts.cap,
        allowed_moduli: None,
    };
    let c = build_idempotent_cover(&h, n, &options)?;
    let mut report = verify_cover(&c, c.mode);
    report.param("group", group);

    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "idempotent cover of {group} ({}) with n = {n} in {} mode",
        group_name(&h),
        c.mode.as_str()
    );
    if let Some(full) = &c.full {
        let _ = writeln!(
            summary,
            "monoid: {} elements, minimal ideal {}, maximal subgroup {}",
            full.monoid.len(),
            full.ideal.len(),
            group_name(&full.g_y)
        );
    }
    if let Some(path) = &opts.out {
        std::fs::write(path, render_cover(&c, group)).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?;
        let _ = writeln!(summary, "wrote {}", path.display());
    }
    Ok(Output { summary, report })
}

/// The cover generators as a definition file. Labels of `H` are its
/// element indices plus one.
pub fn render_cover(c: &CoverResult, group: &str) -> String {
    let h = &c.group;
    let rows: Vec<String> = (0..h.order())
        .map(|a| {
            (0..h.order())
                .map(|b| (h.mul(a, b) + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    let matrix = |x: &RowMonomialMatrix| {
        let cells: Vec<String> = x
            .rows()
            .map(|(col, &e)| format!("{}:{}", col + 1, e + 1))
            .collect();
        format!("[{}]", cells.join(" "))
    };
    format!(
        "# idempotent cover of {group} with n = {}\n\
         group H table {}: {}\n\
         monoid cover rowmono {} over H: {}, {}\n",
        c.n,
        h.order(),
        rows.join("; "),
        c.n,
        matrix(&c.x),
        matrix(&c.y)
    )
}

pub fn embed(path: &Path, names: &[String], opts: &Options) -> CliResult<Output> {
    let defs = load(path, opts.cap)?;
    let (base_name, alpha_name) = match names {
        [problem] => {
            let p = defs.problem(problem, 0)?;
            (p.base, p.alpha)
        }
        [base, alpha] => (base.clone(), alpha.clone()),
        _ => return Err(CliError::Usage("expected PROBLEM or BASE ALPHA".into())),
    };
    let base = defs.structure(&base_name, 0)?;
    let alpha = defs.hom(&alpha_name, 0)?;
    let problem = EmbeddingProblem::new(alpha, prepare_base(&base.monoid)?)?;
    let sol = solve_embedding(&problem, opts.prime, None, opts.cap)?;
    let mut report = verify_embedding(&sol, opts.sample, opts.seed);
    report.param("base", &base_name).param("alpha", &alpha_name);

    let p = &sol.params;
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "embedding problem: base {base_name}, alpha {alpha_name}: {} -> {}",
        group_name(&problem.h),
        group_name(&problem.k)
    );
    let _ = writeln!(
        summary,
        "prepared base: {} elements, K = {}, b = {}",
        problem.base.monoid.len(),
        group_name(problem.base.k()),
        problem.base.b()
    );
    let _ = writeln!(
        summary,
        "p = {}, nu = {}, ell = {}, m = {}, r = {}",
        p.p, p.nu, p.ell, p.m, p.r
    );
    let _ = writeln!(
        summary,
        "solution: {} elements, minimal ideal {}, G_e' = {}",
        sol.monoid.len(),
        sol.ideal.len(),
        group_name(&sol.g_e)
    );
    Ok(Output { summary, report })
}

/// Groups above this order skip the brute-force cross-check.
const ORACLE_LIMIT: usize = 48;

pub fn s_rank(group: &str, simple: &str, file: Option<&Path>, opts: &Options) -> CliResult<Output> {
    let defs = load_or_library(file, opts.cap)?;
    let g = named_group(&defs, group)?;
    let s = named_group(&defs, simple)?;
    let result = srank::s_rank(&g, &s)?;

    let mut report = ConstructionReport::new("srank");
    report
        .param("group", group)
        .param("simple", simple)
        .param("group_order", g.order())
        .param("simple_order", s.order())
        .param("m_s_order", result.m_s.len())
        .param("rank", result.rank);
    report.push(Check::from_result(
        "m_s_normal",
        if srank::is_normal(&g, &result.m_s) {
            Ok(())
        } else {
            Err("M_S(G) is not normal".into())
        },
    ));
    if g.order() <= ORACLE_LIMIT {
        let expected = oracle::s_rank(&g, &s);
        report.push(Check::from_result(
            "rank_matches_brute_force",
            if expected == result.rank {
                Ok(())
            } else {
                Err(format!("brute force gives {expected}"))
            },
        ));
    } else {
        report.push(Check::skipped(
            "rank_matches_brute_force",
            format!("|G| > {ORACLE_LIMIT}"),
        ));
    }

    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "r_{simple}({group}) = {}, |M_S(G)| = {}",
        result.rank,
        result.m_s.len()
    );
    Ok(Output { summary, report })
}

pub fn self_test() -> Output {
    let t = selftest::selftest();
    let mut summary = String::new();
    for c in &t.criteria {
        let _ = writeln!(summary, "{}", c.summary());
    }
    Output {
        summary,
        report: t.report(),
    }
}
