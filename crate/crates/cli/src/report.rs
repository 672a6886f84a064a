//! `run_case` and the analysis report.

use std::fmt::Write as _;

use heckendo::endosolve::{
    diagonal_congruence, endomorphism_space, idempotent_oracle, param_name, CongruenceReport, OracleReport,
};
use heckendo::localized::{
    cleared_system, convolution_idempotent_system, invariance_constraints, perm_module_endos, TorsionProducts,
};
use heckendo::polyring::{CharacterLattice, CoefficientRing};
use heckendo::rootsys::{format_poincare, CosetSystem, RootSystem};
use heckendo::{Error, Result};
use serde::Serialize;

use crate::config::{CaseConfig, ConfigEcho};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct RepInfo {
    pub name: String,
    pub word: String,
    pub length: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeInfo {
    pub from: String,
    pub to: String,
    pub generator: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetSummary {
    pub root_system: String,
    pub size: usize,
    pub max_length: usize,
    pub poincare: String,
    pub reps: Vec<RepInfo>,
    pub hasse_edges: Vec<EdgeInfo>,
    pub double_cosets: Vec<Vec<String>>,
}

impl CosetSummary {
    pub fn new(cs: &CosetSystem) -> Self {
        let n = cs.len();
        CosetSummary {
            root_system: cs.root_system().name(),
            size: n,
            max_length: cs.max_length(),
            poincare: format_poincare(&cs.poincare(&(0..n).collect::<Vec<_>>())),
            reps: (0..n)
                .map(|k| RepInfo {
                    name: cs.rep_name(k),
                    word: RootSystem::compact_word(cs.word(k)),
                    length: cs.length(k),
                })
                .collect(),
            hasse_edges: cs
                .hasse_edges()
                .iter()
                .map(|e| EdgeInfo {
                    from: cs.rep_name(e.from),
                    to: cs.rep_name(e.to),
                    generator: e.generator + 1,
                })
                .collect(),
            double_cosets: cs
                .double_cosets()
                .iter()
                .map(|d| d.members.iter().map(|&k| cs.rep_name(k)).collect())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EndoSummary {
    pub coefficient: String,
    pub dim: usize,
    /// First column entries not forced by the others.
    pub generators: Vec<String>,
    pub raw_unknowns: usize,
    pub constraints: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OracleOutcome {
    Completed(OracleReport),
    Refused { message: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizedSummary {
    pub x_pi: String,
    pub x_p: String,
    pub x_pi_over_p: String,
    pub coefficients: Vec<String>,
    pub idempotent_equations: Vec<String>,
    pub cleared_equations: Vec<String>,
    pub divisibility: Vec<String>,
    pub invariant_unknowns: Vec<String>,
    pub permutation_endomorphisms: usize,
}

impl LocalizedSummary {
    pub fn new(cs: &CosetSystem, lat: &CharacterLattice) -> Result<Self> {
        let z = CoefficientRing::Integers;
        let t = TorsionProducts::new(cs, lat, z);
        let inv = invariance_constraints(cs);
        let plain = convolution_idempotent_system(cs, lat);
        let cleared = cleared_system(cs, lat);
        let rs = cs.root_system();
        let lines = |s: &heckendo::localized::PolynomialEquationSystem| -> Vec<String> {
            (0..s.identities.len())
                .map(|i| {
                    let id = &s.identities[i];
                    let tag = if id.implied { " [implied]" } else { "" };
                    format!("[{}] {}{}", id.class, s.identity_line(i, lat), tag)
                })
                .collect()
        };
        let coefficients = inv
            .entries
            .iter()
            .enumerate()
            .map(|(w, f)| {
                let name = &inv.unknowns[f.unknown];
                let value = if f.word.is_empty() {
                    name.clone()
                } else {
                    format!("{}({})", RootSystem::format_word(&f.word), name)
                };
                format!("a[{}] = {}", cs.rep_name(w), value)
            })
            .collect();
        Ok(LocalizedSummary {
            x_pi: lat.format(&t.x_pi),
            x_p: lat.format(&t.x_p),
            x_pi_over_p: lat.format(&t.x_pi_over_p),
            coefficients,
            idempotent_equations: lines(&plain),
            cleared_equations: lines(&cleared),
            divisibility: cleared
                .divisibility
                .iter()
                .map(|d| cleared.divisibility_line(d, rs, lat))
                .collect(),
            invariant_unknowns: cleared.invariant_unknowns.clone(),
            permutation_endomorphisms: perm_module_endos(cs, lat, z)?.len(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: ConfigEcho,
    pub cosets: CosetSummary,
    pub endomorphisms: Option<EndoSummary>,
    pub congruence: Option<CongruenceReport>,
    pub oracle: Option<OracleOutcome>,
    pub localized: Option<LocalizedSummary>,
    pub warnings: Vec<String>,
    /// Invariant violations and refusals; any entry means a nonzero exit.
    pub errors: Vec<String>,
}

impl AnalysisReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "{}{} P=<{}> lattice {} over {}",
            c.type_label,
            c.rank,
            c.parabolic.iter().map(|n| format!("s{n}")).collect::<Vec<_>>().join(","),
            c.lattice,
            c.coefficient
        );
        let _ = writeln!(
            out,
            "W^P: {} elements, Poincare polynomial {}",
            self.cosets.size, self.cosets.poincare
        );
        if let Some(e) = &self.endomorphisms {
            let _ = writeln!(
                out,
                "endomorphisms: dimension {} over {} (generators {})",
                e.dim,
                e.coefficient,
                e.generators.join(", ")
            );
        }
        if let Some(r) = &self.congruence {
            let _ = writeln!(out, "verdict: {} (method {}, algebra dimension {})", r.verdict, r.method, r.algebra_dim);
            for (k, cl) in r.classes.iter().enumerate() {
                let _ = writeln!(out, "  class {}: {{{}}}  {}", k + 1, cl.members.join(", "), cl.poincare);
            }
            for s in &r.summands {
                let _ = writeln!(out, "  summand: {}", s.poincare);
            }
            let _ = writeln!(out, "  edge witnesses:");
            for e in &r.edges {
                let mark = if e.vanishes { "merged" } else { "open" };
                let _ = writeln!(out, "    {} -> {} [{}] {}: {}", e.from, e.to, e.generator, mark, e.difference);
                for t in &e.terms {
                    for line in &t.chain {
                        let _ = writeln!(out, "      {line}");
                    }
                }
            }
            for line in &r.off_diagonal {
                let _ = writeln!(out, "  off-diagonal: {line}");
            }
        }
        match &self.oracle {
            Some(OracleOutcome::Completed(o)) => {
                let _ = writeln!(
                    out,
                    "oracle: {} idempotents among {} parameter vectors, {} nontrivial",
                    o.idempotent_count, o.searched, o.nontrivial_count
                );
            }
            Some(OracleOutcome::Refused { message }) => {
                let _ = writeln!(out, "oracle: {message}");
            }
            None => {}
        }
        if let Some(l) = &self.localized {
            let _ = writeln!(out, "x_Pi = {}\nx_P = {}\nx_Pi/P = {}", l.x_pi, l.x_p, l.x_pi_over_p);
            for line in l.idempotent_equations.iter().chain(&l.cleared_equations).chain(&l.divisibility) {
                let _ = writeln!(out, "{line}");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        for e in &self.errors {
            let _ = writeln!(out, "error: {e}");
        }
        out
    }
}

/// Runs the configured analyses. Configuration errors are returned; failures
/// inside the analyses are recorded in the report.
pub fn run_case(config: &CaseConfig) -> Result<AnalysisReport> {
    let (cs, lat) = config.build()?;
    let mut warnings = Vec::new();
    let mut errors = Vec::new();
    if !config.type_label.is_simply_laced() {
        warnings.push(format!(
            "type {} is not simply laced; the results are computed but have not been validated against known cases",
            config.type_label
        ));
    }
    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        config: config.echo(),
        cosets: CosetSummary::new(&cs),
        endomorphisms: None,
        congruence: None,
        oracle: None,
        localized: None,
        warnings: Vec::new(),
        errors: Vec::new(),
    };

    match endomorphism_space(&cs, &lat, config.ring) {
        Ok(space) => {
            let fc = &space.first_column;
            report.endomorphisms = Some(EndoSummary {
                coefficient: config.ring.to_string(),
                dim: space.dim(),
                generators: fc.generators.iter().map(|&g| param_name(&cs, g)).collect(),
                raw_unknowns: fc.raw_unknowns,
                constraints: fc.num_constraints,
            });
            if config.congruence {
                if config.prime().is_some() {
                    match diagonal_congruence(&cs, &lat, &space) {
                        Ok(r) => report.congruence = Some(r),
                        Err(e) => errors.push(e.to_string()),
                    }
                } else {
                    warnings.push("diagonal congruences need a prime; skipped over Z".into());
                }
            }
            if config.oracle {
                match idempotent_oracle(&cs, &lat, &space, config.oracle_cap) {
                    Ok(o) => report.oracle = Some(OracleOutcome::Completed(o)),
                    Err(e @ Error::OracleCap { .. }) => {
                        errors.push(e.to_string());
                        report.oracle = Some(OracleOutcome::Refused { message: e.to_string() });
                    }
                    Err(e) => errors.push(e.to_string()),
                }
            }
        }
        Err(e) => errors.push(e.to_string()),
    }
    if config.localized {
        match LocalizedSummary::new(&cs, &lat) {
            Ok(l) => report.localized = Some(l),
            Err(e) => errors.push(e.to_string()),
        }
    }
    report.warnings = warnings;
    report.errors = errors;
    Ok(report)
}
