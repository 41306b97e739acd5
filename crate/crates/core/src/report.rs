//! Reports printed by the command-line tool, as JSON or as plain text.
//!
//! JSON output is one pretty-printed document whose key order follows the
//! struct declarations, so it is byte-stable for a fixed input. Every report
//! built from an input document echoes the unchecked finiteness assumption.

use std::fmt::{self, Write};

use serde::Serialize;

use crate::group::{FiniteAbelianGroup, IndexTuple};
use crate::hypotheses::{HypothesisReport, ReductionType};
use crate::ideal::CharIdeal;
use crate::lmfdb::{Classification, Fetched};
use crate::rank_data::GrowthSummary;
use crate::selmer::ValidationReport;
use crate::structure::EquivariantDecomposition;
use crate::verify::SuiteResult;

pub const SCHEMA_VERSION: u32 = 1;

/// The input's claim about the fine Shafarevich-Tate groups, which no
/// computation here can check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    pub fine_sha_finite_at_every_layer: bool,
    pub note: &'static str,
}

impl Assumptions {
    pub fn new(asserted: bool) -> Self {
        Self {
            fine_sha_finite_at_every_layer: asserted,
            note: if asserted {
                "asserted by the input, not verified; results are conditional on it"
            } else {
                "not asserted by the input; the structure results below presuppose it"
            },
        }
    }
}

/// A characteristic ideal in canonical and readable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealView {
    pub generator: String,
    pub canonical: String,
    pub lambda: u64,
    pub mu: u32,
}

impl From<&CharIdeal> for IdealView {
    fn from(c: &CharIdeal) -> Self {
        Self {
            generator: pretty_ideal(c),
            canonical: c.to_string(),
            lambda: c.lambda(),
            mu: c.mu(),
        }
    }
}

/// `1`, `x`, `x^2 * Phi(1)` and so on, dropping unit exponents.
pub fn pretty_ideal(c: &CharIdeal) -> String {
    let mut parts = Vec::new();
    if c.mu() > 0 {
        parts.push(power(c.p().to_string(), c.mu()));
    }
    for (&n, &e) in c.cyclotomic() {
        if e > 0 {
            parts.push(power(if n == 0 { "x".into() } else { format!("Phi({n})") }, e));
        }
    }
    for g in c.extra() {
        parts.push(power(format!("({})", g.poly), g.exponent));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" * ")
    }
}

fn power(base: String, e: u32) -> String {
    if e == 1 {
        base
    } else {
        format!("{base}^{e}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrepRow {
    pub tuple: IndexTuple,
    pub dimension: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepsReport {
    pub group: String,
    pub order: u64,
    pub irreps: Vec<IrrepRow>,
    pub dimension_sum: u64,
}

impl RepsReport {
    pub fn new(g: &FiniteAbelianGroup) -> Self {
        let irreps: Vec<IrrepRow> = g
            .irreps()
            .into_iter()
            .map(|d| IrrepRow {
                tuple: d.tuple,
                dimension: d.dimension,
            })
            .collect();
        Self {
            group: g.to_string(),
            order: g.order(),
            dimension_sum: irreps.iter().map(|r| r.dimension).sum(),
            irreps,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    #[serde(flatten)]
    pub hypotheses: HypothesisReport,
    pub fine_ok: bool,
    pub pm_ok: bool,
    pub failures: Vec<&'static str>,
    pub assumptions: Assumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EAlphaEntry {
    pub tuple: IndexTuple,
    pub level: usize,
    pub e: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FineReport {
    pub p: u64,
    pub group: String,
    pub e_alpha: Vec<EAlphaEntry>,
    pub growth: GrowthSummary,
    pub exponents: Vec<u64>,
    pub ideal: IdealView,
    pub assumptions: Assumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PmReport {
    pub p: u64,
    pub group: String,
    pub reduction: ReductionType,
    pub growth: GrowthSummary,
    pub r_plus: Vec<u64>,
    pub r_minus: Vec<u64>,
    pub char_plus: IdealView,
    pub char_minus: IdealView,
    pub gcd: IdealView,
    /// The gcd equals `x^{e_0} prod_{n>0} Phi_n^{e_n - theta_n}`.
    pub gcd_matches_closed_form: bool,
    pub assumptions: Assumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummandRow {
    pub tuple: IndexTuple,
    pub dimension: u64,
    pub level: usize,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivariantReport {
    pub p: u64,
    pub group: String,
    /// `fine`, `plus` or `minus`.
    pub kind: &'static str,
    pub summands: Vec<SummandRow>,
    /// Contraction `sum multiplicity * dim` per level.
    pub contraction: Vec<u64>,
    /// The matching exponents of the characteristic ideal.
    pub ideal_exponents: Vec<u64>,
    pub consistent: bool,
    pub assumptions: Assumptions,
}

impl EquivariantReport {
    pub fn summands(g: &FiniteAbelianGroup, d: &EquivariantDecomposition) -> Vec<SummandRow> {
        d.summands
            .iter()
            .map(|s| SummandRow {
                tuple: s.tuple.clone(),
                dimension: g.irrep_dim(&s.tuple).expect("tuple of g"),
                level: s.level,
                multiplicity: s.multiplicity,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TargetReport {
    pub p: u64,
    pub group: String,
    /// `greenberg` or `kp`.
    pub target: &'static str,
    pub e: Vec<u64>,
    pub target_ideal: IdealView,
    /// The ideal the structure results give for the same data.
    pub computed_ideal: IdealView,
    pub coincide: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selmer_gcd: Option<IdealView>,
    pub assumptions: Assumptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_order: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FetchReport {
    #[serde(flatten)]
    pub fetched: Fetched,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
}

/// A report that can also be written as text.
pub trait Render: Serialize {
    fn render(&self, out: &mut String) -> fmt::Result;

    fn to_text(&self) -> String {
        let mut s = String::new();
        self.render(&mut s).expect("writing to a String");
        s
    }

    fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(u64::to_string).collect();
    format!("[{}]", items.join(", "))
}

fn render_assumptions(a: &Assumptions, out: &mut String) -> fmt::Result {
    writeln!(
        out,
        "assumption: fine Sha finite at every layer ({})",
        a.note
    )
}

fn render_growth(g: &GrowthSummary, out: &mut String) -> fmt::Result {
    writeln!(out, "e     = {}", list(&g.e))?;
    writeln!(out, "theta = {}", list(&g.theta))?;
    writeln!(out, "s     = {}", list(&g.s))
}

impl Render for RepsReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "group {} of order {}", self.group, self.order)?;
        for r in &self.irreps {
            writeln!(out, "  W{}  dim {}", r.tuple, r.dimension)?;
        }
        writeln!(out, "sum of dimensions: {}", self.dimension_sum)
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

impl Render for CheckReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        let h = &self.hypotheses;
        writeln!(out, "p = {}, G = {}, conductor {}", h.p, h.group, h.conductor)?;
        let s = &h.star;
        writeln!(
            out,
            "(star): {} (m = {}, m' = {}, ord_m'(p) = {}, phi(m') = {})",
            verdict(s.passed),
            s.m,
            s.m_prime,
            s.order,
            s.phi_m_prime
        )?;
        writeln!(out, "p unramified in K: {}", verdict(h.field.unramified.passed))?;
        writeln!(out, "K disjoint from the cyclotomic tower: {}", verdict(h.field.disjoint.passed))?;
        match (h.ap, h.reduction) {
            (Some(ap), Some(r)) => writeln!(out, "a_p = {ap}: {r} reduction")?,
            _ => writeln!(out, "a_p not given")?,
        }
        writeln!(out, "fine hypotheses: {}", verdict(self.fine_ok))?;
        writeln!(out, "plus/minus hypotheses: {}", verdict(self.pm_ok))?;
        render_assumptions(&self.assumptions, out)
    }
}

impl Render for FineReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "p = {}, G = {}", self.p, self.group)?;
        for e in &self.e_alpha {
            writeln!(out, "e_{{{},{}}} = {}", e.tuple, e.level, e.e)?;
        }
        render_growth(&self.growth, out)?;
        writeln!(out, "char ideal of the dual fine Mordell-Weil group: <{}>", self.ideal.generator)?;
        writeln!(out, "lambda = {}, mu = {}", self.ideal.lambda, self.ideal.mu)?;
        render_assumptions(&self.assumptions, out)
    }
}

impl Render for PmReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "p = {}, G = {}, {} reduction", self.p, self.group, self.reduction)?;
        render_growth(&self.growth, out)?;
        writeln!(out, "r+ = {}", list(&self.r_plus))?;
        writeln!(out, "r- = {}", list(&self.r_minus))?;
        writeln!(out, "char+ = <{}>", self.char_plus.generator)?;
        writeln!(out, "char- = <{}>", self.char_minus.generator)?;
        writeln!(out, "gcd   = <{}>", self.gcd.generator)?;
        writeln!(
            out,
            "gcd matches x^e_0 prod Phi_n^(e_n - theta_n): {}",
            if self.gcd_matches_closed_form { "yes" } else { "no" }
        )?;
        render_assumptions(&self.assumptions, out)
    }
}

impl Render for EquivariantReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "p = {}, G = {}, {} decomposition", self.p, self.group, self.kind)?;
        if self.summands.is_empty() {
            writeln!(out, "  (no summands)")?;
        }
        for s in &self.summands {
            writeln!(
                out,
                "  (W{} (x) Lambda/Phi({}))^{}   dim W = {}",
                s.tuple, s.level, s.multiplicity, s.dimension
            )?;
        }
        writeln!(out, "contraction     = {}", list(&self.contraction))?;
        writeln!(out, "ideal exponents = {}", list(&self.ideal_exponents))?;
        render_assumptions(&self.assumptions, out)
    }
}

impl Render for TargetReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "p = {}, G = {}, e = {}", self.p, self.group, list(&self.e))?;
        writeln!(out, "{} target: <{}>", self.target, self.target_ideal.generator)?;
        writeln!(out, "computed:  <{}>", self.computed_ideal.generator)?;
        writeln!(out, "coincide: {}", if self.coincide { "yes" } else { "no" })?;
        if let Some(s) = &self.selmer_gcd {
            writeln!(out, "Selmer gcd: <{}>", s.generator)?;
        }
        render_assumptions(&self.assumptions, out)
    }
}

impl Render for ValidationReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        writeln!(out, "{} shape: {}", self.reduction, if self.accepted { "accepted" } else { "rejected" })?;
        for c in &self.checks {
            writeln!(out, "  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail)?;
        }
        let sha: Vec<String> = self.sha.cyclotomic.iter().map(|(a, k)| format!("({a},{k})")).collect();
        writeln!(out, "Sha cyclotomic part: {{{}}}", sha.join(", "))?;
        writeln!(out, "cyclic: {}", if self.cyclic { "yes" } else { "no" })
    }
}

impl Render for VerifyReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        for s in &self.suites {
            writeln!(
                out,
                "{} {} ({} cases)",
                if s.passed() { "PASS" } else { "FAIL" },
                s.name,
                s.cases
            )?;
            for f in &s.failures {
                writeln!(out, "  {f}")?;
            }
        }
        Ok(())
    }
}

impl Render for FetchReport {
    fn render(&self, out: &mut String) -> fmt::Result {
        let c = &self.fetched.curve;
        writeln!(out, "{} (from {})", c.label, self.fetched.provenance)?;
        if let Some(n) = c.conductor {
            writeln!(out, "conductor {n}")?;
        }
        if let Some(r) = c.rank {
            writeln!(out, "rank {r}")?;
        }
        let ap: Vec<String> = c.ap.iter().map(|(p, a)| format!("a_{p}={a}")).collect();
        writeln!(out, "{}", ap.join(" "))?;
        if let Some(k) = &self.classification {
            writeln!(out, "at p = {}: a_p = {}, {} reduction", k.p, k.ap, k.reduction)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ideal_text() {
        assert_eq!(pretty_ideal(&CharIdeal::trivial(3)), "1");
        let c = CharIdeal::from_exponents(3, 0, [(0, 1), (1, 2)]);
        assert_eq!(pretty_ideal(&c), "x * Phi(1)^2");
        assert_eq!(pretty_ideal(&CharIdeal::from_exponents(5, 2, [(2, 1)])), "5^2 * Phi(2)");
    }
}
