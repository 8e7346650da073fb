//! Structured run reports.
//!
//! Every command produces one `Report`: a serializable document with a
//! stable field order (so identical inputs give byte-identical JSON) plus
//! a human table rendering of the same data. Timing is shown in the human
//! view only; it is excluded from the machine-readable document to keep it
//! deterministic.

use serde::Serialize;

use crate::arrangement::BatteryTrial;
use crate::pipeline::{GansubDegreeRow, Method, TransferRow};

#[derive(Debug, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Group(GroupReport),
    Invariants(InvariantsReport),
    Molien(MolienReport),
    Noether(NoetherDoc),
    Gansub(GansubDoc),
    Arrangement(ArrangementReport),
    ArrangementBattery(ArrangementBatteryReport),
    Transfer(TransferDoc),
    Examples(ExamplesReport),
}

#[derive(Debug, Serialize)]
pub struct GroupReport {
    pub problem: String,
    pub variables: usize,
    pub order: usize,
    pub generator_count: usize,
    pub element_orders: Vec<usize>,
    pub signed_permutation: bool,
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub problem: String,
    pub rule: String,
    pub variables: usize,
    pub cap: usize,
    pub method: Method,
    pub group_order: usize,
    pub generator_degrees: Vec<usize>,
    pub generators: Vec<String>,
    pub beta: usize,
    pub invariant_dims: Vec<usize>,
    pub generated_dims: Vec<usize>,
    pub dims_match: bool,
}

#[derive(Debug, Serialize)]
pub struct MolienReport {
    pub problem: String,
    pub rule: String,
    pub variables: usize,
    pub cap: usize,
    pub group_order: usize,
    pub coefficients: Vec<String>,
    pub fixed_dims: Vec<usize>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct NoetherDoc {
    pub problem: String,
    pub rule: String,
    pub variables: usize,
    pub cap: usize,
    pub method: Method,
    pub group_order: usize,
    pub bound: usize,
    pub beta: usize,
    pub pass: bool,
    pub asserted: bool,
    pub generator_degrees: Vec<usize>,
    pub generators: Vec<String>,
    pub invariant_dims: Vec<usize>,
    pub generated_dims: Vec<usize>,
    pub dims_match: bool,
}

#[derive(Debug, Serialize)]
pub struct GansubDoc {
    pub problem: String,
    pub variables: usize,
    pub group_order: usize,
    pub rows: Vec<GansubDegreeRow>,
    pub all_equal: bool,
}

#[derive(Debug, Serialize)]
pub struct ArrangementReport {
    pub problem: String,
    pub ambient: usize,
    pub subspace_count: usize,
    pub component_dims: Vec<usize>,
    pub generator_degrees: Vec<usize>,
    pub generators: Vec<String>,
    pub max_degree: usize,
    pub degree_bound: usize,
    pub within_bound: bool,
}

#[derive(Debug, Serialize)]
pub struct ArrangementBatteryReport {
    pub seed: u64,
    pub trials: Vec<BatteryTrial>,
    pub all_within_bound: bool,
}

#[derive(Debug, Serialize)]
pub struct TransferDoc {
    pub problem: String,
    pub group_order: usize,
    pub w_dim: usize,
    pub rows: Vec<TransferRow>,
    pub max_beta_sym: usize,
    pub max_beta_ext: usize,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ExampleOutcome {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ExamplesReport {
    pub examples: Vec<ExampleOutcome>,
    pub all_pass: bool,
}

impl Report {
    /// Whether every asserted flag in the report holds; drives the process
    /// exit code.
    pub fn ok(&self) -> bool {
        match self {
            Report::Group(_) => true,
            Report::Invariants(r) => r.dims_match,
            Report::Molien(r) => r.agree,
            Report::Noether(r) => !r.asserted || (r.pass && r.dims_match),
            Report::Gansub(r) => r.all_equal,
            Report::Arrangement(r) => r.within_bound,
            Report::ArrangementBattery(r) => r.all_within_bound,
            Report::Transfer(r) => r.pass,
            Report::Examples(r) => r.all_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Table view of the same data.
    pub fn human(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Group(r) => {
                line(&mut out, &format!("group enumeration: {}", r.problem));
                line(&mut out, &format!("  variables          {}", r.variables));
                line(&mut out, &format!("  order              {}", r.order));
                line(&mut out, &format!("  generators         {}", r.generator_count));
                line(&mut out, &format!("  element orders     {:?}", r.element_orders));
                line(&mut out, &format!("  signed permutation {}", r.signed_permutation));
            }
            Report::Invariants(r) => {
                line(
                    &mut out,
                    &format!("invariant generators ({} method): {}", r.method, r.problem),
                );
                line(
                    &mut out,
                    &format!("  rule {} | variables {} | cap {} | |G| = {}",
                        r.rule, r.variables, r.cap, r.group_order),
                );
                dims_table(&mut out, &r.invariant_dims, &r.generated_dims);
                generators_table(&mut out, &r.generator_degrees, &r.generators);
                line(&mut out, &format!("  beta = {}", r.beta));
                flag(&mut out, "generated dims = invariant dims", r.dims_match);
            }
            Report::Molien(r) => {
                line(&mut out, &format!("molien series: {}", r.problem));
                line(
                    &mut out,
                    &format!("  rule {} | variables {} | cap {} | |G| = {}",
                        r.rule, r.variables, r.cap, r.group_order),
                );
                line(&mut out, "  degree | coefficient | dim fixed space");
                for (d, (c, dim)) in r.coefficients.iter().zip(&r.fixed_dims).enumerate() {
                    line(&mut out, &format!("  {d:>6} | {c:>11} | {dim}"));
                }
                flag(&mut out, "oracle agreement", r.agree);
            }
            Report::Noether(r) => {
                line(
                    &mut out,
                    &format!("degree bound ({} method): {}", r.method, r.problem),
                );
                line(
                    &mut out,
                    &format!("  rule {} | variables {} | cap {} | |G| = {}",
                        r.rule, r.variables, r.cap, r.group_order),
                );
                dims_table(&mut out, &r.invariant_dims, &r.generated_dims);
                generators_table(&mut out, &r.generator_degrees, &r.generators);
                line(
                    &mut out,
                    &format!("  beta = {} | bound |G| = {}", r.beta, r.bound),
                );
                if r.asserted {
                    flag(&mut out, "beta <= |G|", r.pass);
                    flag(&mut out, "generated dims = invariant dims", r.dims_match);
                } else {
                    line(
                        &mut out,
                        &format!(
                            "  beta <= |G|: {} (reported only; the bound is not asserted for rule {})",
                            r.pass, r.rule
                        ),
                    );
                }
            }
            Report::Gansub(r) => {
                line(&mut out, &format!("elimination identity check: {}", r.problem));
                line(
                    &mut out,
                    &format!("  variables {} | |G| = {}", r.variables, r.group_order),
                );
                line(&mut out, "  degree | dim lhs | dim rhs | equal");
                for row in &r.rows {
                    line(
                        &mut out,
                        &format!(
                            "  {:>6} | {:>7} | {:>7} | {}",
                            row.degree, row.lhs_dim, row.rhs_dim, row.equal
                        ),
                    );
                }
                flag(&mut out, "all degrees equal", r.all_equal);
            }
            Report::Arrangement(r) => {
                line(&mut out, &format!("arrangement intersection ideal: {}", r.problem));
                line(
                    &mut out,
                    &format!("  ambient {} | subspaces {}", r.ambient, r.subspace_count),
                );
                line(&mut out, &format!("  component dims by degree: {:?}", r.component_dims));
                generators_table(&mut out, &r.generator_degrees, &r.generators);
                line(
                    &mut out,
                    &format!("  max generator degree = {} | bound t = {}", r.max_degree, r.degree_bound),
                );
                flag(&mut out, "generated in degree <= t", r.within_bound);
            }
            Report::ArrangementBattery(r) => {
                line(&mut out, &format!("random arrangement battery (seed {})", r.seed));
                line(&mut out, "  ambient | subspaces | generator degrees | within bound");
                for t in &r.trials {
                    line(
                        &mut out,
                        &format!(
                            "  {:>7} | {:>9} | {:?} | {}",
                            t.ambient, t.subspace_count, t.generator_degrees, t.within_bound
                        ),
                    );
                }
                flag(&mut out, "all trials within bound", r.all_within_bound);
            }
            Report::Transfer(r) => {
                line(&mut out, &format!("bound transference: {}", r.problem));
                line(
                    &mut out,
                    &format!("  |G| = {} acting on {} variables per copy", r.group_order, r.w_dim),
                );
                line(&mut out, "  dim V | beta symmetric | beta exterior");
                for row in &r.rows {
                    line(
                        &mut out,
                        &format!("  {:>5} | {:>14} | {}", row.dim_v, row.beta_sym, row.beta_ext),
                    );
                }
                line(
                    &mut out,
                    &format!("  max beta exterior {} vs max beta symmetric {}",
                        r.max_beta_ext, r.max_beta_sym),
                );
                flag(&mut out, "exterior bound transfers", r.pass);
            }
            Report::Examples(r) => {
                line(&mut out, "built-in examples");
                for e in &r.examples {
                    line(
                        &mut out,
                        &format!("  [{}] {}: {}", if e.pass { "pass" } else { "FAIL" }, e.name, e.detail),
                    );
                }
                flag(&mut out, "all examples", r.all_pass);
            }
        }
        out
    }
}

fn line(out: &mut String, s: &str) {
    out.push_str(s);
    out.push('\n');
}

fn flag(out: &mut String, what: &str, ok: bool) {
    line(out, &format!("  [{}] {what}", if ok { "pass" } else { "FAIL" }));
}

fn dims_table(out: &mut String, invariant: &[usize], generated: &[usize]) {
    line(out, "  degree | dim invariants | dim generated");
    for (d, (i, g)) in invariant.iter().zip(generated).enumerate() {
        line(out, &format!("  {d:>6} | {i:>14} | {g}"));
    }
}

fn generators_table(out: &mut String, degrees: &[usize], rendered: &[String]) {
    if rendered.is_empty() {
        line(out, "  generators: none (invariants are the constants)");
        return;
    }
    line(out, "  generators:");
    for (d, g) in degrees.iter().zip(rendered) {
        line(out, &format!("    deg {d}: {g}"));
    }
}
