//! Problem-file input.
//!
//! A problem is a single TOML document. Rational entries are always
//! strings (`"p"` or `"p/q"`) so nothing passes through floating point;
//! matrices are row-major lists of rows.
//!
//! ```toml
//! variables = 2
//! rule = "exterior"            # exterior | skew | symmetric
//! # cap = 4                    # required degree cap for skew/symmetric
//!                              # (defaults to 2|G|); forced to n for exterior
//!
//! [group]
//! generators = [ [["0","1"],["1","0"]] ]
//! # cap = 10000                # enumeration guardrail
//!
//! [arrangement]                # optional, for the `arrangement` command
//! ambient = 2
//! subspaces = [ { span = [["1","1"]] }, { forms = [["1","-1"]] } ]
//!
//! [experiment]                 # optional, for the `transfer` command
//! v_dims = [1, 2, 3]
//! ```

use serde::Deserialize;

use crate::algebra::{AlgebraCtx, Ctx, SignRule};
use crate::arrangement::{Arrangement, Subspace};
use crate::error::{Error, Result};
use crate::groups::{FiniteMatrixGroup, DEFAULT_ENUMERATION_CAP};
use crate::linalg::MatrixQ;
use crate::rat::{parse_rat, Rat};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub variables: usize,
    pub rule: String,
    pub cap: Option<usize>,
    pub group: GroupSection,
    pub arrangement: Option<ArrangementSection>,
    pub experiment: Option<ExperimentSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    pub generators: Vec<Vec<Vec<String>>>,
    pub cap: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementSection {
    pub ambient: Option<usize>,
    pub subspaces: Vec<SubspaceSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceSpec {
    pub span: Option<Vec<Vec<String>>>,
    pub forms: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub v_dims: Vec<usize>,
}

fn parse_row(row: &[String]) -> Result<Vec<Rat>> {
    row.iter().map(|s| parse_rat(s)).collect()
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Problem(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn sign_rule(&self) -> Result<SignRule> {
        match self.rule.as_str() {
            "exterior" => Ok(SignRule::Exterior),
            "skew" => Ok(SignRule::SkewMinusOne),
            "symmetric" => Ok(SignRule::Symmetric),
            other => Err(Error::Problem(format!(
                "unknown rule `{other}` (expected exterior, skew, or symmetric)"
            ))),
        }
    }

    pub fn build_group(&self) -> Result<FiniteMatrixGroup> {
        if self.group.generators.is_empty() {
            return Err(Error::Problem("group.generators must be nonempty".into()));
        }
        let n = self.variables;
        let mut matrices = Vec::with_capacity(self.group.generators.len());
        for (k, rows) in self.group.generators.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Problem(format!(
                    "generator {k} is not a {n}x{n} matrix"
                )));
            }
            let mut entries = Vec::with_capacity(n * n);
            for row in rows {
                entries.extend(parse_row(row)?);
            }
            matrices.push(MatrixQ::new(n, n, entries)?);
        }
        let cap = self.group.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
        FiniteMatrixGroup::enumerate(&matrices, cap)
    }

    /// Build the algebra context; `cap_override` (the CLI flag) wins over
    /// the file, which wins over the default of twice the group order for
    /// the capped rules.
    pub fn build_ctx(
        &self,
        group: &FiniteMatrixGroup,
        cap_override: Option<usize>,
    ) -> Result<Ctx> {
        let rule = self.sign_rule()?;
        let n = self.variables;
        match rule {
            SignRule::Exterior => {
                if let Some(cap) = cap_override.or(self.cap) {
                    if cap != n {
                        return Err(Error::Problem(format!(
                            "the exterior cap is forced to the variable count {n}, got {cap}"
                        )));
                    }
                }
                Ok(AlgebraCtx::exterior(n))
            }
            SignRule::SkewMinusOne | SignRule::Symmetric => {
                let cap = cap_override
                    .or(self.cap)
                    .unwrap_or_else(|| 2 * group.order());
                AlgebraCtx::new(rule, (1..=n).map(|i| format!("x{i}")).collect(), cap)
            }
        }
    }

    pub fn build_arrangement(&self) -> Result<Arrangement> {
        let Some(section) = &self.arrangement else {
            return Err(Error::Problem("problem file has no [arrangement] section".into()));
        };
        let ambient = section.ambient.unwrap_or(self.variables);
        if section.subspaces.is_empty() {
            return Err(Error::Problem("arrangement.subspaces must be nonempty".into()));
        }
        let mut subspaces = Vec::with_capacity(section.subspaces.len());
        for (k, spec) in section.subspaces.iter().enumerate() {
            let span = spec
                .span
                .as_ref()
                .map(|rows| rows.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>())
                .transpose()?;
            let forms = spec
                .forms
                .as_ref()
                .map(|rows| rows.iter().map(|r| parse_row(r)).collect::<Result<Vec<_>>>())
                .transpose()?;
            let subspace = match (span, forms) {
                (Some(s), None) => Subspace::from_span(ambient, s)?,
                (None, Some(f)) => Subspace::from_forms(ambient, f)?,
                (Some(s), Some(f)) => Subspace::from_span_and_forms(ambient, s, f)?,
                (None, None) => {
                    return Err(Error::Problem(format!(
                        "subspace {k} needs `span` or `forms`"
                    )))
                }
            };
            subspaces.push(subspace);
        }
        Arrangement::new(ambient, subspaces)
    }

    pub fn experiment_dims(&self) -> Result<&[usize]> {
        match &self.experiment {
            Some(e) if !e.v_dims.is_empty() => Ok(&e.v_dims),
            Some(_) => Err(Error::Problem("experiment.v_dims must be nonempty".into())),
            None => Err(Error::Problem("problem file has no [experiment] section".into())),
        }
    }
}
