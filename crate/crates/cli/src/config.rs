use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Analyze one presentation.
    Verify,
    /// Build the fiber product of a presentation with itself and check it.
    Product,
    /// Run every check on the dihedral square construction.
    DihedralDemo,
    /// Genus table and Jacobian decomposition of the dihedral square.
    Decompose,
    /// Run every fixture of the corpus.
    Regress,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Verify => "verify",
            Command::Product => "product",
            Command::DihedralDemo => "dihedral-demo",
            Command::Decompose => "decompose",
            Command::Regress => "regress",
        };
        f.write_str(s)
    }
}

/// Everything a run needs. Loaded from a JSON file, then overlaid with flags.
///
/// Absent keys are omitted when serializing, so a parsed file serializes back
/// to an equal value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<Command>,
    /// `dihedral:p`, `dihedral:p^2`, `klein` or `generators:...`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    /// `trivial`, `whole`, `tau`, `tau(k)` or generators separated by `;`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reps: Vec<String>,
    /// Entries `class:s`, the class being `C<k>` or a generator in cycle notation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub signature: Vec<String>,
    /// Signature of the second factor of a product; defaults to `signature`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right_signature: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s1: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    /// Fixture directory for `regress`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<PathBuf>,
    /// Largest group order that will be materialized.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_cap: Option<usize>,
    /// Expected report values, compared by `regress`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, String>,
}

fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

fn pick_vec<T>(flag: Vec<T>, file: Vec<T>) -> Vec<T> {
    if flag.is_empty() {
        file
    } else {
        flag
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("malformed config")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    /// Keys set in `flags` win over keys set here.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        let mut expect = self.expect;
        expect.extend(flags.expect);
        RunConfig {
            command: pick(flags.command, self.command),
            group: pick(flags.group, self.group),
            subgroup: pick(flags.subgroup, self.subgroup),
            reps: pick_vec(flags.reps, self.reps),
            signature: pick_vec(flags.signature, self.signature),
            right_signature: pick_vec(flags.right_signature, self.right_signature),
            p: pick(flags.p, self.p),
            s1: pick(flags.s1, self.s1),
            s2: pick(flags.s2, self.s2),
            out: pick(flags.out, self.out),
            fixtures: pick(flags.fixtures, self.fixtures),
            order_cap: pick(flags.order_cap, self.order_cap),
            expect,
        }
    }

    pub fn command(&self) -> Result<Command> {
        match self.command {
            Some(c) => Ok(c),
            None => bail!("no command given"),
        }
    }

    /// `(p, s1, s2)`, all required.
    pub fn dihedral_parameters(&self) -> Result<(u32, u32, u32)> {
        match (self.p, self.s1, self.s2) {
            (Some(p), Some(s1), Some(s2)) => Ok((p, s1, s2)),
            _ => bail!(
                "{} needs p, s1 and s2",
                self.command
                    .map_or("this command".into(), |c| c.to_string())
            ),
        }
    }

    /// The config with output-only keys removed, as echoed in reports.
    pub fn echo(&self) -> RunConfig {
        RunConfig {
            out: None,
            ..self.clone()
        }
    }
}
