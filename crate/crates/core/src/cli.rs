//! Command-line surface. Every verdict is the result of the corresponding
//! library call; the CLI only formats. Exit codes: 0 success or verdict true,
//! 1 verdict false or invariant violation, 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::dataset::GroupDataset;
use crate::error::{Error, Result};
use crate::essential::{essential_monomials, Hyperplane};
use crate::schur::SchurModel;
use crate::specialization::{expand, index_relation_holds, valuation_degree, Specialization};
use crate::verifier::{check_aa_sum, check_theorem};

#[derive(Clone, Debug)]
struct SpecVec(Vec<i64>);

impl FromStr for SpecVec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad exponent `{}`: {}", t, e)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(SpecVec)
    }
}

#[derive(Parser)]
#[command(
    name = "schurblocks",
    version,
    about = "Schur element valuations, essential hyperplanes and Rouquier blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a dataset file and check every invariant
    Validate { file: PathBuf },

    /// Valuation and degree of one character's specialized Schur element
    #[command(name = "aA")]
    Aa {
        file: PathBuf,
        #[arg(long = "char")]
        character: String,
        #[arg(long, allow_hyphen_values = true)]
        spec: SpecVec,
    },

    /// Expand the specialized Schur element as an exact Laurent polynomial
    Expand {
        file: PathBuf,
        #[arg(long = "char")]
        character: String,
        #[arg(long, allow_hyphen_values = true)]
        spec: SpecVec,
    },

    /// Essential monomials, their primes and witnesses, and the hyperplanes
    Essential { file: PathBuf },

    /// Rouquier blocks of a specialization
    Blocks {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        spec: SpecVec,
    },

    /// Check that valuation and degree are constant on every stored block
    Verify {
        file: PathBuf,
        /// Restrict to one hyperplane: a label like "t_1 - t_2 = 0", a
        /// comma-separated normal, or "none" for the generic partition
        #[arg(long)]
        hyperplane: Option<String>,
        /// Restrict to the i-th block of the selected partition
        #[arg(long, requires = "hyperplane")]
        block: Option<usize>,
    },

    /// Check that a + A is constant on the Rouquier blocks of a specialization
    #[command(name = "check-sum")]
    CheckSum {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        spec: SpecVec,
    },

    /// Check the index relation parent = index * child under an appendix row
    #[command(name = "check-index")]
    CheckIndex {
        parent: PathBuf,
        child: PathBuf,
        #[arg(long)]
        row: usize,
        /// Child specialization exponents; defaults to the spetsial vector
        #[arg(long, allow_hyphen_values = true)]
        spec: Option<SpecVec>,
    },
}

/// Run the CLI against explicit arguments and writers; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            2
        }
    }
}

fn load(path: &Path) -> Result<GroupDataset> {
    GroupDataset::load_path(path)
}

fn named_model<'a>(ds: &'a GroupDataset, name: &str) -> Result<&'a SchurModel> {
    ds.model_by_name(name)
        .ok_or_else(|| Error::Semantic(format!("no Schur model for character `{}`", name)))
}

fn block_names(ds: &GroupDataset, block: &[usize]) -> String {
    block.iter().map(|&i| ds.characters[i].name.as_str()).collect::<Vec<_>>().join(", ")
}

fn hyperplane_matches(h: &Hyperplane, needle: &str) -> bool {
    let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    if strip(&h.label()) == strip(needle) {
        return true;
    }
    if let Ok(SpecVec(v)) = needle.parse::<SpecVec>() {
        if let Ok(other) = Hyperplane::new(v) {
            return &other == h;
        }
    }
    false
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Validate { file } => match load(&file) {
            Ok(ds) => {
                writeln!(
                    out,
                    "dataset `{}` is valid: {} characters, {} models, {} stored hyperplanes",
                    ds.group,
                    ds.characters.len(),
                    ds.models.len(),
                    ds.block_data.per_hyperplane().len()
                )?;
                Ok(0)
            }
            Err(e @ (Error::Syntax(_) | Error::Io(_))) => Err(e),
            Err(e) => {
                writeln!(out, "invalid: {}", e)?;
                Ok(1)
            }
        },

        Command::Aa { file, character, spec } => {
            let ds = load(&file)?;
            let model = named_model(&ds, &character)?;
            let vd = valuation_degree(model, &Specialization::new(spec.0))?;
            writeln!(out, "a={} A={}", vd.val, vd.deg)?;
            Ok(0)
        }

        Command::Expand { file, character, spec } => {
            let ds = load(&file)?;
            let model = named_model(&ds, &character)?;
            let e = expand(model, &Specialization::new(spec.0))?;
            let vd = e.val_deg()?;
            writeln!(out, "s(y) = {}", e)?;
            writeln!(out, "val={} deg={}", vd.val, vd.deg)?;
            Ok(0)
        }

        Command::Essential { file } => {
            let ds = load(&file)?;
            if ds.models.len() < ds.characters.len() {
                writeln!(
                    out,
                    "partial ({} of {} characters)",
                    ds.models.len(),
                    ds.characters.len()
                )?;
            }
            let ems = essential_monomials(&ds.models)?;
            if ems.is_empty() {
                writeln!(out, "no essential monomials")?;
                return Ok(0);
            }
            for em in &ems {
                let primes =
                    em.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
                let witnesses = em
                    .witnesses
                    .iter()
                    .map(|w| format!("{}:{}", w.character, w.factor))
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    out,
                    "monomial {}  primes {{{}}}  witnesses [{}]",
                    em.monomial, primes, witnesses
                )?;
            }
            writeln!(out, "essential hyperplanes:")?;
            for em in &ems {
                writeln!(out, "  {}", Hyperplane::from_monomial(&em.monomial)?.label())?;
            }
            Ok(0)
        }

        Command::Blocks { file, spec } => {
            let ds = load(&file)?;
            let hs = ds.all_hyperplanes()?;
            let s = Specialization::new(spec.0);
            let partition = crate::blocks::rouquier_blocks(&s, &ds.block_data, &hs)?;
            let rendered = partition
                .blocks()
                .iter()
                .map(|b| format!("{{{}}}", block_names(&ds, b)))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(out, "{}", rendered)?;
            Ok(0)
        }

        Command::Verify { file, hyperplane, block } => {
            let ds = load(&file)?;
            let report = check_theorem(&ds)?;
            let mut selected: Vec<_> = report
                .entries
                .iter()
                .filter(|e| match &hyperplane {
                    None => true,
                    Some(label) if label == "none" => e.hyperplane.is_none(),
                    Some(label) => {
                        e.hyperplane.as_ref().map(|h| hyperplane_matches(h, label)).unwrap_or(false)
                    }
                })
                .collect();
            if selected.is_empty() {
                return Err(Error::Semantic(format!(
                    "no stored partition matches --hyperplane {}",
                    hyperplane.as_deref().unwrap_or("<all>")
                )));
            }
            if let Some(i) = block {
                if i >= selected.len() {
                    return Err(Error::Semantic(format!(
                        "block index {} out of range ({} blocks)",
                        i,
                        selected.len()
                    )));
                }
                selected = vec![selected[i]];
            }
            let mut all_ok = true;
            for e in &selected {
                let h = e.hyperplane.as_ref().map(|h| h.label()).unwrap_or_else(|| "none".into());
                writeln!(
                    out,
                    "({}; {}; {})",
                    h,
                    block_names(&ds, &e.block),
                    if e.ok { "true" } else { "false" }
                )?;
                all_ok &= e.ok;
            }
            Ok(if all_ok { 0 } else { 1 })
        }

        Command::CheckSum { file, spec } => {
            let ds = load(&file)?;
            let s = Specialization::new(spec.0);
            let report = check_aa_sum(&ds, &s)?;
            for e in &report.entries {
                let sums = e
                    .sums
                    .iter()
                    .map(|(i, v)| format!("{}: {}", ds.characters[*i].name, v))
                    .collect::<Vec<_>>()
                    .join(", ");
                writeln!(
                    out,
                    "block {{{}}}: a+A [{}] {}",
                    block_names(&ds, &e.block),
                    sums,
                    if e.ok { "constant" } else { "VIOLATION" }
                )?;
            }
            Ok(if report.overall() { 0 } else { 1 })
        }

        Command::CheckIndex { parent, child, row, spec } => {
            let parent_ds = load(&parent)?;
            let child_ds = load(&child)?;
            let row = parent_ds.appendix_row(row)?;
            if row.target != child_ds.group {
                return Err(Error::Semantic(format!(
                    "appendix row targets `{}` but the child file is `{}`",
                    row.target, child_ds.group
                )));
            }
            let child_exponents =
                spec.map(|s| s.0).unwrap_or_else(|| child_ds.vars.spetsial_exponents());
            if child_exponents.len() != child_ds.vars.total() {
                return Err(Error::DimensionMismatch {
                    expected: child_ds.vars.total(),
                    got: child_exponents.len(),
                });
            }
            let parent_spec = row.parent_specialization(&child_exponents)?;
            let child_spec = Specialization::new(child_exponents);
            let mut checked = 0usize;
            let mut all_ok = true;
            for pm in &parent_ds.models {
                let Some(cm) = child_ds.model_by_name(&pm.char_name) else {
                    writeln!(out, "{}: skipped (no child model)", pm.char_name)?;
                    continue;
                };
                let pe = expand(pm, &parent_spec)?;
                let ce = expand(cm, &child_spec)?;
                let ok = index_relation_holds(&pe, &ce, row.index);
                writeln!(
                    out,
                    "{}: parent {} {} {} * child {}",
                    pm.char_name,
                    pe,
                    if ok { "=" } else { "!=" },
                    row.index,
                    ce
                )?;
                checked += 1;
                all_ok &= ok;
            }
            if checked == 0 {
                return Err(Error::Semantic(
                    "no character of the parent dataset has a child model".into(),
                ));
            }
            Ok(if all_ok { 0 } else { 1 })
        }
    }
}
