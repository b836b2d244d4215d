//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical mismatch,
//! 2 on bad input or usage.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use crate::aside::build_aside;
use crate::bside::build_bside;
use crate::error::{Error, Result};
use crate::gluing::{predicted_topology, InputSpec, StackyCurveSpec};
use crate::homology::{
    localization_object, localization_objects, module_of, ComplexJson, Context, Side, TwistedComplex,
};
use crate::mirror::{search_ring_mirror, verify_localizations, verify_theorem_a};
use crate::quiver::GradedQuiver;
use crate::surface::{build_map, oracle_topology};
use crate::sweep::{curve_sweep, gluing_sweep, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(
    name = "mirrorcheck",
    version,
    about = "Checks mirror symmetry data for punctured surfaces and balloon curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Minus,
    Plus,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Minus => Side::Minus,
            SideArg::Plus => Side::Plus,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Genus and boundary marks from the formula and from the glued polygons.
    Topology {
        #[arg(long)]
        spec: PathBuf,
        /// Include the combinatorial map in JSON output.
        #[arg(long)]
        map: bool,
    },
    /// Quiver of the A-side generators.
    Aside {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Quiver of the exceptional collection of a curve.
    Bside {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Quiver match, topology, K0 rank and localization modules for a curve.
    Verify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Ring mirrors of a genus-`genus` surface with `punctures` boundary components.
    Search { genus: usize, punctures: usize },
    /// Modules of the localization objects; all of them unless one is selected.
    Localize {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum, requires_all = ["comp", "pos"])]
        side: Option<SideArg>,
        #[arg(long)]
        comp: Option<usize>,
        #[arg(long)]
        pos: Option<usize>,
    },
    /// Hom-complex cohomology between named twisted complexes.
    Ext {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Formula against oracle over all small gluings, and the quiver match over small curves.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        max_r: usize,
    },
}

/// Rendered report and whether every check in it passed.
pub struct Outcome {
    pub report: String,
    pub pass: bool,
}

impl Outcome {
    fn ok(report: String) -> Self {
        Outcome { report, pass: true }
    }

    pub fn exit_code(&self) -> u8 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

fn read(path: &FsPath) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))
}

fn read_spec(path: &FsPath) -> Result<InputSpec> {
    InputSpec::from_json(&read(path)?).map_err(|e| match e {
        Error::InvalidSpec(m) => Error::InvalidSpec(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn read_curve(path: &FsPath) -> Result<StackyCurveSpec> {
    match read_spec(path)? {
        InputSpec::Curve(c) => Ok(c),
        InputSpec::Gluing(_) => Err(Error::InvalidSpec(format!(
            "{}: expected a chain or ring curve",
            path.display()
        ))),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::InvalidSpec(format!("--format {format:?} is not available for {command}").to_lowercase())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Topology { spec, map } => topology(cli.format, spec, *map),
        Command::Aside { spec } => {
            let g = read_spec(spec)?.gluing()?;
            quiver_report(cli.format, &build_aside(&g))
        }
        Command::Bside { spec } => quiver_report(cli.format, &build_bside(&read_curve(spec)?)),
        Command::Verify { spec } => verify(cli.format, spec),
        Command::Search { genus, punctures } => search(cli.format, *genus, *punctures),
        Command::Localize { spec, side, comp, pos } => localize(cli.format, spec, side.map(Side::from), *comp, *pos),
        Command::Ext { spec } => ext(cli.format, spec),
        Command::Sweep { max_n, max_r } => sweep(cli.format, *max_n, *max_r, cli.seed),
    }
}

fn topology(format: Format, path: &FsPath, with_map: bool) -> Result<Outcome> {
    let g = read_spec(path)?.gluing()?;
    let predicted = predicted_topology(&g);
    let oracle = oracle_topology(&g);
    let agree = predicted == oracle;
    let report = match format {
        Format::Json => {
            let mut v = json!({ "spec": g, "predicted": predicted, "oracle": oracle, "agree": agree });
            if with_map {
                v["map"] = serde_json::to_value(build_map(&g)).expect("serializable");
            }
            pretty(&v)
        }
        Format::Text => format!(
            "formula: genus {} boundaries {:?} euler {}\noracle:  genus {} boundaries {:?} euler {}\n{}\n",
            predicted.genus,
            predicted.boundaries,
            predicted.euler,
            oracle.genus,
            oracle.boundaries,
            oracle.euler,
            if agree { "AGREE" } else { "DISAGREE" }
        ),
        Format::Dot => return Err(unsupported(format, "topology")),
    };
    Ok(Outcome { report, pass: agree })
}

fn quiver_text(q: &GradedQuiver) -> String {
    let mut out = String::new();
    writeln!(out, "{} vertices", q.vertex_count()).unwrap();
    for v in 0..q.vertex_count() {
        writeln!(out, "  {v}: {} shift {}", q.name(v), q.vertices[v].shift).unwrap();
    }
    writeln!(out, "{} arrows", q.arrows.len()).unwrap();
    for a in &q.arrows {
        writeln!(
            out,
            "  {}: {} -> {} degree {}",
            a.label,
            q.name(a.src),
            q.name(a.tgt),
            a.degree
        )
        .unwrap();
    }
    writeln!(out, "{} relations", q.relations.len()).unwrap();
    for &(f, g) in &q.relations {
        writeln!(out, "  {} then {} = 0", q.arrows[f].label, q.arrows[g].label).unwrap();
    }
    out
}

fn quiver_report(format: Format, q: &GradedQuiver) -> Result<Outcome> {
    Ok(Outcome::ok(match format {
        Format::Dot => q.to_dot(),
        Format::Json => pretty(q),
        Format::Text => quiver_text(q),
    }))
}

fn verify(format: Format, path: &FsPath) -> Result<Outcome> {
    let c = read_curve(path)?;
    let rep = verify_theorem_a(&c)?;
    let locs = verify_localizations(&c)?;
    let loc_pass = locs.iter().all(|l| l.pass);
    let pass = rep.pass() && loc_pass;
    let report = match format {
        Format::Json => pretty(&json!({ "theorem_a": rep, "localizations": locs, "pass": pass })),
        Format::Text => {
            let mut out = String::new();
            for ch in &rep.checks {
                writeln!(
                    out,
                    "{} {}: {}",
                    if ch.pass { "PASS" } else { "FAIL" },
                    ch.name,
                    ch.detail
                )
                .unwrap();
            }
            let bad: Vec<String> = locs
                .iter()
                .filter(|l| !l.pass)
                .map(|l| format!("{}({},{}) {}", l.side, l.comp, l.pos, l.detail))
                .collect();
            writeln!(
                out,
                "{} localization: {} objects{}",
                if loc_pass { "PASS" } else { "FAIL" },
                locs.len(),
                if bad.is_empty() {
                    String::new()
                } else {
                    format!("; {}", bad.join("; "))
                }
            )
            .unwrap();
            writeln!(out, "{}", if pass { "PASS" } else { "FAIL" }).unwrap();
            out
        }
        Format::Dot => return Err(unsupported(format, "verify")),
    };
    Ok(Outcome { report, pass })
}

fn search(format: Format, genus: usize, punctures: usize) -> Result<Outcome> {
    let rep = search_ring_mirror(genus, punctures)?;
    let report = match format {
        Format::Json => pretty(&rep),
        Format::Text => {
            let mut out = format!("genus {genus}, {punctures} punctures: twists {:?}\n", rep.twists);
            for f in &rep.failures {
                writeln!(out, "FAIL {f}").unwrap();
            }
            out
        }
        Format::Dot => return Err(unsupported(format, "search")),
    };
    Ok(Outcome {
        pass: rep.pass(),
        report,
    })
}

fn localize(
    format: Format,
    path: &FsPath,
    side: Option<Side>,
    comp: Option<usize>,
    pos: Option<usize>,
) -> Result<Outcome> {
    let g = read_spec(path)?.gluing()?;
    let ctx = Context::new(build_aside(&g))?;
    let q = &ctx.quiver;
    let objects: Vec<(Side, usize, usize, TwistedComplex)> = match (side, comp, pos) {
        (Some(s), Some(i), Some(j)) => vec![(s, i, j, localization_object(&g, q, s, i, j)?)],
        (None, None, None) => localization_objects(&g, q)?,
        _ => return Err(Error::InvalidSpec("--side, --comp and --pos go together".into())),
    };
    let mut text = String::new();
    let mut items = Vec::new();
    let mut pass = true;
    for (s, i, j, e) in &objects {
        match module_of(&ctx, e) {
            Ok(m) => {
                writeln!(text, "{s}({i},{j}) = {}", e.describe(q)).unwrap();
                text.push_str(&m.table(q));
                let dims: BTreeMap<String, usize> = m.support().into_iter().map(|v| (q.name(v), m.dims[v])).collect();
                let actions: BTreeMap<String, String> = m
                    .actions
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(a, c)| (q.arrows[a].label.to_string(), c.to_string()))
                    .collect();
                items.push(json!({
                    "side": s, "comp": i, "pos": j,
                    "complex": ComplexJson::from_complex(q, e),
                    "degree": m.degree, "dims": dims, "actions": actions,
                }));
            }
            Err(err) => {
                pass = false;
                writeln!(text, "{s}({i},{j}) = {}\n  FAIL {err}", e.describe(q)).unwrap();
                items.push(json!({ "side": s, "comp": i, "pos": j, "error": err.to_string() }));
            }
        }
    }
    let report = match format {
        Format::Json => pretty(&items),
        Format::Text => text,
        Format::Dot => return Err(unsupported(format, "localize")),
    };
    Ok(Outcome { report, pass })
}

/// Input of `ext`: a quiver (given directly or as gluing/curve data for its
/// A-side) and named complexes over it.
#[derive(Deserialize)]
struct ExtInput {
    #[serde(default)]
    quiver: Option<GradedQuiver>,
    #[serde(default)]
    spec: Option<serde_json::Value>,
    objects: BTreeMap<String, ComplexJson>,
}

fn ext(format: Format, path: &FsPath) -> Result<Outcome> {
    let input: ExtInput =
        serde_json::from_str(&read(path)?).map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
    let q = match (input.quiver, input.spec) {
        (Some(q), None) => {
            q.validate()?;
            q
        }
        (None, Some(s)) => build_aside(&InputSpec::from_json(&s.to_string())?.gluing()?),
        _ => return Err(Error::InvalidSpec("give exactly one of `quiver` and `spec`".into())),
    };
    let ctx = Context::new(q)?;
    let objects: Vec<(String, TwistedComplex)> = input
        .objects
        .iter()
        .map(|(name, c)| Ok((name.clone(), c.resolve(&ctx.quiver)?)))
        .collect::<Result<_>>()?;
    let mut text = String::new();
    let mut table = Vec::new();
    for (n1, x) in &objects {
        for (n2, y) in &objects {
            let h = ctx.hom_cohomology(x, y)?;
            writeln!(text, "Hom({n1}, {n2}) = {h}").unwrap();
            table.push(json!({ "from": n1, "to": n2, "dims": h }));
        }
    }
    Ok(Outcome::ok(match format {
        Format::Json => pretty(&table),
        Format::Text => text,
        Format::Dot => return Err(unsupported(format, "ext")),
    }))
}

fn sweep(format: Format, max_n: usize, max_r: usize, seed: u64) -> Result<Outcome> {
    let gluings = gluing_sweep(max_n, max_r, seed);
    let topo_fail: Vec<String> = gluings
        .iter()
        .filter(|g| predicted_topology(g) != oracle_topology(g))
        .map(|g| format!("{g:?}"))
        .collect();
    let curves = curve_sweep(max_n, max_r);
    let mut curve_fail = Vec::new();
    for c in &curves {
        if !verify_theorem_a(c)?.pass() {
            curve_fail.push(format!("{c:?}"));
        }
    }
    let pass = topo_fail.is_empty() && curve_fail.is_empty();
    let report = match format {
        Format::Json => pretty(&json!({
            "seed": seed, "max_n": max_n, "max_r": max_r,
            "gluings": gluings.len(), "topology_failures": topo_fail,
            "curves": curves.len(), "curve_failures": curve_fail, "pass": pass,
        })),
        Format::Text => {
            let mut out = format!(
                "seed {seed}: {} gluings, {} topology mismatches; {} curves, {} quiver mismatches\n",
                gluings.len(),
                topo_fail.len(),
                curves.len(),
                curve_fail.len()
            );
            for f in topo_fail.iter().chain(&curve_fail).take(20) {
                writeln!(out, "FAIL {f}").unwrap();
            }
            out
        }
        Format::Dot => return Err(unsupported(format, "sweep")),
    };
    Ok(Outcome { report, pass })
}
