//! The `cacti` command line: cell enumeration, homology, composition,
//! verification suites, action runs, trees and pictures.

pub mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cacti::action::verify::loop_family;
use cacti::action::{act, action_tree, symbols, EvalPoint, Family, SlotConvention};
use cacti::cacti::{associated_tree, CactusVertex, FmsElement};
use cacti::cells::{enumerate_cells_limited, homology_of, poset_oracle_homology, ChainComplex};
use cacti::operad::{AdditiveRationals, FreeOperad, MonoidOperad};
use cacti::suites::{run_suite, Suite};
use cacti::{CirclePoint, DeltaPoint, LambdaPoint, Rat};

/// Largest `n` accepted by `cells` and `homology`.
pub const MAX_N: usize = 7;
/// Cell budget for `cells` and `homology`.
pub const CELL_LIMIT: usize = 200_000;
/// Simplex budget for the poset oracle.
pub const CHAIN_LIMIT: usize = 2_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "cacti",
    version,
    about = "Exact cacti, their cells and their action"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the cells of F_m(n) by dimension.
    Cells {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
    },
    /// Integral homology of F_m(n).
    Homology {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Cross-check against an independent computation.
        #[arg(long)]
        oracle: Option<Oracle>,
    },
    /// Compose two cacti: A ∘_slot B.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        slot: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Act with a cactus at a point of the simplex (plain) or cyclic simplex.
    Act {
        #[arg(long)]
        cactus: PathBuf,
        /// Comma separated rationals: `x1,…,xk` in plain mode, circle points
        /// `x0,x1,…,xk` in cyclic order in cyclic mode.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        points: String,
        #[arg(long, value_enum, default_value_t = Mode::Plain)]
        mode: Mode,
        /// Return a term of the free operad instead of a value in (ℚ, +).
        #[arg(long)]
        symbolic: bool,
        /// Also print the action tree in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// The tree of lobes and intersection points.
    Tree {
        cactus: PathBuf,
        #[arg(long, value_enum, default_value_t = TreeFormat::Dot)]
        format: TreeFormat,
    },
    /// Draw a cactus.
    Render {
        cactus: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Svg)]
        format: RenderFormat,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Poset,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    Operad,
    Symmetric,
    Multiplication,
    Cyclic,
    Cosimplicial,
    Action,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Cyclic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFormat {
    Dot,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Svg,
}

/// Exit status of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    SuiteFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::SuiteFailed => 1,
        }
    }
}

pub fn read_cactus(path: &Path) -> Result<FmsElement> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn parse_points(s: &str) -> Result<Vec<Rat>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Rat>().map_err(|e| anyhow!("{e}")))
        .collect()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        bail!("n must lie in 1..={MAX_N}");
    }
    Ok(())
}

/// Runs one command, writing its report to `out`.
pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        Command::Cells { n, m } => {
            check_size(*n)?;
            let cells = enumerate_cells_limited(*n, *m, CELL_LIMIT)?;
            let by_dim: Vec<Vec<String>> = cells
                .iter()
                .map(|d| d.iter().map(|c| c.to_string()).collect())
                .collect();
            let fvector: Vec<usize> = cells.iter().map(Vec::len).collect();
            writeln!(
                out,
                "{}",
                pretty(&json!({"n": n, "m": m, "fvector": fvector, "cells": by_dim}))
            )?;
            Ok(Status::Ok)
        }
        Command::Homology { n, m, oracle } => {
            check_size(*n)?;
            let cx = ChainComplex::build(*n, *m, CELL_LIMIT)?;
            let report = homology_of(&cx)?;
            let mut v = serde_json::to_value(&report)?;
            let mut status = Status::Ok;
            if let Some(Oracle::Poset) = oracle {
                if *m != 2 {
                    bail!("the poset oracle covers m = 2 only");
                }
                let betti = poset_oracle_homology(*n, CHAIN_LIMIT)?;
                let agree = betti == report.betti;
                if !agree {
                    status = Status::SuiteFailed;
                }
                v["oracle"] = json!({"kind": "poset", "betti": betti, "agrees": agree});
            }
            writeln!(out, "{}", pretty(&v))?;
            Ok(status)
        }
        Command::Compose { a, b, slot } => {
            let (x, y) = (read_cactus(a)?, read_cactus(b)?);
            let c = x.compose(*slot, &y)?;
            writeln!(out, "{}", pretty(&serde_json::to_value(&c)?))?;
            Ok(Status::Ok)
        }
        Command::Verify {
            suite,
            seed,
            samples,
        } => {
            let s = match suite {
                SuiteArg::Operad => Suite::Operad,
                SuiteArg::Symmetric => Suite::Symmetric,
                SuiteArg::Multiplication => Suite::Multiplication,
                SuiteArg::Cyclic => Suite::Cyclic,
                SuiteArg::Cosimplicial => Suite::Cosimplicial,
                SuiteArg::Action => Suite::Action,
            };
            let reports = run_suite(s, *seed, *samples);
            let ok = reports.iter().all(|r| r.passed());
            for r in &reports {
                writeln!(out, "{}", r.summary())?;
                for c in &r.failures {
                    writeln!(out, "  {}: {}", c.identity, c.detail)?;
                }
            }
            Ok(if ok { Status::Ok } else { Status::SuiteFailed })
        }
        Command::Act {
            cactus,
            points,
            mode,
            symbolic,
            dot,
        } => {
            let e = read_cactus(cactus)?;
            let xs = parse_points(points)?;
            let p = match mode {
                Mode::Plain => EvalPoint::Plain(DeltaPoint::new(xs)?),
                Mode::Cyclic => {
                    let cs: Vec<CirclePoint> = xs.into_iter().map(CirclePoint::new).collect();
                    EvalPoint::Cyclic(LambdaPoint::from_circle(&cs)?)
                }
            };
            let conv = SlotConvention::ExitPoint;
            let tree = action_tree(&e, &p, conv)?;
            let c = tree.census();
            let mut v = json!({
                "mode": if p.is_cyclic() { "cyclic" } else { "plain" },
                "degree": p.degree(),
                "census": {
                    "lobes": c.lobes,
                    "intersections": c.intersections,
                    "special": c.special,
                    "leaves": c.leaves,
                },
                "tree": tree.to_json(),
            });
            if *symbolic {
                let t = act(&FreeOperad, &e, &symbols(e.arity()), &p, conv)?;
                v["term"] = json!(t.to_string());
                v["term_json"] = t.to_json();
            } else {
                let o = MonoidOperad::cyclic(AdditiveRationals)?;
                let fams: Vec<Family<'_, Vec<Rat>>> = (1..=e.arity())
                    .map(|j| loop_family(Rat::from_int(j as i64)))
                    .collect();
                let value = act(&o, &e, &fams, &p, conv)?;
                v["instance"] = json!("loops x ↦ j·x(1−x) in (Q, +)");
                v["value"] = serde_json::to_value(&value)?;
            }
            writeln!(out, "{}", pretty(&v))?;
            if *dot {
                write!(out, "{}", tree.to_dot("action"))?;
            }
            Ok(Status::Ok)
        }
        Command::Tree { cactus, format } => {
            let e = read_cactus(cactus)?;
            let p = e
                .partition()
                .ok_or_else(|| anyhow!("the point cactus has no lobes"))?;
            let t = associated_tree(p)?;
            match format {
                TreeFormat::Dot => write!(
                    out,
                    "{}",
                    t.to_dot("cactus", &mut |v: &CactusVertex| match v {
                        CactusVertex::Lobe { label } => format!("lobe {label}"),
                        CactusVertex::Intersection { breakpoints } => format!("• {breakpoints:?}"),
                    })
                )?,
                TreeFormat::Json => writeln!(out, "{}", pretty(&serde_json::to_value(&t)?))?,
            }
            Ok(Status::Ok)
        }
        Command::Render { cactus, format } => {
            let e = read_cactus(cactus)?;
            match format {
                RenderFormat::Svg => write!(out, "{}", render::render_svg(&e)?)?,
            }
            Ok(Status::Ok)
        }
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(s) => s.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}
