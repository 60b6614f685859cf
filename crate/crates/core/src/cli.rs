//! Command-line front end.  Reports are JSON; the exit code is 0 when every
//! requested check passes, 1 when one fails, and 2 on invalid input.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charmap::{conjugated_subgroup, CharMap};
use crate::complex::{
    coset_cell, flip_path, pentagon_cell, pentagon_pairs, relation_element, scramble, square_cell, square_pairs,
    suborbits, CellJob, TwoCell, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::moebius::MoebiusMap;
use crate::presentation::{emit_presentation, scan_stabilizers};
use crate::render::render_svg;
use crate::subgroup::Subgroup;
use crate::tessellation::Tessellation;

#[derive(Parser, Debug)]
#[command(name = "solenoid", version, about = "Flip complexes of Farey-type tessellations and their relations")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Emit the truncated presentation document.
    Present {
        #[arg(long, default_value_t = 12)]
        max_index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a shortest flip path.
    Path(PathArgs),
    /// Draw a tessellation as SVG.
    Render {
        #[arg(long, default_value = "gamma2")]
        group: String,
        /// Comma-separated orbit labels flipped in order, starting from the Farey tessellation.
        #[arg(long, default_value = "")]
        flips: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Subgroup queries.
    Subgroup {
        #[command(subcommand)]
        command: SubgroupCommand,
    },
}

#[derive(Subcommand, Debug)]
enum SubgroupCommand {
    /// Index, torsion, normality, coset tables and generators.
    Info { group: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Suite {
    Pentagon,
    Square,
    Coset,
    Conjugation,
    Stabilizers,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    /// Group for pentagon, square and conjugation suites (default: gamma3; conjugation also runs gamma2).
    #[arg(long)]
    group: Option<String>,
    /// Subgroup for the coset suite.
    #[arg(long, default_value = "gamma4")]
    sub: String,
    /// Check every admissible pair (the default; accepted for clarity).
    #[arg(long)]
    all: bool,
    /// Random suborbit orderings per coset cell, besides the identity ordering.
    #[arg(long, default_value_t = 10)]
    orderings: usize,
    /// Random tessellations per group for the conjugation suite.
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[arg(long, default_value_t = 6)]
    max_index: usize,
    #[arg(long, default_value_t = 2)]
    radius: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Compare relations against a deliberately wrong prediction.
    #[arg(long, hide = true)]
    corrupt_prediction: bool,
}

#[derive(Args, Debug)]
struct PathArgs {
    #[arg(long, conflicts_with_all = ["from", "to"])]
    group: Option<String>,
    /// Random flips applied to the Farey tessellation to produce the target.
    #[arg(long, requires = "group")]
    scramble: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tessellation JSON files.
    #[arg(long, requires = "to")]
    from: Option<PathBuf>,
    #[arg(long, requires = "from")]
    to: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Outcome of a command: a JSON report and whether every check passed.
struct Report {
    value: Value,
    passed: bool,
}

fn group_arg(name: &str) -> Result<Arc<Subgroup>> {
    Ok(Arc::new(Subgroup::named(name)?))
}

fn emit(value: &Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn bfs_budget() -> Result<usize> {
    match std::env::var("SOLENOID_BFS_BUDGET") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("SOLENOID_BFS_BUDGET={v}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn cell_check(cell: &TwoCell, corrupt: bool) -> Result<(Value, bool)> {
    let r = relation_element(cell)?;
    let predicted = if corrupt { r.predicted.compose(&MoebiusMap::rho()) } else { r.predicted.clone() };
    let pass = r.holds && r.element == predicted;
    Ok((
        json!({
            "kind": cell.kind,
            "labels": r.labels,
            "closed": cell.is_closed(),
            "element": r.element,
            "tracked": r.tracked,
            "predicted": predicted,
            "prediction": r.prediction,
            "rigid": r.rigid,
            "first_k_edges_close": r.first_k_edges_close,
            "pass": pass,
        }),
        pass,
    ))
}

fn run_cells(suite: Suite, jobs: Vec<(Value, CellJob)>, corrupt: bool, empty_note: &str) -> Result<Report> {
    let checks: Vec<(Value, bool)> = jobs
        .par_iter()
        .map(|(input, make)| {
            let (mut v, pass) = cell_check(&make()?, corrupt)?;
            v["input"] = input.clone();
            Ok((v, pass))
        })
        .collect::<Result<_>>()?;
    let passed = checks.iter().all(|(_, p)| *p);
    let mut notes = Vec::new();
    if checks.is_empty() {
        notes.push(empty_note.to_string());
    }
    Ok(Report {
        value: json!({
            "suite": suite,
            "passed": passed,
            "count": checks.len(),
            "checks": checks.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
            "notes": notes,
        }),
        passed,
    })
}

fn verify_two_orbit(a: &VerifyArgs, suite: Suite) -> Result<Report> {
    let name = a.group.clone().unwrap_or_else(|| "gamma3".into());
    let k = group_arg(&name)?;
    let pairs = if suite == Suite::Pentagon { pentagon_pairs(&k) } else { square_pairs(&k) };
    let jobs = pairs
        .into_iter()
        .map(|(e1, e2)| {
            let k = k.clone();
            let input = json!({"group": name, "e1": e1, "e2": e2});
            let make: CellJob = if suite == Suite::Pentagon {
                Box::new(move || pentagon_cell(&k, &e1, &e2))
            } else {
                Box::new(move || square_cell(&k, &e1, &e2))
            };
            (input, make)
        })
        .collect();
    run_cells(suite, jobs, a.corrupt_prediction, "no admissible pairs")
}

fn verify_coset(a: &VerifyArgs) -> Result<Report> {
    let name = a.group.clone().unwrap_or_else(|| "gamma2".into());
    let (k, sub) = (group_arg(&name)?, group_arg(&a.sub)?);
    let t = Tessellation::farey_arc(k.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut jobs: Vec<(Value, CellJob)> = Vec::new();
    for label in 0..t.label_count() {
        let flipped = match t.flip(label) {
            Ok((f, _)) => f,
            Err(Error::NotFlippable(..)) => continue,
            Err(e) => return Err(e),
        };
        let n = suborbits(&flipped, &flipped.refine_arc(sub.clone())?, label).len();
        let mut orderings = vec![(0..n).collect::<Vec<_>>()];
        for _ in 0..a.orderings {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(&mut rng);
            orderings.push(o);
        }
        for ordering in orderings {
            let (k, s, e) = (k.clone(), sub.clone(), t.orbit_rep(label));
            let input = json!({"group": name, "sub": a.sub, "edge": e, "ordering": ordering});
            jobs.push((input, Box::new(move || coset_cell(&k, &s, &e, &ordering))));
        }
    }
    run_cells(Suite::Coset, jobs, a.corrupt_prediction, "no flippable orbits")
}

fn verify_conjugation(a: &VerifyArgs) -> Result<Report> {
    let names = match &a.group {
        Some(n) => vec![n.clone()],
        None => vec!["gamma2".into(), "gamma3".into()],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut inputs = Vec::new();
    for name in &names {
        let k = group_arg(name)?;
        let t = Tessellation::farey_arc(k.clone());
        for _ in 0..a.samples {
            let depth = rng.gen_range(1..=4);
            let s = scramble(&t, depth, rng.gen())?;
            inputs.push((name.clone(), k.index(), s));
        }
    }
    let checks: Vec<(Value, bool)> = inputs
        .into_par_iter()
        .map(|(name, index, s)| {
            let h = Arc::new(CharMap::distinguished(Arc::new(s.clone())));
            let (found, error) = match conjugated_subgroup(&h) {
                Ok(c) => (Some(c.index()), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let pass = found == Some(index);
            (
                json!({"group": name, "flips": s.history(), "index": index, "conjugated_index": found, "error": error, "pass": pass}),
                pass,
            )
        })
        .collect();
    let passed = checks.iter().all(|(_, p)| *p);
    Ok(Report {
        value: json!({
            "suite": Suite::Conjugation,
            "passed": passed,
            "count": checks.len(),
            "checks": checks.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        }),
        passed,
    })
}

fn verify_stabilizers(a: &VerifyArgs) -> Result<Report> {
    let scan = scan_stabilizers(a.max_index, a.radius)?;
    let full: Vec<_> = scan.entries.iter().filter(|e| e.stabilizer_index == 1).collect();
    let note = if scan.unique_full_stabilizer {
        "unique full-stabilizer vertex: tau_star".to_string()
    } else {
        format!("{} vertices with full stabilizer, not all equal to tau_star", full.len())
    };
    Ok(Report {
        value: json!({
            "suite": Suite::Stabilizers,
            "passed": scan.unique_full_stabilizer,
            "count": scan.entries.len(),
            "scan": scan,
            "notes": [note],
        }),
        passed: scan.unique_full_stabilizer,
    })
}

fn verify(a: &VerifyArgs) -> Result<Report> {
    match a.suite {
        Suite::Pentagon | Suite::Square => verify_two_orbit(a, a.suite),
        Suite::Coset => verify_coset(a),
        Suite::Conjugation => verify_conjugation(a),
        Suite::Stabilizers => verify_stabilizers(a),
        Suite::All => {
            let mut reports = Vec::new();
            let mut passed = true;
            for suite in [Suite::Pentagon, Suite::Square, Suite::Coset, Suite::Conjugation, Suite::Stabilizers] {
                let sub = VerifyArgs { suite, group: None, out: None, ..a.clone_flags() };
                let r = verify(&sub)?;
                passed &= r.passed;
                reports.push(r.value);
            }
            Ok(Report { value: json!({"suite": Suite::All, "passed": passed, "suites": reports}), passed })
        }
    }
}

impl VerifyArgs {
    fn clone_flags(&self) -> VerifyArgs {
        VerifyArgs {
            suite: self.suite,
            group: self.group.clone(),
            sub: self.sub.clone(),
            all: self.all,
            orderings: self.orderings,
            samples: self.samples,
            max_index: self.max_index,
            radius: self.radius,
            seed: self.seed,
            out: self.out.clone(),
            corrupt_prediction: self.corrupt_prediction,
        }
    }
}

fn path(a: &PathArgs) -> Result<Report> {
    let budget = bfs_budget()?;
    let (from, to, input) = match (&a.group, &a.from, &a.to) {
        (Some(name), None, None) => {
            let n = a.scramble.ok_or_else(|| Error::Parse("--group needs --scramble".into()))?;
            let t = Tessellation::farey_arc(group_arg(name)?);
            let s = scramble(&t, n, a.seed)?;
            let input = json!({"group": name, "scramble": n, "seed": a.seed, "scramble_flips": s.history()});
            (t, s, input)
        }
        (None, Some(f), Some(g)) => {
            let input = json!({"from": f, "to": g});
            (Tessellation::load(f)?, Tessellation::load(g)?, input)
        }
        _ => return Err(Error::Parse("give either --group G --scramble N or --from F1 --to F2".into())),
    };
    let labels = flip_path(&from, &to, budget)?;
    let start = if from.group() == to.group() {
        from.clone()
    } else {
        from.refine_arc(Arc::new(from.group().intersect(to.group())))?
    };
    let verified = start.flip_sequence(&labels)?.equals(&to);
    Ok(Report {
        value: json!({"input": input, "budget": budget, "length": labels.len(), "labels": labels, "verified": verified}),
        passed: verified,
    })
}

fn render(group: &str, flips: &str, depth: usize, out: &PathBuf) -> Result<Report> {
    let labels: Vec<usize> = flips
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Error::Parse(format!("bad flip label {s:?}"))))
        .collect::<Result<_>>()?;
    let t = Tessellation::farey_arc(group_arg(group)?).flip_sequence(&labels)?;
    std::fs::write(out, render_svg(&t, depth))?;
    Ok(Report { value: json!({"written": out, "flips": labels, "depth": depth}), passed: true })
}

fn subgroup_info(name: &str) -> Result<Report> {
    let k = group_arg(name)?;
    let t = Tessellation::farey_arc(k.clone());
    let value = json!({
        "name": name,
        "index": k.index(),
        "torsion_free": k.is_torsion_free(),
        "normal": k.is_normal(),
        "sigma": k.sigma_table(),
        "rho": k.rho_table(),
        "generators": k.schreier_generators(),
        "edge_orbits": t.edge_orbits(),
        "triangle_orbits": t.triangles().len(),
    });
    Ok(Report { value, passed: true })
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::InvalidSubgroup(_)
        | Error::InvalidLevel(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::Precondition(_)
        | Error::NotAnEdge(_)
        | Error::NoSuchOrbit(_)
        | Error::NotContained
        | Error::Torsion
        | Error::InvalidTessellation(_)
        | Error::NotFlippable(..) => 2,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Verify(a) => {
            let r = verify(&a)?;
            emit(&r.value, a.out.as_ref())?;
            Ok(r)
        }
        Command::Present { max_index, out } => {
            let doc = emit_presentation(max_index)?;
            let passed = doc.all_verified();
            let value = serde_json::to_value(&doc)?;
            emit(&value, out.as_ref())?;
            Ok(Report { value, passed })
        }
        Command::Path(a) => {
            let r = path(&a)?;
            emit(&r.value, a.out.as_ref())?;
            Ok(r)
        }
        Command::Render { group, flips, depth, out } => {
            let r = render(&group, &flips, depth, &out)?;
            emit(&r.value, None)?;
            Ok(r)
        }
        Command::Subgroup { command: SubgroupCommand::Info { group } } => {
            let r = subgroup_info(&group)?;
            emit(&r.value, None)?;
            Ok(r)
        }
    }
}

/// Entry point shared by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(r) if r.passed => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
