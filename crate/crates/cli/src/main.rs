use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bridge_core::{
    build_bridge_diagram, certify, find_witness, render_svg, sweep_snapshots, ArcSystem,
    BridgeDiagram, Certificate, MorseWord, PlatWord, RenderOptions,
};
use clap::{Parser, Subcommand};

/// Bridge diagrams of plats and certificates of Hempel distance > 1.
#[derive(Debug, Parser)]
#[command(name = "bridgecert", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this file (a directory for `snapshots`).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a plat or a normal form is well formed.
    Validate { file: PathBuf },
    /// Sweep a plat and print the normal form of its upper arcs.
    Build { file: PathBuf },
    /// Write the upper arcs on every level, one file per level.
    Snapshots { file: PathBuf },
    /// Evaluate the well-mixed condition on every family.
    Check { file: PathBuf },
    /// Certify Hempel distance > 1 and local minimality.
    Certify { file: PathBuf },
    /// Look for a curve showing the distance is at most 2.
    Witness { file: PathBuf },
    /// Width and thick/thin levels of a Morse word such as "vv^^".
    Width { word: String },
    /// Draw a diagram as SVG.
    Render {
        file: PathBuf,
        /// Draw the arcs after this many letters instead of the whole word.
        #[arg(long)]
        level: Option<usize>,
    },
}

/// What an input file holds.
enum Input {
    Plat(PlatWord),
    Arcs(ArcSystem),
}

fn load(path: &Path) -> Result<Input> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.get("word").is_some() {
        Ok(Input::Plat(PlatWord::from_json(&text)?))
    } else if value.get("crossings").is_some() {
        Ok(Input::Arcs(ArcSystem::from_json(&text)?))
    } else {
        bail!("{}: neither a plat nor a normal form", path.display())
    }
}

fn load_plat(path: &Path) -> Result<PlatWord> {
    match load(path)? {
        Input::Plat(p) => Ok(p),
        Input::Arcs(_) => bail!("{}: expected a plat, found a normal form", path.display()),
    }
}

fn load_diagram(path: &Path) -> Result<BridgeDiagram> {
    Ok(match load(path)? {
        Input::Plat(p) => build_bridge_diagram(&p)?,
        Input::Arcs(a) => BridgeDiagram::from_upper(a),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pair_list(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(r, s)| format!("{{{r},{s}}}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn certificate_text(cert: &Certificate) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut lines = Vec::new();
    if let Some(name) = &cert.name {
        lines.push(format!("name: {name}"));
    }
    lines.push(format!("bridges: {} (level S_{})", cert.n, cert.level));
    lines.push(format!("well-mixed: {}", yes(cert.well_mixed)));
    lines.push(format!("Hempel distance > 1: {}", yes(cert.distance_gt_1)));
    lines.push(format!("locally minimal: {}", yes(cert.locally_minimal)));
    match &cert.witness {
        Some(w) => lines.push(format!(
            "witness: closure of δ_{} (curve around p{}, p{}) misses upper arc {} and lower arc {}",
            w.gap, w.encircled[0], w.encircled[1], w.upper, w.lower
        )),
        None => lines.push("witness: none".into()),
    }
    for f in &cert.failures {
        lines.push(format!(
            "failed ({},{},{}): missing {}",
            f.i,
            f.j,
            f.hemisphere.symbol(),
            pair_list(&f.missing)
        ));
    }
    lines.push(format!("conclusion: {}", cert.status.describe()));
    lines.join("\n") + "\n"
}

/// Runs a command and returns its exit code; errors map to 2 in `main`.
fn run(cli: Cli) -> Result<u8> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Validate { file } => {
            let text = match load(&file)? {
                Input::Plat(p) if cli.json => p.to_json() + "\n",
                Input::Plat(p) => {
                    let components = p.closure_components();
                    let closure = if components == 1 {
                        "a knot".to_string()
                    } else {
                        format!("a {components}-component link")
                    };
                    format!(
                        "valid plat: n={}, {} letters, closure is {closure}\n",
                        p.n(),
                        p.len()
                    )
                }
                Input::Arcs(a) if cli.json => a.to_json() + "\n",
                Input::Arcs(a) => format!(
                    "valid normal form: n={}, {} crossings, reduced: {}\n",
                    a.n(),
                    a.intersection_number(),
                    a.is_reduced()
                ),
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Build { file } => {
            let d = build_bridge_diagram(&load_plat(&file)?)?;
            emit(out, &(d.upper().to_json() + "\n"))?;
            Ok(0)
        }
        Command::Snapshots { file } => {
            let Some(dir) = out else {
                bail!("snapshots needs --out <directory>");
            };
            let levels = sweep_snapshots(&load_plat(&file)?)?;
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let digits = (levels.len() - 1).to_string().len();
            let mut summary = Vec::new();
            for (k, arcs) in levels.iter().enumerate() {
                let path = dir.join(format!("level_{k:0digits$}.json"));
                fs::write(&path, arcs.to_json() + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
                summary.push(serde_json::json!({
                    "level": k,
                    "intersection_number": arcs.intersection_number(),
                    "file": path.display().to_string(),
                }));
            }
            if cli.json {
                println!("{}", serde_json::Value::Array(summary));
            } else {
                for (k, arcs) in levels.iter().enumerate() {
                    println!("S_{k}: {} crossings", arcs.intersection_number());
                }
            }
            Ok(0)
        }
        Command::Check { file } => {
            let report = bridge_core::check_all(&load_diagram(&file)?);
            let text = if cli.json {
                serde_json::to_string(&report)? + "\n"
            } else {
                let mut s = format!("{:<10} {:>6}  {:<6} missing\n", "key", "size", "status");
                for r in &report.results {
                    let key = format!("({},{},{})", r.i, r.j, r.hemisphere.symbol());
                    let status = if r.satisfied { "ok" } else { "FAIL" };
                    s += &format!(
                        "{key:<10} {:>6}  {status:<6} {}\n",
                        r.family_size,
                        pair_list(&r.missing)
                    );
                }
                let verdict = if report.overall {
                    "well-mixed"
                } else {
                    "not well-mixed"
                };
                s + &format!("overall: {verdict}\n")
            };
            emit(out, &text)?;
            Ok(if report.overall { 0 } else { 1 })
        }
        Command::Certify { file } => {
            let cert = certify(&load_diagram(&file)?);
            let text = if cli.json {
                serde_json::to_string(&cert)? + "\n"
            } else {
                certificate_text(&cert)
            };
            emit(out, &text)?;
            Ok(if cert.locally_minimal { 0 } else { 1 })
        }
        Command::Witness { file } => {
            let witness = find_witness(&load_diagram(&file)?)?;
            let text = if cli.json {
                serde_json::to_string(&witness)? + "\n"
            } else {
                match &witness {
                    Some(w) => format!(
                        "gap {} (curve around p{}, p{}), upper arc {}, lower arc {}\n",
                        w.gap, w.encircled[0], w.encircled[1], w.upper, w.lower
                    ),
                    None => "no witness\n".into(),
                }
            };
            emit(out, &text)?;
            Ok(if witness.is_some() { 0 } else { 1 })
        }
        Command::Width { word } => {
            let w: MorseWord = word.parse()?;
            let levels = w.classify_levels();
            let text = if cli.json {
                serde_json::json!({
                    "word": w.to_string(),
                    "width": w.width(),
                    "levels": levels,
                    "bridge_position": w.is_bridge_position(),
                })
                .to_string()
                    + "\n"
            } else {
                let names: Vec<String> = levels.iter().map(ToString::to_string).collect();
                format!(
                    "width: {}\nlevels: {}\nbridge position: {}\n",
                    w.width(),
                    names.join(" "),
                    if w.is_bridge_position() { "yes" } else { "no" }
                )
            };
            emit(out, &text)?;
            Ok(0)
        }
        Command::Render { file, level } => {
            let (arcs, title) = match (load(&file)?, level) {
                (Input::Plat(p), level) => {
                    let mut levels = sweep_snapshots(&p)?;
                    let k = level.unwrap_or(levels.len() - 1);
                    if k >= levels.len() {
                        bail!("level {k} out of range 0..={}", levels.len() - 1);
                    }
                    let name = p.name().unwrap_or("plat").to_string();
                    (levels.swap_remove(k), format!("{name}, S_{k}"))
                }
                (Input::Arcs(a), None) => (a, "normal form".to_string()),
                (Input::Arcs(_), Some(_)) => bail!("--level applies to plat input only"),
            };
            let options = RenderOptions {
                title: Some(title),
                ..RenderOptions::default()
            };
            emit(out, &render_svg(&arcs, &options))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
