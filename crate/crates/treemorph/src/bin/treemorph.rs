//! Command-line front end: generate drawings, inspect decompositions,
//! morph, verify, and export frames.

use clap::{Parser, Subcommand};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;
use treemorph::decomp::{
    depth_edge_sets, heavy_decomposition, long_path_decomposition, tradeoff_partition,
};
use treemorph::io::{generate, render_obj, render_svg, trace_frames, DrawingFile, Shape};
use treemorph::lift_edges::morph_to_canonical_alg2;
use treemorph::lift_paths::{morph_between, morph_to_canonical_alg1};
use treemorph::model::{GridDrawing, RootedTree};
use treemorph::morph::MorphTrace;
use treemorph::tradeoff::morph_to_canonical_tradeoff;
use treemorph::verify::{check_trace, CheckOptions};

#[derive(Parser)]
#[command(name = "treemorph", about = "3D morphs between planar tree drawings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random tree with a crossing-free planar layout
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "random")]
        shape: Shape,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the path / heavy / depth-level decompositions of a drawing's tree
    Decompose {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Morph a drawing to canonical form, or between two drawings
    Morph {
        input: PathBuf,
        input2: Option<PathBuf>,
        #[arg(long, default_value = "paths")]
        alg: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a trace: exact crossing-freedom, integrality, chaining
    Verify {
        trace: PathBuf,
        #[arg(long, default_value_t = 8)]
        samples: u32,
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        separation: bool,
    },
    /// Print summary metrics of a trace
    Stats { trace: PathBuf },
    /// Export a trace as JSON or as numbered SVG/OBJ frames
    Export {
        trace: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long, default_value_t = 1)]
        frames_per_step: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_drawing(path: &Path) -> Result<(RootedTree, GridDrawing), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: DrawingFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.into_parts().map_err(|e| e.to_string())
}

fn read_trace(path: &Path) -> Result<MorphTrace, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => fail(msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Gen { n, seed, shape, out } => {
            if n == 0 {
                return Err("n must be at least 1".into());
            }
            let (tree, drawing) = generate(n, seed, shape);
            let bad = treemorph::verify::check_drawing(&tree, &drawing);
            if !bad.is_empty() {
                return Err(format!("generated layout failed verification: {bad:?}"));
            }
            let file = DrawingFile::from_parts(&tree, &drawing);
            write_out(out.as_deref(), &serde_json::to_string_pretty(&file).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Decompose { input, out } => {
            let (tree, _) = read_drawing(&input)?;
            let long = long_path_decomposition(&tree);
            let heavy = heavy_decomposition(&tree);
            let part = tradeoff_partition(&tree);
            let doc = json!({
                "long_paths": long.paths.iter().map(|p| &p.vertices).collect::<Vec<_>>(),
                "heavy_paths": heavy.paths.iter().map(|p| &p.vertices).collect::<Vec<_>>(),
                "rpw": heavy.width(&tree),
                "depth_edge_sets": depth_edge_sets(&tree),
                "tradeoff": {
                    "long_paths": part.long_paths.iter().map(|p| &p.vertices).collect::<Vec<_>>(),
                    "short_sets": part.short_sets,
                },
            });
            write_out(out.as_deref(), &serde_json::to_string_pretty(&doc).unwrap())?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Morph {
            input,
            input2,
            alg,
            out,
        } => {
            let (tree, from) = read_drawing(&input)?;
            let to_canonical = match alg.as_str() {
                "paths" => morph_to_canonical_alg1,
                "edges" => morph_to_canonical_alg2,
                "tradeoff" => morph_to_canonical_tradeoff,
                other => return Err(format!("unknown algorithm {other:?}")),
            };
            let start = Instant::now();
            let trace = match input2 {
                Some(p2) => {
                    let (tree2, to) = read_drawing(&p2)?;
                    if tree2 != tree {
                        return Err("the two drawings describe different trees".into());
                    }
                    morph_between(&tree, &from, &to, to_canonical).map_err(|e| e.to_string())?
                }
                None => to_canonical(&tree, &from).map_err(|e| e.to_string())?,
            };
            let elapsed = start.elapsed();
            let mut max_coord = 0i64;
            let (mut lo, mut hi) = trace.initial.bounding_box();
            for s in &trace.steps {
                let (a, b) = s.to.bounding_box();
                lo.x = lo.x.min(a.x);
                lo.y = lo.y.min(a.y);
                lo.z = lo.z.min(a.z);
                hi.x = hi.x.max(b.x);
                hi.y = hi.y.max(b.y);
                hi.z = hi.z.max(b.z);
            }
            for p in trace
                .steps
                .iter()
                .flat_map(|s| &s.to.pos)
                .chain(&trace.initial.pos)
            {
                max_coord = max_coord.max(p.x.abs()).max(p.y.abs()).max(p.z.abs());
            }
            write_out(out.as_deref(), &serde_json::to_string(&trace).unwrap())?;
            eprintln!(
                "steps: {}  bbox: [{},{},{}]..[{},{},{}]  max|coord|: {}  time: {:.3}s",
                trace.steps.len(),
                lo.x,
                lo.y,
                lo.z,
                hi.x,
                hi.y,
                hi.z,
                max_coord,
                elapsed.as_secs_f64()
            );
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            trace,
            samples,
            strict,
            separation,
        } => {
            let trace = read_trace(&trace)?;
            let opts = CheckOptions {
                samples,
                strict,
                with_separation: separation,
                ..Default::default()
            };
            let report = check_trace(&trace.tree, &trace, &opts);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Stats { trace } => {
            let trace = read_trace(&trace)?;
            let report = check_trace(&trace.tree, &trace, &CheckOptions::default());
            let (lo, hi) = (report.bbox_lo, report.bbox_hi);
            println!("vertices        {}", trace.tree.n);
            println!("steps           {}", report.steps);
            println!(
                "grid            {} x {} x {}",
                hi.x - lo.x + 1,
                hi.y - lo.y + 1,
                hi.z - lo.z + 1
            );
            println!("crossing-free   {}", report.crossing_free);
            println!("integral        {}", report.integral);
            println!("chained         {}", report.chained);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Export {
            trace,
            format,
            frames_per_step,
            out,
        } => {
            let trace = read_trace(&trace)?;
            match format.as_str() {
                "json" => {
                    std::fs::write(&out, serde_json::to_string_pretty(&trace).unwrap())
                        .map_err(|e| format!("{}: {e}", out.display()))?;
                }
                "svg-frames" | "obj-frames" => {
                    std::fs::create_dir_all(&out).map_err(|e| format!("{}: {e}", out.display()))?;
                    let frames = trace_frames(&trace, frames_per_step);
                    for (i, frame) in frames.iter().enumerate() {
                        let (ext, body) = if format == "svg-frames" {
                            ("svg", render_svg(&trace.tree, frame))
                        } else {
                            ("obj", render_obj(&trace.tree, frame))
                        };
                        let path = out.join(format!("frame_{i:05}.{ext}"));
                        std::fs::write(&path, body)
                            .map_err(|e| format!("{}: {e}", path.display()))?;
                    }
                    eprintln!("wrote {} frames to {}", frames.len(), out.display());
                }
                other => return Err(format!("unknown format {other:?}")),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
