//! Command-line front end: reads grid-diagram files, runs the library's
//! invariants, searches, and atlas assembly, and prints deterministic text.
//!
//! Exit status: 0 on success, 1 on domain errors (bad files, unknown knots,
//! invariant mismatches), 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use gridatlas::{
    assemble_atlas, census, connect, enumerate, export_atlas, find_stuck, grid_to_front,
    render_mountain_range, ruling_polynomial, theta_obstruction, AtlasBudget, ConnectOutcome, Exec,
    GridDiagram, MoveMode, RenderFormat, RulingMode, SearchLimits,
};
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "gridatlas",
    about = "Grid-diagram toolkit: Legendrian/transverse invariants, move searches, knot atlases",
    arg_required_else_help = true
)]
struct Cli {
    /// Run library internals sequentially instead of data-parallel.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

/// Search budget flags shared by the exploring subcommands.
#[derive(Args)]
struct BudgetArgs {
    /// Largest grid size the search may visit (default: input size + 2).
    #[arg(long)]
    max_size: Option<usize>,
    /// Cap on visited canonical forms.
    #[arg(long)]
    max_visited: Option<usize>,
    /// Wall-clock budget in milliseconds.
    #[arg(long)]
    max_millis: Option<u64>,
}

impl BudgetArgs {
    fn limits(&self) -> SearchLimits {
        let d = SearchLimits::default();
        SearchLimits {
            max_visited: self.max_visited.unwrap_or(d.max_visited),
            max_millis: self.max_millis.unwrap_or(d.max_millis),
        }
    }
}

fn parse_mode(s: &str) -> Result<MoveMode, String> {
    MoveMode::from_str(s).map_err(|_| format!("expected one of: top, leg, trans (got `{s}`)"))
}

fn parse_format(s: &str) -> Result<RenderFormat, String> {
    match s {
        "txt" => Ok(RenderFormat::Txt),
        "svg" => Ok(RenderFormat::Svg),
        _ => Err(format!("expected one of: txt, svg (got `{s}`)")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the classical invariants tb, r, sl of a diagram file.
    Invariants { file: PathBuf },
    /// Apply a move path to a diagram, or list its legal moves.
    Moves {
        file: PathBuf,
        /// Moves to apply in order, e.g. "STAB X NW col 2"; with none
        /// given, the legal moves are listed instead.
        steps: Vec<String>,
        /// Move set: top (full), leg (Legendrian), trans (transverse).
        #[arg(long, default_value = "top", value_parser = parse_mode)]
        mode: MoveMode,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a move path connecting two diagram files.
    Connect {
        a: PathBuf,
        b: PathBuf,
        /// Move set: top (full), leg (Legendrian), trans (transverse).
        #[arg(long, default_value = "top", value_parser = parse_mode)]
        mode: MoveMode,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// List all canonical knot diagrams of one grid size, one per line.
    Enumerate {
        n: usize,
        /// Skip diagrams that destabilize immediately.
        #[arg(long)]
        prune: bool,
    },
    /// Census of knot types among all diagrams up to a grid size.
    Classify {
        max_size: usize,
        /// Skip diagrams that destabilize immediately.
        #[arg(long)]
        prune: bool,
    },
    /// Assemble a knot's Legendrian class table and print it as JSON.
    Atlas {
        /// Knot name from the bundled table, e.g. 3_1 or m(5_2).
        #[arg(long)]
        knot: String,
        /// Enumerate seed diagrams up to this size (default: max-size - 2).
        #[arg(long)]
        max_enum_size: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Render a knot's Legendrian mountain range.
    Render {
        /// Knot name from the bundled table, e.g. 3_1 or m(5_2).
        #[arg(long)]
        knot: String,
        /// Output format: txt or svg.
        #[arg(long, default_value = "txt", value_parser = parse_format)]
        format: RenderFormat,
        /// Enumerate seed diagrams up to this size (default: max-size - 2).
        #[arg(long)]
        max_enum_size: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Report whether the transverse obstruction class is nonzero.
    Theta { file: PathBuf },
    /// Print a diagram's normal ruling polynomial in ascending powers of z.
    Ruling {
        file: PathBuf,
        /// Count only zero-graded rulings (requires rotation number 0).
        #[arg(long)]
        graded: bool,
    },
    /// Scan one grid size for diagrams of smaller-index knots that neither
    /// destabilize nor reach a destabilizable diagram by size-preserving
    /// moves.
    Stuck { n: usize },
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`gridatlas ... | head`)
    // instead of panicking mid-print, like any line-oriented tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match run(cli.command, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn read_diagram(path: &PathBuf) -> gridatlas::Result<GridDiagram> {
    GridDiagram::parse(&fs::read_to_string(path)?)
}

fn one_line(g: &GridDiagram) -> String {
    g.to_string().replace('\n', " ")
}

fn atlas_budget(
    max_enum_size: Option<usize>,
    budget: &BudgetArgs,
) -> Result<AtlasBudget, gridatlas::Error> {
    let d = AtlasBudget::default();
    let max_size = budget
        .max_size
        .unwrap_or_else(|| max_enum_size.map(|n| n + 2).unwrap_or(d.max_size));
    let max_enum_size = max_enum_size.unwrap_or_else(|| max_size.saturating_sub(2));
    if max_enum_size < 2 || max_size < max_enum_size {
        return Err(gridatlas::Error::Parse {
            line: 0,
            msg: format!(
                "need 2 <= max-enum-size <= max-size (got {max_enum_size} and {max_size})"
            ),
        });
    }
    Ok(AtlasBudget {
        max_enum_size,
        max_size,
        limits: budget.limits(),
    })
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("GRIDATLAS_CACHE").map(PathBuf::from)
}

fn run(command: Command, exec: Exec) -> gridatlas::Result<()> {
    match command {
        Command::Invariants { file } => {
            let inv = read_diagram(&file)?.classical_invariants()?;
            println!("tb={} r={} sl={}", inv.tb, inv.r, inv.sl);
        }
        Command::Moves {
            file,
            steps,
            mode,
            budget,
        } => {
            let g = read_diagram(&file)?;
            if steps.is_empty() {
                let max_size = budget.max_size.unwrap_or(g.size() + 2);
                for mv in g.legal_moves(mode, max_size) {
                    println!("{mv}");
                }
            } else {
                let path: Vec<_> = steps
                    .iter()
                    .map(|s| s.parse())
                    .collect::<gridatlas::Result<_>>()?;
                print!("{}", g.apply_path(&path)?);
                println!();
            }
        }
        Command::Connect { a, b, mode, budget } => {
            let ga = read_diagram(&a)?;
            let gb = read_diagram(&b)?;
            let max_size = budget.max_size.unwrap_or(ga.size().max(gb.size()) + 2);
            match connect(&ga, &gb, mode, max_size, budget.limits())? {
                ConnectOutcome::Connected(path) => {
                    println!("CONNECTED");
                    for mv in path {
                        println!("{mv}");
                    }
                }
                ConnectOutcome::Exhausted { visited } => {
                    println!("EXHAUSTED visited={visited} max-size={max_size} complete=true");
                }
                ConnectOutcome::OutOfBudget { visited } => {
                    println!("EXHAUSTED visited={visited} max-size={max_size} complete=false");
                }
            }
        }
        Command::Enumerate { n, prune } => {
            let mut count = 0usize;
            for g in enumerate(n, prune, exec) {
                if g.is_knot() {
                    println!("{}", one_line(&g));
                    count += 1;
                }
            }
            eprintln!("{count} knot diagrams of size {n}");
        }
        Command::Classify { max_size, prune } => {
            let mut out = String::new();
            for (name, sizes) in census(max_size, prune, exec)? {
                for (size, count) in sizes {
                    writeln!(out, "{name}\t{size}\t{count}").unwrap();
                }
            }
            print!("{out}");
        }
        Command::Atlas {
            knot,
            max_enum_size,
            budget,
        } => {
            let budget = atlas_budget(max_enum_size, &budget)?;
            let (record, _) = assemble_atlas(&knot, &budget, cache_dir().as_deref(), exec)?;
            println!("{}", export_atlas(std::slice::from_ref(&record)));
        }
        Command::Render {
            knot,
            format,
            max_enum_size,
            budget,
        } => {
            let budget = atlas_budget(max_enum_size, &budget)?;
            let (_, range) = assemble_atlas(&knot, &budget, cache_dir().as_deref(), exec)?;
            print!("{}", render_mountain_range(&range, format));
        }
        Command::Theta { file } => {
            if theta_obstruction(&read_diagram(&file)?) {
                println!("OBSTRUCTED (theta nonzero)");
            } else {
                println!("INCONCLUSIVE");
            }
        }
        Command::Ruling { file, graded } => {
            let g = read_diagram(&file)?;
            let front = grid_to_front(&g)?;
            if graded {
                match ruling_polynomial(&front, RulingMode::ZeroGraded) {
                    Ok(p) => println!("{p}"),
                    Err(gridatlas::Error::NonZeroRotation { .. }) => println!("-"),
                    Err(e) => return Err(e),
                }
            } else {
                println!("{}", ruling_polynomial(&front, RulingMode::Ungraded)?);
            }
        }
        Command::Stuck { n } => {
            let stuck = find_stuck(n, exec)?;
            for g in &stuck {
                println!("{}", one_line(g));
            }
            eprintln!("{} stuck diagrams of size {n}", stuck.len());
        }
    }
    Ok(())
}
