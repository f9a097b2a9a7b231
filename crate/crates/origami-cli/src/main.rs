use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use origami_core::families::{self, Family};
use origami_core::sl2z::{self, OrbitCache};
use origami_core::{kz, monodromy, spin, symmetry, Error, Origami};

mod output;
mod reproduce;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "origami", version, about = "Minimal [1,1]-origamis: constructions, spin, monodromy, orbits and homology")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Orbit cache directory.
    #[arg(long, env = "ORIGAMI_CACHE", global = true)]
    cache: Option<PathBuf>,
    /// Allow genus >= 7 orbit runs and other long computations.
    #[arg(long, global = true)]
    extended: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Members of a construction.
    Construct {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        genus: usize,
        /// Every member (the default).
        #[arg(long, conflicts_with = "choice")]
        all: bool,
        /// A single member, e.g. "4,6,8" or "4,6;k=7".
        #[arg(long)]
        choice: Option<String>,
        #[arg(long)]
        modified: bool,
    },
    /// Spin census of a construction against the closed forms.
    Census {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        modified: bool,
    },
    /// Spin parity of an origami.
    Spin { origami: Origami },
    /// Monodromy group analysis.
    Monodromy {
        origami: Origami,
        /// Also produce a 3-cycle (amn-odd members only).
        #[arg(long)]
        three_cycle: bool,
        /// Test for a cover of this origami through a block system.
        #[arg(long)]
        cover_of: Option<Origami>,
    },
    /// `-I` symmetry and quotient data.
    Symmetry { origami: Origami },
    /// SL(2,Z) orbit of one origami.
    Orbit {
        origami: Origami,
        #[arg(long)]
        limit: Option<usize>,
        /// Include the member lines.
        #[arg(long)]
        members: bool,
    },
    /// Orbit partition of all constructed origamis of a genus.
    Orbits {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Homology action of Veech group elements and pinching tests.
    Kz {
        origami: Origami,
        #[arg(long, default_value_t = 20)]
        words: usize,
        #[arg(long)]
        split_involution: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Re-run a published claim end to end.
    Reproduce {
        id: reproduce::Target,
        #[arg(long)]
        genus: Option<usize>,
        #[arg(long)]
        max_genus: Option<usize>,
    },
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(clap::error::ErrorKind::InvalidValue, msg).exit()
}

fn run(cli: &Cli) -> Result<(Value, bool), Error> {
    let cache = cli.cache.as_ref().map(OrbitCache::new).transpose()?;
    let ok = |v: Value| Ok((v, true));
    match &cli.command {
        Command::Construct {
            family,
            genus,
            choice,
            modified,
            ..
        } => {
            let rows: Vec<Value> = if *modified {
                families::enumerate_modified(*family, *genus)?
                    .into_iter()
                    .map(|m| json!({"assignment": m.assignment, "origami": m.origami.to_line()}))
                    .collect()
            } else if let Some(c) = choice {
                let c = families::parse_choice(*family, *genus, c)?;
                let tau = families::tau_for_choice(*family, *genus, &c)?;
                let o = Origami::new(origami_core::Permutation::standard_cycle(2 * genus - 1), tau)?;
                vec![json!({"choice": c.to_string(), "origami": o.to_line()})]
            } else {
                families::enumerate(*family, *genus)?
                    .into_iter()
                    .map(|m| json!({"choice": m.choice.to_string(), "origami": m.origami.to_line()}))
                    .collect()
            };
            ok(Value::Array(rows))
        }
        Command::Census { family, genus, modified } => {
            let c = if *modified {
                families::census_modified(*family, *genus)?
            } else {
                families::census(*family, *genus)?
            };
            let mut v = json!({"family": family.id(), "genus": genus, "modified": modified, "total": c.total});
            for (tag, count) in &c.counts {
                v[format!("{:?}", tag)] = json!(count);
            }
            v["formula"] = serde_json::to_value(
                c.formula_values
                    .iter()
                    .map(|(t, x)| (format!("{:?}", t), x.to_string()))
                    .collect::<std::collections::BTreeMap<_, _>>(),
            )
            .unwrap();
            v["agree"] = json!(c.agree);
            ok(v)
        }
        Command::Spin { origami } => ok(serde_json::to_value(spin::spin_report(origami)?).unwrap()),
        Command::Monodromy {
            origami,
            three_cycle,
            cover_of,
        } => {
            let mut v = serde_json::to_value(monodromy::analyze_origami(origami)?).unwrap();
            if *three_cycle {
                v["three_cycle"] = json!(monodromy::amn_three_cycle(origami)?.render_cycles());
            }
            if let Some(base) = cover_of {
                v["cover_of"] = serde_json::to_value(monodromy::cover_of(origami, base)?).unwrap();
            }
            ok(v)
        }
        Command::Symmetry { origami } => ok(serde_json::to_value(symmetry::minus_identity_symmetric(origami)?).unwrap()),
        Command::Orbit { origami, limit, members } => {
            let rec = sl2z::orbit_cached(origami, *limit, cache.as_ref())?;
            let mut v = serde_json::to_value(&rec).unwrap();
            if *members {
                v["members"] = json!(rec.members);
            }
            ok(v)
        }
        Command::Orbits { genus, family, limit } => {
            if *genus >= 7 && !cli.extended {
                usage_error("orbits at genus >= 7 need --extended");
            }
            let fams = match family {
                Some(f) => vec![*f],
                None => Family::at_genus(*genus),
            };
            let mut all = Vec::new();
            for f in fams {
                all.extend(families::enumerate(f, *genus)?.into_iter().map(|m| m.origami));
            }
            let p = sl2z::orbit_partition(&all, *limit, cache.as_ref())?;
            ok(json!({
                "genus": genus,
                "origamis": all.len(),
                "orbits": p.orbits,
                "per_component": p.per_component.iter().map(|(t, c)| (format!("{:?}", t), *c)).collect::<std::collections::BTreeMap<_, _>>(),
            }))
        }
        Command::Kz {
            origami,
            words,
            split_involution,
            limit,
        } => ok(serde_json::to_value(kz::survey(origami, *words, *split_involution, *limit)?).unwrap()),
        Command::Reproduce { id, genus, max_genus } => {
            let opts = reproduce::Options {
                genus: *genus,
                max_genus: *max_genus,
                extended: cli.extended,
                cache,
            };
            if let Err(msg) = reproduce::check_options(*id, &opts) {
                usage_error(&msg);
            }
            let report = reproduce::run(*id, &opts)?;
            let pass = report.failed == 0;
            Ok((serde_json::to_value(report).unwrap(), pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((v, pass)) => {
            if let Err(e) = output::emit(&v, cli.format) {
                eprintln!("error: {}", e);
                return ExitCode::from(1);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
