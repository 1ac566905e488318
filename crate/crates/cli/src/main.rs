//! `npdisclab <recipe> key=value ... [--out PATH] [--seed U64] [--reproducible]`

mod params;
mod recipes;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::error::ErrorKind;
use clap::{Arg, ArgAction, ArgMatches, Command};
use npdisc_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use params::Params;
use recipes::{Recipe, RECIPES};

const UNKNOWN_RECIPE: u8 = 2;
const BAD_PARAMETER: u8 = 3;
const UNWRITABLE: u8 = 4;
const FAILED: u8 = 1;

fn params_arg() -> Arg {
    Arg::new("params")
        .value_name("KEY=VALUE")
        .num_args(0..)
        .action(ArgAction::Append)
        .help("recipe parameters")
}

fn recipe_help(r: &Recipe) -> String {
    let mut s = String::from("Parameters:\n");
    for p in r.params {
        s.push_str(&format!(
            "  {:<10} {} (default {}): {}\n",
            p.key, p.kind, p.default, p.help
        ));
    }
    s.push_str(&format!("\nRows are ordered by {}.", r.sort_key));
    s
}

fn command() -> Command {
    let mut cmd = Command::new("npdisclab")
        .version(env!("CARGO_PKG_VERSION"))
        .about(
            "Runs numerical experiments on weighted Hardy spaces of embedded discs and writes CSV",
        )
        .arg(
            Arg::new("out")
                .long("out")
                .value_name("PATH")
                .value_parser(clap::value_parser!(PathBuf))
                .global(true)
                .help("write the CSV here instead of standard output"),
        )
        .arg(
            Arg::new("seed")
                .long("seed")
                .value_name("U64")
                .value_parser(clap::value_parser!(u64))
                .global(true)
                .help("seed for the random generator [default: 0]"),
        )
        .arg(
            Arg::new("reproducible")
                .long("reproducible")
                .action(ArgAction::SetTrue)
                .global(true)
                .help("omit the timestamp so identical runs give identical bytes"),
        )
        .subcommand(Command::new("list").about("print the recipe catalog"))
        .subcommand(
            Command::new("run")
                .about("run a recipe named by recipe=<name>")
                .arg(params_arg()),
        );
    for r in RECIPES {
        cmd = cmd.subcommand(
            Command::new(r.name)
                .about(r.summary)
                .after_help(recipe_help(r))
                .arg(params_arg()),
        );
    }
    cmd
}

fn catalog() -> String {
    let mut s = String::from("Recipes:\n");
    for r in RECIPES {
        s.push_str(&format!("  {:<17} {}\n", r.name, r.summary));
    }
    s.push_str("\nUse `npdisclab <recipe> --help` for parameters.\n");
    s
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("npdisclab: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let matches = match command().try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    return ExitCode::SUCCESS;
                }
                ErrorKind::InvalidSubcommand => UNKNOWN_RECIPE,
                _ => BAD_PARAMETER,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Some((name, sub)) = matches.subcommand() else {
        print!("{}", catalog());
        return ExitCode::SUCCESS;
    };
    if name == "list" {
        print!("{}", catalog());
        return ExitCode::SUCCESS;
    }
    let mut args: Vec<String> = sub
        .get_many::<String>("params")
        .map(|v| v.cloned().collect())
        .unwrap_or_default();
    let recipe_name = if name == "run" {
        let Some(pos) = args.iter().position(|a| a.starts_with("recipe=")) else {
            return fail(BAD_PARAMETER, "`run` needs recipe=<name>");
        };
        args.remove(pos)["recipe=".len()..].to_string()
    } else {
        name.to_string()
    };
    let Some(recipe) = recipes::find(&recipe_name) else {
        return fail(
            UNKNOWN_RECIPE,
            format!("unknown recipe `{recipe_name}`\n\n{}", catalog()),
        );
    };
    execute(recipe, &args, &matches)
}

fn execute(recipe: &Recipe, args: &[String], matches: &ArgMatches) -> ExitCode {
    let params = match Params::parse(recipe.params, args) {
        Ok(p) => p,
        Err(e) => return fail(BAD_PARAMETER, format!("{}: {e}", recipe.name)),
    };
    let seed = matches.get_one::<u64>("seed").copied().unwrap_or(0);
    let reproducible = matches.get_flag("reproducible");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut table = match (recipe.run)(&params, &mut rng) {
        Ok(t) => t,
        Err(e @ (Error::InvalidParameter(_) | Error::UnknownTag(_))) => {
            return fail(BAD_PARAMETER, e)
        }
        Err(e) => return fail(FAILED, format!("{}: {e}", recipe.name)),
    };
    let mut header = vec![
        format!("npdisclab {}", env!("CARGO_PKG_VERSION")),
        format!("recipe={}", recipe.name),
    ];
    header.extend(params.iter().map(|(k, v)| format!("param.{k}={v}")));
    header.push(format!("seed={seed}"));
    header.push("rng=chacha8".to_string());
    header.push(format!("sort_key={}", recipe.sort_key));
    if !reproducible {
        let now = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        header.push(format!("timestamp={now}"));
    }
    header.append(&mut table.comments);
    table.comments = header;
    let text = match table.render() {
        Ok(t) => t,
        Err(e) => return fail(FAILED, e),
    };
    match matches.get_one::<PathBuf>("out") {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                return fail(UNWRITABLE, format!("cannot write {}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
