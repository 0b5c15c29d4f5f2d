use std::path::PathBuf;
use std::process::ExitCode;

use clap::{value_parser, Arg, ArgMatches, Command};
use ifm_cli::config::{parse_config_for, Kind};
use ifm_cli::error::ConfigError;

const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn about(kind: Kind) -> &'static str {
    match kind {
        Kind::Mz => "Exact outcome probabilities of one photon through the interferometer",
        Kind::Trials => "Monte Carlo photon trials with a goodness-of-fit check",
        Kind::Strategy => "Repeat-on-bright strategy: detection, explosion and give-up odds",
        Kind::Trigger => "Momentum-kick trigger: false triggers, misses and the detectable kick",
        Kind::Scatter => "Far-field scattering off an absorbing strip in a periodic aperture",
        Kind::Well => "Level populations of a harmonically bound bomb after a kick",
        Kind::Optimize => "Reflectivity trading efficiency against photons sent",
    }
}

fn command() -> Command {
    let mut cmd = Command::new("ifm")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Interaction-free measurement experiments")
        .after_help("Set IFM_THREADS to cap the number of worker threads.")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for kind in Kind::ALL {
        let keys = kind.keys().join(", ");
        cmd = cmd.subcommand(
            Command::new(kind.name())
                .about(about(kind))
                .after_help(format!(
                    "Config keys: {keys}\nCommon keys: kind, seed, out\n\
                     Writes {0}.csv and {0}_summary.json into the output directory.",
                    kind.name()
                ))
                .arg(
                    Arg::new("config")
                        .long("config")
                        .value_name("PATH")
                        .required(true)
                        .value_parser(value_parser!(PathBuf))
                        .help("Config file of `key = value` lines"),
                )
                .arg(
                    Arg::new("seed")
                        .long("seed")
                        .value_name("N")
                        .value_parser(value_parser!(u64))
                        .help("Random seed; overrides `seed` in the config"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_name("DIR")
                        .value_parser(value_parser!(PathBuf))
                        .help("Output directory; overrides `out` in the config [default: .]"),
                ),
        );
    }
    cmd
}

fn configure_threads() -> Result<(), ConfigError> {
    let Ok(value) = std::env::var("IFM_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| ConfigError::Environment(format!("IFM_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| ConfigError::Environment(e.to_string()))
}

fn load(kind: Kind, args: &ArgMatches) -> Result<ifm_cli::config::ExperimentConfig, ConfigError> {
    configure_threads()?;
    let path = args.get_one::<PathBuf>("config").expect("required");
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let mut cfg = parse_config_for(Some(kind), &text)?;
    if let Some(&seed) = args.get_one::<u64>("seed") {
        cfg.seed = seed;
    }
    if let Some(out) = args.get_one::<PathBuf>("out") {
        cfg.out_dir = Some(out.clone());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let matches = command().get_matches();
    let (name, args) = matches.subcommand().expect("subcommand required");
    let kind: Kind = name.parse().expect("subcommands are built from Kind::ALL");

    let cfg = match load(kind, args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("ifm {name}: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let dir = cfg.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let output = match ifm_cli::execute(&cfg).and_then(|out| {
        ifm_cli::write_outputs(&out, &dir)?;
        Ok(out)
    }) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("ifm {name}: {e}");
            return ExitCode::from(EXIT_RUNTIME);
        }
    };
    match output.summary_json() {
        Ok(json) => {
            print!("{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("ifm {name}: {e}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}
