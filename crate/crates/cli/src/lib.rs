//! The `cobk` command-line tool.

pub mod commands;
pub mod config;
pub mod syntax;

use clap::{Parser, Subcommand, ValueEnum};
use cobk_core::chow_k0::ChowError;
use cobk_core::cob_biell::CobError;
use cobk_core::homology::HomologyError;
use cobk_core::mirror::MirrorError;
use cobk_core::roitman::RoitmanError;
use serde_json::{json, Value};

use crate::commands::Report;
use crate::config::{Config, ConfigError};
use crate::syntax::{ParseError, SyntaxError};

#[derive(Parser, Debug)]
#[command(name = "cobk", version, about = "Exact cobordism and K-theory invariants for bielliptic mirror pairs")]
pub struct Cli {
    /// JSON config file: coefficient group, intersection table, seed.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
    /// Random seed; overrides the config file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Complete cobordism invariant of a brane expression.
    NormalForm { expr: String },
    /// Whether two brane expressions are cobordant.
    Cobordant { a: String, b: String },
    /// Twisted homology of the bielliptic surface.
    Homology,
    /// Circle branes on the 2-torus.
    T2 {
        #[command(subcommand)]
        command: T2Command,
    },
    /// Chow groups and Chern characters of the bielliptic surface.
    Chow {
        #[command(subcommand)]
        command: ChowCommand,
    },
    /// Comparison of cobordism and K-theory.
    Mirror {
        #[command(subcommand)]
        command: MirrorCommand,
    },
    /// Checks that every relation family vanishes.
    Relations {
        #[command(subcommand)]
        command: RelationsCommand,
    },
    /// Randomized check of the isotropic dimension bound.
    Roitman {
        #[command(subcommand)]
        command: RoitmanCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum T2Command {
    NormalForm { expr: String },
}

#[derive(Subcommand, Debug)]
pub enum ChowCommand {
    /// `ch̃ = rk + c1 + (H(c1) − c2)`; c1 as `D(d1,d2,d3,d4){pic0=q,g=..}`, c2 as `Z(deg){alb=q,g=..}`.
    #[command(allow_negative_numbers = true)]
    Chern { rk: String, c1: String, c2: String },
}

#[derive(Subcommand, Debug)]
pub enum MirrorCommand {
    Verify {
        /// Number of random combinations per coefficient group.
        #[arg(long, default_value_t = 50)]
        random: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum RelationsCommand {
    Check,
}

#[derive(Subcommand, Debug)]
pub enum RoitmanCommand {
    Check {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(ParseError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Brane(#[from] CobError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error(transparent)]
    Mirror(#[from] MirrorError),
    #[error(transparent)]
    Roitman(#[from] RoitmanError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

impl From<SyntaxError> for CliError {
    fn from(e: SyntaxError) -> Self {
        match e {
            SyntaxError::Parse(p) => CliError::Parse(p),
            SyntaxError::Brane(b) => CliError::Brane(b),
        }
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse_error",
            CliError::Config(ConfigError::Syntax(_)) => "config_syntax",
            CliError::Config(ConfigError::Invalid(_)) => "invalid_config",
            CliError::Io { .. } => "io_error",
            CliError::Brane(e) => match e {
                CobError::NotInKernel => "not_in_kernel",
                CobError::NotTwoTorsion(_) => "not_two_torsion",
                CobError::InvalidParity(_) => "invalid_parity",
                CobError::InvalidLevel(_) => "invalid_level",
                CobError::DistributionLength { .. } => "distribution_length",
                CobError::DistributionProduct => "distribution_product",
            },
            CliError::Chow(e) => match e {
                ChowError::MissingTableEntry(_) => "missing_table_entry",
                ChowError::BlockMapNotQuasilinear(_) => "not_quasilinear",
                ChowError::BlockCount(_) => "block_count",
                ChowError::HalfClassOrder(_) => "half_class_order",
                ChowError::TorsionNotRespected(_) => "torsion_not_respected",
                ChowError::InvalidPair(_) => "invalid_pair",
                ChowError::SymbolicClass => "symbolic_class",
            },
            CliError::Mirror(e) => match e {
                MirrorError::NotInGeneratorSet(_) => "not_in_generator_set",
                MirrorError::UnsupportedCoefficients(_) => "unsupported_coefficients",
            },
            CliError::Roitman(e) => match e {
                RoitmanError::EmptyBlock(_) => "empty_block",
                RoitmanError::ZeroBlockForm(_) => "zero_block_form",
                RoitmanError::CountMismatch { .. } => "count_mismatch",
                RoitmanError::ArityMismatch { .. } => "arity_mismatch",
                RoitmanError::DimensionMismatch { .. } => "dimension_mismatch",
                RoitmanError::IndexOutOfRange { .. } => "index_out_of_range",
                RoitmanError::RankDeficient => "rank_deficient",
                RoitmanError::NotIsotropic => "not_isotropic",
            },
            CliError::Homology(_) => "internal_inconsistency",
        }
    }

    /// 2 for unparseable input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Config(ConfigError::Syntax(_)) => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut err = json!({ "code": self.code(), "message": self.to_string() });
        if let CliError::Parse(p) = self {
            err["position"] = json!(p.position);
        }
        json!({ "error": err, "exact": true })
    }
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn load_config(cli: &Cli) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        None => Config::default_config(),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            Config::parse(&text)?
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::NormalForm { .. } => "normal-form",
        Command::Cobordant { .. } => "cobordant",
        Command::Homology => "homology",
        Command::T2 { .. } => "t2 normal-form",
        Command::Chow { .. } => "chow chern",
        Command::Mirror { .. } => "mirror verify",
        Command::Relations { .. } => "relations check",
        Command::Roitman { .. } => "roitman check",
    }
}

pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::NormalForm { expr } => commands::normal_form_cmd(expr, &cfg),
        Command::Cobordant { a, b } => commands::cobordant_cmd(a, b, &cfg),
        Command::Homology => commands::homology_cmd(),
        Command::T2 { command: T2Command::NormalForm { expr } } => commands::t2_normal_form_cmd(expr, &cfg),
        Command::Chow { command: ChowCommand::Chern { rk, c1, c2 } } => commands::chern_cmd(rk, c1, c2, &cfg),
        Command::Mirror { command: MirrorCommand::Verify { random } } => commands::mirror_verify_cmd(&cfg, *random),
        Command::Relations { command: RelationsCommand::Check } => commands::relations_check_cmd(&cfg),
        Command::Roitman { command: RoitmanCommand::Check { trials } } => commands::roitman_check_cmd(&cfg, *trials),
    }
}

/// Parses arguments, runs the command and renders the result. A failed check still prints
/// its report and exits with 1.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let code = if report.ok { 0 } else { 1 };
            let stdout = match cli.output {
                OutputFormat::Json => {
                    let doc = json!({ "command": command_name(&cli.command), "result": report.result, "exact": true });
                    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
                }
                OutputFormat::Text => report.text + "\n",
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => match cli.output {
            OutputFormat::Json => Outcome {
                code: e.exit_code(),
                stdout: serde_json::to_string_pretty(&e.to_json()).expect("serializable") + "\n",
                stderr: String::new(),
            },
            OutputFormat::Text => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
        },
    }
}
