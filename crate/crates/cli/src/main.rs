use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use compton_bell::bell::BellState;
use compton_bell::commands::{cmd_figure, cmd_peak, cmd_ratio_scan, cmd_xsec_scan, FigureName};
use compton_bell::config::{OutputFormat, RunConfig};
use compton_bell::geometry::ArrangementKind;
use compton_bell::output::emit;
use compton_bell::Result;

/// Polarization-correlated Compton scattering observables for hard X-ray
/// Bell-state photon pairs.
#[derive(Debug, Parser)]
#[command(name = "compton-bell", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Incoherent cross sections at eta_max and eta_min versus theta.
    XsecScan(RunArgs),
    /// Azimuthal ratio R (energy arrangement) or rho (phase arrangement) versus theta.
    RatioScan(RunArgs),
    /// Peak of the azimuthal ratio over the theta range.
    Peak(RunArgs),
    /// Write the CSVs and config sidecar for a figure preset.
    Figure {
        /// fig3a, fig3b, fig4a, fig4b or fig6
        name: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Flags override values read from `--config`.
#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// psi+, psi-, phi+ or phi-
    #[arg(long)]
    state: Option<BellState>,
    #[arg(long, allow_negative_numbers = true)]
    e_oi_kev: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    e_os_kev: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    e_b_kev: Option<f64>,
    /// Atomic number of the scattering medium.
    #[arg(long)]
    z: Option<u32>,
    /// Scattering-function CSV (header `x_inv_angstrom,s`).
    #[arg(long)]
    s_table: Option<PathBuf>,
    /// energy or phase
    #[arg(long)]
    arrangement: Option<ArrangementKind>,
    #[arg(long, allow_negative_numbers = true)]
    delta_theta_is_deg: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta_min_deg: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta_max_deg: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    theta_step_deg: Option<f64>,
    /// Fine step used by `peak`.
    #[arg(long, allow_negative_numbers = true)]
    refine_step_deg: Option<f64>,
    /// csv or json
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_json_file(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = self.$flag { cfg.$field = v; })*
            };
        }
        set! {
            state => state,
            e_oi_kev => e_oi_kev,
            e_os_kev => e_os_kev,
            e_b_kev => e_b_kev,
            z => element_z,
            arrangement => arrangement,
            delta_theta_is_deg => delta_theta_is_deg,
            theta_min_deg => theta_min_deg,
            theta_max_deg => theta_max_deg,
            theta_step_deg => theta_step_deg,
            refine_step_deg => refine_step_deg,
            format => output_format,
        }
        if self.s_table.is_some() {
            cfg.scattering_table_path = self.s_table;
        }
        if self.out.is_some() {
            cfg.output_path = self.out;
        }
        Ok(cfg)
    }
}

fn run(cmd: Cmd) -> Result<()> {
    match cmd {
        Cmd::XsecScan(args) => {
            let cfg = args.resolve()?;
            let text = cmd_xsec_scan(&cfg)?.render(cfg.output_format)?;
            emit(&text, cfg.output_path.as_deref())
        }
        Cmd::RatioScan(args) => {
            let cfg = args.resolve()?;
            let text = cmd_ratio_scan(&cfg)?.render(cfg.output_format)?;
            emit(&text, cfg.output_path.as_deref())
        }
        Cmd::Peak(args) => {
            let cfg = args.resolve()?;
            let rec = cmd_peak(&cfg)?;
            emit(&rec.to_json(), cfg.output_path.as_deref())
        }
        Cmd::Figure { name, out } => {
            let name: FigureName = name.parse()?;
            for path in cmd_figure(name, &out)? {
                println!("{}", path.display());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", first.trim());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
