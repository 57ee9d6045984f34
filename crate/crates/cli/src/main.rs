use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use csl_osc::config::load_pair;
use csl_osc::decoherence::{
    collisional_rate, meson_decoherence_bound, thermal_speed, CollisionalEnvironment, Medium,
};
use csl_osc::dynamics::{ensemble_average, simulate_trajectory, EnsembleOptions};
use csl_osc::geometry::Fixture;
use csl_osc::rates::{
    bound_from_resolution, chiral_rate_dipole, chiral_rate_doublewell, chiral_rate_exact_geometry,
    lambda_upper_bound, meson_rate, neutrino_damping, neutrino_rate, validate_twolevel, DoubleWellSpec,
    MesonSpec, NeutrinoSpec,
};
use csl_osc::report::{compare, table_one, table_two, RateReport, ReportKind};
use csl_osc::{Defaults, Error, StateVector, TwoLevelParams};

#[derive(Parser, Debug)]
#[command(name = "cslosc", version, about = "CSL collapse dynamics, rates and bounds for oscillating two-level systems")]
struct Cli {
    /// CSL coupling γ, cm³/s
    #[arg(long, global = true, conflicts_with = "grw")]
    gamma: Option<f64>,
    /// CSL correlation length r_C, cm
    #[arg(long = "r-c", global = true)]
    r_c: Option<f64>,
    /// CSL reference mass, amu
    #[arg(long, global = true)]
    m0: Option<f64>,
    /// Use the GRW coupling γ = 1e-30 cm³/s
    #[arg(long, global = true)]
    grw: bool,
    /// Defaults file layered over the built-in one (also CSLOSC_DEFAULTS)
    #[arg(long, global = true, value_name = "PATH")]
    defaults: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate collapse trajectories and write ⟨σ_z⟩ statistics
    Simulate(SimulateArgs),
    /// Collapse rate of one system, as a JSON record
    Rate {
        #[command(subcommand)]
        system: RateSystem,
    },
    /// Upper bound on Λ from a tunnelling splitting or a spectral resolution
    Bound(BoundArgs),
    /// Environmental decoherence rate, as a JSON record
    Decohere {
        #[command(subcommand)]
        system: DecohereSystem,
    },
    /// Reproduce a summary table with computed and published values side by side
    Table(TableArgs),
    /// Collapse against decoherence for one system
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Tunnelling frequency ω_x, Hz
    #[arg(long = "omega-x")]
    omega_x: f64,
    /// Collapse rate λ, Hz
    #[arg(long)]
    lambda: f64,
    /// Initial state: plus, minus, equal, or the |+⟩ population in [0, 1]
    #[arg(long, default_value = "plus")]
    psi0: String,
    /// Final time, s
    #[arg(long = "t-max", default_value_t = 10.0)]
    t_max: f64,
    /// Time step, s (default 0.01/max(ω_x, λ))
    #[arg(long)]
    dt: Option<f64>,
    /// Number of trajectories; 1 writes the raw trajectory
    #[arg(short = 'n', long = "trajectories", default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of sample times in ensemble output
    #[arg(long, default_value_t = 101)]
    samples: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: DataFormat,
    /// Write to a file instead of stdout
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum RateSystem {
    /// Damping of a two-flavour oscillation
    Neutrino(NeutrinoArgs),
    /// Neutral meson with a given mass difference
    Meson(MesonArgs),
    /// Chiral molecule from geometry files, a fixture, or a double-well model
    Chiral(ChiralArgs),
}

#[derive(Args, Debug)]
struct NeutrinoArgs {
    /// Named source from the defaults (cosmogenic, solar, laboratory)
    #[arg(long, conflicts_with_all = ["energy", "time"])]
    source: Option<String>,
    /// Energy, eV
    #[arg(long)]
    energy: Option<f64>,
    /// Flight time, s
    #[arg(long)]
    time: Option<f64>,
    /// Mass-squared splitting, eV² (default: neutrino.delta_m2.bound)
    #[arg(long = "delta-m2", conflicts_with = "splitting")]
    delta_m2: Option<f64>,
    /// Named splitting from the defaults (solar, atmospheric, bound)
    #[arg(long)]
    splitting: Option<String>,
    /// Use exact energies with this momentum p·c, eV
    #[arg(long, requires = "m2_light")]
    momentum: Option<f64>,
    /// m²c⁴ of the lighter state for exact energies, eV²
    #[arg(long = "m2-light", requires = "momentum")]
    m2_light: Option<f64>,
}

#[derive(Args, Debug)]
struct MesonArgs {
    /// Meson label from the defaults (K, B, Bs, D)
    #[arg(long, required_unless_present = "delta_m_mev")]
    name: Option<String>,
    /// Mass difference, MeV/c²
    #[arg(long = "delta-m-mev")]
    delta_m_mev: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChiralMethod {
    Exact,
    Dipole,
    Both,
}

#[derive(Args, Debug)]
struct ChiralArgs {
    /// Built-in fixture name
    #[arg(long, conflicts_with_all = ["left", "mu"])]
    fixture: Option<String>,
    /// Left-handed XYZ file
    #[arg(long, requires = "right", conflicts_with = "mu")]
    left: Option<PathBuf>,
    /// Right-handed XYZ file
    #[arg(long, requires = "left")]
    right: Option<PathBuf>,
    /// Index of the chirality center atom
    #[arg(long, default_value_t = 0)]
    center: usize,
    #[arg(long, value_enum, default_value = "both")]
    method: ChiralMethod,
    /// Double-well effective mass, amu
    #[arg(long, requires = "q0")]
    mu: Option<f64>,
    /// Double-well minima separation, Å
    #[arg(long, requires = "mu")]
    q0: Option<f64>,
}

#[derive(Args, Debug)]
struct BoundArgs {
    /// Double-well entry from the defaults (ammonia, carboxylic_dimer, ru_d2)
    #[arg(long, conflicts_with_all = ["mu", "q0", "omega_x"])]
    molecule: Option<String>,
    /// Effective mass, amu
    #[arg(long, requires = "q0")]
    mu: Option<f64>,
    /// Minima separation, Å
    #[arg(long, requires = "mu")]
    q0: Option<f64>,
    /// Observed tunnelling splitting, Hz
    #[arg(long = "omega-x", conflicts_with = "resolution")]
    omega_x: Option<f64>,
    /// Relative spectral resolution R = ω_x/ω
    #[arg(long, requires = "mode_frequency")]
    resolution: Option<f64>,
    /// Mode frequency ω, Hz
    #[arg(long = "mode-frequency", requires = "resolution")]
    mode_frequency: Option<f64>,
    /// Barrier height V0, eV (validity check only)
    #[arg(long, requires = "well_frequency")]
    barrier: Option<f64>,
    /// Well frequency ω0, Hz (validity check only)
    #[arg(long = "well-frequency", requires = "barrier")]
    well_frequency: Option<f64>,
    /// Temperature for the validity check, K
    #[arg(long, default_value_t = 300.0)]
    temperature: f64,
}

#[derive(Subcommand, Debug)]
enum DecohereSystem {
    /// n·v·σ for a gas background
    Collisional(CollisionalArgs),
    /// Neutrino damping in outer space and atmosphere
    Neutrino(NeutrinoDecArgs),
    /// Bound from the measured ζ parameter
    Meson(MesonDecArgs),
}

#[derive(Args, Debug)]
struct CollisionalArgs {
    /// Number density, m⁻³ (or a named density: uhv, cryogenic)
    #[arg(long)]
    density: String,
    /// Relative velocity, m/s (default: thermal speed)
    #[arg(long, conflicts_with_all = ["temperature", "gas_mass"])]
    velocity: Option<f64>,
    #[arg(long)]
    temperature: Option<f64>,
    /// Gas molecule mass, amu
    #[arg(long = "gas-mass")]
    gas_mass: Option<f64>,
    /// Cross-section, m² (default: both ends of the shipped band)
    #[arg(long = "cross-section")]
    cross_section: Option<f64>,
}

#[derive(Args, Debug)]
struct NeutrinoDecArgs {
    #[arg(long, conflicts_with_all = ["energy", "time"])]
    source: Option<String>,
    /// Energy, eV
    #[arg(long)]
    energy: Option<f64>,
    /// Total flight time, s; without it only the rate is reported
    #[arg(long)]
    time: Option<f64>,
    /// Medium for the rate (outer_space, atmosphere)
    #[arg(long, default_value = "atmosphere")]
    medium: String,
    /// Time spent in the atmosphere, s
    #[arg(long = "atmosphere-time")]
    atmosphere_time: Option<f64>,
}

#[derive(Args, Debug)]
struct MesonDecArgs {
    #[arg(long)]
    zeta: Option<f64>,
    #[arg(long = "sigma-stat")]
    sigma_stat: Option<f64>,
    #[arg(long = "sigma-syst")]
    sigma_syst: Option<f64>,
    #[arg(long = "confidence-level")]
    confidence_level: Option<f64>,
    /// Time over which ζ ≈ λt, s
    #[arg(long)]
    timescale: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableId {
    #[value(name = "I", alias = "1", alias = "i")]
    One,
    #[value(name = "II", alias = "2", alias = "ii")]
    Two,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(value_enum)]
    which: TableId,
    /// Exit 1 if any cell is outside its tolerance
    #[arg(long)]
    strict: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: TableFormat,
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SystemId {
    Neutrino,
    Meson,
    Chiral,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(value_enum)]
    system: SystemId,
    #[arg(long)]
    json: bool,
}

/// Failure carrying the exit code it maps to.
enum Failure {
    Input(String),
    Internal(String),
    Strict(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn input_err<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Input(msg.into()))
}

fn load_defaults(cli: &Cli) -> CliResult<Defaults> {
    let mut d = Defaults::load(cli.defaults.as_deref())?;
    if cli.grw {
        d.set("csl.gamma", &csl_osc::units::GAMMA_GRW.to_string());
    }
    for (key, value) in [("csl.gamma", cli.gamma), ("csl.r_c", cli.r_c), ("csl.m0", cli.m0)] {
        if let Some(v) = value {
            d.set(key, &v.to_string());
        }
    }
    d.csl()?;
    Ok(d)
}

fn emit(text: &str, output: Option<&PathBuf>) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn parse_psi0(s: &str) -> CliResult<StateVector> {
    match s {
        "plus" | "+" => Ok(StateVector::plus()),
        "minus" | "-" => Ok(StateVector::minus()),
        "equal" => Ok(StateVector::with_plus_population(0.5)?),
        other => match other.parse::<f64>() {
            Ok(p) => Ok(StateVector::with_plus_population(p)?),
            Err(_) => input_err(format!("--psi0 expects plus, minus, equal or a population, got `{other}`")),
        },
    }
}

fn simulate(args: &SimulateArgs) -> CliResult<()> {
    let params = TwoLevelParams::new(args.omega_x, args.lambda)?;
    let psi0 = parse_psi0(&args.psi0)?;
    let dt = args.dt.unwrap_or_else(|| params.max_step().unwrap_or(0.01));
    if args.n == 0 {
        return input_err("-n must be at least 1");
    }
    let text = if args.n == 1 {
        let traj = simulate_trajectory(&params, &psi0, args.t_max, dt, args.seed)?;
        match args.format {
            DataFormat::Csv => traj.to_csv(),
            DataFormat::Json => serde_json::to_string_pretty(&traj).expect("trajectory serializes"),
        }
    } else {
        let opts = EnsembleOptions::new(args.n, args.t_max, dt, args.seed).with_samples(args.samples);
        let res = ensemble_average(&params, &psi0, &opts)?;
        match args.format {
            DataFormat::Csv => res.to_csv(),
            DataFormat::Json => res.to_json(),
        }
    };
    emit(&text, args.output.as_ref())
}

fn neutrino_inputs(d: &Defaults, source: &Option<String>, energy: Option<f64>, time: Option<f64>) -> CliResult<(f64, f64)> {
    match (source, energy) {
        (Some(s), _) => Ok(d.neutrino_source(s)?),
        (None, Some(e)) => Ok((e, time.unwrap_or(0.0))),
        (None, None) => input_err("give --source or --energy"),
    }
}

fn rate_neutrino(d: &Defaults, a: &NeutrinoArgs) -> CliResult<RateReport> {
    let csl = d.csl()?;
    let (e, t) = neutrino_inputs(d, &a.source, a.energy, a.time)?;
    let dm2 = match (a.delta_m2, &a.splitting) {
        (Some(x), _) => x,
        (None, Some(name)) => d.get_f64(&format!("neutrino.delta_m2.{name}"))?,
        (None, None) => d.bound_delta_m2()?,
    };
    let mut spec = NeutrinoSpec::new(e, t, dm2)?;
    let mut report = RateReport::new(ReportKind::Collapse, a.source.as_deref().unwrap_or("neutrino"))
        .input("energy_ev", e)
        .input("flight_time_s", t)
        .input("delta_m2_ev2", dm2)
        .input("lambda_csl_param_hz", csl.lambda());
    if let (Some(p), Some(m2)) = (a.momentum, a.m2_light) {
        spec = spec.with_exact_kinematics(p, m2)?;
        report = report.input("momentum_ev", p).input("m2_light_ev2", m2);
    }
    report.lambda_csl_hz = Some(neutrino_rate(&spec, &csl));
    report.damping_factor = Some(neutrino_damping(&spec, &csl));
    Ok(report)
}

fn rate_meson(d: &Defaults, a: &MesonArgs) -> CliResult<RateReport> {
    let csl = d.csl()?;
    let spec = match (&a.name, a.delta_m_mev) {
        (name, Some(dm)) => MesonSpec::from_mev(name.clone().unwrap_or_else(|| "meson".into()), dm)?,
        (Some(name), None) => d.meson(name)?,
        (None, None) => return input_err("give --name or --delta-m-mev"),
    };
    let mut report = RateReport::new(ReportKind::Collapse, spec.name.clone())
        .input("delta_m_amu", spec.delta_m_amu())
        .input("lambda_csl_param_hz", csl.lambda());
    report.lambda_csl_hz = Some(meson_rate(&spec, &csl));
    Ok(report)
}

fn rate_chiral(d: &Defaults, a: &ChiralArgs) -> CliResult<RateReport> {
    let csl = d.csl()?;
    if let (Some(mu), Some(q0)) = (a.mu, a.q0) {
        let spec = DoubleWellSpec::from_angstrom(mu, q0, 0.0)?;
        let mut report = RateReport::new(ReportKind::Collapse, "double_well")
            .input("mu_amu", mu)
            .input("q0_cm", spec.q0_cm())
            .input("lambda_csl_param_hz", csl.lambda());
        report.lambda_csl_hz = Some(chiral_rate_doublewell(&spec, &csl));
        return Ok(report);
    }
    let (system, geom) = match (&a.fixture, &a.left, &a.right) {
        (Some(name), _, _) => {
            let f = Fixture::find(name)
                .ok_or_else(|| Failure::Input(format!("unknown fixture `{name}`")))?;
            (name.clone(), f.geometry()?)
        }
        (None, Some(l), Some(r)) => (l.display().to_string(), load_pair(l, r, a.center)?),
        _ => (d.get_str("chiral.fixture")?.to_string(), d.chiral_geometry()?),
    };
    let mut report = RateReport::new(ReportKind::Collapse, system)
        .input("n_atoms", geom.len() as f64)
        .input("n_superposed", geom.n_superposed() as f64)
        .input("nucleons", geom.nucleon_count() as f64)
        .input("max_displacement_cm", geom.max_displacement())
        .input("lambda_csl_param_hz", csl.lambda());
    report.lambda_csl_hz = Some(match a.method {
        ChiralMethod::Exact => chiral_rate_exact_geometry(&geom, &csl),
        ChiralMethod::Dipole => chiral_rate_dipole(&geom, &csl)?,
        ChiralMethod::Both => {
            if let Ok(dip) = chiral_rate_dipole(&geom, &csl) {
                report = report.input("dipole_rate_hz", dip);
            }
            chiral_rate_exact_geometry(&geom, &csl)
        }
    });
    Ok(report)
}

fn bound(d: &Defaults, a: &BoundArgs) -> CliResult<RateReport> {
    let csl = d.csl()?;
    let (system, mut spec) = match (&a.molecule, a.mu, a.q0) {
        (Some(m), _, _) => (m.clone(), d.doublewell(m)?),
        (None, Some(mu), Some(q0)) => (
            "double_well".to_string(),
            DoubleWellSpec::from_angstrom(mu, q0, a.omega_x.unwrap_or(0.0))?,
        ),
        _ => return input_err("give --molecule, or --mu and --q0"),
    };
    if let (Some(v0), Some(w0)) = (a.barrier, a.well_frequency) {
        spec = spec.with_well(v0, w0);
    }
    let mut report = RateReport::new(ReportKind::Bound, system)
        .input("mu_amu", spec.mu_amu())
        .input("q0_cm", spec.q0_cm())
        .input("r_c_cm", csl.r_c());
    report.lambda_bound_hz = Some(match (a.resolution, a.mode_frequency) {
        (Some(r), Some(w)) => {
            report = report.input("resolution", r).input("mode_frequency_hz", w);
            bound_from_resolution(r, w, &spec, &csl)?
        }
        _ => {
            if a.molecule.is_none() && a.omega_x.is_none() {
                return input_err("give --omega-x, or --resolution and --mode-frequency");
            }
            report = report.input("omega_x_hz", spec.omega_x_hz());
            lambda_upper_bound(&spec, &csl)?
        }
    });
    if spec.barrier_ev.is_some() {
        report = report.input("temperature_k", a.temperature);
        report.validity = Some(validate_twolevel(&spec, a.temperature));
    }
    Ok(report)
}

fn decohere(d: &Defaults, system: &DecohereSystem) -> CliResult<Vec<RateReport>> {
    match system {
        DecohereSystem::Collisional(a) => {
            let n = match a.density.parse::<f64>() {
                Ok(n) => n,
                Err(_) => d.get_f64(&format!("chiral.density.{}", a.density))?,
            };
            let v = match a.velocity {
                Some(v) => v,
                None => thermal_speed(
                    a.temperature.map_or_else(|| d.get_f64("chiral.temperature"), Ok)?,
                    a.gas_mass.map_or_else(|| d.get_f64("chiral.gas_mass"), Ok)?,
                )?,
            };
            let sigmas = match a.cross_section {
                Some(s) => vec![("collisional", s)],
                None => vec![
                    ("collisional_min", d.get_f64("chiral.cross_section.min")?),
                    ("collisional_max", d.get_f64("chiral.cross_section.max")?),
                ],
            };
            sigmas
                .into_iter()
                .map(|(label, s)| {
                    let env = CollisionalEnvironment::new(n, v, s)?;
                    let mut r = RateReport::new(ReportKind::Decoherence, label)
                        .input("number_density_m3", n)
                        .input("velocity_m_s", v)
                        .input("cross_section_m2", s);
                    r.lambda_dec_hz = Some(collisional_rate(&env));
                    Ok(r)
                })
                .collect()
        }
        DecohereSystem::Neutrino(a) => {
            let media = d.neutrino_media()?;
            let (e, t) = match (&a.source, a.energy) {
                (Some(s), _) => {
                    let (e, t) = d.neutrino_source(s)?;
                    (e, Some(t))
                }
                (None, Some(e)) => (e, a.time),
                (None, None) => return input_err("give --source or --energy"),
            };
            let medium: Medium = a.medium.parse()?;
            let mut r = RateReport::new(ReportKind::Decoherence, a.source.as_deref().unwrap_or("neutrino"))
                .input("energy_ev", e);
            r.lambda_dec_hz = Some(media.rate(e, medium)?);
            if let Some(t) = t {
                let atm = a.atmosphere_time.unwrap_or_else(|| media.atmosphere_time.min(t));
                r = r.input("flight_time_s", t).input("atmosphere_time_s", atm);
                r.damping_factor = Some(media.cumulative_damping(e, t, atm)?);
            }
            Ok(vec![r])
        }
        DecohereSystem::Meson(a) => {
            let mut zm = d.zeta()?;
            zm.zeta_mean = a.zeta.unwrap_or(zm.zeta_mean);
            zm.sigma_stat = a.sigma_stat.unwrap_or(zm.sigma_stat);
            zm.sigma_syst = a.sigma_syst.unwrap_or(zm.sigma_syst);
            zm.confidence_level = a.confidence_level.unwrap_or(zm.confidence_level);
            zm.timescale = a.timescale.unwrap_or(zm.timescale);
            let mut r = RateReport::new(ReportKind::Decoherence, "meson_zeta")
                .input("zeta_mean", zm.zeta_mean)
                .input("sigma_stat", zm.sigma_stat)
                .input("sigma_syst", zm.sigma_syst)
                .input("confidence_level", zm.confidence_level)
                .input("timescale_s", zm.timescale)
                .input("zeta_upper", zm.upper_limit()?);
            r.lambda_dec_hz = Some(meson_decoherence_bound(&zm)?);
            Ok(vec![r])
        }
    }
}

fn json_records(reports: &[RateReport]) -> String {
    if let [one] = reports {
        one.to_json()
    } else {
        serde_json::to_string_pretty(reports).expect("reports serialize")
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let defaults = load_defaults(cli)?;
    match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Rate { system } => {
            let report = match system {
                RateSystem::Neutrino(a) => rate_neutrino(&defaults, a)?,
                RateSystem::Meson(a) => rate_meson(&defaults, a)?,
                RateSystem::Chiral(a) => rate_chiral(&defaults, a)?,
            };
            emit(&report.to_json(), None)
        }
        Command::Bound(a) => emit(&bound(&defaults, a)?.to_json(), None),
        Command::Decohere { system } => emit(&json_records(&decohere(&defaults, system)?), None),
        Command::Table(a) => {
            let table = match a.which {
                TableId::One => table_one(&defaults)?,
                TableId::Two => table_two(&defaults)?,
            };
            let text = match a.format {
                TableFormat::Text => table.to_text(),
                TableFormat::Csv => table.to_csv(),
                TableFormat::Json => table.to_json(),
            };
            emit(&text, a.output.as_ref())?;
            match table.failures() {
                n if a.strict && n > 0 => Err(Failure::Strict(format!("{n} cell(s) outside tolerance"))),
                _ => Ok(()),
            }
        }
        Command::Compare(a) => {
            let name = match a.system {
                SystemId::Neutrino => "neutrino",
                SystemId::Meson => "meson",
                SystemId::Chiral => "chiral",
            };
            let cmp = compare(name, &defaults)?;
            emit(&if a.json { cmp.to_json() } else { cmp.to_text() }, None)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Strict(msg)) => {
            eprintln!("strict: {msg}");
            ExitCode::from(1)
        }
    }
}
