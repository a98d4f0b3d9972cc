//! Command-line front end for the `abelian-cs` library.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use abelian_cs::action::{close_under_orbit, orbit_member, torus_group};
use abelian_cs::nogo::{certify, grid, sweep, CertifyOptions, Conclusion, WitnessChoice};
use abelian_cs::states::{GaussianForm, State};
use abelian_cs::surfaces::{catalog_embedding, EmbeddingName, Surface};
use abelian_cs::weyl::{parse_element, parse_vectors, InducedHom, WeylAlgebra};
use abelian_cs::{GroupElement, Tolerances};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "abelian-cs", version, about = "Abelian Chern-Simons Weyl algebras and the no-natural-state check")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect a surface's presymplectic group.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Arithmetic in the Weyl algebra of a surface.
    #[command(subcommand)]
    Weyl(WeylCommand),
    /// Gram matrices of states.
    #[command(subcommand)]
    State(StateCommand),
    /// The no-natural-state certificate.
    #[command(subcommand)]
    Nogo(NogoCommand),
    /// The SL(2,Z) action on the torus lattice.
    #[command(subcommand)]
    Action(ActionCommand),
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Rank and pairing matrix, e.g. `surface info T2`.
    Info { spec: String },
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Normal-form product of two elements.
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        hbar: f64,
        #[arg(long)]
        surface: String,
        #[arg(long)]
        boundary_override: bool,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
}

#[derive(Subcommand)]
enum StateCommand {
    /// Gram matrix of a state over a witness set, as JSON.
    Gram {
        #[arg(long, allow_hyphen_values = true)]
        hbar: f64,
        #[arg(long)]
        surface: String,
        /// `delta`, `allones`, or `gaussian:a,b;c,d` (rows of μ).
        #[arg(long)]
        state: String,
        /// Semicolon-separated vectors, e.g. `0,0;1,1;0,1`.
        #[arg(long, allow_hyphen_values = true)]
        witness: String,
        #[arg(long)]
        boundary_override: bool,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
}

#[derive(Subcommand)]
enum NogoCommand {
    /// Propagate the naturality constraints and test positivity at one ℏ.
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        hbar: f64,
        #[arg(long)]
        boundary_override: bool,
        /// Search all 3-element witness sets with coordinates in [-2, 2].
        #[arg(long)]
        search_witness: bool,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
    /// Certify on an evenly spaced grid, one JSON line per value.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        boundary_override: bool,
        #[command(flatten)]
        tolerances: ToleranceArgs,
    },
}

#[derive(Subcommand)]
enum ActionCommand {
    /// Orbit representative of a vector and a matrix realizing it.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
}

#[derive(Args)]
struct ToleranceArgs {
    /// Largest accepted deviation from Hermiticity.
    #[arg(long, default_value_t = Tolerances::DEFAULT.hermitian)]
    hermitian_tol: f64,
    /// Eigenvalues above minus this count as nonnegative.
    #[arg(long, default_value_t = Tolerances::DEFAULT.psd)]
    psd_tol: f64,
}

impl ToleranceArgs {
    fn resolve(&self) -> Tolerances {
        Tolerances {
            hermitian: self.hermitian_tol,
            psd: self.psd_tol,
            ..Tolerances::DEFAULT
        }
    }
}

#[derive(Serialize)]
struct SurfaceInfo {
    surface: String,
    genus: usize,
    punctures: usize,
    rank: usize,
    pairing: abelian_cs::IntMatrix,
}

fn algebra(surface: &Surface, hbar: f64, boundary_override: bool) -> Result<Arc<WeylAlgebra>> {
    let group = surface.resolve();
    Ok(if boundary_override {
        WeylAlgebra::with_boundary_override(group, hbar)?
    } else {
        WeylAlgebra::new(group, hbar)?
    })
}

fn parse_gaussian(spec: &str) -> Result<GaussianForm> {
    let rows = spec
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<f64>().with_context(|| format!("bad entry `{x}` in μ")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GaussianForm::new(&rows)?)
}

/// The state that assigns 1 to every difference of witness vectors. On the
/// cylinder this is the pullback of the sphere's unique state, on the torus
/// it is closed under the SL(2,Z) orbits.
fn all_ones(alg: &Arc<WeylAlgebra>, surface: &Surface, witness: &[GroupElement]) -> Result<State> {
    let group = alg.group();
    if surface.rank() == 1 && surface.genus == 0 {
        let sphere = algebra(&Surface::sphere(), alg.hbar(), alg.boundary_override())?;
        let f1 = InducedHom::new(
            catalog_embedding(&EmbeddingName::CylIntoSphere)?.hom,
            Arc::clone(alg),
            Arc::clone(&sphere),
        )?;
        return Ok(State::delta(&sphere).pull_back(&f1)?);
    }
    let mut differences: BTreeSet<GroupElement> = BTreeSet::new();
    differences.insert(group.zero());
    for u in witness {
        for v in witness {
            differences.insert(v - u);
        }
    }
    let one = Complex64::new(1.0, 0.0);
    let state = State::partial(alg, differences.into_iter().map(|u| (u, one)))?;
    if group == &torus_group() {
        Ok(close_under_orbit(&state)?)
    } else {
        Ok(state)
    }
}

fn build_state(alg: &Arc<WeylAlgebra>, surface: &Surface, spec: &str, witness: &[GroupElement]) -> Result<State> {
    let spec = spec.trim();
    if spec == "delta" {
        return Ok(State::delta(alg));
    }
    if spec == "allones" {
        return all_ones(alg, surface, witness);
    }
    if let Some(mu) = spec.strip_prefix("gaussian:") {
        return Ok(State::gaussian(alg, parse_gaussian(mu)?)?);
    }
    bail!("unknown state `{spec}`; expected delta, allones or gaussian:<rows>")
}

fn certify_options(boundary_override: bool, search: bool, tolerances: &ToleranceArgs) -> CertifyOptions {
    CertifyOptions {
        boundary_override,
        witness: if search {
            WitnessChoice::Search { radius: 2 }
        } else {
            WitnessChoice::Paper
        },
        tolerances: tolerances.resolve(),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Surface(SurfaceCommand::Info { spec }) => {
            let surface: Surface = spec.parse()?;
            let info = SurfaceInfo {
                surface: surface.label(),
                genus: surface.genus,
                punctures: surface.punctures,
                rank: surface.rank(),
                pairing: surface.resolve().pairing().clone(),
            };
            println!("{}", serde_json::to_string(&info)?);
        }
        Command::Weyl(WeylCommand::Mul { hbar, surface, boundary_override, left, right }) => {
            let surface: Surface = surface.parse()?;
            let alg = algebra(&surface, hbar, boundary_override)?;
            let a = parse_element(&alg, &left).context("left operand")?;
            let b = parse_element(&alg, &right).context("right operand")?;
            println!("{}", a.mul(&b)?);
        }
        Command::State(StateCommand::Gram { hbar, surface, state, witness, boundary_override, tolerances }) => {
            let surface: Surface = surface.parse()?;
            let alg = algebra(&surface, hbar, boundary_override)?;
            let witness = parse_vectors(&witness)?;
            let state = build_state(&alg, &surface, &state, &witness)?;
            let report = state.gram(&witness, &tolerances.resolve())?;
            println!("{}", report.to_json());
        }
        Command::Nogo(NogoCommand::Certify { hbar, boundary_override, search_witness, out, tolerances }) => {
            let options = certify_options(boundary_override, search_witness, &tolerances);
            let cert = certify(hbar, &options)?;
            cert.audit()?;
            let json = cert.to_json();
            match out {
                Some(path) => std::fs::write(&path, format!("{json}\n"))
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{json}"),
            }
            return Ok(match cert.conclusion {
                Conclusion::NoNaturalState => ExitCode::SUCCESS,
                Conclusion::Inconclusive => ExitCode::from(2),
            });
        }
        Command::Nogo(NogoCommand::Sweep { from, to, steps, boundary_override, tolerances }) => {
            if !(from.is_finite() && to.is_finite()) {
                return Err(anyhow!("sweep bounds must be finite"));
            }
            let options = certify_options(boundary_override, false, &tolerances);
            for row in sweep(&grid(from, to, steps), &options) {
                println!("{}", row.to_json());
            }
        }
        Command::Action(ActionCommand::Orbit { vector }) => {
            let vectors = parse_vectors(&vector)?;
            let [v] = &vectors[..] else {
                bail!("expected a single vector, got {}", vectors.len());
            };
            println!("{}", serde_json::to_string(&orbit_member(v)?)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
