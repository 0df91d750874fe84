use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;

use plink::embedding::pushoff;
use plink::generators::{gen_band_surface, gen_ribbon, standard_complex, BandSurfaceSpec, RibbonSpec};
use plink::homology::{homology, relative_homology, HomologyBasis};
use plink::io::{self, BasisFile, ChainFile, ComplexFile, FieldFile, FormFile, GeoChainFile, MapFile};
use plink::linking::{crossing_oracle, lk_with, map_degree, Link};
use plink::realize::{apply_twists, decompose_symmetric, enumerate_reachable, twist_schedule, TwistSchedule};
use plink::report::{Check, RunReport};
use plink::seifert::{mod2_check_input, seifert_terms, SeifertInput};
use plink::{verify, EmbeddedComplex, GeoChain, Ring};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] plink::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Core(plink::Error::Parse(_)) => 2,
            _ => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Read { .. } => "read",
            CliError::Write { .. } => "write",
            CliError::Core(e) => e.kind(),
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Exact linking numbers, Seifert forms and twist realization for PL complexes.
#[derive(Parser)]
#[command(name = "plink", version)]
struct Cli {
    /// seed for every random choice (cone apices, pushoff perturbations, generators)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// also write the run report to this file
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a simplicial complex
    Homology {
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "z")]
        ring: Ring,
    },
    /// Homology of a complex relative to a subcomplex
    RelativeHomology {
        complex: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "z")]
        ring: Ring,
    },
    /// Linking number of two disjoint cycles of an embedded complex
    Lk {
        embedded: PathBuf,
        #[arg(long)]
        cycle_a: PathBuf,
        #[arg(long)]
        cycle_b: PathBuf,
        /// cross-check with the projection crossing count (R³ only)
        #[arg(long)]
        oracle: bool,
    },
    /// Degree of a simplicial map between closed pseudomanifolds
    Degree { map: PathBuf },
    /// Push a 1-cycle of a surface off along a normal field
    Pushoff {
        embedded: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long)]
        field: PathBuf,
    },
    /// Symmetric Seifert linking form of a punctured surface
    SeifertForm {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// also compare the form mod 2 with the intersection form
        #[arg(long)]
        mod2_check: bool,
    },
    /// Compare a form mod 2 with the intersection form of the capped surface
    Mod2Check {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// form to check; computed from the surface when omitted
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Write a symmetric form as a sum of terms a s sᵀ
    Decompose { form: PathBuf },
    /// Twists taking one form to another
    TwistSchedule {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    /// Apply a twist schedule to a form
    ApplyTwists {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Forms with entries in [-bound, bound] reachable by twists
    EnumerateReachable {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        bound: i64,
    },
    /// Generate example inputs
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the full verification suite
    VerifyAll,
}

#[derive(Args)]
struct SurfaceArgs {
    embedded: PathBuf,
    #[arg(long)]
    field: PathBuf,
    #[arg(long)]
    basis: PathBuf,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Annulus with l full twists
    Ribbon {
        #[arg(long, allow_hyphen_values = true)]
        twists: i64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Punctured torus with form [[2ta, 2c+1], [2c+1, 2tb]]
    BandSurface {
        #[arg(long, allow_hyphen_values = true)]
        ta: i64,
        #[arg(long, allow_hyphen_values = true)]
        tb: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// A complex from the built-in corpus
    Standard {
        #[arg(long)]
        name: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

struct Ctx {
    report: RunReport,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
        self.report.add_input(path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    fn load<T: for<'de> Deserialize<'de>>(&mut self, path: &Path) -> Result<T> {
        let text = self.read(path)?;
        Ok(io::parse(&text, &path.display().to_string())?)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.report.seed)
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

/// A cycle given either combinatorially on the embedded complex or by explicit points.
#[derive(Deserialize)]
#[serde(untagged)]
enum CycleFile {
    Geo(GeoChainFile),
    Chain(ChainFile),
}

fn load_cycle(ctx: &mut Ctx, e: &EmbeddedComplex, path: &Path) -> Result<GeoChain> {
    Ok(match ctx.load::<CycleFile>(path)? {
        CycleFile::Geo(g) => g.geo()?,
        CycleFile::Chain(c) => {
            let c = c.chain()?;
            e.complex().check_chain(&c)?;
            GeoChain::from_chain(&c, e.coords())?
        }
    })
}

fn load_surface(ctx: &mut Ctx, args: &SurfaceArgs) -> Result<SeifertInput> {
    let e = ctx.load::<ComplexFile>(&args.embedded)?.embedded()?;
    let field = ctx.load::<FieldFile>(&args.field)?.field()?;
    let cycles = ctx.load::<BasisFile>(&args.basis)?.cycles()?;
    Ok(SeifertInput::new(e, field, cycles)?)
}

fn homology_json(h: &HomologyBasis) -> serde_json::Value {
    json!({
        "free_rank": h.free_rank(),
        "torsion": h.torsion_orders(),
        "generators": h.generators().iter().map(ChainFile::from_chain).collect::<Vec<_>>(),
    })
}

fn run(cli: &Cli, name: &str) -> Result<RunReport> {
    let mut ctx = Ctx { report: RunReport::new(name, cli.seed) };
    let result = match &cli.command {
        Command::Homology { complex, dim, ring } => {
            let k = ctx.load::<ComplexFile>(complex)?.complex()?;
            homology_json(&homology(&k, *dim, *ring))
        }
        Command::RelativeHomology { complex, sub, dim, ring } => {
            let k = ctx.load::<ComplexFile>(complex)?.complex()?;
            let l = ctx.load::<ComplexFile>(sub)?.complex()?;
            homology_json(&relative_homology(&k, &l, *dim, *ring)?)
        }
        Command::Lk { embedded, cycle_a, cycle_b, oracle } => {
            let e = ctx.load::<ComplexFile>(embedded)?.embedded()?;
            let a = load_cycle(&mut ctx, &e, cycle_a)?;
            let b = load_cycle(&mut ctx, &e, cycle_b)?;
            let out = lk_with(&Link::new(a.clone(), b.clone())?, &mut ctx.rng())?;
            let mut result = json!({ "lk": out.value, "apex": out.apex, "resamples": out.resamples });
            if *oracle {
                let o = crossing_oracle(&a, &b, cli.seed)?;
                result["oracle"] = json!(o);
                ctx.report.checks.push(Check::new("crossing oracle", o == out.value, format!("cone {}, crossings {o}", out.value)));
            }
            result
        }
        Command::Degree { map } => {
            let m = ctx.load::<MapFile>(map)?;
            let deg = map_degree(
                &m.domain.complex()?,
                &m.domain_fundamental.chain()?,
                &m.codomain.complex()?,
                &m.codomain_fundamental.chain()?,
                &m.vertex_map,
            )?;
            json!({ "degree": deg })
        }
        Command::Pushoff { embedded, cycle, field } => {
            let e = ctx.load::<ComplexFile>(embedded)?.embedded()?;
            let y = ctx.load::<ChainFile>(cycle)?.chain()?;
            let xi = ctx.load::<FieldFile>(field)?.field()?;
            let p = pushoff(&e, &y, &xi)?;
            json!({ "epsilon": plink::rational::format_rat(&p.epsilon), "cycle": GeoChainFile::from_geo(&p.cycle) })
        }
        Command::SeifertForm { surface, mod2_check } => {
            let input = load_surface(&mut ctx, surface)?;
            let terms = seifert_terms(&input, &mut ctx.rng())?;
            if *mod2_check {
                let r = mod2_check_input(&input, &terms.form)?;
                ctx.report.checks.push(Check::new("mod 2", r.pass, format!("intersection form {:?}", r.intersection)));
            }
            json!({
                "matrix": terms.form.matrix,
                "basis_ref": terms.form.basis_ref,
                "terms": { "forward": terms.forward, "backward": terms.backward, "epsilons": terms.epsilons },
            })
        }
        Command::Mod2Check { surface, form } => {
            let input = load_surface(&mut ctx, surface)?;
            let l = match form {
                Some(p) => ctx.load::<FormFile>(p)?.form()?,
                None => seifert_terms(&input, &mut ctx.rng())?.form,
            };
            let r = mod2_check_input(&input, &l)?;
            ctx.report.checks.push(Check::new("mod 2", r.pass, format!("{} mismatched entries", r.mismatches.len())));
            serde_json::to_value(&r).expect("serializable")
        }
        Command::Decompose { form } => {
            let f = ctx.load::<FormFile>(form)?.form()?;
            let terms: Vec<_> = decompose_symmetric(&f).into_iter().map(|(a, s)| json!({ "a": a, "s": s })).collect();
            json!({ "terms": terms })
        }
        Command::TwistSchedule { base, target } => {
            let b = ctx.load::<FormFile>(base)?.form()?;
            let t = ctx.load::<FormFile>(target)?.form()?;
            serde_json::to_value(twist_schedule(&b, &t)?).expect("serializable")
        }
        Command::ApplyTwists { base, schedule } => {
            let b = ctx.load::<FormFile>(base)?.form()?;
            let s = ctx.load::<TwistSchedule>(schedule)?;
            serde_json::to_value(FormFile::from_form(&apply_twists(&b, &s)?)).expect("serializable")
        }
        Command::EnumerateReachable { base, bound } => {
            let b = ctx.load::<FormFile>(base)?.form()?;
            let forms = enumerate_reachable(&b, *bound)?;
            json!({ "count": forms.len(), "forms": forms.iter().map(|f| &f.matrix).collect::<Vec<_>>() })
        }
        Command::Gen(g) => generate(g)?,
        Command::VerifyAll => {
            let outcomes = verify::verify_all(cli.seed);
            for o in &outcomes {
                eprintln!("{}", o.line());
                ctx.report.checks.push(o.check());
            }
            serde_json::to_value(&outcomes).expect("serializable")
        }
    };
    ctx.report.result = result;
    Ok(ctx.report)
}

fn generate(g: &GenCommand) -> Result<serde_json::Value> {
    let mut files: Vec<(PathBuf, String)> = Vec::new();
    let result = match g {
        GenCommand::Ribbon { twists, out_dir } => {
            let r = gen_ribbon(&RibbonSpec::new(*twists))?;
            files.push((out_dir.join("ribbon.json"), io::to_string(&ComplexFile::from_embedded(&r.embedded))));
            files.push((out_dir.join("outer.json"), io::to_string(&ChainFile::from_chain(&r.outer))));
            files.push((out_dir.join("inner.json"), io::to_string(&ChainFile::from_chain(&r.inner))));
            files.push((out_dir.join("core.json"), io::to_string(&ChainFile::from_chain(&r.core))));
            json!({ "twists": twists, "refinement": r.refinement, "vertices": r.embedded.coords().len() })
        }
        GenCommand::BandSurface { ta, tb, c, out_dir } => {
            let s = gen_band_surface(BandSurfaceSpec { ta: *ta, tb: *tb, c: *c })?;
            files.push((out_dir.join("surface.json"), io::to_string(&ComplexFile::from_embedded(&s.input.embedded))));
            files.push((out_dir.join("field.json"), io::to_string(&FieldFile::from_field(&s.input.field))));
            files.push((out_dir.join("basis.json"), io::to_string(&BasisFile::from_cycles(s.input.cycles()))));
            files.push((out_dir.join("expected.json"), io::to_string(&FormFile::from_form(&s.predicted()))));
            json!({ "spec": s.spec, "expected_form": s.predicted().matrix, "vertices": s.input.embedded.coords().len() })
        }
        GenCommand::Standard { name, out_dir } => {
            let k = standard_complex(name)?;
            files.push((out_dir.join(format!("{name}.json")), io::to_string(&ComplexFile::from_complex(&k))));
            json!({ "name": name, "vertices": k.n_vertices(), "dim": k.dim() })
        }
    };
    let mut written = Vec::new();
    for (path, text) in files {
        write(&path, &text)?;
        written.push(path.file_name().unwrap().to_string_lossy().into_owned());
    }
    let mut result = result;
    result["files"] = json!(written);
    Ok(result)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::RelativeHomology { .. } => "relative-homology",
        Command::Lk { .. } => "lk",
        Command::Degree { .. } => "degree",
        Command::Pushoff { .. } => "pushoff",
        Command::SeifertForm { .. } => "seifert-form",
        Command::Mod2Check { .. } => "mod2-check",
        Command::Decompose { .. } => "decompose",
        Command::TwistSchedule { .. } => "twist-schedule",
        Command::ApplyTwists { .. } => "apply-twists",
        Command::EnumerateReachable { .. } => "enumerate-reachable",
        Command::Gen(GenCommand::Ribbon { .. }) => "gen ribbon",
        Command::Gen(GenCommand::BandSurface { .. }) => "gen band-surface",
        Command::Gen(GenCommand::Standard { .. }) => "gen standard",
        Command::VerifyAll => "verify-all",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let name = command_name(&cli.command);
    let outcome = run(&cli, name).and_then(|report| {
        let text = report.to_json();
        if let Some(path) = &cli.json_out {
            write(path, &text)?;
        }
        Ok((report.passed(), text))
    });
    eprintln!("{name}: {:.2?}", start.elapsed());
    match outcome {
        Ok((passed, text)) => {
            print!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}
