use std::collections::HashSet;
use std::fmt;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context};
use plclass::census::{build_census, CensusError, CensusSpec};
use plclass::classify::{group_by_invariants, run_main_algorithm, Certificate, ClassificationReport};
use plclass::isosig::{canonical_sig, decode_sig, import_external_sig, read_sig_file, write_sig_file, IsoSig, SigFormat};
use plclass::search::{exhaustive_traverse, TraversalOutcome};
use plclass::tri::{LinkKind, Manifoldness};
use plclass::{Triangulation3, Triangulation4};
use serde::Serialize;

use crate::config::{RunConfig, CONFIG_VERSION};
use crate::{CensusArgs, ClassifyArgs, ExhaustArgs, Format, InvariantsArgs, VerifyArgs};

/// A failed command: usage errors exit with 2, everything else with 1.
#[derive(Debug)]
pub enum CliError {
    Usage(anyhow::Error),
    Failure(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) | CliError::Failure(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failure(e)
    }
}

type CmdResult = Result<ExitCode, CliError>;

fn usage(e: impl Into<anyhow::Error>) -> CliError {
    CliError::Usage(e.into())
}

fn set_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage(anyhow!("--jobs must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| CliError::Failure(e.into()))?;
    }
    Ok(())
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn parse_sig(sig: &str, format: Format) -> Result<Triangulation4, CliError> {
    let t = match format {
        Format::Native => decode_sig(sig),
        Format::External => import_external_sig(sig),
    };
    t.map_err(usage)
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => RunConfig::load(p).map_err(CliError::Usage),
        None => Ok(RunConfig::default()),
    }
}

/// Reads a signature file and returns canonical native signatures.
fn load_sigs(path: &Path) -> Result<Vec<IsoSig>, CliError> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display())).map_err(usage)?;
    let (format, lines) = read_sig_file(BufReader::new(file)).map_err(usage)?;
    lines
        .iter()
        .map(|s| {
            let t = match format {
                SigFormat::Native => decode_sig(s),
                SigFormat::External => import_external_sig(s),
            };
            t.and_then(|t| canonical_sig(&t)).map_err(|e| usage(anyhow!("{s}: {e}")))
        })
        .collect()
}

pub fn census(args: CensusArgs) -> CmdResult {
    set_jobs(args.jobs)?;
    let spec = CensusSpec::new(args.size).map_err(|e: CensusError| usage(e))?;
    let start = Instant::now();
    let census = build_census(&spec);
    log::info!("census of size {} finished in {:.1}s", args.size, start.elapsed().as_secs_f64());
    match &args.out {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(f);
            write_sig_file(&mut w, SigFormat::Native, &census.signatures).context("writing signatures")?;
            w.flush().context("writing signatures")?;
        }
        None => write_sig_file(std::io::stdout().lock(), SigFormat::Native, &census.signatures).context("writing signatures")?,
    }
    #[derive(Serialize)]
    struct Summary<'a> {
        #[serde(flatten)]
        summary: &'a plclass::census::CensusSummary,
        quarantined: &'a [IsoSig],
    }
    let summary = Summary { summary: &census.summary, quarantined: &census.quarantine };
    let text = serde_json::to_string_pretty(&summary).map_err(anyhow::Error::from)? + "\n";
    match &args.summary {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => eprint!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BoundaryInfo {
    tetrahedra: usize,
    f_vector: Vec<usize>,
    components: usize,
    closed: bool,
    /// Simplicial H₁ and H₂ of the boundary complex.
    homology: [String; 2],
    /// H₁ of the boundary with its vertices truncated; connected boundaries only.
    truncated_h1: Option<String>,
}

#[derive(Serialize)]
struct Invariants {
    /// Native signature; absent for disconnected triangulations.
    sig: Option<IsoSig>,
    size: usize,
    f_vector: Vec<usize>,
    chi: i64,
    homology: String,
    orientable: bool,
    closed: bool,
    /// No edge or triangle is identified with itself in reverse.
    valid: bool,
    manifold: Manifoldness,
    vertex_links: Vec<LinkKind>,
    boundary: Option<BoundaryInfo>,
}

pub fn invariants(args: InvariantsArgs) -> CmdResult {
    let t = parse_sig(&args.sig, args.format)?;
    let report = t.validity_report();
    let boundary = t.boundary_triangulation::<4>().map(|b: Triangulation3| {
        let h = b.homology_groups();
        BoundaryInfo {
            tetrahedra: b.size(),
            f_vector: b.f_vector(),
            components: b.components().len(),
            closed: b.is_closed(),
            homology: [h[1].to_string(), h[2].to_string()],
            truncated_h1: b.is_connected().then(|| b.dual_fundamental_group().abelianization().to_string()),
        }
    });
    let inv = Invariants {
        sig: canonical_sig(&t).ok(),
        size: t.size(),
        f_vector: t.f_vector(),
        chi: t.euler_characteristic(),
        homology: t.homology().to_string(),
        orientable: t.is_orientable(),
        closed: t.is_closed(),
        valid: report.invalid_edges.is_empty() && report.invalid_triangles.is_empty(),
        manifold: report.is_manifold,
        vertex_links: report.vertex_links,
        boundary,
    };
    write_json(None, &inv)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RunReport {
    version: u32,
    config: RunConfig,
    inputs: usize,
    total_classes: usize,
    /// Every part ended with a single class.
    converged: bool,
    parts: Vec<ClassificationReport>,
}

pub fn classify(args: ClassifyArgs) -> CmdResult {
    set_jobs(args.jobs)?;
    let mut cfg = load_config(args.config.as_deref())?;
    if let Some(seed) = args.seed {
        cfg = cfg.with_seed(seed);
    }
    let sigs = load_sigs(&args.input)?;
    let mut seen = HashSet::new();
    if let Some(dup) = sigs.iter().find(|s| !seen.insert(*s)) {
        return Err(usage(anyhow!("{} lists {dup} twice (up to isomorphism)", args.input.display())));
    }
    for s in &sigs {
        let t = decode_sig(s.as_str()).map_err(anyhow::Error::from)?;
        match t.validity_report_with(cfg.recognition_budget).is_manifold {
            Manifoldness::Yes => {}
            Manifoldness::No => return Err(usage(anyhow!("{s} is not a manifold triangulation"))),
            Manifoldness::Unknown => log::warn!("could not confirm that {s} is a manifold"),
        }
    }
    if let Some(dir) = &args.certs {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }

    let params = cfg.classify_params();
    let parts = group_by_invariants(&sigs).map_err(anyhow::Error::from)?;
    let mut reports = Vec::new();
    let mut certs: Vec<(usize, Vec<Certificate>)> = Vec::new();
    for (p, (key, members)) in parts.into_iter().enumerate() {
        log::info!("part {p} ({} members): chi {}, homology {}", members.len(), key.chi, key.homology);
        let mut report = run_main_algorithm(&members, &params).map_err(anyhow::Error::from)?;
        report.part_key = Some(key);
        if let Some(t) = &report.timings {
            log::info!(
                "part {p}: step 1 {:.2}s, step 2 {:.2}s, {} merges",
                t.step1_s,
                t.step2_s,
                t.per_merge_s.len()
            );
        }
        certs.push((p, std::mem::take(&mut report.certificates)));
        reports.push(report);
    }
    if let Some(dir) = &args.certs {
        for (p, list) in &certs {
            for (m, c) in list.iter().enumerate() {
                let path = dir.join(format!("part{p:02}-merge{m:04}.json"));
                write_json(Some(&path), c)?;
            }
        }
    }
    let out = RunReport {
        version: CONFIG_VERSION,
        inputs: sigs.len(),
        total_classes: reports.iter().map(|r| r.classes.len()).sum(),
        converged: reports.iter().all(|r| r.classes.len() == 1),
        parts: reports,
        config: cfg,
    };
    write_json(args.report.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn exhaust(args: ExhaustArgs) -> CmdResult {
    let mut cfg = load_config(args.config.as_deref())?;
    if let Some(h) = args.excess {
        cfg.traversal.excess_height = h;
    }
    let t = parse_sig(&args.sig, args.format)?;
    let targets: HashSet<IsoSig> = load_sigs(&args.targets)?.into_iter().collect();
    let start = Instant::now();
    let outcome = exhaustive_traverse(&t, &cfg.traversal, &targets).map_err(anyhow::Error::from)?;
    log::info!("traversal finished in {:.1}s", start.elapsed().as_secs_f64());
    if let (Some(path), TraversalOutcome::Connected { certificate, .. }) = (&args.cert, &outcome) {
        write_json(Some(path), certificate)?;
    }
    write_json(None, &outcome)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.cert).with_context(|| format!("reading {}", args.cert.display()))?;
    let cert: Certificate =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", args.cert.display()))?;
    match cert.replay() {
        Ok(_) => {
            println!("valid: {} -> {} in {} moves", cert.from, cert.to, cert.steps.len());
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => Err(CliError::Failure(anyhow!("invalid certificate: {e}"))),
    }
}
