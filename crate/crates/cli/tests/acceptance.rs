//! End-to-end acceptance run. Every criterion prints one PASS or FAIL line;
//! the test fails if any line is FAIL.

#[path = "../../core/tests/support/properties.rs"]
mod checks;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use jsonschema::Registry;
use plclass::algebra::{simplify_presentation, RecognitionBudget};
use plclass::isosig::{canonical_sig, decode_sig, import_external_sig, write_sig_file, IsoSig, SigFormat};
use plclass::Triangulation4;
use serde_json::{json, Value};
use tempfile::TempDir;

const S4_C: &str = "eAMPcaabcddd+aoa+aAa8aQara";
const B4_C: &str = "eGzMkabcdddcaGa8aAa0awa";
const C: &str = "cHIbbb0bRbpb";
const SCHEMA_BASE: &str = "https://plclass.invalid/schemas/";

type Outcome = Result<String, String>;

/// Writes past the test harness's output capture, so the criterion lines
/// show up in a plain `cargo test` run too.
macro_rules! say {
    ($($arg:tt)*) => {{
        let mut out = std::io::stdout().lock();
        writeln!(out, $($arg)*).unwrap();
        out.flush().unwrap();
    }};
}

fn plclass(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_plclass")).args(args).output().expect("binary runs");
    (out, start.elapsed())
}

fn succeeded(out: &Output) -> Result<(), String> {
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim()))
    }
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn stdout_json(out: &Output) -> Result<Value, String> {
    serde_json::from_slice(&out.stdout).map_err(|e| format!("stdout is not JSON: {e}"))
}

fn schema_registry() -> Registry<'static> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas");
    let mut files: Vec<PathBuf> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    let resources = files.into_iter().map(|p| {
        let name = p.file_name().unwrap().to_str().unwrap().to_owned();
        let mut schema: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
        schema["$id"] = json!(format!("{SCHEMA_BASE}{name}"));
        (format!("{SCHEMA_BASE}{name}"), schema)
    });
    let mut builder = Registry::new();
    for (uri, schema) in resources {
        builder = builder.add(uri, schema).unwrap();
    }
    builder.prepare().unwrap()
}

fn conforms(registry: &Registry<'static>, schema: &str, value: &Value) -> Result<(), String> {
    let validator = jsonschema::options()
        .with_registry(registry)
        .build(&json!({ "$ref": format!("{SCHEMA_BASE}{schema}") }))
        .map_err(|e| format!("{schema}: {e}"))?;
    validator.validate(value).map_err(|e| format!("does not match {schema}: {e}"))
}

fn tally(summary: &Value, key: &str) -> u64 {
    summary["homology_tally"][key].as_u64().unwrap_or(0)
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

struct Run {
    dir: TempDir,
    registry: Registry<'static>,
}

impl Run {
    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn path_str(&self, name: &str) -> String {
        self.path(name).to_str().unwrap().to_owned()
    }

    fn census(&self, n: usize, limit: Duration, expect: impl Fn(&Value) -> Result<(), String>) -> Outcome {
        let (sigs, summary) = (self.path_str(&format!("c{n}.sig")), self.path_str(&format!("c{n}.json")));
        let (out, took) = plclass(&["census", "--size", &n.to_string(), "--out", &sigs, "--summary", &summary]);
        succeeded(&out)?;
        let s = read_json(Path::new(&summary))?;
        conforms(&self.registry, "census-summary.schema.json", &s)?;
        expect(&s)?;
        check(s["quarantined"].as_array().is_some_and(|q| q.is_empty()), || "quarantine is not empty".into())?;
        check(took < limit, || format!("took {took:?}"))?;
        Ok(format!(
            "{} graphs, {} raw candidates, {} distinct, tally {}, {:.1}s",
            s["graphs"], s["raw_candidates"], s["distinct"], s["homology_tally"], took.as_secs_f64()
        ))
    }

    fn members(&self, n: usize) -> Vec<IsoSig> {
        let text = fs::read_to_string(self.path(&format!("c{n}.sig"))).unwrap();
        text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).map(|l| canonical_sig(&decode_sig(l).unwrap()).unwrap()).collect()
    }

    fn write_sigs(&self, name: &str, sigs: &[IsoSig]) -> String {
        let mut buf = Vec::new();
        write_sig_file(&mut buf, SigFormat::Native, sigs).unwrap();
        fs::write(self.path(name), buf).unwrap();
        self.path_str(name)
    }

    fn verify_certs(&self, dir: &str) -> Result<usize, String> {
        let mut n = 0;
        for entry in fs::read_dir(dir).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            conforms(&self.registry, "certificate.schema.json", &read_json(&path)?)?;
            let (out, _) = plclass(&["cert", "verify", "--cert", path.to_str().unwrap()]);
            succeeded(&out).map_err(|e| format!("{}: {e}", path.display()))?;
            n += 1;
        }
        Ok(n)
    }
}

fn is_s4_part(t: &Triangulation4) -> bool {
    t.euler_characteristic() == 2 && t.homology().to_string() == "0, 0, 0"
}

fn s4_part(run: &Run) -> (Vec<IsoSig>, IsoSig) {
    let s4 = run.members(4).into_iter().filter(|s| is_s4_part(&decode_sig(s.as_str()).unwrap())).collect();
    let special = canonical_sig(&import_external_sig(S4_C).unwrap()).unwrap();
    (s4, special)
}

fn census_two(run: &Run) -> Outcome {
    run.census(2, Duration::from_secs(60), |s| {
        check(
            s["graphs"] == 3
                && s["raw_candidates"] == 432
                && s["distinct"] == 8
                && tally(s, "0, 0, 0") == 6
                && tally(s, "Z, 0, Z") == 2
                && s["homology_tally"].as_object().unwrap().len() == 2,
            || format!("summary {s}"),
        )
    })
}

fn census_four(run: &Run) -> Outcome {
    run.census(4, Duration::from_secs(3600), |s| {
        // 126 triangulations of S3 x S1 plus the two twisted L(3,1) bundles
        // over the circle, which share their homology.
        check(
            s["graphs"] == 26
                && s["distinct"] == 784
                && tally(s, "0, 0, 0") == 647
                && tally(s, "Z, 0, Z") == 126 + 2
                && tally(s, "0, Z, 0") == 4
                && tally(s, "Z, Z, Z") == 3,
            || format!("summary {s}"),
        )
    })
}

fn classify_two(run: &Run) -> Outcome {
    let (report, certs) = (run.path_str("r2.json"), run.path_str("certs2"));
    let input = run.path_str("c2.sig");
    let (out, took) = plclass(&["classify", "run", "--input", &input, "--report", &report, "--certs", &certs]);
    succeeded(&out)?;
    let r = read_json(Path::new(&report))?;
    conforms(&run.registry, "classify-report.schema.json", &r)?;
    let sizes: Vec<usize> = r["parts"].as_array().unwrap().iter().map(|p| p["classes"].as_array().unwrap().len()).collect();
    check(sizes == [1, 1] && r["total_classes"] == 2, || format!("classes per part {sizes:?}"))?;
    let verified = run.verify_certs(&certs)?;
    check(verified == 6, || format!("{verified} certificates, expected 6"))?;
    check(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("classes per part {sizes:?}, {verified} certificates replayed, {:.1}s", took.as_secs_f64()))
}

fn classify_s4_four(run: &Run) -> Outcome {
    let (s4, special) = s4_part(run);
    check(s4.len() == 647 && s4.contains(&special), || format!("S4 part has {} members", s4.len()))?;
    let input = run.write_sigs("s4.sig", &s4);
    let (report, certs) = (run.path_str("r4.json"), run.path_str("certs4"));
    let (out, took) = plclass(&["classify", "run", "--input", &input, "--report", &report, "--certs", &certs]);
    succeeded(&out)?;
    let r = read_json(Path::new(&report))?;
    conforms(&run.registry, "classify-report.schema.json", &r)?;
    let classes = r["parts"][0]["classes"].as_array().unwrap();
    let sizes: Vec<u64> = classes.iter().map(|c| c["size"].as_u64().unwrap()).collect();
    let own = classes
        .iter()
        .find(|c| c["members"].as_array().unwrap().iter().any(|m| m == special.as_str()))
        .ok_or("S4_C missing from the report")?;
    check(classes.len() <= 3, || format!("{} classes {sizes:?}", classes.len()))?;
    check(own["size"] == 1, || format!("S4_C merged into a class of {}", own["size"]))?;
    let verified = run.verify_certs(&certs)?;
    check(verified == 647 - classes.len(), || format!("{verified} certificates for {} classes", classes.len()))?;
    check(took < Duration::from_secs(3600), || format!("took {took:?}"))?;
    Ok(format!("{} classes {sizes:?}, S4_C alone, {verified} certificates replayed, {:.1}s", classes.len(), took.as_secs_f64()))
}

fn separation(run: &Run) -> Outcome {
    let (s4, special) = s4_part(run);
    let others: Vec<IsoSig> = s4.into_iter().filter(|s| *s != special).collect();
    let targets = run.write_sigs("targets.sig", &others);
    let (out, took) = plclass(&["search", "exhaust", "--format", "external", "--sig", S4_C, "--targets", &targets, "--excess", "2"]);
    succeeded(&out)?;
    let v = stdout_json(&out)?;
    conforms(&run.registry, "traversal-outcome.schema.json", &v)?;
    check(v["outcome"] == "Separated", || format!("outcome {}", v["outcome"]))?;
    check(took < Duration::from_secs(600), || format!("took {took:?}"))?;
    Ok(format!("Separated from {} targets after {} triangulations, {:.1}s", others.len(), v["visited"], took.as_secs_f64()))
}

fn pathological(run: &Run) -> Outcome {
    let (out, _) = plclass(&["tri", "invariants", "--format", "external", "--sig", C]);
    succeeded(&out)?;
    let v = stdout_json(&out)?;
    conforms(&run.registry, "invariants.schema.json", &v)?;
    check(v["f_vector"] == json!([1, 1, 5, 6, 2]), || format!("f-vector {}", v["f_vector"]))?;
    check(v["manifold"] == "no", || format!("manifold {}", v["manifold"]))?;
    let b = &v["boundary"];
    check(b["tetrahedra"] == 2 && b["components"] == 1 && b["closed"] == true, || format!("boundary {b}"))?;
    check(b["truncated_h1"] == "Z", || format!("boundary H1 {}", b["truncated_h1"]))?;
    Ok(format!("f-vector {}, manifold {}, boundary of {} tetrahedra with H1 = {}", v["f_vector"], v["manifold"], b["tetrahedra"], b["truncated_h1"]))
}

fn fundamental_group() -> Outcome {
    let t = import_external_sig(B4_C).map_err(|e| e.to_string())?;
    let g = t.fundamental_group();
    let budget = RecognitionBudget::default().tietze_steps;
    let s = simplify_presentation(&g, budget);
    check(s.is_trivial(), || format!("simplifies to {s:?}"))?;
    Ok(format!("{} generators and {} relators reduce to the trivial group within {budget} steps", g.generators, g.relators.len()))
}

fn properties() -> Outcome {
    let start = Instant::now();
    let two = checks::census(2);
    let four = checks::census(4);
    let both: Vec<Triangulation4> = two.iter().chain(&four).cloned().collect();
    let results = [
        ("boundary", checks::boundary_squares_vanish(&both)),
        ("moves n=2", checks::moves_preserve_invariants_exhaustively(&two)),
        ("moves n=4", checks::moves_preserve_invariants_sampled(&four, 10_000, 1)),
        ("round trips", checks::round_trips_restore_signatures(&both)),
        ("relabeling", checks::relabeling_invariance(&both, 100, 2)),
        ("smith", checks::smith_against_minor_gcd(1000, 3)),
        ("registry", checks::registry_against_partition_oracle(&four[0], 1000, 4)),
    ];
    let took = start.elapsed();
    for (name, r) in &results {
        match r {
            Ok(s) => say!("    {name}: {s}"),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    check(took < Duration::from_secs(600), || format!("took {took:?}"))?;
    Ok(format!("7 suites, {:.1}s", took.as_secs_f64()))
}

fn determinism(run: &Run) -> Outcome {
    let input = run.path_str("c2.sig");
    let reports: Vec<String> = (0..2).map(|i| run.path_str(&format!("det{i}.json"))).collect();
    for r in &reports {
        let (out, _) = plclass(&["classify", "run", "--input", &input, "--seed", "17", "--report", r]);
        succeeded(&out)?;
    }
    let (a, b) = (fs::read(&reports[0]).unwrap(), fs::read(&reports[1]).unwrap());
    check(a == b, || "reports differ".into())?;
    Ok(format!("two reports of {} bytes are identical", a.len()))
}

#[test]
fn acceptance_criteria() {
    let run = Run { dir: tempfile::tempdir().unwrap(), registry: schema_registry() };
    let criteria: [(&str, &dyn Fn(&Run) -> Outcome); 9] = [
        ("census n=2", &census_two),
        ("census n=4", &census_four),
        ("classification n=2", &classify_two),
        ("classification n=4, S4 part", &classify_s4_four),
        ("separation of S4_C at excess 2", &separation),
        ("pathological complex", &pathological),
        ("fundamental group of B4_C", &|_| fundamental_group()),
        ("property suites", &|_| properties()),
        ("determinism", &determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f(&run) {
            Ok(detail) => say!("PASS {}. {name}: {detail}", i + 1),
            Err(e) => {
                say!("FAIL {}. {name}: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
