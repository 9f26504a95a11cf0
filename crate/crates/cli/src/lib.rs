//! `pg`: command-line front end for the `posgeom` library.
//!
//! Every command produces a [`Report`]. Its `results` payload depends only on
//! the inputs; timings and cache provenance live in `meta`.

pub mod cache;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posgeom::amplituhedron::{
    boundary_divisors, build_curve, curve_matroid, expected_genus, genus_bound, matroid_invariants,
    smoothness_probe, CurveSpec, SmoothnessVerdict,
};
use posgeom::delpezzo::{builtin_region, plain_cube_region, verify_region, RegionJson, RegionSpec, VerifyOptions};
use posgeom::exactalg::json::{IdealJson, PolyJson};
use posgeom::exactalg::{format_rational, parse_rational, q, MonomialOrder, Q, DEFAULT_PRIMES};
use posgeom::grassmann::{catalan, grassmannian_degree, plucker_ideal, vandermonde_z, ZMatrix, ZMatrixJson};
use posgeom::groebner::IdealHandle;

pub use cache::Cache;
pub use report::{Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] posgeom::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
}

type Result<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

#[derive(Parser, Debug)]
#[command(name = "pg", version, about = "Exact computations for amplituhedron boundaries and positive geometries")]
pub struct Cli {
    /// Also write the full report to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<PathBuf>,
    /// Term order for Gröbner computations.
    #[arg(long, global = true, value_enum, default_value_t = OrderArg::Grevlex)]
    order: OrderArg,
    /// Primes for smoothness probes [default: 32003,65537].
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_prime)]
    primes: Vec<u64>,
    /// Allow the expensive m = 4 curve constructions.
    #[arg(long, global = true)]
    heavy: bool,
    /// Vandermonde nodes for the Z matrix [default: 0,1,...,n-1].
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_q, allow_hyphen_values = true)]
    nodes: Vec<Q>,
    /// Directory for cached Gröbner bases [default: .pg-cache].
    #[arg(long, global = true, env = cache::ENV_VAR, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => MonomialOrder::GrevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Grassmannian formulas.
    #[command(subcommand)]
    Grass(GrassCmd),
    /// Amplituhedron boundaries, residual curves and genus formulas.
    #[command(subcommand)]
    Amp(AmpCmd),
    /// Reduced Gröbner basis of an ideal given as JSON.
    Gb {
        /// Ideal JSON: {"vars": [...], "gens": [...]}.
        file: PathBuf,
    },
    /// The cubic-surface region and its canonical form.
    #[command(subcommand)]
    Delpezzo(DpCmd),
    /// The 3-cube regression case.
    #[command(subcommand)]
    Cube(CubeCmd),
    /// The elliptic quintic in Gr(3,5) cut out by five boundary divisors.
    #[command(subcommand)]
    Example5(Ex5Cmd),
}

#[derive(Subcommand, Debug)]
enum GrassCmd {
    /// Degree of Gr(K,N) in its Plücker embedding.
    Degree {
        k: usize,
        n: usize,
        /// Cross-check against the Hilbert polynomial of the Plücker ideal.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Args, Debug)]
struct AmpShape {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    /// Z matrix JSON: {"m": .., "rows": [[..], ..]}; overrides --nodes.
    #[arg(long, value_name = "FILE")]
    z: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum AmpCmd {
    /// Twistor linear forms of all boundary divisors.
    Boundary(AmpShape),
    /// Intersection of Gr(k,k+m) with selected boundary divisors.
    Curve {
        #[command(flatten)]
        shape: AmpShape,
        /// m = 2: indices i of the divisors <Y i i+1>.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
        /// m = 4: labels i,i+1,j,j+1 separated by ';'.
        #[arg(long)]
        labels: Option<String>,
    },
    /// Rank-2 matroid invariants of the m = 2 divisor intersection.
    Matroid {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
    },
    /// Genus formula and bound.
    Genus {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DpCmd {
    /// Run every check on the region.
    Verify {
        /// Multiples of the kernel form that must keep a pole along the residual curve.
        #[arg(long, value_delimiter = ',', value_parser = parse_q, allow_hyphen_values = true)]
        lambda: Vec<Q>,
        /// Region JSON to verify instead of the built-in one.
        #[arg(long, value_name = "FILE")]
        region: Option<PathBuf>,
    },
    /// Print a region as JSON.
    Region {
        /// The 3-cube instead of the cubic-surface region.
        #[arg(long)]
        cube: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CubeCmd {
    Demo,
}

#[derive(Subcommand, Debug)]
enum Ex5Cmd {
    Verify,
}

fn parse_q(s: &str) -> std::result::Result<Q, String> {
    parse_rational(s.trim()).map_err(|e| e.to_string())
}

fn parse_prime(s: &str) -> std::result::Result<u64, String> {
    let p: u64 = s.trim().parse().map_err(|e| format!("{s}: {e}"))?;
    posgeom::exactalg::Modulus::new(p).map_err(|e| e.to_string())?;
    Ok(p)
}

enum Output {
    Report(Report),
    /// A one-line answer printed instead of the JSON report.
    Line(String, Report),
    Raw(String),
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let t0 = Instant::now();
    let out = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("pg: {e}");
            return 2;
        }
    };
    let (line, mut rep) = match out {
        Output::Raw(s) => {
            emit(&s);
            return 0;
        }
        Output::Report(r) => (None, r),
        Output::Line(l, r) => (Some(l), r),
    };
    rep.meta.wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
    let text = serde_json::to_string_pretty(&rep).expect("report serializes");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("pg: {}: {e}", path.display());
            return 2;
        }
    }
    emit(line.as_deref().unwrap_or(&text));
    for w in &rep.witness {
        if rep.status == Status::Fail {
            eprintln!("pg: failed: {w}");
        }
    }
    rep.status.exit_code()
}

/// Print to stdout; a closed pipe (e.g. `pg ... | head`) is not an error.
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Grass(GrassCmd::Degree { k, n, check }) => grass_degree(cli, *k, *n, *check),
        Cmd::Amp(AmpCmd::Boundary(s)) => amp_boundary(cli, s),
        Cmd::Amp(AmpCmd::Curve { shape, indices, labels }) => amp_curve(cli, shape, indices, labels.as_deref()),
        Cmd::Amp(AmpCmd::Matroid { k, n, indices }) => amp_matroid(*k, *n, indices),
        Cmd::Amp(AmpCmd::Genus { k, m }) => amp_genus(*k, *m),
        Cmd::Gb { file } => gb(cli, file),
        Cmd::Delpezzo(DpCmd::Verify { lambda, region }) => delpezzo_verify(cli, lambda, region.as_deref()),
        Cmd::Delpezzo(DpCmd::Region { cube }) => {
            let r = if *cube { plain_cube_region() } else { builtin_region() };
            Ok(Output::Raw(serde_json::to_string_pretty(&RegionJson::from_region(&r)).expect("region serializes")))
        }
        Cmd::Cube(CubeCmd::Demo) => region_report("cube demo", cli, &plain_cube_region(), &[], json!({"region": "cube"})),
        Cmd::Example5(Ex5Cmd::Verify) => example5(cli),
    }
}

fn primes(cli: &Cli) -> Vec<u64> {
    if cli.primes.is_empty() {
        DEFAULT_PRIMES.to_vec()
    } else {
        cli.primes.clone()
    }
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn grass_degree(cli: &Cli, k: usize, n: usize, check: bool) -> Result<Output> {
    let d = grassmannian_degree(k, n)?;
    let mut results = json!({"k": k, "n": n, "degree": d.to_string()});
    let mut status = Status::Pass;
    let mut witness = Vec::new();
    if check {
        let ctx = plucker_ideal(k, n)?;
        let order = MonomialOrder::from(cli.order);
        let ideal = IdealHandle::new(&ctx.ring.with_order(order), ctx.relations.gens().to_vec())?;
        let h = ideal.hilbert()?;
        results["hilbert"] = serde_json::to_value(h.report()).expect("hilbert serializes");
        if h.degree != d {
            status = Status::Fail;
            witness.push(format!("Hilbert degree {} differs from formula {d}", h.degree));
        }
    }
    let inputs = json!({"k": k, "n": n, "check": check, "order": cli.order_name()});
    let rep = Report::new("grass degree", &inputs, status, results).with_witness(witness);
    Ok(Output::Line(d.to_string(), rep))
}

impl Cli {
    fn order_name(&self) -> String {
        MonomialOrder::from(self.order).to_string()
    }
}

fn load_z(cli: &Cli, s: &AmpShape) -> Result<ZMatrix> {
    let width = s.k + s.m;
    let z = match &s.z {
        Some(path) => {
            let z = ZMatrix::from_json(&read_json::<ZMatrixJson>(path)?)?;
            if z.m != s.m || z.n() != s.n || z.width() != width {
                return Err(input(format!(
                    "Z is {}x{} with m = {}, expected {}x{width} with m = {}",
                    z.n(),
                    z.width(),
                    z.m,
                    s.n,
                    s.m
                )));
            }
            z
        }
        None => {
            let nodes: Vec<Q> = if cli.nodes.is_empty() { (0..s.n as i64).map(q).collect() } else { cli.nodes.clone() };
            if nodes.len() != s.n {
                return Err(input(format!("{} nodes given for n = {}", nodes.len(), s.n)));
            }
            vandermonde_z(&nodes, width, s.m)?
        }
    };
    Ok(z)
}

fn shape_inputs(cli: &Cli, s: &AmpShape, z: &ZMatrix) -> Value {
    json!({"m": s.m, "k": s.k, "n": s.n, "z": z.to_json(), "order": cli.order_name()})
}

fn amp_boundary(cli: &Cli, s: &AmpShape) -> Result<Output> {
    let z = load_z(cli, s)?;
    let ctx = plucker_ideal(s.k, s.k + s.m)?;
    let b = boundary_divisors(&ctx, &z, s.m)?;
    let divisors: Vec<Value> = b
        .labels
        .iter()
        .zip(&b.forms)
        .map(|(l, f)| json!({"label": l, "form": PolyJson::from_poly(&f.form)}))
        .collect();
    let results = json!({
        "m": s.m, "k": s.k, "n": s.n,
        "positive": z.positive,
        "count": divisors.len(),
        "divisors": divisors,
    });
    let mut status = Status::Pass;
    let mut witness = Vec::new();
    if !z.positive {
        status = Status::Partial;
        witness.push("Z has a non-positive maximal minor".into());
    }
    Ok(Output::Report(Report::new("amp boundary", &shape_inputs(cli, s, &z), status, results).with_witness(witness)))
}

fn parse_labels(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            g.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|e| input(format!("label {g:?}: {e}"))))
                .collect()
        })
        .collect()
}

/// Invariants and smoothness of a residual curve, with the worst verdict as status.
fn curve_results(c: &CurveSpec, primes: &[u64]) -> Result<(Value, Status, Vec<String>)> {
    let verdicts = smoothness_probe(c, primes)?;
    let mut status = Status::Pass;
    let mut witness = Vec::new();
    for v in &verdicts {
        match v {
            SmoothnessVerdict::SmoothModP { .. } => {}
            SmoothnessVerdict::SingularModP { p, witness: w } => {
                status = Status::Fail;
                witness.push(format!("singular mod {p}: {}", w.join(", ")));
            }
            SmoothnessVerdict::Indeterminate { p, reason } => {
                if status == Status::Pass {
                    status = Status::Partial;
                }
                witness.push(format!("indeterminate mod {p}: {reason}"));
            }
        }
    }
    let smooth: Vec<u64> = verdicts
        .iter()
        .filter_map(|v| match v {
            SmoothnessVerdict::SmoothModP { p } => Some(*p),
            _ => None,
        })
        .collect();
    let h = &c.hilbert;
    let results = json!({
        "k": c.k, "n": c.n, "m": c.m,
        "selection": c.labels,
        "dims": c.dims,
        "transversal": c.transversal(),
        "dim": h.dim,
        "degree": h.degree.to_string(),
        "genus": h.genus.as_ref().map(|g| g.to_string()),
        "hp": h.hp.iter().map(format_rational).collect::<Vec<_>>(),
        "smooth_mod": smooth,
        "verdicts": verdicts,
        "ideal": IdealJson::from_polys(c.ideal.ring(), c.ideal.gens()),
    });
    Ok((results, status, witness))
}

fn amp_curve(cli: &Cli, s: &AmpShape, indices: &[usize], labels: Option<&str>) -> Result<Output> {
    let sel: Vec<Vec<usize>> = match s.m {
        2 => {
            if labels.is_some() {
                return Err(input("use --indices for m = 2"));
            }
            indices.iter().map(|&i| vec![i]).collect()
        }
        4 => {
            if !cli.heavy {
                return Err(input("m = 4 curves are expensive; pass --heavy to run them"));
            }
            parse_labels(labels.ok_or_else(|| input("m = 4 needs --labels"))?)?
        }
        m => return Err(input(format!("m must be 2 or 4, got {m}"))),
    };
    let z = load_z(cli, s)?;
    let ctx = plucker_ideal(s.k, s.k + s.m)?;
    let c = build_curve(&ctx, &z, &sel)?;
    let (results, status, witness) = curve_results(&c, &primes(cli))?;
    let mut inputs = shape_inputs(cli, s, &z);
    inputs["selection"] = json!(sel);
    inputs["primes"] = json!(primes(cli));
    Ok(Output::Report(Report::new("amp curve", &inputs, status, results).with_witness(witness)))
}

fn amp_matroid(k: usize, n: usize, indices: &[usize]) -> Result<Output> {
    if k == 0 {
        return Err(input("k must be positive"));
    }
    let nm = curve_matroid(indices, n)?;
    let inv = matroid_invariants(&nm, k);
    let mut results = serde_json::to_value(&inv).expect("invariants serialize");
    results["loops"] = json!(nm.loops);
    results["intervals"] = json!(nm.intervals);
    let inputs = json!({"k": k, "n": n, "indices": indices});
    Ok(Output::Report(Report::new("amp matroid", &inputs, Status::Pass, results)))
}

fn amp_genus(k: usize, m: usize) -> Result<Output> {
    let g = expected_genus(k, m)?;
    let b = genus_bound(k, m)?;
    let mut results = json!({
        "k": k, "m": m,
        "expected_genus": format_rational(&g),
        "genus_bound": format_rational(&b.bound),
        "note": b.note,
    });
    match m {
        2 => results["catalan"] = json!(catalan(k).to_string()),
        _ => results["grassmannian_degree"] = json!(grassmannian_degree(k, k + m)?.to_string()),
    }
    Ok(Output::Report(Report::new("amp genus", &json!({"k": k, "m": m}), Status::Pass, results)))
}

fn gb(cli: &Cli, file: &Path) -> Result<Output> {
    let order = MonomialOrder::from(cli.order);
    let (ring, gens) = read_json::<IdealJson>(file)?.to_polys(order)?;
    let canon = serde_json::to_vec(&IdealJson::from_polys(&ring, &gens)).expect("ideal serializes");
    let order_name = cli.order_name();
    let key = cache::key_of(&[b"gb", order_name.as_bytes(), &canon]);
    let ideal = IdealHandle::new(&ring, gens)?;

    let store = Cache::resolve(cli.cache_dir.clone());
    let (basis_json, src): (Vec<PolyJson>, _) =
        store.get_or_compute(&key, || Ok(ideal.basis().iter().map(PolyJson::from_poly).collect()))?;
    let basis = basis_json.iter().map(|p| p.to_poly(&ring)).collect::<posgeom::Result<Vec<_>>>()?;
    ideal.seed_basis(order, basis);

    let hilbert = if ideal.is_homogeneous() {
        Some(serde_json::to_value(ideal.hilbert()?.report()).expect("hilbert serializes"))
    } else {
        None
    };
    let results = json!({
        "vars": ring.vars(),
        "order": order_name,
        "basis": basis_json,
        "hilbert": hilbert,
    });
    let inputs: Value = serde_json::from_slice(&canon).expect("round trip");
    let mut rep = Report::new("gb", &json!({"ideal": inputs, "order": order_name}), Status::Pass, results);
    rep.meta.cache = Some(src.as_str().to_string());
    Ok(Output::Report(rep))
}

fn region_report(command: &str, cli: &Cli, r: &RegionSpec, lambdas: &[Q], mut inputs: Value) -> Result<Output> {
    let mut opts = VerifyOptions { primes: primes(cli), ..VerifyOptions::default() };
    if !lambdas.is_empty() {
        opts.lambdas = lambdas.to_vec();
    }
    inputs["lambdas"] = json!(qs(&opts.lambdas));
    inputs["primes"] = json!(opts.primes);
    let rr = verify_region(r, &opts);
    let witness: Vec<String> = rr
        .failed()
        .iter()
        .map(|c| match &c.witness {
            Some(w) => format!("{}: {} ({w})", c.name, c.detail),
            None => format!("{}: {}", c.name, c.detail),
        })
        .collect();
    let mut rep =
        Report::new(command, &inputs, rr.status.into(), serde_json::to_value(&rr).expect("report serializes"))
            .with_witness(witness);
    rep.meta.timings_ms = rr.timings_ms.clone();
    Ok(Output::Report(rep))
}

fn delpezzo_verify(cli: &Cli, lambdas: &[Q], region: Option<&Path>) -> Result<Output> {
    let r = match region {
        Some(path) => read_json::<RegionJson>(path)?.to_region()?,
        None => builtin_region(),
    };
    let inputs = json!({"region": RegionJson::from_region(&r)});
    region_report("delpezzo verify", cli, &r, lambdas, inputs)
}

fn example5(cli: &Cli) -> Result<Output> {
    let (k, n, m) = (3usize, 10usize, 2usize);
    let shape = AmpShape { m, k, n, z: None };
    let z = load_z(cli, &shape)?;
    let ctx = plucker_ideal(k, k + m)?;
    let sel: Vec<Vec<usize>> = [1, 3, 5, 7, 9].iter().map(|&i| vec![i]).collect();
    let c = build_curve(&ctx, &z, &sel)?;
    let ps = primes(cli);
    let (mut results, mut status, mut witness) = curve_results(&c, &ps)?;

    let want_degree = catalan(k);
    let want_genus = expected_genus(k, m)?;
    let got_genus = c.hilbert.genus.clone().map(Q::from_integer);
    let checks = [
        ("dim", c.hilbert.dim == 1, format!("dim {} (want 1)", c.hilbert.dim)),
        ("degree", c.hilbert.degree == want_degree, format!("degree {} (want {want_degree})", c.hilbert.degree)),
        (
            "genus",
            got_genus.as_ref() == Some(&want_genus),
            format!("genus {:?} (want {})", got_genus.as_ref().map(format_rational), format_rational(&want_genus)),
        ),
        ("smooth", c.hilbert.dim == 1 && results["smooth_mod"].as_array().is_some_and(|a| a.len() == ps.len()), format!("smooth mod {ps:?}")),
    ];
    for (name, ok, detail) in &checks {
        if !ok {
            status = Status::Fail;
            witness.push(format!("{name}: {detail}"));
        }
    }
    results["expected"] = json!({"degree": want_degree.to_string(), "genus": format_rational(&want_genus)});
    results["checks"] = checks.iter().map(|(n, ok, _)| (n.to_string(), json!(ok))).collect::<serde_json::Map<_, _>>().into();
    let mut inputs = shape_inputs(cli, &shape, &z);
    inputs["selection"] = json!(sel);
    inputs["primes"] = json!(ps);
    Ok(Output::Report(Report::new("example5 verify", &inputs, status, results).with_witness(witness)))
}
