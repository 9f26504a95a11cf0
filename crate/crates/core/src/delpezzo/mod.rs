//! Verification of a positive geometry bounded by a cubic surface and five
//! planes, and of the plain cube used as a regression case.
//!
//! [`verify_region`] runs the stages in order (construction, residual
//! arrangement, adjoint, vertices and residues, facet residue, kernel form)
//! and records one named check per property. A failing construction or
//! geometry stage stops the pipeline.

mod arrangement;
mod facet;
mod factor;
pub mod interval;
mod region;
mod vertex;

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

pub use arrangement::{
    adjoint_interpolate, monomials_of_degree, residual_arrangement, AdjointSpace, Arrangement, Component,
    ComponentKind, EdgeLine, PlaneChart,
};
pub use facet::{
    facet_residue, kernel_check, quad_canonical_form, residual_disjointness, DisjointResult, FacetResidue,
    KernelSample, QuadForm,
};
pub use factor::{factor_cubic_line_conic, linear_factor};
pub use region::{
    builtin_region, plain_cube_region, verify_construction, ConstructionCheck, Facet, FacetJson, PlaneData,
    PlaneDataJson, PointJson, RegionJson, RegionSpec,
};
pub use vertex::{
    interior_point, residue_tolerance, vertex_enumerate, vertex_residue, Certified, VertexCert, VertexPoint,
};

use crate::amplituhedron::smoothness_probe_ideal;
use crate::error::Error;
use crate::exactalg::json::TermJson;
use crate::exactalg::{format_rational, q, qq, QPoly, Q, DEFAULT_PRIMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub name: String,
    pub kind: ComponentKind,
    pub dim: i64,
    pub degree: i64,
    pub genus: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjointReport {
    pub degree: u32,
    pub nullity: usize,
    /// Factor applied to the primitive generator so that the reference vertex has residue +1.
    pub scale: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum PointReport {
    Exact(Vec<String>),
    Box(Vec<[String; 2]>),
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub triple: [String; 3],
    pub point: PointReport,
    pub residue: Certified,
    pub sign: i8,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SignCounts {
    pub plus: usize,
    pub minus: usize,
}

/// Everything `verify_region` established; serializes deterministically
/// (timings are kept out of the serialized payload).
#[derive(Clone, Debug, Serialize)]
pub struct RegionReport {
    pub region: String,
    pub status: Status,
    pub checks: Vec<CheckResult>,
    pub components: Vec<ComponentReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior_point: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<AdjointReport>,
    pub vertices: Vec<VertexReport>,
    pub residue_signs: SignCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_residue: Option<FacetResidue>,
    pub kernel: Vec<KernelSample>,
    pub disjointness: Vec<DisjointResult>,
    #[serde(skip)]
    pub timings_ms: BTreeMap<String, f64>,
    #[serde(skip)]
    pub adjoint_poly: Option<QPoly>,
}

impl RegionReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Nonzero multiples of the kernel form that must leave a pole; 0 is always added.
    pub lambdas: Vec<Q>,
    pub primes: Vec<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { lambdas: vec![q(1), q(-1), qq(1, 2)], primes: DEFAULT_PRIMES.to_vec() }
    }
}

struct Run {
    report: RegionReport,
    clock: Instant,
}

impl Run {
    fn push(&mut self, name: &str, status: Status, detail: impl Into<String>, witness: Option<String>) -> bool {
        self.report.checks.push(CheckResult { name: name.into(), status, detail: detail.into(), witness });
        status != Status::Fail
    }

    fn ok(&mut self, name: &str, pass: bool, detail: impl Into<String>, witness: Option<String>) -> bool {
        self.push(name, if pass { Status::Pass } else { Status::Fail }, detail, witness)
    }

    fn err(&mut self, name: &str, e: Error) -> bool {
        self.push(name, Status::Fail, "stage failed", Some(e.to_string()))
    }

    fn lap(&mut self, stage: &str) {
        let ms = self.clock.elapsed().as_secs_f64() * 1e3;
        self.report.timings_ms.insert(stage.into(), ms);
        self.clock = Instant::now();
    }

    fn finish(mut self) -> RegionReport {
        let r = &mut self.report;
        r.status = if r.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if r.checks.iter().any(|c| c.status == Status::Partial) {
            Status::Partial
        } else {
            Status::Pass
        };
        self.report
    }
}

fn proportional(a: &QPoly, b: &QPoly) -> bool {
    let (_, pa) = a.primitive();
    let (_, pb) = b.primitive();
    pa == pb || pa == pb.scale(&q(-1))
}

/// Run every check on a region.
pub fn verify_region(r: &RegionSpec, opts: &VerifyOptions) -> RegionReport {
    let mut run = Run {
        report: RegionReport {
            region: r.name.clone(),
            status: Status::Pass,
            checks: vec![],
            components: vec![],
            interior_point: None,
            adjoint: None,
            vertices: vec![],
            residue_signs: SignCounts::default(),
            facet_residue: None,
            kernel: vec![],
            disjointness: vec![],
            timings_ms: BTreeMap::new(),
            adjoint_poly: None,
        },
        clock: Instant::now(),
    };
    stages(r, opts, &mut run);
    run.finish()
}

fn stages(r: &RegionSpec, opts: &VerifyOptions, run: &mut Run) -> Option<()> {
    if let Err(e) = r.validate() {
        run.err("region_valid", e);
        return None;
    }

    // construction
    if r.plane_data.is_some() {
        match verify_construction(r) {
            Ok(checks) => {
                let mut all = true;
                for c in checks {
                    all &= run.ok(&c.name, c.pass, "", c.witness);
                }
                if !all {
                    return None;
                }
            }
            Err(e) => {
                run.err("construction", e);
                return None;
            }
        }
    }
    let mut dup = Vec::new();
    for (i, a) in r.facets.iter().enumerate() {
        for b in &r.facets[i + 1..] {
            if proportional(&a.poly, &b.poly) {
                dup.push(format!("{} ~ {}", a.name, b.name));
            }
        }
    }
    let distinct = dup.is_empty();
    run.ok("facets_distinct", distinct, "", (!distinct).then(|| dup.join("; ")));
    let mut irreducible = true;
    for s in r.curved() {
        let f = linear_factor(&s.poly);
        let w = f.as_ref().map(|(l, _)| format!("{} has the factor {}", s.name, l));
        irreducible &= run.ok("surface_irreducible", f.is_none(), format!("{} has no rational linear factor", s.name), w);
    }
    if !distinct || !irreducible {
        return None;
    }
    run.lap("construction");

    // residual arrangement
    let arr = match residual_arrangement(r) {
        Ok(a) => a,
        Err(e) => {
            run.err("residual_arrangement", e);
            return None;
        }
    };
    let cubic_deg = r.curved().first().map(|f| f.degree()).unwrap_or(1);
    let mut bad = Vec::new();
    for c in &arr.components {
        match c.hilbert() {
            Ok(h) => {
                let genus = h.genus_i64();
                run.report.components.push(ComponentReport {
                    name: c.name.clone(),
                    kind: c.kind,
                    dim: h.dim,
                    degree: h.degree_i64(),
                    genus,
                });
                let exp = c.expected(cubic_deg);
                if (h.dim, h.degree_i64(), genus) != (exp.0, exp.1, Some(exp.2)) {
                    bad.push(format!("{}: (dim, degree, genus) = ({}, {}, {:?})", c.name, h.dim, h.degree_i64(), genus));
                }
            }
            Err(e) => bad.push(format!("{}: {e}", c.name)),
        }
    }
    let count = |k: ComponentKind| arr.components.iter().filter(|c| c.kind == k).count();
    let summary = format!(
        "{} lines, {} plane curves, {} conics",
        count(ComponentKind::Line),
        count(ComponentKind::PlaneCurve),
        count(ComponentKind::Conic)
    );
    let ok = bad.is_empty();
    if !run.ok("residual_arrangement", ok, summary, (!ok).then(|| bad.join("; "))) {
        return None;
    }
    for c in arr.components.iter().filter(|c| c.kind == ComponentKind::PlaneCurve) {
        let mut verdicts = Vec::new();
        let mut smooth = true;
        std::thread::scope(|s| {
            let hs: Vec<_> = opts.primes.iter().map(|&p| s.spawn(move || smoothness_probe_ideal(&c.ideal, p))).collect();
            for h in hs {
                match h.join().expect("probe thread") {
                    Ok(v) => {
                        smooth &= v.is_smooth();
                        verdicts.push(format!("{v:?}"));
                    }
                    Err(e) => {
                        smooth = false;
                        verdicts.push(e.to_string());
                    }
                }
            }
        });
        let primes: Vec<String> = opts.primes.iter().map(|p| p.to_string()).collect();
        run.ok(
            "plane_curve_smooth",
            smooth && !opts.primes.is_empty(),
            format!("{} smooth mod {}", c.name, primes.join(", ")),
            (!smooth).then(|| verdicts.join("; ")),
        );
    }
    run.lap("arrangement");

    // adjoint
    let degree = r.adjoint_degree().ok()?;
    let space = match adjoint_interpolate(&arr.components, &r.ring, degree) {
        Ok(s) => s,
        Err(e) => {
            run.err("adjoint_unique", e);
            return None;
        }
    };
    let detail = format!("nullspace dimension {} among {} degree-{degree} forms", space.nullity(), space.monomials);
    let adj = match space.unique() {
        Ok(a) => {
            run.ok("adjoint_unique", true, detail, None);
            a
        }
        Err(e) => {
            let basis: Vec<String> = space.basis.iter().map(|b| b.to_string()).collect();
            let w = if basis.is_empty() { e.to_string() } else { format!("{e}: {}", basis.join(" | ")) };
            run.ok("adjoint_unique", false, detail, Some(w));
            return None;
        }
    };
    let mut divisible = Vec::new();
    for f in &r.facets {
        if adj.exact_div(&f.poly).is_some() {
            divisible.push(f.name.clone());
        }
    }
    let nd = divisible.is_empty();
    run.ok("adjoint_not_divisible", nd, "no facet divides the adjoint", (!nd).then(|| divisible.join(", ")));
    run.lap("adjoint");

    // vertices and residues
    let vertices = match vertex_enumerate(r) {
        Ok(v) => v,
        Err(e) => {
            run.err("vertices", e);
            return None;
        }
    };
    let exact = vertices.iter().filter(|v| v.point.is_exact()).count();
    run.ok("vertices", true, format!("{} vertices, {exact} rational", vertices.len()), None);
    match interior_point(r, &vertices) {
        Ok(p) => {
            run.report.interior_point = Some(p.iter().map(format_rational).collect());
            run.ok("interior_point", true, "strictly inside every facet", None);
        }
        Err(e) => {
            run.err("interior_point", e);
        }
    }
    let reference = r.order_triple([r.pairs[0].0.clone(), r.pairs[1].0.clone(), r.pairs[2].0.clone()]);
    let raw: Vec<Certified> = match vertices.iter().map(|v| vertex_residue(r, &adj, v)).collect() {
        Ok(v) => v,
        Err(e) => {
            run.err("vertex_residues", e);
            return None;
        }
    };
    let scale = match vertices.iter().position(|v| v.triple == reference).map(|i| &raw[i]) {
        Some(Certified::Exact(v)) if !v.is_zero() => v.recip(),
        _ => {
            run.ok("vertex_residues", false, "", Some(format!("no exact residue at {}", reference.join(","))));
            return None;
        }
    };
    let adj = adj.scale(&scale);
    let integral = adj.terms().iter().all(|(_, c)| c.is_integer());
    run.ok(
        "adjoint_integral",
        integral,
        format!("normalized adjoint = {} x primitive generator", format_rational(&scale)),
        None,
    );
    run.report.adjoint = Some(AdjointReport {
        degree,
        nullity: space.nullity(),
        scale: format_rational(&scale),
        terms: adj
            .terms()
            .iter()
            .map(|(m, c)| TermJson { c: format_rational(c), e: m.exponents().to_vec() })
            .collect(),
    });
    run.report.adjoint_poly = Some(adj.clone());
    let mut off = Vec::new();
    for (v, res) in vertices.iter().zip(&raw) {
        let res = res.scaled(&scale);
        if !res.is_unit() {
            off.push(format!("{}: {:?}", v.triple.join(","), res));
        }
        let sign = res.sign();
        if sign > 0 {
            run.report.residue_signs.plus += 1;
        } else if sign < 0 {
            run.report.residue_signs.minus += 1;
        }
        let point = match &v.point {
            VertexPoint::Exact(p) => PointReport::Exact(p.iter().map(format_rational).collect()),
            VertexPoint::Algebraic { .. } => PointReport::Box(
                v.point.enclosure()[..3].iter().map(|i| [format_rational(&i.lo), format_rational(&i.hi)]).collect(),
            ),
        };
        run.report.vertices.push(VertexReport { triple: v.triple.clone(), point, residue: res, sign });
    }
    let units = off.is_empty();
    run.ok(
        "vertex_residues",
        units,
        format!("{} residues of absolute value 1", vertices.len() - off.len()),
        (!units).then(|| off.join("; ")),
    );
    run.lap("vertices");

    // facet residue and kernel form
    match facet_residue(r, &adj) {
        Ok(f) => {
            run.ok("facet_residue", true, format!("residue along {} matches its face, sign {}", f.facet, f.sign), None);
            run.report.facet_residue = Some(f);
        }
        Err(e) => {
            run.err("facet_residue", e);
        }
    }
    let sides_degree: u32 = r.pairs[1..]
        .iter()
        .flat_map(|(a, b)| [a, b])
        .filter_map(|n| r.facet(n).ok().map(|f| f.degree()))
        .sum();
    if sides_degree == degree {
        let mut lambdas = vec![Q::zero()];
        lambdas.extend(opts.lambdas.iter().filter(|l| !l.is_zero()).cloned());
        match kernel_check(r, &adj, &lambdas) {
            Ok(ks) => {
                let bad: Vec<String> = ks.iter().filter(|k| !k.pass).map(|k| k.lambda.clone()).collect();
                let ok = bad.is_empty();
                run.ok(
                    "kernel_form",
                    ok,
                    format!("only lambda = 0 cancels the pole, {} samples", ks.len()),
                    (!ok).then(|| format!("wrong behaviour at lambda = {}", bad.join(", "))),
                );
                run.report.kernel = ks;
            }
            Err(e) => {
                run.err("kernel_form", e);
            }
        }
    }
    run.lap("facet");

    match residual_disjointness(r, &arr, &vertices) {
        Ok(ds) => {
            let meets: Vec<String> = ds.iter().filter(|d| d.status == "meets").map(|d| d.component.clone()).collect();
            let sampled = ds.iter().any(|d| d.status == "sampled");
            let status = if !meets.is_empty() {
                Status::Fail
            } else if sampled {
                Status::Partial
            } else {
                Status::Pass
            };
            run.push(
                "residual_disjoint",
                status,
                "partial check: lines tested exactly, curves by face sampling",
                (!meets.is_empty()).then(|| meets.join(", ")),
            );
            run.report.disjointness = ds;
        }
        Err(e) => {
            run.err("residual_disjoint", e);
        }
    }
    run.lap("disjointness");
    Some(())
}
