//! Command implementations behind the `dp1` binary. Each returns the text to
//! print and the process exit code.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use dp1_core::certify::{
    self, base_change_fiber_type, Certificate, Conclusion, KodairaType, Params,
};
use dp1_core::cq5::{CQ5Data, OmegaPoint};
use dp1_core::dp1::{Dp1Surface, WeightedPoint};
use dp1_core::exactalg::{rational_roots, BinaryForm, Budget, Elem, Field};
use dp1_core::weier::CurveKind;
use dp1_core::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldDesc {
    Rationals,
    Prime { p: u64 },
}

/// One surface per file: `f[i]` is the coefficient of z^i w^(4-i), `g[i]` of z^i w^(6-i).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub field: FieldDesc,
    pub f: Vec<String>,
    pub g: Vec<String>,
}

impl SurfaceFile {
    pub fn parse(text: &str) -> Result<SurfaceFile> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("surface file: {e}")))
    }

    pub fn field(&self) -> Result<Field> {
        Ok(match self.field {
            FieldDesc::Rationals => Field::rationals(),
            FieldDesc::Prime { p } => Field::prime(p)?,
        })
    }

    pub fn surface(&self) -> Result<Dp1Surface> {
        if self.f.len() != 5 || self.g.len() != 7 {
            return Err(Error::parse(format!(
                "expected 5 f- and 7 g-coefficients, got {} and {}",
                self.f.len(),
                self.g.len()
            )));
        }
        let k = self.field()?;
        let conv = |v: &[String]| -> Result<Vec<Elem>> {
            v.iter()
                .map(|s| k.parse(s).map_err(|e| Error::parse(format!("{s:?}: {e}"))))
                .collect()
        };
        Dp1Surface::new(BinaryForm::new(&k, conv(&self.f)?), BinaryForm::new(&k, conv(&self.g)?))
    }

    pub fn from_surface(s: &Dp1Surface) -> SurfaceFile {
        let k = s.field();
        let field = if k.is_rationals() {
            FieldDesc::Rationals
        } else {
            FieldDesc::Prime { p: k.characteristic() }
        };
        SurfaceFile {
            field,
            f: s.f().coeffs().iter().map(|c| c.to_string()).collect(),
            g: s.g().coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }
}

pub fn parse_point(text: &str, k: &Field) -> Result<WeightedPoint> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::parse(format!("point {text:?}: expected X,Y,Z,W")));
    }
    let c: Vec<Elem> = parts
        .iter()
        .map(|s| k.parse(s).map_err(|e| Error::parse(format!("{s:?}: {e}"))))
        .collect::<Result<_>>()?;
    WeightedPoint::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub height: u64,
    pub multiples: usize,
    pub count: usize,
    pub bit_budget: u64,
    pub time_budget_secs: u64,
    /// Points tried when certifying without a given point.
    pub max_points: usize,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = Params::default();
        RunConfig {
            height: p.height,
            multiples: p.multiples,
            count: p.count,
            bit_budget: p.budget.bits,
            time_budget_secs: p.time_budget_secs,
            max_points: 8,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn params(&self) -> Params {
        Params {
            height: self.height,
            multiples: self.multiples,
            count: self.count,
            budget: Budget { bits: self.bit_budget },
            time_budget_secs: self.time_budget_secs,
        }
    }
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

fn fiber_type_name(s: &Dp1Surface, z: &Elem, w: &Elem) -> &'static str {
    match s.fiber(z, w).kind {
        CurveKind::Smooth => "smooth",
        CurveKind::Nodal { .. } => "I1",
        CurveKind::Cuspidal => "II",
    }
}

/// Singular fibers over ground-field points of the base.
pub fn rational_singular_fibers(s: &Dp1Surface) -> Result<Vec<(Elem, Elem, &'static str)>> {
    let k = s.field();
    let disc = s.discriminant();
    let mut out = vec![];
    let roots = if k.is_finite() {
        let p = k.characteristic();
        (0..p as i64)
            .map(|t| k.int(t))
            .filter(|t| disc.eval(t, &k.one()).is_zero())
            .collect()
    } else {
        rational_roots(&disc.dehomogenize())?
    };
    for t in roots {
        let name = fiber_type_name(s, &t, &k.one());
        out.push((t, k.one(), name));
    }
    if disc.eval(&k.one(), &k.zero()).is_zero() {
        out.push((k.one(), k.zero(), fiber_type_name(s, &k.one(), &k.zero())));
    }
    Ok(out)
}

pub fn cmd_check(file: &SurfaceFile) -> Result<Output> {
    let s = file.surface()?;
    let mut t = String::new();
    writeln!(t, "surface: {s}").unwrap();
    writeln!(t, "discriminant: {}", s.discriminant()).unwrap();
    if !s.is_smooth()? {
        writeln!(t, "smooth: no").unwrap();
        return Ok(Output { text: t, code: 2 });
    }
    writeln!(t, "smooth: yes").unwrap();
    let c = s.fiber_census()?;
    writeln!(t, "census: M = {} nodal, N = {} cuspidal", c.nodal, c.cuspidal).unwrap();
    for (z, w, name) in rational_singular_fibers(&s)? {
        writeln!(t, "fiber over ({z} : {w}): {name}").unwrap();
    }
    Ok(Output { text: t, code: 0 })
}

pub fn render_certificate(c: &Certificate, format: Format) -> String {
    if format == Format::Json {
        return serde_json::to_string_pretty(c).expect("certificate serializes") + "\n";
    }
    let mut t = String::new();
    let conclusion = match &c.conclusion {
        Conclusion::DenseViaMultisection => "Dense (horizontal component of C_Q(5))".to_string(),
        Conclusion::DenseViaNodalFiber => "Dense (rational nodal fiber)".to_string(),
        Conclusion::HypothesisFailed(v) => format!("HypothesisFailed: {}", v.join("; ")),
        Conclusion::Inconclusive(why) => format!("Inconclusive: {why}"),
    };
    writeln!(t, "surface: {}", c.surface).unwrap();
    if let Some(q) = &c.q_original {
        writeln!(t, "Q: {q}").unwrap();
    }
    if let Some(o) = &c.order {
        writeln!(t, "order of Q on its fiber: {o}").unwrap();
    }
    if let Some(n) = c.minus_one_count {
        writeln!(t, "(-1)-curves through Q: {n}").unwrap();
    }
    for comp in &c.components {
        writeln!(
            t,
            "component {} [{}] x{}: {}",
            comp.factor, comp.class, comp.multiplicity, comp.image
        )
        .unwrap();
    }
    if let Some(i) = &c.infinitude {
        writeln!(t, "infinitude: {} {}", i.kind, i.detail).unwrap();
    }
    writeln!(t, "conclusion: {conclusion}").unwrap();
    if !c.evidence.is_empty() {
        writeln!(
            t,
            "evidence: {} points on {} fibers, max {} bits",
            c.evidence.len(),
            c.distinct_fibers,
            c.max_bits
        )
        .unwrap();
        for e in c.evidence.iter().take(5) {
            let [x, y, z, w] = &e.coords;
            let short = |s: &str| {
                if s.len() > 60 {
                    format!("{}...({} chars)", &s[..40], s.len())
                } else {
                    s.to_string()
                }
            };
            writeln!(t, "  ({} : {} : {z} : {w})", short(x), short(y)).unwrap();
        }
    }
    writeln!(t, "elapsed: {} ms", c.elapsed_ms).unwrap();
    t
}

/// Certify at the given point, or search for points up to the height.
pub fn certify_surface(s: &Dp1Surface, point: Option<&WeightedPoint>, cfg: &RunConfig) -> Result<Certificate> {
    let params = cfg.params();
    match point {
        Some(q) => certify::check_conditions(s, q, &params),
        None => certify::certify_by_search(s, &params, cfg.max_points),
    }
}

fn error_output(e: Error) -> Result<Output> {
    match e {
        Error::NotSmooth => Ok(Output {
            text: "surface is not smooth\n".into(),
            code: 2,
        }),
        e => Err(e),
    }
}

pub fn cmd_certify(file: &SurfaceFile, point: Option<&str>, cfg: &RunConfig) -> Result<Output> {
    let s = file.surface()?;
    let q = point.map(|p| parse_point(p, s.field())).transpose()?;
    match certify_surface(&s, q.as_ref(), cfg) {
        Ok(c) => Ok(Output {
            text: render_certificate(&c, cfg.format),
            code: c.conclusion.exit_code(),
        }),
        Err(e) => error_output(e),
    }
}

pub fn cmd_nodal(file: &SurfaceFile, cfg: &RunConfig) -> Result<Output> {
    let s = file.surface()?;
    match certify::nodal_density(&s, &cfg.params()) {
        Ok(c) => Ok(Output {
            text: render_certificate(&c, cfg.format),
            code: c.conclusion.exit_code(),
        }),
        Err(Error::NoRationalNodalFiber) => Ok(Output {
            text: "no rational nodal fiber\n".into(),
            code: 3,
        }),
        Err(e) => error_output(e),
    }
}

pub fn cmd_verify_nodal(file: &SurfaceFile) -> Result<Output> {
    let s = file.surface()?;
    let r = certify::verify_nodal_model(&s)?;
    let text = format!(
        "node at x = {}, e = {}\nspecial fiber: ok\ndiscriminant multiplicities at d, -2d, -3d: {:?}, cofactor degree {}\nconstant at d: ok\nsections at infinity: ok\n",
        r.d, r.e, r.multiplicities, r.cofactor_degree
    );
    Ok(Output { text, code: 0 })
}

/// Build the data for C_Q(5) after moving Q over (0:1).
fn normalized_data(s: &Dp1Surface, q: &WeightedPoint) -> Result<(dp1_core::dp1::Normalized, CQ5Data)> {
    if !s.contains(q) {
        return Err(Error::NotOnSurface);
    }
    let norm = s.move_to_zero(q)?;
    let data = CQ5Data::build(&norm.surface, &norm.point)?;
    Ok((norm, data))
}

/// σ at (p, q) on C_Q(5), with (p, q) in the chart where Q lies over (0:1).
pub fn cmd_sigma(file: &SurfaceFile, point: &str, p: &str, q: &str) -> Result<Output> {
    let s = file.surface()?;
    let k = s.field();
    let qp = parse_point(point, k)?;
    let (norm, data) = normalized_data(&s, &qp)?;
    let (pv, qv) = (k.parse(p)?, k.parse(q)?);
    let r = data.sigma(&pv, &qv)?;
    let back = norm.to_original(&r)?;
    Ok(Output {
        text: format!("sigma({pv}, {qv}) = {back}\n"),
        code: 0,
    })
}

pub fn cmd_cq5(file: &SurfaceFile, point: &str) -> Result<Output> {
    let s = file.surface()?;
    let qp = parse_point(point, s.field())?;
    let (norm, data) = normalized_data(&s, &qp)?;
    let mut t = String::new();
    writeln!(t, "normalized surface: {}", norm.surface).unwrap();
    writeln!(t, "Q = ({}, {}) over (0 : 1)", data.x0, data.y0).unwrap();
    let ph = &data.phi;
    writeln!(t, "ψ = {}", ph.psi).unwrap();
    for (i, v) in [&ph.phi2, &ph.phi3, &ph.phi4, &ph.phi5, &ph.phi6].iter().enumerate() {
        writeln!(t, "φ{} = {v}", i + 2).unwrap();
    }
    for i in 1..=9 {
        writeln!(t, "c{i} = {}", data.c[i]).unwrap();
    }
    writeln!(t, "G = {}", data.g).unwrap();
    for i in 4..=6 {
        writeln!(t, "F{i} = {}", data.f[i]).unwrap();
    }
    for w in data.omega_points()? {
        let name = match &w {
            OmegaPoint::AlphaRoot(a) => format!("α = {a}"),
            OmegaPoint::AboveVertex => "above the vertex".into(),
        };
        match data.sigma_at_omega(&w) {
            Ok(img) => writeln!(t, "Ω {name}: σ = {img:?}").unwrap(),
            Err(e) => writeln!(t, "Ω {name}: {e}").unwrap(),
        }
    }
    for c in data.components()? {
        let img = data.vertical_test(&c)?;
        writeln!(t, "component {} x{}: {img}", c.factor, c.multiplicity).unwrap();
    }
    match data.minus_one_scheme() {
        Ok(m) => writeln!(
            t,
            "(-1)-curves through Q: {} ({} with multiplicity)",
            m.distinct, m.with_multiplicity
        )
        .unwrap(),
        Err(e) => writeln!(t, "(-1)-curves through Q: {e}").unwrap(),
    }
    Ok(Output { text: t, code: 0 })
}

pub fn cmd_base_change(kind: &str, e: u32) -> Result<Output> {
    let t: KodairaType = kind.parse()?;
    let r = base_change_fiber_type(t, e)?;
    Ok(Output {
        text: format!("{r}\n"),
        code: 0,
    })
}

pub fn cmd_example(name: &str) -> Result<Output> {
    if name == "list" {
        let text = certify::EXAMPLES
            .iter()
            .map(|(n, d)| format!("{n}: {d}\n"))
            .collect();
        return Ok(Output { text, code: 0 });
    }
    let r = certify::run_example(name)?;
    let mut t = format!("{}: {}\n", r.name, r.description);
    for (what, ok) in &r.checks {
        writeln!(t, "  [{}] {what}", if *ok { "ok" } else { "FAIL" }).unwrap();
    }
    writeln!(t, "{}", if r.passed() { "PASS" } else { "FAIL" }).unwrap();
    Ok(Output {
        text: t,
        code: if r.passed() { 0 } else { 1 },
    })
}

/// Smooth surfaces over ℚ with all coefficients of f and g drawn from {−1, 0, 1}.
pub fn random_corpus(seed: u64, n: usize) -> Vec<Dp1Surface> {
    let k = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![];
    while out.len() < n {
        let f: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-1..=1));
        let g: [i64; 7] = std::array::from_fn(|_| rng.gen_range(-1..=1));
        if let Ok(s) = Dp1Surface::from_ints(&k, &f, &g) {
            if s.is_smooth().unwrap_or(false) {
                out.push(s);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub dense: usize,
    pub failed: usize,
    pub inconclusive: usize,
    pub errors: usize,
}

/// Certify every surface by point search on `jobs` worker threads. Results
/// come back in input order.
pub fn run_corpus(surfaces: &[Dp1Surface], cfg: &RunConfig, jobs: usize) -> Vec<Result<Certificate>> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<Certificate>>>> =
        Mutex::new((0..surfaces.len()).map(|_| None).collect());
    std::thread::scope(|sc| {
        for _ in 0..jobs.max(1) {
            sc.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= surfaces.len() {
                    break;
                }
                let r = certify_surface(&surfaces[i], None, cfg);
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

pub fn summarize(results: &[Result<Certificate>]) -> CorpusSummary {
    let mut s = CorpusSummary {
        total: results.len(),
        ..Default::default()
    };
    for r in results {
        match r {
            Ok(c) => match c.conclusion {
                Conclusion::DenseViaMultisection | Conclusion::DenseViaNodalFiber => s.dense += 1,
                Conclusion::HypothesisFailed(_) => s.failed += 1,
                Conclusion::Inconclusive(_) => s.inconclusive += 1,
            },
            Err(_) => s.errors += 1,
        }
    }
    s
}

pub fn cmd_corpus(seed: u64, n: usize, cfg: &RunConfig, jobs: usize) -> Result<Output> {
    let surfaces = random_corpus(seed, n);
    let results = run_corpus(&surfaces, cfg, jobs);
    let mut t = String::new();
    for (s, r) in surfaces.iter().zip(&results) {
        let what = match r {
            Ok(c) => match &c.conclusion {
                Conclusion::HypothesisFailed(v) => format!("HypothesisFailed ({})", v.join("; ")),
                Conclusion::Inconclusive(w) => format!("Inconclusive ({w})"),
                other => format!("{other:?}"),
            },
            Err(e) => format!("error: {e}"),
        };
        writeln!(t, "{s}: {what}").unwrap();
    }
    let sum = summarize(&results);
    writeln!(
        t,
        "dense {}/{}, failed {}, inconclusive {}, errors {}",
        sum.dense, sum.total, sum.failed, sum.inconclusive, sum.errors
    )
    .unwrap();
    Ok(Output { text: t, code: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nine_curves() -> SurfaceFile {
        SurfaceFile::parse(
            r#"{"field":{"kind":"rationals"},"f":["0","0","0","0","0"],"g":["16","0","0","0","0","0","243"]}"#,
        )
        .unwrap()
    }

    #[test]
    fn surface_file_round_trip() {
        let f = nine_curves();
        let s = f.surface().unwrap();
        assert_eq!(SurfaceFile::from_surface(&s), f);
        let p = SurfaceFile::parse(r#"{"field":{"kind":"prime","p":11},"f":["1","0","0","0","0"],"g":["0","0","0","0","0","0","1"]}"#)
            .unwrap();
        assert_eq!(p.field, FieldDesc::Prime { p: 11 });
    }

    #[test]
    fn malformed_scalar() {
        let mut f = nine_curves();
        f.g[0] = "1//2".into();
        assert!(matches!(f.surface(), Err(Error::Parse(_))));
        f.g.pop();
        assert!(matches!(f.surface(), Err(Error::Parse(_))));
    }

    #[test]
    fn check_isotrivial() {
        let out = cmd_check(&nine_curves()).unwrap();
        assert_eq!(out.code, 0);
        assert!(out.text.contains("N = 6"), "{}", out.text);
    }

    #[test]
    fn check_not_smooth() {
        let f = SurfaceFile::parse(
            r#"{"field":{"kind":"rationals"},"f":["0","0","0","0","0"],"g":["1","0","0","0","0","0","0"]}"#,
        )
        .unwrap();
        assert_eq!(cmd_check(&f).unwrap().code, 2);
    }

    #[test]
    fn point_parsing() {
        let k = Field::rationals();
        let p = parse_point("0, 4, 0, 1", &k).unwrap();
        assert_eq!(p.y, k.int(4));
        assert!(parse_point("0,4,0", &k).is_err());
    }

    #[test]
    fn corpus_is_reproducible() {
        let a: Vec<String> = random_corpus(3, 5).iter().map(|s| s.to_string()).collect();
        let b: Vec<String> = random_corpus(3, 5).iter().map(|s| s.to_string()).collect();
        assert_eq!(a, b);
    }
}
