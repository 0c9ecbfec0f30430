//! Command-line front end.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use nfold_core::isolated::{
    build_mn_periodic, build_mn_polynomial, det_mn, render_epoly, specialize_epoly, EPoly, IsoMatrix,
};
use nfold_core::mother::{check_mother_periodic, check_mother_quadratic, MotherReport, Verdict};
use nfold_core::nogo::{check_report, nogo_expand, obstruction_coefficient};
use nfold_core::susy::{check_inductive, describe, Model, ModelKind};
use nfold_core::{DiffOp, FormalPoly, FunctionRing, QPoly, RatFunc, Ring};

use crate::input::{parse_coupling, parse_n, parse_perturbation, Coupling, InputError, Perturbation};
use crate::numeric::{isolated_energies, kernel_vector};
use crate::report::{CheckRecord, RunReport, Status, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use crate::spectral::{
    eigenvalues, spectrum_rows, to_csv, verify_isolated, verify_pairing, Boundary, Grid, SpectralProblem,
    SpectrumRow,
};

#[derive(Parser, Debug)]
#[command(name = "nfold", version, about = "Exact and numerical checks for N-fold supersymmetric quantum mechanics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Intertwining relations, the N = 1 algebra and the periodic shift relation.
    Verify,
    /// Constraint analysis for the charge D^N with a general prepotential.
    Nogo,
    /// M_N(E), its determinant, isolated energies and kernel vectors.
    Isolated,
    /// The Mother Hamiltonian as a polynomial in the Hamiltonian.
    Mother,
    /// Numerical spectra checked against the isolated energies.
    Spectrum,
    /// Everything above with default settings.
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Nogo => "nogo",
            Command::Isolated => "isolated",
            Command::Mother => "mother",
            Command::Spectrum => "spectrum",
            Command::All => "all",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelArg {
    Quadratic,
    Periodic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryArg {
    Periodic,
    Antiperiodic,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Restrict to one model (default: both).
    #[arg(long, global = true, value_enum)]
    pub model: Option<ModelArg>,
    /// `3`, `1..8`, `1..=8` or `1,3,5`.
    #[arg(long, global = true)]
    pub n: Option<String>,
    /// Same as --n.
    #[arg(long = "n-range", global = true)]
    pub n_range: Option<String>,
    /// Coupling; repeatable. `p/q` and decimals are exact.
    #[arg(long, global = true)]
    pub g: Vec<String>,
    /// Boundary condition for the periodic model (default: periodic for odd N, antiperiodic for even N).
    #[arg(long, global = true, value_enum)]
    pub boundary: Option<BoundaryArg>,
    /// Plane waves |j| <= cutoff.
    #[arg(long, global = true, default_value_t = 64)]
    pub cutoff: usize,
    /// Numerical tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the JSON report (or CSV spectra for a `.csv` path).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print the JSON report instead of the table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add a term `[c*]q^k` to the quadratic prepotential.
    #[arg(long = "perturb-w", global = true)]
    pub perturb_w: Option<String>,
    /// Finite-difference points for the quadratic model.
    #[arg(long = "grid-points", global = true, default_value_t = 20001)]
    pub grid_points: usize,
    /// Grid extension beyond [0, 1/g] on each side.
    #[arg(long = "grid-padding", global = true, default_value_t = 8.0)]
    pub grid_padding: f64,
}

/// Validated options.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub models: Vec<&'static str>,
    pub n: Option<Vec<u32>>,
    pub g: Vec<Coupling>,
    pub boundary: Option<Boundary>,
    pub cutoff: usize,
    pub tol: Option<f64>,
    pub grid: Grid,
    pub perturb_w: Option<Perturbation>,
    #[serde(skip)]
    pub model_kinds: Vec<ModelKind>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, InputError> {
        let o = &cli.opts;
        let n = match (&o.n, &o.n_range) {
            (Some(_), Some(_)) => return Err(InputError::Conflict("give either --n or --n-range".into())),
            (Some(s), None) | (None, Some(s)) => Some(parse_n(s)?),
            (None, None) => None,
        };
        let g = o.g.iter().map(|s| parse_coupling(s)).collect::<Result<Vec<_>, _>>()?;
        let perturb_w = o.perturb_w.as_deref().map(parse_perturbation).transpose()?;
        let model_kinds = match o.model {
            Some(ModelArg::Quadratic) => vec![ModelKind::Quadratic],
            Some(ModelArg::Periodic) => vec![ModelKind::Periodic],
            None if perturb_w.is_some() => vec![ModelKind::Quadratic],
            None => vec![ModelKind::Quadratic, ModelKind::Periodic],
        };
        if perturb_w.is_some() && model_kinds.contains(&ModelKind::Periodic) {
            return Err(InputError::Conflict("--perturb-w applies to the quadratic model only".into()));
        }
        if let Some(t) = o.tol {
            if !(t > 0.0) {
                return Err(InputError::Conflict("--tol must be positive".into()));
            }
        }
        if o.grid_points < 8 || !(o.grid_padding >= 0.0) {
            return Err(InputError::Conflict("grid needs at least 8 points and a nonnegative padding".into()));
        }
        let needs_positive_n = !matches!(cli.command, Command::Nogo);
        if let Some(ns) = &n {
            if needs_positive_n && ns.contains(&0) {
                return Err(InputError::Conflict("N must be at least 1".into()));
            }
        }
        Ok(RunConfig {
            command: cli.command.name(),
            models: model_kinds.iter().map(|m| m.name()).collect(),
            n,
            g,
            boundary: o.boundary.map(|b| match b {
                BoundaryArg::Periodic => Boundary::Periodic,
                BoundaryArg::Antiperiodic => Boundary::Antiperiodic,
            }),
            cutoff: o.cutoff,
            tol: o.tol,
            grid: Grid { padding: o.grid_padding, points: o.grid_points },
            perturb_w,
            model_kinds,
        })
    }

    fn ns_or(&self, default: std::ops::RangeInclusive<u32>) -> Vec<u32> {
        self.n.clone().unwrap_or_else(|| default.collect())
    }

    fn couplings_or(&self, default: &[&str]) -> Vec<Coupling> {
        if self.g.is_empty() {
            default.iter().map(|s| parse_coupling(s).expect("valid default coupling")).collect()
        } else {
            self.g.clone()
        }
    }

    fn echo(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

/// A finished command: the report plus any spectrum rows for CSV output.
pub struct Outcome {
    pub report: RunReport,
    pub rows: Vec<SpectrumRow>,
}

const RESIDUAL_LIMIT: usize = 4000;

fn clip(s: String) -> String {
    if s.len() <= RESIDUAL_LIMIT {
        s
    } else {
        let mut end = RESIDUAL_LIMIT;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{} ... ({} bytes)", &s[..end], s.len())
    }
}

fn residual_record<R: FunctionRing>(name: String, identity: &str, residual: &DiffOp<R>) -> CheckRecord {
    CheckRecord::new(
        name,
        identity,
        Status::from_bool(residual.is_zero()),
        json!({ "residual": clip(describe(residual)), "order": residual.order() }),
    )
}

fn tag(model: ModelKind, n: u32) -> String {
    format!("{}/N={:02}", model.name(), n)
}

fn verify_model<R: FunctionRing>(model: &Model<R>, ns: &[u32], checks: &mut Vec<CheckRecord>) {
    let label = |n: u32, what: &str| format!("verify/{}/{}", tag(model.kind(), n), what);
    let charge = if model.kind() == ModelKind::Periodic { "P_N" } else { "D^N" };
    for &n in ns {
        checks.push(residual_record(
            label(n, "intertwine"),
            &format!("{c} H_-N - H_+N {c} = 0", c = charge),
            &model.check_intertwine(n),
        ));
        checks.push(residual_record(
            label(n, "intertwine-adjoint"),
            &format!("H_-N {c}^+ - {c}^+ H_+N = 0", c = charge),
            &model.check_adjoint_intertwine(n),
        ));
    }
    if ns.contains(&1) {
        let r = model.check_susy_algebra_n1();
        checks.push(CheckRecord::new(
            label(1, "algebra"),
            "H_+ = DD^+/2, H_- = D^+D/2, D H_- = H_+ D",
            Status::from_bool(r.passes()),
            json!({
                "upper_factorization": clip(describe(&r.upper_factorization)),
                "lower_factorization": clip(describe(&r.lower_factorization)),
                "intertwine": clip(describe(&r.intertwine)),
                "adjoint_intertwine": clip(describe(&r.adjoint_intertwine)),
            }),
        ));
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Outcome {
    let ns = cfg.ns_or(1..=8);
    let mut checks = Vec::new();
    for &kind in &cfg.model_kinds {
        match kind {
            ModelKind::Periodic => {
                verify_model(&Model::periodic(), &ns, &mut checks);
                let max = ns.iter().copied().max().unwrap_or(0).min(6);
                for n in ns.iter().copied().filter(|&n| n <= max) {
                    for np in 1..=n {
                        checks.push(residual_record(
                            format!("verify/{}/shift-N'={:02}", tag(kind, n), np),
                            "H_+N P_N' = P_N' H_+(N-2N') + (g/4) N'(N-N') [R e^{-igq} - L e^{igq}]",
                            &check_inductive(n, np),
                        ));
                    }
                }
            }
            _ => match &cfg.perturb_w {
                Some(p) => verify_model(&Model::custom(p.prepotential()), &ns, &mut checks),
                None => verify_model(&Model::quadratic(), &ns, &mut checks),
            },
        }
    }
    Outcome { report: RunReport::new("verify", cfg.echo(), checks), rows: vec![] }
}

fn formal_text(p: &FormalPoly) -> String {
    if p.is_empty() {
        "0".into()
    } else {
        p.to_string()
    }
}

pub fn cmd_nogo(cfg: &RunConfig) -> Outcome {
    let ns = cfg.ns_or(1..=6);
    let mut checks = Vec::new();
    for n in ns {
        let r = nogo_expand(n);
        let failures = check_report(&r);
        let expected = (n >= 2).then(|| formal_text(&(FormalPoly::constant(obstruction_coefficient(n)) * &FormalPoly::w(3))));
        checks.push(CheckRecord::new(
            format!("nogo/N={:02}", n),
            "i^N U (D^N H_- - H_+ D^N) U^-1 with H_± = p^2/2 + (W^2 ± f_±)/2",
            Status::from_bool(failures.is_empty()),
            json!({
                "top_orders_vanish": r.top_orders_vanish(),
                "first_constraint": formal_text(&r.first_constraint),
                "second_constraint": r.second_constraint.as_ref().map(formal_text),
                "f_minus": formal_text(&r.f_minus),
                "f_plus": formal_text(&r.f_plus),
                "obstruction": r.obstruction.as_ref().map(formal_text),
                "expected_obstruction": expected,
                "lower_tail": r.lower_tail.iter().map(|(k, c)| json!({"order": k, "coeff": formal_text(c)})).collect::<Vec<_>>(),
                "failures": failures.iter().map(|f| format!("{:?}", f)).collect::<Vec<_>>(),
            }),
        ));
    }
    Outcome { report: RunReport::new("nogo", cfg.echo(), checks), rows: vec![] }
}

fn isolated_matrix(kind: ModelKind, n: u32, cfg: &RunConfig) -> Result<IsoMatrix, nfold_core::Error> {
    match kind {
        ModelKind::Periodic => Ok(build_mn_periodic(n as usize)),
        _ => {
            let model = match &cfg.perturb_w {
                Some(p) => Model::custom(p.prepotential()),
                None => Model::<QPoly>::quadratic(),
            };
            build_mn_polynomial(&model, n as usize)
        }
    }
}

/// `(2E - g²)(4(E² - 1) - 2Eg²)`.
pub fn three_fold_closed_form() -> EPoly {
    let g2 = RatFunc::g_pow(2);
    let e = EPoly::x();
    let two_e = e.scale(&RatFunc::from_int(2));
    let first = two_e - &EPoly::constant(g2.clone());
    let second = (e.clone() * &e - &EPoly::one()).scale(&RatFunc::from_int(4))
        - &e.scale(&(g2 * &RatFunc::from_int(2)));
    first * &second
}

pub fn cmd_isolated(cfg: &RunConfig) -> Outcome {
    let ns = cfg.ns_or(1..=6);
    let tol = cfg.tol.unwrap_or(1e-8);
    let mut checks = Vec::new();
    for &kind in &cfg.model_kinds {
        for &n in &ns {
            let base = format!("isolated/{}", tag(kind, n));
            let m = match isolated_matrix(kind, n, cfg) {
                Ok(m) => m,
                Err(e) => {
                    checks.push(CheckRecord::new(
                        format!("{}/matrix", base),
                        "U H_-N U^-1 preserves the N-dimensional space",
                        Status::Fail,
                        json!({ "error": e.to_string() }),
                    ));
                    continue;
                }
            };
            let det = det_mn(&m);
            let lead_ok = det.degree() == Some(n as usize) && det.leading() == Some(&RatFunc::from_int(1 << n));
            checks.push(CheckRecord::new(
                format!("{}/determinant", base),
                "det M_N(E) has degree N and leading coefficient 2^N",
                Status::from_bool(lead_ok),
                json!({
                    "basis": m.basis_labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                    "matrix": m.to_string(),
                    "determinant": render_epoly(&det),
                }),
            ));
            if kind == ModelKind::Periodic && n == 3 {
                let closed = three_fold_closed_form();
                checks.push(CheckRecord::new(
                    format!("{}/closed-form", base),
                    "det M_3(E) = (2E - g^2)(4(E^2 - 1) - 2Eg^2)",
                    Status::from_bool(det == closed),
                    json!({ "determinant": render_epoly(&det), "closed_form": render_epoly(&closed) }),
                ));
            }
            for c in &cfg.g {
                checks.push(isolated_at_coupling(&base, &m, &det, n, c, tol));
            }
        }
    }
    Outcome { report: RunReport::new("isolated", cfg.echo(), checks), rows: vec![] }
}

fn isolated_at_coupling(base: &str, m: &IsoMatrix, det: &EPoly, n: u32, c: &Coupling, tol: f64) -> CheckRecord {
    let name = format!("{}/g={}", base, c.text);
    let identity = "det M_N(E) = 0 has N real roots, each with a kernel vector";
    let exact = c.exact.as_ref().map(|g| specialize_epoly(det, g).map(|p| render_epoly(&p)));
    let roots = match isolated_energies(det, c.value) {
        Ok(r) => r,
        Err(e) => return CheckRecord::new(name, identity, Status::Fail, json!({ "error": e.to_string() })),
    };
    let mut kernels = Vec::new();
    let mut ok = roots.all_converged();
    for &e in &roots.real {
        match kernel_vector(m, c.value, e, tol.max(1e-10)) {
            Ok(k) => {
                ok &= k.residual < 1e-8;
                kernels.push(json!({
                    "energy": e,
                    "residual": k.residual,
                    "components": k.components.iter().map(|z: &Complex64| [z.re, z.im]).collect::<Vec<_>>(),
                }));
            }
            Err(err) => {
                ok = false;
                kernels.push(json!({ "energy": e, "error": err.to_string() }));
            }
        }
    }
    // Fewer than N real roots is a property of the coupling, not a defect.
    let status = match (ok, roots.real.len() == n as usize) {
        (false, _) => Status::Fail,
        (true, true) => Status::Pass,
        (true, false) => Status::Recorded,
    };
    CheckRecord::new(
        name,
        identity,
        status,
        json!({
            "g": c.value,
            "real_root_count": roots.real.len(),
            "specialized_determinant": exact.map(|r| r.unwrap_or_else(|e| e.to_string())),
            "energies": roots.real,
            "complex_roots": roots.complex.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "relative_residuals": roots.roots.iter().map(|r| r.relative_residual).collect::<Vec<_>>(),
            "kernels": kernels,
        }),
    )
}

fn mother_record<R: FunctionRing>(r: &MotherReport<R>) -> CheckRecord {
    let status = match r.verdict {
        Verdict::Pass if r.commutation_residual.is_zero() => Status::Pass,
        Verdict::Falsified if r.commutation_residual.is_zero() => Status::Falsified,
        _ => Status::Fail,
    };
    CheckRecord::new(
        format!("mother/{}", tag(r.model, r.n)),
        "C C^+/2 = det M_N(H_+N)/2 and C^+ C/2 = det M_N(H_-N)/2",
        status,
        json!({
            "verdict": r.verdict.name(),
            "determinant": render_epoly(&r.determinant),
            "upper_pass": r.upper_pass,
            "lower_pass": r.lower_pass,
            "upper_residual": clip(r.upper_text()),
            "lower_residual": clip(r.lower_text()),
            "commutation_residual": clip(describe(&r.commutation_residual)),
            "recheck_g": r.recheck_g.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
    )
}

pub fn cmd_mother(cfg: &RunConfig) -> Outcome {
    let mut checks = Vec::new();
    for &kind in &cfg.model_kinds {
        match kind {
            ModelKind::Periodic => {
                for n in cfg.ns_or(1..=5) {
                    checks.push(mother_record(&check_mother_periodic(n)));
                }
            }
            _ => {
                for n in cfg.ns_or(1..=6) {
                    let rec = match &cfg.perturb_w {
                        Some(p) => {
                            let model = Model::custom(p.prepotential());
                            match build_mn_polynomial(&model, n as usize) {
                                Ok(m) => {
                                    mother_record(&nfold_core::mother::check_with_determinant(&model, n, det_mn(&m)))
                                }
                                Err(e) => CheckRecord::new(
                                    format!("mother/{}", tag(ModelKind::Custom, n)),
                                    "U H_-N U^-1 preserves the N-dimensional space",
                                    Status::Fail,
                                    json!({ "error": e.to_string() }),
                                ),
                            }
                        }
                        None => match check_mother_quadratic(n) {
                            Ok(r) => mother_record(&r),
                            Err(e) => CheckRecord::new(
                                format!("mother/{}", tag(kind, n)),
                                "U H_-N U^-1 preserves the N-dimensional space",
                                Status::Fail,
                                json!({ "error": e.to_string() }),
                            ),
                        },
                    };
                    checks.push(rec);
                }
            }
        }
    }
    Outcome { report: RunReport::new("mother", cfg.echo(), checks), rows: vec![] }
}

fn error_record(name: String, identity: &str, e: impl std::fmt::Display) -> CheckRecord {
    CheckRecord::new(name, identity, Status::Fail, json!({ "error": e.to_string() }))
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Outcome {
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for &kind in &cfg.model_kinds {
        let (ns, gs, tol) = match kind {
            ModelKind::Periodic => (cfg.ns_or(1..=6), cfg.couplings_or(&["0.2", "0.5"]), cfg.tol.unwrap_or(1e-8)),
            _ => (cfg.ns_or(2..=3), cfg.couplings_or(&["0.05"]), cfg.tol.unwrap_or(1e-6)),
        };
        for &n in &ns {
            for c in &gs {
                let base = format!("spectrum/{}/g={}", tag(kind, n), c.text);
                let iso_id = "every root of det M_N is an eigenvalue of H_-N";
                match verify_isolated(kind, n, c.value, tol, cfg.cutoff, cfg.grid) {
                    Ok(r) => {
                        let unmatched = r.unmatched();
                        checks.push(CheckRecord::new(
                            format!("{}/isolated", base),
                            iso_id,
                            Status::from_bool(r.pass),
                            json!({ "check": r, "unmatched": unmatched }),
                        ))
                    }
                    Err(e) => checks.push(error_record(format!("{}/isolated", base), iso_id, e)),
                }
                let boundary = cfg.boundary.unwrap_or(Boundary::for_n(n));
                let pair_id = "H_+N and H_-N share levels except the states annihilated by the charge";
                match verify_pairing(kind, n, c.value, tol, boundary, cfg.cutoff, cfg.grid) {
                    Ok(p) => checks.push(CheckRecord::new(
                        format!("{}/pairing", base),
                        pair_id,
                        Status::from_bool(p.pass),
                        json!(p),
                    )),
                    Err(e) => checks.push(error_record(format!("{}/pairing", base), pair_id, e)),
                }
                for sign in [nfold_core::susy::Sign::Minus, nfold_core::susy::Sign::Plus] {
                    let p = match kind {
                        ModelKind::Periodic => SpectralProblem::periodic(sign, n, c.value, boundary, cfg.cutoff),
                        _ => SpectralProblem::quadratic(sign, n, c.value, cfg.grid),
                    };
                    if let Ok(r) = eigenvalues(&p) {
                        rows.extend(spectrum_rows(&p, &r, n as usize + 5));
                    }
                }
                if kind == ModelKind::Periodic && n == 1 {
                    checks.push(zero_mode_record(&base, c.value, cfg.cutoff));
                }
            }
        }
        if kind == ModelKind::Periodic && cfg.g.is_empty() && ns.contains(&1) {
            for g in ["0.3", "1.0"] {
                let base = format!("spectrum/{}/g={}", tag(kind, 1), g);
                checks.push(zero_mode_record(&base, g.parse().unwrap(), cfg.cutoff));
            }
        }
    }
    let mut report = RunReport::new("spectrum", cfg.echo(), checks);
    if let Value::Object(map) = &mut report.config {
        map.insert("levels_emitted".into(), json!(rows.len()));
    }
    Outcome { report, rows }
}

fn zero_mode_record(base: &str, g: f64, cutoff: usize) -> CheckRecord {
    let name = format!("{}/zero-mode", base);
    let id = "lowest level of H_-1 (periodic) is 0";
    let p = SpectralProblem::periodic(nfold_core::susy::Sign::Minus, 1, g, Boundary::Periodic, cutoff);
    match eigenvalues(&p) {
        Ok(r) => {
            let e0 = r.eigenvalues[0];
            CheckRecord::new(name, id, Status::from_bool(e0.abs() <= 1e-10), json!({ "g": g, "lowest": e0 }))
        }
        Err(e) => error_record(name, id, e),
    }
}

pub fn cmd_all(cfg: &RunConfig) -> Outcome {
    let mut base = cfg.clone();
    base.n = None;
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for (i, f) in [cmd_verify, cmd_nogo, cmd_mother, cmd_spectrum].iter().enumerate() {
        let mut c = base.clone();
        if i < 3 {
            c.g.clear();
        }
        let o = f(&c);
        checks.extend(o.report.checks);
        rows.extend(o.rows);
    }
    let mut iso = base.clone();
    if iso.g.is_empty() {
        iso.g = vec![parse_coupling("1/2").expect("valid"), parse_coupling("1/20").expect("valid")];
    }
    checks.extend(cmd_isolated(&iso).report.checks);
    Outcome { report: RunReport::new("all", cfg.echo(), checks), rows }
}

pub fn execute(command: Command, cfg: &RunConfig) -> Outcome {
    match command {
        Command::Verify => cmd_verify(cfg),
        Command::Nogo => cmd_nogo(cfg),
        Command::Isolated => cmd_isolated(cfg),
        Command::Mother => cmd_mother(cfg),
        Command::Spectrum => cmd_spectrum(cfg),
        Command::All => cmd_all(cfg),
    }
}

/// Parses `args`, runs the command, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let outcome = execute(cli.command, &cfg);
    if let Some(path) = &cli.opts.out {
        let is_csv = path.extension().is_some_and(|e| e == "csv");
        let body = if is_csv { to_csv(&outcome.rows) } else { outcome.report.to_json() + "\n" };
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: cannot write {}: {}", path.display(), e);
            return EXIT_FAIL;
        }
    }
    if cli.opts.json {
        println!("{}", outcome.report.to_json());
    } else {
        print!("{}", outcome.report.to_table());
    }
    outcome.report.exit_code()
}
