use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};
use twalex_core::covers::{
    branched_product, homology_order, required_conductor, verify_cover_timed, CoverReport,
};
use twalex_core::groups::reidemeister_schreier;
use twalex_core::reps::{characters, MatRep, TensorRep};
use twalex_core::scalars::rational::render_rational;
use twalex_core::scalars::{CycloField, LaurentPoly, Monomial};
use twalex_core::torsion::{wada_torsion, TorsionValue};
use twalex_core::{Error, Result};

use crate::job::Job;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Compute,
    VerifyCover,
    Branched,
    HomologyOrder,
    Characters,
    Rs,
}

impl Command {
    pub fn parse(name: &str) -> Result<Command> {
        <Command as clap::ValueEnum>::from_str(name, true)
            .map_err(|_| Error::Validation(format!("unknown command {name:?}")))
    }

    pub fn name(self) -> &'static str {
        match self {
            Command::Compute => "compute",
            Command::VerifyCover => "verify-cover",
            Command::Branched => "branched",
            Command::HomologyOrder => "homology-order",
            Command::Characters => "characters",
            Command::Rs => "rs",
        }
    }
}

/// Options that apply to every job.
#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub conductor: Option<u64>,
    pub skip_rep_check: bool,
}

/// Result of one job: exit code, human text and machine JSON.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAcyclic(_) => 3,
        Error::Unsupported(_) | Error::Overflow(_) => 4,
        _ => 2,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Validation(_) => "validation",
        Error::ConductorMismatch { .. } => "conductor-mismatch",
        Error::NoFreeAbelianization => "no-free-abelianization",
        Error::NotAcyclic(_) => "not-acyclic",
        Error::Unsupported(_) => "unsupported",
        Error::Overflow(_) => "overflow",
        Error::Internal(_) => "internal",
    }
}

pub fn error_outcome(command: Option<Command>, e: &Error) -> Outcome {
    Outcome {
        code: exit_code(e),
        text: format!("error: {e}"),
        json: json!({
            "command": command.map(Command::name),
            "error": error_kind(e),
            "message": e.to_string(),
        }),
    }
}

pub fn run(command: Command, job: &Job, opts: Options) -> Outcome {
    let result = match command {
        Command::Compute => compute(job, opts),
        Command::VerifyCover => verify(job, opts),
        Command::Branched => branched(job, opts),
        Command::HomologyOrder => homology(job, opts),
        Command::Characters => chars(job, opts),
        Command::Rs => rs(job),
    };
    result.unwrap_or_else(|e| error_outcome(Some(command), &e))
}

/// `lcm` of everything the job needs, or the override when it is a multiple.
fn session_field(job: &Job, opts: Options, extra: &[u64]) -> Result<Arc<CycloField>> {
    let need = extra
        .iter()
        .fold(job.rho_conductor()?, |a, &b| lcm(a, b));
    let n = match opts.conductor.or(job.explicit_conductor()?) {
        Some(n) if n % need != 0 => {
            return Err(Error::ConductorMismatch {
                order: need,
                conductor: n,
            })
        }
        Some(n) => n,
        None => need,
    };
    CycloField::new(n)
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn torsion_json(v: &TorsionValue) -> Value {
    let n = v.num_vars();
    let (num, den) = v.normalized();
    json!({
        "torsion": v.render(),
        "num": num.render(n),
        "den": den.render(n),
        "unit_group": {
            "sign": v.units.allow_sign,
            "root_order": v.units.root_order,
            "lattice": v.units.lattice.basis().unwrap_or_else(|_| v.units.lattice.generators()),
        },
    })
}

fn units_text(v: &TorsionValue) -> String {
    let basis = v
        .units
        .lattice
        .basis()
        .unwrap_or_else(|_| v.units.lattice.generators());
    let full = v.units.lattice.index().ok().flatten() == Some(1);
    let lattice = if full {
        String::from("all exponents")
    } else {
        format!("exponents in span {basis:?}")
    };
    format!("units: +-z^b * t^a, z = zeta_{}, {lattice}", v.units.root_order)
}

fn compute(job: &Job, opts: Options) -> Result<Outcome> {
    let p = job.presentation()?;
    let phi = job.phi(&p)?;
    let field = session_field(job, opts, &[])?;
    let rho = job.rho(&p, &field, !opts.skip_rep_check)?;
    let v = wada_torsion(&p, &TensorRep::new(&phi, &rho)?)?;
    let mut out = torsion_json(&v);
    out["command"] = json!("compute");
    out["variables"] = json!(v.num_vars());
    out["generators"] = json!(p.generators());
    Ok(Outcome {
        code: 0,
        text: format!("{}\n{}", v.render(), units_text(&v)),
        json: out,
    })
}

fn verify(job: &Job, opts: Options) -> Result<Outcome> {
    let p = job.presentation()?;
    let phi = job.phi(&p)?;
    let cover = job
        .cover(phi.num_vars())?
        .ok_or_else(|| Error::Validation("verify-cover needs a cover".into()))?;
    let field = session_field(job, opts, &[cover.group.exponent()])?;
    let rho = job.rho(&p, &field, !opts.skip_rep_check)?;
    let start = Instant::now();
    let clock = move || start.elapsed().as_secs_f64();
    let report = verify_cover_timed(&p, &phi, &rho, &cover, Some(&clock))?;
    Ok(report_outcome(&report))
}

fn report_outcome(r: &CoverReport) -> Outcome {
    let n = r.rhs.num_vars();
    let mut text = String::new();
    let lhs_json = match &r.lhs {
        Ok(v) => {
            let _ = writeln!(text, "lhs: {}", v.render());
            torsion_json(v)
        }
        Err(e) => {
            let _ = writeln!(text, "lhs: unavailable ({e})");
            Value::Null
        }
    };
    let _ = writeln!(text, "rhs: {}", r.rhs.render());
    let mut factors = Vec::new();
    for (xi, v) in &r.factors {
        let _ = writeln!(text, "  factor {xi}: {}", v.render());
        factors.push(json!({ "character": xi.ks, "torsion": v.render() }));
    }
    let witness = r.witness.as_ref().map(|w| w.render(n));
    match &witness {
        Some(w) => {
            let _ = writeln!(text, "equal: true (lhs = {w} * rhs)");
        }
        None => {
            let _ = writeln!(text, "equal: false");
        }
    }
    if let Some(ok) = r.sublattice_ok {
        let _ = writeln!(text, "lhs supported on the cover lattice: {ok}");
    }
    if let (Some(l), Some(rh)) = (r.timings.lhs_seconds, r.timings.rhs_seconds) {
        let _ = write!(text, "time: lhs {l:.3}s, rhs {rh:.3}s");
    }
    let code = match &r.lhs {
        Err(e) => exit_code(e),
        Ok(_) if r.equal => 0,
        Ok(_) => 1,
    };
    Outcome {
        code,
        text: text.trim_end().to_string(),
        json: json!({
            "command": "verify-cover",
            "equal": r.equal,
            "lhs": lhs_json,
            "lhs_error": r.lhs.as_ref().err().map(|e| e.to_string()),
            "rhs": torsion_json(&r.rhs),
            "factors": factors,
            "witness": witness,
            "sublattice_ok": r.sublattice_ok,
            "cover_generators": r.cover_generators,
            "timings": {
                "lhs_seconds": r.timings.lhs_seconds,
                "rhs_seconds": r.timings.rhs_seconds,
            },
        }),
    }
}

/// The polynomial of the job, or the Alexander polynomial `tau * (t - 1)`
/// of a knot source.
fn alexander_polynomial(job: &Job, field: &Arc<CycloField>) -> Result<LaurentPoly> {
    if let Some(poly) = job.polynomial(field)? {
        if job.has_source() {
            return Err(Error::Validation("give either a polynomial or a knot, not both".into()));
        }
        return Ok(poly);
    }
    if job.rho.is_some() {
        return Err(Error::Validation("branched covers use the untwisted polynomial; drop rho".into()));
    }
    let p = job.presentation()?;
    let phi = job.phi(&p)?;
    if phi.num_vars() != 1 {
        return Err(Error::Validation("branched covers need a knot (one variable)".into()));
    }
    let rho = MatRep::trivial(field, p.num_generators());
    let v = wada_torsion(&p, &TensorRep::new(&phi, &rho)?)?;
    let (num, den) = v.normalized();
    let t_minus_1 = LaurentPoly::monomial(Monomial::var(0)) - LaurentPoly::from_int(1);
    (num * t_minus_1)
        .div_exact(&den)
        .ok_or_else(|| Error::Validation("torsion times (t - 1) is not a polynomial; not a knot".into()))
}

fn require_q(job: &Job) -> Result<u64> {
    job.q()?
        .ok_or_else(|| Error::Validation("this command needs q".into()))
}

fn branched(job: &Job, opts: Options) -> Result<Outcome> {
    let q = require_q(job)?;
    let field = session_field(job, opts, &[q])?;
    let delta = alexander_polynomial(job, &field)?;
    let out = branched_product(&delta, q, &field)?.render(1);
    Ok(Outcome {
        code: 0,
        text: out.clone(),
        json: json!({ "command": "branched", "q": q, "polynomial": delta.render(1), "product": out }),
    })
}

fn homology(job: &Job, opts: Options) -> Result<Outcome> {
    let q = require_q(job)?;
    let field = session_field(job, opts, &[q])?;
    let delta = alexander_polynomial(job, &field)?;
    let order = homology_order(&delta, q, &field)?;
    let shown = order.as_ref().map_or_else(|| String::from("infinite"), render_rational);
    Ok(Outcome {
        code: 0,
        text: shown.clone(),
        json: json!({ "command": "homology-order", "q": q, "polynomial": delta.render(1), "order": shown }),
    })
}

fn chars(job: &Job, opts: Options) -> Result<Outcome> {
    let group = job
        .group()?
        .ok_or_else(|| Error::Validation("characters needs a cover group".into()))?;
    let field = session_field(job, opts, &[required_conductor(&group, &[])])?;
    let mut text = String::new();
    let mut list = Vec::new();
    for xi in characters(&group) {
        let values = (0..group.rank())
            .map(|i| {
                let mut e = vec![0; group.rank()];
                e[i] = 1;
                xi.value(&group, &e, &field).map(|v| v.render())
            })
            .collect::<Result<Vec<_>>>()?;
        let _ = writeln!(text, "{xi}: {}", values.join(", "));
        list.push(json!({ "character": xi.ks, "values": values }));
    }
    Ok(Outcome {
        code: 0,
        text: text.trim_end().to_string(),
        json: json!({
            "command": "characters",
            "orders": group.orders(),
            "conductor": field.conductor(),
            "characters": list,
        }),
    })
}

fn rs(job: &Job) -> Result<Outcome> {
    let p = job.presentation()?;
    let phi = job.phi(&p)?;
    let cover = job
        .cover(phi.num_vars())?
        .ok_or_else(|| Error::Validation("rs needs a cover".into()))?;
    let sub = reidemeister_schreier(&p, phi.images(), &cover.group, &cover.pi_bar)?;
    let q = &sub.presentation;
    let inclusion: Vec<String> = sub.inclusion.iter().map(|w| w.render(p.generators())).collect();
    let reps: Vec<String> = sub.coset_reps.iter().map(|w| w.render(p.generators())).collect();
    let mut text = String::new();
    let _ = writeln!(text, "generators: {}", q.generators().join(", "));
    for r in q.render_relators() {
        let _ = writeln!(text, "relator: {r}");
    }
    let _ = writeln!(text, "deficiency: {}", q.deficiency());
    for (g, w) in q.generators().iter().zip(&inclusion) {
        let _ = writeln!(text, "{g} = {w}");
    }
    let _ = write!(
        text,
        "cosets: {}, Schreier generators before simplification: {}",
        reps.len(),
        sub.schreier_generators
    );
    Ok(Outcome {
        code: 0,
        text,
        json: json!({
            "command": "rs",
            "presentation": { "generators": q.generators(), "relators": q.render_relators() },
            "deficiency": q.deficiency(),
            "inclusion": inclusion,
            "coset_reps": reps,
            "schreier_generators": sub.schreier_generators,
        }),
    })
}
