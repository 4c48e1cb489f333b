use std::collections::BTreeMap;

use mahler_core::eval::{choose_depth, eval_function, EvalOptions, EvalResult, MajorantSource};
use mahler_core::exact::rational::fmt_q;
use mahler_core::exact::vars;
use mahler_core::multiseq::{exact_theta_relations, iteration_vectors, theta, vanishing_probe, verify_distance};
use mahler_core::numeric::{decimal, Round};
use mahler_core::points::{
    admissible_pair, orbit_monomial, AdmissibilityBounds, Independence, IndependenceCertificate, Verdict, ZeroTendency,
};
use mahler_core::relations::{
    check_pure_gens, extend_with_constant, find_integer_relations, find_polynomial_relations, homogenize, lift_relation,
    purity_decompose, LiftOutcome, PurityOutcome,
};
use mahler_core::systems::{
    gauge_construct, gauge_verify, iterate_matrix, kronecker_power, regular_point_check, RegularityVerdict,
};
use mahler_core::transform::class_m_check;
use mahler_core::{BigFloat, BigRational, Error, Interval, MultiPoly, QMatrix, RFMatrix, Transform};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use crate::file::{SystemDef, SystemFile, ValueEntry};
use crate::report::{Report, Status};
use crate::CliError;

/// Every command name accepted by [`Command::parse`].
pub const COMMANDS: &[&str] = &[
    "class-m",
    "admissible",
    "gauge",
    "regular-point",
    "eval",
    "relations",
    "lift",
    "purity",
    "kron-power",
    "theta",
    "iterate-vectors",
    "probe",
];

const DEFAULT_DIGITS: u32 = 30;
const DEFAULT_ORDER: u32 = 32;
const DEFAULT_K_MAX: u64 = 64;
const DEFAULT_BOUND: u64 = 1000;
const DEFAULT_L_MAX: u64 = 1000;
/// Number of exact orbit checks backing a dependence witness.
pub const ORBIT_CHECKS: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ClassM,
    Admissible,
    Gauge,
    RegularPoint,
    Eval,
    Relations,
    Lift,
    Purity,
    KronPower,
    Theta,
    IterateVectors,
    Probe,
}

impl Command {
    /// Accepts the bare name or `check NAME`.
    pub fn parse(words: &[String]) -> Result<Command, CliError> {
        let name = match words {
            [w] => w.as_str(),
            [c, w] if c == "check" => w.as_str(),
            _ => return Err(CliError::Usage(format!("expected a command, one of {}", COMMANDS.join(", ")))),
        };
        Ok(match name {
            "class-m" => Command::ClassM,
            "admissible" => Command::Admissible,
            "gauge" => Command::Gauge,
            "regular-point" => Command::RegularPoint,
            "eval" => Command::Eval,
            "relations" => Command::Relations,
            "lift" => Command::Lift,
            "purity" => Command::Purity,
            "kron-power" => Command::KronPower,
            "theta" => Command::Theta,
            "iterate-vectors" => Command::IterateVectors,
            "probe" => Command::Probe,
            other => return Err(CliError::Usage(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
        })
    }

    pub fn name(self) -> &'static str {
        COMMANDS[self as usize]
    }
}

/// Command-line selections and overrides of the file's settings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// System name, or a comma-separated list for `theta`/`iterate-vectors`.
    pub system: Option<String>,
    pub point: Option<String>,
    pub values: Option<String>,
    pub relation: Option<String>,
    pub purity: Option<String>,
    pub probe: Option<String>,
    pub digits: Option<u32>,
    pub order: Option<u32>,
    pub k_max: Option<u64>,
    pub bound: Option<u64>,
    pub degree: Option<u32>,
    pub l_max: Option<u64>,
}

struct Ctx<'a> {
    file: &'a SystemFile,
    opts: &'a Options,
}

impl<'a> Ctx<'a> {
    fn digits(&self) -> u32 {
        self.opts.digits.or(self.file.settings.digits).unwrap_or(DEFAULT_DIGITS).max(1)
    }

    /// Working precision in bits for the requested decimal digits.
    fn prec(&self) -> u32 {
        (self.digits() as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 32
    }

    fn order(&self) -> u32 {
        self.opts.order.or(self.file.settings.order).unwrap_or(DEFAULT_ORDER)
    }

    fn k_max(&self) -> u64 {
        self.opts.k_max.or(self.file.settings.k_max).unwrap_or(DEFAULT_K_MAX)
    }

    fn bound(&self) -> u64 {
        self.opts.bound.or(self.file.settings.bound).unwrap_or(DEFAULT_BOUND)
    }

    fn degree(&self, default: u32) -> u32 {
        self.opts.degree.or(self.file.settings.degree).unwrap_or(default)
    }

    fn l_max(&self) -> u64 {
        self.opts.l_max.or(self.file.settings.l_max).unwrap_or(DEFAULT_L_MAX)
    }

    fn required<'b>(&self, v: &'b Option<String>, flag: &str) -> Result<&'b str, CliError> {
        v.as_deref().ok_or_else(|| CliError::Usage(format!("this command needs --{flag}")))
    }

    fn system(&self) -> Result<&'a SystemDef, CliError> {
        let name = self.required(&self.opts.system, "system")?;
        self.file.system(name)
    }

    fn systems(&self) -> Result<Vec<&'a SystemDef>, CliError> {
        let names = self.required(&self.opts.system, "system")?;
        names.split(',').map(|n| self.file.system(n.trim())).collect()
    }

    fn point(&self, sys: &SystemDef) -> Result<&'a crate::file::PointDef, CliError> {
        let name = self.required(&self.opts.point, "point")?;
        let p = self.file.point(name)?;
        if p.point.n() != sys.vars.len() {
            return Err(CliError::Usage(format!(
                "point `{name}` has {} coordinates but system `{}` has {} variables",
                p.point.n(),
                sys.name,
                sys.vars.len()
            )));
        }
        Ok(p)
    }
}

fn qm_json(m: &QMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(|x| fmt_q(x).into()).collect())).collect())
}

fn rf_json(m: &RFMatrix) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array(m.row(i).iter().map(|x| x.to_string().into()).collect())).collect())
}

fn t_json(t: &Transform) -> Value {
    json!(t.to_string_rows())
}

fn system_json(s: &SystemDef) -> Value {
    json!({
        "name": s.name,
        "vars": s.vars,
        "T": t_json(&s.t),
        "A": rf_json(&s.a_input),
        "f0": s.f0.iter().map(fmt_q).collect::<Vec<_>>(),
        "orientation": match s.orientation {
            mahler_core::systems::Orientation::Forward => "forward",
            mahler_core::systems::Orientation::Backward => "backward",
        },
    })
}

fn point_json(p: &crate::file::PointDef) -> Value {
    json!({ "name": p.name, "coords": p.point.to_strings() })
}

fn ivec_json(v: &[BigInt]) -> Value {
    json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn up(x: &BigFloat) -> String {
    x.to_decimal(3, Round::Up)
}

fn interval_json(x: &Interval, digits: usize) -> Value {
    json!({
        "lo": x.lo().to_decimal(digits, Round::Down),
        "hi": x.hi().to_decimal(digits, Round::Up),
        "prec": x.prec(),
    })
}

fn report(cmd: Command, inputs: Value, verdict: impl Into<String>, status: Status, evidence: Value, summary: Vec<String>) -> Report {
    Report { command: cmd.name().into(), inputs, verdict: verdict.into(), status, evidence, summary }
}

/// Runs one command against a parsed file.
pub fn run_command(cmd: Command, file: &SystemFile, opts: &Options) -> Result<Report, CliError> {
    let ctx = Ctx { file, opts };
    match cmd {
        Command::ClassM => class_m(&ctx),
        Command::Admissible => admissible(&ctx),
        Command::Gauge => gauge(&ctx),
        Command::RegularPoint => regular_point(&ctx),
        Command::Eval => eval(&ctx),
        Command::Relations => relations(&ctx),
        Command::Lift => lift(&ctx),
        Command::Purity => purity(&ctx),
        Command::KronPower => kron_power(&ctx),
        Command::Theta => theta_cmd(&ctx),
        Command::IterateVectors => iterate_vectors(&ctx),
        Command::Probe => probe(&ctx),
    }
}

fn class_m(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let r = class_m_check(&s.t);
    let radii: Vec<Value> = r
        .block_radii
        .iter()
        .map(|(lo, hi)| json!({ "lo": decimal(lo, 15, Round::Down), "hi": decimal(hi, 15, Round::Up) }))
        .collect();
    let mut reasons = Vec::new();
    if !r.nonsingular {
        reasons.push("the transform is singular".to_string());
    }
    if let Some(k) = r.root_of_unity_witness {
        reasons.push(format!("a primitive {k}-th root of unity is an eigenvalue"));
    }
    for (i, ok) in r.top_equal.iter().enumerate() {
        if !ok {
            reasons.push(format!("top block {i} has radius below rho(T)"));
        }
    }
    for (i, ok) in r.lower_strict.iter().enumerate() {
        if !ok {
            reasons.push(format!("lower block {i} has radius equal to rho(T)"));
        }
    }
    let evidence = json!({
        "det": r.det.to_string(),
        "nonsingular": r.nonsingular,
        "root_of_unity_witness": r.root_of_unity_witness,
        "normal_form": {
            "permutation": r.normal_form.permutation,
            "blocks": r.normal_form.block_indices,
            "kappa": r.normal_form.kappa,
            "nu": r.normal_form.nu,
        },
        "block_radii": radii,
        "top_equal": r.top_equal,
        "lower_strict": r.lower_strict,
        "perron_condition": r.perron_condition,
        "failed_conditions": reasons,
    });
    let mut summary = vec![format!("T = {}", s.t), format!("det T = {}", r.det)];
    summary.extend(reasons.iter().cloned());
    let (verdict, status) = if r.verdict { ("in-class-m", Status::Affirmative) } else { ("not-in-class-m", Status::Negative) };
    Ok(report(Command::ClassM, json!({ "system": system_json(s) }), verdict, status, evidence, summary))
}

fn tendency_json(z: &Option<ZeroTendency>) -> Value {
    match z {
        None => Value::Null,
        Some(ZeroTendency::Yes { k0 }) => json!({ "result": "yes", "k0": k0 }),
        Some(ZeroTendency::No) => json!({ "result": "no" }),
        Some(ZeroTendency::Unknown { k_max }) => json!({ "result": "unknown", "k_max": k_max }),
    }
}

fn admissible(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let p = ctx.point(s)?;
    let bounds = AdmissibilityBounds { k_max: ctx.k_max(), ..AdmissibilityBounds::default() };
    let r = admissible_pair(&s.t, &p.point, bounds)?;
    let mut summary = vec![
        format!("class M: {}", r.class_m.verdict),
        format!(
            "orbit tends to zero: {}",
            match &r.tends_to_zero {
                None => "not checked".to_string(),
                Some(ZeroTendency::Yes { k0 }) => format!("yes, inside the unit polydisk from k = {k0}"),
                Some(ZeroTendency::No) => "no".to_string(),
                Some(ZeroTendency::Unknown { k_max }) => format!("unknown up to k = {k_max}"),
            }
        ),
    ];
    let independence = match &r.t_independent {
        None => Value::Null,
        Some(Independence::Independent { certified_by }) => {
            let cert = match certified_by {
                IndependenceCertificate::TrivialLattice => json!({ "kind": "trivial-lattice" }),
                IndependenceCertificate::PeriodBound { b } => json!({ "kind": "period-bound", "b": b }),
            };
            json!({ "result": "independent", "certificate": cert })
        }
        Some(Independence::Dependent { mu, a, b }) => {
            let mut checks = Vec::new();
            for j in 0..ORBIT_CHECKS {
                let k = a + j * b;
                checks.push(orbit_monomial(&s.t, &p.point, mu, k)?.is_one());
            }
            let passed = checks.iter().filter(|&&c| c).count();
            summary.push(format!(
                "dependence witness mu = ({}) along k = {a} + {b}j; {passed}/{ORBIT_CHECKS} exact orbit checks hold",
                mu.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            ));
            json!({
                "result": "dependent",
                "mu": ivec_json(mu),
                "a": a,
                "b": b,
                "orbit_checks": ORBIT_CHECKS,
                "orbit_checks_passed": passed,
            })
        }
        Some(Independence::Unknown { b_max }) => json!({ "result": "unknown", "b_max": b_max }),
    };
    let status = match r.verdict {
        Verdict::Admissible => Status::Affirmative,
        Verdict::NotAdmissible => Status::Negative,
        Verdict::Unknown => Status::Unknown,
    };
    let evidence = json!({
        "class_m": r.class_m.verdict,
        "root_of_unity_witness": r.class_m.root_of_unity_witness,
        "tends_to_zero": tendency_json(&r.tends_to_zero),
        "t_independence": independence,
        "bounds": { "k_max": bounds.k_max, "b_max": bounds.b_max, "a_max": bounds.a_max },
    });
    let inputs = json!({ "system": system_json(s), "point": point_json(p) });
    Ok(report(Command::Admissible, inputs, r.verdict.as_str(), status, evidence, summary))
}

fn gauge(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let order = ctx.order();
    let inputs = json!({ "system": system_json(s), "order": order });
    let g = match gauge_construct(&s.system, order) {
        Ok(g) => g,
        Err(Error::Resonance { degree }) => {
            let evidence = json!({ "resonance_degree": degree });
            let summary = vec![format!("the degree-{degree} equations for the gauge transform are singular")];
            return Ok(report(Command::Gauge, inputs, "resonance", Status::Unknown, evidence, summary));
        }
        Err(e) => return Err(e.into()),
    };
    let check = gauge_verify(&s.system, &g, order)?;
    let phi: Vec<Vec<String>> =
        (0..g.phi.nrows()).map(|i| g.phi.row(i).iter().map(|x| x.to_string()).collect()).collect();
    let failure = check.failure.as_ref().map(|f| {
        json!({
            "identity": f.identity,
            "k": f.k,
            "row": f.row,
            "col": f.col,
            "monomial": f.monomial.0,
            "expected": fmt_q(&f.expected),
            "found": fmt_q(&f.found),
        })
    });
    let evidence = json!({
        "B": qm_json(&g.b),
        "phi": phi,
        "order": g.order,
        "identities": ["phi * phi_inv = I", "A(z) phi(Tz) = phi(z) B", "A_k(z) = phi(z) B^k phi_inv(T^k z), k = 0..3"],
        "verified": check.ok,
        "failure": failure,
    });
    let summary = vec![format!("B = A(0), gauge transform to total degree {order}"), format!("exact truncation identities hold: {}", check.ok)];
    let (verdict, status) = if check.ok { ("verified", Status::Affirmative) } else { ("verification-failed", Status::Negative) };
    Ok(report(Command::Gauge, inputs, verdict, status, evidence, summary))
}

fn regular_point(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let p = ctx.point(s)?;
    let r = regular_point_check(&s.system, &p.point, ctx.k_max())?;
    let status = match r.verdict {
        RegularityVerdict::RegularCertified => Status::Affirmative,
        RegularityVerdict::RegularUpToK => Status::Unknown,
        RegularityVerdict::NotRegular { .. } => Status::Negative,
    };
    let evidence = json!({
        "k_checked": r.k_checked,
        "a0_invertible": r.a0_invertible,
        "failures": r.failures,
    });
    let summary = vec![
        match r.verdict {
            RegularityVerdict::RegularCertified => format!("orbit enters a certified invariant polydisk at k = {}", r.k_checked),
            _ => format!("orbit checked for k <= {}", r.k_checked),
        },
        format!("failures at k = {:?}", r.failures),
    ];
    let inputs = json!({ "system": system_json(s), "point": point_json(p), "k_max": ctx.k_max() });
    Ok(report(Command::RegularPoint, inputs, r.verdict.as_str(), status, evidence, summary))
}

fn evaluate(s: &SystemDef, point: &mahler_core::RationalPoint, order: u32, prec: u32, k_max: u64) -> Result<EvalResult, CliError> {
    let k = choose_depth(&s.system, &s.f0, point, order, prec, k_max)?;
    Ok(eval_function(&s.system, &s.f0, point, &EvalOptions::new(k, order, prec))?)
}

fn eval(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let p = ctx.point(s)?;
    let digits = ctx.digits();
    let (order, prec) = (ctx.order(), ctx.prec());
    let r = evaluate(s, &p.point, order, prec, ctx.k_max())?;
    let target = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
    let reached = r.error_bounds.iter().all(|b| b.to_rational() <= target);
    let values: Vec<Value> = (0..s.system.m())
        .map(|i| {
            json!({
                "index": i,
                "value": r.decimal(i, digits as usize),
                "error_bound": up(&r.error_bounds[i]),
                "exact": r.exact[i].as_ref().map(fmt_q),
                "enclosure": interval_json(&r.enclosures[i], digits as usize + 5),
            })
        })
        .collect();
    let evidence = json!({
        "values": values,
        "k_used": r.k_used,
        "order": r.order_used,
        "prec": r.prec,
        "majorant": fmt_q(&r.majorant),
        "majorant_source": match r.majorant_source {
            MajorantSource::User => "user",
            MajorantSource::Default => "default: 1 + sum of |coefficients| of the truncation, assumed to bound every coefficient",
        },
        "orbit_radius": decimal(&r.radius, 6, Round::Up),
        "tail_bound": decimal(&r.tail_bound, 3, Round::Up),
        "requested_accuracy": format!("1e-{digits}"),
        "accuracy_reached": reached,
    });
    let summary = (0..s.system.m())
        .map(|i| format!("f_{i}{} = {} ± {}", p.point, r.decimal(i, digits as usize), up(&r.error_bounds[i])))
        .collect();
    let inputs = json!({ "system": system_json(s), "point": point_json(p), "digits": digits, "order": order });
    let (verdict, status) = if reached { ("evaluated", Status::Affirmative) } else { ("accuracy-not-reached", Status::Unknown) };
    Ok(report(Command::Eval, inputs, verdict, status, evidence, summary))
}

/// Enclosures of the entries of a `[values]` section at `prec` bits.
pub(crate) fn value_enclosures(
    file: &SystemFile,
    entries: &[ValueEntry],
    order: u32,
    k_max: u64,
    prec: u32,
) -> Result<Vec<Interval>, CliError> {
    let mut cache: BTreeMap<(String, String), EvalResult> = BTreeMap::new();
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        match e {
            ValueEntry::Constant(c) => out.push(Interval::from_rational(c, prec)),
            ValueEntry::Component { system, index, point } => {
                let key = (system.clone(), point.clone());
                if !cache.contains_key(&key) {
                    let s = file.system(system)?;
                    let p = file.point(point)?;
                    cache.insert(key.clone(), evaluate(s, &p.point, order, prec, k_max)?);
                }
                out.push(cache[&key].enclosures[*index].clone());
            }
        }
    }
    Ok(out)
}

fn entry_label(e: &ValueEntry) -> String {
    match e {
        ValueEntry::Component { system, index, point } => format!("{system}[{index}]@{point}"),
        ValueEntry::Constant(c) => fmt_q(c),
    }
}

fn relations(ctx: &Ctx) -> Result<Report, CliError> {
    let name = ctx.required(&ctx.opts.values, "values")?;
    let vd = ctx.file.values_def(name)?;
    let (order, k_max, prec) = (ctx.order(), ctx.k_max(), ctx.prec());
    let bound = BigInt::from(ctx.bound());
    let degree = ctx.degree(1);
    let labels: Vec<String> = vd.entries.iter().map(entry_label).collect();
    let values = |p: u32| value_enclosures(ctx.file, &vd.entries, order, k_max, p).map_err(|e| match e {
        CliError::Core(c) => c,
        other => Error::Invalid(other.to_string()),
    });
    let names: Vec<String> = (0..labels.len()).map(|i| format!("X{i}")).collect();
    let mut lines = Vec::new();
    let found: Vec<Value> = if degree <= 1 {
        find_integer_relations(values, &bound, prec)?
            .into_iter()
            .map(|r| {
                let terms: Vec<MultiPoly> = r
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| MultiPoly::var(vars(&names), i).scale(&BigRational::from_integer(c.clone())))
                    .collect();
                let poly = terms.iter().fold(MultiPoly::zero(vars(&names)), |a, b| a.add(b));
                lines.push(format!("{poly} = 0 (residual <= {})", up(&r.residual)));
                json!({
                    "coeffs": ivec_json(&r.coeffs),
                    "residual": up(&r.residual),
                    "prec": r.prec,
                    "status": "verified-numeric",
                })
            })
            .collect()
    } else {
        find_polynomial_relations(values, &vars(&names), degree, &bound, prec)?
            .into_iter()
            .map(|r| {
                lines.push(format!("{} = 0 (residual <= {})", r.poly, up(&r.residual)));
                json!({ "poly": r.poly.to_string(), "residual": up(&r.residual), "prec": r.prec })
            })
            .collect()
    };
    let mut summary: Vec<String> = labels.iter().enumerate().map(|(i, l)| format!("X{i} = {l}")).collect();
    summary.push(format!("{} relation(s) with coefficients up to {bound}, degree {degree}", found.len()));
    summary.extend(lines);
    let evidence = json!({ "relations": found, "labels": labels, "prec": prec, "coeff_bound": bound.to_string(), "degree": degree });
    let inputs = json!({ "values": name, "entries": labels, "digits": ctx.digits(), "order": order });
    let (verdict, status) = if found.is_empty() { ("none-found", Status::Unknown) } else { ("found", Status::Affirmative) };
    Ok(report(Command::Relations, inputs, verdict, status, evidence, summary))
}

fn lift(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let p = ctx.point(s)?;
    let rname = ctx.required(&ctx.opts.relation, "relation")?;
    let rel = ctx.file.relation(rname)?;
    let order = ctx.order();
    let d_max = ctx.degree(4);
    let mut poly: MultiPoly = rel.poly.clone();
    let mut sys = s.system.clone();
    let mut f0 = s.f0.clone();
    let mut homogenized = false;
    if !poly.is_homogeneous() {
        let mut name = "one".to_string();
        while rel.vars.contains(&name) || s.vars.contains(&name) {
            name.push('_');
        }
        poly = homogenize(&poly, &name)?;
        (sys, f0) = extend_with_constant(&sys, &f0)?;
        homogenized = true;
    }
    let inputs = json!({
        "system": system_json(s),
        "point": point_json(p),
        "relation": { "name": rel.name, "vars": rel.vars, "poly": rel.poly.to_string() },
        "order": order,
        "max_z_degree": d_max,
    });
    match lift_relation(&sys, &f0, &poly, &p.point, d_max, order)? {
        LiftOutcome::Found(r) => {
            let evidence = json!({
                "Q": r.q.to_string(),
                "z_degree": r.z_degree,
                "verified_order": r.verified_order,
                "specialization_ok": r.specialization_ok,
                "homogenized": homogenized,
                "homogeneous_relation": poly.to_string(),
            });
            let summary = vec![format!("Q = {}", r.q), format!("Q(alpha, X) = P exactly; Q(z, f(z)) = 0 mod degree {}", r.verified_order)];
            Ok(report(Command::Lift, inputs, "lifted", Status::Affirmative, evidence, summary))
        }
        LiftOutcome::NotFound { max_z_degree, order } => {
            let evidence = json!({ "max_z_degree": max_z_degree, "order": order, "homogenized": homogenized });
            let summary = vec![format!("no lift with z-degree <= {max_z_degree} vanishing to order {order}")];
            Ok(report(Command::Lift, inputs, "not-found", Status::Unknown, evidence, summary))
        }
    }
}

fn purity(ctx: &Ctx) -> Result<Report, CliError> {
    let name = ctx.required(&ctx.opts.purity, "purity")?;
    let pd = ctx.file.purity_def(name)?;
    let rel = ctx.file.relation(&pd.relation)?;
    let d = ctx.degree(4);
    let mut checked = false;
    if let Some(v) = &pd.values {
        let vd = ctx.file.values_def(v)?;
        let vals = value_enclosures(ctx.file, &vd.entries, ctx.order(), ctx.k_max(), ctx.prec())?;
        check_pure_gens(&pd.groups, &pd.gens, &vals)?;
        checked = true;
    }
    let inputs = json!({
        "purity": name,
        "relation": { "name": rel.name, "vars": rel.vars, "poly": rel.poly.to_string() },
        "groups": pd.groups.iter().map(|g| g.iter().map(|&i| rel.vars[i].clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "gens": pd.gens.iter().map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "degree": d,
    });
    match purity_decompose(&rel.poly, &pd.groups, &pd.gens, d)? {
        PurityOutcome::Decomposed(terms) => {
            let w: Vec<Value> = terms
                .iter()
                .map(|t| json!({ "group": t.group, "gen": t.index, "multiplier": t.multiplier.to_string() }))
                .collect();
            let summary = terms
                .iter()
                .map(|t| format!("({}) * gens[{}][{}] = ({}) * ({})", t.multiplier, t.group, t.index, t.multiplier, pd.gens[t.group][t.index]))
                .collect();
            let evidence = json!({ "witness": w, "generators_checked_numerically": checked });
            Ok(report(Command::Purity, inputs, "decomposed", Status::Affirmative, evidence, summary))
        }
        PurityOutcome::NotDecomposedAtBound { degree } => {
            let evidence = json!({ "degree": degree, "generators_checked_numerically": checked });
            let summary = vec![format!("not in the span of pure relations at degree {degree}")];
            Ok(report(Command::Purity, inputs, "not-decomposed-at-bound", Status::Unknown, evidence, summary))
        }
    }
}

fn kron_power(ctx: &Ctx) -> Result<Report, CliError> {
    let s = ctx.system()?;
    let d = ctx.degree(2);
    let k = kronecker_power(&s.system, d)?;
    let m = s.system.m() as u32;
    let exponent = d * m.pow(d - 1);
    let det_a = s.system.a().det()?;
    let det_k = k.a().det()?;
    let det_ok = det_k == det_a.pow(exponent);
    let a2 = iterate_matrix(&s.system, 2)?;
    let mixed_ok = iterate_matrix(&k, 2)? == a2.kronecker_power(d);
    let ok = det_ok && mixed_ok;
    let evidence = json!({
        "size": k.m(),
        "A": rf_json(k.a()),
        "det_exponent": exponent,
        "det_law": det_ok,
        "mixed_product_law": mixed_ok,
        "det": det_a.to_string(),
    });
    let summary = vec![
        format!("A^(x{d}) is {0}x{0}", k.m()),
        format!("det(A^(x{d})) = det(A)^{exponent}: {det_ok}"),
        format!("A^(x{d})(z) A^(x{d})(Tz) = (A(z) A(Tz))^(x{d}): {mixed_ok}"),
    ];
    let inputs = json!({ "system": system_json(s), "degree": d });
    let (verdict, status) = if ok { ("identities-hold", Status::Affirmative) } else { ("identity-fails", Status::Negative) };
    Ok(report(Command::KronPower, inputs, verdict, status, evidence, summary))
}

fn transforms_of<'a>(ctx: &Ctx<'a>) -> Result<(Vec<&'a SystemDef>, Vec<Transform>), CliError> {
    let ss = ctx.systems()?;
    let ts = ss.iter().map(|s| s.t.clone()).collect();
    Ok((ss, ts))
}

fn theta_cmd(ctx: &Ctx) -> Result<Report, CliError> {
    let (ss, ts) = transforms_of(ctx)?;
    let digits = ctx.digits() as usize;
    let th = theta(&ts, ctx.prec())?;
    let rels = exact_theta_relations(&th);
    let comps: Vec<Value> = th.components.iter().map(|c| interval_json(c, digits)).collect();
    let evidence = json!({
        "theta": comps,
        "integer_radii": th.integer_radii.iter().map(|r| r.as_ref().map(|x| x.to_string())).collect::<Vec<_>>(),
        "exact_relations": rels.as_ref().map(|rs| rs.iter().map(|r| ivec_json(r)).collect::<Vec<_>>()),
        "prec": th.prec,
    });
    let summary = th.components.iter().enumerate().map(|(i, c)| format!("theta_{i} = {}", c.to_decimal(digits))).collect();
    let inputs = json!({ "systems": ss.iter().map(|s| s.name.clone()).collect::<Vec<_>>(), "digits": digits });
    Ok(report(Command::Theta, inputs, "computed", Status::Affirmative, evidence, summary))
}

fn iterate_vectors(ctx: &Ctx) -> Result<Report, CliError> {
    let (ss, ts) = transforms_of(ctx)?;
    let l_max = ctx.l_max();
    let th = theta(&ts, ctx.prec())?;
    let rels = exact_theta_relations(&th).unwrap_or_default();
    let seq = iteration_vectors(&th, 1, l_max, &rels)?;
    let verified = verify_distance(&th, &seq);
    let within_one = seq.distance_bound.cmp_value(&BigFloat::one(64)) != std::cmp::Ordering::Greater;
    let head: Vec<Value> = seq.entries.iter().take(10).map(|(l, k)| json!({ "l": l, "k": k })).collect();
    let evidence = json!({
        "count": seq.entries.len(),
        "first_entries": head,
        "last_entry": seq.entries.last().map(|(l, k)| json!({ "l": l, "k": k })),
        "distance_bound": up(&seq.distance_bound),
        "distance_verified": verified,
        "relations": rels.iter().map(|r| ivec_json(r)).collect::<Vec<_>>(),
        "shift": seq.shift,
    });
    let summary = vec![
        format!("{} iteration vectors for l <= {l_max}", seq.entries.len()),
        format!("max |k_l - l*theta| <= {} (verified: {verified})", up(&seq.distance_bound)),
    ];
    let inputs = json!({ "systems": ss.iter().map(|s| s.name.clone()).collect::<Vec<_>>(), "l_max": l_max });
    let (verdict, status) = if verified && within_one { ("bounded", Status::Affirmative) } else { ("unbounded", Status::Negative) };
    Ok(report(Command::IterateVectors, inputs, verdict, status, evidence, summary))
}

fn probe(ctx: &Ctx) -> Result<Report, CliError> {
    let name = ctx.required(&ctx.opts.probe, "probe")?;
    let pd = ctx.file.probe(name)?;
    let ts: Vec<Transform> = pd.systems.iter().map(|n| ctx.file.system(n).map(|s| s.t.clone())).collect::<Result<_, _>>()?;
    let ps: Vec<mahler_core::RationalPoint> =
        pd.points.iter().map(|n| ctx.file.point(n).map(|p| p.point.clone())).collect::<Result<_, _>>()?;
    let prec = ctx.prec();
    let l_max = ctx.opts.l_max.unwrap_or(pd.l_max);
    let th = theta(&ts, prec)?;
    let rels = exact_theta_relations(&th).unwrap_or_default();
    let seq = iteration_vectors(&th, 1, l_max, &rels)?;
    let r = vanishing_probe(&pd.g, &ts, &ps, &seq, prec, pd.gap, pd.count)?;
    let evidence = json!({
        "zero_set": r.zero_set,
        "evaluated": r.values.len(),
        "exact_evaluations": r.values.iter().filter(|v| v.2).count(),
        "window": { "gap": r.window_gap, "count": r.window_count },
        "syndetic_run": r.syndetic_run,
    });
    let summary = vec![
        format!("g = {} along {} iteration vectors", pd.g, r.values.len()),
        format!("zero set: {:?}", r.zero_set),
    ];
    let inputs = json!({ "probe": name, "systems": pd.systems, "points": pd.points, "g": pd.g.to_string(), "l_max": l_max });
    let verdict = if r.syndetic_run.is_some() { "window-run-found" } else { "no-window-run" };
    Ok(report(Command::Probe, inputs, verdict, Status::Affirmative, evidence, summary))
}
