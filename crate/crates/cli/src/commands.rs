//! The four subcommands, each returning its results and exit status.

use std::collections::BTreeSet;
use std::io::Read as _;

use amdist::builder::build_matrices;
use amdist::datafile::{DatumFile, RingKind};
use amdist::graph::{classify_minor, GraphDatum, MinorClass};
use amdist::invariants::{
    invariants_direct, invariants_ghh, minor_det, minor_det_direct, minor_kappa, minor_kappa_direct, InvariantTriple,
};
use amdist::inverse::{compute_parts, inverse_closed_form, inverse_via_laplacian, InverseParts};
use amdist::matrix::{exact_det, solve_inverse, Matrix};
use amdist::ring::{Point, RatFunc, Rational, Ring, Scalar, Var};
use amdist::verifier::{
    default_shape, default_symbolic_options, default_topologies, schwartz_zippel_check, symbolic_check, CheckOptions,
    Identity, Shape, TrialReport,
};
use amdist::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{code, matrix_json, Outcome};

/// A datum file read into the ring it asks for.
pub enum Loaded {
    Exact(GraphDatum<Rational>),
    Symbolic(GraphDatum<RatFunc>),
    /// q-datum over the indeterminate `q`, reported at `q = at` if given.
    Q { g: GraphDatum<RatFunc>, at: Option<Rational> },
}

pub fn read_input(path: &str) -> Result<String> {
    let io = |e: std::io::Error| Error::Parse(format!("{path}: {e}"));
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

pub fn load(path: &str) -> Result<Loaded> {
    let file: DatumFile = serde_json::from_str(&read_input(path)?).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(match file.ring {
        RingKind::Rational => Loaded::Exact(file.to_datum()?),
        RingKind::Symbolic => Loaded::Symbolic(file.to_datum()?),
        RingKind::Q => {
            let at = file.options.q.as_deref().map(Rational::parse).transpose()?;
            Loaded::Q { g: file.to_q_datum()?, at }
        }
    })
}

/// Turns computed scalars into reported values, substituting `q` if asked.
pub struct Finish(Option<Point>);

impl Finish {
    fn for_loaded(l: &Loaded) -> Finish {
        match l {
            Loaded::Q { at: Some(q), .. } => Finish(Some(Point::from([(Var::new("q"), q.clone())]))),
            _ => Finish(None),
        }
    }

    pub fn value<S: Scalar>(&self, s: &S) -> Result<RatFunc> {
        let r = s.to_ratfunc().reduced();
        match &self.0 {
            None => Ok(r),
            Some(p) => Ok(r.substitute(p)?.reduced()),
        }
    }

    pub fn show<S: Scalar>(&self, s: &S) -> Result<String> {
        Ok(self.value(s)?.to_string())
    }

    fn values<S: Scalar>(&self, xs: &[S]) -> Result<Vec<String>> {
        xs.iter().map(|x| self.show(x)).collect()
    }

    fn matrix<S: Scalar>(&self, m: &Matrix<S>) -> Result<Matrix<RatFunc>> {
        m.try_map(|x| self.value(x))
    }
}

fn strings(m: &Matrix<RatFunc>) -> Vec<Vec<String>> {
    crate::report::matrix_strings(m)
}

fn triple_json<S: Scalar>(t: &InvariantTriple<S>, fin: &Finish) -> Result<Value> {
    Ok(json!({ "det": fin.show(&t.det)?, "cof": fin.show(&t.cof)?, "kappa": fin.show(&t.kappa)? }))
}

fn datum_summary<S: Scalar>(g: &GraphDatum<S>) -> Value {
    json!({ "n": g.n(), "blocks": g.blocks().iter().map(|b| b.vertices.clone()).collect::<Vec<_>>() })
}

/// Dispatches a generic body on the loaded ring.
macro_rules! on_loaded {
    ($loaded:expr, $g:ident => $body:expr) => {
        match $loaded {
            Loaded::Exact($g) => $body,
            Loaded::Symbolic($g) | Loaded::Q { g: $g, .. } => $body,
        }
    };
}

pub fn invariants(path: &str, x: Option<&str>) -> Result<Outcome> {
    let loaded = load(path)?;
    let fin = Finish::for_loaded(&loaded);
    let x = x.map(RatFunc::parse).transpose()?;
    on_loaded!(&loaded, g => invariants_for(g, &fin, x.as_ref()))
}

fn invariants_for<S: Scalar>(g: &GraphDatum<S>, fin: &Finish, x: Option<&RatFunc>) -> Result<Outcome> {
    let direct = invariants_direct(&build_matrices(g), g);
    let ghh = invariants_ghh(g);
    let agree = direct.same_values(&ghh);
    let mut results = json!({
        "datum": datum_summary(g),
        "direct": triple_json(&direct, fin)?,
        "ghh": triple_json(&ghh, fin)?,
        "agree": agree,
    });
    if let Some(x) = x {
        let v = fin.value(&ghh.det)?.add(&x.mul(&fin.value(&ghh.cof)?)).reduced();
        results["x"] = json!(x.to_string());
        results["det_plus_xj"] = json!(v.to_string());
    }
    Ok(if agree {
        Outcome::ok(results)
    } else {
        Outcome::with(results, code::INCONSISTENT, "direct and block-wise invariants differ")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum InverseMethod {
    Closed,
    Laplacian,
    Oracle,
    All,
}

pub fn inverse(path: &str, method: InverseMethod) -> Result<Outcome> {
    let loaded = load(path)?;
    let fin = Finish::for_loaded(&loaded);
    on_loaded!(&loaded, g => inverse_for(g, &fin, method))
}

fn parts_json<S: Scalar>(p: &InverseParts<S>, labels: &[usize], fin: &Finish) -> Result<Value> {
    Ok(json!({
        "alpha": p.alpha.as_ref().map(|a| fin.show(a)).transpose()?,
        "det": fin.show(&p.det)?,
        "kappa": fin.show(&p.kappa)?,
        "tau_in": fin.values(&p.tau_in)?,
        "tau_out": fin.values(&p.tau_out)?,
        "beta": fin.values(&p.beta)?,
        "c": matrix_json(labels, strings(&fin.matrix(&p.c_matrix)?)),
        "laplacian": matrix_json(labels, strings(&fin.matrix(&p.laplacian)?)),
    }))
}

fn inverse_for<S: Scalar>(g: &GraphDatum<S>, fin: &Finish, method: InverseMethod) -> Result<Outcome> {
    let labels = g.vertices().to_vec();
    let am = build_matrices(g);
    let det = fin.value(&exact_det(&am.d)?)?;
    let mut results = json!({ "datum": datum_summary(g), "det": det.to_string() });
    if det.is_zero() {
        return Ok(Outcome::with(results, code::SINGULAR, Error::SingularDistanceMatrix.to_string()));
    }
    let wanted: Vec<InverseMethod> = match method {
        InverseMethod::All => vec![InverseMethod::Closed, InverseMethod::Laplacian, InverseMethod::Oracle],
        m => vec![m],
    };
    let mut computed: Vec<(InverseMethod, Matrix<RatFunc>)> = Vec::new();
    let mut methods = serde_json::Map::new();
    for m in wanted.iter().copied() {
        let inv = match m {
            InverseMethod::Closed => inverse_closed_form(g),
            InverseMethod::Laplacian => inverse_via_laplacian(g),
            _ => solve_inverse(&am.d),
        };
        let name = format!("{m:?}").to_lowercase();
        let finished = inv.and_then(|x| fin.matrix(&x));
        match finished {
            Ok(x) => {
                methods.insert(name, matrix_json(&labels, strings(&x)));
                computed.push((m, x));
            }
            // with a single method there is nothing else to report
            Err(e) if wanted.len() == 1 => {
                results["error"] = json!(e.to_string());
                return Ok(Outcome::with(results, crate::report::exit_code(&e), e.to_string()));
            }
            Err(e) => {
                methods.insert(name, json!({ "error": e.to_string() }));
            }
        }
    }
    let agree = computed.windows(2).all(|w| w[0].1 == w[1].1);
    if let Some((_, first)) = computed.first() {
        results["inverse"] = matrix_json(&labels, strings(first));
    }
    results["methods"] = Value::Object(methods);
    results["agree"] = json!(agree);
    if method != InverseMethod::Oracle {
        match compute_parts(g).and_then(|p| parts_json(&p, &labels, fin)) {
            Ok(p) => results["parts"] = p,
            Err(e) => results["parts"] = json!({ "error": e.to_string() }),
        }
    }
    Ok(if agree {
        Outcome::ok(results)
    } else {
        Outcome::with(results, code::INCONSISTENT, "inverse methods disagree")
    })
}

pub fn minor(path: &str, rows: &[usize], cols: &[usize], x: Option<&str>) -> Result<Outcome> {
    let loaded = load(path)?;
    let fin = Finish::for_loaded(&loaded);
    let rows: BTreeSet<usize> = rows.iter().copied().collect();
    let cols: BTreeSet<usize> = cols.iter().copied().collect();
    let x = RatFunc::parse(x.unwrap_or("0"))?;
    match (&loaded, x.as_poly().and_then(|p| p.constant_value())) {
        (Loaded::Exact(g), Some(c)) => minor_for(g, &rows, &cols, &Rational(c), &fin),
        (Loaded::Exact(g), None) => minor_for(&g.map_scalars(Scalar::to_ratfunc), &rows, &cols, &x, &fin),
        (Loaded::Symbolic(g) | Loaded::Q { g, .. }, _) => minor_for(g, &rows, &cols, &x, &fin),
    }
}

fn class_json(c: &MinorClass) -> Value {
    match c {
        MinorClass::Equal => json!({ "kind": "equal" }),
        MinorClass::DeltaTwo { i0, j0, p_i0, p_j0 } => {
            json!({ "kind": "delta-two", "i0": i0, "j0": j0, "p_i0": p_i0, "p_j0": p_j0 })
        }
        MinorClass::DeltaMoreThanTwo => json!({ "kind": "delta-more-than-two" }),
        MinorClass::Inadmissible(why) => json!({ "kind": "inadmissible", "reason": why }),
    }
}

fn minor_for<S: Scalar>(
    g: &GraphDatum<S>,
    rows: &BTreeSet<usize>,
    cols: &BTreeSet<usize>,
    x: &S,
    fin: &Finish,
) -> Result<Outcome> {
    if let Some(&v) = rows.iter().chain(cols).find(|&&v| !g.contains(v)) {
        return Err(Error::VertexMissing(v));
    }
    let class = classify_minor(g, rows, cols);
    let mut results = json!({
        "datum": datum_summary(g),
        "remove_rows": rows,
        "remove_cols": cols,
        "x": fin.show(x)?,
        "classification": class_json(&class),
    });
    if let MinorClass::Inadmissible(why) = &class {
        return Ok(Outcome::with(results, code::INADMISSIBLE, Error::InadmissibleMinor(why.clone()).to_string()));
    }
    let am = build_matrices(g);
    let closed = fin.value(&minor_det(g, rows, cols, x)?)?;
    let brute = fin.value(&minor_det_direct(&am, rows, cols, x)?)?;
    let mut agree = closed == brute;
    let mut kappas = Vec::new();
    for &v0 in g.vertices().iter().filter(|v| !rows.contains(v) && !cols.contains(v)) {
        let c = fin.value(&minor_kappa(g, rows, cols, v0)?)?;
        let d = fin.value(&minor_kappa_direct(&am, rows, cols, v0)?)?;
        agree &= c == d;
        kappas.push(json!({ "v0": v0, "closed_form": c.to_string(), "brute_force": d.to_string() }));
    }
    results["closed_form"] = json!(closed.to_string());
    results["brute_force"] = json!(brute.to_string());
    results["kappa"] = json!(kappas);
    results["agree"] = json!(agree);
    Ok(if agree {
        Outcome::ok(results)
    } else {
        Outcome::with(results, code::INCONSISTENT, "closed form and brute force differ")
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum VerifyMode {
    Symbolic,
    Random,
    Both,
}

pub struct VerifyArgs<'a> {
    pub ids: &'a [String],
    pub mode: VerifyMode,
    pub shape: Option<&'a str>,
    pub trials: usize,
    pub seed: u64,
    pub max_vars: usize,
    pub mutate: bool,
}

fn identities(ids: &[String]) -> Result<Vec<Identity>> {
    if ids.is_empty() || ids.iter().any(|s| s == "all") {
        return Ok(Identity::ALL.to_vec());
    }
    ids.iter().map(|s| Identity::from_id(s).ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))).collect()
}

pub fn verify(args: &VerifyArgs<'_>) -> Result<Outcome> {
    let ids = identities(args.ids)?;
    let shape = args.shape.map(Shape::parse).transpose()?;
    let mut opts = CheckOptions { max_vars: args.max_vars, ..default_symbolic_options() };
    opts.mutate = args.mutate;
    let mut reports: Vec<TrialReport> = Vec::new();
    let mut skipped = Vec::new();
    if args.mode != VerifyMode::Random {
        let jobs: Vec<(Identity, _)> =
            ids.iter().flat_map(|&id| default_topologies(id).into_iter().map(move |t| (id, t))).collect();
        let outcomes: Vec<Result<TrialReport>> = jobs.par_iter().map(|(id, t)| symbolic_check(*id, t, &opts)).collect();
        for ((id, t), r) in jobs.iter().zip(outcomes) {
            match r {
                Ok(r) => reports.push(r),
                Err(e @ Error::TooManyVariables(..)) => {
                    skipped.push(json!({ "identity": id.id(), "shape": t.to_string(), "reason": e.to_string() }))
                }
                Err(e) => return Err(e),
            }
        }
    }
    if args.mode != VerifyMode::Symbolic {
        let random = CheckOptions { mutate: args.mutate, ..CheckOptions::default() };
        for &id in &ids {
            let s = shape.clone().unwrap_or_else(|| default_shape(id));
            reports.push(schwartz_zippel_check(id, &s, args.trials, args.seed, &random)?);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let results = json!({
        "identities": ids.iter().map(|i| json!({ "id": i.id(), "statement": i.statement() })).collect::<Vec<_>>(),
        "reports": reports,
        "skipped": skipped,
        "failed": failed,
    });
    Ok(if failed == 0 {
        Outcome::ok(results)
    } else {
        Outcome::with(results, code::IDENTITY_FAILED, format!("{failed} report(s) with failures"))
    })
}
