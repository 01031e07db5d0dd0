//! Executable checks of the closed forms: fully symbolic at small sizes,
//! at random integer points (Schwartz-Zippel) at larger ones, and against
//! brute-force oracles on a given datum.

mod catalogue;
mod sample;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use catalogue::{admissible_minors, evaluate, Identity, Limits};
pub use sample::{
    build_sample, small_topologies, DatumKind, Direct, RandomSource, Sample, Shape, Source, SymbolicSource, Topology,
    MAX_VERTICES,
};

use crate::datafile::{DatumFile, RingKind};
use crate::error::{Error, Result};
use crate::graph::GraphDatum;
use crate::hypertree::CliqueDatum;
use crate::ring::{RatFunc, Rational, Scalar};

/// Default cap on indeterminates in a symbolic check.
pub const MAX_SYMBOLIC_VARS: usize = 24;
/// Redraws allowed per trial before giving up on a shape.
pub const MAX_REJECTIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Symbolic,
    SchwartzZippel,
    Oracle,
}

/// One disagreement, with enough to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: usize,
    pub identity: String,
    /// Index of the failing equality within the identity's list.
    pub pair: usize,
    pub lhs: String,
    pub rhs: String,
    pub x: String,
    pub datum: DatumFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub identity: String,
    pub mode: Mode,
    pub shape: String,
    pub seed: Option<u64>,
    pub trials: usize,
    /// Equalities compared across all trials.
    pub checks: usize,
    pub rejections: usize,
    pub rejected_loci: Vec<String>,
    pub mutated: bool,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl TrialReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Perturb the first right-hand side by `a_{e0}`.
    pub mutate: bool,
    pub max_vars: usize,
    pub limits: Limits,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mutate: false, max_vars: MAX_SYMBOLIC_VARS, limits: Limits { minor_size: 2 } }
    }
}

impl CheckOptions {
    pub fn mutated(mut self) -> Self {
        self.mutate = true;
        self
    }
}

fn is_degenerate(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularBlock(_)
            | Error::SingularDistanceMatrix
            | Error::NonInvertibleWeight(_)
            | Error::DenominatorVanishes
            | Error::SingularUpdate
            | Error::SingularMatrix
    )
}

enum Outcome {
    Pass(usize),
    Fail(Failure),
    Degenerate(String),
}

fn run<S: Scalar>(id: Identity, s: &Sample<S>, opts: &CheckOptions, trial: usize, ring: RingKind) -> Result<Outcome> {
    let failure = |pair: usize, lhs: String, rhs: String| Failure {
        trial,
        identity: id.id().to_string(),
        pair,
        lhs,
        rhs,
        x: s.x.to_string(),
        datum: DatumFile::from_datum(&s.datum, ring),
    };
    let mut pairs = match evaluate(id, s, opts.limits) {
        Ok(p) => p,
        Err(e) if is_degenerate(&e) => return Ok(Outcome::Degenerate(e.to_string())),
        Err(e @ Error::Inconsistent(_)) => return Ok(Outcome::Fail(failure(0, e.to_string(), String::new()))),
        Err(e) => return Err(e),
    };
    if opts.mutate {
        if let Some(first) = pairs.first_mut() {
            first.1 = first.1.add(&s.datum.blocks()[0].a);
        }
    }
    Ok(match pairs.iter().position(|(l, r)| l != r) {
        Some(k) => Outcome::Fail(failure(k, pairs[k].0.to_string(), pairs[k].1.to_string())),
        None => Outcome::Pass(pairs.len()),
    })
}

fn report(id: &str, mode: Mode, shape: String, seed: Option<u64>, opts: &CheckOptions) -> TrialReport {
    TrialReport {
        identity: id.to_string(),
        mode,
        shape,
        seed,
        trials: 0,
        checks: 0,
        rejections: 0,
        rejected_loci: vec![],
        mutated: opts.mutate,
        failures: vec![],
        elapsed: Duration::ZERO,
    }
}

fn symbolic_sample(id: Identity, topology: &Topology, max_vars: usize) -> Result<Sample<RatFunc>> {
    let mut src = SymbolicSource::new(ChaCha8Rng::seed_from_u64(0));
    let s = build_sample(topology, id.kind(), &mut src)?;
    if s.params > max_vars {
        return Err(Error::TooManyVariables(s.params, max_vars));
    }
    Ok(s)
}

fn record_symbolic(r: &mut TrialReport, outcome: Outcome, s: &Sample<RatFunc>, id: Identity) {
    r.trials = 1;
    match outcome {
        Outcome::Pass(k) => r.checks = k,
        Outcome::Fail(f) => {
            r.checks = f.pair + 1;
            r.failures.push(f);
        }
        Outcome::Degenerate(why) => r.failures.push(Failure {
            trial: 0,
            identity: id.id().to_string(),
            pair: 0,
            lhs: format!("degenerate symbolic datum: {why}"),
            rhs: String::new(),
            x: s.x.to_string(),
            datum: DatumFile::from_datum(&s.datum, RingKind::Symbolic),
        }),
    }
}

/// Both sides as rational functions in one indeterminate per parameter.
pub fn symbolic_check(id: Identity, topology: &Topology, opts: &CheckOptions) -> Result<TrialReport> {
    let start = Instant::now();
    let s = symbolic_sample(id, topology, opts.max_vars)?;
    let mut r = report(id.id(), Mode::Symbolic, topology.to_string(), None, opts);
    let outcome = run(id, &s, opts, 0, RingKind::Symbolic)?;
    record_symbolic(&mut r, outcome, &s, id);
    r.elapsed = start.elapsed();
    Ok(r)
}

/// [`symbolic_check`] for several identities on several topologies, sharing
/// one symbolic sample per topology and data family.
pub fn symbolic_suite(ids: &[Identity], topologies: &[Topology], opts: &CheckOptions) -> Result<Vec<TrialReport>> {
    let per_topology: Vec<Vec<TrialReport>> = topologies
        .par_iter()
        .map(|t| {
            let mut samples: Vec<(DatumKind, Sample<RatFunc>)> = Vec::new();
            let mut out = Vec::with_capacity(ids.len());
            for &id in ids {
                let start = Instant::now();
                if !samples.iter().any(|(k, _)| *k == id.kind()) {
                    samples.push((id.kind(), symbolic_sample(id, t, opts.max_vars)?));
                }
                let s = &samples.iter().find(|(k, _)| *k == id.kind()).expect("just built").1;
                let mut r = report(id.id(), Mode::Symbolic, t.to_string(), None, opts);
                let outcome = run(id, s, opts, 0, RingKind::Symbolic)?;
                record_symbolic(&mut r, outcome, s, id);
                r.elapsed = start.elapsed();
                out.push(r);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (k, _) in ids.iter().enumerate() {
        out.extend(per_topology.iter().map(|rs| rs[k].clone()));
    }
    Ok(out)
}

/// The symbolic shapes each identity is checked on by default.
pub fn default_topologies(id: Identity) -> Vec<Topology> {
    let t = |sizes: &[usize], attach: &[usize]| Topology::new(sizes.to_vec(), attach.to_vec());
    match id {
        _ if Identity::MASTER.contains(&id) => small_topologies(3, &[2, 3]),
        Identity::GhhMultiplicative | Identity::GhhQ | Identity::GhhClassical => {
            vec![t(&[3, 2], &[2]), t(&[2, 3, 2], &[1, 3])]
        }
        Identity::TreeMaster => vec![t(&[2, 2, 2], &[0, 0]), t(&[2, 2, 2], &[1, 2])],
        Identity::MinorDet | Identity::MinorKappa => vec![t(&[2, 2, 2], &[1, 2]), t(&[3, 2], &[1])],
        Identity::BorderedKappa => vec![t(&[3, 2], &[2])],
        Identity::InverseClosedForm | Identity::TauSums | Identity::CColumnSums | Identity::LaplacianRelation => {
            vec![t(&[2], &[]), t(&[3, 2], &[1])]
        }
        Identity::CliqueDetCof => vec![t(&[2], &[]), t(&[3], &[])],
        Identity::HypertreeInvariants => vec![t(&[3, 3], &[2])],
        Identity::HypertreeInverse => vec![t(&[3, 2], &[0])],
        Identity::HypertreeQ => vec![t(&[3, 2, 3], &[1, 3])],
        Identity::PendantCliques => vec![t(&[4, 2], &[3]), t(&[3, 3], &[0])],
        _ => unreachable!("every identity has a plan"),
    }
}

/// Random shape used when none is given: up to three blocks of size up to
/// three, or four for the clique-on-cycle family, which needs room for both.
pub fn default_shape(id: Identity) -> Shape {
    match id {
        Identity::PendantCliques => Shape::new(3, 4),
        _ => Shape::new(3, 3),
    }
}

/// Options used by the default symbolic plan: minors up to size one keep the
/// symbolic determinants small.
pub fn default_symbolic_options() -> CheckOptions {
    CheckOptions { limits: Limits { minor_size: 1 }, ..CheckOptions::default() }
}

/// Deterministic random rational datum.
pub fn random_datum(seed: u64, shape: &Shape) -> Result<GraphDatum<Rational>> {
    shape.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_REJECTIONS {
        let topology = Topology::random(&mut rng, shape, DatumKind::General);
        let mut src = RandomSource::new(&mut rng, shape.bound);
        match build_sample(&topology, DatumKind::General, &mut src) {
            Ok(s) => return Ok(s.datum),
            Err(e) if is_degenerate(&e) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::TooManyRejections(MAX_REJECTIONS))
}

/// Trial `t` of a seeded run: a fresh random shape and point, redrawn while
/// a required denominator vanishes.
fn sz_trial(
    id: Identity,
    shape: &Shape,
    fixed: Option<&Topology>,
    seed: u64,
    t: usize,
    opts: &CheckOptions,
) -> Result<(Outcome, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    let mut rejections = 0;
    while rejections < MAX_REJECTIONS {
        let topology = match fixed {
            Some(t) => t.clone(),
            None => Topology::random(&mut rng, shape, id.kind()),
        };
        let mut src = RandomSource::new(&mut rng, shape.bound);
        let s = match build_sample(&topology, id.kind(), &mut src) {
            Ok(s) => s,
            Err(e) if is_degenerate(&e) => {
                rejections += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        match run(id, &s, opts, t, RingKind::Rational)? {
            Outcome::Degenerate(_) => rejections += 1,
            done => return Ok((done, rejections)),
        }
    }
    Err(Error::TooManyRejections(MAX_REJECTIONS))
}

/// Both sides at `trials` random integer points in `[-bound, bound]`.
pub fn schwartz_zippel_check(
    id: Identity,
    shape: &Shape,
    trials: usize,
    seed: u64,
    opts: &CheckOptions,
) -> Result<TrialReport> {
    shape.validate()?;
    sz_run(id, shape, None, trials, seed, opts)
}

/// [`schwartz_zippel_check`] on one fixed topology, with entries in
/// `[-bound, bound]`.
pub fn schwartz_zippel_on(
    id: Identity,
    topology: &Topology,
    bound: i64,
    trials: usize,
    seed: u64,
    opts: &CheckOptions,
) -> Result<TrialReport> {
    let shape = Shape::new(topology.sizes.len(), topology.sizes.iter().copied().max().unwrap_or(2)).with_bound(bound);
    sz_run(id, &shape, Some(topology), trials, seed, opts)
}

fn sz_run(
    id: Identity,
    shape: &Shape,
    fixed: Option<&Topology>,
    trials: usize,
    seed: u64,
    opts: &CheckOptions,
) -> Result<TrialReport> {
    if trials == 0 {
        return Err(Error::ShapeInfeasible("at least one trial is required".into()));
    }
    let start = Instant::now();
    let outcomes: Vec<(Outcome, usize)> =
        (0..trials).into_par_iter().map(|t| sz_trial(id, shape, fixed, seed, t, opts)).collect::<Result<_>>()?;
    let label = fixed.map_or_else(|| shape.to_string(), ToString::to_string);
    let mut r = report(id.id(), Mode::SchwartzZippel, label, Some(seed), opts);
    r.trials = trials;
    r.rejected_loci = id.denominators().iter().map(ToString::to_string).collect();
    for (o, rej) in outcomes {
        r.rejections += rej;
        match o {
            Outcome::Pass(k) => r.checks += k,
            Outcome::Fail(f) => {
                r.checks += f.pair + 1;
                r.failures.push(f);
            }
            Outcome::Degenerate(_) => unreachable!("degenerate draws are redrawn"),
        }
    }
    r.elapsed = start.elapsed();
    Ok(r)
}

/// Every closed form that applies to `g`, against its brute-force oracle.
/// Identities whose invertibility assumptions fail on `g` are listed in
/// `rejected_loci` rather than counted as failures.
pub fn oracle_suite<S: Scalar>(g: &GraphDatum<S>) -> TrialReport {
    let start = Instant::now();
    let opts = CheckOptions::default();
    let mut sample = Sample::from_datum(g.clone(), S::from_i64(3));
    let mut ids: Vec<Identity> = Identity::ALL.into_iter().filter(|i| i.kind() == DatumKind::General).collect();
    if g.blocks().iter().all(|b| b.size() == 2) {
        ids.push(Identity::TreeMaster);
    }
    if g.blocks().iter().all(|b| b.a.is_one()) {
        ids.push(Identity::GhhMultiplicative);
    }
    if let Some(cs) = g.blocks().iter().map(CliqueDatum::from_block).collect::<Option<Vec<_>>>() {
        sample.cliques = cs;
        ids.extend([Identity::CliqueDetCof, Identity::HypertreeInvariants, Identity::HypertreeInverse]);
    }
    let mut r = report("oracle-suite", Mode::Oracle, format!("{} vertices, {} blocks", g.n(), g.blocks().len()), None, &opts);
    r.trials = 1;
    let ring = if g.blocks().iter().all(|b| b.a.variables().is_empty() && b.dstar.entries().iter().all(|x| x.variables().is_empty())) {
        RingKind::Rational
    } else {
        RingKind::Symbolic
    };
    for id in ids {
        match run(id, &sample, &opts, 0, ring) {
            Ok(Outcome::Pass(k)) => r.checks += k,
            Ok(Outcome::Fail(f)) => r.failures.push(f),
            Ok(Outcome::Degenerate(why)) => {
                r.rejections += 1;
                r.rejected_loci.push(format!("{}: {why}", id.id()));
            }
            Err(e) => r.failures.push(Failure {
                trial: 0,
                identity: id.id().to_string(),
                pair: 0,
                lhs: format!("error: {e}"),
                rhs: String::new(),
                x: sample.x.to_string(),
                datum: DatumFile::from_datum(g, ring),
            }),
        }
    }
    r.elapsed = start.elapsed();
    r
}
