//! Block-cut topologies and data drawn on them, either fully symbolic or at
//! random integer points.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::builder::{build_matrices, build_q_datum, AmMatrices, QBlock};
use crate::error::{Error, Result};
use crate::graph::{validate_datum, BlockDatum, GraphDatum};
use crate::hypertree::{q_cliques, CliqueDatum};
use crate::invariants::kappa_of;
use crate::matrix::{det_and_cof, Matrix};
use crate::ring::{RatFunc, Rational, Scalar};

/// Default cap on the vertex count of random shapes.
pub const MAX_VERTICES: usize = 16;

/// Which family of data an identity is stated for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DatumKind {
    /// Arbitrary `a_e` and `D*_e`.
    General,
    /// All `a_e = 1`.
    Multiplicative,
    /// Every block a single edge.
    Tree,
    /// Every block a clique with head and tail weights.
    Hypertree,
    /// `D*_e = (q^α_ij)`, `a_e = 1/(q - 1)`.
    QGraph,
    /// Cliques with every off-diagonal `D*` entry `q` and `a_e = w_e/(q - 1)`.
    QHypertree,
    /// A circulant first block (constant row sums) with cliques attached.
    CycleClique,
}

/// Block sizes plus where each later block is glued on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Topology {
    pub sizes: Vec<usize>,
    /// For block `k ≥ 1`, the creation index of the existing vertex it shares.
    pub attach: Vec<usize>,
    /// Vertex label of each creation index.
    pub labels: Vec<usize>,
}

impl Topology {
    pub fn new(sizes: Vec<usize>, attach: Vec<usize>) -> Topology {
        let n = 1 + sizes.iter().map(|p| p - 1).sum::<usize>();
        Topology { sizes, attach, labels: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_lists(&self) -> Vec<Vec<usize>> {
        let mut next = 0;
        let mut out = Vec::with_capacity(self.sizes.len());
        for (k, &p) in self.sizes.iter().enumerate() {
            let mut vs = Vec::with_capacity(p);
            if k > 0 {
                vs.push(self.attach[k - 1]);
            }
            while vs.len() < p {
                vs.push(next);
                next += 1;
            }
            out.push(vs.into_iter().map(|i| self.labels[i]).collect());
        }
        out
    }

    /// Random sizes in the shape's range, each block glued at a uniformly
    /// chosen existing vertex, labels shuffled.
    pub fn random(rng: &mut ChaCha8Rng, shape: &Shape, kind: DatumKind) -> Topology {
        let (lo, hi) = match kind {
            DatumKind::Tree => (2, 2),
            _ => (shape.min_size, shape.max_size),
        };
        let blocks = rng.gen_range(shape.min_blocks..=shape.max_blocks);
        let mut sizes: Vec<usize> = (0..blocks).map(|_| rng.gen_range(lo..=hi)).collect();
        while 1 + sizes.iter().map(|p| p - 1).sum::<usize>() > shape.max_vertices {
            let k = rng.gen_range(0..sizes.len());
            sizes[k] = lo.max(sizes[k] - 1);
        }
        let mut count = sizes[0];
        let mut attach = Vec::with_capacity(blocks.saturating_sub(1));
        for &p in &sizes[1..] {
            attach.push(rng.gen_range(0..count));
            count += p - 1;
        }
        let mut t = Topology::new(sizes, attach);
        t.labels.shuffle(rng);
        t
    }

    fn canonical(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let plain = Topology::new(self.sizes.clone(), self.attach.clone());
        let lists: Vec<Vec<usize>> = plain.vertex_lists().into_iter().map(|b| b.into_iter().map(|v| v - 1).collect()).collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<Vec<usize>>> = None;
        loop {
            let mut form: Vec<Vec<usize>> = lists
                .iter()
                .map(|b| {
                    let mut s: Vec<usize> = b.iter().map(|&v| perm[v]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            form.sort();
            if best.as_ref().is_none_or(|b| form < *b) {
                best = Some(form);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .vertex_lists()
            .iter()
            .map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", blocks.join("} {"))
    }
}

/// Every block-cut topology with at most `max_blocks` blocks whose sizes are
/// drawn from `sizes`, one representative per isomorphism class.
pub fn small_topologies(max_blocks: usize, sizes: &[usize]) -> Vec<Topology> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    let mut stack: Vec<Topology> = sizes.iter().map(|&p| Topology::new(vec![p], vec![])).collect();
    while let Some(t) = stack.pop() {
        if seen.insert(t.canonical()) {
            if t.sizes.len() < max_blocks {
                for &p in sizes {
                    for v in 0..t.n() {
                        let mut sizes = t.sizes.clone();
                        sizes.push(p);
                        let mut attach = t.attach.clone();
                        attach.push(v);
                        stack.push(Topology::new(sizes, attach));
                    }
                }
            }
            out.push(t);
        }
    }
    out.sort_by(|a, b| (a.sizes.len(), a.n(), &a.sizes, &a.attach).cmp(&(b.sizes.len(), b.n(), &b.sizes, &b.attach)));
    out
}

/// Family of random shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub min_blocks: usize,
    pub max_blocks: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// Integer parameters are drawn from `[-bound, bound]`.
    pub bound: i64,
    pub max_vertices: usize,
}

impl Shape {
    pub fn new(max_blocks: usize, max_size: usize) -> Shape {
        Shape { min_blocks: 1, max_blocks, min_size: 2, max_size, bound: 1_000_000, max_vertices: MAX_VERTICES }
    }

    pub fn with_bound(mut self, bound: i64) -> Shape {
        self.bound = bound;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::ShapeInfeasible(why.to_string()));
        if self.min_blocks == 0 || self.min_blocks > self.max_blocks {
            return bad("block count range is empty");
        }
        if self.min_size < 2 || self.min_size > self.max_size {
            return bad("block size range must lie in [2, ∞) and be nonempty");
        }
        if self.bound < 1 {
            return bad("value bound must be positive");
        }
        if 1 + self.min_blocks * (self.min_size - 1) > self.max_vertices {
            return bad(&format!("{} blocks need more than {} vertices", self.min_blocks, self.max_vertices));
        }
        Ok(())
    }

    /// `tree:4` (four edges), `general:3` (up to three blocks of size 2 to
    /// 4), `general:3x2-3`, `fixed:5` (exactly five blocks).
    pub fn parse(s: &str) -> Result<Shape> {
        let err = || Error::Parse(format!("shape {s:?}: expected family:blocks[xmin-max]"));
        let (family, rest) = s.split_once(':').ok_or_else(err)?;
        let (blocks, sizes) = match rest.split_once('x') {
            Some((b, z)) => (b, Some(z)),
            None => (rest, None),
        };
        let blocks: usize = blocks.parse().map_err(|_| err())?;
        let (lo, hi) = match sizes {
            Some(z) => {
                let (a, b) = z.split_once('-').unwrap_or((z, z));
                (a.parse().map_err(|_| err())?, b.parse().map_err(|_| err())?)
            }
            None => (2, 4),
        };
        let mut shape = Shape { min_size: lo, max_size: hi, ..Shape::new(blocks, hi) };
        match family {
            "tree" => {
                shape.min_blocks = blocks;
                shape.min_size = 2;
                shape.max_size = 2;
            }
            "fixed" => shape.min_blocks = blocks,
            "general" => {}
            _ => return Err(err()),
        }
        shape.validate()?;
        Ok(shape)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "blocks {}..={}, sizes {}..={}, bound {}",
            self.min_blocks, self.max_blocks, self.min_size, self.max_size, self.bound
        )
    }
}

/// Where parameter values come from.
pub trait Source<S> {
    fn param(&mut self, name: &str) -> S;
    /// Nonnegative exponent for q-data.
    fn exponent(&mut self) -> i64;
    fn drawn(&self) -> usize;
}

/// A fresh indeterminate per parameter.
pub struct SymbolicSource {
    rng: ChaCha8Rng,
    drawn: usize,
}

impl SymbolicSource {
    pub fn new(rng: ChaCha8Rng) -> SymbolicSource {
        SymbolicSource { rng, drawn: 0 }
    }
}

impl Source<RatFunc> for SymbolicSource {
    fn param(&mut self, name: &str) -> RatFunc {
        self.drawn += 1;
        RatFunc::var(name)
    }

    fn exponent(&mut self) -> i64 {
        self.rng.gen_range(0..=3)
    }

    fn drawn(&self) -> usize {
        self.drawn
    }
}

/// Uniform integers in `[-bound, bound]`.
pub struct RandomSource<'a> {
    rng: &'a mut ChaCha8Rng,
    bound: i64,
    drawn: usize,
}

impl<'a> RandomSource<'a> {
    pub fn new(rng: &'a mut ChaCha8Rng, bound: i64) -> RandomSource<'a> {
        RandomSource { rng, bound, drawn: 0 }
    }
}

impl Source<Rational> for RandomSource<'_> {
    fn param(&mut self, _name: &str) -> Rational {
        self.drawn += 1;
        Rational::from(self.rng.gen_range(-self.bound..=self.bound))
    }

    fn exponent(&mut self) -> i64 {
        self.rng.gen_range(0..=3)
    }

    fn drawn(&self) -> usize {
        self.drawn
    }
}

/// Brute-force quantities, computed once per sample.
#[derive(Clone, Debug)]
pub struct Direct<S> {
    pub am: AmMatrices<S>,
    pub det: S,
    pub cof: S,
    pub kappa: S,
    pub dstar_det: S,
    pub dstar_cof: S,
}

/// A datum plus the structured data some identities are stated in.
#[derive(Debug)]
pub struct Sample<S> {
    pub kind: DatumKind,
    pub topology: Topology,
    pub datum: GraphDatum<S>,
    pub cliques: Vec<CliqueDatum<S>>,
    pub core: Vec<BlockDatum<S>>,
    pub q: Option<S>,
    /// `(p_e, w_e)` of a q-hypertree.
    pub weights: Vec<(usize, S)>,
    /// Exponent matrices of a q-datum.
    pub exponents: Vec<QBlock<i64>>,
    pub x: S,
    /// Parameters drawn from the source.
    pub params: usize,
    direct: OnceLock<Direct<S>>,
}

impl<S: Scalar> Sample<S> {
    pub fn from_datum(datum: GraphDatum<S>, x: S) -> Sample<S> {
        let sizes = datum.blocks().iter().map(BlockDatum::size).collect();
        Sample {
            kind: DatumKind::General,
            topology: Topology { sizes, attach: vec![], labels: datum.vertices().to_vec() },
            datum,
            cliques: vec![],
            core: vec![],
            q: None,
            weights: vec![],
            exponents: vec![],
            x,
            params: 0,
            direct: OnceLock::new(),
        }
    }

    pub fn direct(&self) -> Result<&Direct<S>> {
        if let Some(d) = self.direct.get() {
            return Ok(d);
        }
        let am = build_matrices(&self.datum);
        let (det, cof) = det_and_cof(&am.d)?;
        let (dstar_det, dstar_cof) = det_and_cof(&am.dstar)?;
        let kappa = kappa_of(&am, am.order[0])?;
        Ok(self.direct.get_or_init(|| Direct { am, det, cof, kappa, dstar_det, dstar_cof }))
    }
}

fn clique<S: Scalar>(src: &mut impl Source<S>, e: usize, vertices: Vec<usize>) -> CliqueDatum<S> {
    let p = vertices.len();
    CliqueDatum {
        m: (0..p).map(|i| src.param(&format!("h{e}_{i}"))).collect(),
        mp: (0..p).map(|i| src.param(&format!("t{e}_{i}"))).collect(),
        a: src.param(&format!("a{e}")),
        vertices,
    }
}

/// Draws a datum of the given kind on a topology.
pub fn build_sample<S: Scalar>(topology: &Topology, kind: DatumKind, src: &mut impl Source<S>) -> Result<Sample<S>> {
    let lists = topology.vertex_lists();
    let n = topology.n();
    let mut cliques = Vec::new();
    let mut core = Vec::new();
    let mut q = None;
    let mut weights = Vec::new();
    let mut exponents = Vec::new();
    let datum = match kind {
        DatumKind::General | DatumKind::Multiplicative | DatumKind::Tree => {
            if kind == DatumKind::Tree && lists.iter().any(|b| b.len() != 2) {
                return Err(Error::NotATree("blocks larger than an edge".into()));
            }
            let mut blocks = Vec::with_capacity(lists.len());
            for (e, vs) in lists.into_iter().enumerate() {
                let a = if kind == DatumKind::Multiplicative { S::one() } else { src.param(&format!("a{e}")) };
                let p = vs.len();
                let dstar = Matrix::from_fn(p, p, |i, j| if i == j { S::one() } else { src.param(&format!("m{e}_{i}_{j}")) });
                blocks.push(BlockDatum::new(vs, a, dstar));
            }
            validate_datum(n, blocks)?
        }
        DatumKind::Hypertree => {
            cliques = lists.into_iter().enumerate().map(|(e, vs)| clique(src, e, vs)).collect();
            validate_datum(n, cliques.iter().map(CliqueDatum::to_block).collect())?
        }
        DatumKind::QHypertree => {
            let qv = src.param("q");
            let weighted: Vec<(Vec<usize>, S)> = lists.into_iter().enumerate().map(|(e, vs)| (vs, src.param(&format!("w{e}")))).collect();
            weights = weighted.iter().map(|(vs, w)| (vs.len(), w.clone())).collect();
            cliques = q_cliques(&weighted, &qv)?;
            q = Some(qv);
            validate_datum(n, cliques.iter().map(CliqueDatum::to_block).collect())?
        }
        DatumKind::QGraph => {
            let qv = src.param("q");
            for vs in lists {
                let p = vs.len();
                let alpha = (0..p).map(|i| (0..p).map(|j| if i == j { 0 } else { src.exponent() }).collect()).collect();
                exponents.push(QBlock { vertices: vs, alpha, w: 1 });
            }
            let blocks: Vec<QBlock<S>> =
                exponents.iter().map(|b| QBlock { vertices: b.vertices.clone(), alpha: b.alpha.clone(), w: S::one() }).collect();
            let g = build_q_datum(n, &blocks, &qv)?;
            q = Some(qv);
            g
        }
        DatumKind::CycleClique => {
            let mut lists = lists.into_iter();
            let vs = lists.next().expect("at least one block");
            let p = vs.len();
            let c: Vec<S> = (1..p).map(|k| src.param(&format!("c{k}"))).collect();
            let dstar = Matrix::from_fn(p, p, |i, j| if i == j { S::one() } else { c[(j + p - i) % p - 1].clone() });
            core.push(BlockDatum::new(vs, src.param("a0"), dstar));
            cliques = lists.enumerate().map(|(e, vs)| clique(src, e + 1, vs)).collect();
            let blocks = core.iter().cloned().chain(cliques.iter().map(CliqueDatum::to_block)).collect();
            validate_datum(n, blocks)?
        }
    };
    let x = src.param("x");
    Ok(Sample {
        kind,
        topology: topology.clone(),
        datum,
        cliques,
        core,
        q,
        weights,
        exponents,
        x,
        params: src.drawn(),
        direct: OnceLock::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_topology_count() {
        let all = small_topologies(3, &[2, 3]);
        assert_eq!(all.len(), 15);
        assert_eq!(all.iter().filter(|t| t.sizes.len() == 3).count(), 10);
    }

    #[test]
    fn vertex_lists_glue() {
        let t = Topology::new(vec![3, 2, 2], vec![2, 0]);
        assert_eq!(t.vertex_lists(), vec![vec![1, 2, 3], vec![3, 4], vec![1, 5]]);
        assert_eq!(t.to_string(), "{1,2,3} {3,4} {1,5}");
    }

    #[test]
    fn random_topology_respects_shape() {
        let shape = Shape::new(5, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let t = Topology::random(&mut rng, &shape, DatumKind::General);
            assert!(t.n() <= MAX_VERTICES && (1..=5).contains(&t.sizes.len()));
            let mut labels = t.labels.clone();
            labels.sort_unstable();
            assert_eq!(labels, (1..=t.n()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn shapes_parse() {
        assert_eq!(Shape::parse("tree:4").unwrap().min_blocks, 4);
        assert_eq!(Shape::parse("general:3x2-3").unwrap().max_size, 3);
        assert!(matches!(Shape::parse("fixed:20x5-5"), Err(Error::ShapeInfeasible(_))));
        assert!(Shape::parse("blob").is_err());
    }
}
