//! Block decompositions, the block-cut tree, and minor classification.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Scalar;

/// One strong block: its vertices, additive weight `a_e` and `D*_e`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDatum<S> {
    pub id: usize,
    pub vertices: Vec<usize>,
    pub a: S,
    pub dstar: Matrix<S>,
}

impl<S: Scalar> BlockDatum<S> {
    pub fn new(vertices: Vec<usize>, a: S, dstar: Matrix<S>) -> BlockDatum<S> {
        BlockDatum { id: 0, vertices, a, dstar }
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn local(&self, v: usize) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// `m_uv` inside this block.
    pub fn m(&self, u: usize, v: usize) -> &S {
        self.dstar.get(self.local(u).expect("u in block"), self.local(v).expect("v in block"))
    }

    /// `D_e = a_e (D*_e - J)`.
    pub fn d_matrix(&self) -> Matrix<S> {
        let p = self.size();
        Matrix::from_fn(p, p, |i, j| self.a.mul(&self.dstar.get(i, j).sub(&S::one())))
            .with_labels(self.vertices.clone(), self.vertices.clone())
    }

    /// `D*_e` labelled by the block's vertices.
    pub fn dstar_labelled(&self) -> Matrix<S> {
        self.dstar.clone().with_labels(self.vertices.clone(), self.vertices.clone())
    }

    /// Restriction to the listed vertices (kept in block order).
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> BlockDatum<S> {
        let idx: Vec<usize> = (0..self.size()).filter(|&k| keep.contains(&self.vertices[k])).collect();
        BlockDatum {
            id: self.id,
            vertices: idx.iter().map(|&k| self.vertices[k]).collect(),
            a: self.a.clone(),
            dstar: self.dstar.select(&idx, &idx),
        }
    }
}

/// Bipartite incidence between blocks and the vertices they contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCutTree {
    pub block_nodes: Vec<usize>,
    pub cut_nodes: BTreeSet<usize>,
    /// Blocks containing each vertex; its length is the block degree.
    pub incident: BTreeMap<usize, Vec<usize>>,
}

impl BlockCutTree {
    pub fn block_degree(&self, v: usize) -> usize {
        self.incident.get(&v).map_or(0, Vec::len)
    }

    pub fn edge_count(&self) -> usize {
        self.cut_nodes.iter().map(|&v| self.block_degree(v)).sum()
    }
}

/// Validated block datum of a connected graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphDatum<S> {
    vertices: Vec<usize>,
    blocks: Vec<BlockDatum<S>>,
    bct: BlockCutTree,
}

/// Outcome of checking a row/column removal against the minor conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorClass {
    Equal,
    DeltaTwo { i0: usize, j0: usize, p_i0: usize, p_j0: usize },
    DeltaMoreThanTwo,
    Inadmissible(String),
}

impl MinorClass {
    pub fn is_admissible(&self) -> bool {
        !matches!(self, MinorClass::Inadmissible(_))
    }
}

/// Validates blocks on the vertex set `1..=n`.
pub fn validate_datum<S: Scalar>(n: usize, blocks: Vec<BlockDatum<S>>) -> Result<GraphDatum<S>> {
    GraphDatum::new((1..=n).collect(), blocks)
}

impl<S: Scalar> GraphDatum<S> {
    /// Validates blocks on an arbitrary vertex set.
    pub fn new(vertices: Vec<usize>, mut blocks: Vec<BlockDatum<S>>) -> Result<GraphDatum<S>> {
        let mut vertices = vertices;
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(Error::Disconnected);
        }
        let vset: BTreeSet<usize> = vertices.iter().copied().collect();
        for (k, b) in blocks.iter_mut().enumerate() {
            b.id = k;
            if b.vertices.len() < 2 {
                return Err(Error::EmptyBlock(k));
            }
            let mut seen = BTreeSet::new();
            for &v in &b.vertices {
                if !vset.contains(&v) || !seen.insert(v) {
                    return Err(Error::BadVertex(v));
                }
            }
            let p = b.vertices.len();
            if b.dstar.rows() != p || b.dstar.cols() != p {
                return Err(Error::DimensionMismatch(format!(
                    "block {k} has {p} vertices but a {}x{} D*",
                    b.dstar.rows(),
                    b.dstar.cols()
                )));
            }
            if (0..p).any(|i| !b.dstar.get(i, i).is_one()) {
                return Err(Error::DiagonalNotOne(k));
            }
            b.dstar = b.dstar.clone().with_labels(b.vertices.clone(), b.vertices.clone());
        }
        let sets: Vec<BTreeSet<usize>> =
            blocks.iter().map(|b| b.vertices.iter().copied().collect()).collect();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                if sets[i].intersection(&sets[j]).count() > 1 {
                    return Err(Error::OverlapTooLarge(i, j));
                }
            }
        }
        let mut incident: BTreeMap<usize, Vec<usize>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
        for b in &blocks {
            for &v in &b.vertices {
                incident.get_mut(&v).expect("validated vertex").push(b.id);
            }
        }
        if incident.values().any(Vec::is_empty) {
            return Err(Error::Disconnected);
        }
        let cut_nodes: BTreeSet<usize> =
            incident.iter().filter(|(_, bs)| bs.len() >= 2).map(|(&v, _)| v).collect();
        let bct = BlockCutTree { block_nodes: (0..blocks.len()).collect(), cut_nodes, incident };
        let g = GraphDatum { vertices, blocks, bct };
        if g.reachable_blocks(0, None).len() != g.blocks.len() {
            return Err(Error::Disconnected);
        }
        if g.bct.edge_count() + 1 != g.blocks.len() + g.bct.cut_nodes.len() {
            return Err(Error::CyclicBlockStructure);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex ids in ascending order; this is the row order of every matrix.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn blocks(&self) -> &[BlockDatum<S>] {
        &self.blocks
    }

    pub fn block(&self, e: usize) -> &BlockDatum<S> {
        &self.blocks[e]
    }

    pub fn bct(&self) -> &BlockCutTree {
        &self.bct
    }

    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.index_of(v).is_some()
    }

    pub fn blocks_of(&self, v: usize) -> &[usize] {
        self.bct.incident.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn is_cut(&self, v: usize) -> bool {
        self.bct.cut_nodes.contains(&v)
    }

    /// The unique block containing both vertices, if any.
    pub fn common_block(&self, u: usize, v: usize) -> Option<usize> {
        self.blocks_of(u).iter().copied().find(|&e| self.blocks[e].local(v).is_some())
    }

    /// Vertices sharing a block with `v`.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &e in self.blocks_of(v) {
            out.extend(self.blocks[e].vertices.iter().copied().filter(|&w| w != v));
        }
        out
    }

    /// Blocks reachable from block `start` without passing through `avoid`.
    fn reachable_blocks(&self, start: usize, avoid: Option<usize>) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(e) = queue.pop_front() {
            for &v in &self.blocks[e].vertices {
                if Some(v) == avoid {
                    continue;
                }
                for &f in self.blocks_of(v) {
                    if seen.insert(f) {
                        queue.push_back(f);
                    }
                }
            }
        }
        seen
    }

    /// Same datum with every scalar mapped through `f`.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GraphDatum<T> {
        GraphDatum {
            vertices: self.vertices.clone(),
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockDatum {
                    id: b.id,
                    vertices: b.vertices.clone(),
                    a: f(&b.a),
                    dstar: b.dstar.map(&f),
                })
                .collect(),
            bct: self.bct.clone(),
        }
    }

    pub fn try_map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<GraphDatum<T>> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            blocks.push(BlockDatum { id: b.id, vertices: b.vertices.clone(), a: f(&b.a)?, dstar: b.dstar.try_map(&f)? });
        }
        Ok(GraphDatum { vertices: self.vertices.clone(), blocks, bct: self.bct.clone() })
    }
}

/// Vertex and block sets of `G_{i→e}`: the part of the graph hanging off
/// vertex `i` through block `e`, including `i` itself.
pub fn subgraph_i_to_e<S: Scalar>(
    g: &GraphDatum<S>,
    i: usize,
    e: usize,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    if e >= g.blocks.len() || g.blocks[e].local(i).is_none() {
        return Err(Error::VertexNotInBlock(i, e));
    }
    let blocks = if g.is_cut(i) {
        g.reachable_blocks(e, Some(i))
    } else {
        (0..g.blocks.len()).collect()
    };
    let vertices = blocks.iter().flat_map(|&f| g.blocks[f].vertices.iter().copied()).collect();
    Ok((vertices, blocks))
}

/// Induced datum on `keep`: blocks are cut down to their surviving vertices
/// and dropped once fewer than two remain.
pub fn restrict_datum<S: Scalar>(g: &GraphDatum<S>, keep: &BTreeSet<usize>) -> Result<GraphDatum<S>> {
    if let Some(&v) = keep.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::VertexMissing(v));
    }
    if keep.len() == g.n() {
        return Ok(g.clone());
    }
    let blocks: Vec<BlockDatum<S>> = g
        .blocks
        .iter()
        .map(|b| b.restrict(keep))
        .filter(|b| b.size() >= 2)
        .collect();
    if keep.len() == 1 {
        return Err(Error::InvalidRestriction("a single vertex carries no block".into()));
    }
    GraphDatum::new(keep.iter().copied().collect(), blocks).map_err(|e| Error::InvalidRestriction(e.to_string()))
}

/// Vertices outside `set` adjacent to the component of `v` in the subgraph
/// induced on `set`.
fn exits<S: Scalar>(g: &GraphDatum<S>, set: &BTreeSet<usize>, v: usize) -> BTreeSet<usize> {
    let mut comp = BTreeSet::from([v]);
    let mut queue = VecDeque::from([v]);
    let mut out = BTreeSet::new();
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if set.contains(&w) {
                if comp.insert(w) {
                    queue.push_back(w);
                }
            } else {
                out.insert(w);
            }
        }
    }
    out
}

/// Checks the minor conditions for deleting rows `I` and columns `J`:
/// (a) equal sizes at most `|V| - 3`;
/// (b) each vertex of `I∖J` reaches `V∖I` through a single cut vertex
///     outside `I ∪ J`, and symmetrically for `J∖I`;
/// (c) the structures induced on `V∖I`, `V∖J` and `V∖(I∩J)` are connected.
pub fn classify_minor<S: Scalar>(g: &GraphDatum<S>, rows: &BTreeSet<usize>, cols: &BTreeSet<usize>) -> MinorClass {
    let bad = |s: String| MinorClass::Inadmissible(s);
    if let Some(v) = rows.iter().chain(cols).find(|&&v| !g.contains(v)) {
        return bad(format!("vertex {v} is not in the graph"));
    }
    if rows.len() != cols.len() {
        return bad(format!("|I| = {} differs from |J| = {}", rows.len(), cols.len()));
    }
    if rows.is_empty() {
        return MinorClass::Equal;
    }
    if rows.len() + 3 > g.n() {
        return bad(format!("|I| = {} exceeds |V| - 3 = {}", rows.len(), g.n() as isize - 3));
    }
    let union: BTreeSet<usize> = rows.union(cols).copied().collect();
    for (from, other) in [(rows, cols), (cols, rows)] {
        for &v in from.difference(other) {
            let out = exits(g, from, v);
            if out.len() != 1 {
                return bad(format!("vertex {v} leaves its removed set through {} vertices", out.len()));
            }
            let c = *out.iter().next().expect("one exit");
            if union.contains(&c) || !g.is_cut(c) {
                return bad(format!("exit {c} of vertex {v} is not a cut vertex outside I ∪ J"));
            }
        }
    }
    let all: BTreeSet<usize> = g.vertices.iter().copied().collect();
    let common: BTreeSet<usize> = rows.intersection(cols).copied().collect();
    for removed in [rows, cols, &common] {
        let keep: BTreeSet<usize> = all.difference(removed).copied().collect();
        if restrict_datum(g, &keep).is_err() {
            return bad(format!("structure without {removed:?} is not connected"));
        }
    }
    let delta: Vec<usize> = rows.symmetric_difference(cols).copied().collect();
    match delta.len() {
        0 => MinorClass::Equal,
        2 => {
            let i0 = *rows.difference(cols).next().expect("one row vertex");
            let j0 = *cols.difference(rows).next().expect("one column vertex");
            let keep: BTreeSet<usize> = all.difference(&common).copied().collect();
            let sub = restrict_datum(g, &keep).expect("checked above");
            let (ni, nj) = (sub.neighbors(i0), sub.neighbors(j0));
            if ni.len() != 1 || nj.len() != 1 {
                return bad("removed vertices are not pendant in the reduced graph".into());
            }
            MinorClass::DeltaTwo {
                i0,
                j0,
                p_i0: *ni.iter().next().expect("one neighbor"),
                p_j0: *nj.iter().next().expect("one neighbor"),
            }
        }
        _ => MinorClass::DeltaMoreThanTwo,
    }
}

/// One undirected edge `{u, v}` with additive weight and both multiplicative
/// weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge<S> {
    pub u: usize,
    pub v: usize,
    pub a: S,
    pub m_uv: S,
    pub m_vu: S,
}

/// Biconnected components of an edge list, each turned into a block.
///
/// Components of more than two vertices must be complete so that every
/// off-diagonal entry of `D*_e` is determined.
pub fn blocks_from_edges<S: Scalar>(n: usize, edges: &[Edge<S>]) -> Result<Vec<BlockDatum<S>>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    let mut pairs = BTreeMap::new();
    for (k, e) in edges.iter().enumerate() {
        if e.u == e.v || e.u == 0 || e.v == 0 || e.u > n || e.v > n {
            return Err(Error::BadVertex(if e.u == 0 || e.u > n { e.u } else { e.v }));
        }
        if pairs.insert((e.u.min(e.v), e.u.max(e.v)), k).is_some() {
            return Err(Error::BadVertex(e.v));
        }
        adj[e.u].push((e.v, k));
        adj[e.v].push((e.u, k));
    }
    let comps = biconnected_components(n, &adj, edges.len());
    let mut blocks = Vec::new();
    for comp in comps {
        let verts: BTreeSet<usize> = comp.iter().flat_map(|&k| [edges[k].u, edges[k].v]).collect();
        let verts: Vec<usize> = verts.into_iter().collect();
        let p = verts.len();
        if comp.len() != p * (p - 1) / 2 {
            return Err(Error::IncompleteBlockMatrix(verts));
        }
        let a = edges[comp[0]].a.clone();
        if comp.iter().any(|&k| edges[k].a != a) {
            return Err(Error::InconsistentAdditiveWeight(verts));
        }
        let mut dstar = Matrix::identity(p);
        for &k in &comp {
            let e = &edges[k];
            let iu = verts.iter().position(|&w| w == e.u).expect("endpoint");
            let iv = verts.iter().position(|&w| w == e.v).expect("endpoint");
            dstar.set(iu, iv, e.m_uv.clone());
            dstar.set(iv, iu, e.m_vu.clone());
        }
        blocks.push(BlockDatum::new(verts, a, dstar));
    }
    blocks.sort_by(|x, y| x.vertices.cmp(&y.vertices));
    Ok(blocks)
}

/// Edge sets of the biconnected components (Hopcroft-Tarjan).
fn biconnected_components(n: usize, adj: &[Vec<(usize, usize)>], m: usize) -> Vec<Vec<usize>> {
    struct St<'a> {
        adj: &'a [Vec<(usize, usize)>],
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<usize>,
        used: Vec<bool>,
        out: Vec<Vec<usize>>,
    }
    fn dfs(s: &mut St, u: usize, parent_edge: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for idx in 0..s.adj[u].len() {
            let (w, k) = s.adj[u][idx];
            if Some(k) == parent_edge {
                continue;
            }
            if s.disc[w] == 0 {
                s.stack.push(k);
                s.used[k] = true;
                dfs(s, w, Some(k));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut comp = Vec::new();
                    while let Some(top) = s.stack.pop() {
                        comp.push(top);
                        if top == k {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    s.out.push(comp);
                }
            } else if s.disc[w] < s.disc[u] && !s.used[k] {
                s.stack.push(k);
                s.used[k] = true;
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let mut s = St {
        adj,
        disc: vec![0; n + 1],
        low: vec![0; n + 1],
        time: 0,
        stack: Vec::new(),
        used: vec![false; m],
        out: Vec::new(),
    };
    for u in 1..=n {
        if s.disc[u] == 0 {
            dfs(&mut s, u, None);
        }
    }
    s.out
}
