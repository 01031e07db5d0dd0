//! JSON datum format shared by the command line tool and the verifier's
//! failure witnesses.

use serde::{Deserialize, Serialize};

use crate::builder::{build_q_datum, QBlock};
use crate::error::{Error, Result};
use crate::graph::{validate_datum, BlockDatum, GraphDatum};
use crate::matrix::Matrix;
use crate::ring::{RatFunc, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Rational,
    Symbolic,
    Q,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockBody {
    /// Row-major multiplicative block matrix.
    Dstar(Vec<Vec<String>>),
    Clique { m: Vec<String>, mp: Vec<String> },
    Edge { m: String, mp: String },
    Q { alpha: Vec<Vec<i64>>, w: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(flatten)]
    pub body: BlockBody,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Options {
    /// Value substituted for `q` in a q-datum; `"1"` means the classical limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatumFile {
    pub n: usize,
    pub ring: RingKind,
    pub blocks: Vec<BlockSpec>,
    #[serde(default)]
    pub options: Options,
}

fn parse_matrix<S: Scalar>(rows: &[Vec<String>]) -> Result<Matrix<S>> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| S::parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?)
}

impl DatumFile {
    /// Datum over any scalar ring; every block must carry its own `a`.
    pub fn to_datum<S: Scalar>(&self) -> Result<GraphDatum<S>> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (k, b) in self.blocks.iter().enumerate() {
            let a = S::parse(b.a.as_deref().ok_or_else(|| Error::Parse(format!("block {k} has no additive weight a")))?)?;
            let dstar = match &b.body {
                BlockBody::Dstar(rows) => parse_matrix(rows)?,
                BlockBody::Clique { m, mp } => {
                    let p = b.vertices.len();
                    if m.len() != p || mp.len() != p {
                        return Err(Error::DimensionMismatch(format!("block {k}: clique weights do not match {p} vertices")));
                    }
                    let m: Vec<S> = m.iter().map(|s| S::parse(s)).collect::<Result<_>>()?;
                    let mp: Vec<S> = mp.iter().map(|s| S::parse(s)).collect::<Result<_>>()?;
                    Matrix::from_fn(p, p, |i, j| if i == j { S::one() } else { m[i].mul(&mp[j]) })
                }
                BlockBody::Edge { m, mp } => {
                    if b.vertices.len() != 2 {
                        return Err(Error::DimensionMismatch(format!("block {k}: an edge has two vertices")));
                    }
                    Matrix::from_rows(vec![vec![S::one(), S::parse(m)?], vec![S::parse(mp)?, S::one()]])?
                }
                BlockBody::Q { .. } => return Err(Error::Parse(format!("block {k}: q blocks need ring \"q\""))),
            };
            blocks.push(BlockDatum::new(b.vertices.clone(), a, dstar));
        }
        validate_datum(self.n, blocks)
    }

    fn q_blocks<S: Scalar>(&self) -> Result<Vec<QBlock<S>>> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(k, b)| match &b.body {
                BlockBody::Q { alpha, w } => Ok(QBlock { vertices: b.vertices.clone(), alpha: alpha.clone(), w: S::parse(w)? }),
                _ => Err(Error::Parse(format!("block {k}: ring \"q\" takes only q blocks"))),
            })
            .collect()
    }

    /// q-datum over the indeterminate `q`.
    pub fn to_q_datum(&self) -> Result<GraphDatum<RatFunc>> {
        build_q_datum(self.n, &self.q_blocks()?, &RatFunc::var("q"))
    }

    /// q-datum at a rational `q ≠ 1`.
    pub fn to_q_datum_at(&self, q: &Rational) -> Result<GraphDatum<Rational>> {
        build_q_datum(self.n, &self.q_blocks()?, q)
    }

    /// Explicit-matrix form of a datum, for reproduction.
    pub fn from_datum<S: Scalar>(g: &GraphDatum<S>, ring: RingKind) -> DatumFile {
        let blocks = g
            .blocks()
            .iter()
            .map(|b| BlockSpec {
                vertices: b.vertices.clone(),
                a: Some(b.a.to_string()),
                body: BlockBody::Dstar(b.dstar.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()),
            })
            .collect();
        DatumFile { n: g.n(), ring, blocks, options: Options::default() }
    }
}
