//! Isotropic functional bases and tensor generators for lists of vectors,
//! symmetric tensors and skew tensors in 2D.

use std::fmt;

use serde::Serialize;

use crate::tensor2d::{outer, Mat2, SkewTensor2, SymTensor2, Transformable, Vector2, OrthTransform};
use crate::{Error, Result};

/// Arguments `(v_1..v_M, A_1..A_N, W_1..W_P)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArgumentList {
    pub vectors: Vec<Vector2>,
    pub syms: Vec<SymTensor2>,
    pub skews: Vec<SkewTensor2>,
}

impl ArgumentList {
    pub fn new(vectors: Vec<Vector2>, syms: Vec<SymTensor2>, skews: Vec<SkewTensor2>) -> Self {
        Self { vectors, syms, skews }
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vectors.len(), self.syms.len(), self.skews.len())
    }

    pub fn transformed(&self, q: &OrthTransform) -> ArgumentList {
        ArgumentList {
            vectors: self.vectors.iter().map(|v| v.transformed(q)).collect(),
            syms: self.syms.iter().map(|a| a.transformed(q)).collect(),
            skews: self.skews.iter().map(|w| w.transformed(q)).collect(),
        }
    }

    fn v(&self, m: usize) -> Result<Vector2> {
        self.vectors.get(m).copied().ok_or(Error::IndexOutOfRange {
            what: "vector",
            index: m,
            len: self.vectors.len(),
        })
    }

    fn a(&self, i: usize) -> Result<Mat2> {
        self.syms.get(i).map(|s| s.to_mat()).ok_or(Error::IndexOutOfRange {
            what: "symmetric tensor",
            index: i,
            len: self.syms.len(),
        })
    }

    fn w(&self, p: usize) -> Result<Mat2> {
        self.skews.get(p).map(|s| s.to_mat()).ok_or(Error::IndexOutOfRange {
            what: "skew tensor",
            index: p,
            len: self.skews.len(),
        })
    }
}

/// Scalar invariant forms; indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum InvariantDescriptor {
    TrA { i: usize },
    TrASq { i: usize },
    TrAA { i: usize, j: usize },
    VDotV { m: usize },
    VDotVPair { m: usize, n: usize },
    TrWSq { p: usize },
    TrWW { p: usize, q: usize },
    VAV { m: usize, i: usize },
    VAVPair { m: usize, i: usize, n: usize },
    VWV { m: usize, p: usize, n: usize },
    TrAAW { i: usize, j: usize, p: usize },
    AVWV { i: usize, m: usize, p: usize },
}

/// Symmetric tensor generator forms; indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum GeneratorDescriptor {
    Identity,
    A { i: usize },
    VV { m: usize },
    VVPair { m: usize, n: usize },
    VWV { m: usize, p: usize },
    AWComm { i: usize, p: usize },
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// Enumerates the functional basis in table-row order, then lexicographic
/// order of the indices as they appear in each form.
pub fn functional_basis(m_count: usize, n_count: usize, p_count: usize) -> Vec<InvariantDescriptor> {
    use InvariantDescriptor::*;
    let mut out = Vec::new();
    for i in 0..n_count {
        out.push(TrA { i });
        out.push(TrASq { i });
    }
    out.extend(pairs(n_count).map(|(i, j)| TrAA { i, j }));
    out.extend((0..m_count).map(|m| VDotV { m }));
    out.extend(pairs(m_count).map(|(m, n)| VDotVPair { m, n }));
    out.extend((0..p_count).map(|p| TrWSq { p }));
    out.extend(pairs(p_count).map(|(p, q)| TrWW { p, q }));
    for m in 0..m_count {
        out.extend((0..n_count).map(|i| VAV { m, i }));
    }
    for (m, n) in pairs(m_count) {
        out.extend((0..n_count).map(|i| VAVPair { m, i, n }));
    }
    for (m, n) in pairs(m_count) {
        out.extend((0..p_count).map(|p| VWV { m, p, n }));
    }
    for (i, j) in pairs(n_count) {
        out.extend((0..p_count).map(|p| TrAAW { i, j, p }));
    }
    for i in 0..n_count {
        for m in 0..m_count {
            out.extend((0..p_count).map(|p| AVWV { i, m, p }));
        }
    }
    out
}

/// Enumerates the tensor generators, `I` first.
pub fn generator_set(m_count: usize, n_count: usize, p_count: usize) -> Vec<GeneratorDescriptor> {
    use GeneratorDescriptor::*;
    let mut out = vec![Identity];
    out.extend((0..n_count).map(|i| A { i }));
    out.extend((0..m_count).map(|m| VV { m }));
    out.extend(pairs(m_count).map(|(m, n)| VVPair { m, n }));
    for m in 0..m_count {
        out.extend((0..p_count).map(|p| VWV { m, p }));
    }
    for i in 0..n_count {
        out.extend((0..p_count).map(|p| AWComm { i, p }));
    }
    out
}

impl InvariantDescriptor {
    pub fn evaluate(&self, args: &ArgumentList) -> Result<f64> {
        use InvariantDescriptor::*;
        Ok(match *self {
            TrA { i } => args.a(i)?.trace(),
            TrASq { i } => {
                let a = args.a(i)?;
                (a * a).trace()
            }
            TrAA { i, j } => (args.a(i)? * args.a(j)?).trace(),
            VDotV { m } => args.v(m)?.dot(&args.v(m)?),
            VDotVPair { m, n } => args.v(m)?.dot(&args.v(n)?),
            TrWSq { p } => {
                let w = args.w(p)?;
                (w * w).trace()
            }
            TrWW { p, q } => (args.w(p)? * args.w(q)?).trace(),
            VAV { m, i } => args.v(m)?.dot(&args.a(i)?.apply(&args.v(m)?)),
            VAVPair { m, i, n } => args.v(m)?.dot(&args.a(i)?.apply(&args.v(n)?)),
            VWV { m, p, n } => args.v(m)?.dot(&args.w(p)?.apply(&args.v(n)?)),
            TrAAW { i, j, p } => (args.a(i)? * args.a(j)? * args.w(p)?).trace(),
            AVWV { i, m, p } => {
                let v = args.v(m)?;
                args.a(i)?.apply(&v).dot(&args.w(p)?.apply(&v))
            }
        })
    }
}

impl GeneratorDescriptor {
    pub fn evaluate(&self, args: &ArgumentList) -> Result<SymTensor2> {
        use GeneratorDescriptor::*;
        Ok(match *self {
            Identity => SymTensor2::IDENTITY,
            A { i } => args.a(i)?.sym_part(),
            VV { m } => {
                let v = args.v(m)?;
                outer(&v, &v).sym_part()
            }
            VVPair { m, n } => {
                let (a, b) = (args.v(m)?, args.v(n)?);
                (outer(&a, &b) + outer(&b, &a)).sym_part()
            }
            VWV { m, p } => {
                let v = args.v(m)?;
                let wv = args.w(p)?.apply(&v);
                (outer(&v, &wv) + outer(&wv, &v)).sym_part()
            }
            AWComm { i, p } => {
                let (a, w) = (args.a(i)?, args.w(p)?);
                (a * w - w * a).sym_part()
            }
        })
    }
}

pub fn evaluate_invariants(descs: &[InvariantDescriptor], args: &ArgumentList) -> Result<Vec<f64>> {
    descs.iter().map(|d| d.evaluate(args)).collect()
}

pub fn evaluate_generators(descs: &[GeneratorDescriptor], args: &ArgumentList) -> Result<Vec<SymTensor2>> {
    descs.iter().map(|d| d.evaluate(args)).collect()
}

impl fmt::Display for InvariantDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InvariantDescriptor::*;
        match *self {
            TrA { i } => write!(f, "tr(A{})", i + 1),
            TrASq { i } => write!(f, "tr(A{}^2)", i + 1),
            TrAA { i, j } => write!(f, "tr(A{}*A{})", i + 1, j + 1),
            VDotV { m } => write!(f, "v{0}.v{0}", m + 1),
            VDotVPair { m, n } => write!(f, "v{}.v{}", m + 1, n + 1),
            TrWSq { p } => write!(f, "tr(W{}^2)", p + 1),
            TrWW { p, q } => write!(f, "tr(W{}*W{})", p + 1, q + 1),
            VAV { m, i } => write!(f, "v{0}.A{1}*v{0}", m + 1, i + 1),
            VAVPair { m, i, n } => write!(f, "v{}.A{}*v{}", m + 1, i + 1, n + 1),
            VWV { m, p, n } => write!(f, "v{}.W{}*v{}", m + 1, p + 1, n + 1),
            TrAAW { i, j, p } => write!(f, "tr(A{}*A{}*W{})", i + 1, j + 1, p + 1),
            AVWV { i, m, p } => write!(f, "A{0}*v{1}.W{2}*v{1}", i + 1, m + 1, p + 1),
        }
    }
}

impl fmt::Display for GeneratorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GeneratorDescriptor::*;
        match *self {
            Identity => f.write_str("I"),
            A { i } => write!(f, "A{}", i + 1),
            VV { m } => write!(f, "v{0}(x)v{0}", m + 1),
            VVPair { m, n } => write!(f, "v{0}(x)v{1} + v{1}(x)v{0}", m + 1, n + 1),
            VWV { m, p } => write!(f, "v{0}(x)W{1}*v{0} + W{1}*v{0}(x)v{0}", m + 1, p + 1),
            AWComm { i, p } => write!(f, "A{0}*W{1} - W{1}*A{0}", i + 1, p + 1),
        }
    }
}

#[derive(Serialize)]
struct Listed<'a, T> {
    text: String,
    #[serde(flatten)]
    desc: &'a T,
}

/// JSON array of `{text, form, indices...}` objects.
pub fn invariants_json(descs: &[InvariantDescriptor]) -> Result<String> {
    let rows: Vec<_> = descs.iter().map(|d| Listed { text: d.to_string(), desc: d }).collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}

pub fn generators_json(descs: &[GeneratorDescriptor]) -> Result<String> {
    let rows: Vec<_> = descs.iter().map(|d| Listed { text: d.to_string(), desc: d }).collect();
    Ok(serde_json::to_string_pretty(&rows)?)
}
