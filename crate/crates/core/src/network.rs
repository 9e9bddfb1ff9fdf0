//! Linear networks: recording, transposition, evaluation and counting.
//!
//! A network is a DAG whose vertices sum their weighted in-edges. Vertices
//! are numbered in topological order, so every edge runs from a lower to a
//! higher index. Every output is an explicit sink vertex fed by one `+-1`
//! edge, which keeps `|V|` and `|E|` bookkeeping uniform.

use std::io::{self, Write};

use thiserror::Error;

use crate::arith::Arith;
use crate::error::TransformError;
use crate::flops::FlopLedger;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TraceError {
    #[error("multiplication by {0} is not a scaling")]
    UnitMultiplier(f64),
    #[error("multiplication by zero")]
    ZeroMultiplier,
    #[error("nonzero constant {0} makes the kernel affine")]
    AffineConstant(f64),
    #[error("arithmetic on a structural zero")]
    ArithmeticOnZero,
    #[error("output {0} is a structural zero")]
    ZeroOutput(usize),
    #[error("input {0} is never used")]
    UnusedInput(usize),
    #[error("vertex {0} is computed but never used")]
    DeadVertex(usize),
    #[error("edge {from} -> {to} is not in topological order")]
    EdgeOrder { from: usize, to: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} has no incoming edge and is not an input")]
    Orphan(usize),
    #[error("input vertex {0} has an incoming edge")]
    InputWithEdge(usize),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("kernel failed: {0}")]
    Kernel(#[from] TransformError),
}

/// A value flowing through the tracer: a vertex with a pending sign, or the
/// structural zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sym {
    id: usize,
    neg: bool,
}

const ZERO_ID: usize = usize::MAX;

impl Sym {
    fn is_zero(self) -> bool {
        self.id == ZERO_ID
    }

    fn sign(self) -> f64 {
        if self.neg {
            -1.0
        } else {
            1.0
        }
    }
}

/// [`Arith`] implementation that records a [`LinearNetwork`].
#[derive(Debug, Default)]
pub struct Tracer {
    vertex_count: usize,
    edges: Vec<Edge>,
    error: Option<TraceError>,
}

impl Tracer {
    fn vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    fn fail(&mut self, err: TraceError) -> Sym {
        self.error.get_or_insert(err);
        Sym {
            id: ZERO_ID,
            neg: false,
        }
    }

    fn combine(&mut self, a: Sym, b: Sym, b_sign: f64) -> Sym {
        if a.is_zero() || b.is_zero() {
            return self.fail(TraceError::ArithmeticOnZero);
        }
        let v = self.vertex();
        self.edges.push(Edge {
            from: a.id,
            to: v,
            weight: a.sign(),
        });
        self.edges.push(Edge {
            from: b.id,
            to: v,
            weight: b_sign * b.sign(),
        });
        Sym { id: v, neg: false }
    }
}

impl Arith for Tracer {
    type Value = Sym;

    fn add(&mut self, a: Sym, b: Sym) -> Sym {
        self.combine(a, b, 1.0)
    }

    fn sub(&mut self, a: Sym, b: Sym) -> Sym {
        self.combine(a, b, -1.0)
    }

    fn mul(&mut self, c: f64, a: Sym) -> Sym {
        if c == 1.0 || c == -1.0 {
            return self.fail(TraceError::UnitMultiplier(c));
        }
        if c == 0.0 {
            return self.fail(TraceError::ZeroMultiplier);
        }
        if a.is_zero() {
            return self.fail(TraceError::ArithmeticOnZero);
        }
        let v = self.vertex();
        self.edges.push(Edge {
            from: a.id,
            to: v,
            weight: c * a.sign(),
        });
        Sym { id: v, neg: false }
    }

    fn neg(&mut self, a: Sym) -> Sym {
        Sym {
            id: a.id,
            neg: !a.neg,
        }
    }

    fn constant(&mut self, c: f64) -> Sym {
        if c != 0.0 {
            return self.fail(TraceError::AffineConstant(c));
        }
        Sym {
            id: ZERO_ID,
            neg: false,
        }
    }
}

/// Weighted DAG computing a linear map.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearNetwork {
    vertex_count: usize,
    edges: Vec<Edge>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

/// Records the network of `kernel` applied to `inputs` symbolic values.
pub fn record<F>(inputs: usize, kernel: F) -> Result<LinearNetwork, TraceError>
where
    F: FnOnce(&mut Tracer, &[Sym]) -> Result<Vec<Sym>, TransformError>,
{
    let mut tracer = Tracer {
        vertex_count: inputs,
        ..Tracer::default()
    };
    let xs: Vec<Sym> = (0..inputs).map(|id| Sym { id, neg: false }).collect();
    let ys = kernel(&mut tracer, &xs)?;
    if let Some(err) = tracer.error.take() {
        return Err(err);
    }
    let mut outputs = Vec::with_capacity(ys.len());
    for (j, y) in ys.into_iter().enumerate() {
        if y.is_zero() {
            return Err(TraceError::ZeroOutput(j));
        }
        let v = tracer.vertex();
        tracer.edges.push(Edge {
            from: y.id,
            to: v,
            weight: y.sign(),
        });
        outputs.push(v);
    }

    let mut used = vec![false; tracer.vertex_count];
    for e in &tracer.edges {
        used[e.from] = true;
    }
    for (i, &u) in used.iter().enumerate().take(inputs) {
        if !u {
            return Err(TraceError::UnusedInput(i));
        }
    }
    let first_sink = tracer.vertex_count - outputs.len();
    if let Some(v) = (inputs..first_sink).find(|&v| !used[v]) {
        return Err(TraceError::DeadVertex(v));
    }

    let mut edges = tracer.edges;
    edges.sort_by_key(|e| (e.to, e.from));
    Ok(LinearNetwork {
        vertex_count: tracer.vertex_count,
        edges,
        inputs: (0..inputs).collect(),
        outputs,
    })
}

impl LinearNetwork {
    /// Builds a network from raw parts. Vertices must be numbered so that
    /// every edge goes from a lower to a higher index.
    pub fn from_parts(
        vertex_count: usize,
        mut edges: Vec<Edge>,
        inputs: Vec<usize>,
        outputs: Vec<usize>,
    ) -> Result<Self, TraceError> {
        let mut indeg = vec![0usize; vertex_count];
        for e in &edges {
            for v in [e.from, e.to] {
                if v >= vertex_count {
                    return Err(TraceError::VertexOutOfRange(v));
                }
            }
            if e.from >= e.to {
                return Err(TraceError::EdgeOrder {
                    from: e.from,
                    to: e.to,
                });
            }
            indeg[e.to] += 1;
        }
        let mut is_input = vec![false; vertex_count];
        for &v in inputs.iter().chain(&outputs) {
            if v >= vertex_count {
                return Err(TraceError::VertexOutOfRange(v));
            }
        }
        for &v in &inputs {
            if indeg[v] != 0 {
                return Err(TraceError::InputWithEdge(v));
            }
            is_input[v] = true;
        }
        if let Some(v) = (0..vertex_count).find(|&v| !is_input[v] && indeg[v] == 0) {
            return Err(TraceError::Orphan(v));
        }
        edges.sort_by_key(|e| (e.to, e.from));
        Ok(Self {
            vertex_count,
            edges,
            inputs,
            outputs,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Reverses every edge and swaps inputs with outputs. Vertex `v` becomes
    /// `|V| - 1 - v`, so transposing twice gives back the same network.
    pub fn transpose(&self) -> LinearNetwork {
        let last = self.vertex_count - 1;
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge {
                from: last - e.to,
                to: last - e.from,
                weight: e.weight,
            })
            .collect();
        edges.sort_by_key(|e| (e.to, e.from));
        LinearNetwork {
            vertex_count: self.vertex_count,
            edges,
            inputs: self.outputs.iter().map(|&v| last - v).collect(),
            outputs: self.inputs.iter().map(|&v| last - v).collect(),
        }
    }

    /// Evaluates the network in topological order.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>, TraceError> {
        if x.len() != self.inputs.len() {
            return Err(TraceError::LengthMismatch {
                expected: self.inputs.len(),
                got: x.len(),
            });
        }
        let mut values = vec![0.0; self.vertex_count];
        for (&v, &xv) in self.inputs.iter().zip(x) {
            values[v] = xv;
        }
        for e in &self.edges {
            values[e.to] += e.weight * values[e.from];
        }
        Ok(self.outputs.iter().map(|&v| values[v]).collect())
    }

    fn indegrees(&self) -> Vec<usize> {
        let mut indeg = vec![0usize; self.vertex_count];
        for e in &self.edges {
            indeg[e.to] += 1;
        }
        indeg
    }

    /// Additions as `sum(indegree - 1)` over non-input vertices and
    /// multiplications as the number of edges with weight other than `+-1`.
    pub fn structural_flops(&self) -> FlopLedger {
        let indeg = self.indegrees();
        let mut is_input = vec![false; self.vertex_count];
        for &v in &self.inputs {
            is_input[v] = true;
        }
        let adds = (0..self.vertex_count)
            .filter(|&v| !is_input[v])
            .map(|v| indeg[v] as u64 - 1)
            .sum();
        let mults = self.edges.iter().filter(|e| e.weight.abs() != 1.0).count() as u64;
        FlopLedger::new(adds, mults)
    }

    /// Additions from the edge/vertex identity `N_in + |E| - |V|`.
    pub fn euler_adds(&self) -> i64 {
        self.inputs.len() as i64 + self.edges.len() as i64 - self.vertex_count as i64
    }

    /// Plain-text edge list, one `from to weight` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        let join = |vs: &[usize]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(w, "# vertices {}", self.vertex_count)?;
        writeln!(w, "# inputs {}", join(&self.inputs))?;
        writeln!(w, "# outputs {}", join(&self.outputs))?;
        for e in &self.edges {
            writeln!(w, "{} {} {:e}", e.from, e.to, e.weight)?;
        }
        Ok(())
    }

    /// Straight-line schedule with unit-weight single-edge vertices folded
    /// into aliases of their source.
    pub fn compile(&self) -> CompiledNetwork {
        let mut source: Vec<Option<(usize, bool)>> = vec![None; self.vertex_count];
        let mut slot_of = vec![usize::MAX; self.vertex_count];
        for (i, &v) in self.inputs.iter().enumerate() {
            slot_of[v] = i;
        }
        let mut ops: Vec<Op> = Vec::new();
        let mut slots = self.inputs.len();
        let resolve =
            |source: &[Option<(usize, bool)>], slot_of: &[usize], v: usize| match source[v] {
                Some(alias) => alias,
                None => (slot_of[v], false),
            };

        let mut start = 0;
        while start < self.edges.len() {
            let to = self.edges[start].to;
            let mut end = start;
            while end < self.edges.len() && self.edges[end].to == to {
                end += 1;
            }
            let group = &self.edges[start..end];
            if group.len() == 1 && group[0].weight.abs() == 1.0 {
                let (slot, neg) = resolve(&source, &slot_of, group[0].from);
                source[to] = Some((slot, neg ^ (group[0].weight < 0.0)));
            } else {
                let terms = group
                    .iter()
                    .map(|e| {
                        let (slot, neg) = resolve(&source, &slot_of, e.from);
                        Term {
                            slot,
                            weight: if neg { -e.weight } else { e.weight },
                        }
                    })
                    .collect();
                slot_of[to] = slots;
                ops.push(Op {
                    target: slots,
                    terms,
                });
                slots += 1;
            }
            start = end;
        }

        let outputs = self
            .outputs
            .iter()
            .map(|&v| resolve(&source, &slot_of, v))
            .collect();
        CompiledNetwork {
            inputs: self.inputs.len(),
            slots,
            ops,
            outputs,
        }
    }
}

#[derive(Clone, Debug)]
struct Term {
    slot: usize,
    weight: f64,
}

#[derive(Clone, Debug)]
struct Op {
    target: usize,
    terms: Vec<Term>,
}

/// A compiled network, runnable over any [`Arith`].
#[derive(Clone, Debug)]
pub struct CompiledNetwork {
    inputs: usize,
    slots: usize,
    ops: Vec<Op>,
    outputs: Vec<(usize, bool)>,
}

impl CompiledNetwork {
    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs.len()
    }

    pub fn run<A: Arith>(&self, a: &mut A, x: &[A::Value]) -> Result<Vec<A::Value>, TraceError> {
        if x.len() != self.inputs {
            return Err(TraceError::LengthMismatch {
                expected: self.inputs,
                got: x.len(),
            });
        }
        let Some(&fill) = x.first() else {
            return Ok(Vec::new());
        };
        let mut values = vec![fill; self.slots];
        values[..self.inputs].copy_from_slice(x);
        for op in &self.ops {
            let mut acc = None;
            for term in &op.terms {
                let v = values[term.slot];
                acc = Some(match (acc, term.weight) {
                    (None, 1.0) => v,
                    (None, -1.0) => a.neg(v),
                    (None, w) => a.mul(w, v),
                    (Some(s), 1.0) => a.add(s, v),
                    (Some(s), -1.0) => a.sub(s, v),
                    (Some(s), w) => {
                        let p = a.mul(w, v);
                        a.add(s, p)
                    }
                });
            }
            values[op.target] = acc.expect("every op has a term");
        }
        Ok(self
            .outputs
            .iter()
            .map(|&(slot, neg)| {
                if neg {
                    a.neg(values[slot])
                } else {
                    values[slot]
                }
            })
            .collect())
    }
}
