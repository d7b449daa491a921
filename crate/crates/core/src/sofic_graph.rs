//! Finite presentations and invariants of sofic (including finite-type)
//! beta-shifts: the minimal projections of the finite-dimensional follower
//! algebra as subintervals of [0, 1], the left-resolving labeled graph on
//! those atoms, the edge/vertex matrices with their strong-shift-equivalence
//! and determinant identities, K-theory, and the resulting classification of
//! the interpolated Higman-Thompson groups.

use crate::beta_shift::ShiftClass;
use crate::error::{Error, Result};
use crate::number_core::{BetaContext, BetaNumber, ContextRepr};
use crate::Word;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

/// Atoms of the follower algebra, as a chain of exact cut points
/// `0 = t_0 < t_1 < ... < t_K = 1`; atom i is the interval (t_{i-1}, t_i].
#[derive(Clone)]
pub struct ProjectionSystem {
    values: Vec<BetaNumber>,
    reps: Vec<ProjectionTag>,
}

/// Representative prefix lengths: atom i equals the difference of the
/// follower projections of the quasi-greedy prefixes of lengths `p` and
/// `q`. A proper sofic bottom atom has no lower representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionTag {
    pub p: usize,
    pub q: Option<usize>,
}

impl ProjectionSystem {
    /// Number of atoms.
    pub fn dimension(&self) -> usize {
        self.values.len() - 1
    }

    /// The cut points `t_0 .. t_K` in ascending order.
    pub fn values(&self) -> &[BetaNumber] {
        &self.values
    }

    pub fn tags(&self) -> &[ProjectionTag] {
        &self.reps
    }

    /// Endpoints (t_{i-1}, t_i] of atom `i` (1-based).
    pub fn atom_bounds(&self, i: usize) -> (&BetaNumber, &BetaNumber) {
        (&self.values[i - 1], &self.values[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    /// 1-based source vertex.
    pub from: usize,
    pub label: u32,
    /// 1-based target vertex.
    pub to: usize,
}

/// The labeled graph on the follower atoms: an edge `i --a--> j` says that
/// prepending letter `a` maps atom j into atom i's follower set, computed
/// in the interval picture as `beta * E_i - a` containing `E_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: usize,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges_from(&self, from: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == from)
    }

    /// The unique edge with a given label and target, if present: the
    /// graph is left-resolving, so (label, target) determines the edge.
    pub fn edge_into(&self, label: u32, to: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.label == label && e.to == to)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for e in &self.edges {
            out.push_str(&format!(
                "  v{} -> v{} [label=\"{}\"];\n",
                e.from, e.to, e.label
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct GraphJson<'a> {
            vertices: usize,
            edges: &'a [Edge],
        }
        serde_json::to_string(&GraphJson {
            vertices: self.vertices,
            edges: &self.edges,
        })
        .expect("graph serializes")
    }
}

/// The matrix data of the presentation. `m` counts labeled edges between
/// atoms, `b` is the edge adjacency matrix, `r`/`s` witness the strong
/// shift equivalence `b = r s`, `m = s r`, and `l` is the companion matrix
/// of the eta-polynomial of the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixSet {
    pub m: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
    pub r: Vec<Vec<i64>>,
    pub s: Vec<Vec<i64>>,
    pub l: Vec<Vec<i64>>,
    pub eta: Vec<i64>,
    /// det(I - B) = det(I - M) = det(I - L) = 1 - sum(eta).
    pub det_one_minus: i64,
}

impl MatrixSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrices serialize")
    }
}

/// K_0 of the associated algebra; K_1 always vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum K0Result {
    /// Z/orderZ with the class of the unit at the stated generator
    /// position (order 1 is the trivial group).
    #[serde(rename = "cyclic")]
    Cyclic { order: u64, unit_position: u64 },
    /// The free group Z with the unit at 1.
    #[serde(rename = "free_z")]
    FreeZ { unit_position: u64 },
}

impl K0Result {
    pub fn order(&self) -> Option<u64> {
        match self {
            K0Result::Cyclic { order, .. } => Some(*order),
            K0Result::FreeZ { .. } => None,
        }
    }
}

impl fmt::Display for K0Result {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K0Result::Cyclic { order: 1, .. } => write!(f, "0"),
            K0Result::Cyclic { order, .. } => write!(f, "Z/{order}Z"),
            K0Result::FreeZ { .. } => write!(f, "Z"),
        }
    }
}

/// Groupoid homology: H_0 matches K_0, everything above vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub h0: K0Result,
}

impl Homology {
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct HomologyJson<'a> {
            h0: &'a K0Result,
            h1: &'static str,
            h_ge2: &'static str,
        }
        serde_json::to_string(&HomologyJson {
            h0: &self.h0,
            h1: "0",
            h_ge2: "0",
        })
        .expect("homology serializes")
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, 0, 0)", self.h0)
    }
}

/// Where the full group of the shift sits among the Higman-Thompson
/// groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum GroupClass {
    #[serde(rename = "higman_thompson")]
    HigmanThompson { n: u64 },
    #[serde(rename = "not_higman_thompson")]
    NotHigmanThompson,
    #[serde(rename = "unknown")]
    Unknown { depth: usize },
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupClass::HigmanThompson { n } => write!(f, "V_{n}"),
            GroupClass::NotHigmanThompson => write!(f, "NotHigmanThompson"),
            GroupClass::Unknown { depth } => write!(f, "Unknown(depth={depth})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoVerdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoVerdict::Yes => write!(f, "yes"),
            IsoVerdict::No => write!(f, "no"),
            IsoVerdict::Unknown => write!(f, "unknown"),
        }
    }
}

/// The full sofic presentation of a context: classification, projection
/// system and labeled graph, built once and shared.
pub struct SoficSystem {
    ctx: BetaContext,
    class: ShiftClass,
    proj: ProjectionSystem,
    graph: LabeledGraph,
}

impl SoficSystem {
    fn build(ctx: &BetaContext) -> Result<SoficSystem> {
        let depth = match ctx.repr() {
            ContextRepr::Integer { .. } => 2,
            ContextRepr::Rational { .. } => 1,
            ContextRepr::Algebraic(alg) => alg.preperiod.len() + alg.period.len() + 2,
        };
        let class = ctx.classify_shift(depth);
        let bound = match class {
            ShiftClass::Sft { k } => k,
            ShiftClass::Sofic { k_beta, .. } => k_beta,
            ShiftClass::NotSoficUpTo { .. } => {
                return Err(Error::NotSofic(format!(
                    "{} has no finite follower algebra",
                    ctx.spec()
                )))
            }
        };

        let mut values = vec![ctx.zero(), ctx.one()];
        for j in 0..=bound {
            values.push(ctx.beta_n(j));
        }
        values.sort();
        values.dedup();
        let find_rep = |target: &BetaNumber| -> Option<usize> {
            (0..=bound).find(|&j| &ctx.beta_n(j) == target)
        };
        let reps = (1..values.len())
            .map(|i| ProjectionTag {
                p: find_rep(&values[i]).expect("upper endpoints are remainders"),
                q: find_rep(&values[i - 1]),
            })
            .collect();
        let proj = ProjectionSystem { values, reps };

        let graph = Self::build_graph_from(ctx, &proj)?;
        Ok(SoficSystem {
            ctx: ctx.clone(),
            class,
            proj,
            graph,
        })
    }

    fn build_graph_from(ctx: &BetaContext, proj: &ProjectionSystem) -> Result<LabeledGraph> {
        let k_big = proj.dimension();
        let beta = ctx.beta();
        let mut edges = Vec::new();
        for i in 1..=k_big {
            let (lo_i, hi_i) = proj.atom_bounds(i);
            for label in 0..ctx.alphabet() {
                let a = ctx.from_int(label as i64);
                let img_lo = &(&beta * lo_i) - &a;
                let img_hi = &(&beta * hi_i) - &a;
                for j in 1..=k_big {
                    let (lo_j, hi_j) = proj.atom_bounds(j);
                    if img_lo.compare(lo_j)? != std::cmp::Ordering::Greater
                        && hi_j.compare(&img_hi)? != std::cmp::Ordering::Greater
                    {
                        edges.push(Edge {
                            from: i,
                            label,
                            to: j,
                        });
                    }
                }
            }
        }
        let graph = LabeledGraph {
            vertices: k_big,
            edges,
        };
        for e in &graph.edges {
            let hits = graph
                .edges
                .iter()
                .filter(|f| f.label == e.label && f.to == e.to)
                .count();
            if hits != 1 {
                return Err(Error::InternalInvariantViolation(format!(
                    "graph not left-resolving at label {} target {}",
                    e.label, e.to
                )));
            }
        }
        for v in 1..=k_big {
            if graph.edges_from(v).next().is_none() {
                return Err(Error::InternalInvariantViolation(format!(
                    "vertex v{v} has no outgoing edge"
                )));
            }
        }
        Ok(graph)
    }

    pub fn context(&self) -> &BetaContext {
        &self.ctx
    }

    pub fn class(&self) -> &ShiftClass {
        &self.class
    }

    pub fn projections(&self) -> &ProjectionSystem {
        &self.proj
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn dimension(&self) -> usize {
        self.proj.dimension()
    }
}

impl BetaContext {
    /// The cached sofic presentation of this context, or `NotSofic`.
    pub fn sofic_system(&self) -> Result<Arc<SoficSystem>> {
        self.sofic_cache()
            .get_or_init(|| SoficSystem::build(self).map(Arc::new))
            .clone()
    }
}

/// The minimal projections of the follower algebra as exact subintervals
/// of [0, 1].
pub fn projection_system(ctx: &BetaContext) -> Result<ProjectionSystem> {
    Ok(ctx.sofic_system()?.projections().clone())
}

/// The left-resolving labeled graph presenting the shift.
pub fn build_graph(ctx: &BetaContext) -> Result<LabeledGraph> {
    Ok(ctx.sofic_system()?.graph().clone())
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; cols]; rows];
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..cols {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// det(I - A) by fraction-free (Bareiss) elimination over the integers.
pub(crate) fn det_one_minus(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let idm = if i == j { 1 } else { 0 };
                    BigInt::from(idm - a[i][j])
                })
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    match n {
        0 => sign,
        _ => sign * m[n - 1][n - 1].clone(),
    }
}

/// Coefficients eta_1 .. eta_K of the monic integer polynomial of the base
/// (the defining identity of the digit expansion, rearranged).
fn eta_coefficients(ctx: &BetaContext) -> Result<Vec<i64>> {
    match ctx.repr() {
        ContextRepr::Integer { m } => Ok(vec![*m as i64]),
        ContextRepr::Rational { .. } => Err(Error::NotSofic(format!(
            "{} has no eta polynomial",
            ctx.spec()
        ))),
        ContextRepr::Algebraic(alg) => {
            let coeffs = alg.char_poly.coeffs();
            let deg = coeffs.len() - 1;
            let mut eta = Vec::with_capacity(deg);
            for i in 1..=deg {
                let c = &coeffs[deg - i];
                debug_assert!(c.is_integer());
                let v = (-c.numer()).to_i64().ok_or_else(|| {
                    Error::OutOfRange("eta coefficient exceeds i64".into())
                })?;
                eta.push(v);
            }
            Ok(eta)
        }
    }
}

/// All matrix data of the presentation, with every identity verified
/// before returning.
pub fn matrices(ctx: &BetaContext) -> Result<MatrixSet> {
    let sys = ctx.sofic_system()?;
    let k_big = sys.dimension();
    let graph = sys.graph();
    let edges = &graph.edges;
    let ne = edges.len();

    let mut m = vec![vec![0i64; k_big]; k_big];
    for e in edges {
        m[e.from - 1][e.to - 1] += 1;
    }
    let mut b = vec![vec![0i64; ne]; ne];
    for (ei, e) in edges.iter().enumerate() {
        for (fi, f) in edges.iter().enumerate() {
            if e.to == f.from {
                b[ei][fi] = 1;
            }
        }
    }
    let mut r = vec![vec![0i64; k_big]; ne];
    for (ei, e) in edges.iter().enumerate() {
        r[ei][e.to - 1] = 1;
    }
    let mut s = vec![vec![0i64; ne]; k_big];
    for (fi, f) in edges.iter().enumerate() {
        s[f.from - 1][fi] = 1;
    }

    if mat_mul(&r, &s) != b {
        return Err(Error::InternalInvariantViolation("B != R*S".into()));
    }
    if mat_mul(&s, &r) != m {
        return Err(Error::InternalInvariantViolation("M != S*R".into()));
    }

    let eta = eta_coefficients(ctx)?;
    let dim = eta.len();
    let mut l = vec![vec![0i64; dim]; dim];
    for row in 1..dim {
        l[row][row - 1] = 1;
    }
    for row in 0..dim {
        l[row][dim - 1] = eta[dim - 1 - row];
    }

    let eta_sum: i64 = eta.iter().sum();
    let expected = BigInt::from(1 - eta_sum);
    for (name, mat) in [("B", &b), ("M", &m), ("L", &l)] {
        let det = det_one_minus(mat);
        if det != expected {
            return Err(Error::InternalInvariantViolation(format!(
                "det(I-{name}) = {det}, expected {expected}"
            )));
        }
    }
    if let ShiftClass::Sofic { l: lpre, k_beta } = sys.class() {
        let tail: i64 = (lpre + 1..=k_beta + 1)
            .map(|i| ctx.d_digit(i) as i64)
            .sum();
        if eta_sum != tail + 1 {
            return Err(Error::InternalInvariantViolation(format!(
                "eta sum {eta_sum} != periodic digit sum {tail} + 1"
            )));
        }
    }

    Ok(MatrixSet {
        m,
        b,
        r,
        s,
        l,
        eta,
        det_one_minus: 1 - eta_sum,
    })
}

/// K_0 of the associated algebra (K_1 is always zero).
///
/// A `FreeZ` answer inherits the classification's depth qualification:
/// it is unconditional only when the context certifies that the
/// expansion of 1 never becomes periodic (non-integer rational bases do;
/// see [`BetaContext::certified_never_periodic`]).
pub fn k0_group(ctx: &BetaContext, depth: usize) -> K0Result {
    match ctx.classify_shift(depth) {
        ShiftClass::Sft { k } => {
            let sum: u64 = (1..=k).map(|i| ctx.d_digit(i) as u64).sum();
            K0Result::Cyclic {
                order: sum - 1,
                unit_position: 1,
            }
        }
        ShiftClass::Sofic { l, k_beta } => {
            let sum: u64 = (l + 1..=k_beta + 1).map(|i| ctx.d_digit(i) as u64).sum();
            K0Result::Cyclic {
                order: sum,
                unit_position: 1,
            }
        }
        ShiftClass::NotSoficUpTo { .. } => K0Result::FreeZ { unit_position: 1 },
    }
}

/// Groupoid homology: (K_0, 0, 0).
pub fn homology(ctx: &BetaContext, depth: usize) -> Homology {
    Homology {
        h0: k0_group(ctx, depth),
    }
}

/// Which Higman-Thompson group (if any) the full group of the shift is.
pub fn group_class(ctx: &BetaContext, depth: usize) -> GroupClass {
    match ctx.classify_shift(depth) {
        ShiftClass::Sft { k } => GroupClass::HigmanThompson {
            n: (1..=k).map(|i| ctx.d_digit(i) as u64).sum(),
        },
        ShiftClass::Sofic { l, k_beta } => GroupClass::HigmanThompson {
            n: (l + 1..=k_beta + 1).map(|i| ctx.d_digit(i) as u64).sum::<u64>() + 1,
        },
        ShiftClass::NotSoficUpTo { depth } => {
            if ctx.certified_never_periodic() {
                GroupClass::NotHigmanThompson
            } else {
                GroupClass::Unknown { depth }
            }
        }
    }
}

/// Compare the groups of two bases through their classification.
///
/// Two distinct provably-non-sofic bases answer `Unknown`: the
/// classification separates them from every Higman-Thompson group but not
/// from each other.
pub fn is_isomorphic(a: &BetaContext, b: &BetaContext, depth: usize) -> IsoVerdict {
    if a.same_context(b) {
        return IsoVerdict::Yes;
    }
    use GroupClass::*;
    match (group_class(a, depth), group_class(b, depth)) {
        (Unknown { .. }, _) | (_, Unknown { .. }) => IsoVerdict::Unknown,
        (HigmanThompson { n }, HigmanThompson { n: n2 }) => {
            if n == n2 {
                IsoVerdict::Yes
            } else {
                IsoVerdict::No
            }
        }
        (HigmanThompson { .. }, NotHigmanThompson)
        | (NotHigmanThompson, HigmanThompson { .. }) => IsoVerdict::No,
        (NotHigmanThompson, NotHigmanThompson) => IsoVerdict::Unknown,
    }
}

/// For a finite expansion, the generator words recoding the shift as a
/// full shift on sum(eta) symbols; their cylinder intervals tile [0, 1).
pub fn recode_generators(ctx: &BetaContext) -> Result<Vec<Word>> {
    let sys = ctx.sofic_system().map_err(|_| {
        Error::NotSft(format!("{} is not a shift of finite type", ctx.spec()))
    })?;
    let ShiftClass::Sft { k } = *sys.class() else {
        return Err(Error::NotSft(format!(
            "{} is not a shift of finite type",
            ctx.spec()
        )));
    };
    let eta: Vec<u32> = (1..=k).map(|i| ctx.d_digit(i)).collect();
    let mut words = Vec::new();
    for block in 0..k {
        let prefix: Vec<u32> = eta[..block].to_vec();
        for letter in 0..eta[block] {
            let mut w = prefix.clone();
            w.push(letter);
            words.push(ctx.word(&w)?);
        }
    }
    // T-index order is lexicographic, so the tiling check walks in order.
    let mut cursor = ctx.zero();
    for w in &words {
        if w.l_value() != cursor {
            return Err(Error::InternalInvariantViolation(format!(
                "generator {w} does not start where the previous one ends"
            )));
        }
        cursor = w.r_value();
    }
    if cursor != ctx.one() {
        return Err(Error::InternalInvariantViolation(
            "generator intervals do not reach 1".into(),
        ));
    }
    Ok(words)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(spec: &str) -> BetaContext {
        BetaContext::new(spec).unwrap()
    }

    fn edge(from: usize, label: u32, to: usize) -> Edge {
        Edge { from, label, to }
    }

    #[test]
    fn golden_projection_system() {
        let c = ctx("digits=1,1");
        let p = projection_system(&c).unwrap();
        assert_eq!(p.dimension(), 2);
        let b1 = &c.beta() - &c.one();
        assert_eq!(p.values(), &[c.zero(), b1, c.one()]);
        // Bottom endpoint realized by the zero remainder at k = 2.
        assert_eq!(p.tags()[0], ProjectionTag { p: 1, q: Some(2) });
        assert_eq!(p.tags()[1], ProjectionTag { p: 0, q: Some(1) });
    }

    #[test]
    fn sofic_projection_system_merges_equal_remainders() {
        let c = ctx("digits=3,(2)");
        let p = projection_system(&c).unwrap();
        assert_eq!(p.dimension(), 2);
        let b1 = &c.beta() - &c.from_int(3);
        assert_eq!(p.values(), &[c.zero(), b1, c.one()]);
        // 0 is not a remainder of a proper sofic base.
        assert_eq!(p.tags()[0].q, None);
    }

    #[test]
    fn full_shift_projection_is_trivial() {
        let p = projection_system(&ctx("digits=2")).unwrap();
        assert_eq!(p.dimension(), 1);
    }

    #[test]
    fn rational_context_is_rejected() {
        assert!(matches!(
            projection_system(&ctx("rational=3/2")),
            Err(Error::NotSofic(_))
        ));
        assert!(matches!(
            matrices(&ctx("rational=3/2")),
            Err(Error::NotSofic(_))
        ));
    }

    #[test]
    fn golden_graph_edges() {
        let g = build_graph(&ctx("digits=1,1")).unwrap();
        assert_eq!(g.vertices, 2);
        assert_eq!(
            g.edges,
            vec![edge(1, 0, 1), edge(1, 0, 2), edge(2, 1, 1)]
        );
    }

    #[test]
    fn sofic_graph_has_seven_edges() {
        let g = build_graph(&ctx("digits=3,(2)")).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(
            g.edges,
            vec![
                edge(1, 0, 1),
                edge(1, 0, 2),
                edge(1, 1, 1),
                edge(1, 1, 2),
                edge(1, 2, 1),
                edge(2, 2, 2),
                edge(2, 3, 1),
            ]
        );
    }

    #[test]
    fn full_shift_graph() {
        let g = build_graph(&ctx("digits=2")).unwrap();
        assert_eq!(g.edges, vec![edge(1, 0, 1), edge(1, 1, 1)]);
    }

    #[test]
    fn golden_matrices() {
        let m = matrices(&ctx("digits=1,1")).unwrap();
        assert_eq!(m.m, vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(m.eta, vec![1, 1]);
        assert_eq!(m.det_one_minus, -1);
    }

    #[test]
    fn sofic_matrices_allow_negative_eta() {
        let m = matrices(&ctx("digits=3,(2)")).unwrap();
        assert_eq!(m.m, vec![vec![3, 2], vec![1, 1]]);
        assert_eq!(m.eta, vec![4, -1]);
        assert_eq!(m.det_one_minus, -2);
        assert_eq!(det_one_minus(&m.b), BigInt::from(-2));
    }

    #[test]
    fn full_shift_matrices() {
        let m = matrices(&ctx("digits=2")).unwrap();
        assert_eq!(m.m, vec![vec![2]]);
        assert_eq!(m.b, vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(m.det_one_minus, -1);
    }

    #[test]
    fn k0_examples() {
        assert_eq!(
            k0_group(&ctx("digits=1,1"), 64),
            K0Result::Cyclic { order: 1, unit_position: 1 }
        );
        assert_eq!(
            k0_group(&ctx("digits=3,(2)"), 64),
            K0Result::Cyclic { order: 2, unit_position: 1 }
        );
        assert_eq!(
            k0_group(&ctx("rational=3/2"), 64),
            K0Result::FreeZ { unit_position: 1 }
        );
    }

    #[test]
    fn homology_mirrors_k0() {
        assert_eq!(homology(&ctx("digits=1,1"), 64).to_string(), "(0, 0, 0)");
        assert_eq!(homology(&ctx("rational=3/2"), 64).to_string(), "(Z, 0, 0)");
        assert_eq!(homology(&ctx("digits=3"), 64).to_string(), "(Z/2Z, 0, 0)");
    }

    #[test]
    fn group_classification() {
        assert_eq!(
            group_class(&ctx("digits=1,1"), 64),
            GroupClass::HigmanThompson { n: 2 }
        );
        assert_eq!(
            group_class(&ctx("digits=3,(2)"), 64),
            GroupClass::HigmanThompson { n: 3 }
        );
        assert_eq!(
            group_class(&ctx("rational=3/2"), 64),
            GroupClass::NotHigmanThompson
        );
    }

    #[test]
    fn isomorphism_comparisons() {
        let golden = ctx("digits=1,1");
        let full2 = ctx("digits=2");
        let sofic = ctx("digits=3,(2)");
        let rat = ctx("rational=3/2");
        assert_eq!(is_isomorphic(&golden, &full2, 64), IsoVerdict::Yes);
        assert_eq!(is_isomorphic(&golden, &sofic, 64), IsoVerdict::No);
        assert_eq!(is_isomorphic(&rat, &golden, 64), IsoVerdict::No);
        assert_eq!(
            is_isomorphic(&rat, &ctx("rational=5/3"), 64),
            IsoVerdict::Unknown
        );
        assert_eq!(is_isomorphic(&rat, &rat, 64), IsoVerdict::Yes);
    }

    #[test]
    fn recoding_generators() {
        let words: Vec<String> = recode_generators(&ctx("digits=1,1"))
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["0", "1,0"]);

        let words: Vec<String> = recode_generators(&ctx("digits=2"))
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["0", "1"]);

        // beta = 1 + sqrt(2): expansion 2,1.
        let words: Vec<String> = recode_generators(&ctx("digits=2,1"))
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, vec!["0", "1", "2,0"]);

        assert!(matches!(
            recode_generators(&ctx("digits=3,(2)")),
            Err(Error::NotSft(_))
        ));
    }

    #[test]
    fn dot_export_shape() {
        let g = build_graph(&ctx("digits=2")).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("digraph {"));
        assert!(dot.contains("v1 -> v1 [label=\"0\"];"));
    }
}
