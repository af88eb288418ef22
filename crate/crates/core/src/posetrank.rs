//! Root-poset combinatorics: the matrix A(Phi) of structure constants below
//! the covering relation, layer bigraphs with hanging-edge pruning down to
//! central graphs, exact rank certification, and Hasse diagram export.

use num_bigint::BigInt;

use crate::chevalley::{neg, pos, ssum, StructureConstants};
use crate::linalg::{det_int, det_parity_odd, rank_int};
use crate::rootsys::RootSystem;

/// `A(Phi)`: rows over all positive roots, columns over the non-simple ones;
/// entry `N_{beta,-gamma}` when `gamma - beta` is a positive root, else 0.
/// Row/column order follows the construction order of the root system.
pub fn matrix_a(
    rs: &RootSystem,
    sc: &StructureConstants,
) -> (Vec<usize>, Vec<usize>, Vec<Vec<i64>>) {
    let rows: Vec<usize> = (0..rs.m).collect();
    let simple = rs.simple_ids();
    let cols: Vec<usize> = (0..rs.m).filter(|id| !simple.contains(id)).collect();
    let mat = rows
        .iter()
        .map(|&b| {
            cols.iter()
                .map(|&g| match ssum(rs, pos(g), neg(b)) {
                    Some(d) if d > 0 => sc.n(pos(b), neg(g)),
                    _ => 0,
                })
                .collect()
        })
        .collect();
    (rows, cols, mat)
}

/// Bipartite graph between two height layers, with its constant matrix.
#[derive(Debug, Clone)]
pub struct RootBigraph {
    /// Root ids of height i.
    pub u: Vec<usize>,
    /// Root ids of height i + 1.
    pub v: Vec<usize>,
    /// Edges (index into u, index into v).
    pub edges: Vec<(usize, usize)>,
}

impl RootBigraph {
    pub fn matrix(&self, rs: &RootSystem, sc: &StructureConstants) -> Vec<Vec<i64>> {
        self.u
            .iter()
            .map(|&b| {
                self.v
                    .iter()
                    .map(|&g| match ssum(rs, pos(g), neg(b)) {
                        Some(d) if d > 0 => sc.n(pos(b), neg(g)),
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut du = vec![0; self.u.len()];
        let mut dv = vec![0; self.v.len()];
        for &(i, j) in &self.edges {
            du[i] += 1;
            dv[j] += 1;
        }
        (du, dv)
    }

    /// First hanging edge in scan order: an edge one of whose endpoints has
    /// degree one.
    pub fn hanging_edge(&self) -> Option<(usize, usize)> {
        let (du, dv) = self.degrees();
        self.edges
            .iter()
            .copied()
            .find(|&(i, j)| du[i] == 1 || dv[j] == 1)
    }

    /// Remove both endpoints of the given edge.
    pub fn without(&self, edge: (usize, usize)) -> RootBigraph {
        let (i0, j0) = edge;
        let u: Vec<usize> = self
            .u
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != i0)
            .map(|(_, &id)| id)
            .collect();
        let v: Vec<usize> = self
            .v
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != j0)
            .map(|(_, &id)| id)
            .collect();
        let reindex_u = |i: usize| if i > i0 { i - 1 } else { i };
        let reindex_v = |j: usize| if j > j0 { j - 1 } else { j };
        let edges = self
            .edges
            .iter()
            .filter(|&&(i, j)| i != i0 && j != j0)
            .map(|&(i, j)| (reindex_u(i), reindex_v(j)))
            .collect();
        RootBigraph { u, v, edges }
    }
}

/// The bigraph `G(Phi_i, Phi_{i+1})` for a 1-based height `i`.
pub fn build_bigraph(rs: &RootSystem, i: usize) -> RootBigraph {
    let u = rs.layers[i - 1].clone();
    let v = rs.layers[i].clone();
    let mut edges = Vec::new();
    for (bi, &b) in u.iter().enumerate() {
        for (gj, &g) in v.iter().enumerate() {
            if ssum(rs, pos(g), neg(b)).map(|d| d > 0).unwrap_or(false) {
                edges.push((bi, gj));
            }
        }
    }
    RootBigraph { u, v, edges }
}

/// Prune hanging edges (deterministic scan order) until none remain,
/// returning the central graph and the pruned edges as root-id pairs.
pub fn prune_hanging(g: &RootBigraph) -> (RootBigraph, Vec<(usize, usize)>) {
    let mut cur = g.clone();
    let mut removed = Vec::new();
    while let Some((i, j)) = cur.hanging_edge() {
        removed.push((cur.u[i], cur.v[j]));
        cur = cur.without((i, j));
    }
    (cur, removed)
}

fn to_bigint(mat: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    mat.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

/// Report for one height layer.
#[derive(Debug, Clone)]
pub struct LayerReport {
    pub layer: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub full: bool,
    /// Size of the central graph after pruning (vertices on the upper side).
    pub central_cols: usize,
    /// Determinant parity of the central square matrix, when square and
    /// nonempty.
    pub central_det_odd: Option<bool>,
    /// For simply-laced 3-cycles: (det, 2 * N N N) as a checked identity.
    pub cycle3: Option<(i64, i64)>,
    /// Every prune step preserved full-rank equivalence.
    pub prune_steps_ok: bool,
    /// Pruned hanging edges as root-id pairs, in removal order.
    pub pruned_edges: Vec<(usize, usize)>,
}

/// Full certification report.
#[derive(Debug, Clone)]
pub struct RankReport {
    pub m: usize,
    pub n: usize,
    pub rank: usize,
    pub full: bool,
    pub layers: Vec<LayerReport>,
}

/// Signed product of one nonzero transversal of a 3x3 matrix, if any.
fn signed_transversal(mat: &[Vec<i64>]) -> Option<i64> {
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([1, 0, 2], -1),
        ([2, 1, 0], -1),
    ];
    for (perm, sign) in PERMS {
        let p = mat[0][perm[0]] * mat[1][perm[1]] * mat[2][perm[2]];
        if p != 0 {
            return Some(sign * p);
        }
    }
    None
}

fn full_col_rank(mat: &[Vec<i64>]) -> (usize, bool) {
    if mat.is_empty() || mat[0].is_empty() {
        return (0, true);
    }
    let r = rank_int(&to_bigint(mat));
    (r, r == mat[0].len())
}

/// Certify that `A(Phi)` has full rank `m - n`, layer by layer and globally.
pub fn rank_certify(rs: &RootSystem, sc: &StructureConstants) -> RankReport {
    let (_, cols, amat) = matrix_a(rs, sc);
    let rank = if cols.is_empty() {
        0
    } else {
        rank_int(&to_bigint(&amat))
    };
    let full = rank == cols.len();
    let mut layers = Vec::new();
    for i in 1..rs.layers.len() {
        let g = build_bigraph(rs, i);
        let mat = g.matrix(rs, sc);
        let (r, layer_full) = full_col_rank(&mat);
        // removing a hanging edge's endpoints must preserve full-rank-ness
        let mut steps_ok = true;
        let mut cur = g.clone();
        let mut pruned_edges = Vec::new();
        while let Some((ei, ej)) = cur.hanging_edge() {
            let before = full_col_rank(&cur.matrix(rs, sc)).1;
            pruned_edges.push((cur.u[ei], cur.v[ej]));
            let next = cur.without((ei, ej));
            let after = full_col_rank(&next.matrix(rs, sc)).1;
            if before != after {
                steps_ok = false;
            }
            cur = next;
        }
        let central = cur;
        let cmat = central.matrix(rs, sc);
        let central_det_odd = if !central.v.is_empty() && central.u.len() == central.v.len() {
            Some(det_parity_odd(&to_bigint(&cmat)))
        } else {
            None
        };
        // simply-laced 3-cycle central graph: det equals twice one signed
        // transversal product (the 2 N N N identity)
        let cycle3 = if central.u.len() == 3 && central.v.len() == 3 && central.edges.len() == 6 {
            let simply_laced = central
                .u
                .iter()
                .chain(&central.v)
                .all(|&id| rs.roots[id].norm == rs.roots[central.u[0]].norm);
            if simply_laced {
                let det: i64 = i64::try_from(det_int(&to_bigint(&cmat))).unwrap_or(0);
                signed_transversal(&cmat).map(|t| (det, 2 * t))
            } else {
                None
            }
        } else {
            None
        };
        layers.push(LayerReport {
            layer: i,
            rows: mat.len(),
            cols: if mat.is_empty() { 0 } else { mat[0].len() },
            rank: r,
            full: layer_full,
            central_cols: central.v.len(),
            central_det_odd,
            cycle3,
            prune_steps_ok: steps_ok,
            pruned_edges,
        });
    }
    RankReport {
        m: rs.m,
        n: rs.rank,
        rank,
        full,
        layers,
    }
}

/// Hasse diagram of the root poset in DOT format: nodes are positive roots
/// (labelled by ambient coordinates and height), edges the covering
/// relations gamma = beta + simple.
pub fn export_hasse(rs: &RootSystem) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for id in 0..rs.m {
        out.push_str(&format!(
            "  r{} [label=\"{} (h{})\"];\n",
            id,
            rs.root_label(id),
            rs.roots[id].height
        ));
    }
    for b in 0..rs.m {
        for g in 0..rs.m {
            if rs.roots[g].height == rs.roots[b].height + 1
                && ssum(rs, pos(g), neg(b)).map(|d| d > 0).unwrap_or(false)
            {
                out.push_str(&format!("  r{b} -> r{g};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn report_to_json(rep: &RankReport) -> serde_json::Value {
    serde_json::json!({
        "m": rep.m,
        "n": rep.n,
        "rank": rep.rank,
        "full": rep.full,
        "layers": rep.layers.iter().map(|l| serde_json::json!({
            "layer": l.layer,
            "rows": l.rows,
            "cols": l.cols,
            "rank": l.rank,
            "full": l.full,
            "central_cols": l.central_cols,
            "central_det_odd": l.central_det_odd,
            "prune_steps_ok": l.prune_steps_ok,
        })).collect::<Vec<_>>(),
    })
}
