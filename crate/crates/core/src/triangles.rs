//! Triangle counting via three sparse-matrix formulations plus an exhaustive
//! brute-force oracle.
//!
//! All three algorithms count unordered triangles (each set of three
//! mutually adjacent vertices once), which is the convention under which
//! they provably agree:
//!
//! * masked square: sum the entries of `(A*A) . A` and divide by 6;
//! * masked triangular product: split `A` into strict triangles `L`, `U`,
//!   sum `A . (L*U)` and divide by 2;
//! * edge-vertex product: count the entries of `E*A` equal to 2 (one per
//!   apex/edge pair) and divide by 3.
//!
//! Each division is asserted exact; a failing divisibility check signals an
//! input that is not a simple undirected adjacency matrix.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sparse::SparseMatrix;

/// Which formulation produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleAlgorithm {
    /// Edge-vertex product on adjacency and incidence.
    AdjacencyIncidence,
    /// Masked square of the adjacency matrix.
    HadamardSquare,
    /// Masked product of the strict triangular parts.
    LuMasked,
    /// Exhaustive triple enumeration.
    Oracle,
}

impl std::fmt::Display for TriangleAlgorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TriangleAlgorithm::AdjacencyIncidence => "adjacency-incidence",
            TriangleAlgorithm::HadamardSquare => "hadamard-square",
            TriangleAlgorithm::LuMasked => "lu-masked",
            TriangleAlgorithm::Oracle => "oracle",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleCount {
    pub count: u64,
    pub algorithm: TriangleAlgorithm,
}

/// One triangle, written as an apex vertex plus the opposite edge `(x, y)`,
/// `x < y`. Enumeration APIs produce each triangle once, canonicalized so
/// the apex is the smallest of the three vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TriangleRecord {
    pub apex: usize,
    pub x: usize,
    pub y: usize,
}

fn exact_div(total: i64, divisor: i64) -> Result<u64> {
    if total < 0 || total % divisor != 0 {
        return Err(Error::InvalidAdjacency {
            sum: total,
            divisor,
        });
    }
    Ok((total / divisor) as u64)
}

/// Counts triangles as `sum((A*A) . A) / 6`.
pub fn count_hadamard(adjacency: &SparseMatrix) -> Result<TriangleCount> {
    let square = adjacency.spgemm(adjacency)?;
    let masked = square.hadamard(adjacency)?;
    Ok(TriangleCount {
        count: exact_div(masked.sum_all(), 6)?,
        algorithm: TriangleAlgorithm::HadamardSquare,
    })
}

/// Counts triangles as `sum(A . (L*U)) / 2` where `L` and `U` are the strict
/// triangular parts of `A`.
pub fn count_lu(adjacency: &SparseMatrix) -> Result<TriangleCount> {
    let (lower, upper) = adjacency.triangular_split();
    let product = lower.spgemm(&upper)?;
    let masked = adjacency.hadamard(&product)?;
    Ok(TriangleCount {
        count: exact_div(masked.sum_all(), 2)?,
        algorithm: TriangleAlgorithm::LuMasked,
    })
}

fn apex_edge_cells(adjacency: &SparseMatrix, incidence: &SparseMatrix) -> Result<SparseMatrix> {
    if adjacency.nrows() != adjacency.ncols() || incidence.ncols() != adjacency.nrows() {
        return Err(Error::ShapeMismatch {
            op: "count_incidence",
            left: adjacency.shape(),
            right: incidence.shape(),
        });
    }
    // (E*A)(j, i) == 2 exactly when vertex i is adjacent to both endpoints
    // of edge j, i.e. one stored cell per (apex, edge) pair of a triangle.
    incidence.spgemm(adjacency)?.filter_eq(2)
}

/// Counts triangles from the edge-vertex product: every triangle has three
/// (apex, edge) pairs, so the number of cells equal to 2 in `E*A` is `3*n_T`.
pub fn count_incidence(
    adjacency: &SparseMatrix,
    incidence: &SparseMatrix,
) -> Result<TriangleCount> {
    let cells = apex_edge_cells(adjacency, incidence)?;
    Ok(TriangleCount {
        count: exact_div(cells.nnz() as i64, 3)?,
        algorithm: TriangleAlgorithm::AdjacencyIncidence,
    })
}

/// Like [`count_incidence`], additionally materializing one canonical
/// [`TriangleRecord`] per triangle (the cell whose apex is the smallest
/// vertex), sorted.
pub fn enumerate_incidence(
    adjacency: &SparseMatrix,
    incidence: &SparseMatrix,
) -> Result<(TriangleCount, Vec<TriangleRecord>)> {
    let cells = apex_edge_cells(adjacency, incidence)?;
    let count = TriangleCount {
        count: exact_div(cells.nnz() as i64, 3)?,
        algorithm: TriangleAlgorithm::AdjacencyIncidence,
    };
    let mut records = Vec::with_capacity(count.count as usize);
    for (edge, apex, _) in cells.iter() {
        let (endpoints, _) = incidence.row(edge);
        let (x, y) = (endpoints[0], endpoints[1]);
        if apex < x {
            records.push(TriangleRecord { apex, x, y });
        }
    }
    records.sort_unstable();
    debug_assert_eq!(records.len() as u64, count.count);
    Ok((count, records))
}

/// Exhaustively tests every vertex triple `i < j < k` for mutual adjacency.
///
/// Quadratic memory and cubic time in the vertex count; intended as a
/// verification oracle for graphs up to a couple thousand vertices.
pub fn oracle_enumerate(g: &Graph) -> (TriangleCount, Vec<TriangleRecord>) {
    let n = g.vertex_count();
    let mut adjacent = vec![false; n * n];
    for &(u, v) in g.edge_list().edges() {
        adjacent[u * n + v] = true;
        adjacent[v * n + u] = true;
    }
    let mut records = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if !adjacent[i * n + j] {
                continue;
            }
            for k in (j + 1)..n {
                if adjacent[i * n + k] && adjacent[j * n + k] {
                    records.push(TriangleRecord {
                        apex: i,
                        x: j,
                        y: k,
                    });
                }
            }
        }
    }
    (
        TriangleCount {
            count: records.len() as u64,
            algorithm: TriangleAlgorithm::Oracle,
        },
        records,
    )
}
