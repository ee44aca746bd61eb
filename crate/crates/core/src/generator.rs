//! Synthetic image-grid graphs with analytic ground truth.
//!
//! An M-by-M pixel grid becomes a graph with one vertex per pixel and an
//! undirected edge between each pixel and its in-bounds 8-neighbors. Node,
//! edge, and triangle counts all have closed forms, which makes these graphs
//! self-verifying benchmark inputs at any scale.

use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};

/// Grid size, given either directly or as a power-of-two exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSpec {
    /// Side length M (at least 2).
    Side(usize),
    /// M = 2^n. The benchmark suite uses n in 8..=13.
    Exponent(u32),
}

impl GridSpec {
    pub fn side(&self) -> Result<usize> {
        let m = match *self {
            GridSpec::Side(m) => m,
            GridSpec::Exponent(n) => 1usize
                .checked_shl(n)
                .ok_or(Error::InvalidGridSide { side: usize::MAX })?,
        };
        if m < 2 {
            return Err(Error::InvalidGridSide { side: m });
        }
        Ok(m)
    }
}

/// Reference counts for the power-of-two grid suite, as published with the
/// benchmark: `(exponent, nodes, edges, listed_triangles)`.
///
/// The listed triangle column counts every unordered triangle twice; the
/// unordered count produced by the kernels here is half of it (see
/// [`triangle_count`], which the brute-force oracle confirms at small sizes).
pub const GRID_REFERENCE_COUNTS: [(u32, u64, u64, u64); 6] = [
    (8, 65_536, 260_610, 520_200),
    (9, 262_144, 1_045_506, 2_088_968),
    (10, 1_048_576, 4_188_162, 8_372_232),
    (11, 4_194_304, 16_764_930, 33_521_672),
    (12, 16_777_216, 67_084_290, 134_152_200),
    (13, 67_108_864, 268_386_306, 536_739_848),
];

/// Builds the 8-neighbor grid graph for the given spec.
///
/// Pixel `(r, c)` has vertex id `r*M + c`; edges come out in canonical
/// sorted order, so the output is byte-identical across runs.
pub fn grid_graph(spec: GridSpec) -> Result<Graph> {
    let m = spec.side()?;
    let n = m * m;
    let mut edges = Vec::with_capacity(edge_count(m) as usize);
    for r in 0..m {
        for c in 0..m {
            let id = r * m + c;
            // Neighbors with a larger id, in increasing order: east, then
            // the southwest/south/southeast row below.
            if c + 1 < m {
                edges.push((id, id + 1));
            }
            if r + 1 < m {
                if c > 0 {
                    edges.push((id, id + m - 1));
                }
                edges.push((id, id + m));
                if c + 1 < m {
                    edges.push((id, id + m + 1));
                }
            }
        }
    }
    debug_assert_eq!(edges.len() as u64, edge_count(m));
    Ok(Graph::new(EdgeList::new(n, edges)?))
}

/// Closed-form edge count of the M-by-M 8-neighbor grid: `2(M-1)(2M-1)`.
///
/// Horizontal and vertical runs contribute `2M(M-1)` edges and the two
/// diagonal directions `2(M-1)^2` more.
pub fn edge_count(m: usize) -> u64 {
    let m = m as u64;
    2 * (m - 1) * (2 * m - 1)
}

/// Closed-form unordered triangle count of the grid: `4(M-1)^2`.
///
/// Any three mutually adjacent pixels fit in one 2x2 cell, each of the
/// `(M-1)^2` cells is a 4-clique contributing 4 triangles, and no triangle
/// spans two cells. The brute-force oracle confirms this at small M; the
/// published reference table lists exactly twice this value.
pub fn triangle_count(m: usize) -> u64 {
    let m = m as u64;
    4 * (m - 1) * (m - 1)
}
