//! Canonical undirected simple-graph representation and the adjacency and
//! incidence constructions the kernels consume.
//!
//! Vertex ids are 0-based and dense internally; the 1-based shift used by the
//! file formats happens exactly once, at the I/O boundary. Edge indices are
//! defined by the canonical sort order of the edge list, so incidence
//! matrices are reproducible bit-for-bit across runs.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Sorted list of canonical vertex pairs `(u, v)` with `u < v`.
///
/// The position of a pair in the list is its edge index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl EdgeList {
    /// Builds a canonical edge list over `n` vertices. Pairs may arrive in
    /// any order but must already be oriented `u < v`; self-loops,
    /// duplicates, and out-of-range endpoints are rejected.
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        edges.sort_unstable();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= v {
                return Err(Error::InvalidEdgeList(format!(
                    "pair ({u}, {v}) is not canonically oriented (need u < v)"
                )));
            }
            if v >= n {
                return Err(Error::InvalidEdgeList(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            if i > 0 && edges[i - 1] == (u, v) {
                return Err(Error::InvalidEdgeList(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(EdgeList { n, edges })
    }

    pub fn empty(n: usize) -> Self {
        EdgeList {
            n,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Undirected simple graph with lazily built adjacency and incidence
/// matrices. Both matrices are computed at most once and then shared
/// read-only.
#[derive(Debug, Clone)]
pub struct Graph {
    edge_list: EdgeList,
    adjacency: OnceLock<SparseMatrix>,
    incidence: OnceLock<SparseMatrix>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.edge_list == other.edge_list
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(edge_list: EdgeList) -> Self {
        Graph {
            edge_list,
            adjacency: OnceLock::new(),
            incidence: OnceLock::new(),
        }
    }

    /// Convenience constructor from canonical pairs.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Ok(Graph::new(EdgeList::new(n, edges)?))
    }

    pub fn edge_list(&self) -> &EdgeList {
        &self.edge_list
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_list.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.edges.len()
    }

    /// The n-by-n symmetric binary adjacency matrix with empty diagonal.
    pub fn adjacency(&self) -> &SparseMatrix {
        self.adjacency
            .get_or_init(|| build_adjacency(&self.edge_list))
    }

    /// The m-by-n unoriented incidence matrix; row i holds 1s at the two
    /// endpoint columns of edge i.
    pub fn incidence(&self) -> &SparseMatrix {
        self.incidence
            .get_or_init(|| build_incidence(&self.edge_list))
    }
}

/// Symmetric binary adjacency matrix of a canonical edge list.
pub fn build_adjacency(e: &EdgeList) -> SparseMatrix {
    let n = e.n;
    let mut offsets = vec![0usize; n + 1];
    for &(u, v) in &e.edges {
        offsets[u + 1] += 1;
        offsets[v + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let nnz = offsets[n];
    let mut cursor = offsets[..n].to_vec();
    let mut cols = vec![0usize; nnz];
    // Scanning canonical edges in order fills every row's neighbors in
    // increasing order: neighbors below the row arrive during earlier edge
    // blocks, neighbors above during the row's own block.
    for &(u, v) in &e.edges {
        cols[cursor[u]] = v;
        cursor[u] += 1;
        cols[cursor[v]] = u;
        cursor[v] += 1;
    }
    SparseMatrix::from_raw_parts(n, n, offsets, cols, vec![1; nnz])
}

/// Unoriented incidence matrix of a canonical edge list.
pub fn build_incidence(e: &EdgeList) -> SparseMatrix {
    let m = e.edges.len();
    let mut offsets = Vec::with_capacity(m + 1);
    let mut cols = Vec::with_capacity(2 * m);
    offsets.push(0);
    for &(u, v) in &e.edges {
        cols.push(u);
        cols.push(v);
        offsets.push(cols.len());
    }
    SparseMatrix::from_raw_parts(m, e.n, offsets, cols, vec![1; 2 * m])
}

fn incidence_row_endpoints(e_mat: &SparseMatrix, row: usize) -> Result<(usize, usize)> {
    let (cols, vals) = e_mat.row(row);
    if cols.len() != 2 || vals[0] != 1 || vals[1] != 1 {
        return Err(Error::MalformedIncidence {
            row,
            nnz: cols.len(),
        });
    }
    Ok((cols[0], cols[1]))
}

/// Rebuilds the adjacency matrix encoded by an incidence matrix.
///
/// This equals the gram product of the incidence matrix with its own
/// transpose, minus that product's diagonal (the vertex degrees). Duplicate
/// incidence rows propagate as off-diagonal entries greater than one.
pub fn adjacency_from_incidence(e_mat: &SparseMatrix) -> Result<SparseMatrix> {
    let n = e_mat.ncols();
    let mut triplets = Vec::with_capacity(2 * e_mat.nrows());
    for row in 0..e_mat.nrows() {
        let (u, v) = incidence_row_endpoints(e_mat, row)?;
        triplets.push((u, v, 1));
        triplets.push((v, u, 1));
    }
    SparseMatrix::from_triplets(n, n, triplets)
}

/// Extracts the canonical edge list an incidence matrix encodes.
pub fn edge_list_from_incidence(e_mat: &SparseMatrix) -> Result<EdgeList> {
    let mut pairs = Vec::with_capacity(e_mat.nrows());
    for row in 0..e_mat.nrows() {
        let (u, v) = incidence_row_endpoints(e_mat, row)?;
        pairs.push((u, v));
    }
    pairs.sort_unstable();
    for w in pairs.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
    }
    EdgeList::new(e_mat.ncols(), pairs)
}
