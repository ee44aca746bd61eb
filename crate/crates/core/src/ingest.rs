//! Readers and writers for the two edge-list file formats, plus the
//! normalization pipeline that turns raw triples into a canonical [`Graph`].
//!
//! TSV files carry one `u<TAB>v<TAB>weight` triple per line with 1-based
//! vertex ids; undirected datasets conventionally list every edge in both
//! orientations. MatrixMarket files use the ASCII coordinate format (see
//! math.nist.gov/MatrixMarket). Weights are required on read but their
//! values are ignored: the graphs are unweighted, and tolerating arbitrary
//! weight fields maximizes compatibility with published datasets.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};

/// Parsed but not yet normalized edge triples. May contain self-loops,
/// duplicates, and both orientations of an edge.
#[derive(Debug, Clone, Default)]
pub struct RawTriples {
    /// `(u, v, weight)` with 1-based vertex ids.
    pub triples: Vec<(usize, usize, i64)>,
    /// Vertex count declared by the format, when it declares one.
    pub declared_n: Option<usize>,
}

impl RawTriples {
    /// Largest vertex id mentioned anywhere in the triples (0 when empty).
    pub fn max_vertex_id(&self) -> usize {
        self.triples
            .iter()
            .map(|&(u, v, _)| u.max(v))
            .max()
            .unwrap_or(0)
    }
}

/// Input format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    Tsv,
    Mmio,
}

impl FileFormat {
    pub fn from_extension(path: &std::path::Path) -> Option<FileFormat> {
        match path.extension()?.to_str()? {
            "tsv" => Some(FileFormat::Tsv),
            "mtx" | "mmio" => Some(FileFormat::Mmio),
            _ => None,
        }
    }
}

impl std::str::FromStr for FileFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "tsv" => Ok(FileFormat::Tsv),
            "mmio" | "mtx" => Ok(FileFormat::Mmio),
            other => Err(format!("unknown format '{other}' (expected tsv or mmio)")),
        }
    }
}

/// Parses tab-separated `u v weight` triples, one per newline-terminated
/// line. Accepts `\n` and `\r\n` line endings.
pub fn parse_tsv<R: BufRead>(reader: R) -> Result<RawTriples> {
    let mut triples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let mut fields = line.split('\t');
        let u = parse_vertex_id(fields.next(), line_no)?;
        let v = parse_vertex_id(fields.next(), line_no)?;
        let w = match fields.next() {
            Some(s) => s
                .parse::<i64>()
                .map_err(|_| Error::parse(line_no, format!("weight '{s}' is not an integer")))?,
            None => return Err(Error::parse(line_no, "expected 3 tab-separated fields")),
        };
        if fields.next().is_some() {
            return Err(Error::parse(line_no, "expected 3 tab-separated fields"));
        }
        triples.push((u, v, w));
    }
    Ok(RawTriples {
        triples,
        declared_n: None,
    })
}

fn parse_vertex_id(field: Option<&str>, line_no: usize) -> Result<usize> {
    let s = field.ok_or_else(|| Error::parse(line_no, "expected 3 tab-separated fields"))?;
    let id = s
        .parse::<usize>()
        .map_err(|_| Error::parse(line_no, format!("vertex id '{s}' is not an integer")))?;
    if id < 1 {
        return Err(Error::parse(line_no, "vertex ids start at 1"));
    }
    Ok(id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmioField {
    Pattern,
    Integer,
    Real,
}

/// Parses a MatrixMarket coordinate file. `symmetric` storage is expanded to
/// both orientations; `pattern` entries carry an implicit weight of 1. The
/// inferred vertex count is the larger declared dimension.
pub fn parse_mmio<R: BufRead>(reader: R) -> Result<RawTriples> {
    let mut lines = reader.lines().enumerate();

    let (idx, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file: missing MatrixMarket header"))?;
    let header = header?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 5 || !tokens[0].eq_ignore_ascii_case("%%MatrixMarket") {
        return Err(Error::parse(
            idx + 1,
            "header must be '%%MatrixMarket matrix coordinate <field> <symmetry>'",
        ));
    }
    if !tokens[1].eq_ignore_ascii_case("matrix") {
        return Err(Error::parse(
            idx + 1,
            format!("unsupported object '{}'", tokens[1]),
        ));
    }
    if !tokens[2].eq_ignore_ascii_case("coordinate") {
        return Err(Error::parse(
            idx + 1,
            format!("unsupported format '{}'", tokens[2]),
        ));
    }
    let field = if tokens[3].eq_ignore_ascii_case("pattern") {
        MmioField::Pattern
    } else if tokens[3].eq_ignore_ascii_case("integer") {
        MmioField::Integer
    } else if tokens[3].eq_ignore_ascii_case("real") {
        MmioField::Real
    } else {
        return Err(Error::parse(
            idx + 1,
            format!("unsupported field '{}'", tokens[3]),
        ));
    };
    let symmetric = if tokens[4].eq_ignore_ascii_case("symmetric") {
        true
    } else if tokens[4].eq_ignore_ascii_case("general") {
        false
    } else {
        return Err(Error::parse(
            idx + 1,
            format!("unsupported symmetry '{}'", tokens[4]),
        ));
    };

    // Size line: first non-comment, non-blank line after the header.
    let (nrows, ncols, nnz) = loop {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| Error::parse(2, "missing size line"))?;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(idx + 1, "size line must be 'nrows ncols nnz'"));
        }
        let dims: Vec<usize> = parts
            .iter()
            .map(|p| {
                p.parse::<usize>().map_err(|_| {
                    Error::parse(idx + 1, format!("'{p}' is not a non-negative integer"))
                })
            })
            .collect::<Result<_>>()?;
        break (dims[0], dims[1], dims[2]);
    };

    let mut triples = Vec::with_capacity(if symmetric { 2 * nnz } else { nnz });
    let mut seen = 0usize;
    for (idx, line) in lines {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        if seen == nnz {
            return Err(Error::parse(
                line_no,
                format!("more entries than the declared {nnz}"),
            ));
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let expected = if field == MmioField::Pattern { 2 } else { 3 };
        if parts.len() != expected {
            return Err(Error::parse(
                line_no,
                format!("expected {expected} fields, found {}", parts.len()),
            ));
        }
        let i: usize = parts[0].parse().map_err(|_| {
            Error::parse(
                line_no,
                format!("row index '{}' is not an integer", parts[0]),
            )
        })?;
        let j: usize = parts[1].parse().map_err(|_| {
            Error::parse(
                line_no,
                format!("column index '{}' is not an integer", parts[1]),
            )
        })?;
        if i < 1 || i > nrows {
            return Err(Error::parse(
                line_no,
                format!("row index {i} outside declared range 1..={nrows}"),
            ));
        }
        if j < 1 || j > ncols {
            return Err(Error::parse(
                line_no,
                format!("column index {j} outside declared range 1..={ncols}"),
            ));
        }
        let w = match field {
            MmioField::Pattern => 1,
            MmioField::Integer => parts[2].parse::<i64>().map_err(|_| {
                Error::parse(line_no, format!("value '{}' is not an integer", parts[2]))
            })?,
            // Real-valued weights are tolerated and truncated; the value is
            // discarded by normalization anyway.
            MmioField::Real => parts[2].parse::<f64>().map_err(|_| {
                Error::parse(line_no, format!("value '{}' is not a number", parts[2]))
            })? as i64,
        };
        triples.push((i, j, w));
        if symmetric && i != j {
            triples.push((j, i, w));
        }
        seen += 1;
    }
    if seen != nnz {
        return Err(Error::parse(
            0,
            format!("declared {nnz} entries but file contains {seen}"),
        ));
    }
    Ok(RawTriples {
        triples,
        declared_n: Some(nrows.max(ncols)),
    })
}

/// Normalizes raw triples into a canonical graph: self-loops dropped, both
/// orientations folded into one canonical pair, duplicates removed, ids
/// shifted to 0-based. Total on any parseable input.
pub fn normalize(raw: &RawTriples) -> Graph {
    let observed = raw.max_vertex_id();
    let n = raw.declared_n.unwrap_or(0).max(observed);
    let mut pairs: Vec<(usize, usize)> = raw
        .triples
        .iter()
        .filter(|&&(u, v, _)| u != v)
        .map(|&(u, v, _)| (u.min(v) - 1, u.max(v) - 1))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let edges = EdgeList::new(n, pairs).expect("normalized pairs are canonical by construction");
    Graph::new(edges)
}

/// Parses and normalizes in one step.
pub fn read_graph<R: BufRead>(
    format: FileFormat,
    reader: R,
    n_override: Option<usize>,
) -> Result<Graph> {
    let mut raw = match format {
        FileFormat::Tsv => parse_tsv(reader)?,
        FileFormat::Mmio => parse_mmio(reader)?,
    };
    if let Some(n) = n_override {
        let needed = raw.max_vertex_id();
        if n < needed {
            return Err(Error::InvalidEdgeList(format!(
                "vertex count override {n} is below the largest id {needed} in the file"
            )));
        }
        raw.declared_n = Some(n);
    }
    Ok(normalize(&raw))
}

/// Writes the undirected TSV layout: both orientations of every edge,
/// 1-based ids, weight 1, `\n` line endings.
pub fn write_tsv<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    for &(u, v) in g.edge_list().edges() {
        writeln!(w, "{}\t{}\t1", u + 1, v + 1)?;
        writeln!(w, "{}\t{}\t1", v + 1, u + 1)?;
    }
    Ok(())
}

/// Writes MatrixMarket `coordinate pattern symmetric` with each edge stored
/// once in the lower-triangular (row > column) orientation.
pub fn write_mmio<W: Write>(g: &Graph, mut w: W) -> Result<()> {
    let n = g.vertex_count();
    writeln!(w, "%%MatrixMarket matrix coordinate pattern symmetric")?;
    writeln!(w, "{} {} {}", n, n, g.edge_count())?;
    for &(u, v) in g.edge_list().edges() {
        writeln!(w, "{} {}", v + 1, u + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tsv(s: &str) -> RawTriples {
        parse_tsv(s.as_bytes()).unwrap()
    }

    #[test]
    fn parse_tsv_basic_layout() {
        let raw = tsv("1\t2\t1\n2\t1\t1\n");
        assert_eq!(raw.triples, vec![(1, 2, 1), (2, 1, 1)]);
        assert_eq!(raw.declared_n, None);
    }

    #[test]
    fn parse_tsv_empty_and_self_loop() {
        assert!(tsv("").triples.is_empty());
        // Self-loops are accepted at the parse stage and dropped later.
        assert_eq!(tsv("3\t3\t1\n").triples, vec![(3, 3, 1)]);
    }

    #[test]
    fn parse_tsv_accepts_crlf_and_arbitrary_weights() {
        let raw = tsv("1\t2\t7\r\n3\t4\t-2\r\n");
        assert_eq!(raw.triples, vec![(1, 2, 7), (3, 4, -2)]);
    }

    #[test]
    fn parse_tsv_errors_carry_line_numbers() {
        let err = parse_tsv("1\t2\t1\n1\t2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");

        let err = parse_tsv("x\t2\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = parse_tsv("0\t2\t1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));

        let err = parse_tsv("1\t2\t1\t9\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn parse_mmio_symmetric_expansion() {
        let src = "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 1\n2 1\n";
        let raw = parse_mmio(src.as_bytes()).unwrap();
        assert_eq!(raw.triples, vec![(2, 1, 1), (1, 2, 1)]);
        assert_eq!(raw.declared_n, Some(3));
    }

    #[test]
    fn parse_mmio_general_keeps_both_orientations() {
        let src =
            "%%MatrixMarket matrix coordinate integer general\n% comment\n3 3 2\n1 2 1\n2 1 1\n";
        let raw = parse_mmio(src.as_bytes()).unwrap();
        assert_eq!(raw.triples, vec![(1, 2, 1), (2, 1, 1)]);
    }

    #[test]
    fn parse_mmio_header_only() {
        let src = "%%MatrixMarket matrix coordinate pattern general\n4 4 0\n";
        let raw = parse_mmio(src.as_bytes()).unwrap();
        assert!(raw.triples.is_empty());
        assert_eq!(raw.declared_n, Some(4));
    }

    #[test]
    fn parse_mmio_rejects_malformed_input() {
        assert!(
            parse_mmio("%%MatrixMarket vector coordinate real general\n1 1 0\n".as_bytes())
                .is_err()
        );
        assert!(parse_mmio("%%MatrixMarket matrix array real general\n1 1\n".as_bytes()).is_err());
        assert!(parse_mmio("not a header\n1 1 0\n".as_bytes()).is_err());
        // nnz mismatch, both directions.
        assert!(parse_mmio(
            "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n".as_bytes()
        )
        .is_err());
        assert!(parse_mmio(
            "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n1 2\n2 3\n".as_bytes()
        )
        .is_err());
        // index outside declared range
        assert!(parse_mmio(
            "%%MatrixMarket matrix coordinate pattern general\n3 3 1\n4 1\n".as_bytes()
        )
        .is_err());
    }

    #[test]
    fn parse_mmio_real_field_tolerated() {
        let src = "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 1.0\n";
        let raw = parse_mmio(src.as_bytes()).unwrap();
        assert_eq!(raw.triples, vec![(1, 2, 1)]);
    }

    #[test]
    fn normalize_dedupes_and_drops_loops() {
        let raw = RawTriples {
            triples: vec![(1, 2, 1), (2, 1, 1), (3, 3, 1)],
            declared_n: None,
        };
        let g = normalize(&raw);
        assert_eq!(g.edge_list().edges(), &[(0, 1)]);
        // The self-loop vertex still counts toward n.
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn normalize_symmetrizes_directed_edges() {
        let raw = RawTriples {
            triples: vec![(3, 2, 1)],
            declared_n: None,
        };
        let g = normalize(&raw);
        assert_eq!(g.edge_list().edges(), &[(1, 2)]);
        assert_eq!(g.vertex_count(), 3);

        let empty = normalize(&RawTriples::default());
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.edge_count(), 0);
    }

    #[test]
    fn normalize_is_idempotent() {
        let raw = RawTriples {
            triples: vec![(5, 1, 1), (1, 5, 1), (2, 4, 1), (4, 4, 1)],
            declared_n: None,
        };
        let g = normalize(&raw);
        let again = RawTriples {
            triples: g
                .edge_list()
                .edges()
                .iter()
                .map(|&(u, v)| (u + 1, v + 1, 1))
                .collect(),
            declared_n: Some(g.vertex_count()),
        };
        assert_eq!(normalize(&again), g);
    }

    #[test]
    fn write_tsv_golden_single_edge() {
        let g = Graph::from_edges(2, vec![(0, 1)]).unwrap();
        let mut out = Vec::new();
        write_tsv(&g, &mut out).unwrap();
        assert_eq!(out, b"1\t2\t1\n2\t1\t1\n");
    }

    #[test]
    fn write_mmio_layout() {
        let empty = Graph::from_edges(3, vec![]).unwrap();
        let mut out = Vec::new();
        write_mmio(&empty, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 0\n"
        );

        let k3 = Graph::from_edges(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        let mut out = Vec::new();
        write_mmio(&k3, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(
            text,
            "%%MatrixMarket matrix coordinate pattern symmetric\n3 3 3\n2 1\n3 1\n3 2\n"
        );
    }

    #[test]
    fn read_graph_applies_and_validates_override() {
        let g = read_graph(FileFormat::Tsv, "1\t2\t1\n".as_bytes(), Some(10)).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert!(read_graph(FileFormat::Tsv, "1\t5\t1\n".as_bytes(), Some(3)).is_err());
    }

    #[test]
    fn tsv_round_trip_through_normalize() {
        let g = Graph::from_edges(4, vec![(0, 1), (0, 3), (2, 3)]).unwrap();
        let mut bytes = Vec::new();
        write_tsv(&g, &mut bytes).unwrap();
        let back = normalize(&parse_tsv(bytes.as_slice()).unwrap());
        assert_eq!(back, g);
    }
}
