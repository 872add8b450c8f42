use std::collections::{HashMap, HashSet};

use super::IngestError;
use crate::complex::CellComplex;
use crate::generators;

/// A graph read from an edge list, with the original vertex names.
#[derive(Clone, Debug)]
pub struct EdgeListImport {
    pub complex: CellComplex,
    /// `vertex_names[i]` is the name of vertex `d0:i`.
    pub vertex_names: Vec<String>,
}

/// Parses one edge `u v` per line.
///
/// Vertices are numbered by first occurrence and every edge is oriented
/// from the earlier to the later vertex (`∂e = later − earlier`). Blank
/// lines and `#` comments are skipped; a line with a single name adds an
/// isolated vertex.
pub fn parse_edge_list(text: &str) -> Result<EdgeListImport, IngestError> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    let mut intern = |name: &str| -> usize {
        *index.entry(name.to_owned()).or_insert_with(|| {
            names.push(name.to_owned());
            names.len() - 1
        })
    };
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [v] => {
                intern(v);
            }
            [a, b] => {
                if a == b {
                    return Err(IngestError::SelfLoop {
                        line,
                        vertex: (*a).to_owned(),
                    });
                }
                let (i, j) = (intern(a), intern(b));
                if !seen.insert((i.min(j), i.max(j))) {
                    return Err(IngestError::DuplicateEdge {
                        line,
                        a: (*a).to_owned(),
                        b: (*b).to_owned(),
                    });
                }
                edges.push((i, j));
            }
            _ => {
                let column = raw.find(tokens[2]).map_or(1, |c| c + 1);
                return Err(IngestError::Parse {
                    line,
                    column,
                    message: "expected `u v` or a single vertex name".to_owned(),
                });
            }
        }
    }
    if names.is_empty() {
        return Err(IngestError::Parse {
            line: 1,
            column: 1,
            message: "edge list has no vertices".to_owned(),
        });
    }
    let complex = generators::graph(names.len(), &edges)?;
    Ok(EdgeListImport {
        complex,
        vertex_names: names,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::CellId;

    #[test]
    fn path_and_complete_graph() {
        let g = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(g.complex.counts(), [3, 2]);
        assert_eq!(g.complex.euler_characteristic(), 1);
        assert_eq!(g.vertex_names, ["a", "b", "c"]);
        let k4 = parse_edge_list("# K4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n\n").unwrap();
        assert_eq!(k4.complex.len(), 10);
    }

    #[test]
    fn orientation_follows_first_occurrence() {
        let g = parse_edge_list("y x").unwrap();
        // y = d0:0, x = d0:1, so ∂e = x − y
        assert_eq!(
            g.complex.incidence(CellId::new(1, 0), CellId::new(0, 1)),
            Some(1)
        );
        assert_eq!(
            g.complex.incidence(CellId::new(1, 0), CellId::new(0, 0)),
            Some(-1)
        );
    }

    #[test]
    fn rejects_loops_duplicates_and_junk() {
        assert_eq!(
            parse_edge_list("a a").unwrap_err(),
            IngestError::SelfLoop {
                line: 1,
                vertex: "a".into()
            }
        );
        assert!(matches!(
            parse_edge_list("a b\nb a").unwrap_err(),
            IngestError::DuplicateEdge { line: 2, .. }
        ));
        assert!(matches!(
            parse_edge_list("a b c").unwrap_err(),
            IngestError::Parse {
                line: 1,
                column: 5,
                ..
            }
        ));
        assert!(parse_edge_list("\n# nothing\n").is_err());
    }

    #[test]
    fn isolated_vertices() {
        let g = parse_edge_list("a b\nc").unwrap();
        assert_eq!(g.complex.counts(), [3, 1]);
    }
}
