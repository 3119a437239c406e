//! The line-based graph text format.
//!
//! One graph per line, three fields separated by semicolons:
//!
//! ```text
//! line     := n ';' edges ';' features
//! n        := decimal node count
//! edges    := '' | edge (',' edge)*        edge := u '-' v
//! features := '' | row (',' row)*          row  := digit+
//! ```
//!
//! Edges are printed sorted with `u < v`. Feature rows are digit strings,
//! one per node, using `0-9` then `a-z` for digit values up to 35. Parsing
//! accepts exactly what printing emits, so a parse/print round trip is
//! byte-exact.

use super::{GraphError, LabeledGraph};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextFormatError {
    #[error("line {line}: expected 3 ';'-separated fields, got {got}")]
    FieldCount { line: usize, got: usize },
    #[error("line {line}: bad node count {text:?}")]
    BadNodeCount { line: usize, text: String },
    #[error("line {line}: bad edge {text:?}")]
    BadEdge { line: usize, text: String },
    #[error("line {line}: bad feature digit {ch:?}")]
    BadDigit { line: usize, ch: char },
    #[error("line {line}: {source}")]
    Graph {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error("feature digit {0} has no character form (max 35)")]
    DigitTooLarge(u8),
}

fn digit_char(d: u8) -> Result<char, TextFormatError> {
    match d {
        0..=9 => Ok((b'0' + d) as char),
        10..=35 => Ok((b'a' + d - 10) as char),
        other => Err(TextFormatError::DigitTooLarge(other)),
    }
}

fn digit_value(ch: char, line: usize) -> Result<u8, TextFormatError> {
    match ch {
        '0'..='9' => Ok(ch as u8 - b'0'),
        'a'..='z' => Ok(ch as u8 - b'a' + 10),
        _ => Err(TextFormatError::BadDigit { line, ch }),
    }
}

/// Formats one graph as a single line (no trailing newline).
pub fn format_graph(g: &LabeledGraph) -> Result<String, TextFormatError> {
    let edges = g
        .edges()
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(",");
    let features = match g.features() {
        None => String::new(),
        Some(rows) => {
            let mut encoded = Vec::with_capacity(rows.len());
            for row in rows {
                let mut s = String::with_capacity(row.len());
                for &d in row {
                    s.push(digit_char(d)?);
                }
                encoded.push(s);
            }
            encoded.join(",")
        }
    };
    Ok(format!("{};{};{}", g.n(), edges, features))
}

/// Parses one line of the text format. `line` is used in error messages
/// (1-based).
pub fn parse_graph_line(text: &str, line: usize) -> Result<LabeledGraph, TextFormatError> {
    let fields: Vec<&str> = text.split(';').collect();
    if fields.len() != 3 {
        return Err(TextFormatError::FieldCount {
            line,
            got: fields.len(),
        });
    }
    let n: usize = fields[0].parse().map_err(|_| TextFormatError::BadNodeCount {
        line,
        text: fields[0].to_string(),
    })?;
    let mut edges = Vec::new();
    if !fields[1].is_empty() {
        for part in fields[1].split(',') {
            let (u, v) = part.split_once('-').ok_or_else(|| TextFormatError::BadEdge {
                line,
                text: part.to_string(),
            })?;
            let u: usize = u.parse().map_err(|_| TextFormatError::BadEdge {
                line,
                text: part.to_string(),
            })?;
            let v: usize = v.parse().map_err(|_| TextFormatError::BadEdge {
                line,
                text: part.to_string(),
            })?;
            edges.push((u, v));
        }
    }
    let mut g =
        LabeledGraph::new(n, edges).map_err(|source| TextFormatError::Graph { line, source })?;
    if !fields[2].is_empty() {
        let mut rows = Vec::new();
        for row in fields[2].split(',') {
            let mut digits = Vec::with_capacity(row.len());
            for ch in row.chars() {
                digits.push(digit_value(ch, line)?);
            }
            rows.push(digits);
        }
        g = g
            .with_features(rows)
            .map_err(|source| TextFormatError::Graph { line, source })?;
    }
    Ok(g)
}

/// Parses a whole document, one graph per nonempty line.
pub fn parse_graphs(text: &str) -> Result<Vec<LabeledGraph>, TextFormatError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph_line(l, i + 1))
        .collect()
}

/// Formats many graphs, one line each, with a trailing newline.
pub fn format_graphs(graphs: &[LabeledGraph]) -> Result<String, TextFormatError> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&format_graph(g)?);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let g = LabeledGraph::new(4, [(2, 3), (0, 1), (1, 2)])
            .unwrap()
            .with_features(vec![vec![0, 1], vec![1, 0], vec![0, 0], vec![1, 1]])
            .unwrap();
        let line = format_graph(&g).unwrap();
        assert_eq!(line, "4;0-1,1-2,2-3;01,10,00,11");
        let parsed = parse_graph_line(&line, 1).unwrap();
        assert_eq!(parsed, g);
        assert_eq!(format_graph(&parsed).unwrap(), line);
    }

    #[test]
    fn featureless_and_edgeless() {
        let g = LabeledGraph::new(2, []).unwrap();
        let line = format_graph(&g).unwrap();
        assert_eq!(line, "2;;");
        assert_eq!(parse_graph_line(&line, 1).unwrap(), g);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(matches!(
            parse_graph_line("3;0-1", 4),
            Err(TextFormatError::FieldCount { line: 4, got: 2 })
        ));
        assert!(matches!(
            parse_graph_line("x;;", 1),
            Err(TextFormatError::BadNodeCount { .. })
        ));
        assert!(matches!(
            parse_graph_line("3;01;", 1),
            Err(TextFormatError::BadEdge { .. })
        ));
        assert!(matches!(
            parse_graph_line("2;0-1;0,!", 1),
            Err(TextFormatError::BadDigit { ch: '!', .. })
        ));
        assert!(matches!(
            parse_graph_line("2;0-5;", 1),
            Err(TextFormatError::Graph { .. })
        ));
    }

    #[test]
    fn larger_digits_use_letters() {
        let g = LabeledGraph::new(1, [])
            .unwrap()
            .with_features(vec![vec![15]])
            .unwrap();
        let line = format_graph(&g).unwrap();
        assert_eq!(line, "1;;f");
        assert_eq!(parse_graph_line(&line, 1).unwrap(), g);
    }
}
