//! Plain-text edge lists: one `u v` pair per line, `#` comments, blank
//! lines ignored.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{AsGraph, AsNumber};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<AsGraph, EdgeListError> {
    let mut g = AsGraph::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<AsNumber, EdgeListError> {
            let tok =
                tok.ok_or_else(|| EdgeListError::Parse { line: n + 1, reason: "expected two AS numbers".into() })?;
            tok.parse().map_err(|_| EdgeListError::Parse { line: n + 1, reason: format!("invalid AS number {tok:?}") })
        };
        let u = parse(fields.next())?;
        let v = parse(fields.next())?;
        if fields.next().is_some() {
            return Err(EdgeListError::Parse { line: n + 1, reason: "trailing fields".into() });
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Writes `header` lines as `# ` comments followed by the sorted edges.
pub fn write_edge_list<W: Write>(g: &AsGraph, header: &[String], mut w: W) -> io::Result<()> {
    for h in header {
        writeln!(w, "# {h}")?;
    }
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_comments_and_blanks() {
        let text = "# a comment\n1 2\n\n  2 3  \n# x\n3 1\n2 1\n";
        let g = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
    }

    #[test]
    fn rejects_garbage() {
        let err = read_edge_list("1 2\n1 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, EdgeListError::Parse { line: 2, .. }));
        assert!(read_edge_list("1\n".as_bytes()).is_err());
        assert!(read_edge_list("1 2 3\n".as_bytes()).is_err());
    }

    #[test]
    fn round_trip_preserves_large_asns() {
        let g = AsGraph::from_edges([(4_294_967_295u32, 1u32), (1, 4_200_000_000)]);
        let mut buf = Vec::new();
        write_edge_list(&g, &["date: 2009-01".to_string()], &mut buf).unwrap();
        let back = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(back, g);
        assert!(String::from_utf8(buf).unwrap().starts_with("# date: 2009-01\n1 4200000000\n"));
    }
}
