use std::collections::BTreeMap;

use super::IngestError;
use crate::complex::CellComplex;
use crate::generators;

/// A polygonal surface read from an OFF file.
#[derive(Clone, Debug)]
pub struct OffImport {
    pub complex: CellComplex,
    /// Vertex positions, kept as metadata only.
    pub coordinates: Vec<[f64; 3]>,
    /// Edges `(low, high)` lying in a number of faces other than two.
    pub non_manifold_edges: Vec<(usize, usize)>,
}

struct Tokens<'a> {
    items: Vec<(usize, usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            let mut offset = 0;
            for tok in content.split_whitespace() {
                let at = content[offset..]
                    .find(tok)
                    .expect("token comes from this line")
                    + offset;
                items.push((n + 1, at + 1, tok));
                offset = at + tok.len();
            }
        }
        Self { items, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> IngestError {
        let (line, column) = match self.items.get(self.pos.saturating_sub(1)) {
            Some(&(l, c, _)) => (l, c),
            None => (1, 1),
        };
        IngestError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str, IngestError> {
        let item = self.items.get(self.pos).copied();
        self.pos += 1;
        match item {
            Some((_, _, tok)) => Ok(tok),
            None => Err(self.error(format!("unexpected end of file, expected {what}"))),
        }
    }

    fn parse<T: std::str::FromStr>(&mut self, what: &str) -> Result<T, IngestError> {
        let tok = self.next(what)?;
        tok.parse()
            .map_err(|_| self.error(format!("expected {what}, found `{tok}`")))
    }

    fn line_of_previous(&self) -> usize {
        self.items[self.pos - 1].0
    }

    /// Skips the rest of the current line (face colour values).
    fn skip_line(&mut self, line: usize) {
        while self.items.get(self.pos).is_some_and(|&(l, _, _)| l == line) {
            self.pos += 1;
        }
    }
}

/// Parses an OFF mesh into a 2-complex.
///
/// Edges are oriented from the lower to the higher vertex index, and each
/// face meets its edges with the sign of its traversal direction. An edge
/// shared by a number of faces other than two is reported in
/// [`OffImport::non_manifold_edges`]; the complex is still returned.
pub fn parse_off(text: &str) -> Result<OffImport, IngestError> {
    let mut t = Tokens::new(text);
    let header = t.next("OFF header")?;
    if header != "OFF" {
        return Err(t.error(format!("expected `OFF` header, found `{header}`")));
    }
    let nv: usize = t.parse("vertex count")?;
    let nf: usize = t.parse("face count")?;
    let _edges: usize = t.parse("edge count")?;
    let mut coordinates = Vec::with_capacity(nv);
    for _ in 0..nv {
        let x = t.parse("x coordinate")?;
        let y = t.parse("y coordinate")?;
        let z = t.parse("z coordinate")?;
        t.skip_line(t.line_of_previous());
        coordinates.push([x, y, z]);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let k: usize = t.parse("face size")?;
        let line = t.line_of_previous();
        if k < 3 {
            return Err(t.error(format!("face has {k} vertices, at least 3 are required")));
        }
        let mut face = Vec::with_capacity(k);
        for _ in 0..k {
            let v: usize = t.parse("vertex index")?;
            if v >= nv {
                return Err(t.error(format!(
                    "vertex index {v} out of range (file has {nv} vertices)"
                )));
            }
            face.push(v);
        }
        t.skip_line(line);
        faces.push(face);
    }
    if let Some(&(line, column, tok)) = t.items.get(t.pos) {
        return Err(IngestError::Parse {
            line,
            column,
            message: format!("unexpected trailing token `{tok}`"),
        });
    }
    let mut face_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for face in &faces {
        for k in 0..face.len() {
            let (a, b) = (face[k], face[(k + 1) % face.len()]);
            *face_counts.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    let complex = generators::polygon_surface(nv, &faces)?;
    Ok(OffImport {
        complex,
        coordinates,
        non_manifold_edges: face_counts
            .into_iter()
            .filter(|&(_, n)| n != 2)
            .map(|(e, _)| e)
            .collect(),
    })
}
