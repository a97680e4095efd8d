//! Facet-list input and output.
//!
//! `facet-lines`: one facet per line, whitespace-separated vertex labels,
//! `#` starts a comment. A label is an integer or a `:`-separated integer path.
//!
//! `facet-json`: `{"name": ..., "vertices": [...], "facets": [[...], ...]}`
//! where labels are integers or integer arrays; `name` and `vertices` are optional.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::simplicial::{mask_indices, SimplicialComplex, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComplexFormat {
    FacetLines,
    FacetJson,
}

impl ComplexFormat {
    /// `.json` means facet-json, anything else facet-lines.
    pub fn from_path(path: &std::path::Path) -> ComplexFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ComplexFormat::FacetJson,
            _ => ComplexFormat::FacetLines,
        }
    }
}

impl FromStr for ComplexFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "facet-lines" | "lines" => Ok(ComplexFormat::FacetLines),
            "facet-json" | "json" => Ok(ComplexFormat::FacetJson),
            other => Err(Error::domain(format!("unknown complex format {other:?}"))),
        }
    }
}

impl fmt::Display for ComplexFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexFormat::FacetLines => "facet-lines",
            ComplexFormat::FacetJson => "facet-json",
        })
    }
}

/// A parsed complex with its optional name.
#[derive(Debug, Clone)]
pub struct ComplexFile {
    pub name: Option<String>,
    pub complex: SimplicialComplex,
}

fn parse_label(tok: &str) -> std::result::Result<VertexLabel, String> {
    let path = tok
        .split(':')
        .map(|p| p.parse::<u32>().map_err(|_| format!("invalid vertex label {tok:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    VertexLabel::new(path).map_err(|e| e.to_string())
}

fn parse_lines(text: &str) -> Result<ComplexFile> {
    let mut facets: Vec<Vec<VertexLabel>> = Vec::new();
    let mut name = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let (body, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(n) = c.trim().strip_prefix("name:") {
                name.get_or_insert_with(|| n.trim().to_string());
            }
        }
        let mut facet = Vec::new();
        let mut rest = body;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let end = rest[start..].find(char::is_whitespace).map_or(rest.len(), |e| start + e);
            let tok = &rest[start..end];
            let column = offset + start + 1;
            let v = parse_label(tok).map_err(|message| Error::Parse { line, column, message })?;
            if facet.contains(&v) {
                return Err(Error::Parse {
                    line,
                    column,
                    message: format!("vertex {v} repeated in a facet"),
                });
            }
            facet.push(v);
            offset += end;
            rest = &rest[end..];
        }
        if !facet.is_empty() {
            facets.push(facet);
        }
    }
    if facets.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "no facets".into(),
        });
    }
    let mut vertices: Vec<VertexLabel> = facets.iter().flatten().cloned().collect();
    vertices.sort();
    vertices.dedup();
    Ok(ComplexFile {
        name,
        complex: SimplicialComplex::from_facets(vertices, &facets)?,
    })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonLabel {
    Int(u32),
    Path(Vec<u32>),
}

impl JsonLabel {
    fn label(self) -> Result<VertexLabel> {
        match self {
            JsonLabel::Int(v) => Ok(VertexLabel::int(v)),
            JsonLabel::Path(p) => VertexLabel::new(p),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonComplex {
    name: Option<String>,
    vertices: Option<Vec<JsonLabel>>,
    facets: Vec<Vec<JsonLabel>>,
}

fn parse_json(bytes: &[u8]) -> Result<ComplexFile> {
    let raw: JsonComplex = serde_json::from_slice(bytes).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let facets: Vec<Vec<VertexLabel>> = raw
        .facets
        .into_iter()
        .map(|f| f.into_iter().map(JsonLabel::label).collect())
        .collect::<Result<_>>()?;
    let vertices = match raw.vertices {
        Some(vs) => vs.into_iter().map(JsonLabel::label).collect::<Result<Vec<_>>>()?,
        None => {
            let mut vs: Vec<VertexLabel> = facets.iter().flatten().cloned().collect();
            vs.sort();
            vs.dedup();
            vs
        }
    };
    if vertices.is_empty() {
        return Err(Error::domain("the complex has no vertices"));
    }
    Ok(ComplexFile {
        name: raw.name,
        complex: SimplicialComplex::from_facets(vertices, &facets)?,
    })
}

/// Parses a complex; the closure of the facets is taken.
pub fn parse_complex(bytes: &[u8], format: ComplexFormat) -> Result<ComplexFile> {
    match format {
        ComplexFormat::FacetLines => {
            let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
                line: 1 + bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count(),
                column: 1,
                message: "input is not UTF-8".into(),
            })?;
            parse_lines(text)
        }
        ComplexFormat::FacetJson => parse_json(bytes),
    }
}

#[derive(Serialize)]
struct JsonOut<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<&'a str>,
    vertices: Vec<serde_json::Value>,
    facets: Vec<Vec<serde_json::Value>>,
}

fn label_json(v: &VertexLabel) -> serde_json::Value {
    match v.path() {
        [x] => serde_json::Value::from(*x),
        p => serde_json::Value::from(p.to_vec()),
    }
}

/// Canonical text of a complex: facets by size, then lexicographically.
pub fn emit_complex(k: &SimplicialComplex, name: Option<&str>, format: ComplexFormat) -> String {
    let facets: Vec<Vec<&VertexLabel>> = k
        .facets()
        .into_iter()
        .map(|f| mask_indices(f).into_iter().map(|i| &k.vertices()[i]).collect())
        .collect();
    match format {
        ComplexFormat::FacetLines => {
            let mut out = String::new();
            if let Some(n) = name {
                out.push_str(&format!("# name: {n}\n"));
            }
            for f in facets {
                let toks: Vec<String> = f.iter().map(|v| v.to_string()).collect();
                out.push_str(&toks.join(" "));
                out.push('\n');
            }
            out
        }
        ComplexFormat::FacetJson => {
            let doc = JsonOut {
                name,
                vertices: k.vertices().iter().map(label_json).collect(),
                facets: facets.iter().map(|f| f.iter().map(|v| label_json(v)).collect()).collect(),
            };
            let mut s = serde_json::to_string(&doc).expect("serializable");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(s: &str) -> Result<ComplexFile> {
        parse_complex(s.as_bytes(), ComplexFormat::FacetLines)
    }

    #[test]
    fn triangle_graph() {
        let k = lines("1 2\n2 3\n3 1").unwrap().complex;
        assert_eq!(k.f_vector(), vec![1, 3, 3]);
    }

    #[test]
    fn json_simplex() {
        let k = parse_complex(br#"{"vertices":[1,2,3],"facets":[[1,2,3]]}"#, ComplexFormat::FacetJson)
            .unwrap()
            .complex;
        assert_eq!(k.f_vector(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn duplicates_and_comments() {
        let f = lines("# name: c3\n1 2 # an edge\n2 1\n\n2 3\n1 3\n1 3\n").unwrap();
        assert_eq!(f.name.as_deref(), Some("c3"));
        assert_eq!(f.complex.facets().len(), 3);
    }

    #[test]
    fn error_positions() {
        match lines("1 2\n2  x3\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        match lines("1 2 1\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(lines("# nothing\n"), Err(Error::Parse { .. })));
        match parse_complex(b"{\"facets\": [[1,2],\n [3,]]}", ComplexFormat::FacetJson) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_complex(br#"{"vertices":[1],"facets":[[1,2]]}"#, ComplexFormat::FacetJson).is_err());
    }

    #[test]
    fn isolated_vertex_and_paths() {
        let f = parse_complex(br#"{"vertices":[[0,1],[0,2],[1,1]],"facets":[[[0,1],[0,2]]]}"#, ComplexFormat::FacetJson)
            .unwrap();
        assert_eq!(f.complex.facets().len(), 2);
        let text = emit_complex(&f.complex, None, ComplexFormat::FacetLines);
        assert_eq!(text, "1:1\n0:1 0:2\n");
        let back = lines(&text).unwrap().complex;
        assert!(back == f.complex);
    }

    #[test]
    fn round_trip_both_formats() {
        let k = lines("3 1 2\n2 4\n5").unwrap().complex;
        for fmt in [ComplexFormat::FacetLines, ComplexFormat::FacetJson] {
            let s = emit_complex(&k, Some("x"), fmt);
            let back = parse_complex(s.as_bytes(), fmt).unwrap();
            assert!(back.complex == k);
            assert_eq!(back.name.as_deref(), Some("x"));
        }
    }
}
