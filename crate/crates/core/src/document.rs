//! JSON documents for images, maps, and paths.
//!
//! An image document has the keys `n`, `u`, `points`, and optionally `edges`
//! and `name`:
//!
//! ```json
//! {"n": 2, "u": 1, "points": [[0,0],[1,0],[1,1],[0,1]], "name": "square4"}
//! ```
//!
//! When `edges` is present the image uses exactly those edges and `u` may be
//! omitted. A map document names its domain and codomain documents by path,
//! relative to the map document, and lists `[x, f(x)]` pairs:
//!
//! ```json
//! {"domain": "square4.json", "codomain": "point.json", "pairs": [[[0,0],[5]], ...]}
//! ```
//!
//! A path document names its image and lists the values at `0, 1, ..., m`:
//!
//! ```json
//! {"image": "square4.json", "values": [[0,0],[1,0],[1,1],[0,1],[0,0]]}
//! ```

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::{Adjacency, DigitalImage};
use crate::lattice::{AdjacencySpec, LatticePoint};
use crate::maps::DigitalMap;
use crate::path::DigitalPath;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    pub points: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[Vec<i64>; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub domain: String,
    pub codomain: String,
    pub pairs: Vec<[Vec<i64>; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDocument {
    pub image: String,
    pub values: Vec<Vec<i64>>,
}

/// A validated image with its optional name and any load-time warnings.
#[derive(Clone, Debug)]
pub struct ParsedImage {
    pub image: DigitalImage,
    pub name: Option<String>,
    pub warnings: Vec<String>,
}

// first line containing `"key"`, or line 1
fn line_of(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(1, |i| i + 1)
}

fn fail(text: &str, key: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line: line_of(text, key),
        message: format!("field `{key}`: {}", message.into()),
    }
}

fn syntax<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line().max(1),
        message: e.to_string(),
    })
}

fn point(text: &str, key: &str, coords: &[i64], n: usize, what: &str) -> Result<LatticePoint> {
    if coords.len() != n {
        return Err(fail(
            text,
            key,
            format!("{what} has {} coordinates, expected n = {n}", coords.len()),
        ));
    }
    LatticePoint::new(coords.to_vec()).map_err(|e| fail(text, key, e.to_string()))
}

/// Parses and validates an image document.
pub fn parse_image(text: &str) -> Result<ParsedImage> {
    let doc: ImageDocument = syntax(text)?;
    if doc.n == 0 {
        return Err(fail(text, "n", "ambient dimension must be at least 1"));
    }
    let mut warnings = Vec::new();
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(doc.points.len());
    for (k, coords) in doc.points.iter().enumerate() {
        let p = point(text, "points", coords, doc.n, &format!("point {k}"))?;
        if !seen.insert(p.clone()) {
            warnings.push(format!("duplicate point {p} ignored"));
            continue;
        }
        points.push(p);
    }
    let image = match &doc.edges {
        Some(edges) => {
            let mut pairs = Vec::with_capacity(edges.len());
            for (k, [a, b]) in edges.iter().enumerate() {
                let p = point(text, "edges", a, doc.n, &format!("edge {k}"))?;
                let q = point(text, "edges", b, doc.n, &format!("edge {k}"))?;
                pairs.push((p, q));
            }
            DigitalImage::with_edges(doc.n, points, pairs).map_err(|e| fail(text, "edges", e.to_string()))?
        }
        None => {
            let u = doc.u.ok_or_else(|| fail(text, "u", "missing (required without `edges`)"))?;
            let spec = AdjacencySpec::new(u, doc.n).map_err(|e| fail(text, "u", e.to_string()))?;
            DigitalImage::new(spec, points).map_err(|e| fail(text, "points", e.to_string()))?
        }
    };
    for w in &warnings {
        log::warn!("{w}");
    }
    Ok(ParsedImage {
        image,
        name: doc.name,
        warnings,
    })
}

/// Serializes an image back to a document.
pub fn image_document(image: &DigitalImage, name: Option<&str>) -> ImageDocument {
    let points = image.points().iter().map(|p| p.coords().to_vec()).collect();
    let (u, edges) = match image.adjacency() {
        Adjacency::Lattice(spec) => (Some(spec.u()), None),
        Adjacency::Explicit { .. } => (
            None,
            Some(
                image
                    .edges()
                    .map(|(i, j)| [image.point(i).coords().to_vec(), image.point(j).coords().to_vec()])
                    .collect(),
            ),
        ),
    };
    ImageDocument {
        n: image.dim(),
        u,
        points,
        edges,
        name: name.map(str::to_string),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

/// Loads an image document from disk.
pub fn load_image(path: &Path) -> Result<ParsedImage> {
    let text = read(path)?;
    with_file(path, parse_image(&text))
}

fn sibling(base: &Path, name: &str) -> PathBuf {
    base.parent().unwrap_or_else(|| Path::new(".")).join(name)
}

/// A loaded map with its image documents.
#[derive(Clone, Debug)]
pub struct LoadedMap {
    pub map: DigitalMap,
    pub warnings: Vec<String>,
}

/// Parses a map document; image paths resolve against `base`.
pub fn parse_map(text: &str, base: &Path) -> Result<LoadedMap> {
    let doc: MapDocument = syntax(text)?;
    let domain = load_image(&sibling(base, &doc.domain))?;
    let codomain = load_image(&sibling(base, &doc.codomain))?;
    let (dn, cn) = (domain.image.dim(), codomain.image.dim());
    let mut pairs = Vec::with_capacity(doc.pairs.len());
    for (k, [x, y]) in doc.pairs.iter().enumerate() {
        let x = point(text, "pairs", x, dn, &format!("source of pair {k}"))?;
        let y = point(text, "pairs", y, cn, &format!("value of pair {k}"))?;
        pairs.push((x, y));
    }
    let mut warnings = domain.warnings;
    warnings.extend(codomain.warnings);
    let map = DigitalMap::from_pairs(Arc::new(domain.image), Arc::new(codomain.image), pairs)
        .map_err(|e| fail(text, "pairs", e.to_string()))?;
    Ok(LoadedMap { map, warnings })
}

pub fn load_map(path: &Path) -> Result<LoadedMap> {
    let text = read(path)?;
    with_file(path, parse_map(&text, path))
}

/// Parses a path document; the image path resolves against `base`.
pub fn parse_path(text: &str, base: &Path) -> Result<(DigitalPath, Vec<String>)> {
    let doc: PathDocument = syntax(text)?;
    let image = load_image(&sibling(base, &doc.image))?;
    let n = image.image.dim();
    let values = doc
        .values
        .iter()
        .enumerate()
        .map(|(k, c)| point(text, "values", c, n, &format!("value {k}")))
        .collect::<Result<Vec<_>>>()?;
    let path = DigitalPath::from_points(Arc::new(image.image), &values).map_err(|e| fail(text, "values", e.to_string()))?;
    Ok((path, image.warnings))
}

pub fn load_path(path: &Path) -> Result<(DigitalPath, Vec<String>)> {
    let text = read(path)?;
    with_file(path, parse_path(&text, path))
}
