//! The JSON curve format: an ideal, a `V` list of vertices and rays in homogeneous coordinates,
//! an `E` list of index pairs into `V` (0-based) and an `M` list of weights, one per `E` entry.
//!
//! A pair of two vertices is a bounded edge; a vertex and a ray is an unbounded cell starting at
//! that vertex. Rationals are strings `"p/q"`; plain integers are accepted too.

use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use tropreal::geometry::{CellKind, Direction, HomogVector, TropicalCurve};
use tropreal::matroid::PlaneIdeal;
use tropreal::rational::{fmt_q, parse_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn value(&self) -> anyhow::Result<Q> {
        Ok(match self {
            Number::Int(i) => Q::from_integer((*i).into()),
            Number::Text(s) => parse_q(s)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Vertex,
    Ray,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub kind: Kind,
    pub coords: Vec<Number>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub n: usize,
    pub ideal: Vec<Vec<Number>>,
    #[serde(rename = "V")]
    pub v: Vec<Entry>,
    #[serde(rename = "E")]
    pub e: Vec<[usize; 2]>,
    #[serde(rename = "M")]
    pub m: Vec<u64>,
}

/// A parsed input. `scale` is the smallest positive integer making all vertices integral.
#[derive(Clone, Debug)]
pub struct Parsed {
    pub ideal: PlaneIdeal,
    pub curve: TropicalCurve,
    pub scale: Q,
}

pub fn read_curve(path: &Path) -> anyhow::Result<Parsed> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_curve(&text)
}

pub fn parse_curve(text: &str) -> anyhow::Result<Parsed> {
    let file: CurveFile = serde_json::from_str(text).context("malformed curve file")?;
    from_file(&file)
}

pub fn from_file(file: &CurveFile) -> anyhow::Result<Parsed> {
    let generators = file
        .ideal
        .iter()
        .map(|g| g.iter().map(Number::value).collect::<anyhow::Result<Vec<Q>>>())
        .collect::<anyhow::Result<Vec<_>>>()?;
    let ideal = PlaneIdeal::new(file.n, generators)?;
    if file.e.len() != file.m.len() {
        bail!("E has {} entries but M has {}", file.e.len(), file.m.len());
    }
    // position in V -> index among vertices or among rays
    let mut slot = Vec::with_capacity(file.v.len());
    let mut vertices = Vec::new();
    let mut rays = Vec::new();
    for (k, entry) in file.v.iter().enumerate() {
        let coords = entry
            .coords
            .iter()
            .map(Number::value)
            .collect::<anyhow::Result<Vec<Q>>>()?;
        if coords.len() != file.n + 1 {
            bail!("V[{k}] has {} coordinates, expected {}", coords.len(), file.n + 1);
        }
        match entry.kind {
            Kind::Vertex => {
                slot.push((Kind::Vertex, vertices.len()));
                vertices.push(HomogVector::new(coords));
            }
            Kind::Ray => {
                slot.push((Kind::Ray, rays.len()));
                rays.push(Direction::from_rational(&coords).with_context(|| format!("V[{k}]"))?);
            }
        }
    }
    let mut segments = Vec::new();
    let mut unbounded = Vec::new();
    for (k, (&[i, j], &w)) in file.e.iter().zip(&file.m).enumerate() {
        let (a, b) = match (slot.get(i), slot.get(j)) {
            (Some(a), Some(b)) => (*a, *b),
            _ => bail!("E[{k}] = ({i},{j}) refers past the end of V"),
        };
        match (a, b) {
            ((Kind::Vertex, x), (Kind::Vertex, y)) => segments.push((x, y, w)),
            ((Kind::Vertex, x), (Kind::Ray, r)) | ((Kind::Ray, r), (Kind::Vertex, x)) => {
                unbounded.push((x, rays[r].clone(), w))
            }
            _ => bail!("E[{k}] = ({i},{j}) joins two rays"),
        }
    }
    let curve = TropicalCurve::from_parts(file.n, vertices, &segments, &unbounded)?;
    let scale = Q::from_integer(curve.integral_scale());
    Ok(Parsed { ideal, curve, scale })
}

/// Vertices first, then the rays in the order of the curve.
pub fn to_file(ideal: &PlaneIdeal, c: &TropicalCurve) -> CurveFile {
    let q = |x: &Q| Number::Text(fmt_q(x));
    let nv = c.vertices().len();
    let mut v: Vec<Entry> = c
        .vertices()
        .iter()
        .map(|p| Entry {
            kind: Kind::Vertex,
            coords: p.coords().iter().map(q).collect(),
        })
        .collect();
    v.extend(c.rays().iter().map(|r| Entry {
        kind: Kind::Ray,
        coords: r.coords().iter().map(|&x| Number::Int(x)).collect(),
    }));
    let (e, m) = c
        .cells()
        .iter()
        .map(|cell| match cell.kind {
            CellKind::Segment(i, j) => ([i, j], cell.weight),
            CellKind::Ray { vertex, ray } => ([vertex, nv + ray], cell.weight),
        })
        .unzip();
    CurveFile {
        n: c.n(),
        ideal: ideal.generators().iter().map(|g| g.iter().map(q).collect()).collect(),
        v,
        e,
        m,
    }
}

/// One `V` entry per line, everything else compact.
pub fn to_json(ideal: &PlaneIdeal, c: &TropicalCurve) -> String {
    let f = to_file(ideal, c);
    let v: Vec<String> = f.v.iter().map(|e| format!("    {}", js(e))).collect();
    format!(
        "{{\n  \"n\": {},\n  \"ideal\": {},\n  \"V\": [\n{}\n  ],\n  \"E\": {},\n  \"M\": {}\n}}",
        f.n,
        js(&f.ideal),
        v.join(",\n"),
        js(&f.e),
        js(&f.m)
    )
}

fn js<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"{"n":3,"ideal":[["1","1","1","1"]],
        "V":[{"kind":"vertex","coords":["0","1","1","0"]},{"kind":"vertex","coords":["1","0","0","1"]},
             {"kind":"ray","coords":[1,0,0,0]},{"kind":"ray","coords":[0,1,0,0]},
             {"kind":"ray","coords":[0,0,1,0]},{"kind":"ray","coords":[0,0,0,1]}],
        "E":[[0,1],[0,3],[0,4],[1,2],[1,5]],"M":[1,1,1,1,1]}"#;

    #[test]
    fn roundtrip() {
        let p = parse_curve(LINE).unwrap();
        assert_eq!(p.scale, Q::from_integer(1.into()));
        let again = parse_curve(&to_json(&p.ideal, &p.curve)).unwrap();
        assert_eq!(again.curve, p.curve);
        assert_eq!(to_file(&again.ideal, &again.curve), to_file(&p.ideal, &p.curve));
    }

    #[test]
    fn rejects_weight_zero_and_reports_scale() {
        assert!(parse_curve(&LINE.replace("[1,1,1,1,1]", "[1,1,0,1,1]")).is_err());
        let half = LINE
            .replace(r#"["0","1","1","0"]"#, r#"["0","1/2","1/2","0"]"#)
            .replace(r#"["1","0","0","1"]"#, r#"["1/2","0","0","1/2"]"#);
        assert_eq!(parse_curve(&half).unwrap().scale, Q::from_integer(2.into()));
    }
}
