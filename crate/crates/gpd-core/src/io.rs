//! File formats: the filtration text format, and JSON forms for subspaces,
//! posets, interval functions, diagrams, treegrams and morphisms.
//!
//! All scalars serialize as canonical strings (`p/q`, or a plain integer);
//! grades in input files may also be decimals, which parse to exact rationals
//! on the rational backend. Serialization is deterministic: equal values
//! produce byte-identical JSON.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::Filtration;
use crate::error::{GpdError, Result};
use crate::inversion::GrassmannianDiagram;
use crate::matrix::Matrix;
use crate::poset::{
    Death, ExtScalar, GaloisConnection, IntegerIntervalFunction, Interval, IntervalOrder,
    LinearMetricPoset,
};
use crate::scalar::Scalar;
use crate::subspace::{AmbientSpace, Subspace};
use crate::treegram::{SubPartition, Treegram};

#[derive(Serialize, Deserialize)]
pub struct SubspaceJson {
    pub ambient_dim: usize,
    /// Column-major canonical basis, one inner list per basis vector.
    pub basis: Vec<Vec<String>>,
}

pub fn subspace_to_json<S: Scalar>(w: &Subspace<S>) -> SubspaceJson {
    let b = w.basis();
    let basis = (0..b.cols())
        .map(|j| (0..b.rows()).map(|i| b.get(i, j).to_display()).collect())
        .collect();
    SubspaceJson { ambient_dim: w.ambient().dim(), basis }
}

pub fn subspace_from_json<S: Scalar>(
    json: &SubspaceJson,
    ambient: &Arc<AmbientSpace<S>>,
) -> Result<Subspace<S>> {
    if json.ambient_dim != ambient.dim() {
        return Err(GpdError::AmbientMismatch(format!(
            "serialized subspace has ambient dim {}, expected {}",
            json.ambient_dim,
            ambient.dim()
        )));
    }
    let mut cols = Vec::new();
    for col in &json.basis {
        if col.len() != ambient.dim() {
            return Err(GpdError::AmbientMismatch("basis column has the wrong length".into()));
        }
        cols.push(col.iter().map(|s| S::parse(s)).collect::<Result<Vec<S>>>()?);
    }
    let m = Matrix::from_cols(ambient.dim(), cols);
    Ok(Subspace::from_matrix(ambient.clone(), &m))
}

#[derive(Serialize, Deserialize)]
pub struct PosetJson {
    pub grades: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
}

pub fn poset_to_json<S: Scalar>(p: &LinearMetricPoset<S>) -> PosetJson {
    let n = p.len();
    let default_metric = (0..n).all(|i| {
        (0..n).all(|j| {
            let expected = ExtScalar::Finite(p.grade(i).clone())
                .abs_diff(&ExtScalar::Finite(p.grade(j).clone()));
            *p.distance(i, j) == expected
        })
    });
    PosetJson {
        grades: p.grades().iter().map(|g| g.to_display()).collect(),
        metric: if default_metric {
            None
        } else {
            Some(
                (0..n)
                    .map(|i| (0..n).map(|j| p.distance(i, j).to_display()).collect())
                    .collect(),
            )
        },
    }
}

pub fn poset_from_json<S: Scalar>(json: &PosetJson) -> Result<Arc<LinearMetricPoset<S>>> {
    let grades = json
        .grades
        .iter()
        .map(|s| S::parse(s))
        .collect::<Result<Vec<S>>>()?;
    match &json.metric {
        None => LinearMetricPoset::from_grades(grades),
        Some(rows) => {
            let n = grades.len();
            let mut metric = Vec::with_capacity(n * n);
            for row in rows {
                for cell in row {
                    metric.push(if cell == "inf" {
                        ExtScalar::Infinite
                    } else {
                        ExtScalar::Finite(S::parse(cell)?)
                    });
                }
            }
            LinearMetricPoset::with_metric(grades, metric)
        }
    }
}

/// `[birth, death]` with grades as strings and `"inf"` for rays.
pub type IntervalJson = [String; 2];

pub fn interval_to_json<S: Scalar>(p: &LinearMetricPoset<S>, i: &Interval) -> IntervalJson {
    let birth = p.grade(i.birth).to_display();
    let death = match i.death {
        Death::At(d) => p.grade(d).to_display(),
        Death::Inf => "inf".to_string(),
    };
    [birth, death]
}

pub fn interval_from_json<S: Scalar>(
    p: &LinearMetricPoset<S>,
    json: &IntervalJson,
) -> Result<Interval> {
    let find = |text: &str| -> Result<usize> {
        let g = S::parse(text)?;
        (0..p.len())
            .find(|&k| p.grade(k).eq_scalar(&g))
            .ok_or_else(|| GpdError::MissingInterval(format!("grade {text} is not in the poset")))
    };
    let birth = find(&json[0])?;
    let death = if json[1] == "inf" {
        Death::Inf
    } else {
        Death::At(find(&json[1])?)
    };
    Ok(Interval { birth, death })
}

#[derive(Serialize, Deserialize)]
pub struct DiagramPointJson {
    pub interval: IntervalJson,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct DiagramJson {
    pub poset: PosetJson,
    pub order: String,
    pub points: Vec<DiagramPointJson>,
}

fn order_name(order: IntervalOrder) -> &'static str {
    match order {
        IntervalOrder::Product => "product",
        IntervalOrder::ReverseInclusion => "reverse-inclusion",
    }
}

fn order_from_name(name: &str) -> Result<IntervalOrder> {
    match name {
        "product" => Ok(IntervalOrder::Product),
        "reverse-inclusion" => Ok(IntervalOrder::ReverseInclusion),
        other => Err(GpdError::InvalidDiagram(format!("unknown order `{other}`"))),
    }
}

/// Serializes the nonzero points of a diagram.
pub fn diagram_to_json<S: Scalar>(m: &GrassmannianDiagram<S>) -> DiagramJson {
    let points = m
        .support()
        .into_iter()
        .map(|(i, w)| DiagramPointJson {
            interval: interval_to_json(&m.poset, &i),
            dim: w.dim(),
            basis: subspace_to_json(w).basis,
        })
        .collect();
    DiagramJson {
        poset: poset_to_json(&m.poset),
        order: order_name(m.order_tag).to_string(),
        points,
    }
}

/// Reads a diagram back over a given ambient space; absent intervals are zero.
pub fn diagram_from_json<S: Scalar>(
    json: &DiagramJson,
    ambient: &Arc<AmbientSpace<S>>,
) -> Result<GrassmannianDiagram<S>> {
    let poset = poset_from_json::<S>(&json.poset)?;
    let order = order_from_name(&json.order)?;
    let mut values: BTreeMap<Interval, Subspace<S>> =
        crate::poset::interval_domain(poset.len(), IntervalOrder::Product)
            .into_iter()
            .map(|i| (i, Subspace::zero(ambient.clone())))
            .collect();
    for point in &json.points {
        let iv = interval_from_json(&poset, &point.interval)?;
        let w = subspace_from_json(
            &SubspaceJson { ambient_dim: ambient.dim(), basis: point.basis.clone() },
            ambient,
        )?;
        values.insert(iv, w);
    }
    Ok(GrassmannianDiagram { poset, order_tag: order, ambient: ambient.clone(), values })
}

#[derive(Serialize, Deserialize)]
pub struct IntegerDiagramPointJson {
    pub interval: IntervalJson,
    pub multiplicity: i64,
}

#[derive(Serialize, Deserialize)]
pub struct IntegerDiagramJson {
    pub poset: PosetJson,
    pub order: String,
    pub points: Vec<IntegerDiagramPointJson>,
}

pub fn integer_diagram_to_json<S: Scalar>(m: &IntegerIntervalFunction<S>) -> IntegerDiagramJson {
    let points = m
        .values
        .iter()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| IntegerDiagramPointJson {
            interval: interval_to_json(&m.poset, i),
            multiplicity: v,
        })
        .collect();
    IntegerDiagramJson {
        poset: poset_to_json(&m.poset),
        order: order_name(m.order).to_string(),
        points,
    }
}

#[derive(Serialize, Deserialize)]
pub struct FunctionPointJson {
    pub interval: IntervalJson,
    pub basis: Vec<Vec<String>>,
}

/// A subspace-valued interval function serializes as an array of points.
pub fn function_to_json<S: Scalar>(
    f: &crate::invariants::SubspaceIntervalFunction<S>,
) -> Vec<FunctionPointJson> {
    f.values
        .iter()
        .map(|(i, w)| FunctionPointJson {
            interval: interval_to_json(&f.poset, i),
            basis: subspace_to_json(w).basis,
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
pub struct TreegramBreakpointJson {
    pub t: String,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
pub struct TreegramJson {
    pub vertices: Vec<String>,
    pub breakpoints: Vec<TreegramBreakpointJson>,
}

pub fn treegram_to_json<S: Scalar>(t: &Treegram<S>) -> TreegramJson {
    TreegramJson {
        vertices: t.vertices.clone(),
        breakpoints: t
            .breakpoints
            .iter()
            .map(|(time, state)| TreegramBreakpointJson {
                t: time.to_display(),
                blocks: state
                    .blocks
                    .iter()
                    .map(|b| b.iter().map(|&v| t.vertices[v as usize].clone()).collect())
                    .collect(),
            })
            .collect(),
    }
}

pub fn treegram_from_json<S: Scalar>(json: &TreegramJson) -> Result<Treegram<S>> {
    let index: BTreeMap<&str, u32> = json
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i as u32))
        .collect();
    if index.len() != json.vertices.len() {
        return Err(GpdError::InvalidTreegram("duplicate vertex names".into()));
    }
    let mut breakpoints = Vec::new();
    for bp in &json.breakpoints {
        let time = S::parse(&bp.t)?;
        let mut blocks = Vec::new();
        for b in &bp.blocks {
            let mut block = BTreeSet::new();
            for name in b {
                let v = index.get(name.as_str()).ok_or_else(|| {
                    GpdError::InvalidTreegram(format!("unknown vertex `{name}`"))
                })?;
                block.insert(*v);
            }
            blocks.push(block);
        }
        breakpoints.push((time, SubPartition { blocks }));
    }
    Treegram::new(json.vertices.clone(), breakpoints)
}

#[derive(Serialize, Deserialize)]
pub struct MorphismJson {
    /// 1-based index maps, matching the written form of worked examples.
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

pub fn connection_to_json<S: Scalar>(conn: &GaloisConnection<S>) -> MorphismJson {
    MorphismJson {
        left: conn.left.iter().map(|&i| i + 1).collect(),
        right: conn.right.iter().map(|&i| i + 1).collect(),
        zeta: None,
    }
}

#[derive(Serialize, Deserialize)]
pub struct FiltrationSimplexJson {
    pub t: serde_json::Value,
    pub v: Vec<String>,
}

#[derive(Serialize, Deserialize)]
pub struct FiltrationJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<String>>,
    pub simplices: Vec<FiltrationSimplexJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grades: Option<Vec<String>>,
}

fn grade_from_value<S: Scalar>(v: &serde_json::Value) -> Result<S> {
    match v {
        serde_json::Value::String(s) => S::parse(s),
        serde_json::Value::Number(n) => S::parse(&n.to_string()),
        other => Err(GpdError::Parse {
            line: 0,
            msg: format!("cannot read grade from {other}"),
        }),
    }
}

pub fn filtration_from_json<S: Scalar>(json: &FiltrationJson) -> Result<Filtration<S>> {
    let simplices = json
        .simplices
        .iter()
        .map(|s| Ok((s.v.clone(), grade_from_value::<S>(&s.t)?)))
        .collect::<Result<Vec<_>>>()?;
    let grades = match &json.grades {
        None => None,
        Some(gs) => Some(gs.iter().map(|g| S::parse(g)).collect::<Result<Vec<S>>>()?),
    };
    Filtration::with_grades(json.vertices.clone(), simplices, grades)
}

/// Parses the plain text filtration format:
///
/// ```text
/// # comment
/// vertices: a b c d
/// grades: 0 1 2
/// <grade> ; v0 v1 ... vq
/// ```
///
/// The `vertices:` header fixes the vertex order, the `grades:` header adds
/// poset steps that carry no simplex; both are optional.
pub fn filtration_from_text<S: Scalar>(text: &str) -> Result<Filtration<S>> {
    let mut vertex_order: Option<Vec<String>> = None;
    let mut extra_grades: Option<Vec<S>> = None;
    let mut simplices: Vec<(Vec<String>, S)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            vertex_order = Some(rest.split_whitespace().map(String::from).collect());
            continue;
        }
        if let Some(rest) = line.strip_prefix("grades:") {
            let gs = rest
                .split_whitespace()
                .map(|g| S::parse(g).map_err(|_| GpdError::Parse {
                    line: lineno,
                    msg: format!("bad grade `{g}`"),
                }))
                .collect::<Result<Vec<S>>>()?;
            extra_grades = Some(gs);
            continue;
        }
        let (grade_text, verts_text) = line.split_once(';').ok_or_else(|| GpdError::Parse {
            line: lineno,
            msg: "expected `<grade> ; <vertices>`".into(),
        })?;
        let grade = S::parse(grade_text.trim()).map_err(|_| GpdError::Parse {
            line: lineno,
            msg: format!("bad grade `{}`", grade_text.trim()),
        })?;
        let verts: Vec<String> = verts_text.split_whitespace().map(String::from).collect();
        if verts.is_empty() {
            return Err(GpdError::Parse {
                line: lineno,
                msg: "simplex with no vertices".into(),
            });
        }
        simplices.push((verts, grade));
    }
    Filtration::with_grades(vertex_order, simplices, extra_grades)
}

/// Reads a filtration from either the text format or the JSON equivalent,
/// deciding by the leading non-space character.
pub fn filtration_from_str<S: Scalar>(text: &str) -> Result<Filtration<S>> {
    if text.trim_start().starts_with('{') {
        let json: FiltrationJson = serde_json::from_str(text).map_err(|e| GpdError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        filtration_from_json(&json)
    } else {
        filtration_from_text(text)
    }
}

/// Gram matrices per degree: `{"0": [[...]], "2": [[...]]}`.
pub fn grams_from_json<S: Scalar>(text: &str) -> Result<BTreeMap<usize, Matrix<S>>> {
    let raw: BTreeMap<String, Vec<Vec<String>>> =
        serde_json::from_str(text).map_err(|e| GpdError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
    let mut out = BTreeMap::new();
    for (k, rows) in raw {
        let q: usize = k.parse().map_err(|_| GpdError::Parse {
            line: 0,
            msg: format!("bad degree key `{k}`"),
        })?;
        let parsed: Vec<Vec<S>> = rows
            .iter()
            .map(|r| r.iter().map(|c| S::parse(c)).collect::<Result<Vec<S>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(parsed);
        if !m.is_symmetric() || !m.is_positive_definite() {
            return Err(GpdError::InvalidGram(format!(
                "degree-{q} matrix is not symmetric positive definite"
            )));
        }
        out.insert(q, m);
    }
    Ok(out)
}

/// Plot-ready rows: one `birth<TAB>death<TAB>dim` line per nonzero point.
pub fn diagram_to_tsv<S: Scalar>(m: &GrassmannianDiagram<S>) -> String {
    let mut out = String::from("birth\tdeath\tdim\n");
    for (i, w) in m.support() {
        let [b, d] = interval_to_json(&m.poset, &i);
        out.push_str(&format!("{b}\t{d}\t{}\n", w.dim()));
    }
    out
}
