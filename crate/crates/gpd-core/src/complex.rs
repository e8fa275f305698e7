//! Simplicial complexes, filtrations, oriented chain bases and boundary
//! operators.
//!
//! All chain groups of a filtration live inside the chain space of the final
//! complex: subspaces attached to intermediate steps are embedded there, and
//! boundary operators of subcomplexes are represented on the full bases with
//! zero columns for missing simplices.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{GpdError, Result};
use crate::matrix::Matrix;
use crate::poset::LinearMetricPoset;
use crate::scalar::Scalar;
use crate::subspace::{AmbientSpace, Subspace};

/// A simplex as a strictly increasing tuple of vertex indices.
pub type Simplex = Vec<u32>;

/// A set of simplices closed under taking faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { simplices: BTreeSet::new() }
    }

    pub fn from_simplices(simplices: BTreeSet<Simplex>) -> Result<Self> {
        for s in &simplices {
            for face in proper_faces(s) {
                if !simplices.contains(&face) {
                    return Err(GpdError::InvalidFiltration(format!(
                        "complex is not closed under faces: missing a face of {s:?}"
                    )));
                }
            }
        }
        Ok(SimplicialComplex { simplices })
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn simplices_of_dim(&self, q: usize) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| s.len() == q + 1)
            .cloned()
            .collect()
    }

    pub fn vertices(&self) -> BTreeSet<u32> {
        self.simplices
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0])
            .collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }

    /// Connected components of the 1-skeleton, as a partition of the vertices.
    pub fn components(&self) -> Vec<BTreeSet<u32>> {
        let vertices: Vec<u32> = self.vertices().into_iter().collect();
        let index: BTreeMap<u32, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf: Vec<usize> = (0..vertices.len()).collect();
        fn find(uf: &mut Vec<usize>, x: usize) -> usize {
            if uf[x] != x {
                let parent = uf[x];
                let root = find(uf, parent);
                uf[x] = root;
            }
            uf[x]
        }
        for s in &self.simplices {
            if s.len() == 2 {
                let a = find(&mut uf, index[&s[0]]);
                let b = find(&mut uf, index[&s[1]]);
                uf[a] = b;
            }
        }
        let mut blocks: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            let root = find(&mut uf, i);
            blocks.entry(root).or_default().insert(v);
        }
        blocks.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

fn proper_faces(s: &Simplex) -> Vec<Simplex> {
    if s.len() <= 1 {
        return Vec::new();
    }
    (0..s.len())
        .map(|i| {
            let mut f = s.clone();
            f.remove(i);
            f
        })
        .collect()
}

/// A monotone assignment of entry steps to the simplices of a finite complex.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration<S: Scalar> {
    poset: Arc<LinearMetricPoset<S>>,
    vertices: Vec<String>,
    /// Entry step index for every simplex of the final complex.
    entry: BTreeMap<Simplex, usize>,
    complex: SimplicialComplex,
}

impl<S: Scalar> Filtration<S> {
    /// Builds a filtration from `(simplex-as-vertex-names, grade)` pairs.
    /// Vertex order is the given `vertex_order` when provided, otherwise the
    /// lexicographic order of the names encountered.
    pub fn new(vertex_order: Option<Vec<String>>, simplices: Vec<(Vec<String>, S)>) -> Result<Self> {
        Self::with_grades(vertex_order, simplices, None)
    }

    /// Like [`Filtration::new`], but over a grade list merged from the given
    /// grades and the ones used by simplices. Grades carrying no simplex
    /// yield repeated sublevel complexes (possibly empty ones at the start).
    pub fn with_grades(
        vertex_order: Option<Vec<String>>,
        simplices: Vec<(Vec<String>, S)>,
        explicit_grades: Option<Vec<S>>,
    ) -> Result<Self> {
        let mut names: BTreeSet<String> = BTreeSet::new();
        for (verts, _) in &simplices {
            if verts.is_empty() {
                return Err(GpdError::InvalidFiltration("empty simplex".into()));
            }
            for v in verts {
                names.insert(v.clone());
            }
        }
        let vertices: Vec<String> = match vertex_order {
            Some(order) => {
                let given: BTreeSet<String> = order.iter().cloned().collect();
                if given.len() != order.len() {
                    return Err(GpdError::InvalidFiltration("duplicate vertex in vertex order".into()));
                }
                for v in &names {
                    if !given.contains(v) {
                        return Err(GpdError::InvalidFiltration(format!(
                            "vertex `{v}` is missing from the declared vertex order"
                        )));
                    }
                }
                order
            }
            None => names.into_iter().collect(),
        };
        let index: BTreeMap<&str, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i as u32))
            .collect();

        let mut grades: Vec<S> = explicit_grades.unwrap_or_default();
        for (_, g) in &simplices {
            if !grades.iter().any(|h| h.eq_scalar(g)) {
                grades.push(g.clone());
            }
        }
        grades.sort_by(|a, b| a.cmp_val(b));
        grades.dedup_by(|a, b| a.eq_scalar(b));
        if grades.is_empty() {
            return Err(GpdError::InvalidFiltration("a filtration needs at least one simplex".into()));
        }
        let poset = LinearMetricPoset::from_grades(grades.clone())?;
        let step_of = |g: &S| -> usize { grades.iter().position(|h| h.eq_scalar(g)).unwrap() };

        let mut entry: BTreeMap<Simplex, usize> = BTreeMap::new();
        for (verts, g) in &simplices {
            let mut idx: Simplex = verts.iter().map(|v| index[v.as_str()]).collect();
            idx.sort_unstable();
            idx.dedup();
            if idx.len() != verts.len() {
                return Err(GpdError::InvalidFiltration(format!(
                    "simplex {verts:?} has repeated vertices"
                )));
            }
            if entry.insert(idx.clone(), step_of(g)).is_some() {
                return Err(GpdError::InvalidFiltration(format!("duplicate simplex {verts:?}")));
            }
        }
        for (s, &step) in &entry {
            for face in proper_faces(s) {
                match entry.get(&face) {
                    None => {
                        return Err(GpdError::InvalidFiltration(format!(
                            "simplex {s:?} is missing face {face:?}"
                        )))
                    }
                    Some(&face_step) if face_step > step => {
                        return Err(GpdError::InvalidFiltration(format!(
                            "face {face:?} enters after its coface {s:?}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        let complex = SimplicialComplex::from_simplices(entry.keys().cloned().collect())?;
        Ok(Filtration { poset, vertices, entry, complex })
    }

    pub fn poset(&self) -> &Arc<LinearMetricPoset<S>> {
        &self.poset
    }

    pub fn steps(&self) -> usize {
        self.poset.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.vertices[v as usize]
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn entry_step(&self, s: &Simplex) -> Option<usize> {
        self.entry.get(s).copied()
    }

    /// The subcomplex of simplices that entered at or before step `i`.
    pub fn sublevel(&self, i: usize) -> Result<SimplicialComplex> {
        if i >= self.steps() {
            return Err(GpdError::IndexOutOfRange(format!(
                "step {i} of a {}-step filtration",
                self.steps()
            )));
        }
        let simplices = self
            .entry
            .iter()
            .filter(|(_, &step)| step <= i)
            .map(|(s, _)| s.clone())
            .collect();
        Ok(SimplicialComplex { simplices })
    }

    /// Ordered basis of oriented `q`-simplices of the final complex.
    pub fn chain_basis(&self, q: usize) -> Vec<Simplex> {
        self.complex.simplices_of_dim(q)
    }

    pub fn simplex_label(&self, s: &Simplex) -> String {
        s.iter()
            .map(|&v| self.vertex_name(v).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Fixed ordered basis of the degree-`q` chain space of the final complex.
#[derive(Clone, Debug)]
pub struct ChainContext<S: Scalar> {
    pub q: usize,
    pub simplices: Vec<Simplex>,
    pub index: BTreeMap<Simplex, usize>,
    pub ambient: Arc<AmbientSpace<S>>,
}

impl<S: Scalar> ChainContext<S> {
    pub fn new(filtration: &Filtration<S>, q: usize, gram: Option<Matrix<S>>) -> Result<Self> {
        let simplices = filtration.chain_basis(q);
        let labels = simplices
            .iter()
            .map(|s| filtration.simplex_label(s))
            .collect();
        let ambient = AmbientSpace::new(labels, gram)?;
        let index = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Ok(ChainContext { q, simplices, index, ambient })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len()
    }

    /// Column indices of the `q`-simplices present in `sub`.
    pub fn indices_in(&self, sub: &SimplicialComplex) -> Vec<usize> {
        self.simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| sub.contains(s))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Matrix of the alternating-sum boundary operator on the full bases, with
/// zero columns for `q`-simplices outside `sub`.
pub fn boundary_matrix<S: Scalar>(
    ctx_q: &ChainContext<S>,
    ctx_qm1: &ChainContext<S>,
    sub: &SimplicialComplex,
) -> Matrix<S> {
    let mut m = Matrix::zeros(ctx_qm1.dim(), ctx_q.dim());
    if ctx_q.q == 0 {
        return m;
    }
    for (j, s) in ctx_q.simplices.iter().enumerate() {
        if !sub.contains(s) {
            continue;
        }
        for (i, face) in proper_faces(s).iter().enumerate() {
            let row = *ctx_qm1
                .index
                .get(face)
                .expect("face missing from chain basis");
            let sign = if i % 2 == 0 { S::one() } else { S::one().neg() };
            m.set(row, j, sign);
        }
    }
    m
}

/// Adjoint of `a` with respect to positive-definite Gram matrices on its
/// source and destination: `G_src^{-1} A^T G_dst`.
pub fn adjoint<S: Scalar>(a: &Matrix<S>, gram_src: &Matrix<S>, gram_dst: &Matrix<S>) -> Matrix<S> {
    let inv = gram_src
        .inverse()
        .expect("gram matrix is positive definite, hence invertible");
    inv.mul(&a.transpose()).mul(gram_dst)
}

/// Per-degree cycle and boundary subspaces of every step of a filtration,
/// embedded in the chain space of the final complex.
pub struct ChainData<S: Scalar> {
    pub filtration: Filtration<S>,
    /// Contexts for degrees `0..=max_degree + 1`.
    pub contexts: Vec<ChainContext<S>>,
    /// `cycles[q][i]`, `boundaries[q][i]` for degree `q <= max_degree`, step `i`.
    cycles: Vec<Vec<Subspace<S>>>,
    boundaries: Vec<Vec<Subspace<S>>>,
    /// Full boundary matrices for degrees `1..=max_degree + 1` (index by q).
    boundary_mats: Vec<Matrix<S>>,
    sublevels: Vec<SimplicialComplex>,
}

impl<S: Scalar> ChainData<S> {
    /// Precomputes cycle and boundary spaces for all steps and degrees up to
    /// `max_degree`. `grams[q]`, when present, fixes the inner product of the
    /// degree-`q` chain space.
    pub fn new(
        filtration: Filtration<S>,
        max_degree: usize,
        grams: &BTreeMap<usize, Matrix<S>>,
    ) -> Result<Self> {
        let n = filtration.steps();
        let mut contexts = Vec::new();
        for q in 0..=max_degree + 1 {
            contexts.push(ChainContext::new(&filtration, q, grams.get(&q).cloned())?);
        }
        let sublevels: Vec<SimplicialComplex> =
            (0..n).map(|i| filtration.sublevel(i)).collect::<Result<_>>()?;

        let mut boundary_mats = vec![Matrix::zeros(0, 0); max_degree + 2];
        for q in 1..=max_degree + 1 {
            boundary_mats[q] = boundary_matrix(&contexts[q], &contexts[q - 1], filtration.complex());
        }

        let mut cycles: Vec<Vec<Subspace<S>>> = Vec::new();
        let mut boundaries: Vec<Vec<Subspace<S>>> = Vec::new();
        for q in 0..=max_degree {
            let ctx = &contexts[q];
            let mut zq = Vec::with_capacity(n);
            let mut bq = Vec::with_capacity(n);
            for sub in &sublevels {
                zq.push(Self::compute_cycles(ctx, &boundary_mats, q, sub));
                bq.push(Self::compute_boundaries(
                    ctx,
                    &contexts[q + 1],
                    &boundary_mats,
                    q,
                    sub,
                ));
            }
            cycles.push(zq);
            boundaries.push(bq);
        }
        Ok(ChainData {
            filtration,
            contexts,
            cycles,
            boundaries,
            boundary_mats,
            sublevels,
        })
    }

    fn compute_cycles(
        ctx: &ChainContext<S>,
        boundary_mats: &[Matrix<S>],
        q: usize,
        sub: &SimplicialComplex,
    ) -> Subspace<S> {
        let present = ctx.indices_in(sub);
        if present.is_empty() {
            return Subspace::zero(ctx.ambient.clone());
        }
        if q == 0 {
            // The zero-degree boundary operator vanishes: every present vertex
            // is a cycle.
            let cols: Vec<Vec<S>> = present
                .iter()
                .map(|&i| {
                    let mut c = vec![S::zero(); ctx.dim()];
                    c[i] = S::one();
                    c
                })
                .collect();
            return Subspace::from_matrix(ctx.ambient.clone(), &Matrix::from_cols(ctx.dim(), cols));
        }
        let full = &boundary_mats[q];
        let rows: Vec<usize> = (0..full.rows()).collect();
        let restricted = full.submatrix(&rows, &present);
        let ker = restricted.kernel();
        // Pad kernel coordinates back to the full basis.
        let mut cols = Vec::new();
        for j in 0..ker.cols() {
            let mut c = vec![S::zero(); ctx.dim()];
            for (r, &idx) in present.iter().enumerate() {
                c[idx] = ker.get(r, j).clone();
            }
            cols.push(c);
        }
        Subspace::from_matrix(ctx.ambient.clone(), &Matrix::from_cols(ctx.dim(), cols))
    }

    fn compute_boundaries(
        ctx: &ChainContext<S>,
        ctx_up: &ChainContext<S>,
        boundary_mats: &[Matrix<S>],
        q: usize,
        sub: &SimplicialComplex,
    ) -> Subspace<S> {
        let up_present = ctx_up.indices_in(sub);
        if up_present.is_empty() {
            return Subspace::zero(ctx.ambient.clone());
        }
        let full = &boundary_mats[q + 1];
        let rows: Vec<usize> = (0..full.rows()).collect();
        let image_cols = full.submatrix(&rows, &up_present);
        Subspace::from_matrix(ctx.ambient.clone(), &image_cols)
    }

    pub fn steps(&self) -> usize {
        self.filtration.steps()
    }

    pub fn max_degree(&self) -> usize {
        self.cycles.len() - 1
    }

    pub fn context(&self, q: usize) -> &ChainContext<S> {
        &self.contexts[q]
    }

    pub fn ambient(&self, q: usize) -> &Arc<AmbientSpace<S>> {
        &self.contexts[q].ambient
    }

    pub fn sublevel(&self, i: usize) -> &SimplicialComplex {
        &self.sublevels[i]
    }

    /// `Z_q` of the step-`i` subcomplex, inside the final degree-`q` chain space.
    pub fn cycles(&self, q: usize, i: usize) -> &Subspace<S> {
        &self.cycles[q][i]
    }

    /// `B_q` of the step-`i` subcomplex, inside the final degree-`q` chain space.
    pub fn boundaries(&self, q: usize, i: usize) -> &Subspace<S> {
        &self.boundaries[q][i]
    }

    pub fn full_boundary(&self, q: usize) -> &Matrix<S> {
        &self.boundary_mats[q]
    }
}
