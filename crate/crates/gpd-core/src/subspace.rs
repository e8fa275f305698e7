//! Exact arithmetic on linear subspaces of a finite-dimensional inner product
//! space: spans, sums, intersections, orthogonal complements, differences,
//! projections and transversality checks.
//!
//! Subspaces are stored in canonical reduced column echelon form, so two
//! subspaces are equal as sets of vectors exactly when their basis matrices
//! agree entry-wise (on the rational backend).

use std::sync::Arc;

use crate::error::{GpdError, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A finite-dimensional inner product space with a distinguished ordered basis.
///
/// When no Gram matrix is supplied the basis is declared orthonormal.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientSpace<S: Scalar> {
    dim: usize,
    gram: Option<Matrix<S>>,
    labels: Vec<String>,
}

impl<S: Scalar> AmbientSpace<S> {
    pub fn standard(dim: usize) -> Arc<Self> {
        let labels = (0..dim).map(|i| format!("e{}", i + 1)).collect();
        Arc::new(AmbientSpace { dim, gram: None, labels })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Arc<Self>> {
        Self::new(labels, None)
    }

    pub fn new(labels: Vec<String>, gram: Option<Matrix<S>>) -> Result<Arc<Self>> {
        let dim = labels.len();
        {
            let mut seen = std::collections::BTreeSet::new();
            for l in &labels {
                if !seen.insert(l) {
                    return Err(GpdError::AmbientMismatch(format!("duplicate basis label `{l}`")));
                }
            }
        }
        if let Some(g) = &gram {
            if g.rows() != dim || g.cols() != dim {
                return Err(GpdError::InvalidGram(format!(
                    "gram matrix is {}x{}, expected {dim}x{dim}",
                    g.rows(),
                    g.cols()
                )));
            }
            if !g.is_symmetric() {
                return Err(GpdError::InvalidGram("gram matrix is not symmetric".into()));
            }
            if !g.is_positive_definite() {
                return Err(GpdError::InvalidGram("gram matrix is not positive definite".into()));
            }
        }
        Ok(Arc::new(AmbientSpace { dim, gram, labels }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> Matrix<S> {
        match &self.gram {
            Some(g) => g.clone(),
            None => Matrix::identity(self.dim),
        }
    }

    pub fn has_custom_gram(&self) -> bool {
        self.gram.is_some()
    }

    /// Inner product of two coordinate vectors with respect to the Gram matrix.
    pub fn inner(&self, a: &[S], b: &[S]) -> S {
        match &self.gram {
            None => {
                let mut acc = S::zero();
                for (x, y) in a.iter().zip(b.iter()) {
                    acc = acc.add(&x.mul(y));
                }
                acc
            }
            Some(g) => {
                let gb = g.mul_vec(b);
                let mut acc = S::zero();
                for (x, y) in a.iter().zip(gb.iter()) {
                    acc = acc.add(&x.mul(y));
                }
                acc
            }
        }
    }
}

fn same_ambient<S: Scalar>(a: &Arc<AmbientSpace<S>>, b: &Arc<AmbientSpace<S>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(GpdError::AmbientMismatch(format!(
            "dim {} vs dim {}",
            a.dim(),
            b.dim()
        )))
    }
}

/// Vector in an ambient space, by coordinates in the distinguished basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<S: Scalar> {
    pub ambient: Arc<AmbientSpace<S>>,
    pub coords: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(ambient: Arc<AmbientSpace<S>>, coords: Vec<S>) -> Result<Self> {
        if coords.len() != ambient.dim() {
            return Err(GpdError::AmbientMismatch(format!(
                "vector has {} coordinates in a dim-{} space",
                coords.len(),
                ambient.dim()
            )));
        }
        Ok(Vector { ambient, coords })
    }

    pub fn zero(ambient: Arc<AmbientSpace<S>>) -> Self {
        let coords = vec![S::zero(); ambient.dim()];
        Vector { ambient, coords }
    }

    pub fn basis_vector(ambient: Arc<AmbientSpace<S>>, index: usize) -> Self {
        let mut v = Vector::zero(ambient);
        v.coords[index] = S::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Vector<S>) -> Result<Vector<S>> {
        same_ambient(&self.ambient, &other.ambient)?;
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(Vector { ambient: self.ambient.clone(), coords })
    }

    pub fn sub(&self, other: &Vector<S>) -> Result<Vector<S>> {
        same_ambient(&self.ambient, &other.ambient)?;
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(Vector { ambient: self.ambient.clone(), coords })
    }

    pub fn scale(&self, factor: &S) -> Vector<S> {
        Vector {
            ambient: self.ambient.clone(),
            coords: self.coords.iter().map(|c| c.mul(factor)).collect(),
        }
    }
}

/// A linear subspace in canonical reduced column echelon form.
#[derive(Clone, Debug)]
pub struct Subspace<S: Scalar> {
    ambient: Arc<AmbientSpace<S>>,
    basis: Matrix<S>,
}

impl<S: Scalar> PartialEq for Subspace<S> {
    fn eq(&self, other: &Self) -> bool {
        if self.ambient.dim() != other.ambient.dim() || self.basis.cols() != other.basis.cols() {
            return false;
        }
        for i in 0..self.basis.rows() {
            for j in 0..self.basis.cols() {
                if !self.basis.get(i, j).eq_scalar(other.basis.get(i, j)) {
                    return false;
                }
            }
        }
        true
    }
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: Arc<AmbientSpace<S>>) -> Self {
        let basis = Matrix::zeros(ambient.dim(), 0);
        Subspace { ambient, basis }
    }

    pub fn full(ambient: Arc<AmbientSpace<S>>) -> Self {
        let basis = Matrix::identity(ambient.dim());
        Subspace { ambient, basis }
    }

    /// Canonicalizes the column span of `columns`.
    pub fn from_matrix(ambient: Arc<AmbientSpace<S>>, columns: &Matrix<S>) -> Self {
        assert_eq!(columns.rows(), ambient.dim());
        let basis = columns.column_echelon();
        Subspace { ambient, basis }
    }

    pub fn ambient(&self) -> &Arc<AmbientSpace<S>> {
        &self.ambient
    }

    /// Canonical basis matrix, one column per basis vector.
    pub fn basis(&self) -> &Matrix<S> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis_vectors(&self) -> Vec<Vector<S>> {
        (0..self.dim())
            .map(|j| Vector {
                ambient: self.ambient.clone(),
                coords: self.basis.col(j),
            })
            .collect()
    }

    pub fn contains_vector(&self, v: &Vector<S>) -> Result<bool> {
        same_ambient(&self.ambient, &v.ambient)?;
        if v.is_zero() {
            return Ok(true);
        }
        Ok(self.basis.solve(&v.coords).is_some())
    }

    pub fn contains(&self, other: &Subspace<S>) -> Result<bool> {
        same_ambient(&self.ambient, &other.ambient)?;
        if other.dim() == 0 {
            return Ok(true);
        }
        let stacked = self.basis.hstack(&other.basis);
        Ok(stacked.rank() == self.dim())
    }
}

/// Smallest subspace containing all the given vectors; the empty list yields
/// the zero subspace.
pub fn span<S: Scalar>(ambient: &Arc<AmbientSpace<S>>, vectors: &[Vector<S>]) -> Result<Subspace<S>> {
    for v in vectors {
        same_ambient(ambient, &v.ambient)?;
    }
    let cols: Vec<Vec<S>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let m = Matrix::from_cols(ambient.dim(), cols);
    Ok(Subspace::from_matrix(ambient.clone(), &m))
}

pub fn sum<S: Scalar>(w1: &Subspace<S>, w2: &Subspace<S>) -> Result<Subspace<S>> {
    same_ambient(w1.ambient(), w2.ambient())?;
    let stacked = w1.basis.hstack(&w2.basis);
    Ok(Subspace::from_matrix(w1.ambient.clone(), &stacked))
}

pub fn sum_many<S: Scalar>(ambient: &Arc<AmbientSpace<S>>, spaces: &[&Subspace<S>]) -> Result<Subspace<S>> {
    let mut acc = Matrix::zeros(ambient.dim(), 0);
    for w in spaces {
        same_ambient(ambient, w.ambient())?;
        acc = acc.hstack(&w.basis);
    }
    Ok(Subspace::from_matrix(ambient.clone(), &acc))
}

/// Intersection, computed from the kernel of the stacked basis map.
pub fn intersect<S: Scalar>(w1: &Subspace<S>, w2: &Subspace<S>) -> Result<Subspace<S>> {
    same_ambient(w1.ambient(), w2.ambient())?;
    if w1.is_zero() || w2.is_zero() {
        return Ok(Subspace::zero(w1.ambient.clone()));
    }
    let stacked = w1.basis.hstack(&w2.basis);
    let ker = stacked.kernel();
    let rows: Vec<usize> = (0..w1.dim()).collect();
    let all: Vec<usize> = (0..ker.cols()).collect();
    let coeffs = ker.submatrix(&rows, &all);
    let inside = w1.basis.mul(&coeffs);
    Ok(Subspace::from_matrix(w1.ambient.clone(), &inside))
}

/// Orthogonal complement with respect to the ambient Gram matrix.
pub fn perp<S: Scalar>(w: &Subspace<S>) -> Subspace<S> {
    let n = w.ambient.dim();
    if w.is_zero() {
        return Subspace::full(w.ambient.clone());
    }
    let constraints = w.basis.transpose().mul(&w.ambient.gram());
    let ker = constraints.kernel();
    debug_assert_eq!(ker.rows(), n);
    Subspace::from_matrix(w.ambient.clone(), &ker)
}

/// Difference of subspaces: the part of `w1` orthogonal to `w2`, computed as
/// the kernel of the bilinear pairing between the two bases.
pub fn ominus<S: Scalar>(w1: &Subspace<S>, w2: &Subspace<S>) -> Result<Subspace<S>> {
    same_ambient(w1.ambient(), w2.ambient())?;
    if w2.is_zero() || w1.is_zero() {
        return Ok(w1.clone());
    }
    let pairing = w2.basis.transpose().mul(&w1.ambient.gram()).mul(&w1.basis);
    let ker = pairing.kernel();
    let inside = w1.basis.mul(&ker);
    Ok(Subspace::from_matrix(w1.ambient.clone(), &inside))
}

/// Orthogonal projection of a vector onto a subspace.
pub fn project<S: Scalar>(v: &Vector<S>, w: &Subspace<S>) -> Result<Vector<S>> {
    same_ambient(&v.ambient, w.ambient())?;
    if w.is_zero() {
        return Ok(Vector::zero(v.ambient.clone()));
    }
    let g = v.ambient.gram();
    let bt_g = w.basis.transpose().mul(&g);
    let normal = bt_g.mul(&w.basis);
    let rhs = bt_g.mul_vec(&v.coords);
    let coeffs = normal
        .solve(&rhs)
        .ok_or_else(|| GpdError::Arithmetic("projection normal equations are singular".into()))?;
    Ok(Vector {
        ambient: v.ambient.clone(),
        coords: w.basis.mul_vec(&coeffs),
    })
}

/// Span of the projections of a basis of `u` onto `w`.
pub fn project_subspace<S: Scalar>(u: &Subspace<S>, w: &Subspace<S>) -> Result<Subspace<S>> {
    same_ambient(u.ambient(), w.ambient())?;
    let mut cols = Vec::new();
    for v in u.basis_vectors() {
        cols.push(project(&v, w)?.coords);
    }
    let m = Matrix::from_cols(u.ambient.dim(), cols);
    Ok(Subspace::from_matrix(u.ambient.clone(), &m))
}

/// True when the combined family is transversal: the dimension of the sum
/// equals the sum of the dimensions.
pub fn is_transverse<S: Scalar>(families: &[Vec<Subspace<S>>]) -> Result<bool> {
    let mut ambient: Option<Arc<AmbientSpace<S>>> = None;
    let mut total_dim = 0usize;
    let mut stacked: Option<Matrix<S>> = None;
    for family in families {
        for w in family {
            match &ambient {
                None => ambient = Some(w.ambient.clone()),
                Some(a) => same_ambient(a, w.ambient())?,
            }
            total_dim += w.dim();
            stacked = Some(match stacked {
                None => w.basis.clone(),
                Some(m) => m.hstack(&w.basis),
            });
        }
    }
    match stacked {
        None => Ok(true),
        Some(m) => Ok(m.rank() == total_dim),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use proptest::prelude::*;

    fn amb(n: usize) -> Arc<AmbientSpace<Rat>> {
        AmbientSpace::standard(n)
    }

    fn vec_of(ambient: &Arc<AmbientSpace<Rat>>, coords: &[i64]) -> Vector<Rat> {
        Vector::new(
            ambient.clone(),
            coords.iter().map(|&c| rat(c, 1)).collect(),
        )
        .unwrap()
    }

    fn span_of(ambient: &Arc<AmbientSpace<Rat>>, gens: &[&[i64]]) -> Subspace<Rat> {
        let vs: Vec<_> = gens.iter().map(|g| vec_of(ambient, g)).collect();
        span(ambient, &vs).unwrap()
    }

    #[test]
    fn empty_span_is_zero() {
        let a = amb(2);
        let s = span(&a, &[]).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn dependent_vectors_collapse() {
        let a = amb(2);
        let s = span_of(&a, &[&[1, 0], &[2, 0]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s, span_of(&a, &[&[1, 0]]));
    }

    #[test]
    fn span_rank_from_elimination_oracle() {
        // e1+e2, e2+e3, e1-e3 has rank 2: (e1+e2) - (e2+e3) = e1-e3.
        let a = amb(3);
        let s = span_of(&a, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]);
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn sum_identity_and_growth() {
        let a = amb(2);
        let w = span_of(&a, &[&[1, 0]]);
        let z = Subspace::zero(a.clone());
        assert_eq!(sum(&w, &z).unwrap(), w);
        assert_eq!(sum(&w, &span_of(&a, &[&[0, 1]])).unwrap().dim(), 2);
        assert_eq!(sum(&w, &span_of(&a, &[&[1, 1]])).unwrap().dim(), 2);
    }

    #[test]
    fn intersection_examples() {
        let a = amb(3);
        let w12 = span_of(&a, &[&[1, 0, 0], &[0, 1, 0]]);
        let w23 = span_of(&a, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(intersect(&w12, &w23).unwrap(), span_of(&a, &[&[0, 1, 0]]));
        assert_eq!(intersect(&w12, &w12).unwrap(), w12);
        let e1 = span_of(&a, &[&[1, 0, 0]]);
        let e2 = span_of(&a, &[&[0, 1, 0]]);
        assert!(intersect(&e1, &e2).unwrap().is_zero());
    }

    #[test]
    fn perp_examples() {
        let a = amb(3);
        assert_eq!(perp(&Subspace::zero(a.clone())), Subspace::full(a.clone()));
        let e1 = span_of(&a, &[&[1, 0, 0]]);
        assert_eq!(perp(&e1), span_of(&a, &[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn perp_respects_gram() {
        // <x, y> = x1 y1 + 2 x2 y2; the complement of e1+e2 is 2 e1 - e2.
        let gram = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(2, 1)],
        ]);
        let a = AmbientSpace::new(vec!["e1".into(), "e2".into()], Some(gram)).unwrap();
        let w = span_of(&a, &[&[1, 1]]);
        assert_eq!(perp(&w), span_of(&a, &[&[2, -1]]));
    }

    #[test]
    fn ominus_examples() {
        let a = amb(2);
        let w12 = Subspace::full(a.clone());
        let e1 = span_of(&a, &[&[1, 0]]);
        assert_eq!(ominus(&w12, &e1).unwrap(), span_of(&a, &[&[0, 1]]));
        assert_eq!(ominus(&e1, &Subspace::zero(a.clone())).unwrap(), e1);
        // No nonzero multiple of e1 is orthogonal to e1+e2.
        let diag = span_of(&a, &[&[1, 1]]);
        assert!(ominus(&e1, &diag).unwrap().is_zero());
    }

    #[test]
    fn projection_examples() {
        let a = amb(2);
        let v = vec_of(&a, &[1, 1]);
        let full = Subspace::full(a.clone());
        assert_eq!(project(&v, &full).unwrap(), v);
        let e1 = span_of(&a, &[&[1, 0]]);
        assert_eq!(project(&v, &e1).unwrap(), vec_of(&a, &[1, 0]));
        // proj of e1 on span{e1+e2} is (e1+e2)/2.
        let diag = span_of(&a, &[&[1, 1]]);
        let p = project(&vec_of(&a, &[1, 0]), &diag).unwrap();
        assert_eq!(p.coords, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn project_subspace_examples() {
        let a = amb(3);
        let w = span_of(&a, &[&[1, 0, 0], &[0, 0, 1]]);
        let u = span_of(&a, &[&[1, 1, 0]]);
        assert_eq!(project_subspace(&u, &w).unwrap(), span_of(&a, &[&[1, 0, 0]]));
        assert_eq!(project_subspace(&w, &w).unwrap(), w);
        let e2 = span_of(&a, &[&[0, 1, 0]]);
        let e1 = span_of(&a, &[&[1, 0, 0]]);
        assert!(project_subspace(&e2, &e1).unwrap().is_zero());
    }

    #[test]
    fn transversality_examples() {
        let a = amb(3);
        let e1 = span_of(&a, &[&[1, 0, 0]]);
        let e2 = span_of(&a, &[&[0, 1, 0]]);
        let e3 = span_of(&a, &[&[0, 0, 1]]);
        let zero = Subspace::zero(a.clone());
        assert!(is_transverse(&[vec![e1.clone()], vec![zero]]).unwrap());
        assert!(!is_transverse(&[vec![e1.clone()], vec![e1.clone()]]).unwrap());
        assert!(is_transverse(&[vec![e1, e2], vec![e3]]).unwrap());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a2 = amb(2);
        let a3 = amb(3);
        let w2 = span_of(&a2, &[&[1, 0]]);
        let w3 = span_of(&a3, &[&[1, 0, 0]]);
        assert!(sum(&w2, &w3).is_err());
    }

    // Strategies for random rational subspaces of a fixed small ambient space.
    fn arb_coords(n: usize) -> impl Strategy<Value = Vec<Rat>> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), n)
            .prop_map(|cs| cs.into_iter().map(|(p, q)| rat(p, q)).collect())
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Vec<Vec<Rat>>> {
        proptest::collection::vec(arb_coords(n), 0..=n)
    }

    fn arb_gram(n: usize) -> impl Strategy<Value = Matrix<Rat>> {
        proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), n).prop_map(move |rows| {
            let a = Matrix::from_rows(
                rows.into_iter()
                    .map(|r| r.into_iter().map(|v| rat(v, 1)).collect())
                    .collect(),
            );
            let mut g = a.transpose().mul(&a);
            for i in 0..n {
                g.set(i, i, g.get(i, i).add(&rat(1, 1)));
            }
            g
        })
    }

    fn build(ambient: &Arc<AmbientSpace<Rat>>, gens: &[Vec<Rat>]) -> Subspace<Rat> {
        let vs: Vec<_> = gens
            .iter()
            .map(|c| Vector::new(ambient.clone(), c.clone()).unwrap())
            .collect();
        span(ambient, &vs).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn canonical_equality_of_regenerated_spans(gens in arb_subspace(4), extra in arb_coords(4)) {
            let a = amb(4);
            let w = build(&a, &gens);
            // A second generating set: basis vectors plus a random element of the span.
            let mut gens2: Vec<Vec<Rat>> = w.basis_vectors().into_iter().map(|v| v.coords).collect();
            if !gens2.is_empty() {
                let mut mixed = vec![Rat::zero(); 4];
                for (v, c) in w.basis_vectors().iter().zip(extra.iter()) {
                    for i in 0..4 {
                        mixed[i] = mixed[i].add(&v.coords[i].mul(c));
                    }
                }
                gens2.push(mixed);
                gens2.rotate_left(1);
            }
            let w2 = build(&a, &gens2);
            prop_assert_eq!(w, w2);
        }

        #[test]
        fn modular_dimension_law(g1 in arb_subspace(4), g2 in arb_subspace(4), gram in arb_gram(4)) {
            let a = AmbientSpace::new(
                (0..4).map(|i| format!("e{i}")).collect(),
                Some(gram),
            ).unwrap();
            let w1 = build(&a, &g1);
            let w2 = build(&a, &g2);
            let s = sum(&w1, &w2).unwrap();
            let i = intersect(&w1, &w2).unwrap();
            prop_assert_eq!(w1.dim() + w2.dim(), s.dim() + i.dim());
        }

        #[test]
        fn difference_sees_only_the_projected_part(g1 in arb_subspace(4), g2 in arb_subspace(4), gram in arb_gram(4)) {
            let a = AmbientSpace::new(
                (0..4).map(|i| format!("e{i}")).collect(),
                Some(gram),
            ).unwrap();
            let w1 = build(&a, &g1);
            let w2 = build(&a, &g2);
            let direct = ominus(&w1, &w2).unwrap();
            let projected = ominus(&w1, &project_subspace(&w2, &w1).unwrap()).unwrap();
            prop_assert_eq!(direct, projected);
        }

        #[test]
        fn complement_absorption_identity(g1 in arb_subspace(4), g2 in arb_subspace(4), gram in arb_gram(4)) {
            // perp(B) ∩ perp(C ∩ perp(B∩C)) = perp(B) ∩ perp(C).
            let a = AmbientSpace::new(
                (0..4).map(|i| format!("e{i}")).collect(),
                Some(gram),
            ).unwrap();
            let b = build(&a, &g1);
            let c = build(&a, &g2);
            let bc = intersect(&b, &c).unwrap();
            let inner = intersect(&c, &perp(&bc)).unwrap();
            let lhs = intersect(&perp(&b), &perp(&inner)).unwrap();
            let rhs = intersect(&perp(&b), &perp(&c)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn nested_difference_collapses_to_sum_difference(
            g1 in arb_subspace(4), g2 in arb_subspace(4), g3 in arb_subspace(4), gram in arb_gram(4)
        ) {
            // For A ⊇ B, C: (A ⊖ B) ⊖ (C ⊖ (B∩C)) = A ⊖ (B+C), and the
            // dimension identity that goes with it.
            let amb = AmbientSpace::new(
                (0..4).map(|i| format!("e{i}")).collect(),
                Some(gram),
            ).unwrap();
            let b = build(&amb, &g1);
            let c = build(&amb, &g2);
            let mut gens = g3.clone();
            gens.extend(b.basis_vectors().into_iter().map(|v| v.coords));
            gens.extend(c.basis_vectors().into_iter().map(|v| v.coords));
            let a = build(&amb, &gens); // guaranteed A ⊇ B, C
            let bc = intersect(&b, &c).unwrap();
            let lhs = ominus(&ominus(&a, &b).unwrap(), &ominus(&c, &bc).unwrap()).unwrap();
            let rhs = ominus(&a, &sum(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(&lhs, &rhs);
            let expected_dim = (a.dim() as i64 - b.dim() as i64) - (c.dim() as i64 - bc.dim() as i64);
            prop_assert_eq!(lhs.dim() as i64, expected_dim);
        }

        #[test]
        fn cancellation_in_chains(g1 in arb_subspace(4), g2 in arb_subspace(4), g3 in arb_subspace(4), gram in arb_gram(4)) {
            // For C ⊆ B ⊆ A: (A ⊖ C) ⊖ (A ⊖ B) = B ⊖ C.
            let amb = AmbientSpace::new(
                (0..4).map(|i| format!("e{i}")).collect(),
                Some(gram),
            ).unwrap();
            let c = build(&amb, &g1);
            let mut gens_b = g2.clone();
            gens_b.extend(c.basis_vectors().into_iter().map(|v| v.coords));
            let b = build(&amb, &gens_b);
            let mut gens_a = g3.clone();
            gens_a.extend(b.basis_vectors().into_iter().map(|v| v.coords));
            let a = build(&amb, &gens_a);
            let lhs = ominus(&ominus(&a, &c).unwrap(), &ominus(&a, &b).unwrap()).unwrap();
            let rhs = ominus(&b, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn subfamilies_of_transverse_families_are_transverse(
            g1 in arb_subspace(5), g2 in arb_subspace(5), mask in proptest::collection::vec(any::<bool>(), 10)
        ) {
            let a = amb(5);
            let w1 = build(&a, &g1);
            let w2 = build(&a, &g2);
            // Build a transverse family by orthogonalizing: W, sum-complement pieces.
            let total = sum(&w1, &w2).unwrap();
            let part1 = w1.clone();
            let part2 = ominus(&total, &w1).unwrap();
            let rest = ominus(&Subspace::full(a.clone()), &total).unwrap();
            let family = vec![part1, part2, rest];
            prop_assert!(is_transverse(&[family.clone()]).unwrap());
            let sub: Vec<Subspace<Rat>> = family
                .iter()
                .zip(mask.iter())
                .filter(|(_, keep)| **keep)
                .map(|(w, _)| w.clone())
                .collect();
            prop_assert!(is_transverse(&[sub]).unwrap());
        }
    }
}
