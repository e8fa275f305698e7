//! Subspace-valued interval functions attached to a filtration: birth-death
//! spaces, persistent Laplacian kernels, persistent Betti numbers and the
//! harmonic tower.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::ChainData;
use crate::error::{GpdError, Result};
use crate::matrix::Matrix;
use crate::poset::{interval_domain, Death, Interval, IntervalOrder, LinearMetricPoset};
use crate::scalar::Scalar;
use crate::subspace::{
    intersect, ominus, perp, project, project_subspace, span, sum, AmbientSpace, Subspace, Vector,
};

/// A total map from the interval domain of a linear poset to subspaces of a
/// shared ambient space.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceIntervalFunction<S: Scalar> {
    pub poset: Arc<LinearMetricPoset<S>>,
    pub order: IntervalOrder,
    pub ambient: Arc<AmbientSpace<S>>,
    pub values: BTreeMap<Interval, Subspace<S>>,
}

impl<S: Scalar> SubspaceIntervalFunction<S> {
    pub fn new(
        poset: Arc<LinearMetricPoset<S>>,
        order: IntervalOrder,
        ambient: Arc<AmbientSpace<S>>,
        values: BTreeMap<Interval, Subspace<S>>,
    ) -> Result<Self> {
        for i in interval_domain(poset.len(), order) {
            if !values.contains_key(&i) {
                return Err(GpdError::MissingInterval(format!("{i:?}")));
            }
        }
        Ok(SubspaceIntervalFunction { poset, order, ambient, values })
    }

    pub fn value(&self, i: &Interval) -> &Subspace<S> {
        self.values.get(i).expect("interval outside domain")
    }

    /// Value with boundary conventions: birth below the minimum reads as the
    /// zero subspace, a death one past the maximum reads as the ray.
    pub fn value_conv(&self, birth: Option<usize>, death: Death) -> Subspace<S> {
        match birth {
            None => Subspace::zero(self.ambient.clone()),
            Some(b) => self.value(&Interval { birth: b, death }).clone(),
        }
    }

    /// Checks order preservation under the product order together with the
    /// independence condition: the two one-step enlargements of an interval
    /// intersect back to its value. Returns the violating step pair.
    pub fn check_intersection_monotone(&self) -> Result<()> {
        let n = self.poset.len();
        let succ = |d: usize| -> Death {
            if d + 1 < n {
                Death::At(d + 1)
            } else {
                Death::Inf
            }
        };
        // Order preservation along covering moves.
        for iv in interval_domain(n, IntervalOrder::Product) {
            let v = self.value(&iv);
            match iv.death {
                Death::At(d) => {
                    let up = self.value(&Interval { birth: iv.birth, death: succ(d) });
                    if !up.contains(v)? {
                        return Err(GpdError::NotIntersectionMonotone {
                            i: iv.birth + 1,
                            j: d + 1,
                            msg: "value shrinks when the death endpoint grows".into(),
                        });
                    }
                    if iv.birth < d {
                        let right = self.value(&Interval::finite(iv.birth + 1, d));
                        if !right.contains(v)? {
                            return Err(GpdError::NotIntersectionMonotone {
                                i: iv.birth + 1,
                                j: d + 1,
                                msg: "value shrinks when the birth endpoint grows".into(),
                            });
                        }
                    }
                }
                Death::Inf => {
                    if iv.birth + 1 < n {
                        let right = self.value(&Interval::ray(iv.birth + 1));
                        if !right.contains(v)? {
                            return Err(GpdError::NotIntersectionMonotone {
                                i: iv.birth + 1,
                                j: n,
                                msg: "ray value shrinks when the birth endpoint grows".into(),
                            });
                        }
                    }
                }
            }
        }
        // Independence of the two enlargement directions, with the death slot
        // one past the maximum read as the ray.
        for i in 0..n {
            for j in (i + 1)..n {
                let right = self.value(&Interval::finite(i + 1, j));
                let up = self.value(&Interval { birth: i, death: succ(j) });
                let meet = intersect(right, up)?;
                if meet != *self.value(&Interval::finite(i, j)) {
                    return Err(GpdError::NotIntersectionMonotone {
                        i: i + 1,
                        j: j + 1,
                        msg: "enlargements in the two directions are not independent".into(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Birth-death spaces of a filtration in degree `q`, on the product order:
/// the value at `[p_i, p_j]` is `Z_q(K_i) ∩ B_q(K_j)`, the value at the ray
/// `[p_i, ∞)` is `Z_q(K_i)`.
pub fn birth_death_spaces<S: Scalar>(data: &ChainData<S>, q: usize) -> SubspaceIntervalFunction<S> {
    let n = data.steps();
    let mut values = BTreeMap::new();
    for iv in interval_domain(n, IntervalOrder::Product) {
        let v = match iv.death {
            Death::At(j) => intersect(data.cycles(q, iv.birth), data.boundaries(q, j))
                .expect("shared ambient"),
            Death::Inf => data.cycles(q, iv.birth).clone(),
        };
        values.insert(iv, v);
    }
    SubspaceIntervalFunction {
        poset: data.filtration.poset().clone(),
        order: IntervalOrder::Product,
        ambient: data.ambient(q).clone(),
        values,
    }
}

/// Rank of the map induced on degree-`q` homology by the inclusion of step `i`
/// into step `j`, computed as `dim Z_q(K_i) - dim(Z_q(K_i) ∩ B_q(K_j))`.
pub fn persistent_betti<S: Scalar>(data: &ChainData<S>, q: usize, i: usize, j: usize) -> usize {
    assert!(i <= j, "persistent Betti numbers need i <= j");
    let z = data.cycles(q, i);
    let zb = intersect(z, data.boundaries(q, j)).expect("shared ambient");
    z.dim() - zb.dim()
}

/// Independent route to the same rank: `dim(Z_i + B_j) - dim B_j`.
pub fn persistent_betti_quotient_oracle<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
) -> usize {
    let z = data.cycles(q, i);
    let b = data.boundaries(q, j);
    let s = sum(z, b).expect("shared ambient");
    s.dim() - b.dim()
}

/// The subspace of degree-`q` chains supported on step `j` whose boundary is
/// supported on step `i`, inside the degree-`q` chain space of the final
/// complex.
pub fn relative_chain_space<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
) -> Subspace<S> {
    assert!(i <= j, "relative chain spaces need i <= j");
    let ctx = data.context(q);
    let ambient = ctx.ambient.clone();
    let present = ctx.indices_in(data.sublevel(j));
    if present.is_empty() {
        return Subspace::zero(ambient);
    }
    if q == 0 {
        let cols: Vec<Vec<S>> = present
            .iter()
            .map(|&c| {
                let mut col = vec![S::zero(); ctx.dim()];
                col[c] = S::one();
                col
            })
            .collect();
        return Subspace::from_matrix(ambient, &Matrix::from_cols(ctx.dim(), cols));
    }
    let lower = data.context(q - 1);
    let lower_in_i: Vec<bool> = {
        let idx = lower.indices_in(data.sublevel(i));
        let mut mask = vec![false; lower.dim()];
        for p in idx {
            mask[p] = true;
        }
        mask
    };
    let full = data.full_boundary(q);
    let forbidden_rows: Vec<usize> = (0..full.rows()).filter(|&r| !lower_in_i[r]).collect();
    let constraints = full.submatrix(&forbidden_rows, &present);
    let ker = constraints.kernel();
    let mut cols = Vec::new();
    for c in 0..ker.cols() {
        let mut col = vec![S::zero(); ctx.dim()];
        for (r, &idx) in present.iter().enumerate() {
            col[idx] = ker.get(r, c).clone();
        }
        cols.push(col);
    }
    Subspace::from_matrix(ambient, &Matrix::from_cols(ctx.dim(), cols))
}

/// The persistent Laplacian between steps `i <= j` in degree `q`, as an
/// operator matrix on the degree-`q` chain space of step `i` (columns indexed
/// by the `q`-simplices of step `i`).
pub struct PersistentLaplacian<S: Scalar> {
    pub matrix: Matrix<S>,
    /// Positions of the step-`i` `q`-simplices inside the full chain basis.
    pub support: Vec<usize>,
}

pub fn persistent_laplacian<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
) -> PersistentLaplacian<S> {
    assert!(i <= j, "persistent Laplacians need i <= j");
    let ctx = data.context(q);
    let support = ctx.indices_in(data.sublevel(i));
    let m = support.len();
    let gram_q = ctx.ambient.gram();
    let g_i = gram_q.submatrix(&support, &support);

    // Up term: restrict the degree-(q+1) boundary to chains of step j whose
    // boundary lands in step i, compose with its adjoint.
    let rel = relative_chain_space(data, q + 1, i, j);
    let mut up = Matrix::zeros(m, m);
    if rel.dim() > 0 {
        let full_rows: Vec<usize> = (0..data.full_boundary(q + 1).rows()).collect();
        let a_kwide = data.full_boundary(q + 1).mul(rel.basis());
        let a = a_kwide.submatrix(&support, &(0..a_kwide.cols()).collect::<Vec<_>>());
        debug_assert_eq!(full_rows.len(), data.context(q).dim());
        let gram_up = data.context(q + 1).ambient.gram();
        let g_rel = rel.basis().transpose().mul(&gram_up).mul(rel.basis());
        let g_rel_inv = g_rel.inverse().expect("restricted gram is positive definite");
        let a_star = g_rel_inv.mul(&a.transpose()).mul(&g_i);
        up = a.mul(&a_star);
    }

    // Down term: the boundary of step i in degree q, with its adjoint.
    let mut down = Matrix::zeros(m, m);
    if q > 0 {
        let lower_ctx = data.context(q - 1);
        let lower_support = lower_ctx.indices_in(data.sublevel(i));
        if !lower_support.is_empty() {
            let d = data.full_boundary(q).submatrix(&lower_support, &support);
            let g_lower = lower_ctx.ambient.gram().submatrix(&lower_support, &lower_support);
            let g_i_inv = g_i.inverse().expect("restricted gram is positive definite");
            let d_star = g_i_inv.mul(&d.transpose()).mul(&g_lower);
            down = d_star.mul(&d);
        }
    }
    PersistentLaplacian { matrix: up.add_matrix(&down), support }
}

impl<S: Scalar> PersistentLaplacian<S> {
    /// Kernel of the operator, embedded into the full chain space.
    pub fn kernel_subspace(&self, ambient: &Arc<AmbientSpace<S>>) -> Subspace<S> {
        let ker = self.matrix.kernel();
        let mut cols = Vec::new();
        for c in 0..ker.cols() {
            let mut col = vec![S::zero(); ambient.dim()];
            for (r, &idx) in self.support.iter().enumerate() {
                col[idx] = ker.get(r, c).clone();
            }
            cols.push(col);
        }
        Subspace::from_matrix(ambient.clone(), &Matrix::from_cols(ambient.dim(), cols))
    }
}

/// Kernel of the persistent Laplacian by the intersection route:
/// `Z_q(K_i) ⊖ (Z_q(K_i) ∩ B_q(K_j))`, which avoids operator products.
pub fn laplacian_kernel_via_intersection<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
) -> Subspace<S> {
    let z = data.cycles(q, i);
    let zb = intersect(z, data.boundaries(q, j)).expect("shared ambient");
    ominus(z, &zb).expect("shared ambient")
}

/// Kernel of the persistent Laplacian computed from the operator matrix.
pub fn laplacian_kernel_via_operator<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
) -> Subspace<S> {
    persistent_laplacian(data, q, i, j).kernel_subspace(data.ambient(q))
}

/// Degree-`q` Laplacian kernels of a filtration on the reverse inclusion
/// order: the value at `[p_i, p_j]` is the kernel of the persistent Laplacian
/// between steps `i` and `j - 1`; the value at the ray `[p_i, ∞)` uses the
/// final step.
pub fn laplacian_kernels<S: Scalar>(data: &ChainData<S>, q: usize) -> SubspaceIntervalFunction<S> {
    let n = data.steps();
    let mut values = BTreeMap::new();
    for iv in interval_domain(n, IntervalOrder::ReverseInclusion) {
        let v = match iv.death {
            Death::At(j) => laplacian_kernel_via_intersection(data, q, iv.birth, j - 1),
            Death::Inf => laplacian_kernel_via_intersection(data, q, iv.birth, n - 1),
        };
        values.insert(iv, v);
    }
    SubspaceIntervalFunction {
        poset: data.filtration.poset().clone(),
        order: IntervalOrder::ReverseInclusion,
        ambient: data.ambient(q).clone(),
        values,
    }
}

/// The spaces of the harmonic tower between steps `i < j` (1-based step
/// indices are not used here; `i`, `j` are 0-based).
pub struct HarmonicTower<S: Scalar> {
    /// Harmonic space of step `i`: `Z_q(K_i) ⊖ B_q(K_i)`.
    pub harmonic: Subspace<S>,
    /// Image of the projection-induced map from step `i` to step `j`.
    pub gamma_image: Subspace<S>,
    /// Preimage of the step `i-1` image inside the step-`i` harmonic space.
    pub m_space: Subspace<S>,
    /// Preimage of the step `i-1` image one death earlier.
    pub n_space: Subspace<S>,
    /// `m_space ⊖ n_space`; its dimension is the classical multiplicity.
    pub p_space: Subspace<S>,
}

/// Harmonic space of a single step.
pub fn harmonic_space<S: Scalar>(data: &ChainData<S>, q: usize, i: usize) -> Subspace<S> {
    ominus(data.cycles(q, i), data.boundaries(q, i)).expect("shared ambient")
}

/// Image of the harmonic space of step `i` under projection away from the
/// boundaries of step `j`.
pub fn harmonic_image<S: Scalar>(data: &ChainData<S>, q: usize, i: usize, j: usize) -> Subspace<S> {
    let h = harmonic_space(data, q, i);
    let target = perp(data.boundaries(q, j));
    project_subspace(&h, &target).expect("shared ambient")
}

/// Preimage of `target` under the projection-induced map from the harmonic
/// space of step `i` to that of step `j`: solves the linear membership
/// condition exactly rather than inverting the map.
pub fn gamma_preimage<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
    target: &Subspace<S>,
) -> Subspace<S> {
    let h = harmonic_space(data, q, i);
    if h.is_zero() {
        return h;
    }
    let wall = perp(data.boundaries(q, j));
    let mut projected_cols = Vec::new();
    for v in h.basis_vectors() {
        projected_cols.push(project(&v, &wall).expect("shared ambient").coords);
    }
    let ambient_dim = h.ambient().dim();
    let proj_h = Matrix::from_cols(ambient_dim, projected_cols);
    // Solve proj(h x) ∈ target: kernel of [proj_h | -basis(target)].
    let stacked = if target.dim() > 0 {
        proj_h.hstack(target.basis())
    } else {
        proj_h.clone()
    };
    let ker = stacked.kernel();
    let rows: Vec<usize> = (0..h.dim()).collect();
    let coeffs = ker.submatrix(&rows, &(0..ker.cols()).collect::<Vec<_>>());
    let inside = h.basis().mul(&coeffs);
    Subspace::from_matrix(h.ambient().clone(), &inside)
}

/// Computes the harmonic tower at `0 <= i < j < n`. The step before the
/// first is the empty complex, so at `i = 0` the preimage targets are zero
/// and the tower counts everything that dies by the given step.
pub fn harmonic_tower<S: Scalar>(
    data: &ChainData<S>,
    q: usize,
    i: usize,
    j: usize,
) -> Result<HarmonicTower<S>> {
    if i >= j || j >= data.steps() {
        return Err(GpdError::IndexOutOfRange(format!(
            "harmonic tower needs steps i < j < {}, got ({i}, {j})",
            data.steps()
        )));
    }
    let harmonic = harmonic_space(data, q, i);
    let gamma_image = harmonic_image(data, q, i, j);
    let (m_target, n_target) = if i == 0 {
        let zero = Subspace::zero(data.ambient(q).clone());
        (zero.clone(), zero)
    } else {
        (
            harmonic_image(data, q, i - 1, j),
            harmonic_image(data, q, i - 1, j - 1),
        )
    };
    let m_space = gamma_preimage(data, q, i, j, &m_target);
    let n_space = gamma_preimage(data, q, i, j - 1, &n_target);
    let p_space = ominus(&m_space, &n_space).expect("shared ambient");
    Ok(HarmonicTower { harmonic, gamma_image, m_space, n_space, p_space })
}

/// Span of the standard basis chains of the given vertices, a helper for
/// degree-0 arguments.
pub fn vertex_span<S: Scalar>(
    ambient: &Arc<AmbientSpace<S>>,
    indices: &[usize],
) -> Subspace<S> {
    let vs: Vec<Vector<S>> = indices
        .iter()
        .map(|&i| Vector::basis_vector(ambient.clone(), i))
        .collect();
    span(ambient, &vs).expect("shared ambient")
}
