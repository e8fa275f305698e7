//! Orthogonal inversion of subspace-valued interval functions.
//!
//! The product-order inverse turns an intersection-monotone function into a
//! transverse family of subspaces whose down-set sums recover the input; the
//! reverse-inclusion inverse does the same for functions organized by
//! containment of intervals. Applied to birth-death spaces and to Laplacian
//! kernels of a filtration these two constructions agree away from the
//! diagonal, and their dimensions recover the classical persistence diagram.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{GpdError, Result};
use crate::invariants::SubspaceIntervalFunction;
use crate::poset::{
    interval_domain, leq, Death, IntegerIntervalFunction, Interval, IntervalConnection,
    IntervalOrder, LinearMetricPoset,
};
use crate::scalar::Scalar;
use crate::subspace::{is_transverse, ominus, sum, sum_many, AmbientSpace, Subspace};

/// An interval-indexed family of subspaces of a shared ambient space. The
/// families produced by orthogonal inversion are transverse: the dimension of
/// the total sum equals the sum of the dimensions.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannianDiagram<S: Scalar> {
    pub poset: Arc<LinearMetricPoset<S>>,
    /// Which order produced the diagram; the values of a reverse-inclusion
    /// diagram are stored on the full interval set with zero diagonal.
    pub order_tag: IntervalOrder,
    pub ambient: Arc<AmbientSpace<S>>,
    pub values: BTreeMap<Interval, Subspace<S>>,
}

impl<S: Scalar> GrassmannianDiagram<S> {
    pub fn value(&self, i: &Interval) -> &Subspace<S> {
        self.values.get(i).expect("interval outside domain")
    }

    /// Intervals carrying a nonzero subspace.
    pub fn support(&self) -> Vec<(Interval, &Subspace<S>)> {
        self.values
            .iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(i, w)| (*i, w))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.values.values().map(|w| w.dim()).sum()
    }

    pub fn is_transverse_family(&self) -> bool {
        let family: Vec<Subspace<S>> = self.values.values().cloned().collect();
        is_transverse(&[family]).expect("shared ambient")
    }

    /// Sum of the values over the down-set of `j` in the diagram's order.
    pub fn downset_sum(&self, j: &Interval) -> Result<Subspace<S>> {
        let mut parts: Vec<&Subspace<S>> = Vec::new();
        for (i, w) in &self.values {
            if self.order_tag == IntervalOrder::ReverseInclusion && i.is_diagonal() {
                continue;
            }
            if leq(self.order_tag, i, j)? {
                parts.push(w);
            }
        }
        sum_many(&self.ambient, &parts)
    }
}

/// Product-order orthogonal inverse by the single-difference form: the value
/// at an interval is the input there minus the sum of the two one-step
/// shrinkings. Validates intersection-monotonicity first and reports the
/// violating step pair otherwise.
pub fn product_orthogonal_inverse<S: Scalar>(
    f: &SubspaceIntervalFunction<S>,
) -> Result<GrassmannianDiagram<S>> {
    if f.order != IntervalOrder::Product {
        return Err(GpdError::InvalidDiagram(
            "product inversion needs a product-order function".into(),
        ));
    }
    f.check_intersection_monotone()?;
    let n = f.poset.len();
    let mut values = BTreeMap::new();
    for iv in interval_domain(n, IntervalOrder::Product) {
        let b = iv.birth;
        let prev_b = b.checked_sub(1);
        let v = match iv.death {
            Death::At(d) if d == b => {
                // Diagonal: one difference against the interval one birth
                // earlier with the same death.
                let base = f.value(&iv);
                let shrink = f.value_conv(prev_b, Death::At(d));
                ominus(base, &shrink)?
            }
            Death::At(d) => {
                let base = f.value(&iv);
                let left = f.value_conv(prev_b, Death::At(d));
                let below = f.value(&Interval::finite(b, d - 1));
                ominus(base, &sum(&left, &below)?)?
            }
            Death::Inf => {
                let base = f.value(&iv);
                let left = f.value_conv(prev_b, Death::Inf);
                let below = f.value(&Interval::finite(b, n - 1));
                ominus(base, &sum(&left, &below)?)?
            }
        };
        values.insert(iv, v);
    }
    Ok(GrassmannianDiagram {
        poset: f.poset.clone(),
        order_tag: IntervalOrder::Product,
        ambient: f.ambient.clone(),
        values,
    })
}

/// The same inverse by the literal nested-difference formulas; kept as a
/// differential-testing twin of [`product_orthogonal_inverse`].
pub fn product_orthogonal_inverse_expanded<S: Scalar>(
    f: &SubspaceIntervalFunction<S>,
) -> Result<GrassmannianDiagram<S>> {
    if f.order != IntervalOrder::Product {
        return Err(GpdError::InvalidDiagram(
            "product inversion needs a product-order function".into(),
        ));
    }
    f.check_intersection_monotone()?;
    let n = f.poset.len();
    let mut values = BTreeMap::new();
    for iv in interval_domain(n, IntervalOrder::Product) {
        let b = iv.birth;
        let prev_b = b.checked_sub(1);
        let v = match iv.death {
            Death::At(d) if d == b => {
                ominus(f.value(&iv), &f.value_conv(prev_b, Death::At(d)))?
            }
            Death::At(d) => {
                let first = ominus(f.value(&iv), f.value(&Interval::finite(b, d - 1)))?;
                let second = ominus(
                    &f.value_conv(prev_b, Death::At(d)),
                    &f.value_conv(prev_b, Death::At(d - 1)),
                )?;
                ominus(&first, &second)?
            }
            Death::Inf => {
                let first = ominus(f.value(&iv), f.value(&Interval::finite(b, n - 1)))?;
                let second = ominus(
                    &f.value_conv(prev_b, Death::Inf),
                    &f.value_conv(prev_b, Death::At(n - 1)),
                )?;
                ominus(&first, &second)?
            }
        };
        values.insert(iv, v);
    }
    Ok(GrassmannianDiagram {
        poset: f.poset.clone(),
        order_tag: IntervalOrder::Product,
        ambient: f.ambient.clone(),
        values,
    })
}

/// Reverse-inclusion orthogonal inverse: differences run against the interval
/// with the death endpoint one step later (the containment predecessor), with
/// the slot one past the maximum read as the ray. Rays invert along births
/// only. The result carries zero values on the diagonal.
pub fn reverse_inclusion_orthogonal_inverse<S: Scalar>(
    l: &SubspaceIntervalFunction<S>,
) -> Result<GrassmannianDiagram<S>> {
    if l.order != IntervalOrder::ReverseInclusion {
        return Err(GpdError::InvalidDiagram(
            "reverse-inclusion inversion needs a reverse-inclusion function".into(),
        ));
    }
    let n = l.poset.len();
    let succ = |d: usize| -> Death {
        if d + 1 < n {
            Death::At(d + 1)
        } else {
            Death::Inf
        }
    };
    let mut values = BTreeMap::new();
    for iv in interval_domain(n, IntervalOrder::ReverseInclusion) {
        let b = iv.birth;
        let prev_b = b.checked_sub(1);
        let v = match iv.death {
            Death::At(d) => {
                let first = ominus(l.value(&iv), l.value(&Interval { birth: b, death: succ(d) }))?;
                let second = ominus(
                    &l.value_conv(prev_b, Death::At(d)),
                    &l.value_conv(prev_b, succ(d)),
                )?;
                ominus(&first, &second)?
            }
            Death::Inf => ominus(l.value(&iv), &l.value_conv(prev_b, Death::Inf))?,
        };
        values.insert(iv, v);
    }
    for i in 0..n {
        values.insert(Interval::finite(i, i), Subspace::zero(l.ambient.clone()));
    }
    Ok(GrassmannianDiagram {
        poset: l.poset.clone(),
        order_tag: IntervalOrder::ReverseInclusion,
        ambient: l.ambient.clone(),
        values,
    })
}

/// True when the down-set sums of `candidate` reproduce `reference` at every
/// interval of the order's domain.
pub fn check_monoidal_inverse<S: Scalar>(
    candidate: &GrassmannianDiagram<S>,
    reference: &SubspaceIntervalFunction<S>,
    order: IntervalOrder,
) -> Result<bool> {
    for j in interval_domain(reference.poset.len(), order) {
        let lhs = candidate.downset_sum(&j)?;
        if lhs != *reference.value(&j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monoidal inverse check on the points of a linear poset: partial sums of
/// `candidate` must reproduce `reference`.
pub fn check_monoidal_inverse_points<S: Scalar>(
    candidate: &[Subspace<S>],
    reference: &[Subspace<S>],
) -> Result<bool> {
    if candidate.len() != reference.len() {
        return Ok(false);
    }
    if candidate.is_empty() {
        return Ok(true);
    }
    let ambient = candidate[0].ambient().clone();
    for k in 0..candidate.len() {
        let parts: Vec<&Subspace<S>> = candidate[..=k].iter().collect();
        if sum_many(&ambient, &parts)? != reference[k] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when two interval-indexed families have equal down-set sums at every
/// interval.
pub fn mobius_equivalent<S: Scalar>(
    m1: &GrassmannianDiagram<S>,
    m2: &GrassmannianDiagram<S>,
    order: IntervalOrder,
) -> Result<bool> {
    if m1.poset.len() != m2.poset.len() {
        return Ok(false);
    }
    for j in interval_domain(m1.poset.len(), order) {
        if m1.downset_sum(&j)? != m2.downset_sum(&j)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Point-poset flavor of Mobius equivalence.
pub fn mobius_equivalent_points<S: Scalar>(
    m1: &[Subspace<S>],
    m2: &[Subspace<S>],
) -> Result<bool> {
    if m1.len() != m2.len() {
        return Ok(false);
    }
    if m1.is_empty() {
        return Ok(true);
    }
    let ambient = m1[0].ambient().clone();
    for k in 0..m1.len() {
        let lhs = sum_many(&ambient, &m1[..=k].iter().collect::<Vec<_>>())?;
        let rhs = sum_many(&ambient, &m2[..=k].iter().collect::<Vec<_>>())?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Records the dimension of every value; requires the diagram to be a
/// transverse family.
pub fn dimension_diagram<S: Scalar>(
    m: &GrassmannianDiagram<S>,
) -> Result<IntegerIntervalFunction<S>> {
    if !m.is_transverse_family() {
        return Err(GpdError::InvalidDiagram(
            "dimension extraction needs a transverse family".into(),
        ));
    }
    let values = m
        .values
        .iter()
        .filter(|(i, _)| {
            !(m.order_tag == IntervalOrder::ReverseInclusion && i.is_diagonal())
        })
        .map(|(i, w)| (*i, w.dim() as i64))
        .collect();
    Ok(IntegerIntervalFunction {
        poset: m.poset.clone(),
        order: m.order_tag,
        values,
    })
}

/// Pushforward of a diagram along the interval action of a Galois connection:
/// sums fibers, with empty fibers giving the zero subspace.
pub fn pushforward_diagram<S: Scalar>(
    conn: &IntervalConnection<S>,
    m: &GrassmannianDiagram<S>,
) -> GrassmannianDiagram<S> {
    let target = conn.points.target.clone();
    let mut values: BTreeMap<Interval, Vec<&Subspace<S>>> = BTreeMap::new();
    for j in interval_domain(target.len(), IntervalOrder::Product) {
        values.insert(j, Vec::new());
    }
    for (i, w) in &m.values {
        let j = conn.map_left(i);
        values.get_mut(&j).expect("image interval outside domain").push(w);
    }
    let values = values
        .into_iter()
        .map(|(j, parts)| {
            let w = sum_many(&m.ambient, &parts).expect("shared ambient");
            (j, w)
        })
        .collect();
    GrassmannianDiagram {
        poset: target,
        order_tag: m.order_tag,
        ambient: m.ambient.clone(),
        values,
    }
}

/// Pullback of a subspace-valued interval function along the right adjoint.
pub fn pullback_function<S: Scalar>(
    conn: &IntervalConnection<S>,
    f: &SubspaceIntervalFunction<S>,
) -> SubspaceIntervalFunction<S> {
    let target = conn.points.target.clone();
    let values = interval_domain(target.len(), f.order)
        .into_iter()
        .map(|j| {
            let i = conn.map_right(&j);
            (j, f.value(&i).clone())
        })
        .collect();
    SubspaceIntervalFunction {
        poset: target,
        order: f.order,
        ambient: f.ambient.clone(),
        values,
    }
}
