//! Cost-carrying morphisms between filtrations, intersection-monotone
//! functions, transverse diagrams and integer diagrams, with functorial
//! transport and path-cost evaluation. Path costs are certified upper bounds
//! for the edit distances; the infimum itself is never computed.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complex::{ChainData, Filtration};
use crate::error::{GpdError, Result};
use crate::invariants::{birth_death_spaces, SubspaceIntervalFunction};
use crate::inversion::{
    dimension_diagram, mobius_equivalent, product_orthogonal_inverse, pushforward_diagram,
    GrassmannianDiagram,
};
use crate::matrix::Matrix;
use crate::poset::{
    interval_domain, Adjoint, ExtScalar, GaloisConnection, IntegerIntervalFunction, Interval,
    IntervalOrder,
};
use crate::scalar::Scalar;
use crate::subspace::{is_transverse, sum, Subspace};

/// Morphism of filtrations of a fixed final complex: a Galois connection
/// whose right adjoint pulls the source filtration back to the target one.
#[derive(Clone, Debug)]
pub struct FilMorphism<S: Scalar> {
    pub source: Arc<Filtration<S>>,
    pub target: Arc<Filtration<S>>,
    pub conn: GaloisConnection<S>,
}

/// Morphism of intersection-monotone space functions: the right adjoint's
/// interval action pulls the source function back to the target one.
#[derive(Clone, Debug)]
pub struct InnMorphism<S: Scalar> {
    pub source: SubspaceIntervalFunction<S>,
    pub target: SubspaceIntervalFunction<S>,
    pub conn: GaloisConnection<S>,
}

/// Morphism of transverse diagrams: a Galois connection together with a
/// diagonal correction term; the pushforward of the source must be Mobius
/// equivalent to the target plus the correction.
#[derive(Clone, Debug)]
pub struct GpdMorphism<S: Scalar> {
    pub source: GrassmannianDiagram<S>,
    pub target: GrassmannianDiagram<S>,
    pub conn: GaloisConnection<S>,
    /// Correction supported on diagonal intervals of the target poset.
    pub zeta: BTreeMap<Interval, Subspace<S>>,
}

/// Morphism of non-negative integer diagrams: fibers of the interval action
/// sum to the target value on every non-diagonal interval.
#[derive(Clone, Debug)]
pub struct ChargeMorphism<S: Scalar> {
    pub source: IntegerIntervalFunction<S>,
    pub target: IntegerIntervalFunction<S>,
    pub conn: GaloisConnection<S>,
}

fn verify_conn<S: Scalar>(conn: &GaloisConnection<S>) -> Result<()> {
    conn.verify()
        .map_err(|v| GpdError::InvalidMorphism(v.detail))
}

impl<S: Scalar> FilMorphism<S> {
    pub fn validate(&self) -> Result<()> {
        verify_conn(&self.conn)?;
        if self.conn.source != *self.source.poset() || self.conn.target != *self.target.poset() {
            return Err(GpdError::InvalidMorphism(
                "connection endpoints do not match the filtration posets".into(),
            ));
        }
        if self.source.complex() != self.target.complex()
            || self.source.vertex_names() != self.target.vertex_names()
        {
            return Err(GpdError::InvalidMorphism(
                "filtrations do not share the final complex".into(),
            ));
        }
        for q in 0..self.target.steps() {
            let pulled = self.source.sublevel(self.conn.right[q])?;
            let direct = self.target.sublevel(q)?;
            if pulled != direct {
                return Err(GpdError::InvalidMorphism(format!(
                    "right adjoint does not transport sublevels at target step {q}"
                )));
            }
        }
        Ok(())
    }

    pub fn cost(&self) -> ExtScalar<S> {
        self.conn.distortion(Adjoint::Left)
    }
}

impl<S: Scalar> InnMorphism<S> {
    pub fn validate(&self) -> Result<()> {
        verify_conn(&self.conn)?;
        if self.source.order != IntervalOrder::Product || self.target.order != IntervalOrder::Product {
            return Err(GpdError::InvalidMorphism(
                "intersection-monotone morphisms live on the product order".into(),
            ));
        }
        let bar = self.conn.bar();
        for j in interval_domain(self.conn.target.len(), IntervalOrder::Product) {
            let pulled = self.source.value(&bar.map_right(&j));
            if pulled != self.target.value(&j) {
                return Err(GpdError::InvalidMorphism(format!(
                    "pullback disagrees with the target at {j:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn cost(&self) -> ExtScalar<S> {
        self.conn.distortion(Adjoint::Left)
    }
}

impl<S: Scalar> GpdMorphism<S> {
    /// Zeta values outside the diagonal are rejected by construction here.
    pub fn new(
        source: GrassmannianDiagram<S>,
        target: GrassmannianDiagram<S>,
        conn: GaloisConnection<S>,
        zeta: BTreeMap<Interval, Subspace<S>>,
    ) -> Result<Self> {
        for i in zeta.keys() {
            if !i.is_diagonal() {
                return Err(GpdError::InvalidMorphism(format!(
                    "correction term supported off the diagonal at {i:?}"
                )));
            }
        }
        Ok(GpdMorphism { source, target, conn, zeta })
    }

    /// The target diagram with the correction added value-wise.
    pub fn corrected_target(&self) -> GrassmannianDiagram<S> {
        let mut values = self.target.values.clone();
        for (i, z) in &self.zeta {
            let w = sum(values.get(i).expect("diagonal interval in domain"), z)
                .expect("shared ambient");
            values.insert(*i, w);
        }
        GrassmannianDiagram {
            poset: self.target.poset.clone(),
            order_tag: IntervalOrder::Product,
            ambient: self.target.ambient.clone(),
            values,
        }
    }

    pub fn validate(&self) -> Result<()> {
        verify_conn(&self.conn)?;
        let zeta_family: Vec<Subspace<S>> = self.zeta.values().cloned().collect();
        let target_family: Vec<Subspace<S>> = self.target.values.values().cloned().collect();
        if !is_transverse(&[zeta_family, target_family])? {
            return Err(GpdError::InvalidMorphism(
                "correction family is not transversal to the target family".into(),
            ));
        }
        let pushed = pushforward_diagram(&self.conn.bar(), &self.source);
        if !mobius_equivalent(&pushed, &self.corrected_target(), IntervalOrder::Product)? {
            return Err(GpdError::InvalidMorphism(
                "pushforward is not Mobius equivalent to the corrected target".into(),
            ));
        }
        Ok(())
    }

    pub fn cost(&self) -> ExtScalar<S> {
        self.conn.distortion(Adjoint::Left)
    }

    /// Composition, with the correction of the second leg added to the
    /// pushforward of the first leg's correction.
    pub fn compose(&self, other: &GpdMorphism<S>) -> Result<GpdMorphism<S>> {
        let conn = self.conn.compose(&other.conn)?;
        let bar = other.conn.bar();
        let mut zeta = other.zeta.clone();
        for (i, z) in &self.zeta {
            let j = bar.map_left(i);
            let merged = match zeta.get(&j) {
                Some(existing) => sum(existing, z)?,
                None => z.clone(),
            };
            zeta.insert(j, merged);
        }
        GpdMorphism::new(self.source.clone(), other.target.clone(), conn, zeta)
    }
}

impl<S: Scalar> ChargeMorphism<S> {
    pub fn validate(&self) -> Result<()> {
        verify_conn(&self.conn)?;
        let bar = self.conn.bar();
        let mut fibers: BTreeMap<Interval, i64> = BTreeMap::new();
        for j in interval_domain(self.conn.target.len(), IntervalOrder::Product) {
            fibers.insert(j, 0);
        }
        for (i, v) in &self.source.values {
            let j = bar.map_left(i);
            *fibers.get_mut(&j).expect("image outside domain") += v;
        }
        for (j, total) in fibers {
            if j.is_diagonal() {
                continue;
            }
            if self.target.values.get(&j).copied().unwrap_or(0) != total {
                return Err(GpdError::InvalidMorphism(format!(
                    "charge not preserved at {j:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn cost(&self) -> ExtScalar<S> {
        self.conn.distortion(Adjoint::Left)
    }
}

/// Transports a filtration morphism to the induced morphism of degree-`q`
/// birth-death functions, over the same connection.
pub fn induce_inn<S: Scalar>(
    m: &FilMorphism<S>,
    q: usize,
    grams: &BTreeMap<usize, Matrix<S>>,
) -> Result<InnMorphism<S>> {
    let source_data = ChainData::new((*m.source).clone(), q, grams)?;
    let target_data = ChainData::new((*m.target).clone(), q, grams)?;
    Ok(InnMorphism {
        source: birth_death_spaces(&source_data, q),
        target: birth_death_spaces(&target_data, q),
        conn: m.conn.clone(),
    })
}

/// Transports a morphism of intersection-monotone functions to the induced
/// morphism of their inverses, with zero correction.
pub fn induce_gpd<S: Scalar>(m: &InnMorphism<S>) -> Result<GpdMorphism<S>> {
    let source = product_orthogonal_inverse(&m.source)?;
    let target = product_orthogonal_inverse(&m.target)?;
    GpdMorphism::new(source, target, m.conn.clone(), BTreeMap::new())
}

/// Transports a diagram morphism to the induced morphism of dimension
/// diagrams.
pub fn induce_charge<S: Scalar>(m: &GpdMorphism<S>) -> Result<ChargeMorphism<S>> {
    Ok(ChargeMorphism {
        source: dimension_diagram(&m.source)?,
        target: dimension_diagram(&m.target)?,
        conn: m.conn.clone(),
    })
}

/// Direction of a morphism inside a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepDirection {
    Forward,
    Backward,
}

/// One leg of a zigzag path: a cost and the identities of its two ends.
pub struct PathStep<S: Scalar> {
    pub cost: ExtScalar<S>,
    pub direction: StepDirection,
    pub from_id: usize,
    pub to_id: usize,
}

/// Sum of the costs of a composable zigzag; an upper bound for the edit
/// distance between the endpoints. Object identities are caller-assigned
/// labels; consecutive steps must share the connecting object.
pub fn path_cost<S: Scalar>(steps: &[PathStep<S>]) -> Result<ExtScalar<S>> {
    let mut total = ExtScalar::zero();
    for (k, step) in steps.iter().enumerate() {
        if k > 0 {
            let prev = &steps[k - 1];
            let prev_end = match prev.direction {
                StepDirection::Forward => prev.to_id,
                StepDirection::Backward => prev.from_id,
            };
            let here = match step.direction {
                StepDirection::Forward => step.from_id,
                StepDirection::Backward => step.to_id,
            };
            if prev_end != here {
                return Err(GpdError::InvalidMorphism(format!(
                    "path steps {k} and {} do not share an object",
                    k - 1
                )));
            }
        }
        total = total.add_ext(&step.cost);
    }
    Ok(total)
}

/// True when `alpha(J) = beta(J)` summed over fibers holds off the diagonal;
/// used as the integer-level sanity check mirroring diagram morphisms.
pub fn charge_preserved_off_diagonal<S: Scalar>(
    conn: &GaloisConnection<S>,
    alpha: &IntegerIntervalFunction<S>,
    beta: &IntegerIntervalFunction<S>,
) -> bool {
    ChargeMorphism {
        source: alpha.clone(),
        target: beta.clone(),
        conn: conn.clone(),
    }
    .validate()
    .is_ok()
}

/// Helper for tests and verification: the identity morphism on a diagram with
/// a diagonal correction moving all diagonal values (its cost is zero).
pub fn diagonal_erasure_morphism<S: Scalar>(
    m: &GrassmannianDiagram<S>,
) -> Result<GpdMorphism<S>> {
    let mut stripped = m.clone();
    let mut zeta = BTreeMap::new();
    for i in interval_domain(m.poset.len(), IntervalOrder::Product) {
        if i.is_diagonal() {
            let v = m.value(&i).clone();
            if !v.is_zero() {
                zeta.insert(i, v);
            }
            stripped
                .values
                .insert(i, Subspace::zero(m.ambient.clone()));
        }
    }
    let conn = GaloisConnection::identity(m.poset.clone());
    GpdMorphism::new(m.clone(), stripped, conn, zeta)
}

/// Off-diagonal equality of two diagrams over the same poset, the relation the
/// diagonal-blind comparison reports.
pub fn equal_off_diagonal<S: Scalar>(
    m1: &GrassmannianDiagram<S>,
    m2: &GrassmannianDiagram<S>,
) -> bool {
    if m1.poset.len() != m2.poset.len() {
        return false;
    }
    for i in interval_domain(m1.poset.len(), IntervalOrder::Product) {
        if i.is_diagonal() {
            continue;
        }
        if m1.value(&i) != m2.value(&i) {
            return false;
        }
    }
    true
}

/// Down-set comparison helper shared by tests: true when the two integer
/// functions have identical down-set sums everywhere.
pub fn integer_mobius_equivalent<S: Scalar>(
    m1: &IntegerIntervalFunction<S>,
    m2: &IntegerIntervalFunction<S>,
) -> bool {
    if m1.order != m2.order || m1.poset.len() != m2.poset.len() {
        return false;
    }
    for j in interval_domain(m1.poset.len(), m1.order) {
        if m1.downset_sum(&j) != m2.downset_sum(&j) {
            return false;
        }
    }
    true
}

/// Convenience: validity check that returns the diagnostic instead of a bool.
pub fn describe_failure<T>(r: Result<T>) -> Option<String> {
    match r {
        Ok(_) => None,
        Err(e) => Some(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::LinearMetricPoset;
    use crate::scalar::{rat, Rat};

    fn filt(entries: &[(&[&str], i64)]) -> Arc<Filtration<Rat>> {
        Arc::new(
            Filtration::new(
                None,
                entries.iter()
                    .map(|(vs, g)| (vs.iter().map(|s| s.to_string()).collect(), rat(*g, 1)))
                    .collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_transports_through_all_levels_with_zero_cost() {
        let f = filt(&[
            (&["a"], 1),
            (&["b"], 1),
            (&["a", "b"], 2),
            (&["c"], 2),
            (&["a", "c"], 3),
        ]);
        let conn = GaloisConnection::identity(f.poset().clone());
        let fm = FilMorphism { source: f.clone(), target: f.clone(), conn };
        fm.validate().unwrap();
        assert_eq!(fm.cost(), ExtScalar::zero());
        let im = induce_inn(&fm, 0, &BTreeMap::new()).unwrap();
        im.validate().unwrap();
        assert_eq!(im.cost(), ExtScalar::zero());
        let gm = induce_gpd(&im).unwrap();
        gm.validate().unwrap();
        assert_eq!(gm.cost(), ExtScalar::zero());
        let cm = induce_charge(&gm).unwrap();
        cm.validate().unwrap();
        assert_eq!(cm.cost(), ExtScalar::zero());
    }

    #[test]
    fn coarsening_connection_transports() {
        // Source over 1 < 2 < 3, target over 1 < 3 obtained by pulling the
        // filtration back along the right adjoint.
        let f = filt(&[
            (&["a"], 1),
            (&["b"], 1),
            (&["c"], 2),
            (&["a", "b"], 2),
            (&["a", "c"], 3),
            (&["b", "c"], 3),
        ]);
        let q_poset = LinearMetricPoset::from_grades(vec![rat(1, 1), rat(3, 1)]).unwrap();
        let conn =
            GaloisConnection::from_left(f.poset().clone(), q_poset, vec![0, 1, 1]).unwrap();
        // Build the pulled-back filtration over the coarse poset.
        let mut simplices = Vec::new();
        for (s, grade) in [
            (vec!["a"], 1),
            (vec!["b"], 1),
            (vec!["c"], 3),
            (vec!["a", "b"], 3),
            (vec!["a", "c"], 3),
            (vec!["b", "c"], 3),
        ] {
            simplices.push((s.into_iter().map(String::from).collect(), rat(grade, 1)));
        }
        let g = Arc::new(Filtration::new(None, simplices).unwrap());
        let fm = FilMorphism { source: f, target: g, conn };
        fm.validate().unwrap();
        let im = induce_inn(&fm, 0, &BTreeMap::new()).unwrap();
        im.validate().unwrap();
        let gm = induce_gpd(&im).unwrap();
        gm.validate().unwrap();
        let cm = induce_charge(&gm).unwrap();
        cm.validate().unwrap();
        assert_eq!(fm.cost(), cm.cost());
    }

    #[test]
    fn diagonal_erasure_has_zero_cost_and_validates() {
        let f = filt(&[(&["a"], 1), (&["b"], 1), (&["a", "b"], 1), (&["c"], 2), (&["a", "c"], 2)]);
        let data = ChainData::new((*f).clone(), 0, &BTreeMap::new()).unwrap();
        let zb = birth_death_spaces(&data, 0);
        let m = product_orthogonal_inverse(&zb).unwrap();
        let em = diagonal_erasure_morphism(&m).unwrap();
        em.validate().unwrap();
        assert_eq!(em.cost(), ExtScalar::zero());
        assert!(equal_off_diagonal(&em.source, &em.target));
    }

    #[test]
    fn path_cost_sums_and_checks_composability() {
        let fin = |v: i64| ExtScalar::Finite(rat(v, 1));
        let steps = vec![
            PathStep { cost: fin(1), direction: StepDirection::Forward, from_id: 0, to_id: 1 },
            PathStep { cost: fin(2), direction: StepDirection::Backward, from_id: 2, to_id: 1 },
        ];
        assert_eq!(path_cost(&steps).unwrap(), fin(3));
        assert_eq!(path_cost::<Rat>(&[]).unwrap(), ExtScalar::zero());
        let broken = vec![
            PathStep { cost: fin(1), direction: StepDirection::Forward, from_id: 0, to_id: 1 },
            PathStep { cost: fin(2), direction: StepDirection::Forward, from_id: 2, to_id: 3 },
        ];
        assert!(path_cost(&broken).is_err());
    }
}
