//! Finite linear metric posets, their interval posets under the product and
//! reverse inclusion orders, Galois connections with distortion costs, and the
//! closed-form Mobius inversion formulas for integer-valued interval functions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{GpdError, Result};
use crate::scalar::Scalar;

/// An extended non-negative value; metric entries and distortions may be
/// infinite.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtScalar<S: Scalar> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> ExtScalar<S> {
    pub fn zero() -> Self {
        ExtScalar::Finite(S::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtScalar::Infinite)
    }

    pub fn cmp_ext(&self, other: &ExtScalar<S>) -> Ordering {
        match (self, other) {
            (ExtScalar::Infinite, ExtScalar::Infinite) => Ordering::Equal,
            (ExtScalar::Infinite, _) => Ordering::Greater,
            (_, ExtScalar::Infinite) => Ordering::Less,
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => a.cmp_val(b),
        }
    }

    pub fn add_ext(&self, other: &ExtScalar<S>) -> ExtScalar<S> {
        match (self, other) {
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => ExtScalar::Finite(a.add(b)),
            _ => ExtScalar::Infinite,
        }
    }

    /// `|a - b|`, with the convention that two infinite values agree.
    pub fn abs_diff(&self, other: &ExtScalar<S>) -> ExtScalar<S> {
        match (self, other) {
            (ExtScalar::Infinite, ExtScalar::Infinite) => ExtScalar::zero(),
            (ExtScalar::Finite(a), ExtScalar::Finite(b)) => {
                let d = a.sub(b);
                if d.cmp_val(&S::zero()) == Ordering::Less {
                    ExtScalar::Finite(d.neg())
                } else {
                    ExtScalar::Finite(d)
                }
            }
            _ => ExtScalar::Infinite,
        }
    }

    pub fn max_ext(&self, other: &ExtScalar<S>) -> ExtScalar<S> {
        if self.cmp_ext(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_display(&self) -> String {
        match self {
            ExtScalar::Finite(s) => s.to_display(),
            ExtScalar::Infinite => "inf".to_string(),
        }
    }
}

/// A finite linearly ordered set of grades together with an extended metric.
///
/// Elements are identified by their index `0..n`; grades are display and
/// metric data. The default metric is `|a - b|` on grades.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMetricPoset<S: Scalar> {
    grades: Vec<S>,
    metric: Vec<ExtScalar<S>>,
}

impl<S: Scalar> LinearMetricPoset<S> {
    pub fn from_grades(grades: Vec<S>) -> Result<Arc<Self>> {
        let n = grades.len();
        let mut metric = vec![ExtScalar::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                metric[i * n + j] =
                    ExtScalar::Finite(grades[i].clone()).abs_diff(&ExtScalar::Finite(grades[j].clone()));
            }
        }
        Self::with_metric(grades, metric)
    }

    pub fn with_metric(grades: Vec<S>, metric: Vec<ExtScalar<S>>) -> Result<Arc<Self>> {
        let n = grades.len();
        for w in grades.windows(2) {
            if w[0].cmp_val(&w[1]) != Ordering::Less {
                return Err(GpdError::InvalidPoset("grades must be strictly increasing".into()));
            }
        }
        if metric.len() != n * n {
            return Err(GpdError::InvalidPoset("metric has the wrong shape".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let d = &metric[i * n + j];
                if d.cmp_ext(&ExtScalar::zero()) == Ordering::Less {
                    return Err(GpdError::InvalidPoset("metric entries must be non-negative".into()));
                }
                if *d != metric[j * n + i] {
                    return Err(GpdError::InvalidPoset("metric must be symmetric".into()));
                }
                if (i == j) != (*d == ExtScalar::zero()) {
                    return Err(GpdError::InvalidPoset(
                        "metric must vanish exactly on the diagonal".into(),
                    ));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let direct = &metric[i * n + j];
                    let via = metric[i * n + k].add_ext(&metric[k * n + j]);
                    if direct.cmp_ext(&via) == Ordering::Greater {
                        return Err(GpdError::InvalidPoset("metric violates the triangle inequality".into()));
                    }
                }
            }
        }
        Ok(Arc::new(LinearMetricPoset { grades, metric }))
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn grade(&self, i: usize) -> &S {
        &self.grades[i]
    }

    pub fn grades(&self) -> &[S] {
        &self.grades
    }

    pub fn distance(&self, i: usize, j: usize) -> &ExtScalar<S> {
        &self.metric[i * self.len() + j]
    }
}

/// Death endpoint of an interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    At(usize),
    Inf,
}

/// An interval `[birth, death]` of a linear poset, endpoints by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub birth: usize,
    pub death: Death,
}

impl Interval {
    pub fn finite(birth: usize, death: usize) -> Self {
        assert!(birth <= death, "interval birth must not exceed death");
        Interval { birth, death: Death::At(death) }
    }

    pub fn ray(birth: usize) -> Self {
        Interval { birth, death: Death::Inf }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.death, Death::At(d) if d == self.birth)
    }

    pub fn is_ray(&self) -> bool {
        matches!(self.death, Death::Inf)
    }
}

/// The two partial orders used on sets of intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum IntervalOrder {
    /// Component-wise order on `(birth, death)` with `death = inf` on top.
    Product,
    /// Containment order on non-diagonal intervals: `I <= J` iff `I` contains `J`.
    ReverseInclusion,
}

/// Enumerates the order's domain: all intervals (product), or the non-diagonal
/// ones (reverse inclusion); rays are included in both.
pub fn interval_domain(n: usize, order: IntervalOrder) -> Vec<Interval> {
    let mut out = Vec::new();
    for b in 0..n {
        for d in b..n {
            if order == IntervalOrder::ReverseInclusion && b == d {
                continue;
            }
            out.push(Interval::finite(b, d));
        }
        out.push(Interval::ray(b));
    }
    out
}

fn death_leq(a: Death, b: Death) -> bool {
    match (a, b) {
        (Death::At(x), Death::At(y)) => x <= y,
        (Death::At(_), Death::Inf) => true,
        (Death::Inf, Death::At(_)) => false,
        (Death::Inf, Death::Inf) => true,
    }
}

/// Order comparison between intervals.
pub fn leq(order: IntervalOrder, a: &Interval, b: &Interval) -> Result<bool> {
    match order {
        IntervalOrder::Product => Ok(a.birth <= b.birth && death_leq(a.death, b.death)),
        IntervalOrder::ReverseInclusion => {
            if a.is_diagonal() || b.is_diagonal() {
                return Err(GpdError::DiagonalInterval);
            }
            Ok(a.birth <= b.birth && death_leq(b.death, a.death))
        }
    }
}

/// Which adjoint of a Galois connection to measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjoint {
    Left,
    Right,
}

/// An adjoint pair of monotone maps between two linear metric posets.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisConnection<S: Scalar> {
    pub source: Arc<LinearMetricPoset<S>>,
    pub target: Arc<LinearMetricPoset<S>>,
    /// Index map source -> target (left adjoint).
    pub left: Vec<usize>,
    /// Index map target -> source (right adjoint).
    pub right: Vec<usize>,
}

/// Diagnostic result of an adjunction check.
#[derive(Clone, Debug)]
pub struct GaloisViolation {
    pub detail: String,
}

impl<S: Scalar> GaloisConnection<S> {
    pub fn identity(poset: Arc<LinearMetricPoset<S>>) -> Self {
        let id: Vec<usize> = (0..poset.len()).collect();
        GaloisConnection {
            source: poset.clone(),
            target: poset,
            left: id.clone(),
            right: id,
        }
    }

    /// Derives the right adjoint from a monotone left adjoint that sends the
    /// minimum to the minimum; on linear posets this always yields an adjoint
    /// pair.
    pub fn from_left(
        source: Arc<LinearMetricPoset<S>>,
        target: Arc<LinearMetricPoset<S>>,
        left: Vec<usize>,
    ) -> Result<Self> {
        if left.len() != source.len() {
            return Err(GpdError::InvalidPoset("left adjoint has the wrong length".into()));
        }
        if left.first().copied() != Some(0) && !source.is_empty() {
            return Err(GpdError::InvalidPoset(
                "left adjoint must send the minimum to the minimum".into(),
            ));
        }
        let mut right = Vec::with_capacity(target.len());
        for q in 0..target.len() {
            let p = (0..source.len()).rev().find(|&p| left[p] <= q).ok_or_else(|| {
                GpdError::InvalidPoset("left adjoint admits no right adjoint".into())
            })?;
            right.push(p);
        }
        Ok(GaloisConnection { source, target, left, right })
    }

    /// Exhaustive adjunction and monotonicity check.
    pub fn verify(&self) -> std::result::Result<(), GaloisViolation> {
        for w in self.left.windows(2) {
            if w[0] > w[1] {
                return Err(GaloisViolation { detail: "left adjoint is not monotone".into() });
            }
        }
        for w in self.right.windows(2) {
            if w[0] > w[1] {
                return Err(GaloisViolation { detail: "right adjoint is not monotone".into() });
            }
        }
        if self.left.len() != self.source.len() || self.right.len() != self.target.len() {
            return Err(GaloisViolation { detail: "adjoint maps have the wrong lengths".into() });
        }
        for p in 0..self.source.len() {
            for q in 0..self.target.len() {
                let lhs = self.left[p] <= q;
                let rhs = p <= self.right[q];
                if lhs != rhs {
                    return Err(GaloisViolation {
                        detail: format!("adjunction fails at (p{}, q{})", p + 1, q + 1),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn compose(&self, other: &GaloisConnection<S>) -> Result<GaloisConnection<S>> {
        if self.target != other.source {
            return Err(GpdError::InvalidPoset("connections do not compose".into()));
        }
        Ok(GaloisConnection {
            source: self.source.clone(),
            target: other.target.clone(),
            left: self.left.iter().map(|&p| other.left[p]).collect(),
            right: other.right.iter().map(|&q| self.right[q]).collect(),
        })
    }

    /// Maximal metric distortion of the chosen adjoint.
    pub fn distortion(&self, which: Adjoint) -> ExtScalar<S> {
        let mut worst = ExtScalar::zero();
        match which {
            Adjoint::Left => {
                for a in 0..self.source.len() {
                    for b in 0..self.source.len() {
                        let d = self
                            .source
                            .distance(a, b)
                            .abs_diff(self.target.distance(self.left[a], self.left[b]));
                        worst = worst.max_ext(&d);
                    }
                }
            }
            Adjoint::Right => {
                for a in 0..self.target.len() {
                    for b in 0..self.target.len() {
                        let d = self
                            .target
                            .distance(a, b)
                            .abs_diff(self.source.distance(self.right[a], self.right[b]));
                        worst = worst.max_ext(&d);
                    }
                }
            }
        }
        worst
    }

    /// Component-wise action on intervals, an adjoint pair between the
    /// interval sets under the product order.
    pub fn bar(&self) -> IntervalConnection<S> {
        IntervalConnection { points: self.clone() }
    }
}

/// The induced adjoint pair on intervals under the product order.
#[derive(Clone, Debug)]
pub struct IntervalConnection<S: Scalar> {
    pub points: GaloisConnection<S>,
}

impl<S: Scalar> IntervalConnection<S> {
    fn map(side: &[usize], i: &Interval) -> Interval {
        Interval {
            birth: side[i.birth],
            death: match i.death {
                Death::At(d) => Death::At(side[d]),
                Death::Inf => Death::Inf,
            },
        }
    }

    pub fn map_left(&self, i: &Interval) -> Interval {
        Self::map(&self.points.left, i)
    }

    pub fn map_right(&self, i: &Interval) -> Interval {
        Self::map(&self.points.right, i)
    }

    /// Exhaustive adjunction check over the product-order interval domains.
    pub fn verify(&self) -> std::result::Result<(), GaloisViolation> {
        let src = interval_domain(self.points.source.len(), IntervalOrder::Product);
        let dst = interval_domain(self.points.target.len(), IntervalOrder::Product);
        for i in &src {
            for j in &dst {
                let lhs = leq(IntervalOrder::Product, &self.map_left(i), j).unwrap();
                let rhs = leq(IntervalOrder::Product, i, &self.map_right(j)).unwrap();
                if lhs != rhs {
                    return Err(GaloisViolation {
                        detail: format!("interval adjunction fails at ({i:?}, {j:?})"),
                    });
                }
            }
        }
        Ok(())
    }

    fn death_distance(p: &LinearMetricPoset<S>, a: Death, b: Death) -> ExtScalar<S>
    where
        S: Scalar,
    {
        match (a, b) {
            (Death::At(x), Death::At(y)) => p.distance(x, y).clone(),
            (Death::Inf, Death::Inf) => ExtScalar::zero(),
            _ => ExtScalar::Infinite,
        }
    }

    /// Max-metric on interval endpoints.
    pub fn interval_distance(
        poset: &LinearMetricPoset<S>,
        a: &Interval,
        b: &Interval,
    ) -> ExtScalar<S> {
        let births = poset.distance(a.birth, b.birth).clone();
        let deaths = Self::death_distance(poset, a.death, b.death);
        births.max_ext(&deaths)
    }

    /// Distortion of the left component with respect to the max-metrics.
    pub fn distortion_left(&self) -> ExtScalar<S> {
        let src = interval_domain(self.points.source.len(), IntervalOrder::Product);
        let mut worst = ExtScalar::zero();
        for a in &src {
            for b in &src {
                let d_src = Self::interval_distance(&self.points.source, a, b);
                let d_dst = Self::interval_distance(
                    &self.points.target,
                    &self.map_left(a),
                    &self.map_left(b),
                );
                worst = worst.max_ext(&d_src.abs_diff(&d_dst));
            }
        }
        worst
    }
}

/// Integer-valued function on the interval domain of a linear poset.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegerIntervalFunction<S: Scalar> {
    pub poset: Arc<LinearMetricPoset<S>>,
    pub order: IntervalOrder,
    pub values: BTreeMap<Interval, i64>,
}

impl<S: Scalar> IntegerIntervalFunction<S> {
    pub fn new(
        poset: Arc<LinearMetricPoset<S>>,
        order: IntervalOrder,
        values: BTreeMap<Interval, i64>,
    ) -> Result<Self> {
        for i in interval_domain(poset.len(), order) {
            if !values.contains_key(&i) {
                return Err(GpdError::MissingInterval(format!("{i:?}")));
            }
        }
        Ok(IntegerIntervalFunction { poset, order, values })
    }

    pub fn value(&self, i: &Interval) -> i64 {
        *self.values.get(i).expect("interval outside domain")
    }

    /// Value with the boundary conventions: a birth index of `usize::MAX`
    /// encodes the slot below the minimum, whose value is 0.
    fn value_conv(&self, birth: Option<usize>, death: Death) -> i64 {
        match birth {
            None => 0,
            Some(b) => self.value(&Interval { birth: b, death }),
        }
    }

    /// Sum of the values over the down-set of `j`.
    pub fn downset_sum(&self, j: &Interval) -> i64 {
        interval_domain(self.poset.len(), self.order)
            .iter()
            .filter(|i| leq(self.order, i, j).unwrap())
            .map(|i| self.value(i))
            .sum()
    }
}

/// Closed-form Mobius inversion over the interval domain.
///
/// For the product order the inverse at `[p_i, p_j]` is the alternating sum of
/// the values at `[p_i, p_j]`, `[p_i, p_{j-1}]`, `[p_{i-1}, p_{j-1}]`,
/// `[p_{i-1}, p_j]`; for the reverse inclusion order the death index moves up
/// instead of down, with `[p_i, p_{n+1}]` read as the ray at `p_i`, and
/// values at birth index 0's predecessor read as 0.
pub fn mobius_invert_int<S: Scalar>(m: &IntegerIntervalFunction<S>) -> IntegerIntervalFunction<S> {
    let n = m.poset.len();
    let prev = |b: usize| -> Option<usize> { b.checked_sub(1) };
    let succ_death = |d: usize| -> Death {
        if d + 1 < n {
            Death::At(d + 1)
        } else {
            Death::Inf
        }
    };
    let mut values = BTreeMap::new();
    for iv in interval_domain(n, m.order) {
        let b = iv.birth;
        let v = match m.order {
            IntervalOrder::Product => match iv.death {
                Death::At(d) if d == b => m.value(&iv) - m.value_conv(prev(b), Death::At(d)),
                Death::At(d) => {
                    m.value(&iv) - m.value(&Interval::finite(b, d - 1))
                        + m.value_conv(prev(b), Death::At(d - 1))
                        - m.value_conv(prev(b), Death::At(d))
                }
                Death::Inf => {
                    m.value(&iv) - m.value(&Interval::finite(b, n - 1))
                        + m.value_conv(prev(b), Death::At(n - 1))
                        - m.value_conv(prev(b), Death::Inf)
                }
            },
            IntervalOrder::ReverseInclusion => match iv.death {
                Death::At(d) => {
                    m.value(&iv) - m.value(&Interval { birth: b, death: succ_death(d) })
                        + m.value_conv(prev(b), succ_death(d))
                        - m.value_conv(prev(b), Death::At(d))
                }
                Death::Inf => m.value(&iv) - m.value_conv(prev(b), Death::Inf),
            },
        };
        values.insert(iv, v);
    }
    IntegerIntervalFunction {
        poset: m.poset.clone(),
        order: m.order,
        values,
    }
}

/// Mobius inversion of a function on the points of a linear poset.
pub fn mobius_invert_point(values: &[i64]) -> Vec<i64> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { *v } else { v - values[i - 1] })
        .collect()
}

/// Pushforward of a point function along an index map: sums over fibers.
pub fn pushforward_point(map: &[usize], values: &[i64], target_len: usize) -> Vec<i64> {
    let mut out = vec![0i64; target_len];
    for (p, v) in values.iter().enumerate() {
        out[map[p]] += v;
    }
    out
}

/// Pullback of a point function along an index map.
pub fn pullback_point(map: &[usize], values: &[i64]) -> Vec<i64> {
    map.iter().map(|&q| values[q]).collect()
}

/// Pushforward of an integer interval function along the interval action of a
/// Galois connection; empty fibers sum to zero.
pub fn pushforward_int<S: Scalar>(
    conn: &IntervalConnection<S>,
    m: &IntegerIntervalFunction<S>,
) -> IntegerIntervalFunction<S> {
    let mut values = BTreeMap::new();
    for j in interval_domain(conn.points.target.len(), m.order) {
        values.insert(j, 0i64);
    }
    for (i, v) in &m.values {
        let j = conn.map_left(i);
        *values.get_mut(&j).expect("pushforward left the domain") += v;
    }
    IntegerIntervalFunction {
        poset: conn.points.target.clone(),
        order: m.order,
        values,
    }
}

/// Pullback along the interval action of the right adjoint: turns a function
/// on the source intervals into one on the target intervals by precomposition.
pub fn pullback_int<S: Scalar>(
    conn: &IntervalConnection<S>,
    m: &IntegerIntervalFunction<S>,
) -> IntegerIntervalFunction<S> {
    let mut values = BTreeMap::new();
    for j in interval_domain(conn.points.target.len(), m.order) {
        let i = conn.map_right(&j);
        values.insert(j, m.value(&i));
    }
    IntegerIntervalFunction {
        poset: conn.points.target.clone(),
        order: m.order,
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn chain(n: usize) -> Arc<LinearMetricPoset<Rat>> {
        LinearMetricPoset::from_grades((1..=n as i64).map(|i| rat(i, 1)).collect()).unwrap()
    }

    #[test]
    fn product_order_examples() {
        let i12 = Interval::finite(0, 1);
        let r1 = Interval::ray(0);
        assert!(leq(IntervalOrder::Product, &i12, &r1).unwrap());
        let i13 = Interval::finite(0, 2);
        let i22 = Interval::finite(1, 1);
        assert!(!leq(IntervalOrder::Product, &i13, &i22).unwrap());
    }

    #[test]
    fn reverse_inclusion_examples() {
        let big = Interval::finite(0, 3);
        let small = Interval::finite(1, 2);
        assert!(leq(IntervalOrder::ReverseInclusion, &big, &small).unwrap());
        assert!(!leq(IntervalOrder::ReverseInclusion, &small, &big).unwrap());
        let diag = Interval::finite(1, 1);
        assert!(leq(IntervalOrder::ReverseInclusion, &big, &diag).is_err());
        // Rays sit above in containment: [a, inf) contains [c, d] when a <= c.
        let ray = Interval::ray(0);
        assert!(leq(IntervalOrder::ReverseInclusion, &ray, &small).unwrap());
        assert!(!leq(IntervalOrder::ReverseInclusion, &big, &ray).unwrap());
    }

    #[test]
    fn identity_connection_verifies_with_zero_distortion() {
        let p = chain(4);
        let g = GaloisConnection::identity(p);
        assert!(g.verify().is_ok());
        assert_eq!(g.distortion(Adjoint::Left), ExtScalar::zero());
    }

    #[test]
    fn three_to_two_connection_verifies() {
        let p = chain(3);
        let q = chain(2);
        let g = GaloisConnection::from_left(p, q, vec![0, 1, 1]).unwrap();
        assert_eq!(g.right, vec![0, 2]);
        assert!(g.verify().is_ok());
    }

    #[test]
    fn non_monotone_left_fails() {
        let p = chain(2);
        let q = chain(2);
        let g = GaloisConnection {
            source: p,
            target: q,
            left: vec![1, 0],
            right: vec![0, 1],
        };
        assert!(g.verify().is_err());
    }

    #[test]
    fn distortion_of_shifted_grades() {
        // Source 1 < 2 < 3, target 1.5 < 2.5, left = (1.5, 2.5, 2.5).
        let p = chain(3);
        let q = LinearMetricPoset::from_grades(vec![rat(3, 2), rat(5, 2)]).unwrap();
        let g = GaloisConnection::from_left(p, q, vec![0, 1, 1]).unwrap();
        assert_eq!(g.distortion(Adjoint::Left), ExtScalar::Finite(rat(1, 1)));
    }

    #[test]
    fn bar_lifts_and_preserves_distortion() {
        let p = chain(3);
        let q = LinearMetricPoset::from_grades(vec![rat(3, 2), rat(5, 2)]).unwrap();
        let g = GaloisConnection::from_left(p.clone(), q, vec![0, 1, 1]).unwrap();
        let bar = g.bar();
        assert!(bar.verify().is_ok());
        assert_eq!(bar.distortion_left(), g.distortion(Adjoint::Left));
        // Component-wise action, rays stay rays.
        assert_eq!(bar.map_left(&Interval::finite(1, 2)), Interval::finite(1, 1));
        assert_eq!(bar.map_left(&Interval::ray(0)), Interval::ray(0));
        let id = GaloisConnection::identity(p).bar();
        assert_eq!(id.map_left(&Interval::finite(0, 2)), Interval::finite(0, 2));
    }

    #[test]
    fn point_inversion_and_pushforward_pullback() {
        // Left (p1,p2,p3) -> (q1,q2,q2); right (q1,q2) -> (p1,p3);
        // m = (1,2,5): inverse (1,1,3); pushforward (1,4);
        // pullback of m along right = (1,5) whose inversion is (1,4).
        let m = vec![1, 2, 5];
        let inv = mobius_invert_point(&m);
        assert_eq!(inv, vec![1, 1, 3]);
        let left = vec![0, 1, 1];
        let push = pushforward_point(&left, &inv, 2);
        assert_eq!(push, vec![1, 4]);
        let right = vec![0, 2];
        let pulled = pullback_point(&right, &m);
        assert_eq!(pulled, vec![1, 5]);
        assert_eq!(mobius_invert_point(&pulled), push);
    }

    #[test]
    fn pushforward_along_identity_is_identity() {
        let p = chain(3);
        let g = GaloisConnection::identity(p.clone()).bar();
        let mut values = BTreeMap::new();
        for (k, iv) in interval_domain(3, IntervalOrder::Product).into_iter().enumerate() {
            values.insert(iv, k as i64);
        }
        let m = IntegerIntervalFunction::new(p, IntervalOrder::Product, values).unwrap();
        assert_eq!(pushforward_int(&g, &m), m);
    }

    #[test]
    fn constant_zero_inverts_to_zero() {
        let p = chain(4);
        for order in [IntervalOrder::Product, IntervalOrder::ReverseInclusion] {
            let values: BTreeMap<Interval, i64> =
                interval_domain(4, order).into_iter().map(|i| (i, 0)).collect();
            let m = IntegerIntervalFunction::new(p.clone(), order, values).unwrap();
            let inv = mobius_invert_int(&m);
            assert!(inv.values.values().all(|&v| v == 0));
        }
    }
}
