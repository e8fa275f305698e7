//! Treegrams: right-continuous, finitely presented merge histories of a
//! vertex set, the treegram of a filtration, and the constructive two-way
//! correspondence with degree-0 diagrams.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::complex::ChainData;
use crate::error::{GpdError, Result};
use crate::inversion::GrassmannianDiagram;
use crate::matrix::Matrix;
use crate::poset::{Interval, IntervalOrder, LinearMetricPoset};
use crate::scalar::Scalar;
use crate::subspace::{AmbientSpace, Subspace, Vector};

/// A partition of a subset of the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubPartition {
    pub blocks: Vec<BTreeSet<u32>>,
}

impl SubPartition {
    pub fn empty() -> Self {
        SubPartition { blocks: Vec::new() }
    }

    pub fn support(&self) -> BTreeSet<u32> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn block_of(&self, v: u32) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&v))
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for b in &self.blocks {
            if b.is_empty() {
                return Err(GpdError::InvalidTreegram("empty block".into()));
            }
            for v in b {
                if !seen.insert(*v) {
                    return Err(GpdError::InvalidTreegram(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// A finitely presented function from time to sub-partitions of the vertex
/// set: constant on `[t_k, t_{k+1})`, empty before the first breakpoint, and
/// ending in a single block containing every vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Treegram<S: Scalar> {
    pub vertices: Vec<String>,
    /// Strictly increasing breakpoint times with the state entered at each.
    pub breakpoints: Vec<(S, SubPartition)>,
}

impl<S: Scalar> Treegram<S> {
    pub fn new(vertices: Vec<String>, breakpoints: Vec<(S, SubPartition)>) -> Result<Self> {
        let t = Treegram { vertices, breakpoints };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        if self.breakpoints.is_empty() {
            return Err(GpdError::InvalidTreegram("no breakpoints".into()));
        }
        for w in self.breakpoints.windows(2) {
            if w[0].0.cmp_val(&w[1].0) != std::cmp::Ordering::Less {
                return Err(GpdError::InvalidTreegram(
                    "breakpoint times must be strictly increasing".into(),
                ));
            }
        }
        let n_vertices = self.vertices.len() as u32;
        for (_, state) in &self.breakpoints {
            state.validate()?;
            if let Some(&v) = state.support().iter().find(|&&v| v >= n_vertices) {
                return Err(GpdError::InvalidTreegram(format!("unknown vertex index {v}")));
            }
        }
        // Supports grow and earlier blocks stay together.
        for w in self.breakpoints.windows(2) {
            let (prev, next) = (&w[0].1, &w[1].1);
            let prev_support = prev.support();
            let next_support = next.support();
            if !prev_support.is_subset(&next_support) {
                return Err(GpdError::InvalidTreegram("support shrinks over time".into()));
            }
            for b in &prev.blocks {
                let targets: BTreeSet<Option<usize>> = b.iter().map(|&v| next.block_of(v)).collect();
                if targets.len() != 1 {
                    return Err(GpdError::InvalidTreegram(
                        "a block splits apart at a later time".into(),
                    ));
                }
            }
        }
        let last = &self.breakpoints.last().unwrap().1;
        if last.blocks.len() != 1 || last.support().len() != self.vertices.len() {
            return Err(GpdError::InvalidTreegram(
                "the final state must be a single block containing every vertex".into(),
            ));
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<S> {
        self.breakpoints.iter().map(|(t, _)| t.clone()).collect()
    }

    pub fn state(&self, k: usize) -> &SubPartition {
        &self.breakpoints[k].1
    }

    /// Index of the breakpoint at which each vertex first appears.
    pub fn birth_indices(&self) -> BTreeMap<u32, usize> {
        let mut births = BTreeMap::new();
        for (k, (_, state)) in self.breakpoints.iter().enumerate() {
            for v in state.support() {
                births.entry(v).or_insert(k);
            }
        }
        births
    }

    /// The merge forest in DOT format: one node per (time, block), edges to
    /// the containing block at the next breakpoint.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph treegram {\n  rankdir=LR;\n  node [shape=box];\n");
        for (k, (t, state)) in self.breakpoints.iter().enumerate() {
            for (j, block) in state.blocks.iter().enumerate() {
                let members: Vec<&str> = block
                    .iter()
                    .map(|&v| self.vertices[v as usize].as_str())
                    .collect();
                out.push_str(&format!(
                    "  s{k}_b{j} [label=\"t={} | {{{}}}\"];\n",
                    t.to_display(),
                    members.join(",")
                ));
            }
        }
        for k in 0..self.breakpoints.len().saturating_sub(1) {
            let (_, state) = &self.breakpoints[k];
            let (_, next) = &self.breakpoints[k + 1];
            for (j, block) in state.blocks.iter().enumerate() {
                let v = block.iter().next().unwrap();
                if let Some(j2) = next.block_of(*v) {
                    out.push_str(&format!("  s{k}_b{j} -> s{}_b{j2};\n", k + 1));
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// Treegram of a filtration: at each step the vertices present, split into
    /// connected components. The final complex must be connected.
    pub fn from_filtration(data: &ChainData<S>) -> Result<Self> {
        let f = &data.filtration;
        let last = f.complex();
        if !last.is_connected() {
            return Err(GpdError::Disconnected(format!(
                "{} components at the final step",
                last.components().len()
            )));
        }
        let mut breakpoints = Vec::new();
        for i in 0..f.steps() {
            let sub = data.sublevel(i);
            let state = SubPartition { blocks: sub.components() };
            breakpoints.push((f.poset().grade(i).clone(), state));
        }
        Treegram::new(f.vertex_names().to_vec(), breakpoints)
    }
}

fn centroid<S: Scalar>(ambient: &Arc<AmbientSpace<S>>, members: &BTreeSet<u32>) -> Vector<S> {
    let mut coords = vec![S::zero(); ambient.dim()];
    let weight = S::one().div(&S::from_int(members.len() as i64));
    for &v in members {
        coords[v as usize] = weight.clone();
    }
    Vector { ambient: ambient.clone(), coords }
}

/// A merge unit feeding a block at some death time: either a block of the
/// previous state or a newborn vertex.
struct MergeUnit {
    members: BTreeSet<u32>,
    birth: usize,
}

/// Reconstructs the degree-0 diagram of a filtration from its treegram alone.
///
/// For every time `d` and every block of the state at `d`, the blocks of the
/// previous state merging into it and the newborn vertices joining it are
/// ordered by birth; differences of centroids of the earliest-born
/// representatives span the contribution of each birth-death pair. Newborn
/// vertices act as singleton units born at `d`, which also covers blocks made
/// entirely of new vertices. The essential ray is spanned by the sum of the
/// vertices present at the first nonempty time.
///
/// The ambient space must be the degree-0 chain basis over the same vertex
/// order (one basis label per vertex).
pub fn degree0_diagram_from_treegram<S: Scalar>(
    t: &Treegram<S>,
    ambient: &Arc<AmbientSpace<S>>,
) -> Result<GrassmannianDiagram<S>> {
    t.validate()?;
    if ambient.dim() != t.vertices.len() {
        return Err(GpdError::AmbientMismatch(format!(
            "ambient dim {} vs {} vertices",
            ambient.dim(),
            t.vertices.len()
        )));
    }
    let poset = LinearMetricPoset::from_grades(t.times())?;
    let n = poset.len();
    let births = t.birth_indices();
    let name = |v: u32| t.vertices[v as usize].clone();

    let mut spans: BTreeMap<Interval, Vec<Vector<S>>> = BTreeMap::new();
    for d in 0..n {
        let state = t.state(d);
        let prev_blocks: Vec<&BTreeSet<u32>> = if d == 0 {
            Vec::new()
        } else {
            t.state(d - 1).blocks.iter().collect()
        };
        for block in &state.blocks {
            let mut units: Vec<MergeUnit> = Vec::new();
            let mut covered: BTreeSet<u32> = BTreeSet::new();
            for prev in &prev_blocks {
                if prev.iter().all(|v| block.contains(v)) {
                    let birth = prev.iter().map(|v| births[v]).min().unwrap();
                    covered.extend(prev.iter().copied());
                    units.push(MergeUnit { members: (*prev).clone(), birth });
                }
            }
            for &v in block.iter() {
                if !covered.contains(&v) {
                    units.push(MergeUnit {
                        members: BTreeSet::from([v]),
                        birth: d,
                    });
                }
            }
            if units.len() <= 1 {
                continue;
            }
            units.sort_by(|a, b| {
                let ka = (a.birth, name(*a.members.iter().next().unwrap()));
                let kb = (b.birth, name(*b.members.iter().next().unwrap()));
                ka.cmp(&kb)
            });
            // Earliest-born representatives of each unit.
            let rep_set = |u: &MergeUnit| -> BTreeSet<u32> {
                u.members.iter().copied().filter(|v| births[v] == u.birth).collect()
            };
            let min_birth = units[0].birth;
            let first_group_end = units.iter().position(|u| u.birth > min_birth).unwrap_or(units.len());
            if first_group_end >= 2 {
                let anchor = centroid(ambient, &rep_set(&units[0]));
                for u in &units[1..first_group_end] {
                    let c = centroid(ambient, &rep_set(u));
                    spans
                        .entry(Interval::finite(min_birth, d))
                        .or_default()
                        .push(c.sub(&anchor)?);
                }
            }
            for (idx, u) in units.iter().enumerate().skip(first_group_end) {
                // Everything already present in an earlier-born unit, up to
                // this unit's birth.
                let mut older: BTreeSet<u32> = BTreeSet::new();
                for prior in &units[..idx] {
                    if prior.birth < u.birth {
                        older.extend(prior.members.iter().copied().filter(|v| births[v] <= u.birth));
                    }
                }
                let c = centroid(ambient, &rep_set(u));
                let anchor = centroid(ambient, &older);
                spans
                    .entry(Interval::finite(u.birth, d))
                    .or_default()
                    .push(c.sub(&anchor)?);
            }
        }
    }

    // The essential component: sum of the vertices present at the first
    // nonempty time.
    let first_nonempty = (0..n).find(|&k| !t.state(k).support().is_empty());
    if let Some(k) = first_nonempty {
        let support = t.state(k).support();
        let mut coords = vec![S::zero(); ambient.dim()];
        for v in support {
            coords[v as usize] = S::one();
        }
        spans
            .entry(Interval::ray(k))
            .or_default()
            .push(Vector { ambient: ambient.clone(), coords });
    }

    let mut values = BTreeMap::new();
    for iv in crate::poset::interval_domain(n, IntervalOrder::Product) {
        let w = match spans.get(&iv) {
            None => Subspace::zero(ambient.clone()),
            Some(vectors) => {
                let cols: Vec<Vec<S>> = vectors.iter().map(|v| v.coords.clone()).collect();
                Subspace::from_matrix(ambient.clone(), &Matrix::from_cols(ambient.dim(), cols))
            }
        };
        values.insert(iv, w);
    }
    Ok(GrassmannianDiagram {
        poset,
        order_tag: IntervalOrder::Product,
        ambient: ambient.clone(),
        values,
    })
}

/// Recovers the treegram from a degree-0 diagram: down-set sums rebuild the
/// vertex support and the merge relation at every step. Errors when the
/// recovered spaces are not vertex-spanned, i.e. the input is not a genuine
/// degree-0 diagram of a filtration.
pub fn treegram_from_degree0_diagram<S: Scalar>(
    m: &GrassmannianDiagram<S>,
    vertices: Vec<String>,
) -> Result<Treegram<S>> {
    let n = m.poset.len();
    let ambient = &m.ambient;
    if ambient.dim() != vertices.len() {
        return Err(GpdError::AmbientMismatch(format!(
            "ambient dim {} vs {} vertices",
            ambient.dim(),
            vertices.len()
        )));
    }
    let mut breakpoints = Vec::new();
    for i in 0..n {
        let present = m.downset_sum(&Interval::ray(i))?;
        let merged = m.downset_sum(&Interval::finite(i, i))?;
        let mut support = Vec::new();
        for v in 0..ambient.dim() {
            let e = Vector::basis_vector(ambient.clone(), v);
            if present.contains_vector(&e)? {
                support.push(v as u32);
            }
        }
        if support.len() != present.dim() {
            return Err(GpdError::InvalidDiagram(format!(
                "down-set sum at step {i} is not spanned by vertices"
            )));
        }
        // Union-find over the difference relation.
        let mut parent: Vec<usize> = (0..support.len()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let p = parent[x];
                let root = find(parent, p);
                parent[x] = root;
            }
            parent[x]
        }
        for a in 0..support.len() {
            for b in (a + 1)..support.len() {
                let ea = Vector::basis_vector(ambient.clone(), support[a] as usize);
                let eb = Vector::basis_vector(ambient.clone(), support[b] as usize);
                if merged.contains_vector(&ea.sub(&eb)?)? {
                    let ra = find(&mut parent, a);
                    let rb = find(&mut parent, b);
                    parent[ra] = rb;
                }
            }
        }
        let mut blocks: BTreeMap<usize, BTreeSet<u32>> = BTreeMap::new();
        for (k, &v) in support.iter().enumerate() {
            let root = find(&mut parent, k);
            blocks.entry(root).or_default().insert(v);
        }
        let blocks: Vec<BTreeSet<u32>> = blocks.into_values().collect();
        let within: usize = blocks.iter().map(|b| b.len() - 1).sum();
        if within != merged.dim() {
            return Err(GpdError::InvalidDiagram(format!(
                "merge space at step {i} is not spanned by vertex differences"
            )));
        }
        breakpoints.push((m.poset.grade(i).clone(), SubPartition { blocks }));
    }
    Treegram::new(vertices, breakpoints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Filtration;
    use crate::invariants::birth_death_spaces;
    use crate::inversion::product_orthogonal_inverse;
    use crate::scalar::{rat, Rat};

    fn chain_data(entries: &[(&[&str], i64)]) -> ChainData<Rat> {
        let f = Filtration::new(
            None,
            entries.iter()
                .map(|(vs, g)| (vs.iter().map(|s| s.to_string()).collect(), rat(*g, 1)))
                .collect(),
        )
        .unwrap();
        ChainData::new(f, 0, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn single_vertex_treegram() {
        let data = chain_data(&[(&["a"], 1)]);
        let t = Treegram::from_filtration(&data).unwrap();
        assert_eq!(t.breakpoints.len(), 1);
        assert_eq!(t.state(0).blocks.len(), 1);
    }

    #[test]
    fn disconnected_final_complex_is_rejected() {
        let data = chain_data(&[(&["a"], 1), (&["b"], 2)]);
        assert!(matches!(
            Treegram::from_filtration(&data),
            Err(GpdError::Disconnected(_))
        ));
    }

    #[test]
    fn components_track_the_filtration() {
        let data = chain_data(&[
            (&["a"], 1),
            (&["b"], 1),
            (&["a", "b"], 1),
            (&["c"], 1),
            (&["a", "c"], 2),
            (&["d"], 3),
            (&["c", "d"], 4),
        ]);
        let t = Treegram::from_filtration(&data).unwrap();
        let blocks_at = |k: usize| -> Vec<Vec<u32>> {
            t.state(k).blocks.iter().map(|b| b.iter().copied().collect()).collect()
        };
        assert_eq!(blocks_at(0), vec![vec![0, 1], vec![2]]);
        assert_eq!(blocks_at(1), vec![vec![0, 1, 2]]);
        assert_eq!(blocks_at(2), vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(blocks_at(3), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn two_newborn_vertices_merging_give_their_difference() {
        let data = chain_data(&[(&["u"], 1), (&["v"], 1), (&["u", "v"], 2)]);
        let t = Treegram::from_filtration(&data).unwrap();
        let ambient = data.ambient(0).clone();
        let m = degree0_diagram_from_treegram(&t, &ambient).unwrap();
        let w = m.value(&Interval::finite(0, 1));
        assert_eq!(w.dim(), 1);
        let diff = Vector::new(ambient.clone(), vec![rat(-1, 1), rat(1, 1)]).unwrap();
        assert!(w.contains_vector(&diff).unwrap());
    }

    #[test]
    fn reconstruction_matches_inversion() {
        let data = chain_data(&[
            (&["a"], 1),
            (&["b"], 1),
            (&["a", "b"], 1),
            (&["c"], 1),
            (&["b", "c"], 2),
            (&["d"], 2),
            (&["e"], 2),
            (&["d", "e"], 2),
            (&["c", "d"], 3),
        ]);
        let t = Treegram::from_filtration(&data).unwrap();
        let m = degree0_diagram_from_treegram(&t, data.ambient(0)).unwrap();
        let zb = birth_death_spaces(&data, 0);
        let oi = product_orthogonal_inverse(&zb).unwrap();
        assert_eq!(m.values, oi.values);
    }

    #[test]
    fn roundtrip_through_the_diagram() {
        let data = chain_data(&[
            (&["a"], 1),
            (&["b"], 1),
            (&["a", "b"], 2),
            (&["c"], 2),
            (&["b", "c"], 3),
        ]);
        let t = Treegram::from_filtration(&data).unwrap();
        let m = degree0_diagram_from_treegram(&t, data.ambient(0)).unwrap();
        let back = treegram_from_degree0_diagram(&m, data.filtration.vertex_names().to_vec()).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn summands_of_distinct_blocks_are_orthogonal() {
        // Two merges happen at the same time in different blocks; the two
        // contributions to the same interval have disjoint supports, so the
        // assembled value splits orthogonally.
        let data = chain_data(&[
            (&["a"], 1),
            (&["b"], 1),
            (&["c"], 1),
            (&["d"], 1),
            (&["a", "b"], 2),
            (&["c", "d"], 2),
            (&["b", "c"], 3),
        ]);
        let t = Treegram::from_filtration(&data).unwrap();
        let ambient = data.ambient(0).clone();
        let m = degree0_diagram_from_treegram(&t, &ambient).unwrap();
        let w = m.value(&Interval::finite(0, 1));
        assert_eq!(w.dim(), 2);
        let g1 = Vector::new(ambient.clone(), vec![rat(-1, 1), rat(1, 1), rat(0, 1), rat(0, 1)]).unwrap();
        let g2 = Vector::new(ambient.clone(), vec![rat(0, 1), rat(0, 1), rat(-1, 1), rat(1, 1)]).unwrap();
        assert!(w.contains_vector(&g1).unwrap());
        assert!(w.contains_vector(&g2).unwrap());
        let dot = ambient.inner(&g1.coords, &g2.coords);
        assert!(dot.is_zero());
    }

    #[test]
    fn dot_export_mentions_every_vertex() {
        let data = chain_data(&[(&["a"], 1), (&["b"], 2), (&["a", "b"], 2)]);
        let t = Treegram::from_filtration(&data).unwrap();
        let dot = t.to_dot();
        assert!(dot.contains("digraph"));
        assert!(dot.contains('a') && dot.contains('b'));
    }
}
