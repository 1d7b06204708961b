//! Weighted proximity digraphs of base points, admissibility, isomorphism
//! by canonical form, enrichment with the three-point line, and the
//! enumeration of all cubic configurations.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::maps::BasePointTree;

/// Weighted digraph: vertex weights and proximity arcs (from, to).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityGraph {
    pub weights: Vec<u32>,
    pub arcs: BTreeSet<(usize, usize)>,
}

/// A proximity graph together with the optional line through three simple
/// base points (as a vertex set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnrichedGraph {
    pub graph: ProximityGraph,
    pub line: Option<BTreeSet<usize>>,
}

impl ProximityGraph {
    pub fn new(weights: Vec<u32>, arcs: &[(usize, usize)]) -> Self {
        ProximityGraph {
            weights,
            arcs: arcs.iter().copied().collect(),
        }
    }

    pub fn from_tree(tree: &BasePointTree) -> Self {
        ProximityGraph {
            weights: tree.entries.iter().map(|e| e.mult).collect(),
            arcs: tree.arcs.iter().copied().collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|(from, _)| *from == v).count()
    }

    pub fn in_weight(&self, v: usize) -> u32 {
        self.arcs
            .iter()
            .filter(|(_, to)| *to == v)
            .map(|(from, _)| self.weights[*from])
            .sum()
    }

    pub fn targets(&self, v: usize) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|(from, _)| *from == v)
            .map(|(_, to)| *to)
            .collect()
    }

    /// The first-neighborhood predecessor of a vertex: its single target, or
    /// for a satellite vertex the target that is itself proximate to the
    /// other one.
    pub fn parent(&self, v: usize) -> Option<usize> {
        let ts = self.targets(v);
        match ts.as_slice() {
            [] => None,
            [t] => Some(*t),
            [a, b] => {
                if self.arcs.contains(&(*a, *b)) {
                    Some(*a)
                } else {
                    Some(*b)
                }
            }
            _ => None,
        }
    }

    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            if out.contains(&p) {
                break;
            }
            out.push(p);
            cur = p;
        }
        out
    }

    fn is_acyclic(&self) -> bool {
        // Kahn peeling on the arc relation
        let n = self.vertex_count();
        let mut arcs: BTreeSet<(usize, usize)> = self.arcs.clone();
        let mut alive: BTreeSet<usize> = (0..n).collect();
        loop {
            let Some(&v) = alive
                .iter()
                .find(|&&v| !arcs.iter().any(|(from, _)| *from == v))
            else {
                return alive.is_empty();
            };
            alive.remove(&v);
            arcs.retain(|(_, to)| *to != v);
            if alive.is_empty() {
                return true;
            }
        }
    }

    /// Admissibility plus the proximity inequality at every vertex; returns
    /// the list of violations.
    pub fn admissibility_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.is_acyclic() {
            out.push("digraph has a cycle".into());
        }
        for v in 0..self.vertex_count() {
            let ts = self.targets(v);
            if ts.len() > 2 {
                out.push(format!("vertex {v} has outdegree {}", ts.len()));
            }
            if let [a, b] = ts.as_slice() {
                if !self.arcs.contains(&(*a, *b)) && !self.arcs.contains(&(*b, *a)) {
                    out.push(format!(
                        "vertex {v} points at {a} and {b}, which are not arc-connected"
                    ));
                }
            }
            if self.weights[v] < self.in_weight(v) {
                out.push(format!(
                    "proximity inequality fails at vertex {v}: weight {} < incoming {}",
                    self.weights[v],
                    self.in_weight(v)
                ));
            }
        }
        // no two vertices with the same unordered target pair
        let mut pairs: Vec<BTreeSet<usize>> = Vec::new();
        for v in 0..self.vertex_count() {
            let ts = self.targets(v);
            if ts.len() == 2 {
                let set: BTreeSet<usize> = ts.into_iter().collect();
                if pairs.contains(&set) {
                    out.push(format!(
                        "two vertices share the target pair {:?}",
                        set.iter().collect::<Vec<_>>()
                    ));
                }
                pairs.push(set);
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_violations().is_empty()
    }

    pub fn weakly_connected_components(&self) -> usize {
        let n = self.vertex_count();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(comp: &mut Vec<usize>, v: usize) -> usize {
            if comp[v] != v {
                let r = find(comp, comp[v]);
                comp[v] = r;
            }
            comp[v]
        }
        for (a, b) in &self.arcs {
            let (ra, rb) = (find(&mut comp, *a), find(&mut comp, *b));
            if ra != rb {
                comp[ra] = rb;
            }
        }
        (0..n).map(|v| find(&mut comp, v)).collect::<BTreeSet<_>>().len()
    }

    /// Canonical encoding: minimal (weights, arcs) over all vertex
    /// permutations. Vertex counts stay tiny, so brute force is fine.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_of(self, None)
    }

    pub fn isomorphic(&self, other: &ProximityGraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

pub type CanonicalForm = (Vec<u32>, Vec<(usize, usize)>, Option<Vec<usize>>);

fn canonical_of(g: &ProximityGraph, line: Option<&BTreeSet<usize>>) -> CanonicalForm {
    let n = g.vertex_count();
    let mut best: Option<CanonicalForm> = None;
    for perm in (0..n).permutations(n) {
        // perm[v] = new label of old vertex v
        let mut weights = vec![0u32; n];
        for (old, &new) in perm.iter().enumerate() {
            weights[new] = g.weights[old];
        }
        let mut arcs: Vec<(usize, usize)> = g
            .arcs
            .iter()
            .map(|(a, b)| (perm[*a], perm[*b]))
            .collect();
        arcs.sort_unstable();
        let line_enc = line.map(|s| {
            let mut v: Vec<usize> = s.iter().map(|&m| perm[m]).collect();
            v.sort_unstable();
            v
        });
        let cand = (weights, arcs, line_enc);
        if best.as_ref().map(|b| &cand < b).unwrap_or(true) {
            best = Some(cand);
        }
    }
    best.expect("nonempty permutation set")
}

impl EnrichedGraph {
    pub fn from_tree(tree: &BasePointTree) -> Self {
        EnrichedGraph {
            graph: ProximityGraph::from_tree(tree),
            line: tree
                .line
                .as_ref()
                .map(|l| l.members.iter().copied().collect()),
        }
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        match &self.line {
            Some(l) => canonical_of(&self.graph, Some(l)),
            None => {
                let (w, a, _) = self.graph.canonical_form();
                (w, a, Some(Vec::new()))
            }
        }
    }

    pub fn isomorphic(&self, other: &EnrichedGraph) -> bool {
        self.canonical_form() == other.canonical_form()
    }
}

/// All admissible weighted proximity graphs on the cubic weight vector
/// (2,1,1,1,1), up to isomorphism, ordered by (arc count, canonical form).
pub fn enumerate_cubic_graphs() -> Vec<ProximityGraph> {
    let weights = vec![2u32, 1, 1, 1, 1];
    // arcs out of the double point would violate the proximity inequality
    let slots: Vec<(usize, usize)> = (1..5)
        .flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let found = std::sync::Mutex::new(Vec::<(CanonicalForm, ProximityGraph)>::new());
    let check_mask = |mask: u32| {
        let arcs: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| mask & (1 << k) != 0)
            .map(|(_, &s)| s)
            .collect();
        let g = ProximityGraph::new(weights.clone(), &arcs);
        if !g.is_admissible() {
            return None;
        }
        Some(g)
    };
    let masks: Vec<u32> = (0u32..(1 << slots.len())).collect();
    crate::batch::for_each(&masks, |&mask| {
        if let Some(g) = check_mask(mask) {
            let cf = g.canonical_form();
            let mut guard = found.lock().unwrap();
            if !guard.iter().any(|(existing, _)| *existing == cf) {
                // store the canonical representative so the output does not
                // depend on which labeling arrived first
                let canonical = ProximityGraph::new(cf.0.clone(), &cf.1);
                guard.push((cf, canonical));
            }
        }
    });
    let mut list = found.into_inner().unwrap();
    list.sort_by_key(|(cf, g)| (g.arcs.len(), cf.clone()));
    list.into_iter().map(|(_, g)| g).collect()
}

/// Legal line placements on a cubic proximity graph: three weight-1
/// vertices, closed under first-neighborhood predecessors, none of them
/// infinitely near the weight-2 vertex.
fn legal_lines(g: &ProximityGraph) -> Vec<BTreeSet<usize>> {
    let double = g
        .weights
        .iter()
        .position(|&w| w == 2)
        .expect("cubic graph has a double vertex");
    let simple: Vec<usize> = (0..g.vertex_count()).filter(|&v| v != double).collect();
    let mut out = Vec::new();
    for combo in simple.iter().combinations(3) {
        let set: BTreeSet<usize> = combo.into_iter().copied().collect();
        let ok = set.iter().all(|&v| {
            let anc = g.ancestors(v);
            if anc.contains(&double) {
                return false;
            }
            match g.parent(v) {
                Some(p) => set.contains(&p),
                None => true,
            }
        });
        if ok {
            out.push(set);
        }
    }
    out
}

/// All enriched cubic graphs up to isomorphism, ordered consistently with
/// the plain enumeration.
pub fn enumerate_enriched() -> Vec<EnrichedGraph> {
    let mut out: Vec<(CanonicalForm, EnrichedGraph)> = Vec::new();
    for g in enumerate_cubic_graphs() {
        let mut variants = vec![EnrichedGraph {
            graph: g.clone(),
            line: None,
        }];
        for line in legal_lines(&g) {
            variants.push(EnrichedGraph {
                graph: g.clone(),
                line: Some(line),
            });
        }
        for v in variants {
            let cf = v.canonical_form();
            if !out.iter().any(|(existing, _)| *existing == cf) {
                let canonical = EnrichedGraph {
                    graph: ProximityGraph::new(cf.0.clone(), &cf.1),
                    line: v.line.as_ref().map(|_| {
                        cf.2.clone().unwrap_or_default().into_iter().collect()
                    }),
                };
                out.push((cf, canonical));
            }
        }
    }
    out.sort_by_key(|(cf, e)| (e.graph.arcs.len(), e.line.is_some(), cf.clone()));
    out.into_iter().map(|(_, e)| e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejected_configurations() {
        // weight-1 vertex receiving two weight-1 arcs
        let g = ProximityGraph::new(vec![1, 1, 1], &[(1, 0), (2, 0)]);
        assert!(!g.is_admissible());
        let g2 = ProximityGraph::new(vec![1, 1, 1], &[(2, 0), (2, 1), (1, 0)]);
        assert!(!g2.is_admissible());
    }

    #[test]
    fn accepted_configurations() {
        let empty = ProximityGraph::new(vec![2, 1, 1, 1, 1], &[]);
        assert!(empty.is_admissible());
        let single = ProximityGraph::new(vec![1], &[]);
        assert!(single.is_admissible());
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let a = ProximityGraph::new(vec![2, 1, 1], &[(1, 0)]);
        let b = ProximityGraph::new(vec![1, 2, 1], &[(2, 1)]);
        assert!(a.isomorphic(&b));
        let c = ProximityGraph::new(vec![2, 1, 1], &[(1, 2)]);
        assert!(!a.isomorphic(&c));
    }

    #[test]
    fn cubic_enumeration_count() {
        let graphs = enumerate_cubic_graphs();
        assert_eq!(graphs.len(), 21);
        let mut histogram = std::collections::BTreeMap::new();
        for g in &graphs {
            *histogram.entry(g.arcs.len()).or_insert(0usize) += 1;
        }
        let expect: std::collections::BTreeMap<usize, usize> =
            [(0, 1), (1, 2), (2, 5), (3, 7), (4, 5), (5, 1)].into_iter().collect();
        assert_eq!(histogram, expect);
    }

    #[test]
    fn enriched_enumeration_count() {
        assert_eq!(enumerate_enriched().len(), 31);
    }
}
