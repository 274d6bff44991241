//! Taylor subcomplex diagrams, weak gradings and the graded totalization.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{assemble, twisted_entries, TotalComplex};
use crate::error::{Error, Result};
use crate::monomial::{MonomialSeq, Subset, SubsetTable};

/// An edge `C → C'` labelled by the generator `j` with `gcd(f_j, f_{M_C}) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub source: Subset,
    pub target: Subset,
    pub generator: usize,
}

/// The quotient of the Taylor graph by the classes `M_J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexDiagram {
    pub n: usize,
    /// Distinct closures `M_J`, increasing bitmask order.
    pub classes: Vec<Subset>,
    /// Members `S_J` of each class, aligned with `classes`.
    pub members: Vec<Vec<Subset>>,
    pub edges: Vec<DiagramEdge>,
}

pub fn subcomplex_diagram(f: &MonomialSeq) -> SubcomplexDiagram {
    diagram_from_table(&SubsetTable::new(f))
}

pub fn diagram_from_table(table: &SubsetTable) -> SubcomplexDiagram {
    let classes = table.classes();
    let members = classes.iter().map(|&c| table.s_class(c)).collect();
    let mut edges = Vec::new();
    for &c in &classes {
        for j in 1..=table.n() {
            if !c.contains(j) && table.coprime(j, c) {
                edges.push(DiagramEdge { source: c, target: table.closure(c.with(j)), generator: j });
            }
        }
    }
    SubcomplexDiagram { n: table.n(), classes, members, edges }
}

impl SubcomplexDiagram {
    pub fn index_of(&self, class: Subset) -> Option<usize> {
        self.classes.binary_search_by_key(&class.bits(), |c| c.bits()).ok()
    }

    /// Distinct `(source, target)` pairs, ignoring generator labels.
    pub fn arrows(&self) -> Vec<(Subset, Subset)> {
        let mut v: Vec<(Subset, Subset)> = self.edges.iter().map(|e| (e.source, e.target)).collect();
        v.sort_by_key(|(a, b)| (a.bits(), b.bits()));
        v.dedup();
        v
    }

    fn adjacency(&self) -> Vec<Vec<(usize, i32)>> {
        let mut adj = vec![Vec::new(); self.classes.len()];
        for e in &self.edges {
            let s = self.index_of(e.source).expect("source class");
            let t = self.index_of(e.target).expect("target class");
            adj[s].push((t, 1));
            adj[t].push((s, -1));
        }
        adj
    }
}

/// Paper-style class label `T_∅`, `T_12`, `T_1.10` (dot-separated once an index exceeds 9).
pub fn class_label(c: Subset) -> String {
    format!("T_{}", c.label())
}

/// Integer weight per class with every edge raising weight by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakGrading {
    pub weights: BTreeMap<u32, i32>,
}

impl WeakGrading {
    pub fn weight(&self, class: Subset) -> Option<i32> {
        self.weights.get(&class.bits()).copied()
    }

    /// Checks the edge condition; reports the first violated edge.
    pub fn check(&self, diag: &SubcomplexDiagram) -> Result<()> {
        for e in &diag.edges {
            let (Some(ws), Some(wt)) = (self.weight(e.source), self.weight(e.target)) else {
                return Err(Error::InconsistentGrading(format!(
                    "{} -> {} has an unweighted endpoint",
                    class_label(e.source),
                    class_label(e.target)
                )));
            };
            if wt != ws + 1 {
                return Err(Error::InconsistentGrading(format!(
                    "{} ({ws}) -> {} ({wt}) via generator {}",
                    class_label(e.source),
                    class_label(e.target),
                    e.generator
                )));
            }
        }
        Ok(())
    }
}

/// A closed walk along which the weight constraints contradict each other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub cycle: Vec<Subset>,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.cycle.iter().map(|&c| class_label(c)).collect();
        write!(f, "{}", labels.join(", "))
    }
}

/// Connected components (undirected) as lists of classes, each sorted and
/// the list ordered by smallest class.
pub fn components(diag: &SubcomplexDiagram) -> Vec<Vec<Subset>> {
    let adj = diag.adjacency();
    let mut comp = vec![usize::MAX; diag.classes.len()];
    let mut out = Vec::new();
    for start in 0..diag.classes.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let u = members[k];
            k += 1;
            for &(v, _) in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members.into_iter().map(|i| diag.classes[i]).collect());
    }
    out
}

/// Breadth-first weight propagation per component; minimum weight 0 per
/// component. On a contradiction returns the cycle formed by the two tree
/// paths to the conflicting edge.
pub fn weak_grading(diag: &SubcomplexDiagram) -> std::result::Result<WeakGrading, Obstruction> {
    let adj = diag.adjacency();
    let m = diag.classes.len();
    let mut weight: Vec<Option<i32>> = vec![None; m];
    let mut parent: Vec<Option<usize>> = vec![None; m];
    let mut weights = BTreeMap::new();
    for start in 0..m {
        if weight[start].is_some() {
            continue;
        }
        weight[start] = Some(0);
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let wu = weight[u].expect("visited");
            for &(v, step) in &adj[u] {
                match weight[v] {
                    None => {
                        weight[v] = Some(wu + step);
                        parent[v] = Some(u);
                        order.push(v);
                        queue.push_back(v);
                    }
                    Some(wv) if wv != wu + step => {
                        return Err(Obstruction { cycle: conflict_cycle(&parent, u, v).into_iter().map(|i| diag.classes[i]).collect() });
                    }
                    Some(_) => {}
                }
            }
        }
        let low = order.iter().map(|&i| weight[i].expect("visited")).min().unwrap_or(0);
        for &i in &order {
            weights.insert(diag.classes[i].bits(), weight[i].expect("visited") - low);
        }
    }
    Ok(WeakGrading { weights })
}

fn tree_path(parent: &[Option<usize>], mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while let Some(p) = parent[v] {
        path.push(p);
        v = p;
    }
    path.reverse();
    path
}

/// Root-to-`u` path, then back from `v` to the common ancestor.
fn conflict_cycle(parent: &[Option<usize>], u: usize, v: usize) -> Vec<usize> {
    let pu = tree_path(parent, u);
    let pv = tree_path(parent, v);
    let common = pu.iter().zip(&pv).take_while(|(a, b)| a == b).count();
    let mut cycle: Vec<usize> = pu[common - 1..].to_vec();
    cycle.extend(pv[common..].iter().rev());
    cycle
}

/// `Σ_J = ⌊deg f_J / deg f_1⌋` for homogeneous generators.
pub fn homogeneous_sigma(f: &MonomialSeq) -> Result<WeakGrading> {
    if !f.is_homogeneous() {
        return Err(Error::Inhomogeneous(f.degrees()));
    }
    let table = SubsetTable::new(f);
    let d = f.gen(1).degree();
    let weights = table
        .classes()
        .into_iter()
        .map(|c| (c.bits(), (table.degree(c) / d) as i32))
        .collect();
    Ok(WeakGrading { weights })
}

/// `T^Σ(f, a)` in the basis `c_J = ksgn(J) b_J`, with `J` in degree
/// `|J| - 2Σ_{M_J}`. Restricted to the classes in `only` when given.
pub fn totalization(
    table: &SubsetTable,
    diag: &SubcomplexDiagram,
    grading: &WeakGrading,
    only: Option<&[Subset]>,
) -> Result<TotalComplex> {
    grading.check(diag)?;
    let allowed: Option<HashMap<u32, ()>> = only.map(|cs| cs.iter().map(|c| (c.bits(), ())).collect());
    let keep = |s: Subset| allowed.as_ref().is_none_or(|a| a.contains_key(&table.closure(s).bits()));
    let degree = |s: Subset| {
        let w = grading.weight(table.closure(s)).expect("graded class");
        s.len() as i32 - 2 * w
    };
    let basis = (0..table.size() as u32).map(Subset).filter(|&s| keep(s));
    let entries = twisted_entries(table)
        .into_iter()
        .filter(|(src, _, _)| keep(*src))
        .map(|(src, dst, e)| (src, dst, e.times_sign(table.ksgn(src) * table.ksgn(dst))));
    Ok(assemble(table.n(), basis, degree, entries))
}

/// Weak grading or a `NotGradable` error carrying the obstruction.
pub fn grading_or_error(diag: &SubcomplexDiagram) -> Result<WeakGrading> {
    weak_grading(diag).map_err(|o| Error::NotGradable(o.to_string()))
}
