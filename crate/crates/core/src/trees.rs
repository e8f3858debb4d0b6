//! Quivers, induced trees and chains, and the closed forms for their
//! quantum F-polynomials and g-vectors.
//!
//! Vertices are 0-based internally. Serialized forms are 1-based.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::cluster::{denominator_vectors, ExchangeData, MutationWord};
use crate::error::{Error, Result};
use crate::fpoly::{extract_qfpoly, QFPoly};
use crate::qscalar::{HalfInt, QLaurent};
use crate::torus::SkewForm;

/// `|b_ij|` arrows `i → j` whenever `b_ij < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn from_matrix(b: &[Vec<i64>]) -> Result<Self> {
        let n = b.len();
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(Error::RankMismatch(format!("row {} has length {}", i + 1, row.len())));
            }
            for j in 0..n {
                if row[j] != -b[j][i] {
                    return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        let arrows = b
            .iter()
            .map(|row| row.iter().map(|&x| if x < 0 { (-x) as u32 } else { 0 }).collect())
            .collect();
        Ok(Quiver { arrows })
    }

    /// Builds a quiver from 0-based arcs; repeated arcs add multiplicity.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut arrows = vec![vec![0u32; n]; n];
        for &(i, j) in arcs {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidInput(format!("arc {} -> {}", i + 1, j + 1)));
            }
            arrows[i][j] += 1;
        }
        for i in 0..n {
            for j in 0..n {
                if arrows[i][j] > 0 && arrows[j][i] > 0 {
                    return Err(Error::InvalidInput(format!("2-cycle between {} and {}", i + 1, j + 1)));
                }
            }
        }
        Ok(Quiver { arrows })
    }

    pub fn n(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.arrows[i][j]
    }

    pub fn has_arrow(&self, i: usize, j: usize) -> bool {
        self.arrows[i][j] > 0
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.has_arrow(i, j) || self.has_arrow(j, i)
    }

    /// The arc multiset, each arc listed once per arrow.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..self.arrows[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.n();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.arrows[j][i] as i64 - self.arrows[i][j] as i64)
                    .collect()
            })
            .collect()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Number of edges at `i`, counted with multiplicity.
    pub fn degree(&self, i: usize) -> u32 {
        (0..self.n()).map(|j| self.arrows[i][j] + self.arrows[j][i]).sum()
    }

    fn max_multiplicity(&self) -> u32 {
        self.arrows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Number of connected components of the underlying graph induced on `s`.
    pub fn components(&self, s: &[usize]) -> usize {
        let mut seen = BTreeSet::new();
        let mut count = 0;
        for &v in s {
            if seen.insert(v) {
                count += 1;
                let mut queue = VecDeque::from([v]);
                while let Some(u) = queue.pop_front() {
                    for &w in s {
                        if self.adjacent(u, w) && seen.insert(w) {
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        count
    }

    /// Edges of the underlying graph with both ends in `s`, with multiplicity.
    pub fn induced_edges(&self, s: &[usize]) -> u32 {
        let mut e = 0;
        for &a in s {
            for &b in s {
                e += self.arrows[a][b];
            }
        }
        e
    }

    fn induces_tree(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.components(s) == 1 && self.induced_edges(s) as usize == s.len() - 1
    }

    fn induces_chain(&self, s: &[usize]) -> bool {
        self.induces_tree(s)
            && s
                .iter()
                .all(|&v| s.iter().filter(|&&w| self.adjacent(v, w)).count() <= 2)
    }

    /// Vertices reachable from `from` along arrows staying inside `within`.
    fn reachable(&self, from: usize, within: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &w in within {
                if self.has_arrow(u, w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn to_json(&self) -> serde_json::Value {
        let arcs: Vec<[usize; 2]> = self.arcs().into_iter().map(|(i, j)| [i + 1, j + 1]).collect();
        serde_json::json!({ "n": self.n(), "arcs": arcs })
    }
}

/// A vertex set inducing a tree, listed so that every prefix induces a tree
/// in which its last vertex is a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeSubset {
    vertices: Vec<usize>,
}

impl TreeSubset {
    /// Accepts an ordering as given, validating the leaf condition.
    pub fn new(q: &Quiver, vertices: Vec<usize>) -> Result<Self> {
        if vertices.iter().any(|&v| v >= q.n()) {
            return Err(Error::InvalidInput("vertex out of range".into()));
        }
        if vertices.iter().collect::<BTreeSet<_>>().len() != vertices.len() {
            return Err(Error::InvalidInput("repeated vertex".into()));
        }
        for i in 1..=vertices.len() {
            if !q.induces_tree(&vertices[..i]) {
                return Err(Error::InvalidInput(format!(
                    "prefix ending at vertex {} does not induce a tree",
                    vertices[i - 1] + 1
                )));
            }
        }
        Ok(TreeSubset { vertices })
    }

    /// Orders an unordered tree set by repeated leaf removal.
    pub fn from_set(q: &Quiver, set: &[usize]) -> Result<Self> {
        let mut rest: Vec<usize> = set.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if rest.is_empty() {
            return Ok(TreeSubset { vertices: vec![] });
        }
        if !q.induces_tree(&rest) {
            return Err(Error::InvalidInput("vertex set does not induce a tree".into()));
        }
        let mut removed = Vec::with_capacity(rest.len());
        while rest.len() > 1 {
            let leaf = *rest
                .iter()
                .find(|&&v| rest.iter().filter(|&&w| q.adjacent(v, w)).count() == 1)
                .expect("a tree with two or more vertices has a leaf");
            rest.retain(|&v| v != leaf);
            removed.push(leaf);
        }
        removed.push(rest[0]);
        removed.reverse();
        Self::new(q, removed)
    }

    pub fn empty() -> Self {
        TreeSubset { vertices: vec![] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// The mutation word reaching the associated cluster variable; the
    /// variable sits in the last direction.
    pub fn word(&self) -> MutationWord {
        MutationWord::new(self.vertices.clone())
    }

    pub fn indicator(&self, n: usize) -> Vec<i64> {
        let mut e = vec![0; n];
        for &v in &self.vertices {
            e[v] = 1;
        }
        e
    }
}

/// A subset of `T` closed under arrows inside `T`, with its component count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSubset {
    pub vertices: Vec<usize>,
    pub components: usize,
}

/// Every `S ⊆ T` with `j ∈ S, j → i, i ∈ T ⇒ i ∈ S`, in increasing order of
/// size and then lexicographically.
pub fn closed_subsets(t: &TreeSubset, q: &Quiver) -> Vec<ClosedSubset> {
    let tv: Vec<usize> = {
        let mut v = t.vertices.clone();
        v.sort_unstable();
        v
    };
    assert!(tv.len() < 64, "tree too large for subset enumeration");
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << tv.len()) {
        let s: Vec<usize> = (0..tv.len()).filter(|&b| mask >> b & 1 == 1).map(|b| tv[b]).collect();
        let closed = s
            .iter()
            .all(|&j| tv.iter().all(|&i| !q.has_arrow(j, i) || s.contains(&i)));
        if closed {
            out.push(ClosedSubset {
                components: q.components(&s),
                vertices: s,
            });
        }
    }
    out.sort_by(|a, b| (a.vertices.len(), &a.vertices).cmp(&(b.vertices.len(), &b.vertices)));
    out
}

/// `F_T = Σ_S q^{dφ(S)/2} Z^{e_S}` for `D = dI`.
pub fn tree_qfpoly(t: &TreeSubset, q: &Quiver, d: i64) -> Result<QFPoly> {
    if d <= 0 {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    let n = q.n();
    let b0 = Arc::new(ExchangeData::new(q.to_matrix(), vec![d; n])?);
    let terms = closed_subsets(t, q).into_iter().map(|s| {
        let mut e = vec![0; n];
        for v in s.vertices {
            e[v] = 1;
        }
        (e, QLaurent::q_power(HalfInt::from_twice(d * s.components as i64)))
    });
    QFPoly::from_terms(&b0, terms)
}

/// The data determining `γ_k` for a tree `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaData {
    pub k: usize,
    pub i_in: Vec<usize>,
    pub i_out: Vec<usize>,
    /// `(j, i)` with `j ∈ I_out`, `i ∈ I_in` and a directed path `j ⇝ i` in `T`.
    pub path_pairs: Vec<(usize, usize)>,
}

impl GammaData {
    pub fn new(t: &TreeSubset, q: &Quiver, k: usize) -> Result<Self> {
        check_simple(q)?;
        let i_in: Vec<usize> = (0..q.n()).filter(|&i| t.contains(i) && q.has_arrow(i, k)).collect();
        let i_out: Vec<usize> = (0..q.n()).filter(|&j| t.contains(j) && q.has_arrow(k, j)).collect();
        let mut path_pairs = Vec::new();
        for &j in &i_out {
            let reach = q.reachable(j, &t.vertices);
            path_pairs.extend(i_in.iter().filter(|i| reach.contains(i)).map(|&i| (j, i)));
        }
        Ok(GammaData {
            k,
            i_in,
            i_out,
            path_pairs,
        })
    }
}

fn check_simple(q: &Quiver) -> Result<()> {
    for i in 0..q.n() {
        for j in 0..q.n() {
            if q.arrows(i, j) > 1 {
                return Err(Error::EntriesOutOfRange {
                    i: j + 1,
                    j: i + 1,
                    value: -(q.arrows(i, j) as i64),
                });
            }
        }
    }
    Ok(())
}

/// Rank of `γ_k`: a maximum matching between `I_out` and `I_in` along path
/// pairs.
pub fn gamma_rank(g: &GammaData) -> usize {
    fn augment(
        j: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        matched: &mut [Option<usize>],
    ) -> bool {
        for &i in &adj[j] {
            if !seen[i] {
                seen[i] = true;
                if matched[i].is_none_or(|other| augment(other, adj, seen, matched)) {
                    matched[i] = Some(j);
                    return true;
                }
            }
        }
        false
    }
    let adj: Vec<Vec<usize>> = g
        .i_out
        .iter()
        .map(|j| {
            g.path_pairs
                .iter()
                .filter(|(a, _)| a == j)
                .map(|(_, i)| g.i_in.iter().position(|x| x == i).expect("i in I_in"))
                .collect()
        })
        .collect();
    let mut matched = vec![None; g.i_in.len()];
    (0..adj.len())
        .filter(|&j| augment(j, &adj, &mut vec![false; g.i_in.len()], &mut matched))
        .count()
}

/// `g_k = |I_out(k)| - rank γ_k - dim M(k)`, cross-checked on `T` against
/// `|I_out(k)| - 1`.
pub fn tree_gvector(t: &TreeSubset, q: &Quiver) -> Result<Vec<i64>> {
    (0..q.n())
        .map(|k| {
            let data = GammaData::new(t, q, k)?;
            let out = data.i_out.len() as i64;
            let g = out - gamma_rank(&data) as i64 - t.contains(k) as i64;
            if t.contains(k) && g != out - 1 {
                return Err(Error::RouteMismatch(format!("g-vector component {} on the tree", k + 1)));
            }
            Ok(g)
        })
        .collect()
}

/// Checks the type-A conditions: connected, no multiple edges, every induced
/// cycle an oriented 3-cycle, degrees at most 4, and the pairing of edges at
/// vertices of degree 3 and 4.
pub fn check_type_a(q: &Quiver) -> Result<()> {
    let n = q.n();
    if n == 0 {
        return Err(Error::NotTypeA("empty quiver".into()));
    }
    if q.max_multiplicity() > 1 {
        return Err(Error::NotTypeA("multiple edges".into()));
    }
    let all: Vec<usize> = (0..n).collect();
    if q.components(&all) != 1 {
        return Err(Error::NotTypeA("quiver is disconnected".into()));
    }
    for v in 0..n {
        let nb = q.neighbors(v);
        if nb.len() > 4 {
            return Err(Error::NotTypeA(format!("vertex {} has degree {}", v + 1, nb.len())));
        }
        let linked = nb
            .iter()
            .enumerate()
            .flat_map(|(x, &a)| nb[x + 1..].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| q.adjacent(a, b))
            .count();
        let ok = match nb.len() {
            4 => linked == 2 && nb.iter().all(|&a| nb.iter().filter(|&&b| q.adjacent(a, b)).count() == 1),
            3 => linked == 1,
            _ => true,
        };
        if !ok {
            return Err(Error::NotTypeA(format!(
                "edges at vertex {} of degree {} are not paired into 3-cycles as required",
                v + 1,
                nb.len()
            )));
        }
        for (x, &a) in nb.iter().enumerate() {
            for &b in &nb[x + 1..] {
                if q.adjacent(a, b) {
                    let oriented = (q.has_arrow(v, a) && q.has_arrow(a, b) && q.has_arrow(b, v))
                        || (q.has_arrow(v, b) && q.has_arrow(b, a) && q.has_arrow(a, v));
                    if !oriented {
                        return Err(Error::NotTypeA(format!(
                            "3-cycle on {}, {}, {} is not oriented",
                            v + 1,
                            a + 1,
                            b + 1
                        )));
                    }
                }
            }
        }
    }
    if !is_chordal(q) {
        return Err(Error::NotTypeA("induced cycle of length at least 4".into()));
    }
    Ok(())
}

/// Repeatedly strips vertices whose neighbourhood is a clique.
fn is_chordal(q: &Quiver) -> bool {
    let mut rest: Vec<usize> = (0..q.n()).collect();
    while !rest.is_empty() {
        let simplicial = rest.iter().position(|&v| {
            let nb: Vec<usize> = rest.iter().copied().filter(|&w| q.adjacent(v, w)).collect();
            nb.iter().all(|&a| nb.iter().all(|&b| a == b || q.adjacent(a, b)))
        });
        match simplicial {
            Some(p) => {
                rest.remove(p);
            }
            None => return false,
        }
    }
    true
}

/// All vertex sets of a type-A quiver inducing a chain, each ordered from an
/// endpoint along its edges. Sorted by size, then by the sorted vertex list.
pub fn type_a_chains(q: &Quiver) -> Result<Vec<TreeSubset>> {
    check_type_a(q)?;
    let n = q.n();
    assert!(n < 64, "quiver too large for subset enumeration");
    let mut out: Vec<(Vec<usize>, TreeSubset)> = Vec::new();
    for mask in 1u64..(1u64 << n) {
        let set: Vec<usize> = (0..n).filter(|&b| mask >> b & 1 == 1).collect();
        if !q.induces_chain(&set) {
            continue;
        }
        let start = *set
            .iter()
            .find(|&&v| set.iter().filter(|&&w| q.adjacent(v, w)).count() <= 1)
            .expect("a chain has an endpoint");
        let mut order = vec![start];
        while order.len() < set.len() {
            let last = *order.last().expect("nonempty");
            let next = *set
                .iter()
                .find(|&&w| q.adjacent(last, w) && !order.contains(&w))
                .expect("chain continues");
            order.push(next);
        }
        out.push((set, TreeSubset::new(q, order)?));
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out.into_iter().map(|(_, t)| t).collect())
}

/// g-vector of the cluster variable of a chain in a type-A quiver.
pub fn type_a_gvector(c: &TreeSubset, q: &Quiver) -> Vec<i64> {
    (0..q.n())
        .map(|k| {
            if c.contains(k) {
                return (0..q.n()).filter(|&j| c.contains(j) && q.has_arrow(k, j)).count() as i64 - 1;
            }
            let mut extended = c.vertices.clone();
            extended.push(k);
            let points_in = c.vertices.iter().any(|&j| q.has_arrow(k, j));
            if points_in && q.induces_chain(&extended) {
                1
            } else {
                0
            }
        })
        .collect()
}

/// Closed-form data for one chain or tree.
#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub chain: Vec<usize>,
    pub gvector: Vec<i64>,
    pub qfpoly: serde_json::Value,
    pub denominator: Vec<i64>,
}

impl ChainReport {
    pub fn new(t: &TreeSubset, q: &Quiver, d: i64) -> Result<Self> {
        Ok(ChainReport {
            chain: t.vertices.iter().map(|v| v + 1).collect(),
            gvector: tree_gvector(t, q)?,
            qfpoly: tree_qfpoly(t, q, d)?.to_json(),
            denominator: t.indicator(q.n()),
        })
    }
}

/// Compares the closed forms for `t` with the engine run along `t`'s word:
/// F-polynomial, g-vector (both formulas when `t` is a chain of a type-A
/// quiver) and denominator vector.
pub fn check_tree_against_engine(t: &TreeSubset, q: &Quiver, d: i64, type_a: bool) -> Result<()> {
    let last = *t
        .vertices
        .last()
        .ok_or_else(|| Error::InvalidInput("empty tree has no cluster variable".into()))?;
    let n = q.n();
    let b0 = ExchangeData::new(q.to_matrix(), vec![d; n])?;
    let word = t.word();
    let (f, g) = extract_qfpoly(&b0, &SkewForm::zero(n), &word, last)?;
    let closed = tree_qfpoly(t, q, d)?;
    if f != closed {
        return Err(Error::RouteMismatch(format!("F-polynomial: engine {f}, closed form {closed}")));
    }
    let gt = tree_gvector(t, q)?;
    if g != gt {
        return Err(Error::RouteMismatch(format!("g-vector: engine {g:?}, closed form {gt:?}")));
    }
    if type_a {
        let ga = type_a_gvector(t, q);
        if ga != gt {
            return Err(Error::RouteMismatch(format!("g-vector: chain rule {ga:?}, rank rule {gt:?}")));
        }
    }
    let den = denominator_vectors(&b0, &word)?.swap_remove(last);
    if den != t.indicator(n) {
        return Err(Error::RouteMismatch(format!("denominator vector {den:?}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a4() -> Quiver {
        Quiver::from_matrix(&[
            vec![0, 1, -1, 0],
            vec![-1, 0, 1, 0],
            vec![1, -1, 0, -1],
            vec![0, 0, 1, 0],
        ])
        .unwrap()
    }

    fn set(v: &[usize]) -> Vec<usize> {
        v.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn quiver_arcs() {
        let mut arcs = a4().arcs();
        arcs.sort();
        assert_eq!(arcs, vec![(0, 2), (1, 0), (2, 1), (2, 3)]);
        assert!(Quiver::from_matrix(&[vec![0, 0], vec![0, 0]]).unwrap().arcs().is_empty());
        let double = Quiver::from_matrix(&[vec![0, -2], vec![2, 0]]).unwrap();
        assert_eq!(double.arcs(), vec![(0, 1), (0, 1)]);
        assert_eq!(double.to_matrix(), vec![vec![0, -2], vec![2, 0]]);
        assert!(matches!(
            Quiver::from_matrix(&[vec![0, 1], vec![1, 0]]),
            Err(Error::NotSkewSymmetric { .. })
        ));
    }

    #[test]
    fn closed_subsets_of_a4_tree() {
        let q = a4();
        let t = TreeSubset::from_set(&q, &set(&[2, 3, 4])).unwrap();
        let got: Vec<(Vec<usize>, usize)> = closed_subsets(&t, &q)
            .into_iter()
            .map(|s| (s.vertices.iter().map(|v| v + 1).collect(), s.components))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![], 0),
                (vec![2], 1),
                (vec![4], 1),
                (vec![2, 4], 2),
                (vec![2, 3, 4], 1)
            ]
        );
        assert_eq!(closed_subsets(&TreeSubset::empty(), &q).len(), 1);
        let single = TreeSubset::new(&q, vec![2]).unwrap();
        assert_eq!(closed_subsets(&single, &q).len(), 2);
    }

    #[test]
    fn component_count_matches_edges() {
        let q = a4();
        for c in type_a_chains(&q).unwrap() {
            for s in closed_subsets(&c, &q) {
                assert_eq!(s.vertices.len() - q.induced_edges(&s.vertices) as usize, s.components);
            }
        }
    }

    #[test]
    fn closed_form_polynomials() {
        let q = a4();
        let t = TreeSubset::from_set(&q, &set(&[2, 3, 4])).unwrap();
        assert_eq!(
            tree_qfpoly(&t, &q, 2).unwrap().to_string(),
            "qZ^{(0,1,1,1)} + q^{2}Z^{(0,1,0,1)} + qZ^{(0,1,0,0)} + qZ^{(0,0,0,1)} + 1"
        );
        let single = TreeSubset::new(&q, vec![0]).unwrap();
        assert_eq!(tree_qfpoly(&single, &q, 3).unwrap().to_string(), "q^{3/2}Z^{(1,0,0,0)} + 1");
        assert!(tree_qfpoly(&TreeSubset::empty(), &q, 2).unwrap().is_one());
    }

    #[test]
    fn gamma_ranks() {
        let q = a4();
        let c = TreeSubset::from_set(&q, &set(&[2, 3, 4])).unwrap();
        let data = GammaData::new(&c, &q, 0).unwrap();
        assert_eq!((data.i_out.clone(), data.i_in.clone()), (vec![2], vec![1]));
        assert_eq!(gamma_rank(&data), 1);
        let none = GammaData::new(&c, &q, 2).unwrap();
        assert!(none.i_in.is_empty());
        assert_eq!(gamma_rank(&none), 0);
        let double = Quiver::from_matrix(&[vec![0, -2], vec![2, 0]]).unwrap();
        assert!(matches!(
            GammaData::new(&TreeSubset::empty(), &double, 0),
            Err(Error::EntriesOutOfRange { .. })
        ));
    }

    #[test]
    fn gamma_rank_two_disjoint_paths() {
        // k=0 points to 1 and 2; paths 1->3 and 2->4 lead back into 0.
        let q = Quiver::from_arcs(5, &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 0), (4, 0)]).unwrap();
        let t = TreeSubset {
            vertices: vec![1, 2, 3, 4],
        };
        let data = GammaData::new(&t, &q, 0).unwrap();
        assert_eq!(gamma_rank(&data), 2);
        let brute = brute_force_rank(&data);
        assert_eq!(brute, 2);
    }

    fn brute_force_rank(g: &GammaData) -> usize {
        let mut best = 0;
        let pairs = &g.path_pairs;
        for mask in 0u32..(1 << pairs.len()) {
            let chosen: Vec<_> = (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
            let outs: BTreeSet<_> = chosen.iter().map(|p| p.0).collect();
            let ins: BTreeSet<_> = chosen.iter().map(|p| p.1).collect();
            if outs.len() == chosen.len() && ins.len() == chosen.len() {
                best = best.max(chosen.len());
            }
        }
        best
    }

    #[test]
    fn a4_gvectors() {
        let q = a4();
        let g = |v: &[usize]| tree_gvector(&TreeSubset::from_set(&q, &set(v)).unwrap(), &q).unwrap();
        assert_eq!(g(&[2, 3, 4]), vec![0, -1, 1, -1]);
        assert_eq!(g(&[1, 3, 4]), vec![0, 0, 0, -1]);
        assert_eq!(tree_gvector(&TreeSubset::empty(), &q).unwrap(), vec![0; 4]);
        let ga = |v: &[usize]| type_a_gvector(&TreeSubset::from_set(&q, &set(v)).unwrap(), &q);
        assert_eq!(ga(&[3, 4]), vec![1, 0, 0, -1]);
        assert_eq!(ga(&[1, 2]), vec![-1, 0, 0, 0]);
        assert_eq!(ga(&[2]), vec![0, -1, 1, 0]);
    }

    #[test]
    fn chains_of_small_quivers() {
        let a2 = Quiver::from_matrix(&[vec![0, 1], vec![-1, 0]]).unwrap();
        assert_eq!(a2.arcs(), vec![(1, 0)]);
        let sets: Vec<Vec<usize>> = type_a_chains(&a2).unwrap().iter().map(|c| c.vertices().to_vec()).collect();
        assert_eq!(sets, vec![vec![0], vec![1], vec![0, 1]]);
        let one = Quiver::from_matrix(&[vec![0]]).unwrap();
        assert_eq!(type_a_chains(&one).unwrap().len(), 1);
        let chains = type_a_chains(&a4()).unwrap();
        let mut sets: Vec<Vec<usize>> = chains
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.vertices().iter().map(|x| x + 1).collect();
                v.sort();
                v
            })
            .collect();
        sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        assert_eq!(
            sets,
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![3, 4],
                vec![1, 3, 4],
                vec![2, 3, 4]
            ]
        );
        for c in &chains {
            for w in c.vertices().windows(2) {
                assert!(a4().adjacent(w[0], w[1]));
            }
        }
    }

    #[test]
    fn type_a_recognizer_rejections() {
        let square = Quiver::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(check_type_a(&square), Err(Error::NotTypeA(_))));
        let acyclic_triangle = Quiver::from_arcs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check_type_a(&acyclic_triangle).is_err());
        let double = Quiver::from_arcs(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(check_type_a(&double).is_err());
        let star = Quiver::from_arcs(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(check_type_a(&star).is_err());
        let split = Quiver::from_arcs(3, &[(0, 1)]).unwrap();
        assert!(check_type_a(&split).is_err());
        assert!(check_type_a(&a4()).is_ok());
        let triangle = Quiver::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(check_type_a(&triangle).is_ok());
    }

    #[test]
    fn leaf_ordering() {
        let q = a4();
        let t = TreeSubset::from_set(&q, &set(&[1, 2, 3, 4])).err();
        assert!(t.is_some(), "contains the 3-cycle");
        let t = TreeSubset::from_set(&q, &set(&[4, 3, 2])).unwrap();
        for i in 1..=t.vertices().len() {
            assert!(q.induces_tree(&t.vertices()[..i]));
        }
        assert!(TreeSubset::new(&q, set(&[2, 4, 3])).is_err());
    }

    #[test]
    fn a4_chains_agree_with_engine() {
        let q = a4();
        for c in type_a_chains(&q).unwrap() {
            check_tree_against_engine(&c, &q, 2, true).unwrap();
        }
    }
}
