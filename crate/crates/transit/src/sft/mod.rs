//! Exact decision procedures for one- and two-sided vertex shifts of finite
//! type: normalization, connectivity and period analysis, hitting-time sets,
//! invariant-set calculus, products and full property decisions.

mod decide;
mod reach;

pub use decide::decide_property;
pub use reach::{hitting_set, reach_profile, reach_profile_with_cap, ReachProfile};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::types::{Alphabet, Word};

pub const DEFAULT_POWER_CAP: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SftError {
    #[error("the presented subshift is empty")]
    EmptySystem,
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("word is not legal in this graph: {0}")]
    IllegalWord(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sidedness {
    #[serde(rename = "one")]
    One,
    #[serde(rename = "two")]
    Two,
}

/// Directed graph presenting a vertex shift. Vertices are the symbols of the
/// alphabet; a word is legal when consecutive symbols are joined by edges.
/// Shift maps of vertex shifts are open, so `open_map` is always set here;
/// `invertible` is set exactly for two-sided presentations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftGraph {
    alphabet: Alphabet,
    adj: Vec<Vec<bool>>,
    sided: Sidedness,
    open_map: bool,
    invertible: bool,
}

/// Subset of the vertices of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexSet(pub BTreeSet<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvariantMode {
    Plus,
    WeakMinus,
    Minus,
}

impl SftGraph {
    pub fn new(
        alphabet: Alphabet,
        edges: &[(usize, usize)],
        sided: Sidedness,
    ) -> Result<Self, SftError> {
        let n = alphabet.len();
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(SftError::Invalid(format!(
                    "edge ({i},{j}) out of range for {n} vertices"
                )));
            }
            adj[i][j] = true;
        }
        Ok(SftGraph {
            alphabet,
            adj,
            sided,
            open_map: true,
            invertible: matches!(sided, Sidedness::Two),
        })
    }

    /// Construction followed by essentialization.
    pub fn essential(
        alphabet: Alphabet,
        edges: &[(usize, usize)],
        sided: Sidedness,
    ) -> Result<Self, SftError> {
        Self::new(alphabet, edges, sided)?.essentialize()
    }

    /// Complete graph over `n` numeric symbols: the full shift.
    pub fn full_shift(n: usize, sided: Sidedness) -> Self {
        let alphabet = Alphabet::numeric(n);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .collect();
        SftGraph::new(alphabet, &edges, sided).expect("full shift")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| self.adj[i][j]).map(move |j| (i, j)))
            .collect()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&j| self.adj[i][j])
    }

    pub fn predecessors(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(move |&i| self.adj[i][j])
    }

    pub fn sided(&self) -> Sidedness {
        self.sided
    }

    pub fn open_map(&self) -> bool {
        self.open_map
    }

    pub fn invertible(&self) -> bool {
        self.invertible
    }

    /// Single vertex with a single self-loop presents a one-point subshift.
    pub fn is_trivial(&self) -> bool {
        self.vertex_count() == 1
    }

    /// Iteratively deletes vertices with in-degree 0 or out-degree 0 until
    /// stable. The result presents the same subshift. Errors when nothing
    /// survives.
    pub fn essentialize(&self) -> Result<SftGraph, SftError> {
        let n = self.vertex_count();
        let mut alive: Vec<bool> = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let out = (0..n).any(|j| alive[j] && self.adj[v][j]);
                let inn = (0..n).any(|i| alive[i] && self.adj[i][v]);
                if !out || !inn {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        if kept.is_empty() {
            return Err(SftError::EmptySystem);
        }
        Ok(self.induced(&kept))
    }

    /// Subgraph induced by the given vertices (in the given order).
    fn induced(&self, kept: &[usize]) -> SftGraph {
        let alphabet = Alphabet::new(
            kept.iter().map(|&v| self.alphabet.symbol(v).to_string()),
        )
        .expect("nonempty induced alphabet");
        let m = kept.len();
        let mut adj = vec![vec![false; m]; m];
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate() {
                adj[a][b] = self.adj[i][j];
            }
        }
        SftGraph {
            alphabet,
            adj,
            sided: self.sided,
            open_map: self.open_map,
            invertible: self.invertible,
        }
    }

    pub fn is_essential(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|v| {
            (0..n).any(|j| self.adj[v][j]) && (0..n).any(|i| self.adj[i][v])
        })
    }

    /// True when every consecutive pair of symbols is an edge.
    pub fn word_is_legal(&self, w: &Word) -> bool {
        let n = self.vertex_count();
        if w.symbols().iter().any(|&s| s >= n) {
            return false;
        }
        w.symbols().windows(2).all(|p| self.adj[p[0]][p[1]])
    }

    /// Tarjan strongly connected components, in reverse topological order.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut state = TarjanState {
            index: 0,
            stack: Vec::new(),
            on_stack: vec![false; n],
            idx: vec![None; n],
            low: vec![0; n],
            comps: Vec::new(),
        };
        for v in 0..n {
            if state.idx[v].is_none() {
                self.strongconnect(v, &mut state);
            }
        }
        state.comps
    }

    fn strongconnect(&self, v: usize, st: &mut TarjanState) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for w in self.successors(v).collect::<Vec<_>>() {
            if st.idx[w].is_none() {
                self.strongconnect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            st.comps.push(comp);
        }
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.vertex_count() > 0 && self.sccs().len() == 1
    }

    /// gcd of all cycle lengths, computed from BFS level differences.
    /// Requires an essential strongly connected graph.
    pub fn period(&self) -> Result<u64, SftError> {
        if !self.is_strongly_connected() {
            return Err(SftError::NotStronglyConnected);
        }
        let n = self.vertex_count();
        let mut level = vec![None::<i64>; n];
        let mut queue = std::collections::VecDeque::new();
        level[0] = Some(0);
        queue.push_back(0);
        let mut g: u64 = 0;
        while let Some(v) = queue.pop_front() {
            for w in self.successors(v).collect::<Vec<_>>() {
                match level[w] {
                    None => {
                        level[w] = Some(level[v].unwrap() + 1);
                        queue.push_back(w);
                    }
                    Some(lw) => {
                        let diff = (level[v].unwrap() + 1 - lw).unsigned_abs();
                        if diff > 0 {
                            g = if g == 0 {
                                diff
                            } else {
                                num::integer::gcd(g, diff)
                            };
                        }
                    }
                }
            }
        }
        // A strongly connected graph with no level defect is a single cycle
        // image; its period is the common level count.
        if g == 0 {
            // every edge advances the level by exactly one; cycles all have
            // length equal to the number of distinct levels
            let max_level = level.iter().flatten().max().copied().unwrap_or(0);
            g = (max_level + 1) as u64;
        }
        Ok(g)
    }

    /// Strongly connected with period 1.
    pub fn is_primitive(&self) -> bool {
        self.is_strongly_connected() && self.period() == Ok(1)
    }

    /// Single simple cycle: strongly connected and every out-degree is 1.
    pub fn is_single_cycle(&self) -> bool {
        self.is_strongly_connected()
            && (0..self.vertex_count()).all(|v| self.successors(v).count() == 1)
    }

    /// Levelwise forward reachability: the sets of vertices reachable from
    /// `start` in exactly 1, 2, ..., `steps` steps.
    pub fn reach_layers(&self, start: usize, steps: usize) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut cur = vec![false; n];
        cur[start] = true;
        let mut out = Vec::with_capacity(steps);
        for _ in 0..steps {
            let mut next = vec![false; n];
            for i in 0..n {
                if cur[i] {
                    for j in 0..n {
                        if self.adj[i][j] {
                            next[j] = true;
                        }
                    }
                }
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    /// Maximal `W' ⊆ W` whose vertex subshift is invariant. `Plus` and
    /// `WeakMinus` prune vertices missing an in-W successor (resp.
    /// predecessor) first and then take the mutual fixpoint; on vertex
    /// subshifts both reach the same core. `Minus` additionally demands
    /// closure under ambient predecessors.
    pub fn invariant_core(&self, w: &VertexSet, mode: InvariantMode) -> VertexSet {
        let n = self.vertex_count();
        let mut inw = vec![false; n];
        for &v in &w.0 {
            if v < n {
                inw[v] = true;
            }
        }
        loop {
            let mut changed = false;
            for v in 0..n {
                if !inw[v] {
                    continue;
                }
                let succ = (0..n).any(|j| inw[j] && self.adj[v][j]);
                let pred = (0..n).any(|i| inw[i] && self.adj[i][v]);
                let keep = match mode {
                    InvariantMode::Plus | InvariantMode::WeakMinus => succ && pred,
                    InvariantMode::Minus => {
                        succ && pred && (0..n).all(|i| !self.adj[i][v] || inw[i])
                    }
                };
                if !keep {
                    inw[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        VertexSet((0..n).filter(|&v| inw[v]).collect())
    }

    /// Tensor product: edge ((i,j),(i',j')) iff i->i' and j->j'. The result
    /// is essentialized; flags are conjunctions of the inputs' flags.
    pub fn product(&self, other: &SftGraph) -> Result<SftGraph, SftError> {
        let (n1, n2) = (self.vertex_count(), other.vertex_count());
        let alphabet = Alphabet::new((0..n1).flat_map(|i| {
            (0..n2).map(move |j| {
                format!("({},{})", self.alphabet.symbol(i), other.alphabet.symbol(j))
            })
        }))
        .expect("nonempty product alphabet");
        let m = n1 * n2;
        let mut adj = vec![vec![false; m]; m];
        for i in 0..n1 {
            for j in 0..n2 {
                for i2 in 0..n1 {
                    for j2 in 0..n2 {
                        if self.adj[i][i2] && other.adj[j][j2] {
                            adj[i * n2 + j][i2 * n2 + j2] = true;
                        }
                    }
                }
            }
        }
        let g = SftGraph {
            alphabet,
            adj,
            sided: self.sided,
            open_map: self.open_map && other.open_map,
            invertible: self.invertible && other.invertible,
        };
        g.essentialize()
    }
}

struct TarjanState {
    index: usize,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    idx: Vec<Option<usize>>,
    low: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

/// Standard presentation of a forbidden-word SFT as a vertex shift on
/// (k-1)-blocks, where k is the longest forbidden word (at least 2).
/// Vertices are the legal blocks; an edge joins progressively overlapping
/// blocks whose join avoids every forbidden word.
pub fn higher_block_recode(
    alphabet: &Alphabet,
    forbidden: &[Word],
) -> Result<SftGraph, SftError> {
    if forbidden.is_empty() {
        return Err(SftError::Invalid("forbidden word list is empty".into()));
    }
    let k = forbidden.iter().map(Word::len).max().unwrap().max(2);
    let contains_forbidden = |w: &[usize]| {
        forbidden.iter().any(|f| {
            !f.is_empty()
                && f.len() <= w.len()
                && w.windows(f.len()).any(|win| win == f.symbols())
        })
    };

    // all (k-1)-blocks free of forbidden factors
    let mut blocks: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..k - 1 {
        let mut next = Vec::new();
        for b in &blocks {
            for s in 0..alphabet.len() {
                let mut c = b.clone();
                c.push(s);
                if !contains_forbidden(&c) {
                    next.push(c);
                }
            }
        }
        blocks = next;
    }
    if blocks.is_empty() {
        return Err(SftError::EmptySystem);
    }

    let single = alphabet.symbols().iter().all(|s| s.chars().count() == 1);
    let sep = if single { "" } else { "\u{b7}" };
    let names: Vec<String> = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&s| alphabet.symbol(s))
                .collect::<Vec<_>>()
                .join(sep)
        })
        .collect();
    let block_alphabet =
        Alphabet::new(names).map_err(|e| SftError::Invalid(e.to_string()))?;

    let mut edges = Vec::new();
    for (a, u) in blocks.iter().enumerate() {
        for (b, v) in blocks.iter().enumerate() {
            if u[1..] == v[..k - 2] {
                let mut joined = u.clone();
                joined.push(v[k - 2]);
                if !contains_forbidden(&joined) {
                    edges.push((a, b));
                }
            }
        }
    }
    SftGraph::new(block_alphabet, &edges, Sidedness::One)?.essentialize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SftGraph {
        SftGraph::new(Alphabet::numeric(n), edges, Sidedness::One).unwrap()
    }

    pub(crate) fn golden_mean() -> SftGraph {
        graph(2, &[(0, 0), (0, 1), (1, 0)]).essentialize().unwrap()
    }

    #[test]
    fn essentialize_keeps_complete_graph() {
        let g = SftGraph::full_shift(2, Sidedness::One);
        let e = g.essentialize().unwrap();
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.edges().len(), 4);
    }

    #[test]
    fn essentialize_kills_path() {
        // a -> b -> c with no other edges supports no point
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(g.essentialize(), Err(SftError::EmptySystem));
    }

    #[test]
    fn essentialize_drops_dangling_edge() {
        let g = graph(2, &[(0, 0), (0, 1)]);
        let e = g.essentialize().unwrap();
        assert_eq!(e.vertex_count(), 1);
        assert_eq!(e.alphabet().symbol(0), "0");
    }

    #[test]
    fn period_examples() {
        let loop1 = graph(1, &[(0, 0)]);
        assert_eq!(loop1.period().unwrap(), 1);

        let cyc2 = graph(2, &[(0, 1), (1, 0)]);
        assert_eq!(cyc2.period().unwrap(), 2);

        // gcd of cycle lengths 1 and 2
        assert_eq!(golden_mean().period().unwrap(), 1);

        let cyc3 = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(cyc3.period().unwrap(), 3);
    }

    #[test]
    fn period_requires_strong_connectivity() {
        let g = graph(2, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(g.period(), Err(SftError::NotStronglyConnected));
    }

    #[test]
    fn invariant_core_examples() {
        // two loops plus one connecting edge
        let g = graph(2, &[(0, 0), (0, 1), (1, 1)]);
        let w = VertexSet([0usize].into_iter().collect());
        let core = g.invariant_core(&w, InvariantMode::Plus);
        assert_eq!(core.0.len(), 1);
        // predecessors of 0 are {0}, so the minus core is the same
        let core = g.invariant_core(&w, InvariantMode::Minus);
        assert_eq!(core.0.len(), 1);

        let cyc2 = graph(2, &[(0, 1), (1, 0)]);
        let core = cyc2.invariant_core(&w, InvariantMode::Plus);
        assert!(core.0.is_empty());
    }

    #[test]
    fn invariant_core_minus_rejects_outside_predecessor() {
        // 0 -> 1 loopy graph: predecessors of 1 include 0
        let g = graph(2, &[(0, 0), (0, 1), (1, 1)]);
        let w = VertexSet([1usize].into_iter().collect());
        assert_eq!(g.invariant_core(&w, InvariantMode::Plus).0.len(), 1);
        assert!(g.invariant_core(&w, InvariantMode::Minus).0.is_empty());
    }

    #[test]
    fn product_of_full_shifts_is_full() {
        let f = SftGraph::full_shift(2, Sidedness::One);
        let p = f.product(&f).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert!(p.is_primitive());
    }

    #[test]
    fn product_of_two_cycles_splits() {
        let c = graph(2, &[(0, 1), (1, 0)]);
        let p = c.product(&c).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.sccs().len(), 2);
        assert!(!p.is_strongly_connected());
    }

    #[test]
    fn product_full_by_cycle_is_connected_period_two() {
        let f = SftGraph::full_shift(2, Sidedness::One);
        let c = graph(2, &[(0, 1), (1, 0)]);
        let p = f.product(&c).unwrap();
        assert!(p.is_strongly_connected());
        assert_eq!(p.period().unwrap(), 2);
    }

    #[test]
    fn product_with_point_is_identity_up_to_renaming() {
        let g = golden_mean();
        let point = graph(1, &[(0, 0)]);
        let p = g.product(&point).unwrap();
        assert_eq!(p.vertex_count(), g.vertex_count());
        let mut pe: Vec<_> = p.edges();
        let mut ge: Vec<_> = g.edges();
        pe.sort_unstable();
        ge.sort_unstable();
        assert_eq!(pe, ge);
    }

    #[test]
    fn recode_single_forbidden_word_gives_golden_mean() {
        let a = Alphabet::numeric(2);
        let fw = [a.parse_word("11").unwrap()];
        let g = higher_block_recode(&a, &fw).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let mut e = g.edges();
        e.sort_unstable();
        // vertex names are the 1-blocks "0" and "1"; edge 1->1 excluded
        assert_eq!(e.len(), 3);
        assert!(g.is_primitive());
    }

    #[test]
    fn recode_alternating_gives_two_cycle() {
        let a = Alphabet::numeric(2);
        let fw = [a.parse_word("00").unwrap(), a.parse_word("11").unwrap()];
        let g = higher_block_recode(&a, &fw).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert!(g.is_single_cycle());
        assert_eq!(g.period().unwrap(), 2);
    }

    #[test]
    fn recode_three_symbols_no_00() {
        let a = Alphabet::numeric(3);
        let fw = [a.parse_word("00").unwrap()];
        let g = higher_block_recode(&a, &fw).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges().len(), 8); // complete minus 0->0
        let z = g.alphabet().index_of("0").unwrap();
        assert!(!g.has_edge(z, z));
    }

    #[test]
    fn recode_everything_forbidden_is_empty() {
        let a = Alphabet::numeric(1);
        let fw = [a.parse_word("00").unwrap()];
        assert_eq!(higher_block_recode(&a, &fw), Err(SftError::EmptySystem));
    }

    #[test]
    fn single_cycle_detection() {
        assert!(graph(2, &[(0, 1), (1, 0)]).is_single_cycle());
        assert!(!golden_mean().is_single_cycle());
        assert!(graph(1, &[(0, 0)]).is_single_cycle());
    }
}
