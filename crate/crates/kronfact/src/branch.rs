//! Combining length-2 factorizations into prime decompositions and the
//! decomposition graph.
//!
//! The left sizes of all length-2 factorizations form a set `L`. A branch
//! is a chain of consecutive multiples inside `L`, starting from an element
//! with no proper divisor in `L` and extended greedily until no multiple is
//! left; each branch assembles the length-2 factorizations it touches into
//! one factorization of maximal length, which is prime whenever the
//! length-2 enumeration was complete.

use crate::error::{Error, Result};
use crate::factorize::{all_length2, extract_right_factor, Length2Factorization};
use crate::numtheory::reduce_multiples;
use crate::pattern::{kron_all, BinaryPattern};

/// A divisor chain of left sizes together with the quotients between
/// consecutive elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    chain: Vec<u64>,
    weights: Vec<u64>,
}

impl Branch {
    /// Strictly increasing chain `[l_0, ..., l_q]`, each dividing the next.
    pub fn chain(&self) -> &[u64] {
        &self.chain
    }

    /// Quotients `p_k = l_k / l_{k-1}`; one fewer than the chain elements.
    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn root(&self) -> u64 {
        self.chain[0]
    }

    pub fn last(&self) -> u64 {
        *self.chain.last().expect("chain is nonempty")
    }

    /// Factor sizes `(l_0, p_1, ..., p_q, n / l_q)` of the factorization
    /// this branch encodes, for a pattern of size `n`.
    pub fn sizes(&self, n: u64) -> Vec<u64> {
        let mut sizes = Vec::with_capacity(self.chain.len() + 1);
        sizes.push(self.root());
        sizes.extend_from_slice(&self.weights);
        sizes.push(n / self.last());
        sizes
    }
}

/// A factorization into factors that are all prime (when built from the
/// complete set of length-2 factorizations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeDecomposition {
    sizes: Vec<u64>,
    factors: Vec<BinaryPattern>,
}

impl PrimeDecomposition {
    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn factors(&self) -> &[BinaryPattern] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }
}

/// Directed edge of the decomposition graph, labeled by the branch that
/// contributes it and the quotient between its endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: u64,
    pub to: u64,
    pub weight: u64,
    /// 0-based index into the branch list.
    pub branch: usize,
}

/// Multigraph on the left sizes: one path per branch, with parallel edges
/// kept distinct through their branch index. Isolated vertices are
/// single-element branches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionGraph {
    vertices: Vec<u64>,
    edges: Vec<GraphEdge>,
    branches: Vec<Branch>,
}

impl DecompositionGraph {
    /// Sorted left sizes.
    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    /// Edges sorted by (branch, position along the chain).
    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    /// Vertices that lie on no edge; they stand for branches consisting of
    /// a single length-2 factorization.
    pub fn isolated_vertices(&self) -> Vec<u64> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.edges.iter().all(|e| e.from != v && e.to != v))
            .collect()
    }

    /// Reads the factor sizes of the given branch off the graph: follow the
    /// path weights from the root, then append the co-size of the last
    /// vertex.
    pub fn read_sizes(&self, branch: usize, n: u64) -> Vec<u64> {
        let root = self.branches[branch].root();
        let mut sizes = vec![root];
        let mut last = root;
        for e in self.edges.iter().filter(|e| e.branch == branch) {
            debug_assert_eq!(e.from, last);
            sizes.push(e.weight);
            last = e.to;
        }
        sizes.push(n / last);
        sizes
    }
}

/// Enumerates all branches of the left-size set of `factorizations`.
///
/// Depth-first over the divisor lattice: roots are the minimal elements of
/// `L` under divisibility; from `l` the children are the minimal elements
/// among the proper multiples of `l` in `L`; a chain ends when no multiple
/// remains. Output is ordered lexicographically by chain.
pub fn build_branches(factorizations: &[Length2Factorization], _n: u64) -> Vec<Branch> {
    let lefts: Vec<u64> = factorizations.iter().map(|f| f.pair().0).collect();
    let mut branches = Vec::new();
    for root in reduce_multiples(&lefts) {
        extend_chain(&lefts, vec![root], &mut branches);
    }
    branches
}

fn extend_chain(lefts: &[u64], chain: Vec<u64>, out: &mut Vec<Branch>) {
    let last = *chain.last().expect("chain is nonempty");
    let multiples: Vec<u64> = lefts
        .iter()
        .copied()
        .filter(|&x| x != last && x % last == 0)
        .collect();
    if multiples.is_empty() {
        let weights = chain.windows(2).map(|w| w[1] / w[0]).collect();
        out.push(Branch { chain, weights });
        return;
    }
    for next in reduce_multiples(&multiples) {
        let mut extended = chain.clone();
        extended.push(next);
        extend_chain(lefts, extended, out);
    }
}

fn find_factorization(
    factorizations: &[Length2Factorization],
    left: u64,
) -> Result<&Length2Factorization> {
    factorizations
        .iter()
        .find(|f| f.pair().0 == left)
        .ok_or_else(|| Error::domain(format!("no length-2 factorization with left size {left}")))
}

/// Assembles the factor patterns of the branch's factorization.
///
/// The leftmost factor is the left pattern of the root pair; each inner
/// factor is recovered by dividing consecutive left patterns; the rightmost
/// factor is the right pattern of the last pair. The full product is
/// verified against `a` before returning.
pub fn compose_prime_decomposition(
    a: &BinaryPattern,
    branch: &Branch,
    factorizations: &[Length2Factorization],
) -> Result<PrimeDecomposition> {
    let mut factors = Vec::with_capacity(branch.chain().len() + 1);
    let root = find_factorization(factorizations, branch.root())?;
    factors.push(root.left().clone());
    let mut previous = root.left();
    for (&left, &weight) in branch.chain()[1..].iter().zip(branch.weights()) {
        let current = find_factorization(factorizations, left)?;
        factors.push(extract_right_factor(current.left(), previous, weight)?);
        previous = current.left();
    }
    let last = find_factorization(factorizations, branch.last())?;
    factors.push(last.right().clone());

    if kron_all(&factors) != *a {
        return Err(Error::Consistency(
            "composed factors do not reproduce the pattern".into(),
        ));
    }
    let sizes = factors.iter().map(|f| f.size()).collect();
    Ok(PrimeDecomposition { sizes, factors })
}

/// Every prime decomposition of `a`: enumerate length-2 factorizations,
/// build branches, compose one decomposition per branch. Empty when `a` is
/// prime.
pub fn all_prime_decompositions(a: &BinaryPattern) -> Result<Vec<PrimeDecomposition>> {
    let factorizations = all_length2(a)?;
    decompositions_from(a, &factorizations)
}

/// Decompositions built from an explicit (possibly restricted) set of
/// length-2 factorizations. With a partial set the factors may fail to be
/// prime.
pub fn decompositions_from(
    a: &BinaryPattern,
    factorizations: &[Length2Factorization],
) -> Result<Vec<PrimeDecomposition>> {
    build_branches(factorizations, a.size())
        .iter()
        .map(|b| compose_prime_decomposition(a, b, factorizations))
        .collect()
}

/// Builds the decomposition graph: vertices are the left sizes, each branch
/// contributes a path of weighted edges.
pub fn decomposition_graph(
    branches: &[Branch],
    factorizations: &[Length2Factorization],
    _n: u64,
) -> DecompositionGraph {
    let mut vertices: Vec<u64> = factorizations.iter().map(|f| f.pair().0).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let mut edges = Vec::new();
    for (id, branch) in branches.iter().enumerate() {
        for (w, pair) in branch.weights().iter().zip(branch.chain().windows(2)) {
            edges.push(GraphEdge {
                from: pair[0],
                to: pair[1],
                weight: *w,
                branch: id,
            });
        }
    }
    DecompositionGraph {
        vertices,
        edges,
        branches: branches.to_vec(),
    }
}
