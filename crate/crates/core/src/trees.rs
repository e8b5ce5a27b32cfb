//! Rooted trees: exact counts, counts by height, and the branch-cutting
//! codec that shrinks a tall tree into a short one plus a small log.
//!
//! Height is the number of edges on the longest root-to-leaf path, so the
//! star has height 1.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::hp::HpReal;
use crate::scheme::Node;

/// Largest vertex count accepted by [`enumerate_rooted_trees`].
pub const MAX_ENUMERATION_VERTICES: usize = 13;

/// Otter's constant, the growth rate of rooted tree counts.
pub const OTTER_CONSTANT: f64 = 2.95576;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("{what} = {value} is outside the supported range {min}..={max}")]
    OutOfRange { what: &'static str, value: usize, min: usize, max: usize },
    #[error("cut height must be at least 2, got {0}")]
    HeightTooSmall(usize),
    #[error("malformed labelled tree")]
    Malformed,
}

fn out_of_range(what: &'static str, value: usize, min: usize, max: usize) -> TreeError {
    TreeError::OutOfRange { what, value, min, max }
}

/// `c_j = sum_{d | j} d * a_d` for `j = 1..=n`, with `a[0]` unused.
fn divisor_weights(a: &[BigUint], n: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::zero(); n + 1];
    for d in 1..=n.min(a.len() - 1) {
        if a[d].is_zero() {
            continue;
        }
        let w = &a[d] * d;
        let mut j = d;
        while j <= n {
            c[j] += &w;
            j += d;
        }
    }
    c
}

/// Coefficients `e_0..=e_n` of `exp(sum_k A(x^k)/k)` for a series `A`
/// with integer coefficients `a[1..]`, using `n e_n = sum_j c_j e_{n-j}`.
fn euler_exp(a: &[BigUint], n: usize) -> Vec<BigUint> {
    let c = divisor_weights(a, n);
    let mut e = Vec::with_capacity(n + 1);
    e.push(BigUint::one());
    for m in 1..=n {
        let mut acc = BigUint::zero();
        for j in 1..=m {
            if !c[j].is_zero() {
                acc += &c[j] * &e[m - j];
            }
        }
        let (q, r) = acc.div_rem(&BigUint::from(m));
        assert!(r.is_zero(), "non-integral coefficient in plethystic exponential");
        e.push(q);
    }
    e
}

/// Exact rooted tree counts, optionally sliced by height.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeCountTable {
    pub n_max: usize,
    /// `counts[n] = T_n`; index 0 holds 0.
    counts: Vec<BigUint>,
    /// `by_height[h][n] = T_n^{[h]}` for `h = 0..=h_max`.
    by_height: Vec<Vec<BigUint>>,
}

impl TreeCountTable {
    /// Counts `T_1..=T_{n_max}` by the classical recurrence
    /// `n T_{n+1} = sum_{k=1}^{n} c_k T_{n-k+1}`.
    pub fn new(n_max: usize) -> Self {
        let mut counts = vec![BigUint::zero(); n_max + 1];
        if n_max >= 1 {
            counts[1] = BigUint::one();
        }
        let mut c = vec![BigUint::zero(); n_max + 1];
        for m in 1..n_max {
            // c_m only needs T_1..=T_m, all known now
            for d in 1..=m {
                if m % d == 0 {
                    c[m] += &counts[d] * d;
                }
            }
            let mut acc = BigUint::zero();
            for k in 1..=m {
                acc += &c[k] * &counts[m - k + 1];
            }
            let (q, r) = acc.div_rem(&BigUint::from(m));
            debug_assert!(r.is_zero());
            counts[m + 1] = q;
        }
        TreeCountTable { n_max, counts, by_height: Vec::new() }
    }

    /// Adds the height slices `T^{[0]}..=T^{[h_max]}` by iterating
    /// `T^{[h+1]}(x) = x exp(sum_k T^{[h]}(x^k)/k)`.
    pub fn with_heights(mut self, h_max: usize) -> Self {
        self.by_height = height_slices(self.n_max, h_max);
        self
    }

    pub fn count(&self, n: usize) -> Option<&BigUint> {
        (n >= 1).then(|| self.counts.get(n)).flatten()
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts[1.min(self.counts.len())..]
    }

    pub fn h_max(&self) -> Option<usize> {
        self.by_height.len().checked_sub(1)
    }

    /// `T_n^{[h]}`; heights above the computed range saturate at `T_n`
    /// once `h >= n - 1`.
    pub fn count_bounded(&self, n: usize, h: usize) -> Option<BigUint> {
        if n == 0 || n > self.n_max {
            return None;
        }
        if h + 1 >= n {
            return Some(self.counts[n].clone());
        }
        self.by_height.get(h).map(|row| row[n].clone())
    }
}

fn height_slices(n_max: usize, h_max: usize) -> Vec<Vec<BigUint>> {
    let mut rows = Vec::with_capacity(h_max + 1);
    let mut cur = vec![BigUint::zero(); n_max + 1];
    if n_max >= 1 {
        cur[1] = BigUint::one();
    }
    rows.push(cur.clone());
    for _ in 0..h_max {
        let e = euler_exp(&cur, n_max.saturating_sub(1));
        let mut next = vec![BigUint::zero(); n_max + 1];
        next[1..].clone_from_slice(&e[..n_max]);
        rows.push(next.clone());
        cur = next;
    }
    rows
}

pub fn count_rooted_trees(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    TreeCountTable::new(n).counts[n].clone()
}

/// `T_n^{[h]}`: rooted trees on `n` vertices of height at most `h`.
pub fn count_bounded_depth(n: usize, h: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let h_eff = h.min(n - 1);
    height_slices(n, h_eff)[h_eff][n].clone()
}

/// `T_{n+1} / T_n` from exact counts.
pub fn estimate_otter_constant(n: usize) -> Result<f64, TreeError> {
    if n < 2 {
        return Err(out_of_range("n", n, 2, usize::MAX));
    }
    let table = TreeCountTable::new(n + 1);
    Ok(ratio_f64(&table.counts[n + 1], &table.counts[n]))
}

pub(crate) fn ratio_f64(num: &BigUint, den: &BigUint) -> f64 {
    HpReal::from_ratio(&BigInt::from(num.clone()), &BigInt::from(den.clone())).to_f64()
}

fn add_leaf_everywhere(node: &Node, out: &mut BTreeSet<Node>) {
    fn rebuild(node: &Node, target: usize, counter: &mut usize) -> Node {
        let here = *counter;
        *counter += 1;
        let mut children: Vec<Node> =
            node.children.iter().map(|c| rebuild(c, target, counter)).collect();
        if here == target {
            children.push(Node::leaf());
        }
        Node::with_children(children)
    }
    for target in 0..node.vertex_count() {
        let mut counter = 0;
        out.insert(rebuild(node, target, &mut counter).canonical());
    }
}

/// One canonical representative per isomorphism class of rooted trees with
/// `n` vertices, in ascending order. Built by adding a leaf at every vertex
/// of every smaller tree.
pub fn enumerate_rooted_trees(n: usize) -> Result<Vec<Node>, TreeError> {
    if !(1..=MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(out_of_range("n", n, 1, MAX_ENUMERATION_VERTICES));
    }
    let mut level: BTreeSet<Node> = BTreeSet::new();
    level.insert(Node::leaf());
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for t in &level {
            add_leaf_everywhere(t, &mut next);
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// A rooted tree on labelled vertices. Every label except the root's is a
/// key of `parent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTree {
    pub root: usize,
    pub parent: BTreeMap<usize, usize>,
}

impl LabeledTree {
    /// Labels the vertices of the canonical form of `node` in DFS preorder,
    /// root = 0.
    pub fn from_node(node: &Node) -> Self {
        fn walk(node: &Node, me: usize, next: &mut usize, parent: &mut BTreeMap<usize, usize>) {
            for c in &node.children {
                let id = *next;
                *next += 1;
                parent.insert(id, me);
                walk(c, id, next, parent);
            }
        }
        let canon = node.canonical();
        let mut parent = BTreeMap::new();
        let mut next = 1;
        walk(&canon, 0, &mut next, &mut parent);
        LabeledTree { root: 0, parent }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len() + 1
    }

    fn children(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut ch: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (&v, &p) in &self.parent {
            ch.entry(p).or_default().push(v);
        }
        ch
    }

    /// Depth of every vertex, or `None` if the parent map is not a tree
    /// hanging from `root`.
    pub fn depths(&self) -> Option<BTreeMap<usize, usize>> {
        let ch = self.children();
        let mut depth = BTreeMap::new();
        depth.insert(self.root, 0);
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            let dv = depth[&v];
            for &c in ch.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if depth.insert(c, dv + 1).is_some() {
                    return None;
                }
                stack.push(c);
            }
        }
        (depth.len() == self.vertex_count()).then_some(depth)
    }

    pub fn height(&self) -> usize {
        self.depths()
            .map(|d| d.values().copied().max().unwrap_or(0))
            .unwrap_or(0)
    }

    /// Unlabelled shape; children ordered by label.
    pub fn to_node(&self) -> Node {
        fn build(v: usize, ch: &BTreeMap<usize, Vec<usize>>) -> Node {
            Node::with_children(
                ch.get(&v)
                    .map(|cs| cs.iter().map(|&c| build(c, ch)).collect())
                    .unwrap_or_default(),
            )
        }
        build(self.root, &self.children())
    }

    fn subtree(&self, top: usize) -> LabeledTree {
        let ch = self.children();
        let mut parent = BTreeMap::new();
        let mut stack = vec![top];
        while let Some(v) = stack.pop() {
            for &c in ch.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                parent.insert(c, v);
                stack.push(c);
            }
        }
        LabeledTree { root: top, parent }
    }
}

/// Output of [`branch_cut_encode`]: the trimmed tree, the branches cut off
/// (in cutting order) and, for each branch, the vertex it hung from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchCutRecord {
    pub h: usize,
    pub residual: LabeledTree,
    pub branches: Vec<LabeledTree>,
    pub log: Vec<usize>,
}

impl BranchCutRecord {
    pub fn cut_count(&self) -> usize {
        self.branches.len()
    }

    /// The residual tree followed by the branches.
    pub fn forest(&self) -> Vec<&LabeledTree> {
        core::iter::once(&self.residual).chain(self.branches.iter()).collect()
    }

    /// One tree on `n + 1` vertices and height at most `h`: a fresh root
    /// carrying the residual root's subtrees, every cut branch and a marker
    /// leaf.
    pub fn merged(&self) -> Node {
        let mut top = self.residual.to_node().children;
        top.extend(self.branches.iter().map(LabeledTree::to_node));
        top.push(Node::leaf());
        Node::with_children(top).canonical()
    }
}

/// Repeatedly cuts the branch of height `h - 1` under the highest vertex
/// (smallest label on ties) until the tree has height at most `h`.
pub fn branch_cut_encode(tree: &LabeledTree, h: usize) -> Result<BranchCutRecord, TreeError> {
    if h < 2 {
        return Err(TreeError::HeightTooSmall(h));
    }
    let mut residual = tree.clone();
    let mut branches = Vec::new();
    let mut log = Vec::new();
    loop {
        let depths = residual.depths().ok_or(TreeError::Malformed)?;
        let height = depths.values().copied().max().unwrap_or(0);
        if height <= h {
            break;
        }
        let v = depths
            .iter()
            .find(|&(_, &d)| d == height)
            .map(|(&v, _)| v)
            .expect("a vertex attains the height");
        let mut u = v;
        for _ in 0..h - 1 {
            u = residual.parent[&u];
        }
        let attach = residual.parent[&u];
        let branch = residual.subtree(u);
        residual.parent.remove(&u);
        for k in branch.parent.keys() {
            residual.parent.remove(k);
        }
        branches.push(branch);
        log.push(attach);
    }
    Ok(BranchCutRecord { h, residual, branches, log })
}

/// Inverse of [`branch_cut_encode`].
pub fn branch_cut_decode(record: &BranchCutRecord) -> LabeledTree {
    let mut tree = record.residual.clone();
    for (branch, &attach) in record.branches.iter().zip(&record.log).rev() {
        tree.parent.insert(branch.root, attach);
        tree.parent.extend(branch.parent.iter().map(|(&k, &v)| (k, v)));
    }
    tree
}

/// `ceil(n^(n/h))` computed exactly.
pub fn ceil_power_root(n: usize, h: usize) -> BigUint {
    let p: BigUint = Pow::pow(BigUint::from(n), n as u32);
    let r = p.nth_root(h as u32);
    if Pow::pow(&r, h as u32) < p {
        r + 1u32
    } else {
        r
    }
}

/// Checks `T_n <= T_{n+1}^{[h]} * ceil(n^(n/h))` with exact integers.
pub fn lemma9_bound_check(n: usize, h: usize) -> Result<bool, TreeError> {
    if n < 2 {
        return Err(out_of_range("n", n, 2, usize::MAX));
    }
    if !(2..=n).contains(&h) {
        return Err(out_of_range("h", h, 2, n));
    }
    let table = TreeCountTable::new(n + 1).with_heights(h);
    let lhs = &table.counts[n];
    let rhs = table.count_bounded(n + 1, h).expect("in range") * ceil_power_root(n, h);
    Ok(*lhs <= rhs)
}
