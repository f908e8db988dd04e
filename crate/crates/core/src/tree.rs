//! Increasing trees stored as parent arrays.
//!
//! Vertices are indexed `0..n` in arrival order; vertex `v` carries the
//! arrival label `v + 1`, so the root (label 1) is index 0. Every non-root
//! vertex has a parent with a strictly smaller index, which lets most passes
//! run as a single sweep over the array in one direction.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

/// Parent entry of the root.
pub const NO_PARENT: u32 = u32::MAX;

/// Largest supported vertex count; indices are stored as `u32`.
pub const MAX_VERTICES: usize = (u32::MAX - 1) as usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursiveTree {
    parent: Vec<u32>,
}

impl RecursiveTree {
    /// The one-vertex tree.
    pub fn singleton() -> Self {
        Self {
            parent: vec![NO_PARENT],
        }
    }

    /// Builds a tree from 0-based parent indices; `parents[0]` must be
    /// [`NO_PARENT`] and `parents[v] < v` for every other vertex.
    pub fn from_parents(parents: Vec<u32>) -> Result<Self> {
        if parents.is_empty() {
            return Err(Error::invalid("a tree needs at least one vertex"));
        }
        if parents.len() > MAX_VERTICES {
            return Err(Error::invalid("too many vertices"));
        }
        if parents[0] != NO_PARENT {
            return Err(Error::invalid("the root must not have a parent"));
        }
        for (v, &p) in parents.iter().enumerate().skip(1) {
            if p as usize >= v {
                return Err(Error::invalid(format!(
                    "vertex {} has parent {}, which is not an earlier arrival",
                    v + 1,
                    p as u64 + 1
                )));
            }
        }
        Ok(Self { parent: parents })
    }

    /// Builds a tree from 1-based labels: `labels[i]` is the parent label of
    /// vertex `i + 2`.
    pub fn from_parent_labels(labels: &[u32]) -> Result<Self> {
        let mut parents = Vec::with_capacity(labels.len() + 1);
        parents.push(NO_PARENT);
        for &l in labels {
            if l == 0 {
                return Err(Error::invalid("labels start at 1"));
            }
            parents.push(l - 1);
        }
        Self::from_parents(parents)
    }

    /// Number of vertices.
    #[inline]
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    /// Always false: a tree has at least its root.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn parent(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p as usize),
        }
    }

    /// Raw parent array, `NO_PARENT` at index 0.
    #[inline]
    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    /// Attaches a new vertex to `parent` and returns its index.
    pub fn push(&mut self, parent: usize) -> usize {
        assert!(parent < self.parent.len(), "parent must already exist");
        assert!(self.parent.len() < MAX_VERTICES, "tree is full");
        self.parent.push(parent as u32);
        self.parent.len() - 1
    }

    /// Adds one vertex attached to a uniformly chosen existing vertex.
    pub fn grow_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> usize {
        let n = self.parent.len();
        let p = rng.random_range(0..n);
        self.push(p)
    }

    pub fn children(&self) -> Children {
        Children::new(self)
    }

    /// Distance from the root for every vertex.
    pub fn depths(&self) -> Vec<u32> {
        let mut depth = vec![0u32; self.len()];
        for v in 1..self.len() {
            depth[v] = depth[self.parent[v] as usize] + 1;
        }
        depth
    }

    /// Number of neighbours of every vertex.
    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = vec![0u32; self.len()];
        for v in 1..self.len() {
            deg[v] += 1;
            deg[self.parent[v] as usize] += 1;
        }
        deg
    }

    /// Edge-list text: `n`, then `v parent` for `v = 2..n` in label form.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.len() * 12);
        writeln!(out, "{}", self.len()).unwrap();
        for v in 1..self.len() {
            writeln!(out, "{} {}", v + 1, self.parent[v] as u64 + 1).unwrap();
        }
        out
    }

    /// Parses the edge-list format written by [`RecursiveTree::to_edge_list`].
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n').enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing vertex count"))?;
        let n: usize = parse_field(header.trim(), 1, "vertex count")?;
        if n == 0 {
            return Err(Error::parse(1, "vertex count must be at least 1"));
        }
        if n > MAX_VERTICES {
            return Err(Error::parse(1, "vertex count too large"));
        }
        let mut parents = Vec::with_capacity(n);
        parents.push(NO_PARENT);
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.is_empty() {
                return Err(Error::parse(lineno, "empty line"));
            }
            let mut fields = line.split(' ');
            let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::parse(lineno, "expected `<vertex> <parent>`"));
            };
            let v: usize = parse_field(a, lineno, "vertex")?;
            let p: usize = parse_field(b, lineno, "parent")?;
            let expected = parents.len() + 1;
            if v < expected {
                return Err(Error::parse(lineno, format!("duplicate vertex {v}")));
            }
            if v != expected {
                return Err(Error::parse(lineno, format!("expected vertex {expected}, found {v}")));
            }
            if v > n {
                return Err(Error::parse(lineno, format!("vertex {v} exceeds n = {n}")));
            }
            if p == 0 || p >= v {
                return Err(Error::parse(
                    lineno,
                    format!("parent {p} of vertex {v} is not an earlier arrival"),
                ));
            }
            parents.push((p - 1) as u32);
        }
        if parents.len() != n {
            return Err(Error::parse(
                text.lines().count().max(1),
                format!("expected {} edges, found {}", n - 1, parents.len() - 1),
            ));
        }
        Ok(Self { parent: parents })
    }
}

fn parse_field<T: FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(line, format!("malformed {what} `{s}`")));
    }
    s.parse()
        .map_err(|_| Error::parse(line, format!("malformed {what} `{s}`")))
}

/// Grows a uniform random recursive tree on `n` vertices.
pub fn grow_urrt<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RecursiveTree> {
    let mut parents = Vec::new();
    fill_urrt(&mut parents, n, rng)?;
    Ok(RecursiveTree { parent: parents })
}

/// Same draws as [`grow_urrt`], written into a reusable buffer.
pub fn fill_urrt<R: Rng + ?Sized>(parents: &mut Vec<u32>, n: usize, rng: &mut R) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if n > MAX_VERTICES {
        return Err(Error::invalid("n too large"));
    }
    parents.clear();
    parents.reserve(n);
    parents.push(NO_PARENT);
    for v in 1..n {
        parents.push(rng.random_range(0..v) as u32);
    }
    Ok(())
}

/// `size[v]` is the number of vertices in the subtree of `v` when the tree is
/// rooted at vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeSizes {
    size: Vec<u32>,
}

impl SubtreeSizes {
    pub fn new(tree: &RecursiveTree) -> Self {
        let mut size = Vec::new();
        subtree_sizes_into(tree.parents(), &mut size);
        Self { size }
    }

    #[inline]
    pub fn get(&self, v: usize) -> u32 {
        self.size[v]
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.size
    }

    pub fn len(&self) -> usize {
        self.size.len()
    }

    pub fn is_empty(&self) -> bool {
        self.size.is_empty()
    }
}

pub fn subtree_sizes(tree: &RecursiveTree) -> SubtreeSizes {
    SubtreeSizes::new(tree)
}

/// One reverse sweep: children always carry larger indices than parents.
pub(crate) fn subtree_sizes_into(parent: &[u32], size: &mut Vec<u32>) {
    let n = parent.len();
    size.clear();
    size.resize(n, 1);
    for v in (1..n).rev() {
        let s = size[v];
        size[parent[v] as usize] += s;
    }
}

/// Children lists in compressed form, each list in ascending index order.
#[derive(Clone, Debug)]
pub struct Children {
    offsets: Vec<u32>,
    list: Vec<u32>,
}

impl Children {
    pub fn new(tree: &RecursiveTree) -> Self {
        let n = tree.len();
        let mut offsets = vec![0u32; n + 1];
        for &p in &tree.parents()[1..] {
            offsets[p as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut list = vec![0u32; n.saturating_sub(1)];
        for v in 1..n {
            let p = tree.parents()[v] as usize;
            list[cursor[p] as usize] = v as u32;
            cursor[p] += 1;
        }
        Self { offsets, list }
    }

    #[inline]
    pub fn of(&self, v: usize) -> &[u32] {
        &self.list[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    /// Recovers the parent array; inverse of [`Children::new`].
    pub fn to_parents(&self) -> Vec<u32> {
        let n = self.offsets.len() - 1;
        let mut parent = vec![NO_PARENT; n];
        for p in 0..n {
            for &c in self.of(p) {
                parent[c as usize] = p as u32;
            }
        }
        parent
    }
}

/// Iterates every recursive tree on `n` vertices, `(n-1)!` in total, in
/// lexicographic order of the parent array.
pub fn all_recursive_trees(n: usize) -> AllTrees {
    assert!(n >= 1, "n must be at least 1");
    let mut parents = vec![0u32; n];
    parents[0] = NO_PARENT;
    AllTrees { parents, done: false }
}

pub struct AllTrees {
    parents: Vec<u32>,
    done: bool,
}

impl Iterator for AllTrees {
    type Item = RecursiveTree;

    fn next(&mut self) -> Option<RecursiveTree> {
        if self.done {
            return None;
        }
        let out = RecursiveTree {
            parent: self.parents.clone(),
        };
        // Mixed-radix increment: digit v ranges over 0..v.
        let n = self.parents.len();
        let mut v = n;
        loop {
            if v <= 1 {
                self.done = true;
                break;
            }
            v -= 1;
            if (self.parents[v] as usize) + 1 < v {
                self.parents[v] += 1;
                break;
            }
            self.parents[v] = 0;
        }
        Some(out)
    }
}

/// Position of a tree in the enumeration order of [`all_recursive_trees`].
pub fn tree_index(tree: &RecursiveTree) -> u64 {
    let mut idx = 0u64;
    for v in 1..tree.len() {
        idx = idx * v as u64 + tree.parents()[v] as u64;
    }
    idx
}
