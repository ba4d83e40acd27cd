use std::collections::VecDeque;

use crate::bits::BitSequence;
use crate::error::{Error, Result};

/// An unrooted tree on nodes `0..n`, stored as sorted adjacency arrays.
///
/// This is the input representation; the algorithms build their own
/// `O(n)`-bit structures from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    offsets: Vec<u32>,
    adj: Vec<u32>,
}

impl Tree {
    /// Builds the tree from `n - 1` edges, rejecting anything that is not a
    /// tree on `0..n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one node".into()));
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidTree(format!("{n} nodes exceed the supported size")));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{n} nodes need {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut degree = vec![0u32; n + 1];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at node {u}")));
            }
            degree[u + 1] += 1;
            degree[v + 1] += 1;
        }
        for i in 0..n {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill: Vec<u32> = offsets[..n].to_vec();
        let mut adj = vec![0u32; 2 * (n - 1)];
        for &(u, v) in edges {
            adj[fill[u] as usize] = v as u32;
            fill[u] += 1;
            adj[fill[v] as usize] = u as u32;
            fill[v] += 1;
        }
        for u in 0..n {
            adj[offsets[u] as usize..offsets[u + 1] as usize].sort_unstable();
        }
        let tree = Self { offsets, adj };
        tree.check_connected()?;
        Ok(tree)
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    reached += 1;
                    queue.push_back(v as usize);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidTree(format!(
                "graph is not connected: {reached} of {n} nodes reachable from node 0"
            )));
        }
        Ok(())
    }

    /// Parses a balanced string over `(` and `)`. Nodes are numbered in
    /// preorder, so the root is node 0.
    pub fn from_parens(s: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut next = 0usize;
        let mut closed_root = false;
        for (i, c) in s.chars().enumerate() {
            match c {
                '(' => {
                    if closed_root {
                        return Err(Error::Format(format!(
                            "character {i}: a second root follows the first"
                        )));
                    }
                    if let Some(&p) = stack.last() {
                        edges.push((p, next));
                    }
                    stack.push(next);
                    next += 1;
                }
                ')' => {
                    if stack.pop().is_none() {
                        return Err(Error::Format(format!("character {i}: unmatched ')'")));
                    }
                    closed_root = stack.is_empty();
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Format(format!(
                        "character {i}: unexpected {c:?} in parenthesis string"
                    )))
                }
            }
        }
        if !stack.is_empty() || next == 0 {
            return Err(Error::Format("unbalanced parenthesis string".into()));
        }
        Self::from_edges(next, &edges)
    }

    /// Number of nodes.
    #[inline]
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        (self.offsets[u + 1] - self.offsets[u]) as usize
    }

    /// Neighbors of `u` in increasing order.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[u32] {
        &self.adj[self.offsets[u] as usize..self.offsets[u + 1] as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    /// Preorder DFS from `root` that visits children in increasing id order,
    /// calling `enter` and `exit` for every node. Extra space is one bit per
    /// adjacency slot: the slot pointing back to each node's parent.
    pub fn dfs(&self, root: usize, enter: impl FnMut(usize), exit: impl FnMut(usize)) {
        self.dfs_excluding(root, None, enter, exit)
    }

    /// Like [`Tree::dfs`], but if `skip` is a neighbor of `root`, the part
    /// of the tree behind it is not visited.
    pub fn dfs_excluding(
        &self,
        root: usize,
        skip: Option<usize>,
        mut enter: impl FnMut(usize),
        mut exit: impl FnMut(usize),
    ) {
        let mut parent_slot = BitSequence::zeros(self.adj.len());
        let range = |u: usize| self.offsets[u] as usize..self.offsets[u + 1] as usize;
        let slot_of = |u: usize, v: usize| {
            self.offsets[u] as usize
                + self
                    .neighbors(u)
                    .binary_search(&(v as u32))
                    .expect("edge is symmetric")
        };

        if let Some(v) = skip {
            if let Ok(i) = self.neighbors(root).binary_search(&(v as u32)) {
                // Looks like the root's parent, so the walk passes it by.
                parent_slot.set(self.offsets[root] as usize + i, true);
            }
        }
        let mut cur = root;
        let mut slot = range(root).start;
        enter(root);
        loop {
            let end = range(cur).end;
            if slot < end && parent_slot.get(slot) {
                slot += 1;
            }
            if slot < end {
                let child = self.adj[slot] as usize;
                parent_slot.set(slot_of(child, cur), true);
                enter(child);
                cur = child;
                slot = range(child).start;
                continue;
            }
            exit(cur);
            if cur == root {
                break;
            }
            let r = range(cur);
            let ps = (r.start..r.end)
                .find(|&i| parent_slot.get(i))
                .expect("every non-root node has a parent slot");
            let p = self.adj[ps] as usize;
            slot = slot_of(p, cur) + 1;
            cur = p;
        }
    }

    /// Node ids in preorder from `root`.
    pub fn preorder(&self, root: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        self.dfs(root, |u| out.push(u), |_| {});
        out
    }

    /// Parenthesis string of the tree rooted at `root`.
    pub fn to_parens(&self, root: usize) -> String {
        let mut s = String::with_capacity(2 * self.len());
        let cell = std::cell::RefCell::new(&mut s);
        self.dfs(root, |_| cell.borrow_mut().push('('), |_| cell.borrow_mut().push(')'));
        s
    }

    /// Same tree with node `u` renamed to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(self.len(), &edges)
    }
}

/// A tree as read from text, with optional root and colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeInput {
    pub tree: Tree,
    pub root: Option<usize>,
    /// `colors[u]` is the color of node `u`.
    pub colors: Option<Vec<u64>>,
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Format(format!("line {line}: expected a nonnegative integer, got {tok:?}")))
}

fn parse_colors(toks: &[&str], n: usize, line: usize) -> Result<Vec<u64>> {
    if toks.len() != n {
        return Err(Error::Format(format!(
            "line {line}: expected {n} colors, got {}",
            toks.len()
        )));
    }
    toks.iter()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Format(format!("line {line}: bad color {t:?}")))
        })
        .collect()
}

impl TreeInput {
    /// Parses either format:
    ///
    /// * edge list: a line with `n`, then `n - 1` lines `u v`, then
    ///   optionally `root r` and a line of `n` colors;
    /// * parenthesis string: one line over `()`, optionally followed by a
    ///   line of `n` colors in preorder. The root is node 0.
    ///
    /// Blank lines and text after `#` are ignored. A colors line may start
    /// with the word `colors`.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>()))
            .filter(|(_, t)| !t.is_empty())
            .collect();
        let Some((first_line, first)) = lines.first() else {
            return Err(Error::Format("empty tree description".into()));
        };

        if first[0].starts_with('(') {
            let tree = Tree::from_parens(&first.concat())?;
            let mut colors = None;
            for (line, toks) in &lines[1..] {
                if colors.is_some() {
                    return Err(Error::Format(format!("line {line}: unexpected content")));
                }
                let toks = strip_keyword(toks, "colors");
                colors = Some(parse_colors(toks, tree.len(), *line)?);
            }
            return Ok(Self {
                tree,
                root: Some(0),
                colors,
            });
        }

        if first.len() != 1 {
            return Err(Error::Format(format!(
                "line {first_line}: expected the node count alone"
            )));
        }
        let n = parse_usize(first[0], *first_line)?;
        if n == 0 {
            return Err(Error::Format(format!("line {first_line}: a tree needs at least one node")));
        }
        let mut rest = lines[1..].iter();
        let mut edges = Vec::with_capacity(n - 1);
        for _ in 0..n - 1 {
            let Some((line, toks)) = rest.next() else {
                return Err(Error::Format(format!(
                    "expected {} edge lines, found {}",
                    n - 1,
                    edges.len()
                )));
            };
            if toks.len() != 2 {
                return Err(Error::Format(format!("line {line}: expected an edge \"u v\"")));
            }
            edges.push((parse_usize(toks[0], *line)?, parse_usize(toks[1], *line)?));
        }
        let tree = Tree::from_edges(n, &edges)?;
        let mut root = None;
        let mut colors = None;
        for (line, toks) in rest {
            if toks[0] == "root" && root.is_none() && colors.is_none() {
                if toks.len() != 2 {
                    return Err(Error::Format(format!("line {line}: expected \"root r\"")));
                }
                let r = parse_usize(toks[1], *line)?;
                if r >= n {
                    return Err(Error::InvalidTree(format!("root {r} is not a node")));
                }
                root = Some(r);
            } else if colors.is_none() {
                colors = Some(parse_colors(strip_keyword(toks, "colors"), n, *line)?);
            } else {
                return Err(Error::Format(format!("line {line}: unexpected content")));
            }
        }
        Ok(Self { tree, root, colors })
    }

    /// Edge-list text accepted by [`TreeInput::parse`].
    pub fn to_edge_text(&self) -> String {
        let mut s = format!("{}\n", self.tree.len());
        for (u, v) in self.tree.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        if let Some(r) = self.root {
            s.push_str(&format!("root {r}\n"));
        }
        if let Some(c) = &self.colors {
            let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            s.push_str(&c.join(" "));
            s.push('\n');
        }
        s
    }
}

fn strip_keyword<'a, 'b>(toks: &'a [&'b str], word: &str) -> &'a [&'b str] {
    if toks.first() == Some(&word) {
        &toks[1..]
    } else {
        toks
    }
}
