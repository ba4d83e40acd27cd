use super::{BalancedParens, ChoiceDictionary};
use crate::bits::BitSequence;
use crate::error::{Error, Result};

/// Iterates over the nodes of a tree level by level in order of height.
///
/// The first call returns all leaves. Every later call finishes the level
/// returned before it: each of its nodes is marked processed in `D`, and a
/// token runs from left to right over each parent's processed children.
/// `P[v] = 1` while `v` holds the token, i.e. `v` and all its left siblings
/// are processed and its right sibling is not yet. A leftmost child holds
/// the token implicitly. When the token runs past the last child, the
/// parent has all children processed and joins the next level.
///
/// Nodes are identified by the positions of their open parentheses.
#[derive(Clone, Debug)]
pub struct HeightIterator<'a> {
    bp: &'a BalancedParens,
    processed: BitSequence,
    token: BitSequence,
    current: ChoiceDictionary,
    next: ChoiceDictionary,
    emitted: usize,
    height: usize,
    started: bool,
    work: usize,
}

impl<'a> HeightIterator<'a> {
    pub fn new(bp: &'a BalancedParens) -> Self {
        let len = bp.len();
        Self {
            bp,
            processed: BitSequence::zeros(len),
            token: BitSequence::zeros(len),
            current: ChoiceDictionary::new(len),
            next: ChoiceDictionary::new(len),
            emitted: 0,
            height: 0,
            started: false,
            work: 0,
        }
    }

    pub fn has_next(&self) -> bool {
        !self.started || self.emitted < self.bp.nodes()
    }

    /// Nodes of the next height, as open positions.
    pub fn next_level(&mut self) -> Result<&ChoiceDictionary> {
        if !self.has_next() {
            return Err(Error::Exhausted);
        }
        if !self.started {
            self.started = true;
            self.collect_leaves();
        } else {
            self.advance();
            self.height += 1;
        }
        self.emitted += self.current.len();
        Ok(&self.current)
    }

    /// The level returned last.
    pub fn current(&self) -> &ChoiceDictionary {
        &self.current
    }

    /// Height of the level returned last.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Nodes emitted so far.
    pub fn emitted(&self) -> usize {
        self.emitted
    }

    /// Elementary steps taken so far: navigation calls, bit tests, and
    /// dictionary updates.
    pub fn work(&self) -> usize {
        self.work
    }

    /// `D`: processed marks by open position.
    pub fn processed(&self) -> &BitSequence {
        &self.processed
    }

    /// `P`: token marks by open position.
    pub fn tokens(&self) -> &BitSequence {
        &self.token
    }

    fn collect_leaves(&mut self) {
        // A leaf is an open parenthesis directly followed by a close.
        let bits = self.bp.bits();
        let words = bits.words();
        for (wi, &w) in words.iter().enumerate() {
            let next = words.get(wi + 1).map_or(0, |&x| x >> 63);
            let mut leaves = w & !((w << 1) | next);
            self.work += 1;
            while leaves != 0 {
                let lz = leaves.leading_zeros() as usize;
                self.current.add(wi * 64 + lz);
                leaves &= !(1u64 << (63 - lz));
                self.work += 1;
            }
        }
    }

    fn advance(&mut self) {
        let bp = self.bp;
        let mut cursor = self.current.next_member(0);
        while let Some(u) = cursor {
            cursor = self.current.next_member(u + 1);
            self.processed.set(u, true);
            self.work += 1;
            let Some(parent) = bp.enclose(u) else {
                continue;
            };
            // u may take the token if it is leftmost or its left sibling
            // holds it.
            match bp.left_sibling(u) {
                Some(ls) if self.token.get(ls) => self.token.set(ls, false),
                Some(_) => continue,
                None => {}
            }
            self.work += 2;
            let mut cur = u;
            loop {
                self.work += 1;
                match bp.right_sibling(cur) {
                    Some(rs) if self.processed.get(rs) => cur = rs,
                    Some(_) => {
                        self.token.set(cur, true);
                        break;
                    }
                    None => {
                        self.next.add(parent);
                        break;
                    }
                }
            }
        }
        self.work += self.current.len();
        self.current.clear();
        std::mem::swap(&mut self.current, &mut self.next);
    }
}
