use super::{ChoiceDictionary, Tree};
use crate::bits::{BitSequence, RankedBits};
use crate::codec::{encoded_length, write_codeword, SdnSequence};
use crate::error::Result;

/// Node degrees as self-delimiting numbers, each in a fixed slot sized for
/// the original degree, so decrementing rewrites the slot in place.
struct DegreeArray {
    seq: SdnSequence,
    starts: RankedBits,
}

impl DegreeArray {
    fn new(tree: &Tree) -> Result<Self> {
        let n = tree.len();
        let total: usize = (0..n).map(|u| encoded_length(tree.degree(u) as u64)).sum();
        let mut seq = SdnSequence::try_with_capacity(total)?;
        let mut starts = BitSequence::try_zeros(total)?;
        for u in 0..n {
            let at = seq.push(tree.degree(u) as u64)?;
            starts.set(at, true);
        }
        Ok(Self {
            seq,
            starts: RankedBits::new(starts),
        })
    }

    #[inline]
    fn get(&self, u: usize) -> u64 {
        let p = self.starts.select(u).expect("node id in range");
        self.seq.decode_at(p).expect("valid degree codeword").0
    }

    #[inline]
    fn set(&mut self, u: usize, d: u64) {
        let p = self.starts.select(u).expect("node id in range");
        write_codeword(self.seq.bits_mut(), p, d);
    }
}

/// The one or two nodes of minimum eccentricity, in increasing order.
///
/// Leaves are peeled round by round: the leaves of the current round are
/// removed, their remaining neighbor loses one degree, and neighbors
/// dropping to degree one form the next round. Peeling stops once at most
/// two nodes remain.
pub fn tree_center(tree: &Tree) -> Result<Vec<usize>> {
    let n = tree.len();
    if n <= 2 {
        return Ok((0..n).collect());
    }
    let mut degree = DegreeArray::new(tree)?;
    let mut removed = BitSequence::try_zeros(n)?;
    let mut current = ChoiceDictionary::new(n);
    let mut next = ChoiceDictionary::new(n);
    for u in 0..n {
        if tree.degree(u) == 1 {
            current.add(u);
        }
    }
    let mut k = 0;
    while n - k > 2 {
        while let Some(u) = current.choice() {
            current.remove(u);
            degree.set(u, 0);
            removed.set(u, true);
            k += 1;
            let w = tree
                .neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .find(|&v| !removed.get(v))
                .expect("a leaf of a tree with three or more nodes has a neighbor");
            let d = degree.get(w) - 1;
            degree.set(w, d);
            if d == 1 {
                next.add(w);
            }
        }
        std::mem::swap(&mut current, &mut next);
    }
    Ok((0..n).filter(|&u| !removed.get(u)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Tree::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn paths() {
        assert_eq!(tree_center(&path(5)).unwrap(), vec![2]);
        assert_eq!(tree_center(&path(4)).unwrap(), vec![1, 2]);
        assert_eq!(tree_center(&path(1)).unwrap(), vec![0]);
        assert_eq!(tree_center(&path(2)).unwrap(), vec![0, 1]);
    }

    #[test]
    fn star() {
        let t = Tree::from_edges(5, &[(3, 0), (3, 1), (3, 2), (3, 4)]).unwrap();
        assert_eq!(tree_center(&t).unwrap(), vec![3]);
    }
}
