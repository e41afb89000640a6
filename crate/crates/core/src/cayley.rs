//! Cayley structures: affine surjections from a face onto the vertices of a
//! simplex, their enumeration up to relabeling, the partial order between
//! them and maximality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::config::{Face, PointConfiguration};
use crate::error::{Error, Result};
use crate::linalg::{in_rational_rowspan, integer_kernel_basis, IntVector};

/// A Cayley structure `pi: tau -> Delta_l`, stored as the partition of the
/// face into fibers. Blocks are sorted internally and ordered by their least
/// element, which makes equivalent structures (differing by a permutation of
/// the simplex vertices) compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyStructure {
    face: Face,
    blocks: Vec<Vec<usize>>,
}

impl CayleyStructure {
    /// Validates `blocks` as a Cayley structure on `face`.
    pub fn new(a: &PointConfiguration, face: &Face, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if !is_cayley_structure(a, face, &blocks)? {
            return Err(Error::InvalidPartition(
                "block indicators do not preserve affine relations".into(),
            ));
        }
        Ok(Self::from_parts_unchecked(face.clone(), blocks))
    }

    /// Canonicalizes without checking relation preservation. Meant for
    /// oracles and negative controls that must be able to hold invalid data.
    pub fn from_parts_unchecked(face: Face, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        Self { face, blocks }
    }

    /// The structure with every point in its own block on an empty simplex.
    pub fn singletons(face: &Face) -> Self {
        Self::from_parts_unchecked(face.clone(), face.indices().iter().map(|&i| vec![i]).collect())
    }

    pub fn face(&self) -> &Face {
        &self.face
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `l`, so that the target simplex has `l + 1` vertices.
    pub fn l(&self) -> usize {
        self.blocks.len() - 1
    }

    /// Index of the block containing point `u`, if `u` lies on the face.
    pub fn block_of(&self, u: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&u).is_ok())
    }

    /// Whether the points of `subset` lie in pairwise distinct blocks.
    pub fn is_injective_on(&self, subset: &[usize]) -> bool {
        let mut seen = vec![false; self.blocks.len()];
        subset.iter().all(|&u| match self.block_of(u) {
            Some(b) => !std::mem::replace(&mut seen[b], true),
            None => false,
        })
    }

    /// The partition induced on a subset of the face (empty parts dropped).
    pub fn restrict(&self, subset: &[usize]) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|u| subset.contains(u)).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        out.sort();
        out
    }

    /// Stable text key: face indices and blocks.
    pub fn canonical_key(&self) -> String {
        let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let blocks: Vec<String> = self.blocks.iter().map(|b| join(b)).collect();
        format!("{}|{}", join(self.face.indices()), blocks.join("/"))
    }
}

fn check_partition(face: &Face, blocks: &[Vec<usize>]) -> Result<()> {
    let mut seen = BTreeMap::new();
    for (bi, b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(Error::InvalidPartition(format!("block {bi} is empty")));
        }
        for &u in b {
            if !face.contains(u) {
                return Err(Error::InvalidPartition(format!("point {u} is not on the face")));
            }
            if seen.insert(u, bi).is_some() {
                return Err(Error::InvalidPartition(format!("point {u} appears twice")));
            }
        }
    }
    if seen.len() != face.len() {
        return Err(Error::InvalidPartition("blocks do not cover the face".into()));
    }
    Ok(())
}

fn indicator(face: &Face, block: &[usize]) -> IntVector {
    face.indices()
        .iter()
        .map(|u| BigInt::from(block.contains(u) as i64))
        .collect()
}

/// Whether sending each block to its own simplex vertex preserves every
/// affine relation on the face: every block indicator must lie in the
/// rational row span of the homogenized coordinates of the face.
pub fn is_cayley_structure(a: &PointConfiguration, tau: &Face, blocks: &[Vec<usize>]) -> Result<bool> {
    a.check_indices(tau.indices())?;
    check_partition(tau, blocks)?;
    let h = a.homogenized_subset(tau.indices());
    Ok(blocks.iter().all(|b| in_rational_rowspan(&h, &indicator(tau, b))))
}

/// All Cayley structures on `tau` with `l >= l_min`, one per equivalence
/// class, in the order of their restricted-growth strings.
///
/// Points are assigned to blocks in index order; a new block may only be
/// opened with the next unused label, so block minima increase. After each
/// assignment every block must already be compatible with the relations
/// among the assigned prefix, which are exactly the kernel of the prefix's
/// homogenized matrix.
pub fn enumerate_cayley_structures(
    a: &PointConfiguration,
    tau: &Face,
    l_min: usize,
) -> Vec<CayleyStructure> {
    let pts = tau.indices();
    let s = pts.len();
    if s < l_min + 1 {
        return Vec::new();
    }
    let prefix_kernels: Vec<Vec<IntVector>> = (0..=s)
        .map(|j| {
            if j == 0 {
                Vec::new()
            } else {
                integer_kernel_basis(&a.homogenized_subset(&pts[..j]))
            }
        })
        .collect();
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(s);
    let mut ctx = Search {
        pts,
        s,
        l_min,
        prefix_kernels: &prefix_kernels,
        tau,
        out: &mut out,
    };
    ctx.dfs(&mut labels, 0);
    out.sort();
    out
}

struct Search<'a> {
    pts: &'a [usize],
    s: usize,
    l_min: usize,
    prefix_kernels: &'a [Vec<IntVector>],
    tau: &'a Face,
    out: &'a mut Vec<CayleyStructure>,
}

impl Search<'_> {
    fn dfs(&mut self, labels: &mut Vec<usize>, used: usize) {
        let j = labels.len();
        if j == self.s {
            if used > self.l_min {
                let mut blocks = vec![Vec::new(); used];
                for (p, &b) in labels.iter().enumerate() {
                    blocks[b].push(self.pts[p]);
                }
                self.out
                    .push(CayleyStructure::from_parts_unchecked(self.tau.clone(), blocks));
            }
            return;
        }
        // even opening a new block for every remaining point cannot reach l_min
        if used + (self.s - j) < self.l_min + 1 {
            return;
        }
        for b in 0..=used {
            labels.push(b);
            if self.prefix_ok(labels) {
                self.dfs(labels, used.max(b + 1));
            }
            labels.pop();
        }
    }

    fn prefix_ok(&self, labels: &[usize]) -> bool {
        let kernel = &self.prefix_kernels[labels.len()];
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        kernel.iter().all(|r| {
            let mut sums = vec![BigInt::zero(); blocks];
            for (x, &b) in r.iter().zip(labels) {
                sums[b] += x;
            }
            sums.iter().all(Zero::is_zero)
        })
    }
}

/// `small ⪯ big`: the face of `small` lies in the face of `big`, and some
/// surjection of simplices turns `big` restricted to that face into `small`.
/// Such a surjection exists exactly when every block of `big` meets the
/// small face inside a single block of `small`.
pub fn leq(a: &PointConfiguration, small: &CayleyStructure, big: &CayleyStructure) -> Result<bool> {
    a.check_indices(small.face.indices())?;
    a.check_indices(big.face.indices())?;
    if !small.face.is_subset_of(&big.face) {
        return Ok(false);
    }
    Ok(big.blocks.iter().all(|b| {
        let mut target = None;
        b.iter().filter(|u| small.face.contains(**u)).all(|&u| {
            let sb = small.block_of(u);
            match target {
                None => {
                    target = Some(sb);
                    true
                }
                Some(t) => t == sb,
            }
        })
    }))
}

/// All Cayley structures with `l >= l_min` on every face, grouped in face
/// order.
pub fn all_cayley_structures(a: &PointConfiguration, l_min: usize) -> Vec<CayleyStructure> {
    a.faces()
        .iter()
        .flat_map(|f| enumerate_cayley_structures(a, f, l_min))
        .collect()
}

/// The ⪯-maximal Cayley structures with `l >= k`, over all faces.
///
/// A structure dominating one with `l' >= k` has `l >= l'`, so it suffices to
/// compare within the structures that already have `l >= k`.
pub fn maximal_cayley_structures(a: &PointConfiguration, k: usize) -> Result<Vec<CayleyStructure>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let all = all_cayley_structures(a, k);
    Ok(maximal_elements(a, &all))
}

/// Elements of `items` not strictly dominated by another element.
pub fn maximal_elements(a: &PointConfiguration, items: &[CayleyStructure]) -> Vec<CayleyStructure> {
    items
        .iter()
        .filter(|p| {
            !items
                .iter()
                .any(|q| q != *p && leq(a, p, q).expect("structures live on a"))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    #[test]
    fn surface_partitions() {
        let a = examples::surface();
        let full = a.full_face();
        // points: 0=(0,0) 1=(0,1) 2=(1,0) 3=(1,2)
        assert!(is_cayley_structure(&a, full, &[vec![0, 1], vec![2, 3]]).unwrap());
        assert!(!is_cayley_structure(&a, full, &[vec![0, 2], vec![1, 3]]).unwrap());
        assert!(!is_cayley_structure(&a, full, &[vec![0, 3], vec![1, 2]]).unwrap());
    }

    #[test]
    fn bad_partitions_are_errors() {
        let a = examples::surface();
        let full = a.full_face();
        assert!(is_cayley_structure(&a, full, &[vec![0, 1], vec![2]]).is_err());
        assert!(is_cayley_structure(&a, full, &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(is_cayley_structure(&a, full, &[vec![0, 1, 2, 3], vec![]]).is_err());
        let edge = a.face_with_indices(&[0, 2]).unwrap();
        assert!(is_cayley_structure(&a, edge, &[vec![0], vec![1]]).is_err());
    }

    #[test]
    fn singleton_blocks_on_simplex() {
        let a = examples::surface();
        let edge = a.face_with_indices(&[0, 2]).unwrap();
        assert!(is_cayley_structure(&a, edge, &[vec![0], vec![2]]).unwrap());
        let found = enumerate_cayley_structures(&a, edge, 1);
        assert_eq!(found, vec![CayleyStructure::singletons(edge)]);
    }

    #[test]
    fn birkhoff_on_full_face() {
        let a = examples::birkhoff();
        let found = enumerate_cayley_structures(&a, a.full_face(), 2);
        assert_eq!(found.len(), 6);
        assert!(found.iter().all(|p| p.l() == 2 && p.blocks().iter().all(|b| b.len() == 2)));
        // pi(u_i) = pi(v_i) = e_i is among them
        assert!(found.iter().any(|p| p.blocks() == [vec![0, 3], vec![1, 4], vec![2, 5]]));
    }

    #[test]
    fn square_structures() {
        let a = examples::square();
        let found = enumerate_cayley_structures(&a, a.full_face(), 1);
        assert_eq!(found.len(), 2);
        assert_eq!(maximal_cayley_structures(&a, 1).unwrap().len(), 2);
    }

    #[test]
    fn leq_examples() {
        let a = examples::surface();
        let vertical = CayleyStructure::new(&a, a.full_face(), vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(leq(&a, &vertical, &vertical).unwrap());
        let edge = CayleyStructure::singletons(a.face_with_indices(&[0, 2]).unwrap());
        assert!(leq(&a, &edge, &vertical).unwrap());
        assert!(!leq(&a, &vertical, &edge).unwrap());
        // the edge {(0,0),(0,1)} lies inside one vertical block
        let left = CayleyStructure::singletons(a.face_with_indices(&[0, 1]).unwrap());
        assert!(!leq(&a, &left, &vertical).unwrap());

        let b = examples::birkhoff();
        let facet = b.face_with_indices(&[1, 2, 4, 5]).unwrap();
        let facet_pi = CayleyStructure::singletons(facet);
        let column = CayleyStructure::new(&b, b.full_face(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
        // the projection pairs u1 with v1 but the facet structure separates them
        assert!(!leq(&b, &facet_pi, &column).unwrap());
        assert!(!leq(&b, &column, &facet_pi).unwrap());
        let restricted =
            CayleyStructure::new(&b, facet, column.restrict(facet.indices())).unwrap();
        assert_eq!(restricted.l(), 1);
        assert!(leq(&b, &restricted, &column).unwrap());
        assert!(leq(&b, &restricted, &facet_pi).unwrap());
    }

    #[test]
    fn birkhoff_maximal() {
        let a = examples::birkhoff();
        assert_eq!(maximal_cayley_structures(&a, 1).unwrap().len(), 15);
        assert_eq!(maximal_cayley_structures(&a, 2).unwrap().len(), 15);
        assert_eq!(maximal_cayley_structures(&a, 3).unwrap().len(), 9);
        assert!(matches!(maximal_cayley_structures(&a, 0), Err(Error::InvalidK)));
    }
}
