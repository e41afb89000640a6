//! Irreducible components of `F_k(X_A)`: one per maximal Cayley structure
//! with `l >= k`. Dimensions, fixed points, local chart semigroups, chart
//! smoothness, pairwise intersections and the connectivity graph.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cayley::{self, CayleyStructure};
use crate::config::{free_basis_among, Face, PointConfiguration};
use crate::error::{Error, Result};
use crate::linalg::{self, sub, IntVector};

/// The component `Z_{pi,k}` of `F_k(X_A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoComponent {
    pub pi: CayleyStructure,
    pub k: usize,
    pub dimension: usize,
    pub fixed_points: Vec<Face>,
    pub id: String,
}

/// Stable identifier of a Cayley structure: a prefix of the SHA-256 of its
/// canonical face and block description.
pub fn component_id(pi: &CayleyStructure) -> String {
    let digest = Sha256::digest(pi.canonical_key().as_bytes());
    digest[..6].iter().map(|b| format!("{b:02x}")).collect()
}

/// The components of `F_k(X_A)`, ordered by face and then by blocks.
pub fn components(a: &PointConfiguration, k: usize) -> Result<Vec<FanoComponent>> {
    let maximal = cayley::maximal_cayley_structures(a, k)?;
    maximal
        .into_iter()
        .map(|pi| {
            let dimension = component_dimension(&pi, k)?;
            let fixed_points = component_fixed_points(a, &pi, k)?;
            Ok(FanoComponent {
                id: component_id(&pi),
                pi,
                k,
                dimension,
                fixed_points,
            })
        })
        .collect()
}

/// `m - l + (k+1)(l-k)` for `pi: tau -> Delta_l` on an `m`-dimensional face.
pub fn component_dimension(pi: &CayleyStructure, k: usize) -> Result<usize> {
    let l = pi.l();
    if k > l {
        return Err(Error::KExceedsL { k, l });
    }
    let m = pi.face().dim();
    debug_assert!(m >= l, "an affine surjection onto Delta_l needs an l-dimensional source");
    Ok(m - l + (k + 1) * (l - k))
}

/// `{ u_0 + ... + u_l : u_i in block i }`, the lattice points whose toric
/// variety is `Z_pi` in its Plücker embedding. Only meaningful as a global
/// description for `k = l`.
pub fn component_points(a: &PointConfiguration, pi: &CayleyStructure) -> PointConfiguration {
    let d = a.ambient_dim();
    let sums: BTreeSet<IntVector> = pi
        .blocks()
        .iter()
        .map(|b| b.iter().copied())
        .multi_cartesian_product()
        .map(|choice| {
            choice
                .iter()
                .fold(vec![BigInt::zero(); d], |acc, &u| linalg::add(&acc, a.point(u)))
        })
        .collect();
    PointConfiguration::new(sums.into_iter().collect()).expect("distinct sums of equal dimension")
}

/// Empty `k`-simplex faces of `tau` whose points lie in `k+1` distinct blocks.
pub fn component_fixed_points(a: &PointConfiguration, pi: &CayleyStructure, k: usize) -> Result<Vec<Face>> {
    if k > pi.l() {
        return Err(Error::KExceedsL { k, l: pi.l() });
    }
    Ok(a.fixed_point_faces(k)
        .into_iter()
        .filter(|s| s.is_subset_of(pi.face()) && pi.is_injective_on(s.indices()))
        .collect())
}

/// Which defining formula produced a chart generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorLabel {
    /// `u - lambda(u)` for `lambda(u)` in sigma.
    Gamma { u: usize },
    /// `e_{v,lambda(u)} + u - lambda(u)` for `lambda(u)` outside sigma.
    Pair { v: usize, u: usize },
}

/// The semigroup `S(pi, sigma~, sigma)` describing `Z_{pi,k}` on the Plücker
/// chart of `sigma`. Generators live in `M_A x Z^(sigma x (sigma~ \ sigma))`,
/// with the `M_A` part in the configuration's lattice coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSemigroup {
    pub ambient_rank: usize,
    pub generators: Vec<IntVector>,
    pub labels: Vec<GeneratorLabel>,
    pub sigma_tilde: Vec<usize>,
    pub sigma: Vec<usize>,
}

/// `lambda(u)`: the element of `sigma_tilde` in the block of `u`.
pub fn lambda(pi: &CayleyStructure, sigma_tilde: &[usize], u: usize) -> Option<usize> {
    let b = pi.block_of(u)?;
    sigma_tilde.iter().copied().find(|&s| pi.block_of(s) == Some(b))
}

fn check_chart(pi: &CayleyStructure, sigma_tilde: &[usize], sigma: &[usize]) -> Result<()> {
    if sigma_tilde.len() != pi.blocks().len() || !pi.is_injective_on(sigma_tilde) {
        return Err(Error::InvalidChart(
            "sigma~ must contain exactly one point of every block".into(),
        ));
    }
    if sigma.is_empty() || !sigma.iter().all(|s| sigma_tilde.contains(s)) {
        return Err(Error::InvalidChart("sigma must be a nonempty subset of sigma~".into()));
    }
    if sigma.iter().collect::<BTreeSet<_>>().len() != sigma.len() {
        return Err(Error::InvalidChart("sigma has repeated points".into()));
    }
    Ok(())
}

/// Generators of `S(pi, sigma~, sigma)`; `k = |sigma| - 1`.
pub fn chart_semigroup(
    a: &PointConfiguration,
    pi: &CayleyStructure,
    sigma_tilde: &[usize],
    sigma: &[usize],
) -> Result<ChartSemigroup> {
    a.check_indices(sigma_tilde)?;
    check_chart(pi, sigma_tilde, sigma)?;
    let mut sigma_tilde = sigma_tilde.to_vec();
    sigma_tilde.sort_unstable();
    let mut sigma = sigma.to_vec();
    sigma.sort_unstable();
    let outside: Vec<usize> = sigma_tilde.iter().copied().filter(|s| !sigma.contains(s)).collect();
    let n = a.dim();
    let ambient_rank = n + sigma.len() * outside.len();

    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for &u in pi.face().indices() {
        let lam = lambda(pi, &sigma_tilde, u).expect("face points lie in a block");
        let m = sub(a.local(u), a.local(lam));
        match outside.iter().position(|&w| w == lam) {
            None => {
                let mut g = m;
                g.resize(ambient_rank, BigInt::zero());
                generators.push(g);
                labels.push(GeneratorLabel::Gamma { u });
            }
            Some(wi) => {
                for (vi, &v) in sigma.iter().enumerate() {
                    let mut g = m.clone();
                    g.resize(ambient_rank, BigInt::zero());
                    g[n + vi * outside.len() + wi] += 1;
                    generators.push(g);
                    labels.push(GeneratorLabel::Pair { v, u });
                }
            }
        }
    }
    Ok(ChartSemigroup {
        ambient_rank,
        generators,
        labels,
        sigma_tilde,
        sigma,
    })
}

/// Every way to extend `sigma` (one point in each of `|sigma|` distinct
/// blocks) to a full transversal `sigma~`.
pub fn transversals_through(pi: &CayleyStructure, sigma: &[usize]) -> Vec<Vec<usize>> {
    let hit: BTreeSet<usize> = sigma.iter().filter_map(|&s| pi.block_of(s)).collect();
    pi.blocks()
        .iter()
        .enumerate()
        .map(|(bi, b)| {
            if hit.contains(&bi) {
                vec![*sigma.iter().find(|&&s| pi.block_of(s) == Some(bi)).expect("hit block")]
            } else {
                b.clone()
            }
        })
        .multi_cartesian_product()
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect()
}

/// The lexicographically first transversal through `sigma`.
pub fn default_transversal(pi: &CayleyStructure, sigma: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = pi
        .blocks()
        .iter()
        .map(|b| b.iter().copied().find(|u| sigma.contains(u)).unwrap_or(b[0]))
        .collect();
    t.sort_unstable();
    t
}

/// Whether the chart semigroup is free on part of a lattice basis: after
/// dropping zero and repeated generators, some linearly independent subset
/// generates everything with nonnegative integer coefficients and spans a
/// direct summand of the ambient lattice.
pub fn chart_is_smooth(c: &ChartSemigroup) -> bool {
    let distinct: BTreeSet<&IntVector> = c
        .generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .collect();
    let gens: Vec<IntVector> = distinct.into_iter().cloned().collect();
    if gens.is_empty() {
        return true;
    }
    let r = linalg::lattice_rank(&gens);
    free_basis_among(&gens, r).is_some()
}

/// The ⪯-maximal Cayley structures below both `pi1` and `pi2` with at least
/// `k + 1` blocks; their components cover `Z_{pi1,k} ∩ Z_{pi2,k}`. Empty
/// exactly when the two components are disjoint.
///
/// On a face `tau` inside both faces, every common lower bound coarsens the
/// join of the two restricted partitions, and that join is itself Cayley (its
/// blocks are unions of Cayley blocks), so it is the only candidate on `tau`.
pub fn components_intersection(
    a: &PointConfiguration,
    pi1: &CayleyStructure,
    pi2: &CayleyStructure,
    k: usize,
) -> Result<Vec<CayleyStructure>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    a.check_indices(pi1.face().indices())?;
    a.check_indices(pi2.face().indices())?;
    let candidates: Vec<CayleyStructure> = a
        .faces()
        .iter()
        .filter(|t| t.is_subset_of(pi1.face()) && t.is_subset_of(pi2.face()))
        .filter_map(|t| {
            let blocks = join(t.indices(), pi1, pi2);
            (blocks.len() > k).then(|| {
                debug_assert!(cayley::is_cayley_structure(a, t, &blocks).unwrap_or(false));
                CayleyStructure::from_parts_unchecked(t.clone(), blocks)
            })
        })
        .collect();
    Ok(cayley::maximal_elements(a, &candidates))
}

/// Finest common coarsening of the partitions `pi1` and `pi2` induce on
/// `points`.
fn join(points: &[usize], pi1: &CayleyStructure, pi2: &CayleyStructure) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let same1 = pi1.block_of(points[i]) == pi1.block_of(points[j]);
            let same2 = pi2.block_of(points[i]) == pi2.block_of(points[j]);
            if same1 || same2 {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(points[i]);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort();
    blocks
}

/// Graph on the components of `F_k(X_A)`: two components are adjacent when
/// some empty `k`-simplex face of both faces meets `k+1` distinct blocks of
/// each structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl ConnectivityGraph {
    /// Label of the connected component of every vertex (labels are the
    /// smallest vertex index in the component).
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label: Vec<usize> = (0..self.vertices.len()).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(i, j) in &self.edges {
                let m = label[i].min(label[j]);
                if label[i] != m || label[j] != m {
                    label[i] = m;
                    label[j] = m;
                    changed = true;
                }
            }
        }
        label
    }

    pub fn connected_components(&self) -> usize {
        self.component_labels().into_iter().collect::<BTreeSet<_>>().len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        self.edges.binary_search(&(i, j)).is_ok()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == i || b == i).count()
    }
}

pub fn connectivity_graph(a: &PointConfiguration, k: usize) -> Result<ConnectivityGraph> {
    let comps = components(a, k)?;
    Ok(connectivity_graph_of(a, &comps, k))
}

/// Connectivity graph over an already computed component list.
pub fn connectivity_graph_of(a: &PointConfiguration, comps: &[FanoComponent], k: usize) -> ConnectivityGraph {
    let simplices = a.fixed_point_faces(k);
    let mut edges = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (p, q) = (&comps[i].pi, &comps[j].pi);
            let adjacent = simplices.iter().any(|s| {
                s.is_subset_of(p.face())
                    && s.is_subset_of(q.face())
                    && p.is_injective_on(s.indices())
                    && q.is_injective_on(s.indices())
            });
            if adjacent {
                edges.push((i, j));
            }
        }
    }
    ConnectivityGraph {
        vertices: comps.iter().map(|c| c.id.clone()).collect(),
        edges,
    }
}

/// Whether `X_A` is covered by `k`-planes: some Cayley structure on all of
/// `A` has at least `k + 1` blocks.
pub fn is_covered_by_k_planes(a: &PointConfiguration, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    Ok(!cayley::enumerate_cayley_structures(a, a.full_face(), k).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::affine_unimodular_equivalent;
    use crate::examples;

    fn projection(a: &PointConfiguration) -> CayleyStructure {
        CayleyStructure::new(a, a.full_face(), vec![vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap()
    }

    #[test]
    fn birkhoff_component_counts() {
        let a = examples::birkhoff();
        assert_eq!(components(&a, 1).unwrap().len(), 15);
        let c2 = components(&a, 2).unwrap();
        assert_eq!(c2.len(), 15);
        assert_eq!(c2.iter().filter(|c| c.dimension == 2).count(), 6);
        assert_eq!(c2.iter().filter(|c| c.dimension == 3).count(), 9);
        assert_eq!(components(&a, 3).unwrap().len(), 9);
    }

    #[test]
    fn dimension_formula() {
        let a = examples::birkhoff();
        assert_eq!(component_dimension(&projection(&a), 2).unwrap(), 2);
        let facet = CayleyStructure::singletons(a.face_with_indices(&[1, 2, 4, 5]).unwrap());
        assert_eq!(component_dimension(&facet, 2).unwrap(), 3);
        assert_eq!(component_dimension(&facet, 3).unwrap(), 0);
        assert!(matches!(
            component_dimension(&projection(&a), 3),
            Err(Error::KExceedsL { k: 3, l: 2 })
        ));
    }

    #[test]
    fn triangle_has_one_component() {
        let a = examples::triangle();
        let c = components(&a, 1).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].pi.l(), 2);
        // lines in the plane: the dual plane
        assert_eq!(c[0].dimension, 2);
        let c2 = components(&a, 2).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].dimension, 0);
    }

    #[test]
    fn component_points_examples() {
        let a = examples::birkhoff();
        let pts = component_points(&a, &projection(&a));
        assert_eq!(pts.len(), 7);
        assert!(affine_unimodular_equivalent(&pts, &examples::hexagon()));

        let sq = examples::square();
        let x_proj = CayleyStructure::new(&sq, sq.full_face(), vec![vec![0, 2], vec![1, 3]]).unwrap();
        let pts = component_points(&sq, &x_proj);
        let expected = PointConfiguration::from_i64(&[&[1, 0], &[1, 1], &[1, 2]]).unwrap();
        assert_eq!(pts, expected);

        let edge = CayleyStructure::singletons(sq.face_with_indices(&[0, 1]).unwrap());
        assert_eq!(component_points(&sq, &edge).len(), 1);
    }

    #[test]
    fn fixed_points_of_vertical_structure() {
        let a = examples::surface();
        let vertical = CayleyStructure::new(&a, a.full_face(), vec![vec![0, 1], vec![2, 3]]).unwrap();
        let fp: Vec<Vec<usize>> = component_fixed_points(&a, &vertical, 1)
            .unwrap()
            .iter()
            .map(|f| f.indices().to_vec())
            .collect();
        assert_eq!(fp, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn birkhoff_chart() {
        let a = examples::birkhoff();
        let pi = projection(&a);
        // sigma = {v0, u1, u2}
        let sigma = [3, 1, 2];
        let c = chart_semigroup(&a, &pi, &sigma, &sigma).unwrap();
        assert_eq!(c.ambient_rank, 4);
        let nonzero: BTreeSet<IntVector> = c
            .generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let expected: BTreeSet<IntVector> = [(0, 3), (4, 1), (5, 2)]
            .iter()
            .map(|&(u, v)| sub(a.local(u), a.local(v)))
            .collect();
        assert_eq!(nonzero, expected);
        assert_eq!(linalg::lattice_rank(&c.generators), 2);
        assert!(chart_is_smooth(&c));
    }

    #[test]
    fn chart_errors() {
        let a = examples::birkhoff();
        let pi = projection(&a);
        assert!(chart_semigroup(&a, &pi, &[0, 3, 1], &[0]).is_err());
        assert!(chart_semigroup(&a, &pi, &[0, 1, 2], &[4]).is_err());
        assert!(chart_semigroup(&a, &pi, &[0, 1, 2], &[]).is_err());
    }

    #[test]
    fn empty_simplex_chart_has_no_generators() {
        let a = examples::triangle();
        let pi = CayleyStructure::singletons(a.full_face());
        let c = chart_semigroup(&a, &pi, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert!(c.generators.iter().all(|g| g.iter().all(Zero::is_zero)));
        assert!(chart_is_smooth(&c));
    }

    #[test]
    fn non_free_semigroup() {
        let c = ChartSemigroup {
            ambient_rank: 1,
            generators: vec![vec![BigInt::from(2)], vec![BigInt::from(3)]],
            labels: vec![GeneratorLabel::Gamma { u: 0 }, GeneratorLabel::Gamma { u: 1 }],
            sigma_tilde: vec![],
            sigma: vec![],
        };
        assert!(!chart_is_smooth(&c));
        let doubled = ChartSemigroup {
            generators: vec![vec![BigInt::from(2)]],
            ..c.clone()
        };
        assert!(!chart_is_smooth(&doubled));
    }

    #[test]
    fn birkhoff_intersections() {
        let a = examples::birkhoff();
        let comps = components(&a, 2).unwrap();
        let p = &comps.iter().find(|c| c.dimension == 2).unwrap().pi;
        assert_eq!(components_intersection(&a, p, p, 2).unwrap(), vec![p.clone()]);
        let g = connectivity_graph_of(&a, &comps, 2);
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let x = components_intersection(&a, &comps[i].pi, &comps[j].pi, 2).unwrap();
                assert_eq!(!x.is_empty(), g.has_edge(i, j), "pair {i} {j}");
            }
        }
        // each plane meets three of the other five planes, in two points
        let planes: Vec<usize> = (0..comps.len()).filter(|&i| comps[i].dimension == 2).collect();
        for &i in &planes {
            let met: Vec<usize> = planes.iter().copied().filter(|&j| j != i && g.has_edge(i, j)).collect();
            assert_eq!(met.len(), 3);
            for j in met {
                let x = components_intersection(&a, &comps[i].pi, &comps[j].pi, 2).unwrap();
                assert_eq!(x.len(), 2);
                assert!(x.iter().all(|p| p.face().len() == 3 && p.l() == 2));
            }
        }
        assert_eq!(g.connected_components(), 1);
    }

    #[test]
    fn square_graph() {
        let a = examples::square();
        let g = connectivity_graph(&a, 1).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert!(g.edges.is_empty());
        assert_eq!(g.connected_components(), 2);
        let t = connectivity_graph(&examples::triangle(), 1).unwrap();
        assert_eq!((t.vertices.len(), t.edges.len()), (1, 0));
    }

    #[test]
    fn covering() {
        assert!(is_covered_by_k_planes(&examples::birkhoff(), 2).unwrap());
        assert!(!is_covered_by_k_planes(&examples::birkhoff(), 3).unwrap());
        assert!(is_covered_by_k_planes(&examples::surface(), 1).unwrap());
        assert!(!is_covered_by_k_planes(&examples::surface(), 2).unwrap());
    }
}
