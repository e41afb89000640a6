//! Point configurations, their faces, empty simplices and the smoothness test.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    self, dot, integer_kernel_basis, is_saturated, lattice_basis, sub, IntMatrix, IntVector,
    RatVector,
};

/// A finite ordered set of pairwise distinct lattice points.
///
/// Besides the points themselves the configuration caches an integral basis
/// of the lattice `M_A` spanned by differences of points, and the coordinates
/// of every point (relative to the first) in that basis. All combinatorics
/// that only depends on the affine lattice structure works in these local
/// coordinates, where the configuration is full-dimensional.
#[derive(Clone, Debug)]
pub struct PointConfiguration {
    points: Vec<IntVector>,
    ambient_dim: usize,
    dim: usize,
    homogenized: IntMatrix,
    lattice: Vec<IntVector>,
    local: Vec<IntVector>,
    faces: OnceLock<Vec<Face>>,
}

impl PartialEq for PointConfiguration {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points
    }
}

impl Eq for PointConfiguration {}

/// A face `A ∩ F` of a configuration together with a certificate: an integer
/// functional `w` and level `c` with `w(u) = c` on the face and `w(u) > c`
/// on every other point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    indices: Vec<usize>,
    dim: usize,
    functional: IntVector,
    level: BigInt,
}

impl Face {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn functional(&self) -> &[BigInt] {
        &self.functional
    }

    pub fn level(&self) -> &BigInt {
        &self.level
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    /// Re-checks the witness against `a`.
    pub fn validate(&self, a: &PointConfiguration) -> bool {
        a.points.iter().enumerate().all(|(i, p)| {
            let v = dot(&self.functional, p);
            if self.contains(i) {
                v == self.level
            } else {
                v > self.level
            }
        })
    }
}

impl PointConfiguration {
    pub fn new(points: Vec<IntVector>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyConfiguration)?;
        let d = first.len();
        for (i, p) in points.iter().enumerate() {
            if p.len() != d {
                return Err(Error::RaggedPoints {
                    index: i,
                    expected: d,
                    found: p.len(),
                });
            }
        }
        let mut seen: BTreeMap<&IntVector, usize> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                return Err(Error::DuplicatePoint(j, i));
            }
            seen.insert(p, i);
        }

        let mut homogenized = IntMatrix::zeros(d + 1, points.len());
        for (j, p) in points.iter().enumerate() {
            for (i, x) in p.iter().enumerate() {
                homogenized[(i, j)] = x.clone();
            }
            homogenized[(d, j)] = BigInt::one();
        }

        let diffs: Vec<IntVector> = points.iter().map(|p| sub(p, &points[0])).collect();
        let lattice = lattice_basis(&diffs, d);
        let local = diffs
            .iter()
            .map(|v| {
                linalg::coordinates_in(&lattice, v)
                    .and_then(|x| x.to_integer())
                    .expect("difference vector lies in its own lattice")
            })
            .collect();
        Ok(Self {
            ambient_dim: d,
            dim: lattice.len(),
            homogenized,
            lattice,
            local,
            points,
            faces: OnceLock::new(),
        })
    }

    pub fn from_i64(points: &[&[i64]]) -> Result<Self> {
        Self::new(points.iter().map(|p| linalg::to_big(p)).collect())
    }

    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &IntVector {
        &self.points[i]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine span.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Columns `(u, 1)`.
    pub fn homogenized(&self) -> &IntMatrix {
        &self.homogenized
    }

    /// Homogenized matrix restricted to the given point indices.
    pub fn homogenized_subset(&self, subset: &[usize]) -> IntMatrix {
        self.homogenized.select_columns(subset)
    }

    /// Integral basis of `M_A`, the lattice spanned by differences of points.
    pub fn lattice_basis(&self) -> &[IntVector] {
        &self.lattice
    }

    /// Coordinates of `point(i) - point(0)` in the lattice basis.
    pub fn local(&self, i: usize) -> &IntVector {
        &self.local[i]
    }

    /// Coordinates of an arbitrary element of `M_A` in the lattice basis.
    pub fn to_local(&self, v: &[BigInt]) -> Option<IntVector> {
        linalg::coordinates_in(&self.lattice, v).and_then(|x| x.to_integer())
    }

    pub fn check_indices(&self, subset: &[usize]) -> Result<()> {
        match subset.iter().find(|&&i| i >= self.len()) {
            Some(&i) => Err(Error::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Dimension of the affine span of a subset of the points.
    pub fn affine_dim(&self, subset: &[usize]) -> usize {
        match subset.split_first() {
            None => 0,
            Some((&first, rest)) => {
                let diffs: Vec<IntVector> =
                    rest.iter().map(|&i| sub(&self.local[i], &self.local[first])).collect();
                linalg::lattice_rank(&diffs)
            }
        }
    }

    /// All faces, sorted by index set. Includes the configuration itself
    /// (with the zero functional) and its vertices.
    pub fn faces(&self) -> &[Face] {
        self.faces.get_or_init(|| enumerate_faces(self))
    }

    /// Faces of a given dimension.
    pub fn faces_of_dim(&self, dim: usize) -> Vec<Face> {
        self.faces().iter().filter(|f| f.dim == dim).cloned().collect()
    }

    /// The face with exactly this (sorted) index set, if there is one.
    pub fn face_with_indices(&self, indices: &[usize]) -> Option<&Face> {
        let faces = self.faces();
        faces
            .binary_search_by(|f| f.indices.as_slice().cmp(indices))
            .ok()
            .map(|i| &faces[i])
    }

    /// The improper face.
    pub fn full_face(&self) -> &Face {
        let all: Vec<usize> = (0..self.len()).collect();
        self.face_with_indices(&all).expect("configuration is a face of itself")
    }

    pub fn is_empty_simplex(&self, subset: &[usize]) -> bool {
        !subset.is_empty() && subset.len() == self.affine_dim(subset) + 1
    }

    /// Faces that are empty `k`-simplices; these index the torus fixed points
    /// of the Fano scheme of `k`-planes.
    pub fn fixed_point_faces(&self, k: usize) -> Vec<Face> {
        self.faces()
            .iter()
            .filter(|f| f.dim == k && f.len() == k + 1)
            .cloned()
            .collect()
    }

    /// Whether the semigroup generated by `A - sigma` is isomorphic to
    /// `Z^k x N^(n-k)`.
    ///
    /// The units of that semigroup are the group generated by `sigma - sigma`.
    /// The test asks for that group to be a direct summand of `M_A`, and for
    /// the image of the semigroup in the quotient to be free on a lattice
    /// basis of the quotient.
    pub fn is_smooth_at(&self, sigma: &Face) -> Result<bool> {
        self.check_indices(sigma.indices())?;
        if self.face_with_indices(sigma.indices()).is_none() {
            return Err(Error::NotAFace);
        }
        if !self.is_empty_simplex(sigma.indices()) {
            return Err(Error::NotEmptySimplex);
        }
        let n = self.dim;
        let v0 = sigma.indices[0];
        let units: Vec<IntVector> = sigma.indices[1..]
            .iter()
            .map(|&v| sub(&self.local[v], &self.local[v0]))
            .collect();
        if !is_saturated(&units, n) {
            return Ok(false);
        }
        let r = n - units.len();
        if r == 0 {
            return Ok(true);
        }
        let quotient = if units.is_empty() {
            (0..n)
                .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                .collect()
        } else {
            integer_kernel_basis(&IntMatrix::from_rows(n, &units))
        };
        let images: BTreeSet<IntVector> = (0..self.len())
            .filter(|i| !sigma.contains(*i))
            .map(|i| {
                let d = sub(&self.local[i], &self.local[v0]);
                quotient.iter().map(|q| dot(q, &d)).collect::<IntVector>()
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let images: Vec<IntVector> = images.into_iter().collect();
        Ok(free_basis_among(&images, r).is_some())
    }
}

/// Looks for `r` linearly independent vectors among the given ones that span
/// a direct summand of the ambient lattice and in which every vector has
/// nonnegative integer coordinates. With `r` equal to the ambient dimension
/// this is a lattice basis of `Z^r`.
pub(crate) fn free_basis_among(vectors: &[IntVector], r: usize) -> Option<Vec<IntVector>> {
    // basis elements are irreducible: not a sum of two others, not a multiple
    let set: HashSet<&IntVector> = vectors.iter().collect();
    let candidates: Vec<&IntVector> = vectors
        .iter()
        .filter(|v| {
            !vectors.iter().any(|a| {
                *a != **v && {
                    let rest = sub(v, a);
                    set.contains(&rest)
                }
            })
        })
        .filter(|v| {
            let g = v.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            g.is_one()
        })
        .collect();
    if candidates.len() < r {
        return None;
    }
    for combo in candidates.iter().combinations(r) {
        let basis: Vec<IntVector> = combo.iter().map(|v| (**v).clone()).collect();
        let dim = basis[0].len();
        let unimodular = if dim == r {
            IntMatrix::from_rows(r, &basis).determinant().abs().is_one()
        } else {
            linalg::lattice_rank(&basis) == r && is_saturated(&basis, dim)
        };
        if !unimodular {
            continue;
        }
        let ok = vectors.iter().all(|v| {
            linalg::coordinates_in(&basis, v)
                .map_or(false, |x| x.0.iter().all(|c| c.is_integer() && !c.is_negative()))
        });
        if ok {
            return Some(basis);
        }
    }
    None
}

fn enumerate_faces(a: &PointConfiguration) -> Vec<Face> {
    let n = a.dim;
    let count = a.len();
    // facets as (index set, local functional, level)
    let mut facets: BTreeMap<Vec<usize>, (IntVector, BigInt)> = BTreeMap::new();
    if n > 0 {
        for subset in (0..count).combinations(n) {
            let base = &a.local[subset[0]];
            let diffs: Vec<IntVector> = subset[1..].iter().map(|&i| sub(&a.local[i], base)).collect();
            let normal = if diffs.is_empty() {
                vec![BigInt::one()]
            } else {
                if linalg::lattice_rank(&diffs) != n - 1 {
                    continue;
                }
                let k = integer_kernel_basis(&IntMatrix::from_rows(n, &diffs));
                debug_assert_eq!(k.len(), 1);
                k.into_iter().next().expect("hyperplane has a normal")
            };
            let level = dot(&normal, base);
            let values: Vec<BigInt> = a.local.iter().map(|x| dot(&normal, x)).collect();
            let (functional, level) = if values.iter().all(|v| *v >= level) {
                (normal, level)
            } else if values.iter().all(|v| *v <= level) {
                (normal.iter().map(|x| -x).collect(), -level)
            } else {
                continue;
            };
            let indices: Vec<usize> = (0..count)
                .filter(|&i| dot(&functional, &a.local[i]) == level)
                .collect();
            facets.entry(indices).or_insert((functional, level));
        }
    }

    let mut faces: BTreeMap<Vec<usize>, (IntVector, BigInt)> = facets.clone();
    let mut frontier: Vec<Vec<usize>> = faces.keys().cloned().collect();
    while let Some(f) = frontier.pop() {
        let (wf, cf) = faces[&f].clone();
        for (g, (wg, cg)) in &facets {
            let meet: Vec<usize> = f.iter().copied().filter(|i| g.binary_search(i).is_ok()).collect();
            if meet.is_empty() || faces.contains_key(&meet) {
                continue;
            }
            let w = linalg::add(&wf, wg);
            let c = &cf + cg;
            faces.insert(meet.clone(), (w, c));
            frontier.push(meet);
        }
    }
    faces.insert((0..count).collect(), (vec![BigInt::zero(); n], BigInt::zero()));

    faces
        .into_iter()
        .map(|(indices, (w, _))| {
            let functional = lift_functional(a, &w);
            let level = dot(&functional, &a.points[indices[0]]);
            let dim = a.affine_dim(&indices);
            let face = Face {
                indices,
                dim,
                functional,
                level,
            };
            debug_assert!(face.validate(a));
            face
        })
        .collect()
}

/// Turns a functional on local coordinates into a positive multiple of it
/// defined on the ambient lattice.
fn lift_functional(a: &PointConfiguration, local: &[BigInt]) -> IntVector {
    let d = a.ambient_dim;
    if local.iter().all(Zero::is_zero) {
        return vec![BigInt::zero(); d];
    }
    let m = IntMatrix::from_rows(d, &a.lattice);
    let rhs: Vec<BigRational> = local
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let w = linalg::solve_rational(&m, &rhs).expect("lattice basis has full row rank");
    RatVector::clear_denominators(&w)
}

/// Whether some affine map `x -> Ux + t` with `U` unimodular maps the points
/// of `a` bijectively onto those of `b`. Each configuration is taken in its
/// own affine lattice, so configurations in different ambient spaces can be
/// compared.
pub fn affine_unimodular_equivalent(a: &PointConfiguration, b: &PointConfiguration) -> bool {
    if a.len() != b.len() || a.dim != b.dim {
        return false;
    }
    let n = a.dim;
    if n == 0 {
        return true;
    }
    // greedily pick an affine basis of a
    let mut frame = vec![0usize];
    for i in 1..a.len() {
        let mut trial = frame.clone();
        trial.push(i);
        if a.affine_dim(&trial) == trial.len() - 1 {
            frame = trial;
        }
        if frame.len() == n + 1 {
            break;
        }
    }
    let x: Vec<IntVector> = frame[1..].iter().map(|&i| sub(&a.local[i], &a.local[frame[0]])).collect();
    let x_cols = IntMatrix::from_columns(n, &x);
    let targets: HashSet<&IntVector> = b.local.iter().collect();

    let mut image = Vec::with_capacity(n + 1);
    let mut used = vec![false; b.len()];
    search_frames(a, b, &frame, &x_cols, &targets, &mut image, &mut used)
}

fn search_frames(
    a: &PointConfiguration,
    b: &PointConfiguration,
    frame: &[usize],
    x_cols: &IntMatrix,
    targets: &HashSet<&IntVector>,
    image: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    if image.len() == frame.len() {
        return frame_map_works(a, b, frame, x_cols, targets, image);
    }
    for j in 0..b.len() {
        if used[j] {
            continue;
        }
        image.push(j);
        if b.affine_dim(image) == image.len() - 1 {
            used[j] = true;
            if search_frames(a, b, frame, x_cols, targets, image, used) {
                return true;
            }
            used[j] = false;
        }
        image.pop();
    }
    false
}

fn frame_map_works(
    a: &PointConfiguration,
    b: &PointConfiguration,
    frame: &[usize],
    x_cols: &IntMatrix,
    targets: &HashSet<&IntVector>,
    image: &[usize],
) -> bool {
    let n = a.dim;
    let y: Vec<IntVector> = image[1..].iter().map(|&j| sub(&b.local[j], &b.local[image[0]])).collect();
    // U X = Y, solve row by row: X^T U_row^T = Y_row^T
    let xt = x_cols.transpose();
    let mut u_rows = Vec::with_capacity(n);
    for r in 0..n {
        let rhs: Vec<BigRational> = y.iter().map(|col| BigRational::from_integer(col[r].clone())).collect();
        let Some(row) = linalg::solve_rational(&xt, &rhs).and_then(|s| s.to_integer()) else {
            return false;
        };
        u_rows.push(row);
    }
    let u = IntMatrix::from_rows(n, &u_rows);
    if !u.determinant().abs().is_one() {
        return false;
    }
    let origin_a = &a.local[frame[0]];
    let origin_b = &b.local[image[0]];
    let mut hit = HashSet::new();
    for p in &a.local {
        let q = linalg::add(&u.mul_vec(&sub(p, origin_a)), origin_b);
        if !targets.contains(&q) || !hit.insert(q) {
            return false;
        }
    }
    true
}
