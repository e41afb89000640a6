//! Scheme structure of `F_k(X_A)` near a torus-fixed point when `k` is one
//! less than the dimension of `X_A`.
//!
//! Fix a facet `sigma = {v_0, ..., v_k}` of `A` that is an empty simplex, and
//! a point `w` such that `w - v_0, v_1 - v_0, ..., v_k - v_0` is a basis of
//! `M_A`. Every `u` then has integer coordinates `(h, c)` with
//! `u = v_0 + h (w - v_0) - sum c_i (v_i - v_0)`. The coordinate ring of the
//! Plücker chart around `sigma` has a monomial basis `z^alpha` indexed by the
//! intersection of sets `S_u` that only depend on `(h, c)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::config::PointConfiguration;
use crate::error::{Error, Hypothesis, Result};
use crate::linalg::{self, sub, IntMatrix};

/// Upper bound on the number of degree-`h` monomials a single `S_u` may
/// require.
pub const MONOMIAL_CAP: usize = 20_000;

/// Exponent vector of a monomial in `z_0, ..., z_k`.
pub type Exponent = Vec<u32>;

fn degree(a: &[u32]) -> u64 {
    a.iter().map(|&x| u64::from(x)).sum()
}

fn divides(g: &[u32], a: &[u32]) -> bool {
    g.iter().zip(a).all(|(x, y)| x <= y)
}

fn graded_key(a: &Exponent) -> (u64, Exponent) {
    (degree(a), a.clone())
}

/// All exponent vectors in `n` variables of total degree `d`.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for x in (0..=left).rev() {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn binomial(n: u64, r: u64) -> Option<u64> {
    let r = r.min(n - r);
    let mut acc: u64 = 1;
    for i in 0..r {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// The standard monomials of a monomial ideal, that is, the exponents not
/// divisible by any generator.
///
/// Besides the generators the set carries an explicit description: the
/// elements lying on no infinite ray `alpha + N e_i` inside the set, and, when
/// the set has dimension at most one, the base points of those rays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialSet {
    pub nvars: usize,
    /// Minimal generators of the complementary ideal, graded-lex sorted.
    pub ideal_part: Vec<Exponent>,
    /// Elements that are not on any infinite axis-parallel ray of the set.
    pub finite_part: Vec<Exponent>,
    /// Pairs `(beta, i)` with `beta_i = 0` and `beta + N e_i` in the set.
    /// Empty when the set has dimension two or more.
    pub rays: Vec<(Exponent, usize)>,
    pub is_finite: bool,
}

impl MonomialSet {
    /// The set of standard monomials of the ideal generated by `gens`.
    pub fn from_ideal(nvars: usize, gens: Vec<Exponent>) -> Self {
        let ideal_part = minimize(gens);
        let is_finite = (0..nvars).all(|i| {
            ideal_part
                .iter()
                .any(|g| g[i] > 0 && g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
        });
        let mut set = MonomialSet {
            nvars,
            ideal_part,
            finite_part: Vec::new(),
            rays: Vec::new(),
            is_finite,
        };
        let bound: Vec<u32> = (0..nvars)
            .map(|j| set.ideal_part.iter().map(|g| g[j]).max().unwrap_or(0))
            .collect();
        let on_ray = |s: &MonomialSet, a: &Exponent, i: usize| {
            let mut top = a.clone();
            top[i] = bound[i];
            s.contains(&top)
        };
        let boxed = set.standard_in_box(&bound, None);
        let finite: Vec<Exponent> = boxed
            .iter()
            .filter(|a| (0..nvars).all(|i| !on_ray(&set, a, i)))
            .cloned()
            .collect();
        set.finite_part = finite;
        if set.dimension() == 1 {
            let mut rays = Vec::new();
            for i in 0..nvars {
                for b in set.standard_in_box(&bound, Some(i)) {
                    if on_ray(&set, &b, i) {
                        rays.push((b, i));
                    }
                }
            }
            rays.sort_by_key(|(b, i)| (*i, graded_key(b)));
            set.rays = rays;
        }
        set
    }

    /// All of `N^nvars`.
    pub fn everything(nvars: usize) -> Self {
        Self::from_ideal(nvars, Vec::new())
    }

    /// Standard monomials `alpha` with `alpha_j < bound_j` for all `j`, except
    /// that the coordinate `pinned` (if any) is held at zero.
    fn standard_in_box(&self, bound: &[u32], pinned: Option<usize>) -> Vec<Exponent> {
        let n = self.nvars;
        let zero = vec![0u32; n];
        let inside = |a: &Exponent| {
            (0..n).all(|j| if Some(j) == pinned { a[j] == 0 } else { a[j] < bound[j] })
        };
        if !self.contains(&zero) {
            return Vec::new();
        }
        let mut seen: HashSet<Exponent> = HashSet::new();
        let mut queue = VecDeque::from([zero.clone()]);
        seen.insert(zero);
        while let Some(a) = queue.pop_front() {
            for i in 0..n {
                let mut b = a.clone();
                b[i] += 1;
                if inside(&b) && !seen.contains(&b) && self.contains(&b) {
                    seen.insert(b.clone());
                    queue.push_back(b);
                }
            }
        }
        let mut out: Vec<Exponent> = seen.into_iter().collect();
        out.sort_by_key(graded_key);
        out
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        !self.ideal_part.iter().any(|g| divides(g, a))
    }

    /// Intersection of standard monomial sets, i.e. the sum of the ideals.
    pub fn intersect(&self, other: &MonomialSet) -> MonomialSet {
        assert_eq!(self.nvars, other.nvars, "monomial sets in different rings");
        let gens = self.ideal_part.iter().chain(&other.ideal_part).cloned().collect();
        MonomialSet::from_ideal(self.nvars, gens)
    }

    /// Krull dimension of the quotient: the largest number of variables
    /// spanning a coordinate subspace that misses the ideal.
    pub fn dimension(&self) -> usize {
        (0..=self.nvars)
            .rev()
            .find(|&size| {
                (0..self.nvars).combinations(size).any(|vars| {
                    !self
                        .ideal_part
                        .iter()
                        .any(|g| g.iter().enumerate().all(|(j, &x)| x == 0 || vars.contains(&j)))
                })
            })
            .unwrap_or(0)
    }

    /// Number of elements if finite.
    pub fn len(&self) -> Option<usize> {
        self.is_finite.then_some(self.finite_part.len())
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite && self.finite_part.is_empty()
    }

    /// Elements of total degree at most `max_degree`, graded-lex sorted.
    pub fn elements_up_to(&self, max_degree: u32) -> Vec<Exponent> {
        (0..=max_degree)
            .flat_map(|d| monomials_of_degree(self.nvars, d))
            .filter(|a| self.contains(a))
            .collect()
    }
}

/// Removes non-minimal and repeated generators.
fn minimize(mut gens: Vec<Exponent>) -> Vec<Exponent> {
    gens.sort_by_key(graded_key);
    gens.dedup();
    let mut out: Vec<Exponent> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| divides(m, &g)) {
            out.push(g);
        }
    }
    out
}

/// Height and coefficients of a point relative to `(sigma, w)`. `c[0]` is
/// `c_0 = h - 1 - sum_{i>0} c_i`; `c[i]` for `i >= 1` are the coefficients
/// of `v_i - v_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightCoords {
    pub h: i64,
    pub c: Vec<i64>,
}

impl HeightCoords {
    pub fn k(&self) -> usize {
        self.c.len() - 1
    }

    pub fn c0(&self) -> i64 {
        self.c[0]
    }
}

/// Which shape `S_u` takes. Indices refer to positions in `sigma`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SuCase {
    /// `c_j = -1`, `c_l = h`, all other entries zero: an axis.
    Axis { j: usize, l: usize },
    /// `c_j = -1`, the rest in `[0, h)`: one extra point.
    Point { j: usize },
    /// Only `c_j` may be nonzero.
    Thick { j: usize },
    /// Exactly two positive entries, the rest zero.
    TwoPositive { j: usize, l: usize },
    /// All entries nonnegative, at least three nonzero.
    ManyPositive,
    /// Nothing beyond the monomials of degree below `h`.
    Truncated,
}

impl SuCase {
    /// Numeric label 1 to 6.
    pub fn number(&self) -> u8 {
        match self {
            SuCase::Axis { .. } => 1,
            SuCase::Point { .. } => 2,
            SuCase::Thick { .. } => 3,
            SuCase::TwoPositive { .. } => 4,
            SuCase::ManyPositive => 5,
            SuCase::Truncated => 6,
        }
    }

    pub fn label(&self) -> String {
        format!("case{}", self.number())
    }
}

/// Determines the shape of `S_u` from `(h, c)`.
pub fn classify(hc: &HeightCoords) -> SuCase {
    let c = &hc.c;
    let h = hc.h;
    let negatives: Vec<usize> = (0..c.len()).filter(|&i| c[i] < 0).collect();
    let positives: Vec<usize> = (0..c.len()).filter(|&i| c[i] > 0).collect();
    if let [j] = negatives[..] {
        if c[j] == -1 {
            if let [l] = positives[..] {
                if c[l] == h {
                    return SuCase::Axis { j, l };
                }
            }
            if positives.iter().all(|&i| c[i] < h) {
                return SuCase::Point { j };
            }
        }
        return SuCase::Truncated;
    }
    if !negatives.is_empty() {
        return SuCase::Truncated;
    }
    match positives[..] {
        [] => SuCase::Thick { j: 0 },
        [j] => SuCase::Thick { j },
        [j, l] => SuCase::TwoPositive { j, l },
        _ => SuCase::ManyPositive,
    }
}

/// Membership in `S_u` straight from the case description.
pub fn s_u_contains(hc: &HeightCoords, case: SuCase, a: &[u32]) -> bool {
    let d = degree(a);
    let h = hc.h.max(0) as u64;
    if d < h {
        return true;
    }
    let n = a.len();
    let plus = |extra: &[usize]| -> Option<Exponent> {
        let mut v: Vec<i64> = hc.c.clone();
        for &i in extra {
            v[i] += 1;
        }
        v.iter().map(|&x| u32::try_from(x).ok()).collect()
    };
    match case {
        SuCase::Axis { l, .. } => (0..n).all(|i| i == l || a[i] == 0),
        SuCase::Point { j } => plus(&[j]).as_deref() == Some(a),
        SuCase::Thick { j } => (0..n).filter(|&i| i != j).map(|i| u64::from(a[i])).sum::<u64>() <= 1,
        SuCase::TwoPositive { j, l } => {
            (0..n).any(|i| plus(&[i]).as_deref() == Some(a)) || plus(&[j, l]).as_deref() == Some(a)
        }
        SuCase::ManyPositive => (0..n).any(|i| plus(&[i]).as_deref() == Some(a)),
        SuCase::Truncated => false,
    }
}

/// `S_u` as the standard monomials of a monomial ideal generated in degrees
/// `h` and `h + 1`.
pub fn s_u(hc: &HeightCoords) -> Result<MonomialSet> {
    let n = hc.c.len();
    let h = u32::try_from(hc.h).map_err(|_| Error::Overflow)?;
    let count = binomial(u64::from(h) + n as u64 - 1, n as u64 - 1).unwrap_or(u64::MAX);
    if count > MONOMIAL_CAP as u64 {
        return Err(Error::TooManyMonomials(usize::try_from(count).unwrap_or(usize::MAX)));
    }
    let case = classify(hc);
    let top = monomials_of_degree(n, h);
    let (inside, mut gens): (Vec<Exponent>, Vec<Exponent>) =
        top.into_iter().partition(|a| s_u_contains(hc, case, a));
    let inside_set: HashSet<&Exponent> = inside.iter().collect();
    let mut next = BTreeSet::new();
    for a in &inside {
        for i in 0..n {
            let mut b = a.clone();
            b[i] += 1;
            if s_u_contains(hc, case, &b) {
                continue;
            }
            let all_below_inside = (0..n).filter(|&j| b[j] > 0).all(|j| {
                let mut c = b.clone();
                c[j] -= 1;
                inside_set.contains(&c)
            });
            if all_below_inside {
                next.insert(b);
            }
        }
    }
    gens.extend(next);
    Ok(MonomialSet::from_ideal(n, gens))
}

fn to_i64(x: &BigRational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::Hypothesis(Hypothesis::NoValidApex));
    }
    x.to_integer().to_i64().ok_or(Error::Overflow)
}

/// Checks the codimension-one hypotheses at `sigma` and returns its points in
/// increasing index order.
fn check_sigma(a: &PointConfiguration, sigma: &[usize]) -> Result<Vec<usize>> {
    a.check_indices(sigma)?;
    let mut s = sigma.to_vec();
    s.sort_unstable();
    s.dedup();
    let face = a
        .face_with_indices(&s)
        .ok_or(Error::Hypothesis(Hypothesis::NotAFace))?;
    if !a.is_empty_simplex(&s) {
        return Err(Error::Hypothesis(Hypothesis::NotEmptySimplex));
    }
    if a.dim() == 0 || s.len() != a.dim() {
        return Err(Error::Hypothesis(Hypothesis::NotCodimensionOne));
    }
    if !a.is_smooth_at(face)? {
        return Err(Error::Hypothesis(Hypothesis::NotSmooth));
    }
    Ok(s)
}

fn frame(a: &PointConfiguration, sigma: &[usize], w: usize) -> IntMatrix {
    let v0 = a.local(sigma[0]);
    let mut cols = vec![sub(a.local(w), v0)];
    cols.extend(sigma[1..].iter().map(|&v| sub(a.local(v), v0)));
    IntMatrix::from_columns(a.dim(), &cols)
}

fn solve_frame(a: &PointConfiguration, sigma: &[usize], m: &IntMatrix, u: usize) -> Result<HeightCoords> {
    let rhs: Vec<BigRational> = sub(a.local(u), a.local(sigma[0]))
        .into_iter()
        .map(BigRational::from_integer)
        .collect();
    let x = linalg::solve_rational(m, &rhs).ok_or(Error::Hypothesis(Hypothesis::NoValidApex))?;
    let h = to_i64(&x.0[0])?;
    if h < 0 {
        return Err(Error::Hypothesis(Hypothesis::NoValidApex));
    }
    let mut c = vec![0i64];
    for xi in &x.0[1..] {
        c.push(-to_i64(xi)?);
    }
    let rest: i64 = c[1..].iter().try_fold(0i64, |acc, &x| acc.checked_add(x)).ok_or(Error::Overflow)?;
    c[0] = h
        .checked_sub(1)
        .and_then(|v| v.checked_sub(rest))
        .ok_or(Error::Overflow)?;
    Ok(HeightCoords { h, c })
}

fn apex_is_valid(a: &PointConfiguration, sigma: &[usize], w: usize) -> bool {
    let m = frame(a, sigma, w);
    m.determinant().abs().is_one() && (0..a.len()).all(|u| solve_frame(a, sigma, &m, u).is_ok())
}

/// Every point `w` for which the height expansion exists, is integral and
/// has nonnegative height for all of `A`, in the order of their coordinates.
pub fn valid_apexes(a: &PointConfiguration, sigma: &[usize]) -> Result<Vec<usize>> {
    let s = check_sigma(a, sigma)?;
    let mut out: Vec<usize> = (0..a.len())
        .filter(|w| !s.contains(w) && apex_is_valid(a, &s, *w))
        .collect();
    out.sort_by(|&x, &y| a.point(x).cmp(a.point(y)));
    Ok(out)
}

/// The valid apex with the lexicographically smallest coordinates.
pub fn choose_w(a: &PointConfiguration, sigma: &[usize]) -> Result<usize> {
    valid_apexes(a, sigma)?
        .first()
        .copied()
        .ok_or(Error::Hypothesis(Hypothesis::NoValidApex))
}

/// `(h, c)` of `u` relative to `sigma` (ordered by index) and `w`.
pub fn height_coordinates(a: &PointConfiguration, sigma: &[usize], w: usize, u: usize) -> Result<HeightCoords> {
    let s = check_sigma(a, sigma)?;
    a.check_indices(&[w, u])?;
    if s.contains(&w) || !apex_is_valid(a, &s, w) {
        return Err(Error::Hypothesis(Hypothesis::NoValidApex));
    }
    solve_frame(a, &s, &frame(a, &s, w), u)
}

/// One point's contribution to the local ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalTerm {
    pub u: usize,
    pub coords: HeightCoords,
    pub case: SuCase,
    pub set: MonomialSet,
}

/// Everything computed about the Plücker chart at `sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalScheme {
    pub sigma: Vec<usize>,
    pub w: usize,
    pub terms: Vec<LocalTerm>,
    pub basis: MonomialSet,
}

impl LocalScheme {
    pub fn is_isolated(&self) -> bool {
        self.basis.is_finite
    }

    pub fn multiplicity(&self) -> Option<usize> {
        self.basis.len()
    }
}

/// Local scheme data at `sigma` with the default apex.
pub fn local_scheme(a: &PointConfiguration, sigma: &[usize]) -> Result<LocalScheme> {
    let w = choose_w(a, sigma)?;
    local_scheme_with_apex(a, sigma, w)
}

/// Local scheme data at `sigma` with a given valid apex `w`.
pub fn local_scheme_with_apex(a: &PointConfiguration, sigma: &[usize], w: usize) -> Result<LocalScheme> {
    let s = check_sigma(a, sigma)?;
    a.check_indices(&[w])?;
    if s.contains(&w) || !apex_is_valid(a, &s, w) {
        return Err(Error::Hypothesis(Hypothesis::NoValidApex));
    }
    let m = frame(a, &s, w);
    let nvars = s.len();
    let mut basis = MonomialSet::everything(nvars);
    let mut terms = Vec::new();
    for u in (0..a.len()).filter(|u| *u != w && !s.contains(u)) {
        let coords = solve_frame(a, &s, &m, u)?;
        let case = classify(&coords);
        let set = s_u(&coords)?;
        basis = basis.intersect(&set);
        terms.push(LocalTerm { u, coords, case, set });
    }
    Ok(LocalScheme {
        sigma: s,
        w,
        terms,
        basis,
    })
}

/// Monomial basis of the coordinate ring of the Plücker chart at `sigma`.
pub fn local_ring_basis(a: &PointConfiguration, sigma: &[usize]) -> Result<MonomialSet> {
    Ok(local_scheme(a, sigma)?.basis)
}

/// Whether the fixed point of `sigma` is an isolated point of `F_k(X_A)`.
pub fn is_isolated(a: &PointConfiguration, sigma: &[usize]) -> Result<bool> {
    Ok(local_scheme(a, sigma)?.is_isolated())
}

/// Length of the local ring at an isolated fixed point.
pub fn multiplicity(a: &PointConfiguration, sigma: &[usize]) -> Result<usize> {
    local_scheme(a, sigma)?
        .multiplicity()
        .ok_or(Error::Hypothesis(Hypothesis::NotIsolated))
}

/// The multiplicity read off from heights: the smallest `m >= 1` such that
/// the points of height at most `m` do not all lie in one of the cones
/// `sigma + N (w - v_i)`.
pub fn multiplicity_by_height(a: &PointConfiguration, sigma: &[usize]) -> Result<usize> {
    let scheme = local_scheme(a, sigma)?;
    if !scheme.is_isolated() {
        return Err(Error::Hypothesis(Hypothesis::NotIsolated));
    }
    let has_second = scheme.terms.iter().any(|t| t.coords.h == 1);
    if !has_second {
        return Err(Error::Hypothesis(Hypothesis::NoSecondHeightOnePoint));
    }
    let s = &scheme.sigma;
    let w = a.point(scheme.w);
    let sigma_points: HashSet<&Vec<BigInt>> = s.iter().map(|&v| a.point(v)).collect();
    // points of A outside sigma with their heights (w has height one)
    let mut heights: Vec<(usize, i64)> = scheme.terms.iter().map(|t| (t.u, t.coords.h)).collect();
    heights.push((scheme.w, 1));
    let in_cone = |u: usize, h: i64, i: usize| {
        let step = sub(w, a.point(s[i]));
        let shifted = sub(a.point(u), &linalg::scale(&BigInt::from(h), &step));
        sigma_points.contains(&shifted)
    };
    let max_h = heights.iter().map(|&(_, h)| h).max().unwrap_or(1);
    for m in 1..=max_h {
        let contained = (0..s.len()).any(|i| {
            heights
                .iter()
                .filter(|&&(_, h)| h <= m)
                .all(|&(u, h)| in_cone(u, h, i))
        });
        if !contained {
            return usize::try_from(m).map_err(|_| Error::Overflow);
        }
    }
    Err(Error::Hypothesis(Hypothesis::NotIsolated))
}

/// Exponent vectors of degree `h` of the form `c + e_j` that are
/// nonnegative.
pub fn degree_h_slice(hc: &HeightCoords) -> BTreeSet<Exponent> {
    (0..hc.c.len())
        .filter_map(|j| {
            let mut v = hc.c.clone();
            v[j] += 1;
            v.iter().map(|&x| u32::try_from(x).ok()).collect::<Option<Exponent>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples;

    fn e(v: &[u32]) -> Exponent {
        v.to_vec()
    }

    fn hc(h: i64, c: &[i64]) -> HeightCoords {
        HeightCoords { h, c: c.to_vec() }
    }

    #[test]
    fn surface_apex_and_heights() {
        let a = examples::surface();
        let w = choose_w(&a, &[0, 2]).unwrap();
        assert_eq!(a.point(w), &linalg::to_big(&[0, 1]));
        assert_eq!(height_coordinates(&a, &[0, 2], w, 3).unwrap(), hc(2, &[2, -1]));
        assert_eq!(height_coordinates(&a, &[0, 2], w, w).unwrap(), hc(1, &[0, 0]));
        assert_eq!(height_coordinates(&a, &[0, 2], w, 2).unwrap(), hc(0, &[0, -1]));
        assert_eq!(height_coordinates(&a, &[0, 2], w, 0).unwrap(), hc(0, &[-1, 0]));
    }

    #[test]
    fn square_apex_tie_break() {
        let a = examples::square();
        assert_eq!(valid_apexes(&a, &[0, 1]).unwrap(), vec![2, 3]);
        assert_eq!(choose_w(&a, &[0, 1]).unwrap(), 2);
    }

    #[test]
    fn hypotheses() {
        let a = examples::surface();
        let code = |r: Result<usize>| match r {
            Err(Error::Hypothesis(h)) => h,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(code(choose_w(&a, &[0, 3])), Hypothesis::NotAFace);
        assert_eq!(code(choose_w(&a, &[0])), Hypothesis::NotCodimensionOne);
        // the right edge is an empty simplex of A but (1,1) is missing
        assert_eq!(code(choose_w(&a, &[2, 3])), Hypothesis::NotSmooth);
        let line = PointConfiguration::from_i64(&[&[0], &[1], &[2]]).unwrap();
        assert_eq!(code(choose_w(&line, &[0, 1])), Hypothesis::NotAFace);
        let b = PointConfiguration::from_i64(&[&[0, 0], &[2, 0], &[0, 1], &[1, 0]]).unwrap();
        assert_eq!(code(choose_w(&b, &[0, 1, 3])), Hypothesis::NotEmptySimplex);
    }

    #[test]
    fn classification() {
        assert_eq!(classify(&hc(2, &[2, -1])), SuCase::Axis { j: 1, l: 0 });
        assert_eq!(classify(&hc(2, &[3, -2])), SuCase::Truncated);
        assert_eq!(classify(&hc(1, &[2, -2])), SuCase::Truncated);
        assert_eq!(classify(&hc(3, &[-1, 1, 2])), SuCase::Point { j: 0 });
        assert_eq!(classify(&hc(3, &[0, 2, 0])), SuCase::Thick { j: 1 });
        assert_eq!(classify(&hc(4, &[1, 2, 0])), SuCase::TwoPositive { j: 0, l: 1 });
        assert_eq!(classify(&hc(4, &[1, 1, 1])), SuCase::ManyPositive);
        assert_eq!(classify(&hc(3, &[-1, -1, 4])), SuCase::Truncated);
    }

    #[test]
    fn surface_axis_set() {
        let s = s_u(&hc(2, &[2, -1])).unwrap();
        assert!(!s.is_finite);
        assert_eq!(s.ideal_part, vec![e(&[0, 2]), e(&[1, 1])]);
        assert_eq!(s.finite_part, vec![e(&[0, 1])]);
        assert_eq!(s.rays, vec![(e(&[0, 0]), 0)]);
        for d in 0..6 {
            assert!(s.contains(&[d, 0]));
        }
    }

    #[test]
    fn truncated_set() {
        let s = s_u(&hc(2, &[3, -2])).unwrap();
        assert!(s.is_finite);
        assert_eq!(s.finite_part, vec![e(&[0, 0]), e(&[0, 1]), e(&[1, 0])]);
    }

    #[test]
    fn case_formulas_match_ideals() {
        let samples = [
            hc(2, &[2, -1]),
            hc(3, &[-1, 1, 2]),
            hc(3, &[0, 2, 0]),
            hc(1, &[0, 0, 0, 0]),
            hc(4, &[1, 2, 0]),
            hc(4, &[0, 1, 2, 0]),
            hc(4, &[1, 1, 1]),
            hc(5, &[1, 1, 1, 1]),
            hc(3, &[-1, -1, 4]),
            hc(1, &[-1, 1]),
            hc(1, &[0]),
        ];
        for x in samples {
            let case = classify(&x);
            let set = s_u(&x).unwrap();
            let bound = x.h as u32 + x.c.len() as u32 + 2;
            for d in 0..=bound {
                for a in monomials_of_degree(x.c.len(), d) {
                    assert_eq!(set.contains(&a), s_u_contains(&x, case, &a), "{x:?} {a:?}");
                }
            }
            let top: BTreeSet<Exponent> = monomials_of_degree(x.c.len(), x.h as u32)
                .into_iter()
                .filter(|a| set.contains(a))
                .collect();
            assert_eq!(top, degree_h_slice(&x), "{x:?}");
        }
    }

    #[test]
    fn surface_local_scheme() {
        let a = examples::surface();
        let ls = local_scheme(&a, &[0, 2]).unwrap();
        assert!(!ls.is_isolated());
        assert_eq!(ls.terms.len(), 1);
        assert_eq!(ls.terms[0].case, SuCase::Axis { j: 1, l: 0 });
        assert_eq!(ls.basis.rays, vec![(e(&[0, 0]), 0)]);
        assert_eq!(ls.basis.finite_part, vec![e(&[0, 1])]);
        assert!(matches!(multiplicity(&a, &[0, 2]), Err(Error::Hypothesis(Hypothesis::NotIsolated))));
    }

    #[test]
    fn multiplicities() {
        let a = examples::double_line();
        let b = local_ring_basis(&a, &[0, 1]).unwrap();
        assert_eq!(b.finite_part, vec![e(&[0, 0]), e(&[1, 0])]);
        assert_eq!(multiplicity(&a, &[0, 1]).unwrap(), 2);
        assert_eq!(multiplicity_by_height(&a, &[0, 1]).unwrap(), 2);

        let a = examples::simple_line();
        assert_eq!(multiplicity(&a, &[0, 1]).unwrap(), 1);
        assert_eq!(multiplicity_by_height(&a, &[0, 1]).unwrap(), 1);
    }

    #[test]
    fn bare_apex_gives_polynomial_ring() {
        let a = examples::triangle();
        let ls = local_scheme(&a, &[0, 1]).unwrap();
        assert!(ls.terms.is_empty());
        assert!(!ls.is_isolated());
        assert!(ls.basis.ideal_part.is_empty());
        assert_eq!(ls.basis.dimension(), 2);
        assert!(matches!(
            multiplicity_by_height(&a, &[0, 1]),
            Err(Error::Hypothesis(Hypothesis::NotIsolated))
        ));
    }

    #[test]
    fn monomial_set_basics() {
        let s = MonomialSet::from_ideal(2, vec![e(&[2, 0]), e(&[0, 2]), e(&[2, 1])]);
        assert!(s.is_finite);
        assert_eq!(s.ideal_part, vec![e(&[0, 2]), e(&[2, 0])]);
        assert_eq!(s.len(), Some(4));
        let t = MonomialSet::from_ideal(2, vec![e(&[1, 1])]);
        assert_eq!(t.dimension(), 1);
        assert_eq!(t.rays, vec![(e(&[0, 0]), 0), (e(&[0, 0]), 1)]);
        assert!(t.finite_part.is_empty());
        let u = s.intersect(&t);
        assert_eq!(u.finite_part, vec![e(&[0, 0]), e(&[0, 1]), e(&[1, 0])]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }
}
