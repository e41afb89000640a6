//! Independent oracles used to cross-check the fast paths: relation lattices,
//! symbolic checks that planes and chart points lie on `X_A`, brute-force
//! Cayley enumeration and the coefficient-matching derivation of `S_u`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::{self, CayleyStructure};
use crate::config::{Face, PointConfiguration};
use crate::error::{Error, Result};
use crate::fano::{self, lambda};
use crate::linalg::{self, integer_kernel_basis, sub, IntVector};
use crate::local::{self, Exponent, HeightCoords};

/// Largest face `brute_force_cayley` accepts.
pub const BRUTE_FORCE_CAP: usize = 10;

/// Default seed for sampled checks.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Lattice of affine relations among the points of a face. Entry `j` of a
/// vector is the coefficient of the `j`-th point of the face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationBasis {
    pub face: Face,
    pub vectors: Vec<IntVector>,
}

impl RelationBasis {
    /// The vector written against the indices of the whole configuration.
    pub fn spread(&self, v: &[BigInt], len: usize) -> IntVector {
        let mut out = vec![BigInt::zero(); len];
        for (j, &u) in self.face.indices().iter().enumerate() {
            out[u] = v[j].clone();
        }
        out
    }
}

pub fn relation_basis(a: &PointConfiguration, tau: &Face) -> RelationBasis {
    RelationBasis {
        face: tau.clone(),
        vectors: integer_kernel_basis(&a.homogenized_subset(tau.indices())),
    }
}

fn sample_relations(basis: &[IntVector], count: usize, seed: u64) -> Vec<IntVector> {
    if basis.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut v = vec![BigInt::zero(); basis[0].len()];
            for b in basis {
                let c = BigInt::from(rng.gen_range(-3i64..=3));
                v = linalg::add(&v, &linalg::scale(&c, b));
            }
            v
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

/// Checks that substituting `y_u -> t^(u - lambda(u)) y_block(u)` turns every
/// binomial of `A` into a formal identity on the plane `L_pi`.
///
/// Relations supported on the face are checked on a lattice basis and on 20
/// random combinations: both the character exponent and the block monomial
/// must agree. Relations of `A` leaving the face must vanish on both sides at
/// once, which the face witness guarantees; that is checked on a basis of
/// `A`'s relations and on random combinations too.
pub fn verify_cayley_plane(a: &PointConfiguration, pi: &CayleyStructure) -> bool {
    let tau = pi.face();
    if !tau.validate(a) {
        return false;
    }
    let covered: BTreeSet<usize> = pi.blocks().iter().flatten().copied().collect();
    let face_set: BTreeSet<usize> = tau.indices().iter().copied().collect();
    if covered != face_set || pi.blocks().iter().map(Vec::len).sum::<usize>() != tau.len() {
        return false;
    }
    let transversal: Vec<usize> = pi.blocks().iter().map(|b| b[0]).collect();
    let d = a.ambient_dim();

    let on_face = relation_basis(a, tau);
    let mut relations = on_face.vectors.clone();
    relations.extend(sample_relations(&on_face.vectors, 20, DEFAULT_SEED));
    for r in &relations {
        let r = on_face.spread(r, a.len());
        let mut character = vec![BigInt::zero(); d];
        let mut block_exp = vec![BigInt::zero(); pi.blocks().len()];
        for (u, coeff) in r.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let lam = lambda(pi, &transversal, u).expect("u lies on the face");
            let m = sub(a.point(u), a.point(lam));
            character = linalg::add(&character, &linalg::scale(coeff, &m));
            block_exp[pi.block_of(u).expect("u lies on the face")] += coeff;
        }
        if character.iter().any(|x| !x.is_zero()) || block_exp.iter().any(|x| !x.is_zero()) {
            return false;
        }
    }

    let whole = integer_kernel_basis(a.homogenized());
    let mut global = whole.clone();
    global.extend(sample_relations(&whole, 20, DEFAULT_SEED ^ 1));
    global.iter().all(|r| {
        let plus_on_face = (0..a.len()).filter(|&u| r[u].is_positive()).all(|u| tau.contains(u));
        let minus_on_face = (0..a.len()).filter(|&u| r[u].is_negative()).all(|u| tau.contains(u));
        plus_on_face == minus_on_face
    })
}

/// Raw enumeration of every set partition of `tau` with at least
/// `l_min + 1` blocks, keeping those whose block sums vanish on every
/// relation of the face.
pub fn brute_force_cayley(a: &PointConfiguration, tau: &Face, l_min: usize) -> Result<Vec<CayleyStructure>> {
    if tau.len() > BRUTE_FORCE_CAP {
        return Err(Error::FaceTooLarge(tau.len()));
    }
    let relations = relation_basis(a, tau).vectors;
    let n = tau.len();
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(
        i: usize,
        blocks: usize,
        labels: &mut Vec<usize>,
        emit: &mut dyn FnMut(&[usize], usize),
    ) {
        if i == labels.len() {
            emit(labels, blocks);
            return;
        }
        for b in 0..=blocks {
            labels[i] = b;
            rec(i + 1, blocks.max(b + 1), labels, emit);
        }
    }
    let mut emit = |labels: &[usize], blocks: usize| {
        if blocks < l_min + 1 {
            return;
        }
        let ok = relations.iter().all(|r| {
            let mut sums = vec![BigInt::zero(); blocks];
            for (j, &b) in labels.iter().enumerate() {
                sums[b] += &r[j];
            }
            sums.iter().all(Zero::is_zero)
        });
        if ok {
            let mut parts = vec![Vec::new(); blocks];
            for (j, &b) in labels.iter().enumerate() {
                parts[b].push(tau.indices()[j]);
            }
            out.push(CayleyStructure::from_parts_unchecked(tau.clone(), parts));
        }
    };
    if n > 0 {
        rec(0, 0, &mut labels, &mut emit);
    }
    out.sort();
    Ok(out)
}

/// One column of the chart matrix: which rows are nonzero and the character
/// multiplying them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartColumn {
    /// Point outside the face.
    Zero,
    /// `chi^m` in the row of `lambda(u)`, which lies in sigma.
    Unit { row: usize, character: IntVector },
    /// `lambda_{v, target} chi^m` in every row `v`.
    Mixed { target: usize, character: IntVector },
}

/// The chart matrix of `Z_{pi,k}` before specialization. Characters are in
/// the lattice coordinates of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartParametrization {
    pub rows: usize,
    pub params: usize,
    pub columns: Vec<ChartColumn>,
}

/// A specialized chart matrix: `rows` linear forms, one column per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneParametrization {
    pub rows: usize,
    pub entries: Vec<Vec<BigRational>>,
}

impl PlaneParametrization {
    pub fn column(&self, u: usize) -> Vec<BigRational> {
        self.entries.iter().map(|row| row[u].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        let cols = self.entries.first().map_or(0, Vec::len);
        let lcm_rows: Vec<IntVector> = self
            .entries
            .iter()
            .map(|row| linalg::RatVector(row.clone()).clear_denominators())
            .collect();
        linalg::IntMatrix::from_rows(cols, &lcm_rows).rank()
    }
}

pub fn chart_parametrization(
    a: &PointConfiguration,
    pi: &CayleyStructure,
    sigma_tilde: &[usize],
    sigma: &[usize],
) -> Result<ChartParametrization> {
    // validates the chart data
    let chart = fano::chart_semigroup(a, pi, sigma_tilde, sigma)?;
    let outside: Vec<usize> = chart
        .sigma_tilde
        .iter()
        .copied()
        .filter(|s| !chart.sigma.contains(s))
        .collect();
    let columns = (0..a.len())
        .map(|u| {
            if !pi.face().contains(u) {
                return ChartColumn::Zero;
            }
            let lam = lambda(pi, &chart.sigma_tilde, u).expect("face point");
            let character = sub(a.local(u), a.local(lam));
            match chart.sigma.iter().position(|&v| v == lam) {
                Some(row) => ChartColumn::Unit { row, character },
                None => ChartColumn::Mixed {
                    target: outside.iter().position(|&w| w == lam).expect("transversal point"),
                    character,
                },
            }
        })
        .collect();
    Ok(ChartParametrization {
        rows: chart.sigma.len(),
        params: outside.len(),
        columns,
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(1i64..=97)), BigInt::from(rng.gen_range(1i64..=97)))
}

fn character_value(t: &[BigRational], m: &[BigInt]) -> Option<BigRational> {
    let mut acc = BigRational::one();
    for (ti, mi) in t.iter().zip(m) {
        let e = mi.to_i32()?;
        acc *= Pow::pow(ti, e);
    }
    Some(acc)
}

impl ChartParametrization {
    /// Specialization for trial `trial`: the random stream depends only on
    /// `(seed, trial)`.
    pub fn specialize(&self, n: usize, seed: u64, trial: u64) -> Option<PlaneParametrization> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let t: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let lam: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|_| (0..self.params).map(|_| random_rational(&mut rng)).collect())
            .collect();
        let mut entries = vec![vec![BigRational::zero(); self.columns.len()]; self.rows];
        for (u, col) in self.columns.iter().enumerate() {
            match col {
                ChartColumn::Zero => {}
                ChartColumn::Unit { row, character } => {
                    entries[*row][u] = character_value(&t, character)?;
                }
                ChartColumn::Mixed { target, character } => {
                    let chi = character_value(&t, character)?;
                    for (v, row) in entries.iter_mut().enumerate() {
                        row[u] = &lam[v][*target] * &chi;
                    }
                }
            }
        }
        Some(PlaneParametrization {
            rows: self.rows,
            entries,
        })
    }
}

/// Polynomial with rational coefficients, keyed by exponent vectors.
pub type Poly = BTreeMap<Exponent, BigRational>;

fn poly_one(nvars: usize) -> Poly {
    BTreeMap::from([(vec![0; nvars], BigRational::one())])
}

/// Multiplies by the linear form `sum coeffs[i] x_i`.
fn mul_linear(p: &Poly, coeffs: &[BigRational]) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        for (i, a) in coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let mut f = e.clone();
            f[i] += 1;
            *out.entry(f).or_insert_with(BigRational::zero) += c * a;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn product_of_forms(forms: &[Vec<BigRational>], exps: &[(usize, u32)], nvars: usize) -> Poly {
    let mut p = poly_one(nvars);
    for &(u, e) in exps {
        for _ in 0..e {
            p = mul_linear(&p, &forms[u]);
        }
    }
    p
}

/// Whether every relation binomial of `A` vanishes identically on the row
/// space of the specialized matrix.
pub fn binomials_vanish(a: &PointConfiguration, plane: &PlaneParametrization) -> bool {
    let forms: Vec<Vec<BigRational>> = (0..a.len()).map(|u| plane.column(u)).collect();
    integer_kernel_basis(a.homogenized()).iter().all(|r| {
        let split = |positive: bool| -> Vec<(usize, u32)> {
            r.iter()
                .enumerate()
                .filter(|(_, x)| if positive { x.is_positive() } else { x.is_negative() })
                .map(|(u, x)| (u, x.abs().to_u32().expect("relation coefficient fits")))
                .collect()
        };
        product_of_forms(&forms, &split(true), plane.rows) == product_of_forms(&forms, &split(false), plane.rows)
    })
}

/// Samples `trials` specializations of the chart and checks each.
pub fn verify_parametrization(a: &PointConfiguration, param: &ChartParametrization, trials: u64, seed: u64) -> bool {
    (0..trials).all(|trial| match param.specialize(a.dim(), seed, trial) {
        Some(plane) => plane.rank() == plane.rows && binomials_vanish(a, &plane),
        None => false,
    })
}

pub fn verify_chart_sample(
    a: &PointConfiguration,
    pi: &CayleyStructure,
    sigma_tilde: &[usize],
    sigma: &[usize],
    trials: u64,
    seed: u64,
) -> Result<bool> {
    let param = chart_parametrization(a, pi, sigma_tilde, sigma)?;
    Ok(verify_parametrization(a, &param, trials, seed))
}

/// Whether the chart semigroup at a face `sigma` is pointed, certified by an
/// explicit functional: the face witness of `sigma` on the lattice part plus
/// a large weight on the Plücker part must be positive on every nonzero
/// generator.
pub fn chart_is_pointed(a: &PointConfiguration, chart: &fano::ChartSemigroup) -> bool {
    let Some(face) = a.face_with_indices(&chart.sigma) else {
        return false;
    };
    let on_lattice: IntVector = a
        .lattice_basis()
        .iter()
        .map(|b| linalg::dot(face.functional(), b))
        .collect();
    let n = a.dim();
    let lattice_value = |g: &IntVector| linalg::dot(&on_lattice, &g[..n]);
    let weight = chart
        .generators
        .iter()
        .map(|g| lattice_value(g).abs())
        .max()
        .unwrap_or_else(BigInt::zero)
        + 1;
    chart
        .generators
        .iter()
        .filter(|g| g.iter().any(|x| !x.is_zero()))
        .all(|g| {
            let tail: BigInt = g[n..].iter().sum();
            let value: BigInt = lattice_value(g) + &weight * tail;
            value.is_positive()
        })
}

/// Standard monomials, up to `max_degree`, of the ideal that the relation
/// `y_u y^(c+) = y_w^h y^(c-)` imposes on the chart coordinates `z_i` of `w`.
///
/// Expands `(sum z_i s_i)^h s^(c-)` and `(sum z_iu s_i) s^(c+)` symbolically
/// and matches coefficients of each `s`-monomial: a match with `z_ju s^(c+ +
/// e_j)` only eliminates `z_ju`; every other term forces its `z`-monomial to
/// vanish.
pub fn s_u_by_elimination(hc: &HeightCoords, max_degree: u32) -> BTreeSet<Exponent> {
    let n = hc.c.len();
    let h = u32::try_from(hc.h).expect("nonnegative height");
    let plus: Vec<u32> = hc.c.iter().map(|&x| x.max(0) as u32).collect();
    let minus: Vec<u32> = hc.c.iter().map(|&x| (-x).max(0) as u32).collect();
    // variables: z_0..z_k then s_0..s_k
    let mut rhs = poly_one(2 * n);
    for _ in 0..h {
        let mut next = Poly::new();
        for (e, c) in &rhs {
            for i in 0..n {
                let mut f = e.clone();
                f[i] += 1;
                f[n + i] += 1;
                *next.entry(f).or_insert_with(BigRational::zero) += c;
            }
        }
        rhs = next;
    }
    let eliminated: BTreeSet<Exponent> = (0..n)
        .map(|j| {
            let mut s = plus.clone();
            s[j] += 1;
            s
        })
        .collect();
    let mut ideal: Vec<Exponent> = Vec::new();
    for (e, c) in &rhs {
        if c.is_zero() {
            continue;
        }
        let s: Exponent = (0..n).map(|i| e[n + i] + minus[i]).collect();
        if !eliminated.contains(&s) {
            ideal.push(e[..n].to_vec());
        }
    }
    (0..=max_degree)
        .flat_map(|d| local::monomials_of_degree(n, d))
        .filter(|a| !ideal.iter().any(|g| g.iter().zip(a).all(|(x, y)| x <= y)))
        .collect()
}

/// Exponents `alpha` of degree `h` such that `z^alpha` appears after
/// multiplying a generic linear form by `s^(c+)` and dividing by `s^(c-)`.
pub fn degree_h_by_expansion(hc: &HeightCoords) -> BTreeSet<Exponent> {
    let n = hc.c.len();
    let generic: Vec<BigRational> = (1..=n as i64).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
    let mut p = poly_one(n);
    for (i, &ci) in hc.c.iter().enumerate() {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        for _ in 0..ci.max(0) {
            p = mul_linear(&p, &e);
        }
    }
    let p = mul_linear(&p, &generic);
    p.keys()
        .filter_map(|e| {
            e.iter()
                .zip(&hc.c)
                .map(|(&x, &c)| u32::try_from(i64::from(x) - c.max(0) + c).ok())
                .collect::<Option<Exponent>>()
        })
        .collect()
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Runs every oracle cross-check on `a` for the given values of `k`.
pub fn run_all(a: &PointConfiguration, ks: &[usize], trials: u64, seed: u64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();

    let mut mismatched = Vec::new();
    let mut skipped = 0;
    for face in a.faces() {
        if face.len() > BRUTE_FORCE_CAP {
            skipped += 1;
            continue;
        }
        let fast = cayley::enumerate_cayley_structures(a, face, 0);
        let slow = brute_force_cayley(a, face, 0)?;
        if fast != slow {
            mismatched.push(face.indices().to_vec());
        }
    }
    out.push(check(
        "brute_force_cayley",
        mismatched.is_empty(),
        format!("mismatched faces {mismatched:?}, {skipped} faces over the cap skipped"),
    ));

    let structures = cayley::all_cayley_structures(a, 0);
    let bad: Vec<String> = structures
        .iter()
        .filter(|p| !verify_cayley_plane(a, p))
        .map(|p| p.canonical_key())
        .collect();
    out.push(check("cayley_plane", bad.is_empty(), format!("failing {bad:?}")));

    for &k in ks {
        let comps = fano::components(a, k)?;
        let smooth_everywhere = a
            .fixed_point_faces(k)
            .iter()
            .all(|s| a.is_smooth_at(s).unwrap_or(false));
        let mut rank_bad = Vec::new();
        let mut sample_bad = Vec::new();
        let mut pointed_bad = Vec::new();
        let mut smooth_bad = Vec::new();
        for c in &comps {
            for s in &c.fixed_points {
                let t = fano::default_transversal(&c.pi, s.indices());
                let chart = fano::chart_semigroup(a, &c.pi, &t, s.indices())?;
                if linalg::lattice_rank(&chart.generators) != c.dimension {
                    rank_bad.push((c.id.clone(), s.indices().to_vec()));
                }
                if !verify_chart_sample(a, &c.pi, &t, s.indices(), trials, seed)? {
                    sample_bad.push((c.id.clone(), s.indices().to_vec()));
                }
                if !chart_is_pointed(a, &chart) {
                    pointed_bad.push((c.id.clone(), s.indices().to_vec()));
                }
                if smooth_everywhere && !fano::chart_is_smooth(&chart) {
                    smooth_bad.push((c.id.clone(), s.indices().to_vec()));
                }
            }
        }
        out.push(check(&format!("chart_rank_k{k}"), rank_bad.is_empty(), format!("failing {rank_bad:?}")));
        out.push(check(&format!("chart_sample_k{k}"), sample_bad.is_empty(), format!("failing {sample_bad:?}")));
        out.push(check(&format!("chart_pointed_k{k}"), pointed_bad.is_empty(), format!("failing {pointed_bad:?}")));
        out.push(check(
            &format!("chart_smooth_k{k}"),
            smooth_bad.is_empty(),
            format!("configuration smooth at all fixed points: {smooth_everywhere}; failing {smooth_bad:?}"),
        ));

        let graph = fano::connectivity_graph_of(a, &comps, k);
        let mut disagree = Vec::new();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let meet = fano::components_intersection(a, &comps[i].pi, &comps[j].pi, k)?;
                if meet.is_empty() == graph.has_edge(i, j) {
                    disagree.push((i, j));
                }
            }
        }
        out.push(check(
            &format!("intersections_k{k}"),
            disagree.is_empty(),
            format!("pairs where intersection and edge rule disagree {disagree:?}"),
        ));
    }

    if a.dim() >= 1 {
        let mut bad = Vec::new();
        let mut tested = 0;
        for s in a.fixed_point_faces(a.dim() - 1) {
            let scheme = match local::local_scheme(a, s.indices()) {
                Ok(x) => x,
                Err(Error::Hypothesis(_)) => continue,
                Err(e) => return Err(e),
            };
            tested += 1;
            for t in &scheme.terms {
                let bound = (t.coords.h + t.coords.c.len() as i64 + 1) as u32;
                let oracle = s_u_by_elimination(&t.coords, bound);
                let fast: BTreeSet<Exponent> = t.set.elements_up_to(bound).into_iter().collect();
                let slice: BTreeSet<Exponent> = fast.iter().filter(|e| e.iter().sum::<u32>() as i64 == t.coords.h).cloned().collect();
                if oracle != fast || slice != degree_h_by_expansion(&t.coords) {
                    bad.push(format!("sigma {:?} u {}", s.indices(), t.u));
                }
            }
            if let (Some(m), Ok(mh)) = (scheme.multiplicity(), local::multiplicity_by_height(a, s.indices())) {
                if m != mh {
                    bad.push(format!("sigma {:?} multiplicity {m} vs height {mh}", s.indices()));
                }
            }
        }
        out.push(check(
            "local_scheme",
            bad.is_empty(),
            format!("{tested} facets tested; failing {bad:?}"),
        ));
    }
    Ok(out)
}
