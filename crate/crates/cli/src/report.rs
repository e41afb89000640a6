//! Report types. JSON is the canonical rendering; field order here is the
//! order in the output.

use num_traits::ToPrimitive;
use serde::Serialize;
use toric_fano::fano::{self, FanoComponent};
use toric_fano::input::Input;
use toric_fano::local::{self, LocalScheme, MonomialSet};
use toric_fano::verify::{self, CheckResult};
use toric_fano::{CayleyStructure, Error, PointConfiguration, Result};

pub const SCHEMA: u32 = 1;

#[derive(Serialize)]
pub struct InputEcho {
    pub name: Option<String>,
    pub points: Vec<Vec<i64>>,
    pub n: usize,
    pub d: usize,
}

impl InputEcho {
    pub fn new(input: &Input) -> Self {
        let a = &input.config;
        InputEcho {
            name: input.name.clone(),
            points: a
                .points()
                .iter()
                .map(|p| p.iter().map(|x| x.to_i64().expect("input coordinates are i64")).collect())
                .collect(),
            n: a.dim(),
            d: a.ambient_dim(),
        }
    }
}

#[derive(Serialize)]
pub struct StructureOut {
    pub face: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&CayleyStructure> for StructureOut {
    fn from(pi: &CayleyStructure) -> Self {
        StructureOut {
            face: pi.face().indices().to_vec(),
            blocks: pi.blocks().to_vec(),
        }
    }
}

#[derive(Serialize)]
pub struct FixedPointOut {
    pub sigma: Vec<usize>,
    pub chart_smooth: bool,
}

#[derive(Serialize)]
pub struct ComponentOut {
    pub id: String,
    pub face: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub l: usize,
    pub dimension: usize,
    pub fixed_points: Vec<FixedPointOut>,
}

#[derive(Serialize)]
pub struct IntersectionOut {
    pub pair: [usize; 2],
    pub common_lower_bounds: Vec<StructureOut>,
}

#[derive(Serialize)]
pub struct KSection {
    pub k: usize,
    pub components: Vec<ComponentOut>,
    pub intersections: Vec<IntersectionOut>,
    pub edges: Vec<[usize; 2]>,
    pub connected_components: usize,
    pub connected: bool,
    pub covered_by_k_planes: bool,
}

#[derive(Serialize)]
pub struct RayOut {
    pub base: Vec<u32>,
    pub direction: usize,
}

#[derive(Serialize)]
pub struct BasisOut {
    pub ideal_generators: Vec<Vec<u32>>,
    pub finite_part: Vec<Vec<u32>>,
    pub rays: Vec<RayOut>,
    pub dimension: usize,
    pub is_finite: bool,
}

impl From<&MonomialSet> for BasisOut {
    fn from(s: &MonomialSet) -> Self {
        BasisOut {
            ideal_generators: s.ideal_part.clone(),
            finite_part: s.finite_part.clone(),
            rays: s
                .rays
                .iter()
                .map(|(b, i)| RayOut {
                    base: b.clone(),
                    direction: *i,
                })
                .collect(),
            dimension: s.dimension(),
            is_finite: s.is_finite,
        }
    }
}

#[derive(Serialize)]
pub struct TermOut {
    pub u: usize,
    pub h: i64,
    pub c: Vec<i64>,
    pub case: String,
}

#[derive(Serialize)]
pub struct LocalOut {
    pub sigma: Vec<usize>,
    pub w: usize,
    pub terms: Vec<TermOut>,
    pub basis: BasisOut,
    pub isolated: bool,
    pub multiplicity: Option<usize>,
    pub multiplicity_by_height: Option<usize>,
}

impl LocalOut {
    pub fn new(a: &PointConfiguration, scheme: &LocalScheme) -> Self {
        LocalOut {
            sigma: scheme.sigma.clone(),
            w: scheme.w,
            terms: scheme
                .terms
                .iter()
                .map(|t| TermOut {
                    u: t.u,
                    h: t.coords.h,
                    c: t.coords.c.clone(),
                    case: t.case.label(),
                })
                .collect(),
            basis: BasisOut::from(&scheme.basis),
            isolated: scheme.is_isolated(),
            multiplicity: scheme.multiplicity(),
            multiplicity_by_height: local::multiplicity_by_height(a, &scheme.sigma).ok(),
        }
    }
}

/// A facet where the codimension-one hypotheses fail.
#[derive(Serialize)]
pub struct SkippedFacet {
    pub sigma: Vec<usize>,
    pub hypothesis: &'static str,
}

#[derive(Serialize)]
pub struct LocalSection {
    pub facets: Vec<LocalOut>,
    pub skipped: Vec<SkippedFacet>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub command: &'static str,
    pub input: InputEcho,
    pub sections: Vec<KSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalSection>,
}

fn component_out(a: &PointConfiguration, c: &FanoComponent) -> Result<ComponentOut> {
    let fixed_points = c
        .fixed_points
        .iter()
        .map(|s| {
            let t = fano::default_transversal(&c.pi, s.indices());
            let chart = fano::chart_semigroup(a, &c.pi, &t, s.indices())?;
            Ok(FixedPointOut {
                sigma: s.indices().to_vec(),
                chart_smooth: fano::chart_is_smooth(&chart),
            })
        })
        .collect::<Result<_>>()?;
    Ok(ComponentOut {
        id: c.id.clone(),
        face: c.pi.face().indices().to_vec(),
        blocks: c.pi.blocks().to_vec(),
        l: c.pi.l(),
        dimension: c.dimension,
        fixed_points,
    })
}

pub fn k_section(a: &PointConfiguration, k: usize) -> Result<KSection> {
    let comps = fano::components(a, k)?;
    let graph = fano::connectivity_graph_of(a, &comps, k);
    let mut intersections = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let meet = fano::components_intersection(a, &comps[i].pi, &comps[j].pi, k)?;
            if !meet.is_empty() {
                intersections.push(IntersectionOut {
                    pair: [i, j],
                    common_lower_bounds: meet.iter().map(StructureOut::from).collect(),
                });
            }
        }
    }
    let connected_components = graph.connected_components();
    Ok(KSection {
        k,
        components: comps.iter().map(|c| component_out(a, c)).collect::<Result<_>>()?,
        intersections,
        edges: graph.edges.iter().map(|&(i, j)| [i, j]).collect(),
        connected_components,
        connected: connected_components <= 1,
        covered_by_k_planes: fano::is_covered_by_k_planes(a, k)?,
    })
}

pub fn local_section(a: &PointConfiguration) -> Result<LocalSection> {
    let mut facets = Vec::new();
    let mut skipped = Vec::new();
    if a.dim() >= 1 {
        for s in a.fixed_point_faces(a.dim() - 1) {
            match local::local_scheme(a, s.indices()) {
                Ok(scheme) => facets.push(LocalOut::new(a, &scheme)),
                Err(Error::Hypothesis(h)) => skipped.push(SkippedFacet {
                    sigma: s.indices().to_vec(),
                    hypothesis: h.code(),
                }),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(LocalSection { facets, skipped })
}

pub fn analyze(input: &Input, ks: &[usize], with_local: bool) -> Result<AnalysisReport> {
    let a = &input.config;
    Ok(AnalysisReport {
        schema: SCHEMA,
        command: "analyze",
        input: InputEcho::new(input),
        sections: ks.iter().map(|&k| k_section(a, k)).collect::<Result<_>>()?,
        local: if with_local { Some(local_section(a)?) } else { None },
    })
}

#[derive(Serialize)]
pub struct MultReport {
    pub schema: u32,
    pub command: &'static str,
    pub input: InputEcho,
    #[serde(flatten)]
    pub local: LocalOut,
}

pub fn mult(input: &Input, sigma: &[usize]) -> Result<MultReport> {
    let scheme = local::local_scheme(&input.config, sigma)?;
    Ok(MultReport {
        schema: SCHEMA,
        command: "mult",
        input: InputEcho::new(input),
        local: LocalOut::new(&input.config, &scheme),
    })
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub command: &'static str,
    pub input: InputEcho,
    pub seed: u64,
    pub trials: u64,
    pub passed: bool,
    pub failures: Vec<String>,
    pub checks: Vec<CheckResult>,
}

/// Checks structures the input file claims to be Cayley.
fn claimed_structures(input: &Input) -> CheckResult {
    let a = &input.config;
    let bad: Vec<usize> = input
        .claims
        .cayley
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let mut face = c.face.clone();
            face.sort_unstable();
            match a.face_with_indices(&face) {
                Some(f) if c.blocks.iter().flatten().all(|&u| u < a.len()) => {
                    let pi = CayleyStructure::from_parts_unchecked(f.clone(), c.blocks.clone());
                    !verify::verify_cayley_plane(a, &pi)
                }
                _ => true,
            }
        })
        .map(|(i, _)| i)
        .collect();
    CheckResult {
        name: "claimed_cayley".into(),
        passed: bad.is_empty(),
        detail: format!("{} claimed, failing claims {bad:?}", input.claims.cayley.len()),
    }
}

pub fn verify(input: &Input, ks: &[usize], trials: u64, seed: u64) -> Result<VerifyReport> {
    let mut checks = verify::run_all(&input.config, ks, trials, seed)?;
    if !input.claims.cayley.is_empty() {
        checks.push(claimed_structures(input));
    }
    let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    Ok(VerifyReport {
        schema: SCHEMA,
        command: "verify",
        input: InputEcho::new(input),
        seed,
        trials,
        passed: failures.is_empty(),
        failures,
        checks,
    })
}
