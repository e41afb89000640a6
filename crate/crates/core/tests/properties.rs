mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use toric_fano::error::{Error, Hypothesis};
use toric_fano::local::{self, MonomialSet};
use toric_fano::{cayley, fano, linalg, verify, PointConfiguration};

fn planar_configuration() -> impl Strategy<Value = PointConfiguration> {
    prop::collection::btree_set((0i64..=3, 0i64..=3), 3..=7).prop_filter_map("needs full dimension", |pts| {
        let rows: Vec<[i64; 2]> = pts.into_iter().map(|(x, y)| [x, y]).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a = PointConfiguration::from_i64(&refs).ok()?;
        (a.dim() == 2).then_some(a)
    })
}

/// Facets where the local scheme is defined.
fn good_facets(a: &PointConfiguration) -> Vec<Vec<usize>> {
    a.fixed_point_faces(a.dim() - 1)
        .into_iter()
        .map(|f| f.indices().to_vec())
        .filter(|s| local::local_scheme(a, s).is_ok())
        .collect()
}

fn downward_closed(set: &MonomialSet, max_degree: u32) -> bool {
    let elems: BTreeSet<Vec<u32>> = set.elements_up_to(max_degree).into_iter().collect();
    elems.iter().all(|e| {
        (0..e.len()).filter(|&i| e[i] > 0).all(|i| {
            let mut f = e.clone();
            f[i] -= 1;
            elems.contains(&f)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_is_an_order_ideal(a in planar_configuration()) {
        for s in good_facets(&a) {
            let scheme = local::local_scheme(&a, &s).unwrap();
            prop_assert!(downward_closed(&scheme.basis, 8));
            for t in &scheme.terms {
                prop_assert!(downward_closed(&t.set, 8));
            }
        }
    }

    #[test]
    fn basis_does_not_depend_on_apex(a in planar_configuration()) {
        for s in good_facets(&a) {
            let apexes = local::valid_apexes(&a, &s).unwrap();
            let first = local::local_scheme_with_apex(&a, &s, apexes[0]).unwrap();
            for &w in &apexes[1..] {
                let other = local::local_scheme_with_apex(&a, &s, w).unwrap();
                prop_assert_eq!(first.is_isolated(), other.is_isolated());
                prop_assert_eq!(first.multiplicity(), other.multiplicity());
                prop_assert_eq!(first.basis.dimension(), other.basis.dimension());
            }
        }
    }

    #[test]
    fn multiplicity_two_ways(a in planar_configuration()) {
        for s in good_facets(&a) {
            let scheme = local::local_scheme(&a, &s).unwrap();
            match (scheme.multiplicity(), local::multiplicity_by_height(&a, &s)) {
                (Some(m), Ok(mh)) => prop_assert_eq!(m, mh),
                (Some(_), Err(Error::Hypothesis(Hypothesis::NoSecondHeightOnePoint))) => {}
                (None, Err(Error::Hypothesis(Hypothesis::NotIsolated))) => {}
                (m, r) => prop_assert!(false, "multiplicity {:?} vs height {:?}", m, r),
            }
        }
    }

    #[test]
    fn elimination_oracle_agrees(a in planar_configuration()) {
        for s in good_facets(&a) {
            for t in local::local_scheme(&a, &s).unwrap().terms {
                let bound = (t.coords.h + 3) as u32;
                let fast: BTreeSet<Vec<u32>> = t.set.elements_up_to(bound).into_iter().collect();
                prop_assert_eq!(verify::s_u_by_elimination(&t.coords, bound), fast);
            }
        }
    }

    #[test]
    fn enumeration_matches_brute_force(a in planar_configuration()) {
        for face in a.faces() {
            prop_assert_eq!(
                cayley::enumerate_cayley_structures(&a, face, 0),
                verify::brute_force_cayley(&a, face, 0).unwrap()
            );
        }
    }

    #[test]
    fn chart_rank_is_component_dimension(a in planar_configuration(), k in 1usize..=2) {
        for c in fano::components(&a, k).unwrap() {
            for s in &c.fixed_points {
                let t = fano::default_transversal(&c.pi, s.indices());
                let chart = fano::chart_semigroup(&a, &c.pi, &t, s.indices()).unwrap();
                prop_assert_eq!(linalg::lattice_rank(&chart.generators), c.dimension);
            }
        }
    }
}

#[test]
fn random_suite_is_reproducible() {
    let a = common::random_configurations(50, common::SEED);
    let b = common::random_configurations(50, common::SEED);
    assert_eq!(a, b);
    assert!(a.iter().all(|c| c.len() <= 8 && c.dim() <= 3));
}

#[test]
fn random_configurations_multiplicities() {
    let mut compared = 0;
    for a in common::random_configurations(50, common::SEED) {
        if a.dim() == 0 {
            continue;
        }
        for s in good_facets(&a) {
            let scheme = local::local_scheme(&a, &s).unwrap();
            if let (Some(m), Ok(mh)) = (scheme.multiplicity(), local::multiplicity_by_height(&a, &s)) {
                assert_eq!(m, mh, "{:?} at {s:?}", a.points());
                compared += 1;
            }
        }
    }
    println!("{compared} isolated fixed points compared");
    assert!(compared > 0);
}
