mod common;

use std::sync::Arc;

use dighom::corpus::{random_images, ring8, square, CorpusRng};
use dighom::homology::homology_in;
use dighom::{
    boundary_matrix, homology, homology_generators, induced_homology_map, smith_normal_form, translation,
    verify_homeomorphism_invariance, verify_inclusion_mono, AdjacencySpec, Chain, ChainComplex, DigitalImage,
    DigitalMap, HomologyBasis, HomologyGroup, IntegerMatrix, LatticePoint,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn image(u: usize, n: usize, pts: &[&[i64]]) -> Arc<DigitalImage> {
    Arc::new(DigitalImage::new(AdjacencySpec::new(u, n).unwrap(), pts.iter().map(|c| LatticePoint::from(*c))).unwrap())
}

fn groups(x: &Arc<DigitalImage>, top: usize) -> Vec<HomologyGroup> {
    let complex = ChainComplex::with_max_dim(x.clone(), top + 1);
    (0..=top).map(|n| homology_in(&complex, n).unwrap()).collect()
}

#[test]
fn small_examples() {
    let point = image(1, 2, &[&[0, 0]]);
    assert_eq!(groups(&point, 3).iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["Z", "0", "0", "0"]);
    let pair = image(1, 1, &[&[0], &[1]]);
    assert_eq!(homology(&pair, 0).unwrap(), HomologyGroup::free(1));
    let apart = image(1, 1, &[&[0], &[2]]);
    assert_eq!(homology(&apart, 0).unwrap(), HomologyGroup::free(2));
    let sq4 = Arc::new(square(1).unwrap());
    assert_eq!(homology(&sq4, 1).unwrap().to_string(), "Z");
    assert!(homology(&sq4, 2).unwrap().is_trivial());
    let sq8 = Arc::new(square(2).unwrap());
    assert!(homology(&sq8, 1).unwrap().is_trivial());
    let ring = Arc::new(ring8().unwrap());
    assert_eq!(homology(&ring, 1).unwrap().to_string(), "Z");
}

#[test]
fn homology_matches_rational_and_flag_oracles() {
    for n in 1..=5 {
        for x in common::graph_classes(n) {
            let ours: Vec<usize> = groups(&x, 2).iter().map(|g| g.betti).collect();
            assert_eq!(ours, common::singular_bettis(&x, 2), "{x:?}");
            assert_eq!(ours, common::flag_bettis(&x, 2), "{x:?}");
        }
    }
}

#[test]
fn torsion_matches_rank_drop_mod_p() {
    for x in random_images(90, 40, 6, 3) {
        for (n, g) in groups(&x, 2).into_iter().enumerate() {
            let d_next = boundary_matrix(&x, n + 1);
            for p in [2u64, 3, 5, 7] {
                let divisible = g.torsion.iter().filter(|t| (*t % BigInt::from(p)).is_zero()).count();
                assert_eq!(divisible, common::p_torsion_count(&d_next, p));
            }
        }
    }
}

#[test]
fn zero_dimensional_homology_counts_components() {
    for x in random_images(3, 40, 12, 3) {
        let h0 = homology(&x, 0).unwrap();
        assert_eq!(h0.betti, common::component_count(&x));
        assert!(h0.torsion.is_empty());
    }
}

#[test]
fn generators_are_cycles_with_unit_classes() {
    let mut images = random_images(71, 20, 7, 2);
    images.push(Arc::new(ring8().unwrap()));
    images.push(Arc::new(square(1).unwrap()));
    for x in images {
        for n in 0..=1 {
            let complex = ChainComplex::with_max_dim(x.clone(), n + 1);
            let basis = HomologyBasis::new(&complex, n).unwrap();
            assert_eq!(basis.generators().len(), basis.group().betti + basis.group().torsion.len());
            for (k, g) in basis.generators().iter().enumerate() {
                assert!(g.cycle.boundary().is_zero());
                let class = basis.class_of(&g.cycle).unwrap();
                let unit: Vec<BigInt> = (0..class.len()).map(|i| BigInt::from((i == k) as i64)).collect();
                assert_eq!(class, unit);
            }
        }
    }
}

#[test]
fn class_ignores_added_boundaries() {
    let mut rng = CorpusRng::new(13);
    let mut images = random_images(14, 15, 7, 2);
    images.push(Arc::new(ring8().unwrap()));
    for x in images {
        let complex = ChainComplex::with_max_dim(x.clone(), 2);
        let basis = HomologyBasis::new(&complex, 1).unwrap();
        let upper = complex.basis(2).unwrap();
        for g in basis.generators() {
            let coeffs: Vec<BigInt> = (0..upper.len()).map(|_| BigInt::from(rng.offset(1, 2)[0])).collect();
            let w = Chain::from_coordinates(x.clone(), upper, &coeffs).unwrap();
            let shifted = g.cycle.add(&w.boundary()).unwrap();
            assert_eq!(basis.class_of(&shifted).unwrap(), basis.class_of(&g.cycle).unwrap());
        }
    }
}

#[test]
fn translation_preserves_groups() {
    let mut rng = CorpusRng::new(99);
    for x in random_images(21, 12, 8, 3) {
        let offset = rng.offset(x.dim(), 50);
        let moved = Arc::new(x.translate(&offset).unwrap());
        assert_eq!(groups(&x, 2), groups(&moved, 2));
        let (f, g) = translation(&x, &offset).unwrap();
        assert!(verify_homeomorphism_invariance(&f, &g, 1).unwrap());
    }
}

#[test]
fn identity_induces_identity() {
    for x in random_images(5, 10, 7, 2) {
        for n in 0..=1 {
            assert!(induced_homology_map(&DigitalMap::identity(x.clone()), n).unwrap().is_identity());
        }
    }
}

#[test]
fn point_inclusion_is_injective_on_homology() {
    for x in random_images(55, 10, 7, 2) {
        if x.is_empty() {
            continue;
        }
        let a = Arc::new(x.subimage([x.point(0).clone()]).unwrap());
        for n in 0..=1 {
            assert!(verify_inclusion_mono(&a, &x, n).unwrap());
        }
    }
}

#[test]
fn ring_generator_maps_to_winding_number() {
    let ring = Arc::new(ring8().unwrap());
    let gens = homology_generators(&ring, 1).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].order, None);
    let reflect = DigitalMap::from_fn(ring.clone(), ring.clone(), |p| {
        LatticePoint::from([p.coords()[1], p.coords()[0]])
    })
    .unwrap();
    let m = induced_homology_map(&reflect, 1).unwrap();
    assert_eq!(m.get(0, 0), BigInt::from(-1));
}

#[test]
fn handmade_torsion() {
    let m = IntegerMatrix::from_rows(&[vec![2i64, 0], vec![0, 3]]).unwrap();
    let s = smith_normal_form(&m);
    assert_eq!(s.invariant_factors, [BigInt::from(1), BigInt::from(6)]);
    let m = IntegerMatrix::from_rows(&[vec![2i64, 4], vec![4, 2]]).unwrap();
    assert_eq!(smith_normal_form(&m).torsion(), [BigInt::from(2), BigInt::from(6)]);
}

#[test]
fn dimension_cap_is_reported() {
    let point = image(1, 1, &[&[0]]);
    assert!(homology(&point, 3).is_ok());
    assert!(homology(&point, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn snf_rank_matches_rational_rank(seed in 0u64..10_000) {
        let x = random_images(seed, 1, 7, 3).pop().unwrap();
        for n in 1..=2 {
            let d = boundary_matrix(&x, n);
            prop_assert_eq!(smith_normal_form(&d).rank, common::rational_rank(&d));
        }
    }

    #[test]
    fn betti_numbers_match_flag_complex(seed in 0u64..10_000) {
        let x = random_images(seed, 1, 8, 3).pop().unwrap();
        let ours: Vec<usize> = groups(&x, 1).iter().map(|g| g.betti).collect();
        prop_assert_eq!(ours, common::flag_bettis(&x, 1));
    }
}
