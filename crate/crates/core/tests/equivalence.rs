use finite_radon::complex::{
    classify, kernel_witness, line_count, obstruction_scan, rank_oracle_admissible, restricted_apply, LineComplex,
};
use finite_radon::{Error, GeometrySpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_complex(rng: &mut ChaCha8Rng, space: GeometrySpace) -> LineComplex {
    let points = space.point_count();
    let ids = rand::seq::index::sample(rng, line_count(points), points).into_vec();
    LineComplex::new(space, ids).unwrap()
}

#[test]
fn scan_matches_rank_on_random_four_dimensional_complexes() {
    let space = GeometrySpace::new(2, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut admissible = 0;
    for _ in 0..100_000 {
        let c = random_complex(&mut rng, space);
        let verdict = classify(&c).admissible();
        assert_eq!(verdict, rank_oracle_admissible(&c), "{:?}", c.pairs());
        admissible += verdict as usize;
    }
    assert!(admissible > 0);
}

#[test]
fn witnesses_are_kernel_vectors() {
    for n in [3, 4, 5] {
        let space = GeometrySpace::new(2, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..2000 {
            let c = random_complex(&mut rng, space);
            let report = obstruction_scan(&c).unwrap();
            match report.witness {
                Some(w) => {
                    assert!(!report.admissible);
                    assert!(!w.is_zero());
                    assert!(restricted_apply(&c, &w).unwrap().is_zero());
                    assert_eq!(kernel_witness(&c).unwrap(), w);
                }
                None => {
                    assert!(report.admissible);
                    assert_eq!(kernel_witness(&c), Err(Error::Admissible));
                    // every component is odd-unicyclic
                    for comp in &c.graph().components {
                        assert_eq!(comp.edges.len(), comp.vertices.len());
                        assert!(comp.cycle.as_ref().is_some_and(|cy| cy.len() % 2 == 1));
                    }
                }
            }
        }
    }
}

#[test]
fn constants_are_not_separated_by_parity() {
    let space = GeometrySpace::new(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ones = finite_radon::DataVector::from_integers(finite_radon::Role::Point, &[1; 8]);
    for _ in 0..100 {
        let c = random_complex(&mut rng, space);
        let g = restricted_apply(&c, &ones).unwrap();
        assert!(g.values.iter().all(|v| *v == finite_radon::data::int(2)));
    }
}
