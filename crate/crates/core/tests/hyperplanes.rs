use finite_radon::enumeration::next_combination;
use finite_radon::hyperplane::{
    admissible_pattern, admissible_rank, capacitor_witness, cavalieri_check, cavalieri_subspace_dim,
    range_membership, solvable, HyperplaneGeometry,
};
use finite_radon::radon::radon_apply;
use finite_radon::{DataVector, GeometrySpace, Role};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn geo(q: u32, n: u32) -> HyperplaneGeometry {
    HyperplaneGeometry::new(GeometrySpace::new(q, n).unwrap()).unwrap()
}

#[test]
fn transforms_satisfy_cavalieri() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (q, n) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        let geo = geo(q, n);
        for _ in 0..50 {
            let v: Vec<i64> = (0..geo.space.point_count()).map(|_| rng.random_range(-9..=9)).collect();
            let f = DataVector::from_integers(Role::Point, &v);
            let report = cavalieri_check(&geo, &radon_apply(&geo.incidence, &f).unwrap()).unwrap();
            assert!(report.holds);
            assert!(report.spread_sums.iter().all(|s| *s == f.sum()));
        }
        assert_eq!(cavalieri_subspace_dim(&geo), geo.plane_count() - (geo.spreads.len() - 1));
    }
    assert_eq!(cavalieri_subspace_dim(&geo(2, 3)), 8);
}

#[test]
fn membership_agrees_with_solvability() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (q, n) in [(2, 3), (3, 2)] {
        let geo = geo(q, n);
        let mut members = 0;
        for trial in 0..1000 {
            let mut v: Vec<i64> = (0..geo.plane_count()).map(|_| rng.random_range(-3..=3)).collect();
            if trial % 2 == 0 {
                // bias half the trials into the range
                let f: Vec<i64> = (0..geo.space.point_count()).map(|_| rng.random_range(-3..=3)).collect();
                let g = radon_apply(&geo.incidence, &DataVector::from_integers(Role::Point, &f)).unwrap();
                v = g.values.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
            }
            let g = DataVector::from_integers(Role::Block, &v);
            let verdict = range_membership(&geo, &g).unwrap();
            assert_eq!(verdict, solvable(&geo, &g).unwrap());
            members += verdict as usize;
        }
        assert!(members >= 500);
    }
}

#[test]
fn pattern_and_rank_agree_on_every_complex() {
    let geo = geo(2, 3);
    let mut c: Vec<usize> = (0..8).collect();
    let (mut total, mut admissible) = (0, 0);
    loop {
        let pattern = admissible_pattern(&geo, &c).unwrap().admissible;
        assert_eq!(pattern, admissible_rank(&geo, &c).unwrap(), "{c:?}");
        total += 1;
        admissible += pattern as usize;
        if !next_combination(&mut c, 14) {
            break;
        }
    }
    assert_eq!(total, 3003);
    assert_eq!(admissible, 448);
}

#[test]
fn pattern_against_rank_for_three_element_field() {
    let geo = geo(3, 2);
    let mut c: Vec<usize> = (0..9).collect();
    let (mut total, mut disagreements, mut admissible) = (0, 0, 0);
    loop {
        let pattern = admissible_pattern(&geo, &c).unwrap().admissible;
        let rank = admissible_rank(&geo, &c).unwrap();
        disagreements += (pattern != rank) as usize;
        admissible += rank as usize;
        total += 1;
        if !next_combination(&mut c, 12) {
            break;
        }
    }
    assert_eq!(total, 220);
    eprintln!("q = 3: {admissible} rank-admissible, {disagreements} pattern disagreements");
    assert_eq!(disagreements, 0);
}

#[test]
fn capacitor_kills_other_planes() {
    let geo = geo(2, 3);
    for spread in &geo.spreads {
        let (h1, h2) = (spread.flats[0], spread.flats[1]);
        let f = capacitor_witness(&geo, h1, h2).unwrap();
        let g = radon_apply(&geo.incidence, &f).unwrap();
        let zeros = g.values.iter().filter(|v| **v == finite_radon::data::int(0)).count();
        assert_eq!(zeros, 12);
        assert_eq!(g.values[h1], finite_radon::data::int(4));
        assert_eq!(g.values[h2], finite_radon::data::int(-4));
    }
}
