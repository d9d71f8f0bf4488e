use posetcode::poset::Poset;
use posetcode::radius::{packing_radius_bounds, packing_radius_exact};
use posetcode::{Code, PrimeField, DEFAULT_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn antichain_matches_hamming_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let k = rng.gen_range(1..=n);
        let c = Code::random(PrimeField::BINARY, n, k, &mut rng).unwrap();
        let p = Poset::antichain(n).unwrap();
        let d = c.min_distance(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            packing_radius_exact(&c, &p, DEFAULT_BUDGET).unwrap(),
            (d - 1) / 2
        );
    }
}

#[test]
fn chain_radius_is_distance_minus_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..60 {
        let n = rng.gen_range(1..=9);
        let k = rng.gen_range(1..=n);
        let c = Code::random(PrimeField::BINARY, n, k, &mut rng).unwrap();
        let p = Poset::chain(n).unwrap();
        let d = c.min_distance(&p, DEFAULT_BUDGET).unwrap();
        assert_eq!(packing_radius_exact(&c, &p, DEFAULT_BUDGET).unwrap(), d - 1);
    }
}

#[test]
fn bounds_bracket_exact_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let k = rng.gen_range(1..=n.min(5));
        let p = Poset::random(n, rng.gen_range(0.0..0.7), &mut rng).unwrap();
        let c = Code::random(PrimeField::BINARY, n, k, &mut rng).unwrap();
        let b = packing_radius_bounds(&c, &p, DEFAULT_BUDGET).unwrap();
        let exact = b.exact.unwrap();
        assert!(b.lower <= exact && exact <= b.upper, "{p:?} {c:?} {b:?}");
        if p.is_hierarchical() {
            assert_eq!((b.lower, b.upper), (exact, exact), "{p:?} {c:?}");
        }
    }
}

#[test]
fn radius_is_monotone_in_the_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..80 {
        let n = rng.gen_range(2..=7);
        let k = rng.gen_range(1..=n.min(4));
        let p = Poset::random(n, rng.gen_range(0.0..0.5), &mut rng).unwrap();
        let q = p.upper_neighbor();
        let c = Code::random(PrimeField::BINARY, n, k, &mut rng).unwrap();
        let rp = packing_radius_exact(&c, &p, DEFAULT_BUDGET).unwrap();
        let rq = packing_radius_exact(&c, &q, DEFAULT_BUDGET).unwrap();
        assert!(rp <= rq);
    }
}
