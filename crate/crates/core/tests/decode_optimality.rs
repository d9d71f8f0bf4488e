use posetcode::decode::{
    build_plan, build_table, decode_full, decode_leveled_alg1, decode_leveled_alg2, table_sizes,
};
use posetcode::{all_vectors, Code, Poset, PrimeField, Vector, DEFAULT_BUDGET};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn nearest(codewords: &[Vector], y: &Vector, p: &Poset) -> usize {
    codewords
        .iter()
        .map(|c| y.p_distance(c, p).unwrap())
        .min()
        .unwrap()
}

#[test]
fn all_decoders_attain_minimum_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..30 {
        let n = rng.gen_range(2..=9);
        let k = rng.gen_range(1..=n.min(6));
        let p = Poset::random(n, rng.gen_range(0.0..0.7), &mut rng).unwrap();
        let c = Code::random(PrimeField::BINARY, n, k, &mut rng).unwrap();
        let words = c.codewords(DEFAULT_BUDGET).unwrap();
        let table = build_table(&c, &p, DEFAULT_BUDGET).unwrap();
        let plan = build_plan(&c, &p, DEFAULT_BUDGET).unwrap();
        for y in all_vectors(PrimeField::BINARY, n) {
            let best = nearest(&words, &y, &p);
            for (name, out) in [
                ("full", decode_full(&table, &y).unwrap()),
                ("alg1", decode_leveled_alg1(&plan, &y).unwrap()),
                ("alg2", decode_leveled_alg2(&plan, &y).unwrap()),
            ] {
                assert!(c.contains(&out).unwrap(), "{name} left the code");
                assert_eq!(
                    y.p_distance(&out, &p).unwrap(),
                    best,
                    "{name} {p:?} {c:?} y={y}"
                );
            }
        }
        let t = table_sizes(&plan, &p);
        assert_eq!(t.full, 1u128 << (n - k));
        assert!(t.worst_single_lookup <= t.full);
    }
}
