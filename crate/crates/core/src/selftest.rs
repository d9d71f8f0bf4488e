//! Randomized agreement checks between the fast algorithms and the
//! brute-force oracles, sized to finish in a few seconds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decode::{
    build_plan, build_table, decode_full, decode_leveled_alg1, decode_leveled_alg2,
};
use crate::decomp::maximal_p_decomposition;
use crate::error::{Result, DEFAULT_BUDGET};
use crate::field::PrimeField;
use crate::format::{format_code, format_poset, parse_code, parse_poset};
use crate::linear::{all_vectors, Code};
use crate::oracle::{
    brute_lower_neighbor, brute_max_degree, brute_minimal_upper, brute_nearest_distance, enum_aut,
    enum_gl_p, preserves_weight, triangular_group_order,
};
use crate::poset::Poset;
use crate::radius::packing_radius_bounds;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    /// First failing instance, when there is one.
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    instances: usize,
    failures: usize,
    detail: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            instances: 0,
            failures: 0,
            detail: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.detail.is_none() {
                self.detail = Some(describe());
            }
        }
    }

    fn finish(self) -> CheckResult {
        CheckResult {
            name: self.name,
            instances: self.instances,
            failures: self.failures,
            detail: self.detail,
        }
    }
}

fn instance(rng: &mut ChaCha8Rng, max_n: usize, max_k: usize) -> Result<(Poset, Code)> {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..=n.min(max_k));
    let p = Poset::random(n, rng.gen_range(0.0..0.8), rng)?;
    let c = Code::random(PrimeField::BINARY, n, k, rng)?;
    Ok((p, c))
}

fn describe(p: &Poset, c: &Code) -> String {
    format!("{}{}", format_poset(p), format_code(c))
}

/// Runs every check with the given seed.
pub fn run(seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = PrimeField::BINARY;
    let mut out = Vec::new();

    let mut t = Tally::new("isometry group order and weight preservation");
    for _ in 0..10 {
        let n = rng.gen_range(1..=3);
        let p = Poset::random(n, rng.gen_range(0.0..1.0), &mut rng)?;
        let group = enum_gl_p(&p, f, DEFAULT_BUDGET)?;
        let order = triangular_group_order(&p, f) * enum_aut(&p, DEFAULT_BUDGET)?.len() as u128;
        let mut ok = group.len() as u128 == order;
        for iso in &group {
            ok &= preserves_weight(&iso.matrix, &p, DEFAULT_BUDGET)?;
        }
        t.record(ok, || format_poset(&p));
    }
    out.push(t.finish());

    let mut t = Tally::new("canonical degree equals brute-force maximum");
    for _ in 0..60 {
        let (p, c) = instance(&mut rng, 4, 4)?;
        let pd = maximal_p_decomposition(&c, &p)?;
        let ok =
            pd.validate(&p).is_ok() && pd.degree() == brute_max_degree(&c, &p, DEFAULT_BUDGET)?;
        t.record(ok, || describe(&p, &c));
    }
    out.push(t.finish());

    let mut t = Tally::new("profile invariant under isometries");
    for _ in 0..30 {
        let (p, c) = instance(&mut rng, 4, 3)?;
        let group = enum_gl_p(&p, f, DEFAULT_BUDGET)?;
        let iso = &group[rng.gen_range(0..group.len())];
        let image = c.transform(&iso.matrix)?;
        let a = maximal_p_decomposition(&c, &p)?.profile().canonical();
        let b = maximal_p_decomposition(&image, &p)?.profile().canonical();
        t.record(a == b, || describe(&p, &c));
    }
    out.push(t.finish());

    let mut t = Tally::new("hierarchical neighbors match enumeration");
    for _ in 0..30 {
        let n = rng.gen_range(1..=4);
        let p = Poset::random(n, rng.gen_range(0.0..0.8), &mut rng)?;
        let ok = brute_minimal_upper(&p, DEFAULT_BUDGET)?.contains(&p.upper_neighbor())
            && p.lower_neighbor() == brute_lower_neighbor(&p, DEFAULT_BUDGET)?;
        t.record(ok, || format_poset(&p));
    }
    out.push(t.finish());

    let mut t = Tally::new("packing radius bounds bracket the exact value");
    for _ in 0..30 {
        let (p, c) = instance(&mut rng, 7, 4)?;
        let b = packing_radius_bounds(&c, &p, DEFAULT_BUDGET)?;
        let ok = match b.exact {
            Some(r) => b.lower <= r && r <= b.upper && (!p.is_hierarchical() || b.lower == b.upper),
            None => false,
        };
        t.record(ok, || describe(&p, &c));
    }
    out.push(t.finish());

    let mut t = Tally::new("decoders attain the minimum distance");
    for _ in 0..10 {
        let (p, c) = instance(&mut rng, 7, 4)?;
        let table = build_table(&c, &p, DEFAULT_BUDGET)?;
        let plan = build_plan(&c, &p, DEFAULT_BUDGET)?;
        let mut ok = true;
        for y in all_vectors(f, c.n()) {
            let best = brute_nearest_distance(&c, &p, &y, DEFAULT_BUDGET)?;
            for out in [
                decode_full(&table, &y)?,
                decode_leveled_alg1(&plan, &y)?,
                decode_leveled_alg2(&plan, &y)?,
            ] {
                ok &= c.contains(&out)? && y.p_distance(&out, &p)? == best;
            }
        }
        t.record(ok, || describe(&p, &c));
    }
    out.push(t.finish());

    let mut t = Tally::new("file formats round-trip");
    for _ in 0..20 {
        let (p, c) = instance(&mut rng, 8, 5)?;
        let ok = parse_poset(&format_poset(&p)).as_ref() == Ok(&p)
            && parse_code(&format_code(&c)).as_ref() == Ok(&c);
        t.record(ok, || describe(&p, &c));
    }
    out.push(t.finish());

    Ok(out)
}

#[cfg(test)]
mod tests {
    #[test]
    fn default_seed_passes() {
        let results = super::run(1).unwrap();
        for r in &results {
            assert!(r.passed(), "{}: {:?}", r.name, r.detail);
        }
    }
}
