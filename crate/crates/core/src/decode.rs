//! Syndrome decoding under a poset metric: the full coset-leader table,
//! and leveled decoding over the components of a P-decomposition.
//!
//! Plans decode `y` against the decomposed code `C' = C · W` by decoding
//! `y · W` and pulling the result back through `W⁻¹`; `W` is a P-isometry
//! so distances are unchanged.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::decomp::{maximal_p_decomposition, Decomposition, PDecomposition};
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::field::PrimeField;
use crate::linear::{check_n, Code, Matrix, Vector};
use crate::poset::Poset;
use crate::subset::CoordSet;

/// `(n - k) × n` matrix whose rows span the dual of `code`.
pub fn parity_check(code: &Code) -> Matrix {
    code.parity_check()
}

/// Coset leaders of a code living on a set of coordinates of `F_q^n`.
///
/// Leaders minimize the P-weight of the vector placed at `positions` with
/// zeros elsewhere; ties go to the lexicographically smallest vector.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    field: PrimeField,
    n: usize,
    positions: CoordSet,
    parity: Matrix,
    leaders: HashMap<Vec<u32>, Vec<u32>>,
}

impl SyndromeTable {
    fn from_parity(
        field: PrimeField,
        n: usize,
        positions: CoordSet,
        parity: Matrix,
        poset: &Poset,
        budget: u128,
    ) -> Result<Self> {
        let m = positions.len();
        let q = field.order() as u128;
        check_budget(pow_sat(q, m), budget)?;
        let pos: Vec<usize> = positions.iter().collect();
        let mut best: HashMap<Vec<u32>, (usize, Vec<u32>)> = HashMap::new();
        for index in 0..q.pow(m as u32) {
            let v = Vector::from_index(field, m, index);
            let supp: CoordSet = v.support().iter().map(|i| pos[i]).collect();
            let w = poset.ideal(supp).len();
            let s = v.syndrome(&parity)?.residues().to_vec();
            // ascending index is lexicographic order, so keep the first minimum
            match best.get(&s) {
                Some((bw, _)) if *bw <= w => {}
                _ => {
                    best.insert(s, (w, v.residues().to_vec()));
                }
            }
        }
        Ok(SyndromeTable {
            field,
            n,
            positions,
            parity,
            leaders: best.into_iter().map(|(s, (_, l))| (s, l)).collect(),
        })
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    pub fn positions(&self) -> CoordSet {
        self.positions
    }

    /// Number of stored cosets.
    pub fn len(&self) -> usize {
        self.leaders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaders.is_empty()
    }

    /// Leader of the coset with syndrome `s`, as a vector on `positions`.
    pub fn leader(&self, s: &Vector) -> Option<Vector> {
        self.leaders.get(s.residues()).map(|l| {
            Vector::from_ints(self.field, &l.iter().map(|&x| x as i64).collect::<Vec<_>>())
        })
    }

    /// All `(syndrome, leader)` pairs, sorted by syndrome.
    pub fn entries(&self) -> Vec<(Vector, Vector)> {
        let to_vec = |v: &Vec<u32>| {
            Vector::from_ints(self.field, &v.iter().map(|&x| x as i64).collect::<Vec<_>>())
        };
        let mut out: Vec<_> = self
            .leaders
            .iter()
            .map(|(s, l)| (to_vec(s), to_vec(l)))
            .collect();
        out.sort();
        out
    }

    /// Corrects a block given on `positions`.
    fn correct_block(&self, block: &Vector) -> Result<Vector> {
        let s = block.syndrome(&self.parity)?;
        let leader = self
            .leader(&s)
            .ok_or_else(|| Error::Invariant("syndrome missing from table".into()))?;
        block.sub(&leader)
    }

    fn is_codeword_block(&self, block: &Vector) -> Result<bool> {
        Ok(block.syndrome(&self.parity)?.is_zero())
    }
}

/// Complete coset-leader table of `code`.
pub fn build_table(code: &Code, poset: &Poset, budget: u128) -> Result<SyndromeTable> {
    check_n(code.n(), poset)?;
    check_budget(pow_sat(code.q() as u128, code.n() - code.k()), budget)?;
    SyndromeTable::from_parity(
        code.field(),
        code.n(),
        CoordSet::full(code.n()),
        code.parity_check(),
        poset,
        budget,
    )
}

/// `y − leader(syndrome(y))`.
pub fn decode_full(table: &SyndromeTable, y: &Vector) -> Result<Vector> {
    if y.len() != table.n {
        return Err(Error::DimensionMismatch {
            expected: table.n,
            got: y.len(),
        });
    }
    table.correct_block(y)
}

/// Coordinates of `y` on the support of `code`, ascending.
pub fn project(code: &Code, y: &Vector) -> Vector {
    y.restrict(code.support())
}

/// Inverse of [`project`] on vectors vanishing off the support.
pub fn unproject(code: &Code, v: &Vector) -> Vector {
    v.extend(code.support(), code.n())
}

fn ideals_meet(poset: &Poset, a: CoordSet, b: CoordSet) -> bool {
    !poset.ideal(a).is_disjoint(poset.ideal(b))
}

/// Union-find over `supports`, joining two when their generated ideals meet.
fn independent_partition(supports: &[CoordSet], poset: &Poset) -> Vec<Vec<usize>> {
    let m = supports.len();
    let mut label: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if ideals_meet(poset, supports[i], supports[j]) {
                let (a, b) = (label[i], label[j]);
                for l in label.iter_mut() {
                    if *l == b {
                        *l = a;
                    }
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for (i, &l) in label.iter().enumerate() {
        match seen.iter().position(|&s| s == l) {
            Some(g) => groups[g].push(i),
            None => {
                seen.push(l);
                groups.push(vec![i]);
            }
        }
    }
    groups
}

/// Finest ordered partition of `supports` with every element of an earlier
/// part's union strictly below every element of a later part's union.
fn hierarchical_partition(supports: &[CoordSet], poset: &Poset) -> Vec<Vec<usize>> {
    let m = supports.len();
    if m == 0 {
        return Vec::new();
    }
    let below = |a: CoordSet, b: CoordSet| a.iter().all(|x| b.iter().all(|y| poset.lt(x, y)));
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j && below(supports[i], supports[j]) {
                pairs.push((i + 1, j + 1));
            }
        }
    }
    let blocks = Poset::from_relations(m, &pairs).expect("strict-below is a partial order");
    blocks
        .complete_cuts()
        .windows(2)
        .map(|w| w[1].difference(w[0]).iter().collect())
        .collect()
}

/// Components grouped so that components in different groups generate
/// disjoint ideals.
pub fn independent_groups(d: &Decomposition, poset: &Poset) -> Vec<Vec<usize>> {
    let supports: Vec<CoordSet> = d.components.iter().map(|c| c.support).collect();
    independent_partition(&supports, poset)
}

/// Components grouped into hierarchically related levels, lowest first.
pub fn hierarchical_groups(d: &Decomposition, poset: &Poset) -> Vec<Vec<usize>> {
    let supports: Vec<CoordSet> = d.components.iter().map(|c| c.support).collect();
    hierarchical_partition(&supports, poset)
}

/// One decoding unit: a component, or a pointer coordinate whose ideal
/// meets the ideal of the code's support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub support: CoordSet,
    pub dim: usize,
    pub component: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct GroupPlan {
    /// Component indices making up the group.
    pub components: Vec<usize>,
    /// Block indices, including absorbed pointer coordinates.
    pub blocks: Vec<usize>,
    pub support: CoordSet,
    pub dim: usize,
    pub table: SyndromeTable,
}

#[derive(Debug, Clone)]
pub struct DecodePlan {
    field: PrimeField,
    n: usize,
    k: usize,
    witness: Matrix,
    witness_inv: Matrix,
    decomposition: Decomposition,
    /// Pointer coordinates ignored by the decoder.
    pub pointer_support: CoordSet,
    /// Pointer coordinates decoded as zero-dimensional blocks.
    pub absorbed: CoordSet,
    pub blocks: Vec<Block>,
    /// Lowest group first.
    pub groups: Vec<GroupPlan>,
}

/// Plan over the maximal P-decomposition of `code`.
pub fn build_plan(code: &Code, poset: &Poset, budget: u128) -> Result<DecodePlan> {
    plan_from_decomposition(&maximal_p_decomposition(code, poset)?, poset, budget)
}

/// Plan over a given P-decomposition.
pub fn plan_from_decomposition(
    pd: &PDecomposition,
    poset: &Poset,
    budget: u128,
) -> Result<DecodePlan> {
    pd.validate(poset)?;
    let d = &pd.decomposition;
    let field = pd.original.field();
    let n = pd.original.n();
    let core = poset.ideal(d.code.support());
    let absorbed: CoordSet = d
        .pointer_support
        .iter()
        .filter(|&p| !poset.down_set(p).is_disjoint(core))
        .collect();
    let mut blocks: Vec<Block> = d
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| Block {
            support: c.support,
            dim: c.dim(),
            component: Some(i),
        })
        .collect();
    blocks.extend(absorbed.iter().map(|p| Block {
        support: CoordSet::singleton(p),
        dim: 0,
        component: None,
    }));
    let supports: Vec<CoordSet> = blocks.iter().map(|b| b.support).collect();
    let mut groups = Vec::new();
    for members in hierarchical_partition(&supports, poset) {
        let support = members
            .iter()
            .fold(CoordSet::EMPTY, |acc, &b| acc.union(blocks[b].support));
        let components: Vec<usize> = members
            .iter()
            .filter_map(|&b| blocks[b].component)
            .collect();
        let mut rows = Vec::new();
        for &c in &components {
            for r in d.components[c].generators.to_rows() {
                rows.push(support.iter().map(|i| r[i] as i64).collect::<Vec<_>>());
            }
        }
        let parity = if rows.is_empty() {
            Matrix::identity(field, support.len())
        } else {
            Matrix::from_rows(field, support.len(), &rows)?.null_space()
        };
        let table = SyndromeTable::from_parity(field, n, support, parity, poset, budget)?;
        groups.push(GroupPlan {
            dim: rows.len(),
            components,
            blocks: members,
            support,
            table,
        });
    }
    Ok(DecodePlan {
        field,
        n,
        k: pd.original.k(),
        witness: pd.witness.clone(),
        witness_inv: pd.witness.inverse()?,
        decomposition: d.clone(),
        pointer_support: d.pointer_support.difference(absorbed),
        absorbed,
        blocks,
        groups,
    })
}

impl DecodePlan {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn witness(&self) -> &Matrix {
        &self.witness
    }

    fn check(&self, y: &Vector) -> Result<()> {
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        if y.field() != self.field {
            return Err(Error::FieldMismatch(self.field.order(), y.field().order()));
        }
        Ok(())
    }

    fn finish(&self, parts: Vec<(CoordSet, Vector)>) -> Result<Vector> {
        let mut out = Vector::zeros(self.field, self.n);
        for (support, block) in parts {
            out = out.add(&block.extend(support, self.n))?;
        }
        out.mul_matrix(&self.witness_inv)
    }
}

/// Decodes every group independently and reassembles.
pub fn decode_leveled_alg1(plan: &DecodePlan, y: &Vector) -> Result<Vector> {
    plan.check(y)?;
    let moved = y.mul_matrix(&plan.witness)?;
    let mut parts = Vec::with_capacity(plan.groups.len());
    for g in &plan.groups {
        parts.push((
            g.support,
            g.table.correct_block(&moved.restrict(g.support))?,
        ));
    }
    plan.finish(parts)
}

/// Scans groups from the top: blocks that are codewords are kept, the first
/// erroneous group is syndrome-decoded and every group below it is zeroed.
pub fn decode_leveled_alg2(plan: &DecodePlan, y: &Vector) -> Result<Vector> {
    plan.check(y)?;
    let moved = y.mul_matrix(&plan.witness)?;
    let mut parts = Vec::new();
    for g in plan.groups.iter().rev() {
        let block = moved.restrict(g.support);
        if g.table.is_codeword_block(&block)? {
            parts.push((g.support, block));
        } else {
            parts.push((g.support, g.table.correct_block(&block)?));
            break;
        }
    }
    plan.finish(parts)
}

/// Lookup-table sizes (number of stored cosets) for the plan's code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSizes {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Pointer size `n_0` of the decomposition.
    pub pointer: usize,
    /// `(n_i, k_i)` per component.
    pub components: Vec<(usize, usize)>,
    /// Component indices per hierarchical group, lowest first.
    pub groups: Vec<Vec<usize>>,
    /// `q^(n-k)`
    pub full: u128,
    /// `Π_i q^(n_i - k_i)`
    pub reduced: u128,
    /// `Σ_groups Π_{i in group} q^(n_i - k_i)`
    pub leveled_total: u128,
    /// largest single-group table
    pub worst_single_lookup: u128,
    /// cosets actually stored by the plan, absorbed pointer coordinates
    /// included
    pub stored_total: u128,
}

pub fn table_sizes(plan: &DecodePlan, poset: &Poset) -> TableSizes {
    let q = plan.field.order() as u128;
    let d = &plan.decomposition;
    let comp = |i: usize| pow_sat(q, d.components[i].support.len() - d.components[i].dim());
    let groups = hierarchical_groups(d, poset);
    let per_group: Vec<u128> = groups
        .iter()
        .map(|g| g.iter().fold(1u128, |acc, &i| acc.saturating_mul(comp(i))))
        .collect();
    TableSizes {
        q: plan.field.order(),
        n: plan.n,
        k: plan.k,
        pointer: d.pointer_support.len(),
        components: d
            .components
            .iter()
            .map(|c| (c.support.len(), c.dim()))
            .collect(),
        full: pow_sat(q, plan.n - plan.k),
        reduced: (0..d.components.len()).fold(1u128, |acc, i| acc.saturating_mul(comp(i))),
        leveled_total: per_group
            .iter()
            .fold(0u128, |acc, &x| acc.saturating_add(x)),
        worst_single_lookup: per_group.iter().copied().max().unwrap_or(1),
        stored_total: plan.groups.iter().map(|g| g.table.len() as u128).sum(),
        groups,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_BUDGET;

    fn gf2() -> PrimeField {
        PrimeField::BINARY
    }

    fn code(rows: &[Vec<i64>], n: usize) -> Code {
        Code::new(Matrix::from_rows(gf2(), n, rows).unwrap()).unwrap()
    }

    fn v(s: &str) -> Vector {
        Vector::from_ints(
            gf2(),
            &s.chars()
                .map(|c| c.to_digit(10).unwrap() as i64)
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn parity_of_repetition_pair() {
        assert_eq!(
            parity_check(&code(&[vec![1, 1]], 2)).to_rows(),
            vec![vec![1, 1]]
        );
        assert_eq!(parity_check(&code(&[vec![1, 0], vec![0, 1]], 2)).rows(), 0);
    }

    #[test]
    fn repetition_table_under_hamming() {
        let c = code(&[vec![1, 1, 1]], 3);
        let t = build_table(&c, &Poset::antichain(3).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.len(), 4);
        assert!(t.entries().iter().all(|(_, l)| l.hamming_weight() <= 1));
        assert_eq!(decode_full(&t, &v("110")).unwrap(), v("111"));
        assert_eq!(decode_full(&t, &v("111")).unwrap(), v("111"));
    }

    #[test]
    fn chain_leader_prefers_low_coordinates() {
        let c = code(&[vec![1, 1, 1]], 3);
        let t = build_table(&c, &Poset::chain(3).unwrap(), DEFAULT_BUDGET).unwrap();
        let s = v("100").syndrome(t.parity()).unwrap();
        assert_eq!(t.leader(&s).unwrap(), v("100"));
    }

    #[test]
    fn full_space_has_single_coset() {
        let c = code(&[vec![1, 0], vec![0, 1]], 2);
        let t = build_table(&c, &Poset::antichain(2).unwrap(), DEFAULT_BUDGET).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(decode_full(&t, &v("10")).unwrap(), v("10"));
    }

    #[test]
    fn projection_round_trip() {
        let c = code(&[vec![1, 0, 0, 1]], 4);
        let y = v("1011");
        assert_eq!(project(&c, &y), v("11"));
        assert_eq!(unproject(&c, &project(&c, &y)), v("1001"));
    }

    #[test]
    fn groups_on_second_example_poset() {
        // components with supports {4,6} and {1,5}
        let p = Poset::from_relations(6, &[(1, 2), (3, 4), (4, 5)]).unwrap();
        let c = code(&[vec![0, 0, 0, 1, 0, 1], vec![1, 0, 0, 0, 1, 0]], 6);
        let d = crate::decomp::components_from_matrix(c.generator()).unwrap();
        assert_eq!(independent_groups(&d, &p).len(), 1);
        let anti = Poset::antichain(6).unwrap();
        assert_eq!(independent_groups(&d, &anti).len(), 2);
        assert_eq!(hierarchical_groups(&d, &anti).len(), 1);
    }

    #[test]
    fn hierarchical_levels_give_ordered_groups() {
        let p = Poset::hierarchical_from_levels(
            4,
            &[
                CoordSet::from_one_indexed([1, 2]),
                CoordSet::from_one_indexed([3, 4]),
            ],
        )
        .unwrap();
        let c = code(&[vec![1, 0, 0, 0], vec![0, 0, 1, 1]], 4);
        let d = crate::decomp::components_from_matrix(c.generator()).unwrap();
        let groups = hierarchical_groups(&d, &p);
        let supports: Vec<CoordSet> = groups.iter().map(|g| d.components[g[0]].support).collect();
        assert_eq!(
            supports,
            vec![
                CoordSet::from_one_indexed([1]),
                CoordSet::from_one_indexed([3, 4])
            ]
        );
    }

    #[test]
    fn single_group_table_matches_full() {
        let c = code(&[vec![1, 1, 0, 1], vec![0, 1, 1, 1]], 4);
        let p = Poset::antichain(4).unwrap();
        let plan = build_plan(&c, &p, DEFAULT_BUDGET).unwrap();
        let sizes = table_sizes(&plan, &p);
        assert_eq!(sizes.groups.len(), 1);
        assert_eq!(sizes.pointer, 0);
        assert_eq!(sizes.leveled_total, sizes.full);
    }
}
