//! Packing radius by exhaustion, and bounds from the hierarchical
//! neighbors.

use serde::{Deserialize, Serialize};

use crate::decomp::maximal_p_decomposition;
use crate::error::{check_budget, pow_sat, Error, Result};
use crate::field::PrimeField;
use crate::linear::{check_n, Code};
use crate::poset::Poset;
use crate::subset::CoordSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusBounds {
    pub lower: usize,
    pub upper: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<usize>,
}

/// P-weight of every vector of `F_q^n`, indexed like [`crate::Vector::index`].
pub(crate) fn weight_table(field: PrimeField, n: usize, poset: &Poset) -> Vec<u8> {
    let q = field.order() as usize;
    let total = q.pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let mut supp = CoordSet::EMPTY;
        for (i, &d) in digits.iter().enumerate() {
            if d != 0 {
                supp.insert(i);
            }
        }
        out.push(poset.ideal(supp).len() as u8);
        // odometer, last coordinate least significant
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// Largest `r` such that the radius-`r` balls around distinct codewords
/// are disjoint: `min_{c != 0} min_x max(w(x), w(x - c)) - 1`.
pub fn packing_radius_exact(code: &Code, poset: &Poset, budget: u128) -> Result<usize> {
    check_n(code.n(), poset)?;
    let field = code.field();
    let q = field.order() as u128;
    let n = code.n();
    let space = pow_sat(q, n);
    check_budget(space, budget)?;
    check_budget(pow_sat(q, code.k()), budget)?;
    let weights = weight_table(field, n, poset);
    let codewords = code.codewords(budget)?;
    let qs = q as usize;
    let mut best = usize::MAX;
    let mut digits = vec![0usize; n];
    for c in codewords.iter().filter(|c| !c.is_zero()) {
        let cd: Vec<usize> = c.residues().iter().map(|&v| v as usize).collect();
        digits.iter_mut().for_each(|d| *d = 0);
        for x in 0..space as usize {
            let wx = weights[x] as usize;
            if wx < best {
                let mut diff = 0usize;
                for (d, cv) in digits.iter().zip(&cd) {
                    diff = diff * qs + (d + qs - cv) % qs;
                }
                best = best.min(wx.max(weights[diff] as usize));
            }
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < qs {
                    break;
                }
                *d = 0;
            }
        }
    }
    if best == usize::MAX {
        return Err(Error::ZeroDimension);
    }
    Ok(best - 1)
}

/// `lower` is the exact radius under the lower neighbor; `upper` is the
/// smallest exact radius, under the upper neighbor, of a component of the
/// maximal P-decomposition. `exact` is filled in when it fits the budget.
pub fn packing_radius_bounds(code: &Code, poset: &Poset, budget: u128) -> Result<RadiusBounds> {
    check_n(code.n(), poset)?;
    let lower = packing_radius_exact(code, &poset.lower_neighbor(), budget)?;
    let upper_poset = poset.upper_neighbor();
    let pd = maximal_p_decomposition(code, poset)?;
    let mut upper = usize::MAX;
    for comp in &pd.decomposition.components {
        upper = upper.min(packing_radius_exact(&comp.code(), &upper_poset, budget)?);
    }
    let exact = match packing_radius_exact(code, poset, budget) {
        Ok(r) => Some(r),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(RadiusBounds {
        lower,
        upper,
        exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DEFAULT_BUDGET;
    use crate::linear::Matrix;

    fn code(rows: &[Vec<i64>], n: usize) -> Code {
        Code::new(Matrix::from_rows(PrimeField::BINARY, n, rows).unwrap()).unwrap()
    }

    #[test]
    fn star_poset_example() {
        let p = Poset::from_relations(4, &[(1, 4), (2, 4), (3, 4)]).unwrap();
        let c = code(&[vec![1, 0, 0, 1]], 4);
        assert_eq!(packing_radius_exact(&c, &p, DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn repetition_code_hamming() {
        let c = code(&[vec![1, 1, 1]], 3);
        let p = Poset::antichain(3).unwrap();
        assert_eq!(packing_radius_exact(&c, &p, DEFAULT_BUDGET).unwrap(), 1);
        let b = packing_radius_bounds(&c, &p, DEFAULT_BUDGET).unwrap();
        assert_eq!((b.lower, b.upper, b.exact), (1, 1, Some(1)));
    }

    #[test]
    fn last_unit_vector_under_chain() {
        let c = code(&[vec![0, 0, 1]], 3);
        let p = Poset::chain(3).unwrap();
        assert_eq!(packing_radius_exact(&c, &p, DEFAULT_BUDGET).unwrap(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let c = code(&[vec![1, 1, 1]], 3);
        let p = Poset::antichain(3).unwrap();
        assert!(matches!(
            packing_radius_exact(&c, &p, 4),
            Err(Error::BudgetExceeded {
                required: 8,
                budget: 4
            })
        ));
    }

    #[test]
    fn bounds_json_omits_missing_exact() {
        let b = RadiusBounds {
            lower: 0,
            upper: 2,
            exact: None,
        };
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"lower":0,"upper":2}"#
        );
    }
}
