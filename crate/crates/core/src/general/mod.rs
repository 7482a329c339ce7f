//! Special cases of General k-ATSPP, where salesman `i` travels from `s_i`
//! to `t_i`: two pairs in any metric, any number of pairs in symmetric
//! metrics, and the rooted case `s_i = t_i`.

mod rooted;
mod splice;
mod symmetric;

use serde::{Deserialize, Serialize};

pub use rooted::{solve_rooted_cycles, RootedOutput};
pub use splice::{splice_paths, SpliceGuess, SpliceResult};
pub use symmetric::{solve_symmetric_general, SymmetricOutput};

use crate::cost::Cost;
use crate::error::{invariant, Error, Result};
use crate::metric::{map_to_origin, GeneralInstance, Metric};
use crate::solution::PathSolution;
use crate::variants::{solve_variant_detailed, EndpointMode, VariantSpec};

pub(crate) fn validate_roots<C: Cost>(metric: &Metric<C>, roots: &[usize]) -> Result<()> {
    if roots.is_empty() {
        return Err(Error::InvalidInstance("at least one root is required".into()));
    }
    for (i, &r) in roots.iter().enumerate() {
        metric.check_node(r)?;
        if roots[..i].contains(&r) {
            return Err(Error::InvalidInstance(format!("root {r} is listed twice")));
        }
    }
    Ok(())
}

/// Bicriteria parameter used for the two-pair solver; `floor(2 + 2/3) = 2`
/// forces exactly two paths.
pub const GENERAL2_B: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct General2Output<C> {
    /// `s_1 -> t_1` and `s_2 -> t_2`, on the original node ids.
    pub solution: PathSolution<C>,
    /// Cost of the listed-source, listed-sink solution before splicing.
    pub variant_cost: C,
    pub variant_lower_bound: C,
    /// Node count after endpoint duplication.
    pub duplicated_n: usize,
    pub splice: Option<SpliceResult<C>>,
}

/// General 2-ATSPP: solve with sources `{s_1, s_2}` and sinks `{t_1, t_2}`
/// paired freely; if the pairing comes out crossed, splice the two paths.
pub fn solve_general_2atspp<C: Cost>(inst: &GeneralInstance<C>) -> Result<General2Output<C>> {
    inst.validate()?;
    if inst.k() != 2 {
        return Err(Error::InvalidInstance(format!("two pairs required, got {}", inst.k())));
    }
    let (dup, origin) = inst.with_distinct_endpoints()?;
    let [(s1, t1), (s2, t2)] = [dup.pairs[0], dup.pairs[1]];
    let spec = VariantSpec {
        source: EndpointMode::Multiple { nodes: vec![s1, s2] },
        sink: EndpointMode::Multiple { nodes: vec![t1, t2] },
    };
    let out = solve_variant_detailed(&dup.metric, &spec, 2, GENERAL2_B)?;
    let paths = &out.solution.paths;
    let from = |s: usize| paths.iter().find(|p| p.first() == Some(&s));
    let (Some(p_a), Some(p_b)) = (from(s1), from(s2)) else {
        return Err(invariant("listed-source solution does not start one path at each source"));
    };
    if paths.len() != 2 {
        return Err(invariant("listed-source solution does not have two paths"));
    }
    let (q1, q2, splice) = if p_a.last() == Some(&t1) && p_b.last() == Some(&t2) {
        (p_a.clone(), p_b.clone(), None)
    } else if p_a.last() == Some(&t2) && p_b.last() == Some(&t1) {
        let r = splice_paths(&dup.metric, p_a, p_b)?;
        (r.q1.clone(), r.q2.clone(), Some(r))
    } else {
        return Err(invariant("listed-source solution does not end at the listed sinks"));
    };
    let mapped = vec![map_to_origin(&q1, &origin), map_to_origin(&q2, &origin)];
    Ok(General2Output {
        solution: PathSolution::from_paths(&inst.metric, mapped),
        variant_cost: out.solution.total_cost,
        variant_lower_bound: out.lower_bound,
        duplicated_n: dup.metric.n(),
        splice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::metric_closure;

    #[test]
    fn rejects_wrong_pair_count() {
        let m = metric_closure(&[vec![0i64, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let inst = GeneralInstance::new(m, vec![(0, 1)]).unwrap();
        assert!(solve_general_2atspp(&inst).is_err());
    }

    #[test]
    fn aligned_pairs_need_no_splice() {
        // 0 -> 2 -> 1 and 3 -> 4 are free; everything else costs 5.
        let mut rows = vec![vec![5i64; 5]; 5];
        for (v, row) in rows.iter_mut().enumerate() {
            row[v] = 0;
        }
        rows[0][2] = 0;
        rows[2][1] = 0;
        rows[3][4] = 0;
        let m = metric_closure(&rows).unwrap();
        let inst = GeneralInstance::new(m, vec![(0, 1), (3, 4)]).unwrap();
        let out = solve_general_2atspp(&inst).unwrap();
        assert!(out.splice.is_none());
        assert_eq!(out.solution.total_cost, 0);
        assert_eq!(out.solution.total_cost, out.variant_cost);
        assert_eq!(out.solution.paths, vec![vec![0, 2, 1], vec![3, 4]]);
    }
}
