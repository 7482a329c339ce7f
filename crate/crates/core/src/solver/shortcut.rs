use crate::error::{invariant, Error, Result};
use crate::flow::IntFlow;

fn expand(arcs: impl IntoIterator<Item = (usize, u64)>) -> Vec<usize> {
    arcs.into_iter().flat_map(|(v, m)| std::iter::repeat_n(v, m as usize)).collect()
}

/// Replaces one unit on `(u, w)` and one on `(w, v)` by one unit on `(u, v)`,
/// using the smallest-id available tail and head. A unit that would become
/// the loop `(u, u)` is dropped.
pub fn unit_shortcut(flow: &mut IntFlow, w: usize) -> Result<()> {
    let u = flow.in_arcs(w).first().map(|&(u, _)| u);
    let v = flow.out_arcs(w).next().map(|(v, _)| v);
    let (Some(u), Some(v)) = (u, v) else {
        return Err(invariant(format!("no arc pair to shortcut at node {w}")));
    };
    flow.remove(u, w, 1);
    flow.remove(w, v, 1);
    if u != v {
        flow.add(u, v, 1);
    }
    Ok(())
}

/// Removes all flow through `w` by pairing its incoming and outgoing units in
/// ascending node-id order. Under the triangle inequality the cost does not
/// increase, and an acyclic flow stays acyclic.
pub fn shortcut_node(flow: &IntFlow, w: usize, s: usize, t: usize) -> Result<IntFlow> {
    if w == s || w == t {
        return Err(Error::InvalidInstance(format!("cannot shortcut endpoint {w}")));
    }
    let tails = expand(flow.in_arcs(w));
    let heads = expand(flow.out_arcs(w).collect::<Vec<_>>());
    if tails.len() != heads.len() {
        return Err(invariant(format!("flow is not conserved at node {w}")));
    }
    let mut out = flow.clone();
    for (&u, &v) in tails.iter().zip(&heads) {
        out.remove(u, w, 1);
        out.remove(w, v, 1);
        if u != v {
            out.add(u, v, 1);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_pairing() {
        let f = IntFlow::from_arcs([((0, 1), 1), ((1, 2), 1)]);
        assert_eq!(shortcut_node(&f, 1, 0, 2).unwrap(), IntFlow::from_arcs([((0, 2), 1)]));
    }

    #[test]
    fn idle_node_unchanged() {
        let f = IntFlow::from_arcs([((0, 2), 1)]);
        assert_eq!(shortcut_node(&f, 1, 0, 2).unwrap(), f);
    }

    #[test]
    fn endpoints_refused() {
        let f = IntFlow::from_arcs([((0, 2), 1)]);
        assert!(shortcut_node(&f, 0, 0, 2).is_err());
        assert!(shortcut_node(&f, 2, 0, 2).is_err());
    }

    #[test]
    fn unbalanced_node_rejected() {
        let f = IntFlow::from_arcs([((0, 1), 2), ((1, 2), 1)]);
        assert!(shortcut_node(&f, 1, 0, 2).is_err());
    }
}
