use super::dmp::is_planar;
use crate::biclique::next_combination;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph};

/// Largest deletion budget accepted by [`find_planarizing_edges`].
pub const PI_MAX_BOUND: usize = 4;

/// A minimum set of at most `pi_max` edges whose deletion leaves a planar graph,
/// searching subsets by size and then lexicographically. `Ok(None)` when every
/// such set is too large.
///
/// When the graph is connected, the returned set leaves it connected: an edge
/// joining two components of the remainder could be put back without losing
/// planarity, so a minimum set has none.
pub fn find_planarizing_edges(g: &Graph, pi_max: usize) -> Result<Option<Vec<EdgeId>>> {
    if pi_max > PI_MAX_BOUND {
        return Err(Error::SizeBound(format!("pi_max {pi_max} exceeds {PI_MAX_BOUND}")));
    }
    let m = g.m();
    for size in 0..=pi_max.min(m) {
        let mut chosen: Vec<usize> = (0..size).collect();
        loop {
            let (rest, _) = g.filter_edges(|e| !chosen.contains(&e));
            if is_planar(&rest) {
                return Ok(Some(chosen));
            }
            if !next_combination(&mut chosen, m) {
                break;
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_on(offset: usize, k: usize, e: &mut Vec<(usize, usize)>) {
        for u in 0..k {
            for v in u + 1..k {
                e.push((offset + u, offset + v));
            }
        }
    }

    #[test]
    fn planar_needs_nothing() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]);
        assert_eq!(find_planarizing_edges(&g, 2).unwrap(), Some(vec![]));
    }

    #[test]
    fn k5_needs_one() {
        let mut e = Vec::new();
        complete_on(0, 5, &mut e);
        let g = Graph::new(5, e);
        assert_eq!(find_planarizing_edges(&g, 2).unwrap(), Some(vec![0]));
    }

    #[test]
    fn two_k5_need_two() {
        let mut e = Vec::new();
        complete_on(0, 5, &mut e);
        complete_on(5, 5, &mut e);
        let g = Graph::new(10, e);
        assert_eq!(find_planarizing_edges(&g, 1).unwrap(), None);
        assert_eq!(find_planarizing_edges(&g, 2).unwrap(), Some(vec![0, 10]));
        assert!(find_planarizing_edges(&g, 5).is_err());
    }
}
