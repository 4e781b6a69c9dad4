use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::instance::{Instance, Solution};

/// True iff every demand pair lies in different components of `G \ S`.
pub fn verify_multicut(inst: &Instance, cut: &[EdgeId]) -> Result<bool> {
    let mut removed = vec![false; inst.m()];
    for &e in cut {
        if e >= inst.m() {
            return Err(Error::Precondition(format!("edge id {e} out of range")));
        }
        removed[e] = true;
    }
    Ok(separates(inst, &removed))
}

/// Same check with the cut given as a membership mask over edge ids.
pub fn separates(inst: &Instance, removed: &[bool]) -> bool {
    let labels = inst.graph().component_labels_where(|e| !removed[e]);
    inst.demands().iter().all(|&(u, v)| labels[u] != labels[v])
}

/// Checks a solution against an instance: every edge exists, it is a multicut,
/// and the recorded weight is the true weight.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> Result<()> {
    let ids = sol.edge_ids(inst)?;
    if !verify_multicut(inst, &ids)? {
        return Err(Error::NotAMulticut);
    }
    let w = inst.weight_of(&ids);
    if w != sol.weight {
        return Err(Error::Internal(format!("solution weight {} but edges weigh {}", sol.weight, w)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_triangle() {
        let path = Instance::unweighted(3, [(0, 1), (1, 2)], [0, 2], [(0, 2)]).unwrap();
        assert!(verify_multicut(&path, &[0]).unwrap());
        assert!(!verify_multicut(&path, &[]).unwrap());
        let tri = Instance::unweighted(3, [(0, 1), (1, 2), (0, 2)], [0, 1, 2], [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!verify_multicut(&tri, &[0, 2]).unwrap());
        assert!(verify_multicut(&tri, &[0, 1, 2]).unwrap());
        assert!(verify_multicut(&tri, &[7]).is_err());
    }
}
