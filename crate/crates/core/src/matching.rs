//! Maximum bipartite matching by augmenting paths.
//!
//! Left vertices are visited in index order and each adjacency list in the
//! order given, so the result is deterministic.

/// Matches left vertex `i` to some `adjacency[i][k] < right_count`.
/// Returns `assignment[i]`, the right vertex matched to `i`, if any.
pub fn maximum_matching(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right_count];
    for left in 0..adjacency.len() {
        let mut seen = vec![false; right_count];
        augment(left, adjacency, &mut owner, &mut seen);
    }
    let mut assignment = vec![None; adjacency.len()];
    for (right, left) in owner.iter().enumerate() {
        if let Some(l) = left {
            assignment[*l] = Some(right);
        }
    }
    assignment
}

fn augment(left: usize, adjacency: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &right in &adjacency[left] {
        if seen[right] {
            continue;
        }
        seen[right] = true;
        let free = match owner[right] {
            None => true,
            Some(other) => augment(other, adjacency, owner, seen),
        };
        if free {
            owner[right] = Some(left);
            return true;
        }
    }
    false
}

/// Whether every left vertex is matched.
pub fn is_perfect(assignment: &[Option<usize>]) -> bool {
    assignment.iter().all(Option::is_some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn size(assignment: &[Option<usize>]) -> usize {
        assignment.iter().flatten().count()
    }

    #[test]
    fn prefers_listed_order() {
        let adj = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(maximum_matching(&adj, 2), vec![Some(0), Some(1)]);
    }

    #[test]
    fn augments_when_needed() {
        let adj = vec![vec![0], vec![0, 1], vec![1, 2]];
        let m = maximum_matching(&adj, 3);
        assert!(is_perfect(&m));
        assert_eq!(m, vec![Some(0), Some(1), Some(2)]);
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(maximum_matching(&adj, 2), vec![Some(1), Some(0)]);
    }

    #[test]
    fn reports_deficiency() {
        let adj = vec![vec![0], vec![0], vec![1]];
        let m = maximum_matching(&adj, 2);
        assert_eq!(size(&m), 2);
        assert!(!is_perfect(&m));
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        // Every graph on 3 + 3 vertices.
        for mask in 0u32..(1 << 9) {
            let adj: Vec<Vec<usize>> = (0..3)
                .map(|i| (0..3).filter(|j| mask >> (3 * i + j) & 1 == 1).collect())
                .collect();
            let best = (0..=3)
                .rev()
                .find(|&k| {
                    (0..3).combinations(k).any(|lefts| {
                        (0..3).permutations(k).any(|rights| {
                            lefts.iter().zip(&rights).all(|(l, r)| adj[*l].contains(r))
                        })
                    })
                })
                .unwrap();
            assert_eq!(size(&maximum_matching(&adj, 3)), best, "mask {mask:b}");
        }
    }
}
