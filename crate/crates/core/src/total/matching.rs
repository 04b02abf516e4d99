//! Maximum bipartite matching by augmenting paths.

/// A maximum matching of a bipartite graph given by left adjacency lists,
/// or a set violating Hall's condition when the left side cannot be
/// saturated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matching {
    /// `partner[x]` for every left vertex `x`.
    Saturating(Vec<usize>),
    /// Left vertices `X` with `|N(X)| < |X|`, and `N(X)`.
    Hall { left: Vec<usize>, neighbours: Vec<usize> },
}

fn augment(x: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &y in &adj[x] {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        if owner[y].map_or(true, |x2| augment(x2, adj, seen, owner)) {
            owner[y] = Some(x);
            return true;
        }
    }
    false
}

/// Matches left vertices in index order, trying neighbours in list order.
pub fn saturate_left(adj: &[Vec<usize>], right: usize) -> Matching {
    let mut owner: Vec<Option<usize>> = vec![None; right];
    for x in 0..adj.len() {
        let mut seen = vec![false; right];
        if augment(x, adj, &mut seen, &mut owner) {
            continue;
        }
        // the left vertices reachable from x by alternating paths, with
        // their neighbourhood, all of which is matched into the set
        let mut left = vec![false; adj.len()];
        let mut reached = vec![false; right];
        let mut stack = vec![x];
        left[x] = true;
        while let Some(u) = stack.pop() {
            for &y in &adj[u] {
                if reached[y] {
                    continue;
                }
                reached[y] = true;
                if let Some(u2) = owner[y] {
                    if !left[u2] {
                        left[u2] = true;
                        stack.push(u2);
                    }
                }
            }
        }
        return Matching::Hall {
            left: (0..adj.len()).filter(|&u| left[u]).collect(),
            neighbours: (0..right).filter(|&y| reached[y]).collect(),
        };
    }
    let mut partner = vec![usize::MAX; adj.len()];
    for (y, o) in owner.iter().enumerate() {
        if let Some(x) = o {
            partner[*x] = y;
        }
    }
    Matching::Saturating(partner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(adj: &[Vec<usize>], right: usize) -> bool {
        fn go(x: usize, adj: &[Vec<usize>], used: &mut Vec<bool>) -> bool {
            if x == adj.len() {
                return true;
            }
            for &y in &adj[x] {
                if !used[y] {
                    used[y] = true;
                    if go(x + 1, adj, used) {
                        return true;
                    }
                    used[y] = false;
                }
            }
            false
        }
        go(0, adj, &mut vec![false; right])
    }

    #[test]
    fn constant_map_violates_hall() {
        let adj = vec![vec![0], vec![0]];
        assert_eq!(
            saturate_left(&adj, 2),
            Matching::Hall {
                left: vec![0, 1],
                neighbours: vec![0]
            }
        );
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(raw in prop::collection::vec(prop::collection::vec(0usize..5, 0..4), 0..6)) {
            let adj: Vec<Vec<usize>> = raw.into_iter().map(|mut v| { v.sort(); v.dedup(); v }).collect();
            match saturate_left(&adj, 5) {
                Matching::Saturating(p) => {
                    prop_assert!(brute_force(&adj, 5));
                    let mut used = p.clone();
                    used.sort();
                    used.dedup();
                    prop_assert_eq!(used.len(), adj.len());
                    for (x, &y) in p.iter().enumerate() {
                        prop_assert!(adj[x].contains(&y));
                    }
                }
                Matching::Hall { left, neighbours } => {
                    prop_assert!(!brute_force(&adj, 5));
                    prop_assert!(neighbours.len() < left.len());
                    for &x in &left {
                        for y in &adj[x] {
                            prop_assert!(neighbours.contains(y));
                        }
                    }
                }
            }
        }
    }
}
