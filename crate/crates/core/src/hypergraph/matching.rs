//! Maximum bipartite matching by augmenting paths, with Hall-violator
//! extraction.

use alloc::vec;
use alloc::vec::Vec;

/// Maximum matching of a bipartite graph given as left adjacency lists over
/// right vertices `0..n_right`. Returns `match_of_left`.
pub fn max_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut match_left = vec![None; adj.len()];
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    for u in 0..adj.len() {
        let mut visited = vec![false; n_right];
        augment(u, adj, &mut visited, &mut match_left, &mut match_right);
    }
    match_left
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    visited: &mut [bool],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &w in &adj[u] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let free = match match_right[w] {
            None => true,
            Some(other) => augment(other, adj, visited, match_left, match_right),
        };
        if free {
            match_left[u] = Some(w);
            match_right[w] = Some(u);
            return true;
        }
    }
    false
}

/// A left subset `S` with `|N(S)| < |S|`, or `None` when some matching
/// saturates the left side.
///
/// Grown as the alternating tree rooted at an unmatched left vertex, so
/// `|N(S)| = |S| - 1` and both sets come back sorted.
pub fn hall_violator(adj: &[Vec<usize>], n_right: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let match_left = max_matching(adj, n_right);
    let root = match_left.iter().position(Option::is_none)?;
    let mut match_right = vec![None; n_right];
    for (u, m) in match_left.iter().enumerate() {
        if let Some(w) = m {
            match_right[*w] = Some(u);
        }
    }
    let mut in_s = vec![false; adj.len()];
    let mut in_n = vec![false; n_right];
    let mut stack = vec![root];
    in_s[root] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if in_n[w] {
                continue;
            }
            in_n[w] = true;
            let partner = match_right[w].expect("maximum matching leaves no augmenting path");
            if !in_s[partner] {
                in_s[partner] = true;
                stack.push(partner);
            }
        }
    }
    let s = (0..adj.len()).filter(|&u| in_s[u]).collect();
    let n = (0..n_right).filter(|&w| in_n[w]).collect();
    Some((s, n))
}

/// Whether every nonempty sub-collection of the left side has a system of
/// distinct representatives, found by backtracking each one separately.
/// Exponential; a cross-check for [`hall_violator`] on tiny inputs.
/// Returns the first failing sub-collection in bitmask order.
pub fn exhaustive_violator(adj: &[Vec<usize>], n_right: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    assert!(n < 24, "exhaustive check is limited to small collections");
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let mut used = vec![false; n_right];
        if !assign(&members, adj, &mut used) {
            return Some(members);
        }
    }
    None
}

fn assign(members: &[usize], adj: &[Vec<usize>], used: &mut [bool]) -> bool {
    let Some((&first, rest)) = members.split_first() else {
        return true;
    };
    for &w in &adj[first] {
        if !used[w] {
            used[w] = true;
            if assign(rest, adj, used) {
                return true;
            }
            used[w] = false;
        }
    }
    false
}
