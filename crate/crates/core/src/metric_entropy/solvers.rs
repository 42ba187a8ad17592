//! Combinatorial kernels: maximum clique and minimum closed dominating set
//! on small symmetric relations.

use serde::Serialize;

/// Result of a bounded search. `size` is attained by `witness`; the optimum
/// lies in `[lower, upper]` and `exact` means `lower == upper`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolverResult {
    pub size: usize,
    pub witness: Vec<usize>,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

impl SolverResult {
    fn exact(witness: Vec<usize>) -> Self {
        let k = witness.len();
        Self { size: k, witness, lower: k, upper: k, exact: true }
    }
}

pub const EXACT_CLIQUE_LIMIT: usize = 64;
pub const EXACT_DOMINATION_LIMIT: usize = 20;

/// Maximum clique of `adj` (irreflexive, symmetric). Exact branch and bound
/// with colouring bounds up to 64 vertices; greedy beyond.
pub fn max_clique(adj: &[Vec<bool>]) -> SolverResult {
    let n = adj.len();
    if n == 0 {
        return SolverResult::exact(Vec::new());
    }
    if n <= EXACT_CLIQUE_LIMIT {
        let nbr: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| j != i && adj[i][j]).fold(0u64, |m, j| m | (1 << j)))
            .collect();
        let mut best = greedy_clique(adj);
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        expand(&nbr, &mut Vec::new(), all, &mut best);
        best.sort_unstable();
        return SolverResult::exact(best);
    }
    let mut witness = greedy_clique(adj);
    witness.sort_unstable();
    let upper = greedy_colouring(adj, &(0..n).collect::<Vec<_>>()).into_iter().max().map_or(0, |c| c + 1);
    let lower = witness.len();
    SolverResult { size: lower, witness, lower, upper, exact: lower == upper }
}

fn greedy_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(adj[i].iter().filter(|&&b| b).count()));
    let mut clique: Vec<usize> = Vec::new();
    for v in order {
        if clique.iter().all(|&u| adj[u][v]) {
            clique.push(v);
        }
    }
    clique
}

/// Colour index per vertex of `vs`, first fit in the given order.
fn greedy_colouring(adj: &[Vec<bool>], vs: &[usize]) -> Vec<usize> {
    let mut colour = vec![usize::MAX; adj.len()];
    let mut out = Vec::with_capacity(vs.len());
    for &v in vs {
        let mut c = 0;
        while vs.iter().any(|&u| colour[u] == c && adj[u][v]) {
            c += 1;
        }
        colour[v] = c;
        out.push(c);
    }
    out
}

fn expand(nbr: &[u64], clique: &mut Vec<usize>, cand: u64, best: &mut Vec<usize>) {
    // colour the candidates; vertices are then tried in reverse colour order
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= q - 1;
            q &= !nbr[v];
            uncoloured &= !(1 << v);
            order.push((v, colour));
        }
    }
    let mut cand = cand;
    for &(v, c) in order.iter().rev() {
        if clique.len() + c <= best.len() {
            return;
        }
        clique.push(v);
        let next = cand & nbr[v];
        if next == 0 {
            if clique.len() > best.len() {
                *best = clique.clone();
            }
        } else {
            expand(nbr, clique, next, best);
        }
        clique.pop();
        cand &= !(1 << v);
    }
}

/// Minimum closed dominating set of `close` (reflexivity is implied: every
/// vertex dominates itself). Exact by increasing subset size up to 20
/// vertices; greedy set cover beyond.
pub fn min_dominating(close: &[Vec<bool>]) -> SolverResult {
    let n = close.len();
    if n == 0 {
        return SolverResult::exact(Vec::new());
    }
    let ball: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| i == j || close[i][j]).collect()).collect();
    if n <= EXACT_DOMINATION_LIMIT {
        let masks: Vec<u32> = ball.iter().map(|b| b.iter().fold(0u32, |m, &j| m | (1 << j))).collect();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        for k in 1..=n {
            let mut pick: Vec<usize> = (0..k).collect();
            loop {
                if pick.iter().fold(0u32, |m, &i| m | masks[i]) == full {
                    return SolverResult::exact(pick);
                }
                if !next_combination(&mut pick, n) {
                    break;
                }
            }
        }
        unreachable!("the whole set dominates");
    }
    let mut covered = vec![false; n];
    let mut witness = Vec::new();
    while covered.iter().any(|&c| !c) {
        let v = (0..n)
            .max_by_key(|&i| (ball[i].iter().filter(|&&j| !covered[j]).count(), std::cmp::Reverse(i)))
            .expect("nonempty");
        for &j in &ball[v] {
            covered[j] = true;
        }
        witness.push(v);
    }
    witness.sort_unstable();
    let max_ball = ball.iter().map(Vec::len).max().unwrap_or(1);
    let lower = n.div_ceil(max_ball);
    let upper = witness.len();
    SolverResult { size: upper, witness, lower, upper, exact: lower == upper }
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete_multipartite(parts: &[usize]) -> Vec<Vec<bool>> {
        let label: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k)).collect();
        let n = label.len();
        (0..n).map(|i| (0..n).map(|j| label[i] != label[j]).collect()).collect()
    }

    #[test]
    fn multipartite_clique() {
        let adj = complete_multipartite(&[3, 1, 4, 2]);
        let r = max_clique(&adj);
        assert!(r.exact);
        assert_eq!(r.size, 4);
        let big = complete_multipartite(&[20, 20, 20, 20]);
        let r = max_clique(&big);
        assert_eq!((r.size, r.exact), (4, true));
    }

    #[test]
    fn path_domination() {
        // a path on 7 vertices needs 3
        let n = 7usize;
        let close: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i.abs_diff(j) == 1).collect()).collect();
        let r = min_dominating(&close);
        assert_eq!((r.size, r.exact), (3, true));
        assert_eq!(r.witness, vec![0, 2, 5]);
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(max_clique(&[]).size, 0);
        assert_eq!(min_dominating(&[vec![false]]).size, 1);
        assert_eq!(max_clique(&[vec![false]]).size, 1);
    }
}
