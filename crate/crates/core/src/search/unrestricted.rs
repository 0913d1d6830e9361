//! Exact minimum hitting set over explicit hyperedges, with no shiftedness
//! or closure assumptions. Vertices are bit positions of a `u128`.

/// All collections of `s` distinct, pairwise disjoint sets drawn from `sets`,
/// as bitmasks over positions in `sets`.
pub(crate) fn disjoint_collections(sets: &[u64], s: usize) -> Vec<u128> {
    fn go(sets: &[u64], s: usize, from: usize, used: u64, chosen: u128, out: &mut Vec<u128>) {
        if s == 0 {
            out.push(chosen);
            return;
        }
        for i in from..sets.len() {
            if sets[i] & used == 0 {
                go(sets, s - 1, i + 1, used | sets[i], chosen | 1 << i, out);
            }
        }
    }
    assert!(sets.len() <= 128);
    let mut out = Vec::new();
    go(sets, s, 0, 0, 0, &mut out);
    out
}

/// Drops edges that contain another edge; hitting the smaller one suffices.
fn reduce(mut edges: Vec<u128>) -> Vec<u128> {
    edges.sort_by_key(|e| e.count_ones());
    edges.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(edges.len());
    for e in edges {
        if !kept.iter().any(|&k| k & !e == 0) {
            kept.push(e);
        }
    }
    kept
}

pub(crate) struct HittingSetResult {
    pub size: usize,
    pub set: u128,
    pub nodes: u64,
}

/// Minimum hitting set; `None` if some edge is empty.
pub(crate) fn min_hitting_set(edges: Vec<u128>) -> Option<HittingSetResult> {
    if edges.contains(&0) {
        return None;
    }
    let edges = reduce(edges);
    // Greedy start gives a finite incumbent.
    let mut greedy = 0u128;
    for &e in &edges {
        if e & greedy == 0 {
            greedy |= 1 << e.trailing_zeros();
        }
    }
    let mut solver = Solver { edges: &edges, best: greedy.count_ones() as usize, best_set: greedy, nodes: 0 };
    solver.node(0, 0);
    Some(HittingSetResult { size: solver.best, set: solver.best_set, nodes: solver.nodes })
}

struct Solver<'a> {
    edges: &'a [u128],
    best: usize,
    best_set: u128,
    nodes: u64,
}

impl Solver<'_> {
    fn node(&mut self, chosen: u128, forbidden: u128) {
        self.nodes += 1;
        let size = chosen.count_ones() as usize;
        let mut branch: Option<u128> = None;
        let mut packed = 0u128;
        let mut lower = 0usize;
        for &e in self.edges {
            if e & chosen != 0 {
                continue;
            }
            let avail = e & !forbidden;
            if avail == 0 {
                return;
            }
            if branch.is_none_or(|b| avail.count_ones() < b.count_ones()) {
                branch = Some(avail);
            }
            // disjoint unhit edges each need their own vertex
            if avail & packed == 0 {
                packed |= avail;
                lower += 1;
            }
        }
        let Some(mut avail) = branch else {
            if size < self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return;
        };
        if size + lower >= self.best {
            return;
        }
        let mut forbid = forbidden;
        while avail != 0 {
            let v = 1u128 << avail.trailing_zeros();
            avail &= !v;
            self.node(chosen | v, forbid);
            forbid |= v;
        }
    }
}
