//! Canonical relabeling of quivers.
//!
//! Vertices are first split into classes by iterated colour refinement (a
//! vertex's colour is refined by the multiset of `(b[v][w], colour of w)`
//! over its neighbours). Ties are broken by individualising one vertex of the
//! first smallest non-trivial class and refining again, exhaustively. Among
//! the discrete labelings reached this way the lexicographically least
//! relabeled matrix wins. Automorphisms found along the way prune siblings
//! that lie in the same orbit of the pointwise stabiliser of the current path.

use super::Quiver;

/// A quiver in canonical form together with a witness labeling:
/// `original.relabel(&labeling) == quiver`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalQuiver {
    pub quiver: Quiver,
    pub labeling: Vec<usize>,
}

impl CanonicalQuiver {
    /// Compact byte key of the canonical matrix (zigzag varints of the strict
    /// upper triangle). Equal keys iff isomorphic quivers of equal size.
    pub fn key(&self) -> Vec<u8> {
        encode_upper(&self.quiver)
    }
}

pub fn canonical_form(q: &Quiver) -> CanonicalQuiver {
    let n = q.n();
    let colors = refine(q, vec![0; n]);
    let mut search = Search { q, best: None, autos: Vec::new() };
    let mut path = Vec::new();
    search.visit(colors, &mut path);
    let (matrix, labeling) = search.best.expect("search reaches at least one leaf");
    CanonicalQuiver { quiver: Quiver { n, b: matrix }, labeling }
}

fn encode_upper(q: &Quiver) -> Vec<u8> {
    let n = q.n();
    let mut out = Vec::with_capacity(n * (n - 1) / 2 + 1);
    push_varint(&mut out, n as u64);
    for i in 0..n {
        for j in i + 1..n {
            let v = q.entry(i, j);
            push_varint(&mut out, ((v << 1) ^ (v >> 63)) as u64);
        }
    }
    out
}

fn push_varint(out: &mut Vec<u8>, mut z: u64) {
    loop {
        let byte = (z & 0x7f) as u8;
        z >>= 7;
        if z == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Refines `colors` to the coarsest stable colouring below it. Output colours
/// are ranks `0..c`, ordered consistently with the input colours.
fn refine(q: &Quiver, mut colors: Vec<u32>) -> Vec<u32> {
    let n = q.n();
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(u32, Vec<(i64, u32)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(i64, u32)> = (0..n)
                    .filter_map(|w| {
                        let x = q.entry(v, w);
                        (x != 0).then_some((x, colors[w]))
                    })
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<(i64, u32)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = sigs
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap() as u32)
            .collect();
        let next_classes = sorted.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    q: &'a Quiver,
    best: Option<(Vec<i64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, colors: Vec<u32>, path: &mut Vec<usize>) {
        let n = self.q.n();
        let mut sizes = vec![0usize; n];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = (0..n)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            self.leaf(colors.iter().map(|&c| c as usize).collect());
            return;
        };
        let target = target as u32;
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            if !explored.is_empty() && self.same_orbit_as_explored(v, &explored, path) {
                continue;
            }
            let split: Vec<u32> = colors
                .iter()
                .enumerate()
                .map(|(u, &c)| 2 * c + u32::from(c == target && u != v))
                .collect();
            let refined = refine(self.q, split);
            path.push(v);
            self.visit(refined, path);
            path.pop();
            explored.push(v);
        }
    }

    fn leaf(&mut self, labeling: Vec<usize>) {
        let matrix = self.q.relabel(&labeling).b;
        match &self.best {
            None => self.best = Some((matrix, labeling)),
            Some((best, best_lab)) => match matrix.cmp(best) {
                std::cmp::Ordering::Less => self.best = Some((matrix, labeling)),
                std::cmp::Ordering::Equal => {
                    let n = labeling.len();
                    let mut inv = vec![0; n];
                    for (v, &p) in best_lab.iter().enumerate() {
                        inv[p] = v;
                    }
                    let g: Vec<usize> = (0..n).map(|v| inv[labeling[v]]).collect();
                    if g.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(g);
                    }
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Whether `v` is in the orbit of an already explored sibling under the
    /// known automorphisms that fix every vertex of `path`.
    fn same_orbit_as_explored(&self, v: usize, explored: &[usize], path: &[usize]) -> bool {
        let n = self.q.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for g in &self.autos {
            if path.iter().any(|&p| g[p] != p) {
                continue;
            }
            any = true;
            for x in 0..n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g[x]));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == rv)
    }
}
