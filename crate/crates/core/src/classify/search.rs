//! Bounded search for geodesic self-dual surfaces by their flag action.
//!
//! A degree-`d` surface is the same as a transitive action of `H_d` by three
//! fixed-point-free involutions. The search backtracks over partial actions
//! on at most `cap` flags, numbered in standardized order, and deduces
//! forced entries from the relators. It is exhaustive only up to the cap.

use crate::perm::Permutation;
use crate::surface::{is_geodesic_self_dual, FlagSurface, SurfaceStats};

use super::ClassifyError;

const UNDEF: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct PartialEntry {
    pub surface: FlagSurface,
    pub surface_stats: SurfaceStats,
}

/// Geodesic self-dual degree-`d` surfaces with at most `cap` flags, one per
/// isomorphism class, by descending flag count.
pub fn partial_search(d: usize, cap: usize) -> Result<Vec<PartialEntry>, ClassifyError> {
    if d < 3 {
        return Err(ClassifyError::InvalidParameter(format!("degree {d} is below 3")));
    }
    let relators: Vec<Vec<usize>> = vec![
        [0, 1].repeat(3),
        [0, 2].repeat(2),
        [1, 2].repeat(d),
        [1, 0, 2].repeat(d),
    ];
    // rotations[g]: every cyclic rotation of a relator that starts with g
    let mut rotations: [Vec<Vec<usize>>; 3] = Default::default();
    for r in &relators {
        for i in 0..r.len() {
            let rot: Vec<usize> = r[i..].iter().chain(&r[..i]).copied().collect();
            if !rotations[rot[0]].contains(&rot) {
                rotations[rot[0]].push(rot);
            }
        }
    }
    let mut search = Search {
        d,
        cap,
        rotations,
        found: Vec::new(),
    };
    let state = State {
        table: vec![[UNDEF; 3]],
    };
    if cap >= 1 {
        search.descend(state);
    }
    let mut found = search.found;
    found.sort_by(|x, y| {
        y.surface_stats
            .flag_count
            .cmp(&x.surface_stats.flag_count)
            .then_with(|| x.surface.to_text().cmp(&y.surface.to_text()))
    });
    Ok(found)
}

#[derive(Clone)]
struct State {
    table: Vec<[u32; 3]>,
}

impl State {
    /// Sets `x·g = y` and `y·g = x`, refusing fixed points and coincidences
    /// between two involutions at one flag.
    fn define(&mut self, x: usize, g: usize, y: usize, pending: &mut Vec<(usize, usize)>) -> bool {
        if x == y {
            return false;
        }
        for (p, q) in [(x, y), (y, x)] {
            let cur = self.table[p][g];
            if cur != UNDEF {
                if cur as usize != q {
                    return false;
                }
                continue;
            }
            if (0..3).any(|h| h != g && self.table[p][h] == q as u32) {
                return false;
            }
            self.table[p][g] = q as u32;
        }
        pending.push((x, g));
        pending.push((y, g));
        true
    }

    /// Scans `word` cyclically from `x`; fills a single gap or reports a clash.
    fn scan(&mut self, x: usize, word: &[usize], pending: &mut Vec<(usize, usize)>) -> bool {
        let m = word.len();
        let mut f = x;
        let mut i = 0;
        while i < m {
            let t = self.table[f][word[i]];
            if t == UNDEF {
                break;
            }
            f = t as usize;
            i += 1;
        }
        if i == m {
            return f == x;
        }
        let mut b = x;
        let mut j = m;
        while j > i {
            let t = self.table[b][word[j - 1]];
            if t == UNDEF {
                break;
            }
            b = t as usize;
            j -= 1;
        }
        if j == i {
            return f == b;
        }
        if j == i + 1 {
            return self.define(f, word[i], b, pending);
        }
        true
    }

    fn deduce(&mut self, mut pending: Vec<(usize, usize)>, rotations: &[Vec<Vec<usize>>; 3]) -> bool {
        while let Some((x, g)) = pending.pop() {
            for w in &rotations[g] {
                if !self.scan(x, w, &mut pending) {
                    return false;
                }
            }
        }
        true
    }

    fn first_gap(&self) -> Option<(usize, usize)> {
        self.table
            .iter()
            .enumerate()
            .find_map(|(x, row)| row.iter().position(|&v| v == UNDEF).map(|g| (x, g)))
    }

    /// Whether no other base point gives a smaller standardized table.
    fn is_canonical(&self) -> bool {
        let n = self.table.len();
        let mut label = vec![UNDEF; n];
        let mut order = Vec::with_capacity(n);
        'base: for base in 1..n {
            label.iter_mut().for_each(|l| *l = UNDEF);
            order.clear();
            label[base] = 0;
            order.push(base);
            let mut i = 0;
            while i < n {
                let x = order[i];
                for g in 0..3 {
                    let y = self.table[x][g] as usize;
                    if label[y] == UNDEF {
                        label[y] = order.len() as u32;
                        order.push(y);
                    }
                    let candidate = label[y];
                    let current = self.table[i][g];
                    if candidate < current {
                        return false;
                    }
                    if candidate > current {
                        continue 'base;
                    }
                }
                i += 1;
            }
        }
        true
    }
}

struct Search {
    d: usize,
    cap: usize,
    rotations: [Vec<Vec<usize>>; 3],
    found: Vec<PartialEntry>,
}

impl Search {
    fn descend(&mut self, state: State) {
        let Some((x, g)) = state.first_gap() else {
            self.complete(&state);
            return;
        };
        let n = state.table.len();
        let mut targets: Vec<usize> = (x + 1..n).filter(|&y| state.table[y][g] == UNDEF).collect();
        if n < self.cap {
            targets.push(n);
        }
        for y in targets {
            let mut next = state.clone();
            if y == n {
                next.table.push([UNDEF; 3]);
            }
            let mut pending = Vec::new();
            if next.define(x, g, y, &mut pending) && next.deduce(pending, &self.rotations) {
                self.descend(next);
            }
        }
    }

    fn complete(&mut self, state: &State) {
        if !state.is_canonical() {
            return;
        }
        let n = state.table.len();
        let perm = |g: usize| Permutation::from_images0(state.table.iter().map(|r| r[g]).collect());
        let Ok(surface) = FlagSurface::new(n, perm(0), perm(1), perm(2)) else {
            return;
        };
        let surface_stats = surface.stats();
        if surface_stats.uniform_degree != Some(self.d) || is_geodesic_self_dual(&surface).is_none() {
            return;
        }
        self.found.push(PartialEntry { surface, surface_stats });
    }
}
