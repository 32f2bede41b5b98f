//! Todd–Coxeter coset enumeration.
//!
//! The enumerator works with right cosets `Vg` and the right action, as is
//! customary. The left cosets `gV` used everywhere else correspond through
//! `gV ↦ Vg⁻¹`, under which the left action of `x` becomes the right action of
//! `x⁻¹`. [`CosetTable::left`] and [`CosetTable::trace_word`] expose the left
//! action; coset 0 is the subgroup itself.

use crate::perm::Permutation;

use super::{FpGroupError, GroupPresentation, Letter, Word};

const UNDEF: u32 = u32::MAX;

/// Bounds for one enumeration run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest index accepted as an answer.
    pub max_index: usize,
    /// Total cosets that may be defined, including ones later identified.
    pub coset_budget: usize,
}

impl EnumerationLimits {
    /// Budget defaults to ten times the index bound.
    pub fn new(max_index: usize) -> Self {
        EnumerationLimits {
            max_index,
            coset_budget: max_index.saturating_mul(10),
        }
    }

    pub fn with_budget(max_index: usize, coset_budget: usize) -> Self {
        EnumerationLimits {
            max_index,
            coset_budget,
        }
    }
}

/// A complete, standardized coset table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    // right action, row-major: rows[coset * columns + letter column]
    rows: Vec<u32>,
}

impl CosetTable {
    pub fn coset_count(&self) -> usize {
        self.rows.len() / self.columns()
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    fn columns(&self) -> usize {
        2 * self.generator_count
    }

    /// Right action `Vg · x`.
    #[inline]
    pub fn right(&self, coset: usize, letter: Letter) -> usize {
        self.rows[coset * self.columns() + letter.column()] as usize
    }

    /// Left action `x · gV`.
    #[inline]
    pub fn left(&self, coset: usize, letter: Letter) -> usize {
        self.right(coset, letter.inverse())
    }

    /// Applies the letters of `word` right to left (left action).
    pub fn trace_word(&self, coset: usize, word: &Word) -> usize {
        word.letters()
            .iter()
            .rev()
            .fold(coset, |c, &l| self.left(c, l))
    }

    /// Applies the letters of `word` left to right (right action).
    pub fn trace_right(&self, coset: usize, word: &Word) -> usize {
        word.letters().iter().fold(coset, |c, &l| self.right(c, l))
    }

    /// Left action of each generator as a permutation; coset `i` is point `i + 1`.
    pub fn to_permutations(&self) -> Vec<Permutation> {
        let n = self.coset_count();
        (0..self.generator_count)
            .map(|g| {
                let letter = Letter::new(g, false);
                Permutation::from_images0((0..n).map(|c| self.left(c, letter) as u32).collect())
            })
            .collect()
    }

    /// True when every relator fixes every coset.
    pub fn satisfies(&self, relators: &[Word]) -> bool {
        (0..self.coset_count())
            .all(|c| relators.iter().all(|r| self.trace_right(c, r) == c))
    }
}

pub fn table_to_permutations(t: &CosetTable) -> Vec<Permutation> {
    t.to_permutations()
}

pub fn trace_word(t: &CosetTable, coset: usize, w: &Word) -> usize {
    t.trace_word(coset, w)
}

/// Enumerates the cosets of `⟨subgroup_gens⟩`; the coset budget is ten times `limit`.
pub fn coset_enumeration(
    pres: &GroupPresentation,
    subgroup_gens: &[Word],
    limit: usize,
) -> Result<CosetTable, FpGroupError> {
    enumerate_cosets(pres, subgroup_gens, EnumerationLimits::new(limit))
}

/// Regular table of the presentation extended by `extra_relators`. Its cosets
/// are also the cosets of the normal closure of `extra_relators` in the
/// original group.
pub fn quotient_coset_table(
    pres: &GroupPresentation,
    extra_relators: &[Word],
    limit: usize,
) -> Result<CosetTable, FpGroupError> {
    enumerate_cosets(&pres.with_relators(extra_relators), &[], EnumerationLimits::new(limit))
}

pub fn enumerate_cosets(
    pres: &GroupPresentation,
    subgroup_gens: &[Word],
    limits: EnumerationLimits,
) -> Result<CosetTable, FpGroupError> {
    let gens = pres.generator_count();
    for w in pres.relators().iter().chain(subgroup_gens) {
        if let Some(l) = w.letters().iter().find(|l| l.generator() >= gens) {
            return Err(FpGroupError::UnknownGenerator(format!("#{}", l.generator())));
        }
    }
    let mut e = Enumerator::new(gens, limits);
    e.run(pres, subgroup_gens)?;
    let table = e.standardize();
    if table.coset_count() > limits.max_index {
        return Err(FpGroupError::LimitExceeded {
            max_index: limits.max_index,
            coset_budget: limits.coset_budget,
            defined: e.defined,
        });
    }
    Ok(table)
}

struct Enumerator {
    columns: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    defined: usize,
    limits: EnumerationLimits,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(gens: usize, limits: EnumerationLimits) -> Self {
        let columns = 2 * gens;
        Enumerator {
            columns,
            table: vec![UNDEF; columns],
            parent: vec![0],
            defined: 1,
            limits,
            queue: Vec::new(),
        }
    }

    #[inline]
    fn get(&self, c: usize, col: usize) -> u32 {
        self.table[c * self.columns + col]
    }

    #[inline]
    fn set(&mut self, c: usize, col: usize, v: u32) {
        self.table[c * self.columns + col] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn exceeded(&self) -> FpGroupError {
        FpGroupError::LimitExceeded {
            max_index: self.limits.max_index,
            coset_budget: self.limits.coset_budget,
            defined: self.defined,
        }
    }

    fn define(&mut self, c: usize, col: usize) -> Result<(), FpGroupError> {
        if self.defined >= self.limits.coset_budget {
            return Err(self.exceeded());
        }
        let new = self.parent.len();
        self.parent.push(new as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.columns));
        self.defined += 1;
        self.set(c, col, new as u32);
        self.set(new, col ^ 1, c as u32);
        Ok(())
    }

    fn run(&mut self, pres: &GroupPresentation, subgroup_gens: &[Word]) -> Result<(), FpGroupError> {
        let relators: Vec<Vec<usize>> = pres
            .relators()
            .iter()
            .map(|r| r.letters().iter().map(|l| l.column()).collect())
            .collect();
        for w in subgroup_gens {
            let cols: Vec<usize> = w.letters().iter().map(|l| l.column()).collect();
            self.scan_and_fill(0, &cols)?;
        }
        let mut c = 0;
        while c < self.parent.len() {
            if self.is_live(c) {
                for r in &relators {
                    self.scan_and_fill(c, r)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                if self.is_live(c) {
                    for col in 0..self.columns {
                        if self.get(c, col) == UNDEF {
                            self.define(c, col)?;
                        }
                    }
                }
            }
            c += 1;
        }
        Ok(())
    }

    fn scan_and_fill(&mut self, start: usize, word: &[usize]) -> Result<(), FpGroupError> {
        let mut f = start;
        let mut b = start;
        let mut i: isize = 0;
        let mut j: isize = word.len() as isize - 1;
        loop {
            while i <= j && self.get(f, word[i as usize]) != UNDEF {
                f = self.get(f, word[i as usize]) as usize;
                i += 1;
            }
            if i > j {
                if f != start {
                    self.coincidence(f, start);
                }
                return Ok(());
            }
            while j >= i && self.get(b, word[j as usize] ^ 1) != UNDEF {
                b = self.get(b, word[j as usize] ^ 1) as usize;
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let col = word[i as usize];
                self.set(f, col, b as u32);
                self.set(b, col ^ 1, f as u32);
                return Ok(());
            }
            self.define(f, word[i as usize])?;
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut x = c;
        while self.parent[x] as usize != root {
            let next = self.parent[x] as usize;
            self.parent[x] = root as u32;
            x = next;
        }
        root
    }

    fn merge(&mut self, k: usize, l: usize) {
        let phi = self.rep(k);
        let psi = self.rep(l);
        if phi != psi {
            let (mu, nu) = if phi < psi { (phi, psi) } else { (psi, phi) };
            self.parent[nu] = mu as u32;
            self.queue.push(nu as u32);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let gamma = self.queue[i] as usize;
            i += 1;
            for col in 0..self.columns {
                let delta = self.get(gamma, col);
                if delta == UNDEF {
                    continue;
                }
                let delta = delta as usize;
                self.set(delta, col ^ 1, UNDEF);
                let mu = self.rep(gamma);
                let nu = self.rep(delta);
                if self.get(mu, col) != UNDEF {
                    let t = self.get(mu, col) as usize;
                    self.merge(nu, t);
                } else if self.get(nu, col ^ 1) != UNDEF {
                    let t = self.get(nu, col ^ 1) as usize;
                    self.merge(mu, t);
                } else {
                    self.set(mu, col, nu as u32);
                    self.set(nu, col ^ 1, mu as u32);
                }
            }
        }
    }

    /// Compacts live cosets and renumbers them in first-appearance scan order.
    fn standardize(&self) -> CosetTable {
        let mut order: Vec<usize> = vec![0];
        let mut number = vec![UNDEF; self.parent.len()];
        number[0] = 0;
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            k += 1;
            for col in 0..self.columns {
                let d = self.get(c, col) as usize;
                debug_assert!(self.is_live(d));
                if number[d] == UNDEF {
                    number[d] = order.len() as u32;
                    order.push(d);
                }
            }
        }
        let mut rows = Vec::with_capacity(order.len() * self.columns);
        for &c in &order {
            for col in 0..self.columns {
                rows.push(number[self.get(c, col) as usize]);
            }
        }
        CosetTable {
            generator_count: self.columns / 2,
            rows,
        }
    }
}
