//! Finite permutations on `{1..n}`, orbits and bounded group closure.
//!
//! Points are 1-based in the public API so flag labels can be used directly.
//! Composition follows the left-action convention: `p.compose(&q)` maps `x`
//! to `p(q(x))`, so `βγ.f = β.(γ.f)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use indexmap::IndexSet;
use num_integer::Integer;
use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("image list is not a bijection (point {point} repeated)")]
    NotBijective { point: usize },
    #[error("closure exceeded the limit of {limit} elements")]
    LimitExceeded { limit: usize },
    #[error("closure needs at least one generator")]
    NoGenerators,
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
}

/// A bijection of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(degree);
        for &y in images {
            if y == 0 || y > degree {
                return Err(PermError::PointOutOfRange { point: y, degree });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(PermError::NotBijective { point: y });
            }
            out.push((y - 1) as u32);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation from 0-based images without checking bijectivity.
    pub(crate) fn from_images0(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i as u32 == v)
        });
        Permutation { images }
    }

    /// Builds a permutation of the given degree from disjoint cycles of 1-based points.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if std::mem::replace(&mut moved[x - 1], true) {
                    return Err(PermError::NotBijective { point: x });
                }
                let y = cycle[(i + 1) % cycle.len()];
                if y == 0 || y > degree {
                    return Err(PermError::PointOutOfRange { point: y, degree });
                }
                images[x - 1] = (y - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(1,2)(3,4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| PermError::Syntax(format!("expected '(' at {rest:?}")))?;
            let close = inner
                .find(')')
                .ok_or_else(|| PermError::Syntax("unclosed cycle".into()))?;
            let body = &inner[..close];
            if !body.is_empty() {
                let cycle = body
                    .split(',')
                    .map(|s| {
                        s.parse::<usize>()
                            .map_err(|_| PermError::Syntax(format!("bad point {s:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                cycles.push(cycle);
            }
            rest = &inner[close + 1..];
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// Image of the 0-based point `x`.
    #[inline]
    pub fn image0(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images0(&self) -> &[u32] {
        &self.images
    }

    /// The 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&y| y as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &y)| i as u32 == y)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &y) in self.images.iter().enumerate() {
            inv[y as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Self {
        Permutation {
            images: other.images.iter().map(|&y| self.images[y as usize]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = self.compose_unchecked(&acc);
        }
        acc
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest point,
    /// ordered by smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles, fixed points included as 1-cycles.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            out.push(len);
        }
        out
    }

    /// Least `k ≥ 1` with `self^k = 1`.
    ///
    /// Panics if the order does not fit in a `u128`.
    pub fn order(&self) -> u128 {
        self.cycle_lengths().into_iter().fold(1u128, |acc, len| {
            let len = len as u128;
            (acc / acc.gcd(&len))
                .checked_mul(len)
                .expect("permutation order overflows u128")
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation, PermError> {
    p.compose(q)
}

pub fn cycle_decomposition(p: &Permutation) -> Vec<Vec<usize>> {
    p.cycles()
}

pub fn element_order(p: &Permutation) -> u128 {
    p.order()
}

/// Orbit of the 1-based point `start` under the group generated by `gens`.
pub fn orbit(start: usize, gens: &[&Permutation]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Partition of `{0..degree}` (0-based) into orbits, each sorted, ordered by
/// smallest point. Returns the orbit index of each point alongside.
pub fn orbits0(degree: usize, gens: &[&Permutation]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut label = vec![usize::MAX; degree];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        label[start] = id;
        let mut members = vec![start];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for g in gens {
                let y = g.image0(x);
                if label[y] == usize::MAX {
                    label[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    (out, label)
}

/// A finite permutation group stored element by element, each with one
/// defining word over the generator indices.
#[derive(Clone, Debug)]
pub struct ElementSet {
    degree: usize,
    generators: Vec<Permutation>,
    elements: IndexSet<Permutation>,
    words: Vec<Vec<usize>>,
    parents: Vec<Option<(usize, usize)>>,
}

impl ElementSet {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element by index; index 0 is the identity.
    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.get_index_of(p)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    /// Word `w` with `element(i) = g[w0] ∘ g[w1] ∘ … ∘ g[wk]`.
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// `(parent, generator)` such that `element(i) = element(parent) ∘ g[generator]`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parents[i]
    }

    pub fn evaluate(&self, word: &[usize]) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for &g in word {
            acc = acc.compose_unchecked(&self.generators[g]);
        }
        acc
    }
}

/// Breadth-first closure of `gens` under composition.
///
/// Each element is recorded with the first word reaching it, which is the
/// shortest and, among those, lexicographically smallest by generator index.
pub fn closure(gens: &[Permutation], limit: usize) -> Result<ElementSet, PermError> {
    let first = gens.first().ok_or(PermError::NoGenerators)?;
    let degree = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
        return Err(PermError::DegreeMismatch {
            left: degree,
            right: bad.degree(),
        });
    }
    let mut elements = IndexSet::new();
    elements.insert(Permutation::identity(degree));
    let mut words = vec![Vec::new()];
    let mut parents = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let next = elements[i].compose_unchecked(g);
            let (j, fresh) = elements.insert_full(next);
            if fresh {
                if elements.len() > limit {
                    return Err(PermError::LimitExceeded { limit });
                }
                let mut w = words[i].clone();
                w.push(gi);
                words.push(w);
                parents.push(Some((i, gi)));
                queue.push_back(j);
            }
        }
    }
    Ok(ElementSet {
        degree,
        generators: gens.to_vec(),
        elements,
        words,
        parents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALPHA: &str = "(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)(15,16)(17,18)(19,20)(21,22)(23,24)";
    const BETA: &str = "(1,6)(2,3)(4,5)(7,12)(8,9)(10,11)(13,18)(14,15)(16,17)(19,24)(20,21)(22,23)";
    const GAMMA: &str = "(1,22)(2,21)(3,8)(4,7)(5,18)(6,17)(9,20)(10,19)(11,14)(12,13)(15,24)(16,23)";

    fn tetra() -> (Permutation, Permutation, Permutation) {
        (
            Permutation::parse_cycles(ALPHA, 24).unwrap(),
            Permutation::parse_cycles(BETA, 24).unwrap(),
            Permutation::parse_cycles(GAMMA, 24).unwrap(),
        )
    }

    #[test]
    fn compose_follows_left_action() {
        let (a, b, c) = tetra();
        let id = Permutation::identity(24);
        assert_eq!(compose(&id, &c).unwrap(), c);
        assert_eq!(compose(&b, &c).unwrap().apply(1), 23);
        assert!(compose(&a, &a).unwrap().is_identity());
        assert_eq!(
            compose(&a, &Permutation::identity(3)),
            Err(PermError::DegreeMismatch { left: 24, right: 3 })
        );
    }

    #[test]
    fn cycle_decomposition_examples() {
        let (a, b, _) = tetra();
        assert!(cycle_decomposition(&Permutation::identity(5)).is_empty());
        let cyc = cycle_decomposition(&a);
        assert_eq!(cyc.len(), 12);
        assert_eq!(cyc[0], vec![1, 2]);
        assert_eq!(cyc[11], vec![23, 24]);
        assert_eq!(a.to_string(), ALPHA);
        let ab = a.compose(&b).unwrap();
        let cyc = cycle_decomposition(&ab);
        assert_eq!(cyc.len(), 8);
        assert!(cyc.iter().all(|c| c.len() == 3));
        assert_eq!(Permutation::identity(4).to_string(), "()");
    }

    #[test]
    fn orbit_examples() {
        let (_, b, c) = tetra();
        let id = Permutation::identity(24);
        assert_eq!(orbit(1, &[&id]), BTreeSet::from([1]));
        assert_eq!(orbit(1, &[&b, &c]).len(), 6);
        let bc = b.compose(&c).unwrap();
        assert_eq!(orbit(1, &[&bc]), BTreeSet::from([1, 17, 23]));
    }

    #[test]
    fn element_order_examples() {
        let (a, b, c) = tetra();
        assert_eq!(element_order(&Permutation::identity(24)), 1);
        assert_eq!(element_order(&c), 2);
        assert_eq!(element_order(&a.compose(&b).unwrap()), 3);
    }

    #[test]
    fn closure_examples() {
        let id = Permutation::identity(4);
        let g = closure(&[id], 10).unwrap();
        assert_eq!(g.len(), 1);
        // S3 acting on 3 points
        let s = Permutation::from_images(&[2, 1, 3]).unwrap();
        let t = Permutation::from_images(&[1, 3, 2]).unwrap();
        let g = closure(&[s.clone(), t.clone()], 10).unwrap();
        assert_eq!(g.len(), 6);
        for i in 0..g.len() {
            assert_eq!(&g.evaluate(g.word(i)), g.element(i));
        }
        assert_eq!(closure(&[s, t], 5).unwrap_err(), PermError::LimitExceeded { limit: 5 });
        assert_eq!(closure(&[], 5).unwrap_err(), PermError::NoGenerators);
    }

    #[test]
    fn closure_words_are_shortlex() {
        let (a, b, c) = tetra();
        let g = closure(&[a, b, c], 1000).unwrap();
        for i in 1..g.len() {
            let w = g.word(i);
            assert!(g.word(i - 1).len() <= w.len());
        }
        // the word for b∘a must be [1, 0] and not any longer alternative
        let ba = g.generators()[1].compose(&g.generators()[0]).unwrap();
        assert_eq!(g.word(g.index_of(&ba).unwrap()), &[1, 0]);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Permutation::parse_cycles("(1,2", 3),
            Err(PermError::Syntax(_))
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1,4)", 3),
            Err(PermError::PointOutOfRange { point: 4, .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1,2)(2,3)", 3),
            Err(PermError::NotBijective { point: 2 })
        ));
        assert!(matches!(
            Permutation::from_images(&[1, 1]),
            Err(PermError::NotBijective { point: 1 })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((1..=n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(&v).unwrap())
        }

        proptest! {
            #[test]
            fn associative((p, q, r) in (1usize..12).prop_flat_map(|n| (perm(n), perm(n), perm(n)))) {
                let left = p.compose(&q).unwrap().compose(&r).unwrap();
                let right = p.compose(&q.compose(&r).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn inverse_cancels(p in (1usize..20).prop_flat_map(perm)) {
                prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            }

            #[test]
            fn cycles_round_trip(p in (1usize..20).prop_flat_map(perm)) {
                let rebuilt = Permutation::from_cycles(p.degree(), &p.cycles()).unwrap();
                prop_assert_eq!(&rebuilt, &p);
                let reparsed = Permutation::parse_cycles(&p.to_string(), p.degree()).unwrap();
                prop_assert_eq!(reparsed, p);
            }

            #[test]
            fn orbit_independent_of_start((p, q) in (2usize..15).prop_flat_map(|n| (perm(n), perm(n)))) {
                let o = orbit(1, &[&p, &q]);
                for &x in &o {
                    prop_assert_eq!(&orbit(x, &[&p, &q]), &o);
                }
            }

            #[test]
            fn order_matches_repeated_powers(p in (1usize..10).prop_flat_map(perm)) {
                let k = p.order() as usize;
                prop_assert!(p.pow(k).is_identity());
                for j in 1..k {
                    prop_assert!(!p.pow(j).is_identity());
                }
            }
        }
    }
}
