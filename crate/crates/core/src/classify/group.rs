//! The finite group `H_d` as an explicit multiplication structure.

use crate::fp_group::{coset_enumeration, geodesic_presentation, GroupPresentation, Letter, Word};
use crate::perm::{closure, ElementSet, Permutation};

use super::ClassifyError;

/// Generator indices in the natural order `a, b, c`.
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;

/// `H_d` realized through its regular permutation representation.
///
/// Elements are numbered by a breadth-first closure over the generators,
/// with 0 the identity. Products are answered in constant time through the
/// image of the base coset.
#[derive(Clone, Debug)]
pub struct GroupData {
    d: usize,
    presentation: GroupPresentation,
    elements: ElementSet,
    gen_perms: Vec<Permutation>,
    // element id of a, b, c
    gen_ids: [usize; 3],
    // closure generator index -> natural generator
    gen_order: [usize; 3],
    point: Vec<u32>,
    by_point: Vec<u32>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    sharp: Vec<u32>,
    forbidden: Vec<bool>,
}

/// Realizes `H_d`; fails with an enumeration error when `|H_d| > limit`.
pub fn realize_group(d: usize, limit: usize) -> Result<GroupData, ClassifyError> {
    GroupData::realize(d, limit, [A, B, C])
}

impl GroupData {
    /// Like [`realize_group`], but the element closure visits generators in
    /// `gen_order`, which changes every element id but no structure.
    pub fn realize(d: usize, limit: usize, gen_order: [usize; 3]) -> Result<Self, ClassifyError> {
        let mut check = gen_order;
        check.sort_unstable();
        if d == 0 || check != [A, B, C] {
            return Err(ClassifyError::InvalidParameter(format!(
                "degree {d}, generator order {gen_order:?}"
            )));
        }
        let presentation = geodesic_presentation(d);
        let table = coset_enumeration(&presentation, &[], limit)?;
        let gen_perms = table.to_permutations();
        let ordered: Vec<Permutation> = gen_order.iter().map(|&g| gen_perms[g].clone()).collect();
        let elements = closure(&ordered, table.coset_count())?;
        let n = elements.len();

        let mut point = vec![0u32; n];
        let mut by_point = vec![0u32; n];
        for (i, p) in elements.iter().enumerate() {
            point[i] = p.image0(0) as u32;
            by_point[p.image0(0)] = i as u32;
        }
        let mut inverse = vec![0u32; n];
        for (i, p) in elements.iter().enumerate() {
            // g⁻¹ sends the base coset to the coset of g⁻¹
            inverse[i] = by_point[p.inverse().image0(0)];
        }
        let gen_ids = [A, B, C].map(|g| elements.index_of(&gen_perms[g]).expect("generator in closure"));

        let mut g = GroupData {
            d,
            presentation,
            elements,
            gen_perms,
            gen_ids,
            gen_order,
            point,
            by_point,
            inverse,
            orders: Vec::new(),
            sharp: Vec::new(),
            forbidden: Vec::new(),
        };
        g.orders = (0..n).map(|x| g.compute_order(x)).collect();
        g.build_sharp()?;
        g.build_forbidden();
        Ok(g)
    }

    fn compute_order(&self, x: usize) -> u32 {
        let mut e = x;
        let mut k = 1;
        while e != 0 {
            e = self.mul(e, x);
            k += 1;
        }
        k
    }

    fn build_sharp(&mut self) -> Result<(), ClassifyError> {
        let n = self.order();
        let [a, b, c] = self.gen_ids;
        let images = [a, b, self.mul(a, c)];
        let mut sharp = vec![0u32; n];
        for i in 1..n {
            let (parent, gi) = self.elements.parent(i).expect("non-identity element has a parent");
            sharp[i] = self.mul(sharp[parent] as usize, images[self.gen_order[gi]]) as u32;
        }
        // well-defined on every edge of the Cayley graph, hence a homomorphism
        for x in 0..n {
            for (g, &img) in self.gen_ids.iter().zip(&images) {
                if sharp[self.mul(x, *g)] as usize != self.mul(sharp[x] as usize, img) {
                    return Err(ClassifyError::NotAutomorphism { element: x });
                }
            }
            if sharp[sharp[x] as usize] as usize != x {
                return Err(ClassifyError::NotAutomorphism { element: x });
            }
        }
        self.sharp = sharp;
        Ok(())
    }

    fn build_forbidden(&mut self) {
        let n = self.order();
        let [a, b, c] = self.gen_ids;
        let roots = [a, c, self.mul(a, b), self.mul(a, c), self.mul(b, c)];
        let mut powers: Vec<usize> = Vec::new();
        for r in roots {
            let mut e = r;
            while e != 0 {
                powers.push(e);
                e = self.mul(e, r);
            }
        }
        powers.sort_unstable();
        powers.dedup();
        let mut forbidden = vec![false; n];
        for y in powers {
            if forbidden[y] {
                continue;
            }
            for g in 0..n {
                forbidden[self.conjugate(g, y)] = true;
            }
        }
        self.forbidden = forbidden;
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// `|H_d|`.
    pub fn order(&self) -> usize {
        self.point.len()
    }

    pub fn presentation(&self) -> &GroupPresentation {
        &self.presentation
    }

    pub fn elements(&self) -> &ElementSet {
        &self.elements
    }

    /// Regular left action of `a, b, c` on the cosets of the trivial subgroup.
    pub fn gen_perms(&self) -> &[Permutation] {
        &self.gen_perms
    }

    /// Element id of generator `A`, `B` or `C`.
    pub fn generator(&self, g: usize) -> usize {
        self.gen_ids[g]
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.by_point[self.elements.element(x).image0(self.point[y] as usize)] as usize
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x] as usize
    }

    /// Image under the geodesic automorphism.
    #[inline]
    pub fn sharp(&self, x: usize) -> usize {
        self.sharp[x] as usize
    }

    pub fn sharp_table(&self) -> Vec<usize> {
        self.sharp.iter().map(|&x| x as usize).collect()
    }

    pub fn is_forbidden(&self, x: usize) -> bool {
        self.forbidden[x]
    }

    pub fn forbidden(&self) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.forbidden[x]).collect()
    }

    /// Element represented by a word over `a, b, c`.
    pub fn evaluate(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |acc, &l| {
            let g = self.gen_ids[l.generator()];
            // all generators are involutions
            self.mul(acc, if l.is_inverse() { self.inverse(g) } else { g })
        })
    }

    /// A shortest word over `a, b, c` for an element.
    pub fn word(&self, x: usize) -> Word {
        Word::new(
            self.elements
                .word(x)
                .iter()
                .map(|&gi| Letter::new(self.gen_order[gi], false)),
        )
    }
}
