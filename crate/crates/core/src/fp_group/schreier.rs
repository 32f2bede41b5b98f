//! Reidemeister–Schreier rewriting.

use std::collections::VecDeque;

use super::{CosetTable, GroupPresentation, Letter, Word};

/// Presentation of the subgroup whose cosets form `table`.
///
/// The transversal comes from a breadth-first spanning tree of the coset
/// graph rooted at coset 0, visiting edges by `(generator, sign)`. There is
/// one Schreier generator `s_{c,x} = t_c x t_{c·x}⁻¹` per positive edge outside
/// the tree, and every relator of `pres` is rewritten at every coset.
/// Schreier generators that occur in no relator are kept, since they are
/// free factors of the subgroup.
pub fn subgroup_presentation(pres: &GroupPresentation, table: &CosetTable) -> GroupPresentation {
    let n = table.coset_count();
    let gens = table.generator_count();
    // tree[c * gens + g]: positive edge (c, g) belongs to the spanning tree
    let mut tree = vec![false; n * gens];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..gens {
            for inv in [false, true] {
                let l = Letter::new(g, inv);
                let d = table.right(c, l);
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                    if inv {
                        tree[d * gens + g] = true;
                    } else {
                        tree[c * gens + g] = true;
                    }
                }
            }
        }
    }

    let mut index = vec![usize::MAX; n * gens];
    let mut names = Vec::new();
    for c in 0..n {
        for g in 0..gens {
            if !tree[c * gens + g] {
                index[c * gens + g] = names.len();
                names.push(format!("s{}", names.len() + 1));
            }
        }
    }

    let mut relators = Vec::with_capacity(n * pres.relators().len());
    for r in pres.relators() {
        for c in 0..n {
            let mut letters = Vec::with_capacity(r.len());
            let mut e = c;
            for &l in r.letters() {
                let next = table.right(e, l);
                let (source, inverse) = if l.is_inverse() { (next, true) } else { (e, false) };
                let key = source * gens + l.generator();
                if !tree[key] {
                    letters.push(Letter::new(index[key], inverse));
                }
                e = next;
            }
            debug_assert_eq!(e, c, "table does not satisfy the relator");
            let w = Word::new(letters);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    relators.sort();
    relators.dedup();
    GroupPresentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_group::{abelian_invariants, coset_enumeration, geodesic_presentation};

    #[test]
    fn trivial_group_over_itself() {
        let p = geodesic_presentation(3);
        let t = coset_enumeration(&p, &[], 10).unwrap();
        let sp = subgroup_presentation(&p, &t);
        // one Schreier generator per letter, each killed by a relator
        assert_eq!(sp.generator_count(), 3);
        assert!(abelian_invariants(&sp).is_trivial());
    }

    #[test]
    fn index_two_in_order_two() {
        // ⟨a | a²⟩ over the trivial subgroup: one Schreier generator killed by a².
        let p = GroupPresentation::parse(&["a"], &["a^2"]).unwrap();
        let t = coset_enumeration(&p, &[], 10).unwrap();
        assert_eq!(t.coset_count(), 2);
        let sp = subgroup_presentation(&p, &t);
        let inv = abelian_invariants(&sp);
        assert_eq!(inv.free_rank, 0);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn free_group_subgroup_keeps_free_generators() {
        let p = GroupPresentation::parse(&["x", "y"], &["x^2", "y^2"]).unwrap();
        // infinite dihedral group; ⟨xy⟩ has index 2 and is infinite cyclic
        let sub = vec![p.parse_word("xy").unwrap()];
        let t = coset_enumeration(&p, &sub, 10).unwrap();
        assert_eq!(t.coset_count(), 2);
        let inv = abelian_invariants(&subgroup_presentation(&p, &t));
        assert_eq!(inv.free_rank, 1);
        assert!(inv.torsion.is_empty());
    }

    #[test]
    fn subgroup_of_dihedral() {
        // rotations in D_5 form Z/5
        let p = GroupPresentation::parse(&["x", "y"], &["x^2", "y^2", "(xy)^5"]).unwrap();
        let sub = vec![p.parse_word("xy").unwrap()];
        let t = coset_enumeration(&p, &sub, 10).unwrap();
        let inv = abelian_invariants(&subgroup_presentation(&p, &t));
        assert_eq!(inv.free_rank, 0);
        assert_eq!(inv.torsion_u64(), vec![5]);
    }
}
