//! Subgroups of `H_d`: closure, conjugacy and the admissible-class search.

use std::collections::{HashSet, VecDeque};

use super::GroupData;

/// A subgroup given by generators and its sorted element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupRecord {
    pub generator_elements: Vec<usize>,
    pub element_set: Vec<usize>,
}

impl SubgroupRecord {
    pub fn trivial() -> Self {
        SubgroupRecord {
            generator_elements: Vec::new(),
            element_set: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.element_set.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.element_set.binary_search(&x).is_ok()
    }
}

/// The subgroup generated by `gens`. With `avoid_forbidden`, gives up as
/// soon as a forbidden element appears.
pub fn subgroup_closure(g: &GroupData, gens: &[usize], avoid_forbidden: bool) -> Option<SubgroupRecord> {
    let mut seen = vec![false; g.order()];
    seen[0] = true;
    let mut elems = vec![0];
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !seen[y] {
                if avoid_forbidden && g.is_forbidden(y) {
                    return None;
                }
                seen[y] = true;
                elems.push(y);
                queue.push_back(y);
            }
        }
    }
    elems.sort_unstable();
    let mut generator_elements: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
    generator_elements.sort_unstable();
    generator_elements.dedup();
    Some(SubgroupRecord {
        generator_elements,
        element_set: elems,
    })
}

/// `x V x⁻¹`.
pub fn conjugate_subgroup(g: &GroupData, v: &SubgroupRecord, x: usize) -> SubgroupRecord {
    let map = |e: &usize| g.conjugate(x, *e);
    let mut element_set: Vec<usize> = v.element_set.iter().map(map).collect();
    element_set.sort_unstable();
    SubgroupRecord {
        generator_elements: v.generator_elements.iter().map(map).collect(),
        element_set,
    }
}

/// `V^#`.
pub fn geodesic_image_subgroup(g: &GroupData, v: &SubgroupRecord) -> SubgroupRecord {
    let mut element_set: Vec<usize> = v.element_set.iter().map(|&e| g.sharp(e)).collect();
    element_set.sort_unstable();
    SubgroupRecord {
        generator_elements: v.generator_elements.iter().map(|&e| g.sharp(e)).collect(),
        element_set,
    }
}

fn order_profile(g: &GroupData, v: &SubgroupRecord) -> Vec<usize> {
    let mut p: Vec<usize> = v.element_set.iter().map(|&e| g.element_order(e)).collect();
    p.sort_unstable();
    p
}

/// The first element `x` (by id) with `x W x⁻¹ = V`.
pub fn are_conjugate(g: &GroupData, v: &SubgroupRecord, w: &SubgroupRecord) -> Option<usize> {
    if v.order() != w.order() || order_profile(g, v) != order_profile(g, w) {
        return None;
    }
    let mut in_v = vec![false; g.order()];
    for &e in &v.element_set {
        in_v[e] = true;
    }
    (0..g.order()).find(|&x| w.element_set.iter().all(|&e| in_v[g.conjugate(x, e)]))
}

pub fn is_normal(g: &GroupData, v: &SubgroupRecord) -> bool {
    (0..3).all(|s| conjugate_subgroup(g, v, g.generator(s)).element_set == v.element_set)
}

/// All conjugates of `V`, as sorted element lists.
pub fn conjugacy_class(g: &GroupData, v: &SubgroupRecord) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let c = conjugate_subgroup(g, v, x).element_set;
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out.sort();
    out
}

fn canonical(g: &GroupData, v: &SubgroupRecord) -> (SubgroupRecord, Vec<Vec<usize>>) {
    let class = conjugacy_class(g, v);
    let best = &class[0];
    let x = (0..g.order())
        .find(|&x| &conjugate_subgroup(g, v, x).element_set == best)
        .expect("representative is a conjugate");
    (conjugate_subgroup(g, v, x), class)
}

/// One representative per conjugacy class of subgroups avoiding every
/// forbidden element, sorted by order and then by element list. The
/// representative of a class is its lexicographically smallest member.
pub fn admissible_subgroups(g: &GroupData) -> Vec<SubgroupRecord> {
    // admissible cyclic subgroups, one per element set
    let mut cyclic: Vec<SubgroupRecord> = Vec::new();
    let mut cyclic_seen = HashSet::new();
    for x in 1..g.order() {
        if g.is_forbidden(x) {
            continue;
        }
        if let Some(c) = subgroup_closure(g, &[x], true) {
            if cyclic_seen.insert(c.element_set.clone()) {
                cyclic.push(c);
            }
        }
    }

    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(vec![0]);
    let mut reps = vec![SubgroupRecord::trivial()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let v = reps[i].clone();
        for c in &cyclic {
            let x = c.generator_elements[0];
            if v.contains(x) {
                continue;
            }
            let mut gens = v.generator_elements.clone();
            gens.push(x);
            let Some(w) = subgroup_closure(g, &gens, true) else {
                continue;
            };
            if seen.contains(&w.element_set) {
                continue;
            }
            let (rep, class) = canonical(g, &w);
            seen.extend(class);
            queue.push_back(reps.len());
            reps.push(rep);
        }
    }
    reps.sort_by(|x, y| (x.order(), &x.element_set).cmp(&(y.order(), &y.element_set)));
    reps
}
