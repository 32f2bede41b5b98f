//! Surfaces from subgroups, and the classification pipeline.

use std::collections::VecDeque;
use std::fmt::Write;

use rayon::prelude::*;

use crate::perm::Permutation;
use crate::surface::{is_geodesic_self_dual, FlagSurface, SurfaceError, SurfaceStats};

use super::{
    admissible_subgroups, are_conjugate, geodesic_image_subgroup, is_normal, ClassifyError, GroupData,
    PartialEntry, SubgroupRecord, A, B, C,
};

/// Enough for every finite `H_d` with `d ≤ 9`.
pub const DEFAULT_GROUP_LIMIT: usize = 10_000;

pub const TSV_HEADER: &str =
    "degree\tindex\tsubgroup_order\tvertices\tedges\tfaces\teuler\torientable\torientable_genus\tcrosscap";

#[derive(Clone, Debug)]
pub struct ClassificationEntry {
    pub subgroup: SubgroupRecord,
    pub index: usize,
    pub surface_stats: SurfaceStats,
    /// `g` with `g V^# g⁻¹ = V`.
    pub self_dual_witness: usize,
    pub flag_level_confirmed: bool,
    pub normal: bool,
    pub surface: FlagSurface,
}

/// The left action of `a, b, c` on the left cosets `gV`, numbered
/// breadth-first from `V` itself.
pub fn surface_from_subgroup(g: &GroupData, v: &SubgroupRecord) -> Result<FlagSurface, SurfaceError> {
    let n = g.order();
    let mut coset = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if coset[x] == usize::MAX {
            for &e in &v.element_set {
                coset[g.mul(x, e)] = count;
            }
            count += 1;
        }
    }
    let mut rep = vec![usize::MAX; count];
    for x in (0..n).rev() {
        rep[coset[x]] = x;
    }
    let gens = [A, B, C].map(|s| g.generator(s));
    let act = |c: usize, s: usize| coset[g.mul(gens[s], rep[c])];

    let mut label = vec![usize::MAX; count];
    let mut order = Vec::with_capacity(count);
    label[coset[0]] = 0;
    order.push(coset[0]);
    let mut queue = VecDeque::from([coset[0]]);
    while let Some(c) = queue.pop_front() {
        for s in 0..3 {
            let t = act(c, s);
            if label[t] == usize::MAX {
                label[t] = order.len();
                order.push(t);
                queue.push_back(t);
            }
        }
    }
    let perm = |s: usize| {
        let images: Vec<u32> = order.iter().map(|&c| label[act(c, s)] as u32).collect();
        Permutation::from_images0(images)
    };
    FlagSurface::new(count, perm(A), perm(B), perm(C))
}

/// Every geodesic self-dual degree-`d` surface, by descending flag count.
pub fn classify(d: usize) -> Result<Vec<ClassificationEntry>, ClassifyError> {
    if d < 3 {
        return Err(ClassifyError::InvalidParameter(format!("degree {d} is below 3")));
    }
    classify_group(&super::realize_group(d, DEFAULT_GROUP_LIMIT)?)
}

pub fn classify_group(g: &GroupData) -> Result<Vec<ClassificationEntry>, ClassifyError> {
    let candidates: Vec<(SubgroupRecord, usize)> = admissible_subgroups(g)
        .into_iter()
        .filter_map(|v| {
            let w = are_conjugate(g, &v, &geodesic_image_subgroup(g, &v))?;
            Some((v, w))
        })
        .collect();
    let mut entries: Vec<ClassificationEntry> = candidates
        .into_par_iter()
        .filter_map(|(v, witness)| {
            // a collapsed group gives a coset action that is not a degree-d surface
            let surface = surface_from_subgroup(g, &v).ok()?;
            let surface_stats = surface.stats();
            if surface_stats.uniform_degree != Some(g.degree()) {
                return None;
            }
            Some(ClassificationEntry {
                index: g.order() / v.order(),
                flag_level_confirmed: is_geodesic_self_dual(&surface).is_some(),
                normal: is_normal(g, &v),
                subgroup: v,
                surface_stats,
                self_dual_witness: witness,
                surface,
            })
        })
        .collect();
    entries.sort_by(|x, y| y.index.cmp(&x.index).then_with(|| x.subgroup.element_set.cmp(&y.subgroup.element_set)));
    Ok(entries)
}

fn row(out: &mut String, d: usize, order: &str, s: &SurfaceStats) {
    let opt = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
    writeln!(
        out,
        "{d}\t{}\t{order}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
        s.flag_count,
        s.vertex_count,
        s.edge_count,
        s.face_count,
        s.euler_characteristic,
        if s.orientable { "yes" } else { "no" },
        opt(s.orientable_genus()),
        opt(s.crosscap_number()),
    )
    .expect("writing to a string");
}

/// Tab-separated report with a header line and one row per entry.
pub fn classification_tsv(d: usize, entries: &[ClassificationEntry]) -> String {
    let mut out = format!("{TSV_HEADER}\n");
    for e in entries {
        row(&mut out, d, &e.subgroup.order().to_string(), &e.surface_stats);
    }
    out
}

/// Report for the capped search, where subgroup orders are unknown.
pub fn partial_tsv(d: usize, entries: &[PartialEntry]) -> String {
    let mut out = format!("{TSV_HEADER}\n");
    for e in entries {
        row(&mut out, d, "-", &e.surface_stats);
    }
    out
}
