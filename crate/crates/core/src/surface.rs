//! Triangulated closed surfaces as flag systems `(F, α, β, γ)`.
//!
//! `alpha` swaps the vertex of a flag, `beta` its edge and `gamma` its face.
//! Vertices are the `⟨β,γ⟩`-orbits, edges the `⟨α,γ⟩`-orbits and faces the
//! `⟨α,β⟩`-orbits.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{orbits0, PermError, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Alpha,
    Beta,
    Gamma,
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Involution::Alpha => "alpha",
            Involution::Beta => "beta",
            Involution::Gamma => "gamma",
        })
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("{which} has degree {found}, expected {expected}")]
    DegreeMismatch {
        which: Involution,
        expected: usize,
        found: usize,
    },
    #[error("{which} is not an involution (flag {flag})")]
    NotInvolution { which: Involution, flag: usize },
    #[error("{which} fixes flag {flag}")]
    HasFixedPoint { which: Involution, flag: usize },
    #[error("flags split into {orbits} orbits, the action is not transitive")]
    NotTransitive { orbits: usize },
    #[error("alpha*beta has a cycle of length {length} through flag {flag}, expected 3")]
    BadFaceCycle { flag: usize, length: usize },
    #[error("alpha*gamma has a cycle of length {length} through flag {flag}, expected 2")]
    BadEdgeCycle { flag: usize, length: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// A valid flag system. Construct with [`FlagSurface::new`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagSurface {
    flag_count: usize,
    alpha: Permutation,
    beta: Permutation,
    gamma: Permutation,
}

/// Orbit counts and derived topology of a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceStats {
    pub flag_count: usize,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub face_count: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// Sorted multiset of vertex degrees.
    pub vertex_degrees: Vec<usize>,
    pub uniform_degree: Option<usize>,
}

impl SurfaceStats {
    /// `(2 − χ) / 2` for orientable surfaces.
    pub fn orientable_genus(&self) -> Option<i64> {
        self.orientable.then_some((2 - self.euler_characteristic) / 2)
    }

    /// `2 − χ` for non-orientable surfaces.
    pub fn crosscap_number(&self) -> Option<i64> {
        (!self.orientable).then_some(2 - self.euler_characteristic)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripKind {
    /// Faces around a vertex, following `βγ`.
    Umbrella,
    /// A straight strip of faces, following `βαγ`.
    Geodesic,
}

/// The flag cycle of a strip and the face of every flag on it.
///
/// Faces are numbered 1.. in order of their smallest flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceStrip {
    pub flags: Vec<usize>,
    pub faces: Vec<usize>,
}

/// A flag bijection `φ` with `φ(α.x) = α'.φ(x)` and likewise for β, γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagIsomorphism {
    mapping: Vec<usize>,
}

impl FlagIsomorphism {
    /// Image of the 1-based flag `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.mapping[x - 1]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &y) in self.mapping.iter().enumerate() {
            inv[y - 1] = i + 1;
        }
        FlagIsomorphism { mapping: inv }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FlagIsomorphism) -> Self {
        FlagIsomorphism {
            mapping: self.mapping.iter().map(|&y| other.apply(y)).collect(),
        }
    }
}

const HEADER: &str = "geodual-surface 1";

impl FlagSurface {
    /// Validates the four flag-system conditions in order and reports the first violation.
    pub fn new(
        flag_count: usize,
        alpha: Permutation,
        beta: Permutation,
        gamma: Permutation,
    ) -> Result<Self, SurfaceError> {
        for (which, p) in [
            (Involution::Alpha, &alpha),
            (Involution::Beta, &beta),
            (Involution::Gamma, &gamma),
        ] {
            if p.degree() != flag_count {
                return Err(SurfaceError::DegreeMismatch {
                    which,
                    expected: flag_count,
                    found: p.degree(),
                });
            }
        }
        for (which, p) in [
            (Involution::Alpha, &alpha),
            (Involution::Beta, &beta),
            (Involution::Gamma, &gamma),
        ] {
            for x in 0..flag_count {
                let y = p.image0(x);
                if p.image0(y) != x {
                    return Err(SurfaceError::NotInvolution { which, flag: x + 1 });
                }
                if y == x {
                    return Err(SurfaceError::HasFixedPoint { which, flag: x + 1 });
                }
            }
        }
        let (orbits, _) = orbits0(flag_count, &[&alpha, &beta, &gamma]);
        if orbits.len() > 1 {
            return Err(SurfaceError::NotTransitive {
                orbits: orbits.len(),
            });
        }
        let ab = alpha.compose_unchecked(&beta);
        if let Some((flag, length)) = first_bad_cycle(&ab, 3) {
            return Err(SurfaceError::BadFaceCycle { flag, length });
        }
        let ag = alpha.compose_unchecked(&gamma);
        if let Some((flag, length)) = first_bad_cycle(&ag, 2) {
            return Err(SurfaceError::BadEdgeCycle { flag, length });
        }
        Ok(FlagSurface {
            flag_count,
            alpha,
            beta,
            gamma,
        })
    }

    /// The barycentric subdivision of the tetrahedron with 24 flags.
    pub fn tetrahedron() -> Self {
        let p = |s| Permutation::parse_cycles(s, 24).expect("static cycle data");
        FlagSurface::new(
            24,
            p("(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)(13,14)(15,16)(17,18)(19,20)(21,22)(23,24)"),
            p("(1,6)(2,3)(4,5)(7,12)(8,9)(10,11)(13,18)(14,15)(16,17)(19,24)(20,21)(22,23)"),
            p("(1,22)(2,21)(3,8)(4,7)(5,18)(6,17)(9,20)(10,19)(11,14)(12,13)(15,24)(16,23)"),
        )
        .expect("the tetrahedron is a surface")
    }

    pub fn flag_count(&self) -> usize {
        self.flag_count
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn beta(&self) -> &Permutation {
        &self.beta
    }

    pub fn gamma(&self) -> &Permutation {
        &self.gamma
    }

    pub fn involution(&self, which: Involution) -> &Permutation {
        match which {
            Involution::Alpha => &self.alpha,
            Involution::Beta => &self.beta,
            Involution::Gamma => &self.gamma,
        }
    }

    /// 0-based face index of every flag, faces ordered by smallest flag.
    pub fn face_labels(&self) -> Vec<usize> {
        orbits0(self.flag_count, &[&self.alpha, &self.beta]).1
    }

    /// Faces as sorted lists of 1-based flags, ordered by smallest flag.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        one_based(orbits0(self.flag_count, &[&self.alpha, &self.beta]).0)
    }

    pub fn vertices(&self) -> Vec<Vec<usize>> {
        one_based(orbits0(self.flag_count, &[&self.beta, &self.gamma]).0)
    }

    pub fn edges(&self) -> Vec<Vec<usize>> {
        one_based(orbits0(self.flag_count, &[&self.alpha, &self.gamma]).0)
    }

    pub fn stats(&self) -> SurfaceStats {
        let n = self.flag_count;
        let (vertices, _) = orbits0(n, &[&self.beta, &self.gamma]);
        let (edges, _) = orbits0(n, &[&self.alpha, &self.gamma]);
        let (faces, _) = orbits0(n, &[&self.alpha, &self.beta]);
        let ab = self.alpha.compose_unchecked(&self.beta);
        let bc = self.beta.compose_unchecked(&self.gamma);
        let (even, _) = orbits0(n, &[&ab, &bc]);
        let mut vertex_degrees: Vec<usize> = vertices.iter().map(|v| v.len() / 2).collect();
        vertex_degrees.sort_unstable();
        let uniform_degree = match (vertex_degrees.first(), vertex_degrees.last()) {
            (Some(lo), Some(hi)) if lo == hi => Some(*lo),
            _ => None,
        };
        SurfaceStats {
            flag_count: n,
            vertex_count: vertices.len(),
            edge_count: edges.len(),
            face_count: faces.len(),
            euler_characteristic: vertices.len() as i64 - edges.len() as i64 + faces.len() as i64,
            orientable: even.len() == 2,
            vertex_degrees,
            uniform_degree,
        }
    }

    /// `(F, α, β, αγ)`.
    pub fn geodesic_dual(&self) -> FlagSurface {
        FlagSurface {
            flag_count: self.flag_count,
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            gamma: self.alpha.compose_unchecked(&self.gamma),
        }
    }

    /// Follows the umbrella or geodesic through the 1-based flag `start`.
    pub fn face_strip(&self, start: usize, kind: StripKind) -> FaceStrip {
        let step = self.strip_step(kind);
        let labels = self.face_labels();
        let mut flags = Vec::new();
        let mut x = start - 1;
        loop {
            flags.push(x + 1);
            x = step.image0(x);
            if x == start - 1 {
                break;
            }
        }
        let faces = flags.iter().map(|&f| labels[f - 1] + 1).collect();
        FaceStrip { flags, faces }
    }

    /// The permutation whose cycles are the strips of the given kind.
    pub fn strip_step(&self, kind: StripKind) -> Permutation {
        match kind {
            StripKind::Umbrella => self.beta.compose_unchecked(&self.gamma),
            StripKind::Geodesic => self
                .beta
                .compose_unchecked(&self.alpha)
                .compose_unchecked(&self.gamma),
        }
    }

    /// Relabels flags by `relabel`: flag `x` becomes `relabel(x)`.
    pub fn relabel(&self, relabel: &Permutation) -> Result<FlagSurface, PermError> {
        if relabel.degree() != self.flag_count {
            return Err(PermError::DegreeMismatch {
                left: self.flag_count,
                right: relabel.degree(),
            });
        }
        let inv = relabel.inverse();
        let conj = |p: &Permutation| relabel.compose_unchecked(p).compose_unchecked(&inv);
        Ok(FlagSurface {
            flag_count: self.flag_count,
            alpha: conj(&self.alpha),
            beta: conj(&self.beta),
            gamma: conj(&self.gamma),
        })
    }

    /// Serializes into the line-based `geodual-surface 1` format.
    pub fn to_text(&self) -> String {
        format!(
            "{HEADER}\nflags {}\nalpha {}\nbeta {}\ngamma {}\n",
            self.flag_count, self.alpha, self.beta, self.gamma
        )
    }

    pub fn parse(text: &str) -> Result<FlagSurface, SurfaceError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let parse_err = |line, message: String| SurfaceError::Parse { line, message };
        let last_line = text.lines().count().max(1);

        let (line, header) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, "missing header".into()))?;
        if header != HEADER {
            return Err(parse_err(line, format!("expected {HEADER:?}, found {header:?}")));
        }
        let (line, flags) = lines
            .next()
            .ok_or_else(|| parse_err(last_line, "missing flags line".into()))?;
        let n: usize = flags
            .strip_prefix("flags")
            .map(str::trim)
            .and_then(|s| s.parse().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| parse_err(line, format!("expected \"flags <n>\", found {flags:?}")))?;
        let mut perms = Vec::with_capacity(3);
        for which in [Involution::Alpha, Involution::Beta, Involution::Gamma] {
            let name = which.to_string();
            let (line, body) = lines
                .next()
                .ok_or_else(|| parse_err(last_line, format!("missing {name} line")))?;
            let cycles = body
                .strip_prefix(name.as_str())
                .filter(|rest| rest.starts_with(char::is_whitespace))
                .ok_or_else(|| parse_err(line, format!("expected {name} line, found {body:?}")))?;
            let p = Permutation::parse_cycles(cycles, n)
                .map_err(|e| parse_err(line, e.to_string()))?;
            perms.push(p);
        }
        if let Some((line, extra)) = lines.next() {
            return Err(parse_err(line, format!("unexpected trailing content {extra:?}")));
        }
        let gamma = perms.pop().unwrap();
        let beta = perms.pop().unwrap();
        let alpha = perms.pop().unwrap();
        FlagSurface::new(n, alpha, beta, gamma)
    }
}

fn one_based(orbits: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    orbits
        .into_iter()
        .map(|o| o.into_iter().map(|x| x + 1).collect())
        .collect()
}

fn first_bad_cycle(p: &Permutation, expected: usize) -> Option<(usize, usize)> {
    let n = p.degree();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = p.image0(x);
        }
        if len != expected {
            return Some((start + 1, len));
        }
    }
    None
}

/// Extends `flag 1 ↦ anchor` along α, β, γ. Transitivity makes the extension unique.
fn extend_from_anchor(s: &FlagSurface, t: &FlagSurface, anchor: usize) -> Option<Vec<usize>> {
    let n = s.flag_count;
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = anchor;
    used[anchor] = true;
    let mut queue = vec![0usize];
    let pairs = [
        (&s.alpha, &t.alpha),
        (&s.beta, &t.beta),
        (&s.gamma, &t.gamma),
    ];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (ps, pt) in pairs {
            let y = ps.image0(x);
            let ty = pt.image0(map[x]);
            if map[y] == usize::MAX {
                if used[ty] {
                    return None;
                }
                used[ty] = true;
                map[y] = ty;
                queue.push(y);
            } else if map[y] != ty {
                return None;
            }
        }
    }
    Some(map.into_iter().map(|y| y + 1).collect())
}

/// First isomorphism `S → T` by ascending image of flag 1, if any.
pub fn find_isomorphism(s: &FlagSurface, t: &FlagSurface) -> Option<FlagIsomorphism> {
    if s.flag_count != t.flag_count {
        return None;
    }
    (0..t.flag_count)
        .into_par_iter()
        .find_map_first(|anchor| extend_from_anchor(s, t, anchor))
        .map(|mapping| FlagIsomorphism { mapping })
}

/// An isomorphism from `S` to its geodesic dual, if one exists.
pub fn is_geodesic_self_dual(s: &FlagSurface) -> Option<FlagIsomorphism> {
    find_isomorphism(s, &s.geodesic_dual())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn tetrahedron_is_valid() {
        let t = FlagSurface::tetrahedron();
        assert_eq!(t.flag_count(), 24);
        assert_eq!(FlagSurface::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn validation_errors() {
        let id = Permutation::identity(6);
        assert!(matches!(
            FlagSurface::new(6, id.clone(), id.clone(), id),
            Err(SurfaceError::HasFixedPoint {
                which: Involution::Alpha,
                flag: 1
            })
        ));
        let t = FlagSurface::tetrahedron();
        let four = perm("(1,2,3,4)", 24);
        assert!(matches!(
            FlagSurface::new(24, four, t.beta().clone(), t.gamma().clone()),
            Err(SurfaceError::NotInvolution { which: Involution::Alpha, .. })
        ));
        assert!(matches!(
            FlagSurface::new(20, t.alpha().clone(), t.beta().clone(), t.gamma().clone()),
            Err(SurfaceError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn disjoint_union_is_not_transitive() {
        let t = FlagSurface::tetrahedron();
        let double = |p: &Permutation| {
            let mut img = p.images();
            img.extend(p.images().iter().map(|y| y + 24));
            Permutation::from_images(&img).unwrap()
        };
        let err = FlagSurface::new(48, double(t.alpha()), double(t.beta()), double(t.gamma()));
        assert_eq!(err, Err(SurfaceError::NotTransitive { orbits: 2 }));
    }

    #[test]
    fn bad_face_and_edge_cycles() {
        // hexagonal faces
        let alpha = perm("(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)", 12);
        let beta = perm("(2,3)(4,5)(6,7)(8,9)(10,11)(12,1)", 12);
        let gamma = perm("(1,12)(2,11)(3,10)(4,9)(5,8)(6,7)", 12);
        assert!(matches!(
            FlagSurface::new(12, alpha, beta, gamma),
            Err(SurfaceError::BadFaceCycle { flag: 1, length: 6 })
        ));
        // Triangle faces, but γ does not commute with α.
        let alpha = perm("(1,2)(3,4)(5,6)(7,8)(9,10)(11,12)", 12);
        let beta = perm("(1,6)(2,3)(4,5)(7,12)(8,9)(10,11)", 12);
        let gamma = perm("(1,7)(2,9)(3,8)(4,10)(5,11)(6,12)", 12);
        assert!(matches!(
            FlagSurface::new(12, alpha, beta, gamma),
            Err(SurfaceError::BadEdgeCycle { flag: 1, length: 4 })
        ));
    }

    #[test]
    fn tetrahedron_stats() {
        let s = FlagSurface::tetrahedron().stats();
        assert_eq!((s.vertex_count, s.edge_count, s.face_count), (4, 6, 4));
        assert_eq!(s.euler_characteristic, 2);
        assert!(s.orientable);
        assert_eq!(s.uniform_degree, Some(3));
        assert_eq!(s.orientable_genus(), Some(0));
        assert_eq!(s.crosscap_number(), None);
    }

    #[test]
    fn dual_of_tetrahedron_is_projective_plane() {
        let t = FlagSurface::tetrahedron();
        let dual = t.geodesic_dual();
        let again = FlagSurface::new(
            24,
            dual.alpha().clone(),
            dual.beta().clone(),
            dual.gamma().clone(),
        )
        .unwrap();
        let s = again.stats();
        assert_eq!((s.vertex_count, s.edge_count, s.face_count), (3, 6, 4));
        assert_eq!(s.euler_characteristic, 1);
        assert!(!s.orientable);
        assert_eq!(s.crosscap_number(), Some(1));
        assert_eq!(dual.geodesic_dual(), t);
    }

    #[test]
    fn strips_on_the_tetrahedron() {
        let t = FlagSurface::tetrahedron();
        let u = t.face_strip(1, StripKind::Umbrella);
        assert_eq!(u.flags, vec![1, 23, 17]);
        // faces by smallest flag: {1..6}, {7..12}, {13..18}, {19..24}
        assert_eq!(u.faces, vec![1, 4, 3]);
        let g = t.face_strip(1, StripKind::Geodesic);
        assert_eq!(g.flags, vec![1, 20, 11, 18]);
        assert_eq!(g.faces.len(), 4);
        for x in 1..=24 {
            assert_eq!(t.face_strip(x, StripKind::Umbrella).flags.len(), 3);
        }
    }

    #[test]
    fn isomorphism_examples() {
        let t = FlagSurface::tetrahedron();
        let iso = find_isomorphism(&t, &t).unwrap();
        assert_eq!(iso.apply(1), 1);
        assert!(find_isomorphism(&t, &t.geodesic_dual()).is_none());
        assert!(is_geodesic_self_dual(&t).is_none());

        let relabel = Permutation::from_images(&(1..=24).rev().collect::<Vec<_>>()).unwrap();
        let r = t.relabel(&relabel).unwrap();
        let iso = find_isomorphism(&t, &r).unwrap();
        for x in 1..=24 {
            assert_eq!(iso.apply(t.alpha().apply(x)), r.alpha().apply(iso.apply(x)));
            assert_eq!(iso.apply(t.gamma().apply(x)), r.gamma().apply(iso.apply(x)));
        }
    }

    #[test]
    fn parse_reports_lines() {
        let t = FlagSurface::tetrahedron().to_text();
        let broken = t.replace("alpha (1,2)(3,4)", "alpha (1,2,3,4)");
        assert!(matches!(
            FlagSurface::parse(&broken),
            Err(SurfaceError::NotInvolution { which: Involution::Alpha, .. })
        ));
        let commented = format!("# tetrahedron\n\n{t}");
        assert_eq!(FlagSurface::parse(&commented).unwrap(), FlagSurface::tetrahedron());
        let bad = t.replace("flags 24", "flags x");
        assert!(matches!(FlagSurface::parse(&bad), Err(SurfaceError::Parse { line: 2, .. })));
        let bad = t.replace("beta", "beat");
        assert!(matches!(FlagSurface::parse(&bad), Err(SurfaceError::Parse { line: 4, .. })));
        assert!(matches!(
            FlagSurface::parse("geodual-surface 1\nflags 2\n"),
            Err(SurfaceError::Parse { .. })
        ));
    }

    #[test]
    fn serialization_is_exact() {
        let text = FlagSurface::tetrahedron().to_text();
        assert!(text.starts_with("geodual-surface 1\nflags 24\nalpha (1,2)(3,4)"));
        assert!(text.ends_with("(16,23)\n"));
        assert_eq!(text.lines().count(), 5);
    }
}
