//! Corner voltage assignments over `(Z/p)^F` or `(V₄)^F` and their lifts.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::Permutation;
use crate::surface::{FlagSurface, StripKind, SurfaceError};

#[derive(Debug, Error)]
pub enum VoltageError {
    #[error("{p} is not a prime")]
    NotPrime { p: u32 },
    #[error("the base surface has no uniform vertex degree")]
    NotUniform,
    #[error("lift orbit exceeds {limit} flags")]
    LimitExceeded { limit: usize },
    #[error("expected {expected} voltages, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Voltage groups that are a power of one small abelian group, one factor per face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VoltageGroupKind {
    CyclicModP(u32),
    /// Elements `1 = s`, `2 = t`, `3 = st` under bitwise xor.
    KleinFour,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VoltageGroupSpec {
    pub kind: VoltageGroupKind,
    pub face_count: usize,
}

impl VoltageGroupSpec {
    /// `(Z/p)^F` for odd `p`, `(V₄)^F` for `p = 2`.
    pub fn for_prime(p: u32, face_count: usize) -> Result<Self, VoltageError> {
        if !is_prime(p) {
            return Err(VoltageError::NotPrime { p });
        }
        let kind = if p == 2 {
            VoltageGroupKind::KleinFour
        } else {
            VoltageGroupKind::CyclicModP(p)
        };
        Ok(VoltageGroupSpec { kind, face_count })
    }

    /// The prime the group was built for.
    pub fn prime(&self) -> u32 {
        match self.kind {
            VoltageGroupKind::CyclicModP(p) => p,
            VoltageGroupKind::KleinFour => 2,
        }
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        match self.kind {
            VoltageGroupKind::CyclicModP(p) => (x + y) % p,
            VoltageGroupKind::KleinFour => x ^ y,
        }
    }

    fn neg(&self, x: u32) -> u32 {
        match self.kind {
            VoltageGroupKind::CyclicModP(p) => (p - x) % p,
            VoltageGroupKind::KleinFour => x,
        }
    }

    /// `x · y`.
    pub fn mul(&self, x: &VoltageElement, y: &VoltageElement) -> VoltageElement {
        let (a, b) = (&x.0, &y.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let take = match (a.get(i), b.get(j)) {
                (Some(p), Some(q)) if p.0 == q.0 => {
                    let v = self.add(p.1, q.1);
                    i += 1;
                    j += 1;
                    (p.0, v)
                }
                (Some(p), Some(q)) if p.0 < q.0 => {
                    i += 1;
                    *p
                }
                (Some(p), None) => {
                    i += 1;
                    *p
                }
                (_, Some(q)) => {
                    j += 1;
                    *q
                }
                (None, None) => unreachable!(),
            };
            if take.1 != 0 {
                out.push(take);
            }
        }
        VoltageElement(out)
    }

    pub fn inverse(&self, x: &VoltageElement) -> VoltageElement {
        VoltageElement(x.0.iter().map(|&(f, v)| (f, self.neg(v))).collect())
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// An element of the voltage group: nonzero components sorted by face.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VoltageElement(Vec<(u32, u32)>);

impl VoltageElement {
    pub fn identity() -> Self {
        VoltageElement::default()
    }

    /// `value` in the component of `face` (0-based), identity elsewhere.
    pub fn single(face: usize, value: u32) -> Self {
        if value == 0 {
            VoltageElement::identity()
        } else {
            VoltageElement(vec![(face as u32, value)])
        }
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[(u32, u32)] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct CornerVoltageAssignment {
    base: FlagSurface,
    spec: VoltageGroupSpec,
    values: Vec<VoltageElement>,
}

impl CornerVoltageAssignment {
    /// `values[x - 1]` is the voltage of flag `x`; no conditions are checked.
    pub fn new(base: FlagSurface, spec: VoltageGroupSpec, values: Vec<VoltageElement>) -> Result<Self, VoltageError> {
        if values.len() != base.flag_count() {
            return Err(VoltageError::WrongLength {
                expected: base.flag_count(),
                found: values.len(),
            });
        }
        Ok(CornerVoltageAssignment { base, spec, values })
    }

    pub fn identity(base: FlagSurface, spec: VoltageGroupSpec) -> Self {
        let values = vec![VoltageElement::identity(); base.flag_count()];
        CornerVoltageAssignment { base, spec, values }
    }

    pub fn base(&self) -> &FlagSurface {
        &self.base
    }

    pub fn spec(&self) -> &VoltageGroupSpec {
        &self.spec
    }

    /// Voltage of flag `x` (1-based).
    pub fn value(&self, x: usize) -> &VoltageElement {
        &self.values[x - 1]
    }
}

/// Per face, from its smallest flag `f`, the six corners `f, β f, αβ f, βαβ f,
/// αβαβ f, βαβαβ f` get `1, −1, 1, −1, −2, 2` in that face's copy of `Z/p`,
/// or `s, s, t, t, st, st` in its copy of `V₄` when `p = 2`.
pub fn prop_assignment(s: &FlagSurface, p: u32) -> Result<CornerVoltageAssignment, VoltageError> {
    let faces = s.faces();
    let spec = VoltageGroupSpec::for_prime(p, faces.len())?;
    let pattern: [u32; 6] = match spec.kind {
        VoltageGroupKind::KleinFour => [1, 1, 2, 2, 3, 3],
        VoltageGroupKind::CyclicModP(p) => [1, p - 1, 1, p - 1, p - 2, 2],
    };
    let mut values = vec![VoltageElement::identity(); s.flag_count()];
    for (i, face) in faces.iter().enumerate() {
        // faces come ordered by smallest flag, and each starts with it
        let mut x = face[0] - 1;
        for (k, &v) in pattern.iter().enumerate() {
            values[x] = VoltageElement::single(i, v);
            x = if k % 2 == 0 { s.beta().image0(x) } else { s.alpha().image0(x) };
        }
    }
    Ok(CornerVoltageAssignment {
        base: s.clone(),
        spec,
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentReport {
    /// Flags with `v(β x) ≠ v(x)⁻¹`.
    pub inverse_violations: Vec<usize>,
    /// Flags with `v(βα x) v(αβ x) v(x) ≠ 1`.
    pub triangle_violations: Vec<usize>,
}

impl AssignmentReport {
    pub fn is_valid(&self) -> bool {
        self.inverse_violations.is_empty() && self.triangle_violations.is_empty()
    }
}

pub fn validate_assignment(va: &CornerVoltageAssignment) -> AssignmentReport {
    let s = &va.base;
    let (a, b) = (s.alpha(), s.beta());
    let mut report = AssignmentReport {
        inverse_violations: Vec::new(),
        triangle_violations: Vec::new(),
    };
    for x in 0..s.flag_count() {
        let v = &va.values[x];
        if va.values[b.image0(x)] != va.spec.inverse(v) {
            report.inverse_violations.push(x + 1);
        }
        let ba = b.image0(a.image0(x));
        let ab = a.image0(b.image0(x));
        let prod = va.spec.mul(&va.spec.mul(&va.values[ba], &va.values[ab]), v);
        if !prod.is_identity() {
            report.triangle_violations.push(x + 1);
        }
    }
    report
}

/// Steps until the lifted umbrella (`β̂γ̂`) or geodesic (`β̂α̂γ̂`) word
/// returns to `(start, 1)`.
pub fn lifted_cycle_length(va: &CornerVoltageAssignment, start: usize, kind: StripKind) -> usize {
    let s = &va.base;
    let x0 = start - 1;
    let mut x = x0;
    let mut g = VoltageElement::identity();
    let mut steps = 0;
    loop {
        x = s.gamma().image0(x);
        if kind == StripKind::Geodesic {
            x = s.alpha().image0(x);
        }
        g = va.spec.mul(&va.values[x], &g);
        x = s.beta().image0(x);
        steps += 1;
        if x == x0 && g.is_identity() {
            return steps;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub expected: usize,
    /// `(flag, kind, length)` for every flag and both kinds.
    pub lengths: Vec<(usize, StripKind, usize)>,
}

impl LiftReport {
    pub fn all_match(&self) -> bool {
        self.lengths.iter().all(|&(_, _, l)| l == self.expected)
    }
}

impl fmt::Display for LiftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for &(x, kind, l) in &self.lengths {
            let k = match kind {
                StripKind::Umbrella => "umbrella",
                StripKind::Geodesic => "geodesic",
            };
            writeln!(out, "{x}\t{k}\t{l}")?;
        }
        writeln!(out, "all = {}: {}", self.expected, if self.all_match() { "yes" } else { "no" })?;
        f.write_str(&out)
    }
}

/// Lifted cycle lengths of both kinds at every flag, against `d · p`.
pub fn verify_lift(va: &CornerVoltageAssignment) -> Result<LiftReport, VoltageError> {
    let d = va.base.stats().uniform_degree.ok_or(VoltageError::NotUniform)?;
    let lengths = (1..=va.base.flag_count())
        .into_par_iter()
        .flat_map_iter(|x| {
            [StripKind::Umbrella, StripKind::Geodesic]
                .map(|kind| (x, kind, lifted_cycle_length(va, x, kind)))
        })
        .collect();
    Ok(LiftReport {
        expected: d * va.spec.prime() as usize,
        lengths,
    })
}

/// The orbit of `(1, 1)` in the lift, numbered breadth-first.
pub fn materialize_lift(va: &CornerVoltageAssignment, flag_limit: usize) -> Result<FlagSurface, VoltageError> {
    let s = &va.base;
    let mut index: HashMap<(u32, VoltageElement), u32> = HashMap::new();
    let mut flags: Vec<(u32, VoltageElement)> = Vec::new();
    let start = (0u32, VoltageElement::identity());
    index.insert(start.clone(), 0);
    flags.push(start);
    let mut images: [Vec<u32>; 3] = Default::default();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (x, g) = flags[i].clone();
        let x = x as usize;
        let next = [
            (s.alpha().image0(x), g.clone()),
            (s.beta().image0(x), va.spec.mul(&va.values[x], &g)),
            (s.gamma().image0(x), g),
        ];
        for (k, (y, h)) in next.into_iter().enumerate() {
            let key = (y as u32, h);
            let j = match index.get(&key) {
                Some(&j) => j,
                None => {
                    if flags.len() >= flag_limit {
                        return Err(VoltageError::LimitExceeded { limit: flag_limit });
                    }
                    let j = flags.len() as u32;
                    index.insert(key.clone(), j);
                    flags.push(key);
                    queue.push_back(j as usize);
                    j
                }
            };
            if images[k].len() <= i {
                images[k].resize(i + 1, 0);
            }
            images[k][i] = j;
        }
    }
    let n = flags.len();
    let [a, b, c] = images.map(Permutation::from_images0);
    Ok(FlagSurface::new(n, a, b, c)?)
}
