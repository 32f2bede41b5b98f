//! Machine checks on when `H_d` collapses onto a smaller quotient.

use std::fmt;

use crate::fp_group::{
    abelian_invariants, coset_enumeration, geodesic_presentation, quotient_coset_table, subgroup_presentation,
    triangle_presentation, AbelianInvariants, FpGroupError, GroupPresentation,
};

use super::{ClassifyError, DEFAULT_GROUP_LIMIT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseReport {
    pub checks: Vec<CheckResult>,
}

impl CollapseReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for CollapseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}\t{}\t{}", c.name, if c.passed { "pass" } else { "fail" }, c.detail)?;
        }
        Ok(())
    }
}

const IDENTITY_LHS: &str = "c(bac)^4cb(bac)^4b";
const IDENTITY_RHS: &str = "(cb)^2";

/// Cosets of the regular table of `T_d` at which the two sides of the
/// degree-4 identity act differently.
fn identity_separations(d: usize) -> Result<(usize, Vec<usize>), FpGroupError> {
    let t = triangle_presentation(d);
    let table = coset_enumeration(&t, &[], 1000)?;
    let lhs = t.parse_word(IDENTITY_LHS)?;
    let rhs = t.parse_word(IDENTITY_RHS)?;
    let bad = (0..table.coset_count())
        .filter(|&x| table.trace_word(x, &lhs) != table.trace_word(x, &rhs))
        .collect();
    Ok((table.coset_count(), bad))
}

/// Checks that `H_3` and `H_7` are trivial and that the word identity
/// behind the degree-4 collapse holds in `T_4` but not in `T_5`.
pub fn verify_collapse_identity() -> CollapseReport {
    let mut checks = Vec::new();
    for d in [3, 7] {
        let r = coset_enumeration(&geodesic_presentation(d), &[], 100);
        checks.push(CheckResult {
            name: format!("order H_{d}"),
            passed: matches!(&r, Ok(t) if t.coset_count() == 1),
            detail: match r {
                Ok(t) => format!("{}", t.coset_count()),
                Err(e) => e.to_string(),
            },
        });
    }
    let identity = format!("{IDENTITY_LHS} = {IDENTITY_RHS}");
    match identity_separations(4) {
        Ok((n, bad)) => checks.push(CheckResult {
            name: "identity in T_4".into(),
            passed: n == 48 && bad.is_empty(),
            detail: format!("{identity} holds at {} of {n} cosets", n - bad.len()),
        }),
        Err(e) => checks.push(CheckResult {
            name: "identity in T_4".into(),
            passed: false,
            detail: e.to_string(),
        }),
    }
    match identity_separations(5) {
        Ok((n, bad)) => checks.push(CheckResult {
            name: "identity fails in T_5".into(),
            passed: !bad.is_empty(),
            detail: match bad.first() {
                Some(x) => format!("{identity} separated at coset {} of {n}", x + 1),
                None => format!("{identity} holds at all {n} cosets"),
            },
        }),
        Err(e) => checks.push(CheckResult {
            name: "identity fails in T_5".into(),
            passed: false,
            detail: e.to_string(),
        }),
    }
    CollapseReport { checks }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UncollapsedEvidence {
    Orders { order_d: usize, order_k: usize },
    /// Invariants of the kernel of `H_d → H_k`, whose index is `index`.
    AbelianInvariants { index: usize, invariants: AbelianInvariants },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UncollapsedVerdict {
    Distinct(UncollapsedEvidence),
    Equal { order: usize },
    Inconclusive { reason: String },
}

impl fmt::Display for UncollapsedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UncollapsedVerdict::Distinct(UncollapsedEvidence::Orders { order_d, order_k }) => {
                write!(f, "distinct (orders {order_d} vs {order_k})")
            }
            UncollapsedVerdict::Distinct(UncollapsedEvidence::AbelianInvariants { index, invariants }) => {
                write!(f, "distinct (abelian invariants)\nkernel index {index}: {invariants}")
            }
            UncollapsedVerdict::Equal { order } => write!(f, "equal (both of order {order})"),
            UncollapsedVerdict::Inconclusive { reason } => write!(f, "inconclusive ({reason})"),
        }
    }
}

/// Decides whether `H_d ≠ H_k` for a proper divisor `k` of `d`.
///
/// `H_k` is the quotient of `H_d` by `N = ⟨⟨(bc)^k, (bac)^k⟩⟩`. When both
/// groups enumerate within `limit`, their orders decide. Otherwise the
/// cosets of `N` are enumerated, `N` is presented by Reidemeister–Schreier,
/// and a nontrivial abelianization of `N` proves `N ≠ 1`.
pub fn verify_uncollapsed(d: usize, k: usize, limit: usize) -> Result<UncollapsedVerdict, ClassifyError> {
    if k == 0 || k >= d || !d.is_multiple_of(k) {
        return Err(ClassifyError::InvalidParameter(format!(
            "k = {k} must be a proper divisor of d = {d}"
        )));
    }
    let hd = geodesic_presentation(d);
    let hk = geodesic_presentation(k);
    let order = |p: &GroupPresentation| coset_enumeration(p, &[], limit).map(|t| t.coset_count());
    let order_k = order(&hk);
    if let (Ok(order_d), Ok(order_k)) = (order(&hd), &order_k) {
        return Ok(if order_d == *order_k {
            UncollapsedVerdict::Equal { order: order_d }
        } else {
            UncollapsedVerdict::Distinct(UncollapsedEvidence::Orders {
                order_d,
                order_k: *order_k,
            })
        });
    }
    let kernel = [hd.parse_word(&format!("(bc)^{k}"))?, hd.parse_word(&format!("(bac)^{k}"))?];
    let table = match quotient_coset_table(&hd, &kernel, limit) {
        Ok(t) => t,
        Err(e) => {
            return Ok(UncollapsedVerdict::Inconclusive {
                reason: format!("H_{k} does not enumerate: {e}"),
            })
        }
    };
    let invariants = abelian_invariants(&subgroup_presentation(&hd, &table));
    if invariants.is_trivial() {
        return Ok(UncollapsedVerdict::Inconclusive {
            reason: "the kernel is perfect, so its abelianization cannot separate".into(),
        });
    }
    Ok(UncollapsedVerdict::Distinct(UncollapsedEvidence::AbelianInvariants {
        index: table.coset_count(),
        invariants,
    }))
}

/// Same as [`verify_uncollapsed`] with the default enumeration limit.
pub fn verify_uncollapsed_default(d: usize, k: usize) -> Result<UncollapsedVerdict, ClassifyError> {
    verify_uncollapsed(d, k, DEFAULT_GROUP_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapse_checks_pass() {
        let r = verify_collapse_identity();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.checks.len(), 4);
    }

    #[test]
    fn order_route() {
        assert_eq!(
            verify_uncollapsed(6, 2, 10_000).unwrap(),
            UncollapsedVerdict::Distinct(UncollapsedEvidence::Orders { order_d: 108, order_k: 4 })
        );
        assert_eq!(
            verify_uncollapsed(9, 3, 10_000).unwrap(),
            UncollapsedVerdict::Distinct(UncollapsedEvidence::Orders { order_d: 3420, order_k: 1 })
        );
        assert!(verify_uncollapsed(6, 4, 100).is_err());
    }

    #[test]
    fn inconclusive_when_quotient_too_big() {
        let v = verify_uncollapsed(16, 8, 100).unwrap();
        assert!(matches!(v, UncollapsedVerdict::Inconclusive { .. }), "{v}");
    }
}
