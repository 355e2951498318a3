//! Candidate subgroups `R ≤ P₁ × P₂` checked against the structure a vertex
//! of a stable equivalence must have: surjective projections, kernels of
//! equal order, matching strong closure, and `θ` inducing an isomorphism of
//! the quotient fusion systems. Passing these checks makes a candidate
//! consistent with the constraints; it says nothing about realizability.

use alloc::vec::Vec;

use crate::error::Error;
use crate::fusion::{iso_check, Flavor, FusionSystem, IsoVerdict};
use crate::goursat::{decompose, GoursatData};
use crate::group::Limits;
use crate::product::DirectProduct;
use crate::subgroup::Subgroup;

#[derive(Clone, Debug)]
pub struct CompatibilityReport {
    pub r: Subgroup,
    pub projections_surjective: (bool, bool),
    pub goursat: Option<GoursatData>,
    pub kernel_orders_equal: Option<bool>,
    pub r1_strongly_closed: Option<bool>,
    pub r2_strongly_closed: Option<bool>,
    /// `R₁` strongly closed iff `R₂` strongly closed.
    pub equivalence_holds: Option<bool>,
    /// `θ` transports `F₁/R₁` onto `F₂/R₂`; only tried when both kernels
    /// are strongly closed.
    pub quotient_iso: Option<IsoVerdict>,
}

impl CompatibilityReport {
    /// `R₁ = R₂ = 1`.
    pub fn is_twisted_diagonal(&self) -> bool {
        self.goursat
            .as_ref()
            .is_some_and(|d| d.x1.is_trivial() && d.x2.is_trivial())
    }

    pub fn theorem_consistent(&self) -> bool {
        self.projections_surjective == (true, true)
            && self.kernel_orders_equal == Some(true)
            && self.equivalence_holds == Some(true)
            && self.quotient_iso.as_ref().is_none_or(|v| v.holds)
    }
}

pub struct Exploration {
    pub product: DirectProduct,
    pub reports: Vec<CompatibilityReport>,
}

/// One report per `P₁ × P₂`-class of subgroups with surjective projections.
pub fn explore(f1: &FusionSystem, f2: &FusionSystem, limits: &Limits) -> Result<Exploration, Error> {
    if f1.p().order() != f2.p().order() {
        return Err(Error::UnequalOrders {
            left: f1.p().order(),
            right: f2.p().order(),
        });
    }
    let product = DirectProduct::from_arcs(f1.p().clone(), f2.p().clone());
    let all = product.group.all_subgroups(limits)?;
    let mut reps: Vec<Subgroup> = all
        .iter()
        .filter(|r| {
            product.project_left(r).order() == product.left.order()
                && product.project_right(r).order() == product.right.order()
        })
        .map(|r| product.group.canonical_conjugate(r))
        .collect();
    reps.sort();
    reps.dedup();
    let reports = reps
        .into_iter()
        .map(|r| report(f1, f2, &product, r, limits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Exploration { product, reports })
}

pub fn report(
    f1: &FusionSystem,
    f2: &FusionSystem,
    product: &DirectProduct,
    r: Subgroup,
    limits: &Limits,
) -> Result<CompatibilityReport, Error> {
    let left = product.project_left(&r).order() == product.left.order();
    let right = product.project_right(&r).order() == product.right.order();
    if !(left && right) {
        return Ok(CompatibilityReport {
            r,
            projections_surjective: (left, right),
            goursat: None,
            kernel_orders_equal: None,
            r1_strongly_closed: None,
            r2_strongly_closed: None,
            equivalence_holds: None,
            quotient_iso: None,
        });
    }
    let d = decompose(product, &r);
    let s1 = f1.strongly_closed(&d.x1);
    let s2 = f2.strongly_closed(&d.x2);
    let quotient_iso = if s1 && s2 {
        let q1 = f1.quotient(&d.x1, Flavor::ModR, limits)?;
        let q2 = f2.quotient(&d.x2, Flavor::ModR, limits)?;
        // θ between the Goursat quotients, re-read in the quotient systems' groups
        let g1 = &q1.quotient.group;
        let g2 = &q2.quotient.group;
        let mut theta = alloc::vec![0u32; g1.order()];
        for (i, &y) in d.theta.iter().enumerate() {
            let a = g1.index_of(d.q1.group.element(i as u32)).ok_or(Error::NotIsomorphism)?;
            let b = g2.index_of(d.q2.group.element(y)).ok_or(Error::NotIsomorphism)?;
            theta[a as usize] = b;
        }
        Some(iso_check(&q1.system, &q2.system, &theta)?)
    } else {
        None
    };
    Ok(CompatibilityReport {
        projections_surjective: (true, true),
        kernel_orders_equal: Some(d.x1.order() == d.x2.order()),
        r1_strongly_closed: Some(s1),
        r2_strongly_closed: Some(s2),
        equivalence_holds: Some(s1 == s2),
        quotient_iso,
        goursat: Some(d),
        r,
    })
}

pub fn filter_theorem_consistent(reports: &[CompatibilityReport]) -> Vec<&CompatibilityReport> {
    reports.iter().filter(|r| r.theorem_consistent()).collect()
}

/// For a twisted diagonal `R = {(x, θ(x))}`, the map `θ: P₁ → P₂`.
pub fn diagonal_map(product: &DirectProduct, r: &Subgroup) -> Option<Vec<u32>> {
    if r.order() != product.left.order() {
        return None;
    }
    let mut theta = alloc::vec![u32::MAX; product.left.order()];
    for &e in r.elements() {
        let (a, b) = product.split(e);
        if theta[a as usize] != u32::MAX {
            return None;
        }
        theta[a as usize] = b;
    }
    theta.iter().all(|&b| b != u32::MAX).then_some(theta)
}

/// The diagonal candidate `ΔP` of `explore(F, F)`.
pub fn diagonal_report(exploration: &Exploration) -> Option<&CompatibilityReport> {
    let diag = exploration.product.diagonal()?;
    let canon = exploration.product.group.canonical_conjugate(&diag);
    exploration.reports.iter().find(|r| r.r == canon)
}

/// For every twisted-diagonal report, whether its quotient verdict agrees
/// with comparing `F₁` and `F₂` directly along `θ: P₁ → P₂`.
pub fn diagonal_consistency(
    f1: &FusionSystem,
    f2: &FusionSystem,
    exploration: &Exploration,
) -> Result<Vec<(Subgroup, bool)>, Error> {
    let mut out = Vec::new();
    for rep in exploration.reports.iter().filter(|r| r.is_twisted_diagonal()) {
        let theta = diagonal_map(&exploration.product, &rep.r).ok_or(Error::NotIsomorphism)?;
        let direct = iso_check(f1, f2, &theta)?.holds;
        let via_quotient = rep.quotient_iso.as_ref().map(|v| v.holds);
        out.push((rep.r.clone(), via_quotient == Some(direct)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::PermGroup;
    use alloc::sync::Arc;

    fn l() -> Limits {
        Limits::default()
    }

    fn group(name: &str) -> Arc<PermGroup> {
        Arc::new(catalog::parse(name, &l()).unwrap())
    }

    #[test]
    fn inner_c2_has_two_candidates() {
        let f = FusionSystem::inner(group("C2"), 2, &l()).unwrap();
        let ex = explore(&f, &f, &l()).unwrap();
        assert_eq!(ex.reports.len(), 2);
        for r in &ex.reports {
            assert_eq!(r.equivalence_holds, Some(true));
            assert!(r.quotient_iso.as_ref().unwrap().holds);
            assert!(r.theorem_consistent());
        }
        assert_eq!(filter_theorem_consistent(&ex.reports).len(), 2);
    }

    #[test]
    fn s4_diagonal_passes() {
        let f = FusionSystem::of_group(group("S4"), 2, &l()).unwrap();
        let ex = explore(&f, &f, &l()).unwrap();
        let d = diagonal_report(&ex).unwrap();
        assert!(d.is_twisted_diagonal());
        assert!(d.theorem_consistent());
        assert!(diagonal_consistency(&f, &f, &ex).unwrap().iter().all(|(_, ok)| *ok));
        let full = ex.reports.iter().find(|r| r.r.order() == 64).unwrap();
        assert!(full.theorem_consistent());
    }

    #[test]
    fn s4_against_d8_flags_failures() {
        let f1 = FusionSystem::of_group(group("S4"), 2, &l()).unwrap();
        let f2 = FusionSystem::of_group(group("D8"), 2, &l()).unwrap();
        let ex = explore(&f1, &f2, &l()).unwrap();
        assert!(ex.reports.iter().any(|r| r.equivalence_holds == Some(false)));
        // no diagonal can carry the S4 fusion onto the inner system
        for r in ex.reports.iter().filter(|r| r.is_twisted_diagonal()) {
            assert!(!r.theorem_consistent());
        }
        assert!(diagonal_consistency(&f1, &f2, &ex).unwrap().iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn unequal_orders_are_rejected() {
        let f1 = FusionSystem::of_group(group("S3"), 2, &l()).unwrap();
        let f2 = FusionSystem::of_group(group("S4"), 2, &l()).unwrap();
        assert!(matches!(
            explore(&f1, &f2, &l()),
            Err(Error::UnequalOrders { left: 2, right: 8 })
        ));
    }
}
