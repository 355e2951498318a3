//! Composition of transitive bisets with trivial coefficients.
//!
//! For `X ≤ G × H` and `Y ≤ H × K`,
//!
//! ```text
//! (G×H)/X ×_H (H×K)/Y  ≅  ⊔_{t ∈ π₂(X)\H/π₁(Y)}  (G×K)/(X ∗ ^(t,1)Y)
//! ```
//!
//! with `X ∗ ^(t,1)Y = {(g, k) | ∃h: (g, h) ∈ X, (t⁻¹ht, k) ∈ Y}`. The left
//! side is computed directly from coset pairs and serves as the oracle.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::Error;
use crate::group::{Limits, PermGroup};
use crate::gset::{canonical_of_elements, double_cosets, Biset, ClassIndex, GSet, TransitiveDecomposition, Verdict};
use crate::product::DirectProduct;
use crate::subgroup::Subgroup;

/// The three products `G × H`, `H × K`, `G × K` for one triple.
#[derive(Clone, Debug)]
pub struct BoucSetting {
    pub gh: Arc<DirectProduct>,
    pub hk: Arc<DirectProduct>,
    pub gk: Arc<DirectProduct>,
    index: Option<ClassIndex>,
}

impl BoucSetting {
    pub fn new(g: Arc<PermGroup>, h: Arc<PermGroup>, k: Arc<PermGroup>) -> BoucSetting {
        BoucSetting {
            gh: Arc::new(DirectProduct::from_arcs(g.clone(), h.clone())),
            hk: Arc::new(DirectProduct::from_arcs(h, k.clone())),
            gk: Arc::new(DirectProduct::from_arcs(g, k)),
            index: None,
        }
    }

    /// Precomputes the conjugacy classes of subgroups of `G × K`.
    pub fn with_class_index(mut self, limits: &Limits) -> Result<BoucSetting, Error> {
        let subs = self.gk.group.all_subgroups(limits)?;
        self.index = Some(ClassIndex::new(&self.gk.group, &subs));
        Ok(self)
    }

    pub fn h(&self) -> &Arc<PermGroup> {
        &self.gh.right
    }

    fn canonical(&self, elems: &[u32]) -> Subgroup {
        canonical_of_elements(&self.gk.group, elems, self.index.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoucTerm {
    /// Double coset representative `t ∈ H`.
    pub rep: u32,
    pub star: Subgroup,
    /// `X₂ ∩ tY₁t⁻¹`, kept for inspection.
    pub inner: Subgroup,
}

#[derive(Clone, Debug)]
pub struct BoucDecomposition {
    pub x: Subgroup,
    pub y: Subgroup,
    pub terms: Vec<BoucTerm>,
}

impl BoucDecomposition {
    pub fn decomposition(&self, setting: &BoucSetting) -> TransitiveDecomposition {
        TransitiveDecomposition::from_stabilizers(self.terms.iter().map(|t| setting.canonical(t.star.elements())))
    }
}

/// `fiber[h]` lists the `k` with `(h, k) ∈ Y`.
fn fibers(setting: &BoucSetting, y: &Subgroup) -> Vec<Vec<u32>> {
    let mut fiber = alloc::vec![Vec::new(); setting.h().order()];
    for &e in y.elements() {
        let (h, k) = setting.hk.split(e);
        fiber[h as usize].push(k);
    }
    fiber
}

fn star_elements(setting: &BoucSetting, x: &Subgroup, fiber: &[Vec<u32>], t: u32) -> Vec<u32> {
    let h_group = setting.h();
    let t_inv = h_group.inv(t);
    let mut out = Vec::new();
    for &e in x.elements() {
        let (g, h) = setting.gh.split(e);
        for &k in &fiber[h_group.conj(t_inv, h) as usize] {
            out.push(setting.gk.pair(g, k));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

pub fn star_product(setting: &BoucSetting, x: &Subgroup, y: &Subgroup, t: u32) -> Subgroup {
    let elems = star_elements(setting, x, &fibers(setting, y), t);
    Subgroup::from_elements(&setting.gk.group, &elems).expect("star products are subgroups")
}

pub fn bouc_rhs(setting: &BoucSetting, x: &Subgroup, y: &Subgroup) -> BoucDecomposition {
    let h_group = setting.h();
    let p2x = setting.gh.project_right(x);
    let p1y = setting.hk.project_left(y);
    let x2 = setting.gh.right_kernel(x);
    let y1 = setting.hk.left_kernel(y);
    let fiber = fibers(setting, y);
    let terms = double_cosets(h_group, &p2x, &p1y)
        .into_iter()
        .map(|t| {
            let elems = star_elements(setting, x, &fiber, t);
            BoucTerm {
                rep: t,
                star: Subgroup::from_elements(&setting.gk.group, &elems).expect("star products are subgroups"),
                inner: x2.intersection(h_group, &h_group.conjugate_subgroup(t, &y1)),
            }
        })
        .collect();
    BoucDecomposition {
        x: x.clone(),
        y: y.clone(),
        terms,
    }
}

/// `(G×H)/X ×_H (H×K)/Y` as a `G × K`-set.
pub fn bouc_lhs_oracle(setting: &BoucSetting, x: &Subgroup, y: &Subgroup) -> GSet {
    let left = Biset::cosets(setting.gh.clone(), x);
    let right = Biset::cosets(setting.hk.clone(), y);
    left.compose(&right, setting.gk.clone()).set
}

pub fn verify_bouc(setting: &BoucSetting, x: &Subgroup, y: &Subgroup) -> Verdict {
    Verdict {
        left: match &setting.index {
            Some(ix) => bouc_lhs_oracle(setting, x, y).orbits_indexed(ix),
            None => bouc_lhs_oracle(setting, x, y).orbits(),
        },
        right: bouc_rhs(setting, x, y).decomposition(setting),
    }
}

/// All subgroup pairs of one triple, with the coset bisets built once.
pub struct ExhaustiveBouc {
    pub setting: BoucSetting,
    pub xs: Vec<Subgroup>,
    pub ys: Vec<Subgroup>,
    x_bisets: Vec<Biset>,
    y_bisets: Vec<Biset>,
    y_fibers: Vec<Vec<Vec<u32>>>,
    p2x: Vec<Subgroup>,
    p1y: Vec<Subgroup>,
}

impl ExhaustiveBouc {
    pub fn new(
        g: Arc<PermGroup>,
        h: Arc<PermGroup>,
        k: Arc<PermGroup>,
        limits: &Limits,
    ) -> Result<ExhaustiveBouc, Error> {
        let setting = BoucSetting::new(g, h, k).with_class_index(limits)?;
        let xs = setting.gh.group.all_subgroups(limits)?;
        let ys = setting.hk.group.all_subgroups(limits)?;
        let x_bisets = xs.iter().map(|x| Biset::cosets(setting.gh.clone(), x)).collect();
        let y_bisets = ys.iter().map(|y| Biset::cosets(setting.hk.clone(), y)).collect();
        let y_fibers = ys.iter().map(|y| fibers(&setting, y)).collect();
        let p2x = xs.iter().map(|x| setting.gh.project_right(x)).collect();
        let p1y = ys.iter().map(|y| setting.hk.project_left(y)).collect();
        Ok(ExhaustiveBouc {
            setting,
            xs,
            ys,
            x_bisets,
            y_bisets,
            y_fibers,
            p2x,
            p1y,
        })
    }

    pub fn pair_count(&self) -> usize {
        self.xs.len() * self.ys.len()
    }

    /// Verdict for `(xs[i], ys[j])`.
    pub fn verify(&self, i: usize, j: usize) -> Verdict {
        let s = &self.setting;
        let left = self.x_bisets[i].compose_decomposition(&self.y_bisets[j], &s.gk, s.index.as_ref());
        let right = TransitiveDecomposition::from_stabilizers(
            double_cosets(s.h(), &self.p2x[i], &self.p1y[j])
                .into_iter()
                .map(|t| s.canonical(&star_elements(s, &self.xs[i], &self.y_fibers[j], t))),
        );
        Verdict { left, right }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn g(name: &str) -> Arc<PermGroup> {
        Arc::new(catalog::parse(name, &Limits::default()).unwrap())
    }

    fn setting(a: &str, b: &str, c: &str) -> BoucSetting {
        BoucSetting::new(g(a), g(b), g(c))
    }

    #[test]
    fn diagonals_compose_to_the_diagonal() {
        for name in ["C2", "C4", "C2 x C2", "D8"] {
            let s = setting(name, name, name);
            let dx = s.gh.diagonal().unwrap();
            let dy = s.hk.diagonal().unwrap();
            let rhs = bouc_rhs(&s, &dx, &dy);
            assert_eq!(rhs.terms.len(), 1);
            assert_eq!(rhs.terms[0].star, s.gk.diagonal().unwrap());
            let v = verify_bouc(&s, &dx, &dy);
            assert!(v.equal());
            assert_eq!(v.left.parts.len(), 1);
            assert_eq!(v.left.parts[0].1, 1);
        }
    }

    #[test]
    fn graphs_compose() {
        let s = setting("C4", "C4", "C4");
        let c4 = s.h().clone();
        let inv_graph: Vec<u32> = (0..4u32).map(|a| s.gh.pair(a, c4.inv(a))).collect();
        let x = Subgroup::from_elements(&s.gh.group, &sorted(inv_graph)).unwrap();
        let y = Subgroup::from_elements(
            &s.hk.group,
            &sorted((0..4u32).map(|a| s.hk.pair(a, c4.inv(a))).collect()),
        )
        .unwrap();
        // inversion twice is the identity
        assert_eq!(star_product(&s, &x, &y, 0), s.gk.diagonal().unwrap());
    }

    fn sorted(mut v: Vec<u32>) -> Vec<u32> {
        v.sort_unstable();
        v
    }

    #[test]
    fn full_times_diagonal_over_c2() {
        let s = setting("C2", "C2", "C2");
        let x = Subgroup::whole(&s.gh.group);
        let y = s.hk.diagonal().unwrap();
        assert_eq!(star_product(&s, &x, &y, 0), Subgroup::whole(&s.gk.group));
        let lhs = bouc_lhs_oracle(&s, &x, &y).orbits();
        assert_eq!(lhs.parts.len(), 1);
        assert_eq!(lhs.parts[0].0.order(), 4);
    }

    #[test]
    fn left_factor_times_anything() {
        // X = G × 1 forces h = 1, leaving G × Y₂
        let s = setting("C2 x C2", "C4", "C2");
        let x =
            s.gh.product_of(&Subgroup::whole(&s.gh.left), &Subgroup::trivial(&s.gh.right));
        for y in s.hk.group.all_subgroups(&Limits::default()).unwrap() {
            let y2 = s.hk.right_kernel(&y);
            let expect = s.gk.product_of(&Subgroup::whole(&s.gk.left), &y2);
            assert_eq!(star_product(&s, &x, &y, 0), expect);
        }
    }

    #[test]
    fn trivial_projections_give_one_term_per_element() {
        let s = setting("C2", "C2 x C2", "C2");
        let x = Subgroup::trivial(&s.gh.group);
        let y = Subgroup::trivial(&s.hk.group);
        assert_eq!(bouc_rhs(&s, &x, &y).terms.len(), 4);
        assert!(verify_bouc(&s, &x, &y).equal());
    }

    #[test]
    fn identity_biset_on_the_right() {
        let s = setting("C2", "D8", "D8");
        let dy = s.hk.diagonal().unwrap();
        for x in s.gh.group.all_subgroups(&Limits::default()).unwrap() {
            let lhs = bouc_lhs_oracle(&s, &x, &dy).orbits();
            // G×H = G×K here, built the same way
            let direct = GSet::cosets(s.gk.group.clone(), &x).orbits();
            assert_eq!(lhs, direct);
        }
    }

    #[test]
    fn exhaustive_over_c2() {
        let c2 = g("C2");
        let ex = ExhaustiveBouc::new(c2.clone(), c2.clone(), c2, &Limits::default()).unwrap();
        assert_eq!(ex.pair_count(), 25);
        for i in 0..ex.xs.len() {
            for j in 0..ex.ys.len() {
                let v = ex.verify(i, j);
                assert!(v.equal());
                assert_eq!(v, verify_bouc(&ex.setting, &ex.xs[i], &ex.ys[j]));
            }
        }
    }

    #[test]
    fn star_is_independent_of_the_double_coset_representative() {
        let s = setting("C2", "D8", "C2 x C2");
        let l = Limits::default();
        let h = s.h().clone();
        for x in s.gh.group.all_subgroups(&l).unwrap().iter().step_by(3) {
            for y in s.hk.group.all_subgroups(&l).unwrap().iter().step_by(3) {
                let p2x = s.gh.project_right(x);
                let p1y = s.hk.project_left(y);
                for t in double_cosets(&h, &p2x, &p1y) {
                    let base = s.gk.group.canonical_conjugate(&star_product(&s, x, y, t));
                    for &a in p2x.elements() {
                        for &b in p1y.elements() {
                            let t2 = h.mul(h.mul(a, t), b);
                            let other = s.gk.group.canonical_conjugate(&star_product(&s, x, y, t2));
                            assert_eq!(base, other);
                        }
                    }
                }
            }
        }
    }
}
