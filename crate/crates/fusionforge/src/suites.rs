//! The exhaustive verification suites. Each suite returns a JSON-ready
//! report whose content depends only on the config caps, the seed and the
//! suite options, never on the worker count.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Result};
use fusionforge_core::bouc::ExhaustiveBouc;
use fusionforge_core::catalog;
use fusionforge_core::explorer::{diagonal_consistency, diagonal_report, explore};
use fusionforge_core::fusion::inner_criterion;
use fusionforge_core::fusion::{Flavor, FusionSystem};
use fusionforge_core::goursat::{decompose, flip, reconstruct};
use fusionforge_core::gset::{
    deflate_commutes_with_induction, deflate_commutes_with_restriction, deflate_coset_space, deflation_transitivity,
    find_isomorphism, mackey_check,
};
use fusionforge_core::morphism::automorphisms;
use fusionforge_core::{DirectProduct, GSet, GroupMorphism, Limits, PermGroup, Subgroup};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::config::Config;
use crate::json::failure_json;

/// Groups whose ordered pairs feed the Goursat suite.
pub const GOURSAT_GROUPS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2 x C2", "C5", "S3", "C6", "C7", "D8", "Q8", "C8", "C2 x C4", "E8", "C9", "E9", "D10",
    "A4", "D12", "Q12", "C2 x C6", "C16", "D16", "Q16", "C4 x C4", "C2 x D8", "C2 x Q8", "S4", "SL(2,3)",
];

pub const BOUC_GROUPS: &[&str] = &["C2", "C4", "C2 x C2", "D8", "Q8", "C8"];

/// Groups of order at most 24 for the G-set suite.
pub const GACT_GROUPS: &[&str] = &[
    "C1",
    "C2",
    "C3",
    "C4",
    "C2 x C2",
    "C5",
    "S3",
    "C6",
    "C7",
    "D8",
    "Q8",
    "C8",
    "C2 x C4",
    "E8",
    "C9",
    "E9",
    "D10",
    "C10",
    "C11",
    "A4",
    "D12",
    "Q12",
    "C12",
    "C2 x C6",
    "C13",
    "D14",
    "C14",
    "C15",
    "C16",
    "D16",
    "Q16",
    "C4 x C4",
    "C2 x D8",
    "C2 x Q8",
    "E16",
    "C2 x C8",
    "C2 x C2 x C4",
    "C17",
    "D18",
    "C18",
    "C3 x S3",
    "C3 x C6",
    "C19",
    "D20",
    "Q20",
    "C20",
    "C2 x C10",
    "C21",
    "D22",
    "C22",
    "C23",
    "S4",
    "SL(2,3)",
    "D24",
    "Q24",
    "C24",
    "C2 x A4",
    "C2 x C12",
    "C2 x C2 x C6",
    "C3 x D8",
    "C3 x Q8",
    "C4 x S3",
    "C2 x D12",
    "S3 x C2 x C2",
];

/// `(group, prime)` pairs whose Sylow fusion systems feed the fusion suites.
pub const FUSION_SYSTEMS: &[SystemName] = &[
    ("S3", 2),
    ("S4", 2),
    ("A4", 2),
    ("D8", 2),
    ("Q8", 2),
    ("SL(2,3)", 2),
    ("GL(2,3)", 2),
    ("A5", 2),
    ("S5", 2),
    ("PSL(2,7)", 2),
    ("A6", 2),
    ("Q16", 2),
    ("D16", 2),
    ("S4 x C2", 2),
    ("A4 x C2", 2),
    ("S3 x S3", 2),
    ("A4 x A4", 2),
    ("S4 x C4", 2),
    ("SL(2,3) x C4", 2),
    ("GL(2,3) x C2", 2),
    ("S4 x C2 x C2", 2),
    ("A4 x S4", 2),
    ("A4 x A4 x C2", 2),
    ("S4 x S3", 2),
    ("C4 x C4 x C2", 2),
    ("S3", 3),
    ("S3 x S3", 3),
    ("A5", 3),
    ("PSL(2,7)", 3),
    ("A4 x C3", 3),
    ("A5", 5),
    ("PSL(2,7)", 7),
];

/// p-groups for the inner-automorphism suite.
pub const P_GROUPS: &[&str] = &[
    "C2",
    "C3",
    "C4",
    "C5",
    "C7",
    "C8",
    "C9",
    "C16",
    "C25",
    "C27",
    "C32",
    "C64",
    "C2 x C2",
    "E8",
    "E9",
    "E16",
    "E27",
    "D8",
    "D16",
    "D32",
    "D64",
    "Q8",
    "Q16",
    "Q32",
    "Q64",
    "C2 x C4",
    "C2 x C8",
    "C4 x C4",
    "C2 x D8",
    "C2 x Q8",
    "C4 x D8",
    "C4 x Q8",
    "D8 x D8",
    "D8 x Q8",
    "C3 x C9",
    "C2 x C2 x C4",
    "C2 x C16",
    "C8 x C8",
    "C2 x C2 x D8",
    "C4 x C8",
];

/// A catalog group with the prime whose Sylow fusion system is meant.
pub type SystemName = (&'static str, u32);

/// Cross pairs for the explorer suite, on top of every `explore(F, F)`.
pub const EXPLORER_PAIRS: &[(SystemName, SystemName)] = &[
    (("S4", 2), ("D8", 2)),
    (("D8", 2), ("S4", 2)),
    (("A4", 2), ("C2 x C2", 2)),
    (("S3", 3), ("C3", 3)),
    (("SL(2,3)", 2), ("Q8", 2)),
    (("A5", 2), ("A4", 2)),
    (("PSL(2,7)", 2), ("S4", 2)),
    (("S3", 2), ("C2", 2)),
];

/// Systems with `|P| ≤` this are explored against themselves.
pub const EXPLORER_MAX_P: usize = 16;

/// Left out of `explore(F, F)`: `P × P` is elementary abelian of order 256,
/// with millions of subgroups.
pub const EXPLORER_EXCLUDED: &[SystemName] = &[("A4 x A4", 2)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Goursat,
    Bouc,
    Gact,
    FusionQuotients,
    Inner,
    Saturation,
    Explorer,
    Determinism,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Goursat,
        Suite::Bouc,
        Suite::Gact,
        Suite::FusionQuotients,
        Suite::Inner,
        Suite::Saturation,
        Suite::Explorer,
        Suite::Determinism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Goursat => "goursat",
            Suite::Bouc => "bouc",
            Suite::Gact => "gact",
            Suite::FusionQuotients => "fusion-quotients",
            Suite::Inner => "inner",
            Suite::Saturation => "saturation",
            Suite::Explorer => "explorer",
            Suite::Determinism => "determinism",
        }
    }

    pub fn criterion(self) -> u8 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u8 + 1
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// The order bound each suite uses when none is given.
    pub fn default_max_order(self) -> usize {
        match self {
            Suite::Goursat => 256,
            Suite::Bouc => 8,
            Suite::Gact => 24,
            Suite::FusionQuotients => 32,
            Suite::Inner => 64,
            Suite::Saturation => 64,
            Suite::Explorer => EXPLORER_MAX_P,
            Suite::Determinism => 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Case {
    pub name: String,
    pub checks: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub max_order: usize,
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    fn new(suite: Suite, max_order: usize, cases: Vec<Case>) -> SuiteReport {
        let checks = cases.iter().map(|c| c.checks).sum();
        let failures: u64 = cases.iter().map(|c| c.failures).sum();
        SuiteReport {
            suite: suite.name().to_string(),
            criterion: suite.criterion(),
            max_order,
            passed: failures == 0 && checks > 0,
            checks,
            failures,
            cases,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

/// Accumulates checks for one case; an error ends the case as a failure.
struct Tally {
    case: Case,
}

impl Tally {
    fn new(name: impl Into<String>) -> Tally {
        Tally {
            case: Case {
                name: name.into(),
                checks: 0,
                failures: 0,
                first_failure: None,
                info: BTreeMap::new(),
            },
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.case.checks += 1;
        if !ok {
            self.case.failures += 1;
            if self.case.first_failure.is_none() {
                self.case.first_failure = Some(what());
            }
        }
    }

    fn info(&mut self, key: &str, v: impl Into<Value>) {
        self.case.info.insert(key.to_string(), v.into());
    }

    fn run(name: impl Into<String>, body: impl FnOnce(&mut Tally) -> Result<()>) -> Case {
        let mut t = Tally::new(name);
        if let Err(e) = body(&mut t) {
            t.check(false, || format!("error: {:#}", e));
        }
        t.case
    }
}

fn group(name: &str, limits: &Limits) -> Result<Arc<PermGroup>> {
    Ok(Arc::new(catalog::parse(name, limits)?))
}

pub fn fusion_system(name: &str, prime: u32, limits: &Limits) -> Result<FusionSystem> {
    Ok(FusionSystem::of_group(group(name, limits)?, prime, limits)?)
}

fn sylow_order(name: &str, prime: u32, limits: &Limits) -> Result<usize> {
    let g = catalog::parse(name, limits)?;
    let mut n = g.order();
    let mut p_part = 1;
    while n % prime as usize == 0 {
        n /= prime as usize;
        p_part *= prime as usize;
    }
    Ok(p_part)
}

/// Runs one suite inside a pool of `cfg.parallelism` workers.
pub fn run(suite: Suite, cfg: &Config, max_order: Option<usize>) -> Result<SuiteReport> {
    let max = max_order.unwrap_or(suite.default_max_order());
    let pool = cfg.pool()?;
    pool.install(|| match suite {
        Suite::Goursat => goursat(cfg, max),
        Suite::Bouc => bouc(cfg, max),
        Suite::Gact => gact(cfg, max),
        Suite::FusionQuotients => fusion_quotients(cfg, max),
        Suite::Inner => inner(cfg, max),
        Suite::Saturation => saturation(cfg, max),
        Suite::Explorer => explorer(cfg, max),
        Suite::Determinism => determinism(cfg, max_order),
    })
}

fn orders(names: &[&str], limits: &Limits) -> Result<Vec<(String, usize)>> {
    names
        .iter()
        .map(|n| Ok((n.to_string(), catalog::parse(n, limits)?.order())))
        .collect()
}

fn goursat(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let groups = orders(GOURSAT_GROUPS, &limits)?;
    let mut pairs = Vec::new();
    for (a, na) in &groups {
        for (b, nb) in &groups {
            if na * nb <= max {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let cases = pairs
        .par_iter()
        .map(|(a, b)| {
            Tally::run(format!("{} | {}", a, b), |t| {
                let (ga, gb) = (group(a, &limits)?, group(b, &limits)?);
                let dp = DirectProduct::from_arcs(ga.clone(), gb.clone());
                let swapped = DirectProduct::from_arcs(gb, ga);
                let subs = dp.group.all_subgroups(&limits)?;
                t.info("subgroups", subs.len());
                for x in &subs {
                    let d = decompose(&dp, x);
                    let back = reconstruct(&dp, &d)?;
                    let ok = back == *x
                        && x.order() == d.p1x.order() * d.x2.order()
                        && x.order() == d.p2x.order() * d.x1.order()
                        && d.theta_is_isomorphism()
                        && flip(&swapped, &dp, &flip(&dp, &swapped, x)) == *x;
                    t.check(ok, || format!("X = {:?}", x.elements()));
                }
                Ok(())
            })
        })
        .collect();
    Ok(SuiteReport::new(Suite::Goursat, max, cases))
}

fn bouc(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let groups: Vec<String> = orders(BOUC_GROUPS, &limits)?
        .into_iter()
        .filter(|(_, n)| *n <= max)
        .map(|(n, _)| n)
        .collect();
    let mut triples = Vec::new();
    for g in &groups {
        for h in &groups {
            for k in &groups {
                triples.push((g.clone(), h.clone(), k.clone()));
            }
        }
    }
    let cases = triples
        .iter()
        .map(|(g, h, k)| {
            Tally::run(format!("{} | {} | {}", g, h, k), |t| {
                let ex = ExhaustiveBouc::new(group(g, &limits)?, group(h, &limits)?, group(k, &limits)?, &limits)?;
                let bad: Vec<(usize, usize)> = (0..ex.xs.len())
                    .into_par_iter()
                    .flat_map_iter(|i| {
                        let ex = &ex;
                        (0..ex.ys.len())
                            .filter(move |&j| !ex.verify(i, j).equal())
                            .map(move |j| (i, j))
                    })
                    .collect();
                t.info("x_subgroups", ex.xs.len());
                t.info("y_subgroups", ex.ys.len());
                t.case.checks += ex.pair_count() as u64;
                t.case.failures += bad.len() as u64;
                if let Some(&(i, j)) = bad.first() {
                    t.case.first_failure =
                        Some(format!("X = {:?}, Y = {:?}", ex.xs[i].elements(), ex.ys[j].elements()));
                }
                Ok(())
            })
        })
        .collect();
    Ok(SuiteReport::new(Suite::Bouc, max, cases))
}

/// `M ≤ L` re-read as a subgroup of `subgroup_as_group(L)`.
fn inside(lgroup: &PermGroup, l: &Subgroup, m: &Subgroup) -> Subgroup {
    let elems: Vec<u32> = m
        .elements()
        .iter()
        .map(|&x| l.position(x).expect("M ≤ L") as u32)
        .collect();
    Subgroup::from_elements(lgroup, &elems).expect("positions of a subgroup")
}

/// Relabels the points of `s` by `perm`.
fn relabel(s: &GSet, perm: &[u32]) -> GSet {
    let mut inv = vec![0u32; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    GSet::from_fn(s.group().clone(), s.len(), |g, y| {
        perm[s.act(g, inv[y as usize]) as usize]
    })
}

fn union_of_cosets(group: &Arc<PermGroup>, hs: &[&Subgroup]) -> GSet {
    let mut acc = GSet::cosets(group.clone(), hs[0]);
    for h in &hs[1..] {
        acc = acc.disjoint_union(&GSet::cosets(group.clone(), h));
    }
    acc
}

fn is_equivariant_bijection(a: &GSet, b: &GSet, map: &[u32]) -> bool {
    let mut seen = vec![false; b.len()];
    for &y in map {
        if y as usize >= b.len() || std::mem::replace(&mut seen[y as usize], true) {
            return false;
        }
    }
    (0..a.group().order() as u32)
        .all(|g| (0..a.len() as u32).all(|x| map[a.act(g, x) as usize] == b.act(g, map[x as usize])))
}

fn gact(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let groups: Vec<String> = orders(GACT_GROUPS, &limits)?
        .into_iter()
        .filter(|(_, n)| *n <= max)
        .map(|(n, _)| n)
        .collect();
    let cases = groups
        .par_iter()
        .enumerate()
        .map(|(gi, name)| {
            Tally::run(name.clone(), |t| {
                let g = group(name, &limits)?;
                let subs = g.all_subgroups(&limits)?;
                let classes: Vec<Subgroup> = g.subgroup_classes(&subs).into_iter().map(|(s, _)| s).collect();
                let normals: Vec<&Subgroup> = subs.iter().filter(|s| g.is_normal(s)).collect();
                t.info("subgroups", subs.len());
                t.info("normal_subgroups", normals.len());

                let mut count = BTreeMap::new();
                let mut bump = |k: &str| *count.entry(k.to_string()).or_insert(0u64) += 1;
                for h in &subs {
                    for k in &subs {
                        t.check(mackey_check(&g, h, k).equal(), || {
                            format!("Mackey: H = {:?}, K = {:?}", h.elements(), k.elements())
                        });
                        bump("mackey");
                    }
                }
                let cosets: Vec<GSet> = classes.iter().map(|h| GSet::cosets(g.clone(), h)).collect();
                for n in &normals {
                    for h in &classes {
                        t.check(deflate_coset_space(&g, n, h)?.equal(), || {
                            format!("deflation of G/H: N = {:?}, H = {:?}", n.elements(), h.elements())
                        });
                        bump("deflate_coset_space");
                    }
                    for l in subs.iter().filter(|l| n.is_subgroup_of(l)) {
                        for (h, s) in classes.iter().zip(&cosets) {
                            t.check(deflate_commutes_with_restriction(s, n, l)?.equal(), || {
                                format!(
                                    "restriction: N = {:?}, L = {:?}, H = {:?}",
                                    n.elements(),
                                    l.elements(),
                                    h.elements()
                                )
                            });
                            bump("restriction");
                        }
                        let lgroup = Arc::new(g.subgroup_as_group(l));
                        for m in subs.iter().filter(|m| m.is_subgroup_of(l)) {
                            let u = GSet::cosets(lgroup.clone(), &inside(&lgroup, l, m));
                            t.check(deflate_commutes_with_induction(&g, n, l, &u)?.equal(), || {
                                format!(
                                    "induction: N = {:?}, L = {:?}, M = {:?}",
                                    n.elements(),
                                    l.elements(),
                                    m.elements()
                                )
                            });
                            bump("induction");
                        }
                    }
                    for m in normals.iter().filter(|m| n.is_subgroup_of(m)) {
                        for (h, s) in classes.iter().zip(&cosets) {
                            t.check(deflation_transitivity(s, n, m)?.equal(), || {
                                format!(
                                    "transitivity: N = {:?}, M = {:?}, H = {:?}",
                                    n.elements(),
                                    m.elements(),
                                    h.elements()
                                )
                            });
                            bump("transitivity");
                        }
                    }
                }
                random_isomorphisms(
                    t,
                    &g,
                    &subs,
                    &classes,
                    cfg.seed ^ (gi as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
                );
                bump("random_isomorphism");
                for (k, v) in count {
                    t.info(&k, v);
                }
                Ok(())
            })
        })
        .collect();
    Ok(SuiteReport::new(Suite::Gact, max, cases))
}

/// Random unions of coset spaces, relabelled and reordered, must be found
/// isomorphic by an explicit bijection and by their decompositions; swapping
/// one orbit for a non-conjugate subgroup of the same order must break both.
fn random_isomorphisms(t: &mut Tally, g: &Arc<PermGroup>, subs: &[Subgroup], classes: &[Subgroup], seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let k = rng.gen_range(1..=3);
        let picks: Vec<&Subgroup> = (0..k).map(|_| &subs[rng.gen_range(0..subs.len())]).collect();
        let a = union_of_cosets(g, &picks);
        let mut conj: Vec<Subgroup> = picks
            .iter()
            .map(|h| g.conjugate_subgroup(rng.gen_range(0..g.order() as u32), h))
            .collect();
        conj.shuffle(&mut rng);
        let mut perm: Vec<u32> = (0..a.len() as u32).collect();
        perm.shuffle(&mut rng);
        let b = relabel(&union_of_cosets(g, &conj.iter().collect::<Vec<_>>()), &perm);
        let found = find_isomorphism(&a, &b);
        let ok = found.as_ref().is_some_and(|m| is_equivariant_bijection(&a, &b, m)) && a.orbits() == b.orbits();
        t.check(ok, || {
            format!(
                "isomorphic unions not matched: {:?}",
                picks.iter().map(|h| h.elements()).collect::<Vec<_>>()
            )
        });

        let target = g.canonical_conjugate(picks[0]);
        if let Some(other) = classes.iter().find(|c| c.order() == target.order() && **c != target) {
            let mut changed = picks.clone();
            changed[0] = other;
            let c = union_of_cosets(g, &changed);
            t.check(find_isomorphism(&a, &c).is_none() && a.orbits() != c.orbits(), || {
                format!(
                    "non-isomorphic unions matched: {:?} vs {:?}",
                    target.elements(),
                    other.elements()
                )
            });
        }
    }
}

fn fusion_quotients(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut systems = Vec::new();
    for &(name, p) in FUSION_SYSTEMS {
        if sylow_order(name, p, &limits)? <= max {
            systems.push((name, p));
        }
    }
    let cases = systems
        .par_iter()
        .map(|&(name, p)| Tally::run(format!("{}:{}", name, p), |t| fusion_quotient_case(t, name, p, &limits)))
        .collect();
    Ok(SuiteReport::new(Suite::FusionQuotients, max, cases))
}

fn fusion_quotient_case(t: &mut Tally, name: &str, p: u32, limits: &Limits) -> Result<()> {
    let f = fusion_system(name, p, limits)?;
    let pg = f.p().clone();
    t.info("p_order", pg.order());
    t.check(f.is_saturated(limits)?, || "F is not saturated".into());
    let inner = FusionSystem::inner(pg.clone(), p, limits)?;
    t.check(inner.is_subsystem_of(&f), || "inner system not contained in F".into());
    if pg.order() <= 16 {
        t.check(f.is_closed_under_composition(), || {
            "hom sets not closed under composition".into()
        });
    }
    let mut strong = 0u64;
    let mut weak = 0u64;
    for r in f.subgroups().iter().filter(|r| pg.is_normal(r)) {
        let label = || format!("R = {:?}", r.elements());
        let s = f.strongly_closed(r);
        let w = f.weakly_closed(r);
        t.check(!s || w, || format!("{}: strongly but not weakly closed", label()));
        let m = f.quotient(r, Flavor::ModR, limits)?;
        if s {
            strong += 1;
            let v = f.quotient_coincidence_check(r, limits)?;
            t.check(v.chain, || format!("{}: inclusion chain fails", label()));
            t.check(v.mod_equals_bar && v.bar_equals_generated, || {
                format!("{}: flavors differ", label())
            });
            t.check(v.saturation.is_none(), || {
                format!(
                    "{}: quotient not saturated: {}",
                    label(),
                    v.saturation.as_ref().map(failure_json).unwrap_or_default()
                )
            });
        } else {
            t.check(
                matches!(
                    f.quotient(r, Flavor::Bar, limits),
                    Err(fusionforge_core::Error::NotStronglyClosed)
                ),
                || format!("{}: image flavor built without strong closure", label()),
            );
        }
        if w {
            weak += 1;
            let sat = m.system.saturation_check(limits)?;
            t.check(sat.is_none(), || {
                format!(
                    "{}: F/R not saturated: {}",
                    label(),
                    sat.as_ref().map(failure_json).unwrap_or_default()
                )
            });
            if pg.order() <= 16 {
                t.check(f.quotient_alperin_check(r, limits)?.equal, || {
                    format!("{}: F/R not generated by automizers", label())
                });
            }
        }
    }
    t.info("strongly_closed", strong);
    t.info("weakly_closed", weak);
    Ok(())
}

fn inner(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let groups: Vec<String> = orders(P_GROUPS, &limits)?
        .into_iter()
        .filter(|(_, n)| *n <= max)
        .map(|(n, _)| n)
        .collect();
    let cases = groups
        .par_iter()
        .map(|name| {
            Tally::run(name.clone(), |t| {
                let p = group(name, &limits)?;
                let dp = DirectProduct::from_arcs(p.clone(), p.clone());
                let auts = automorphisms(&p, &limits)?;
                let verdicts: Vec<_> = auts.par_iter().map(|phi| inner_criterion(&p, &dp, phi)).collect();
                let mut inner_count = 0usize;
                for (phi, v) in auts.iter().zip(&verdicts) {
                    t.check(v.agree(), || format!("phi = {:?}: {:?}", phi.images(), v));
                    inner_count += v.direct as usize;
                }
                // |Inn(P)| = |P : Z(P)|
                let expected = p.order() / p.center().order();
                t.check(inner_count == expected, || {
                    format!("{} inner automorphisms, expected {}", inner_count, expected)
                });
                t.info("automorphisms", auts.len());
                t.info("inner", inner_count);
                Ok(())
            })
        })
        .collect();
    Ok(SuiteReport::new(Suite::Inner, max, cases))
}

fn saturation(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut systems = Vec::new();
    for &(name, p) in FUSION_SYSTEMS {
        if sylow_order(name, p, &limits)? <= max {
            systems.push((name, p));
        }
    }
    let mut cases: Vec<Case> = systems
        .par_iter()
        .map(|&(name, p)| {
            Tally::run(format!("{}:{}", name, p), |t| {
                let f = fusion_system(name, p, &limits)?;
                let failure = f.saturation_check(&limits)?;
                t.check(failure.is_none(), || {
                    failure.as_ref().map(failure_json).unwrap_or_default().to_string()
                });
                t.check(f.alperin_check(&limits)?.equal, || {
                    "not generated by automizers of fully centralized subgroups".into()
                });
                t.info("morphisms", f.morphism_count());
                Ok(())
            })
        })
        .collect();
    // control: an outer swap on C2 x C2 with no automorphism of order 3
    cases.push(Tally::run("C2 x C2 with swap (expected unsaturated)", |t| {
        let p = group("C2 x C2", &limits)?;
        let (a, b) = (p.generator_indices()[0], p.generator_indices()[1]);
        let whole = Subgroup::whole(&p);
        let images: Vec<u32> = (0..4)
            .map(|x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect();
        let swap = GroupMorphism::from_table(whole.clone(), whole, images)?;
        let f = FusionSystem::generated(p, 2, &[swap], &limits)?;
        let failure = f.saturation_check(&limits)?;
        t.check(failure.is_some(), || "swap system reported saturated".into());
        Ok(())
    }));
    Ok(SuiteReport::new(Suite::Saturation, max, cases))
}

fn explorer(cfg: &Config, max: usize) -> Result<SuiteReport> {
    let limits = cfg.limits();
    let mut runs: Vec<(SystemName, SystemName)> = Vec::new();
    for &(name, p) in FUSION_SYSTEMS {
        if sylow_order(name, p, &limits)? <= max && !EXPLORER_EXCLUDED.contains(&(name, p)) {
            runs.push(((name, p), (name, p)));
        }
    }
    for &(a, b) in EXPLORER_PAIRS {
        if sylow_order(a.0, a.1, &limits)? <= max {
            runs.push((a, b));
        }
    }
    let cases = runs
        .par_iter()
        .map(|&((n1, p1), (n2, p2))| {
            Tally::run(format!("{}:{} | {}:{}", n1, p1, n2, p2), |t| {
                let f1 = fusion_system(n1, p1, &limits)?;
                let f2 = fusion_system(n2, p2, &limits)?;
                let ex = explore(&f1, &f2, &limits)?;
                if (n1, p1) == (n2, p2) {
                    let ok = diagonal_report(&ex).is_some_and(|d| d.is_twisted_diagonal() && d.theorem_consistent());
                    t.check(ok, || "diagonal missing or not all-pass".into());
                }
                for (r, ok) in diagonal_consistency(&f1, &f2, &ex)? {
                    t.check(ok, || {
                        format!(
                            "R = {:?}: quotient verdict differs from direct comparison",
                            r.elements()
                        )
                    });
                }
                t.info("candidates", ex.reports.len());
                t.info(
                    "theorem_consistent",
                    ex.reports.iter().filter(|r| r.theorem_consistent()).count(),
                );
                t.info(
                    "twisted_diagonals",
                    ex.reports.iter().filter(|r| r.is_twisted_diagonal()).count(),
                );
                Ok(())
            })
        })
        .collect();
    Ok(SuiteReport::new(Suite::Explorer, max, cases))
}

/// Runs every other suite twice and compares the serialized reports.
fn determinism(cfg: &Config, max_order: Option<usize>) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for suite in Suite::ALL.into_iter().filter(|&s| s != Suite::Determinism) {
        let first = run_nested(suite, cfg, max_order)?;
        let second = run_nested(suite, cfg, max_order)?;
        cases.push(Tally::run(suite.name(), |t| {
            t.check(first == second, || "reports differ between runs".into());
            t.info("bytes", first.len());
            Ok(())
        }));
    }
    Ok(SuiteReport::new(Suite::Determinism, max_order.unwrap_or(0), cases))
}

fn run_nested(suite: Suite, cfg: &Config, max_order: Option<usize>) -> Result<String> {
    let max = max_order
        .map(|m| m.min(suite.default_max_order()))
        .unwrap_or(suite.default_max_order());
    let report = match suite {
        Suite::Goursat => goursat(cfg, max),
        Suite::Bouc => bouc(cfg, max),
        Suite::Gact => gact(cfg, max),
        Suite::FusionQuotients => fusion_quotients(cfg, max),
        Suite::Inner => inner(cfg, max),
        Suite::Saturation => saturation(cfg, max),
        Suite::Explorer => explorer(cfg, max),
        Suite::Determinism => bail!("determinism does not nest"),
    }?;
    Ok(report.to_json())
}

/// Two runs of the same suite serialize identically.
pub fn same_bytes(a: &SuiteReport, b: &SuiteReport) -> bool {
    a.to_json() == b.to_json()
}

pub fn summary_line(report: &SuiteReport) -> String {
    format!(
        "criterion {} [{}]: {} ({} checks, {} failures)",
        report.criterion,
        report.suite,
        if report.passed { "PASS" } else { "FAIL" },
        report.checks,
        report.failures
    )
}

pub fn parse_suite(name: &str) -> Result<Suite> {
    Suite::from_name(name).ok_or_else(|| {
        anyhow!(
            "unknown suite {:?}; expected one of {}",
            name,
            Suite::ALL.map(|s| s.name()).join(", ")
        )
    })
}
