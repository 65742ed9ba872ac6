//! Conjugacy classes, normal structure, quotients, chief series and the
//! class predicates (soluble, nilpotent, p-soluble, σ-soluble, σ-nilpotent).

pub mod quotient;
pub mod section;
pub mod sigma;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::prime_power_base;
use crate::config::Limits;
use crate::error::Result;
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::universe::{Sub, Universe};

pub use quotient::QuotientGroup;
pub use section::SimpleFactor;
pub use sigma::{PrimeSet, RestRule, SigmaClass, SigmaPartition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorKind {
    /// Elementary abelian of order `prime^rank`.
    Abelian { prime: u64, rank: u32 },
    /// Direct power of a nonabelian simple group of order `simple_order`.
    Nonabelian { simple_order: u64, count: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiefFactor {
    pub order: u64,
    #[serde(flatten)]
    pub kind: FactorKind,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// `1 = N_0 < N_1 < ... < N_k = G`.
    pub subgroups: Vec<PermutationGroup>,
    pub factors: Vec<ChiefFactor>,
    /// True if `G` has exactly one chief series.
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateReport {
    pub is_soluble: bool,
    pub is_nilpotent: bool,
    pub p_soluble: BTreeMap<u64, bool>,
    pub sigma_soluble: bool,
    pub sigma_nilpotent: bool,
    pub is_nonabelian_semisimple: bool,
}

fn universe(g: &PermutationGroup, limits: &Limits) -> Result<Universe> {
    Universe::new(g, limits)
}

fn to_groups(u: &Universe, subs: &[Sub]) -> Vec<PermutationGroup> {
    subs.iter().map(|s| u.to_group(s)).collect()
}

/// Classes ordered by size, then by representative (smallest element index).
pub fn conjugacy_classes(g: &PermutationGroup, limits: &Limits) -> Result<Vec<(Permutation, usize)>> {
    let u = universe(g, limits)?;
    let w = u.whole();
    Ok(u.classes(&w)
        .iter()
        .map(|c| (u.permutation(c.rep), c.size))
        .collect())
}

pub fn minimal_normal_subgroups(g: &PermutationGroup, limits: &Limits) -> Result<Vec<PermutationGroup>> {
    let u = universe(g, limits)?;
    let w = u.whole();
    Ok(to_groups(&u, &section::minimal_normal_above(&u, &w, &u.trivial())))
}

/// Normal subgroups of a whole universe, subject to the class cap.
pub fn normal_subgroups_in(u: &Universe, top: &Sub, limits: &Limits) -> Result<Vec<Sub>> {
    limits.check("class cap", limits.class_cap, u.classes(top).len())?;
    Ok(section::normal_subgroups(u, top))
}

pub fn normal_subgroups(g: &PermutationGroup, limits: &Limits) -> Result<Vec<PermutationGroup>> {
    let u = universe(g, limits)?;
    let w = u.whole();
    Ok(to_groups(&u, &normal_subgroups_in(&u, &w, limits)?))
}

pub fn quotient(g: &PermutationGroup, n: &PermutationGroup, limits: &Limits) -> Result<QuotientGroup> {
    let u = Arc::new(universe(g, limits)?);
    let w = u.whole();
    let k = u.sub_from_group(n)?;
    QuotientGroup::new(u, &w, &k, limits)
}

pub fn socle(g: &PermutationGroup, limits: &Limits) -> Result<PermutationGroup> {
    let u = universe(g, limits)?;
    let w = u.whole();
    Ok(u.to_group(&section::socle_above(&u, &w, &u.trivial())))
}

/// Classifies the chief factor `a/b` of `top`.
pub fn chief_factor(u: &Universe, a: &Sub, b: &Sub) -> ChiefFactor {
    let order = section::index(a, b);
    let kind = match prime_power_base(order) {
        Some(p) => FactorKind::Abelian {
            prime: p,
            rank: order.ilog(p),
        },
        None => {
            let t = section::index(&section::minimal_normal_above(u, a, b)[0], b);
            FactorKind::Nonabelian {
                simple_order: t,
                count: order.ilog(t),
            }
        }
    };
    ChiefFactor { order, kind }
}

pub fn chief_series(g: &PermutationGroup, limits: &Limits) -> Result<ChiefSeries> {
    let u = universe(g, limits)?;
    let w = u.whole();
    let data = section::chief_series_above(&u, &w, &u.trivial());
    let factors = data
        .terms
        .windows(2)
        .map(|t| chief_factor(&u, &t[1], &t[0]))
        .collect();
    Ok(ChiefSeries {
        subgroups: to_groups(&u, &data.terms),
        factors,
        unique: data.unique,
    })
}

pub fn predicates_in(
    u: &Universe,
    top: &Sub,
    bottom: &Sub,
    sigma: &SigmaPartition,
    primes: &[u64],
) -> PredicateReport {
    let nonab = section::nonabelian_factor_orders(u, top, bottom);
    PredicateReport {
        is_soluble: nonab.is_empty(),
        is_nilpotent: section::is_nilpotent(u, top, bottom),
        p_soluble: primes
            .iter()
            .map(|&p| (p, nonab.iter().all(|t| t % p != 0)))
            .collect(),
        sigma_soluble: nonab.iter().all(|&t| sigma.is_primary(t)),
        sigma_nilpotent: section::is_sigma_nilpotent(u, top, bottom, sigma),
        is_nonabelian_semisimple: section::is_nonabelian_semisimple(u, top, bottom),
    }
}

pub fn structural_predicates(
    g: &PermutationGroup,
    sigma: &SigmaPartition,
    primes: &[u64],
    limits: &Limits,
) -> Result<PredicateReport> {
    for &p in primes {
        if !crate::arith::is_prime(p) {
            return Err(crate::error::Error::NotPrime(p));
        }
    }
    let u = universe(g, limits)?;
    let w = u.whole();
    Ok(predicates_in(&u, &w, &u.trivial(), sigma, primes))
}
