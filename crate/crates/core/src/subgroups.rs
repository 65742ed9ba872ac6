//! Subgroup lattices and maximal subgroups.

use std::collections::HashMap;

use crate::config::Limits;
use crate::error::Result;
use crate::group::PermutationGroup;
use crate::universe::{ElemSet, Sub, Universe};

/// Every subgroup of `u`, as the closure of the cyclic subgroups under
/// joins, sorted by order and then by element set.
pub fn all_subgroups_in(u: &Universe, limits: &Limits) -> Result<Vec<Sub>> {
    limits.check("subgroup cap", limits.subgroup_cap, u.order())?;
    let mut seen: HashMap<ElemSet, ()> = HashMap::new();
    let mut cyclic: Vec<Sub> = Vec::new();
    for x in 1..u.order() as u32 {
        let c = u.closure(&[x]);
        if seen.insert((*c.set).clone(), ()).is_none() {
            cyclic.push(c);
        }
    }
    let trivial = u.trivial();
    seen.insert((*trivial.set).clone(), ());
    let mut all = vec![trivial];
    all.extend(cyclic.iter().cloned());
    let mut k = 1;
    while k < all.len() {
        let base = all[k].clone();
        for c in &cyclic {
            if c.is_subgroup_of(&base) {
                continue;
            }
            let j = u.extend(&base, &c.gens);
            if !seen.contains_key(&*j.set) {
                seen.insert((*j.set).clone(), ());
                all.push(j);
            }
        }
        k += 1;
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    Ok(all)
}

/// Maximal elements of the proper part of a sorted subgroup list.
pub fn maximal_among(all: &[Sub], top: &Sub) -> Vec<Sub> {
    let proper: Vec<&Sub> = all.iter().filter(|s| s.order < top.order).collect();
    proper
        .iter()
        .filter(|h| {
            !proper
                .iter()
                .any(|k| k.order > h.order && top.order.is_multiple_of(k.order) && h.is_subgroup_of(k))
        })
        .map(|h| (*h).clone())
        .collect()
}

pub fn maximal_subgroups_in(u: &Universe, limits: &Limits) -> Result<Vec<Sub>> {
    let all = all_subgroups_in(u, limits)?;
    Ok(maximal_among(&all, &u.whole()))
}

pub fn all_subgroups(g: &PermutationGroup, limits: &Limits) -> Result<Vec<PermutationGroup>> {
    let u = Universe::new(g, limits)?;
    Ok(all_subgroups_in(&u, limits)?
        .iter()
        .map(|s| u.to_group(s))
        .collect())
}

pub fn maximal_subgroups(g: &PermutationGroup, limits: &Limits) -> Result<Vec<PermutationGroup>> {
    let u = Universe::new(g, limits)?;
    Ok(maximal_subgroups_in(&u, limits)?
        .iter()
        .map(|s| u.to_group(s))
        .collect())
}

/// Certifies maximality of `m` in `g` through its right cosets.
pub fn is_maximal(g: &PermutationGroup, m: &PermutationGroup, limits: &Limits) -> Result<bool> {
    m.is_maximal_in(g, limits)
}
