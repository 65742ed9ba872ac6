//! Structure of sections `K/L` (with `L` normal in `K`) of an enumerated
//! group. Every subgroup of `K/L` is represented by its full preimage in
//! `K`, so no quotient group is ever built.

use crate::arith::{factorize, is_prime, prime_power_base};
use crate::universe::{Elem, Sub, Universe};

use super::sigma::{PrimeSet, SigmaPartition};

/// A composition factor, identified by its order and commutativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleFactor {
    pub order: u64,
    pub abelian: bool,
}

/// Index `|a : b|` for `b ≤ a`.
#[inline]
pub fn index(a: &Sub, b: &Sub) -> u64 {
    (a.order / b.order) as u64
}

/// `[a, b] bottom`, for `a`, `b` and `bottom` normal in `top`.
pub fn commutator_above(u: &Universe, top: &Sub, a: &Sub, b: &Sub, bottom: &Sub) -> Sub {
    let mut comms = Vec::new();
    for &x in &a.gens {
        for &y in &b.gens {
            let c = u.comm(x, y);
            if !bottom.contains(c) {
                comms.push(c);
            }
        }
    }
    u.normal_closure_from(top, bottom, &comms)
}

/// Derived series of `top` modulo `bottom`, ending at the perfect term.
pub fn derived_series(u: &Universe, top: &Sub, bottom: &Sub) -> Vec<Sub> {
    let mut out = vec![top.clone()];
    loop {
        let cur = out.last().unwrap();
        let next = commutator_above(u, cur, cur, cur, bottom);
        if next == *cur {
            return out;
        }
        out.push(next);
    }
}

/// Lower central series of `top` modulo `bottom`, ending where it stabilizes.
pub fn lower_central_series(u: &Universe, top: &Sub, bottom: &Sub) -> Vec<Sub> {
    let mut out = vec![top.clone()];
    loop {
        let cur = out.last().unwrap();
        let next = commutator_above(u, top, cur, top, bottom);
        if next == *cur {
            return out;
        }
        out.push(next);
    }
}

pub fn is_soluble(u: &Universe, top: &Sub, bottom: &Sub) -> bool {
    derived_series(u, top, bottom).last().unwrap() == bottom
}

pub fn is_pi_group(top: &Sub, bottom: &Sub, pi: &PrimeSet) -> bool {
    pi.divides_only(index(top, bottom))
}

/// Subgroup generated modulo `bottom` by the `pi`-elements of `top`, or
/// `None` as soon as it is seen not to be a `pi`-group.
fn pi_elements_subgroup(u: &Universe, top: &Sub, bottom: &Sub, pi: &PrimeSet) -> Option<Sub> {
    let mut cur = bottom.clone();
    for x in top.elements() {
        if cur.contains(x) {
            continue;
        }
        if pi.divides_only(u.order_mod(x, Some(bottom))) {
            cur = u.extend(&cur, &[x]);
            if !is_pi_group(&cur, bottom, pi) {
                return None;
            }
        }
    }
    Some(cur)
}

/// `top/bottom` is σ-nilpotent iff, for every class σ_i, its σ_i-elements
/// generate a σ_i-group.
pub fn is_sigma_nilpotent(u: &Universe, top: &Sub, bottom: &Sub, sigma: &SigmaPartition) -> bool {
    let n = index(top, bottom);
    let classes = sigma.classes_dividing(n);
    if classes.len() <= 1 {
        return true;
    }
    classes.into_iter().all(|c| {
        let pi = sigma.primes_of(c);
        match pi_elements_subgroup(u, top, bottom, &pi) {
            Some(h) => index(&h, bottom) == pi.part_of(n),
            None => false,
        }
    })
}

pub fn is_nilpotent(u: &Universe, top: &Sub, bottom: &Sub) -> bool {
    is_sigma_nilpotent(u, top, bottom, &SigmaPartition::singletons())
}

/// Minimal normal subgroups of `top/bottom`, as preimages, in canonical order.
pub fn minimal_normal_above(u: &Universe, top: &Sub, bottom: &Sub) -> Vec<Sub> {
    if top == bottom {
        return Vec::new();
    }
    let classes = u.classes(top);
    let mut cands: Vec<Sub> = Vec::new();
    for c in classes.iter() {
        if bottom.contains(c.rep) || !is_prime(u.order_mod(c.rep, Some(bottom))) {
            continue;
        }
        let found = u.normal_closure_until(top, bottom, &[c.rep], |cur| {
            cands
                .iter()
                .any(|k| k.order < cur.order && k.is_subgroup_of(cur))
        });
        if let Some(n) = found {
            if cands.contains(&n) {
                continue;
            }
            cands.retain(|k| !(n.order < k.order && n.is_subgroup_of(k)));
            cands.push(n);
        }
    }
    cands.sort_by(|a, b| a.canonical_cmp(b));
    cands
}

pub fn socle_above(u: &Universe, top: &Sub, bottom: &Sub) -> Sub {
    minimal_normal_above(u, top, bottom)
        .iter()
        .fold(bottom.clone(), |acc, n| u.join(&acc, n))
}

pub struct ChiefData {
    /// `bottom = terms[0] < terms[1] < ... = top`.
    pub terms: Vec<Sub>,
    /// True if each step had exactly one minimal normal candidate, which
    /// makes the chief series (and the normal subgroup lattice) a chain.
    pub unique: bool,
}

pub fn chief_series_above(u: &Universe, top: &Sub, bottom: &Sub) -> ChiefData {
    let mut terms = vec![bottom.clone()];
    let mut unique = true;
    while terms.last().unwrap() != top {
        let mins = minimal_normal_above(u, top, terms.last().unwrap());
        unique &= mins.len() == 1;
        terms.push(mins.into_iter().next().expect("proper section has a minimal normal subgroup"));
    }
    ChiefData { terms, unique }
}

/// Composition factors of `top/bottom`, sorted.
pub fn composition_factors(u: &Universe, top: &Sub, bottom: &Sub) -> Vec<SimpleFactor> {
    let mut out = Vec::new();
    let derived = derived_series(u, top, bottom);
    for w in derived.windows(2) {
        push_abelian(&mut out, index(&w[0], &w[1]));
    }
    let perfect = derived.last().unwrap();
    if perfect != bottom {
        let chief = chief_series_above(u, perfect, bottom);
        for w in chief.terms.windows(2) {
            let (b, a) = (&w[0], &w[1]);
            let n = index(a, b);
            if prime_power_base(n).is_some() {
                push_abelian(&mut out, n);
            } else {
                let t = &minimal_normal_above(u, a, b)[0];
                let order = index(t, b);
                let mut rest = n;
                while rest > 1 {
                    rest /= order;
                    out.push(SimpleFactor {
                        order,
                        abelian: false,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

fn push_abelian(out: &mut Vec<SimpleFactor>, n: u64) {
    for (p, e) in factorize(n) {
        for _ in 0..e {
            out.push(SimpleFactor {
                order: p,
                abelian: true,
            });
        }
    }
}

/// Orders of the nonabelian simple composition factors of `top/bottom`.
pub fn nonabelian_factor_orders(u: &Universe, top: &Sub, bottom: &Sub) -> Vec<u64> {
    if is_soluble(u, top, bottom) {
        return Vec::new();
    }
    composition_factors(u, top, bottom)
        .into_iter()
        .filter(|f| !f.abelian)
        .map(|f| f.order)
        .collect()
}

/// Every chief factor is a p-group or a p'-group.
pub fn is_p_soluble(u: &Universe, top: &Sub, bottom: &Sub, p: u64) -> bool {
    nonabelian_factor_orders(u, top, bottom)
        .iter()
        .all(|&t| t % p != 0)
}

/// Every chief factor is a σ_i-group for some i.
pub fn is_sigma_soluble(u: &Universe, top: &Sub, bottom: &Sub, sigma: &SigmaPartition) -> bool {
    nonabelian_factor_orders(u, top, bottom)
        .iter()
        .all(|&t| sigma.is_primary(t))
}

/// Nontrivial and a direct product of nonabelian simple groups.
pub fn is_nonabelian_semisimple(u: &Universe, top: &Sub, bottom: &Sub) -> bool {
    if top == bottom {
        return false;
    }
    let mins = minimal_normal_above(u, top, bottom);
    if mins
        .iter()
        .any(|m| prime_power_base(index(m, bottom)).is_some())
    {
        return false;
    }
    mins.iter().fold(bottom.clone(), |acc, n| u.join(&acc, n)) == *top
}

/// All normal subgroups of `top`, as joins of class closures, in canonical order.
pub fn normal_subgroups(u: &Universe, top: &Sub) -> Vec<Sub> {
    let classes = u.classes(top);
    let mut closures: Vec<Sub> = Vec::new();
    for c in classes.iter().filter(|c| c.rep != 0) {
        let n = u.class_closure(top, c.rep);
        if !closures.contains(&n) {
            closures.push(n);
        }
    }
    let mut all = vec![u.trivial()];
    all.extend(closures.iter().cloned());
    let mut k = 1;
    while k < all.len() {
        for c in &closures {
            if c.is_subgroup_of(&all[k]) {
                continue;
            }
            let j = u.join(&all[k], c);
            if !all.contains(&j) {
                all.push(j);
            }
        }
        k += 1;
    }
    all.sort_by(|a, b| a.canonical_cmp(b));
    all
}

/// Elements of `top` acting trivially on `with/bottom` by conjugation, joined with `bottom`.
pub fn centralizer_above(u: &Universe, top: &Sub, with: &Sub, bottom: &Sub) -> Sub {
    u.centralizer_mod(top, &with.gens, Some(bottom))
}

/// Deduplicated list of element indices.
pub fn distinct(elems: impl IntoIterator<Item = Elem>) -> Vec<Elem> {
    let mut v: Vec<Elem> = elems.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}
