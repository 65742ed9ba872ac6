//! Permutation groups given by generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bsgs::Bsgs;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::universe::Universe;

/// A finite permutation group. Immutable apart from the memoized BSGS,
/// which is built at most once and is safe to share between threads.
#[derive(Clone)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: OnceLock<Arc<Bsgs>>,
}

/// Subgroups are permutation groups of the same degree; containment is
/// checked by membership, not stored.
pub type Subgroup = PermutationGroup;

impl PermutationGroup {
    /// Builds a group from generators. Identity generators are dropped, so the
    /// trivial group has an empty generator list.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermutationGroup {
            degree,
            generators,
            bsgs: OnceLock::new(),
        })
    }

    /// Parses generators in 1-based cycle notation.
    pub fn from_cycle_strings(degree: usize, gens: &[&str]) -> Result<Self> {
        let perms = gens
            .iter()
            .map(|g| Permutation::parse(g, degree))
            .collect::<Result<Vec<_>>>()?;
        PermutationGroup::new(degree, perms)
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            bsgs: OnceLock::new(),
        }
    }

    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return PermutationGroup::trivial(n.max(1));
        }
        let cycle: Vec<u32> = (0..n as u32).collect();
        let gens = vec![
            Permutation::from_cycles(n, &[cycle]).unwrap(),
            Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        ];
        PermutationGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        if n < 3 {
            return PermutationGroup::trivial(n.max(1));
        }
        let gens = (2..n as u32)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermutationGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        if n < 2 {
            return PermutationGroup::trivial(1);
        }
        let cycle: Vec<u32> = (0..n as u32).collect();
        PermutationGroup::new(n, vec![Permutation::from_cycles(n, &[cycle]).unwrap()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn bsgs(&self) -> &Arc<Bsgs> {
        self.bsgs
            .get_or_init(|| Arc::new(Bsgs::new(self.degree, &self.generators)))
    }

    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn membership(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x.degree())?;
        Ok(self.bsgs().contains(x))
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.degree && self.bsgs().contains(x)
    }

    /// `other` ≤ `self`.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    /// Mutual generator membership plus equal order.
    pub fn same_group(&self, other: &PermutationGroup) -> bool {
        self.order() == other.order() && self.contains_group(other) && other.contains_group(self)
    }

    pub(crate) fn check_degree(&self, got: usize) -> Result<()> {
        if got != self.degree {
            Err(Error::DegreeMismatch {
                expected: self.degree,
                got,
            })
        } else {
            Ok(())
        }
    }

    /// All elements, each once, sorted by image vector.
    pub fn enumerate_elements(&self, limits: &Limits) -> Result<Vec<Permutation>> {
        let order = self.order();
        limits.check("element cap", limits.element_cap, clamp(order))?;
        let u = Universe::new(self, limits)?;
        let mut out: Vec<Permutation> = (0..u.order() as u32).map(|i| u.permutation(i)).collect();
        out.sort();
        Ok(out)
    }

    /// ⟨generators of `self` ∪ generators of `other`⟩.
    pub fn join(&self, other: &PermutationGroup) -> Result<PermutationGroup> {
        self.check_degree(other.degree)?;
        let mut gens = self.generators.clone();
        let bsgs = self.bsgs();
        let mut grown: Option<Bsgs> = None;
        for g in &other.generators {
            let inside = match &grown {
                Some(b) => b.contains(g),
                None => bsgs.contains(g),
            };
            if !inside {
                let b = grown.get_or_insert_with(|| (**bsgs).clone());
                b.insert(g);
                gens.push(g.clone());
            }
        }
        let out = PermutationGroup {
            degree: self.degree,
            generators: gens,
            bsgs: OnceLock::new(),
        };
        let _ = out.bsgs.set(match grown {
            Some(b) => Arc::new(b),
            None => Arc::clone(bsgs),
        });
        Ok(out)
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<Subgroup> {
        for x in elements {
            if !self.membership(x)? {
                return Err(Error::NotMember);
            }
        }
        let mut gens: Vec<Permutation> = Vec::new();
        let mut bsgs = Bsgs::new(self.degree, &[]);
        let mut queue: Vec<Permutation> = elements.to_vec();
        while let Some(x) = queue.pop() {
            if bsgs.contains(&x) {
                continue;
            }
            bsgs.insert(&x);
            for s in &self.generators {
                queue.push(x.conjugate_by(s));
            }
            gens.push(x);
        }
        let out = PermutationGroup::new(self.degree, gens)?;
        let _ = out.bsgs.set(Arc::new(bsgs));
        Ok(out)
    }

    /// Elementwise centralizer of `h` in `self` (brute force under the element cap).
    pub fn centralizer(&self, h: &PermutationGroup, limits: &Limits) -> Result<Subgroup> {
        self.check_degree(h.degree)?;
        let u = Universe::new(self, limits)?;
        let hs = h
            .generators
            .iter()
            .map(|g| u.index_of(g).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        let whole = u.whole();
        let c = u.centralizer_of(&whole, &hs);
        Ok(u.to_group(&c))
    }

    /// Right coset representatives of `self` in `overgroup`, canonical per coset.
    pub fn right_coset_representatives(
        &self,
        overgroup: &PermutationGroup,
        limit: usize,
    ) -> Result<Vec<Permutation>> {
        if !overgroup.contains_group(self) {
            return Err(Error::NotSubgroup);
        }
        let index = overgroup.order() / self.order();
        if index > limit as u128 {
            return Err(Error::CapExceeded {
                cap: "degree cap",
                limit,
                value: clamp(index),
            });
        }
        let id = self.identity();
        let mut reps = vec![id.clone()];
        let mut seen: HashMap<Permutation, usize> = HashMap::new();
        seen.insert(self.canonical_coset_element(&id), 0);
        let mut k = 0;
        while k < reps.len() {
            for s in &overgroup.generators {
                let y = reps[k].mul(s);
                let key = self.canonical_coset_element(&y);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(reps.len());
                    reps.push(y);
                }
            }
            k += 1;
        }
        Ok(reps)
    }

    /// A canonical element of the right coset `self * g`.
    pub fn canonical_coset_element(&self, g: &Permutation) -> Permutation {
        let bsgs = self.bsgs();
        let mut x = g.clone();
        for level in &bsgs.levels {
            let mut best = 0usize;
            let mut best_img = x.apply(level.orbit[0]);
            for (k, &pt) in level.orbit.iter().enumerate().skip(1) {
                let img = x.apply(pt);
                if img < best_img {
                    best_img = img;
                    best = k;
                }
            }
            if best != 0 {
                x = level.transversal[best].mul(&x);
            }
        }
        x
    }

    /// True iff `self` is a maximal subgroup of `overgroup`, certified by
    /// checking that every coset representative outside `self` generates
    /// `overgroup` together with `self`.
    pub fn is_maximal_in(&self, overgroup: &PermutationGroup, limits: &Limits) -> Result<bool> {
        if !overgroup.contains_group(self) {
            return Err(Error::NotSubgroup);
        }
        if self.order() == overgroup.order() {
            return Err(Error::InvalidInput(
                "maximality is only defined for proper subgroups".into(),
            ));
        }
        let target = overgroup.order();
        let reps = self.right_coset_representatives(overgroup, limits.degree_cap)?;
        for r in reps.iter().skip(1) {
            let cyc = PermutationGroup::new(self.degree, vec![r.clone()])?;
            if self.join(&cyc)?.order() != target {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_normal_in(&self, overgroup: &PermutationGroup) -> bool {
        overgroup.contains_group(self)
            && self.generators.iter().all(|n| {
                overgroup
                    .generators
                    .iter()
                    .all(|s| self.contains(&n.conjugate_by(s)))
            })
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

pub(crate) fn clamp(x: u128) -> usize {
    x.min(usize::MAX as u128) as usize
}

impl fmt::Debug for PermutationGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree {}, gens [", self.degree)?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

/// Builds a group of the given degree from generators, the spelled-out
/// constructor used by file loaders.
pub fn group_from_generators(degree: usize, gens: Vec<Permutation>) -> Result<PermutationGroup> {
    PermutationGroup::new(degree, gens)
}
