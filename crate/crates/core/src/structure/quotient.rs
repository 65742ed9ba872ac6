//! Quotients `G/N` realized as the action of `G` on the cosets of `N`.

use std::sync::Arc;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::perm::Permutation;
use crate::universe::{Elem, Sub, Universe};

pub struct QuotientGroup {
    universe: Arc<Universe>,
    kernel: Sub,
    /// Coset label of every element of the universe (`u32::MAX` outside `G`).
    label: Vec<u32>,
    /// Smallest element of each coset; coset 0 is `N`.
    reps: Vec<Elem>,
    carrier: PermutationGroup,
}

impl QuotientGroup {
    /// `top/kernel` inside `universe`; `kernel` must be normal in `top`.
    pub fn new(universe: Arc<Universe>, top: &Sub, kernel: &Sub, limits: &Limits) -> Result<Self> {
        let u = &*universe;
        if !kernel.is_subgroup_of(top) {
            return Err(Error::NotSubgroup);
        }
        if !u.is_normalized_by(kernel, top) {
            return Err(Error::NotNormal);
        }
        let index = top.order / kernel.order;
        limits.check("degree cap", limits.degree_cap, index)?;
        let mut label = vec![u32::MAX; u.order()];
        let mut reps = Vec::with_capacity(index);
        let kernel_elems: Vec<Elem> = kernel.elements().collect();
        for x in top.elements() {
            if label[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &n in &kernel_elems {
                label[u.mul(n, x) as usize] = id;
            }
        }
        let action = |g: Elem| -> Permutation {
            let images = reps.iter().map(|&r| label[u.mul(r, g) as usize]).collect();
            Permutation::from_images(images).expect("coset action is a permutation")
        };
        let gens = top.gens.iter().map(|&g| action(g)).collect();
        let carrier = PermutationGroup::new(index, gens)?;
        Ok(QuotientGroup {
            kernel: kernel.clone(),
            label,
            reps,
            carrier,
            universe,
        })
    }

    pub fn carrier(&self) -> &PermutationGroup {
        &self.carrier
    }

    pub fn kernel(&self) -> &Sub {
        &self.kernel
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Image of an element index under the projection.
    pub fn project_elem(&self, g: Elem) -> Permutation {
        let u = &*self.universe;
        let images = self
            .reps
            .iter()
            .map(|&r| self.label[u.mul(r, g) as usize])
            .collect();
        Permutation::from_images(images).expect("coset action is a permutation")
    }

    pub fn project(&self, g: &Permutation) -> Result<Permutation> {
        let x = self.universe.index_of(g).ok_or(Error::NotMember)?;
        if self.label[x as usize] == u32::MAX {
            return Err(Error::NotMember);
        }
        Ok(self.project_elem(x))
    }

    /// An element of `G` mapping to a carrier permutation.
    pub fn lift(&self, q: &Permutation) -> Elem {
        // The action on cosets is regular, so the image of coset 0 determines q.
        self.reps[q.apply(0) as usize]
    }

    /// Full preimage of a subgroup of the carrier.
    pub fn pull_back(&self, h: &PermutationGroup) -> Result<Sub> {
        if !self.carrier.contains_group(h) {
            return Err(Error::NotSubgroup);
        }
        let lifts: Vec<Elem> = h.generators().iter().map(|q| self.lift(q)).collect();
        Ok(self.universe.extend(&self.kernel, &lifts))
    }

    /// Image of a subgroup of `G` in the carrier.
    pub fn image(&self, s: &Sub) -> PermutationGroup {
        let gens = s.gens.iter().map(|&g| self.project_elem(g)).collect();
        PermutationGroup::new(self.carrier.degree(), gens).expect("images share the carrier degree")
    }
}
