//! Matrix representations of permutation groups and modules built from them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matrix::Matrix;
use super::meataxe::{self, Split};
use crate::arith::is_prime;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::universe::{Elem, Universe};

/// Images of the group generators as invertible matrices over `F_q`.
#[derive(Clone, Debug)]
pub struct MatrixRepresentation {
    group: PermutationGroup,
    field_modulus: u32,
    dimension: usize,
    images: Vec<Matrix>,
}

impl MatrixRepresentation {
    /// Checks shapes, invertibility and that the assignment extends to a
    /// homomorphism (every Cayley-graph edge is consistent).
    pub fn new(group: PermutationGroup, q: u32, dimension: usize, images: Vec<Matrix>, limits: &Limits) -> Result<Self> {
        let rep = Self::unchecked(group, q, dimension, images)?;
        rep.element_images(limits)?;
        Ok(rep)
    }

    pub(crate) fn unchecked(group: PermutationGroup, q: u32, dimension: usize, images: Vec<Matrix>) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::NotPrime(q as u64));
        }
        if images.len() != group.generators().len() {
            return Err(Error::InvalidInput(format!(
                "{} generator images for {} generators",
                images.len(),
                group.generators().len()
            )));
        }
        for m in &images {
            if m.modulus() != q || m.rows() != dimension || m.cols() != dimension || !m.is_invertible() {
                return Err(Error::InvalidInput("generator images must be invertible square matrices of one size".into()));
            }
        }
        Ok(MatrixRepresentation {
            group,
            field_modulus: q,
            dimension,
            images,
        })
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.group
    }

    pub fn field_modulus(&self) -> u32 {
        self.field_modulus
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    /// Image of every element, indexed as in the element universe.
    fn element_images(&self, limits: &Limits) -> Result<(Universe, Vec<Matrix>)> {
        let u = Universe::new(&self.group, limits)?;
        let id = Matrix::identity(self.field_modulus, self.dimension);
        let mut img: Vec<Option<Matrix>> = vec![None; u.order()];
        img[0] = Some(id);
        let mut queue: Vec<Elem> = vec![0];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let mx = img[x as usize].clone().expect("visited");
            for (&g, mg) in u.generators().iter().zip(&self.images) {
                let y = u.mul(x, g);
                let my = mx.mul(mg);
                match &img[y as usize] {
                    Some(existing) if *existing != my => {
                        return Err(Error::Verification(
                            "generator images do not define a homomorphism".into(),
                        ))
                    }
                    Some(_) => {}
                    None => {
                        img[y as usize] = Some(my);
                        queue.push(y);
                    }
                }
            }
        }
        Ok((u, img.into_iter().map(|m| m.expect("connected")).collect()))
    }

    /// Elements acting trivially.
    pub fn kernel(&self, limits: &Limits) -> Result<PermutationGroup> {
        let (u, img) = self.element_images(limits)?;
        let ker: Vec<Elem> = (0..u.order() as Elem).filter(|&x| img[x as usize].is_identity()).collect();
        Ok(u.to_group(&u.closure(&ker)))
    }

    pub fn is_faithful(&self, limits: &Limits) -> Result<bool> {
        Ok(self.kernel(limits)?.is_trivial())
    }
}

/// A right `F_q G`-module.
#[derive(Clone, Debug)]
pub struct GModule {
    representation: MatrixRepresentation,
}

impl GModule {
    pub fn new(representation: MatrixRepresentation) -> Self {
        GModule { representation }
    }

    pub fn representation(&self) -> &MatrixRepresentation {
        &self.representation
    }

    pub fn group(&self) -> &PermutationGroup {
        &self.representation.group
    }

    pub fn field(&self) -> u32 {
        self.representation.field_modulus
    }

    pub fn dimension(&self) -> usize {
        self.representation.dimension
    }

    pub fn images(&self) -> &[Matrix] {
        &self.representation.images
    }

    fn with_images(&self, dimension: usize, images: Vec<Matrix>) -> GModule {
        GModule {
            representation: MatrixRepresentation {
                group: self.group().clone(),
                field_modulus: self.field(),
                dimension,
                images,
            },
        }
    }

    /// Whether a subspace (given by spanning rows) is invariant.
    pub fn is_invariant(&self, rows: &[Vec<u32>]) -> bool {
        let mut e = super::matrix::Echelon::new(self.field(), self.dimension());
        for r in rows {
            e.insert(r);
        }
        e.rows().iter().all(|v| self.images().iter().all(|g| e.contains(&g.apply(v))))
    }

    /// Norton's irreducibility verdict.
    pub fn is_irreducible(&self, seed: u64, limits: &Limits) -> Result<bool> {
        limits.check("chop cap", limits.chop_cap, self.dimension())?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        meataxe::is_irreducible(self.images(), self.field(), self.dimension(), &mut rng, limits.retry_budget)
    }

    /// A proper nonzero submodule (as spanning rows), if one exists.
    pub fn proper_submodule(&self, seed: u64, limits: &Limits) -> Result<Option<Vec<Vec<u32>>>> {
        limits.check("chop cap", limits.chop_cap, self.dimension())?;
        if self.dimension() <= 1 {
            return Ok(None);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(
            match meataxe::split(self.images(), self.field(), self.dimension(), &mut rng, limits.retry_budget)? {
                Split::Proper(e) => Some(e.rows().to_vec()),
                Split::Irreducible(_) => None,
            },
        )
    }

    pub fn kernel(&self, limits: &Limits) -> Result<PermutationGroup> {
        self.representation.kernel(limits)
    }

    pub fn is_faithful(&self, limits: &Limits) -> Result<bool> {
        self.representation.is_faithful(limits)
    }

    /// Whether two modules for the same generators are isomorphic.
    pub fn is_isomorphic(&self, other: &GModule, seed: u64, limits: &Limits) -> Result<bool> {
        if self.dimension() != other.dimension() || self.field() != other.field() {
            return Ok(false);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = meataxe::chop(self.images(), self.field(), self.dimension(), &mut rng, limits.retry_budget)?;
        if a.len() != 1 || a[0].multiplicity != 1 {
            return Err(Error::InvalidInput("isomorphism is only decided for irreducible modules".into()));
        }
        match &a[0].certificate {
            Some(c) => Ok(meataxe::isomorphism(self.images(), c, other.images()).is_some()),
            None => Ok(self.images() == other.images()),
        }
    }

    /// Canonical ordering key: dimension, then the image entries.
    pub fn key(&self) -> (usize, Vec<&[u32]>) {
        (self.dimension(), self.images().iter().map(|m| m.entries()).collect())
    }
}

/// The regular module `F_q G`, with basis the group elements.
pub fn regular_module(g: &PermutationGroup, q: u32, limits: &Limits) -> Result<GModule> {
    if !is_prime(q as u64) {
        return Err(Error::NotPrime(q as u64));
    }
    limits.check("regular module cap", limits.regular_module_cap, g.order() as usize)?;
    let u = Universe::new(g, limits)?;
    let n = u.order();
    let images = u
        .generators()
        .iter()
        .map(|&s| {
            let mut m = Matrix::zero(q, n, n);
            for x in 0..n as Elem {
                m.set(x as usize, u.mul(x, s) as usize, 1);
            }
            m
        })
        .collect();
    Ok(GModule::new(MatrixRepresentation::unchecked(g.clone(), q, n, images)?))
}

/// Composition factors with multiplicities, sorted by dimension.
pub fn chop(m: &GModule, seed: u64, limits: &Limits) -> Result<Vec<(GModule, u32)>> {
    limits.check("chop cap", limits.chop_cap, m.dimension())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(meataxe::chop(m.images(), m.field(), m.dimension(), &mut rng, limits.retry_budget)?
        .into_iter()
        .map(|c| (m.with_images(c.dim, c.gens), c.multiplicity))
        .collect())
}

/// Smallest faithful irreducible constituent of the regular module.
pub fn faithful_irreducible(g: &PermutationGroup, q: u32, seed: u64, limits: &Limits) -> Result<GModule> {
    let reg = regular_module(g, q, limits)?;
    let mut parts: Vec<GModule> = chop(&reg, seed, limits)?.into_iter().map(|(c, _)| c).collect();
    parts.sort_by(|a, b| a.key().cmp(&b.key()));
    for c in parts {
        if c.is_faithful(limits)? {
            return Ok(c);
        }
    }
    Err(Error::ExistenceFailure {
        field: q,
        reason: format!("no faithful irreducible constituent for a group of order {}", g.order()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_dimensions() {
        let l = Limits::default();
        assert_eq!(regular_module(&PermutationGroup::symmetric(3), 5, &l).unwrap().dimension(), 6);
        assert_eq!(regular_module(&PermutationGroup::cyclic(2), 3, &l).unwrap().dimension(), 2);
        assert!(regular_module(&PermutationGroup::cyclic(2), 4, &l).is_err());
        assert!(regular_module(&PermutationGroup::symmetric(6), 5, &l).is_err());
    }

    #[test]
    fn chop_regular_s3() {
        let l = Limits::default();
        let reg = regular_module(&PermutationGroup::symmetric(3), 5, &l).unwrap();
        for seed in 0..5 {
            let mut dims: Vec<(usize, u32)> = chop(&reg, seed, &l)
                .unwrap()
                .iter()
                .map(|(c, m)| (c.dimension(), *m))
                .collect();
            dims.sort();
            assert_eq!(dims, vec![(1, 1), (1, 1), (2, 2)]);
        }
    }

    #[test]
    fn faithful_examples() {
        let l = Limits::default();
        let v = faithful_irreducible(&PermutationGroup::cyclic(2), 3, 0, &l).unwrap();
        assert_eq!(v.dimension(), 1);
        assert_eq!(v.images()[0].entries(), &[2]);
        assert_eq!(faithful_irreducible(&PermutationGroup::symmetric(3), 5, 0, &l).unwrap().dimension(), 2);
        assert!(matches!(
            faithful_irreducible(&PermutationGroup::cyclic(2), 2, 0, &l),
            Err(Error::ExistenceFailure { field: 2, .. })
        ));
    }

    #[test]
    fn homomorphism_check() {
        let l = Limits::default();
        let c3 = PermutationGroup::cyclic(3);
        let bad = Matrix::from_rows(5, &[vec![2]]).unwrap();
        assert!(MatrixRepresentation::new(c3.clone(), 5, 1, vec![bad], &l).is_err());
        let ok = Matrix::from_rows(7, &[vec![2]]).unwrap();
        let rep = MatrixRepresentation::new(c3, 7, 1, vec![ok], &l).unwrap();
        assert!(rep.is_faithful(&l).unwrap());
    }
}
