//! The semidirect product `V ⋊ G` acting on the vectors of `V`.

use super::module::GModule;
use crate::config::Limits;
use crate::error::Result;
use crate::group::{PermutationGroup, Subgroup};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct AffineProduct {
    pub group: PermutationGroup,
    /// Translations.
    pub v_image: Subgroup,
    /// Linear maps `v ↦ v·g`.
    pub complement_image: Subgroup,
}

/// Index of a vector: `Σ v_i q^i`.
pub fn vector_index(v: &[u32], q: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &x| acc * q + x)
}

pub fn index_vector(mut k: u32, q: u32, dim: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(dim);
    for _ in 0..dim {
        v.push(k % q);
        k /= q;
    }
    v
}

/// Permutation group on the `q^d` vectors generated by the translations
/// along the standard basis and the generator images.
pub fn affine_semidirect(v: &GModule, limits: &Limits) -> Result<AffineProduct> {
    let q = v.field();
    let d = v.dimension();
    let n = (q as usize).checked_pow(d as u32).unwrap_or(usize::MAX);
    limits.check("degree cap", limits.degree_cap, n)?;
    let vectors: Vec<Vec<u32>> = (0..n as u32).map(|k| index_vector(k, q, d)).collect();
    let translations = (0..d)
        .map(|i| {
            let imgs = vectors
                .iter()
                .map(|x| {
                    let mut y = x.clone();
                    y[i] = (y[i] + 1) % q;
                    vector_index(&y, q)
                })
                .collect();
            Permutation::from_images(imgs)
        })
        .collect::<Result<Vec<_>>>()?;
    let linear = v
        .images()
        .iter()
        .map(|m| Permutation::from_images(vectors.iter().map(|x| vector_index(&m.apply(x), q)).collect()))
        .collect::<Result<Vec<_>>>()?;
    let v_image = PermutationGroup::new(n, translations.clone())?;
    let complement_image = PermutationGroup::new(n, linear.clone())?;
    let group = PermutationGroup::new(n, translations.into_iter().chain(linear).collect())?;
    Ok(AffineProduct {
        group,
        v_image,
        complement_image,
    })
}
