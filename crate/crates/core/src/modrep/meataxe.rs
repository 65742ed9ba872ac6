//! Submodule search by random algebra elements, Norton's irreducibility
//! test, composition factors and isomorphism of irreducible modules.
//!
//! Modules are given by the images of the group generators, acting on row
//! vectors from the right.

use rand::Rng;

use super::matrix::{Echelon, Matrix};
use super::poly::{char_poly, factor, Poly};
use crate::error::{Error, Result};

/// A random algebra element `Σ c_i g_i + c·w` with `w` a word in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub coeffs: Vec<u32>,
    pub word: Vec<usize>,
    pub word_coeff: u32,
}

impl Recipe {
    pub fn evaluate(&self, gens: &[Matrix]) -> Matrix {
        let q = gens[0].modulus();
        let d = gens[0].rows();
        let mut w = Matrix::identity(q, d);
        for &i in &self.word {
            w = w.mul(&gens[i]);
        }
        let mut theta = w.scale(self.word_coeff);
        for (g, &c) in gens.iter().zip(&self.coeffs) {
            theta = theta.add(&g.scale(c));
        }
        theta
    }
}

/// Evidence that a module is irreducible: `f` is an irreducible factor of
/// the characteristic polynomial of `θ` whose nullspace has dimension
/// `deg f`, and `vector` spans that nullspace over `F_q[θ]`.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub recipe: Recipe,
    pub factor: Poly,
    pub vector: Vec<u32>,
}

#[derive(Clone, Debug)]
pub enum Split {
    /// A proper nonzero invariant subspace.
    Proper(Echelon),
    Irreducible(Certificate),
}

fn algebra_gens(gens: &[Matrix], q: u32, dim: usize) -> Vec<Matrix> {
    if gens.is_empty() {
        vec![Matrix::identity(q, dim)]
    } else {
        gens.to_vec()
    }
}

/// Smallest invariant subspace containing `seeds`.
pub fn spin(gens: &[Matrix], q: u32, dim: usize, seeds: &[Vec<u32>]) -> Echelon {
    let mut ech = Echelon::new(q, dim);
    for s in seeds {
        ech.insert(s);
    }
    let mut i = 0;
    while i < ech.len() && ech.len() < dim {
        let v = ech.rows()[i].clone();
        for g in gens {
            ech.insert(&g.apply(&v));
            if ech.len() == dim {
                break;
            }
        }
        i += 1;
    }
    ech
}

/// Spin of `v` keeping the unreduced images and how each was produced.
fn standard_spin(gens: &[Matrix], v: &[u32]) -> (Vec<Vec<u32>>, Vec<(usize, usize)>) {
    let q = gens[0].modulus();
    let dim = v.len();
    let mut ech = Echelon::new(q, dim);
    let mut basis = Vec::new();
    let mut recipe = Vec::new();
    if ech.insert(v) {
        basis.push(v.to_vec());
    }
    let mut i = 0;
    while i < basis.len() && basis.len() < dim {
        for (j, g) in gens.iter().enumerate() {
            let w = g.apply(&basis[i]);
            if ech.insert(&w) {
                basis.push(w);
                recipe.push((i, j));
                if basis.len() == dim {
                    break;
                }
            }
        }
        i += 1;
    }
    (basis, recipe)
}

fn replay(gens: &[Matrix], w: &[u32], recipe: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let mut basis = vec![w.to_vec()];
    for &(i, j) in recipe {
        let next = gens[j].apply(&basis[i]);
        basis.push(next);
    }
    basis
}

/// Coordinates of `v ∈ span` in the basis `ech.rows()`.
fn coords(ech: &Echelon, v: &[u32]) -> Vec<u32> {
    let q = ech.modulus() as u64;
    let mut w = v.to_vec();
    let mut c = Vec::with_capacity(ech.len());
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        let f = w[p] as u64;
        c.push(f as u32);
        if f == 0 {
            continue;
        }
        for (x, &r) in w.iter_mut().zip(row) {
            *x = ((*x as u64 + (q - f) * r as u64) % q) as u32;
        }
    }
    debug_assert!(w.iter().all(|&x| x == 0));
    c
}

/// Action on an invariant subspace, in the basis `sub.rows()`.
pub fn sub_action(gens: &[Matrix], sub: &Echelon) -> Vec<Matrix> {
    let q = gens.first().map_or(2, |g| g.modulus());
    gens.iter()
        .map(|g| {
            let rows: Vec<Vec<u32>> = sub.rows().iter().map(|b| coords(sub, &g.apply(b))).collect();
            Matrix::from_rows(q, &rows).unwrap_or_else(|_| Matrix::zero(q, 0, 0))
        })
        .collect()
}

/// Action on the quotient by an invariant subspace, in the images of the
/// standard basis vectors outside the pivot columns.
pub fn quotient_action(gens: &[Matrix], sub: &Echelon) -> Vec<Matrix> {
    let dim = sub.ambient();
    let free: Vec<usize> = (0..dim).filter(|c| !sub.pivots().contains(c)).collect();
    gens.iter()
        .map(|g| {
            let q = g.modulus();
            let rows: Vec<Vec<u32>> = free
                .iter()
                .map(|&c| {
                    let r = sub.reduce(g.row(c));
                    free.iter().map(|&k| r[k]).collect()
                })
                .collect();
            Matrix::from_rows(q, &rows).unwrap_or_else(|_| Matrix::zero(q, 0, 0))
        })
        .collect()
}

/// Finds a proper submodule or certifies irreducibility.
pub fn split<R: Rng>(gens: &[Matrix], q: u32, dim: usize, rng: &mut R, budget: usize) -> Result<Split> {
    let alg = algebra_gens(gens, q, dim);
    let k = alg.len();
    let mut word: Vec<usize> = Vec::new();
    for _ in 0..budget {
        word.push(rng.gen_range(0..k));
        let recipe = Recipe {
            coeffs: (0..k).map(|_| rng.gen_range(0..q)).collect(),
            word: word.clone(),
            word_coeff: rng.gen_range(1..q.max(2)),
        };
        let theta = recipe.evaluate(&alg);
        let cp = char_poly(&theta);
        let mut seen: Vec<Poly> = Vec::new();
        for (f, _) in factor(&cp, rng) {
            if seen.contains(&f) {
                continue;
            }
            seen.push(f.clone());
            let null = f.eval_matrix(&theta).left_nullspace();
            let v = null.row(0).to_vec();
            let s = spin(&alg, q, dim, std::slice::from_ref(&v));
            if s.len() < dim {
                return Ok(Split::Proper(s));
            }
            if null.rows() != f.degree() {
                continue;
            }
            let transposed: Vec<Matrix> = alg.iter().map(Matrix::transpose).collect();
            let w = f.eval_matrix(&theta).right_nullspace().row(0).to_vec();
            let dual = spin(&transposed, q, dim, &[w]);
            if dual.len() < dim {
                let ann = dual.to_matrix().right_nullspace();
                let mut e = Echelon::new(q, dim);
                for r in ann.row_vectors() {
                    e.insert(&r);
                }
                return Ok(Split::Proper(e));
            }
            return Ok(Split::Irreducible(Certificate {
                recipe,
                factor: f,
                vector: v,
            }));
        }
    }
    Err(Error::RetryBudget { dimension: dim, budget })
}

/// Norton's verdict.
pub fn is_irreducible<R: Rng>(gens: &[Matrix], q: u32, dim: usize, rng: &mut R, budget: usize) -> Result<bool> {
    if dim == 0 {
        return Ok(false);
    }
    Ok(matches!(split(gens, q, dim, rng, budget)?, Split::Irreducible(_)))
}

/// An intertwiner `X` with `g_A X = X g_B` for every generator, if the
/// irreducible module `a` (with certificate) is isomorphic to `b`.
pub fn isomorphism(a: &[Matrix], cert: &Certificate, b: &[Matrix]) -> Option<Matrix> {
    let (q, dim) = (a.first()?.modulus(), a[0].rows());
    if b.len() != a.len() || b[0].rows() != dim {
        return None;
    }
    let theta_b = cert.recipe.evaluate(b);
    if char_poly(&theta_b) != char_poly(&cert.recipe.evaluate(a)) {
        return None;
    }
    let null = cert.factor.eval_matrix(&theta_b).left_nullspace();
    if null.rows() != cert.factor.degree() {
        return None;
    }
    let (basis_a, recipe) = standard_spin(a, &cert.vector);
    let s_a_inv = Matrix::from_rows(q, &basis_a).ok()?.inverse()?;
    // X_w = S_A⁻¹ S_B(w) is linear in w; solve g_A X_w = X_w g_B on the nullspace
    let xs: Vec<Matrix> = null
        .row_vectors()
        .iter()
        .map(|w| Matrix::from_rows(q, &replay(b, w, &recipe)).map(|s_b| s_a_inv.mul(&s_b)))
        .collect::<Result<_>>()
        .ok()?;
    let residuals: Vec<Vec<u32>> = xs
        .iter()
        .map(|x| {
            a.iter()
                .zip(b)
                .flat_map(|(ga, gb)| {
                    let lhs = ga.mul(x);
                    let rhs = x.mul(gb);
                    lhs.entries()
                        .iter()
                        .zip(rhs.entries())
                        .map(|(&l, &r)| (l + q - r) % q)
                        .collect::<Vec<_>>()
                })
                .collect()
        })
        .collect();
    let sol = Matrix::from_rows(q, &residuals).ok()?.left_nullspace();
    if sol.rows() == 0 {
        return None;
    }
    let c = sol.row(0);
    let mut x = Matrix::zero(q, dim, dim);
    for (xi, &ci) in xs.iter().zip(c) {
        x = x.add(&xi.scale(ci));
    }
    x.is_invertible().then_some(x)
}

/// An irreducible constituent with its certificate.
#[derive(Clone, Debug)]
pub struct Constituent {
    pub gens: Vec<Matrix>,
    pub dim: usize,
    pub certificate: Option<Certificate>,
    pub multiplicity: u32,
}

/// Composition factors up to isomorphism, in order of first appearance and
/// then sorted by dimension.
pub fn chop<R: Rng>(gens: &[Matrix], q: u32, dim: usize, rng: &mut R, budget: usize) -> Result<Vec<Constituent>> {
    let mut pieces: Vec<(Vec<Matrix>, usize, Option<Certificate>)> = Vec::new();
    let mut stack = vec![(gens.to_vec(), dim)];
    while let Some((g, d)) = stack.pop() {
        if d == 0 {
            continue;
        }
        if d == 1 {
            pieces.push((g, 1, None));
            continue;
        }
        match split(&g, q, d, rng, budget)? {
            Split::Proper(s) => {
                let quot = quotient_action(&g, &s);
                let sub = sub_action(&g, &s);
                stack.push((quot, d - s.len()));
                stack.push((sub, s.len()));
            }
            Split::Irreducible(c) => pieces.push((g, d, Some(c))),
        }
    }
    let mut out: Vec<Constituent> = Vec::new();
    for (g, d, cert) in pieces {
        let found = out.iter_mut().find(|c| {
            c.dim == d
                && match &c.certificate {
                    None => c.gens == g,
                    Some(cert) => isomorphism(&c.gens, cert, &g).is_some(),
                }
        });
        match found {
            Some(c) => c.multiplicity += 1,
            None => out.push(Constituent {
                gens: g,
                dim: d,
                certificate: cert,
                multiplicity: 1,
            }),
        }
    }
    out.sort_by_key(|c| c.dim);
    Ok(out)
}
