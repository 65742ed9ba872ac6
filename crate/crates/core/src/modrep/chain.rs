//! Iterated affine extensions `G_{i+1} = V_i ⋊ G_i` whose σ-lengths of the
//! p-closed soluble residual grow by one at every step.

use serde::Serialize;

use super::affine::affine_semidirect;
use super::module::{faithful_irreducible, GModule};
use crate::arith::{is_prime, next_prime};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::formations::{n_lengths_of_residual, residual_from_normals, residual_in, Formation, NLengths};
use crate::group::{PermutationGroup, Subgroup};
use crate::perm::Permutation;
use crate::radicals::{gamma_length_above, radical_above, FittingClass, Functorial, Length};
use crate::structure::section::{chief_series_above, index};
use crate::structure::sigma::SigmaPartition;
use crate::universe::{Elem, Sub, Universe};

/// How `G^𝔉` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidualMethod {
    /// Intersection over all normal subgroups.
    NormalSubgroups,
    /// Normal subgroups form a chain (unique chief series); the residual is
    /// the smallest chief term with quotient in the formation.
    ChiefSeries,
}

/// Facts verified for `G_{i+1}` and `M_i`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub i: usize,
    pub prime: u64,
    pub dimension: usize,
    pub degree: usize,
    pub group_order: u128,
    pub v_order: u128,
    pub m_order: u128,
    pub f_sigma_order: u128,
    pub unique_minimal_normal: bool,
    pub unique_chief_series: bool,
    pub m_maximal: bool,
    pub residual_order: u128,
    pub residual_method: ResidualMethod,
    pub l_sigma_m: Length,
    pub n_sigma_g: Length,
    pub n_sigma_m: Length,
    pub difference: i64,
}

#[derive(Clone, Debug)]
pub struct ChainResult {
    pub sigma: SigmaPartition,
    pub p: u64,
    pub n: usize,
    pub seed: u64,
    /// `p_0 = p, p_1, …, p_n`.
    pub primes: Vec<u64>,
    /// `G_1, …, G_{n+1}`.
    pub groups: Vec<PermutationGroup>,
    /// `V_1, …, V_n`.
    pub modules: Vec<GModule>,
    /// `M_1, …, M_n` as subgroups of `G_{n+1}`.
    pub m: Vec<Subgroup>,
    /// One report per `i = 1, …, n`, about `G_{i+1}` and `M_i ≤ G_{i+1}`.
    pub levels: Vec<LevelReport>,
}

impl ChainResult {
    pub fn top(&self) -> &PermutationGroup {
        self.groups.last().expect("chain has at least two groups")
    }

    pub fn difference(&self) -> i64 {
        self.levels.last().map_or(0, |l| l.difference)
    }
}

/// `n_𝔉` and `n_σ(·, 𝔉)` of the top group and of `M_n` for one formation.
#[derive(Clone, Debug, Serialize)]
pub struct FormationComparison {
    pub formation: Formation,
    pub residual_order: u128,
    pub m_residual_order: u128,
    pub residual_method: ResidualMethod,
    pub top: NLengths,
    pub m: NLengths,
    pub n_frak_difference: Option<i64>,
    pub n_sigma_difference: Option<i64>,
}

impl ChainResult {
    /// Residual lengths of `G_{n+1}` and `M_n` for `formation`.
    pub fn compare(&self, formation: &Formation, limits: &Limits) -> Result<FormationComparison> {
        let u = Universe::new(self.top(), limits)?;
        let m = u.sub_from_group(self.m.last().expect("chain has at least one level"))?;
        let (r, method) = residual_with_fallback(&u, &u.whole(), formation, limits)?;
        let (rm, _) = residual_with_fallback(&u, &m, formation, limits)?;
        let top = n_lengths_of_residual(&u, &r, &self.sigma, limits.max_steps)?;
        let ml = n_lengths_of_residual(&u, &rm, &self.sigma, limits.max_steps)?;
        Ok(FormationComparison {
            formation: formation.clone(),
            residual_order: r.order as u128,
            m_residual_order: rm.order as u128,
            residual_method: method,
            n_frak_difference: top.n_frak.diff(ml.n_frak),
            n_sigma_difference: top.n_sigma.diff(ml.n_sigma),
            top,
            m: ml,
        })
    }
}

/// `top^𝔉`, from all normal subgroups when the class cap allows, else from
/// the chief terms when the chief series is unique.
fn residual_with_fallback(u: &Universe, top: &Sub, formation: &Formation, limits: &Limits) -> Result<(Sub, ResidualMethod)> {
    match residual_in(u, top, formation, limits) {
        Ok(r) => Ok((r, ResidualMethod::NormalSubgroups)),
        Err(Error::CapExceeded { cap, limit, value }) => {
            let chief = chief_series_above(u, top, &u.trivial());
            if !chief.unique {
                return Err(Error::CapExceeded { cap, limit, value });
            }
            Ok((
                residual_from_normals(u, top, formation, &chief.terms, limits.max_steps)?,
                ResidualMethod::ChiefSeries,
            ))
        }
        Err(e) => Err(e),
    }
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

/// Images in `G_{i+1}` of every element of `G_i`, via the complement.
fn embedding_table(u: &Universe, complement: &[Permutation], degree: usize) -> Vec<Permutation> {
    let mut img: Vec<Option<Permutation>> = vec![None; u.order()];
    img[0] = Some(Permutation::identity(degree));
    let mut queue: Vec<Elem> = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let px = img[x as usize].clone().expect("visited");
        for (&g, pg) in u.generators().iter().zip(complement) {
            let y = u.mul(x, g);
            if img[y as usize].is_none() {
                img[y as usize] = Some(px.mul(pg));
                queue.push(y);
            }
        }
    }
    img.into_iter().map(|p| p.expect("connected")).collect()
}

struct Stage {
    group: PermutationGroup,
    /// Generators of `V_i` inside `G_{i+1}`.
    v_gens: Vec<Permutation>,
    /// Generators of the complement inside `G_{i+1}`, matching those of `G_i`.
    complement: Vec<Permutation>,
}

fn admissible(sigma: &SigmaPartition, p: u64, prev: u64, q: u64) -> bool {
    q != p && !sigma.same_class(q, prev)
}

/// Builds and verifies the chain of length `n`.
pub fn counterexample_chain(sigma: &SigmaPartition, p: u64, n: usize, seed: u64, limits: &Limits) -> Result<ChainResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidInput("chain length n must be at least 1".into()));
    }
    let mut primes = vec![p];
    let mut groups = vec![PermutationGroup::cyclic(p as usize)];
    let mut modules: Vec<GModule> = Vec::new();
    let mut stages: Vec<Stage> = Vec::new();
    for i in 1..=n {
        let g = groups.last().unwrap().clone();
        let prev = *primes.last().unwrap();
        let mut q = 2;
        let chosen = loop {
            if q as usize > limits.degree_cap {
                return Err(Error::InvalidInput(format!(
                    "no admissible prime for step {i} within the degree cap {}",
                    limits.degree_cap
                )));
            }
            if admissible(sigma, p, prev, q) {
                match faithful_irreducible(&g, q as u32, seed.wrapping_add(i as u64), limits) {
                    Ok(v) => {
                        let size = (q as usize).checked_pow(v.dimension() as u32);
                        if size.is_some_and(|s| s <= limits.degree_cap) {
                            break (q, v);
                        }
                    }
                    Err(Error::ExistenceFailure { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            q = next_prime(q);
        };
        let (q, v) = chosen;
        let a = affine_semidirect(&v, limits)?;
        let expected = (q as u128).pow(v.dimension() as u32) * g.order();
        if a.group.order() != expected {
            return Err(fail(format!("|G_{}| = {} but q^d·|G_{i}| = {expected}", i + 1, a.group.order())));
        }
        primes.push(q);
        stages.push(Stage {
            group: a.group.clone(),
            v_gens: a.v_image.generators().to_vec(),
            complement: a.complement_image.generators().to_vec(),
        });
        groups.push(a.group);
        modules.push(v);
    }

    // universes of G_1..G_n, used to push subgroups up the chain
    let mut small: Vec<Universe> = Vec::with_capacity(n);
    let mut tables: Vec<Vec<Permutation>> = Vec::with_capacity(n);
    for (i, st) in stages.iter().enumerate() {
        let u = Universe::new(&groups[i], limits)?;
        if st.complement.len() != u.generators().len() {
            return Err(fail(format!("complement of G_{} is not generated like G_{}", i + 2, i + 1)));
        }
        tables.push(embedding_table(&u, &st.complement, st.group.degree()));
        small.push(u);
    }
    // lift a permutation of G_{from+1} into G_{to+1} (0-based stage indices)
    let lift = |x: &Permutation, from: usize, to: usize| -> Result<Permutation> {
        let mut y = x.clone();
        for k in from + 1..=to {
            let idx = small[k]
                .index_of(&y)
                .ok_or_else(|| fail("element does not lie in the previous group".into()))?;
            y = tables[k][idx as usize].clone();
        }
        Ok(y)
    };

    let mut levels = Vec::with_capacity(n);
    let mut m_top: Vec<Subgroup> = Vec::with_capacity(n);
    for i in 1..=n {
        let top = i - 1;
        let mut m_gens: Vec<Permutation> = Vec::new();
        for j in 0..=top {
            for x in &stages[j].v_gens {
                m_gens.push(lift(x, j, top)?);
            }
        }
        let owned;
        let u: &Universe = if i < n {
            &small[i]
        } else {
            owned = Universe::new(&groups[n], limits)?;
            &owned
        };
        let level = verify_level(
            u,
            i,
            primes[i],
            &modules[i - 1],
            &stages[top].v_gens,
            &m_gens,
            sigma,
            p,
            seed,
            limits,
        )?;
        levels.push(level);
    }
    for i in 1..=n {
        let mut gens = Vec::new();
        for j in 0..i {
            for x in &stages[j].v_gens {
                gens.push(lift(x, j, n - 1)?);
            }
        }
        m_top.push(PermutationGroup::new(groups[n].degree(), gens)?);
    }
    Ok(ChainResult {
        sigma: sigma.clone(),
        p,
        n,
        seed,
        primes,
        groups,
        modules,
        m: m_top,
        levels,
    })
}

fn sub_of(u: &Universe, gens: &[Permutation]) -> Result<Sub> {
    let elems = gens
        .iter()
        .map(|x| u.index_of(x).ok_or(Error::NotSubgroup))
        .collect::<Result<Vec<_>>>()?;
    Ok(u.closure(&elems))
}

#[allow(clippy::too_many_arguments)]
fn verify_level(
    u: &Universe,
    i: usize,
    prime: u64,
    module: &GModule,
    v_gens: &[Permutation],
    m_gens: &[Permutation],
    sigma: &SigmaPartition,
    p: u64,
    seed: u64,
    limits: &Limits,
) -> Result<LevelReport> {
    let formation = &Formation::PClosedSoluble(p);
    let whole = u.whole();
    let one = u.trivial();
    let v = sub_of(u, v_gens)?;
    let m = sub_of(u, m_gens)?;
    let g_name = format!("G_{}", i + 1);

    // V is minimal normal (irreducible module) and self-centralizing, so
    // every other minimal normal subgroup would centralize it.
    if !u.is_normalized_by(&v, &whole) || !module.is_irreducible(seed, limits)? {
        return Err(fail(format!("V_{i} is not a minimal normal subgroup of {g_name}")));
    }
    let vs: Vec<Elem> = v.gens.clone();
    if u.centralizer_of(&whole, &vs) != v {
        return Err(fail(format!("C_{g_name}(V_{i}) differs from V_{i}")));
    }

    let f_sigma = radical_above(u, &FittingClass::SigmaNilpotent(sigma.clone()), &whole, &one);
    if f_sigma != v {
        return Err(fail(format!("F_σ({g_name}) differs from V_{i}")));
    }

    if !u.is_normalized_by(&m, &whole) || index(&whole, &m) != p {
        return Err(fail(format!("M_{i} is not a normal subgroup of index p in {g_name}")));
    }
    let g = u.group();
    let m_group = u.to_group(&m);
    let m_maximal = m_group.is_maximal_in(g, limits)?;
    if !m_maximal {
        return Err(fail(format!("M_{i} is not maximal in {g_name}")));
    }

    let chief = chief_series_above(u, &whole, &one);
    if !chief.unique {
        return Err(fail(format!("{g_name} has more than one chief series")));
    }
    let (residual, method) = residual_with_fallback(u, &whole, formation, limits)?;
    if residual != m {
        return Err(fail(format!("{g_name}^𝔉 differs from M_{i}")));
    }

    let l_sigma = Functorial::sigma_fitting(sigma);
    let l_sigma_m = gamma_length_above(u, &l_sigma, &m, &one, limits.max_steps)?;
    if l_sigma_m != Length::Finite(i as u32) {
        return Err(fail(format!("l_σ(M_{i}) = {l_sigma_m}, expected {i}")));
    }
    let n_sigma_g = gamma_length_above(u, &l_sigma, &residual, &one, limits.max_steps)?;
    let m_residual = residual_in(u, &m, formation, limits)?;
    let n_sigma_m = gamma_length_above(u, &l_sigma, &m_residual, &one, limits.max_steps)?;
    let difference = n_sigma_g
        .diff(n_sigma_m)
        .ok_or_else(|| fail("infinite σ-length in a soluble group".into()))?;
    if difference != i as i64 {
        return Err(fail(format!("n_σ({g_name}) − n_σ(M_{i}) = {difference}, expected {i}")));
    }
    Ok(LevelReport {
        i,
        prime,
        dimension: module.dimension(),
        degree: u.degree(),
        group_order: u.order() as u128,
        v_order: v.order as u128,
        m_order: m.order as u128,
        f_sigma_order: f_sigma.order as u128,
        unique_minimal_normal: true,
        unique_chief_series: chief.unique,
        m_maximal,
        residual_order: residual.order as u128,
        residual_method: method,
        l_sigma_m,
        n_sigma_g,
        n_sigma_m,
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        let l = Limits::default();
        let per = SigmaPartition::singletons();
        assert!(counterexample_chain(&per, 2, 0, 0, &l).is_err());
        assert!(counterexample_chain(&per, 4, 1, 0, &l).is_err());
    }

    #[test]
    fn first_two_steps() {
        let l = Limits::default();
        let per = SigmaPartition::singletons();
        let c = counterexample_chain(&per, 2, 2, 0, &l).unwrap();
        assert_eq!(c.primes, vec![2, 3, 5]);
        assert_eq!(c.groups[1].order(), 6);
        assert!(c.groups[1].same_group(&PermutationGroup::symmetric(3)));
        assert_eq!((c.groups[2].order(), c.groups[2].degree()), (150, 25));
        assert_eq!(c.levels[0].m_order, 3);
        assert_eq!(c.levels[1].m_order, 75);
        assert_eq!(c.levels[0].difference, 1);
        assert_eq!(c.difference(), 2);
        assert_eq!(c.m[1].order(), 75);
    }
}

