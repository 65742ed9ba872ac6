//! Formations, residuals and the residual lengths `n_𝔉` and `n_σ(·, 𝔉)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{is_prime, part};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::radicals::{gamma_length_above, radical_above, FittingClass, Functorial, Length};
use crate::structure::normal_subgroups_in;
use crate::structure::section::{self, index};
use crate::structure::sigma::SigmaPartition;
use crate::universe::{Sub, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formation {
    /// 𝔑.
    Nilpotent,
    /// 𝔑_σ.
    SigmaNilpotent(SigmaPartition),
    /// Soluble groups with a normal Sylow p-subgroup.
    PClosedSoluble(u64),
    /// p-closed soluble groups of Fitting height at most `k`.
    PClosedSolubleHeight(u64, u32),
}

impl FromStr for Formation {
    type Err = Error;

    /// `N`, `Nsigma:<sigma>`, `PClosedSol:<p>`, `PClosedSolH:<p>:<k>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let prime = |t: &str| -> Result<u64> {
            let p: u64 = t
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime '{t}'")))?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(Error::NotPrime(p))
            }
        };
        if s == "N" {
            Ok(Formation::Nilpotent)
        } else if let Some(rest) = s.strip_prefix("Nsigma:") {
            Ok(Formation::SigmaNilpotent(rest.parse()?))
        } else if let Some(rest) = s.strip_prefix("PClosedSolH:") {
            let (p, k) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidInput(format!("expected PClosedSolH:<p>:<k>, got '{s}'")))?;
            let k: u32 = k
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad height bound '{k}'")))?;
            Ok(Formation::PClosedSolubleHeight(prime(p)?, k))
        } else if let Some(rest) = s.strip_prefix("PClosedSol:") {
            Ok(Formation::PClosedSoluble(prime(rest)?))
        } else {
            Err(Error::InvalidInput(format!("unknown formation '{s}'")))
        }
    }
}

impl fmt::Display for Formation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formation::Nilpotent => write!(f, "N"),
            Formation::SigmaNilpotent(s) => write!(f, "Nsigma:{s}"),
            Formation::PClosedSoluble(p) => write!(f, "PClosedSol:{p}"),
            Formation::PClosedSolubleHeight(p, k) => write!(f, "PClosedSolH:{p}:{k}"),
        }
    }
}

impl Serialize for Formation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn is_p_closed_soluble(u: &Universe, top: &Sub, bottom: &Sub, p: u64) -> bool {
    if !section::is_soluble(u, top, bottom) {
        return false;
    }
    let op = radical_above(u, &FittingClass::p_groups(p), top, bottom);
    index(&op, bottom) == part(index(top, bottom), |q| q == p)
}

impl Formation {
    /// Membership of the section `top/bottom`.
    pub fn contains_section(&self, u: &Universe, top: &Sub, bottom: &Sub, max_steps: usize) -> Result<bool> {
        Ok(match self {
            Formation::Nilpotent => section::is_nilpotent(u, top, bottom),
            Formation::SigmaNilpotent(s) => section::is_sigma_nilpotent(u, top, bottom, s),
            Formation::PClosedSoluble(p) => is_p_closed_soluble(u, top, bottom, *p),
            Formation::PClosedSolubleHeight(p, k) => {
                is_p_closed_soluble(u, top, bottom, *p)
                    && gamma_length_above(u, &Functorial::fitting(), top, bottom, max_steps)?
                        <= Length::Finite(*k)
            }
        })
    }
}

/// Residual of `top` computed from a list containing every normal subgroup
/// of `top` (for instance the terms of a unique chief series).
pub fn residual_from_normals(
    u: &Universe,
    top: &Sub,
    formation: &Formation,
    normals: &[Sub],
    max_steps: usize,
) -> Result<Sub> {
    let mut res = top.clone();
    for n in normals {
        if !res.is_subgroup_of(n) && formation.contains_section(u, top, n, max_steps)? {
            res = u.intersection(&res, n);
        }
    }
    Ok(res)
}

/// `top^𝔉`.
pub fn residual_in(u: &Universe, top: &Sub, formation: &Formation, limits: &Limits) -> Result<Sub> {
    let one = u.trivial();
    if formation.contains_section(u, top, &one, limits.max_steps)? {
        return Ok(one);
    }
    if *formation == Formation::Nilpotent {
        return Ok(section::lower_central_series(u, top, &one).pop().unwrap());
    }
    let normals = normal_subgroups_in(u, top, limits)?;
    residual_from_normals(u, top, formation, &normals, limits.max_steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NLengths {
    /// `h(G^𝔉)`.
    pub n_frak: Length,
    /// `l_σ(G^𝔉)`.
    pub n_sigma: Length,
}

pub fn n_lengths_of_residual(u: &Universe, residual: &Sub, sigma: &SigmaPartition, max_steps: usize) -> Result<NLengths> {
    let one = u.trivial();
    Ok(NLengths {
        n_frak: gamma_length_above(u, &Functorial::fitting(), residual, &one, max_steps)?,
        n_sigma: gamma_length_above(u, &Functorial::sigma_fitting(sigma), residual, &one, max_steps)?,
    })
}

pub fn n_lengths_in(
    u: &Universe,
    top: &Sub,
    formation: &Formation,
    sigma: &SigmaPartition,
    limits: &Limits,
) -> Result<NLengths> {
    let r = residual_in(u, top, formation, limits)?;
    n_lengths_of_residual(u, &r, sigma, limits.max_steps)
}

// ----- whole-group wrappers -----

pub fn formation_membership(g: &PermutationGroup, formation: &Formation, limits: &Limits) -> Result<bool> {
    let u = Universe::new(g, limits)?;
    formation.contains_section(&u, &u.whole(), &u.trivial(), limits.max_steps)
}

pub fn residual(g: &PermutationGroup, formation: &Formation, limits: &Limits) -> Result<PermutationGroup> {
    let u = Universe::new(g, limits)?;
    Ok(u.to_group(&residual_in(&u, &u.whole(), formation, limits)?))
}

pub fn n_lengths(
    g: &PermutationGroup,
    formation: &Formation,
    sigma: &SigmaPartition,
    limits: &Limits,
) -> Result<NLengths> {
    let u = Universe::new(g, limits)?;
    n_lengths_in(&u, &u.whole(), formation, sigma, limits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formation {
        s.parse().unwrap()
    }

    #[test]
    fn membership_examples() {
        let l = Limits::default();
        let s3 = PermutationGroup::symmetric(3);
        assert!(!formation_membership(&s3, &f("PClosedSol:2"), &l).unwrap());
        assert!(formation_membership(&s3, &f("PClosedSol:3"), &l).unwrap());
        assert!(formation_membership(&PermutationGroup::cyclic(6), &f("PClosedSol:2"), &l).unwrap());
        assert!(!formation_membership(&PermutationGroup::symmetric(4), &f("PClosedSol:2"), &l).unwrap());
        assert!(!formation_membership(&PermutationGroup::alternating(5), &f("PClosedSol:5"), &l).unwrap());
    }

    #[test]
    fn residual_examples() {
        let l = Limits::default();
        let s3 = PermutationGroup::symmetric(3);
        assert_eq!(residual(&s3, &f("PClosedSol:2"), &l).unwrap().order(), 3);
        assert_eq!(residual(&s3, &f("PClosedSol:3"), &l).unwrap().order(), 1);
        let s4 = PermutationGroup::symmetric(4);
        let r = residual(&s4, &f("N"), &l).unwrap();
        assert!(r.same_group(&PermutationGroup::alternating(4)));
    }

    #[test]
    fn n_length_examples() {
        let l = Limits::default();
        let per = SigmaPartition::singletons();
        let s3 = PermutationGroup::symmetric(3);
        let n = n_lengths(&s3, &f("PClosedSol:2"), &per, &l).unwrap();
        assert_eq!(n.n_frak, Length::Finite(1));
        let c6 = PermutationGroup::cyclic(6);
        assert_eq!(n_lengths(&c6, &f("PClosedSol:2"), &per, &l).unwrap().n_frak, Length::Finite(0));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["N", "Nsigma:2,3|*", "PClosedSol:2", "PClosedSolH:2:3"] {
            assert_eq!(f(s).to_string(), s);
        }
        assert!("PClosedSol:4".parse::<Formation>().is_err());
        assert!("PClosedSolH:2".parse::<Formation>().is_err());
        assert!("X".parse::<Formation>().is_err());
    }
}
