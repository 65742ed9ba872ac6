//! Fitting-class radicals, the generalized Fitting subgroup, upper products
//! of functorials, γ-series and the lengths built from them.
//!
//! All evaluation happens on sections `K/L` of an enumerated group: a
//! functorial maps `(K, L)` to the preimage in `K` of its value on `K/L`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::group::PermutationGroup;
use crate::structure::section::{self, index, SimpleFactor};
use crate::structure::sigma::{PrimeSet, SigmaClass, SigmaPartition};
use crate::universe::{Sub, Universe};

/// One admissible kind of simple group in a composition-factor class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimpleKind {
    /// The cyclic group of prime order `p`.
    Cyclic(u64),
    AnyAbelian,
    AnyNonabelian,
    /// Nonabelian simple groups of the given order.
    NonabelianOfOrder(u64),
}

/// The class of groups all of whose composition factors are of the listed kinds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JClass(pub Vec<SimpleKind>);

impl JClass {
    /// Comma-separated tokens: a prime `p` (cyclic of order p), `ab`, `nonab`,
    /// or the order of a nonabelian simple group.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut kinds = Vec::new();
        for tok in spec.split(',').map(str::trim) {
            let kind = match tok {
                "ab" => SimpleKind::AnyAbelian,
                "nonab" => SimpleKind::AnyNonabelian,
                _ => {
                    let n: u64 = tok.parse().map_err(|_| {
                        Error::InvalidInput(format!("bad composition-factor token '{tok}'"))
                    })?;
                    if n < 2 {
                        return Err(Error::InvalidInput(format!("no simple group of order {n}")));
                    }
                    if is_prime(n) {
                        SimpleKind::Cyclic(n)
                    } else {
                        SimpleKind::NonabelianOfOrder(n)
                    }
                }
            };
            kinds.push(kind);
        }
        Ok(JClass(kinds))
    }

    pub fn admits(&self, f: &SimpleFactor) -> bool {
        self.0.iter().any(|k| match *k {
            SimpleKind::Cyclic(p) => f.abelian && f.order == p,
            SimpleKind::AnyAbelian => f.abelian,
            SimpleKind::AnyNonabelian => !f.abelian,
            SimpleKind::NonabelianOfOrder(n) => !f.abelian && f.order == n,
        })
    }

    fn admits_all_abelian(&self) -> bool {
        self.0.contains(&SimpleKind::AnyAbelian)
    }
}

impl fmt::Display for JClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|k| match k {
                SimpleKind::Cyclic(p) => p.to_string(),
                SimpleKind::AnyAbelian => "ab".into(),
                SimpleKind::AnyNonabelian => "nonab".into(),
                SimpleKind::NonabelianOfOrder(n) => n.to_string(),
            })
            .collect();
        write!(f, "{}", toks.join(","))
    }
}

/// The Fitting classes with a built-in membership test.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FittingClass {
    /// π-groups for a set of primes π (p-groups, σ_i-groups).
    Pi(PrimeSet),
    Nilpotent,
    SigmaNilpotent(SigmaPartition),
    Soluble,
    /// Every chief factor is a p-group or a p'-group.
    PSoluble(u64),
    CompositionFactors(JClass),
}

impl FittingClass {
    pub fn p_groups(p: u64) -> Self {
        FittingClass::Pi(PrimeSet::single(p))
    }

    /// Membership of the section `top/bottom`.
    pub fn contains_section(&self, u: &Universe, top: &Sub, bottom: &Sub) -> bool {
        match self {
            FittingClass::Pi(pi) => section::is_pi_group(top, bottom, pi),
            FittingClass::Nilpotent => section::is_nilpotent(u, top, bottom),
            FittingClass::SigmaNilpotent(s) => section::is_sigma_nilpotent(u, top, bottom, s),
            FittingClass::Soluble => section::is_soluble(u, top, bottom),
            FittingClass::PSoluble(p) => section::is_p_soluble(u, top, bottom, *p),
            FittingClass::CompositionFactors(j) => {
                if j.admits_all_abelian() && section::is_soluble(u, top, bottom) {
                    return true;
                }
                section::composition_factors(u, top, bottom)
                    .iter()
                    .all(|f| j.admits(f))
            }
        }
    }

    /// Membership of a whole permutation group.
    pub fn contains(&self, g: &PermutationGroup, limits: &Limits) -> Result<bool> {
        let u = Universe::new(g, limits)?;
        Ok(self.contains_section(&u, &u.whole(), &u.trivial()))
    }
}

/// Preimage of the 𝔛-radical of `top/bottom`.
pub fn radical_above(u: &Universe, class: &FittingClass, top: &Sub, bottom: &Sub) -> Sub {
    if class.contains_section(u, top, bottom) {
        return top.clone();
    }
    match class {
        FittingClass::Nilpotent => {
            product_of_cores(u, top, bottom, &SigmaPartition::singletons())
        }
        FittingClass::SigmaNilpotent(s) => product_of_cores(u, top, bottom, s),
        FittingClass::Pi(pi) => pi_core(u, top, bottom, pi),
        _ => {
            let mut r = bottom.clone();
            for c in u.classes(top).iter() {
                if r.contains(c.rep) {
                    continue;
                }
                let n = u.normal_closure_from(top, bottom, &[c.rep]);
                if class.contains_section(u, &n, bottom) {
                    r = u.join(&r, &n);
                }
            }
            r
        }
    }
}

/// `O_π(top/bottom)`: joins the normal closures of π-elements that stay π-groups.
fn pi_core(u: &Universe, top: &Sub, bottom: &Sub, pi: &PrimeSet) -> Sub {
    let mut r = bottom.clone();
    for c in u.classes(top).iter() {
        if r.contains(c.rep) || !pi.divides_only(u.order_mod(c.rep, Some(bottom))) {
            continue;
        }
        let found = u.normal_closure_until(top, &r, &[c.rep], |cur| {
            !section::is_pi_group(cur, bottom, pi)
        });
        if let Some(n) = found {
            r = n;
        }
    }
    r
}

/// Product of `O_{σ_i}` over the classes meeting the section order.
fn product_of_cores(u: &Universe, top: &Sub, bottom: &Sub, sigma: &SigmaPartition) -> Sub {
    sigma
        .classes_dividing(index(top, bottom))
        .into_iter()
        .fold(bottom.clone(), |acc, c| {
            let core = pi_core(u, top, bottom, &sigma.primes_of(c));
            u.join(&acc, &core)
        })
}

/// Preimage of `F*(top/bottom)`.
pub fn fstar_above(u: &Universe, top: &Sub, bottom: &Sub) -> Sub {
    let f = radical_above(u, &FittingClass::Nilpotent, top, bottom);
    if f == *top {
        return f;
    }
    let c = section::centralizer_above(u, top, &f, bottom);
    let h = u.join(&c, &f);
    section::socle_above(u, &h, &f)
}

/// A rule assigning to every group a characteristic subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Functorial {
    Trivial,
    Radical(FittingClass),
    Fstar,
    /// `inner` evaluated on the quotient by `outer`, pulled back.
    Upper(Box<Functorial>, Box<Functorial>),
}

impl Functorial {
    pub fn fitting() -> Self {
        Functorial::Radical(FittingClass::Nilpotent)
    }

    pub fn sigma_fitting(sigma: &SigmaPartition) -> Self {
        Functorial::Radical(FittingClass::SigmaNilpotent(sigma.clone()))
    }

    pub fn soluble_radical() -> Self {
        Functorial::Radical(FittingClass::Soluble)
    }

    pub fn p_soluble_radical(p: u64) -> Self {
        Functorial::Radical(FittingClass::PSoluble(p))
    }

    /// `self ⋆ inner`: first `self`, then `inner` on the quotient.
    pub fn then(self, inner: Functorial) -> Self {
        match (self, inner) {
            (Functorial::Trivial, g) => g,
            (f, Functorial::Trivial) => f,
            (f, g) => Functorial::Upper(Box::new(f), Box::new(g)),
        }
    }

    /// `ρ ⋆ F* ⋆ ρ` for the p-soluble radical ρ.
    pub fn lambda(p: u64) -> Self {
        Functorial::p_soluble_radical(p)
            .then(Functorial::Fstar)
            .then(Functorial::p_soluble_radical(p))
    }

    /// Parses registry names (`F`, `Fstar`, `Fsigma`, `Osigma_<i>`,
    /// `Op:<p>`, `RadSol`, `RadPSol:<p>`, `OJ:<spec>`), joined by `*`
    /// from the bottom up.
    pub fn parse(text: &str, sigma: &SigmaPartition) -> Result<Self> {
        let mut out = Functorial::Trivial;
        for tok in text.split('*').map(str::trim) {
            out = out.then(Self::parse_atom(tok, sigma)?);
        }
        Ok(out)
    }

    fn parse_atom(tok: &str, sigma: &SigmaPartition) -> Result<Self> {
        let prime = |s: &str| -> Result<u64> {
            let p: u64 = s
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad prime '{s}'")))?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(Error::NotPrime(p))
            }
        };
        Ok(match tok {
            "F" => Functorial::fitting(),
            "Fstar" => Functorial::Fstar,
            "Fsigma" => Functorial::sigma_fitting(sigma),
            "RadSol" => Functorial::soluble_radical(),
            "1" => Functorial::Trivial,
            _ => {
                if let Some(p) = tok.strip_prefix("Op:") {
                    Functorial::Radical(FittingClass::p_groups(prime(p)?))
                } else if let Some(p) = tok.strip_prefix("RadPSol:") {
                    Functorial::p_soluble_radical(prime(p)?)
                } else if let Some(spec) = tok.strip_prefix("OJ:") {
                    Functorial::Radical(FittingClass::CompositionFactors(JClass::parse(spec)?))
                } else if let Some(i) = tok.strip_prefix("Osigma_") {
                    let i: usize = i
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad class index in '{tok}'")))?;
                    if i == 0 || i > sigma.classes().len() {
                        return Err(Error::InvalidInput(format!(
                            "'{tok}' needs listed sigma class {i}, partition {sigma} has {}",
                            sigma.classes().len()
                        )));
                    }
                    Functorial::Radical(FittingClass::Pi(sigma.primes_of(SigmaClass::Listed(i - 1))))
                } else {
                    return Err(Error::InvalidInput(format!("unknown functorial '{tok}'")));
                }
            }
        })
    }

    /// Preimage of the value on `top/bottom`.
    pub fn eval_above(&self, u: &Universe, top: &Sub, bottom: &Sub) -> Sub {
        match self {
            Functorial::Trivial => bottom.clone(),
            Functorial::Radical(c) => radical_above(u, c, top, bottom),
            Functorial::Fstar => fstar_above(u, top, bottom),
            Functorial::Upper(outer, inner) => {
                let mid = outer.eval_above(u, top, bottom);
                inner.eval_above(u, top, &mid)
            }
        }
    }

    pub fn eval(&self, g: &PermutationGroup, limits: &Limits) -> Result<PermutationGroup> {
        let u = Universe::new(g, limits)?;
        Ok(u.to_group(&self.eval_above(&u, &u.whole(), &u.trivial())))
    }
}

impl fmt::Display for Functorial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functorial::Trivial => write!(f, "1"),
            Functorial::Fstar => write!(f, "Fstar"),
            Functorial::Upper(a, b) => write!(f, "{a}*{b}"),
            Functorial::Radical(c) => match c {
                FittingClass::Nilpotent => write!(f, "F"),
                FittingClass::SigmaNilpotent(_) => write!(f, "Fsigma"),
                FittingClass::Soluble => write!(f, "RadSol"),
                FittingClass::PSoluble(p) => write!(f, "RadPSol:{p}"),
                FittingClass::CompositionFactors(j) => write!(f, "OJ:{j}"),
                FittingClass::Pi(PrimeSet::Finite(ps)) if ps.len() == 1 => write!(f, "Op:{}", ps[0]),
                FittingClass::Pi(pi) => write!(f, "O{{{pi:?}}}"),
            },
        }
    }
}

/// Length of a γ-series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Length {
    Finite(u32),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u32> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        self != Length::Infinite
    }

    /// `self - other` when both are finite.
    pub fn diff(self, other: Length) -> Option<i64> {
        Some(self.finite()? as i64 - other.finite()? as i64)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u32(*n),
            Length::Infinite => s.serialize_str("infinite"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GammaSeries<T = Sub> {
    /// `terms[0]` is the bottom of the section.
    pub terms: Vec<T>,
    pub length: Length,
    /// Index of the term the series got stuck at, if it never reached the top.
    pub stalled_at: Option<usize>,
}

pub fn gamma_series_above(
    u: &Universe,
    gamma: &Functorial,
    top: &Sub,
    bottom: &Sub,
    max_steps: usize,
) -> Result<GammaSeries> {
    let mut terms = vec![bottom.clone()];
    loop {
        let cur = terms.last().unwrap();
        if cur == top {
            return Ok(GammaSeries {
                length: Length::Finite(terms.len() as u32 - 1),
                terms,
                stalled_at: None,
            });
        }
        if terms.len() > max_steps {
            return Err(Error::MaxSteps(max_steps));
        }
        let next = gamma.eval_above(u, top, cur);
        if next == *cur {
            let at = terms.len() - 1;
            return Ok(GammaSeries {
                terms,
                length: Length::Infinite,
                stalled_at: Some(at),
            });
        }
        terms.push(next);
    }
}

pub fn gamma_length_above(
    u: &Universe,
    gamma: &Functorial,
    top: &Sub,
    bottom: &Sub,
    max_steps: usize,
) -> Result<Length> {
    Ok(gamma_series_above(u, gamma, top, bottom, max_steps)?.length)
}

/// λ_p of `top/bottom`: zero for p-soluble sections, else the γ-length of `ρ_p ⋆ F* ⋆ ρ_p`.
pub fn lambda_above(u: &Universe, p: u64, top: &Sub, bottom: &Sub, max_steps: usize) -> Result<Length> {
    if section::is_p_soluble(u, top, bottom, p) {
        return Ok(Length::Finite(0));
    }
    gamma_length_above(u, &Functorial::lambda(p), top, bottom, max_steps)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedLengths {
    pub h: Length,
    pub h_star: Length,
    pub l_sigma: Length,
    pub lambda_p: BTreeMap<u64, Length>,
    pub lambda: Length,
}

pub fn named_lengths_above(
    u: &Universe,
    top: &Sub,
    bottom: &Sub,
    sigma: &SigmaPartition,
    primes: &[u64],
    max_steps: usize,
) -> Result<NamedLengths> {
    let h = gamma_length_above(u, &Functorial::fitting(), top, bottom, max_steps)?;
    let h_star = gamma_length_above(u, &Functorial::Fstar, top, bottom, max_steps)?;
    let l_sigma = gamma_length_above(u, &Functorial::sigma_fitting(sigma), top, bottom, max_steps)?;
    let mut lambda_p = BTreeMap::new();
    for &p in primes {
        lambda_p.insert(p, lambda_above(u, p, top, bottom, max_steps)?);
    }
    let lambda = match lambda_p.get(&2) {
        Some(&l) => l,
        None => lambda_above(u, 2, top, bottom, max_steps)?,
    };
    Ok(NamedLengths {
        h,
        h_star,
        l_sigma,
        lambda_p,
        lambda,
    })
}

// ----- whole-group wrappers -----

pub fn fitting_radical(g: &PermutationGroup, class: &FittingClass, limits: &Limits) -> Result<PermutationGroup> {
    let u = Universe::new(g, limits)?;
    Ok(u.to_group(&radical_above(&u, class, &u.whole(), &u.trivial())))
}

pub fn generalized_fitting(g: &PermutationGroup, limits: &Limits) -> Result<PermutationGroup> {
    Functorial::Fstar.eval(g, limits)
}

pub fn upper_product(outer: Functorial, inner: Functorial) -> Functorial {
    outer.then(inner)
}

pub fn gamma_series(
    g: &PermutationGroup,
    gamma: &Functorial,
    max_steps: usize,
    limits: &Limits,
) -> Result<GammaSeries<PermutationGroup>> {
    if max_steps == 0 {
        return Err(Error::InvalidInput("max_steps must be at least 1".into()));
    }
    let u = Universe::new(g, limits)?;
    let s = gamma_series_above(&u, gamma, &u.whole(), &u.trivial(), max_steps)?;
    Ok(GammaSeries {
        terms: s.terms.iter().map(|t| u.to_group(t)).collect(),
        length: s.length,
        stalled_at: s.stalled_at,
    })
}

pub fn named_lengths(
    g: &PermutationGroup,
    sigma: &SigmaPartition,
    primes: &[u64],
    limits: &Limits,
) -> Result<NamedLengths> {
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let u = Universe::new(g, limits)?;
    named_lengths_above(&u, &u.whole(), &u.trivial(), sigma, primes, limits.max_steps)
}
