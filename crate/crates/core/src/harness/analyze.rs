//! A readable report of every length and radical of one group.

use serde::Serialize;

use super::corpus::GroupSpec;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::formations::{n_lengths_of_residual, residual_in, Formation, NLengths};
use crate::radicals::{named_lengths_above, Functorial, NamedLengths};
use crate::structure::section::chief_series_above;
use crate::structure::{chief_factor, predicates_in, ChiefFactor, PredicateReport, SigmaPartition};
use crate::universe::{Sub, Universe};

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupSummary {
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualSummary {
    pub formation: Formation,
    pub residual: SubgroupSummary,
    #[serde(flatten)]
    pub lengths: NLengths,
}

/// A field that could not be computed within the caps.
#[derive(Clone, Debug, Serialize)]
pub struct SkippedField {
    pub field: String,
    pub cap: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub degree: usize,
    pub order: u128,
    pub sigma: SigmaPartition,
    pub primes: Vec<u64>,
    pub chief_factors: Option<Vec<ChiefFactor>>,
    pub unique_chief_series: Option<bool>,
    pub predicates: Option<PredicateReport>,
    pub fitting: Option<SubgroupSummary>,
    pub generalized_fitting: Option<SubgroupSummary>,
    pub sigma_fitting: Option<SubgroupSummary>,
    pub soluble_radical: Option<SubgroupSummary>,
    pub lengths: Option<NamedLengths>,
    pub residuals: Vec<ResidualSummary>,
    pub skipped: Vec<SkippedField>,
}

fn summary(u: &Universe, s: &Sub) -> SubgroupSummary {
    SubgroupSummary {
        order: s.order,
        generators: u.to_group(s).generator_strings(),
    }
}

fn cap_of(e: Error) -> Result<String> {
    match e {
        Error::CapExceeded { cap, .. } => Ok(cap.to_string()),
        Error::MaxSteps(n) => Ok(format!("max steps {n}")),
        other => Err(other),
    }
}

pub fn analyze(
    spec: &GroupSpec,
    sigma: &SigmaPartition,
    primes: &[u64],
    formations: &[Formation],
    limits: &Limits,
) -> Result<AnalysisReport> {
    for &p in primes {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    let g = spec.group()?;
    let mut report = AnalysisReport {
        name: spec.name.clone(),
        degree: g.degree(),
        order: g.order(),
        sigma: sigma.clone(),
        primes: primes.to_vec(),
        chief_factors: None,
        unique_chief_series: None,
        predicates: None,
        fitting: None,
        generalized_fitting: None,
        sigma_fitting: None,
        soluble_radical: None,
        lengths: None,
        residuals: Vec::new(),
        skipped: Vec::new(),
    };
    let u = match Universe::new(&g, limits) {
        Ok(u) => u,
        Err(e) => {
            report.skipped.push(SkippedField {
                field: "all".into(),
                cap: cap_of(e)?,
            });
            return Ok(report);
        }
    };
    let whole = u.whole();
    let one = u.trivial();
    let chief = chief_series_above(&u, &whole, &one);
    report.chief_factors = Some(chief.terms.windows(2).map(|t| chief_factor(&u, &t[1], &t[0])).collect());
    report.unique_chief_series = Some(chief.unique);
    report.predicates = Some(predicates_in(&u, &whole, &one, sigma, primes));
    let radical = |f: Functorial| summary(&u, &f.eval_above(&u, &whole, &one));
    report.fitting = Some(radical(Functorial::fitting()));
    report.generalized_fitting = Some(radical(Functorial::Fstar));
    report.sigma_fitting = Some(radical(Functorial::sigma_fitting(sigma)));
    report.soluble_radical = Some(radical(Functorial::soluble_radical()));
    match named_lengths_above(&u, &whole, &one, sigma, primes, limits.max_steps) {
        Ok(l) => report.lengths = Some(l),
        Err(e) => report.skipped.push(SkippedField {
            field: "lengths".into(),
            cap: cap_of(e)?,
        }),
    }
    for f in formations {
        let r = residual_in(&u, &whole, f, limits).and_then(|r| {
            let lengths = n_lengths_of_residual(&u, &r, sigma, limits.max_steps)?;
            Ok(ResidualSummary {
                formation: f.clone(),
                residual: summary(&u, &r),
                lengths,
            })
        });
        match r {
            Ok(s) => report.residuals.push(s),
            Err(e) => report.skipped.push(SkippedField {
                field: format!("residual {f}"),
                cap: cap_of(e)?,
            }),
        }
    }
    Ok(report)
}
