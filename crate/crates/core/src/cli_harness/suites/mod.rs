//! Named verification suites. Every suite is deterministic in its seed; work is
//! spread over a thread pool but results are gathered in a fixed order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::report::SuiteReport;

mod braidings;
mod fk;
mod groups;
mod lemmas;

pub use braidings::q_screen_oracle;
pub use lemmas::in_listed_exceptions;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    GroupLaws,
    RackAxioms,
    Juxtaposition,
    TypeDLemmas,
    Classification,
    YdBraidings,
    Screens,
    FkDims,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::GroupLaws,
        Suite::RackAxioms,
        Suite::Juxtaposition,
        Suite::TypeDLemmas,
        Suite::Classification,
        Suite::YdBraidings,
        Suite::Screens,
        Suite::FkDims,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::GroupLaws => "group_laws",
            Suite::RackAxioms => "rack_axioms",
            Suite::Juxtaposition => "juxtaposition",
            Suite::TypeDLemmas => "type_d_lemmas",
            Suite::Classification => "classification",
            Suite::YdBraidings => "yd_braidings",
            Suite::Screens => "screens",
            Suite::FkDims => "fk_dims",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Overrides for a suite run; `None` keeps the suite's default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteParams {
    pub seed: u64,
    pub samples: Option<u64>,
    pub max_rank: Option<usize>,
    pub budget: Option<u64>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { seed: DEFAULT_SEED, samples: None, max_rank: None, budget: None }
    }
}

/// Resolved parameters, recorded in the report.
struct Resolved {
    values: BTreeMap<String, u64>,
}

impl Resolved {
    fn new() -> Self {
        Resolved { values: BTreeMap::new() }
    }

    fn take(&mut self, key: &str, given: Option<u64>, default: u64) -> u64 {
        let v = given.unwrap_or(default);
        self.values.insert(key.to_string(), v);
        v
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut res = Resolved::new();
    let rank = params.max_rank.map(|r| r as u64);
    let checks = match suite {
        Suite::GroupLaws => {
            let samples = res.take("samples", params.samples, 100_000);
            let max_rank = res.take("max_rank", rank, 8) as usize;
            groups::group_laws(samples, max_rank, &mut rng)?
        }
        Suite::RackAxioms => {
            let samples = res.take("samples", params.samples, 100_000);
            let max_rank = res.take("max_rank", rank, 8) as usize;
            groups::rack_axioms(samples, max_rank, &mut rng)?
        }
        Suite::Juxtaposition => {
            let samples = res.take("samples", params.samples, 20_000);
            let max_rank = res.take("max_rank", rank, 6) as usize;
            groups::juxtaposition(samples, max_rank, &mut rng)?
        }
        Suite::TypeDLemmas => {
            let budget = res.take("budget", params.budget, crate::typed_classifier::DEFAULT_SEARCH_BUDGET);
            lemmas::type_d_lemmas(budget)?
        }
        Suite::Classification => {
            let budget = res.take("budget", params.budget, crate::typed_classifier::DEFAULT_SEARCH_BUDGET);
            lemmas::classification(budget)?
        }
        Suite::YdBraidings => {
            let budget = res.take("budget", params.budget, crate::yd_nichols::DEFAULT_WORD_BUDGET);
            braidings::yd_braidings(budget, &mut rng)?
        }
        Suite::Screens => braidings::q_checks()?,
        Suite::FkDims => {
            let budget = res.take("budget", params.budget, crate::fk_quadratic::DEFAULT_FK_BUDGET);
            let max_rank = res.take("max_rank", rank, 4) as usize;
            fk::fk_dims(max_rank, budget)?
        }
    };
    Ok(SuiteReport::new(suite.name(), params.seed, res.values, checks))
}
