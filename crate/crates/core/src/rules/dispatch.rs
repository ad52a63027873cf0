use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    conjunctive, dempster, dubois_prade, pcr5, pcr6, pcr6_f, pcr6_g, weighted_redistribution, yager, ConflictReport,
    RedistributionWeights, ShapingFunction,
};
use crate::algebra::MassFunction;
use crate::error::{Error, Result};

/// Combination rule identifiers, as accepted on the command line and in
/// configuration files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "conjunctive")]
    Conjunctive,
    #[serde(rename = "dempster")]
    Dempster,
    #[serde(rename = "yager")]
    Yager,
    #[serde(rename = "dubois_prade")]
    DuboisPrade,
    #[serde(rename = "weighted")]
    Weighted,
    #[serde(rename = "pcr5")]
    Pcr5,
    #[serde(rename = "pcr6")]
    Pcr6,
    #[serde(rename = "pcr6_f")]
    Pcr6F,
    #[serde(rename = "pcr6_g")]
    Pcr6G,
    #[serde(rename = "hedging")]
    Hedging,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::Conjunctive,
        Rule::Dempster,
        Rule::Yager,
        Rule::DuboisPrade,
        Rule::Weighted,
        Rule::Pcr5,
        Rule::Pcr6,
        Rule::Pcr6F,
        Rule::Pcr6G,
        Rule::Hedging,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Conjunctive => "conjunctive",
            Rule::Dempster => "dempster",
            Rule::Yager => "yager",
            Rule::DuboisPrade => "dubois_prade",
            Rule::Weighted => "weighted",
            Rule::Pcr5 => "pcr5",
            Rule::Pcr6 => "pcr6",
            Rule::Pcr6F => "pcr6_f",
            Rule::Pcr6G => "pcr6_g",
            Rule::Hedging => "hedging",
        }
    }

    /// Whether the rule leaves mass on ∅.
    pub fn is_open_world(self) -> bool {
        self == Rule::Conjunctive
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::UnknownRule(s.to_string()))
    }
}

/// Rule-specific parameters.
#[derive(Clone, Debug, Default)]
pub struct CombineOptions {
    /// Required by `weighted`.
    pub weights: Option<RedistributionWeights>,
    /// Required by `pcr6_f` and `pcr6_g`.
    pub shaper: Option<ShapingFunction>,
}

impl CombineOptions {
    pub fn with_weights(weights: RedistributionWeights) -> Self {
        CombineOptions {
            weights: Some(weights),
            ..Default::default()
        }
    }

    pub fn with_shaper(shaper: ShapingFunction) -> Self {
        CombineOptions {
            shaper: Some(shaper),
            ..Default::default()
        }
    }

    fn shaper(&self, rule: Rule) -> Result<&ShapingFunction> {
        self.shaper.as_ref().ok_or_else(|| Error::MissingOption {
            rule: rule.id().into(),
            option: "shaper".into(),
        })
    }
}

/// A combined mass function together with the conflict diagnostics of the
/// underlying conjunctive combination.
#[derive(Clone, Debug)]
pub struct Combination {
    pub rule: Rule,
    pub mass: MassFunction,
    pub conflict: ConflictReport,
}

/// Combines `sources` with the named rule.
///
/// For `hedging` the returned mass lives on the frame extended by `e`.
pub fn combine(rule: Rule, sources: &[MassFunction], options: &CombineOptions) -> Result<Combination> {
    let (conj, conflict) = conjunctive(sources)?;
    let mass = match rule {
        Rule::Conjunctive => conj,
        Rule::Dempster => dempster(sources)?,
        Rule::Yager => yager(sources)?,
        Rule::DuboisPrade => dubois_prade(sources)?,
        Rule::Weighted => {
            let weights = options.weights.as_ref().ok_or_else(|| Error::MissingOption {
                rule: rule.id().into(),
                option: "weights".into(),
            })?;
            weighted_redistribution(sources, weights)?
        }
        Rule::Pcr5 => pcr5(sources)?,
        Rule::Pcr6 => pcr6(sources)?,
        Rule::Pcr6F => pcr6_f(sources, options.shaper(rule)?)?,
        Rule::Pcr6G => pcr6_g(sources, options.shaper(rule)?)?,
        Rule::Hedging => conj.hedge()?.into_mass(),
    };
    Ok(Combination { rule, mass, conflict })
}

/// Dynamic fusion: combines the sources pairwise, left to right.
///
/// Only the conjunctive, Dempster and Yager rules are associative; for the
/// redistribution rules the result depends on the order of the stream.
pub fn fold_sequential(rule: Rule, sources: &[MassFunction], options: &CombineOptions) -> Result<MassFunction> {
    if rule == Rule::Hedging {
        return Err(Error::InvalidArgument(
            "hedging changes the frame and cannot be folded".into(),
        ));
    }
    let (first, rest) = sources.split_first().ok_or(Error::EmptySourceList)?;
    rest.iter().try_fold(first.clone(), |acc, next| {
        combine(rule, &[acc, next.clone()], options).map(|c| c.mass)
    })
}
