use serde::{Deserialize, Serialize};

use super::local::semigroup_criterion;
use super::{FiniteMonoid, Monoid};
use crate::alphabet::Alphabet;
use crate::dfa::Dfa;
use crate::regex::Regex;

/// Monoid size above which callers should warn; `BETWIXT_MAX_MONOID`
/// overrides it.
pub const DEFAULT_MAX_MONOID: usize = 5000;

pub const NECESSARY_ONLY: &str =
    "yes (necessary condition holds; sufficiency proven only for |A|=2)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    #[serde(rename = "FO")]
    pub fo: String,
    #[serde(rename = "FO2")]
    pub fo2: String,
    #[serde(rename = "FO2suc")]
    pub fo2suc: String,
    #[serde(rename = "FO2bet")]
    pub fo2bet: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefinabilityReport {
    pub regex: String,
    pub alphabet: Alphabet,
    pub dfa_states: usize,
    pub monoid_size: usize,
    pub aperiodic: bool,
    #[serde(rename = "in_DA")]
    pub in_da: bool,
    #[serde(rename = "in_MeDA")]
    pub in_me_da: bool,
    pub fo2suc: bool,
    pub verdicts: Verdicts,
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

pub fn definability_report(regex: &Regex, alphabet: &Alphabet) -> DefinabilityReport {
    let dfa = Dfa::from_regex(regex, alphabet);
    let m = FiniteMonoid::syntactic(&dfa);
    let aperiodic = m.is_aperiodic();
    let in_da = m.is_in_da();
    let in_me_da = m.is_in_me_da();
    let fo2suc = semigroup_criterion(&m);
    let fo2bet = if !in_me_da {
        "no".to_string()
    } else if alphabet.len() <= 2 {
        "yes".to_string()
    } else {
        NECESSARY_ONLY.to_string()
    };
    DefinabilityReport {
        regex: regex.to_text(alphabet),
        alphabet: alphabet.clone(),
        dfa_states: dfa.states(),
        monoid_size: m.size(),
        aperiodic,
        in_da,
        in_me_da,
        fo2suc,
        verdicts: Verdicts {
            fo: yes_no(aperiodic),
            fo2: yes_no(in_da),
            fo2suc: yes_no(fo2suc),
            fo2bet,
        },
    }
}

/// Warning text when a monoid exceeds the configured cap.
pub fn size_warning(size: usize) -> Option<String> {
    let cap = std::env::var("BETWIXT_MAX_MONOID")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_MONOID);
    (size > cap).then(|| {
        format!("warning: syntactic monoid has {size} elements (cap {cap}); quadratic checks may be slow")
    })
}
