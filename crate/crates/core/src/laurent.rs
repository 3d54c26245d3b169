//! Expansion of cluster variables in an initial cluster and a bounded check
//! of the Laurent phenomenon.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::base_budget;
use crate::error::Result;
use crate::mutation::{mutate, mutate_word};
use crate::poly::RationalFn;
use crate::seed::LPSeed;

/// Expansion of the `i`-th cluster variable of `μ_w(s0)` in the variables of `s0`.
pub fn expand_in_initial(s0: &LPSeed, word: &[usize], i: usize) -> Result<RationalFn> {
    let s = mutate_word(&s0.as_root(), word)?;
    s.expansions().get(i).cloned().ok_or_else(|| crate::Error::Domain(format!("variable index {} out of range", i + 1)))
}

#[derive(Clone, Debug, Serialize)]
pub struct VariableVerdict {
    pub var: String,
    pub expansion: String,
    pub laurent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpansionReport {
    /// 1-based directions.
    pub word: Vec<usize>,
    pub variables: Vec<VariableVerdict>,
}

impl ExpansionReport {
    pub fn all_laurent(&self) -> bool {
        self.variables.iter().all(|v| v.laurent)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LaurentCheck {
    pub max_len: usize,
    pub words_checked: usize,
    pub truncated: bool,
    pub all_laurent: bool,
    pub reports: Vec<ExpansionReport>,
}

impl LaurentCheck {
    pub fn witnesses(&self) -> impl Iterator<Item = (&[usize], &VariableVerdict)> {
        self.reports.iter().flat_map(|r| r.variables.iter().filter(|v| !v.laurent).map(move |v| (r.word.as_slice(), v)))
    }
}

fn report(s: &LPSeed, word: &[usize]) -> ExpansionReport {
    let variables = (0..s.rank())
        .map(|i| {
            let e = &s.expansions()[i];
            VariableVerdict { var: s.name(i).to_string(), expansion: s.format_root(e), laurent: e.is_laurent() }
        })
        .collect();
    ExpansionReport { word: word.iter().map(|k| k + 1).collect(), variables }
}

/// Every word of length at most `max_len` without immediate repeats, expanded
/// in the initial cluster. Words are walked depth first so prefixes are shared;
/// the subtrees below each first letter run in parallel.
pub fn check_laurent_phenomenon(s0: &LPSeed, max_len: usize) -> Result<LaurentCheck> {
    let root = s0.as_root();
    let n = root.rank();
    let budget = base_budget() as usize;
    let mut reports = vec![report(&root, &[])];
    let subtrees: Vec<Result<(Vec<ExpansionReport>, bool)>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut out = Vec::new();
            let mut truncated = false;
            if max_len > 0 {
                let s = mutate(&root, k)?;
                walk(&s, &mut vec![k], max_len, n, budget / n.max(1) + 1, &mut out, &mut truncated)?;
            }
            Ok((out, truncated))
        })
        .collect();
    let mut truncated = false;
    for r in subtrees {
        let (out, t) = r?;
        reports.extend(out);
        truncated |= t;
    }
    let all_laurent = reports.iter().all(ExpansionReport::all_laurent);
    Ok(LaurentCheck { max_len, words_checked: reports.len(), truncated, all_laurent, reports })
}

fn walk(
    s: &LPSeed,
    word: &mut Vec<usize>,
    max_len: usize,
    n: usize,
    budget: usize,
    out: &mut Vec<ExpansionReport>,
    truncated: &mut bool,
) -> Result<()> {
    if out.len() >= budget {
        *truncated = true;
        return Ok(());
    }
    out.push(report(s, word));
    if word.len() == max_len {
        return Ok(());
    }
    let last = *word.last().expect("nonempty word");
    for k in (0..n).filter(|&k| k != last) {
        let next = mutate(s, k)?;
        word.push(k);
        walk(&next, word, max_len, n, budget, out, truncated)?;
        word.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex26() -> LPSeed {
        LPSeed::from_strings(&["a", "b", "c"], &[], &["b+1", "a+c", "b+1"]).unwrap()
    }

    #[test]
    fn expansions_of_running_example() {
        let s = ex26();
        let names = ["a", "b", "c"];
        assert_eq!(expand_in_initial(&s, &[0], 0).unwrap().format(&names), "(b + 1)/(a*c)");
        assert_eq!(expand_in_initial(&s, &[], 1).unwrap().format(&names), "b");
        assert_eq!(expand_in_initial(&s, &[0, 0], 0).unwrap().format(&names), "a");
        let e = expand_in_initial(&s, &[0, 1, 0], 1).unwrap();
        assert!(e.is_laurent());
    }

    #[test]
    fn short_words_are_laurent() {
        let c = check_laurent_phenomenon(&ex26(), 3).unwrap();
        assert!(c.all_laurent);
        assert_eq!(c.words_checked, 1 + 3 + 6 + 12);
        let c0 = check_laurent_phenomenon(&ex26(), 0).unwrap();
        assert_eq!(c0.words_checked, 1);
    }
}
