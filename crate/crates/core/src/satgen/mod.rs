//! Satisfiability tooling: the corridor-tiling encoder, the threshold
//! reduction and a bounded model search.

pub mod threshold;
pub mod tiling;

use rayon::prelude::*;

use crate::alphabet::{Alphabet, Word};
use crate::fo2::{EvalError, Fo2};

pub use threshold::{reduce_th_to_bet, GlobalCounter, ReductionError, ThReduction};
pub use tiling::{
    encode_tiling, solve_tiling, tiling_witness, TilingEncoding, TilingError, TilingInstance,
    TilingSolution,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SatOptions {
    /// Evaluate each length in parallel; the result is still the first
    /// witness in length-lexicographic order.
    pub parallel: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0} words of length {1} are too many to enumerate")]
    TooMany(u128, usize),
}

fn word_at(index: u64, len: usize, k: u64) -> Vec<usize> {
    let mut w = vec![0usize; len];
    let mut rest = index;
    for slot in w.iter_mut().rev() {
        *slot = (rest % k) as usize;
        rest /= k;
    }
    w
}

/// Top-level conjuncts, checked in order so that a failing one stops the
/// evaluation early.
fn conjuncts(f: &Fo2) -> Vec<&Fo2> {
    match f {
        Fo2::And(items) => items.iter().flat_map(conjuncts).collect(),
        other => vec![other],
    }
}

/// First word of length `<= max_len` (by length, then lexicographically)
/// satisfying the sentence `f`. Returned witnesses are re-checked against
/// the whole sentence.
pub fn bounded_sat(f: &Fo2, alphabet: &Alphabet, max_len: usize) -> Result<Option<Word>, SatError> {
    bounded_sat_with(f, alphabet, max_len, SatOptions::default())
}

pub fn bounded_sat_with(
    f: &Fo2,
    alphabet: &Alphabet,
    max_len: usize,
    opts: SatOptions,
) -> Result<Option<Word>, SatError> {
    if !f.is_sentence() {
        return Err(EvalError::NotSentence.into());
    }
    let parts = conjuncts(f);
    let sat = |w: &[usize]| -> bool {
        parts
            .iter()
            .all(|c| c.eval(w, Default::default()).expect("sentence"))
    };
    let k = alphabet.len() as u64;
    for len in 0..=max_len {
        let total = (k as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        if total > u64::MAX as u128 {
            return Err(SatError::TooMany(total, len));
        }
        let total = total as u64;
        let found = if opts.parallel {
            (0..total)
                .into_par_iter()
                .map(|i| word_at(i, len, k))
                .find_first(|w| sat(w))
        } else {
            (0..total).map(|i| word_at(i, len, k)).find(|w| sat(w))
        };
        if let Some(w) = found {
            assert!(f.holds(&w)?, "witness failed re-verification");
            return Ok(Some(Word(w)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo2::ab_star_sentence;

    #[test]
    fn golden_examples() {
        let a = Alphabet::from_chars("ab").unwrap();
        let f = Fo2::parse("Ex. a(x)", &a).unwrap();
        assert_eq!(bounded_sat(&f, &a, 3).unwrap(), Some(a.parse_word("a").unwrap()));
        let f = Fo2::parse("Ex. (b(x) & Ey. (y < x & b(y)))", &a).unwrap();
        assert_eq!(bounded_sat(&f, &a, 3).unwrap(), Some(a.parse_word("bb").unwrap()));
        let contra = Fo2::parse("Ex.(a(x) & !a(x))", &a).unwrap();
        assert_eq!(bounded_sat(&contra, &a, 5).unwrap(), None);
        let ab = Fo2::and([ab_star_sentence(0, 1, 2), Fo2::parse("Ex. T", &a).unwrap()]);
        for parallel in [false, true] {
            let got = bounded_sat_with(&ab, &a, 6, SatOptions { parallel }).unwrap();
            assert_eq!(got, Some(a.parse_word("ab").unwrap()));
        }
        let open = Fo2::parse("a(x)", &a).unwrap();
        assert!(bounded_sat(&open, &a, 2).is_err());
        let empty_ok = Fo2::parse("Ax. a(x)", &a).unwrap();
        assert_eq!(bounded_sat(&empty_ok, &a, 2).unwrap(), Some(Word::empty()));
    }

    #[test]
    fn reduction_found_by_search() {
        let a = Alphabet::from_chars("ab").unwrap();
        let f = Fo2::parse("Ex. Ey. bet(a,2,x,y)", &a).unwrap();
        let src = bounded_sat(&f, &a, 12).unwrap().unwrap();
        assert_eq!(a.format_word(&src), "aaaa");
        let red = reduce_th_to_bet(&f, &a).unwrap();
        let opts = SatOptions { parallel: true };
        let got = bounded_sat_with(&red.formula, &red.alphabet, 12, opts).unwrap().unwrap();
        assert_eq!(red.project(&got), src.0);
        assert_eq!(got.0, red.lift(&src));
    }
}
