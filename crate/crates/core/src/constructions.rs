//! Word families and congruences used as proof objects: the `X_{S,T}` words,
//! threshold block signatures over `{a,b}`, and prefix-encoded boolean
//! circuits.

use serde::Serialize;

use crate::alphabet::{Alphabet, Word};
use crate::regex::Regex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XstParams {
    pub r: usize,
    pub s: usize,
    pub big_s: usize,
    pub big_t: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("parameter {0} must be at least 1")]
    ZeroParameter(&'static str),
    #[error("letter {0} is not in {{a,b}}")]
    NotBinary(usize),
    #[error("threshold must be at least 1")]
    ZeroThreshold,
    #[error("not a circuit encoding: {0}")]
    NotCircuit(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XstWords {
    pub alphabet: Alphabet,
    pub v: Word,
    pub bold_a: Word,
    pub bold_b: Word,
    pub x: Word,
}

impl XstParams {
    fn check(&self) -> Result<(), ConstructionError> {
        for (name, v) in [("r", self.r), ("s", self.s), ("S", self.big_s), ("T", self.big_t)] {
            if v == 0 {
                return Err(ConstructionError::ZeroParameter(name));
            }
        }
        Ok(())
    }

    /// `a1..ar, b1..bs, c1..c(2r+2s)` in that order.
    pub fn alphabet(&self) -> Alphabet {
        let names = (1..=self.r)
            .map(|i| format!("a{i}"))
            .chain((1..=self.s).map(|j| format!("b{j}")))
            .chain((1..=2 * (self.r + self.s)).map(|k| format!("c{k}")));
        Alphabet::new(names).expect("generated names are distinct")
    }

    fn a(&self, i: usize) -> usize {
        i - 1
    }

    fn b(&self, j: usize) -> usize {
        self.r + j - 1
    }

    fn c(&self, k: usize) -> usize {
        self.r + self.s + k - 1
    }
}

/// `v = Π c_{2i-1} a_i c_{2i} · Π c_{2r+2j-1} b_j c_{2r+2j}`,
/// `X = (v^S a v^S b v^S)^T` with `a = a1..ar`, `b = b1..bs`.
///
/// Note: `v` is sometimes written with the `b` product over `j = r+1..s`,
/// which is empty or ill-formed when `s <= r`; the explicit c-indexed form
/// above is the one implemented.
pub fn xst_words(p: XstParams) -> Result<XstWords, ConstructionError> {
    p.check()?;
    let mut v = Vec::with_capacity(3 * (p.r + p.s));
    for i in 1..=p.r {
        v.extend([p.c(2 * i - 1), p.a(i), p.c(2 * i)]);
    }
    for j in 1..=p.s {
        v.extend([p.c(2 * p.r + 2 * j - 1), p.b(j), p.c(2 * p.r + 2 * j)]);
    }
    let v = Word(v);
    let bold_a = Word((1..=p.r).map(|i| p.a(i)).collect());
    let bold_b = Word((1..=p.s).map(|j| p.b(j)).collect());
    let vs = v.repeat(p.big_s);
    let period = vs.concat(&bold_a).concat(&vs).concat(&bold_b).concat(&vs);
    Ok(XstWords {
        alphabet: p.alphabet(),
        x: period.repeat(p.big_t),
        v,
        bold_a,
        bold_b,
    })
}

impl XstWords {
    /// Checks that `x` is `T` periods, each `v^S a v^S b v^S`.
    pub fn has_r_word_shape(&self, p: XstParams) -> bool {
        let mut rest: &[usize] = &self.x;
        let eat = |part: &[usize], rest: &mut &[usize]| -> bool {
            match rest.strip_prefix(part) {
                Some(r) => {
                    *rest = r;
                    true
                }
                None => false,
            }
        };
        for _ in 0..p.big_t {
            for piece in [Some(&self.bold_a), Some(&self.bold_b), None] {
                for _ in 0..p.big_s {
                    if !eat(&self.v, &mut rest) {
                        return false;
                    }
                }
                if let Some(bold) = piece {
                    if !eat(bold, &mut rest) {
                        return false;
                    }
                }
            }
        }
        rest.is_empty()
    }
}

/// A count capped at a threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Capped {
    pub value: usize,
    pub at_least: bool,
}

impl Capped {
    pub fn new(value: usize, threshold: usize) -> Capped {
        Capped {
            value: value.min(threshold),
            at_least: value >= threshold,
        }
    }
}

/// Threshold signature of a word over `{a,b}` (letters 0 and 1).
///
/// Sub-blocks are the maximal single-letter runs. They are paired from the
/// right into blocks `x^k y^l`, where `y` is the last letter; the leftmost
/// block may lack its `x` part (`k = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockSignature {
    pub threshold: usize,
    pub last_letter: Option<usize>,
    pub block_count: Capped,
    /// Blocks 1..=min(count, T), rightmost first, as `(k, l)`.
    pub blocks: Vec<(Capped, Capped)>,
    /// Whether blocks exist beyond those listed. Without this bit, words
    /// with exactly `T` blocks and with more are identified, and the
    /// relation is not preserved by left multiplication.
    pub truncated: bool,
}

impl BlockSignature {
    /// Equality on every field except `truncated`.
    pub fn coarse_eq(&self, other: &BlockSignature) -> bool {
        self.threshold == other.threshold
            && self.last_letter == other.last_letter
            && self.block_count == other.block_count
            && self.blocks == other.blocks
    }
}

pub fn block_signature(w: &[usize], threshold: usize) -> Result<BlockSignature, ConstructionError> {
    if threshold == 0 {
        return Err(ConstructionError::ZeroThreshold);
    }
    if let Some(&l) = w.iter().find(|&&l| l > 1) {
        return Err(ConstructionError::NotBinary(l));
    }
    let mut runs: Vec<usize> = Vec::new();
    for (i, &l) in w.iter().enumerate() {
        if i > 0 && w[i - 1] == l {
            *runs.last_mut().expect("run started") += 1;
        } else {
            runs.push(1);
        }
    }
    runs.reverse();
    let count = runs.len().div_ceil(2);
    let blocks = runs
        .chunks(2)
        .take(threshold)
        .map(|pair| {
            let l = pair[0];
            let k = pair.get(1).copied().unwrap_or(0);
            (Capped::new(k, threshold), Capped::new(l, threshold))
        })
        .collect();
    Ok(BlockSignature {
        threshold,
        last_letter: w.last().copied(),
        block_count: Capped::new(count, threshold),
        blocks,
        truncated: count > threshold,
    })
}

/// `{0, 1, g1, .., gm}`; `gi` is an OR gate for odd `i`, AND for even.
pub fn circuit_alphabet(m: usize) -> Alphabet {
    let names = ["0".to_string(), "1".to_string()]
        .into_iter()
        .chain((1..=m).map(|i| format!("g{i}")));
    Alphabet::new(names).expect("generated names are distinct")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitLangs {
    pub alphabet: Alphabet,
    pub c: Regex,
    pub t: Regex,
}

/// Regexes for the depth-`m` circuits and the true ones.
pub fn circuit_langs(m: usize) -> Result<CircuitLangs, ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::ZeroParameter("m"));
    }
    let gate = |i: usize| Regex::letter(i + 1);
    let bits = Regex::letter(0).union(Regex::letter(1));
    let mut c = gate(1).concat(bits.clone().plus());
    let mut t = Regex::concat_all([gate(1), bits.clone().star(), Regex::letter(1), bits.star()]);
    for i in 2..=m {
        let next_c = gate(i).concat(c.clone().plus());
        t = if i % 2 == 0 {
            gate(i).concat(t.plus())
        } else {
            Regex::concat_all([gate(i), c.clone().star(), t, c.clone().star()])
        };
        c = next_c;
    }
    Ok(CircuitLangs {
        alphabet: circuit_alphabet(m),
        c,
        t,
    })
}

/// Value of a prefix-encoded circuit over [`circuit_alphabet`]; the top
/// gate fixes the depth.
pub fn circuit_eval(w: &[usize]) -> Result<bool, ConstructionError> {
    let top = match w.first() {
        Some(&l) if l >= 2 => l - 1,
        _ => return Err(ConstructionError::NotCircuit("must start with a gate".into())),
    };
    let mut pos = 0;
    let v = eval_gate(w, &mut pos, top)?;
    if pos != w.len() {
        return Err(ConstructionError::NotCircuit(format!("trailing input at {}", pos + 1)));
    }
    Ok(v)
}

fn eval_gate(w: &[usize], pos: &mut usize, depth: usize) -> Result<bool, ConstructionError> {
    if w.get(*pos) != Some(&(depth + 1)) {
        return Err(ConstructionError::NotCircuit(format!(
            "expected g{depth} at {}",
            *pos + 1
        )));
    }
    *pos += 1;
    let mut inputs = Vec::new();
    if depth == 1 {
        while let Some(&l) = w.get(*pos).filter(|&&l| l < 2) {
            inputs.push(l == 1);
            *pos += 1;
        }
    } else {
        while w.get(*pos) == Some(&depth) {
            inputs.push(eval_gate(w, pos, depth - 1)?);
        }
    }
    if inputs.is_empty() {
        return Err(ConstructionError::NotCircuit(format!("g{depth} without inputs")));
    }
    Ok(if depth % 2 == 1 {
        inputs.iter().any(|&b| b)
    } else {
        inputs.iter().all(|&b| b)
    })
}
