#![allow(dead_code)]

use std::collections::BTreeSet;

use betwixt::fo2::{Fo2, Var};
use betwixt::Regex;
use proptest::prelude::*;

/// Random regexes over `letters` letters.
pub fn regex(letters: usize) -> impl Strategy<Value = Regex> {
    let leaf = prop_oneof![
        1 => Just(Regex::Empty),
        1 => Just(Regex::Epsilon),
        6 => (0..letters).prop_map(Regex::letter),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.union(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.concat(b)),
            inner.clone().prop_map(Regex::star),
            inner.prop_map(Regex::plus),
        ]
    })
}

/// End positions of matches of `r` in `w` starting at `start`. Written
/// directly on the syntax tree, independent of the automaton code.
pub fn match_ends(r: &Regex, w: &[usize], start: usize) -> BTreeSet<usize> {
    match r {
        Regex::Empty => BTreeSet::new(),
        Regex::Epsilon => BTreeSet::from([start]),
        Regex::Letter(a) => {
            if w.get(start) == Some(a) {
                BTreeSet::from([start + 1])
            } else {
                BTreeSet::new()
            }
        }
        Regex::Union(a, b) => {
            let mut s = match_ends(a, w, start);
            s.extend(match_ends(b, w, start));
            s
        }
        Regex::Concat(a, b) => match_ends(a, w, start)
            .into_iter()
            .flat_map(|m| match_ends(b, w, m))
            .collect(),
        Regex::Star(a) => {
            let mut seen = BTreeSet::from([start]);
            let mut todo = vec![start];
            while let Some(p) = todo.pop() {
                for q in match_ends(a, w, p) {
                    if seen.insert(q) {
                        todo.push(q);
                    }
                }
            }
            seen
        }
        Regex::Plus(a) => {
            let star = Regex::Star(a.clone());
            match_ends(a, w, start)
                .into_iter()
                .flat_map(|m| match_ends(&star, w, m))
                .collect()
        }
    }
}

pub fn regex_matches(r: &Regex, w: &[usize]) -> bool {
    match_ends(r, w, 0).contains(&w.len())
}

fn var() -> impl Strategy<Value = Var> {
    prop_oneof![Just(Var::X), Just(Var::Y)]
}

/// Random FO² formulas over `letters` letters with thresholds up to
/// `max_k`; free variables are unrestricted.
pub fn fo2(letters: usize, max_k: u64) -> impl Strategy<Value = Fo2> {
    let leaf = prop_oneof![
        (0..letters, var()).prop_map(|(a, v)| Fo2::Letter(a, v)),
        (0..letters, 1..=max_k, var()).prop_map(|(a, k, u)| Fo2::bet(a, k, u, u.other())),
        var().prop_map(|u| Fo2::Less(u, u.other())),
        var().prop_map(|u| Fo2::Succ(u, u.other())),
        Just(Fo2::Equal(Var::X, Var::Y)),
        Just(Fo2::True),
    ];
    leaf.prop_recursive(4, 20, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Fo2::not),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Fo2::And),
            prop::collection::vec(inner.clone(), 2..3).prop_map(Fo2::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Fo2::implies(a, b)),
            (var(), inner.clone()).prop_map(|(v, b)| Fo2::exists(v, b)),
            (var(), inner).prop_map(|(v, b)| Fo2::forall(v, b)),
        ]
    })
}

/// Closes a formula by quantifying its free variables existentially.
pub fn close(f: Fo2) -> Fo2 {
    f.free_vars()
        .into_iter()
        .fold(f, |acc, v| Fo2::exists(v, acc))
}

pub fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..letters).map(move |a| {
                    let mut x = w.clone();
                    x.push(a);
                    x
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}
