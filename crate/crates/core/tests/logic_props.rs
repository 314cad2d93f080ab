mod common;

use std::collections::HashMap;

use betwixt::fo2::{defined_language, Assignment, Fo2, Var};
use betwixt::games::word_classes;
use betwixt::tl::{ab_plus_formula, tl_to_fo2_sentence, Guard, Relation, ThresholdConstraint, Tl};
use betwixt::{Alphabet, Word};
use proptest::prelude::*;

fn word(max: usize, letters: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..letters, 1..=max)
}

fn guard() -> impl Strategy<Value = Guard> {
    let rel = prop_oneof![
        Just(Relation::Lt),
        Just(Relation::Le),
        Just(Relation::Gt),
        Just(Relation::Ge),
        Just(Relation::Eq),
    ];
    let atom = (prop::collection::btree_set(0usize..3, 0..=3), rel, 0u64..4)
        .prop_map(|(s, r, b)| Guard::Atom(ThresholdConstraint::new(s, r, b)));
    atom.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|g| Guard::Not(Box::new(g))),
            prop::collection::vec(inner.clone(), 1..3).prop_map(Guard::And),
            prop::collection::vec(inner, 1..3).prop_map(Guard::Or),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn renaming_variables(f in common::fo2(2, 3), w in word(6, 2), i in 1usize..7, j in 1usize..7) {
        prop_assume!(i <= w.len() && j <= w.len());
        let g = f.swap_vars();
        prop_assert_eq!(
            f.eval(&w, Assignment::xy(i, j)).unwrap(),
            g.eval(&w, Assignment::xy(j, i)).unwrap()
        );
    }

    #[test]
    fn thresholds_are_monotone(w in word(8, 2), k in 1u64..5, a in 0usize..2, i in 1usize..9, j in 1usize..9) {
        prop_assume!(i <= w.len() && j <= w.len());
        let asg = Assignment::xy(i, j);
        if Fo2::bet(a, k + 1, Var::X, Var::Y).eval(&w, asg).unwrap() {
            prop_assert!(Fo2::bet(a, k, Var::X, Var::Y).eval(&w, asg).unwrap());
        }
    }

    #[test]
    fn dnf_is_equivalent(g in guard(), w in word(7, 3), i in 1usize..8, j in 1usize..8) {
        prop_assume!(i < j && j <= w.len());
        let back = Guard::from_dnf(&g.dnf());
        prop_assert_eq!(g.sat(&w, i, j).unwrap(), back.sat(&w, i, j).unwrap());
    }

    #[test]
    fn languages_are_unions_of_classes(f in common::fo2(2, 1)) {
        let f = common::close(f);
        let k = f.quantifier_depth();
        prop_assume!(k <= 3);
        let a = Alphabet::from_chars("ab").unwrap();
        let words: Vec<Word> = a.words(8).collect();
        let lang = defined_language(&f, &a, 8).unwrap();
        let classes = word_classes(&words, &[1, 1], k);
        let mut verdict: HashMap<usize, bool> = HashMap::new();
        for (w, c) in words.iter().zip(classes) {
            let inside = lang.contains(w);
            prop_assert_eq!(*verdict.entry(c).or_insert(inside), inside);
        }
    }
}

#[test]
fn succ_is_definable() {
    let succ = Fo2::Succ(Var::X, Var::Y);
    let sugar = Fo2::succ_definable(Var::X, Var::Y, 3);
    for w in common::words(3, 8) {
        for x in 1..=w.len() {
            for y in 1..=w.len() {
                let asg = Assignment::xy(x, y);
                assert_eq!(succ.eval(&w, asg), sugar.eval(&w, asg));
            }
        }
    }
}

#[test]
fn eventually_and_next_sugar() {
    let a = Alphabet::from_chars("abc").unwrap();
    let body = Tl::Letter(1);
    let f = Tl::parse("F b", &a).unwrap();
    let x = Tl::parse("X b", &a).unwrap();
    for w in common::words(3, 6).into_iter().filter(|w| !w.is_empty()) {
        let fe = f.eval_all(&w);
        let xe = x.eval_all(&w);
        let explicit_f = Tl::future(Guard::Atom(ThresholdConstraint::zero([])), body.clone());
        let explicit_x = Tl::future(Guard::adjacent(3), body.clone());
        assert_eq!(fe, explicit_f.eval_all(&w));
        assert_eq!(xe, explicit_x.eval_all(&w));
        for i in 0..w.len() {
            assert_eq!(fe[i], w[i + 1..].contains(&1));
            assert_eq!(xe[i], w.get(i + 1) == Some(&1));
        }
    }
}

#[test]
fn ab_plus_translation_matches_regex() {
    let a = Alphabet::from_chars("ab").unwrap();
    let tl = ab_plus_formula(0, 1, 2);
    let fo = tl_to_fo2_sentence(&tl).unwrap();
    for w in a.words(8) {
        let s = a.format_word(&w);
        let expected = !s.is_empty() && s == "ab".repeat(s.len() / 2);
        assert_eq!(tl.accepts(&w), expected, "{s}");
        assert_eq!(fo.holds(&w).unwrap(), expected, "{s}");
    }
}

#[test]
fn fo2_golden_examples() {
    let a = Alphabet::from_chars("ab").unwrap();
    let w = a.parse_word("bab").unwrap();
    let asg = Assignment::xy(1, 3);
    assert!(Fo2::parse("bet(a,1,x,y)", &a).unwrap().eval(&w, asg).unwrap());
    assert!(!Fo2::parse("bet(b,1,x,y)", &a).unwrap().eval(&w, asg).unwrap());
    let stair = Fo2::parse("Ex. Ey. (x < y & bet(a,3,x,y) & !bet(b,1,x,y))", &a).unwrap();
    assert!(stair.holds(&a.parse_word("baaab").unwrap()).unwrap());
    assert!(!Fo2::parse("Ex. a(x)", &a).unwrap().holds(&[]).unwrap());
    assert!(Fo2::parse("Ax. a(x)", &a).unwrap().holds(&[]).unwrap());
    let first_a = Fo2::parse("Ax. (Ay. (x<=y)) -> a(x)", &a).unwrap();
    assert!(first_a.holds(&a.parse_word("ab").unwrap()).unwrap());
    assert!(!first_a.holds(&a.parse_word("ba").unwrap()).unwrap());
    assert!(Fo2::parse("Ex. Ey. Ez. a(z)", &a).is_err());
}
