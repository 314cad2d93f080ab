//! Exponential-width corridor tiling encoded as an FO²[<,bet] sentence.
//!
//! A solution with `m` rows of width `2^n` is written row by row. Each cell
//! is a marker letter `m.<tile>.<colour>` followed by `n` counter bits
//! holding the column, least significant first. Rows are coloured red,
//! green, blue, red, … so that vertically adjacent cells can be recognised
//! by their colours and equal counters.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Word};
use crate::fo2::CounterSyntax;
use crate::fo2::{Fo2, Var};

use Var::{X, Y};

pub const COLOURS: [&str; 3] = ["red", "green", "blue"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingInstance {
    pub tiles: Vec<String>,
    pub s: String,
    pub f: String,
    #[serde(rename = "H")]
    pub h: Vec<(String, String)>,
    #[serde(rename = "V")]
    pub v: Vec<(String, String)>,
    pub n: usize,
}

/// Rows of tiles, top row first; every row has `2^n` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingSolution {
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TilingError {
    #[error("unknown tile `{0}`")]
    UnknownTile(String),
    #[error("duplicate tile `{0}`")]
    DuplicateTile(String),
    #[error("tile names must be nonempty and free of quotes and whitespace: `{0}`")]
    BadTileName(String),
    #[error("corridor exponent n must be at least 1")]
    ZeroWidth,
    #[error("corridor exponent n = {0} is too large")]
    TooWide(usize),
    #[error("solution has no rows")]
    NoRows,
    #[error("row {row} has {got} cells, expected {expected}")]
    RowWidth { row: usize, got: usize, expected: usize },
    #[error("tiling constraint violated: {0}")]
    Violation(String),
}

impl TilingInstance {
    pub fn width(&self) -> usize {
        1 << self.n
    }

    pub fn validate(&self) -> Result<(), TilingError> {
        if self.n == 0 {
            return Err(TilingError::ZeroWidth);
        }
        if self.n > 20 {
            return Err(TilingError::TooWide(self.n));
        }
        let mut seen = HashSet::new();
        for t in &self.tiles {
            if t.is_empty() || t.contains(|c: char| c == '\'' || c.is_whitespace()) {
                return Err(TilingError::BadTileName(t.clone()));
            }
            if !seen.insert(t.as_str()) {
                return Err(TilingError::DuplicateTile(t.clone()));
            }
        }
        let pairs = self.h.iter().chain(&self.v).flat_map(|(a, b)| [a, b]);
        for t in [&self.s, &self.f].into_iter().chain(pairs) {
            self.tile_index(t)?;
        }
        Ok(())
    }

    fn tile_index(&self, t: &str) -> Result<usize, TilingError> {
        self.tiles
            .iter()
            .position(|x| x == t)
            .ok_or_else(|| TilingError::UnknownTile(t.to_string()))
    }

    /// `0`, `1`, then `m.<tile>.<colour>` tile by tile.
    pub fn alphabet(&self) -> Alphabet {
        let markers = self
            .tiles
            .iter()
            .flat_map(|t| COLOURS.map(|c| format!("m.{t}.{c}")));
        Alphabet::new(["0".to_string(), "1".to_string()].into_iter().chain(markers))
            .expect("validated tile names")
    }

    /// Letter index of the marker for tile `t` (by index) and colour `c`.
    pub fn marker(&self, t: usize, c: usize) -> usize {
        2 + 3 * t + c
    }

    fn pairs(&self, rel: &[(String, String)]) -> Result<BTreeSet<(usize, usize)>, TilingError> {
        rel.iter()
            .map(|(a, b)| Ok((self.tile_index(a)?, self.tile_index(b)?)))
            .collect()
    }
}

/// The encoding as named conjunct families.
#[derive(Debug, Clone, PartialEq)]
pub struct TilingEncoding {
    pub alphabet: Alphabet,
    pub clauses: Vec<(&'static str, Fo2)>,
}

impl TilingEncoding {
    pub fn sentence(&self) -> Fo2 {
        Fo2::and(self.clauses.iter().map(|(_, f)| f.clone()))
    }

    pub fn clause(&self, name: &str) -> Option<&Fo2> {
        self.clauses.iter().find(|(n, _)| *n == name).map(|(_, f)| f)
    }

    /// Names of the conjuncts that fail on `w`.
    pub fn failing(&self, w: &[usize]) -> Vec<&'static str> {
        self.clauses
            .iter()
            .filter(|(_, f)| !f.holds(w).expect("clauses are sentences"))
            .map(|(n, _)| *n)
            .collect()
    }
}

struct Builder<'a> {
    inst: &'a TilingInstance,
    counter: CounterSyntax,
    markers: Vec<usize>,
}

impl Builder<'_> {
    fn tile(&self, t: usize, v: Var) -> Fo2 {
        Fo2::letter_in(&[0, 1, 2].map(|c| self.inst.marker(t, c)), v)
    }

    fn colour(&self, c: usize, v: Var) -> Fo2 {
        let letters: Vec<usize> = (0..self.inst.tiles.len())
            .map(|t| self.inst.marker(t, c))
            .collect();
        Fo2::letter_in(&letters, v)
    }

    fn colour_between(&self, c: usize, u: Var, v: Var) -> Fo2 {
        Fo2::or((0..self.inst.tiles.len()).map(|t| Fo2::bet(self.inst.marker(t, c), 1, u, v)))
    }

    fn mark(&self, v: Var) -> Fo2 {
        self.counter.mark_at(v)
    }

    fn no_mark_between(&self, u: Var, v: Var) -> Fo2 {
        Fo2::and(self.markers.iter().map(|&m| Fo2::not(Fo2::bet(m, 1, u, v))))
    }

    /// `x < y` are markers with no marker in between.
    fn consecutive(&self) -> Fo2 {
        Fo2::and([self.mark(X), self.mark(Y), Fo2::Less(X, Y), self.no_mark_between(X, Y)])
    }

    fn first(v: Var) -> Fo2 {
        let w = v.other();
        Fo2::not(Fo2::exists(w, Fo2::Less(w, v)))
    }

    fn compatible(&self, rel: &BTreeSet<(usize, usize)>) -> Fo2 {
        Fo2::or(
            rel.iter()
                .map(|&(a, b)| Fo2::and([self.tile(a, X), self.tile(b, Y)])),
        )
    }

    fn all_xy(body: Fo2) -> Fo2 {
        Fo2::forall(X, Fo2::forall(Y, body))
    }
}

/// Builds the sentence for `inst`; it is satisfiable iff the instance has a
/// solution.
pub fn encode_tiling(inst: &TilingInstance) -> Result<TilingEncoding, TilingError> {
    inst.validate()?;
    let n = inst.n;
    let markers: Vec<usize> = (0..inst.tiles.len())
        .flat_map(|t| (0..3).map(move |c| inst.marker(t, c)))
        .collect();
    let counter = CounterSyntax::new(markers.clone(), 0, 1, n).expect("n >= 1");
    let b = Builder {
        inst,
        counter,
        markers,
    };
    let s = inst.tile_index(&inst.s)?;
    let f = inst.tile_index(&inst.f)?;
    let h = inst.pairs(&inst.h)?;
    let v = inst.pairs(&inst.v)?;
    let last_column = (1u64 << n) - 1;

    let structure = Fo2::and([
        Fo2::forall(X, Fo2::implies(Builder::first(X), b.mark(X))),
        Fo2::forall(
            X,
            Fo2::implies(
                b.mark(X),
                Fo2::and(
                    (1..=n)
                        .map(|i| b.counter.suc_is(i, X, &[0, 1]))
                        .chain([Fo2::not(b.counter.suc_is(n + 1, X, &[0, 1]))]),
                ),
            ),
        ),
    ]);
    let start = Fo2::exists(
        X,
        Fo2::and([
            Builder::first(X),
            b.tile(s, X),
            b.colour(0, X),
            b.counter.value_is(X, 0),
        ]),
    );
    let end = Fo2::exists(
        X,
        Fo2::and([
            b.mark(X),
            Fo2::not(Fo2::exists(Y, Fo2::and([Fo2::Less(X, Y), b.mark(Y)]))),
            b.tile(f, X),
            b.counter.value_is(X, last_column),
        ]),
    );
    let row_start = b.counter.value_is(Y, 0);
    let colour = Builder::all_xy(Fo2::implies(
        b.consecutive(),
        Fo2::and((0..3).map(|c| {
            Fo2::implies(
                b.colour(c, X),
                Fo2::and([
                    Fo2::implies(row_start.clone(), b.colour((c + 1) % 3, Y)),
                    Fo2::implies(Fo2::not(row_start.clone()), b.colour(c, Y)),
                ]),
            )
        })),
    ));
    let count = Builder::all_xy(Fo2::implies(b.consecutive(), b.counter.inc1(X, Y)));
    let horizontal = Builder::all_xy(Fo2::implies(
        Fo2::and([b.consecutive(), Fo2::not(row_start.clone())]),
        b.compatible(&h),
    ));
    let next_row = Fo2::or((0..3).map(|c| {
        Fo2::and([
            b.colour(c, X),
            b.colour((c + 1) % 3, Y),
            Fo2::not(b.colour_between((c + 2) % 3, X, Y)),
        ])
    }));
    let vertical = Builder::all_xy(Fo2::implies(
        Fo2::and([Fo2::Less(X, Y), next_row, b.counter.eq(X, Y)]),
        b.compatible(&v),
    ));
    Ok(TilingEncoding {
        alphabet: inst.alphabet(),
        clauses: vec![
            ("structure", structure),
            ("start", start),
            ("end", end),
            ("colour", colour),
            ("counter", count),
            ("horizontal", horizontal),
            ("vertical", vertical),
        ],
    })
}

impl TilingSolution {
    fn indices(&self, inst: &TilingInstance) -> Result<Vec<Vec<usize>>, TilingError> {
        if self.rows.is_empty() {
            return Err(TilingError::NoRows);
        }
        self.rows
            .iter()
            .enumerate()
            .map(|(j, row)| {
                if row.len() != inst.width() {
                    return Err(TilingError::RowWidth {
                        row: j,
                        got: row.len(),
                        expected: inst.width(),
                    });
                }
                row.iter().map(|t| inst.tile_index(t)).collect()
            })
            .collect()
    }

    /// Checks every tiling constraint directly on the grid.
    pub fn check(&self, inst: &TilingInstance) -> Result<(), TilingError> {
        inst.validate()?;
        let grid = self.indices(inst)?;
        let h = inst.pairs(&inst.h)?;
        let v = inst.pairs(&inst.v)?;
        let bad = |msg: String| Err(TilingError::Violation(msg));
        if self.rows[0][0] != inst.s {
            return bad("first tile is not s".into());
        }
        if self.rows.last().and_then(|r| r.last()) != Some(&inst.f) {
            return bad("last tile is not f".into());
        }
        for (j, row) in grid.iter().enumerate() {
            for i in 0..row.len() {
                if i + 1 < row.len() && !h.contains(&(row[i], row[i + 1])) {
                    return bad(format!("horizontal at ({i},{j})"));
                }
                if j + 1 < grid.len() && !v.contains(&(row[i], grid[j + 1][i])) {
                    return bad(format!("vertical at ({i},{j})"));
                }
            }
        }
        Ok(())
    }
}

/// Serializes a solution; the word has length `m (n+1) 2^n`.
pub fn tiling_witness(inst: &TilingInstance, sol: &TilingSolution) -> Result<Word, TilingError> {
    inst.validate()?;
    let grid = sol.indices(inst)?;
    let mut w = Vec::with_capacity(grid.len() * inst.width() * (inst.n + 1));
    for (j, row) in grid.iter().enumerate() {
        for (i, &t) in row.iter().enumerate() {
            w.push(inst.marker(t, j % 3));
            w.extend((0..inst.n).map(|b| (i >> b) & 1));
        }
    }
    Ok(Word(w))
}

/// Shortest solution with at most `max_rows` rows, by breadth-first search
/// over horizontally valid rows. Rows are enumerated exhaustively, so this
/// is only practical for small `|T|^(2^n)`.
pub fn solve_tiling(inst: &TilingInstance, max_rows: usize) -> Result<Option<TilingSolution>, TilingError> {
    inst.validate()?;
    let h = inst.pairs(&inst.h)?;
    let v = inst.pairs(&inst.v)?;
    let s = inst.tile_index(&inst.s)?;
    let f = inst.tile_index(&inst.f)?;
    let width = inst.width();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..width {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                let h = &h;
                (0..inst.tiles.len()).filter_map(move |t| {
                    if r.last().is_some_and(|&p| !h.contains(&(p, t))) {
                        return None;
                    }
                    let mut r = r.clone();
                    r.push(t);
                    Some(r)
                })
            })
            .collect();
    }
    let below = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(&x, &y)| v.contains(&(x, y)));
    let mut parent: Vec<Option<usize>> = vec![None; rows.len()];
    let mut depth = vec![usize::MAX; rows.len()];
    let mut queue = VecDeque::new();
    for (k, r) in rows.iter().enumerate() {
        if r[0] == s {
            depth[k] = 1;
            queue.push_back(k);
        }
    }
    while let Some(k) = queue.pop_front() {
        if rows[k][width - 1] == f {
            let mut path = vec![k];
            while let Some(p) = parent[*path.last().expect("nonempty")] {
                path.push(p);
            }
            path.reverse();
            let named = path
                .into_iter()
                .map(|k| rows[k].iter().map(|&t| inst.tiles[t].clone()).collect())
                .collect();
            return Ok(Some(TilingSolution { rows: named }));
        }
        if depth[k] >= max_rows {
            continue;
        }
        for next in 0..rows.len() {
            if depth[next] == usize::MAX && below(&rows[k], &rows[next]) {
                depth[next] = depth[k] + 1;
                parent[next] = Some(k);
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn instance(h: &[(&str, &str)], v: &[(&str, &str)], n: usize) -> TilingInstance {
        let own = |r: &[(&str, &str)]| r.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        TilingInstance {
            tiles: vec!["s".into(), "f".into()],
            s: "s".into(),
            f: "f".into(),
            h: own(h),
            v: own(v),
            n,
        }
    }

    fn sol(rows: &[&[&str]]) -> TilingSolution {
        TilingSolution {
            rows: rows
                .iter()
                .map(|r| r.iter().map(|t| t.to_string()).collect())
                .collect(),
        }
    }

    #[test]
    fn small_instance_round_trip() {
        let inst = instance(&[("s", "f"), ("f", "f")], &[("s", "s"), ("f", "f")], 1);
        let enc = encode_tiling(&inst).unwrap();
        let s = sol(&[&["s", "f"]]);
        s.check(&inst).unwrap();
        let w = tiling_witness(&inst, &s).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(enc.alphabet.format_word(&w), "m.s.red 0 m.f.red 1");
        assert!(enc.failing(&w).is_empty());
        let two = sol(&[&["s", "f"], &["s", "f"]]);
        let w2 = tiling_witness(&inst, &two).unwrap();
        assert_eq!(w2.len(), 8);
        assert!(enc.sentence().holds(&w2).unwrap());
        assert_eq!(solve_tiling(&inst, 4).unwrap(), Some(s));
    }

    #[test]
    fn empty_horizontal_relation() {
        let inst = instance(&[], &[("s", "s"), ("f", "f")], 1);
        let enc = encode_tiling(&inst).unwrap();
        for rows in [vec![vec!["s", "f"]], vec![vec!["s", "s"]], vec![vec!["s", "f"], vec!["s", "f"]]] {
            let s = TilingSolution {
                rows: rows.iter().map(|r| r.iter().map(|t| t.to_string()).collect()).collect(),
            };
            let w = tiling_witness(&inst, &s).unwrap();
            assert!(enc.failing(&w).contains(&"horizontal"));
        }
        assert_eq!(solve_tiling(&inst, 5).unwrap(), None);
    }

    #[test]
    fn horizontal_clause_shape() {
        let inst = instance(&[("s", "f")], &[], 1);
        let enc = encode_tiling(&inst).unwrap();
        let a = &enc.alphabet;
        let text = enc.clause("horizontal").unwrap().to_text(a);
        assert!(text.starts_with("Ax. Ay."), "{text}");
        assert!(text.contains("'m.s.red'(x) | 'm.s.green'(x) | 'm.s.blue'(x)"), "{text}");
    }

    #[test]
    fn vertical_skips_non_adjacent_rows() {
        // rows 0 and 2 share a column at the row end with only two colours
        // between them; V forbids (s,f) but allows consecutive rows.
        let inst = TilingInstance {
            tiles: vec!["s".into(), "f".into(), "g".into()],
            s: "s".into(),
            f: "f".into(),
            h: vec![("s".into(), "g".into()), ("g".into(), "f".into()), ("s".into(), "f".into())],
            v: vec![("f".into(), "g".into()), ("g".into(), "f".into()), ("s".into(), "s".into())],
            n: 1,
        };
        let grid = sol(&[&["s", "f"], &["s", "g"], &["s", "f"]]);
        grid.check(&inst).unwrap();
        let w = tiling_witness(&inst, &grid).unwrap();
        assert!(encode_tiling(&inst).unwrap().failing(&w).is_empty());
    }

    #[test]
    fn validation() {
        let mut inst = instance(&[("s", "q")], &[], 1);
        assert_eq!(encode_tiling(&inst), Err(TilingError::UnknownTile("q".into())));
        inst.h.clear();
        inst.n = 0;
        assert_eq!(encode_tiling(&inst), Err(TilingError::ZeroWidth));
        inst.n = 1;
        let bad = sol(&[&["s"]]);
        assert!(matches!(tiling_witness(&inst, &bad), Err(TilingError::RowWidth { .. })));
        let json = r#"{"tiles":["s","f"],"s":"s","f":"f","H":[["s","f"]],"V":[],"n":2}"#;
        let parsed: TilingInstance = serde_json::from_str(json).unwrap();
        assert_eq!(parsed.h, vec![("s".to_string(), "f".to_string())]);
        assert_eq!(parsed.width(), 4);
    }
}
