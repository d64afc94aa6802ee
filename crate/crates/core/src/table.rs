//! Cayley tables, quasigroup/loop recognition, translations and the
//! inverse maps `J_ρ`, `J_λ`.
//!
//! Text format: the first significant line holds the order `n`, followed by
//! `n` rows of `n` whitespace-separated integers. `#` starts a comment and
//! blank lines are ignored. A comment of the form `# name: <label>` before
//! the header names the table.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// An `n × n` operation table over `0..n`. Need not be Latin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u32>,
    name: Option<String>,
}

impl CayleyTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotLatin("empty table".into()));
        }
        let mut cells = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DegreeMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for &v in row {
                if v >= n {
                    return Err(Error::OutOfRange { element: v, order: n });
                }
                cells.push(v as u32);
            }
        }
        Ok(CayleyTable {
            order: n,
            cells,
            name: None,
        })
    }

    /// Builds a table from `f(x, y)`; panics if a value is out of range.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        assert!(n > 0, "order must be positive");
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = f(x, y);
                assert!(v < n, "cell ({x},{y}) = {v} out of range");
                cells.push(v as u32);
            }
        }
        CayleyTable {
            order: n,
            cells,
            name: None,
        }
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable {
            order,
            cells,
            name: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("order-{}", self.order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                element: x,
                order: self.order,
            })
        }
    }

    /// First row or column that is not a permutation of `0..n`, if any.
    pub fn latin_violation(&self) -> Option<String> {
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                let v = self.op(x, y);
                if seen[v] == x {
                    return Some(format!("row {x} repeats {v}"));
                }
                seen[v] = x;
            }
        }
        seen.fill(usize::MAX);
        for y in 0..n {
            for x in 0..n {
                let v = self.op(x, y);
                if seen[v] == y {
                    return Some(format!("column {y} repeats {v}"));
                }
                seen[v] = y;
            }
        }
        None
    }

    pub fn is_latin(&self) -> bool {
        self.latin_violation().is_none()
    }

    pub fn require_latin(&self) -> Result<()> {
        match self.latin_violation() {
            None => Ok(()),
            Some(why) => Err(Error::NotLatin(why)),
        }
    }

    /// The two-sided identity, if one exists.
    pub fn identity_of(&self) -> Option<usize> {
        (0..self.order).find(|&e| (0..self.order).all(|x| self.op(e, x) == x && self.op(x, e) == x))
    }

    /// Latin with a two-sided identity; returns the identity.
    pub fn require_loop(&self) -> Result<usize> {
        self.require_latin()?;
        self.identity_of().ok_or(Error::NoIdentity)
    }

    pub fn is_loop(&self) -> bool {
        self.is_latin() && self.identity_of().is_some()
    }

    /// `L_x: y ↦ x·y` or `R_x: y ↦ y·x`.
    pub fn translation(&self, x: usize, side: Side) -> Result<Permutation> {
        self.check_element(x)?;
        let images: Vec<usize> = match side {
            Side::Left => (0..self.order).map(|y| self.op(x, y)).collect(),
            Side::Right => (0..self.order).map(|y| self.op(y, x)).collect(),
        };
        Permutation::new(images).map_err(|_| {
            let which = match side {
                Side::Left => "row",
                Side::Right => "column",
            };
            Error::NotLatin(format!("{which} {x} is not a bijection"))
        })
    }

    /// `J_ρ` (right: `x·xJ_ρ = e`) or `J_λ` (left: `xJ_λ·x = e`).
    pub fn inverse_map(&self, side: Side) -> Result<Permutation> {
        let e = self.require_loop()?;
        Ok(self.inverse_map_with(e, side))
    }

    pub(crate) fn inverse_map_with(&self, e: usize, side: Side) -> Permutation {
        let n = self.order;
        let images = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| match side {
                        Side::Right => self.op(x, y) == e,
                        Side::Left => self.op(y, x) == e,
                    })
                    .expect("Latin table")
            })
            .collect();
        Permutation::from_images_unchecked(images)
    }

    /// Induced table on `members`, relabelled by position. Caller guarantees
    /// closure.
    pub fn subtable(&self, members: &[usize]) -> CayleyTable {
        let mut pos = vec![usize::MAX; self.order];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i;
        }
        let k = members.len();
        let mut cells = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                let p = pos[self.op(a, b)];
                assert!(p != usize::MAX, "subset not closed under the operation");
                cells.push(p as u32);
            }
        }
        CayleyTable::from_cells_unchecked(k, cells)
    }

    /// Isomorphic copy under the renaming `x ↦ xφ`.
    pub fn renumber(&self, phi: &Permutation) -> CayleyTable {
        let n = self.order;
        assert_eq!(phi.degree(), n);
        let mut cells = vec![0u32; n * n];
        for x in 0..n {
            for y in 0..n {
                cells[phi.apply(x) * n + phi.apply(y)] = phi.apply(self.op(x, y)) as u32;
            }
        }
        CayleyTable {
            order: n,
            cells,
            name: self.name.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "# name: {name}")?;
        }
        writeln!(f, "{}", self.order)?;
        for row in self.cells.chunks(self.order) {
            let mut first = true;
            for v in row {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for CayleyTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_table(s)
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

enum Item<'a> {
    Name(String),
    Data(Line<'a>),
}

fn lex(text: &str) -> Vec<Item<'_>> {
    let mut items = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let (body, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (c, ch) in body.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s, &body[s..c]));
                }
            } else if start.is_none() {
                start = Some(c);
            }
        }
        if let Some(s) = start {
            tokens.push((s, &body[s..]));
        }
        if tokens.is_empty() {
            if let Some(name) = comment.and_then(|c| c.trim().strip_prefix("name:")) {
                items.push(Item::Name(name.trim().to_string()));
            }
            continue;
        }
        let tokens = tokens
            .into_iter()
            .map(|(c, t)| (body[..c].chars().count() + 1, t))
            .collect();
        items.push(Item::Data(Line { number: i + 1, tokens }));
    }
    items
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_int(line: usize, (column, tok): (usize, &str)) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(line, column, format!("expected a non-negative integer, found '{tok}'")))
}

fn take_table<'a>(
    items: &mut std::iter::Peekable<std::vec::IntoIter<Item<'a>>>,
    last_line: usize,
) -> Result<Option<CayleyTable>> {
    let mut name = None;
    let header = loop {
        match items.next() {
            None => return Ok(None),
            Some(Item::Name(n)) => name = Some(n),
            Some(Item::Data(l)) => break l,
        }
    };
    if header.tokens.len() != 1 {
        let (col, _) = header.tokens[1];
        return Err(parse_err(header.number, col, "malformed header: expected a single order"));
    }
    let n = parse_int(header.number, header.tokens[0])?;
    if n == 0 {
        return Err(parse_err(header.number, header.tokens[0].0, "malformed header: order must be positive"));
    }
    let mut cells = Vec::with_capacity(n * n);
    let mut prev_line = header.number;
    for r in 0..n {
        let line = loop {
            match items.next() {
                Some(Item::Data(l)) => break l,
                Some(Item::Name(_)) => continue,
                None => {
                    return Err(parse_err(
                        last_line.max(prev_line) + 1,
                        1,
                        format!("expected {n} rows, found {r}"),
                    ))
                }
            }
        };
        prev_line = line.number;
        if line.tokens.len() != n {
            let col = line.tokens.get(n).map_or(line.tokens.last().map_or(1, |t| t.0), |t| t.0);
            return Err(parse_err(
                line.number,
                col,
                format!("row {r} has {} entries, expected {n}", line.tokens.len()),
            ));
        }
        for &tok in &line.tokens {
            let v = parse_int(line.number, tok)?;
            if v >= n {
                return Err(parse_err(
                    line.number,
                    tok.0,
                    format!("cell out of range: {v} not in 0..{n}"),
                ));
            }
            cells.push(v as u32);
        }
    }
    let mut t = CayleyTable::from_cells_unchecked(n, cells);
    t.name = name;
    Ok(Some(t))
}

/// Parses exactly one table.
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    let last_line = text.lines().count();
    let mut items = lex(text).into_iter().peekable();
    let t = take_table(&mut items, last_line)?
        .ok_or_else(|| parse_err(last_line.max(1), 1, "malformed header: no table found"))?;
    for item in items {
        if let Item::Data(l) = item {
            return Err(parse_err(l.number, l.tokens[0].0, "unexpected content after table"));
        }
    }
    Ok(t)
}

/// Parses a stream of concatenated tables.
pub fn parse_tables(text: &str) -> Result<Vec<CayleyTable>> {
    let last_line = text.lines().count();
    let mut items = lex(text).into_iter().peekable();
    let mut out = Vec::new();
    while let Some(t) = take_table(&mut items, last_line)? {
        out.push(t);
    }
    Ok(out)
}
