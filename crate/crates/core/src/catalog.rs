//! Exhaustive loop catalogs: backtracking completion of normalized Latin
//! squares (row 0 and column 0 fixed to `0..n`), with isomorph rejection by
//! canonical form.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Largest order the exhaustive features accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Envelope {
    pub max_order: usize,
}

impl Envelope {
    pub const DEFAULT_MAX_ORDER: usize = 6;
    pub const ENV_VAR: &'static str = "LOOPFORGE_ENVELOPE";

    /// Reads `LOOPFORGE_ENVELOPE`, falling back to the default cap.
    pub fn from_env() -> Self {
        let max_order = std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_MAX_ORDER);
        Envelope { max_order }
    }

    pub fn check(&self, order: usize) -> Result<()> {
        if order == 0 || order > self.max_order {
            Err(Error::Envelope {
                order,
                limit: self.max_order,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Envelope {
    fn default() -> Self {
        Envelope {
            max_order: Self::DEFAULT_MAX_ORDER,
        }
    }
}

/// A loop table with identity 0 whose row-major cell sequence is minimal
/// over all renumberings sending the identity to 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub table: CayleyTable,
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

pub fn canonical_form(t: &CayleyTable) -> Result<CanonicalForm> {
    let e = t.require_loop()?;
    let n = t.order();
    // psi[new] = old; phi = psi⁻¹
    let mut rest: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let mut psi = vec![e; n];
    let mut phi = vec![0usize; n];
    let mut best: Option<Vec<u32>> = None;
    let mut cand = vec![0u32; n * n];
    loop {
        psi[1..].copy_from_slice(&rest);
        for (new, &old) in psi.iter().enumerate() {
            phi[old] = new;
        }
        // compare lazily against the current best, aborting once larger
        let mut state = std::cmp::Ordering::Equal;
        'cells: for i in 0..n {
            for j in 0..n {
                let v = phi[t.op(psi[i], psi[j])] as u32;
                cand[i * n + j] = v;
                if state == std::cmp::Ordering::Equal {
                    if let Some(b) = &best {
                        state = v.cmp(&b[i * n + j]);
                        if state == std::cmp::Ordering::Greater {
                            break 'cells;
                        }
                    }
                }
            }
        }
        if best.is_none() || state == std::cmp::Ordering::Less {
            best = Some(cand.clone());
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    let mut table = CayleyTable::from_cells_unchecked(n, best.expect("at least one renumbering"));
    if let Some(name) = t.name() {
        table = table.with_name(name);
    }
    Ok(CanonicalForm { table })
}

/// Depth-first enumeration of normalized loop tables in lexicographic
/// order of their cell sequences.
struct Completion {
    n: usize,
    cells: Vec<u32>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    positions: Vec<(usize, usize)>,
    next_value: Vec<usize>,
    depth: usize,
    floor: usize,
    pending_trivial: bool,
    exhausted: bool,
}

impl Completion {
    fn new(n: usize) -> Self {
        assert!((1..=64).contains(&n));
        let mut cells = vec![0u32; n * n];
        let mut row_used = vec![0u64; n];
        let mut col_used = vec![0u64; n];
        for i in 0..n {
            cells[i] = i as u32;
            cells[i * n] = i as u32;
            row_used[i] |= 1 << i;
            col_used[i] |= 1 << i;
        }
        let positions: Vec<_> = (1..n).flat_map(|r| (1..n).map(move |c| (r, c))).collect();
        let k = positions.len();
        Completion {
            n,
            cells,
            row_used,
            col_used,
            positions,
            next_value: vec![0; k + 1],
            depth: 0,
            floor: 0,
            pending_trivial: k == 0,
            exhausted: false,
        }
    }

    /// Fixes the first `prefix.len()` free cells; enumeration stays inside
    /// that subtree. Returns `None` if the prefix is inconsistent.
    #[cfg(feature = "parallel")]
    fn with_prefix(n: usize, prefix: &[usize]) -> Option<Self> {
        let mut c = Completion::new(n);
        for &v in prefix {
            let (r, col) = c.positions[c.depth];
            let bit = 1u64 << v;
            if (c.row_used[r] | c.col_used[col]) & bit != 0 {
                return None;
            }
            c.set(r, col, v);
            c.depth += 1;
        }
        c.floor = c.depth;
        c.pending_trivial = c.depth == c.positions.len();
        Some(c)
    }

    fn set(&mut self, r: usize, c: usize, v: usize) {
        self.cells[r * self.n + c] = v as u32;
        self.row_used[r] |= 1 << v;
        self.col_used[c] |= 1 << v;
    }

    fn unset(&mut self, r: usize, c: usize) {
        let v = self.cells[r * self.n + c];
        self.row_used[r] &= !(1 << v);
        self.col_used[c] &= !(1 << v);
    }

    fn backtrack(&mut self) -> bool {
        if self.depth == self.floor {
            self.exhausted = true;
            return false;
        }
        self.next_value[self.depth] = 0;
        self.depth -= 1;
        let (r, c) = self.positions[self.depth];
        self.unset(r, c);
        true
    }
}

impl Iterator for Completion {
    type Item = CayleyTable;

    fn next(&mut self) -> Option<CayleyTable> {
        if self.pending_trivial {
            self.pending_trivial = false;
            self.exhausted = true;
            return Some(CayleyTable::from_cells_unchecked(self.n, self.cells.clone()));
        }
        let k = self.positions.len();
        while !self.exhausted {
            if self.depth == k {
                let t = CayleyTable::from_cells_unchecked(self.n, self.cells.clone());
                self.backtrack();
                return Some(t);
            }
            let (r, c) = self.positions[self.depth];
            let used = self.row_used[r] | self.col_used[c];
            let mut v = self.next_value[self.depth];
            while v < self.n && used & (1 << v) != 0 {
                v += 1;
            }
            if v < self.n {
                self.set(r, c, v);
                self.next_value[self.depth] = v + 1;
                self.depth += 1;
            } else if !self.backtrack() {
                break;
            }
        }
        None
    }
}

/// A stream of loops of one order.
pub struct LoopStream {
    inner: Completion,
    seen: Option<HashSet<CanonicalForm>>,
    order: usize,
    emitted: usize,
}

impl Iterator for LoopStream {
    type Item = CayleyTable;

    fn next(&mut self) -> Option<CayleyTable> {
        loop {
            let t = self.inner.next()?;
            let t = match &mut self.seen {
                None => t,
                Some(seen) => {
                    let cf = canonical_form(&t).expect("generated tables are loops");
                    if !seen.insert(cf.clone()) {
                        continue;
                    }
                    cf.table
                }
            };
            self.emitted += 1;
            let prefix = if self.seen.is_some() { "L" } else { "N" };
            return Some(t.with_name(format!("{prefix}{}.{}", self.order, self.emitted)));
        }
    }
}

/// All normalized loops of order `n`, or one canonical representative per
/// isomorphism class when `up_to_iso` is set. Representatives are named
/// `L<n>.<k>` and normalized tables `N<n>.<k>`, in emission order.
pub fn generate_loops(n: usize, up_to_iso: bool, envelope: &Envelope) -> Result<LoopStream> {
    envelope.check(n)?;
    if n > 64 {
        return Err(Error::Envelope { order: n, limit: 64 });
    }
    Ok(LoopStream {
        inner: Completion::new(n),
        seen: up_to_iso.then(HashSet::new),
        order: n,
        emitted: 0,
    })
}

pub fn count_loops(n: usize, up_to_iso: bool, envelope: &Envelope) -> Result<usize> {
    Ok(generate_loops(n, up_to_iso, envelope)?.count())
}

/// Every catalog loop of orders `1..=max_order`.
pub fn catalog_up_to(max_order: usize, up_to_iso: bool, envelope: &Envelope) -> Result<Vec<CayleyTable>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.extend(generate_loops(n, up_to_iso, envelope)?);
    }
    Ok(out)
}

/// Parallel version of [`generate_loops`], split by the choice of row 1.
/// Produces exactly the sequential stream.
#[cfg(feature = "parallel")]
pub fn generate_loops_par(n: usize, up_to_iso: bool, envelope: &Envelope) -> Result<Vec<CayleyTable>> {
    use rayon::prelude::*;

    envelope.check(n)?;
    if n > 64 {
        return Err(Error::Envelope { order: n, limit: 64 });
    }
    if n < 3 {
        return Ok(generate_loops(n, up_to_iso, envelope)?.collect());
    }
    let prefixes: Vec<Vec<usize>> = {
        let mut rows = Vec::new();
        let row1 = Completion::new(n);
        // row 1 occupies the first n-1 free cells
        collect_prefixes(&row1, n - 1, &mut Vec::new(), &mut rows);
        rows
    };
    let chunks: Vec<Vec<(CayleyTable, Option<CanonicalForm>)>> = prefixes
        .par_iter()
        .map(|p| {
            Completion::with_prefix(n, p)
                .into_iter()
                .flatten()
                .map(|t| {
                    let cf = up_to_iso.then(|| canonical_form(&t).expect("loop"));
                    (t, cf)
                })
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let prefix = if up_to_iso { "L" } else { "N" };
    for (t, cf) in chunks.into_iter().flatten() {
        let t = match cf {
            None => t,
            Some(cf) => {
                if !seen.insert(cf.clone()) {
                    continue;
                }
                cf.table
            }
        };
        let k = out.len() + 1;
        out.push(t.with_name(format!("{prefix}{n}.{k}")));
    }
    Ok(out)
}

#[cfg(feature = "parallel")]
fn collect_prefixes(c: &Completion, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for v in 0..c.n {
        cur.push(v);
        if Completion::with_prefix(c.n, cur).is_some() {
            collect_prefixes(c, len, cur, out);
        }
        cur.pop();
    }
}
