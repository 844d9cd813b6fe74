//! HLT coset enumeration with coincidence processing.
//!
//! The strategy is the textbook one: scan every subgroup generator at the
//! base coset, then walk the cosets in order, scanning every relator and
//! filling any empty entries, with coincidences resolved through a
//! union-find queue. Everything is deterministic for a given input.

use num_integer::Integer;
use serde::Serialize;

use super::{inverse_letter, FpGroup};
use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableStatus {
    Closed,
    Overflowed,
}

/// A coset table. When closed, rows are the cosets in standard order and
/// every entry is filled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTable {
    status: TableStatus,
    /// `rows[c][x]` is the coset reached from `c` by letter code `x`.
    rows: Vec<Vec<usize>>,
    generators: Vec<String>,
    /// Number of subgroup generators the table was enumerated over.
    subgroup_size: usize,
    /// Total cosets ever defined, including ones later merged away.
    defined: usize,
}

impl CosetTable {
    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn is_closed(&self) -> bool {
        self.status == TableStatus::Closed
    }

    /// Number of live cosets, i.e. the subgroup index when closed.
    pub fn index(&self) -> Option<usize> {
        self.is_closed().then_some(self.rows.len())
    }

    pub fn defined(&self) -> usize {
        self.defined
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    /// Coset reached from `c` by reading `word` (letter codes).
    pub fn trace(&self, c: usize, word: &[usize]) -> usize {
        word.iter().fold(c, |c, &x| self.rows[c][x])
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    max: usize,
    overflow: bool,
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn find(&self, mut c: usize) -> usize {
        while self.parent[c] != c {
            c = self.parent[c];
        }
        c
    }

    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.table.len() >= self.max {
            self.overflow = true;
            return;
        }
        let d = self.table.len();
        self.table.push(vec![NONE; self.cols]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][inverse_letter(x)] = c;
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = if k < l { (k, l) } else { (l, k) };
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.table[e][x];
                if f == NONE {
                    continue;
                }
                let xi = inverse_letter(x);
                if self.table[f][xi] == e {
                    self.table[f][xi] = NONE;
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                if self.table[e1][x] != NONE {
                    let t = self.table[e1][x];
                    self.merge(f1, t);
                } else if self.table[f1][xi] != NONE {
                    let t = self.table[f1][xi];
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = f1;
                    self.table[f1][xi] = e1;
                }
            }
        }
    }

    /// Scan `w` at coset `c`, defining new cosets as needed.
    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i && self.table[b][inverse_letter(w[j])] != NONE {
                b = self.table[b][inverse_letter(w[j])];
                if j == 0 {
                    // The backward scan consumed the whole word.
                    self.coincidence(f, b);
                    return;
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                self.table[f][w[i]] = b;
                self.table[b][inverse_letter(w[i])] = f;
                return;
            }
            self.define(f, w[i]);
            if self.overflow {
                return;
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` (letter
/// codes over `group`'s generators), allocating at most `max_cosets` rows.
pub fn todd_coxeter(group: &FpGroup, subgroup: &[Vec<usize>], max_cosets: usize) -> Result<CosetTable> {
    let cols = 2 * group.generator_count();
    if let Some(bad) = subgroup.iter().flatten().find(|&&x| x >= cols) {
        return Err(Error::Malformed(format!("subgroup letter code {bad} out of range")));
    }
    if max_cosets == 0 {
        return Err(Error::OutOfRange("max_cosets must be positive".into()));
    }
    let mut en = Enumerator {
        cols,
        table: vec![vec![NONE; cols]],
        parent: vec![0],
        queue: Vec::new(),
        max: max_cosets,
        overflow: false,
    };
    let overflowed = |en: &Enumerator, group: &FpGroup| CosetTable {
        status: TableStatus::Overflowed,
        rows: Vec::new(),
        generators: group.names().to_vec(),
        subgroup_size: subgroup.len(),
        defined: en.table.len(),
    };

    for w in subgroup {
        en.scan_and_fill(0, w);
        if en.overflow {
            return Ok(overflowed(&en, group));
        }
    }
    let mut c = 0;
    while c < en.table.len() {
        if en.live(c) {
            for r in group.relators() {
                en.scan_and_fill(c, r);
                if en.overflow {
                    return Ok(overflowed(&en, group));
                }
                if !en.live(c) {
                    break;
                }
            }
            if en.live(c) {
                for x in 0..cols {
                    if en.table[c][x] == NONE {
                        en.define(c, x);
                        if en.overflow {
                            return Ok(overflowed(&en, group));
                        }
                    }
                }
            }
        }
        c += 1;
    }

    let rows = standardize(&en);
    let table = CosetTable {
        status: TableStatus::Closed,
        rows,
        generators: group.names().to_vec(),
        subgroup_size: subgroup.len(),
        defined: en.table.len(),
    };
    verify(&table, group, subgroup)?;
    Ok(table)
}

/// Renumbers live cosets in breadth-first order from the base coset,
/// scanning columns in order. Two enumerations of the same action then
/// produce identical tables.
fn standardize(en: &Enumerator) -> Vec<Vec<usize>> {
    let mut new_id = vec![NONE; en.table.len()];
    let mut order = vec![0usize];
    new_id[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        k += 1;
        for x in 0..en.cols {
            let d = en.find(en.table[c][x]);
            if new_id[d] == NONE {
                new_id[d] = order.len();
                order.push(d);
            }
        }
    }
    order
        .iter()
        .map(|&c| en.table[c].iter().map(|&d| new_id[en.find(d)]).collect())
        .collect()
}

fn verify(table: &CosetTable, group: &FpGroup, subgroup: &[Vec<usize>]) -> Result<()> {
    let broken = |what: String| Error::Malformed(format!("closed coset table failed verification: {what}"));
    for (c, row) in table.rows.iter().enumerate() {
        for (x, &d) in row.iter().enumerate() {
            if d >= table.rows.len() || table.rows[d][inverse_letter(x)] != c {
                return Err(broken(format!("entry ({c},{x}) is not invertible")));
            }
        }
        for (i, r) in group.relators().iter().enumerate() {
            if table.trace(c, r) != c {
                return Err(broken(format!("relator {i} does not close at coset {c}")));
            }
        }
    }
    for (i, w) in subgroup.iter().enumerate() {
        if table.trace(0, w) != 0 {
            return Err(broken(format!("subgroup generator {i} moves the base coset")));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum GroupOrder {
    Finite(usize),
    Unknown,
}

/// Order of the group, read off a table enumerated over the trivial
/// subgroup. Overflowed tables give `Unknown`; infiniteness is never
/// claimed.
pub fn group_order(table: &CosetTable) -> Result<GroupOrder> {
    if table.subgroup_size != 0 {
        return Err(Error::OutOfRange("group order needs a table over the trivial subgroup".into()));
    }
    Ok(match table.index() {
        Some(n) => GroupOrder::Finite(n),
        None => GroupOrder::Unknown,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupStructure {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
}

/// Structure of a finite group from its regular action (a closed table over
/// the trivial subgroup). `None` when the table is not closed.
pub fn structure(table: &CosetTable) -> Result<Option<GroupStructure>> {
    let order = match group_order(table)? {
        GroupOrder::Finite(n) => n,
        GroupOrder::Unknown => return Ok(None),
    };
    let gens = table.generators.len();
    // The action is regular, so an element is trivial iff it fixes coset 0.
    let mut abelian = true;
    'outer: for x in 0..gens {
        for z in (x + 1)..gens {
            let comm = [2 * x, 2 * z, 2 * x + 1, 2 * z + 1];
            if table.trace(0, &comm) != 0 {
                abelian = false;
                break 'outer;
            }
        }
    }
    // A word for every element: the breadth-first spanning tree.
    let mut words: Vec<Option<Vec<usize>>> = vec![None; order];
    words[0] = Some(Vec::new());
    let mut frontier = vec![0usize];
    while let Some(c) = frontier.pop() {
        for x in 0..2 * gens {
            let d = table.rows[c][x];
            if words[d].is_none() {
                let mut w = words[c].clone().unwrap_or_default();
                w.push(x);
                words[d] = Some(w);
                frontier.push(d);
            }
        }
    }
    let mut exponent: u64 = 1;
    for w in words.into_iter().flatten() {
        // Right multiplication by the element is the permutation c -> c·w;
        // its order equals the cycle length through coset 0.
        let mut k: u64 = 1;
        let mut c = table.trace(0, &w);
        while c != 0 {
            c = table.trace(c, &w);
            k += 1;
        }
        exponent = exponent.lcm(&k);
    }
    Ok(Some(GroupStructure { order, abelian, exponent }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(names: &[&str], relators: Vec<Vec<usize>>) -> FpGroup {
        FpGroup::new(names.iter().map(|s| s.to_string()).collect(), relators).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = group(&["x"], vec![vec![0]]);
        let t = todd_coxeter(&g, &[], 100).unwrap();
        assert_eq!(group_order(&t).unwrap(), GroupOrder::Finite(1));
    }

    #[test]
    fn cyclic_and_dihedral() {
        let c5 = group(&["x"], vec![vec![0; 5]]);
        let s = structure(&todd_coxeter(&c5, &[], 100).unwrap()).unwrap().unwrap();
        assert_eq!((s.order, s.abelian, s.exponent), (5, true, 5));
        // <r, s | r^4, s^2, (rs)^2>
        let d4 = group(&["r", "s"], vec![vec![0; 4], vec![2, 2], vec![0, 2, 0, 2]]);
        let s = structure(&todd_coxeter(&d4, &[], 1000).unwrap()).unwrap().unwrap();
        assert_eq!((s.order, s.abelian, s.exponent), (8, false, 4));
    }

    #[test]
    fn symmetric_group_via_coxeter_presentation() {
        // S4 = <s1,s2,s3 | s_i^2, (s1 s2)^3, (s2 s3)^3, (s1 s3)^2>
        let rels = vec![
            vec![0, 0],
            vec![2, 2],
            vec![4, 4],
            [0, 2].repeat(3),
            [2, 4].repeat(3),
            [0, 4].repeat(2),
        ];
        let g = group(&["s1", "s2", "s3"], rels);
        let t = todd_coxeter(&g, &[], 10_000).unwrap();
        assert_eq!(t.index(), Some(24));
        let s = structure(&t).unwrap().unwrap();
        assert_eq!(s.exponent, 12);
        let over = todd_coxeter(&g, &[vec![0], vec![2]], 10_000).unwrap();
        assert_eq!(over.index(), Some(4));
    }

    #[test]
    fn free_group_overflows() {
        let g = group(&["x"], vec![]);
        let t = todd_coxeter(&g, &[], 50).unwrap();
        assert_eq!(t.status(), TableStatus::Overflowed);
        assert_eq!(group_order(&t).unwrap(), GroupOrder::Unknown);
        assert!(structure(&t).unwrap().is_none());
    }

    #[test]
    fn deterministic() {
        let d4 = group(&["r", "s"], vec![vec![0; 4], vec![2, 2], vec![0, 2, 0, 2]]);
        assert_eq!(todd_coxeter(&d4, &[], 1000).unwrap(), todd_coxeter(&d4, &[], 1000).unwrap());
    }
}
