//! Finite-group and abelian-invariant oracles for finitely presented groups.
//!
//! Words are flattened into letter codes `2*g` (generator `g`) and
//! `2*g + 1` (its inverse) so the enumeration kernel never touches curve
//! symbols.

mod snf;
mod todd_coxeter;

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::presentation::Presentation;
use crate::word::{Generator, Word};

pub use snf::{smith_normal_form, AbelianInvariants};
pub use todd_coxeter::{group_order, structure, todd_coxeter, CosetTable, GroupOrder, GroupStructure, TableStatus};

/// A presentation reduced to letter codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpGroup {
    names: Vec<String>,
    relators: Vec<Vec<usize>>,
}

#[inline]
pub(crate) fn inverse_letter(x: usize) -> usize {
    x ^ 1
}

impl FpGroup {
    pub fn new(names: Vec<String>, relators: Vec<Vec<usize>>) -> Result<Self> {
        let cols = 2 * names.len();
        if let Some(bad) = relators.iter().flatten().find(|&&x| x >= cols) {
            return Err(Error::Malformed(format!("letter code {bad} out of range for {} generators", names.len())));
        }
        Ok(FpGroup { names, relators })
    }

    pub fn from_presentation(p: &Presentation) -> Self {
        let names = p.generators().iter().map(|g| g.to_string()).collect();
        let index: HashMap<&Generator, usize> = p.generators().iter().enumerate().map(|(i, g)| (g, i)).collect();
        let relators = p
            .relators()
            .iter()
            .map(|r| encode_with(&index, &r.word).expect("relators use presentation generators"))
            .collect();
        FpGroup { names, relators }
    }

    /// Parses the flat enumeration format; see
    /// [`Presentation::to_flat`](crate::presentation::Presentation::to_flat).
    /// Only `names` and `relator` lines are required; `genus`, `boundary`,
    /// `generators` and `#` comments are accepted and cross-checked.
    pub fn from_flat(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut declared: Option<usize> = None;
        let mut raw: Vec<(usize, &str)> = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let start = offset;
            offset += line.len();
            let body = line.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            let rest = rest.trim();
            match key {
                "genus" | "boundary" => {
                    rest.parse::<usize>()
                        .map_err(|_| ParseError::new(start, format!("{key} expects a number")))?;
                }
                "generators" => {
                    declared = Some(
                        rest.parse()
                            .map_err(|_| ParseError::new(start, "generators expects a number"))?,
                    );
                }
                "names" => names = Some(rest.split_whitespace().map(str::to_string).collect()),
                "relator" => {
                    let letters = rest.rsplit_once(char::is_whitespace).map_or(rest, |(_, l)| l);
                    let at = start + line.find(letters).unwrap_or(0);
                    raw.push((at, letters));
                }
                other => return Err(ParseError::new(start, format!("unknown record {other:?}")).into()),
            }
        }
        let names = names.ok_or_else(|| Error::Malformed("missing names line".into()))?;
        if names.len() > 26 {
            return Err(Error::Malformed("at most 26 generators".into()));
        }
        if let Some(k) = declared {
            if k != names.len() {
                return Err(Error::Malformed(format!("generators {k} but {} names", names.len())));
            }
        }
        let mut relators = Vec::with_capacity(raw.len());
        for (at, letters) in raw {
            relators.push(decode_letters(letters, names.len()).map_err(|e| e.shifted(at))?);
        }
        FpGroup::new(names, relators)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn relators(&self) -> &[Vec<usize>] {
        &self.relators
    }

    /// Encodes a word over this group's generators (matched by canonical
    /// name).
    pub fn encode(&self, w: &Word) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(w.letter_len());
        for s in w.syllables() {
            let name = s.gen.to_string();
            let i = self.names.iter().position(|n| *n == name).ok_or_else(|| Error::InvalidGenerator {
                generator: name.clone(),
                reason: "not a generator of this presentation".into(),
            })?;
            let code = if s.exp > 0 { 2 * i } else { 2 * i + 1 };
            out.extend(std::iter::repeat_n(code, s.exp.unsigned_abs() as usize));
        }
        Ok(out)
    }

    /// Integer matrix of exponent sums: one row per relator, one column per
    /// generator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| {
                let mut row = vec![0i64; self.names.len()];
                for &x in r {
                    row[x / 2] += if x % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect()
    }
}

fn encode_with(index: &HashMap<&Generator, usize>, w: &Word) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(w.letter_len());
    for s in w.syllables() {
        let i = *index.get(&s.gen)?;
        let code = if s.exp > 0 { 2 * i } else { 2 * i + 1 };
        out.extend(std::iter::repeat_n(code, s.exp.unsigned_abs() as usize));
    }
    Some(out)
}

fn decode_letters(letters: &str, gens: usize) -> std::result::Result<Vec<usize>, ParseError> {
    letters
        .chars()
        .enumerate()
        .map(|(pos, ch)| {
            let (i, inv) = match ch {
                'a'..='z' => (ch as usize - 'a' as usize, false),
                'A'..='Z' => (ch as usize - 'A' as usize, true),
                _ => return Err(ParseError::new(pos, format!("unexpected {ch:?} in relator"))),
            };
            if i >= gens {
                return Err(ParseError::new(pos, format!("letter {ch:?} names generator {} of {gens}", i + 1)));
            }
            Ok(2 * i + inv as usize)
        })
        .collect()
}

/// Abelian invariants of the group presented by `p`.
pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    abelianize(&FpGroup::from_presentation(p))
}

pub fn abelianize(group: &FpGroup) -> AbelianInvariants {
    let m = group.exponent_matrix();
    smith_normal_form(&m, group.generator_count())
}
