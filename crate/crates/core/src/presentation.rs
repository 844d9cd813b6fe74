//! The finite presentation of `M(N_{g,n})` for `g >= 2`, `n <= 1`.
//!
//! Relators are stored as `reduce(lhs · rhs^{-1})`, each tagged with the
//! family it comes from so that audits can trace every word back to its
//! defining relation.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::surface::SurfaceSpec;
use crate::word::{a, a_run, b, commutator, y, Generator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelatorFamily {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A9a,
    A9b,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    C1,
    C2,
    C3,
    C4,
    /// One of the hard-coded lists for `(2,0)`, `(2,1)`, `(3,0)`.
    Small,
}

impl RelatorFamily {
    pub const ALL: [RelatorFamily; 21] = [
        RelatorFamily::A1,
        RelatorFamily::A2,
        RelatorFamily::A3,
        RelatorFamily::A4,
        RelatorFamily::A5,
        RelatorFamily::A6,
        RelatorFamily::A9a,
        RelatorFamily::A9b,
        RelatorFamily::B1,
        RelatorFamily::B2,
        RelatorFamily::B3,
        RelatorFamily::B4,
        RelatorFamily::B5,
        RelatorFamily::B6,
        RelatorFamily::B7,
        RelatorFamily::B8,
        RelatorFamily::C1,
        RelatorFamily::C2,
        RelatorFamily::C3,
        RelatorFamily::C4,
        RelatorFamily::Small,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelatorFamily::A1 => "A1",
            RelatorFamily::A2 => "A2",
            RelatorFamily::A3 => "A3",
            RelatorFamily::A4 => "A4",
            RelatorFamily::A5 => "A5",
            RelatorFamily::A6 => "A6",
            RelatorFamily::A9a => "A9a",
            RelatorFamily::A9b => "A9b",
            RelatorFamily::B1 => "B1",
            RelatorFamily::B2 => "B2",
            RelatorFamily::B3 => "B3",
            RelatorFamily::B4 => "B4",
            RelatorFamily::B5 => "B5",
            RelatorFamily::B6 => "B6",
            RelatorFamily::B7 => "B7",
            RelatorFamily::B8 => "B8",
            RelatorFamily::C1 => "C1",
            RelatorFamily::C2 => "C2",
            RelatorFamily::C3 => "C3",
            RelatorFamily::C4 => "C4",
            RelatorFamily::Small => "small-case",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for RelatorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for RelatorFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub family: RelatorFamily,
    /// Instance parameters, e.g. `i=3` or `i=1,j=3`; empty when the family
    /// has a single member.
    pub label: String,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    spec: SurfaceSpec,
    generators: Vec<Generator>,
    relators: Vec<Relator>,
}

impl Presentation {
    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn family(&self, family: RelatorFamily) -> impl Iterator<Item = &Relator> {
        self.relators.iter().filter(move |r| r.family == family)
    }

    pub fn count(&self, family: RelatorFamily) -> usize {
        self.family(family).count()
    }

    /// The flat enumeration format: one generator per letter `a`, `b`, ...,
    /// upper case for inverses.
    ///
    /// ```text
    /// genus 2
    /// boundary 0
    /// generators 2
    /// names a1 y
    /// relator small-case aa
    /// ```
    pub fn to_flat(&self) -> Result<String> {
        if self.generators.len() > 26 {
            return Err(Error::OutOfRange(format!(
                "flat format supports at most 26 generators, have {}",
                self.generators.len()
            )));
        }
        let index: HashMap<&Generator, usize> =
            self.generators.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let mut out = String::new();
        let _ = writeln!(out, "genus {}", self.spec.genus());
        let _ = writeln!(out, "boundary {}", self.spec.boundary());
        let _ = writeln!(out, "generators {}", self.generators.len());
        let names: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(out, "names {}", names.join(" "));
        for r in &self.relators {
            let mut letters = String::with_capacity(r.word.letter_len());
            for s in r.word.syllables() {
                let i = index[&s.gen];
                let ch = if s.exp > 0 {
                    (b'a' + i as u8) as char
                } else {
                    (b'A' + i as u8) as char
                };
                for _ in 0..s.exp.unsigned_abs() {
                    letters.push(ch);
                }
            }
            let _ = writeln!(out, "relator {} {}", r.family, letters);
        }
        Ok(out)
    }
}

struct Builder {
    relators: Vec<Relator>,
}

impl Builder {
    fn eq(&mut self, family: RelatorFamily, label: String, lhs: Word, rhs: Word) {
        self.rel(family, label, lhs.concat(&rhs.inverse()));
    }

    fn rel(&mut self, family: RelatorFamily, label: String, w: Word) {
        self.relators.push(Relator {
            family,
            label,
            word: w.reduce(),
        });
    }
}

fn w(text: &str) -> Word {
    text.parse().expect("built-in relator text parses")
}

pub fn stukow_presentation(spec: &SurfaceSpec) -> Result<Presentation> {
    use RelatorFamily::*;

    let (g, n) = (spec.genus(), spec.boundary());
    if g < 2 {
        return Err(Error::InvalidSurface {
            genus: g,
            boundary: n,
            reason: "the finite presentation needs g >= 2".into(),
        });
    }
    let mut generators: Vec<Generator> = (1..g).map(|i| Generator::a(i).expect("i >= 1")).collect();
    generators.push(Generator::y());
    if g >= 4 {
        generators.push(Generator::b());
    }
    let mut out = Builder { relators: Vec::new() };
    let none = String::new;

    match (g, n) {
        (2, 0) => {
            out.rel(Small, "a1^2".into(), a(1).pow(2));
            out.rel(Small, "y^2".into(), y().pow(2));
            out.rel(Small, "(a1 y)^2".into(), (a(1) * y()).pow(2));
        }
        (2, 1) => {
            out.eq(Small, "y a1 y^-1 = a1^-1".into(), w("y a1 y^-1"), a(1).inverse());
        }
        (3, 0) => {
            out.eq(Small, "braid".into(), w("a1 a2 a1"), w("a2 a1 a2"));
            out.rel(Small, "y^2".into(), y().pow(2));
            out.rel(Small, "(a1 y)^2".into(), (a(1) * y()).pow(2));
            out.rel(Small, "(a2 y)^2".into(), (a(2) * y()).pow(2));
            out.rel(Small, "(a1 a2)^6".into(), (a(1) * a(2)).pow(6));
        }
        _ => {
            if g >= 4 {
                for i in 1..g {
                    for j in (i + 2)..g {
                        out.rel(A1, format!("i={i},j={j}"), commutator(&a(i), &a(j)));
                    }
                }
            }
            for i in 1..=g - 2 {
                let lhs = a(i).concat(&a(i + 1)).concat(&a(i));
                let rhs = a(i + 1).concat(&a(i)).concat(&a(i + 1));
                out.eq(A2, format!("i={i}"), lhs, rhs);
            }
            if g >= 4 {
                for i in (1..g).filter(|&i| i != 4) {
                    out.rel(A3, format!("i={i}"), commutator(&a(i), &b()));
                }
            }
            if g >= 5 {
                out.eq(A4, none(), w("a4 b a4"), w("b a4 b"));
                out.eq(A5, none(), w("a2 a3 a4 b").pow(10), w("a1 a2 a3 a4 b").pow(6));
            }
            if g >= 7 {
                out.eq(
                    A6,
                    none(),
                    w("a2 a3 a4 a5 a6 b").pow(12),
                    w("a1 a2 a3 a4 a5 a6 b").pow(9),
                );
            }
            if g == 6 {
                out.rel(A9a, none(), commutator(&b_chain_word(spec, 2)?, &b()));
            }
            if g >= 8 && g % 2 == 0 {
                let k = (g - 2) / 2;
                out.rel(A9b, format!("i={k}"), commutator(&a(g - 5), &b_chain_word(spec, k)?));
            }

            if g >= 4 {
                let inner = w("a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1");
                out.rel(B1, none(), commutator(&y(), &inner));
            }
            let v = w("a2 a1 y^-1 a2^-1 y a1 a2");
            out.eq(B2, none(), y().concat(&v).concat(&y()), a(1).concat(&v).concat(&a(1)));
            if g >= 4 {
                for i in 3..g {
                    out.rel(B3, format!("i={i}"), commutator(&a(i), &y()));
                }
            }
            out.rel(B4, none(), commutator(&a(2), &w("y a2 y^-1")));
            out.eq(B5, none(), w("y a1"), w("a1^-1 y"));
            if g >= 4 {
                out.eq(
                    B6,
                    none(),
                    w("b y b y^-1"),
                    w("a1 a2 a3 y^-1 a2 y a3^-1 a2^-1 a1^-1 a2^-1 a3^-1 y a2 y^-1 a3 a2"),
                );
            }
            if g >= 6 {
                let inner = w("a4 a5 a3 a4 a2 a3 a1 a2 y a2^-1 a1^-1 a3^-1 a2^-1 a4^-1 a3^-1 a5^-1 a4^-1");
                out.rel(B7, none(), commutator(&inner, &b()));
            }
            if g >= 5 {
                out.eq(
                    B8,
                    none(),
                    w("y a1^-1 a2^-1 a3^-1 a4^-1 b a4 a3 a2 a1 y^-1 a1^-1 a2^-1 a3^-1 a4^-1 b^-1 a4 a3 a2 a1"),
                    w("a4^-1 a3^-1 a2^-1 y a2 a3 a4 a3^-1 a2^-1 y^-1 a2 a3 a2^-1 y a2 y^-1"),
                );
            }

            if n == 0 && g >= 4 {
                if g % 2 == 0 {
                    out.rel(C1, none(), a_run(1, g - 1).pow(g as i64));
                }
                let rho = rho_word(spec)?;
                out.rel(C2, none(), commutator(&a(1), &rho));
                out.rel(C3, none(), rho.pow(2));
                if g % 2 == 1 {
                    let big_a = a_run(2, g - 1);
                    let block = y().inverse().concat(&big_a).concat(&y()).concat(&big_a);
                    out.rel(C4, none(), block.pow(((g - 1) / 2) as i64));
                }
            }
        }
    }

    Ok(Presentation {
        spec: *spec,
        generators,
        relators: out.relators,
    })
}

/// The words `b_0 = a_1`, `b_1 = b` and
/// `b_{i+1} = (b_{i-1} a_{2i} a_{2i+1} a_{2i+2} a_{2i+3} b_i)^5 (b_{i-1} a_{2i} ... a_{2i+3})^{-6}`.
///
/// Defined for `g >= 4` and `0 <= i <= (g-2)/2`, which is exactly the range
/// where every `a_j` used exists.
pub fn b_chain_word(spec: &SurfaceSpec, i: usize) -> Result<Word> {
    let g = spec.genus();
    if g < 4 {
        return Err(Error::OutOfRange(format!("b_i needs g >= 4, got g = {g}")));
    }
    let top = (g - 2) / 2;
    if i > top {
        return Err(Error::OutOfRange(format!("b_{i} is only defined for i <= {top} when g = {g}")));
    }
    let mut chain = vec![a(1), b()];
    for k in 1..i {
        let run = a_run(2 * k, 2 * k + 3);
        let head = chain[k - 1].concat(&run);
        let next = head.concat(&chain[k]).pow(5).concat(&head.pow(-6)).reduce();
        chain.push(next);
    }
    Ok(chain.swap_remove(i))
}

/// `rho`: `(a_1 ... a_{g-1})^g` for odd `g`, and
/// `(y^{-1} A y A)^{(g-2)/2} y^{-1} A` with `A = a_2 ... a_{g-1}` for even `g`.
pub fn rho_word(spec: &SurfaceSpec) -> Result<Word> {
    let g = spec.genus();
    if g < 4 || !spec.is_closed() {
        return Err(Error::OutOfRange(format!("rho is defined for closed surfaces with g >= 4, got {spec}")));
    }
    if g % 2 == 1 {
        return Ok(a_run(1, g - 1).pow(g as i64));
    }
    let big_a = a_run(2, g - 1);
    let block = y().inverse().concat(&big_a).concat(&y()).concat(&big_a);
    Ok(block.pow(((g - 2) / 2) as i64).concat(&y().inverse()).concat(&big_a).reduce())
}
