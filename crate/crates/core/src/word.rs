//! Free-group words over Dehn twist and crosscap-pushing generators.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::surface::{curve_class, curve_sidedness, CurveSymbol, Sidedness, SurfaceSpec};
use crate::syntax::Cursor;

/// A formal generator: `t_c` for a two-sided `c`, or `Y_{mu,alpha}` for a
/// one-sided `mu` meeting `alpha` once. Equality is structural, so twists
/// about differently named curves are different generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Twist(CurveSymbol),
    Push(CurveSymbol, CurveSymbol),
}

impl Generator {
    /// `a_i = t_{alpha_i}`.
    pub fn a(i: usize) -> Result<Self> {
        Ok(Generator::Twist(CurveSymbol::alpha(i)?))
    }

    /// `b = t_beta`.
    pub fn b() -> Self {
        Generator::Twist(CurveSymbol::beta())
    }

    /// `y = Y_{mu_1, alpha_1}`.
    pub fn y() -> Self {
        Generator::Push(CurveSymbol::Gamma(vec![1]), CurveSymbol::Gamma(vec![1, 2]))
    }

    pub fn validate(&self, spec: &SurfaceSpec) -> Result<()> {
        let fail = |reason: String| Error::InvalidGenerator {
            generator: self.to_string(),
            reason,
        };
        match self {
            Generator::Twist(c) => {
                if curve_sidedness(spec, c)? != Sidedness::TwoSided {
                    return Err(fail(format!("twist curve {c} is one-sided")));
                }
            }
            Generator::Push(mu, alpha) => {
                if curve_sidedness(spec, mu)? != Sidedness::OneSided {
                    return Err(fail(format!("pushed curve {mu} is two-sided")));
                }
                let m = curve_class(spec, mu)?;
                let a = curve_class(spec, alpha)?;
                if !m.dot(&a) {
                    return Err(fail(format!("{mu} and {alpha} do not meet an odd number of times")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Twist(CurveSymbol::Gamma(idx)) if idx.len() == 2 && idx[1] == idx[0] + 1 => {
                write!(f, "a{}", idx[0])
            }
            Generator::Twist(CurveSymbol::Gamma(idx)) if idx.as_slice() == [1, 2, 3, 4] => {
                f.write_str("b")
            }
            Generator::Twist(c) => write!(f, "t[{c}]"),
            Generator::Push(CurveSymbol::Gamma(m), CurveSymbol::Gamma(a))
                if m.as_slice() == [1] && a.as_slice() == [1, 2] =>
            {
                f.write_str("y")
            }
            Generator::Push(m, a) => write!(f, "Y[{m};{a}]"),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Generator {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let w: Word = s.parse()?;
        match w.syllables() {
            [Syllable { gen, exp: 1 }] => Ok(gen.clone()),
            _ => Err(ParseError::new(0, "expected a single generator")),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Syllable {
    pub gen: Generator,
    pub exp: i64,
}

/// A single generator or its inverse.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(&self) -> Letter {
        Letter {
            gen: self.gen.clone(),
            inverse: !self.inverse,
        }
    }
}

/// A word in run-length form. Values are not automatically reduced; use
/// [`Word::reduce`] for the canonical freely reduced representative.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_syllables(syllables: Vec<Syllable>) -> Self {
        Word { syllables }
    }

    pub fn generator(gen: Generator) -> Self {
        Self::power(gen, 1)
    }

    pub fn power(gen: Generator, exp: i64) -> Self {
        Word {
            syllables: vec![Syllable { gen, exp }],
        }
        .reduce()
    }

    /// Product of the given generators, each to the first power.
    pub fn product<I: IntoIterator<Item = Generator>>(gens: I) -> Self {
        Word {
            syllables: gens.into_iter().map(|gen| Syllable { gen, exp: 1 }).collect(),
        }
        .reduce()
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word {
            syllables: letters
                .iter()
                .map(|l| Syllable {
                    gen: l.gen.clone(),
                    exp: if l.inverse { -1 } else { 1 },
                })
                .collect(),
        }
        .reduce()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.reduce().syllables.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, counting `x^5` as five.
    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.letter_len());
        for s in &self.syllables {
            let letter = Letter {
                gen: s.gen.clone(),
                inverse: s.exp < 0,
            };
            for _ in 0..s.exp.unsigned_abs() {
                out.push(letter.clone());
            }
        }
        out
    }

    /// The unique freely reduced form: no zero exponents, no two adjacent
    /// syllables on the same generator.
    pub fn reduce(&self) -> Word {
        let mut out: Vec<Syllable> = Vec::with_capacity(self.syllables.len());
        for s in &self.syllables {
            if s.exp == 0 {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.gen == s.gen => {
                    top.exp += s.exp;
                    if top.exp == 0 {
                        out.pop();
                    }
                }
                _ => out.push(s.clone()),
            }
        }
        Word { syllables: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.syllables.iter().all(|s| s.exp != 0)
            && self.syllables.windows(2).all(|w| w[0].gen != w[1].gen)
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen.clone(),
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    /// Juxtaposition without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut syllables = self.syllables.clone();
        syllables.extend(other.syllables.iter().cloned());
        Word { syllables }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut syllables = Vec::with_capacity(base.syllables.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            syllables.extend(base.syllables.iter().cloned());
        }
        Word { syllables }.reduce()
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.syllables.iter().map(|s| &s.gen)
    }

    /// Sum of exponents on `gen`.
    pub fn exponent_sum(&self, gen: &Generator) -> i64 {
        self.syllables.iter().filter(|s| &s.gen == gen).map(|s| s.exp).sum()
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs).reduce()
    }
}

impl Mul for Word {
    type Output = Word;

    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

/// `reduce(f w f^{-1})`.
pub fn conjugate(f: &Word, w: &Word) -> Word {
    f.concat(w).concat(&f.inverse()).reduce()
}

/// `[x, y] = x y x^{-1} y^{-1}`, reduced.
pub fn commutator(x: &Word, y: &Word) -> Word {
    x.concat(y).concat(&x.inverse()).concat(&y.inverse()).reduce()
}

pub fn parse_word(text: &str) -> std::result::Result<Word, ParseError> {
    text.parse()
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.gen)?;
            } else {
                write!(f, "{}^{}", s.gen, s.exp)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut cur = Cursor::new(s);
        let w = cur.word()?;
        cur.finish()?;
        Ok(w)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand used throughout the crate: `a_i` as a word.
pub fn a(i: usize) -> Word {
    Word::generator(Generator::a(i).expect("alpha index is positive"))
}

pub fn b() -> Word {
    Word::generator(Generator::b())
}

pub fn y() -> Word {
    Word::generator(Generator::y())
}

/// `a_lo a_{lo+1} ... a_hi` (identity when `lo > hi`).
pub fn a_run(lo: usize, hi: usize) -> Word {
    Word::product((lo..=hi).map(|i| Generator::a(i).expect("alpha index is positive")))
}
