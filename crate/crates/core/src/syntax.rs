//! Hand-rolled cursor for the curve and word grammars.
//!
//! ```text
//! curve := "g:" list | "gp:" list | "m:" INT | "al:" INT | "bt"
//!        | "cb:" INT "-" INT ":" ("whole" | "d1" | "d2")
//!        | "decl:" NAME ":" BITS ":" ("one" | "two")
//! word  := (term (WS term)*)?
//! term  := gen ("^" INT)?
//! gen   := "a" INT | "b" | "y" | "t[" curve "]" | "Y[" curve ";" curve "]"
//! ```

use crate::error::ParseError;
use crate::gf2::Z2Vector;
use crate::surface::{BoundaryPart, CurveSymbol, Sidedness};
use crate::word::{Generator, Syllable, Word};

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ParseError> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected {lit:?}")))
        }
    }

    fn take_while(&mut self, pred: impl Fn(u8) -> bool) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if pred(c)) {
            self.pos += 1;
        }
        // Only ASCII bytes pass the predicates used here.
        std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn unsigned(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(ParseError::new(start, "expected a number"));
        }
        digits
            .parse()
            .map_err(|_| ParseError::new(start, "number too large"))
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        let neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(ParseError::new(start, "expected an integer exponent"));
        }
        let mag: i64 = digits
            .parse()
            .map_err(|_| ParseError::new(start, "exponent too large"))?;
        Ok(if neg { -mag } else { mag })
    }

    fn index_list(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut out = vec![self.unsigned()?];
        while self.eat(",") {
            out.push(self.unsigned()?);
        }
        Ok(out)
    }

    pub(crate) fn curve(&mut self) -> Result<CurveSymbol, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let wrap = |e: crate::error::Error| match e {
            crate::error::Error::Parse(p) => p,
            other => ParseError::new(start, other.to_string()),
        };
        if self.eat("gp:") {
            let idx = self.index_list()?;
            CurveSymbol::gamma_prime(idx).map_err(wrap)
        } else if self.eat("g:") {
            let idx = self.index_list()?;
            CurveSymbol::gamma(idx).map_err(wrap)
        } else if self.eat("m:") {
            let i = self.unsigned()?;
            CurveSymbol::mu(i).map_err(wrap)
        } else if self.eat("al:") {
            let i = self.unsigned()?;
            CurveSymbol::alpha(i).map_err(wrap)
        } else if self.eat("bt") {
            Ok(CurveSymbol::beta())
        } else if self.eat("cb:") {
            let lo = self.unsigned()?;
            self.expect("-")?;
            let hi = self.unsigned()?;
            self.expect(":")?;
            let part = if self.eat("whole") {
                BoundaryPart::Whole
            } else if self.eat("d1") {
                BoundaryPart::D1
            } else if self.eat("d2") {
                BoundaryPart::D2
            } else {
                return Err(self.err("expected whole, d1 or d2"));
            };
            CurveSymbol::chain_boundary(lo, hi, part).map_err(wrap)
        } else if self.eat("decl:") {
            let name_at = self.pos;
            let name =
                self.take_while(|c| c.is_ascii_alphanumeric() || matches!(c, b'_' | b'.' | b'\'' | b'-' | b'(' | b')'));
            if name.is_empty() {
                return Err(ParseError::new(name_at, "expected a curve name"));
            }
            let name = name.to_string();
            self.expect(":")?;
            let bits_at = self.pos;
            let bits = self.take_while(|c| c == b'0' || c == b'1');
            if bits.is_empty() {
                return Err(ParseError::new(bits_at, "expected a bit string"));
            }
            let class = Z2Vector::parse_bits(bits).map_err(|e| e.shifted(bits_at))?;
            self.expect(":")?;
            let sided = if self.eat("one") {
                Sidedness::OneSided
            } else if self.eat("two") {
                Sidedness::TwoSided
            } else {
                return Err(self.err("expected one or two"));
            };
            Ok(CurveSymbol::declared(name, class, sided))
        } else {
            Err(self.err("unknown curve token"))
        }
    }

    fn generator(&mut self) -> Result<Generator, ParseError> {
        let start = self.pos;
        if self.eat("t[") {
            let c = self.curve()?;
            self.skip_ws();
            self.expect("]")?;
            Ok(Generator::Twist(c))
        } else if self.eat("Y[") {
            let mu = self.curve()?;
            self.skip_ws();
            self.expect(";")?;
            let alpha = self.curve()?;
            self.skip_ws();
            self.expect("]")?;
            Ok(Generator::Push(mu, alpha))
        } else if self.eat("a") {
            let i = self.unsigned()?;
            CurveSymbol::alpha(i)
                .map(Generator::Twist)
                .map_err(|e| ParseError::new(start, e.to_string()))
        } else if self.eat("b") {
            Ok(Generator::Twist(CurveSymbol::beta()))
        } else if self.eat("y") {
            Ok(Generator::y())
        } else {
            Err(self.err("unknown generator token"))
        }
    }

    pub(crate) fn word(&mut self) -> Result<Word, ParseError> {
        let mut syllables = Vec::new();
        loop {
            self.skip_ws();
            if self.at_end() {
                break;
            }
            let gen = self.generator()?;
            let exp = if self.eat("^") { self.signed()? } else { 1 };
            syllables.push(Syllable { gen, exp });
            if !self.at_end() && !matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
                return Err(self.err("expected whitespace between terms"));
            }
        }
        Ok(Word::from_syllables(syllables))
    }

    pub(crate) fn finish(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }
}
