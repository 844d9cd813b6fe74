//! Machine-checked word rewriting.
//!
//! A [`DerivationScript`] claims `lhs = rhs` and justifies it with a list of
//! [`Step`]s. Each step optionally inserts a cancelling pair `f f^{-1}`
//! (an *expansion*), then replaces a literal subword that equals one side
//! of a validated [`RelationInstance`] by the other side, and freely
//! reduces. The replay checks, at every step:
//!
//! 1. the instance passes its family's validator;
//! 2. the cited side occurs literally at the cited position;
//! 3. the homology oracle still agrees with the claim's left-hand side;
//! 4. the result matches the step's recorded checkpoint, if any.
//!
//! The first failing check stops the replay and is reported with its step.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{Z2Matrix, Z2Vector};
use crate::oracle::Oracle;
use crate::par;
use crate::relation::{RelationInstance, RelationParams, RelationTag, Sign, TrivialKind};
use crate::surface::{curve_class, BoundaryPart, CurveSymbol, Sidedness, SurfaceSpec};
use crate::word::{a, a_run, Generator, Letter, Word};

/// Which side of the instance is matched: `Forward` rewrites lhs to rhs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "lhs->rhs",
            Direction::Backward => "rhs->lhs",
        })
    }
}

/// Insert `word · word^{-1}` before letter `at`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expansion {
    pub at: usize,
    pub word: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    /// Letter offset of the matched subword, after any expansion.
    pub position: usize,
    pub direction: Direction,
    /// Use the inverted relation `lhs^{-1} = rhs^{-1}`.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub inverted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion: Option<Expansion>,
    pub instance: RelationParams,
    /// Expected word after the step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationScript {
    pub name: String,
    pub spec: SurfaceSpec,
    pub lhs: Word,
    pub rhs: Word,
    #[serde(default)]
    pub note: String,
    pub steps: Vec<Step>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    name: String,
    genus: usize,
    boundary: usize,
    lhs: Word,
    rhs: Word,
    #[serde(default)]
    note: String,
}

impl DerivationScript {
    /// One JSON record per line: a header, then one record per step.
    pub fn to_jsonl(&self) -> String {
        let header = Header {
            name: self.name.clone(),
            genus: self.spec.genus(),
            boundary: self.spec.boundary(),
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            note: self.note.clone(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for s in &self.steps {
            out.push_str(&serde_json::to_string(s).expect("step serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or_else(|| Error::Malformed("empty script".into()))?;
        let header: Header =
            serde_json::from_str(first).map_err(|e| Error::Malformed(format!("line 1: {e}")))?;
        let spec = SurfaceSpec::new(header.genus, header.boundary)?;
        let steps = lines
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Malformed(format!("line {}: {e}", i + 1))))
            .collect::<Result<Vec<Step>>>()?;
        Ok(DerivationScript {
            name: header.name,
            spec,
            lhs: header.lhs,
            rhs: header.rhs,
            note: header.note,
            steps,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureKind {
    /// Position or expansion point beyond the end of the word.
    Position,
    /// The instance's parameters fail its validator.
    Validation,
    /// The cited side does not occur at the cited position.
    Mismatch,
    /// The oracle no longer agrees with the claim.
    Oracle,
    /// The result differs from the step's recorded checkpoint.
    Checkpoint,
    /// All steps applied but the final word is not the claim's rhs.
    FinalWord,
    /// The claim itself could not be evaluated.
    Claim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// 1-based step index; `None` for claim-level failures.
    pub step: Option<usize>,
    pub kind: FailureKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub index: usize,
    pub tag: RelationTag,
    pub direction: Direction,
    pub inverted: bool,
    pub position: usize,
    /// Number of elementary braid relations a conjugation by a longer word
    /// stands for; 1 for ordinary steps.
    pub elementary: usize,
    pub before: Word,
    pub after: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub spec: SurfaceSpec,
    pub lhs: Word,
    pub rhs: Word,
    pub passed: bool,
    pub steps: Vec<StepReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "script {} on {}: {}",
            self.name,
            self.spec,
            if self.passed { "PASS" } else { "FAIL" }
        )?;
        writeln!(f, "claim: {} = {}", show(&self.lhs), show(&self.rhs))?;
        for s in &self.steps {
            let extra = if s.elementary > 1 {
                format!(" ({} elementary braids)", s.elementary)
            } else {
                String::new()
            };
            writeln!(
                f,
                "step {:>2} [{}] {}{} @{}{}: {}",
                s.index,
                s.tag,
                s.direction,
                if s.inverted { " inverted" } else { "" },
                s.position,
                extra,
                show(&s.after)
            )?;
        }
        if let Some(fail) = &self.failure {
            match fail.step {
                Some(i) => writeln!(f, "failed at step {i} ({:?}): {}", fail.kind, fail.message)?,
                None => writeln!(f, "failed ({:?}): {}", fail.kind, fail.message)?,
            }
        }
        Ok(())
    }
}

fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn find_last(haystack: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.len() > haystack.len() {
        return None;
    }
    (0..=haystack.len() - needle.len()).rev().find(|&i| haystack[i..i + needle.len()] == *needle)
}

fn expand(letters: &[Letter], e: &Expansion) -> std::result::Result<Vec<Letter>, String> {
    if e.at > letters.len() {
        return Err(format!("expansion point {} beyond word of length {}", e.at, letters.len()));
    }
    let pair = e.word.concat(&e.word.inverse()).letters();
    let mut out = Vec::with_capacity(letters.len() + pair.len());
    out.extend_from_slice(&letters[..e.at]);
    out.extend(pair);
    out.extend_from_slice(&letters[e.at..]);
    Ok(out)
}

/// The matched side and its replacement for a step.
fn sides(inst: &RelationInstance, direction: Direction, inverted: bool) -> (Word, Word) {
    let (from, to) = match direction {
        Direction::Forward => (inst.lhs().clone(), inst.rhs().clone()),
        Direction::Backward => (inst.rhs().clone(), inst.lhs().clone()),
    };
    if inverted {
        (from.inverse(), to.inverse())
    } else {
        (from, to)
    }
}

/// Splits a braid instance with a multi-letter conjugator into the chain of
/// single-letter braid relations it abbreviates. Intermediate images are
/// declared curves carrying the computed class. Other instances expand to
/// themselves.
pub fn expand_conjugation(spec: &SurfaceSpec, params: &RelationParams) -> Result<Vec<RelationInstance>> {
    let single = |f: &Word| f.letter_len() <= 1;
    match params {
        RelationParams::BraidTwist { f, curve, image, sign } if !single(f) => {
            let letters = f.letters();
            let mut oracle = Oracle::new(*spec);
            let mut cur = curve.clone();
            let mut out = Vec::with_capacity(letters.len());
            for (j, letter) in letters.iter().enumerate().rev() {
                let fj = Word::from_letters(std::slice::from_ref(letter));
                let (next, s) = if j == 0 {
                    (image.clone(), *sign)
                } else {
                    let v = oracle.word(&fj)?.apply(&curve_class(spec, &cur)?);
                    (CurveSymbol::declared(format!("im{j}"), v, Sidedness::TwoSided), Sign::Plus)
                };
                out.push(RelationInstance::build(
                    spec,
                    RelationParams::BraidTwist {
                        f: fj,
                        curve: cur,
                        image: next.clone(),
                        sign: s,
                    },
                )?);
                cur = next;
            }
            Ok(out)
        }
        RelationParams::BraidPush {
            f,
            mu,
            alpha,
            image_mu,
            image_alpha,
            sign,
        } if !single(f) => {
            let letters = f.letters();
            let mut oracle = Oracle::new(*spec);
            let (mut cm, mut ca) = (mu.clone(), alpha.clone());
            let mut out = Vec::with_capacity(letters.len());
            for (j, letter) in letters.iter().enumerate().rev() {
                let fj = Word::from_letters(std::slice::from_ref(letter));
                let (nm, na, s) = if j == 0 {
                    (image_mu.clone(), image_alpha.clone(), *sign)
                } else {
                    let m = oracle.word(&fj)?;
                    let vm = m.apply(&curve_class(spec, &cm)?);
                    let va = m.apply(&curve_class(spec, &ca)?);
                    (
                        CurveSymbol::declared(format!("im{j}.mu"), vm, Sidedness::OneSided),
                        CurveSymbol::declared_with_class(format!("im{j}.alpha"), va),
                        Sign::Plus,
                    )
                };
                out.push(RelationInstance::build(
                    spec,
                    RelationParams::BraidPush {
                        f: fj,
                        mu: cm,
                        alpha: ca,
                        image_mu: nm.clone(),
                        image_alpha: na.clone(),
                        sign: s,
                    },
                )?);
                cm = nm;
                ca = na;
            }
            Ok(out)
        }
        other => Ok(vec![RelationInstance::build(spec, other.clone())?]),
    }
}

struct Applied {
    word: Word,
    tag: RelationTag,
    elementary: usize,
}

fn apply_step(spec: &SurfaceSpec, current: &Word, step: &Step) -> std::result::Result<Applied, (FailureKind, String)> {
    let inst = RelationInstance::build(spec, step.instance.clone()).map_err(|e| (FailureKind::Validation, e.to_string()))?;
    let elementary = expand_conjugation(spec, &step.instance)
        .map_err(|e| (FailureKind::Validation, format!("conjugation expansion: {e}")))?
        .len();
    let mut letters = current.letters();
    if let Some(e) = &step.expansion {
        letters = expand(&letters, e).map_err(|m| (FailureKind::Position, m))?;
    }
    let (from, to) = sides(&inst, step.direction, step.inverted);
    let pattern = from.letters();
    let end = step.position + pattern.len();
    if end > letters.len() {
        return Err((
            FailureKind::Position,
            format!("subword [{}, {end}) exceeds word length {}", step.position, letters.len()),
        ));
    }
    if letters[step.position..end] != pattern[..] {
        let found = Word::from_letters(&letters[step.position..end]);
        return Err((
            FailureKind::Mismatch,
            format!("expected `{}` at {}, found `{}`", show(&from), step.position, show(&found)),
        ));
    }
    let mut out = Vec::with_capacity(letters.len() - pattern.len() + to.letter_len());
    out.extend_from_slice(&letters[..step.position]);
    out.extend(to.letters());
    out.extend_from_slice(&letters[end..]);
    Ok(Applied {
        word: Word::from_letters(&out),
        tag: inst.tag(),
        elementary,
    })
}

/// Replays `script`, stopping at the first failing check.
pub fn replay(script: &DerivationScript) -> Report {
    let spec = script.spec;
    let mut report = Report {
        name: script.name.clone(),
        spec,
        lhs: script.lhs.clone(),
        rhs: script.rhs.clone(),
        passed: false,
        steps: Vec::with_capacity(script.steps.len()),
        failure: None,
    };
    let mut oracle = Oracle::new(spec);
    let target: Z2Matrix = match oracle.word(&script.lhs).and_then(|m| oracle.word(&script.rhs).map(|r| (m, r))) {
        Ok((m, r)) if m == r => m,
        Ok(_) => {
            report.failure = Some(Failure {
                step: None,
                kind: FailureKind::Claim,
                message: "the two sides of the claim have different oracle matrices".into(),
            });
            return report;
        }
        Err(e) => {
            report.failure = Some(Failure {
                step: None,
                kind: FailureKind::Claim,
                message: e.to_string(),
            });
            return report;
        }
    };

    let mut current = script.lhs.reduce();
    for (i, step) in script.steps.iter().enumerate() {
        let index = i + 1;
        let fail = |kind, message| Failure {
            step: Some(index),
            kind,
            message,
        };
        let applied = match apply_step(&spec, &current, step) {
            Ok(a) => a,
            Err((kind, message)) => {
                report.failure = Some(fail(kind, message));
                return report;
            }
        };
        match oracle.word(&applied.word) {
            Ok(m) if m == target => {}
            Ok(_) => {
                report.failure = Some(fail(FailureKind::Oracle, format!("oracle matrix changed at `{}`", show(&applied.word))));
                return report;
            }
            Err(e) => {
                report.failure = Some(fail(FailureKind::Oracle, e.to_string()));
                return report;
            }
        }
        if let Some(expected) = &step.result {
            if expected.reduce() != applied.word {
                report.failure = Some(fail(
                    FailureKind::Checkpoint,
                    format!("produced `{}`, checkpoint says `{}`", show(&applied.word), show(expected)),
                ));
                return report;
            }
        }
        report.steps.push(StepReport {
            index,
            tag: applied.tag,
            direction: step.direction,
            inverted: step.inverted,
            position: step.position,
            elementary: applied.elementary,
            before: current,
            after: applied.word.clone(),
        });
        current = applied.word;
    }
    if current != script.rhs.reduce() {
        report.failure = Some(Failure {
            step: None,
            kind: FailureKind::FinalWord,
            message: format!("final word `{}` is not `{}`", show(&current), show(&script.rhs)),
        });
        return report;
    }
    report.passed = true;
    report
}

/// Replays independent scripts, in parallel when enabled.
pub fn replay_all(scripts: &[DerivationScript]) -> Vec<Report> {
    par::map(scripts, replay)
}

pub fn replay_all_sequential(scripts: &[DerivationScript]) -> Vec<Report> {
    par::map_sequential(scripts, replay)
}

// ---------------------------------------------------------------------------
// Built-in scripts

pub const SCRIPT_NAMES: [&str; 5] = ["C1", "C3-odd", "C3-even", "C4", "Y-square"];

/// Records steps while simulating them, locating each cited subword as the
/// last occurrence in the current word.
struct Builder {
    spec: SurfaceSpec,
    word: Word,
    steps: Vec<Step>,
}

enum Locate {
    Last,
    At(usize),
}

impl Builder {
    fn new(spec: SurfaceSpec, lhs: &Word) -> Self {
        Builder {
            spec,
            word: lhs.reduce(),
            steps: Vec::new(),
        }
    }

    /// Letter index just after the last occurrence of `gen^sign`.
    fn after_last(&self, gen: &Generator, inverse: bool) -> Result<usize> {
        let letter = Letter {
            gen: gen.clone(),
            inverse,
        };
        self.word
            .letters()
            .iter()
            .rposition(|l| *l == letter)
            .map(|i| i + 1)
            .ok_or_else(|| Error::Malformed(format!("script builder: no {gen} in `{}`", self.word)))
    }

    fn step(
        &mut self,
        instance: RelationParams,
        direction: Direction,
        inverted: bool,
        expansion: Option<Expansion>,
        locate: Locate,
    ) -> Result<()> {
        let inst = RelationInstance::build(&self.spec, instance.clone())?;
        let (from, _) = sides(&inst, direction, inverted);
        let mut letters = self.word.letters();
        if let Some(e) = &expansion {
            letters = expand(&letters, e).map_err(Error::Malformed)?;
        }
        let position = match locate {
            Locate::At(p) => p,
            Locate::Last => find_last(&letters, &from.letters())
                .ok_or_else(|| Error::Malformed(format!("script builder: `{from}` not found in `{}`", self.word)))?,
        };
        let mut step = Step {
            position,
            direction,
            inverted,
            expansion,
            instance,
            result: None,
        };
        let applied = apply_step(&self.spec, &self.word, &step).map_err(|(_, m)| Error::Malformed(m))?;
        step.result = Some(applied.word.clone());
        self.word = applied.word;
        self.steps.push(step);
        Ok(())
    }

    fn finish(self, name: &str, lhs: Word, rhs: Word, note: &str) -> Result<DerivationScript> {
        if self.word != rhs.reduce() {
            return Err(Error::Malformed(format!("script builder for {name} ended at `{}`", self.word)));
        }
        Ok(DerivationScript {
            name: name.to_string(),
            spec: self.spec,
            lhs,
            rhs,
            note: note.to_string(),
            steps: self.steps,
        })
    }
}

fn mu1() -> CurveSymbol {
    CurveSymbol::mu(1).expect("index 1")
}

fn al(i: usize) -> CurveSymbol {
    CurveSymbol::alpha(i).expect("positive index")
}

fn gamma(idx: Vec<usize>) -> CurveSymbol {
    CurveSymbol::gamma(idx).expect("valid indices")
}

fn gamma_prime(idx: Vec<usize>) -> CurveSymbol {
    CurveSymbol::gamma_prime(idx).expect("valid indices")
}

/// `1, 4, 5, ..., top`: the image of `1, 2, ..., top-2` under `A^2`.
fn shifted(top: usize) -> Vec<usize> {
    std::iter::once(1).chain(4..=top).collect()
}

fn push_gen(mu: &CurveSymbol, alpha: &CurveSymbol) -> Generator {
    Generator::Push(mu.clone(), alpha.clone())
}

fn chain_curves(lo: usize, hi: usize) -> Vec<CurveSymbol> {
    (lo..=hi).map(al).collect()
}

fn require(spec: &SurfaceSpec, name: &str, ok: bool, why: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("script {name} is not defined on {spec}: {why}")))
    }
}

fn script_c1(spec: &SurfaceSpec) -> Result<DerivationScript> {
    let g = spec.genus();
    require(spec, "C1", spec.is_closed() && g >= 4 && g.is_multiple_of(2), "needs g >= 4 even and n = 0")?;
    let lhs = a_run(1, g - 1).pow(g as i64);
    let mut b = Builder::new(*spec, &lhs);
    let full = CurveSymbol::gamma_range(1, g)?;
    b.step(
        RelationParams::Chain {
            curves: chain_curves(1, g - 1),
            chain_signs: vec![Sign::Plus; g - 1],
            boundary: vec![full.clone(), full],
            boundary_signs: vec![Sign::Plus, Sign::Minus],
        },
        Direction::Forward,
        false,
        None,
        Locate::At(0),
    )?;
    b.finish("C1", lhs, Word::identity(), "odd chain whose two boundary curves coincide")
}

fn script_c3_odd(spec: &SurfaceSpec) -> Result<DerivationScript> {
    let g = spec.genus();
    require(spec, "C3-odd", spec.is_closed() && g >= 5 && g % 2 == 1, "needs g >= 5 odd and n = 0")?;
    let lhs = crate::presentation::rho_word(spec)?.pow(2);
    let mut b = Builder::new(*spec, &lhs);
    let delta = CurveSymbol::chain_boundary(1, g - 1, BoundaryPart::Whole)?;
    b.step(
        RelationParams::Chain {
            curves: chain_curves(1, g - 1),
            chain_signs: vec![Sign::Plus; g - 1],
            boundary: vec![delta.clone()],
            boundary_signs: vec![Sign::Plus],
        },
        Direction::Forward,
        false,
        None,
        Locate::At(0),
    )?;
    b.step(
        RelationParams::TrivialTwist {
            curve: delta,
            bounds: TrivialKind::Mobius,
        },
        Direction::Forward,
        false,
        None,
        Locate::At(0),
    )?;
    b.finish("C3-odd", lhs, Word::identity(), "even chain, then the boundary bounds a Mobius band")
}

/// Rewrites the rightmost unprocessed `y^{-1} A y A` (odd genus) or
/// `y A y^{-1} A` (even genus) block into `Y_{mu_1,c} A^2`.
fn block_to_push(b: &mut Builder, g: usize, product: CurveSymbol, y_inverse_first: bool) -> Result<()> {
    let f = a_run(3, g - 1);
    let fix = |f: Word| RelationParams::BraidPush {
        f,
        mu: mu1(),
        alpha: al(1),
        image_mu: mu1(),
        image_alpha: al(1),
        sign: Sign::Plus,
    };
    let g13 = gamma(vec![1, 3]);
    if y_inverse_first {
        // y^{-1} A y A: move F = a_3...a_{g-1} across y, then conjugate y by a_2.
        b.step(fix(f.inverse()), Direction::Backward, false, None, Locate::Last)?;
        let at = b.after_last(&Generator::y(), false)?;
        b.step(
            RelationParams::BraidPush {
                f: a(2),
                mu: mu1(),
                alpha: al(1),
                image_mu: mu1(),
                image_alpha: g13.clone(),
                sign: Sign::Plus,
            },
            Direction::Forward,
            false,
            Some(Expansion { at, word: a(2).inverse() }),
            Locate::Last,
        )?;
        b.step(
            RelationParams::PushProduct {
                mu: mu1(),
                alpha: al(1),
                beta: g13,
                product,
                signs: [Sign::Minus, Sign::Plus],
            },
            Direction::Backward,
            false,
            None,
            Locate::Last,
        )
    } else {
        // y A y^{-1} A: the same moves applied to y^{-1}.
        b.step(fix(f.inverse()), Direction::Backward, true, None, Locate::Last)?;
        let at = b.after_last(&Generator::y(), true)?;
        b.step(
            RelationParams::BraidPush {
                f: a(2),
                mu: mu1(),
                alpha: al(1),
                image_mu: mu1(),
                image_alpha: g13.clone(),
                sign: Sign::Minus,
            },
            Direction::Forward,
            true,
            Some(Expansion { at, word: a(2).inverse() }),
            Locate::Last,
        )?;
        b.step(
            RelationParams::PushProduct {
                mu: mu1(),
                alpha: al(1),
                beta: g13,
                product,
                signs: [Sign::Plus, Sign::Plus],
            },
            Direction::Backward,
            false,
            None,
            Locate::Last,
        )
    }
}

/// One rung of the ladder `Y_{c_3} A^2 Y_{prev} A^{-2} = Y_{next}`, where
/// `A^2 Y_{prev} A^{-2} = Y_{shifted}`.
fn ladder_rung(b: &mut Builder, g: usize, first: &CurveSymbol, prev: &CurveSymbol, image: CurveSymbol, next: CurveSymbol) -> Result<()> {
    let a2 = a_run(2, g - 1).pow(2);
    let at = b.after_last(&push_gen(&mu1(), prev), false)?;
    b.step(
        RelationParams::BraidPush {
            f: a2.clone(),
            mu: mu1(),
            alpha: prev.clone(),
            image_mu: mu1(),
            image_alpha: image.clone(),
            sign: Sign::Plus,
        },
        Direction::Forward,
        false,
        Some(Expansion { at, word: a2.inverse() }),
        Locate::Last,
    )?;
    b.step(
        RelationParams::PushProduct {
            mu: mu1(),
            alpha: first.clone(),
            beta: image,
            product: next,
            signs: [Sign::Plus, Sign::Plus],
        },
        Direction::Backward,
        false,
        None,
        Locate::Last,
    )
}

/// Rewrites the rightmost copy of `rho = y^{-1} A (y A y^{-1} A)^m` into
/// `Y_{mu_1, gamma_{1..g}} A^{g-1}`.
fn rho_to_push(b: &mut Builder, g: usize) -> Result<()> {
    let m = (g - 2) / 2;
    let g123 = CurveSymbol::gamma_range(1, 3)?;
    for _ in 0..m {
        block_to_push(b, g, g123.clone(), false)?;
    }
    for i in 2..=m {
        ladder_rung(
            b,
            g,
            &g123,
            &CurveSymbol::gamma_range(1, 2 * i - 1)?,
            gamma(shifted(2 * i + 1)),
            CurveSymbol::gamma_range(1, 2 * i + 1)?,
        )?;
    }
    // y^{-1} · A Y_{gamma_{1..g-1}} A^{-1} = y^{-1} Y_{gamma_{1,3,...,g}} = Y_{gamma_{1..g}}.
    let top = CurveSymbol::gamma_range(1, g - 1)?;
    let odd_tail = gamma(std::iter::once(1).chain(3..=g).collect());
    let big_a = a_run(2, g - 1);
    let at = b.after_last(&push_gen(&mu1(), &top), false)?;
    b.step(
        RelationParams::BraidPush {
            f: big_a.clone(),
            mu: mu1(),
            alpha: top,
            image_mu: mu1(),
            image_alpha: odd_tail.clone(),
            sign: Sign::Plus,
        },
        Direction::Forward,
        false,
        Some(Expansion { at, word: big_a.inverse() }),
        Locate::Last,
    )?;
    b.step(
        RelationParams::PushProduct {
            mu: mu1(),
            alpha: al(1),
            beta: odd_tail,
            product: CurveSymbol::gamma_range(1, g)?,
            signs: [Sign::Minus, Sign::Plus],
        },
        Direction::Backward,
        false,
        None,
        Locate::Last,
    )
}

fn script_c3_even(spec: &SurfaceSpec) -> Result<DerivationScript> {
    let g = spec.genus();
    require(spec, "C3-even", spec.is_closed() && g >= 4 && g.is_multiple_of(2), "needs g >= 4 even and n = 0")?;
    let lhs = crate::presentation::rho_word(spec)?.pow(2);
    let mut b = Builder::new(*spec, &lhs);
    rho_to_push(&mut b, g)?;
    rho_to_push(&mut b, g)?;

    // Y_{1..g} commutes with A, whose action on homology has order g-1.
    let full = CurveSymbol::gamma_range(1, g)?;
    let big_a = a_run(2, g - 1).pow(g as i64 - 1);
    let at = b.after_last(&push_gen(&mu1(), &full), false)?;
    b.step(
        RelationParams::BraidPush {
            f: big_a.clone(),
            mu: mu1(),
            alpha: full.clone(),
            image_mu: mu1(),
            image_alpha: full.clone(),
            sign: Sign::Plus,
        },
        Direction::Forward,
        false,
        Some(Expansion { at, word: big_a.inverse() }),
        Locate::Last,
    )?;
    let delta = CurveSymbol::chain_boundary(2, g - 1, BoundaryPart::Whole)?;
    b.step(
        RelationParams::Chain {
            curves: chain_curves(2, g - 1),
            chain_signs: vec![Sign::Plus; g - 2],
            boundary: vec![delta.clone()],
            boundary_signs: vec![Sign::Plus],
        },
        Direction::Forward,
        false,
        None,
        Locate::Last,
    )?;
    b.step(
        RelationParams::YSquare {
            mu: mu1(),
            alpha: full,
            delta,
            sign: Sign::Minus,
        },
        Direction::Forward,
        false,
        None,
        Locate::Last,
    )?;
    b.finish("C3-even", lhs, Word::identity(), "rho rewritten to a push along gamma_{1..g}, then Y-square")
}

fn script_c4(spec: &SurfaceSpec) -> Result<DerivationScript> {
    let g = spec.genus();
    require(spec, "C4", spec.is_closed() && g >= 5 && g % 2 == 1, "needs g >= 5 odd and n = 0")?;
    let m = (g - 1) / 2;
    let big_a = a_run(2, g - 1);
    let block = crate::word::y().inverse().concat(&big_a).concat(&crate::word::y()).concat(&big_a);
    let lhs = block.pow(m as i64);
    let mut b = Builder::new(*spec, &lhs);
    let p123 = gamma_prime(vec![1, 2, 3]);
    for _ in 0..m {
        block_to_push(&mut b, g, p123.clone(), true)?;
    }
    for i in 2..=m {
        let next = if 2 * i + 1 == g {
            CurveSymbol::gamma_range(1, g)?
        } else {
            gamma_prime((1..=2 * i + 1).collect())
        };
        ladder_rung(
            &mut b,
            g,
            &p123,
            &gamma_prime((1..=2 * i - 1).collect()),
            gamma_prime(shifted(2 * i + 1)),
            next,
        )?;
    }
    let d1 = CurveSymbol::chain_boundary(2, g - 1, BoundaryPart::D1)?;
    let d2 = CurveSymbol::chain_boundary(2, g - 1, BoundaryPart::D2)?;
    b.step(
        RelationParams::Chain {
            curves: chain_curves(2, g - 1),
            chain_signs: vec![Sign::Plus; g - 2],
            boundary: vec![d1.clone(), d2.clone()],
            boundary_signs: vec![Sign::Plus, Sign::Plus],
        },
        Direction::Forward,
        false,
        None,
        Locate::Last,
    )?;
    b.step(
        RelationParams::PushFactor {
            mu: mu1(),
            alpha: CurveSymbol::gamma_range(1, g)?,
            deltas: [d1.clone(), d2.clone()],
            signs: [Sign::Minus, Sign::Minus],
        },
        Direction::Forward,
        false,
        None,
        Locate::Last,
    )?;
    // t_{d2}^{-1} t_{d1} t_{d2} = t_{d1}: disjoint curves commute.
    b.step(
        RelationParams::BraidTwist {
            f: Word::power(Generator::Twist(d2), -1),
            curve: d1.clone(),
            image: d1,
            sign: Sign::Plus,
        },
        Direction::Forward,
        false,
        None,
        Locate::At(1),
    )?;
    b.finish("C4", lhs, Word::identity(), "blocks rewritten to pushes along gamma', then push-factorization")
}

/// `y^2 = t_delta` from push-product, push-factorization and a trivial twist.
fn script_y_square(spec: &SurfaceSpec) -> Result<DerivationScript> {
    let g = spec.genus();
    require(spec, "Y-square", g >= 2, "needs g >= 2")?;
    let zero = Z2Vector::zeros(g);
    let delta = CurveSymbol::declared("dN(m1.al1)", zero.clone(), Sidedness::TwoSided);
    let mobius = CurveSymbol::declared("mob(al1.al1)", zero, Sidedness::TwoSided);
    let loop2 = CurveSymbol::declared("al1.al1", Z2Vector::unit(g, 0), Sidedness::OneSided);
    let lhs = crate::word::y().pow(2);
    let rhs = Word::generator(Generator::Twist(delta.clone()));
    let mut b = Builder::new(*spec, &lhs);
    b.step(
        RelationParams::PushProduct {
            mu: mu1(),
            alpha: al(1),
            beta: al(1),
            product: loop2.clone(),
            signs: [Sign::Plus, Sign::Plus],
        },
        Direction::Backward,
        false,
        None,
        Locate::At(0),
    )?;
    b.step(
        RelationParams::PushFactor {
            mu: mu1(),
            alpha: loop2,
            deltas: [delta, mobius.clone()],
            signs: [Sign::Plus, Sign::Plus],
        },
        Direction::Forward,
        false,
        None,
        Locate::At(0),
    )?;
    b.step(
        RelationParams::TrivialTwist {
            curve: mobius,
            bounds: TrivialKind::Mobius,
        },
        Direction::Forward,
        false,
        None,
        Locate::Last,
    )?;
    b.finish("Y-square", lhs, rhs, "push along the doubled loop factors into the boundary twist")
}

/// The built-in script called `name` (case-insensitive) on `spec`.
pub fn builtin_script(spec: &SurfaceSpec, name: &str) -> Result<DerivationScript> {
    match name.to_ascii_lowercase().as_str() {
        "c1" => script_c1(spec),
        "c3-odd" => script_c3_odd(spec),
        "c3-even" => script_c3_even(spec),
        "c4" => script_c4(spec),
        "y-square" => script_y_square(spec),
        _ => Err(Error::OutOfRange(format!(
            "unknown script {name:?}; known: {}",
            SCRIPT_NAMES.join(", ")
        ))),
    }
}

/// Every built-in script defined on `spec`.
pub fn builtin_scripts(spec: &SurfaceSpec) -> Result<Vec<DerivationScript>> {
    let g = spec.genus();
    if g < 2 {
        return Err(Error::OutOfRange(format!("no scripts for {spec}")));
    }
    let names: &[&str] = match (spec.is_closed(), g.is_multiple_of(2)) {
        (true, true) if g >= 4 => &["C1", "C3-even", "Y-square"],
        (true, false) if g >= 5 => &["C3-odd", "C4", "Y-square"],
        _ => &["Y-square"],
    };
    names.iter().map(|n| builtin_script(spec, n)).collect()
}

// ---------------------------------------------------------------------------
// Tampering

/// A single-step corruption of a script, used to check that replay rejects
/// every altered step at that step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    ShiftPosition(isize),
    FlipDirection,
    ToggleInversion,
    /// Replace the `slot`-th curve parameter.
    ReplaceCurve { slot: usize, with: CurveSymbol },
    /// Flip the `slot`-th sign parameter.
    FlipSign { slot: usize },
    /// Append `a_1` to the conjugating word.
    PerturbConjugator,
    ShiftExpansion(isize),
    /// Prepend a letter to the expansion word.
    PerturbExpansionWord,
}

fn curves_mut(p: &mut RelationParams) -> Vec<&mut CurveSymbol> {
    match p {
        RelationParams::TrivialTwist { curve, .. } => vec![curve],
        RelationParams::BraidTwist { curve, image, .. } => vec![curve, image],
        RelationParams::BraidPush {
            mu,
            alpha,
            image_mu,
            image_alpha,
            ..
        } => vec![mu, alpha, image_mu, image_alpha],
        RelationParams::Chain { curves, boundary, .. } => curves.iter_mut().chain(boundary.iter_mut()).collect(),
        RelationParams::Lantern { interior, boundary, .. } => interior.iter_mut().chain(boundary.iter_mut()).collect(),
        RelationParams::PushProduct {
            mu,
            alpha,
            beta,
            product,
            ..
        } => vec![mu, alpha, beta, product],
        RelationParams::PushFactor { mu, alpha, deltas, .. } => {
            let [d1, d2] = deltas;
            vec![mu, alpha, d1, d2]
        }
        RelationParams::YSquare { mu, alpha, delta, .. } => vec![mu, alpha, delta],
    }
}

fn signs_mut(p: &mut RelationParams) -> Vec<&mut Sign> {
    match p {
        RelationParams::TrivialTwist { .. } => vec![],
        RelationParams::BraidTwist { sign, .. } | RelationParams::BraidPush { sign, .. } | RelationParams::YSquare { sign, .. } => {
            vec![sign]
        }
        RelationParams::Chain {
            chain_signs,
            boundary_signs,
            ..
        } => chain_signs.iter_mut().chain(boundary_signs.iter_mut()).collect(),
        RelationParams::Lantern { signs, .. } => signs.iter_mut().collect(),
        RelationParams::PushProduct { signs, .. } | RelationParams::PushFactor { signs, .. } => signs.iter_mut().collect(),
    }
}

/// Replacement candidates for a curve: a fixed pool of standard curves plus
/// the primed twin of a gamma curve (same class, different curve).
fn curve_pool(spec: &SurfaceSpec, c: &CurveSymbol) -> Vec<CurveSymbol> {
    let g = spec.genus();
    let mut pool = vec![al(1), mu1()];
    if g >= 3 {
        pool.push(al(2));
        pool.push(CurveSymbol::gamma_range(1, 3).expect("valid"));
    }
    match c {
        CurveSymbol::Gamma(idx) => pool.push(gamma_prime(idx.clone())),
        CurveSymbol::GammaPrime(idx) => pool.push(gamma(idx.clone())),
        _ => {}
    }
    pool.retain(|p| p != c);
    pool
}

/// All mutations applicable to step `index` (0-based) of `script`.
pub fn mutations(script: &DerivationScript, index: usize) -> Vec<Mutation> {
    let step = &script.steps[index];
    let mut out = vec![Mutation::ShiftPosition(1), Mutation::FlipDirection, Mutation::ToggleInversion];
    if step.position > 0 {
        out.push(Mutation::ShiftPosition(-1));
    }
    let mut params = step.instance.clone();
    for (slot, c) in curves_mut(&mut params).into_iter().enumerate() {
        for with in curve_pool(&script.spec, c) {
            out.push(Mutation::ReplaceCurve { slot, with });
        }
    }
    for slot in 0..signs_mut(&mut params).len() {
        out.push(Mutation::FlipSign { slot });
    }
    if matches!(step.instance, RelationParams::BraidTwist { .. } | RelationParams::BraidPush { .. }) {
        out.push(Mutation::PerturbConjugator);
    }
    if let Some(e) = &step.expansion {
        out.push(Mutation::ShiftExpansion(1));
        if e.at > 0 {
            out.push(Mutation::ShiftExpansion(-1));
        }
        out.push(Mutation::PerturbExpansionWord);
    }
    out
}

/// A copy of `script` with `mutation` applied to step `index` (0-based).
pub fn mutate(script: &DerivationScript, index: usize, mutation: &Mutation) -> DerivationScript {
    let mut out = script.clone();
    let step = &mut out.steps[index];
    match mutation {
        Mutation::ShiftPosition(d) => step.position = step.position.saturating_add_signed(*d),
        Mutation::FlipDirection => step.direction = step.direction.flip(),
        Mutation::ToggleInversion => step.inverted = !step.inverted,
        Mutation::ReplaceCurve { slot, with } => {
            if let Some(c) = curves_mut(&mut step.instance).into_iter().nth(*slot) {
                *c = with.clone();
            }
        }
        Mutation::FlipSign { slot } => {
            if let Some(s) = signs_mut(&mut step.instance).into_iter().nth(*slot) {
                *s = s.flip();
            }
        }
        Mutation::PerturbConjugator => {
            if let RelationParams::BraidTwist { f, .. } | RelationParams::BraidPush { f, .. } = &mut step.instance {
                *f = &*f * &a(1);
            }
        }
        Mutation::ShiftExpansion(d) => {
            if let Some(e) = &mut step.expansion {
                e.at = e.at.saturating_add_signed(*d);
            }
        }
        Mutation::PerturbExpansionWord => {
            if let Some(e) = &mut step.expansion {
                // Prepend a letter unrelated to the first one, so the inserted
                // pair starts differently. Appending could cancel inside `f f^{-1}`.
                let first = e.word.letters().first().map(|l| l.gen.clone());
                let x = if first == Generator::a(1).ok() { crate::word::y() } else { a(1) };
                e.word = &x * &e.word;
            }
        }
    }
    out
}
