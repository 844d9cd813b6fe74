//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line; every threshold below is fixed and exact unless it is a time budget.

use std::time::{Duration, Instant};

use crosscap::derivation::{builtin_script, mutate, mutations, replay, DerivationScript};
use crosscap::gf2::Z2Vector;
use crosscap::groupcalc::{abelianization, smith_normal_form, structure, todd_coxeter, FpGroup};
use crosscap::oracle::{check_relator, word_matrix};
use crosscap::presentation::{stukow_presentation, RelatorFamily};
use crosscap::relation::{
    braid_i, braid_ii, chain_k, lantern, push_factor, push_product, trivial_twist, y_square, RelationTag, Sign,
    TrivialKind,
};
use crosscap::surface::BoundaryPart;
use crosscap::word::{Letter, Word};
use crosscap::{CurveSymbol, Generator, SurfaceSpec, Z2Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PRESENTATION_BUDGET: Duration = Duration::from_secs(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(10);
const GROUP_BUDGET: Duration = Duration::from_secs(1);
const SCRIPT_BUDGET: Duration = Duration::from_secs(1);

const GENUS_RANGE: std::ops::RangeInclusive<usize> = 2..=12;
const MUTATIONS_PER_SCRIPT: usize = 100;
const RANDOM_WORDS: usize = 10_000;
const HOMOMORPHISM_PAIRS: usize = 1_000;
const SNF_SHUFFLES: usize = 100;
const SEED: u64 = 0x5eed_c40c;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn specs() -> impl Iterator<Item = SurfaceSpec> {
    GENUS_RANGE.flat_map(|g| (0..=1).map(move |n| SurfaceSpec::new(g, n).unwrap()))
}

fn c(text: &str) -> CurveSymbol {
    text.parse().unwrap()
}

fn timed(budget: Duration, what: &str, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if took > budget {
        return Err(format!("{what} took {took:?}, budget {budget:?}"));
    }
    Ok(format!("{out}; {took:.2?} of {budget:?}"))
}

/// Relator count per family, written directly from the index ranges of the
/// presentation rather than derived from the generator code.
fn expected_counts(g: usize, n: usize) -> Vec<(RelatorFamily, usize)> {
    use RelatorFamily::*;
    match (g, n) {
        (2, 0) => return vec![(Small, 3)],
        (2, 1) => return vec![(Small, 1)],
        (3, 0) => return vec![(Small, 5)],
        _ => {}
    }
    let closed = n == 0;
    let even = g.is_multiple_of(2);
    let at_least = |k: usize| usize::from(g >= k);
    vec![
        (A1, if g >= 4 { (g - 2) * (g - 3) / 2 } else { 0 }),
        (A2, g - 2),
        (A3, if g >= 4 { (1..g).filter(|&i| i != 4).count() } else { 0 }),
        (A4, at_least(5)),
        (A5, at_least(5)),
        (A6, at_least(7)),
        (A9a, usize::from(g == 6)),
        (A9b, usize::from(g >= 8 && even)),
        (B1, at_least(4)),
        (B2, 1),
        (B3, g.saturating_sub(3)),
        (B4, 1),
        (B5, 1),
        (B6, at_least(4)),
        (B7, at_least(6)),
        (B8, at_least(5)),
        (C1, usize::from(closed && even && g >= 4)),
        (C2, usize::from(closed && g >= 4)),
        (C3, usize::from(closed && g >= 4)),
        (C4, usize::from(closed && !even && g >= 5)),
        (Small, 0),
    ]
}

fn criterion_1() -> Outcome {
    timed(PRESENTATION_BUDGET, "presentations", || {
        let mut total = 0;
        for spec in specs() {
            let p = stukow_presentation(&spec).map_err(|e| format!("{spec}: {e}"))?;
            for (family, want) in expected_counts(spec.genus(), spec.boundary()) {
                let got = p.count(family);
                if got != want {
                    return Err(format!("{spec}: {family} has {got} relators, expected {want}"));
                }
            }
            let listed: usize = expected_counts(spec.genus(), spec.boundary()).iter().map(|(_, k)| k).sum();
            if p.relators().len() != listed {
                return Err(format!("{spec}: {} relators, families account for {listed}", p.relators().len()));
            }
            total += listed;
        }
        for (g, n, want) in [(2, 0, 3), (3, 0, 5), (4, 1, 12)] {
            let got = stukow_presentation(&SurfaceSpec::new(g, n).unwrap()).unwrap().relators().len();
            if got != want {
                return Err(format!("N({g},{n}) has {got} relators, expected {want}"));
            }
        }
        Ok(format!("{total} relators in 22 presentations, counts (2,0)=3 (3,0)=5 (4,1)=12"))
    })
}

fn criterion_2() -> Outcome {
    timed(ORACLE_BUDGET, "oracle sweep", || {
        let mut checked = 0;
        let mut seen = std::collections::BTreeSet::new();
        for spec in specs() {
            let p = stukow_presentation(&spec).map_err(|e| e.to_string())?;
            for r in p.relators() {
                let check = check_relator(&spec, &r.word).map_err(|e| format!("{spec} {}: {e}", r.family))?;
                if !check.trivial {
                    return Err(format!("{spec}: {} {} acts non-trivially", r.family, r.label));
                }
                seen.insert(r.family);
                checked += 1;
            }
        }
        use RelatorFamily::*;
        for f in [A5, A6, A9a, A9b, C1, C2, C3, C4] {
            if !seen.contains(&f) {
                return Err(format!("family {f} never exercised"));
            }
        }
        Ok(format!("{checked} relators trivial on Z2-homology"))
    })
}

fn criterion_3() -> Outcome {
    let group = |g, n| FpGroup::from_presentation(&stukow_presentation(&SurfaceSpec::new(g, n).unwrap()).unwrap());
    let mut parts = Vec::new();

    parts.push(timed(GROUP_BUDGET, "coset enumeration (2,0)", || {
        let t = todd_coxeter(&group(2, 0), &[], 1000).map_err(|e| e.to_string())?;
        let s = structure(&t).map_err(|e| e.to_string())?.ok_or("table did not close")?;
        if s.order != 4 || !s.abelian || s.exponent != 2 {
            return Err(format!("(2,0): {s:?}, expected order 4, abelian, exponent 2"));
        }
        Ok("(2,0) order 4 abelian exponent 2".into())
    })?);

    parts.push(timed(GROUP_BUDGET, "coset enumeration (2,1)", || {
        let g = group(2, 1);
        let sub = vec![
            g.encode(&"a1".parse().unwrap()).unwrap(),
            g.encode(&"y^2".parse().unwrap()).unwrap(),
        ];
        let t = todd_coxeter(&g, &sub, 1000).map_err(|e| e.to_string())?;
        match t.index() {
            Some(2) => Ok("(2,1) index 2 over <a1, y^2>".into()),
            other => Err(format!("(2,1) over <a1, y^2>: index {other:?}, expected 2")),
        }
    })?);

    parts.push(timed(GROUP_BUDGET, "abelianization", || {
        let want: [(usize, usize, usize, Vec<u64>); 3] = [(2, 0, 0, vec![2, 2]), (2, 1, 1, vec![2]), (3, 0, 0, vec![2, 2])];
        for (g, n, rank, torsion) in want {
            let ab = abelianization(&stukow_presentation(&SurfaceSpec::new(g, n).unwrap()).unwrap());
            if ab.free_rank != rank || ab.torsion_u64() != torsion {
                return Err(format!("({g},{n}) abelianizes to {ab}, expected rank {rank} torsion {torsion:?}"));
            }
        }
        Ok("abelianizations Z/2+Z/2, Z+Z/2, Z/2+Z/2".into())
    })?);

    Ok(parts.join("; "))
}

fn criterion_4_scripts() -> Vec<DerivationScript> {
    let mut out = Vec::new();
    let closed = |g| SurfaceSpec::closed(g).unwrap();
    for g in [4, 6, 8, 10] {
        out.push(builtin_script(&closed(g), "C1").unwrap());
        out.push(builtin_script(&closed(g), "C3-even").unwrap());
    }
    for g in [5, 7, 9, 11] {
        out.push(builtin_script(&closed(g), "C3-odd").unwrap());
        out.push(builtin_script(&closed(g), "C4").unwrap());
    }
    for spec in specs() {
        out.push(builtin_script(&spec, "Y-square").unwrap());
    }
    out
}

fn criterion_4() -> Outcome {
    let scripts = criterion_4_scripts();
    let mut steps = 0;
    for s in &scripts {
        timed(SCRIPT_BUDGET, &format!("{} on {}", s.name, s.spec), || {
            let r = replay(s);
            if !r.passed {
                return Err(format!("{} on {} failed:\n{r}", s.name, s.spec));
            }
            if r.steps.len() != s.steps.len() {
                return Err(format!("{} on {}: {} of {} steps replayed", s.name, s.spec, r.steps.len(), s.steps.len()));
            }
            steps += r.steps.len();
            Ok(String::new())
        })?;
    }
    Ok(format!("{} scripts, {steps} steps, each under {SCRIPT_BUDGET:?}", scripts.len()))
}

fn criterion_5() -> Outcome {
    let s4 = SurfaceSpec::closed(4).unwrap();
    let s5 = SurfaceSpec::closed(5).unwrap();
    let s6 = SurfaceSpec::closed(6).unwrap();
    let zero = |g| Z2Vector::zeros(g);
    let negatives: Vec<(RelationTag, &str, bool)> = vec![
        (
            RelationTag::R0,
            "twist on a non-null curve",
            trivial_twist(&s4, c("g:1,2"), TrivialKind::Disk).is_err(),
        ),
        (
            RelationTag::RIi,
            "image with the wrong class",
            braid_i(&s4, "a2".parse().unwrap(), c("al:1"), c("al:1"), Sign::Plus).is_err(),
        ),
        (
            RelationTag::RIi,
            "one-sided image",
            braid_i(&s4, "a2".parse().unwrap(), c("al:1"), c("m:1"), Sign::Plus).is_err(),
        ),
        (
            RelationTag::RIii,
            "two-sided pushed curve",
            braid_ii(&s4, Word::identity(), (c("al:1"), c("al:2")), (c("al:1"), c("al:2")), Sign::Plus).is_err(),
        ),
        (
            RelationTag::RIIk,
            "wrong boundary count",
            chain_k(&s4, vec![c("al:1"), c("al:2")], vec![c("cb:1-2:whole"), c("cb:1-2:whole")], vec![Sign::Plus; 2])
                .is_err(),
        ),
        (
            RelationTag::RIIk,
            "curves do not form a chain",
            chain_k(&s5, vec![c("al:1"), c("al:3")], vec![c("cb:1-2:whole")], vec![Sign::Plus]).is_err(),
        ),
        (
            RelationTag::RIII,
            "boundary classes do not close up",
            lantern(
                &s4,
                [c("al:1"), c("al:2"), c("g:1,3")],
                [c("al:1"), c("al:2"), c("g:1,3"), c("al:3")],
                [Sign::Plus; 7],
            )
            .is_err(),
        ),
        (
            RelationTag::RIV,
            "product with the wrong class",
            push_product(&s4, c("m:1"), c("al:1"), c("g:1,3"), c("g:1,2,4")).is_err(),
        ),
        (
            RelationTag::RV,
            "two-sided pushing curve",
            push_factor(&s4, c("m:1"), c("al:1"), [c("al:2"), c("al:2")], [Sign::Plus; 2]).is_err(),
        ),
        (
            RelationTag::RYSQ,
            "delta not null-homologous",
            y_square(&s4, c("m:1"), c("al:1"), c("al:3"), Sign::Plus).is_err(),
        ),
        (
            RelationTag::RYSQ,
            "one-sided delta",
            y_square(&s6, c("m:1"), c("al:1"), CurveSymbol::declared("d", zero(6), crosscap::Sidedness::OneSided), Sign::Plus)
                .is_err(),
        ),
    ];
    let mut tags = std::collections::BTreeSet::new();
    for (tag, what, rejected) in &negatives {
        if !rejected {
            return Err(format!("{tag}: {what} was accepted"));
        }
        tags.insert(tag.name());
    }
    let all = [
        RelationTag::R0,
        RelationTag::RIi,
        RelationTag::RIii,
        RelationTag::RIIk,
        RelationTag::RIII,
        RelationTag::RIV,
        RelationTag::RV,
        RelationTag::RYSQ,
    ];
    if let Some(missing) = all.iter().find(|t| !tags.contains(t.name())) {
        return Err(format!("no negative case for {missing}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let scripts = criterion_4_scripts();
    let mut total = 0;
    for s in &scripts {
        let mut failed = 0;
        for _ in 0..MUTATIONS_PER_SCRIPT {
            let i = rng.gen_range(0..s.steps.len());
            let options = mutations(s, i);
            let m = options.choose(&mut rng).expect("every step has mutations");
            let r = replay(&mutate(s, i, m));
            match &r.failure {
                Some(f) if !r.passed && f.step == Some(i + 1) => failed += 1,
                _ => {
                    return Err(format!(
                        "{} on {}: mutation {m:?} of step {} was not caught there: {:?}",
                        s.name,
                        s.spec,
                        i + 1,
                        r.failure
                    ))
                }
            }
        }
        total += failed;
    }
    Ok(format!(
        "{} crafted instances rejected across 8 tags; {total}/{} mutations failed at the mutated step",
        negatives.len(),
        scripts.len() * MUTATIONS_PER_SCRIPT
    ))
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[Generator], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter {
            gen: gens.choose(rng).unwrap().clone(),
            inverse: rng.gen_bool(0.5),
        })
        .collect();
    // Raw concatenation: from_letters reduces, so build syllable by syllable.
    letters.iter().fold(Word::identity(), |w, l| {
        w.concat(&Word::power(l.gen.clone(), if l.inverse { -1 } else { 1 }))
    })
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let spec = SurfaceSpec::closed(6).unwrap();
    let gens: Vec<Generator> = stukow_presentation(&spec).unwrap().generators().to_vec();

    for k in 0..RANDOM_WORDS {
        let w = random_word(&mut rng, &gens, 40);
        let r = w.reduce();
        if r.reduce() != r || !r.is_reduced() {
            return Err(format!("word {k}: reduction not idempotent on `{w}`"));
        }
        if !w.concat(&w.inverse()).reduce().is_empty() || !w.inverse().concat(&w).reduce().is_empty() {
            return Err(format!("word {k}: `{w}` does not cancel against its inverse"));
        }
    }

    let mut transvections = 0;
    for g in GENUS_RANGE {
        for bits in 1u32..(1 << g) {
            if bits.count_ones() % 2 == 1 {
                continue;
            }
            let v = Z2Vector::from_positions(g, (0..g).filter(|i| bits >> i & 1 == 1));
            let t = Z2Matrix::transvection(&v);
            if !t.preserves_form() || !t.mul(&t).is_identity() {
                return Err(format!("g={g}: transvection along {v} is not an orthogonal involution"));
            }
            transvections += 1;
        }
    }

    for spec in specs() {
        let gens: Vec<Generator> = stukow_presentation(&spec).unwrap().generators().to_vec();
        for _ in 0..HOMOMORPHISM_PAIRS / 22 + 1 {
            let u = random_word(&mut rng, &gens, 25);
            let v = random_word(&mut rng, &gens, 25);
            let lhs = word_matrix(&spec, &u.concat(&v)).map_err(|e| e.to_string())?;
            let rhs = word_matrix(&spec, &u).unwrap().mul(&word_matrix(&spec, &v).unwrap());
            if lhs != rhs {
                return Err(format!("{spec}: M(uv) != M(u)M(v) for u=`{u}`, v=`{v}`"));
            }
        }
    }
    let pairs = 22 * (HOMOMORPHISM_PAIRS / 22 + 1);

    for k in 0..SNF_SHUFFLES {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let mut m: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let before = smith_normal_form(&m, cols);
        m.shuffle(&mut rng);
        let mut perm: Vec<usize> = (0..cols).collect();
        perm.shuffle(&mut rng);
        let shuffled: Vec<Vec<i64>> = m.iter().map(|r| perm.iter().map(|&j| r[j]).collect()).collect();
        let after = smith_normal_form(&shuffled, cols);
        if before != after {
            return Err(format!("shuffle {k}: invariants {before} became {after}"));
        }
    }

    Ok(format!(
        "{RANDOM_WORDS} words, {transvections} transvections, {pairs} homomorphism pairs, {SNF_SHUFFLES} SNF shuffles"
    ))
}

/// Writes straight to stderr so the verdict lines show up even when the
/// harness captures `println!` output.
fn report(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 6] = [
        ("presentation fidelity", criterion_1),
        ("oracle completeness over relators", criterion_2),
        ("small-group exactness", criterion_3),
        ("derivation replay", criterion_4),
        ("negative-case robustness", criterion_5),
        ("algebraic property suites", criterion_6),
    ];
    let mut failures = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => report(&format!("criterion {}: PASS {name} ({detail})", i + 1)),
            Err(why) => {
                report(&format!("criterion {}: FAIL {name} ({why})", i + 1));
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}

#[test]
fn chain_boundary_parts_are_distinct() {
    // Sanity check on the symbols the C4 script relies on.
    let d1 = CurveSymbol::chain_boundary(2, 4, BoundaryPart::D1).unwrap();
    let d2 = CurveSymbol::chain_boundary(2, 4, BoundaryPart::D2).unwrap();
    assert_ne!(d1, d2);
}
