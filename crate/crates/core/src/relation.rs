//! Concrete instances of the relation families of the infinite presentation
//! (trivial twists, the two braid relations, chain, lantern, push-product,
//! push-factorization) plus the derived Y-square relation.
//!
//! Each instance is built from declared parameters, checked against its
//! family's side conditions at the level of mod-2 classes, and finally
//! cross-checked with the homology oracle. Signs are recorded but cannot be
//! validated by anything here.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Z2Vector;
use crate::oracle::Oracle;
use crate::surface::{curve_class, curve_sidedness, CurveSymbol, Sidedness, SurfaceSpec};
use crate::word::{Generator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationTag {
    R0,
    #[serde(rename = "RI_i")]
    RIi,
    #[serde(rename = "RI_ii")]
    RIii,
    RIIk,
    RIII,
    RIV,
    RV,
    RYSQ,
}

impl RelationTag {
    pub fn name(&self) -> &'static str {
        match self {
            RelationTag::R0 => "R0",
            RelationTag::RIi => "RI_i",
            RelationTag::RIii => "RI_ii",
            RelationTag::RIIk => "RIIk",
            RelationTag::RIII => "RIII",
            RelationTag::RIV => "RIV",
            RelationTag::RV => "RV",
            RelationTag::RYSQ => "RYSQ",
        }
    }
}

impl fmt::Display for RelationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn exp(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// What a trivially-twisting curve bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialKind {
    Disk,
    Mobius,
}

/// Declared parameters of a relation instance; see [`RelationInstance::build`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RelationParams {
    TrivialTwist {
        curve: CurveSymbol,
        bounds: TrivialKind,
    },
    /// `f t_c f^{-1} = t_image^sign`.
    BraidTwist {
        f: Word,
        curve: CurveSymbol,
        image: CurveSymbol,
        sign: Sign,
    },
    /// `f Y_{mu,alpha} f^{-1} = Y_{image_mu,image_alpha}^sign`.
    BraidPush {
        f: Word,
        mu: CurveSymbol,
        alpha: CurveSymbol,
        image_mu: CurveSymbol,
        image_alpha: CurveSymbol,
        sign: Sign,
    },
    /// `(t_{c_1}^{e_1} ... t_{c_k}^{e_k})^{k+1 or 2k+2} = boundary twists`.
    Chain {
        curves: Vec<CurveSymbol>,
        chain_signs: Vec<Sign>,
        boundary: Vec<CurveSymbol>,
        boundary_signs: Vec<Sign>,
    },
    /// `t_{d12} t_{d23} t_{d13} = t_{d1} t_{d2} t_{d3} t_{d4}` with signs in
    /// that order.
    Lantern {
        interior: [CurveSymbol; 3],
        boundary: [CurveSymbol; 4],
        signs: [Sign; 7],
    },
    /// `Y_{mu,product} = Y_{mu,alpha}^{s_0} Y_{mu,beta}^{s_1}`.
    PushProduct {
        mu: CurveSymbol,
        alpha: CurveSymbol,
        beta: CurveSymbol,
        product: CurveSymbol,
        signs: [Sign; 2],
    },
    /// `Y_{mu,alpha} = t_{d1}^{s_0} t_{d2}^{s_1}` for one-sided `alpha`.
    PushFactor {
        mu: CurveSymbol,
        alpha: CurveSymbol,
        deltas: [CurveSymbol; 2],
        signs: [Sign; 2],
    },
    /// `Y_{mu,alpha}^2 = t_delta^sign` for two-sided `alpha`.
    YSquare {
        mu: CurveSymbol,
        alpha: CurveSymbol,
        delta: CurveSymbol,
        sign: Sign,
    },
}

impl RelationParams {
    pub fn tag(&self) -> RelationTag {
        match self {
            RelationParams::TrivialTwist { .. } => RelationTag::R0,
            RelationParams::BraidTwist { .. } => RelationTag::RIi,
            RelationParams::BraidPush { .. } => RelationTag::RIii,
            RelationParams::Chain { .. } => RelationTag::RIIk,
            RelationParams::Lantern { .. } => RelationTag::RIII,
            RelationParams::PushProduct { .. } => RelationTag::RIV,
            RelationParams::PushFactor { .. } => RelationTag::RV,
            RelationParams::YSquare { .. } => RelationTag::RYSQ,
        }
    }
}

/// A validated relation `lhs = rhs`, both sides freely reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationInstance {
    tag: RelationTag,
    spec: SurfaceSpec,
    params: RelationParams,
    lhs: Word,
    rhs: Word,
}

struct Ctx<'a> {
    spec: &'a SurfaceSpec,
    tag: RelationTag,
}

impl Ctx<'_> {
    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::InvalidInstance {
            tag: self.tag.to_string(),
            reason: reason.into(),
        }
    }

    fn class(&self, c: &CurveSymbol) -> Result<Z2Vector> {
        curve_class(self.spec, c).map_err(|e| self.fail(e.to_string()))
    }

    fn two_sided(&self, c: &CurveSymbol) -> Result<Z2Vector> {
        let v = self.class(c)?;
        if curve_sidedness(self.spec, c)? != Sidedness::TwoSided {
            return Err(self.fail(format!("{c} must be two-sided")));
        }
        Ok(v)
    }

    fn one_sided(&self, c: &CurveSymbol) -> Result<Z2Vector> {
        let v = self.class(c)?;
        if curve_sidedness(self.spec, c)? != Sidedness::OneSided {
            return Err(self.fail(format!("{c} must be one-sided")));
        }
        Ok(v)
    }

    /// `mu` one-sided and meeting `alpha` an odd number of times.
    fn push_pair(&self, mu: &CurveSymbol, alpha: &CurveSymbol) -> Result<(Z2Vector, Z2Vector)> {
        let m = self.one_sided(mu)?;
        let a = self.class(alpha)?;
        if !m.dot(&a) {
            return Err(self.fail(format!("<[{mu}],[{alpha}]> = 0, expected 1")));
        }
        Ok((m, a))
    }

    fn same_class(&self, what: &str, found: &Z2Vector, expected: &Z2Vector) -> Result<()> {
        if found != expected {
            return Err(self.fail(format!("{what}: class {found}, expected {expected}")));
        }
        Ok(())
    }
}

fn twist(c: &CurveSymbol, sign: Sign) -> Word {
    Word::power(Generator::Twist(c.clone()), sign.exp())
}

fn push(mu: &CurveSymbol, alpha: &CurveSymbol, exp: i64) -> Word {
    Word::power(Generator::Push(mu.clone(), alpha.clone()), exp)
}

fn conj(f: &Word, w: &Word) -> Word {
    f.concat(w).concat(&f.inverse()).reduce()
}

fn multiset_eq(mut a: Vec<Z2Vector>, mut b: Vec<Z2Vector>) -> bool {
    a.sort();
    b.sort();
    a == b
}

impl RelationInstance {
    /// Validates `params` on `spec` and builds the instance.
    pub fn build(spec: &SurfaceSpec, params: RelationParams) -> Result<Self> {
        let tag = params.tag();
        let cx = Ctx { spec, tag };
        let mut oracle = Oracle::new(*spec);
        let (lhs, rhs) = match &params {
            RelationParams::TrivialTwist { curve, .. } => {
                let v = cx.two_sided(curve)?;
                if !v.is_zero() {
                    return Err(cx.fail(format!("{curve} has class {v}; a curve bounding a disk or Mobius band is null")));
                }
                (twist(curve, Sign::Plus), Word::identity())
            }
            RelationParams::BraidTwist { f, curve, image, sign } => {
                let c = cx.two_sided(curve)?;
                let img = cx.two_sided(image)?;
                let m = oracle.word(f).map_err(|e| cx.fail(e.to_string()))?;
                cx.same_class(&format!("f({curve})"), &img, &m.apply(&c))?;
                (conj(f, &twist(curve, Sign::Plus)), twist(image, *sign))
            }
            RelationParams::BraidPush {
                f,
                mu,
                alpha,
                image_mu,
                image_alpha,
                sign,
            } => {
                let (m, a) = cx.push_pair(mu, alpha)?;
                let (im, ia) = cx.push_pair(image_mu, image_alpha)?;
                let mf = oracle.word(f).map_err(|e| cx.fail(e.to_string()))?;
                cx.same_class(&format!("f({mu})"), &im, &mf.apply(&m))?;
                cx.same_class(&format!("f({alpha})"), &ia, &mf.apply(&a))?;
                (conj(f, &push(mu, alpha, 1)), push(image_mu, image_alpha, sign.exp()))
            }
            RelationParams::Chain {
                curves,
                chain_signs,
                boundary,
                boundary_signs,
            } => {
                let k = curves.len();
                if k == 0 {
                    return Err(cx.fail("a chain needs at least one curve"));
                }
                if chain_signs.len() != k {
                    return Err(cx.fail(format!("{} chain signs for {k} curves", chain_signs.len())));
                }
                let classes = curves.iter().map(|c| cx.two_sided(c)).collect::<Result<Vec<_>>>()?;
                for i in 0..k {
                    for j in (i + 1)..k {
                        let expected = j == i + 1;
                        if classes[i].dot(&classes[j]) != expected {
                            return Err(cx.fail(format!(
                                "<[{}],[{}]> = {}, a chain needs {}",
                                curves[i], curves[j], !expected as u8, expected as u8
                            )));
                        }
                    }
                }
                let want = if k % 2 == 1 { 2 } else { 1 };
                if boundary.len() != want {
                    return Err(cx.fail(format!(
                        "a {k}-chain has {want} boundary curve(s), {} given",
                        boundary.len()
                    )));
                }
                if boundary_signs.len() != want {
                    return Err(cx.fail(format!("{} boundary signs for {want} curves", boundary_signs.len())));
                }
                // Even chains have a null-homologous boundary; each boundary
                // curve of an odd chain is homologous to c_1 + c_3 + ... + c_k.
                let mut expected = Z2Vector::zeros(spec.genus());
                if k % 2 == 1 {
                    for c in classes.iter().step_by(2) {
                        expected.add_assign(c);
                    }
                }
                for d in boundary {
                    let v = cx.two_sided(d)?;
                    cx.same_class(&format!("boundary {d}"), &v, &expected)?;
                }
                let power = if k % 2 == 1 { k + 1 } else { 2 * k + 2 };
                let base = Word::from_syllables(
                    curves
                        .iter()
                        .zip(chain_signs)
                        .map(|(c, s)| crate::word::Syllable {
                            gen: Generator::Twist(c.clone()),
                            exp: s.exp(),
                        })
                        .collect(),
                );
                let rhs = boundary
                    .iter()
                    .zip(boundary_signs)
                    .fold(Word::identity(), |acc, (d, s)| acc.concat(&twist(d, *s)));
                (base.pow(power as i64), rhs.reduce())
            }
            RelationParams::Lantern {
                interior,
                boundary,
                signs,
            } => {
                let inner = interior.iter().map(|c| cx.two_sided(c)).collect::<Result<Vec<_>>>()?;
                let outer = boundary.iter().map(|c| cx.two_sided(c)).collect::<Result<Vec<_>>>()?;
                let mut total = Z2Vector::zeros(spec.genus());
                for v in &outer {
                    total.add_assign(v);
                }
                if !total.is_zero() {
                    return Err(cx.fail(format!("boundary classes sum to {total}, expected 0")));
                }
                let pairs = vec![outer[0].add(&outer[1]), outer[1].add(&outer[2]), outer[0].add(&outer[2])];
                if !multiset_eq(inner.clone(), pairs.clone()) {
                    let show = |vs: &[Z2Vector]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                    return Err(cx.fail(format!(
                        "interior classes {{{}}} are not the pairwise sums {{{}}}",
                        show(&inner),
                        show(&pairs)
                    )));
                }
                let lhs = (0..3).fold(Word::identity(), |acc, i| acc.concat(&twist(&interior[i], signs[i])));
                let rhs = (0..4).fold(Word::identity(), |acc, i| acc.concat(&twist(&boundary[i], signs[3 + i])));
                (lhs.reduce(), rhs.reduce())
            }
            RelationParams::PushProduct {
                mu,
                alpha,
                beta,
                product,
                signs,
            } => {
                let (m, a) = cx.push_pair(mu, alpha)?;
                let (_, b) = cx.push_pair(mu, beta)?;
                let (_, p) = cx.push_pair(mu, product)?;
                cx.same_class(&format!("product {product}"), &p, &a.add(&b).add(&m))?;
                let rhs = push(mu, alpha, signs[0].exp()).concat(&push(mu, beta, signs[1].exp()));
                (push(mu, product, 1), rhs.reduce())
            }
            RelationParams::PushFactor {
                mu,
                alpha,
                deltas,
                signs,
            } => {
                let (m, _) = cx.push_pair(mu, alpha)?;
                let a = cx.one_sided(alpha)?;
                let expected = a.add(&m);
                for d in deltas {
                    let v = cx.two_sided(d)?;
                    cx.same_class(&format!("{d}"), &v, &expected)?;
                }
                let rhs = twist(&deltas[0], signs[0]).concat(&twist(&deltas[1], signs[1]));
                (push(mu, alpha, 1), rhs.reduce())
            }
            RelationParams::YSquare { mu, alpha, delta, sign } => {
                cx.push_pair(mu, alpha)?;
                cx.two_sided(alpha)?;
                let d = cx.two_sided(delta)?;
                if !d.is_zero() {
                    return Err(cx.fail(format!("{delta} has class {d}; the boundary of N(mu ∪ alpha) is null")));
                }
                (push(mu, alpha, 2), twist(delta, *sign))
            }
        };

        let ml = oracle.word(&lhs).map_err(|e| cx.fail(e.to_string()))?;
        let mr = oracle.word(&rhs).map_err(|e| cx.fail(e.to_string()))?;
        if ml != mr {
            return Err(cx.fail(format!("oracle mismatch: lhs {ml:?}, rhs {mr:?}")));
        }
        Ok(RelationInstance {
            tag,
            spec: *spec,
            params,
            lhs,
            rhs,
        })
    }

    pub fn tag(&self) -> RelationTag {
        self.tag
    }

    pub fn spec(&self) -> &SurfaceSpec {
        &self.spec
    }

    pub fn params(&self) -> &RelationParams {
        &self.params
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} = {}", self.tag, self.lhs, self.rhs)
    }
}

pub fn trivial_twist(spec: &SurfaceSpec, curve: CurveSymbol, bounds: TrivialKind) -> Result<RelationInstance> {
    RelationInstance::build(spec, RelationParams::TrivialTwist { curve, bounds })
}

pub fn braid_i(spec: &SurfaceSpec, f: Word, curve: CurveSymbol, image: CurveSymbol, sign: Sign) -> Result<RelationInstance> {
    RelationInstance::build(spec, RelationParams::BraidTwist { f, curve, image, sign })
}

pub fn braid_ii(
    spec: &SurfaceSpec,
    f: Word,
    (mu, alpha): (CurveSymbol, CurveSymbol),
    (image_mu, image_alpha): (CurveSymbol, CurveSymbol),
    sign: Sign,
) -> Result<RelationInstance> {
    RelationInstance::build(
        spec,
        RelationParams::BraidPush {
            f,
            mu,
            alpha,
            image_mu,
            image_alpha,
            sign,
        },
    )
}

/// A chain relation with all chain twists positive.
pub fn chain_k(
    spec: &SurfaceSpec,
    curves: Vec<CurveSymbol>,
    boundary: Vec<CurveSymbol>,
    boundary_signs: Vec<Sign>,
) -> Result<RelationInstance> {
    let chain_signs = vec![Sign::Plus; curves.len()];
    RelationInstance::build(
        spec,
        RelationParams::Chain {
            curves,
            chain_signs,
            boundary,
            boundary_signs,
        },
    )
}

pub fn lantern(
    spec: &SurfaceSpec,
    interior: [CurveSymbol; 3],
    boundary: [CurveSymbol; 4],
    signs: [Sign; 7],
) -> Result<RelationInstance> {
    RelationInstance::build(spec, RelationParams::Lantern { interior, boundary, signs })
}

pub fn push_product(
    spec: &SurfaceSpec,
    mu: CurveSymbol,
    alpha: CurveSymbol,
    beta: CurveSymbol,
    product: CurveSymbol,
) -> Result<RelationInstance> {
    RelationInstance::build(
        spec,
        RelationParams::PushProduct {
            mu,
            alpha,
            beta,
            product,
            signs: [Sign::Plus, Sign::Plus],
        },
    )
}

pub fn push_factor(
    spec: &SurfaceSpec,
    mu: CurveSymbol,
    alpha: CurveSymbol,
    deltas: [CurveSymbol; 2],
    signs: [Sign; 2],
) -> Result<RelationInstance> {
    RelationInstance::build(spec, RelationParams::PushFactor { mu, alpha, deltas, signs })
}

pub fn y_square(spec: &SurfaceSpec, mu: CurveSymbol, alpha: CurveSymbol, delta: CurveSymbol, sign: Sign) -> Result<RelationInstance> {
    RelationInstance::build(spec, RelationParams::YSquare { mu, alpha, delta, sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::BoundaryPart;
    use crate::word::{a, y};

    fn s(g: usize) -> SurfaceSpec {
        SurfaceSpec::closed(g).unwrap()
    }

    fn c(text: &str) -> CurveSymbol {
        text.parse().unwrap()
    }

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn trivial_twist_cases() {
        for g in (3..=11).step_by(2) {
            let d = CurveSymbol::chain_boundary(1, g - 1, BoundaryPart::Whole).unwrap();
            let r = trivial_twist(&s(g), d, TrivialKind::Mobius).unwrap();
            assert!(r.rhs().is_empty());
        }
        let null = CurveSymbol::declared_with_class("disk", Z2Vector::zeros(4));
        assert!(trivial_twist(&s(4), null, TrivialKind::Disk).is_ok());
        assert!(trivial_twist(&s(4), c("g:1,2"), TrivialKind::Disk).is_err());
    }

    #[test]
    fn braid_i_cases() {
        let image = c("decl:a2(al1):1010:two");
        let r = braid_i(&s(4), a(2), c("al:1"), image.clone(), Sign::Plus).unwrap();
        assert_eq!(r.lhs(), &w("a2 a1 a2^-1"));
        assert!(braid_i(&s(4), Word::identity(), c("bt"), c("bt"), Sign::Plus).is_ok());
        assert!(braid_i(&s(4), a(1), c("g:3,4"), c("g:3,4"), Sign::Plus).is_ok());
        // a2 does not fix alpha_1.
        assert!(braid_i(&s(4), a(2), c("al:1"), c("al:1"), Sign::Plus).is_err());
        // One-sided image.
        assert!(braid_i(&s(4), a(2), c("al:1"), c("m:1"), Sign::Plus).is_err());
    }

    #[test]
    fn braid_ii_cases() {
        let pair = (c("m:1"), c("al:1"));
        let r = braid_ii(&s(4), a(3), pair.clone(), pair.clone(), Sign::Plus).unwrap();
        assert_eq!(r.lhs(), &w("a3 y a3^-1"));
        assert_eq!(r.rhs(), &y());
        assert!(braid_ii(&s(4), Word::identity(), pair.clone(), pair.clone(), Sign::Plus).is_ok());
        let r = braid_ii(&s(4), y(), pair.clone(), pair.clone(), Sign::Minus).unwrap();
        assert_eq!(r.lhs(), &y());
        assert_eq!(r.rhs(), &y().inverse());
        // a2 moves alpha_1 to gamma_{1,3}.
        assert!(braid_ii(&s(4), a(2), pair.clone(), pair.clone(), Sign::Plus).is_err());
        assert!(braid_ii(&s(4), a(2), pair.clone(), (c("m:1"), c("g:1,3")), Sign::Minus).is_ok());
        // Pushed curve two-sided.
        assert!(braid_ii(&s(4), Word::identity(), (c("al:1"), c("al:2")), (c("al:1"), c("al:2")), Sign::Plus).is_err());
    }

    #[test]
    fn chain_cases() {
        let r = chain_k(
            &s(4),
            vec![c("al:1"), c("al:2")],
            vec![c("cb:1-2:whole")],
            vec![Sign::Plus],
        )
        .unwrap();
        assert_eq!(r.lhs(), &w("a1 a2").pow(6));
        for g in (4..=12).step_by(2) {
            let curves = (1..g).map(|i| CurveSymbol::alpha(i).unwrap()).collect();
            let full = CurveSymbol::gamma_range(1, g).unwrap();
            let r = chain_k(&s(g), curves, vec![full.clone(), full], vec![Sign::Plus, Sign::Minus]).unwrap();
            assert!(r.rhs().is_empty());
        }
        // Wrong boundary count.
        assert!(chain_k(&s(4), vec![c("al:1"), c("al:2")], vec![c("cb:1-2:whole"), c("cb:1-2:whole")], vec![Sign::Plus; 2]).is_err());
        // Not a chain.
        assert!(chain_k(&s(5), vec![c("al:1"), c("al:3")], vec![c("cb:1-2:whole")], vec![Sign::Plus]).is_err());
        // Boundary class wrong.
        assert!(chain_k(&s(4), vec![c("al:1")], vec![c("al:1"), c("al:3")], vec![Sign::Plus; 2]).is_err());
    }

    #[test]
    fn lantern_cases() {
        for g in (6..=12).step_by(2) {
            let interior = [
                c("bt"),
                CurveSymbol::gamma_range(3, g).unwrap(),
                CurveSymbol::gamma([1, 2].into_iter().chain(5..=g).collect()).unwrap(),
            ];
            let boundary = [
                CurveSymbol::gamma_range(1, g).unwrap(),
                c("al:1"),
                c("al:3"),
                CurveSymbol::gamma_range(5, g).unwrap(),
            ];
            lantern(&s(g), interior, boundary, [Sign::Plus; 7]).unwrap();
        }
        // Degenerate: one boundary curve bounds a disk.
        let disk = CurveSymbol::declared_with_class("disk", Z2Vector::zeros(4));
        let r = lantern(
            &s(4),
            [c("al:1"), c("al:2"), c("g:1,3")],
            [c("al:1"), c("al:2"), c("g:1,3"), disk],
            [Sign::Plus; 7],
        );
        assert!(r.is_ok(), "{r:?}");
        // Boundary classes that do not sum to zero.
        assert!(lantern(
            &s(4),
            [c("al:1"), c("al:2"), c("g:1,3")],
            [c("al:1"), c("al:2"), c("g:1,3"), c("al:3")],
            [Sign::Plus; 7],
        )
        .is_err());
    }

    #[test]
    fn push_product_cases() {
        let r = push_product(&s(4), c("m:1"), c("al:1"), c("g:1,3"), c("g:1,2,3")).unwrap();
        assert_eq!(r.rhs(), &w("y Y[m:1;g:1,3]"));
        assert!(push_product(&s(4), c("m:1"), c("al:1"), c("g:1,3"), c("g:1,2,4")).is_err());
        assert!(push_product(&s(5), c("m:1"), c("g:1,2,3"), c("g:1,4,5"), c("g:1,2,3,4,5")).is_ok());
    }

    #[test]
    fn push_factor_cases() {
        for g in (5..=11).step_by(2) {
            let d1 = CurveSymbol::chain_boundary(2, g - 1, BoundaryPart::D1).unwrap();
            let d2 = CurveSymbol::chain_boundary(2, g - 1, BoundaryPart::D2).unwrap();
            let r = push_factor(&s(g), c("m:1"), CurveSymbol::gamma_range(1, g).unwrap(), [d1, d2], [Sign::Minus; 2]).unwrap();
            assert_eq!(r.rhs().letter_len(), 2);
        }
        let d = c("decl:d:0110:two");
        assert!(push_factor(&s(4), c("m:1"), c("g:1,2,3"), [d.clone(), d.clone()], [Sign::Plus, Sign::Minus]).is_ok());
        // Two-sided alpha.
        assert!(push_factor(&s(4), c("m:1"), c("al:1"), [c("al:2"), c("al:2")], [Sign::Plus; 2]).is_err());
    }

    #[test]
    fn y_square_cases() {
        let null = |g: usize| CurveSymbol::declared_with_class("dN", Z2Vector::zeros(g));
        let r = y_square(&s(2), c("m:1"), c("al:1"), null(2), Sign::Plus).unwrap();
        assert_eq!(r.lhs(), &y().pow(2));
        let r = y_square(&s(6), c("m:1"), CurveSymbol::gamma_range(1, 6).unwrap(), c("cb:2-5:whole"), Sign::Minus).unwrap();
        assert_eq!(r.rhs(), &w("t[cb:2-5:whole]^-1"));
        assert!(y_square(&s(3), c("m:1"), c("g:1,2,3"), null(3), Sign::Plus).is_err());
        assert!(y_square(&s(4), c("m:1"), c("al:1"), c("al:3"), Sign::Plus).is_err());
    }

    #[test]
    fn params_serialize_with_kind_tag() {
        let p = RelationParams::YSquare {
            mu: c("m:1"),
            alpha: c("al:1"),
            delta: c("decl:d:00:two"),
            sign: Sign::Minus,
        };
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"kind":"y-square","mu":"m:1","alpha":"al:1","delta":"decl:d:00:two","sign":"-"}"#);
        assert_eq!(serde_json::from_str::<RelationParams>(&text).unwrap(), p);
    }
}
