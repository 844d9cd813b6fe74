//! The standard model of `N_{g,n}`: a sphere (or disk, for `n = 1`) with
//! `g` crosscaps, and the named curve families drawn on it.
//!
//! Curves are symbols, not embedded arcs. Each symbol carries enough data to
//! compute its mod-2 homology class in the crosscap basis `e_1, ..., e_g`,
//! from which sidedness and mod-2 intersection numbers follow.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, ParseError, Result};
use crate::gf2::Z2Vector;
use crate::syntax::Cursor;

/// `N_{g,n}` with `g >= 1` crosscaps and `n` in `{0, 1}` boundary components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    genus: usize,
    boundary: usize,
}

impl SurfaceSpec {
    pub fn new(genus: usize, boundary: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidSurface {
                genus,
                boundary,
                reason: "genus must be at least 1".into(),
            });
        }
        if boundary > 1 {
            return Err(Error::InvalidSurface {
                genus,
                boundary,
                reason: "only 0 or 1 boundary components are modelled".into(),
            });
        }
        Ok(SurfaceSpec { genus, boundary })
    }

    pub fn closed(genus: usize) -> Result<Self> {
        Self::new(genus, 0)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn boundary(&self) -> usize {
        self.boundary
    }

    pub fn is_closed(&self) -> bool {
        self.boundary == 0
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N_{{{},{}}}", self.genus, self.boundary)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

impl Sidedness {
    fn from_self_pairing(one: bool) -> Self {
        if one {
            Sidedness::OneSided
        } else {
            Sidedness::TwoSided
        }
    }
}

impl fmt::Display for Sidedness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sidedness::OneSided => "one-sided",
            Sidedness::TwoSided => "two-sided",
        })
    }
}

/// Which boundary curve of a chain neighbourhood is meant. An even chain
/// has one boundary component (`Whole`); an odd chain has two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryPart {
    Whole,
    D1,
    D2,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveSymbol {
    /// `gamma_{i_1,...,i_k}`: passes once through each listed crosscap.
    Gamma(Vec<usize>),
    /// `gamma'_{i_1,...,i_k}`: same crosscaps, different curve.
    GammaPrime(Vec<usize>),
    /// Boundary of a regular neighbourhood of `alpha_lo ∪ ... ∪ alpha_hi`.
    ChainBoundary {
        lo: usize,
        hi: usize,
        part: BoundaryPart,
    },
    /// A curve known only through its class and sidedness.
    Declared {
        name: String,
        class: Z2Vector,
        sided: Sidedness,
    },
}

fn check_indices(indices: &[usize]) -> std::result::Result<(), String> {
    if indices.is_empty() {
        return Err("index list is empty".into());
    }
    if indices[0] == 0 {
        return Err("crosscap indices start at 1".into());
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err("indices must be strictly increasing".into());
    }
    Ok(())
}

impl CurveSymbol {
    pub fn gamma(indices: Vec<usize>) -> Result<Self> {
        check_indices(&indices).map_err(|reason| Error::InvalidCurve {
            curve: format!("g:{}", join(&indices)),
            reason,
        })?;
        Ok(CurveSymbol::Gamma(indices))
    }

    pub fn gamma_prime(indices: Vec<usize>) -> Result<Self> {
        check_indices(&indices).map_err(|reason| Error::InvalidCurve {
            curve: format!("gp:{}", join(&indices)),
            reason,
        })?;
        Ok(CurveSymbol::GammaPrime(indices))
    }

    /// `gamma_{lo,lo+1,...,hi}`.
    pub fn gamma_range(lo: usize, hi: usize) -> Result<Self> {
        Self::gamma((lo..=hi).collect())
    }

    /// `mu_i = gamma_i`, the core of the `i`-th crosscap.
    pub fn mu(i: usize) -> Result<Self> {
        Self::gamma(vec![i])
    }

    /// `alpha_i = gamma_{i,i+1}`.
    pub fn alpha(i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidCurve {
                curve: "al:0".into(),
                reason: "alpha indices start at 1".into(),
            });
        }
        Self::gamma(vec![i, i + 1])
    }

    /// `beta = gamma_{1,2,3,4}`.
    pub fn beta() -> Self {
        CurveSymbol::Gamma(vec![1, 2, 3, 4])
    }

    pub fn chain_boundary(lo: usize, hi: usize, part: BoundaryPart) -> Result<Self> {
        let c = CurveSymbol::ChainBoundary { lo, hi, part };
        if lo == 0 || lo > hi {
            return Err(Error::InvalidCurve {
                curve: c.to_string(),
                reason: "chain range must satisfy 1 <= lo <= hi".into(),
            });
        }
        let even = (hi - lo + 1).is_multiple_of(2);
        if even != (part == BoundaryPart::Whole) {
            return Err(Error::InvalidCurve {
                curve: c.to_string(),
                reason: if even {
                    "an even chain has a single boundary component".into()
                } else {
                    "an odd chain has two boundary components d1, d2".into()
                },
            });
        }
        Ok(c)
    }

    pub fn declared(name: impl Into<String>, class: Z2Vector, sided: Sidedness) -> Self {
        CurveSymbol::Declared {
            name: name.into(),
            class,
            sided,
        }
    }

    /// A declared curve whose sidedness is read off its class.
    pub fn declared_with_class(name: impl Into<String>, class: Z2Vector) -> Self {
        let sided = Sidedness::from_self_pairing(class.dot(&class));
        Self::declared(name, class, sided)
    }

    pub fn validate(&self, spec: &SurfaceSpec) -> Result<()> {
        let g = spec.genus();
        let fail = |reason: String| Error::InvalidCurve {
            curve: self.to_string(),
            reason,
        };
        match self {
            CurveSymbol::Gamma(idx) | CurveSymbol::GammaPrime(idx) => {
                check_indices(idx).map_err(fail)?;
                if *idx.last().unwrap() > g {
                    return Err(fail(format!("index exceeds genus {g}")));
                }
            }
            CurveSymbol::ChainBoundary { lo, hi, part } => {
                Self::chain_boundary(*lo, *hi, *part)?;
                if *hi + 1 > g {
                    return Err(fail(format!("chain alpha_{lo}..alpha_{hi} does not fit in genus {g}")));
                }
            }
            CurveSymbol::Declared { class, sided, .. } => {
                if class.len() != g {
                    return Err(fail(format!(
                        "class has {} coordinates but the genus is {g}",
                        class.len()
                    )));
                }
                if Sidedness::from_self_pairing(class.dot(class)) != *sided {
                    return Err(fail(format!("declared {sided} but the class pairs with itself to {}", class.dot(class) as u8)));
                }
            }
        }
        Ok(())
    }
}

fn join(idx: &[usize]) -> String {
    idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// The mod-2 homology class of `c` in the crosscap basis.
pub fn curve_class(spec: &SurfaceSpec, c: &CurveSymbol) -> Result<Z2Vector> {
    c.validate(spec)?;
    let g = spec.genus();
    Ok(match c {
        CurveSymbol::Gamma(idx) | CurveSymbol::GammaPrime(idx) => {
            Z2Vector::from_positions(g, idx.iter().map(|i| i - 1))
        }
        CurveSymbol::ChainBoundary { part: BoundaryPart::Whole, .. } => Z2Vector::zeros(g),
        CurveSymbol::ChainBoundary { lo, hi, .. } => Z2Vector::from_positions(g, (*lo - 1)..=*hi),
        CurveSymbol::Declared { class, .. } => class.clone(),
    })
}

/// One-sided iff the class pairs to 1 with itself.
pub fn curve_sidedness(spec: &SurfaceSpec, c: &CurveSymbol) -> Result<Sidedness> {
    let v = curve_class(spec, c)?;
    Ok(Sidedness::from_self_pairing(v.dot(&v)))
}

/// Mod-2 intersection number of two curves.
pub fn intersection(spec: &SurfaceSpec, a: &CurveSymbol, b: &CurveSymbol) -> Result<bool> {
    Ok(curve_class(spec, a)?.dot(&curve_class(spec, b)?))
}

/// Boundary curves of a regular neighbourhood of the chain
/// `alpha_lo, ..., alpha_hi`: two for an odd chain, one for an even chain.
pub fn chain_boundary(spec: &SurfaceSpec, lo: usize, hi: usize) -> Result<Vec<CurveSymbol>> {
    if lo == 0 || lo > hi || hi + 1 > spec.genus() {
        return Err(Error::OutOfRange(format!(
            "chain alpha_{lo}..alpha_{hi} needs 1 <= lo <= hi <= {}",
            spec.genus().saturating_sub(1)
        )));
    }
    if (hi - lo + 1).is_multiple_of(2) {
        Ok(vec![CurveSymbol::chain_boundary(lo, hi, BoundaryPart::Whole)?])
    } else {
        Ok(vec![
            CurveSymbol::chain_boundary(lo, hi, BoundaryPart::D1)?,
            CurveSymbol::chain_boundary(lo, hi, BoundaryPart::D2)?,
        ])
    }
}

impl fmt::Display for CurveSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveSymbol::Gamma(idx) => match idx.as_slice() {
                [i] => write!(f, "m:{i}"),
                [i, j] if *j == i + 1 => write!(f, "al:{i}"),
                [1, 2, 3, 4] => f.write_str("bt"),
                _ => write!(f, "g:{}", join(idx)),
            },
            CurveSymbol::GammaPrime(idx) => write!(f, "gp:{}", join(idx)),
            CurveSymbol::ChainBoundary { lo, hi, part } => {
                let part = match part {
                    BoundaryPart::Whole => "whole",
                    BoundaryPart::D1 => "d1",
                    BoundaryPart::D2 => "d2",
                };
                write!(f, "cb:{lo}-{hi}:{part}")
            }
            CurveSymbol::Declared { name, class, sided } => {
                let sided = match sided {
                    Sidedness::OneSided => "one",
                    Sidedness::TwoSided => "two",
                };
                write!(f, "decl:{name}:{class}:{sided}")
            }
        }
    }
}

impl fmt::Debug for CurveSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Curve({self})")
    }
}

impl FromStr for CurveSymbol {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let mut cur = Cursor::new(s);
        let c = cur.curve()?;
        cur.finish()?;
        Ok(c)
    }
}

impl Serialize for CurveSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CurveSymbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(g: usize) -> SurfaceSpec {
        SurfaceSpec::closed(g).unwrap()
    }

    fn bits(s: &str) -> Z2Vector {
        Z2Vector::parse_bits(s).unwrap()
    }

    #[test]
    fn rejects_bad_surfaces() {
        assert!(SurfaceSpec::new(0, 0).is_err());
        assert!(SurfaceSpec::new(3, 2).is_err());
        assert!(SurfaceSpec::new(1, 1).is_ok());
    }

    #[test]
    fn class_examples() {
        assert_eq!(curve_class(&spec(4), &CurveSymbol::alpha(1).unwrap()).unwrap(), bits("1100"));
        assert_eq!(curve_class(&spec(3), &CurveSymbol::mu(2).unwrap()).unwrap(), bits("010"));
        let d1 = CurveSymbol::chain_boundary(2, 4, BoundaryPart::D1).unwrap();
        assert_eq!(curve_class(&spec(5), &d1).unwrap(), bits("01111"));
    }

    #[test]
    fn odd_chain_boundary_matches_mu_plus_full_gamma() {
        // For g odd, the chain alpha_2..alpha_{g-1} has odd length g-2 and its
        // two boundary curves together bound N(mu_1 ∪ gamma_{1..g}); so each
        // has class [mu_1] + [gamma_{1..g}] and the two classes cancel.
        for g in (3..=13).step_by(2) {
            let s = spec(g);
            let mu = curve_class(&s, &CurveSymbol::mu(1).unwrap()).unwrap();
            let full = curve_class(&s, &CurveSymbol::gamma_range(1, g).unwrap()).unwrap();
            let parts = chain_boundary(&s, 2, g - 1).unwrap();
            assert_eq!(parts.len(), 2);
            let d1 = curve_class(&s, &parts[0]).unwrap();
            let d2 = curve_class(&s, &parts[1]).unwrap();
            assert_eq!(d1, mu.add(&full));
            assert!(d1.add(&d2).is_zero());
        }
    }

    #[test]
    fn sidedness_examples() {
        assert_eq!(curve_sidedness(&spec(4), &CurveSymbol::beta()).unwrap(), Sidedness::TwoSided);
        assert_eq!(curve_sidedness(&spec(2), &CurveSymbol::mu(1).unwrap()).unwrap(), Sidedness::OneSided);
        let g123 = CurveSymbol::gamma_range(1, 3).unwrap();
        assert_eq!(curve_sidedness(&spec(3), &g123).unwrap(), Sidedness::OneSided);
        assert!(bits("111").dot(&bits("111")));
    }

    #[test]
    fn chain_boundary_examples() {
        assert_eq!(chain_boundary(&spec(6), 2, 5).unwrap().len(), 1);
        assert_eq!(chain_boundary(&spec(5), 2, 4).unwrap().len(), 2);
        assert_eq!(chain_boundary(&spec(2), 1, 1).unwrap().len(), 2);
        assert!(chain_boundary(&spec(4), 3, 2).is_err());
        assert!(chain_boundary(&spec(4), 1, 4).is_err());
        assert!(chain_boundary(&spec(4), 0, 2).is_err());
    }

    #[test]
    fn out_of_range_curves_are_rejected() {
        let s = spec(3);
        assert!(curve_class(&s, &CurveSymbol::mu(4).unwrap()).is_err());
        assert!(curve_class(&s, &CurveSymbol::beta()).is_err());
        assert!(CurveSymbol::gamma(vec![2, 1]).is_err());
        assert!(CurveSymbol::gamma(vec![]).is_err());
        assert!(CurveSymbol::chain_boundary(1, 2, BoundaryPart::D1).is_err());
    }

    #[test]
    fn declared_curves_must_be_consistent() {
        let s = spec(4);
        let good = CurveSymbol::declared("x", bits("0110"), Sidedness::TwoSided);
        assert!(good.validate(&s).is_ok());
        let lies = CurveSymbol::declared("x", bits("0111"), Sidedness::TwoSided);
        assert!(lies.validate(&s).is_err());
        let short = CurveSymbol::declared("x", bits("011"), Sidedness::TwoSided);
        assert!(short.validate(&s).is_err());
    }

    #[test]
    fn text_syntax_round_trips_through_aliases() {
        for (text, canon) in [
            ("g:1,2,3", "g:1,2,3"),
            ("g:2,3", "al:2"),
            ("g:1", "m:1"),
            ("g:1,2,3,4", "bt"),
            ("gp:1,2,3", "gp:1,2,3"),
            ("m:2", "m:2"),
            ("al:3", "al:3"),
            ("bt", "bt"),
            ("cb:2-5:whole", "cb:2-5:whole"),
            ("cb:2-4:d1", "cb:2-4:d1"),
            ("decl:NAME:0110:two", "decl:NAME:0110:two"),
        ] {
            let c: CurveSymbol = text.parse().unwrap();
            assert_eq!(c.to_string(), canon, "{text}");
            assert_eq!(canon.parse::<CurveSymbol>().unwrap(), c);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "g:1,x".parse::<CurveSymbol>().unwrap_err();
        assert_eq!(err.position, 4);
        let err = "q:1".parse::<CurveSymbol>().unwrap_err();
        assert_eq!(err.position, 0);
        let err = "decl:x:01a:two".parse::<CurveSymbol>().unwrap_err();
        assert_eq!(err.position, 9);
    }
}
