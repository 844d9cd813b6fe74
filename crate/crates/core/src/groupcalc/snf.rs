//! Smith normal form over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "decimal")]
    pub torsion: Vec<BigInt>,
}

fn decimal<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

impl AbelianInvariants {
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.try_into().unwrap_or(u64::MAX)).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Diagonalizes `rows` (each of length `cols`) by unimodular row and column
/// operations and reads off the invariants of `Z^cols / rowspace`.
pub fn smith_normal_form(rows: &[Vec<i64>], cols: usize) -> AbelianInvariants {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "row length mismatch");
            r.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let diag = diagonalize(&mut m, cols);
    let nonzero: Vec<BigInt> = diag.into_iter().filter(|d| !d.is_zero()).collect();
    let free_rank = cols - nonzero.len();
    let torsion = nonzero.into_iter().filter(|d| !d.is_one()).collect();
    AbelianInvariants { free_rank, torsion }
}

#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
fn diagonalize(m: &mut [Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let nrows = m.len();
    let mut diag = Vec::new();
    for t in 0..nrows.min(cols) {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Trailing block is zero.
                return finish(diag, nrows.min(cols));
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in (t + 1)..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                for j in t..cols {
                    let v = &m[t][j] * &q;
                    m[i][j] -= v;
                }
                clean &= m[i][t].is_zero();
            }
            for j in (t + 1)..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for row in m.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..nrows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            if let Some(i) = offending {
                for j in t..cols {
                    let v = m[i][j].clone();
                    m[t][j] += v;
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    finish(diag, nrows.min(cols))
}

fn finish(mut diag: Vec<BigInt>, len: usize) -> Vec<BigInt> {
    diag.resize(len, BigInt::zero());
    diag
}
