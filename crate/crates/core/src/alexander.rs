//! Torsion coefficients and the Alexander polynomial forced on any knot
//! whose surgery realizes a prism manifold with changemaker vector σ.
//!
//! For `|q| = |σ|²/4`, the torsion coefficient `t_i` is the minimum of
//! `(c² − m)/8` over characteristic covectors `c` (all coordinates odd)
//! with `⟨c,σ⟩ + 4|q| ≡ 2i (mod 8|q|)`, for `0 ≤ i ≤ 2|q|`. The minimum is
//! found by a dynamic program over residues; the coordinate box `|c_j| ≤ B`
//! grows until two consecutive runs agree, which replaces an a-priori
//! coordinate bound.

use crate::changemaker::Changemaker;
use crate::error::{Error, Result};
use serde::Serialize;

/// Torsion coefficients `t_0, …, t_{2|q|}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionSeq {
    pub q_abs: i64,
    pub values: Vec<i64>,
}

/// Symmetric-polynomial coefficients: `Δ = b_0 + Σ_{i>0} b_i (T^i + T^{−i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexPoly {
    pub b0: i64,
    /// `b_i` for `i = 1, 2, …`, trailing zeros trimmed.
    pub higher: Vec<i64>,
}

impl AlexPoly {
    /// Degree of the top nonzero coefficient.
    pub fn degree(&self) -> usize {
        self.higher.len()
    }

    /// Render as a Laurent-style string, highest power first.
    pub fn display(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut push = |coef: i64, pow: i64| {
            if coef == 0 {
                return;
            }
            let mag = coef.abs();
            let sign = if coef < 0 { "-" } else if parts.is_empty() { "" } else { "+" };
            let var = match pow {
                0 => String::new(),
                1 => "T".into(),
                -1 => "T^-1".into(),
                p => format!("T^{p}"),
            };
            let body = if pow == 0 {
                format!("{mag}")
            } else if mag == 1 {
                var
            } else {
                format!("{mag}{var}")
            };
            parts.push(format!("{sign}{body}"));
        };
        for (i, &b) in self.higher.iter().enumerate().rev() {
            push(b, i as i64 + 1);
        }
        push(self.b0, 0);
        for (i, &b) in self.higher.iter().enumerate() {
            push(b, -(i as i64) - 1);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("")
        }
    }
}

fn torsion_with_box(sigma: &[i64], q_abs: i64, bound: i64) -> Result<Vec<Option<i64>>> {
    let m = sigma.len() as i64;
    let modulus = 8 * q_abs;
    const UNSET: i64 = i64::MAX;
    // best[r] = minimal Σ c_j² with partial ⟨c,σ⟩ ≡ r (mod 8|q|).
    let mut best = vec![UNSET; modulus as usize];
    best[0] = 0;
    for &s in sigma {
        let mut next = vec![UNSET; modulus as usize];
        for (r, &cost) in best.iter().enumerate() {
            if cost == UNSET {
                continue;
            }
            let mut c = 1i64;
            while c <= bound {
                for signed in [c, -c] {
                    let nr = (r as i64 + signed * s).rem_euclid(modulus) as usize;
                    let nc = cost + c * c;
                    if nc < next[nr] {
                        next[nr] = nc;
                    }
                }
                c += 2;
            }
        }
        best = next;
    }
    let mut out = Vec::with_capacity((2 * q_abs + 1) as usize);
    for i in 0..=2 * q_abs {
        // ⟨c,σ⟩ ≡ 2i − 4|q| (mod 8|q|)
        let r = (2 * i - 4 * q_abs).rem_euclid(modulus) as usize;
        let min = best[r];
        if min == UNSET {
            out.push(None); // residue unreached inside this box
            continue;
        }
        let num = min - m;
        if num.rem_euclid(8) != 0 {
            return Err(Error::Internal(format!(
                "minimizer norm {min} is not {m} mod 8"
            )));
        }
        out.push(Some(num / 8));
    }
    Ok(out)
}

/// Torsion coefficients of the knot forced by σ.
pub fn torsion_coeffs(cm: &Changemaker) -> Result<TorsionSeq> {
    let sigma = cm.sigma();
    let norm = cm.norm_sq();
    if norm % 4 != 0 {
        return Err(Error::InvalidInput(format!(
            "|σ|² = {norm} is not divisible by 4"
        )));
    }
    let q_abs = norm / 4;
    let cap = 2 * sigma.iter().max().copied().unwrap_or(1) + 1;
    let mut bound = 3i64;
    let mut prev = torsion_with_box(sigma, q_abs, bound)?;
    loop {
        // Box growth 3, 7, 15, …; give up once the agreeing pair would start
        // past the cap.
        let next_bound = 2 * bound + 1;
        let next = torsion_with_box(sigma, q_abs, next_bound)?;
        if next == prev && next.iter().all(Option::is_some) {
            let values: Vec<i64> = next.into_iter().map(Option::unwrap).collect();
            if values.iter().any(|&t| t < 0) {
                return Err(Error::Internal("negative torsion coefficient".into()));
            }
            return Ok(TorsionSeq { q_abs, values });
        }
        prev = next;
        bound = next_bound;
        if bound > 2 * cap {
            return Err(Error::NonConvergence);
        }
    }
}

/// Second differences: `b_i = t_{i−1} − 2t_i + t_{i+1}` for `i > 0` (with
/// `t` padded by one zero), and `b_0 = 1 − 2Σ_{i>0} b_i`.
pub fn alex_poly(t: &TorsionSeq) -> AlexPoly {
    let mut padded = t.values.clone();
    padded.push(0);
    let mut higher = Vec::new();
    for i in 1..padded.len() - 1 {
        higher.push(padded[i - 1] - 2 * padded[i] + padded[i + 1]);
    }
    while higher.last() == Some(&0) {
        higher.pop();
    }
    let b0 = 1 - 2 * higher.iter().sum::<i64>();
    AlexPoly { b0, higher }
}

/// `b_i ∈ {−1,0,1}` with nonzero entries alternating in sign from the top
/// coefficient down — the coefficient shape every realizable σ must yield.
pub fn has_lspace_shape(poly: &AlexPoly) -> bool {
    let mut seq: Vec<i64> = poly
        .higher
        .iter()
        .rev()
        .copied()
        .chain([poly.b0])
        .collect();
    seq.retain(|&b| b != 0);
    if seq.iter().any(|&b| b.abs() != 1) {
        return false;
    }
    seq.windows(2).all(|w| w[0] * w[1] == -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(sigma: &[i64]) -> Changemaker {
        Changemaker::new(sigma.to_vec()).unwrap()
    }

    /// Torsion of the torus knot T(2, 2k+1): t_i = ⌈(k−i)/2⌉ for i ≤ k,
    /// else 0. Independent closed form used as the oracle.
    pub fn torus_torsion(k: i64, len: usize) -> Vec<i64> {
        (0..len as i64)
            .map(|i| if i <= k { (k - i + 1).div_euclid(2) } else { 0 })
            .collect()
    }

    #[test]
    fn torsion_examples() {
        let t = torsion_coeffs(&cm(&[1, 1, 1, 1, 2])).unwrap();
        assert_eq!(t.q_abs, 2);
        assert_eq!(t.values, vec![1, 0, 0, 0, 0]);

        let t = torsion_coeffs(&cm(&[1, 1, 1, 1, 2, 2])).unwrap();
        assert_eq!(t.values, vec![1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn torsion_top_value_vanishes() {
        for sigma in [
            &[1i64, 1, 1, 1, 2][..],
            &[1, 1, 2, 5, 5],
            &[1, 1, 3, 3, 6],
            &[1, 1, 2, 4, 7, 7],
        ] {
            let t = torsion_coeffs(&cm(sigma)).unwrap();
            assert_eq!(*t.values.last().unwrap(), 0, "{sigma:?}");
            assert_eq!(t.values.len() as i64, 2 * t.q_abs + 1);
        }
    }

    #[test]
    fn alex_poly_examples() {
        let trefoil = alex_poly(&TorsionSeq {
            q_abs: 2,
            values: vec![1, 0, 0, 0, 0],
        });
        assert_eq!(trefoil.b0, -1);
        assert_eq!(trefoil.higher, vec![1]);
        assert_eq!(trefoil.display(), "T-1+T^-1");

        let t25 = alex_poly(&TorsionSeq {
            q_abs: 3,
            values: vec![1, 1, 0, 0, 0, 0, 0],
        });
        assert_eq!(t25.b0, 1);
        assert_eq!(t25.higher, vec![-1, 1]);

        let unknot = alex_poly(&TorsionSeq {
            q_abs: 1,
            values: vec![0, 0, 0],
        });
        assert_eq!(unknot.b0, 1);
        assert!(unknot.higher.is_empty());
    }

    #[test]
    fn normalization_holds() {
        for sigma in [&[1i64, 1, 1, 1, 2][..], &[1, 1, 2, 5, 5], &[1, 1, 2, 4, 7, 7]] {
            let poly = alex_poly(&torsion_coeffs(&cm(sigma)).unwrap());
            let total = poly.b0 + 2 * poly.higher.iter().sum::<i64>();
            assert_eq!(total, 1, "{sigma:?}");
            assert!(has_lspace_shape(&poly), "{sigma:?}");
        }
    }

    #[test]
    fn torus_knot_family() {
        // σ = (1,1,1,1,2^[s]) must reproduce the torsion of T(2, 2s+1).
        for s in 1..=5i64 {
            let mut sigma = vec![1, 1, 1, 1];
            sigma.extend(std::iter::repeat(2).take(s as usize));
            let t = torsion_coeffs(&cm(&sigma)).unwrap();
            assert_eq!(t.q_abs, s + 1);
            assert_eq!(t.values, torus_torsion(s, (2 * (s + 1) + 1) as usize), "s={s}");
        }
    }
}
