//! Integer vectors, Gram matrices, and the exact enumeration kernels the
//! rest of the crate is built on.
//!
//! Vector coordinates are `i64`: every search in this crate runs at desk
//! scale, where coordinates are bounded by `⌊√bound⌋` for bounds that never
//! exceed a few hundred. Determinants are the one place 64 bits can genuinely
//! overflow, so [`GramMatrix::det`] computes in `BigInt` via fraction-free
//! (Bareiss) elimination.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A lattice vector in ambient coordinates.
pub type IntVec = Vec<i64>;

/// Inner product of two vectors of equal length.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Squared Euclidean norm.
pub fn norm_sq(a: &[i64]) -> i64 {
    dot(a, a)
}

pub fn neg(a: &[i64]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

/// Largest integer `s ≥ 0` with `s² ≤ n`.
pub fn isqrt(n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as i64;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// A square symmetric integer matrix, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct GramMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl GramMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let entries: Vec<i64> = rows.into_iter().flatten().collect();
        let g = GramMatrix { n, entries };
        for i in 0..n {
            for j in 0..i {
                assert_eq!(g.entry(i, j), g.entry(j, i), "matrix must be symmetric");
            }
        }
        g
    }

    /// Gram matrix of pairwise inner products of `basis`.
    pub fn from_basis(basis: &[IntVec]) -> Self {
        let n = basis.len();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[i * n + j] = dot(&basis[i], &basis[j]);
            }
        }
        GramMatrix { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Evaluate the quadratic form on a coordinate vector.
    pub fn form(&self, x: &[i64]) -> i64 {
        debug_assert_eq!(x.len(), self.n);
        let mut acc = 0i64;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += x[i] * self.entry(i, j) * x[j];
            }
        }
        acc
    }

    /// Pairing of two coordinate vectors under the form.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        let mut acc = 0i64;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                acc += x[i] * self.entry(i, j) * y[j];
            }
        }
        acc
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.entry(i, j))).collect())
            .collect();
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// All leading principal minors positive.
    pub fn is_positive_definite(&self) -> bool {
        let n = self.n;
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(self.entry(i, j))).collect())
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            // After k elimination steps, m[k][k] is the (k+1)-st leading minor.
            if !m[k][k].is_positive() {
                return false;
            }
            if k + 1 == n {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        true
    }
}

impl std::fmt::Debug for GramMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "GramMatrix[{}]", self.n)?;
        for i in 0..self.n {
            let row: Vec<i64> = (0..self.n).map(|j| self.entry(i, j)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Every `w ∈ Z^m` with `⟨w,σ⟩ = 0` and `0 < |w|² ≤ bound`, each exactly once,
/// in lexicographic coordinate order.
///
/// Depth-first over coordinates with `|w_i| ≤ ⌊√bound⌋`, pruning on the
/// running norm and on the Cauchy–Schwarz bound for the residual pairing:
/// the unassigned suffix `w'` must satisfy `⟨w',σ'⟩ = −d` with
/// `|w'|² ≤ bound − |prefix|²`, so `d² ≤ (bound − |prefix|²)·|σ'|²`.
pub fn enumerate_orthogonal_short(sigma: &[i64], bound: i64) -> Vec<IntVec> {
    assert!(bound >= 1, "bound must be at least 1");
    let m = sigma.len();
    let mut suffix_norm = vec![0i64; m + 1];
    for i in (0..m).rev() {
        suffix_norm[i] = suffix_norm[i + 1] + sigma[i] * sigma[i];
    }
    let mut out = Vec::new();
    let mut w = vec![0i64; m];
    fn rec(
        i: usize,
        pdot: i64,
        pnorm: i64,
        sigma: &[i64],
        suffix_norm: &[i64],
        bound: i64,
        w: &mut Vec<i64>,
        out: &mut Vec<IntVec>,
    ) {
        let m = sigma.len();
        if i == m {
            if pdot == 0 && pnorm > 0 {
                out.push(w.clone());
            }
            return;
        }
        let rem = bound - pnorm;
        if pdot * pdot > rem * suffix_norm[i] {
            return;
        }
        let s = isqrt(rem);
        for wi in -s..=s {
            w[i] = wi;
            rec(
                i + 1,
                pdot + wi * sigma[i],
                pnorm + wi * wi,
                sigma,
                suffix_norm,
                bound,
                w,
                out,
            );
        }
        w[i] = 0;
    }
    rec(0, 0, 0, sigma, &suffix_norm, bound, &mut w, &mut out);
    out
}

/// Integer coordinates `c` with `Σ c_k · basis_k = target`, if they exist.
///
/// Absence covers both "no rational solution" and "rational but not
/// integral". The basis vectors must be linearly independent; a dependent
/// family also returns `None`.
pub fn solve_in_basis(basis: &[IntVec], target: &[i64]) -> Option<IntVec> {
    let k = basis.len();
    if k == 0 {
        return if target.iter().all(|&x| x == 0) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let m = basis[0].len();
    assert!(basis.iter().all(|v| v.len() == m) && target.len() == m);
    // Columns are the basis vectors, last column the target.
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|r| {
            (0..=k)
                .map(|c| {
                    let v = if c < k { basis[c][r] } else { target[r] };
                    BigRational::from_integer(BigInt::from(v))
                })
                .collect()
        })
        .collect();
    let mut pivot_rows = Vec::with_capacity(k);
    let mut row = 0usize;
    for col in 0..k {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            return None; // dependent basis
        };
        a.swap(row, p);
        let inv = a[row][col].clone();
        for c in col..=k {
            a[row][c] = &a[row][c] / &inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=k {
                    a[r][c] = &a[r][c] - &f * &a[row][c];
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: every non-pivot row must have zero RHS.
    for r in row..m {
        if !a[r][k].is_zero() {
            return None;
        }
    }
    let mut coords = Vec::with_capacity(k);
    for (col, &pr) in pivot_rows.iter().enumerate() {
        let val = &a[pr][k];
        if !val.is_integer() {
            return None;
        }
        let _ = col;
        let big = val.to_integer();
        coords.push(i64::try_from(&big).expect("basis coordinate overflow"));
    }
    Some(coords)
}

/// All nonzero coordinate vectors `x` with `xᵀGx ≤ bound` for a positive
/// definite `G`, via exact LDLᵀ and recursive coordinate bounds.
pub fn short_vectors(gram: &GramMatrix, bound: i64) -> Vec<IntVec> {
    let n = gram.rank();
    assert!(n > 0);
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    // G = L D Lᵀ with unit lower-triangular L.
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = rat(gram.entry(j, j));
        for k in 0..j {
            dj -= &d[k] * &l[j][k] * &l[j][k];
        }
        assert!(dj.is_positive(), "form is not positive definite");
        for i in j + 1..n {
            let mut v = rat(gram.entry(i, j));
            for k in 0..j {
                v -= &d[k] * &l[i][k] * &l[j][k];
            }
            l[i][j] = v / &dj;
        }
        d[j] = dj;
    }
    // Q(x) = Σ_j d_j (x_j + Σ_{i>j} l[i][j] x_i)².
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    rec_short(&l, &d, rat(bound), n, &mut x, &mut out);
    out
}

fn rec_short(
    l: &[Vec<BigRational>],
    d: &[BigRational],
    rem: BigRational,
    level: usize,
    x: &mut Vec<i64>,
    out: &mut Vec<IntVec>,
) {
    if level == 0 {
        if x.iter().any(|&v| v != 0) {
            out.push(x.clone());
        }
        return;
    }
    let j = level - 1;
    let mut c = BigRational::zero();
    for i in level..l.len() {
        if x[i] != 0 {
            c += &l[i][j] * BigRational::from_integer(BigInt::from(x[i]));
        }
    }
    // d_j (x_j + c)² ≤ rem
    let t = &rem / &d[j];
    let tf = rational_to_f64(&t).max(0.0).sqrt();
    let cf = rational_to_f64(&c);
    let mut lo = (-cf - tf).floor() as i64 - 1;
    let mut hi = (-cf + tf).ceil() as i64 + 1;
    let fits = |v: i64| {
        let s = BigRational::from_integer(BigInt::from(v)) + &c;
        &d[j] * &s * &s <= rem
    };
    while lo <= hi && !fits(lo) {
        lo += 1;
    }
    while hi >= lo && !fits(hi) {
        hi -= 1;
    }
    for v in lo..=hi {
        if !fits(v) {
            continue;
        }
        x[j] = v;
        let s = BigRational::from_integer(BigInt::from(v)) + &c;
        let used = &d[j] * &s * &s;
        rec_short(l, d, &rem - used, j, x, out);
    }
    x[j] = 0;
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    bigint_to_f64(num) / bigint_to_f64(den)
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(if b.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}
