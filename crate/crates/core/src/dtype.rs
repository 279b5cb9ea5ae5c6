//! D-type lattices: construction from the manifold parameters `(p,q)`,
//! recovery of `(p,q)` from vertex norms, and classification of lattice
//! elements (irreducible, breakable, intervals, reflections).
//!
//! The vertex basis is ordered `(x_*, x_**, x_0, …, x_n)`. The underlying
//! tree has `x_0` as its only degree-3 vertex: `x_*` and `x_**` both attach
//! to `x_0`, and `x_0 — x_1 — ⋯ — x_n` is a path. `|x_*| = |x_**| = 2` and
//! `|x_i| = a_i ≥ 2`, adjacent vertices pairing to −1.

use crate::contfrac::{eval_as_pair, neg_cf_expand};
use crate::error::{Error, Result};
use crate::lattice::{short_vectors, GramMatrix};
use num_bigint::BigInt;
use num_traits::Signed;

/// The manifold label: a coprime pair `(p, q)` with `p > 1`, `q ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrismParams {
    p: i64,
    q: i64,
}

impl PrismParams {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 1 {
            return Err(Error::InvalidInput(format!("p must exceed 1, got {p}")));
        }
        if q == 0 {
            return Err(Error::InvalidInput("q must be nonzero".into()));
        }
        if num_integer::gcd(p, q.abs()) != 1 {
            return Err(Error::InvalidInput(format!("p={p}, q={q} are not coprime")));
        }
        Ok(PrismParams { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

impl std::fmt::Display for PrismParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "P({},{})", self.p, self.q)
    }
}

/// Coefficients of a lattice element in the vertex basis; length `n + 3`.
pub type VertexCoords = Vec<i64>;

/// A D-type lattice presented by its vertex norms `(a_0, …, a_n)`.
#[derive(Clone, Debug)]
pub struct DTypeLattice {
    norms: Vec<i64>,
    gram: GramMatrix,
    det: BigInt,
}

impl DTypeLattice {
    /// Build the lattice for an arbitrary norm sequence with every `a_i ≥ 2`.
    pub fn from_norms(norms: &[i64]) -> Result<Self> {
        if norms.is_empty() {
            return Err(Error::InvalidInput("need at least one vertex norm".into()));
        }
        if norms.iter().any(|&a| a < 2) {
            return Err(Error::InvalidInput(format!(
                "vertex norms must be >= 2, got {norms:?}"
            )));
        }
        let n1 = norms.len(); // n + 1 spine vertices
        let rank = n1 + 2;
        let mut rows = vec![vec![0i64; rank]; rank];
        rows[0][0] = 2;
        rows[1][1] = 2;
        rows[0][2] = -1;
        rows[2][0] = -1;
        rows[1][2] = -1;
        rows[2][1] = -1;
        for (i, &a) in norms.iter().enumerate() {
            rows[2 + i][2 + i] = a;
            if i + 1 < n1 {
                rows[2 + i][2 + i + 1] = -1;
                rows[2 + i + 1][2 + i] = -1;
            }
        }
        let gram = GramMatrix::from_rows(rows);
        let det = gram.det();
        debug_assert!(det.is_positive());
        Ok(DTypeLattice {
            norms: norms.to_vec(),
            gram,
            det,
        })
    }

    pub fn norms(&self) -> &[i64] {
        &self.norms
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    /// Cached determinant of the Gram matrix.
    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn rank(&self) -> usize {
        self.norms.len() + 2
    }

    /// Number of spine vertices `x_0..x_n`, i.e. `n + 1`.
    pub fn spine_len(&self) -> usize {
        self.norms.len()
    }

    /// Largest index `j` for which the reflection `τ_j` is defined: the first
    /// spine index of norm ≥ 3, or the end of the spine if all norms are 2.
    pub fn tau_limit(&self) -> usize {
        self.norms
            .iter()
            .position(|&a| a >= 3)
            .unwrap_or(self.norms.len() - 1)
    }

    /// Norm of a single vertex-basis element given by vertex coordinates
    /// position (0 = x_*, 1 = x_**, 2+i = x_i).
    pub fn vertex_norm(&self, pos: usize) -> i64 {
        self.gram.entry(pos, pos)
    }
}

/// Build `Δ(p,q)` for `q < 0`.
///
/// With `k = ⌊q/p⌋` (floor toward −∞) and `q' = q − kp`, the norms are
/// `a_0 = 1 − k` followed by the canonical expansion of `p/q'`.
pub fn dtype_from_pq(pp: &PrismParams) -> Result<DTypeLattice> {
    let (p, q) = (pp.p(), pp.q());
    if q >= 0 {
        return Err(Error::InvalidInput(format!(
            "lattice construction needs q < 0, got q={q}"
        )));
    }
    let k = q.div_euclid(p); // floor division, sign-critical
    let a0 = 1 - k;
    debug_assert!(a0 >= 2);
    let qp = q - k * p;
    debug_assert!(qp > 0 && qp < p, "0 < q' < p fails: q'={qp}, p={p}");
    let mut norms = vec![a0];
    norms.extend(neg_cf_expand(p, qp)?.terms());
    DTypeLattice::from_norms(&norms)
}

/// Recover `(p, q)` from vertex norms: `−q/p = [a_0 − 1, a_1, …, a_n]⁻` in
/// lowest terms. Inverse of [`dtype_from_pq`].
pub fn pq_from_norms(norms: &[i64]) -> Result<PrismParams> {
    if norms.len() < 2 {
        return Err(Error::InvalidInput(
            "need at least two vertex norms to recover (p,q)".into(),
        ));
    }
    if norms.iter().any(|&a| a < 2) {
        return Err(Error::InvalidInput(format!(
            "vertex norms must be >= 2, got {norms:?}"
        )));
    }
    let mut terms = vec![norms[0] - 1];
    terms.extend_from_slice(&norms[1..]);
    let (num, den) = eval_as_pair(&terms)?;
    let to_i64 = |b: &BigInt| i64::try_from(b).expect("prism parameter overflow");
    PrismParams::new(to_i64(&den), -to_i64(&num))
}

/// Which star vertex (if any) an interval contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarEnd {
    None,
    Star,
    StarStar,
}

/// A connected 0/1 subtree avoiding `{x_*, x_**}` together: either a single
/// star, a spine run `[lo..hi]`, or a star attached to a spine run starting
/// at `x_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub star: StarEnd,
    /// Inclusive spine range, `None` when the interval is a bare star.
    pub spine: Option<(usize, usize)>,
}

impl Interval {
    pub fn vector(&self, spine_len: usize) -> VertexCoords {
        let mut v = vec![0i64; spine_len + 2];
        match self.star {
            StarEnd::Star => v[0] = 1,
            StarEnd::StarStar => v[1] = 1,
            StarEnd::None => {}
        }
        if let Some((lo, hi)) = self.spine {
            for i in lo..=hi {
                v[2 + i] = 1;
            }
        }
        v
    }

    pub fn contains_spine(&self, i: usize) -> bool {
        matches!(self.spine, Some((lo, hi)) if lo <= i && i <= hi)
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        if self.star != StarEnd::None && self.star == other.star {
            return true;
        }
        match (self.spine, other.spine) {
            (Some((a, b)), Some((c, d))) => a.max(c) <= b.min(d),
            _ => false,
        }
    }

    fn intersection_vector(&self, other: &Interval, spine_len: usize) -> VertexCoords {
        let mut v = vec![0i64; spine_len + 2];
        if self.star != StarEnd::None && self.star == other.star {
            match self.star {
                StarEnd::Star => v[0] = 1,
                StarEnd::StarStar => v[1] = 1,
                StarEnd::None => unreachable!(),
            }
        }
        if let (Some((a, b)), Some((c, d))) = (self.spine, other.spine) {
            let (lo, hi) = (a.max(c), b.min(d));
            if lo <= hi {
                for i in lo..=hi {
                    v[2 + i] = 1;
                }
            }
        }
        v
    }

    /// Abutment per the pairing characterization: consecutive (disjoint,
    /// pairing −1) or sharing a common endpoint (intersecting, pairing equal
    /// to the intersection's norm minus 1).
    pub fn abuts(&self, other: &Interval, lat: &DTypeLattice) -> bool {
        let n = lat.spine_len();
        let va = self.vector(n);
        let vb = other.vector(n);
        let pairing = lat.gram().pair(&va, &vb);
        if self.intersects(other) {
            let inter = self.intersection_vector(other, n);
            pairing == lat.gram().form(&inter) - 1
        } else {
            pairing == -1
        }
    }
}

/// The index set `A` when `v = [A]` is an interval, else `None`.
///
/// Requires all coefficients in `{0,1}`, a support that induces a connected
/// subtree, and not both stars.
pub fn is_interval(v: &[i64]) -> Option<Interval> {
    if v.len() < 3 || v.iter().any(|&c| c != 0 && c != 1) {
        return None;
    }
    let star = match (v[0], v[1]) {
        (1, 1) => return None,
        (1, 0) => StarEnd::Star,
        (0, 1) => StarEnd::StarStar,
        _ => StarEnd::None,
    };
    let support: Vec<usize> = (0..v.len() - 2).filter(|&i| v[2 + i] == 1).collect();
    let spine = match (support.first(), support.last()) {
        (None, None) => None,
        (Some(&lo), Some(&hi)) => {
            if hi - lo + 1 != support.len() {
                return None; // gap: disconnected
            }
            Some((lo, hi))
        }
        _ => unreachable!(),
    };
    match (star, spine) {
        (StarEnd::None, None) => None, // zero vector
        (StarEnd::None, Some(_)) => Some(Interval { star, spine }),
        (_, None) => Some(Interval { star, spine }),
        (_, Some((lo, _))) => {
            if lo == 0 {
                Some(Interval { star, spine })
            } else {
                None // star attaches only through x_0
            }
        }
    }
}

/// The reflection `τ_j`, acting on vertex coordinates.
///
/// Case table on basis elements: swaps the stars, fixes `x_i` for `i < j`,
/// sends `x_j ↦ −x_* − x_** − 2(x_0 + ⋯ + x_{j−1}) − x_j`, and negates
/// `x_i` for `i > j`. An involution preserving the pairing; defined for
/// `0 ≤ j ≤ tau_limit()`.
pub fn tau(j: usize, v: &[i64], lat: &DTypeLattice) -> Result<VertexCoords> {
    if j > lat.tau_limit() {
        return Err(Error::InvalidInput(format!(
            "tau_{j} undefined: a_i must be 2 for i < j (limit {})",
            lat.tau_limit()
        )));
    }
    let n1 = lat.spine_len();
    assert_eq!(v.len(), n1 + 2, "vertex coordinate length mismatch");
    let cj = v[2 + j];
    let mut out = vec![0i64; n1 + 2];
    out[0] = v[1] - cj;
    out[1] = v[0] - cj;
    for i in 0..n1 {
        out[2 + i] = match i.cmp(&j) {
            std::cmp::Ordering::Less => v[2 + i] - 2 * cj,
            std::cmp::Ordering::Equal => -cj,
            std::cmp::Ordering::Greater => -v[2 + i],
        };
    }
    Ok(out)
}

/// Norm cap under which the split searches below stay exact and affordable.
pub const SPLIT_SEARCH_NORM_LIMIT: i64 = 40;

/// No decomposition `v = x + y` with `x, y` nonzero and `⟨x,y⟩ ≥ 0`.
///
/// Decided by bounded brute force: any such `x` satisfies
/// `|x|² ≤ |v|² − 1`, so enumerating short vectors up to that bound is a
/// complete search. Usable only for `|v|² ≤ 40` (documented limit).
pub fn is_irreducible(v: &[i64], lat: &DTypeLattice) -> bool {
    let norm = lat.gram().form(v);
    assert!(norm > 0, "irreducibility needs a nonzero element");
    assert!(
        norm <= SPLIT_SEARCH_NORM_LIMIT,
        "split search limited to norm <= {SPLIT_SEARCH_NORM_LIMIT}, got {norm}"
    );
    if norm == 1 {
        return true;
    }
    for x in short_vectors(lat.gram(), norm - 1) {
        let y: Vec<i64> = v.iter().zip(&x).map(|(a, b)| a - b).collect();
        if y.iter().all(|&c| c == 0) {
            continue;
        }
        if lat.gram().pair(&x, &y) >= 0 {
            return false;
        }
    }
    true
}

/// Some decomposition `v = x + y` with `|x|, |y| ≥ 3` and `⟨x,y⟩ = −1`.
///
/// Same bounded brute force; `|v|² = |x|² + |y|² − 2` forces
/// `|x|² ≤ |v|² − 1`, and `|v|² < 4` is unbreakable outright.
pub fn is_breakable(v: &[i64], lat: &DTypeLattice) -> bool {
    let norm = lat.gram().form(v);
    assert!(norm > 0, "breakability needs a nonzero element");
    assert!(
        norm <= SPLIT_SEARCH_NORM_LIMIT,
        "split search limited to norm <= {SPLIT_SEARCH_NORM_LIMIT}, got {norm}"
    );
    if norm < 4 {
        return false;
    }
    for x in short_vectors(lat.gram(), norm - 1) {
        if lat.gram().form(&x) < 3 {
            continue;
        }
        let y: Vec<i64> = v.iter().zip(&x).map(|(a, b)| a - b).collect();
        if lat.gram().form(&y) >= 3 && lat.gram().pair(&x, &y) == -1 {
            return true;
        }
    }
    false
}

/// Fast breakability test for intervals: an interval is breakable exactly
/// when it contains at least two vertices of norm ≥ 3.
///
/// The forward direction splits the interval at a point between two heavy
/// vertices; the converse is validated against [`is_breakable`] in tests.
pub fn interval_is_breakable(iv: &Interval, lat: &DTypeLattice) -> bool {
    let Some((lo, hi)) = iv.spine else {
        return false;
    };
    let heavy = (lo..=hi).filter(|&i| lat.norms()[i] >= 3).count();
    heavy >= 2
}

/// `det Δ(p,q) = 4|q|`, as a `BigInt` comparison.
pub fn discriminant_matches(lat: &DTypeLattice, pp: &PrismParams) -> bool {
    *lat.det() == BigInt::from(4 * pp.q().abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: i64, q: i64) -> PrismParams {
        PrismParams::new(p, q).unwrap()
    }

    #[test]
    fn dtype_norm_examples() {
        assert_eq!(dtype_from_pq(&pp(3, -2)).unwrap().norms(), &[2, 3]);
        assert_eq!(dtype_from_pq(&pp(11, -30)).unwrap().norms(), &[4, 4, 3]);
        assert_eq!(dtype_from_pq(&pp(3, -14)).unwrap().norms(), &[6, 3]);
    }

    #[test]
    fn pq_from_norms_examples() {
        assert_eq!(pq_from_norms(&[2, 3]).unwrap(), pp(3, -2));
        assert_eq!(pq_from_norms(&[4, 4, 3]).unwrap(), pp(11, -30));
        assert_eq!(pq_from_norms(&[3, 2, 3]).unwrap(), pp(5, -7));
    }

    #[test]
    fn round_trip_and_discriminant() {
        let mut seen = 0;
        for q in -40..0i64 {
            for p in 2..60i64 {
                if num_integer::gcd(p, -q) != 1 {
                    continue;
                }
                let params = pp(p, q);
                let lat = dtype_from_pq(&params).unwrap();
                assert_eq!(pq_from_norms(lat.norms()).unwrap(), params);
                assert!(discriminant_matches(&lat, &params), "P({p},{q})");
                assert!(lat.gram().is_positive_definite());
                seen += 1;
            }
        }
        assert!(seen > 200);
    }

    #[test]
    fn vertex_basis_elements_are_irreducible() {
        for norms in [vec![2, 3], vec![3, 2, 3], vec![4, 4, 3], vec![6, 3]] {
            let lat = DTypeLattice::from_norms(&norms).unwrap();
            for pos in 0..lat.rank() {
                let mut v = vec![0i64; lat.rank()];
                v[pos] = 1;
                assert!(is_irreducible(&v, &lat), "norms={norms:?} pos={pos}");
            }
        }
    }

    #[test]
    fn reducible_example() {
        // x_0 + x_2 skipping x_1: the two summands pair to zero.
        let lat = DTypeLattice::from_norms(&[3, 2, 3]).unwrap();
        let mut v = vec![0i64; lat.rank()];
        v[2] = 1;
        v[4] = 1;
        assert!(!is_irreducible(&v, &lat));
    }

    #[test]
    fn star_sum_irreducible_when_a0_big() {
        // x_* + x_** + x_0 + x_1 = −τ_0(x_0 + x_1) when a_0 ≥ 3.
        let lat = DTypeLattice::from_norms(&[3, 2, 3]).unwrap();
        let v = vec![1, 1, 1, 1, 0];
        assert!(is_irreducible(&v, &lat));
    }

    #[test]
    fn breakable_examples() {
        // Norm-2 vectors are never breakable.
        let lat = DTypeLattice::from_norms(&[3, 2, 3]).unwrap();
        let xstar = vec![1, 0, 0, 0, 0];
        assert!(!is_breakable(&xstar, &lat));
        // Interval over two norm-3 vertices is breakable.
        let v = vec![0, 0, 1, 1, 1];
        assert!(is_breakable(&v, &lat));
        // A single heavy vertex of norm 5 is not.
        let lat5 = DTypeLattice::from_norms(&[2, 5]).unwrap();
        let x1 = vec![0, 0, 0, 1];
        assert!(!is_breakable(&x1, &lat5));
    }

    #[test]
    fn interval_breakability_matches_brute_force() {
        for norms in [
            vec![2, 3],
            vec![3, 2, 3],
            vec![4, 4, 3],
            vec![3, 3, 4],
            vec![2, 4, 5],
            vec![5, 3, 3, 2],
        ] {
            let lat = DTypeLattice::from_norms(&norms).unwrap();
            let n = lat.spine_len();
            let mut ivs: Vec<Interval> = Vec::new();
            for lo in 0..n {
                for hi in lo..n {
                    ivs.push(Interval {
                        star: StarEnd::None,
                        spine: Some((lo, hi)),
                    });
                    if lo == 0 {
                        ivs.push(Interval {
                            star: StarEnd::Star,
                            spine: Some((lo, hi)),
                        });
                    }
                }
            }
            for iv in ivs {
                let v = iv.vector(n);
                assert_eq!(
                    interval_is_breakable(&iv, &lat),
                    is_breakable(&v, &lat),
                    "norms={norms:?} iv={iv:?}"
                );
            }
        }
    }

    #[test]
    fn tau_examples() {
        let lat = DTypeLattice::from_norms(&[3, 2, 3]).unwrap();
        let xstar = vec![1, 0, 0, 0, 0];
        let xstar2 = vec![0, 1, 0, 0, 0];
        assert_eq!(tau(0, &xstar, &lat).unwrap(), xstar2);
        // a_0 ≥ 3 sends x_1 to −x_1 under τ_0.
        let x1 = vec![0, 0, 0, 1, 0];
        let expect: Vec<i64> = vec![0, 0, 0, -1, 0];
        assert_eq!(tau(0, &x1, &lat).unwrap(), expect);
        // Reject j beyond the 2-run.
        assert!(tau(1, &x1, &lat).is_err());
    }

    #[test]
    fn tau_is_pairing_preserving_involution() {
        use rand::prelude::*;
        let mut rng = StdRng::seed_from_u64(11);
        for norms in [vec![2, 3, 4], vec![2, 2, 3, 2], vec![3, 2, 3]] {
            let lat = DTypeLattice::from_norms(&norms).unwrap();
            for j in 0..=lat.tau_limit() {
                for _ in 0..50 {
                    let v: Vec<i64> =
                        (0..lat.rank()).map(|_| rng.gen_range(-3..=3i64)).collect();
                    let w: Vec<i64> =
                        (0..lat.rank()).map(|_| rng.gen_range(-3..=3i64)).collect();
                    let tv = tau(j, &v, &lat).unwrap();
                    let tw = tau(j, &w, &lat).unwrap();
                    assert_eq!(tau(j, &tv, &lat).unwrap(), v);
                    assert_eq!(lat.gram().pair(&tv, &tw), lat.gram().pair(&v, &w));
                }
            }
        }
    }

    #[test]
    fn interval_examples() {
        // x_0 alone.
        let got = is_interval(&[0, 0, 1, 0]).unwrap();
        assert_eq!(got.star, StarEnd::None);
        assert_eq!(got.spine, Some((0, 0)));
        // Both stars excluded.
        assert!(is_interval(&[1, 1, 1, 0]).is_none());
        // Disconnected support.
        assert!(is_interval(&[0, 0, 1, 0, 1]).is_none());
        // Star plus run from x_0.
        assert!(is_interval(&[1, 0, 1, 1]).is_some());
        // Star with run not reaching x_0.
        assert!(is_interval(&[1, 0, 0, 1]).is_none());
    }

    #[test]
    fn irreducibles_are_tau_images_of_intervals() {
        // Sample elements of small norm; every irreducible must be an
        // interval up to sign and one reflection.
        for norms in [vec![3, 2, 3], vec![2, 3, 2], vec![4, 3]] {
            let lat = DTypeLattice::from_norms(&norms).unwrap();
            for v in short_vectors(lat.gram(), 8) {
                if !is_irreducible(&v, &lat) {
                    continue;
                }
                let mut found = false;
                'outer: for j in 0..=lat.tau_limit() {
                    let tv = tau(j, &v, &lat).unwrap();
                    for cand in [v.clone(), crate::lattice::neg(&v), tv.clone(), crate::lattice::neg(&tv)] {
                        if is_interval(&cand).is_some() {
                            found = true;
                            break 'outer;
                        }
                    }
                }
                assert!(found, "irreducible {v:?} in {norms:?} has no interval form");
            }
        }
    }

    #[test]
    fn norm_sequences_injective_on_pairs() {
        // Distinct norm sequences give distinct (p,q): injectivity over all
        // sequences with total ≤ 18.
        use std::collections::HashMap;
        let mut by_pq: HashMap<PrismParams, Vec<Vec<i64>>> = HashMap::new();
        fn gen(prefix: &mut Vec<i64>, budget: i64, out: &mut Vec<Vec<i64>>) {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            let mut a = 2;
            while a <= budget {
                prefix.push(a);
                gen(prefix, budget - a, out);
                prefix.pop();
                a += 1;
            }
        }
        let mut seqs = Vec::new();
        gen(&mut Vec::new(), 18, &mut seqs);
        for s in seqs {
            let params = pq_from_norms(&s).unwrap();
            by_pq.entry(params).or_default().push(s);
        }
        for (params, seqs) in by_pq {
            assert_eq!(seqs.len(), 1, "{params} from {seqs:?}");
        }
    }
}
