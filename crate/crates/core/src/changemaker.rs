//! Changemaker vectors, their enumeration, the standard basis of the
//! orthogonal complement, and the interval/intersection-graph diagnostics
//! attached to it.

use crate::dtype::{is_interval, tau, DTypeLattice, Interval, StarEnd};
use crate::embed::Embedding;
use crate::error::{Error, Result};
use crate::lattice::{dot, neg, norm_sq, solve_in_basis, GramMatrix, IntVec};

/// Subset-sum reachability: every `0 ≤ k ≤ Σσ_i` is a subset sum.
///
/// Decided by a bitset sweep over prefix sums. Rejects inputs that are not
/// nondecreasing and nonnegative.
pub fn is_changemaker(sigma: &[i64]) -> Result<bool> {
    if sigma.is_empty() {
        return Err(Error::InvalidInput("empty vector".into()));
    }
    if sigma[0] < 0 || sigma.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput(format!(
            "changemaker test needs a nondecreasing nonnegative vector, got {sigma:?}"
        )));
    }
    let total: i64 = sigma.iter().sum();
    let total = usize::try_from(total).expect("sum fits usize");
    let words = total / 64 + 1;
    let mut reach = vec![0u64; words];
    reach[0] = 1; // empty sum
    for &s in sigma {
        let s = s as usize;
        // reach |= reach << s
        let (word_shift, bit_shift) = (s / 64, s % 64);
        for w in (0..words).rev() {
            if w < word_shift {
                break;
            }
            let mut v = reach[w - word_shift] << bit_shift;
            if bit_shift > 0 && w > word_shift {
                v |= reach[w - word_shift - 1] >> (64 - bit_shift);
            }
            reach[w] |= v;
        }
    }
    Ok((0..=total).all(|k| reach[k / 64] >> (k % 64) & 1 == 1))
}

/// A validated changemaker vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Changemaker {
    sigma: IntVec,
}

impl Changemaker {
    pub fn new(sigma: IntVec) -> Result<Self> {
        if !is_changemaker(&sigma)? {
            return Err(Error::InvalidInput(format!(
                "{sigma:?} is not a changemaker vector"
            )));
        }
        Ok(Changemaker { sigma })
    }

    pub fn sigma(&self) -> &[i64] {
        &self.sigma
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn norm_sq(&self) -> i64 {
        norm_sq(&self.sigma)
    }
}

impl std::fmt::Display for Changemaker {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.sigma.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// All changemakers of the given dimension and squared norm, in
/// lexicographic order.
///
/// With `allow_zero_start` unset (the realization searches), the first entry
/// is pinned to 1; the flag exists to exercise the raw predicate with
/// leading zeros.
pub fn enum_changemakers_with(dim: usize, norm: i64, allow_zero_start: bool) -> Vec<Changemaker> {
    assert!(dim >= 1 && norm >= 0);
    let mut out = Vec::new();
    if norm < dim as i64 && !allow_zero_start {
        return out; // dim positive squares already exceed the budget
    }
    // Nondecreasing DFS; prune with the completeness bound σ_k ≤ 1 + Σ_{i<k}σ_i
    // (equivalent to the subset-sum condition for nondecreasing vectors) and
    // the square-sum budget.
    fn rec(
        i: usize,
        dim: usize,
        norm: i64,
        last: i64,
        sum: i64,
        sq: i64,
        sigma: &mut Vec<i64>,
        out: &mut Vec<Changemaker>,
    ) {
        if i == dim {
            if sq == norm {
                debug_assert!(is_changemaker(sigma).unwrap());
                out.push(Changemaker {
                    sigma: sigma.clone(),
                });
            }
            return;
        }
        let remaining = norm - sq;
        let slots = (dim - i) as i64;
        let hi = crate::lattice::isqrt(remaining / slots).min(sum + 1);
        for v in last..=hi {
            sigma[i] = v;
            rec(i + 1, dim, norm, v, sum + v, sq + v * v, sigma, out);
        }
        sigma[i] = 0;
    }
    let mut sigma = vec![0i64; dim];
    let starts: &[i64] = if allow_zero_start { &[0, 1] } else { &[1] };
    for &s0 in starts {
        if s0 * s0 > norm {
            continue;
        }
        sigma[0] = s0;
        rec(1, dim, norm, s0, s0, s0 * s0, &mut sigma, &mut out);
    }
    out
}

/// [`enum_changemakers_with`] restricted to `σ_0 = 1`.
pub fn enum_changemakers(dim: usize, norm: i64) -> Vec<Changemaker> {
    enum_changemakers_with(dim, norm, false)
}

/// Classification of a standard basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisClass {
    Tight,
    JustRight,
    /// Carries the gappy index set: `i ∈ A` with `i < j−1` and `i+1 ∉ A`.
    Gappy(Vec<usize>),
}

/// The standard basis `v_1, …, v_{m−1}` of `(σ)⊥`, with per-vector tags.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    vectors: Vec<IntVec>,
    classes: Vec<BasisClass>,
}

impl StandardBasis {
    /// Vector `v_j` for `1 ≤ j ≤ m−1`.
    pub fn vector(&self, j: usize) -> &IntVec {
        &self.vectors[j - 1]
    }

    pub fn class(&self, j: usize) -> &BasisClass {
        &self.classes[j - 1]
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[IntVec] {
        &self.vectors
    }

    pub fn classes(&self) -> &[BasisClass] {
        &self.classes
    }

    pub fn tight_indices(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&j| matches!(self.class(j), BasisClass::Tight))
            .collect()
    }

    pub fn gappy_indices(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&j| matches!(self.class(j), BasisClass::Gappy(_)))
            .collect()
    }
}

/// Greedy largest-index-first subset of `{0..j-1}` with `Σ_{i∈A} σ_i = σ_j`;
/// realizes the `Σ 2^i`-maximal such subset for changemakers.
fn greedy_subset(sigma: &[i64], j: usize) -> Option<Vec<usize>> {
    let mut rem = sigma[j];
    let mut a = Vec::new();
    for i in (0..j).rev() {
        if sigma[i] <= rem {
            a.push(i);
            rem -= sigma[i];
        }
    }
    if rem == 0 {
        a.reverse();
        Some(a)
    } else {
        None
    }
}

/// Standard basis of `(σ)⊥` with tags. Requires `σ_0 = 1`.
///
/// `v_j = 2e_0 + e_1 + ⋯ + e_{j−1} − e_j` when `σ_j = 1 + σ_0 + ⋯ + σ_{j−1}`
/// (tight); otherwise `v_j = (Σ_{i∈A} e_i) − e_j` for the `Σ 2^i`-maximal
/// subset `A` with σ-sum `σ_j`.
pub fn standard_basis(cm: &Changemaker) -> StandardBasis {
    let sigma = cm.sigma();
    assert_eq!(sigma[0], 1, "standard basis needs σ_0 = 1");
    let m = sigma.len();
    let mut vectors = Vec::with_capacity(m - 1);
    let mut classes = Vec::with_capacity(m - 1);
    let mut prefix: i64 = sigma[0];
    for j in 1..m {
        let mut v = vec![0i64; m];
        v[j] = -1;
        if sigma[j] == 1 + prefix {
            v[0] = 2;
            for e in v.iter_mut().take(j).skip(1) {
                *e = 1;
            }
            classes.push(BasisClass::Tight);
        } else {
            let a = greedy_subset(sigma, j)
                .unwrap_or_else(|| panic!("greedy subset must exist for changemaker {cm}"));
            for &i in &a {
                v[i] = 1;
            }
            let gappy: Vec<usize> = a
                .iter()
                .copied()
                .filter(|&i| i + 1 < j && !a.contains(&(i + 1)))
                .collect();
            classes.push(if gappy.is_empty() {
                BasisClass::JustRight
            } else {
                BasisClass::Gappy(gappy)
            });
        }
        debug_assert_eq!(dot(&v, sigma), 0);
        debug_assert!(v[j - 1] != 0, "j−1 must lie in supp v_j");
        vectors.push(v);
        prefix += sigma[j];
    }
    StandardBasis { vectors, classes }
}

/// Gram matrix `⟨v_i, v_j⟩` of the standard basis.
pub fn complement_gram(cm: &Changemaker) -> GramMatrix {
    GramMatrix::from_basis(standard_basis(cm).vectors())
}

/// One standard-basis vector's interval data: the set `A_j` and the sign
/// `ε_j` (+1 when `v_j = [A_j]`, −1 when `v_j = τ([A_j])`).
#[derive(Clone, Debug)]
pub struct IntervalAssignment {
    pub intervals: Vec<Interval>,
    pub eps: Vec<i8>,
    /// Index `f` with `v_f = x_**` under the normalized embedding.
    pub f: usize,
}

impl IntervalAssignment {
    pub fn interval(&self, j: usize) -> &Interval {
        &self.intervals[j - 1]
    }

    pub fn eps(&self, j: usize) -> i8 {
        self.eps[j - 1]
    }
}

/// Interval assignment of the standard basis through a normalized embedding
/// (`x_* ↦ v_1`, `x_** ↦ v_f`).
///
/// Each `v_j` is expressed in vertex coordinates, then the first of
/// `v_j, −v_j, τ(v_j), −τ(v_j)` that is an interval is taken, with the
/// reflection `τ = τ_0` (or `τ_1` when `a_0 = 2`). The pair `j ∈ {1, f}` is
/// resolved by the convention `ε_1 = −ε_f = ε_{f−1}`, which makes
/// `A_1 = A_f`.
pub fn interval_assignment(cm: &Changemaker, emb: &Embedding) -> Result<IntervalAssignment> {
    let lat = emb.lattice()?;
    let sb = standard_basis(cm);
    let rank = lat.rank();
    if emb.vectors().len() != rank {
        return Err(Error::InvalidInput(
            "embedding rank does not match lattice rank".into(),
        ));
    }
    let t_index = if lat.norms()[0] >= 3 { 0 } else { 1 };
    if t_index > lat.tau_limit() {
        return Err(Error::InvalidInput(
            "a_0 = 2 requires a_1 ≥ 3 for the reflection convention".into(),
        ));
    }

    let mut coords_all = Vec::with_capacity(sb.len());
    for j in 1..=sb.len() {
        let coords = solve_in_basis(emb.vectors(), sb.vector(j))
            .ok_or_else(|| Error::Internal(format!("v_{j} not integral over the embedding")))?;
        coords_all.push(coords);
    }

    // Locate f: the index with v_f = x_** (normalized embeddings only).
    let mut unit_star2 = vec![0i64; rank];
    unit_star2[1] = 1;
    let mut unit_star = vec![0i64; rank];
    unit_star[0] = 1;
    if coords_all[0] != unit_star {
        return Err(Error::InvalidInput(
            "embedding is not normalized: v_1 must map to x_*".into(),
        ));
    }
    let f = coords_all
        .iter()
        .position(|c| *c == unit_star2)
        .map(|i| i + 1)
        .ok_or_else(|| {
            Error::InvalidInput("embedding is not normalized: no v_f maps to x_**".into())
        })?;

    let mut intervals: Vec<Option<Interval>> = vec![None; sb.len()];
    let mut eps = vec![0i8; sb.len()];
    for j in 1..=sb.len() {
        if j == 1 || j == f {
            continue;
        }
        let v = &coords_all[j - 1];
        let tv = tau(t_index, v, &lat)?;
        let candidates = [
            (v.clone(), 1i8),
            (neg(v), 1),
            (tv.clone(), -1),
            (neg(&tv), -1),
        ];
        let hit = candidates
            .iter()
            .find_map(|(cand, e)| is_interval(cand).map(|iv| (iv, *e)));
        match hit {
            Some((iv, e)) => {
                intervals[j - 1] = Some(iv);
                eps[j - 1] = e;
            }
            None => return Err(Error::NoInterval(j)),
        }
    }
    // Convention for the star pair: ε_1 = ε_{f−1}, ε_f = −ε_1, A_1 = A_f.
    let e1 = if f >= 3 && eps[f - 2] != 0 {
        eps[f - 2]
    } else {
        1 // under-determined low-rank case: fix ε_1 = +1
    };
    let star_set = if e1 == 1 {
        StarEnd::Star
    } else {
        StarEnd::StarStar
    };
    let star_interval = Interval {
        star: star_set,
        spine: None,
    };
    intervals[0] = Some(star_interval);
    eps[0] = e1;
    intervals[f - 1] = Some(star_interval);
    eps[f - 1] = -e1;

    Ok(IntervalAssignment {
        intervals: intervals.into_iter().map(Option::unwrap).collect(),
        eps,
        f,
    })
}

/// Intersection graph on the standard basis: vertices `v_1..v_{m−1}`, edges
/// where the assigned intervals abut, plus the conventional edge `v_1 ∼ v_f`.
#[derive(Clone, Debug)]
pub struct IntersectionGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl IntersectionGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adjacency for 1-based basis indices.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i - 1][j - 1]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adj[i][j] {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// A claw `(center; x, y, z)` if one exists (1-based indices).
    pub fn find_claw(&self) -> Option<[usize; 4]> {
        for c in 0..self.n {
            let nbrs: Vec<usize> = (0..self.n).filter(|&v| self.adj[c][v]).collect();
            if nbrs.len() < 3 {
                continue;
            }
            for a in 0..nbrs.len() {
                for b in a + 1..nbrs.len() {
                    if self.adj[nbrs[a]][nbrs[b]] {
                        continue;
                    }
                    for d in b + 1..nbrs.len() {
                        if !self.adj[nbrs[a]][nbrs[d]] && !self.adj[nbrs[b]][nbrs[d]] {
                            return Some([c + 1, nbrs[a] + 1, nbrs[b] + 1, nbrs[d] + 1]);
                        }
                    }
                }
            }
        }
        None
    }

    /// All simple cycles as 1-based vertex lists, each reported once.
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let mut cycles = Vec::new();
        let mut path = Vec::new();
        for s in 0..self.n {
            path.push(s);
            self.cycle_dfs(s, s, &mut path, &mut cycles);
            path.pop();
        }
        cycles
    }

    fn cycle_dfs(&self, s: usize, at: usize, path: &mut Vec<usize>, cycles: &mut Vec<Vec<usize>>) {
        for next in 0..self.n {
            if !self.adj[at][next] {
                continue;
            }
            if next == s && path.len() >= 3 {
                // Canonical orientation: second vertex below the last.
                if path[1] < path[path.len() - 1] {
                    cycles.push(path.iter().map(|&v| v + 1).collect());
                }
                continue;
            }
            if next <= s || path.contains(&next) {
                continue;
            }
            path.push(next);
            self.cycle_dfs(s, next, path, cycles);
            path.pop();
        }
    }
}

/// Build the intersection graph from an assignment.
pub fn intersection_graph(
    assign: &IntervalAssignment,
    lat: &DTypeLattice,
) -> IntersectionGraph {
    let n = assign.intervals.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let ab = assign.intervals[i].abuts(&assign.intervals[j], lat);
            adj[i][j] = ab;
            adj[j][i] = ab;
        }
    }
    // Conventional edge for the identical star intervals A_1 = A_f.
    if assign.f >= 2 {
        adj[0][assign.f - 1] = true;
        adj[assign.f - 1][0] = true;
    }
    IntersectionGraph { n, adj }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn cm(sigma: &[i64]) -> Changemaker {
        Changemaker::new(sigma.to_vec()).unwrap()
    }

    /// Oracle: direct subset enumeration.
    fn brute_is_changemaker(sigma: &[i64]) -> bool {
        let total: i64 = sigma.iter().sum();
        let mut reachable = vec![false; (total + 1) as usize];
        for mask in 0u32..1 << sigma.len() {
            let s: i64 = sigma
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v)
                .sum();
            reachable[s as usize] = true;
        }
        reachable.iter().all(|&r| r)
    }

    #[test]
    fn predicate_examples() {
        assert!(is_changemaker(&[1, 1, 2]).unwrap());
        assert!(!is_changemaker(&[1, 3]).unwrap());
        assert!(is_changemaker(&[1, 1, 2, 4, 7, 7]).unwrap());
        assert!(is_changemaker(&[0, 1, 1, 2]).unwrap());
        assert!(is_changemaker(&[2, 1]).is_err()); // non-monotone
        assert!(is_changemaker(&[-1, 1]).is_err());
    }

    #[test]
    fn predicate_matches_brute_force() {
        // All nondecreasing vectors of length ≤ 5 with entries ≤ 5.
        fn gen(prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if prefix.len() == 5 {
                return;
            }
            let lo = *prefix.last().unwrap_or(&0);
            for v in lo..=5 {
                prefix.push(v);
                out.push(prefix.clone());
                gen(prefix, out);
                prefix.pop();
            }
        }
        let mut all = Vec::new();
        gen(&mut Vec::new(), &mut all);
        for sigma in all {
            assert_eq!(
                is_changemaker(&sigma).unwrap(),
                brute_is_changemaker(&sigma),
                "{sigma:?}"
            );
        }
    }

    #[test]
    fn enumeration_examples() {
        let got = enum_changemakers(5, 8);
        assert_eq!(got, vec![cm(&[1, 1, 1, 1, 2])]);

        let got = enum_changemakers(6, 120);
        for want in [
            &[1, 1, 2, 5, 5, 8][..],
            &[1, 1, 3, 3, 6, 8],
            &[1, 1, 2, 4, 7, 7],
        ] {
            assert!(
                got.iter().any(|c| c.sigma() == want),
                "missing {want:?} in {got:?}"
            );
        }

        assert!(enum_changemakers(7, 4).is_empty());
    }

    #[test]
    fn enumeration_is_sound_and_complete() {
        // Against a brute-force filter over all nondecreasing tuples.
        for (dim, norm) in [(4usize, 12i64), (5, 16), (5, 20), (6, 24)] {
            let got = enum_changemakers(dim, norm);
            let mut want = Vec::new();
            fn gen(
                dim: usize,
                norm: i64,
                prefix: &mut Vec<i64>,
                out: &mut Vec<Vec<i64>>,
            ) {
                if prefix.len() == dim {
                    let sq: i64 = prefix.iter().map(|v| v * v).sum();
                    if sq == norm {
                        out.push(prefix.clone());
                    }
                    return;
                }
                let lo = *prefix.last().unwrap_or(&1);
                for v in lo..=crate::lattice::isqrt(norm) {
                    prefix.push(v);
                    gen(dim, norm, prefix, out);
                    prefix.pop();
                }
            }
            gen(dim, norm, &mut vec![1], &mut want);
            let want: Vec<Vec<i64>> = want
                .into_iter()
                .filter(|s| brute_is_changemaker(s))
                .collect();
            let got_raw: Vec<Vec<i64>> = got.iter().map(|c| c.sigma().to_vec()).collect();
            assert_eq!(got_raw, want, "dim={dim} norm={norm}");
        }
    }

    /// Oracle: subset of {0..j-1} with σ-sum σ_j maximizing Σ 2^i.
    fn brute_max_subset(sigma: &[i64], j: usize) -> Option<Vec<usize>> {
        let mut best: Option<(u64, Vec<usize>)> = None;
        for mask in 0u32..1 << j {
            let s: i64 = (0..j).filter(|i| mask >> i & 1 == 1).map(|i| sigma[i]).sum();
            if s == sigma[j] {
                let weight: u64 = (0..j).filter(|i| mask >> i & 1 == 1).map(|i| 1 << i).sum();
                let set: Vec<usize> = (0..j).filter(|i| mask >> i & 1 == 1).collect();
                if best.as_ref().is_none_or(|(w, _)| weight > *w) {
                    best = Some((weight, set));
                }
            }
        }
        best.map(|(_, s)| s)
    }

    #[test]
    fn greedy_subset_is_weight_maximal() {
        for norm in [8i64, 12, 16, 20, 28, 40] {
            for dim in 4..=7usize {
                for c in enum_changemakers(dim, norm) {
                    let sigma = c.sigma();
                    let prefix: Vec<i64> = (0..dim)
                        .map(|j| sigma[..j].iter().sum::<i64>())
                        .collect();
                    for j in 1..dim {
                        if sigma[j] == 1 + prefix[j] {
                            continue; // tight: no subset exists
                        }
                        assert_eq!(
                            greedy_subset(sigma, j),
                            brute_max_subset(sigma, j),
                            "sigma={sigma:?} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn standard_basis_examples() {
        let sb = standard_basis(&cm(&[1, 1, 1, 1, 2]));
        assert_eq!(sb.vector(1), &vec![1, -1, 0, 0, 0]);
        assert_eq!(sb.vector(2), &vec![0, 1, -1, 0, 0]);
        assert_eq!(sb.vector(3), &vec![0, 0, 1, -1, 0]);
        assert_eq!(sb.vector(4), &vec![0, 0, 1, 1, -1]);
        assert!(sb
            .classes()
            .iter()
            .all(|c| matches!(c, BasisClass::JustRight)));

        // (1,1,2,2,3,3,10): exactly one gappy vector (v_4, gappy index 1),
        // no tight vector.
        let sb = standard_basis(&cm(&[1, 1, 2, 2, 3, 3, 10]));
        assert_eq!(sb.tight_indices(), Vec::<usize>::new());
        assert_eq!(sb.gappy_indices(), vec![4]);
        assert_eq!(sb.class(4), &BasisClass::Gappy(vec![1]));
        assert_eq!(sb.vector(4), &vec![0, 1, 0, 1, -1, 0, 0]);

        // (1,1,2,2,2,5,5): v_5 takes A = {1,3,4}, gappy at 1.
        let sb = standard_basis(&cm(&[1, 1, 2, 2, 2, 5, 5]));
        assert_eq!(sb.vector(5), &vec![0, 1, 0, 1, 1, -1, 0]);
        assert_eq!(sb.class(5), &BasisClass::Gappy(vec![1]));

        // A tight example: σ = (1,1,3,...) has v_2 = 2e_0 + e_1 − e_2.
        let sb = standard_basis(&cm(&[1, 1, 3, 3, 6]));
        assert_eq!(sb.vector(2), &vec![2, 1, -1, 0, 0]);
        assert_eq!(sb.class(2), &BasisClass::Tight);
        assert_eq!(sb.tight_indices(), vec![2]);
    }

    #[test]
    fn complement_gram_examples() {
        let g = complement_gram(&cm(&[1, 1, 1, 1, 2]));
        assert_eq!(
            (0..4).map(|i| g.entry(i, i)).collect::<Vec<_>>(),
            vec![2, 2, 2, 3]
        );
        assert_eq!(g.det(), BigInt::from(8));
        assert!(g.is_positive_definite());

        let g = complement_gram(&cm(&[1, 1]));
        assert_eq!(g.rank(), 1);
        assert_eq!(g.entry(0, 0), 2);

        let g = complement_gram(&cm(&[1, 1, 2, 4, 7, 7]));
        assert_eq!(g.det(), BigInt::from(120));
    }

    #[test]
    fn complement_gram_det_is_norm() {
        for norm in [8i64, 12, 20, 28] {
            for dim in 4..=6usize {
                for c in enum_changemakers(dim, norm) {
                    assert_eq!(complement_gram(&c).det(), BigInt::from(c.norm_sq()), "{c}");
                }
            }
        }
    }
}
