//! The realization decision: does `Δ(p,q)` embed in `Z^m` as the orthogonal
//! complement of a changemaker vector, and which norm sequence does a given
//! changemaker complement carry.
//!
//! The search works in ambient `Z^m` coordinates so that orthogonality to σ
//! is a linear filter, picking vertex images slot by slot:
//! `X_*, X_**, X_0, …, X_n` with the D-type pairing targets. Candidate order
//! is ascending norm then lexicographic, which makes every answer
//! deterministic.

use crate::changemaker::{enum_changemakers, is_changemaker, Changemaker};
use crate::dtype::{dtype_from_pq, DTypeLattice, PrismParams};
use crate::error::{Error, Result};
use crate::lattice::{dot, enumerate_orthogonal_short, norm_sq, GramMatrix, IntVec};
use num_bigint::BigInt;

/// A vertex basis realized inside `(σ)⊥ ⊂ Z^m`, ordered
/// `(X_*, X_**, X_0, …, X_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    vectors: Vec<IntVec>,
}

impl Embedding {
    pub fn vectors(&self) -> &[IntVec] {
        &self.vectors
    }

    /// Spine norms `(|X_0|², …, |X_n|²)`.
    pub fn norms(&self) -> Vec<i64> {
        self.vectors[2..].iter().map(|v| norm_sq(v)).collect()
    }

    pub fn gram(&self) -> GramMatrix {
        GramMatrix::from_basis(&self.vectors)
    }

    pub fn lattice(&self) -> Result<DTypeLattice> {
        DTypeLattice::from_norms(&self.norms())
    }
}

/// How the embedding search breaks symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Candidate `X_*` lexicographically positive, `X_* <lex X_**`; complete.
    Full,
    /// Additionally pins `X_* = e_0 − e_1`; complete for changemaker
    /// complements (an isomorphism may always be chosen sending `x_*` to
    /// `v_1`), and faster.
    PinFirst,
    /// Pins `X_* = e_0 − e_1`, restricts `X_**` to consecutive differences
    /// `e_{f−1} − e_f`, and pins `X_0 = e_1 − e_2` when `a_0 = 2`; produces
    /// the normalized embeddings the interval conventions expect.
    Normalized,
}

fn lex_positive(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
}

fn is_consecutive_diff(v: &[i64]) -> bool {
    let Some(i) = v.iter().position(|&c| c != 0) else {
        return false;
    };
    v[i] == 1 && i + 1 < v.len() && v[i + 1] == -1 && v[i + 2..].iter().all(|&c| c == 0)
}

/// Candidate pools bucketed by exact norm, preserving lexicographic order
/// within a bucket.
struct Pools {
    by_norm: std::collections::BTreeMap<i64, Vec<IntVec>>,
}

impl Pools {
    fn build(sigma: &[i64], bound: i64) -> Pools {
        let mut by_norm: std::collections::BTreeMap<i64, Vec<IntVec>> = Default::default();
        for w in enumerate_orthogonal_short(sigma, bound) {
            by_norm.entry(norm_sq(&w)).or_default().push(w);
        }
        Pools { by_norm }
    }

    fn of_norm(&self, n: i64) -> &[IntVec] {
        self.by_norm.get(&n).map_or(&[], Vec::as_slice)
    }

    /// All candidates with norm ≤ bound, ascending norm then lex.
    fn up_to(&self, bound: i64) -> impl Iterator<Item = &IntVec> {
        self.by_norm
            .range(..=bound)
            .flat_map(|(_, v)| v.iter())
    }
}

fn pair_ok(cand: &[i64], chosen: &[IntVec], slot: usize) -> bool {
    // Pairing targets: X_0 pairs −1 with both stars; X_{i+1} pairs −1 with
    // X_i and 0 with everything earlier.
    for (k, prev) in chosen.iter().enumerate() {
        let want = match (slot, k) {
            (1, 0) => 0,
            (2, 0) | (2, 1) => -1,
            (s, k) if s >= 3 && k == s - 1 => -1,
            _ => 0,
        };
        if dot(cand, prev) != want {
            return false;
        }
    }
    true
}

fn star_candidate_ok(cand: &[i64], chosen: &[IntVec], slot: usize, mode: SearchMode) -> bool {
    match slot {
        0 => match mode {
            SearchMode::Full => lex_positive(cand),
            SearchMode::PinFirst | SearchMode::Normalized => {
                cand[0] == 1 && cand[1] == -1 && cand[2..].iter().all(|&c| c == 0)
            }
        },
        1 => {
            let order_ok = match mode {
                // The swap automorphism makes one lex order canonical.
                SearchMode::Full => lex_positive(cand) && chosen[0].as_slice() < cand,
                SearchMode::PinFirst => lex_positive(cand),
                SearchMode::Normalized => is_consecutive_diff(cand),
            };
            order_ok && pair_ok(cand, chosen, 1)
        }
        _ => unreachable!(),
    }
}

fn search_fixed_norms(
    norms: &[i64],
    pools: &Pools,
    chosen: &mut Vec<IntVec>,
    mode: SearchMode,
) -> bool {
    let slot = chosen.len();
    if slot == norms.len() + 2 {
        return true;
    }
    if slot < 2 {
        for cand in pools.of_norm(2) {
            if !star_candidate_ok(cand, chosen, slot, mode) {
                continue;
            }
            chosen.push(cand.clone());
            if search_fixed_norms(norms, pools, chosen, mode) {
                return true;
            }
            chosen.pop();
        }
        return false;
    }
    let target = norms[slot - 2];
    // With a_0 = 2 the normalization lemma lets us pin x_0 = e_1 − e_2.
    let pinned_x0 = slot == 2 && mode == SearchMode::Normalized && target == 2;
    for cand in pools.of_norm(target) {
        if pinned_x0 {
            let want = cand.len() >= 3
                && cand[0] == 0
                && cand[1] == 1
                && cand[2] == -1
                && cand[3..].iter().all(|&c| c == 0);
            if !want {
                continue;
            }
        }
        if !pair_ok(cand, chosen, slot) {
            continue;
        }
        chosen.push(cand.clone());
        if search_fixed_norms(norms, pools, chosen, mode) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Embed the D-type lattice with the given vertex norms as `(σ)⊥`, or report
/// that no embedding exists.
pub fn embed_dtype_mode(
    cm: &Changemaker,
    norms: &[i64],
    mode: SearchMode,
) -> Result<Option<Embedding>> {
    if norms.iter().any(|&a| a < 2) {
        return Err(Error::InvalidInput(format!(
            "vertex norms must be >= 2, got {norms:?}"
        )));
    }
    let m = cm.dim();
    if norms.len() + 2 != m - 1 {
        return Ok(None); // rank mismatch: complement has rank m−1
    }
    let lat = DTypeLattice::from_norms(norms)?;
    embed_with_lattice(cm, &lat, mode)
}

/// [`embed_dtype_mode`] with a prebuilt target lattice (scan hot path).
pub fn embed_with_lattice(
    cm: &Changemaker,
    lat: &DTypeLattice,
    mode: SearchMode,
) -> Result<Option<Embedding>> {
    let m = cm.dim();
    if lat.rank() != m - 1 {
        return Ok(None);
    }
    // Isomorphic lattices share the discriminant: det Δ = det (σ)⊥ = |σ|².
    if *lat.det() != BigInt::from(cm.norm_sq()) {
        return Ok(None);
    }
    let max_norm = lat.norms().iter().copied().max().unwrap_or(2).max(2);
    let pools = Pools::build(cm.sigma(), max_norm);
    let mut chosen = Vec::with_capacity(lat.rank());
    if search_fixed_norms(lat.norms(), &pools, &mut chosen, mode) {
        Ok(Some(Embedding { vectors: chosen }))
    } else {
        Ok(None)
    }
}

/// Default-mode embedding decision.
pub fn embed_dtype(cm: &Changemaker, norms: &[i64]) -> Result<Option<Embedding>> {
    embed_dtype_mode(cm, norms, SearchMode::Full)
}

fn search_free_norms(
    slots: usize,
    bound: i64,
    pools: &Pools,
    chosen: &mut Vec<IntVec>,
    target_det: &BigInt,
) -> bool {
    let slot = chosen.len();
    if slot == slots {
        let gram = GramMatrix::from_basis(chosen);
        return gram.det() == *target_det;
    }
    if slot < 2 {
        for cand in pools.of_norm(2) {
            if !star_candidate_ok(cand, chosen, slot, SearchMode::Full) {
                continue;
            }
            chosen.push(cand.clone());
            if search_free_norms(slots, bound, pools, chosen, target_det) {
                return true;
            }
            chosen.pop();
        }
        return false;
    }
    for cand in pools.up_to(bound) {
        if !pair_ok(cand, chosen, slot) {
            continue;
        }
        chosen.push(cand.clone());
        if search_free_norms(slots, bound, pools, chosen, target_det) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Search for a D-type vertex basis of `(σ)⊥` with free norms.
///
/// Picks `X_*, X_**` of norm 2 pairing 0, then chains spine vertices with
/// the D-type pairing targets; succeeds when the full rank `m − 1` is
/// reached and the spanned sublattice has determinant `|σ|²` (which forces
/// equality with the whole complement). The candidate norm bound starts at
/// 16 and doubles up to the ceiling `|σ|²`; exhausting that ceiling is a
/// definitive negative.
pub fn find_vertex_basis(cm: &Changemaker) -> Option<(Vec<i64>, Embedding)> {
    let m = cm.dim();
    if m < 5 {
        return None; // complement rank ≤ 3 cannot be D-type (spine needs n ≥ 1)
    }
    let slots = m - 1;
    let target_det = BigInt::from(cm.norm_sq());
    let ceiling = cm.norm_sq();
    let mut bound = 16i64.min(ceiling);
    loop {
        let pools = Pools::build(cm.sigma(), bound);
        let mut chosen = Vec::with_capacity(slots);
        if search_free_norms(slots, bound, &pools, &mut chosen, &target_det) {
            let emb = Embedding { vectors: chosen };
            return Some((emb.norms(), emb));
        }
        if bound >= ceiling {
            return None;
        }
        bound = (bound * 2).min(ceiling);
    }
}

/// All changemaker vectors σ with `Δ(p,q) ≅ (σ)⊥`, in lexicographic order.
///
/// Fast rejects: even `p` is never realizable by knot surgery; an all-positive
/// σ needs `m ≤ |σ|² = 4|q|`.
pub fn realizable(pp: &PrismParams) -> Result<Vec<Changemaker>> {
    if pp.q() >= 0 {
        return Err(Error::InvalidInput(
            "realization decision is for q < 0".into(),
        ));
    }
    if pp.p() % 2 == 0 {
        return Ok(Vec::new());
    }
    let lat = dtype_from_pq(pp)?;
    let fourq = 4 * pp.q().abs();
    if *lat.det() != BigInt::from(fourq) {
        return Err(Error::Internal(format!(
            "det Δ{pp} = {} != 4|q| = {fourq}",
            lat.det()
        )));
    }
    let m = lat.rank() + 1;
    if m as i64 > fourq {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for cm in enum_changemakers(m, fourq) {
        if embed_with_lattice(&cm, &lat, SearchMode::Full)?.is_some() {
            out.push(cm);
        }
    }
    Ok(out)
}

/// Sanity wrapper used by tests: confirm σ is a changemaker before embedding.
pub fn check_changemaker(sigma: &[i64]) -> Result<Changemaker> {
    if !is_changemaker(sigma)? {
        return Err(Error::InvalidInput(format!(
            "{sigma:?} fails the changemaker condition"
        )));
    }
    Changemaker::new(sigma.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::changemaker::{interval_assignment, intersection_graph};
    use crate::dtype::{is_interval, StarEnd};

    fn cm(sigma: &[i64]) -> Changemaker {
        Changemaker::new(sigma.to_vec()).unwrap()
    }

    fn pp(p: i64, q: i64) -> PrismParams {
        PrismParams::new(p, q).unwrap()
    }

    /// The returned vectors must honor every D-type pairing target.
    fn assert_valid(emb: &Embedding, cm: &Changemaker, norms: &[i64]) {
        let vs = emb.vectors();
        assert_eq!(vs.len(), norms.len() + 2);
        for v in vs {
            assert_eq!(dot(v, cm.sigma()), 0, "not orthogonal to sigma");
        }
        assert_eq!(norm_sq(&vs[0]), 2);
        assert_eq!(norm_sq(&vs[1]), 2);
        assert_eq!(dot(&vs[0], &vs[1]), 0);
        for (i, &a) in norms.iter().enumerate() {
            let x = &vs[2 + i];
            assert_eq!(norm_sq(x), a);
            if i == 0 {
                assert_eq!(dot(x, &vs[0]), -1);
                assert_eq!(dot(x, &vs[1]), -1);
            } else {
                assert_eq!(dot(x, &vs[2 + i - 1]), -1);
                for k in 0..2 + i - 1 {
                    assert_eq!(dot(x, &vs[k]), 0, "slot {} vs {}", 2 + i, k);
                }
            }
        }
        assert_eq!(emb.gram().det(), num_bigint::BigInt::from(cm.norm_sq()));
    }

    #[test]
    fn embed_examples() {
        let c = cm(&[1, 1, 1, 1, 2]);
        let emb = embed_dtype(&c, &[2, 3]).unwrap().expect("should embed");
        assert_valid(&emb, &c, &[2, 3]);
        // Reversed norm order fails: that lattice has a different discriminant
        // and the backtracking exhausts.
        assert!(embed_dtype(&c, &[3, 2]).unwrap().is_none());

        let c = cm(&[1, 1, 2, 4, 7, 7]);
        let emb = embed_dtype(&c, &[4, 4, 3]).unwrap().expect("should embed");
        assert_valid(&emb, &c, &[4, 4, 3]);
    }

    #[test]
    fn embed_modes_agree() {
        for (sigma, norms) in [
            (&[1i64, 1, 1, 1, 2][..], &[2i64, 3][..]),
            (&[1, 1, 2, 4, 7, 7], &[4, 4, 3]),
            (&[1, 1, 3, 3, 6], &[6, 3]),
            (&[1, 1, 2, 5, 5], &[6, 3]),
            (&[1, 1, 2, 2, 3, 3], &[3, 2, 3]),
            (&[1, 1, 1, 1, 2], &[3, 2]),
            (&[1, 1, 2, 2, 5, 5], &[5, 2, 2, 2]),
        ] {
            let c = cm(sigma);
            let full = embed_dtype_mode(&c, norms, SearchMode::Full).unwrap();
            let pinned = embed_dtype_mode(&c, norms, SearchMode::PinFirst).unwrap();
            let normalized = embed_dtype_mode(&c, norms, SearchMode::Normalized).unwrap();
            assert_eq!(full.is_some(), pinned.is_some(), "{sigma:?} {norms:?}");
            assert_eq!(full.is_some(), normalized.is_some(), "{sigma:?} {norms:?}");
            if let Some(e) = &full {
                assert_valid(e, &c, norms);
            }
            if let Some(e) = &normalized {
                assert_valid(e, &c, norms);
                // Normalized: X_* = e_0 − e_1 and X_** a consecutive difference.
                assert_eq!(e.vectors()[0][0], 1);
                assert_eq!(e.vectors()[0][1], -1);
            }
        }
    }

    #[test]
    fn find_vertex_basis_examples() {
        let (norms, emb) = find_vertex_basis(&cm(&[1, 1, 1, 1, 2])).expect("embeds");
        assert_eq!(norms, vec![2, 3]);
        assert_valid(&emb, &cm(&[1, 1, 1, 1, 2]), &norms);

        let (norms, _) = find_vertex_basis(&cm(&[1, 1, 3, 3, 6])).expect("embeds");
        assert_eq!(norms, vec![6, 3]);

        // Rank-2 complement cannot be D-type.
        assert!(find_vertex_basis(&cm(&[1, 2, 2])).is_none());
    }

    #[test]
    fn found_norms_recover_consistent_pq() {
        use crate::dtype::{dtype_from_pq, pq_from_norms};
        for sigma in [
            &[1i64, 1, 1, 1, 2][..],
            &[1, 1, 2, 5, 5],
            &[1, 1, 3, 3, 6],
            &[1, 1, 2, 4, 7, 7],
            &[1, 1, 2, 2, 3, 3],
        ] {
            let (norms, _) = find_vertex_basis(&cm(sigma)).expect("embeds");
            let params = pq_from_norms(&norms).unwrap();
            assert_eq!(dtype_from_pq(&params).unwrap().norms(), &norms[..]);
        }
    }

    #[test]
    fn realizable_examples() {
        let got = realizable(&pp(3, -2)).unwrap();
        assert_eq!(got, vec![cm(&[1, 1, 1, 1, 2])]);

        let got = realizable(&pp(11, -30)).unwrap();
        assert_eq!(got.len(), 3);
        for want in [
            &[1i64, 1, 2, 4, 7, 7][..],
            &[1, 1, 2, 5, 5, 8],
            &[1, 1, 3, 3, 6, 8],
        ] {
            assert!(got.iter().any(|c| c.sigma() == want));
        }

        assert!(realizable(&pp(5, -2)).unwrap().is_empty());
        assert!(realizable(&pp(4, -3)).unwrap().is_empty()); // p even
        assert!(realizable(&pp(3, 2)).is_err()); // q > 0 rejected
    }

    #[test]
    fn interval_assignment_small() {
        let c = cm(&[1, 1, 1, 1, 2]);
        let emb = embed_dtype_mode(&c, &[2, 3], SearchMode::Normalized)
            .unwrap()
            .expect("embeds");
        let assign = interval_assignment(&c, &emb).unwrap();
        assert_eq!(assign.f, 3);
        // v_1 ↦ {*}; v_2 is x_0; the star pair shares its interval.
        assert_eq!(assign.interval(1).star, StarEnd::Star);
        assert_eq!(assign.interval(1).spine, None);
        assert_eq!(assign.interval(3), assign.interval(1));
        assert_eq!(assign.eps(1), 1);
        assert_eq!(assign.eps(3), -1);
        assert_eq!(assign.interval(2).spine, Some((0, 0)));
        // v_4 lands on the spine vertex x_1 (possibly through τ).
        assert_eq!(assign.interval(4).spine, Some((1, 1)));

        let lat = emb.lattice().unwrap();
        let graph = intersection_graph(&assign, &lat);
        let mut edges = graph.edges();
        edges.sort();
        assert_eq!(edges, vec![(1, 2), (1, 3), (2, 3), (2, 4)]);
        assert!(graph.find_claw().is_none());
        // The only simple cycle is the star triangle.
        let cycles = graph.simple_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 3);
    }

    #[test]
    fn interval_assignment_with_tight_vector() {
        // σ = (1,1,2,5,5): v_3 is tight and v_{f−1} = v_3 (f = 4); the
        // assignment must still exist.
        let c = cm(&[1, 1, 2, 5, 5]);
        let (norms, _) = find_vertex_basis(&c).expect("embeds");
        let emb = embed_dtype_mode(&c, &norms, SearchMode::Normalized)
            .unwrap()
            .expect("normalized embedding");
        let assign = interval_assignment(&c, &emb).unwrap();
        assert_eq!(assign.f, 4);
        for j in 1..=c.dim() - 1 {
            assert!(is_interval(&assign.interval(j).vector(norms.len())).is_some(), "j={j}");
        }
    }
}
