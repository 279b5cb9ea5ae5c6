//! Closed-form membership tests for the realizable families (negative and
//! positive orientation) and the parametric changemaker rows that generate
//! them.
//!
//! Membership is exact integer arithmetic: a family instance is reported
//! only when its defining identity, congruence, and range conditions all
//! hold. The changemaker rows pair a generator σ(s,t) with the vertex-norm
//! pattern and the `(p,q)` closed forms its embedding must produce.

use crate::changemaker::Changemaker;
use crate::dtype::PrismParams;
use crate::error::{Error, Result};
use serde::Serialize;

/// Family labels for realizable prism manifolds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyTag {
    F1A,
    F1B,
    F2,
    F3A,
    F3B,
    F4,
    F5,
    Sporadic,
}

impl FamilyTag {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyTag::F1A => "1A",
            FamilyTag::F1B => "1B",
            FamilyTag::F2 => "2",
            FamilyTag::F3A => "3A",
            FamilyTag::F3B => "3B",
            FamilyTag::F4 => "4",
            FamilyTag::F5 => "5",
            FamilyTag::Sporadic => "Spor",
        }
    }

    pub fn parse(s: &str) -> Option<FamilyTag> {
        Some(match s.to_ascii_uppercase().as_str() {
            "1A" => FamilyTag::F1A,
            "1B" => FamilyTag::F1B,
            "2" => FamilyTag::F2,
            "3A" => FamilyTag::F3A,
            "3B" => FamilyTag::F3B,
            "4" => FamilyTag::F4,
            "5" => FamilyTag::F5,
            "SPOR" | "SPORADIC" => FamilyTag::Sporadic,
            _ => return None,
        })
    }
}

impl std::fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One family membership witness: the tag and (where the family is
/// parametrized by it) the odd parameter `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FamilyInstance {
    pub tag: FamilyTag,
    pub r: Option<i64>,
    pub p: i64,
}

pub const PNEG_SPORADIC: [(i64, i64); 4] = [(11, -30), (17, -31), (13, -47), (23, -64)];
pub const PPOS_SPORADIC: [(i64, i64); 3] = [(11, 19), (11, 30), (13, 34)];

fn i128mul(a: i64, b: i64) -> i128 {
    a as i128 * b as i128
}

/// All families containing `P(p,q)` with `q < 0`, by the exact closed-form
/// tests. `r` is searched over odd `|r| ≤ 4|q|`, a conservative bound the
/// defining identities cannot escape.
pub fn pneg_membership(pp: &PrismParams) -> Result<Vec<FamilyInstance>> {
    let (p, q) = (pp.p(), pp.q());
    if q >= 0 {
        return Err(Error::InvalidInput("membership tables need q < 0".into()));
    }
    if p % 2 == 0 {
        return Err(Error::InvalidInput("realizable p is always odd".into()));
    }
    let nq = -q;
    let mut out = Vec::new();

    if p >= 7 && 2 * nq == p * p - 3 * p + 4 {
        out.push(FamilyInstance {
            tag: FamilyTag::F1A,
            r: None,
            p,
        });
    }
    if p > 22 && (p % 22 == 17 || p % 22 == 19) && 22 * nq == p * p - 3 * p + 4 {
        out.push(FamilyInstance {
            tag: FamilyTag::F1B,
            r: None,
            p,
        });
    }

    let rmax = 4 * nq;
    let mut r = -(rmax | 1); // odd lower end of the search window
    while r <= rmax {
        // Family 2: r ≡ −1 (mod 4), r ∉ {−1, 3}.
        if r.rem_euclid(4) == 3 && r != -1 && r != 3 {
            let d = (4 * r + 2).abs();
            if i128mul(r * r, p) + 1 == i128mul(nq, d) && (p - (2 * r - 3)).rem_euclid(d) == 0 {
                out.push(FamilyInstance {
                    tag: FamilyTag::F2,
                    r: Some(r),
                    p,
                });
            }
        }
        // Families 3A, 3B share the identity −q = (p+1)(p+4)/(2r).
        if r >= 1 && i128mul(p + 1, p + 4) == i128mul(2 * r, nq) {
            if (p + 1).rem_euclid(2 * r) == 0 && p >= 4 * r - 1 {
                out.push(FamilyInstance {
                    tag: FamilyTag::F3A,
                    r: Some(r),
                    p,
                });
            }
            if r >= 5 && (p - (r - 4)).rem_euclid(2 * r) == 0 && p >= 3 * r - 4 {
                out.push(FamilyInstance {
                    tag: FamilyTag::F3B,
                    r: Some(r),
                    p,
                });
            }
        }
        // Family 4: r ∉ {−3, −1, 1}.
        if r != -3 && r != -1 && r != 1 {
            let d = 2 * r * r;
            if i128mul((2 * r + 1) * (2 * r + 1), p) + 1 == i128mul(nq, d)
                && (p - (4 * r - 1)).rem_euclid(d) == 0
                && p >= 4 * r - 1
            {
                out.push(FamilyInstance {
                    tag: FamilyTag::F4,
                    r: Some(r),
                    p,
                });
            }
        }
        // Family 5: r ≠ 1.
        if r != 1 {
            let d = r * r - 2 * r - 1;
            if d > 0
                && i128mul(r * r, p) + 1 == i128mul(nq, d)
                && (p - (2 * r - 5)).rem_euclid(d) == 0
                && p >= 2 * r - 5
            {
                out.push(FamilyInstance {
                    tag: FamilyTag::F5,
                    r: Some(r),
                    p,
                });
            }
        }
        r += 2;
    }

    if PNEG_SPORADIC.contains(&(p, q)) {
        out.push(FamilyInstance {
            tag: FamilyTag::Sporadic,
            r: None,
            p,
        });
    }
    out.sort();
    Ok(out)
}

/// All families containing `P(p,q)` with `q > 0`; same structure with the
/// positive-orientation forms (no exclusions on `r` beyond oddness, and no
/// lower range bounds).
pub fn ppos_membership(pp: &PrismParams) -> Result<Vec<FamilyInstance>> {
    let (p, q) = (pp.p(), pp.q());
    if q <= 0 {
        return Err(Error::InvalidInput("positive table needs q > 0".into()));
    }
    if p % 2 == 0 {
        return Err(Error::InvalidInput("realizable p is always odd".into()));
    }
    let mut out = Vec::new();

    if 2 * q == p * p + 3 * p + 4 {
        out.push(FamilyInstance {
            tag: FamilyTag::F1A,
            r: None,
            p,
        });
    }
    if (p % 22 == 5 || p % 22 == 3) && 22 * q == p * p + 3 * p + 4 {
        out.push(FamilyInstance {
            tag: FamilyTag::F1B,
            r: None,
            p,
        });
    }

    let rmax = 4 * q;
    let mut r = -(rmax | 1);
    while r <= rmax {
        if r.rem_euclid(4) == 3 {
            let d = (4 * r + 2).abs();
            if i128mul(r * r, p) - 1 == i128mul(q, d) && (p - (-2 * r + 3)).rem_euclid(d) == 0 {
                out.push(FamilyInstance {
                    tag: FamilyTag::F2,
                    r: Some(r),
                    p,
                });
            }
        }
        if r >= 1 && i128mul(p - 1, p - 4) == i128mul(2 * r, q) {
            if (p - 1).rem_euclid(2 * r) == 0 {
                out.push(FamilyInstance {
                    tag: FamilyTag::F3A,
                    r: Some(r),
                    p,
                });
            }
            if (p - (r + 4)).rem_euclid(2 * r) == 0 {
                out.push(FamilyInstance {
                    tag: FamilyTag::F3B,
                    r: Some(r),
                    p,
                });
            }
        }
        if r != 0 {
            let d = 2 * r * r;
            if i128mul((2 * r + 1) * (2 * r + 1), p) - 1 == i128mul(q, d)
                && (p - (4 * r - 1)).rem_euclid(d) == 0
            {
                out.push(FamilyInstance {
                    tag: FamilyTag::F4,
                    r: Some(r),
                    p,
                });
            }
        }
        if r != 1 {
            let d = r * r - 2 * r - 1;
            if d > 0
                && i128mul(r * r, p) - 1 == i128mul(q, d)
                && (p - (-2 * r + 5)).rem_euclid(d) == 0
            {
                out.push(FamilyInstance {
                    tag: FamilyTag::F5,
                    r: Some(r),
                    p,
                });
            }
        }
        r += 2;
    }

    if PPOS_SPORADIC.contains(&(p, q)) {
        out.push(FamilyInstance {
            tag: FamilyTag::Sporadic,
            r: None,
            p,
        });
    }
    out.sort();
    Ok(out)
}

/// A piece of a vertex-norm template: a single entry or a run of 2s.
enum Piece {
    V(i64),
    Run(i64),
}

/// Assemble a norm template. A run of length `k ≥ 0` contributes `k` copies
/// of 2. An empty-by-one run (`k = −1`) at the end of the template drops
/// itself and the preceding entry; an interior `k = −1` merges its two
/// neighbors `a, b` into `a + b − 2` (both degenerations verified against
/// direct construction of the lattices).
fn assemble(pieces: Vec<Piece>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    let mut pending_merge = false;
    let last = pieces.len() - 1;
    for (idx, piece) in pieces.iter().enumerate() {
        match *piece {
            Piece::V(v) => {
                if pending_merge {
                    let prev = out.pop().expect("merge needs a predecessor");
                    out.push(prev + v - 2);
                    pending_merge = false;
                } else {
                    out.push(v);
                }
            }
            Piece::Run(k) => {
                assert!(k >= -1, "template run shorter than -1");
                assert!(!pending_merge, "adjacent degenerate runs");
                if k >= 0 {
                    out.extend(std::iter::repeat(2).take(k as usize));
                } else if idx == last {
                    out.pop().expect("trailing degenerate run needs a predecessor");
                } else {
                    pending_merge = true;
                }
            }
        }
    }
    assert!(!pending_merge, "dangling merge at template end");
    out
}

fn rep(v: i64, k: i64) -> std::iter::Take<std::iter::Repeat<i64>> {
    std::iter::repeat(v).take(usize::try_from(k).expect("nonnegative run"))
}

/// Which parameters a changemaker row uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowParams {
    None,
    S,
    ST,
}

/// One parametric changemaker row: generator, vertex-norm pattern, `(p,q)`
/// closed forms, and the membership family it lands in.
pub struct CmFamilyRow {
    pub id: &'static str,
    /// Structural case of the classification the row comes from.
    pub group: &'static str,
    pub params: RowParams,
    pub constraint: fn(i64, i64) -> bool,
    pub sigma: fn(i64, i64) -> Vec<i64>,
    pub norms: fn(i64, i64) -> Vec<i64>,
    pub pq: fn(i64, i64) -> (i64, i64),
    pub tag: FamilyTag,
    pub r: Option<fn(i64, i64) -> i64>,
    pub sigma_text: &'static str,
    pub norms_text: &'static str,
    pub p_text: &'static str,
    pub q_text: &'static str,
    pub r_text: &'static str,
}

impl CmFamilyRow {
    /// The literal changemaker vector; errors when `(s,t)` violate the row
    /// constraints.
    pub fn changemaker(&self, s: i64, t: i64) -> Result<Changemaker> {
        if !(self.constraint)(s, t) {
            return Err(Error::ConstraintViolation(format!(
                "row {} rejects (s,t) = ({s},{t})",
                self.id
            )));
        }
        Changemaker::new((self.sigma)(s, t))
    }

    /// Vertex-norm pattern the embedding of this row's changemaker carries.
    pub fn vertex_norms(&self, s: i64, t: i64) -> Result<Vec<i64>> {
        if !(self.constraint)(s, t) {
            return Err(Error::ConstraintViolation(format!(
                "row {} rejects (s,t) = ({s},{t})",
                self.id
            )));
        }
        Ok((self.norms)(s, t))
    }

    /// The `(p,q)` closed forms.
    pub fn predicted_pq(&self, s: i64, t: i64) -> Result<PrismParams> {
        if !(self.constraint)(s, t) {
            return Err(Error::ConstraintViolation(format!(
                "row {} rejects (s,t) = ({s},{t})",
                self.id
            )));
        }
        let (p, q) = (self.pq)(s, t);
        PrismParams::new(p, q)
    }

    pub fn r_value(&self, s: i64, t: i64) -> Option<i64> {
        self.r.map(|f| f(s, t))
    }

    /// Parameter pairs with both coordinates in `0..=max`, honoring the row
    /// constraint and collapsing the unused parameter to 0.
    pub fn param_grid(&self, max: i64) -> Vec<(i64, i64)> {
        let (svals, tvals): (Vec<i64>, Vec<i64>) = match self.params {
            RowParams::None => (vec![0], vec![0]),
            RowParams::S => ((0..=max).collect(), vec![0]),
            RowParams::ST => ((0..=max).collect(), (0..=max).collect()),
        };
        let mut out = Vec::new();
        for &s in &svals {
            for &t in &tvals {
                if (self.constraint)(s, t) {
                    out.push((s, t));
                }
            }
        }
        out
    }
}

/// The full registry of changemaker rows, grouped by the structural case of
/// the standard-basis classification.
pub fn family_rows() -> &'static [CmFamilyRow] {
    &ROWS
}

pub fn row_by_id(id: &str) -> Option<&'static CmFamilyRow> {
    ROWS.iter().find(|r| r.id == id)
}

static ROWS: [CmFamilyRow; 20] = [
    // ---- a_0 = 2 ----
    CmFamilyRow {
        id: "5a",
        group: "a0-2",
        params: RowParams::S,
        constraint: |s, _| s > 0,
        sigma: |s, _| [1, 1, 1, 1].into_iter().chain(rep(2, s)).collect(),
        norms: |s, _| assemble(vec![Piece::V(2), Piece::V(3), Piece::Run(s - 1)]),
        pq: |s, _| (2 * s + 1, -(s + 1)),
        tag: FamilyTag::F5,
        r: Some(|_, _| -1),
        sigma_text: "(1,1,1,1,2^[s]), s>0",
        norms_text: "{2,3,2^[s-1]}",
        p_text: "2s+1",
        q_text: "-(s+1)",
        r_text: "-1",
    },
    CmFamilyRow {
        id: "5b",
        group: "a0-2",
        params: RowParams::ST,
        constraint: |s, t| s >= 0 && t >= 0,
        sigma: |s, t| {
            [1, 1, 1, 1]
                .into_iter()
                .chain(rep(4, s))
                .chain([4 * s + 2])
                .chain(rep(4 * s + 6, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(2),
                Piece::V(s + 3),
                Piece::V(5),
                Piece::Run(s - 1),
                Piece::V(3),
                Piece::Run(t - 1),
            ])
        },
        pq: |s, t| {
            let r = -(2 * s + 3);
            let d = r * r - 2 * r - 1;
            (r * r - 6 + d * t, -(r * r * (t + 1) + 2 * r - 1))
        },
        tag: FamilyTag::F5,
        r: Some(|s, _| -(2 * s + 3)),
        sigma_text: "(1,1,1,1,4^[s],4s+2,(4s+6)^[t])",
        norms_text: "{2,s+3,5,2^[s-1],3,2^[t-1]}",
        p_text: "r^2-6+(r^2-2r-1)t",
        q_text: "-(r^2(t+1)+2r-1)",
        r_text: "-(2s+3)",
    },
    // ---- v_{f-1} gappy ----
    CmFamilyRow {
        id: "1a",
        group: "gappy",
        params: RowParams::S,
        constraint: |s, _| s > 0,
        sigma: |s, _| {
            [1, 1, 2, 2]
                .into_iter()
                .chain(rep(2, s))
                .chain([2 * s + 3, 2 * s + 3])
                .collect()
        },
        norms: |s, _| assemble(vec![Piece::V(s + 3), Piece::Run(s + 1), Piece::V(3)]),
        pq: |s, _| (2 * s + 5, -(2 * s * s + 7 * s + 7)),
        tag: FamilyTag::F1A,
        r: None,
        sigma_text: "(1,1,2,2,2^[s],(2s+3)^[2]), s>0",
        norms_text: "{s+3,2^[s+1],3}",
        p_text: "2s+5",
        q_text: "-(2s^2+7s+7)",
        r_text: "",
    },
    CmFamilyRow {
        id: "2a",
        group: "gappy",
        params: RowParams::ST,
        constraint: |s, t| s >= 0 && t >= 0,
        sigma: |s, t| {
            [1, 1, 2, 4]
                .into_iter()
                .chain(rep(4, s))
                .chain([4 * s + 5, 4 * s + 5])
                .chain(rep(8 * s + 14, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(s + 3),
                Piece::V(3),
                Piece::V(4),
                Piece::Run(s),
                Piece::V(4),
                Piece::Run(t - 1),
            ])
        },
        pq: |s, t| {
            (
                16 * t * s + 30 * t + 8 * s + 11,
                -(16 * t * s * s + 56 * t * s + 8 * s * s + 24 * s + 49 * t + 18),
            )
        },
        tag: FamilyTag::F2,
        r: Some(|s, _| 4 * s + 7),
        sigma_text: "(1,1,2,4,4^[s],(4s+5)^[2],(8s+14)^[t])",
        norms_text: "{s+3,3,4,2^[s],4,2^[t-1]}",
        p_text: "16ts+30t+8s+11",
        q_text: "-(16ts^2+56ts+8s^2+24s+49t+18)",
        r_text: "4s+7",
    },
    CmFamilyRow {
        id: "2b",
        group: "gappy",
        params: RowParams::ST,
        constraint: |s, t| s > 0 && t >= 0,
        sigma: |s, t| {
            [1, 1, 2, 2]
                .into_iter()
                .chain(rep(4, s))
                .chain([4 * s + 3, 4 * s + 3])
                .chain(rep(8 * s + 10, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(s + 3),
                Piece::V(2),
                Piece::V(3),
                Piece::V(3),
                Piece::Run(s - 1),
                Piece::V(4),
                Piece::Run(t - 1),
            ])
        },
        pq: |s, t| {
            (
                16 * t * s + 18 * t + 8 * s + 5,
                -(16 * t * s * s + 40 * t * s + 8 * s * s + 25 * t + 16 * s + 7),
            )
        },
        tag: FamilyTag::F2,
        r: Some(|s, _| -(4 * s + 5)),
        sigma_text: "(1,1,2,2,4^[s],(4s+3)^[2],(8s+10)^[t]), s>0",
        norms_text: "{s+3,2,3,3,2^[s-1],4,2^[t-1]}",
        p_text: "16ts+18t+8s+5",
        q_text: "-(16ts^2+40ts+8s^2+25t+16s+7)",
        r_text: "-(4s+5)",
    },
    CmFamilyRow {
        id: "2c",
        group: "gappy",
        params: RowParams::ST,
        constraint: |s, t| s == 0 && t >= 0,
        sigma: |_, t| [1, 1, 2, 2, 3, 3].into_iter().chain(rep(10, t)).collect(),
        norms: |_, t| {
            assemble(vec![
                Piece::V(3),
                Piece::V(2),
                Piece::V(3),
                Piece::V(5),
                Piece::Run(t - 1),
            ])
        },
        pq: |_, t| (18 * t + 5, -(25 * t + 7)),
        tag: FamilyTag::F2,
        r: Some(|_, _| -5),
        sigma_text: "(1,1,2,2,3,3,10^[t])",
        norms_text: "{3,2,3,5,2^[t-1]}",
        p_text: "18t+5",
        q_text: "-(25t+7)",
        r_text: "-5",
    },
    // ---- v_{f-1} just right ----
    CmFamilyRow {
        id: "spor30",
        group: "just-right",
        params: RowParams::None,
        constraint: |_, _| true,
        sigma: |_, _| vec![1, 1, 2, 4, 7, 7],
        norms: |_, _| vec![4, 4, 3],
        pq: |_, _| (11, -30),
        tag: FamilyTag::Sporadic,
        r: None,
        sigma_text: "(1,1,2,4,7,7)",
        norms_text: "{4,4,3}",
        p_text: "11",
        q_text: "-30",
        r_text: "",
    },
    CmFamilyRow {
        id: "spor31",
        group: "just-right",
        params: RowParams::None,
        constraint: |_, _| true,
        sigma: |_, _| vec![1, 1, 2, 3, 3, 10],
        norms: |_, _| vec![3, 6, 3],
        pq: |_, _| (17, -31),
        tag: FamilyTag::Sporadic,
        r: None,
        sigma_text: "(1,1,2,3,3,10)",
        norms_text: "{3,6,3}",
        p_text: "17",
        q_text: "-31",
        r_text: "",
    },
    CmFamilyRow {
        id: "spor47",
        group: "just-right",
        params: RowParams::None,
        constraint: |_, _| true,
        sigma: |_, _| vec![1, 1, 2, 2, 4, 9, 9],
        norms: |_, _| vec![5, 3, 3, 2],
        pq: |_, _| (13, -47),
        tag: FamilyTag::Sporadic,
        r: None,
        sigma_text: "(1,1,2,2,4,9,9)",
        norms_text: "{5,3,3,2}",
        p_text: "13",
        q_text: "-47",
        r_text: "",
    },
    CmFamilyRow {
        id: "spor64",
        group: "just-right",
        params: RowParams::None,
        constraint: |_, _| true,
        sigma: |_, _| vec![1, 1, 2, 2, 5, 5, 14],
        norms: |_, _| vec![4, 5, 3, 2],
        pq: |_, _| (23, -64),
        tag: FamilyTag::Sporadic,
        r: None,
        sigma_text: "(1,1,2,2,5,5,14)",
        norms_text: "{4,5,3,2}",
        p_text: "23",
        q_text: "-64",
        r_text: "",
    },
    CmFamilyRow {
        id: "1b1",
        group: "just-right",
        params: RowParams::S,
        constraint: |s, _| s >= 0,
        sigma: |s, _| {
            [1, 1]
                .into_iter()
                .chain(rep(2, s + 1))
                .chain([2 * s + 3, 2 * s + 3, 4 * s + 6, 8 * s + 14])
                .collect()
        },
        norms: |s, _| {
            assemble(vec![
                Piece::V(s + 3),
                Piece::V(3),
                Piece::V(5),
                Piece::Run(s),
                Piece::V(3),
            ])
        },
        pq: |s, _| (22 * s + 39, -(22 * s * s + 75 * s + 64)),
        tag: FamilyTag::F1B,
        r: None,
        sigma_text: "(1,1,2^[s+1],(2s+3)^[2],4s+6,8s+14)",
        norms_text: "{s+3,3,5,2^[s],3}",
        p_text: "22s+39",
        q_text: "-(22s^2+75s+64)",
        r_text: "",
    },
    CmFamilyRow {
        id: "1b2",
        group: "just-right",
        params: RowParams::S,
        constraint: |s, _| s >= 0,
        sigma: |s, _| {
            [1, 1]
                .into_iter()
                .chain(rep(2, s + 1))
                .chain([2 * s + 3, 2 * s + 3, 4 * s + 8, 8 * s + 14])
                .collect()
        },
        norms: |s, _| {
            assemble(vec![
                Piece::V(s + 3),
                Piece::V(4),
                Piece::V(4),
                Piece::Run(s),
                Piece::V(3),
            ])
        },
        pq: |s, _| (22 * s + 41, -(22 * s * s + 79 * s + 71)),
        tag: FamilyTag::F1B,
        r: None,
        sigma_text: "(1,1,2^[s+1],(2s+3)^[2],4s+8,8s+14)",
        norms_text: "{s+3,4,4,2^[s],3}",
        p_text: "22s+41",
        q_text: "-(22s^2+79s+71)",
        r_text: "",
    },
    CmFamilyRow {
        id: "4a",
        group: "just-right",
        params: RowParams::ST,
        constraint: |s, t| s >= 0 && t >= 0,
        sigma: |s, t| {
            [1, 1, 2, 3, 3, 8]
                .into_iter()
                .chain(rep(8, s))
                .chain([8 * s + 10])
                .chain(rep(8 * s + 18, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(3),
                Piece::V(s + 3),
                Piece::V(3),
                Piece::V(4),
                Piece::Run(s),
                Piece::V(3),
                Piece::Run(t - 1),
            ])
        },
        pq: |s, t| {
            let r = -(2 * s + 5);
            (
                2 * r * r * t + 2 * r * r + 4 * r - 1,
                -((2 * r + 1) * (2 * r + 1) * (t + 1) + 8 * r + 6),
            )
        },
        tag: FamilyTag::F4,
        r: Some(|s, _| -(2 * s + 5)),
        sigma_text: "(1,1,2,3,3,8,8^[s],8s+10,(8s+18)^[t])",
        norms_text: "{3,s+3,3,4,2^[s],3,2^[t-1]}",
        p_text: "2r^2t+2r^2+4r-1",
        q_text: "-((2r+1)^2(t+1)+8r+6)",
        r_text: "-(2s+5)",
    },
    // ---- v_{f-1} tight, f > 3 ----
    CmFamilyRow {
        id: "3a1",
        group: "tight-high-f",
        params: RowParams::ST,
        constraint: |s, t| s >= 0 && t > 0,
        sigma: |s, t| {
            [1, 1]
                .into_iter()
                .chain(rep(2, s + 1))
                .chain([2 * s + 5, 2 * s + 5])
                .chain(rep(4 * s + 8, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(s + 4),
                Piece::Run(t - 1),
                Piece::V(4),
                Piece::Run(s),
                Piece::V(3),
            ])
        },
        pq: |s, t| {
            let p = (2 * t + 1) * (2 * s + 4) - 1;
            (p, -((s + 2) * ((2 * t + 1) * (2 * s + 4) + 3)))
        },
        tag: FamilyTag::F3A,
        r: Some(|_, t| 2 * t + 1),
        sigma_text: "(1,1,2^[s+1],(2s+5)^[2],(4s+8)^[t]), t>0",
        norms_text: "{s+4,2^[t-1],4,2^[s],3}",
        p_text: "(2t+1)(2s+4)-1",
        q_text: "-((s+2)((2t+1)(2s+4)+3))",
        r_text: "2t+1",
    },
    CmFamilyRow {
        id: "3a2",
        group: "tight-high-f",
        params: RowParams::S,
        constraint: |s, _| s >= 0,
        sigma: |s, _| {
            [1, 1]
                .into_iter()
                .chain(rep(2, s + 1))
                .chain([2 * s + 5, 2 * s + 5])
                .collect()
        },
        norms: |s, _| assemble(vec![Piece::V(s + 6), Piece::Run(s), Piece::V(3)]),
        pq: |s, _| (2 * s + 3, -(2 * s * s + 11 * s + 14)),
        tag: FamilyTag::F3A,
        r: Some(|_, _| 1),
        sigma_text: "(1,1,2^[s+1],(2s+5)^[2])",
        norms_text: "{s+6,2^[s],3}",
        p_text: "2s+3",
        q_text: "-(2s^2+11s+14)",
        r_text: "1",
    },
    CmFamilyRow {
        id: "3b1",
        group: "tight-high-f",
        params: RowParams::ST,
        constraint: |s, t| s >= 0 && t > 0,
        sigma: |s, t| {
            [1, 1]
                .into_iter()
                .chain(rep(2, s + 1))
                .chain([2 * s + 5, 2 * s + 5, 4 * s + 8])
                .chain(rep(4 * s + 10, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(s + 4),
                Piece::V(3),
                Piece::Run(t - 1),
                Piece::V(3),
                Piece::Run(s),
                Piece::V(3),
            ])
        },
        pq: |s, t| {
            (
                (2 * t + 3) * (2 * s + 5) - 4,
                -((2 * s + 5) * ((2 * t + 3) * s + 5 * t + 6)),
            )
        },
        tag: FamilyTag::F3B,
        r: Some(|_, t| 2 * t + 3),
        sigma_text: "(1,1,2^[s+1],(2s+5)^[2],4s+8,(4s+10)^[t]), t>0",
        norms_text: "{s+4,3,2^[t-1],3,2^[s],3}",
        p_text: "(2t+3)(2s+5)-4",
        q_text: "-((2s+5)((2t+3)s+5t+6))",
        r_text: "2t+3",
    },
    // ---- v_2 tight, f = 3 ----
    CmFamilyRow {
        id: "5c",
        group: "tight-f3",
        params: RowParams::ST,
        constraint: |s, t| s > 0 && t >= 0,
        sigma: |s, t| {
            [1, 1, 3, 3]
                .into_iter()
                .chain(rep(4, s))
                .chain(rep(4 * s + 6, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(3),
                Piece::Run(s - 1),
                Piece::V(5),
                Piece::V(s + 3),
                Piece::Run(t - 1),
            ])
        },
        pq: |s, t| {
            let r = 2 * s + 3;
            let d = r * r - 2 * r - 1;
            (d * t + 2 * r - 5, -(r * r * t + 2 * r - 1))
        },
        tag: FamilyTag::F5,
        r: Some(|s, _| 2 * s + 3),
        sigma_text: "(1,1,3,3,4^[s],(4s+6)^[t]), s>0",
        norms_text: "{3,2^[s-1],5,s+3,2^[t-1]}",
        p_text: "(r^2-2r-1)t+2r-5",
        q_text: "-(r^2t+2r-1)",
        r_text: "2s+3",
    },
    CmFamilyRow {
        id: "5d",
        group: "tight-f3",
        params: RowParams::ST,
        constraint: |s, t| s == 0 && t > 0,
        sigma: |_, t| [1, 1, 3, 3].into_iter().chain(rep(6, t)).collect(),
        norms: |_, t| assemble(vec![Piece::V(6), Piece::V(3), Piece::Run(t - 1)]),
        pq: |_, t| (2 * t + 1, -(9 * t + 5)),
        tag: FamilyTag::F5,
        r: Some(|_, _| 3),
        sigma_text: "(1,1,3,3,6^[t]), t>0",
        norms_text: "{6,3,2^[t-1]}",
        p_text: "2t+1",
        q_text: "-(9t+5)",
        r_text: "3",
    },
    CmFamilyRow {
        id: "3b2",
        group: "tight-f3",
        params: RowParams::S,
        constraint: |s, _| s > 0,
        sigma: |s, _| [1, 1, 3, 3, 4].into_iter().chain(rep(6, s)).collect(),
        norms: |s, _| {
            assemble(vec![
                Piece::V(3),
                Piece::V(3),
                Piece::Run(s - 1),
                Piece::V(4),
            ])
        },
        pq: |s, _| (6 * s + 5, -(9 * s + 9)),
        tag: FamilyTag::F3B,
        r: Some(|s, _| 2 * s + 3),
        sigma_text: "(1,1,3,3,4,6^[s]), s>0",
        norms_text: "{3,3,2^[s-1],4}",
        p_text: "6s+5",
        q_text: "-(9s+9)",
        r_text: "2s+3",
    },
    CmFamilyRow {
        id: "4b",
        group: "tight-f3",
        params: RowParams::ST,
        constraint: |s, t| s > 0 && t >= 0,
        sigma: |s, t| {
            [1, 1, 3, 3, 6]
                .into_iter()
                .chain(rep(8, s))
                .chain(rep(8 * s + 6, t))
                .collect()
        },
        norms: |s, t| {
            assemble(vec![
                Piece::V(4),
                Piece::Run(s - 1),
                Piece::V(4),
                Piece::V(3),
                Piece::V(s + 2),
                Piece::Run(t - 1),
            ])
        },
        pq: |s, t| {
            let r = 2 * s + 1;
            (
                2 * r * r * t + 4 * r - 1,
                -((2 * r + 1) * (2 * r + 1) * t + 8 * r + 6),
            )
        },
        tag: FamilyTag::F4,
        r: Some(|s, _| 2 * s + 1),
        sigma_text: "(1,1,3,3,6,8^[s],(8s+6)^[t]), s>0",
        norms_text: "{4,2^[s-1],4,3,s+2,2^[t-1]}",
        p_text: "2r^2t+4r-1",
        q_text: "-((2r+1)^2t+8r+6)",
        r_text: "2s+1",
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtype::{dtype_from_pq, pq_from_norms};

    fn pp(p: i64, q: i64) -> PrismParams {
        PrismParams::new(p, q).unwrap()
    }

    fn tags(list: &[FamilyInstance]) -> Vec<(FamilyTag, Option<i64>)> {
        list.iter().map(|i| (i.tag, i.r)).collect()
    }

    #[test]
    fn pneg_examples() {
        // P(3,-2) carries two family-5 witnesses: r = -1 (the torus-knot row)
        // and r = -3 (the degenerate s = t = 0 case of the other a_0 = 2 row,
        // which generates the same changemaker).
        assert_eq!(
            tags(&pneg_membership(&pp(3, -2)).unwrap()),
            vec![(FamilyTag::F5, Some(-3)), (FamilyTag::F5, Some(-1))]
        );
        assert_eq!(
            tags(&pneg_membership(&pp(11, -30)).unwrap()),
            vec![
                (FamilyTag::F3A, Some(3)),
                (FamilyTag::F4, Some(3)),
                (FamilyTag::Sporadic, None)
            ]
        );
        assert!(pneg_membership(&pp(7, -1)).unwrap().is_empty());
        for (p, q) in PNEG_SPORADIC {
            assert!(pneg_membership(&pp(p, q))
                .unwrap()
                .iter()
                .any(|i| i.tag == FamilyTag::Sporadic));
        }
    }

    #[test]
    fn ppos_examples() {
        assert_eq!(
            tags(&ppos_membership(&pp(11, 19)).unwrap()),
            vec![(FamilyTag::Sporadic, None)]
        );
        assert!(ppos_membership(&pp(9, 2)).unwrap().is_empty());
        // Positive torus-knot surgeries P(2k+1, k) land in family 2 (r = −1).
        for k in [1i64, 2, 3, 4, 5] {
            let hits = ppos_membership(&pp(2 * k + 1, k)).unwrap();
            assert!(
                hits.iter().any(|i| i.tag == FamilyTag::F2 && i.r == Some(-1)),
                "P({},{k}) missing family 2 r=-1: {hits:?}",
                2 * k + 1
            );
        }
        // The spec's sample pair (5,9) matches no positive-orientation row:
        // 2r^2-9r-4 = 0 has no integer root and every other identity fails.
        assert!(ppos_membership(&pp(5, 9)).unwrap().is_empty());
    }

    #[test]
    fn row_registry_generates_valid_changemakers() {
        for row in family_rows() {
            for (s, t) in row.param_grid(3) {
                let cm = row
                    .changemaker(s, t)
                    .unwrap_or_else(|e| panic!("row {} ({s},{t}): {e}", row.id));
                assert!(cm.dim() >= 5, "row {} ({s},{t})", row.id);
            }
        }
    }

    #[test]
    fn row_norms_match_predicted_pq() {
        // The vertex-norm pattern and the (p,q) closed forms describe the
        // same lattice.
        for row in family_rows() {
            for (s, t) in row.param_grid(4) {
                let norms = row.vertex_norms(s, t).unwrap();
                let params = row.predicted_pq(s, t).unwrap();
                assert_eq!(
                    pq_from_norms(&norms).unwrap(),
                    params,
                    "row {} (s,t)=({s},{t}) norms={norms:?}",
                    row.id
                );
                assert_eq!(dtype_from_pq(&params).unwrap().norms(), &norms[..]);
            }
        }
    }

    #[test]
    fn row_predictions_land_in_their_family() {
        for row in family_rows() {
            for (s, t) in row.param_grid(3) {
                let params = row.predicted_pq(s, t).unwrap();
                let hits = pneg_membership(&params).unwrap();
                let want_r = row.r_value(s, t);
                assert!(
                    hits.iter()
                        .any(|i| i.tag == row.tag && (want_r.is_none() || i.r == want_r)),
                    "row {} (s,t)=({s},{t}) {params} expected {:?} r={want_r:?}, got {hits:?}",
                    row.id,
                    row.tag
                );
            }
        }
    }

    #[test]
    fn family_changemaker_examples() {
        assert_eq!(
            row_by_id("5a").unwrap().changemaker(1, 0).unwrap().sigma(),
            &[1, 1, 1, 1, 2]
        );
        assert_eq!(
            row_by_id("3a2").unwrap().changemaker(0, 0).unwrap().sigma(),
            &[1, 1, 2, 5, 5]
        );
        assert_eq!(
            row_by_id("spor31").unwrap().changemaker(0, 0).unwrap().sigma(),
            &[1, 1, 2, 3, 3, 10]
        );
        assert!(row_by_id("5a").unwrap().changemaker(0, 0).is_err());
    }

    #[test]
    fn family_predicted_pq_examples() {
        assert_eq!(row_by_id("5a").unwrap().predicted_pq(1, 0).unwrap(), pp(3, -2));
        assert_eq!(row_by_id("5d").unwrap().predicted_pq(0, 1).unwrap(), pp(3, -14));
        assert_eq!(row_by_id("3a2").unwrap().predicted_pq(0, 0).unwrap(), pp(3, -14));
        assert_eq!(
            row_by_id("1a").unwrap().vertex_norms(1, 0).unwrap(),
            vec![4, 2, 2, 3]
        );
        // {s+3,2^[s+1],3} at s = 0 would read (3,2,3), i.e. P(5,-7); that
        // manifold belongs to the r = -5 row of family 2 instead.
        assert_eq!(pq_from_norms(&[3, 2, 3]).unwrap(), pp(5, -7));
        assert_eq!(
            tags(&pneg_membership(&pp(5, -7)).unwrap()),
            vec![(FamilyTag::F2, Some(-5))]
        );
    }

    #[test]
    fn interior_template_merge() {
        // The a_0 = 2 row at s = 0 exercises the interior merge: the lattice
        // of σ = (1,1,1,1,2,6^[t]) has norms (2,3,6,2^[t-1]).
        let row = row_by_id("5b").unwrap();
        assert_eq!(row.vertex_norms(0, 0).unwrap(), vec![2, 3]);
        assert_eq!(row.vertex_norms(0, 1).unwrap(), vec![2, 3, 6]);
        assert_eq!(row.vertex_norms(0, 2).unwrap(), vec![2, 3, 6, 2]);
        assert_eq!(row.vertex_norms(1, 0).unwrap(), vec![2, 4, 5]);
    }
}
