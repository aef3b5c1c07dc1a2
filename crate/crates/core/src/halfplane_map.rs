//! Mapping one halfplane into another by a word in a given set of
//! isometries.
//!
//! The search follows a two-stage strategy: pick a hyperbolic element γ
//! whose attracting point lies strictly inside the target's ideal arc,
//! optionally push the source halfplane away from γ's repelling point with
//! an auxiliary hyperbolic δ, then iterate γ until the image halfplane is
//! certified inside the target. Certification is exact arc containment, so
//! a returned isometry is always correct; failure within the word-length
//! budget is reported, never silently accepted.

use thiserror::Error;

use crate::geom::{ccw_arc_len, wrap_angle};
use crate::halfplane::Halfplane;
use crate::mobius::{IsometryKind, MobiusIsometry};

/// Default limit on the total word length (in generator letters) of the
/// returned composite isometry.
pub const DEFAULT_WORD_BUDGET: usize = 64;

#[derive(Debug, Error)]
pub enum MappingError {
    /// The word-length budget ran out before any candidate was certified.
    /// This signals insufficient generators or budget, not impossibility.
    #[error("MappingNotFound: no certified word within budget {budget}")]
    MappingNotFound { budget: usize },
}

/// A hyperbolic word in the generators with its axis endpoints.
#[derive(Clone, Debug)]
struct HyperbolicWord {
    m: MobiusIsometry,
    len: usize,
    attracting: f64,
    repelling: f64,
    /// `2 cosh(ℓ/2)` for translation length ℓ; larger moves points faster.
    trace: f64,
}

/// Smallest circular distance from `x` to either end of the ccw arc
/// `(start, end)`, negative when `x` lies outside the arc.
fn arc_margin(start: f64, end: f64, x: f64) -> f64 {
    let len = ccw_arc_len(start, end);
    let d = ccw_arc_len(start, wrap_angle(x));
    if d <= len {
        d.min(len - d)
    } else {
        -(ccw_arc_len(end, wrap_angle(x)).min(ccw_arc_len(wrap_angle(x), start)))
    }
}

/// Sign-normalized quantized matrix key, identifying `(a, b)` with `(-a, -b)`.
fn matrix_key(m: &MobiusIsometry) -> [i64; 4] {
    let mut c = m.components();
    let lead = c.iter().find(|x| x.abs() > 1e-9).copied().unwrap_or(1.0);
    if lead < 0.0 {
        for x in c.iter_mut() {
            *x = -*x;
        }
    }
    c.map(|x| (x * 1e7).round() as i64)
}

/// Words over the generators up to the given length, shortest first,
/// deduplicated as isometries and capped in number.
fn enumerate_words(
    gens: &[MobiusIsometry],
    max_len: usize,
    cap: usize,
) -> Vec<(MobiusIsometry, usize)> {
    let mut seen = std::collections::HashSet::new();
    let mut out: Vec<(MobiusIsometry, usize)> = Vec::new();
    seen.insert(matrix_key(&MobiusIsometry::identity()));
    out.push((MobiusIsometry::identity(), 0));
    let mut frontier_start = 0;
    for len in 1..=max_len {
        let frontier_end = out.len();
        for i in frontier_start..frontier_end {
            let (base, _) = out[i];
            for g in gens {
                let w = g.compose(&base);
                if seen.insert(matrix_key(&w)) {
                    out.push((w, len));
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
    out
}

/// Hyperbolic conjugates `w γ₀ w⁻¹` over short base words γ₀ and conjugating
/// words w, with attracting points spread around the circle.
fn hyperbolic_pool(gens: &[MobiusIsometry], budget: usize) -> Vec<HyperbolicWord> {
    let mut bases: Vec<HyperbolicWord> = Vec::new();
    for (m, len) in enumerate_words(gens, 3, 400) {
        if let Ok(class) = m.classify() {
            if class.kind == IsometryKind::Hyperbolic {
                bases.push(HyperbolicWord {
                    m,
                    len,
                    attracting: class.attracting.unwrap(),
                    repelling: class.repelling.unwrap(),
                    trace: 2.0 * m.a().re.abs(),
                });
            }
        }
    }
    // fastest-moving bases first: fewer iterations per certification
    bases.sort_by(|a, b| b.trace.partial_cmp(&a.trace).unwrap());
    bases.truncate(6);

    let mut pool = Vec::new();
    for (w, wlen) in enumerate_words(gens, 6, 600) {
        for base in &bases {
            let len = 2 * wlen + base.len;
            if len > budget {
                continue;
            }
            pool.push(HyperbolicWord {
                m: w.compose(&base.m).compose(&w.inverse()),
                len,
                attracting: w.apply_angle(base.attracting),
                repelling: w.apply_angle(base.repelling),
                trace: base.trace,
            });
        }
    }
    pool
}

/// Iterate `gamma` on `h`, certifying containment in `target`; `spent` is
/// the word length already consumed by earlier stages.
fn iterate_into(
    h: &Halfplane,
    target: &Halfplane,
    gamma: &HyperbolicWord,
    spent: usize,
    budget: usize,
) -> Option<(MobiusIsometry, usize)> {
    // an arc still covering the repelling point cannot shrink toward the
    // attracting point
    if arc_margin(h.arc_start(), h.arc_end(), gamma.repelling) > -1e-6 {
        return None;
    }
    let mut word = gamma.m;
    let mut used = spent + gamma.len;
    while used <= budget {
        let img = h.image_under(&word);
        if target.contains_halfplane(&img) {
            return Some((word, used));
        }
        word = gamma.m.compose(&word);
        used += gamma.len;
    }
    None
}

/// Find a word in `gens` mapping `h1` into `h2`, with the default budget.
pub fn map_halfplane_into(
    h1: &Halfplane,
    h2: &Halfplane,
    gens: &[MobiusIsometry],
) -> Result<MobiusIsometry, MappingError> {
    map_halfplane_into_budgeted(h1, h2, gens, DEFAULT_WORD_BUDGET)
}

/// Find a word in `gens` of total length at most `budget` mapping `h1`
/// into `h2`. The result is self-certifying: its image arc has been checked
/// to lie inside `h2`'s arc.
pub fn map_halfplane_into_budgeted(
    h1: &Halfplane,
    h2: &Halfplane,
    gens: &[MobiusIsometry],
    budget: usize,
) -> Result<MobiusIsometry, MappingError> {
    if h2.contains_halfplane(h1) {
        return Ok(MobiusIsometry::identity());
    }
    let fail = || MappingError::MappingNotFound { budget };
    if gens.is_empty() {
        return Err(fail());
    }

    let pool = hyperbolic_pool(gens, budget);
    // γ candidates: attracting point strictly inside the target arc, deepest
    // inside and shortest first
    let mut gammas: Vec<&HyperbolicWord> = pool
        .iter()
        .filter(|c| arc_margin(h2.arc_start(), h2.arc_end(), c.attracting) > 1e-3)
        .collect();
    gammas.sort_by(|a, b| {
        let ma = arc_margin(h2.arc_start(), h2.arc_end(), a.attracting);
        let mb = arc_margin(h2.arc_start(), h2.arc_end(), b.attracting);
        (a.len, -ma).partial_cmp(&(b.len, -mb)).unwrap()
    });
    gammas.truncate(12);

    for gamma in &gammas {
        if let Some((word, _)) = iterate_into(h1, h2, gamma, 0, budget) {
            return Ok(word);
        }
    }

    // second stage: push h1 off γ's repelling point with an auxiliary δ
    for gamma in &gammas {
        let mut deltas: Vec<&HyperbolicWord> = pool
            .iter()
            .filter(|d| {
                // δ pulls arcs toward its own attracting point, so that
                // point must avoid r_γ and δ's repelling point must not sit
                // inside the arc being pushed
                ccw_arc_len(d.attracting, gamma.repelling)
                    .min(ccw_arc_len(gamma.repelling, d.attracting))
                    > 0.3
                    && arc_margin(h1.arc_start(), h1.arc_end(), d.repelling) < -1e-3
            })
            .collect();
        deltas.sort_by(|a, b| (a.len, b.trace).partial_cmp(&(b.len, a.trace)).unwrap());
        deltas.truncate(4);
        for delta in deltas {
            let mut push = delta.m;
            let mut spent = delta.len;
            while spent + gamma.len <= budget {
                let moved = h1.image_under(&push);
                if arc_margin(moved.arc_start(), moved.arc_end(), gamma.repelling) < -1e-6 {
                    if let Some((word, _)) = iterate_into(&moved, h2, gamma, spent, budget) {
                        return Ok(word.compose(&push));
                    }
                }
                push = delta.m.compose(&push);
                spent += delta.len;
            }
        }
    }
    Err(fail())
}
