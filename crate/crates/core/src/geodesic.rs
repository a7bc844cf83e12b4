//! Geodesic enumeration and triangle-thinness estimation.
//!
//! Geodesics from `x` to `y` are exactly the walks that descend the distance
//! gradient `d(., y)` one layer per step, so enumeration walks that layered
//! DAG and is output-sensitive.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, UNREACHED};
use crate::path::Path;

/// The geodesics joining `source` to `target`, in lexicographic order of
/// their vertex sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicSet {
    pub source: VertexId,
    pub target: VertexId,
    pub paths: Vec<Path>,
    /// More than `cap` geodesics exist; only the first `cap` are stored.
    pub truncated: bool,
}

impl GeodesicSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }
}

pub fn all_geodesics(g: &Graph, x: VertexId, y: VertexId, cap: usize) -> Result<GeodesicSet> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if cap == 0 {
        return Err(Error::input("geodesic cap must be positive"));
    }
    let dy = g.dist_row(y);
    let mut out = GeodesicSet {
        source: x,
        target: y,
        paths: Vec::new(),
        truncated: false,
    };
    let mut current = vec![x];
    descend(g, &dy, &mut current, cap, &mut out);
    Ok(out)
}

fn descend(g: &Graph, dy: &[u32], current: &mut Vec<VertexId>, cap: usize, out: &mut GeodesicSet) {
    if out.truncated {
        return;
    }
    let u = *current.last().expect("nonempty");
    if dy[u] == 0 {
        if out.paths.len() == cap {
            out.truncated = true;
        } else {
            out.paths.push(Path::new(current.clone()).expect("nonempty"));
        }
        return;
    }
    for &w in g.neighbors(u) {
        if dy[w] + 1 == dy[u] {
            current.push(w);
            descend(g, dy, current, cap, out);
            current.pop();
            if out.truncated {
                return;
            }
        }
    }
}

/// Number of geodesics from `x` to `y`, saturating at `u128::MAX`.
pub fn count_geodesics(g: &Graph, x: VertexId, y: VertexId) -> Result<u128> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let dy = g.dist_row(y);
    let dx = g.dist_row(x);
    let total = dy[x];
    // Vertices on some geodesic, processed from y outwards.
    let mut on: Vec<VertexId> = g
        .vertices()
        .filter(|&v| dx[v] + dy[v] == total)
        .collect();
    on.sort_by_key(|&v| dy[v]);
    let mut count: HashMap<VertexId, u128> = HashMap::new();
    for v in on {
        let c = if v == y {
            1
        } else {
            g.neighbors(v)
                .iter()
                .filter(|&&w| dy[w] + 1 == dy[v])
                .filter_map(|w| count.get(w))
                .fold(0u128, |acc, &c| acc.saturating_add(c))
        };
        count.insert(v, c);
    }
    Ok(count.get(&x).copied().unwrap_or(0))
}

/// True iff `d(p(m), p(n)) = |m - n|` for all indices.
///
/// With consecutive vertices equal or adjacent every sub-path is at most as
/// long as its index span, so the identity holds for all pairs exactly when
/// it holds for the endpoints.
pub fn is_geodesic(g: &Graph, p: &Path) -> Result<bool> {
    p.validate(g)?;
    Ok(g.distance(p.start(), p.end())? as usize == p.len())
}

/// `(z, a, b, k, alpha(k), beta(k))`.
pub type ThinnessWitness = (VertexId, VertexId, VertexId, u32, VertexId, VertexId);

/// Outcome of [`thinness_defect`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinnessReport {
    /// Max of `d(alpha(k), beta(k))` over the sampled geodesic triangles.
    pub defect: u32,
    /// Sampled basepoints (the ball around `base`).
    pub vertices: usize,
    /// A triangle realizing the defect.
    pub witness: Option<ThinnessWitness>,
}

impl ThinnessReport {
    /// Smallest integer `delta` with every sampled `d(alpha(k), beta(k)) < delta`.
    pub fn delta(&self) -> u32 {
        self.defect + 1
    }
}

/// Max over `z, a, b` in `ball(base, radius)`, geodesics `alpha` from `z` to
/// `a` and `beta` from `z` to `b`, and integers `k <= <a,b>_z`, of
/// `d(alpha(k), beta(k))`.
///
/// `alpha(k)` ranges exactly over the vertices at distance `k` from `z` that
/// lie on some geodesic to `a`, independently of `beta`, so the max is taken
/// over these layer sets instead of enumerating geodesic pairs.
pub fn thinness_defect(g: &Graph, base: VertexId, radius: u32) -> Result<ThinnessReport> {
    let ball = g.ball(base, radius)?;
    let rows: HashMap<VertexId, std::sync::Arc<[u32]>> =
        ball.par_iter().map(|&v| (v, g.dist_row(v))).collect();

    let per_z: Vec<(u32, Option<ThinnessWitness>)> = ball
        .par_iter()
        .map(|&z| thinness_from(g, z, &ball, &rows))
        .collect();

    let mut report = ThinnessReport {
        defect: 0,
        vertices: ball.len(),
        witness: None,
    };
    for (d, w) in per_z {
        if d > report.defect || (report.witness.is_none() && w.is_some()) {
            report.defect = report.defect.max(d);
            report.witness = w;
        }
    }
    Ok(report)
}

type Witness = (VertexId, VertexId, VertexId, u32, VertexId, VertexId);

fn thinness_from(
    g: &Graph,
    z: VertexId,
    ball: &[VertexId],
    rows: &HashMap<VertexId, std::sync::Arc<[u32]>>,
) -> (u32, Option<Witness>) {
    let dz = &rows[&z];
    // layers[i][k]: vertices at distance k from z on a geodesic to ball[i].
    let layers: Vec<Vec<Vec<VertexId>>> = ball.iter().map(|&a| geodesic_layers(g, dz, a)).collect();
    let mut extra: HashMap<VertexId, std::sync::Arc<[u32]>> = HashMap::new();
    let mut best = 0u32;
    let mut witness = None;
    for (i, &a) in ball.iter().enumerate() {
        let da = &rows[&a];
        for (j, &b) in ball.iter().enumerate().skip(i) {
            let twice = dz[a] as i64 + dz[b] as i64 - da[b] as i64;
            let kmax = (twice / 2) as u32;
            // d(alpha(k), beta(k)) <= 2k, so only k > best/2 can improve.
            for k in (best / 2 + 1)..=kmax {
                for &u in &layers[i][k as usize] {
                    let du = match rows.get(&u) {
                        Some(r) => r.clone(),
                        None => extra.entry(u).or_insert_with(|| g.dist_row(u)).clone(),
                    };
                    for &w in &layers[j][k as usize] {
                        if du[w] > best {
                            best = du[w];
                            witness = Some((z, a, b, k, u, w));
                        }
                    }
                }
            }
        }
    }
    (best, witness)
}

fn geodesic_layers(g: &Graph, dz: &[u32], a: VertexId) -> Vec<Vec<VertexId>> {
    let top = dz[a];
    debug_assert!(top != UNREACHED);
    let mut layers = vec![Vec::new(); top as usize + 1];
    layers[top as usize].push(a);
    let mut mark = HashMap::new();
    for k in (1..=top as usize).rev() {
        let (lower, upper) = layers.split_at_mut(k);
        for &u in &upper[0] {
            for &w in g.neighbors(u) {
                if dz[w] as usize == k - 1 && mark.insert(w, ()).is_none() {
                    lower[k - 1].push(w);
                }
            }
        }
    }
    for layer in &mut layers {
        layer.sort_unstable();
    }
    layers
}
