//! Boundary proxies, shadow sets and the averaged shadow measures.
//!
//! A point of the Gromov boundary is represented by a far target vertex,
//! optionally together with an explicit geodesic ray ending there. Shadow
//! queries are certified only for sources near the proxy's origin and for
//! depths that keep every geodesic well short of the target.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fineness::count_circuits;
use crate::geodesic::{all_geodesics, is_geodesic};
use crate::graph::{Edge, Graph, VertexId};
use crate::measure::{rat, rational_from_f64, ProbMeasure, Rational};
use crate::path::Path;

pub type VertexMeasure = ProbMeasure<VertexId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProxyKind {
    /// A geodesic starting at the origin; the target is its far end.
    Ray(Path),
    FarVertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryProxy {
    pub kind: ProxyKind,
    pub origin: VertexId,
    pub target: VertexId,
    /// Sources must lie within this distance of `origin`.
    pub validity_radius: u32,
    /// `d(origin, target)`.
    pub reach: u32,
}

impl BoundaryProxy {
    pub fn ray(g: &Graph, path: Path, validity_radius: u32) -> Result<Self> {
        if !is_geodesic(g, &path)? {
            return Err(Error::input(format!("ray {path} is not geodesic")));
        }
        Ok(BoundaryProxy {
            origin: path.start(),
            target: path.end(),
            validity_radius,
            reach: path.len() as u32,
            kind: ProxyKind::Ray(path),
        })
    }

    pub fn far_vertex(g: &Graph, origin: VertexId, target: VertexId, validity_radius: u32) -> Result<Self> {
        let reach = g.distance(origin, target)?;
        Ok(BoundaryProxy {
            kind: ProxyKind::FarVertex,
            origin,
            target,
            validity_radius,
            reach,
        })
    }

    /// `ray:<len>` or `far:<target name>`.
    pub fn describe(&self, g: &Graph) -> String {
        match &self.kind {
            ProxyKind::Ray(p) => format!("ray:{}", p.len()),
            ProxyKind::FarVertex => format!("far:{}", g.name(self.target)),
        }
    }

    /// Largest depth `l` certified for sources at radius `k` around a point
    /// of the validity ball.
    pub fn max_depth(&self, k: u32) -> Option<u32> {
        self.reach.checked_sub(self.validity_radius + 2 * k)
    }

    /// Errors unless `S(x, z, l, k)` is certified: `x` within the validity
    /// radius and `reach >= validity_radius + l + 2k`, so that every geodesic
    /// from the `k`-ball around `x` still has at least `k` steps left after
    /// position `l`.
    pub fn certify(&self, g: &Graph, x: VertexId, l: u32, k: u32) -> Result<()> {
        let dx = g.distance(self.origin, x)?;
        if dx > self.validity_radius {
            return Err(Error::cert(format!(
                "source {} is at distance {dx} from the proxy origin, beyond the validity radius {}",
                g.name(x),
                self.validity_radius
            )));
        }
        let need = self.validity_radius as u64 + l as u64 + 2 * k as u64;
        if (self.reach as u64) < need {
            return Err(Error::cert(format!(
                "proxy reach {} is below {need} needed for l={l}, k={k}",
                self.reach
            )));
        }
        Ok(())
    }

    /// The proxy moved by a graph automorphism given as a vertex map.
    pub fn translate(&self, g: &Graph, map: impl Fn(VertexId) -> Result<VertexId>) -> Result<Self> {
        match &self.kind {
            ProxyKind::Ray(p) => {
                let moved = p.vertices().iter().map(|&v| map(v)).collect::<Result<Vec<_>>>()?;
                BoundaryProxy::ray(g, Path::new(moved)?, self.validity_radius)
            }
            ProxyKind::FarVertex => {
                BoundaryProxy::far_vertex(g, map(self.origin)?, map(self.target)?, self.validity_radius)
            }
        }
    }
}

/// Vertices reached from `start` by `l` steps each moving one closer to the
/// proxy target.
fn descend(g: &Graph, to_target: &[u32], start: BTreeSet<VertexId>, l: u32) -> BTreeSet<VertexId> {
    let mut cur = start;
    for _ in 0..l {
        let mut next = BTreeSet::new();
        for &u in &cur {
            if to_target[u] == 0 {
                continue;
            }
            for &w in g.neighbors(u) {
                if to_target[w] + 1 == to_target[u] {
                    next.insert(w);
                }
            }
        }
        cur = next;
    }
    cur
}

/// `S(x, z, l, k)`: the vertices at position `l` on geodesics toward `z`
/// launched from the `k`-ball around `x`, in ascending order.
pub fn shadow(g: &Graph, x: VertexId, z: &BoundaryProxy, l: u32, k: u32) -> Result<Vec<VertexId>> {
    z.certify(g, x, l, k)?;
    let to_target = g.dist_row(z.target);
    let ball: BTreeSet<VertexId> = g.ball(x, k)?.into_iter().collect();
    let s = descend(g, &to_target, ball, l);
    if s.is_empty() {
        return Err(Error::invariant("empty shadow"));
    }
    Ok(s.into_iter().collect())
}

/// All shadows `S(x, z, l, k)` for `k` in `ks`, sharing one pass per ball layer.
pub fn shadows(g: &Graph, x: VertexId, z: &BoundaryProxy, l: u32, ks: std::ops::RangeInclusive<u32>) -> Result<Vec<Vec<VertexId>>> {
    let kmax = *ks.end();
    z.certify(g, x, l, kmax)?;
    let to_target = g.dist_row(z.target);
    let from_x = g.bfs_within(x, kmax);
    let mut layers: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); kmax as usize + 1];
    for (v, &d) in from_x.iter().enumerate() {
        if d <= kmax {
            layers[d as usize].insert(v);
        }
    }
    let images: Vec<BTreeSet<VertexId>> = layers
        .into_iter()
        .map(|layer| descend(g, &to_target, layer, l))
        .collect();
    let mut acc = BTreeSet::new();
    let mut out = Vec::new();
    for (k, img) in images.into_iter().enumerate() {
        acc.extend(img);
        if ks.contains(&(k as u32)) {
            out.push(acc.iter().copied().collect());
        }
    }
    Ok(out)
}

/// Uniform probability measure on `s`.
pub fn xi(s: &[VertexId]) -> Result<VertexMeasure> {
    ProbMeasure::uniform(s.iter().copied())
}

/// `zeta^n_{x,z} = (1/n) sum_{k=n+1}^{2n} xi(S(x, z, 4n, k))`, exactly.
pub fn zeta(g: &Graph, x: VertexId, z: &BoundaryProxy, n: u32) -> Result<VertexMeasure> {
    if n == 0 {
        return Err(Error::input("zeta needs n >= 1"));
    }
    let sets = shadows(g, x, z, 4 * n, (n + 1)..=(2 * n))?;
    let parts = sets.iter().map(|s| xi(s)).collect::<Result<Vec<_>>>()?;
    let c = rat(1, n as i64);
    ProbMeasure::convex_combination(parts.iter().map(|m| (c.clone(), m)))
}

/// A point of `V(K)` or of the (proxied) boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum XPoint {
    Vertex(VertexId),
    Boundary(BoundaryProxy),
}

/// Point mass for vertices, `zeta^n_{o,z}` for boundary points.
pub fn zeta_point(g: &Graph, o: VertexId, p: &XPoint, n: u32) -> Result<VertexMeasure> {
    match p {
        XPoint::Vertex(v) => {
            g.check_vertex(*v)?;
            Ok(ProbMeasure::point_mass(*v))
        }
        XPoint::Boundary(z) => zeta(g, o, z, n),
    }
}

/// The lexicographically first geodesic from `x` to the proxy target.
pub fn reference_geodesic(g: &Graph, x: VertexId, z: &BoundaryProxy) -> Result<Path> {
    let set = all_geodesics(g, x, z.target, 1)?;
    Ok(set.paths.into_iter().next().expect("connected graph"))
}

/// Max of `|C(e, 6 delta)|` over the edges of `alpha([l-k-delta, l+k+delta])`
/// for the reference geodesic `alpha` from `x`.
pub fn window_fineness(g: &Graph, x: VertexId, z: &BoundaryProxy, l: u32, k: u32, delta: u32, cap: u64) -> Result<u64> {
    let alpha = reference_geodesic(g, x, z)?;
    let n = (6 * delta) as usize;
    let mut best = 0;
    for e in window_edges(&alpha, l, k, delta) {
        if n < 3 {
            break;
        }
        let (c, truncated) = count_circuits(g, e, n, cap)?;
        if truncated {
            return Err(Error::cert(format!("circuit count through {e} exceeded cap {cap}")));
        }
        best = best.max(c);
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinBound {
    pub size: u64,
    pub analytic_bound: u64,
    pub ok: bool,
}

/// `(2(k+delta)+1) + 2(k+delta) * m6d * 6 delta`: the on-geodesic window plus
/// the circuit cover of the off-geodesic shadow vertices.
pub fn analytic_bound(k: u32, delta: u32, m6d: u64) -> u64 {
    let w = 2 * (k as u64 + delta as u64);
    (w + 1) + w * m6d * 6 * delta as u64
}

/// Constant `C` with `analytic_bound(k) <= C k` for every `k >= 1`.
pub fn analytic_lin_constant(delta: u32, m6d: u64) -> u64 {
    analytic_bound(1, delta, m6d)
}

pub fn lin_bound_check(g: &Graph, x: VertexId, z: &BoundaryProxy, l: u32, k: u32, delta: u32, m6d: u64) -> Result<LinBound> {
    if l <= k + delta {
        return Err(Error::input(format!("need l > k + delta, got l={l}, k={k}, delta={delta}")));
    }
    let size = shadow(g, x, z, l, k)?.len() as u64;
    let analytic_bound = analytic_bound(k, delta, m6d);
    Ok(LinBound {
        size,
        analytic_bound,
        ok: size <= analytic_bound,
    })
}

/// Largest `|S| / k` over `(size, k)` samples with `k >= 1`.
pub fn empirical_lin_constant(samples: impl IntoIterator<Item = (u64, u32)>) -> Option<Rational> {
    samples
        .into_iter()
        .filter(|&(_, k)| k > 0)
        .map(|(s, k)| rat(s as i64, k as i64))
        .max()
}

#[derive(Clone, Debug, PartialEq)]
pub struct AveDeficiency {
    pub d: u32,
    pub value: Rational,
    pub bound: f64,
    pub pass: bool,
}

/// Slack subtracted from the floating-point bound before comparing.
pub const BOUND_SLACK: f64 = 1.0 / (1u64 << 40) as f64;

/// `2 (1 - (3 C n)^(-2d/n))`.
pub fn decay_bound(c: &Rational, n: u32, d: u32) -> f64 {
    if d == 0 {
        return 0.0;
    }
    let c = c.to_f64().unwrap_or(f64::INFINITY);
    let base = 3.0 * c * n as f64;
    2.0 * (1.0 - base.powf(-2.0 * d as f64 / n as f64))
}

/// `value <= bound` with the bound rounded down by [`BOUND_SLACK`]; exact when
/// `d = 0`.
pub fn within_bound(value: &Rational, bound: f64, d: u32) -> bool {
    if d == 0 {
        return value.is_zero();
    }
    let lowered = bound - BOUND_SLACK;
    lowered.is_finite() && lowered >= 0.0 && *value <= rational_from_f64(lowered)
}

/// `||zeta^n_{x,z} - zeta^n_{x2,z}||_1` against `2 (1 - (3 C n)^(-2d/n))`.
pub fn ave_deficiency(g: &Graph, x: VertexId, x2: VertexId, z: &BoundaryProxy, n: u32, c: &Rational, delta: u32) -> Result<AveDeficiency> {
    let d = g.distance(x, x2)?;
    if n < d + delta {
        return Err(Error::input(format!("need n >= d + delta, got n={n}, d={d}, delta={delta}")));
    }
    if *c <= Rational::zero() {
        return Err(Error::input("C must be positive"));
    }
    let a = zeta(g, x, z, n)?;
    let b = zeta(g, x2, z, n)?;
    let value = a.l1_distance(&b);
    let bound = decay_bound(c, n, d);
    let pass = within_bound(&value, bound, d);
    Ok(AveDeficiency { d, value, bound, pass })
}

/// Whether some geodesic from `x` to `w` passes through `y`.
pub fn in_t(g: &Graph, x: VertexId, y: VertexId, w: VertexId) -> Result<bool> {
    Ok(g.distance(x, y)? + g.distance(y, w)? == g.distance(x, w)?)
}

/// The candidates `w` such that no geodesic from `x` to `w` meets `A - {x}`.
pub fn m_neighborhood(g: &Graph, x: VertexId, a: &[VertexId], candidates: &[VertexId]) -> Result<Vec<VertexId>> {
    g.check_vertex(x)?;
    let dx = g.dist_row(x);
    let blockers: Vec<(VertexId, std::sync::Arc<[u32]>)> = a
        .iter()
        .filter(|&&y| y != x)
        .map(|&y| g.check_vertex(y).map(|_| (y, g.dist_row(y))))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for &w in candidates {
        g.check_vertex(w)?;
        if blockers.iter().all(|(y, dy)| dx[*y] + dy[w] != dx[w]) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Edges of `alpha([l-k-delta, l+k+delta])`.
pub fn window_edges(alpha: &Path, l: u32, k: u32, delta: u32) -> Vec<Edge> {
    alpha.edges_between(l.saturating_sub(k + delta) as usize, (l + k + delta) as usize)
}
