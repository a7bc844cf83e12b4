//! Batch drivers behind the command-line tool: graph analysis, the shadow
//! decay experiment and the amenability pipeline. Every driver returns its
//! CSV as a string so reruns can be compared byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::action::{build_nu, combine_mu, equivariance_deficiency, nu_deficiency, ActionData, GroupMeasure, NuMap, YSpace};
use crate::boundary::{
    analytic_lin_constant, ave_deficiency, empirical_lin_constant, reference_geodesic, shadows, window_edges, zeta_point,
    BoundaryProxy, VertexMeasure, XPoint,
};
use crate::error::{Error, Result};
use crate::fineness::{count_circuits, fineness_profile};
use crate::geodesic::{all_geodesics, thinness_defect};
use crate::graph::{Edge, Graph, VertexId};
use crate::group::GroupElement;
use crate::measure::Rational;
use crate::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Cap on circuit counts used when deriving fineness constants.
pub const CIRCUIT_CAP: u64 = 10_000_000;

/// How a boundary proxy is chosen on a loaded graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProxySpec {
    /// The first `len` steps of the lexicographically first geodesic from the
    /// origin toward `toward`, or toward the farthest vertex (smallest id
    /// among ties) when `toward` is absent.
    Ray { len: u32, toward: Option<String> },
    Far(String),
}

impl std::str::FromStr for ProxySpec {
    type Err = Error;

    /// `ray:<len>`, `ray:<len>:<vertex>` or `far:<vertex>`.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("ray:") {
            let (len, toward) = match rest.split_once(':') {
                Some((l, t)) => (l, Some(t.to_string())),
                None => (rest, None),
            };
            let len = len.parse().map_err(|_| Error::input(format!("bad ray length in {s:?}")))?;
            return Ok(ProxySpec::Ray { len, toward });
        }
        if let Some(v) = s.strip_prefix("far:") {
            return Ok(ProxySpec::Far(v.to_string()));
        }
        Err(Error::input(format!("proxy spec {s:?} must be ray:<len>[:<vertex>] or far:<vertex>")))
    }
}

impl std::fmt::Display for ProxySpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProxySpec::Ray { len, toward: None } => write!(f, "ray:{len}"),
            ProxySpec::Ray { len, toward: Some(t) } => write!(f, "ray:{len}:{t}"),
            ProxySpec::Far(v) => write!(f, "far:{v}"),
        }
    }
}

impl ProxySpec {
    pub fn build(&self, g: &Graph, origin: VertexId, validity_radius: u32) -> Result<BoundaryProxy> {
        match self {
            ProxySpec::Far(v) => BoundaryProxy::far_vertex(g, origin, g.resolve(v)?, validity_radius),
            ProxySpec::Ray { len, toward } => {
                let target = match toward {
                    Some(t) => g.resolve(t)?,
                    None => {
                        let row = g.dist_row(origin);
                        let far = *row.iter().max().expect("nonempty graph");
                        row.iter().position(|&d| d == far).expect("max exists")
                    }
                };
                let path = all_geodesics(g, origin, target, 1)?.paths.remove(0);
                if path.len() < *len as usize {
                    return Err(Error::cert(format!(
                        "no geodesic ray of length {len} from {} toward {}: distance is {}",
                        g.name(origin),
                        g.name(target),
                        path.len()
                    )));
                }
                let prefix = Path::new(path.vertices()[..=*len as usize].to_vec())?;
                BoundaryProxy::ray(g, prefix, validity_radius)
            }
        }
    }
}

/// The linear shadow constant `C` used in the decay bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinConstant {
    /// Derived from the circuit-cover bound at `k = 1`.
    Analytic,
    Fixed(Rational),
}

impl std::str::FromStr for LinConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "analytic" {
            return Ok(LinConstant::Analytic);
        }
        let r: Rational = s.parse().map_err(|_| Error::input(format!("bad constant {s:?}")))?;
        if r <= Rational::zero() {
            return Err(Error::input("the constant must be positive"));
        }
        Ok(LinConstant::Fixed(r))
    }
}

impl std::fmt::Display for LinConstant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LinConstant::Analytic => write!(f, "analytic"),
            LinConstant::Fixed(r) => write!(f, "{r}"),
        }
    }
}

/// Sizes the global worker pool. Only the first call has an effect.
pub fn set_jobs(jobs: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
}

fn fmt_bound(b: f64) -> String {
    format!("{b:.15}")
}

/// Seeded pairs `(x, x2)`: `x` uniform in the ball of radius `radius` around
/// `origin`, `x2` uniform at distance `d` from `x` with `d` drawn from `dists`.
pub fn sample_pairs(g: &Graph, origin: VertexId, radius: u32, dists: &[u32], count: usize, seed: u64) -> Result<Vec<(VertexId, VertexId)>> {
    if dists.is_empty() {
        return Err(Error::input("no pair distances given"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ball = g.ball(origin, radius)?;
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 100 * count + 100 {
            return Err(Error::input("could not sample pairs at the requested distances"));
        }
        let x = *ball.choose(&mut rng).expect("ball contains its centre");
        let d = *dists.choose(&mut rng).expect("nonempty");
        let row = g.bfs_within(x, d);
        let sphere: Vec<VertexId> = row.iter().enumerate().filter(|(_, &e)| e == d).map(|(v, _)| v).collect();
        if let Some(&x2) = sphere.choose(&mut rng) {
            out.push((x, x2));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct AnalyzeReport {
    pub n: usize,
    pub radius: u32,
    pub base: VertexId,
    pub defect: u32,
    pub sup: u64,
    pub interior_sup: Option<u64>,
    pub truncated: bool,
    pub profile_csv: String,
    pub text: String,
}

/// Thinness defect around `base` and the fineness profile at scale `n`.
pub fn analyze(g: &Graph, n: usize, radius: u32, base: VertexId, cap: u64) -> Result<AnalyzeReport> {
    let thin = thinness_defect(g, base, radius)?;
    let prof = fineness_profile(g, n, cap)?;
    let mut text = String::new();
    let _ = writeln!(text, "vertices {}", g.num_vertices());
    let _ = writeln!(text, "edges {}", g.num_edges());
    let _ = writeln!(text, "thinness_defect {} (base {}, radius {radius}, delta {})", thin.defect, g.name(base), thin.delta());
    let _ = writeln!(text, "fineness_sup n={n} {}", prof.sup);
    match prof.interior_sup {
        Some(s) => {
            let _ = writeln!(text, "fineness_interior_sup n={n} {s}");
        }
        None => {
            let _ = writeln!(text, "fineness_interior_sup n={n} none");
        }
    }
    let _ = writeln!(text, "truncated {}", prof.truncated);
    Ok(AnalyzeReport {
        n,
        radius,
        base,
        defect: thin.defect,
        sup: prof.sup,
        interior_sup: prof.interior_sup,
        truncated: prof.truncated,
        profile_csv: prof.to_csv(),
        text,
    })
}

#[derive(Clone, Debug)]
pub struct DecayConfig {
    pub graph_name: String,
    pub proxy: ProxySpec,
    pub origin: VertexId,
    pub pairs: Vec<(VertexId, VertexId)>,
    pub n_grid: Vec<u32>,
    pub lin_c: LinConstant,
    /// Thinness constant; computed from the thinness defect when absent.
    pub delta: Option<u32>,
    pub delta_radius: u32,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecayRow {
    pub x: VertexId,
    pub x2: VertexId,
    pub d: u32,
    pub n: u32,
    pub value: Rational,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct DecayReport {
    pub delta: u32,
    pub m6d: u64,
    pub c: Rational,
    pub c_empirical: Option<Rational>,
    pub rows: Vec<DecayRow>,
    /// `(n, max value over pairs)` in grid order.
    pub summary: Vec<(u32, Rational)>,
    pub skipped: Vec<((VertexId, VertexId), u32)>,
    pub all_pass: bool,
    pub csv: String,
}

/// Max of `|C(e, 6 delta)|` over `edges`, failing if any count hits the cap.
fn window_max_fineness(g: &Graph, edges: &BTreeSet<Edge>, delta: u32) -> Result<u64> {
    let n = (6 * delta) as usize;
    if n < 3 {
        return Ok(0);
    }
    let counts = edges
        .par_iter()
        .map(|&e| {
            let (c, truncated) = count_circuits(g, e, n, CIRCUIT_CAP)?;
            if truncated {
                return Err(Error::cert(format!("circuit count through {e} exceeded cap {CIRCUIT_CAP}")));
            }
            Ok(c)
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(counts.into_iter().max().unwrap_or(0))
}

pub fn run_decay(g: &Graph, cfg: &DecayConfig) -> Result<DecayReport> {
    if cfg.n_grid.is_empty() || cfg.pairs.is_empty() {
        return Err(Error::input("decay needs a nonempty n grid and at least one pair"));
    }
    let mut radius = 0;
    for &(x, x2) in &cfg.pairs {
        radius = radius.max(g.distance(cfg.origin, x)?).max(g.distance(cfg.origin, x2)?);
    }
    let z = cfg.proxy.build(g, cfg.origin, radius)?;
    let delta = match cfg.delta {
        Some(d) => d,
        None => thinness_defect(g, cfg.origin, cfg.delta_radius)?.delta(),
    };
    let max_d = cfg.pairs.iter().map(|&(x, x2)| g.distance(x, x2)).collect::<Result<Vec<_>>>()?;
    let max_d = max_d.into_iter().max().unwrap_or(0);

    // Fineness near the reference geodesics covers every shadow in the grid.
    let points: BTreeSet<VertexId> = cfg.pairs.iter().flat_map(|&(x, x2)| [x, x2]).collect();
    let mut window: BTreeSet<Edge> = BTreeSet::new();
    let mut sizes = Vec::new();
    for &x in &points {
        let alpha = reference_geodesic(g, x, &z)?;
        for &n in &cfg.n_grid {
            window.extend(window_edges(&alpha, 4 * n, 2 * n + max_d, delta));
            let sets = shadows(g, x, &z, 4 * n, (n + 1)..=(2 * n))?;
            sizes.extend(sets.iter().zip(n + 1..).map(|(s, k)| (s.len() as u64, k)));
        }
    }
    let m6d = window_max_fineness(g, &window, delta)?;
    let c = match &cfg.lin_c {
        LinConstant::Analytic => Rational::from_integer(analytic_lin_constant(delta, m6d).into()),
        LinConstant::Fixed(r) => r.clone(),
    };
    let c_empirical = empirical_lin_constant(sizes);

    // Combinations with n < d + delta are outside the bound's range and are skipped.
    let mut jobs: Vec<((VertexId, VertexId), u32)> = Vec::new();
    let mut skipped: Vec<((VertexId, VertexId), u32)> = Vec::new();
    for &(x, x2) in &cfg.pairs {
        let d = g.distance(x, x2)?;
        for &n in &cfg.n_grid {
            if n >= d + delta {
                jobs.push(((x, x2), n));
            } else {
                skipped.push(((x, x2), n));
            }
        }
    }
    if jobs.is_empty() {
        return Err(Error::input(format!("no pair and n with n >= d + delta (delta = {delta})")));
    }
    let rows = jobs
        .par_iter()
        .map(|&((x, x2), n)| {
            let r = ave_deficiency(g, x, x2, &z, n, &c, delta)?;
            Ok(DecayRow {
                x,
                x2,
                d: r.d,
                n,
                value: r.value,
                bound: r.bound,
                pass: r.pass,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let summary: Vec<(u32, Rational)> = cfg
        .n_grid
        .iter()
        .filter(|&&n| rows.iter().any(|r| r.n == n))
        .map(|&n| {
            let m = rows.iter().filter(|r| r.n == n).map(|r| r.value.clone()).max().unwrap_or_else(Rational::zero);
            (n, m)
        })
        .collect();
    let all_pass = rows.iter().all(|r| r.pass);

    let proxy = z.describe(g);
    let mut csv = String::new();
    let _ = writeln!(csv, "# finehyp {VERSION} decay");
    let pairs: Vec<String> = cfg.pairs.iter().map(|&(x, x2)| format!("{}:{}", g.name(x), g.name(x2))).collect();
    let grid: Vec<String> = cfg.n_grid.iter().map(|n| n.to_string()).collect();
    let _ = writeln!(
        csv,
        "# config graph={} proxy={} origin={} validity_radius={radius} pairs={} n_grid={} lin_c={} delta={} delta_radius={}",
        cfg.graph_name,
        cfg.proxy,
        g.name(cfg.origin),
        pairs.join(","),
        grid.join(","),
        cfg.lin_c,
        cfg.delta.map_or_else(|| "auto".to_string(), |d| d.to_string()),
        cfg.delta_radius
    );
    let _ = writeln!(csv, "# seed {}", cfg.seed);
    let _ = writeln!(
        csv,
        "# delta={delta} m6d={m6d} C={c} C_empirical={}",
        c_empirical.as_ref().map_or_else(|| "none".to_string(), |r| r.to_string())
    );
    for ((x, x2), n) in &skipped {
        let _ = writeln!(csv, "# skipped {}:{} n={n} (n < d + delta)", g.name(*x), g.name(*x2));
    }
    csv.push_str("graph,proxy,x,x2,d,n,C,value_num,value_den,bound,pass\n");
    for r in &rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{}",
            cfg.graph_name,
            proxy,
            g.name(r.x),
            g.name(r.x2),
            r.d,
            r.n,
            c,
            r.value.numer(),
            r.value.denom(),
            fmt_bound(r.bound),
            r.pass
        );
    }
    for (n, m) in &summary {
        let of_n: Vec<&DecayRow> = rows.iter().filter(|r| r.n == *n).collect();
        let bound = of_n.iter().map(|r| r.bound).fold(f64::INFINITY, f64::min);
        let pass = of_n.iter().all(|r| r.pass);
        let _ = writeln!(
            csv,
            "{},{},max,,{},{},{},{},{},{},{}",
            cfg.graph_name,
            proxy,
            max_d,
            n,
            c,
            m.numer(),
            m.denom(),
            fmt_bound(bound),
            pass
        );
    }
    Ok(DecayReport {
        delta,
        m6d,
        c,
        c_empirical,
        rows,
        summary,
        skipped,
        all_pass,
        csv,
    })
}

#[derive(Clone, Debug)]
pub struct AmenabilityConfig {
    pub graph_name: String,
    pub proxy: ProxySpec,
    pub origin: VertexId,
    pub n: u32,
    /// Words for the finite set `E`.
    pub e: Vec<String>,
    pub y: String,
    pub epsilon_nu: Rational,
    pub word_radius: u64,
    /// Vertex points of `X` sampled besides the boundary proxy.
    pub vertex_samples: usize,
    /// Vertex samples are drawn from this ball around the origin.
    pub sample_radius: u32,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct AmenabilityReport {
    pub eps_zeta: Rational,
    pub eps_nu: Rational,
    pub deficiency: Rational,
    pub bound: Rational,
    pub pass: bool,
    pub nus: BTreeMap<VertexId, NuMap>,
    pub e_v: BTreeMap<VertexId, Vec<GroupElement>>,
    /// `mu` at the boundary proxy and `y = 0`.
    pub mu_boundary: GroupMeasure,
    pub csv: String,
}

fn point_name(g: &Graph, p: &XPoint) -> String {
    match p {
        XPoint::Vertex(v) => g.name(*v),
        XPoint::Boundary(_) => "boundary".to_string(),
    }
}

pub fn run_amenability(g: &Graph, ad: &ActionData, cfg: &AmenabilityConfig) -> Result<AmenabilityReport> {
    let group = &ad.group;
    let e: Vec<GroupElement> = cfg.e.iter().map(|w| group.parse(w)).collect::<Result<_>>()?;
    if e.is_empty() {
        return Err(Error::input("E must be nonempty"));
    }
    let y_space = YSpace::parse(&cfg.y, group)?;
    // The proxy must stay certified at the origin after every translation.
    let mut radius = 0;
    for s in &e {
        radius = radius.max(g.distance(cfg.origin, ad.act(g, s, cfg.origin)?)?);
    }
    let z = cfg.proxy.build(g, cfg.origin, radius)?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ball = g.ball(cfg.origin, cfg.sample_radius)?;
    let mut picked: Vec<VertexId> = ball.choose_multiple(&mut rng, cfg.vertex_samples.min(ball.len())).copied().collect();
    picked.sort_unstable();
    let mut xs = vec![XPoint::Boundary(z.clone())];
    xs.extend(picked.iter().map(|&v| XPoint::Vertex(v)));
    let samples: Vec<(XPoint, usize)> = xs
        .iter()
        .flat_map(|x| (0..y_space.len()).map(move |y| (x.clone(), y)))
        .collect();

    let zeta_of = |p: &XPoint| zeta_point(g, cfg.origin, p, cfg.n);

    // eps_zeta and the support F.
    let mut eps_zeta = Rational::zero();
    let mut support: BTreeSet<VertexId> = BTreeSet::new();
    let mut zeta_rows = Vec::new();
    for x in &xs {
        let zx = zeta_of(x)?;
        support.extend(zx.support().copied());
        for s in &e {
            let moved = ad.push_vertex_measure(g, s, &zx)?;
            let there = zeta_of(&ad.translate_point(g, s, x)?)?;
            let d = moved.l1_distance(&there);
            zeta_rows.push((s.clone(), point_name(g, x), d.clone()));
            if d > eps_zeta {
                eps_zeta = d;
            }
        }
    }
    let f: Vec<VertexId> = support.into_iter().collect();

    let mut nus = BTreeMap::new();
    let mut e_v = BTreeMap::new();
    let mut eps_nu = Rational::zero();
    let mut nu_rows = Vec::new();
    for &v in &ad.fundamental_domain {
        let ev = ad.e_v_set(g, &e, &f, v)?;
        let nu = build_nu(g, ad, v, &ev, &cfg.epsilon_nu, &y_space, cfg.word_radius)?;
        for s in &ev {
            let d = nu_deficiency(ad, &nu, std::slice::from_ref(s), &y_space);
            nu_rows.push((s.clone(), g.name(v), d.clone()));
            if d > eps_nu {
                eps_nu = d;
            }
        }
        e_v.insert(v, ev);
        nus.insert(v, nu);
    }

    let mu = |x: &XPoint, y: usize| -> Result<GroupMeasure> {
        let zx: VertexMeasure = zeta_of(x)?;
        combine_mu(ad, &zx, &nus, &y_space, y)
    };
    let mut mu_rows = Vec::new();
    for (x, y) in &samples {
        for s in &e {
            let d = equivariance_deficiency(g, ad, &y_space, mu, std::slice::from_ref(s), &[(x.clone(), *y)])?;
            mu_rows.push((s.clone(), point_name(g, x), *y, d));
        }
    }
    let deficiency = mu_rows.iter().map(|r| r.3.clone()).max().unwrap_or_else(Rational::zero);
    let bound = &eps_zeta + &eps_nu;
    let pass = deficiency <= bound;
    let mu_boundary = mu(&xs[0], 0)?;

    let mut csv = String::new();
    let _ = writeln!(csv, "# finehyp {VERSION} amenability");
    let _ = writeln!(
        csv,
        "# config graph={} proxy={} origin={} validity_radius={radius} n={} E={} Y={} epsilon_nu={} word_radius={} vertex_samples={} sample_radius={}",
        cfg.graph_name,
        cfg.proxy,
        g.name(cfg.origin),
        cfg.n,
        cfg.e.join(","),
        cfg.y,
        cfg.epsilon_nu,
        cfg.word_radius,
        cfg.vertex_samples,
        cfg.sample_radius
    );
    let _ = writeln!(csv, "# seed {}", cfg.seed);
    for (v, ev) in &e_v {
        let names: Vec<String> = ev.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(csv, "# E^v v={} {{{}}}", g.name(*v), names.join(" "));
    }
    let _ = writeln!(csv, "# mu boundary y=0 {}", mu_boundary.serialize());
    csv.push_str("metric,s,x,y,value_num,value_den\n");
    for (s, x, d) in &zeta_rows {
        let _ = writeln!(csv, "zeta,{s},{x},,{},{}", d.numer(), d.denom());
    }
    for (s, v, d) in &nu_rows {
        let _ = writeln!(csv, "nu,{s},{v},,{},{}", d.numer(), d.denom());
    }
    for (s, x, y, d) in &mu_rows {
        let _ = writeln!(csv, "mu,{s},{x},{y},{},{}", d.numer(), d.denom());
    }
    for (name, r) in [("eps_zeta", &eps_zeta), ("eps_nu", &eps_nu), ("deficiency", &deficiency), ("bound", &bound)] {
        let _ = writeln!(csv, "{name},,,,{},{}", r.numer(), r.denom());
    }
    Ok(AmenabilityReport {
        eps_zeta,
        eps_nu,
        deficiency,
        bound,
        pass,
        nus,
        e_v,
        mu_boundary,
        csv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{bass_serre_tree, regular_tree_tube};

    #[test]
    fn proxy_specs() {
        assert_eq!("ray:12".parse::<ProxySpec>().unwrap(), ProxySpec::Ray { len: 12, toward: None });
        assert_eq!("ray:3:1/0".parse::<ProxySpec>().unwrap().to_string(), "ray:3:1/0");
        assert_eq!("far:7".parse::<ProxySpec>().unwrap(), ProxySpec::Far("7".into()));
        assert!("line:7".parse::<ProxySpec>().is_err());
        assert_eq!("3/2".parse::<LinConstant>().unwrap().to_string(), "3/2");
        assert!("-1".parse::<LinConstant>().is_err());
    }

    #[test]
    fn tube_decay_is_deterministic_and_passes() {
        let (g, spine) = regular_tree_tube(3, 40, 2).unwrap();
        let end = spine.end().to_string();
        let cfg = DecayConfig {
            graph_name: "tube".into(),
            proxy: ProxySpec::Ray { len: 40, toward: Some(end) },
            origin: 0,
            pairs: vec![(0, spine.at(41).unwrap()), (0, 0)],
            n_grid: vec![2, 4],
            lin_c: LinConstant::Analytic,
            delta: None,
            delta_radius: 2,
            seed: 1,
        };
        let a = run_decay(&g, &cfg).unwrap();
        let b = run_decay(&g, &cfg).unwrap();
        assert_eq!(a.csv, b.csv);
        assert!(a.all_pass);
        assert_eq!((a.delta, a.m6d), (1, 0));
        assert!(a.summary[1].1 < a.summary[0].1);
    }

    #[test]
    fn bass_serre_pipeline() {
        let (g, ad, ray) = bass_serre_tree(2, 3, 6, 22).unwrap();
        let end = ray.unwrap().end();
        let cfg = AmenabilityConfig {
            graph_name: "bs".into(),
            proxy: ProxySpec::Ray { len: 22, toward: Some(g.name(end)) },
            origin: 0,
            n: 2,
            e: vec!["a".into(), "b".into()],
            y: "singleton".into(),
            epsilon_nu: crate::measure::rat(1, 10),
            word_radius: 3,
            vertex_samples: 3,
            sample_radius: 3,
            seed: 7,
        };
        let r = run_amenability(&g, &ad, &cfg).unwrap();
        assert!(r.eps_nu.is_zero());
        assert!(r.pass, "{} > {}", r.deficiency, r.bound);
        assert_eq!(r.mu_boundary.total_mass(), crate::measure::rat(1, 1));
    }
}
