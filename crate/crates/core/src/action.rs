//! Group actions on graphs with finite quotient and the measure combiner.
//!
//! An action is given by one vertex map per generator. On a truncation the
//! maps are partial: a vertex whose image falls outside the truncation maps
//! to `None`, and evaluating a word through it is a certification failure.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::boundary::{VertexMeasure, XPoint};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::group::{FreeProduct, GroupElement};
use crate::measure::{rat, ProbMeasure, Rational};

pub type GroupMeasure = ProbMeasure<GroupElement>;

#[derive(Clone, Debug)]
pub struct ActionData {
    pub group: FreeProduct,
    /// `forward[i][v]`: image of `v` under the i-th generator.
    forward: Vec<Vec<Option<VertexId>>>,
    backward: Vec<Vec<Option<VertexId>>>,
    pub fundamental_domain: Vec<VertexId>,
    project: Vec<VertexId>,
    sigma: Vec<GroupElement>,
}

impl ActionData {
    /// Assembles and validates an action. `maps[i]` belongs to the i-th
    /// factor of `group`.
    pub fn new(
        g: &Graph,
        group: FreeProduct,
        maps: Vec<Vec<Option<VertexId>>>,
        fundamental_domain: Vec<VertexId>,
        project: Vec<VertexId>,
        sigma: Vec<GroupElement>,
    ) -> Result<Self> {
        let n = g.num_vertices();
        if maps.len() != group.factors().len() {
            return Err(Error::invariant("one vertex map per generator is required"));
        }
        if maps.iter().any(|m| m.len() != n) || project.len() != n || sigma.len() != n {
            return Err(Error::invariant("action tables must cover every vertex"));
        }
        let mut backward = vec![vec![None; n]; maps.len()];
        for (i, m) in maps.iter().enumerate() {
            for (v, img) in m.iter().enumerate() {
                if let Some(w) = *img {
                    g.check_vertex(w)?;
                    if backward[i][w].replace(v).is_some() {
                        let c = group.factors()[i].0;
                        return Err(Error::invariant(format!("generator {c} is not injective at {}", g.name(w))));
                    }
                }
            }
        }
        let ad = ActionData {
            group,
            forward: maps,
            backward,
            fundamental_domain,
            project,
            sigma,
        };
        ad.validate(g)?;
        Ok(ad)
    }

    /// The trivial group acting trivially.
    pub fn trivial(g: &Graph) -> Self {
        let n = g.num_vertices();
        ActionData {
            group: FreeProduct::trivial(),
            forward: Vec::new(),
            backward: Vec::new(),
            fundamental_domain: g.vertices().collect(),
            project: g.vertices().collect(),
            sigma: vec![GroupElement::identity(); n],
        }
    }

    fn index(&self, c: char) -> Result<usize> {
        self.group
            .factors()
            .iter()
            .position(|(d, _)| *d == c)
            .ok_or_else(|| Error::input(format!("unknown generator {c}")))
    }

    pub fn generator_map(&self, c: char) -> Result<&[Option<VertexId>]> {
        Ok(&self.forward[self.index(c)?])
    }

    pub fn project_v(&self, a: VertexId) -> VertexId {
        self.project[a]
    }

    pub fn sigma(&self, a: VertexId) -> &GroupElement {
        &self.sigma[a]
    }

    fn step(&self, g: &Graph, i: usize, inverse: bool, v: VertexId) -> Result<VertexId> {
        let table = if inverse { &self.backward[i] } else { &self.forward[i] };
        table[v].ok_or_else(|| {
            let c = self.group.factors()[i].0;
            let c = if inverse { c.to_ascii_uppercase() } else { c };
            Error::cert(format!("generator {c} moves {} outside the truncation", g.name(v)))
        })
    }

    /// `s . a`, applying the letters of `s` from right to left.
    pub fn act(&self, g: &Graph, s: &GroupElement, a: VertexId) -> Result<VertexId> {
        g.check_vertex(a)?;
        let mut v = a;
        for &(c, e) in s.syllables().iter().rev() {
            let i = self.index(c)?;
            for _ in 0..e.unsigned_abs() {
                v = self.step(g, i, e < 0, v)?;
            }
        }
        Ok(v)
    }

    /// Checks the automorphism, orbit-decomposition and projection-invariance
    /// conditions, reporting the first violation.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for (i, &(c, p)) in self.group.factors().iter().enumerate() {
            let m = &self.forward[i];
            for e in g.edges() {
                if let (Some(x), Some(y)) = (m[e.u()], m[e.v()]) {
                    if !g.has_edge(x, y) {
                        return Err(Error::invariant(format!("generator {c} does not preserve edge {e}")));
                    }
                }
            }
            if p > 0 {
                for v in g.vertices() {
                    let mut w = Some(v);
                    for _ in 0..p {
                        w = w.and_then(|w| m[w]);
                    }
                    if let Some(w) = w {
                        if w != v {
                            return Err(Error::invariant(format!("generator {c} does not have order {p} at {}", g.name(v))));
                        }
                    }
                }
            }
        }
        let domain: BTreeSet<VertexId> = self.fundamental_domain.iter().copied().collect();
        if domain.len() != self.fundamental_domain.len() {
            return Err(Error::invariant("fundamental domain repeats a vertex"));
        }
        for &v in &domain {
            g.check_vertex(v)?;
            if self.project[v] != v {
                return Err(Error::invariant(format!("domain vertex {} does not project to itself", g.name(v))));
            }
        }
        for a in g.vertices() {
            let v = self.project[a];
            if !domain.contains(&v) {
                return Err(Error::invariant(format!("{} projects outside the fundamental domain", g.name(a))));
            }
            let back = self
                .act(g, &self.sigma[a], v)
                .map_err(|e| Error::invariant(format!("sigma({}) cannot be evaluated: {e}", g.name(a))))?;
            if back != a {
                return Err(Error::invariant(format!("sigma({}) v({}) is {}, not {}", g.name(a), g.name(a), g.name(back), g.name(a))));
            }
            for (i, &(c, _)) in self.group.factors().iter().enumerate() {
                if let Some(w) = self.forward[i][a] {
                    if self.project[w] != v {
                        return Err(Error::invariant(format!("projection is not {c}-invariant at {}", g.name(a))));
                    }
                }
            }
        }
        Ok(())
    }

    /// Moves an X-point by `s`.
    pub fn translate_point(&self, g: &Graph, s: &GroupElement, x: &XPoint) -> Result<XPoint> {
        match x {
            XPoint::Vertex(v) => Ok(XPoint::Vertex(self.act(g, s, *v)?)),
            XPoint::Boundary(z) => Ok(XPoint::Boundary(z.translate(g, |v| self.act(g, s, v))?)),
        }
    }

    /// Push-forward `s . mu` of a vertex measure.
    pub fn push_vertex_measure(&self, g: &Graph, s: &GroupElement, mu: &VertexMeasure) -> Result<VertexMeasure> {
        mu.try_map_keys(|&v| self.act(g, s, v))
    }

    /// Group elements of word length `<= word_radius` fixing `a`.
    pub fn stabilizer(&self, g: &Graph, a: VertexId, word_radius: u64) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        for s in self.group.elements_up_to(word_radius) {
            if self.act(g, &s, a)? == a {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// `E^v = { sigma(sa)^-1 s sigma(a) : a in F with v(a) = v, s in E }`.
    pub fn e_v_set(&self, g: &Graph, e: &[GroupElement], f: &[VertexId], v: VertexId) -> Result<Vec<GroupElement>> {
        if !self.fundamental_domain.contains(&v) {
            return Err(Error::input(format!("{} is not in the fundamental domain", g.name(v))));
        }
        let mut out = BTreeSet::new();
        for &a in f {
            g.check_vertex(a)?;
            if self.project[a] != v {
                continue;
            }
            for s in e {
                let sa = self.act(g, s, a)?;
                let t = self.group.mul(
                    &self.group.inv(&self.sigma[sa]),
                    &self.group.mul(s, &self.sigma[a]),
                );
                if self.act(g, &t, v)? != v {
                    return Err(Error::invariant(format!("sigma({})^-1 {s} sigma({}) = {t} does not fix {}", g.name(sa), g.name(a), g.name(v))));
                }
                out.insert(t);
            }
        }
        Ok(out.into_iter().collect())
    }
}

/// A finite set with a left action of the group, used as the second factor
/// of the diagonal action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YSpace {
    Singleton,
    /// `perms[i][y]`: image of `y` under the i-th generator.
    Perm { size: usize, perms: Vec<Vec<usize>> },
}

impl YSpace {
    /// Parses `singleton` or `perm:<n>:<images for gen 1>;<images for gen 2>...`
    /// with images comma separated.
    pub fn parse(spec: &str, group: &FreeProduct) -> Result<Self> {
        if spec == "singleton" {
            return Ok(YSpace::Singleton);
        }
        let rest = spec
            .strip_prefix("perm:")
            .ok_or_else(|| Error::input(format!("bad Y spec {spec:?}")))?;
        let (size, maps) = rest
            .split_once(':')
            .ok_or_else(|| Error::input(format!("bad Y spec {spec:?}")))?;
        let size: usize = size.parse().map_err(|_| Error::input(format!("bad Y size in {spec:?}")))?;
        let perms = maps
            .split(';')
            .map(|m| {
                m.split(',')
                    .map(|x| x.trim().parse::<usize>().map_err(|_| Error::input(format!("bad Y image {x:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        YSpace::perm(size, perms, group)
    }

    pub fn perm(size: usize, perms: Vec<Vec<usize>>, group: &FreeProduct) -> Result<Self> {
        if perms.len() != group.factors().len() {
            return Err(Error::input("Y needs one permutation per generator"));
        }
        for (p, &(c, order)) in perms.iter().zip(group.factors()) {
            let mut seen: Vec<usize> = p.clone();
            seen.sort_unstable();
            if seen != (0..size).collect::<Vec<_>>() {
                return Err(Error::input(format!("Y map for {c} is not a permutation of 0..{size}")));
            }
            if order > 0 {
                for y in 0..size {
                    let mut w = y;
                    for _ in 0..order {
                        w = p[w];
                    }
                    if w != y {
                        return Err(Error::input(format!("Y map for {c} does not have order dividing {order}")));
                    }
                }
            }
        }
        Ok(YSpace::Perm { size, perms })
    }

    pub fn len(&self) -> usize {
        match self {
            YSpace::Singleton => 1,
            YSpace::Perm { size, .. } => *size,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn act(&self, group: &FreeProduct, s: &GroupElement, y: usize) -> usize {
        match self {
            YSpace::Singleton => 0,
            YSpace::Perm { perms, .. } => {
                let mut y = y;
                for &(c, e) in s.syllables().iter().rev() {
                    let i = group.factors().iter().position(|(d, _)| *d == c).expect("group letter");
                    let p = &perms[i];
                    for _ in 0..e.unsigned_abs() {
                        y = if e > 0 {
                            p[y]
                        } else {
                            p.iter().position(|&w| w == y).expect("permutation")
                        };
                    }
                }
                y
            }
        }
    }
}

/// Left translate `s . mu`, i.e. `(s . mu)(t) = mu(s^-1 t)`.
pub fn translate_measure(group: &FreeProduct, s: &GroupElement, mu: &GroupMeasure) -> GroupMeasure {
    mu.map_keys(|t| group.mul(s, t))
}

/// How a stabilizer was recognized by [`build_nu`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabilizerKind {
    Finite(usize),
    /// Infinite cyclic, with its shortest generator.
    Cyclic(GroupElement),
}

/// The maps `y -> nu_y` for one domain vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuMap {
    pub v: VertexId,
    pub kind: StabilizerKind,
    /// One measure per point of `Y`.
    pub per_y: Vec<GroupMeasure>,
    /// Guaranteed bound on `max_{s in E^v, y} ||s nu_y - nu_{sy}||`.
    pub guarantee: Rational,
}

/// Almost-invariant measures on the stabilizer of `v` for the translations
/// in `ev`. Finite stabilizers get their uniform measure, which is exactly
/// invariant. An infinite cyclic stabilizer `<g>` gets the uniform measure
/// on `{g^j : 0 <= j < L}` with `L = ceil(2 max|m| / epsilon)` over
/// `ev = {g^m}`.
fn swap_case(c: char) -> char {
    if c.is_ascii_uppercase() {
        c.to_ascii_lowercase()
    } else {
        c.to_ascii_uppercase()
    }
}

pub fn build_nu(
    g: &Graph,
    ad: &ActionData,
    v: VertexId,
    ev: &[GroupElement],
    epsilon: &Rational,
    y: &YSpace,
    word_radius: u64,
) -> Result<NuMap> {
    if *epsilon <= Rational::zero() {
        return Err(Error::input("epsilon must be positive"));
    }
    let stab = ad.stabilizer(g, v, word_radius)?;
    let group = &ad.group;
    for s in ev {
        if ad.act(g, s, v)? != v {
            return Err(Error::input(format!("{s} does not fix {}", g.name(v))));
        }
    }
    let infinite: Vec<&GroupElement> = stab.iter().filter(|s| group.order(s).is_none()).collect();
    let (kind, measure, guarantee) = if infinite.is_empty() {
        let set: BTreeSet<&GroupElement> = stab.iter().collect();
        let closed = stab
            .iter()
            .all(|x| stab.iter().all(|y| set.contains(&group.mul(x, y))));
        if !closed {
            return Err(Error::input(format!(
                "stabilizer of {} is not closed within word radius {word_radius}",
                g.name(v)
            )));
        }
        if ev.iter().any(|s| !set.contains(s)) {
            return Err(Error::input("E^v is not inside the computed stabilizer"));
        }
        (
            StabilizerKind::Finite(stab.len()),
            ProbMeasure::uniform(stab.iter().cloned())?,
            Rational::zero(),
        )
    } else {
        // Shortest infinite-order element, preferring positive letters.
        let gen = infinite
            .iter()
            .min_by_key(|s| (s.word_len(), s.to_string().chars().map(swap_case).collect::<String>()))
            .map(|s| (*s).clone())
            .expect("nonempty");
        let mut max_m: i64 = 0;
        for s in ev {
            let m = cyclic_exponent(group, &gen, s, word_radius).ok_or_else(|| {
                Error::input(format!("{s} is not a power of the stabilizer generator {gen}"))
            })?;
            max_m = max_m.max(m.abs());
        }
        let l = (rat(2 * max_m, 1) / epsilon).ceil().to_integer();
        let l: i64 = l.try_into().map_err(|_| Error::input("Folner interval too long"))?;
        let l = l.max(1);
        let mut interval = Vec::with_capacity(l as usize);
        let mut cur = GroupElement::identity();
        for _ in 0..l {
            interval.push(cur.clone());
            cur = group.mul(&cur, &gen);
        }
        (
            StabilizerKind::Cyclic(gen),
            ProbMeasure::uniform(interval)?,
            rat(2 * max_m, l),
        )
    };
    Ok(NuMap {
        v,
        kind,
        per_y: vec![measure; y.len()],
        guarantee,
    })
}

/// `m` with `gen^m = s`, searched for `|m| <= word_len(s)` up to `bound`.
fn cyclic_exponent(group: &FreeProduct, gen: &GroupElement, s: &GroupElement, bound: u64) -> Option<i64> {
    let limit = s.word_len().max(bound) as i64;
    let inv = group.inv(gen);
    let (mut up, mut down) = (GroupElement::identity(), GroupElement::identity());
    for m in 0..=limit {
        if &up == s {
            return Some(m);
        }
        if &down == s {
            return Some(-m);
        }
        up = group.mul(&up, gen);
        down = group.mul(&down, &inv);
    }
    None
}

/// `max_{s in ev, y} || s . nu_y - nu_{s y} ||_1`, exactly.
pub fn nu_deficiency(ad: &ActionData, nu: &NuMap, ev: &[GroupElement], y: &YSpace) -> Rational {
    let mut worst = Rational::zero();
    for s in ev {
        for (i, m) in nu.per_y.iter().enumerate() {
            let moved = translate_measure(&ad.group, s, m);
            let d = moved.l1_distance(&nu.per_y[y.act(&ad.group, s, i)]);
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// `mu_{x,y} = sum_a zeta_x(a) sigma(a) nu^{v(a)}_{sigma(a)^-1 y}`.
pub fn combine_mu(
    ad: &ActionData,
    zeta_x: &VertexMeasure,
    nus: &BTreeMap<VertexId, NuMap>,
    y_space: &YSpace,
    y: usize,
) -> Result<GroupMeasure> {
    let group = &ad.group;
    let mut terms = Vec::with_capacity(zeta_x.len());
    for (&a, w) in zeta_x.iter() {
        let v = ad.project_v(a);
        let nu = nus
            .get(&v)
            .ok_or_else(|| Error::input(format!("no nu supplied for domain vertex {v}")))?;
        let sig = ad.sigma(a);
        let yy = y_space.act(group, &group.inv(sig), y);
        terms.push((w.clone(), translate_measure(group, sig, &nu.per_y[yy])));
    }
    ProbMeasure::convex_combination(terms.iter().map(|(w, m)| (w.clone(), m)))
}

/// `max_{s in E} max_{(x, y) in samples} || s . mu_{x,y} - mu_{sx,sy} ||_1`.
pub fn equivariance_deficiency(
    g: &Graph,
    ad: &ActionData,
    y_space: &YSpace,
    mu: impl Fn(&XPoint, usize) -> Result<GroupMeasure>,
    e: &[GroupElement],
    samples: &[(XPoint, usize)],
) -> Result<Rational> {
    let mut worst = Rational::zero();
    for (x, y) in samples {
        let here = mu(x, *y)?;
        for s in e {
            let sx = ad.translate_point(g, s, x)?;
            let sy = y_space.act(&ad.group, s, *y);
            let there = mu(&sx, sy)?;
            let d = translate_measure(&ad.group, s, &here).l1_distance(&there);
            if d > worst {
                worst = d;
            }
        }
    }
    Ok(worst)
}
