//! Deterministic test-graph families.
//!
//! Besides full balls in regular trees and denominator-bounded Farey graphs,
//! there are thin families built around a long geodesic: tree tubes, Farey
//! ladders and Bass-Serre trees with a ray branch. They give long certified
//! boundary proxies at a vertex count that stays small.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::action::ActionData;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexId};
use crate::group::{FreeProduct, GroupElement};
use crate::path::Path;

/// Largest graph the generators will build.
pub const MAX_VERTICES: usize = 4_000_000;

fn too_big(n: u128) -> Result<()> {
    if n > MAX_VERTICES as u128 {
        return Err(Error::input(format!("requested graph has {n} vertices, above the limit {MAX_VERTICES}")));
    }
    Ok(())
}

/// Ball of the given radius in the regular tree, numbered breadth-first from
/// the root. Leaves are frontier vertices.
pub fn regular_tree(degree: usize, radius: u32) -> Result<Graph> {
    if degree < 2 || radius < 1 {
        return Err(Error::input("regular_tree needs degree >= 2 and radius >= 1"));
    }
    let mut total: u128 = 1;
    let mut layer: u128 = 1;
    for r in 0..radius {
        layer *= if r == 0 { degree as u128 } else { degree as u128 - 1 };
        total += layer;
        too_big(total)?;
    }
    let mut b = GraphBuilder::new(1);
    let mut frontier = vec![0];
    for r in 0..radius {
        let mut next = Vec::new();
        for &u in &frontier {
            let kids = if r == 0 { degree } else { degree - 1 };
            for _ in 0..kids {
                let w = b.add_vertex();
                b.add_edge(u, w)?;
                next.push(w);
            }
        }
        frontier = next;
    }
    for v in frontier {
        b.set_frontier(v, true)?;
    }
    b.build()
}

/// The vertices of the regular tree within `width` of a bi-infinite geodesic,
/// cut to spine positions `-radius..=radius`. Returns the graph and the spine
/// as a path from position `-radius` to `radius`; the root (position 0) is
/// vertex 0 and numbering is breadth-first from it. Only the two spine ends
/// are frontier vertices.
pub fn regular_tree_tube(degree: usize, radius: u32, width: u32) -> Result<(Graph, Path)> {
    if degree < 2 || radius < 1 {
        return Err(Error::input("regular_tree_tube needs degree >= 2 and radius >= 1"));
    }
    let mut hang: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..width {
        layer *= if hang == 0 { degree as u128 - 2 } else { degree as u128 - 1 };
        hang += layer;
    }
    too_big((2 * radius as u128 + 1) * (1 + hang))?;

    // Build with provisional ids, then renumber breadth-first from the root.
    let spine_len = 2 * radius as usize + 1;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); spine_len];
    for i in 1..spine_len {
        adj[i - 1].push(i);
        adj[i].push(i - 1);
    }
    for s in 0..spine_len {
        let mut frontier = vec![s];
        for depth in 0..width {
            let mut next = Vec::new();
            for &u in &frontier {
                let kids = if depth == 0 { degree - 2 } else { degree - 1 };
                for _ in 0..kids {
                    let w = adj.len();
                    adj.push(vec![u]);
                    adj[u].push(w);
                    next.push(w);
                }
            }
            frontier = next;
        }
    }
    let root = radius as usize;
    let order = bfs_order(&adj, root);
    let mut b = GraphBuilder::new(adj.len());
    for (u, nbrs) in adj.iter().enumerate() {
        for &w in nbrs {
            if u < w {
                b.add_edge(order[u], order[w])?;
            }
        }
    }
    b.set_frontier(order[0], true)?;
    b.set_frontier(order[spine_len - 1], true)?;
    let spine = Path::new((0..spine_len).map(|i| order[i]).collect())?;
    Ok((b.build()?, spine))
}

/// `order[old] = new` for breadth-first numbering from `root`.
fn bfs_order(adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut order = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::from([root]);
    order[root] = 0;
    let mut next = 1;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if order[w] == usize::MAX {
                order[w] = next;
                next += 1;
                queue.push_back(w);
            }
        }
    }
    order
}

/// `p/q` in lowest terms with `q > 0`, or `1/0`.
fn farey_label(p: &BigInt, q: &BigInt) -> String {
    let (p, q) = if q.is_negative() || (q.is_zero() && p.is_negative()) {
        (-p, -q)
    } else {
        (p.clone(), q.clone())
    };
    format!("{p}/{q}")
}

/// Farey graph on `1/0` and the reduced fractions `p/q` with `1 <= q <= Q`
/// and `|p| <= Q`, ordered by `(q, p)`. Fractions are adjacent when
/// `|ps - qr| = 1`. Every vertex has infinitely many neighbours in the full
/// Farey graph, so all are frontier vertices.
pub fn farey_graph(qmax: u32) -> Result<Graph> {
    if qmax < 1 {
        return Err(Error::input("farey_graph needs Q >= 1"));
    }
    let qm = qmax as i64;
    let mut verts: Vec<(i64, i64)> = vec![(1, 0)];
    for q in 1..=qm {
        for p in -qm..=qm {
            if p.gcd(&q) == 1 {
                verts.push((p, q));
            }
        }
    }
    too_big(verts.len() as u128)?;
    let index: HashMap<(i64, i64), usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut b = GraphBuilder::new(verts.len());
    for (i, &(p, q)) in verts.iter().enumerate() {
        b.set_label(i, format!("{p}/{q}"))?;
        b.set_frontier(i, true)?;
    }
    for (i, &(p, q)) in verts.iter().enumerate() {
        if q == 0 {
            continue;
        }
        if q == 1 {
            b.add_edge(0, i)?;
        }
        // Neighbours r/s with s >= 1: p s - q r = +-1.
        for s in 1..=qm {
            for sign in [1i64, -1] {
                let num = p * s - sign;
                if num % q != 0 {
                    continue;
                }
                if let Some(&j) = index.get(&(num / q, s)) {
                    if j > i {
                        b.add_edge(i, j)?;
                    }
                }
            }
        }
    }
    b.build()
}

/// A strip of Farey triangles around a zigzag bi-infinite geodesic.
///
/// Strip vertices are `v_j` for `-2L <= j <= 2L` with `v_0 = 1/0`,
/// `v_1 = 0/1` and `v_{j+2} = v_j + v_{j+1}`; edges join `j ~ j+1` and
/// `j ~ j+2`. Across each outer edge `(v_j, v_{j+2})` a fan of further Farey
/// triangles is attached to dual depth `width`. The returned spine
/// `v_0, v_2, ..., v_{2L}` is a geodesic of length `L`. Frontier vertices are
/// the strip ends.
pub fn farey_ladder(length: u32, width: u32) -> Result<(Graph, Path)> {
    if length < 1 {
        return Err(Error::input("farey_ladder needs length >= 1"));
    }
    let hang = (1u128 << width.min(100)) - 1;
    too_big((4 * length as u128 + 1) * (1 + hang))?;
    let l = 2 * length as i64;
    type V = (BigInt, BigInt);
    let add = |a: &V, b: &V| -> V { (&a.0 + &b.0, &a.1 + &b.1) };
    let sub = |a: &V, b: &V| -> V { (&a.0 - &b.0, &a.1 - &b.1) };
    let neg = |a: &V| -> V { (-&a.0, -&a.1) };

    // strip[j + l] = v_j
    let mut strip: Vec<V> = vec![(BigInt::zero(), BigInt::zero()); (2 * l + 1) as usize];
    strip[l as usize] = (BigInt::one(), BigInt::zero());
    strip[l as usize + 1] = (BigInt::zero(), BigInt::one());
    for j in (l as usize + 2)..strip.len() {
        strip[j] = add(&strip[j - 2], &strip[j - 1]);
    }
    for j in (0..l as usize).rev() {
        strip[j] = sub(&strip[j + 2], &strip[j + 1]);
    }

    let mut vecs: Vec<V> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut intern = |v: &V, vecs: &mut Vec<V>| -> Result<usize> {
        let key = farey_label(&v.0, &v.1);
        if let Some(&i) = index.get(&key) {
            return Err(Error::invariant(format!("ladder revisits {key} at index {i}")));
        }
        index.insert(key, vecs.len());
        vecs.push(v.clone());
        Ok(vecs.len() - 1)
    };
    // Strip vertices first, in order of j, so v_j has id j + 2L.
    for v in &strip {
        intern(v, &mut vecs)?;
    }
    let n_strip = strip.len();
    for j in 0..n_strip {
        if j + 1 < n_strip {
            edges.push((j, j + 1));
        }
        if j + 2 < n_strip {
            edges.push((j, j + 2));
        }
    }
    // Fans across outer edges: (x, y, opposite) triples to grow.
    let mut queue: VecDeque<(usize, usize, usize, u32)> = VecDeque::new();
    for j in 0..n_strip.saturating_sub(2) {
        queue.push_back((j, j + 2, j + 1, 0));
    }
    while let Some((x, y, opp, depth)) = queue.pop_front() {
        if depth == width {
            continue;
        }
        let sum = add(&vecs[x], &vecs[y]);
        let w = if sum == vecs[opp] || sum == neg(&vecs[opp]) {
            sub(&vecs[x], &vecs[y])
        } else {
            sum
        };
        let id = intern(&w, &mut vecs)?;
        edges.push((x, id));
        edges.push((y, id));
        queue.push_back((x, id, y, depth + 1));
        queue.push_back((id, y, x, depth + 1));
    }

    let mut b = GraphBuilder::new(vecs.len());
    for (i, v) in vecs.iter().enumerate() {
        b.set_label(i, farey_label(&v.0, &v.1))?;
    }
    for (u, w) in edges {
        b.add_edge(u, w)?;
    }
    for j in [0, 1, n_strip - 2, n_strip - 1] {
        b.set_frontier(j, true)?;
    }
    let spine = Path::new((0..=length as usize).map(|m| l as usize + 2 * m).collect())?;
    Ok((b.build()?, spine))
}

pub fn cycle(length: usize) -> Result<Graph> {
    if length < 3 {
        return Err(Error::input("cycle needs length >= 3"));
    }
    Graph::from_edges(length, (0..length).map(|i| (i, (i + 1) % length)))
}

/// Coset `r<c>` with `r` the shortest representative.
type Coset = (GroupElement, char);

/// Shortest representative of `r<c>`: drop a trailing `c`-syllable.
fn coset_rep(r: &GroupElement, c: char, group: &FreeProduct) -> GroupElement {
    match r.syllables().last() {
        Some(&(d, e)) if d == c => {
            let tail = group.pow(&group.parse(&c.to_string()).expect("factor letter"), e);
            group.mul(r, &group.inv(&tail))
        }
        _ => r.clone(),
    }
}

fn coset_label(r: &GroupElement, c: char) -> String {
    format!("{r}<{c}>")
}

/// Bass-Serre tree of `Z/p * Z/q` on the cosets `r<a>` and `r<b>` whose
/// shortest representative has at most `radius` syllables. When `branch > 0`
/// the cosets along the ray `e<a>, e<b>, b<a>, ba<b>, ...` of length
/// `branch` are added together with everything their translates by `a^i` and
/// `b^j` need; the ray is returned as the spine.
///
/// The action is the left action, partial on the truncation. The fundamental
/// domain is `{e<a>, e<b>}` (vertices 0 and 1) and `sigma(r<c>) = r`.
pub fn bass_serre_tree(p: u32, q: u32, radius: u32, branch: u32) -> Result<(Graph, ActionData, Option<Path>)> {
    if p < 2 || q < 2 || radius < 1 {
        return Err(Error::input("bass_serre_tree needs p, q >= 2 and radius >= 1"));
    }
    let group = FreeProduct::cyclic_pair(p, q)?;
    let a = group.parse("a")?;
    let b = group.parse("b")?;
    let other = |c: char| if c == 'a' { 'b' } else { 'a' };
    let gen_of = |c: char| if c == 'a' { &a } else { &b };
    let order_of = |c: char| if c == 'a' { p } else { q };

    // Representatives admitted: at most `radius` syllables, or at most
    // `branch` syllables with every syllable after the first equal to a
    // generator (exponent 1). Both sets are closed under prefixes and
    // suffixes.
    let admitted = |r: &GroupElement| -> bool {
        let s = r.syllables();
        s.len() <= radius as usize || (s.len() <= branch as usize && s.iter().skip(1).all(|&(_, e)| e == 1))
    };
    let mut cosets: Vec<Coset> = Vec::new();
    let mut index: HashMap<Coset, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for c in ['a', 'b'] {
        let key = (GroupElement::identity(), c);
        index.insert(key.clone(), cosets.len());
        cosets.push(key);
    }
    edges.push((0, 1));
    // Breadth-first: neighbours of r<c> are (r c^i)<other c>.
    let mut queue = VecDeque::from([0usize, 1]);
    while let Some(u) = queue.pop_front() {
        let (r, c) = cosets[u].clone();
        for i in 0..order_of(c) {
            let g = group.mul(&r, &group.pow(gen_of(c), i as i64));
            let d = other(c);
            let rep = coset_rep(&g, d, &group);
            if !admitted(&rep) {
                continue;
            }
            let key = (rep, d);
            if index.contains_key(&key) {
                continue;
            }
            let w = cosets.len();
            too_big(w as u128 + 1)?;
            index.insert(key.clone(), w);
            cosets.push(key);
            edges.push((u, w));
            queue.push_back(w);
        }
    }

    let n = cosets.len();
    let mut bld = GraphBuilder::new(n);
    for (i, (r, c)) in cosets.iter().enumerate() {
        bld.set_label(i, coset_label(r, *c))?;
    }
    for &(u, w) in &edges {
        bld.add_edge(u, w)?;
    }
    let mut degree = vec![0u32; n];
    for &(u, w) in &edges {
        degree[u] += 1;
        degree[w] += 1;
    }
    for (i, (_, c)) in cosets.iter().enumerate() {
        if degree[i] < order_of(*c) {
            bld.set_frontier(i, true)?;
        }
    }
    let graph = bld.build()?;

    let maps: Vec<Vec<Option<VertexId>>> = [&a, &b]
        .iter()
        .map(|s| {
            cosets
                .iter()
                .map(|(r, c)| {
                    let g = group.mul(s, r);
                    index.get(&(coset_rep(&g, *c, &group), *c)).copied()
                })
                .collect()
        })
        .collect();
    let project = cosets.iter().map(|(_, c)| if *c == 'a' { 0 } else { 1 }).collect();
    let sigma = cosets.iter().map(|(r, _)| r.clone()).collect();
    let action = ActionData::new(&graph, group.clone(), maps, vec![0, 1], project, sigma)?;

    let spine = if branch > 0 {
        let mut verts = vec![0usize];
        let mut word = GroupElement::identity();
        let mut c = 'b';
        // e<a>, e<b>, b<a>, ba<b>, bab<a>, ...
        for step in 0..branch {
            if step > 0 {
                word = group.mul(&word, gen_of(other(c)));
            }
            let v = *index
                .get(&(word.clone(), c))
                .ok_or_else(|| Error::invariant("ray leaves the truncation"))?;
            verts.push(v);
            c = other(c);
        }
        Some(Path::new(verts)?)
    } else {
        None
    };
    Ok((graph, action, spine))
}

/// A generator family with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    RegularTree { degree: usize, radius: u32 },
    TreeTube { degree: usize, radius: u32, width: u32 },
    Farey { q: u32 },
    FareyLadder { length: u32, width: u32 },
    BassSerre { p: u32, q: u32, radius: u32, branch: u32 },
    Cycle { length: usize },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::RegularTree { degree, radius } => write!(f, "tree:{degree}:{radius}"),
            FamilySpec::TreeTube { degree, radius, width } => write!(f, "tube:{degree}:{radius}:{width}"),
            FamilySpec::Farey { q } => write!(f, "farey:{q}"),
            FamilySpec::FareyLadder { length, width } => write!(f, "ladder:{length}:{width}"),
            FamilySpec::BassSerre { p, q, radius, branch } => {
                if *branch == 0 {
                    write!(f, "bass-serre:{p}:{q}:{radius}")
                } else {
                    write!(f, "bass-serre:{p}:{q}:{radius}:{branch}")
                }
            }
            FamilySpec::Cycle { length } => write!(f, "cycle:{length}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// `tree:<degree>:<radius>`, `tube:<degree>:<radius>:<width>`,
    /// `farey:<Q>`, `ladder:<length>:<width>`,
    /// `bass-serre:<p>:<q>:<radius>[:<branch>]`, `cycle:<length>`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u32> {
            parts
                .get(i)
                .ok_or_else(|| Error::input(format!("family spec {s:?} is missing a parameter")))?
                .parse()
                .map_err(|_| Error::input(format!("bad parameter in family spec {s:?}")))
        };
        let arity = |n: usize| -> Result<()> {
            if parts.len() == n + 1 {
                Ok(())
            } else {
                Err(Error::input(format!("family spec {s:?} takes {n} parameters")))
            }
        };
        let spec = match parts[0] {
            "tree" => {
                arity(2)?;
                FamilySpec::RegularTree { degree: num(1)? as usize, radius: num(2)? }
            }
            "tube" => {
                arity(3)?;
                FamilySpec::TreeTube { degree: num(1)? as usize, radius: num(2)?, width: num(3)? }
            }
            "farey" => {
                arity(1)?;
                FamilySpec::Farey { q: num(1)? }
            }
            "ladder" => {
                arity(2)?;
                FamilySpec::FareyLadder { length: num(1)?, width: num(2)? }
            }
            "bass-serre" => {
                if parts.len() != 4 && parts.len() != 5 {
                    return Err(Error::input(format!("family spec {s:?} takes 3 or 4 parameters")));
                }
                let branch = if parts.len() == 5 { num(4)? } else { 0 };
                FamilySpec::BassSerre { p: num(1)?, q: num(2)?, radius: num(3)?, branch }
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle { length: num(1)? as usize }
            }
            other => return Err(Error::input(format!("unknown family {other:?}"))),
        };
        Ok(spec)
    }
}

/// Output of [`generate`].
#[derive(Clone, Debug)]
pub struct Generated {
    pub graph: Graph,
    pub action: Option<ActionData>,
    /// A distinguished geodesic, for families built around one.
    pub spine: Option<Path>,
}

pub fn generate(spec: &FamilySpec) -> Result<Generated> {
    let plain = |graph| Generated { graph, action: None, spine: None };
    Ok(match *spec {
        FamilySpec::RegularTree { degree, radius } => plain(regular_tree(degree, radius)?),
        FamilySpec::TreeTube { degree, radius, width } => {
            let (graph, spine) = regular_tree_tube(degree, radius, width)?;
            Generated { graph, action: None, spine: Some(spine) }
        }
        FamilySpec::Farey { q } => plain(farey_graph(q)?),
        FamilySpec::FareyLadder { length, width } => {
            let (graph, spine) = farey_ladder(length, width)?;
            Generated { graph, action: None, spine: Some(spine) }
        }
        FamilySpec::BassSerre { p, q, radius, branch } => {
            let (graph, action, spine) = bass_serre_tree(p, q, radius, branch)?;
            Generated { graph, action: Some(action), spine }
        }
        FamilySpec::Cycle { length } => plain(cycle(length)?),
    })
}
