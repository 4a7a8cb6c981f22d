//! Closed surfaces mapping onto a net of a complex and representing a
//! given integral 2-class, and their ε-girth.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::chain::{boundary, Chain};
use crate::complex::{sort_with_sign, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::map::{pushforward, SimplicialMap};

/// Unweighted 1-skeleton adjacency.
fn adjacency(x: &SimplicialComplex) -> BTreeMap<usize, Vec<usize>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = x.simplices(0).iter().map(|v| (v[0], Vec::new())).collect();
    if x.dim() >= 1 {
        for e in x.simplices(1) {
            adj.get_mut(&e[0]).unwrap().push(e[1]);
            adj.get_mut(&e[1]).unwrap().push(e[0]);
        }
    }
    adj
}

/// Hop distances and BFS parents from `sources`.
fn bfs(adj: &BTreeMap<usize, Vec<usize>>, sources: &[usize]) -> BTreeMap<usize, (u64, usize)> {
    let mut seen = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if seen.insert(s, (0, s)).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = seen[&v].0;
        for &w in &adj[&v] {
            if !seen.contains_key(&w) {
                seen.insert(w, (d + 1, v));
                queue.push_back(w);
            }
        }
    }
    seen
}

fn path_to(tree: &BTreeMap<usize, (u64, usize)>, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while tree[&v].1 != v {
        v = tree[&v].1;
        path.push(v);
    }
    path
}

fn hops(r: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(r))
}

#[derive(Clone, Debug)]
pub struct GirthReport {
    pub epsilon: BigRational,
    pub dense: bool,
    /// None when the relevant part of Σ is disconnected.
    pub delta: Option<BigRational>,
    /// (x; v1, v2) realizing delta.
    pub witness: Option<(usize, usize, usize)>,
}

impl GirthReport {
    pub fn render(&self) -> String {
        let delta = self.delta.as_ref().map_or("inf".to_string(), |d| d.to_string());
        let witness = self.witness.map_or("-".to_string(), |(x, a, b)| format!("{x};{a},{b}"));
        format!("dense={} delta={} witness={}", self.dense, delta, witness)
    }
}

/// Whether p(V(Σ)) is ε-dense in X, and the largest Σ-diameter of a fiber
/// {v : d_X(p(v), x) ≤ 2ε}, both in edge-path metrics.
pub fn epsilon_girth(p: &SimplicialMap, eps: &BigRational) -> GirthReport {
    let x = &p.codomain;
    let sigma = &p.domain;
    let ax = adjacency(x);
    let asig = adjacency(sigma);
    let image: Vec<usize> = p.vertex_map.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let reach = bfs(&ax, &image);
    let dense = ax.keys().all(|v| reach.get(v).is_some_and(|&(d, _)| hops(d) * x.edge_scale() <= *eps));

    let two_eps = eps * BigRational::from_integer(2.into());
    let mut cache: BTreeMap<usize, BTreeMap<usize, (u64, usize)>> = BTreeMap::new();
    let mut best: Option<(Option<u64>, (usize, usize, usize))> = None;
    for &xv in ax.keys() {
        let from_x = bfs(&ax, &[xv]);
        let fiber: Vec<usize> = p
            .vertex_map
            .iter()
            .filter(|(_, w)| from_x.get(w).is_some_and(|&(d, _)| hops(d) * x.edge_scale() <= two_eps))
            .map(|(&v, _)| v)
            .collect();
        for (i, &a) in fiber.iter().enumerate() {
            let tree = cache.entry(a).or_insert_with(|| bfs(&asig, &[a]));
            for &b in &fiber[i..] {
                let d = tree.get(&b).map(|&(d, _)| d);
                let better = match &best {
                    None => true,
                    Some((cur, _)) => match (cur, d) {
                        (None, _) => false,
                        (Some(_), None) => true,
                        (Some(c), Some(d)) => d > *c,
                    },
                };
                if better {
                    best = Some((d, (xv, a, b)));
                }
            }
        }
    }
    let (delta, witness) = match best {
        None => (Some(BigRational::zero()), None),
        Some((d, w)) => (d.map(|d| hops(d) * sigma.edge_scale()), Some(w)),
    };
    GirthReport { epsilon: eps.clone(), dense, delta, witness }
}

#[derive(Clone, Debug)]
pub struct SurfaceReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub euler: i64,
    pub components: usize,
    pub genus: i64,
    pub net: Vec<usize>,
    pub tubes: usize,
    pub girth: GirthReport,
    /// delta / ε of `girth`.
    pub c_girth: Option<BigRational>,
}

impl SurfaceReport {
    pub fn render(&self) -> String {
        let c = self.c_girth.as_ref().map_or("inf".to_string(), |c| c.to_string());
        format!(
            "vertices {}\nedges {}\ntriangles {}\neuler {}\ncomponents {}\ngenus {}\nnet {}\ntubes {}\ngirth {} eps={}\nc_girth {}\n",
            self.vertices,
            self.edges,
            self.triangles,
            self.euler,
            self.components,
            self.genus,
            self.net.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            self.tubes,
            self.girth.render(),
            self.girth.epsilon,
            c
        )
    }
}

#[derive(Clone, Debug)]
pub struct NetSurface {
    pub sigma: SimplicialComplex,
    pub map: SimplicialMap,
    /// Oriented fundamental cycle of Σ; its pushforward is h.
    pub fundamental: Chain,
    pub report: SurfaceReport,
}

#[derive(Default)]
struct Builder {
    next: usize,
    /// Oriented triangles.
    tris: Vec<[usize; 3]>,
    pmap: BTreeMap<usize, usize>,
}

impl Builder {
    fn vertex(&mut self, image: usize) -> usize {
        let v = self.next;
        self.next += 1;
        self.pmap.insert(v, image);
        v
    }

    fn ring(&mut self, image: usize) -> [usize; 3] {
        [self.vertex(image), self.vertex(image), self.vertex(image)]
    }

    /// Annulus with boundary forward(u) + backward(w); optionally leaves the
    /// triangle (u0, u1, w0) out and returns it.
    fn annulus(&mut self, u: [usize; 3], w: [usize; 3], hole: bool) -> Option<[usize; 3]> {
        for i in 0..3 {
            let j = (i + 1) % 3;
            if !(hole && i == 0) {
                self.tris.push([u[i], u[j], w[i]]);
            }
            self.tris.push([u[j], w[j], w[i]]);
        }
        hole.then_some([u[0], u[1], w[0]])
    }

    /// A sphere mapped to `image` with `holes` vertex-disjoint oriented holes.
    fn net_sphere(&mut self, image: usize, holes: usize) -> Vec<[usize; 3]> {
        let rings: Vec<[usize; 3]> = (0..(2 * holes).max(2)).map(|_| self.ring(image)).collect();
        let first = rings[0];
        let last = *rings.last().unwrap();
        self.tris.push([first[0], first[2], first[1]]);
        self.tris.push(last);
        let mut out = Vec::new();
        for j in 0..rings.len() - 1 {
            let hole = j % 2 == 0 && j / 2 < holes;
            out.extend(self.annulus(rings[j], rings[j + 1], hole));
        }
        out
    }

    /// Tube joining two positively oriented holes along a vertex path.
    fn tube(&mut self, from: [usize; 3], to: [usize; 3], path: &[usize]) {
        let l = path.len() - 1;
        let m = l.max(3);
        let mut prev = from;
        for j in 1..m {
            let r = self.ring(path[j * l / m]);
            self.annulus(prev, r, false);
            prev = r;
        }
        self.annulus(prev, [to[0], to[2], to[1]], false);
    }
}

/// Checks that every edge lies on two triangles and every vertex link is a
/// single cycle.
fn closed_surface_defect(tris: &[Simplex]) -> Option<String> {
    let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut links: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for t in tris {
        for (a, b, c) in [(t[0], t[1], t[2]), (t[0], t[2], t[1]), (t[1], t[2], t[0])] {
            *edges.entry((a, b)).or_default() += 1;
            links.entry(c).or_default().push((a, b));
        }
    }
    if let Some(((a, b), k)) = edges.iter().find(|(_, &k)| k != 2) {
        return Some(format!("edge {a} {b} lies on {k} triangles"));
    }
    for (v, link) in &links {
        let mut nbrs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &(a, b) in link {
            nbrs.entry(a).or_default().push(b);
            nbrs.entry(b).or_default().push(a);
        }
        let start = link[0].0;
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &nbrs[&u] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != nbrs.len() {
            return Some(format!("link of vertex {v} is not a single cycle"));
        }
    }
    None
}

/// Connected components of a set of simplices under shared vertices.
fn components(cells: &[Simplex]) -> Vec<Vec<usize>> {
    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for (i, c) in cells.iter().enumerate() {
        for &v in c {
            if let Some(&j) = owner.get(&v) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            } else {
                owner.insert(v, i);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..cells.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Builds a closed oriented surface Σ and a simplicial map p: Σ → X with
/// p_*[Σ] = h, p(V(Σ)) ⊇ an s-net of X, and tubes between net points at
/// distance at most max(10s, edge scale). Σ has edge scale s/10.
pub fn build_net_surface(x: &SimplicialComplex, h: &Chain, s: &BigRational) -> Result<NetSurface> {
    if h.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: h.degree() });
    }
    if !s.is_positive() {
        return Err(Error::Malformed("scale must be positive".into()));
    }
    h.check_on(x)?;
    if !boundary(h).is_zero() {
        return Err(Error::NotACycle);
    }
    if h.iter().any(|(_, c)| c.abs() != BigRational::one()) {
        return Err(Error::NotSurgerable("coefficients other than ±1".into()));
    }
    let support: Vec<Simplex> = h.iter().map(|(s, _)| s.clone()).collect();
    if let Some(why) = closed_surface_defect(&support) {
        return Err(Error::NotSurgerable(why));
    }

    let scale = x.edge_scale().clone();
    let adj = adjacency(x);
    let verts: Vec<usize> = adj.keys().copied().collect();
    let mut net: Vec<usize> = Vec::new();
    if *s <= scale {
        net = verts.clone();
    } else {
        let mut covered = BTreeMap::new();
        for &v in &verts {
            if !covered.contains_key(&v) {
                net.push(v);
                for (w, (d, _)) in bfs(&adj, &[v]) {
                    if hops(d) * &scale <= *s {
                        covered.insert(w, ());
                    }
                }
            }
        }
    }
    let trees: Vec<_> = net.iter().map(|&v| bfs(&adj, &[v])).collect();
    let reach = {
        let ten = s * BigRational::from_integer(10.into());
        if ten > scale {
            ten
        } else {
            scale.clone()
        }
    };
    let mut tubes: Vec<(usize, usize)> = Vec::new();
    for i in 0..net.len() {
        for j in i + 1..net.len() {
            if trees[i].get(&net[j]).is_some_and(|&(d, _)| hops(d) * &scale <= reach) {
                tubes.push((i, j));
            }
        }
    }

    let mut b = Builder::default();
    // copy of the support of h, one hole per component
    let copy: BTreeMap<usize, usize> = support
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|v| (v, b.vertex(v)))
        .collect();
    let mut attachments: Vec<([usize; 3], usize)> = Vec::new();
    for comp in components(&support) {
        for (k, &i) in comp.iter().enumerate() {
            let t = &support[i];
            let (a0, a1, a2) = (copy[&t[0]], copy[&t[1]], copy[&t[2]]);
            let tri = if h.get(t).is_positive() { [a0, a1, a2] } else { [a0, a2, a1] };
            if k == 0 {
                let image = b.pmap[&tri[0]];
                let inner = b.ring(image);
                b.annulus(tri, inner, false);
                attachments.push((inner, image));
            } else {
                b.tris.push(tri);
            }
        }
    }
    let attach_to: Vec<usize> = attachments
        .iter()
        .map(|&(_, image)| {
            (0..net.len())
                .filter(|&i| trees[i].contains_key(&image))
                .min_by_key(|&i| (trees[i][&image].0, i))
                .ok_or_else(|| Error::NotSurgerable("class lies off the net".into()))
        })
        .collect::<Result<_>>()?;

    let mut need = vec![0usize; net.len()];
    for &(i, j) in &tubes {
        need[i] += 1;
        need[j] += 1;
    }
    for &i in &attach_to {
        need[i] += 1;
    }
    let mut holes: Vec<VecDeque<[usize; 3]>> =
        net.iter().zip(&need).map(|(&v, &k)| b.net_sphere(v, k).into()).collect();
    for &(i, j) in &tubes {
        let from = holes[i].pop_front().unwrap();
        let to = holes[j].pop_front().unwrap();
        let mut path = path_to(&trees[i], net[j]);
        path.reverse();
        b.tube(from, to, &path);
    }
    for (&(inner, image), &i) in attachments.iter().zip(&attach_to) {
        let to = holes[i].pop_front().unwrap();
        b.tube(inner, to, &path_to(&trees[i], image));
    }

    let mut fundamental = Chain::zero(2);
    let mut cells = Vec::with_capacity(b.tris.len());
    for t in &b.tris {
        let mut sorted = t.to_vec();
        let sign = sort_with_sign(&mut sorted).ok_or_else(|| Error::Invariant("degenerate triangle".into()))?;
        fundamental.add_term(sorted.clone(), BigRational::from_integer(sign.into()));
        cells.push(sorted);
    }
    if let Some(why) = closed_surface_defect(&cells) {
        return Err(Error::Invariant(format!("surface construction: {why}")));
    }
    if !boundary(&fundamental).is_zero() {
        return Err(Error::Invariant("surface is not coherently oriented".into()));
    }
    let n_components = components(&cells).len();
    let sigma = SimplicialComplex::from_maximal(cells)?.with_edge_scale(s / BigRational::from_integer(10.into()));
    let map = SimplicialMap::new(sigma.clone(), x.clone(), b.pmap)?;
    if pushforward(&map, &fundamental) != *h {
        return Err(Error::Invariant("surface does not represent the class".into()));
    }

    let eps = if *s > scale { s.clone() } else { scale };
    let girth = epsilon_girth(&map, &eps);
    let c_girth = girth.delta.as_ref().map(|d| d / &eps);
    let euler = sigma.euler_characteristic();
    let report = SurfaceReport {
        vertices: sigma.count(0),
        edges: sigma.count(1),
        triangles: sigma.count(2),
        euler,
        components: n_components,
        genus: (2 * n_components as i64 - euler) / 2,
        net,
        tubes: tubes.len(),
        girth,
        c_girth,
    };
    Ok(NetSurface { sigma, map, fundamental, report })
}
