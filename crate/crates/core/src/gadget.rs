//! Lattice gadgets: a wedge of n-spheres Σ_0..Σ_M with, for each coordinate
//! i, a sphere S_i attached by a mapping cylinder along a map of degree
//! (n+1)u_ji onto Σ_j. H^n(X;Z) is then free on the duals [Σ_j]^*, and the
//! class γ(v) = Σ v_j [Σ_j]^* evaluates on [S_i] to (n+1)(Σ_j v_j u_j)_i.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::chain::{boundary, coboundary, coherent_chain, fundamental_cycle, mass, pair, Chain, Cochain};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{homology, HomologyGroup};
use crate::linalg::{rank, solve_integer, SparseMatrix};
use crate::map::{cylinder_cells, pushforward, SimplicialMap};

pub const DEFAULT_ENTRY_CAP: i64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    /// Ambient dimension N.
    pub dim: usize,
    /// Rows u_0..u_M.
    pub vectors: Vec<Vec<i64>>,
}

impl LatticeBasis {
    pub fn new(dim: usize, vectors: Vec<Vec<i64>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::Malformed(format!("lattice row has {} entries, expected {dim}", v.len())));
        }
        Ok(LatticeBasis { dim, vectors })
    }

    pub fn identity(dim: usize) -> Self {
        let vectors = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        LatticeBasis { dim, vectors }
    }

    /// Number of basis vectors, M+1.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Rank and entry-size checks.
    pub fn validate(&self, cap: i64) -> Result<()> {
        for v in &self.vectors {
            for &e in v {
                if e.abs() > cap {
                    return Err(Error::EntryCap { value: e, cap });
                }
            }
        }
        let mut m = SparseMatrix::zeros(self.len(), self.dim);
        for (r, v) in self.vectors.iter().enumerate() {
            for (c, &e) in v.iter().enumerate() {
                m.set(r, c, BigInt::from(e));
            }
        }
        let r = rank(&m);
        if r < self.len() {
            return Err(Error::RankDeficient { rank: r, rows: self.len() });
        }
        Ok(())
    }

    /// Σ_j a_j u_j.
    pub fn combine(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for (aj, u) in a.iter().zip(&self.vectors) {
            for (o, e) in out.iter_mut().zip(u) {
                *o += aj * e;
            }
        }
        out
    }

    pub fn max_entry(&self) -> i64 {
        self.vectors.iter().flatten().map(|e| e.abs()).max().unwrap_or(0)
    }
}

/// Σ_0 ∨ ... ∨ Σ_M, each Σ_j the boundary of an (n+1)-simplex, sharing only
/// the vertex 0.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub n: usize,
    pub complex: SimplicialComplex,
    /// Vertices of Σ_j other than the wedge point, in order.
    pub petals: Vec<Vec<usize>>,
    /// Fundamental cycles [Σ_j].
    pub cycles: Vec<Chain>,
}

pub const WEDGE_POINT: usize = 0;

pub fn wedge(n: usize, count: usize) -> Wedge {
    assert!(n >= 1 && count >= 1);
    let mut facets = Vec::new();
    let mut petals = Vec::new();
    let mut cycles = Vec::new();
    for j in 0..count {
        let base = 1 + j * (n + 1);
        let verts: Vec<usize> = std::iter::once(WEDGE_POINT).chain(base..base + n + 1).collect();
        let sphere: Vec<Simplex> = (0..verts.len())
            .map(|i| {
                let mut f = verts.clone();
                f.remove(i);
                f
            })
            .collect();
        let sc = SimplicialComplex::from_maximal(&sphere).expect("sphere");
        cycles.push(fundamental_cycle(&sc, n).expect("sphere is orientable"));
        facets.extend(sphere);
        petals.push(verts[1..].to_vec());
    }
    let complex = SimplicialComplex::from_maximal(facets).expect("wedge");
    Wedge { n, complex, petals, cycles }
}

/// One cross-polytope block of a degree map.
#[derive(Clone, Debug)]
pub struct Block {
    pub target: usize,
    /// Vertices a_1..a_{n+1}, sent to the petal vertices of Σ_target.
    pub apex: Vec<usize>,
    /// Hub facet along which the block is summed in; its vertices are the
    /// block's w_1..w_{n+1}, sent to the wedge point.
    pub glue: Simplex,
    /// Facets of the block sphere other than `glue`.
    pub facets: Vec<Simplex>,
}

/// A simplicial map from a triangulated n-sphere onto a wedge of n-spheres
/// with prescribed degrees.
#[derive(Clone, Debug)]
pub struct DegreeMap {
    pub map: SimplicialMap,
    /// Oriented fundamental cycle of the domain sphere.
    pub fundamental: Chain,
    /// The stacked simplices σ_0..σ_L whose union's boundary is the hub.
    pub hub: Vec<Simplex>,
    pub blocks: Vec<Block>,
    /// First label not used by the domain.
    pub next_label: usize,
}

impl DegreeMap {
    pub fn domain(&self) -> &SimplicialComplex {
        &self.map.domain
    }
}

/// Builds a degree map onto the wedge with domain labels starting after the
/// wedge's labels.
pub fn build_degree_map(targets: &Wedge, degrees: &[i64]) -> Result<DegreeMap> {
    build_degree_map_at(targets, degrees, targets.complex.max_vertex() + 1)
}

/// As [`build_degree_map`], with domain labels starting at `base`.
pub fn build_degree_map_at(targets: &Wedge, degrees: &[i64], base: usize) -> Result<DegreeMap> {
    let n = targets.n;
    if degrees.len() != targets.cycles.len() {
        return Err(Error::Malformed(format!(
            "{} degrees for {} wedge summands",
            degrees.len(),
            targets.cycles.len()
        )));
    }
    let k_total: usize = degrees.iter().map(|d| d.unsigned_abs() as usize).sum();
    let l = k_total * (n + 2);
    let h = |t: usize| base + t;
    let hub: Vec<Simplex> = (0..=l).map(|k| (k..=k + n + 1).map(h).collect()).collect();
    let mut next = h(l + n + 2);

    // blocks interleaved so that every prefix carries about its share of
    // each degree: the hub face after a prefix closes up a small cycle whose
    // class is the prefix sum
    let mut plan: Vec<(usize, i64)> = Vec::with_capacity(k_total);
    let mut used = vec![0u64; degrees.len()];
    for _ in 0..k_total {
        let j = (0..degrees.len())
            .filter(|&j| used[j] < degrees[j].unsigned_abs())
            .min_by(|&a, &b| {
                let da = (2 * used[a] + 1) as u128 * degrees[b].unsigned_abs() as u128;
                let db = (2 * used[b] + 1) as u128 * degrees[a].unsigned_abs() as u128;
                da.cmp(&db).then(a.cmp(&b))
            })
            .expect("units remain");
        used[j] += 1;
        plan.push((j, degrees[j].signum()));
    }
    let mut glue_set = BTreeSet::new();
    let mut blocks = Vec::new();
    for (m, &(j, _)) in plan.iter().enumerate() {
        let k = (m + 1) * (n + 2);
        let mut glue = hub[k].clone();
        glue.remove(1);
        let apex: Vec<usize> = (next..next + n + 1).collect();
        next += n + 1;
        let facets = (0..(1usize << (n + 1)) - 1)
            .map(|mask| {
                let mut f: Simplex = (0..=n).map(|i| if (mask >> i) & 1 == 1 { glue[i] } else { apex[i] }).collect();
                f.sort_unstable();
                f
            })
            .collect();
        glue_set.insert(glue.clone());
        blocks.push(Block { target: j, apex, glue, facets });
    }

    // facets of the stacked ball's boundary, minus the glue facets
    let mut facets: Vec<Simplex> = Vec::new();
    for (k, s) in hub.iter().enumerate() {
        for drop in 0..s.len() {
            let interior = (drop == 0 && k < l) || (drop == n + 1 && k > 0);
            if interior {
                continue;
            }
            let mut f = s.clone();
            f.remove(drop);
            if !glue_set.contains(&f) {
                facets.push(f);
            }
        }
    }
    for b in &blocks {
        facets.extend(b.facets.iter().cloned());
    }
    let domain = SimplicialComplex::from_maximal(&facets)?;
    let fundamental = fundamental_cycle(&domain, n).ok_or_else(|| Error::Invariant("domain is not a closed orientable n-manifold".into()))?;

    let mut vm: BTreeMap<usize, usize> = domain.vertices().map(|v| (v, WEDGE_POINT)).collect();
    for (b, &(j, sign)) in blocks.iter().zip(&plan) {
        let petal = &targets.petals[j];
        for (a, p) in b.apex.iter().zip(petal) {
            vm.insert(*a, *p);
        }
        // orientation of this block's image under the unswapped assignment
        let top: Simplex = b.apex.clone();
        let img: Vec<usize> = top.iter().map(|a| vm[a]).collect();
        let mut sorted = img.clone();
        let perm = crate::complex::sort_with_sign(&mut sorted).expect("distinct petal vertices");
        let got = fundamental.get(&top) * BigRational::from_integer(BigInt::from(perm)) * targets.cycles[j].get(&sorted);
        let want = BigRational::from_integer(BigInt::from(sign));
        if got != want {
            vm.insert(b.apex[0], petal[1]);
            vm.insert(b.apex[1], petal[0]);
        }
    }
    let map = SimplicialMap::new(domain, targets.complex.clone(), vm)?;

    let mut expected = Chain::zero(n);
    for (j, &d) in degrees.iter().enumerate() {
        expected = expected.add(&targets.cycles[j].scale(&BigRational::from_integer(BigInt::from(d))));
    }
    if pushforward(&map, &fundamental) != expected {
        return Err(Error::Invariant("degree map pushes forward to the wrong class".into()));
    }
    Ok(DegreeMap { map, fundamental, hub, blocks, next_label: next })
}

/// The cone c * z, with ∂(c * z) = z − c * ∂z.
fn cone(c: usize, z: &Chain) -> Chain {
    let mut out = Chain::zero(z.degree() + 1);
    for (s, v) in z.iter() {
        let mut t = Vec::with_capacity(s.len() + 1);
        t.push(c);
        t.extend_from_slice(s);
        let mut sorted = t.clone();
        let sign = crate::complex::sort_with_sign(&mut sorted).expect("cone vertex is fresh");
        out.add_term(sorted, v * BigRational::from_integer(BigInt::from(sign)));
    }
    out
}

fn restrict(z: &Chain, keep: impl Fn(&Simplex) -> bool) -> Chain {
    let mut out = Chain::zero(z.degree());
    for (s, v) in z.iter() {
        if keep(s) {
            out.add_term(s.clone(), v.clone());
        }
    }
    out
}

/// A small sphere S = ∂σ_0 homologous to the degree-map domain, and the
/// (n+1)-chain C with ∂C = [domain] − [S].
#[derive(Clone, Debug)]
pub struct Collar {
    pub small_sphere: Chain,
    pub chain: Chain,
    pub cells: Vec<Simplex>,
    pub next_label: usize,
}

pub fn build_collar(dm: &DegreeMap, first_label: usize) -> Result<Collar> {
    let n = dm.fundamental.degree();
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut next = first_label;
    let block_vertices: BTreeSet<usize> = dm.blocks.iter().flat_map(|b| b.apex.iter().copied()).collect();
    let zh = restrict(&dm.fundamental, |s| s.iter().all(|v| !block_vertices.contains(v)));
    let mut hub_cycle = zh.clone();
    let mut chain = Chain::zero(n + 1);
    let mut cells: Vec<Simplex> = dm.hub[1..].to_vec();
    for b in &dm.blocks {
        let own: BTreeSet<usize> = b.apex.iter().copied().collect();
        let zb = restrict(&dm.fundamental, |s| s.iter().any(|v| own.contains(v)));
        // close the block up with its glue facet
        let g = Chain::indicator(&b.glue);
        let dzb = boundary(&zb);
        let dg = boundary(&g);
        let (face, coeff) = dg.iter().next().expect("glue facet has faces");
        let e = -(dzb.get(face) / coeff);
        let p = zb.add(&g.scale(&e));
        if !boundary(&p).is_zero() {
            return Err(Error::Invariant("block sphere does not close up".into()));
        }
        hub_cycle = hub_cycle.sub(&g.scale(&e));
        let c = next;
        next += 1;
        let cz = cone(c, &p);
        cells.extend(cz.iter().map(|(s, _)| s.clone()));
        chain = chain.add(&cz);
    }
    let ball = SimplicialComplex::from_maximal(&dm.hub)?;
    let bc = coherent_chain(&ball, n + 1).ok_or_else(|| Error::Invariant("hub ball is not orientable".into()))?;
    let dbc = boundary(&bc);
    let eps = if dbc == hub_cycle {
        q(1)
    } else if dbc.scale(&q(-1)) == hub_cycle {
        q(-1)
    } else {
        return Err(Error::Invariant("hub cycle is not the boundary of the stacked ball".into()));
    };
    let b0 = bc.get(&dm.hub[0]);
    let rest = restrict(&bc, |s| *s != dm.hub[0]);
    chain = chain.add(&rest.scale(&eps));
    let small_sphere = boundary(&Chain::indicator(&dm.hub[0])).scale(&(&eps * &b0));
    if boundary(&chain) != dm.fundamental.sub(&small_sphere) {
        return Err(Error::Invariant("collar boundary mismatch".into()));
    }
    Ok(Collar { small_sphere, chain, cells, next_label: next })
}

#[derive(Clone, Debug)]
pub struct BuildReport {
    pub counts: Vec<usize>,
    pub total: usize,
    pub size_bound: u128,
    pub size_polynomial: String,
    pub checks: Vec<String>,
}

impl BuildReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "simplex counts by dimension: {:?}", self.counts);
        let _ = writeln!(s, "total simplices: {}", self.total);
        let _ = writeln!(s, "size bound {} = {}", self.size_polynomial, self.size_bound);
        for c in &self.checks {
            let _ = writeln!(s, "check ok: {c}");
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct GadgetComplex {
    pub x: SimplicialComplex,
    pub n: usize,
    pub generator_cocycles: Vec<Cochain>,
    pub sigma_cycles: Vec<Chain>,
    pub s_cycles: Vec<Chain>,
    pub basis: LatticeBasis,
    pub report: BuildReport,
}

#[derive(Clone, Copy, Debug)]
pub struct GadgetOptions {
    pub entry_cap: i64,
    /// Recompute H_n(X) by Smith normal form at build time.
    pub check_homology: bool,
}

impl Default for GadgetOptions {
    fn default() -> Self {
        GadgetOptions { entry_cap: DEFAULT_ENTRY_CAP, check_homology: true }
    }
}

/// Upper bound on |X| used in the build report:
/// 4^{n+2} (n+2)^2 (M+1 + N (1 + (n+1) Σ_ji |u_ji|)).
pub fn size_bound(basis: &LatticeBasis, n: usize) -> u128 {
    let units: u128 = basis.vectors.iter().flatten().map(|e| e.unsigned_abs() as u128).sum();
    let per = 4u128.pow(n as u32 + 2) * (n as u128 + 2).pow(2);
    per * (basis.len() as u128 + basis.dim as u128 * (1 + (n as u128 + 1) * units))
}

pub fn build_gadget(basis: &LatticeBasis, n: usize) -> Result<GadgetComplex> {
    build_gadget_with(basis, n, GadgetOptions::default())
}

pub fn build_gadget_with(basis: &LatticeBasis, n: usize, opts: GadgetOptions) -> Result<GadgetComplex> {
    if n < 2 {
        return Err(Error::Malformed("gadget sphere dimension must be at least 2".into()));
    }
    if basis.is_empty() {
        return Err(Error::Malformed("empty lattice basis".into()));
    }
    basis.validate(opts.entry_cap)?;
    let count = basis.len();
    let w = wedge(n, count);
    let mut cells: Vec<Simplex> = w.complex.maximal_simplices();
    let mut next = w.complex.max_vertex() + 1;
    let mut s_cycles = Vec::with_capacity(basis.dim);
    for i in 0..basis.dim {
        let degrees: Vec<i64> = basis.vectors.iter().map(|u| (n as i64 + 1) * u[i]).collect();
        let dm = build_degree_map_at(&w, &degrees, next)?;
        cells.extend(cylinder_cells(&dm.map, 0));
        let collar = build_collar(&dm, dm.next_label)?;
        cells.extend(collar.cells.iter().cloned());
        next = collar.next_label;
        s_cycles.push(collar.small_sphere);
    }
    let x = SimplicialComplex::from_maximal(cells)?;
    let mut checks = Vec::new();

    if opts.check_homology {
        let h = homology(&x, n);
        if h != (HomologyGroup { betti: count, torsion: vec![] }) {
            return Err(Error::Invariant(format!("H_{n}(X) = {h:?}, expected free of rank {count}")));
        }
        checks.push(format!("H_{n}(X) free of rank {count}"));
    }

    let generator_cocycles = generator_cocycles(&x, n, &w.cycles)?;
    checks.push("generator cocycles are integral cocycles dual to the wedge spheres".into());

    let budget = BigRational::from_integer(BigInt::from(n + 1));
    for (i, s) in s_cycles.iter().enumerate() {
        if !boundary(s).is_zero() {
            return Err(Error::Invariant(format!("S_{i} is not a cycle")));
        }
        if mass(&x, s).cmp_rational(&budget) == std::cmp::Ordering::Greater {
            return Err(Error::Invariant(format!("mass of S_{i} exceeds n+1")));
        }
        for (j, g) in generator_cocycles.iter().enumerate() {
            let want = BigRational::from_integer(BigInt::from((n as i64 + 1) * basis.vectors[j][i]));
            if pair(g, s) != want {
                return Err(Error::Invariant(format!("<gamma(u_{j}), S_{i}> != (n+1) u_{j}{i}")));
            }
        }
    }
    checks.push("mass(S_i) <= n+1 for every i".into());
    checks.push("<gamma(u_j), S_i> = (n+1) u_ji for all i, j".into());

    let counts: Vec<usize> = (0..=x.dim()).map(|k| x.count(k)).collect();
    let total = x.total_count();
    let bound = size_bound(basis, n);
    if total as u128 > bound {
        return Err(Error::Invariant(format!("complex has {total} simplices, above the size bound {bound}")));
    }
    checks.push("simplex count within the size bound".into());
    let report = BuildReport {
        counts,
        total,
        size_bound: bound,
        size_polynomial: "4^(n+2) (n+2)^2 (M+1 + N (1 + (n+1) sum|u_ji|))".into(),
        checks,
    };
    Ok(GadgetComplex { x, n, generator_cocycles, sigma_cycles: w.cycles, s_cycles, basis: basis.clone(), report })
}

/// Integral cocycles g_j with ⟨g_j, cycles[k]⟩ = δ_jk, by an integral solve
/// of d g = 0 stacked with the pairing rows.
pub fn generator_cocycles(x: &SimplicialComplex, n: usize, cycles: &[Chain]) -> Result<Vec<Cochain>> {
    let ncols = x.count(n);
    let mut m = if n < x.dim() {
        x.boundary_matrix(n + 1)?.transpose()
    } else {
        SparseMatrix::zeros(0, ncols)
    };
    let cocycle_rows = m.nrows();
    for z in cycles {
        let row = z.to_dense_int(x).into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        m.push_row(row);
    }
    let mut out = Vec::with_capacity(cycles.len());
    for j in 0..cycles.len() {
        let mut rhs = vec![BigInt::zero(); m.nrows()];
        rhs[cocycle_rows + j] = BigInt::one();
        let g = solve_integer(&m, &rhs).ok_or_else(|| Error::Invariant(format!("no integral cocycle dual to cycle {j}")))?;
        let g = Cochain::from_dense_int(x, n, &g);
        if !coboundary(x, &g).is_zero() {
            return Err(Error::Invariant("generator is not a cocycle".into()));
        }
        for (k, z) in cycles.iter().enumerate() {
            if pair(&g, z) != BigRational::from_integer(BigInt::from(i64::from(j == k))) {
                return Err(Error::Invariant("generator pairing is not the identity".into()));
            }
        }
        out.push(g);
    }
    Ok(out)
}

/// γ(Σ_j v_j u_j) = Σ_j v_j [Σ_j]^*.
pub fn class_of_vector(g: &GadgetComplex, v: &[i64]) -> Result<Cochain> {
    if v.len() != g.generator_cocycles.len() {
        return Err(Error::Malformed(format!("{} coefficients for {} generators", v.len(), g.generator_cocycles.len())));
    }
    let mut out = Cochain::zero(g.n);
    for (vj, gen) in v.iter().zip(&g.generator_cocycles) {
        if *vj != 0 {
            out = out.add(&gen.scale(&BigRational::from_integer(BigInt::from(*vj))));
        }
    }
    Ok(out)
}

/// Lower bound for comass_Δ(b) (as a multiple of vol_n^{-1}) from the cycles
/// [S_i]: max_i |⟨b, S_i⟩| / ‖S_i‖₁, with the index attaining it.
pub fn sphere_witness_bound(g: &GadgetComplex, b: &Cochain) -> (BigRational, usize) {
    let scale = num::pow(g.x.edge_scale().clone(), g.n);
    let mut best = (BigRational::zero(), 0);
    for (i, s) in g.s_cycles.iter().enumerate() {
        let r = pair(b, s).abs() / (s.l1_norm() * &scale);
        if r > best.0 {
            best = (r, i);
        }
    }
    best
}

/// Whether comass_Δ(γ(v)) ≥ ‖Σ v_j u_j‖∞ is certified by the [S_i] cycles.
pub fn property_b_certified(g: &GadgetComplex, v: &[i64]) -> Result<bool> {
    let b = class_of_vector(g, v)?;
    let (coeff, _) = sphere_witness_bound(g, &b);
    let target = g.basis.combine(v).iter().map(|e| e.abs()).max().unwrap_or(0);
    let lb = crate::volume::VolMultiple::new(coeff, g.n, -1);
    Ok(lb.cmp_rational(&BigRational::from_integer(BigInt::from(target))) != std::cmp::Ordering::Less)
}

/// The number of (n+1)-cross-polytope blocks in a degree map.
pub fn block_count(degrees: &[i64]) -> usize {
    degrees.iter().map(|d| d.unsigned_abs() as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(a.into())
    }

    #[test]
    fn degree_maps() {
        for n in 1..=3 {
            let w = wedge(n, 2);
            for degrees in [[0, 0], [1, 0], [2, -1], [-3, 2]] {
                let dm = build_degree_map(&w, &degrees).unwrap();
                let got = pushforward(&dm.map, &dm.fundamental);
                let want = w.cycles[0].scale(&q(degrees[0])).add(&w.cycles[1].scale(&q(degrees[1])));
                assert_eq!(got, want, "n={n} degrees={degrees:?}");
                let h = homology(dm.domain(), n);
                assert_eq!(h.betti, 1);
                let c = build_collar(&dm, dm.next_label).unwrap();
                assert_eq!(c.small_sphere.support_len(), n + 2);
            }
        }
    }

    #[test]
    fn constant_degree_map() {
        let w = wedge(2, 1);
        let dm = build_degree_map(&w, &[0]).unwrap();
        assert!(pushforward(&dm.map, &dm.fundamental).is_zero());
        assert_eq!(dm.domain().count(2), 4);
    }

    #[test]
    fn one_by_one_gadget() {
        let g = build_gadget(&LatticeBasis::identity(1), 2).unwrap();
        assert_eq!(homology(&g.x, 2), HomologyGroup { betti: 1, torsion: vec![] });
        assert_eq!(pair(&g.generator_cocycles[0], &g.s_cycles[0]), q(3));
        assert!(property_b_certified(&g, &[1]).unwrap());
    }

    #[test]
    fn two_by_two_identity() {
        let g = build_gadget(&LatticeBasis::identity(2), 2).unwrap();
        for j in 0..2 {
            for i in 0..2 {
                let want = if i == j { 3 } else { 0 };
                assert_eq!(pair(&class_of_vector(&g, &[i64::from(j == 0), i64::from(j == 1)]).unwrap(), &g.s_cycles[i]), q(want));
            }
        }
        assert!(class_of_vector(&g, &[0, 0]).unwrap().is_zero());
        assert!(class_of_vector(&g, &[1]).is_err());
    }

    #[test]
    fn degenerate_basis_is_rejected() {
        let b = LatticeBasis::new(2, vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert!(matches!(build_gadget(&b, 2), Err(Error::RankDeficient { .. })));
        let b = LatticeBasis::new(1, vec![vec![1000]]).unwrap();
        assert!(matches!(build_gadget(&b, 2), Err(Error::EntryCap { .. })));
    }
}
