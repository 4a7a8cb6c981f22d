//! Finite abstract simplicial complexes with the uniform simplexwise metric.

use std::collections::{BTreeSet, HashMap};

use num::{BigInt, BigRational, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// A simplex is stored as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

/// Sorts `vertices` in place and returns the sign of the sorting permutation,
/// or `None` if a vertex repeats.
pub fn sort_with_sign(vertices: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort keeps the parity bookkeeping trivial for short tuples
    for i in 1..vertices.len() {
        let mut j = i;
        while j > 0 && vertices[j - 1] > vertices[j] {
            vertices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if vertices.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// Faces of codimension one, in the order of the removed vertex index.
pub fn facets_of(s: &[usize]) -> impl Iterator<Item = (usize, Simplex)> + '_ {
    (0..s.len()).map(move |i| {
        let mut f = Vec::with_capacity(s.len() - 1);
        f.extend_from_slice(&s[..i]);
        f.extend_from_slice(&s[i + 1..]);
        (i, f)
    })
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    levels: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    edge_scale: BigRational,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels && self.edge_scale == other.edge_scale
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Face closure of a list of simplices (validate_complex).
    pub fn from_maximal<I, S>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[usize]>,
    {
        let mut sets: Vec<BTreeSet<Simplex>> = Vec::new();
        for s in raw {
            let mut v = s.as_ref().to_vec();
            if v.is_empty() {
                return Err(Error::Malformed("empty simplex".into()));
            }
            if sort_with_sign(&mut v).is_none() {
                return Err(Error::Malformed(format!("repeated vertex in simplex {:?}", s.as_ref())));
            }
            let k = v.len() - 1;
            if sets.len() <= k {
                sets.resize_with(k + 1, BTreeSet::new);
            }
            sets[k].insert(v);
        }
        if sets.is_empty() {
            return Err(Error::Malformed("complex has no simplices".into()));
        }
        for k in (1..sets.len()).rev() {
            let faces: Vec<Simplex> = sets[k]
                .iter()
                .flat_map(|s| facets_of(s).map(|(_, f)| f).collect::<Vec<_>>())
                .collect();
            sets[k - 1].extend(faces);
        }
        Ok(Self::from_levels(sets.into_iter().map(|s| s.into_iter().collect()).collect()))
    }

    fn from_levels(levels: Vec<Vec<Simplex>>) -> Self {
        let index = levels
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { levels, index, edge_scale: BigRational::one() }
    }

    pub fn with_edge_scale(mut self, scale: BigRational) -> Self {
        assert!(scale > BigRational::from_integer(BigInt::from(0)), "edge scale must be positive");
        self.edge_scale = scale;
        self
    }

    pub fn edge_scale(&self) -> &BigRational {
        &self.edge_scale
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn count(&self, k: usize) -> usize {
        self.levels.get(k).map_or(0, Vec::len)
    }

    pub fn total_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.levels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels[0].iter().map(|v| v[0])
    }

    pub fn max_vertex(&self) -> usize {
        self.levels[0].last().map(|v| v[0]).unwrap_or(0)
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let k = s.len().checked_sub(1)?;
        self.index.get(k)?.get(s).copied()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index_of(s).is_some()
    }

    /// Simplices that are not a face of any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<&Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for k in (0..self.levels.len()).rev() {
            for s in &self.levels[k] {
                if !covered.contains(s) {
                    out.push(s.clone());
                }
            }
            if k > 0 {
                for s in &self.levels[k] {
                    for (_, f) in facets_of(s) {
                        if let Some(i) = self.index_of(&f) {
                            covered.insert(&self.levels[k - 1][i]);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Union with another complex on a shared vertex label space.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut all = self.maximal_simplices();
        all.extend(other.maximal_simplices());
        SimplicialComplex::from_maximal(all)
            .expect("union of valid complexes")
            .with_edge_scale(self.edge_scale.clone())
    }

    /// Applies an injective relabeling of vertices.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> SimplicialComplex {
        let maxi: Vec<Simplex> = self
            .maximal_simplices()
            .into_iter()
            .map(|s| s.into_iter().map(&f).collect())
            .collect();
        SimplicialComplex::from_maximal(maxi)
            .expect("relabeling must be injective")
            .with_edge_scale(self.edge_scale.clone())
    }

    /// Signed incidence matrix of the boundary map from k-chains to (k-1)-chains.
    pub fn boundary_matrix(&self, k: usize) -> Result<SparseMatrix<BigInt>> {
        if k == 0 || k > self.dim() {
            return Err(Error::DegreeOutOfRange { k, dim: self.dim() });
        }
        let mut m = SparseMatrix::zeros(self.count(k - 1), self.count(k));
        for (c, s) in self.levels[k].iter().enumerate() {
            for (i, f) in facets_of(s) {
                let r = self.index_of(&f).expect("face closure");
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.set(r, c, BigInt::from(sign));
            }
        }
        Ok(m)
    }

    /// Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.levels
            .iter()
            .enumerate()
            .map(|(k, l)| if k % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Cofaces of each (k-1)-simplex among the k-simplices, as (coface index, sign).
    pub fn coface_table(&self, k: usize) -> Vec<Vec<(usize, i32)>> {
        let mut table = vec![Vec::new(); self.count(k.saturating_sub(1))];
        if k == 0 {
            return table;
        }
        for (c, s) in self.simplices(k).iter().enumerate() {
            for (i, f) in facets_of(s) {
                let r = self.index_of(&f).expect("face closure");
                table[r].push((c, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        table
    }

    /// Disjoint union, shifting the other complex's labels past ours.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.max_vertex() + 1;
        self.union(&other.relabel(|v| v + shift))
    }
}

/// Volume of the regular k-simplex with unit edges: sqrt(k+1) / (k! 2^{k/2}).
pub fn simplex_volume(k: usize) -> f64 {
    simplex_volume_sq(k).to_f64().expect("finite").sqrt()
}

/// Exact square of [`simplex_volume`]: (k+1) / ((k!)^2 2^k).
pub fn simplex_volume_sq(k: usize) -> BigRational {
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    let den = &fact * &fact * (BigInt::one() << k);
    BigRational::new(BigInt::from(k + 1), den)
}
