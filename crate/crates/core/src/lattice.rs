//! Triangular lattice of vortex spins with quenched site-local fields.
//!
//! Sites are indexed `(i, j)` with `i ∈ [0, lx)`, `j ∈ [0, ly)` and stored
//! row-major with `j` fastest: `index = i·ly + j`. Each site owns three
//! forward bonds, to `(i, j+1)`, `(i+1, j)` and `(i+1, j+1)`; together with
//! their reverses they give the six nearest neighbours of the triangular
//! lattice.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::chain_rng;

/// Bond directions owned by every site, as `(di, dj)`.
pub const FORWARD_BONDS: [(isize, isize); 3] = [(0, 1), (1, 0), (1, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

impl Boundary {
    pub fn min_size(self) -> usize {
        match self {
            Boundary::Periodic => 3,
            Boundary::Open => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum InitialSpins {
    AllUp,
    AllDown,
    Random { seed: u64 },
}

/// How the reduced fields `b_i` are laid out over the lattice.
///
/// `Uniform` is perfect superposition of the two vortex lattices. `Diluted`
/// is an extension for imperfect superposition: each site independently
/// carries `b` with probability `p` and zero otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", deny_unknown_fields)]
pub enum FieldPattern {
    Uniform { b: f64 },
    Diluted { b: f64, p: f64, seed: u64 },
    Explicit { values: Vec<f64> },
}

impl FieldPattern {
    pub fn zero() -> Self {
        FieldPattern::Uniform { b: 0.0 }
    }

    fn realize(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            FieldPattern::Uniform { b } => Ok(vec![*b; n]),
            FieldPattern::Diluted { b, p, seed } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::config(format!("dilution fraction p must lie in [0, 1], got {p}")));
                }
                let mut rng = chain_rng(*seed, 0);
                Ok((0..n)
                    .map(|_| if rng.random::<f64>() < *p { *b } else { 0.0 })
                    .collect())
            }
            FieldPattern::Explicit { values } => {
                if values.len() != n {
                    return Err(Error::config(format!(
                        "explicit field pattern has {} values, lattice has {n} sites",
                        values.len()
                    )));
                }
                Ok(values.clone())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub i: usize,
    pub j: usize,
}

impl Site {
    pub fn new(i: usize, j: usize) -> Self {
        Site { i, j }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TriangularLattice {
    lx: usize,
    ly: usize,
    bc: Boundary,
    spins: Vec<i8>,
    fields: Vec<f64>,
    // CSR adjacency: neighbours of site s are adj[adj_start[s]..adj_start[s + 1]]
    adj_start: Vec<usize>,
    adj: Vec<usize>,
    bonds: Vec<(usize, usize)>,
}

impl TriangularLattice {
    /// Builds a lattice with spins set by `initial` and fields by `pattern`.
    pub fn build(
        lx: usize,
        ly: usize,
        bc: Boundary,
        initial: InitialSpins,
        pattern: &FieldPattern,
    ) -> Result<Self> {
        check_size(lx, ly, bc)?;
        let n = lx * ly;
        let spins = match initial {
            InitialSpins::AllUp => vec![1; n],
            InitialSpins::AllDown => vec![-1; n],
            InitialSpins::Random { seed } => {
                let mut rng = chain_rng(seed, 0);
                (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect()
            }
        };
        let fields = pattern.realize(n)?;
        Self::from_parts(lx, ly, bc, spins, fields)
    }

    /// Assembles a lattice from raw row-major arrays.
    pub fn from_parts(lx: usize, ly: usize, bc: Boundary, spins: Vec<i8>, fields: Vec<f64>) -> Result<Self> {
        check_size(lx, ly, bc)?;
        let n = lx * ly;
        if spins.len() != n || fields.len() != n {
            return Err(Error::config(format!(
                "expected {n} spins and fields, got {} spins and {} fields",
                spins.len(),
                fields.len()
            )));
        }
        if let Some(s) = spins.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::config(format!("spin values must be -1 or +1, found {s}")));
        }
        if let Some(b) = fields.iter().find(|b| !b.is_finite()) {
            return Err(Error::config(format!("fields must be finite, found {b}")));
        }

        let mut lat = TriangularLattice {
            lx,
            ly,
            bc,
            spins,
            fields,
            adj_start: Vec::new(),
            adj: Vec::new(),
            bonds: Vec::new(),
        };
        lat.bonds = lat.compute_bonds();
        let mut lists = vec![Vec::with_capacity(6); n];
        for &(a, b) in &lat.bonds {
            lists[a].push(b);
            lists[b].push(a);
        }
        lat.adj_start.push(0);
        for l in lists {
            lat.adj.extend(l);
            lat.adj_start.push(lat.adj.len());
        }
        Ok(lat)
    }

    pub fn lx(&self) -> usize {
        self.lx
    }

    pub fn ly(&self) -> usize {
        self.ly
    }

    pub fn boundary(&self) -> Boundary {
        self.bc
    }

    pub fn n_sites(&self) -> usize {
        self.lx * self.ly
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn index(&self, site: Site) -> Result<usize> {
        if site.i < self.lx && site.j < self.ly {
            Ok(site.i * self.ly + site.j)
        } else {
            Err(Error::domain(format!(
                "site ({}, {}) outside {}x{} lattice",
                site.i, site.j, self.lx, self.ly
            )))
        }
    }

    pub fn site(&self, index: usize) -> Site {
        Site::new(index / self.ly, index % self.ly)
    }

    pub fn spin(&self, index: usize) -> i8 {
        self.spins[index]
    }

    pub fn flip(&mut self, index: usize) {
        self.spins[index] = -self.spins[index];
    }

    pub fn set_spins(&mut self, spins: &[i8]) -> Result<()> {
        if spins.len() != self.spins.len() || spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::config("spin array must hold one ±1 entry per site"));
        }
        self.spins.copy_from_slice(spins);
        Ok(())
    }

    /// Neighbour indices of the site at `index` (no range check).
    #[inline]
    pub fn neighbor_indices(&self, index: usize) -> &[usize] {
        &self.adj[self.adj_start[index]..self.adj_start[index + 1]]
    }

    /// Nearest neighbours of `site`: six in the bulk, fewer at open edges.
    pub fn neighbors(&self, site: Site) -> Result<Vec<Site>> {
        let idx = self.index(site)?;
        let mut out: Vec<Site> = self.neighbor_indices(idx).iter().map(|&k| self.site(k)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Undirected bond list, each pair once, as `(owner, partner)` indices.
    pub fn bond_list(&self) -> &[(usize, usize)] {
        &self.bonds
    }

    pub fn magnetization(&self) -> i64 {
        self.spins.iter().map(|&s| s as i64).sum()
    }

    /// Σ b_i σ_i.
    pub fn field_term(&self) -> f64 {
        self.spins.iter().zip(&self.fields).map(|(&s, &b)| b * s as f64).sum()
    }

    /// Σ over bonds of σ_a σ_b.
    pub fn bond_sum(&self) -> i64 {
        self.bonds
            .iter()
            .map(|&(a, b)| (self.spins[a] * self.spins[b]) as i64)
            .sum()
    }

    fn shifted(&self, i: usize, j: usize, di: isize, dj: isize) -> Option<usize> {
        let ni = i as isize + di;
        let nj = j as isize + dj;
        match self.bc {
            Boundary::Periodic => {
                let ni = ni.rem_euclid(self.lx as isize) as usize;
                let nj = nj.rem_euclid(self.ly as isize) as usize;
                Some(ni * self.ly + nj)
            }
            Boundary::Open => {
                if ni < 0 || nj < 0 || ni >= self.lx as isize || nj >= self.ly as isize {
                    None
                } else {
                    Some(ni as usize * self.ly + nj as usize)
                }
            }
        }
    }

    fn compute_bonds(&self) -> Vec<(usize, usize)> {
        let mut bonds = Vec::with_capacity(3 * self.n_sites());
        for i in 0..self.lx {
            for j in 0..self.ly {
                let a = i * self.ly + j;
                for &(di, dj) in &FORWARD_BONDS {
                    if let Some(b) = self.shifted(i, j, di, dj) {
                        bonds.push((a, b));
                    }
                }
            }
        }
        bonds
    }

    pub fn snapshot(&self) -> LatticeSnapshot {
        LatticeSnapshot {
            lx: self.lx,
            ly: self.ly,
            bc: self.bc,
            spins: self.spins.clone(),
            fields: self.fields.clone(),
        }
    }

    pub fn from_snapshot(s: LatticeSnapshot) -> Result<Self> {
        Self::from_parts(s.lx, s.ly, s.bc, s.spins, s.fields)
    }
}

fn check_size(lx: usize, ly: usize, bc: Boundary) -> Result<()> {
    let min = bc.min_size();
    if lx < min || ly < min {
        return Err(Error::config(format!(
            "{bc:?} lattice needs lx, ly >= {min}, got {lx}x{ly}"
        )));
    }
    Ok(())
}

/// Serialized form of a lattice: flat row-major `spins` and `fields`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSnapshot {
    pub lx: usize,
    pub ly: usize,
    pub bc: Boundary,
    pub spins: Vec<i8>,
    pub fields: Vec<f64>,
}

impl LatticeSnapshot {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("snapshot serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config(format!("lattice snapshot: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn lat(l: usize, bc: Boundary) -> TriangularLattice {
        TriangularLattice::build(l, l, bc, InitialSpins::AllUp, &FieldPattern::zero()).unwrap()
    }

    #[test]
    fn build_3x3_all_up() {
        let l = lat(3, Boundary::Periodic);
        assert_eq!(l.spins(), &[1; 9]);
        assert_eq!(l.fields(), &[0.0; 9]);
    }

    #[test]
    fn size_minimums() {
        let p = FieldPattern::zero();
        assert!(TriangularLattice::build(2, 3, Boundary::Periodic, InitialSpins::AllUp, &p).is_err());
        assert!(TriangularLattice::build(1, 1, Boundary::Open, InitialSpins::AllUp, &p).is_ok());
        assert!(TriangularLattice::build(0, 1, Boundary::Open, InitialSpins::AllUp, &p).is_err());
    }

    #[test]
    fn explicit_length_mismatch() {
        let p = FieldPattern::Explicit { values: vec![0.1; 8] };
        assert!(matches!(
            TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &p),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn periodic_corner_neighbors() {
        let l = lat(3, Boundary::Periodic);
        let got: BTreeSet<Site> = l.neighbors(Site::new(0, 0)).unwrap().into_iter().collect();
        let want: BTreeSet<Site> = [(0, 1), (1, 0), (1, 1), (0, 2), (2, 0), (2, 2)]
            .into_iter()
            .map(|(i, j)| Site::new(i, j))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn open_corner_neighbors() {
        let l = lat(3, Boundary::Open);
        let got = l.neighbors(Site::new(0, 0)).unwrap();
        assert_eq!(got, vec![Site::new(0, 1), Site::new(1, 0), Site::new(1, 1)]);
        assert!(l.neighbors(Site::new(3, 0)).is_err());
    }

    #[test]
    fn bond_counts() {
        assert_eq!(lat(3, Boundary::Periodic).bond_list().len(), 27);
        assert_eq!(lat(4, Boundary::Periodic).bond_list().len(), 48);
        assert_eq!(lat(3, Boundary::Open).bond_list().len(), 16);
        for (lx, ly) in [(1, 1), (1, 5), (4, 7), (6, 3)] {
            let l = TriangularLattice::build(lx, ly, Boundary::Open, InitialSpins::AllUp, &FieldPattern::zero())
                .unwrap();
            assert_eq!(l.bond_list().len(), 3 * lx * ly + 1 - 2 * lx - 2 * ly);
        }
    }

    #[test]
    fn diluted_is_deterministic_and_degenerate_cases() {
        let d = FieldPattern::Diluted { b: 0.5, p: 0.25, seed: 7 };
        let a = TriangularLattice::build(4, 4, Boundary::Open, InitialSpins::Random { seed: 7 }, &d).unwrap();
        let b = TriangularLattice::build(4, 4, Boundary::Open, InitialSpins::Random { seed: 7 }, &d).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.snapshot().to_json(), b.snapshot().to_json());

        let full = FieldPattern::Diluted { b: 1.0, p: 1.0, seed: 99 };
        let uni = FieldPattern::Uniform { b: 1.0 };
        let f = TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &full).unwrap();
        let u = TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &uni).unwrap();
        assert_eq!(f, u);

        let empty = FieldPattern::Diluted { b: 1.0, p: 0.0, seed: 99 };
        let e = TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &empty).unwrap();
        assert_eq!(e, lat(3, Boundary::Periodic));

        let bad = FieldPattern::Diluted { b: 1.0, p: 1.5, seed: 1 };
        assert!(TriangularLattice::build(3, 3, Boundary::Periodic, InitialSpins::AllUp, &bad).is_err());
    }

    #[test]
    fn snapshot_keys_and_round_trip() {
        let l = TriangularLattice::build(
            3,
            4,
            Boundary::Periodic,
            InitialSpins::Random { seed: 3 },
            &FieldPattern::Uniform { b: 0.25 },
        )
        .unwrap();
        let json = l.snapshot().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: BTreeSet<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["bc", "fields", "lx", "ly", "spins"].into_iter().collect());
        assert_eq!(v["bc"], "periodic");
        let back = TriangularLattice::from_snapshot(LatticeSnapshot::from_json(&json).unwrap()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn snapshot_rejects_bad_spin() {
        let s = LatticeSnapshot {
            lx: 1,
            ly: 1,
            bc: Boundary::Open,
            spins: vec![0],
            fields: vec![0.0],
        };
        assert!(TriangularLattice::from_snapshot(s).is_err());
    }
}
