//! Run configuration: one TOML document with nested sections.
//!
//! Every section and key is optional and falls back to a documented default;
//! unknown keys are rejected so typos surface as errors. [`Config::resolved`]
//! materializes all defaults so the result can be written back and replayed.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cavitation::{CavitationParams, EnhancementSource, RateMode};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::ising::{CouplingSet, RunConfig};
use crate::lattice::{Boundary, FieldPattern, InitialSpins, TriangularLattice};
use crate::vortex::{SuperconductorSpec, SuperfluidSpec};

const C: PhysicalConstants = PhysicalConstants::CODATA_2018;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub superfluid: SuperfluidSection,
    pub superconductor: SuperconductorSection,
    pub lattice: LatticeSection,
    pub couplings: CouplingsSection,
    pub run: RunConfig,
    pub cavitation: CavitationSection,
    pub sweep: SweepSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuperfluidSection {
    pub m_s: f64,
    pub r0: f64,
    pub q_s: f64,
}

impl Default for SuperfluidSection {
    fn default() -> Self {
        let s = SuperfluidSpec::helium3(&C);
        SuperfluidSection {
            m_s: s.m_s,
            r0: s.r0,
            q_s: s.q_s,
        }
    }
}

/// Give either `xi` or `k`; ξ = 1e-8 m when neither is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuperconductorSection {
    pub e_c: f64,
    pub lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
}

impl Default for SuperconductorSection {
    fn default() -> Self {
        SuperconductorSection {
            e_c: C.cooper_pair_charge(),
            lambda: 1e-7,
            xi: None,
            k: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialKind {
    #[default]
    AllUp,
    AllDown,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LatticeSection {
    pub lx: usize,
    pub ly: usize,
    pub bc: Boundary,
    pub initial: InitialKind,
    /// Seed for `initial = "random"`.
    pub init_seed: u64,
    pub field: FieldPattern,
}

impl Default for LatticeSection {
    fn default() -> Self {
        LatticeSection {
            lx: 3,
            ly: 3,
            bc: Boundary::Periodic,
            initial: InitialKind::AllUp,
            init_seed: 0,
            field: FieldPattern::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CouplingsSection {
    pub k: f64,
    pub t_red: f64,
}

impl Default for CouplingsSection {
    fn default() -> Self {
        CouplingsSection { k: 0.0, t_red: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CavitationSection {
    pub j0: f64,
    pub delta_omega_max: f64,
    pub t_star: f64,
    pub source: EnhancementSource,
    pub mode: RateMode,
}

impl Default for CavitationSection {
    fn default() -> Self {
        CavitationSection {
            j0: 1.0,
            delta_omega_max: 0.0,
            t_star: 1.0,
            source: EnhancementSource::Exact,
            mode: RateMode::Thermal,
        }
    }
}

/// Grid axes. An absent `l` keeps the lattice section's size; an absent `b`
/// keeps its field pattern. Absent `k`/`t_red` resolve to the couplings section.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_red: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<f64>>,
    pub chains: u64,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            l: None,
            k: None,
            t_red: None,
            b: None,
            chains: 1,
        }
    }
}

/// One point of a sweep grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub lx: usize,
    pub ly: usize,
    pub k: f64,
    pub t_red: f64,
    /// Uniform field override; `None` keeps the lattice section's pattern.
    pub b: Option<f64>,
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::config(e.to_string().trim_end().to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Copy with every default materialized and the seed override applied.
    pub fn resolved(&self, seed: Option<u64>) -> Self {
        let mut c = self.clone();
        if c.superconductor.xi.is_none() && c.superconductor.k.is_none() {
            c.superconductor.xi = Some(1e-8);
        }
        if c.sweep.k.is_none() {
            c.sweep.k = Some(vec![c.couplings.k]);
        }
        if c.sweep.t_red.is_none() {
            c.sweep.t_red = Some(vec![c.couplings.t_red]);
        }
        if let Some(s) = seed {
            c.run.seed = s;
        }
        c
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes to TOML")
    }

    pub fn superfluid(&self) -> Result<SuperfluidSpec> {
        let s = &self.superfluid;
        SuperfluidSpec::new(s.m_s, s.r0, s.q_s).map_err(|e| Error::config(format!("[superfluid] {e}")))
    }

    pub fn superconductor(&self) -> Result<SuperconductorSpec> {
        let s = &self.superconductor;
        let sc = match (s.xi, s.k) {
            (Some(_), Some(_)) => return Err(Error::config("[superconductor] set either xi or k, not both")),
            (None, Some(k)) => SuperconductorSpec::from_lambda_k(s.e_c, s.lambda, k),
            (xi, None) => SuperconductorSpec::new(s.e_c, s.lambda, xi.unwrap_or(1e-8)),
        };
        sc.map_err(|e| Error::config(format!("[superconductor] {e}")))
    }

    pub fn couplings(&self) -> Result<CouplingSet> {
        CouplingSet::new(self.couplings.k, self.couplings.t_red).map_err(|e| prefix("couplings", e))
    }

    pub fn run_config(&self) -> Result<RunConfig> {
        self.run.validate()?;
        Ok(self.run)
    }

    pub fn cavitation(&self) -> Result<CavitationParams> {
        let c = &self.cavitation;
        CavitationParams::new(c.j0, c.delta_omega_max, c.t_star)
    }

    pub fn initial_spins(&self) -> InitialSpins {
        match self.lattice.initial {
            InitialKind::AllUp => InitialSpins::AllUp,
            InitialKind::AllDown => InitialSpins::AllDown,
            InitialKind::Random => InitialSpins::Random {
                seed: self.lattice.init_seed,
            },
        }
    }

    pub fn lattice(&self) -> Result<TriangularLattice> {
        let l = &self.lattice;
        TriangularLattice::build(l.lx, l.ly, l.bc, self.initial_spins(), &l.field).map_err(|e| prefix("lattice", e))
    }

    /// Lattice for a sweep point.
    pub fn lattice_at(&self, p: &GridPoint) -> Result<TriangularLattice> {
        let field = match p.b {
            Some(b) => FieldPattern::Uniform { b },
            None => self.lattice.field.clone(),
        };
        TriangularLattice::build(p.lx, p.ly, self.lattice.bc, self.initial_spins(), &field)
            .map_err(|e| prefix("sweep", e))
    }

    /// Grid points ordered L, then K, then T_red, then b (last varies fastest).
    pub fn grid(&self) -> Result<Vec<GridPoint>> {
        let sizes: Vec<(usize, usize)> = match &self.sweep.l {
            Some(ls) => ls.iter().map(|&l| (l, l)).collect(),
            None => vec![(self.lattice.lx, self.lattice.ly)],
        };
        let ks = self.sweep.k.clone().unwrap_or_else(|| vec![self.couplings.k]);
        let ts = self.sweep.t_red.clone().unwrap_or_else(|| vec![self.couplings.t_red]);
        let bs: Vec<Option<f64>> = match &self.sweep.b {
            Some(bs) => bs.iter().map(|&b| Some(b)).collect(),
            None => vec![None],
        };
        if sizes.is_empty() || ks.is_empty() || ts.is_empty() || bs.is_empty() {
            return Err(Error::config("[sweep] grid is empty: every axis needs at least one value"));
        }
        if self.sweep.chains < 1 {
            return Err(Error::config("[sweep] chains must be at least 1"));
        }
        for &t in &ts {
            CouplingSet::new(0.0, t).map_err(|e| prefix("sweep", e))?;
        }
        let mut out = Vec::with_capacity(sizes.len() * ks.len() * ts.len() * bs.len());
        for &(lx, ly) in &sizes {
            for &k in &ks {
                for &t_red in &ts {
                    for &b in &bs {
                        out.push(GridPoint { lx, ly, k, t_red, b });
                    }
                }
            }
        }
        Ok(out)
    }
}

fn prefix(section: &str, e: Error) -> Error {
    match e {
        Error::Config(m) | Error::Domain(m) => Error::config(format!("[{section}] {m}")),
        other => other,
    }
}
