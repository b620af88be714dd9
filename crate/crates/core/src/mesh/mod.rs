//! Desk-scale finite element problem factory.
//!
//! Provides a 2D flexible-channel FSI geometry (a fluid strip topped by an
//! elastic wall strip), Taylor-Hood fluid assembly in ALE form, a
//! linear-elastic wall, the harmonic-extension geometry problem, interface
//! coupling blocks, a synthetic random block-system generator for
//! algebra-only verification, and a P1 Poisson test problem.

mod channel;
mod coupling;
mod dofmap;
mod export;
mod fluid;
mod geometry;
mod p2;
mod poisson;
mod quadrature;
mod solid;
mod synthetic;
mod system;

pub use channel::{build_channel_mesh, build_fluid_channel_mesh, build_rectangle_mesh};
pub use coupling::{assemble_coupling, Coupling};
pub use dofmap::{DofField, DofMap};
pub use export::{export_block_system, write_mesh_text};
pub use fluid::{assemble_fluid, FluidAssembly, FluidOptions};
pub use geometry::assemble_geometry;
pub use p2::P2Nodes;
pub use poisson::{assemble_poisson_p1, PoissonProblem};
pub use solid::{assemble_solid, SolidAssembly, SolidOptions};
pub use synthetic::{generate_synthetic_block_system, SyntheticSizes};
pub use system::BlockSystem;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error("degenerate mesh dimensions: {0}")]
    BadDimensions(String),
    #[error("inverted or degenerate element {element} (det J = {det})")]
    DegenerateElement { element: usize, det: f64 },
    #[error("interface edge ({a},{b}) is not shared by exactly one fluid and one solid triangle")]
    BadInterface { a: usize, b: usize },
    #[error("mismatched interface DoF counts between fields: {0}")]
    InterfaceMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Fluid,
    Solid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeTag {
    Inlet,
    Outlet,
    WallOuter,
    Symmetry,
    Interface,
    Clamp,
}

impl EdgeTag {
    pub fn name(self) -> &'static str {
        match self {
            EdgeTag::Inlet => "inlet",
            EdgeTag::Outlet => "outlet",
            EdgeTag::WallOuter => "wall_outer",
            EdgeTag::Symmetry => "symmetry",
            EdgeTag::Interface => "interface",
            EdgeTag::Clamp => "clamp",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TaggedEdge {
    /// Vertex pair, sorted ascending.
    pub v: [usize; 2],
    pub tag: EdgeTag,
}

/// Conforming triangle mesh with per-element region tags and tagged
/// boundary/interface edges. Coordinates are in cm.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub region: Vec<Region>,
    pub tagged_edges: Vec<TaggedEdge>,
}

impl Mesh {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle_vertices(&self, t: usize) -> [[f64; 2]; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Twice the signed area of triangle `t`.
    pub fn det_jacobian(&self, t: usize) -> f64 {
        let [p0, p1, p2] = self.triangle_vertices(t);
        (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1])
    }

    pub fn edges_with_tag(&self, tag: EdgeTag) -> impl Iterator<Item = &TaggedEdge> {
        self.tagged_edges.iter().filter(move |e| e.tag == tag)
    }

    /// Element-to-element adjacency across shared edges.
    pub fn element_adjacency(&self) -> Vec<Vec<usize>> {
        use std::collections::BTreeMap;
        let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                edge_tris.entry(key).or_default().push(t);
            }
        }
        let mut adj = vec![Vec::new(); self.n_triangles()];
        for tris in edge_tris.values() {
            if tris.len() == 2 {
                adj[tris[0]].push(tris[1]);
                adj[tris[1]].push(tris[0]);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    /// Checks the interface invariant: every interface edge is shared by
    /// exactly one fluid and one solid triangle.
    pub fn validate_interface(&self) -> Result<(), MeshError> {
        use std::collections::BTreeMap;
        let mut edge_regions: BTreeMap<(usize, usize), Vec<Region>> = BTreeMap::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                edge_regions
                    .entry((a.min(b), a.max(b)))
                    .or_default()
                    .push(self.region[t]);
            }
        }
        for e in self.edges_with_tag(EdgeTag::Interface) {
            let key = (e.v[0], e.v[1]);
            let regions = edge_regions.get(&key).ok_or(MeshError::BadInterface {
                a: e.v[0],
                b: e.v[1],
            })?;
            let fluid = regions.iter().filter(|r| **r == Region::Fluid).count();
            let solid = regions.iter().filter(|r| **r == Region::Solid).count();
            if fluid != 1 || solid != 1 {
                return Err(MeshError::BadInterface {
                    a: e.v[0],
                    b: e.v[1],
                });
            }
        }
        Ok(())
    }

    /// Number of distinct edges, for Euler characteristic checks.
    pub fn n_edges(&self) -> usize {
        use std::collections::BTreeSet;
        let mut set = BTreeSet::new();
        for tri in &self.triangles {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                set.insert((a.min(b), a.max(b)));
            }
        }
        set.len()
    }
}

/// Fluid and solid parameters. Pressures and moduli are stored in kPa as
/// reported; `stress_scale` converts them to the consistent cm-kg-s system
/// used by the assembly (1 kPa = 10 kg/(cm s^2)).
#[derive(Debug, Clone)]
pub struct PhysicalParams {
    /// Kinematic viscosity, cm^2/s.
    pub nu_f: f64,
    /// Fluid density, kg/cm^3.
    pub rho_f: f64,
    /// Solid density, kg/cm^3.
    pub rho_s: f64,
    /// Poisson ratio.
    pub poisson: f64,
    /// Shear modulus, kPa.
    pub mu_s: f64,
    /// Young's modulus, kPa.
    pub e_young: f64,
    /// Reference outflow pressure, kPa.
    pub p_ref: f64,
    /// Time step size, s.
    pub dt: f64,
    /// Target flow rate, cm^2/s per unit depth (2D analogue of cm^3/s).
    pub flow_rate: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self {
            nu_f: 0.0291,
            rho_f: 1.03e-3,
            rho_s: 1.0e-3,
            poisson: 0.49,
            mu_s: 127.52,
            e_young: 380.0,
            p_ref: 10.66,
            dt: 0.001,
            flow_rate: 3.0,
        }
    }
}

impl PhysicalParams {
    pub const KPA_TO_MODEL: f64 = 10.0;

    pub fn validate(&self) -> Result<(), MeshError> {
        let all_positive = self.nu_f > 0.0
            && self.rho_f > 0.0
            && self.rho_s > 0.0
            && self.poisson > 0.0
            && self.mu_s > 0.0
            && self.e_young > 0.0
            && self.p_ref > 0.0
            && self.dt > 0.0
            && self.flow_rate > 0.0;
        if !all_positive || self.poisson >= 0.5 {
            return Err(MeshError::BadDimensions(
                "physical parameters must be strictly positive with poisson < 0.5".into(),
            ));
        }
        Ok(())
    }

    /// Dynamic viscosity in kg/(cm s).
    pub fn mu_dynamic(&self) -> f64 {
        self.rho_f * self.nu_f
    }

    /// Young's modulus in model stress units.
    pub fn e_model(&self) -> f64 {
        self.e_young * Self::KPA_TO_MODEL
    }

    /// Reference pressure in model stress units.
    pub fn p_ref_model(&self) -> f64 {
        self.p_ref * Self::KPA_TO_MODEL
    }
}
