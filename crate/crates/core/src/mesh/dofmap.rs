use super::p2::P2Nodes;
use super::{EdgeTag, Mesh, Region};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DofField {
    /// Fluid velocity, quadratic, two components.
    FluidVelocity,
    /// Fluid pressure, linear, one component.
    FluidPressure,
    /// Solid displacement, quadratic, two components.
    SolidDisplacement,
    /// Fluid-mesh displacement, quadratic, two components.
    MeshDisplacement,
}

impl DofField {
    pub fn n_components(self) -> usize {
        match self {
            DofField::FluidPressure => 1,
            _ => 2,
        }
    }

    fn region(self) -> Region {
        match self {
            DofField::SolidDisplacement => Region::Solid,
            _ => Region::Fluid,
        }
    }

    fn quadratic(self) -> bool {
        !matches!(self, DofField::FluidPressure)
    }
}

/// Node-to-DoF numbering of one field. Components of a node are stored
/// consecutively, nodes in ascending global node id.
#[derive(Debug, Clone)]
pub struct DofMap {
    pub field: DofField,
    pub n_components: usize,
    /// Global node id -> first DoF of that node, if the node carries this field.
    pub dof_of_node: Vec<Option<usize>>,
    pub node_of_dof: Vec<usize>,
    pub comp_of_dof: Vec<usize>,
    /// DoFs on the fluid-solid interface, sorted.
    pub interface_dofs: Vec<usize>,
    /// Complement of `interface_dofs`, sorted.
    pub interior_dofs: Vec<usize>,
}

impl DofMap {
    pub fn build(mesh: &Mesh, p2: &P2Nodes, field: DofField) -> Self {
        let region = field.region();
        let mut nodes: BTreeSet<usize> = BTreeSet::new();
        for (t, tri_nodes) in p2.tri_nodes.iter().enumerate() {
            if mesh.region[t] != region {
                continue;
            }
            if field.quadratic() {
                nodes.extend(tri_nodes.iter().copied());
            } else {
                nodes.extend(tri_nodes[..3].iter().copied());
            }
        }

        let ncomp = field.n_components();
        let mut dof_of_node = vec![None; p2.n_nodes()];
        let mut node_of_dof = Vec::with_capacity(nodes.len() * ncomp);
        let mut comp_of_dof = Vec::with_capacity(nodes.len() * ncomp);
        for &n in &nodes {
            dof_of_node[n] = Some(node_of_dof.len());
            for c in 0..ncomp {
                node_of_dof.push(n);
                comp_of_dof.push(c);
            }
        }

        let iface_nodes = interface_nodes(mesh, p2, field.quadratic());
        let mut interface_dofs = Vec::new();
        for &n in &iface_nodes {
            if let Some(base) = dof_of_node[n] {
                for c in 0..ncomp {
                    interface_dofs.push(base + c);
                }
            }
        }
        interface_dofs.sort_unstable();
        let iface_set: BTreeSet<usize> = interface_dofs.iter().copied().collect();
        let interior_dofs = (0..node_of_dof.len())
            .filter(|d| !iface_set.contains(d))
            .collect();

        Self {
            field,
            n_components: ncomp,
            dof_of_node,
            node_of_dof,
            comp_of_dof,
            interface_dofs,
            interior_dofs,
        }
    }

    pub fn ndofs(&self) -> usize {
        self.node_of_dof.len()
    }

    pub fn dof(&self, node: usize, comp: usize) -> Option<usize> {
        debug_assert!(comp < self.n_components);
        self.dof_of_node[node].map(|base| base + comp)
    }

    /// DoFs (all components) of every node on edges with the given tag.
    pub fn dofs_on_tag(&self, mesh: &Mesh, p2: &P2Nodes, tag: EdgeTag) -> Vec<usize> {
        let mut out = BTreeSet::new();
        for e in mesh.edges_with_tag(tag) {
            let mut nodes = vec![e.v[0], e.v[1]];
            if self.field.quadratic() {
                if let Some(m) = p2.edge_node(e.v[0], e.v[1]) {
                    nodes.push(m);
                }
            }
            for n in nodes {
                if let Some(base) = self.dof_of_node[n] {
                    for c in 0..self.n_components {
                        out.insert(base + c);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Component-`comp` DoFs of nodes on edges with the given tag.
    pub fn component_dofs_on_tag(
        &self,
        mesh: &Mesh,
        p2: &P2Nodes,
        tag: EdgeTag,
        comp: usize,
    ) -> Vec<usize> {
        self.dofs_on_tag(mesh, p2, tag)
            .into_iter()
            .filter(|d| self.comp_of_dof[*d] == comp)
            .collect()
    }

    /// Per-element DoF lists (all components), for decomposition induction.
    pub fn element_dofs(&self, mesh: &Mesh, p2: &P2Nodes) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(mesh.n_triangles());
        for (t, tri_nodes) in p2.tri_nodes.iter().enumerate() {
            let mut dofs = Vec::new();
            if mesh.region[t] == self.field.region() {
                let nodes: &[usize] = if self.field.quadratic() {
                    tri_nodes
                } else {
                    &tri_nodes[..3]
                };
                for &n in nodes {
                    if let Some(base) = self.dof_of_node[n] {
                        for c in 0..self.n_components {
                            dofs.push(base + c);
                        }
                    }
                }
                dofs.sort_unstable();
            }
            out.push(dofs);
        }
        out
    }
}

/// Nodes lying on interface edges (endpoints, plus midpoints for
/// quadratic fields).
pub fn interface_nodes(mesh: &Mesh, p2: &P2Nodes, quadratic: bool) -> Vec<usize> {
    let mut nodes = BTreeSet::new();
    for e in mesh.edges_with_tag(EdgeTag::Interface) {
        nodes.insert(e.v[0]);
        nodes.insert(e.v[1]);
        if quadratic {
            if let Some(m) = p2.edge_node(e.v[0], e.v[1]) {
                nodes.insert(m);
            }
        }
    }
    nodes.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_channel_mesh;

    #[test]
    fn interface_and_interior_partition_dofs() {
        let mesh = build_channel_mesh(4, 2, 1, 4.0, 1.0, 0.3).unwrap();
        let p2 = P2Nodes::build(&mesh);
        for field in [
            DofField::FluidVelocity,
            DofField::FluidPressure,
            DofField::SolidDisplacement,
            DofField::MeshDisplacement,
        ] {
            let map = DofMap::build(&mesh, &p2, field);
            assert_eq!(
                map.interface_dofs.len() + map.interior_dofs.len(),
                map.ndofs()
            );
            let mut all: Vec<usize> = map
                .interface_dofs
                .iter()
                .chain(&map.interior_dofs)
                .copied()
                .collect();
            all.sort_unstable();
            assert_eq!(all, (0..map.ndofs()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn velocity_interface_count_matches_mesh() {
        // nx interface edges -> nx+1 vertex nodes + nx midpoints, 2 comps.
        let nx = 4;
        let mesh = build_channel_mesh(nx, 2, 1, 4.0, 1.0, 0.3).unwrap();
        let p2 = P2Nodes::build(&mesh);
        let map = DofMap::build(&mesh, &p2, DofField::FluidVelocity);
        assert_eq!(map.interface_dofs.len(), 2 * (2 * nx + 1));
        let mapp = DofMap::build(&mesh, &p2, DofField::FluidPressure);
        assert_eq!(mapp.interface_dofs.len(), nx + 1);
    }
}
