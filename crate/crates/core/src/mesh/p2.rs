use super::Mesh;
use std::collections::BTreeMap;

/// Global quadratic node numbering: mesh vertices first, then one node per
/// unique edge (its midpoint). Local node order per triangle is
/// `[v0, v1, v2, m01, m12, m20]`, matching the P2 basis order.
#[derive(Debug, Clone)]
pub struct P2Nodes {
    pub n_vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub tri_nodes: Vec<[usize; 6]>,
    edge_ids: BTreeMap<(usize, usize), usize>,
}

impl P2Nodes {
    pub fn build(mesh: &Mesh) -> Self {
        let mut edge_ids = BTreeMap::new();
        let mut edges = Vec::new();
        let mut tri_nodes = Vec::with_capacity(mesh.n_triangles());
        for tri in &mesh.triangles {
            let mut nodes = [0usize; 6];
            nodes[..3].copy_from_slice(tri);
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
                nodes[3 + k] = mesh.n_vertices() + id;
            }
            tri_nodes.push(nodes);
        }
        Self {
            n_vertices: mesh.n_vertices(),
            edges,
            tri_nodes,
            edge_ids,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_vertices + self.edges.len()
    }

    pub fn is_vertex_node(&self, node: usize) -> bool {
        node < self.n_vertices
    }

    /// Midpoint node of the edge (a, b), if that edge exists in the mesh.
    pub fn edge_node(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_ids
            .get(&(a.min(b), a.max(b)))
            .map(|id| self.n_vertices + id)
    }

    /// Node coordinates for the given vertex positions; edge nodes sit at
    /// the midpoints, so elements stay straight-sided.
    pub fn node_coords(&self, vertices: &[[f64; 2]]) -> Vec<[f64; 2]> {
        assert_eq!(vertices.len(), self.n_vertices);
        let mut coords = Vec::with_capacity(self.n_nodes());
        coords.extend_from_slice(vertices);
        for &(a, b) in &self.edges {
            coords.push([
                0.5 * (vertices[a][0] + vertices[b][0]),
                0.5 * (vertices[a][1] + vertices[b][1]),
            ]);
        }
        coords
    }
}

/// P2 shape function values at a reference point given by barycentric
/// coordinates `(l1, l2, l3)`.
pub fn p2_shape(l: [f64; 3]) -> [f64; 6] {
    let [l1, l2, l3] = l;
    [
        l1 * (2.0 * l1 - 1.0),
        l2 * (2.0 * l2 - 1.0),
        l3 * (2.0 * l3 - 1.0),
        4.0 * l1 * l2,
        4.0 * l2 * l3,
        4.0 * l3 * l1,
    ]
}

/// Gradients of the P2 shape functions w.r.t. barycentric directions
/// expressed in reference coordinates (xi, eta), where
/// l1 = 1 - xi - eta, l2 = xi, l3 = eta.
pub fn p2_grad_ref(l: [f64; 3]) -> [[f64; 2]; 6] {
    let [l1, l2, l3] = l;
    let d1 = [-1.0, -1.0];
    let d2 = [1.0, 0.0];
    let d3 = [0.0, 1.0];
    let mut g = [[0.0; 2]; 6];
    for k in 0..2 {
        g[0][k] = (4.0 * l1 - 1.0) * d1[k];
        g[1][k] = (4.0 * l2 - 1.0) * d2[k];
        g[2][k] = (4.0 * l3 - 1.0) * d3[k];
        g[3][k] = 4.0 * (l2 * d1[k] + l1 * d2[k]);
        g[4][k] = 4.0 * (l3 * d2[k] + l2 * d3[k]);
        g[5][k] = 4.0 * (l1 * d3[k] + l3 * d1[k]);
    }
    g
}

/// P1 shape functions are the barycentric coordinates themselves.
pub fn p1_shape(l: [f64; 3]) -> [f64; 3] {
    l
}

pub fn p1_grad_ref() -> [[f64; 2]; 3] {
    [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_channel_mesh;

    #[test]
    fn partition_of_unity() {
        let l = [0.2, 0.5, 0.3];
        let s: f64 = p2_shape(l).iter().sum();
        assert!((s - 1.0).abs() < 1e-14);
        let g = p2_grad_ref(l);
        for k in 0..2 {
            let gs: f64 = g.iter().map(|gi| gi[k]).sum();
            assert!(gs.abs() < 1e-14);
        }
    }

    #[test]
    fn node_counts() {
        let mesh = build_channel_mesh(2, 1, 1, 2.0, 1.0, 0.5).unwrap();
        let p2 = P2Nodes::build(&mesh);
        // V - E + T = 1 so nodes = V + E
        assert_eq!(p2.n_nodes(), mesh.n_vertices() + mesh.n_edges());
        for nodes in &p2.tri_nodes {
            let mut sorted = *nodes;
            sorted.sort_unstable();
            for w in sorted.windows(2) {
                assert_ne!(w[0], w[1]);
            }
        }
    }
}
