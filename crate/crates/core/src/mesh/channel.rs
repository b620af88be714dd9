use super::{EdgeTag, Mesh, MeshError, Region, TaggedEdge};

fn edge(a: usize, b: usize, tag: EdgeTag) -> TaggedEdge {
    TaggedEdge {
        v: [a.min(b), a.max(b)],
        tag,
    }
}

/// Structured triangulated rectangle: `nx` by `ny` quads, each split into
/// two triangles along the lower-left to upper-right diagonal. Rows `0..ny`
/// of quads; row `j` spans `y_levels[j]..y_levels[j+1]`.
fn structured_strip(
    nx: usize,
    y_levels: &[f64],
    length: f64,
    region_of_row: impl Fn(usize) -> Region,
) -> Mesh {
    let ny = y_levels.len() - 1;
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            vertices.push([length * i as f64 / nx as f64, y_levels[j]]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    let mut region = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let (v00, v10, v01, v11) = (vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1));
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
            region.push(region_of_row(j));
            region.push(region_of_row(j));
        }
    }
    Mesh {
        vertices,
        triangles,
        region,
        tagged_edges: Vec::new(),
    }
}

/// Desk-scale FSI geometry: fluid strip `[0,L] x [0,h]` topped by a solid
/// strip `[0,L] x [h,h+t]`. Tags: inlet at x=0 (fluid), outlet at x=L
/// (fluid), symmetry at y=0, interface at y=h, outer wall at y=h+t, and
/// clamped solid ends at x=0 and x=L.
pub fn build_channel_mesh(
    nx: usize,
    ny_fluid: usize,
    ny_solid: usize,
    length: f64,
    lumen_height: f64,
    wall_thickness: f64,
) -> Result<Mesh, MeshError> {
    if nx == 0 || ny_fluid == 0 || ny_solid == 0 {
        return Err(MeshError::BadDimensions(
            "all subdivision counts must be at least 1".into(),
        ));
    }
    if length <= 0.0 || lumen_height <= 0.0 || wall_thickness <= 0.0 {
        return Err(MeshError::BadDimensions(
            "length, lumen height and wall thickness must be positive".into(),
        ));
    }
    let mut y_levels = Vec::with_capacity(ny_fluid + ny_solid + 1);
    for j in 0..=ny_fluid {
        y_levels.push(lumen_height * j as f64 / ny_fluid as f64);
    }
    for j in 1..=ny_solid {
        y_levels.push(lumen_height + wall_thickness * j as f64 / ny_solid as f64);
    }
    let mut mesh = structured_strip(nx, &y_levels, length, |row| {
        if row < ny_fluid {
            Region::Fluid
        } else {
            Region::Solid
        }
    });

    let ny = ny_fluid + ny_solid;
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut tags = Vec::new();
    for j in 0..ny_fluid {
        tags.push(edge(vid(0, j), vid(0, j + 1), EdgeTag::Inlet));
        tags.push(edge(vid(nx, j), vid(nx, j + 1), EdgeTag::Outlet));
    }
    for j in ny_fluid..ny {
        tags.push(edge(vid(0, j), vid(0, j + 1), EdgeTag::Clamp));
        tags.push(edge(vid(nx, j), vid(nx, j + 1), EdgeTag::Clamp));
    }
    for i in 0..nx {
        tags.push(edge(vid(i, 0), vid(i + 1, 0), EdgeTag::Symmetry));
        tags.push(edge(vid(i, ny_fluid), vid(i + 1, ny_fluid), EdgeTag::Interface));
        tags.push(edge(vid(i, ny), vid(i + 1, ny), EdgeTag::WallOuter));
    }
    mesh.tagged_edges = tags;
    mesh.validate_interface()?;
    Ok(mesh)
}

/// Rigid-channel variant for fluid-only problems: the whole strip is fluid
/// and the top boundary is a no-slip wall.
pub fn build_fluid_channel_mesh(
    nx: usize,
    ny: usize,
    length: f64,
    height: f64,
) -> Result<Mesh, MeshError> {
    if nx == 0 || ny == 0 || length <= 0.0 || height <= 0.0 {
        return Err(MeshError::BadDimensions(
            "channel subdivisions and dimensions must be positive".into(),
        ));
    }
    let y_levels: Vec<f64> = (0..=ny).map(|j| height * j as f64 / ny as f64).collect();
    let mut mesh = structured_strip(nx, &y_levels, length, |_| Region::Fluid);
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut tags = Vec::new();
    for j in 0..ny {
        tags.push(edge(vid(0, j), vid(0, j + 1), EdgeTag::Inlet));
        tags.push(edge(vid(nx, j), vid(nx, j + 1), EdgeTag::Outlet));
    }
    for i in 0..nx {
        tags.push(edge(vid(i, 0), vid(i + 1, 0), EdgeTag::Symmetry));
        tags.push(edge(vid(i, ny), vid(i + 1, ny), EdgeTag::WallOuter));
    }
    mesh.tagged_edges = tags;
    Ok(mesh)
}

/// Plain rectangle with every boundary edge tagged `WallOuter`; used by the
/// Poisson test problem.
pub fn build_rectangle_mesh(
    nx: usize,
    ny: usize,
    width: f64,
    height: f64,
) -> Result<Mesh, MeshError> {
    if nx == 0 || ny == 0 || width <= 0.0 || height <= 0.0 {
        return Err(MeshError::BadDimensions(
            "rectangle subdivisions and dimensions must be positive".into(),
        ));
    }
    let y_levels: Vec<f64> = (0..=ny).map(|j| height * j as f64 / ny as f64).collect();
    let mut mesh = structured_strip(nx, &y_levels, width, |_| Region::Fluid);
    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut tags = Vec::new();
    for j in 0..ny {
        tags.push(edge(vid(0, j), vid(0, j + 1), EdgeTag::WallOuter));
        tags.push(edge(vid(nx, j), vid(nx, j + 1), EdgeTag::WallOuter));
    }
    for i in 0..nx {
        tags.push(edge(vid(i, 0), vid(i + 1, 0), EdgeTag::WallOuter));
        tags.push(edge(vid(i, ny), vid(i + 1, ny), EdgeTag::WallOuter));
    }
    mesh.tagged_edges = tags;
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_counted_structured_grid() {
        // 2 per quad: nx * ny quads per region.
        let mesh = build_channel_mesh(2, 1, 1, 2.0, 0.5, 0.25).unwrap();
        let fluid = mesh.region.iter().filter(|r| **r == Region::Fluid).count();
        let solid = mesh.region.iter().filter(|r| **r == Region::Solid).count();
        assert_eq!(fluid, 4);
        assert_eq!(solid, 4);
        mesh.validate_interface().unwrap();
        for t in 0..mesh.n_triangles() {
            assert!(mesh.det_jacobian(t) > 0.0);
        }
    }

    #[test]
    fn euler_formula_simply_connected() {
        for (nx, nyf, nys) in [(2, 1, 1), (4, 2, 1), (7, 3, 2)] {
            let mesh = build_channel_mesh(nx, nyf, nys, 3.0, 1.0, 0.4).unwrap();
            let v = mesh.n_vertices() as i64;
            let e = mesh.n_edges() as i64;
            let t = mesh.n_triangles() as i64;
            assert_eq!(v - e + t, 1, "Euler check failed for {nx}x{nyf}+{nys}");
        }
    }

    #[test]
    fn interface_edges_walk() {
        let mesh = build_channel_mesh(4, 2, 1, 4.0, 1.0, 0.3).unwrap();
        let n_interface = mesh.edges_with_tag(EdgeTag::Interface).count();
        assert_eq!(n_interface, 4);
        mesh.validate_interface().unwrap();
    }

    #[test]
    fn boundary_tag_topology_scales_linearly() {
        let counts = |nx: usize| {
            let mesh = build_channel_mesh(nx, 2, 2, 4.0, 1.0, 0.3).unwrap();
            (
                mesh.edges_with_tag(EdgeTag::Inlet).count(),
                mesh.edges_with_tag(EdgeTag::Outlet).count(),
                mesh.edges_with_tag(EdgeTag::Interface).count(),
            )
        };
        let (i1, o1, g1) = counts(3);
        let (i2, o2, g2) = counts(6);
        assert_eq!(i1, i2); // inlet edge count depends on ny only
        assert_eq!(o1, o2);
        assert_eq!(g2, 2 * g1); // interface edges scale with nx
    }

    #[test]
    fn degenerate_dimensions_rejected() {
        assert!(build_channel_mesh(0, 1, 1, 1.0, 1.0, 1.0).is_err());
        assert!(build_channel_mesh(2, 1, 1, -1.0, 1.0, 1.0).is_err());
    }
}
