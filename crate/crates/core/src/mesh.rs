//! Uniform rectangular meshes of an axis-aligned box.
//!
//! The mesh stores vertex coordinates together with element→vertex,
//! element→edge and edge→element incidence. Numbering is fully
//! deterministic so that assembled operators and diagnostics are
//! bit-reproducible across runs:
//!
//! - vertices are numbered row-major, `v(i, j) = j*(nx+1) + i`,
//! - elements are numbered row-major, `e(i, j) = j*nx + i`,
//! - horizontal edges come first (row-major), then vertical edges.
//!
//! Local conventions per element (counter-clockwise):
//!
//! - vertices: 0 bottom-left, 1 bottom-right, 2 top-right, 3 top-left,
//! - edges: 0 bottom, 1 right, 2 top, 3 left.

use std::fmt;

/// Axis-aligned rectangular computational domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Domain {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Domain {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self, MeshError> {
        if !(x_min < x_max) || !(y_min < y_max) {
            return Err(MeshError::DegenerateDomain);
        }
        Ok(Self { x_min, x_max, y_min, y_max })
    }

    pub fn square(half_width: f64) -> Result<Self, MeshError> {
        Self::new(-half_width, half_width, -half_width, half_width)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }
}

/// An edge given by its two vertex indices plus a boundary flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint vertex indices, ordered along the positive axis direction.
    pub vertices: [usize; 2],
    pub on_boundary: bool,
}

/// Adjacency of an edge: the one or two elements sharing it, with the
/// local side index (0..4) the edge occupies in each element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeAdjacency {
    pub first: (usize, usize),
    pub second: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeshError {
    DegenerateDomain,
    ZeroElements,
    ElementOutOfRange { element: usize, count: usize },
}

impl fmt::Display for MeshError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeshError::DegenerateDomain => write!(f, "domain must satisfy x_min < x_max and y_min < y_max"),
            MeshError::ZeroElements => write!(f, "element counts nx, ny must be at least 1"),
            MeshError::ElementOutOfRange { element, count } => {
                write!(f, "element index {element} out of range (mesh has {count} elements)")
            }
        }
    }
}

impl std::error::Error for MeshError {}

/// Uniform tensor-product mesh of a rectangle.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub domain: Domain,
    pub nx: usize,
    pub ny: usize,
    pub hx: f64,
    pub hy: f64,
    pub vertices: Vec<[f64; 2]>,
    /// Element → vertex indices, counter-clockwise from the bottom-left corner.
    pub elements: Vec<[usize; 4]>,
    pub edges: Vec<Edge>,
    /// Element → edge indices in local side order bottom, right, top, left.
    pub element_edges: Vec<[usize; 4]>,
    /// Edge → adjacent elements (one for boundary edges, two for interior).
    pub edge_elements: Vec<EdgeAdjacency>,
}

/// Outward unit normals of the four local sides (bottom, right, top, left).
pub const SIDE_NORMALS: [[f64; 2]; 4] = [[0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]];

/// Build a uniform `nx x ny` mesh of `domain` with deterministic numbering.
pub fn build_uniform_mesh(domain: Domain, nx: usize, ny: usize) -> Result<Mesh, MeshError> {
    if nx == 0 || ny == 0 {
        return Err(MeshError::ZeroElements);
    }
    let hx = domain.width() / nx as f64;
    let hy = domain.height() / ny as f64;

    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        // Exact endpoints at the boundary, uniform interior spacing.
        let y = if j == ny { domain.y_max } else { domain.y_min + j as f64 * hy };
        for i in 0..=nx {
            let x = if i == nx { domain.x_max } else { domain.x_min + i as f64 * hx };
            vertices.push([x, y]);
        }
    }

    let vid = |i: usize, j: usize| j * (nx + 1) + i;
    let mut elements = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            elements.push([vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)]);
        }
    }

    // Horizontal edges first: h(i, j) for j in 0..=ny (row-major), then vertical.
    let n_horizontal = nx * (ny + 1);
    let h_edge = |i: usize, j: usize| j * nx + i;
    let v_edge = |i: usize, j: usize| n_horizontal + j * (nx + 1) + i;

    let mut edges = Vec::with_capacity(n_horizontal + ny * (nx + 1));
    for j in 0..=ny {
        for i in 0..nx {
            edges.push(Edge {
                vertices: [vid(i, j), vid(i + 1, j)],
                on_boundary: j == 0 || j == ny,
            });
        }
    }
    for j in 0..ny {
        for i in 0..=nx {
            edges.push(Edge {
                vertices: [vid(i, j), vid(i, j + 1)],
                on_boundary: i == 0 || i == nx,
            });
        }
    }

    let mut element_edges = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            element_edges.push([h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)]);
        }
    }

    let mut edge_elements: Vec<Option<EdgeAdjacency>> = vec![None; edges.len()];
    for (elem, sides) in element_edges.iter().enumerate() {
        for (side, &edge) in sides.iter().enumerate() {
            match &mut edge_elements[edge] {
                slot @ None => *slot = Some(EdgeAdjacency { first: (elem, side), second: None }),
                Some(adj) => {
                    debug_assert!(adj.second.is_none());
                    adj.second = Some((elem, side));
                }
            }
        }
    }
    let edge_elements: Vec<EdgeAdjacency> = edge_elements.into_iter().map(Option::unwrap).collect();

    Ok(Mesh {
        domain,
        nx,
        ny,
        hx,
        hy,
        vertices,
        elements,
        edges,
        element_edges,
        edge_elements,
    })
}

impl Mesh {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn n_interior_edges(&self) -> usize {
        self.edges.iter().filter(|e| !e.on_boundary).count()
    }

    /// Grid coordinates (i, j) of an element index.
    pub fn element_cell(&self, element: usize) -> (usize, usize) {
        (element % self.nx, element / self.nx)
    }

    pub fn element_centroid(&self, element: usize) -> [f64; 2] {
        let (i, j) = self.element_cell(element);
        [
            self.domain.x_min + (i as f64 + 0.5) * self.hx,
            self.domain.y_min + (j as f64 + 0.5) * self.hy,
        ]
    }

    /// Affine map from the reference square [-1,1]^2 to physical coordinates.
    ///
    /// The Jacobian is diag(hx/2, hy/2) and (0,0) maps to the centroid.
    pub fn reference_map(&self, element: usize, ref_point: [f64; 2]) -> Result<[f64; 2], MeshError> {
        if element >= self.n_elements() {
            return Err(MeshError::ElementOutOfRange { element, count: self.n_elements() });
        }
        Ok(self.map_to_physical(element, ref_point))
    }

    /// Unchecked variant of [`Mesh::reference_map`] for assembly loops.
    #[inline]
    pub fn map_to_physical(&self, element: usize, ref_point: [f64; 2]) -> [f64; 2] {
        let c = self.element_centroid(element);
        [c[0] + 0.5 * self.hx * ref_point[0], c[1] + 0.5 * self.hy * ref_point[1]]
    }

    /// Index of the element containing (x, y), clamped to the grid so points
    /// on the boundary or on element interfaces resolve deterministically
    /// (ties go to the element on the upper-right side).
    pub fn locate(&self, x: f64, y: f64) -> usize {
        let fi = ((x - self.domain.x_min) / self.hx).floor();
        let fj = ((y - self.domain.y_min) / self.hy).floor();
        let i = (fi.max(0.0) as usize).min(self.nx - 1);
        let j = (fj.max(0.0) as usize).min(self.ny - 1);
        j * self.nx + i
    }

    /// Map a physical point into the reference coordinates of `element`.
    #[inline]
    pub fn map_to_reference(&self, element: usize, point: [f64; 2]) -> [f64; 2] {
        let c = self.element_centroid(element);
        [2.0 * (point[0] - c[0]) / self.hx, 2.0 * (point[1] - c[1]) / self.hy]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square(n: usize) -> Mesh {
        build_uniform_mesh(Domain::new(-1.0, 1.0, -1.0, 1.0).unwrap(), n, n).unwrap()
    }

    #[test]
    fn single_cell_counts() {
        let mesh = unit_square(1);
        assert_eq!(mesh.n_elements(), 1);
        assert_eq!(mesh.n_vertices(), 4);
        assert_eq!(mesh.n_edges(), 4);
        assert_eq!(mesh.n_interior_edges(), 0);
    }

    #[test]
    fn two_by_two_counts() {
        let mesh = unit_square(2);
        assert_eq!(mesh.n_elements(), 4);
        assert_eq!(mesh.n_vertices(), 9);
        assert_eq!(mesh.n_edges(), 12);
        assert_eq!(mesh.n_interior_edges(), 4);
    }

    #[test]
    fn rectangular_counts_match_edge_formula() {
        // nx(ny+1) + ny(nx+1) horizontal + vertical edges, checked by
        // exhaustive enumeration against the stored edge list.
        let mesh =
            build_uniform_mesh(Domain::new(0.0, 4.0, 0.0, 2.0).unwrap(), 4, 2).unwrap();
        assert_eq!(mesh.n_elements(), 8);
        assert_eq!(mesh.n_vertices(), 15);
        assert_eq!(mesh.n_edges(), 22);
        assert_eq!(mesh.n_edges(), 4 * 3 + 2 * 5);
        let mut seen = std::collections::HashSet::new();
        for e in &mesh.edges {
            let key = if e.vertices[0] < e.vertices[1] {
                (e.vertices[0], e.vertices[1])
            } else {
                (e.vertices[1], e.vertices[0])
            };
            assert!(seen.insert(key), "duplicate edge {key:?}");
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        assert!(Domain::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Domain::new(0.0, 1.0, 2.0, 1.0).is_err());
        let d = Domain::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(build_uniform_mesh(d, 0, 3).unwrap_err(), MeshError::ZeroElements);
        assert_eq!(build_uniform_mesh(d, 3, 0).unwrap_err(), MeshError::ZeroElements);
    }

    #[test]
    fn reference_map_examples() {
        let d = Domain::new(0.0, 2.0, 0.0, 2.0).unwrap();
        let mesh = build_uniform_mesh(d, 1, 1).unwrap();
        assert_eq!(mesh.reference_map(0, [0.0, 0.0]).unwrap(), [1.0, 1.0]);
        assert_eq!(mesh.reference_map(0, [1.0, 1.0]).unwrap(), [2.0, 2.0]);
        assert!(mesh.reference_map(1, [0.0, 0.0]).is_err());

        let mesh = unit_square(2);
        assert_eq!(mesh.reference_map(0, [-1.0, -1.0]).unwrap(), [-1.0, -1.0]);
    }

    #[test]
    fn element_areas_sum_to_domain_area() {
        for (nx, ny) in [(1usize, 1usize), (3, 2), (7, 5)] {
            let d = Domain::new(-0.3, 1.7, 0.1, 0.9).unwrap();
            let mesh = build_uniform_mesh(d, nx, ny).unwrap();
            let total: f64 = (0..mesh.n_elements()).map(|_| mesh.hx * mesh.hy).sum();
            assert!((total - d.area()).abs() <= 1e-14 * d.area());
        }
    }

    #[test]
    fn interior_edges_have_opposite_normals() {
        let mesh = unit_square(3);
        for (edge, adj) in mesh.edge_elements.iter().enumerate() {
            if mesh.edges[edge].on_boundary {
                assert!(adj.second.is_none());
            } else {
                let (_, s1) = adj.first;
                let (_, s2) = adj.second.expect("interior edge must have two elements");
                let n1 = SIDE_NORMALS[s1];
                let n2 = SIDE_NORMALS[s2];
                assert_eq!(n1[0], -n2[0]);
                assert_eq!(n1[1], -n2[1]);
            }
        }
    }

    #[test]
    fn rebuild_is_deterministic() {
        let d = Domain::new(-2.0, 3.0, -1.0, 4.0).unwrap();
        let a = build_uniform_mesh(d, 5, 4).unwrap();
        let b = build_uniform_mesh(d, 5, 4).unwrap();
        assert_eq!(a.vertices, b.vertices);
        assert_eq!(a.elements, b.elements);
        assert_eq!(a.edges, b.edges);
        assert_eq!(a.element_edges, b.element_edges);
        assert_eq!(a.edge_elements, b.edge_elements);
    }

    #[test]
    fn locate_resolves_interior_points() {
        let mesh = unit_square(4);
        for elem in 0..mesh.n_elements() {
            let c = mesh.element_centroid(elem);
            assert_eq!(mesh.locate(c[0], c[1]), elem);
        }
        // Boundary corner clamps into the adjacent cell.
        assert_eq!(mesh.locate(1.0, 1.0), 15);
        assert_eq!(mesh.locate(-1.0, -1.0), 0);
    }
}
