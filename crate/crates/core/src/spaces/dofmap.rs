//! Global degree-of-freedom maps with homogeneous Dirichlet elimination.
//!
//! Q11 carries one DOF per interior vertex. The rotated-Q1 space carries one
//! DOF per interior edge plus one per cell; boundary-edge DOFs are
//! eliminated, which enforces the zero boundary condition in the edge-mean
//! sense. Eliminated entities simply have no global index and contribute
//! zero wherever a coefficient is needed.
//!
//! Numbering is deterministic. For Q11 it is row-major over interior
//! vertices. For the rotated-Q1 space the entities are interleaved by cell
//! row (bottom edges, vertical edges, cell DOFs of each row in turn), which
//! keeps the profile of assembled operators banded.

use num_complex::Complex64;
use std::sync::Arc;

use super::basis::{BasisTable, SpaceKind, REF_CORNERS};
use super::quadrature::{cell_rule, edge_rule};
use super::scalar_field::ScalarField2D;
use super::SpacesError;
use crate::mesh::Mesh;

/// Complex coefficient vector over a [`DofMap`].
pub type Field = Vec<Complex64>;

/// Geometric entity carrying one degree of freedom.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DofEntity {
    Vertex(usize),
    Edge(usize),
    Cell(usize),
}

/// Boundary handling for a DOF map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryCondition {
    /// Eliminate boundary entities (homogeneous Dirichlet).
    Dirichlet,
    /// Keep every entity; used by free-patch oracle tests.
    None,
}

#[derive(Clone, Debug)]
pub struct DofMap {
    pub kind: SpaceKind,
    pub mesh: Arc<Mesh>,
    pub boundary: BoundaryCondition,
    n_dofs: usize,
    /// Per element, the global index of each local DOF (None = eliminated).
    element_dofs: Vec<[Option<usize>; 5]>,
    /// Inverse map: the entity carrying each global DOF.
    dof_entities: Vec<DofEntity>,
    /// Vertex -> DOF lookup (conforming spaces only, empty otherwise).
    vertex_to_dof: Vec<Option<usize>>,
}

/// Build the Dirichlet-eliminated DOF map for `kind` over `mesh`.
pub fn build_dof_map(mesh: Arc<Mesh>, kind: SpaceKind) -> DofMap {
    DofMap::new(mesh, kind, BoundaryCondition::Dirichlet)
}

impl DofMap {
    pub fn new(mesh: Arc<Mesh>, kind: SpaceKind, boundary: BoundaryCondition) -> Self {
        match kind {
            SpaceKind::ConformingQ11 => Self::build_q11(mesh, boundary),
            SpaceKind::NonconformingEQ1rot => Self::build_eq1rot(mesh, boundary),
        }
    }

    fn build_q11(mesh: Arc<Mesh>, boundary: BoundaryCondition) -> Self {
        let (nx, ny) = (mesh.nx, mesh.ny);
        let eliminate = boundary == BoundaryCondition::Dirichlet;
        let mut vertex_dof = vec![None; mesh.n_vertices()];
        let mut dof_entities = Vec::new();
        for j in 0..=ny {
            for i in 0..=nx {
                let on_boundary = i == 0 || i == nx || j == 0 || j == ny;
                if eliminate && on_boundary {
                    continue;
                }
                let v = j * (nx + 1) + i;
                vertex_dof[v] = Some(dof_entities.len());
                dof_entities.push(DofEntity::Vertex(v));
            }
        }
        let element_dofs = mesh
            .elements
            .iter()
            .map(|verts| {
                let mut d = [None; 5];
                for (l, &v) in verts.iter().enumerate() {
                    d[l] = vertex_dof[v];
                }
                d
            })
            .collect();
        Self {
            kind: SpaceKind::ConformingQ11,
            mesh,
            boundary,
            n_dofs: dof_entities.len(),
            element_dofs,
            dof_entities,
            vertex_to_dof: vertex_dof,
        }
    }

    fn build_eq1rot(mesh: Arc<Mesh>, boundary: BoundaryCondition) -> Self {
        let (nx, ny) = (mesh.nx, mesh.ny);
        let eliminate = boundary == BoundaryCondition::Dirichlet;
        let n_horizontal = nx * (ny + 1);
        let h_edge = |i: usize, j: usize| j * nx + i;
        let v_edge = |i: usize, j: usize| n_horizontal + j * (nx + 1) + i;

        let mut edge_dof = vec![None; mesh.n_edges()];
        let mut cell_dof = vec![None; mesh.n_elements()];
        let mut dof_entities = Vec::new();
        let mut push_edge = |edge: usize, dofs: &mut Vec<DofEntity>, map: &mut Vec<Option<usize>>| {
            map[edge] = Some(dofs.len());
            dofs.push(DofEntity::Edge(edge));
        };
        // Row-interleaved numbering keeps the matrix profile narrow: for each
        // cell row, first its bottom edges, then interior vertical edges,
        // then cell DOFs; the top boundary row contributes nothing.
        for j in 0..ny {
            for i in 0..nx {
                if !eliminate || j > 0 {
                    push_edge(h_edge(i, j), &mut dof_entities, &mut edge_dof);
                }
            }
            for i in 0..=nx {
                if !eliminate || (i > 0 && i < nx) {
                    push_edge(v_edge(i, j), &mut dof_entities, &mut edge_dof);
                }
            }
            for i in 0..nx {
                let e = j * nx + i;
                cell_dof[e] = Some(dof_entities.len());
                dof_entities.push(DofEntity::Cell(e));
            }
        }
        if !eliminate {
            for i in 0..nx {
                push_edge(h_edge(i, ny), &mut dof_entities, &mut edge_dof);
            }
        }

        let element_dofs = mesh
            .element_edges
            .iter()
            .enumerate()
            .map(|(e, edges)| {
                let mut d = [None; 5];
                for (l, &edge) in edges.iter().enumerate() {
                    d[l] = edge_dof[edge];
                }
                d[4] = cell_dof[e];
                d
            })
            .collect();
        Self {
            kind: SpaceKind::NonconformingEQ1rot,
            mesh,
            boundary,
            n_dofs: dof_entities.len(),
            element_dofs,
            dof_entities,
            vertex_to_dof: Vec::new(),
        }
    }

    pub fn n_dofs(&self) -> usize {
        self.n_dofs
    }

    pub fn dofs_per_element(&self) -> usize {
        self.kind.dofs_per_element()
    }

    /// Global DOF indices of one element's local DOFs.
    #[inline]
    pub fn element_dofs(&self, element: usize) -> &[Option<usize>] {
        &self.element_dofs[element][..self.kind.dofs_per_element()]
    }

    pub fn dof_entity(&self, dof: usize) -> DofEntity {
        self.dof_entities[dof]
    }

    /// Global DOF carried by a vertex (conforming spaces only).
    pub fn vertex_dof(&self, vertex: usize) -> Option<usize> {
        self.vertex_to_dof.get(vertex).copied().flatten()
    }

    /// Coefficient vector of the interpolant of `field`.
    ///
    /// Q11 samples vertex values; the rotated-Q1 space matches edge means
    /// (3-point Gauss) and cell means (3x3 Gauss) of the supplied callable.
    pub fn interpolate(&self, field: &ScalarField2D) -> Field {
        let mesh = &*self.mesh;
        let mut coeffs = vec![Complex64::default(); self.n_dofs];
        match self.kind {
            SpaceKind::ConformingQ11 => {
                for (dof, entity) in self.dof_entities.iter().enumerate() {
                    let DofEntity::Vertex(v) = entity else { unreachable!() };
                    let p = mesh.vertices[*v];
                    coeffs[dof] = field.value(p[0], p[1]);
                }
            }
            SpaceKind::NonconformingEQ1rot => {
                let erule = edge_rule(3).expect("supported order");
                let crule = cell_rule(3).expect("supported order");
                for (dof, entity) in self.dof_entities.iter().enumerate() {
                    match entity {
                        DofEntity::Edge(edge) => {
                            let [a, b] = self.mesh.edges[*edge].vertices;
                            let pa = mesh.vertices[a];
                            let pb = mesh.vertices[b];
                            let mut mean = Complex64::default();
                            for (t, w) in erule.points.iter().zip(&erule.weights) {
                                let s = 0.5 * (t + 1.0);
                                let x = pa[0] + s * (pb[0] - pa[0]);
                                let y = pa[1] + s * (pb[1] - pa[1]);
                                mean += 0.5 * w * field.value(x, y);
                            }
                            coeffs[dof] = mean;
                        }
                        DofEntity::Cell(element) => {
                            let mut mean = Complex64::default();
                            for (p, w) in crule.points.iter().zip(&crule.weights) {
                                let xy = mesh.map_to_physical(*element, *p);
                                mean += 0.25 * w * field.value(xy[0], xy[1]);
                            }
                            coeffs[dof] = mean;
                        }
                        DofEntity::Vertex(_) => unreachable!(),
                    }
                }
            }
        }
        coeffs
    }

    /// Evaluate the FE expansion at a reference point of one element.
    #[inline]
    pub fn eval_local(&self, coeffs: &[Complex64], element: usize, ref_point: [f64; 2]) -> Complex64 {
        let mut v = Complex64::default();
        for (l, dof) in self.element_dofs(element).iter().enumerate() {
            if let Some(d) = dof {
                let (val, _) = super::basis::local_basis(self.kind, l, ref_point).expect("valid index");
                v += coeffs[*d] * val;
            }
        }
        v
    }

    /// Physical gradient of the FE expansion at a reference point.
    #[inline]
    pub fn eval_local_gradient(
        &self,
        coeffs: &[Complex64],
        element: usize,
        ref_point: [f64; 2],
    ) -> [Complex64; 2] {
        let sx = 2.0 / self.mesh.hx;
        let sy = 2.0 / self.mesh.hy;
        let mut g = [Complex64::default(); 2];
        for (l, dof) in self.element_dofs(element).iter().enumerate() {
            if let Some(d) = dof {
                let (_, grad) = super::basis::local_basis(self.kind, l, ref_point).expect("valid index");
                g[0] += coeffs[*d] * (grad[0] * sx);
                g[1] += coeffs[*d] * (grad[1] * sy);
            }
        }
        g
    }

    /// Evaluate the FE expansion at an arbitrary physical point.
    pub fn eval_at(&self, coeffs: &[Complex64], x: f64, y: f64) -> Complex64 {
        let element = self.mesh.locate(x, y);
        self.eval_local(coeffs, element, self.mesh.map_to_reference(element, [x, y]))
    }

    /// Values of the FE expansion at the mesh vertices (conforming only);
    /// eliminated boundary vertices report zero.
    pub fn vertex_values(&self, coeffs: &[Complex64]) -> Result<Vec<Complex64>, SpacesError> {
        if self.kind != SpaceKind::ConformingQ11 {
            return Err(SpacesError::ConformingOnly("vertex_values"));
        }
        let mut values = vec![Complex64::default(); self.mesh.n_vertices()];
        for (dof, entity) in self.dof_entities.iter().enumerate() {
            let DofEntity::Vertex(v) = entity else { unreachable!() };
            values[*v] = coeffs[dof];
        }
        Ok(values)
    }

    /// Basis table at the given reference points (shared by every element).
    pub fn tabulate(&self, points: &[[f64; 2]]) -> BasisTable {
        BasisTable::tabulate(self.kind, points)
    }
}

/// Wrap an FE coefficient vector as a [`ScalarField2D`] with exact
/// piecewise value, gradient and Hessian callables.
///
/// Derivatives are one-sided at element interfaces (the containing element
/// follows [`Mesh::locate`]'s upper-right tie-break), which is the natural
/// reading for fields that are only piecewise smooth.
pub fn fe_scalar_field(dofs: Arc<DofMap>, coeffs: Field) -> ScalarField2D {
    let d_val = dofs.clone();
    let c_val = coeffs.clone();
    let d_grad = dofs.clone();
    let c_grad = coeffs.clone();
    let d_hess = dofs;
    let c_hess = coeffs;
    ScalarField2D::new(move |x, y| d_val.eval_at(&c_val, x, y))
        .with_gradient(move |x, y| {
            let element = d_grad.mesh.locate(x, y);
            d_grad.eval_local_gradient(&c_grad, element, d_grad.mesh.map_to_reference(element, [x, y]))
        })
        .with_hessian(move |x, y| {
            // Q11: f_xy is constant per cell, f_xx = f_yy = 0.
            // Rotated Q1: f_xx, f_yy constant per cell, f_xy = 0.
            let mesh = &*d_hess.mesh;
            let element = mesh.locate(x, y);
            let sx = 2.0 / mesh.hx;
            let sy = 2.0 / mesh.hy;
            let mut h = [Complex64::default(); 3];
            for (l, dof) in d_hess.element_dofs(element).iter().enumerate() {
                if let Some(d) = dof {
                    let c = c_hess[*d];
                    match d_hess.kind {
                        SpaceKind::ConformingQ11 => {
                            let corner = REF_CORNERS[l];
                            h[1] += c * (0.25 * corner[0] * corner[1] * sx * sy);
                        }
                        SpaceKind::NonconformingEQ1rot => {
                            let (xx, yy) = match l {
                                0 | 2 => (0.0, 1.5),
                                1 | 3 => (1.5, 0.0),
                                _ => (-3.0, -3.0),
                            };
                            h[0] += c * (xx * sx * sx);
                            h[2] += c * (yy * sy * sy);
                        }
                    }
                }
            }
            h
        })
}
