use crate::exact::{rank, AffineForm};

use super::{Face, FaceLattice, HPolyhedron};

/// Tangent cone `C_F`: the intersection of the halfspaces active on `F`.
/// Original facet indices are kept so that facet weights can follow.
#[derive(Clone, Debug)]
pub struct TangentCone {
    pub base_face: Face,
    dim: usize,
    halfspaces: Vec<(usize, AffineForm)>,
}

impl TangentCone {
    pub fn new(p: &HPolyhedron, face: &Face) -> Self {
        let halfspaces = face
            .active
            .iter()
            .map(|&i| (i, p.halfspaces()[i].clone()))
            .collect();
        TangentCone {
            base_face: face.clone(),
            dim: p.dim(),
            halfspaces,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(original facet index, form)` pairs.
    pub fn halfspaces(&self) -> &[(usize, AffineForm)] {
        &self.halfspaces
    }

    pub fn facet_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.halfspaces.iter().map(|(i, _)| *i)
    }

    pub fn forms(&self) -> Vec<AffineForm> {
        self.halfspaces.iter().map(|(_, h)| h.clone()).collect()
    }

    /// Facets of `P` through `F` are facets of `C_F`, so the list is
    /// irredundant.
    pub fn as_polyhedron(&self) -> HPolyhedron {
        HPolyhedron::from_irredundant(self.dim, self.forms())
    }

    pub fn lineality_dim(&self) -> usize {
        lineality_dim(self.halfspaces.iter().map(|(_, h)| h), self.dim)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality_dim() == 0
    }
}

/// `d - rank{normals}`: the dimension of the largest linear subspace
/// contained in the recession cone.
pub fn lineality_dim<'a>(forms: impl IntoIterator<Item = &'a AffineForm>, dim: usize) -> usize {
    let normals: Vec<_> = forms.into_iter().map(|f| f.normal.clone()).collect();
    dim - rank(&normals)
}

impl FaceLattice {
    pub fn tangent_cones<'a>(&'a self, p: &'a HPolyhedron) -> impl Iterator<Item = TangentCone> + 'a {
        self.faces.iter().map(move |f| TangentCone::new(p, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::fixtures;

    #[test]
    fn triangle_cones() {
        let t = fixtures::triangle();
        let l = t.face_lattice().unwrap();
        let origin = l
            .faces
            .iter()
            .find(|f| f.dim == 0 && f.interior_point == vec![int(0), int(0)])
            .unwrap();
        let c = TangentCone::new(&t, origin);
        assert_eq!(
            c.forms(),
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0)
            ]
        );
        assert_eq!(c.lineality_dim(), 0);

        let hyp = l.find(&[2].into()).unwrap();
        let c = TangentCone::new(&t, hyp);
        assert_eq!(c.forms(), vec![AffineForm::from_ints(&[-1, -1], 1)]);
        assert_eq!(c.lineality_dim(), 1);

        let whole = l.find(&Default::default()).unwrap();
        let c = TangentCone::new(&t, whole);
        assert!(c.forms().is_empty());
        assert_eq!(c.lineality_dim(), 2);
    }

    #[test]
    fn whole_space_lineality() {
        assert_eq!(lineality_dim([], 3), 3);
    }

    #[test]
    fn vertex_cones_contain_polytope() {
        for p in [
            fixtures::triangle(),
            fixtures::cube(),
            fixtures::pyramid(),
            fixtures::octahedron(),
        ] {
            let l = p.face_lattice().unwrap();
            for cone in l.tangent_cones(&p) {
                let c = cone.as_polyhedron();
                assert!(l.vertices.iter().all(|v| c.contains(&v.point)));
            }
        }
    }

    #[test]
    fn generic_faces_of_simple_polytopes() {
        for p in [fixtures::cube(), fixtures::simplex3(), fixtures::unit_square()] {
            let l = p.face_lattice().unwrap();
            for cone in l.tangent_cones(&p) {
                assert_eq!(cone.lineality_dim(), cone.base_face.dim);
                assert_eq!(cone.base_face.active.len(), p.dim() - cone.base_face.dim);
            }
        }
    }
}
