use std::collections::{BTreeMap, VecDeque};

use crate::exact::{fm_feasible, solve_affine, AffineForm, AffineSolution, Constraint, Rational};
use crate::{Error, Result};

use super::{ActiveSet, HPolyhedron, Vertex, MAX_FACETS};

/// Nonempty face of a polyhedron, identified by the set of ALL facets that
/// contain it. The polyhedron itself is the face with an empty active set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub active: ActiveSet,
    pub dim: usize,
    /// Point of the relative interior.
    pub interior_point: Vec<Rational>,
    /// Affine hull as point plus independent directions.
    pub affine_hull: AffineSolution,
}

impl Face {
    pub fn is_whole(&self) -> bool {
        self.active.is_empty()
    }

    pub fn contains_face(&self, other: &Face) -> bool {
        self.active.is_subset(&other.active)
    }
}

#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub dim: usize,
    /// Sorted by `(dim, active)`.
    pub faces: Vec<Face>,
    pub vertices: Vec<Vertex>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn find(&self, active: &ActiveSet) -> Option<&Face> {
        self.faces.iter().find(|f| &f.active == active)
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim + 1];
        for f in &self.faces {
            counts[f.dim] += 1;
        }
        counts
    }

    /// `sum_F (-1)^dim F` over all nonempty faces, the polytope included.
    pub fn euler_sum(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Vertices lying on `face`.
    pub fn vertices_of<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Vertex> + 'a {
        self.vertices
            .iter()
            .filter(move |v| face.active.is_subset(&v.active))
    }

    /// Edges as pairs of vertex indices (bounded edges only).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.faces_of_dim(1)
            .filter_map(|e| {
                let ends: Vec<usize> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| e.active.is_subset(&v.active))
                    .map(|(i, _)| i)
                    .collect();
                (ends.len() == 2).then(|| (ends[0], ends[1]))
            })
            .collect()
    }

    pub fn vertex_index(&self, point: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.point == point)
    }
}

/// Closure of `seed`: the active set of the face `P ∩ ⋂_{i∈seed} σ_i`
/// together with a relative-interior point, or `None` if that face is empty.
fn closure(p: &HPolyhedron, seed: &ActiveSet) -> Result<Option<(ActiveSet, Vec<Rational>)>> {
    let forms = p.halfspaces();
    let system = |eq: &ActiveSet, strict: Option<usize>, all_strict: bool| -> Vec<Constraint> {
        forms
            .iter()
            .enumerate()
            .map(|(i, h)| {
                if eq.contains(&i) {
                    Constraint::zero(h.clone())
                } else if all_strict || strict == Some(i) {
                    Constraint::pos(h.clone())
                } else {
                    Constraint::non_neg(h.clone())
                }
            })
            .collect()
    };
    if let Some(x) = fm_feasible(&system(seed, None, true), p.dim())? {
        return Ok(Some((seed.clone(), x)));
    }
    if fm_feasible(&system(seed, None, false), p.dim())?.is_none() {
        return Ok(None);
    }
    let mut implied = seed.clone();
    for j in 0..forms.len() {
        if seed.contains(&j) {
            continue;
        }
        if fm_feasible(&system(seed, Some(j), false), p.dim())?.is_none() {
            implied.insert(j);
        }
    }
    let x = fm_feasible(&system(&implied, None, true), p.dim())?
        .expect("relative interior exists once implicit equalities are fixed");
    Ok(Some((implied, x)))
}

fn make_face(p: &HPolyhedron, active: ActiveSet, interior_point: Vec<Rational>) -> Result<Face> {
    let eqs: Vec<AffineForm> = active.iter().map(|&i| p.halfspaces()[i].clone()).collect();
    let affine_hull = solve_affine(&eqs, p.dim())?;
    let dim = affine_hull.dim().expect("face is nonempty");
    Ok(Face {
        active,
        dim,
        interior_point,
        affine_hull,
    })
}

/// Breadth-first search over closed active sets, starting from `P` itself.
pub(super) fn enumerate_faces(p: &HPolyhedron) -> Result<FaceLattice> {
    if p.num_facets() > MAX_FACETS {
        return Err(Error::TooManyFacets(p.num_facets()));
    }
    let mut found: BTreeMap<ActiveSet, Vec<Rational>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    let root = closure(p, &ActiveSet::new())?.ok_or(Error::Empty)?;
    found.insert(root.0.clone(), root.1);
    queue.push_back(root.0);
    while let Some(active) = queue.pop_front() {
        for i in 0..p.num_facets() {
            if active.contains(&i) {
                continue;
            }
            let mut seed = active.clone();
            seed.insert(i);
            if found.contains_key(&seed) {
                continue;
            }
            if let Some((closed, x)) = closure(p, &seed)? {
                if !found.contains_key(&closed) {
                    found.insert(closed.clone(), x);
                    queue.push_back(closed);
                }
            }
        }
    }
    let mut faces = found
        .into_iter()
        .map(|(active, x)| make_face(p, active, x))
        .collect::<Result<Vec<_>>>()?;
    faces.sort_by(|a, b| (a.dim, &a.active).cmp(&(b.dim, &b.active)));
    let vertices = faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| Vertex {
            point: f.interior_point.clone(),
            active: f.active.clone(),
        })
        .collect();
    Ok(FaceLattice {
        dim: p.dim(),
        faces,
        vertices,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Genericity {
    /// Every face F has `|I_F| = d - dim F`.
    Simple,
    /// Only vertices fail genericity.
    NonsimpleVerticesOnly,
    /// Some positive-dimensional face lies on too many facets.
    Unsupported,
}

impl std::fmt::Display for Genericity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Genericity::Simple => "simple",
            Genericity::NonsimpleVerticesOnly => "nonsimple-vertices-only",
            Genericity::Unsupported => "unsupported",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub class: Genericity,
    pub nonsimple_vertices: Vec<Vertex>,
}

pub fn classify_genericity(lattice: &FaceLattice) -> GenericityReport {
    let d = lattice.dim;
    let mut class = Genericity::Simple;
    let mut nonsimple_vertices = Vec::new();
    for f in &lattice.faces {
        if f.active.len() == d - f.dim {
            continue;
        }
        if f.dim == 0 {
            nonsimple_vertices.push(Vertex {
                point: f.interior_point.clone(),
                active: f.active.clone(),
            });
            if class == Genericity::Simple {
                class = Genericity::NonsimpleVerticesOnly;
            }
        } else {
            class = Genericity::Unsupported;
        }
    }
    GenericityReport {
        class,
        nonsimple_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::fixtures;

    #[test]
    fn interval_faces() {
        let l = fixtures::interval().face_lattice().unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.count_by_dim(), vec![2, 1]);
    }

    #[test]
    fn triangle_faces() {
        let l = fixtures::triangle().face_lattice().unwrap();
        assert_eq!(l.count_by_dim(), vec![3, 3, 1]);
        assert_eq!(l.euler_sum(), 1);
        assert_eq!(l.edges().len(), 3);
    }

    #[test]
    fn pyramid_faces() {
        let l = fixtures::pyramid().face_lattice().unwrap();
        assert_eq!(l.count_by_dim(), vec![5, 8, 5, 1]);
        assert_eq!(l.len(), 19);
        // 5 - 8 + 5 = 2, minus the solid itself.
        assert_eq!(l.euler_sum(), 1);
    }

    #[test]
    fn classification() {
        let cube = fixtures::cube().face_lattice().unwrap();
        assert_eq!(classify_genericity(&cube).class, Genericity::Simple);

        let pyr = classify_genericity(&fixtures::pyramid().face_lattice().unwrap());
        assert_eq!(pyr.class, Genericity::NonsimpleVerticesOnly);
        assert_eq!(pyr.nonsimple_vertices.len(), 1);
        assert_eq!(pyr.nonsimple_vertices[0].point, vec![int(0), int(0), int(1)]);

        let oct = classify_genericity(&fixtures::octahedron().face_lattice().unwrap());
        assert_eq!(oct.class, Genericity::NonsimpleVerticesOnly);
        assert_eq!(oct.nonsimple_vertices.len(), 6);
        assert!(oct.nonsimple_vertices.iter().all(|v| v.active.len() == 4));
    }

    #[test]
    fn cone_faces() {
        let quadrant = HPolyhedron::new(
            vec![
                AffineForm::from_ints(&[1, 0], 0),
                AffineForm::from_ints(&[0, 1], 0),
            ],
            2,
        )
        .unwrap();
        let l = quadrant.face_lattice().unwrap();
        assert_eq!(l.count_by_dim(), vec![1, 2, 1]);
        let plane = HPolyhedron::whole_space(3).face_lattice().unwrap();
        assert_eq!(plane.len(), 1);
        assert_eq!(plane.faces[0].dim, 3);
    }

    #[test]
    fn lattice_vertices_match_enumeration() {
        for p in [fixtures::cube(), fixtures::pyramid(), fixtures::simplex3()] {
            let l = p.face_lattice().unwrap();
            let mut a = p.vertices().unwrap();
            let mut b = l.vertices.clone();
            a.sort_by(|x, y| x.point.cmp(&y.point));
            b.sort_by(|x, y| x.point.cmp(&y.point));
            assert_eq!(a, b);
        }
    }
}
