use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cube vertex as bits (x << 2) | (y << 1) | z.
pub type Vertex = usize;

/// One face's link assignment.
///
/// `plaquette` is ordered (q_ℓ, j_a^b, q_r, j_a^t) around the face; `controls` holds the
/// out-of-face link at each corner, ordered (j_ℓ^t, j_ℓ^b, j_r^b, j_r^t).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub name: String,
    pub axis: usize,
    pub value: usize,
    pub rotation: usize,
    pub reflected: bool,
    pub plaquette: [usize; 4],
    pub controls: [usize; 4],
}

/// The 12 links of a single cube and its six faces in Trotter-step order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeWiring {
    pub links: Vec<(Vertex, Vertex)>,
    pub faces: Vec<Face>,
}

/// Face orientations (axis, value, rotation, reflected) in step order. Consecutive faces form
/// opposite pairs. The orientations fix which link plays q_ℓ and so the term order within
/// each face; they were chosen to reproduce the reference Trotter series.
const STEP_FACES: [(usize, usize, usize, bool); 6] =
    [(0, 0, 2, false), (0, 1, 2, true), (2, 0, 3, false), (2, 1, 1, true), (1, 0, 2, true), (1, 1, 2, false)];

const AXIS_NAMES: [char; 3] = ['x', 'y', 'z'];

fn bit(axis: usize) -> usize {
    4 >> axis
}

/// Corners of the face `axis = value`, cycling (0,0), (1,0), (1,1), (0,1) over the other axes.
pub fn face_cycle(axis: usize, value: usize) -> [Vertex; 4] {
    let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
    [(0, 0), (1, 0), (1, 1), (0, 1)].map(|(a, b)| value * bit(axis) + a * bit(others[0]) + b * bit(others[1]))
}

impl CubeWiring {
    pub fn standard() -> Self {
        let mut links = Vec::new();
        for a in 0..8usize {
            for b in a + 1..8 {
                if (a ^ b).count_ones() == 1 {
                    links.push((a, b));
                }
            }
        }
        let mut cube = CubeWiring { links, faces: Vec::new() };
        cube.faces = STEP_FACES.iter().map(|&(ax, val, rot, refl)| cube.face(ax, val, rot, refl)).collect();
        cube
    }

    pub fn link(&self, a: Vertex, b: Vertex) -> usize {
        let key = (a.min(b), a.max(b));
        self.links.iter().position(|&l| l == key).expect("adjacent vertices")
    }

    /// The three links meeting at `v`.
    pub fn vertex_links(&self, v: Vertex) -> [usize; 3] {
        [0, 1, 2].map(|ax| self.link(v, v ^ bit(ax)))
    }

    /// Wiring of face `axis = value`, corners reversed when `reflected`, then rotated left.
    pub fn face(&self, axis: usize, value: usize, rotation: usize, reflected: bool) -> Face {
        let mut vs = face_cycle(axis, value).to_vec();
        if reflected {
            vs.reverse();
        }
        vs.rotate_left(rotation % 4);
        let plaquette = [0, 1, 2, 3].map(|m| self.link(vs[m], vs[(m + 1) % 4]));
        let controls = [0, 1, 2, 3].map(|m| self.link(vs[m], vs[m] ^ bit(axis)));
        Face {
            name: format!("{}{}", AXIS_NAMES[axis], value),
            axis,
            value,
            rotation: rotation % 4,
            reflected,
            plaquette,
            controls,
        }
    }

    /// Index into `faces` by name ("x0", "z1", ...), or "A" for the observable face.
    pub fn face_index(&self, name: &str) -> Result<usize> {
        let name = if name == "A" { "x0" } else { name };
        self.faces
            .iter()
            .position(|f| f.name == name)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown face {name}")))
    }

    /// Face whose electric energy is observed.
    pub fn observable_face(&self) -> &Face {
        &self.faces[0]
    }

    pub fn are_opposite(&self, a: usize, b: usize) -> bool {
        a != b && self.faces[a].axis == self.faces[b].axis
    }

    /// Opposite-face pairs in step order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.faces.len() / 2).map(|p| (2 * p, 2 * p + 1)).collect()
    }

    pub fn link_label(&self, l: usize) -> String {
        let (a, b) = self.links[l];
        format!("link{a:03b}-{b:03b}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn link_list_order() {
        let c = CubeWiring::standard();
        assert_eq!(c.links.len(), 12);
        assert_eq!(c.links[0], (0, 1));
        assert_eq!(c.links[7], (3, 7));
        assert_eq!(c.links[11], (6, 7));
    }

    #[test]
    fn calibrated_faces() {
        let c = CubeWiring::standard();
        let got: Vec<([usize; 4], [usize; 4])> = c.faces.iter().map(|f| (f.plaquette, f.controls)).collect();
        assert_eq!(
            got,
            vec![
                ([3, 0, 1, 5], [7, 4, 2, 6]),
                ([9, 8, 10, 11], [6, 2, 4, 7]),
                ([1, 2, 9, 6], [5, 0, 8, 11]),
                ([10, 4, 3, 7], [11, 8, 0, 5]),
                ([2, 0, 4, 8], [9, 1, 3, 10]),
                ([7, 5, 6, 11], [10, 3, 1, 9]),
            ]
        );
    }

    #[test]
    fn every_link_on_two_faces() {
        let c = CubeWiring::standard();
        for l in 0..12 {
            assert_eq!(c.faces.iter().filter(|f| f.plaquette.contains(&l)).count(), 2);
        }
        for (a, b) in c.pairs() {
            assert!(c.are_opposite(a, b));
            let fa = &c.faces[a];
            let fb = &c.faces[b];
            assert!(fa.plaquette.iter().all(|l| !fb.plaquette.contains(l)));
            let mut ca = fa.controls;
            let mut cb = fb.controls;
            ca.sort();
            cb.sort();
            assert_eq!(ca, cb);
        }
    }
}
