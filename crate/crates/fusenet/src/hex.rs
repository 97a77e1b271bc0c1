//! Periodic honeycomb lattice with face and edge 3-coloring.
//!
//! The construction uses the triangular Bravais lattice of hexagon centers:
//! a center at axial coordinates `(q, r)` owns the face color `(q − r) mod 3`.
//! To make the 3-coloring close on the torus for *every* linear size `L`, the
//! periodic cell is the 3-hexagon super-cell spanned by `A1 = (1, 1)` and
//! `A2 = (−1, 2)` in axial coordinates, so the lattice parameter `L` counts
//! super-cells per direction: `3L²` faces, `6L²` vertices, `9L²` edges.
//!
//! Honeycomb vertices are the up/down triangle centroids of the triangular
//! lattice: `Up(q,r)` and `Down(q,r)` per center site. Up vertices are the
//! black sublattice, Down the white one. Each edge carries the color shared
//! by the two same-colored faces it connects (equivalently: the color absent
//! from the two faces bordering it).

use crate::error::{invalid, Result};

/// Face/edge colors of the Floquet schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Color {
    /// Measured at times t ≡ 0 (mod 3).
    Red,
    /// Measured at times t ≡ 2 (mod 3).
    Green,
    /// Measured at times t ≡ 1 (mod 3).
    Blue,
}

impl Color {
    /// Colors indexed 0, 1, 2.
    pub fn from_index(i: u32) -> Color {
        match i % 3 {
            0 => Color::Red,
            1 => Color::Green,
            _ => Color::Blue,
        }
    }

    /// Inverse of [`Color::from_index`].
    pub fn index(self) -> u32 {
        match self {
            Color::Red => 0,
            Color::Green => 1,
            Color::Blue => 2,
        }
    }

    /// The edge color measured at layer `t ≥ 1`: blue, green, red for
    /// t ≡ 1, 2, 0 (mod 3).
    pub fn schedule(t: u32) -> Color {
        match t % 3 {
            1 => Color::Blue,
            2 => Color::Green,
            _ => Color::Red,
        }
    }
}

/// Vertex bicolor (bipartition of the honeycomb).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Bicolor {
    /// Up-triangle centroids.
    Black,
    /// Down-triangle centroids.
    White,
}

/// Periodic honeycomb torus of `L × L` three-hexagon super-cells.
#[derive(Clone, Debug)]
pub struct HexLattice {
    l: u32,
}

/// A triangular-lattice site in canonical super-cell form.
///
/// `u, v ∈ [0, L)` index the super-cell, `coset ∈ {0,1,2}` the site inside it
/// (which equals the face color of the hexagon centered there).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Site {
    /// Super-cell column.
    pub u: u32,
    /// Super-cell row.
    pub v: u32,
    /// Position inside the super-cell = face color index.
    pub coset: u32,
}

impl HexLattice {
    /// Builds the torus; `L ≥ 2` super-cells per direction.
    pub fn new(l: u32) -> Result<HexLattice> {
        if l < 2 {
            return Err(invalid(format!("hex lattice needs L ≥ 2, got {l}")));
        }
        Ok(HexLattice { l })
    }

    /// Super-cells per direction.
    pub fn l(&self) -> u32 {
        self.l
    }

    /// Number of hexagonal faces (= triangular sites): `3L²`.
    pub fn face_count(&self) -> u32 {
        3 * self.l * self.l
    }

    /// Number of honeycomb vertices: `6L²`.
    pub fn vertex_count(&self) -> u32 {
        6 * self.l * self.l
    }

    /// Number of honeycomb edges: `9L²`.
    pub fn edge_count(&self) -> u32 {
        9 * self.l * self.l
    }

    /// Canonicalizes axial coordinates `(q, r)` to a [`Site`].
    ///
    /// The coset is `(q − r) mod 3`; subtracting the coset's offset lands on
    /// the super-cell sublattice spanned by `(1,1)` and `(−1,2)`, whose
    /// integer coordinates `(u, v)` are reduced mod `L`.
    pub fn site(&self, q: i64, r: i64) -> Site {
        let coset = (q - r).rem_euclid(3) as u32;
        let (dq, dr) = match coset {
            0 => (0, 0),
            1 => (1, 0),
            _ => (0, 1),
        };
        let (qa, ra) = (q - dq, r - dr);
        debug_assert_eq!((qa - ra).rem_euclid(3), 0);
        let v = (ra - qa) / 3;
        let u = qa + v;
        let l = self.l as i64;
        Site {
            u: u.rem_euclid(l) as u32,
            v: v.rem_euclid(l) as u32,
            coset,
        }
    }

    /// Dense site index in `[0, 3L²)`.
    pub fn site_index(&self, q: i64, r: i64) -> u32 {
        let s = self.site(q, r);
        (s.u * self.l + s.v) * 3 + s.coset
    }

    /// One axial representative of a site index (inverse of
    /// [`HexLattice::site_index`] up to torus periodicity).
    pub fn site_coords(&self, index: u32) -> (i64, i64) {
        let coset = index % 3;
        let cell = index / 3;
        let (u, v) = ((cell / self.l) as i64, (cell % self.l) as i64);
        // Anchor = u·A1 + v·A2 = (u − v, u + 2v), then add the coset offset.
        let (dq, dr) = match coset {
            0 => (0, 0),
            1 => (1, 0),
            _ => (0, 1),
        };
        (u - v + dq, u + 2 * v + dr)
    }

    /// Face color at site `(q, r)`.
    pub fn face_color(&self, q: i64, r: i64) -> Color {
        Color::from_index((q - r).rem_euclid(3) as u32)
    }

    /// Face id = site index (faces and sites are in bijection).
    pub fn face_id(&self, q: i64, r: i64) -> u32 {
        self.site_index(q, r)
    }

    /// Vertex id of the up/down triangle centroid at site `(q, r)`:
    /// `site_index·2` for Up (black), `+1` for Down (white).
    pub fn vertex_id(&self, q: i64, r: i64, down: bool) -> u32 {
        self.site_index(q, r) * 2 + down as u32
    }

    /// Bicolor of a vertex id.
    pub fn vertex_bicolor(&self, vertex: u32) -> Bicolor {
        if vertex % 2 == 0 {
            Bicolor::Black
        } else {
            Bicolor::White
        }
    }

    /// The three neighbors of a vertex (honeycomb degree 3).
    ///
    /// `Up(q,r)` is adjacent to `Down(q,r)`, `Down(q−1,r)`, `Down(q,r−1)`;
    /// Down adjacency is the mirror image.
    pub fn vertex_neighbors(&self, vertex: u32) -> [u32; 3] {
        let (q, r) = self.site_coords(vertex / 2);
        if vertex % 2 == 0 {
            [
                self.vertex_id(q, r, true),
                self.vertex_id(q - 1, r, true),
                self.vertex_id(q, r - 1, true),
            ]
        } else {
            [
                self.vertex_id(q, r, false),
                self.vertex_id(q + 1, r, false),
                self.vertex_id(q, r + 1, false),
            ]
        }
    }

    /// Edge id for the edge of type `ty ∈ {0,1,2}` anchored at site `(q,r)`:
    /// type 0 joins `Up(q,r)–Down(q,r)`, type 1 `Up(q,r)–Down(q−1,r)`,
    /// type 2 `Up(q,r)–Down(q,r−1)`.
    pub fn edge_id(&self, q: i64, r: i64, ty: u32) -> u32 {
        debug_assert!(ty < 3);
        self.site_index(q, r) * 3 + ty
    }

    /// Endpoint vertex ids of an edge.
    pub fn edge_endpoints(&self, edge: u32) -> (u32, u32) {
        let ty = edge % 3;
        let (q, r) = self.site_coords(edge / 3);
        let up = self.vertex_id(q, r, false);
        let down = match ty {
            0 => self.vertex_id(q, r, true),
            1 => self.vertex_id(q - 1, r, true),
            _ => self.vertex_id(q, r - 1, true),
        };
        (up, down)
    }

    /// Edge color: type 0 has the anchor site's face color, types 1 and 2
    /// rotate it by one and two steps.
    pub fn edge_color(&self, edge: u32) -> Color {
        let ty = edge % 3;
        let (q, r) = self.site_coords(edge / 3);
        Color::from_index((q - r).rem_euclid(3) as u32 + ty)
    }

    /// The unique edge of color `color` incident to `vertex`.
    pub fn vertex_edge_of_color(&self, vertex: u32, color: Color) -> u32 {
        let (q, r) = self.site_coords(vertex / 2);
        let c = (q - r).rem_euclid(3) as u32;
        let want = color.index();
        if vertex % 2 == 0 {
            // Up(q,r) anchors its three incident edges directly.
            self.edge_id(q, r, (want + 3 - c) % 3)
        } else {
            // Down(q,r) is the type-0/1/2 partner of Up(q,r), Up(q+1,r),
            // Up(q,r+1); pick the anchor whose type gives the wanted color.
            for (aq, ar, ty) in [(q, r, 0), (q + 1, r, 1), (q, r + 1, 2)] {
                let ac = (aq - ar).rem_euclid(3) as u32;
                if (ac + ty) % 3 == want {
                    return self.edge_id(aq, ar, ty);
                }
            }
            unreachable!("every vertex touches one edge of each color")
        }
    }

    /// All edges of a given color, one per site, as
    /// `(site_index, edge_id)` pairs ordered by site index.
    ///
    /// For fixed color `k`, site `(q,r)` of face color `c` contributes its
    /// type-`(k − c) mod 3` edge, so color classes are in bijection with
    /// sites — the fact the Floquet schedule leans on.
    pub fn edges_of_color(&self, color: Color) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.face_count() as usize);
        for s in 0..self.face_count() {
            let (q, r) = self.site_coords(s);
            let c = (q - r).rem_euclid(3) as u32;
            let ty = (color.index() + 3 - c) % 3;
            out.push((s, self.edge_id(q, r, ty)));
        }
        out
    }

    /// The six corner vertices of the face at `(q, r)`, in cyclic order.
    pub fn face_corners(&self, q: i64, r: i64) -> [u32; 6] {
        [
            self.vertex_id(q, r, false),
            self.vertex_id(q - 1, r, true),
            self.vertex_id(q - 1, r, false),
            self.vertex_id(q - 1, r - 1, true),
            self.vertex_id(q, r - 1, false),
            self.vertex_id(q, r - 1, true),
        ]
    }

    /// The six boundary edges of the face at `(q, r)`, in cyclic order.
    pub fn face_edges(&self, q: i64, r: i64) -> [u32; 6] {
        [
            self.edge_id(q, r, 1),
            self.edge_id(q - 1, r, 0),
            self.edge_id(q - 1, r, 2),
            self.edge_id(q, r - 1, 1),
            self.edge_id(q, r - 1, 0),
            self.edge_id(q, r, 2),
        ]
    }

    /// The six neighboring faces (sharing an edge), in cyclic order.
    pub fn face_neighbors(&self, q: i64, r: i64) -> [u32; 6] {
        [
            self.face_id(q + 1, r),
            self.face_id(q, r + 1),
            self.face_id(q - 1, r + 1),
            self.face_id(q - 1, r),
            self.face_id(q, r - 1),
            self.face_id(q + 1, r - 1),
        ]
    }
}
