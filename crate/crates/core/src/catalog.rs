//! Built-in surfaces.
//!
//! Platonic solid tables list, for each face, the face and slot glued to each
//! of its slots. Faces are numbered arbitrarily; within a face the slots run
//! counterclockwise as seen from outside the solid, starting at an arbitrary edge.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{Pair, SchlafliSymbol, TiledSurface};

const TETRAHEDRON: [[(usize, usize); 3]; 4] = [
    [(2, 1), (1, 0), (3, 0)],
    [(0, 1), (2, 0), (3, 1)],
    [(1, 1), (0, 0), (3, 2)],
    [(0, 2), (1, 2), (2, 2)],
];

const CUBE: [[(usize, usize); 4]; 6] = [
    [(2, 1), (1, 0), (3, 0), (4, 1)],
    [(0, 1), (2, 0), (5, 0), (3, 1)],
    [(1, 1), (0, 0), (4, 0), (5, 1)],
    [(0, 2), (1, 3), (5, 3), (4, 2)],
    [(2, 2), (0, 3), (3, 3), (5, 2)],
    [(1, 2), (2, 3), (4, 3), (3, 2)],
];

const OCTAHEDRON: [[(usize, usize); 3]; 8] = [
    [(2, 1), (1, 0), (4, 2)],
    [(0, 1), (3, 0), (5, 2)],
    [(3, 1), (0, 0), (6, 2)],
    [(1, 1), (2, 0), (7, 2)],
    [(5, 1), (6, 0), (0, 2)],
    [(7, 1), (4, 0), (1, 2)],
    [(4, 1), (7, 0), (2, 2)],
    [(6, 1), (5, 0), (3, 2)],
];

const DODECAHEDRON: [[(usize, usize); 5]; 12] = [
    [(5, 3), (1, 2), (2, 1), (4, 2), (3, 1)],
    [(9, 3), (2, 2), (0, 1), (5, 2), (6, 1)],
    [(4, 3), (0, 2), (1, 1), (9, 2), (8, 1)],
    [(5, 4), (0, 4), (4, 1), (10, 0), (7, 2)],
    [(10, 1), (3, 2), (0, 3), (2, 0), (8, 0)],
    [(7, 1), (6, 2), (1, 3), (0, 0), (3, 0)],
    [(9, 4), (1, 4), (5, 1), (7, 0), (11, 2)],
    [(6, 3), (5, 0), (3, 4), (10, 4), (11, 3)],
    [(4, 4), (2, 4), (9, 1), (11, 0), (10, 2)],
    [(11, 1), (8, 2), (2, 3), (1, 0), (6, 0)],
    [(3, 3), (4, 0), (8, 4), (11, 4), (7, 3)],
    [(8, 3), (9, 0), (6, 4), (7, 4), (10, 3)],
];

const ICOSAHEDRON: [[(usize, usize); 3]; 20] = [
    [(2, 1), (1, 0), (5, 0)],
    [(0, 1), (4, 0), (6, 1)],
    [(3, 1), (0, 0), (8, 0)],
    [(4, 1), (2, 0), (16, 1)],
    [(1, 1), (3, 0), (17, 0)],
    [(0, 2), (7, 0), (9, 1)],
    [(7, 1), (1, 2), (10, 1)],
    [(5, 1), (6, 0), (11, 0)],
    [(2, 2), (9, 0), (13, 0)],
    [(8, 1), (5, 2), (14, 1)],
    [(12, 1), (6, 2), (17, 2)],
    [(7, 2), (12, 0), (14, 2)],
    [(11, 1), (10, 0), (19, 1)],
    [(8, 2), (15, 0), (16, 2)],
    [(15, 1), (9, 2), (11, 2)],
    [(13, 1), (14, 0), (19, 0)],
    [(18, 1), (3, 2), (13, 2)],
    [(4, 2), (18, 0), (10, 2)],
    [(17, 1), (16, 0), (19, 2)],
    [(15, 2), (12, 2), (18, 2)],
];

pub const PLATONIC_SOLIDS: [&str; 5] = [
    "tetrahedron",
    "cube",
    "octahedron",
    "dodecahedron",
    "icosahedron",
];

fn from_const<const P: usize>(rows: &[[(usize, usize); P]]) -> TiledSurface {
    let rows: Vec<Vec<(usize, usize)>> = rows.iter().map(|r| r.to_vec()).collect();
    TiledSurface::from_tuples(P, &rows).expect("built-in table is a valid surface")
}

/// One of the five classical solids, by name.
pub fn platonic_solid(name: &str) -> Result<TiledSurface> {
    Ok(match name {
        "tetrahedron" => from_const(&TETRAHEDRON),
        "cube" => from_const(&CUBE),
        "octahedron" => from_const(&OCTAHEDRON),
        "dodecahedron" => from_const(&DODECAHEDRON),
        "icosahedron" => from_const(&ICOSAHEDRON),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

/// Sheet shifts of the unfolded Bolza surface: entry `[face][slot % 4]` is
/// `(shift, neighbour)`, meaning that crossing that slot from the copy of
/// `face` on sheet `i` lands on the copy of `neighbour` on sheet `i + shift`
/// (mod 8). Parallel edges of an octagon meet the same neighbour, so slots
/// `a` and `a + 4` share an entry.
pub const BOLZA_SHEET_SHIFTS: [[(i64, usize); 4]; 6] = [
    [(0, 4), (-1, 3), (-4, 2), (2, 5)],
    [(0, 2), (1, 3), (0, 4), (0, 5)],
    [(0, 1), (-1, 5), (-4, 0), (2, 3)],
    [(-1, 1), (-2, 2), (1, 0), (0, 4)],
    [(0, 0), (1, 5), (0, 1), (0, 3)],
    [(-1, 4), (-2, 0), (1, 2), (0, 1)],
];

/// The Bolza surface as six regular octagons, `{8,3}`, genus 2.
///
/// Only the neighbouring face of each slot and the sheet shift are tabulated;
/// the slot on the far side is the unique one whose rotation class change
/// `2(a - b) - 8` equals twice the shift, i.e. `b = a - 4 - shift (mod 8)`.
pub fn bolza() -> TiledSurface {
    let adj: Vec<Vec<Pair>> = (0..6)
        .map(|face| {
            (0..8)
                .map(|slot| {
                    let (shift, neighbour) = BOLZA_SHEET_SHIFTS[face][slot % 4];
                    let b = (slot as i64 - 4 - shift).rem_euclid(8) as usize;
                    Pair::new(neighbour, b)
                })
                .collect()
        })
        .collect();
    TiledSurface::new(8, adj).expect("Bolza gluing is a valid surface")
}

/// The regular p-gon with opposite sides identified (even `p`), or two p-gons
/// with each side glued to the parallel side of the other (odd `p`).
pub fn pi_p(p: usize) -> Result<TiledSurface> {
    if p < 3 {
        return Err(Error::InvalidSize(format!("p = {p} is below 3")));
    }
    let adj: Vec<Vec<Pair>> = if p % 2 == 0 {
        vec![(0..p).map(|a| Pair::new(0, (a + p / 2) % p)).collect()]
    } else {
        vec![
            (0..p).map(|a| Pair::new(1, a)).collect(),
            (0..p).map(|a| Pair::new(0, a)).collect(),
        ]
    };
    Ok(TiledSurface::new(p, adj)?)
}

/// Quotient of the square (`p = 4`) or hexagonal (`p = 6`) tiling of the plane
/// by the lattice spanned by `v1` and `v2`, in face-centre lattice coordinates.
///
/// Square faces sit at integer points with slot neighbours
/// `(0,-1), (1,0), (0,1), (-1,0)`. Hexagons have a horizontal bottom edge and
/// sit at `x·A + y·B` where `A` points at 30° and `B` at 90°.
pub fn torus_quotient(p: usize, v1: (i64, i64), v2: (i64, i64)) -> Result<TiledSurface> {
    let offsets: &[(i64, i64)] = match p {
        4 => &[(0, -1), (1, 0), (0, 1), (-1, 0)],
        6 => &[(0, -1), (1, -1), (1, 0), (0, 1), (-1, 1), (-1, 0)],
        _ => {
            return Err(Error::InvalidSize(format!(
                "torus maps need p = 4 or 6, got {p}"
            )))
        }
    };
    let (mut v1, mut v2) = (v1, v2);
    let mut det = v1.0 * v2.1 - v1.1 * v2.0;
    if det == 0 {
        return Err(Error::InvalidSize(format!(
            "lattice {v1:?}, {v2:?} is degenerate"
        )));
    }
    if det < 0 {
        std::mem::swap(&mut v1, &mut v2);
        det = -det;
    }
    let reduce = |(x, y): (i64, i64)| -> (i64, i64) {
        let s = (x * v2.1 - y * v2.0).div_euclid(det);
        let t = (v1.0 * y - v1.1 * x).div_euclid(det);
        (x - s * v1.0 - t * v2.0, y - s * v1.1 - t * v2.1)
    };

    let mut index: HashMap<(i64, i64), usize> = HashMap::new();
    let mut cells = vec![(0i64, 0i64)];
    index.insert((0, 0), 0);
    let mut i = 0;
    while i < cells.len() {
        let (x, y) = cells[i];
        for &(dx, dy) in offsets {
            let c = reduce((x + dx, y + dy));
            if let Entry::Vacant(e) = index.entry(c) {
                e.insert(cells.len());
                cells.push(c);
            }
        }
        i += 1;
    }
    let half = p / 2;
    let adj: Vec<Vec<Pair>> = cells
        .iter()
        .map(|&(x, y)| {
            offsets
                .iter()
                .enumerate()
                .map(|(a, &(dx, dy))| Pair::new(index[&reduce((x + dx, y + dy))], (a + half) % p))
                .collect()
        })
        .collect();
    if adj.len() as i64 != det {
        return Err(Error::invariant(
            "torus quotient has the wrong number of faces",
        ));
    }
    Ok(TiledSurface::new(p, adj)?)
}

/// The rotary torus map `{4,4}_(b,c)` or `{6,3}_(b,c)`: the quotient by the
/// lattice generated by `(b, c)` and its rotation by 90° (resp. 60°).
///
/// `{4,4}_(b,c)` has `b² + c²` faces and `{6,3}_(b,c)` has `b² + bc + c²`.
pub fn torus_map(p: usize, b: i64, c: i64) -> Result<TiledSurface> {
    if b < 0 || c < 0 || (b == 0 && c == 0) {
        return Err(Error::InvalidSize(format!("torus parameters ({b}, {c})")));
    }
    match p {
        4 => torus_quotient(4, (b, c), (-c, b)),
        6 => torus_quotient(6, (b, c), (-c, b + c)),
        _ => Err(Error::InvalidSize(format!(
            "torus maps need p = 4 or 6, got {p}"
        ))),
    }
}

/// Values a catalog surface is known to have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub symbol: SchlafliSymbol,
    pub genus: i64,
    pub rot_order: u64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub surface: TiledSurface,
    pub expected: Option<Expected>,
}

fn entry(name: &str, surface: TiledSurface, p: usize, q: usize, genus: i64) -> CatalogEntry {
    let rot_order = surface.pair_count() as u64;
    CatalogEntry {
        name: name.to_string(),
        surface,
        expected: Some(Expected {
            symbol: SchlafliSymbol { p, q },
            genus,
            rot_order,
        }),
    }
}

/// Every built-in surface, in listing order.
pub fn catalog() -> Vec<CatalogEntry> {
    let solid = |name| platonic_solid(name).expect("built-in solid");
    let torus = |p, b, c| torus_map(p, b, c).expect("built-in torus");
    vec![
        entry("tetrahedron", solid("tetrahedron"), 3, 3, 0),
        entry("cube", solid("cube"), 4, 3, 0),
        entry("octahedron", solid("octahedron"), 3, 4, 0),
        entry("dodecahedron", solid("dodecahedron"), 5, 3, 0),
        entry("icosahedron", solid("icosahedron"), 3, 5, 0),
        entry("bolza", bolza(), 8, 3, 2),
        entry(
            "bolza-dual",
            bolza().dual().expect("Bolza is regular"),
            3,
            8,
            2,
        ),
        entry("pi-4", pi_p(4).expect("p >= 3"), 4, 4, 1),
        entry("pi-5", pi_p(5).expect("p >= 3"), 5, 10, 2),
        entry("pi-8", pi_p(8).expect("p >= 3"), 8, 8, 2),
        entry("torus-4-4-2-0", torus(4, 2, 0), 4, 4, 1),
        entry("torus-4-4-1-2", torus(4, 1, 2), 4, 4, 1),
        entry("torus-6-3-1-1", torus(6, 1, 1), 6, 3, 1),
        entry("torus-6-3-2-1", torus(6, 2, 1), 6, 3, 1),
    ]
}

/// A built-in surface by catalog name.
pub fn lookup(name: &str) -> Result<TiledSurface> {
    catalog()
        .into_iter()
        .find(|e| e.name == name)
        .map(|e| e.surface)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// One line of a catalog listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogListing {
    pub name: String,
    pub p: usize,
    pub q: Option<usize>,
    pub faces: usize,
    pub genus: i64,
}

impl CatalogListing {
    pub fn new(name: &str, surface: &TiledSurface) -> Result<Self> {
        Ok(CatalogListing {
            name: name.to_string(),
            p: surface.p(),
            q: surface.schlafli().ok().map(|s| s.q),
            faces: surface.face_count(),
            genus: surface.genus()?,
        })
    }
}
