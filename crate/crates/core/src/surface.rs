//! Closed oriented surfaces glued from regular p-gons.
//!
//! A surface is a table `adj[f][a] = (g, b)`: slot `a` of face `f` is glued to
//! slot `b` of face `g`. Slots are numbered counterclockwise, slot 0 being the
//! bottom edge, so slot `a` is the edge from corner `a` to corner `a + 1`.
//! Orientability is built into the representation: every gluing identifies an
//! edge with the reversed copy of its partner.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::permgroup::{Permutation, PermutationGroup};

/// The pair `{p, q}`: every face has `p` edges and every vertex degree `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchlafliSymbol {
    pub p: usize,
    pub q: usize,
}

impl SchlafliSymbol {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < 3 || q < 3 {
            return Err(Error::InvalidSymbol { p, q });
        }
        Ok(SchlafliSymbol { p, q })
    }

    /// `gcd(p, q)`.
    pub fn d(&self) -> usize {
        crate::gcd(self.p, self.q)
    }

    pub fn dual(&self) -> SchlafliSymbol {
        SchlafliSymbol {
            p: self.q,
            q: self.p,
        }
    }
}

impl fmt::Display for SchlafliSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// A face together with one of its edge slots. Serialized as `[face, slot]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Pair {
    pub face: usize,
    pub slot: usize,
}

impl Pair {
    pub const fn new(face: usize, slot: usize) -> Self {
        Pair { face, slot }
    }
}

impl From<(usize, usize)> for Pair {
    fn from((face, slot): (usize, usize)) -> Self {
        Pair { face, slot }
    }
}

impl From<Pair> for (usize, usize) {
    fn from(p: Pair) -> Self {
        (p.face, p.slot)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.face, self.slot)
    }
}

/// The first violated surface invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("p must be at least 3, got {0}")]
    PolygonTooSmall(usize),
    #[error("a surface needs at least one face")]
    NoFaces,
    #[error("face {face} has {len} slots, expected {p}")]
    RowLength { face: usize, len: usize, p: usize },
    #[error("range: slot {slot} of face {face} points to {target}, outside the table")]
    OutOfRange {
        face: usize,
        slot: usize,
        target: Pair,
    },
    #[error("involution: slot {slot} of face {face} is glued to itself")]
    SelfGlued { face: usize, slot: usize },
    #[error(
        "involution: slot {slot} of face {face} is glued to {target}, which is not glued back"
    )]
    NotInvolution {
        face: usize,
        slot: usize,
        target: Pair,
    },
    #[error("connected: face {face} is not reachable from face 0")]
    Disconnected { face: usize },
}

impl ValidationError {
    /// Name of the invariant this error violates.
    pub fn invariant(&self) -> &'static str {
        match self {
            ValidationError::PolygonTooSmall(_) | ValidationError::NoFaces => "shape",
            ValidationError::RowLength { .. } => "shape",
            ValidationError::OutOfRange { .. } => "range",
            ValidationError::SelfGlued { .. } | ValidationError::NotInvolution { .. } => {
                "involution"
            }
            ValidationError::Disconnected { .. } => "connected",
        }
    }
}

/// Checks a raw gluing table against every surface invariant, reporting the first violation.
pub fn validate(p: usize, adj: &[Vec<Pair>]) -> Result<(), ValidationError> {
    if p < 3 {
        return Err(ValidationError::PolygonTooSmall(p));
    }
    if adj.is_empty() {
        return Err(ValidationError::NoFaces);
    }
    let m = adj.len();
    for (face, row) in adj.iter().enumerate() {
        if row.len() != p {
            return Err(ValidationError::RowLength {
                face,
                len: row.len(),
                p,
            });
        }
    }
    for (face, row) in adj.iter().enumerate() {
        for (slot, &target) in row.iter().enumerate() {
            if target.face >= m || target.slot >= p {
                return Err(ValidationError::OutOfRange { face, slot, target });
            }
        }
    }
    for (face, row) in adj.iter().enumerate() {
        for (slot, &target) in row.iter().enumerate() {
            if target == Pair::new(face, slot) {
                return Err(ValidationError::SelfGlued { face, slot });
            }
            if adj[target.face][target.slot] != Pair::new(face, slot) {
                return Err(ValidationError::NotInvolution { face, slot, target });
            }
        }
    }
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        for t in &adj[f] {
            if !seen[t.face] {
                seen[t.face] = true;
                queue.push_back(t.face);
            }
        }
    }
    if let Some(face) = seen.iter().position(|&s| !s) {
        return Err(ValidationError::Disconnected { face });
    }
    Ok(())
}

/// A validated gluing of `m` regular p-gons into a closed oriented surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiledSurface {
    p: usize,
    m: usize,
    /// `adj[f * p + a]` is the pair glued to `(f, a)`.
    adj: Vec<Pair>,
}

impl TiledSurface {
    pub fn new(p: usize, adj: Vec<Vec<Pair>>) -> Result<Self, ValidationError> {
        validate(p, &adj)?;
        Ok(TiledSurface {
            p,
            m: adj.len(),
            adj: adj.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from `(face, slot)` tuples.
    pub fn from_tuples(p: usize, adj: &[Vec<(usize, usize)>]) -> Result<Self, ValidationError> {
        let rows = adj
            .iter()
            .map(|row| row.iter().map(|&t| Pair::from(t)).collect())
            .collect();
        TiledSurface::new(p, rows)
    }

    /// Sides per face.
    pub fn p(&self) -> usize {
        self.p
    }

    /// Number of faces.
    pub fn face_count(&self) -> usize {
        self.m
    }

    pub fn pair_count(&self) -> usize {
        self.m * self.p
    }

    pub fn edge_count(&self) -> usize {
        self.pair_count() / 2
    }

    #[inline]
    pub fn index(&self, pair: Pair) -> usize {
        pair.face * self.p + pair.slot
    }

    #[inline]
    pub fn pair(&self, index: usize) -> Pair {
        Pair::new(index / self.p, index % self.p)
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.pair_count()).map(|i| self.pair(i))
    }

    /// The pair on the other side of the edge.
    #[inline]
    pub fn glued(&self, pair: Pair) -> Pair {
        self.adj[self.index(pair)]
    }

    /// The next slot counterclockwise on the same face.
    #[inline]
    pub fn successor(&self, pair: Pair) -> Pair {
        Pair::new(pair.face, (pair.slot + 1) % self.p)
    }

    /// Next corner around the same vertex: cross the edge, then step to the
    /// following slot.
    #[inline]
    pub fn corner_step(&self, corner: Pair) -> Pair {
        self.successor(self.glued(corner))
    }

    /// The gluing table as rows of pairs.
    pub fn adjacency(&self) -> Vec<Vec<Pair>> {
        self.adj.chunks(self.p).map(|r| r.to_vec()).collect()
    }

    /// Partition of all corners into vertex cycles. Corner `(f, a)` is the start
    /// of slot `a`; each cycle lists its corners in walk order, starting from its
    /// smallest corner, and cycles are sorted by that corner.
    pub fn vertex_orbits(&self) -> Vec<Vec<Pair>> {
        let mut seen = vec![false; self.pair_count()];
        let mut out = Vec::new();
        for start in 0..self.pair_count() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(self.pair(x));
                x = self.index(self.corner_step(self.pair(x)));
            }
            out.push(cycle);
        }
        out
    }

    pub fn vertex_degrees(&self) -> Vec<usize> {
        self.vertex_orbits().iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_orbits().len()
    }

    /// The Schläfli symbol, or [`Error::NotRegular`] when vertex degrees differ.
    pub fn schlafli(&self) -> Result<SchlafliSymbol> {
        let mut degrees = self.vertex_degrees();
        degrees.sort_unstable();
        if degrees.first() != degrees.last() {
            return Err(Error::NotRegular { degrees });
        }
        SchlafliSymbol::new(self.p, degrees[0])
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> Result<i64> {
        if self.pair_count() % 2 != 0 {
            return Err(Error::MalformedSurface(format!(
                "odd number of edge sides ({})",
                self.pair_count()
            )));
        }
        Ok(self.vertex_count() as i64 - self.edge_count() as i64 + self.m as i64)
    }

    pub fn genus(&self) -> Result<i64> {
        let chi = self.euler_characteristic()?;
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::MalformedSurface(format!(
                "Euler characteristic {chi} has no orientable genus"
            )));
        }
        Ok((2 - chi) / 2)
    }

    /// Renumbers the slots of each face: old slot `a` of face `f` becomes slot
    /// `a + offsets[f]`. The result is the same map with another choice of bottom edges.
    pub fn rotate_slots(&self, offsets: &[usize]) -> TiledSurface {
        assert_eq!(offsets.len(), self.m);
        let p = self.p;
        let shift = |x: Pair| Pair::new(x.face, (x.slot + offsets[x.face]) % p);
        let mut adj = vec![Pair::new(0, 0); self.pair_count()];
        for x in self.pairs() {
            let y = shift(x);
            adj[y.face * p + y.slot] = shift(self.glued(x));
        }
        TiledSurface { p, m: self.m, adj }
    }

    /// The dual map: one face per vertex, one vertex per face.
    ///
    /// The corner walk turns clockwise around a vertex, so each dual face lists
    /// its edges in reversed walk order to stay counterclockwise.
    pub fn dual(&self) -> Result<TiledSurface> {
        let sym = self.schlafli()?;
        let q = sym.q;
        let orbits = self.vertex_orbits();
        // position of each primal pair in the dual: (dual face, dual slot)
        let mut place = vec![Pair::new(0, 0); self.pair_count()];
        for (v, cycle) in orbits.iter().enumerate() {
            for j in 0..q {
                let primal = cycle[(q - j) % q];
                place[self.index(primal)] = Pair::new(v, j);
            }
        }
        let mut adj = vec![vec![Pair::new(0, 0); q]; orbits.len()];
        for x in self.pairs() {
            let here = place[self.index(x)];
            adj[here.face][here.slot] = place[self.index(self.glued(x))];
        }
        TiledSurface::new(q, adj).map_err(|e| Error::invariant(format!("dual is invalid: {e}")))
    }

    /// Extends `start ↦ image` to a map from the pairs of `self` to the pairs of
    /// `other` commuting with slot succession and with crossing edges.
    fn propagate(&self, other: &TiledSurface, start: Pair, image: Pair) -> Option<Vec<usize>> {
        if self.p != other.p || self.m != other.m {
            return None;
        }
        let n = self.pair_count();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.index(start)] = other.index(image);
        used[other.index(image)] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let y = other.pair(map[self.index(x)]);
            for (nx, ny) in [
                (self.successor(x), other.successor(y)),
                (self.glued(x), other.glued(y)),
            ] {
                let (ix, iy) = (self.index(nx), other.index(ny));
                if map[ix] == usize::MAX {
                    if used[iy] {
                        return None;
                    }
                    map[ix] = iy;
                    used[iy] = true;
                    queue.push_back(nx);
                } else if map[ix] != iy {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// An orientation-preserving map isomorphism to `other`, as a bijection of pair indices.
    pub fn isomorphism_to(&self, other: &TiledSurface) -> Option<Permutation> {
        if self.p != other.p || self.m != other.m {
            return None;
        }
        other
            .pairs()
            .find_map(|y| self.propagate(other, Pair::new(0, 0), y))
            .map(|m| Permutation::from_images(m).expect("propagation yields a bijection"))
    }

    /// Every orientation-preserving automorphism, as a permutation of pair
    /// indices, ordered by the image of pair `(0, 0)`.
    pub fn automorphisms(&self) -> Vec<Permutation> {
        self.pairs()
            .filter_map(|y| self.propagate(self, Pair::new(0, 0), y))
            .map(|m| Permutation::from_images(m).expect("propagation yields a bijection"))
            .collect()
    }

    /// The rotation group acting on pair indices.
    pub fn rotation_group(&self) -> Result<PermutationGroup> {
        let autos = self.automorphisms();
        let group = PermutationGroup::from_elements(self.pair_count(), &autos)?;
        if group.order() != autos.len() as u128 {
            return Err(Error::invariant(format!(
                "{} automorphisms generate a group of order {}",
                autos.len(),
                group.order()
            )));
        }
        Ok(group)
    }

    /// Whether the rotation group is transitive on pairs.
    pub fn is_rotary(&self) -> Result<bool> {
        let group = self.rotation_group()?;
        let by_order = group.order() == self.pair_count() as u128;
        let by_orbit = group.is_transitive();
        if by_order != by_orbit {
            return Err(Error::invariant(
                "rotation group order and transitivity disagree",
            ));
        }
        Ok(by_order)
    }
}
