//! The unfolding of a p-gon tiled surface and its monodromy over the (double) p-gon.
//!
//! Directions are tracked exactly, in units of `π/p`, as residues mod `2p`. A
//! face in rotation class `t` has its slot-`a` edge pointing in direction
//! `t + 2a`. Gluing slot `a` of `f` to slot `b` of `g` makes the two edges
//! anti-parallel, which forces the class of `g` to be `t + ρ(f, a)` with
//! `ρ(f, a) = 2(a - b) - p (mod 2p)`.
//!
//! The unfolded surface is the connected component of `(face 0, class 0)` in
//! the set of all `(face, class)` pairs. Its faces whose class is even are the
//! translates of one polygon `A` of the base surface `Π_p`; for odd `p` the odd
//! classes are translates of the second polygon `B`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcd;
use crate::permgroup::{Permutation, PermutationGroup};
use crate::surface::{Pair, SchlafliSymbol, TiledSurface};

/// Rotation class change across every edge, in units of `π/p`, mod `2p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationCocycle {
    p: usize,
    values: Vec<usize>,
}

impl RotationCocycle {
    pub fn new(surface: &TiledSurface) -> Result<Self> {
        let p = surface.p();
        let modulus = 2 * p;
        let values: Vec<usize> = surface
            .pairs()
            .map(|x| {
                let y = surface.glued(x);
                (2 * x.slot + 2 * p + modulus - 2 * y.slot - p) % modulus
            })
            .collect();
        let cocycle = RotationCocycle { p, values };
        for x in surface.pairs() {
            let there = cocycle.get(surface, surface.glued(x));
            let here = cocycle.get(surface, x);
            if (here + there) % modulus != 0 {
                return Err(Error::invariant(format!(
                    "cocycle is not antisymmetric at {x}"
                )));
            }
            if here % 2 != p % 2 {
                return Err(Error::invariant(format!("cocycle has wrong parity at {x}")));
            }
        }
        Ok(cocycle)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// `2p`.
    pub fn modulus(&self) -> usize {
        2 * self.p
    }

    pub fn get(&self, surface: &TiledSurface, pair: Pair) -> usize {
        self.values[surface.index(pair)]
    }

    /// Values indexed by pair index `face * p + slot`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Shorthand for [`RotationCocycle::new`].
pub fn cocycle(surface: &TiledSurface) -> Result<RotationCocycle> {
    RotationCocycle::new(surface)
}

/// Residue class of an integer used to index the closed-form tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Odd,
    ZeroMod4,
    TwoMod4,
}

impl ParityClass {
    pub fn of(n: usize) -> Self {
        match n % 4 {
            0 => ParityClass::ZeroMod4,
            2 => ParityClass::TwoMod4,
            _ => ParityClass::Odd,
        }
    }
}

/// Smallest `k' ≥ 1` with `k' · q(p-2)/p · π ≡ 0 (mod 2π)`: the least cover
/// degree that makes every vertex cone angle a multiple of `2π`.
pub fn k_prime(sym: SchlafliSymbol) -> usize {
    let two_p = 2 * sym.p;
    two_p / gcd(two_p, sym.q * (sym.p - 2))
}

/// The same value read off a closed form indexed by the residues of `p` and `q`.
pub fn k_prime_closed_form(sym: SchlafliSymbol) -> usize {
    let (p, d) = (sym.p, sym.d());
    use ParityClass::*;
    match (ParityClass::of(p), ParityClass::of(sym.q)) {
        (Odd, Odd) => 2 * p / d,
        (TwoMod4, Odd) => p / (2 * d),
        _ => p / d,
    }
}

/// A face of the unfolded surface: a base face in a given rotation class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverFace {
    pub face: usize,
    pub class: usize,
}

/// The unfolded surface, with faces numbered in breadth-first discovery order
/// from `(face 0, class 0)`, exploring slots in ascending order.
#[derive(Clone, Debug)]
pub struct UnfoldedSurface {
    base: TiledSurface,
    cocycle: RotationCocycle,
    k: usize,
    faces: Vec<CoverFace>,
    lookup: Vec<Option<usize>>,
    crossing: Vec<usize>,
    holonomy: Vec<usize>,
}

impl UnfoldedSurface {
    pub fn base(&self) -> &TiledSurface {
        &self.base
    }

    pub fn cocycle(&self) -> &RotationCocycle {
        &self.cocycle
    }

    pub fn p(&self) -> usize {
        self.base.p()
    }

    /// Degree of the projection onto the base surface.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn faces(&self) -> &[CoverFace] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Cover index of `(face, class)`, if that face belongs to the unfolding.
    pub fn find(&self, face: usize, class: usize) -> Option<usize> {
        self.lookup[face * 2 * self.p() + class % (2 * self.p())]
    }

    /// The cover face across slot `slot` of cover face `i`.
    pub fn cross(&self, i: usize, slot: usize) -> usize {
        self.crossing[i * self.p() + slot]
    }

    /// Direction (units of `π/p`) of slot `slot` of cover face `i`.
    pub fn direction(&self, i: usize, slot: usize) -> usize {
        (self.faces[i].class + 2 * slot) % (2 * self.p())
    }

    /// The slot of cover face `i` pointing in direction `dir`, if any.
    pub fn slot_with_direction(&self, i: usize, dir: usize) -> Option<usize> {
        let p = self.p();
        let diff = (dir + 2 * p - self.faces[i].class % (2 * p)) % (2 * p);
        (diff % 2 == 0).then_some(diff / 2)
    }

    /// Whether cover face `i` is a translate of polygon `A` of `Π_p`.
    pub fn is_a_class(&self, i: usize) -> bool {
        self.p() % 2 == 0 || self.faces[i].class % 2 == 0
    }

    /// The holonomy subgroup `H ≤ Z_{2p}`: the classes present over face 0.
    pub fn holonomy_subgroup(&self) -> &[usize] {
        &self.holonomy
    }

    /// The unfolded surface as a tiled surface in its own right.
    pub fn cover_surface(&self) -> Result<TiledSurface> {
        let p = self.p();
        let adj = (0..self.face_count())
            .map(|i| {
                (0..p)
                    .map(|a| {
                        let there = self.base.glued(Pair::new(self.faces[i].face, a));
                        Pair::new(self.cross(i, a), there.slot)
                    })
                    .collect()
            })
            .collect();
        TiledSurface::new(p, adj).map_err(|e| Error::invariant(format!("cover is invalid: {e}")))
    }

    /// Cover faces forming the fiber over polygon `A`, in discovery order.
    pub fn sheets(&self) -> Vec<usize> {
        (0..self.face_count())
            .filter(|&i| self.is_a_class(i))
            .collect()
    }
}

/// The holonomy subgroup recomputed from the defects of a spanning tree:
/// every non-tree edge closes a loop whose total rotation is a defect, and the
/// defects generate `H`. Returns the sorted elements of `H`.
pub fn holonomy_from_cycle_defects(
    surface: &TiledSurface,
    cocycle: &RotationCocycle,
) -> Vec<usize> {
    let modulus = cocycle.modulus();
    let mut potential = vec![None; surface.face_count()];
    potential[0] = Some(0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let here = potential[f].unwrap();
        for a in 0..surface.p() {
            let x = Pair::new(f, a);
            let g = surface.glued(x).face;
            if potential[g].is_none() {
                potential[g] = Some((here + cocycle.get(surface, x)) % modulus);
                queue.push_back(g);
            }
        }
    }
    let generator = surface.pairs().fold(modulus, |acc, x| {
        let y = surface.glued(x);
        let defect = (potential[x.face].unwrap() + cocycle.get(surface, x) + modulus
            - potential[y.face].unwrap())
            % modulus;
        gcd(acc, defect)
    });
    (0..modulus).step_by(generator).collect()
}

/// Builds the unfolding and checks its structural invariants.
pub fn unfold(surface: &TiledSurface) -> Result<UnfoldedSurface> {
    let p = surface.p();
    let modulus = 2 * p;
    let cocycle = RotationCocycle::new(surface)?;

    let mut lookup = vec![None; surface.face_count() * modulus];
    let mut faces = vec![CoverFace { face: 0, class: 0 }];
    lookup[0] = Some(0);
    let mut crossing = Vec::new();
    let mut i = 0;
    while i < faces.len() {
        let here = faces[i];
        for a in 0..p {
            let x = Pair::new(here.face, a);
            let g = surface.glued(x).face;
            let class = (here.class + cocycle.get(surface, x)) % modulus;
            let key = g * modulus + class;
            let j = match lookup[key] {
                Some(j) => j,
                None => {
                    faces.push(CoverFace { face: g, class });
                    lookup[key] = Some(faces.len() - 1);
                    faces.len() - 1
                }
            };
            crossing.push(j);
        }
        i += 1;
    }

    let holonomy: Vec<usize> = (0..modulus).filter(|&t| lookup[t].is_some()).collect();
    let k = holonomy.len();
    let unfolded = UnfoldedSurface {
        base: surface.clone(),
        cocycle,
        k,
        faces,
        lookup,
        crossing,
        holonomy,
    };
    check_unfolding(&unfolded)?;
    Ok(unfolded)
}

fn check_unfolding(u: &UnfoldedSurface) -> Result<()> {
    let p = u.p();
    let modulus = 2 * p;
    let surface = &u.base;
    let in_h = |t: usize| u.holonomy.binary_search(&(t % modulus)).is_ok();

    for &a in &u.holonomy {
        for &b in &u.holonomy {
            if !in_h(a + b) {
                return Err(Error::invariant("classes over face 0 are not a subgroup"));
            }
        }
    }
    for f in 0..surface.face_count() {
        let classes: Vec<usize> = (0..modulus).filter(|&t| u.find(f, t).is_some()).collect();
        if classes.len() != u.k || !classes.iter().all(|&t| in_h(t + modulus - classes[0])) {
            return Err(Error::invariant(format!(
                "classes over face {f} are not a coset of the holonomy subgroup"
            )));
        }
    }
    let bound = if p % 2 == 0 { p } else { 2 * p };
    if u.k > bound {
        return Err(Error::invariant(format!("k = {} exceeds {bound}", u.k)));
    }
    if let Ok(sym) = surface.schlafli() {
        if u.k % k_prime(sym) != 0 {
            return Err(Error::invariant(format!(
                "k' = {} does not divide k = {}",
                k_prime(sym),
                u.k
            )));
        }
    }
    // the loop around a vertex of degree q turns by q(p - 2) units
    for degree in surface.vertex_degrees() {
        if !in_h(degree * (p - 2)) {
            return Err(Error::invariant(
                "vertex holonomy is outside the holonomy subgroup",
            ));
        }
    }
    for degree in u.cover_surface()?.vertex_degrees() {
        if degree * (p - 2) % modulus != 0 {
            return Err(Error::invariant(format!(
                "cover vertex of degree {degree} has cone angle outside 2πZ"
            )));
        }
    }
    if holonomy_from_cycle_defects(surface, &u.cocycle) != u.holonomy {
        return Err(Error::invariant(
            "spanning-tree defects generate a different holonomy subgroup",
        ));
    }
    let a_count = u.sheets().len();
    let expected = if p % 2 == 0 {
        u.face_count()
    } else {
        u.face_count() / 2
    };
    if u.face_count() != u.k * surface.face_count()
        || a_count != expected
        || (p % 2 == 1 && u.face_count() % 2 != 0)
    {
        return Err(Error::invariant(
            "fiber size does not match the cover degree",
        ));
    }
    Ok(())
}

/// Sheets of the cover over `Π_p` and the monodromy generators acting on them.
#[derive(Clone, Debug)]
pub struct MonodromySetup {
    /// Cover faces of the fiber over polygon `A`, numbered by position.
    pub sheets: Vec<usize>,
    pub generators: Vec<Permutation>,
}

impl MonodromySetup {
    pub fn sheet_count(&self) -> usize {
        self.sheets.len()
    }
}

/// Permutation of cover faces induced by crossing the edge in direction `dir`
/// (units of `π/p`) from every face that has one.
fn crossing_map(u: &UnfoldedSurface, dir: usize, from: &[usize]) -> Vec<usize> {
    from.iter()
        .map(|&i| {
            let slot = u
                .slot_with_direction(i, dir)
                .expect("direction parity matches the face class");
            u.cross(i, slot)
        })
        .collect()
}

/// Monodromy generators on the sheets.
///
/// For even `p` every cover face is a sheet and generator `j` crosses the edge
/// in direction `j · 2π/p`, for `j < p/2`. For odd `p` the sheets are the
/// `A`-faces; `c_j` crosses the `A`-edge in direction `j · 2π/p` into a
/// `B`-face, and generator `j` (for `1 ≤ j < p`) is `c_j` followed by `c_0⁻¹`.
pub fn monodromy_generators(u: &UnfoldedSurface) -> Result<MonodromySetup> {
    let p = u.p();
    let sheets = u.sheets();
    let mut sheet_of = vec![usize::MAX; u.face_count()];
    for (s, &i) in sheets.iter().enumerate() {
        sheet_of[i] = s;
    }
    let n = sheets.len();

    let generators = if p % 2 == 0 {
        let as_sheets = |map: Vec<usize>| -> Result<Permutation> {
            Permutation::from_images(map.into_iter().map(|i| sheet_of[i]).collect())
                .map_err(|e| Error::invariant(format!("crossing is not a bijection: {e}")))
        };
        let mut gens = Vec::with_capacity(p / 2);
        for j in 0..p / 2 {
            let forward = as_sheets(crossing_map(u, 2 * j, &sheets))?;
            let backward = as_sheets(crossing_map(u, 2 * j + p, &sheets))?;
            if backward != forward.inverse() {
                return Err(Error::invariant(format!(
                    "opposite crossings in direction {j} are not inverse"
                )));
            }
            gens.push(forward);
        }
        gens
    } else {
        let b_faces: Vec<usize> = (0..u.face_count()).filter(|&i| !u.is_a_class(i)).collect();
        let mut b_index = vec![usize::MAX; u.face_count()];
        for (s, &i) in b_faces.iter().enumerate() {
            b_index[i] = s;
        }
        if b_faces.len() != n {
            return Err(Error::invariant("A and B fibers differ in size"));
        }
        let mut c = Vec::with_capacity(p);
        for j in 0..p {
            let map: Vec<usize> = crossing_map(u, 2 * j, &sheets)
                .into_iter()
                .map(|i| b_index[i])
                .collect();
            if map.contains(&usize::MAX) {
                return Err(Error::invariant(
                    "crossing from an A-face did not reach a B-face",
                ));
            }
            c.push(
                Permutation::from_images(map)
                    .map_err(|e| Error::invariant(format!("crossing is not a bijection: {e}")))?,
            );
        }
        let back = c[0].inverse();
        (1..p).map(|j| c[j].then(&back)).collect()
    };
    Ok(MonodromySetup { sheets, generators })
}

/// The monodromy group of the cover over `Π_p`.
///
/// The cover is connected, so the group is always transitive. Over a rotary
/// surface the cover is also normal and the group order equals the number of
/// sheets; over other surfaces the order can be far larger.
pub fn monodromy_group(u: &UnfoldedSurface) -> Result<(MonodromySetup, PermutationGroup)> {
    let setup = monodromy_generators(u)?;
    let group = PermutationGroup::new(setup.sheet_count(), setup.generators.clone())?;
    if !group.is_transitive() {
        return Err(Error::invariant(
            "monodromy group is not transitive on sheets",
        ));
    }
    if u.base().is_rotary()? && group.checked_order() != Some(setup.sheet_count() as u128) {
        return Err(Error::invariant(format!(
            "monodromy group of a rotary surface has order {:?} on {} sheets",
            group.checked_order(),
            setup.sheet_count()
        )));
    }
    Ok((setup, group))
}

/// The deck transformations of the cover over `Π_p`, as permutations of all
/// cover faces. Entry `s` sends the first sheet to sheet `s`.
///
/// Each one is found by propagating across edges while preserving directions;
/// a conflict means the cover is not normal and is reported as
/// [`Error::NormalityFailure`].
pub fn deck_transformations(u: &UnfoldedSurface) -> Result<Vec<Permutation>> {
    let sheets = u.sheets();
    let total = u.face_count();
    let mut deck = Vec::with_capacity(sheets.len());
    for (s, &target) in sheets.iter().enumerate() {
        let mut map = vec![usize::MAX; total];
        let mut used = vec![false; total];
        map[sheets[0]] = target;
        used[target] = true;
        let mut queue = VecDeque::from([sheets[0]]);
        while let Some(x) = queue.pop_front() {
            let y = map[x];
            for a in 0..u.p() {
                let dir = u.direction(x, a);
                let b = u
                    .slot_with_direction(y, dir)
                    .ok_or(Error::NormalityFailure { sheet: s })?;
                let (nx, ny) = (u.cross(x, a), u.cross(y, b));
                if map[nx] == usize::MAX {
                    if used[ny] {
                        return Err(Error::NormalityFailure { sheet: s });
                    }
                    map[nx] = ny;
                    used[ny] = true;
                    queue.push_back(nx);
                } else if map[nx] != ny {
                    return Err(Error::NormalityFailure { sheet: s });
                }
            }
        }
        let perm =
            Permutation::from_images(map).map_err(|_| Error::NormalityFailure { sheet: s })?;
        deck.push(perm);
    }

    // closed under composition and simply transitive on the fiber
    let by_image: std::collections::HashMap<usize, usize> = deck
        .iter()
        .enumerate()
        .map(|(s, d)| (d.apply(sheets[0]), s))
        .collect();
    if by_image.len() != deck.len() {
        return Err(Error::invariant(
            "deck transformations are not simply transitive",
        ));
    }
    for a in &deck {
        for b in &deck {
            let c = a.then(b);
            match by_image.get(&c.apply(sheets[0])) {
                Some(&s) if deck[s] == c => {}
                _ => return Err(Error::invariant("deck transformations are not closed")),
            }
        }
    }
    Ok(deck)
}

/// JSON summary of an unfolding: `{ "k": .., "n": .., "generators": [..] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnfoldingSummary {
    pub k: usize,
    pub n: usize,
    pub generators: Vec<String>,
}

impl UnfoldingSummary {
    pub fn new(u: &UnfoldedSurface, setup: &MonodromySetup) -> Self {
        UnfoldingSummary {
            k: u.k(),
            n: setup.sheet_count(),
            generators: setup
                .generators
                .iter()
                .map(Permutation::to_cycle_string)
                .collect(),
        }
    }
}
