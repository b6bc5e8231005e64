use std::collections::{BTreeSet, VecDeque};

use super::{PermError, Permutation};

/// One level of the stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Generators of the stabilizer of all earlier base points.
    generators: Vec<Permutation>,
    /// `transversal[x]` maps the base point to `x`, for every `x` in its orbit.
    transversal: Vec<Option<Permutation>>,
    /// Orbit points in discovery order.
    orbit: Vec<usize>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Permutation::identity(degree));
        Level {
            base_point,
            generators: Vec::new(),
            transversal,
            orbit: vec![base_point],
        }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        self.transversal = vec![None; degree];
        self.transversal[self.base_point] = Some(Permutation::identity(degree));
        self.orbit = vec![self.base_point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for g in &self.generators {
                let y = g.apply(x);
                if self.transversal[y].is_none() {
                    let rep = self.transversal[x].as_ref().unwrap().then(g);
                    self.transversal[y] = Some(rep);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group on `0..degree` given by generators, with a stabilizer
/// chain computed by deterministic Schreier–Sims.
///
/// New base points are the smallest point moved by the element that forces a
/// new level, so the chain is a pure function of the generator list.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<Level>,
}

impl PermutationGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let mut group = PermutationGroup {
            degree,
            generators,
            levels: Vec::new(),
        };
        for g in group.generators.clone() {
            let (residue, _) = group.sift_from(g, 0);
            if !residue.is_identity() {
                group.extend(0, residue);
            }
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermutationGroup {
            degree,
            generators: Vec::new(),
            levels: Vec::new(),
        }
    }

    /// Builds the group generated by `elements`, keeping only the elements that
    /// enlarge the group as generators.
    pub fn from_elements(degree: usize, elements: &[Permutation]) -> Result<Self, PermError> {
        let mut group = PermutationGroup::trivial(degree);
        for e in elements {
            if !group.contains(e)? {
                let mut gens = group.generators.clone();
                gens.push(e.clone());
                group = PermutationGroup::new(degree, gens)?;
            }
        }
        Ok(group)
    }

    /// Adds `g` (which fixes the base points of all levels before `index` and is
    /// not in the group of level `index`) to level `index`, then restores the
    /// chain below it.
    fn extend(&mut self, index: usize, g: Permutation) {
        if index == self.levels.len() {
            let base = g
                .first_moved_point()
                .expect("only non-identity elements extend the chain");
            self.levels.push(Level::new(base, self.degree));
        }
        self.levels[index].generators.push(g);
        self.levels[index].rebuild_orbit();

        // Every Schreier generator of this level must sift through the levels below.
        let mut i = 0;
        while i < self.levels[index].orbit.len() {
            let x = self.levels[index].orbit[i];
            let mut j = 0;
            while j < self.levels[index].generators.len() {
                let level = &self.levels[index];
                let s = &level.generators[j];
                let y = s.apply(x);
                let ux = level.transversal[x].as_ref().unwrap();
                let uy = level.transversal[y].as_ref().unwrap();
                let schreier = ux.then(s).then(&uy.inverse());
                if !schreier.is_identity() {
                    let (residue, _) = self.sift_from(schreier, index + 1);
                    if !residue.is_identity() {
                        self.extend(index + 1, residue);
                    }
                }
                j += 1;
            }
            i += 1;
        }
    }

    /// Sifts `g` through the chain starting at level `start`. Returns the residue
    /// and the level at which sifting stopped (`levels.len()` if it went through).
    fn sift_from(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let x = g.apply(level.base_point);
            match &level.transversal[x] {
                Some(u) => g = g.then(&u.inverse()),
                None => return (g, i),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Base points of the stabilizer chain.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Sizes of the basic orbits; their product is the group order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// All strong generators, level by level.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels
            .iter()
            .flat_map(|l| l.generators.iter().cloned())
            .collect()
    }

    /// Exact group order.
    ///
    /// # Panics
    /// If the order does not fit in a `u128`; see [`Self::checked_order`].
    pub fn order(&self) -> u128 {
        self.checked_order().expect("group order overflows u128")
    }

    /// Exact group order, or `None` past `u128::MAX` (symmetric groups of degree 35 and up).
    pub fn checked_order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, x: &Permutation) -> Result<bool, PermError> {
        if x.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                expected: self.degree,
                found: x.degree(),
            });
        }
        let (residue, _) = self.sift_from(x.clone(), 0);
        Ok(residue.is_identity())
    }

    /// Whether every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> Result<bool, PermError> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether `self` is a normal subgroup of `g`, tested by conjugating every
    /// generator of `self` by every generator of `g`.
    pub fn is_normal_in(&self, g: &PermutationGroup) -> Result<bool, PermError> {
        if self.degree != g.degree {
            return Err(PermError::DegreeMismatch {
                expected: g.degree,
                found: self.degree,
            });
        }
        if !self.is_subgroup_of(g)? {
            return Err(PermError::NotASubgroup);
        }
        for x in g.generators() {
            for n in &self.generators {
                if !self.contains(&n.conjugate_by(x))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn orbit(&self, point: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([point]);
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = g.apply(x);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Every element of the group, as products of transversal elements.
    ///
    /// Intended for small groups only.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = level
                .orbit
                .iter()
                .map(|&x| level.transversal[x].as_ref().unwrap())
                .collect();
            out = out
                .iter()
                .flat_map(|h| reps.iter().map(move |u| h.then(u)))
                .collect();
        }
        out
    }

    /// Whether some element has order equal to the group order.
    pub fn is_cyclic(&self) -> bool {
        let order = self.order();
        self.elements().iter().any(|e| e.order() == order)
    }
}
