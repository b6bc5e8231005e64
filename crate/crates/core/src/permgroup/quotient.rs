use super::{PermError, Permutation, PermutationGroup};

/// Largest index for which [`quotient_by_normal`] builds a multiplication table.
pub const MAX_QUOTIENT_ORDER: u128 = 4096;

/// A finite group given by coset representatives and a multiplication table.
///
/// Element `0` is the identity coset.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    representatives: Vec<Permutation>,
    table: Vec<Vec<usize>>,
}

impl QuotientGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Product of cosets `a` and `b` (apply `a` first).
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.table[x][a];
            n += 1;
        }
        n
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        (0..n).any(|a| self.element_order(a) == n)
    }
}

/// Tabulates `g / n` for a normal subgroup `n` of `g`.
pub fn quotient_by_normal(
    g: &PermutationGroup,
    n: &PermutationGroup,
) -> Result<QuotientGroup, PermError> {
    if !n.is_normal_in(g)? {
        return Err(PermError::NotNormal);
    }
    let index = g.order() / n.order();
    if index > MAX_QUOTIENT_ORDER {
        return Err(PermError::QuotientTooLarge(index));
    }
    let degree = g.degree();
    let find = |reps: &[Permutation], x: &Permutation| -> Result<Option<usize>, PermError> {
        for (i, r) in reps.iter().enumerate() {
            if n.contains(&x.then(&r.inverse()))? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    };

    let mut reps = vec![Permutation::identity(degree)];
    let mut i = 0;
    while i < reps.len() {
        for s in g.generators() {
            let x = reps[i].then(s);
            if find(&reps, &x)?.is_none() {
                reps.push(x);
            }
        }
        i += 1;
    }
    debug_assert_eq!(reps.len() as u128, index);

    let mut table = vec![vec![0; reps.len()]; reps.len()];
    for a in 0..reps.len() {
        for b in 0..reps.len() {
            let x = reps[a].then(&reps[b]);
            table[a][b] = find(&reps, &x)?.expect("cosets are closed under products");
        }
    }
    Ok(QuotientGroup {
        representatives: reps,
        table,
    })
}
