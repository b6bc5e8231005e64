use std::fmt;

use serde::{Deserialize, Serialize};

use super::PermError;

/// A permutation of the points `0..degree`, stored as its image array.
///
/// Products follow the left-to-right convention: `a.then(&b)` applies `a`
/// first and then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(PermError::PointOutOfRange {
                    point: x,
                    degree: n,
                });
            }
            if seen[x] {
                return Err(PermError::NotBijective { point: x });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(PermError::PointOutOfRange { point: x, degree });
                }
                if touched[x] {
                    return Err(PermError::NotBijective { point: x });
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(0 19 21)(1 18 4)"`.
    ///
    /// Entries may be separated by spaces or commas, and cycles may be separated
    /// by commas, so the tuple-list style `"(0, 19, 21), (1, 18, 4)"` is accepted
    /// too. `"()"` and the empty string denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let bad = |msg: &str| PermError::CycleSyntax(format!("{msg} in `{text}`"));
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let flush =
            |number: &mut String, current: &mut Option<Vec<usize>>| -> Result<(), PermError> {
                if number.is_empty() {
                    return Ok(());
                }
                let value = number.parse::<usize>().map_err(|_| bad("invalid point"))?;
                number.clear();
                match current {
                    Some(c) => {
                        c.push(value);
                        Ok(())
                    }
                    None => Err(bad("point outside of a cycle")),
                }
            };
        for ch in text.chars() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(bad("nested parenthesis"));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current)?;
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(bad("unbalanced parenthesis")),
                    }
                }
                c if c.is_ascii_digit() => number.push(c),
                c if c.is_whitespace() || c == ',' => flush(&mut number, &mut current)?,
                other => return Err(bad(&format!("unexpected character `{other}`"))),
            }
        }
        if current.is_some() || !number.is_empty() {
            return Err(bad("unterminated cycle"));
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// The product that applies `self` first and `other` second.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `g⁻¹ · self · g` in the left-to-right convention, i.e. the map
    /// `g(x) ↦ g(self(x))`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.inverse().then(self).then(g)
    }

    /// First point not fixed by the permutation.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x)
            .map(|(i, _)| i)
    }

    /// Non-trivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the permutation: the lcm of its cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycles()
            .iter()
            .fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    /// Cycle notation with fixed points omitted; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                s.push_str(&x.to_string());
            }
            s.push(')');
        }
        s
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    fn gcd(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }
    a / gcd(a, b) * b
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;

    fn try_from(images: Vec<usize>) -> Result<Self, Self::Error> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Permutation[{}]{}",
            self.degree(),
            self.to_cycle_string()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_string_orders_by_smallest_point() {
        let p = Permutation::from_cycles(6, &[vec![4, 1, 5], vec![3, 0]]).unwrap();
        assert_eq!(p.to_cycle_string(), "(0 3)(1 5 4)");
        assert_eq!(Permutation::identity(4).to_cycle_string(), "()");
    }

    #[test]
    fn parses_both_notations() {
        let a = Permutation::parse_cycles("(0 19 21)(1 18 4)", 22).unwrap();
        let b = Permutation::parse_cycles("(0, 19, 21), (1, 18, 4)", 22).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.apply(21), 0);
        assert_eq!(a.apply(4), 1);
        assert!(Permutation::parse_cycles("()", 3).unwrap().is_identity());
    }

    #[test]
    fn rejects_bad_cycles() {
        assert!(Permutation::parse_cycles("(0 1", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 5)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 x)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn product_convention_is_left_to_right() {
        let a = Permutation::from_cycles(3, &[[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[[1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.then(&b).apply(0), 2);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.then(&b).order(), 3);
    }

    #[test]
    fn json_is_image_array() {
        let p = Permutation::from_cycles(3, &[[0, 2]]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,0]");
        let back: Permutation = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[0,0]").is_err());
    }
}
