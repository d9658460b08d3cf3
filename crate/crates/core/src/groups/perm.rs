use std::fmt;

use super::GroupElement;

/// Permutation of `0..n` stored as its image array: point `x` goes to `self[x]`.
///
/// Composition is left to right: `a.compose(b)` applies `a` first, then `b`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u16::MAX as usize + 1, "degree {n} too large");
        Perm((0..n).map(|x| x as u16).collect())
    }

    /// Panics unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Self {
        Self::try_from_images(images).expect("not a permutation")
    }

    pub fn try_from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm(images.into_iter().map(|x| x as u16).collect()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&x| x as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u16;
        }
        Perm(inv.into())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }

    /// Disjoint-cycle notation, omitting fixed points.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl GroupElement for Perm {
    fn compose(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.degree(), rhs.degree());
        Perm(self.0.iter().map(|&x| rhs.0[x as usize]).collect())
    }

    fn as_permutation(&self) -> Option<&Perm> {
        Some(self)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_left_to_right() {
        let a = Perm::from_images(vec![1, 2, 0]);
        let b = Perm::from_images(vec![0, 2, 1]);
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.compose(&b).apply(0), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::try_from_images(vec![0, 0, 1]).is_none());
        assert!(Perm::try_from_images(vec![0, 3, 1]).is_none());
    }

    #[test]
    fn cycle_display() {
        let p = Perm::from_images(vec![1, 2, 0, 3]);
        assert_eq!(p.to_string(), "(0,1,2)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }
}
