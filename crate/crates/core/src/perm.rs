//! Permutations of a small label set `{0, …, N-1}`.
//!
//! Gluings between simplices are stored as permutations of vertex labels, so
//! this is the innermost type of the whole crate and is kept `Copy`.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm<const N: usize>([u8; N]);

pub type Perm5 = Perm<5>;
pub type Perm4 = Perm<4>;
pub type Perm3 = Perm<3>;

impl<const N: usize> Perm<N> {
    pub fn identity() -> Self {
        let mut img = [0u8; N];
        for (i, x) in img.iter_mut().enumerate() {
            *x = i as u8;
        }
        Perm(img)
    }

    /// Builds a permutation from its image list, rejecting anything that is
    /// not a bijection on `{0, …, N-1}`.
    pub fn from_images(images: [u8; N]) -> Option<Self> {
        let mut seen = 0u32;
        for &x in &images {
            if x as usize >= N || seen & (1 << x) != 0 {
                return None;
            }
            seen |= 1 << x;
        }
        Some(Perm(images))
    }

    pub fn from_slice(images: &[u8]) -> Option<Self> {
        let arr: [u8; N] = images.try_into().ok()?;
        Self::from_images(arr)
    }

    pub(crate) fn from_images_unchecked(images: [u8; N]) -> Self {
        debug_assert!(Self::from_images(images).is_some());
        Perm(images)
    }

    pub fn transposition(a: usize, b: usize) -> Self {
        let mut p = Self::identity();
        p.0.swap(a, b);
        p
    }

    #[inline]
    pub fn images(&self) -> &[u8; N] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self.compose(other)` is `self ∘ other`: apply `other` first.
    #[inline]
    pub fn compose(&self, other: &Self) -> Self {
        let mut img = [0u8; N];
        for i in 0..N {
            img[i] = self.0[other.0[i] as usize];
        }
        Perm(img)
    }

    #[inline]
    pub fn inverse(&self) -> Self {
        let mut img = [0u8; N];
        for i in 0..N {
            img[self.0[i] as usize] = i as u8;
        }
        Perm(img)
    }

    #[inline]
    pub fn pre_image(&self, x: usize) -> usize {
        self.0.iter().position(|&y| y as usize == x).expect("label out of range")
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i32 {
        let mut inversions = 0;
        for i in 0..N {
            for j in i + 1..N {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Image of a vertex subset given as a bitmask.
    #[inline]
    pub fn apply_mask(&self, mask: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..N {
            if mask & (1 << i) != 0 {
                out |= 1 << self.0[i];
            }
        }
        out
    }

    /// Rank in lexicographic order of image lists.
    pub fn lex_index(&self) -> usize {
        let mut idx = 0;
        for i in 0..N {
            let smaller = (i + 1..N).filter(|&j| self.0[j] < self.0[i]).count();
            idx = idx * (N - i) + smaller;
        }
        idx
    }

    pub fn from_lex_index(mut idx: usize) -> Option<Self> {
        let total = factorial(N);
        if idx >= total {
            return None;
        }
        let mut digits = [0usize; N];
        for i in (0..N).rev() {
            let base = N - i;
            digits[i] = idx % base;
            idx /= base;
        }
        let mut avail: Vec<u8> = (0..N as u8).collect();
        let mut img = [0u8; N];
        for i in 0..N {
            img[i] = avail.remove(digits[i]);
        }
        Some(Perm(img))
    }

    /// Rank in the sign-alternating order: lexicographic order, except that
    /// within each consecutive pair the even permutation is placed first.
    pub fn sn_index(&self) -> usize {
        let lex = self.lex_index();
        let even_here = self.sign() == 1;
        if even_here == (lex % 2 == 0) {
            lex
        } else {
            lex ^ 1
        }
    }

    pub fn from_sn_index(idx: usize) -> Option<Self> {
        let p = Self::from_lex_index(idx)?;
        if (p.sign() == 1) == (idx % 2 == 0) {
            Some(p)
        } else {
            Self::from_lex_index(idx ^ 1)
        }
    }

    pub fn count() -> usize {
        factorial(N)
    }

    /// All permutations, in lexicographic order.
    pub fn all() -> Vec<Self> {
        (0..factorial(N)).map(|i| Self::from_lex_index(i).unwrap()).collect()
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl<const N: usize> Default for Perm<N> {
    fn default() -> Self {
        Self::identity()
    }
}

impl<const N: usize> fmt::Debug for Perm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.0 {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Display for Perm<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Subsets of `{0, …, n-1}` of the given size as bitmasks, in lexicographic
/// order of their sorted element lists.
pub fn subsets(n: usize, size: usize) -> Vec<u8> {
    fn rec(n: usize, size: usize, start: usize, cur: u8, out: &mut Vec<u8>) {
        if size == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            rec(n, size - 1, i + 1, cur | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    rec(n, size, 0, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lex_and_sn_orders_are_bijections() {
        let all = Perm5::all();
        assert_eq!(all.len(), 120);
        for (i, p) in all.iter().enumerate() {
            assert_eq!(p.lex_index(), i);
            assert_eq!(Perm5::from_sn_index(p.sn_index()), Some(*p));
            assert_eq!(p.sign() == 1, p.sn_index() % 2 == 0);
        }
    }

    #[test]
    fn sn_order_head() {
        let expect: [[u8; 5]; 8] = [
            [0, 1, 2, 3, 4],
            [0, 1, 2, 4, 3],
            [0, 1, 3, 4, 2],
            [0, 1, 3, 2, 4],
            [0, 1, 4, 2, 3],
            [0, 1, 4, 3, 2],
            [0, 2, 1, 4, 3],
            [0, 2, 1, 3, 4],
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(Perm5::from_sn_index(i).unwrap().images(), e);
        }
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(5, 2)[..4], [0b00011, 0b00101, 0b01001, 0b10001]);
        assert_eq!(subsets(5, 3).len(), 10);
        assert_eq!(subsets(4, 4), vec![0b1111]);
    }

    fn perm5() -> impl Strategy<Value = Perm5> {
        (0usize..120).prop_map(|i| Perm5::from_lex_index(i).unwrap())
    }

    proptest! {
        #[test]
        fn sign_is_multiplicative(a in perm5(), b in perm5()) {
            prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        }

        #[test]
        fn inverse_composes_to_identity(a in perm5()) {
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert!(a.inverse().compose(&a).is_identity());
        }
    }
}
