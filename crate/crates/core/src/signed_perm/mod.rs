//! Signed permutations: the semidirect product `(Z/2)^N ⋊ S_N`.
//!
//! An element is a pair `(f, σ)` of a sign vector and a permutation of the
//! positions `1..=N`. Position `i` stands for the coset `φ_i H₀`; bit `i` of a
//! sign vector is its value at that coset. Internally positions are 0-based.
//!
//! The group law is `(f, σ)(f', σ') = (f + σ·f', σσ')` with
//! `(σ·f')(j) = f'(σ⁻¹ j)`.

mod cosets;
mod format;
mod group;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

pub use cosets::CosetDecomposition;
pub use format::{parse_generator_file, parse_generators, write_generators};
pub use group::{ConjugacyClasses, Group, Subgroup, DEFAULT_MAX_ORDER};

/// Largest supported number of positions.
pub const MAX_DEGREE: usize = 20;

/// A fixed-length vector over `Z/2`, packed into a word. Bit `i` is the
/// value at position `i + 1`. The derived order is numeric on the packed
/// word (for equal lengths).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Bits {
    word: u32,
    len: u8,
}

impl Bits {
    pub fn new(word: u32, len: usize) -> Self {
        assert!(len <= MAX_DEGREE, "bit vector longer than {MAX_DEGREE}");
        Bits {
            word: word & mask(len),
            len: len as u8,
        }
    }

    pub fn zeros(len: usize) -> Self {
        Bits::new(0, len)
    }

    pub fn ones(len: usize) -> Self {
        Bits::new(mask(len), len)
    }

    /// Indicator vector of the 0-based positions in `positions`.
    pub fn from_positions(positions: impl IntoIterator<Item = usize>, len: usize) -> Self {
        let mut word = 0u32;
        for p in positions {
            assert!(p < len, "position {p} out of range for length {len}");
            word |= 1 << p;
        }
        Bits::new(word, len)
    }

    pub fn word(self) -> u32 {
        self.word
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, i: usize) -> bool {
        (self.word >> i) & 1 == 1
    }

    pub fn is_zero(self) -> bool {
        self.word == 0
    }

    pub fn count_ones(self) -> u32 {
        self.word.count_ones()
    }

    pub fn xor(self, other: Bits) -> Bits {
        debug_assert_eq!(self.len, other.len);
        Bits {
            word: self.word ^ other.word,
            len: self.len,
        }
    }

    /// `Σ_{i ∈ subset} self(i)` in `Z/2`.
    pub fn parity_on(self, subset: Bits) -> bool {
        (self.word & subset.word).count_ones() & 1 == 1
    }

    /// The induced action `(σ·f)(j) = f(σ⁻¹ j)`. On indicator vectors this is
    /// `I ↦ σI`.
    pub fn permuted(self, perm: &Perm) -> Bits {
        debug_assert_eq!(self.len, perm.len);
        let mut word = 0u32;
        let mut rest = self.word;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            word |= 1 << perm.images[j];
        }
        Bits { word, len: self.len }
    }

    /// 0-based positions of the set bits.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        (0..self.len as usize).filter(move |&i| self.get(i))
    }

    /// Parses a string of `0`/`1` characters, position 1 first.
    pub fn parse(s: &str) -> Option<Bits> {
        if s.len() > MAX_DEGREE {
            return None;
        }
        let mut word = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => word |= 1 << i,
                _ => return None,
            }
        }
        Some(Bits::new(word, s.len()))
    }

    fn cmp_lex(self, other: Bits) -> Ordering {
        // lexicographic on the string f(1) f(2) ... f(N)
        let diff = self.word ^ other.word;
        if diff == 0 {
            return Ordering::Equal;
        }
        let first = diff.trailing_zeros();
        if (self.word >> first) & 1 == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

fn mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

/// A permutation of `0..len`, stored in one-line notation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Perm {
    images: [u8; MAX_DEGREE],
    len: u8,
}

impl Perm {
    pub fn identity(len: usize) -> Self {
        assert!(len <= MAX_DEGREE);
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().enumerate().take(len) {
            *slot = i as u8;
        }
        Perm {
            images,
            len: len as u8,
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let len = images.len();
        if len > MAX_DEGREE {
            return Err(Error::resource("permutation degree", MAX_DEGREE, len));
        }
        let mut seen = [false; MAX_DEGREE];
        let mut out = [0u8; MAX_DEGREE];
        for (i, &img) in images.iter().enumerate() {
            if img >= len || seen[img] {
                return Err(Error::input(format!(
                    "not a permutation of 1..{len}: {:?}",
                    images.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[img] = true;
            out[i] = img as u8;
        }
        Ok(Perm {
            images: out,
            len: len as u8,
        })
    }

    /// Builds from 1-based images as written in one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::input("permutation images are 1-based"));
        }
        let zero_based: Vec<usize> = images.iter().map(|x| x - 1).collect();
        Perm::from_images(&zero_based)
    }

    /// Product of transpositions of 1-based points, applied right to left.
    pub fn from_transpositions(len: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut p = Perm::identity(len);
        for &(a, b) in pairs.iter().rev() {
            if a == 0 || b == 0 || a > len || b > len {
                return Err(Error::input(format!("transposition ({a} {b}) out of range")));
            }
            let mut t = Perm::identity(len);
            t.images[a - 1] = (b - 1) as u8;
            t.images[b - 1] = (a - 1) as u8;
            p = t.then_apply(&p);
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images[..self.len as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images().iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn then_apply(&self, other: &Perm) -> Perm {
        let mut images = [0u8; MAX_DEGREE];
        for (i, slot) in images.iter_mut().enumerate().take(self.len()) {
            *slot = self.images[other.images[i] as usize];
        }
        Perm {
            images,
            len: self.len,
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = [0u8; MAX_DEGREE];
        for i in 0..self.len() {
            images[self.images[i] as usize] = i as u8;
        }
        Perm {
            images,
            len: self.len,
        }
    }
}

impl Ord for Perm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.images().cmp(other.images())
    }
}

impl PartialOrd for Perm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| (x + 1).to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// An element `(f, σ)` of `(Z/2)^N ⋊ S_N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedPerm {
    sign: Bits,
    perm: Perm,
}

impl SignedPerm {
    pub fn new(sign: Bits, perm: Perm) -> Result<Self> {
        if sign.len() != perm.len() {
            return Err(Error::DegreeMismatch {
                left: sign.len(),
                right: perm.len(),
            });
        }
        Ok(SignedPerm { sign, perm })
    }

    pub fn identity(degree: usize) -> Self {
        SignedPerm {
            sign: Bits::zeros(degree),
            perm: Perm::identity(degree),
        }
    }

    /// Complex conjugation `ι = (𝟙, id)`.
    pub fn iota(degree: usize) -> Self {
        SignedPerm {
            sign: Bits::ones(degree),
            perm: Perm::identity(degree),
        }
    }

    /// A pure sign element `(f, id)`.
    pub fn from_sign(sign: Bits) -> Self {
        SignedPerm {
            sign,
            perm: Perm::identity(sign.len()),
        }
    }

    /// A pure permutation element `(𝟘, σ)`.
    pub fn from_perm(perm: Perm) -> Self {
        SignedPerm {
            sign: Bits::zeros(perm.len()),
            perm,
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn sign(&self) -> Bits {
        self.sign
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.sign.is_zero() && self.perm.is_identity()
    }

    /// The semidirect law `(f, σ)(f', σ') = (f + σ·f', σσ')`.
    pub fn compose(&self, other: &SignedPerm) -> Result<SignedPerm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    fn compose_unchecked(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm {
            sign: self.sign.xor(other.sign.permuted(&self.perm)),
            perm: self.perm.then_apply(&other.perm),
        }
    }

    /// `(f, σ)⁻¹ = (σ⁻¹·f, σ⁻¹)`.
    pub fn inverse(&self) -> SignedPerm {
        let inv = self.perm.inverse();
        SignedPerm {
            sign: self.sign.permuted(&inv),
            perm: inv,
        }
    }

    /// Action on the `2N` embeddings `(j, ε)` of the CM-field: `(j, ε)` is
    /// `ι^ε φ_j`. `(f, σ)·(j, ε) = (σ j, ε + f(σ j))`.
    pub fn act_on_embedding(&self, (j, eps): (usize, bool)) -> (usize, bool) {
        let k = self.perm.apply(j);
        (k, eps ^ self.sign.get(k))
    }
}

impl Mul for SignedPerm {
    type Output = SignedPerm;
    fn mul(self, rhs: SignedPerm) -> SignedPerm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(&rhs)
    }
}

impl<'a> Mul<&'a SignedPerm> for &'a SignedPerm {
    type Output = SignedPerm;
    fn mul(self, rhs: &SignedPerm) -> SignedPerm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

/// Canonical order: one-line permutation first, then the sign string.
impl Ord for SignedPerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.perm
            .cmp(&other.perm)
            .then_with(|| self.sign.cmp_lex(other.sign))
    }
}

impl PartialOrd for SignedPerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "signs={} perm={}", self.sign, self.perm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(signs: &str, perm: &[usize]) -> SignedPerm {
        SignedPerm::new(Bits::parse(signs).unwrap(), Perm::from_one_line(perm).unwrap()).unwrap()
    }

    /// The 2N×2N signed permutation matrix of `(f, σ)` acting on embeddings.
    fn matrix(x: &SignedPerm) -> Vec<Vec<i32>> {
        let n = x.degree();
        let mut m = vec![vec![0; 2 * n]; 2 * n];
        for j in 0..n {
            for eps in [false, true] {
                let (k, e) = x.act_on_embedding((j, eps));
                m[2 * k + e as usize][2 * j + eps as usize] = 1;
            }
        }
        m
    }

    fn matmul(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    fn all_elements(n: usize) -> Vec<SignedPerm> {
        let mut perms = vec![vec![]];
        for _ in 0..n {
            let mut next = vec![];
            for p in &perms {
                for x in 0..n {
                    if !p.contains(&x) {
                        let mut q = p.clone();
                        q.push(x);
                        next.push(q);
                    }
                }
            }
            perms = next;
        }
        let mut out = vec![];
        for p in perms {
            for w in 0..(1u32 << n) {
                out.push(SignedPerm::new(Bits::new(w, n), Perm::from_images(&p).unwrap()).unwrap());
            }
        }
        out
    }

    #[test]
    fn identity_is_neutral() {
        let x = sp("10", &[2, 1]);
        let e = SignedPerm::identity(2);
        assert_eq!(e * x, x);
        assert_eq!(x * e, x);
    }

    #[test]
    fn hand_evaluated_square_in_degree_two() {
        let x = sp("10", &[2, 1]);
        assert_eq!(x * x, sp("11", &[1, 2]));
        // same product through the embedding representation
        assert_eq!(matmul(&matrix(&x), &matrix(&x)), matrix(&sp("11", &[1, 2])));
    }

    #[test]
    fn law_matches_matrix_representation() {
        let elems = all_elements(3);
        assert_eq!(elems.len(), 48);
        for a in &elems {
            for b in elems.iter().step_by(5) {
                assert_eq!(matrix(&(a * b)), matmul(&matrix(a), &matrix(b)));
            }
        }
    }

    #[test]
    fn iota_is_central_in_b3() {
        let iota = SignedPerm::iota(3);
        for x in all_elements(3) {
            assert_eq!(iota * x, x * iota);
        }
    }

    #[test]
    fn inverse_by_search() {
        let x = sp("10", &[2, 1]);
        let found: Vec<_> = all_elements(2)
            .into_iter()
            .filter(|y| (*y * x).is_identity())
            .collect();
        assert_eq!(found, vec![x.inverse()]);
        assert_eq!(SignedPerm::identity(2).inverse(), SignedPerm::identity(2));
        let f = SignedPerm::from_sign(Bits::parse("101").unwrap());
        assert_eq!(f.inverse(), f);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let a = SignedPerm::identity(2);
        let b = SignedPerm::identity(3);
        assert!(matches!(a.compose(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn canonical_order_is_perm_then_signs() {
        let a = sp("11", &[1, 2]);
        let b = sp("00", &[2, 1]);
        let c = sp("01", &[1, 2]);
        let d = sp("10", &[1, 2]);
        let mut v = vec![a, b, c, d];
        v.sort();
        assert_eq!(v, vec![c, d, a, b]);
    }

    #[test]
    fn transpositions_compose_right_to_left() {
        // (1 2)(2 3): 3 -> 2 -> 1
        let p = Perm::from_transpositions(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(p.apply(2), 0);
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(1), 2);
    }

    #[test]
    fn bits_parity_and_parse() {
        let f = Bits::parse("1101").unwrap();
        assert_eq!(f.to_string(), "1101");
        assert!(!f.parity_on(Bits::parse("1100").unwrap()));
        assert!(f.parity_on(Bits::parse("1000").unwrap()));
        assert!(Bits::parse("10x").is_none());
    }
}
