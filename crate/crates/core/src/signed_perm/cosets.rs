use super::{Group, Subgroup};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetSide {
    /// `x S`
    Left,
    /// `S x`
    Right,
    /// `A x B`
    Double,
}

/// A partition of a group into cosets, each represented by its least element.
#[derive(Debug, Clone)]
pub struct CosetDecomposition {
    side: CosetSide,
    reps: Vec<usize>,
    membership: Vec<usize>,
    cosets: Vec<Vec<usize>>,
}

impl CosetDecomposition {
    /// Left cosets `x S`.
    pub fn left(g: &Group, s: &Subgroup) -> Result<Self> {
        Self::check(g, s)?;
        Ok(Self::partition(g, CosetSide::Left, |x| {
            s.members().iter().map(|&h| g.mul(x, h)).collect()
        }))
    }

    /// Right cosets `S x`.
    pub fn right(g: &Group, s: &Subgroup) -> Result<Self> {
        Self::check(g, s)?;
        Ok(Self::partition(g, CosetSide::Right, |x| {
            s.members().iter().map(|&h| g.mul(h, x)).collect()
        }))
    }

    /// Double cosets `A x B`.
    pub fn double(g: &Group, a: &Subgroup, b: &Subgroup) -> Result<Self> {
        Self::check(g, a)?;
        Self::check(g, b)?;
        Ok(Self::partition(g, CosetSide::Double, |x| {
            let mut out = Vec::with_capacity(a.order() * b.order());
            for &u in a.members() {
                let ux = g.mul(u, x);
                for &v in b.members() {
                    out.push(g.mul(ux, v));
                }
            }
            out
        }))
    }

    fn check(g: &Group, s: &Subgroup) -> Result<()> {
        // Subgroups are validated on construction; re-validate against this
        // parent in case one from another group is passed.
        if s.members().last().is_some_and(|&m| m >= g.order()) {
            return Err(Error::NotSubgroup("subgroup belongs to a larger group".into()));
        }
        Subgroup::new(g, s.members().iter().copied()).map(|_| ())
    }

    fn partition(g: &Group, side: CosetSide, coset_of: impl Fn(usize) -> Vec<usize>) -> Self {
        let mut membership = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        let mut cosets = Vec::new();
        for x in 0..g.order() {
            if membership[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            let mut members = coset_of(x);
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                membership[m] = id;
            }
            reps.push(x);
            cosets.push(members);
        }
        CosetDecomposition {
            side,
            reps,
            membership,
            cosets,
        }
    }

    pub fn side(&self) -> CosetSide {
        self.side
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Canonical (least) representatives, in increasing order.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, element: usize) -> usize {
        self.membership[element]
    }

    pub fn coset(&self, k: usize) -> &[usize] {
        &self.cosets[k]
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::{Bits, Perm, SignedPerm, DEFAULT_MAX_ORDER};

    fn b2() -> Group {
        let gens = [
            SignedPerm::from_sign(Bits::parse("10").unwrap()),
            SignedPerm::from_perm(Perm::from_one_line(&[2, 1]).unwrap()),
        ];
        Group::close(2, &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn whole_group_is_one_coset() {
        let g = b2();
        let d = CosetDecomposition::left(&g, &g.full_subgroup()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.reps(), &[0]);
    }

    #[test]
    fn point_stabilizer_has_two_cosets_of_four() {
        let g = b2();
        let h0 = Subgroup::filter(&g, |x| x.perm().apply(0) == 0).unwrap();
        for d in [
            CosetDecomposition::left(&g, &h0).unwrap(),
            CosetDecomposition::right(&g, &h0).unwrap(),
        ] {
            assert_eq!(d.len(), 2);
            assert!(d.cosets().iter().all(|c| c.len() == 4));
            for (k, c) in d.cosets().iter().enumerate() {
                assert_eq!(c[0], d.reps()[k]);
                assert!(c.iter().all(|&x| d.coset_of(x) == k));
            }
        }
    }

    #[test]
    fn trivial_double_cosets_are_elements() {
        let g = b2();
        let t = g.trivial_subgroup();
        let d = CosetDecomposition::double(&g, &t, &t).unwrap();
        assert_eq!(d.len(), 8);
    }
}
