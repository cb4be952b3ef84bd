use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::{SignedPerm, MAX_DEGREE};
use crate::error::{Error, Result};

/// Default cap on the order of a closed group.
pub const DEFAULT_MAX_ORDER: usize = 100_000;

/// Groups up to this order get a cached multiplication table.
const TABLE_LIMIT: usize = 2048;

/// A finite group of signed permutations with elements in canonical order.
#[derive(Debug)]
pub struct Group {
    degree: usize,
    elements: Vec<SignedPerm>,
    index: HashMap<SignedPerm, usize>,
    generators: Vec<SignedPerm>,
    inverses: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
    classes: OnceLock<ConjugacyClasses>,
}

impl Group {
    /// Breadth-first closure of `generators`, failing once more than
    /// `max_order` elements have been found.
    pub fn close(degree: usize, generators: &[SignedPerm], max_order: usize) -> Result<Group> {
        if degree == 0 {
            return Err(Error::input("degree must be positive"));
        }
        if degree > MAX_DEGREE {
            return Err(Error::resource("degree", MAX_DEGREE, degree));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let id = SignedPerm::identity(degree);
        let mut seen: HashMap<SignedPerm, ()> = HashMap::new();
        seen.insert(id, ());
        let mut found = vec![id];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x * *g;
                if seen.insert(y, ()).is_none() {
                    if found.len() >= max_order {
                        return Err(Error::resource("group order", max_order, found.len() + 1));
                    }
                    found.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(Group::from_closed(degree, found, generators.to_vec()))
    }

    fn from_closed(degree: usize, mut elements: Vec<SignedPerm>, generators: Vec<SignedPerm>) -> Group {
        elements.sort();
        let index: HashMap<SignedPerm, usize> = elements.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let inverses = elements.iter().map(|x| index[&x.inverse()]).collect();
        Group {
            degree,
            elements,
            index,
            generators,
            inverses,
            table: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[SignedPerm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.generators
    }

    pub fn index_of(&self, x: &SignedPerm) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &SignedPerm) -> bool {
        self.index.contains_key(x)
    }

    /// Position of the identity, which is always the least element.
    pub fn identity(&self) -> usize {
        0
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of the product `elements[i] * elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.order();
        match self.table.get_or_init(|| self.build_table()) {
            Some(t) => t[i * n + j] as usize,
            None => self.index[&(self.elements[i] * self.elements[j])],
        }
    }

    /// `x y x⁻¹`.
    pub fn conjugate(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.inv(x))
    }

    fn build_table(&self) -> Option<Vec<u32>> {
        let n = self.order();
        if n > TABLE_LIMIT {
            return None;
        }
        let mut t = Vec::with_capacity(n * n);
        for a in &self.elements {
            for b in &self.elements {
                t.push(self.index[&(*a * *b)] as u32);
            }
        }
        Some(t)
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| ConjugacyClasses::compute(self))
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), (0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted(self.order(), vec![0])
    }
}

/// Partition of a group into conjugacy classes, ordered by least element.
#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl ConjugacyClasses {
    fn compute(g: &Group) -> Self {
        let gens = g.generator_indices();
        let mut class_of = vec![usize::MAX; g.order()];
        let mut classes = Vec::new();
        for start in 0..g.order() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let y = members[k];
                k += 1;
                for &s in &gens {
                    let z = g.conjugate(s, y);
                    if class_of[z] == usize::MAX {
                        class_of[z] = id;
                        members.push(z);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &[usize] {
        &self.classes[k]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Least element of class `k`.
    pub fn representative(&self, k: usize) -> usize {
        self.classes[k][0]
    }
}

/// A subgroup stored as sorted positions into its parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    fn from_sorted(parent_order: usize, members: Vec<usize>) -> Self {
        let mut mask = vec![false; parent_order];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { members, mask }
    }

    /// Validates that `positions` form a subgroup of `g`.
    pub fn new(g: &Group, positions: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut members: Vec<usize> = positions.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&m| m >= g.order()) {
            return Err(Error::NotSubgroup(format!("position {bad} is outside the group")));
        }
        let s = Subgroup::from_sorted(g.order(), members);
        s.check(g)?;
        Ok(s)
    }

    /// The elements of `g` satisfying `pred`, checked to be a subgroup.
    pub fn filter(g: &Group, pred: impl Fn(&SignedPerm) -> bool) -> Result<Subgroup> {
        Subgroup::new(
            g,
            g.elements()
                .iter()
                .enumerate()
                .filter(|(_, x)| pred(x))
                .map(|(i, _)| i),
        )
    }

    /// Subgroup generated by the given positions.
    pub fn generated(g: &Group, gens: &[usize]) -> Subgroup {
        let mut mask = vec![false; g.order()];
        mask[g.identity()] = true;
        let mut members = vec![g.identity()];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &s in gens {
                let y = g.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Subgroup { members, mask }
    }

    /// A finite subset is a subgroup iff it contains the identity and the
    /// closure of a greedily chosen generating set never leaves it.
    fn check(&self, g: &Group) -> Result<()> {
        if !self.contains(g.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let mut reached = vec![false; g.order()];
        reached[g.identity()] = true;
        let mut reached_list = vec![g.identity()];
        let mut gens: Vec<usize> = Vec::new();
        for &s in &self.members {
            if reached[s] {
                continue;
            }
            gens.push(s);
            // the closure of gens is the new reachable set; restart from scratch
            reached_list.clear();
            reached.iter_mut().for_each(|r| *r = false);
            reached[g.identity()] = true;
            reached_list.push(g.identity());
            let mut k = 0;
            while k < reached_list.len() {
                let x = reached_list[k];
                k += 1;
                for &t in &gens {
                    let y = g.mul(x, t);
                    if !self.contains(y) {
                        return Err(Error::NotSubgroup(format!(
                            "product {} is outside the subset",
                            g.element(y)
                        )));
                    }
                    if !reached[y] {
                        reached[y] = true;
                        reached_list.push(y);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.get(i).copied().unwrap_or(false)
    }

    /// `[G : self]`; panics if the orders do not divide.
    pub fn index_in(&self, g: &Group) -> usize {
        assert_eq!(g.order() % self.order(), 0);
        g.order() / self.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains(m))
            .collect();
        Subgroup::from_sorted(self.mask.len(), members)
    }

    /// `x S x⁻¹`.
    pub fn conjugated(&self, g: &Group, x: usize) -> Subgroup {
        let mut members: Vec<usize> = self.members.iter().map(|&s| g.conjugate(x, s)).collect();
        members.sort_unstable();
        Subgroup::from_sorted(g.order(), members)
    }

    pub fn is_normal_in(&self, g: &Group) -> bool {
        g.generator_indices()
            .into_iter()
            .all(|x| self.members.iter().all(|&s| self.contains(g.conjugate(x, s))))
    }

    /// `self ∪ x·self`, assuming it is a subgroup (checked).
    pub fn extended_by(&self, g: &Group, x: usize) -> Result<Subgroup> {
        let extra = self.members.iter().map(|&s| g.mul(x, s));
        Subgroup::new(g, self.members.iter().copied().chain(extra))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::{Bits, Perm};

    pub(crate) fn b2() -> Group {
        let gens = [
            SignedPerm::from_sign(Bits::parse("10").unwrap()),
            SignedPerm::from_sign(Bits::parse("01").unwrap()),
            SignedPerm::from_perm(Perm::from_one_line(&[2, 1]).unwrap()),
        ];
        Group::close(2, &gens, DEFAULT_MAX_ORDER).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_group() {
        let g = Group::close(3, &[], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.element(0).is_identity());
        assert_eq!(g.conjugacy_classes().len(), 1);
    }

    #[test]
    fn b2_has_order_eight_and_five_classes() {
        let g = b2();
        assert_eq!(g.order(), 8);
        assert_eq!(g.conjugacy_classes().len(), 5);
        // brute force conjugation classes
        let mut seen = [false; 8];
        let mut count = 0;
        for x in 0..8 {
            if seen[x] {
                continue;
            }
            count += 1;
            for y in 0..8 {
                seen[g.conjugate(y, x)] = true;
            }
        }
        assert_eq!(count, 5);
    }

    #[test]
    fn elements_are_sorted_and_closed() {
        let g = b2();
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                assert!(g.contains(&(*a * *b)));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            SignedPerm::from_sign(Bits::parse("100").unwrap()),
            SignedPerm::from_perm(Perm::from_one_line(&[2, 3, 1]).unwrap()),
            SignedPerm::from_perm(Perm::from_one_line(&[2, 1, 3]).unwrap()),
        ];
        let err = Group::close(3, &gens, 20).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert_eq!(Group::close(3, &gens, 48).unwrap().order(), 48);
    }

    #[test]
    fn degree_over_limit_is_resource_error() {
        assert_eq!(Group::close(21, &[], 10).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn non_subgroup_is_rejected() {
        let g = b2();
        assert!(matches!(Subgroup::new(&g, [0, 1, 2]), Err(Error::NotSubgroup(_))));
        assert!(matches!(Subgroup::new(&g, [1]), Err(Error::NotSubgroup(_))));
        let s = Subgroup::filter(&g, |x| x.perm().is_identity()).unwrap();
        assert_eq!(s.order(), 4);
        assert!(s.is_normal_in(&g));
    }

    #[test]
    fn generated_matches_filter() {
        let g = b2();
        let iota = g.index_of(&SignedPerm::iota(2)).unwrap();
        let s = Subgroup::generated(&g, &[iota]);
        assert_eq!(s.members(), &[0, iota]);
        assert!(s.is_normal_in(&g));
    }
}
