//! CM-type combinatorics on a signed-permutation group.
//!
//! A CM-type is a bit vector `f`: `Φ_f` picks `ι^{f(i)} φ_i` from each pair
//! of conjugate embeddings. Embedding `(j, ε)` of `K` is `ι^ε φ_j`, and a group
//! element `τ = (g, σ)` restricts to the embedding `(σ(1), g(σ(1)))`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signed_perm::{Bits, CosetDecomposition, Group, Perm, SignedPerm, Subgroup};

/// Subsets of positions share the bit-vector representation.
pub type Subset = Bits;

/// A CM-type `Φ_f`, stored as its bit vector `f`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CmType(pub Bits);

impl CmType {
    pub fn base(degree: usize) -> Self {
        CmType(Bits::zeros(degree))
    }

    /// `f_I`, the indicator vector of `I`.
    pub fn indicator(subset: Subset) -> Self {
        CmType(subset)
    }

    pub fn bits(self) -> Bits {
        self.0
    }

    pub fn conjugate(self) -> Self {
        CmType(self.0.xor(Bits::ones(self.0.len())))
    }

    /// The `N` embeddings in `Φ_f` as `(position, ε)` pairs, 0-based.
    pub fn embeddings(self) -> Vec<(usize, bool)> {
        (0..self.0.len()).map(|i| (i, self.0.get(i))).collect()
    }
}

impl fmt::Display for CmType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// One orbit of the star action on CM-types.
#[derive(Debug, Clone)]
pub struct OrbitReport {
    pub representative: CmType,
    /// `H*(Φ_f)` for the representative.
    pub stabilizer: Subgroup,
    /// The reflex degree `[G : H*(Φ_f)]`.
    pub orbit_size: usize,
    pub members: Vec<CmType>,
}

/// Subgroups and coset data attached to a subset `I` and a CM-type `Φ_f`.
#[derive(Debug, Clone)]
pub struct SubsetData {
    pub subset: Subset,
    pub cm_type: CmType,
    pub h_i: Subgroup,
    pub h0_i: Subgroup,
    /// `S_{Φ(I)}`, sorted positions.
    pub s_phi_i: Vec<usize>,
    /// Left-coset representatives of `S_{Φ(I)} / H(I)`.
    pub phi_i: Vec<usize>,
    /// Right-coset representatives of `H*(Φ) \ S_{Φ(I)}`.
    pub phi_i_star: Vec<usize>,
}

/// The dual CM-type `Φ*` of `(K, Φ)`.
#[derive(Debug, Clone)]
pub struct DualType {
    /// `S_Φ`, the elements whose restriction to `K` lies in `Φ`.
    pub s_phi: Vec<usize>,
    /// Right-coset representatives `ψ_k` of `H*(Φ) \ S_Φ`; `Φ*` is `{ψ_k⁻¹}`.
    pub reps: Vec<usize>,
}

/// A validated group with its CM structure.
#[derive(Debug)]
pub struct CmGroup {
    group: Group,
    iota: usize,
    h0: Subgroup,
    c_kernel: Subgroup,
    h: Subgroup,
    orbits: OnceLock<Vec<OrbitReport>>,
    jodd: OnceLock<Vec<Subset>>,
}

impl CmGroup {
    pub fn validate(group: Group) -> Result<CmGroup> {
        let n = group.degree();
        let iota = group
            .index_of(&SignedPerm::iota(n))
            .ok_or_else(|| Error::InvalidCmGroup("complex conjugation (1…1, id) is missing".into()))?;
        for x in group.elements() {
            if *x * SignedPerm::iota(n) != SignedPerm::iota(n) * *x {
                return Err(Error::InvalidCmGroup(format!("ι does not commute with {x}")));
            }
        }
        if !projection_is_transitive(&group) {
            return Err(Error::InvalidCmGroup(
                "projection to permutations is not transitive".into(),
            ));
        }
        let h0 = Subgroup::filter(&group, |x| x.perm().apply(0) == 0)?;
        let c_kernel = Subgroup::filter(&group, |x| x.perm().is_identity())?;
        let h = Subgroup::filter(&group, |x| x.perm().apply(0) == 0 && !x.sign().get(0))?;

        let core = CosetDecomposition::left(&group, &h0)?
            .reps()
            .iter()
            .fold(h0.clone(), |acc, &x| acc.intersection(&h0.conjugated(&group, x)));
        if core != c_kernel {
            return Err(Error::Model("C differs from the core of H₀".into()));
        }
        if h0.order() != 2 * h.order() || h.contains(iota) {
            return Err(Error::Model("H is not of index 2 in H₀ with ι ∉ H".into()));
        }
        Ok(CmGroup {
            group,
            iota,
            h0,
            c_kernel,
            h,
            orbits: OnceLock::new(),
            jodd: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn iota(&self) -> usize {
        self.iota
    }

    pub fn h0(&self) -> &Subgroup {
        &self.h0
    }

    pub fn c_kernel(&self) -> &Subgroup {
        &self.c_kernel
    }

    pub fn h(&self) -> &Subgroup {
        &self.h
    }

    pub fn element(&self, i: usize) -> &SignedPerm {
        self.group.element(i)
    }

    /// Distinct permutation parts, i.e. the image `G₀` of the projection, sorted.
    pub fn projection_image(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = self.group.elements().iter().map(|x| *x.perm()).collect();
        out.dedup();
        out
    }

    /// `r_{Φ_f}(τ) = r_{Φ₀}(τ) + τ·f − f`, where `r_{Φ₀}(τ)` is the sign part.
    pub fn cocycle(&self, f: CmType, tau: &SignedPerm) -> Bits {
        tau.sign().xor(f.0.permuted(tau.perm())).xor(f.0)
    }

    /// `τ * f = r_{Φ₀}(τ) + τ·f`.
    pub fn star(&self, tau: &SignedPerm, f: CmType) -> CmType {
        CmType(tau.sign().xor(f.0.permuted(tau.perm())))
    }

    /// `H*(Φ_f)`: elements whose cocycle vanishes.
    pub fn reflex_subgroup(&self, f: CmType) -> Subgroup {
        Subgroup::filter(&self.group, |x| self.cocycle(f, x).is_zero()).expect("cocycle kernel is a subgroup")
    }

    /// `H*₀(Φ_f) = H*(Φ_f) ∪ ι H*(Φ_f)`.
    pub fn reflex_subgroup0(&self, f: CmType) -> Subgroup {
        self.reflex_subgroup(f)
            .extended_by(&self.group, self.iota)
            .expect("ι is central")
    }

    /// Orbits of the star action, ordered by least member.
    pub fn cm_orbits(&self) -> &[OrbitReport] {
        self.orbits.get_or_init(|| self.compute_orbits())
    }

    fn compute_orbits(&self) -> Vec<OrbitReport> {
        let n = self.degree();
        let gens = self.group.generators();
        let mut seen = vec![false; 1usize << n];
        let mut out = Vec::new();
        for w in 0..(1u32 << n) {
            if seen[w as usize] {
                continue;
            }
            let f = CmType(Bits::new(w, n));
            let mut members = vec![f];
            seen[w as usize] = true;
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                k += 1;
                for g in gens {
                    let y = self.star(g, x);
                    if !seen[y.0.word() as usize] {
                        seen[y.0.word() as usize] = true;
                        members.push(y);
                    }
                }
            }
            members.sort();
            let stabilizer =
                Subgroup::filter(&self.group, |x| self.star(x, f) == f).expect("stabilizers are subgroups");
            out.push(OrbitReport {
                representative: f,
                stabilizer,
                orbit_size: members.len(),
                members,
            });
        }
        out
    }

    /// Orbit representatives `Λ`.
    pub fn lambda(&self) -> Vec<CmType> {
        self.cm_orbits().iter().map(|o| o.representative).collect()
    }

    /// Is `τ|_K ∈ Φ_f`?
    pub fn in_type(&self, f: CmType, tau: &SignedPerm) -> bool {
        let j = tau.perm().apply(0);
        tau.sign().get(j) == f.0.get(j)
    }

    /// `S_{Φ_f}` as sorted positions.
    pub fn s_phi(&self, f: CmType) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.in_type(f, self.element(i)))
            .collect()
    }

    /// Left-coset representatives of `S_Φ / H`, one per embedding in `Φ`.
    pub fn type_reps(&self, f: CmType) -> Vec<usize> {
        let cosets = CosetDecomposition::left(&self.group, &self.h).expect("H is a subgroup");
        cosets
            .reps()
            .iter()
            .copied()
            .filter(|&r| self.in_type(f, self.element(r)))
            .collect()
    }

    pub fn dual_type(&self, f: CmType) -> DualType {
        let s_phi = self.s_phi(f);
        let hstar = self.reflex_subgroup(f);
        let cosets = CosetDecomposition::right(&self.group, &hstar).expect("H* is a subgroup");
        let reps = cosets
            .reps()
            .iter()
            .copied()
            .filter(|&r| self.in_type(f, self.element(r)))
            .collect();
        DualType { s_phi, reps }
    }

    /// `H(I)`: stabilizers of `I` with even cocycle sum over `I`, using `Φ_f`.
    pub fn h_of_subset_with(&self, f: CmType, subset: Subset) -> Subgroup {
        Subgroup::filter(&self.group, |x| {
            subset.permuted(x.perm()) == subset && !self.cocycle(f, x).parity_on(subset)
        })
        .expect("H(I) is a subgroup")
    }

    pub fn h_of_subset(&self, subset: Subset) -> Subgroup {
        self.h_of_subset_with(CmType::base(self.degree()), subset)
    }

    /// `H₀(I)`: setwise stabilizer of `I`.
    pub fn h0_of_subset(&self, subset: Subset) -> Subgroup {
        Subgroup::filter(&self.group, |x| subset.permuted(x.perm()) == subset)
            .expect("setwise stabilizers are subgroups")
    }

    /// `Σ_{i∈I} r_{Φ_f}(τ)(i)` in `Z/2`.
    pub fn subset_sign(&self, f: CmType, subset: Subset, tau: &SignedPerm) -> bool {
        self.cocycle(f, tau).parity_on(subset)
    }

    pub fn subset_data(&self, f: CmType, subset: Subset) -> SubsetData {
        let g = &self.group;
        let h_i = self.h_of_subset(subset);
        let h0_i = self.h0_of_subset(subset);
        let s_phi_i: Vec<usize> = (0..g.order())
            .filter(|&i| !self.subset_sign(f, subset, g.element(g.inv(i))))
            .collect();
        let mut in_s = vec![false; g.order()];
        for &i in &s_phi_i {
            in_s[i] = true;
        }
        let left = CosetDecomposition::left(g, &h_i).expect("subgroup");
        let phi_i = left.reps().iter().copied().filter(|&r| in_s[r]).collect();
        let hstar = self.reflex_subgroup(f);
        let right = CosetDecomposition::right(g, &hstar).expect("subgroup");
        let phi_i_star = right.reps().iter().copied().filter(|&r| in_s[r]).collect();
        SubsetData {
            subset,
            cm_type: f,
            h_i,
            h0_i,
            s_phi_i,
            phi_i,
            phi_i_star,
        }
    }

    /// Subset data computed with the base type `Φ₀`.
    pub fn subset_subgroups(&self, subset: Subset) -> SubsetData {
        self.subset_data(CmType::base(self.degree()), subset)
    }

    /// Orbit representatives (numerically least) of the projection action on
    /// odd-size subsets.
    pub fn jodd_representatives(&self) -> &[Subset] {
        self.jodd.get_or_init(|| {
            let n = self.degree();
            let perms: Vec<Perm> = self.group.generators().iter().map(|g| *g.perm()).collect();
            let mut seen = vec![false; 1usize << n];
            let mut reps = Vec::new();
            for w in 0..(1u32 << n) {
                if w.count_ones() % 2 == 0 || seen[w as usize] {
                    continue;
                }
                reps.push(Bits::new(w, n));
                let mut queue = VecDeque::from([Bits::new(w, n)]);
                seen[w as usize] = true;
                while let Some(s) = queue.pop_front() {
                    for p in &perms {
                        let t = s.permuted(p);
                        if !seen[t.word() as usize] {
                            seen[t.word() as usize] = true;
                            queue.push_back(t);
                        }
                    }
                }
            }
            reps
        })
    }
}

fn projection_is_transitive(g: &Group) -> bool {
    let n = g.degree();
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for x in g.generators() {
            let j = x.perm().apply(i);
            if !reached[j] {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Orbit sizes of the star action against `2^N`.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitSumReport {
    pub degree: usize,
    pub orbits: Vec<OrbitSummary>,
    pub total: usize,
    pub expected: usize,
    /// Each stabilizer equals `H*(Φ)` and has index equal to the orbit size.
    pub stabilizers_match: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSummary {
    pub representative: String,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

pub fn verify_orbit_sum(cm: &CmGroup) -> OrbitSumReport {
    let orbits: Vec<OrbitSummary> = cm
        .cm_orbits()
        .iter()
        .map(|o| OrbitSummary {
            representative: o.representative.to_string(),
            orbit_size: o.orbit_size,
            stabilizer_order: o.stabilizer.order(),
        })
        .collect();
    let stabilizers_match = cm.cm_orbits().iter().all(|o| {
        o.stabilizer == cm.reflex_subgroup(o.representative)
            && o.stabilizer.order() * o.orbit_size == cm.order()
    });
    let total = orbits.iter().map(|o| o.orbit_size).sum();
    let expected = 1usize << cm.degree();
    OrbitSumReport {
        degree: cm.degree(),
        orbits,
        total,
        expected,
        stabilizers_match,
        passed: total == expected && stabilizers_match,
    }
}

/// Exhaustive checks of the cocycle `r_Φ` and the star action.
#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    /// `r_f(στ) = r_f(σ) + σ·r_f(τ)` for all `f, σ, τ`.
    pub cocycle_law: bool,
    /// `(στ)*f = σ*(τ*f)` and `τ*f = f + r_f(τ)`.
    pub star_is_action: bool,
    /// `r_f = r_{f'}` as functions on `G` exactly when `f' ∈ {f, f + 𝟙}`.
    pub equivalence: bool,
    /// On the kernel `C`, `r_f` does not depend on `f` and is injective.
    pub kernel_embedding: bool,
    pub triples_checked: usize,
    pub passed: bool,
}

pub fn verify_cocycle_suite(cm: &CmGroup) -> CocycleReport {
    let g = cm.group();
    let n = cm.degree();
    let types: Vec<CmType> = (0..1u32 << n).map(|w| CmType(Bits::new(w, n))).collect();
    let mut cocycle_law = true;
    let mut star_is_action = true;
    let mut triples = 0;
    for &f in &types {
        let r: Vec<Bits> = g.elements().iter().map(|x| cm.cocycle(f, x)).collect();
        for (s, sigma) in g.elements().iter().enumerate() {
            if cm.star(sigma, f).0 != f.0.xor(r[s]) {
                star_is_action = false;
            }
            for (t, tau) in g.elements().iter().enumerate() {
                let st = g.mul(s, t);
                triples += 1;
                if r[st] != r[s].xor(r[t].permuted(sigma.perm())) {
                    cocycle_law = false;
                }
                if cm.star(g.element(st), f) != cm.star(sigma, cm.star(tau, f)) {
                    star_is_action = false;
                }
            }
        }
    }

    let signature =
        |f: CmType| -> Vec<u32> { g.elements().iter().map(|x| cm.cocycle(f, x).word()).collect() };
    let signatures: Vec<Vec<u32>> = types.iter().map(|&f| signature(f)).collect();
    let all_ones = Bits::ones(n).word();
    let equivalence = (0..types.len()).all(|a| {
        (0..types.len()).all(|b| {
            let same = signatures[a] == signatures[b];
            let related = a as u32 == b as u32 || (a as u32 ^ b as u32) == all_ones;
            same == related
        })
    });

    let kernel = cm.c_kernel().members();
    let kernel_embedding = {
        let images: Vec<Bits> = kernel
            .iter()
            .map(|&a| cm.cocycle(types[0], g.element(a)))
            .collect();
        let independent = types.iter().all(|&f| {
            kernel
                .iter()
                .zip(&images)
                .all(|(&a, img)| cm.cocycle(f, g.element(a)) == *img)
        });
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        let injective = sorted.len() == images.len();
        let identity_only_zero = kernel
            .iter()
            .zip(&images)
            .all(|(&a, img)| img.is_zero() == (a == g.identity()));
        independent && injective && identity_only_zero
    };

    CocycleReport {
        cocycle_law,
        star_is_action,
        equivalence,
        kernel_embedding,
        triples_checked: triples,
        passed: cocycle_law && star_is_action && equivalence && kernel_embedding,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::DEFAULT_MAX_ORDER;

    fn sp(signs: &str, perm: &[usize]) -> SignedPerm {
        SignedPerm::new(Bits::parse(signs).unwrap(), Perm::from_one_line(perm).unwrap()).unwrap()
    }

    fn hyperoctahedral(n: usize) -> CmGroup {
        let mut gens = vec![SignedPerm::from_sign(Bits::from_positions([0], n))];
        if n > 1 {
            let mut cyc: Vec<usize> = (2..=n).collect();
            cyc.push(1);
            gens.push(SignedPerm::from_perm(Perm::from_one_line(&cyc).unwrap()));
            let mut sw: Vec<usize> = (1..=n).collect();
            sw.swap(0, 1);
            gens.push(SignedPerm::from_perm(Perm::from_one_line(&sw).unwrap()));
        }
        CmGroup::validate(Group::close(n, &gens, DEFAULT_MAX_ORDER).unwrap()).unwrap()
    }

    fn cm_type(s: &str) -> CmType {
        CmType(Bits::parse(s).unwrap())
    }

    #[test]
    fn imaginary_quadratic_model() {
        let cm = hyperoctahedral(1);
        assert_eq!(cm.order(), 2);
        assert_eq!(cm.c_kernel().order(), 2);
        assert_eq!(cm.h().order(), 1);
        let orbits = cm.cm_orbits();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].orbit_size, 2);
        assert_eq!(orbits[0].stabilizer.order(), 1);
        assert_eq!(cm.jodd_representatives(), &[Bits::parse("1").unwrap()]);
        let d = cm.dual_type(cm_type("0"));
        assert_eq!(d.reps, vec![0]);
    }

    #[test]
    fn b2_structure() {
        let cm = hyperoctahedral(2);
        assert_eq!(cm.c_kernel().order(), 4);
        assert_eq!(cm.h0().order(), 4);
        let orbits = cm.cm_orbits();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].orbit_size, 4);
        assert_eq!(orbits[0].stabilizer.order(), 2);
        let f = cm_type("00");
        let d = cm.dual_type(f);
        assert_eq!(d.s_phi.len(), 2 * cm.h().order());
        assert_eq!(d.reps.len(), d.s_phi.len() / cm.reflex_subgroup(f).order());
    }

    #[test]
    fn missing_iota_is_rejected() {
        let g = Group::close(2, &[sp("00", &[2, 1])], DEFAULT_MAX_ORDER).unwrap();
        assert!(matches!(CmGroup::validate(g), Err(Error::InvalidCmGroup(_))));
        let g = Group::close(2, &[sp("11", &[1, 2])], DEFAULT_MAX_ORDER).unwrap();
        assert!(matches!(CmGroup::validate(g), Err(Error::InvalidCmGroup(_))));
    }

    #[test]
    fn cocycle_basics() {
        let cm = hyperoctahedral(3);
        let iota = *cm.element(cm.iota());
        let f0 = CmType::base(3);
        assert_eq!(cm.cocycle(f0, &iota), Bits::ones(3));
        for w in 0..8 {
            let f = CmType(Bits::new(w, 3));
            assert!(cm.cocycle(f, &SignedPerm::identity(3)).is_zero());
            assert_eq!(cm.star(&iota, f), f.conjugate());
        }
    }

    #[test]
    fn b3_orbit_stabilizer_and_jodd() {
        let cm = hyperoctahedral(3);
        for w in 0..8 {
            let f = CmType(Bits::new(w, 3));
            let orbit = cm.cm_orbits().iter().find(|o| o.members.contains(&f)).unwrap();
            assert_eq!(cm.reflex_subgroup(f).order() * orbit.orbit_size, 48);
        }
        let jodd: Vec<String> = cm.jodd_representatives().iter().map(|s| s.to_string()).collect();
        assert_eq!(jodd, vec!["100", "111"]);
    }

    #[test]
    fn subset_one_gives_h() {
        let cm = hyperoctahedral(3);
        let data = cm.subset_subgroups(Bits::parse("100").unwrap());
        assert_eq!(&data.h_i, cm.h());
        assert!(!data.h_i.contains(cm.iota()));
        assert_eq!(data.h0_i.order(), 2 * data.h_i.order());
    }

    #[test]
    fn structure_suites_small() {
        for n in 1..=3 {
            let cm = hyperoctahedral(n);
            let o = verify_orbit_sum(&cm);
            assert!(o.passed, "{o:?}");
            let c = verify_cocycle_suite(&cm);
            assert!(c.passed, "{c:?}");
            assert_eq!(c.triples_checked, (1 << n) * cm.order() * cm.order());
        }
    }
}
