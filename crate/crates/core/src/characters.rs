//! Exact class functions, induction from index-2 sign characters, and the
//! character identity between a CM-field's subfields `K(I)` and its reflexes.

use std::ops::{Add, Sub};

use serde::Serialize;

use crate::cm_structure::CmGroup;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, int, Q};
use crate::signed_perm::{Bits, Group, SignedPerm, Subgroup};
use num_traits::{One, Zero};

/// A rational function on the conjugacy classes of a group.
#[derive(Debug, Clone)]
pub struct ClassFunction<'g> {
    group: &'g Group,
    values: Vec<Q>,
}

impl PartialEq for ClassFunction<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.values == other.values
    }
}

/// One row of an exported character table.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClassValue {
    pub representative: String,
    pub size: usize,
    pub value: String,
}

impl<'g> ClassFunction<'g> {
    /// Values listed per class, in class order.
    pub fn new(group: &'g Group, values: Vec<Q>) -> Result<Self> {
        if values.len() != group.conjugacy_classes().len() {
            return Err(Error::input(format!(
                "expected {} class values, got {}",
                group.conjugacy_classes().len(),
                values.len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    /// Evaluates `f` at each class representative.
    pub fn from_representatives(group: &'g Group, f: impl Fn(usize) -> Q) -> Self {
        let classes = group.conjugacy_classes();
        let values = (0..classes.len()).map(|k| f(classes.representative(k))).collect();
        ClassFunction { group, values }
    }

    /// Builds from a function on elements, checking it is a class function.
    pub fn from_elements(group: &'g Group, f: impl Fn(usize) -> Q) -> Result<Self> {
        let classes = group.conjugacy_classes();
        let mut values = Vec::with_capacity(classes.len());
        for class in classes.classes() {
            let v = f(class[0]);
            if let Some(&x) = class.iter().find(|&&x| f(x) != v) {
                return Err(Error::input(format!(
                    "not constant on the class of {}: differs at {}",
                    group.element(class[0]),
                    group.element(x)
                )));
            }
            values.push(v);
        }
        Ok(ClassFunction { group, values })
    }

    pub fn zero(group: &'g Group) -> Self {
        Self::constant(group, Q::zero())
    }

    pub fn trivial(group: &'g Group) -> Self {
        Self::constant(group, Q::one())
    }

    fn constant(group: &'g Group, v: Q) -> Self {
        ClassFunction {
            group,
            values: vec![v; group.conjugacy_classes().len()],
        }
    }

    /// Character of the regular representation.
    pub fn regular(group: &'g Group) -> Self {
        Self::from_representatives(group, |x| {
            if x == group.identity() {
                int(group.order() as i64)
            } else {
                Q::zero()
            }
        })
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn values(&self) -> &[Q] {
        &self.values
    }

    pub fn value_at(&self, element: usize) -> &Q {
        &self.values[self.group.conjugacy_classes().class_of(element)]
    }

    pub fn degree(&self) -> &Q {
        self.value_at(self.group.identity())
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    pub fn scaled(&self, k: &Q) -> Self {
        ClassFunction {
            group: self.group,
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.group, other.group) {
            Ok(())
        } else {
            Err(Error::input("class functions live on different groups"))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassFunction {
            group: self.group,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(ClassFunction {
            group: self.group,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `⟨a, b⟩ = |G|⁻¹ Σ_g a(g) b(g⁻¹)`.
    pub fn inner_product(&self, other: &Self) -> Result<Q> {
        self.check_same(other)?;
        let g = self.group;
        let classes = g.conjugacy_classes();
        let mut sum = Q::zero();
        for k in 0..classes.len() {
            let rep = classes.representative(k);
            let size = int(classes.class(k).len() as i64);
            sum += size * &self.values[k] * other.value_at(g.inv(rep));
        }
        Ok(sum / int(g.order() as i64))
    }

    /// Restriction to a group whose elements all lie in `self`'s group.
    pub fn restrict<'h>(&self, sub: &'h Group) -> Result<ClassFunction<'h>> {
        let mut values = Vec::new();
        let classes = sub.conjugacy_classes();
        for k in 0..classes.len() {
            let x = sub.element(classes.representative(k));
            let pos = self
                .group
                .index_of(x)
                .ok_or_else(|| Error::input(format!("{x} is not an element of the ambient group")))?;
            values.push(self.values[self.group.conjugacy_classes().class_of(pos)].clone());
        }
        Ok(ClassFunction { group: sub, values })
    }

    pub fn to_table(&self) -> Vec<ClassValue> {
        let classes = self.group.conjugacy_classes();
        (0..classes.len())
            .map(|k| ClassValue {
                representative: self.group.element(classes.representative(k)).to_string(),
                size: classes.class(k).len(),
                value: fmt_q(&self.values[k]),
            })
            .collect()
    }
}

impl<'g> Add for &ClassFunction<'g> {
    type Output = ClassFunction<'g>;
    fn add(self, rhs: Self) -> ClassFunction<'g> {
        self.try_add(rhs).expect("same group")
    }
}

impl<'g> Sub for &ClassFunction<'g> {
    type Output = ClassFunction<'g>;
    fn sub(self, rhs: Self) -> ClassFunction<'g> {
        self.try_sub(rhs).expect("same group")
    }
}

/// An index-2 subgroup `kernel` of `overgroup`, defining the character
/// `+1` on `kernel` and `-1` on the other coset.
#[derive(Debug, Clone)]
pub struct SignCharacterSpec {
    pub overgroup: Subgroup,
    pub kernel: Subgroup,
}

impl SignCharacterSpec {
    pub fn new(overgroup: Subgroup, kernel: Subgroup) -> Result<Self> {
        if !kernel.is_subgroup_of(&overgroup) {
            return Err(Error::input("kernel is not contained in the overgroup"));
        }
        if overgroup.order() != 2 * kernel.order() {
            return Err(Error::input(format!(
                "kernel has index {}/{} in the overgroup, not 2",
                overgroup.order(),
                kernel.order()
            )));
        }
        Ok(SignCharacterSpec { overgroup, kernel })
    }

    /// Value at an element of the overgroup; `None` outside it.
    pub fn value(&self, element: usize) -> Option<i64> {
        if self.kernel.contains(element) {
            Some(1)
        } else if self.overgroup.contains(element) {
            Some(-1)
        } else {
            None
        }
    }

    pub fn induce<'g>(&self, g: &'g Group) -> ClassFunction<'g> {
        induce(g, &self.overgroup, |x| {
            int(self.value(x).expect("element of the overgroup"))
        })
    }
}

/// Frobenius induction: `Ind χ(g) = |G| / (|S| |C_g|) · Σ_{s ∈ S ∩ C_g} χ(s)`.
pub fn induce<'g>(g: &'g Group, s: &Subgroup, chi: impl Fn(usize) -> Q) -> ClassFunction<'g> {
    let classes = g.conjugacy_classes();
    let mut sums = vec![Q::zero(); classes.len()];
    for &x in s.members() {
        sums[classes.class_of(x)] += chi(x);
    }
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, v)| v * int(g.order() as i64) / int((s.order() * classes.class(k).len()) as i64))
        .collect();
    ClassFunction { group: g, values }
}

/// `⟨Ind_S χ, ψ⟩_G == ⟨χ, Res_S ψ⟩_S`.
pub fn frobenius_holds(g: &Group, s: &Subgroup, chi: impl Fn(usize) -> Q, psi: &ClassFunction) -> bool {
    let lhs = induce(g, s, &chi).inner_product(psi).expect("same group");
    let mut rhs = Q::zero();
    for &x in s.members() {
        rhs += chi(x) * psi.value_at(g.inv(x));
    }
    lhs == rhs / int(s.order() as i64)
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterIdentityReport {
    pub expected_degree: String,
    pub lhs_degree: String,
    pub rhs_degree: String,
    pub lhs: Vec<ClassValue>,
    pub rhs: Vec<ClassValue>,
    pub equal: bool,
    pub integral: bool,
    pub frobenius: bool,
    pub lhs_norm: String,
    pub lhs_rhs_product: String,
    pub passed: bool,
}

/// Left side: `Σ_{f ∈ Λ} Ind from H*₀(Φ_f)` of the sign character with kernel `H*(Φ_f)`.
pub fn reflex_side(cm: &CmGroup) -> Vec<SignCharacterSpec> {
    cm.lambda()
        .into_iter()
        .map(|f| SignCharacterSpec::new(cm.reflex_subgroup0(f), cm.reflex_subgroup(f)).expect("ι ∉ H*(Φ)"))
        .collect()
}

/// Right side: `Σ_{I ∈ Jodd} Ind from H₀(I)` of the sign character with kernel `H(I)`.
pub fn subset_side(cm: &CmGroup) -> Vec<SignCharacterSpec> {
    cm.jodd_representatives()
        .iter()
        .map(|&s| {
            SignCharacterSpec::new(cm.h0_of_subset(s), cm.h_of_subset(s))
                .expect("H(I) has index 2 in H₀(I) for odd I")
        })
        .collect()
}

fn sum_induced<'g>(g: &'g Group, specs: &[SignCharacterSpec]) -> (ClassFunction<'g>, Vec<ClassFunction<'g>>) {
    let terms: Vec<ClassFunction<'g>> = specs.iter().map(|s| s.induce(g)).collect();
    let total = terms.iter().fold(ClassFunction::zero(g), |acc, t| &acc + t);
    (total, terms)
}

pub fn verify_character_identity(cm: &CmGroup) -> CharacterIdentityReport {
    let g = cm.group();
    let lhs_specs = reflex_side(cm);
    let rhs_specs = subset_side(cm);
    let (lhs, lhs_terms) = sum_induced(g, &lhs_specs);
    let (rhs, rhs_terms) = sum_induced(g, &rhs_specs);
    let expected = crate::rational::pow2(cm.degree() as i32 - 1);
    let integral = lhs_terms.iter().chain(&rhs_terms).all(|t| t.is_integral());
    let frobenius = lhs_specs.iter().chain(&rhs_specs).all(|spec| {
        let chi = |x: usize| int(spec.value(x).expect("in overgroup"));
        frobenius_holds(g, &spec.overgroup, chi, &rhs)
    });
    let lhs_norm = lhs.inner_product(&lhs).expect("same group");
    let lhs_rhs = lhs.inner_product(&rhs).expect("same group");
    let degrees_ok = *lhs.degree() == expected && *rhs.degree() == expected;
    let equal = lhs == rhs;
    CharacterIdentityReport {
        expected_degree: fmt_q(&expected),
        lhs_degree: fmt_q(lhs.degree()),
        rhs_degree: fmt_q(rhs.degree()),
        lhs: lhs.to_table(),
        rhs: rhs.to_table(),
        equal,
        integral,
        frobenius,
        passed: degrees_ok && equal && integral && frobenius && lhs_norm == lhs_rhs,
        lhs_norm: fmt_q(&lhs_norm),
        lhs_rhs_product: fmt_q(&lhs_rhs),
    }
}

/// The ambient group `(Z/2)^N ⋊ G₀` of a CM group.
pub fn ambient_group(cm: &CmGroup, max_order: usize) -> Result<Group> {
    let n = cm.degree();
    let g0 = cm.projection_image();
    let order = g0.len().saturating_mul(1usize << n);
    if order > max_order {
        return Err(Error::resource("ambient group order", max_order, order));
    }
    let mut gens: Vec<SignedPerm> = (0..n)
        .map(|i| SignedPerm::from_sign(Bits::from_positions([i], n)))
        .collect();
    gens.extend(
        cm.group()
            .generators()
            .iter()
            .map(|x| SignedPerm::from_perm(*x.perm())),
    );
    Group::close(n, &gens, max_order)
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub ambient_order: usize,
    pub jodd: Vec<String>,
    pub equal: bool,
    /// `⟨χ_{I,id}, χ_{I,id}⟩` per `I`.
    pub norms: Vec<String>,
    pub irreducible: bool,
    /// Restriction of the induced sign character of `⟨𝟙⟩ × G₀` to `G`
    /// equals the reflex side of the character identity.
    pub mackey_reflex_side: bool,
    /// Restriction of each `χ_{I,id}` to `G` equals the induced sign
    /// character of `H₀(I)` with kernel `H(I)`.
    pub restriction_per_subset: bool,
    pub passed: bool,
}

/// Irreducible decomposition of `Ind` from `⟨𝟙⟩ × G₀` in the ambient group.
pub fn verify_decomposition_lemma(cm: &CmGroup, max_order: usize) -> Result<DecompositionReport> {
    let n = cm.degree();
    let a = ambient_group(cm, max_order)?;
    let all = Bits::ones(n);
    let diag = Subgroup::filter(&a, |x| x.sign().is_zero() || x.sign() == all)?;
    let lhs = induce(&a, &diag, |x| {
        if a.element(x).sign().is_zero() {
            int(1)
        } else {
            int(-1)
        }
    });
    let mut rhs = ClassFunction::zero(&a);
    let mut norms = Vec::new();
    let mut irreducible = true;
    let mut restriction_per_subset = true;
    let g = cm.group();
    for &subset in cm.jodd_representatives() {
        let stab = Subgroup::filter(&a, |x| subset.permuted(x.perm()) == subset)?;
        let chi = induce(&a, &stab, |x| {
            if a.element(x).sign().parity_on(subset) {
                int(-1)
            } else {
                int(1)
            }
        });
        let norm = chi.inner_product(&chi)?;
        irreducible &= norm.is_one();
        norms.push(fmt_q(&norm));
        let spec = SignCharacterSpec::new(cm.h0_of_subset(subset), cm.h_of_subset(subset))?;
        restriction_per_subset &= chi.restrict(g)? == spec.induce(g);
        rhs = &rhs + &chi;
    }
    let (reflex_lhs, _) = sum_induced(g, &reflex_side(cm));
    let mackey_reflex_side = lhs.restrict(g)? == reflex_lhs;
    let equal = lhs == rhs;
    Ok(DecompositionReport {
        ambient_order: a.order(),
        jodd: cm.jodd_representatives().iter().map(|s| s.to_string()).collect(),
        equal,
        norms,
        irreducible,
        mackey_reflex_side,
        restriction_per_subset,
        passed: equal && irreducible && mackey_reflex_side && restriction_per_subset,
    })
}
