use num_traits::One;

use super::AlgebraElement;
use crate::cm_structure::{CmGroup, CmType, Subset};
use crate::rational::{ratio, Q};
use crate::signed_perm::{CosetDecomposition, Group, Subgroup};

/// `n_Φ = Σ_{φ ∈ Φ} φ`, one representative per embedding in `Φ_f`.
pub fn half_norm_element(cm: &CmGroup, f: CmType) -> AlgebraElement {
    AlgebraElement::sum_of(cm.type_reps(f))
}

/// `n_{Φ*} = Σ ψ_k⁻¹` over right-coset representatives `ψ_k` of `H*(Φ) \ S_Φ`.
pub fn dual_half_norm_element(cm: &CmGroup, f: CmType) -> AlgebraElement {
    let g = cm.group();
    AlgebraElement::sum_of(cm.dual_type(f).reps.into_iter().map(|x| g.inv(x)))
}

/// `N_{G/S} = Σ_{σ ∈ G/S} σ` over canonical left-coset representatives.
pub fn norm_element(g: &Group, s: &Subgroup) -> AlgebraElement {
    let cosets = CosetDecomposition::left(g, s).expect("subgroup");
    AlgebraElement::sum_of(cosets.reps().iter().copied())
}

fn sign(negative: bool) -> Q {
    if negative {
        -Q::one()
    } else {
        Q::one()
    }
}

/// `N_{Φ_f(I)} = ½ Σ_{ψ ∈ H(I)\G} (-1)^{Σ_I r_{Φ_f}(ψ)} ψ⁻¹`.
pub fn half_norm_i(cm: &CmGroup, f: CmType, subset: Subset) -> AlgebraElement {
    let g = cm.group();
    let cosets = CosetDecomposition::right(g, &cm.h_of_subset(subset)).expect("subgroup");
    let half = ratio(1, 2);
    let mut e = AlgebraElement::zero();
    for &psi in cosets.reps() {
        e.add_term(
            g.inv(psi),
            &half * sign(cm.subset_sign(f, subset, g.element(psi))),
        );
    }
    e
}

/// `N_{Φ_f(I)*} = ½ Σ_{ψ ∈ G/H*(Φ_f)} (-1)^{Σ_I r_{Φ_f}(ψ)} ψ`.
pub fn half_norm_i_star(cm: &CmGroup, f: CmType, subset: Subset) -> AlgebraElement {
    let g = cm.group();
    let cosets = CosetDecomposition::left(g, &cm.reflex_subgroup(f)).expect("subgroup");
    let half = ratio(1, 2);
    let mut e = AlgebraElement::zero();
    for &psi in cosets.reps() {
        e.add_term(psi, &half * sign(cm.subset_sign(f, subset, g.element(psi))));
    }
    e
}

/// `Σ_{ψ ∈ H₀(I)\G} ι^{Σ_I r_{Φ_f}(ψ)} ψ⁻¹`, the half norm with the sign
/// recorded as a power of `ι`.
pub fn twisted_half_norm_i(cm: &CmGroup, f: CmType, subset: Subset) -> AlgebraElement {
    let g = cm.group();
    let cosets = CosetDecomposition::right(g, &cm.h0_of_subset(subset)).expect("subgroup");
    let mut e = AlgebraElement::zero();
    for &psi in cosets.reps() {
        let mut x = g.inv(psi);
        if cm.subset_sign(f, subset, g.element(psi)) {
            x = g.mul(cm.iota(), x);
        }
        e.add_term(x, Q::one());
    }
    e
}

/// `Σ_{ψ ∈ G/H*₀(Φ_f)} ι^{Σ_I r_{Φ_f}(ψ)} ψ`.
pub fn twisted_half_norm_i_star(cm: &CmGroup, f: CmType, subset: Subset) -> AlgebraElement {
    let g = cm.group();
    let cosets = CosetDecomposition::left(g, &cm.reflex_subgroup0(f)).expect("subgroup");
    let mut e = AlgebraElement::zero();
    for &psi in cosets.reps() {
        let mut x = psi;
        if cm.subset_sign(f, subset, g.element(psi)) {
            x = g.mul(cm.iota(), x);
        }
        e.add_term(x, Q::one());
    }
    e
}

/// The sign `Σ_I r_{Φ_f}(σ)` is constant on each double coset `H(I) σ H*(Φ_f)`.
pub fn sign_constant_on_double_cosets(cm: &CmGroup, f: CmType, subset: Subset) -> bool {
    let g = cm.group();
    let d =
        CosetDecomposition::double(g, &cm.h_of_subset(subset), &cm.reflex_subgroup(f)).expect("subgroups");
    d.cosets().iter().all(|c| {
        let s0 = cm.subset_sign(f, subset, g.element(c[0]));
        c.iter().all(|&x| cm.subset_sign(f, subset, g.element(x)) == s0)
    })
}
