//! The rational group algebra `Q[G]`, its quotient by `ι = -1`, half-norm
//! elements, and the multiplication-by-`2^{N-1}` identities.

mod blocks;
mod half_norms;
mod product;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, int, Q};
use crate::signed_perm::{Group, Subgroup};

pub use blocks::{
    verify_block_norms, verify_block_pairs, verify_composite_norm, verify_half_norm_sum, verify_subset_block,
    verify_type_block, BlockNormsReport, BlockPairsReport, BlockReport, CompositeNormReport,
    HalfNormSumReport, PairBlockReport,
};
pub use half_norms::{
    dual_half_norm_element, half_norm_element, half_norm_i, half_norm_i_star, norm_element,
    sign_constant_on_double_cosets, twisted_half_norm_i, twisted_half_norm_i_star,
};
pub use product::{
    dual_half_norm_apply, half_norm_apply, product_identity_sides, verify_norm_isomorphism,
    verify_product_identity, FunctionModel, NormIsomorphismReport, ProductFailure, ProductIdentityReport,
};

/// A sparse element `Σ c_x x` of `Q[G]`, keyed by element position.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    coeffs: BTreeMap<usize, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn basis(x: usize) -> Self {
        Self::term(x, Q::one())
    }

    pub fn term(x: usize, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(x, c);
        e
    }

    /// `Σ_{x ∈ xs} x`.
    pub fn sum_of(xs: impl IntoIterator<Item = usize>) -> Self {
        let mut e = Self::zero();
        for x in xs {
            e.add_term(x, Q::one());
        }
        e
    }

    pub fn add_term(&mut self, x: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(x).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&x);
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<usize, Q> {
        &self.coeffs
    }

    pub fn coefficient(&self, x: usize) -> Q {
        self.coeffs.get(&x).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, k: &Q) -> Self {
        let mut e = Self::zero();
        for (&x, c) in &self.coeffs {
            e.add_term(x, c * k);
        }
        e
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (&x, c) in &other.coeffs {
            e.add_term(x, c.clone());
        }
        e
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (&x, c) in &other.coeffs {
            e.add_term(x, -c.clone());
        }
        e
    }

    /// `Σ c_x` (the augmentation).
    pub fn augmentation(&self) -> Q {
        self.coeffs.values().fold(Q::zero(), |acc, c| acc + c)
    }

    /// Human-readable form `c·[element] + …`.
    pub fn render(&self, g: &Group) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|(&x, c)| format!("{}·[{}]", fmt_q(c), g.element(x)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// `render` cut after `max_terms` terms.
    pub fn render_truncated(&self, g: &Group, max_terms: usize) -> String {
        if self.coeffs.len() <= max_terms {
            return self.render(g);
        }
        let head: Vec<String> = self
            .coeffs
            .iter()
            .take(max_terms)
            .map(|(&x, c)| format!("{}·[{}]", fmt_q(c), g.element(x)))
            .collect();
        format!("{} + … ({} terms)", head.join(" + "), self.coeffs.len())
    }
}

/// Multiplication context for `Q[G]`.
#[derive(Debug, Clone, Copy)]
pub struct GroupAlgebra<'g> {
    group: &'g Group,
}

impl<'g> GroupAlgebra<'g> {
    pub fn new(group: &'g Group) -> Self {
        GroupAlgebra { group }
    }

    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&x, cx) in &a.coeffs {
            for (&y, cy) in &b.coeffs {
                out.add_term(self.group.mul(x, y), cx * cy);
            }
        }
        out
    }

    /// `x · a` for a group element `x`.
    pub fn left_mul(&self, x: usize, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&y, c) in &a.coeffs {
            out.add_term(self.group.mul(x, y), c.clone());
        }
        out
    }

    /// `a · x` for a group element `x`.
    pub fn right_mul(&self, a: &AlgebraElement, x: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (&y, c) in &a.coeffs {
            out.add_term(self.group.mul(y, x), c.clone());
        }
        out
    }

    /// `e_S = |S|⁻¹ Σ_{s ∈ S} s`.
    pub fn idempotent(&self, s: &Subgroup) -> AlgebraElement {
        AlgebraElement::sum_of(s.members().iter().copied()).scaled(&(Q::one() / int(s.order() as i64)))
    }

    /// `a · e_S`: the operator `a` restricted to `S`-invariant vectors.
    pub fn on_invariants(&self, a: &AlgebraElement, s: &Subgroup) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        let k = Q::one() / int(s.order() as i64);
        for (&y, c) in &a.coeffs {
            let ck = c * &k;
            for &h in s.members() {
                out.add_term(self.group.mul(y, h), ck.clone());
            }
        }
        out
    }

    /// Image in `Q[G] / (ι + 1)`: each pair `{x, ιx}` is represented by
    /// its lesser element, and `ιx ↦ -x`.
    pub fn reduce(&self, a: &AlgebraElement, iota: usize) -> SignedQuotientElement {
        let mut out = AlgebraElement::zero();
        for (&x, c) in &a.coeffs {
            let y = self.group.mul(iota, x);
            if x <= y {
                out.add_term(x, c.clone());
            } else {
                out.add_term(y, -c.clone());
            }
        }
        SignedQuotientElement(out)
    }

    pub fn quotient_mul(
        &self,
        a: &SignedQuotientElement,
        b: &SignedQuotientElement,
        iota: usize,
    ) -> SignedQuotientElement {
        self.reduce(&self.mul(&a.0, &b.0), iota)
    }
}

/// An element of `Q[G] / (ι + 1)`, stored on pair representatives.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignedQuotientElement(AlgebraElement);

impl SignedQuotientElement {
    pub fn lift(&self) -> &AlgebraElement {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scaled(&self, k: &Q) -> Self {
        SignedQuotientElement(self.0.scaled(k))
    }

    pub fn minus(&self, other: &Self) -> Self {
        SignedQuotientElement(self.0.minus(&other.0))
    }
}
