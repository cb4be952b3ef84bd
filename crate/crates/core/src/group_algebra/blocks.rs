use num_traits::One;
use serde::Serialize;

use super::half_norms::{
    dual_half_norm_element, half_norm_element, norm_element, twisted_half_norm_i, twisted_half_norm_i_star,
};
use super::{AlgebraElement, GroupAlgebra};
use crate::cm_structure::{CmGroup, CmType, Subset};
use crate::error::{Error, Result};
use crate::rational::{fmt_q, pow2, Q};
use crate::signed_perm::Subgroup;

const MAX_RENDERED_TERMS: usize = 8;

/// Outcome of one block of the half-norm block identities.
#[derive(Debug, Clone, Serialize)]
pub struct PairBlockReport {
    pub kind: String,
    pub left: String,
    pub right: String,
    pub diagonal: bool,
    /// `LHS·e = [2^{N-2}(id - ι)·δ + 2^{N-2} N_{G/S}]·e` in `Q[G]`.
    pub full_algebra: bool,
    /// `LHS·e` equals the stated right side (`0` off the diagonal) in `Q[G]`.
    pub literal_rhs: bool,
    /// `LHS·e = 2^{N-1}·δ·e` after reducing modulo `ι + 1`.
    pub quotient: bool,
    /// `LHS·e` minus the stated right side.
    pub residual: String,
    pub passed: bool,
}

/// Twisted half norms and idempotents for all `f ∈ Λ`, `I ∈ Jodd`.
struct Tables<'a> {
    cm: &'a CmGroup,
    ga: GroupAlgebra<'a>,
    lambda: Vec<CmType>,
    jodd: Vec<Subset>,
    /// `[f][I]`
    tw: Vec<Vec<AlgebraElement>>,
    tw_star: Vec<Vec<AlgebraElement>>,
    h_i: Vec<Subgroup>,
    h_star: Vec<Subgroup>,
}

impl<'a> Tables<'a> {
    fn new(cm: &'a CmGroup) -> Self {
        let lambda = cm.lambda();
        let jodd = cm.jodd_representatives().to_vec();
        let tw = lambda
            .iter()
            .map(|&f| jodd.iter().map(|&i| twisted_half_norm_i(cm, f, i)).collect())
            .collect();
        let tw_star = lambda
            .iter()
            .map(|&f| jodd.iter().map(|&i| twisted_half_norm_i_star(cm, f, i)).collect())
            .collect();
        Tables {
            cm,
            ga: GroupAlgebra::new(cm.group()),
            h_i: jodd.iter().map(|&i| cm.h_of_subset(i)).collect(),
            h_star: lambda.iter().map(|&f| cm.reflex_subgroup(f)).collect(),
            lambda,
            jodd,
            tw,
            tw_star,
        }
    }

    fn iota_power(&self, odd: bool, x: &AlgebraElement) -> AlgebraElement {
        if odd {
            self.ga.left_mul(self.cm.iota(), x)
        } else {
            x.clone()
        }
    }

    fn compare(
        &self,
        kind: &str,
        left: String,
        right: String,
        diagonal: bool,
        lhs: AlgebraElement,
        s: &Subgroup,
    ) -> PairBlockReport {
        let ga = self.ga;
        let n = self.cm.degree() as i32;
        let iota = self.cm.iota();
        let lhs = ga.on_invariants(&lhs, s);
        let quarter = pow2(n - 2);
        let mut one_minus_iota = AlgebraElement::basis(0);
        one_minus_iota.add_term(iota, -Q::one());
        let norm_part = norm_element(self.cm.group(), s).scaled(&quarter);
        let diag_part = one_minus_iota.scaled(&quarter);
        let uniform = if diagonal {
            diag_part.plus(&norm_part)
        } else {
            norm_part
        };
        let uniform = ga.on_invariants(&uniform, s);
        let literal = if diagonal {
            uniform.clone()
        } else {
            AlgebraElement::zero()
        };
        let e = ga.idempotent(s);
        let expected_q = if diagonal {
            ga.reduce(&e, iota).scaled(&pow2(n - 1))
        } else {
            ga.reduce(&AlgebraElement::zero(), iota)
        };
        let quotient = ga.reduce(&lhs, iota) == expected_q;
        let full_algebra = lhs == uniform;
        let residual = lhs.minus(&literal);
        PairBlockReport {
            kind: kind.into(),
            left,
            right,
            diagonal,
            full_algebra,
            literal_rhs: residual.is_zero(),
            quotient,
            residual: residual.render_truncated(self.cm.group(), MAX_RENDERED_TERMS),
            passed: full_algebra && quotient,
        }
    }

    /// `Σ_f ι^{Σ_{I'} f + Σ_I f} N_{Φ_f(I')*} N_{Φ_f(I)}` on `H(I)`-invariants.
    fn subset_block(&self, i: usize, ip: usize) -> PairBlockReport {
        let ga = self.ga;
        let mut lhs = AlgebraElement::zero();
        for (k, &f) in self.lambda.iter().enumerate() {
            let odd = f.bits().parity_on(self.jodd[i]) ^ f.bits().parity_on(self.jodd[ip]);
            let term = ga.mul(&self.tw_star[k][ip], &self.tw[k][i]);
            lhs = lhs.plus(&self.iota_power(odd, &term));
        }
        self.compare(
            "subset",
            self.jodd[i].to_string(),
            self.jodd[ip].to_string(),
            i == ip,
            lhs,
            &self.h_i[i],
        )
    }

    /// `Σ_I ι^{Σ_I (f' + f)} N_{Φ_{f'}(I)} N_{Φ_f(I)*}` on `H*(Φ_f)`-invariants.
    fn type_block(&self, k: usize, kp: usize) -> PairBlockReport {
        let ga = self.ga;
        let (f, fp) = (self.lambda[k], self.lambda[kp]);
        let mut lhs = AlgebraElement::zero();
        for (i, &s) in self.jodd.iter().enumerate() {
            let odd = f.bits().xor(fp.bits()).parity_on(s);
            let term = ga.mul(&self.tw[kp][i], &self.tw_star[k][i]);
            lhs = lhs.plus(&self.iota_power(odd, &term));
        }
        self.compare(
            "type",
            f.to_string(),
            fp.to_string(),
            k == kp,
            lhs,
            &self.h_star[k],
        )
    }
}

pub fn verify_subset_block(cm: &CmGroup, subset: Subset, subset_prime: Subset) -> Result<PairBlockReport> {
    let t = Tables::new(cm);
    let pos = |s: Subset| {
        t.jodd
            .iter()
            .position(|&x| x == s)
            .ok_or_else(|| Error::input(format!("{s} is not an odd-subset orbit representative")))
    };
    Ok(t.subset_block(pos(subset)?, pos(subset_prime)?))
}

pub fn verify_type_block(cm: &CmGroup, f: CmType, f_prime: CmType) -> Result<PairBlockReport> {
    let t = Tables::new(cm);
    let pos = |x: CmType| {
        t.lambda
            .iter()
            .position(|&y| y == x)
            .ok_or_else(|| Error::input(format!("{x} is not a CM-type orbit representative")))
    };
    Ok(t.type_block(pos(f)?, pos(f_prime)?))
}

/// One block `(row, col)` of a composite of the two half-norm maps.
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub row: String,
    pub col: String,
    /// `2^{N-1}` on the diagonal, `0` elsewhere.
    pub expected: String,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockNormsReport {
    pub factor: String,
    /// Blocks of `N_{Λ→J} ∘ N_{J→Λ}` on `⊕ M^{H(I)}`.
    pub blocks_j: Vec<BlockReport>,
    /// Blocks of `N_{J→Λ} ∘ N_{Λ→J}` on `⊕ M^{H*(Φ)}`.
    pub blocks_lambda: Vec<BlockReport>,
    pub passed: bool,
}

/// Every block of both families, in the order `(I, I')` then `(f, f')`.
#[derive(Debug, Clone, Serialize)]
pub struct BlockPairsReport {
    pub subset_blocks: Vec<PairBlockReport>,
    pub type_blocks: Vec<PairBlockReport>,
    /// Off-diagonal blocks whose full-algebra value is not literally zero.
    pub off_diagonal_nonzero: usize,
    pub passed: bool,
}

pub fn verify_block_pairs(cm: &CmGroup) -> BlockPairsReport {
    let t = Tables::new(cm);
    let mut subset_blocks = Vec::new();
    for i in 0..t.jodd.len() {
        for ip in 0..t.jodd.len() {
            subset_blocks.push(t.subset_block(i, ip));
        }
    }
    let mut type_blocks = Vec::new();
    for k in 0..t.lambda.len() {
        for kp in 0..t.lambda.len() {
            type_blocks.push(t.type_block(k, kp));
        }
    }
    BlockPairsReport {
        off_diagonal_nonzero: subset_blocks
            .iter()
            .chain(&type_blocks)
            .filter(|r| !r.diagonal && !r.literal_rhs)
            .count(),
        passed: subset_blocks.iter().chain(&type_blocks).all(|r| r.passed),
        subset_blocks,
        type_blocks,
    }
}

fn block(r: &PairBlockReport, factor: &Q) -> BlockReport {
    BlockReport {
        row: r.right.clone(),
        col: r.left.clone(),
        expected: if r.diagonal { fmt_q(factor) } else { "0".into() },
        passed: r.quotient,
    }
}

/// Both composites of `N_{J→Λ}` and `N_{Λ→J}` are `2^{N-1}` on modules where
/// `ι = -1`, assembled block by block from the two block families.
pub fn verify_block_norms(cm: &CmGroup) -> BlockNormsReport {
    let pairs = verify_block_pairs(cm);
    let factor = pow2(cm.degree() as i32 - 1);
    let blocks_j: Vec<BlockReport> = pairs.subset_blocks.iter().map(|r| block(r, &factor)).collect();
    let blocks_lambda: Vec<BlockReport> = pairs.type_blocks.iter().map(|r| block(r, &factor)).collect();
    let passed = blocks_j.iter().chain(&blocks_lambda).all(|b| b.passed);
    BlockNormsReport {
        factor: fmt_q(&factor),
        blocks_j,
        blocks_lambda,
        passed,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CompositeNormReport {
    pub factor: String,
    /// `reduce((Σ_Λ n_{Φ*} n_Φ)·e_H) - 2^{N-1}·reduce(e_H)`.
    pub residual: String,
    pub passed: bool,
}

/// `Σ_{Φ ∈ Λ} N_{Φ*} ∘ N_Φ` is multiplication by `2^{N-1}` on `M^H` when `ι = -1`.
pub fn verify_composite_norm(cm: &CmGroup) -> CompositeNormReport {
    let ga = GroupAlgebra::new(cm.group());
    let mut total = AlgebraElement::zero();
    for f in cm.lambda() {
        total = total.plus(&ga.mul(&dual_half_norm_element(cm, f), &half_norm_element(cm, f)));
    }
    let factor = pow2(cm.degree() as i32 - 1);
    let lhs = ga.reduce(&ga.on_invariants(&total, cm.h()), cm.iota());
    let rhs = ga.reduce(&ga.idempotent(cm.h()), cm.iota()).scaled(&factor);
    let residual = lhs.minus(&rhs);
    CompositeNormReport {
        factor: fmt_q(&factor),
        residual: residual.lift().render_truncated(cm.group(), MAX_RENDERED_TERMS),
        passed: residual.is_zero(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HalfNormSumReport {
    pub cm_type: String,
    pub passed: bool,
}

/// `(n_Φ + ι n_Φ)·e_H = N_{G/H}·e_H` for every `f ∈ Λ`.
pub fn verify_half_norm_sum(cm: &CmGroup) -> Vec<HalfNormSumReport> {
    let ga = GroupAlgebra::new(cm.group());
    let norm = ga.on_invariants(&norm_element(cm.group(), cm.h()), cm.h());
    cm.lambda()
        .into_iter()
        .map(|f| {
            let n = half_norm_element(cm, f);
            let sum = n.plus(&ga.left_mul(cm.iota(), &n));
            HalfNormSumReport {
                cm_type: f.to_string(),
                passed: ga.on_invariants(&sum, cm.h()) == norm,
            }
        })
        .collect()
}
