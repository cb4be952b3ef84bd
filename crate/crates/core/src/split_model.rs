//! A split model of the Galois closure: functions `G → Q(i)` with
//! `x_τ = τ(x)`, `d_i = e_i²` rational, and `√(-φ_i(d)) = i·e_i` at the
//! identity. The Pfister algebra `V` has coefficients in `R = Map(G₀, Q(i))`.

use std::collections::HashMap;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cm_structure::{CmGroup, CmType};
use crate::error::{Error, Result};
use crate::group_algebra::FunctionModel;
use crate::linalg::determinant;
use crate::rational::{fmt_q, int, pow2, ratio, GaussQ, Q};
use crate::signed_perm::{CosetDecomposition, Perm, Subgroup};

/// Largest degree the Pfister check accepts (`V` has rank `2^N` over `R`).
pub const MAX_PFISTER_DEGREE: usize = 6;

/// Split values `e_i > 0`, with `d_i = e_i²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitParams {
    e: Vec<Q>,
}

impl SplitParams {
    pub fn new(e: Vec<Q>) -> Result<Self> {
        if e.is_empty() {
            return Err(Error::input("split parameters need at least one value"));
        }
        if let Some(x) = e.iter().find(|x| !x.is_positive()) {
            return Err(Error::input(format!(
                "split parameter {} is not positive",
                fmt_q(x)
            )));
        }
        Ok(SplitParams { e })
    }

    /// `e_i` drawn as `p/q` with `p ∈ 1..=9`, `q ∈ 1..=4`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let e = (0..n)
            .map(|_| ratio(rng.random_range(1..=9), rng.random_range(1..=4)))
            .collect();
        SplitParams { e }
    }

    /// Three reproducible parameter vectors derived from `seed`.
    pub fn seeded_triple(n: usize, seed: u64) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED_E7EC);
        let mut out: Vec<Self> = Vec::new();
        while out.len() < 3 {
            let p = Self::random(n, &mut rng);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn e(&self, i: usize) -> &Q {
        &self.e[i]
    }

    pub fn d(&self, i: usize) -> Q {
        &self.e[i] * &self.e[i]
    }

    pub fn render(&self) -> Vec<String> {
        self.e.iter().map(fmt_q).collect()
    }
}

/// An element of `Map(G, Q(i))`, indexed by group element position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionAlgebraElement {
    pub values: Vec<GaussQ>,
}

impl FunctionAlgebraElement {
    pub fn zero(order: usize) -> Self {
        FunctionAlgebraElement {
            values: vec![GaussQ::zero(); order],
        }
    }

    pub fn constant(order: usize, c: GaussQ) -> Self {
        FunctionAlgebraElement {
            values: vec![c; order],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GaussQ::is_zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn times(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scaled(&self, k: &GaussQ) -> Self {
        FunctionAlgebraElement {
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    fn zip(&self, other: &Self, op: impl Fn(&GaussQ, &GaussQ) -> GaussQ) -> Self {
        assert_eq!(self.values.len(), other.values.len());
        FunctionAlgebraElement {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }
}

/// `Σ_I x_I v_I` with `x_I ∈ R`, stored as `coeffs[I][σ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VElement {
    pub coeffs: Vec<Vec<GaussQ>>,
}

impl VElement {
    pub fn zero(degree: usize, fibers: usize) -> Self {
        VElement {
            coeffs: vec![vec![GaussQ::zero(); fibers]; 1 << degree],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(GaussQ::is_zero)
    }

    pub fn plus(&self, other: &Self) -> Self {
        VElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }
}

/// The split model attached to a CM group and a parameter vector.
pub struct SplitModel<'a> {
    cm: &'a CmGroup,
    params: SplitParams,
    g0: Vec<Perm>,
    /// `fiber[τ]` = position of `τ`'s permutation part in `g0`.
    fiber: Vec<usize>,
}

impl<'a> SplitModel<'a> {
    pub fn new(cm: &'a CmGroup, params: SplitParams) -> Result<Self> {
        if params.len() != cm.degree() {
            return Err(Error::DegreeMismatch {
                left: cm.degree(),
                right: params.len(),
            });
        }
        let g0 = cm.projection_image();
        let index: HashMap<Perm, usize> = g0.iter().enumerate().map(|(k, p)| (*p, k)).collect();
        let fiber = cm.group().elements().iter().map(|x| index[x.perm()]).collect();
        Ok(SplitModel {
            cm,
            params,
            g0,
            fiber,
        })
    }

    pub fn cm(&self) -> &CmGroup {
        self.cm
    }

    pub fn params(&self) -> &SplitParams {
        &self.params
    }

    pub fn projection_image(&self) -> &[Perm] {
        &self.g0
    }

    fn order(&self) -> usize {
        self.cm.order()
    }

    fn degree(&self) -> usize {
        self.cm.degree()
    }

    /// `(σ·x)_τ = x_{τσ}`.
    pub fn act(&self, sigma: usize, x: &FunctionAlgebraElement) -> FunctionAlgebraElement {
        FunctionAlgebraElement {
            values: FunctionModel::new(self.cm.group()).act(sigma, &x.values),
        }
    }

    /// `x̄ = ι·x`.
    pub fn conjugate(&self, x: &FunctionAlgebraElement) -> FunctionAlgebraElement {
        self.act(self.cm.iota(), x)
    }

    /// `s_i = √(-φ_i(d))`: at `τ = (f, σ)` the value `(-1)^{f(σ(i))}·i·e_{σ(i)}`.
    pub fn s_element(&self, i: usize) -> FunctionAlgebraElement {
        let values = self
            .cm
            .group()
            .elements()
            .iter()
            .map(|tau| {
                let j = tau.perm().apply(i);
                let v = GaussQ::imag(self.params.e(j).clone());
                if tau.sign().get(j) {
                    -v
                } else {
                    v
                }
            })
            .collect();
        FunctionAlgebraElement { values }
    }

    /// `D_i ∈ R`, `D_i(σ) = d_{σ(i)}`.
    pub fn d_function(&self, i: usize) -> Vec<GaussQ> {
        self.g0
            .iter()
            .map(|p| GaussQ::real(self.params.d(p.apply(i))))
            .collect()
    }

    /// Pulls an element of `R` back to a `C`-invariant function on `G`.
    pub fn lift_r(&self, r: &[GaussQ]) -> FunctionAlgebraElement {
        FunctionAlgebraElement {
            values: self.fiber.iter().map(|&k| r[k].clone()).collect(),
        }
    }

    /// Folds a `C`-invariant function to `R`; `None` if it is not constant on fibers.
    pub fn fold_to_r(&self, x: &FunctionAlgebraElement) -> Option<Vec<GaussQ>> {
        let mut out: Vec<Option<GaussQ>> = vec![None; self.g0.len()];
        for (t, v) in x.values.iter().enumerate() {
            match &out[self.fiber[t]] {
                None => out[self.fiber[t]] = Some(v.clone()),
                Some(w) if w != v => return None,
                Some(_) => {}
            }
        }
        out.into_iter().collect()
    }

    /// Indicator functions of the left cosets `τS`.
    pub fn fixed_subalgebra_basis(&self, s: &Subgroup) -> Result<Vec<FunctionAlgebraElement>> {
        let cosets = CosetDecomposition::left(self.cm.group(), s)?;
        Ok((0..cosets.len())
            .map(|k| FunctionAlgebraElement {
                values: (0..self.order())
                    .map(|t| {
                        if cosets.coset_of(t) == k {
                            GaussQ::one()
                        } else {
                            GaussQ::zero()
                        }
                    })
                    .collect(),
            })
            .collect())
    }

    /// A `Q`-basis of the `S`-invariants with `ι·x = x̄`, for `ι ∉ S`: per coset
    /// pair `{τS, τιS}` the elements `1_{τS} + 1_{τιS}` and `i(1_{τS} - 1_{τιS})`.
    pub fn real_form_basis(&self, s: &Subgroup) -> Result<Vec<FunctionAlgebraElement>> {
        let g = self.cm.group();
        if s.contains(self.cm.iota()) {
            return Err(Error::input("real-form basis needs a subgroup without ι"));
        }
        let cosets = CosetDecomposition::left(g, s)?;
        let mut out = Vec::new();
        for (k, &rep) in cosets.reps().iter().enumerate() {
            let partner = cosets.coset_of(g.mul(rep, self.cm.iota()));
            if partner < k {
                continue;
            }
            let indicator = |plus: GaussQ, minus: GaussQ| FunctionAlgebraElement {
                values: (0..self.order())
                    .map(|t| match cosets.coset_of(t) {
                        c if c == k => plus.clone(),
                        c if c == partner => minus.clone(),
                        _ => GaussQ::zero(),
                    })
                    .collect(),
            };
            out.push(indicator(GaussQ::one(), GaussQ::one()));
            out.push(indicator(GaussQ::imag(int(1)), GaussQ::imag(int(-1))));
        }
        Ok(out)
    }

    /// `Tr(x) = Σ_{ψ ∈ G/S} x_ψ` for `S`-invariant `x`.
    pub fn trace_to_q(&self, x: &FunctionAlgebraElement, s: &Subgroup) -> Result<GaussQ> {
        if !FunctionModel::new(self.cm.group()).is_invariant(s, &x.values) {
            return Err(Error::input("trace of a non-invariant element"));
        }
        let cosets = CosetDecomposition::left(self.cm.group(), s)?;
        Ok(cosets
            .reps()
            .iter()
            .fold(GaussQ::zero(), |acc, &r| &acc + &x.values[r]))
    }

    /// `Π_{i ∈ I} (±D_i)`.
    fn d_product(&self, mask: u32, negate: bool) -> Vec<GaussQ> {
        let mut out = vec![GaussQ::one(); self.g0.len()];
        for i in 0..self.degree() {
            if (mask >> i) & 1 == 1 {
                for (o, d) in out.iter_mut().zip(self.d_function(i)) {
                    *o = &*o * &(if negate { -d } else { d });
                }
            }
        }
        out
    }

    /// `v_I v_J = Π_{i∈I∩J}(-D_i) v_{I△J}`.
    pub fn v_mul(&self, x: &VElement, y: &VElement) -> VElement {
        let n = self.degree();
        let mut out = VElement::zero(n, self.g0.len());
        let signs: Vec<Vec<GaussQ>> = (0..1u32 << n).map(|m| self.d_product(m, true)).collect();
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.iter().all(GaussQ::is_zero) {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.iter().all(GaussQ::is_zero) {
                    continue;
                }
                let k = &signs[i & j];
                let slot = &mut out.coeffs[i ^ j];
                for s in 0..slot.len() {
                    slot[s] += &(&(&xi[s] * &yj[s]) * &k[s]);
                }
            }
        }
        out
    }

    /// `q(Σ x_I v_I) = Σ x_I² Π_{i∈I} D_i`.
    pub fn pfister_q(&self, v: &VElement) -> Vec<GaussQ> {
        self.pfister_b(v, v)
    }

    /// The symmetric bilinear form of `q`.
    pub fn pfister_b(&self, x: &VElement, y: &VElement) -> Vec<GaussQ> {
        let mut out = vec![GaussQ::zero(); self.g0.len()];
        for (m, (xi, yi)) in x.coeffs.iter().zip(&y.coeffs).enumerate() {
            let w = self.d_product(m as u32, false);
            for s in 0..out.len() {
                out[s] += &(&(&xi[s] * &yi[s]) * &w[s]);
            }
        }
        out
    }

    /// `φ_Λ((a_f)) = 2^{1-N} Σ_I v_I / Π_{i∈I} s_i · Σ_f (-1)^{Σ_I f} N_{Φ_f(I)*}(a_f)`.
    /// Errors if a coefficient is not `C`-invariant or the inputs are not invariant.
    pub fn phi_lambda(&self, a: &[FunctionAlgebraElement]) -> Result<VElement> {
        let lambda = self.cm.lambda();
        if a.len() != lambda.len() {
            return Err(Error::input(format!(
                "expected {} components, got {}",
                lambda.len(),
                a.len()
            )));
        }
        let n = self.degree();
        let mut u = vec![FunctionAlgebraElement::zero(self.order()); 1 << n];
        for (&f, af) in lambda.iter().zip(a) {
            self.accumulate_dual_norms(f, af, &mut u)?;
        }
        let s: Vec<FunctionAlgebraElement> = (0..n).map(|i| self.s_element(i)).collect();
        let norm = GaussQ::real(pow2(1 - n as i32));
        let mut out = VElement::zero(n, self.g0.len());
        for (m, um) in u.into_iter().enumerate() {
            let mut x = um.scaled(&norm);
            for (i, si) in s.iter().enumerate() {
                if (m >> i) & 1 == 1 {
                    x = FunctionAlgebraElement {
                        values: x
                            .values
                            .iter()
                            .zip(&si.values)
                            .map(|(p, q)| p.div(q).expect("s_i has no zero coordinate"))
                            .collect(),
                    };
                }
            }
            out.coeffs[m] = self.fold_to_r(&x).ok_or_else(|| {
                Error::Model(format!(
                    "coefficient of v_{} is not invariant under the kernel of the projection",
                    crate::signed_perm::Bits::new(m as u32, n)
                ))
            })?;
        }
        Ok(out)
    }

    /// `u[I] += (-1)^{Σ_I f} N_{Φ_f(I)*}(a)` for all `I` at once.
    fn accumulate_dual_norms(
        &self,
        f: CmType,
        a: &FunctionAlgebraElement,
        u: &mut [FunctionAlgebraElement],
    ) -> Result<()> {
        if a.is_zero() {
            return Ok(());
        }
        let g = self.cm.group();
        let hstar = self.cm.reflex_subgroup(f);
        if !FunctionModel::new(g).is_invariant(&hstar, &a.values) {
            return Err(Error::input(format!("component for {f} is not invariant")));
        }
        let cosets = CosetDecomposition::left(g, &hstar)?;
        let half = GaussQ::real(ratio(1, 2));
        for &psi in cosets.reps() {
            let w = self.cm.cocycle(f, g.element(psi)).xor(f.bits()).word();
            let moved = self.act(psi, a).scaled(&half);
            for (m, um) in u.iter_mut().enumerate() {
                *um = if (w & m as u32).count_ones() % 2 == 1 {
                    um.minus(&moved)
                } else {
                    um.plus(&moved)
                };
            }
        }
        Ok(())
    }

    /// The `Q`-basis of `⊕_{Φ∈Λ} K*(Φ)` as `(block, element)` pairs.
    pub fn lambda_basis(&self) -> Result<Vec<(usize, FunctionAlgebraElement)>> {
        let mut out = Vec::new();
        for (k, f) in self.cm.lambda().into_iter().enumerate() {
            for b in self.real_form_basis(&self.cm.reflex_subgroup(f))? {
                out.push((k, b));
            }
        }
        Ok(out)
    }

    fn embed(&self, block: usize, x: &FunctionAlgebraElement) -> Vec<FunctionAlgebraElement> {
        let mut out = vec![FunctionAlgebraElement::zero(self.order()); self.cm.lambda().len()];
        out[block] = x.clone();
        out
    }
}

/// `Q_Λ(x, y) = Σ_Φ Tr_{K*(Φ)/Q}(x̄ y)` on the real-form basis.
pub fn trace_gram(model: &SplitModel) -> Result<Vec<Vec<Q>>> {
    let basis = model.lambda_basis()?;
    let lambda = model.cm().lambda();
    let mut gram = vec![vec![Q::zero(); basis.len()]; basis.len()];
    for (p, (bp, xp)) in basis.iter().enumerate() {
        for (q, (bq, xq)) in basis.iter().enumerate() {
            if bp != bq {
                continue;
            }
            let s = model.cm().reflex_subgroup(lambda[*bp]);
            let t = model.trace_to_q(&model.conjugate(xp).times(xq), &s)?;
            if !t.is_real() {
                return Err(Error::Model("trace form has an imaginary entry".into()));
            }
            gram[p][q] = t.re;
        }
    }
    Ok(gram)
}

/// Positive-definiteness through the leading principal minors.
pub fn is_positive_definite(m: &[Vec<Q>]) -> bool {
    (1..=m.len()).all(|k| {
        let minor: Vec<Vec<Q>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PfisterRun {
    pub e: Vec<String>,
    pub homomorphism: bool,
    /// Gram of `q∘φ_Λ` is `2^{-N}` times the Gram of `Q_Λ`, entrywise and constant.
    pub form_identity: bool,
    /// `q(φ_Λ(w))` is the constant `2^{-N} Q_Λ(w)` for random rational `w`.
    pub random_vectors: bool,
    /// Every coefficient of `φ_Λ` on a basis element is real.
    pub coefficients_real: bool,
    /// Determinant of the `v_I`-coefficient matrix is nonzero at every `σ ∈ G₀`.
    pub bijective: bool,
    pub failure: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuadraticReport {
    pub seed: u64,
    pub trials: usize,
    pub dimension: usize,
    pub expected_dimension: usize,
    pub gram_symmetric: bool,
    pub gram_positive_definite: bool,
    /// Gram matrix of `Q_Λ` (for the first parameter vector; it does not depend on `e`).
    pub gram: Vec<Vec<String>>,
    pub runs: Vec<PfisterRun>,
    pub passed: bool,
}

fn check_run(model: &SplitModel, gram: &[Vec<Q>], trials: usize, rng: &mut ChaCha8Rng) -> Result<PfisterRun> {
    let n = model.degree();
    let basis = model.lambda_basis()?;
    let images: Vec<VElement> = basis
        .iter()
        .map(|(k, x)| model.phi_lambda(&model.embed(*k, x)))
        .collect::<Result<_>>()?;
    let scale = GaussQ::real(pow2(-(n as i32)));
    let mut failure = None;

    let coefficients_real = images
        .iter()
        .all(|v| v.coeffs.iter().flatten().all(GaussQ::is_real));
    if !coefficients_real {
        failure.get_or_insert_with(|| "non-real coefficient".to_string());
    }

    let mut homomorphism = true;
    let mut form_identity = true;
    for p in 0..basis.len() {
        for q in p..basis.len() {
            let (bp, xp) = &basis[p];
            let (bq, xq) = &basis[q];
            let product = if bp == bq {
                model.phi_lambda(&model.embed(*bp, &xp.times(xq)))?
            } else {
                VElement::zero(n, model.projection_image().len())
            };
            if model.v_mul(&images[p], &images[q]) != product {
                homomorphism = false;
                failure.get_or_insert_with(|| format!("homomorphism fails on basis pair ({p}, {q})"));
            }
            let b = model.pfister_b(&images[p], &images[q]);
            let expected = &scale * &GaussQ::real(gram[p][q].clone());
            if b.iter().any(|v| *v != expected) {
                form_identity = false;
                failure.get_or_insert_with(|| format!("form identity fails on basis pair ({p}, {q})"));
            }
        }
    }

    let mut bijective = true;
    for s in 0..model.projection_image().len() {
        let m: Vec<Vec<GaussQ>> = images
            .iter()
            .map(|v| v.coeffs.iter().map(|c| c[s].clone()).collect())
            .collect();
        if m.len() != m[0].len() || determinant(&m).is_zero() {
            bijective = false;
            failure.get_or_insert_with(|| {
                format!(
                    "singular coefficient matrix at σ = {}",
                    model.projection_image()[s]
                )
            });
        }
    }

    let mut random_vectors = true;
    for _ in 0..trials {
        let coeffs: Vec<Q> = (0..basis.len())
            .map(|_| ratio(rng.random_range(-5..=5), rng.random_range(1..=4)))
            .collect();
        let mut v = VElement::zero(n, model.projection_image().len());
        let mut qv = Q::zero();
        for (p, c) in coeffs.iter().enumerate() {
            let k = GaussQ::real(c.clone());
            v = v.plus(&VElement {
                coeffs: images[p]
                    .coeffs
                    .iter()
                    .map(|r| r.iter().map(|x| x * &k).collect())
                    .collect(),
            });
            for (q, d) in coeffs.iter().enumerate() {
                qv += c * d * &gram[p][q];
            }
        }
        let expected = &scale * &GaussQ::real(qv);
        if model.pfister_q(&v).iter().any(|x| *x != expected) {
            random_vectors = false;
            failure.get_or_insert_with(|| "random vector violates the form identity".to_string());
        }
    }

    Ok(PfisterRun {
        e: model.params().render(),
        homomorphism,
        form_identity,
        random_vectors,
        coefficients_real,
        bijective,
        passed: homomorphism && form_identity && random_vectors && coefficients_real && bijective,
        failure,
    })
}

/// Runs the three exact checks (homomorphism, form identity, bijectivity)
/// plus `trials` random vectors for each parameter vector.
pub fn verify_pfister(
    cm: &CmGroup,
    params: &[SplitParams],
    trials: usize,
    seed: u64,
) -> Result<QuadraticReport> {
    let n = cm.degree();
    if n > MAX_PFISTER_DEGREE {
        return Err(Error::resource("Pfister degree", MAX_PFISTER_DEGREE, n));
    }
    if params.is_empty() {
        return Err(Error::input("no split parameters given"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = SplitModel::new(cm, params[0].clone())?;
    let gram = trace_gram(&first)?;
    let dimension = gram.len();
    let gram_symmetric = (0..dimension).all(|p| (0..p).all(|q| gram[p][q] == gram[q][p]));
    let gram_positive_definite = is_positive_definite(&gram);
    let mut runs = Vec::new();
    for p in params {
        let model = SplitModel::new(cm, p.clone())?;
        runs.push(check_run(&model, &gram, trials, &mut rng)?);
    }
    let expected_dimension = 1 << n;
    Ok(QuadraticReport {
        seed,
        trials,
        dimension,
        expected_dimension,
        gram_symmetric,
        gram_positive_definite,
        gram: gram.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
        passed: dimension == expected_dimension
            && gram_symmetric
            && gram_positive_definite
            && runs.iter().all(|r| r.passed),
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_hyperoctahedral;
    use crate::signed_perm::DEFAULT_MAX_ORDER;

    fn params(e: &[(i64, i64)]) -> SplitParams {
        SplitParams::new(e.iter().map(|&(p, q)| ratio(p, q)).collect()).unwrap()
    }

    #[test]
    fn params_must_be_positive() {
        assert!(SplitParams::new(vec![int(1), int(0)]).is_err());
        assert!(SplitParams::new(vec![]).is_err());
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        assert!(SplitModel::new(&cm, params(&[(1, 1)])).is_err());
    }

    #[test]
    fn s_elements() {
        let cm = build_hyperoctahedral(3, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(2, 1), (3, 2), (5, 3)])).unwrap();
        let g = cm.group();
        for i in 0..3 {
            let s = m.s_element(i);
            // ι·s_i = -s_i
            assert_eq!(m.conjugate(&s), s.scaled(&GaussQ::real(int(-1))));
            // s_i² = -D_i lifted
            let minus_d: Vec<GaussQ> = m.d_function(i).into_iter().map(|d| -d).collect();
            assert_eq!(s.times(&s), m.lift_r(&minus_d));
            for t in 0..g.order() {
                let tau = g.element(t);
                let j = tau.perm().apply(i);
                let moved = m.act(t, &s);
                let sign = if tau.sign().get(j) { int(-1) } else { int(1) };
                assert_eq!(moved, m.s_element(j).scaled(&GaussQ::real(sign)));
                // τ·D_i = D_{τ(i)}
                assert_eq!(m.act(t, &m.lift_r(&m.d_function(i))), m.lift_r(&m.d_function(j)));
            }
            // kernel elements act by (-1)^{r(a)(i)}
            for &a in cm.c_kernel().members() {
                let r = cm.cocycle(CmType::base(3), g.element(a));
                let sign = if r.get(i) { int(-1) } else { int(1) };
                assert_eq!(m.act(a, &s), s.scaled(&GaussQ::real(sign)));
            }
        }
    }

    #[test]
    fn fixed_subalgebra_dimensions() {
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(1, 1), (2, 1)])).unwrap();
        let g = cm.group();
        assert_eq!(m.fixed_subalgebra_basis(&g.full_subgroup()).unwrap().len(), 1);
        assert_eq!(m.fixed_subalgebra_basis(&g.trivial_subgroup()).unwrap().len(), 8);
        let hs = cm.reflex_subgroup(CmType::base(2));
        assert_eq!(m.fixed_subalgebra_basis(&hs).unwrap().len(), 4);
        assert_eq!(m.real_form_basis(&hs).unwrap().len(), 4);
    }

    #[test]
    fn traces() {
        let cm = build_hyperoctahedral(1, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(3, 2)])).unwrap();
        let g = cm.group();
        let one = FunctionAlgebraElement::constant(2, GaussQ::one());
        assert_eq!(m.trace_to_q(&one, &g.full_subgroup()).unwrap(), GaussQ::one());
        let s = m.s_element(0);
        let t = m
            .trace_to_q(&s.times(&m.conjugate(&s)), &g.trivial_subgroup())
            .unwrap();
        assert_eq!(t, GaussQ::real(ratio(9, 2)));
        assert!(m.trace_to_q(&s, &g.full_subgroup()).is_err());
    }

    #[test]
    fn trace_independent_of_representatives() {
        let cm = build_hyperoctahedral(3, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(1, 1), (2, 1), (3, 1)])).unwrap();
        let g = cm.group();
        let hs = cm.reflex_subgroup(CmType::base(3));
        let cosets = CosetDecomposition::left(g, &hs).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let vals: Vec<GaussQ> = (0..cosets.len())
            .map(|_| GaussQ::new(int(rng.random_range(-4..=4)), int(rng.random_range(-4..=4))))
            .collect();
        let x = FunctionAlgebraElement {
            values: (0..g.order()).map(|t| vals[cosets.coset_of(t)].clone()).collect(),
        };
        // the greatest element of each coset as an alternative representative
        let alt = cosets
            .cosets()
            .iter()
            .fold(GaussQ::zero(), |acc, c| &acc + &x.values[*c.last().unwrap()]);
        assert_eq!(m.trace_to_q(&x, &hs).unwrap(), alt);
    }

    #[test]
    fn q_on_basis_symbols() {
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(2, 1), (3, 1)])).unwrap();
        let fibers = m.projection_image().len();
        let mut v = VElement::zero(2, fibers);
        v.coeffs[0] = vec![GaussQ::one(); fibers];
        assert_eq!(m.pfister_q(&v), vec![GaussQ::one(); fibers]);
        let mut v1 = VElement::zero(2, fibers);
        v1.coeffs[1] = vec![GaussQ::one(); fibers];
        assert_eq!(m.pfister_q(&v1), m.d_function(0));
        // x v_∅ + y v_{12} ↦ x² + D₁D₂ y²
        let mut w = VElement::zero(2, fibers);
        w.coeffs[0] = vec![GaussQ::real(int(2)); fibers];
        w.coeffs[3] = vec![GaussQ::real(int(5)); fibers];
        let d1 = m.d_function(0);
        let d2 = m.d_function(1);
        let expected: Vec<GaussQ> = (0..fibers)
            .map(|s| &GaussQ::real(int(4)) + &(&(&d1[s] * &d2[s]) * &GaussQ::real(int(25))))
            .collect();
        assert_eq!(m.pfister_q(&w), expected);
        // v_1 · v_1 = -D_1
        let sq = m.v_mul(&v1, &v1);
        let minus: Vec<GaussQ> = d1.iter().map(|d| -d.clone()).collect();
        assert_eq!(sq.coeffs[0], minus);
    }

    #[test]
    fn phi_lambda_imaginary_quadratic() {
        let cm = build_hyperoctahedral(1, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(5, 3)])).unwrap();
        let one = FunctionAlgebraElement::constant(2, GaussQ::one());
        let v = m.phi_lambda(&[one]).unwrap();
        assert_eq!(v.coeffs[0], vec![GaussQ::one()]);
        assert!(v.coeffs[1][0].is_zero());
        let zero = m.phi_lambda(&[FunctionAlgebraElement::zero(2)]).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn pfister_small() {
        for n in 1..=3 {
            let cm = build_hyperoctahedral(n, DEFAULT_MAX_ORDER).unwrap();
            let r = verify_pfister(&cm, &SplitParams::seeded_triple(n, 11), 2, 11).unwrap();
            assert!(r.passed, "{r:?}");
            assert_eq!(r.dimension, 1 << n);
        }
        // N = 1: Q_Λ is twice the identity
        let cm = build_hyperoctahedral(1, DEFAULT_MAX_ORDER).unwrap();
        let r = verify_pfister(&cm, &[params(&[(7, 2)])], 1, 0).unwrap();
        assert_eq!(r.gram, vec![vec!["2", "0"], vec!["0", "2"]]);
    }

    #[test]
    fn phi_lambda_rejects_non_invariant_input() {
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        let m = SplitModel::new(&cm, params(&[(1, 1), (2, 1)])).unwrap();
        let mut x = FunctionAlgebraElement::zero(8);
        x.values[1] = GaussQ::one();
        let comps: Vec<FunctionAlgebraElement> = (0..cm.lambda().len()).map(|_| x.clone()).collect();
        assert!(m.phi_lambda(&comps).is_err());
    }
}
