//! The product identity for dual half norms and the isomorphism it induces,
//! both checked in the function model `Map(G, Q)`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cm_structure::{CmGroup, CmType, Subset};
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::rational::{ratio, Q};
use crate::signed_perm::{Bits, CosetDecomposition, Group, Subgroup};

/// `Map(G, Q)` with `(σ·x)_τ = x_{τσ}` and the componentwise product.
/// A vector is fixed by `S` exactly when it is constant on left cosets `τS`.
#[derive(Debug, Clone, Copy)]
pub struct FunctionModel<'g> {
    group: &'g Group,
}

impl<'g> FunctionModel<'g> {
    pub fn new(group: &'g Group) -> Self {
        FunctionModel { group }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn act<T: Clone>(&self, sigma: usize, x: &[T]) -> Vec<T> {
        (0..x.len())
            .map(|t| x[self.group.mul(t, sigma)].clone())
            .collect()
    }

    pub fn is_invariant<T: Clone + PartialEq>(&self, s: &Subgroup, x: &[T]) -> bool {
        s.members().iter().all(|&h| self.act(h, x) == x)
    }

    /// `ι·x = -x`.
    pub fn is_iota_odd(&self, iota: usize, x: &[Q]) -> bool {
        (0..x.len()).all(|t| x[self.group.mul(t, iota)] == -x[t].clone())
    }
}

/// `Σ_ψ (-1)^{|w_ψ ∩ I|} ψ·a` over a list of `(ψ, w_ψ)`.
fn signed_sum_i128(g: &Group, terms: &[(usize, u32)], subset: u32, a: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len()];
    for &(psi, w) in terms {
        let neg = (w & subset).count_ones() & 1 == 1;
        for (t, o) in out.iter_mut().enumerate() {
            let v = a[g.mul(t, psi)];
            if neg {
                *o -= v;
            } else {
                *o += v;
            }
        }
    }
    out
}

fn signed_sum_q(g: &Group, terms: &[(usize, u32)], subset: u32, a: &[Q], scale: &Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len()];
    for &(psi, w) in terms {
        let neg = (w & subset).count_ones() & 1 == 1;
        for (t, o) in out.iter_mut().enumerate() {
            let v = &a[g.mul(t, psi)] * scale;
            if neg {
                *o -= v;
            } else {
                *o += v;
            }
        }
    }
    out
}

/// Left-coset representatives `ψ` of `H*(Φ_f)` paired with `twist + r_{Φ_f}(ψ)`.
fn dual_terms(cm: &CmGroup, f: CmType, twist: Bits) -> Vec<(usize, u32)> {
    let g = cm.group();
    let cosets = CosetDecomposition::left(g, &cm.reflex_subgroup(f)).expect("subgroup");
    cosets
        .reps()
        .iter()
        .map(|&psi| (psi, cm.cocycle(f, g.element(psi)).xor(twist).word()))
        .collect()
}

/// `N_{Φ_f(I)*}(a) = ½ Σ_{ψ ∈ G/H*(Φ_f)} (-1)^{Σ_I r_{Φ_f}(ψ)} ψ·a` in the function model.
pub fn dual_half_norm_apply(cm: &CmGroup, f: CmType, subset: Subset, a: &[Q]) -> Vec<Q> {
    let terms = dual_terms(cm, f, Bits::zeros(cm.degree()));
    signed_sum_q(cm.group(), &terms, subset.word(), a, &ratio(1, 2))
}

/// `N_{Φ_f(I)}(a) = ½ Σ_{ψ ∈ H(I)\G} (-1)^{Σ_I r_{Φ_f}(ψ)} ψ⁻¹·a` in the function model.
pub fn half_norm_apply(cm: &CmGroup, f: CmType, subset: Subset, a: &[Q]) -> Vec<Q> {
    let g = cm.group();
    let cosets = CosetDecomposition::right(g, &cm.h_of_subset(subset)).expect("subgroup");
    let terms: Vec<(usize, u32)> = cosets
        .reps()
        .iter()
        .map(|&psi| (g.inv(psi), cm.cocycle(f, g.element(psi)).word()))
        .collect();
    signed_sum_q(g, &terms, subset.word(), a, &ratio(1, 2))
}

/// Both sides of the product identity at `I'`, straight from the definition.
pub fn product_identity_sides(
    cm: &CmGroup,
    f: CmType,
    f_prime: CmType,
    a: &[Q],
    b: &[Q],
    i_prime: Subset,
) -> (Vec<Q>, Vec<Q>) {
    let n = cm.degree();
    let g = cm.group();
    let mut lhs = vec![Q::zero(); g.order()];
    for w in 0..1u32 << n {
        let i = Bits::new(w, n);
        let j = i.xor(i_prime);
        let neg = f.bits().parity_on(i) ^ f_prime.bits().parity_on(j);
        let x = dual_half_norm_apply(cm, f, i, a);
        let y = dual_half_norm_apply(cm, f_prime, j, b);
        for t in 0..lhs.len() {
            let p = &x[t] * &y[t];
            if neg {
                lhs[t] -= p;
            } else {
                lhs[t] += p;
            }
        }
    }
    let rhs = match (0..g.order()).find(|&s| cm.star(g.element(s), f_prime) == f) {
        None => vec![Q::zero(); g.order()],
        Some(sigma) => {
            let sb = FunctionModel::new(g).act(sigma, b);
            let ab: Vec<Q> = a.iter().zip(&sb).map(|(x, y)| x * y).collect();
            let scale = crate::rational::pow2(n as i32 - 1);
            let sign = if f.bits().parity_on(i_prime) {
                -scale
            } else {
                scale
            };
            dual_half_norm_apply(cm, f, i_prime, &ab)
                .into_iter()
                .map(|x| x * &sign)
                .collect()
        }
    };
    (lhs, rhs)
}

/// In-place Walsh–Hadamard transform along the subset axis.
fn walsh_hadamard(v: &mut [Vec<i128>]) {
    let mut h = 1;
    while h < v.len() {
        for start in (0..v.len()).step_by(2 * h) {
            for k in start..start + h {
                let (lo, hi) = v.split_at_mut(k + h);
                for (x, y) in lo[k].iter_mut().zip(hi[0].iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = a + b;
                    *y = a - b;
                }
            }
        }
        h *= 2;
    }
}

/// Common denominator of the random draws (denominators lie in `1..=4`).
const DRAW_DENOMINATOR: i128 = 12;

/// A random `S`-invariant function scaled by `DRAW_DENOMINATOR` to integers.
fn draw_invariant(rng: &mut ChaCha8Rng, cosets: &CosetDecomposition, order: usize) -> Vec<i128> {
    let values: Vec<i128> = (0..cosets.len())
        .map(|_| {
            let num: i128 = rng.random_range(-5..=5);
            let den: i128 = rng.random_range(1..=4);
            num * DRAW_DENOMINATOR / den
        })
        .collect();
    (0..order).map(|t| values[cosets.coset_of(t)]).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductFailure {
    pub f: String,
    pub f_prime: String,
    pub subset: String,
    pub trial: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductIdentityReport {
    pub seed: u64,
    pub trials: usize,
    pub pairs: usize,
    /// Number of `(pair, draw, I')` identities checked, each over all of `G`.
    pub identities_checked: usize,
    /// Pairs in different orbits always gave a zero left side.
    pub cross_orbit_zero: bool,
    /// On `ι`-odd invariants the signed sums agree with the sums over the
    /// coset embeddings `Φ(I)` and `Φ(I)*`.
    pub coset_forms_agree: bool,
    pub failures: Vec<ProductFailure>,
    pub passed: bool,
}

const MAX_LISTED_FAILURES: usize = 10;

/// Checks the product identity on `trials` random draws for every pair of
/// orbit representatives, plus `(f, ι*f)` and `(f, σ*f)` for a random `σ`.
pub fn verify_product_identity(cm: &CmGroup, trials: usize, seed: u64) -> Result<ProductIdentityReport> {
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let g = cm.group();
    let n = cm.degree();
    let model = FunctionModel::new(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = cm.lambda();

    let mut pairs = Vec::new();
    for &f in &lambda {
        for &fp in &lambda {
            pairs.push((f, fp));
        }
        pairs.push((f, cm.star(g.element(cm.iota()), f)));
        let s = rng.random_range(0..g.order());
        pairs.push((f, cm.star(g.element(s), f)));
    }

    let mut identities = 0;
    let mut cross_orbit_zero = true;
    let mut failures = Vec::new();
    let scale = 1i128 << n;
    for &(f, fp) in &pairs {
        let cos_f = CosetDecomposition::left(g, &cm.reflex_subgroup(f))?;
        let cos_fp = CosetDecomposition::left(g, &cm.reflex_subgroup(fp))?;
        let terms_f = dual_terms(cm, f, f.bits());
        let terms_fp = dual_terms(cm, fp, fp.bits());
        let sigma = (0..g.order()).find(|&s| cm.star(g.element(s), fp) == f);
        for trial in 0..trials {
            let a = draw_invariant(&mut rng, &cos_f, g.order());
            let b = draw_invariant(&mut rng, &cos_fp, g.order());
            // twice the signed dual half norms, indexed by subset
            let mut x: Vec<Vec<i128>> = (0..1u32 << n)
                .map(|w| signed_sum_i128(g, &terms_f, w, &a))
                .collect();
            let mut y: Vec<Vec<i128>> = (0..1u32 << n)
                .map(|w| signed_sum_i128(g, &terms_fp, w, &b))
                .collect();
            walsh_hadamard(&mut x);
            walsh_hadamard(&mut y);
            for (xs, ys) in x.iter_mut().zip(&y) {
                for (p, q) in xs.iter_mut().zip(ys) {
                    *p *= q;
                }
            }
            walsh_hadamard(&mut x);
            let rhs_source = sigma.map(|s| {
                let sb = model.act(s, &b);
                a.iter().zip(&sb).map(|(p, q)| p * q).collect::<Vec<i128>>()
            });
            for w in 0..1u32 << n {
                // x[w] is 2^N times the (scaled) left side
                let lhs: Vec<i128> = x[w as usize].iter().map(|v| v / scale).collect();
                debug_assert!(x[w as usize].iter().all(|v| v % scale == 0));
                let rhs = match &rhs_source {
                    Some(ab) => signed_sum_i128(g, &terms_f, w, ab)
                        .into_iter()
                        .map(|v| v * scale)
                        .collect(),
                    None => vec![0; g.order()],
                };
                identities += 1;
                if sigma.is_none() && lhs.iter().any(|v| *v != 0) {
                    cross_orbit_zero = false;
                }
                if lhs != rhs && failures.len() < MAX_LISTED_FAILURES {
                    failures.push(ProductFailure {
                        f: f.to_string(),
                        f_prime: fp.to_string(),
                        subset: Bits::new(w, n).to_string(),
                        trial,
                    });
                }
            }
        }
    }

    let coset_forms_agree = check_coset_forms(cm, &mut rng)?;
    Ok(ProductIdentityReport {
        seed,
        trials,
        pairs: pairs.len(),
        identities_checked: identities,
        cross_orbit_zero,
        coset_forms_agree,
        passed: failures.is_empty() && cross_orbit_zero && coset_forms_agree,
        failures,
    })
}

/// A random `ι`-odd `S`-invariant vector (requires `ι ∉ S`).
fn draw_iota_odd(rng: &mut ChaCha8Rng, g: &Group, iota: usize, cosets: &CosetDecomposition) -> Vec<Q> {
    let mut values: Vec<Option<Q>> = vec![None; cosets.len()];
    for k in 0..cosets.len() {
        if values[k].is_some() {
            continue;
        }
        let partner = cosets.coset_of(g.mul(iota, cosets.reps()[k]));
        let v = ratio(rng.random_range(-5..=5), rng.random_range(1..=4));
        values[partner] = Some(-v.clone());
        values[k] = Some(v);
    }
    (0..g.order())
        .map(|t| values[cosets.coset_of(t)].clone().expect("filled"))
        .collect()
}

/// For odd `I` and `ι`-odd inputs, the signed sums equal the plain sums
/// over `Φ(I) = S_{Φ(I)}/H(I)` and `Φ(I)* = (H*\S_{Φ(I)})⁻¹`.
fn check_coset_forms(cm: &CmGroup, rng: &mut ChaCha8Rng) -> Result<bool> {
    let g = cm.group();
    let model = FunctionModel::new(g);
    for f in cm.lambda() {
        let hstar = cm.reflex_subgroup(f);
        let cos_star = CosetDecomposition::left(g, &hstar)?;
        for &i in cm.jodd_representatives() {
            let data = cm.subset_data(f, i);
            let a = draw_iota_odd(rng, g, cm.iota(), &cos_star);
            let mut plain = vec![Q::zero(); g.order()];
            for &psi in &data.phi_i_star {
                for (p, v) in plain.iter_mut().zip(model.act(g.inv(psi), &a)) {
                    *p += v;
                }
            }
            if plain != dual_half_norm_apply(cm, f, i, &a) {
                return Ok(false);
            }
            let cos_i = CosetDecomposition::left(g, &data.h_i)?;
            let b = draw_iota_odd(rng, g, cm.iota(), &cos_i);
            let mut plain = vec![Q::zero(); g.order()];
            for &phi in &data.phi_i {
                for (p, v) in plain.iter_mut().zip(model.act(phi, &b)) {
                    *p += v;
                }
            }
            if plain != half_norm_apply(cm, f, i, &b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormIsomorphismReport {
    pub expected_dim: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    /// Every image is `H(I)`-invariant and `ι`-odd.
    pub image_in_codomain: bool,
    pub rank: usize,
    pub passed: bool,
}

/// `N_{Λ→J}: ⊕_{Φ∈Λ} M^{H*(Φ)}_{ι-odd} → ⊕_{I∈Jodd} M^{H(I)}_{ι-odd}`,
/// `(b_f) ↦ (Σ_f (-1)^{Σ_I f} N_{Φ_f(I)*}(b_f))_I`, has full rank `2^{N-1}`.
pub fn verify_norm_isomorphism(cm: &CmGroup) -> Result<NormIsomorphismReport> {
    let g = cm.group();
    let iota = cm.iota();
    let model = FunctionModel::new(g);
    let jodd = cm.jodd_representatives().to_vec();
    let h_is: Vec<Subgroup> = jodd.iter().map(|&i| cm.h_of_subset(i)).collect();

    // one coordinate per pair {τH(I), ιτH(I)}
    let mut coords: Vec<(usize, usize)> = Vec::new();
    for (k, h) in h_is.iter().enumerate() {
        let cosets = CosetDecomposition::left(g, h)?;
        for (c, &rep) in cosets.reps().iter().enumerate() {
            if c < cosets.coset_of(g.mul(iota, rep)) {
                coords.push((k, rep));
            }
        }
    }

    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut image_in_codomain = true;
    for f in cm.lambda() {
        let cosets = CosetDecomposition::left(g, &cm.reflex_subgroup(f))?;
        for (c, &rep) in cosets.reps().iter().enumerate() {
            let partner = cosets.coset_of(g.mul(iota, rep));
            if c > partner {
                continue;
            }
            let basis: Vec<Q> = (0..g.order())
                .map(|t| match cosets.coset_of(t) {
                    x if x == c => ratio(1, 1),
                    x if x == partner => ratio(-1, 1),
                    _ => Q::zero(),
                })
                .collect();
            let images: Vec<Vec<Q>> = jodd
                .iter()
                .zip(&h_is)
                .map(|(&i, h)| {
                    let mut y = dual_half_norm_apply(cm, f, i, &basis);
                    if f.bits().parity_on(i) {
                        y.iter_mut().for_each(|v| *v = -v.clone());
                    }
                    if !model.is_invariant(h, &y) || !model.is_iota_odd(iota, &y) {
                        image_in_codomain = false;
                    }
                    y
                })
                .collect();
            rows.push(coords.iter().map(|&(k, t)| images[k][t].clone()).collect());
        }
    }
    let expected_dim = 1usize << (cm.degree() - 1);
    let r = rank(&rows);
    Ok(NormIsomorphismReport {
        expected_dim,
        domain_dim: rows.len(),
        codomain_dim: coords.len(),
        image_in_codomain,
        rank: r,
        passed: rows.len() == expected_dim
            && coords.len() == expected_dim
            && image_in_codomain
            && r == expected_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_hyperoctahedral, build_iota_times_g0};
    use crate::rational::int;
    use crate::signed_perm::{Perm, DEFAULT_MAX_ORDER};

    fn random_invariant_q(cm: &CmGroup, f: CmType, rng: &mut ChaCha8Rng) -> Vec<Q> {
        let cos = CosetDecomposition::left(cm.group(), &cm.reflex_subgroup(f)).unwrap();
        draw_invariant(rng, &cos, cm.order())
            .into_iter()
            .map(|v| Q::new((v as i64).into(), 12.into()))
            .collect()
    }

    #[test]
    fn action_is_left_action() {
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        let g = cm.group();
        let m = FunctionModel::new(g);
        let x: Vec<Q> = (0..g.order()).map(|t| int(t as i64)).collect();
        for s in 0..g.order() {
            for t in 0..g.order() {
                assert_eq!(m.act(s, &m.act(t, &x)), m.act(g.mul(s, t), &x));
            }
        }
    }

    #[test]
    fn imaginary_quadratic_case_by_hand() {
        // N=1, f=f', I'=∅: LHS = N_∅(a)N_∅(b) + N_1(a)N_1(b) with N_∅ = ½(1+ι), N_1 = ½(1-ι)
        let cm = build_hyperoctahedral(1, DEFAULT_MAX_ORDER).unwrap();
        let f = CmType::base(1);
        let a = vec![int(3), int(5)];
        let b = vec![int(2), int(-1)];
        let (lhs, rhs) = product_identity_sides(&cm, f, f, &a, &b, Bits::zeros(1));
        // ½(a+ιa) = 4, ½(b+ιb) = ½; ½(a-ιa) = (-1, 1), ½(b-ιb) = (3/2, -3/2);
        // RHS = ½(ab + ι(ab)) with ab = (6, -5)
        let expect = vec![ratio(1, 2), ratio(1, 2)];
        assert_eq!(lhs, expect);
        assert_eq!(rhs, expect);
    }

    #[test]
    fn zero_b_gives_zero() {
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        let f = CmType::base(2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_invariant_q(&cm, f, &mut rng);
        let b = vec![Q::zero(); cm.order()];
        for w in 0..4 {
            let (lhs, rhs) = product_identity_sides(&cm, f, f, &a, &b, Bits::new(w, 2));
            assert!(lhs.iter().chain(&rhs).all(|v| v.is_zero()));
        }
    }

    #[test]
    fn definition_matches_identity_on_small_groups() {
        let c3 = Perm::from_one_line(&[2, 3, 1]).unwrap();
        let groups = [
            build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap(),
            build_iota_times_g0(3, &[c3], DEFAULT_MAX_ORDER).unwrap(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for cm in &groups {
            let n = cm.degree();
            for f in cm.lambda() {
                for fp in (0..1u32 << n).map(|w| CmType(Bits::new(w, n))) {
                    let a = random_invariant_q(cm, f, &mut rng);
                    let b = random_invariant_q(cm, fp, &mut rng);
                    for w in 0..1u32 << n {
                        let (lhs, rhs) = product_identity_sides(cm, f, fp, &a, &b, Bits::new(w, n));
                        assert_eq!(lhs, rhs, "f={f} f'={fp} I'={w}");
                    }
                }
            }
        }
    }

    #[test]
    fn fast_check_passes_and_is_seeded() {
        for n in 1..=3 {
            let cm = build_hyperoctahedral(n, DEFAULT_MAX_ORDER).unwrap();
            let r = verify_product_identity(&cm, 3, 42).unwrap();
            assert!(r.passed, "{r:?}");
            assert!(r.identities_checked > 0);
        }
        let cm = build_hyperoctahedral(2, DEFAULT_MAX_ORDER).unwrap();
        assert!(verify_product_identity(&cm, 0, 1).is_err());
    }

    #[test]
    fn isomorphism_ranks() {
        for (n, r) in [(1, 1), (2, 2), (3, 4)] {
            let cm = build_hyperoctahedral(n, DEFAULT_MAX_ORDER).unwrap();
            let rep = verify_norm_isomorphism(&cm).unwrap();
            assert!(rep.passed, "{rep:?}");
            assert_eq!(rep.rank, r);
        }
    }
}
