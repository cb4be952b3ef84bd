//! The dihedral group of order `4n` with `α^n = ι`, acting on the `n`
//! cosets `α^j H₀`.

use serde::Serialize;

use crate::characters::{ClassValue, SignCharacterSpec};
use crate::cm_structure::{CmGroup, CmType};
use crate::error::{Error, Result};
use crate::signed_perm::{Bits, Group, Perm, SignedPerm, Subgroup};

pub const MAX_DIHEDRAL_N: usize = 16;

/// Image of `α^i` for `0 ≤ i ≤ n`: signs `1^i 0^{n-i}`, permutation
/// `(1 2 … n)^i`.
pub fn alpha_power_image(n: usize, i: usize) -> SignedPerm {
    assert!(i <= n);
    let sign = Bits::from_positions(0..i, n);
    let images: Vec<usize> = (0..n).map(|j| (j + i) % n).collect();
    SignedPerm::new(sign, Perm::from_images(&images).expect("rotation")).expect("same degree")
}

/// Image of `α^i β` for `0 ≤ i < n`: signs `0^{i+1} 1^{n-i-1}`, permutation
/// the product of the transpositions `(a, i+2-a)` for `1 ≤ a ≤ ⌊(i+1)/2⌋`
/// and `(a, n+i+2-a)` for `i+2 ≤ a ≤ ⌊(n+i+1)/2⌋`.
pub fn alpha_power_beta_image(n: usize, i: usize) -> SignedPerm {
    assert!(i < n);
    let sign = Bits::from_positions(i + 1..n, n);
    let mut pairs = Vec::new();
    for a in 1..=i.div_ceil(2) {
        pairs.push((a, i + 2 - a));
    }
    for a in i + 2..=(n + i).div_ceil(2) {
        pairs.push((a, n + i + 2 - a));
    }
    let perm = Perm::from_transpositions(n, &pairs).expect("disjoint transpositions");
    SignedPerm::new(sign, perm).expect("same degree")
}

/// 2-adic valuation.
pub fn k0(n: usize) -> u32 {
    n.trailing_zeros()
}

/// A dihedral CM group together with the positions of `α` and `β`.
#[derive(Debug)]
pub struct Dihedral {
    n: usize,
    cm: CmGroup,
    alpha: usize,
    beta: usize,
}

impl Dihedral {
    pub fn build(n: usize, max_order: usize) -> Result<Dihedral> {
        if n < 2 {
            return Err(Error::input(format!("dihedral family needs n ≥ 2, got {n}")));
        }
        if n > MAX_DIHEDRAL_N {
            return Err(Error::resource("dihedral n", MAX_DIHEDRAL_N, n));
        }
        let a = alpha_power_image(n, 1);
        let b = alpha_power_beta_image(n, 0);
        let group = Group::close(n, &[a, b], max_order)?;
        if group.order() != 4 * n {
            return Err(Error::Model(format!(
                "dihedral images generate a group of order {}, expected {}",
                group.order(),
                4 * n
            )));
        }
        let alpha = group.index_of(&a).expect("generator");
        let beta = group.index_of(&b).expect("generator");
        let cm = CmGroup::validate(group)?;
        let d = Dihedral { n, cm, alpha, beta };
        let g = d.cm.group();
        d.check_relations()?;
        d.check_formulas()?;
        let expected = Subgroup::new(g, [g.identity(), d.alpha_power_beta(n - 1)])?;
        if d.cm.reflex_subgroup(CmType::base(n)) != expected {
            return Err(Error::Model("H*(Φ₀) differs from {id, α^{n-1}β}".into()));
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cm(&self) -> &CmGroup {
        &self.cm
    }

    pub fn into_cm(self) -> CmGroup {
        self.cm
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    /// Position of `α^i`, any integer `i`.
    pub fn alpha_power(&self, i: i64) -> usize {
        let g = self.cm.group();
        let e = i.rem_euclid(2 * self.n as i64) as usize;
        (0..e).fold(g.identity(), |acc, _| g.mul(acc, self.alpha))
    }

    pub fn alpha_power_beta(&self, i: usize) -> usize {
        let g = self.cm.group();
        g.mul(self.alpha_power(i as i64), self.beta)
    }

    fn check_relations(&self) -> Result<()> {
        let g = self.cm.group();
        let n = self.n as i64;
        let ok = self.alpha_power(2 * n) == g.identity()
            && (1..2 * n).all(|k| self.alpha_power(k) != g.identity())
            && self.alpha_power(n) == self.cm.iota()
            && g.mul(self.beta, self.beta) == g.identity()
            && g.conjugate(self.beta, self.alpha) == g.inv(self.alpha);
        if ok {
            Ok(())
        } else {
            Err(Error::Model("dihedral relations fail in the image".into()))
        }
    }

    fn check_formulas(&self) -> Result<()> {
        let g = self.cm.group();
        for i in 0..=self.n {
            if g.element(self.alpha_power(i as i64)) != &alpha_power_image(self.n, i) {
                return Err(Error::Model(format!("image formula for α^{i} disagrees")));
            }
        }
        for i in 0..self.n {
            if g.element(self.alpha_power_beta(i)) != &alpha_power_beta_image(self.n, i) {
                return Err(Error::Model(format!("image formula for α^{i}β disagrees")));
            }
        }
        Ok(())
    }

    /// Elements lying in `H*(Φ_f)` for at least one `f`.
    fn in_some_reflex(&self) -> Vec<bool> {
        let n = self.n;
        let g = self.cm.group();
        (0..g.order())
            .map(|x| (0..1u32 << n).any(|w| self.cm.cocycle(CmType(Bits::new(w, n)), g.element(x)).is_zero()))
            .collect()
    }
}

pub fn build_dihedral(n: usize, max_order: usize) -> Result<CmGroup> {
    Ok(Dihedral::build(n, max_order)?.into_cm())
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub k0: u32,
    /// Exponents `i` in `0..2n` with `α^i` in some reflex subgroup.
    pub rotations_in_reflex: Vec<usize>,
    /// Exponents `i` in `0..n` with `α^i β` in some reflex subgroup.
    pub reflections_in_reflex: Vec<usize>,
    pub passed: bool,
}

/// Which rotations and reflections fix some CM-type, against the predicted
/// rules `2^{k₀+1} | i` and `i` odd. These rules concern even `n`.
pub fn classification_check(d: &Dihedral) -> Result<ClassificationReport> {
    let n = d.n;
    if n % 2 == 1 {
        return Err(Error::input(format!(
            "classification rules concern even n, got {n}"
        )));
    }
    let hit = d.in_some_reflex();
    let rotations: Vec<usize> = (0..2 * n).filter(|&i| hit[d.alpha_power(i as i64)]).collect();
    let reflections: Vec<usize> = (0..n).filter(|&i| hit[d.alpha_power_beta(i)]).collect();
    let step = 1usize << (k0(n) + 1);
    // the parity rule for α^i β is stated for i mod 2n
    let reflections_all: Vec<usize> = (0..2 * n)
        .filter(|&i| {
            let x = d.cm.group().mul(d.alpha_power(i as i64), d.beta);
            hit[x]
        })
        .collect();
    let passed = rotations == (0..2 * n).filter(|i| i % step == 0).collect::<Vec<_>>()
        && reflections_all == (0..2 * n).filter(|i| i % 2 == 1).collect::<Vec<_>>();
    Ok(ClassificationReport {
        n,
        k0: k0(n),
        rotations_in_reflex: rotations,
        reflections_in_reflex: reflections,
        passed,
    })
}

/// Counts for one divisor `j` of the odd part of `n`.
#[derive(Debug, Clone, Serialize)]
pub struct DivisorCounts {
    pub j: usize,
    pub s: usize,
    pub s_tilde: usize,
    pub t: usize,
    pub t_tilde: usize,
    /// Subsets whose minimal period is exactly `2^{k₀} j`.
    pub s_exact_period: usize,
    pub s_equals_2t: bool,
    pub s_tilde_equals_t_tilde: bool,
    /// The symmetry-condition descriptions select the same subsets as the
    /// group-action descriptions.
    pub restated_agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountsReport {
    pub n: usize,
    pub k0: u32,
    pub divisors: Vec<DivisorCounts>,
    pub total_s: usize,
    pub passed: bool,
}

/// Least `p > 0` with `I + p = I` (cyclic shift on `n` points).
pub fn minimal_period(subset: Bits) -> usize {
    let n = subset.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && rotate(subset, p) == subset)
        .expect("p = n always works")
}

fn rotate(subset: Bits, k: usize) -> Bits {
    let n = subset.len();
    Bits::from_positions(subset.positions().map(|i| (i + k) % n), n)
}

fn odd_part(mut x: usize) -> usize {
    while x.is_multiple_of(2) {
        x /= 2;
    }
    x
}

/// Brute-force counts `s_j, s̃_j, t_j, t̃_j`. `S_j` is the set of subsets
/// fixed by `α^{2^{k₀} j}` but by no `α^{2^{k₀} j₀}` for a proper divisor
/// `j₀` of `j`, which amounts to: the odd part of the minimal period is `j`.
pub fn dihedral_counts(n: usize) -> Result<CountsReport> {
    if n % 2 == 1 {
        return Err(Error::input(format!(
            "the counting identities concern even n; n = {n} is the ⟨ι⟩×G₀ case"
        )));
    }
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    if n > MAX_DIHEDRAL_N {
        return Err(Error::resource("dihedral n", MAX_DIHEDRAL_N, n));
    }
    let k = k0(n);
    let m = n >> k;
    let mirror = |i: usize| n - 1 - i; // i ↦ n - i + 1, 1-based
    let beta = |i: usize| (n - i) % n; // i ↦ n - i + 2 mod n, 1-based
    let subsets: Vec<Bits> = (0..1u32 << n).map(|w| Bits::new(w, n)).collect();
    let periods: Vec<usize> = subsets.iter().map(|&s| minimal_period(s)).collect();
    let mut divisors = Vec::new();
    for j in (1..=m).filter(|j| m.is_multiple_of(*j)) {
        let block = (1usize << k) * j;
        let mut c = DivisorCounts {
            j,
            s: 0,
            s_tilde: 0,
            t: 0,
            t_tilde: 0,
            s_exact_period: 0,
            s_equals_2t: false,
            s_tilde_equals_t_tilde: false,
            restated_agree: true,
        };
        for (s, &p) in subsets.iter().zip(&periods) {
            if p == block {
                c.s_exact_period += 1;
            }
            // group-action description
            let fixed = |q: usize| rotate(*s, q) == *s;
            let in_s = fixed(block) && (1..j).filter(|d| j % d == 0).all(|d| !fixed((1 << k) * d));
            if in_s != (odd_part(p) == j) {
                c.restated_agree = false;
            }
            if !in_s {
                continue;
            }
            let odd = s.count_ones() % 2 == 1;
            let mirror_fixed = s.positions().all(|i| s.get(mirror(i)));
            let beta_fixed = s.positions().all(|i| s.get(beta(i)));
            c.s += 1;
            c.s_tilde += mirror_fixed as usize;
            c.t += odd as usize;
            c.t_tilde += (odd && beta_fixed) as usize;
            // symmetry-condition descriptions
            let first_block_odd = s.positions().filter(|&i| i < block).count() % 2 == 1;
            let pair_rule = (1..n / 2).all(|i| s.get(i) == s.get(beta(i)));
            let t_tilde_restated = (s.get(0) != s.get(n / 2)) && pair_rule;
            if first_block_odd != odd || t_tilde_restated != (odd && beta_fixed) {
                c.restated_agree = false;
            }
        }
        c.s_equals_2t = c.s == 2 * c.t;
        c.s_tilde_equals_t_tilde = c.s_tilde == c.t_tilde;
        divisors.push(c);
    }
    let total_s = divisors.iter().map(|d| d.s).sum();
    let passed = total_s == 1 << n
        && divisors
            .iter()
            .all(|d| d.s_equals_2t && d.s_tilde_equals_t_tilde && d.restated_agree);
    Ok(CountsReport {
        n,
        k0: k,
        divisors,
        total_s,
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct InducedSignReport {
    pub n: usize,
    pub k0: u32,
    /// `Ind` from `H₀` of the sign character with kernel `H`.
    pub from_h0: Vec<ClassValue>,
    /// `Ind` from `H*₀(Φ₀)` of the sign character with kernel `H*(Φ₀)`.
    pub from_reflex: Vec<ClassValue>,
    pub equal: bool,
    /// `H` and `H*(Φ₀)` are not conjugate in `G`.
    pub not_conjugate: bool,
    pub passed: bool,
}

/// Compares the two induced sign characters for even `n` and checks that
/// `H` and `H*(Φ₀)` are not conjugate.
pub fn dihedral_character_check(n: usize, max_order: usize) -> Result<InducedSignReport> {
    if n % 2 == 1 {
        return Err(Error::input(format!(
            "n = {n} is odd; that case is covered by the ⟨ι⟩×G₀ family"
        )));
    }
    let d = Dihedral::build(n, max_order)?;
    let cm = d.cm();
    let g = cm.group();
    let f0 = CmType::base(n);
    let left = SignCharacterSpec::new(cm.h0().clone(), cm.h().clone())?.induce(g);
    let right = SignCharacterSpec::new(cm.reflex_subgroup0(f0), cm.reflex_subgroup(f0))?.induce(g);
    let hstar = cm.reflex_subgroup(f0);
    let not_conjugate = (0..g.order()).all(|x| cm.h().conjugated(g, x) != hstar);
    let equal = left == right;
    Ok(InducedSignReport {
        n,
        k0: k0(n),
        from_h0: left.to_table(),
        from_reflex: right.to_table(),
        equal,
        not_conjugate,
        passed: equal && not_conjugate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::DEFAULT_MAX_ORDER;

    #[test]
    fn order_and_reflex_of_base_type() {
        for n in 2..=8 {
            let d = Dihedral::build(n, DEFAULT_MAX_ORDER).unwrap();
            assert_eq!(d.cm().order(), 4 * n);
            assert_eq!(d.cm().degree(), n);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(Dihedral::build(1, DEFAULT_MAX_ORDER).unwrap_err().exit_code(), 2);
        assert_eq!(Dihedral::build(17, DEFAULT_MAX_ORDER).unwrap_err().exit_code(), 3);
        assert_eq!(dihedral_counts(5).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn beta_formula_at_four() {
        // β: 1 ↦ 1, 2 ↔ 4, 3 ↦ 3; signs 0111
        let b = alpha_power_beta_image(4, 0);
        assert_eq!(b.to_string(), "signs=0111 perm=1 4 3 2");
        let r = alpha_power_beta_image(4, 3);
        assert_eq!(r.to_string(), "signs=0000 perm=4 3 2 1");
    }

    #[test]
    fn classification_rules() {
        for n in [2, 4, 6, 8, 10] {
            let d = Dihedral::build(n, DEFAULT_MAX_ORDER).unwrap();
            assert!(classification_check(&d).unwrap().passed, "n = {n}");
        }
        let d = Dihedral::build(3, DEFAULT_MAX_ORDER).unwrap();
        assert!(classification_check(&d).is_err());
    }

    #[test]
    fn counts_partition_and_identities() {
        for n in [2, 4, 6, 8, 10, 12] {
            let r = dihedral_counts(n).unwrap();
            assert_eq!(r.total_s, 1 << n);
            assert!(r.passed, "n = {n}: {r:?}");
        }
    }

    #[test]
    fn characters_agree_for_even_n() {
        for n in [2, 4, 6, 8] {
            let r = dihedral_character_check(n, DEFAULT_MAX_ORDER).unwrap();
            assert!(r.passed, "n = {n}");
        }
        assert_eq!(
            dihedral_character_check(5, DEFAULT_MAX_ORDER)
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn periods() {
        assert_eq!(minimal_period(Bits::parse("1010").unwrap()), 2);
        assert_eq!(minimal_period(Bits::parse("1111").unwrap()), 1);
        assert_eq!(minimal_period(Bits::parse("1000").unwrap()), 4);
    }
}
