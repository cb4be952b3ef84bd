//! Group families and the fixed catalog used by the verification suites.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::cm_structure::CmGroup;
use crate::error::{Error, Result};
use crate::signed_perm::{parse_generator_file, Bits, Group, Perm, SignedPerm, MAX_DEGREE};

pub mod dihedral;

/// How to build a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilySpec {
    /// The full group `(Z/2)^N ⋊ S_N`.
    Hyperoctahedral { n: usize },
    /// `⟨ι⟩ × G₀` for a transitive permutation group `G₀`, given by 1-based
    /// one-line generators.
    IotaTimesG0 {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    /// The dihedral group of order `4n` acting on `n` positions.
    Dihedral { n: usize },
    /// A generator file.
    File { path: PathBuf },
}

impl FamilySpec {
    pub fn build(&self, max_order: usize) -> Result<CmGroup> {
        match self {
            FamilySpec::Hyperoctahedral { n } => build_hyperoctahedral(*n, max_order),
            FamilySpec::IotaTimesG0 { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|g| Perm::from_one_line(g))
                    .collect::<Result<Vec<_>>>()?;
                build_iota_times_g0(*degree, &perms, max_order)
            }
            FamilySpec::Dihedral { n } => dihedral::build_dihedral(*n, max_order),
            FamilySpec::File { path } => {
                let (degree, gens) = parse_generator_file(path)?;
                CmGroup::validate(Group::close(degree, &gens, max_order)?)
            }
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Hyperoctahedral { n } => format!("hyperoctahedral-{n}"),
            FamilySpec::IotaTimesG0 { degree, generators } => {
                let gens: Vec<String> = generators
                    .iter()
                    .map(|g| g.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                    .collect();
                format!("iota-times-g0-{degree}[{}]", gens.join(";"))
            }
            FamilySpec::Dihedral { n } => format!("dihedral-{n}"),
            FamilySpec::File { path } => format!("file:{}", path.display()),
        }
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("degree must be positive"));
    }
    if n > MAX_DEGREE {
        return Err(Error::resource("degree", MAX_DEGREE, n));
    }
    Ok(())
}

/// `(Z/2)^N ⋊ S_N`, generated by a sign flip, an `N`-cycle and a transposition.
pub fn build_hyperoctahedral(n: usize, max_order: usize) -> Result<CmGroup> {
    check_degree(n)?;
    // 2^N · N! overflows quickly; stop as soon as it passes the cap
    let mut order: usize = 1 << n;
    for k in 2..=n {
        order = order.saturating_mul(k);
        if order > max_order {
            return Err(Error::resource("group order", max_order, order));
        }
    }
    if order > max_order {
        return Err(Error::resource("group order", max_order, order));
    }
    let mut gens = vec![SignedPerm::from_sign(Bits::from_positions([0], n))];
    if n > 1 {
        let cycle: Vec<usize> = (1..n).chain([0]).collect();
        gens.push(SignedPerm::from_perm(Perm::from_images(&cycle)?));
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(SignedPerm::from_perm(Perm::from_images(&swap)?));
    }
    CmGroup::validate(Group::close(n, &gens, max_order)?)
}

/// `⟨ι⟩ × G₀` with `G₀` generated by `g0`.
pub fn build_iota_times_g0(degree: usize, g0: &[Perm], max_order: usize) -> Result<CmGroup> {
    check_degree(degree)?;
    let mut gens = vec![SignedPerm::iota(degree)];
    for p in g0 {
        if p.len() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: p.len(),
            });
        }
        gens.push(SignedPerm::from_perm(*p));
    }
    CmGroup::validate(Group::close(degree, &gens, max_order)?)
}

/// The fixed list of groups every acceptance suite runs on.
pub fn catalog() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Hyperoctahedral { n: 1 },
        FamilySpec::Hyperoctahedral { n: 2 },
        FamilySpec::Hyperoctahedral { n: 3 },
        FamilySpec::Hyperoctahedral { n: 4 },
        FamilySpec::IotaTimesG0 {
            degree: 3,
            generators: vec![vec![2, 3, 1]],
        },
        FamilySpec::IotaTimesG0 {
            degree: 3,
            generators: vec![vec![2, 3, 1], vec![2, 1, 3]],
        },
        FamilySpec::Dihedral { n: 4 },
        FamilySpec::Dihedral { n: 6 },
        FamilySpec::Dihedral { n: 8 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::DEFAULT_MAX_ORDER;

    #[test]
    fn hyperoctahedral_orders() {
        for (n, order) in [(1, 2), (2, 8), (3, 48), (4, 384)] {
            assert_eq!(
                build_hyperoctahedral(n, DEFAULT_MAX_ORDER).unwrap().order(),
                order
            );
        }
        assert_eq!(
            build_hyperoctahedral(9, DEFAULT_MAX_ORDER)
                .unwrap_err()
                .exit_code(),
            3
        );
        assert_eq!(
            build_hyperoctahedral(30, DEFAULT_MAX_ORDER)
                .unwrap_err()
                .exit_code(),
            3
        );
    }

    #[test]
    fn iota_times_c3() {
        let c3 = Perm::from_one_line(&[2, 3, 1]).unwrap();
        let cm = build_iota_times_g0(3, &[c3], DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(cm.order(), 6);
        let t = Perm::from_one_line(&[2, 1, 3]).unwrap();
        let err = build_iota_times_g0(3, &[t], DEFAULT_MAX_ORDER).unwrap_err();
        assert!(matches!(err, Error::InvalidCmGroup(_)));
    }

    #[test]
    fn catalog_builds() {
        let orders: Vec<usize> = catalog()
            .iter()
            .map(|s| s.build(DEFAULT_MAX_ORDER).unwrap().order())
            .collect();
        assert_eq!(orders, vec![2, 8, 48, 384, 6, 12, 16, 24, 32]);
    }
}
