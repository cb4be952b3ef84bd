//! Runs the verification checks over a list of families and assembles the report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::dihedral::{
    classification_check, dihedral_character_check, dihedral_counts, k0, Dihedral,
};
use crate::catalog::FamilySpec;
use crate::characters::{verify_character_identity, verify_decomposition_lemma};
use crate::cm_structure::{verify_cocycle_suite, verify_orbit_sum, CmGroup, CmType};
use crate::error::{Error, Result};
use crate::group_algebra::{
    verify_block_norms, verify_block_pairs, verify_composite_norm, verify_half_norm_sum,
    verify_norm_isomorphism, verify_product_identity,
};
use crate::report::{CheckRecord, GroupRecord, RunReport, Status};
use crate::split_model::{verify_pfister, SplitParams, MAX_PFISTER_DEGREE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckKind {
    Structure,
    CharacterIdentity,
    Norms,
    Lemmas,
    Pfister,
    Dihedral,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Structure,
        CheckKind::CharacterIdentity,
        CheckKind::Norms,
        CheckKind::Lemmas,
        CheckKind::Pfister,
        CheckKind::Dihedral,
    ];

    pub fn id(self) -> &'static str {
        match self {
            CheckKind::Structure => "structure",
            CheckKind::CharacterIdentity => "character-identity",
            CheckKind::Norms => "norms",
            CheckKind::Lemmas => "lemmas",
            CheckKind::Pfister => "pfister",
            CheckKind::Dihedral => "dihedral",
        }
    }

    /// Parses check names; `all` expands to every check.
    pub fn parse_list<S: AsRef<str>>(names: &[S]) -> Result<Vec<CheckKind>> {
        let mut out = Vec::new();
        for name in names {
            let name = name.as_ref();
            if name == "all" {
                out.extend(Self::ALL);
                continue;
            }
            let k = Self::ALL
                .into_iter()
                .find(|k| k.id() == name)
                .ok_or_else(|| Error::input(format!("unknown check {name:?}")))?;
            out.push(k);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub command: String,
    pub families: Vec<FamilySpec>,
    pub checks: Vec<CheckKind>,
    /// Checks that do not apply to a family (or exceed a per-check cap) are
    /// recorded as skipped instead of aborting the run.
    pub lenient: bool,
    pub seed: u64,
    pub trials: usize,
    pub max_group_order: usize,
    pub e: Option<SplitParams>,
    pub timings: bool,
}

struct Outcome {
    status: Status,
    parameters: BTreeMap<String, Value>,
    note: Option<String>,
    details: Value,
}

impl Outcome {
    fn new(passed: bool, details: impl Serialize) -> Self {
        Outcome {
            status: Status::from_passed(passed),
            parameters: BTreeMap::new(),
            note: None,
            details: serde_json::to_value(details).expect("report serializes"),
        }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.into(), serde_json::to_value(value).expect("serializes"));
        self
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

pub fn run(opts: &RunOptions) -> Result<RunReport> {
    if opts.families.is_empty() {
        return Err(Error::input("no group family selected"));
    }
    if opts.checks.is_empty() {
        return Err(Error::input("no check selected"));
    }
    if opts.trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let mut report = RunReport::new(opts.command.clone(), opts.seed, opts.trials, opts.max_group_order);
    for spec in &opts.families {
        let cm = spec.build(opts.max_group_order)?;
        let mut record = GroupRecord {
            family: spec.label(),
            degree: cm.degree(),
            order: cm.order(),
            checks: Vec::new(),
        };
        for &kind in &opts.checks {
            let start = Instant::now();
            let outcome = match run_check(kind, spec, &cm, opts) {
                Ok(o) => o,
                Err(e @ (Error::Input(_) | Error::Resource { .. })) if opts.lenient => Outcome {
                    status: Status::Skipped,
                    parameters: BTreeMap::new(),
                    note: Some(e.to_string()),
                    details: Value::Null,
                },
                Err(e) => return Err(e),
            };
            record.checks.push(CheckRecord {
                id: kind.id().into(),
                status: outcome.status,
                parameters: outcome.parameters,
                note: outcome.note,
                wall_ms: opts.timings.then(|| start.elapsed().as_millis() as u64),
                details: outcome.details,
            });
        }
        report.groups.push(record);
    }
    report.finish();
    Ok(report)
}

fn run_check(kind: CheckKind, spec: &FamilySpec, cm: &CmGroup, opts: &RunOptions) -> Result<Outcome> {
    match kind {
        CheckKind::Structure => {
            let orbits = verify_orbit_sum(cm);
            let cocycle = verify_cocycle_suite(cm);
            Ok(Outcome::new(
                orbits.passed && cocycle.passed,
                json!({ "orbit_sum": orbits, "cocycle": cocycle }),
            ))
        }
        CheckKind::CharacterIdentity => {
            let identity = verify_character_identity(cm);
            let (decomposition, note) = match verify_decomposition_lemma(cm, opts.max_group_order) {
                Ok(r) => (Some(r), None),
                Err(e @ Error::Resource { .. }) => (None, Some(format!("decomposition skipped: {e}"))),
                Err(e) => return Err(e),
            };
            let passed = identity.passed && decomposition.as_ref().is_none_or(|d| d.passed);
            let mut o = Outcome::new(
                passed,
                json!({ "identity": identity, "decomposition": decomposition }),
            );
            if let Some(n) = note {
                o = o.note(n);
            }
            Ok(o)
        }
        CheckKind::Norms => {
            let prop = verify_composite_norm(cm);
            let sums = verify_half_norm_sum(cm);
            let general = verify_block_norms(cm);
            let passed = prop.passed && sums.iter().all(|s| s.passed) && general.passed;
            Ok(Outcome::new(
                passed,
                json!({ "half_norm_composite": prop, "half_norm_sum": sums, "blocks": general }),
            ))
        }
        CheckKind::Lemmas => {
            let pairs = verify_block_pairs(cm);
            let product = verify_product_identity(cm, opts.trials, opts.seed)?;
            let iso = verify_norm_isomorphism(cm)?;
            let mut o = Outcome::new(
                pairs.passed && product.passed && iso.passed,
                json!({ "pairs": pairs, "product_identity": product, "isomorphism": iso }),
            )
            .param("seed", opts.seed)
            .param("trials", opts.trials);
            if pairs.off_diagonal_nonzero > 0 {
                o = o.note(format!(
                    "{} off-diagonal blocks vanish only modulo ι + 1",
                    pairs.off_diagonal_nonzero
                ));
            }
            Ok(o)
        }
        CheckKind::Pfister => {
            let n = cm.degree();
            if n > MAX_PFISTER_DEGREE {
                return Err(Error::resource("Pfister degree", MAX_PFISTER_DEGREE, n));
            }
            let params = match &opts.e {
                Some(p) if p.len() != n => {
                    return Err(Error::input(format!(
                        "split parameters have {} entries but the degree is {n}",
                        p.len()
                    )))
                }
                Some(p) => vec![p.clone()],
                None => SplitParams::seeded_triple(n, opts.seed),
            };
            let r = verify_pfister(cm, &params, opts.trials, opts.seed)?;
            let e: Vec<Vec<String>> = params.iter().map(|p| p.render()).collect();
            Ok(Outcome::new(r.passed, r)
                .param("seed", opts.seed)
                .param("trials", opts.trials)
                .param("e", e))
        }
        CheckKind::Dihedral => {
            let FamilySpec::Dihedral { n } = spec else {
                return Err(Error::input("dihedral checks need the dihedral family"));
            };
            let n = *n;
            // H*(Φ₀) = {id, α^{n-1}β} is enforced while building
            let d = Dihedral::build(n, opts.max_group_order)?;
            let g = d.cm().group();
            let reflex_base: Vec<String> = d
                .cm()
                .reflex_subgroup(CmType::base(n))
                .members()
                .iter()
                .map(|&x| g.element(x).to_string())
                .collect();
            let classification = classification_check(&d)?;
            let counts = dihedral_counts(n)?;
            let characters = dihedral_character_check(n, opts.max_group_order)?;
            Ok(Outcome::new(
                classification.passed && counts.passed && characters.passed,
                json!({
                    "k0": k0(n),
                    "reflex_base": reflex_base,
                    "classification": classification,
                    "counts": counts,
                    "characters": characters,
                }),
            )
            .param("n", n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_perm::DEFAULT_MAX_ORDER;

    fn opts(families: Vec<FamilySpec>, checks: &[&str], lenient: bool) -> RunOptions {
        RunOptions {
            command: "test".into(),
            families,
            checks: CheckKind::parse_list(checks).unwrap(),
            lenient,
            seed: 5,
            trials: 2,
            max_group_order: DEFAULT_MAX_ORDER,
            e: None,
            timings: false,
        }
    }

    #[test]
    fn parse_checks() {
        assert_eq!(CheckKind::parse_list(&["all"]).unwrap().len(), 6);
        assert_eq!(
            CheckKind::parse_list(&["norms", "structure", "norms"]).unwrap(),
            vec![CheckKind::Structure, CheckKind::Norms]
        );
        assert!(CheckKind::parse_list(&["nope"]).is_err());
    }

    #[test]
    fn all_checks_on_b2() {
        let r = run(&opts(vec![FamilySpec::Hyperoctahedral { n: 2 }], &["all"], true)).unwrap();
        assert_eq!(r.status, Status::Pass);
        let statuses: Vec<Status> = r.groups[0].checks.iter().map(|c| c.status).collect();
        assert_eq!(statuses[..5], [Status::Pass; 5]);
        assert_eq!(statuses[5], Status::Skipped);
    }

    #[test]
    fn strict_mode_propagates_inapplicable_checks() {
        let err = run(&opts(
            vec![FamilySpec::Hyperoctahedral { n: 2 }],
            &["dihedral"],
            false,
        ))
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        let err = run(&opts(vec![FamilySpec::Dihedral { n: 8 }], &["pfister"], false)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn dihedral_check() {
        let r = run(&opts(vec![FamilySpec::Dihedral { n: 4 }], &["dihedral"], false)).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(
            r.groups[0].checks[0].details["reflex_base"]
                .as_array()
                .unwrap()
                .len(),
            2
        );
    }
}
