mod common;

use common::{all_ne, is_ne};
use eqtransfer::corpus::{self, ClaimKind, CorpusError, VerifyOptions, INDEX};
use eqtransfer::random::seeded;
use eqtransfer::PreferenceProfile;

#[test]
fn every_executable_entry_verifies() {
    let options = VerifyOptions::default();
    for entry in INDEX {
        match corpus::build(entry.name) {
            Ok(built) => {
                assert!(entry.executable, "{}", entry.name);
                let report = corpus::verify(&built, &options);
                assert!(report.all_passed(), "{report}");
                assert_eq!(report.results.len(), built.claims.len());
            }
            Err(e) => {
                assert!(!entry.executable, "{}: {e}", entry.name);
                assert!(matches!(e, CorpusError::NotExecutable(_)), "{e}");
            }
        }
    }
}

#[test]
fn equilibrium_claims_match_the_reference_search() {
    for name in INDEX
        .iter()
        .filter(|e| e.executable)
        .map(|e| e.name)
        .chain(["prop_5_4:2", "prop_5_4:3"])
    {
        let entry = corpus::build(name).unwrap();
        let st = &entry.structure;
        for claim in &entry.claims {
            match &claim.kind {
                ClaimKind::NoEquilibrium(p) => assert!(all_ne(st, p).is_empty(), "{name}: {}", claim.label),
                ClaimKind::HasEquilibrium(p) => assert!(!all_ne(st, p).is_empty(), "{name}: {}", claim.label),
                ClaimKind::IsEquilibrium { preferences, profile } => {
                    assert!(is_ne(st, preferences, profile.choices()), "{name}: {}", claim.label)
                }
                ClaimKind::NotEquilibrium { preferences, profile } => {
                    assert!(!is_ne(st, preferences, profile.choices()), "{name}: {}", claim.label)
                }
                ClaimKind::ExactEquilibria { preferences, profiles } => {
                    let expected: Vec<Vec<usize>> = profiles.iter().map(|p| p.choices().to_vec()).collect();
                    assert_eq!(all_ne(st, preferences), expected, "{name}: {}", claim.label);
                }
                _ => {}
            }
        }
    }
}

fn short_chain_games_have_equilibria(st: &eqtransfer::GameStructure, samples: usize) {
    let mut rng = seeded(0xc0ffee);
    for _ in 0..samples {
        let prefs: Vec<_> = (0..3)
            .map(|_| corpus::random_short_relation(&mut rng, st.outcomes(), 2))
            .collect();
        let prefs = PreferenceProfile::new(prefs).unwrap();
        assert!(!all_ne(st, &prefs).is_empty());
    }
}

fn no_equilibrium_preferences(name: &str) -> PreferenceProfile {
    corpus::build(name)
        .unwrap()
        .claims
        .into_iter()
        .find_map(|c| match c.kind {
            ClaimKind::NoEquilibrium(p) => Some(p),
            _ => None,
        })
        .expect("entry has a no-equilibrium claim")
}

#[test]
fn small_counterexamples_fail_only_on_long_chains() {
    let small = corpus::remark_5_3_structure();
    assert!(all_ne(&small, &no_equilibrium_preferences("remark_5_3")).is_empty());
    short_chain_games_have_equilibria(&small, 300);

    let cube = corpus::prop_5_4_structure(2).unwrap();
    assert!(all_ne(&cube, &corpus::prop_5_4_preferences(2).unwrap()).is_empty());
    assert_eq!(
        corpus::prop_5_4_preferences(2).unwrap(),
        no_equilibrium_preferences("prop_5_4:2")
    );
    short_chain_games_have_equilibria(&cube, 300);
}

#[test]
fn parameter_errors_are_reported() {
    assert!(matches!(corpus::build("prop_5_4:1"), Err(CorpusError::BadParameter(_))));
    assert!(matches!(corpus::build("prop_5_4:x"), Err(CorpusError::BadParameter(_))));
    assert!(matches!(corpus::build("unknown"), Err(CorpusError::UnknownName(_))));
}
