use crosscap::derivation::{builtin_script, builtin_scripts, mutate, mutations, replay, replay_all, replay_all_sequential, DerivationScript, FailureKind};
use crosscap::SurfaceSpec;

fn small_scripts() -> Vec<DerivationScript> {
    let mut out = Vec::new();
    for (g, n) in [(2, 0), (2, 1), (3, 0), (4, 0), (5, 0), (6, 0), (7, 0)] {
        out.extend(builtin_scripts(&SurfaceSpec::new(g, n).unwrap()).unwrap());
    }
    out
}

#[test]
fn every_single_step_mutation_is_caught_at_its_step() {
    for s in small_scripts() {
        for i in 0..s.steps.len() {
            for m in mutations(&s, i) {
                let r = replay(&mutate(&s, i, &m));
                assert!(!r.passed, "{} on {}: {m:?} at step {} survived", s.name, s.spec, i + 1);
                let f = r.failure.expect("failed replay has a failure");
                assert_eq!(f.step, Some(i + 1), "{} on {}: {m:?} blamed {:?}", s.name, s.spec, f);
            }
        }
    }
}

#[test]
fn parallel_and_sequential_replay_agree() {
    let scripts = small_scripts();
    assert_eq!(replay_all(&scripts), replay_all_sequential(&scripts));
}

#[test]
fn round_trip_through_jsonl_replays_identically() {
    for s in small_scripts() {
        let back = DerivationScript::from_jsonl(&s.to_jsonl()).unwrap();
        assert_eq!(replay(&back), replay(&s));
    }
}

#[test]
fn truncated_script_fails_on_final_word() {
    let mut s = builtin_script(&SurfaceSpec::closed(6).unwrap(), "C3-even").unwrap();
    s.steps.pop();
    let r = replay(&s);
    assert!(!r.passed);
    let f = r.failure.unwrap();
    assert_eq!(f.kind, FailureKind::FinalWord);
    assert_eq!(f.step, None);
}

#[test]
fn false_claim_is_rejected_before_any_step() {
    let mut s = builtin_script(&SurfaceSpec::closed(5).unwrap(), "c3-odd").unwrap();
    s.rhs = "a1".parse().unwrap();
    let r = replay(&s);
    assert_eq!(r.failure.unwrap().kind, FailureKind::Claim);
    assert!(r.steps.is_empty());
}

#[test]
fn malformed_jsonl_reports_line() {
    let s = builtin_script(&SurfaceSpec::closed(2).unwrap(), "y-square").unwrap();
    let mut text = s.to_jsonl();
    text.push_str("{\"position\": 0}\n");
    let err = DerivationScript::from_jsonl(&text).unwrap_err().to_string();
    assert!(err.contains("line 5"), "{err}");
}
