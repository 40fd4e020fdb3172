mod common;

use common::ladder::CASES;
use zatrikion::protocol::status_token;
use zatrikion::{format_cfen, parse_cfen};
use zatrikion_core::{game_status, GameStatus};

#[test]
fn ladder_has_enough_cases() {
    assert!(CASES.len() >= 20);
    let kinds = ["mate", "1-0 stalemate", "1/2-1/2 stalemate", "bare-king", "two-bare-kings"];
    for kind in kinds {
        assert!(CASES.iter().any(|c| c.expected.contains(kind)), "{kind}");
    }
}

#[test]
fn every_case_gets_its_status() {
    let mut failures = Vec::new();
    for case in CASES {
        let pos = case.position();
        let status = game_status(&pos);
        if status.to_string() != case.expected {
            failures.push(format!("{}: got `{status}`, want `{}`", case.name, case.expected));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn statuses_survive_cfen_and_protocol_forms() {
    for case in CASES.iter().filter(|c| c.moves.is_empty()) {
        let pos = case.position();
        let back = parse_cfen(&format_cfen(&pos), case.variant).unwrap();
        let status = game_status(&back);
        assert_eq!(status, game_status(&pos), "{}", case.name);
        assert_eq!(GameStatus::parse(&status.to_string()), Some(status));
        let token = status_token(status);
        assert!(!token.contains(' '), "{token}");
    }
}
