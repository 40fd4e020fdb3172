use std::fs;
use std::process::Command;

use zatrikion::record::{parse_records, verify_record};
use zatrikion::stats_io::{import_stats, Format};
use zatrikion_core::harness::replay;

const CONFIG: &str = "\
# short match for tests
variant = byzantine-symmetric
games = 6
depth = 1
seed = 3
diversify = random_opening 2 3
no_capture = 40
ply_cap = 120
mate_bonus = true
workers = 2
stats = out/stats.csv
format = csv
records = out/games.txt
";

fn run_binary(config: &std::path::Path) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_zatrikion"))
        .args(["selfplay", "--config", config.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim().to_owned()
}

#[test]
fn selfplay_writes_stats_and_replayable_records() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("out")).unwrap();
    let config = dir.path().join("match.cfg");
    fs::write(&config, CONFIG).unwrap();

    let stats_path = run_binary(&config);
    assert_eq!(std::path::Path::new(&stats_path), dir.path().join("out/stats.csv"));
    let first = fs::read_to_string(&stats_path).unwrap();
    let report = import_stats(&first, Format::Csv).unwrap();
    let s = &report.stats;
    assert_eq!(s.games, 6);
    assert_eq!(s.white_wins + s.black_wins + s.draws, 6);
    assert!(report.mate_bonus);

    let records = parse_records(&fs::read_to_string(dir.path().join("out/games.txt")).unwrap()).unwrap();
    assert_eq!(records.len(), 6);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r.game_index, i as u32);
        verify_record(r).unwrap();
        let (_, status) = replay(r).unwrap();
        assert_eq!(status, r.result);
        assert!(r.plies() <= 120);
    }
    let total: u64 = records.iter().map(|r| r.plies() as u64).sum();
    assert_eq!(total, s.total_plies);

    run_binary(&config);
    assert_eq!(fs::read_to_string(&stats_path).unwrap(), first);
}

#[test]
fn broken_configs_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    for (text, what) in [
        ("games = many\n", "games"),
        ("colour = white\n", "colour"),
        ("depth 3\n", "line 1"),
        ("games = 0\ndepth = 1\n", "games"),
    ] {
        let config = dir.path().join("bad.cfg");
        fs::write(&config, text).unwrap();
        let out = Command::new(env!("CARGO_BIN_EXE_zatrikion"))
            .args(["selfplay", "--config", config.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(!out.status.success());
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(what), "{text:?}: {err}");
    }
}
