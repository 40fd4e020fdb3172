//! Line protocol shared by stdio and the WebSocket bridge.
//!
//! Commands:
//!
//! | command | response |
//! |---|---|
//! | `variant <name>` | none |
//! | `position start \| cfen <5 fields> [moves <m>...]` | none |
//! | `move <m>` | none, or `error illegal-move` |
//! | `go [depth N] [movetime MS] [nodes N] [seed S] \| go infinite` | `info ...` lines, then `bestmove <m>` |
//! | `stop` | ends a running search |
//! | `perft N` | leaf count |
//! | `eval` | centipawns for the side to move |
//! | `status` | `ongoing` or `<result> <reason>` |
//! | `cfen` | current cFEN |
//! | `legal` | `legal <m>...` |
//! | `state` | a `state` line |
//! | `selfplay <config-file>` | path of the written stats file |
//! | `serve --port P` | `serving <addr>` |
//! | `quit` | none |
//!
//! With state push on, `variant`, `position` and `move` are followed by
//! `state <cfen> <status> <legal moves...>` where `<status>` is `ongoing`
//! or result and reason joined by `:` such as `1-0:bare-king`. A finished
//! game lists no moves.

use std::path::Path;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;

use zatrikion_core::search::{SearchControl, SearchResult};
use zatrikion_core::{evaluate, game_status, legal_moves, movegen, perft, Engine, EvalParams, GameStatus, Position, SearchLimits, Variant};

use crate::cfen::{format_cfen, parse_cfen};
use crate::config::SelfplayConfig;
use crate::record::export_records;
use crate::runner::{run_match_parallel, SystemClock};
use crate::stats_io::{export_stats, read_file, write_file, StatsReport};

/// Receives every output line.
pub type Sink = Arc<dyn Fn(String) + Send + Sync>;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum Flow {
    Continue,
    Quit,
}

struct SearchJob {
    stop: Arc<AtomicBool>,
    handle: JoinHandle<Engine>,
}

pub struct Session {
    variant: Variant,
    position: Position,
    engine: Option<Engine>,
    job: Option<SearchJob>,
    sink: Sink,
    push_state: bool,
}

/// `ongoing` or e.g. `1-0:mate`.
pub fn status_token(status: GameStatus) -> String {
    status.to_string().replace(' ', ":")
}

pub fn state_line(pos: &Position) -> String {
    let status = game_status(pos);
    let mut line = format!("state {} {}", format_cfen(pos), status_token(status));
    if !status.is_terminal() {
        for m in legal_moves(pos) {
            line.push(' ');
            line.push_str(&m.to_string());
        }
    }
    line
}

fn info_line(r: &SearchResult) -> String {
    let pv: Vec<String> = r.principal_variation.iter().map(|m| m.to_string()).collect();
    format!(
        "info depth {} score {} nodes {} pv {}",
        r.depth_reached,
        r.score,
        r.nodes,
        pv.join(" ")
    )
}

fn parse_number<T: std::str::FromStr>(what: &str, token: Option<&str>) -> Result<T, String> {
    let token = token.ok_or_else(|| format!("{what} needs a value"))?;
    token.parse().map_err(|_| format!("bad {what} '{token}'"))
}

impl Session {
    pub fn new(variant: Variant, sink: Sink) -> Session {
        Session {
            variant,
            position: Position::initial(variant),
            engine: Some(Engine::new(EvalParams::default())),
            job: None,
            sink,
            push_state: false,
        }
    }

    pub fn with_state_push(mut self, on: bool) -> Session {
        self.push_state = on;
        self
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn position(&self) -> &Position {
        &self.position
    }

    fn emit(&self, line: String) {
        (self.sink)(line);
    }

    fn push(&self) {
        if self.push_state {
            self.emit(state_line(&self.position));
        }
    }

    /// Blocks until a running search has printed its best move.
    pub fn wait(&mut self) {
        if let Some(job) = self.job.take() {
            self.engine = Some(job.handle.join().expect("search thread panicked"));
        }
    }

    fn stop(&mut self) {
        if let Some(job) = &self.job {
            job.stop.store(true, Ordering::Relaxed);
        }
        self.wait();
    }

    pub fn execute(&mut self, line: &str) -> Flow {
        let mut tokens = line.split_whitespace();
        let Some(cmd) = tokens.next() else {
            return Flow::Continue;
        };
        match cmd {
            "stop" => {
                self.stop();
                return Flow::Continue;
            }
            "quit" => {
                self.stop();
                return Flow::Quit;
            }
            _ => self.wait(),
        }
        let args: Vec<&str> = tokens.collect();
        if let Err(message) = self.dispatch(cmd, &args) {
            self.emit(format!("error {message}"));
        }
        Flow::Continue
    }

    fn dispatch(&mut self, cmd: &str, args: &[&str]) -> Result<(), String> {
        match cmd {
            "variant" => {
                let [name] = args else {
                    return Err("usage: variant <name>".into());
                };
                self.variant = name.parse().map_err(|e: zatrikion_core::board::ParseVariantError| e.to_string())?;
                self.position = Position::initial(self.variant);
                if let Some(engine) = &mut self.engine {
                    engine.clear();
                }
                self.push();
            }
            "position" => {
                self.position = self.parse_position(args)?;
                self.push();
            }
            "move" => {
                let [text] = args else {
                    return Err("usage: move <move>".into());
                };
                if game_status(&self.position).is_terminal() {
                    return Err("game-over".into());
                }
                movegen::play(&mut self.position, text).map_err(|_| "illegal-move".to_string())?;
                self.push();
            }
            "go" => self.go(args)?,
            "perft" => {
                let depth: u32 = parse_number("depth", args.first().copied())?;
                self.emit(perft(&self.position, depth).to_string());
            }
            "eval" => {
                let params = *self.engine.as_ref().expect("engine idle").params();
                self.emit(evaluate(&self.position, &params).to_string());
            }
            "status" => self.emit(game_status(&self.position).to_string()),
            "cfen" => self.emit(format_cfen(&self.position)),
            "legal" => {
                let moves: Vec<String> = legal_moves(&self.position).iter().map(|m| m.to_string()).collect();
                self.emit(format!("legal {}", moves.join(" ")).trim_end().to_string());
            }
            "state" => self.emit(state_line(&self.position)),
            "selfplay" => {
                let [path] = args else {
                    return Err("usage: selfplay <config-file>".into());
                };
                let out = run_selfplay(Path::new(path), self.variant)?;
                self.emit(out);
            }
            "serve" => {
                let port = match args {
                    ["--port", p] => parse_number::<u16>("port", Some(p))?,
                    _ => return Err("usage: serve --port <port>".into()),
                };
                let server = crate::ws::Server::bind(("127.0.0.1", port), self.variant).map_err(|e| e.to_string())?;
                let addr = server.local_addr().map_err(|e| e.to_string())?;
                std::thread::spawn(move || server.run());
                self.emit(format!("serving {addr}"));
            }
            other => return Err(format!("unknown command '{other}'")),
        }
        Ok(())
    }

    fn parse_position(&self, args: &[&str]) -> Result<Position, String> {
        let (mut pos, rest) = match args.first() {
            Some(&"start") => (Position::initial(self.variant), &args[1..]),
            Some(&"cfen") if args.len() >= 6 => {
                let text = args[1..6].join(" ");
                (parse_cfen(&text, self.variant).map_err(|e| e.to_string())?, &args[6..])
            }
            _ => return Err("usage: position start | cfen <cfen> [moves <move>...]".into()),
        };
        match rest.split_first() {
            None => {}
            Some((&"moves", moves)) => {
                for m in moves {
                    movegen::play(&mut pos, m).map_err(|e| format!("move {m}: {e}"))?;
                }
            }
            Some((other, _)) => return Err(format!("expected 'moves', found '{other}'")),
        }
        Ok(pos)
    }

    fn go(&mut self, args: &[&str]) -> Result<(), String> {
        let mut limits = SearchLimits::default();
        let mut seed = 0u64;
        let mut it = args.iter().copied();
        while let Some(key) = it.next() {
            match key {
                "depth" => limits.max_depth = Some(parse_number("depth", it.next())?),
                "movetime" => limits.movetime_ms = Some(parse_number("movetime", it.next())?),
                "nodes" => limits.max_nodes = Some(parse_number("nodes", it.next())?),
                "seed" => seed = parse_number("seed", it.next())?,
                "infinite" => limits.max_depth = Some(u32::MAX),
                other => return Err(format!("unknown go parameter '{other}'")),
            }
        }
        if limits.is_empty() {
            return Err("go needs depth, movetime, nodes or infinite".into());
        }
        if legal_moves(&self.position).is_empty() {
            return Err("no legal moves".into());
        }
        let mut engine = self.engine.take().expect("engine idle");
        let pos = self.position.clone();
        let sink = self.sink.clone();
        let stop = Arc::new(AtomicBool::new(false));
        let flag = stop.clone();
        let handle = std::thread::spawn(move || {
            let clock = SystemClock::new();
            let mut report = |r: &SearchResult| sink(info_line(r));
            let control = SearchControl {
                clock: Some(&clock),
                stop: Some(&flag),
                on_iteration: Some(&mut report),
            };
            match engine.search(&pos, &limits, seed, control) {
                Ok(r) => sink(format!("bestmove {}", r.best_move)),
                Err(e) => sink(format!("error {e}")),
            }
            engine
        });
        self.job = Some(SearchJob { stop, handle });
        Ok(())
    }
}

impl Drop for Session {
    fn drop(&mut self) {
        self.stop();
    }
}

/// Runs the match described by `path` and writes its outputs. Returns the
/// stats file path.
pub fn run_selfplay(path: &Path, default_variant: Variant) -> Result<String, String> {
    let text = read_file(path).map_err(|e| e.to_string())?;
    let base = path.parent().unwrap_or(Path::new("."));
    let config = SelfplayConfig::parse(&text, base, default_variant).map_err(|e| format!("{}: {e}", path.display()))?;
    let (stats, records) = run_match_parallel(&config.match_config, config.workers).map_err(|e| e.to_string())?;
    let report = StatsReport::new(stats, config.mate_bonus);
    let out = export_stats(&report, config.format).map_err(|e| e.to_string())?;
    write_file(&config.stats_path, &out).map_err(|e| e.to_string())?;
    if let Some(records_path) = &config.records_path {
        write_file(records_path, &export_records(&records)).map_err(|e| e.to_string())?;
    }
    Ok(config.stats_path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Mutex;

    fn session(variant: Variant) -> (Session, Arc<Mutex<Vec<String>>>) {
        let lines = Arc::new(Mutex::new(Vec::new()));
        let out = lines.clone();
        let sink: Sink = Arc::new(move |l| out.lock().unwrap().push(l));
        (Session::new(variant, sink), lines)
    }

    fn run(s: &mut Session, lines: &Arc<Mutex<Vec<String>>>, cmds: &[&str]) -> Vec<String> {
        lines.lock().unwrap().clear();
        for c in cmds {
            s.execute(c);
        }
        s.wait();
        lines.lock().unwrap().clone()
    }

    #[test]
    fn perft_from_start() {
        let (mut s, out) = session(Variant::CircularFIDE);
        assert_eq!(
            run(&mut s, &out, &["variant byzantine-regular", "position start", "perft 2"]),
            ["196"]
        );
    }

    #[test]
    fn status_after_moves() {
        let (mut s, out) = session(Variant::ByzantineRegular);
        assert_eq!(run(&mut s, &out, &["position start moves c1b1", "status"]), ["ongoing"]);
        assert_eq!(s.position().side_to_move(), zatrikion_core::Color::Black);
    }

    #[test]
    fn errors_leave_state_alone() {
        let (mut s, out) = session(Variant::ByzantineRegular);
        run(&mut s, &out, &["position start moves c1b1"]);
        let before = s.position().clone();
        let got = run(
            &mut s,
            &out,
            &["frobnicate", "move a1a1", "position start moves zz", "perft", "go", "variant chess"],
        );
        assert_eq!(got.len(), 6);
        assert!(got.iter().all(|l| l.starts_with("error ")), "{got:?}");
        assert_eq!(got[1], "error illegal-move");
        assert_eq!(s.position(), &before);
    }

    #[test]
    fn state_push() {
        let (s, out) = session(Variant::ByzantineRegular);
        let mut s = s.with_state_push(true);
        let got = run(&mut s, &out, &["variant byzantine-symmetric", "position start"]);
        assert_eq!(got.len(), 2);
        assert!(
            got[1].starts_with("state 2SKQP4skqp2/2SBBP4sbbp2/2SNNP4snnp2/2SRRP4srrp2 w - 0 1 ongoing "),
            "{}",
            got[1]
        );
        assert_eq!(got[1].split_whitespace().count(), 2 + 5 + 14);
    }

    #[test]
    fn go_finds_mate_in_one() {
        // Ri1-i4 checks along both arcs of ring 4; black's own pawns
        // block ring 3.
        let (mut s, out) = session(Variant::CircularFIDE);
        let got = run(&mut s, &out, &["position cfen 4K3R7/16/pp13p/k15 w - 0 1", "go depth 1"]);
        let best = got.last().unwrap();
        assert!(best.starts_with("bestmove "), "{got:?}");
        let mv = best.trim_start_matches("bestmove ");
        let got = run(&mut s, &out, &[&format!("move {mv}"), "status"]);
        assert_eq!(got, ["1-0 mate"]);
    }

    #[test]
    fn stop_ends_infinite_search() {
        let (mut s, out) = session(Variant::CircularFIDE);
        s.execute("go infinite");
        std::thread::sleep(std::time::Duration::from_millis(50));
        s.execute("stop");
        let got = out.lock().unwrap().clone();
        assert!(got.last().unwrap().starts_with("bestmove "), "{got:?}");
    }

    #[test]
    fn quit_and_blank_lines() {
        let (mut s, _) = session(Variant::CircularFIDE);
        assert_eq!(s.execute("   "), Flow::Continue);
        assert_eq!(s.execute("quit"), Flow::Quit);
    }
}
