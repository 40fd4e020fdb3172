use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use zatrikion::protocol::{run_selfplay, Flow, Session, Sink};
use zatrikion::table_io::write_table;
use zatrikion::ws::Server;
use zatrikion_core::oracle::{solve, Material};
use zatrikion_core::Variant;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Protocol {
    Stdio,
    Ws,
}

/// Byzantine and circular chess engine.
#[derive(Parser, Debug)]
#[command(version)]
struct Cli {
    /// byzantine-regular, byzantine-symmetric or circular-fide.
    #[arg(long, global = true, default_value = "byzantine-regular")]
    variant: Variant,
    #[arg(long, value_enum, default_value = "stdio")]
    protocol: Protocol,
    /// Port for the WebSocket bridge.
    #[arg(long, default_value_t = 8765)]
    port: u16,
    /// Self-play configuration (flat key = value).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the match described by --config and print the stats file path.
    Selfplay,
    /// Solve a pawnless ending such as KNvKB and print its summary.
    Solve {
        material: Material,
        /// Write the table to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the retrograde invariants on every state.
        #[arg(long)]
        verify: bool,
    },
}

fn stdio_loop(variant: Variant) -> ExitCode {
    let sink: Sink = Arc::new(|line| {
        let mut out = io::stdout().lock();
        let _ = writeln!(out, "{line}");
        let _ = out.flush();
    });
    let mut session = Session::new(variant, sink);
    for line in io::stdin().lock().lines() {
        let Ok(line) = line else { break };
        if session.execute(&line) == Flow::Quit {
            break;
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::Selfplay) => {
            let Some(config) = cli.config else {
                eprintln!("selfplay needs --config <file>");
                return ExitCode::from(2);
            };
            match run_selfplay(&config, cli.variant) {
                Ok(path) => {
                    println!("{path}");
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
        Some(Command::Solve { material, out, verify }) => {
            let started = Instant::now();
            let table = match solve(&material, cli.variant) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            };
            let s = table.summary();
            println!(
                "{material}: {} legal states, white wins {:.4}, draws {:.4}, black wins {:.4}, longest win {} plies, {:.1}s",
                s.legal,
                s.white_win_fraction(),
                s.draw_fraction(),
                s.black_win_fraction(),
                s.longest_win,
                started.elapsed().as_secs_f64()
            );
            if verify {
                match table.verify() {
                    Ok(()) => println!("consistent"),
                    Err(idx) => {
                        eprintln!("inconsistent at state {idx}");
                        return ExitCode::FAILURE;
                    }
                }
            }
            if let Some(path) = out {
                if let Err(e) = write_table(&path, &table) {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            ExitCode::SUCCESS
        }
        None => match cli.protocol {
            Protocol::Stdio => stdio_loop(cli.variant),
            Protocol::Ws => {
                let server = match Server::bind(("127.0.0.1", cli.port), cli.variant) {
                    Ok(s) => s,
                    Err(e) => {
                        eprintln!("cannot listen on port {}: {e}", cli.port);
                        return ExitCode::FAILURE;
                    }
                };
                if let Ok(addr) = server.local_addr() {
                    eprintln!("serving ws://{addr}");
                }
                match server.run() {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => {
                        eprintln!("error: {e}");
                        ExitCode::FAILURE
                    }
                }
            }
        },
    }
}
