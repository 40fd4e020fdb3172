//! The std half of the zatrikion engine: text formats, the line protocol
//! with its WebSocket bridge, and a parallel match runner.

pub mod cfen;

pub use cfen::{format_cfen, parse_cfen, parse_cfen_with, CfenError};
pub mod config;
pub mod protocol;
pub mod record;
pub mod runner;
pub mod stats_io;
pub mod table_io;
pub mod ws;
