//! Endgame table files: the text header from [`Table::header`] followed by
//! one value byte per indexed state.

use std::path::Path;

use zatrikion_core::oracle::Table;

use crate::stats_io::StatsError;

pub fn write_table(path: &Path, table: &Table) -> Result<(), StatsError> {
    std::fs::write(path, table.to_bytes()).map_err(|source| StatsError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_table(path: &Path) -> Result<Table, StatsError> {
    let bytes = std::fs::read(path).map_err(|source| StatsError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Table::from_bytes(&bytes).map_err(|e| StatsError::Format(format!("{}: {e}", path.display())))
}
