use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;

fn write_json<T: Serialize>(path: &Path, value: &T) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    fs::write(path, text)
}

/// Writes `structure.json` and `uea.json` into `dir`.
pub fn dump_structure(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let s = dir.join("structure.json");
    write_json(&s, &gsp4kit::gsp4::structure_dump())?;
    let u = dir.join("uea.json");
    let dump = gsp4kit::uea::uea_dump(6).map_err(|e| io::Error::other(e.to_string()))?;
    write_json(&u, &dump)?;
    Ok(vec![s, u])
}
