//! Writes every registry fixture as JSON into a directory (default
//! `crates/dca/fixtures`), one file per id.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir)?;
    for f in dca::lab::registry() {
        std::fs::write(dir.join(format!("{}.json", f.id)), f.to_pretty())?;
    }
    println!("wrote {} fixtures to {}", dca::lab::registry().len(), dir.display());
    Ok(())
}
