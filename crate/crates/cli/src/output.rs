use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use tempfile::NamedTempFile;

use crate::commands::{CliError, Outcome};

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let fail = |e: std::io::Error| CliError::input(format!("cannot write {}: {e}", path.display()));
    let mut tmp = NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(contents.as_bytes()).map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

/// One `<input file name>.report` per successful input.
pub fn write_reports(
    dir: &Path,
    results: &[(PathBuf, Result<Outcome, CliError>)],
) -> Result<(), CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
    for (path, res) in results {
        if let Ok(out) = res {
            let name = path.file_name().unwrap_or_default().to_string_lossy();
            write_atomic(&dir.join(format!("{name}.report")), &out.text)?;
        }
    }
    Ok(())
}
