use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

/// Writes the payload into an open file. Swapped out in tests to inject
/// failures.
pub type Writer = dyn Fn(&mut File, &[u8]) -> io::Result<()> + Send + Sync;

pub fn write_all(file: &mut File, bytes: &[u8]) -> io::Result<()> {
    file.write_all(bytes)
}

/// Replaces `path` by writing a sibling temp file and renaming it over the
/// target, so readers see either the old or the new complete file.
pub fn atomic_write(path: &Path, bytes: &[u8], writer: &Writer) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::Builder::new().prefix(".helfi-save").tempfile_in(dir)?;
    writer(tmp.as_file_mut(), bytes)?;
    tmp.as_file().sync_all()?;
    if let Ok(meta) = std::fs::metadata(path) {
        tmp.as_file().set_permissions(meta.permissions())?;
    }
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
