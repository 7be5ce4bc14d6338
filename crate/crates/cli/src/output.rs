use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

/// Curve data: an `x` column followed by one column per deformation.
pub struct CsvTable {
    pub header: Vec<String>,
    pub x: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
}

impl CsvTable {
    /// Comma-separated, `\n` line endings, 17 significant digits.
    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            out.push_str(&format!("{x:.16e}"));
            for col in &self.columns {
                out.push_str(&format!(",{:.16e}", col[i]));
            }
            out.push('\n');
        }
        out
    }
}

/// Writes to `path` via a temporary file in the same directory and a rename,
/// or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    let Some(path) = path else {
        let mut stdout = std::io::stdout().lock();
        return match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
            // a closed downstream pipe (e.g. `| head`) is not an error
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            other => other,
        };
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
