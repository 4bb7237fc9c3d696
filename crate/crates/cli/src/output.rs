use std::fmt::Write as _;
use std::path::Path;

use crate::failure::Failure;

/// Fixed-precision decimal so CSV output is byte-stable.
pub fn num(x: f64) -> String {
    format!("{x:.12}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Writes `text` to stdout. A closed pipe (as with `| head`) is not an error.
pub fn stdout(text: &str) -> Result<(), Failure> {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Text output that starts with `#`-prefixed configuration lines.
pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut r = Self {
            text: String::new(),
        };
        r.comment(&format!("renyi-bounds {}", env!("CARGO_PKG_VERSION")));
        r.config("command", command);
        r
    }

    pub fn config(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.text, "# {key} = {value}");
    }

    pub fn comment(&mut self, s: &str) {
        let _ = writeln!(self.text, "# {s}");
    }

    pub fn line(&mut self, s: &str) {
        self.text.push_str(s);
        self.text.push('\n');
    }

    /// Prints to stdout and, if given, writes the same bytes to `path`.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), Failure> {
        stdout(&self.text)?;
        if let Some(p) = path {
            std::fs::write(p, &self.text)
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?;
        }
        Ok(())
    }
}
