//! CSV emission to a directory or to standard output.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

pub enum Target {
    Dir(PathBuf),
    Stdout,
}

pub struct Output {
    target: Target,
    quiet: bool,
    written: Vec<String>,
}

impl Output {
    /// `-` means standard output; anything else is a directory, created if missing.
    pub fn new(out: &str, quiet: bool) -> io::Result<Self> {
        let target = if out == "-" {
            Target::Stdout
        } else {
            let dir = PathBuf::from(out);
            fs::create_dir_all(&dir)?;
            Target::Dir(dir)
        };
        Ok(Output {
            target,
            quiet,
            written: Vec::new(),
        })
    }

    /// Writes one table. On standard output each table is preceded by `# <name>`.
    pub fn table(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(header).map_err(io::Error::other)?;
        for row in rows {
            w.write_record(row).map_err(io::Error::other)?;
        }
        let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
        match &self.target {
            Target::Dir(dir) => fs::write(dir.join(name), bytes)?,
            Target::Stdout => {
                let mut stdout = io::stdout().lock();
                writeln!(stdout, "# {name}")?;
                stdout.write_all(&bytes)?;
                stdout.flush()?;
            }
        }
        self.written.push(name.to_string());
        Ok(())
    }

    /// One-line note on standard error, suppressed by `--quiet`.
    pub fn note(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }

    pub fn finish(&self) {
        if let Target::Dir(dir) = &self.target {
            self.note(&format!("wrote {} to {}", self.written.join(", "), dir.display()));
        }
    }
}
